//! Principal ideals of `F[X]`, irreducibility, and the quotient superfield
//! `F(p) = F[X]/⟨p⟩`.
//!
//! Classes are keyed by their representatives of degree `< deg p`. Class `c`
//! has coefficient digits `c = Σ aᵢ·|F|ⁱ`, so class order is the canonical
//! polynomial order when the zero of `F` is element 0.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::axioms::{validate, ClassReport};
use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::morphism::{classify_map, MapClassification, MorphismTable};
use crate::poly::{
    euclid_divide, evaluate, poly_prod, poly_sum, polys_of_degree, polys_up_to_degree, prod_coeff, CoeffEnvelope,
    Poly,
};
use crate::ring::FiniteSuperring;

/// Largest class carrier a quotient may have.
pub const MAX_CLASSES: usize = 4096;
/// Largest number of representatives enumerated in saturated mode.
const MAX_SATURATED_REPS: usize = 200_000;

/// Which set plays the role of `⟨p⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealMode {
    /// `F[X]·p = ⋃ { q·p : q ∈ F[X] }`.
    MultipleSet,
    /// Sums `q₁p + … + q_kp` with `k ≤ summands` and `deg qᵢ ≤ deg f`.
    SumClosed { summands: usize },
}

/// How class products are formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// `[f]·[g] = ⋃ { reduce(z) : z ∈ f·g }` on the low-degree representatives.
    Strict,
    /// As strict, but over every representative of degree `≤ d` of each class.
    /// The zero class stays absorbing.
    Saturated(usize),
}

impl ProductMode {
    pub fn label(self) -> String {
        match self {
            ProductMode::Strict => "strict".into(),
            ProductMode::Saturated(d) => format!("saturated({d})"),
        }
    }

    /// Saturated mode with the default bound `2·deg p`.
    pub fn saturated_for(p: &Poly) -> Self {
        ProductMode::Saturated(2 * p.degree().unwrap_or(0))
    }
}

/// Call `visit(q)` for every `q` with at most `qlen` coefficients such that
/// `(q·p)ᵢ` meets `target_i` at every coordinate `i ≥ deg p`. Coefficients are
/// fixed from the top down, so each such coordinate is checked as soon as it
/// is determined. Stops when `visit` returns true; returns whether it did.
fn search_multipliers(
    k: &FiniteSuperring,
    target: &CoeffEnvelope,
    p: &Poly,
    qlen: usize,
    visit: &mut dyn FnMut(&[ElementId]) -> bool,
) -> bool {
    let n = p.degree().expect("nonzero modulus");
    if (qlen + n..target.len()).any(|i| !target.coeff_set(k, i).contains(k.zero())) {
        return false;
    }
    fn go(
        k: &FiniteSuperring,
        target: &CoeffEnvelope,
        p: &Poly,
        n: usize,
        q: &mut Vec<ElementId>,
        j: usize,
        visit: &mut dyn FnMut(&[ElementId]) -> bool,
    ) -> bool {
        if j == 0 {
            return visit(q);
        }
        let j = j - 1;
        let want = target.coeff_set(k, j + n);
        for c in k.elements() {
            q[j] = c;
            if prod_coeff(k, q, p.coeffs(), j + n).intersects(&want) && go(k, target, p, n, q, j, visit) {
                return true;
            }
        }
        q[j] = k.zero();
        false
    }
    let mut q = vec![k.zero(); qlen];
    go(k, target, p, n, &mut q, qlen, visit)
}

/// A `q` with `f ∈ q·p`, searching `deg q = deg f - deg p` over a superdomain
/// and `deg q ≤ deg f` otherwise.
fn multiple_witness(k: &FiniteSuperring, f: &Poly, p: &Poly) -> Option<Poly> {
    let n = p.degree().expect("nonzero modulus");
    let Some(d) = f.degree() else {
        return Some(Poly::zero(k));
    };
    let qlen = if k.is_superdomain_tables() {
        if d < n {
            return None;
        }
        d - n + 1
    } else {
        d + 1
    };
    let target = CoeffEnvelope::singleton(k, f);
    let mut found = None;
    search_multipliers(k, &target, p, qlen, &mut |q| {
        let q = Poly::new(k, q.to_vec());
        if poly_prod(k, &q, p).contains(f) {
            found = Some(q);
            true
        } else {
            false
        }
    });
    found
}

/// Multipliers witnessing `f ∈ ⟨p⟩`: one `q` in multiple-set mode, or the
/// list `q₁, …, q_k` of a sum-closed decomposition.
pub fn principal_witness(k: &FiniteSuperring, f: &Poly, p: &Poly, mode: IdealMode) -> Result<Option<Vec<Poly>>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    match mode {
        IdealMode::MultipleSet => Ok(multiple_witness(k, f, p).map(|q| vec![q])),
        IdealMode::SumClosed { summands } => {
            let Some(d) = f.degree() else {
                return Ok(Some(vec![Poly::zero(k)]));
            };
            let window = d + n;
            let mut single: BTreeMap<Poly, Vec<Poly>> = BTreeMap::new();
            for q in polys_up_to_degree(k, d) {
                for z in poly_prod(k, &q, p).members(k) {
                    single.entry(z).or_insert_with(|| vec![q.clone()]);
                }
            }
            let mut reach = single.clone();
            for _ in 1..summands.max(1) {
                if reach.contains_key(f) {
                    break;
                }
                let mut next = reach.clone();
                for (s, ws) in &reach {
                    for (t, wt) in &single {
                        for z in poly_sum(k, s, t).members(k) {
                            if z.degree().is_none_or(|e| e <= window) {
                                next.entry(z).or_insert_with(|| ws.iter().chain(wt).cloned().collect());
                            }
                        }
                    }
                }
                reach = next;
            }
            Ok(reach.get(f).cloned())
        }
    }
}

pub fn principal_membership(k: &FiniteSuperring, f: &Poly, p: &Poly, mode: IdealMode) -> Result<bool> {
    Ok(principal_witness(k, f, p, mode)?.is_some())
}

/// Members of degree at most `d` of the ideal generated by `gens`: the
/// closure under sums and monomial multiples `cXᵏ·s`, restricted to degree
/// `≤ d` at every step. Sorted in canonical order.
pub fn generated_ideal_slice(k: &FiniteSuperring, gens: &[Poly], d: usize) -> Result<Vec<Poly>> {
    let total = (k.size() as u128).checked_pow(d as u32 + 1).unwrap_or(u128::MAX);
    if total > MAX_CLASSES as u128 {
        return Err(Error::CarrierTooLarge {
            size: total.min(usize::MAX as u128) as usize,
            max: MAX_CLASSES,
        });
    }
    let fits = |h: &Poly| h.degree().is_none_or(|e| e <= d);
    let mut seen: std::collections::HashSet<Poly> = std::collections::HashSet::new();
    let mut all: Vec<Poly> = Vec::new();
    let mut add = |h: Poly, all: &mut Vec<Poly>| {
        if fits(&h) && seen.insert(h.clone()) {
            all.push(h);
        }
    };
    for g in gens {
        add(g.clone(), &mut all);
    }
    let mut i = 0;
    while i < all.len() {
        let s = all[i].clone();
        if let Some(ds) = s.degree() {
            for c in k.elements().filter(|&c| c != k.zero()) {
                for e in 0..=d - ds {
                    for h in poly_prod(k, &Poly::monomial(k, c, e), &s).members(k) {
                        add(h, &mut all);
                    }
                }
            }
        }
        for j in 0..=i {
            let t = all[j].clone();
            for h in poly_sum(k, &s, &t).members(k) {
                add(h, &mut all);
            }
        }
        i += 1;
    }
    all.sort();
    Ok(all)
}

fn check_modulus(k: &FiniteSuperring, p: &Poly) -> Result<usize> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(n) => Ok(n),
    }
    .and_then(|n| {
        if k.is_superdomain_tables() {
            Ok(n)
        } else {
            Err(Error::NotSuperdomain(k.name().to_string()))
        }
    })
}

/// The first factorization `p ∈ g·h` with `deg g, deg h ≥ 1`, `g` in
/// canonical order.
pub fn factor_witness(k: &FiniteSuperring, p: &Poly) -> Result<Option<(Poly, Poly)>> {
    let n = check_modulus(k, p)?;
    for dg in 1..n {
        for g in polys_of_degree(k, dg) {
            if let Some(h) = multiple_witness(k, p, &g) {
                return Ok(Some((g, h)));
            }
        }
    }
    Ok(None)
}

pub fn is_irreducible(k: &FiniteSuperring, p: &Poly) -> Result<bool> {
    Ok(factor_witness(k, p)?.is_none())
}

/// Both irreducibility verdicts for `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    /// No factorization `p ∈ g·h` with both degrees at least 1.
    pub irreducible: bool,
    pub factors: Option<(Poly, Poly)>,
    /// Every non-constant `u` with `p ∈ F[X]·u` generates the same ideal as
    /// `p`, judged by mutual membership of the generators.
    pub by_divisors: bool,
    pub divisor: Option<Poly>,
}

pub fn irreducibility(k: &FiniteSuperring, p: &Poly) -> Result<Irreducibility> {
    let factors = factor_witness(k, p)?;
    let n = p.degree().expect("checked");
    let mut divisor = None;
    'outer: for d in 1..=n {
        for u in polys_of_degree(k, d) {
            if multiple_witness(k, p, &u).is_some() && (d < n || multiple_witness(k, &u, p).is_none()) {
                divisor = Some(u);
                break 'outer;
            }
        }
    }
    Ok(Irreducibility {
        irreducible: factors.is_none(),
        factors,
        by_divisors: divisor.is_none(),
        divisor,
    })
}

fn class_count(k: &FiniteSuperring, n: usize) -> Result<usize> {
    let count = (k.size() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > MAX_CLASSES as u128 {
        return Err(Error::CarrierTooLarge {
            size: count.min(usize::MAX as u128) as usize,
            max: MAX_CLASSES,
        });
    }
    Ok(count as usize)
}

fn digits_index(k: &FiniteSuperring, digits: &[ElementId]) -> usize {
    digits.iter().rev().fold(0, |acc, &a| acc * k.size() + a)
}

/// Classes `[r]` with `(E - r) ∩ F[X]·p ≠ ∅` for some member of `E`, as
/// class indices. Membership in an envelope is coordinatewise, so every
/// coordinate is matched independently.
fn reduce_envelope_into(k: &FiniteSuperring, env: &CoeffEnvelope, p: &Poly, out: &mut ElemSet) {
    let n = p.degree().expect("nonzero modulus");
    let cap = out.carrier_size();
    let qlen = env.len().saturating_sub(n);
    let low: Vec<ElemSet> = (0..n).map(|i| env.coeff_set(k, i)).collect();
    search_multipliers(k, env, p, qlen, &mut |q| {
        let mut options: Vec<Vec<ElementId>> = Vec::with_capacity(n);
        for (i, e) in low.iter().enumerate() {
            let qp = prod_coeff(k, q, p.coeffs(), i);
            let opts: Vec<ElementId> = k
                .elements()
                .filter(|&r| k.sum_elem_set(k.neg(r), e).intersects(&qp))
                .collect();
            if opts.is_empty() {
                return false;
            }
            options.push(opts);
        }
        let mut idx = vec![0usize; n];
        loop {
            let digits: Vec<ElementId> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            out.insert(digits_index(k, &digits));
            let mut j = 0;
            while j < n {
                idx[j] += 1;
                if idx[j] < options[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
        out.len() == cap
    });
}

/// Every `r` with `deg r < deg p` and `(h - r) ∩ F[X]·p ≠ ∅`, in canonical
/// order. Over a superdomain `p` of degree `n`, `q` ranges over degree
/// `deg h - n`.
pub fn reduce(k: &FiniteSuperring, h: &Poly, p: &Poly) -> Result<Vec<Poly>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let count = class_count(k, n)?;
    let mut out = ElemSet::empty(count);
    reduce_envelope_into(k, &CoeffEnvelope::singleton(k, h), p, &mut out);
    let mut polys: Vec<Poly> = out.iter().map(|c| Poly::new(k, class_digits(k, n, c))).collect();
    polys.sort();
    Ok(polys)
}

fn class_digits(k: &FiniteSuperring, n: usize, mut c: usize) -> Vec<ElementId> {
    (0..n)
        .map(|_| {
            let d = c % k.size();
            c /= k.size();
            d
        })
        .collect()
}

/// Class arithmetic of `F[X]/⟨p⟩`, computed on demand. Products are cached.
#[derive(Debug)]
pub struct ClassArithmetic {
    base: FiniteSuperring,
    modulus: Poly,
    mode: ProductMode,
    degree: usize,
    count: usize,
    reps: Vec<Vec<Poly>>,
    cache: Mutex<HashMap<(usize, usize), ElemSet>>,
}

impl ClassArithmetic {
    pub fn new(base: &FiniteSuperring, modulus: &Poly, mode: ProductMode) -> Result<Self> {
        let degree = check_modulus(base, modulus)?;
        let count = class_count(base, degree)?;
        let mut arith = ClassArithmetic {
            base: base.clone(),
            modulus: modulus.clone(),
            mode,
            degree,
            count,
            reps: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        if let ProductMode::Saturated(d) = mode {
            let total = (base.size() as u128).saturating_pow(d as u32 + 1);
            if total > MAX_SATURATED_REPS as u128 {
                return Err(Error::CarrierTooLarge {
                    size: total.min(usize::MAX as u128) as usize,
                    max: MAX_SATURATED_REPS,
                });
            }
            let mut reps = vec![Vec::new(); count];
            for h in polys_up_to_degree(base, d) {
                for c in arith.reduce(&h).iter() {
                    reps[c].push(h.clone());
                }
            }
            arith.reps = reps;
        }
        Ok(arith)
    }

    pub fn base(&self) -> &FiniteSuperring {
        &self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn mode(&self) -> ProductMode {
        self.mode
    }

    pub fn size(&self) -> usize {
        self.count
    }

    pub fn class_poly(&self, c: usize) -> Poly {
        Poly::new(&self.base, class_digits(&self.base, self.degree, c))
    }

    /// Class of a polynomial of degree `< deg p`.
    pub fn class_of(&self, f: &Poly) -> Result<usize> {
        if f.degree().is_some_and(|d| d >= self.degree) {
            return Err(Error::UnknownElement(format!("[{}]", f.render_ascending(&self.base))));
        }
        let digits: Vec<ElementId> = (0..self.degree).map(|i| f.coeff(i)).collect();
        Ok(digits_index(&self.base, &digits))
    }

    pub fn class_name(&self, c: usize) -> String {
        format!("[{}]", self.class_poly(c).render_ascending(&self.base))
    }

    pub fn empty(&self) -> ElemSet {
        ElemSet::empty(self.count)
    }

    pub fn singleton(&self, c: usize) -> ElemSet {
        ElemSet::singleton(self.count, c)
    }

    pub fn zero(&self) -> usize {
        self.embed(self.base.zero())
    }

    pub fn one(&self) -> usize {
        self.embed(self.base.one())
    }

    /// `a ↦ [a]`.
    pub fn embed(&self, a: ElementId) -> usize {
        let mut digits = vec![self.base.zero(); self.degree];
        digits[0] = a;
        digits_index(&self.base, &digits)
    }

    /// The class of `X` when `deg p ≥ 2`; otherwise the classes `X` reduces to.
    pub fn variable_classes(&self) -> ElemSet {
        self.reduce(&Poly::monomial(&self.base, self.base.one(), 1))
    }

    pub fn reduce(&self, h: &Poly) -> ElemSet {
        self.reduce_envelope(&CoeffEnvelope::singleton(&self.base, h))
    }

    pub fn reduce_envelope(&self, env: &CoeffEnvelope) -> ElemSet {
        let mut out = self.empty();
        reduce_envelope_into(&self.base, env, &self.modulus, &mut out);
        out
    }

    pub fn neg(&self, c: usize) -> usize {
        self.class_of(&self.class_poly(c).neg(&self.base)).expect("degree preserved")
    }

    /// `{ [z] : z ∈ f + g }`; sums never raise the degree.
    pub fn sum(&self, a: usize, b: usize) -> ElemSet {
        let env = poly_sum(&self.base, &self.class_poly(a), &self.class_poly(b));
        let mut out = self.empty();
        for z in env.members(&self.base) {
            out.insert(self.class_of(&z).expect("degree preserved"));
        }
        out
    }

    pub fn prod(&self, a: usize, b: usize) -> ElemSet {
        let key = (a.min(b), a.max(b));
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let k = &self.base;
        let out = match self.mode {
            ProductMode::Strict => self.reduce_envelope(&poly_prod(k, &self.class_poly(a), &self.class_poly(b))),
            ProductMode::Saturated(_) if a == self.zero() || b == self.zero() => self.singleton(self.zero()),
            ProductMode::Saturated(_) => {
                let mut out = self.empty();
                'outer: for h1 in &self.reps[a] {
                    for h2 in &self.reps[b] {
                        reduce_envelope_into(k, &poly_prod(k, h1, h2), &self.modulus, &mut out);
                        if out.len() == self.count {
                            break 'outer;
                        }
                    }
                }
                out
            }
        };
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        out
    }

    pub fn sumset(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = self.empty();
        for x in a {
            for y in b {
                out.union_with(&self.sum(x, y));
            }
        }
        out
    }

    pub fn prodset(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = self.empty();
        for x in a {
            for y in b {
                out.union_with(&self.prod(x, y));
            }
        }
        out
    }

    pub fn negset(&self, a: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.count, a.iter().map(|c| self.neg(c)))
    }

    /// Build the finite structure on the class carrier.
    pub fn to_structure(&self, name: impl Into<String>) -> Result<FiniteSuperring> {
        let names = (0..self.count).map(|c| self.class_name(c)).collect();
        let neg = (0..self.count).map(|c| self.neg(c)).collect();
        FiniteSuperring::from_fn(
            name,
            names,
            |a, b| self.sum(a, b),
            |a, b| self.prod(a, b),
            neg,
            self.zero(),
            self.one(),
        )
    }

    /// A `g` with `[1] ∈ [f]·[g]`. The returned witness is the first one in
    /// class order; the constructive route divides `p` by `f` and recurses on
    /// the remainder.
    pub fn class_inverse(&self, c: usize) -> Result<ClassInverse> {
        if c == self.zero() {
            return Err(Error::ZeroClass);
        }
        let one = self.one();
        let all: Vec<usize> = (0..self.count).filter(|&g| self.prod(c, g).contains(one)).collect();
        let constructive = self.constructive_inverse(&self.class_poly(c), 0);
        if let Some(t) = constructive {
            debug_assert!(all.contains(&t));
        }
        let witness = *all
            .first()
            .ok_or_else(|| Error::NoWitness(format!("inverse of {}", self.class_name(c))))?;
        Ok(ClassInverse {
            witness,
            constructive,
            all,
        })
    }

    fn constructive_inverse(&self, f: &Poly, depth: usize) -> Option<usize> {
        let k = &self.base;
        let c = self.class_of(f).ok()?;
        let one = self.one();
        if f.degree()? == 0 {
            let t = self.embed(k.first_inverse(f.coeff(0))?);
            return self.prod(c, t).contains(one).then_some(t);
        }
        if depth > self.degree {
            return None;
        }
        let div = euclid_divide(k, &self.modulus, f).ok()?;
        if div.r.is_zero() {
            return None;
        }
        let g = self.constructive_inverse(&div.r, depth + 1)?;
        let q = self.class_of(&div.q).ok()?;
        // [f]⁻¹ ∈ -[q]·[r]⁻¹
        let cands = self.negset(&self.prod(q, g));
        cands.iter().find(|&t| self.prod(c, t).contains(one))
    }
}

/// Inverse witnesses of one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInverse {
    /// First class `g` in class order with `[1] ∈ [f][g]`.
    pub witness: usize,
    /// Result of the division-based construction, when it succeeds.
    pub constructive: Option<usize>,
    pub all: Vec<usize>,
}

/// `F(p)` with its structure, validation report and canonical embedding.
#[derive(Debug)]
pub struct QuotientField {
    pub arith: ClassArithmetic,
    pub ring: FiniteSuperring,
    pub report: ClassReport,
    pub embedding: MorphismTable,
    pub embedding_class: MapClassification,
}

impl QuotientField {
    pub fn base(&self) -> &FiniteSuperring {
        self.arith.base()
    }

    pub fn modulus(&self) -> &Poly {
        self.arith.modulus()
    }

    /// The first class that is a root of the image of `p`, starting from the
    /// classes of `X`.
    pub fn root(&self) -> Option<usize> {
        let p = self.modulus().map_coeffs(&self.ring, &self.embedding);
        let is_root = |c: usize| evaluate(&self.ring, &p, c).contains(self.ring.zero());
        let xs = self.arith.variable_classes();
        xs.iter().find(|&c| is_root(c)).or_else(|| self.ring.elements().find(|&c| is_root(c)))
    }

    pub fn class_inverse(&self, c: usize) -> Result<ClassInverse> {
        self.arith.class_inverse(c)
    }
}

/// `F[X]/⟨p⟩` for a superfield `F` and an irreducible `p`, named `F(p)`.
pub fn make_quotient(base: &FiniteSuperring, p: &Poly, mode: ProductMode) -> Result<QuotientField> {
    if !base.is_superfield_tables() {
        return Err(Error::NotSuperfield(base.name().to_string()));
    }
    if let Some((g, h)) = factor_witness(base, p)? {
        return Err(Error::Reducible(format!(
            "{} ∈ ({})·({})",
            p.render(base),
            g.render(base),
            h.render(base)
        )));
    }
    let arith = ClassArithmetic::new(base, p, mode)?;
    let name = format!("{}({})", base.name(), p.render(base));
    let ring = arith.to_structure(name)?;
    let report = validate(&ring);
    let embedding = MorphismTable::new(base, &ring, base.elements().map(|a| arith.embed(a)).collect())?;
    let embedding_class = classify_map(base, &ring, &embedding);
    Ok(QuotientField {
        arith,
        ring,
        report,
        embedding,
        embedding_class,
    })
}

/// Sorted class names of a set.
pub fn class_names(arith: &ClassArithmetic, s: &ElemSet) -> Vec<String> {
    s.iter().map(|c| arith.class_name(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::MorphismKind;
    use crate::poly::parse_poly;
    use crate::structures::{make_hp, make_krasner, make_q2, make_strict};

    fn h3() -> FiniteSuperring {
        make_hp(3).unwrap()
    }

    fn p(k: &FiniteSuperring, s: &str) -> Poly {
        parse_poly(k, s).unwrap()
    }

    fn reduced(k: &FiniteSuperring, h: &str, m: &str) -> Vec<String> {
        reduce(k, &p(k, h), &p(k, m))
            .unwrap()
            .iter()
            .map(|r| r.render_ascending(k))
            .collect()
    }

    #[test]
    fn reduction_examples() {
        let k = h3();
        assert_eq!(reduced(&k, "X^2", "X^2+2"), ["2"]);
        assert_eq!(reduced(&k, "2X^2", "X^2+2"), ["1"]);
        assert_eq!(reduced(&k, "X^2+X+1", "X^2+2"), ["1+X", "2+X"]);
        assert_eq!(reduced(&k, "2X+1", "X^2+2"), ["1+2X"]);
        for h in polys_up_to_degree(&k, 4) {
            assert!(!reduce(&k, &h, &p(&k, "X^2+2")).unwrap().is_empty());
        }
    }

    #[test]
    fn membership_modes() {
        let k = h3();
        let m = p(&k, "X^2+2");
        assert!(principal_membership(&k, &m, &m, IdealMode::MultipleSet).unwrap());
        let w = principal_witness(&k, &p(&k, "X^2+2X+2"), &p(&k, "X+1"), IdealMode::MultipleSet).unwrap();
        assert_eq!(w, Some(vec![p(&k, "X+2")]));
        let one = p(&k, "1");
        assert!(!principal_membership(&k, &one, &m, IdealMode::MultipleSet).unwrap());
        let sc = IdealMode::SumClosed { summands: 2 };
        assert!(principal_membership(&k, &one, &m, sc).unwrap());
        assert!(!principal_membership(&k, &one, &m, IdealMode::SumClosed { summands: 1 }).unwrap());
    }

    #[test]
    fn irreducibility_examples() {
        let k = h3();
        assert!(is_irreducible(&k, &p(&k, "X^2+2")).unwrap());
        let (g, h) = factor_witness(&k, &p(&k, "X^2+2X+2")).unwrap().unwrap();
        assert_eq!((g.render(&k), h.render(&k)), ("X+1".into(), "X+2".into()));
        for f in polys_of_degree(&k, 1) {
            assert!(is_irreducible(&k, &f).unwrap());
        }
        let quads: Vec<String> = polys_of_degree(&k, 2)
            .into_iter()
            .filter(|f| f.leading() == Some(1) && is_irreducible(&k, f).unwrap())
            .map(|f| f.render(&k))
            .collect();
        assert_eq!(quads, ["X^2+2"]);
        assert_eq!(is_irreducible(&k, &p(&k, "2")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn irreducibility_verdicts_agree_on_small_carriers() {
        for k in [make_krasner(), make_q2(), h3(), make_strict(2).unwrap(), make_strict(3).unwrap()] {
            for d in 1..=3 {
                for f in polys_of_degree(&k, d) {
                    let v = irreducibility(&k, &f).unwrap();
                    assert_eq!(v.irreducible, v.by_divisors, "{} over {}", f.render(&k), k.name());
                }
            }
        }
    }

    #[test]
    fn h3_quotient() {
        let k = h3();
        let q = make_quotient(&k, &p(&k, "X^2+2"), ProductMode::Strict).unwrap();
        assert_eq!(q.ring.size(), 9);
        assert_eq!(q.ring.name(), "H3(X^2+2)");
        assert_eq!(q.ring.element_name(q.ring.zero()), "[0]");
        assert_eq!(q.ring.element_name(q.ring.one()), "[1]");
        assert_eq!(q.embedding_class.kind, MorphismKind::Full);
        assert!(q.report.superfield.is_pass(), "{:?}", q.report.superfield);
        let x = q.ring.index_of("[X]").unwrap();
        assert_eq!(q.root(), Some(x));
        assert_eq!(q.ring.set_names(q.ring.prod(x, x)), ["[2]"]);
        let one_x = q.ring.index_of("[1+X]").unwrap();
        let sq = q.ring.prod(one_x, one_x);
        assert!(sq.contains(q.ring.one()));
        assert_eq!(sq.len(), 6);
        let inv = q.class_inverse(x).unwrap();
        assert_eq!(q.ring.element_name(inv.witness), "[2X]");
        assert_eq!(inv.constructive, Some(inv.witness));
        for c in q.ring.elements().filter(|&c| c != q.ring.zero()) {
            let inv = q.class_inverse(c).unwrap();
            assert!(inv.constructive.is_some(), "{}", q.ring.element_name(c));
        }
        let two = q.ring.index_of("[2]").unwrap();
        assert_eq!(q.class_inverse(two).unwrap().witness, two);
        assert_eq!(q.class_inverse(q.ring.zero()).unwrap_err(), Error::ZeroClass);
    }

    #[test]
    fn strict_f2_quotient_is_f4() {
        let f2 = make_strict(2).unwrap();
        let q = make_quotient(&f2, &p(&f2, "X^2+X+1"), ProductMode::Strict).unwrap();
        let f4 = make_strict(4).unwrap();
        assert!(crate::morphism::find_isomorphism(&q.ring, &f4, 16).unwrap().is_some());
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        let k = h3();
        assert!(matches!(
            make_quotient(&k, &p(&k, "X^2+2X+2"), ProductMode::Strict),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn saturated_products_contain_strict_ones() {
        let k = h3();
        let m = p(&k, "X^2+2");
        let strict = ClassArithmetic::new(&k, &m, ProductMode::Strict).unwrap();
        let sat = ClassArithmetic::new(&k, &m, ProductMode::saturated_for(&m)).unwrap();
        let c = strict.class_of(&p(&k, "X+1")).unwrap();
        assert!(strict.prod(c, c).is_subset(&sat.prod(c, c)));
    }
}
