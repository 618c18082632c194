//! Algebraic elements, generated sets, simple extensions, almost-full checks,
//! witness elimination and bounded closure towers.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::morphism::{classify_map, compose, MorphismKind, MorphismTable};
use crate::poly::{envelope_prod_poly, envelope_sum, evaluate, evaluate_set, polys_of_degree, CoeffEnvelope, Poly};
use crate::quotient::{is_irreducible, make_quotient, ProductMode};
use crate::ring::FiniteSuperring;
use crate::structures::serialize_structure;

/// Degree bound of the brute-force fallback in [`eliminate_witness`].
pub const FALLBACK_DEGREE: usize = 8;
/// Candidate budget for each constructive elimination.
const ELIMINATION_BUDGET: usize = 50_000;
/// Default cap on the size of sets tested for linear independence.
pub const MAX_INDEPENDENCE_SET: usize = 6;

/// `F ↪ K`: a base, an ambient and an embedding that is a morphism.
#[derive(Clone, Copy, Debug)]
pub struct Embedded<'a> {
    pub base: &'a FiniteSuperring,
    pub ambient: &'a FiniteSuperring,
    pub map: &'a MorphismTable,
}

impl<'a> Embedded<'a> {
    pub fn new(base: &'a FiniteSuperring, ambient: &'a FiniteSuperring, map: &'a MorphismTable) -> Result<Self> {
        if map.map.len() != base.size() || map.codomain_size != ambient.size() {
            return Err(Error::MapShape(format!(
                "embedding of {} entries into {} elements",
                map.map.len(),
                map.codomain_size
            )));
        }
        if let MorphismKind::NotMorphism(w) = classify_map(base, ambient, map).kind {
            return Err(Error::NotMorphism(w.detail));
        }
        Ok(Embedded { base, ambient, map })
    }

    fn image(&self, f: &Poly) -> Poly {
        f.map_coeffs(self.ambient, self.map)
    }

    fn image_of_base(&self) -> ElemSet {
        self.map.image_set(&self.base.full_set())
    }

    /// `0 ∈ ev(f, S, K)` for a set `S`.
    fn vanishes_on(&self, f: &Poly, s: &ElemSet) -> bool {
        evaluate_set(self.ambient, &self.image(f), s).contains(self.ambient.zero())
    }
}

/// The first `f` over `F` (by degree, then canonical order) with degree at most
/// `bound` and `0 ∈ ev(f, S)` for the set `S`.
fn first_vanishing(e: &Embedded, s: &ElemSet, bound: usize) -> Option<Poly> {
    (1..=bound).find_map(|d| polys_of_degree(e.base, d).into_iter().find(|f| e.vanishes_on(f, s)))
}

/// A polynomial over `F` of degree at most `bound` vanishing at `α`, or `None`
/// when none exists up to the bound.
pub fn is_algebraic(e: &Embedded, alpha: ElementId, bound: usize) -> Option<Poly> {
    first_vanishing(e, &e.ambient.singleton(alpha), bound)
}

/// `Irr_F(α, K)`: a minimal-degree irreducible polynomial vanishing at `α`,
/// first in canonical order.
pub fn irr_poly(e: &Embedded, alpha: ElementId, bound: usize) -> Result<Poly> {
    let s = e.ambient.singleton(alpha);
    for d in 1..=bound {
        for f in polys_of_degree(e.base, d) {
            if e.vanishes_on(&f, &s) && is_irreducible(e.base, &f)? {
                return Ok(f);
            }
        }
    }
    Err(Error::NoWitness(format!(
        "no irreducible polynomial of degree ≤ {bound} vanishes at {}",
        e.ambient.element_name(alpha)
    )))
}

/// `F[γ, K]`, the union of `ev(f, γ, K)` over all `f ∈ F[X]`.
pub fn generated_set(e: &Embedded, gamma: ElementId) -> ElemSet {
    let k = e.ambient;
    let g = k.singleton(gamma);
    let mut t = e.image_of_base();
    let mut power = g.clone();
    let mut seen = HashSet::new();
    while seen.insert((t.clone(), power.clone())) {
        let mut next = t.clone();
        for a in e.base.elements() {
            next.union_with(&k.sumset_unchecked(&t, &k.prod_elem_set(e.map.apply(a), &power)));
        }
        t = next;
        power = k.prodset_unchecked(&power, &g);
    }
    t
}

/// `a₀ + a₁P₁ + … + a_nP_n` where `Pᵢ` is the set power `γⁱ`.
pub fn combination(e: &Embedded, coeffs: &[ElementId], gamma: ElementId) -> ElemSet {
    let f = Poly::new(e.base, coeffs.to_vec());
    evaluate(e.ambient, &e.image(&f), gamma)
}

/// The smallest subset of `K` holding the image of `F` and `α`, closed under
/// sums, products, negation and inverses, with its inclusion into `K`.
pub fn simple_extension(e: &Embedded, alpha: ElementId) -> Result<(FiniteSuperring, MorphismTable)> {
    let k = e.ambient;
    let mut s = e.image_of_base();
    s.insert(alpha);
    loop {
        let mut next = s.clone();
        for x in &s {
            next.insert(k.neg(x));
            next.union_with(&k.inverses(x));
            for y in &s {
                next.union_with(k.sum(x, y));
                next.union_with(k.prod(x, y));
            }
        }
        if next == s {
            break;
        }
        s = next;
    }
    let name = format!("{}({})", e.base.name(), k.element_name(alpha));
    let (sub, incl) = k.substructure(name, &s)?;
    let map = MorphismTable::new(&sub, k, incl)?;
    Ok((sub, map))
}

/// A failing instance of the almost-full identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostFullGap {
    pub coeffs: [ElementId; 3],
    pub exponents: [usize; 3],
    pub left: ElemSet,
    pub right: ElemSet,
}

/// Check `(aγ^p + bγ^q + cγ^r)γ = aγ^{p+1} + bγ^{q+1} + cγ^{r+1}` for all
/// `a, b, c ∈ F` and distinct `p, q, r ≤ n`. `K` must be spanned by
/// `1, γ, …, γⁿ`.
pub fn is_almost_full(e: &Embedded, gamma: ElementId, n: usize) -> Result<Option<AlmostFullGap>> {
    let k = e.ambient;
    let g = k.singleton(gamma);
    let mut powers = vec![k.singleton(k.one())];
    for i in 0..=n {
        powers.push(k.prodset_unchecked(&powers[i], &g));
    }
    let mut span = e.image_of_base();
    for p in powers.iter().take(n + 1).skip(1) {
        let mut next = span.clone();
        for a in e.base.elements() {
            next.union_with(&k.sumset_unchecked(&span, &k.prod_elem_set(e.map.apply(a), p)));
        }
        span = next;
    }
    if span != k.full_set() {
        return Err(Error::InvalidStructure(format!(
            "{} is not spanned by 1, {}, …, {}^{n}",
            k.name(),
            k.element_name(gamma),
            k.element_name(gamma)
        )));
    }
    let term = |a: ElementId, i: usize| k.prod_elem_set(e.map.apply(a), &powers[i]);
    for p in 0..=n {
        for q in (0..=n).filter(|&q| q != p) {
            for r in (0..=n).filter(|&r| r != p && r != q) {
                for a in e.base.elements() {
                    for b in e.base.elements() {
                        for c in e.base.elements() {
                            let inner = k.sumset_unchecked(&k.sumset_unchecked(&term(a, p), &term(b, q)), &term(c, r));
                            let left = k.prodset_unchecked(&inner, &g);
                            let right = k.sumset_unchecked(
                                &k.sumset_unchecked(&term(a, p + 1), &term(b, q + 1)),
                                &term(c, r + 1),
                            );
                            if left != right {
                                return Ok(Some(AlmostFullGap {
                                    coeffs: [a, b, c],
                                    exponents: [p, q, r],
                                    left,
                                    right,
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// How an algebraicity witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationRoute {
    /// Scaling and binomial elimination only.
    Constructive,
    /// A searched relation for `a₁γ + … + a_pγ^p`, then binomial elimination.
    Mixed,
    /// Exhaustive search up to [`FALLBACK_DEGREE`].
    BruteForce,
}

impl EliminationRoute {
    pub fn label(self) -> &'static str {
        match self {
            EliminationRoute::Constructive => "constructive",
            EliminationRoute::Mixed => "mixed",
            EliminationRoute::BruteForce => "brute-force",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub witness: Poly,
    pub route: EliminationRoute,
}

/// Scale coefficient sets by a set: `S·E` coordinatewise.
fn scale(k: &FiniteSuperring, s: &ElemSet, env: &CoeffEnvelope) -> CoeffEnvelope {
    CoeffEnvelope::new(k, env.sets().iter().map(|c| k.prodset_unchecked(s, c)).collect())
}

/// Members of `env` in canonical order (top coefficient first), passed to
/// `accept` until it returns true or the budget runs out.
fn first_member(
    k: &FiniteSuperring,
    env: &CoeffEnvelope,
    budget: &mut usize,
    accept: &mut dyn FnMut(&Poly) -> bool,
) -> Option<Poly> {
    let lists: Vec<Vec<ElementId>> = env.sets().iter().map(ElemSet::to_vec).collect();
    fn go(
        k: &FiniteSuperring,
        lists: &[Vec<ElementId>],
        coeffs: &mut Vec<ElementId>,
        i: usize,
        budget: &mut usize,
        accept: &mut dyn FnMut(&Poly) -> bool,
    ) -> Option<Poly> {
        if i == 0 {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let f = Poly::new(k, coeffs.clone());
            return accept(&f).then_some(f);
        }
        for &c in &lists[i - 1] {
            coeffs[i - 1] = c;
            if let Some(f) = go(k, lists, coeffs, i - 1, budget, accept) {
                return Some(f);
            }
        }
        None
    }
    let mut coeffs = vec![k.zero(); lists.len()];
    go(k, &lists, &mut coeffs, lists.len(), budget, accept)
}

/// Candidates `h = d₀ + z₁X + … + z_nXⁿ` with `zᵢ ∈ dᵢ·(a⁻¹)ⁱ`, which vanish at
/// `aγ` when `d` vanishes at `γ`.
fn scaling_envelope(f: &FiniteSuperring, irr: &Poly, ainv: ElementId) -> CoeffEnvelope {
    let inv = f.singleton(ainv);
    let sets = irr
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &d)| f.prod_elem_set(d, &f.power_set(&inv, i)))
        .collect();
    CoeffEnvelope::new(f, sets)
}

/// A polynomial vanishing at `aγ`, obtained from `Irr` by the scaling
/// transform. `None` when `a = 0` or no choice verifies.
pub fn scaling_witness(e: &Embedded, irr: &Poly, gamma: ElementId, a: ElementId) -> Option<Poly> {
    let f = e.base;
    let target = e.ambient.prod(e.map.apply(a), gamma).clone();
    let mut budget = ELIMINATION_BUDGET;
    for ainv in f.inverses(a).iter() {
        let env = scaling_envelope(f, irr, ainv);
        if let Some(h) = first_member(f, &env, &mut budget, &mut |h| e.vanishes_on(h, &target)) {
            return Some(h);
        }
    }
    None
}

/// Candidates `Σ hᵢ·(Y - a)ⁱ`: from a relation for `S` to one for `a + S`.
fn shift_envelope(f: &FiniteSuperring, h: &Poly, a: ElementId) -> CoeffEnvelope {
    let lin = Poly::linear_factor(f, a);
    let mut power = CoeffEnvelope::singleton(f, &Poly::constant(f, f.one()));
    let mut acc = CoeffEnvelope::new(f, Vec::new());
    for (i, &c) in h.coeffs().iter().enumerate() {
        if i > 0 {
            power = envelope_prod_poly(f, &power, &lin);
        }
        acc = envelope_sum(f, &acc, &scale(f, &f.singleton(c), &power));
    }
    acc
}

/// A polynomial over `F` vanishing on `a₀ + a₁γ + … + a_pγ^p`, following the
/// scaling and binomial elimination steps with backtracking over set-valued
/// choices, and falling back to exhaustive search.
pub fn eliminate_witness(e: &Embedded, irr: &Poly, gamma: ElementId, coeffs: &[ElementId]) -> Result<Elimination> {
    let f = e.base;
    let a = Poly::new(f, coeffs.to_vec());
    let target = combination(e, a.coeffs(), gamma);
    let done = |g: Poly, route| Ok(Elimination { witness: g, route });
    match a.degree() {
        None | Some(0) => {
            let g = Poly::linear_factor(f, a.coeff(0));
            if e.vanishes_on(&g, &target) {
                return done(g, EliminationRoute::Constructive);
            }
        }
        Some(1) if a.coeff(0) == f.zero() && a.coeff(1) == f.one() => {
            if e.vanishes_on(irr, &target) {
                return done(irr.clone(), EliminationRoute::Constructive);
            }
        }
        Some(1) => {
            // relation for bγ by scaling, then shift by a₀
            let (a0, b) = (a.coeff(0), a.coeff(1));
            let scaled = e.ambient.prod(e.map.apply(b), gamma).clone();
            let mut budget = ELIMINATION_BUDGET;
            for binv in f.inverses(b).iter() {
                let env = scaling_envelope(f, irr, binv);
                let mut found = None;
                first_member(f, &env, &mut budget, &mut |h| {
                    if !e.vanishes_on(h, &scaled) {
                        return false;
                    }
                    let mut inner = ELIMINATION_BUDGET;
                    found = first_member(f, &shift_envelope(f, h, a0), &mut inner, &mut |g| e.vanishes_on(g, &target));
                    found.is_some()
                });
                if let Some(g) = found {
                    return done(g, EliminationRoute::Constructive);
                }
            }
        }
        Some(_) => {
            let mut tail = a.coeffs().to_vec();
            tail[0] = f.zero();
            let s = combination(e, &tail, gamma);
            if let Some(h) = first_vanishing(e, &s, FALLBACK_DEGREE) {
                let mut budget = ELIMINATION_BUDGET;
                let env = shift_envelope(f, &h, a.coeff(0));
                if let Some(g) = first_member(f, &env, &mut budget, &mut |g| e.vanishes_on(g, &target)) {
                    return done(g, EliminationRoute::Mixed);
                }
            }
        }
    }
    match first_vanishing(e, &target, FALLBACK_DEGREE) {
        Some(g) => done(g, EliminationRoute::BruteForce),
        None => Err(Error::NoWitness(format!(
            "no polynomial of degree ≤ {FALLBACK_DEGREE} vanishes on {}",
            e.ambient.fmt_set(&target)
        ))),
    }
}

/// Coefficients `a` (not all zero) with `0 ∈ a₁λ₁ + … + a_nλ_n`, if any.
pub fn dependence(e: &Embedded, items: &[ElemSet], max_items: usize) -> Result<Option<Vec<ElementId>>> {
    if items.len() > max_items {
        return Err(Error::CarrierTooLarge {
            size: items.len(),
            max: max_items,
        });
    }
    let k = e.ambient;
    let f = e.base;
    let total = (f.size() as u128).pow(items.len() as u32);
    for code in 1..total {
        let a: Vec<ElementId> = (0..items.len())
            .map(|i| (code / (f.size() as u128).pow(i as u32) % f.size() as u128) as usize)
            .collect();
        if a.iter().all(|&x| x == f.zero()) {
            continue;
        }
        let mut acc = k.singleton(k.zero());
        for (x, s) in a.iter().zip(items) {
            acc = k.sumset_unchecked(&acc, &k.prod_elem_set(e.map.apply(*x), s));
        }
        if acc.contains(k.zero()) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Whether the distinct elements `items` are linearly independent over `F`.
pub fn linear_independent(e: &Embedded, items: &[ElementId]) -> Result<bool> {
    let mut distinct = items.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let sets: Vec<ElemSet> = distinct.iter().map(|&x| e.ambient.singleton(x)).collect();
    Ok(dependence(e, &sets, MAX_INDEPENDENCE_SET)?.is_none())
}

/// `[K:F]` read literally: the largest `n` such that `{1, λ, …, λⁿ}` is
/// independent for every `λ ∈ K`, with powers as set powers and equal powers
/// counted once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionDegree {
    Finite(usize),
    /// Independent for every `n` up to the bound.
    AtLeast(usize),
}

pub fn extension_degree(e: &Embedded, bound: usize) -> Result<ExtensionDegree> {
    let k = e.ambient;
    let mut best = 0;
    for n in 0..=bound {
        for lambda in k.elements() {
            let mut powers: Vec<ElemSet> = Vec::new();
            let mut p = k.singleton(k.one());
            for _ in 0..=n {
                if !powers.contains(&p) {
                    powers.push(p.clone());
                }
                p = k.prodset_unchecked(&p, &k.singleton(lambda));
            }
            if dependence(e, &powers, bound.max(MAX_INDEPENDENCE_SET) + 1)?.is_some() {
                return Ok(ExtensionDegree::Finite(best));
            }
        }
        best = n;
    }
    Ok(ExtensionDegree::AtLeast(bound))
}

/// The first non-constant polynomial of degree at most `d` (degree, then
/// canonical order) with no root in `f`.
pub fn alg_closed_counterexample(f: &FiniteSuperring, d: usize) -> Option<Poly> {
    (1..=d).find_map(|deg| {
        polys_of_degree(f, deg)
            .into_iter()
            .find(|p| !f.elements().any(|a| evaluate(f, p, a).contains(f.zero())))
    })
}

pub fn is_alg_closed_up_to(f: &FiniteSuperring, d: usize) -> bool {
    alg_closed_counterexample(f, d).is_none()
}

/// Order in which candidate moduli are tried within each degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateOrder {
    Canonical,
    Reverse,
}

/// One root adjunction `top ↪ top(p)`.
#[derive(Clone, Debug)]
pub struct ExtensionStep {
    pub base: FiniteSuperring,
    pub extended: FiniteSuperring,
    pub embedding: MorphismTable,
    pub modulus: Poly,
    pub root: ElementId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerStop {
    /// The top has a root for every polynomial of degree at most `D`.
    Closed,
    /// The step budget ran out first.
    Budget,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub ground: FiniteSuperring,
    pub steps: Vec<ExtensionStep>,
    /// `ground ↪ step k` for each step.
    pub composites: Vec<MorphismTable>,
    pub stop: TowerStop,
    pub max_degree: usize,
}

impl Tower {
    pub fn top(&self) -> &FiniteSuperring {
        self.steps.last().map_or(&self.ground, |s| &s.extended)
    }

    /// Step files and embedding maps: `(file name, .msr text)` pairs plus a
    /// JSON manifest referring to them.
    pub fn manifest(&self) -> (Vec<(String, String)>, Value) {
        let mut files = vec![("step0.msr".to_string(), serialize_structure(&self.ground))];
        let mut steps = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            let file = format!("step{}.msr", i + 1);
            files.push((file.clone(), serialize_structure(&s.extended)));
            steps.push(json!({
                "file": file,
                "structure": s.extended.name(),
                "size": s.extended.size(),
                "modulus": s.modulus.render(&s.base),
                "root": s.extended.element_name(s.root),
                "embedding": s.embedding.render(&s.base, &s.extended),
                "composite": self.composites[i].render(&self.ground, &s.extended),
            }));
        }
        let stop = match self.stop {
            TowerStop::Closed => "closed",
            TowerStop::Budget => "budget",
        };
        let manifest = json!({
            "ground": { "file": "step0.msr", "structure": self.ground.name(), "size": self.ground.size() },
            "max_degree": self.max_degree,
            "steps": steps,
            "stop": stop,
        });
        (files, manifest)
    }
}

/// The first irreducible polynomial of degree at most `d` with no root in
/// `f`, in degree order and then `order` within a degree.
pub fn next_modulus(f: &FiniteSuperring, d: usize, order: CandidateOrder) -> Result<Option<Poly>> {
    for deg in 1..=d {
        let mut cands = polys_of_degree(f, deg);
        if order == CandidateOrder::Reverse {
            cands.reverse();
        }
        for p in cands {
            if !f.elements().any(|a| evaluate(f, &p, a).contains(f.zero())) && is_irreducible(f, &p)? {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

/// Adjoin roots of rootless irreducible polynomials of degree at most `d`
/// until the top is closed up to `d` or `max_steps` steps were taken.
pub fn closure_tower(f: &FiniteSuperring, d: usize, max_steps: usize, order: CandidateOrder) -> Result<Tower> {
    if !f.is_superfield_tables() {
        return Err(Error::NotSuperfield(f.name().to_string()));
    }
    let mut steps: Vec<ExtensionStep> = Vec::new();
    let mut composites: Vec<MorphismTable> = Vec::new();
    let mut stop = TowerStop::Budget;
    for k in 1..=max_steps + 1 {
        let top = steps.last().map_or(f, |s| &s.extended);
        let Some(p) = next_modulus(top, d, order)? else {
            stop = TowerStop::Closed;
            break;
        };
        if k > max_steps {
            break;
        }
        let q = make_quotient(top, &p, ProductMode::Strict)?;
        if q.embedding_class.kind != MorphismKind::Full {
            return Err(Error::NotMorphism(format!("{} ↪ {} is not full", top.name(), q.ring.name())));
        }
        let root = q
            .root()
            .ok_or_else(|| Error::NoWitness(format!("root of {} in {}", p.render(top), q.ring.name())))?;
        let names: Vec<String> = q.ring.names().iter().map(|n| format!("step{k}:{n}")).collect();
        let extended = rename(&q.ring, format!("{}+{k}", f.name()), names)?;
        let composite = match composites.last() {
            None => q.embedding.clone(),
            Some(prev) => compose(prev, &q.embedding)?,
        };
        if classify_map(f, &extended, &composite).kind != MorphismKind::Full {
            return Err(Error::NotMorphism(format!("{} ↪ {} is not full", f.name(), extended.name())));
        }
        steps.push(ExtensionStep {
            base: top.clone(),
            extended,
            embedding: q.embedding,
            modulus: p,
            root,
        });
        composites.push(composite);
    }
    Ok(Tower {
        ground: f.clone(),
        steps,
        composites,
        stop,
        max_degree: d,
    })
}

fn rename(s: &FiniteSuperring, name: String, names: Vec<String>) -> Result<FiniteSuperring> {
    FiniteSuperring::from_fn(
        name,
        names,
        |a, b| s.sum(a, b).clone(),
        |a, b| s.prod(a, b).clone(),
        s.neg_table().to_vec(),
        s.zero(),
        s.one(),
    )
}
