//! The polynomial superring `R[X]` over a finite superring.
//!
//! Sums and products of polynomials are sets of polynomials, described by a
//! [`CoeffEnvelope`]: one coefficient set per degree, with independent
//! membership in each coordinate.

mod division;
mod parse;

pub use division::{enumerate_divisions, euclid_divide, is_division, Division, DivisionRoute};
pub use parse::parse_poly;

use std::cmp::Ordering;

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::morphism::{classify_map, MorphismTable};
use crate::ring::FiniteSuperring;

pub const DEFAULT_EXPAND_BOUND: usize = 4096;

/// A polynomial with coefficients `a₀, a₁, …` (lowest degree first). Trailing
/// zero coefficients are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<ElementId>,
    zero: ElementId,
}

impl Poly {
    pub fn new(r: &FiniteSuperring, coeffs: Vec<ElementId>) -> Self {
        Self::with_zero(r.zero(), coeffs)
    }

    pub(crate) fn with_zero(zero: ElementId, mut coeffs: Vec<ElementId>) -> Self {
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(r: &FiniteSuperring) -> Self {
        Self::new(r, Vec::new())
    }

    pub fn constant(r: &FiniteSuperring, a: ElementId) -> Self {
        Self::new(r, vec![a])
    }

    /// `c·X^k`.
    pub fn monomial(r: &FiniteSuperring, c: ElementId, k: usize) -> Self {
        let mut coeffs = vec![r.zero(); k + 1];
        coeffs[k] = c;
        Self::new(r, coeffs)
    }

    /// `X - a`, written with the additive inverse of `a`.
    pub fn linear_factor(r: &FiniteSuperring, a: ElementId) -> Self {
        Self::new(r, vec![r.neg(a), r.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> ElementId {
        self.coeffs.get(i).copied().unwrap_or(self.zero)
    }

    pub fn coeffs(&self) -> &[ElementId] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<ElementId> {
        self.coeffs.last().copied()
    }

    pub fn neg(&self, r: &FiniteSuperring) -> Self {
        Self::new(r, self.coeffs.iter().map(|&a| r.neg(a)).collect())
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.zero; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            coeffs,
            zero: self.zero,
        }
    }

    /// Apply a coefficient map.
    pub fn map_coeffs(&self, target: &FiniteSuperring, m: &MorphismTable) -> Self {
        Self::new(target, self.coeffs.iter().map(|&a| m.apply(a)).collect())
    }

    /// Highest degree first, e.g. `X^2+2X+1`.
    pub fn render(&self, r: &FiniteSuperring) -> String {
        let terms: Vec<String> = (0..self.coeffs.len())
            .rev()
            .filter(|&i| self.coeffs[i] != self.zero)
            .map(|i| term(r, self.coeffs[i], i))
            .collect();
        if terms.is_empty() {
            r.element_name(r.zero()).to_string()
        } else {
            terms.join("+")
        }
    }

    /// Lowest degree first, e.g. `1+2X+X^2`.
    pub fn render_ascending(&self, r: &FiniteSuperring) -> String {
        let terms: Vec<String> = (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != self.zero)
            .map(|i| term(r, self.coeffs[i], i))
            .collect();
        if terms.is_empty() {
            r.element_name(r.zero()).to_string()
        } else {
            terms.join("+")
        }
    }

    /// Canonical order: degree (zero polynomial first), then coefficients from
    /// the top down by element index.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

fn term(r: &FiniteSuperring, c: ElementId, i: usize) -> String {
    let name = r.element_name(c);
    let var = match i {
        0 => return name.to_string(),
        1 => "X".to_string(),
        _ => format!("X^{i}"),
    };
    if c == r.one() && name == "1" {
        var
    } else if name.chars().all(|ch| ch.is_ascii_digit() || ch == '-') {
        format!("{name}{var}")
    } else {
        format!("{name}*{var}")
    }
}

/// All polynomials of degree exactly `d` (or the zero polynomial and the
/// constants when `d = 0`) in canonical order.
pub fn polys_of_degree(r: &FiniteSuperring, d: usize) -> Vec<Poly> {
    let n = r.size();
    let count = n.pow(d as u32);
    let mut out = Vec::new();
    for top in r.elements().filter(|&a| a != r.zero()) {
        for code in 0..count {
            let mut coeffs: Vec<ElementId> = (0..d).map(|i| code / n.pow(i as u32) % n).collect();
            coeffs.push(top);
            out.push(Poly::new(r, coeffs));
        }
    }
    out.sort();
    out
}

/// All polynomials of degree at most `d`, including zero, in canonical order.
pub fn polys_up_to_degree(r: &FiniteSuperring, d: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(r)];
    for k in 0..=d {
        out.extend(polys_of_degree(r, k));
    }
    out
}

/// A set of polynomials given coordinatewise: `h` is a member iff `hᵢ ∈ cᵢ`
/// for every `i`, where coordinates past the end hold `{0}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffEnvelope {
    sets: Vec<ElemSet>,
    zero: ElementId,
}

impl CoeffEnvelope {
    pub fn new(r: &FiniteSuperring, sets: Vec<ElemSet>) -> Self {
        Self::with_zero(r.zero(), sets)
    }

    fn with_zero(zero: ElementId, mut sets: Vec<ElemSet>) -> Self {
        while sets.last().is_some_and(|s| s.as_singleton() == Some(zero)) {
            sets.pop();
        }
        CoeffEnvelope { sets, zero }
    }

    pub fn singleton(r: &FiniteSuperring, p: &Poly) -> Self {
        Self::new(r, p.coeffs.iter().map(|&a| r.singleton(a)).collect())
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    /// Coefficient set at degree `i` (`{0}` past the end).
    pub fn coeff_set(&self, r: &FiniteSuperring, i: usize) -> ElemSet {
        self.sets.get(i).cloned().unwrap_or_else(|| r.singleton(self.zero))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Number of member polynomials, saturating.
    pub fn cardinality(&self) -> u128 {
        self.sets
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }

    pub fn contains(&self, h: &Poly) -> bool {
        if h.coeffs.len() > self.sets.len() {
            return false;
        }
        self.sets
            .iter()
            .enumerate()
            .all(|(i, s)| s.contains(h.coeff(i)))
    }

    /// Largest degree of a member, `None` when only the zero polynomial is a
    /// member.
    pub fn max_degree(&self) -> Option<usize> {
        (0..self.sets.len())
            .rev()
            .find(|&i| self.sets[i].iter().any(|a| a != self.zero))
    }

    /// Smallest degree of a member, `None` when the zero polynomial is a member.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.sets.len()).rev().find(|&i| !self.sets[i].contains(self.zero))
    }

    pub fn contains_zero(&self) -> bool {
        self.sets.iter().all(|s| s.contains(self.zero))
    }

    /// Every member, if there are at most `bound` of them.
    pub fn expand(&self, r: &FiniteSuperring, bound: usize) -> Result<Vec<Poly>> {
        let card = self.cardinality();
        if card > bound as u128 {
            return Err(Error::CarrierTooLarge {
                size: card.min(usize::MAX as u128) as usize,
                max: bound,
            });
        }
        let mut out = vec![Vec::new()];
        for s in &self.sets {
            let mut next = Vec::with_capacity(out.len() * s.len());
            for prefix in &out {
                for a in s {
                    let mut v: Vec<ElementId> = prefix.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out = next;
        }
        let mut polys: Vec<Poly> = out.into_iter().map(|c| Poly::new(r, c)).collect();
        polys.sort();
        Ok(polys)
    }

    /// Members in canonical order, produced lazily.
    pub fn members<'a>(&'a self, r: &'a FiniteSuperring) -> impl Iterator<Item = Poly> + 'a {
        let lists: Vec<Vec<ElementId>> = self.sets.iter().map(ElemSet::to_vec).collect();
        let total = self.cardinality();
        let mut idx = vec![0usize; lists.len()];
        let mut done = total == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let coeffs: Vec<ElementId> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            // advance lowest coordinate first
            let mut k = 0;
            loop {
                if k == idx.len() {
                    done = true;
                    break;
                }
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            Some(Poly::new(r, coeffs))
        })
    }

    /// Render as `{a, b} + {c}X + …` (lowest degree first).
    pub fn render(&self, r: &FiniteSuperring) -> String {
        if self.sets.is_empty() {
            return format!("{{{}}}", r.element_name(self.zero));
        }
        self.sets
            .iter()
            .enumerate()
            .map(|(i, s)| match i {
                0 => r.fmt_set(s),
                1 => format!("{}X", r.fmt_set(s)),
                _ => format!("{}X^{i}", r.fmt_set(s)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Coordinatewise sum of two envelopes.
pub fn envelope_sum(r: &FiniteSuperring, a: &CoeffEnvelope, b: &CoeffEnvelope) -> CoeffEnvelope {
    let n = a.len().max(b.len());
    let sets = (0..n)
        .map(|i| r.sumset_unchecked(&a.coeff_set(r, i), &b.coeff_set(r, i)))
        .collect();
    CoeffEnvelope::new(r, sets)
}

/// `f + g`: coordinate `i` is `fᵢ + gᵢ`.
pub fn poly_sum(r: &FiniteSuperring, f: &Poly, g: &Poly) -> CoeffEnvelope {
    let n = f.coeffs.len().max(g.coeffs.len());
    let sets = (0..n).map(|i| r.sum(f.coeff(i), g.coeff(i)).clone()).collect();
    CoeffEnvelope::new(r, sets)
}

/// `a₀b_n + a₁b_{n-1} + … + a_nb₀`, summed left to right.
pub fn prod_coeff(r: &FiniteSuperring, f: &[ElementId], g: &[ElementId], n: usize) -> ElemSet {
    let at = |v: &[ElementId], i: usize| v.get(i).copied().unwrap_or(r.zero());
    let mut acc = r.singleton(r.zero());
    for i in 0..=n {
        acc = r.sumset_unchecked(&acc, r.prod(at(f, i), at(g, n - i)));
    }
    acc
}

/// `f · g` by convolution. The zero polynomial absorbs.
pub fn poly_prod(r: &FiniteSuperring, f: &Poly, g: &Poly) -> CoeffEnvelope {
    if f.is_zero() || g.is_zero() {
        return CoeffEnvelope::new(r, Vec::new());
    }
    let n = f.coeffs.len() + g.coeffs.len() - 1;
    let sets = (0..n).map(|k| prod_coeff(r, &f.coeffs, &g.coeffs, k)).collect();
    CoeffEnvelope::new(r, sets)
}

/// `c · g` for an envelope `c` of coefficient choices applied to each member
/// of the product: coordinate `k` is the convolution with sets in place of
/// the coefficients of the first factor.
pub fn envelope_prod_poly(r: &FiniteSuperring, f: &CoeffEnvelope, g: &Poly) -> CoeffEnvelope {
    if f.is_empty() || g.is_zero() {
        return CoeffEnvelope::new(r, Vec::new());
    }
    let n = f.len() + g.coeffs.len() - 1;
    let sets = (0..n)
        .map(|k| {
            let mut acc = r.singleton(r.zero());
            for i in 0..=k {
                let a = f.coeff_set(r, i);
                let b = r.singleton(g.coeff(k - i));
                acc = r.sumset_unchecked(&acc, &r.prodset_unchecked(&a, &b));
            }
            acc
        })
        .collect();
    CoeffEnvelope::new(r, sets)
}

pub fn member(h: &Poly, e: &CoeffEnvelope) -> bool {
    e.contains(h)
}

/// `ev(α, f, K)`: the left-nested sum `a₀ + a₁α + … + a_nαⁿ` in `K`, with
/// coefficients already in `K` and powers taken as iterated product sets.
pub fn evaluate(k: &FiniteSuperring, f: &Poly, alpha: ElementId) -> ElemSet {
    evaluate_set(k, f, &k.singleton(alpha))
}

/// Evaluation with a set in place of `α`; powers are product sets of the set.
pub fn evaluate_set(k: &FiniteSuperring, f: &Poly, alpha: &ElemSet) -> ElemSet {
    let mut acc = k.singleton(k.zero());
    let mut power = k.singleton(k.one());
    for (i, &a) in f.coeffs.iter().enumerate() {
        if i > 0 {
            power = k.prodset_unchecked(&power, alpha);
        }
        acc = k.sumset_unchecked(&acc, &k.prod_elem_set(a, &power));
    }
    acc
}

/// Evaluate a polynomial over `F` at `α ∈ K` through an embedding `F → K`,
/// which must be a morphism.
pub fn evaluate_via(
    f_ring: &FiniteSuperring,
    k: &FiniteSuperring,
    embedding: &MorphismTable,
    f: &Poly,
    alpha: ElementId,
) -> Result<ElemSet> {
    if embedding.map.len() != f_ring.size() || embedding.codomain_size != k.size() {
        return Err(Error::CarrierMismatch {
            left: embedding.map.len(),
            right: f_ring.size(),
        });
    }
    if alpha >= k.size() {
        return Err(Error::UnknownElement(alpha.to_string()));
    }
    if let crate::morphism::MorphismKind::NotMorphism(w) = classify_map(f_ring, k, embedding).kind {
        return Err(Error::NotMorphism(w.detail));
    }
    Ok(evaluate(k, &f.map_coeffs(k, embedding), alpha))
}

/// `{ α ∈ K : 0 ∈ ev(α, f, K) }`.
pub fn roots(k: &FiniteSuperring, f: &Poly) -> Result<ElemSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(ElemSet::from_iter(
        k.size(),
        k.elements().filter(|&a| evaluate(k, f, a).contains(k.zero())),
    ))
}

/// A `g` of degree `deg f - 1` with `f ∈ (X - α)·g`, if one exists. The first
/// such `g` in lowest-coefficient-first search order is returned.
pub fn effective_root_witness(k: &FiniteSuperring, f: &Poly, alpha: ElementId) -> Option<Poly> {
    let d = f.degree()?;
    if d == 0 {
        return None;
    }
    let lin = [k.neg(alpha), k.one()];
    let mut g = vec![k.zero(); d];
    // coordinate j of (X - α)g only involves g_j and g_{j-1}
    fn go(k: &FiniteSuperring, f: &Poly, lin: &[ElementId; 2], g: &mut Vec<ElementId>, j: usize) -> bool {
        let d = g.len();
        if j == d {
            return g[d - 1] != k.zero() && prod_coeff(k, lin, g, d).contains(f.coeff(d));
        }
        for c in k.elements() {
            g[j] = c;
            if prod_coeff(k, lin, &g[..=j], j).contains(f.coeff(j)) && go(k, f, lin, g, j + 1) {
                return true;
            }
        }
        g[j] = k.zero();
        false
    }
    go(k, f, &lin, &mut g, 0).then(|| Poly::new(k, g))
}

/// `{ α : f ∈ (X - α)·g for some g }`. The ambient must be a superdomain so
/// that `deg g = deg f - 1`.
pub fn effective_roots(k: &FiniteSuperring, f: &Poly) -> Result<ElemSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !k.is_superdomain_tables() {
        return Err(Error::NotSuperdomain(k.name().to_string()));
    }
    Ok(ElemSet::from_iter(
        k.size(),
        k.elements().filter(|&a| effective_root_witness(k, f, a).is_some()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{make_hp, make_krasner, make_q2, make_strict};

    fn p(r: &FiniteSuperring, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn h3_product_envelope() {
        let h3 = make_hp(3).unwrap();
        let e = poly_prod(&h3, &p(&h3, "X+1"), &p(&h3, "X+2"));
        let sets: Vec<Vec<usize>> = e.sets().iter().map(ElemSet::to_vec).collect();
        assert_eq!(sets, vec![vec![2], vec![1, 2], vec![1]]);
        assert_eq!(e.cardinality(), 2);
        let members: Vec<String> = e.expand(&h3, 16).unwrap().iter().map(|m| m.render(&h3)).collect();
        assert_eq!(members, ["X^2+X+2", "X^2+2X+2"]);
        assert!(member(&p(&h3, "X^2+2X+2"), &e));
        assert!(!member(&p(&h3, "X^3"), &e));
    }

    #[test]
    fn strict_product_is_classical() {
        let f5 = make_strict(5).unwrap();
        let e = poly_prod(&f5, &p(&f5, "X+1"), &p(&f5, "X+4"));
        assert_eq!(e.expand(&f5, 4).unwrap(), vec![p(&f5, "X^2+4")]);
    }

    #[test]
    fn f_minus_f_contains_zero_over_krasner() {
        let k = make_krasner();
        for f in polys_up_to_degree(&k, 3) {
            assert!(poly_sum(&k, &f, &f.neg(&k)).contains(&Poly::zero(&k)));
        }
    }

    #[test]
    fn enumeration_counts() {
        let h3 = make_hp(3).unwrap();
        assert_eq!(polys_of_degree(&h3, 0).len(), 2);
        assert_eq!(polys_of_degree(&h3, 2).len(), 18);
        let all = polys_up_to_degree(&h3, 2);
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(polys_of_degree(&h3, 2)[1].render(&h3), "X^2+1");
    }

    #[test]
    fn evaluation_and_roots() {
        let h3 = make_hp(3).unwrap();
        assert_eq!(evaluate(&h3, &p(&h3, "X^2+2"), 1).to_vec(), vec![1, 2]);
        assert!(roots(&h3, &p(&h3, "X^2+2")).unwrap().is_empty());
        let q2 = make_q2();
        let r = roots(&q2, &parse_poly(&q2, "X^2+-1").unwrap()).unwrap();
        assert_eq!(q2.set_names(&r), ["1", "-1"]);
        let k = make_krasner();
        assert_eq!(roots(&k, &p(&k, "X+1")).unwrap().to_vec(), vec![1]);
        assert_eq!(roots(&k, &Poly::zero(&k)), Err(Error::ZeroPolynomial));
        for f in polys_up_to_degree(&h3, 2).into_iter().skip(1) {
            assert_eq!(evaluate(&h3, &f, 0), h3.singleton(f.coeff(0)));
        }
    }

    #[test]
    fn effective_roots_examples() {
        let q2 = make_q2();
        let f = parse_poly(&q2, "X^2+-1").unwrap();
        let one = q2.one();
        assert_eq!(effective_root_witness(&q2, &f, one).unwrap().render(&q2), "X+1");
        let h3 = make_hp(3).unwrap();
        assert!(effective_roots(&h3, &p(&h3, "X^2+2")).unwrap().is_empty());
        let f5 = make_strict(5).unwrap();
        for f in polys_up_to_degree(&f5, 2).into_iter().skip(1) {
            if f.degree().unwrap() > 0 {
                assert_eq!(effective_roots(&f5, &f).unwrap(), roots(&f5, &f).unwrap());
            }
        }
    }

    #[test]
    fn envelope_degree_bounds() {
        let h3 = make_hp(3).unwrap();
        let e = poly_sum(&h3, &p(&h3, "X^2+1"), &p(&h3, "X^2"));
        assert_eq!(e.max_degree(), Some(2));
        assert_eq!(e.min_degree(), Some(0));
        assert!(!e.contains_zero());
    }

    #[test]
    fn lazy_members_match_expand() {
        let h3 = make_hp(3).unwrap();
        let e = poly_sum(&h3, &p(&h3, "X^2+X+1"), &p(&h3, "2X^2+X+1"));
        let mut lazy: Vec<Poly> = e.members(&h3).collect();
        lazy.sort();
        assert_eq!(lazy, e.expand(&h3, 100).unwrap());
        assert_eq!(lazy.len() as u128, e.cardinality());
    }

    #[test]
    fn rendering() {
        let q2 = make_q2();
        let f = Poly::new(&q2, vec![2, 0, 1]);
        assert_eq!(f.render(&q2), "X^2+-1");
        assert_eq!(Poly::new(&q2, vec![1, 2]).render_ascending(&q2), "1+-1X");
        assert_eq!(Poly::zero(&q2).render(&q2), "0");
    }
}
