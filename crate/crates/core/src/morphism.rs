//! Maps between finite superrings: morphism checks, extension kinds,
//! composition and isomorphism search.

use std::collections::HashMap;

use crate::axioms::Witness;
use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::ring::FiniteSuperring;

pub const DEFAULT_ISO_BOUND: usize = 16;

/// A total map between carriers, stored as `map[a] = f(a)`. It need not be
/// a morphism; [`classify_map`] decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismTable {
    pub map: Vec<ElementId>,
    pub codomain_size: usize,
}

impl MorphismTable {
    pub fn new(domain: &FiniteSuperring, codomain: &FiniteSuperring, map: Vec<ElementId>) -> Result<Self> {
        if map.len() != domain.size() {
            return Err(Error::MapShape(format!(
                "{} entries for a domain of {} elements",
                map.len(),
                domain.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain.size()) {
            return Err(Error::MapShape(format!("target index {bad} outside the codomain")));
        }
        Ok(MorphismTable {
            map,
            codomain_size: codomain.size(),
        })
    }

    pub fn identity(s: &FiniteSuperring) -> Self {
        MorphismTable {
            map: s.elements().collect(),
            codomain_size: s.size(),
        }
    }

    /// Parse `a:b,c:d,…` using element names; every domain element must be
    /// listed exactly once.
    pub fn parse(domain: &FiniteSuperring, codomain: &FiniteSuperring, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut map = vec![None; domain.size()];
        for entry in compact.split(',').filter(|e| !e.is_empty()) {
            // element names may contain ':' themselves, so split at the last one
            // that leaves a valid name on both sides
            let (a, b) = (1..entry.len())
                .rev()
                .filter(|&i| entry.as_bytes()[i] == b':')
                .map(|i| (&entry[..i], &entry[i + 1..]))
                .find(|(a, b)| domain.index_of(a).is_ok() && codomain.index_of(b).is_ok())
                .ok_or_else(|| Error::MapShape(format!("cannot read map entry `{entry}`")))?;
            let x = domain.index_of(a)?;
            if map[x].is_some() {
                return Err(Error::MapShape(format!("`{a}` mapped twice")));
            }
            map[x] = Some(codomain.index_of(b)?);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::MapShape(format!("`{}` is not mapped", domain.element_name(i)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, map)
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a]
    }

    pub fn image_set(&self, s: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.codomain_size, s.iter().map(|a| self.map[a]))
    }

    pub fn is_injective(&self) -> bool {
        self.first_collision().is_none()
    }

    fn first_collision(&self) -> Option<(ElementId, ElementId)> {
        let mut seen = HashMap::new();
        for (a, &y) in self.map.iter().enumerate() {
            if let Some(&b) = seen.get(&y) {
                return Some((b, a));
            }
            seen.insert(y, a);
        }
        None
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set(&ElemSet::full(self.map.len())).len() == self.codomain_size
    }

    /// Render as `a:b,c:d,…`.
    pub fn render(&self, domain: &FiniteSuperring, codomain: &FiniteSuperring) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}:{}", domain.element_name(a), codomain.element_name(b)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    NotMorphism(Witness),
    Morphism,
    Full,
}

impl MorphismKind {
    pub fn label(&self) -> &'static str {
        match self {
            MorphismKind::NotMorphism(_) => "not-morphism",
            MorphismKind::Morphism => "morphism",
            MorphismKind::Full => "full-morphism",
        }
    }

    pub fn is_morphism(&self) -> bool {
        !matches!(self, MorphismKind::NotMorphism(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClassification {
    pub kind: MorphismKind,
    pub injective: bool,
    pub surjective: bool,
    /// For a morphism that is not full, the first pair where an image of a
    /// sum or product is strictly smaller than the sum or product of images.
    pub fullness_gap: Option<Witness>,
}

fn witness(elements: Vec<ElementId>, detail: String) -> Witness {
    Witness { elements, detail }
}

/// First violation of the morphism conditions `f(0)=0`, `f(1)=1`,
/// `f(-a)=-f(a)`, `c ∈ a+b ⇒ f(c) ∈ f(a)+f(b)`, `c ∈ ab ⇒ f(c) ∈ f(a)f(b)`.
fn morphism_violation(dom: &FiniteSuperring, cod: &FiniteSuperring, m: &MorphismTable) -> Option<Witness> {
    let f = |a| m.map[a];
    let dn = |a| dom.element_name(a).to_string();
    let cn = |a| cod.element_name(a).to_string();
    if f(dom.zero()) != cod.zero() {
        return Some(witness(vec![dom.zero()], format!("f(0) = {}", cn(f(dom.zero())))));
    }
    if f(dom.one()) != cod.one() {
        return Some(witness(vec![dom.one()], format!("f(1) = {}", cn(f(dom.one())))));
    }
    for a in dom.elements() {
        if f(dom.neg(a)) != cod.neg(f(a)) {
            return Some(witness(
                vec![a],
                format!("f(-{}) = {} but -f({}) = {}", dn(a), cn(f(dom.neg(a))), dn(a), cn(cod.neg(f(a)))),
            ));
        }
    }
    for (op, dt, ct) in [
        ("+", FiniteSuperring::sum as fn(&_, _, _) -> &_, FiniteSuperring::sum as fn(&_, _, _) -> &_),
        ("·", FiniteSuperring::prod, FiniteSuperring::prod),
    ] {
        for a in dom.elements() {
            for b in dom.elements() {
                let target = ct(cod, f(a), f(b));
                if let Some(c) = dt(dom, a, b).iter().find(|&c| !target.contains(f(c))) {
                    return Some(witness(
                        vec![a, b, c],
                        format!(
                            "{} ∈ {} {op} {} but f({}) = {} ∉ {} {op} {} = {}",
                            dn(c),
                            dn(a),
                            dn(b),
                            dn(c),
                            cn(f(c)),
                            cn(f(a)),
                            cn(f(b)),
                            cod.fmt_set(target)
                        ),
                    ));
                }
            }
        }
    }
    None
}

fn fullness_violation(dom: &FiniteSuperring, cod: &FiniteSuperring, m: &MorphismTable) -> Option<Witness> {
    for (op, dt, ct) in [
        ("+", FiniteSuperring::sum as fn(&_, _, _) -> &_, FiniteSuperring::sum as fn(&_, _, _) -> &_),
        ("·", FiniteSuperring::prod, FiniteSuperring::prod),
    ] {
        for a in dom.elements() {
            for b in dom.elements() {
                let image = m.image_set(dt(dom, a, b));
                let target = ct(cod, m.map[a], m.map[b]);
                if &image != target {
                    return Some(witness(
                        vec![a, b],
                        format!(
                            "f({} {op} {}) = {} but f({}) {op} f({}) = {}",
                            dom.element_name(a),
                            dom.element_name(b),
                            cod.fmt_set(&image),
                            dom.element_name(a),
                            dom.element_name(b),
                            cod.fmt_set(target)
                        ),
                    ));
                }
            }
        }
    }
    None
}

/// Decide whether `m` is a morphism, and whether it is full.
pub fn classify_map(dom: &FiniteSuperring, cod: &FiniteSuperring, m: &MorphismTable) -> MapClassification {
    let (kind, fullness_gap) = match morphism_violation(dom, cod, m) {
        Some(w) => (MorphismKind::NotMorphism(w), None),
        None => match fullness_violation(dom, cod, m) {
            Some(w) => (MorphismKind::Morphism, Some(w)),
            None => (MorphismKind::Full, None),
        },
    };
    MapClassification {
        kind,
        injective: m.is_injective(),
        surjective: m.is_surjective(),
        fullness_gap,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    /// An injection that is not a morphism.
    Proto,
    /// An injective morphism.
    Extension,
    /// An injective full morphism.
    Full,
}

impl ExtensionKind {
    pub fn label(self) -> &'static str {
        match self {
            ExtensionKind::Proto => "proto",
            ExtensionKind::Extension => "extension",
            ExtensionKind::Full => "full",
        }
    }
}

pub fn extension_kind(sub: &FiniteSuperring, sup: &FiniteSuperring, embedding: &MorphismTable) -> Result<ExtensionKind> {
    if let Some((a, b)) = embedding.first_collision() {
        return Err(Error::NotInjective(
            sub.element_name(a).to_string(),
            sub.element_name(b).to_string(),
        ));
    }
    Ok(match classify_map(sub, sup, embedding).kind {
        MorphismKind::NotMorphism(_) => ExtensionKind::Proto,
        MorphismKind::Morphism => ExtensionKind::Extension,
        MorphismKind::Full => ExtensionKind::Full,
    })
}

/// `g ∘ f` for `f: A → B` and `g: B → C`.
pub fn compose(f: &MorphismTable, g: &MorphismTable) -> Result<MorphismTable> {
    if f.codomain_size != g.map.len() {
        return Err(Error::MapShape(format!(
            "codomain of size {} composed with a domain of size {}",
            f.codomain_size,
            g.map.len()
        )));
    }
    Ok(MorphismTable {
        map: f.map.iter().map(|&b| g.map[b]).collect(),
        codomain_size: g.codomain_size,
    })
}

fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<ElementId>> {
    let total = n.pow(len as u32);
    (0..total).map(move |code| (0..len).map(|i| code / n.pow(i as u32) % n).collect())
}

/// Check the identities a full morphism carries to finite expressions, for
/// every tuple with at most `max_len` terms:
/// `f(a₁+…+aₙ) = f(a₁)+…+f(aₙ)`, `f((a₁+b₁)…(aₙ+bₙ)) = (f(a₁)+f(b₁))…`,
/// `f(c₁d₁+…+cₙdₙ) = f(c₁)f(d₁)+…` and
/// `f(a₀+a₁α+…+aₙαⁿ) = f(a₀)+f(a₁)f(α)+…+f(aₙ)f(α)ⁿ`.
/// Returns the first failure.
pub fn full_identity_violation(
    dom: &FiniteSuperring,
    cod: &FiniteSuperring,
    m: &MorphismTable,
    max_len: usize,
) -> Option<String> {
    let n = dom.size();
    let img = |s: &ElemSet| m.image_set(s);
    let ds = |a: ElementId| dom.singleton(a);
    let cs = |a: ElementId| cod.singleton(m.apply(a));
    let names = |t: &[ElementId]| t.iter().map(|&a| dom.element_name(a)).collect::<Vec<_>>().join(", ");
    for len in 1..=max_len {
        for t in tuples(n, len) {
            let left = img(&dom.nary_sum(&t.iter().map(|&a| ds(a)).collect::<Vec<_>>()).ok()?);
            let right = cod.nary_sum(&t.iter().map(|&a| cs(a)).collect::<Vec<_>>()).ok()?;
            if left != right {
                return Some(format!("sum of ({})", names(&t)));
            }
            for alpha in dom.elements() {
                let (mut pd, mut pc) = (dom.singleton(dom.one()), cod.singleton(cod.one()));
                let mut ev_dom = dom.singleton(dom.zero());
                let mut ev_cod = cod.singleton(cod.zero());
                for (i, &a) in t.iter().enumerate() {
                    if i > 0 {
                        pd = dom.prodset_unchecked(&pd, &ds(alpha));
                        pc = cod.prodset_unchecked(&pc, &cs(alpha));
                    }
                    ev_dom = dom.sumset_unchecked(&ev_dom, &dom.prod_elem_set(a, &pd));
                    ev_cod = cod.sumset_unchecked(&ev_cod, &cod.prod_elem_set(m.apply(a), &pc));
                }
                if img(&ev_dom) != ev_cod {
                    return Some(format!(
                        "evaluation of ({}) at {}",
                        names(&t),
                        dom.element_name(alpha)
                    ));
                }
            }
        }
        for t in tuples(n, 2 * len) {
            let (xs, ys) = t.split_at(len);
            let dsums: Vec<ElemSet> = xs.iter().zip(ys).map(|(&a, &b)| dom.sum(a, b).clone()).collect();
            let csums: Vec<ElemSet> = xs.iter().zip(ys).map(|(&a, &b)| cod.sum(m.apply(a), m.apply(b)).clone()).collect();
            if img(&dom.nary_prod(&dsums).ok()?) != cod.nary_prod(&csums).ok()? {
                return Some(format!("product of sums over ({}) and ({})", names(xs), names(ys)));
            }
            let dprods: Vec<ElemSet> = xs.iter().zip(ys).map(|(&a, &b)| dom.prod(a, b).clone()).collect();
            let cprods: Vec<ElemSet> = xs.iter().zip(ys).map(|(&a, &b)| cod.prod(m.apply(a), m.apply(b)).clone()).collect();
            if img(&dom.nary_sum(&dprods).ok()?) != cod.nary_sum(&cprods).ok()? {
                return Some(format!("sum of products over ({}) and ({})", names(xs), names(ys)));
            }
        }
    }
    None
}

/// Per-element invariants preserved by isomorphisms.
fn signatures(s: &FiniteSuperring) -> Vec<(Vec<usize>, Vec<usize>, bool, bool)> {
    s.elements()
        .map(|a| {
            let mut sums: Vec<usize> = s.elements().map(|b| s.sum(a, b).len()).collect();
            let mut prods: Vec<usize> = s.elements().map(|b| s.prod(a, b).len()).collect();
            sums.sort_unstable();
            prods.sort_unstable();
            (sums, prods, s.neg(a) == a, s.inverses(a).is_empty())
        })
        .collect()
}

struct IsoSearch<'a> {
    a: &'a FiniteSuperring,
    b: &'a FiniteSuperring,
    candidates: Vec<Vec<ElementId>>,
    map: Vec<Option<ElementId>>,
    inverse: Vec<Option<ElementId>>,
}

impl IsoSearch<'_> {
    /// Check every table cell whose operands are both assigned.
    fn consistent(&self, x: ElementId) -> bool {
        let (a, b) = (self.a, self.b);
        let fx = self.map[x].unwrap();
        if let Some(fnx) = self.map[a.neg(x)] {
            if fnx != b.neg(fx) {
                return false;
            }
        }
        if let Some(pre) = self.inverse[b.neg(fx)] {
            if pre != a.neg(x) {
                return false;
            }
        }
        for y in a.elements() {
            let Some(fy) = self.map[y] else { continue };
            for (src, dst) in [(a.sum(x, y), b.sum(fx, fy)), (a.prod(x, y), b.prod(fx, fy))] {
                if src.len() != dst.len() {
                    return false;
                }
                for z in src {
                    if let Some(fz) = self.map[z] {
                        if !dst.contains(fz) {
                            return false;
                        }
                    }
                }
                for w in dst {
                    if let Some(pre) = self.inverse[w] {
                        if !src.contains(pre) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn extend(&mut self, x: ElementId) -> bool {
        if x == self.a.size() {
            return true;
        }
        if self.map[x].is_some() {
            return self.extend(x + 1);
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.inverse[y].is_some() {
                continue;
            }
            self.map[x] = Some(y);
            self.inverse[y] = Some(x);
            if self.consistent(x) && self.extend(x + 1) {
                return true;
            }
            self.map[x] = None;
            self.inverse[y] = None;
        }
        false
    }
}

/// The lexicographically first bijection `A → B` that is a full morphism with
/// a full inverse, or `None`.
pub fn find_isomorphism(a: &FiniteSuperring, b: &FiniteSuperring, bound: usize) -> Result<Option<MorphismTable>> {
    for s in [a, b] {
        if s.size() > bound {
            return Err(Error::CarrierTooLarge { size: s.size(), max: bound });
        }
    }
    if a.size() != b.size() || a.is_nontrivial() != b.is_nontrivial() {
        return Ok(None);
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let candidates: Vec<Vec<ElementId>> = a
        .elements()
        .map(|x| b.elements().filter(|&y| sa[x] == sb[y]).collect())
        .collect();
    let mut search = IsoSearch {
        a,
        b,
        candidates,
        map: vec![None; a.size()],
        inverse: vec![None; b.size()],
    };
    for (x, y) in [(a.zero(), b.zero()), (a.one(), b.one())] {
        if search.map[x].is_some() {
            continue;
        }
        if sa[x] != sb[y] {
            return Ok(None);
        }
        search.map[x] = Some(y);
        search.inverse[y] = Some(x);
    }
    if !search.consistent(a.zero()) || !search.consistent(a.one()) || !search.extend(0) {
        return Ok(None);
    }
    let map: Vec<ElementId> = search.map.into_iter().map(Option::unwrap).collect();
    let iso = MorphismTable::new(a, b, map)?;
    let inverse = invert(&iso).expect("search produces a bijection");
    debug_assert_eq!(classify_map(a, b, &iso).kind, MorphismKind::Full);
    debug_assert_eq!(classify_map(b, a, &inverse).kind, MorphismKind::Full);
    Ok(Some(iso))
}

/// Inverse of a bijection.
pub fn invert(m: &MorphismTable) -> Option<MorphismTable> {
    if m.map.len() != m.codomain_size || !m.is_injective() {
        return None;
    }
    let mut inv = vec![0; m.codomain_size];
    for (a, &b) in m.map.iter().enumerate() {
        inv[b] = a;
    }
    Some(MorphismTable {
        map: inv,
        codomain_size: m.map.len(),
    })
}

/// True when `m` is a bijection and both it and its inverse are full morphisms.
pub fn is_isomorphism(a: &FiniteSuperring, b: &FiniteSuperring, m: &MorphismTable) -> bool {
    match invert(m) {
        Some(inv) => {
            classify_map(a, b, m).kind == MorphismKind::Full && classify_map(b, a, &inv).kind == MorphismKind::Full
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{make_hp, make_kaleidoscope, make_krasner, make_l9, make_q2, make_strict};

    #[test]
    fn identity_is_full() {
        let k = make_krasner();
        let c = classify_map(&k, &k, &MorphismTable::identity(&k));
        assert_eq!(c.kind, MorphismKind::Full);
        assert!(c.injective && c.surjective);
    }

    #[test]
    fn krasner_into_q2_is_not_a_morphism() {
        let (k, q2) = (make_krasner(), make_q2());
        let m = MorphismTable::parse(&k, &q2, "0:0, 1:1").unwrap();
        let c = classify_map(&k, &q2, &m);
        assert!(matches!(c.kind, MorphismKind::NotMorphism(_)));
        assert_eq!(extension_kind(&k, &q2, &m).unwrap(), ExtensionKind::Proto);
    }

    #[test]
    fn h3_into_l9_is_a_morphism_but_not_full() {
        let (h3, l9) = (make_hp(3).unwrap(), make_l9());
        let m = MorphismTable::parse(&h3, &l9, "0:0,1:1,2:2").unwrap();
        let c = classify_map(&h3, &l9, &m);
        assert_eq!(c.kind, MorphismKind::Morphism);
        assert!(c.fullness_gap.is_some());
    }

    #[test]
    fn h3_into_h5_fails_multiplicativity() {
        let (h3, h5) = (make_hp(3).unwrap(), make_hp(5).unwrap());
        let m = MorphismTable::parse(&h3, &h5, "0:0,1:1,2:2").unwrap();
        match classify_map(&h3, &h5, &m).kind {
            MorphismKind::NotMorphism(w) => assert_eq!(w.elements, vec![2, 2, 1]),
            k => panic!("unexpected {k:?}"),
        }
    }

    #[test]
    fn map_parsing_errors() {
        let k = make_krasner();
        assert!(MorphismTable::parse(&k, &k, "0:0").is_err());
        assert!(MorphismTable::parse(&k, &k, "0:0,1:1,1:0").is_err());
        assert!(MorphismTable::parse(&k, &k, "0:0,1:7").is_err());
    }

    #[test]
    fn non_injective_extension_is_an_error() {
        let (h3, k) = (make_hp(3).unwrap(), make_krasner());
        let m = MorphismTable::parse(&h3, &k, "0:0,1:1,2:1").unwrap();
        assert!(matches!(extension_kind(&h3, &k, &m), Err(Error::NotInjective(_, _))));
    }

    #[test]
    fn compose_with_identity() {
        let (h3, l9) = (make_hp(3).unwrap(), make_l9());
        let m = MorphismTable::parse(&h3, &l9, "0:0,1:1,2:2").unwrap();
        assert_eq!(compose(&MorphismTable::identity(&h3), &m).unwrap(), m);
        assert_eq!(compose(&m, &MorphismTable::identity(&l9)).unwrap(), m);
        assert!(compose(&m, &m).is_err());
    }

    #[test]
    fn isomorphisms() {
        let k = make_krasner();
        let iso = find_isomorphism(&make_hp(2).unwrap(), &k, DEFAULT_ISO_BOUND).unwrap().unwrap();
        assert_eq!(iso.map, vec![0, 1]);
        assert_eq!(find_isomorphism(&make_q2(), &make_kaleidoscope(1), 16).unwrap().unwrap().map, vec![0, 1, 2]);
        assert!(find_isomorphism(&make_hp(3).unwrap(), &make_strict(3).unwrap(), 16).unwrap().is_none());
        let f9 = make_strict(9).unwrap();
        let auto = find_isomorphism(&f9, &f9, 16).unwrap().unwrap();
        assert_eq!(auto, MorphismTable::identity(&f9));
        assert!(matches!(
            find_isomorphism(&f9, &f9, 8),
            Err(Error::CarrierTooLarge { size: 9, max: 8 })
        ));
    }

    #[test]
    fn full_identities() {
        let (h3, l9) = (make_hp(3).unwrap(), make_l9());
        assert_eq!(full_identity_violation(&h3, &h3, &MorphismTable::identity(&h3), 3), None);
        let m = MorphismTable::parse(&h3, &l9, "0:0,1:1,2:2").unwrap();
        assert!(full_identity_violation(&h3, &l9, &m, 2).is_some());
    }
}
