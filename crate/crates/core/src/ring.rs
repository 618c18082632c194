//! Finite superrings given by explicit set-valued tables.

use std::collections::HashSet;

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};

/// A finite structure `(S, +, ·, -, 0, 1)` whose sum and product are
/// set-valued.
///
/// Construction enforces the table-level invariants: both tables are total
/// and commutative, every entry is non-empty, `a + 0 = {a}`, `a · 0 = {0}`,
/// and negation is an involution fixing zero. Everything else (the axiom
/// ladder) is checked by [`crate::axioms::validate`].
#[derive(Clone, Debug)]
pub struct FiniteSuperring {
    name: String,
    names: Vec<String>,
    sum: Vec<ElemSet>,
    prod: Vec<ElemSet>,
    neg: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
}

/// Two structures are equal when their element lists and tables agree; the
/// structure name is a label only.
impl PartialEq for FiniteSuperring {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.sum == other.sum
            && self.prod == other.prod
            && self.neg == other.neg
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl Eq for FiniteSuperring {}

impl FiniteSuperring {
    /// Build a structure from table closures. Entries are read for every
    /// ordered pair, so asymmetric closures are rejected.
    pub fn from_fn<S, P>(
        name: impl Into<String>,
        names: Vec<String>,
        mut sum: S,
        mut prod: P,
        neg: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self>
    where
        S: FnMut(ElementId, ElementId) -> ElemSet,
        P: FnMut(ElementId, ElementId) -> ElemSet,
    {
        let n = names.len();
        let mut sums = Vec::with_capacity(n * n);
        let mut prods = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sums.push(sum(a, b));
                prods.push(prod(a, b));
            }
        }
        Self::from_tables(name, names, sums, prods, neg, zero, one)
    }

    /// Build a structure from row-major `n × n` tables.
    pub fn from_tables(
        name: impl Into<String>,
        names: Vec<String>,
        sum: Vec<ElemSet>,
        prod: Vec<ElemSet>,
        neg: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self> {
        let name = name.into();
        let n = names.len();
        let bad = |msg: String| Err(Error::InvalidStructure(format!("{name}: {msg}")));
        if n == 0 {
            return bad("empty carrier".into());
        }
        let mut seen = HashSet::new();
        for nm in &names {
            if !seen.insert(nm.as_str()) {
                return bad(format!("duplicate element name `{nm}`"));
            }
        }
        if sum.len() != n * n || prod.len() != n * n || neg.len() != n {
            return bad("tables are not total".into());
        }
        if zero >= n || one >= n {
            return bad("zero or one outside the carrier".into());
        }
        for table in [&sum, &prod] {
            if let Some(s) = table.iter().find(|s| s.carrier_size() != n) {
                return bad(format!(
                    "table entry over {} elements in a carrier of {n}",
                    s.carrier_size()
                ));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (ab, ba) = (a * n + b, b * n + a);
                if sum[ab] != sum[ba] {
                    return bad(format!("{} + {} is not commutative", names[a], names[b]));
                }
                if prod[ab] != prod[ba] {
                    return bad(format!("{} · {} is not commutative", names[a], names[b]));
                }
                if sum[ab].is_empty() {
                    return bad(format!("{} + {} is empty", names[a], names[b]));
                }
                if prod[ab].is_empty() {
                    return bad(format!("{} · {} is empty", names[a], names[b]));
                }
            }
            if sum[a * n + zero] != ElemSet::singleton(n, a) {
                return bad(format!("{} + 0 is not {{{}}}", names[a], names[a]));
            }
            if prod[a * n + zero] != ElemSet::singleton(n, zero) {
                return bad(format!("{} · 0 is not {{0}}", names[a]));
            }
            if neg[a] >= n || neg[neg[a]] != a {
                return bad(format!("negation is not an involution at {}", names[a]));
            }
        }
        if neg[zero] != zero {
            return bad("-0 is not 0".into());
        }
        Ok(FiniteSuperring {
            name,
            names,
            sum,
            prod,
            neg,
            zero,
            one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Rename elements; `aliases` maps current names to new ones.
    pub fn with_aliases(mut self, aliases: &[(&str, &str)]) -> Result<Self> {
        for (from, to) in aliases {
            let i = self.index_of(from)?;
            self.names[i] = (*to).to_string();
        }
        let unique: HashSet<_> = self.names.iter().collect();
        if unique.len() != self.names.len() {
            return Err(Error::InvalidStructure(format!(
                "{}: aliases produce duplicate names",
                self.name
            )));
        }
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.size()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, e: ElementId) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Result<ElementId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a]
    }

    pub fn neg_table(&self) -> &[ElementId] {
        &self.neg
    }

    pub fn sum(&self, a: ElementId, b: ElementId) -> &ElemSet {
        &self.sum[a * self.size() + b]
    }

    pub fn prod(&self, a: ElementId, b: ElementId) -> &ElemSet {
        &self.prod[a * self.size() + b]
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::empty(self.size())
    }

    pub fn singleton(&self, a: ElementId) -> ElemSet {
        ElemSet::singleton(self.size(), a)
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    pub fn set_of(&self, items: &[ElementId]) -> ElemSet {
        ElemSet::from_iter(self.size(), items.iter().copied())
    }

    /// Render a set as `{a, b, ...}` using element names.
    pub fn fmt_set(&self, s: &ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|e| self.element_name(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn set_names(&self, s: &ElemSet) -> Vec<String> {
        s.iter().map(|e| self.names[e].clone()).collect()
    }

    fn check(&self, s: &ElemSet) -> Result<()> {
        if s.carrier_size() != self.size() {
            return Err(Error::CarrierMismatch {
                left: self.size(),
                right: s.carrier_size(),
            });
        }
        Ok(())
    }

    pub(crate) fn sumset_unchecked(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in a {
            for y in b {
                out.union_with(self.sum(x, y));
            }
        }
        out
    }

    pub(crate) fn prodset_unchecked(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for x in a {
            for y in b {
                out.union_with(self.prod(x, y));
            }
        }
        out
    }

    /// `x + B`, the union of `x + b` over `b ∈ B`.
    pub(crate) fn sum_elem_set(&self, x: ElementId, b: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for y in b {
            out.union_with(self.sum(x, y));
        }
        out
    }

    pub(crate) fn prod_elem_set(&self, x: ElementId, b: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for y in b {
            out.union_with(self.prod(x, y));
        }
        out
    }

    /// Pointwise lift of the sum table: `⋃ { a + b : a ∈ A, b ∈ B }`.
    pub fn sumset(&self, a: &ElemSet, b: &ElemSet) -> Result<ElemSet> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sumset_unchecked(a, b))
    }

    pub fn prodset(&self, a: &ElemSet, b: &ElemSet) -> Result<ElemSet> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.prodset_unchecked(a, b))
    }

    pub fn negset(&self, a: &ElemSet) -> Result<ElemSet> {
        self.check(a)?;
        Ok(self.negset_unchecked(a))
    }

    pub(crate) fn negset_unchecked(&self, a: &ElemSet) -> ElemSet {
        ElemSet::from_iter(self.size(), a.iter().map(|x| self.neg[x]))
    }

    /// Left-nested sum `((s₀ + s₁) + s₂) + …`; the empty sum is `{0}`.
    pub fn nary_sum(&self, items: &[ElemSet]) -> Result<ElemSet> {
        let mut acc = self.singleton(self.zero);
        for s in items {
            self.check(s)?;
            acc = self.sumset_unchecked(&acc, s);
        }
        Ok(acc)
    }

    /// Left-nested product; the empty product is `{1}`.
    pub fn nary_prod(&self, items: &[ElemSet]) -> Result<ElemSet> {
        let mut acc = self.singleton(self.one);
        for s in items {
            self.check(s)?;
            acc = self.prodset_unchecked(&acc, s);
        }
        Ok(acc)
    }

    /// `k · S` in the additive sense: `S + S + … + S` (`k` copies, `{0}` for `k = 0`).
    pub fn repeated_sum(&self, s: &ElemSet, k: usize) -> ElemSet {
        let mut acc = self.singleton(self.zero);
        for _ in 0..k {
            acc = self.sumset_unchecked(&acc, s);
        }
        acc
    }

    /// `S^k` as an iterated product set (`{1}` for `k = 0`).
    pub fn power_set(&self, s: &ElemSet, k: usize) -> ElemSet {
        let mut acc = self.singleton(self.one);
        for _ in 0..k {
            acc = self.prodset_unchecked(&acc, s);
        }
        acc
    }

    /// Smallest `n ≥ 1` with `0 ∈ 1 + 1 + … + 1` (`n` terms), or 0 when the
    /// sequence of partial-sum sets cycles without ever containing zero.
    pub fn characteristic(&self) -> usize {
        let one = self.singleton(self.one);
        let mut seen = HashSet::new();
        let mut partial = one.clone();
        let mut n = 1;
        loop {
            if partial.contains(self.zero) {
                return n;
            }
            if !seen.insert(partial.clone()) {
                return 0;
            }
            partial = self.sumset_unchecked(&partial, &one);
            n += 1;
        }
    }

    /// `{ b : 1 ∈ a · b }`. Empty when `a` is not invertible.
    pub fn inverses(&self, a: ElementId) -> ElemSet {
        ElemSet::from_iter(
            self.size(),
            self.elements().filter(|&b| self.prod(a, b).contains(self.one)),
        )
    }

    /// Smallest-index inverse of `a`, if any.
    pub fn first_inverse(&self, a: ElementId) -> Option<ElementId> {
        self.inverses(a).first()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.zero != self.one
    }

    /// First pair of nonzero elements whose product contains zero.
    pub fn zero_divisor(&self) -> Option<(ElementId, ElementId)> {
        let z = self.zero;
        for a in self.elements().filter(|&a| a != z) {
            for b in self.elements().filter(|&b| b != z) {
                if self.prod(a, b).contains(z) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First nonzero element without an inverse.
    pub fn non_invertible(&self) -> Option<ElementId> {
        self.elements()
            .filter(|&a| a != self.zero)
            .find(|&a| self.inverses(a).is_empty())
    }

    /// Nontrivial with no zero divisors.
    pub fn is_superdomain_tables(&self) -> bool {
        self.is_nontrivial() && self.zero_divisor().is_none()
    }

    /// Nontrivial, no zero divisors and every nonzero element invertible.
    /// This looks at the tables only; the full axiom ladder is in
    /// [`crate::axioms::validate`].
    pub fn is_superfield_tables(&self) -> bool {
        self.is_superdomain_tables() && self.non_invertible().is_none()
    }

    /// True when every product entry is a singleton.
    pub fn has_single_valued_products(&self) -> bool {
        self.prod.iter().all(|s| s.len() == 1)
    }

    /// Restrict to a subset closed under the operations. The element order of
    /// the subset is the order of the parent carrier.
    pub fn substructure(&self, name: impl Into<String>, subset: &ElemSet) -> Result<(Self, Vec<ElementId>)> {
        let members: Vec<ElementId> = subset.to_vec();
        let m = members.len();
        let pos = |e: ElementId| members.iter().position(|&x| x == e);
        let mut sums = Vec::with_capacity(m * m);
        let mut prods = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                for (table, out) in [(self.sum(a, b), &mut sums), (self.prod(a, b), &mut prods)] {
                    let mut s = ElemSet::empty(m);
                    for e in table {
                        let i = pos(e).ok_or_else(|| {
                            Error::InvalidStructure("subset is not closed under the operations".into())
                        })?;
                        s.insert(i);
                    }
                    out.push(s);
                }
            }
        }
        let neg = members
            .iter()
            .map(|&a| pos(self.neg(a)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidStructure("subset is not closed under negation".into()))?;
        let zero = pos(self.zero).ok_or_else(|| Error::InvalidStructure("subset misses zero".into()))?;
        let one = pos(self.one).ok_or_else(|| Error::InvalidStructure("subset misses one".into()))?;
        let names = members.iter().map(|&e| self.names[e].clone()).collect();
        let sub = Self::from_tables(name, names, sums, prods, neg, zero, one)?;
        Ok((sub, members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{make_hp, make_krasner, make_q2, make_strict};

    #[test]
    fn q2_one_minus_one_is_everything() {
        let q2 = make_q2();
        let one = q2.index_of("1").unwrap();
        let m1 = q2.index_of("-1").unwrap();
        let s = q2.sumset(&q2.singleton(one), &q2.singleton(m1)).unwrap();
        assert_eq!(s, q2.full_set());
    }

    #[test]
    fn zero_is_additive_identity_on_sets() {
        let h5 = make_hp(5).unwrap();
        for a in h5.elements() {
            let s = h5.singleton(a);
            assert_eq!(h5.sumset(&h5.singleton(h5.zero()), &s).unwrap(), s);
        }
    }

    #[test]
    fn h3_one_plus_one() {
        let h3 = make_hp(3).unwrap();
        let s = h3.sumset(&h3.singleton(1), &h3.singleton(1)).unwrap();
        assert_eq!(s.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn carrier_mismatch_is_reported() {
        let h3 = make_hp(3).unwrap();
        let err = h3.sumset(&ElemSet::singleton(5, 1), &h3.singleton(1)).unwrap_err();
        assert_eq!(err, Error::CarrierMismatch { left: 3, right: 5 });
    }

    #[test]
    fn nary_sums() {
        let q2 = make_q2();
        let one = q2.singleton(q2.one());
        let s = q2.nary_sum(&[one.clone(), one.clone(), one.clone()]).unwrap();
        assert_eq!(s, one);
        assert_eq!(q2.nary_sum(&[]).unwrap(), q2.singleton(q2.zero()));
        assert_eq!(q2.nary_prod(&[]).unwrap(), one);
        let h3 = make_hp(3).unwrap();
        let one = h3.singleton(1);
        assert_eq!(h3.nary_sum(&[one.clone(), one]).unwrap(), h3.full_set());
    }

    #[test]
    fn characteristics() {
        assert_eq!(make_krasner().characteristic(), 2);
        assert_eq!(make_q2().characteristic(), 0);
        assert_eq!(make_hp(5).unwrap().characteristic(), 2);
        assert_eq!(make_strict(5).unwrap().characteristic(), 5);
        assert_eq!(make_strict(4).unwrap().characteristic(), 2);
        assert_eq!(make_strict(9).unwrap().characteristic(), 3);
    }

    #[test]
    fn inverses_in_h3() {
        let h3 = make_hp(3).unwrap();
        assert_eq!(h3.inverses(2).to_vec(), vec![2]);
        for s in [make_krasner(), make_q2(), h3] {
            assert!(s.inverses(s.one()).contains(s.one()));
            assert!(s.inverses(s.zero()).is_empty());
        }
    }

    #[test]
    fn construction_rejects_broken_tables() {
        let names = vec!["0".to_string(), "1".to_string()];
        // 1 + 0 = {0} violates the identity law.
        let err = FiniteSuperring::from_fn(
            "bad",
            names.clone(),
            |a, b| ElemSet::singleton(2, if a == 0 { b } else if b == 0 { 0 } else { 1 }),
            |a, b| ElemSet::singleton(2, a & b),
            vec![0, 1],
            0,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)));
        // empty sum entry
        let err = FiniteSuperring::from_fn(
            "bad",
            names,
            |a, b| {
                if a == 1 && b == 1 {
                    ElemSet::empty(2)
                } else {
                    ElemSet::singleton(2, a | b)
                }
            },
            |a, b| ElemSet::singleton(2, a & b),
            vec![0, 1],
            0,
            1,
        )
        .unwrap_err();
        assert!(err.to_string().contains("empty"));
    }
}
