//! Ideals of finite superrings, their prime/maximal flags, and quotients.

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::ring::FiniteSuperring;

pub const DEFAULT_MAX_CARRIER: usize = 12;

/// A subset closed under `I + I ⊆ I` and `A·I ⊆ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSet {
    pub members: ElemSet,
    /// Proper, and `ab ⊆ I` forces `a ∈ I` or `b ∈ I`.
    pub prime: bool,
    /// Proper, and `ab ∩ I ≠ ∅` forces `a ∈ I` or `b ∈ I`.
    pub strongly_prime: bool,
    /// Proper, with no ideal strictly between it and the whole carrier.
    pub maximal: bool,
}

/// Check the two closure conditions. Returns a description of the first
/// violation.
pub fn ideal_violation(s: &FiniteSuperring, set: &ElemSet) -> Option<String> {
    if set.is_empty() {
        return Some("empty set".into());
    }
    for x in set {
        for y in set {
            if !s.sum(x, y).is_subset(set) {
                return Some(format!(
                    "{} + {} = {} leaves the set",
                    s.element_name(x),
                    s.element_name(y),
                    s.fmt_set(s.sum(x, y))
                ));
            }
        }
        for a in s.elements() {
            if !s.prod(a, x).is_subset(set) {
                return Some(format!(
                    "{} · {} = {} leaves the set",
                    s.element_name(a),
                    s.element_name(x),
                    s.fmt_set(s.prod(a, x))
                ));
            }
        }
    }
    None
}

fn primality(s: &FiniteSuperring, set: &ElemSet) -> (bool, bool) {
    if set.contains(s.one()) {
        return (false, false);
    }
    let mut prime = true;
    let mut strong = true;
    for a in s.elements().filter(|&a| !set.contains(a)) {
        for b in s.elements().filter(|&b| !set.contains(b)) {
            let ab = s.prod(a, b);
            if ab.is_subset(set) {
                prime = false;
            }
            if ab.intersects(set) {
                strong = false;
            }
        }
    }
    (prime, strong)
}

/// Every ideal of `s`, ordered by the canonical set order, each flagged by
/// direct evaluation of the definitions.
pub fn enumerate_ideals(s: &FiniteSuperring, max_carrier: usize) -> Result<Vec<IdealSet>> {
    let n = s.size();
    if n > max_carrier || n >= 63 {
        return Err(Error::CarrierTooLarge {
            size: n,
            max: max_carrier.min(62),
        });
    }
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let set = ElemSet::from_iter(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if !set.contains(s.zero()) || ideal_violation(s, &set).is_some() {
            continue;
        }
        found.push(set);
    }
    found.sort();
    let full = s.full_set();
    let ideals = found
        .iter()
        .map(|set| {
            let (prime, strongly_prime) = primality(s, set);
            assert!(!strongly_prime || prime, "strongly prime ideal that is not prime");
            let proper = *set != full;
            let maximal = proper
                && found
                    .iter()
                    .all(|other| other == set || other == &full || !set.is_subset(other));
            IdealSet {
                members: set.clone(),
                prime,
                strongly_prime,
                maximal,
            }
        })
        .collect();
    Ok(ideals)
}

/// `A/I` under `x ~ y ⟺ (x + (-y)) ∩ I ≠ ∅`.
///
/// Class `[x]` is named after its smallest member. Class tables take the
/// union over all representatives, so `[x] + [y] = { [z] : z ∈ x' + y', x' ~ x, y' ~ y }`.
/// Also returns the projection `A → A/I`.
pub fn quotient_by_ideal(s: &FiniteSuperring, ideal: &ElemSet) -> Result<(FiniteSuperring, Vec<ElementId>)> {
    if let Some(v) = ideal_violation(s, ideal) {
        return Err(Error::InvalidIdeal(v));
    }
    let n = s.size();
    let related = |x: ElementId, y: ElementId| s.sum(x, s.neg(y)).intersects(ideal);
    for x in 0..n {
        for y in 0..n {
            if related(x, y) != related(y, x) {
                return Err(Error::InvalidIdeal(format!(
                    "relation is not symmetric at {} and {}",
                    s.element_name(x),
                    s.element_name(y)
                )));
            }
        }
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| related(x, y)) {
            if let Some(z) = (0..n).find(|&z| related(y, z) && !related(x, z)) {
                return Err(Error::NotTransitive {
                    x: s.element_name(x).into(),
                    y: s.element_name(y).into(),
                    z: s.element_name(z).into(),
                });
            }
        }
    }
    // class representatives in element order
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class_of[x] == usize::MAX {
            let c = reps.len();
            reps.push(x);
            for y in (x..n).filter(|&y| related(x, y)) {
                class_of[y] = c;
            }
        }
    }
    let m = reps.len();
    let lift = |table: fn(&FiniteSuperring, ElementId, ElementId) -> &ElemSet| {
        let mut out = vec![ElemSet::empty(m); m * m];
        for x in 0..n {
            for y in 0..n {
                let cell = &mut out[class_of[x] * m + class_of[y]];
                for z in table(s, x, y) {
                    cell.insert(class_of[z]);
                }
            }
        }
        out
    };
    let sums = lift(FiniteSuperring::sum);
    let prods = lift(FiniteSuperring::prod);
    let neg = reps.iter().map(|&r| class_of[s.neg(r)]).collect();
    let names = reps.iter().map(|&r| format!("[{}]", s.element_name(r))).collect();
    let q = FiniteSuperring::from_tables(
        format!("{}/I", s.name()),
        names,
        sums,
        prods,
        neg,
        class_of[s.zero()],
        class_of[s.one()],
    )?;
    Ok((q, class_of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::validate;
    use crate::structures::{make_hp, make_krasner, make_q2, make_strict};

    #[test]
    fn krasner_has_two_ideals() {
        let k = make_krasner();
        let ideals = enumerate_ideals(&k, DEFAULT_MAX_CARRIER).unwrap();
        let sets: Vec<_> = ideals.iter().map(|i| i.members.to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![0, 1]]);
        assert!(ideals[0].prime && ideals[0].strongly_prime && ideals[0].maximal);
        assert!(!ideals[1].prime && !ideals[1].maximal);
    }

    #[test]
    fn fields_and_hyperfields_have_trivial_ideals_only() {
        for s in [make_strict(4).unwrap(), make_hp(5).unwrap(), make_q2()] {
            let ideals = enumerate_ideals(&s, DEFAULT_MAX_CARRIER).unwrap();
            assert_eq!(ideals.len(), 2, "{}", s.name());
        }
    }

    #[test]
    fn carrier_bound_is_enforced() {
        let f = make_strict(9).unwrap();
        assert_eq!(
            enumerate_ideals(&f, 8).unwrap_err(),
            Error::CarrierTooLarge { size: 9, max: 8 }
        );
    }

    #[test]
    fn trivial_and_unit_quotients() {
        let f4 = make_strict(4).unwrap();
        let (q, proj) = quotient_by_ideal(&f4, &f4.singleton(0)).unwrap();
        assert_eq!(q.size(), 4);
        assert_eq!(proj, vec![0, 1, 2, 3]);
        assert!(validate(&q).superfield.is_pass());

        let k = make_krasner();
        let (q, _) = quotient_by_ideal(&k, &k.full_set()).unwrap();
        assert_eq!(q.size(), 1);
        assert!(validate(&q).superring.is_pass());
    }

    #[test]
    fn non_ideal_is_rejected() {
        let f5 = make_strict(5).unwrap();
        assert!(matches!(
            quotient_by_ideal(&f5, &f5.set_of(&[0, 1])),
            Err(Error::InvalidIdeal(_))
        ));
    }
}
