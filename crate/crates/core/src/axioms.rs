//! The axiom ladder: multigroup, multimonoid, superring, multiring,
//! hyperring, superdomain, superfield.
//!
//! Every check is exhaustive over the carrier and reports the first failing
//! tuple in element-index order.

use serde_json::{json, Value};

use crate::elemset::ElementId;
use crate::ring::FiniteSuperring;

/// A failing tuple plus a rendered explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<ElementId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    NotApplicable,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }

    fn fail(elements: Vec<ElementId>, detail: String) -> Self {
        Verdict::Fail(Witness { elements, detail })
    }

    /// Pass when every part passes, otherwise the first failing part.
    fn all(parts: &[&Verdict], label: &str) -> Self {
        for p in parts {
            if let Verdict::Fail(w) = p {
                return Verdict::fail(w.elements.clone(), format!("{label}: {}", w.detail));
            }
        }
        Verdict::Pass
    }

    pub fn to_json(&self, s: &FiniteSuperring) -> Value {
        match self {
            Verdict::Pass => json!({ "status": "pass" }),
            Verdict::NotApplicable => json!({ "status": "not-applicable" }),
            Verdict::Fail(w) => json!({
                "status": "fail",
                "witness": w.elements.iter().map(|&e| s.element_name(e)).collect::<Vec<_>>(),
                "detail": w.detail,
            }),
        }
    }
}

/// Classification of a finite structure. Composite verdicts are derived from
/// the individual axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub add_m1: Verdict,
    pub add_m2: Verdict,
    pub add_m3: Verdict,
    pub add_m4: Verdict,
    pub multigroup: Verdict,
    pub mul_m3: Verdict,
    pub mul_m4: Verdict,
    pub mul_unit: Verdict,
    pub multimonoid: Verdict,
    pub absorbing: Verdict,
    pub weak_distributive: Verdict,
    pub sign_rule: Verdict,
    pub superring: Verdict,
    pub singleton_products: Verdict,
    pub multiring: Verdict,
    pub full: Verdict,
    pub hyperring: Verdict,
    pub nontrivial: Verdict,
    pub no_zero_divisors: Verdict,
    pub all_invertible: Verdict,
    pub superdomain: Verdict,
    pub quasi_superfield: Verdict,
    pub superfield: Verdict,
    /// `d ∈ ab ⇒ b⁻¹ ∈ a·d⁻¹` on nonzero elements. Only evaluated when
    /// inverses are unique, and never part of any composite verdict.
    pub mul_multigroup: Verdict,
}

impl ClassReport {
    /// Verdicts in a fixed display order.
    pub fn entries(&self) -> Vec<(&'static str, &Verdict)> {
        vec![
            ("add_m1", &self.add_m1),
            ("add_m2", &self.add_m2),
            ("add_m3", &self.add_m3),
            ("add_m4", &self.add_m4),
            ("multigroup", &self.multigroup),
            ("mul_m3", &self.mul_m3),
            ("mul_m4", &self.mul_m4),
            ("mul_unit", &self.mul_unit),
            ("multimonoid", &self.multimonoid),
            ("absorbing", &self.absorbing),
            ("weak_distributive", &self.weak_distributive),
            ("sign_rule", &self.sign_rule),
            ("superring", &self.superring),
            ("singleton_products", &self.singleton_products),
            ("multiring", &self.multiring),
            ("full", &self.full),
            ("hyperring", &self.hyperring),
            ("nontrivial", &self.nontrivial),
            ("no_zero_divisors", &self.no_zero_divisors),
            ("all_invertible", &self.all_invertible),
            ("superdomain", &self.superdomain),
            ("quasi_superfield", &self.quasi_superfield),
            ("superfield", &self.superfield),
            ("mul_multigroup", &self.mul_multigroup),
        ]
    }

    /// Implications that must hold between the composite verdicts. Returns
    /// the first violated one.
    pub fn implication_violation(&self) -> Option<&'static str> {
        let checks = [
            ("superfield => superdomain", &self.superfield, &self.superdomain),
            ("superfield => quasi_superfield", &self.superfield, &self.quasi_superfield),
            ("superdomain => superring", &self.superdomain, &self.superring),
            ("quasi_superfield => superring", &self.quasi_superfield, &self.superring),
            ("hyperring => multiring", &self.hyperring, &self.multiring),
            ("hyperring => full", &self.hyperring, &self.full),
            ("multiring => superring", &self.multiring, &self.superring),
            ("superring => multigroup", &self.superring, &self.multigroup),
            ("superring => multimonoid", &self.superring, &self.multimonoid),
        ];
        checks
            .into_iter()
            .find(|(_, a, b)| a.is_pass() && !b.is_pass())
            .map(|(name, _, _)| name)
    }

    pub fn to_json(&self, s: &FiniteSuperring) -> Value {
        let verdicts: serde_json::Map<String, Value> = self
            .entries()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_json(s)))
            .collect();
        json!({
            "structure": s.name(),
            "size": s.size(),
            "verdicts": verdicts,
        })
    }
}

fn first_fail<I, F>(tuples: I, mut check: F) -> Verdict
where
    I: IntoIterator<Item = Vec<ElementId>>,
    F: FnMut(&[ElementId]) -> Option<String>,
{
    for t in tuples {
        if let Some(detail) = check(&t) {
            return Verdict::fail(t, detail);
        }
    }
    Verdict::Pass
}

fn pairs(n: usize) -> impl Iterator<Item = Vec<ElementId>> {
    (0..n).flat_map(move |a| (0..n).map(move |b| vec![a, b]))
}

fn triples(n: usize) -> impl Iterator<Item = Vec<ElementId>> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| vec![a, b, c])))
}

/// Run every check on `s`.
pub fn validate(s: &FiniteSuperring) -> ClassReport {
    let n = s.size();
    let nm = |e: ElementId| s.element_name(e).to_string();
    let set = |x: &crate::elemset::ElemSet| s.fmt_set(x);

    let add_m1 = first_fail(pairs(n), |t| {
        let (a, b) = (t[0], t[1]);
        for c in s.sum(a, b) {
            if !s.sum(c, s.neg(b)).contains(a) {
                return Some(format!("{} ∈ {} + {} but {} ∉ {} + {}", nm(c), nm(a), nm(b), nm(a), nm(c), nm(s.neg(b))));
            }
            if !s.sum(s.neg(a), c).contains(b) {
                return Some(format!("{} ∈ {} + {} but {} ∉ {} + {}", nm(c), nm(a), nm(b), nm(b), nm(s.neg(a)), nm(c)));
            }
        }
        None
    });
    let add_m2 = first_fail(pairs(n), |t| {
        let (a, b) = (t[0], t[1]);
        (s.sum(a, s.zero()).contains(b) != (a == b))
            .then(|| format!("{} + 0 = {}", nm(a), set(s.sum(a, s.zero()))))
    });
    let reassoc = |op: fn(&FiniteSuperring, ElementId, ElementId) -> &crate::elemset::ElemSet, sym: &str| {
        first_fail(triples(n), |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let mut left = s.empty_set();
            for x in op(s, a, b) {
                left.union_with(op(s, x, c));
            }
            let mut right = s.empty_set();
            for y in op(s, b, c) {
                right.union_with(op(s, a, y));
            }
            (!left.is_subset(&right)).then(|| {
                format!(
                    "({} {sym} {}) {sym} {} = {} is not contained in {} {sym} ({} {sym} {}) = {}",
                    nm(a),
                    nm(b),
                    nm(c),
                    set(&left),
                    nm(a),
                    nm(b),
                    nm(c),
                    set(&right)
                )
            })
        })
    };
    let add_m3 = reassoc(FiniteSuperring::sum, "+");
    let add_m4 = first_fail(pairs(n), |t| {
        (s.sum(t[0], t[1]) != s.sum(t[1], t[0])).then(|| "sum is not commutative".to_string())
    });
    let multigroup = Verdict::all(&[&add_m1, &add_m2, &add_m3, &add_m4], "multigroup");

    let mul_m3 = reassoc(FiniteSuperring::prod, "·");
    let mul_m4 = first_fail(pairs(n), |t| {
        (s.prod(t[0], t[1]) != s.prod(t[1], t[0])).then(|| "product is not commutative".to_string())
    });
    let mul_unit = first_fail((0..n).map(|a| vec![a]), |t| {
        (!s.prod(s.one(), t[0]).contains(t[0])).then(|| format!("1 · {} = {}", nm(t[0]), set(s.prod(s.one(), t[0]))))
    });
    let multimonoid = Verdict::all(&[&mul_m3, &mul_m4, &mul_unit], "multimonoid");

    let absorbing = first_fail((0..n).map(|a| vec![a]), |t| {
        (s.prod(t[0], s.zero()) != &s.singleton(s.zero()))
            .then(|| format!("{} · 0 = {}", nm(t[0]), set(s.prod(t[0], s.zero()))))
    });
    let distrib = |strict: bool| {
        first_fail(triples(n), |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let left = s.prod_elem_set(c, s.sum(a, b));
            let right = s.sumset_unchecked(s.prod(c, a), s.prod(c, b));
            let ok = if strict { left == right } else { left.is_subset(&right) };
            (!ok).then(|| {
                format!(
                    "{}·({} + {}) = {} but {}·{} + {}·{} = {}",
                    nm(c),
                    nm(a),
                    nm(b),
                    set(&left),
                    nm(c),
                    nm(a),
                    nm(c),
                    nm(b),
                    set(&right)
                )
            })
        })
    };
    let weak_distributive = distrib(false);
    let sign_rule = first_fail(pairs(n), |t| {
        let (a, b) = (t[0], t[1]);
        let neg_ab = s.negset_unchecked(s.prod(a, b));
        let na_b = s.prod(s.neg(a), b);
        let a_nb = s.prod(a, s.neg(b));
        (neg_ab != *na_b || neg_ab != *a_nb).then(|| {
            format!(
                "-({}·{}) = {}, (-{})·{} = {}, {}·(-{}) = {}",
                nm(a),
                nm(b),
                set(&neg_ab),
                nm(a),
                nm(b),
                set(na_b),
                nm(a),
                nm(b),
                set(a_nb)
            )
        })
    });
    let superring = Verdict::all(
        &[&multigroup, &multimonoid, &absorbing, &weak_distributive, &sign_rule],
        "superring",
    );
    let singleton_products = first_fail(pairs(n), |t| {
        let p = s.prod(t[0], t[1]);
        (p.len() != 1).then(|| format!("{} · {} = {}", nm(t[0]), nm(t[1]), set(p)))
    });
    let multiring = Verdict::all(&[&superring, &singleton_products], "multiring");
    let full = distrib(true);
    let hyperring = Verdict::all(&[&multiring, &full], "hyperring");

    let nontrivial = if s.is_nontrivial() {
        Verdict::Pass
    } else {
        Verdict::fail(vec![s.zero()], "0 = 1".into())
    };
    let no_zero_divisors = match s.zero_divisor() {
        None => Verdict::Pass,
        Some((a, b)) => Verdict::fail(vec![a, b], format!("0 ∈ {} · {}", nm(a), nm(b))),
    };
    let all_invertible = match s.non_invertible() {
        None => Verdict::Pass,
        Some(a) => Verdict::fail(vec![a], format!("{} has no inverse", nm(a))),
    };
    let superdomain = Verdict::all(&[&superring, &nontrivial, &no_zero_divisors], "superdomain");
    let quasi_superfield = Verdict::all(&[&superring, &nontrivial, &all_invertible], "quasi-superfield");
    let superfield = Verdict::all(&[&quasi_superfield, &superdomain], "superfield");

    let unique_inverses: Option<Vec<ElementId>> = s
        .elements()
        .filter(|&a| a != s.zero())
        .map(|a| s.inverses(a).as_singleton())
        .collect();
    let mul_multigroup = match unique_inverses {
        Some(_) if s.is_nontrivial() => {
            let inv = |a: ElementId| s.inverses(a).as_singleton().unwrap();
            let z = s.zero();
            first_fail(pairs(n).filter(|t| t[0] != z && t[1] != z), |t| {
                let (a, b) = (t[0], t[1]);
                for d in s.prod(a, b).iter().filter(|&d| d != z) {
                    if !s.prod(a, inv(d)).contains(inv(b)) {
                        return Some(format!(
                            "{} ∈ {}·{} but {}⁻¹ ∉ {}·{}⁻¹",
                            nm(d),
                            nm(a),
                            nm(b),
                            nm(b),
                            nm(a),
                            nm(d)
                        ));
                    }
                }
                None
            })
        }
        _ => Verdict::NotApplicable,
    };

    let report = ClassReport {
        add_m1,
        add_m2,
        add_m3,
        add_m4,
        multigroup,
        mul_m3,
        mul_m4,
        mul_unit,
        multimonoid,
        absorbing,
        weak_distributive,
        sign_rule,
        superring,
        singleton_products,
        multiring,
        full,
        hyperring,
        nontrivial,
        no_zero_divisors,
        all_invertible,
        superdomain,
        quasi_superfield,
        superfield,
        mul_multigroup,
    };
    debug_assert_eq!(report.implication_violation(), None);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elemset::ElemSet;
    use crate::structures::{make_hp, make_kaleidoscope, make_krasner, make_q2, make_strict};

    #[test]
    fn krasner_is_a_full_superfield() {
        let r = validate(&make_krasner());
        assert!(r.superfield.is_pass());
        assert!(r.hyperring.is_pass());
        assert!(r.full.is_pass());
        assert_eq!(r.implication_violation(), None);
    }

    #[test]
    fn hp_and_q2_are_hyperfields() {
        for s in [make_q2(), make_hp(3).unwrap(), make_hp(5).unwrap(), make_hp(7).unwrap()] {
            let r = validate(&s);
            assert!(r.superfield.is_pass(), "{}", s.name());
            assert!(r.hyperring.is_pass(), "{}", s.name());
        }
    }

    #[test]
    fn x2_is_a_multiring_but_not_a_hyperring() {
        let x2 = make_kaleidoscope(2);
        let r = validate(&x2);
        assert!(r.multiring.is_pass());
        assert!(r.all_invertible.is_fail());
        let w = r.full.witness().unwrap();
        let names: Vec<_> = w.elements.iter().map(|&e| x2.element_name(e)).collect();
        assert_eq!(names, ["1", "-1", "2"]);
        assert!(w.detail.contains("{0, 2, -2}"), "{}", w.detail);
        assert!(r.hyperring.is_fail());
    }

    #[test]
    fn strict_fields_pass_everything_applicable() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let r = validate(&make_strict(q).unwrap());
            for (name, v) in r.entries() {
                assert!(v.is_pass(), "F{q}: {name} = {v:?}");
            }
        }
    }

    #[test]
    fn trivial_structure_is_not_a_domain() {
        let r = validate(&make_kaleidoscope(0));
        assert!(r.superring.is_pass());
        assert!(r.nontrivial.is_fail());
        assert!(r.superdomain.is_fail());
        assert_eq!(r.mul_multigroup, Verdict::NotApplicable);
    }

    #[test]
    fn broken_sign_rule_is_witnessed() {
        // Z/3 addition with 2 · 2 = 2: the sign rule fails at -(2·2).
        let s = FiniteSuperring::from_fn(
            "bad",
            vec!["0".into(), "1".into(), "2".into()],
            |a, b| ElemSet::singleton(3, (a + b) % 3),
            |a, b| match (a, b) {
                (0, _) | (_, 0) => ElemSet::singleton(3, 0),
                (1, x) | (x, 1) => ElemSet::singleton(3, x),
                _ => ElemSet::singleton(3, 2),
            },
            vec![0, 2, 1],
            0,
            1,
        )
        .unwrap();
        let r = validate(&s);
        assert!(r.multigroup.is_pass());
        assert!(r.superring.is_fail());
        assert!(r.sign_rule.is_fail() || r.weak_distributive.is_fail());
        assert_eq!(r.implication_violation(), None);
    }
}
