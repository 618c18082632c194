use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use multikit::axioms::validate;
use multikit::conformance::random_poly;
use multikit::elemset::ElemSet;
use multikit::morphism::{
    classify_map, compose, find_isomorphism, full_identity_violation, is_isomorphism, MorphismKind, MorphismTable,
    DEFAULT_ISO_BOUND,
};
use multikit::poly::{
    envelope_sum, euclid_divide, is_division, parse_poly, poly_prod, poly_sum, CoeffEnvelope, Poly,
};
use multikit::quotient::{
    generated_ideal_slice, make_quotient, principal_membership, reduce, IdealMode, ProductMode,
};
use multikit::structures::{builtin, parse_structure, serialize_structure};
use multikit::FiniteSuperring;

const DOMAINS: [&str; 4] = ["krasner", "q2", "h3", "h5"];
const SUPERFIELDS: [&str; 13] = [
    "krasner", "q2", "h2", "h3", "h5", "h7", "x1", "f2", "f3", "f4", "f5", "f7", "l9",
];

fn poly(s: &FiniteSuperring, raw: &[usize]) -> Poly {
    Poly::new(s, raw.iter().map(|&c| c % s.size()).collect())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 0..=max_len)
}

fn same_members(a: &CoeffEnvelope, b: &CoeffEnvelope, s: &FiniteSuperring) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| a.coeff_set(s, i) == b.coeff_set(s, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn elemset_matches_btreeset(a in prop::collection::vec(0usize..70, 0..20), b in prop::collection::vec(0usize..70, 0..20)) {
        let (sa, sb) = (ElemSet::from_iter(70, a.iter().copied()), ElemSet::from_iter(70, b.iter().copied()));
        let (ta, tb): (BTreeSet<usize>, BTreeSet<usize>) = (a.iter().copied().collect(), b.iter().copied().collect());
        prop_assert_eq!(sa.union(&sb).to_vec(), ta.union(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.intersection(&sb).to_vec(), ta.intersection(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.difference(&sb).to_vec(), ta.difference(&tb).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.is_subset(&sb), ta.is_subset(&tb));
        prop_assert_eq!(sa.len(), ta.len());
    }

    #[test]
    fn product_degrees_add(name in prop::sample::select(DOMAINS.to_vec()), f in coeffs(5), g in coeffs(5)) {
        let s = builtin(name).unwrap();
        let (f, g) = (poly(&s, &f), poly(&s, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let want = f.degree().unwrap() + g.degree().unwrap();
        let env = poly_prod(&s, &f, &g);
        prop_assert_eq!(env.min_degree(), Some(want));
        prop_assert_eq!(env.max_degree(), Some(want));
    }

    #[test]
    fn linear_factor_products_have_full_degree(name in prop::sample::select(DOMAINS.to_vec()), roots in prop::collection::vec(0usize..64, 1..5)) {
        let s = builtin(name).unwrap();
        let mut env = CoeffEnvelope::singleton(&s, &Poly::constant(&s, s.one()));
        for &a in &roots {
            let lin = Poly::linear_factor(&s, a % s.size());
            env = multikit::poly::envelope_prod_poly(&s, &env, &lin);
        }
        prop_assert_eq!(env.min_degree(), Some(roots.len()));
        prop_assert_eq!(env.max_degree(), Some(roots.len()));
    }

    #[test]
    fn sum_upper_bound(name in prop::sample::select(DOMAINS.to_vec()), f in coeffs(5), g in coeffs(5)) {
        let s = builtin(name).unwrap();
        let (f, g) = (poly(&s, &f), poly(&s, &g));
        prop_assume!(!f.is_zero() && !g.is_zero() && f != g.neg(&s));
        let env = poly_sum(&s, &f, &g);
        prop_assert!(!env.contains_zero());
        prop_assert!(env.max_degree().unwrap() <= f.degree().unwrap().max(g.degree().unwrap()));
        if f.degree() != g.degree() {
            prop_assert_eq!(env.min_degree(), f.degree().max(g.degree()));
        }
    }

    #[test]
    fn monomial_multipliers_split(
        name in prop::sample::select(vec!["krasner", "h3", "q2", "x2"]),
        b in coeffs(6),
        f in coeffs(4),
        cut in 0usize..6,
    ) {
        let s = builtin(name).unwrap();
        let (b, f) = (poly(&s, &b), poly(&s, &f));
        let cut = cut.min(b.coeffs().len());
        let low = Poly::new(&s, b.coeffs()[..cut].to_vec());
        let mut high = vec![s.zero(); cut];
        high.extend_from_slice(&b.coeffs()[cut..]);
        let high = Poly::new(&s, high);
        let whole = poly_prod(&s, &b, &f);
        let split = envelope_sum(&s, &poly_prod(&s, &low, &f), &poly_prod(&s, &high, &f));
        prop_assert!(same_members(&whole, &split, &s));
    }

    #[test]
    fn render_parse_round_trip(name in prop::sample::select(SUPERFIELDS.to_vec()), f in coeffs(6)) {
        let s = builtin(name).unwrap();
        let f = poly(&s, &f);
        prop_assert_eq!(&parse_poly(&s, &f.render(&s)).unwrap(), &f);
        prop_assert_eq!(&parse_poly(&s, &f.render_ascending(&s)).unwrap(), &f);
    }

    #[test]
    fn euclid_witness_verifies(name in prop::sample::select(SUPERFIELDS.to_vec()), f in coeffs(5), g in coeffs(5)) {
        let s = builtin(name).unwrap();
        let (f, g) = (poly(&s, &f), poly(&s, &g));
        prop_assume!(!g.is_zero());
        let d = euclid_divide(&s, &f, &g).unwrap();
        prop_assert!(is_division(&s, &f, &g, &d.q, &d.r));
    }

    #[test]
    fn representatives_reduce_to_themselves(f in coeffs(2)) {
        let h3 = builtin("h3").unwrap();
        let p = parse_poly(&h3, "X^2+2").unwrap();
        let f = poly(&h3, &f);
        prop_assert!(reduce(&h3, &f, &p).unwrap().contains(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bounded_principal_ideals(name in prop::sample::select(vec!["krasner", "q2", "h3"]), gens in prop::collection::vec(coeffs(4), 1..3)) {
        let s = builtin(name).unwrap();
        prop_assume!(validate(&s).full.is_pass());
        let gens: Vec<Poly> = gens.iter().map(|g| poly(&s, g)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let slice = generated_ideal_slice(&s, &gens, 4).unwrap();
        let p = slice.iter().find(|h| !h.is_zero()).unwrap().clone();
        for h in &slice {
            prop_assert!(
                principal_membership(&s, h, &p, IdealMode::MultipleSet).unwrap(),
                "{} not in F[X]·{}", h.render(&s), p.render(&s)
            );
        }
    }
}

#[test]
fn euclid_thousand_per_superfield() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in SUPERFIELDS {
        let s = builtin(name).unwrap();
        let mut n = 0;
        while n < 1000 {
            let f = random_poly(&s, &mut rng, 4);
            let g = random_poly(&s, &mut rng, 4);
            if g.is_zero() {
                continue;
            }
            n += 1;
            let d = euclid_divide(&s, &f, &g).unwrap();
            assert!(is_division(&s, &f, &g, &d.q, &d.r), "{name}: {} / {}", f.render(&s), g.render(&s));
        }
    }
}

#[test]
fn builtins_round_trip_through_msr() {
    for name in ["krasner", "q2", "h3", "h5", "h7", "x1", "x2", "f4", "f9", "l9"] {
        let s = builtin(name).unwrap();
        assert_eq!(parse_structure(&serialize_structure(&s)).unwrap(), s, "{name}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn isomorphism_search_matches_brute_force() {
    let names = ["krasner", "h2", "f2", "q2", "x1", "h3", "f3", "f4", "h5", "f5", "x2"];
    let all: Vec<FiniteSuperring> = names.iter().map(|n| builtin(n).unwrap()).collect();
    for a in &all {
        for b in all.iter().filter(|b| b.size() == a.size()) {
            let brute = permutations(a.size())
                .into_iter()
                .any(|p| is_isomorphism(a, b, &MorphismTable::new(a, b, p).unwrap()));
            let found = find_isomorphism(a, b, DEFAULT_ISO_BOUND).unwrap();
            assert_eq!(found.is_some(), brute, "{} vs {}", a.name(), b.name());
            if let Some(m) = found {
                assert!(is_isomorphism(a, b, &m));
                let back = multikit::morphism::invert(&m).unwrap();
                assert!(is_isomorphism(b, a, &back));
            }
        }
    }
}

#[test]
fn full_morphisms_satisfy_identities() {
    for name in ["krasner", "q2", "h3", "x2", "f4"] {
        let s = builtin(name).unwrap();
        assert_eq!(full_identity_violation(&s, &s, &MorphismTable::identity(&s), 4), None, "{name}");
    }
    let h3 = builtin("h3").unwrap();
    let q = make_quotient(&h3, &parse_poly(&h3, "X^2+2").unwrap(), ProductMode::Strict).unwrap();
    assert_eq!(full_identity_violation(&h3, &q.ring, &q.embedding, 4), None);
}

/// `F ↪ F(p) ↪ F(p)(q)` with every linear `q`: composites of full embeddings
/// are full, and a full composite with a full outer step forces a full inner
/// step.
#[test]
fn tower_embeddings_compose() {
    let cases = [("krasner", "X+1"), ("krasner", "X"), ("h3", "X^2+2")];
    for (name, p) in cases {
        let f = builtin(name).unwrap();
        let q1 = make_quotient(&f, &parse_poly(&f, p).unwrap(), ProductMode::Strict).unwrap();
        let mid = &q1.ring;
        for a in mid.elements() {
            let q2 = make_quotient(mid, &Poly::linear_factor(mid, a), ProductMode::Strict).unwrap();
            let i12 = classify_map(&f, mid, &q1.embedding).kind;
            let i23 = classify_map(mid, &q2.ring, &q2.embedding).kind;
            let i13 = classify_map(&f, &q2.ring, &compose(&q1.embedding, &q2.embedding).unwrap()).kind;
            if i12 == MorphismKind::Full && i23 == MorphismKind::Full {
                assert_eq!(i13, MorphismKind::Full, "{name}({p}) then X-{}", mid.element_name(a));
            }
            if i13 == MorphismKind::Full && i23 == MorphismKind::Full {
                assert_eq!(i12, MorphismKind::Full, "{name}({p}) then X-{}", mid.element_name(a));
            }
        }
    }
}
