//! Recomputes the concrete claims made about the builtin structures and
//! records, per product mode where that matters, whether each one holds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::elemset::ElemSet;
use crate::error::Result;
use crate::extension::{generated_set, is_alg_closed_up_to, is_algebraic, Embedded};
use crate::morphism::{classify_map, find_isomorphism, MorphismTable, DEFAULT_ISO_BOUND};
use crate::poly::{effective_roots, euclid_divide, is_division, parse_poly, polys_of_degree, roots, Poly};
use crate::quotient::{class_names, is_irreducible, make_quotient, ClassArithmetic, ProductMode};
use crate::ring::FiniteSuperring;
use crate::structures::{load_l9_file, make_hp, make_krasner, make_l9, make_q2, product_h};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClaimVerdict {
    Confirmed,
    Contradicted,
    ModeDependent,
}

impl ClaimVerdict {
    pub fn label(self) -> &'static str {
        match self {
            ClaimVerdict::Confirmed => "confirmed",
            ClaimVerdict::Contradicted => "contradicted",
            ClaimVerdict::ModeDependent => "mode-dependent",
        }
    }

    /// Confirmed when every mode agrees with the claim, contradicted when none
    /// does, mode-dependent otherwise.
    fn from_modes(holds: &[bool]) -> Self {
        if holds.iter().all(|&h| h) {
            ClaimVerdict::Confirmed
        } else if holds.iter().any(|&h| h) {
            ClaimVerdict::ModeDependent
        } else {
            ClaimVerdict::Contradicted
        }
    }

    fn from_bool(holds: bool) -> Self {
        Self::from_modes(&[holds])
    }
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub id: &'static str,
    /// Where the claim comes from, described in words.
    pub source: &'static str,
    pub statement: &'static str,
    /// Computed values keyed by product mode, or by `tables` when the claim
    /// does not involve quotient products.
    pub values: Map<String, Value>,
    pub verdict: ClaimVerdict,
}

impl Claim {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "source": self.source,
            "statement": self.statement,
            "values": Value::Object(self.values.clone()),
            "verdict": self.verdict.label(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConformanceReport {
    pub seed: u64,
    pub claims: Vec<Claim>,
}

impl ConformanceReport {
    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn count(&self, v: ClaimVerdict) -> usize {
        self.claims.iter().filter(|c| c.verdict == v).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "claims": self.claims.iter().map(Claim::to_json).collect::<Vec<_>>(),
            "summary": {
                "confirmed": self.count(ClaimVerdict::Confirmed),
                "contradicted": self.count(ClaimVerdict::Contradicted),
                "mode-dependent": self.count(ClaimVerdict::ModeDependent),
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!("{:<16} {}\n", c.verdict.label(), c.id));
            out.push_str(&format!("    {}\n", c.statement));
            for (mode, v) in &c.values {
                out.push_str(&format!("    [{mode}] {v}\n"));
            }
        }
        out.push_str(&format!(
            "{} confirmed, {} contradicted, {} mode-dependent\n",
            self.count(ClaimVerdict::Confirmed),
            self.count(ClaimVerdict::Contradicted),
            self.count(ClaimVerdict::ModeDependent)
        ));
        out
    }
}

fn tables(v: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tables".into(), v);
    m
}

fn claim(id: &'static str, source: &'static str, statement: &'static str, values: Map<String, Value>, verdict: ClaimVerdict) -> Claim {
    Claim {
        id,
        source,
        statement,
        values,
        verdict,
    }
}

struct QuadraticContext {
    h3: FiniteSuperring,
    modulus: Poly,
    modes: Vec<ClassArithmetic>,
}

impl QuadraticContext {
    fn new() -> Result<Self> {
        let h3 = make_hp(3)?;
        let modulus = parse_poly(&h3, "X^2+2")?;
        let modes = vec![
            ClassArithmetic::new(&h3, &modulus, ProductMode::Strict)?,
            ClassArithmetic::new(&h3, &modulus, ProductMode::saturated_for(&modulus))?,
        ];
        Ok(QuadraticContext { h3, modulus, modes })
    }

    fn class(&self, arith: &ClassArithmetic, s: &str) -> Result<usize> {
        arith.class_of(&parse_poly(&self.h3, s)?)
    }
}

fn kdot_square(ctx: &QuadraticContext) -> Result<Claim> {
    let mut values = Map::new();
    let mut holds = Vec::new();
    for arith in &ctx.modes {
        let c = ctx.class(arith, "X+1")?;
        let sq = arith.prod(c, c);
        let mut nonzero = ElemSet::full(arith.size());
        nonzero.remove(arith.zero());
        holds.push(sq == nonzero);
        values.insert(
            arith.mode().label(),
            json!({ "classes": class_names(arith, &sq), "count": sq.len(), "nonzero_classes": nonzero.len() }),
        );
    }
    Ok(claim(
        "kdot-square",
        "quadratic extension of H3: products of classes",
        "[1+X]·[1+X] is the set of all nonzero classes of H3(X^2+2)",
        values,
        ClaimVerdict::from_modes(&holds),
    ))
}

fn one_plus_x_root(ctx: &QuadraticContext) -> Result<Claim> {
    let mut values = Map::new();
    let mut holds = Vec::new();
    for arith in &ctx.modes {
        let c = ctx.class(arith, "X+1")?;
        let sq = arith.prod(c, c);
        let ev = arith.sumset(&sq, &arith.singleton(arith.one()));
        let root = ev.contains(arith.zero());
        holds.push(root);
        values.insert(arith.mode().label(), json!({ "evaluation": class_names(arith, &ev), "root": root }));
    }
    Ok(claim(
        "one-plus-x-root",
        "quadratic extension of H3: algebraic elements",
        "[1+X] is a root of X^2+1 in H3(X^2+2)",
        values,
        ClaimVerdict::from_modes(&holds),
    ))
}

fn class_power(arith: &ClassArithmetic, s: &ElemSet, n: usize) -> ElemSet {
    (0..n).fold(arith.singleton(arith.one()), |acc, _| arith.prodset(&acc, s))
}

fn class_multiple(arith: &ClassArithmetic, s: &ElemSet, n: usize) -> ElemSet {
    (1..n).fold(s.clone(), |acc, _| arith.sumset(&acc, s))
}

fn binomial(n: usize, j: usize) -> usize {
    (0..j).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `(a+bγ)^n` against `Σ_j C(n,j)·a^j(bγ)^{n-j}` for all `a, b` in the base.
fn binomial_equality(ctx: &QuadraticContext) -> Result<Claim> {
    let mut values = Map::new();
    let mut holds = Vec::new();
    for arith in &ctx.modes {
        let gamma = arith.singleton(ctx.class(arith, "X")?);
        let mut rows = Map::new();
        let mut all = true;
        for n in [2usize, 3] {
            let (mut forward, mut backward, mut equal, mut total) = (0, 0, 0, 0);
            let mut first_gap = Value::Null;
            for a in ctx.h3.elements() {
                for b in ctx.h3.elements() {
                    let ea = arith.singleton(arith.embed(a));
                    let bg = arith.prodset(&arith.singleton(arith.embed(b)), &gamma);
                    let left = class_power(arith, &arith.sumset(&ea, &bg), n);
                    let right = (0..=n)
                        .map(|j| {
                            let term = arith.prodset(&class_power(arith, &ea, j), &class_power(arith, &bg, n - j));
                            class_multiple(arith, &term, binomial(n, j))
                        })
                        .reduce(|acc, t| arith.sumset(&acc, &t))
                        .expect("n + 1 terms");
                    total += 1;
                    forward += usize::from(left.is_subset(&right));
                    backward += usize::from(right.is_subset(&left));
                    equal += usize::from(left == right);
                    if left != right && first_gap.is_null() {
                        first_gap = json!({
                            "a": ctx.h3.element_name(a),
                            "b": ctx.h3.element_name(b),
                            "left": class_names(arith, &left),
                            "right": class_names(arith, &right),
                        });
                    }
                }
            }
            all &= equal == total;
            rows.insert(
                format!("n={n}"),
                json!({
                    "pairs": total,
                    "left_in_right": forward,
                    "right_in_left": backward,
                    "equal": equal,
                    "first_gap": first_gap,
                }),
            );
        }
        holds.push(all);
        values.insert(arith.mode().label(), Value::Object(rows));
    }
    Ok(claim(
        "almost-full-binomial-equality",
        "binomial formula for almost full extensions",
        "(a+bγ)^n = Σ C(n,j) a^j (bγ)^(n-j) as sets, for γ = [X] in H3(X^2+2), n = 2, 3",
        values,
        ClaimVerdict::from_modes(&holds),
    ))
}

/// `(b + cλ)f = bf + cλf` for `b, c` in the base and every class `f`.
fn class_distributivity(ctx: &QuadraticContext) -> Result<Claim> {
    let mut values = Map::new();
    let mut holds = Vec::new();
    for arith in &ctx.modes {
        let lambda = arith.singleton(ctx.class(arith, "X")?);
        let (mut ok, mut total) = (0, 0);
        for b in ctx.h3.elements() {
            for c in ctx.h3.elements() {
                let (eb, ec) = (arith.singleton(arith.embed(b)), arith.singleton(arith.embed(c)));
                let cl = arith.prodset(&ec, &lambda);
                for f in 0..arith.size() {
                    let f = arith.singleton(f);
                    let left = arith.prodset(&arith.sumset(&eb, &cl), &f);
                    let right = arith.sumset(&arith.prodset(&eb, &f), &arith.prodset(&cl, &f));
                    total += 1;
                    ok += usize::from(left == right);
                }
            }
        }
        holds.push(ok == total);
        values.insert(arith.mode().label(), json!({ "cases": total, "equal": ok }));
    }
    Ok(claim(
        "class-distributivity",
        "distributivity of linear classes in F(p)",
        "(b + cλ)f = bf + cλf in H3(X^2+2) for b, c in H3, λ = [X]",
        values,
        ClaimVerdict::from_modes(&holds),
    ))
}

fn quotient_facts(ctx: &QuadraticContext) -> Result<Vec<Claim>> {
    let q = make_quotient(&ctx.h3, &ctx.modulus, ProductMode::Strict)?;
    let l9 = make_l9();
    let iso = find_isomorphism(&q.ring, &l9, DEFAULT_ISO_BOUND)?;
    let hyperring = q.report.hyperring.is_pass();
    let monic_irreducible: Vec<String> = polys_of_degree(&ctx.h3, 2)
        .into_iter()
        .filter(|f| f.leading() == Some(ctx.h3.one()))
        .filter(|f| is_irreducible(&ctx.h3, f).unwrap_or(false))
        .map(|f| f.render(&ctx.h3))
        .collect();
    Ok(vec![
        claim(
            "quadratic-irreducible",
            "quadratic extension of H3: choice of modulus",
            "X^2+2 is the only monic irreducible quadratic over H3",
            tables(json!({ "monic_irreducible": monic_irreducible })),
            ClaimVerdict::from_bool(monic_irreducible == ["X^2+2"]),
        ),
        claim(
            "quadratic-classes",
            "quadratic extension of H3: class listing",
            "H3(X^2+2) has the 9 classes of a0+a1X",
            tables(json!({ "classes": q.ring.names() })),
            ClaimVerdict::from_bool(q.ring.size() == 9),
        ),
        claim(
            "quadratic-full-extension",
            "root adjunction gives a full embedding",
            "a ↦ [a] is a full morphism H3 → H3(X^2+2)",
            tables(json!({ "kind": q.embedding_class.kind.label() })),
            ClaimVerdict::from_bool(q.embedding_class.kind.label() == "full-morphism"),
        ),
        claim(
            "quadratic-not-hyperfield",
            "quadratic extension of H3: products of classes",
            "H3(X^2+2) is a superfield but not a hyperfield",
            tables(json!({ "superfield": q.report.superfield.is_pass(), "hyperring": hyperring })),
            ClaimVerdict::from_bool(q.report.superfield.is_pass() && !hyperring),
        ),
        claim(
            "quadratic-not-isomorphic-l9",
            "quadratic extension of H3 compared with H3 ×h H5",
            "H3(X^2+2) is not isomorphic to L9",
            tables(json!({ "isomorphism": iso.as_ref().map(|m| m.render(&q.ring, &l9)) })),
            ClaimVerdict::from_bool(iso.is_none()),
        ),
    ])
}

fn l9_claims() -> Result<Vec<Claim>> {
    let h3 = make_hp(3)?;
    let h5 = make_hp(5)?;
    let product = product_h(&h3, &h5)?.with_aliases(&crate::structures::L9_ALIASES)?;
    let transcribed = load_l9_file();
    let l9 = make_l9();
    let i = MorphismTable::parse(&h3, &l9, "0:0,1:1,2:2")?;
    let kind = classify_map(&h3, &l9, &i).kind;
    let w = l9.index_of("w")?;
    let square = l9.set_names(l9.prod(w, w));
    let one_plus_one = l9.set_names(l9.sum(l9.one(), l9.one()));
    let algebraic: Vec<Value> = match Embedded::new(&h3, &l9, &i) {
        Ok(e) => l9
            .elements()
            .map(|a| {
                json!({
                    "element": l9.element_name(a),
                    "witness": is_algebraic(&e, a, l9.size()).map(|f| f.render(&h3)),
                })
            })
            .collect(),
        Err(_) => Vec::new(),
    };
    let all_algebraic = !algebraic.is_empty() && algebraic.iter().all(|v| !v["witness"].is_null());
    Ok(vec![
        claim(
            "l9-tables",
            "H3 ×h H5 operation tables",
            "H3 ×h H5 matches the transcribed sum and product tables",
            tables(json!({ "equal": product == transcribed, "one_plus_one": one_plus_one })),
            ClaimVerdict::from_bool(product == transcribed && one_plus_one.len() == 9),
        ),
        claim(
            "l9-embedding-morphism",
            "H3 ×h H5: the map x ↦ (1, x^2)",
            "i(x) = (1, x^2) is a morphism H3 → L9",
            tables(json!({ "kind": kind.label(), "map": i.render(&h3, &l9) })),
            ClaimVerdict::from_bool(kind.is_morphism()),
        ),
        claim(
            "l9-omega-square",
            "H3 ×h H5: the element ω = (1, 2)",
            "ω^2 = i(2) in L9",
            tables(json!({ "square": square })),
            ClaimVerdict::from_bool(square == ["2"]),
        ),
        claim(
            "l9-algebraic",
            "H3 ×h H5 is algebraic over H3",
            "every element of L9 is a root of a polynomial over H3 (through i)",
            tables(json!({ "witnesses": algebraic })),
            ClaimVerdict::from_bool(all_algebraic),
        ),
    ])
}

fn inclusion_claim() -> Result<Claim> {
    let mut rows = Vec::new();
    let mut all = true;
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 5), (3, 7), (5, 7)] {
        let (hp, hq) = (make_hp(p)?, make_hp(q)?);
        let m = MorphismTable::new(&hp, &hq, hp.elements().collect())?;
        let c = classify_map(&hp, &hq, &m);
        all &= c.kind.is_morphism();
        let witness = match &c.kind {
            crate::morphism::MorphismKind::NotMorphism(w) => Some(w.detail.clone()),
            _ => None,
        };
        rows.push(json!({ "pair": format!("H{p} -> H{q}"), "kind": c.kind.label(), "witness": witness }));
    }
    Ok(claim(
        "hp-hq-inclusion",
        "extension kinds: inclusions between H_p",
        "the inclusion H_p → H_q (p ≤ q) is a morphism that is not full",
        tables(json!({ "inclusions": rows })),
        ClaimVerdict::from_bool(all),
    ))
}

/// The displayed linear coefficient `a - b` against the convolution
/// coefficient `(-a) + (-b)` of `(X - a)(X - b)`.
fn sign_display_claim() -> Result<Claim> {
    let mut rows = Vec::new();
    let mut all = true;
    for s in [make_q2(), make_hp(3)?, make_hp(5)?] {
        let mut differ = 0;
        let mut first = Value::Null;
        for a in s.elements() {
            for b in s.elements() {
                let conv = s.sum(s.neg(a), s.neg(b));
                let shown = s.sum(a, s.neg(b));
                if conv != shown {
                    differ += 1;
                    if first.is_null() {
                        first = json!({
                            "a": s.element_name(a),
                            "b": s.element_name(b),
                            "convolution": s.set_names(conv),
                            "displayed": s.set_names(shown),
                        });
                    }
                }
            }
        }
        all &= differ == 0;
        rows.push(json!({ "structure": s.name(), "differing_pairs": differ, "first": first }));
    }
    Ok(claim(
        "linear-coefficient-sign-display",
        "product of two linear factors as displayed",
        "(X-a)(X-b) has linear coefficient a-b",
        tables(json!({ "structures": rows })),
        ClaimVerdict::from_bool(all),
    ))
}

fn small_claims() -> Result<Vec<Claim>> {
    let k = make_krasner();
    let h2 = make_hp(2)?;
    let mut generated = Vec::new();
    let mut gen_ok = true;
    for p in [3u64, 5] {
        let hp = make_hp(p)?;
        let m = MorphismTable::new(&h2, &hp, vec![0, 1])?;
        let e = Embedded::new(&h2, &hp, &m)?;
        let g = generated_set(&e, 2);
        gen_ok &= g == hp.full_set();
        generated.push(json!({ "ambient": hp.name(), "generated": hp.set_names(&g) }));
    }
    let mut containment = Vec::new();
    let mut contained = true;
    for s in [k.clone(), make_q2(), make_hp(3)?, make_hp(5)?] {
        let mut fails = 0;
        for d in 1..=2 {
            for f in polys_of_degree(&s, d) {
                if !effective_roots(&s, &f)?.is_subset(&roots(&s, &f)?) {
                    fails += 1;
                }
            }
        }
        contained &= fails == 0;
        containment.push(json!({ "structure": s.name(), "polynomials_up_to_degree": 2, "not_contained": fails }));
    }
    Ok(vec![
        claim(
            "krasner-closed",
            "finite hyperfields can be algebraically closed",
            "every non-constant polynomial over K of degree at most 6 has a root",
            tables(json!({ "closed_up_to_6": is_alg_closed_up_to(&k, 6) })),
            ClaimVerdict::from_bool(is_alg_closed_up_to(&k, 6)),
        ),
        claim(
            "generated-sets",
            "generated sets depend on the ambient",
            "H2[2, H3] = H3 and H2[2, H5] = H5",
            tables(json!({ "generated": generated })),
            ClaimVerdict::from_bool(gen_ok),
        ),
        claim(
            "effective-roots-are-roots",
            "effective roots compared with roots",
            "every effective root is a root",
            tables(json!({ "structures": containment })),
            ClaimVerdict::from_bool(contained),
        ),
    ])
}

fn euclid_claim(seed: u64) -> Result<Claim> {
    let h3 = make_hp(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ok, mut elimination, mut total) = (0, 0, 0);
    while total < 200 {
        let f = random_poly(&h3, &mut rng, 4);
        let g = random_poly(&h3, &mut rng, 3);
        if g.is_zero() {
            continue;
        }
        total += 1;
        if let Ok(d) = euclid_divide(&h3, &f, &g) {
            ok += usize::from(is_division(&h3, &f, &g, &d.q, &d.r));
            elimination += usize::from(d.route == crate::poly::DivisionRoute::Elimination);
        }
    }
    Ok(claim(
        "euclid-division",
        "division algorithm over superfields",
        "f ∈ q·g + r with r = 0 or deg r < deg g, for sampled f, g over H3",
        tables(json!({ "samples": total, "verified": ok, "by_elimination": elimination })),
        ClaimVerdict::from_bool(ok == total),
    ))
}

/// A random polynomial of degree at most `d` with uniform coefficients.
pub fn random_poly(k: &FiniteSuperring, rng: &mut impl Rng, d: usize) -> Poly {
    let len = rng.gen_range(0..=d + 1);
    Poly::new(k, (0..len).map(|_| rng.gen_range(0..k.size())).collect())
}

/// Evaluate every registered claim.
pub fn conformance_report(seed: u64) -> Result<ConformanceReport> {
    let ctx = QuadraticContext::new()?;
    let mut claims = vec![
        kdot_square(&ctx)?,
        one_plus_x_root(&ctx)?,
        binomial_equality(&ctx)?,
        class_distributivity(&ctx)?,
        inclusion_claim()?,
        sign_display_claim()?,
    ];
    claims.extend(quotient_facts(&ctx)?);
    claims.extend(l9_claims()?);
    claims.extend(small_claims()?);
    claims.push(euclid_claim(seed)?);
    Ok(ConformanceReport { seed, claims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_stable_and_complete() {
        let a = conformance_report(7).unwrap();
        let b = conformance_report(7).unwrap();
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        let ids: Vec<&str> = a.claims.iter().map(|c| c.id).collect();
        let mut dedup = ids.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), ids.len());
        assert_eq!(a.get("hp-hq-inclusion").unwrap().verdict, ClaimVerdict::Contradicted);
        assert_eq!(a.get("l9-tables").unwrap().verdict, ClaimVerdict::Confirmed);
        assert_eq!(a.get("krasner-closed").unwrap().verdict, ClaimVerdict::Confirmed);
        assert_eq!(a.get("kdot-square").unwrap().values.len(), 2);
    }
}
