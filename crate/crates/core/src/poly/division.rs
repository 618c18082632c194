//! Euclid division `f ∈ q·g + r` over a finite superfield.

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::poly::{envelope_prod_poly, envelope_sum, poly_prod, CoeffEnvelope, Poly};
use crate::ring::FiniteSuperring;

/// How a division witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionRoute {
    /// Leading-coefficient elimination with backtracking over choice points.
    Elimination,
    /// Exhaustive search over quotients of degree at most `deg f - deg g`.
    Enumeration,
}

impl DivisionRoute {
    pub fn label(self) -> &'static str {
        match self {
            DivisionRoute::Elimination => "elimination",
            DivisionRoute::Enumeration => "enumeration",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub q: Poly,
    pub r: Poly,
    pub route: DivisionRoute,
}

/// Node budget for the elimination search before falling back.
const ELIMINATION_BUDGET: usize = 20_000;

/// True when `f ∈ q·g + r` and `r = 0` or `deg r < deg g`.
pub fn is_division(k: &FiniteSuperring, f: &Poly, g: &Poly, q: &Poly, r: &Poly) -> bool {
    let small = match (r.degree(), g.degree()) {
        (None, _) => true,
        (Some(dr), Some(dg)) => dr < dg,
        (Some(_), None) => false,
    };
    small && envelope_sum(k, &poly_prod(k, q, g), &CoeffEnvelope::singleton(k, r)).contains(f)
}

struct Eliminator<'a> {
    k: &'a FiniteSuperring,
    g: &'a Poly,
    budget: usize,
}

impl Eliminator<'_> {
    fn divide(&mut self, f: &Poly) -> Option<(Poly, Poly)> {
        let k = self.k;
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let m = self.g.degree().expect("divisor is nonzero");
        let Some(n) = f.degree() else {
            return Some((Poly::zero(k), Poly::zero(k)));
        };
        if n < m {
            return Some((Poly::zero(k), f.clone()));
        }
        let (an, bm) = (f.coeff(n), self.g.coeff(m));
        for binv in k.inverses(bm).iter() {
            for c in k.prod(an, binv).iter().filter(|&c| c != k.zero()) {
                if n == 0 {
                    let q = Poly::constant(k, c);
                    if is_division(k, f, self.g, &q, &Poly::zero(k)) {
                        return Some((q, Poly::zero(k)));
                    }
                    continue;
                }
                // t ∈ f - c·X^{n-m}·g with deg t < n
                let lead = CoeffEnvelope::singleton(k, &Poly::monomial(k, c, n - m));
                let sub = envelope_prod_poly(k, &lead, self.g);
                let neg_sub = CoeffEnvelope::new(k, sub.sets().iter().map(|s| k.negset_unchecked(s)).collect());
                let env = envelope_sum(k, &CoeffEnvelope::singleton(k, f), &neg_sub);
                if !env.coeff_set(k, n).contains(k.zero()) {
                    continue;
                }
                let choices: Vec<Vec<ElementId>> = (0..n).map(|i| env.coeff_set(k, i).to_vec()).collect();
                let mut idx = vec![0usize; n];
                loop {
                    let t = Poly::new(k, idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect());
                    if let Some((q, r)) = self.divide(&t) {
                        let mut qc: Vec<ElementId> = (0..=n - m).map(|i| q.coeff(i)).collect();
                        if q.degree().is_none_or(|d| d < n - m) {
                            qc[n - m] = c;
                            let q2 = Poly::new(k, qc);
                            if is_division(k, f, self.g, &q2, &r) {
                                return Some((q2, r));
                            }
                        }
                    }
                    if self.budget == 0 {
                        return None;
                    }
                    // next choice, highest coordinate varies slowest
                    let mut j = 0;
                    while j < n {
                        idx[j] += 1;
                        if idx[j] < choices[j].len() {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == n {
                        break;
                    }
                }
            }
        }
        None
    }
}

/// All `(q, r)` with `f ∈ q·g + r`, `deg q ≤ deg f - deg g` and `r = 0` or
/// `deg r < deg g`, in canonical order of `q` then `r`.
pub fn enumerate_divisions(k: &FiniteSuperring, f: &Poly, g: &Poly) -> Result<Vec<(Poly, Poly)>> {
    let m = g.degree().ok_or(Error::DivisionByZero)?;
    let mut out = Vec::new();
    let qdeg = f.degree().and_then(|n| n.checked_sub(m));
    let mut quotients = vec![Poly::zero(k)];
    if let Some(d) = qdeg {
        for e in 0..=d {
            quotients.extend(crate::poly::polys_of_degree(k, e));
        }
    }
    for q in quotients {
        let qg = poly_prod(k, &q, g);
        let top = qg.len().max(f.coeffs().len());
        // coordinates at or above m must match with r = 0 there
        if (m..top).any(|i| !qg.coeff_set(k, i).contains(f.coeff(i))) {
            continue;
        }
        let per_coord: Vec<Vec<ElementId>> = (0..m)
            .map(|i| {
                let qi = qg.coeff_set(k, i);
                k.elements()
                    .filter(|&r| sum_with(k, &qi, r).contains(f.coeff(i)))
                    .collect()
            })
            .collect();
        if per_coord.iter().any(Vec::is_empty) {
            continue;
        }
        let mut rs = vec![Vec::new()];
        for opts in &per_coord {
            rs = rs
                .into_iter()
                .flat_map(|prefix: Vec<ElementId>| {
                    opts.iter().map(move |&o| {
                        let mut v = prefix.clone();
                        v.push(o);
                        v
                    })
                })
                .collect();
        }
        let mut rs: Vec<Poly> = rs.into_iter().map(|c| Poly::new(k, c)).collect();
        rs.sort();
        out.extend(rs.into_iter().map(|r| (q.clone(), r)));
    }
    Ok(out)
}

fn sum_with(k: &FiniteSuperring, s: &ElemSet, r: ElementId) -> ElemSet {
    k.sumset_unchecked(s, &k.singleton(r))
}

/// A witness `(q, r)` for `f ∈ q·g + r`. The leading-coefficient elimination
/// runs first; if its choice points are exhausted without a verified witness,
/// the exhaustive enumeration supplies the canonical-first pair.
pub fn euclid_divide(k: &FiniteSuperring, f: &Poly, g: &Poly) -> Result<Division> {
    let bm = g.leading().ok_or(Error::DivisionByZero)?;
    if k.inverses(bm).is_empty() {
        return Err(Error::NotSuperfield(format!(
            "{}: leading coefficient {} has no inverse",
            k.name(),
            k.element_name(bm)
        )));
    }
    let mut elim = Eliminator {
        k,
        g,
        budget: ELIMINATION_BUDGET,
    };
    if let Some((q, r)) = elim.divide(f) {
        debug_assert!(is_division(k, f, g, &q, &r));
        return Ok(Division {
            q,
            r,
            route: DivisionRoute::Elimination,
        });
    }
    let (q, r) = enumerate_divisions(k, f, g)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoWitness(format!("division of {} by {}", f.render(k), g.render(k))))?;
    Ok(Division {
        q,
        r,
        route: DivisionRoute::Enumeration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::structures::{make_hp, make_krasner, make_strict};

    #[test]
    fn h3_examples() {
        let h3 = make_hp(3).unwrap();
        let p = |s| parse_poly(&h3, s).unwrap();
        let d = euclid_divide(&h3, &p("X^2+2"), &p("X+1")).unwrap();
        assert_eq!((d.q.render(&h3), d.r.render(&h3)), ("X+1".into(), "1".into()));
        let d = euclid_divide(&h3, &p("X^2+2"), &p("X")).unwrap();
        assert_eq!((d.q.render(&h3), d.r.render(&h3)), ("X".into(), "2".into()));
        let all = enumerate_divisions(&h3, &p("X^2+2"), &p("X+1")).unwrap();
        assert!(all.contains(&(p("X+1"), p("1"))));
        assert!(all.iter().all(|(q, r)| is_division(&h3, &p("X^2+2"), &p("X+1"), q, r)));
    }

    #[test]
    fn small_dividend() {
        let k = make_krasner();
        let f = parse_poly(&k, "X+1").unwrap();
        let g = parse_poly(&k, "X^2").unwrap();
        let d = euclid_divide(&k, &f, &g).unwrap();
        assert_eq!((d.q, d.r), (Poly::zero(&k), f));
    }

    #[test]
    fn strict_division_is_unique_and_classical() {
        let f7 = make_strict(7).unwrap();
        let f = parse_poly(&f7, "3X^3+X+5").unwrap();
        let g = parse_poly(&f7, "2X+1").unwrap();
        let all = enumerate_divisions(&f7, &f, &g).unwrap();
        assert_eq!(all.len(), 1);
        let d = euclid_divide(&f7, &f, &g).unwrap();
        assert_eq!((d.q.clone(), d.r.clone()), all[0]);
        assert_eq!(d.route, DivisionRoute::Elimination);
        // 3X^3+X+5 = (2X+1)(5X^2+X) + 5
        assert_eq!(d.q.render(&f7), "5X^2+X");
        assert_eq!(d.r.render(&f7), "5");
    }

    #[test]
    fn zero_divisor_is_an_error() {
        let k = make_krasner();
        assert_eq!(
            euclid_divide(&k, &Poly::constant(&k, 1), &Poly::zero(&k)).unwrap_err(),
            Error::DivisionByZero
        );
    }
}
