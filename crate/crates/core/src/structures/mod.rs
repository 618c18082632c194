//! Builtin structures and the `.msr` table format.

mod msr;

pub use msr::{parse_structure, serialize_structure};

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::ring::FiniteSuperring;

/// The `.msr` transcription of the nine-element hyperfield `H₃ ×ₕ H₅`.
pub const L9_MSR: &str = include_str!("../../data/l9.msr");

/// Aliases for `product_h(H₃, H₅)`: `ω` is written `w`.
pub const L9_ALIASES: [(&str, &str); 8] = [
    ("(1,1)", "1"),
    ("(1,2)", "w"),
    ("(1,3)", "2w"),
    ("(1,4)", "2"),
    ("(2,1)", "a"),
    ("(2,2)", "b"),
    ("(2,3)", "c"),
    ("(2,4)", "d"),
];

/// Krasner's hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn make_krasner() -> FiniteSuperring {
    FiniteSuperring::from_fn(
        "K",
        vec!["0".into(), "1".into()],
        |a, b| match (a, b) {
            (1, 1) => ElemSet::full(2),
            _ => ElemSet::singleton(2, a | b),
        },
        |a, b| ElemSet::singleton(2, a & b),
        vec![0, 1],
        0,
        1,
    )
    .expect("Krasner tables are well formed")
}

/// The sign hyperfield `{0, 1, -1}`.
pub fn make_q2() -> FiniteSuperring {
    make_kaleidoscope(1).with_name("Q2")
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `H_p = {0, …, p-1}`: `a + a` is everything for `a ≠ 0`, distinct nonzero
/// elements sum to `{a, b}`, product is multiplication mod `p`, and `-a = a`.
pub fn make_hp(p: u64) -> Result<FiniteSuperring> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p as usize;
    FiniteSuperring::from_fn(
        format!("H{p}"),
        (0..n).map(|i| i.to_string()).collect(),
        |a, b| {
            if a == 0 {
                ElemSet::singleton(n, b)
            } else if b == 0 {
                ElemSet::singleton(n, a)
            } else if a == b {
                ElemSet::full(n)
            } else {
                ElemSet::from_iter(n, [a, b])
            }
        },
        |a, b| ElemSet::singleton(n, a * b % n),
        (0..n).collect(),
        0,
        1,
    )
}

/// Index of the integer `v` in the kaleidoscope element order `0, 1, -1, 2, -2, …`.
fn kal_index(v: i64) -> ElementId {
    match v {
        0 => 0,
        v if v > 0 => (2 * v - 1) as usize,
        v => (-2 * v) as usize,
    }
}

fn kal_value(i: ElementId) -> i64 {
    if i == 0 {
        0
    } else if i % 2 == 1 {
        (i as i64 + 1) / 2
    } else {
        -(i as i64) / 2
    }
}

/// The `n`-kaleidoscope `X_n = {-n, …, n}`, ordered `0, 1, -1, 2, -2, …`.
pub fn make_kaleidoscope(n: u32) -> FiniteSuperring {
    let size = 2 * n as usize + 1;
    let set = |vals: &mut dyn Iterator<Item = i64>| ElemSet::from_iter(size, vals.map(kal_index));
    FiniteSuperring::from_fn(
        format!("X{n}"),
        (0..size).map(|i| kal_value(i).to_string()).collect(),
        |i, j| {
            let (a, b) = (kal_value(i), kal_value(j));
            if b == -a {
                set(&mut (-a.abs()..=a.abs()))
            } else if b.abs() <= a.abs() {
                set(&mut std::iter::once(a))
            } else {
                set(&mut std::iter::once(b))
            }
        },
        |i, j| {
            let (a, b) = (kal_value(i), kal_value(j));
            let v = (a * b).signum() * a.abs().max(b.abs());
            ElemSet::singleton(size, kal_index(v))
        },
        (0..size).map(|i| kal_index(-kal_value(i))).collect(),
        0,
        kal_index(1.min(n as i64)),
    )
    .expect("kaleidoscope tables are well formed")
}

/// Arithmetic of `GF(p^k)` on base-`p` digit vectors packed into integers.
struct Gf {
    p: usize,
    k: usize,
    modulus: Vec<usize>,
}

impl Gf {
    fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; self.k];
        for slot in d.iter_mut() {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    fn pack(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits(x), self.digits(y));
        let mut c = vec![0; 2 * self.k];
        for i in 0..self.k {
            for j in 0..self.k {
                c[i + j] = (c[i + j] + a[i] * b[j]) % self.p;
            }
        }
        // reduce with the monic modulus x^k = -(m_0 + … + m_{k-1} x^{k-1})
        for t in (self.k..2 * self.k).rev() {
            let lead = c[t];
            if lead == 0 {
                continue;
            }
            c[t] = 0;
            for i in 0..self.k {
                let sub = lead * self.modulus[i] % self.p;
                c[t - self.k + i] = (c[t - self.k + i] + self.p - sub) % self.p;
            }
        }
        self.pack(&c[..self.k])
    }

    fn neg(&self, x: usize) -> usize {
        let d: Vec<usize> = self.digits(x).iter().map(|&u| (self.p - u) % self.p).collect();
        self.pack(&d)
    }
}

/// The finite field of order `q ∈ {2, 3, 4, 5, 7, 8, 9}` with singleton tables.
///
/// Prime fields use the residues `0..q-1` as names. `F4`, `F8` and `F9` are
/// listed as `0, 1, g, g2, …` where `g` is a fixed primitive element.
pub fn make_strict(q: u32) -> Result<FiniteSuperring> {
    let (p, k, modulus) = match q {
        2 | 3 | 5 | 7 => (q as usize, 1, vec![0]),
        4 => (2, 2, vec![1, 1]),
        8 => (2, 3, vec![1, 1, 0]),
        9 => (3, 2, vec![1, 0]),
        _ => return Err(Error::UnsupportedOrder(q)),
    };
    let n = q as usize;
    let gf = Gf { p, k, modulus };
    // order[i] is the packed field element listed at position i
    let order: Vec<usize> = if k == 1 {
        (0..n).collect()
    } else {
        let g = (2..n)
            .find(|&g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = gf.mul(x, g);
                    ord += 1;
                }
                ord == n - 1
            })
            .expect("multiplicative group is cyclic");
        let mut order = vec![0, 1];
        let mut x = g;
        while x != 1 {
            order.push(x);
            x = gf.mul(x, g);
        }
        order
    };
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let names = (0..n)
        .map(|i| match (k, i) {
            (1, _) | (_, 0) | (_, 1) => i.to_string(),
            (_, 2) => "g".to_string(),
            _ => format!("g{}", i - 1),
        })
        .collect();
    FiniteSuperring::from_fn(
        format!("F{q}"),
        names,
        |a, b| ElemSet::singleton(n, pos[gf.add(order[a], order[b])]),
        |a, b| ElemSet::singleton(n, pos[gf.mul(order[a], order[b])]),
        (0..n).map(|a| pos[gf.neg(order[a])]).collect(),
        0,
        1,
    )
}

/// The product `F ×ₕ G`: carrier `{0} ∪ (Ḟ × Ġ)` with componentwise product
/// and negation. For nonzero `x, y`, `x + y` holds every nonzero pair drawn
/// from the component sums, plus `0` when both component sums contain zero.
///
/// Elements are named `(f,g)` and ordered `0` first, then lexicographically by
/// component index.
pub fn product_h(f: &FiniteSuperring, g: &FiniteSuperring) -> Result<FiniteSuperring> {
    for s in [f, g] {
        if !crate::axioms::validate(s).superfield.is_pass() {
            return Err(Error::NotSuperfield(s.name().to_string()));
        }
    }
    let fnz: Vec<ElementId> = f.elements().filter(|&x| x != f.zero()).collect();
    let gnz: Vec<ElementId> = g.elements().filter(|&x| x != g.zero()).collect();
    let mut pairs = Vec::new();
    for &x in &fnz {
        for &y in &gnz {
            pairs.push((x, y));
        }
    }
    let n = pairs.len() + 1;
    // element 0 is zero; pair i lives at index i + 1
    let index = |x: ElementId, y: ElementId| pairs.iter().position(|&p| p == (x, y)).map(|i| i + 1);
    let mut names = vec!["0".to_string()];
    names.extend(
        pairs
            .iter()
            .map(|&(x, y)| format!("({},{})", f.element_name(x), g.element_name(y))),
    );
    let one = index(f.one(), g.one()).expect("one is a nonzero pair");
    let neg: Vec<ElementId> = std::iter::once(0)
        .chain(pairs.iter().map(|&(x, y)| index(f.neg(x), g.neg(y)).unwrap()))
        .collect();
    FiniteSuperring::from_fn(
        format!("{}x{}", f.name(), g.name()),
        names,
        |a, b| {
            if a == 0 {
                return ElemSet::singleton(n, b);
            }
            if b == 0 {
                return ElemSet::singleton(n, a);
            }
            let ((a1, a2), (b1, b2)) = (pairs[a - 1], pairs[b - 1]);
            let (s1, s2) = (f.sum(a1, b1), g.sum(a2, b2));
            let mut out = ElemSet::empty(n);
            for z1 in s1.iter().filter(|&z| z != f.zero()) {
                for z2 in s2.iter().filter(|&z| z != g.zero()) {
                    out.insert(index(z1, z2).unwrap());
                }
            }
            if s1.contains(f.zero()) && s2.contains(g.zero()) {
                out.insert(0);
            }
            out
        },
        |a, b| {
            if a == 0 || b == 0 {
                return ElemSet::singleton(n, 0);
            }
            let ((a1, a2), (b1, b2)) = (pairs[a - 1], pairs[b - 1]);
            let mut out = ElemSet::empty(n);
            for z1 in f.prod(a1, b1) {
                for z2 in g.prod(a2, b2) {
                    if let Some(i) = index(z1, z2) {
                        out.insert(i);
                    }
                }
            }
            out
        },
        neg,
        0,
        one,
    )
}

/// `product_h(H₃, H₅)` with the names `0, 1, w, 2w, 2, a, b, c, d`.
pub fn make_l9() -> FiniteSuperring {
    let h3 = make_hp(3).expect("3 is prime");
    let h5 = make_hp(5).expect("5 is prime");
    product_h(&h3, &h5)
        .and_then(|l| l.with_aliases(&L9_ALIASES))
        .expect("H3 and H5 are superfields")
        .with_name("L9")
}

/// The L9 tables as shipped in `data/l9.msr`.
pub fn load_l9_file() -> FiniteSuperring {
    parse_structure(L9_MSR).expect("bundled l9.msr parses")
}

/// Resolve a builtin by name: `krasner`, `q2`, `l9`, `h<p>`, `x<n>`, `f<q>`.
pub fn builtin(name: &str) -> Result<FiniteSuperring> {
    let lower = name.to_ascii_lowercase();
    let numeric = |prefix: &str| -> Option<u64> {
        lower.strip_prefix(prefix).and_then(|rest| rest.parse().ok())
    };
    match lower.as_str() {
        "krasner" | "k" => return Ok(make_krasner()),
        "q2" => return Ok(make_q2()),
        "l9" => return Ok(make_l9()),
        _ => {}
    }
    if let Some(p) = numeric("h") {
        return make_hp(p);
    }
    if let Some(n) = numeric("x") {
        if n > 31 {
            return Err(Error::CarrierTooLarge {
                size: 2 * n as usize + 1,
                max: 63,
            });
        }
        return Ok(make_kaleidoscope(n as u32));
    }
    if let Some(q) = numeric("f") {
        return make_strict(q.min(u32::MAX as u64) as u32);
    }
    Err(Error::UnknownElement(format!("builtin:{name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_is_krasner() {
        assert_eq!(make_hp(2).unwrap(), make_krasner());
    }

    #[test]
    fn x1_is_q2() {
        assert_eq!(make_kaleidoscope(1), make_q2());
    }

    #[test]
    fn hp_rejects_composites() {
        assert_eq!(make_hp(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(make_hp(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn h5_distinct_sum() {
        let h5 = make_hp(5).unwrap();
        assert_eq!(h5.sum(2, 3).to_vec(), vec![2, 3]);
    }

    #[test]
    fn x2_scaling_of_one_minus_one() {
        let x2 = make_kaleidoscope(2);
        let two = x2.index_of("2").unwrap();
        let s = x2.set_of(&[x2.index_of("-1").unwrap(), 0, 1]);
        let got = x2.prodset(&x2.singleton(two), &s).unwrap();
        let expect = x2.set_of(&[x2.index_of("-2").unwrap(), 0, two]);
        assert_eq!(got, expect);
        assert_eq!(x2.sum(two, x2.neg(two)), &x2.full_set());
    }

    #[test]
    fn strict_fields_are_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = make_strict(q).unwrap();
            assert_eq!(f.size(), q as usize);
            assert!(f.has_single_valued_products());
            for a in f.elements() {
                assert!(f.sum(a, f.neg(a)).contains(f.zero()));
                if a != f.zero() {
                    assert_eq!(f.inverses(a).len(), 1);
                }
            }
        }
        assert_eq!(make_strict(6).unwrap_err(), Error::UnsupportedOrder(6));
    }

    #[test]
    fn l9_basics() {
        let l = make_l9();
        assert_eq!(l.size(), 9);
        let one = l.one();
        assert_eq!(l.sum(one, one), &l.full_set());
        let w = l.index_of("w").unwrap();
        let w2 = l.index_of("2w").unwrap();
        assert_eq!(l.inverses(w).to_vec(), vec![w2]);
        assert_eq!(l.prod(w, w).as_singleton(), Some(l.index_of("2").unwrap()));
        assert_eq!(load_l9_file(), l);
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("krasner").unwrap(), make_krasner());
        assert_eq!(builtin("h7").unwrap().size(), 7);
        assert_eq!(builtin("x2").unwrap().size(), 5);
        assert_eq!(builtin("f4").unwrap().size(), 4);
        assert!(builtin("nope").is_err());
    }
}
