//! Text syntax: terms `c*X^k`, `cX^k`, `X^k`, `cX`, `X`, `c`, joined by `+`.
//! Coefficients are element names; the longest matching name wins, so names
//! that themselves contain `+` (such as quotient classes) still parse.

use crate::elemset::ElementId;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::FiniteSuperring;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn element(&mut self, r: &FiniteSuperring) -> Option<ElementId> {
        let rest = self.rest();
        let best = r
            .elements()
            .filter(|&e| rest.starts_with(r.element_name(e)))
            .max_by_key(|&e| r.element_name(e).len())?;
        self.pos += r.element_name(best).len();
        Some(best)
    }

    fn variable(&mut self) -> Result<Option<usize>> {
        if !(self.eat('X') || self.eat('x')) {
            return Ok(None);
        }
        if !self.eat('^') {
            return Ok(Some(1));
        }
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected an exponent after `^`"));
        }
        self.pos += digits.len();
        digits
            .parse()
            .map(Some)
            .map_err(|_| self.error("exponent too large"))
    }
}

/// Parse a polynomial over `r`. Repeated powers are combined with the ring
/// sum only when that sum is single-valued; otherwise it is an error.
pub fn parse_poly(r: &FiniteSuperring, text: &str) -> Result<Poly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor { text: &compact, pos: 0 };
    if compact.is_empty() {
        return Err(cur.error("empty polynomial"));
    }
    let mut coeffs: Vec<Option<ElementId>> = Vec::new();
    loop {
        let (c, k) = match cur.element(r) {
            Some(c) => {
                let explicit_star = cur.eat('*');
                match cur.variable()? {
                    Some(k) => (c, k),
                    None if explicit_star => return Err(cur.error("expected `X` after `*`")),
                    None => (c, 0),
                }
            }
            None => match cur.variable()? {
                Some(k) => (r.one(), k),
                None => return Err(cur.error(format!("unknown coefficient in `{}`", cur.rest()))),
            },
        };
        push(r, &mut coeffs, c, k, &cur)?;
        if cur.rest().is_empty() {
            break;
        }
        if !cur.eat('+') {
            return Err(cur.error("expected `+`"));
        }
    }
    let coeffs = coeffs.into_iter().map(|c| c.unwrap_or(r.zero())).collect();
    Ok(Poly::new(r, coeffs))
}

fn push(r: &FiniteSuperring, coeffs: &mut Vec<Option<ElementId>>, c: ElementId, k: usize, cur: &Cursor) -> Result<()> {
    if coeffs.len() <= k {
        coeffs.resize(k + 1, None);
    }
    coeffs[k] = Some(match coeffs[k] {
        None => c,
        Some(prev) => r
            .sum(prev, c)
            .as_singleton()
            .ok_or_else(|| cur.error(format!("repeated X^{k} terms have a multivalued sum")))?,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{make_hp, make_l9, make_q2, make_strict};

    #[test]
    fn basic_forms() {
        let h3 = make_hp(3).unwrap();
        let f = parse_poly(&h3, "X^2 + 2").unwrap();
        assert_eq!(f.coeffs(), &[2, 0, 1]);
        assert_eq!(parse_poly(&h3, "2*X^3+X+1").unwrap().coeffs(), &[1, 1, 0, 2]);
        assert_eq!(parse_poly(&h3, "2X").unwrap().coeffs(), &[0, 2]);
        assert_eq!(parse_poly(&h3, "0").unwrap(), Poly::zero(&h3));
        assert_eq!(parse_poly(&h3, "x^2").unwrap().degree(), Some(2));
    }

    #[test]
    fn signed_and_named_coefficients() {
        let q2 = make_q2();
        assert_eq!(parse_poly(&q2, "X^2+-1").unwrap().coeffs(), &[2, 0, 1]);
        let l9 = make_l9();
        let f = parse_poly(&l9, "2w*X+w").unwrap();
        assert_eq!(l9.element_name(f.coeff(1)), "2w");
        assert_eq!(l9.element_name(f.coeff(0)), "w");
    }

    #[test]
    fn repeated_terms_combine_when_single_valued() {
        let f5 = make_strict(5).unwrap();
        assert_eq!(parse_poly(&f5, "X+X+1").unwrap().coeffs(), &[1, 2]);
        let h3 = make_hp(3).unwrap();
        assert!(parse_poly(&h3, "X+X").is_err());
    }

    #[test]
    fn errors_have_columns() {
        let h3 = make_hp(3).unwrap();
        match parse_poly(&h3, "X^2+7").unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 5),
            e => panic!("{e:?}"),
        }
        assert!(parse_poly(&h3, "X^").is_err());
        assert!(parse_poly(&h3, "2*").is_err());
        assert!(parse_poly(&h3, "").is_err());
        assert!(parse_poly(&h3, "X2").is_err());
    }

    #[test]
    fn render_round_trip() {
        let h3 = make_hp(3).unwrap();
        for f in crate::poly::polys_up_to_degree(&h3, 3) {
            assert_eq!(parse_poly(&h3, &f.render(&h3)).unwrap(), f);
            assert_eq!(parse_poly(&h3, &f.render_ascending(&h3)).unwrap(), f);
        }
    }
}
