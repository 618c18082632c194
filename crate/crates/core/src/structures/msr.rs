//! Line-oriented `.msr` table files.
//!
//! ```text
//! name K
//! elements 0 1
//! zero 0
//! one 1
//! neg identity
//! sum 0 0 : 0
//! sum 0 1 : 1
//! sum 1 1 : 0 1
//! prod 0 0 : 0
//! prod 0 1 : 0
//! prod 1 1 : 1
//! ```
//!
//! Each unordered pair appears exactly once per table; `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::elemset::{ElemSet, ElementId};
use crate::error::{Error, Result};
use crate::ring::FiniteSuperring;

fn valid_ident(tok: &str) -> bool {
    tok != ":"
        && tok.chars().all(|c| {
            c.is_ascii_alphanumeric() || matches!(c, '_' | '(' | ')' | '+' | '-' | ',' | '[' | ']' | ':' | '^' | '*' | '.')
        })
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            if c == '#' {
                return out;
            }
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

struct Parser {
    name: Option<String>,
    names: Option<Vec<String>>,
    index: HashMap<String, ElementId>,
    zero: Option<ElementId>,
    one: Option<ElementId>,
    neg: HashMap<ElementId, ElementId>,
    neg_identity: bool,
    sum: HashMap<(ElementId, ElementId), ElemSet>,
    prod: HashMap<(ElementId, ElementId), ElemSet>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl Parser {
    fn element(&self, line: usize, tok: &Token) -> Result<ElementId> {
        if self.names.is_none() {
            return Err(err(line, tok.column, "`elements` must come before any element reference"));
        }
        self.index
            .get(tok.text)
            .copied()
            .ok_or_else(|| err(line, tok.column, format!("undeclared element `{}`", tok.text)))
    }

    fn line(&mut self, lineno: usize, toks: &[Token]) -> Result<()> {
        let head = &toks[0];
        let args = &toks[1..];
        let single = |what: &str| -> Result<&Token> {
            match args {
                [t] => Ok(t),
                _ => Err(err(lineno, head.column, format!("`{what}` takes exactly one argument"))),
            }
        };
        match head.text {
            "name" => {
                let t = single("name")?;
                self.name = Some(t.text.to_string());
            }
            "elements" => {
                if self.names.is_some() {
                    return Err(err(lineno, head.column, "`elements` given twice"));
                }
                if args.is_empty() {
                    return Err(err(lineno, head.column, "empty element list"));
                }
                let mut names = Vec::new();
                for t in args {
                    if !valid_ident(t.text) {
                        return Err(err(lineno, t.column, format!("invalid element name `{}`", t.text)));
                    }
                    if self.index.insert(t.text.to_string(), names.len()).is_some() {
                        return Err(err(lineno, t.column, format!("element `{}` declared twice", t.text)));
                    }
                    names.push(t.text.to_string());
                }
                self.names = Some(names);
            }
            "zero" => {
                let t = single("zero")?;
                self.zero = Some(self.element(lineno, t)?);
            }
            "one" => {
                let t = single("one")?;
                self.one = Some(self.element(lineno, t)?);
            }
            "neg" => match args {
                [t] if t.text == "identity" => self.neg_identity = true,
                [a, b] => {
                    let (x, y) = (self.element(lineno, a)?, self.element(lineno, b)?);
                    if self.neg.insert(x, y).is_some() {
                        return Err(err(lineno, a.column, format!("negation of `{}` given twice", a.text)));
                    }
                }
                _ => return Err(err(lineno, head.column, "expected `neg <a> <b>` or `neg identity`")),
            },
            "sum" | "prod" => {
                if args.len() < 4 || args[2].text != ":" {
                    return Err(err(
                        lineno,
                        head.column,
                        format!("expected `{} <a> <b> : <e1> ...`", head.text),
                    ));
                }
                let a = self.element(lineno, &args[0])?;
                let b = self.element(lineno, &args[1])?;
                let n = self.names.as_ref().map_or(0, Vec::len);
                let mut set = ElemSet::empty(n);
                for t in &args[3..] {
                    set.insert(self.element(lineno, t)?);
                }
                let key = (a.min(b), a.max(b));
                let table = if head.text == "sum" { &mut self.sum } else { &mut self.prod };
                if table.insert(key, set).is_some() {
                    return Err(Error::DuplicateEntry {
                        op: head.text.to_string(),
                        a: args[0].text.to_string(),
                        b: args[1].text.to_string(),
                        line: lineno,
                    });
                }
            }
            other => return Err(err(lineno, head.column, format!("unknown directive `{other}`"))),
        }
        Ok(())
    }

    fn finish(self) -> Result<FiniteSuperring> {
        let names = self.names.ok_or_else(|| err(0, 0, "missing `elements`"))?;
        let zero = self.zero.ok_or_else(|| err(0, 0, "missing `zero`"))?;
        let one = self.one.ok_or_else(|| err(0, 0, "missing `one`"))?;
        let n = names.len();
        let neg = if self.neg_identity {
            if !self.neg.is_empty() {
                return Err(err(0, 0, "`neg identity` combined with explicit neg entries"));
            }
            (0..n).collect()
        } else {
            (0..n)
                .map(|a| {
                    self.neg
                        .get(&a)
                        .copied()
                        .ok_or_else(|| err(0, 0, format!("missing negation of `{}`", names[a])))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let mut sums = Vec::with_capacity(n * n);
        let mut prods = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let key = (a.min(b), a.max(b));
                for (op, table, out) in [("sum", &self.sum, &mut sums), ("prod", &self.prod, &mut prods)] {
                    let s = table.get(&key).ok_or_else(|| Error::MissingPair {
                        op: op.to_string(),
                        a: names[key.0].clone(),
                        b: names[key.1].clone(),
                    })?;
                    out.push(s.clone());
                }
            }
        }
        let name = self.name.unwrap_or_else(|| "structure".to_string());
        FiniteSuperring::from_tables(name, names, sums, prods, neg, zero, one)
    }
}

/// Parse `.msr` text. Each table is completed by commutativity.
pub fn parse_structure(text: &str) -> Result<FiniteSuperring> {
    let mut p = Parser {
        name: None,
        names: None,
        index: HashMap::new(),
        zero: None,
        one: None,
        neg: HashMap::new(),
        neg_identity: false,
        sum: HashMap::new(),
        prod: HashMap::new(),
    };
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line);
        if !toks.is_empty() {
            p.line(i + 1, &toks)?;
        }
    }
    p.finish()
}

/// Render in normal form: pairs `a ≤ b` in element order, members sorted.
pub fn serialize_structure(s: &FiniteSuperring) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", s.name());
    let _ = writeln!(out, "elements {}", s.names().join(" "));
    let _ = writeln!(out, "zero {}", s.element_name(s.zero()));
    let _ = writeln!(out, "one {}", s.element_name(s.one()));
    if s.elements().all(|a| s.neg(a) == a) {
        out.push_str("neg identity\n");
    } else {
        for a in s.elements() {
            let _ = writeln!(out, "neg {} {}", s.element_name(a), s.element_name(s.neg(a)));
        }
    }
    for (op, table) in [("sum", FiniteSuperring::sum as fn(&_, _, _) -> &_), ("prod", FiniteSuperring::prod)] {
        for a in s.elements() {
            for b in a..s.size() {
                let members = s.set_names(table(s, a, b)).join(" ");
                let _ = writeln!(out, "{op} {} {} : {members}", s.element_name(a), s.element_name(b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{make_kaleidoscope, make_krasner, make_l9, L9_MSR};

    const K_TEXT: &str = "name K\nelements 0 1\nzero 0\none 1\nneg identity\n\
        sum 0 0 : 0\nsum 0 1 : 1\nsum 1 1 : 0 1\nprod 0 0 : 0\nprod 0 1 : 0\nprod 1 1 : 1\n";

    #[test]
    fn krasner_round_trip() {
        let k = make_krasner();
        let text = serialize_structure(&k);
        assert_eq!(text, K_TEXT);
        assert_eq!(parse_structure(&text).unwrap(), k);
    }

    #[test]
    fn explicit_negation_round_trip() {
        let x2 = make_kaleidoscope(2);
        let text = serialize_structure(&x2);
        assert!(text.contains("neg -1 1\n"));
        let back = parse_structure(&text).unwrap();
        assert_eq!(back, x2);
        assert_eq!(serialize_structure(&back), text);
    }

    #[test]
    fn l9_file_is_normalized() {
        let body: String = L9_MSR
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(serialize_structure(&make_l9()), body);
    }

    #[test]
    fn missing_pair_is_named() {
        let text = K_TEXT.replace("sum 1 1 : 0 1\n", "");
        let e = parse_structure(&text).unwrap_err();
        assert_eq!(
            e,
            Error::MissingPair {
                op: "sum".into(),
                a: "1".into(),
                b: "1".into()
            }
        );
    }

    #[test]
    fn mirrored_duplicate_is_rejected() {
        let text = format!("{K_TEXT}sum 1 0 : 1\n");
        assert!(matches!(
            parse_structure(&text).unwrap_err(),
            Error::DuplicateEntry { line: 12, .. }
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = K_TEXT.replace("sum 0 1 : 1", "sum 0 1 : 7");
        match parse_structure(&text).unwrap_err() {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (7, 11));
                assert!(message.contains("undeclared"));
            }
            e => panic!("unexpected {e:?}"),
        }
        let text = K_TEXT.replace("sum 0 1 : 1", "sum 0 1 1");
        assert!(matches!(parse_structure(&text).unwrap_err(), Error::Parse { line: 7, .. }));
        assert!(matches!(
            parse_structure("elements a b\nfoo\n").unwrap_err(),
            Error::Parse { line: 2, column: 1, .. }
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# a comment\n\n{}", K_TEXT.replace("zero 0", "zero 0   # trailing"));
        assert_eq!(parse_structure(&text).unwrap(), make_krasner());
    }

    #[test]
    fn construction_invariants_are_enforced_at_load() {
        let text = K_TEXT.replace("sum 0 1 : 1", "sum 0 1 : 0");
        assert!(matches!(parse_structure(&text).unwrap_err(), Error::InvalidStructure(_)));
    }
}
