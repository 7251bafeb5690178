//! Lattice terms over principal ultrafilters, such as `e∧(a∨a⁻¹)`.
//!
//! Every hyperspace is a join of meets of points. On carriers with at most
//! three points each hyperspace also has a short canonical term, which is
//! what the text renderings use.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hyperspace::Hyperspace;
use crate::mask::SubsetMask;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeTerm {
    Atom(usize),
    Meet(Vec<LatticeTerm>),
    Join(Vec<LatticeTerm>),
}

use LatticeTerm::{Atom, Join, Meet};

impl LatticeTerm {
    pub fn evaluate(&self, n: usize) -> Result<Hyperspace> {
        match self {
            Atom(x) => Hyperspace::principal(n, *x),
            Meet(parts) | Join(parts) => {
                let mut values = parts.iter().map(|p| p.evaluate(n));
                let first = values.next().ok_or(Error::EmptyBase)??;
                values.try_fold(first, |acc, v| {
                    let v = v?;
                    if matches!(self, Meet(_)) {
                        acc.meet(&v)
                    } else {
                        acc.join(&v)
                    }
                })
            }
        }
    }

    /// Compound operands are always parenthesized: `a∨(e∧a⁻¹)`.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Atom(x) => names[*x].clone(),
            Meet(parts) => render_parts(parts, "∧", names),
            Join(parts) => render_parts(parts, "∨", names),
        }
    }

    /// Parses `∧`/`&` and `∨`/`|` with parentheses; `∧` binds tighter.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let tokens = tokenize(text, names)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            text,
        };
        let term = parser.join()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(term)
    }

    /// The join over minimal sets of the meet over their points.
    pub fn normal_form(h: &Hyperspace) -> Self {
        let meets: Vec<LatticeTerm> = h
            .minimal_sets()
            .into_iter()
            .map(|a| {
                let atoms: Vec<_> = a.iter().map(Atom).collect();
                if atoms.len() == 1 {
                    atoms.into_iter().next().unwrap()
                } else {
                    Meet(atoms)
                }
            })
            .collect();
        if meets.len() == 1 {
            meets.into_iter().next().unwrap()
        } else {
            Join(meets)
        }
    }
}

fn render_parts(parts: &[LatticeTerm], op: &str, names: &[String]) -> String {
    parts
        .iter()
        .map(|p| match p {
            Atom(_) => p.render(names),
            _ => format!("({})", p.render(names)),
        })
        .collect::<Vec<_>>()
        .join(op)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(usize),
    Meet,
    Join,
    Open,
    Close,
}

fn tokenize(text: &str, names: &[String]) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, tokens: &mut Vec<Token>| -> Result<()> {
        if !word.is_empty() {
            let index = names
                .iter()
                .position(|n| n == word.as_str())
                .ok_or_else(|| Error::UnknownElement(word.clone()))?;
            tokens.push(Token::Name(index));
            word.clear();
        }
        Ok(())
    };
    for c in text.chars() {
        let op = match c {
            '∧' | '&' => Some(Token::Meet),
            '∨' | '|' => Some(Token::Join),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if op.is_some() || c.is_whitespace() {
            flush(&mut word, &mut tokens)?;
            tokens.extend(op);
        } else {
            word.push(c);
        }
    }
    flush(&mut word, &mut tokens)?;
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.text.to_string(),
            reason: reason.to_string(),
        }
    }

    fn join(&mut self) -> Result<LatticeTerm> {
        let mut parts = vec![self.meet()?];
        while self.tokens.get(self.pos) == Some(&Token::Join) {
            self.pos += 1;
            parts.push(self.meet()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Join(parts)
        })
    }

    fn meet(&mut self) -> Result<LatticeTerm> {
        let mut parts = vec![self.primary()?];
        while self.tokens.get(self.pos) == Some(&Token::Meet) {
            self.pos += 1;
            parts.push(self.primary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Meet(parts)
        })
    }

    fn primary(&mut self) -> Result<LatticeTerm> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Name(x)) => {
                self.pos += 1;
                Ok(Atom(x))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.join()?;
                if self.tokens.get(self.pos) != Some(&Token::Close) {
                    return Err(self.error("missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected an element or `(`")),
        }
    }
}

/// Canonical short terms for every hyperspace on `n ≤ 3` points.
///
/// Atoms appear in carrier order; the shapes are `p`, `p∧q`, `p∨q`,
/// `p∧q∧r`, `p∨q∨r`, `p∧(q∨r)`, `p∨(q∧r)` and `(p∨q)∧(p∨r)∧(q∨r)`.
pub fn catalogue(n: usize) -> Vec<LatticeTerm> {
    let mut out: Vec<LatticeTerm> = (0..n).map(Atom).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect();
    for &(p, q) in &pairs {
        out.push(Meet(vec![Atom(p), Atom(q)]));
        out.push(Join(vec![Atom(p), Atom(q)]));
    }
    if n == 3 {
        out.push(Meet(vec![Atom(0), Atom(1), Atom(2)]));
        out.push(Join(vec![Atom(0), Atom(1), Atom(2)]));
        for p in 0..3 {
            let (q, r) = match p {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            out.push(Meet(vec![Atom(p), Join(vec![Atom(q), Atom(r)])]));
            out.push(Join(vec![Atom(p), Meet(vec![Atom(q), Atom(r)])]));
        }
        out.push(Meet(vec![
            Join(vec![Atom(0), Atom(1)]),
            Join(vec![Atom(0), Atom(2)]),
            Join(vec![Atom(1), Atom(2)]),
        ]));
    }
    out
}

/// Looks up canonical terms by hyperspace; empty for `n > 3`.
#[derive(Debug, Clone, Default)]
pub struct TermPrinter {
    terms: HashMap<Hyperspace, LatticeTerm>,
}

impl TermPrinter {
    pub fn new(n: usize) -> Self {
        let terms = if (1..=3).contains(&n) {
            catalogue(n)
                .into_iter()
                .map(|t| (t.evaluate(n).expect("catalogue terms are well-formed"), t))
                .collect()
        } else {
            HashMap::new()
        };
        TermPrinter { terms }
    }

    pub fn term(&self, h: &Hyperspace) -> Option<&LatticeTerm> {
        self.terms.get(h)
    }

    pub fn render(&self, h: &Hyperspace, names: &[String]) -> Option<String> {
        self.term(h).map(|t| t.render(names))
    }
}

/// Minimal sets as a sorted list, a convenience for reports.
pub fn minimal_set_names(h: &Hyperspace, names: &[String]) -> Vec<Vec<String>> {
    h.minimal_sets()
        .into_iter()
        .map(|a: SubsetMask| a.iter().map(|x| names[x].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;

    fn z3_names() -> Vec<String> {
        ["e", "a", "a⁻¹"].map(String::from).to_vec()
    }

    #[test]
    fn catalogue_covers_small_carriers() {
        for (n, size) in [(1, 1), (2, 4), (3, 18)] {
            let printer = TermPrinter::new(n);
            assert_eq!(printer.terms.len(), size);
            for h in enumerate_all(n).unwrap() {
                assert!(printer.term(&h).is_some(), "{h:?}");
            }
        }
        assert!(TermPrinter::new(4).term(&Hyperspace::min(4)).is_none());
    }

    #[test]
    fn renders_like_the_listing() {
        let names = z3_names();
        let printer = TermPrinter::new(3);
        let x0 = Hyperspace::generate(3, &[SubsetMask(3), SubsetMask(5), SubsetMask(6)]).unwrap();
        assert_eq!(
            printer.render(&x0, &names).unwrap(),
            "(e∨a)∧(e∨a⁻¹)∧(a∨a⁻¹)"
        );
        let t = LatticeTerm::parse("e ∧ (a ∨ a⁻¹)", &names).unwrap();
        assert_eq!(
            printer.render(&t.evaluate(3).unwrap(), &names).unwrap(),
            "e∧(a∨a⁻¹)"
        );
        assert_eq!(
            printer.render(&Hyperspace::min(3), &names).unwrap(),
            "e∧a∧a⁻¹"
        );
    }

    #[test]
    fn parse_precedence_and_errors() {
        let names = z3_names();
        let a = LatticeTerm::parse("e∧a∨a⁻¹", &names).unwrap();
        let b = LatticeTerm::parse("(e&a)|a⁻¹", &names).unwrap();
        assert_eq!(a, b);
        assert!(LatticeTerm::parse("e∧", &names).is_err());
        assert!(LatticeTerm::parse("(e∨a", &names).is_err());
        assert!(LatticeTerm::parse("e∨b", &names).is_err());
        assert!(LatticeTerm::parse("e a", &names).is_err());
    }

    #[test]
    fn normal_form_reconstructs() {
        for n in 1..=4 {
            for h in enumerate_all(n).unwrap() {
                assert_eq!(LatticeTerm::normal_form(&h).evaluate(n).unwrap(), h);
            }
        }
    }
}
