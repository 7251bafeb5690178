//! Textual hyperspaces: `<[0,1,2],[0,1,4]>` lists a base in element names.

use crate::error::{Error, Result};
use crate::ground::Groupoid;
use crate::hyperspace::Hyperspace;
use crate::mask::SubsetMask;
use crate::term::{LatticeTerm, TermPrinter};

fn parse_error(input: &str, reason: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

/// Parses `<[x,y],[z]>`; names are looked up in `names`.
pub fn parse_literal(text: &str, names: &[String]) -> Result<Hyperspace> {
    let body = text
        .trim()
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| parse_error(text, "expected `<...>`"))?;
    let mut base = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner_end = rest
            .find(']')
            .ok_or_else(|| parse_error(text, "unclosed `[`"))?;
        let inner = rest[..inner_end]
            .trim()
            .strip_prefix('[')
            .ok_or_else(|| parse_error(text, "expected `[`"))?;
        let mut set = SubsetMask::EMPTY;
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let x = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
            set = set.with(x);
        }
        base.push(set);
        rest = rest[inner_end + 1..].trim_start();
        if let Some(after) = rest.strip_prefix(',') {
            rest = after.trim_start();
            if rest.is_empty() {
                return Err(parse_error(text, "trailing `,`"));
            }
        } else if !rest.is_empty() {
            return Err(parse_error(text, "expected `,` between sets"));
        }
    }
    Hyperspace::generate(names.len(), &base)
}

/// Minimal sets in element names.
pub fn format_literal(h: &Hyperspace, names: &[String]) -> String {
    let sets: Vec<String> = h
        .minimal_sets()
        .into_iter()
        .map(|a| {
            let inner: Vec<&str> = a.iter().map(|x| names[x].as_str()).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    format!("<{}>", sets.join(","))
}

/// Accepts a literal, `min`, `max`, or a lattice term in element names.
pub fn parse_hyperspace(text: &str, g: &Groupoid) -> Result<Hyperspace> {
    let text = text.trim();
    match text {
        "min" => Ok(Hyperspace::min(g.len())),
        "max" => Ok(Hyperspace::max(g.len())),
        _ if text.starts_with('<') => parse_literal(text, g.names()),
        _ => LatticeTerm::parse(text, g.names())?.evaluate(g.len()),
    }
}

/// The canonical lattice term when the carrier has at most three points,
/// the literal otherwise.
pub fn display_hyperspace(h: &Hyperspace, g: &Groupoid, printer: &TermPrinter) -> String {
    printer
        .render(h, g.names())
        .unwrap_or_else(|| format_literal(h, g.names()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn parse_base_list() {
        let h = parse_literal("<[0,1,2],[0,1,4]>", &names(5)).unwrap();
        assert_eq!(
            h.minimal_sets(),
            vec![SubsetMask(0b00111), SubsetMask(0b10011)]
        );
        let spaced = parse_literal(" < [0, 1, 2] , [0,1,4] > ", &names(5)).unwrap();
        assert_eq!(h, spaced);
    }

    #[test]
    fn literal_errors() {
        let n = names(3);
        assert!(parse_literal("[0]", &n).is_err());
        assert!(parse_literal("<[0],>", &n).is_err());
        assert!(parse_literal("<[0] [1]>", &n).is_err());
        assert!(matches!(
            parse_literal("<[7]>", &n),
            Err(Error::UnknownElement(_))
        ));
        assert_eq!(parse_literal("<>", &n), Err(Error::EmptyBase));
        assert_eq!(parse_literal("<[]>", &n), Err(Error::EmptySetInBase));
    }

    #[test]
    fn round_trip_all_small() {
        for n in 1..=4 {
            let names = names(n);
            for h in enumerate_all(n).unwrap() {
                assert_eq!(
                    parse_literal(&format_literal(&h, &names), &names).unwrap(),
                    h
                );
            }
        }
    }

    #[test]
    fn named_elements_and_terms() {
        let z3 = Groupoid::builtin("cyclic", 3)
            .unwrap()
            .relabeled("Z3", &["e", "a", "a⁻¹"])
            .unwrap();
        let printer = TermPrinter::new(3);
        for h in enumerate_all(3).unwrap() {
            let shown = display_hyperspace(&h, &z3, &printer);
            assert_eq!(parse_hyperspace(&shown, &z3).unwrap(), h, "{shown}");
        }
        assert_eq!(parse_hyperspace("max", &z3).unwrap(), Hyperspace::max(3));
        assert_eq!(parse_hyperspace("<[e,a⁻¹]>", &z3).unwrap().count(), 2);
    }
}
