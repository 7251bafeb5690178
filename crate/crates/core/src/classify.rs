//! The distinguished subclasses of `G(X)`: k-linked and centered families,
//! filters, ultrafilters, maximal k-linked systems, and shift-invariant
//! hyperspaces.
//!
//! Every check runs on minimal sets: any `k` members contain `k` minimal
//! members, and both `x * A` and `x⁻¹A` are monotone in `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::filter_all;
use crate::error::{Error, Result};
use crate::ground::{Groupoid, MAX_ENUMERATION_CARRIER};
use crate::hyperspace::Hyperspace;
use crate::mask::SubsetMask;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    /// Largest `k ≤ n` such that every `k` members share a point.
    pub linked_up_to: usize,
    pub centered: bool,
    pub filter: bool,
    pub ultrafilter: bool,
    /// Maximality among k-linked hyperspaces, for `k` in `2..=n`.
    pub maximal_k_linked: BTreeMap<usize, bool>,
    /// `F = F^⊥`.
    pub self_transversal: bool,
    /// Only computed when a groupoid is supplied.
    pub shift_invariant: Option<bool>,
}

impl ClassFlags {
    pub fn is_k_linked(&self, k: usize) -> bool {
        self.centered || k <= self.linked_up_to
    }

    pub fn is_maximal_k_linked(&self, k: usize) -> bool {
        self.maximal_k_linked.get(&k).copied().unwrap_or(false)
    }
}

/// Smallest number of members with empty intersection, if any.
pub fn empty_intersection_size(f: &Hyperspace) -> Option<usize> {
    let n = f.carrier_size();
    let minimal = f.minimal_sets();
    let mut seen = vec![false; 1 << n];
    let mut layer: Vec<SubsetMask> = minimal.clone();
    for s in &layer {
        seen[s.index()] = true;
    }
    // n sets always suffice: one missing each point
    for size in 2..=n.max(1) + 1 {
        let mut next = Vec::new();
        for s in &layer {
            for m in &minimal {
                let t = s.intersection(*m);
                if t.is_empty() {
                    return Some(size);
                }
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        layer = next;
    }
    None
}

/// Every subfamily of at most `k` members has a common point.
pub fn is_k_linked(f: &Hyperspace, k: usize) -> bool {
    if k == 2 {
        return f.is_subfamily_of(&f.transversal());
    }
    empty_intersection_size(f).is_none_or(|size| size > k)
}

pub fn is_centered(f: &Hyperspace) -> bool {
    let n = f.carrier_size();
    !f.minimal_sets()
        .into_iter()
        .fold(SubsetMask::full(n), SubsetMask::intersection)
        .is_empty()
}

/// `A₁ ∩ A₂ ∈ F` for all members.
pub fn is_filter(f: &Hyperspace) -> bool {
    let minimal = f.minimal_sets();
    minimal.iter().enumerate().all(|(i, a)| {
        minimal[i + 1..]
            .iter()
            .all(|b| f.contains(a.intersection(*b)))
    })
}

/// No single set outside `F` can be added while staying inside the class.
pub fn is_maximal_in<P: Fn(&Hyperspace) -> bool>(f: &Hyperspace, in_class: P) -> bool {
    if !in_class(f) {
        return false;
    }
    let n = f.carrier_size();
    (1..1u32 << n)
        .map(SubsetMask)
        .filter(|&a| !f.contains(a))
        .all(|a| {
            let grown = f.join(&Hyperspace::generate(n, &[a]).unwrap()).unwrap();
            !in_class(&grown)
        })
}

/// [`is_maximal_in`] for a class closed under subfamilies.
///
/// If adding `A` stays in such a class then so does adding any superset of
/// `A`, so only the maximal non-members need testing; these are the
/// complements of the minimal members of `F^⊥`.
pub fn is_maximal_in_hereditary<P: Fn(&Hyperspace) -> bool>(f: &Hyperspace, in_class: P) -> bool {
    if !in_class(f) {
        return false;
    }
    let n = f.carrier_size();
    f.transversal()
        .minimal_sets()
        .into_iter()
        .map(|m| m.complement(n))
        .filter(|e| !e.is_empty())
        .all(|e| {
            let grown = f.join(&Hyperspace::generate(n, &[e]).unwrap()).unwrap();
            !in_class(&grown)
        })
}

pub fn is_ultrafilter(f: &Hyperspace) -> bool {
    is_maximal_in(f, is_filter)
}

pub fn is_maximal_k_linked(f: &Hyperspace, k: usize) -> bool {
    is_maximal_in_hereditary(f, |h| is_k_linked(h, k))
}

/// `x * A ∈ F` and `x⁻¹A ∈ F` for all members `A` and points `x`.
pub fn is_shift_invariant(g: &Groupoid, f: &Hyperspace) -> bool {
    f.minimal_sets()
        .into_iter()
        .all(|a| (0..g.len()).all(|x| f.contains(g.image(x, a)) && f.contains(g.preimage(x, a))))
}

/// All flags of `F`; `shift_invariant` needs the groupoid.
pub fn classify(f: &Hyperspace, g: Option<&Groupoid>) -> Result<ClassFlags> {
    let n = f.carrier_size();
    if let Some(g) = g {
        if g.len() != n {
            return Err(Error::CarrierMismatch(g.len(), n));
        }
    }
    let linked_up_to = match empty_intersection_size(f) {
        None => n,
        Some(size) => (size - 1).min(n),
    };
    let filter = is_filter(f);
    Ok(ClassFlags {
        linked_up_to,
        centered: is_centered(f),
        filter,
        ultrafilter: filter && is_ultrafilter(f),
        maximal_k_linked: (2..=n).map(|k| (k, is_maximal_k_linked(f, k))).collect(),
        self_transversal: *f == f.transversal(),
        shift_invariant: g.map(|g| is_shift_invariant(g, f)),
    })
}

/// A subclass of `G(X)`, spelled `all|filters|ultrafilters|linked:k|centered|maxlinked:k|shiftinv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperspaceClass {
    All,
    Filters,
    Ultrafilters,
    Linked(usize),
    Centered,
    MaxLinked(usize),
    ShiftInvariant,
}

impl HyperspaceClass {
    pub fn contains(&self, g: &Groupoid, f: &Hyperspace) -> bool {
        match *self {
            HyperspaceClass::All => true,
            HyperspaceClass::Filters => is_filter(f),
            HyperspaceClass::Ultrafilters => f.as_principal().is_some(),
            HyperspaceClass::Linked(k) => is_k_linked(f, k),
            HyperspaceClass::Centered => is_centered(f),
            HyperspaceClass::MaxLinked(k) => is_maximal_k_linked(f, k),
            HyperspaceClass::ShiftInvariant => is_shift_invariant(g, f),
        }
    }
}

impl fmt::Display for HyperspaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperspaceClass::All => write!(f, "all"),
            HyperspaceClass::Filters => write!(f, "filters"),
            HyperspaceClass::Ultrafilters => write!(f, "ultrafilters"),
            HyperspaceClass::Linked(k) => write!(f, "linked:{k}"),
            HyperspaceClass::Centered => write!(f, "centered"),
            HyperspaceClass::MaxLinked(k) => write!(f, "maxlinked:{k}"),
            HyperspaceClass::ShiftInvariant => write!(f, "shiftinv"),
        }
    }
}

impl FromStr for HyperspaceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidClass(s.to_string());
        let order = |k: &str| -> Result<usize> {
            match k.parse::<usize>() {
                Ok(k) if k >= 2 => Ok(k),
                _ => Err(bad()),
            }
        };
        match s.split_once(':') {
            None => match s {
                "all" => Ok(HyperspaceClass::All),
                "filters" => Ok(HyperspaceClass::Filters),
                "ultrafilters" => Ok(HyperspaceClass::Ultrafilters),
                "centered" => Ok(HyperspaceClass::Centered),
                "shiftinv" => Ok(HyperspaceClass::ShiftInvariant),
                _ => Err(bad()),
            },
            Some(("linked", k)) => Ok(HyperspaceClass::Linked(order(k)?)),
            Some(("maxlinked", k)) => Ok(HyperspaceClass::MaxLinked(order(k)?)),
            Some(_) => Err(bad()),
        }
    }
}

/// Every member of the class over `g`, in canonical order.
pub fn enumerate_class(g: &Groupoid, class: HyperspaceClass) -> Result<Vec<Hyperspace>> {
    let n = g.len();
    let limit = match class {
        HyperspaceClass::MaxLinked(k) if k >= 3 => MAX_ENUMERATION_CARRIER - 1,
        _ => MAX_ENUMERATION_CARRIER,
    };
    if n > limit {
        return Err(Error::UnsupportedClass {
            class: class.to_string(),
            n,
        });
    }
    match class {
        HyperspaceClass::Filters => {
            let mut out: Vec<_> = (1..1u32 << n)
                .map(|a| Hyperspace::generate(n, &[SubsetMask(a)]).unwrap())
                .collect();
            out.sort();
            Ok(out)
        }
        HyperspaceClass::Ultrafilters => {
            let mut out: Vec<_> = (0..n)
                .map(|x| Hyperspace::principal(n, x).unwrap())
                .collect();
            out.sort();
            Ok(out)
        }
        HyperspaceClass::MaxLinked(k) => {
            let linked = filter_all(n, |f| is_k_linked(f, k))?;
            Ok(linked
                .into_iter()
                .filter(|f| is_maximal_k_linked(f, k))
                .collect())
        }
        _ => filter_all(n, |f| class.contains(g, f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;

    fn m(elements: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(elements.iter().copied())
    }

    fn l_delta() -> Hyperspace {
        Hyperspace::generate(3, &[m(&[0, 1]), m(&[0, 2]), m(&[1, 2])]).unwrap()
    }

    /// k-linkedness straight from the definition: all k-tuples of members.
    fn k_linked_by_definition(f: &Hyperspace, k: usize) -> bool {
        let members: Vec<_> = f.members().collect();
        fn rec(members: &[SubsetMask], k: usize, acc: SubsetMask) -> bool {
            if acc.is_empty() {
                return false;
            }
            if k == 0 {
                return true;
            }
            members
                .iter()
                .all(|&s| rec(members, k - 1, acc.intersection(s)))
        }
        rec(&members, k, SubsetMask::full(f.carrier_size()))
    }

    #[test]
    fn principal_flags() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        for x in 0..3 {
            let p = Hyperspace::principal(3, x).unwrap();
            let flags = classify(&p, Some(&z3)).unwrap();
            assert!(flags.ultrafilter && flags.filter && flags.centered);
            assert_eq!(flags.linked_up_to, 3);
            assert!(flags.maximal_k_linked.values().all(|&b| b));
            assert!(flags.self_transversal);
            assert_eq!(flags.shift_invariant, Some(false));
        }
    }

    #[test]
    fn l_delta_flags() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        let flags = classify(&l_delta(), Some(&z3)).unwrap();
        assert_eq!(flags.linked_up_to, 2);
        assert!(flags.is_maximal_k_linked(2));
        assert!(!flags.centered && !flags.filter && !flags.ultrafilter);
        assert_eq!(flags.shift_invariant, Some(true));
    }

    #[test]
    fn remark_example_is_maximal_3_linked() {
        let l = Hyperspace::generate(
            5,
            &[m(&[0, 1, 2]), m(&[0, 1, 4]), m(&[0, 2, 4]), m(&[1, 2, 4])],
        )
        .unwrap();
        let flags = classify(&l, None).unwrap();
        assert!(flags.is_maximal_k_linked(3));
        assert_eq!(flags.linked_up_to, 3);
    }

    #[test]
    fn linkedness_matches_definition() {
        for n in 1..=4 {
            for f in enumerate_all(n).unwrap() {
                for k in 2..=n + 1 {
                    assert_eq!(
                        is_k_linked(&f, k),
                        k_linked_by_definition(&f, k),
                        "{f:?} k={k}"
                    );
                }
                // n-linked on n points already forces a common point
                assert_eq!(is_centered(&f), k_linked_by_definition(&f, n.max(2)));
            }
        }
    }

    #[test]
    fn one_step_maximality_matches_definition() {
        for n in 1..=3 {
            let all: Vec<_> = enumerate_all(n).unwrap().collect();
            let brute = |f: &Hyperspace, in_class: &dyn Fn(&Hyperspace) -> bool| {
                in_class(f)
                    && !all
                        .iter()
                        .any(|h| h != f && f.is_subfamily_of(h) && in_class(h))
            };
            for f in &all {
                for k in 2..=3 {
                    let expected = brute(f, &|h| k_linked_by_definition(h, k));
                    assert_eq!(is_maximal_k_linked(f, k), expected);
                    assert_eq!(is_maximal_in(f, |h| is_k_linked(h, k)), expected);
                }
                assert_eq!(is_ultrafilter(f), brute(f, &is_filter));
                assert_eq!(is_ultrafilter(f), f.as_principal().is_some());
            }
        }
    }

    #[test]
    fn flag_implications() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        for n in 1..=4 {
            for f in enumerate_all(n).unwrap() {
                let flags = classify(&f, None).unwrap();
                assert!(!flags.ultrafilter || flags.filter);
                assert!(!flags.filter || flags.centered);
                assert!(!flags.centered || (2..=n).all(|k| flags.is_k_linked(k)));
                if n >= 2 {
                    assert_eq!(
                        flags.is_maximal_k_linked(2),
                        flags.is_k_linked(2) && flags.self_transversal
                    );
                    assert_eq!(
                        flags.ultrafilter,
                        flags.filter && flags.is_maximal_k_linked(2)
                    );
                }
            }
        }
        assert!(classify(&Hyperspace::min(2), Some(&z3)).is_err());
    }

    #[test]
    fn class_tokens() {
        for token in [
            "all",
            "filters",
            "ultrafilters",
            "linked:3",
            "centered",
            "maxlinked:2",
            "shiftinv",
        ] {
            let class: HyperspaceClass = token.parse().unwrap();
            assert_eq!(class.to_string(), token);
        }
        for bad in ["linked", "linked:1", "maxlinked:x", "ultra", "foo:2"] {
            assert!(bad.parse::<HyperspaceClass>().is_err(), "{bad}");
        }
    }

    #[test]
    fn class_censuses_on_z3() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        let count = |c: &str| enumerate_class(&z3, c.parse().unwrap()).unwrap().len();
        assert_eq!(count("all"), 18);
        assert_eq!(count("ultrafilters"), 3);
        assert_eq!(count("filters"), 7);
        assert_eq!(count("maxlinked:2"), 4);
        assert_eq!(count("shiftinv"), 3);
        let lambda = enumerate_class(&z3, HyperspaceClass::MaxLinked(2)).unwrap();
        assert!(lambda.contains(&l_delta()));
        let filters = enumerate_class(&z3, HyperspaceClass::Filters).unwrap();
        assert!(filters.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            filters,
            enumerate_all(3)
                .unwrap()
                .filter(is_filter)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn class_size_limits() {
        let z6 = Groupoid::builtin("cyclic", 6).unwrap();
        assert!(matches!(
            enumerate_class(&z6, HyperspaceClass::MaxLinked(3)),
            Err(Error::UnsupportedClass { .. })
        ));
        let z7 = Groupoid::builtin("cyclic", 7).unwrap();
        assert!(enumerate_class(&z7, HyperspaceClass::All).is_err());
    }
}
