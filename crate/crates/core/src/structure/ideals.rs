use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::CayleyTable;
use crate::classify::is_shift_invariant;
use crate::enumerate::filter_all;
use crate::error::{Error, Result};
use crate::ground::{Groupoid, MAX_ENUMERATION_CARRIER};
use crate::hyperspace::Hyperspace;
use crate::product::RightFactor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialElements {
    pub idempotents: Vec<usize>,
    pub left_zeros: Vec<usize>,
    pub right_zeros: Vec<usize>,
    pub zeros: Vec<usize>,
    pub unit: Option<usize>,
    pub left_cancelable: Vec<usize>,
    pub right_cancelable: Vec<usize>,
}

fn injective(m: usize, f: impl Fn(usize) -> usize) -> bool {
    let mut seen = vec![false; m];
    (0..m).all(|x| !std::mem::replace(&mut seen[f(x)], true))
}

/// Scans every element; cancelability is injectivity of the translation.
pub fn special_elements(t: &CayleyTable) -> SpecialElements {
    let m = t.order();
    let select = |p: &(dyn Fn(usize) -> bool + Sync)| -> Vec<usize> {
        (0..m).into_par_iter().filter(|&x| p(x)).collect()
    };
    let left_zeros = select(&|z| (0..m).all(|x| t.mul(z, x) == z));
    let right_zeros = select(&|z| (0..m).all(|x| t.mul(x, z) == z));
    let zeros = left_zeros
        .iter()
        .copied()
        .filter(|z| right_zeros.contains(z))
        .collect();
    SpecialElements {
        idempotents: select(&|x| t.mul(x, x) == x),
        unit: (0..m).find(|&e| (0..m).all(|x| t.mul(e, x) == x && t.mul(x, e) == x)),
        left_cancelable: select(&|a| injective(m, |x| t.mul(a, x))),
        right_cancelable: select(&|a| injective(m, |x| t.mul(x, a))),
        left_zeros,
        right_zeros,
        zeros,
    }
}

/// Elements commuting with everything.
pub fn center(t: &CayleyTable) -> Vec<usize> {
    let m = t.order();
    (0..m)
        .into_par_iter()
        .filter(|&c| (0..m).all(|x| t.mul(c, x) == t.mul(x, c)))
        .collect()
}

/// The smallest set containing `x` and closed under multiplication by
/// anything on either side; `S¹xS¹` when the table is associative.
pub fn principal_ideal(t: &CayleyTable, x: usize) -> Vec<usize> {
    let m = t.order();
    let mut inside = vec![false; m];
    inside[x] = true;
    let mut queue = vec![x];
    while let Some(y) = queue.pop() {
        for z in 0..m {
            for p in [t.mul(z, y), t.mul(y, z)] {
                if !inside[p] {
                    inside[p] = true;
                    queue.push(p);
                }
            }
        }
    }
    (0..m).filter(|&i| inside[i]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub associative: bool,
    /// The smallest two-sided ideal (empty only for an empty table).
    pub elements: Vec<usize>,
}

/// The smallest two-sided ideal.
///
/// The left-folded product of all elements lies in every ideal, so the
/// ideal it generates is the smallest one. For non-associative tables the
/// ideal is the closure under one-step multiplications.
pub fn minimal_ideal(t: &CayleyTable) -> IdealReport {
    let m = t.order();
    let elements = match (1..m).try_fold(0usize, |acc, x| Some(t.mul(acc, x))) {
        Some(s) if m > 0 => principal_ideal(t, s),
        _ => Vec::new(),
    };
    IdealReport {
        associative: t.is_associative(),
        elements,
    }
}

/// Inclusion-minimal sets among the left ideals generated by single elements.
pub fn minimal_left_ideals(t: &CayleyTable) -> Vec<Vec<usize>> {
    let m = t.order();
    let associative = t.is_associative();
    let generated: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|x| {
            let mut inside = vec![false; m];
            inside[x] = true;
            if associative {
                (0..m).for_each(|y| inside[t.mul(y, x)] = true);
            } else {
                let mut queue = vec![x];
                while let Some(z) = queue.pop() {
                    for y in 0..m {
                        let p = t.mul(y, z);
                        if !inside[p] {
                            inside[p] = true;
                            queue.push(p);
                        }
                    }
                }
            }
            inside
        })
        .collect();
    let sizes: Vec<usize> = generated
        .iter()
        .map(|s| s.iter().filter(|&&b| b).count())
        .collect();
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
    let minimal: Vec<usize> = (0..m)
        .into_par_iter()
        .filter(|&x| {
            if associative {
                // y ∈ L(x) forces L(y) ⊆ L(x)
                (0..m).all(|y| !generated[x][y] || sizes[y] == sizes[x])
            } else {
                (0..m).all(|y| sizes[y] >= sizes[x] || !subset(&generated[y], &generated[x]))
            }
        })
        .collect();
    let mut ideals: Vec<Vec<usize>> = minimal
        .into_iter()
        .map(|x| (0..m).filter(|&y| generated[x][y]).collect())
        .collect();
    ideals.sort();
    ideals.dedup();
    ideals
}

/// All shift-invariant hyperspaces, in canonical order.
pub fn shift_invariant_core(g: &Groupoid) -> Result<Vec<Hyperspace>> {
    if g.len() > MAX_ENUMERATION_CARRIER {
        return Err(Error::SizeLimit {
            what: "the shift-invariant core",
            n: g.len(),
            limit: MAX_ENUMERATION_CARRIER,
        });
    }
    filter_all(g.len(), |f| is_shift_invariant(g, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremesCriterion {
    /// Elements of `G(X)` commuting with both `min` and `max`.
    pub commuting_with_extremes: Vec<Hyperspace>,
    pub all_principal: bool,
    /// Points `c` whose principal ultrafilter commutes with all of `G(X)`.
    pub central_points: Vec<usize>,
}

/// Scans `G(X)` once: which elements commute with `min` and `max`, and
/// which principal ultrafilters commute with everything.
///
/// This stands in for the full center when `G(X)` is too large to tabulate.
pub fn extremes_criterion(g: &Groupoid) -> Result<ExtremesCriterion> {
    let n = g.len();
    if n > MAX_ENUMERATION_CARRIER {
        return Err(Error::SizeLimit {
            what: "the extremes criterion",
            n,
            limit: MAX_ENUMERATION_CARRIER,
        });
    }
    let (min, max) = (Hyperspace::min(n), Hyperspace::max(n));
    let right_min = RightFactor::new(g, &min)?;
    let right_max = RightFactor::new(g, &max)?;
    let principals: Vec<Hyperspace> = (0..n)
        .map(|c| Hyperspace::principal(n, c))
        .collect::<Result<_>>()?;
    let right_principals: Vec<RightFactor> = principals
        .iter()
        .map(|p| RightFactor::new(g, p))
        .collect::<Result<_>>()?;
    let non_central = AtomicU32::new(0);
    let commuting = filter_all(n, |f| {
        let right_f = RightFactor::new(g, f).expect("carrier checked");
        let apply = |r: &RightFactor, u: &Hyperspace| r.apply(u).expect("carrier checked");
        for c in 0..n {
            if apply(&right_f, &principals[c]) != apply(&right_principals[c], f) {
                non_central.fetch_or(1 << c, Ordering::Relaxed);
            }
        }
        apply(&right_f, &min) == apply(&right_min, f)
            && apply(&right_f, &max) == apply(&right_max, f)
    })?;
    let non_central = non_central.into_inner();
    Ok(ExtremesCriterion {
        all_principal: commuting.iter().all(|f| f.as_principal().is_some()),
        commuting_with_extremes: commuting,
        central_points: (0..n).filter(|c| non_central & (1 << c) == 0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;
    use crate::structure::subsemigroup_view;

    fn full(g: &Groupoid) -> (Vec<Hyperspace>, CayleyTable) {
        let elements: Vec<Hyperspace> = enumerate_all(g.len()).unwrap().collect();
        let view = subsemigroup_view(g, elements.clone()).unwrap();
        (elements, view.cayley().unwrap().clone())
    }

    #[test]
    fn z2_special_elements() {
        let g = Groupoid::builtin("cyclic", 2).unwrap();
        let (elements, t) = full(&g);
        let s = special_elements(&t);
        let named = |ix: &[usize]| ix.iter().map(|&i| elements[i].clone()).collect::<Vec<_>>();
        assert_eq!(
            named(&s.right_zeros),
            vec![Hyperspace::min(2), Hyperspace::max(2)]
        );
        assert_eq!(
            elements[s.unit.unwrap()],
            Hyperspace::principal(2, 0).unwrap()
        );
        assert!(s.zeros.is_empty());
        assert_eq!(named(&center(&t)).len(), 2);
        assert_eq!(
            named(&minimal_ideal(&t).elements),
            vec![Hyperspace::min(2), Hyperspace::max(2)]
        );
    }

    #[test]
    fn minimal_ideal_is_the_intersection_of_principal_ideals() {
        for g in [
            Groupoid::builtin("cyclic", 3).unwrap(),
            Groupoid::builtin("left-zero", 3).unwrap(),
            Groupoid::builtin("right-zero", 2).unwrap(),
        ] {
            let (_, t) = full(&g);
            let mut inter: Vec<usize> = (0..t.order()).collect();
            for x in 0..t.order() {
                let ideal = principal_ideal(&t, x);
                inter.retain(|y| ideal.contains(y));
            }
            assert_eq!(minimal_ideal(&t).elements, inter, "{}", g.name());
        }
    }

    #[test]
    fn non_associative_minimal_ideal() {
        // rock-paper-scissors: every element generates everything
        let rps = CayleyTable::new(3, vec![0, 1, 0, 1, 1, 2, 0, 2, 2]).unwrap();
        let report = minimal_ideal(&rps);
        assert!(!report.associative);
        assert_eq!(report.elements, vec![0, 1, 2]);
        assert_eq!(minimal_left_ideals(&rps), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn minimal_left_ideals_of_left_and_right_zero_bands() {
        let left_zero = CayleyTable::new(2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(minimal_left_ideals(&left_zero), vec![vec![0, 1]]);
        let right_zero = CayleyTable::new(2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(minimal_left_ideals(&right_zero), vec![vec![0], vec![1]]);
    }

    #[test]
    fn cores() {
        let z3 = shift_invariant_core(&Groupoid::builtin("cyclic", 3).unwrap()).unwrap();
        assert_eq!(z3.len(), 3);
        let z2 = shift_invariant_core(&Groupoid::builtin("cyclic", 2).unwrap()).unwrap();
        assert_eq!(z2, vec![Hyperspace::min(2), Hyperspace::max(2)]);
        let lz = shift_invariant_core(&Groupoid::builtin("left-zero", 2).unwrap()).unwrap();
        assert!(!lz.contains(&Hyperspace::min(2)));
    }

    #[test]
    fn extremes_on_z3_and_a_non_abelian_carrier() {
        let z3 = extremes_criterion(&Groupoid::builtin("cyclic", 3).unwrap()).unwrap();
        assert!(z3.all_principal);
        assert_eq!(z3.commuting_with_extremes.len(), 3);
        assert_eq!(z3.central_points, vec![0, 1, 2]);
    }
}
