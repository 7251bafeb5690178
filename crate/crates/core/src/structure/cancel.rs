use std::collections::HashSet;

use serde::Serialize;

use crate::enumerate::enumerate_all;
use crate::error::{Error, Result};
use crate::ground::Groupoid;
use crate::hyperspace::Hyperspace;
use crate::mask::SubsetMask;
use crate::product::{left_shift, RightFactor};

/// Largest carrier on which right cancelability is decided over all of `G(X)`.
pub const MAX_CANCEL_CARRIER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancelCertificate {
    /// `Y ↦ Y ∘ F` is injective on the scope.
    pub right_cancelable: bool,
    pub scope_size: usize,
    /// The shifts `x * F` are pairwise distinct.
    pub points_distinct: bool,
    /// Sets `S_x ∈ F ∩ F^⊥` with `x * S_x` pairwise disjoint, one per point.
    pub disjoint_family: Option<Vec<SubsetMask>>,
}

fn disjoint_family(
    g: &Groupoid,
    candidates: &[SubsetMask],
    x: usize,
    used: SubsetMask,
    out: &mut Vec<SubsetMask>,
) -> bool {
    if x == g.len() {
        return true;
    }
    for &s in candidates {
        let image = g.image(x, s);
        if image.intersection(used).is_empty() {
            out.push(s);
            if disjoint_family(g, candidates, x + 1, used.union(image), out) {
                return true;
            }
            out.pop();
        }
    }
    false
}

/// Right cancelability of `F` by brute force, next to the two finite
/// shift conditions that bracket it.
///
/// Without `within`, the scope is all of `G(X)`, which needs `n ≤ 4`.
pub fn right_cancelable_certificate(
    g: &Groupoid,
    f: &Hyperspace,
    within: Option<&[Hyperspace]>,
) -> Result<CancelCertificate> {
    let n = g.len();
    let right = RightFactor::new(g, f)?;
    let scope: Vec<Hyperspace> = match within {
        Some(s) => s.to_vec(),
        None if n <= MAX_CANCEL_CARRIER => enumerate_all(n)?.collect(),
        None => {
            return Err(Error::SizeLimit {
                what: "right cancelability over G(X)",
                n,
                limit: MAX_CANCEL_CARRIER,
            })
        }
    };
    let mut images = HashSet::with_capacity(scope.len());
    let mut right_cancelable = true;
    for y in &scope {
        if !images.insert(right.apply(y)?) {
            right_cancelable = false;
            break;
        }
    }
    let shifts: HashSet<Hyperspace> = (0..n).map(|x| left_shift(g, x, f)).collect::<Result<_>>()?;
    // minimal members suffice: shrinking S_x keeps the images disjoint
    let candidates = f.meet(&f.transversal())?.minimal_sets();
    let mut family = Vec::new();
    let found = disjoint_family(g, &candidates, 0, SubsetMask::EMPTY, &mut family);
    Ok(CancelCertificate {
        right_cancelable,
        scope_size: scope.len(),
        points_distinct: shifts.len() == n,
        disjoint_family: found.then_some(family),
    })
}
