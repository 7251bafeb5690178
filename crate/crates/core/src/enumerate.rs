//! Exhaustive enumeration of `G(X)` for small carriers.
//!
//! An up-set of `P({0..n-1})` splits into the sets without `n-1` (the low
//! half of the membership vector) and the sets with it (the high half).
//! Both halves are up-sets of `P({0..n-2})`, and the pair `(low, high)` is
//! admissible exactly when `low ⊆ high`. Iterating `high` and then `low`
//! in ascending order therefore yields every up-set once, in ascending
//! order of the full vector. Hyperspaces are the up-sets other than the
//! empty family and the family containing `∅`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ground::MAX_ENUMERATION_CARRIER;
use crate::hyperspace::Hyperspace;

/// All up-sets of `P({0..n-1})` as raw vectors, ascending; `n ≤ 5`.
fn upsets(n: usize) -> Vec<u64> {
    debug_assert!(n <= 5);
    let mut level = vec![0u64, 1];
    for k in 1..=n {
        let half = 1u32 << (k - 1);
        let mut next = Vec::new();
        for &high in &level {
            for &low in &level {
                if low & !high == 0 {
                    next.push(low | high << half);
                }
            }
        }
        level = next;
    }
    level
}

fn check(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_CARRIER {
        Err(Error::SizeLimit {
            what: "enumeration of G(X)",
            n,
            limit: MAX_ENUMERATION_CARRIER,
        })
    } else {
        Ok(())
    }
}

#[inline]
fn is_hyperspace(v: u64) -> bool {
    v != 0 && v & 1 == 0
}

/// Number of monotone families of subsets of an `n`-set (the Dedekind number).
pub fn dedekind(n: usize) -> Result<u64> {
    check(n)?;
    let half = upsets(n - 1);
    Ok(half
        .iter()
        .map(|&high| half.iter().filter(|&&low| low & !high == 0).count() as u64)
        .sum())
}

/// `|G(X)|` for `|X| = n`.
pub fn count_all(n: usize) -> Result<u64> {
    Ok(dedekind(n)? - 2)
}

/// Every hyperspace on `n` points exactly once, ascending.
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = Hyperspace>> {
    check(n)?;
    let half = upsets(n - 1);
    let shift = 1u32 << (n - 1);
    let lows = half.clone();
    Ok(half.into_iter().flat_map(move |high| {
        lows.clone()
            .into_iter()
            .filter(move |&low| low & !high == 0)
            .map(move |low| low | high << shift)
            .filter(|&v| is_hyperspace(v))
            .map(move |v| Hyperspace::from_word(n, v))
    }))
}

/// The hyperspaces satisfying `keep`, ascending; shards on the high half.
pub fn filter_all<F>(n: usize, keep: F) -> Result<Vec<Hyperspace>>
where
    F: Fn(&Hyperspace) -> bool + Sync,
{
    check(n)?;
    let half = upsets(n - 1);
    let shift = 1u32 << (n - 1);
    let shards: Vec<Vec<Hyperspace>> = half
        .par_iter()
        .map(|&high| {
            half.iter()
                .filter(|&&low| low & !high == 0)
                .map(|&low| low | high << shift)
                .filter(|&v| is_hyperspace(v))
                .map(|v| Hyperspace::from_word(n, v))
                .filter(|h| keep(h))
                .collect()
        })
        .collect();
    Ok(shards.into_iter().flatten().collect())
}
