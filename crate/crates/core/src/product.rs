//! The extension of a groupoid operation to `G(X)`.
//!
//! Two independent routes compute `U ∘ V`:
//!
//! * [`product`]: `A ∈ U ∘ V ⇔ {x : x⁻¹A ∈ V} ∈ U`, linear in `2ⁿ · n`;
//! * [`product_via_base`]: the closure of the unions `⋃_{x∈U} x * V_x`
//!   with `U` a minimal set of `U` and each `V_x` a minimal set of `V`.
//!
//! The first is the working path; the second exists so the first can be
//! checked against it.

use crate::error::{Error, Result};
use crate::ground::{check_map, Groupoid};
use crate::hyperspace::{close_upward, word_count, Hyperspace, Words};
use crate::mask::SubsetMask;

fn check_carrier(g: &Groupoid, h: &Hyperspace) -> Result<()> {
    if h.carrier_size() == g.len() {
        Ok(())
    } else {
        Err(Error::CarrierMismatch(g.len(), h.carrier_size()))
    }
}

/// `x⁻¹A = {y : x * y ∈ A}`.
pub fn preimage_shift(g: &Groupoid, x: usize, set: SubsetMask) -> Result<SubsetMask> {
    g.check_index(x)?;
    if !set.is_subset_of(SubsetMask::full(g.len())) {
        return Err(Error::IndexOutOfRange {
            index: 31 - set.bits().leading_zeros() as usize,
            n: g.len(),
        });
    }
    Ok(g.preimage(x, set))
}

/// `a * F = ⟨a * F : F ∈ F⟩`.
pub fn left_shift(g: &Groupoid, a: usize, f: &Hyperspace) -> Result<Hyperspace> {
    g.check_index(a)?;
    check_carrier(g, f)?;
    let base: Vec<SubsetMask> = f
        .minimal_sets()
        .into_iter()
        .map(|s| g.image(a, s))
        .collect();
    Hyperspace::generate(g.len(), &base)
}

/// The right factor of a product, prepared once and reused for many left factors.
///
/// `masks[A] = {x : x⁻¹A ∈ V}`, so `A ∈ U ∘ V ⇔ masks[A] ∈ U`.
#[derive(Debug, Clone)]
pub struct RightFactor {
    n: usize,
    masks: Vec<u16>,
}

impl RightFactor {
    pub fn new(g: &Groupoid, v: &Hyperspace) -> Result<Self> {
        check_carrier(g, v)?;
        let n = g.len();
        let size = 1usize << n;
        let pre = g.preimage_table();
        let mut masks = vec![0u16; size];
        for x in 0..n {
            let row = &pre[x * size..(x + 1) * size];
            for (mask, &p) in masks.iter_mut().zip(row) {
                if v.contains(SubsetMask(p as u32)) {
                    *mask |= 1 << x;
                }
            }
        }
        Ok(RightFactor { n, masks })
    }

    /// `U ∘ V` for the prepared `V`.
    pub fn apply(&self, u: &Hyperspace) -> Result<Hyperspace> {
        if u.carrier_size() != self.n {
            return Err(Error::CarrierMismatch(self.n, u.carrier_size()));
        }
        let mut words: Words = smallvec::smallvec![0; word_count(self.n)];
        for (a, &m) in self.masks.iter().enumerate() {
            if u.contains(SubsetMask(m as u32)) {
                words[a >> 6] |= 1 << (a & 63);
            }
        }
        Ok(Hyperspace::from_words(self.n, words))
    }
}

/// `U ∘ V = {A : {x : x⁻¹A ∈ V} ∈ U}`.
pub fn product(g: &Groupoid, u: &Hyperspace, v: &Hyperspace) -> Result<Hyperspace> {
    check_carrier(g, u)?;
    RightFactor::new(g, v)?.apply(u)
}

/// `U ∘ V` from bases: the closure of `⋃_{x∈U} x * V_x` over minimal sets.
///
/// All selector families `x ↦ V_x` are covered by folding over the points
/// of `U` one at a time and keeping the set of distinct partial unions, so
/// the cost stays bounded by `2ⁿ` partial unions per step.
pub fn product_via_base(g: &Groupoid, u: &Hyperspace, v: &Hyperspace) -> Result<Hyperspace> {
    check_carrier(g, u)?;
    check_carrier(g, v)?;
    let n = g.len();
    let size = 1usize << n;
    let v_min = v.minimal_sets();
    let mut words: Words = smallvec::smallvec![0; word_count(n)];
    let mut seen = vec![false; size];
    for base in u.minimal_sets() {
        let mut partial = vec![SubsetMask::EMPTY];
        for x in base.iter() {
            let shifted: Vec<SubsetMask> = v_min.iter().map(|&s| g.image(x, s)).collect();
            seen.iter_mut().for_each(|b| *b = false);
            let mut next = Vec::new();
            for &p in &partial {
                for &s in &shifted {
                    let q = p.union(s);
                    if !seen[q.index()] {
                        seen[q.index()] = true;
                        next.push(q);
                    }
                }
            }
            partial = next;
        }
        for p in partial {
            words[p.index() >> 6] |= 1 << (p.index() & 63);
        }
    }
    close_upward(n, &mut words);
    Ok(Hyperspace::from_words(n, words))
}

/// `Gh(F) = ⟨h(F) : F ∈ F⟩` for a map of carriers `h`.
pub fn induced_map(
    map: &[usize],
    source: &Groupoid,
    target: &Groupoid,
    f: &Hyperspace,
) -> Result<Hyperspace> {
    check_map(source, target, map)?;
    check_carrier(source, f)?;
    let base: Vec<SubsetMask> = f
        .minimal_sets()
        .into_iter()
        .map(|s| SubsetMask::from_elements(s.iter().map(|x| map[x])))
        .collect();
    Hyperspace::generate(target.len(), &base)
}
