//! Finite semigroups carved out of `G(X)`: Cayley tables, special elements,
//! ideals, orbits under a group, transversal sections and isomorphisms.

mod cancel;
mod ideals;
mod iso;
mod orbits;

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::Groupoid;
use crate::hyperspace::Hyperspace;
use crate::product::RightFactor;

pub use cancel::{right_cancelable_certificate, CancelCertificate, MAX_CANCEL_CARRIER};
pub use ideals::{
    center, extremes_criterion, minimal_ideal, minimal_left_ideals, principal_ideal,
    shift_invariant_core, special_elements, ExtremesCriterion, IdealReport, SpecialElements,
};
pub use iso::are_isomorphic;
pub use orbits::{evaluation_is_surjective, find_sections, orbits, Orbits, DEFAULT_BUDGET};

const ESCAPED: u32 = u32::MAX;

/// A closed finite magma on `0..order`.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<u32>,
    associative: OnceLock<bool>,
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.entries == other.entries
    }
}

impl Eq for CayleyTable {}

impl CayleyTable {
    /// Row-major entries; every entry must be below `order`.
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::NotSquare {
                row: entries.len() / order.max(1),
                expected: order * order,
                found: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: order,
            });
        }
        Ok(CayleyTable {
            order,
            entries: entries.into_iter().map(|e| e as u32).collect(),
            associative: OnceLock::new(),
        })
    }

    fn from_raw(order: usize, entries: Vec<u32>, associative: Option<bool>) -> Self {
        let cell = OnceLock::new();
        if let Some(a) = associative {
            let _ = cell.set(a);
        }
        CayleyTable {
            order,
            entries,
            associative: cell,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.order + j] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.order.max(1))
            .map(|r| r.iter().map(|&e| e as usize).collect())
            .collect()
    }

    /// Brute force unless known from the ground groupoid.
    pub fn is_associative(&self) -> bool {
        *self.associative.get_or_init(|| {
            let m = self.order;
            (0..m).into_par_iter().all(|a| {
                (0..m).all(|b| {
                    let ab = self.mul(a, b);
                    (0..m).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            })
        })
    }

    /// The table restricted to `subset`, renumbered in the given order.
    pub fn restrict(&self, subset: &[usize]) -> Option<CayleyTable> {
        let mut position = vec![u32::MAX; self.order];
        for (k, &x) in subset.iter().enumerate() {
            position[x] = k as u32;
        }
        let mut entries = Vec::with_capacity(subset.len() * subset.len());
        for &a in subset {
            for &b in subset {
                let p = position[self.mul(a, b)];
                if p == u32::MAX {
                    return None;
                }
                entries.push(p);
            }
        }
        Some(CayleyTable::from_raw(
            subset.len(),
            entries,
            self.associative.get().copied(),
        ))
    }
}

/// Elements of `G(X)` together with their products.
///
/// Products leaving the element list are recorded as escapes; only closed
/// views hand out a [`CayleyTable`].
#[derive(Debug, Clone)]
pub struct SemigroupView {
    elements: Vec<Hyperspace>,
    index: HashMap<Hyperspace, usize>,
    table: CayleyTable,
    escape: Option<(usize, usize)>,
}

/// Builds the table of `∘` restricted to `elements`.
pub fn subsemigroup_view(g: &Groupoid, elements: Vec<Hyperspace>) -> Result<SemigroupView> {
    let m = elements.len();
    let mut index = HashMap::with_capacity(m);
    for (i, h) in elements.iter().enumerate() {
        if h.carrier_size() != g.len() {
            return Err(Error::CarrierMismatch(g.len(), h.carrier_size()));
        }
        if let Some(j) = index.insert(h.clone(), i) {
            return Err(Error::Duplicate(j, i));
        }
    }
    let columns: Vec<Vec<u32>> = elements
        .par_iter()
        .map(|v| {
            let right = RightFactor::new(g, v)?;
            elements
                .iter()
                .map(|u| {
                    let w = right.apply(u)?;
                    Ok(index.get(&w).map_or(ESCAPED, |&k| k as u32))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let mut entries = vec![ESCAPED; m * m];
    for (j, column) in columns.iter().enumerate() {
        for (i, &e) in column.iter().enumerate() {
            entries[i * m + j] = e;
        }
    }
    let escape = entries
        .iter()
        .position(|&e| e == ESCAPED)
        .map(|p| (p / m, p % m));
    // associativity of `*` lifts to `∘`
    let associative = g.is_associative().then_some(true);
    Ok(SemigroupView {
        elements,
        index,
        table: CayleyTable::from_raw(m, entries, associative),
        escape,
    })
}

impl SemigroupView {
    pub fn elements(&self) -> &[Hyperspace] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, h: &Hyperspace) -> Option<usize> {
        self.index.get(h).copied()
    }

    pub fn is_closed(&self) -> bool {
        self.escape.is_none()
    }

    /// The first escaping product in row-major order.
    pub fn escape(&self) -> Option<(usize, usize)> {
        self.escape
    }

    /// `None` when the product escapes the view.
    pub fn entry(&self, i: usize, j: usize) -> Option<usize> {
        let e = self.table.entries[i * self.len() + j];
        (e != ESCAPED).then_some(e as usize)
    }

    pub fn cayley(&self) -> Result<&CayleyTable> {
        match self.escape {
            None => Ok(&self.table),
            Some((left, right)) => Err(Error::NotClosed { left, right }),
        }
    }

    /// The sub-view on `subset` (indices into this view), if it is closed.
    pub fn restrict(&self, subset: &[usize]) -> Result<SemigroupView> {
        let table = self.cayley()?;
        let elements: Vec<Hyperspace> = subset.iter().map(|&i| self.elements[i].clone()).collect();
        let mut index = HashMap::with_capacity(subset.len());
        for (k, h) in elements.iter().enumerate() {
            if let Some(j) = index.insert(h.clone(), k) {
                return Err(Error::Duplicate(j, k));
            }
        }
        let restricted = table.restrict(subset).ok_or_else(|| {
            let inside: Vec<bool> = (0..self.len()).map(|i| subset.contains(&i)).collect();
            let (l, r) = (0..subset.len())
                .flat_map(|a| (0..subset.len()).map(move |b| (a, b)))
                .find(|&(a, b)| !inside[table.mul(subset[a], subset[b])])
                .expect("restriction failed, so some product escapes");
            Error::NotClosed { left: l, right: r }
        })?;
        Ok(SemigroupView {
            elements,
            index,
            table: restricted,
            escape: None,
        })
    }
}

/// Serializable table; escaping products are `None`.
#[derive(Debug, Clone, Serialize)]
pub struct TableDump {
    pub order: usize,
    pub rows: Vec<Vec<Option<usize>>>,
}

impl SemigroupView {
    pub fn dump(&self) -> TableDump {
        let m = self.len();
        TableDump {
            order: m,
            rows: (0..m)
                .map(|i| (0..m).map(|j| self.entry(i, j)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;
    use crate::mask::SubsetMask;

    fn z(n: usize) -> Groupoid {
        Groupoid::builtin("cyclic", n).unwrap()
    }

    fn l_delta() -> Hyperspace {
        Hyperspace::generate(3, &[SubsetMask(3), SubsetMask(5), SubsetMask(6)]).unwrap()
    }

    #[test]
    fn full_z3_view_is_closed() {
        let view = subsemigroup_view(&z(3), enumerate_all(3).unwrap().collect()).unwrap();
        assert_eq!(view.len(), 18);
        assert!(view.is_closed());
        let t = view.cayley().unwrap();
        assert!(t.is_associative());
    }

    #[test]
    fn escapes_and_duplicates() {
        let g = z(3);
        let p = |x| Hyperspace::principal(3, x).unwrap();
        let view = subsemigroup_view(&g, vec![p(1)]).unwrap();
        assert_eq!(view.escape(), Some((0, 0)));
        assert!(matches!(
            view.cayley(),
            Err(Error::NotClosed { left: 0, right: 0 })
        ));
        assert_eq!(
            subsemigroup_view(&g, vec![p(1), p(1)]).unwrap_err(),
            Error::Duplicate(0, 1)
        );
        let closed = subsemigroup_view(&g, vec![p(0), l_delta()]).unwrap();
        assert!(closed.is_closed());
        assert_eq!(closed.entry(0, 1), Some(1));
        assert_eq!(closed.entry(1, 0), Some(1));
    }

    #[test]
    fn restriction() {
        let view = subsemigroup_view(&z(3), enumerate_all(3).unwrap().collect()).unwrap();
        let min = view.position(&Hyperspace::min(3)).unwrap();
        let max = view.position(&Hyperspace::max(3)).unwrap();
        let sub = view.restrict(&[min, max]).unwrap();
        assert_eq!(sub.cayley().unwrap().rows(), vec![vec![0, 1], vec![0, 1]]);
        let e = view
            .position(&Hyperspace::principal(3, 1).unwrap())
            .unwrap();
        assert!(matches!(view.restrict(&[e]), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn table_validation() {
        assert!(CayleyTable::new(2, vec![0, 1, 1]).is_err());
        assert!(CayleyTable::new(2, vec![0, 1, 1, 2]).is_err());
        let left_zero = CayleyTable::new(2, vec![0, 0, 1, 1]).unwrap();
        assert!(left_zero.is_associative());
        let rps = CayleyTable::new(3, vec![0, 1, 0, 1, 1, 2, 0, 2, 2]).unwrap();
        assert!(!rps.is_associative());
    }
}
