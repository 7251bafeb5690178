use serde::Serialize;

use super::{CayleyTable, SemigroupView};
use crate::error::{Error, Result};
use crate::ground::Groupoid;
use crate::hyperspace::Hyperspace;
use crate::product::RightFactor;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The partition of a view into orbits `A ∘ H` and the quotient table.
#[derive(Debug, Clone)]
pub struct Orbits {
    /// Orbits numbered by their smallest element index.
    pub orbit_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub quotient: CayleyTable,
}

#[derive(Serialize)]
struct OrbitsDump<'a> {
    members: &'a [Vec<usize>],
    quotient: Vec<Vec<usize>>,
}

impl Serialize for Orbits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrbitsDump {
            members: &self.members,
            quotient: self.quotient.rows(),
        }
        .serialize(s)
    }
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Orbits with a single element.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.members
            .iter()
            .filter(|o| o.len() == 1)
            .map(|o| o[0])
            .collect()
    }
}

fn right_shifts(g: &Groupoid) -> Result<Vec<RightFactor>> {
    (0..g.len())
        .map(|h| RightFactor::new(g, &Hyperspace::principal(g.len(), h)?))
        .collect()
}

/// Orbits of a closed view under right shifts by the points of a group.
///
/// The quotient product is checked on every pair of orbit members.
pub fn orbits(g: &Groupoid, view: &SemigroupView) -> Result<Orbits> {
    if !g.is_group() {
        return Err(Error::NotAGroup(g.name().to_string()));
    }
    let t = view.cayley()?;
    let shifts = right_shifts(g)?;
    let m = view.len();
    let mut orbit_of = vec![usize::MAX; m];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut orbit = Vec::new();
        for (h, shift) in shifts.iter().enumerate() {
            let image = shift.apply(&view.elements()[i])?;
            let k = view.position(&image).ok_or(Error::NotShiftClosed {
                element: i,
                shift: h,
            })?;
            if orbit_of[k] == usize::MAX {
                orbit_of[k] = id;
                orbit.push(k);
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let r = members.len();
    let mut entries = vec![0; r * r];
    for p in 0..r {
        for q in 0..r {
            let value = orbit_of[t.mul(members[p][0], members[q][0])];
            for &a in &members[p] {
                for &b in &members[q] {
                    if orbit_of[t.mul(a, b)] != value {
                        return Err(Error::QuotientIllDefined { left: p, right: q });
                    }
                }
            }
            entries[p * r + q] = value;
        }
    }
    Ok(Orbits {
        orbit_of,
        members,
        quotient: CayleyTable::new(r, entries)?,
    })
}

struct SectionSearch<'a> {
    t: &'a CayleyTable,
    orbits: &'a Orbits,
    order: Vec<usize>,
    chosen: Vec<Option<usize>>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
}

impl SectionSearch<'_> {
    /// Chooses `x` for its orbit and everything its products force.
    fn assign(&mut self, x: usize) -> bool {
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            let o = self.orbits.orbit_of[y];
            match self.chosen[o] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None => {}
            }
            self.chosen[o] = Some(y);
            self.trail.push(o);
            for k in 0..self.trail.len() {
                let c = self.chosen[self.trail[k]].expect("trail holds chosen orbits");
                queue.push(self.t.mul(y, c));
                queue.push(self.t.mul(c, y));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for o in self.trail.drain(mark..) {
            self.chosen[o] = None;
        }
    }

    fn search(&mut self, depth: usize) -> Result<()> {
        let Some(&o) = self.order[depth..]
            .iter()
            .find(|&&o| self.chosen[o].is_none())
        else {
            let mut section: Vec<usize> = self
                .chosen
                .iter()
                .map(|c| c.expect("all orbits chosen"))
                .collect();
            section.sort_unstable();
            self.found.push(section);
            return Ok(());
        };
        let next = depth
            + self.order[depth..]
                .iter()
                .position(|&p| p == o)
                .expect("found above")
            + 1;
        for &x in &self.orbits.members[o] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let mark = self.trail.len();
            if self.assign(x) {
                self.search(next)?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// All sub-semigroups meeting every orbit exactly once, as sorted index lists.
pub fn find_sections(
    view: &SemigroupView,
    orbits: &Orbits,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    let t = view.cayley()?;
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by_key(|&o| (orbits.members[o].len(), o));
    let mut search = SectionSearch {
        t,
        orbits,
        order,
        chosen: vec![None; orbits.len()],
        trail: Vec::new(),
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    search.search(0)?;
    let mut found = search.found;
    for section in &found {
        let mut hit = vec![0usize; orbits.len()];
        section.iter().for_each(|&x| hit[orbits.orbit_of[x]] += 1);
        let closed = section.iter().all(|&a| {
            section
                .iter()
                .all(|&b| section.binary_search(&t.mul(a, b)).is_ok())
        });
        assert!(
            closed && hit.iter().all(|&h| h == 1),
            "section search returned an invalid section"
        );
    }
    found.sort();
    Ok(found)
}

/// Whether `(t, h) ↦ t ∘ h` maps `section × X` onto the whole view.
pub fn evaluation_is_surjective(
    g: &Groupoid,
    view: &SemigroupView,
    section: &[usize],
) -> Result<bool> {
    let shifts = right_shifts(g)?;
    let mut hit = vec![false; view.len()];
    for &s in section {
        for shift in &shifts {
            match view.position(&shift.apply(&view.elements()[s])?) {
                Some(k) => hit[k] = true,
                None => return Ok(false),
            }
        }
    }
    Ok(hit.into_iter().all(|b| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;
    use crate::product::product_via_base;
    use crate::structure::subsemigroup_view;

    fn full(n: usize) -> (Groupoid, SemigroupView) {
        let g = Groupoid::builtin("cyclic", n).unwrap();
        let view = subsemigroup_view(&g, enumerate_all(n).unwrap().collect()).unwrap();
        (g, view)
    }

    #[test]
    fn z2_orbits_and_section() {
        let (g, view) = full(2);
        let o = orbits(&g, &view).unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o.fixed_points().len(), 2);
        let sections = find_sections(&view, &o, DEFAULT_BUDGET).unwrap();
        assert_eq!(sections.len(), 1);
        let elements: Vec<_> = sections[0]
            .iter()
            .map(|&i| view.elements()[i].clone())
            .collect();
        assert!(elements.contains(&Hyperspace::min(2)));
        assert!(elements.contains(&Hyperspace::max(2)));
        assert!(elements.contains(&Hyperspace::principal(2, 0).unwrap()));
        assert!(evaluation_is_surjective(&g, &view, &sections[0]).unwrap());
    }

    #[test]
    fn z3_orbits() {
        let (g, view) = full(3);
        let o = orbits(&g, &view).unwrap();
        assert_eq!(o.len(), 8);
        assert_eq!(o.fixed_points().len(), 3);
        // oracle: every one-per-orbit choice, closure checked with the base formula
        let sizes: Vec<usize> = o.members.iter().map(Vec::len).collect();
        let total: usize = sizes.iter().product();
        let mut brute = 0;
        for code in 0..total {
            let mut c = code;
            let mut pick = Vec::new();
            for orbit in &o.members {
                pick.push(view.elements()[orbit[c % orbit.len()]].clone());
                c /= orbit.len();
            }
            let closed = pick.iter().all(|u| {
                pick.iter()
                    .all(|v| pick.contains(&product_via_base(&g, u, v).unwrap()))
            });
            brute += closed as usize;
        }
        assert_eq!(
            find_sections(&view, &o, DEFAULT_BUDGET).unwrap().len(),
            brute
        );
        assert_eq!(brute, 3);
    }

    #[test]
    fn budget_is_reported() {
        let (g, view) = full(3);
        let o = orbits(&g, &view).unwrap();
        assert_eq!(
            find_sections(&view, &o, 3),
            Err(Error::BudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn preconditions() {
        let lz = Groupoid::builtin("left-zero", 2).unwrap();
        let view = subsemigroup_view(&lz, enumerate_all(2).unwrap().collect()).unwrap();
        assert!(matches!(orbits(&lz, &view), Err(Error::NotAGroup(_))));
        let g = Groupoid::builtin("cyclic", 3).unwrap();
        let lonely = subsemigroup_view(&g, vec![Hyperspace::principal(3, 0).unwrap()]).unwrap();
        assert_eq!(
            orbits(&g, &lonely).unwrap_err(),
            Error::NotShiftClosed {
                element: 0,
                shift: 1
            }
        );
    }
}
