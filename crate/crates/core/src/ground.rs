//! Finite groupoids given by Cayley tables.
//!
//! Element order is the declaration order; every downstream encoding
//! (subset masks, hyperspace membership vectors) inherits it.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// Largest carrier accepted for single-hyperspace operations.
pub const MAX_CARRIER: usize = 16;

/// Largest carrier accepted for a full census of `G(X)`.
pub const MAX_ENUMERATION_CARRIER: usize = 6;

/// A finite carrier with a binary operation.
///
/// Immutable after construction. The preimage table used by the extended
/// product is built lazily and shared between threads.
#[derive(Debug, Clone)]
pub struct Groupoid {
    name: String,
    names: Vec<String>,
    table: Vec<u8>,
    associative: bool,
    commutative: bool,
    identity: Option<usize>,
    quasigroup: bool,
    preimages: OnceLock<Vec<u16>>,
}

impl PartialEq for Groupoid {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.table == other.table
    }
}

impl Eq for Groupoid {}

/// On-disk form of a groupoid: element names and a row-major table of names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub associative: bool,
    pub commutative: bool,
    pub quasigroup: bool,
    pub identity: Option<usize>,
    pub center: SubsetMask,
    /// Every equation `a * x = b` has a solution.
    pub left_divisible: bool,
}

impl Groupoid {
    /// Builds a groupoid from a flat row-major table, `table[i * n + j] = i * j`.
    pub fn from_table(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > MAX_CARRIER {
            return Err(Error::SizeLimit {
                what: "groupoid carriers",
                n,
                limit: MAX_CARRIER,
            });
        }
        for (i, a) in names.iter().enumerate() {
            if let Some(j) = names[..i].iter().position(|b| b == a) {
                return Err(Error::Duplicate(j, i));
            }
        }
        if table.len() != n * n {
            return Err(Error::NotSquare {
                row: table.len() / n,
                expected: n,
                found: table.len() % n,
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        let table: Vec<u8> = table.into_iter().map(|v| v as u8).collect();
        let mut g = Groupoid {
            name: name.into(),
            names,
            table,
            associative: false,
            commutative: false,
            identity: None,
            quasigroup: false,
            preimages: OnceLock::new(),
        };
        g.associative = g.check_associative();
        g.commutative = (0..n).all(|i| (0..n).all(|j| g.mul(i, j) == g.mul(j, i)));
        g.identity = (0..n).find(|&e| (0..n).all(|x| g.mul(e, x) == x && g.mul(x, e) == x));
        g.quasigroup = g.check_latin();
        Ok(g)
    }

    /// Instantiates a named family: `cyclic`, `symmetric-3`, `klein-4`,
    /// `left-zero` (`x*y = x`) or `right-zero` (`x*y = y`).
    pub fn builtin(family: &str, n: usize) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidSize {
            family: family.to_string(),
            n,
            reason: reason.to_string(),
        };
        let numbered = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        if family != "cyclic"
            && family != "left-zero"
            && family != "right-zero"
            && family != "symmetric-3"
            && family != "klein-4"
        {
            return Err(Error::UnknownBuiltin(family.to_string()));
        }
        if n == 0 {
            return Err(invalid("carrier must be non-empty"));
        }
        if n > MAX_CARRIER {
            return Err(invalid("carrier exceeds 16 elements"));
        }
        match family {
            "cyclic" => {
                let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
                Groupoid::from_table(format!("cyclic:{n}"), numbered(n), table)
            }
            "left-zero" => {
                let table = (0..n * n).map(|k| k / n).collect();
                Groupoid::from_table(format!("left-zero:{n}"), numbered(n), table)
            }
            "right-zero" => {
                let table = (0..n * n).map(|k| k % n).collect();
                Groupoid::from_table(format!("right-zero:{n}"), numbered(n), table)
            }
            "klein-4" => {
                if n != 4 {
                    return Err(invalid("the Klein four-group has 4 elements"));
                }
                let names = ["e", "a", "b", "c"].map(String::from).to_vec();
                let table = (0..16).map(|k| (k / 4) ^ (k % 4)).collect();
                Groupoid::from_table("klein-4", names, table)
            }
            _ => {
                if n != 6 {
                    return Err(invalid("the symmetric group on 3 points has 6 elements"));
                }
                symmetric3()
            }
        }
    }

    /// Reads a groupoid document; JSON when it starts with `{`, TOML otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: GroupoidDocument = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?
        };
        Groupoid::from_document(&doc)
    }

    pub fn from_document(doc: &GroupoidDocument) -> Result<Self> {
        let n = doc.elements.len();
        if doc.table.len() != n {
            return Err(Error::NotSquare {
                row: doc.table.len(),
                expected: n,
                found: 0,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in doc.table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for name in entries {
                let k = doc
                    .elements
                    .iter()
                    .position(|e| e == name)
                    .ok_or_else(|| Error::UnknownElement(name.clone()))?;
                table.push(k);
            }
        }
        Groupoid::from_table(doc.name.clone(), doc.elements.clone(), table)
    }

    pub fn to_document(&self) -> GroupoidDocument {
        let n = self.len();
        GroupoidDocument {
            name: self.name.clone(),
            elements: self.names.clone(),
            table: (0..n)
                .map(|i| (0..n).map(|j| self.names[self.mul(i, j)].clone()).collect())
                .collect(),
        }
    }

    /// The same operation with new element labels.
    pub fn relabeled(&self, name: impl Into<String>, names: &[&str]) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::MapLength {
                expected: self.len(),
                found: names.len(),
            });
        }
        let table = self.table.iter().map(|&v| v as usize).collect();
        Groupoid::from_table(name, names.iter().map(|s| s.to_string()).collect(), table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|e| e == name)
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j] as usize
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_quasigroup(&self) -> bool {
        self.quasigroup
    }

    pub fn is_group(&self) -> bool {
        self.associative && self.quasigroup && self.identity.is_some()
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                n: self.len(),
            })
        }
    }

    /// `a * A = {a * y : y in A}`.
    pub fn image(&self, a: usize, set: SubsetMask) -> SubsetMask {
        SubsetMask::from_elements(set.iter().map(|y| self.mul(a, y)))
    }

    /// `x⁻¹A = {y : x * y in A}`; may be empty.
    #[inline]
    pub fn preimage(&self, x: usize, set: SubsetMask) -> SubsetMask {
        SubsetMask(self.preimage_table()[x << self.len() | set.index()] as u32)
    }

    /// `table[x << n | A] = x⁻¹A`, built once per groupoid.
    pub(crate) fn preimage_table(&self) -> &[u16] {
        self.preimages.get_or_init(|| {
            let n = self.len();
            let size = 1usize << n;
            let mut out = vec![0u16; n * size];
            for x in 0..n {
                let row = &mut out[x * size..(x + 1) * size];
                // x⁻¹{b} for each single b, then unions by lowest bit.
                let mut single = vec![0u16; n];
                for y in 0..n {
                    single[self.mul(x, y)] |= 1 << y;
                }
                for a in 1..size {
                    let low = a.trailing_zeros() as usize;
                    row[a] = row[a & (a - 1)] | single[low];
                }
            }
            out
        })
    }

    pub fn center(&self) -> SubsetMask {
        let n = self.len();
        SubsetMask::from_elements(
            (0..n).filter(|&c| (0..n).all(|y| self.mul(c, y) == self.mul(y, c))),
        )
    }

    /// `∀a,b ∃x: a * x = b`, i.e. every row is onto.
    pub fn is_left_divisible(&self) -> bool {
        let n = self.len();
        let full = SubsetMask::full(n);
        (0..n).all(|a| SubsetMask::from_elements((0..n).map(|x| self.mul(a, x))) == full)
    }

    pub fn properties(&self) -> PropertyReport {
        PropertyReport {
            associative: self.associative,
            commutative: self.commutative,
            quasigroup: self.quasigroup,
            identity: self.identity,
            center: self.center(),
            left_divisible: self.is_left_divisible(),
        }
    }

    /// Whether `map` sends `x *₁ y` to `map(x) *₂ map(y)` for all pairs.
    pub fn is_homomorphism(&self, target: &Groupoid, map: &[usize]) -> Result<bool> {
        check_map(self, target, map)?;
        let n = self.len();
        Ok((0..n).all(|x| (0..n).all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y]))))
    }

    fn check_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let ij = self.mul(i, j);
                (0..n).all(|k| self.mul(ij, k) == self.mul(i, self.mul(j, k)))
            })
        })
    }

    fn check_latin(&self) -> bool {
        let n = self.len();
        let full = SubsetMask::full(n);
        (0..n).all(|i| {
            SubsetMask::from_elements((0..n).map(|j| self.mul(i, j))) == full
                && SubsetMask::from_elements((0..n).map(|j| self.mul(j, i))) == full
        })
    }
}

pub(crate) fn check_map(source: &Groupoid, target: &Groupoid, map: &[usize]) -> Result<()> {
    if map.len() != source.len() {
        return Err(Error::MapLength {
            expected: source.len(),
            found: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= target.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            n: target.len(),
        });
    }
    Ok(())
}

/// Permutations of `{0,1,2}` in lexicographic order, composed as `(p*q)(i) = p(q(i))`.
fn symmetric3() -> Result<Groupoid> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let names = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    let mut table = Vec::with_capacity(36);
    for p in &perms {
        for q in &perms {
            let r = [p[q[0]], p[q[1]], p[q[2]]];
            table.push(perms.iter().position(|s| *s == r).unwrap());
        }
    }
    Groupoid::from_table("symmetric-3", names, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_quasigroup(g: &Groupoid) -> bool {
        let n = g.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).filter(|&x| g.mul(a, x) == b).count() == 1
                    && (0..n).filter(|&y| g.mul(y, a) == b).count() == 1
            })
        })
    }

    #[test]
    fn cyclic_tables() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        assert_eq!(z3.mul(1, 2), 0);
        let z5 = Groupoid::builtin("cyclic", 5).unwrap();
        assert!(z5.is_quasigroup());
        assert!(z5.is_associative());
        assert!(z5.is_group());
        assert_eq!(z5.identity(), Some(0));
    }

    #[test]
    fn left_zero_is_not_quasigroup() {
        let lz = Groupoid::builtin("left-zero", 2).unwrap();
        assert!(!lz.is_quasigroup());
        assert!(lz.is_associative());
        assert_eq!(lz.mul(1, 0), 1);
        let rz = Groupoid::builtin("right-zero", 2).unwrap();
        assert_eq!(rz.mul(1, 0), 0);
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(
            Groupoid::builtin("dihedral", 4),
            Err(Error::UnknownBuiltin(_))
        ));
        assert!(matches!(
            Groupoid::builtin("cyclic", 0),
            Err(Error::InvalidSize { .. })
        ));
        assert!(matches!(
            Groupoid::builtin("klein-4", 3),
            Err(Error::InvalidSize { .. })
        ));
        assert!(matches!(
            Groupoid::builtin("cyclic", 17),
            Err(Error::InvalidSize { .. })
        ));
    }

    #[test]
    fn centers() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        assert_eq!(z3.center(), SubsetMask::full(3));
        let s3 = Groupoid::builtin("symmetric-3", 6).unwrap();
        assert!(s3.is_group());
        assert!(!s3.is_commutative());
        assert_eq!(s3.identity(), Some(0));
        assert_eq!(s3.center(), SubsetMask::singleton(0));
        let k4 = Groupoid::builtin("klein-4", 4).unwrap();
        assert!(k4.is_group() && k4.is_commutative());
    }

    #[test]
    fn latin_criterion_matches_division() {
        for g in [
            Groupoid::builtin("cyclic", 4).unwrap(),
            Groupoid::builtin("symmetric-3", 6).unwrap(),
            Groupoid::builtin("left-zero", 3).unwrap(),
            Groupoid::builtin("right-zero", 3).unwrap(),
        ] {
            assert_eq!(g.is_quasigroup(), brute_quasigroup(&g), "{}", g.name());
        }
        // every 2-element magma
        for code in 0..16usize {
            let table = (0..4).map(|k| code >> k & 1).collect();
            let g = Groupoid::from_table("m", vec!["p".into(), "q".into()], table).unwrap();
            assert_eq!(g.is_quasigroup(), brute_quasigroup(&g));
        }
    }

    #[test]
    fn parse_json_and_toml() {
        let z2 = r#"{"name":"Z2","elements":["e","a"],"table":[["e","a"],["a","e"]]}"#;
        let g = Groupoid::parse(z2).unwrap();
        assert_eq!(g.identity(), Some(0));
        assert_eq!(g.names(), &["e".to_string(), "a".to_string()]);

        let repeated =
            "name = \"r\"\nelements = [\"p\", \"q\"]\ntable = [[\"p\", \"p\"], [\"q\", \"p\"]]\n";
        let g = Groupoid::parse(repeated).unwrap();
        assert!(!g.is_quasigroup());

        let z3 = r#"{"name":"Z3","elements":["0","1","2"],
            "table":[["0","1","2"],["1","2","0"],["2","0","1"]]}"#;
        let g = Groupoid::parse(z3).unwrap();
        assert!(g.is_associative() && g.is_commutative());
        assert_eq!(
            Groupoid::parse(&serde_json::to_string(&g.to_document()).unwrap()).unwrap(),
            g
        );
    }

    #[test]
    fn parse_errors() {
        let ragged = r#"{"name":"x","elements":["e","a"],"table":[["e","a"],["a"]]}"#;
        assert!(matches!(
            Groupoid::parse(ragged),
            Err(Error::NotSquare { .. })
        ));
        let unknown = r#"{"name":"x","elements":["e","a"],"table":[["e","a"],["a","b"]]}"#;
        assert!(matches!(
            Groupoid::parse(unknown),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(
            Groupoid::parse("{ nope"),
            Err(Error::MalformedDocument(_))
        ));
    }

    #[test]
    fn homomorphisms() {
        let z6 = Groupoid::builtin("cyclic", 6).unwrap();
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        let z2 = Groupoid::builtin("cyclic", 2).unwrap();
        let mod3: Vec<usize> = (0..6).map(|x| x % 3).collect();
        assert!(z6.is_homomorphism(&z3, &mod3).unwrap());
        assert!(!z3.is_homomorphism(&z3, &[1, 2, 0]).unwrap());
        assert!(z2.is_homomorphism(&z2, &[0, 1]).unwrap());
        assert!(matches!(
            z3.is_homomorphism(&z3, &[0, 1]),
            Err(Error::MapLength { .. })
        ));
        assert!(matches!(
            z3.is_homomorphism(&z2, &[0, 1, 2]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn preimages() {
        let z3 = Groupoid::builtin("cyclic", 3).unwrap();
        assert_eq!(
            z3.preimage(1, SubsetMask::singleton(0)),
            SubsetMask::singleton(2)
        );
        let lz = Groupoid::builtin("left-zero", 2).unwrap();
        assert_eq!(lz.preimage(0, SubsetMask::singleton(1)), SubsetMask::EMPTY);
        for x in 0..3 {
            for a in 0..8u32 {
                let direct = SubsetMask::from_elements(
                    (0..3).filter(|&y| SubsetMask(a).contains(z3.mul(x, y))),
                );
                assert_eq!(z3.preimage(x, SubsetMask(a)), direct);
            }
        }
    }
}
