//! Semigroups of inclusion hyperspaces over finite groupoids.
//!
//! For a finite groupoid `(X, *)` the set `G(X)` of non-empty, upward-closed
//! families of non-empty subsets of `X` carries a lattice structure, an
//! involutive transversality map `⊥`, and an extension `∘` of `*`. This
//! crate materializes all of it for small carriers and analyzes the
//! resulting finite semigroups.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod ground;
pub mod hyperspace;
pub mod literal;
pub mod mask;
pub mod product;
pub mod structure;
pub mod term;

pub use classify::{classify, enumerate_class, ClassFlags, HyperspaceClass};
pub use enumerate::{count_all, dedekind, enumerate_all};
pub use error::{Error, Result};
pub use ground::{Groupoid, GroupoidDocument, PropertyReport};
pub use hyperspace::{Hyperspace, LatticeOp};
pub use mask::SubsetMask;
pub use product::{
    induced_map, left_shift, preimage_shift, product, product_via_base, RightFactor,
};
pub use structure::{subsemigroup_view, CayleyTable, SemigroupView};
