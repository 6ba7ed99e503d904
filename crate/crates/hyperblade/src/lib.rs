//! Exact-arithmetic combinatorics of weighted blade arrangements on the
//! hypersimplex Δ_{k,n}.
//!
//! The crate is organized around a handful of small value types:
//!
//! * [`Subset`] — a subset of {1,…,n} stored as a 64-bit mask.
//! * [`GroundFrame`] — the pair (n, removed set L) with its gapped cyclic order.
//! * [`WeightedBladeArrangement`] — a graded, sparse, exact-rational linear
//!   combination of blade symbols β^{(L)}_J, with frozen symbols normalized to
//!   zero and boundary operators ∂_j / ∂_L / ∂.
//! * [`VertexVector`] — an exact-rational vector in R^{C(n,k)} indexed by
//!   k-subsets, carrying the height machinery (ρ_J, 𝔥_J, the cube operators)
//!   and the planar basis η_J.
//!
//! All arithmetic is exact (`num::BigRational`); there is no floating point
//! anywhere. Everything is an immutable value and safe to share across
//! threads.

pub mod arrangement;
pub mod building_blocks;
pub mod enumeration;
mod error;
pub mod frame;
pub mod heights;
pub mod json;
pub mod linalg;
pub mod subset;
pub mod tropical;

pub use arrangement::{DecoratedOsp, PlateSystem, WeightedBladeArrangement};
pub use building_blocks::TauSpec;
pub use error::{Error, Result};
pub use frame::GroundFrame;
pub use heights::VertexVector;
pub use subset::Subset;

/// Exact rational scalar used throughout.
pub type Rat = num::BigRational;

/// Convenience constructor for integer rationals.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(v.into())
}
