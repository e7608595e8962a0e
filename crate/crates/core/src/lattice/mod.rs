//! Lattice points, box sets, staircase (Young) diagrams, monomial ideals,
//! height maps, and skew shapes.
//!
//! Everything lives in a fixed ambient dimension `n`. Diagrams are finite
//! downward-closed subsets of `N^n`; they correspond bijectively to cofinite
//! monomial ideals (the ideal of monomials outside the diagram). Skew shapes
//! are differences of nested diagrams, and abstract skew shapes are skew
//! shapes translated so their lexicographically smallest box is the origin.

mod boxset;
mod diagram;
mod heights;
mod ideal;
mod point;
mod skew;

pub use boxset::BoxSet;
pub use diagram::YoungDiagram;
pub use heights::{diagram_from_heights, heights_from_diagram, HeightMap};
pub use ideal::{diagram_from_ideal, ideal_from_diagram, MonomialIdeal};
pub use point::{pt, Point};
pub use skew::{
    connected_components, is_skew, normalize, pairwise_joinability_witness, skew_difference,
    skew_gap, translation_match, AbstractSkewShape, SkewShape,
};

use thiserror::Error;

/// Hard cap on the number of boxes any single construction may produce.
/// Guards the enumeration loops in [`diagram_from_ideal`] and
/// [`BoxSet::order_ideal`] against runaway inputs.
pub const BOX_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {point} has a negative coordinate where N^n is required")]
    NegativeCoordinate { point: Point },
    #[error("not downward closed: {present} is in the set but {missing} is not")]
    NotDownwardClosed { present: Point, missing: Point },
    #[error("quotient is infinite: no generator is a pure power along axis {axis}")]
    InfiniteQuotient { axis: usize },
    #[error("inner diagram is not contained in the outer one: {witness} is missing")]
    NotNested { witness: Point },
    #[error("operation requires a non-empty shape")]
    EmptyShape,
    #[error("height map is not antitone: value at {at} is smaller than at {above}")]
    NotAntitone { at: Point, above: Point },
    #[error("height map entries must be positive, found zero at {at}")]
    ZeroHeight { at: Point },
    #[error("box set is not a skew shape: filling it in leaves the gap at {witness}")]
    NotSkew { witness: Point },
    #[error("abstract shape is not normalized: lexicographically smallest box is {lex_min}, not the origin")]
    NotNormalized { lex_min: Point },
    #[error("construction exceeds the {limit}-box limit")]
    TooManyBoxes { limit: usize },
}
