//! Exact combinatorics for the commuting-matrix dimension problem.
//!
//! The library is organised in three layers:
//!
//! * [`lattice`]: finite staircase diagrams in `N^n`, monomial ideals, skew
//!   shapes, and height maps, together with the bijections between them.
//! * [`gluing`]: gluing data that identify a skew region of one diagram with
//!   a translated copy inside another, the module this produces, its
//!   multiplication matrices, and the exact dimension of the unital algebra
//!   those matrices generate.
//! * [`tower`]: the three-dimensional tower picture, its two-dimensional
//!   floor plans, the score tables relating them, and the descent moves that
//!   certify the deficiency of a compatible pair is non-negative.
//!
//! All arithmetic is exact: sets of lattice points for the combinatorics and
//! arbitrary-precision integers for the linear algebra. No floats anywhere.

pub mod gluing;
pub mod lattice;
pub mod tower;
