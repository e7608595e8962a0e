//! Gluing data over a pair of staircase diagrams, the finite module such a
//! datum defines, and exact dimension counts for the commuting matrices
//! acting on it.
//!
//! A datum picks two diagrams and a list of connected abstract skew shapes,
//! each sited once in either diagram. Identifying the two copies of every
//! shape glues the two cyclic modules into one module whose dimension is
//! easy to read off. The interesting quantity is the dimension of the
//! subalgebra generated by the variables acting on the glued module: when it
//! exceeds the module dimension, the datum is a counterexample to the
//! dimension bound in the Gerstenhaber problem.

mod matrices;
mod module;
mod rank;

pub use matrices::{ColumnMap, MatrixTuple};
pub use module::{BasisLabel, GluedModule};
pub use rank::RowSpace;

use thiserror::Error;

use crate::lattice::{AbstractSkewShape, BoxSet, LatticeError, Point, YoungDiagram};

/// One glued shape: an abstract connected skew shape together with the two
/// offsets siting it inside each diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GluedComponent {
    shape: AbstractSkewShape,
    lambda_offset: Point,
    mu_offset: Point,
}

impl GluedComponent {
    pub fn new(
        shape: AbstractSkewShape,
        lambda_offset: Point,
        mu_offset: Point,
    ) -> Result<Self, GluingError> {
        for offset in [&lambda_offset, &mu_offset] {
            if offset.dim() != shape.dim() {
                return Err(LatticeError::DimensionMismatch {
                    expected: shape.dim(),
                    found: offset.dim(),
                }
                .into());
            }
        }
        Ok(GluedComponent { shape, lambda_offset, mu_offset })
    }

    pub fn shape(&self) -> &AbstractSkewShape {
        &self.shape
    }

    pub fn lambda_offset(&self) -> &Point {
        &self.lambda_offset
    }

    pub fn mu_offset(&self) -> &Point {
        &self.mu_offset
    }
}

/// Two staircase diagrams of a common dimension and the skew shapes glued
/// between them. Construction only fixes dimensions; the combinatorial
/// conditions are checked by [`GluingDatum::validate`], so broken data can
/// still be loaded and diagnosed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GluingDatum {
    lambda: YoungDiagram,
    mu: YoungDiagram,
    components: Vec<GluedComponent>,
}

/// Everything that can be wrong with a gluing datum, each case carrying the
/// box or pair of boxes exhibiting it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GluingViolation {
    LambdaContainment { component: usize, witness: Point },
    MuContainment { component: usize, witness: Point },
    LambdaOverlap { first: usize, second: usize, witness: Point },
    MuOverlap { first: usize, second: usize, witness: Point },
    LambdaSaturation { component: usize, inside: Point, outside: Point },
    MuSaturation { component: usize, inside: Point, outside: Point },
    NotConnected { component: usize },
}

impl std::fmt::Display for GluingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GluingViolation::LambdaContainment { component, witness } => {
                write!(f, "component {component} leaves lambda at {witness}")
            }
            GluingViolation::MuContainment { component, witness } => {
                write!(f, "component {component} leaves mu at {witness}")
            }
            GluingViolation::LambdaOverlap { first, second, witness } => {
                write!(f, "components {first} and {second} overlap in lambda at {witness}")
            }
            GluingViolation::MuOverlap { first, second, witness } => {
                write!(f, "components {first} and {second} overlap in mu at {witness}")
            }
            GluingViolation::LambdaSaturation { component, inside, outside } => {
                write!(
                    f,
                    "component {component} is not saturated upward in lambda: it holds {inside} but not {outside}"
                )
            }
            GluingViolation::MuSaturation { component, inside, outside } => {
                write!(
                    f,
                    "component {component} is not saturated upward in mu: it holds {inside} but not {outside}"
                )
            }
            GluingViolation::NotConnected { component } => {
                write!(f, "component {component} is not connected")
            }
        }
    }
}

/// The full list of violations found by [`GluingDatum::validate`]. Empty
/// means the datum satisfies every condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GluingReport {
    violations: Vec<GluingViolation>,
}

impl GluingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[GluingViolation] {
        &self.violations
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum GluingError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("invalid gluing datum: {violation}")]
    InvalidDatum { violation: GluingViolation },
    #[error("column {column} points at row {target}, outside a size-{size} matrix")]
    TargetOutOfRange { column: usize, target: u32, size: usize },
    #[error("matrix {index} has size {found}, expected {expected}")]
    SizeMismatch { index: usize, expected: usize, found: usize },
    #[error("matrices {first} and {second} do not commute")]
    NotCommuting { first: usize, second: usize },
    #[error("a matrix tuple needs at least one matrix")]
    EmptyTuple,
}

/// Outcome of checking one gluing datum: the exact module and algebra
/// dimensions, their margin, and whether the counted values agree with the
/// closed-form predictions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckOutcome {
    pub module_dimension: usize,
    pub algebra_dimension: usize,
    /// `module_dimension - algebra_dimension`; negative exactly for
    /// counterexamples.
    pub margin: i64,
    /// The predicted margin, read off the boxes without any linear algebra.
    pub deficiency: i64,
    pub verdict: Verdict,
    /// Whether margin equals deficiency and the algebra dimension equals the
    /// number of boxes in the union of the two diagrams.
    pub consistent: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Satisfied,
    Counterexample,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Satisfied => write!(f, "satisfied"),
            Verdict::Counterexample => write!(f, "counterexample"),
        }
    }
}

impl GluingDatum {
    pub fn new(
        lambda: YoungDiagram,
        mu: YoungDiagram,
        components: Vec<GluedComponent>,
    ) -> Result<Self, GluingError> {
        let dim = lambda.dim();
        if mu.dim() != dim {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: mu.dim() }.into());
        }
        if let Some(c) = components.iter().find(|c| c.shape.dim() != dim) {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: c.shape.dim() }
                .into());
        }
        Ok(GluingDatum { lambda, mu, components })
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn lambda(&self) -> &YoungDiagram {
        &self.lambda
    }

    pub fn mu(&self) -> &YoungDiagram {
        &self.mu
    }

    pub fn components(&self) -> &[GluedComponent] {
        &self.components
    }

    /// The copy of component `i` inside lambda.
    pub fn sited_lambda(&self, i: usize) -> BoxSet {
        self.components[i].shape.sited(&self.components[i].lambda_offset)
    }

    /// The copy of component `i` inside mu.
    pub fn sited_mu(&self, i: usize) -> BoxSet {
        self.components[i].shape.sited(&self.components[i].mu_offset)
    }

    /// Checks every condition a gluing datum must satisfy and reports all
    /// failures: each sited copy inside its diagram, sited copies pairwise
    /// disjoint, each copy saturated upward within its diagram, and each
    /// shape connected. Saturation is checked one step at a time, which
    /// suffices because diagrams are downward closed.
    pub fn validate(&self) -> GluingReport {
        let mut violations = Vec::new();
        let sited_l: Vec<BoxSet> = (0..self.components.len()).map(|i| self.sited_lambda(i)).collect();
        let sited_m: Vec<BoxSet> = (0..self.components.len()).map(|i| self.sited_mu(i)).collect();
        for (i, component) in self.components.iter().enumerate() {
            if let Some(witness) = sited_l[i].iter().find(|b| !self.lambda.contains(b)) {
                violations.push(GluingViolation::LambdaContainment {
                    component: i,
                    witness: witness.clone(),
                });
            }
            if let Some(witness) = sited_m[i].iter().find(|b| !self.mu.contains(b)) {
                violations.push(GluingViolation::MuContainment {
                    component: i,
                    witness: witness.clone(),
                });
            }
            if let Some((inside, outside)) = saturation_gap(&sited_l[i], &self.lambda) {
                violations.push(GluingViolation::LambdaSaturation { component: i, inside, outside });
            }
            if let Some((inside, outside)) = saturation_gap(&sited_m[i], &self.mu) {
                violations.push(GluingViolation::MuSaturation { component: i, inside, outside });
            }
            if !component.shape.is_connected() {
                violations.push(GluingViolation::NotConnected { component: i });
            }
        }
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                if let Some(witness) = first_common_box(&sited_l[i], &sited_l[j]) {
                    violations.push(GluingViolation::LambdaOverlap {
                        first: i,
                        second: j,
                        witness,
                    });
                }
                if let Some(witness) = first_common_box(&sited_m[i], &sited_m[j]) {
                    violations.push(GluingViolation::MuOverlap { first: i, second: j, witness });
                }
            }
        }
        GluingReport { violations }
    }

    fn first_violation(&self) -> Option<GluingViolation> {
        self.validate().violations.first().cloned()
    }

    pub(crate) fn require_valid(&self) -> Result<(), GluingError> {
        match self.first_violation() {
            Some(violation) => Err(GluingError::InvalidDatum { violation }),
            None => Ok(()),
        }
    }

    /// Total boxes glued, i.e. the sum of the component sizes.
    pub fn glued_boxes(&self) -> usize {
        self.components.iter().map(|c| c.shape.len()).sum()
    }

    /// Dimension of the glued module: both diagrams together, counting each
    /// glued box once.
    pub fn module_dimension(&self) -> i64 {
        self.lambda.len() as i64 + self.mu.len() as i64 - self.glued_boxes() as i64
    }

    /// Boxes common to the two diagrams, minus boxes glued. This equals the
    /// margin of every valid datum, so a negative deficiency promises a
    /// counterexample before any matrix is built.
    pub fn deficiency(&self) -> i64 {
        let overlap = self
            .lambda
            .intersection(&self.mu)
            .expect("dimensions agree by construction")
            .len();
        overlap as i64 - self.glued_boxes() as i64
    }

    /// Dimension of the quotient by the annihilator of the glued module:
    /// the union of the two diagrams. The algebra generated by the variable
    /// actions is exactly that quotient, so this predicts the rank closure.
    pub fn annihilator_dimension(&self) -> usize {
        self.lambda
            .union(&self.mu)
            .expect("dimensions agree by construction")
            .len()
    }

    /// Builds the glued module, runs the exact rank closure over the
    /// commuting variable actions, and compares the counted dimensions with
    /// the predictions.
    pub fn gerstenhaber_check(&self) -> Result<CheckOutcome, GluingError> {
        let module = GluedModule::new(self)?;
        let tuple = module.matrices()?;
        let module_dimension = module.dimension();
        let algebra_dimension = tuple.algebra_dimension();
        let margin = module_dimension as i64 - algebra_dimension as i64;
        let deficiency = self.deficiency();
        let verdict = if margin < 0 { Verdict::Counterexample } else { Verdict::Satisfied };
        let consistent =
            margin == deficiency && algebra_dimension == self.annihilator_dimension();
        Ok(CheckOutcome {
            module_dimension,
            algebra_dimension,
            margin,
            deficiency,
            verdict,
            consistent,
        })
    }
}

/// A one-step saturation failure: a box of `sited` whose successor lies in
/// the diagram but not in `sited`.
fn saturation_gap(sited: &BoxSet, diagram: &YoungDiagram) -> Option<(Point, Point)> {
    for u in sited.iter() {
        for axis in 0..sited.dim() {
            let t = u.shifted(axis, 1);
            if diagram.contains(&t) && !sited.contains(&t) {
                return Some((u.clone(), t));
            }
        }
    }
    None
}

fn first_common_box(a: &BoxSet, b: &BoxSet) -> Option<Point> {
    a.iter().find(|p| b.contains(p)).cloned()
}
