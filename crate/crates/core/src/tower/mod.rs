//! Towers of axis-aligned columns inside three-dimensional staircase
//! diagrams, the partial order and scaffolding on them, floor plans with the
//! max-score dynamic program, and the descent moves that certify the
//! deficiency bound constructively.
//!
//! A tower is the special case of a gluing component list where every glued
//! shape is a 1x1xn column. Everything here is specific to that case: the
//! planar floor-plan encoding, minimal realizations, and the terminating
//! descent to the empty instance.

mod descent;
mod plan;

pub use descent::{
    certify, minimize, peel_maximal, resolve_overlap, shrink_step, Axis, DescentStep,
    DescentTrace, MoveKind, Obligation,
};
pub use plan::{
    floor_plan_of, floor_plan_of_compatible, plan_deficiency, realize, realize_compatible,
    CompatibleFloorPlan, FloorPlan, NortheastPath,
};

use thiserror::Error;

use crate::lattice::{BoxSet, LatticeError, Point, YoungDiagram};

/// Which of the two sides of a compatible object is meant. The first plan
/// realizes to lambda and the second to mu, so the same enum serves both the
/// plan and the tower vocabulary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Lambda,
    Mu,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Lambda => write!(f, "lambda"),
            Side::Mu => write!(f, "mu"),
        }
    }
}

/// A vertical column of boxes: `base`, `base + e3`, up to height many.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerColumn {
    base: Point,
    height: u64,
}

impl TowerColumn {
    pub fn new(base: Point, height: u64) -> Result<Self, TowerError> {
        if base.dim() != 3 {
            return Err(LatticeError::DimensionMismatch { expected: 3, found: base.dim() }.into());
        }
        if !base.is_nonnegative() {
            return Err(LatticeError::NegativeCoordinate { point: base }.into());
        }
        if height == 0 {
            return Err(TowerError::ColumnHeightZero { base });
        }
        Ok(TowerColumn { base, height })
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn boxes(&self) -> BoxSet {
        BoxSet::new(3, (0..self.height as i64).map(|z| self.base.shifted(2, z)))
            .expect("column boxes share the base dimension")
    }

    pub fn contains(&self, p: &Point) -> bool {
        p[0] == self.base[0]
            && p[1] == self.base[1]
            && p[2] >= self.base[2]
            && p[2] < self.base[2] + self.height as i64
    }
}

/// A three-dimensional staircase diagram with named columns inside it.
/// Construction fixes dimensions and positivity; the geometric conditions
/// are checked by [`Tower::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tower {
    lambda: YoungDiagram,
    columns: Vec<TowerColumn>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TowerViolation {
    ColumnOutside { column: usize, witness: Point },
    ColumnsOverlap { first: usize, second: usize, witness: Point },
    NotSaturated { column: usize, inside: Point, outside: Point },
}

impl std::fmt::Display for TowerViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TowerViolation::ColumnOutside { column, witness } => {
                write!(f, "column {column} leaves the diagram at {witness}")
            }
            TowerViolation::ColumnsOverlap { first, second, witness } => {
                write!(f, "columns {first} and {second} overlap at {witness}")
            }
            TowerViolation::NotSaturated { column, inside, outside } => {
                write!(
                    f,
                    "column {column} is not saturated upward: it holds {inside} but not {outside}"
                )
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerReport {
    violations: Vec<TowerViolation>,
}

impl TowerReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[TowerViolation] {
        &self.violations
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TowerError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("column at {base} must have positive height")]
    ColumnHeightZero { base: Point },
    #[error("invalid tower: {violation}")]
    InvalidTower { violation: TowerViolation },
    #[error("invalid compatible tower on the {side} side: {violation}")]
    InvalidSide { side: Side, violation: TowerViolation },
    #[error("tower is not scaffolded: {witness} is outside the scaffold of its columns")]
    NotScaffolded { witness: Point },
    #[error("floor plan points and heights have different lengths: {points} vs {heights}")]
    LengthMismatch { points: usize, heights: usize },
    #[error("floor plan heights must be positive; height {index} is zero")]
    HeightZero { index: usize },
    #[error("floor plan points must be distinct; points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("path vertex {index} is not followed by a unit step right or up")]
    InvalidPathStep { index: usize },
    #[error("shrink of point {index} is blocked: the point is already on the boundary")]
    ShrinkAtWall { index: usize },
    #[error("shrink of point {index} is blocked by point {blocking}")]
    ShrinkBlocked { index: usize, blocking: usize },
    #[error("plans share no point, nothing to resolve")]
    NoOverlap,
    #[error("peel requires a resolved instance, but p{first} equals q{second}")]
    OverlapPresent { first: usize, second: usize },
    #[error("peel requires nested supports, and neither side contains the other")]
    SupportsNotNested,
    #[error("peel of an empty instance")]
    EmptyInstance,
    #[error("descent obligation '{name}' failed after move {index}: {details}")]
    ObligationFailed { index: usize, name: String, details: String },
}

impl Tower {
    pub fn new(lambda: YoungDiagram, columns: Vec<TowerColumn>) -> Result<Self, TowerError> {
        if lambda.dim() != 3 {
            return Err(
                LatticeError::DimensionMismatch { expected: 3, found: lambda.dim() }.into()
            );
        }
        Ok(Tower { lambda, columns })
    }

    pub fn empty() -> Self {
        Tower { lambda: YoungDiagram::empty(3), columns: Vec::new() }
    }

    pub fn lambda(&self) -> &YoungDiagram {
        &self.lambda
    }

    pub fn columns(&self) -> &[TowerColumn] {
        &self.columns
    }

    pub fn total_height(&self) -> u64 {
        self.columns.iter().map(TowerColumn::height).sum()
    }

    /// Containment, pairwise disjointness, and upward saturation of every
    /// column, with witnesses for each failure.
    pub fn validate(&self) -> TowerReport {
        let boxes: Vec<BoxSet> = self.columns.iter().map(TowerColumn::boxes).collect();
        let mut violations = Vec::new();
        for (i, b) in boxes.iter().enumerate() {
            if let Some(witness) = b.iter().find(|p| !self.lambda.contains(p)) {
                violations.push(TowerViolation::ColumnOutside {
                    column: i,
                    witness: witness.clone(),
                });
            }
            if let Some((inside, outside)) = saturation_gap(b, &self.lambda) {
                violations.push(TowerViolation::NotSaturated { column: i, inside, outside });
            }
        }
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if let Some(witness) = boxes[i].iter().find(|p| boxes[j].contains(p)) {
                    violations.push(TowerViolation::ColumnsOverlap {
                        first: i,
                        second: j,
                        witness: witness.clone(),
                    });
                }
            }
        }
        TowerReport { violations }
    }

    pub(crate) fn require_valid(&self) -> Result<(), TowerError> {
        match self.validate().violations.first() {
            Some(v) => Err(TowerError::InvalidTower { violation: v.clone() }),
            None => Ok(()),
        }
    }

    /// The order ideal generated by the columns.
    pub(crate) fn scaffold_ideal(&self) -> Result<YoungDiagram, TowerError> {
        let mut union = BoxSet::empty(3);
        for c in &self.columns {
            union = union.union(&c.boxes()).expect("columns live in dimension 3");
        }
        let ideal = union.order_ideal()?;
        Ok(YoungDiagram::from_boxes(ideal).expect("order ideals are downward closed"))
    }

    /// Whether the diagram is exactly the order ideal of its columns.
    pub fn is_scaffolded(&self) -> Result<bool, TowerError> {
        Ok(self.scaffold_ideal()? == self.lambda)
    }

    /// Shrinks the diagram to the order ideal of the columns, keeping the
    /// columns themselves. The result is scaffolded, still valid, and lies
    /// below the input in the tower order.
    pub fn scaffold(&self) -> Result<Tower, TowerError> {
        self.require_valid()?;
        let lambda = self.scaffold_ideal()?;
        Ok(Tower { lambda, columns: self.columns.clone() })
    }
}

/// A one-step saturation failure: a box of `sited` whose successor lies in
/// the diagram but outside `sited`. One step suffices because diagrams are
/// downward closed.
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

/// One shared column of a compatible tower: the same height sited once in
/// each diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatibleColumn {
    height: u64,
    lambda_base: Point,
    mu_base: Point,
}

impl CompatibleColumn {
    pub fn new(height: u64, lambda_base: Point, mu_base: Point) -> Result<Self, TowerError> {
        let lambda_column = TowerColumn::new(lambda_base, height)?;
        TowerColumn::new(mu_base.clone(), height)?;
        Ok(CompatibleColumn { height, lambda_base: lambda_column.base, mu_base })
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    pub fn lambda_base(&self) -> &Point {
        &self.lambda_base
    }

    pub fn mu_base(&self) -> &Point {
        &self.mu_base
    }
}

/// Two diagrams carrying the same multiset of columns, one copy in each.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatibleTower {
    lambda: YoungDiagram,
    mu: YoungDiagram,
    columns: Vec<CompatibleColumn>,
}

impl CompatibleTower {
    pub fn new(
        lambda: YoungDiagram,
        mu: YoungDiagram,
        columns: Vec<CompatibleColumn>,
    ) -> Result<Self, TowerError> {
        for d in [&lambda, &mu] {
            if d.dim() != 3 {
                return Err(
                    LatticeError::DimensionMismatch { expected: 3, found: d.dim() }.into()
                );
            }
        }
        Ok(CompatibleTower { lambda, mu, columns })
    }

    pub fn empty() -> Self {
        CompatibleTower {
            lambda: YoungDiagram::empty(3),
            mu: YoungDiagram::empty(3),
            columns: Vec::new(),
        }
    }

    pub fn lambda(&self) -> &YoungDiagram {
        &self.lambda
    }

    pub fn mu(&self) -> &YoungDiagram {
        &self.mu
    }

    pub fn columns(&self) -> &[CompatibleColumn] {
        &self.columns
    }

    pub fn total_height(&self) -> u64 {
        self.columns.iter().map(CompatibleColumn::height).sum()
    }

    /// The two sides as plain towers, in the same column order.
    pub fn to_towers(&self) -> (Tower, Tower) {
        let lambda_columns = self
            .columns
            .iter()
            .map(|c| TowerColumn { base: c.lambda_base.clone(), height: c.height })
            .collect();
        let mu_columns = self
            .columns
            .iter()
            .map(|c| TowerColumn { base: c.mu_base.clone(), height: c.height })
            .collect();
        (
            Tower { lambda: self.lambda.clone(), columns: lambda_columns },
            Tower { lambda: self.mu.clone(), columns: mu_columns },
        )
    }

    pub fn validate(&self) -> (TowerReport, TowerReport) {
        let (l, m) = self.to_towers();
        (l.validate(), m.validate())
    }

    pub fn is_valid(&self) -> bool {
        let (l, m) = self.validate();
        l.is_valid() && m.is_valid()
    }

    pub(crate) fn require_valid(&self) -> Result<(), TowerError> {
        let (l, m) = self.validate();
        if let Some(v) = l.violations().first() {
            return Err(TowerError::InvalidSide { side: Side::Lambda, violation: v.clone() });
        }
        if let Some(v) = m.violations().first() {
            return Err(TowerError::InvalidSide { side: Side::Mu, violation: v.clone() });
        }
        Ok(())
    }

    /// Overlap of the diagrams minus total column height, without validity
    /// checks: the raw quantity the partial order compares.
    pub fn deficiency_formula(&self) -> i64 {
        let overlap = self
            .lambda
            .intersection(&self.mu)
            .expect("both diagrams are three-dimensional")
            .len();
        overlap as i64 - self.total_height() as i64
    }
}

/// Deficiency of a valid compatible tower: boxes shared by the two diagrams,
/// minus the boxes glued along the columns. The descent certifier proves
/// this is never negative.
pub fn deficiency_of_tower(tower: &CompatibleTower) -> Result<i64, TowerError> {
    tower.require_valid()?;
    Ok(tower.deficiency_formula())
}

/// Result of comparing two compatible towers in the partial order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TowerOrdering {
    Equal,
    LessEq,
    GreaterEq,
    Incomparable,
}

/// The partial order on compatible towers: both diagrams contained, columns
/// injectable into taller ones (decided by sorting the height lists), and
/// deficiency not larger.
pub fn compare_towers(s: &CompatibleTower, t: &CompatibleTower) -> TowerOrdering {
    let le = tower_le(s, t);
    let ge = tower_le(t, s);
    match (le, ge) {
        (true, true) => TowerOrdering::Equal,
        (true, false) => TowerOrdering::LessEq,
        (false, true) => TowerOrdering::GreaterEq,
        (false, false) => TowerOrdering::Incomparable,
    }
}

fn tower_le(s: &CompatibleTower, t: &CompatibleTower) -> bool {
    s.lambda.is_subset_of(&t.lambda)
        && s.mu.is_subset_of(&t.mu)
        && heights_injectable(&height_list(s), &height_list(t))
        && s.deficiency_formula() <= t.deficiency_formula()
}

fn height_list(t: &CompatibleTower) -> Vec<u64> {
    let mut h: Vec<u64> = t.columns.iter().map(CompatibleColumn::height).collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    h
}

/// Whether each height on the left can be matched to a distinct height on
/// the right at least as large. With both lists sorted descending, pairing
/// by position is optimal, so the check is pointwise.
fn heights_injectable(small: &[u64], large: &[u64]) -> bool {
    small.len() <= large.len() && small.iter().zip(large).all(|(a, b)| a <= b)
}
