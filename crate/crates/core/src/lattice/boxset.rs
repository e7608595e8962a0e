use std::collections::BTreeSet;

use super::{LatticeError, Point, BOX_LIMIT};

/// A finite set of lattice points sharing one ambient dimension. The
/// dimension is carried explicitly so the empty set is unambiguous.
/// Iteration order is always lexicographic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoxSet {
    dim: usize,
    boxes: BTreeSet<Point>,
}

impl BoxSet {
    pub fn new(dim: usize, boxes: impl IntoIterator<Item = Point>) -> Result<Self, LatticeError> {
        let mut set = BTreeSet::new();
        for b in boxes {
            if b.dim() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, found: b.dim() });
            }
            set.insert(b);
        }
        Ok(BoxSet { dim, boxes: set })
    }

    pub fn empty(dim: usize) -> Self {
        BoxSet { dim, boxes: BTreeSet::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.boxes.contains(p)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Point> + '_ {
        self.boxes.iter()
    }

    /// Lexicographically smallest box, if any.
    pub fn lex_min(&self) -> Option<&Point> {
        self.boxes.first()
    }

    /// Componentwise minimum over all boxes. `None` when empty.
    pub fn min_corner(&self) -> Option<Point> {
        self.fold_corner(i64::min)
    }

    /// Componentwise maximum over all boxes. `None` when empty.
    pub fn max_corner(&self) -> Option<Point> {
        self.fold_corner(i64::max)
    }

    fn fold_corner(&self, pick: fn(i64, i64) -> i64) -> Option<Point> {
        let mut it = self.boxes.iter();
        let first = it.next()?.coords().to_vec();
        let folded = it.fold(first, |mut acc, p| {
            for (a, &c) in acc.iter_mut().zip(p.coords()) {
                *a = pick(*a, c);
            }
            acc
        });
        Some(Point::new(folded))
    }

    pub fn translate(&self, offset: &Point) -> BoxSet {
        assert_eq!(self.dim, offset.dim(), "dimension mismatch in translation");
        BoxSet {
            dim: self.dim,
            boxes: self.boxes.iter().map(|p| p.add(offset)).collect(),
        }
    }

    pub fn all_nonnegative(&self) -> bool {
        self.boxes.iter().all(Point::is_nonnegative)
    }

    pub fn is_subset_of(&self, other: &BoxSet) -> bool {
        self.dim == other.dim && self.boxes.is_subset(&other.boxes)
    }

    pub fn union(&self, other: &BoxSet) -> Result<BoxSet, LatticeError> {
        self.check_dim(other)?;
        Ok(BoxSet { dim: self.dim, boxes: self.boxes.union(&other.boxes).cloned().collect() })
    }

    pub fn intersection(&self, other: &BoxSet) -> Result<BoxSet, LatticeError> {
        self.check_dim(other)?;
        Ok(BoxSet {
            dim: self.dim,
            boxes: self.boxes.intersection(&other.boxes).cloned().collect(),
        })
    }

    pub fn difference(&self, other: &BoxSet) -> Result<BoxSet, LatticeError> {
        self.check_dim(other)?;
        Ok(BoxSet { dim: self.dim, boxes: self.boxes.difference(&other.boxes).cloned().collect() })
    }

    fn check_dim(&self, other: &BoxSet) -> Result<(), LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// First violation of downward closure, as (present box, missing
    /// predecessor). Checking one-step predecessors suffices: if every box
    /// has all its predecessors, induction closes the set downward.
    pub fn downward_closure_violation(&self) -> Option<(Point, Point)> {
        for p in &self.boxes {
            for axis in 0..self.dim {
                if p[axis] > 0 {
                    let pred = p.shifted(axis, -1);
                    if !self.boxes.contains(&pred) {
                        return Some((p.clone(), pred));
                    }
                }
            }
        }
        None
    }

    pub fn is_downward_closed(&self) -> bool {
        self.downward_closure_violation().is_none()
    }

    /// Downward closure: every point of `N^n` lying componentwise below a
    /// member. Requires the set to sit inside `N^n`.
    pub fn order_ideal(&self) -> Result<BoxSet, LatticeError> {
        if let Some(bad) = self.boxes.iter().find(|p| !p.is_nonnegative()) {
            return Err(LatticeError::NegativeCoordinate { point: bad.clone() });
        }
        let mut closed: BTreeSet<Point> = BTreeSet::new();
        for top in &self.boxes {
            let volume: u128 = top.coords().iter().map(|&c| c as u128 + 1).product();
            if volume > BOX_LIMIT as u128 {
                return Err(LatticeError::TooManyBoxes { limit: BOX_LIMIT });
            }
            let mut cursor = vec![0i64; self.dim];
            loop {
                closed.insert(Point::new(cursor.clone()));
                if closed.len() > BOX_LIMIT {
                    return Err(LatticeError::TooManyBoxes { limit: BOX_LIMIT });
                }
                // odometer over the box [0, top]
                let mut axis = 0;
                loop {
                    if axis == self.dim {
                        break;
                    }
                    cursor[axis] += 1;
                    if cursor[axis] <= top[axis] {
                        break;
                    }
                    cursor[axis] = 0;
                    axis += 1;
                }
                if axis == self.dim {
                    break;
                }
            }
        }
        Ok(BoxSet { dim: self.dim, boxes: closed })
    }
}

impl std::fmt::Debug for BoxSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BoxSet(n={}, {:?})", self.dim, self.boxes)
    }
}
