use super::{BoxSet, LatticeError, Point};

/// A finite downward-closed subset of `N^n`: the staircase diagram of a
/// cofinite monomial ideal. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    boxes: BoxSet,
}

impl YoungDiagram {
    pub fn from_boxes(boxes: BoxSet) -> Result<Self, LatticeError> {
        if let Some(bad) = boxes.iter().find(|p| !p.is_nonnegative()) {
            return Err(LatticeError::NegativeCoordinate { point: bad.clone() });
        }
        if let Some((present, missing)) = boxes.downward_closure_violation() {
            return Err(LatticeError::NotDownwardClosed { present, missing });
        }
        Ok(YoungDiagram { boxes })
    }

    pub fn from_points(
        dim: usize,
        points: impl IntoIterator<Item = Point>,
    ) -> Result<Self, LatticeError> {
        Self::from_boxes(BoxSet::new(dim, points)?)
    }

    /// Internal constructor for sets already known to be diagrams.
    pub(crate) fn trusted(boxes: BoxSet) -> Self {
        debug_assert!(boxes.all_nonnegative() && boxes.is_downward_closed());
        YoungDiagram { boxes }
    }

    pub fn empty(dim: usize) -> Self {
        YoungDiagram { boxes: BoxSet::empty(dim) }
    }

    pub fn dim(&self) -> usize {
        self.boxes.dim()
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

    pub fn boxes(&self) -> &BoxSet {
        &self.boxes
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Point> + '_ {
        self.boxes.iter()
    }

    pub fn is_subset_of(&self, other: &YoungDiagram) -> bool {
        self.boxes.is_subset_of(&other.boxes)
    }

    /// Intersection of two diagrams; downward-closed sets are closed under
    /// intersection, so no re-validation is needed.
    pub fn intersection(&self, other: &YoungDiagram) -> Result<YoungDiagram, LatticeError> {
        Ok(YoungDiagram::trusted(self.boxes.intersection(&other.boxes)?))
    }

    /// Union of two diagrams, again downward closed automatically.
    pub fn union(&self, other: &YoungDiagram) -> Result<YoungDiagram, LatticeError> {
        Ok(YoungDiagram::trusted(self.boxes.union(&other.boxes)?))
    }

    /// Row lengths of a planar diagram, bottom row first. Test helper.
    pub fn row_profile(&self) -> Vec<usize> {
        assert_eq!(self.dim(), 2, "row_profile is for planar diagrams");
        let Some(max) = self.boxes.max_corner() else {
            return Vec::new();
        };
        (0..=max[1])
            .map(|y| self.boxes.iter().filter(|p| p[1] == y).count())
            .collect()
    }
}

impl std::fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "YoungDiagram{:?}", self.boxes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    #[test]
    fn rejects_gaps_and_negatives() {
        let err = YoungDiagram::from_points(2, vec![pt([0, 0]), pt([1, 1])]).unwrap_err();
        assert!(matches!(err, LatticeError::NotDownwardClosed { .. }));
        let err = YoungDiagram::from_points(2, vec![pt([-1, 0])]).unwrap_err();
        assert!(matches!(err, LatticeError::NegativeCoordinate { .. }));
    }

    #[test]
    fn set_arithmetic_counts() {
        let a = YoungDiagram::from_points(2, vec![pt([0, 0]), pt([1, 0])]).unwrap();
        let b = YoungDiagram::from_points(2, vec![pt([0, 0]), pt([0, 1])]).unwrap();
        let inter = a.intersection(&b).unwrap();
        let uni = a.union(&b).unwrap();
        assert_eq!(inter.len(), 1);
        assert_eq!(uni.len(), 3);
        assert_eq!(a.len() + b.len(), inter.len() + uni.len());
        let c = YoungDiagram::empty(3);
        assert!(matches!(a.intersection(&c), Err(LatticeError::DimensionMismatch { .. })));
    }

    #[test]
    fn row_profile_reads_bottom_up() {
        let d = YoungDiagram::from_points(
            2,
            vec![pt([0, 0]), pt([1, 0]), pt([2, 0]), pt([0, 1])],
        )
        .unwrap();
        assert_eq!(d.row_profile(), vec![3, 1]);
    }
}
