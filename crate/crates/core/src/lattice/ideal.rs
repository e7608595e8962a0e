use std::collections::BTreeSet;

use super::{BoxSet, LatticeError, Point, YoungDiagram, BOX_LIMIT};

/// A monomial ideal in `n` variables, stored as its unique minimal antichain
/// of generator exponents. The constructor discards redundant generators, so
/// equal ideals always compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    dim: usize,
    generators: BTreeSet<Point>,
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: impl IntoIterator<Item = Point>) -> Result<Self, LatticeError> {
        let mut raw: Vec<Point> = Vec::new();
        for g in gens {
            if g.dim() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, found: g.dim() });
            }
            if !g.is_nonnegative() {
                return Err(LatticeError::NegativeCoordinate { point: g });
            }
            raw.push(g);
        }
        let mut minimal = BTreeSet::new();
        'outer: for g in &raw {
            for other in &raw {
                if other != g && other.leq(g) {
                    continue 'outer;
                }
            }
            minimal.insert(g.clone());
        }
        Ok(MonomialIdeal { dim, generators: minimal })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> impl Iterator<Item = &Point> + '_ {
        self.generators.iter()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Whether the monomial with this exponent lies in the ideal, i.e. some
    /// generator divides it.
    pub fn contains_exponent(&self, p: &Point) -> bool {
        self.generators.iter().any(|g| g.leq(p))
    }

    /// The quotient by the ideal is finite-dimensional exactly when every
    /// axis carries a pure-power generator.
    pub fn cofiniteness_violation(&self) -> Option<usize> {
        (0..self.dim).find(|&axis| {
            !self
                .generators
                .iter()
                .any(|g| g.coords().iter().enumerate().all(|(j, &c)| j == axis || c == 0))
        })
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofiniteness_violation().is_none()
    }
}

impl std::fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MonomialIdeal(n={}, gens={:?})", self.dim, self.generators)
    }
}

/// The staircase diagram of a cofinite monomial ideal: all exponents outside
/// the ideal. Walks outward from the origin; the complement of a monomial
/// ideal is downward closed, so every box is reachable by unit steps.
pub fn diagram_from_ideal(ideal: &MonomialIdeal) -> Result<YoungDiagram, LatticeError> {
    if let Some(axis) = ideal.cofiniteness_violation() {
        return Err(LatticeError::InfiniteQuotient { axis });
    }
    let dim = ideal.dim();
    let origin = Point::zero(dim);
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut stack = Vec::new();
    if !ideal.contains_exponent(&origin) {
        seen.insert(origin.clone());
        stack.push(origin);
    }
    while let Some(p) = stack.pop() {
        for axis in 0..dim {
            let q = p.shifted(axis, 1);
            if !seen.contains(&q) && !ideal.contains_exponent(&q) {
                seen.insert(q.clone());
                if seen.len() > BOX_LIMIT {
                    return Err(LatticeError::TooManyBoxes { limit: BOX_LIMIT });
                }
                stack.push(q);
            }
        }
    }
    Ok(YoungDiagram::trusted(BoxSet::new(dim, seen).expect("uniform dimension")))
}

/// The minimal generating antichain of the ideal of monomials outside the
/// diagram: the points just outside whose predecessors all lie inside.
pub fn ideal_from_diagram(diagram: &YoungDiagram) -> MonomialIdeal {
    let dim = diagram.dim();
    if diagram.is_empty() {
        return MonomialIdeal::new(dim, vec![Point::zero(dim)]).expect("origin is a valid generator");
    }
    let mut candidates: BTreeSet<Point> = BTreeSet::new();
    for b in diagram.iter() {
        for axis in 0..dim {
            candidates.insert(b.shifted(axis, 1));
        }
    }
    let gens = candidates.into_iter().filter(|c| {
        !diagram.contains(c)
            && (0..dim).all(|axis| c[axis] == 0 || diagram.contains(&c.shifted(axis, -1)))
    });
    MonomialIdeal::new(dim, gens).expect("generators inherit dimension and sign")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    fn ideal<const N: usize>(gens: &[[i64; N]]) -> MonomialIdeal {
        MonomialIdeal::new(N, gens.iter().map(|&g| pt(g))).unwrap()
    }

    #[test]
    fn constructor_minimalizes() {
        let i = ideal(&[[2, 0], [0, 2], [2, 1], [3, 3]]);
        let gens: Vec<_> = i.generators().cloned().collect();
        assert_eq!(gens, vec![pt([0, 2]), pt([2, 0])]);
    }

    #[test]
    fn membership_is_divisibility() {
        let i = ideal(&[[2, 0], [0, 2]]);
        assert!(i.contains_exponent(&pt([2, 5])));
        assert!(i.contains_exponent(&pt([0, 2])));
        assert!(!i.contains_exponent(&pt([1, 1])));
    }

    #[test]
    fn cofiniteness_needs_pure_powers() {
        assert!(ideal(&[[3, 0], [0, 2]]).is_cofinite());
        let i = ideal(&[[1, 1]]);
        assert_eq!(i.cofiniteness_violation(), Some(0));
        assert!(matches!(
            diagram_from_ideal(&i),
            Err(LatticeError::InfiniteQuotient { axis: 0 })
        ));
    }

    #[test]
    fn maximal_ideal_gives_single_box() {
        let d = diagram_from_ideal(&ideal(&[[1, 0], [0, 1]])).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.contains(&pt([0, 0])));
    }

    #[test]
    fn unit_ideal_gives_empty_diagram() {
        let d = diagram_from_ideal(&ideal(&[[0, 0]])).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn staircase_16_boxes() {
        // Generators (5,0),(4,1),(2,3),(1,4),(0,5): rows 5,4,4,2,1 bottom-up.
        let d = diagram_from_ideal(&ideal(&[[5, 0], [4, 1], [2, 3], [1, 4], [0, 5]])).unwrap();
        assert_eq!(d.len(), 16);
        assert_eq!(d.row_profile(), vec![5, 4, 4, 2, 1]);
    }

    #[test]
    fn four_variable_square_plus_plane() {
        // Squares of the first two variables plus the last two variables:
        // only the origin and the first two unit boxes survive.
        let d = diagram_from_ideal(&ideal(&[
            [2, 0, 0, 0],
            [1, 1, 0, 0],
            [0, 2, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ]))
        .unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.contains(&pt([0, 0, 0, 0])));
        assert!(d.contains(&pt([1, 0, 0, 0])));
        assert!(d.contains(&pt([0, 1, 0, 0])));
    }

    #[test]
    fn generators_from_single_box() {
        let d = YoungDiagram::from_points(2, vec![pt([0, 0])]).unwrap();
        let i = ideal_from_diagram(&d);
        let gens: Vec<_> = i.generators().cloned().collect();
        assert_eq!(gens, vec![pt([0, 1]), pt([1, 0])]);
    }

    #[test]
    fn generators_from_empty_diagram() {
        let i = ideal_from_diagram(&YoungDiagram::empty(3));
        let gens: Vec<_> = i.generators().cloned().collect();
        assert_eq!(gens, vec![pt([0, 0, 0])]);
    }

    #[test]
    fn staircase_roundtrip_recovers_generators() {
        let i = ideal(&[[5, 0], [4, 1], [2, 3], [1, 4], [0, 5]]);
        let back = ideal_from_diagram(&diagram_from_ideal(&i).unwrap());
        assert_eq!(back, i);
    }
}
