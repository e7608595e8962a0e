use std::fmt;
use std::ops::Index;

/// A point of `Z^n`. The derived `Ord` is lexicographic with coordinate 0
/// most significant, which is the tie-breaking order used everywhere in the
/// crate. The componentwise partial order is exposed as [`Point::leq`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    /// The standard basis vector along `axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "axis {axis} out of range for dimension {dim}");
        let mut coords = vec![0; dim];
        coords[axis] = 1;
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in point addition");
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in point subtraction");
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise (divisibility) order: `self` ≤ `other` in every coordinate.
    pub fn leq(&self, other: &Point) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Strictly below in the componentwise order.
    pub fn lt(&self, other: &Point) -> bool {
        self.leq(other) && self != other
    }

    pub fn shifted(&self, axis: usize, delta: i64) -> Point {
        let mut coords = self.0.clone();
        coords[axis] += delta;
        Point(coords)
    }
}

impl Index<usize> for Point {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

/// Convenience constructor used pervasively in tests: `pt([1, 2])`.
pub fn pt<const N: usize>(coords: [i64; N]) -> Point {
    Point(coords.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_is_coordinate_zero_first() {
        assert!(pt([0, 9]) < pt([1, 0]));
        assert!(pt([1, 0]) < pt([1, 1]));
        assert!(pt([0, 0, 0]) < pt([0, 0, 1]));
    }

    #[test]
    fn componentwise_order_is_partial() {
        assert!(pt([1, 2]).leq(&pt([1, 3])));
        assert!(!pt([2, 0]).leq(&pt([1, 3])));
        assert!(!pt([1, 3]).leq(&pt([2, 0])));
        assert!(pt([0, 1]).lt(&pt([1, 1])));
        assert!(!pt([1, 1]).lt(&pt([1, 1])));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(pt([1, 2]).add(&pt([3, 4])), pt([4, 6]));
        assert_eq!(pt([1, 2]).sub(&pt([3, 4])), pt([-2, -2]));
        assert_eq!(Point::unit(3, 1), pt([0, 1, 0]));
    }
}
