use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use super::rank::RowSpace;
use super::GluingError;

/// A square 0/1 matrix with at most one 1 per column, stored as the partial
/// map column index to row index. Every variable acts on a glued module by
/// such a matrix, and the form is closed under products, so whole word
/// closures can be computed without general matrix arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColumnMap {
    targets: Vec<Option<u32>>,
}

impl ColumnMap {
    pub fn new(targets: Vec<Option<u32>>) -> Result<Self, GluingError> {
        let size = targets.len();
        for (column, target) in targets.iter().enumerate() {
            if let Some(t) = *target {
                if t as usize >= size {
                    return Err(GluingError::TargetOutOfRange { column, target: t, size });
                }
            }
        }
        Ok(ColumnMap { targets })
    }

    pub fn identity(size: usize) -> Self {
        ColumnMap { targets: (0..size as u32).map(Some).collect() }
    }

    pub fn zero(size: usize) -> Self {
        ColumnMap { targets: vec![None; size] }
    }

    /// The matrix unit `E[row, col]`, sending basis vector `col` to `row`.
    pub fn matrix_unit(size: usize, row: usize, col: usize) -> Self {
        assert!(row < size && col < size, "matrix unit ({row},{col}) outside size {size}");
        let mut targets = vec![None; size];
        targets[col] = Some(row as u32);
        ColumnMap { targets }
    }

    pub fn size(&self) -> usize {
        self.targets.len()
    }

    /// Where the given basis vector is sent, if not to zero.
    pub fn target(&self, col: usize) -> Option<u32> {
        self.targets[col]
    }

    /// The matrix product `self * rhs`, i.e. apply `rhs` first.
    pub fn compose(&self, rhs: &ColumnMap) -> ColumnMap {
        assert_eq!(self.size(), rhs.size(), "composing maps of different sizes");
        ColumnMap {
            targets: rhs
                .targets
                .iter()
                .map(|t| t.and_then(|mid| self.targets[mid as usize]))
                .collect(),
        }
    }

    pub fn commutes_with(&self, other: &ColumnMap) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn is_zero(&self) -> bool {
        self.targets.iter().all(Option::is_none)
    }

    /// The nonzero positions as `(row, col)` pairs in column order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets
            .iter()
            .enumerate()
            .filter_map(|(col, t)| t.map(|row| (row as usize, col)))
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        let mut dense = vec![vec![0u8; n]; n];
        for (row, col) in self.entries() {
            dense[row][col] = 1;
        }
        dense
    }

    /// The matrix flattened row-major into coordinates of `k^(d*d)`.
    fn flat_entries(&self) -> Vec<(usize, BigInt)> {
        self.entries().map(|(row, col)| (row * self.size() + col, BigInt::one())).collect()
    }
}

impl std::fmt::Debug for ColumnMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ColumnMap[")?;
        for (col, t) in self.targets.iter().enumerate() {
            if col > 0 {
                write!(f, " ")?;
            }
            match t {
                Some(row) => write!(f, "{col}->{row}")?,
                None => write!(f, "{col}->.")?,
            }
        }
        write!(f, "]")
    }
}

/// A tuple of pairwise commuting column maps of one common size: the data of
/// finitely many commuting matrices of the restricted 0/1 form.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixTuple {
    size: usize,
    maps: Vec<ColumnMap>,
}

impl MatrixTuple {
    pub fn new(maps: Vec<ColumnMap>) -> Result<Self, GluingError> {
        let size = match maps.first() {
            None => return Err(GluingError::EmptyTuple),
            Some(m) => m.size(),
        };
        for (index, m) in maps.iter().enumerate() {
            if m.size() != size {
                return Err(GluingError::SizeMismatch { index, expected: size, found: m.size() });
            }
        }
        for i in 0..maps.len() {
            for j in i + 1..maps.len() {
                if !maps[i].commutes_with(&maps[j]) {
                    return Err(GluingError::NotCommuting { first: i, second: j });
                }
            }
        }
        Ok(MatrixTuple { size, maps })
    }

    /// Matrix size, i.e. the dimension of the module the tuple acts on.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn maps(&self) -> &[ColumnMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Dimension of the unital algebra the tuple generates inside the full
    /// matrix algebra, by exact rank closure: breadth-first over words,
    /// composing onward only from words whose matrices grew the span.
    /// Dropping the others loses nothing, because a word that is a linear
    /// combination of kept words stays a combination of them after
    /// multiplying every term by the next generator.
    pub fn algebra_dimension(&self) -> usize {
        if self.size == 0 {
            return 0;
        }
        let mut span = RowSpace::new(self.size * self.size);
        let mut seen: HashSet<ColumnMap> = HashSet::new();
        let mut frontier: VecDeque<ColumnMap> = VecDeque::new();
        let identity = ColumnMap::identity(self.size);
        span.insert(identity.flat_entries());
        seen.insert(identity.clone());
        frontier.push_back(identity);
        while let Some(word) = frontier.pop_front() {
            for generator in &self.maps {
                let next = word.compose(generator);
                if !seen.insert(next.clone()) {
                    continue;
                }
                if span.insert(next.flat_entries()) {
                    frontier.push_back(next);
                }
            }
        }
        span.rank()
    }
}

impl std::fmt::Debug for MatrixTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixTuple")
            .field("size", &self.size)
            .field("maps", &self.maps)
            .finish()
    }
}
