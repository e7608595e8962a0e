use std::collections::BTreeMap;

use super::{BoxSet, LatticeError, Point, YoungDiagram, BOX_LIMIT};

/// Positive integer heights over a downward-closed set of planar cells,
/// weakly decreasing along both axes. This is exactly the data of a
/// three-dimensional staircase diagram, recorded as the number of boxes
/// stacked over each ground-floor cell. The same type carries the score
/// tables produced by the floor-plan dynamic program, which satisfy the same
/// monotonicity for free.
#[derive(Clone, PartialEq, Eq)]
pub struct HeightMap {
    entries: BTreeMap<Point, u64>,
}

impl HeightMap {
    pub fn new(entries: impl IntoIterator<Item = (Point, u64)>) -> Result<Self, LatticeError> {
        let mut map: BTreeMap<Point, u64> = BTreeMap::new();
        for (p, h) in entries {
            if p.dim() != 2 {
                return Err(LatticeError::DimensionMismatch { expected: 2, found: p.dim() });
            }
            if !p.is_nonnegative() {
                return Err(LatticeError::NegativeCoordinate { point: p });
            }
            if h == 0 {
                return Err(LatticeError::ZeroHeight { at: p });
            }
            map.insert(p, h);
        }
        for (q, &h) in &map {
            for axis in 0..2 {
                if q[axis] == 0 {
                    continue;
                }
                let p = q.shifted(axis, -1);
                match map.get(&p) {
                    None => {
                        return Err(LatticeError::NotDownwardClosed {
                            present: q.clone(),
                            missing: p,
                        })
                    }
                    Some(&hp) if hp < h => {
                        return Err(LatticeError::NotAntitone { at: p, above: q.clone() })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(HeightMap { entries: map })
    }

    pub fn empty() -> Self {
        HeightMap { entries: BTreeMap::new() }
    }

    /// The height at `p`, zero outside the support.
    pub fn get(&self, p: &Point) -> u64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> + '_ {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> + '_ {
        self.entries.iter().map(|(p, &h)| (p, h))
    }

    /// Number of cells in the support.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all heights, i.e. the box count of the diagram described.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Ragged row form, bottom row first: `rows[y][x]` is the height at
    /// `(x, y)`. The support being downward closed, nothing is lost.
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        let mut rows = Vec::new();
        for y in 0.. {
            let mut row = Vec::new();
            for x in 0.. {
                match self.entries.get(&Point::new(vec![x, y])) {
                    Some(&h) => row.push(h),
                    None => break,
                }
            }
            if row.is_empty() {
                break;
            }
            rows.push(row);
        }
        rows
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self, LatticeError> {
        HeightMap::new(rows.iter().enumerate().flat_map(|(y, row)| {
            row.iter()
                .enumerate()
                .map(move |(x, &h)| (Point::new(vec![x as i64, y as i64]), h))
        }))
    }
}

impl std::fmt::Debug for HeightMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HeightMap{:?}", self.entries)
    }
}

/// Columns of boxes over each support cell: `(x, y)` with height `h` becomes
/// the boxes `(x, y, 0) .. (x, y, h-1)`.
pub fn diagram_from_heights(heights: &HeightMap) -> Result<YoungDiagram, LatticeError> {
    let total = heights.total();
    if total > BOX_LIMIT as u64 {
        return Err(LatticeError::TooManyBoxes { limit: BOX_LIMIT });
    }
    let mut boxes = Vec::with_capacity(total as usize);
    for (p, h) in heights.iter() {
        for z in 0..h as i64 {
            boxes.push(Point::new(vec![p[0], p[1], z]));
        }
    }
    Ok(YoungDiagram::trusted(
        BoxSet::new(3, boxes).expect("uniform dimension"),
    ))
}

/// Inverse of [`diagram_from_heights`]: count the boxes over each cell of the
/// ground floor. Only defined for three-dimensional diagrams.
pub fn heights_from_diagram(diagram: &YoungDiagram) -> Result<HeightMap, LatticeError> {
    if diagram.dim() != 3 {
        return Err(LatticeError::DimensionMismatch { expected: 3, found: diagram.dim() });
    }
    let mut counts: BTreeMap<Point, u64> = BTreeMap::new();
    for b in diagram.iter() {
        *counts.entry(Point::new(vec![b[0], b[1]])).or_insert(0) += 1;
    }
    HeightMap::new(counts)
}
