use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

type SparseRow = BTreeMap<usize, BigInt>;

/// An integer row space kept in echelon form, one stored row per pivot
/// column. Insertion eliminates fraction-free (cross-multiplying instead of
/// dividing) and strips the content gcd afterwards, so every computation is
/// exact and coefficients stay small.
pub struct RowSpace {
    ambient: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl RowSpace {
    pub fn new(ambient: usize) -> Self {
        RowSpace { ambient, rows: BTreeMap::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector given by its nonzero coordinates. Returns whether the
    /// span grew, i.e. whether the vector was independent of the rows so far.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) -> bool {
        let mut v: SparseRow = BTreeMap::new();
        for (idx, coef) in entries {
            assert!(idx < self.ambient, "coordinate {idx} outside ambient {}", self.ambient);
            if !coef.is_zero() {
                let slot = v.entry(idx).or_insert_with(BigInt::zero);
                *slot += coef;
                if slot.is_zero() {
                    v.remove(&idx);
                }
            }
        }
        // Stored rows have no entries below their pivots, so sweeping pivots
        // in increasing order never reintroduces an eliminated coordinate.
        for (&pivot, row) in &self.rows {
            if let Some(coef) = v.get(&pivot).cloned() {
                let lead = row[&pivot].clone();
                v = eliminate(&v, &lead, row, &coef);
            }
        }
        if v.is_empty() {
            return false;
        }
        reduce_content(&mut v);
        let pivot = *v.keys().next().expect("nonempty row has a pivot");
        self.rows.insert(pivot, v);
        true
    }
}

/// `lead * v - coef * row`, dropping zeros.
fn eliminate(v: &SparseRow, lead: &BigInt, row: &SparseRow, coef: &BigInt) -> SparseRow {
    let mut out = SparseRow::new();
    for (&idx, a) in v {
        out.insert(idx, a * lead);
    }
    for (&idx, b) in row {
        let delta = b * coef;
        let slot = out.entry(idx).or_insert_with(BigInt::zero);
        *slot -= delta;
        if slot.is_zero() {
            out.remove(&idx);
        }
    }
    out
}

/// Divides through by the gcd of the coefficients and flips signs so the
/// leading coefficient is positive.
fn reduce_content(v: &mut SparseRow) {
    let mut content = BigInt::zero();
    for coef in v.values() {
        content = content.gcd(coef);
    }
    let lead_negative = v.values().next().map(Signed::is_negative).unwrap_or(false);
    if lead_negative {
        content = -content;
    }
    if !content.is_zero() {
        for coef in v.values_mut() {
            *coef /= &content;
        }
    }
}
