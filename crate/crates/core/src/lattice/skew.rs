use std::collections::BTreeSet;

use super::{BoxSet, LatticeError, Point, YoungDiagram};

/// A skew shape sited in the positive orthant: the difference of two nested
/// staircase diagrams. Characterized intrinsically by interval closure, so
/// shapes can be validated without reconstructing the pair of diagrams.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewShape {
    boxes: BoxSet,
}

/// A skew shape considered up to translation, pinned down by placing its
/// lexicographically smallest box at the origin. Coordinates in the
/// remaining axes may then be negative.
#[derive(Clone, PartialEq, Eq)]
pub struct AbstractSkewShape {
    boxes: BoxSet,
}

/// A point strictly between two boxes of the set (componentwise) that the
/// set omits, if any. A finite set is a skew shape exactly when no such gap
/// exists.
pub fn skew_gap(boxes: &BoxSet) -> Option<Point> {
    for a in boxes.iter() {
        for c in boxes.iter() {
            if a == c || !a.leq(c) {
                continue;
            }
            if let Some(b) = first_missing_between(boxes, a, c) {
                return Some(b);
            }
        }
    }
    None
}

pub fn is_skew(boxes: &BoxSet) -> bool {
    skew_gap(boxes).is_none()
}

/// First point of the box `[a, c]` missing from the set, walked with the
/// last axis moving fastest. Stops early, so the cost per call is at most
/// one more than the number of boxes present.
fn first_missing_between(boxes: &BoxSet, a: &Point, c: &Point) -> Option<Point> {
    let dim = a.dim();
    let mut cur = a.clone();
    loop {
        if !boxes.contains(&cur) {
            return Some(cur);
        }
        let mut axis = dim;
        while axis > 0 {
            axis -= 1;
            if cur[axis] < c[axis] {
                cur = cur.shifted(axis, 1);
                break;
            }
            cur = cur.shifted(axis, a[axis] - cur[axis]);
            if axis == 0 {
                return None;
            }
        }
    }
}

impl SkewShape {
    pub fn from_boxes(boxes: BoxSet) -> Result<Self, LatticeError> {
        if let Some(p) = boxes.iter().find(|p| !p.is_nonnegative()) {
            return Err(LatticeError::NegativeCoordinate { point: p.clone() });
        }
        if let Some(witness) = skew_gap(&boxes) {
            return Err(LatticeError::NotSkew { witness });
        }
        Ok(SkewShape { boxes })
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

    /// Rookwise-connected components, each again a skew shape, ordered by
    /// their lexicographically smallest boxes.
    pub fn components(&self) -> Vec<SkewShape> {
        connected_components(&self.boxes)
            .into_iter()
            .map(|c| SkewShape::from_boxes(c).expect("components of a skew shape are skew"))
            .collect()
    }
}

impl std::fmt::Debug for SkewShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SkewShape{:?}", self.boxes)
    }
}

impl AbstractSkewShape {
    pub fn from_boxes(boxes: BoxSet) -> Result<Self, LatticeError> {
        let lex_min = match boxes.lex_min() {
            None => return Err(LatticeError::EmptyShape),
            Some(m) => m.clone(),
        };
        if lex_min != Point::zero(boxes.dim()) {
            return Err(LatticeError::NotNormalized { lex_min });
        }
        if let Some(witness) = skew_gap(&boxes) {
            return Err(LatticeError::NotSkew { witness });
        }
        Ok(AbstractSkewShape { boxes })
    }

    pub fn dim(&self) -> usize {
        self.boxes.dim()
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    /// Always false: abstract shapes are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
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

    /// The translated copy with the origin box moved to `offset`.
    pub fn sited(&self, offset: &Point) -> BoxSet {
        self.boxes.translate(offset)
    }

    pub fn is_connected(&self) -> bool {
        connected_components(&self.boxes).len() <= 1
    }
}

impl std::fmt::Debug for AbstractSkewShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AbstractSkewShape{:?}", self.boxes)
    }
}

/// The boxes of `outer` not in `inner`, which form a skew shape whenever
/// `inner` is contained in `outer`.
pub fn skew_difference(
    outer: &YoungDiagram,
    inner: &YoungDiagram,
) -> Result<SkewShape, LatticeError> {
    if inner.dim() != outer.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: outer.dim(),
            found: inner.dim(),
        });
    }
    if let Some(witness) = inner.iter().find(|b| !outer.contains(b)) {
        return Err(LatticeError::NotNested { witness: witness.clone() });
    }
    let boxes = outer.boxes().difference(inner.boxes())?;
    debug_assert!(is_skew(&boxes));
    Ok(SkewShape { boxes })
}

/// Splits a sited shape into its abstract shape and the offset that restores
/// it: the input equals `shape.sited(offset)`.
pub fn normalize(boxes: &BoxSet) -> Result<(AbstractSkewShape, Point), LatticeError> {
    let offset = match boxes.lex_min() {
        None => return Err(LatticeError::EmptyShape),
        Some(m) => m.clone(),
    };
    let shape = AbstractSkewShape::from_boxes(boxes.translate(&Point::zero(boxes.dim()).sub(&offset)))?;
    Ok((shape, offset))
}

/// Components under rookwise adjacency (boxes differing by one in a single
/// coordinate), ordered by their lexicographically smallest boxes. Works on
/// arbitrary box sets, anywhere in the lattice.
pub fn connected_components(boxes: &BoxSet) -> Vec<BoxSet> {
    let dim = boxes.dim();
    let mut remaining: BTreeSet<Point> = boxes.iter().cloned().collect();
    let mut components = Vec::new();
    while let Some(seed) = remaining.iter().next().cloned() {
        remaining.remove(&seed);
        let mut component = BTreeSet::new();
        let mut stack = vec![seed.clone()];
        component.insert(seed);
        while let Some(p) = stack.pop() {
            for axis in 0..dim {
                for delta in [-1, 1] {
                    let q = p.shifted(axis, delta);
                    if remaining.remove(&q) {
                        component.insert(q.clone());
                        stack.push(q);
                    }
                }
            }
        }
        components.push(BoxSet::new(dim, component).expect("uniform dimension"));
    }
    components
}

/// A pair of boxes with no common upper bound inside the set, if any. Even
/// connected skew shapes can have such pairs; this is a diagnostic for the
/// stricter every-pair reading of connectivity, not a validity check.
pub fn pairwise_joinability_witness(boxes: &BoxSet) -> Option<(Point, Point)> {
    for u in boxes.iter() {
        for v in boxes.iter() {
            if v <= u {
                continue;
            }
            if !boxes.iter().any(|w| u.leq(w) && v.leq(w)) {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

/// The translation carrying `a` onto `b`, when one exists. Empty sets of
/// equal dimension are matched by the zero translation.
pub fn translation_match(a: &BoxSet, b: &BoxSet) -> Option<Point> {
    if a.dim() != b.dim() || a.len() != b.len() {
        return None;
    }
    let t = match (a.lex_min(), b.lex_min()) {
        (None, None) => return Some(Point::zero(a.dim())),
        (Some(ma), Some(mb)) => mb.sub(ma),
        _ => return None,
    };
    if &a.translate(&t) == b {
        Some(t)
    } else {
        None
    }
}
