//! Exhaustive enumeration of compatible floor plans inside a bounding box,
//! up to translation.
//!
//! The instances a plan stands for are translation-invariant, so the
//! enumerator canonicalizes: translate the plan so the coordinatewise
//! minimum over both point sets is the origin, then sort the component
//! triples. One representative per class is produced, in sorted order.

use gerst_core::lattice::{pt, Point};
use gerst_core::tower::CompatibleFloorPlan;
use std::collections::BTreeSet;

/// Search-space bounds: up to `max_r` components, point coordinates in
/// `0..box_side` on each axis, heights in `1..=max_h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanBounds {
    pub max_r: usize,
    pub box_side: i64,
    pub max_h: u64,
}

impl PlanBounds {
    pub fn new(max_r: usize, box_side: i64, max_h: u64) -> PlanBounds {
        assert!(max_r >= 1 && box_side >= 1 && max_h >= 1, "bounds must be positive");
        PlanBounds { max_r, box_side, max_h }
    }

    pub fn cells(&self) -> Vec<Point> {
        let mut cells = Vec::new();
        for x in 0..self.box_side {
            for y in 0..self.box_side {
                cells.push(pt([x, y]));
            }
        }
        cells
    }
}

/// One component triple in canonical-key form.
type Triple = ((i64, i64), (i64, i64), u64);

/// The canonical key of a plan: components translated so the coordinatewise
/// minimum over both sides is the origin, sorted lexicographically by
/// (p, q, h). Two plans get the same key exactly when they differ by a
/// translation and a re-listing of their components.
pub fn canonical_key(cp: &CompatibleFloorPlan) -> Vec<Triple> {
    let min_x = cp.p().iter().chain(cp.q()).map(|p| p.coords()[0]).min().unwrap_or(0);
    let min_y = cp.p().iter().chain(cp.q()).map(|p| p.coords()[1]).min().unwrap_or(0);
    let mut triples: Vec<Triple> = cp
        .p()
        .iter()
        .zip(cp.q())
        .zip(cp.heights())
        .map(|((p, q), &h)| {
            (
                (p.coords()[0] - min_x, p.coords()[1] - min_y),
                (q.coords()[0] - min_x, q.coords()[1] - min_y),
                h,
            )
        })
        .collect();
    triples.sort();
    triples
}

/// The canonical representative itself, as a plan.
pub fn canonicalize(cp: &CompatibleFloorPlan) -> CompatibleFloorPlan {
    let triples = canonical_key(cp);
    let p = triples.iter().map(|((x, y), _, _)| pt([*x, *y])).collect();
    let q = triples.iter().map(|(_, (x, y), _)| pt([*x, *y])).collect();
    let h = triples.iter().map(|&(_, _, h)| h).collect();
    CompatibleFloorPlan::new(p, q, h)
        .expect("canonicalization only translates and reorders a valid plan")
}

/// Every compatible floor plan within the bounds, one per translation class,
/// in canonical-key order. Validity is the only filter: plans whose sides
/// overlap are enumerated too, since the downstream moves know how to
/// resolve them.
pub fn enumerate_compatible_plans(bounds: &PlanBounds) -> Vec<CompatibleFloorPlan> {
    let cells = bounds.cells();
    let mut keys: BTreeSet<Vec<Triple>> = BTreeSet::new();
    for r in 1..=bounds.max_r {
        // P as r-subsets (component order is quotiented out by the canonical
        // sort), Q as r-permutations (the pairing with P matters), heights as
        // all r-tuples.
        for p in subsets(&cells, r) {
            for q in permutations(&cells, r) {
                for h in tuples(bounds.max_h, r) {
                    let cp = CompatibleFloorPlan::new(p.clone(), q.clone(), h)
                        .expect("distinct cells and positive heights");
                    keys.insert(canonical_key(&cp));
                }
            }
        }
    }
    keys.into_iter()
        .map(|triples| {
            let p = triples.iter().map(|((x, y), _, _)| pt([*x, *y])).collect();
            let q = triples.iter().map(|(_, (x, y), _)| pt([*x, *y])).collect();
            let h = triples.iter().map(|&(_, _, h)| h).collect();
            CompatibleFloorPlan::new(p, q, h).expect("keys come from valid plans")
        })
        .collect()
}

fn subsets(cells: &[Point], r: usize) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(cells: &[Point], start: usize, r: usize, chosen: &mut Vec<Point>, out: &mut Vec<Vec<Point>>) {
        if chosen.len() == r {
            out.push(chosen.clone());
            return;
        }
        for i in start..cells.len() {
            chosen.push(cells[i].clone());
            rec(cells, i + 1, r, chosen, out);
            chosen.pop();
        }
    }
    rec(cells, 0, r, &mut chosen, &mut out);
    out
}

struct Permutations<'a> {
    cells: &'a [Point],
    indices: Vec<usize>,
    done: bool,
}

impl Permutations<'_> {
    fn next_arrangement(&mut self) -> Option<Vec<Point>> {
        loop {
            if self.done {
                return None;
            }
            let distinct = {
                let mut seen = vec![false; self.cells.len()];
                self.indices.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
            };
            let current = if distinct {
                Some(self.indices.iter().map(|&i| self.cells[i].clone()).collect())
            } else {
                None
            };
            // Odometer step over index tuples.
            let mut pos = self.indices.len();
            loop {
                if pos == 0 {
                    self.done = true;
                    break;
                }
                pos -= 1;
                self.indices[pos] += 1;
                if self.indices[pos] < self.cells.len() {
                    break;
                }
                self.indices[pos] = 0;
            }
            if let Some(arrangement) = current {
                return Some(arrangement);
            }
        }
    }
}

fn permutations(cells: &[Point], r: usize) -> impl Iterator<Item = Vec<Point>> + '_ {
    let mut state = Permutations { cells, indices: vec![0; r], done: false };
    std::iter::from_fn(move || state.next_arrangement())
}

fn tuples(max_h: u64, r: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut current = vec![1u64; r];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = current.clone();
        let mut pos = r;
        loop {
            if pos == 0 {
                done = true;
                break;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] <= max_h {
                break;
            }
            current[pos] = 1;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_unit_box_holds_exactly_one_plan() {
        let plans = enumerate_compatible_plans(&PlanBounds::new(1, 1, 1));
        assert_eq!(plans.len(), 1);
        let only = &plans[0];
        assert_eq!(only.p(), &[pt([0, 0])]);
        assert_eq!(only.q(), &[pt([0, 0])]);
        assert_eq!(only.heights(), &[1]);
        // Overlapping sides are enumerated: validity, not minimality, is the
        // filter.
        assert!(only.overlap().is_some());
    }

    #[test]
    fn single_columns_in_a_two_box_make_nine_classes() {
        // 16 raw placements of (p, q) in a 2x2 box; a translation class of a
        // single pair is determined by the difference q - p, and all eight
        // nonzero differences plus the zero difference occur: nine classes.
        let plans = enumerate_compatible_plans(&PlanBounds::new(1, 2, 1));
        assert_eq!(plans.len(), 9);
    }

    #[test]
    fn enumeration_matches_an_independent_census() {
        // Independent oracle: enumerate ALL ordered placements (p as full
        // permutations too, not subsets) and count distinct canonical keys.
        // The production enumerator must agree.
        let bounds = PlanBounds::new(2, 3, 2);
        let cells = bounds.cells();
        let mut census = BTreeSet::new();
        for r in 1..=bounds.max_r {
            for p in permutations(&cells, r) {
                for q in permutations(&cells, r) {
                    for h in tuples(bounds.max_h, r) {
                        let cp = CompatibleFloorPlan::new(p.clone(), q.clone(), h).unwrap();
                        census.insert(canonical_key(&cp));
                    }
                }
            }
        }
        let plans = enumerate_compatible_plans(&bounds);
        assert_eq!(plans.len(), census.len());
        assert_eq!(plans.len(), 7106);
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let plans = enumerate_compatible_plans(&PlanBounds::new(2, 2, 2));
        let mut seen = BTreeSet::new();
        for cp in &plans {
            let key = canonical_key(cp);
            assert_eq!(canonical_key(&canonicalize(cp)), key);
            // The representative already sits at the origin corner.
            let min_x = cp.p().iter().chain(cp.q()).map(|p| p.coords()[0]).min().unwrap();
            let min_y = cp.p().iter().chain(cp.q()).map(|p| p.coords()[1]).min().unwrap();
            assert_eq!((min_x, min_y), (0, 0));
            assert!(seen.insert(key), "duplicate representative");
        }
    }

    #[test]
    fn translated_plans_share_a_key() {
        let a = CompatibleFloorPlan::new(
            vec![pt([1, 2]), pt([0, 3])],
            vec![pt([2, 2]), pt([1, 3])],
            vec![2, 1],
        )
        .unwrap();
        let b = CompatibleFloorPlan::new(
            vec![pt([0, 1]), pt([1, 0])],
            vec![pt([1, 1]), pt([2, 0])],
            vec![1, 2],
        )
        .unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }
}
