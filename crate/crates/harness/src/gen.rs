//! Seeded random instance generators.
//!
//! Every generator is a pure function of its seed: it builds its own stream
//! cipher generator, so the same seed always yields the same instance, and
//! campaigns can fan instances out to workers without sharing state.
//!
//! Gluing data are generated valid by construction. The lambda-side region
//! of a component is a principal filter of the diagram (everything above a
//! chosen box), which is automatically a connected, upward-saturated skew
//! shape; the mu-side copy is placed by scanning for offsets where the
//! translated shape is contained and saturated. A datum that cannot be
//! completed is retried a bounded number of times.

use gerst_core::gluing::{GluedComponent, GluingDatum};
use gerst_core::lattice::{normalize, pt, BoxSet, Point, YoungDiagram};
use gerst_core::tower::{realize, CompatibleFloorPlan, FloorPlan, Tower, TowerColumn};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::enumerate::PlanBounds;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("generation failed after {attempts} attempts: {context}")]
    GenerationFailed { attempts: usize, context: String },
}

/// Bounds for random gluing data: per-axis generator exponents, a cap on the
/// diagram sizes, and a cap on the number of glued components.
#[derive(Clone, Copy, Debug)]
pub struct GluingBounds {
    pub max_coord: i64,
    pub max_boxes: usize,
    pub max_components: usize,
}

impl GluingBounds {
    pub fn new(max_coord: i64, max_boxes: usize, max_components: usize) -> GluingBounds {
        assert!(max_coord >= 0 && max_boxes >= 1, "bounds must be positive");
        GluingBounds { max_coord, max_boxes, max_components }
    }
}

const ATTEMPTS: usize = 64;

/// A random staircase diagram in `n` dimensions with at most `max_boxes`
/// boxes: the order ideal of a few random generator points.
fn random_diagram(rng: &mut ChaCha8Rng, n: usize, bounds: &GluingBounds) -> Option<YoungDiagram> {
    for _ in 0..ATTEMPTS {
        let generators = rng.gen_range(1..=3);
        let points: Vec<Point> = (0..generators)
            .map(|_| {
                Point::new((0..n).map(|_| rng.gen_range(0..=bounds.max_coord)).collect())
            })
            .collect();
        let set = BoxSet::new(n, points).expect("sampled coordinates are nonnegative");
        let ideal = set.order_ideal().expect("sampled boxes stay far below the box limit");
        if ideal.len() <= bounds.max_boxes {
            return Some(YoungDiagram::from_boxes(ideal).expect("order ideals are diagrams"));
        }
    }
    None
}

/// Everything in the diagram above the given box: a principal filter. As a
/// region of the diagram it is connected, upward saturated, and a skew
/// shape, so it is always a legal gluing region.
fn filter_above(diagram: &YoungDiagram, floor: &Point) -> BoxSet {
    BoxSet::new(diagram.dim(), diagram.iter().filter(|u| floor.leq(u)).cloned())
        .expect("filters of a diagram are box sets")
}

/// Offsets at which the shape sits inside `mu`, upward saturated there, and
/// disjoint from the already-used region. The shape's lexicographically
/// smallest box lands on the returned offset.
fn mu_placements(shape: &BoxSet, mu: &YoungDiagram, used: &BoxSet) -> Vec<Point> {
    let (abstract_shape, _) = match normalize(shape) {
        Ok(pair) => pair,
        Err(_) => return Vec::new(),
    };
    let mut found = Vec::new();
    'offsets: for anchor in mu.iter() {
        let sited = abstract_shape.sited(anchor);
        for u in sited.iter() {
            if !mu.contains(u) || used.contains(u) {
                continue 'offsets;
            }
            for axis in 0..mu.dim() {
                let above = u.shifted(axis, 1);
                if mu.contains(&above) && !sited.contains(&above) {
                    continue 'offsets;
                }
            }
        }
        found.push(anchor.clone());
    }
    found
}

/// A random valid gluing datum in `n` variables. Deterministic per seed;
/// fails only if the bounds are so tight that no datum fits within the retry
/// budget.
pub fn random_gluing(
    n: usize,
    bounds: &GluingBounds,
    seed: u64,
) -> Result<GluingDatum, GenError> {
    assert!((1..=4).contains(&n), "the generators cover one to four variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let Some(lambda) = random_diagram(&mut rng, n, bounds) else { continue };
        let Some(mu) = random_diagram(&mut rng, n, bounds) else { continue };
        let target = rng.gen_range(0..=bounds.max_components);
        let mut used_lambda = BoxSet::empty(n);
        let mut used_mu = BoxSet::empty(n);
        let mut components = Vec::new();
        for _ in 0..target {
            let Some(floor) = choose_box(&mut rng, &lambda) else { break };
            let region = filter_above(&lambda, &floor);
            if region.iter().any(|u| used_lambda.contains(u)) {
                continue;
            }
            let (shape, lambda_offset) =
                normalize(&region).expect("filters of a diagram are skew shapes");
            let placements = mu_placements(&region, &mu, &used_mu);
            let Some(mu_offset) = placements.choose(&mut rng).cloned() else { continue };
            let sited_mu = shape.sited(&mu_offset);
            used_lambda = used_lambda.union(&region).expect("same dimension");
            used_mu = used_mu.union(&sited_mu).expect("same dimension");
            components.push(
                GluedComponent::new(shape, lambda_offset, mu_offset)
                    .expect("offsets share the shape's dimension"),
            );
        }
        let datum = GluingDatum::new(lambda, mu, components)
            .expect("sides and components share a dimension");
        if datum.validate().is_valid() {
            return Ok(datum);
        }
        debug_assert!(false, "constructed gluings should validate: {:?}", datum.validate());
    }
    Err(GenError::GenerationFailed {
        attempts: ATTEMPTS,
        context: format!("no valid {n}-variable gluing within {bounds:?}"),
    })
}

fn choose_box(rng: &mut ChaCha8Rng, diagram: &YoungDiagram) -> Option<Point> {
    let boxes: Vec<&Point> = diagram.iter().collect();
    boxes.choose(rng).map(|p| (*p).clone())
}

/// Boxes of the diagram with no diagram box directly above them along any
/// axis. A single-box component may sit exactly at such boxes.
pub fn maximal_boxes(diagram: &YoungDiagram) -> Vec<Point> {
    diagram
        .iter()
        .filter(|u| (0..diagram.dim()).all(|axis| !diagram.contains(&u.shifted(axis, 1))))
        .cloned()
        .collect()
}

/// A random four-variable gluing of single-box components inside the unit
/// hypercube, for the counterexample hunt. Both diagrams are small order
/// ideals in {0,1}^4 and every pairable maximal box is glued, which
/// maximizes the number of identifications and so minimizes the deficiency:
/// the right bias for a search whose goal is deficiency below zero.
pub fn random_point_gluing(seed: u64) -> GluingDatum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corners: Vec<Point> = (1..16u32)
        .map(|mask| {
            Point::new((0..4).map(|axis| i64::from(mask >> axis & 1)).collect())
        })
        .collect();
    let sample_side = |rng: &mut ChaCha8Rng| {
        let generators = rng.gen_range(1..=2);
        let points: Vec<Point> = rand::seq::index::sample(rng, corners.len(), generators)
            .iter()
            .map(|i| corners[i].clone())
            .collect();
        let ideal = BoxSet::new(4, points)
            .expect("corners are four-dimensional")
            .order_ideal()
            .expect("the hypercube is tiny");
        YoungDiagram::from_boxes(ideal).expect("order ideals are diagrams")
    };
    let lambda = sample_side(&mut rng);
    let mu = sample_side(&mut rng);
    let mut lambda_sites = maximal_boxes(&lambda);
    let mut mu_sites = maximal_boxes(&mu);
    lambda_sites.shuffle(&mut rng);
    mu_sites.shuffle(&mut rng);
    let point_shape = gerst_core::lattice::AbstractSkewShape::from_boxes(
        BoxSet::new(4, [Point::zero(4)]).expect("the origin is a box"),
    )
    .expect("a single box is a skew shape");
    let components = lambda_sites
        .into_iter()
        .zip(mu_sites)
        .map(|(b, c)| {
            GluedComponent::new(point_shape.clone(), b, c).expect("offsets live in dimension 4")
        })
        .collect();
    let datum = GluingDatum::new(lambda, mu, components).expect("all parts live in dimension 4");
    debug_assert!(datum.validate().is_valid());
    datum
}

/// A random floor plan: distinct points in the bounding box with random
/// positive heights.
pub fn random_floor_plan(bounds: &PlanBounds, seed: u64) -> FloorPlan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = bounds.cells();
    let r = rng.gen_range(1..=bounds.max_r.min(cells.len()));
    let points: Vec<Point> =
        rand::seq::index::sample(&mut rng, cells.len(), r).iter().map(|i| cells[i].clone()).collect();
    let heights = (0..r).map(|_| rng.gen_range(1..=bounds.max_h)).collect();
    FloorPlan::new(points, heights).expect("sampled points are distinct")
}

/// A random compatible floor plan: distinct points per side, shared heights.
pub fn random_compatible_plan(bounds: &PlanBounds, seed: u64) -> CompatibleFloorPlan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = bounds.cells();
    let r = rng.gen_range(1..=bounds.max_r.min(cells.len()));
    let side = |rng: &mut ChaCha8Rng| -> Vec<Point> {
        rand::seq::index::sample(rng, cells.len(), r).iter().map(|i| cells[i].clone()).collect()
    };
    let p = side(&mut rng);
    let q = side(&mut rng);
    let heights = (0..r).map(|_| rng.gen_range(1..=bounds.max_h)).collect();
    CompatibleFloorPlan::new(p, q, heights).expect("sampled points are distinct per side")
}

/// A random valid scaffolded tower. Half the instances are minimal
/// realizations of random plans; the other half place columns at pairwise
/// incomparable base cells and lift them off the ground, so the scaffold
/// below the columns carries boxes no minimal realization would keep.
pub fn random_scaffolded_tower(bounds: &PlanBounds, max_lift: u64, seed: u64) -> Tower {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_bool(0.5) {
        let plan = random_floor_plan(bounds, rng.gen());
        return realize(&plan).expect("floor plans always realize");
    }
    let mut cells = bounds.cells();
    cells.shuffle(&mut rng);
    let mut antichain: Vec<Point> = Vec::new();
    for cell in cells {
        if antichain.len() >= bounds.max_r {
            break;
        }
        if antichain.iter().all(|kept| !kept.leq(&cell) && !cell.leq(kept)) {
            antichain.push(cell);
        }
    }
    let columns: Vec<TowerColumn> = antichain
        .into_iter()
        .map(|base| {
            let lift = rng.gen_range(0..=max_lift) as i64;
            let height = rng.gen_range(1..=bounds.max_h);
            TowerColumn::new(pt([base.coords()[0], base.coords()[1], lift]), height)
                .expect("heights are positive")
        })
        .collect();
    let mut boxes = BoxSet::empty(3);
    for column in &columns {
        boxes = boxes.union(&column.boxes()).expect("columns live in dimension 3");
    }
    let lambda = YoungDiagram::from_boxes(
        boxes.order_ideal().expect("small towers stay below the box limit"),
    )
    .expect("order ideals are diagrams");
    let tower = Tower::new(lambda, columns).expect("the diagram is three-dimensional");
    debug_assert!(tower.validate().is_valid());
    debug_assert!(tower.is_scaffolded().unwrap());
    tower
}

/// Mixes a campaign seed with an instance cursor, so each instance draws
/// from an independent, reproducible stream. SplitMix64 finalizer.
pub fn derive_seed(seed: u64, cursor: u64) -> u64 {
    let mut z = seed ^ cursor.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
