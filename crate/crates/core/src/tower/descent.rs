use super::plan::{realize, realize_compatible, CompatibleFloorPlan, FloorPlan};
use super::{compare_towers, CompatibleTower, Side, TowerError, TowerOrdering};
use crate::lattice::YoungDiagram;

/// The two planar directions a point can be pulled back along.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
        }
    }
}

/// One inequality a descent move promises, evaluated on the actual
/// realizations rather than assumed. Required obligations are the ones the
/// certificate stands on; the rest are diagnostics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Obligation {
    pub name: &'static str,
    pub required: bool,
    pub holds: bool,
    pub details: String,
}

/// Which move a descent step applied, with enough indices to replay it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MoveKind {
    Shrink { side: Side, index: usize, axis: Axis },
    ResolveOverlap { p_index: usize, q_index: usize, decremented: usize, deleted: bool },
    Peel { side: Side, indices: Vec<usize>, deleted: Vec<usize> },
}

impl std::fmt::Display for MoveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MoveKind::Shrink { side, index, axis } => {
                write!(f, "shrink {side}[{index}] one step along {axis}")
            }
            MoveKind::ResolveOverlap { p_index, q_index, decremented, deleted } => {
                write!(
                    f,
                    "resolve overlap lambda[{p_index}] = mu[{q_index}]: decrement height {decremented}"
                )?;
                if *deleted {
                    write!(f, " and delete it")?;
                }
                Ok(())
            }
            MoveKind::Peel { side, indices, deleted } => {
                write!(f, "peel {side} at maximal indices {indices:?}")?;
                if !deleted.is_empty() {
                    write!(f, ", deleting {deleted:?}")?;
                }
                Ok(())
            }
        }
    }
}

/// One applied move together with the instances around it and the checked
/// obligations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DescentStep {
    pub move_kind: MoveKind,
    pub before: CompatibleFloorPlan,
    pub after: CompatibleFloorPlan,
    pub obligations: Vec<Obligation>,
}

impl DescentStep {
    pub fn all_required_hold(&self) -> bool {
        self.required_failure().is_none()
    }

    pub fn required_failure(&self) -> Option<&Obligation> {
        self.obligations.iter().find(|o| o.required && !o.holds)
    }
}

/// The full record of a descent: a chain of steps whose final instance is
/// empty, which together witness that the starting deficiency was not
/// negative.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DescentTrace {
    steps: Vec<DescentStep>,
}

impl DescentTrace {
    pub fn steps(&self) -> &[DescentStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn push_checked(&mut self, step: DescentStep) -> Result<(), TowerError> {
        if let Some(o) = step.required_failure() {
            return Err(TowerError::ObligationFailed {
                index: self.steps.len(),
                name: o.name.to_string(),
                details: o.details.clone(),
            });
        }
        self.steps.push(step);
        Ok(())
    }
}

/// Moves one point a unit step toward the origin. Allowed only when the
/// point is off the wall and no other point of the same plan sits in the
/// previous lane at least as far out along the other axis; that condition is
/// exactly what makes the realization shrink strictly.
pub fn shrink_step(plan: &FloorPlan, index: usize, axis: Axis) -> Result<FloorPlan, TowerError> {
    assert!(index < plan.len(), "shrink index out of range");
    let moving = axis.index();
    let fixed = 1 - moving;
    let p = &plan.points()[index];
    if p[moving] == 0 {
        return Err(TowerError::ShrinkAtWall { index });
    }
    for (j, other) in plan.points().iter().enumerate() {
        if other[moving] == p[moving] - 1 && other[fixed] >= p[fixed] {
            return Err(TowerError::ShrinkBlocked { index, blocking: j });
        }
    }
    let mut points = plan.points().to_vec();
    points[index] = p.shifted(moving, -1);
    Ok(FloorPlan::new(points, plan.heights().to_vec())
        .expect("the blocker check rules out coincident points"))
}

/// Resolves the first point shared by the two sides by decrementing the
/// shared height whose side scores lower at the shared point (the lambda
/// side on ties loses nothing by symmetry; the rule follows the higher
/// score). A height hitting zero deletes its triple from both sides.
pub fn resolve_overlap(cp: &CompatibleFloorPlan) -> Result<DescentStep, TowerError> {
    let (p_index, q_index) = cp.overlap().ok_or(TowerError::NoOverlap)?;
    let p_score = cp.p_plan().max_score_table().get(&cp.p()[p_index]);
    let q_score = cp.q_plan().max_score_table().get(&cp.q()[q_index]);
    let decremented = if p_score >= q_score { q_index } else { p_index };
    let mut p = cp.p().to_vec();
    let mut q = cp.q().to_vec();
    let mut heights = cp.heights().to_vec();
    heights[decremented] -= 1;
    let deleted = heights[decremented] == 0;
    if deleted {
        p.remove(decremented);
        q.remove(decremented);
        heights.remove(decremented);
    }
    let after = CompatibleFloorPlan::new(p, q, heights)
        .expect("decrementing a height preserves plan invariants");
    let before_towers = realized(cp);
    let after_towers = realized(&after);
    let before_shared = shared_boxes(&before_towers);
    let after_shared = shared_boxes(&after_towers);
    let obligations = vec![
        Obligation {
            name: "intersection-drops",
            required: true,
            holds: after_shared < before_shared,
            details: format!("shared boxes {before_shared} -> {after_shared}"),
        },
        descent_obligation(&after_towers, &before_towers),
    ];
    Ok(DescentStep {
        move_kind: MoveKind::ResolveOverlap { p_index, q_index, decremented, deleted },
        before: cp.clone(),
        after,
        obligations,
    })
}

/// Decrements the shared heights at every index whose point on the larger
/// side is a maximal cell of that side's support, deleting exhausted
/// triples. This is the inductive step of the deficiency bound: it strictly
/// shrinks both diagrams while the deficiency does not increase.
pub fn peel_maximal(cp: &CompatibleFloorPlan) -> Result<DescentStep, TowerError> {
    if cp.is_empty() {
        return Err(TowerError::EmptyInstance);
    }
    if let Some((first, second)) = cp.overlap() {
        return Err(TowerError::OverlapPresent { first, second });
    }
    let p_support = cp.p_plan().support();
    let q_support = cp.q_plan().support();
    let side = if p_support.is_subset_of(&q_support) {
        Side::Mu
    } else if q_support.is_subset_of(&p_support) {
        Side::Lambda
    } else {
        return Err(TowerError::SupportsNotNested);
    };
    let plan = side_plan(cp, side);
    let support = plan.support();
    let points = match side {
        Side::Lambda => cp.p(),
        Side::Mu => cp.q(),
    };
    let indices: Vec<usize> = (0..cp.len())
        .filter(|&k| {
            !support.contains(&points[k].shifted(0, 1))
                && !support.contains(&points[k].shifted(1, 1))
        })
        .collect();
    assert!(!indices.is_empty(), "a nonempty support has maximal cells, and each is a plan point");
    let border_gap = plan.border().iter().find(|c| !points.contains(c)).cloned();

    let mut p = cp.p().to_vec();
    let mut q = cp.q().to_vec();
    let mut heights = cp.heights().to_vec();
    for &k in &indices {
        heights[k] -= 1;
    }
    let deleted: Vec<usize> = indices.iter().copied().filter(|&k| heights[k] == 0).collect();
    for &k in deleted.iter().rev() {
        p.remove(k);
        q.remove(k);
        heights.remove(k);
    }
    let after = CompatibleFloorPlan::new(p, q, heights)
        .expect("decrementing heights preserves plan invariants");

    let before_towers = realized(cp);
    let after_towers = realized(&after);
    let obligations = vec![
        Obligation {
            name: "border-containment",
            required: false,
            holds: border_gap.is_none(),
            details: match border_gap {
                Some(cell) => format!("border cell {cell} is not a {side} point"),
                None => format!("the {side} border lies in its points"),
            },
        },
        strict_shrink_obligation(Side::Lambda, after_towers.lambda(), before_towers.lambda()),
        strict_shrink_obligation(Side::Mu, after_towers.mu(), before_towers.mu()),
        Obligation {
            name: "deficiency-descends",
            required: true,
            holds: after_towers.deficiency_formula() <= before_towers.deficiency_formula(),
            details: format!(
                "deficiency {} -> {}",
                before_towers.deficiency_formula(),
                after_towers.deficiency_formula()
            ),
        },
        descent_obligation(&after_towers, &before_towers),
    ];
    Ok(DescentStep {
        move_kind: MoveKind::Peel { side, indices, deleted },
        before: cp.clone(),
        after,
        obligations,
    })
}

/// Applies overlap resolutions and shrinks in a fixed scan order until none
/// applies. The result has no shared point and both borders inside their
/// point sets, the shape every later peel relies on. Each move strictly
/// decreases either the total height or the coordinate sum, so this always
/// terminates.
pub fn minimize(cp: &CompatibleFloorPlan) -> (CompatibleFloorPlan, DescentTrace) {
    let mut current = cp.clone();
    let mut steps = Vec::new();
    'scan: loop {
        if current.overlap().is_some() {
            let step = resolve_overlap(&current).expect("an overlap was just found");
            current = step.after.clone();
            steps.push(step);
            continue 'scan;
        }
        for side in [Side::Lambda, Side::Mu] {
            for index in 0..current.len() {
                for axis in [Axis::X, Axis::Y] {
                    if let Ok(step) = shrink_compatible(&current, side, index, axis) {
                        current = step.after.clone();
                        steps.push(step);
                        continue 'scan;
                    }
                }
            }
        }
        break;
    }
    debug_assert!(current.overlap().is_none(), "minimize leaves no shared point");
    debug_assert!(border_within_points(&current.p_plan()), "minimize pins the lambda border");
    debug_assert!(border_within_points(&current.q_plan()), "minimize pins the mu border");
    (current, DescentTrace { steps })
}

/// Runs the full descent to the empty instance, checking every required
/// obligation along the way. A successful trace certifies that the
/// instance's realized deficiency is not negative: the empty instance has
/// deficiency zero and no step lets it grow downward. A required obligation
/// failing would contradict the bound; it is reported, never swallowed.
pub fn certify(cp: &CompatibleFloorPlan) -> Result<DescentTrace, TowerError> {
    let mut trace = DescentTrace::default();
    let mut current = cp.clone();
    loop {
        let (minimized, inner) = minimize(&current);
        for step in inner.steps {
            trace.push_checked(step)?;
        }
        current = minimized;
        if current.is_empty() {
            break;
        }
        let peel = peel_maximal(&current)?;
        current = peel.after.clone();
        trace.push_checked(peel)?;
    }
    Ok(trace)
}

fn side_plan(cp: &CompatibleFloorPlan, side: Side) -> FloorPlan {
    match side {
        Side::Lambda => cp.p_plan(),
        Side::Mu => cp.q_plan(),
    }
}

fn shrink_compatible(
    cp: &CompatibleFloorPlan,
    side: Side,
    index: usize,
    axis: Axis,
) -> Result<DescentStep, TowerError> {
    let shrunk = shrink_step(&side_plan(cp, side), index, axis)?;
    let (p, q) = match side {
        Side::Lambda => (shrunk.points().to_vec(), cp.q().to_vec()),
        Side::Mu => (cp.p().to_vec(), shrunk.points().to_vec()),
    };
    let after = CompatibleFloorPlan::new(p, q, cp.heights().to_vec())
        .expect("a shrink only moves a point within its side");
    let before_side = realize(&side_plan(cp, side)).expect("floor plans always realize");
    let after_side = realize(&shrunk).expect("floor plans always realize");
    let obligations = vec![
        strict_shrink_obligation(side, after_side.lambda(), before_side.lambda()),
        descent_obligation(&realized(&after), &realized(cp)),
    ];
    Ok(DescentStep {
        move_kind: MoveKind::Shrink { side, index, axis },
        before: cp.clone(),
        after,
        obligations,
    })
}

fn realized(cp: &CompatibleFloorPlan) -> CompatibleTower {
    realize_compatible(cp).expect("floor plans always realize")
}

fn shared_boxes(t: &CompatibleTower) -> usize {
    t.lambda().intersection(t.mu()).expect("realizations share a dimension").len()
}

fn strict_shrink_obligation(side: Side, after: &YoungDiagram, before: &YoungDiagram) -> Obligation {
    Obligation {
        name: match side {
            Side::Lambda => "lambda-strictly-shrinks",
            Side::Mu => "mu-strictly-shrinks",
        },
        required: true,
        holds: after.is_subset_of(before) && after.len() < before.len(),
        details: format!("{side} {} -> {} boxes", before.len(), after.len()),
    }
}

fn descent_obligation(after: &CompatibleTower, before: &CompatibleTower) -> Obligation {
    let ordering = compare_towers(after, before);
    Obligation {
        name: "compatible-descent",
        required: true,
        holds: matches!(ordering, TowerOrdering::LessEq | TowerOrdering::Equal),
        details: format!("realizations compare as {ordering:?}"),
    }
}

fn border_within_points(plan: &FloorPlan) -> bool {
    plan.border().iter().all(|c| plan.points().contains(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;
    use crate::tower::plan_deficiency;

    fn plan<const R: usize>(points: [[i64; 2]; R], heights: [u64; R]) -> FloorPlan {
        FloorPlan::new(points.map(pt).to_vec(), heights.to_vec()).unwrap()
    }

    fn compatible<const R: usize>(
        p: [[i64; 2]; R],
        q: [[i64; 2]; R],
        heights: [u64; R],
    ) -> CompatibleFloorPlan {
        CompatibleFloorPlan::new(p.map(pt).to_vec(), q.map(pt).to_vec(), heights.to_vec())
            .unwrap()
    }

    #[test]
    fn shrink_moves_a_free_point_inward() {
        let before = plan([[1, 0]], [1]);
        let after = shrink_step(&before, 0, Axis::X).unwrap();
        assert_eq!(after.points(), &[pt([0, 0])]);
        assert_eq!(realize(&before).unwrap().lambda().len(), 2);
        assert_eq!(realize(&after).unwrap().lambda().len(), 1);
    }

    #[test]
    fn shrink_stops_at_the_wall() {
        let p = plan([[0, 0]], [1]);
        assert_eq!(shrink_step(&p, 0, Axis::X).unwrap_err(), TowerError::ShrinkAtWall { index: 0 });
        assert_eq!(shrink_step(&p, 0, Axis::Y).unwrap_err(), TowerError::ShrinkAtWall { index: 0 });
    }

    #[test]
    fn shrink_is_blocked_by_the_previous_lane() {
        let p = plan([[0, 0], [1, 0]], [1, 1]);
        assert_eq!(
            shrink_step(&p, 1, Axis::X).unwrap_err(),
            TowerError::ShrinkBlocked { index: 1, blocking: 0 }
        );
        let q = plan([[0, 1], [1, 0]], [1, 1]);
        assert_eq!(
            shrink_step(&q, 0, Axis::Y).unwrap_err(),
            TowerError::ShrinkBlocked { index: 0, blocking: 1 }
        );
        // A point strictly left of the mover does not block the vertical
        // pull-back.
        let r = plan([[1, 1], [0, 0]], [1, 1]);
        let shrunk = shrink_step(&r, 0, Axis::Y).unwrap();
        assert_eq!(shrunk.points(), &[pt([1, 0]), pt([0, 0])]);
    }

    #[test]
    fn shrink_on_the_staircase_drops_the_table() {
        let before = plan(
            [[3, 0], [4, 0], [5, 0], [0, 1], [3, 1], [3, 2], [1, 3], [0, 4]],
            [1, 1, 4, 2, 3, 5, 2, 3],
        );
        // The point (3,2) has no neighbor in the lane x=2, so it may move.
        let after = shrink_step(&before, 5, Axis::X).unwrap();
        assert_eq!(after.points()[5], pt([2, 2]));
        let big = realize(&before).unwrap();
        let small = realize(&after).unwrap();
        assert!(small.lambda().is_subset_of(big.lambda()));
        assert!(small.lambda().len() < big.lambda().len());
    }

    #[test]
    fn resolving_the_last_height_empties_the_instance() {
        let cp = compatible([[0, 0]], [[0, 0]], [1]);
        let step = resolve_overlap(&cp).unwrap();
        assert_eq!(
            step.move_kind,
            MoveKind::ResolveOverlap { p_index: 0, q_index: 0, decremented: 0, deleted: true }
        );
        assert!(step.after.is_empty());
        assert!(step.all_required_hold(), "{:?}", step.obligations);
    }

    #[test]
    fn resolving_a_tall_overlap_just_decrements() {
        let cp = compatible([[0, 0]], [[0, 0]], [2]);
        let step = resolve_overlap(&cp).unwrap();
        assert_eq!(step.after.heights(), &[1]);
        assert!(step.all_required_hold(), "{:?}", step.obligations);
    }

    #[test]
    fn resolution_decrements_the_lower_scoring_side() {
        // The shared point scores 2 on the lambda side (its other two
        // points are incomparable) but 3 on the mu side (a chain), so the
        // lambda-side height is the one decremented, and deleting it takes
        // the chain's middle point with it.
        let cp = compatible([[1, 2], [0, 0], [2, 1]], [[0, 0], [1, 1], [2, 2]], [1, 1, 1]);
        let step = resolve_overlap(&cp).unwrap();
        assert_eq!(
            step.move_kind,
            MoveKind::ResolveOverlap { p_index: 1, q_index: 0, decremented: 1, deleted: true }
        );
        assert_eq!(step.after.p(), &[pt([1, 2]), pt([2, 1])]);
        assert_eq!(step.after.q(), &[pt([0, 0]), pt([2, 2])]);
        assert_eq!(step.after.heights(), &[1, 1]);
        assert!(step.all_required_hold(), "{:?}", step.obligations);
    }

    #[test]
    fn nothing_to_resolve_on_disjoint_sides() {
        let cp = compatible([[0, 0]], [[1, 0]], [1]);
        assert_eq!(resolve_overlap(&cp).unwrap_err(), TowerError::NoOverlap);
    }

    #[test]
    fn peel_deletes_the_single_maximal_point() {
        let cp = compatible([[0, 0]], [[1, 0]], [1]);
        let step = peel_maximal(&cp).unwrap();
        assert_eq!(
            step.move_kind,
            MoveKind::Peel { side: Side::Mu, indices: vec![0], deleted: vec![0] }
        );
        assert!(step.after.is_empty());
        assert!(step.all_required_hold(), "{:?}", step.obligations);
        // The mu border reaches (0,0), which is not a mu point; that is
        // recorded as a diagnostic, not a failure.
        let border = &step.obligations[0];
        assert_eq!(border.name, "border-containment");
        assert!(!border.required);
        assert!(!border.holds);
    }

    #[test]
    fn peel_decrements_every_maximal_index() {
        let cp = compatible([[1, 0], [0, 1]], [[2, 0], [0, 2]], [2, 2]);
        let step = peel_maximal(&cp).unwrap();
        assert_eq!(
            step.move_kind,
            MoveKind::Peel { side: Side::Mu, indices: vec![0, 1], deleted: vec![] }
        );
        assert_eq!(step.after.heights(), &[1, 1]);
        assert_eq!(step.after.p(), cp.p());
        assert_eq!(step.after.q(), cp.q());
        assert!(step.all_required_hold(), "{:?}", step.obligations);
    }

    #[test]
    fn peel_orients_toward_the_larger_support() {
        let cp = compatible([[2, 0], [1, 1], [0, 2]], [[0, 0], [1, 0], [0, 1]], [1, 1, 1]);
        let step = peel_maximal(&cp).unwrap();
        assert!(matches!(step.move_kind, MoveKind::Peel { side: Side::Lambda, .. }));
        assert!(step.after.is_empty());
        assert!(step.all_required_hold(), "{:?}", step.obligations);
    }

    #[test]
    fn peel_preconditions_are_routed() {
        assert_eq!(
            peel_maximal(&CompatibleFloorPlan::empty()).unwrap_err(),
            TowerError::EmptyInstance
        );
        let overlapping = compatible([[0, 0]], [[0, 0]], [1]);
        assert_eq!(
            peel_maximal(&overlapping).unwrap_err(),
            TowerError::OverlapPresent { first: 0, second: 0 }
        );
        let crossed = compatible([[1, 0]], [[0, 1]], [1]);
        assert_eq!(peel_maximal(&crossed).unwrap_err(), TowerError::SupportsNotNested);
    }

    #[test]
    fn minimize_leaves_a_minimal_instance_alone() {
        let cp = compatible([[0, 0], [1, 0], [0, 1]], [[2, 0], [1, 1], [0, 2]], [1, 1, 1]);
        let (min, trace) = minimize(&cp);
        assert_eq!(min, cp);
        assert!(trace.is_empty());
    }

    #[test]
    fn minimize_resolves_overlaps_before_shrinking() {
        let cp = compatible([[0, 0], [2, 0]], [[0, 0], [1, 1]], [1, 1]);
        let (min, trace) = minimize(&cp);
        assert!(matches!(
            trace.steps()[0].move_kind,
            MoveKind::ResolveOverlap { p_index: 0, q_index: 0, .. }
        ));
        assert!(min.is_empty());
    }

    #[test]
    fn minimize_terminates_within_the_potential_bound() {
        let cp = compatible([[1, 1]], [[3, 0]], [2]);
        let (min, trace) = minimize(&cp);
        assert!(min.is_empty());
        // Potential: coordinate sum 2 + 3 plus total height 2.
        assert!(trace.len() <= 7, "took {} steps", trace.len());
        for step in trace.steps() {
            assert!(step.all_required_hold(), "{:?}", step.move_kind);
        }
    }

    #[test]
    fn certify_accepts_the_empty_instance() {
        let trace = certify(&CompatibleFloorPlan::empty()).unwrap();
        assert!(trace.is_empty());
    }

    #[test]
    fn certify_walks_a_far_pair_down_to_nothing() {
        let cp = compatible([[0, 0]], [[2, 2]], [3]);
        assert_eq!(plan_deficiency(&cp).unwrap(), 0);
        let trace = certify(&cp).unwrap();
        // Four shrinks walk the mu point to the origin, then three
        // resolutions burn the shared height.
        assert_eq!(trace.len(), 7);
    }

    #[test]
    fn certify_peels_a_minimal_instance() {
        let cp = compatible([[0, 0], [1, 0], [0, 1]], [[2, 0], [1, 1], [0, 2]], [1, 1, 1]);
        let trace = certify(&cp).unwrap();
        assert_eq!(trace.len(), 1);
        assert!(matches!(trace.steps()[0].move_kind, MoveKind::Peel { side: Side::Mu, .. }));
        assert!(plan_deficiency(&cp).unwrap() >= 0);
    }

    #[test]
    fn required_failures_are_reported_with_their_step() {
        let ok = Obligation {
            name: "compatible-descent",
            required: true,
            holds: true,
            details: String::new(),
        };
        let diagnostic = Obligation {
            name: "border-containment",
            required: false,
            holds: false,
            details: String::new(),
        };
        let bad =
            Obligation { name: "deficiency-descends", required: true, holds: false, details: String::new() };
        let cp = CompatibleFloorPlan::empty();
        let step = |obligations: Vec<Obligation>| DescentStep {
            move_kind: MoveKind::Shrink { side: Side::Lambda, index: 0, axis: Axis::X },
            before: cp.clone(),
            after: cp.clone(),
            obligations,
        };
        assert!(step(vec![ok.clone(), diagnostic.clone()]).all_required_hold());
        let failing = step(vec![ok, diagnostic, bad]);
        assert_eq!(failing.required_failure().unwrap().name, "deficiency-descends");
        let mut trace = DescentTrace::default();
        assert!(matches!(
            trace.push_checked(failing),
            Err(TowerError::ObligationFailed { index: 0, .. })
        ));
    }
}
