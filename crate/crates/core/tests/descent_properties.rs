//! Properties of floor plans, realizations, and the descent certifier: the
//! dynamic program against brute-force path enumeration, the section
//! identities of the two maps, and the deficiency bound run as a theorem on
//! randomized instances, cross-checked against the gluing machinery.

use std::collections::BTreeSet;

use proptest::prelude::*;

use gerst_core::gluing::{GluedComponent, GluingDatum, Verdict};
use gerst_core::lattice::{pt, AbstractSkewShape, BoxSet, Point, YoungDiagram};
use gerst_core::tower::{
    certify, deficiency_of_tower, floor_plan_of, minimize, plan_deficiency, realize,
    realize_compatible, CompatibleFloorPlan, FloorPlan, Tower, TowerColumn,
};

fn points_of(set: BTreeSet<(i64, i64)>) -> Vec<Point> {
    set.into_iter().map(|(x, y)| pt([x, y])).collect()
}

fn floor_plan(max_coord: i64, max_r: usize, max_h: u64) -> impl Strategy<Value = FloorPlan> {
    proptest::collection::btree_set((0..=max_coord, 0..=max_coord), 1..=max_r)
        .prop_flat_map(move |set| {
            let len = set.len();
            (Just(set), proptest::collection::vec(1..=max_h, len))
        })
        .prop_map(|(set, heights)| FloorPlan::new(points_of(set), heights).unwrap())
}

fn compatible_plan(
    max_coord: i64,
    max_r: usize,
    max_h: u64,
) -> impl Strategy<Value = CompatibleFloorPlan> {
    (1..=max_r)
        .prop_flat_map(move |r| {
            (
                proptest::collection::btree_set((0..=max_coord, 0..=max_coord), r),
                proptest::collection::btree_set((0..=max_coord, 0..=max_coord), r),
                proptest::collection::vec(1..=max_h, r),
            )
        })
        .prop_map(|(p, q, heights)| {
            CompatibleFloorPlan::new(points_of(p), points_of(q), heights).unwrap()
        })
}

/// Best score over every monotone lattice path from `from` to `corner`,
/// enumerated explicitly rather than through the recurrence.
fn best_score_by_enumeration(plan: &FloorPlan, from: &Point, corner: &Point) -> u64 {
    let mut best = 0;
    let mut stack = vec![(from.clone(), plan.weight(from))];
    while let Some((at, score)) = stack.pop() {
        let mut moved = false;
        for axis in 0..2 {
            if at[axis] < corner[axis] {
                let next = at.shifted(axis, 1);
                let gained = plan.weight(&next);
                stack.push((next, score + gained));
                moved = true;
            }
        }
        if !moved {
            best = best.max(score);
        }
    }
    best
}

proptest! {
    #[test]
    fn realizations_are_valid_scaffolded_and_sized_by_the_table(
        plan in floor_plan(4, 4, 3),
    ) {
        let table = plan.max_score_table();
        for (p, h) in plan.iter() {
            prop_assert!(table.get(p) >= h, "a path through {p} scores at least {h}");
        }
        let tower = realize(&plan).unwrap();
        prop_assert!(tower.validate().is_valid());
        prop_assert!(tower.is_scaffolded().unwrap());
        prop_assert_eq!(tower.lambda().len() as u64, table.total());
    }

    #[test]
    fn the_plan_of_a_realization_is_the_plan(plan in floor_plan(4, 4, 3)) {
        prop_assert_eq!(&floor_plan_of(&realize(&plan).unwrap()).unwrap(), &plan);
    }

    #[test]
    fn realizing_the_plan_of_a_tower_shrinks_it(
        set in proptest::collection::btree_set((0..=4i64, 0..=4i64), 1..=5),
        raw_heights in proptest::collection::vec(1..=3u64, 5),
    ) {
        // Grounded columns over an antichain of planar positions, with the
        // diagram they generate: always a valid scaffolded tower, and in
        // general not a minimal realization.
        let mut antichain: Vec<Point> = Vec::new();
        for p in points_of(set) {
            if antichain.iter().all(|k| !k.leq(&p) && !p.leq(k)) {
                antichain.push(p);
            }
        }
        let columns: Vec<TowerColumn> = antichain
            .iter()
            .zip(&raw_heights)
            .map(|(p, &h)| TowerColumn::new(pt([p[0], p[1], 0]), h).unwrap())
            .collect();
        let mut union = BoxSet::empty(3);
        for c in &columns {
            union = union.union(&c.boxes()).unwrap();
        }
        let lambda = YoungDiagram::from_boxes(union.order_ideal().unwrap()).unwrap();
        let tower = Tower::new(lambda, columns).unwrap();
        prop_assert!(tower.validate().is_valid(), "{:?}", tower.validate().violations());
        prop_assert!(tower.is_scaffolded().unwrap());

        let plan = floor_plan_of(&tower).unwrap();
        let again = realize(&plan).unwrap();
        prop_assert!(again.lambda().is_subset_of(tower.lambda()));
        prop_assert_eq!(&floor_plan_of(&again).unwrap(), &plan);
    }

    #[test]
    fn the_table_agrees_with_brute_force_path_enumeration(plan in floor_plan(4, 4, 3)) {
        let table = plan.max_score_table();
        let corner = pt([5, 5]);
        for x in 0..=corner[0] {
            for y in 0..=corner[1] {
                let q = pt([x, y]);
                let oracle = best_score_by_enumeration(&plan, &q, &corner);
                prop_assert_eq!(table.get(&q), oracle, "table and enumeration differ at {}", q);
                let path = plan.winning_path(&q).unwrap();
                prop_assert_eq!(plan.path_score(&path), oracle, "winning path misses at {}", q);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimize_reaches_a_clean_instance_within_the_potential(
        cp in compatible_plan(4, 4, 3),
    ) {
        let coordinate_sum: i64 = cp.p().iter().chain(cp.q()).map(|p| p[0] + p[1]).sum();
        let potential = coordinate_sum as usize + cp.total_height() as usize;
        let (minimized, trace) = minimize(&cp);
        prop_assert!(trace.len() <= potential);
        prop_assert!(minimized.overlap().is_none());
        for step in trace.steps() {
            prop_assert!(step.all_required_hold(), "{:?}", step.obligations);
        }
        // Steps chain: each move starts from the previous result.
        for pair in trace.steps().windows(2) {
            prop_assert_eq!(&pair[1].before, &pair[0].after);
        }
    }

    #[test]
    fn every_instance_certifies_and_has_nonnegative_deficiency(
        cp in compatible_plan(4, 4, 3),
    ) {
        prop_assert!(plan_deficiency(&cp).unwrap() >= 0);
        let coordinate_sum: i64 = cp.p().iter().chain(cp.q()).map(|p| p[0] + p[1]).sum();
        let potential = coordinate_sum as usize + cp.total_height() as usize;
        let trace = certify(&cp).unwrap();
        prop_assert!(trace.len() <= potential);
        if let Some(last) = trace.steps().last() {
            prop_assert!(last.after.is_empty());
        }
    }

    #[test]
    fn realized_towers_verify_through_the_gluing_machinery(
        cp in compatible_plan(2, 2, 2),
    ) {
        let tower = realize_compatible(&cp).unwrap();
        prop_assert!(tower.is_valid());

        // The same object as a gluing datum: each shared column becomes a
        // one-box-wide component sited at its two bases.
        let components: Vec<GluedComponent> = tower
            .columns()
            .iter()
            .map(|c| {
                let shape = AbstractSkewShape::from_boxes(
                    BoxSet::new(3, (0..c.height() as i64).map(|z| pt([0, 0, z]))).unwrap(),
                )
                .unwrap();
                GluedComponent::new(shape, c.lambda_base().clone(), c.mu_base().clone()).unwrap()
            })
            .collect();
        let datum =
            GluingDatum::new(tower.lambda().clone(), tower.mu().clone(), components).unwrap();
        prop_assert!(datum.validate().is_valid(), "{:?}", datum.validate().violations());
        prop_assert_eq!(datum.deficiency(), tower.deficiency_formula());
        prop_assert_eq!(datum.deficiency(), deficiency_of_tower(&tower).unwrap());

        let outcome = datum.gerstenhaber_check().unwrap();
        prop_assert!(outcome.consistent);
        prop_assert_eq!(outcome.margin, datum.deficiency());
        prop_assert_eq!(outcome.verdict, Verdict::Satisfied);
        prop_assert!(outcome.margin >= 0);
    }
}
