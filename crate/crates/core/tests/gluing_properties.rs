//! The dimension bookkeeping of glued modules, checked by running the exact
//! linear algebra against the closed-form counts on randomized gluing data.

use proptest::prelude::*;

use gerst_core::gluing::{GluedComponent, GluingDatum, GluingError, GluingViolation, Verdict};
use gerst_core::lattice::{AbstractSkewShape, BoxSet, Point, YoungDiagram};

fn random_diagram(
    dim: usize,
    max_coord: i64,
    max_points: usize,
) -> impl Strategy<Value = YoungDiagram> {
    proptest::collection::vec(proptest::collection::vec(0..=max_coord, dim), 1..=max_points)
        .prop_map(move |vs| {
            let set = BoxSet::new(dim, vs.into_iter().map(Point::new)).unwrap();
            YoungDiagram::from_boxes(set.order_ideal().unwrap()).unwrap()
        })
}

fn maximal_boxes(d: &YoungDiagram) -> Vec<Point> {
    d.iter()
        .filter(|b| (0..d.dim()).all(|axis| !d.contains(&b.shifted(axis, 1))))
        .cloned()
        .collect()
}

fn single_box(dim: usize) -> AbstractSkewShape {
    AbstractSkewShape::from_boxes(BoxSet::new(dim, [Point::zero(dim)]).unwrap()).unwrap()
}

/// Gluing data that is valid by construction: single-box components sited at
/// maximal boxes of each diagram. A maximal box has no upward neighbor, so
/// saturation is automatic, and distinct maximal boxes never overlap.
fn point_gluing(dim: usize, max_coord: i64, max_points: usize) -> impl Strategy<Value = GluingDatum> {
    (random_diagram(dim, max_coord, max_points), random_diagram(dim, max_coord, max_points))
        .prop_flat_map(move |(lambda, mu)| {
            let lambda_max = maximal_boxes(&lambda);
            let mu_max = maximal_boxes(&mu);
            let most = lambda_max.len().min(mu_max.len());
            (Just(lambda), Just(mu), 0..=most).prop_flat_map(move |(lambda, mu, count)| {
                (
                    Just(lambda),
                    Just(mu),
                    proptest::sample::subsequence(lambda_max.clone(), count),
                    proptest::sample::subsequence(mu_max.clone(), count),
                )
            })
        })
        .prop_map(move |(lambda, mu, bs, cs)| {
            let components = bs
                .into_iter()
                .zip(cs)
                .map(|(b, c)| GluedComponent::new(single_box(dim), b, c).unwrap())
                .collect();
            GluingDatum::new(lambda, mu, components).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counted_dimensions_match_the_closed_forms(datum in point_gluing(3, 2, 4)) {
        prop_assert!(datum.validate().is_valid());
        let outcome = datum.gerstenhaber_check().unwrap();
        let union = datum.lambda().union(datum.mu()).unwrap().len();
        prop_assert!(outcome.consistent);
        prop_assert_eq!(outcome.algebra_dimension, union);
        prop_assert_eq!(outcome.margin, outcome.deficiency);
        prop_assert_eq!(outcome.deficiency, datum.deficiency());
        prop_assert_eq!(
            outcome.module_dimension as i64,
            datum.lambda().len() as i64 + datum.mu().len() as i64
                - datum.components().len() as i64
        );
        let expected = if outcome.margin < 0 { Verdict::Counterexample } else { Verdict::Satisfied };
        prop_assert_eq!(outcome.verdict, expected);
    }

    #[test]
    fn four_dimensional_gluings_stay_consistent(datum in point_gluing(4, 1, 4)) {
        let outcome = datum.gerstenhaber_check().unwrap();
        prop_assert!(outcome.consistent);
        prop_assert_eq!(outcome.margin, datum.deficiency());
    }

    #[test]
    fn unglued_pairs_satisfy_the_bound_by_overlap(
        lambda in random_diagram(3, 2, 4),
        mu in random_diagram(3, 2, 4),
    ) {
        // With nothing glued the margin is exactly the overlap of the two
        // diagrams, which is never negative.
        let datum = GluingDatum::new(lambda.clone(), mu.clone(), Vec::new()).unwrap();
        let outcome = datum.gerstenhaber_check().unwrap();
        prop_assert!(outcome.consistent);
        prop_assert_eq!(outcome.margin, lambda.intersection(&mu).unwrap().len() as i64);
        prop_assert_eq!(outcome.verdict, Verdict::Satisfied);
    }

    #[test]
    fn planting_a_component_below_the_surface_is_caught(datum in point_gluing(3, 2, 4)) {
        // Re-site the first component at the origin. Any diagram with more
        // than one box has an upward neighbor of the origin inside it, and
        // a single-box component there cannot be saturated.
        prop_assume!(!datum.components().is_empty());
        prop_assume!(datum.lambda().len() > 1);
        let mut components = datum.components().to_vec();
        components[0] = GluedComponent::new(
            single_box(3),
            Point::zero(3),
            components[0].mu_offset().clone(),
        )
        .unwrap();
        let planted = GluingDatum::new(datum.lambda().clone(), datum.mu().clone(), components)
            .unwrap();
        let report = planted.validate();
        prop_assert!(!report.is_valid());
        let saturation_reported = report
            .violations()
            .iter()
            .any(|v| matches!(v, GluingViolation::LambdaSaturation { component: 0, .. }));
        prop_assert!(saturation_reported, "violations: {:?}", report.violations());
        let refused =
            matches!(planted.gerstenhaber_check(), Err(GluingError::InvalidDatum { .. }));
        prop_assert!(refused);
    }
}
