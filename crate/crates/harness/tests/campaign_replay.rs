//! Campaign logs are reproducible artifacts: the same configuration gives
//! the same bytes regardless of worker count, and every logged record can
//! be replayed through the library with the same outcome.

use gerst_core::tower::certify;
use gerst_harness::campaign::{run_campaign, CampaignConfig, Mode};
use gerst_harness::enumerate::PlanBounds;
use gerst_harness::format::{Instance, InstanceRecord};

#[test]
fn worker_count_never_changes_the_log() {
    let mut config = CampaignConfig::new(Mode::CrossCheck, 99, 60);
    config.workers = 1;
    let sequential = run_campaign(&config).unwrap().log_lines();
    for workers in [2, 4, 0] {
        config.workers = workers;
        let parallel = run_campaign(&config).unwrap().log_lines();
        assert_eq!(sequential, parallel, "{workers} workers changed the log");
    }
}

#[test]
fn verify_theorem_logs_replay_through_certification() {
    let mut config = CampaignConfig::new(Mode::VerifyTheorem, 0, 0);
    config.plan_bounds = PlanBounds::new(1, 2, 2);
    let outcome = run_campaign(&config).unwrap();
    assert!(outcome.summary.instances > 0);

    for line in outcome.log_lines().lines() {
        let record = InstanceRecord::from_json(line).unwrap();
        let Instance::CompatibleFloorPlan(cp) =
            record.instance.clone().into_instance().unwrap()
        else {
            panic!("verify-theorem logged a non-plan record");
        };
        let results = record.results.expect("campaign records carry results");
        let trace = certify(&cp).expect("logged plan re-certifies");
        assert_eq!(Some(trace.len()), results.certified_steps);
        assert!(results.deficiency >= 0);
    }
}

#[test]
fn cross_check_logs_replay_through_the_full_check() {
    let config = CampaignConfig::new(Mode::CrossCheck, 1234, 40);
    let outcome = run_campaign(&config).unwrap();

    for line in outcome.log_lines().lines() {
        let record = InstanceRecord::from_json(line).unwrap();
        let Instance::Gluing(datum) = record.instance.clone().into_instance().unwrap() else {
            panic!("cross-check logged a non-gluing record");
        };
        assert!(datum.validate().is_valid());
        let results = record.results.expect("campaign records carry results");
        let again = datum.gerstenhaber_check().unwrap();
        assert_eq!(again.deficiency, results.deficiency);
        assert_eq!(Some(again.module_dimension), results.module_dimension);
        assert_eq!(Some(again.algebra_dimension), results.algebra_dimension);
        assert_eq!(Some(again.verdict.to_string()), results.verdict);
    }
}

#[test]
fn resuming_at_a_cursor_matches_the_longer_run() {
    let full = {
        let config = CampaignConfig::new(Mode::HuntN4, 7, 2000);
        run_campaign(&config).unwrap()
    };
    let stitched = {
        let mut head = CampaignConfig::new(Mode::HuntN4, 7, 1100);
        head.start = 0;
        let mut tail = CampaignConfig::new(Mode::HuntN4, 7, 900);
        tail.start = 1100;
        let mut lines = run_campaign(&head).unwrap().log_lines();
        lines.push_str(&run_campaign(&tail).unwrap().log_lines());
        lines
    };
    assert_eq!(full.log_lines(), stitched);
}
