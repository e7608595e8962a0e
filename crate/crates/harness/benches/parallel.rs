//! Sequential vs thread-pool campaign throughput. The setup asserts both
//! paths produce identical logs, so the numbers compare like with like.

use criterion::{criterion_group, criterion_main, Criterion};
use gerst_harness::campaign::{run_campaign, CampaignConfig, Mode};
use gerst_harness::enumerate::PlanBounds;

fn cross_check(workers: usize) -> CampaignConfig {
    let mut config = CampaignConfig::new(Mode::CrossCheck, 31, 200);
    config.workers = workers;
    config
}

fn verify(workers: usize) -> CampaignConfig {
    let mut config = CampaignConfig::new(Mode::VerifyTheorem, 0, 0);
    config.plan_bounds = PlanBounds::new(2, 2, 2);
    config.workers = workers;
    config
}

fn bench_campaigns(c: &mut Criterion) {
    let sequential = run_campaign(&cross_check(1)).unwrap().log_lines();
    let pooled = run_campaign(&cross_check(0)).unwrap().log_lines();
    assert_eq!(sequential, pooled, "worker count must not change the log");

    let mut group = c.benchmark_group("cross_check_200_gluings");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| run_campaign(&cross_check(1)).unwrap()));
    group.bench_function("all_cores", |b| b.iter(|| run_campaign(&cross_check(0)).unwrap()));
    group.finish();

    let mut group = c.benchmark_group("verify_plans_in_2_box");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| run_campaign(&verify(1)).unwrap()));
    group.bench_function("all_cores", |b| b.iter(|| run_campaign(&verify(0)).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_campaigns);
criterion_main!(benches);
