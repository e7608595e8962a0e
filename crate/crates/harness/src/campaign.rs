//! Theorem-verification and counterexample-search campaigns.
//!
//! A campaign walks a deterministic sequence of instances, evaluates each
//! one with the library, and classifies the result. Instance `i` depends
//! only on the campaign seed and the cursor `i`, so runs are reproducible,
//! resumable from any cursor, and safe to fan out across workers: the
//! record list is assembled in cursor order no matter how many threads
//! computed it.

use std::io::Write;
use std::path::PathBuf;

use gerst_core::tower::{
    certify, deficiency_of_tower, floor_plan_of_compatible, realize_compatible,
    CompatibleFloorPlan,
};
use thiserror::Error;

use crate::enumerate::{enumerate_compatible_plans, PlanBounds};
use crate::format::{FormatError, Instance, InstanceRecord, Provenance, Results};
use crate::gen::{
    derive_seed, random_gluing, random_point_gluing, GenError, GluingBounds,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Exhaust every compatible floor plan within the bounds, realize it,
    /// and certify that its deficiency is non-negative.
    VerifyTheorem,
    /// Random gluing data: compare the counted module and algebra dimensions
    /// against the closed-form box counts.
    CrossCheck,
    /// Four-variable point-component gluings in the unit hypercube, hunting
    /// for negative deficiency.
    HuntN4,
    /// Certify every compatible instance in an input file and archive the
    /// descent traces.
    CertifyCorpus,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::VerifyTheorem => write!(f, "verify-theorem"),
            Mode::CrossCheck => write!(f, "cross-check"),
            Mode::HuntN4 => write!(f, "hunt-n4"),
            Mode::CertifyCorpus => write!(f, "certify-corpus"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub mode: Mode,
    pub seed: u64,
    /// First cursor to evaluate; later cursors continue a previous run.
    pub start: u64,
    /// How many cursors to evaluate in the random modes. The exhaustive and
    /// corpus modes derive their own instance count.
    pub count: u64,
    pub plan_bounds: PlanBounds,
    pub gluing_bounds: GluingBounds,
    /// Cross-check samples the number of variables from 1..=max_vars.
    pub max_vars: usize,
    /// 0 lets the worker pool pick its size; 1 forces a sequential scan.
    pub workers: usize,
    /// Corpus file for certify-corpus.
    pub input: Option<PathBuf>,
}

impl CampaignConfig {
    pub fn new(mode: Mode, seed: u64, count: u64) -> CampaignConfig {
        CampaignConfig {
            mode,
            seed,
            start: 0,
            count,
            plan_bounds: PlanBounds::new(2, 3, 2),
            gluing_bounds: GluingBounds::new(3, 40, 2),
            max_vars: 3,
            workers: 0,
            input: None,
        }
    }
}

/// How one instance came out.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RecordClass {
    /// The instance satisfies everything the mode asserts.
    Pass,
    /// A legitimate counterexample: the thing hunt campaigns exist to find.
    Finding,
    /// An invariant the library promises was breached; always a bug.
    Anomaly,
}

#[derive(Clone, Debug)]
pub struct Evaluated {
    pub class: RecordClass,
    pub record: InstanceRecord,
}

#[derive(Clone, Debug)]
pub struct CampaignSummary {
    pub mode: Mode,
    pub instances: u64,
    pub findings: u64,
    pub anomalies: u64,
    pub min_deficiency: Option<i64>,
}

#[derive(Debug)]
pub struct CampaignOutput {
    pub summary: CampaignSummary,
    /// Loggable records in cursor order. The hunt keeps records only for
    /// its findings; the other modes keep one record per instance.
    pub records: Vec<Evaluated>,
}

impl CampaignOutput {
    /// The first record that is not a plain pass, if any: what a caller
    /// should show as the witness.
    pub fn witness(&self) -> Option<&Evaluated> {
        self.records.iter().find(|e| e.class != RecordClass::Pass)
    }

    /// One record per line, in cursor order.
    pub fn log_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.records {
            out.push_str(&e.record.to_json_line());
            out.push('\n');
        }
        out
    }

    pub fn write_log(&self, path: &std::path::Path) -> std::io::Result<()> {
        let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        file.write_all(self.log_lines().as_bytes())
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("certify-corpus needs an --input file")]
    MissingInput,
    #[error("corpus record {index}: {message}")]
    Corpus { index: usize, message: String },
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignOutput, CampaignError> {
    match config.mode {
        Mode::VerifyTheorem => run_verify(config),
        Mode::CrossCheck => run_cross_check(config),
        Mode::HuntN4 => run_hunt(config),
        Mode::CertifyCorpus => run_certify_corpus(config),
    }
}

/// Applies `eval` to every task, preserving task order in the output. With
/// the `parallel` feature the map fans out over a worker pool unless the
/// config pins `workers` to 1; without it the scan is always sequential.
fn evaluate_all<T, R, F>(tasks: Vec<T>, workers: usize, eval: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        // Collecting an indexed parallel iterator preserves task order, so
        // the log comes out identical no matter how many workers ran.
        if workers == 0 {
            return tasks.into_par_iter().map(eval).collect();
        }
        if workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("worker pools of any positive size can be built");
            return pool.install(|| tasks.into_par_iter().map(eval).collect());
        }
    }
    let _ = workers;
    tasks.into_iter().map(eval).collect()
}

fn results_for_deficiency(deficiency: i64) -> Results {
    Results {
        deficiency,
        module_dimension: None,
        algebra_dimension: None,
        verdict: None,
        consistent: None,
        certified_steps: None,
        note: None,
        trace: None,
    }
}

fn attach(record: &mut InstanceRecord, results: Results) {
    record
        .attach_results(results)
        .expect("campaign instances validate before results are measured");
}

/// Realize and certify one compatible plan; used by the exhaustive and
/// corpus modes. Archives the trace only when asked, to keep large
/// enumeration logs lean.
fn certify_plan(
    cp: &CompatibleFloorPlan,
    keep_trace: bool,
) -> (RecordClass, Results) {
    let tower = match realize_compatible(cp) {
        Ok(t) => t,
        Err(e) => {
            let mut results = results_for_deficiency(0);
            results.note = Some(format!("realization failed: {e}"));
            return (RecordClass::Anomaly, results);
        }
    };
    let counted = match deficiency_of_tower(&tower) {
        Ok(d) => d,
        Err(e) => {
            let mut results = results_for_deficiency(0);
            results.note = Some(format!("deficiency count failed: {e}"));
            return (RecordClass::Anomaly, results);
        }
    };
    let mut results = results_for_deficiency(counted);
    if counted != tower.deficiency_formula() {
        results.note = Some(format!(
            "counted deficiency {counted} disagrees with the closed form {}",
            tower.deficiency_formula()
        ));
        return (RecordClass::Anomaly, results);
    }
    match certify(cp) {
        Ok(trace) => {
            results.certified_steps = Some(trace.len());
            if keep_trace {
                results.trace = Some(
                    trace
                        .steps()
                        .iter()
                        .map(|step| {
                            let held = step.obligations.iter().filter(|o| o.holds).count();
                            format!(
                                "{} [{held}/{} obligations hold]",
                                step.move_kind,
                                step.obligations.len()
                            )
                        })
                        .collect(),
                );
            }
            if counted < 0 {
                results.note = Some("negative deficiency on a certified plan".into());
                (RecordClass::Anomaly, results)
            } else {
                (RecordClass::Pass, results)
            }
        }
        Err(e) => {
            results.note = Some(format!("descent certification failed: {e}"));
            (RecordClass::Anomaly, results)
        }
    }
}

fn run_verify(config: &CampaignConfig) -> Result<CampaignOutput, CampaignError> {
    let plans = enumerate_compatible_plans(&config.plan_bounds);
    let params = format!("{:?}", config.plan_bounds);
    let tasks: Vec<(u64, CompatibleFloorPlan)> =
        plans.into_iter().enumerate().map(|(i, cp)| (i as u64, cp)).collect();
    let evaluated = evaluate_all(tasks, config.workers, |(cursor, cp)| {
        let mut record = InstanceRecord::new(
            &Instance::CompatibleFloorPlan(cp.clone()),
            Provenance {
                generator: Mode::VerifyTheorem.to_string(),
                seed: None,
                cursor: Some(cursor),
                params: Some(params.clone()),
            },
        );
        let (class, results) = certify_plan(&cp, false);
        attach(&mut record, results);
        Evaluated { class, record }
    });
    Ok(summarize(Mode::VerifyTheorem, evaluated, None))
}

fn run_cross_check(config: &CampaignConfig) -> Result<CampaignOutput, CampaignError> {
    use rand::{Rng, SeedableRng};
    let cursors: Vec<u64> = (config.start..config.start + config.count).collect();
    let params = format!("n<={} {:?}", config.max_vars, config.gluing_bounds);
    let evaluated: Vec<Result<Evaluated, CampaignError>> =
        evaluate_all(cursors, config.workers, |cursor| {
            let mut rng =
                rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(config.seed, cursor));
            let n = rng.gen_range(1..=config.max_vars);
            let datum = random_gluing(n, &config.gluing_bounds, rng.gen())?;
            let mut record = InstanceRecord::new(
                &Instance::Gluing(datum.clone()),
                Provenance {
                    generator: Mode::CrossCheck.to_string(),
                    seed: Some(config.seed),
                    cursor: Some(cursor),
                    params: Some(params.clone()),
                },
            );
            let (class, results) = match datum.gerstenhaber_check() {
                Ok(outcome) => {
                    let mut results = results_for_deficiency(outcome.deficiency);
                    results.module_dimension = Some(outcome.module_dimension);
                    results.algebra_dimension = Some(outcome.algebra_dimension);
                    results.verdict = Some(outcome.verdict.to_string());
                    results.consistent = Some(outcome.consistent);
                    let class = if !outcome.consistent {
                        results.note =
                            Some("counted dimensions disagree with the closed forms".into());
                        RecordClass::Anomaly
                    } else if outcome.margin < 0 {
                        RecordClass::Finding
                    } else {
                        RecordClass::Pass
                    };
                    (class, results)
                }
                Err(e) => {
                    let mut results = results_for_deficiency(datum.deficiency());
                    results.note = Some(format!("matrix check refused the datum: {e}"));
                    (RecordClass::Anomaly, results)
                }
            };
            attach(&mut record, results);
            Ok(Evaluated { class, record })
        });
    let evaluated = evaluated.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(Mode::CrossCheck, evaluated, None))
}

fn run_hunt(config: &CampaignConfig) -> Result<CampaignOutput, CampaignError> {
    let cursors: Vec<u64> = (config.start..config.start + config.count).collect();
    let scanned = cursors.len() as u64;
    let evaluated: Vec<(i64, Option<Evaluated>)> =
        evaluate_all(cursors, config.workers, |cursor| {
            let datum = random_point_gluing(derive_seed(config.seed, cursor));
            let deficiency = datum.deficiency();
            if deficiency >= 0 {
                return (deficiency, None);
            }
            let mut record = InstanceRecord::new(
                &Instance::Gluing(datum.clone()),
                Provenance {
                    generator: Mode::HuntN4.to_string(),
                    seed: Some(config.seed),
                    cursor: Some(cursor),
                    params: Some("point components in the unit hypercube".into()),
                },
            );
            let (class, results) = match datum.gerstenhaber_check() {
                Ok(outcome) => {
                    let mut results = results_for_deficiency(outcome.deficiency);
                    results.module_dimension = Some(outcome.module_dimension);
                    results.algebra_dimension = Some(outcome.algebra_dimension);
                    results.verdict = Some(outcome.verdict.to_string());
                    results.consistent = Some(outcome.consistent);
                    if outcome.consistent {
                        (RecordClass::Finding, results)
                    } else {
                        results.note =
                            Some("counted dimensions disagree with the closed forms".into());
                        (RecordClass::Anomaly, results)
                    }
                }
                Err(e) => {
                    let mut results = results_for_deficiency(deficiency);
                    results.note = Some(format!("matrix check refused the datum: {e}"));
                    (RecordClass::Anomaly, results)
                }
            };
            attach(&mut record, results);
            (deficiency, Some(Evaluated { class, record }))
        });
    let min_deficiency = evaluated.iter().map(|(d, _)| *d).min();
    let records: Vec<Evaluated> = evaluated.into_iter().filter_map(|(_, e)| e).collect();
    let mut output = summarize(Mode::HuntN4, records, min_deficiency);
    output.summary.instances = scanned;
    Ok(output)
}

fn run_certify_corpus(config: &CampaignConfig) -> Result<CampaignOutput, CampaignError> {
    let path = config.input.as_ref().ok_or(CampaignError::MissingInput)?;
    let text = std::fs::read_to_string(path)?;
    let instances = parse_corpus(&text)?;
    let mut tasks = Vec::new();
    for (index, instance) in instances.into_iter().enumerate() {
        let cp = match &instance {
            Instance::CompatibleFloorPlan(cp) => cp.clone(),
            Instance::CompatibleTower(ct) => floor_plan_of_compatible(ct)
                .map_err(|e| CampaignError::Corpus { index, message: e.to_string() })?,
            other => {
                return Err(CampaignError::Corpus {
                    index,
                    message: format!(
                        "only compatible instances can be certified, found kind {}",
                        other.kind()
                    ),
                })
            }
        };
        tasks.push((index as u64, instance, cp));
    }
    let evaluated = evaluate_all(tasks, config.workers, |(cursor, instance, cp)| {
        let mut record = InstanceRecord::new(
            &instance,
            Provenance {
                generator: Mode::CertifyCorpus.to_string(),
                seed: None,
                cursor: Some(cursor),
                params: None,
            },
        );
        let (class, results) = certify_plan(&cp, true);
        attach(&mut record, results);
        Evaluated { class, record }
    });
    Ok(summarize(Mode::CertifyCorpus, evaluated, None))
}

/// A corpus file is either one instance document or one document per line.
fn parse_corpus(text: &str) -> Result<Vec<Instance>, FormatError> {
    if let Ok(single) = Instance::from_json(text) {
        return Ok(vec![single]);
    }
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .map(Instance::from_json)
        .collect()
}

fn summarize(
    mode: Mode,
    records: Vec<Evaluated>,
    min_deficiency: Option<i64>,
) -> CampaignOutput {
    let findings = records.iter().filter(|e| e.class == RecordClass::Finding).count() as u64;
    let anomalies = records.iter().filter(|e| e.class == RecordClass::Anomaly).count() as u64;
    let min_recorded = records
        .iter()
        .filter_map(|e| e.record.results.as_ref().map(|r| r.deficiency))
        .min();
    let summary = CampaignSummary {
        mode,
        instances: records.len() as u64,
        findings,
        anomalies,
        min_deficiency: min_deficiency.or(min_recorded),
    };
    CampaignOutput { summary, records }
}
