//! Command-line front end for the harness.
//!
//! Exit codes: 0 means the instance checked out, 1 means the invocation or
//! the input was unusable, and 2 means the mathematics itself pushed back: a
//! counterexample, an inconsistency between counted and predicted
//! dimensions, a failed descent obligation, or a campaign that logged
//! findings or anomalies.

use clap::{Parser, Subcommand, ValueEnum};
use gerst_core::gluing::Verdict;
use gerst_core::tower::{
    certify, deficiency_of_tower, floor_plan_of, floor_plan_of_compatible, minimize, realize,
    realize_compatible, DescentStep,
};
use gerst_harness::campaign::{run_campaign, CampaignConfig, Mode};
use gerst_harness::enumerate::PlanBounds;
use gerst_harness::format::Instance;
use gerst_harness::gen::GluingBounds;
use gerst_harness::render::{
    render_compatible_plan, render_diagram, render_floor_plan, render_gluing, RenderFormat,
};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "gerst", version, about = "Exact checks for the Gerstenhaber problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance; gluings also get the full dimension check.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the dimension of the algebra generated by a gluing's pair.
    AlgebraDim {
        #[arg(long)]
        input: PathBuf,
    },
    /// Shrink a tower's diagram to the part its columns generate.
    Scaffold {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Project a tower or compatible tower down to its floor plan.
    Floorplan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the tower over a floor plan or compatible plan.
    Realize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Descend a compatible plan to a minimal one, printing each move.
    Minimize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-run the descent and check every obligation along the way.
    Certify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a reproducible campaign over generated or supplied instances.
    Search {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// First cursor; lets a campaign resume where an earlier one stopped.
        #[arg(long, default_value_t = 0)]
        start: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Largest number of columns per side in enumerated plans.
        #[arg(long, default_value_t = 2)]
        max_r: usize,
        /// Side of the box the enumerated plans live in.
        #[arg(long, default_value_t = 3)]
        max_box: i64,
        /// Tallest enumerated column.
        #[arg(long, default_value_t = 2)]
        max_h: u64,
        /// Largest generator coordinate in random gluings.
        #[arg(long, default_value_t = 3)]
        max_coord: i64,
        /// Largest diagram size in random gluings.
        #[arg(long, default_value_t = 40)]
        max_boxes: usize,
        /// Most glued components in random gluings.
        #[arg(long, default_value_t = 2)]
        max_components: usize,
        /// Most variables in random gluings.
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        /// Corpus file for certify-corpus: one instance document per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Append the record log here, one JSON line per record.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw an instance as an ascii grid or an svg document.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    VerifyTheorem,
    CrossCheck,
    HuntN4,
    CertifyCorpus,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::VerifyTheorem => Mode::VerifyTheorem,
            ModeArg::CrossCheck => Mode::CrossCheck,
            ModeArg::HuntN4 => Mode::HuntN4,
            ModeArg::CertifyCorpus => Mode::CertifyCorpus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    };
    std::process::exit(code);
}

fn read_instance(path: &Path) -> Result<Instance, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Instance::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn step_line(step: &DescentStep) -> String {
    let held = step.obligations.iter().filter(|o| o.holds).count();
    format!("{} [{}/{} obligations hold]", step.move_kind, held, step.obligations.len())
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Check { input } => cmd_check(&input),
        Command::AlgebraDim { input } => cmd_algebra_dim(&input),
        Command::Scaffold { input, output } => cmd_scaffold(&input, output.as_deref()),
        Command::Floorplan { input, output } => cmd_floorplan(&input, output.as_deref()),
        Command::Realize { input, output } => cmd_realize(&input, output.as_deref()),
        Command::Minimize { input, output } => cmd_minimize(&input, output.as_deref()),
        Command::Certify { input } => cmd_certify(&input),
        Command::Render { input, format, output } => {
            cmd_render(&input, format, output.as_deref())
        }
        Command::Search {
            mode,
            seed,
            count,
            start,
            workers,
            max_r,
            max_box,
            max_h,
            max_coord,
            max_boxes,
            max_components,
            max_vars,
            input,
            output,
        } => {
            let mut config = CampaignConfig::new(mode.into(), seed, count);
            config.start = start;
            config.workers = workers;
            config.plan_bounds = PlanBounds::new(max_r, max_box, max_h);
            config.gluing_bounds = GluingBounds::new(max_coord, max_boxes, max_components);
            config.max_vars = max_vars;
            config.input = input;
            cmd_search(&config, output.as_deref())
        }
    }
}

fn cmd_check(input: &Path) -> Result<i32, String> {
    let instance = read_instance(input)?;
    match &instance {
        Instance::Gluing(datum) => {
            let report = datum.validate();
            if !report.is_valid() {
                println!("invalid gluing datum:");
                for violation in report.violations() {
                    println!("  {violation}");
                }
                return Ok(1);
            }
            let outcome = datum.gerstenhaber_check().map_err(|e| e.to_string())?;
            println!("kind: gluing");
            println!("variables: {}", datum.dim());
            println!("module dimension: {}", outcome.module_dimension);
            println!("algebra dimension: {}", outcome.algebra_dimension);
            println!("margin: {}", outcome.margin);
            println!("deficiency: {}", outcome.deficiency);
            println!("verdict: {}", outcome.verdict);
            println!("consistent: {}", outcome.consistent);
            if !outcome.consistent {
                println!("anomaly: counted dimensions disagree with the closed forms");
                println!("witness: {}", input.display());
                return Ok(2);
            }
            if outcome.verdict == Verdict::Counterexample {
                println!("witness: {}", input.display());
                return Ok(2);
            }
            Ok(0)
        }
        Instance::Tower(tower) => {
            let report = tower.validate();
            if !report.is_valid() {
                println!("invalid tower:");
                for violation in report.violations() {
                    println!("  {violation}");
                }
                return Ok(1);
            }
            println!("kind: tower");
            println!("boxes: {}", tower.lambda().len());
            println!("columns: {}", tower.columns().len());
            println!("scaffolded: {}", tower.is_scaffolded().map_err(|e| e.to_string())?);
            Ok(0)
        }
        Instance::CompatibleTower(ct) => {
            if !ct.is_valid() {
                let (p_report, q_report) = ct.validate();
                println!("invalid compatible tower:");
                for violation in p_report.violations() {
                    println!("  lambda side: {violation}");
                }
                for violation in q_report.violations() {
                    println!("  mu side: {violation}");
                }
                return Ok(1);
            }
            let formula = ct.deficiency_formula();
            let counted = deficiency_of_tower(ct).map_err(|e| e.to_string())?;
            println!("kind: compatible-tower");
            println!("columns: {}", ct.columns().len());
            println!("deficiency (formula): {formula}");
            println!("deficiency (counted): {counted}");
            if counted != formula {
                println!("anomaly: counted deficiency disagrees with the formula");
                println!("witness: {}", input.display());
                return Ok(2);
            }
            Ok(0)
        }
        Instance::FloorPlan(plan) => {
            println!("kind: floor-plan");
            println!("points: {}", plan.len());
            println!("total height: {}", plan.total_height());
            Ok(0)
        }
        Instance::CompatibleFloorPlan(cp) => {
            println!("kind: compatible-floor-plan");
            println!("columns: {}", cp.len());
            println!("total height: {}", cp.total_height());
            println!("overlap: {}", cp.overlap().is_some());
            Ok(0)
        }
    }
}

fn cmd_algebra_dim(input: &Path) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let Instance::Gluing(datum) = &instance else {
        return Err(format!("algebra-dim expects a gluing, found {}", instance.kind()));
    };
    let report = datum.validate();
    if !report.is_valid() {
        for violation in report.violations() {
            eprintln!("invalid gluing datum: {violation}");
        }
        return Ok(1);
    }
    let outcome = datum.gerstenhaber_check().map_err(|e| e.to_string())?;
    println!("{}", outcome.algebra_dimension);
    Ok(0)
}

fn cmd_scaffold(input: &Path, output: Option<&Path>) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let Instance::Tower(tower) = &instance else {
        return Err(format!("scaffold expects a tower, found {}", instance.kind()));
    };
    let scaffolded = tower.scaffold().map_err(|e| e.to_string())?;
    emit(output, &Instance::Tower(scaffolded).to_json_pretty())?;
    Ok(0)
}

fn cmd_floorplan(input: &Path, output: Option<&Path>) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let projected = match &instance {
        Instance::Tower(tower) => {
            Instance::FloorPlan(floor_plan_of(tower).map_err(|e| e.to_string())?)
        }
        Instance::CompatibleTower(ct) => Instance::CompatibleFloorPlan(
            floor_plan_of_compatible(ct).map_err(|e| e.to_string())?,
        ),
        other => {
            return Err(format!(
                "floorplan expects a tower or compatible tower, found {}",
                other.kind()
            ))
        }
    };
    emit(output, &projected.to_json_pretty())?;
    Ok(0)
}

fn cmd_realize(input: &Path, output: Option<&Path>) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let built = match &instance {
        Instance::FloorPlan(plan) => {
            Instance::Tower(realize(plan).map_err(|e| e.to_string())?)
        }
        Instance::CompatibleFloorPlan(cp) => {
            Instance::CompatibleTower(realize_compatible(cp).map_err(|e| e.to_string())?)
        }
        other => {
            return Err(format!(
                "realize expects a floor plan or compatible plan, found {}",
                other.kind()
            ))
        }
    };
    emit(output, &built.to_json_pretty())?;
    Ok(0)
}

fn cmd_minimize(input: &Path, output: Option<&Path>) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let Instance::CompatibleFloorPlan(cp) = &instance else {
        return Err(format!("minimize expects a compatible plan, found {}", instance.kind()));
    };
    let (minimal, trace) = minimize(cp);
    for step in trace.steps() {
        println!("{}", step_line(step));
    }
    println!("minimized in {} moves; {} columns remain", trace.len(), minimal.len());
    if output.is_some() {
        emit(output, &Instance::CompatibleFloorPlan(minimal).to_json_pretty())?;
    }
    Ok(0)
}

fn cmd_certify(input: &Path) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let Instance::CompatibleFloorPlan(cp) = &instance else {
        return Err(format!("certify expects a compatible plan, found {}", instance.kind()));
    };
    match certify(cp) {
        Ok(trace) => {
            for step in trace.steps() {
                println!("{}", step_line(step));
            }
            println!("certified: descent reached the empty plan in {} moves", trace.len());
            Ok(0)
        }
        Err(e) => {
            println!("certification failed: {e}");
            println!("witness: {}", input.display());
            Ok(2)
        }
    }
}

fn cmd_search(config: &CampaignConfig, output: Option<&Path>) -> Result<i32, String> {
    let clock = Instant::now();
    let outcome = run_campaign(config).map_err(|e| e.to_string())?;
    let elapsed = clock.elapsed();
    let summary = &outcome.summary;
    println!("mode: {}", summary.mode);
    println!("instances: {}", summary.instances);
    println!("findings: {}", summary.findings);
    println!("anomalies: {}", summary.anomalies);
    match summary.min_deficiency {
        Some(d) => println!("min deficiency: {d}"),
        None => println!("min deficiency: none"),
    }
    eprintln!("wall time: {elapsed:.2?}");
    if let Some(path) = output {
        outcome.write_log(path).map_err(|e| format!("{}: {e}", path.display()))?;
        println!("log: {}", path.display());
    }
    if let Some(witness) = outcome.witness() {
        match output {
            Some(path) => {
                let mut name = path.as_os_str().to_owned();
                name.push(".witness.json");
                let witness_path = PathBuf::from(name);
                std::fs::write(&witness_path, witness.record.to_json_pretty())
                    .map_err(|e| format!("{}: {e}", witness_path.display()))?;
                println!("witness: {}", witness_path.display());
            }
            None => {
                println!("witness: {}", witness.record.to_json_line());
            }
        }
        return Ok(2);
    }
    Ok(0)
}

fn cmd_render(input: &Path, format: FormatArg, output: Option<&Path>) -> Result<i32, String> {
    let instance = read_instance(input)?;
    let format = match format {
        FormatArg::Ascii => RenderFormat::Ascii,
        FormatArg::Svg => RenderFormat::Svg,
    };
    let text = match &instance {
        Instance::FloorPlan(plan) => render_floor_plan(plan, format),
        Instance::CompatibleFloorPlan(cp) => render_compatible_plan(cp, format),
        Instance::Tower(tower) => {
            render_diagram(tower.lambda(), format).map_err(|e| e.to_string())?
        }
        Instance::CompatibleTower(ct) => format!(
            "lambda:\n{}mu:\n{}",
            render_diagram(ct.lambda(), format).map_err(|e| e.to_string())?,
            render_diagram(ct.mu(), format).map_err(|e| e.to_string())?,
        ),
        Instance::Gluing(datum) => render_gluing(datum, format).map_err(|e| e.to_string())?,
    };
    emit(output, &text)?;
    Ok(0)
}
