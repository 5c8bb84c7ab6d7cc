//! `skyway` command line: plan, run, compare and gen.
//!
//! Exit codes: 0 success, 1 infeasible or aborted mission, 2 invalid input
//! or arguments.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use skyway_core::mission::plan_scenario;
use skyway_core::planner::MAX_EXHAUSTIVE_PACKAGES;
use skyway_core::{
    assign_levels, compare_strategies, export_telemetry, generate_scenario, parse_scenario,
    run_scenario, GenParams, MissionError, MissionPlan, Scenario, SimConfig, Strategy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISSION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "skyway",
    version,
    about = "Multi-package drone delivery over a skyway network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the delivery plan for a scenario.
    Plan {
        scenario: PathBuf,
        #[arg(long, default_value_t = Strategy::Ndf)]
        strategy: Strategy,
        /// Emit the plan as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Simulate a scenario and optionally write telemetry and report files.
    Run {
        scenario: PathBuf,
        #[arg(long, default_value_t = Strategy::Ndf)]
        strategy: Strategy,
        #[arg(long, value_name = "OUT.csv")]
        telemetry: Option<PathBuf>,
        #[arg(long, value_name = "OUT.json")]
        report: Option<PathBuf>,
    },
    /// Run both strategies and report the distance gap.
    Compare {
        scenario: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random scenario.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        packages: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, num_args = 2, value_names = ["W", "H"])]
        area: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<MissionError> for Failure {
    fn from(e: MissionError) -> Self {
        let code = match e {
            MissionError::Infeasible(_) => EXIT_MISSION,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Plan {
            scenario,
            strategy,
            json,
        } => cmd_plan(&scenario, strategy, json, out),
        Command::Run {
            scenario,
            strategy,
            telemetry,
            report,
        } => cmd_run(
            &scenario,
            strategy,
            telemetry.as_deref(),
            report.as_deref(),
            out,
        ),
        Command::Compare { scenario, json } => cmd_compare(&scenario, json, out),
        Command::Gen {
            nodes,
            packages,
            seed,
            area,
            out: path,
        } => cmd_gen(nodes, packages, seed, area, &path, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn label(scenario: &Scenario) -> &str {
    scenario.label.as_deref().unwrap_or("(unlabelled)")
}

fn write_plan_text(out: &mut dyn Write, plan: &MissionPlan) -> std::io::Result<()> {
    let assignment = assign_levels(plan);
    let order = plan.release_order();
    writeln!(
        out,
        "release order: {}",
        if order.is_empty() {
            "(none)".to_string()
        } else {
            order.join(", ")
        }
    )?;
    for (i, leg) in plan.legs.iter().enumerate() {
        let route = leg.path.node_sequence.join(" -> ");
        match &leg.release {
            Some(id) => writeln!(
                out,
                "leg {}: {route} ({:.6} m) release {id} at level {}",
                i + 1,
                leg.path.total_length,
                assignment.level_of[id]
            )?,
            None => writeln!(
                out,
                "leg {}: {route} ({:.6} m) return",
                i + 1,
                leg.path.total_length
            )?,
        }
    }
    writeln!(out, "total distance: {:.6} m", plan.total_distance())
}

fn cmd_plan(
    path: &Path,
    strategy: Strategy,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let scenario = load(path)?;
    let plan = plan_scenario(&scenario, strategy)?;
    if json {
        let doc = serde_json::json!({
            "scenario": scenario.label,
            "strategy": strategy.label(),
            "release_order": plan.release_order(),
            "levels": assign_levels(&plan),
            "legs": plan.legs,
            "total_distance": plan.total_distance(),
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("plan serializes")
        )?;
    } else {
        writeln!(out, "scenario: {}", label(&scenario))?;
        writeln!(out, "strategy: {strategy}")?;
        write_plan_text(out, &plan)?;
    }
    Ok(EXIT_OK)
}

fn cmd_run(
    path: &Path,
    strategy: Strategy,
    telemetry: Option<&Path>,
    report_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let scenario = load(path)?;
    let outcome = run_scenario(&scenario, strategy, &SimConfig::default())?;
    if let Some(csv_path) = telemetry {
        fs::write(csv_path, export_telemetry(&outcome.log))?;
    }
    if let Some(json_path) = report_path {
        let mut text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        text.push('\n');
        fs::write(json_path, text)?;
    }

    let r = &outcome.report;
    writeln!(out, "scenario: {}", label(&scenario))?;
    writeln!(out, "strategy: {strategy}")?;
    match &r.abort_reason {
        None if r.completed => writeln!(out, "status: completed")?,
        None => writeln!(out, "status: incomplete")?,
        Some(reason) => writeln!(out, "status: aborted ({reason})")?,
    }
    for rel in &r.releases {
        writeln!(
            out,
            "release {} at {} t={:.6} s",
            rel.package, rel.node, rel.t
        )?;
    }
    writeln!(out, "horizontal distance: {:.6} m", r.horizontal_distance)?;
    writeln!(out, "vertical distance: {:.6} m", r.vertical_distance)?;
    writeln!(out, "total distance 3d: {:.6} m", r.total_distance_3d)?;
    writeln!(out, "energy: {:.6} J", r.energy.total)?;
    writeln!(out, "battery remaining: {:.6} J", r.battery_remaining)?;
    writeln!(out, "duration: {:.6} s", r.duration)?;
    writeln!(
        out,
        "end position: ({:.6}, {:.6}, {:.6})",
        r.end_position[0], r.end_position[1], r.end_position[2]
    )?;
    writeln!(out, "telemetry records: {}", outcome.log.len())?;
    Ok(if r.completed { EXIT_OK } else { EXIT_MISSION })
}

fn cmd_compare(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let scenario = load(path)?;
    if scenario.packages.len() > MAX_EXHAUSTIVE_PACKAGES {
        return Err(Failure::input(format!(
            "compare supports at most {MAX_EXHAUSTIVE_PACKAGES} packages, scenario has {}",
            scenario.packages.len()
        )));
    }
    let result = compare_strategies(&scenario, &SimConfig::default())?;
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&result).expect("result serializes")
        )?;
    } else {
        writeln!(out, "scenario: {}", label(&scenario))?;
        writeln!(
            out,
            "{:<12} {:>16} {:>16}  {:<9} release order",
            "strategy", "distance (m)", "energy (J)", "completed"
        )?;
        for s in &result.strategies {
            writeln!(
                out,
                "{:<12} {:>16.6} {:>16.6}  {:<9} {}",
                s.label,
                s.total_distance,
                s.total_energy,
                s.completed,
                s.release_order.join(", ")
            )?;
        }
        writeln!(out, "distance gap: {:.2}%", result.distance_gap_percent)?;
    }
    let all_completed = result.strategies.iter().all(|s| s.completed);
    Ok(if all_completed { EXIT_OK } else { EXIT_MISSION })
}

fn cmd_gen(
    nodes: usize,
    packages: usize,
    seed: u64,
    area: Option<Vec<f64>>,
    path: &Path,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut params = GenParams::new(nodes, packages, seed);
    if let Some(area) = area {
        params.area = (area[0], area[1]);
    }
    let scenario = generate_scenario(&params).map_err(|e| Failure::input(e.to_string()))?;
    fs::write(path, scenario.to_json())?;
    writeln!(
        out,
        "wrote {} ({nodes} nodes, {packages} packages, seed {seed})",
        path.display()
    )?;
    Ok(EXIT_OK)
}
