//! `stavg`: Born versus spacetime-averaged energy in the infinite square well.

mod output;
mod svg;

use std::f64::consts::PI;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spacetime_average::analysis::{
    intersection_row, magnitude_summary, nstate_trend_with, sweep_delta, uniform_grid,
    FigurePreset, SweepResult, Weighting, DEFAULT_GRID_POINTS,
};
use spacetime_average::closed_form::{intersection_count, TwoStateSpec};
use spacetime_average::quadrature::{
    validate_two_state_with, QuadratureOptions, DEFAULT_MAX_LEVELS, DEFAULT_REL_TOL,
};
use spacetime_average::Error;

const PI2: f64 = PI * PI;

#[derive(Parser)]
#[command(
    name = "stavg",
    version,
    about = "Born versus spacetime-averaged energy in the infinite square well"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Both energies and Δ for one two-state superposition.
    TwoState {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Δ(P) on a uniform grid of P for one pair of quantum numbers.
    Sweep {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS as u32, value_parser = clap::value_parser!(u32).range(2..))]
        grid: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Δ(P) for the five preset pairs, written as fig1..fig5.
    Figures {
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS as u32, value_parser = clap::value_parser!(u32).range(2..))]
        grid: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Δ for equal-weight superpositions of the first N eigenstates.
    Nstate {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(2..=6))]
        max_states: u32,
        #[command(flatten)]
        quadrature: QuadratureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form average against the numerical double integral.
    Validate {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        quadrature: QuadratureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct StateArgs {
    #[arg(long)]
    n1: u32,
    #[arg(long)]
    n2: u32,
}

#[derive(Args)]
struct QuadratureArgs {
    /// Relative tolerance of the numerical double integral, in [1e-6, 1e-2].
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    tol: f64,
    /// Refinement levels before giving up; each level quadruples the work.
    #[arg(long, default_value_t = DEFAULT_MAX_LEVELS, value_parser = clap::value_parser!(u32).range(3..=14))]
    max_levels: u32,
}

impl QuadratureArgs {
    fn options(&self) -> Result<QuadratureOptions, Error> {
        Ok(QuadratureOptions::new(self.tol)?.with_max_levels(self.max_levels))
    }

    fn describe(&self) -> Value {
        json!({ "rel_tol": self.tol, "max_levels": self.max_levels })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct OutputArgs {
    /// Comma-separated list of output formats.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv")]
    format: Vec<Format>,
    /// Directory for output files; created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

impl OutputArgs {
    fn wants(&self, f: Format) -> bool {
        self.format.contains(&f)
    }
}

enum Failure {
    Core(Error),
    Io(io::Error),
    /// The run finished but its check failed; carries the results summary.
    Disagreement(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Run {
    name: &'static str,
    stem: String,
    params: Value,
    tolerances: Value,
    summary: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = command_name(&cli.command);
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => report_failure(command, failure),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::TwoState { .. } => "two-state",
        Command::Sweep { .. } => "sweep",
        Command::Figures { .. } => "figures",
        Command::Nstate { .. } => "nstate",
        Command::Validate { .. } => "validate",
    }
}

fn report_failure(command: &str, failure: Failure) -> ExitCode {
    let (code, record) = match failure {
        Failure::Core(e) => {
            let code = if e.is_input_error() { 2 } else { 1 };
            let mut record = json!({
                "command": command,
                "error": e.kind(),
                "message": e.to_string(),
            });
            if let Error::NotConverged(report) = &e {
                record["last_estimate"] = json!(report.value);
                record["est_error"] = json!(report.est_error);
                record["levels"] = json!(report.levels);
                record["history"] = json!(report.history);
            }
            (code, record)
        }
        Failure::Io(e) => (
            1,
            json!({ "command": command, "error": "io", "message": e.to_string() }),
        ),
        Failure::Disagreement(summary) => (
            1,
            json!({
                "command": command,
                "error": "disagreement",
                "message": "closed-form and numerical averages differ by more than the tolerance",
                "results": summary,
            }),
        ),
    };
    eprintln!("{record}");
    ExitCode::from(code)
}

fn execute(command: Command) -> Result<(), Failure> {
    let start = Instant::now();
    let (run, out, outcome) = match command {
        Command::TwoState { state, p, output } => {
            (two_state(&state, p, &output)?, output.out, true)
        }
        Command::Sweep {
            state,
            grid,
            output,
        } => (sweep(&state, grid as usize, &output)?, output.out, true),
        Command::Figures { grid, output } => (figures(grid as usize, &output)?, output.out, true),
        Command::Nstate {
            max_states,
            quadrature,
            output,
        } => (
            nstate(max_states as usize, &quadrature, &output)?,
            output.out,
            true,
        ),
        Command::Validate {
            state,
            p,
            quadrature,
            output,
        } => {
            let (run, ok) = validate(&state, p, &quadrature, &output)?;
            (run, output.out, ok)
        }
    };
    write_sidecar(&out, &run, start.elapsed().as_secs_f64())?;
    if outcome {
        Ok(())
    } else {
        Err(Failure::Disagreement(run.summary))
    }
}

fn write_sidecar(dir: &Path, run: &Run, seconds: f64) -> io::Result<()> {
    let record = output::sidecar(
        run.name,
        run.params.clone(),
        run.tolerances.clone(),
        run.summary.clone(),
        seconds,
    );
    output::write_json(dir, &format!("{}.run.json", run.stem), &record)
}

fn in_pi2(e: f64) -> String {
    format!("{} π²", output::format_sig(e / PI2, 8))
}

fn two_state(state: &StateArgs, p: f64, out: &OutputArgs) -> Result<Run, Failure> {
    let spec = TwoStateSpec::new(state.n1, state.n2, p)?;
    let result = sweep_delta(state.n1, state.n2, &[p])?;
    let row = result.rows[0];
    let crossings = intersection_count(&spec)?;

    println!("n1 = {}, n2 = {}, P = {}", state.n1, state.n2, p);
    println!(
        "born  = {} ({})",
        output::format_sig(row.born, 12),
        in_pi2(row.born)
    );
    println!(
        "dgp   = {} ({})",
        output::format_sig(row.dgp, 12),
        in_pi2(row.dgp)
    );
    println!("delta = {:.2}%", row.delta_percent);
    println!(
        "crossings = {} ({} per cell)",
        crossings.total, crossings.per_cell
    );

    write_sweep_files(&out.out, "two_state", &result, out, false)?;
    let summary = json!({
        "born": row.born,
        "dgp": row.dgp,
        "delta_percent": row.delta_percent,
        "crossings": crossings.total,
        "crossings_per_cell": crossings.per_cell.to_string(),
    });
    Ok(Run {
        name: "two-state",
        stem: "two_state".into(),
        params: json!({ "n1": state.n1, "n2": state.n2, "P": p, "format": formats(out) }),
        tolerances: json!({ "root_isolation": "bisection to machine precision" }),
        summary,
    })
}

fn sweep(state: &StateArgs, points: usize, out: &OutputArgs) -> Result<Run, Failure> {
    let result = sweep_delta(state.n1, state.n2, &uniform_grid(points))?;
    let stem = format!("sweep_{}_{}", state.n1, state.n2);
    write_sweep_files(&out.out, &stem, &result, out, true)?;
    let summary = sweep_summary(&result)?;
    println!("{}", summary_line(&stem, &result)?);
    Ok(Run {
        name: "sweep",
        stem,
        params: json!({ "n1": state.n1, "n2": state.n2, "grid": points, "format": formats(out) }),
        tolerances: json!({ "root_isolation": "bisection to machine precision" }),
        summary,
    })
}

fn figures(points: usize, out: &OutputArgs) -> Result<Run, Failure> {
    let grid = uniform_grid(points);
    let mut summaries = serde_json::Map::new();
    for preset in FigurePreset::ALL {
        let (n1, n2) = preset.quantum_numbers();
        let result = sweep_delta(n1, n2, &grid)?;
        write_sweep_files(&out.out, preset.name(), &result, out, true)?;
        println!("{}", summary_line(preset.name(), &result)?);
        summaries.insert(preset.name().to_string(), sweep_summary(&result)?);
    }
    Ok(Run {
        name: "figures",
        stem: "figures".into(),
        params: json!({ "grid": points, "format": formats(out) }),
        tolerances: json!({ "root_isolation": "bisection to machine precision" }),
        summary: Value::Object(summaries),
    })
}

fn nstate(max_states: usize, q: &QuadratureArgs, out: &OutputArgs) -> Result<Run, Failure> {
    let rows = nstate_trend_with(max_states, Weighting::Equal, &q.options()?)?;
    println!("N  born/π²        dgp/π²          delta%        est_error  levels");
    for r in &rows {
        println!(
            "{:<2} {:<15} {:<15} {:<13} {:<10} {}",
            r.states,
            output::format_sig(r.born / PI2, 10),
            output::format_sig(r.dgp / PI2, 10),
            output::format_sig(r.delta_percent, 8),
            output::format_sig(r.report.est_error, 3),
            r.report.levels
        );
    }
    if out.wants(Format::Csv) {
        output::write_text(&out.out, "nstate.csv", &output::trend_csv(&rows))?;
    }
    if out.wants(Format::Json) {
        output::write_json(&out.out, "nstate.json", &output::trend_json(&rows))?;
    }
    if out.wants(Format::Svg) {
        eprintln!("note: svg output is not available for nstate");
    }
    Ok(Run {
        name: "nstate",
        stem: "nstate".into(),
        params: json!({ "max_states": max_states, "weighting": "equal", "format": formats(out) }),
        tolerances: q.describe(),
        summary: output::trend_json(&rows),
    })
}

fn validate(
    state: &StateArgs,
    p: f64,
    q: &QuadratureArgs,
    out: &OutputArgs,
) -> Result<(Run, bool), Failure> {
    let spec = TwoStateSpec::new(state.n1, state.n2, p)?;
    let v = validate_two_state_with(&spec, &q.options()?)?;
    let rel = v.relative_difference();
    println!("n1 = {}, n2 = {}, P = {}", state.n1, state.n2, p);
    println!("closed   = {}", output::format_sig(v.closed, 12));
    println!(
        "numeric  = {} (est_error {}, {} levels, {}x{} cells)",
        output::format_sig(v.numeric, 12),
        output::format_sig(v.report.est_error, 3),
        v.report.levels,
        v.report.x_cells,
        v.report.t_cells
    );
    println!("relative difference = {}", output::format_sig(rel, 3));
    println!("agree = {}", v.agree);

    let summary = json!({
        "closed": v.closed,
        "numeric": v.numeric,
        "relative_difference": rel,
        "est_error": v.report.est_error,
        "levels": v.report.levels,
        "singular_cells": v.report.singular_cells,
        "history": v.report.history,
        "agree": v.agree,
    });
    if out.wants(Format::Csv) {
        let csv = format!(
            "n1,n2,P,closed,numeric,relative_difference,est_error,levels,agree\n{},{},{},{},{},{},{},{},{}\n",
            state.n1,
            state.n2,
            output::format_sig(p, 12),
            output::format_sig(v.closed, 12),
            output::format_sig(v.numeric, 12),
            output::format_sig(rel, 12),
            output::format_sig(v.report.est_error, 12),
            v.report.levels,
            v.agree
        );
        output::write_text(&out.out, "validate.csv", &csv)?;
    }
    if out.wants(Format::Json) {
        output::write_json(&out.out, "validate.json", &summary)?;
    }
    if out.wants(Format::Svg) {
        eprintln!("note: svg output is not available for validate");
    }
    let run = Run {
        name: "validate",
        stem: "validate".into(),
        params: json!({ "n1": state.n1, "n2": state.n2, "P": p, "format": formats(out) }),
        tolerances: q.describe(),
        summary,
    };
    Ok((run, v.agree))
}

fn write_sweep_files(
    dir: &Path,
    stem: &str,
    result: &SweepResult,
    out: &OutputArgs,
    plot: bool,
) -> io::Result<()> {
    if out.wants(Format::Csv) {
        output::write_text(dir, &format!("{stem}.csv"), &output::sweep_csv(result))?;
    }
    if out.wants(Format::Json) {
        output::write_json(dir, &format!("{stem}.json"), &output::sweep_json(result))?;
    }
    if out.wants(Format::Svg) {
        if plot {
            output::write_text(dir, &format!("{stem}.svg"), &svg::delta_plot(result))?;
        } else {
            eprintln!("note: svg output needs more than one P value; use `sweep`");
        }
    }
    Ok(())
}

fn sweep_summary(result: &SweepResult) -> Result<Value, Error> {
    let row = intersection_row(result)?;
    let summary = magnitude_summary(result);
    Ok(json!({
        "n1": result.n1,
        "n2": result.n2,
        "points": result.rows.len(),
        "max_abs_delta_percent": summary.map(|s| s.max_abs_delta),
        "argmax_P": summary.map(|s| s.argmax_p),
        "crossings_per_cell_at_half": row.per_cell_at_half.to_string(),
    }))
}

fn summary_line(label: &str, result: &SweepResult) -> Result<String, Error> {
    let row = intersection_row(result)?;
    Ok(format!(
        "{label}: n1 = {}, n2 = {}, max |delta| = {:.4}% at P = {}, crossings per cell at P = 1/2: {}",
        result.n1, result.n2, row.max_abs_delta, row.argmax_p, row.per_cell_at_half
    ))
}

fn formats(out: &OutputArgs) -> Value {
    Value::Array(
        out.format
            .iter()
            .map(|f| {
                json!(match f {
                    Format::Csv => "csv",
                    Format::Json => "json",
                    Format::Svg => "svg",
                })
            })
            .collect(),
    )
}
