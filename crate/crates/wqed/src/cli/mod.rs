//! Scenario-driven command line: parses a flat config, runs the field
//! computations, and emits plot-ready CSV (or JSON) for each figure-style
//! scan, plus a machine-readable validation report.
//!
//! Subcommands: `afc | map2d | timeseries | spatial | asymptotics | validate`.
//! Exit codes: 0 success, 1 validation failure, 2 config error, 3 numeric
//! convergence failure.

pub mod config;
pub mod table;

use crate::dynamics::PulseSpec;
use crate::field::{
    asymptotic_field, backward_field, backward_field_large_time, fit_oscillation, forward_field,
    forward_field_large_time, offres_intensity, timeseries_intensity, Direction, SpaceTimePoint,
};
use crate::stationary::{reflection_for, transmission_for};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{ConfigError, GridSpec, Scenario};
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;
use table::{Cell, Table};

#[derive(Debug, Parser)]
#[command(
    name = "wqed",
    version,
    about = "Space-time structure of a single photon scattered by a waveguide qubit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Amplitude-frequency curves of the large-time fields at fixed |x|.
    Afc(RunArgs),
    /// 2D intensity map over (x, ω_S) at fixed t.
    Map2d(RunArgs),
    /// Intensity vs time at a fixed point, with the beat-frequency fit.
    Timeseries(RunArgs),
    /// Spatial interference fringes at the half-transparency detuning.
    Spatial(RunArgs),
    /// Full vs far-field expansion with residuals.
    Asymptotics(RunArgs),
    /// Run the invariant suite and emit a JSON report.
    Validate(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Path to a `key = value` config file (defaults apply when omitted).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for grid commands (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Substitute the dephasing/loss rates into the field formulas.
    #[arg(long)]
    pub lossy: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn ok_cell() -> Cell {
    Cell::S("ok".into())
}

fn skip_reason(e: &Error) -> Cell {
    Cell::S(format!(
        "skipped_{}",
        match e {
            Error::Domain(_) => "singularity_guard",
            Error::Precondition(_) => "causality",
            Error::Convergence(_) => "convergence",
        }
    ))
}

fn pulse_at(scenario: &Scenario, omega_s: f64) -> Result<PulseSpec> {
    PulseSpec::new(omega_s, scenario.pulse.delta, scenario.pulse.length)
}

fn cmd_afc(sc: &Scenario, lossy: bool) -> Result<Table> {
    let grid = sc.freq_grid.unwrap_or(GridSpec {
        min: 0.995,
        max: 1.005,
        steps: 401,
    });
    let x = sc.x_fixed;
    let t = x / sc.params.v_g + 50.0 / sc.params.gamma_rad;
    let mut table = Table::new(&[
        "omega_over_Omega",
        "transmittance",
        "reflectance",
        "stationary_T_sq",
        "stationary_R_sq",
        "status",
    ]);
    table.meta.push(("x_mm".into(), table::format_f64(x * 1e3)));
    for f in grid.values() {
        let ws = f * sc.params.omega_q;
        let pulse = pulse_at(sc, ws)?;
        // reference curves: driven amplitudes when a probe power is set
        let (t_sq, r_sq) = if sc.drive.rabi > 0.0 {
            let drv = crate::stationary::DriveSpec::new(ws, sc.drive.rabi)?;
            (
                crate::stationary::transmission_driven(&sc.params, &drv).norm_sqr(),
                crate::stationary::reflection_driven(&sc.params, &drv).norm_sqr(),
            )
        } else {
            (
                transmission_for(&sc.params, ws, lossy).norm_sqr(),
                reflection_for(&sc.params, ws, lossy).norm_sqr(),
            )
        };
        let fwd = forward_field_large_time(x, &sc.params, &pulse, t, lossy);
        let bwd = backward_field_large_time(-x, &sc.params, &pulse, t, lossy);
        match (fwd, bwd) {
            (Ok(u), Ok(v)) => table.push(vec![
                Cell::F(f),
                Cell::F(u.norm_sqr()),
                Cell::F(v.norm_sqr()),
                Cell::F(t_sq),
                Cell::F(r_sq),
                ok_cell(),
            ]),
            (Err(e), _) | (_, Err(e)) => table.push(vec![
                Cell::F(f),
                Cell::Empty,
                Cell::Empty,
                Cell::F(t_sq),
                Cell::F(r_sq),
                skip_reason(&e),
            ]),
        }
    }
    Ok(table)
}

fn cmd_map2d(sc: &Scenario, lossy: bool) -> Result<Table> {
    let guard = 1e-3; // keep the default grid a millimetre off the singular loci
    let reach = sc.params.v_g * sc.t_fixed;
    let x_grid = match (sc.x_grid, sc.direction) {
        (Some(g), _) => g,
        (None, Direction::Forward) => GridSpec {
            min: 1e-3,
            max: reach - guard,
            steps: 300,
        },
        (None, Direction::Backward) => GridSpec {
            min: -(reach - guard),
            max: -1e-3,
            steps: 300,
        },
    };
    let f_grid = sc.freq_grid.unwrap_or(GridSpec {
        min: 0.995,
        max: 1.005,
        steps: 201,
    });
    let mut table = Table::new(&[
        "x_mm",
        "omega_over_Omega",
        "intensity",
        "stationary_intensity",
        "status",
    ]);
    table
        .meta
        .push(("t_ns".into(), table::format_f64(sc.t_fixed * 1e9)));
    let freqs = f_grid.values();
    let rows: Vec<Vec<Vec<Cell>>> = x_grid
        .values()
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::with_capacity(freqs.len());
            for &f in &freqs {
                let ws = f * sc.params.omega_q;
                let pulse = match pulse_at(sc, ws) {
                    Ok(p) => p,
                    Err(e) => {
                        out.push(vec![
                            Cell::F(x * 1e3),
                            Cell::F(f),
                            Cell::Empty,
                            Cell::Empty,
                            skip_reason(&e),
                        ]);
                        continue;
                    }
                };
                let stat = match sc.direction {
                    Direction::Forward => transmission_for(&sc.params, ws, lossy).norm_sqr(),
                    Direction::Backward => reflection_for(&sc.params, ws, lossy).norm_sqr(),
                };
                let point = SpaceTimePoint { x, t: sc.t_fixed };
                let sample = match sc.direction {
                    Direction::Forward => forward_field(point, &sc.params, &pulse, lossy),
                    Direction::Backward => backward_field(point, &sc.params, &pulse, lossy),
                };
                match sample {
                    Ok(s) => out.push(vec![
                        Cell::F(x * 1e3),
                        Cell::F(f),
                        Cell::F(s.u_over_a.norm_sqr()),
                        Cell::F(stat),
                        ok_cell(),
                    ]),
                    Err(e) => out.push(vec![
                        Cell::F(x * 1e3),
                        Cell::F(f),
                        Cell::Empty,
                        Cell::F(stat),
                        skip_reason(&e),
                    ]),
                }
            }
            out
        })
        .collect();
    for row_block in rows {
        for row in row_block {
            table.push(row);
        }
    }
    Ok(table)
}

fn cmd_timeseries(sc: &Scenario, lossy: bool) -> Result<Table> {
    let params = &sc.params;
    if sc.x0.abs() - params.v_g * sc.t0 >= 0.0 {
        return Err(Error::Precondition(format!(
            "timeseries needs |x0| < v_g t0 (|x0| = {} m, v_g t0 = {} m)",
            sc.x0.abs(),
            params.v_g * sc.t0
        )));
    }
    let detuning = sc.pulse.omega_s - params.omega_q;
    let beat = if detuning.abs() > 0.0 {
        2.0 * std::f64::consts::PI / detuning.abs()
    } else {
        2.0 * std::f64::consts::PI / (0.5 * params.gamma_rad)
    };
    let carrier = 2.0 * std::f64::consts::PI / params.omega_q;
    let grid: Vec<f64> = match sc.t_grid {
        Some(g) => g.values(),
        None => {
            let step = carrier / sc.samples_per_carrier;
            let n = ((sc.periods * beat) / step).ceil() as usize;
            (0..n).map(|k| sc.t0 + step * k as f64).collect()
        }
    };
    let intensity = timeseries_intensity(sc.x0, params, &sc.pulse, &grid, lossy)?;
    // a grid too short for the frequency fit still yields a valid series
    let fit = fit_oscillation(&grid, &intensity, carrier);
    let dir = if sc.x0 >= 0.0 {
        Direction::Forward
    } else {
        Direction::Backward
    };
    let stat = match dir {
        Direction::Forward => transmission_for(params, sc.pulse.omega_s, lossy).norm_sqr(),
        Direction::Backward => reflection_for(params, sc.pulse.omega_s, lossy).norm_sqr(),
    };
    let mut table = Table::new(&["t_ns", "intensity", "stationary_intensity", "status"]);
    table
        .meta
        .push(("x0_mm".into(), table::format_f64(sc.x0 * 1e3)));
    match fit {
        Ok(fit) => {
            match fit.frequency {
                Some(f) => {
                    table.meta.push(("oscillation".into(), "detected".into()));
                    table
                        .meta
                        .push(("fitted_frequency_rad_per_s".into(), table::format_f64(f)));
                    table.meta.push((
                        "fitted_frequency_over_gamma".into(),
                        table::format_f64(f / params.gamma_rad),
                    ));
                }
                None => table.meta.push(("oscillation".into(), "none".into())),
            }
            table
                .meta
                .push(("peaks_kept".into(), fit.peaks_kept.to_string()));
        }
        Err(e) => {
            table.meta.push(("oscillation".into(), "unresolved".into()));
            table.meta.push(("fit_skipped".into(), e.to_string()));
        }
    }
    for (t, i) in grid.iter().zip(&intensity) {
        table.push(vec![
            Cell::F(t * 1e9),
            Cell::F(*i),
            Cell::F(stat),
            ok_cell(),
        ]);
    }
    Ok(table)
}

fn cmd_spatial(sc: &Scenario) -> Result<Table> {
    let params = &sc.params;
    let lam = params.wavelength();
    // the closed fringe formulas hold at the half-transparency detuning
    let ws = params.omega_q + 0.5 * params.gamma_rad;
    let pulse = pulse_at(sc, ws)?;
    let grid = sc.x_grid.unwrap_or(GridSpec {
        min: 2.0 * lam,
        max: 10.0 * lam,
        steps: 2000,
    });
    let mut table = Table::new(&[
        "x_mm",
        "x_over_lambda",
        "transmittance",
        "reflectance",
        "trns_asymptotic",
        "rfl_asymptotic",
        "envelope_upper",
        "envelope_lower",
        "status",
    ]);
    table.meta.push((
        "omega_s_offset_gamma".into(),
        "0.5 (fixed by the fringe formulas)".into(),
    ));
    table
        .meta
        .push(("stationary_intensity".into(), "0.5".into()));
    for x in grid.values() {
        let xa = x.abs();
        let alpha = ws * xa / params.v_g;
        let trns = offres_intensity(xa, params, &pulse, Direction::Forward);
        let rfl = offres_intensity(-xa, params, &pulse, Direction::Backward);
        // large-argument tails give the smooth fringe envelopes
        let w_as = num_complex::Complex64::new(-alpha.cos(), alpha.sin())
            / (2.0 * std::f64::consts::PI * alpha);
        let trns_as = 0.5 * (1.0 - w_as).norm_sqr();
        let rfl_as = 0.5 * (1.0 + w_as).norm_sqr();
        let env = 1.0 / (2.0 * std::f64::consts::PI * alpha);
        match (trns, rfl) {
            (Ok(tv), Ok(rv)) => table.push(vec![
                Cell::F(x * 1e3),
                Cell::F(x / lam),
                Cell::F(tv),
                Cell::F(rv),
                Cell::F(trns_as),
                Cell::F(rfl_as),
                Cell::F(0.5 + env),
                Cell::F(0.5 - env),
                ok_cell(),
            ]),
            (Err(e), _) | (_, Err(e)) => table.push(vec![
                Cell::F(x * 1e3),
                Cell::F(x / lam),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                skip_reason(&e),
            ]),
        }
    }
    Ok(table)
}

fn cmd_asymptotics(sc: &Scenario, lossy: bool) -> Result<Table> {
    let params = &sc.params;
    let lam = params.wavelength();
    let grid = sc.x_grid.unwrap_or(GridSpec {
        min: 2.0 * lam,
        max: 30.0 * lam,
        steps: 600,
    });
    let t = (50.0 / params.gamma_rad).max(1.5 * grid.max.abs() / params.v_g);
    let dir = sc.direction;
    let mut table = Table::new(&[
        "x_mm",
        "full_re",
        "full_im",
        "asym_re",
        "asym_im",
        "full_minus_asym_abs",
        "full_minus_stationary_abs",
        "correction_scale",
        "status",
    ]);
    table.meta.push(("t_ns".into(), table::format_f64(t * 1e9)));
    for x in grid.values() {
        let xs = match dir {
            Direction::Forward => x.abs(),
            Direction::Backward => -x.abs(),
        };
        let point = SpaceTimePoint { x: xs, t };
        let full = match dir {
            Direction::Forward => forward_field(point, params, &sc.pulse, lossy),
            Direction::Backward => backward_field(point, params, &sc.pulse, lossy),
        };
        let asym = asymptotic_field(point, params, &sc.pulse, dir, lossy);
        match (full, asym) {
            (Ok(s), Ok(a)) => {
                let stat = s.parts.stationary;
                table.push(vec![
                    Cell::F(xs * 1e3),
                    Cell::F(s.u_over_a.re),
                    Cell::F(s.u_over_a.im),
                    Cell::F(a.value.re),
                    Cell::F(a.value.im),
                    Cell::F((s.u_over_a - a.value).norm()),
                    Cell::F((s.u_over_a - stat).norm()),
                    Cell::F(a.correction_scale),
                    ok_cell(),
                ]);
            }
            (Err(e), _) | (_, Err(e)) => table.push(vec![
                Cell::F(xs * 1e3),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                skip_reason(&e),
            ]),
        }
    }
    Ok(table)
}

fn load_scenario(args: &RunArgs) -> std::result::Result<Scenario, ConfigError> {
    let mut sc = match &args.config {
        Some(path) => config::parse_config(path)?,
        None => config::parse_config_str("")?,
    };
    if args.threads > 0 {
        sc.threads = args.threads;
    }
    Ok(sc)
}

fn write_table(table: &Table, args: &RunArgs) -> std::io::Result<()> {
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    match args.format {
        Format::Csv => table.write_csv(&mut out),
        Format::Json => table.write_json(&mut out),
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

/// Parse arguments, run the requested command, and return the process exit
/// code (0 ok, 1 validation failure, 2 config error, 3 convergence failure).
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    let args = match &cli.command {
        Command::Afc(a)
        | Command::Map2d(a)
        | Command::Timeseries(a)
        | Command::Spatial(a)
        | Command::Asymptotics(a)
        | Command::Validate(a) => a,
    };
    let scenario = match load_scenario(args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };

    if let Command::Validate(args) = &cli.command {
        let report = in_pool(scenario.threads, crate::validate::run_all);
        let json = serde_json::to_string_pretty(&report).expect("report serialization");
        let written = match &args.out {
            Some(path) => std::fs::write(path, json + "\n"),
            None => {
                println!("{json}");
                Ok(())
            }
        };
        if let Err(e) = written {
            eprintln!("failed to write report: {e}");
            return 2;
        }
        return if report.passed { 0 } else { 1 };
    }

    let result = in_pool(scenario.threads, || match &cli.command {
        Command::Afc(a) => cmd_afc(&scenario, a.lossy),
        Command::Map2d(a) => cmd_map2d(&scenario, a.lossy),
        Command::Timeseries(a) => cmd_timeseries(&scenario, a.lossy),
        Command::Spatial(_) => cmd_spatial(&scenario),
        Command::Asymptotics(a) => cmd_asymptotics(&scenario, a.lossy),
        Command::Validate(_) => unreachable!("handled above"),
    });
    match result {
        Ok(table) => {
            if let Err(e) = write_table(&table, args) {
                eprintln!("failed to write output: {e}");
                return 2;
            }
            0
        }
        Err(Error::Convergence(msg)) => {
            eprintln!("convergence failure: {msg}");
            3
        }
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}
