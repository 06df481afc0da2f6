//! Invariant check suite behind the `validate` subcommand: oracle
//! agreement, unitarity, causality policy, L-independence, asymptotic
//! recovery, and the special-function identities, each reported as a
//! measured value against its tolerance.

use crate::dynamics::{qubit_beta, PulseSpec};
use crate::field::{
    backward_field, coherent_kernel, damping_kernel, forward_field, retarded, Direction, Retarded,
    SpaceTimePoint,
};
use crate::oracle::{
    mode_sum_simulate, pv_oscillatory_tail, quadrature_kernel, reconstruct_field, KernelKind,
    ModeSumConfig, QuadratureConfig,
};
use crate::special::{ci, exp_integral_e1, si};
use crate::stationary::{reflection, transmission, DriveSpec, SystemParams};
use crate::{Complex64, Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// One validation check: the measured error against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(name: &str, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            measured,
            tolerance,
            pass: measured.is_finite() && measured <= tolerance,
            note: None,
        }
    }

    fn failed(name: &str, tolerance: f64, note: String) -> Self {
        Self {
            name: name.to_string(),
            measured: f64::NAN,
            tolerance,
            pass: false,
            note: Some(note),
        }
    }
}

/// Full validation report (serialized to JSON by the CLI).
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn microwave_params() -> SystemParams {
    SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap()
}

fn desk_params() -> (SystemParams, PulseSpec) {
    let params = SystemParams::lossless(200.0, 1.0, 1.0).unwrap();
    let pulse = PulseSpec::new(201.0, 1e-3, 1.0).unwrap();
    (params, pulse)
}

fn check_resonant_extinction() -> Check {
    let p = microwave_params();
    let t = transmission(&p, p.omega_q).norm_sqr();
    let r = (reflection(&p, p.omega_q).norm_sqr() - 1.0).abs();
    Check::new("resonant_extinction", t.max(r), 1e-12)
}

fn check_unitarity() -> Check {
    let p = microwave_params();
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let w = p.omega_q + p.gamma_rad * (-50.0 + 100.0 * i as f64 / 9_999.0);
        let t = transmission(&p, w);
        let r = reflection(&p, w);
        worst = worst.max((t.norm_sqr() + r.norm_sqr() - 1.0).abs());
        worst = worst.max((t - (1.0 + r)).norm());
    }
    Check::new("unitarity_sweep", worst, 1e-12)
}

fn check_lossy_amplitudes() -> Check {
    let p = SystemParams::new(2.0 * PI * 5e9, 2.0 * PI * 1e7, 4e6, 3e6, 3e8).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let w = p.omega_q + p.gamma_rad * (i as f64 / 20.0 - 5.0);
        let drv = DriveSpec::new(w, 1e-6 * p.gamma_rad).unwrap();
        let t = crate::stationary::transmission_driven(&p, &drv);
        let r = crate::stationary::reflection_driven(&p, &drv);
        worst = worst.max((t - (1.0 + r)).norm());
        worst = worst.max((t - crate::stationary::transmission_lossy(&p, w)).norm());
    }
    // no full extinction with losses
    let t_res = crate::stationary::transmission_lossy(&p, p.omega_q).norm_sqr();
    if t_res <= 0.0 {
        return Check::failed("lossy_amplitudes", 1e-10, "lossy |T(Ω)|² vanished".into());
    }
    Check::new("lossy_amplitudes", worst, 1e-10)
}

/// Oracle agreement for given kernel evaluators (injectable so the test
/// suite can verify a deliberately broken kernel is caught).
pub(crate) fn kernel_oracle_check_with<FD, FC>(damping: FD, coherent: FC) -> Check
where
    FD: Fn(Retarded, &SystemParams) -> Result<Complex64>,
    FC: Fn(Retarded, f64) -> Result<Complex64>,
{
    let params = microwave_params();
    let pulse = PulseSpec::new(params.omega_q + params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();
    let cfg = QuadratureConfig::for_params(&params);
    let grid = [(2e-3, 0.7e-9), (2e-2, 2.5e-9)];
    let mut worst: f64 = 0.0;
    for dir in [Direction::Forward, Direction::Backward] {
        for (ax, t) in grid {
            let x = match dir {
                Direction::Forward => ax,
                Direction::Backward => -ax,
            };
            let pt = SpaceTimePoint { x, t };
            let ret = match retarded(pt, &params, dir) {
                Ok(r) => r,
                Err(e) => return Check::failed("kernel_oracle_agreement", 1e-4, e.to_string()),
            };
            for kind in [KernelKind::Damping, KernelKind::Coherent] {
                let q = match quadrature_kernel(kind, dir, pt, &params, &pulse, &cfg) {
                    Ok(v) => v,
                    Err(e) => return Check::failed("kernel_oracle_agreement", 1e-4, e.to_string()),
                };
                let c = match kind {
                    KernelKind::Damping => damping(ret, &params),
                    KernelKind::Coherent => coherent(ret, pulse.omega_s),
                };
                match c {
                    Ok(c) => worst = worst.max((q - c).norm() / c.norm()),
                    Err(e) => return Check::failed("kernel_oracle_agreement", 1e-4, e.to_string()),
                }
            }
        }
    }
    Check::new("kernel_oracle_agreement", worst, 1e-4)
}

fn check_kernel_oracle() -> Check {
    kernel_oracle_check_with(|ret, p| damping_kernel(ret, p, false), coherent_kernel)
}

fn check_mode_sum() -> Vec<Check> {
    let (params, pulse) = desk_params();
    let mut cfg = ModeSumConfig::desk_default(&params);
    cfg.verify_dt = false;
    let t_end = 5.0;
    let traj = match mode_sum_simulate(&pulse, &params, &cfg, t_end, &[t_end]) {
        Ok(t) => t,
        Err(e) => {
            return vec![Check::failed("mode_sum_beta", 1e-2, e.to_string())];
        }
    };
    let mut worst: f64 = 0.0;
    for (t, b) in traj.times.iter().zip(&traj.beta) {
        if *t < 0.5 {
            continue;
        }
        let want = qubit_beta(&pulse, &params, *t, false);
        worst = worst.max((b - want).norm() / want.norm());
    }
    let beta_check = Check::new("mode_sum_beta", worst, 1e-2);
    let norm_check = Check::new(
        "mode_sum_norm_drift_per_gamma_t",
        traj.norm_drift_per_gamma_t(&params),
        1e-8,
    );
    // field reconstruction probes away from the near-field window
    let mut worst_f: f64 = 0.0;
    for frac in [0.2, 0.4, 0.6, 0.8] {
        let x = frac * params.v_g * t_end;
        for (dir, xs) in [(Direction::Forward, x), (Direction::Backward, -x)] {
            let rec = reconstruct_field(&traj, &params, SpaceTimePoint { x: xs, t: t_end }, dir);
            let cl = match dir {
                Direction::Forward => {
                    forward_field(SpaceTimePoint { x: xs, t: t_end }, &params, &pulse, false)
                }
                Direction::Backward => {
                    backward_field(SpaceTimePoint { x: xs, t: t_end }, &params, &pulse, false)
                }
            };
            match (rec, cl) {
                (Ok(r), Ok(c)) => {
                    worst_f = worst_f.max((r - c.u_over_a).norm() / c.u_over_a.norm())
                }
                (Err(e), _) | (_, Err(e)) => {
                    return vec![
                        beta_check,
                        norm_check,
                        Check::failed("field_reconstruction", 2e-2, e.to_string()),
                    ]
                }
            }
        }
    }
    vec![
        beta_check,
        norm_check,
        Check::new("field_reconstruction", worst_f, 2e-2),
    ]
}

fn check_mode_sum_dt() -> Check {
    let (params, pulse) = desk_params();
    let mut cfg = ModeSumConfig::desk_default(&params);
    cfg.verify_dt = true;
    match mode_sum_simulate(&pulse, &params, &cfg, 1.0, &[]) {
        Ok(_) => Check::new(
            "mode_sum_dt_halving",
            0.0,
            crate::oracle::MODE_SUM_DT_TOLERANCE,
        ),
        Err(Error::Convergence(msg)) => Check::failed(
            "mode_sum_dt_halving",
            crate::oracle::MODE_SUM_DT_TOLERANCE,
            msg,
        ),
        Err(e) => Check::failed(
            "mode_sum_dt_halving",
            crate::oracle::MODE_SUM_DT_TOLERANCE,
            e.to_string(),
        ),
    }
}

fn check_causality_policy() -> Check {
    let params = microwave_params();
    let pulse = PulseSpec::new(params.omega_q, 2.0 * PI * 1e6, 1.0).unwrap();
    let ahead = forward_field(SpaceTimePoint { x: 1.0, t: 1e-9 }, &params, &pulse, false);
    let behind = backward_field(SpaceTimePoint { x: -1.0, t: 1e-9 }, &params, &pulse, false);
    let ok = matches!(ahead, Err(Error::Precondition(_)))
        && matches!(behind, Err(Error::Precondition(_)));
    Check::new("causality_is_error", if ok { 0.0 } else { 1.0 }, 0.5)
}

fn check_l_independence() -> Check {
    let params = microwave_params();
    let mut worst: f64 = 0.0;
    let mut base: Option<Complex64> = None;
    for l in [0.5, 1.0, 2.0] {
        let pulse = PulseSpec::new(params.omega_q + params.gamma_rad, 2.0 * PI * 1e6, l).unwrap();
        match forward_field(SpaceTimePoint { x: 5e-3, t: 2e-9 }, &params, &pulse, false) {
            Ok(s) => {
                if let Some(b) = base {
                    worst = worst.max((s.u_over_a - b).norm());
                } else {
                    base = Some(s.u_over_a);
                }
            }
            Err(e) => return Check::failed("l_independence", 1e-12, e.to_string()),
        }
    }
    Check::new("l_independence", worst, 1e-12)
}

fn check_stationary_recovery() -> Check {
    let params = microwave_params();
    let lam = params.wavelength();
    let t = 50.0 / params.gamma_rad;
    let mut worst: f64 = 0.0;
    for k in 0..7 {
        let ws = params.omega_q + params.gamma_rad * (k as f64 - 3.0);
        let pulse = PulseSpec::new(ws, 2.0 * PI * 1e6, 1.0).unwrap();
        let x = 50.0 * lam;
        let fwd = match forward_field(SpaceTimePoint { x, t }, &params, &pulse, false) {
            Ok(s) => s.u_over_a,
            Err(e) => return Check::failed("stationary_recovery", 1e-2, e.to_string()),
        };
        let plane = Complex64::from_polar(1.0, ws * (x - params.v_g * t) / params.v_g);
        worst = worst.max((fwd - transmission(&params, ws) * plane).norm());
        let bwd = match backward_field(SpaceTimePoint { x: -x, t }, &params, &pulse, false) {
            Ok(s) => s.u_over_a,
            Err(e) => return Check::failed("stationary_recovery", 1e-2, e.to_string()),
        };
        let plane = Complex64::from_polar(1.0, -ws * (-x + params.v_g * t) / params.v_g);
        worst = worst.max((bwd - reflection(&params, ws) * plane).norm());
    }
    Check::new("stationary_recovery", worst, 1e-2)
}

fn check_decomposition() -> Check {
    let params = microwave_params();
    let pulse =
        PulseSpec::new(params.omega_q + 0.3 * params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for (x, t) in [(1.5e-3, 0.5e-9), (8e-3, 2e-9), (4e-2, 4.5e-9)] {
        for (dir, xs) in [(Direction::Forward, x), (Direction::Backward, -x)] {
            let s = match dir {
                Direction::Forward => {
                    forward_field(SpaceTimePoint { x: xs, t }, &params, &pulse, false)
                }
                Direction::Backward => {
                    backward_field(SpaceTimePoint { x: xs, t }, &params, &pulse, false)
                }
            };
            match s {
                Ok(s) => {
                    let sum = s.parts.stationary + s.parts.damping + s.parts.coherent;
                    worst = worst.max((sum - s.u_over_a).norm());
                }
                Err(e) => return Check::failed("decomposition_exact", 1e-12, e.to_string()),
            }
        }
    }
    Check::new("decomposition_exact", worst, 1e-12)
}

fn check_pv_identity() -> Check {
    let params = microwave_params();
    let cfg = QuadratureConfig::for_params(&params);
    let mut worst: f64 = 0.0;
    for x in [0.004, 0.02, 0.1] {
        let tau = x / params.v_g;
        let got = match pv_oscillatory_tail(-params.omega_q, tau, &cfg) {
            Ok(v) => v,
            Err(e) => return Check::failed("pv_integral_identity", 1e-6, e.to_string()),
        };
        let a = params.omega_q * tau;
        let want = match ci(a) {
            Ok(c) => Complex64::new(-c, -si(-a)),
            Err(e) => return Check::failed("pv_integral_identity", 1e-6, e.to_string()),
        };
        worst = worst.max((got - want).norm());
    }
    Check::new("pv_integral_identity", worst, 1e-6)
}

fn check_special_identities() -> Check {
    let mut worst: f64 = 0.0;
    for a in [0.5, 3.0, 50.0] {
        worst = worst.max((si(a) + si(-a) + PI).abs());
    }
    let e1 = exp_integral_e1(Complex64::new(1.0, 0.0))
        .map(|v| v.re)
        .unwrap_or(f64::NAN);
    worst = worst.max((e1 - 0.219_383_934_395_520_27).abs() / 0.219);
    let erf1 = crate::special::erf(Complex64::new(1.0, 0.0))
        .map(|v| v.re)
        .unwrap_or(f64::NAN);
    worst = worst.max((erf1 - 0.842_700_792_949_714_87).abs());
    let c = ci(3.0).unwrap_or(f64::NAN);
    worst = worst.max((c - 0.119_629_786_008_000_33).abs());
    Check::new("special_function_spots", worst, 1e-10)
}

/// Run the complete invariant suite.
pub fn run_all() -> Report {
    let mut checks = vec![
        check_resonant_extinction(),
        check_unitarity(),
        check_lossy_amplitudes(),
        check_special_identities(),
        check_causality_policy(),
        check_l_independence(),
        check_decomposition(),
        check_stationary_recovery(),
        check_pv_identity(),
        check_kernel_oracle(),
    ];
    checks.extend(check_mode_sum());
    checks.push(check_mode_sum_dt());
    let passed = checks.iter().all(|c| c.pass);
    Report { passed, checks }
}
