//! Brute-force validation pass: the closed-form kernels against direct
//! oscillatory quadrature of their defining integrals, and the closed-form
//! qubit amplitude against the discretized-mode Schrödinger integrator.
//!
//! Run: `cargo run --release --example oracle_crosscheck`

use std::f64::consts::PI;
use wqed::dynamics::{qubit_beta, PulseSpec};
use wqed::field::{
    coherent_kernel, damping_kernel, forward_field, retarded, Direction, SpaceTimePoint,
};
use wqed::oracle::{
    mode_sum_simulate, quadrature_kernel, reconstruct_field, KernelKind, ModeSumConfig,
    QuadratureConfig,
};
use wqed::stationary::SystemParams;

fn main() {
    // quadrature leg, physical microwave parameters
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let pulse = PulseSpec::new(params.omega_q + params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();
    let cfg = QuadratureConfig::for_params(&params);
    println!("kernel,direction,x_mm,t_ns,rel_err");
    for dir in [Direction::Forward, Direction::Backward] {
        for (ax, t) in [(1e-3, 0.5e-9), (5e-3, 1.5e-9), (3e-2, 4e-9)] {
            let x = if dir == Direction::Forward { ax } else { -ax };
            let pt = SpaceTimePoint { x, t };
            let ret = retarded(pt, &params, dir).unwrap();
            for kind in [KernelKind::Damping, KernelKind::Coherent] {
                let q = quadrature_kernel(kind, dir, pt, &params, &pulse, &cfg).unwrap();
                let c = match kind {
                    KernelKind::Damping => damping_kernel(ret, &params, false).unwrap(),
                    KernelKind::Coherent => coherent_kernel(ret, pulse.omega_s).unwrap(),
                };
                println!(
                    "{kind:?},{dir:?},{},{},{:.2e}",
                    x * 1e3,
                    t * 1e9,
                    (q - c).norm() / c.norm()
                );
            }
        }
    }

    // mode-sum leg, desk-scale units
    let desk = SystemParams::lossless(200.0, 1.0, 1.0).unwrap();
    let dpulse = PulseSpec::new(201.0, 1e-3, 1.0).unwrap();
    let mcfg = ModeSumConfig::desk_default(&desk);
    let t_probe = 5.0;
    let traj = mode_sum_simulate(&dpulse, &desk, &mcfg, 10.0, &[t_probe]).unwrap();
    let mut worst: f64 = 0.0;
    for (t, b) in traj.times.iter().zip(&traj.beta) {
        if *t >= 0.5 {
            let want = qubit_beta(&dpulse, &desk, *t, false);
            worst = worst.max((b - want).norm() / want.norm());
        }
    }
    eprintln!("# mode-sum β(t) vs closed form, Γt ∈ [0.5, 10]: worst rel err {worst:.2e}");
    eprintln!(
        "# norm drift per unit Γt: {:.2e}",
        traj.norm_drift_per_gamma_t(&desk)
    );
    for frac in [0.3, 0.6, 0.9] {
        let x = frac * desk.v_g * t_probe;
        let rec = reconstruct_field(
            &traj,
            &desk,
            SpaceTimePoint { x, t: t_probe },
            Direction::Forward,
        )
        .unwrap();
        let cl = forward_field(SpaceTimePoint { x, t: t_probe }, &desk, &dpulse, false)
            .unwrap()
            .u_over_a;
        eprintln!(
            "# field reconstruction at x = {:.2} (t = {t_probe}): rel err {:.2e}",
            x,
            (rec - cl).norm() / cl.norm()
        );
    }
}
