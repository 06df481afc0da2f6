//! Snapshot of the scattered field on both sides of the qubit at a fixed
//! time, split into its stationary, damping, and coherent parts.
//!
//! Run: `cargo run --example field_snapshot`

use std::f64::consts::PI;
use wqed::dynamics::PulseSpec;
use wqed::field::{backward_field, forward_field, SpaceTimePoint};
use wqed::stationary::SystemParams;

fn main() {
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let pulse = PulseSpec::new(params.omega_q + params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();
    let t = 5e-9;
    let reach = params.v_g * t;

    println!("x_mm,intensity,stationary_abs,damping_abs,coherent_abs");
    let n = 1200;
    for k in 0..n {
        let x = -(reach - 1e-3) + (2.0 * (reach - 1e-3)) * k as f64 / (n - 1) as f64;
        if x.abs() < 1e-3 {
            continue; // skip the guard band around the qubit
        }
        let sample = if x > 0.0 {
            forward_field(SpaceTimePoint { x, t }, &params, &pulse, false)
        } else {
            backward_field(SpaceTimePoint { x, t }, &params, &pulse, false)
        };
        match sample {
            Ok(s) => println!(
                "{:.4},{:.6e},{:.6e},{:.6e},{:.6e}",
                x * 1e3,
                s.u_over_a.norm_sqr(),
                s.parts.stationary.norm(),
                s.parts.damping.norm(),
                s.parts.coherent.norm(),
            ),
            Err(_) => continue,
        }
    }
}
