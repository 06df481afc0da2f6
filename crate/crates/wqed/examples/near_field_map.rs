//! Small (x, ω_S) intensity map of the transmitted field at fixed t,
//! showing the off-resonant bands where the near-field intensity exceeds
//! the incident one.
//!
//! Run: `cargo run --example near_field_map`

use std::f64::consts::PI;
use wqed::dynamics::PulseSpec;
use wqed::field::{forward_field, SpaceTimePoint};
use wqed::stationary::SystemParams;

fn main() {
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let t = 5e-9;
    let x_max = params.v_g * t - 1e-3;

    println!("x_mm,omega_over_Omega,intensity");
    let mut overshoot: f64 = 0.0;
    for i in 0..120 {
        let x = 1e-3 + (x_max - 1e-3) * i as f64 / 119.0;
        for j in 0..81 {
            let f = 0.96 + 0.08 * j as f64 / 80.0;
            let pulse = PulseSpec::new(f * params.omega_q, 2.0 * PI * 1e6, 1.0).unwrap();
            let s = forward_field(SpaceTimePoint { x, t }, &params, &pulse, false).unwrap();
            let v = s.u_over_a.norm_sqr();
            overshoot = overshoot.max(v);
            println!("{:.3},{:.4},{:.6e}", x * 1e3, f, v);
        }
    }
    eprintln!("# max intensity on the map: {overshoot:.4} (above 1 in the off-resonant bands)");
}
