//! Approach to the stationary limit: the scattered remainder decays only as
//! 1/x with distance and 1/t with time, and the closed far-field expansion
//! tracks the full field to second order in the small ratios.
//!
//! Run: `cargo run --example far_field_decay`

use std::f64::consts::PI;
use wqed::dynamics::PulseSpec;
use wqed::field::{
    asymptotic_field, forward_field, forward_field_large_time, Direction, SpaceTimePoint,
};
use wqed::stationary::transmission;
use wqed::stationary::SystemParams;
use wqed::Complex64;

fn main() {
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let lam = params.wavelength();
    let pulse =
        PulseSpec::new(params.omega_q + 0.5 * params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();
    let tr = transmission(&params, pulse.omega_s);

    let t = 3e-6; // Γt ≈ 188: the exponentially damped terms are gone
    println!("x_over_lambda,scattered_abs,full_minus_asym_abs,correction_scale");
    for k in 0..=40 {
        let x = 2.0 * lam * 10f64.powf(k as f64 / 40.0);
        let point = SpaceTimePoint { x, t };
        let full = forward_field(point, &params, &pulse, false)
            .unwrap()
            .u_over_a;
        let plane = Complex64::from_polar(1.0, pulse.omega_s * (x - params.v_g * t) / params.v_g);
        let scattered = (full - tr * plane).norm();
        match asymptotic_field(point, &params, &pulse, Direction::Forward, false) {
            Ok(a) => println!(
                "{:.3},{:.6e},{:.6e},{:.3e}",
                x / lam,
                scattered,
                (full - a.value).norm(),
                a.correction_scale
            ),
            Err(_) => println!("{:.3},{:.6e},,", x / lam, scattered),
        }
    }

    // time leg: residual against the large-time field at fixed x
    let x = 10.0 * lam;
    eprintln!("# gamma_t,residual_abs (expect 1/t)");
    for k in 0..=10 {
        let t = (60.0 / params.gamma_rad) * 10f64.powf(k as f64 / 10.0);
        let full = forward_field(SpaceTimePoint { x, t }, &params, &pulse, false)
            .unwrap()
            .u_over_a;
        let lim = forward_field_large_time(x, &params, &pulse, t, false).unwrap();
        eprintln!("# {:.1},{:.6e}", params.gamma_rad * t, (full - lim).norm());
    }
}
