//! Spatial interference fringes of the transmitted/reflected intensities at
//! the half-transparency detuning ω_S = Ω + Γ/2, with their 1/x envelopes.
//! The two curves oscillate in antiphase around 1/2 out to many wavelengths.
//!
//! Run: `cargo run --example spatial_fringes`

use std::f64::consts::PI;
use wqed::dynamics::PulseSpec;
use wqed::field::{offres_intensity, Direction};
use wqed::stationary::SystemParams;

fn main() {
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let lam = params.wavelength();
    let pulse =
        PulseSpec::new(params.omega_q + 0.5 * params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();

    println!("x_over_lambda,transmittance,reflectance,envelope_upper,envelope_lower");
    let n = 3000;
    for k in 0..n {
        let x = lam * (0.5 + 9.5 * k as f64 / (n - 1) as f64);
        let alpha = pulse.omega_s * x / params.v_g;
        let env = 1.0 / (2.0 * PI * alpha);
        println!(
            "{:.5},{:.6e},{:.6e},{:.6e},{:.6e}",
            x / lam,
            offres_intensity(x, &params, &pulse, Direction::Forward).unwrap(),
            offres_intensity(-x, &params, &pulse, Direction::Backward).unwrap(),
            0.5 + env,
            0.5 - env,
        );
    }
}
