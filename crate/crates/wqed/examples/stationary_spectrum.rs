//! Plane-wave transmission/reflection spectra of a waveguide qubit:
//! lossless, with dephasing/intrinsic losses, and at finite probe power.
//!
//! Run: `cargo run --example stationary_spectrum`

use std::f64::consts::PI;
use wqed::stationary::{
    reflection, reflection_driven, transmission, transmission_lossy, DriveSpec, SystemParams,
};

fn main() {
    let omega_q = 2.0 * PI * 5e9;
    let gamma = 2.0 * PI * 1e7;
    let lossless = SystemParams::lossless(omega_q, gamma, 3e8).unwrap();
    let lossy = SystemParams::new(omega_q, gamma, 0.3 * gamma, 0.1 * gamma, 3e8).unwrap();

    println!("detuning_over_gamma,T_sq,R_sq,T_sq_lossy,R_sq_driven_saturated");
    for k in 0..=400 {
        let d = -5.0 + 10.0 * k as f64 / 400.0;
        let w = omega_q + d * gamma;
        // saturation at Ω_R² = (Γ+Γl)γ halves the resonant reflection
        let drive = DriveSpec::new(w, ((gamma + 0.0) * gamma / 2.0).sqrt()).unwrap();
        println!(
            "{d},{},{},{},{}",
            transmission(&lossless, w).norm_sqr(),
            reflection(&lossless, w).norm_sqr(),
            transmission_lossy(&lossy, w).norm_sqr(),
            reflection_driven(&lossless, &drive).norm_sqr(),
        );
    }
    eprintln!(
        "# |T(Ω)|² lossless = {:.3e} (full extinction)",
        transmission(&lossless, omega_q).norm_sqr()
    );
    eprintln!(
        "# |T(Ω)|² lossy    = {:.3e} (extinction lifted)",
        transmission_lossy(&lossy, omega_q).norm_sqr()
    );
}
