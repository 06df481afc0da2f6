//! Qubit excitation by a narrow single-photon pulse: the closed-form
//! amplitude β(t), its drive integral in exact vs narrow-pulse form, and
//! the incident-power estimate.
//!
//! Run: `cargo run --example excitation_dynamics`

use std::f64::consts::PI;
use wqed::dynamics::{drive_integral, probe_power_estimate, qubit_beta, PulseSpec};
use wqed::stationary::SystemParams;

fn main() {
    // dimensionless desk units: Γ = 1, Ω = 200Γ, Δ = 1e-3Γ
    let params = SystemParams::lossless(200.0, 1.0, 1.0).unwrap();

    println!("gamma_t,abs_beta_sq_resonant,abs_beta_sq_detuned_1G,abs_beta_sq_detuned_3G");
    let pulses: Vec<PulseSpec> = [0.0, 1.0, 3.0]
        .iter()
        .map(|d| PulseSpec::new(params.omega_q + d, 1e-3, 1.0).unwrap())
        .collect();
    for k in 0..=500 {
        let t = 12.0 * k as f64 / 500.0;
        let row: Vec<String> = pulses
            .iter()
            .map(|p| format!("{:.6e}", qubit_beta(p, &params, t, false).norm_sqr()))
            .collect();
        println!("{t},{}", row.join(","));
    }

    let pulse = &pulses[1];
    let di = drive_integral(pulse, &params, 0.5).unwrap();
    eprintln!(
        "# drive integral at t = 0.5/Γ: exact = {:.6}, narrow = {:.6}, gap = {:.2e}",
        di.exact,
        di.narrow,
        di.relative_gap()
    );

    // physical-unit power estimate for the standard microwave qubit
    let phys = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let phys_pulse = PulseSpec::new(phys.omega_q, 2.0 * PI * 1e6, 1.0).unwrap();
    eprintln!(
        "# single-photon probe power ħΩΔ/2π = {:.3e} W",
        probe_power_estimate(&phys_pulse, &phys)
    );
}
