//! Why the reflected intensity near the qubit differs from |R|²: the
//! interference decomposition |u/A|² = |R|²(1 + 2·Re z + |z|²) at a
//! sub-wavelength distance (destructive) and at half a wavelength
//! (a small constructive amplification).
//!
//! Run: `cargo run --example interference_breakdown`

use std::f64::consts::PI;
use wqed::dynamics::PulseSpec;
use wqed::field::interference_report;
use wqed::stationary::SystemParams;

fn main() {
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let lam = params.wavelength();

    for (label, x) in [("x = -1 mm", -1e-3), ("x = -λ/2", -lam / 2.0)] {
        println!("# {label}");
        println!("detuning_over_gamma,intensity,R_sq,z_sq,cross");
        for k in 0..=400 {
            let d = -4.0 + 8.0 * k as f64 / 400.0;
            let pulse =
                PulseSpec::new(params.omega_q + d * params.gamma_rad, 2.0 * PI * 1e6, 1.0).unwrap();
            let rep = interference_report(x, &params, &pulse, false).unwrap();
            println!(
                "{d},{:.6e},{:.6e},{:.6e},{:+.6e}",
                rep.intensity, rep.r_sq, rep.z_sq, rep.cross
            );
        }
        println!();
    }
}
