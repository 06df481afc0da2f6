//! Amplitude-frequency curves of the large-time transmitted and reflected
//! intensities at several distances from the qubit, against the stationary
//! |T|² and |R|² references. Near the qubit the curves are asymmetric and
//! the resonant reflection dips below one.
//!
//! Run: `cargo run --example afc_curves`

use std::f64::consts::PI;
use wqed::dynamics::PulseSpec;
use wqed::field::{backward_field_large_time, forward_field_large_time};
use wqed::stationary::{reflection, transmission, SystemParams};

fn main() {
    let params = SystemParams::lossless(2.0 * PI * 5e9, 2.0 * PI * 1e7, 3e8).unwrap();
    let xs_mm = [1.0, 5.0, 10.0];

    println!("omega_over_Omega,T_1mm,R_1mm,T_5mm,R_5mm,T_10mm,R_10mm,T_stat,R_stat");
    for k in 0..=800 {
        let f = 0.9985 + 0.003 * k as f64 / 800.0;
        let ws = f * params.omega_q;
        let pulse = PulseSpec::new(ws, 2.0 * PI * 1e6, 1.0).unwrap();
        let mut cols = vec![format!("{f:.6}")];
        for &x_mm in &xs_mm {
            let x = x_mm * 1e-3;
            let t = x / params.v_g + 50.0 / params.gamma_rad;
            let tv = forward_field_large_time(x, &params, &pulse, t, false)
                .unwrap()
                .norm_sqr();
            let rv = backward_field_large_time(-x, &params, &pulse, t, false)
                .unwrap()
                .norm_sqr();
            cols.push(format!("{tv:.6e}"));
            cols.push(format!("{rv:.6e}"));
        }
        cols.push(format!("{:.6e}", transmission(&params, ws).norm_sqr()));
        cols.push(format!("{:.6e}", reflection(&params, ws).norm_sqr()));
        println!("{}", cols.join(","));
    }
}
