//! Stationary (plane-wave) transmission and reflection amplitudes of a
//! single emitter in a 1D waveguide, their power-dependent and lossy
//! generalizations, and the effective complex qubit frequency.

use crate::{Complex64, Error, Result};

/// Physical parameters of the qubit–waveguide system.
///
/// All frequencies/rates are angular (rad/s); `v_g` is in m/s (or set to 1
/// for dimensionless runs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Qubit transition frequency Ω.
    pub omega_q: f64,
    /// Radiative decay rate into the waveguide, Γ.
    pub gamma_rad: f64,
    /// Pure dephasing rate Γφ.
    pub gamma_phi: f64,
    /// Non-radiative intrinsic loss rate Γl.
    pub gamma_loss: f64,
    /// Group velocity of the guided mode.
    pub v_g: f64,
}

impl SystemParams {
    pub fn new(
        omega_q: f64,
        gamma_rad: f64,
        gamma_phi: f64,
        gamma_loss: f64,
        v_g: f64,
    ) -> Result<Self> {
        if !(omega_q > 0.0) {
            return Err(Error::Domain(format!(
                "omega_q must be > 0 (got {omega_q})"
            )));
        }
        if !(gamma_rad > 0.0) {
            return Err(Error::Domain(format!(
                "gamma_rad must be > 0 (got {gamma_rad})"
            )));
        }
        if !(gamma_phi >= 0.0) || !(gamma_loss >= 0.0) {
            return Err(Error::Domain("dephasing/loss rates must be >= 0".into()));
        }
        if !(v_g > 0.0) {
            return Err(Error::Domain(format!("v_g must be > 0 (got {v_g})")));
        }
        Ok(Self {
            omega_q,
            gamma_rad,
            gamma_phi,
            gamma_loss,
            v_g,
        })
    }

    /// Lossless parameter set (no dephasing, no intrinsic loss).
    pub fn lossless(omega_q: f64, gamma_rad: f64, v_g: f64) -> Result<Self> {
        Self::new(omega_q, gamma_rad, 0.0, 0.0, v_g)
    }

    /// Total decoherence rate γ = Γ/2 + Γφ + Γl/2.
    pub fn gamma_total(&self) -> f64 {
        0.5 * self.gamma_rad + self.gamma_phi + 0.5 * self.gamma_loss
    }

    /// Amplitude decay rate actually used: Γ/2 in the lossless model,
    /// γ = Γ/2 + Γφ + Γl/2 when the lossy substitution is enabled.
    pub fn decay_rate(&self, lossy: bool) -> f64 {
        if lossy {
            self.gamma_total()
        } else {
            0.5 * self.gamma_rad
        }
    }

    /// Complex qubit frequency Ω̃ = Ω - iΓ/2 (lossless) or Ω - iγ (lossy).
    pub fn omega_tilde(&self, lossy: bool) -> Complex64 {
        Complex64::new(self.omega_q, -self.decay_rate(lossy))
    }

    /// Carrier wavelength λ = 2π v_g / Ω.
    pub fn wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.v_g / self.omega_q
    }
}

/// Probe drive: carrier frequency and Rabi frequency (power).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub omega_s: f64,
    pub rabi: f64,
}

impl DriveSpec {
    pub fn new(omega_s: f64, rabi: f64) -> Result<Self> {
        if !(omega_s > 0.0) {
            return Err(Error::Domain(format!(
                "omega_s must be > 0 (got {omega_s})"
            )));
        }
        if !(rabi >= 0.0) {
            return Err(Error::Domain(format!("rabi must be >= 0 (got {rabi})")));
        }
        Ok(Self { omega_s, rabi })
    }
}

/// Lossless transmission amplitude `T(ω) = (ω-Ω)/(ω-Ω+iΓ/2)`.
pub fn transmission(params: &SystemParams, omega_s: f64) -> Complex64 {
    let d = omega_s - params.omega_q;
    Complex64::new(d, 0.0) / Complex64::new(d, 0.5 * params.gamma_rad)
}

/// Lossless reflection amplitude `R(ω) = -i(Γ/2)/(ω-Ω+iΓ/2)`; `T = 1 + R`.
pub fn reflection(params: &SystemParams, omega_s: f64) -> Complex64 {
    let d = omega_s - params.omega_q;
    Complex64::new(0.0, -0.5 * params.gamma_rad) / Complex64::new(d, 0.5 * params.gamma_rad)
}

/// Reflection amplitude including probe power, dephasing and intrinsic loss:
///
/// `R = -(Γ/2γ)·(1 + iδω/γ) / (1 + (δω/γ)² + Ω_R²/((Γ+Γl)γ))`.
pub fn reflection_driven(params: &SystemParams, drive: &DriveSpec) -> Complex64 {
    let g = params.gamma_total();
    let d = (drive.omega_s - params.omega_q) / g;
    let sat = drive.rabi * drive.rabi / ((params.gamma_rad + params.gamma_loss) * g);
    let denom = 1.0 + d * d + sat;
    -(0.5 * params.gamma_rad / g) * Complex64::new(1.0, d) / denom
}

/// Driven transmission amplitude `T = 1 + R` (single emitter).
pub fn transmission_driven(params: &SystemParams, drive: &DriveSpec) -> Complex64 {
    1.0 + reflection_driven(params, drive)
}

/// Effective complex qubit frequency Ω - i(Γφ + Γl/2); substituting it into
/// the lossless amplitudes yields the weak-probe lossy ones.
pub fn effective_omega(params: &SystemParams) -> Complex64 {
    Complex64::new(
        params.omega_q,
        -(params.gamma_phi + 0.5 * params.gamma_loss),
    )
}

/// Reflection with the lossy substitution at vanishing probe power:
/// `R = -i(Γ/2)/(ω-Ω+iγ)`.
pub fn reflection_lossy(params: &SystemParams, omega_s: f64) -> Complex64 {
    let d = omega_s - params.omega_q;
    Complex64::new(0.0, -0.5 * params.gamma_rad) / Complex64::new(d, params.gamma_total())
}

/// Transmission with the lossy substitution: `T = 1 + R`.
pub fn transmission_lossy(params: &SystemParams, omega_s: f64) -> Complex64 {
    1.0 + reflection_lossy(params, omega_s)
}

/// Reflection used by the field formulas: lossless or lossy per the flag.
pub fn reflection_for(params: &SystemParams, omega_s: f64, lossy: bool) -> Complex64 {
    if lossy {
        reflection_lossy(params, omega_s)
    } else {
        reflection(params, omega_s)
    }
}

/// Transmission used by the field formulas: `1 + R` in both modes.
pub fn transmission_for(params: &SystemParams, omega_s: f64, lossy: bool) -> Complex64 {
    1.0 + reflection_for(params, omega_s, lossy)
}
