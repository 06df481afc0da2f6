//! Closed-form space-time structure of the scattered field.
//!
//! Behind the qubit (forward, `0 < x < v_g t`) and in front of it (backward,
//! `x < 0 < x + v_g t`) the normalized field `u(x,t)/A` splits exactly into
//! three parts: the stationary plane wave carrying `T(ω_S)` or `R(ω_S)`, a
//! damping part built from the complex exponential integral at the complex
//! qubit frequency (it carries the spontaneous-decay factor), and a coherent
//! lossless part built from sine/cosine integrals at the carrier frequency.
//!
//! Both causal regions reduce to one kernel pair through the retarded
//! coordinates `τ` (distance from the qubit in time units) and `T ≤ 0`
//! (signed time to the wavefront): forward `τ = x/v_g, T = (x - v_g t)/v_g`;
//! backward `τ = |x|/v_g, T = -(x + v_g t)/v_g`. In both cases `t = τ - T`.

use crate::dynamics::PulseSpec;
use crate::special::{ci, exp_integral_e1, exp_integral_e1_scaled, si};
use crate::stationary::{reflection_for, transmission_for, SystemParams};
use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

/// Fraction of a wavelength below which the kernels refuse to evaluate
/// (logarithmic/`E1` singularities at `x = 0` and at the wavefront).
pub const SINGULARITY_GUARD_WAVELENGTHS: f64 = 1e-6;

/// Default Γt threshold for the large-time formulas.
pub const LARGE_TIME_GAMMA_T: f64 = 10.0;

/// Default ceiling for each smallness ratio of the far-field expansion.
pub const ASYMPTOTIC_RATIO_MAX: f64 = 0.1;

/// Propagation direction of the observed field relative to the qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Transmitted side, `x > 0`.
    Forward,
    /// Reflected side, `x < 0`.
    Backward,
}

/// A space-time sample point; the qubit sits at `x = 0` and the pulse
/// reaches it at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimePoint {
    pub x: f64,
    pub t: f64,
}

/// Retarded coordinates of a causal point: `tau = |x|/v_g > 0` and the
/// signed wavefront offset `t_ret < 0` (`T` in the kernel formulas).
#[derive(Debug, Clone, Copy)]
pub struct Retarded {
    pub tau: f64,
    pub t_ret: f64,
}

impl Retarded {
    pub fn t(&self) -> f64 {
        self.tau - self.t_ret
    }
}

/// Map a point into retarded coordinates, enforcing causality and the
/// singularity guard around `x = 0` and the wavefront.
pub fn retarded(point: SpaceTimePoint, params: &SystemParams, dir: Direction) -> Result<Retarded> {
    let SpaceTimePoint { x, t } = point;
    let guard = SINGULARITY_GUARD_WAVELENGTHS * params.wavelength();
    let (tau_len, front_len) = match dir {
        Direction::Forward => {
            if x < 0.0 || x - params.v_g * t > 0.0 {
                return Err(Error::Precondition(format!(
                    "outside forward causal region (need 0 < x < v_g t; x = {x}, t = {t})"
                )));
            }
            (x, params.v_g * t - x)
        }
        Direction::Backward => {
            if x > 0.0 || x + params.v_g * t < 0.0 {
                return Err(Error::Precondition(format!(
                    "outside backward causal region (need x < 0 < x + v_g t; x = {x}, t = {t})"
                )));
            }
            (-x, x + params.v_g * t)
        }
    };
    if tau_len < guard {
        return Err(Error::Domain(format!(
            "|x| = {tau_len} m is inside the singularity guard ({guard} m)"
        )));
    }
    if front_len < guard {
        return Err(Error::Domain(format!(
            "wavefront distance {front_len} m is inside the singularity guard ({guard} m)"
        )));
    }
    Ok(Retarded {
        tau: tau_len / params.v_g,
        t_ret: -front_len / params.v_g,
    })
}

/// Damping kernel (the qubit-pole spectral integral):
///
/// `e^{iΩ̃T} (E1(iτΩ̃) + 2πi) - e^{z}E1(z)|_{z = -i|T|Ω̃}`.
///
/// Written with the scaled exponential integral so it stays finite at any
/// Γt. The first `E1` argument sign follows the contour derivation (and the
/// quadrature oracle); see the regression test pinning the kernel value.
pub fn damping_kernel(ret: Retarded, params: &SystemParams, lossy: bool) -> Result<Complex64> {
    let om_t = params.omega_tilde(lossy);
    let i = Complex64::i();
    let phase_front = (i * om_t * ret.t_ret).exp();
    let first = exp_integral_e1(i * ret.tau * om_t)?;
    let third = exp_integral_e1_scaled(-i * ret.t_ret.abs() * om_t)?;
    Ok(phase_front * (first + 2.0 * PI * i) - third)
}

/// Coherent kernel (the carrier spectral integral):
///
/// `e^{iω_S T} (2π + i·ci(ω_S τ) + si(ω_S τ) - i·ci(ω_S |T|) + si(ω_S |T|))`.
pub fn coherent_kernel(ret: Retarded, omega_s: f64) -> Result<Complex64> {
    let bracket = coherent_bracket(ret, omega_s)? + 2.0 * PI;
    Ok(Complex64::from_polar(1.0, omega_s * ret.t_ret) * bracket)
}

/// The coherent kernel's bracket without its 2π (the 2π belongs to the
/// stationary term of the field decomposition).
fn coherent_bracket(ret: Retarded, omega_s: f64) -> Result<Complex64> {
    let a1 = omega_s * ret.tau;
    let a2 = omega_s * ret.t_ret.abs();
    Ok(Complex64::new(si(a1) + si(a2), ci(a1)? - ci(a2)?))
}

/// Exact three-part split of the normalized field at one causal point.
#[derive(Debug, Clone, Copy)]
pub struct FieldParts {
    /// `T(ω_S)` or `R(ω_S)` times the travelling plane wave (absorbs the
    /// incident wave and the coherent kernel's 2π on the forward side).
    pub stationary: Complex64,
    /// Spontaneous-decay contribution (damping kernel).
    pub damping: Complex64,
    /// Lossless sine/cosine-integral contribution.
    pub coherent: Complex64,
}

impl FieldParts {
    pub fn total(&self) -> Complex64 {
        self.stationary + self.damping + self.coherent
    }
}

/// One field sample: the point, the normalized field, and its parts.
#[derive(Debug, Clone, Copy)]
pub struct FieldSample {
    pub point: SpaceTimePoint,
    pub u_over_a: Complex64,
    pub parts: FieldParts,
}

fn field_sample(
    point: SpaceTimePoint,
    params: &SystemParams,
    pulse: &PulseSpec,
    dir: Direction,
    lossy: bool,
) -> Result<FieldSample> {
    let ret = retarded(point, params, dir)?;
    let ws = pulse.omega_s;
    let r = reflection_for(params, ws, lossy);
    let plane = Complex64::from_polar(1.0, ws * ret.t_ret);
    let stationary = match dir {
        Direction::Forward => transmission_for(params, ws, lossy) * plane,
        Direction::Backward => r * plane,
    };
    let damping = Complex64::i() * r / (2.0 * PI) * damping_kernel(ret, params, lossy)?;
    let coherent = r / (2.0 * PI) * plane * coherent_bracket(ret, ws)?;
    let parts = FieldParts {
        stationary,
        damping,
        coherent,
    };
    Ok(FieldSample {
        point,
        u_over_a: parts.total(),
        parts,
    })
}

/// Transmitted-side field `u(x,t)/A` for `0 < x < v_g t`.
pub fn forward_field(
    point: SpaceTimePoint,
    params: &SystemParams,
    pulse: &PulseSpec,
    lossy: bool,
) -> Result<FieldSample> {
    field_sample(point, params, pulse, Direction::Forward, lossy)
}

/// Reflected-side field `u(x,t)/A` for `x < 0 < x + v_g t`.
pub fn backward_field(
    point: SpaceTimePoint,
    params: &SystemParams,
    pulse: &PulseSpec,
    lossy: bool,
) -> Result<FieldSample> {
    field_sample(point, params, pulse, Direction::Backward, lossy)
}

fn check_large_time(ret: Retarded, params: &SystemParams) -> Result<()> {
    let gt = params.gamma_rad * ret.t();
    if gt < LARGE_TIME_GAMMA_T {
        return Err(Error::Precondition(format!(
            "large-time formula needs Γt >= {LARGE_TIME_GAMMA_T} (got {gt:.3})"
        )));
    }
    Ok(())
}

/// Large-time transmitted field: every exponentially damped and
/// wavefront-tail term of the full formula dropped,
/// `u/A = e^{iω_S T} [T + (R/2π)(i·ci(ω_S x/v_g) + si(ω_S x/v_g))]`.
pub fn forward_field_large_time(
    x: f64,
    params: &SystemParams,
    pulse: &PulseSpec,
    t: f64,
    lossy: bool,
) -> Result<Complex64> {
    let ret = retarded(SpaceTimePoint { x, t }, params, Direction::Forward)?;
    check_large_time(ret, params)?;
    let ws = pulse.omega_s;
    let a = ws * ret.tau;
    let tail = Complex64::new(si(a), ci(a)?);
    let tr = transmission_for(params, ws, lossy);
    let r = reflection_for(params, ws, lossy);
    Ok(Complex64::from_polar(1.0, ws * ret.t_ret) * (tr + r / (2.0 * PI) * tail))
}

/// Large-time reflected field, `u/A = R e^{iω_S T'} (1 + z)` with
/// `z = (i·ci(ω_S|x|/v_g) + si(ω_S|x|/v_g)) / 2π`.
pub fn backward_field_large_time(
    x: f64,
    params: &SystemParams,
    pulse: &PulseSpec,
    t: f64,
    lossy: bool,
) -> Result<Complex64> {
    let ret = retarded(SpaceTimePoint { x, t }, params, Direction::Backward)?;
    check_large_time(ret, params)?;
    let ws = pulse.omega_s;
    let z = interference_z(x, params, pulse)?;
    let r = reflection_for(params, ws, lossy);
    Ok(r * Complex64::from_polar(1.0, ws * ret.t_ret) * (1.0 + z))
}

/// The round-bracket interference term of the large-time reflected field,
/// divided by 2π: `z = (i·ci(ω_S|x|/v_g) + si(ω_S|x|/v_g)) / 2π`.
pub fn interference_z(x: f64, params: &SystemParams, pulse: &PulseSpec) -> Result<Complex64> {
    let guard = SINGULARITY_GUARD_WAVELENGTHS * params.wavelength();
    if x.abs() < guard {
        return Err(Error::Domain(format!(
            "|x| = {} m inside singularity guard",
            x.abs()
        )));
    }
    let a = pulse.omega_s * x.abs() / params.v_g;
    Ok(Complex64::new(si(a), ci(a)?) / (2.0 * PI))
}

/// Decomposition of the large-time reflected intensity
/// `|u/A|² = |R|² (1 + 2 Re z + |z|²)`.
#[derive(Debug, Clone, Copy)]
pub struct InterferenceReport {
    /// `|R(ω_S)|²` — reflectance without interference.
    pub r_sq: f64,
    /// The round-bracket term (over 2π).
    pub z: Complex64,
    /// `|z|²`.
    pub z_sq: f64,
    /// Interference cross term `2|R|² Re z`.
    pub cross: f64,
    /// Total `|u/A|²`.
    pub intensity: f64,
}

/// Interference breakdown of the large-time reflected intensity at `x < 0`.
pub fn interference_report(
    x: f64,
    params: &SystemParams,
    pulse: &PulseSpec,
    lossy: bool,
) -> Result<InterferenceReport> {
    if x > 0.0 {
        return Err(Error::Precondition(format!(
            "interference report is for the reflected side (x < 0, got {x})"
        )));
    }
    let z = interference_z(x, params, pulse)?;
    let r_sq = reflection_for(params, pulse.omega_s, lossy).norm_sqr();
    let z_sq = z.norm_sqr();
    let cross = 2.0 * r_sq * z.re;
    Ok(InterferenceReport {
        r_sq,
        z,
        z_sq,
        cross,
        intensity: r_sq * (1.0 + 2.0 * z.re + z_sq),
    })
}

/// Large-time intensity at the half-transparency detuning
/// `ω_S = Ω + Γ/2`: `(1/2)|1 ∓ (i·ci(α)+si(α))/2π|²` with
/// `α = ω_S |x|/v_g` (−: transmitted side, +: reflected side).
pub fn offres_intensity(
    x: f64,
    params: &SystemParams,
    pulse: &PulseSpec,
    dir: Direction,
) -> Result<f64> {
    let want = params.omega_q + 0.5 * params.gamma_rad;
    if (pulse.omega_s - want).abs() > 1e-9 * params.gamma_rad {
        return Err(Error::Precondition(format!(
            "off-resonant intensity formula assumes ω_S = Ω + Γ/2 (got detuning {} Γ)",
            (pulse.omega_s - params.omega_q) / params.gamma_rad
        )));
    }
    match dir {
        Direction::Forward if x <= 0.0 => {
            return Err(Error::Precondition("transmitted side needs x > 0".into()))
        }
        Direction::Backward if x >= 0.0 => {
            return Err(Error::Precondition("reflected side needs x < 0".into()))
        }
        _ => {}
    }
    let w = interference_z(x, params, pulse)?;
    let one = Complex64::new(1.0, 0.0);
    let amp = match dir {
        Direction::Forward => one - w,
        Direction::Backward => one + w,
    };
    Ok(0.5 * amp.norm_sqr())
}

/// Far-field approximation of the full field with its leading
/// correction scale.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticField {
    pub value: Complex64,
    /// `max(v_g/(ω_S x), v_g/(ω_S |x ∓ v_g t|))` — the expansion parameter.
    pub correction_scale: f64,
}

/// Far-field expansion of the full field: every exponential-integral and
/// sine/cosine-integral tail replaced by its leading `1/argument` term.
///
/// Requires all four smallness ratios `v_g/(ω_S·ℓ)`, `v_g/(|Ω̃|·ℓ)` with
/// `ℓ ∈ {|x|, |x ∓ v_g t|}` to be at most [`ASYMPTOTIC_RATIO_MAX`].
pub fn asymptotic_field(
    point: SpaceTimePoint,
    params: &SystemParams,
    pulse: &PulseSpec,
    dir: Direction,
    lossy: bool,
) -> Result<AsymptoticField> {
    let ret = retarded(point, params, dir)?;
    let ws = pulse.omega_s;
    let om_t = params.omega_tilde(lossy);
    let l1 = ret.tau; // |x|/v_g, in time units
    let l2 = ret.t_ret.abs(); // |x ∓ v_g t|/v_g
    let ratios = [
        1.0 / (ws * l1),
        1.0 / (ws * l2),
        1.0 / (om_t.norm() * l1),
        1.0 / (om_t.norm() * l2),
    ];
    if let Some(bad) = ratios.iter().find(|r| **r > ASYMPTOTIC_RATIO_MAX) {
        return Err(Error::Precondition(format!(
            "smallness ratio {bad:.3} exceeds {ASYMPTOTIC_RATIO_MAX}"
        )));
    }
    let r = reflection_for(params, ws, lossy);
    let i = Complex64::i();
    let plane = Complex64::from_polar(1.0, ws * ret.t_ret);
    let stationary = match dir {
        Direction::Forward => transmission_for(params, ws, lossy) * plane,
        Direction::Backward => r * plane,
    };
    // damping part: E1 tails at the complex qubit frequency
    let damp = r / (2.0 * PI)
        * ((i * (-om_t) * ret.t()).exp() / (l1 * om_t) - 2.0 * PI * (i * om_t * ret.t_ret).exp()
            + 1.0 / (l2 * om_t));
    // coherent part: si/ci tails at the carrier
    let coh = -(r / (2.0 * PI))
        * plane
        * (Complex64::from_polar(1.0 / (ws * l1), -ws * l1)
            + Complex64::from_polar(1.0 / (ws * l2), ws * l2));
    Ok(AsymptoticField {
        value: stationary + damp + coh,
        correction_scale: ratios[0].max(ratios[1]),
    })
}

/// Normalized intensity time series `|u(x0, t)|²/A²` on a grid; the sign of
/// `x0` selects the side.
pub fn timeseries_intensity(
    x0: f64,
    params: &SystemParams,
    pulse: &PulseSpec,
    t_grid: &[f64],
    lossy: bool,
) -> Result<Vec<f64>> {
    let dir = if x0 >= 0.0 {
        Direction::Forward
    } else {
        Direction::Backward
    };
    t_grid
        .iter()
        .map(|&t| {
            field_sample(SpaceTimePoint { x: x0, t }, params, pulse, dir, lossy)
                .map(|s| s.u_over_a.norm_sqr())
        })
        .collect()
}

/// Result of the oscillation-frequency fit on an intensity time series.
#[derive(Debug, Clone, Copy)]
pub struct OscillationFit {
    /// Dominant beat frequency (rad/s); `None` when no oscillation survives
    /// the prominence filter.
    pub frequency: Option<f64>,
    pub peaks_kept: usize,
}

/// Peak-spacing frequency fit for an intensity series sampled uniformly.
///
/// The series is first averaged over whole carrier periods (the kernel
/// tails beat against the plane wave at the carrier frequency itself, a
/// genuine but parasitic micro-oscillation), then local maxima are
/// quadratically interpolated; peaks below 1e-4 of the strongest
/// prominence are discarded and the median spacing gives the frequency.
/// The grid must cover at least five periods of any reported frequency.
pub fn fit_oscillation(
    t_grid: &[f64],
    intensity: &[f64],
    carrier_period: f64,
) -> Result<OscillationFit> {
    if t_grid.len() != intensity.len() || t_grid.len() < 16 {
        return Err(Error::Precondition(
            "need a uniform grid of at least 16 samples".into(),
        ));
    }
    let dt = t_grid[1] - t_grid[0];
    if dt <= 0.0 {
        return Err(Error::Precondition("time grid must be increasing".into()));
    }
    // moving average over ~3 whole carrier periods
    let w = ((3.0 * carrier_period / dt).round() as usize).max(1);
    if intensity.len() <= w + 4 {
        return Err(Error::Precondition(
            "grid too short for carrier smoothing".into(),
        ));
    }
    let smooth = moving_average(intensity, w);
    let n = smooth.len();
    let range = smooth.iter().cloned().fold(f64::MIN, f64::max)
        - smooth.iter().cloned().fold(f64::MAX, f64::min);

    let mut peaks: Vec<(f64, f64)> = Vec::new(); // (time, prominence)
    for k in 1..n - 1 {
        if smooth[k] > smooth[k - 1] && smooth[k] >= smooth[k + 1] {
            // prominence: drop to the nearest local minimum on each side
            let mut lo_l = smooth[k];
            let mut l = k;
            while l > 0 && smooth[l - 1] <= smooth[l] {
                l -= 1;
                lo_l = lo_l.min(smooth[l]);
            }
            let mut lo_r = smooth[k];
            let mut r = k;
            while r < n - 1 && smooth[r + 1] <= smooth[r] {
                r += 1;
                lo_r = lo_r.min(smooth[r]);
            }
            let prom = smooth[k] - lo_l.max(lo_r);
            // quadratic interpolation of the peak position
            let (y0, y1, y2) = (smooth[k - 1], smooth[k], smooth[k + 1]);
            let dd = y0 - 2.0 * y1 + y2;
            let off = if dd != 0.0 { 0.5 * (y0 - y2) / dd } else { 0.0 };
            let tc = t_grid[k] + (off + 0.5 * w as f64) * dt;
            peaks.push((tc, prom));
        }
    }
    let pmax = peaks.iter().map(|p| p.1).fold(0.0, f64::max);
    if pmax < 1e-9 * range.max(1e-300) || pmax == 0.0 {
        return Ok(OscillationFit {
            frequency: None,
            peaks_kept: 0,
        });
    }
    let kept: Vec<f64> = peaks
        .iter()
        .filter(|p| p.1 >= 1e-4 * pmax)
        .map(|p| p.0)
        .collect();
    if kept.len() < 2 {
        return Ok(OscillationFit {
            frequency: None,
            peaks_kept: kept.len(),
        });
    }
    let mut spacings: Vec<f64> = kept.windows(2).map(|w| w[1] - w[0]).collect();
    spacings.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let period = spacings[spacings.len() / 2];
    let span = t_grid[t_grid.len() - 1] - t_grid[0];
    if span < 5.0 * period {
        return Err(Error::Precondition(format!(
            "grid covers {:.2} periods of the detected oscillation; need >= 5",
            span / period
        )));
    }
    Ok(OscillationFit {
        frequency: Some(2.0 * PI / period),
        peaks_kept: kept.len(),
    })
}

fn moving_average(v: &[f64], w: usize) -> Vec<f64> {
    let n = v.len() - w + 1;
    let mut out = Vec::with_capacity(n);
    let mut acc: f64 = v[..w].iter().sum();
    out.push(acc / w as f64);
    for k in 1..n {
        acc += v[k + w - 1] - v[k - 1];
        // refresh the running sum periodically to cap drift
        if k % 4096 == 0 {
            acc = v[k..k + w].iter().sum();
        }
        out.push(acc / w as f64);
    }
    out
}
