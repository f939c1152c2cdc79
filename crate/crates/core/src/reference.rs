//! Closed-form reference objects: the one-dimensional rest profile, planar
//! cone harmonics and their homogeneity exponents, the explicit quadratic
//! harmonic, and the linearized interface evolution used for
//! cross-validation.

use crate::error::{Error, Result};

/// One-dimensional rest profile:
///
/// ```text
///   v0(t, x) = t (t/2 - x)      x < 0
///            = (t - x)^2 / 2    0 <= x <= t
///            = 0                x >= t
/// ```
///
/// `C^{1,1}` in `x`, piecewise quadratic, and additive:
/// `v0(t, x) = v0(s, x) + v0(t - s, x - s)` for `0 <= s <= t`.
pub fn v0(t: f64, x: f64) -> f64 {
    if x < 0.0 {
        t * (t / 2.0 - x)
    } else if x <= t {
        let w = t - x;
        0.5 * w * w
    } else {
        0.0
    }
}

/// Planar cone with apex and full aperture `alpha` in `(0, 2 pi)`, opening
/// downward around the `-e_N` axis. For `alpha < pi` this is the set
/// `{ |x'| < -tan(alpha/2) (z - apex_z) }`.
#[derive(Debug, Clone, Copy)]
pub struct ConeSpec {
    pub apex: [f64; 2],
    pub alpha: f64,
    pub d: usize,
}

impl ConeSpec {
    pub fn new(apex: [f64; 2], alpha: f64, d: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0 * std::f64::consts::PI) {
            return Err(Error::InvalidInput(format!(
                "aperture alpha = {alpha} outside (0, 2pi)"
            )));
        }
        Ok(ConeSpec { apex, alpha, d })
    }
}

/// Aperture paired with the homogeneity of the associated harmonic.
#[derive(Debug, Clone, Copy)]
pub struct ConeExponent {
    pub alpha: f64,
    pub lambda: f64,
}

/// Homogeneity of the positive harmonic on a planar sector: `lambda = pi /
/// alpha`. Strictly decreasing, `lambda(pi) = 1`, and `lambda = 2` exactly at
/// the critical aperture `pi / 2`.
pub fn cone_exponent_2d(alpha: f64) -> Result<ConeExponent> {
    if !(alpha > 0.0 && alpha < 2.0 * std::f64::consts::PI) {
        return Err(Error::InvalidInput(format!(
            "aperture alpha = {alpha} outside (0, 2pi)"
        )));
    }
    Ok(ConeExponent {
        alpha,
        lambda: std::f64::consts::PI / alpha,
    })
}

/// Critical full aperture in ambient dimension `d + 1`: `2 arctan(sqrt(d))`.
pub fn critical_angle(d: usize) -> f64 {
    2.0 * (d as f64).sqrt().atan()
}

/// Positive harmonic on a planar cone, vanishing on both walls, normalized
/// so the gradient magnitude on the walls is `r^(lambda - 1)`:
/// `u = lambda^{-1} r^lambda sin(lambda * theta)` with `theta` the angle
/// measured from one wall. Zero outside the cone.
pub fn cone_harmonic_2d(cone: &ConeSpec, x: [f64; 2]) -> Result<f64> {
    if cone.d != 1 {
        return Err(Error::DimensionUnsupported { d: cone.d });
    }
    let dx = x[0] - cone.apex[0];
    let dz = x[1] - cone.apex[1];
    let r = dx.hypot(dz);
    if r == 0.0 {
        return Ok(0.0);
    }
    // polar angle from the downward axis, in (-pi, pi]
    let theta = dx.atan2(-dz);
    let half = cone.alpha / 2.0;
    if theta.abs() >= half {
        return Ok(0.0);
    }
    let lambda = std::f64::consts::PI / cone.alpha;
    let wall_angle = theta + half; // measured from one wall, in (0, alpha)
    Ok(r.powf(lambda) * (lambda * wall_angle).sin() / lambda)
}

/// The explicit quadratic `d * z^2 - |x'|^2`, harmonic in `d + 1` variables;
/// positive on the critical cone and vanishing on its boundary
/// `sqrt(d) |z| = |x'|`.
pub fn quadratic_harmonic(x_lat: &[f64], z: f64, d: usize) -> f64 {
    let rho_sq: f64 = x_lat.iter().take(d).map(|v| v * v).sum();
    d as f64 * z * z - rho_sq
}

/// Linearized interface evolution on the periodic interval `[-R, R)`: each
/// Fourier mode decays by `exp(-|k| t)` with its physical wavenumber
/// `k = pi m / R`. The zero mode is untouched, so the mean is preserved; the
/// multiplier set is a Poisson kernel, so every discrete `L^p` norm is
/// nonincreasing.
pub fn linearized_graph_evolution(h0: &[f64], r: f64, t: f64) -> Vec<f64> {
    let n = h0.len();
    if n == 0 {
        return Vec::new();
    }
    let mut re = vec![0.0f64; n];
    let mut im = vec![0.0f64; n];
    let w = -2.0 * std::f64::consts::PI / n as f64;
    for m in 0..n {
        let mut sr = 0.0;
        let mut si = 0.0;
        for (idx, &v) in h0.iter().enumerate() {
            let ph = w * (m * idx % n) as f64;
            sr += v * ph.cos();
            si += v * ph.sin();
        }
        let mode = if m <= n / 2 { m } else { n - m };
        let k = std::f64::consts::PI * mode as f64 / r;
        let damp = (-k * t).exp();
        re[m] = sr * damp;
        im[m] = si * damp;
    }
    let winv = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|idx| {
            let mut s = 0.0;
            for m in 0..n {
                let ph = winv * (m * idx % n) as f64;
                s += re[m] * ph.cos() - im[m] * ph.sin();
            }
            s / n as f64
        })
        .collect()
}
