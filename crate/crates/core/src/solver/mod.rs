//! Discrete obstacle problem / linear complementarity system.
//!
//! The unknown `u >= 0` satisfies, on interior nodes,
//!
//! ```text
//!   -D_h u + chi_A >= 0,   u * (-D_h u + chi_A) = 0,
//! ```
//!
//! where `D_h` is the 5-point (d = 1) or 7-point (d = 2) Laplacian, with
//! Dirichlet rows at the bottom (`t (t/2 + L)`) and top (`0`) and periodic
//! lateral axes.

mod oracle;
mod psor;
mod residual;

pub use oracle::oracle_active_set;
pub use psor::{psor_solve, Solve, SolverConfig};
pub use residual::{dirichlet_mismatch, residual, KktResidual};

use crate::error::{Error, Result};
use crate::field::DomainMask;
use crate::geometry::IndicatorField;
use crate::grid::GridSpec;

/// A fully pinned discrete problem instance.
#[derive(Debug, Clone)]
pub struct ObstacleProblem {
    pub grid: GridSpec,
    /// Source mask `chi_A` per node.
    pub source: Vec<bool>,
    /// Time parameter.
    pub t: f64,
    /// Vertical offset of the reference frame; zero for plain problems,
    /// `s` for restarted problems whose source is a complement of a wet set
    /// grown up to time `s`.
    pub shift: f64,
    /// Bottom Dirichlet value, `t (t/2 + L + shift)`.
    pub bottom_value: f64,
    /// Strip constant of the source's fluid complement.
    pub strip_c: f64,
}

impl ObstacleProblem {
    /// Residual scale, `max(1, bottom_value)`.
    #[inline]
    pub fn scale(&self) -> f64 {
        self.bottom_value.max(1.0)
    }

    #[inline]
    pub fn chi(&self, column: usize, j: usize) -> f64 {
        if self.source[self.grid.node(column, j)] {
            1.0
        } else {
            0.0
        }
    }
}

fn check_box(grid: &GridSpec, c: f64, t: f64) -> Result<()> {
    if grid.l <= c + t {
        return Err(Error::DepthTooShallow {
            l: grid.l,
            required: c + t,
        });
    }
    if grid.h_top <= c + t {
        return Err(Error::CeilingTooLow {
            h_top: grid.h_top,
            required: c + t,
        });
    }
    Ok(())
}

/// Set up the problem for an initial indicator and time parameter `t`.
pub fn assemble(a: &IndicatorField, t: f64) -> Result<ObstacleProblem> {
    if t < 0.0 {
        return Err(Error::InvalidInput(format!(
            "time parameter t = {t} must be >= 0"
        )));
    }
    check_box(&a.grid, a.c, t)?;
    Ok(ObstacleProblem {
        grid: a.grid,
        source: a.cells.clone(),
        t,
        shift: 0.0,
        bottom_value: t * (t / 2.0 + a.grid.l),
        strip_c: a.c,
    })
}

/// Set up a restarted problem: the source is the complement of a wet mask
/// (a domain already grown up to time `shift`), the time parameter is `tau`,
/// and the bottom row carries the matching value `tau (tau/2 + L + shift)`.
pub fn assemble_from_mask(
    grid: &GridSpec,
    mask: &DomainMask,
    tau: f64,
    shift: f64,
) -> Result<ObstacleProblem> {
    if grid.params() != mask.grid_params {
        return Err(Error::GridMismatch);
    }
    if tau < 0.0 || shift < 0.0 {
        return Err(Error::InvalidInput(format!(
            "time parameters must be nonnegative (tau = {tau}, shift = {shift})"
        )));
    }
    let source: Vec<bool> = mask.cells.iter().map(|&w| !w).collect();
    // strip constant of the mask, one cell inflated like the rasterizer's
    let mut hmax_wet = f64::NEG_INFINITY;
    let mut hmin_dry = f64::INFINITY;
    for c in 0..grid.columns() {
        for j in 0..grid.nz() {
            let z = grid.z(j);
            if source[grid.node(c, j)] {
                hmin_dry = hmin_dry.min(z);
            } else {
                hmax_wet = hmax_wet.max(z);
            }
        }
    }
    if !hmax_wet.is_finite() || !hmin_dry.is_finite() {
        return Err(Error::StripViolation(
            "restart mask must contain both wet and dry nodes".into(),
        ));
    }
    let c = hmax_wet.max(-hmin_dry) + grid.dx;
    check_box(grid, c, tau)?;
    Ok(ObstacleProblem {
        grid: *grid,
        source,
        t: tau,
        shift,
        bottom_value: tau * (tau / 2.0 + grid.l + shift),
        strip_c: c,
    })
}
