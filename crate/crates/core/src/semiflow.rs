//! Time sweep over the one-parameter family of obstacle problems.
//!
//! Time enters only as a parameter, so each instant can be solved
//! independently; sweeping in ascending order lets every solve warm-start
//! from its predecessor, and chunked mode cold-starts each chunk head so
//! chunks can run concurrently.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{positivity_set, DomainMask, ScalarField};
use crate::geometry::IndicatorField;
use crate::grid::GridSpec;
use crate::solver::{assemble, assemble_from_mask, psor_solve, KktResidual, SolverConfig};

/// Per-time solver diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct TimeDiagnostics {
    pub t: f64,
    pub residual: KktResidual,
    pub iterations: usize,
}

/// A computed run: one potential field and wet mask per requested time.
#[derive(Debug, Clone)]
pub struct SemiflowRun {
    pub scenario: String,
    pub grid: GridSpec,
    pub times: Vec<f64>,
    pub fields: Vec<ScalarField>,
    pub masks: Vec<DomainMask>,
    pub diagnostics: Vec<TimeDiagnostics>,
    /// Strip constant of the initial indicator.
    pub c: f64,
}

/// Solve the family over ascending `times`, warm-starting each solve from
/// the previous field. The mask at `t = 0` is the initial fluid set (the
/// potential is identically zero there).
pub fn evolve(a: &IndicatorField, times: &[f64], cfg: &SolverConfig) -> Result<SemiflowRun> {
    evolve_chunked(a, times, cfg, times.len().max(1))
}

/// Like [`evolve`], but partitions the times into chunks of `chunk_size`;
/// each chunk is sequential internally and chunks run concurrently.
pub fn evolve_chunked(
    a: &IndicatorField,
    times: &[f64],
    cfg: &SolverConfig,
    chunk_size: usize,
) -> Result<SemiflowRun> {
    if times.is_empty() {
        return Err(Error::InvalidInput("times must be nonempty".into()));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "times must be strictly ascending".into(),
        ));
    }
    if times[0] < 0.0 {
        return Err(Error::InvalidInput("times must be nonnegative".into()));
    }
    let t_max = *times.last().unwrap();
    // fail fast on every box requirement before solving anything
    assemble(a, t_max)?;
    let chunk_size = chunk_size.max(1);

    let chunks: Vec<&[f64]> = times.chunks(chunk_size).collect();
    let solved: Result<Vec<Vec<(ScalarField, TimeDiagnostics)>>> = chunks
        .par_iter()
        .map(|chunk| {
            let mut out = Vec::with_capacity(chunk.len());
            let mut prev: Option<ScalarField> = None;
            for &t in *chunk {
                let p = assemble(a, t).map_err(|e| e.at_time(t))?;
                let s = psor_solve(&p, cfg, prev.as_ref()).map_err(|e| e.at_time(t))?;
                out.push((
                    s.field.clone(),
                    TimeDiagnostics {
                        t,
                        residual: s.residual,
                        iterations: s.iterations,
                    },
                ));
                prev = Some(s.field);
            }
            Ok(out)
        })
        .collect();

    let mut fields = Vec::with_capacity(times.len());
    let mut diagnostics = Vec::with_capacity(times.len());
    for chunk in solved? {
        for (f, d) in chunk {
            fields.push(f);
            diagnostics.push(d);
        }
    }
    let masks: Vec<DomainMask> = times
        .iter()
        .zip(&fields)
        .map(|(&t, f)| {
            if t == 0.0 {
                DomainMask::initial_fluid(a)
            } else {
                positivity_set(f)
            }
        })
        .collect();
    Ok(SemiflowRun {
        scenario: a.label.clone(),
        grid: a.grid,
        times: times.to_vec(),
        fields,
        masks,
        diagnostics,
        c: a.c,
    })
}

/// Column heights of a wet mask: `f` in the rising frame (half a cell above
/// the highest wet node) and the gauge height `h = f - t`. Fails with the
/// offending column if some column is not wet in a contiguous range from the
/// bottom.
#[derive(Debug, Clone)]
pub struct GraphFunction {
    pub grid: GridSpec,
    pub t: f64,
    pub f: Vec<f64>,
    pub h: Vec<f64>,
}

pub fn extract_graph(grid: &GridSpec, mask: &DomainMask, t: f64) -> Result<GraphFunction> {
    if grid.params() != mask.grid_params {
        return Err(Error::GridMismatch);
    }
    let nz = grid.nz();
    let mut f = Vec::with_capacity(grid.columns());
    let mut h = Vec::with_capacity(grid.columns());
    for c in 0..grid.columns() {
        let mut top = None;
        for j in 0..nz {
            if mask.is_wet(c, j) {
                match top {
                    Some(prev) if prev + 1 != j => return Err(Error::NotAGraph { column: c }),
                    _ => top = Some(j),
                }
            }
        }
        let Some(top) = top else {
            return Err(Error::NotAGraph { column: c });
        };
        // wet range must start at the bottom row
        if !mask.is_wet(c, 0) {
            return Err(Error::NotAGraph { column: c });
        }
        let height = grid.z(top) + grid.dx / 2.0;
        f.push(height);
        h.push(height - t);
    }
    Ok(GraphFunction {
        grid: *grid,
        t,
        f,
        h,
    })
}

impl SemiflowRun {
    pub fn graph(&self, index: usize) -> Result<GraphFunction> {
        extract_graph(&self.grid, &self.masks[index], self.times[index])
    }

    /// Forward-difference pressure on the time slot `[t_i, t_{i+1})`:
    /// nonnegative by clamping and supported on the wet set of `t_{i+1}`.
    pub fn pressure(&self, index: usize) -> Result<ScalarField> {
        if index + 1 >= self.times.len() {
            return Err(Error::InvalidInput(format!(
                "pressure slot {index} needs a successor time"
            )));
        }
        let dt = self.times[index + 1] - self.times[index];
        let hi = &self.fields[index + 1];
        let lo = &self.fields[index];
        let mask = &self.masks[index + 1];
        let mut values = vec![0.0; self.grid.nodes()];
        for (i, v) in values.iter_mut().enumerate() {
            if mask.cells[i] {
                *v = ((hi.values[i] - lo.values[i]) / dt).max(0.0);
            }
        }
        Ok(ScalarField {
            grid: self.grid,
            values,
        })
    }
}

/// Defect of the composition law: solve up to `s`, restart from the wet set
/// at `s` with parameter `t - s`, and compare `v(s) + v(t, s)` against the
/// direct solution `v(t)` in the max norm.
///
/// The restarted problem carries the bottom value
/// `(t - s)((t - s)/2 + L + s)`: subtracting the two direct solutions shows
/// this is the value the difference `v(t) - v(s)` takes on the bottom row.
pub fn compose_check(a: &IndicatorField, s: f64, t: f64, cfg: &SolverConfig) -> Result<f64> {
    if !(0.0 <= s && s < t) {
        return Err(Error::InvalidInput(format!(
            "need 0 <= s < t, got s = {s}, t = {t}"
        )));
    }
    let p_s = assemble(a, s)?;
    let sol_s = if s == 0.0 {
        crate::solver::Solve {
            field: ScalarField::zeros(a.grid),
            residual: KktResidual {
                primal_inf: 0.0,
                comp_inf: 0.0,
                feas_inf: 0.0,
            },
            iterations: 0,
        }
    } else {
        psor_solve(&p_s, cfg, None).map_err(|e| e.at_time(s))?
    };
    let mask_s = if s == 0.0 {
        DomainMask::initial_fluid(a)
    } else {
        positivity_set(&sol_s.field)
    };

    let p_restart = assemble_from_mask(&a.grid, &mask_s, t - s, s)?;
    let sol_restart = psor_solve(&p_restart, cfg, None).map_err(|e| e.at_time(t))?;

    let p_t = assemble(a, t)?;
    let sol_t = psor_solve(&p_t, cfg, Some(&sol_s.field)).map_err(|e| e.at_time(t))?;

    let defect = sol_t
        .field
        .values
        .iter()
        .zip(&sol_s.field.values)
        .zip(&sol_restart.field.values)
        .map(|((vt, vs), vr)| (vs + vr - vt).abs())
        .fold(0.0, f64::max);
    Ok(defect)
}
