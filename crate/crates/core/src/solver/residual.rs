//! Complementarity residual of a candidate field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::solver::ObstacleProblem;

/// The three components of the discrete complementarity system, each the
/// max-norm over interior nodes of the corresponding violation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KktResidual {
    /// `max(0, -(-D_h u + chi_A))`: violation of the one-sided equation.
    pub primal_inf: f64,
    /// `|u * (-D_h u + chi_A)|`: complementarity defect.
    pub comp_inf: f64,
    /// `max(0, -u)`: negativity.
    pub feas_inf: f64,
}

impl KktResidual {
    pub fn max_component(&self) -> f64 {
        self.primal_inf.max(self.comp_inf).max(self.feas_inf)
    }

    pub fn within(&self, tol_abs: f64) -> bool {
        self.max_component() <= tol_abs
    }
}

/// Evaluate the residual of `u` against a problem, on interior nodes. The
/// stencil reads the problem's Dirichlet values at the boundary rows, so a
/// field that ignores the boundary data shows a one-sided violation in the
/// boundary-adjacent rows; the deviation of the field's own boundary rows is
/// reported separately by [`dirichlet_mismatch`].
pub fn residual(u: &ScalarField, p: &ObstacleProblem) -> Result<KktResidual> {
    if u.grid != p.grid {
        return Err(Error::GridMismatch);
    }
    let g = &p.grid;
    let nz = g.nz();
    let inv_dxsq = 1.0 / (g.dx * g.dx);
    let denom = 2.0 * g.ambient_dim() as f64;
    let val = |c: usize, j: usize| -> f64 {
        if j == 0 {
            p.bottom_value
        } else if j == nz - 1 {
            0.0
        } else {
            u.get(c, j)
        }
    };
    let mut primal: f64 = 0.0;
    let mut comp: f64 = 0.0;
    let mut feas: f64 = 0.0;
    for c in 0..g.columns() {
        let lat = g.lateral_neighbors(c);
        for j in 1..nz - 1 {
            let v = u.get(c, j);
            let mut sum = val(c, j - 1) + val(c, j + 1);
            for pair in lat.iter().take(g.d) {
                for nb in pair.iter().copied() {
                    sum += val(nb, j);
                }
            }
            let r = (denom * v - sum) * inv_dxsq + p.chi(c, j);
            primal = primal.max(-r);
            comp = comp.max((v * r).abs());
            feas = feas.max(-v);
        }
    }
    Ok(KktResidual {
        primal_inf: primal,
        comp_inf: comp,
        feas_inf: feas,
    })
}

/// Largest deviation of the field's boundary rows from the problem's
/// Dirichlet data.
pub fn dirichlet_mismatch(u: &ScalarField, p: &ObstacleProblem) -> Result<f64> {
    if u.grid != p.grid {
        return Err(Error::GridMismatch);
    }
    let g = &p.grid;
    let nz = g.nz();
    let mut worst: f64 = 0.0;
    for c in 0..g.columns() {
        worst = worst.max((u.get(c, 0) - p.bottom_value).abs());
        worst = worst.max(u.get(c, nz - 1).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rasterize_scenario;
    use crate::grid::GridSpec;
    use crate::reference::v0;
    use crate::scenario;
    use crate::solver::{assemble, psor_solve, SolverConfig};

    #[test]
    fn converged_solution_has_tiny_residual() {
        // coarse spacing keeps the rounding floor of the stencil far below
        // the requested tolerance
        let g = GridSpec::new(1, 1.0, 2.0, 1.0, 1.0 / 8.0).unwrap();
        let a = rasterize_scenario(&scenario::flat(1), &g).unwrap();
        let p = assemble(&a, 0.5).unwrap();
        let cfg = SolverConfig::tuned_for(&g).with_tol(1e-12);
        let s = psor_solve(&p, &cfg, None).unwrap();
        let r = residual(&s.field, &p).unwrap();
        assert!(r.max_component() <= 1e-12 * p.scale());
        assert!(dirichlet_mismatch(&s.field, &p).unwrap() == 0.0);
    }

    #[test]
    fn zero_field_on_positive_time_problem() {
        let g = GridSpec::new(1, 1.0, 2.0, 1.25, 1.0 / 32.0).unwrap();
        let a = rasterize_scenario(&scenario::flat(1), &g).unwrap();
        let p = assemble(&a, 1.0).unwrap();
        let u = ScalarField::zeros(g);
        let r = residual(&u, &p).unwrap();
        assert_eq!(r.feas_inf, 0.0);
        assert_eq!(r.comp_inf, 0.0);
        // the missing bottom value shows as a one-sided violation in the
        // bottom-adjacent row
        assert!(r.primal_inf > 0.0);
        assert!(dirichlet_mismatch(&u, &p).unwrap() == p.bottom_value);
    }

    #[test]
    fn sampled_profile_residual_concentrates_at_the_kinks() {
        let g = GridSpec::new(1, 1.0, 2.0, 1.25, 1.0 / 64.0).unwrap();
        let a = rasterize_scenario(&scenario::flat(1), &g).unwrap();
        let p = assemble(&a, 1.0).unwrap();
        // the exact continuum profile of the flat problem; its kinks sit at
        // z = 0 and z = t
        let u = ScalarField::from_profile(g, |z| v0(1.0, z));
        let mut bad_rows = Vec::new();
        for j in 1..g.nz() - 1 {
            let v = u.get(0, j);
            let lap = (u.get(0, j - 1) + u.get(0, j + 1) - 2.0 * v) / (g.dx * g.dx);
            let r = -lap + p.chi(0, j);
            if r.abs() > 1e-9 && (v * r).abs() > 1e-12 {
                bad_rows.push(g.z(j));
            }
        }
        assert!(!bad_rows.is_empty());
        for z in bad_rows {
            let near_lower = z.abs() <= g.dx + 1e-12;
            let near_upper = (z - 1.0).abs() <= g.dx + 1e-12;
            assert!(near_lower || near_upper, "unexpected residual at z = {z}");
        }
    }
}
