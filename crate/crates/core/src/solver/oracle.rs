//! Brute-force reference solver for tiny instances.
//!
//! Enumerates every subset of interior nodes as a candidate active set,
//! solves the reduced linear system by dense elimination, and keeps the
//! candidate that satisfies all complementarity conditions. Independent of
//! the sweep-based solver; used as a correctness oracle.

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::solver::ObstacleProblem;

const MAX_NODES: usize = 20;
const FEAS_EPS_REL: f64 = 1e-11;
const AGREE_EPS_REL: f64 = 1e-9;

/// Exact solution of a problem with at most 20 interior nodes.
pub fn oracle_active_set(p: &ObstacleProblem) -> Result<ScalarField> {
    let g = &p.grid;
    let nz = g.nz();
    let n = g.columns() * (nz - 2);
    if n > MAX_NODES {
        return Err(Error::TooLarge {
            nodes: n,
            max: MAX_NODES,
        });
    }
    let inv_dxsq = 1.0 / (g.dx * g.dx);
    let denom = 2.0 * g.ambient_dim() as f64;

    // interior index: (column, j) -> c * (nz - 2) + (j - 1)
    let index = |c: usize, j: usize| c * (nz - 2) + j - 1;

    // dense matrix of -D_h and right-hand side -chi + Dirichlet data
    let mut mat = vec![0.0f64; n * n];
    let mut rhs = vec![0.0f64; n];
    for c in 0..g.columns() {
        let lat = g.lateral_neighbors(c);
        for j in 1..nz - 1 {
            let i = index(c, j);
            mat[i * n + i] += denom * inv_dxsq;
            rhs[i] -= p.chi(c, j);
            let mut couple = |cc: usize, jj: usize| {
                if jj == 0 {
                    rhs[i] += p.bottom_value * inv_dxsq;
                } else if jj == nz - 1 {
                    // top value is zero
                } else if (cc, jj) == (c, j) {
                    mat[i * n + i] -= inv_dxsq;
                } else {
                    mat[i * n + index(cc, jj)] -= inv_dxsq;
                }
            };
            couple(c, j - 1);
            couple(c, j + 1);
            for pair in lat.iter().take(g.d) {
                for nb in pair.iter().copied() {
                    couple(nb, j);
                }
            }
        }
    }

    let scale = p.scale();
    let feas_eps = FEAS_EPS_REL * scale;
    let mut best: Option<Vec<f64>> = None;

    for active in 0u32..(1u32 << n) {
        let free: Vec<usize> = (0..n).filter(|i| active & (1 << i) == 0).collect();
        let m = free.len();
        let mut sub = vec![0.0f64; m * m];
        let mut b = vec![0.0f64; m];
        for (ri, &i) in free.iter().enumerate() {
            b[ri] = rhs[i];
            for (ci, &k) in free.iter().enumerate() {
                sub[ri * m + ci] = mat[i * n + k];
            }
        }
        let Some(sol) = solve_dense(&mut sub, &mut b) else {
            continue;
        };
        // nonnegative on the free set
        if sol.iter().any(|&v| v < -feas_eps) {
            continue;
        }
        let mut u = vec![0.0f64; n];
        for (ri, &i) in free.iter().enumerate() {
            u[i] = sol[ri].max(0.0);
        }
        // residual nonnegative on the active set
        let mut ok = true;
        for i in (0..n).filter(|i| active & (1 << i) != 0) {
            let r: f64 = (0..n).map(|k| mat[i * n + k] * u[k]).sum::<f64>() - rhs[i];
            if r < -feas_eps {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        match &best {
            None => best = Some(u),
            Some(prev) => {
                let diff = prev
                    .iter()
                    .zip(&u)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                if diff > AGREE_EPS_REL * scale {
                    return Err(Error::NoFeasibleActiveSet);
                }
            }
        }
    }

    let Some(u) = best else {
        return Err(Error::NoFeasibleActiveSet);
    };
    let mut field = ScalarField::zeros(*g);
    for c in 0..g.columns() {
        field.values[g.node(c, 0)] = p.bottom_value;
        for j in 1..nz - 1 {
            field.values[g.node(c, j)] = u[index(c, j)];
        }
    }
    Ok(field)
}

/// Gaussian elimination with partial pivoting; returns None on (near)
/// singular systems.
fn solve_dense(a: &mut [f64], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best < 1e-300 {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row * n + k] * x[k];
        }
        x[row] = s / a[row * n + row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::IndicatorField;
    use crate::grid::GridSpec;
    use crate::solver::{assemble, psor_solve, SolverConfig};

    #[test]
    fn one_unknown_closed_form() {
        // one interior node, chi = 1, bottom value forces positivity:
        // (2u - b)/dx^2 + 1 = 0  =>  u = (b - dx^2) / 2
        let dx = 0.25;
        let g = GridSpec::new(1, dx / 2.0, dx, dx, dx).unwrap();
        let p = crate::solver::ObstacleProblem {
            grid: g,
            source: vec![false, true, true],
            t: 0.1,
            shift: 0.0,
            bottom_value: 0.45,
            strip_c: dx,
        };
        let u = oracle_active_set(&p).unwrap();
        let expect = (p.bottom_value - dx * dx) / 2.0;
        assert!((u.get(0, 1) - expect).abs() < 1e-14);
    }

    #[test]
    fn zero_time_gives_zero() {
        let dx = 0.125;
        let g = GridSpec::new(1, dx / 2.0, 0.5, 0.5, dx).unwrap();
        let a = IndicatorField::from_dry_predicate(g, "half", |_, z| z >= 0.0).unwrap();
        let p = assemble(&a, 0.0).unwrap();
        let u = oracle_active_set(&p).unwrap();
        assert!(u.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn matches_psor_on_a_free_boundary_instance() {
        let dx = 1.0 / 8.0;
        let g = GridSpec::new(1, dx / 2.0, 1.0, 0.75, dx).unwrap();
        let a = IndicatorField::from_dry_predicate(g, "half", |_, z| z >= 0.0).unwrap();
        // small t: free boundary sits inside the box
        let p = assemble(&a, 0.25).unwrap();
        let exact = oracle_active_set(&p).unwrap();
        let cfg = SolverConfig::default().with_tol(1e-12);
        let s = psor_solve(&p, &cfg, None).unwrap();
        let diff = exact.max_abs_diff(&s.field).unwrap();
        assert!(diff <= 1e-10 * p.scale(), "diff {diff}");
        // complementary and nonnegative
        for &v in &exact.values {
            assert!(v >= 0.0);
        }
    }
}
