//! Quantitative probes over computed runs: set distances, graph norms,
//! moduli of continuity, the wetted-volume law, waiting-time detection, and
//! the interface gradient diagnostic.
//!
//! Probes never fail a run; they emit [`ProbeReport`]s and leave pass/fail
//! judgment to the caller. Every report satisfies
//! `pass == (measured <= bound + slack)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{DomainMask, ScalarField};
use crate::grid::GridSpec;
use crate::semiflow::{GraphFunction, SemiflowRun};

/// One measurement with its acceptance bound.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub params: serde_json::Value,
    pub measured: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

impl ProbeReport {
    pub fn new(
        probe: impl Into<String>,
        params: serde_json::Value,
        measured: f64,
        bound: f64,
        slack: f64,
    ) -> Self {
        ProbeReport {
            probe: probe.into(),
            params,
            measured,
            bound,
            slack,
            pass: measured <= bound + slack,
        }
    }

    /// Serialize as one JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("probe report serializes")
    }
}

/// Volume of the symmetric difference of two wet masks.
pub fn symmetric_difference(g: &GridSpec, m1: &DomainMask, m2: &DomainMask) -> Result<f64> {
    check_masks(g, m1, m2)?;
    let count = m1
        .cells
        .iter()
        .zip(&m2.cells)
        .filter(|(&a, &b)| a != b)
        .count();
    Ok(count as f64 * g.cell_volume())
}

/// Volume of `m1 \ m2`.
pub fn one_sided_difference(g: &GridSpec, m1: &DomainMask, m2: &DomainMask) -> Result<f64> {
    check_masks(g, m1, m2)?;
    let count = m1
        .cells
        .iter()
        .zip(&m2.cells)
        .filter(|(&a, &b)| a && !b)
        .count();
    Ok(count as f64 * g.cell_volume())
}

fn check_masks(g: &GridSpec, m1: &DomainMask, m2: &DomainMask) -> Result<()> {
    if m1.grid_params != g.params() || m2.grid_params != g.params() {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lp {
    L1,
    L2,
    LInf,
}

impl Lp {
    /// Weighted discrete norm of per-column values (cell measure `dx^d`).
    pub fn norm(&self, values: impl Iterator<Item = f64>, cell_measure: f64) -> f64 {
        match self {
            Lp::L1 => values.map(f64::abs).sum::<f64>() * cell_measure,
            Lp::L2 => (values.map(|v| v * v).sum::<f64>() * cell_measure).sqrt(),
            Lp::LInf => values.map(f64::abs).fold(0.0, f64::max),
        }
    }

    /// `(2R)^(d/p)`, the measure factor that converts a uniform height gap
    /// into the corresponding norm gap.
    pub fn measure_factor(&self, g: &GridSpec) -> f64 {
        let total = (2.0 * g.r).powi(g.d as i32);
        match self {
            Lp::L1 => total,
            Lp::L2 => total.sqrt(),
            Lp::LInf => 1.0,
        }
    }
}

/// Discrete `L^p` distance between two graphs on the same lateral grid.
pub fn lp_graph_distance(f1: &GraphFunction, f2: &GraphFunction, p: Lp) -> Result<f64> {
    if f1.grid != f2.grid {
        return Err(Error::GridMismatch);
    }
    let cell = f1.grid.dx.powi(f1.grid.d as i32);
    Ok(p.norm(f1.f.iter().zip(&f2.f).map(|(a, b)| a - b), cell))
}

/// Modulus-of-continuity specification.
#[derive(Debug, Clone)]
pub enum ModulusSpec {
    Lipschitz(f64),
    Hoelder {
        beta: f64,
        k: f64,
    },
    /// Sampled `(r, omega(r))`, nondecreasing with `omega(0+) = 0`.
    Tabulated(Vec<(f64, f64)>),
}

impl ModulusSpec {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            ModulusSpec::Lipschitz(l) => l * r,
            ModulusSpec::Hoelder { beta, k } => k * r.powf(*beta),
            ModulusSpec::Tabulated(samples) => {
                // piecewise-linear, clamped to the last value
                let mut prev = (0.0, 0.0);
                for &(rr, w) in samples {
                    if r <= rr {
                        if rr == prev.0 {
                            return w;
                        }
                        let s = (r - prev.0) / (rr - prev.0);
                        return prev.1 + s * (w - prev.1);
                    }
                    prev = (rr, w);
                }
                prev.1
            }
        }
    }
}

/// Verify `|f(x') - f(y')| <= omega(|x' - y'|) + 2 dx` over periodic column
/// pairs within distance `R`. Pairs are strided down above a size cap.
pub fn modulus_check(f: &GraphFunction, m: &ModulusSpec) -> ProbeReport {
    let g = &f.grid;
    let columns = g.columns();
    const PAIR_CAP: usize = 4_000_000;
    let stride = (columns * columns / PAIR_CAP).max(1);
    let mut worst = f64::NEG_INFINITY;
    for c1 in 0..columns {
        for c2 in (c1 + 1..columns).step_by(stride) {
            let dist = g.column_distance(c1, c2);
            if dist > g.r {
                continue;
            }
            let gap = (f.f[c1] - f.f[c2]).abs() - m.eval(dist);
            if gap > worst {
                worst = gap;
            }
        }
    }
    if !worst.is_finite() {
        worst = 0.0;
    }
    ProbeReport::new(
        "modulus_check",
        serde_json::json!({ "columns": columns, "stride": stride }),
        worst,
        0.0,
        2.0 * g.dx,
    )
}

/// Nonincrease of `L^p` norms of the gauge height and its forward-difference
/// gradient along the run, with slack `4 dx (2R)^(d/p)` per step.
pub fn lyapunov_report(run: &SemiflowRun, p: Lp) -> Result<Vec<ProbeReport>> {
    let g = &run.grid;
    let cell = g.dx.powi(g.d as i32);
    let slack = 4.0 * g.dx * p.measure_factor(g);
    let mut graphs = Vec::with_capacity(run.times.len());
    for i in 0..run.times.len() {
        graphs.push(run.graph(i)?);
    }
    let mut reports = Vec::new();
    for w in graphs.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let n0 = p.norm(lo.h.iter().copied(), cell);
        let n1 = p.norm(hi.h.iter().copied(), cell);
        reports.push(ProbeReport::new(
            "lyapunov_h",
            serde_json::json!({ "from": lo.t, "to": hi.t }),
            n1,
            n0,
            slack,
        ));
        for axis in 0..g.d {
            let d0 = p.norm(forward_diff(g, &lo.h, axis).into_iter(), cell);
            let d1 = p.norm(forward_diff(g, &hi.h, axis).into_iter(), cell);
            reports.push(ProbeReport::new(
                "lyapunov_grad",
                serde_json::json!({ "from": lo.t, "to": hi.t, "axis": axis }),
                d1,
                d0,
                slack,
            ));
        }
    }
    Ok(reports)
}

fn forward_diff(g: &GridSpec, h: &[f64], axis: usize) -> Vec<f64> {
    let nx = g.nx();
    (0..g.columns())
        .map(|c| {
            let [ix, iy] = g.column_indices(c);
            let next = match axis {
                0 => g.column_of((ix + 1) % nx, iy),
                _ => g.column_of(ix, (iy + 1) % nx),
            };
            (h[next] - h[c]) / g.dx
        })
        .collect()
}

/// Frozen coefficient of the wetted-volume deviation bound, measured on the
/// bundled cosine scenario at dx = 1/64 (observed about 0.26) and kept with
/// headroom as a regression bound.
pub const TIME_REG_COEFF: f64 = 0.6;

/// Compare the wetted volume inside a lateral cylinder against
/// `(t_j - t_i) |B_R|`. Slack is one cell layer over the cylinder section;
/// the deviation bound scales like `C^(2/5) R^(d - 2/5)`.
pub fn time_regularity_measure(
    run: &SemiflowRun,
    i: usize,
    j: usize,
    r_ball: f64,
    center: [f64; 2],
) -> Result<ProbeReport> {
    if j <= i {
        return Err(Error::InvalidInput("need j > i".into()));
    }
    let g = &run.grid;
    if r_ball <= run.c {
        return Err(Error::BallTooSmall { r_ball, c: run.c });
    }
    if r_ball > g.r {
        return Err(Error::InvalidInput(format!(
            "ball radius {r_ball} exceeds lateral half-width {}",
            g.r
        )));
    }
    let (mi, mj) = (&run.masks[i], &run.masks[j]);
    let dt = run.times[j] - run.times[i];
    let mut cols_in_ball = 0usize;
    let mut newly_wet = 0usize;
    for c in 0..g.columns() {
        let x = g.lateral_coords(c);
        let dist = if g.d == 1 {
            g.periodic_delta(x[0], center[0]).abs()
        } else {
            g.periodic_delta(x[0], center[0])
                .hypot(g.periodic_delta(x[1], center[1]))
        };
        if dist > r_ball {
            continue;
        }
        cols_in_ball += 1;
        for jz in 0..g.nz() {
            if mj.is_wet(c, jz) && !mi.is_wet(c, jz) {
                newly_wet += 1;
            }
        }
    }
    let volume = newly_wet as f64 * g.cell_volume();
    let ball_measure = match g.d {
        1 => 2.0 * r_ball,
        _ => std::f64::consts::PI * r_ball * r_ball,
    };
    let expected = dt * ball_measure;
    let deviation = (volume - expected).abs();
    let layer = cols_in_ball as f64 * g.dx.powi(g.d as i32) * g.dx;
    let bound = dt * TIME_REG_COEFF * run.c.powf(0.4) * r_ball.powf(g.d as f64 - 0.4);
    Ok(ProbeReport::new(
        "time_regularity",
        serde_json::json!({
            "from": run.times[i], "to": run.times[j],
            "r_ball": r_ball, "volume": volume, "expected": expected,
        }),
        deviation,
        bound,
        layer,
    ))
}

/// First run time at which the mask contains the given node, or `None` if it
/// stays dry through the whole run.
pub fn waiting_time_probe(run: &SemiflowRun, apex_lat: [f64; 2], apex_z: f64) -> Option<f64> {
    let g = &run.grid;
    let nx = g.nx();
    let ix = (((apex_lat[0] + g.r) / g.dx).round() as usize) % nx;
    let iy = if g.d == 2 {
        (((apex_lat[1] + g.r) / g.dx).round() as usize) % nx
    } else {
        0
    };
    let c = g.column_of(ix, iy);
    let j = g.j_of_z(apex_z);
    run.times
        .iter()
        .zip(&run.masks)
        .find(|(_, m)| m.is_wet(c, j))
        .map(|(&t, _)| t)
}

/// One-sided vertical difference of the pressure across the interface, per
/// column: `(p[j_f - 1] - p[j_f]) / dx` at the graph's top wet node. Reports
/// the negated minimum so that `pass == (min >= threshold)`; the raw min and
/// max ride along in the params. Columns in `exclude` (e.g. a cone apex) are
/// skipped.
pub fn taylor_probe(
    p_field: &ScalarField,
    graph: &GraphFunction,
    threshold: f64,
    exclude: &[usize],
) -> Result<ProbeReport> {
    if p_field.grid != graph.grid {
        return Err(Error::GridMismatch);
    }
    let g = &graph.grid;
    let mut min_slope = f64::INFINITY;
    let mut max_slope = f64::NEG_INFINITY;
    for c in 0..g.columns() {
        if exclude.contains(&c) {
            continue;
        }
        let top = g.j_of_z(graph.f[c] - g.dx / 2.0);
        if top < 1 {
            continue;
        }
        let slope = (p_field.get(c, top - 1) - p_field.get(c, top)) / g.dx;
        min_slope = min_slope.min(slope);
        max_slope = max_slope.max(slope);
    }
    Ok(ProbeReport::new(
        "taylor",
        serde_json::json!({ "min": min_slope, "max": max_slope, "threshold": threshold }),
        -min_slope,
        -threshold,
        0.0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::positivity_set;
    use crate::geometry::rasterize_scenario;
    use crate::scenario;
    use crate::semiflow::{evolve, extract_graph};
    use crate::solver::SolverConfig;

    fn grid() -> GridSpec {
        GridSpec::new(1, 1.0, 2.0, 1.0, 1.0 / 16.0).unwrap()
    }

    fn flat_mask_at(g: &GridSpec, height: f64) -> DomainMask {
        let u = ScalarField::from_profile(*g, move |z| (height - z).max(0.0));
        positivity_set(&u)
    }

    #[test]
    fn symmetric_difference_of_flat_masks() {
        let g = grid();
        let m0 = flat_mask_at(&g, 0.0);
        let m5 = flat_mask_at(&g, 0.5);
        assert_eq!(symmetric_difference(&g, &m0, &m0).unwrap(), 0.0);
        let sd = symmetric_difference(&g, &m0, &m5).unwrap();
        // a slab of height 0.5 and width 2R, up to one cell layer
        assert!((sd - 1.0).abs() <= 2.0 * g.dx * 2.0, "sd = {sd}");
        // one-sided split is exact
        let a = one_sided_difference(&g, &m0, &m5).unwrap();
        let b = one_sided_difference(&g, &m5, &m0).unwrap();
        assert_eq!(sd, a + b);
        assert_eq!(a, 0.0);
    }

    #[test]
    fn lp_distance_of_constant_offset() {
        let g = grid();
        let m = flat_mask_at(&g, 0.0);
        let m2 = flat_mask_at(&g, 0.25);
        let f1 = extract_graph(&g, &m, 0.0).unwrap();
        let f2 = extract_graph(&g, &m2, 0.0).unwrap();
        let s = 0.25;
        let d1 = lp_graph_distance(&f1, &f2, Lp::L1).unwrap();
        let d2 = lp_graph_distance(&f1, &f2, Lp::L2).unwrap();
        let di = lp_graph_distance(&f1, &f2, Lp::LInf).unwrap();
        assert!((d1 - s * 2.0).abs() < 1e-12);
        assert!((d2 - s * 2.0_f64.sqrt()).abs() < 1e-12);
        assert!((di - s).abs() < 1e-12);
    }

    #[test]
    fn modulus_check_constant_and_sawtooth() {
        let g = grid();
        let m = flat_mask_at(&g, 0.0);
        let f = extract_graph(&g, &m, 0.0).unwrap();
        assert!(modulus_check(&f, &ModulusSpec::Lipschitz(0.0)).pass);

        // Lipschitz-1 sawtooth against Lipschitz(1)
        let mut cells = vec![false; g.nodes()];
        for c in 0..g.columns() {
            let x = g.lateral_coords(c)[0];
            let height = 0.5 - (x.abs() - 0.5).abs(); // periodic sawtooth, slope 1
            for j in 0..g.nz() {
                cells[g.node(c, j)] = g.z(j) < height;
            }
        }
        let mask = DomainMask::new(&g, cells);
        let f = extract_graph(&g, &mask, 0.0).unwrap();
        let report = modulus_check(&f, &ModulusSpec::Lipschitz(1.0));
        assert!(report.pass, "sawtooth: {}", report.to_json_line());
        // a modulus below the actual slope fails
        let report = modulus_check(&f, &ModulusSpec::Lipschitz(0.2));
        assert!(!report.pass);
    }

    #[test]
    fn waiting_time_probe_on_flat_run() {
        let g = GridSpec::new(1, 1.0, 2.0, 1.5, 1.0 / 16.0).unwrap();
        let a = rasterize_scenario(&scenario::flat(1), &g).unwrap();
        let run = evolve(&a, &[0.25, 0.5], &SolverConfig::tuned_for(&g)).unwrap();
        // a node on the initial interface wets at the first positive time
        assert_eq!(waiting_time_probe(&run, [0.0, 0.0], 0.0), Some(0.25));
        // a node above the final front never wets
        assert_eq!(waiting_time_probe(&run, [0.0, 0.0], 1.0), None);
    }

    #[test]
    fn taylor_probe_skips_excluded_columns() {
        let g = grid();
        let u = ScalarField::from_profile(g, |z| (0.5 - z).max(0.0));
        let mask = positivity_set(&u);
        let f = extract_graph(&g, &mask, 0.5).unwrap();
        let mut p = ScalarField::from_profile(g, |z| (0.5 - z).max(0.0));
        // invert the gradient in one column to make it the singular one
        let top = g.j_of_z(f.f[0] - g.dx / 2.0);
        p.values[g.node(0, top - 1)] = 0.0;
        p.values[g.node(0, top)] = 0.25;
        let bad = taylor_probe(&p, &f, 0.0, &[]).unwrap();
        assert!(!bad.pass);
        let good = taylor_probe(&p, &f, 0.0, &[0]).unwrap();
        assert!(good.pass, "{}", good.to_json_line());
    }

    #[test]
    fn probe_report_invariant() {
        let r = ProbeReport::new("x", serde_json::json!({}), 1.0, 0.5, 0.25);
        assert!(!r.pass);
        let r = ProbeReport::new("x", serde_json::json!({}), 0.7, 0.5, 0.25);
        assert!(r.pass);
        assert!(r.to_json_line().contains("\"probe\":\"x\""));
    }
}
