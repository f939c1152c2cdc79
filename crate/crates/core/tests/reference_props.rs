//! Properties of the linearized interface evolution, and an independent
//! finite-difference oracle for its decay rate.

use proptest::prelude::*;

use hs_core::reference::linearized_graph_evolution;
use hs_core::Lp;

fn norms(h: &[f64], cell: f64) -> [f64; 3] {
    [
        Lp::L1.norm(h.iter().copied(), cell),
        Lp::L2.norm(h.iter().copied(), cell),
        Lp::LInf.norm(h.iter().copied(), cell),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn preserves_mean_and_contracts_every_norm(
        vals in prop::collection::vec(-1.0f64..1.0, 8..64),
        t in 0.0f64..3.0,
    ) {
        let r = 1.0;
        let n = vals.len();
        let cell = 2.0 * r / n as f64;
        let out = linearized_graph_evolution(&vals, r, t);
        let mean_in: f64 = vals.iter().sum::<f64>() / n as f64;
        let mean_out: f64 = out.iter().sum::<f64>() / n as f64;
        prop_assert!((mean_in - mean_out).abs() < 1e-9);
        let n_in = norms(&vals, cell);
        let n_out = norms(&out, cell);
        for k in 0..3 {
            prop_assert!(n_out[k] <= n_in[k] + 1e-9, "norm {k} grew");
        }
    }
}

/// Direct five-point Laplace solve on a deep strip: the flux of the harmonic
/// extension at the surface gives the decay rate of a single mode. This is
/// independent of the spectral formula it checks.
#[test]
fn decay_rate_matches_a_direct_laplace_solve() {
    let n = 64usize;
    let depth_cells = 256usize;
    let r = std::f64::consts::PI;
    let dx = 2.0 * r / n as f64;
    // solve lap(phi) = 0 on n x depth, phi(top) = cos(x), d phi/dz (bottom) = 0
    let mut phi = vec![0.0f64; n * (depth_cells + 1)];
    let idx = |i: usize, j: usize| i * (depth_cells + 1) + j;
    for i in 0..n {
        let x = -r + i as f64 * dx;
        phi[idx(i, depth_cells)] = x.cos();
    }
    for _ in 0..40_000 {
        for i in 0..n {
            let (w, e) = ((i + n - 1) % n, (i + 1) % n);
            for j in 0..depth_cells {
                let below = if j == 0 {
                    phi[idx(i, 1)]
                } else {
                    phi[idx(i, j - 1)]
                };
                let sum = phi[idx(w, j)] + phi[idx(e, j)] + below + phi[idx(i, j + 1)];
                phi[idx(i, j)] = 0.25 * sum;
            }
        }
    }
    // normal derivative at the surface via one-sided difference; the decay
    // rate is flux / value, probed away from the zeros of the data
    let i = n / 8;
    assert!(phi[idx(i, depth_cells)].abs() > 0.5);
    let flux = (phi[idx(i, depth_cells)] - phi[idx(i, depth_cells - 1)]) / dx;
    let rate = flux / phi[idx(i, depth_cells)];
    assert!((rate - 1.0).abs() < 0.05, "measured rate {rate}");

    // the spectral evolution uses exactly this rate per mode
    let h0: Vec<f64> = (0..n).map(|k| 0.3 * (-r + k as f64 * dx).cos()).collect();
    let t = 0.7;
    let evolved = linearized_graph_evolution(&h0, r, t);
    let expect = (-t).exp();
    for (a, b) in h0.iter().zip(&evolved) {
        assert!((b - expect * a).abs() < 1e-10);
    }
}
