//! Desk-scale semi-flow engine for gravity-driven interface evolution,
//! through its formulation as a one-parameter family of obstacle problems
//! on a laterally periodized strip.
//!
//! The pipeline: describe an initial domain as a [`Scenario`], rasterize it
//! to an [`IndicatorField`], sweep a list of times with [`evolve`] (each
//! instant is an independent elliptic complementarity solve), then feed the
//! resulting [`SemiflowRun`] to the probes in [`analysis`]. The [`check`]
//! module bundles the quantitative verification suites behind names.

pub mod analysis;
pub mod check;
pub mod error;
pub mod field;
pub mod geometry;
pub mod grid;
pub mod manifest;
pub mod reference;
pub mod scenario;
pub mod semiflow;
pub mod solver;

pub use analysis::{
    lp_graph_distance, lyapunov_report, modulus_check, one_sided_difference, symmetric_difference,
    taylor_probe, time_regularity_measure, waiting_time_probe, Lp, ModulusSpec, ProbeReport,
};
pub use error::{Error, Result};
pub use field::{positivity_set, DomainMask, ScalarField};
pub use geometry::{add_lateral_layers, connectivity_check, rasterize_scenario, IndicatorField};
pub use grid::{GridParams, GridSpec};
pub use scenario::{BaseGraph, Modifier, ModifierOp, Scenario, Shape};
pub use semiflow::{
    compose_check, evolve, evolve_chunked, extract_graph, GraphFunction, SemiflowRun,
};
pub use solver::{
    assemble, assemble_from_mask, dirichlet_mismatch, oracle_active_set, psor_solve, residual,
    KktResidual, ObstacleProblem, Solve, SolverConfig,
};
