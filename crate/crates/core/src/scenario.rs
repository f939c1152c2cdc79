//! Scenario descriptions: a base interface graph plus constructive-geometry
//! modifiers, serializable as JSON.
//!
//! A scenario describes the initial fluid set. The base graph `f0` defines
//! `{ z < f0(x') }`; modifiers then add or remove shapes in order. Ties are
//! always resolved toward "non-fluid": `add` uses the open shape, `remove`
//! the closed one, and the subgraph predicate is strict.

use serde::{Deserialize, Serialize};

use crate::grid::GridSpec;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum BaseGraph {
    Constant {
        value: f64,
    },
    /// `mean + amplitude * cos(periods * pi * (x - phase) / R)` along the
    /// first lateral axis. Integer `periods` keeps the seam continuous.
    Cosine {
        amplitude: f64,
        mean: f64,
        periods: u32,
        phase: f64,
    },
    /// Downward cone `-|x'| / tan(alpha / 2)` of full aperture `alpha`
    /// (radians), apex at lateral origin at height `apex_height`.
    Wedge {
        alpha: f64,
        apex_height: f64,
    },
    /// One height sample per lateral column.
    Samples {
        values: Vec<f64>,
    },
}

impl BaseGraph {
    /// Evaluate the base graph at lateral position `x` (column `column`).
    pub fn eval(&self, grid: &GridSpec, column: usize, x: [f64; 2]) -> f64 {
        match self {
            BaseGraph::Constant { value } => *value,
            BaseGraph::Cosine {
                amplitude,
                mean,
                periods,
                phase,
            } => {
                let k = *periods as f64 * std::f64::consts::PI / grid.r;
                mean + amplitude * (k * (x[0] - phase)).cos()
            }
            BaseGraph::Wedge { alpha, apex_height } => {
                let rho = lateral_norm(grid, x, [0.0, 0.0]);
                apex_height - rho / (alpha / 2.0).tan()
            }
            BaseGraph::Samples { values } => values[column],
        }
    }
}

fn lateral_norm(grid: &GridSpec, x: [f64; 2], center: [f64; 2]) -> f64 {
    let d0 = grid.periodic_delta(x[0], center[0]);
    if grid.d == 1 {
        d0.abs()
    } else {
        d0.hypot(grid.periodic_delta(x[1], center[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModifierOp {
    Add,
    Remove,
}

/// Shapes are given in full coordinates `[lateral..., vertical]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "shape", content = "params", rename_all = "snake_case")]
pub enum Shape {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Box {
        min: Vec<f64>,
        max: Vec<f64>,
    },
    /// Downward cone with the given apex and full aperture (radians).
    Wedge {
        apex: Vec<f64>,
        alpha: f64,
    },
}

impl Shape {
    /// Whether the point is inside; `closed` controls boundary membership.
    fn contains(&self, grid: &GridSpec, x: [f64; 2], z: f64, closed: bool) -> bool {
        let lt = |a: f64, b: f64| if closed { a <= b } else { a < b };
        match self {
            Shape::Ball { center, radius } => {
                let rho = lateral_norm(grid, x, lateral_of(center, grid.d));
                let dz = z - center[center.len() - 1];
                lt(rho.hypot(dz), *radius)
            }
            Shape::Box { min, max } => {
                let mut inside = lt(min[min.len() - 1], z) && lt(z, max[max.len() - 1]);
                for k in 0..grid.d {
                    // periodic minimal image relative to the box midpoint
                    let mid = 0.5 * (min[k] + max[k]);
                    let half = 0.5 * (max[k] - min[k]);
                    let de = grid.periodic_delta(x[k], mid).abs();
                    inside &= lt(de, half);
                }
                inside
            }
            Shape::Wedge { apex, alpha } => {
                let rho = lateral_norm(grid, x, lateral_of(apex, grid.d));
                let dz = z - apex[apex.len() - 1];
                lt(dz, -rho / (alpha / 2.0).tan())
            }
        }
    }
}

fn lateral_of(coords: &[f64], d: usize) -> [f64; 2] {
    [coords[0], if d == 2 { coords[1] } else { 0.0 }]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Modifier {
    pub op: ModifierOp,
    #[serde(flatten)]
    pub shape: Shape,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub d: usize,
    pub base_graph: BaseGraph,
    #[serde(default)]
    pub modifiers: Vec<Modifier>,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    /// Fluid predicate at a node center.
    pub fn is_fluid(&self, grid: &GridSpec, column: usize, x: [f64; 2], z: f64) -> bool {
        let mut fluid = z < self.base_graph.eval(grid, column, x);
        for m in &self.modifiers {
            let closed = m.op == ModifierOp::Remove;
            if m.shape.contains(grid, x, z, closed) {
                fluid = m.op == ModifierOp::Add;
            }
        }
        fluid
    }

    /// The same scenario with every height reference moved up by `s`.
    pub fn translated_up(&self, s: f64) -> Scenario {
        let base_graph = match &self.base_graph {
            BaseGraph::Constant { value } => BaseGraph::Constant { value: value + s },
            BaseGraph::Cosine {
                amplitude,
                mean,
                periods,
                phase,
            } => BaseGraph::Cosine {
                amplitude: *amplitude,
                mean: mean + s,
                periods: *periods,
                phase: *phase,
            },
            BaseGraph::Wedge { alpha, apex_height } => BaseGraph::Wedge {
                alpha: *alpha,
                apex_height: apex_height + s,
            },
            BaseGraph::Samples { values } => BaseGraph::Samples {
                values: values.iter().map(|v| v + s).collect(),
            },
        };
        let modifiers = self
            .modifiers
            .iter()
            .map(|m| {
                let shape = match &m.shape {
                    Shape::Ball { center, radius } => {
                        let mut c = center.clone();
                        *c.last_mut().unwrap() += s;
                        Shape::Ball {
                            center: c,
                            radius: *radius,
                        }
                    }
                    Shape::Box { min, max } => {
                        let mut mn = min.clone();
                        let mut mx = max.clone();
                        *mn.last_mut().unwrap() += s;
                        *mx.last_mut().unwrap() += s;
                        Shape::Box { min: mn, max: mx }
                    }
                    Shape::Wedge { apex, alpha } => {
                        let mut a = apex.clone();
                        *a.last_mut().unwrap() += s;
                        Shape::Wedge {
                            apex: a,
                            alpha: *alpha,
                        }
                    }
                };
                Modifier { op: m.op, shape }
            })
            .collect();
        Scenario {
            name: format!("{}+shift{s}", self.name),
            d: self.d,
            base_graph,
            modifiers,
            seed: self.seed,
        }
    }
}

/// Flat interface at height zero.
pub fn flat(d: usize) -> Scenario {
    Scenario {
        name: "flat".into(),
        d,
        base_graph: BaseGraph::Constant { value: 0.0 },
        modifiers: vec![],
        seed: 0,
    }
}

/// Cosine interface `amplitude * cos(periods * pi * (x - phase) / R)`.
pub fn cosine(amplitude: f64, periods: u32, phase: f64) -> Scenario {
    Scenario {
        name: format!("cosine-a{amplitude}"),
        d: 1,
        base_graph: BaseGraph::Cosine {
            amplitude,
            mean: 0.0,
            periods,
            phase,
        },
        modifiers: vec![],
        seed: 0,
    }
}

/// Downward wedge of full aperture `alpha_deg` degrees, apex at the origin.
pub fn wedge(d: usize, alpha_deg: f64) -> Scenario {
    Scenario {
        name: format!("wedge-{alpha_deg}"),
        d,
        base_graph: BaseGraph::Wedge {
            alpha: alpha_deg.to_radians(),
            apex_height: 0.0,
        },
        modifiers: vec![],
        seed: 0,
    }
}

/// Flat interface with an air bubble: a removed ball of radius 0.3 centered
/// at depth 0.7, so the dry set reaches down to `z = -1`.
pub fn bubble(d: usize) -> Scenario {
    let mut center = vec![0.0; d + 1];
    center[d] = -0.7;
    Scenario {
        name: "bubble".into(),
        d,
        base_graph: BaseGraph::Constant { value: 0.0 },
        modifiers: vec![Modifier {
            op: ModifierOp::Remove,
            shape: Shape::Ball {
                center,
                radius: 0.3,
            },
        }],
        seed: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec {
        GridSpec::new(1, 1.0, 2.0, 1.0, 1.0 / 32.0).unwrap()
    }

    #[test]
    fn flat_predicate_resolves_tie_to_non_fluid() {
        let g = grid();
        let s = flat(1);
        assert!(s.is_fluid(&g, 0, [0.0, 0.0], -0.03125));
        assert!(!s.is_fluid(&g, 0, [0.0, 0.0], 0.0));
    }

    #[test]
    fn removed_ball_is_closed() {
        let g = grid();
        let s = bubble(1);
        // on the lateral tangent point the distance is exactly representable
        assert!(!s.is_fluid(&g, 0, [0.3, 0.0], -0.7));
        // interior of the ball: removed
        assert!(!s.is_fluid(&g, 0, [0.0, 0.0], -0.99));
        // just outside: fluid
        assert!(s.is_fluid(&g, 0, [0.0, 0.0], -1.001));
    }

    #[test]
    fn wedge_apex_is_dry() {
        let g = grid();
        let s = wedge(1, 60.0);
        assert!(!s.is_fluid(&g, 0, [0.0, 0.0], 0.0));
        // below the cone wall at x = 0.25: wall height -0.25*sqrt(3)
        assert!(s.is_fluid(&g, 0, [0.25, 0.0], -0.5));
        assert!(!s.is_fluid(&g, 0, [0.25, 0.0], -0.25));
    }

    #[test]
    fn scenario_json_round_trips() {
        let s = bubble(1);
        let text = serde_json::to_string_pretty(&s).unwrap();
        let back: Scenario = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn vertical_translation_moves_every_height() {
        let g = grid();
        let s = bubble(1).translated_up(0.25);
        assert!(s.is_fluid(&g, 0, [0.0, 0.0], 0.2));
        assert!(!s.is_fluid(&g, 0, [0.0, 0.0], 0.25));
        // ball interior moved from depth 0.99 to 0.74
        assert!(!s.is_fluid(&g, 0, [0.0, 0.0], -0.74));
        assert!(s.is_fluid(&g, 0, [0.0, 0.0], -0.76));
    }
}
