//! Rasterized initial domains and the hypotheses they must satisfy.
//!
//! A node is fluid iff its center satisfies the scenario predicate. The
//! rasterizer certifies connectivity of the fluid set (flood fill with
//! lateral wraparound) and computes the strip constant `C`: the smallest
//! lattice-compatible value such that every node with `z >= C` is dry and
//! every node with `z <= -C` is fluid.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::scenario::Scenario;

/// Per-node indicator of the dry set `A` (complement of the initial fluid
/// domain), together with the strip constant.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorField {
    pub grid: GridSpec,
    /// `true` on nodes of `A` (dry), `false` on fluid nodes.
    pub cells: Vec<bool>,
    /// Strip constant of the rasterized set.
    pub c: f64,
    pub label: String,
}

impl IndicatorField {
    /// Build directly from a dry-set predicate; used by tests and synthetic
    /// problems. Computes `C` and certifies connectivity like the rasterizer.
    pub fn from_dry_predicate(
        grid: GridSpec,
        label: &str,
        dry: impl Fn(usize, f64) -> bool,
    ) -> Result<IndicatorField> {
        let mut cells = vec![false; grid.nodes()];
        for c in 0..grid.columns() {
            for j in 0..grid.nz() {
                cells[grid.node(c, j)] = dry(c, grid.z(j));
            }
        }
        finish_field(grid, cells, label)
    }

    #[inline]
    pub fn is_dry(&self, column: usize, j: usize) -> bool {
        self.cells[self.grid.node(column, j)]
    }

    /// Number of fluid nodes.
    pub fn fluid_count(&self) -> usize {
        self.cells.iter().filter(|&&a| !a).count()
    }

    /// Fluid volume inside the box.
    pub fn fluid_volume(&self) -> f64 {
        self.fluid_count() as f64 * self.grid.cell_volume()
    }

    /// Fluid nodes with a dry face-neighbor.
    pub fn interface_cell_count(&self) -> usize {
        let g = &self.grid;
        let mut count = 0;
        for c in 0..g.columns() {
            let lat = g.lateral_neighbors(c);
            for j in 0..g.nz() {
                if self.cells[g.node(c, j)] {
                    continue;
                }
                let mut boundary = false;
                if j > 0 && self.cells[g.node(c, j - 1)] {
                    boundary = true;
                }
                if j + 1 < g.nz() && self.cells[g.node(c, j + 1)] {
                    boundary = true;
                }
                for pair in lat.iter().take(g.d) {
                    for nb in pair.iter().copied() {
                        if self.cells[g.node(nb, j)] {
                            boundary = true;
                        }
                    }
                }
                if boundary {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Rasterize a scenario on a grid. Fails if the fluid set is disconnected or
/// no finite strip constant exists inside the box.
pub fn rasterize_scenario(s: &Scenario, g: &GridSpec) -> Result<IndicatorField> {
    if s.d != g.d {
        return Err(Error::InvalidInput(format!(
            "scenario dimension d = {} does not match grid d = {}",
            s.d, g.d
        )));
    }
    validate_fit(s, g)?;
    let mut cells = vec![false; g.nodes()];
    for c in 0..g.columns() {
        let x = g.lateral_coords(c);
        for j in 0..g.nz() {
            cells[g.node(c, j)] = !s.is_fluid(g, c, x, g.z(j));
        }
    }
    finish_field(*g, cells, &s.name)
}

fn validate_fit(s: &Scenario, g: &GridSpec) -> Result<()> {
    let floor = -g.l + 2.0 * g.dx;
    for (k, m) in s.modifiers.iter().enumerate() {
        let (lo, hi, lat_reach) = match &m.shape {
            crate::scenario::Shape::Ball { center, radius } => {
                let z = center[center.len() - 1];
                let reach = (0..g.d)
                    .map(|a| center[a].abs() + radius)
                    .fold(0.0, f64::max);
                (z - radius, z + radius, reach)
            }
            crate::scenario::Shape::Box { min, max } => {
                let reach = (0..g.d)
                    .map(|a| min[a].abs().max(max[a].abs()))
                    .fold(0.0, f64::max);
                (min[min.len() - 1], max[max.len() - 1], reach)
            }
            crate::scenario::Shape::Wedge { apex, alpha: _ } => {
                // opens downward through the whole box; only the apex is bounded
                let z = apex[apex.len() - 1];
                let reach = (0..g.d).map(|a| apex[a].abs()).fold(0.0, f64::max);
                (floor, z, reach)
            }
        };
        if lat_reach >= g.r {
            return Err(Error::ScenarioOutOfBounds(format!(
                "modifier {k} reaches laterally to {lat_reach} >= R = {}",
                g.r
            )));
        }
        if lo <= floor {
            return Err(Error::ScenarioOutOfBounds(format!(
                "modifier {k} reaches down to {lo} <= -L + 2dx = {floor}"
            )));
        }
        let _ = hi;
    }
    Ok(())
}

fn finish_field(grid: GridSpec, cells: Vec<bool>, label: &str) -> Result<IndicatorField> {
    let c = strip_constant(&grid, &cells)?;
    let field = IndicatorField {
        grid,
        cells,
        c,
        label: label.to_string(),
    };
    let components = connectivity_check(&field);
    if components != 1 {
        return Err(Error::NotConnected { components });
    }
    Ok(field)
}

/// Smallest lattice value `C` with all nodes dry at `z >= C` and fluid at
/// `z <= -C`.
fn strip_constant(g: &GridSpec, cells: &[bool]) -> Result<f64> {
    let mut hmax_fluid = f64::NEG_INFINITY;
    let mut hmin_dry = f64::INFINITY;
    for c in 0..g.columns() {
        for j in 0..g.nz() {
            let z = g.z(j);
            if cells[g.node(c, j)] {
                hmin_dry = hmin_dry.min(z);
            } else {
                hmax_fluid = hmax_fluid.max(z);
            }
        }
    }
    if hmin_dry == f64::INFINITY {
        return Err(Error::StripViolation(
            "no dry node: fluid exits through the top".into(),
        ));
    }
    if hmax_fluid == f64::NEG_INFINITY {
        return Err(Error::StripViolation(
            "no fluid node: dry set reaches the bottom".into(),
        ));
    }
    // bottom row fluid, top row dry, else the interface exits the box
    for c in 0..g.columns() {
        if cells[g.node(c, 0)] {
            return Err(Error::StripViolation(format!(
                "dry node on the bottom row (column {c})"
            )));
        }
        if !cells[g.node(c, g.nz() - 1)] {
            return Err(Error::StripViolation(format!(
                "fluid node on the top row (column {c})"
            )));
        }
    }
    Ok(hmax_fluid.max(-hmin_dry) + g.dx)
}

/// Number of fluid components under face adjacency with lateral wraparound.
pub fn connectivity_check(a: &IndicatorField) -> usize {
    let g = &a.grid;
    let mut seen = vec![false; g.nodes()];
    let mut components = 0;
    let mut stack = Vec::new();
    for start in 0..g.nodes() {
        if a.cells[start] || seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(n) = stack.pop() {
            let c = n / g.nz();
            let j = n % g.nz();
            let lat = g.lateral_neighbors(c);
            let mut visit = |m: usize| {
                if !a.cells[m] && !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            };
            if j > 0 {
                visit(g.node(c, j - 1));
            }
            if j + 1 < g.nz() {
                visit(g.node(c, j + 1));
            }
            for pair in lat.iter().take(g.d) {
                for nb in pair.iter().copied() {
                    if nb != c {
                        visit(g.node(nb, j));
                    }
                }
            }
        }
    }
    components
}

/// Force nodes within `layer_width` of the lateral box edge (and below the
/// rasterized strip level `C - dx`, below which fluid is always admissible)
/// to fluid. Identity on natively periodic scenarios already fluid there;
/// used when importing non-periodic data.
pub fn add_lateral_layers(a: &IndicatorField, layer_width: f64) -> Result<IndicatorField> {
    let g = &a.grid;
    let level = a.c - g.dx;
    let mut cells = a.cells.clone();
    for c in 0..g.columns() {
        let x = g.lateral_coords(c);
        let edge_dist = (0..g.d).map(|k| x[k].abs()).fold(0.0, f64::max);
        if edge_dist > g.r - layer_width {
            for j in 0..g.nz() {
                if g.z(j) < level {
                    cells[g.node(c, j)] = false;
                }
            }
        }
    }
    finish_field(*g, cells, &a.label)
}
