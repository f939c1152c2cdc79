//! Periodized strip lattice.
//!
//! The computational box is `[-R, R)^d x [-L, H_top]` with uniform spacing
//! `dx` in every axis. Lateral axes are periodic (the interval `[-R, R)`
//! parametrizes a circle of circumference `2R`), the vertical axis carries
//! Dirichlet rows at `z = -L` and `z = H_top`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the exact-lattice-fit check.
const FIT_EPS: f64 = 1e-9;

/// Grid parameters as stored in files; see [`GridSpec`] for the validated form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub d: usize,
    pub r: f64,
    pub l: f64,
    pub h_top: f64,
    pub dx: f64,
}

/// Validated strip lattice: horizontal dimension `d` (1 or 2, so the ambient
/// dimension is `d + 1`), lateral half-width `r`, bottom depth `l`, top height
/// `h_top` and spacing `dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub d: usize,
    pub r: f64,
    pub l: f64,
    pub h_top: f64,
    pub dx: f64,
    nx: usize,
    nz: usize,
}

fn lattice_count(len: f64, dx: f64, what: &str) -> Result<usize> {
    let k = len / dx;
    let rounded = k.round();
    if (k - rounded).abs() > FIT_EPS * k.abs().max(1.0) {
        return Err(Error::InvalidInput(format!(
            "{what} = {len} is not an integer multiple of dx = {dx}"
        )));
    }
    Ok(rounded as usize)
}

impl GridSpec {
    pub fn new(d: usize, r: f64, l: f64, h_top: f64, dx: f64) -> Result<Self> {
        if d != 1 && d != 2 {
            return Err(Error::DimensionUnsupported { d });
        }
        if !(dx > 0.0 && r > 0.0 && l > 0.0 && h_top > 0.0) {
            return Err(Error::InvalidInput(format!(
                "grid lengths must be positive (R = {r}, L = {l}, H_top = {h_top}, dx = {dx})"
            )));
        }
        let nx = lattice_count(2.0 * r, dx, "2R")?;
        let nz = lattice_count(l + h_top, dx, "L + H_top")? + 1;
        if nx < 1 || nz < 3 {
            return Err(Error::InvalidInput(
                "grid needs at least one lateral column and one interior row".into(),
            ));
        }
        // parity coloring must be consistent across the periodic seam
        if nx > 1 && nx % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "lateral node count 2R/dx = {nx} must be even (or 1)"
            )));
        }
        Ok(GridSpec {
            d,
            r,
            l,
            h_top,
            dx,
            nx,
            nz,
        })
    }

    pub fn from_params(p: GridParams) -> Result<Self> {
        GridSpec::new(p.d, p.r, p.l, p.h_top, p.dx)
    }

    pub fn params(&self) -> GridParams {
        GridParams {
            d: self.d,
            r: self.r,
            l: self.l,
            h_top: self.h_top,
            dx: self.dx,
        }
    }

    /// Ambient dimension `N = d + 1`.
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    /// Nodes per lateral axis.
    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Nodes along the vertical axis, Dirichlet rows included.
    #[inline]
    pub fn nz(&self) -> usize {
        self.nz
    }

    /// Number of lateral columns (`nx^d`).
    #[inline]
    pub fn columns(&self) -> usize {
        match self.d {
            1 => self.nx,
            _ => self.nx * self.nx,
        }
    }

    /// Total node count.
    #[inline]
    pub fn nodes(&self) -> usize {
        self.columns() * self.nz
    }

    /// Measure of one cell, `dx^N`.
    #[inline]
    pub fn cell_volume(&self) -> f64 {
        self.dx.powi(self.ambient_dim() as i32)
    }

    /// Lateral coordinate of index `i`.
    #[inline]
    pub fn x_lat(&self, i: usize) -> f64 {
        -self.r + i as f64 * self.dx
    }

    /// Height of vertical index `j` (`j = 0` is the bottom row at `-L`).
    #[inline]
    pub fn z(&self, j: usize) -> f64 {
        -self.l + j as f64 * self.dx
    }

    /// Flat node index of (column, vertical index); columns are stored
    /// vertically contiguous.
    #[inline]
    pub fn node(&self, column: usize, j: usize) -> usize {
        column * self.nz + j
    }

    /// Lateral indices of a column.
    #[inline]
    pub fn column_indices(&self, column: usize) -> [usize; 2] {
        match self.d {
            1 => [column, 0],
            _ => [column % self.nx, column / self.nx],
        }
    }

    /// Column from lateral indices.
    #[inline]
    pub fn column_of(&self, ix: usize, iy: usize) -> usize {
        match self.d {
            1 => ix,
            _ => iy * self.nx + ix,
        }
    }

    /// Lateral coordinates of a column (second entry is 0 for `d = 1`).
    #[inline]
    pub fn lateral_coords(&self, column: usize) -> [f64; 2] {
        let [ix, iy] = self.column_indices(column);
        [
            self.x_lat(ix),
            if self.d == 2 { self.x_lat(iy) } else { 0.0 },
        ]
    }

    /// Signed minimal-image difference `a - b` on the periodic lateral circle.
    #[inline]
    pub fn periodic_delta(&self, a: f64, b: f64) -> f64 {
        let w = 2.0 * self.r;
        let mut de = (a - b) % w;
        if de < -self.r {
            de += w;
        } else if de >= self.r {
            de -= w;
        }
        de
    }

    /// Periodic lateral distance between two columns.
    pub fn column_distance(&self, c1: usize, c2: usize) -> f64 {
        let a = self.lateral_coords(c1);
        let b = self.lateral_coords(c2);
        let dx0 = self.periodic_delta(a[0], b[0]);
        if self.d == 1 {
            dx0.abs()
        } else {
            let dx1 = self.periodic_delta(a[1], b[1]);
            dx0.hypot(dx1)
        }
    }

    /// Vertical index whose height is nearest to `z`.
    pub fn j_of_z(&self, z: f64) -> usize {
        let j = ((z + self.l) / self.dx).round();
        (j.max(0.0) as usize).min(self.nz - 1)
    }

    /// The neighbors of a column along each lateral axis, with wraparound.
    #[inline]
    pub fn lateral_neighbors(&self, column: usize) -> [[usize; 2]; 2] {
        let [ix, iy] = self.column_indices(column);
        let nx = self.nx;
        let west = self.column_of((ix + nx - 1) % nx, iy);
        let east = self.column_of((ix + 1) % nx, iy);
        if self.d == 1 {
            [[west, east], [column, column]]
        } else {
            let south = self.column_of(ix, (iy + nx - 1) % nx);
            let north = self.column_of(ix, (iy + 1) % nx);
            [[west, east], [south, north]]
        }
    }
}
