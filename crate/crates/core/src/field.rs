//! Nodal fields, positivity masks and their on-disk formats.
//!
//! Dumps carry one ASCII header line `HSFIELD v1 d R L Htop dx` followed by
//! row-major (vertical level by vertical level, bottom first) 8-byte
//! little-endian floats. Indicator and mask dumps use the same format with
//! values 0 and 1. Mask snapshots can also be written as binary PGM (P5,
//! 0/255, top row first) with one image column per lateral column.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::geometry::IndicatorField;
use crate::grid::GridSpec;

/// Nonnegative nodal values on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        ScalarField {
            grid,
            values: vec![0.0; grid.nodes()],
        }
    }

    /// Sample a column-independent vertical profile.
    pub fn from_profile(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let mut values = vec![0.0; grid.nodes()];
        for c in 0..grid.columns() {
            for j in 0..grid.nz() {
                values[grid.node(c, j)] = f(grid.z(j));
            }
        }
        ScalarField { grid, values }
    }

    #[inline]
    pub fn get(&self, column: usize, j: usize) -> f64 {
        self.values[self.grid.node(column, j)]
    }

    pub fn max_abs_diff(&self, other: &ScalarField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn write_dump(&self, w: &mut impl Write) -> Result<()> {
        write_header(&self.grid, w)?;
        for j in 0..self.grid.nz() {
            for c in 0..self.grid.columns() {
                w.write_all(&self.get(c, j).to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_dump(r: &mut impl BufRead) -> Result<ScalarField> {
        let grid = read_header(r)?;
        let mut values = vec![0.0; grid.nodes()];
        let mut buf = [0u8; 8];
        for j in 0..grid.nz() {
            for c in 0..grid.columns() {
                r.read_exact(&mut buf)?;
                values[grid.node(c, j)] = f64::from_le_bytes(buf);
            }
        }
        Ok(ScalarField { grid, values })
    }
}

fn write_header(g: &GridSpec, w: &mut impl Write) -> Result<()> {
    writeln!(w, "HSFIELD v1 {} {} {} {} {}", g.d, g.r, g.l, g.h_top, g.dx)?;
    Ok(())
}

fn read_header(r: &mut impl BufRead) -> Result<GridSpec> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 7 || parts[0] != "HSFIELD" || parts[1] != "v1" {
        return Err(Error::InvalidInput(format!("bad field header: {line:?}")));
    }
    let num = |i: usize| -> Result<f64> {
        parts[i]
            .parse::<f64>()
            .map_err(|e| Error::InvalidInput(format!("bad header number {:?}: {e}", parts[i])))
    };
    let d = num(2)? as usize;
    GridSpec::new(d, num(3)?, num(4)?, num(5)?, num(6)?)
}

/// Positivity set of a field: per-node boolean, true where the fluid has
/// arrived. Derived from solver output, never hand-edited.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainMask {
    pub grid_params: crate::grid::GridParams,
    pub nz: usize,
    pub columns: usize,
    pub cells: Vec<bool>,
}

impl DomainMask {
    pub fn new(grid: &GridSpec, cells: Vec<bool>) -> Self {
        DomainMask {
            grid_params: grid.params(),
            nz: grid.nz(),
            columns: grid.columns(),
            cells,
        }
    }

    /// Wet set of the initial indicator (complement of the dry set).
    pub fn initial_fluid(a: &IndicatorField) -> Self {
        DomainMask::new(&a.grid, a.cells.iter().map(|&d| !d).collect())
    }

    #[inline]
    pub fn is_wet(&self, column: usize, j: usize) -> bool {
        self.cells[column * self.nz + j]
    }

    pub fn wet_count(&self) -> usize {
        self.cells.iter().filter(|&&w| w).count()
    }

    /// Nodewise inclusion.
    pub fn is_subset_of(&self, other: &DomainMask) -> Result<bool> {
        if self.grid_params != other.grid_params {
            return Err(Error::GridMismatch);
        }
        Ok(self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b))
    }

    /// Write as binary PGM, 255 = wet, 0 = dry, top row first.
    pub fn write_pgm(&self, w: &mut impl Write) -> Result<()> {
        write!(w, "P5\n{} {}\n255\n", self.columns, self.nz)?;
        let mut row = vec![0u8; self.columns];
        for j in (0..self.nz).rev() {
            for (c, px) in row.iter_mut().enumerate() {
                *px = if self.is_wet(c, j) { 255 } else { 0 };
            }
            w.write_all(&row)?;
        }
        Ok(())
    }

    /// Read a PGM written by [`DomainMask::write_pgm`]. The grid geometry is
    /// not stored in the image; the caller supplies it.
    pub fn read_pgm(grid: &GridSpec, r: &mut impl BufRead) -> Result<DomainMask> {
        let mut header = Vec::new();
        // three whitespace-separated tokens after the magic, then one byte
        let mut fields = Vec::new();
        let mut tok = Vec::new();
        while fields.len() < 4 {
            let mut b = [0u8; 1];
            r.read_exact(&mut b)?;
            header.push(b[0]);
            if b[0].is_ascii_whitespace() {
                if !tok.is_empty() {
                    fields.push(String::from_utf8_lossy(&tok).to_string());
                    tok.clear();
                }
            } else {
                tok.push(b[0]);
            }
        }
        if fields[0] != "P5" || fields[3] != "255" {
            return Err(Error::InvalidInput("not a P5/255 PGM".into()));
        }
        let w: usize = fields[1]
            .parse()
            .map_err(|_| Error::InvalidInput("bad width".into()))?;
        let h: usize = fields[2]
            .parse()
            .map_err(|_| Error::InvalidInput("bad height".into()))?;
        if w != grid.columns() || h != grid.nz() {
            return Err(Error::GridMismatch);
        }
        let mut cells = vec![false; w * h];
        let mut row = vec![0u8; w];
        for j in (0..h).rev() {
            r.read_exact(&mut row)?;
            for (c, &px) in row.iter().enumerate() {
                cells[c * h + j] = px != 0;
            }
        }
        Ok(DomainMask::new(grid, cells))
    }
}

/// Positivity set `{u > 0}`, bit-exact against the solver's literal zeros.
pub fn positivity_set(u: &ScalarField) -> DomainMask {
    DomainMask::new(&u.grid, u.values.iter().map(|&v| v > 0.0).collect())
}
