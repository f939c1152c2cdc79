//! Run manifest and CSV export.
//!
//! The manifest records the exact configuration (with a content hash of the
//! scenario) plus per-time diagnostics and the files written, so a run can
//! be audited and reproduced.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::GridParams;
use crate::scenario::Scenario;
use crate::semiflow::{GraphFunction, SemiflowRun};
use crate::solver::KktResidual;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimeEntry {
    pub t: f64,
    pub residual: KktResidual,
    pub iterations: usize,
    pub field_file: String,
    pub mask_file: String,
    /// Present when the mask is a subgraph at this time.
    pub graph_file: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub scenario_name: String,
    pub scenario_hash: String,
    pub grid: GridParams,
    pub omega: f64,
    pub tol: f64,
    pub times: Vec<f64>,
    pub entries: Vec<TimeEntry>,
}

/// FNV-1a over the canonical JSON serialization.
pub fn scenario_hash(s: &Scenario) -> String {
    let text = serde_json::to_string(s).expect("scenario serializes");
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

impl RunManifest {
    pub fn new(scenario: &Scenario, run: &SemiflowRun, omega: f64, tol: f64) -> RunManifest {
        RunManifest {
            scenario_name: scenario.name.clone(),
            scenario_hash: scenario_hash(scenario),
            grid: run.grid.params(),
            omega,
            tol,
            times: run.times.clone(),
            entries: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<RunManifest> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Per-time graph CSV: lateral coordinates, rising-frame height `f`, gauge
/// height `h`.
pub fn write_graph_csv(graph: &GraphFunction, w: &mut impl Write) -> Result<()> {
    let g = &graph.grid;
    if g.d == 1 {
        writeln!(w, "x,f,h")?;
        for c in 0..g.columns() {
            let x = g.lateral_coords(c)[0];
            writeln!(w, "{},{},{}", x, graph.f[c], graph.h[c])?;
        }
    } else {
        writeln!(w, "x,y,f,h")?;
        for c in 0..g.columns() {
            let [x, y] = g.lateral_coords(c);
            writeln!(w, "{},{},{},{}", x, y, graph.f[c], graph.h[c])?;
        }
    }
    Ok(())
}
