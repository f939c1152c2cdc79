use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::Args;
use hs_core::manifest::{write_graph_csv, RunManifest, TimeEntry};
use hs_core::{
    evolve_chunked, rasterize_scenario, Error, GridSpec, Result, ScalarField, Scenario,
    SolverConfig,
};

#[derive(Args)]
#[command(allow_negative_numbers = true)]
pub struct RunArgs {
    /// Scenario description (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Times as `start:end:step` or a comma-separated list.
    #[arg(long)]
    times: String,
    /// Grid spacing.
    #[arg(long)]
    dx: f64,
    /// Lateral half-width.
    #[arg(long = "R")]
    r: f64,
    /// Bottom depth.
    #[arg(long = "L")]
    l: f64,
    /// Top of the box.
    #[arg(long = "Htop")]
    htop: f64,
    /// Relaxation factor; defaults to a grid-tuned value.
    #[arg(long)]
    omega: Option<f64>,
    /// Residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Times per warm-start chain; chains run concurrently.
    #[arg(long)]
    chunks: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

pub fn parse_times(spec: &str) -> Result<Vec<f64>> {
    let bad = |m: &str| Error::InvalidInput(format!("bad times spec {spec:?}: {m}"));
    let times: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:end:step"));
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.parse::<f64>().map_err(|e| bad(&e.to_string())))
            .collect::<Result<_>>()?;
        let (start, end, step) = (nums[0], nums[1], nums[2]);
        if step <= 0.0 || end < start {
            return Err(bad("need step > 0 and end >= start"));
        }
        let n = ((end - start) / step).round() as usize;
        (0..=n).map(|k| start + k as f64 * step).collect()
    } else {
        spec.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| bad(&e.to_string())))
            .collect::<Result<_>>()?
    };
    if times.is_empty() {
        return Err(bad("no times"));
    }
    Ok(times)
}

pub fn run(args: RunArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.scenario)?;
    let scenario: Scenario = serde_json::from_str(&text)?;
    let grid = GridSpec::new(scenario.d, args.r, args.l, args.htop, args.dx)?;
    let times = parse_times(&args.times)?;

    let mut cfg = SolverConfig::tuned_for(&grid);
    if let Some(omega) = args.omega {
        cfg.omega = omega;
    }
    if let Some(tol) = args.tol {
        cfg.tol = tol;
    }
    if let Some(n) = args.max_iters {
        cfg.max_iters = n;
    }

    let a = rasterize_scenario(&scenario, &grid)?;
    let run = evolve_chunked(&a, &times, &cfg, args.chunks.unwrap_or(times.len()))?;

    fs::create_dir_all(&args.out)?;
    let mut manifest = RunManifest::new(&scenario, &run, cfg.omega, cfg.tol);

    // indicator dump alongside the per-time fields
    let chi = ScalarField {
        grid,
        values: a.cells.iter().map(|&d| if d { 1.0 } else { 0.0 }).collect(),
    };
    write_field(&args.out, "chi_a.f64", &chi)?;

    for (i, diag) in run.diagnostics.iter().enumerate() {
        let field_file = format!("u_t{i}.f64");
        write_field(&args.out, &field_file, &run.fields[i])?;

        let mask_file = format!("mask_t{i}.pgm");
        let mut w = BufWriter::new(fs::File::create(args.out.join(&mask_file))?);
        run.masks[i].write_pgm(&mut w)?;

        let graph_file = match run.graph(i) {
            Ok(graph) => {
                let name = format!("graph_t{i}.csv");
                let mut w = BufWriter::new(fs::File::create(args.out.join(&name))?);
                write_graph_csv(&graph, &mut w)?;
                Some(name)
            }
            Err(Error::NotAGraph { column }) => {
                eprintln!(
                    "note: t = {}: not a subgraph (column {column}), no CSV",
                    diag.t
                );
                None
            }
            Err(e) => return Err(e),
        };

        manifest.entries.push(TimeEntry {
            t: diag.t,
            residual: diag.residual,
            iterations: diag.iterations,
            field_file,
            mask_file,
            graph_file,
        });
    }
    fs::write(args.out.join("manifest.json"), manifest.to_json()?)?;
    Ok(0)
}

fn write_field(dir: &Path, name: &str, field: &ScalarField) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(dir.join(name))?);
    field.write_dump(&mut w)
}
