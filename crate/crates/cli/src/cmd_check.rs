use clap::Args;
use hs_core::check::{run_suite, CheckConfig, SUITE_NAMES};
use hs_core::Result;

#[derive(Args)]
pub struct CheckArgs {
    /// One of: flat, sandwich, contraction, semiflow, graph, waiting,
    /// linear, oracle, all.
    #[arg(long)]
    suite: String,
    /// Override the default grid spacing of each criterion.
    #[arg(long)]
    dx: Option<f64>,
    /// Wall-clock budget in seconds; criteria not started in time are
    /// skipped.
    #[arg(long)]
    budget: Option<f64>,
}

pub fn run(args: CheckArgs) -> Result<u8> {
    if !SUITE_NAMES.contains(&args.suite.as_str()) {
        eprintln!(
            "error: unknown suite {:?} (expected one of {})",
            args.suite,
            SUITE_NAMES.join(", ")
        );
        return Ok(1);
    }
    let cfg = CheckConfig {
        dx: args.dx,
        budget: args.budget,
    };
    let results = run_suite(&args.suite, &cfg)?;
    let mut all_pass = true;
    for r in &results {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        println!("[{verdict}] {} ({:.2}s)", r.name, r.seconds);
        for rep in &r.reports {
            println!("    {}", rep.to_json_line());
        }
        all_pass &= r.passed();
    }
    if let Some(budget) = args.budget {
        let expected = match args.suite.as_str() {
            "all" => 11,
            "flat" | "contraction" => {
                if args.suite == "flat" {
                    3
                } else {
                    2
                }
            }
            _ => 1,
        };
        if results.len() < expected {
            eprintln!(
                "note: budget of {budget}s exhausted after {} of {expected} criteria",
                results.len()
            );
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}
