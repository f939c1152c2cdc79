use std::io::{self, Write};

use clap::Args;
use hs_core::reference::{cone_exponent_2d, cone_harmonic_2d, quadratic_harmonic, v0, ConeSpec};
use hs_core::{Error, Result};

#[derive(Args)]
#[command(allow_negative_numbers = true)]
pub struct RefArgs {
    /// One of: v0, cone-exponent, cone-harmonic, quadratic-harmonic.
    #[arg(long)]
    curve: String,
    /// Time parameter (v0).
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Range start.
    #[arg(long, default_value_t = -2.0)]
    min: f64,
    /// Range end.
    #[arg(long, default_value_t = 2.0)]
    max: f64,
    /// Range step.
    #[arg(long, default_value_t = 0.25)]
    step: f64,
    /// Full aperture in degrees (cone-harmonic).
    #[arg(long, default_value_t = 90.0)]
    alpha_deg: f64,
    /// Evaluation radius (cone-harmonic).
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Horizontal dimension (quadratic-harmonic).
    #[arg(long, default_value_t = 1)]
    d: usize,
}

fn steps(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if step <= 0.0 || max < min {
        return Err(Error::InvalidInput("need step > 0 and max >= min".into()));
    }
    let n = ((max - min) / step).round() as usize;
    Ok((0..=n).map(|k| min + k as f64 * step).collect())
}

pub fn run(args: RefArgs) -> Result<u8> {
    let stdout = io::stdout().lock();
    let mut out = io::BufWriter::new(stdout);
    match emit(&args, &mut out).and_then(|code| out.flush().map(|()| code).map_err(Error::Io)) {
        // a closed pipe downstream is not an error for a curve dump
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Ok(0),
        other => other,
    }
}

fn emit(args: &RefArgs, out: &mut impl Write) -> Result<u8> {
    match args.curve.as_str() {
        "v0" => {
            writeln!(out, "x,v0")?;
            for x in steps(args.min, args.max, args.step)? {
                writeln!(out, "{},{}", x, v0(args.t, x))?;
            }
        }
        "cone-exponent" => {
            writeln!(out, "alpha,lambda")?;
            for alpha in steps(args.min.max(1e-6), args.max, args.step)? {
                if alpha >= 2.0 * std::f64::consts::PI {
                    break;
                }
                writeln!(out, "{},{}", alpha, cone_exponent_2d(alpha)?.lambda)?;
            }
        }
        "cone-harmonic" => {
            let alpha = args.alpha_deg.to_radians();
            let cone = ConeSpec::new([0.0, 0.0], alpha, 1)?;
            writeln!(out, "theta,x,z,u")?;
            for theta in steps(0.0, alpha, args.step)? {
                // angle measured from one wall; polar angle from the axis
                let polar = theta - alpha / 2.0;
                let x = args.radius * polar.sin();
                let z = -args.radius * polar.cos();
                writeln!(out, "{},{},{},{}", theta, x, z, cone_harmonic_2d(&cone, [x, z])?)?;
            }
        }
        "quadratic-harmonic" => {
            writeln!(out, "x,z,q")?;
            for x in steps(args.min, args.max, args.step)? {
                for z in steps(args.min, args.max, args.step)? {
                    writeln!(out, "{},{},{}", x, z, quadratic_harmonic(&[x], z, args.d))?;
                }
            }
        }
        other => {
            eprintln!("error: unknown curve {other:?}");
            return Ok(1);
        }
    }
    Ok(0)
}
