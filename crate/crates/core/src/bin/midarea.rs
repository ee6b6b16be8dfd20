use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use midarea::cli::{self, Command, Overrides, Response, Status, VerifyOptions};
use midarea::Geometry;

#[derive(Parser)]
#[command(name = "midarea", version, about = "Oriented triangle areas from corners or side midpoints")]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Geometry; must agree with the document when one is read.
    #[arg(long, global = true, value_enum)]
    geometry: Option<GeometryArg>,

    /// Read the request from this file instead of stdin.
    #[arg(long, global = true)]
    file: Option<PathBuf>,

    /// Number of random triangles for `verify`.
    #[arg(long, global = true, default_value_t = 1000)]
    count: usize,

    /// Generator seed for `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Manifold membership tolerance; for `verify`, the quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Threshold below which classifier quantities count as zero.
    #[arg(long = "zero-tol", global = true)]
    zero_tol: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Oriented area from corners or midpoints.
    Area,
    /// Side midpoints of a triangle.
    Midpoints,
    /// Corners from side midpoints.
    Reconstruct,
    /// Classify a midpoint triple.
    Classify,
    /// Check the closed forms against the oracles on random triangles.
    Verify,
}

#[derive(ValueEnum, Clone, Copy)]
enum GeometryArg {
    Sphere,
    Hyperbolic,
    Planar,
}

impl From<GeometryArg> for Geometry {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::Sphere => Geometry::Sphere,
            GeometryArg::Hyperbolic => Geometry::Hyperbolic,
            GeometryArg::Planar => Geometry::Planar,
        }
    }
}

fn read_input(file: Option<&PathBuf>) -> std::io::Result<String> {
    match file {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(resp: &Response, code: i32) -> ExitCode {
    println!("{}", cli::to_json(resp));
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let geometry = args.geometry.map(Geometry::from);

    let command = match args.command {
        Cmd::Area => Command::Area,
        Cmd::Midpoints => Command::Midpoints,
        Cmd::Reconstruct => Command::Reconstruct,
        Cmd::Classify => Command::Classify,
        Cmd::Verify => {
            let Some(geometry) = geometry else {
                let mut r = Response::new(Status::Invalid, "verify");
                r.error = Some("verify needs --geometry".into());
                return emit(&r, 2);
            };
            let mut opts = VerifyOptions::new(geometry, args.count, args.seed);
            if let Some(t) = args.tol {
                opts.quadrature_tol = t;
            }
            if let Some(z) = args.zero_tol {
                opts.tolerances = opts.tolerances.with_zero(z);
            }
            let resp = cli::run_verify(&opts);
            let code = cli::verify_exit_code(&resp);
            return emit(&resp, code);
        }
    };

    let input = match read_input(args.file.as_ref()) {
        Ok(s) => s,
        Err(e) => {
            let mut r = Response::new(Status::Invalid, command.name());
            r.error = Some(format!("cannot read input: {e}"));
            return emit(&r, 2);
        }
    };
    let overrides = Overrides {
        geometry,
        tol: args.tol,
        zero_tol: args.zero_tol,
    };
    let resp = cli::run_document(command, &input, &overrides);
    let code = resp.status.exit_code();
    emit(&resp, code)
}
