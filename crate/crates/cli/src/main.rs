//! `harmonia <module> <op> [flags]`.
//!
//! Tables go out as CSV, certificates and module objects as JSON. Output
//! goes to stdout unless `--output` names a file.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{alg, demo, hull, line, seq, torus};
use output::{CliError, Out};

const SCHEMAS: &str = "\
File formats (JSON; complex numbers are {\"re\": x, \"im\": y}):
  vector       {entries: [c]}
  torus fn     {dim, N, values: [c]}                 values row-major on the N^dim grid
  coeff table  {dim, K, coeffs: [{alpha, re, im}]}   absent indices are zero, |alpha_j| <= K
  line fn      {dim, L, M, decay, values: [c]}       M intervals per axis on [-L, L];
                                                      decay {\"kind\": \"compact\"} or
                                                      {\"kind\": \"exponential\", \"rate\": r}
  measure      {atoms: [{u: [x], re, im}]}
  matrix       {d, entries: [c]}                     row-major
  sample       {n, points: [[c]], flags: {completely_circular, bounded}}
  certificate  {query, tol, evidence}                evidence tagged by \"kind\"

Complex command-line values are written re,im (or just re).

Exit codes: 0 success, 2 unreadable input, 3 precondition violated,
4 certificate failed verification, 5 no numerical convergence.";

#[derive(Parser)]
#[command(name = "harmonia", version, about = "Numerical workbench for Fourier analysis, normed algebras and polynomial hulls")]
#[command(after_long_help = SCHEMAS)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    module: Module,
}

#[derive(Subcommand)]
enum Module {
    /// l^p norms, pairings and dual norms of finite sequences.
    #[command(subcommand)]
    Seq(seq::Cmd),
    /// Fourier series on the torus T^n.
    #[command(subcommand)]
    Torus(torus::Cmd),
    /// Fourier transforms on R^n.
    #[command(subcommand)]
    Line(line::Cmd),
    /// Norms, inverses and spectral radii in Banach algebras.
    #[command(subcommand)]
    Alg(alg::Cmd),
    /// Convex and polynomial hulls with certificates.
    #[command(subcommand)]
    Hull(hull::Cmd),
    /// Tables and plot data for the classical identities.
    #[command(subcommand)]
    Demo(demo::Cmd),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = Out::new(cli.output);
    match cli.module {
        Module::Seq(c) => seq::run(c, &out),
        Module::Torus(c) => torus::run(c, &out),
        Module::Line(c) => line::run(c, &out),
        Module::Alg(c) => alg::run(c, &out),
        Module::Hull(c) => hull::run(c, &out),
        Module::Demo(c) => demo::run(c, &out),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on malformed command lines
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("harmonia: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
