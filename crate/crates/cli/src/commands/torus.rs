use std::path::PathBuf;

use clap::Subcommand;
use num_complex::Complex;

use harmonia::io::{CoeffTableDoc, TorusFunctionDoc};
use harmonia::torus::{
    analyze, convolve_torus, laurent_coeff, laurent_coeff_bound, parseval, poisson_agreement_tolerance,
    poisson_extend, poisson_series, CircleSamples, TorusGrid,
};

use crate::output::{cells, parse_complex, read_json, Out, Result, Table};

#[derive(Subcommand)]
pub enum Cmd {
    /// Fourier coefficients of a sampled function for |alpha_j| <= K.
    Analyze {
        input: PathBuf,
        /// Band; defaults to the largest alias-free band N/2 - 1.
        #[arg(long)]
        band: Option<i64>,
    },
    /// Samples a coefficient table on the N^dim grid.
    Synth {
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// (f * g)(z) = int f(z w^{-1}) g(w) dm(w) on a common grid.
    Conv { f: PathBuf, g: PathBuf },
    /// Poisson integral at an interior point, by kernel quadrature and by series.
    Poisson {
        input: PathBuf,
        /// One value per coordinate, `re,im`; repeat for each coordinate.
        #[arg(long = "z", value_parser = parse_complex, num_args = 1, allow_hyphen_values = true, default_values = ["0.5,0"])]
        z: Vec<Complex<f64>>,
    },
    /// Both sides of Parseval's identity.
    Parseval { input: PathBuf },
    /// Laurent coefficients from samples of a one-variable torus function,
    /// read as values on the circle |w| = radius.
    Laurent {
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = -4, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
        to: i64,
    },
}

pub fn run(cmd: Cmd, out: &Out) -> Result<()> {
    match cmd {
        Cmd::Analyze { input, band } => {
            let f = read_json::<TorusFunctionDoc>(&input)?.to_function()?;
            let band = band.unwrap_or(f.grid().max_band());
            out.json(&CoeffTableDoc::from_table(&analyze(&f, band)?))
        }
        Cmd::Synth { input, n } => {
            let c = read_json::<CoeffTableDoc>(&input)?.to_table()?;
            let f = c.synthesize_on_grid(TorusGrid::new(c.dim(), n)?)?;
            out.json(&TorusFunctionDoc::from_function(&f))
        }
        Cmd::Conv { f, g } => {
            let f = read_json::<TorusFunctionDoc>(&f)?.to_function()?;
            let g = read_json::<TorusFunctionDoc>(&g)?.to_function()?;
            out.json(&TorusFunctionDoc::from_function(&convolve_torus(&f, &g)?))
        }
        Cmd::Poisson { input, z } => {
            let f = read_json::<TorusFunctionDoc>(&input)?.to_function()?;
            let kernel = poisson_extend(&f, &z)?;
            let series = poisson_series(&f, &z)?;
            let tol = poisson_agreement_tolerance(&f, &z)?;
            let mut t = Table::new(&["kernel_re", "kernel_im", "series_re", "series_im", "difference", "tolerance"]);
            t.push(cells(&[kernel.re, kernel.im, series.re, series.im, (kernel - series).norm(), tol]));
            out.table(&t)
        }
        Cmd::Parseval { input } => {
            let f = read_json::<TorusFunctionDoc>(&input)?.to_function()?;
            let p = parseval(&f)?;
            let mut t = Table::new(&["sum_of_squares", "energy_integral", "difference"]);
            t.push(cells(&[p.sum_of_squares, p.energy_integral, (p.sum_of_squares - p.energy_integral).abs()]));
            out.table(&t)
        }
        Cmd::Laurent { input, radius, from, to } => {
            let f = read_json::<TorusFunctionDoc>(&input)?.to_function()?;
            if f.grid().dim() != 1 {
                return Err(harmonia::Error::DimensionMismatch { expected: 1, found: f.grid().dim() }.into());
            }
            let samples = CircleSamples::new(radius, f.values().to_vec())?;
            let mut t = Table::new(&["j", "re", "im", "cauchy_bound"]);
            for j in from..=to {
                let a = laurent_coeff(&samples, j)?;
                let mut row = vec![j.to_string()];
                row.extend(cells(&[a.re, a.im, laurent_coeff_bound(&samples, j)]));
                t.push(row);
            }
            out.table(&t)
        }
    }
}
