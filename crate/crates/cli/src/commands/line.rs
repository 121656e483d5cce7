use std::path::PathBuf;

use clap::Subcommand;

use harmonia::io::{LineFunctionDoc, MeasureDoc};
use harmonia::line::{
    convolve_line, fn_measure_convolve, ft_quadrature, inversion_check, poisson_mass, rl_profile_sampled,
    HalfPlanePoint,
};

use crate::output::{cells, parse_reals, read_json, Out, Result, Table};

#[derive(Subcommand)]
pub enum Cmd {
    /// f^(xi) = int f(x) e^{-i xi.x} dx by the trapezoid rule, one row per xi.
    Ft {
        input: PathBuf,
        /// A frequency, comma-separated with one entry per axis; repeat for more rows.
        #[arg(long = "xi", value_parser = parse_reals, num_args = 1, allow_hyphen_values = true, default_values = ["0"])]
        xi: Vec<Vec<f64>>,
    },
    /// Discrete convolution of two functions sampled on the same grid.
    Conv { f: PathBuf, g: PathBuf },
    /// Mass of the Poisson kernel P_a on R^n, trapezoid plus exact tail.
    Poisson {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "1")]
        a: Vec<f64>,
        #[arg(long = "half-width", default_value_t = 1000.0)]
        half_width: f64,
        #[arg(long, default_value_t = 200_000)]
        intervals: usize,
    },
    /// (f * P_a)(w) against (2 pi)^{-n} int f^(xi) e^{-a|xi|} e^{i xi.w} d xi.
    Invert {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "1")]
        a: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0")]
        w: Vec<f64>,
    },
    /// sup_{|xi| >= R} |f^(xi)| for each R (one-dimensional inputs).
    RlProfile {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,1,2,4,8")]
        radii: Vec<f64>,
    },
    /// Convolves a measure with a measure (JSON out) or with a sampled
    /// function (JSON out), or tabulates its transform (CSV out).
    Measure {
        mu: PathBuf,
        /// Second measure.
        #[arg(long, conflicts_with = "function")]
        nu: Option<PathBuf>,
        /// Sampled function whose grid holds every atom.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Frequencies for the transform table.
        #[arg(long = "xi", value_parser = parse_reals, num_args = 1, allow_hyphen_values = true, default_values = ["0"])]
        xi: Vec<Vec<f64>>,
    },
}

pub fn run(cmd: Cmd, out: &Out) -> Result<()> {
    match cmd {
        Cmd::Ft { input, xi } => {
            let f = read_json::<LineFunctionDoc>(&input)?.to_function()?;
            let mut t = Table::new(&["xi", "re", "im"]);
            for x in &xi {
                let v = ft_quadrature(&f, x)?;
                t.push(vec![join(x), crate::output::num(v.re), crate::output::num(v.im)]);
            }
            out.table(&t)
        }
        Cmd::Conv { f, g } => {
            let f = read_json::<LineFunctionDoc>(&f)?.to_function()?;
            let g = read_json::<LineFunctionDoc>(&g)?.to_function()?;
            out.json(&LineFunctionDoc::from_function(&convolve_line(&f, &g)?))
        }
        Cmd::Poisson { a, half_width, intervals } => {
            let m = poisson_mass(&a, half_width, intervals)?;
            let mut t = Table::new(&["quadrature", "tail", "total", "error"]);
            t.push(cells(&[m.quadrature, m.tail, m.total, (m.total - 1.0).abs()]));
            out.table(&t)
        }
        Cmd::Invert { input, a, w } => {
            let f = read_json::<LineFunctionDoc>(&input)?.to_function()?;
            let c = inversion_check(&f, &a, &w)?;
            let mut t =
                Table::new(&["lhs_re", "lhs_im", "rhs_re", "rhs_im", "discrepancy", "tolerance", "agrees"]);
            let mut row = cells(&[c.lhs.re, c.lhs.im, c.rhs.re, c.rhs.im, c.discrepancy(), c.tolerance]);
            row.push(c.agrees().to_string());
            t.push(row);
            out.table(&t)
        }
        Cmd::RlProfile { input, radii } => {
            let f = read_json::<LineFunctionDoc>(&input)?.to_function()?;
            let p = rl_profile_sampled(&f, &radii)?;
            let mut t = Table::new(&["radius", "sup"]);
            for (r, s) in &p.points {
                t.push(cells(&[*r, *s]));
            }
            out.table(&t)
        }
        Cmd::Measure { mu, nu, function, xi } => {
            let mu = read_json::<MeasureDoc>(&mu)?.to_measure()?;
            if let Some(nu) = nu {
                let nu = read_json::<MeasureDoc>(&nu)?.to_measure()?;
                return out.json(&MeasureDoc::from_measure(&mu.convolve(&nu)?));
            }
            if let Some(f) = function {
                let f = read_json::<LineFunctionDoc>(&f)?.to_function()?;
                return out.json(&LineFunctionDoc::from_function(&fn_measure_convolve(&f, &mu)?));
            }
            let mut t = Table::new(&["xi", "re", "im"]);
            for x in &xi {
                let v = mu.ft(&HalfPlanePoint::real(x))?;
                t.push(vec![join(x), crate::output::num(v.re), crate::output::num(v.im)]);
            }
            out.table(&t)
        }
    }
}

fn join(x: &[f64]) -> String {
    x.iter().map(|&v| crate::output::num(v)).collect::<Vec<_>>().join(" ")
}
