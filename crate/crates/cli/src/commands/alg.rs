use std::path::PathBuf;

use clap::Subcommand;
use serde::Serialize;

use harmonia::algebra::{alg_norm, cstar_checks, neumann_inverse, spectral_radius, volterra_power_norm, AlgebraElement, NormMethod};
use harmonia::io::MatrixDoc;

use crate::output::{cells, num, read_json, Out, Result, Table};

#[derive(Subcommand)]
pub enum Cmd {
    /// Operator norm of a matrix on l^2.
    Norm { input: PathBuf },
    /// (I - a)^{-1} by the Neumann series.
    Invert {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Gelfand sequence ||x^n||^{1/n}, n = 1..=max-power, and max |eigenvalue|.
    Specrad {
        input: PathBuf,
        #[arg(long = "max-power", default_value_t = 64)]
        max_power: usize,
    },
    /// Sup-norm of powers of the Volterra operator on C[0, 1].
    Volterra {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
    },
    /// Norm identities for the adjoint.
    Cstar { input: PathBuf },
}

#[derive(Serialize)]
struct InverseDoc {
    inverse: MatrixDoc,
    bound: f64,
    terms: usize,
    residual: f64,
}

pub fn run(cmd: Cmd, out: &Out) -> Result<()> {
    match cmd {
        Cmd::Norm { input } => {
            let m = read_json::<MatrixDoc>(&input)?.to_matrix()?;
            let r = alg_norm(&AlgebraElement::Matrix(m))?;
            let method = match r.method {
                NormMethod::Exact => "exact".to_string(),
                NormMethod::PowerIteration { iterations, .. } => format!("power iteration ({iterations} steps)"),
                NormMethod::GramEigenvalues => "gram eigenvalues".to_string(),
            };
            let mut t = Table::new(&["norm", "method"]);
            t.push(vec![num(r.value), method]);
            out.table(&t)
        }
        Cmd::Invert { input, tol } => {
            let m = read_json::<MatrixDoc>(&input)?.to_matrix()?;
            let inv = neumann_inverse(&AlgebraElement::Matrix(m), tol)?;
            let AlgebraElement::Matrix(x) = &inv.inverse else { unreachable!("matrix in, matrix out") };
            out.json(&InverseDoc { inverse: MatrixDoc::from_matrix(x), bound: inv.bound, terms: inv.terms, residual: inv.residual })
        }
        Cmd::Specrad { input, max_power } => {
            let m = read_json::<MatrixDoc>(&input)?.to_matrix()?;
            let eig = if m.dim() <= 8 { Some(m.spectral_radius_eig()?) } else { None };
            let s = spectral_radius(&AlgebraElement::Matrix(m), max_power)?;
            out.table(&gelfand_table(&s.sequence, eig))
        }
        Cmd::Volterra { n, grid } => out.table(&volterra_table(n, grid)?),
        Cmd::Cstar { input } => {
            let m = read_json::<MatrixDoc>(&input)?.to_matrix()?;
            let r = cstar_checks(&m)?;
            let mut t = Table::new(&["quantity", "value"]);
            t.push(vec!["norm".into(), num(r.norm)]);
            t.push(vec!["adjoint_norm".into(), num(r.adjoint_norm)]);
            t.push(vec!["star_product_norm".into(), num(r.star_product_norm)]);
            t.push(vec!["norm_squared".into(), num(r.norm * r.norm)]);
            t.push(vec!["normal_defect".into(), num(r.normal_defect)]);
            t.push(vec!["normal".into(), r.normal.to_string()]);
            t.push(vec!["adjoint_ok".into(), r.adjoint_ok.to_string()]);
            t.push(vec!["cstar_ok".into(), r.cstar_ok.to_string()]);
            if let Some(ok) = r.powers_ok {
                t.push(vec!["powers_ok".into(), ok.to_string()]);
            }
            out.table(&t)
        }
    }
}

/// `n, ||x^n||^{1/n}` with the running minimum and, when known, the eigenvalue radius.
pub fn gelfand_table(sequence: &[f64], eig: Option<f64>) -> Table {
    let mut t = Table::new(&["n", "root_norm", "running_min", "max_abs_eigenvalue"]);
    let mut best = f64::INFINITY;
    for (i, &v) in sequence.iter().enumerate() {
        best = best.min(v);
        let mut row = vec![(i + 1).to_string()];
        row.extend(cells(&[v, best]));
        row.push(eig.map_or(String::new(), num));
        t.push(row);
    }
    t
}

pub fn volterra_table(n: usize, grid: usize) -> Result<Table> {
    let mut t = Table::new(&["n", "sigma", "inv_factorial", "rel_error"]);
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
        let s: f64 = volterra_power_norm(k, grid)?;
        let mut row = vec![k.to_string()];
        row.extend(cells(&[s, 1.0 / fact, (s * fact - 1.0).abs()]));
        t.push(row);
    }
    Ok(t)
}
