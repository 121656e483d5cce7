use std::path::PathBuf;

use clap::Subcommand;
use serde::Serialize;

use harmonia::io::VectorDoc;
use harmonia::seq::{dual_norm, pairing, Exponent};

use crate::output::{cells, num, read_json, Out, Result, Table};

#[derive(Subcommand)]
pub enum Cmd {
    /// ||f||_p; p may be `inf`. Below 1 the quasi-norm is reported.
    Norm {
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// sum_x f(x) g(x), without conjugation.
    Pairing { f: PathBuf, g: PathBuf },
    /// Norm of f -> sum f g on l^p, with a maximizing f.
    Dual {
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
}

#[derive(Serialize)]
struct DualDoc {
    value: f64,
    extremizer: VectorDoc,
}

pub fn run(cmd: Cmd, out: &Out) -> Result<()> {
    match cmd {
        Cmd::Norm { input, p } => {
            let v = read_json::<VectorDoc>(&input)?.to_vector()?;
            let norm = v.lp_norm(Exponent::new(p)?);
            let mut t = Table::new(&["p", "norm"]);
            t.push(vec![num(p), num(norm)]);
            out.table(&t)
        }
        Cmd::Pairing { f, g } => {
            let f = read_json::<VectorDoc>(&f)?.to_vector()?;
            let g = read_json::<VectorDoc>(&g)?.to_vector()?;
            let s = pairing(&f, &g)?;
            let mut t = Table::new(&["re", "im"]);
            t.push(cells(&[s.re, s.im]));
            out.table(&t)
        }
        Cmd::Dual { input, p } => {
            let g = read_json::<VectorDoc>(&input)?.to_vector()?;
            let d = dual_norm(&g, Exponent::new(p)?)?;
            out.json(&DualDoc { value: d.value, extremizer: VectorDoc::from_vector(&d.extremizer) })
        }
    }
}
