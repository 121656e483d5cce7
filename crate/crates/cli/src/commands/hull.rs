use std::path::PathBuf;

use clap::Subcommand;
use num_complex::Complex;

use harmonia::hull::{
    convex_membership, eb_dichotomy, poly_hull_membership, CircularSample, EbParam, EbReport, EbStatus, Evidence,
    HullCertificate, PointCloud, Query,
};
use harmonia::io::{CertificateDoc, SampleDoc};

use crate::output::{cells, num, parse_complex, read_json, Out, Result, Table};

#[derive(Subcommand)]
pub enum Cmd {
    /// Membership of z in the convex hull of the sample, viewed in R^{2n}.
    Convex {
        sample: PathBuf,
        /// One value per coordinate, `re,im`; repeat for each coordinate.
        #[arg(long = "z", value_parser = parse_complex, num_args = 1, allow_hyphen_values = true, required = true)]
        z: Vec<Complex<f64>>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Membership of z in the polynomial hull of a bounded completely circular sample.
    Pol {
        sample: PathBuf,
        /// One value per coordinate, `re,im`; repeat for each coordinate.
        #[arg(long = "z", value_parser = parse_complex, num_args = 1, allow_hyphen_values = true, required = true)]
        z: Vec<Complex<f64>>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Bounded and unbounded monomials on E(b) = {|w_1| |w_2|^b <= 1}.
    Eb {
        /// `p/q`, a decimal, or `sqrt(x)`.
        #[arg(long, default_value = "1/2", value_parser = parse_eb)]
        b: EbParam<f64>,
        #[arg(long, default_value_t = 20)]
        degree: u32,
        #[arg(long, default_value_t = 401)]
        rays: usize,
    },
    /// Re-checks a certificate against a sample; exit 0 iff it holds.
    CheckCert { certificate: PathBuf, sample: PathBuf },
}

pub fn parse_eb(s: &str) -> std::result::Result<EbParam<f64>, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}"))?;
        let q = q.trim().parse::<u64>().map_err(|e| format!("{q:?}: {e}"))?;
        return Ok(EbParam::Rational { p, q });
    }
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let x = inner.trim().parse::<f64>().map_err(|e| format!("{inner:?}: {e}"))?;
        return Ok(EbParam::Real(x.sqrt()));
    }
    s.parse::<f64>().map(EbParam::Real).map_err(|e| format!("{s:?}: {e}"))
}

fn verified(cert: HullCertificate<f64>, sample: &CircularSample<f64>) -> Result<HullCertificate<f64>> {
    check(&cert, sample)?;
    Ok(cert)
}

fn check(cert: &HullCertificate<f64>, sample: &CircularSample<f64>) -> Result<()> {
    match cert.query {
        Query::Complex(_) => cert.verify_sample(sample)?,
        Query::Point(_) => cert.verify_cloud(&PointCloud::from_complex(sample))?,
        Query::Dominated(_) => {
            return Err(harmonia::Error::NotApplicable("dominated queries refer to a log region, not a sample".into()).into())
        }
    }
    Ok(())
}

fn evidence_kind(e: &Evidence<f64>) -> &'static str {
    match e {
        Evidence::InsideConvexCombination { .. } => "inside_convex_combination",
        Evidence::SeparatingFunctional { .. } => "separating_functional",
        Evidence::MonomialWitness { .. } => "monomial_witness",
        Evidence::ExponentialWitness { .. } => "exponential_witness",
    }
}

pub fn run(cmd: Cmd, out: &Out) -> Result<()> {
    match cmd {
        Cmd::Convex { sample, z, tol } => {
            let s = read_json::<SampleDoc>(&sample)?.to_sample()?;
            if z.len() != s.n() {
                return Err(harmonia::Error::DimensionMismatch { expected: s.n(), found: z.len() }.into());
            }
            let x: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
            let cert = verified(convex_membership(&x, &PointCloud::from_complex(&s), tol)?, &s)?;
            out.json(&CertificateDoc::from(&cert))
        }
        Cmd::Pol { sample, z, tol } => {
            let s = read_json::<SampleDoc>(&sample)?.to_sample()?;
            let cert = verified(poly_hull_membership(&z, &s, tol)?, &s)?;
            out.json(&CertificateDoc::from(&cert))
        }
        Cmd::Eb { b, degree, rays } => out.table(&eb_table(&eb_dichotomy(b, degree, rays)?)),
        Cmd::CheckCert { certificate, sample } => {
            let doc = read_json::<CertificateDoc>(&certificate)?;
            let cert = HullCertificate::from(&doc);
            let s = read_json::<SampleDoc>(&sample)?.to_sample()?;
            check(&cert, &s)?;
            let mut t = Table::new(&["verified", "inside", "evidence"]);
            t.push(vec!["true".into(), cert.is_inside().to_string(), evidence_kind(&cert.evidence).into()]);
            out.table(&t)
        }
    }
}

pub fn eb_table(report: &EbReport<f64>) -> Table {
    let mut t = Table::new(&["alpha1", "alpha2", "status", "sup_on_rays", "log_w1", "log_w2", "log_value"]);
    for (alpha, status) in &report.entries {
        let a = alpha.exponents();
        let mut row = vec![a[0].to_string(), a[1].to_string()];
        match status {
            EbStatus::Bounded { sup_on_rays } => {
                row.push("bounded".into());
                row.push(num(*sup_on_rays));
                row.extend([String::new(), String::new(), String::new()]);
            }
            EbStatus::Unbounded { log_moduli, log_value } => {
                row.push("unbounded".into());
                row.push(String::new());
                row.extend(cells(&[log_moduli[0], log_moduli[1], *log_value]));
            }
        }
        t.push(row);
    }
    t
}

