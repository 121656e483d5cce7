//! JSON documents for the file formats. Documents are plain `f64`; complex
//! numbers are written `{re, im}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::hull::{CircularSample, Evidence, HullCertificate, Query};
use crate::line::{Decay, LineAtomicMeasure, LineFunction};
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::seq::SeqVector;
use crate::torus::{CoeffTable, TorusFunction, TorusGrid};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex<f64>> for ComplexDoc {
    fn from(z: Complex<f64>) -> Self {
        ComplexDoc { re: z.re, im: z.im }
    }
}

impl From<ComplexDoc> for Complex<f64> {
    fn from(z: ComplexDoc) -> Self {
        Complex::new(z.re, z.im)
    }
}

fn docs(zs: &[Complex<f64>]) -> Vec<ComplexDoc> {
    zs.iter().map(|&z| z.into()).collect()
}

fn complexes(zs: &[ComplexDoc]) -> Vec<Complex<f64>> {
    zs.iter().map(|&z| z.into()).collect()
}

/// Reals that may be infinite: finite values as numbers, others as the
/// strings `"inf"`, `"-inf"`, `"nan"`.
mod ext_real {
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("expected a number, got {other:?}"))),
            },
        }
    }
}

/// `{entries: [{re, im}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorDoc {
    pub entries: Vec<ComplexDoc>,
}

impl VectorDoc {
    pub fn from_vector(v: &SeqVector<f64>) -> Self {
        VectorDoc { entries: docs(v.entries()) }
    }

    pub fn to_vector(&self) -> Result<SeqVector<f64>> {
        SeqVector::new(complexes(&self.entries))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub alpha: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

/// `{dim, terms: [{alpha, re, im}]}`, terms in graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub dim: usize,
    pub terms: Vec<TermDoc>,
}

impl PolynomialDoc {
    pub fn from_polynomial(p: &Polynomial<f64>) -> Self {
        let terms = p
            .terms()
            .map(|(a, c)| TermDoc { alpha: a.exponents().to_vec(), re: c.re, im: c.im })
            .collect();
        PolynomialDoc { dim: p.dim(), terms }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial<f64>> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("polynomial dimension must be positive".into()));
        }
        Polynomial::from_terms(
            self.dim,
            self.terms.iter().map(|t| (MultiIndex::new(t.alpha.clone()), Complex::new(t.re, t.im))),
        )
    }
}

/// `{dim, N, values}` with values in row-major grid order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusFunctionDoc {
    pub dim: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub values: Vec<ComplexDoc>,
}

impl TorusFunctionDoc {
    pub fn from_function(f: &TorusFunction<f64>) -> Self {
        let g = f.grid();
        TorusFunctionDoc { dim: g.dim(), n: g.samples_per_dim(), values: docs(f.values()) }
    }

    pub fn to_function(&self) -> Result<TorusFunction<f64>> {
        TorusFunction::new(TorusGrid::new(self.dim, self.n)?, complexes(&self.values))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub alpha: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

/// `{dim, K, coeffs: [{alpha, re, im}]}`; absent indices are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffTableDoc {
    pub dim: usize,
    #[serde(rename = "K")]
    pub k: i64,
    pub coeffs: Vec<CoeffDoc>,
}

impl CoeffTableDoc {
    /// Writes the nonzero coefficients only.
    pub fn from_table(c: &CoeffTable<f64>) -> Self {
        let coeffs = c
            .iter()
            .filter(|(_, z)| *z != Complex::new(0.0, 0.0))
            .map(|(alpha, z)| CoeffDoc { alpha, re: z.re, im: z.im })
            .collect();
        CoeffTableDoc { dim: c.dim(), k: c.band(), coeffs }
    }

    pub fn to_table(&self) -> Result<CoeffTable<f64>> {
        CoeffTable::from_entries(self.dim, self.k, self.coeffs.iter().map(|c| (c.alpha.clone(), Complex::new(c.re, c.im))))
    }
}

/// `{dim, L, M, decay, values}`: `M` intervals per axis on `[-L, L]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFunctionDoc {
    pub dim: usize,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: usize,
    pub decay: Decay<f64>,
    pub values: Vec<ComplexDoc>,
}

impl LineFunctionDoc {
    pub fn from_function(f: &LineFunction<f64>) -> Self {
        LineFunctionDoc { dim: f.dim(), l: f.half_width(), m: f.intervals(), decay: f.decay(), values: docs(f.values()) }
    }

    pub fn to_function(&self) -> Result<LineFunction<f64>> {
        LineFunction::new(self.dim, self.l, self.m, self.decay, complexes(&self.values))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub u: Vec<f64>,
    pub re: f64,
    pub im: f64,
}

/// `{atoms: [{u, re, im}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureDoc {
    pub atoms: Vec<AtomDoc>,
}

impl MeasureDoc {
    pub fn from_measure(mu: &LineAtomicMeasure<f64>) -> Self {
        let atoms = mu.atoms().iter().map(|(u, c)| AtomDoc { u: u.clone(), re: c.re, im: c.im }).collect();
        MeasureDoc { atoms }
    }

    pub fn to_measure(&self) -> Result<LineAtomicMeasure<f64>> {
        let dim = self.atoms.first().map_or(1, |a| a.u.len());
        LineAtomicMeasure::new(dim, self.atoms.iter().map(|a| (a.u.clone(), Complex::new(a.re, a.im))).collect())
    }
}

/// `{d, entries}` with entries row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub d: usize,
    pub entries: Vec<ComplexDoc>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix<f64>) -> Self {
        MatrixDoc { d: m.dim(), entries: docs(m.entries()) }
    }

    pub fn to_matrix(&self) -> Result<Matrix<f64>> {
        Matrix::new(self.d, complexes(&self.entries))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFlags {
    pub completely_circular: bool,
    pub bounded: bool,
}

/// `{n, points: [[{re, im}]], flags}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub n: usize,
    pub points: Vec<Vec<ComplexDoc>>,
    pub flags: SampleFlags,
}

impl SampleDoc {
    pub fn from_sample(s: &CircularSample<f64>) -> Self {
        SampleDoc {
            n: s.n(),
            points: s.points().iter().map(|p| docs(p)).collect(),
            flags: SampleFlags { completely_circular: s.completely_circular, bounded: s.bounded },
        }
    }

    pub fn to_sample(&self) -> Result<CircularSample<f64>> {
        let sample = CircularSample::new(
            self.points.iter().map(|p| complexes(p)).collect(),
            self.flags.completely_circular,
            self.flags.bounded,
        )?;
        if sample.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: sample.n() });
        }
        Ok(sample)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryDoc {
    Point(Vec<f64>),
    Dominated(Vec<f64>),
    Complex(Vec<ComplexDoc>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EvidenceDoc {
    InsideConvexCombination {
        weights: Vec<f64>,
        support: Vec<usize>,
        #[serde(with = "ext_real")]
        residual: f64,
    },
    SeparatingFunctional {
        lambda: Vec<f64>,
        #[serde(with = "ext_real")]
        margin: f64,
    },
    MonomialWitness {
        alpha: Vec<u32>,
        #[serde(with = "ext_real")]
        log_sup_on_e: f64,
        #[serde(with = "ext_real")]
        log_value_at_z: f64,
    },
    ExponentialWitness {
        mu: Vec<ComplexDoc>,
        #[serde(with = "ext_real")]
        t: f64,
        #[serde(with = "ext_real")]
        boundary_sup: f64,
        #[serde(with = "ext_real")]
        value_at_z: f64,
    },
}

/// Field-for-field image of [`HullCertificate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub query: QueryDoc,
    #[serde(with = "ext_real")]
    pub tol: f64,
    pub evidence: EvidenceDoc,
}

impl From<&HullCertificate<f64>> for CertificateDoc {
    fn from(c: &HullCertificate<f64>) -> Self {
        let query = match &c.query {
            Query::Point(x) => QueryDoc::Point(x.clone()),
            Query::Dominated(x) => QueryDoc::Dominated(x.clone()),
            Query::Complex(z) => QueryDoc::Complex(docs(z)),
        };
        let evidence = match &c.evidence {
            Evidence::InsideConvexCombination { weights, support, residual } => EvidenceDoc::InsideConvexCombination {
                weights: weights.clone(),
                support: support.clone(),
                residual: *residual,
            },
            Evidence::SeparatingFunctional { lambda, margin } => {
                EvidenceDoc::SeparatingFunctional { lambda: lambda.clone(), margin: *margin }
            }
            Evidence::MonomialWitness { alpha, log_sup_on_e, log_value_at_z } => EvidenceDoc::MonomialWitness {
                alpha: alpha.clone(),
                log_sup_on_e: *log_sup_on_e,
                log_value_at_z: *log_value_at_z,
            },
            Evidence::ExponentialWitness { mu, t, boundary_sup, value_at_z } => EvidenceDoc::ExponentialWitness {
                mu: docs(mu),
                t: *t,
                boundary_sup: *boundary_sup,
                value_at_z: *value_at_z,
            },
        };
        CertificateDoc { query, tol: c.tol, evidence }
    }
}

impl From<&CertificateDoc> for HullCertificate<f64> {
    fn from(c: &CertificateDoc) -> Self {
        let query = match &c.query {
            QueryDoc::Point(x) => Query::Point(x.clone()),
            QueryDoc::Dominated(x) => Query::Dominated(x.clone()),
            QueryDoc::Complex(z) => Query::Complex(complexes(z)),
        };
        let evidence = match &c.evidence {
            EvidenceDoc::InsideConvexCombination { weights, support, residual } => Evidence::InsideConvexCombination {
                weights: weights.clone(),
                support: support.clone(),
                residual: *residual,
            },
            EvidenceDoc::SeparatingFunctional { lambda, margin } => {
                Evidence::SeparatingFunctional { lambda: lambda.clone(), margin: *margin }
            }
            EvidenceDoc::MonomialWitness { alpha, log_sup_on_e, log_value_at_z } => Evidence::MonomialWitness {
                alpha: alpha.clone(),
                log_sup_on_e: *log_sup_on_e,
                log_value_at_z: *log_value_at_z,
            },
            EvidenceDoc::ExponentialWitness { mu, t, boundary_sup, value_at_z } => Evidence::ExponentialWitness {
                mu: complexes(mu),
                t: *t,
                boundary_sup: *boundary_sup,
                value_at_z: *value_at_z,
            },
        };
        HullCertificate { query, tol: c.tol, evidence }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_function_round_trip() {
        let f = TorusFunction::from_fn(TorusGrid::new(2, 4).unwrap(), |z| z[0] * z[1].conj()).unwrap();
        let json = serde_json::to_string(&TorusFunctionDoc::from_function(&f)).unwrap();
        assert!(json.contains("\"N\":4"));
        let back: TorusFunctionDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_function().unwrap(), f);
    }

    #[test]
    fn coeff_table_round_trip() {
        let c = CoeffTable::from_entries(2, 2, [(vec![1, -2], Complex::new(0.5, -1.0))]).unwrap();
        let doc = CoeffTableDoc::from_table(&c);
        assert_eq!(doc.coeffs.len(), 1);
        let back: CoeffTableDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back.to_table().unwrap(), c);
    }

    #[test]
    fn polynomial_terms_are_graded_lex() {
        let p = Polynomial::from_terms(
            2,
            [
                (MultiIndex::from([2, 0]), Complex::new(1.0, 0.0)),
                (MultiIndex::from([0, 1]), Complex::new(2.0, 0.0)),
                (MultiIndex::from([0, 0]), Complex::new(3.0, 0.0)),
            ],
        )
        .unwrap();
        let doc = PolynomialDoc::from_polynomial(&p);
        let alphas: Vec<_> = doc.terms.iter().map(|t| t.alpha.clone()).collect();
        assert_eq!(alphas, vec![vec![0, 0], vec![0, 1], vec![2, 0]]);
        assert_eq!(doc.to_polynomial().unwrap(), p);
    }

    #[test]
    fn line_docs_round_trip() {
        let f = LineFunction::new(1, 2.0, 8, Decay::Exponential { rate: 1.0 }, vec![Complex::new(1.0, 0.0); 9]).unwrap();
        let json = serde_json::to_string(&LineFunctionDoc::from_function(&f)).unwrap();
        assert!(json.contains("\"decay\":{\"kind\":\"exponential\",\"rate\":1.0}"));
        let back: LineFunctionDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_function().unwrap(), f);

        let mu = LineAtomicMeasure::new(1, vec![(vec![0.5], Complex::new(2.0, 0.0))]).unwrap();
        assert_eq!(MeasureDoc::from_measure(&mu).to_measure().unwrap(), mu);
    }

    #[test]
    fn certificates_keep_infinite_logs() {
        let cert = HullCertificate {
            query: Query::Complex(vec![Complex::new(1.0, 0.0)]),
            tol: 1e-9,
            evidence: Evidence::MonomialWitness { alpha: vec![1], log_sup_on_e: f64::NEG_INFINITY, log_value_at_z: 0.0 },
        };
        let json = serde_json::to_string(&CertificateDoc::from(&cert)).unwrap();
        assert!(json.contains("\"-inf\""));
        assert!(json.contains("\"kind\":\"monomial_witness\""));
        let back: CertificateDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(HullCertificate::from(&back), cert);
    }

    #[test]
    fn sample_dimension_is_checked() {
        let doc = SampleDoc {
            n: 3,
            points: vec![vec![ComplexDoc { re: 1.0, im: 0.0 }; 2]],
            flags: SampleFlags { completely_circular: true, bounded: true },
        };
        assert!(doc.to_sample().is_err());
    }
}
