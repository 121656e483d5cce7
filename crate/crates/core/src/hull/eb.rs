//! The sets `E(b) = {|z_1|^b |z_2| <= 1}`: for rational `b = p/q` the
//! monomial `z_1^p z_2^q` is bounded by 1 on `E(b)`; for irrational `b`
//! every nonzero monomial is unbounded there.

use num_complex::Complex;
use num_integer::Integer;

use super::pol::{monomial_certificate, monomial_sup};
use super::{CircularSample, HullCertificate};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::scalar::Real;

/// The exponent `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EbParam<T: Real> {
    Rational { p: u64, q: u64 },
    /// A floating value; monomials are bounded only when `alpha_1 = b alpha_2`
    /// holds exactly in floating point.
    Real(T),
}

impl<T: Real> EbParam<T> {
    fn value(&self) -> T {
        match *self {
            EbParam::Rational { p, q } => T::lit(p as f64) / T::lit(q as f64),
            EbParam::Real(b) => b,
        }
    }

    fn reduced(&self) -> Result<Self> {
        match *self {
            EbParam::Rational { p, q } => {
                if p == 0 || q == 0 {
                    return Err(Error::NonPositiveParameter(format!("b = {p}/{q}")));
                }
                let g = p.gcd(&q);
                Ok(EbParam::Rational { p: p / g, q: q / g })
            }
            EbParam::Real(b) => {
                if !(b > T::zero()) || !b.is_finite() {
                    return Err(Error::NonPositiveParameter(format!("b = {b}")));
                }
                Ok(*self)
            }
        }
    }

    /// Whether `alpha_1 = b alpha_2`.
    fn balanced(&self, a1: u32, a2: u32) -> bool {
        match *self {
            EbParam::Rational { p, q } => q * a1 as u64 == p * a2 as u64,
            EbParam::Real(b) => T::lit(a1 as f64) - b * T::lit(a2 as f64) == T::zero(),
        }
    }
}

/// Boundary points `(e^s, e^{-b s})` of `E(b)` for `rays` values of `s`
/// spread evenly over `[-s_max, s_max]`. Monomial moduli only see `|w_j|`,
/// and every point of `E(b)` is dominated by one of these rays.
pub fn eb_ray_sample<T: Real>(b: T, rays: usize, s_max: T) -> Result<CircularSample<T>> {
    if rays < 2 || !(s_max > T::zero()) {
        return Err(Error::InvalidInput("need at least two rays and s_max > 0".into()));
    }
    let points = (0..rays)
        .map(|k| {
            let s = -s_max + T::lit(2.0) * s_max * T::from_usize_lossy(k) / T::from_usize_lossy(rays - 1);
            vec![Complex::new(s.exp(), T::zero()), Complex::new((-b * s).exp(), T::zero())]
        })
        .collect();
    CircularSample::new(points, true, false)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EbStatus<T: Real> {
    /// Sup of `|w^alpha|` over the ray sample.
    Bounded { sup_on_rays: T },
    /// A point of `E(b)` with `log|w_j| = log_moduli[j]` where
    /// `log|w^alpha| = log_value > log 10^6`.
    Unbounded { log_moduli: [T; 2], log_value: T },
}

#[derive(Clone, Debug, PartialEq)]
pub struct EbReport<T: Real> {
    pub b: T,
    /// Lowest-degree bounded monomial, if any.
    pub bounded_monomial: Option<MultiIndex>,
    /// Every nonzero `alpha` with `|alpha| <= D`, by degree.
    pub entries: Vec<(MultiIndex, EbStatus<T>)>,
}

/// Classifies every nonzero `alpha` with `|alpha| <= degree_cap` as
/// bounded or unbounded on `E(b)`.
///
/// Along the boundary ray `s -> (e^s, e^{-b s})`,
/// `log|w^alpha| = s (alpha_1 - b alpha_2)`, so the monomial is bounded iff
/// the bracket vanishes; otherwise `s` is chosen with the bracket's sign
/// and large enough that `log|w^alpha| = log 10^6 + 1`. No fixed range of
/// `s` suffices: near-balanced exponents such as `(41, 29)` against
/// `sqrt 2` need `|s|` beyond 1000, so witnesses are kept in logs.
///
/// Rational `b = p/q` needs `D >= 2q` and `D >= p + q`, so that the bounded
/// monomial `(p, q)` is in range.
pub fn eb_dichotomy<T: Real>(b: EbParam<T>, degree_cap: u32, ray_samples: usize) -> Result<EbReport<T>> {
    let b = b.reduced()?;
    if degree_cap == 0 {
        return Err(Error::OutOfRange("degree cap must be positive".into()));
    }
    if let EbParam::Rational { p, q } = b {
        if (degree_cap as u64) < (2 * q).max(p + q) {
            return Err(Error::OutOfRange(format!("degree cap {degree_cap} below max(2q, p + q) for b = {p}/{q}")));
        }
    }
    let bf = b.value();
    let sample = eb_ray_sample(bf, ray_samples, T::lit(40.0))?;
    let target = T::lit(1e6).ln() + T::one();
    let mut entries = Vec::new();
    let mut bounded_monomial = None;
    for deg in 1..=degree_cap {
        for a1 in 0..=deg {
            let a2 = deg - a1;
            let alpha = MultiIndex::from([a1, a2]);
            let status = if b.balanced(a1, a2) {
                if bounded_monomial.is_none() {
                    bounded_monomial = Some(alpha.clone());
                }
                EbStatus::Bounded { sup_on_rays: monomial_sup(&sample, &alpha)? }
            } else {
                let g = T::lit(a1 as f64) - bf * T::lit(a2 as f64);
                let s = target / g;
                let log_moduli = [s, -(bf * s)];
                let log_value = T::lit(a1 as f64) * log_moduli[0] + T::lit(a2 as f64) * log_moduli[1];
                EbStatus::Unbounded { log_moduli, log_value }
            };
            entries.push((alpha, status));
        }
    }
    Ok(EbReport { b: bf, bounded_monomial, entries })
}

/// Monomial witness `(p, q)` for a point with `|z_1|^p |z_2|^q > 1`,
/// checked against the ray sample.
pub fn eb_exterior_witness<T: Real>(p: u64, q: u64, z: &[Complex<T>], sample: &CircularSample<T>) -> Result<HullCertificate<T>> {
    let EbParam::Rational { p, q } = EbParam::<T>::Rational { p, q }.reduced()? else { unreachable!() };
    let alpha = [u32::try_from(p).map_err(|_| Error::OutOfRange("p too large".into()))?, u32::try_from(q).map_err(|_| Error::OutOfRange("q too large".into()))?];
    monomial_certificate(z, &alpha, sample)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_half_has_bounded_monomial() {
        let r = eb_dichotomy(EbParam::<f64>::Rational { p: 1, q: 2 }, 8, 401).unwrap();
        assert_eq!(r.bounded_monomial, Some(MultiIndex::from([1, 2])));
        for (alpha, status) in &r.entries {
            match status {
                EbStatus::Bounded { sup_on_rays } => {
                    assert_eq!(alpha.exponents()[1], 2 * alpha.exponents()[0]);
                    assert!((sup_on_rays - 1.0).abs() < 1e-12);
                }
                EbStatus::Unbounded { log_moduli, log_value } => {
                    assert!(*log_value > 1e6f64.ln());
                    // the witness lies on the boundary of E(1/2)
                    assert!((0.5 * log_moduli[0] + log_moduli[1]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sqrt_two_has_none() {
        let r = eb_dichotomy(EbParam::Real(2f64.sqrt()), 50, 101).unwrap();
        assert!(r.bounded_monomial.is_none());
        assert_eq!(r.entries.len(), (2..=51).sum::<usize>());
        for (alpha, status) in &r.entries {
            let EbStatus::Unbounded { log_moduli, log_value } = status else { panic!("{alpha:?}") };
            assert!(*log_value > 1e6f64.ln(), "{alpha:?}");
            assert!(2f64.sqrt() * log_moduli[0] + log_moduli[1] <= 1e-9 * log_moduli[0].abs());
        }
    }

    #[test]
    fn exterior_point_gets_the_bounded_monomial() {
        let sample = eb_ray_sample(0.5, 401, 40.0).unwrap();
        let z = [Complex::new(2.0, 0.0), Complex::new(0.5f64.sqrt() + 1e-6, 0.0)];
        let cert = eb_exterior_witness(1, 2, &z, &sample).unwrap();
        cert.verify_sample(&sample).unwrap();
        let inside = [Complex::new(2.0, 0.0), Complex::new(0.5f64.sqrt() - 1e-6, 0.0)];
        assert!(eb_exterior_witness(1, 2, &inside, &sample).is_err());
    }

    #[test]
    fn preconditions() {
        assert!(eb_dichotomy(EbParam::<f64>::Rational { p: 1, q: 2 }, 3, 11).is_err());
        assert!(eb_dichotomy(EbParam::<f64>::Rational { p: 0, q: 2 }, 8, 11).is_err());
        assert!(eb_dichotomy(EbParam::Real(-1.0f64), 8, 11).is_err());
        // 2/4 reduces to 1/2
        let r = eb_dichotomy(EbParam::<f64>::Rational { p: 2, q: 4 }, 4, 11).unwrap();
        assert_eq!(r.bounded_monomial, Some(MultiIndex::from([1, 2])));
    }
}
