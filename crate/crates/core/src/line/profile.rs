use super::{ft_closed_form, ft_unchecked, ClosedFormFn, HalfPlanePoint, LineAtomicMeasure, LineFunction};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::torus::golden_max;

/// `(R, sup_{|xi| >= R} |g^(xi)|)` pairs for increasing `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct RlProfile<T: Real> {
    pub points: Vec<(T, T)>,
    /// Nonincreasing, with the last value at most half the first.
    pub decaying: bool,
}

impl<T: Real> RlProfile<T> {
    fn from_points(points: Vec<(T, T)>) -> Self {
        let monotone = points.windows(2).all(|w| w[1].1 <= w[0].1 * (T::one() + T::lit(1e-12)));
        let shrinks = match (points.first(), points.last()) {
            (Some(a), Some(b)) if points.len() > 1 => b.1 <= a.1 * T::lit(0.5),
            _ => false,
        };
        RlProfile { points, decaying: monotone && shrinks }
    }
}

fn sorted_radii<T: Real>(radii: &[T]) -> Result<Vec<T>> {
    if radii.iter().any(|r| !(*r >= T::zero()) || !r.is_finite()) {
        return Err(Error::InvalidInput("profile radii must be finite and nonnegative".into()));
    }
    let mut r = radii.to_vec();
    r.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(r)
}

/// Scans `|f|` on `[lo, hi]` in steps of `step` (both signs of `xi`) and
/// polishes the best point with a golden-section search.
fn scan_sup<T: Real>(lo: T, hi: T, step: T, f: &dyn Fn(T) -> T) -> T {
    let mut best = (T::neg_infinity(), lo);
    let mut x = lo;
    loop {
        for s in [x, -x] {
            let v = f(s);
            if v > best.0 {
                best = (v, s);
            }
        }
        if x >= hi {
            break;
        }
        x = (x + step).min(hi);
    }
    let (mut top, center) = best;
    let sign = if center < T::zero() { -T::one() } else { T::one() };
    let a = (center.abs() - step).max(lo);
    let b = (center.abs() + step).min(hi);
    if b > a {
        let t = golden_max(a, b, |t| f(sign * t));
        top = top.max(f(sign * t));
    }
    top
}

/// Profile of a one-dimensional closed-form function. The scan for each
/// `R` stops once the kind's decreasing envelope drops below the best
/// value found.
pub fn rl_profile_closed_form<T: Real>(g: &ClosedFormFn<T>, radii: &[T]) -> Result<RlProfile<T>> {
    g.validate()?;
    if g.dim() != 1 || matches!(g, ClosedFormFn::Product { .. }) {
        return Err(Error::NotApplicable("profiles are computed for one-dimensional kinds".into()));
    }
    let width = match *g {
        ClosedFormFn::Indicator { a, b } => b - a,
        ClosedFormFn::QPlus { a } | ClosedFormFn::QMinus { a } | ClosedFormFn::PA { a } => a.recip(),
        ClosedFormFn::Product { .. } => unreachable!(),
    };
    let step = T::two_pi() / (T::lit(64.0) * width.max(T::lit(1e-3)));
    let eval = |x: T| ft_closed_form(g, &HalfPlanePoint::real(&[x])).expect("real argument").norm();
    let mut points = Vec::new();
    for r in sorted_radii(radii)? {
        let mut best = T::zero();
        let mut lo = r;
        // widen the window until the envelope certifies the remainder
        loop {
            let hi = lo + T::lit(64.0) * step;
            best = best.max(scan_sup(lo, hi, step, &eval));
            if g.envelope_1d(hi) <= best {
                break;
            }
            lo = hi;
        }
        points.push((r, best));
    }
    Ok(RlProfile::from_points(points))
}

/// Profile of sampled data, restricted to the sampling band `|xi| h <= pi/4`.
pub fn rl_profile_sampled<T: Real>(f: &LineFunction<T>, radii: &[T]) -> Result<RlProfile<T>> {
    if f.dim() != 1 {
        return Err(Error::NotApplicable("profiles are computed for one-dimensional samples".into()));
    }
    let band = f.max_frequency();
    let step = T::PI() / (T::lit(16.0) * f.half_width());
    let eval = |x: T| ft_unchecked(f, &[x]).norm();
    let mut points = Vec::new();
    for r in sorted_radii(radii)? {
        if r > band {
            return Err(Error::SamplingInadequate { product: (r * f.spacing()).to_f64_lossy() });
        }
        points.push((r, scan_sup(r, band, step, &eval)));
    }
    Ok(RlProfile::from_points(points))
}

/// Profile of a one-dimensional atomic measure over the window
/// `R <= |xi| <= R + W`, `W` spanning 64 periods of the slowest beat
/// between atoms. Nonzero atomic transforms are almost periodic, so the
/// profile does not decay.
pub fn rl_profile_measure<T: Real>(mu: &LineAtomicMeasure<T>, radii: &[T]) -> Result<RlProfile<T>> {
    if mu.dim() != 1 {
        return Err(Error::NotApplicable("profiles are computed for one-dimensional measures".into()));
    }
    let xs: Vec<T> = mu.atoms().iter().map(|(u, _)| u[0]).collect();
    let mut span = T::zero();
    let mut gap = T::infinity();
    for (i, &a) in xs.iter().enumerate() {
        for &b in &xs[i + 1..] {
            span = span.max((a - b).abs());
            gap = gap.min((a - b).abs());
        }
    }
    let window = if gap.is_finite() { T::lit(64.0) * T::two_pi() / gap } else { T::two_pi() };
    let step = T::two_pi() / (T::lit(64.0) * span.max(T::one()));
    let eval = |x: T| mu.ft(&HalfPlanePoint::real(&[x])).expect("real argument").norm();
    let mut points = Vec::new();
    for r in sorted_radii(radii)? {
        points.push((r, scan_sup(r, r + window, step, &eval)));
    }
    Ok(RlProfile::from_points(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn indicator_profile_below_two_over_r() {
        let g = ClosedFormFn::Indicator { a: 0.0, b: 1.0 };
        let radii = [1.0, 5.0, 20.0, 100.0];
        let p = rl_profile_closed_form(&g, &radii).unwrap();
        for &(r, s) in &p.points {
            assert!(s <= 2.0 / r + 1e-12, "R={r}: {s}");
        }
        assert!(p.decaying);
    }

    #[test]
    fn exponential_profile_is_exact() {
        let g = ClosedFormFn::PA { a: 1.0 };
        let p = rl_profile_closed_form::<f64>(&g, &[0.0, 1.0, 3.0]).unwrap();
        for &(r, s) in &p.points {
            assert!((s - 2.0 / (1.0 + r * r)).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_profile_does_not_decay() {
        let d = LineAtomicMeasure::<f64>::delta(vec![0.0]);
        let p = rl_profile_measure(&d, &[0.0, 10.0, 1000.0]).unwrap();
        assert!(p.points.iter().all(|&(_, s)| (s - 1.0).abs() < 1e-15));
        assert!(!p.decaying);
        let two = LineAtomicMeasure::new(1, vec![(vec![0.0], Complex::new(1.0, 0.0)), (vec![1.0], Complex::new(0.5, 0.0))])
            .unwrap();
        let p = rl_profile_measure::<f64>(&two, &[0.0, 50.0]).unwrap();
        assert!(p.points.iter().all(|&(_, s)| (s - 1.5).abs() < 1e-6));
    }

    #[test]
    fn sampled_profile_decreases() {
        let f = LineFunction::<f64>::from_closed_form(&ClosedFormFn::PA { a: 1.0 }, 16.0, 4096).unwrap();
        let p = rl_profile_sampled(&f, &[0.0, 2.0, 10.0]).unwrap();
        assert!(p.decaying);
        assert!((p.points[1].1 - 0.4).abs() < 1e-4);
        assert!(rl_profile_sampled(&f, &[1e6]).is_err());
    }
}
