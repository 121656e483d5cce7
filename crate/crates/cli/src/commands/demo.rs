use std::f64::consts::TAU;

use clap::Subcommand;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use harmonia::algebra::{spectral_radius, AlgebraElement, Matrix};
use harmonia::hull::{eb_dichotomy, poly_hull_membership, CircularSample, EbParam, Evidence};
use harmonia::line::pa_transform_integral;
use harmonia::torus::{poisson_extend, TorusFunction, TorusGrid};

use super::alg::{gelfand_table, volterra_table};
use super::hull::{eb_table, parse_eb};
use crate::output::{cells, Out, Result, Table};

#[derive(Subcommand)]
pub enum Cmd {
    /// int p_a^ = 2 pi: trapezoid on [-X, X] plus the exact tail, for growing X.
    Integral {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Trapezoid intervals per unit length.
        #[arg(long, default_value_t = 200)]
        density: usize,
        /// Largest X, reached through powers of ten from 10.
        #[arg(long = "xi-max", default_value_t = 10_000.0)]
        xi_max: f64,
    },
    /// sigma(n) = ||V^n|| against 1/n!.
    Volterra {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
    },
    /// Pol(T^2) on a grid of moduli: inside iff both moduli are at most 1.
    Pol {
        /// Grid moduli are k / steps-per-unit for k = 0..=2 steps-per-unit.
        #[arg(long = "steps-per-unit", default_value_t = 10)]
        steps_per_unit: usize,
        /// Phases per coordinate in the torus sample.
        #[arg(long, default_value_t = 16)]
        phases: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Monomials on E(b): one bounded monomial for rational b, none otherwise.
    Eb {
        #[arg(long, default_value = "1/2", value_parser = parse_eb)]
        b: EbParam<f64>,
        #[arg(long, default_value_t = 20)]
        degree: u32,
        #[arg(long, default_value_t = 401)]
        rays: usize,
    },
    /// P[f](r w) -> f(w) as r -> 1, for f(e^{it}) = |sin t| + i cos(3t).
    Poisson {
        /// Boundary point w = e^{i theta}.
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        /// Grid size on the circle.
        #[arg(long, default_value_t = 4096)]
        n: usize,
        /// Radii 1 - 2^{-k} for k = 1..=levels.
        #[arg(long, default_value_t = 8)]
        levels: u32,
    },
    /// ||x^n||^{1/n} for a seeded random complex matrix.
    Gelfand {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long = "max-power", default_value_t = 64)]
        max_power: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run(cmd: Cmd, out: &Out) -> Result<()> {
    match cmd {
        Cmd::Integral { a, density, xi_max } => {
            let mut t = Table::new(&["xi_max", "quadrature", "tail", "total", "error"]);
            let mut x = 10.0f64.min(xi_max);
            loop {
                let intervals = ((2.0 * x) as usize).max(1) * density;
                let v = pa_transform_integral(a, x, intervals)?;
                t.push(cells(&[x, v.quadrature, v.tail, v.total, (v.total - TAU).abs()]));
                if x >= xi_max {
                    break;
                }
                x = (x * 10.0).min(xi_max);
            }
            out.table(&t)
        }
        Cmd::Volterra { n, grid } => out.table(&volterra_table(n, grid)?),
        Cmd::Pol { steps_per_unit, phases, tol } => {
            let sample = CircularSample::from_moduli(&[vec![1.0, 1.0]], phases)?;
            let s = steps_per_unit.max(1);
            let mut t = Table::new(&["r1", "r2", "inside", "expected", "witness", "verified"]);
            for i in 0..=2 * s {
                for j in 0..=2 * s {
                    let (r1, r2) = (i as f64 / s as f64, j as f64 / s as f64);
                    let z = [Complex::new(r1, 0.0), Complex::new(r2, 0.0)];
                    let cert = poly_hull_membership(&z, &sample, tol)?;
                    let witness = match &cert.evidence {
                        Evidence::MonomialWitness { alpha, .. } => {
                            alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
                        }
                        _ => String::new(),
                    };
                    let mut row = cells(&[r1, r2]);
                    row.push(cert.is_inside().to_string());
                    row.push((r1.max(r2) <= 1.0).to_string());
                    row.push(witness);
                    row.push(cert.verify_sample(&sample).is_ok().to_string());
                    t.push(row);
                }
            }
            out.table(&t)
        }
        Cmd::Eb { b, degree, rays } => out.table(&eb_table(&eb_dichotomy(b, degree, rays)?)),
        Cmd::Poisson { theta, n, levels } => {
            let f = |t: f64| Complex::new(t.sin().abs(), (3.0 * t).cos());
            let g = TorusFunction::from_fn(TorusGrid::new(1, n)?, |w| f(w[0].arg()))?;
            let target = f(theta);
            let mut t = Table::new(&["r", "re", "im", "error"]);
            for k in 1..=levels {
                let r = 1.0 - 0.5f64.powi(k as i32);
                let v = poisson_extend(&g, &[Complex::from_polar(r, theta)])?;
                t.push(cells(&[r, v.re, v.im, (v - target).norm()]));
            }
            out.table(&t)
        }
        Cmd::Gelfand { d, max_power, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let entries = (0..d * d).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let m = Matrix::new(d, entries)?;
            let eig = if d <= 8 { Some(m.spectral_radius_eig()?) } else { None };
            let s = spectral_radius(&AlgebraElement::Matrix(m), max_power)?;
            out.table(&gelfand_table(&s.sequence, eig))
        }
    }
}
