//! Numerical workbench for classical harmonic analysis: sequence spaces,
//! Fourier analysis on tori and on `R^n`, normed-algebra numerics and
//! polynomial hulls of circular sets.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix the scalar for the common types. File formats in
//! [`io`] are `f64`.

// `!(x <= tol)` is how NaN gets rejected along with large values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod hull;
pub mod io;
pub mod line;
pub mod multiindex;
pub mod poly;
pub mod scalar;
pub mod seq;
pub mod torus;

pub use error::{Error, ErrorKind, Result};
pub use multiindex::MultiIndex;
pub use scalar::{Real, C};

macro_rules! scalar_aliases {
    ($t:ty, $($alias:ident = $path:ident :: $name:ident),* $(,)?) => {
        $(pub type $alias = $path::$name<$t>;)*
    };
}

scalar_aliases!(f64,
    SeqVector64 = seq::SeqVector,
    Polynomial64 = poly::Polynomial,
    TorusFunction64 = torus::TorusFunction,
    CoeffTable64 = torus::CoeffTable,
    LineFunction64 = line::LineFunction,
    Matrix64 = algebra::Matrix,
    AlgebraElement64 = algebra::AlgebraElement,
    PointCloud64 = hull::PointCloud,
    CircularSample64 = hull::CircularSample,
    HullCertificate64 = hull::HullCertificate,
);

scalar_aliases!(f32,
    SeqVector32 = seq::SeqVector,
    Polynomial32 = poly::Polynomial,
    TorusFunction32 = torus::TorusFunction,
    CoeffTable32 = torus::CoeffTable,
    LineFunction32 = line::LineFunction,
    Matrix32 = algebra::Matrix,
    AlgebraElement32 = algebra::AlgebraElement,
    PointCloud32 = hull::PointCloud,
    CircularSample32 = hull::CircularSample,
    HullCertificate32 = hull::HullCertificate,
);
