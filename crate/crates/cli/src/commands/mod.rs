pub mod alg;
pub mod demo;
pub mod hull;
pub mod line;
pub mod seq;
pub mod torus;
