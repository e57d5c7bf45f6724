//! High-precision reference evaluators backing the verification suites.
//!
//! Everything here is test tooling: the production crates never link against
//! this at runtime. The double-double layer gives ~31 significant digits,
//! enough to check 1e-10/1e-12 claims with wide margin.

pub mod bessel;
pub mod dd;
pub mod gamma;

pub use dd::Dd;

/// Convenience f64 front-ends.
pub fn j(nu: f64, x: f64) -> f64 {
    bessel::bessel_j(nu, x).to_f64()
}

pub fn y(nu: f64, x: f64) -> f64 {
    bessel::bessel_y(nu, x).to_f64()
}

pub fn i(nu: f64, x: f64) -> f64 {
    bessel::bessel_i(nu, x).to_f64()
}

pub fn k(nu: f64, x: f64) -> f64 {
    bessel::bessel_k(nu, x).to_f64()
}

pub fn j_zero(nu: f64, k: usize) -> f64 {
    bessel::j_zero(nu, k)
}
