//! Float math that works without `std`.
//!
//! With the `std` feature the inherent `f64` methods are used; without it the
//! [`FloatExt`] trait routes the same calls through `libm`. Modules that do
//! float math import `crate::float::*` so call sites read identically either
//! way (inherent methods win when both exist).

#![allow(unused)]

#[cfg(not(feature = "std"))]
pub(crate) trait FloatExt: Sized {
    fn abs(self) -> f64;
    fn sqrt(self) -> f64;
    fn ln(self) -> f64;
    fn exp(self) -> f64;
    fn powf(self, p: f64) -> f64;
    fn powi(self, p: i32) -> f64;
    fn floor(self) -> f64;
    fn ceil(self) -> f64;
    fn round(self) -> f64;
    fn tan(self) -> f64;
    fn max(self, other: f64) -> f64;
    fn min(self, other: f64) -> f64;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn powf(self, p: f64) -> f64 {
        libm::pow(self, p)
    }
    fn powi(self, p: i32) -> f64 {
        libm::pow(self, p as f64)
    }
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    fn ceil(self) -> f64 {
        libm::ceil(self)
    }
    fn round(self) -> f64 {
        libm::round(self)
    }
    fn tan(self) -> f64 {
        libm::tan(self)
    }
    fn max(self, other: f64) -> f64 {
        libm::fmax(self, other)
    }
    fn min(self, other: f64) -> f64 {
        libm::fmin(self, other)
    }
}
