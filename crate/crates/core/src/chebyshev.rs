//! Chebyshev polynomials of a complex argument and the asymptotic
//! convergence factor of the shifted, normalized Chebyshev residual
//! `q_t(λ) = T_t((d − λ)/c) / T_t(d/c)`.
//!
//! Everything here is parameterized by the signed square `c²` of the focal
//! half-distance. `c` itself is real for ellipses elongated along the real
//! axis and purely imaginary for ellipses elongated along the imaginary
//! axis; it is never formed explicitly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::companion_spectral_radius;
use crate::error::{ensure_finite, Error, Result};
use crate::rates::params_from_cheb;

/// A point of the complex plane (an eigenvalue of the game Jacobian).
pub type ComplexScalar = Complex64;

/// Below this ratio `|c²| / d²` the focal distance is treated as zero.
const DISC_LIMIT: f64 = 1e-300;

/// Center `d` and signed squared focal distance `c²` of a family of
/// confocal ellipses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebParams {
    d: f64,
    c_sq: f64,
}

impl ChebParams {
    /// Requires `d > 0` and `d² > c²` so the origin lies outside the focal
    /// segment and `r(0) = 1` is well defined.
    pub fn new(d: f64, c_sq: f64) -> Result<Self> {
        ensure_finite("d", d)?;
        ensure_finite("c_sq", c_sq)?;
        if d <= 0.0 {
            return Err(Error::invalid("d", d, "center must be positive"));
        }
        if d * d - c_sq <= 0.0 {
            return Err(Error::invalid("c_sq", c_sq, "requires d^2 - c^2 > 0"));
        }
        Ok(Self { d, c_sq })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn c_sq(&self) -> f64 {
        self.c_sq
    }

    /// `√(d² − c²)`, the real root used for the normalization at the origin.
    pub(crate) fn origin_root(&self) -> f64 {
        (self.d * self.d - self.c_sq).sqrt()
    }

    fn is_disc(&self) -> bool {
        self.c_sq.abs() < DISC_LIMIT * self.d * self.d
    }
}

/// `T_n(z)` by the three-term recursion `T_{n+1} = 2z T_n − T_{n−1}`.
pub fn cheb_t(n: usize, z: ComplexScalar) -> ComplexScalar {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut curr = z;
    for _ in 1..n {
        let next = 2.0 * z * curr - prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Returns `w + s` where `s` is the square root of `w² − c²` that makes
/// `|w + s|` largest. Equals `c·exp(acosh(w/c))` with the outward branch.
pub(crate) fn outward_root_sum(w: Complex64, c_sq: f64) -> Complex64 {
    let s = (w * w - c_sq).sqrt();
    let plus = w + s;
    let minus = w - s;
    if plus.norm_sqr() >= minus.norm_sqr() {
        plus
    } else {
        minus
    }
}

/// Asymptotic convergence factor `r(λ; d, c²) = lim |q_t(λ)|^{1/t}`.
///
/// Computed as `|(d − λ) + s| / (d + √(d² − c²))` with the max-modulus
/// square root `s` of `(d − λ)² − c²`, which is `|exp(acosh((d−λ)/c) −
/// acosh(d/c))|` without the branch-cut bookkeeping.
pub fn conv_factor(lambda: ComplexScalar, p: &ChebParams) -> Result<f64> {
    check_point(lambda)?;
    let w = Complex64::new(p.d, 0.0) - lambda;
    if p.is_disc() {
        return Ok(w.norm() / p.d);
    }
    let num = outward_root_sum(w, p.c_sq).norm();
    Ok(num / (p.d + p.origin_root()))
}

/// Evaluates the Chebyshev convergence factor and the spectral radius of
/// the momentum companion matrix built from the matching constant
/// parameters. The two agree in exact arithmetic.
pub fn rate_equals_companion_check(lambda: ComplexScalar, p: &ChebParams) -> Result<(f64, f64)> {
    let cheb = conv_factor(lambda, p)?;
    let params = params_from_cheb(p);
    let companion = companion_spectral_radius(lambda, &params)?;
    Ok((cheb, companion))
}

pub(crate) fn check_point(lambda: ComplexScalar) -> Result<()> {
    ensure_finite("lambda.re", lambda.re)?;
    ensure_finite("lambda.im", lambda.im)?;
    Ok(())
}
