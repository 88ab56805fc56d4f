//! Spectral regions: complex ellipses, the strongly-monotone region `K̂`,
//! its inner triangle `K̂₁` and outer rectangle `K̂₂`, and the
//! ρ-convergence region of a momentum method.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::ComplexScalar;
use crate::error::{ensure_finite, Error, Result};
use crate::rates::MomentumParams;

/// Ellipse centered at `d` on the real axis with semi-axes `a` (real
/// direction) and `b` (imaginary direction). `b = 0` is the real segment
/// `[d − a, d + a]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseRegion {
    d: f64,
    a: f64,
    b: f64,
}

impl EllipseRegion {
    pub fn new(d: f64, a: f64, b: f64) -> Result<Self> {
        ensure_finite("d", d)?;
        ensure_finite("a", a)?;
        ensure_finite("b", b)?;
        if a <= 0.0 {
            return Err(Error::invalid("a", a, "semi-axis must be positive"));
        }
        if b < 0.0 {
            return Err(Error::invalid("b", b, "semi-axis must be nonnegative"));
        }
        if d <= a {
            return Err(Error::invalid("d", d, "ellipse must exclude the origin (d > a)"));
        }
        Ok(Self { d, a, b })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Signed squared focal distance `a² − b²`.
    pub fn c_sq(&self) -> f64 {
        self.a * self.a - self.b * self.b
    }

    /// Point of the boundary at parameter angle `theta`.
    pub fn boundary_point(&self, theta: f64) -> ComplexScalar {
        Complex64::new(self.d + self.a * theta.cos(), self.b * theta.sin())
    }
}

/// Strong-monotonicity constant `μ` and Lipschitz constant `L` of a game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBound {
    mu: f64,
    lipschitz: f64,
}

impl SpectrumBound {
    pub fn new(mu: f64, lipschitz: f64) -> Result<Self> {
        ensure_finite("mu", mu)?;
        ensure_finite("L", lipschitz)?;
        if mu <= 0.0 {
            return Err(Error::invalid("mu", mu, "must be positive"));
        }
        if lipschitz < mu {
            return Err(Error::invalid("L", lipschitz, "must be at least mu"));
        }
        Ok(Self { mu, lipschitz })
    }

    /// `μ = 1`, `L = κ`.
    pub fn from_kappa(kappa: f64) -> Result<Self> {
        Self::new(1.0, kappa)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn kappa(&self) -> f64 {
        self.lipschitz / self.mu
    }

    /// Height `√(L² − μ²)` of the chord `Re λ = μ` inside `K̂`.
    pub fn chord_height(&self) -> f64 {
        ((self.lipschitz - self.mu) * (self.lipschitz + self.mu)).sqrt()
    }

    /// Membership in the inner triangle `K̂₁` with vertices `μ ± i√(L²−μ²)`
    /// and `L`, as three half-plane tests.
    pub fn k1_contains(&self, lambda: ComplexScalar) -> bool {
        let (mu, l) = (self.mu, self.lipschitz);
        let slope = (l - mu) / (l * self.chord_height());
        lambda.re >= mu && lambda.re / l + slope * lambda.im <= 1.0 && lambda.re / l - slope * lambda.im <= 1.0
    }

    /// Membership in the outer rectangle `K̂₂`.
    pub fn k2_contains(&self, lambda: ComplexScalar) -> bool {
        let h = self.chord_height();
        lambda.re >= self.mu && lambda.re <= self.lipschitz && lambda.im.abs() <= h
    }
}

/// Upper-half-plane vertices of a sandwich polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexSet {
    pub vertices: Vec<ComplexScalar>,
}

/// `E_{a,b,d}(λ) = (Re λ − d)²/a² + (Im λ)²/b²`; at most 1 inside.
///
/// For the degenerate segment (`b = 0`) off-axis points return `+∞`.
pub fn ellipse_membership(e: &EllipseRegion, lambda: ComplexScalar) -> f64 {
    let real = (lambda.re - e.d) / e.a;
    if e.b == 0.0 {
        if lambda.im == 0.0 {
            real * real
        } else {
            f64::INFINITY
        }
    } else {
        let imag = lambda.im / e.b;
        real * real + imag * imag
    }
}

/// Closed `K̂`: `|λ| ≤ L` and `Re λ ≥ μ`.
pub fn khat_contains(s: &SpectrumBound, lambda: ComplexScalar) -> bool {
    lambda.norm() <= s.lipschitz && lambda.re >= s.mu
}

/// `(H₁, H₂)`: the vertices of `K̂₁` and `K̂₂` that matter for the min-max
/// rate, reduced to the upper half plane by conjugate symmetry.
pub fn sandwich_vertices(s: &SpectrumBound) -> Result<(VertexSet, VertexSet)> {
    if s.lipschitz <= s.mu {
        return Err(Error::Degenerate("sandwich polygons collapse when L = mu"));
    }
    let h = s.chord_height();
    let shared = Complex64::new(s.mu, h);
    let h1 = VertexSet {
        vertices: vec![Complex64::new(s.lipschitz, 0.0), shared],
    };
    let h2 = VertexSet {
        vertices: vec![Complex64::new(s.lipschitz, h), shared],
    };
    Ok((h1, h2))
}

/// Left-hand side of the ρ-convergence region test
/// `(1 − η Re λ + β)²/(1 + τ)² + (η Im λ)²/(1 − τ)² ≤ ρ²`, `τ = β/ρ²`.
///
/// The region is an ellipse; the value equals `ρ²` on its boundary, where
/// the momentum companion matrix has spectral radius exactly `ρ` (for
/// `|β| ≤ ρ²`).
pub fn rho_region_membership(m: &MomentumParams, rho: f64, lambda: ComplexScalar) -> Result<f64> {
    ensure_finite("rho", rho)?;
    if rho <= 0.0 {
        return Err(Error::invalid("rho", rho, "must be positive"));
    }
    if m.eta <= 0.0 {
        return Err(Error::invalid("eta", m.eta, "must be positive"));
    }
    if m.beta > rho {
        return Err(Error::invalid("beta", m.beta, "requires beta <= rho"));
    }
    let tau = m.beta / (rho * rho);
    if tau == 1.0 {
        return Err(Error::Degenerate("beta = rho^2 collapses the rho-region"));
    }
    let real = (1.0 - m.eta * lambda.re + m.beta) / (1.0 + tau);
    let imag = m.eta * lambda.im / (1.0 - tau);
    Ok(real * real + imag * imag)
}
