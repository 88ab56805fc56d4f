//! Rate math: the optimal rate of an ellipse, the maps between Chebyshev
//! parameters `(d, c²)` and momentum parameters `(η, β)`, and the min-max
//! rate solvers for the inner triangle `K̂₁` and outer rectangle `K̂₂`.
//!
//! For either polygon the optimal ellipse must pass through both relevant
//! vertices, which leaves one free variable: the center `d` for `K̂₁` and
//! the real semi-axis `a` for `K̂₂` (whose center is pinned at `(L+μ)/2`).
//! The remaining one-dimensional problem is solved numerically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chebyshev::{conv_factor, ChebParams};
use crate::error::{ensure_finite, Error, Result};
use crate::minimize::grid_then_golden;
use crate::regions::{sandwich_vertices, EllipseRegion, SpectrumBound};

/// Grid resolution used before golden-section refinement.
pub const SOLVER_GRID_POINTS: usize = 10_000;
/// Relative tolerance of the golden-section refinement.
pub const SOLVER_REL_TOL: f64 = 1e-12;
/// Relative clipping of the objective endpoint where `b² → ∞`.
pub const DOMAIN_CLIP: f64 = 1e-9;

/// Parameters of `z⁺ = (1+β)z − βz⁻ − ηF((1+α)z − αz⁻)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumParams {
    pub eta: f64,
    pub beta: f64,
    pub alpha: f64,
}

impl MomentumParams {
    pub fn new(eta: f64, beta: f64, alpha: f64) -> Self {
        Self { eta, beta, alpha }
    }

    /// Plain gradient step (`α = β = 0`).
    pub fn gradient(eta: f64) -> Self {
        Self::new(eta, 0.0, 0.0)
    }

    /// Heavy-ball momentum (`α = 0`).
    pub fn momentum(eta: f64, beta: f64) -> Self {
        Self::new(eta, beta, 0.0)
    }

    /// Optimistic gradient (`α = 1`, `β = 0`).
    pub fn optimistic(eta: f64) -> Self {
        Self::new(eta, 0.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    K1,
    K2,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::K1 => "K1",
            Region::K2 => "K2",
        })
    }
}

impl FromStr for Region {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "k1" => Ok(Region::K1),
            "k2" => Ok(Region::K2),
            other => Err(format!("unknown region `{other}` (expected k1 or k2)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentumSign {
    Negative,
    Undetermined,
}

impl fmt::Display for MomentumSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentumSign::Negative => "negative",
            MomentumSign::Undetermined => "undetermined",
        })
    }
}

/// Solution of the min-max rate problem on one sandwich polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub region_tag: Region,
    pub d_star: f64,
    pub c_sq_star: f64,
    pub a_star: f64,
    pub b_star: f64,
    pub rho_hat: f64,
    pub params: MomentumParams,
    /// `r(v; d*, c²*)` for each vertex `v` of the polygon's vertex set.
    pub vertex_factors: Vec<f64>,
}

impl RateReport {
    pub fn ellipse(&self) -> Result<EllipseRegion> {
        EllipseRegion::new(self.d_star, self.a_star, self.b_star)
    }

    pub fn cheb_params(&self) -> Result<ChebParams> {
        ChebParams::new(self.d_star, self.c_sq_star)
    }
}

/// Optimal asymptotic rate over an ellipse:
/// `(d − √(d² + b² − a²))/(a − b)`, or `a/d` for a disc.
///
/// Evaluated in the conjugate form `(a + b)/(d + √(d² + b² − a²))`, which
/// is the same number and has no removable singularity at `a = b`.
pub fn ellipse_rho(e: &EllipseRegion) -> f64 {
    let (d, a, b) = (e.d(), e.a(), e.b());
    (a + b) / (d + (d * d + b * b - a * a).sqrt())
}

/// Fixed point of the Chebyshev step-size recursion:
/// `η = 2(d − √(d² − c²))/c²`, `β = dη − 1`, `α = 0`.
pub fn params_from_cheb(p: &ChebParams) -> MomentumParams {
    let d = p.d();
    let denom = d + p.origin_root();
    // rationalized forms: exact at c² = 0, no cancellation for small |c²|
    let eta = 2.0 / denom;
    let beta = p.c_sq() / (denom * denom);
    MomentumParams::momentum(eta, beta)
}

/// Inverse map: `d = (1 + β)/η`, `c² = 4β/η²`.
pub fn cheb_from_params(m: &MomentumParams) -> Result<ChebParams> {
    ensure_finite("eta", m.eta)?;
    ensure_finite("beta", m.beta)?;
    if m.eta <= 0.0 {
        return Err(Error::invalid("eta", m.eta, "step size must be positive"));
    }
    ChebParams::new((1.0 + m.beta) / m.eta, 4.0 * m.beta / (m.eta * m.eta))
}

/// Domain `[L/2, (μ+L)/2 − ε]` of the triangle objective.
pub fn k1_domain(s: &SpectrumBound) -> (f64, f64) {
    let (mu, l) = (s.mu(), s.lipschitz());
    (l / 2.0, (mu + l) / 2.0 - DOMAIN_CLIP * (mu + l))
}

/// Domain `((L−μ)/2 + ε, (L+μ)/2]` of the rectangle objective.
pub fn k2_domain(s: &SpectrumBound) -> (f64, f64) {
    let (mu, l) = (s.mu(), s.lipschitz());
    ((l - mu) / 2.0 + DOMAIN_CLIP * (mu + l), (l + mu) / 2.0)
}

fn check_domain(name: &'static str, x: f64, (lo, hi): (f64, f64)) -> Result<()> {
    ensure_finite(name, x)?;
    if x < lo || x > hi {
        return Err(Error::invalid(name, x, "outside objective domain"));
    }
    Ok(())
}

/// Ellipse centered at `d` through `L` and `μ + i√(L²−μ²)`:
/// `a = L − d`, `b² = (L+μ)(L−d)²/(L+μ−2d)`.
pub fn k1_ellipse(d: f64, s: &SpectrumBound) -> Result<EllipseRegion> {
    check_domain("d", d, k1_domain(s))?;
    let (mu, l) = (s.mu(), s.lipschitz());
    let a = l - d;
    let b = a * ((l + mu) / (l + mu - 2.0 * d)).sqrt();
    EllipseRegion::new(d, a, b)
}

/// Ellipse centered at `(L+μ)/2` with real semi-axis `a` through
/// `L + i√(L²−μ²)` and `μ + i√(L²−μ²)`:
/// `b² = (L²−μ²)a²/(a² − ((L−μ)/2)²)`.
pub fn k2_ellipse(a: f64, s: &SpectrumBound) -> Result<EllipseRegion> {
    check_domain("a", a, k2_domain(s))?;
    let (d, b) = k2_center_and_b(a, s);
    EllipseRegion::new(d, a, b)
}

fn k2_center_and_b(a: f64, s: &SpectrumBound) -> (f64, f64) {
    let (mu, l) = (s.mu(), s.lipschitz());
    let half_gap = (l - mu) / 2.0;
    let b_sq = (l * l - mu * mu) * a * a / ((a - half_gap) * (a + half_gap));
    ((l + mu) / 2.0, b_sq.sqrt())
}

/// Triangle objective as a function of the center `d`:
///
/// `(d − √(2d(L−d)²/(L+μ−2d) + d²)) / ((L−d)(1 − √((L+μ)/(L+μ−2d))))`.
pub fn k1_objective(d: f64, s: &SpectrumBound) -> Result<f64> {
    check_domain("d", d, k1_domain(s))?;
    let (mu, l) = (s.mu(), s.lipschitz());
    let gap = l + mu - 2.0 * d;
    let num = d - (2.0 * d * (l - d) * (l - d) / gap + d * d).sqrt();
    let den = (l - d) * (1.0 - ((l + mu) / gap).sqrt());
    Ok(num / den)
}

/// Rectangle objective as a function of the real semi-axis `a`, with
/// `d = (L+μ)/2`: `(d − √(d² + b² − a²)) / (a − b)`.
pub fn k2_objective(a: f64, s: &SpectrumBound) -> Result<f64> {
    check_domain("a", a, k2_domain(s))?;
    let (d, b) = k2_center_and_b(a, s);
    let root = (d * d + b * b - a * a).sqrt();
    if (a - b).abs() <= 1e-12 * a {
        // disc: the quotient is 0/0, use the conjugate form
        return Ok((a + b) / (d + root));
    }
    Ok((d - root) / (a - b))
}

/// Minimizes the polygon objective and reports the optimal ellipse, the
/// matching momentum parameters and the per-vertex convergence factors.
pub fn solve_region_rate(s: &SpectrumBound, region: Region) -> Result<RateReport> {
    if s.kappa() <= 1.0 {
        return Err(Error::invalid("kappa", s.kappa(), "must exceed 1"));
    }
    let (h1, h2) = sandwich_vertices(s)?;

    let (ellipse, vertices) = match region {
        Region::K1 => {
            let (lo, hi) = k1_domain(s);
            let f = |d: f64| k1_objective(d, s).unwrap_or(f64::INFINITY);
            let best = grid_then_golden(f, lo, hi, SOLVER_GRID_POINTS, SOLVER_REL_TOL);
            (k1_ellipse(best.x, s)?, h1.vertices)
        }
        Region::K2 => {
            let (lo, hi) = k2_domain(s);
            let f = |a: f64| k2_objective(a, s).unwrap_or(f64::INFINITY);
            let best = grid_then_golden(f, lo, hi, SOLVER_GRID_POINTS, SOLVER_REL_TOL);
            (k2_ellipse(best.x, s)?, h2.vertices)
        }
    };

    let cheb = ChebParams::new(ellipse.d(), ellipse.c_sq())?;
    let vertex_factors = vertices
        .iter()
        .map(|&v| conv_factor(v, &cheb))
        .collect::<Result<Vec<_>>>()?;

    Ok(RateReport {
        region_tag: region,
        d_star: ellipse.d(),
        c_sq_star: ellipse.c_sq(),
        a_star: ellipse.a(),
        b_star: ellipse.b(),
        rho_hat: ellipse_rho(&ellipse),
        params: params_from_cheb(&cheb),
        vertex_factors,
    })
}

/// Best rate of any first-order method on strongly-convex quadratics:
/// `1 − 2μ/(μ+L)`.
pub fn lower_bound_rate(s: &SpectrumBound) -> f64 {
    1.0 - 2.0 * s.mu() / (s.mu() + s.lipschitz())
}

/// Sign of the optimal momentum on a polygon. On `K̂₁` the optimal ellipse
/// always has `b > a`; on `K̂₂` this is guaranteed only when `L² > μ² + μL`.
pub fn momentum_sign(s: &SpectrumBound, region: Region) -> MomentumSign {
    let (mu, l) = (s.mu(), s.lipschitz());
    let negative = match region {
        Region::K1 => l > mu,
        Region::K2 => l * l > mu * mu + mu * l,
    };
    if negative {
        MomentumSign::Negative
    } else {
        MomentumSign::Undetermined
    }
}

/// Closed-form bracket `[lower, upper]` on the optimal polygon rate.
///
/// * `K1`: `[1 − 2κ^{-3/2} − 24κ^{-2}, 1 − (√2/2)κ^{-3/2} + (9/4)κ^{-2}]`
/// * `K2`: `[1 − 2κ^{-3/2}, 1 − (√(2κ−1) − 1)/(2κ²)]`, lower end valid for `κ ≥ 4`.
pub fn rate_bracket(region: Region, kappa: f64) -> (f64, f64) {
    let k15 = kappa.powf(-1.5);
    let k2 = kappa.powi(-2);
    match region {
        Region::K1 => (
            1.0 - 2.0 * k15 - 24.0 * k2,
            1.0 - std::f64::consts::FRAC_1_SQRT_2 * k15 + 2.25 * k2,
        ),
        Region::K2 => (
            1.0 - 2.0 * k15,
            1.0 - ((2.0 * kappa - 1.0).sqrt() - 1.0) / (2.0 * kappa * kappa),
        ),
    }
}
