//! Optimal (negative) momentum for smooth, strongly-monotone games.
//!
//! The crate treats a first-order method on a linear vector field as a
//! residual polynomial and measures it through the asymptotic convergence
//! factor of shifted Chebyshev polynomials. Spectra of strongly-monotone,
//! Lipschitz games live in the region
//! `K̂ = { λ : |λ| ≤ L, Re λ ≥ μ }`; the [`rates`] module solves the
//! min-max rate problem on the inner triangle and outer rectangle that
//! sandwich `K̂`, and maps the optimal ellipse back to a step size and a
//! (negative) momentum parameter. [`dynamics`] runs the resulting methods
//! on diagonal quadratic games so the predictions can be checked.
//!
//! Modules:
//!
//! * [`chebyshev`]: complex Chebyshev evaluation and the pointwise
//!   convergence factor `r(λ; d, c²)`.
//! * [`regions`]: ellipses, `K̂`, its sandwich polygons, and the
//!   ρ-convergence region of a momentum method.
//! * [`rates`]: ellipse rates, parameter maps and the region solvers.
//! * [`dynamics`]: quadratic games, update rules, schedules, simulation.

pub mod chebyshev;
pub mod dynamics;
mod error;
pub mod minimize;
pub mod rates;
pub mod regions;

pub use chebyshev::{ChebParams, ComplexScalar};
pub use dynamics::{MethodKind, MethodSpec, QuadraticGame, Trace};
pub use error::{Error, Result};
pub use rates::{MomentumParams, MomentumSign, RateReport, Region};
pub use regions::{EllipseRegion, SpectrumBound, VertexSet};
