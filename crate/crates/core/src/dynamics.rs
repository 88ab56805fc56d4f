//! Diagonal quadratic minimax games and the first-order methods run on
//! them.
//!
//! The game `f(x, y) = ½xᵀAx + xᵀBy − ½yᵀCy` with diagonal `A`, `B`, `C`
//! has vector field `F(z) = [Ax + By; −Bx + Cy]` and its unique root at
//! `z* = 0`. Coordinates pair up into independent 2×2 blocks
//! `[[aᵢ, bᵢ], [−bᵢ, cᵢ]]`, so the Jacobian spectrum is available in
//! closed form.
//!
//! State vectors are laid out as `z = [x; y]`, each half of length `dim`.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{check_point, ChebParams, ComplexScalar};
use crate::error::{ensure_finite, Error, Result};
use crate::rates::{params_from_cheb, MomentumParams};
use crate::regions::{sandwich_vertices, SpectrumBound};

/// Distances below this are treated as converged.
pub const CONVERGED_DISTANCE: f64 = 1e-14;
/// Distances above this are treated as diverged.
pub const DIVERGED_DISTANCE: f64 = 1e12;
/// Default share of a trace used to fit its rate.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticGame {
    a_diag: Vec<f64>,
    b_diag: Vec<f64>,
    c_diag: Vec<f64>,
    seed: Option<u64>,
}

impl QuadraticGame {
    pub fn new(a_diag: Vec<f64>, b_diag: Vec<f64>, c_diag: Vec<f64>) -> Result<Self> {
        let dim = a_diag.len();
        if dim == 0 {
            return Err(Error::Degenerate("game needs at least one block"));
        }
        for len in [b_diag.len(), c_diag.len()] {
            if len != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: len,
                });
            }
        }
        for (&a, (&b, &c)) in a_diag.iter().zip(b_diag.iter().zip(&c_diag)) {
            ensure_finite("a", a)?;
            ensure_finite("b", b)?;
            ensure_finite("c", c)?;
            if a <= 0.0 {
                return Err(Error::invalid("a", a, "diagonal of A must be positive"));
            }
            if c <= 0.0 {
                return Err(Error::invalid("c", c, "diagonal of C must be positive"));
            }
            if b < 0.0 {
                return Err(Error::invalid("b", b, "diagonal of B must be nonnegative"));
            }
        }
        Ok(Self {
            a_diag,
            b_diag,
            c_diag,
            seed: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.a_diag.len()
    }

    /// Length of the stacked state `[x; y]`.
    pub fn state_len(&self) -> usize {
        2 * self.dim()
    }

    pub fn a_diag(&self) -> &[f64] {
        &self.a_diag
    }

    pub fn b_diag(&self) -> &[f64] {
        &self.b_diag
    }

    pub fn c_diag(&self) -> &[f64] {
        &self.c_diag
    }

    /// Seed the coupling matrix was drawn with, if it was generated.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The all-ones starting point `x₀ = 1`, `y₀ = 1`.
    pub fn ones(&self) -> Vec<f64> {
        vec![1.0; self.state_len()]
    }

    /// `F(z)` written into `out`.
    pub fn field_into(&self, z: &[f64], out: &mut [f64]) {
        let n = self.dim();
        let (x, y) = z.split_at(n);
        let (fx, fy) = out.split_at_mut(n);
        for i in 0..n {
            let (a, b, c) = (self.a_diag[i], self.b_diag[i], self.c_diag[i]);
            fx[i] = a * x[i] + b * y[i];
            fy[i] = -b * x[i] + c * y[i];
        }
    }

    pub fn field(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.check_state(z)?;
        let mut out = vec![0.0; z.len()];
        self.field_into(z, &mut out);
        Ok(out)
    }

    /// Eigenvalues `((a+c) ± √((a−c)² − 4b²))/2` of block `i`.
    pub fn block_eigenvalues(&self, i: usize) -> (ComplexScalar, ComplexScalar) {
        let (a, b, c) = (self.a_diag[i], self.b_diag[i], self.c_diag[i]);
        let disc = Complex64::new((a - c) * (a - c) - 4.0 * b * b, 0.0).sqrt();
        let mean = Complex64::new((a + c) / 2.0, 0.0);
        (mean + disc / 2.0, mean - disc / 2.0)
    }

    /// All `2·dim` Jacobian eigenvalues.
    pub fn spectrum(&self) -> Vec<ComplexScalar> {
        (0..self.dim())
            .flat_map(|i| {
                let (p, m) = self.block_eigenvalues(i);
                [p, m]
            })
            .collect()
    }

    /// Largest singular value of block `i`.
    pub fn block_norm(&self, i: usize) -> f64 {
        let (a, b, c) = (self.a_diag[i], self.b_diag[i], self.c_diag[i]);
        let fro_sq = a * a + 2.0 * b * b + c * c;
        let det = a * c + b * b;
        let gap = (fro_sq * fro_sq - 4.0 * det * det).max(0.0).sqrt();
        ((fro_sq + gap) / 2.0).sqrt()
    }

    fn check_state(&self, z: &[f64]) -> Result<()> {
        if z.len() != self.state_len() {
            return Err(Error::DimensionMismatch {
                expected: self.state_len(),
                got: z.len(),
            });
        }
        Ok(())
    }
}

/// The benchmark game: `A = C = diag(1, 1/2, …, 1/half_dim)` and `B`
/// diagonal with entries uniform on `[0, 1)`.
///
/// `B` is drawn from ChaCha8 seeded with `seed` via `seed_from_u64`, one
/// `f64` per entry in order, so a given seed always yields the same game.
pub fn build_game(half_dim: usize, seed: u64) -> Result<QuadraticGame> {
    if half_dim == 0 {
        return Err(Error::Degenerate("half_dim must be at least 1"));
    }
    let diag: Vec<f64> = (1..=half_dim).map(|i| 1.0 / i as f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b_diag: Vec<f64> = (0..half_dim).map(|_| rng.random::<f64>()).collect();
    let mut game = QuadraticGame::new(diag.clone(), b_diag, diag)?;
    game.seed = Some(seed);
    Ok(game)
}

/// `(μ, L)` such that every Jacobian eigenvalue lies in the closed `K̂`:
/// `μ` is the smallest real part over all blocks and `L` the largest block
/// norm (never below the largest eigenvalue modulus).
pub fn game_spectrum_bounds(g: &QuadraticGame) -> Result<SpectrumBound> {
    let mut mu = f64::INFINITY;
    let mut lipschitz: f64 = 0.0;
    for i in 0..g.dim() {
        if g.a_diag[i].min(g.c_diag[i]) <= 0.0 {
            return Err(Error::invalid(
                "min(a, c)",
                g.a_diag[i].min(g.c_diag[i]),
                "must be positive",
            ));
        }
        let (p, m) = g.block_eigenvalues(i);
        mu = mu.min(p.re).min(m.re);
        lipschitz = lipschitz.max(g.block_norm(i)).max(p.norm()).max(m.norm());
    }
    SpectrumBound::new(mu, lipschitz)
}

/// One step of `z⁺ = (1+β)z − βz⁻ − ηF((1+α)z − αz⁻)`.
pub fn step(g: &QuadraticGame, m: &MomentumParams, z_curr: &[f64], z_prev: &[f64]) -> Result<Vec<f64>> {
    g.check_state(z_curr)?;
    g.check_state(z_prev)?;
    let mut probe = vec![0.0; z_curr.len()];
    let mut field = vec![0.0; z_curr.len()];
    let mut next = vec![0.0; z_curr.len()];
    step_into(g, m, z_curr, z_prev, &mut probe, &mut field, &mut next);
    Ok(next)
}

fn step_into(
    g: &QuadraticGame,
    m: &MomentumParams,
    z_curr: &[f64],
    z_prev: &[f64],
    probe: &mut [f64],
    field: &mut [f64],
    next: &mut [f64],
) {
    let MomentumParams { eta, beta, alpha } = *m;
    for ((p, &z), &zp) in probe.iter_mut().zip(z_curr).zip(z_prev) {
        *p = (1.0 + alpha) * z - alpha * zp;
    }
    g.field_into(probe, field);
    for (((n, &z), &zp), &f) in next.iter_mut().zip(z_curr).zip(z_prev).zip(field.iter()) {
        *n = (1.0 + beta) * z - beta * zp - eta * f;
    }
}

/// Step sizes and momenta that reproduce the Chebyshev residual
/// `T_t((d−λ)/c)/T_t(d/c)` exactly.
///
/// Entry 0 is the degree-one step `(1/d, 0)`. From entry 1 on,
/// `η_t = 1/(d − (c²/4)η_{t−1})` and `β_t = dη_t − 1`, where the
/// recursion starts from `η_0 = (2/c)·T₀(d/c)/T₁(d/c) = 2/d`. Only ratios
/// are propagated, so there is no overflow for large `t`.
#[derive(Debug, Clone)]
pub struct ChebSchedule {
    d: f64,
    quarter_c_sq: f64,
    ratio: f64,
    emitted_first: bool,
}

impl ChebSchedule {
    pub fn new(p: &ChebParams) -> Self {
        Self {
            d: p.d(),
            quarter_c_sq: p.c_sq() / 4.0,
            ratio: 2.0 / p.d(),
            emitted_first: false,
        }
    }
}

impl Iterator for ChebSchedule {
    type Item = MomentumParams;

    fn next(&mut self) -> Option<MomentumParams> {
        if !self.emitted_first {
            self.emitted_first = true;
            return Some(MomentumParams::gradient(1.0 / self.d));
        }
        let eta = 1.0 / (self.d - self.quarter_c_sq * self.ratio);
        self.ratio = eta;
        Some(MomentumParams::momentum(eta, self.d * eta - 1.0))
    }
}

pub fn cheb_schedule(p: &ChebParams, t_max: usize) -> Result<Vec<MomentumParams>> {
    if t_max == 0 {
        return Err(Error::Degenerate("schedule length must be at least 1"));
    }
    Ok(ChebSchedule::new(p).take(t_max).collect())
}

/// Returns `max |x|` over the roots of `x² − px + q`.
fn max_root_modulus(p: Complex64, q: Complex64) -> f64 {
    let half = p / 2.0;
    let s = (half * half - q).sqrt();
    (half + s).norm().max((half - s).norm())
}

/// Per-eigenvalue spectral radius of the general update: the larger root
/// modulus of `x² − (1 + β − (1+α)ηλ)x + (β − αηλ)`.
pub fn iteration_spectral_radius(lambda: ComplexScalar, m: &MomentumParams) -> Result<f64> {
    check_point(lambda)?;
    let eta_lambda = m.eta * lambda;
    let p = 1.0 + m.beta - (1.0 + m.alpha) * eta_lambda;
    let q = m.beta - m.alpha * eta_lambda;
    Ok(max_root_modulus(p, q))
}

/// Spectral radius of the momentum companion matrix
/// `[[1 + β − ηλ, −β], [1, 0]]`. Only defined for `α = 0`.
pub fn companion_spectral_radius(lambda: ComplexScalar, m: &MomentumParams) -> Result<f64> {
    if m.alpha != 0.0 {
        return Err(Error::invalid("alpha", m.alpha, "companion form requires alpha = 0"));
    }
    iteration_spectral_radius(lambda, m)
}

/// Largest per-eigenvalue radius over the actual spectrum of a game.
pub fn game_radius(g: &QuadraticGame, m: &MomentumParams) -> f64 {
    g.spectrum()
        .into_iter()
        .map(|l| iteration_spectral_radius(l, m).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// Worst per-eigenvalue radius over `K̂`: the `K̂₁` vertices `L` and
/// `μ + i√(L²−μ²)` plus `n_samples` points on the upper half of `∂K̂`,
/// split between the arc `|λ| = L` and the chord `Re λ = μ`. Real
/// parameters make the radius symmetric under conjugation.
pub fn worst_case_radius(s: &SpectrumBound, m: &MomentumParams, n_samples: usize) -> Result<f64> {
    if n_samples < 64 {
        return Err(Error::invalid(
            "n_samples",
            n_samples as f64,
            "need at least 64 samples",
        ));
    }
    let (mu, l) = (s.mu(), s.lipschitz());
    let h = s.chord_height();
    let mut points: Vec<ComplexScalar> = Vec::with_capacity(n_samples + 2);
    if l > mu {
        let (h1, _) = sandwich_vertices(s)?;
        points.extend(h1.vertices);
    } else {
        points.push(Complex64::new(l, 0.0));
    }
    let arc = n_samples / 2;
    let chord = n_samples - arc;
    let corner = h.atan2(mu);
    for k in 0..arc {
        let theta = corner * k as f64 / (arc - 1) as f64;
        points.push(Complex64::from_polar(l, theta));
    }
    for k in 0..chord {
        points.push(Complex64::new(mu, h * k as f64 / (chord - 1) as f64));
    }
    points
        .into_iter()
        .map(|p| iteration_spectral_radius(p, m))
        .try_fold(0.0_f64, |acc, r| r.map(|r| acc.max(r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MethodKind {
    Gda,
    Ogda,
    NegMomentum,
    /// Heavy-ball momentum with no sign restriction on `β`.
    Momentum,
    ChebSchedule,
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodKind::Gda => "GDA",
            MethodKind::Ogda => "OGDA",
            MethodKind::NegMomentum => "NM",
            MethodKind::Momentum => "HB",
            MethodKind::ChebSchedule => "CHEB",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MethodSpec {
    Gda {
        eta: f64,
    },
    Ogda {
        eta: f64,
    },
    /// Requires `β < 0`.
    NegMomentum {
        eta: f64,
        beta: f64,
    },
    Momentum {
        eta: f64,
        beta: f64,
    },
    ChebSchedule(ChebParams),
}

impl MethodSpec {
    pub fn kind(&self) -> MethodKind {
        match self {
            MethodSpec::Gda { .. } => MethodKind::Gda,
            MethodSpec::Ogda { .. } => MethodKind::Ogda,
            MethodSpec::NegMomentum { .. } => MethodKind::NegMomentum,
            MethodSpec::Momentum { .. } => MethodKind::Momentum,
            MethodSpec::ChebSchedule(_) => MethodKind::ChebSchedule,
        }
    }

    /// Constant parameters; for a schedule, its limit.
    pub fn params(&self) -> MomentumParams {
        match *self {
            MethodSpec::Gda { eta } => MomentumParams::gradient(eta),
            MethodSpec::Ogda { eta } => MomentumParams::optimistic(eta),
            MethodSpec::NegMomentum { eta, beta } | MethodSpec::Momentum { eta, beta } => {
                MomentumParams::momentum(eta, beta)
            }
            MethodSpec::ChebSchedule(p) => params_from_cheb(&p),
        }
    }

    /// Heavy-ball spec for fixed momentum parameters; negative `β` maps to
    /// [`MethodSpec::NegMomentum`].
    pub fn from_params(m: &MomentumParams) -> Result<Self> {
        if m.alpha != 0.0 {
            return Err(Error::invalid("alpha", m.alpha, "momentum family requires alpha = 0"));
        }
        Ok(if m.beta < 0.0 {
            MethodSpec::NegMomentum {
                eta: m.eta,
                beta: m.beta,
            }
        } else {
            MethodSpec::Momentum {
                eta: m.eta,
                beta: m.beta,
            }
        })
    }

    fn validate(&self) -> Result<()> {
        let eta = self.params().eta;
        ensure_finite("eta", eta)?;
        ensure_finite("beta", self.params().beta)?;
        if let MethodSpec::NegMomentum { beta, .. } = *self {
            if beta >= 0.0 {
                return Err(Error::invalid("beta", beta, "negative momentum requires beta < 0"));
            }
        }
        Ok(())
    }
}

/// Distances `‖z_t − z*‖₂` of one run, starting at `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub distances: Vec<f64>,
    pub iterations: usize,
    pub seed: Option<u64>,
    pub method: MethodSpec,
    pub diverged: bool,
}

fn norm(z: &[f64]) -> f64 {
    z.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Runs up to `t_max` iterations from `z₀` (with `z₋₁ = z₀`), stopping early
/// once the distance drops below [`CONVERGED_DISTANCE`] or exceeds
/// [`DIVERGED_DISTANCE`].
pub fn simulate(g: &QuadraticGame, spec: &MethodSpec, z0: &[f64], t_max: usize) -> Result<Trace> {
    if t_max == 0 {
        return Err(Error::Degenerate("t_max must be at least 1"));
    }
    g.check_state(z0)?;
    spec.validate()?;

    let mut schedule = match spec {
        MethodSpec::ChebSchedule(p) => Some(ChebSchedule::new(p)),
        _ => None,
    };
    let fixed = spec.params();

    let n = z0.len();
    let mut prev = z0.to_vec();
    let mut curr = z0.to_vec();
    let mut next = vec![0.0; n];
    let mut probe = vec![0.0; n];
    let mut field = vec![0.0; n];

    let mut distances = Vec::with_capacity(t_max + 1);
    let mut diverged = false;
    let start = norm(z0);
    distances.push(start);

    if start >= CONVERGED_DISTANCE {
        for _ in 0..t_max {
            let m = match schedule.as_mut() {
                Some(s) => s.next().expect("schedule is infinite"),
                None => fixed,
            };
            step_into(g, &m, &curr, &prev, &mut probe, &mut field, &mut next);
            std::mem::swap(&mut prev, &mut curr);
            std::mem::swap(&mut curr, &mut next);
            let dist = norm(&curr);
            if !dist.is_finite() || dist > DIVERGED_DISTANCE {
                diverged = true;
                distances.push(dist);
                break;
            }
            distances.push(dist);
            if dist < CONVERGED_DISTANCE {
                break;
            }
        }
    }

    Ok(Trace {
        iterations: distances.len() - 1,
        distances,
        seed: g.seed(),
        method: *spec,
        diverged,
    })
}

/// Empirical rate `exp(slope)` of a least-squares fit of `ln ‖z_t‖`
/// against `t` over the last `tail_fraction` of the trace. Entries that
/// are non-finite, nonpositive or at the convergence floor are skipped.
pub fn measure_rate(trace: &Trace, tail_fraction: f64) -> Result<f64> {
    ensure_finite("tail_fraction", tail_fraction)?;
    if tail_fraction <= 0.0 || tail_fraction > 1.0 {
        return Err(Error::invalid("tail_fraction", tail_fraction, "must lie in (0, 1]"));
    }
    let n = trace.distances.len();
    let start = ((n as f64) * (1.0 - tail_fraction)).floor() as usize;
    let points: Vec<(f64, f64)> = trace.distances[start.min(n)..]
        .iter()
        .enumerate()
        .filter(|(_, &d)| d.is_finite() && d >= CONVERGED_DISTANCE)
        .map(|(i, &d)| ((start + i) as f64, d.ln()))
        .collect();
    if points.len() < 10 {
        return Err(Error::RateUndefined(
            "fewer than 10 usable distances in the tail window",
        ));
    }
    let count = points.len() as f64;
    let t_mean = points.iter().map(|p| p.0).sum::<f64>() / count;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / count;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(t, y) in &points {
        sxy += (t - t_mean) * (y - y_mean);
        sxx += (t - t_mean) * (t - t_mean);
    }
    Ok((sxy / sxx).exp())
}

/// Envelope `(1 − Δ/2)^t` for an iteration with spectral radius `1 − Δ`.
pub fn local_rate_certificate(radius: f64, t: usize) -> Result<f64> {
    ensure_finite("radius", radius)?;
    if !(0.0..1.0).contains(&radius) {
        return Err(Error::invalid("radius", radius, "must lie in [0, 1)"));
    }
    let delta = 1.0 - radius;
    Ok((1.0 - delta / 2.0).powi(t as i32))
}

/// Iterations needed to reach a target distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HittingTime {
    /// Reached within the trace.
    Observed(usize),
    /// Not reached; extrapolated from the fitted tail rate.
    Projected(f64),
    /// Not reached and the fitted rate is not contracting.
    Never,
}

impl HittingTime {
    pub fn iterations(&self) -> f64 {
        match *self {
            HittingTime::Observed(t) => t as f64,
            HittingTime::Projected(t) => t,
            HittingTime::Never => f64::INFINITY,
        }
    }
}

pub fn first_hit(trace: &Trace, tol: f64) -> Option<usize> {
    trace.distances.iter().position(|&d| d <= tol)
}

/// First iteration with distance `≤ tol`, or a log-linear projection from
/// the last recorded distance at the rate fitted on the tail.
pub fn hitting_time(trace: &Trace, tol: f64, tail_fraction: f64) -> Result<HittingTime> {
    if let Some(t) = first_hit(trace, tol) {
        return Ok(HittingTime::Observed(t));
    }
    if trace.diverged {
        return Ok(HittingTime::Never);
    }
    let rate = measure_rate(trace, tail_fraction)?;
    if rate >= 1.0 {
        return Ok(HittingTime::Never);
    }
    let last = *trace.distances.last().expect("trace is never empty");
    let extra = (tol / last).ln() / rate.ln();
    Ok(HittingTime::Projected(trace.iterations as f64 + extra))
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

/// Number of step sizes tried by the grid tuners.
pub const TUNING_GRID: usize = 64;

fn best_on_grid(g: &QuadraticGame, candidates: impl Iterator<Item = MomentumParams>) -> MomentumParams {
    candidates
        .map(|m| (game_radius(g, &m), m))
        .fold(None, |best: Option<(f64, MomentumParams)>, cand| match best {
            Some(b) if b.0 <= cand.0 => Some(b),
            _ => Some(cand),
        })
        .expect("grid is nonempty")
        .1
}

/// GDA step size minimizing the game's spectral radius over 64 log-spaced
/// values in `[μ/(10L²), 2/L]`.
pub fn tune_gda(g: &QuadraticGame, s: &SpectrumBound) -> MomentumParams {
    let (mu, l) = (s.mu(), s.lipschitz());
    best_on_grid(
        g,
        log_grid(mu / (10.0 * l * l), 2.0 / l, TUNING_GRID).map(MomentumParams::gradient),
    )
}

/// OGDA step size over 64 log-spaced values in `[1/(10L), 1/L]`.
pub fn tune_ogda(g: &QuadraticGame, s: &SpectrumBound) -> MomentumParams {
    let l = s.lipschitz();
    best_on_grid(
        g,
        log_grid(1.0 / (10.0 * l), 1.0 / l, TUNING_GRID).map(MomentumParams::optimistic),
    )
}

/// Grid search for negative momentum: the GDA step grid crossed with 32
/// momenta evenly spaced in `[−0.99, −0.01]`.
pub fn tune_negative_momentum(g: &QuadraticGame, s: &SpectrumBound) -> MomentumParams {
    let (mu, l) = (s.mu(), s.lipschitz());
    let etas: Vec<f64> = log_grid(mu / (10.0 * l * l), 2.0 / l, TUNING_GRID).collect();
    let candidates = etas
        .into_iter()
        .flat_map(|eta| (0..32).map(move |k| MomentumParams::momentum(eta, -0.99 + 0.98 * k as f64 / 31.0)));
    best_on_grid(g, candidates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn block(a: f64, b: f64, c: f64) -> QuadraticGame {
        QuadraticGame::new(vec![a], vec![b], vec![c]).unwrap()
    }

    #[test]
    fn build_game_shape() {
        let g = build_game(100, 7).unwrap();
        assert_eq!(g.a_diag()[0], 1.0);
        assert_relative_eq!(g.a_diag()[99], 0.01);
        assert_eq!(g.a_diag(), g.c_diag());
        assert!(g.b_diag().iter().all(|&b| (0.0..1.0).contains(&b)));
        assert_eq!(g, build_game(100, 7).unwrap());
        assert_ne!(g.b_diag(), build_game(100, 8).unwrap().b_diag());
        assert_eq!(build_game(1, 3).unwrap().dim(), 1);
        assert!(build_game(0, 3).is_err());
    }

    #[test]
    fn game_validation() {
        assert!(QuadraticGame::new(vec![1.0], vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(QuadraticGame::new(vec![0.0], vec![0.0], vec![1.0]).is_err());
        assert!(QuadraticGame::new(vec![1.0], vec![-0.1], vec![1.0]).is_err());
        assert!(QuadraticGame::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn spectrum_bound_examples() {
        let g = QuadraticGame::new(vec![1.0, 3.0, 0.5], vec![0.0; 3], vec![2.0, 1.0, 4.0]).unwrap();
        let s = game_spectrum_bounds(&g).unwrap();
        assert_eq!((s.mu(), s.lipschitz()), (0.5, 4.0));

        let g = block(1.0, 1.0, 1.0);
        let (p, m) = g.block_eigenvalues(0);
        assert_relative_eq!(p.re, 1.0);
        assert_relative_eq!(p.im.abs(), 1.0);
        assert_relative_eq!(m.im, -p.im);
        let s = game_spectrum_bounds(&g).unwrap();
        assert_relative_eq!(s.mu(), 1.0);
        assert_relative_eq!(s.lipschitz(), 2f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn generated_spectra_are_certified() {
        for seed in 0..10 {
            let g = build_game(100, seed).unwrap();
            let s = game_spectrum_bounds(&g).unwrap();
            for l in g.spectrum() {
                assert!(crate::regions::khat_contains(&s, l), "seed {seed}: {l}");
            }
        }
    }

    #[test]
    fn block_norm_matches_direct_svd() {
        // M^T M for [[2, 0.7], [-0.7, 0.5]]
        let g = block(2.0, 0.7, 0.5);
        let (a, b, c) = (2.0f64, 0.7f64, 0.5f64);
        let (p, q, r) = (a * a + b * b, a * b - b * c, b * b + c * c);
        let top = ((p + r) + ((p - r).powi(2) + 4.0 * q * q).sqrt()) / 2.0;
        assert_relative_eq!(g.block_norm(0), top.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn step_examples() {
        let g = block(1.0, 0.5, 2.0);
        let zero = vec![0.0, 0.0];
        assert_eq!(
            step(&g, &MomentumParams::momentum(0.3, -0.4), &zero, &zero).unwrap(),
            zero
        );

        // GDA by hand: F(1, 2) = (1 + 1, -0.5 + 4) = (2, 3.5)
        let z = vec![1.0, 2.0];
        let next = step(&g, &MomentumParams::gradient(0.1), &z, &z).unwrap();
        assert_relative_eq!(next[0], 1.0 - 0.2);
        assert_relative_eq!(next[1], 2.0 - 0.35);

        let prev = vec![-1.0, 0.5];
        let next = step(&g, &MomentumParams::momentum(0.0, -0.3), &z, &prev).unwrap();
        assert_relative_eq!(next[0], 0.7 - 0.3);
        assert_relative_eq!(next[1], 0.7 * 2.0 + 0.3 * 0.5);

        // OGDA uses F at 2z − z⁻ = (3, 3.5): F = (3 + 1.75, -1.5 + 7)
        let next = step(&g, &MomentumParams::optimistic(0.1), &z, &prev).unwrap();
        assert_relative_eq!(next[0], 1.0 - 0.475);
        assert_relative_eq!(next[1], 2.0 - 0.55);

        assert!(step(&g, &MomentumParams::gradient(0.1), &[1.0], &z).is_err());
    }

    #[test]
    fn schedule_examples() {
        let p = ChebParams::new(2.0, 1.0).unwrap();
        let s = cheb_schedule(&p, 200).unwrap();
        assert_eq!(s[0], MomentumParams::gradient(0.5));
        assert_relative_eq!(s[1].eta, 4.0 / 7.0, max_relative = 1e-15);
        assert_relative_eq!(s[1].beta, 1.0 / 7.0, max_relative = 1e-14);
        let eta = 2.0 * (2.0 - 3f64.sqrt());
        assert!((s[199].eta - eta).abs() <= 1e-10);
        assert!((s[199].beta - (2.0 * eta - 1.0)).abs() <= 1e-10);
        assert!(cheb_schedule(&p, 0).is_err());
    }

    #[test]
    fn schedule_reproduces_chebyshev_residual() {
        // one eigenvalue λ: residual after t steps is T_t((d−λ)/c)/T_t(d/c)
        let (d, c_sq) = (3.0f64, 2.25f64);
        let c = c_sq.sqrt();
        let lambda = 1.7;
        let g = block(lambda, 0.0, lambda);
        let p = ChebParams::new(d, c_sq).unwrap();
        let trace = simulate(&g, &MethodSpec::ChebSchedule(p), &[1.0, 0.0], 12).unwrap();
        for t in 0..=12 {
            let expected = crate::chebyshev::cheb_t(t, Complex64::new((d - lambda) / c, 0.0))
                / crate::chebyshev::cheb_t(t, Complex64::new(d / c, 0.0));
            assert!((trace.distances[t] - expected.re.abs()).abs() <= 1e-12, "t = {t}");
        }
    }

    #[test]
    fn companion_radius_examples() {
        let m = MomentumParams::gradient(0.3);
        let l = Complex64::new(1.2, 0.7);
        assert_relative_eq!(
            companion_spectral_radius(l, &m).unwrap(),
            (1.0 - 0.3 * l).norm(),
            max_relative = 1e-14
        );

        let m = params_from_cheb(&ChebParams::new(2.0, 1.0).unwrap());
        assert_relative_eq!(
            companion_spectral_radius(Complex64::new(2.0, 0.0), &m).unwrap(),
            2.0 - 3f64.sqrt(),
            max_relative = 1e-12
        );

        let m = MomentumParams::momentum(0.4, -0.6);
        assert_relative_eq!(companion_spectral_radius(Complex64::new(0.0, 0.0), &m).unwrap(), 1.0);
        assert!(companion_spectral_radius(l, &MomentumParams::optimistic(0.1)).is_err());
    }

    #[test]
    fn worst_case_examples() {
        let s = SpectrumBound::new(1.0, 10.0).unwrap();
        // |1 − ηλ|² on |λ| = L peaks at Re λ = μ: 1 − 2μ²/L² + μ²/L²
        let eta = 1.0 / 100.0;
        let r = worst_case_radius(&s, &MomentumParams::gradient(eta), 256).unwrap();
        assert_relative_eq!(r, (1.0f64 - 1.0 / 100.0).sqrt(), max_relative = 1e-12);

        assert_eq!(worst_case_radius(&s, &MomentumParams::gradient(0.0), 64).unwrap(), 1.0);
        assert!(worst_case_radius(&s, &MomentumParams::gradient(0.1), 10).is_err());
    }

    #[test]
    fn simulate_examples() {
        let g = build_game(5, 1).unwrap();
        let t = simulate(&g, &MethodSpec::Gda { eta: 0.1 }, &[0.0; 10], 50).unwrap();
        assert!(t.distances.iter().all(|&d| d == 0.0));

        let g = block(1.0, 0.0, 1.0);
        let t = simulate(&g, &MethodSpec::Gda { eta: 1.0 }, &[1.0, 1.0], 10).unwrap();
        assert_eq!(t.distances[1], 0.0);
        assert_eq!(t.iterations, 1);

        let t = simulate(&g, &MethodSpec::Gda { eta: 5.0 }, &[1.0, 1.0], 1000).unwrap();
        assert!(t.diverged);

        let g = build_game(3, 2).unwrap();
        let t = simulate(&g, &MethodSpec::Ogda { eta: 0.1 }, &g.ones(), 1).unwrap();
        assert_eq!(t.distances.len(), 2);
        assert_eq!(t.seed, Some(2));

        assert!(simulate(&g, &MethodSpec::NegMomentum { eta: 0.1, beta: 0.2 }, &g.ones(), 5).is_err());
        assert!(simulate(&g, &MethodSpec::Gda { eta: 0.1 }, &g.ones(), 0).is_err());
    }

    #[test]
    fn blocks_evolve_independently() {
        let g = build_game(4, 11).unwrap();
        let m = MomentumParams::new(0.3, -0.2, 0.5);
        let mut prev = g.ones();
        prev[2] = 0.3;
        let mut curr = g.ones();
        curr[5] = -0.7;
        for _ in 0..30 {
            let next = step(&g, &m, &curr, &prev).unwrap();
            for i in 0..g.dim() {
                let sub = block(g.a_diag()[i], g.b_diag()[i], g.c_diag()[i]);
                let small = step(&sub, &m, &[curr[i], curr[4 + i]], &[prev[i], prev[4 + i]]).unwrap();
                assert!((small[0] - next[i]).abs() <= 1e-12);
                assert!((small[1] - next[4 + i]).abs() <= 1e-12);
            }
            prev = curr;
            curr = next;
        }
    }

    fn trace_of(distances: Vec<f64>) -> Trace {
        Trace {
            iterations: distances.len() - 1,
            distances,
            seed: None,
            method: MethodSpec::Gda { eta: 1.0 },
            diverged: false,
        }
    }

    #[test]
    fn measure_rate_examples() {
        let t = trace_of((0..200).map(|k| 0.9f64.powi(k)).collect());
        assert!((measure_rate(&t, 0.5).unwrap() - 0.9).abs() <= 1e-6);
        assert!(measure_rate(&trace_of(vec![0.0; 100]), 0.5).is_err());
        assert!(measure_rate(&t, 0.0).is_err());
        assert!(measure_rate(&t, 1.5).is_err());
    }

    #[test]
    fn hitting_time_projection() {
        let t = trace_of((0..100).map(|k| 0.9f64.powi(k)).collect());
        assert_eq!(hitting_time(&t, 0.5, 0.5).unwrap(), HittingTime::Observed(7));
        let target: f64 = 1e-10;
        let expected = target.ln() / 0.9f64.ln();
        let HittingTime::Projected(p) = hitting_time(&t, target, 0.5).unwrap() else {
            panic!("expected projection");
        };
        assert!((p - expected).abs() <= 1e-6 * expected);
    }

    #[test]
    fn certificate_examples() {
        assert_eq!(local_rate_certificate(0.9, 0).unwrap(), 1.0);
        assert_relative_eq!(local_rate_certificate(0.9, 10).unwrap(), 0.95f64.powi(10));
        assert!((local_rate_certificate(0.9, 10).unwrap() - 0.598737).abs() < 1e-6);
        assert!(local_rate_certificate(1.0, 3).is_err());
    }

    #[test]
    fn tuners_stay_in_grid() {
        let g = build_game(20, 0).unwrap();
        let s = game_spectrum_bounds(&g).unwrap();
        let (mu, l) = (s.mu(), s.lipschitz());
        let gda = tune_gda(&g, &s);
        assert!(gda.eta >= mu / (10.0 * l * l) * (1.0 - 1e-12) && gda.eta <= 2.0 / l * (1.0 + 1e-12));
        let og = tune_ogda(&g, &s);
        assert_eq!(og.alpha, 1.0);
        assert!(game_radius(&g, &og) < 1.0);
        let nm = tune_negative_momentum(&g, &s);
        assert!(nm.beta < 0.0);
        assert!(game_radius(&g, &nm) <= game_radius(&g, &gda) + 1e-12);
    }
}
