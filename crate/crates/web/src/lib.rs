//! Browser demo: three operations exposed through wasm-bindgen, each
//! returning a flat `Float64Array` that `www/index.html` draws on a canvas.
//!
//! The `*_values` functions hold the logic and run natively too; the
//! exported wrappers only convert errors.

use negmom::dynamics::{build_game, game_spectrum_bounds, iteration_spectral_radius, simulate, tune_gda, tune_ogda};
use negmom::rates::{lower_bound_rate, solve_region_rate};
use negmom::{ComplexScalar, MethodSpec, MomentumParams, Region, SpectrumBound};
use wasm_bindgen::prelude::*;

/// Values per row of [`rate_curve`].
pub const CURVE_STRIDE: usize = 8;

/// Methods of [`simulate_traces`], in output order.
pub const TRACE_METHODS: [&str; 3] = ["GDA", "NM", "OGDA"];

/// Rows `[κ, ρ̂(K̂₁), ρ̂(K̂₂), ρ_opt, η₁, β₁, η₂, β₂]` for `n` log-spaced
/// condition numbers in `[kappa_min, kappa_max]`.
pub fn rate_curve_values(kappa_min: f64, kappa_max: f64, n: usize) -> negmom::Result<Vec<f64>> {
    if !(kappa_min > 1.0 && kappa_max >= kappa_min && n >= 1) {
        return Err(negmom::Error::invalid(
            "kappa_min",
            kappa_min,
            "need 1 < kappa_min <= kappa_max, n >= 1",
        ));
    }
    let mut out = Vec::with_capacity(n * CURVE_STRIDE);
    for i in 0..n {
        let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
        let kappa = kappa_min * (kappa_max / kappa_min).powf(t);
        let s = SpectrumBound::from_kappa(kappa)?;
        let k1 = solve_region_rate(&s, Region::K1)?;
        let k2 = solve_region_rate(&s, Region::K2)?;
        out.extend_from_slice(&[
            kappa,
            k1.rho_hat,
            k2.rho_hat,
            lower_bound_rate(&s),
            k1.params.eta,
            k1.params.beta,
            k2.params.eta,
            k2.params.beta,
        ]);
    }
    Ok(out)
}

/// Spectral radius of the momentum iteration `(η, β)` on a `width × height`
/// grid over `[re_min, re_max] × [im_min, im_max]`, row-major from the top
/// (largest imaginary part) down.
pub fn radius_field_values(
    eta: f64,
    beta: f64,
    extent: [f64; 4],
    width: usize,
    height: usize,
) -> negmom::Result<Vec<f64>> {
    let [re_min, re_max, im_min, im_max] = extent;
    if width < 2 || height < 2 {
        return Err(negmom::Error::Degenerate("field needs at least 2x2 samples"));
    }
    let m = MomentumParams::momentum(eta, beta);
    let mut out = Vec::with_capacity(width * height);
    for row in 0..height {
        let im = im_max - (im_max - im_min) * row as f64 / (height - 1) as f64;
        for col in 0..width {
            let re = re_min + (re_max - re_min) * col as f64 / (width - 1) as f64;
            out.push(iteration_spectral_radius(ComplexScalar::new(re, im), &m)?);
        }
    }
    Ok(out)
}

/// Distance traces of tuned GDA, K̂₁-optimal negative momentum and tuned
/// OGDA on `build_game(half_dim, seed)`: `[κ, then 3 × (t_max + 1)]`
/// distances, NaN-padded after an early stop.
pub fn simulate_traces_values(half_dim: usize, seed: u64, t_max: usize) -> negmom::Result<Vec<f64>> {
    let g = build_game(half_dim, seed)?;
    let s = game_spectrum_bounds(&g)?;
    let z0 = g.ones();
    let specs = [
        MethodSpec::Gda {
            eta: tune_gda(&g, &s).eta,
        },
        MethodSpec::from_params(&solve_region_rate(&s, Region::K1)?.params)?,
        MethodSpec::Ogda {
            eta: tune_ogda(&g, &s).eta,
        },
    ];
    let mut out = Vec::with_capacity(1 + specs.len() * (t_max + 1));
    out.push(s.kappa());
    for spec in &specs {
        let trace = simulate(&g, spec, &z0, t_max)?;
        out.extend_from_slice(&trace.distances);
        out.resize(out.len() + t_max + 1 - trace.distances.len(), f64::NAN);
    }
    Ok(out)
}

fn js(e: negmom::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn rate_curve(kappa_min: f64, kappa_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    rate_curve_values(kappa_min, kappa_max, n).map_err(js)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn radius_field(
    eta: f64,
    beta: f64,
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
    width: usize,
    height: usize,
) -> Result<Vec<f64>, JsError> {
    radius_field_values(eta, beta, [re_min, re_max, im_min, im_max], width, height).map_err(js)
}

/// The seed is 32-bit on the JS side so it stays a plain number.
#[wasm_bindgen]
pub fn simulate_traces(half_dim: usize, seed: u32, t_max: usize) -> Result<Vec<f64>, JsError> {
    simulate_traces_values(half_dim, u64::from(seed), t_max).map_err(js)
}
