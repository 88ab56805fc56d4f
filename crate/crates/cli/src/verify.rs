//! Self-checks run by `negmom verify`. Each check returns a short summary
//! on success or its first counterexample on failure.

use std::io::Write;

use negmom::chebyshev::conv_factor;
use negmom::dynamics::companion_spectral_radius;
use negmom::rates::{cheb_from_params, ellipse_rho, params_from_cheb, rate_bracket, solve_region_rate};
use negmom::regions::{khat_contains, sandwich_vertices};
use negmom::{ChebParams, ComplexScalar, EllipseRegion, MomentumParams, Region, SpectrumBound};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::VerifyArgs;
use crate::CliError;

const CHECK_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(&Harness) -> Result<String, String>;

/// Shared state: the optional fault flips `β` wherever momentum
/// parameters are derived, which every parameter-dependent check must catch.
pub struct Harness {
    fault: bool,
}

impl Harness {
    fn derive(&self, m: MomentumParams) -> MomentumParams {
        if self.fault {
            MomentumParams { beta: -m.beta, ..m }
        } else {
            m
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(CHECK_SEED ^ stream)
    }
}

const CHECKS: [(&str, CheckFn); 6] = [
    ("boundary-constancy", boundary_constancy),
    ("companion-equivalence", companion_equivalence),
    ("round-trip", round_trip),
    ("vertex-equality", vertex_equality),
    ("sandwich", sandwich),
    ("rate-bracket", rate_bracket_check),
];

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn boundary_constancy(h: &Harness) -> Result<String, String> {
    let mut rng = h.rng(1);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let d = rng.random_range(0.5..50.0);
        let a = d * rng.random_range(0.05..0.95);
        let b = d * rng.random_range(0.01..2.5);
        let e = EllipseRegion::new(d, a, b).map_err(|e| e.to_string())?;
        let p = ChebParams::new(d, e.c_sq()).map_err(|e| e.to_string())?;
        let rho = ellipse_rho(&e);
        for k in 0..720 {
            let lambda = e.boundary_point(k as f64 * std::f64::consts::TAU / 720.0);
            let r = conv_factor(lambda, &p).map_err(|e| e.to_string())?;
            let gap = rel_gap(r, rho);
            if gap > 1e-9 {
                return Err(format!(
                    "ellipse (d={d}, a={a}, b={b}) at {lambda}: r = {r}, expected {rho}"
                ));
            }
            worst = worst.max(gap);
        }
    }
    Ok(format!("10 ellipses x 720 points, max relative spread {worst:.1e}"))
}

fn random_cheb(rng: &mut ChaCha8Rng) -> ChebParams {
    let d = rng.random_range(0.1..100.0);
    let c_sq = d * d * rng.random_range(-20.0..0.99);
    ChebParams::new(d, c_sq).expect("sampled inside the valid domain")
}

fn companion_equivalence(h: &Harness) -> Result<String, String> {
    let mut rng = h.rng(2);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let p = random_cheb(&mut rng);
        let lambda = ComplexScalar::new(p.d() * rng.random_range(1e-3..3.0), p.d() * rng.random_range(-3.0..3.0));
        let m = h.derive(params_from_cheb(&p));
        let cheb = conv_factor(lambda, &p).map_err(|e| e.to_string())?;
        let companion = companion_spectral_radius(lambda, &m).map_err(|e| e.to_string())?;
        let gap = rel_gap(cheb, companion);
        if gap > 1e-8 {
            return Err(format!(
                "lambda={lambda}, d={}, c^2={}: chebyshev {cheb} vs companion {companion}",
                p.d(),
                p.c_sq()
            ));
        }
        worst = worst.max(gap);
    }
    Ok(format!("1000 samples, max relative gap {worst:.1e}"))
}

fn round_trip(h: &Harness) -> Result<String, String> {
    let mut rng = h.rng(3);
    for _ in 0..1000 {
        let p = random_cheb(&mut rng);
        let m = h.derive(params_from_cheb(&p));
        let back = cheb_from_params(&m).map_err(|e| format!("d={}, c^2={}: {e}", p.d(), p.c_sq()))?;
        let c_ok = rel_gap(back.c_sq(), p.c_sq()) <= 1e-12 || (back.c_sq() - p.c_sq()).abs() <= 1e-15 * p.d() * p.d();
        if rel_gap(back.d(), p.d()) > 1e-12 || !c_ok {
            return Err(format!(
                "(d, c^2) = ({}, {}) came back as ({}, {})",
                p.d(),
                p.c_sq(),
                back.d(),
                back.c_sq()
            ));
        }
    }
    Ok("1000 samples within 1e-12".into())
}

fn vertex_equality(h: &Harness) -> Result<String, String> {
    let mut worst = 0.0_f64;
    for kappa in [1.5, 2.0, 10.0, 100.0, 1000.0] {
        let s = SpectrumBound::from_kappa(kappa).map_err(|e| e.to_string())?;
        let (h1, h2) = sandwich_vertices(&s).map_err(|e| e.to_string())?;
        for (region, verts) in [(Region::K1, h1), (Region::K2, h2)] {
            let r = solve_region_rate(&s, region).map_err(|e| e.to_string())?;
            let m = h.derive(r.params);
            let factors = verts
                .vertices
                .iter()
                .map(|&v| companion_spectral_radius(v, &m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let hi = factors.iter().cloned().fold(f64::MIN, f64::max);
            let lo = factors.iter().cloned().fold(f64::MAX, f64::min);
            if hi - lo > 1e-6 {
                return Err(format!("{region} at kappa={kappa}: vertex factors {factors:?}"));
            }
            worst = worst.max(hi - lo);
        }
    }
    Ok(format!("5 kappas x 2 regions, max spread {worst:.1e}"))
}

fn sandwich(h: &Harness) -> Result<String, String> {
    let mut rng = h.rng(5);
    for kappa in [1.2, 2.0, 10.0, 100.0] {
        let s = SpectrumBound::from_kappa(kappa).map_err(|e| e.to_string())?;
        let height = s.chord_height();
        for _ in 0..2000 {
            let lambda = ComplexScalar::new(rng.random_range(1.0..=kappa), rng.random_range(-height..=height));
            if s.k1_contains(lambda) && !khat_contains(&s, lambda) {
                return Err(format!("kappa={kappa}: {lambda} in K1 but not in K"));
            }
            if khat_contains(&s, lambda) && !s.k2_contains(lambda) {
                return Err(format!("kappa={kappa}: {lambda} in K but not in K2"));
            }
        }
    }
    Ok("4 kappas x 2000 points".into())
}

fn rate_bracket_check(_: &Harness) -> Result<String, String> {
    for kappa in [10.0, 100.0, 1000.0] {
        let s = SpectrumBound::from_kappa(kappa).map_err(|e| e.to_string())?;
        for region in [Region::K1, Region::K2] {
            let rho = solve_region_rate(&s, region).map_err(|e| e.to_string())?.rho_hat;
            let (lo, hi) = rate_bracket(region, kappa);
            if !(lo..=hi).contains(&rho) {
                return Err(format!("{region} at kappa={kappa}: {rho} outside [{lo}, {hi}]"));
            }
        }
    }
    Ok("kappa in {10, 100, 1000}, both regions".into())
}

pub fn run_checks(inject_fault: bool) -> Vec<CheckOutcome> {
    let h = Harness { fault: inject_fault };
    CHECKS
        .iter()
        .map(|&(name, check)| match check(&h) {
            Ok(detail) => CheckOutcome {
                name,
                passed: true,
                detail,
            },
            Err(detail) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let outcomes = run_checks(a.inject_fault);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        let line = if o.passed {
            format!("PASS  {:<22} {}", o.name, o.detail)
        } else {
            format!("FAIL  {:<22} counterexample: {}", o.name, o.detail)
        };
        writeln!(stdout, "{line}").map_err(CliError::stdout)?;
    }
    writeln!(stdout, "{}/{} checks passed", outcomes.len() - failed, outcomes.len()).map_err(CliError::stdout)?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
