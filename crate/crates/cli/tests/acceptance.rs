//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the report is always
//! printed.

use std::process::Command;
use std::time::{Duration, Instant};

use negmom::chebyshev::{conv_factor, rate_equals_companion_check};
use negmom::dynamics::{
    build_game, companion_spectral_radius, game_radius, game_spectrum_bounds, hitting_time, local_rate_certificate,
    measure_rate, simulate, tune_gda, tune_ogda, HittingTime, DEFAULT_TAIL_FRACTION,
};
use negmom::rates::{params_from_cheb, rate_bracket, solve_region_rate};
use negmom::regions::sandwich_vertices;
use negmom::{
    ChebParams, ComplexScalar, EllipseRegion, MethodSpec, MomentumParams, QuadraticGame, Region, SpectrumBound,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BRACKET_KAPPAS: [f64; 3] = [10.0, 100.0, 1000.0];
const SIGN_KAPPAS: [f64; 3] = [2.0, 10.0, 100.0];
const SOLVE_BUDGET: Duration = Duration::from_secs(1);
const VERTEX_SPREAD_TOL: f64 = 1e-6;
const EQUIVALENCE_SAMPLES: usize = 1000;
const EQUIVALENCE_REL_TOL: f64 = 1e-8;
const BOUNDARY_ELLIPSES: usize = 10;
const BOUNDARY_POINTS: usize = 720;
const BOUNDARY_REL_TOL: f64 = 1e-9;
const GAME_HALF_DIM: usize = 100;
const GAME_SEEDS: [u64; 3] = [0, 1, 2];
const MIN_CERTIFIED_KAPPA: f64 = 50.0;
const T_MAX: usize = 5000;
const TARGET_DISTANCE: f64 = 1e-6;
const SIMULATION_BUDGET: Duration = Duration::from_secs(10);
const SCHEDULE_REL_TOL: f64 = 0.02;
const ENVELOPE_RUNS: usize = 20;
const ENVELOPE_FIT_STEPS: usize = 5;
const ENVELOPE_MAX_C: f64 = 1e3;
const LOWER_BOUND_EXPECTED: f64 = 0.818182;
const LOWER_BOUND_TOL: f64 = 1e-6;

type Verdict = (bool, String);

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn bracket(region: Region) -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for kappa in BRACKET_KAPPAS {
        let s = SpectrumBound::from_kappa(kappa).unwrap();
        let start = Instant::now();
        let rho = solve_region_rate(&s, region).unwrap().rho_hat;
        let elapsed = start.elapsed();
        let (lo, hi) = rate_bracket(region, kappa);
        let inside = lo <= rho && rho <= hi;
        ok &= inside && elapsed < SOLVE_BUDGET;
        notes.push(format!(
            "k={kappa}: {lo:.6} <= {rho:.6} <= {hi:.6} ({} ms)",
            elapsed.as_millis()
        ));
    }
    (ok, notes.join("; "))
}

fn c1_bracket_k1() -> Verdict {
    bracket(Region::K1)
}

fn c2_bracket_k2() -> Verdict {
    bracket(Region::K2)
}

fn c3_negative_momentum() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for kappa in SIGN_KAPPAS {
        let s = SpectrumBound::from_kappa(kappa).unwrap();
        for region in [Region::K1, Region::K2] {
            let beta = solve_region_rate(&s, region).unwrap().params.beta;
            ok &= beta < 0.0;
            notes.push(format!("{region} k={kappa}: {beta:.4}"));
        }
    }
    (ok, notes.join("; "))
}

fn c4_equal_vertex_rates() -> Verdict {
    let mut worst = 0.0_f64;
    for kappa in [1.5, 2.0, 10.0, 100.0, 1000.0] {
        let s = SpectrumBound::from_kappa(kappa).unwrap();
        let (h1, h2) = sandwich_vertices(&s).unwrap();
        for (region, verts) in [(Region::K1, h1), (Region::K2, h2)] {
            let r = solve_region_rate(&s, region).unwrap();
            // recomputed through the companion matrix, independent of the solver
            let factors: Vec<f64> = verts
                .vertices
                .iter()
                .map(|&v| companion_spectral_radius(v, &r.params).unwrap())
                .collect();
            let hi = factors.iter().cloned().fold(f64::MIN, f64::max);
            let lo = factors.iter().cloned().fold(f64::MAX, f64::min);
            worst = worst.max(hi - lo);
        }
    }
    (
        worst <= VERTEX_SPREAD_TOL,
        format!("max vertex spread {worst:.2e} over 5 kappas x 2 regions"),
    )
}

fn c5_companion_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    for _ in 0..EQUIVALENCE_SAMPLES {
        let d = rng.random_range(0.1..100.0);
        let c_sq = d * d * rng.random_range(-20.0..0.99);
        let p = ChebParams::new(d, c_sq).unwrap();
        let lambda = ComplexScalar::new(d * rng.random_range(1e-3..3.0), d * rng.random_range(-3.0..3.0));
        let (cheb, companion) = rate_equals_companion_check(lambda, &p).unwrap();
        worst = worst.max(rel_gap(cheb, companion));
    }
    (
        worst <= EQUIVALENCE_REL_TOL,
        format!("{EQUIVALENCE_SAMPLES} samples, max relative gap {worst:.2e}"),
    )
}

fn c6_boundary_constant() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0_f64;
    for _ in 0..BOUNDARY_ELLIPSES {
        let d = rng.random_range(0.5..50.0);
        let a = d * rng.random_range(0.05..0.95);
        let b = d * rng.random_range(0.01..2.5);
        let e = EllipseRegion::new(d, a, b).unwrap();
        let p = ChebParams::new(d, e.c_sq()).unwrap();
        let r: Vec<f64> = (0..BOUNDARY_POINTS)
            .map(|k| {
                let theta = k as f64 * std::f64::consts::TAU / BOUNDARY_POINTS as f64;
                conv_factor(e.boundary_point(theta), &p).unwrap()
            })
            .collect();
        let hi = r.iter().cloned().fold(f64::MIN, f64::max);
        let lo = r.iter().cloned().fold(f64::MAX, f64::min);
        worst = worst.max((hi - lo) / hi);
    }
    (
        worst <= BOUNDARY_REL_TOL,
        format!("{BOUNDARY_ELLIPSES} ellipses x {BOUNDARY_POINTS} points, max relative spread {worst:.2e}"),
    )
}

/// GDA, negative momentum and OGDA traces on one seeded game.
struct GameRuns {
    seed: u64,
    kappa: f64,
    gda: negmom::Trace,
    nm: negmom::Trace,
    ogda: negmom::Trace,
}

fn run_games() -> (Vec<GameRuns>, Duration) {
    let start = Instant::now();
    let runs = GAME_SEEDS
        .iter()
        .map(|&seed| {
            let g = build_game(GAME_HALF_DIM, seed).unwrap();
            let s = game_spectrum_bounds(&g).unwrap();
            let z0 = g.ones();
            let nm = MethodSpec::from_params(&solve_region_rate(&s, Region::K1).unwrap().params).unwrap();
            let gda = MethodSpec::Gda {
                eta: tune_gda(&g, &s).eta,
            };
            let ogda = MethodSpec::Ogda {
                eta: tune_ogda(&g, &s).eta,
            };
            GameRuns {
                seed,
                kappa: s.kappa(),
                gda: simulate(&g, &gda, &z0, T_MAX).unwrap(),
                nm: simulate(&g, &nm, &z0, T_MAX).unwrap(),
                ogda: simulate(&g, &ogda, &z0, T_MAX).unwrap(),
            }
        })
        .collect();
    (runs, start.elapsed())
}

fn describe(h: HittingTime) -> String {
    match h {
        HittingTime::Observed(t) => format!("{t}"),
        HittingTime::Projected(t) => format!("~{t:.0}*"),
        HittingTime::Never => "never".into(),
    }
}

fn c7_ordering(runs: &[GameRuns], elapsed: Duration) -> Verdict {
    let mut ok = elapsed < SIMULATION_BUDGET;
    let mut notes = Vec::new();
    for r in runs {
        let hit = |t: &negmom::Trace| hitting_time(t, TARGET_DISTANCE, DEFAULT_TAIL_FRACTION).unwrap();
        let (o, n, g) = (hit(&r.ogda), hit(&r.nm), hit(&r.gda));
        ok &= r.kappa >= MIN_CERTIFIED_KAPPA;
        ok &= o.iterations() < n.iterations() && n.iterations() < g.iterations();
        notes.push(format!(
            "seed {} (k={:.1}): OGDA {} < NM {} < GDA {}",
            r.seed,
            r.kappa,
            describe(o),
            describe(n),
            describe(g)
        ));
    }
    notes.push(format!(
        "{} ms; * = projected past t_max from the fitted tail rate",
        elapsed.as_millis()
    ));
    (ok, notes.join("; "))
}

fn c8_nm_rate(runs: &[GameRuns]) -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in runs {
        let measured = measure_rate(&r.nm, DEFAULT_TAIL_FRACTION).unwrap();
        let bound = 1.0 - r.kappa.powf(-1.5);
        ok &= measured <= bound;
        notes.push(format!("seed {}: {measured:.6} <= {bound:.6}", r.seed));
    }
    (ok, notes.join("; "))
}

fn c9_ogda_rate(runs: &[GameRuns]) -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for r in runs {
        let measured = measure_rate(&r.ogda, DEFAULT_TAIL_FRACTION).unwrap();
        let bound = 1.0 - 1.0 / (2.0 * r.kappa);
        ok &= measured <= bound;
        notes.push(format!("seed {}: {measured:.6} <= {bound:.6}", r.seed));
    }
    (ok, notes.join("; "))
}

fn c10_schedule_agreement() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();
    for seed in GAME_SEEDS {
        let g = build_game(GAME_HALF_DIM, seed).unwrap();
        let s = game_spectrum_bounds(&g).unwrap();
        let p = solve_region_rate(&s, Region::K1).unwrap().cheb_params().unwrap();
        let z0 = g.ones();
        let scheduled = simulate(&g, &MethodSpec::ChebSchedule(p), &z0, T_MAX).unwrap();
        let fixed = simulate(&g, &MethodSpec::from_params(&params_from_cheb(&p)).unwrap(), &z0, T_MAX).unwrap();
        let a = measure_rate(&scheduled, DEFAULT_TAIL_FRACTION).unwrap();
        let b = measure_rate(&fixed, DEFAULT_TAIL_FRACTION).unwrap();
        let gap = rel_gap(a, b);
        ok &= gap <= SCHEDULE_REL_TOL;
        notes.push(format!("seed {seed}: {a:.6} vs {b:.6} ({gap:.1e})"));
    }
    (ok, notes.join("; "))
}

/// Random fixed-parameter momentum iteration on a small game whose exact
/// iteration radius lies in (0.5, 0.999).
fn random_momentum_game(rng: &mut ChaCha8Rng) -> (QuadraticGame, MomentumParams, f64) {
    loop {
        let g = build_game(rng.random_range(1..=10), rng.random()).unwrap();
        let s = game_spectrum_bounds(&g).unwrap();
        let m = MomentumParams::momentum(rng.random_range(0.05..1.5) / s.lipschitz(), rng.random_range(-0.9..0.9));
        let radius = game_radius(&g, &m);
        if radius > 0.5 && radius < 0.999 {
            return (g, m, radius);
        }
    }
}

fn c11_local_envelope() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = true;
    let (mut worst_c, mut violations) = (0.0_f64, 0);
    for _ in 0..ENVELOPE_RUNS {
        let (g, m, radius) = random_momentum_game(&mut rng);
        let trace = simulate(&g, &MethodSpec::from_params(&m).unwrap(), &g.ones(), 40_000).unwrap();
        let d0 = trace.distances[0];
        let ratio = |t: usize| trace.distances[t] / (d0 * local_rate_certificate(radius, t).unwrap());
        let c = (0..=ENVELOPE_FIT_STEPS.min(trace.iterations))
            .map(ratio)
            .fold(0.0, f64::max);
        worst_c = worst_c.max(c);
        ok &= c <= ENVELOPE_MAX_C;
        let broken = (0..trace.distances.len())
            .filter(|&t| ratio(t) > c * (1.0 + 1e-12))
            .count();
        if broken > 0 {
            ok = false;
            violations += 1;
        }
    }
    (
        ok,
        format!("{ENVELOPE_RUNS} runs, largest fitted C = {worst_c:.3}, runs exceeding the envelope: {violations}"),
    )
}

fn c12_lower_bound_cli() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_negmom"))
        .args(["rate", "--mu", "1", "--L", "10"])
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value = stdout
        .lines()
        .find_map(|l| l.strip_prefix("rho_opt"))
        .and_then(|v| v.trim().parse::<f64>().ok());
    match value {
        Some(v) => (
            out.status.success() && (v - LOWER_BOUND_EXPECTED).abs() <= LOWER_BOUND_TOL,
            format!("rho_opt printed as {v}"),
        ),
        None => (false, format!("no rho_opt line in output: {stdout}")),
    }
}

fn main() {
    let (runs, elapsed) = run_games();
    let results: Vec<(&str, Verdict)> = vec![
        ("K1 rate inside the kappa^-1.5 bracket", c1_bracket_k1()),
        ("K2 rate inside the kappa^-1.5 bracket", c2_bracket_k2()),
        ("optimal momentum is negative", c3_negative_momentum()),
        ("equal rates at the polygon vertices", c4_equal_vertex_rates()),
        ("companion / Chebyshev equivalence", c5_companion_equivalence()),
        ("constant modulus on ellipse boundaries", c6_boundary_constant()),
        ("iterations to 1e-6: OGDA < NM < GDA", c7_ordering(&runs, elapsed)),
        ("NM measured rate <= 1 - k^-1.5", c8_nm_rate(&runs)),
        ("OGDA measured rate <= 1 - 1/(2k)", c9_ogda_rate(&runs)),
        ("schedule and constant rates agree", c10_schedule_agreement()),
        ("local convergence envelope", c11_local_envelope()),
        ("CLI prints the lower bound", c12_lower_bound_cli()),
    ];
    let mut failed = 0;
    for (i, (name, (ok, detail))) in results.iter().enumerate() {
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {} {name}: {detail}",
            i + 1,
            if *ok { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
