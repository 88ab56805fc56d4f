use std::fmt;
use std::io::Write;
use std::str::FromStr;

use negmom::dynamics::{
    build_game, game_spectrum_bounds, measure_rate, simulate, tune_gda, tune_negative_momentum, tune_ogda,
    worst_case_radius, DEFAULT_TAIL_FRACTION,
};
use negmom::rates::{lower_bound_rate, momentum_sign, rate_bracket, solve_region_rate};
use negmom::{MethodSpec, MomentumSign, QuadraticGame, RateReport, Region, SpectrumBound, Trace};
use serde::Serialize;

use crate::args::{Format, RateArgs, SimulateArgs, SweepArgs};
use crate::output::{emit, sidecar_path, sig12};
use crate::CliError;

/// Boundary samples used for the predicted worst-case radius.
const PREDICTION_SAMPLES: usize = 256;

#[derive(Debug, Clone, Serialize)]
pub struct RateSummary {
    pub mu: f64,
    #[serde(rename = "L")]
    pub lipschitz: f64,
    pub kappa: f64,
    pub k1: RateReport,
    pub k2: RateReport,
    pub bracket_k1: (f64, f64),
    pub bracket_k2: (f64, f64),
    pub sign_k1: MomentumSign,
    pub sign_k2: MomentumSign,
    pub rho_opt: f64,
}

pub fn rate_summary(s: &SpectrumBound) -> Result<RateSummary, CliError> {
    let kappa = s.kappa();
    Ok(RateSummary {
        mu: s.mu(),
        lipschitz: s.lipschitz(),
        kappa,
        k1: solve_region_rate(s, Region::K1)?,
        k2: solve_region_rate(s, Region::K2)?,
        bracket_k1: rate_bracket(Region::K1, kappa),
        bracket_k2: rate_bracket(Region::K2, kappa),
        sign_k1: momentum_sign(s, Region::K1),
        sign_k2: momentum_sign(s, Region::K2),
        rho_opt: lower_bound_rate(s),
    })
}

impl fmt::Display for RateSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mu            {}", self.mu)?;
        writeln!(f, "L             {}", self.lipschitz)?;
        writeln!(f, "kappa         {}", self.kappa)?;
        for (tag, r, (lo, hi), sign) in [
            ("K1", &self.k1, self.bracket_k1, self.sign_k1),
            ("K2", &self.k2, self.bracket_k2, self.sign_k2),
        ] {
            writeln!(
                f,
                "rho_hat({tag})   {}   bound [{}, {}]",
                sig12(r.rho_hat),
                sig12(lo),
                sig12(hi)
            )?;
            writeln!(f, "eta*({tag})      {}", sig12(r.params.eta))?;
            writeln!(f, "beta*({tag})     {}", sig12(r.params.beta))?;
            writeln!(f, "sign({tag})      {sign}")?;
        }
        // K̂₁ ⊂ K̂ ⊂ K̂₂, so the two solved rates bracket the rate on K̂
        writeln!(
            f,
            "rho_hat(K)    in [{}, {}]",
            sig12(self.k1.rho_hat),
            sig12(self.k2.rho_hat)
        )?;
        writeln!(f, "rho_opt       {}", sig12(self.rho_opt))
    }
}

pub fn cmd_rate(a: &RateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let s = a.bound.resolve()?;
    let summary = rate_summary(&s)?;
    let body = match a.format {
        None => summary.to_string(),
        Some(Format::Json) => serde_json::to_string_pretty(&summary)? + "\n",
        Some(Format::Csv) => sweep_csv(&[sweep_row(s.kappa())?]),
    };
    emit(a.out.as_deref(), &body, stdout)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub kappa: f64,
    pub rho_k1: f64,
    pub rho_k2: f64,
    pub rho_lower_bound: f64,
    pub eta_k1: f64,
    pub beta_k1: f64,
    pub eta_k2: f64,
    pub beta_k2: f64,
    pub sign_k1: MomentumSign,
    pub sign_k2: MomentumSign,
}

pub const SWEEP_HEADER: &str = "kappa,rho_k1,rho_k2,rho_lower_bound,eta_k1,beta_k1,eta_k2,beta_k2,sign_k1,sign_k2";

pub fn sweep_row(kappa: f64) -> Result<SweepRow, CliError> {
    if kappa.is_nan() || kappa <= 1.0 || kappa.is_infinite() {
        return Err(CliError::Invalid(format!("kappa must be finite and > 1, got {kappa}")));
    }
    let s = SpectrumBound::from_kappa(kappa)?;
    let r = rate_summary(&s)?;
    Ok(SweepRow {
        kappa,
        rho_k1: r.k1.rho_hat,
        rho_k2: r.k2.rho_hat,
        rho_lower_bound: r.rho_opt,
        eta_k1: r.k1.params.eta,
        beta_k1: r.k1.params.beta,
        eta_k2: r.k2.params.eta,
        beta_k2: r.k2.params.beta,
        sign_k1: r.sign_k1,
        sign_k2: r.sign_k2,
    })
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out += &format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.kappa,
            r.rho_k1,
            r.rho_k2,
            r.rho_lower_bound,
            r.eta_k1,
            r.beta_k1,
            r.eta_k2,
            r.beta_k2,
            r.sign_k1,
            r.sign_k2
        );
    }
    out
}

pub fn parse_kappa_list(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| CliError::Invalid(format!("kappa `{t}`: {e}")))
        })
        .collect()
}

pub fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let kappas = parse_kappa_list(&a.kappa_list)?;
    let rows = kappas.into_iter().map(sweep_row).collect::<Result<Vec<_>, _>>()?;
    let body = match a.format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    emit(a.out.as_deref(), &body, stdout)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Gda,
    Ogda,
    /// Analytic negative momentum from the chosen sandwich polygon.
    Nm,
    /// Grid-tuned negative momentum.
    NmGrid,
    /// Chebyshev schedule converging to the analytic parameters.
    Cheb,
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Gda => "GDA",
            MethodChoice::Ogda => "OGDA",
            MethodChoice::Nm => "NM",
            MethodChoice::NmGrid => "NM-grid",
            MethodChoice::Cheb => "CHEB",
        })
    }
}

impl FromStr for MethodChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gda" => Ok(MethodChoice::Gda),
            "ogda" => Ok(MethodChoice::Ogda),
            "nm" => Ok(MethodChoice::Nm),
            "nm-grid" => Ok(MethodChoice::NmGrid),
            "cheb" => Ok(MethodChoice::Cheb),
            other => Err(CliError::Invalid(format!(
                "unknown method `{other}` (expected gda, ogda, nm, nm-grid, cheb)"
            ))),
        }
    }
}

pub fn parse_methods(list: &str) -> Result<Vec<MethodChoice>, CliError> {
    let methods = list
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<_>, _>>()?;
    if methods.is_empty() {
        return Err(CliError::Invalid("no methods given".into()));
    }
    Ok(methods)
}

/// Resolved hyperparameters for one method on one game.
pub fn resolve_method(
    choice: MethodChoice,
    g: &QuadraticGame,
    s: &SpectrumBound,
    region: Region,
) -> Result<MethodSpec, CliError> {
    Ok(match choice {
        MethodChoice::Gda => MethodSpec::Gda {
            eta: tune_gda(g, s).eta,
        },
        MethodChoice::Ogda => MethodSpec::Ogda {
            eta: tune_ogda(g, s).eta,
        },
        MethodChoice::Nm => MethodSpec::from_params(&solve_region_rate(s, region)?.params)?,
        MethodChoice::NmGrid => MethodSpec::from_params(&tune_negative_momentum(g, s))?,
        MethodChoice::Cheb => MethodSpec::ChebSchedule(solve_region_rate(s, region)?.cheb_params()?),
    })
}

/// Sidecar record; the key set is part of the output contract.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub method: String,
    pub eta: f64,
    pub beta: f64,
    pub alpha: f64,
    pub seed: u64,
    /// `None` when the trace is too short or hits the floor too early.
    pub measured_rate: Option<f64>,
    pub predicted_radius: f64,
    pub diverged: bool,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub record: RunRecord,
    pub trace: Trace,
}

pub struct SimulationConfig {
    pub half_dim: usize,
    pub seed: u64,
    pub t_max: usize,
    pub methods: Vec<MethodChoice>,
    pub region: Region,
}

/// Builds the game, resolves every method and runs them concurrently;
/// results come back in request order.
pub fn run_simulation(cfg: &SimulationConfig) -> Result<(SpectrumBound, Vec<Run>), CliError> {
    let g = build_game(cfg.half_dim, cfg.seed)?;
    let s = game_spectrum_bounds(&g)?;
    let z0 = g.ones();
    let runs = std::thread::scope(|scope| {
        let handles: Vec<_> = cfg
            .methods
            .iter()
            .map(|&choice| {
                let (g, s, z0) = (&g, &s, &z0);
                scope.spawn(move || -> Result<Run, CliError> {
                    let spec = resolve_method(choice, g, s, cfg.region)?;
                    let trace = simulate(g, &spec, z0, cfg.t_max)?;
                    let m = spec.params();
                    let record = RunRecord {
                        method: choice.to_string(),
                        eta: m.eta,
                        beta: m.beta,
                        alpha: m.alpha,
                        seed: cfg.seed,
                        measured_rate: measure_rate(&trace, DEFAULT_TAIL_FRACTION).ok(),
                        predicted_radius: worst_case_radius(s, &m, PREDICTION_SAMPLES)?,
                        diverged: trace.diverged,
                    };
                    Ok(Run { record, trace })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok((s, runs))
}

pub const TRACE_HEADER: &str = "method,iter,distance,diverged";

pub fn traces_csv(runs: &[Run]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for run in runs {
        for (t, d) in run.trace.distances.iter().enumerate() {
            out += &format!("{},{t},{d},{}\n", run.record.method, run.trace.diverged);
        }
    }
    out
}

#[derive(Serialize)]
struct RunWithTrace<'a> {
    #[serde(flatten)]
    record: &'a RunRecord,
    distances: &'a [f64],
}

pub fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = SimulationConfig {
        half_dim: a.dim as usize,
        seed: a.seed,
        t_max: a.t_max as usize,
        methods: parse_methods(&a.methods)?,
        region: a.region,
    };
    let (_, runs) = run_simulation(&cfg)?;
    match a.format {
        Format::Csv => {
            emit(a.out.as_deref(), &traces_csv(&runs), stdout)?;
            if let Some(out) = &a.out {
                let records: Vec<&RunRecord> = runs.iter().map(|r| &r.record).collect();
                let path = sidecar_path(out);
                let body = serde_json::to_string_pretty(&records)? + "\n";
                emit(Some(&path), &body, stdout)?;
            }
        }
        Format::Json => {
            let full: Vec<RunWithTrace> = runs
                .iter()
                .map(|r| RunWithTrace {
                    record: &r.record,
                    distances: &r.trace.distances,
                })
                .collect();
            emit(a.out.as_deref(), &(serde_json::to_string_pretty(&full)? + "\n"), stdout)?;
        }
    }
    Ok(())
}
