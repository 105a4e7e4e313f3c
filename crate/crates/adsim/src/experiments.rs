//! Scenario definition and validation, the named case-study presets, and
//! Monte-Carlo batch execution with win-rate statistics.
//!
//! Config files are single JSON documents with `scenario`, `guidance` and
//! `sim` sections. Angles are degrees in config files and radians
//! internally; units are SI throughout.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::guidance::{
    self, DefenderMode, EvaderLaw, GainSet, GuidanceConfig, PursuerStrategy,
};
use crate::kinematics::{AgentState, G};
use crate::sim::{self, Agents, Outcome, SimConfig, SimTrace, Verdict};
use crate::{Error, Result};

/// Initial engagement geometry. The EP LOS points from the evader toward
/// the pursuer and the DE LOS from the defender toward the evader.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialGeometry {
    /// Initial evader-pursuer range, m.
    pub r_ep_m: f64,
    /// Initial evader-pursuer LOS angle, deg.
    pub lambda_ep_deg: f64,
    /// Initial defender-evader range, m.
    pub r_de_m: f64,
    /// Initial defender-evader LOS angle, deg.
    pub lambda_de_deg: f64,
    pub gamma_e_deg: f64,
    pub gamma_p_deg: f64,
    pub gamma_d_deg: f64,
    /// Speeds, m/s. The defender's is its initial speed; the others are
    /// constant.
    pub v_e: f64,
    pub v_p: f64,
    pub v_d0: f64,
}

/// A complete, runnable scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: InitialGeometry,
    pub guidance: GuidanceConfig,
    pub sim: SimConfig,
}

/// Severity of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl ScenarioConfig {
    /// Place the agents: evader at the origin, pursuer along the EP LOS,
    /// defender behind the DE LOS. An exactly coincident defender-evader
    /// start is perturbed to 1 m so it still runs.
    pub fn agents(&self) -> Agents {
        let s = &self.scenario;
        let lam_ep = s.lambda_ep_deg.to_radians();
        let lam_de = s.lambda_de_deg.to_radians();
        let r_de = if s.r_de_m < 1.0 { 1.0 } else { s.r_de_m };
        Agents {
            evader: AgentState::new(0.0, 0.0, s.gamma_e_deg.to_radians(), s.v_e),
            pursuer: AgentState::new(
                s.r_ep_m * lam_ep.cos(),
                s.r_ep_m * lam_ep.sin(),
                s.gamma_p_deg.to_radians(),
                s.v_p,
            ),
            defender: AgentState::new(
                -r_de * lam_de.cos(),
                -r_de * lam_de.sin(),
                s.gamma_d_deg.to_radians(),
                s.v_d0,
            ),
        }
    }

    /// Hard config errors plus soft findings (gain-condition and
    /// time-margin feasibility warnings).
    pub fn validate(&self) -> Vec<Finding> {
        let mut findings = Vec::new();
        let mut err = |msg: String| {
            findings.push(Finding {
                severity: Severity::Error,
                message: msg,
            })
        };
        let s = &self.scenario;
        if !(s.v_e > 0.0 && s.v_p > 0.0 && s.v_d0 > 0.0) {
            err("all speeds must be strictly positive".into());
        }
        if s.r_ep_m < 0.0 || s.r_de_m < 0.0 {
            err("ranges must be non-negative".into());
        }
        let g = &self.guidance;
        if !(g.tau > 0.0) {
            err(format!("time margin tau must be positive, got {}", g.tau));
        }
        if let Some(c) = g.c {
            if !(c > 0.0) {
                err(format!("TPN parameter c must be positive, got {c}"));
            }
        }
        if !(g.a_e_max > 0.0 && g.a_p_max > 0.0 && g.a_d_max > 0.0) {
            err("saturation limits must be positive".into());
        }
        if g.sign_boundary_layer < 0.0 {
            err("sign boundary layer must be non-negative".into());
        }
        if let Err(e) = self.sim.validate() {
            err(e.to_string());
        }

        let no_errors = findings.iter().all(|f| f.severity != Severity::Error);
        let mut warn = |msg: String| {
            findings.push(Finding {
                severity: Severity::Warning,
                message: msg,
            })
        };
        for (name, gains) in [("evader", &g.evader_gains), ("defender", &g.defender_gains)] {
            if !gains.exponents_ok() {
                warn(format!(
                    "{name} gains violate the fixed-time premise: alpha*kappa = {}, beta*kappa = {} \
                     (need alpha*kappa < 1 and beta*kappa > 1); run proceeds",
                    gains.alpha * gains.kappa,
                    gains.beta * gains.kappa,
                ));
            }
        }

        // Conservative time-margin feasibility at the initial geometry.
        if no_errors {
            let agents = self.agents();
            let pair_ep = crate::kinematics::relative_state(&agents.evader, &agents.pursuer);
            let pair_dp = crate::kinematics::relative_state(&agents.defender, &agents.pursuer);
            if let (Ok(ep), Ok(dp)) = (pair_ep, pair_dp) {
                let tgo0 = guidance::tgo_ep(&ep, s.v_e, s.v_p);
                if let Ok(t2) = guidance::settling_bound(&g.defender_gains) {
                    if tgo0.is_finite()
                        && !guidance::tau_feasible(dp.r, g.v_d_max, s.v_p, tgo0, t2, g.tau)
                    {
                        warn(format!(
                            "time margin tau = {} s exceeds the conservative feasibility bound \
                             min({:.3}, {:.3}) s",
                            g.tau,
                            dp.r / (g.v_d_max + s.v_p),
                            tgo0 - t2,
                        ));
                    }
                }
                // Fixed robustness gains are checked against the
                // state-dependent sufficiency bounds at t = 0.
                let c = g.effective_c(&dp, s.v_d0, s.v_p);
                let (b1, b2, b3) = guidance::epsilon_bounds(
                    &dp, &ep, s.v_e, s.v_p, s.v_d0, c, g.a_p_max, g.a_e_max,
                );
                if g.evader_gains.epsilon > 0.0 && g.evader_gains.epsilon <= b1 {
                    warn(format!(
                        "fixed evader epsilon {} is below the initial sufficiency bound {b1:.4}",
                        g.evader_gains.epsilon
                    ));
                }
                let db = match g.defender_mode {
                    DefenderMode::WithEvaderAccess => b2,
                    _ => b3,
                };
                if g.defender_gains.epsilon > 0.0 && g.defender_gains.epsilon <= db {
                    warn(format!(
                        "fixed defender epsilon {} is below the initial sufficiency bound {db:.4}",
                        g.defender_gains.epsilon
                    ));
                }
            }
        }
        findings
    }

    pub fn has_errors(findings: &[Finding]) -> bool {
        findings.iter().any(|f| f.severity == Severity::Error)
    }

    /// Run the scenario to completion.
    pub fn run(&self) -> Result<(SimTrace, Outcome)> {
        let findings = self.validate();
        if Self::has_errors(&findings) {
            let msgs: Vec<_> = findings
                .iter()
                .filter(|f| f.severity == Severity::Error)
                .map(|f| f.message.clone())
                .collect();
            return Err(Error::Config(msgs.join("; ")));
        }
        sim::simulate(&self.agents(), &self.guidance, &self.sim)
    }
}

fn default_evader_gains() -> GainSet {
    GainSet {
        zeta: 0.05,
        xi: 0.005,
        alpha: 0.3,
        beta: 2.0,
        kappa: 1.0,
        epsilon: 0.0,
    }
}

fn default_defender_gains() -> GainSet {
    GainSet {
        zeta: 0.05,
        xi: 1.2,
        alpha: 0.3,
        beta: 2.0,
        kappa: 1.0,
        epsilon: 0.0,
    }
}

fn base_guidance() -> GuidanceConfig {
    GuidanceConfig {
        evader_gains: default_evader_gains(),
        defender_gains: default_defender_gains(),
        c: None,
        tau: 5.0,
        n_pn: 5.0,
        k_p: 1.0,
        apn_negative_base: false,
        a_e_max: 5.0 * G,
        a_p_max: 40.0 * G,
        a_d_max: 40.0 * G,
        sign_boundary_layer: 1e-3,
        lambda_dot_floor: 1e-4,
        epsilon_safety: 1.2,
        cos_floor: 1e-3,
        range_floor: 10.0,
        closing_floor: 1e-3,
        v_d_min: 50.0,
        v_d_max: 600.0,
        evader_law: EvaderLaw::FixedTime,
        defender_mode: DefenderMode::WithEvaderAccess,
        pursuer_strategy: PursuerStrategy::PurePn,
    }
}

fn base_geometry() -> InitialGeometry {
    InitialGeometry {
        r_ep_m: 15_000.0,
        lambda_ep_deg: -45.0,
        r_de_m: 1_000.0,
        lambda_de_deg: 45.0,
        gamma_e_deg: 30.0,
        gamma_p_deg: 165.0,
        gamma_d_deg: 0.0,
        v_e: 100.0,
        v_p: 375.0,
        v_d0: 400.0,
    }
}

/// All named single-run presets.
pub const PRESET_NAMES: [&str; 6] = [
    "ppn-with-access",
    "rtpn-with-access",
    "apn-with-access",
    "ppn-without-access",
    "rtpn-without-access",
    "apn-without-access",
];

/// One of the six named case-study configurations.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let mut scenario = base_geometry();
    let mut g = base_guidance();
    match name {
        "ppn-with-access" => {
            g.pursuer_strategy = PursuerStrategy::PurePn;
            g.defender_mode = DefenderMode::WithEvaderAccess;
            g.defender_gains.zeta = 0.05;
            g.defender_gains.xi = 0.05;
            g.defender_gains.alpha = 0.3;
            g.defender_gains.beta = 0.8;
            scenario.v_d0 = 400.0;
            scenario.r_de_m = 1_000.0;
            scenario.lambda_de_deg = 45.0;
            scenario.gamma_e_deg = 30.0;
            scenario.gamma_d_deg = 0.0;
        }
        "rtpn-with-access" => {
            g.pursuer_strategy = PursuerStrategy::RealisticTpn;
            g.defender_mode = DefenderMode::WithEvaderAccess;
            g.defender_gains.zeta = 0.05;
            g.defender_gains.xi = 1.2;
            g.defender_gains.alpha = 0.3;
            g.defender_gains.beta = 2.0;
            scenario.v_d0 = 370.0;
            scenario.r_de_m = 3_000.0;
            scenario.lambda_de_deg = 0.0;
            scenario.gamma_e_deg = -5.0;
            scenario.gamma_d_deg = -30.0;
        }
        "apn-with-access" => {
            g.pursuer_strategy = PursuerStrategy::AugmentedPn;
            g.defender_mode = DefenderMode::WithEvaderAccess;
            g.defender_gains.zeta = 0.01;
            g.defender_gains.xi = 0.07;
            g.defender_gains.alpha = 0.99;
            g.defender_gains.beta = 2.0;
            scenario.v_d0 = 370.0;
            scenario.r_de_m = 0.0;
            scenario.lambda_de_deg = 45.0;
            scenario.gamma_e_deg = 60.0;
            scenario.gamma_d_deg = -15.0;
        }
        "ppn-without-access" => {
            g.pursuer_strategy = PursuerStrategy::PurePn;
            g.defender_mode = DefenderMode::WithoutEvaderAccess;
            g.defender_gains.zeta = 0.05;
            g.defender_gains.xi = 0.99;
            g.defender_gains.alpha = 0.3;
            g.defender_gains.beta = 2.0;
            scenario.v_d0 = 400.0;
            scenario.r_de_m = 2_000.0;
            scenario.lambda_de_deg = 60.0;
            scenario.gamma_e_deg = 30.0;
            scenario.gamma_d_deg = -15.0;
        }
        "rtpn-without-access" => {
            g.pursuer_strategy = PursuerStrategy::RealisticTpn;
            g.defender_mode = DefenderMode::WithoutEvaderAccess;
            g.defender_gains.zeta = 0.1275;
            g.defender_gains.xi = 1.8;
            g.defender_gains.alpha = 0.3;
            g.defender_gains.beta = 2.0;
            scenario.v_d0 = 370.0;
            scenario.r_de_m = 1_500.0;
            scenario.lambda_de_deg = 110.0;
            scenario.gamma_e_deg = -5.0;
            scenario.gamma_d_deg = 0.0;
        }
        "apn-without-access" => {
            g.pursuer_strategy = PursuerStrategy::AugmentedPn;
            g.defender_mode = DefenderMode::WithoutEvaderAccess;
            g.defender_gains.zeta = 0.01;
            g.defender_gains.xi = 0.06;
            g.defender_gains.alpha = 0.3;
            g.defender_gains.beta = 2.0;
            scenario.v_d0 = 370.0;
            scenario.r_de_m = 500.0;
            scenario.lambda_de_deg = 45.0;
            scenario.gamma_e_deg = 60.0;
            scenario.gamma_d_deg = -15.0;
        }
        other => return Err(Error::UnknownPreset(other.to_string())),
    }
    Ok(ScenarioConfig {
        scenario,
        guidance: g,
        sim: SimConfig::default(),
    })
}

/// A parameter sampled per Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McParam {
    RDeM,
    GammaDDeg,
    REpM,
    GammaPDeg,
    TauS,
    LambdaDeDeg,
    GammaEDeg,
}

impl McParam {
    pub fn name(&self) -> &'static str {
        match self {
            McParam::RDeM => "r_de_m",
            McParam::GammaDDeg => "gamma_d_deg",
            McParam::REpM => "r_ep_m",
            McParam::GammaPDeg => "gamma_p_deg",
            McParam::TauS => "tau_s",
            McParam::LambdaDeDeg => "lambda_de_deg",
            McParam::GammaEDeg => "gamma_e_deg",
        }
    }

    fn apply(&self, cfg: &mut ScenarioConfig, value: f64) {
        match self {
            McParam::RDeM => cfg.scenario.r_de_m = value,
            McParam::GammaDDeg => cfg.scenario.gamma_d_deg = value,
            McParam::REpM => cfg.scenario.r_ep_m = value,
            McParam::GammaPDeg => cfg.scenario.gamma_p_deg = value,
            McParam::TauS => cfg.guidance.tau = value,
            McParam::LambdaDeDeg => cfg.scenario.lambda_de_deg = value,
            McParam::GammaEDeg => cfg.scenario.gamma_e_deg = value,
        }
    }
}

/// Uniform sampling range for one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledParam {
    pub param: McParam,
    pub lo: f64,
    pub hi: f64,
}

/// Monte-Carlo batch specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McSpec {
    pub n_runs: usize,
    pub seed: u64,
    pub params: Vec<SampledParam>,
    pub base: ScenarioConfig,
}

impl McSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_runs == 0 {
            return Err(Error::Config("n_runs must be at least 1".into()));
        }
        for p in &self.params {
            if !(p.lo < p.hi) {
                return Err(Error::Config(format!(
                    "sampled parameter {} needs lo < hi, got [{}, {}]",
                    p.param.name(),
                    p.lo,
                    p.hi
                )));
            }
        }
        let findings = self.base.validate();
        if ScenarioConfig::has_errors(&findings) {
            return Err(Error::Config("base scenario is invalid".into()));
        }
        Ok(())
    }
}

/// Monte-Carlo study presets mirroring the three win-rate experiments.
pub const MC_PRESET_NAMES: [&str; 3] = ["mc1", "mc2", "mc3"];

fn mc_base() -> ScenarioConfig {
    let mut scenario = base_geometry();
    scenario.gamma_e_deg = -5.0;
    scenario.v_d0 = 500.0;
    let guidance = base_guidance();
    let sim = SimConfig {
        // Only the verdict matters here: skip trace recording.
        record_stride: usize::MAX,
        ..SimConfig::default()
    };
    ScenarioConfig {
        scenario,
        guidance,
        sim,
    }
}

/// One of the named Monte-Carlo studies. The pursuer strategy (pure PN),
/// the DE LOS angle (45 deg) and the unsampled geometry values are
/// documented assumptions; see the README.
pub fn mc_preset(name: &str) -> Result<McSpec> {
    let base = mc_base();
    let spec = match name {
        "mc1" => McSpec {
            n_runs: 1_100,
            seed: 0xAD51,
            params: vec![
                SampledParam {
                    param: McParam::RDeM,
                    lo: 0.0,
                    hi: 3_300.0,
                },
                SampledParam {
                    param: McParam::GammaDDeg,
                    lo: -120.0,
                    hi: 15.0,
                },
            ],
            base,
        },
        "mc2" => McSpec {
            n_runs: 1_100,
            seed: 0xAD52,
            params: vec![
                SampledParam {
                    param: McParam::REpM,
                    lo: 7_000.0,
                    hi: 15_000.0,
                },
                SampledParam {
                    param: McParam::GammaPDeg,
                    lo: 120.0,
                    hi: 220.0,
                },
            ],
            base,
        },
        "mc3" => McSpec {
            n_runs: 1_100,
            seed: 0xAD53,
            params: vec![
                SampledParam {
                    param: McParam::RDeM,
                    lo: 0.0,
                    hi: 3_000.0,
                },
                SampledParam {
                    param: McParam::TauS,
                    lo: 3.0,
                    hi: 6.0,
                },
            ],
            base,
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(spec)
}

/// Draw the full batch of scenarios. The generator is counter-based: run
/// `i` always sees the same stream regardless of worker count or batch
/// splitting.
pub fn sample(spec: &McSpec) -> Result<Vec<(Vec<f64>, ScenarioConfig)>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.n_runs);
    for i in 0..spec.n_runs {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(i as u64);
        let mut cfg = spec.base.clone();
        let mut values = Vec::with_capacity(spec.params.len());
        for p in &spec.params {
            let v = rng.gen_range(p.lo..p.hi);
            p.param.apply(&mut cfg, v);
            values.push(v);
        }
        out.push((values, cfg));
    }
    Ok(out)
}

/// Per-run record in a Monte-Carlo report.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub index: usize,
    pub sampled: Vec<f64>,
    pub verdict: Verdict,
    pub t_intercept: Option<f64>,
    pub achieved_margin: Option<f64>,
    pub min_r_dp: f64,
    pub min_r_ep: f64,
}

/// Aggregated Monte-Carlo results.
#[derive(Debug, Clone, Serialize)]
pub struct McReport {
    pub n_runs: usize,
    pub wins: usize,
    pub win_rate: f64,
    /// Wilson 95% interval on the win rate.
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub param_names: Vec<String>,
    /// Documented assumptions baked into the batch.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub runs: Vec<RunRecord>,
}

/// Wilson score interval for a binomial proportion at 95% confidence.
pub fn wilson_interval(wins: usize, n: usize) -> (f64, f64) {
    let z = 1.959963984540054_f64;
    let n_f = n as f64;
    let p = wins as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = (p + z2 / (2.0 * n_f)) / denom;
    let half = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Execute every run of the batch (in parallel when `jobs != Some(1)`),
/// classify the outcomes, and aggregate win-rate statistics.
///
/// A run that fails to propagate is recorded as `Degenerate` and counted
/// as a loss. Results are merged by run index, so the report is identical
/// for any worker count.
pub fn run_batch(spec: &McSpec, jobs: Option<usize>) -> Result<McReport> {
    let configs = sample(spec)?;

    let execute = |(index, (sampled, cfg)): (usize, &(Vec<f64>, ScenarioConfig))| -> RunRecord {
        match sim::simulate(&cfg.agents(), &cfg.guidance, &cfg.sim) {
            Ok((_, outcome)) => RunRecord {
                index,
                sampled: sampled.clone(),
                verdict: outcome.verdict,
                t_intercept: outcome.t_intercept,
                achieved_margin: outcome.achieved_margin,
                min_r_dp: outcome.min_r_dp,
                min_r_ep: outcome.min_r_ep,
            },
            Err(_) => RunRecord {
                index,
                sampled: sampled.clone(),
                verdict: Verdict::Degenerate,
                t_intercept: None,
                achieved_margin: None,
                min_r_dp: f64::NAN,
                min_r_ep: f64::NAN,
            },
        }
    };

    let runs: Vec<RunRecord> = match jobs {
        Some(n) if n >= 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("failed to build thread pool: {e}")))?;
            pool.install(|| configs.par_iter().enumerate().map(execute).collect())
        }
        _ => configs.par_iter().enumerate().map(execute).collect(),
    };

    let wins = runs
        .iter()
        .filter(|r| r.verdict == Verdict::DefenderWins)
        .count();
    let (lo, hi) = wilson_interval(wins, spec.n_runs);
    Ok(McReport {
        n_runs: spec.n_runs,
        wins,
        win_rate: wins as f64 / spec.n_runs as f64,
        wilson_low: lo,
        wilson_high: hi,
        param_names: spec.params.iter().map(|p| p.param.name().to_string()).collect(),
        notes: vec![
            "pursuer strategy and unsampled geometry values default to the first \
             case-study configuration"
                .to_string(),
            "lambda_DE defaults to 45 deg where unsampled".to_string(),
        ],
        runs,
    })
}

impl McReport {
    /// Per-run CSV rows: index, sampled values, verdict, outcome numbers.
    pub fn write_runs_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let mut header = vec!["index".to_string()];
        header.extend(self.param_names.iter().cloned());
        header.extend(
            ["verdict", "t_intercept", "achieved_margin", "min_r_dp", "min_r_ep"]
                .map(String::from),
        );
        writeln!(w, "{}", header.join(","))?;
        for r in &self.runs {
            let mut fields = vec![r.index.to_string()];
            fields.extend(r.sampled.iter().map(|v| sim::fmt_g9(*v)));
            fields.push(format!("{:?}", r.verdict));
            fields.push(sim::fmt_g9(r.t_intercept.unwrap_or(f64::NAN)));
            fields.push(sim::fmt_g9(r.achieved_margin.unwrap_or(f64::NAN)));
            fields.push(sim::fmt_g9(r.min_r_dp));
            fields.push(sim::fmt_g9(r.min_r_ep));
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }
}
