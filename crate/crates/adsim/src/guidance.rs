//! Guidance laws, time-to-go estimators, sliding manifolds and gain
//! condition evaluators.
//!
//! Two manifolds drive the cooperative team:
//! - `s1 = lambda_dot_EP`: the evader nulls the evader-pursuer LOS rate,
//!   forcing a collision-course (and hence predictable) engagement.
//! - `s2 = tgo_DP - (tgo_EP - tau)`: the defender regulates the gap between
//!   the two time-to-go estimates to the required time margin `tau`.
//!
//! Both laws are fixed-time sliding-mode controllers of the form
//! `(zeta |s|^alpha + xi |s|^beta)^kappa + sec(delta) * eps`, saturated to
//! the configured acceleration limits.

use serde::{Deserialize, Serialize};

use crate::kinematics::{GuidanceCommand, PairState};
use crate::{Error, Result};

/// One set of sliding-mode gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainSet {
    pub zeta: f64,
    pub xi: f64,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    /// Robustness gain. Zero means "auto": evaluate the sufficiency bound
    /// online each step and scale it by the configured safety factor.
    #[serde(default)]
    pub epsilon: f64,
}

impl GainSet {
    /// Fixed-time premise: `alpha * kappa < 1` and `beta * kappa > 1`.
    pub fn exponents_ok(&self) -> bool {
        self.alpha * self.kappa < 1.0 && self.beta * self.kappa > 1.0
    }

    /// The reaching-phase term `(zeta |s|^alpha + xi |s|^beta)^kappa`.
    pub fn reaching_term(&self, s: f64) -> f64 {
        (self.zeta * s.abs().powf(self.alpha) + self.xi * s.abs().powf(self.beta)).powf(self.kappa)
    }
}

/// Which PN variant the (adversarial) pursuer flies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PursuerStrategy {
    /// `a_P = N v_P lambda_dot_EP`.
    PurePn,
    /// Realistic true PN, `a_P = -N r_dot_EP lambda_dot_EP`.
    RealisticTpn,
    /// PN plus evader-maneuver feed-through, `a_P = +/- N v_P lambda_dot_EP + k_P a_E`.
    AugmentedPn,
    /// No pursuer maneuvering.
    None,
}

/// How much of the evader's maneuver the defender can see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DefenderMode {
    /// Full law including the evader acceleration feed-through term.
    WithEvaderAccess,
    /// Same law with the feed-through term dropped (larger robustness gain).
    WithoutEvaderAccess,
    /// Defender does not maneuver.
    None,
}

/// Whether the evader maneuvers at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvaderLaw {
    /// Fixed-time LOS-rate nulling.
    FixedTime,
    /// No evader maneuvering.
    None,
}

fn default_sign_boundary_layer() -> f64 {
    1e-3
}
fn default_lambda_dot_floor() -> f64 {
    1e-4
}
fn default_epsilon_safety() -> f64 {
    1.2
}
fn default_cos_floor() -> f64 {
    1e-3
}
fn default_range_floor() -> f64 {
    10.0
}
fn default_closing_floor() -> f64 {
    1e-3
}
fn default_v_d_min() -> f64 {
    50.0
}
fn default_v_d_max() -> f64 {
    600.0
}
fn default_evader_law() -> EvaderLaw {
    EvaderLaw::FixedTime
}

/// Full guidance configuration for one engagement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuidanceConfig {
    pub evader_gains: GainSet,
    pub defender_gains: GainSet,
    /// TPN lead parameter. `None` means auto: `v_D + v_P` at the current
    /// defender speed.
    #[serde(default)]
    pub c: Option<f64>,
    /// Required interception time margin, s.
    pub tau: f64,
    /// Pursuer navigation constant.
    pub n_pn: f64,
    /// Augmented-PN evader-feedback weight.
    pub k_p: f64,
    /// If true, the augmented-PN base term is negated (figure-caption form
    /// rather than the body-text form).
    #[serde(default)]
    pub apn_negative_base: bool,
    /// Saturation limits, m/s^2.
    pub a_e_max: f64,
    pub a_p_max: f64,
    pub a_d_max: f64,
    /// Boundary-layer width replacing the ideal sign(.), in each manifold's
    /// own units. Zero recovers the exact sign.
    #[serde(default = "default_sign_boundary_layer")]
    pub sign_boundary_layer: f64,
    /// Sign-preserving floor on |lambda_dot_DP| in the defender law.
    #[serde(default = "default_lambda_dot_floor")]
    pub lambda_dot_floor: f64,
    /// Multiplier on the online robustness-gain bounds.
    #[serde(default = "default_epsilon_safety")]
    pub epsilon_safety: f64,
    /// Clamp |cos(delta)| away from zero in the sec(delta) factors.
    #[serde(default = "default_cos_floor")]
    pub cos_floor: f64,
    /// Range floor for the online robustness-gain evaluation, m.
    #[serde(default = "default_range_floor")]
    pub range_floor: f64,
    /// Sign-preserving floor on the `r_dot_DP + 2c` denominator, m/s.
    #[serde(default = "default_closing_floor")]
    pub closing_floor: f64,
    /// Defender speed clamp, m/s.
    #[serde(default = "default_v_d_min")]
    pub v_d_min: f64,
    #[serde(default = "default_v_d_max")]
    pub v_d_max: f64,
    #[serde(default = "default_evader_law")]
    pub evader_law: EvaderLaw,
    pub defender_mode: DefenderMode,
    pub pursuer_strategy: PursuerStrategy,
}

impl GuidanceConfig {
    /// Effective TPN lead parameter at the current engagement state.
    ///
    /// The auto choice tracks the head-on closing speed, then grows as
    /// needed so the time-to-go denominator keeps its sign while the
    /// engagement is closing; without that the estimate turns negative in
    /// high-LOS-rate geometries and the timing manifold is meaningless.
    pub fn effective_c(&self, pair_dp: &PairState, v_d: f64, v_p: f64) -> f64 {
        if let Some(c) = self.c {
            return c;
        }
        let base = 0.7 * (v_d + v_p);
        if pair_dp.r_dot < 0.0 {
            let rel_sq = pair_dp.r_dot * pair_dp.r_dot
                + (pair_dp.r * pair_dp.lambda_dot) * (pair_dp.r * pair_dp.lambda_dot);
            let need = 1.2 * rel_sq / (-2.0 * pair_dp.r_dot);
            base.max(need).min(1e6)
        } else {
            base
        }
    }
}

/// Instantaneous manifold and time-to-go values, as logged per step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManifoldSnapshot {
    /// LOS-rate manifold, rad/s.
    pub s1: f64,
    /// Time-to-go error manifold, s. NaN when either estimate is a sentinel.
    pub s2: f64,
    pub tgo_ep: f64,
    pub tgo_dp: f64,
}

impl ManifoldSnapshot {
    pub fn is_valid(&self) -> bool {
        self.tgo_ep.is_finite() && self.tgo_dp.is_finite()
    }
}

/// Boundary-layer realization of sign(.): exact sign (with `sign(0) = 0`)
/// when the layer width is zero, otherwise a linear ramp clamped to
/// `[-1, 1]`.
pub fn smooth_sign(s: f64, boundary_layer: f64) -> f64 {
    if boundary_layer == 0.0 {
        if s > 0.0 {
            1.0
        } else if s < 0.0 {
            -1.0
        } else {
            0.0
        }
    } else {
        (s / boundary_layer).clamp(-1.0, 1.0)
    }
}

/// Sign-preserving clamp of |x| to at least `floor`. `x = 0` is pushed to
/// `+floor` so downstream divisions stay finite.
fn floor_magnitude(x: f64, floor: f64) -> f64 {
    if x.abs() >= floor {
        x
    } else if x < 0.0 {
        -floor
    } else {
        floor
    }
}

/// Evader-pursuer time-to-go.
///
/// Exact on a collision course, conservative otherwise. Returns
/// `f64::INFINITY` as a sentinel when the geometry is not closing
/// (denominator <= 0); callers must handle it.
pub fn tgo_ep(pair_ep: &PairState, v_e: f64, v_p: f64) -> f64 {
    let den = v_e * pair_ep.delta_ij.cos() - v_p * pair_ep.delta_ji.cos();
    if den <= 0.0 {
        f64::INFINITY
    } else {
        pair_ep.r / den
    }
}

/// Defender-pursuer time-to-go under the true-PN lead parameter `c`.
///
/// Returns `f64::INFINITY` as a sentinel when the denominator is
/// numerically singular.
pub fn tgo_dp(pair_dp: &PairState, v_d: f64, v_p: f64, c: f64) -> f64 {
    let delta_dp = pair_dp.delta_ij;
    let delta_pd = pair_dp.delta_ji;
    let den = v_d * v_d + v_p * v_p - 2.0 * v_p * v_d * (delta_pd - delta_dp).cos()
        + 2.0 * c * pair_dp.r_dot;
    if den.abs() < 1e-9 * (v_d + v_p).powi(2) {
        return f64::INFINITY;
    }
    let num = -pair_dp.r * (v_p * delta_pd.cos() - v_d * delta_dp.cos() + 2.0 * c);
    num / den
}

/// Fixed-time settling upper bound
/// `1 / (zeta^kappa (1 - alpha kappa)) + 1 / (xi^kappa (beta kappa - 1))`.
pub fn settling_bound(g: &GainSet) -> Result<f64> {
    if !g.exponents_ok() {
        return Err(Error::GainCondition(format!(
            "need alpha*kappa < 1 and beta*kappa > 1, got alpha*kappa = {}, beta*kappa = {}",
            g.alpha * g.kappa,
            g.beta * g.kappa
        )));
    }
    Ok(1.0 / (g.zeta.powf(g.kappa) * (1.0 - g.alpha * g.kappa))
        + 1.0 / (g.xi.powf(g.kappa) * (g.beta * g.kappa - 1.0)))
}

/// Sufficient robustness gains evaluated at the current state, in the order
/// (evader, defender-with-access, defender-without-access).
///
/// These are the state-dependent bounds whose running supremum appears in
/// the gain conditions; the laws evaluate them online and apply a safety
/// factor when the corresponding `epsilon` is set to auto.
#[allow(clippy::too_many_arguments)]
pub fn epsilon_bounds(
    pair_dp: &PairState,
    pair_ep: &PairState,
    v_e: f64,
    v_p: f64,
    v_d: f64,
    c: f64,
    a_p_max: f64,
    a_e_max: f64,
) -> (f64, f64, f64) {
    let r_ep = pair_ep.r.max(default_range_floor());
    let r_dp = pair_dp.r.max(default_range_floor());
    let vs = v_p + v_d;
    let ep_term = r_ep / (v_p + v_e).powi(2);

    let eps1 = a_p_max / r_ep;

    let num2 = vs * vs + 4.0 * r_dp * c * c + r_dp * v_d * (4.0 * c + v_d + v_p);
    let den2 = (2.0 * vs * vs + 2.0 * c * vs).powi(2);
    let eps2 = (num2 / den2 + ep_term) * a_p_max;

    let num3 = r_dp * vs * vs + 4.0 * c * c * r_dp + (4.0 * c + v_p + v_d) * r_dp;
    let den3 = ((1.0 + r_dp) * vs * vs + 2.0 * c * vs).powi(2);
    let eps3 = (num3 / den3 + ep_term) * a_p_max + ep_term * a_e_max;

    (eps1, eps2, eps3)
}

/// Conservative feasibility check on the time margin:
/// `tau < min(r_DP(0) / (v_D^max + v_P), tgo_EP(0) - t2)`.
pub fn tau_feasible(
    r_dp0: f64,
    v_d_max: f64,
    v_p: f64,
    tgo_ep0: f64,
    t2: f64,
    tau: f64,
) -> bool {
    tau < (r_dp0 / (v_d_max + v_p)).min(tgo_ep0 - t2)
}

/// Evader lateral acceleration: fixed-time nulling of the EP LOS rate,
/// saturated to `a_e_max`.
pub fn evader_accel(pair_ep: &PairState, cfg: &GuidanceConfig) -> GuidanceCommand {
    let g = &cfg.evader_gains;
    let s1 = pair_ep.lambda_dot;
    let cos_ep = floor_magnitude(pair_ep.delta_ij.cos(), cfg.cos_floor);
    let eps1 = if g.epsilon > 0.0 {
        g.epsilon
    } else {
        cfg.epsilon_safety * cfg.a_p_max / pair_ep.r.max(cfg.range_floor)
    };
    let a = -2.0 * pair_ep.r_dot * pair_ep.lambda_dot / cos_ep
        + pair_ep.r / cos_ep
            * (g.reaching_term(s1) + eps1 / cos_ep)
            * smooth_sign(s1, cfg.sign_boundary_layer);
    GuidanceCommand::lateral(a.clamp(-cfg.a_e_max, cfg.a_e_max))
}

/// Pursuer lateral acceleration under the selected PN variant, saturated to
/// `a_p_max`. `a_e` is the evader's executed (saturated) lateral command,
/// used only by the augmented variant.
pub fn pursuer_accel(
    pair_ep: &PairState,
    a_e: f64,
    v_p: f64,
    cfg: &GuidanceConfig,
) -> GuidanceCommand {
    let lam_dot = pair_ep.lambda_dot;
    let a = match cfg.pursuer_strategy {
        PursuerStrategy::PurePn => cfg.n_pn * v_p * lam_dot,
        PursuerStrategy::RealisticTpn => -cfg.n_pn * pair_ep.r_dot * lam_dot,
        PursuerStrategy::AugmentedPn => {
            let base = cfg.n_pn * v_p * lam_dot;
            let base = if cfg.apn_negative_base { -base } else { base };
            base + cfg.k_p * a_e
        }
        PursuerStrategy::None => 0.0,
    };
    GuidanceCommand::lateral(a.clamp(-cfg.a_p_max, cfg.a_p_max))
}

/// Output of the defender law: the decomposed command, the manifold values
/// it acted on, and whether the sentinel fallback (plain TPN lead term) was
/// taken.
#[derive(Debug, Clone, Copy)]
pub struct DefenderOutput {
    pub command: GuidanceCommand,
    pub manifold: ManifoldSnapshot,
    pub fallback: bool,
    /// Robustness gain actually applied.
    pub epsilon_used: f64,
    /// Whether the applied gain met the sufficiency bound at this state.
    pub epsilon_ok: bool,
}

/// Defender total-acceleration law regulating `s2` to zero, with optional
/// evader-maneuver feed-through.
///
/// `a_e` carries the evader's executed acceleration when the defender has
/// access to it; `None` selects the reduced-information variant. The signed
/// total is saturated to `a_d_max` and then decomposed into the
/// heading-rate and speed channels via the defender's bearing to the DP LOS.
pub fn defender_accel(
    pair_dp: &PairState,
    pair_ep: &PairState,
    a_e: Option<f64>,
    v_e: f64,
    v_p: f64,
    v_d: f64,
    cfg: &GuidanceConfig,
) -> DefenderOutput {
    let g = &cfg.defender_gains;
    let c = cfg.effective_c(pair_dp, v_d, v_p);
    let t_ep = tgo_ep(pair_ep, v_e, v_p);
    let t_dp = tgo_dp(pair_dp, v_d, v_p, c);
    let s2 = if t_ep.is_finite() && t_dp.is_finite() {
        t_dp - t_ep + cfg.tau
    } else {
        f64::NAN
    };
    let manifold = ManifoldSnapshot {
        s1: pair_ep.lambda_dot,
        s2,
        tgo_ep: t_ep,
        tgo_dp: t_dp,
    };

    let (_, b2, b3) = epsilon_bounds(
        pair_dp, pair_ep, v_e, v_p, v_d, c, cfg.a_p_max, cfg.a_e_max,
    );
    let bound = if a_e.is_some() { b2 } else { b3 };
    let epsilon_used = if g.epsilon > 0.0 {
        g.epsilon
    } else {
        cfg.epsilon_safety * bound
    };
    let epsilon_ok = epsilon_used >= bound;

    if !manifold.is_valid() {
        // Non-closing or singular geometry: fall back to the plain TPN lead
        // term so the defender keeps pursuing the pursuer.
        let a = (c * pair_dp.lambda_dot).clamp(-cfg.a_d_max, cfg.a_d_max);
        return DefenderOutput {
            command: GuidanceCommand::from_total(a, pair_dp.delta_ij),
            manifold,
            fallback: true,
            epsilon_used,
            epsilon_ok,
        };
    }

    let r_dp = pair_dp.r;
    let rd_dp = pair_dp.r_dot;
    let lam_dp = floor_magnitude(pair_dp.lambda_dot, cfg.lambda_dot_floor);
    let closing = floor_magnitude(rd_dp + 2.0 * c, cfg.closing_floor);
    let r_ep = pair_ep.r;
    let rd_ep = floor_magnitude(pair_ep.r_dot, cfg.closing_floor);
    let lam_ep = pair_ep.lambda_dot;

    let num = rd_dp * rd_dp + r_dp * r_dp * pair_dp.lambda_dot * pair_dp.lambda_dot
        + 2.0 * c * rd_dp;
    let num_sq = num * num;
    let den_core = 2.0 * r_dp * r_dp * lam_dp * closing;

    let sec_dp = 1.0 / floor_magnitude(pair_dp.delta_ij.cos(), cfg.cos_floor);

    let lead = c * pair_dp.lambda_dot;
    let los_rate_term = r_ep * r_ep * num_sq / (rd_ep * rd_ep * den_core) * lam_ep * lam_ep;
    let feed_through = match a_e {
        Some(a_e) => {
            r_ep * pair_ep.delta_ij.sin() * num_sq / (rd_ep * rd_ep * den_core) * a_e
        }
        None => 0.0,
    };
    let correction = num_sq / den_core
        * (g.reaching_term(s2) + sec_dp * epsilon_used)
        * smooth_sign(s2, cfg.sign_boundary_layer);

    let a_total = (lead - los_rate_term - feed_through + correction)
        .clamp(-cfg.a_d_max, cfg.a_d_max);

    DefenderOutput {
        command: GuidanceCommand::from_total(a_total, pair_dp.delta_ij),
        manifold,
        fallback: false,
        epsilon_used,
        epsilon_ok,
    }
}

/// Convenience wrapper: defender law with evader-maneuver access.
pub fn defender_accel_with_access(
    pair_dp: &PairState,
    pair_ep: &PairState,
    a_e: f64,
    v_e: f64,
    v_p: f64,
    v_d: f64,
    cfg: &GuidanceConfig,
) -> DefenderOutput {
    defender_accel(pair_dp, pair_ep, Some(a_e), v_e, v_p, v_d, cfg)
}

/// Convenience wrapper: defender law without evader-maneuver access.
pub fn defender_accel_without_access(
    pair_dp: &PairState,
    pair_ep: &PairState,
    v_e: f64,
    v_p: f64,
    v_d: f64,
    cfg: &GuidanceConfig,
) -> DefenderOutput {
    defender_accel(pair_dp, pair_ep, None, v_e, v_p, v_d, cfg)
}
