//! Fixed-step closed-loop propagation with event detection and trace
//! recording.
//!
//! Guidance commands are computed once per step from the pre-step states and
//! held over the step (zero-order hold); all three agents are integrated
//! simultaneously. Interception instants are refined by linear interpolation
//! of the range between the bracketing steps.

use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::guidance::{
    self, DefenderMode, EvaderLaw, GuidanceConfig, ManifoldSnapshot,
};
use crate::kinematics::{
    relative_state, state_derivative, AgentState, GuidanceCommand, PairState,
};
use crate::{Error, Result};

fn default_dt() -> f64 {
    1e-3
}
fn default_t_max() -> f64 {
    120.0
}
fn default_capture_radius() -> f64 {
    3.0
}
fn default_record_stride() -> usize {
    10
}
fn default_integrator() -> Integrator {
    Integrator::Rk4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    Rk4,
    Euler,
}

/// Integration and termination settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Integration step, s.
    #[serde(default = "default_dt")]
    pub dt: f64,
    /// Horizon, s.
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    /// Interception threshold, m.
    #[serde(default = "default_capture_radius")]
    pub capture_radius: f64,
    #[serde(default = "default_integrator")]
    pub integrator: Integrator,
    /// Steps per recorded trace row.
    #[serde(default = "default_record_stride")]
    pub record_stride: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: default_dt(),
            t_max: default_t_max(),
            capture_radius: default_capture_radius(),
            integrator: default_integrator(),
            record_stride: default_record_stride(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_max > self.dt) {
            return Err(Error::Config(format!(
                "t_max ({}) must exceed dt ({})",
                self.t_max, self.dt
            )));
        }
        if !(self.capture_radius > 0.0) {
            return Err(Error::Config("capture_radius must be positive".into()));
        }
        if self.record_stride == 0 {
            return Err(Error::Config("record_stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// The three vehicles, in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agents {
    pub evader: AgentState,
    pub pursuer: AgentState,
    pub defender: AgentState,
}

/// One recorded step of a simulation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceRow {
    pub t: f64,
    pub evader: AgentState,
    pub pursuer: AgentState,
    pub defender: AgentState,
    pub ep: PairState,
    pub dp: PairState,
    pub de: PairState,
    pub cmd_evader: GuidanceCommand,
    pub cmd_pursuer: GuidanceCommand,
    pub cmd_defender: GuidanceCommand,
    pub manifold: ManifoldSnapshot,
    /// Defender fell back to the plain TPN lead term this step.
    pub fallback: bool,
    /// The applied robustness gain met its sufficiency bound this step.
    pub epsilon_ok: bool,
}

/// Time-indexed engagement log.
#[derive(Debug, Clone, Default)]
pub struct SimTrace {
    pub rows: Vec<TraceRow>,
}

/// Fixed CSV column order; see the README for the full schema.
pub const CSV_HEADER: &str = "t,x_E,y_E,gamma_E,v_E,x_P,y_P,gamma_P,v_P,x_D,y_D,gamma_D,v_D,\
r_EP,lambda_EP,lambda_dot_EP,r_DP,lambda_DP,lambda_dot_DP,r_DE,lambda_DE,lambda_dot_DE,\
a_E,a_P,a_D_lat,a_D_rad,s1,s2,tgo_EP,tgo_DP";

/// Format a float with 9 significant digits; deterministic across runs.
pub fn fmt_g9(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{:.8e}", x)
    }
}

impl SimTrace {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", CSV_HEADER)?;
        for row in &self.rows {
            let fields: Vec<String> = [
                row.t,
                row.evader.x,
                row.evader.y,
                row.evader.gamma,
                row.evader.v,
                row.pursuer.x,
                row.pursuer.y,
                row.pursuer.gamma,
                row.pursuer.v,
                row.defender.x,
                row.defender.y,
                row.defender.gamma,
                row.defender.v,
                row.ep.r,
                row.ep.lambda,
                row.ep.lambda_dot,
                row.dp.r,
                row.dp.lambda,
                row.dp.lambda_dot,
                row.de.r,
                row.de.lambda,
                row.de.lambda_dot,
                row.cmd_evader.a_lateral,
                row.cmd_pursuer.a_lateral,
                row.cmd_defender.a_lateral,
                row.cmd_defender.a_radial,
                row.manifold.s1,
                row.manifold.s2,
                row.manifold.tgo_ep,
                row.manifold.tgo_dp,
            ]
            .iter()
            .map(|v| fmt_g9(*v))
            .collect();
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }
}

/// Terminal classification of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The defender reached the pursuer while the evader was still safe.
    DefenderWins,
    /// The pursuer reached the evader first.
    PursuerWins,
    /// The horizon elapsed without an interception.
    Timeout,
    /// The initial geometry was unusable.
    Degenerate,
}

/// Run summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Interception instant, s (interpolated between steps).
    pub t_intercept: Option<f64>,
    /// Evader-pursuer time-to-go at the moment the defender intercepts, s.
    pub achieved_margin: Option<f64>,
    pub min_r_dp: f64,
    pub min_r_ep: f64,
}

/// Proportional magnitude clamp: direction (and the lateral/radial ratio)
/// is preserved.
pub fn apply_saturation(cmd: GuidanceCommand, limit: f64) -> GuidanceCommand {
    let mag = cmd.total();
    if mag <= limit || mag == 0.0 {
        cmd
    } else {
        let k = limit / mag;
        GuidanceCommand {
            a_lateral: cmd.a_lateral * k,
            a_radial: cmd.a_radial * k,
        }
    }
}

fn advance_agent(
    s: &AgentState,
    cmd: &GuidanceCommand,
    dt: f64,
    integrator: Integrator,
) -> Result<AgentState> {
    let out = match integrator {
        Integrator::Euler => {
            let k = state_derivative(s, cmd)?;
            AgentState {
                x: s.x + dt * k.dx,
                y: s.y + dt * k.dy,
                gamma: s.gamma + dt * k.dgamma,
                v: s.v + dt * k.dv,
            }
        }
        Integrator::Rk4 => {
            let shift = |s: &AgentState, k: &crate::kinematics::AgentDerivative, h: f64| {
                AgentState {
                    x: s.x + h * k.dx,
                    y: s.y + h * k.dy,
                    gamma: s.gamma + h * k.dgamma,
                    v: s.v + h * k.dv,
                }
            };
            let k1 = state_derivative(s, cmd)?;
            let k2 = state_derivative(&shift(s, &k1, dt / 2.0), cmd)?;
            let k3 = state_derivative(&shift(s, &k2, dt / 2.0), cmd)?;
            let k4 = state_derivative(&shift(s, &k3, dt), cmd)?;
            AgentState {
                x: s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
                y: s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
                gamma: s.gamma + dt / 6.0 * (k1.dgamma + 2.0 * k2.dgamma + 2.0 * k3.dgamma + k4.dgamma),
                v: s.v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
            }
        }
    };
    Ok(AgentState::new(out.x, out.y, out.gamma, out.v))
}

/// Advance all three agents one step under held commands. Angles are
/// wrapped and the defender speed clamped afterwards.
pub fn step(
    agents: &Agents,
    cmds: &(GuidanceCommand, GuidanceCommand, GuidanceCommand),
    gcfg: &GuidanceConfig,
    scfg: &SimConfig,
) -> Result<Agents> {
    let evader = advance_agent(&agents.evader, &cmds.0, scfg.dt, scfg.integrator)?;
    let pursuer = advance_agent(&agents.pursuer, &cmds.1, scfg.dt, scfg.integrator)?;
    let mut defender = advance_agent(&agents.defender, &cmds.2, scfg.dt, scfg.integrator)?;
    defender.v = defender.v.clamp(gcfg.v_d_min, gcfg.v_d_max);
    Ok(Agents {
        evader,
        pursuer,
        defender,
    })
}

struct StepDecision {
    cmds: (GuidanceCommand, GuidanceCommand, GuidanceCommand),
    row: TraceRow,
}

fn decide(t: f64, agents: &Agents, gcfg: &GuidanceConfig) -> Result<StepDecision> {
    let ep = relative_state(&agents.evader, &agents.pursuer)?;
    let dp = relative_state(&agents.defender, &agents.pursuer)?;
    let de = relative_state(&agents.defender, &agents.evader)?;

    let cmd_e = match gcfg.evader_law {
        EvaderLaw::FixedTime => guidance::evader_accel(&ep, gcfg),
        EvaderLaw::None => GuidanceCommand::default(),
    };
    let cmd_p = guidance::pursuer_accel(&ep, cmd_e.a_lateral, agents.pursuer.v, gcfg);

    let (cmd_d, manifold, fallback, epsilon_ok) = match gcfg.defender_mode {
        DefenderMode::WithEvaderAccess => {
            let out = guidance::defender_accel_with_access(
                &dp,
                &ep,
                cmd_e.a_lateral,
                agents.evader.v,
                agents.pursuer.v,
                agents.defender.v,
                gcfg,
            );
            (out.command, out.manifold, out.fallback, out.epsilon_ok)
        }
        DefenderMode::WithoutEvaderAccess => {
            let out = guidance::defender_accel_without_access(
                &dp,
                &ep,
                agents.evader.v,
                agents.pursuer.v,
                agents.defender.v,
                gcfg,
            );
            (out.command, out.manifold, out.fallback, out.epsilon_ok)
        }
        DefenderMode::None => {
            let c = gcfg.effective_c(&dp, agents.defender.v, agents.pursuer.v);
            let t_ep = guidance::tgo_ep(&ep, agents.evader.v, agents.pursuer.v);
            let t_dp = guidance::tgo_dp(&dp, agents.defender.v, agents.pursuer.v, c);
            let s2 = if t_ep.is_finite() && t_dp.is_finite() {
                t_dp - t_ep + gcfg.tau
            } else {
                f64::NAN
            };
            (
                GuidanceCommand::default(),
                ManifoldSnapshot {
                    s1: ep.lambda_dot,
                    s2,
                    tgo_ep: t_ep,
                    tgo_dp: t_dp,
                },
                false,
                true,
            )
        }
    };

    Ok(StepDecision {
        cmds: (cmd_e, cmd_p, cmd_d),
        row: TraceRow {
            t,
            evader: agents.evader,
            pursuer: agents.pursuer,
            defender: agents.defender,
            ep,
            dp,
            de,
            cmd_evader: cmd_e,
            cmd_pursuer: cmd_p,
            cmd_defender: cmd_d,
            manifold,
            fallback,
            epsilon_ok,
        },
    })
}

fn interp_crossing(t0: f64, dt: f64, r0: f64, r1: f64, radius: f64) -> f64 {
    // Linear range interpolation across the bracketing step.
    t0 + dt * (r0 - radius) / (r0 - r1)
}

/// Run the closed loop until interception, capture, or timeout.
pub fn simulate(
    initial: &Agents,
    gcfg: &GuidanceConfig,
    scfg: &SimConfig,
) -> Result<(SimTrace, Outcome)> {
    scfg.validate()?;
    let mut trace = SimTrace::default();

    // Degenerate initial geometry is a verdict, not an error.
    if relative_state(&initial.evader, &initial.pursuer).is_err()
        || relative_state(&initial.defender, &initial.pursuer).is_err()
        || relative_state(&initial.defender, &initial.evader).is_err()
    {
        return Ok((
            trace,
            Outcome {
                verdict: Verdict::Degenerate,
                t_intercept: None,
                achieved_margin: None,
                min_r_dp: f64::NAN,
                min_r_ep: f64::NAN,
            },
        ));
    }

    let mut agents = *initial;
    let mut t = 0.0;
    let mut min_r_dp = f64::INFINITY;
    let mut min_r_ep = f64::INFINITY;
    let n_steps = (scfg.t_max / scfg.dt).ceil() as usize;

    // Immediate-capture check at t = 0.
    {
        let d0 = decide(0.0, &agents, gcfg)?;
        min_r_dp = min_r_dp.min(d0.row.dp.r);
        min_r_ep = min_r_ep.min(d0.row.ep.r);
        if d0.row.dp.r <= scfg.capture_radius || d0.row.ep.r <= scfg.capture_radius {
            let defender_wins =
                d0.row.dp.r <= scfg.capture_radius && d0.row.ep.r > scfg.capture_radius;
            trace.rows.push(d0.row);
            let margin = if defender_wins {
                Some(guidance::tgo_ep(&d0.row.ep, agents.evader.v, agents.pursuer.v))
            } else {
                None
            };
            return Ok((
                trace,
                Outcome {
                    verdict: if defender_wins {
                        Verdict::DefenderWins
                    } else {
                        Verdict::PursuerWins
                    },
                    t_intercept: Some(0.0),
                    achieved_margin: margin,
                    min_r_dp,
                    min_r_ep,
                },
            ));
        }
    }

    for step_idx in 0..n_steps {
        let decision = decide(t, &agents, gcfg)?;
        let r_dp_prev = decision.row.dp.r;
        let r_ep_prev = decision.row.ep.r;
        if step_idx % scfg.record_stride == 0 {
            trace.rows.push(decision.row);
        }

        let next = step(&agents, &decision.cmds, gcfg, scfg)?;
        if !(next.evader.is_finite() && next.pursuer.is_finite() && next.defender.is_finite()) {
            return Err(Error::Propagation {
                t,
                detail: format!("non-finite state after step {step_idx}: {next:?}"),
            });
        }
        let t_next = t + scfg.dt;

        let ep_next = relative_state(&next.evader, &next.pursuer);
        let dp_next = relative_state(&next.defender, &next.pursuer);
        let (r_ep_next, r_dp_next) = match (&ep_next, &dp_next) {
            (Ok(ep), Ok(dp)) => (ep.r, dp.r),
            // A pair collapsed below the coincidence epsilon inside the
            // step; that is far below any capture radius, so treat it as a
            // zero-range crossing.
            _ => (
                ep_next.map(|p| p.r).unwrap_or(0.0),
                dp_next.map(|p| p.r).unwrap_or(0.0),
            ),
        };
        min_r_dp = min_r_dp.min(r_dp_next);
        min_r_ep = min_r_ep.min(r_ep_next);

        let dp_crossed = r_dp_next <= scfg.capture_radius;
        let ep_crossed = r_ep_next <= scfg.capture_radius;
        if dp_crossed || ep_crossed {
            let t_dp = if dp_crossed {
                interp_crossing(t, scfg.dt, r_dp_prev, r_dp_next, scfg.capture_radius)
            } else {
                f64::INFINITY
            };
            let t_ep = if ep_crossed {
                interp_crossing(t, scfg.dt, r_ep_prev, r_ep_next, scfg.capture_radius)
            } else {
                f64::INFINITY
            };
            let final_decision = decide(t_next, &next, gcfg);
            if let Ok(d) = final_decision {
                trace.rows.push(d.row);
            }
            // Defender wins only on a strictly earlier crossing; ties go to
            // the pursuer since the evader must still be clear.
            if t_dp < t_ep {
                // Margin: EP time-to-go at the crossing instant, linearly
                // interpolated between the bracketing steps.
                let theta = (t_dp - t) / scfg.dt;
                let lerp = |a: &AgentState, b: &AgentState| AgentState {
                    x: a.x + theta * (b.x - a.x),
                    y: a.y + theta * (b.y - a.y),
                    gamma: a.gamma + theta * crate::kinematics::wrap_angle(b.gamma - a.gamma),
                    v: a.v + theta * (b.v - a.v),
                };
                let e_at = lerp(&agents.evader, &next.evader);
                let p_at = lerp(&agents.pursuer, &next.pursuer);
                let margin = relative_state(&e_at, &p_at)
                    .map(|pair| guidance::tgo_ep(&pair, e_at.v, p_at.v))
                    .unwrap_or(f64::NAN);
                return Ok((
                    trace,
                    Outcome {
                        verdict: Verdict::DefenderWins,
                        t_intercept: Some(t_dp),
                        achieved_margin: Some(margin),
                        min_r_dp,
                        min_r_ep,
                    },
                ));
            }
            return Ok((
                trace,
                Outcome {
                    verdict: Verdict::PursuerWins,
                    t_intercept: Some(t_ep),
                    achieved_margin: None,
                    min_r_dp,
                    min_r_ep,
                },
            ));
        }

        agents = next;
        t = t_next;
    }

    // Timeout: close the trace with the final state.
    if let Ok(d) = decide(t, &agents, gcfg) {
        trace.rows.push(d.row);
    }
    Ok((
        trace,
        Outcome {
            verdict: Verdict::Timeout,
            t_intercept: None,
            achieved_margin: None,
            min_r_dp,
            min_r_ep,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guidance::{GainSet, PursuerStrategy};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn quiet_gcfg() -> GuidanceConfig {
        GuidanceConfig {
            evader_gains: GainSet {
                zeta: 0.05,
                xi: 0.005,
                alpha: 0.3,
                beta: 2.0,
                kappa: 1.0,
                epsilon: 0.0,
            },
            defender_gains: GainSet {
                zeta: 0.05,
                xi: 1.2,
                alpha: 0.3,
                beta: 2.0,
                kappa: 1.0,
                epsilon: 0.0,
            },
            c: None,
            tau: 5.0,
            n_pn: 5.0,
            k_p: 1.0,
            apn_negative_base: false,
            a_e_max: 49.05,
            a_p_max: 392.4,
            a_d_max: 392.4,
            sign_boundary_layer: 1e-3,
            lambda_dot_floor: 1e-4,
            epsilon_safety: 1.2,
            cos_floor: 1e-3,
            range_floor: 10.0,
            closing_floor: 1e-3,
            v_d_min: 50.0,
            v_d_max: 600.0,
            evader_law: EvaderLaw::None,
            defender_mode: DefenderMode::None,
            pursuer_strategy: PursuerStrategy::None,
        }
    }

    fn straight_agents() -> Agents {
        Agents {
            evader: AgentState::new(0.0, 0.0, 0.0, 100.0),
            pursuer: AgentState::new(10_000.0, 5_000.0, 0.0, 375.0),
            defender: AgentState::new(-5_000.0, -5_000.0, PI / 2.0, 400.0),
        }
    }

    #[test]
    fn zero_command_straight_advance() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig::default();
        let agents = straight_agents();
        let cmds = Default::default();
        let next = step(
            &agents,
            &(cmds, cmds, cmds),
            &gcfg,
            &scfg,
        )
        .unwrap();
        assert_relative_eq!(next.evader.x, 0.1, max_relative = 1e-12);
        assert_eq!(next.evader.y, 0.0);
    }

    #[test]
    fn constant_lateral_accel_traces_a_circle() {
        // Turn radius v^2 / a; RK4 should track the analytic circle to
        // O(dt^4) per step.
        let scfg = SimConfig {
            dt: 1e-3,
            ..SimConfig::default()
        };
        let v = 100.0;
        let a = 20.0;
        let radius = v * v / a;
        let mut s = AgentState::new(0.0, 0.0, 0.0, v);
        let cmd = GuidanceCommand::lateral(a);
        let steps = 5_000;
        for _ in 0..steps {
            s = advance_agent(&s, &cmd, scfg.dt, scfg.integrator).unwrap();
        }
        let t = steps as f64 * scfg.dt;
        let omega = a / v;
        let expect_x = radius * (omega * t).sin();
        let expect_y = radius * (1.0 - (omega * t).cos());
        assert_abs_diff_eq!(s.x, expect_x, epsilon = 1e-6);
        assert_abs_diff_eq!(s.y, expect_y, epsilon = 1e-6);
        assert_abs_diff_eq!(s.gamma, crate::kinematics::wrap_angle(omega * t), epsilon = 1e-9);
    }

    #[test]
    fn euler_vs_rk4_convergence_order() {
        // Against a dt/10 RK4 reference, halving dt shrinks the Euler error
        // ~2x and the RK4 error ~16x.
        let v = 100.0;
        let a = 30.0;
        let cmd = GuidanceCommand::lateral(a);
        let t_end = 1.0;
        let run = |dt: f64, integrator: Integrator| {
            let mut s = AgentState::new(0.0, 0.0, 0.0, v);
            let n = (t_end / dt).round() as usize;
            for _ in 0..n {
                s = advance_agent(&s, &cmd, dt, integrator).unwrap();
            }
            s
        };
        let reference = run(1e-4, Integrator::Rk4);
        let err = |s: &AgentState| {
            ((s.x - reference.x).powi(2) + (s.y - reference.y).powi(2)).sqrt()
        };
        let euler_coarse = err(&run(1e-2, Integrator::Euler));
        let euler_fine = err(&run(5e-3, Integrator::Euler));
        let rk4_coarse = err(&run(1e-1, Integrator::Rk4));
        let rk4_fine = err(&run(5e-2, Integrator::Rk4));
        let euler_ratio = euler_coarse / euler_fine;
        let rk4_ratio = rk4_coarse / rk4_fine;
        assert!((1.5..3.0).contains(&euler_ratio), "euler ratio {euler_ratio}");
        assert!(rk4_ratio > 10.0, "rk4 ratio {rk4_ratio}");
    }

    #[test]
    fn saturation_examples() {
        let over = GuidanceCommand::lateral(60.0 * crate::kinematics::G);
        let clamped = apply_saturation(over, 40.0 * crate::kinematics::G);
        assert_relative_eq!(clamped.a_lateral, 40.0 * crate::kinematics::G);
        let under = GuidanceCommand::lateral(10.0);
        assert_eq!(apply_saturation(under, 392.4), under);
        let d = GuidanceCommand {
            a_lateral: 300.0,
            a_radial: 400.0,
        };
        let scaled = apply_saturation(d, 392.4);
        assert_relative_eq!(scaled.total(), 392.4, max_relative = 1e-12);
        assert_relative_eq!(scaled.a_lateral / scaled.a_radial, 0.75, max_relative = 1e-12);
    }

    #[test]
    fn immediate_capture_when_pursuer_starts_inside_radius() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig::default();
        let agents = Agents {
            evader: AgentState::new(0.0, 0.0, 0.0, 100.0),
            pursuer: AgentState::new(5_000.0, 1.0, PI, 375.0),
            defender: AgentState::new(5_000.0, -1.0, 0.0, 400.0),
        };
        let (_, outcome) = simulate(&agents, &gcfg, &scfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::DefenderWins);
        assert_eq!(outcome.t_intercept, Some(0.0));
    }

    #[test]
    fn guidance_off_non_intersecting_lines_time_out() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig {
            t_max: 5.0,
            ..SimConfig::default()
        };
        let (trace, outcome) = simulate(&straight_agents(), &gcfg, &scfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Timeout);
        assert!(outcome.t_intercept.is_none());
        assert!(!trace.rows.is_empty());
    }

    #[test]
    fn degenerate_initial_geometry() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig::default();
        let agents = Agents {
            evader: AgentState::new(0.0, 0.0, 0.0, 100.0),
            pursuer: AgentState::new(0.0, 0.0, PI, 375.0),
            defender: AgentState::new(1_000.0, 0.0, 0.0, 400.0),
        };
        let (_, outcome) = simulate(&agents, &gcfg, &scfg).unwrap();
        assert_eq!(outcome.verdict, Verdict::Degenerate);
    }

    #[test]
    fn speed_conservation_without_radial_channel() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig {
            t_max: 20.0,
            record_stride: 1,
            ..SimConfig::default()
        };
        let (trace, _) = simulate(&straight_agents(), &gcfg, &scfg).unwrap();
        for row in &trace.rows {
            assert!((row.evader.v - 100.0).abs() / 100.0 < 1e-9);
            assert!((row.pursuer.v - 375.0).abs() / 375.0 < 1e-9);
        }
    }

    #[test]
    fn trace_rows_strictly_increasing_time() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig {
            t_max: 2.0,
            record_stride: 7,
            ..SimConfig::default()
        };
        let (trace, _) = simulate(&straight_agents(), &gcfg, &scfg).unwrap();
        for pair in trace.rows.windows(2) {
            assert!(pair[1].t > pair[0].t);
        }
    }

    #[test]
    fn bit_identical_reruns() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig {
            t_max: 3.0,
            record_stride: 1,
            ..SimConfig::default()
        };
        let (t1, o1) = simulate(&straight_agents(), &gcfg, &scfg).unwrap();
        let (t2, o2) = simulate(&straight_agents(), &gcfg, &scfg).unwrap();
        assert_eq!(o1, o2);
        assert_eq!(t1.rows.len(), t2.rows.len());
        for (a, b) in t1.rows.iter().zip(t2.rows.iter()) {
            assert_eq!(a.evader, b.evader);
            assert_eq!(a.pursuer, b.pursuer);
            assert_eq!(a.defender, b.defender);
        }
    }

    #[test]
    fn csv_header_matches_row_width() {
        let gcfg = quiet_gcfg();
        let scfg = SimConfig {
            t_max: 0.1,
            ..SimConfig::default()
        };
        let (trace, _) = simulate(&straight_agents(), &gcfg, &scfg).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        let header_cols = lines.next().unwrap().split(',').count();
        for line in lines {
            assert_eq!(line.split(',').count(), header_cols);
        }
    }
}
