//! Agent and pair state types plus the planar relative-motion kinematics.
//!
//! All angles are radians wrapped into `(-pi, pi]`, all lengths meters, all
//! speeds m/s. The LOS angle of an ordered pair `(i, j)` points from agent
//! `i` toward agent `j`; bearing angles are headings measured relative to
//! that LOS.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::{Error, Result};

/// Standard gravity, used to convert g-unit acceleration limits.
pub const G: f64 = 9.81;

/// Separations below this are treated as coincident (LOS undefined).
pub const COINCIDENCE_EPS: f64 = 1e-6;

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % TAU;
    if a > PI {
        a -= TAU;
    } else if a <= -PI {
        a += TAU;
    }
    a
}

/// Full state of one vehicle: planar position, heading, speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    /// Position east, m.
    pub x: f64,
    /// Position north, m.
    pub y: f64,
    /// Heading angle, rad in `(-pi, pi]`.
    pub gamma: f64,
    /// Speed, m/s (strictly positive).
    pub v: f64,
}

impl AgentState {
    pub fn new(x: f64, y: f64, gamma: f64, v: f64) -> Self {
        Self {
            x,
            y,
            gamma: wrap_angle(gamma),
            v,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.gamma.is_finite() && self.v.is_finite()
    }
}

/// Time derivative of an [`AgentState`].
#[derive(Debug, Clone, Copy)]
pub struct AgentDerivative {
    pub dx: f64,
    pub dy: f64,
    pub dgamma: f64,
    pub dv: f64,
}

/// Acceleration command for one vehicle.
///
/// The pursuer and evader steer laterally only (`a_radial = 0`). The
/// defender's total acceleration is decomposed along/across its
/// velocity-to-LOS bearing: the lateral part drives the heading rate and the
/// radial part drives the speed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GuidanceCommand {
    /// Heading-rate channel, m/s^2.
    pub a_lateral: f64,
    /// Speed-change channel, m/s^2 (defender only).
    pub a_radial: f64,
}

impl GuidanceCommand {
    /// Lateral-only command (pursuer/evader).
    pub fn lateral(a: f64) -> Self {
        Self {
            a_lateral: a,
            a_radial: 0.0,
        }
    }

    /// Decompose a signed total acceleration using the bearing of the
    /// vehicle's velocity relative to the LOS.
    pub fn from_total(a_total: f64, delta: f64) -> Self {
        Self {
            a_lateral: a_total * delta.cos(),
            a_radial: a_total * delta.sin(),
        }
    }

    /// Total magnitude, m/s^2.
    pub fn total(&self) -> f64 {
        self.a_lateral.hypot(self.a_radial)
    }
}

/// Relative geometry of one ordered agent pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairState {
    /// Separation, m (non-negative).
    pub r: f64,
    /// LOS angle from agent `i` to agent `j`, rad in `(-pi, pi]`.
    pub lambda: f64,
    /// Range rate, m/s.
    pub r_dot: f64,
    /// LOS rate, rad/s.
    pub lambda_dot: f64,
    /// Bearing of the first agent relative to the LOS, rad.
    pub delta_ij: f64,
    /// Bearing of the second agent relative to the LOS, rad.
    pub delta_ji: f64,
}

/// Compute the relative geometry of the ordered pair `(a, b)`.
///
/// Range rate and LOS rate are the closed-form projections of the two
/// velocity vectors onto/across the LOS, not finite differences.
pub fn relative_state(a: &AgentState, b: &AgentState) -> Result<PairState> {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let r = dx.hypot(dy);
    if r < COINCIDENCE_EPS {
        return Err(Error::DegenerateGeometry { r });
    }
    let lambda = dy.atan2(dx);
    let delta_ij = wrap_angle(a.gamma - lambda);
    let delta_ji = wrap_angle(b.gamma - lambda);
    let r_dot = b.v * delta_ji.cos() - a.v * delta_ij.cos();
    let lambda_dot = (b.v * delta_ji.sin() - a.v * delta_ij.sin()) / r;
    Ok(PairState {
        r,
        lambda,
        r_dot,
        lambda_dot,
        delta_ij,
        delta_ji,
    })
}

/// Unicycle state derivative under a held command.
///
/// `dv` follows the radial channel, which is zero for the pursuer and
/// evader by construction of their commands.
pub fn state_derivative(s: &AgentState, cmd: &GuidanceCommand) -> Result<AgentDerivative> {
    if s.v <= 0.0 {
        return Err(Error::InvalidState(format!(
            "speed must be positive, got {} m/s",
            s.v
        )));
    }
    Ok(AgentDerivative {
        dx: s.v * s.gamma.cos(),
        dy: s.v * s.gamma.sin(),
        dgamma: cmd.a_lateral / s.v,
        dv: cmd.a_radial,
    })
}

/// Closed-form LOS angular acceleration of the defender-pursuer pair.
///
/// `a_d_total` is the defender's signed total acceleration (applied
/// perpendicular to the LOS via its two channels) and `a_p` the pursuer's
/// lateral acceleration. Serves as the oracle against finite-differenced
/// LOS rates from simulation.
pub fn los_accel_dp(pair: &PairState, a_d_total: f64, a_p: f64, delta_pd: f64) -> Result<f64> {
    if pair.r < COINCIDENCE_EPS {
        return Err(Error::DegenerateGeometry { r: pair.r });
    }
    Ok((-2.0 * pair.r_dot * pair.lambda_dot - a_d_total + a_p * delta_pd.cos()) / pair.r)
}

/// Closed-form LOS angular acceleration of the evader-pursuer pair.
pub fn los_accel_ep(
    pair: &PairState,
    a_e: f64,
    a_p: f64,
    delta_ep: f64,
    delta_pe: f64,
) -> Result<f64> {
    if pair.r < COINCIDENCE_EPS {
        return Err(Error::DegenerateGeometry { r: pair.r });
    }
    Ok(-2.0 * pair.r_dot * pair.lambda_dot / pair.r - delta_ep.cos() / pair.r * a_e
        + delta_pe.cos() / pair.r * a_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn wrap_stays_in_half_open_interval() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert_abs_diff_eq!(wrap_angle(3.0 * PI), PI);
        assert_abs_diff_eq!(wrap_angle(-2.5 * PI), -0.5 * PI, epsilon = 1e-12);
        assert_eq!(wrap_angle(0.0), 0.0);
    }

    #[test]
    fn head_on_collinear_geometry() {
        // Defender at origin running east, pursuer 10 km east running west.
        let d = AgentState::new(0.0, 0.0, 0.0, 400.0);
        let p = AgentState::new(10_000.0, 0.0, PI, 375.0);
        let pair = relative_state(&d, &p).unwrap();
        assert_relative_eq!(pair.r, 10_000.0);
        assert_abs_diff_eq!(pair.lambda, 0.0);
        assert_relative_eq!(pair.r_dot, -775.0);
        assert_abs_diff_eq!(pair.lambda_dot, 0.0);
    }

    #[test]
    fn tail_chase_along_los() {
        // Evader flees along the LOS while the pursuer heads straight at it.
        let lam = -45f64.to_radians();
        let e = AgentState::new(0.0, 0.0, lam + PI, 100.0);
        let p = AgentState::new(15_000.0 * lam.cos(), 15_000.0 * lam.sin(), lam + PI, 375.0);
        let pair = relative_state(&e, &p).unwrap();
        assert_relative_eq!(pair.r, 15_000.0, max_relative = 1e-12);
        assert_relative_eq!(pair.r_dot, -275.0, max_relative = 1e-12);
        assert_abs_diff_eq!(pair.lambda_dot, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coincident_positions_are_degenerate() {
        let a = AgentState::new(1.0, 2.0, 0.0, 100.0);
        let b = AgentState::new(1.0, 2.0, 1.0, 200.0);
        assert!(matches!(
            relative_state(&a, &b),
            Err(Error::DegenerateGeometry { .. })
        ));
    }

    #[test]
    fn straight_flight_derivative() {
        let s = AgentState::new(0.0, 0.0, 0.0, 100.0);
        let d = state_derivative(&s, &GuidanceCommand::lateral(0.0)).unwrap();
        assert_eq!((d.dx, d.dy, d.dgamma, d.dv), (100.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn heading_rate_is_accel_over_speed() {
        let s = AgentState::new(0.0, 0.0, 0.5, 400.0);
        let d = state_derivative(&s, &GuidanceCommand::lateral(40.0 * G)).unwrap();
        assert_relative_eq!(d.dgamma, 0.981, max_relative = 1e-12);
    }

    #[test]
    fn radial_channel_changes_speed() {
        let s = AgentState::new(0.0, 0.0, 0.0, 400.0);
        let cmd = GuidanceCommand {
            a_lateral: 0.0,
            a_radial: 10.0,
        };
        let d = state_derivative(&s, &cmd).unwrap();
        assert_eq!(d.dv, 10.0);
        assert_eq!(d.dx, 400.0);
    }

    #[test]
    fn nonpositive_speed_is_invalid() {
        let s = AgentState::new(0.0, 0.0, 0.0, 0.0);
        assert!(state_derivative(&s, &GuidanceCommand::default()).is_err());
    }

    #[test]
    fn los_accel_dp_hand_values() {
        let pair = PairState {
            r: 10_000.0,
            lambda: 0.0,
            r_dot: -775.0,
            lambda_dot: 0.01,
            delta_ij: 0.0,
            delta_ji: PI,
        };
        // Equilibrium: no rates, no controls.
        let quiet = PairState {
            lambda_dot: 0.0,
            r_dot: 0.0,
            ..pair
        };
        assert_eq!(los_accel_dp(&quiet, 0.0, 0.0, PI).unwrap(), 0.0);
        // (15.5 - 50) / 10000
        let v = los_accel_dp(&pair, 50.0, 0.0, PI).unwrap();
        assert_relative_eq!(v, -0.00345, max_relative = 1e-12);
    }

    #[test]
    fn los_accel_ep_hand_values() {
        let pair = PairState {
            r: 15_000.0,
            lambda: 0.0,
            r_dot: -275.0,
            lambda_dot: 0.0,
            delta_ij: 0.0,
            delta_ji: 0.0,
        };
        assert_eq!(los_accel_ep(&pair, 0.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
        let v = los_accel_ep(&pair, 0.0, 18.75, 0.0, 0.0).unwrap();
        assert_relative_eq!(v, 0.00125, max_relative = 1e-12);
    }

    #[test]
    fn los_accel_degenerate_range() {
        let pair = PairState {
            r: 0.0,
            lambda: 0.0,
            r_dot: 0.0,
            lambda_dot: 0.0,
            delta_ij: 0.0,
            delta_ji: 0.0,
        };
        assert!(los_accel_dp(&pair, 0.0, 0.0, 0.0).is_err());
        assert!(los_accel_ep(&pair, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn command_decomposition_identity() {
        let cmd = GuidanceCommand::from_total(392.4, 0.6435);
        assert_relative_eq!(cmd.total(), 392.4, max_relative = 1e-9);
    }

    /// Finite-difference oracle: closed-form r_dot / lambda_dot must match
    /// centered differences of r(t), lambda(t) along short straight-line
    /// propagation of both agents.
    #[test]
    fn rates_match_finite_differences() {
        let cases = [
            (
                AgentState::new(100.0, -50.0, 0.3, 120.0),
                AgentState::new(4_000.0, 2_500.0, -2.0, 310.0),
            ),
            (
                AgentState::new(-900.0, 700.0, 2.9, 80.0),
                AgentState::new(1_200.0, -3_000.0, 1.1, 420.0),
            ),
        ];
        let h = 1e-4;
        for (a, b) in cases {
            let advance = |s: &AgentState, dt: f64| {
                AgentState::new(
                    s.x + s.v * s.gamma.cos() * dt,
                    s.y + s.v * s.gamma.sin() * dt,
                    s.gamma,
                    s.v,
                )
            };
            let pm = relative_state(&advance(&a, -h), &advance(&b, -h)).unwrap();
            let p0 = relative_state(&a, &b).unwrap();
            let pp = relative_state(&advance(&a, h), &advance(&b, h)).unwrap();
            let r_dot_fd = (pp.r - pm.r) / (2.0 * h);
            let lam_dot_fd = wrap_angle(pp.lambda - pm.lambda) / (2.0 * h);
            assert_relative_eq!(p0.r_dot, r_dot_fd, max_relative = 1e-6);
            assert_relative_eq!(p0.lambda_dot, lam_dot_fd, max_relative = 1e-6);
        }
    }

    proptest! {
        /// Rotating the whole scene by a common angle preserves r, r_dot,
        /// |lambda_dot| and shifts lambda by that angle.
        #[test]
        fn rotation_invariance(
            ax in -1e4..1e4f64, ay in -1e4..1e4f64,
            bx in -1e4..1e4f64, by in -1e4..1e4f64,
            ga in -3.0..3.0f64, gb in -3.0..3.0f64,
            va in 1.0..500.0f64, vb in 1.0..500.0f64,
            theta in -3.0..3.0f64,
        ) {
            prop_assume!(((ax - bx).powi(2) + (ay - by).powi(2)).sqrt() > 1.0);
            let a = AgentState::new(ax, ay, ga, va);
            let b = AgentState::new(bx, by, gb, vb);
            let rot = |s: &AgentState| AgentState::new(
                s.x * theta.cos() - s.y * theta.sin(),
                s.x * theta.sin() + s.y * theta.cos(),
                s.gamma + theta,
                s.v,
            );
            let p0 = relative_state(&a, &b).unwrap();
            let p1 = relative_state(&rot(&a), &rot(&b)).unwrap();
            prop_assert!((p0.r - p1.r).abs() / p0.r < 1e-9);
            prop_assert!((p0.r_dot - p1.r_dot).abs() < 1e-6);
            prop_assert!((p0.lambda_dot.abs() - p1.lambda_dot.abs()).abs() < 1e-9);
            prop_assert!(wrap_angle(p1.lambda - p0.lambda - theta).abs() < 1e-9);
        }

        /// Pair range equals the Euclidean distance between the raw states.
        #[test]
        fn range_consistency(
            ax in -1e4..1e4f64, ay in -1e4..1e4f64,
            bx in -1e4..1e4f64, by in -1e4..1e4f64,
        ) {
            let dist = ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt();
            prop_assume!(dist > 1.0);
            let a = AgentState::new(ax, ay, 0.0, 100.0);
            let b = AgentState::new(bx, by, 0.0, 100.0);
            let p = relative_state(&a, &b).unwrap();
            prop_assert!((p.r - dist).abs() / dist < 1e-9);
        }
    }
}
