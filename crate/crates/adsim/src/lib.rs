//! Deterministic planar three-agent engagement simulator.
//!
//! Three nonholonomic vehicles move in a plane: a pursuer chasing a
//! high-value evader, and a defender whose job is to intercept the pursuer
//! before it reaches the evader. The evader flies a fixed-time sliding-mode
//! law that nulls the evader-pursuer line-of-sight rate; the defender flies a
//! true-proportional-navigation law that regulates the gap between the two
//! engagement time-to-go estimates to a configurable time margin.
//!
//! Crate layout:
//! - [`kinematics`]: agent/pair state types, relative motion, LOS-rate
//!   acceleration closed forms.
//! - [`guidance`]: the control laws, time-to-go estimators, sliding
//!   manifolds, settling-time bound, robustness-gain evaluators.
//! - [`sim`]: fixed-step RK4/Euler closed-loop propagation with event
//!   detection and full trace recording.
//! - [`experiments`]: named scenario presets, config (de)serialization,
//!   Monte-Carlo sampling and win-rate statistics.
//! - [`plot`]: dependency-free SVG line/scatter rendering.
//!
//! Everything is pure and deterministic: identical configs (seed included)
//! produce bit-identical traces and reports.

pub mod experiments;
pub mod guidance;
pub mod kinematics;
pub mod plot;
pub mod sim;

mod error;

pub use error::{Error, Result};
