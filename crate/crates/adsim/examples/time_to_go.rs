//! Explore the two time-to-go estimators on hand-built geometries: the
//! evader-pursuer closing-speed estimate and the defender-pursuer
//! lead-parameter estimate, including its head-on collapse to
//! r / (v_P + v_D) for every lead parameter c.
//!
//!     cargo run --release --example time_to_go

use adsim::guidance::{tgo_dp, tgo_ep};
use adsim::kinematics::{relative_state, AgentState};

fn main() {
    let (v_e, v_p, v_d) = (100.0, 375.0, 400.0);

    // Evader fleeing at 30 deg off the LOS, pursuer boring straight in.
    let evader = AgentState::new(0.0, 0.0, 0.5236, v_e);
    let pursuer = AgentState::new(15_000.0, 0.0, std::f64::consts::PI, v_p);
    let ep = relative_state(&evader, &pursuer).unwrap();
    println!(
        "EP geometry: r = {:.0} m, closing rate = {:.1} m/s, tgo_EP = {:.2} s",
        ep.r,
        -ep.r_dot,
        tgo_ep(&ep, v_e, v_p)
    );

    // Head-on defender-pursuer: the estimate is c-independent.
    let defender = AgentState::new(5_000.0, 0.0, 0.0, v_d);
    let dp = relative_state(&defender, &pursuer).unwrap();
    println!(
        "\nhead-on DP at r = {:.0} m; exact intercept time r/(v_P+v_D) = {:.4} s",
        dp.r,
        dp.r / (v_p + v_d)
    );
    for c in [0.1, 10.0, 500.0, 5e4] {
        println!("  c = {c:>8}: tgo_DP = {:.4} s", tgo_dp(&dp, v_d, v_p, c));
    }

    // Off-axis geometry: c trades between the closest-approach time and
    // the plain r/|r_dot| estimate.
    let defender = AgentState::new(4_000.0, -2_500.0, 1.0, v_d);
    let dp = relative_state(&defender, &pursuer).unwrap();
    println!(
        "\noff-axis DP: r = {:.0} m, r_dot = {:.1} m/s, LOS rate = {:.4} rad/s",
        dp.r, dp.r_dot, dp.lambda_dot
    );
    for c in [1.0, 100.0, 1_000.0, 1e5] {
        println!("  c = {c:>8}: tgo_DP = {:.4} s", tgo_dp(&dp, v_d, v_p, c));
    }
}
