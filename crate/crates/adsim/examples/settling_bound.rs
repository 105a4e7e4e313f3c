//! Demonstrate the fixed-time reaching law: however large the initial
//! error, the settling time stays below the closed-form bound computed
//! from the gains alone.
//!
//!     cargo run --release --example settling_bound

use adsim::guidance::{settling_bound, GainSet};

fn main() {
    let gains = GainSet {
        zeta: 0.5,
        xi: 0.8,
        alpha: 0.3,
        beta: 2.0,
        kappa: 1.0,
        epsilon: 0.0,
    };
    let bound = settling_bound(&gains).unwrap();
    println!("gains: {gains:?}");
    println!("settling bound: {bound:.3} s (independent of s(0))\n");

    println!("{:>12} {:>14} {:>12}", "s(0)", "settle time,s", "t/bound");
    for exp in [-2i32, 0, 2, 4, 6, 8] {
        let s0 = 10f64.powi(exp);
        let t = integrate_reaching(s0, &gains);
        println!("{s0:>12.0e} {t:>14.4} {:>12.3}", t / bound);
    }
}

/// Integrate s_dot = -(zeta |s|^alpha + xi |s|^beta) sign(s) until |s|
/// reaches (effectively) zero, with steps adapted to the stiff tail.
fn integrate_reaching(s0: f64, gains: &GainSet) -> f64 {
    let mut s = s0;
    let mut t = 0.0;
    while s.abs() > 1e-9 {
        let rate = -gains.reaching_term(s) * s.signum();
        let dt = (1e-4_f64).min(0.05 * s.abs() / rate.abs()).max(1e-9);
        s += rate * dt;
        t += dt;
    }
    t
}
