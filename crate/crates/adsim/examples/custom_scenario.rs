//! Build a scenario programmatically, validate it, run it, and print the
//! JSON form accepted by `adsim run <config.json>` so it can be saved and
//! replayed from the command line.
//!
//!     cargo run --release --example custom_scenario

use adsim::experiments;
use adsim::guidance::PursuerStrategy;

fn main() {
    // Start from a named preset and push the engagement harder: closer
    // pursuer start, realistic-TPN pursuer, tighter time margin.
    let mut cfg = experiments::preset("ppn-with-access").unwrap();
    cfg.scenario.r_ep_m = 11_000.0;
    cfg.scenario.gamma_p_deg = 150.0;
    cfg.guidance.pursuer_strategy = PursuerStrategy::RealisticTpn;
    cfg.guidance.tau = 4.0;

    for finding in cfg.validate() {
        println!("{:?}: {}", finding.severity, finding.message);
    }

    let (trace, outcome) = cfg.run().unwrap();
    println!("\nverdict: {:?}", outcome.verdict);
    if let (Some(t), Some(m)) = (outcome.t_intercept, outcome.achieved_margin) {
        println!("defender intercepts at {t:.2} s with {m:.2} s to spare");
    }
    println!("trace rows recorded: {}", trace.rows.len());

    println!("\nconfig JSON (feed to `adsim run`):");
    println!("{}", serde_json::to_string_pretty(&cfg).unwrap());
}
