//! Run all six case-study presets (three pursuer strategies, defender with
//! and without evader-acceleration access) and tabulate the outcomes.
//!
//!     cargo run --release --example all_presets

use adsim::experiments::{self, PRESET_NAMES};

fn main() {
    println!(
        "{:<22} {:>14} {:>12} {:>10} {:>12}",
        "preset", "verdict", "intercept,s", "margin,s", "min r_DP,m"
    );
    for name in PRESET_NAMES {
        let cfg = experiments::preset(name).unwrap();
        let (_, o) = cfg.run().unwrap();
        println!(
            "{:<22} {:>14} {:>12} {:>10} {:>12.2}",
            name,
            format!("{:?}", o.verdict),
            o.t_intercept.map_or("-".into(), |t| format!("{t:.2}")),
            o.achieved_margin.map_or("-".into(), |m| format!("{m:.3}")),
            o.min_r_dp,
        );
    }
}
