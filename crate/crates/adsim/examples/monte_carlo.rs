//! Run a Monte-Carlo win-rate study. Defaults to a fast 200-run slice of
//! study "mc1"; pass a study name and optionally a run count:
//!
//!     cargo run --release --example monte_carlo -- mc2 1100

use adsim::experiments;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "mc1".into());
    let n_runs: usize = args
        .next()
        .map(|s| s.parse().expect("run count must be an integer"))
        .unwrap_or(200);

    let mut spec = experiments::mc_preset(&name).unwrap();
    spec.n_runs = n_runs;
    println!(
        "study {name}: {} runs, sampling {}",
        spec.n_runs,
        spec.params
            .iter()
            .map(|p| format!("{} in [{}, {}]", p.param.name(), p.lo, p.hi))
            .collect::<Vec<_>>()
            .join(", ")
    );

    let report = experiments::run_batch(&spec, None).unwrap();
    println!(
        "defender win rate: {:.4} ({}/{}), 95% Wilson interval [{:.4}, {:.4}]",
        report.win_rate, report.wins, report.n_runs, report.wilson_low, report.wilson_high
    );
    for note in &report.notes {
        println!("note: {note}");
    }
}
