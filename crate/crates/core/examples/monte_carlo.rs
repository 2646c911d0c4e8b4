//! Simulated SINR ccdf against the analytic curve, with 99% Wilson
//! intervals.

use multislope::analytic::ccdf;
use multislope::montecarlo::estimate_ccdf;
use multislope::{db_to_linear, Metric, NetworkScenario, PathLossModel, SimConfig};

fn main() -> multislope::Result<()> {
    let scenario = NetworkScenario::new(1.0, 1.0, PathLossModel::make_dual(2.0, 4.0, 1.0)?)?;
    let thresholds: Vec<f64> = (-4..=4).map(|i| db_to_linear(5.0 * i as f64)).collect();
    let config = SimConfig::new(50_000, 42);

    let exact = ccdf(&scenario, &thresholds, Metric::Sinr, None)?;
    let sim = estimate_ccdf(&scenario, &config, &thresholds, Metric::Sinr)?;

    println!("window radius {:.2}, {} trials", sim.window_radius, sim.trials_used);
    println!(
        "{:>6} {:>10} {:>10} {:>22} {:>6}",
        "T_dB", "exact", "mc", "99% interval", "hit"
    );
    for i in 0..thresholds.len() {
        let (lo, hi) = sim.intervals[i];
        let p = exact.points[i].value;
        println!(
            "{:>6.1} {:>10.6} {:>10.6} {:>10.6} .. {:<9.6} {:>6}",
            10.0 * thresholds[i].log10(),
            p,
            sim.estimates[i],
            lo,
            hi,
            sim.contains(i, p)
        );
    }
    Ok(())
}
