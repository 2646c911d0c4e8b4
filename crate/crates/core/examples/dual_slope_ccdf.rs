//! SINR ccdf of a two-ray network (alpha0 = 2, alpha1 = 4, R_c = 1,
//! unit noise) with the closed-form lower bound alongside.

use multislope::analytic::{ccdf, coverage_sinr_lower_bound_tworay};
use multislope::{db_to_linear, Metric, NetworkScenario, PathLossModel};

fn main() -> multislope::Result<()> {
    let model = PathLossModel::make_dual(2.0, 4.0, 1.0)?;
    let thresholds: Vec<f64> = (-4..=4).map(|i| db_to_linear(5.0 * i as f64)).collect();

    for lambda in [0.1, 1.0, 10.0] {
        let scenario = NetworkScenario::new(lambda, 1.0, model.clone())?;
        let curve = ccdf(&scenario, &thresholds, Metric::Sinr, None)?;
        println!("lambda = {lambda}");
        println!("{:>6} {:>10} {:>10} {:>10}", "T_dB", "exact", "bound", "err");
        for (t, p) in thresholds.iter().zip(&curve.points) {
            let bound = coverage_sinr_lower_bound_tworay(&scenario, *t)?.value;
            println!(
                "{:>6.1} {:>10.6} {:>10.6} {:>10.1e}",
                10.0 * t.log10(),
                p.value,
                bound,
                p.error_estimate
            );
        }
    }
    Ok(())
}
