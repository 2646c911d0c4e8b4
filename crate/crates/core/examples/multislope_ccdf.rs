//! Three-slope model with a bounded near field: exponents [0, 2, 4],
//! breakpoints [1, 267], noise 1e-8. Coverage rises and then falls with
//! density.

use multislope::analytic::{ccdf, coverage_general, coverage_multislope};
use multislope::{db_to_linear, Metric, NetworkScenario, PathLossModel};

fn main() -> multislope::Result<()> {
    let model = PathLossModel::make_multislope(vec![0.0, 2.0, 4.0], vec![1.0, 267.0])?;
    let thresholds: Vec<f64> = (-2..=2).map(|i| db_to_linear(10.0 * i as f64)).collect();

    print!("{:>8}", "lambda");
    for t in &thresholds {
        print!(" {:>9}", format!("{:.0} dB", 10.0 * t.log10()));
    }
    println!();
    for lambda in [1e-7, 1e-6, 1e-5, 1e-4, 1e-3] {
        let scenario = NetworkScenario::new(lambda, 1e-8, model.clone())?;
        let curve = ccdf(&scenario, &thresholds, Metric::Sinr, None)?;
        print!("{lambda:>8.0e}");
        for v in curve.values() {
            print!(" {v:>9.5}");
        }
        println!();
    }

    // The N-slope formula and the general double integral agree.
    let scenario = NetworkScenario::new(1e-5, 1e-8, model)?;
    let a = coverage_multislope(&scenario, 1.0)?;
    let b = coverage_general(&scenario, 1.0)?;
    println!(
        "T = 0 dB, lambda = 1e-5: multislope {:.10}, general {:.10}",
        a.value, b.value
    );
    Ok(())
}
