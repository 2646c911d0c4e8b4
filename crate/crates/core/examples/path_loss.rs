//! Piecewise power-law path loss: standard, dual-slope and three-slope.

use multislope::PathLossModel;

fn main() -> multislope::Result<()> {
    let standard = PathLossModel::make_standard(4.0)?;
    let dual = PathLossModel::make_dual(2.0, 4.0, 10.0)?;
    let bounded = PathLossModel::make_multislope(vec![0.0, 2.0, 4.0], vec![1.0, 267.0])?;

    println!("{:>8} {:>12} {:>12} {:>12}", "r", "standard", "dual", "bounded");
    for r in [0.1, 1.0, 10.0, 100.0, 1000.0] {
        println!(
            "{r:>8} {:>12.4e} {:>12.4e} {:>12.4e}",
            standard.evaluate(r)?,
            dual.evaluate(r)?,
            bounded.evaluate(r)?
        );
    }

    // Continuity constants and the per-segment delta = 2 / alpha.
    println!("K = {:?}", bounded.constants());
    println!("delta = {:?}", bounded.deltas());

    // Scenario files use the same shape.
    println!("{}", serde_json::to_string(&bounded).expect("serializable"));
    let parsed: PathLossModel = serde_json::from_str(r#"{"exponents":[3,4],"breakpoints":[1]}"#).expect("valid");
    println!("parsed {:?}, ordered: {}", parsed.exponents(), parsed.is_ordered());

    // Interference diverges unless the last exponent exceeds 2.
    println!(
        "finite interference with alpha_last = 2: {}",
        PathLossModel::make_dual(1.0, 2.0, 1.0)?.has_finite_interference()
    );
    Ok(())
}
