//! Potential throughput scaling in the dense regime. The fitted exponent
//! of tau against lambda is 1 for alpha0 > 2, 2 - 2/alpha0 for
//! 1 < alpha0 < 2, and negative below 1.

use multislope::scaling::phase_transition_report;

fn main() -> multislope::Result<()> {
    let rows = phase_transition_report(&[0.9, 1.0, 1.8, 2.0, 3.0], 4.0, 1.0, 1.0)?;
    println!("{:>7} {:>9} {:>9} {:>10}", "alpha0", "slope", "expected", "tag");
    for r in rows {
        let expected = if r.alpha0 > 2.0 {
            "1".to_string()
        } else if r.alpha0 > 1.0 {
            format!("{:.3}", 2.0 - 2.0 / r.alpha0)
        } else if r.alpha0 < 1.0 {
            "< 0".to_string()
        } else {
            "~0".to_string()
        };
        println!(
            "{:>7} {:>9.4} {:>9} {:>10}",
            r.alpha0, r.fitted_exponent, expected, r.tag
        );
    }
    Ok(())
}
