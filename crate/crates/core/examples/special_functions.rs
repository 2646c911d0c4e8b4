//! The kernel `C_beta(x) = 2F1(1, beta; 1 + beta; -x)` and the tail
//! functions behind the closed-form coverage expressions.

use multislope::specfun::{c_beta, c_beta_hypergeometric, exp_integral_e1, ln_q_function, q_function};

fn main() -> multislope::Result<()> {
    println!("{:>8} {:>14} {:>14} {:>14}", "x", "C_-1/2", "C_1/2", "C_inf");
    for x in [0.01, 0.1, 1.0, 10.0, 100.0] {
        println!(
            "{x:>8} {:>14.10} {:>14.10} {:>14.10}",
            c_beta(-0.5, x)?,
            c_beta(0.5, x)?,
            c_beta(f64::INFINITY, x)?
        );
    }

    // Closed forms against the series/connection-formula path.
    let x = 3.7;
    for beta in [-0.5, 0.5, 1.0, 2.0] {
        let closed = c_beta(beta, x)?;
        let series = c_beta_hypergeometric(beta, x)?;
        println!("beta = {beta:>4}: closed {closed:.15}, hypergeometric {series:.15}");
    }

    // Q underflows near x = 38; its logarithm does not.
    for x in [1.0, 10.0, 40.0] {
        println!("Q({x}) = {:e}, ln Q({x}) = {:.6}", q_function(x)?, ln_q_function(x)?);
    }
    println!("E1(0.5) = {:.12}", exp_integral_e1(0.5)?);
    Ok(())
}
