//! Second-order energies against the diagonalization oracle; the gap
//! scales like lambda^3.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    let table = MatrixElementTable::with_default_rule(80)?;
    for level in [Level::Ground, Level::FirstExcited] {
        for sign in [Sign::Attractive, Sign::Repulsive] {
            let k = SecondOrderCoefficients::new(level, sign);
            println!("{level:?} {sign}: E = {} {:+.6} lambda {:+.6} lambda^2", level.unperturbed_energy(), k.linear, k.quadratic);
            for lambda in [0.02, 0.05, 0.1, 0.2, 0.4] {
                let c = Coupling::new(lambda, sign)?;
                let p = second_order_energy(c, level).energy;
                let o = oracle_energy(c, &table, level)?.energy;
                println!("  lambda {lambda:<5} p2 {p:.10}  oracle {o:.10}  (p2-oracle)/lambda^3 {:+.5}", (p - o) / lambda.powi(3));
            }
        }
    }
    println!("\neps0 from the series at lambda = 0.37: {:.10}", epsilon0_from_series(0.37));
    Ok(())
}
