//! The scalar fixed point obtained by splitting off the divergent mode,
//! up to the coupling where the reduced resolvent stops being invertible.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    let table = MatrixElementTable::with_default_rule(80)?;
    println!("lambda0 = {:.10}, lambda1 = {:.10}, repulsive excited limit = {:.10}",
        invertibility_threshold_0(), invertibility_threshold_1(), repulsive_excited_threshold());

    for sign in [Sign::Attractive, Sign::Repulsive] {
        println!("\n{sign}:");
        for lambda in [0.1, 0.5, 1.0, 1.2, 1.5] {
            let c = Coupling::new(lambda, sign)?;
            let cells: Vec<String> = [Level::Ground, Level::FirstExcited]
                .into_iter()
                .map(|level| match rank_one_energy(c, &table, level, 1e-12) {
                    Ok(r) => format!("{:.12}", r.energy),
                    Err(e) => format!("({})", e.kind()),
                })
                .collect();
            println!("  lambda {lambda:<4} E0 {:<22} E1 {}", cells[0], cells[1]);
        }
    }
    Ok(())
}
