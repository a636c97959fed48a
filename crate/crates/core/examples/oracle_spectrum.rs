//! Dense diagonalization: convergence of the lowest levels with the basis
//! size, and the parity of the low-lying states.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    let full = MatrixElementTable::with_default_rule(120)?;
    let c = Coupling::repulsive(1.0)?;
    println!("N     E0                  E1                  E2");
    for n in [5, 10, 20, 40, 80, 120] {
        let h = HamiltonianMatrix::build(c, &full.truncated(n)?);
        let e = lowest_eigenvalues(&h, 3)?;
        println!("{n:<6}{:<20.14}{:<20.14}{:.14}", e[0], e[1], e[2]);
    }

    let spectrum = HamiltonianMatrix::build(c, &full.truncated(40)?).diagonalize()?;
    println!("\nlowest states at N = 40 (double well, lambda = 1):");
    for s in spectrum.states.iter().take(6) {
        println!("  {:.12}  {:?}  residual {:.1e}", s.value, s.parity, s.residual);
    }
    Ok(())
}
