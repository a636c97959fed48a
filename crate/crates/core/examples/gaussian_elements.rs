//! Matrix elements of e^{-x^2} in the oscillator basis: quadrature against
//! the closed forms for the first two rows.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    let rule = gauss_hermite_rule(96)?;
    println!("  n   <0|V|2n>            closed form        <1|V|2n+1>          closed form");
    for n in 0..12 {
        println!(
            "{n:>3}   {:<+19.12e}{:<19.12e}{:<+20.12e}{:.12e}",
            gaussian_element(0, 2 * n, &rule)?,
            gaussian_element_closed_0_2n(n),
            gaussian_element(1, 2 * n + 1, &rule)?,
            gaussian_element_closed_1_odd(n),
        );
    }

    let table = MatrixElementTable::with_default_rule(8)?;
    println!("\n8x8 table (odd m+n vanish):");
    for m in 0..8 {
        let row: Vec<String> = (0..8).map(|n| format!("{:+.4}", table.get(m, n))).collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
