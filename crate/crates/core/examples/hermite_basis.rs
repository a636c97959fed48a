//! Oscillator eigenfunctions, their values at the origin, and the
//! Gauss–Hermite rule used for every integral in the crate.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    println!("n  psi_n(0.5)          psi_2n(0)^2 (log-domain)  check");
    for n in [0, 1, 2, 5, 10, 30, 60] {
        let direct = psi_eval(2 * n, 0.0).powi(2);
        println!("{n:<3}{:<20.12e}{:<26.12e}{:.1e}", psi_eval(n, 0.5), psi_even_sq_at_zero(n), (direct / psi_even_sq_at_zero(n) - 1.0).abs());
    }

    let rule = gauss_hermite_rule(64)?;
    let norm = rule.integrate_scaled(|x| psi_eval(12, x).powi(2));
    let overlap = rule.integrate_scaled(|x| psi_eval(12, x) * psi_eval(14, x));
    println!("\n64-point rule: <psi12|psi12> = {norm:.15}, <psi12|psi14> = {overlap:.1e}");
    println!("x^4 moment: {:.15} (exact {:.15})", rule.integrate(|x| x.powi(4)), 0.75 * std::f64::consts::PI.sqrt());
    println!("Gamma(5.5) = {:.12}, ln Gamma(200) = {:.12}", gamma_fn(5.5)?, ln_gamma(200.0)?);
    Ok(())
}
