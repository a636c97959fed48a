//! The three positive series behind the second-order coefficients and the
//! ground-state invertibility threshold, summed and compared with their
//! closed forms.

use gaussian_oscillator::prelude::*;

fn main() -> gaussian_oscillator::Result<()> {
    for terms in [1, 5, 10, 20, 60] {
        let (s0, s1) = (series_s0(terms)?, series_s1(terms)?);
        println!("{terms:>3} terms: S0 {:.15} (diff {:+.1e})   S1 {:.15} (diff {:+.1e})", s0.partial_sum, s0.difference(), s1.partial_sum, s1.difference());
    }
    println!();
    // terms decay like n^{-3/2}: the raw sum crawls, the tail estimate fixes it
    for terms in [100, 1_000, 10_000, 100_000] {
        let t = trace_m_half(terms)?;
        println!(
            "{terms:>7} terms: raw {:.12} (diff {:+.2e}), corrected {:.14} (diff {:+.1e})",
            t.partial_sum,
            t.partial_sum - t.closed_form,
            t.corrected_sum(),
            t.difference()
        );
    }
    println!("sqrt(2) ln 2 = {:.14}, 1/lambda0 = {:.14}", trace_m_half(1)?.closed_form, 1.0 / invertibility_threshold_0());
    Ok(())
}
