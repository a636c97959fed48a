//! Positive series with known sums that enter the second-order energies and
//! the invertibility threshold of the reduced ground-state kernel.

use std::f64::consts::PI;

use serde::Serialize;

use crate::special::psi_even_sq_at_zero;
use crate::{Error, Result};

/// A partial sum paired with the analytic value it converges to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesIdentity {
    pub partial_sum: f64,
    pub closed_form: f64,
    pub terms_used: usize,
    /// Estimate of the omitted tail; zero for the geometrically convergent
    /// series, where it is negligible next to `tail_bound`.
    pub tail_estimate: f64,
    /// Upper bound on the omitted tail, so
    /// `|partial_sum − closed_form| ≤ tail_bound` up to rounding.
    pub tail_bound: f64,
}

impl SeriesIdentity {
    pub fn corrected_sum(&self) -> f64 {
        self.partial_sum + self.tail_estimate
    }

    pub fn difference(&self) -> f64 {
        self.corrected_sum() - self.closed_form
    }
}

/// `ln(8 − 4√3)`.
pub fn ln_8_minus_4_sqrt3() -> f64 {
    (8.0 - 4.0 * 3f64.sqrt()).ln()
}

/// Closed form of [`series_s0`]: `ln(8 − 4√3)/√π`.
pub fn s0_closed_form() -> f64 {
    ln_8_minus_4_sqrt3() / PI.sqrt()
}

/// Closed form of [`series_s1`]: `(2√3 − 3(1 − ln(8 − 4√3)))/(12√π)`.
pub fn s1_closed_form() -> f64 {
    (2.0 * 3f64.sqrt() - 3.0 * (1.0 - ln_8_minus_4_sqrt3())) / (12.0 * PI.sqrt())
}

/// Closed form of [`trace_m_half`]: `√2 ln 2`.
pub fn trace_m_half_closed_form() -> f64 {
    2f64.sqrt() * 2f64.ln()
}

fn check_terms(terms: usize) -> Result<()> {
    if terms == 0 {
        return Err(Error::InvalidArgument("series needs at least one term".into()));
    }
    Ok(())
}

fn s0_term(n: usize) -> f64 {
    psi_even_sq_at_zero(n) / (2f64.powi(2 * n as i32 + 1) * n as f64)
}

fn s1_term(n: usize) -> f64 {
    (n + 1) as f64 * psi_even_sq_at_zero(n + 1) / (2f64.powi(2 * n as i32 + 2) * n as f64)
}

/// Successive term ratios of both geometric-type series stay below ¼, so the
/// tail is at most `4/3` of the first omitted term.
fn geometric_identity(terms: usize, term: fn(usize) -> f64, closed_form: f64) -> SeriesIdentity {
    let partial_sum = (1..=terms).map(term).sum();
    SeriesIdentity {
        partial_sum,
        closed_form,
        terms_used: terms,
        tail_estimate: 0.0,
        tail_bound: term(terms + 1) * 4.0 / 3.0,
    }
}

/// `Σ_{n≥1} ψ_{2n}(0)² / (2^{2n+1} n)`.
pub fn series_s0(terms: usize) -> Result<SeriesIdentity> {
    check_terms(terms)?;
    Ok(geometric_identity(terms, s0_term, s0_closed_form()))
}

/// `Σ_{n≥1} (n+1) ψ_{2n+2}(0)² / (2^{2n+2} n)`.
pub fn series_s1(terms: usize) -> Result<SeriesIdentity> {
    check_terms(terms)?;
    Ok(geometric_identity(terms, s1_term, s1_closed_form()))
}

fn trace_term(n: usize) -> f64 {
    (2.0 * PI).sqrt() * psi_even_sq_at_zero(n) / (2 * n) as f64
}

/// Sum of `t(n) ≈ c n^{−3/2}(1 + a/n)` over `n > last`, with `c, a` fitted
/// through the terms at `last` and at `last/10`, summed by Euler–Maclaurin.
pub(crate) fn power_law_tail(last: usize, term: impl Fn(usize) -> f64) -> f64 {
    let n2 = last as f64;
    let t2 = term(last) * n2.powf(1.5);
    let first = (last / 10).max(1);
    let (c, a) = if first == last {
        (t2, 0.0)
    } else {
        let n1 = first as f64;
        let t1 = term(first) * n1.powf(1.5);
        // t1 = c + ca/n1, t2 = c + ca/n2
        let ca = (t1 - t2) / (1.0 / n1 - 1.0 / n2);
        let c = t2 - ca / n2;
        (c, ca / c)
    };
    let g = |x: f64| c * x.powf(-1.5) * (1.0 + a / x);
    let dg = |x: f64| -c * (1.5 * x.powf(-2.5) + 2.5 * a * x.powf(-3.5));
    let integral = c * (2.0 / n2.sqrt() + a * 2.0 / (3.0 * n2.powf(1.5)));
    integral - g(n2) / 2.0 - dg(n2) / 12.0
}

/// `√(2π) Σ_{n≥1} ψ_{2n}(0)² / (2n)`, the trace of the reduced ground-state
/// kernel at `E = ½`.
///
/// The terms decay only like `n^{−3/2}`, so the result carries a fitted
/// power-law tail estimate; `tail_bound = 2/√(2π N)` follows from
/// `Γ(n+½)/Γ(n+1) < n^{−1/2}`.
pub fn trace_m_half(terms: usize) -> Result<SeriesIdentity> {
    check_terms(terms)?;
    let partial_sum = (1..=terms).map(trace_term).sum();
    Ok(SeriesIdentity {
        partial_sum,
        closed_form: trace_m_half_closed_form(),
        terms_used: terms,
        tail_estimate: power_law_tail(terms, trace_term),
        tail_bound: 2.0 / (2.0 * PI * terms as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// `C(2n, n)` exactly.
    fn central_binomial(n: u32) -> u128 {
        (1..=n as u128).fold(1u128, |acc, k| acc * (n as u128 + k) / k)
    }

    #[test]
    fn s0_single_term() {
        let s = series_s0(1).unwrap();
        assert_relative_eq!(s.partial_sum, 1.0 / (16.0 * PI.sqrt()), max_relative = 1e-15);
        assert_relative_eq!(s.partial_sum, 0.035_261_9, epsilon = 1e-7);
    }

    #[test]
    fn s0_five_terms_exact_rational() {
        // ψ_{2n}(0)² = C(2n,n)/(4ⁿ√π); term = C(2n,n)/(2^{4n+1} n √π)
        // common denominator 2^{21}·60
        let den: u128 = (1u128 << 21) * 60;
        let num: u128 = (1..=5u32)
            .map(|n| central_binomial(n) * (1u128 << (21 - (4 * n + 1))) * (60 / n as u128))
            .sum();
        let exact = num as f64 / den as f64 / PI.sqrt();
        assert_relative_eq!(series_s0(5).unwrap().partial_sum, exact, max_relative = 1e-14);
    }

    #[test]
    fn s0_converges() {
        let s = series_s0(60).unwrap();
        assert!((s.partial_sum - s.closed_form).abs() < 1e-12);
        assert_relative_eq!(s.closed_form, 0.039_118_9, epsilon = 1e-7);
    }

    #[test]
    fn s1_values() {
        let one = series_s1(1).unwrap();
        assert_relative_eq!(one.partial_sum, psi_even_sq_at_zero(2) / 8.0, max_relative = 1e-15);
        let s = series_s1(60).unwrap();
        assert!((s.partial_sum - s.closed_form).abs() < 1e-12);
        // (3.4641016 − 2.7919953)/21.269446
        assert_relative_eq!(s.closed_form, 0.031_599_8, epsilon = 1e-7);
        // quadratic coefficient of the first excited level
        let q = PI.sqrt() / 2.0 * s.closed_form;
        assert_eq!(format!("{q:.3}"), "0.028");
    }

    #[test]
    fn tail_bounds_hold_and_sums_increase() {
        for terms in 1..40 {
            for s in [series_s0(terms).unwrap(), series_s1(terms).unwrap(), trace_m_half(terms).unwrap()] {
                assert!((s.partial_sum - s.closed_form).abs() <= s.tail_bound + 1e-12, "{terms}: {s:?}");
            }
            assert!(series_s0(terms + 1).unwrap().partial_sum >= series_s0(terms).unwrap().partial_sum);
            assert!(series_s1(terms + 1).unwrap().partial_sum >= series_s1(terms).unwrap().partial_sum);
            assert!(trace_m_half(terms + 1).unwrap().partial_sum >= trace_m_half(terms).unwrap().partial_sum);
        }
    }

    #[test]
    fn trace_first_term() {
        let t = trace_m_half(1).unwrap();
        assert_relative_eq!(t.partial_sum, 2f64.sqrt() / 4.0, max_relative = 1e-15);
        assert_relative_eq!(t.closed_form, 0.980_258_1, epsilon = 1e-7);
    }

    #[test]
    fn trace_tail_decay_rate() {
        // missing mass ∝ N^{−1/2} ⇒ ratio of gaps at 10⁴ and 10⁵ is √10
        let a = trace_m_half(10_000).unwrap();
        let b = trace_m_half(100_000).unwrap();
        let ratio = (a.closed_form - a.partial_sum) / (b.closed_form - b.partial_sum);
        assert_relative_eq!(ratio, 10f64.sqrt(), max_relative = 1e-3);
        assert!(b.difference().abs() < 1e-8);
    }

    #[test]
    fn zero_terms_rejected() {
        assert!(series_s0(0).is_err());
        assert!(trace_m_half(0).is_err());
    }
}
