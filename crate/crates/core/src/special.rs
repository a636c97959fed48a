//! Hermite polynomials, normalized oscillator eigenfunctions, the Gamma
//! function and Gauss–Hermite quadrature.

use std::f64::consts::PI;
use std::fmt;

use crate::{Error, Result};

/// Label `n` of the oscillator eigenfunction `ψₙ`, with energy `n + ½`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(pub usize);

impl BasisIndex {
    pub fn energy(self) -> f64 {
        self.0 as f64 + 0.5
    }

    pub fn parity(self) -> Parity {
        Parity::of(self.0)
    }
}

impl From<usize> for BasisIndex {
    fn from(n: usize) -> Self {
        BasisIndex(n)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ψ{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn contains(self, n: usize) -> bool {
        Parity::of(n) == self
    }
}

/// Physicists' Hermite polynomial `Hₙ(x)` by upward recurrence
/// `H_{k+1} = 2x H_k − 2k H_{k−1}`.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Values `ψ₀(x), …, ψ_{count−1}(x)`.
///
/// The recurrence runs on the normalized functions directly,
/// `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}`, so the `2ⁿ n!`
/// normalization never materializes and nothing overflows for large `n`.
pub fn psi_values(count: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let psi0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(psi0);
    if count == 1 {
        return out;
    }
    out.push(2f64.sqrt() * x * psi0);
    for k in 1..count - 1 {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Normalized eigenfunction `ψₙ(x) = (2ⁿ n! √π)^{−1/2} e^{−x²/2} Hₙ(x)`.
pub fn psi_eval(n: usize, x: f64) -> f64 {
    psi_values(n + 1, x)[n]
}

/// `ln(Γ(n+½)/Γ(n+1))` without cancellation between the two large
/// log-gammas.
fn ln_half_ratio(n: usize) -> f64 {
    if n < 20 {
        // exact enough: product of n factors (2k−1)/(2k) times √π
        let mut r = 1.0;
        for k in 1..=n {
            r *= (2 * k - 1) as f64 / (2 * k) as f64;
        }
        return r.ln() + 0.5 * PI.ln();
    }
    let nf = n as f64;
    let stirling = |x: f64| {
        let x2 = x * x;
        (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x
    };
    -0.5 * (nf + 1.0).ln() + nf * (-0.5 / (nf + 1.0)).ln_1p() + 0.5 + stirling(nf + 0.5)
        - stirling(nf + 1.0)
}

/// `ψ_{2n}(0)² = (2n)! / (2^{2n} (n!)² √π) = Γ(n+½) / (π Γ(n+1))`, in log
/// domain.
pub fn psi_even_sq_at_zero(n: usize) -> f64 {
    (ln_half_ratio(n) - PI.ln()).exp()
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (z + i as f64 + 1.0))
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `ln |Γ(x)|`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        let s = (PI * x).sin().abs();
        return Ok((PI / s).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Gamma function via a `g = 7` Lanczos approximation, with the reflection
/// formula below ½.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma_fn(1.0 - x)?));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power so t^(z+½) does not overflow before e^{−t} is applied
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z))
}

/// Largest supported Gauss–Hermite order.
pub const MAX_QUADRATURE_ORDER: usize = 512;

/// Gauss–Hermite rule for `∫ f(x) e^{−x²} dx ≈ Σ wᵢ f(xᵢ)`.
///
/// Besides the weights `wᵢ` the rule keeps the scaled weights
/// `wᵢ e^{xᵢ²}`, which stay O(1) even where `wᵢ` underflows (orders above
/// roughly 350). Integrands that already carry their Gaussian decay should
/// go through [`QuadratureRule::integrate_scaled`].
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Abscissas, strictly increasing and symmetric about 0.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    /// `Σ wᵢ f(xᵢ)`, approximating `∫ f(x) e^{−x²} dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `Σ wᵢ e^{xᵢ²} g(xᵢ)`, approximating `∫ g(x) dx`.
    pub fn integrate_scaled(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.scaled_weights).map(|(&x, &w)| w * g(x)).sum()
    }
}

/// Orthonormal Hermite polynomials `p_{n−1}(z), p_n(z)` with respect to
/// the weight `e^{−z²}`.
fn orthonormal_pair(n: usize, z: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    for j in 1..=n {
        let jf = j as f64;
        let next = z * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// Nodes and weights by safeguarded Newton iteration on `Hₙ`.
///
/// Roots are found from the largest one inward: a downward scan with a step
/// well below the minimum root spacing `≈ π/√(2n+1)` brackets the next sign
/// change, and Newton steps that leave the bracket fall back to bisection.
/// Extrapolated starting guesses alone jump between neighbouring roots once
/// the order reaches a few hundred.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_QUADRATURE_ORDER {
        return Err(Error::QuadratureOrderRange { order, max: MAX_QUADRATURE_ORDER });
    }
    let n = order;
    let nf = n as f64;
    let half = n.div_ceil(2);
    let step = 0.1 * PI / (2.0 * nf + 1.0).sqrt();
    let p = |z: f64| orthonormal_pair(n, z).1;
    // roots in descending order, positive half only
    let mut roots: Vec<f64> = Vec::with_capacity(half);
    let mut ln_w: Vec<f64> = Vec::with_capacity(half);
    // every zero lies inside (−√(2n+1), √(2n+1))
    let mut upper = (2.0 * nf + 1.0).sqrt();
    for _ in 0..half {
        let (mut lo, mut hi) = (upper - step, upper);
        let mut f_hi = p(hi);
        let mut f_lo = p(lo);
        while f_lo.signum() == f_hi.signum() {
            hi = lo;
            f_hi = f_lo;
            lo -= step;
            f_lo = p(lo);
            if lo < -step {
                return Err(Error::NoConvergence { what: "Gauss-Hermite root bracketing", iterations: n });
            }
        }
        let mut z = 0.5 * (lo + hi);
        let mut converged = false;
        for _ in 0..200 {
            let (p_prev, p_n) = orthonormal_pair(n, z);
            if p_n == 0.0 {
                converged = true;
                break;
            }
            if p_n.signum() == f_lo.signum() {
                lo = z;
                f_lo = p_n;
            } else {
                hi = z;
            }
            let newton = z - p_n / ((2.0 * nf).sqrt() * p_prev);
            let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            let dz = next - z;
            z = next;
            if dz.abs() <= 4.0 * f64::EPSILON * z.abs().max(1.0) || hi - lo <= 4.0 * f64::EPSILON * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { what: "Gauss-Hermite node", iterations: 200 });
        }
        let (p_prev, _) = orthonormal_pair(n, z);
        roots.push(z);
        ln_w.push(-nf.ln() - 2.0 * p_prev.abs().ln());
        // just below the root, where the sign of p is that of the next bracket
        upper = z - 1e-6 * step;
    }
    if n % 2 == 1 {
        roots[half - 1] = 0.0;
    }

    let mut nodes = Vec::with_capacity(n);
    let mut lw = Vec::with_capacity(n);
    for i in 0..n / 2 {
        nodes.push(-roots[i]);
        lw.push(ln_w[i]);
    }
    for i in (0..half).rev() {
        nodes.push(roots[i]);
        lw.push(ln_w[i]);
    }
    let weights = lw.iter().map(|l| l.exp()).collect();
    let scaled_weights = lw.iter().zip(&nodes).map(|(l, x)| (l + x * x).exp()).collect();
    Ok(QuadratureRule { nodes, weights, scaled_weights })
}
