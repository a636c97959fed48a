//! Second-order energies of the two lowest levels.
//!
//! `E ≈ E⁽⁰⁾ ∓ a λ − b λ²`: the linear term is the diagonal matrix element
//! and follows the sign of the Gaussian, the quadratic term lowers the
//! energy for either sign.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::birman_schwinger::{Coupling, EnergyResult, Level, Method, Sign};
use crate::series::{ln_8_minus_4_sqrt3, s0_closed_form, s1_closed_form};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondOrderCoefficients {
    /// Energy shift per unit `λ`, signed.
    pub linear: f64,
    /// Energy shift per unit `λ²`, signed.
    pub quadratic: f64,
    pub level: Level,
    pub sign: Sign,
}

impl SecondOrderCoefficients {
    pub fn new(level: Level, sign: Sign) -> Self {
        let (first, second) = match level {
            // ⟨ψ₀|e^{−x²}|ψ₀⟩ and ln(8 − 4√3)/2
            Level::Ground => (1.0 / SQRT_2, ln_8_minus_4_sqrt3() / 2.0),
            // ⟨ψ₁|e^{−x²}|ψ₁⟩ and (2√3 − 3(1 − ln(8 − 4√3)))/24
            Level::FirstExcited => (SQRT_2 / 4.0, (2.0 * 3f64.sqrt() - 3.0 * (1.0 - ln_8_minus_4_sqrt3())) / 24.0),
        };
        let linear = match sign {
            Sign::Attractive => -first,
            Sign::Repulsive => first,
        };
        SecondOrderCoefficients { linear, quadratic: -second, level, sign }
    }

    pub fn energy(&self, lambda: f64) -> f64 {
        self.level.unperturbed_energy() + self.linear * lambda + self.quadratic * lambda * lambda
    }
}

pub fn e0_second_order(lambda: f64, sign: Sign) -> f64 {
    SecondOrderCoefficients::new(Level::Ground, sign).energy(lambda)
}

pub fn e1_second_order(lambda: f64, sign: Sign) -> f64 {
    SecondOrderCoefficients::new(Level::FirstExcited, sign).energy(lambda)
}

/// `ε₀ = λ/√2 + λ² (√π/2) S₀`, the attractive ground-state shift assembled
/// from the series rather than from the simplified coefficient.
pub fn epsilon0_from_series(lambda: f64) -> f64 {
    lambda / SQRT_2 + lambda * lambda * (PI.sqrt() / 2.0) * s0_closed_form()
}

/// `ε₁` for the attractive first excited level, assembled the same way.
pub fn epsilon1_from_series(lambda: f64) -> f64 {
    lambda * SQRT_2 / 4.0 + lambda * lambda * (PI.sqrt() / 2.0) * s1_closed_form()
}

pub fn second_order_energy(coupling: Coupling, level: Level) -> EnergyResult {
    EnergyResult {
        energy: SecondOrderCoefficients::new(level, coupling.sign()).energy(coupling.lambda()),
        method: Method::SecondOrder,
        truncation: 0,
        bracket_width: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::MatrixElementTable;
    use crate::oracle::oracle_energy;
    use approx::assert_relative_eq;

    #[test]
    fn trivial_couplings() {
        assert_eq!(e0_second_order(0.0, Sign::Attractive), 0.5);
        assert_eq!(e1_second_order(0.0, Sign::Repulsive), 1.5);
        assert_eq!(epsilon0_from_series(0.0), 0.0);
    }

    #[test]
    fn ground_state_values() {
        assert_relative_eq!(e0_second_order(1.0, Sign::Attractive), -0.242, epsilon = 1e-3);
        let q = 0.034_668_232_1;
        assert_relative_eq!(e0_second_order(0.1, Sign::Repulsive), 0.5 + 0.070_710_678 - 0.01 * q, epsilon = 1e-9);
    }

    #[test]
    fn excited_state_values() {
        let q = 0.028_004_625;
        // linear coefficient is ⟨ψ₁|e^{−x²}|ψ₁⟩ = √2/4 ≈ 0.3536
        assert_relative_eq!(e1_second_order(1.0, Sign::Attractive), 1.5 - 0.353_553_4 - q, epsilon = 1e-6);
        assert_relative_eq!(e1_second_order(0.5, Sign::Repulsive), 1.5 + 0.176_776_7 - 0.25 * q, epsilon = 1e-6);
    }

    #[test]
    fn series_and_simplified_paths_agree() {
        for lambda in [0.0, 0.1, 0.37, 1.0, 2.5] {
            let a = epsilon0_from_series(lambda);
            let b = 0.5 - e0_second_order(lambda, Sign::Attractive);
            assert!((a - b).abs() <= 1e-15 * (1.0 + a.abs()));
            let a = epsilon1_from_series(lambda);
            let b = 1.5 - e1_second_order(lambda, Sign::Attractive);
            assert!((a - b).abs() <= 1e-15 * (1.0 + a.abs()));
        }
        assert_relative_eq!(epsilon0_from_series(1.0), 1.0 / SQRT_2 + ln_8_minus_4_sqrt3() / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn rounded_coefficients() {
        let c = SecondOrderCoefficients::new(Level::Ground, Sign::Attractive);
        assert_eq!(format!("{:.3} {:.3}", -c.linear, -c.quadratic), "0.707 0.035");
        let c = SecondOrderCoefficients::new(Level::FirstExcited, Sign::Repulsive);
        assert_eq!(format!("{:.3} {:.3}", c.linear, -c.quadratic), "0.354 0.028");
    }

    #[test]
    fn signs_differ_only_in_linear_term() {
        for level in [Level::Ground, Level::FirstExcited] {
            let a = SecondOrderCoefficients::new(level, Sign::Attractive);
            let r = SecondOrderCoefficients::new(level, Sign::Repulsive);
            assert_eq!(a.linear, -r.linear);
            assert_eq!(a.quadratic, r.quadratic);
            assert!(a.quadratic < 0.0);
        }
    }

    #[test]
    fn cubic_remainder_against_oracle() {
        let t = MatrixElementTable::with_default_rule(80).unwrap();
        for level in [Level::Ground, Level::FirstExcited] {
            for sign in [Sign::Attractive, Sign::Repulsive] {
                for lambda in [0.02, 0.05, 0.1] {
                    let c = Coupling::new(lambda, sign).unwrap();
                    let o = oracle_energy(c, &t, level).unwrap().energy;
                    let p = second_order_energy(c, level).energy;
                    assert!((o - p).abs() <= 0.5 * lambda * lambda * lambda, "{level:?} {sign:?} {lambda}");
                }
            }
        }
    }
}
