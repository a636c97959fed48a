//! Matrix elements `V[m][n] = ⟨ψₘ| e^{−x²} |ψₙ⟩` of the Gaussian potential
//! in the oscillator basis.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::special::{gauss_hermite_rule, psi_even_sq_at_zero, psi_values, QuadratureRule};
use crate::{Error, Result};

/// Quadrature order used when none is specified: `2·dim + 16`.
pub fn default_quadrature_order(dim: usize) -> usize {
    2 * dim + 16
}

/// `∫ψₘψₙ e^{−x²} dx` from the Hermite-function values at the substituted
/// node `x = u/√2`, where `u` runs over the standard rule. The integrand is
/// then a polynomial of degree `m+n` against `e^{−u²}`.
fn node_values(rule: &QuadratureRule, count: usize) -> Vec<(f64, Vec<f64>)> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    rule.nodes()
        .iter()
        .zip(rule.scaled_weights())
        .map(|(&u, &w)| {
            // w e^{u²} · e^{−u²/2} / √2 is the effective weight on ψₘψₙ(u/√2)
            let weight = w * (-0.5 * u * u).exp() * inv_sqrt2;
            (weight, psi_values(count, u * inv_sqrt2))
        })
        .collect()
}

/// `⟨ψₘ| e^{−x²} |ψₙ⟩` by Gauss–Hermite quadrature after `u = x√2`.
///
/// Returns an exact zero when `m + n` is odd.
pub fn gaussian_element(m: usize, n: usize, rule: &QuadratureRule) -> Result<f64> {
    let required = m + n + 8;
    if rule.order() < required {
        return Err(Error::InsufficientQuadrature { order: rule.order(), required });
    }
    if (m + n) % 2 == 1 {
        return Ok(0.0);
    }
    let count = m.max(n) + 1;
    Ok(node_values(rule, count).iter().map(|(w, psi)| w * psi[m] * psi[n]).sum())
}

/// `|⟨ψ₀| e^{−x²} |ψ_{2n}⟩| = √π · (ψ_{2n}(0)² / (2^{2n+1} √π))^{1/2}`.
pub fn gaussian_element_closed_0_2n(n: usize) -> f64 {
    let sq = psi_even_sq_at_zero(n) / (2f64.powi(2 * n as i32 + 1) * PI.sqrt());
    PI.sqrt() * sq.sqrt()
}

/// `|⟨ψ₁| e^{−x²} |ψ_{2n+1}⟩| = √π · ((n+1) ψ_{2n+2}(0)² / (2^{2n+2} √π))^{1/2}`.
///
/// The bracket is the square of the scalar product `(ψ₁, ψ₀² ψ_{2n+1})`; at
/// `n = 0` this gives the diagonal element `⟨ψ₁|e^{−x²}|ψ₁⟩ = √2/4`.
pub fn gaussian_element_closed_1_odd(n: usize) -> f64 {
    let sq = (n + 1) as f64 * psi_even_sq_at_zero(n + 1)
        / (2f64.powi(2 * n as i32 + 2) * PI.sqrt());
    PI.sqrt() * sq.sqrt()
}

/// Symmetric table of Gaussian matrix elements for `m, n < dim`.
#[derive(Debug, Clone)]
pub struct MatrixElementTable {
    dim: usize,
    values: Vec<f64>,
}

impl MatrixElementTable {
    /// Fills the table; parity zeros are inserted exactly and the upper
    /// triangle is mirrored from the lower one.
    pub fn build(dim: usize, rule: &QuadratureRule) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("table dimension must be positive".into()));
        }
        let required = 2 * dim + 8;
        if rule.order() < required {
            return Err(Error::InsufficientQuadrature { order: rule.order(), required });
        }
        let nodes = node_values(rule, dim);
        let rows: Vec<Vec<f64>> = (0..dim)
            .into_par_iter()
            .map(|m| {
                (0..=m)
                    .map(|n| {
                        if (m + n) % 2 == 1 {
                            0.0
                        } else {
                            nodes.iter().map(|(w, psi)| w * psi[m] * psi[n]).sum()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut values = vec![0.0; dim * dim];
        for (m, row) in rows.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                values[m * dim + n] = v;
                values[n * dim + m] = v;
            }
        }
        Ok(MatrixElementTable { dim, values })
    }

    /// Builds with a rule of order [`default_quadrature_order`].
    pub fn with_default_rule(dim: usize) -> Result<Self> {
        let rule = gauss_hermite_rule(default_quadrature_order(dim))?;
        Self::build(dim, &rule)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.values[m * self.dim + n]
    }

    /// Leading `dim × dim` block.
    pub fn truncated(&self, dim: usize) -> Result<Self> {
        if dim == 0 || dim > self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: dim });
        }
        let values = (0..dim).flat_map(|m| (0..dim).map(move |n| (m, n))).map(|(m, n)| self.get(m, n)).collect();
        Ok(MatrixElementTable { dim, values })
    }

    /// Writes `row,col,value` lines with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "row,col,value")?;
        for m in 0..self.dim {
            for n in 0..self.dim {
                writeln!(out, "{},{},{}", m, n, crate::format::sig12(self.get(m, n)))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rule(order: usize) -> QuadratureRule {
        gauss_hermite_rule(order).unwrap()
    }

    #[test]
    fn low_order_elements() {
        let r = rule(40);
        assert_relative_eq!(gaussian_element(0, 0, &r).unwrap(), 0.5f64.sqrt(), max_relative = 1e-14);
        assert_eq!(gaussian_element(0, 1, &r).unwrap(), 0.0);
        // ⟨ψ₁|e^{−x²}|ψ₁⟩ = (2/√π)∫x²e^{−2x²} = √2/4
        assert_relative_eq!(gaussian_element(1, 1, &r).unwrap(), 2f64.sqrt() / 4.0, max_relative = 1e-14);
        // ⟨ψ₀|e^{−x²}|ψ₂⟩ = −1/4 from direct Gaussian moments
        assert_relative_eq!(gaussian_element(0, 2, &r).unwrap(), -0.25, max_relative = 1e-14);
        // ⟨ψ₁|e^{−x²}|ψ₃⟩ = −3/(8√3)
        assert_relative_eq!(gaussian_element(1, 3, &r).unwrap(), -3.0 / (8.0 * 3f64.sqrt()), max_relative = 1e-13);
    }

    #[test]
    fn insufficient_order_rejected() {
        let r = rule(10);
        assert!(matches!(gaussian_element(2, 2, &r), Err(Error::InsufficientQuadrature { .. })));
        assert!(MatrixElementTable::build(4, &r).is_err());
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let r = rule(120);
        assert_relative_eq!(gaussian_element_closed_0_2n(0), 0.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gaussian_element_closed_1_odd(0), 2f64.sqrt() / 4.0, max_relative = 1e-15);
        for n in 0..=20 {
            let q = gaussian_element(0, 2 * n, &r).unwrap();
            assert!((q.abs() - gaussian_element_closed_0_2n(n)).abs() < 1e-10, "0,{}", 2 * n);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(q.signum(), sign);

            let q = gaussian_element(1, 2 * n + 1, &r).unwrap();
            assert!((q.abs() - gaussian_element_closed_1_odd(n)).abs() < 1e-10, "1,{}", 2 * n + 1);
            assert_eq!(q.signum(), sign);
        }
    }

    #[test]
    fn table_shapes() {
        let t = MatrixElementTable::with_default_rule(1).unwrap();
        assert_eq!(t.dim(), 1);
        assert_relative_eq!(t.get(0, 0), 0.5f64.sqrt(), max_relative = 1e-14);

        let t = MatrixElementTable::with_default_rule(4).unwrap();
        for (m, n) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
            assert_eq!(t.get(m, n), 0.0);
            assert_eq!(t.get(n, m), 0.0);
        }
    }

    #[test]
    fn table_row_zero_matches_closed_form() {
        let t = MatrixElementTable::with_default_rule(50).unwrap();
        for n in 0..25 {
            assert!((t.get(0, 2 * n).abs() - gaussian_element_closed_0_2n(n)).abs() < 1e-10);
        }
    }

    #[test]
    fn table_invariants() {
        let t = MatrixElementTable::with_default_rule(60).unwrap();
        for m in 0..60 {
            assert!(t.get(m, m) > 0.0);
            for n in 0..60 {
                assert_eq!(t.get(m, n), t.get(n, m));
                assert!(t.get(m, n).abs() <= 1.0);
                if (m + n) % 2 == 1 {
                    assert_eq!(t.get(m, n), 0.0);
                }
            }
        }
        // diagonal: √π ψ_{2n}(0)²/√2
        for n in 0..60 {
            let expected = PI.sqrt() * psi_even_sq_at_zero(n) / 2f64.sqrt();
            assert_relative_eq!(t.get(n, n), expected, max_relative = 1e-11);
        }
    }

    #[test]
    fn truncation_is_leading_block() {
        let t = MatrixElementTable::with_default_rule(20).unwrap();
        let s = t.truncated(7).unwrap();
        assert_eq!(s.dim(), 7);
        assert_eq!(s.get(6, 4), t.get(6, 4));
        assert!(t.truncated(21).is_err());
    }

    #[test]
    fn csv_dump() {
        let t = MatrixElementTable::with_default_rule(2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "row,col,value");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[2], "0,1,0");
    }
}
