//! Direct diagonalization of `H = H₀ ∓ λ e^{−x²}` in the truncated
//! oscillator basis. This is the independent reference the other routes are
//! checked against; by the variational principle its levels approach the
//! exact ones from above as the basis grows.

use std::io::Write;

use crate::birman_schwinger::{Coupling, EnergyResult, Level, Method};
use crate::elements::MatrixElementTable;
use crate::linalg::{jacobi_eigen, Matrix};
use crate::special::{BasisIndex, Parity};
use crate::{Error, Result};

/// `Hₘₙ = (n + ½) δₘₙ − g Vₘₙ`.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    coupling: Coupling,
    entries: Matrix,
}

impl HamiltonianMatrix {
    pub fn build(coupling: Coupling, table: &MatrixElementTable) -> Self {
        let g = coupling.strength();
        let entries = Matrix::from_fn(table.dim(), |m, n| {
            let diag = if m == n { BasisIndex(n).energy() } else { 0.0 };
            diag - g * table.get(m, n)
        });
        HamiltonianMatrix { coupling, entries }
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Basis indices of each parity block.
    pub fn parity_block(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&n| parity.contains(n)).collect()
    }

    pub fn diagonalize(&self) -> Result<Spectrum> {
        let dim = self.dim();
        let norm = self.entries.norm();
        let mut states = Vec::with_capacity(dim);
        for parity in [Parity::Even, Parity::Odd] {
            let idx = self.parity_block(parity);
            if idx.is_empty() {
                continue;
            }
            let eig = jacobi_eigen(&self.entries.submatrix(&idx))?;
            for (value, local) in eig.values.into_iter().zip(eig.vectors) {
                let mut vector = vec![0.0; dim];
                for (&n, c) in idx.iter().zip(&local) {
                    vector[n] = *c;
                }
                let residual = self.residual(value, &vector);
                states.push(State { value, parity, vector, residual });
            }
        }
        states.sort_by(|a, b| a.value.total_cmp(&b.value));
        Ok(Spectrum { states, matrix_norm: norm })
    }

    fn residual(&self, value: f64, vector: &[f64]) -> f64 {
        let hv = self.entries.mul_vec(vector);
        hv.iter().zip(vector).map(|(a, b)| (a - value * b).powi(2)).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct State {
    pub value: f64,
    pub parity: Parity,
    /// Coefficients in the full basis; components of the other parity are zero.
    pub vector: Vec<f64>,
    /// `‖Hv − Ev‖₂`.
    pub residual: f64,
}

/// All eigenpairs, ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub states: Vec<State>,
    /// Frobenius norm of the matrix that was diagonalized.
    pub matrix_norm: f64,
}

impl Spectrum {
    pub fn values(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.value).collect()
    }

    /// Lowest state of the given parity.
    pub fn lowest(&self, parity: Parity) -> Option<&State> {
        self.states.iter().find(|s| s.parity == parity)
    }

    pub fn max_residual(&self) -> f64 {
        self.states.iter().map(|s| s.residual).fold(0.0, f64::max)
    }

    /// Writes `state,value,parity,c0,c1,...` with one row per eigenpair.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let dim = self.states.first().map_or(0, |s| s.vector.len());
        let header: Vec<String> = (0..dim).map(|n| format!("c{n}")).collect();
        writeln!(out, "state,value,parity,{}", header.join(","))?;
        for (k, s) in self.states.iter().enumerate() {
            let coeffs: Vec<String> = s.vector.iter().map(|&c| crate::format::sig12(c)).collect();
            let parity = match s.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            };
            writeln!(out, "{},{},{},{}", k, crate::format::sig12(s.value), parity, coeffs.join(","))?;
        }
        Ok(())
    }
}

/// The `k` lowest eigenvalues of `h`, ascending.
pub fn lowest_eigenvalues(h: &HamiltonianMatrix, k: usize) -> Result<Vec<f64>> {
    if k > h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), got: k });
    }
    let mut v = h.diagonalize()?.values();
    v.truncate(k);
    Ok(v)
}

/// Lowest level of the given level's parity. For the ground state this is
/// also the overall lowest eigenvalue; the first excited state is the
/// lowest odd one.
pub fn oracle_energy(coupling: Coupling, table: &MatrixElementTable, level: Level) -> Result<EnergyResult> {
    let h = HamiltonianMatrix::build(coupling, table);
    let idx = h.parity_block(level.parity());
    if idx.is_empty() {
        return Err(Error::DimensionMismatch { expected: level.index() + 1, got: h.dim() });
    }
    let eig = jacobi_eigen(&h.entries().submatrix(&idx))?;
    let mut vector = vec![0.0; h.dim()];
    for (&n, c) in idx.iter().zip(&eig.vectors[0]) {
        vector[n] = *c;
    }
    Ok(EnergyResult {
        energy: eig.values[0],
        method: Method::Oracle,
        truncation: h.dim(),
        bracket_width: h.residual(eig.values[0], &vector),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> MatrixElementTable {
        MatrixElementTable::with_default_rule(n).unwrap()
    }

    #[test]
    fn free_oscillator() {
        let h = HamiltonianMatrix::build(Coupling::attractive(0.0).unwrap(), &table(10));
        let v = lowest_eigenvalues(&h, 10).unwrap();
        for (n, e) in v.iter().enumerate() {
            assert_eq!(*e, n as f64 + 0.5);
        }
        assert!(lowest_eigenvalues(&h, 11).is_err());
    }

    #[test]
    fn one_mode_is_first_order() {
        let c = Coupling::attractive(0.3).unwrap();
        let e = oracle_energy(c, &table(1), Level::Ground).unwrap();
        assert_eq!(e.energy, 0.5 - 0.3 * table(1).get(0, 0));
    }

    #[test]
    fn variational_monotone_in_truncation() {
        let t = table(60);
        let c = Coupling::attractive(0.8).unwrap();
        let mut prev = f64::INFINITY;
        for n in [4, 10, 20, 40, 60] {
            let e = oracle_energy(c, &t.truncated(n).unwrap(), Level::Ground).unwrap().energy;
            assert!(e <= prev + 1e-14);
            prev = e;
        }
    }

    #[test]
    fn levels_have_expected_parity() {
        let c = Coupling::repulsive(0.6).unwrap();
        let s = HamiltonianMatrix::build(c, &table(30)).diagonalize().unwrap();
        assert_eq!(s.states[0].parity, Parity::Even);
        assert_eq!(s.states[1].parity, Parity::Odd);
        for state in &s.states {
            for (n, c) in state.vector.iter().enumerate() {
                if !state.parity.contains(n) {
                    assert_eq!(*c, 0.0);
                }
            }
        }
        assert!(s.max_residual() <= 1e-9 * s.matrix_norm);
        let e1 = oracle_energy(c, &table(30), Level::FirstExcited).unwrap().energy;
        assert_eq!(e1, s.lowest(Parity::Odd).unwrap().value);
    }

    #[test]
    fn truncation_converged() {
        let t = table(120);
        let c = Coupling::attractive(0.7).unwrap();
        for level in [Level::Ground, Level::FirstExcited] {
            let a = oracle_energy(c, &t.truncated(80).unwrap(), level).unwrap().energy;
            let b = oracle_energy(c, &t, level).unwrap().energy;
            assert!((a - b).abs() < 1e-8, "{level:?}: {a} {b}");
        }
    }

    #[test]
    fn eigenvector_dump() {
        let c = Coupling::attractive(0.2).unwrap();
        let s = HamiltonianMatrix::build(c, &table(3)).diagonalize().unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("state,value,parity,c0,c1,c2\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
