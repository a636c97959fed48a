//! Truncated Birman–Schwinger kernel, its Fredholm determinant, and the
//! scalar fixed-point equations for the two lowest levels.
//!
//! With `Vₘₙ = ⟨ψₘ|e^{−x²}|ψₙ⟩` and `dₙ = n + ½ − E`, the kernel in the
//! oscillator basis is `Kₘₙ(E) = Vₘₙ / √(dₘ dₙ)`. An energy `E` is an
//! eigenvalue of `H₀ − g e^{−x²}` (truncated to the same basis) exactly when
//! `det(1 − g K(E)) = 0`. Here `g = λ` for an attractive and `g = −λ` for a
//! repulsive Gaussian.
//!
//! Everything is parity-split: `Vₘₙ = 0` for odd `m + n`, so even and odd
//! modes decouple and each level lives in one sector.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::elements::MatrixElementTable;
use crate::linalg::{cholesky_solve, Lu, Matrix};
use crate::special::{ln_gamma, BasisIndex, Parity};
use crate::{Error, Result};

/// Minimum distance `|E − (n + ½)|` accepted anywhere a resolvent
/// denominator is formed.
pub const POLE_GUARD: f64 = 1e-9;
/// Sign-scan resolution of the determinant root finder.
pub const SCAN_STEP: f64 = 1e-3;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_BRACKET_WIDTH: f64 = 1e-10;
const SECANT_POLISH_STEPS: usize = 3;
const MAX_FIXED_POINT_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    /// `H₀ − λ e^{−x²}`
    Attractive,
    /// `H₀ + λ e^{−x²}`
    Repulsive,
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "attractive" | "a" | "-" => Ok(Sign::Attractive),
            "repulsive" | "r" | "+" => Ok(Sign::Repulsive),
            _ => Err(Error::InvalidArgument(format!("unknown sign '{s}'"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Attractive => "attractive",
            Sign::Repulsive => "repulsive",
        })
    }
}

/// Coupling constant `λ ≥ 0` together with the sign of the Gaussian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    lambda: f64,
    sign: Sign,
}

impl Coupling {
    pub fn new(lambda: f64, sign: Sign) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("coupling must be finite and non-negative, got {lambda}")));
        }
        Ok(Coupling { lambda, sign })
    }

    pub fn attractive(lambda: f64) -> Result<Self> {
        Self::new(lambda, Sign::Attractive)
    }

    pub fn repulsive(lambda: f64) -> Result<Self> {
        Self::new(lambda, Sign::Repulsive)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `g` in `H = H₀ − g e^{−x²}`.
    pub fn strength(&self) -> f64 {
        match self.sign {
            Sign::Attractive => self.lambda,
            Sign::Repulsive => -self.lambda,
        }
    }
}

/// The two levels treated here: the ground state (even) and the first
/// excited state (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    Ground,
    FirstExcited,
}

impl Level {
    pub fn from_index(n: usize) -> Result<Self> {
        match n {
            0 => Ok(Level::Ground),
            1 => Ok(Level::FirstExcited),
            _ => Err(Error::InvalidArgument(format!("only levels 0 and 1 are supported, got {n}"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Level::Ground => 0,
            Level::FirstExcited => 1,
        }
    }

    pub fn parity(self) -> Parity {
        Parity::of(self.index())
    }

    pub fn unperturbed_energy(self) -> f64 {
        BasisIndex(self.index()).energy()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FredholmDet,
    RankOneFixedPoint,
    SecondOrder,
    Oracle,
}

impl Method {
    pub fn short_name(self) -> &'static str {
        match self {
            Method::FredholmDet => "det",
            Method::RankOneFixedPoint => "rank1",
            Method::SecondOrder => "p2",
            Method::Oracle => "oracle",
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "det" | "fredholm_det" => Ok(Method::FredholmDet),
            "rank1" | "rank_one_fixed_point" => Ok(Method::RankOneFixedPoint),
            "p2" | "second_order" => Ok(Method::SecondOrder),
            "oracle" => Ok(Method::Oracle),
            _ => Err(Error::InvalidArgument(format!("unknown method '{s}'"))),
        }
    }
}

/// An eigenvalue and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyResult {
    pub energy: f64,
    pub method: Method,
    /// Basis size used; zero for closed-form results.
    pub truncation: usize,
    /// Width of the final root bracket, the last fixed-point increment, or
    /// the eigenpair residual, depending on `method`.
    pub bracket_width: f64,
}

/// Subset of basis modes a determinant is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Full,
    Even,
    Odd,
}

impl Sector {
    pub fn contains(self, n: usize) -> bool {
        match self {
            Sector::Full => true,
            Sector::Even => n % 2 == 0,
            Sector::Odd => n % 2 == 1,
        }
    }

    fn modes(self, dim: usize) -> Vec<usize> {
        (0..dim).filter(|&n| self.contains(n)).collect()
    }
}

impl From<Parity> for Sector {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => Sector::Even,
            Parity::Odd => Sector::Odd,
        }
    }
}

fn denominator(n: usize, energy: f64) -> Result<f64> {
    let pole = BasisIndex(n).energy();
    let d = pole - energy;
    if d.abs() <= POLE_GUARD {
        return Err(Error::Pole { energy, pole });
    }
    Ok(d)
}

/// `|dₘ dₙ|^{−1/2} Vₘₙ` on `modes`, and the signs of the `dₙ`.
fn signed_kernel(energy: f64, table: &MatrixElementTable, modes: &[usize]) -> Result<(Matrix, Vec<f64>)> {
    let d = modes.iter().map(|&n| denominator(n, energy)).collect::<Result<Vec<_>>>()?;
    let scale: Vec<f64> = d.iter().map(|x| x.abs().sqrt().recip()).collect();
    let k = Matrix::from_fn(modes.len(), |i, j| table.get(modes[i], modes[j]) * (scale[i] * scale[j]));
    Ok((k, d.iter().map(|x| x.signum()).collect()))
}

/// `N × N` truncation of the Birman–Schwinger kernel at spectral parameter
/// `E`, with the rows and columns of excluded modes set to zero.
#[derive(Debug, Clone)]
pub struct BsKernel {
    energy: f64,
    entries: Matrix,
    excluded: Vec<BasisIndex>,
}

impl BsKernel {
    /// Requires `E` below `n + ½` for every mode that is not excluded.
    pub fn build(energy: f64, table: &MatrixElementTable, excluded: &[BasisIndex]) -> Result<Self> {
        let dim = table.dim();
        let mut excluded: Vec<BasisIndex> = excluded.iter().copied().filter(|b| b.0 < dim).collect();
        excluded.sort();
        excluded.dedup();
        let active: Vec<usize> = (0..dim).filter(|n| excluded.binary_search(&BasisIndex(*n)).is_err()).collect();
        for &n in &active {
            let d = denominator(n, energy)?;
            if d < 0.0 {
                return Err(Error::Domain { energy, reason: "kernel requires E below every retained pole n + 1/2" });
            }
        }
        let (k, _) = signed_kernel(energy, table, &active)?;
        let mut entries = Matrix::zeros(dim);
        for (i, &m) in active.iter().enumerate() {
            for (j, &n) in active.iter().enumerate() {
                entries[(m, n)] = k[(i, j)];
            }
        }
        Ok(BsKernel { energy, entries, excluded })
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn excluded(&self) -> &[BasisIndex] {
        &self.excluded
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Trace plus an estimate of the diagonal beyond the truncation, whose
    /// entries fall off like `n^{−3/2}`. Only meaningful without exclusions.
    pub fn tail_corrected_trace(&self) -> f64 {
        let dim = self.dim();
        if dim < 2 {
            return self.trace();
        }
        self.trace() + crate::series::power_law_tail(dim - 1, |n| self.entries[(n, n)])
    }
}

/// Trace norm `λ √(π/2) Γ(½ − E)/Γ(1 − E)` of the full kernel for `E < ½`.
pub fn trace_norm_exact(energy: f64, lambda: f64) -> Result<f64> {
    if !(energy < 0.5) {
        return Err(Error::Domain { energy, reason: "trace norm is finite only for E < 1/2" });
    }
    let ratio = (ln_gamma(0.5 - energy)? - ln_gamma(1.0 - energy)?).exp();
    Ok(lambda * (PI / 2.0).sqrt() * ratio)
}

/// `det(1 − g K(E))` restricted to one parity sector (or the full basis).
///
/// Between poles some `dₙ` are negative; the determinant is then that of
/// `1 − g S K`, `S = diag(sign dₙ)`, which equals `det(1 − g D⁻¹V)`.
pub fn fredholm_det_sector(energy: f64, coupling: Coupling, table: &MatrixElementTable, sector: Sector) -> Result<f64> {
    let modes = sector.modes(table.dim());
    let (k, signs) = signed_kernel(energy, table, &modes)?;
    let g = coupling.strength();
    let a = Matrix::from_fn(modes.len(), |i, j| if i == j { 1.0 } else { 0.0 } - g * signs[i] * k[(i, j)]);
    Ok(Lu::new(&a).det())
}

/// `det(1 ∓ λ K_N(E))` over the whole truncated basis.
pub fn fredholm_det(energy: f64, coupling: Coupling, table: &MatrixElementTable) -> Result<f64> {
    fredholm_det_sector(energy, coupling, table, Sector::Full)
}

/// Lowest zero of the sector determinant inside `bracket`.
///
/// The open interval must not contain a pole of the sector; poles sitting
/// exactly on the endpoints are fine. The interval is scanned at
/// [`SCAN_STEP`] for the first sign change, bisected to
/// [`ROOT_BRACKET_WIDTH`], and polished with a few secant steps kept inside
/// the final bracket.
pub fn solve_det_root(
    coupling: Coupling,
    table: &MatrixElementTable,
    bracket: (f64, f64),
    sector: Sector,
) -> Result<EnergyResult> {
    solve_det_root_scanning(coupling, table, bracket, sector, ScanFrom::Below)
}

/// End of the bracket the sign scan starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFrom {
    /// Finds the lowest zero in the bracket.
    Below,
    /// Finds the highest zero in the bracket.
    Above,
}

/// [`solve_det_root`] with a choice of scan direction. When the bracket is
/// known to hold a single zero, scanning from the end nearer to it saves
/// most of the determinant evaluations.
pub fn solve_det_root_scanning(
    coupling: Coupling,
    table: &MatrixElementTable,
    bracket: (f64, f64),
    sector: Sector,
    from: ScanFrom,
) -> Result<EnergyResult> {
    let (a, b) = bracket;
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("empty bracket ({a}, {b})")));
    }
    if let Some(n) = sector.modes(table.dim()).into_iter().find(|&n| {
        let p = BasisIndex(n).energy();
        a + POLE_GUARD < p && p < b - POLE_GUARD
    }) {
        return Err(Error::PoleInBracket { a, b, pole: BasisIndex(n).energy() });
    }
    let f = |e: f64| fredholm_det_sector(e, coupling, table, sector);
    let lo = a + 2.0 * POLE_GUARD;
    let hi = b - 2.0 * POLE_GUARD;
    let steps = ((hi - lo) / SCAN_STEP).ceil().max(1.0) as usize;
    let grid = |k: usize| {
        let k = if from == ScanFrom::Above { steps - k } else { k };
        if k == steps {
            hi
        } else {
            lo + (hi - lo) * k as f64 / steps as f64
        }
    };

    let mut x0 = grid(0);
    let mut f0 = f(x0)?;
    let mut found = None;
    for k in 1..=steps {
        let x1 = grid(k);
        let f1 = f(x1)?;
        if f0 == 0.0 {
            found = Some((x0, x0, 0.0, 0.0));
            break;
        }
        if f0.signum() != f1.signum() {
            found = Some((x0, x1, f0, f1));
            break;
        }
        x0 = x1;
        f0 = f1;
    }
    let (mut xl, mut xr, mut fl, mut fr) = match found.ok_or(Error::NoSignChange { a, b })? {
        (x0, x1, f0, f1) if x0 > x1 => (x1, x0, f1, f0),
        pair => pair,
    };

    while xr - xl > ROOT_BRACKET_WIDTH {
        let mid = 0.5 * (xl + xr);
        if mid <= xl || mid >= xr {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            xl = mid;
            xr = mid;
            fl = 0.0;
            fr = 0.0;
            break;
        }
        if fm.signum() == fl.signum() {
            xl = mid;
            fl = fm;
        } else {
            xr = mid;
            fr = fm;
        }
    }

    let mut root = if fl == 0.0 { xl } else { 0.5 * (xl + xr) };
    if xr > xl && fr != fl {
        let (mut p, mut fp, mut q, mut fq) = (xl, fl, xr, fr);
        for _ in 0..SECANT_POLISH_STEPS {
            if fq == fp {
                break;
            }
            let s = q - fq * (q - p) / (fq - fp);
            if !(s >= xl && s <= xr) {
                break;
            }
            let fs = f(s)?;
            root = s;
            if fs == 0.0 {
                break;
            }
            (p, fp, q, fq) = (q, fq, s, fs);
        }
    }
    Ok(EnergyResult {
        energy: root,
        method: Method::FredholmDet,
        truncation: table.dim(),
        bracket_width: xr - xl,
    })
}

/// Determinant root for one of the two lowest levels, in that level's
/// parity sector.
///
/// Since `0 < e^{−x²} ≤ 1`, the lowest level of the sector lies above
/// `ℓ + ½ − λ` (attractive) or `ℓ + ½` (repulsive), and the Rayleigh
/// quotient of `ψₗ` bounds it by `ℓ + ½ − g Vₗₗ` from above. The next level
/// of the sector starts at least `2 − λ` higher, so for the couplings of
/// interest the bracket holds a single zero, which sits close to the upper
/// end; the scan runs downward from there.
pub fn det_energy(coupling: Coupling, table: &MatrixElementTable, level: Level) -> Result<EnergyResult> {
    let base = level.unperturbed_energy();
    let lambda = coupling.lambda();
    if lambda == 0.0 {
        return Ok(EnergyResult { energy: base, method: Method::FredholmDet, truncation: table.dim(), bracket_width: 0.0 });
    }
    let margin = 0.05;
    let rayleigh = base - coupling.strength() * table.get(level.index(), level.index());
    let bracket = match coupling.sign() {
        Sign::Attractive => ((base - lambda - margin).max(base - 2.0), (rayleigh + margin).min(base)),
        Sign::Repulsive => (base, (rayleigh + margin).min(base + 2.0)),
    };
    solve_det_root_scanning(coupling, table, bracket, level.parity().into(), ScanFrom::Above)
}

/// `λ₀ = 1/(√2 ln 2)`: below it the reduced ground-state kernel at
/// `E = ½` has trace norm less than one.
pub fn invertibility_threshold_0() -> f64 {
    1.0 / (SQRT_2 * LN_2)
}

/// `λ₁ = 4/(√2 (1 + 2 ln 2))`.
pub fn invertibility_threshold_1() -> f64 {
    4.0 / (SQRT_2 * (1.0 + 2.0 * LN_2))
}

/// `√2 = 1/⟨ψ₀|e^{−x²}|ψ₀⟩`, bound on the repulsive first-excited fixed point.
pub fn repulsive_excited_threshold() -> f64 {
    SQRT_2
}

/// Upper coupling limit of the rank-one fixed point, if any.
pub fn rank_one_limit(level: Level, sign: Sign) -> Option<f64> {
    match (level, sign) {
        (Level::Ground, Sign::Attractive) => Some(invertibility_threshold_0()),
        (Level::FirstExcited, Sign::Attractive) => Some(invertibility_threshold_1()),
        (Level::Ground, Sign::Repulsive) => None,
        (Level::FirstExcited, Sign::Repulsive) => Some(repulsive_excited_threshold()),
    }
}

/// Scalar fixed point for the shift `δ` of level `ℓ`, `E = ℓ + ½ − δ`:
///
/// `δ = g Vₗₗ + g² wᵀ (1 − g K)⁻¹ w`,  `wₙ = Vₙₗ / √(n + ½ − E)`,
///
/// with `K` the kernel on the modes of the level's parity other than `ℓ`.
/// This is the determinant condition after the rank-one divergent mode is
/// split off. Opposite-parity modes (in particular `ψ₀` for the excited
/// level) have `Vₙₗ = 0` and drop out.
pub fn rank_one_energy(coupling: Coupling, table: &MatrixElementTable, level: Level, tol: f64) -> Result<EnergyResult> {
    let lambda = coupling.lambda();
    if let Some(threshold) = rank_one_limit(level, coupling.sign()) {
        if lambda >= threshold {
            return Err(Error::ThresholdExceeded { lambda, threshold });
        }
    }
    let l = level.index();
    let dim = table.dim();
    if dim <= l {
        return Err(Error::DimensionMismatch { expected: l + 1, got: dim });
    }
    let base = level.unperturbed_energy();
    let g = coupling.strength();
    let v_ll = table.get(l, l);
    let active: Vec<usize> = (0..dim).filter(|&n| n != l && Parity::of(n) == level.parity()).collect();
    let excluded: Vec<BasisIndex> = (0..dim).filter(|n| !active.contains(n)).map(BasisIndex).collect();

    let rhs = |delta: f64| -> Result<f64> {
        if active.is_empty() {
            return Ok(g * v_ll);
        }
        let energy = base - delta;
        let kernel = BsKernel::build(energy, table, &excluded)?;
        let k = kernel.entries().submatrix(&active);
        let w: Vec<f64> = active.iter().map(|&n| table.get(n, l) / (BasisIndex(n).energy() - energy).sqrt()).collect();
        let a = Matrix::from_fn(active.len(), |i, j| if i == j { 1.0 } else { 0.0 } - g * k[(i, j)]);
        let u = cholesky_solve(&a, &w).ok_or(Error::NotInvertible { lambda })?;
        Ok(g * v_ll + g * g * w.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>())
    };

    // E must stay below the lowest retained pole; δ above this floor
    let floor = active.first().map_or(f64::NEG_INFINITY, |&n| base - BasisIndex(n).energy());
    let keep_below_pole = |current: f64, next: f64| if next <= floor + POLE_GUARD { 0.5 * (current + floor) } else { next };
    let mut delta = keep_below_pole(0.0, g * v_ll);
    let mut prev_step = 0.0f64;
    let mut damped = false;
    let mut last_change = f64::INFINITY;
    let mut converged = lambda == 0.0;
    for _ in 0..MAX_FIXED_POINT_ITERATIONS {
        if converged {
            break;
        }
        let step = rhs(delta)? - delta;
        if step * prev_step < 0.0 {
            damped = true;
        }
        let next = keep_below_pole(delta, if damped { delta + 0.5 * step } else { delta + step });
        last_change = (next - delta).abs();
        delta = next;
        prev_step = step;
        converged = last_change < tol;
    }
    if !converged {
        return Err(Error::NoConvergence { what: "rank-one fixed point", iterations: MAX_FIXED_POINT_ITERATIONS });
    }
    Ok(EnergyResult {
        energy: base - delta,
        method: Method::RankOneFixedPoint,
        truncation: dim,
        bracket_width: if lambda == 0.0 { 0.0 } else { last_change },
    })
}

/// Ground state `E₀ = ½ ∓ ε₀` from the rank-one fixed point.
pub fn rank_one_epsilon0(coupling: Coupling, table: &MatrixElementTable, tol: f64) -> Result<EnergyResult> {
    rank_one_energy(coupling, table, Level::Ground, tol)
}

/// First excited state `E₁ = 3/2 ∓ ε₁` from the rank-one fixed point.
pub fn rank_one_epsilon1(coupling: Coupling, table: &MatrixElementTable, tol: f64) -> Result<EnergyResult> {
    rank_one_energy(coupling, table, Level::FirstExcited, tol)
}
