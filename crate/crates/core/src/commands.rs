//! The operations behind the command-line tool. Each returns data (a
//! [`Table`] or a JSON value) so it can be rendered, tested, or reused
//! without going through the binary.

use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::birman_schwinger::{
    det_energy, fredholm_det, invertibility_threshold_0, invertibility_threshold_1, rank_one_energy,
    rank_one_limit, repulsive_excited_threshold, Coupling, EnergyResult, Level, Method, Sign,
};
use crate::elements::{default_quadrature_order, MatrixElementTable};
use crate::format::{json_number, Cell, Table};
use crate::oracle::oracle_energy;
use crate::perturbation::{second_order_energy, SecondOrderCoefficients};
use crate::series::{series_s0, series_s1, trace_m_half, SeriesIdentity};
use crate::special::{gauss_hermite_rule, MAX_QUADRATURE_ORDER};
use crate::{Error, Result};

/// Extra basis states used for the convergence self-check of `energy`.
pub const SELF_CHECK_EXTRA_STATES: usize = 40;
/// Allowed change of an energy when the basis grows by
/// [`SELF_CHECK_EXTRA_STATES`].
pub const SELF_CHECK_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub truncation: usize,
    pub quad_order: usize,
    pub tol: f64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { truncation: 120, quad_order: default_quadrature_order(120), tol: 1e-10, format: OutputFormat::Csv }
    }
}

impl RunConfig {
    pub fn new(truncation: usize, quad_order: Option<usize>, tol: f64, format: OutputFormat) -> Result<Self> {
        let cfg = RunConfig {
            truncation,
            quad_order: quad_order.unwrap_or_else(|| default_quadrature_order(truncation)),
            tol,
            format,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation == 0 {
            return Err(Error::InvalidArgument("truncation must be positive".into()));
        }
        let required = 2 * self.truncation + 8;
        if self.quad_order < required {
            return Err(Error::InsufficientQuadrature { order: self.quad_order, required });
        }
        // the self-check rebuilds with a larger basis and a matching rule
        let check_order = self.quad_order + 2 * SELF_CHECK_EXTRA_STATES;
        if check_order > MAX_QUADRATURE_ORDER {
            return Err(Error::QuadratureOrderRange { order: check_order, max: MAX_QUADRATURE_ORDER });
        }
        if !(1e-14..=1e-4).contains(&self.tol) {
            return Err(Error::InvalidArgument(format!("tol must lie in [1e-14, 1e-4], got {}", self.tol)));
        }
        Ok(())
    }

    pub fn table(&self) -> Result<MatrixElementTable> {
        MatrixElementTable::build(self.truncation, &gauss_hermite_rule(self.quad_order)?)
    }

    fn reference_table(&self) -> Result<MatrixElementTable> {
        let rule = gauss_hermite_rule(self.quad_order + 2 * SELF_CHECK_EXTRA_STATES)?;
        MatrixElementTable::build(self.truncation + SELF_CHECK_EXTRA_STATES, &rule)
    }
}

fn check_grid(steps: usize, min: usize) -> Result<()> {
    if steps < min {
        return Err(Error::InvalidArgument(format!("steps must be at least {min}, got {steps}")));
    }
    Ok(())
}

/// `x, V(x)` with `V = ½x² ∓ λe^{−x²}` on `steps` uniform points of
/// `[−xmax, xmax]`.
pub fn cmd_potential(coupling: Coupling, xmax: f64, steps: usize) -> Result<Table> {
    check_grid(steps, 2)?;
    if !(xmax > 0.0 && xmax.is_finite()) {
        return Err(Error::InvalidArgument(format!("xmax must be positive, got {xmax}")));
    }
    let g = coupling.strength();
    let mut t = Table::new(["x", "potential"]);
    for k in 0..steps {
        let x = -xmax + 2.0 * xmax * k as f64 / (steps - 1) as f64;
        t.push(vec![x.into(), (0.5 * x * x - g * (-x * x).exp()).into()]);
    }
    Ok(t)
}

/// Upper end of the coupling range drawn for a level: the attractive curves
/// stop at `λ₀`, the repulsive first excited curve at `√2`.
pub fn curve_limit(level: Level, sign: Sign) -> Option<f64> {
    match (level, sign) {
        (_, Sign::Attractive) => Some(invertibility_threshold_0()),
        (Level::FirstExcited, Sign::Repulsive) => Some(repulsive_excited_threshold()),
        (Level::Ground, Sign::Repulsive) => None,
    }
}

fn energy_by(method: Method, coupling: Coupling, table: &MatrixElementTable, level: Level, tol: f64) -> Result<EnergyResult> {
    match method {
        Method::FredholmDet => det_energy(coupling, table, level),
        Method::RankOneFixedPoint => rank_one_energy(coupling, table, level, tol),
        Method::SecondOrder => Ok(second_order_energy(coupling, level)),
        Method::Oracle => oracle_energy(coupling, table, level),
    }
}

/// Energy of one level against `λ`, one column per method.
///
/// If `lmax` reaches the curve limit it is clamped and the grid becomes
/// half-open, `λ = limit·k/steps` for `k < steps`; such rows carry the flag
/// `clamped`. A method that fails at some `λ` leaves its cell empty and
/// flags the row `method_error`.
pub fn cmd_curve(cfg: &RunConfig, level: Level, sign: Sign, lmax: f64, steps: usize, methods: &[Method]) -> Result<Table> {
    check_grid(steps, 1)?;
    if !(lmax > 0.0 && lmax.is_finite()) {
        return Err(Error::InvalidArgument(format!("lmax must be positive, got {lmax}")));
    }
    if methods.is_empty() {
        return Err(Error::InvalidArgument("no methods requested".into()));
    }
    let needs_table = methods.iter().any(|m| *m != Method::SecondOrder);
    let table = if needs_table { Some(cfg.table()?) } else { None };
    let (top, clamped, count) = match curve_limit(level, sign) {
        Some(limit) if lmax >= limit => (limit, true, steps),
        _ => (lmax, false, steps + 1),
    };
    let rows: Vec<Vec<Cell>> = (0..count)
        .into_par_iter()
        .map(|k| {
            let lambda = top * k as f64 / steps as f64;
            let coupling = Coupling::new(lambda, sign).expect("grid coupling is non-negative");
            let mut failed = false;
            let mut row = vec![Cell::Num(lambda)];
            for &m in methods {
                let r = match (&table, m) {
                    (_, Method::SecondOrder) => Ok(second_order_energy(coupling, level)),
                    (Some(t), m) => energy_by(m, coupling, t, level, cfg.tol),
                    (None, _) => unreachable!("table is built for every non-closed-form method"),
                };
                match r {
                    Ok(r) if r.energy.is_finite() => row.push(Cell::Num(r.energy)),
                    _ => {
                        failed = true;
                        row.push(Cell::Empty);
                    }
                }
            }
            let flag = if failed {
                "method_error"
            } else if clamped {
                "clamped"
            } else {
                "ok"
            };
            row.push(flag.into());
            row
        })
        .collect();
    let mut columns = vec!["lambda".to_string()];
    columns.extend(methods.iter().map(|m| m.short_name().to_string()));
    columns.push("flag".into());
    let mut t = Table::new(columns);
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

/// Result of `energy`: the value, and its stability under basis growth.
#[derive(Debug, Clone)]
pub struct EnergyReport {
    pub coupling: Coupling,
    pub level: Level,
    pub result: EnergyResult,
    pub reference: Option<EnergyResult>,
}

impl EnergyReport {
    pub fn self_check_passed(&self) -> bool {
        self.reference.is_none_or(|r| (r.energy - self.result.energy).abs() <= SELF_CHECK_TOLERANCE)
    }

    pub fn to_json(&self) -> Value {
        let closed_form = self.result.method == Method::SecondOrder;
        let mut v = json!({
            "energy": json_number(self.result.energy),
            "method": self.result.method,
            "truncation": if closed_form { Value::Null } else { json!(self.result.truncation) },
            "residual": if closed_form { Value::Null } else { json_number(self.result.bracket_width) },
            "level": self.level.index(),
            "sign": self.coupling.sign(),
            "lambda": json_number(self.coupling.lambda()),
        });
        if let Some(r) = self.reference {
            v["self_check"] = json!({
                "reference_truncation": r.truncation,
                "reference_energy": json_number(r.energy),
                "difference": json_number(r.energy - self.result.energy),
                "tolerance": SELF_CHECK_TOLERANCE,
                "passed": self.self_check_passed(),
            });
        }
        v
    }
}

/// A single energy. Unlike `curve`, couplings past the validity limit of the
/// rank-one and second-order routes are refused rather than clamped.
pub fn cmd_energy(cfg: &RunConfig, coupling: Coupling, level: Level, method: Method) -> Result<EnergyReport> {
    if matches!(method, Method::RankOneFixedPoint | Method::SecondOrder) {
        if let Some(threshold) = rank_one_limit(level, coupling.sign()) {
            if coupling.lambda() >= threshold {
                return Err(Error::ThresholdExceeded { lambda: coupling.lambda(), threshold });
            }
        }
    }
    if method == Method::SecondOrder {
        return Ok(EnergyReport { coupling, level, result: second_order_energy(coupling, level), reference: None });
    }
    let table = cfg.reference_table()?;
    let result = energy_by(method, coupling, &table.truncated(cfg.truncation)?, level, cfg.tol)?;
    let reference = energy_by(method, coupling, &table, level, cfg.tol)?;
    Ok(EnergyReport { coupling, level, result, reference: Some(reference) })
}

/// `E, det(1 ∓ λK(E))` on `steps` uniform points of `[emin, emax]`; the
/// determinant cell is empty where `E` falls on a pole.
pub fn cmd_det_scan(cfg: &RunConfig, coupling: Coupling, emin: f64, emax: f64, steps: usize) -> Result<Table> {
    check_grid(steps, 2)?;
    if !(emin < emax) || !emin.is_finite() || !emax.is_finite() {
        return Err(Error::InvalidArgument(format!("need emin < emax, got [{emin}, {emax}]")));
    }
    let table = cfg.table()?;
    let rows: Vec<Vec<Cell>> = (0..steps)
        .into_par_iter()
        .map(|k| {
            let e = emin + (emax - emin) * k as f64 / (steps - 1) as f64;
            match fredholm_det(e, coupling, &table) {
                Ok(d) => Ok(vec![e.into(), d.into()]),
                Err(Error::Pole { .. }) => Ok(vec![e.into(), Cell::Empty]),
                Err(err) => Err(err),
            }
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(["energy", "det"]);
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

/// Partial sums of the three series identities next to their closed forms.
pub fn cmd_series_check(terms: usize, trace_terms: usize) -> Result<Table> {
    let mut t = Table::new(["identity", "partial_sum", "tail_estimate", "closed_form", "difference", "tail_bound", "terms"]);
    let rows: [(&str, SeriesIdentity); 3] = [
        ("s0", series_s0(terms)?),
        ("s1", series_s1(terms)?),
        ("trace_m_half", trace_m_half(trace_terms)?),
    ];
    for (name, s) in rows {
        t.push(vec![
            name.into(),
            s.partial_sum.into(),
            s.tail_estimate.into(),
            s.closed_form.into(),
            s.difference().into(),
            s.tail_bound.into(),
            Cell::Int(s.terms_used as i64),
        ]);
    }
    Ok(t)
}

fn identity_json(s: &SeriesIdentity) -> Value {
    json!({
        "closed_form": json_number(s.closed_form),
        "partial_sum": json_number(s.partial_sum),
        "corrected_sum": json_number(s.corrected_sum()),
        "difference": json_number(s.difference()),
        "terms": s.terms_used,
    })
}

/// Thresholds, series sums and second-order coefficients.
pub fn cmd_constants() -> Result<Value> {
    let coefficients: Vec<Value> = [Level::Ground, Level::FirstExcited]
        .into_iter()
        .flat_map(|level| [Sign::Attractive, Sign::Repulsive].map(|sign| (level, sign)))
        .map(|(level, sign)| {
            let c = SecondOrderCoefficients::new(level, sign);
            json!({
                "level": level.index(),
                "sign": sign,
                "linear": json_number(c.linear),
                "quadratic": json_number(c.quadratic),
            })
        })
        .collect();
    Ok(json!({
        "thresholds": {
            "lambda0": json_number(invertibility_threshold_0()),
            "lambda1": json_number(invertibility_threshold_1()),
            "repulsive_excited": json_number(repulsive_excited_threshold()),
        },
        "series": {
            "s0": identity_json(&series_s0(60)?),
            "s1": identity_json(&series_s1(60)?),
            "sqrt2_ln2": identity_json(&trace_m_half(100_000)?),
        },
        "coefficients": coefficients,
    }))
}
