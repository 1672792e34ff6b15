use std::path::Path;

use qutrit_maps::choi::choi_of;
use qutrit_maps::detection::{
    cmc_check, full_report, map_detects, minor_d_tau, minor_root, ppt_spectrum, witness_value,
    DetectionReport, WitnessOperator, NEGATIVE_EIGENVALUE_THRESHOLD,
};
use qutrit_maps::maps::QutritMapSpec;
use qutrit_maps::states::{spa_choi_state, tau_x, DensityMatrix, StateFamily, StateFamilyPoint};
use rayon::prelude::*;

use crate::range::AxisRange;
use crate::table::{Cell, Table};
use crate::CliError;

fn internal(e: qutrit_maps::Error) -> CliError {
    CliError::Internal(e.to_string())
}

fn sign(v: f64) -> i64 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Columns: alpha, x, d_tau, sign, root.
pub fn scan_minor(alphas: &AxisRange, xs: &AxisRange) -> Result<Table, CliError> {
    let xs = xs.points();
    let blocks = alphas
        .points()
        .into_par_iter()
        .map(|alpha| {
            let root = minor_root(alpha)?;
            xs.iter()
                .map(|&x| {
                    let d = minor_d_tau(alpha, x)?;
                    Ok(vec![
                        Cell::Real(alpha),
                        Cell::Real(x),
                        Cell::Real(d),
                        Cell::Int(sign(d)),
                        Cell::Real(root),
                    ])
                })
                .collect::<qutrit_maps::Result<Vec<_>>>()
        })
        .collect::<qutrit_maps::Result<Vec<_>>>()
        .map_err(internal)?;
    let mut table = Table::new(
        "scan-minor",
        ["alpha", "x", "d_tau", "sign", "root"]
            .map(String::from)
            .to_vec(),
    );
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

/// Columns: alpha, ev0..ev8 (ascending), count_negative.
pub fn spa_spectrum(alphas: &AxisRange) -> Result<Table, CliError> {
    let rows = alphas
        .points()
        .into_par_iter()
        .map(|alpha| {
            let spectrum = ppt_spectrum(&spa_choi_state(alpha)?)?;
            let mut row = vec![Cell::Real(alpha)];
            row.extend(spectrum.eigenvalues().iter().map(|&e| Cell::Real(e)));
            row.push(Cell::Int(
                spectrum.count_below(NEGATIVE_EIGENVALUE_THRESHOLD) as i64,
            ));
            Ok(row)
        })
        .collect::<qutrit_maps::Result<Vec<_>>>()
        .map_err(internal)?;
    let mut columns = vec!["alpha".to_string()];
    columns.extend((0..9).map(|k| format!("ev{k}")));
    columns.push("count_negative".into());
    let mut table = Table::new("spa-spectrum", columns);
    table.rows = rows;
    Ok(table)
}

/// Columns: alpha, lhs, rhs, violated.
pub fn cmc_scan(alphas: &AxisRange) -> Result<Table, CliError> {
    let rows = alphas
        .points()
        .into_par_iter()
        .map(|alpha| {
            let r = cmc_check(&spa_choi_state(alpha)?)?;
            Ok(vec![
                Cell::Real(alpha),
                Cell::Real(r.lhs),
                Cell::Real(r.rhs),
                Cell::Bool(r.violated),
            ])
        })
        .collect::<qutrit_maps::Result<Vec<_>>>()
        .map_err(internal)?;
    let mut table = Table::new(
        "cmc-scan",
        ["alpha", "lhs", "rhs", "violated"]
            .map(String::from)
            .to_vec(),
    );
    table.rows = rows;
    Ok(table)
}

/// Columns: x, value, closed_form, detected, dual_min_eig, dual_detected.
///
/// `value` is Tr[C τ_x] for the Choi matrix C of Λ_1; the dual columns
/// report (𝕀 ⊗ Λ_1†)(τ_x).
pub fn witness_tau(xs: &AxisRange) -> Result<Table, CliError> {
    let witness = choi_of(&QutritMapSpec::lambda_alpha(1.0).map_err(internal)?)
        .and_then(|c| WitnessOperator::from_choi(&c))
        .map_err(internal)?;
    let dual = QutritMapSpec::lambda_alpha_dual(1.0).map_err(internal)?;
    let rows = xs
        .points()
        .into_par_iter()
        .map(|x| {
            let tau = tau_x(x)?;
            let value = witness_value(&witness, &tau)?;
            let closed = (3.0 - x) / (18.0 * (x * x + x + 1.0));
            let (dual_detected, dual_min) = map_detects(&dual, &tau)?;
            Ok(vec![
                Cell::Real(x),
                Cell::Real(value),
                Cell::Real(closed),
                Cell::Bool(value < NEGATIVE_EIGENVALUE_THRESHOLD),
                Cell::Real(dual_min),
                Cell::Bool(dual_detected),
            ])
        })
        .collect::<qutrit_maps::Result<Vec<_>>>()
        .map_err(internal)?;
    let columns = [
        "x",
        "value",
        "closed_form",
        "detected",
        "dual_min_eig",
        "dual_detected",
    ];
    let mut table = Table::new("witness-tau", columns.map(String::from).to_vec());
    table.rows = rows;
    Ok(table)
}

/// Reads and validates a state file.
pub fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn detect(path: &Path) -> Result<DetectionReport, CliError> {
    full_report(&load_state(path)?).map_err(internal)
}

pub fn export(family: StateFamily, parameter: f64) -> Result<DensityMatrix, CliError> {
    let point = StateFamilyPoint::new(family, parameter)
        .map_err(|e| CliError::Input(format!("--parameter: {e}")))?;
    let rho = point
        .build()
        .map_err(|e| CliError::Input(format!("--parameter: {e}")))?;
    Ok(rho.with_provenance(point))
}
