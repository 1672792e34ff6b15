use serde::{Deserialize, Serialize};

use super::cmc::{cmc_check, CmcReport};
use super::witness::{witness_value, WitnessOperator};
use super::{map_detects, ppt_spectrum, NEGATIVE_EIGENVALUE_THRESHOLD};
use crate::choi::choi_of;
use crate::error::Result;
use crate::maps::QutritMapSpec;
use crate::states::DensityMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapVerdict {
    pub map: String,
    pub spec: QutritMapSpec,
    pub min_eigenvalue: f64,
    pub detected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReading {
    pub witness: String,
    pub value: f64,
    pub detected: bool,
}

/// Every criterion's verdict on one state, with its numeric evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub ppt_eigenvalues: Vec<f64>,
    pub ppt_min_eig: f64,
    /// Negative partial transpose.
    pub npt: bool,
    pub map_verdicts: Vec<MapVerdict>,
    pub witness_values: Vec<WitnessReading>,
    pub cmc: CmcReport,
    /// Whether any criterion certified entanglement.
    pub entangled: bool,
}

/// Maps checked by [`full_report`], in report order.
pub fn report_maps() -> Vec<QutritMapSpec> {
    vec![
        QutritMapSpec::lambda_alpha(1.0).expect("alpha = 1"),
        QutritMapSpec::lambda_alpha_dual(1.0).expect("alpha = 1"),
        QutritMapSpec::choi_map(),
        QutritMapSpec::miller_olkiewicz(),
    ]
}

pub fn full_report(rho: &DensityMatrix) -> Result<DetectionReport> {
    let ppt = ppt_spectrum(rho)?;
    let ppt_min_eig = ppt.min();
    let npt = ppt_min_eig < NEGATIVE_EIGENVALUE_THRESHOLD;

    let map_verdicts = report_maps()
        .into_iter()
        .map(|spec| {
            let (detected, min_eigenvalue) = map_detects(&spec, rho)?;
            Ok(MapVerdict {
                map: spec.to_string(),
                spec,
                min_eigenvalue,
                detected,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let witness = WitnessOperator::from_choi(&choi_of(&QutritMapSpec::lambda_alpha(1.0)?)?)?;
    let value = witness_value(&witness, rho)?;
    let witness_values = vec![WitnessReading {
        witness: witness.label.clone(),
        value,
        detected: value < NEGATIVE_EIGENVALUE_THRESHOLD,
    }];

    let cmc = cmc_check(rho)?;
    let entangled = npt
        || cmc.violated
        || map_verdicts.iter().any(|v| v.detected)
        || witness_values.iter().any(|w| w.detected);

    Ok(DetectionReport {
        ppt_eigenvalues: ppt.eigenvalues().to_vec(),
        ppt_min_eig,
        npt,
        map_verdicts,
        witness_values,
        cmc,
        entangled,
    })
}
