use serde::Serialize;

use crate::linalg::ComplexMatrix;
use crate::model::Alphabet;

use super::machine::{Mwkqfa, SymbolTuple};
use super::EngineError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TupleDeviation {
    pub tuple: String,
    /// `max |(U†U − I)_ij|`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WellFormednessReport {
    pub tolerance: f64,
    pub passed: bool,
    pub max_deviation: f64,
    pub tuples: Vec<TupleDeviation>,
    pub failing: Vec<String>,
}

/// Checks that every stored operator of `m` is unitary within `tolerance`.
pub fn check_well_formed(m: &Mwkqfa, tolerance: f64) -> WellFormednessReport {
    check_operator_table(m.alphabet(), m.state_count(), m.operators(), tolerance)
        .expect("machine construction guarantees square operators")
}

/// Unitarity check over a raw operator table of dimension `dim`.
///
/// A column pair `(q1, q2)` contributes `Σ_q' conj(<q'|U|q1>) <q'|U|q2>`,
/// which must be 1 on the diagonal and 0 elsewhere.
pub fn check_operator_table<'a, I>(
    alphabet: &Alphabet,
    dim: usize,
    table: I,
    tolerance: f64,
) -> Result<WellFormednessReport, EngineError>
where
    I: IntoIterator<Item = (&'a SymbolTuple, &'a ComplexMatrix)>,
{
    let mut tuples = Vec::new();
    let mut failing = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for (tuple, matrix) in table {
        let label = tuple.render(alphabet);
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(EngineError::Structural {
                tuple: label,
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: dim,
            });
        }
        let deviation = matrix.gram().max_deviation_from_identity();
        max_deviation = if deviation.is_nan() || max_deviation.is_nan() {
            f64::NAN
        } else {
            max_deviation.max(deviation)
        };
        // NaN entries must fail, hence the negated comparison.
        if !(deviation <= tolerance) {
            failing.push(label.clone());
        }
        tuples.push(TupleDeviation {
            tuple: label,
            deviation,
        });
    }
    Ok(WellFormednessReport {
        tolerance,
        passed: failing.is_empty(),
        max_deviation,
        tuples,
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ComplementarityRelation;
    use crate::quantum::machine::{MachineDraft, StateKind};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn two_state(matrix: ComplexMatrix) -> Mwkqfa {
        let rho = ComplementarityRelation::identity(Alphabet::new(["a"]).unwrap());
        let mut d = MachineDraft::new("t", rho, 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("q1", StateKind::NonHalting, &[1, 1]);
        let t = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(t, matrix);
        d.build().unwrap()
    }

    #[test]
    fn identity_passes_with_zero_deviation() {
        let report = check_well_formed(&two_state(ComplexMatrix::identity(2)), 1e-9);
        assert!(report.passed);
        assert_eq!(report.max_deviation, 0.0);
    }

    #[test]
    fn hadamard_passes() {
        let s = FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]);
        let report = check_well_formed(&two_state(h), 1e-9);
        assert!(report.passed, "{report:?}");
        assert!(report.max_deviation < 1e-15);
    }

    #[test]
    fn duplicated_rows_fail() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 0.0]]);
        let report = check_well_formed(&two_state(m), 1e-6);
        assert!(!report.passed);
        assert_eq!(report.failing, vec!["#|#".to_string()]);
        assert!(report.max_deviation >= 1.0);
    }

    #[test]
    fn nan_entries_fail() {
        let m = ComplexMatrix::from_real_rows(&[&[f64::NAN, 0.0], &[0.0, 1.0]]);
        assert!(!check_well_formed(&two_state(m), 1e-6).passed);
    }

    #[test]
    fn structural_error_for_raw_tables() {
        let alphabet = Alphabet::new(["a"]).unwrap();
        let t = SymbolTuple::from_names(&alphabet, &["a"], &["$"]).unwrap();
        let m = ComplexMatrix::zeros(2, 3);
        let err = check_operator_table(&alphabet, 2, [(&t, &m)], 1e-9).unwrap_err();
        assert_eq!(
            err,
            EngineError::Structural {
                tuple: "a|$".into(),
                rows: 2,
                cols: 3,
                expected: 2
            }
        );
    }
}
