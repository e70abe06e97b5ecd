use num_traits::{One, Signed};
use thiserror::Error;

use crate::arith::Rational;
use crate::game_model::{ReducedProblem, Strategy};
use crate::stackelberg_solver::SubSolution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// Targets (1-based) that are neither zero nor tight, with residuals.
    pub not_tight_or_zero: Vec<(usize, Rational)>,
    /// Targets (1-based) whose classification contradicts the ordering
    /// around `δ̂ = -p_n (x + Δ_n)`.
    pub out_of_order: Vec<usize>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.not_tight_or_zero.is_empty() && self.out_of_order.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("solution sits on the x = 0 or p_n = 1 boundary")]
    NotApplicable,
    #[error("sub-solution carries no strategy")]
    Empty,
}

/// Checks that every other target is either (nearly) unaudited or has a
/// (nearly) tight constraint, and that the split follows the offsets:
/// `δ_i < δ̂ - tol` forces zero, `δ_i > δ̂ + tol` forces tight.
pub fn verify_structure(rp: &ReducedProblem, sol: &SubSolution, tol: &Rational) -> Result<StructureReport, StructureError> {
    let st = sol.strategy.as_ref().ok_or(StructureError::Empty)?;
    verify_strategy(rp, st, tol)
}

pub(crate) fn verify_strategy(rp: &ReducedProblem, st: &Strategy, tol: &Rational) -> Result<StructureReport, StructureError> {
    let p_n = &st.probs[rp.star];
    if st.x <= *tol || *p_n >= Rational::one() - tol {
        return Err(StructureError::NotApplicable);
    }
    let lift = p_n * (&st.x + &rp.delta_star);
    let hat = -lift.clone();
    let mut report = StructureReport { not_tight_or_zero: Vec::new(), out_of_order: Vec::new() };
    for (pos, &t) in rp.others.iter().enumerate() {
        let p = &st.probs[t];
        let residual = (&lift + &rp.offsets[pos] - p * (&st.x + &rp.deltas[pos])).abs();
        let zero = p <= tol;
        let tight = residual <= *tol;
        if !zero && !tight {
            report.not_tight_or_zero.push((t + 1, residual));
        }
        let d = &rp.offsets[pos];
        if (*d < &hat - tol && !zero) || (*d > &hat + tol && !tight) {
            report.out_of_order.push(t + 1);
        }
    }
    Ok(report)
}
