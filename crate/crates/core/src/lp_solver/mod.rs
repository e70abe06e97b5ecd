//! Exact linear programming over the rationals.
//!
//! A two-phase primal simplex with Bland's rule on an integer tableau kept
//! fraction-free by Bareiss pivoting: every entry is the true tableau value
//! times the current basis determinant, so no gcd work is ever needed.

mod boundary;
mod simplex;

use num_traits::Zero;
use thiserror::Error;

use crate::arith::Rational;

pub use boundary::{solve_boundary_pn1, solve_boundary_x0};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    /// Strict `<`; accepted only by [`find_feasible`].
    Lt,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Constraint {
        Constraint { coeffs, rel, rhs }
    }

    fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let l = self.lhs(x);
        match self.rel {
            Relation::Le => l <= self.rhs,
            Relation::Eq => l == self.rhs,
            Relation::Lt => l < self.rhs,
        }
    }
}

/// Per-variable bounds; `None` is unbounded on that side.
#[derive(Clone, Debug, Default)]
pub struct VarBounds {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl VarBounds {
    pub fn between(lo: Rational, hi: Rational) -> VarBounds {
        VarBounds { lo: Some(lo), hi: Some(hi) }
    }

    pub fn nonneg() -> VarBounds {
        VarBounds { lo: Some(Rational::zero()), hi: None }
    }

    pub fn free() -> VarBounds {
        VarBounds { lo: None, hi: None }
    }

    fn contains(&self, v: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= v) && self.hi.as_ref().is_none_or(|h| v <= h)
    }
}

/// Maximise `objective · x` subject to the constraints and bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBounds>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> LinearProgram {
        let n = objective.len();
        LinearProgram { objective, constraints: Vec::new(), bounds: vec![VarBounds::free(); n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, rel, rhs));
    }

    /// True when `x` satisfies every constraint and bound exactly.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.constraints.iter().all(|c| c.holds(x))
            && self.bounds.iter().zip(x).all(|(b, v)| b.contains(v))
    }

    pub fn value_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    fn check(&self, allow_strict: bool) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(LpError::Malformed(format!("{} bounds for {n} variables", self.bounds.len())));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::Malformed(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
            if c.rel == Relation::Lt && !allow_strict {
                return Err(LpError::StrictConstraint(i));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(h)) = (&b.lo, &b.hi) {
                if l > h {
                    return Err(LpError::Malformed(format!("variable {j} has lower bound above upper")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Optimal basic solution; empty unless `status` is `Optimal`.
    pub point: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Malformed(String),
    #[error("constraint {0} is strict; use find_feasible")]
    StrictConstraint(usize),
}

/// Exact optimum of a linear program with non-strict constraints.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    lp.check(false)?;
    Ok(simplex::solve(lp))
}

/// A point satisfying every constraint, strict ones included, or `None`.
///
/// Each strict row `a·x < b` becomes `a·x + t <= b` with one shared
/// `t ∈ [0, 1]` that is maximised; the system is feasible iff `t > 0`.
pub fn find_feasible(lp: &LinearProgram) -> Result<Option<Vec<Rational>>, LpError> {
    lp.check(true)?;
    let n = lp.num_vars();
    let strict = lp.constraints.iter().any(|c| c.rel == Relation::Lt);
    let mut aux = LinearProgram::new(vec![Rational::zero(); n + 1]);
    aux.bounds = lp.bounds.clone();
    aux.bounds.push(VarBounds::between(Rational::zero(), Rational::from_integer(1.into())));
    if strict {
        aux.objective[n] = Rational::from_integer(1.into());
    }
    for c in &lp.constraints {
        let mut coeffs = c.coeffs.clone();
        let rel = match c.rel {
            Relation::Lt => {
                coeffs.push(Rational::from_integer(1.into()));
                Relation::Le
            }
            r => {
                coeffs.push(Rational::zero());
                r
            }
        };
        aux.push(coeffs, rel, c.rhs.clone());
    }
    let out = simplex::solve(&aux);
    match out.status {
        LpStatus::Optimal if !strict || out.value > Rational::zero() => {
            let mut p = out.point;
            p.truncate(n);
            Ok(Some(p))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests;
