//! The two boundary cases of a subproblem that the interior search
//! excludes: no punishment (`x = 0`) and full audit of the best response
//! (`p_n = 1`).

use num_traits::{One, Zero};

use super::{solve_lp, LinearProgram, LpStatus, Relation, VarBounds};
use crate::arith::Rational;
use crate::game_model::{ReducedProblem, Strategy};
use crate::stackelberg_solver::{Candidate, CandidateSource, Nudge};

/// Optimum with `x = 0`: every constraint becomes
/// `Δ_n p_n - Δ_i p_i <= -δ_i`. Variables are the other targets in
/// original order, then `p_n`, then the dummy's mass when the dummy is
/// the only other option (otherwise that mass is better spent on a real
/// target and is fixed at zero).
pub fn solve_boundary_x0(rp: &ReducedProblem) -> Option<(Candidate, Strategy)> {
    let m = rp.m();
    let dummy_var = rp.dummy_offset.is_some() && m == 0;
    let nv = m + 1 + usize::from(dummy_var);
    let zero = Rational::zero;
    let mut obj = vec![zero(); nv];
    obj[m] = rp.delta_d_star.clone();
    let mut lp = LinearProgram::new(obj);
    lp.bounds = vec![VarBounds::nonneg(); nv];
    for q in 0..m {
        let mut c = vec![zero(); nv];
        c[m] = rp.delta_star.clone();
        c[q] = -rp.deltas[q].clone();
        lp.push(c, Relation::Le, -rp.offsets[q].clone());
    }
    if let Some(d0) = &rp.dummy_offset {
        let mut c = vec![zero(); nv];
        c[m] = rp.delta_star.clone();
        lp.push(c, Relation::Le, -d0.clone());
    }
    lp.push(vec![Rational::one(); nv], Relation::Eq, Rational::one());
    let out = solve_lp(&lp).expect("boundary LP is well formed");
    if out.status != LpStatus::Optimal {
        return None;
    }
    let mut probs = vec![zero(); rp.n_real()];
    for (q, &t) in rp.others.iter().enumerate() {
        probs[t] = out.point[q].clone();
    }
    probs[rp.star] = out.point[m].clone();
    let dummy = rp.dummy_offset.as_ref().map(|_| if dummy_var { out.point[m + 1].clone() } else { zero() });
    let candidate = Candidate {
        x: zero(),
        p_n: out.point[m].clone(),
        value: out.value,
        source: CandidateSource::BoundaryX0,
        nudged: Nudge::None,
    };
    Some((candidate, Strategy { probs, dummy, x: zero() }))
}

/// Optimum with `p_n = 1`: the constraints read `x <= -Δ_n - δ_i`, and the
/// objective `Δ_D - a x` falls with `x`, so the answer is `x = 0` when
/// feasible.
pub fn solve_boundary_pn1(rp: &ReducedProblem) -> Option<(Candidate, Strategy)> {
    let zero = Rational::zero();
    let ok = rp.offsets.iter().chain(rp.dummy_offset.iter()).all(|d| &rp.delta_star + d <= zero);
    if !ok {
        return None;
    }
    let mut probs = vec![Rational::zero(); rp.n_real()];
    probs[rp.star] = Rational::one();
    let candidate = Candidate {
        x: zero.clone(),
        p_n: Rational::one(),
        value: rp.delta_d_star.clone(),
        source: CandidateSource::BoundaryPn1,
        nudged: Nudge::None,
    };
    let dummy = rp.dummy_offset.as_ref().map(|_| Rational::zero());
    Some((candidate, Strategy { probs, dummy, x: zero }))
}
