//! The approximation scheme: for every assumed best response, enumerate the
//! tight-or-zero partitions of the other targets, solve each as a
//! one-dimensional problem in the punishment rate, and keep the best.

mod dummy;
mod exec;
mod precision;
pub(crate) mod subproblem;

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, Rational};
use crate::game_model::{derive_reduced, AuditGameInstance, ModelError, ReducedProblem, Star, Strategy};
use crate::lp_solver::{solve_boundary_pn1, solve_boundary_x0};
use crate::rational_poly::{int, Polynomial, RationalFunction};
use subproblem::{Curve, Point, Scaled};

pub use dummy::solve_dummy_star;
pub use exec::Execution;
pub use precision::{error_bounds, prec, precision_bits, PrecFamily, PrecisionBounds, GUARD_BITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateSource {
    StationaryRoot,
    LowerHyperbola,
    PnZero,
    DummyBoundary,
    XOne,
    BoundaryX0,
    BoundaryPn1,
    DummyThreshold,
}

/// Which `±2^-l` shift, if any, made the candidate feasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Nudge {
    None,
    Minus,
    Plus,
}

/// A point of one subproblem; `value = Δ_D p_n - a x` without the
/// constant `U^u_D(star)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub x: Rational,
    pub p_n: Rational,
    pub value: Rational,
    pub source: CandidateSource,
    pub nudged: Nudge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `p_n = 1`.
    Pn1,
    /// `x = 0`.
    X0,
    /// Interior partition; sorted positions `>= first_tight` are tight.
    Partition(usize),
    /// The dummy target as best response.
    DummyStar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSolution {
    pub star: Star,
    pub branch: Branch,
    /// `None` when the branch is infeasible (value `-∞`).
    pub candidate: Option<Candidate>,
    pub strategy: Option<Strategy>,
}

impl SubSolution {
    fn empty(star: Star, branch: Branch) -> SubSolution {
        SubSolution { star, branch, candidate: None, strategy: None }
    }

    pub fn value(&self) -> Option<&Rational> {
        self.candidate.as_ref().map(|c| &c.value)
    }
}

/// Everything computed for one assumed best response.
#[derive(Clone, Debug)]
pub struct StarSolution {
    pub star: Star,
    /// `U^u_D(star)`, added back when comparing stars.
    pub constant: Rational,
    pub l: u64,
    pub best: SubSolution,
    /// Every branch that was solved, in evaluation order.
    pub parts: Vec<SubSolution>,
}

impl StarSolution {
    pub fn defender_value(&self) -> Option<Rational> {
        self.best.value().map(|v| v + &self.constant)
    }
}

#[derive(Clone, Debug)]
pub struct GameSolution {
    pub best_star: Star,
    pub strategy: Strategy,
    pub defender_value: Rational,
    pub epsilon: Rational,
    pub stars: Vec<StarSolution>,
}

impl GameSolution {
    /// `(star, defender value)` per subproblem; `None` is `-∞`.
    pub fn per_star_values(&self) -> Vec<(Star, Option<Rational>)> {
        self.stars.iter().map(|s| (s.star, s.defender_value())).collect()
    }

    pub fn best(&self) -> &StarSolution {
        self.stars.iter().find(|s| s.star == self.best_star).expect("best star is present")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub family: PrecFamily,
    pub exec: Execution,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("partition index {0} is out of range")]
    BadPartition(usize),
    #[error("point is not feasible: {0}")]
    InfeasiblePoint(String),
    #[error("no best response admits a feasible strategy")]
    NoFeasibleStar,
    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn check_partition(rp: &ReducedProblem, i: usize) -> Result<(), SolveError> {
    if i < rp.m() {
        Ok(())
    } else {
        Err(SolveError::BadPartition(i))
    }
}

fn curve(rp: &ReducedProblem, i: usize) -> Result<(Scaled, Curve), SolveError> {
    check_partition(rp, i)?;
    let s = Scaled::new(rp);
    let c = subproblem::all_curves(&s).swap_remove(i);
    Ok((s, c))
}

/// `F(x)` for partition `i` over the rationals:
/// `(Π - Σ δ_j Π_{k≠j}) / (Π + (x+Δ_n) Σ Π_{k≠j})` over tight `j`.
pub fn build_f(rp: &ReducedProblem, i: usize) -> Result<RationalFunction, SolveError> {
    check_partition(rp, i)?;
    let lin = |d: &Rational| Polynomial::linear(d.clone(), Rational::one());
    let tight: Vec<usize> = (i..rp.m()).collect();
    let mut prod = Polynomial::constant(Rational::one());
    for &j in &tight {
        prod = &prod * &lin(rp.sorted_delta(j));
    }
    let mut s_sum = Polynomial::zero();
    let mut t_sum = Polynomial::zero();
    for &j in &tight {
        let mut rest = Polynomial::constant(Rational::one());
        for &q in &tight {
            if q != j {
                rest = &rest * &lin(rp.sorted_delta(q));
            }
        }
        s_sum = &s_sum + &rest.scale(rp.sorted_offset(j));
        t_sum = &t_sum + &rest;
    }
    let num = &prod - &s_sum;
    let den = &prod + &(&lin(&rp.delta_star) * &t_sum);
    Ok(RationalFunction::new(num, den))
}

/// `(f, g, h)` with `f / g = Δ_D F(x) - a x` and `h = g f' - f g'`.
pub fn build_objective(rp: &ReducedProblem, i: usize) -> Result<(Polynomial, Polynomial, Polynomial), SolveError> {
    let ff = build_f(rp, i)?;
    let x = Polynomial::linear(Rational::zero(), Rational::one());
    let f = &ff.num().scale(&rp.delta_d_star) - &(&x * &ff.den().scale(&rp.a));
    let g = ff.den().clone();
    let h = &(&g * &f.derivative()) - &(&f * &g.derivative());
    Ok((f, g, h))
}

/// The integer polynomial whose roots are the stationary candidates of
/// partition `i`, exactly as handed to root isolation (primitive form).
pub fn stationary_polynomial(rp: &ReducedProblem, i: usize) -> Result<Polynomial, SolveError> {
    let (s, c) = curve(rp, i)?;
    let (_, _, h) = subproblem::objective(&s, &c);
    if h.is_empty() {
        return Ok(Polynomial::zero());
    }
    Ok(Polynomial::from_int(&int::primitive(&h)))
}

/// Whether `(x, F(x))` lies in the region of partition `i`.
pub fn feasible(rp: &ReducedProblem, i: usize, x: &Rational) -> Result<bool, SolveError> {
    let (s, c) = curve(rp, i)?;
    let pt = Point::new(&s, &c, x.numer().clone(), x.denom().clone());
    Ok(subproblem::feasible_at(&s, &c, &pt))
}

/// Probabilities implied by `(x, p_n)` on partition `i`: tight targets get
/// `(p_n (x+Δ_n) + δ_j) / (x+Δ_j)`, the rest zero.
pub fn recover_probs(rp: &ReducedProblem, i: usize, x: &Rational, p_n: &Rational) -> Result<Strategy, SolveError> {
    check_partition(rp, i)?;
    let unit = |p: &Rational| !p.is_negative() && *p <= Rational::one();
    if !unit(p_n) || !x.is_positive() || *x > Rational::one() {
        return Err(SolveError::InfeasiblePoint(format!("x = {x}, p_n = {p_n}")));
    }
    let mut probs = vec![Rational::zero(); rp.n_real()];
    probs[rp.star] = p_n.clone();
    let lift = p_n * (x + &rp.delta_star);
    for j in i..rp.m() {
        let p = (&lift + rp.sorted_offset(j)) / (x + rp.sorted_delta(j));
        if !unit(&p) {
            return Err(SolveError::InfeasiblePoint(format!("target t{} gets {p}", rp.sorted_target(j) + 1)));
        }
        probs[rp.sorted_target(j)] = p;
    }
    Ok(Strategy { probs, dummy: rp.dummy_offset.as_ref().map(|_| Rational::zero()), x: x.clone() })
}

/// Best point of partition `i` with root precision `l`.
pub fn eq_opt(rp: &ReducedProblem, i: usize, l: u64) -> Result<SubSolution, SolveError> {
    let (s, c) = curve(rp, i)?;
    Ok(part_solution(rp, &s, &c, l))
}

fn part_solution(rp: &ReducedProblem, s: &Scaled, c: &Curve, l: u64) -> SubSolution {
    let star = Star::Target(rp.star);
    let branch = Branch::Partition(c.first_tight);
    match subproblem::eq_opt(s, rp, c, l) {
        Some(r) => SubSolution { star, branch, candidate: Some(r.candidate), strategy: Some(r.strategy) },
        None => SubSolution::empty(star, branch),
    }
}

/// Partitions that can hold a feasible point. Past the first positive
/// offset the region needs `p_n (x + Δ_n) < -δ <= 0`, and with a dummy the
/// region needs `δ_(i) >= δ_0`.
fn partition_may_be_feasible(rp: &ReducedProblem, i: usize) -> bool {
    let zero = Rational::zero();
    let di = rp.sorted_offset(i);
    let guard = i == 0 || *di <= zero || *rp.sorted_offset(i - 1) < zero;
    let dummy_ok = rp.dummy_offset.as_ref().is_none_or(|d0| di >= d0);
    guard && dummy_ok
}

fn boundary_solution(rp: &ReducedProblem, branch: Branch) -> SubSolution {
    let star = Star::Target(rp.star);
    let r = match branch {
        Branch::Pn1 => solve_boundary_pn1(rp),
        _ => solve_boundary_x0(rp),
    };
    match r {
        Some((candidate, strategy)) => SubSolution { star, branch, candidate: Some(candidate), strategy: Some(strategy) },
        None => SubSolution::empty(star, branch),
    }
}

/// Strictly better value wins, so earlier entries win ties.
fn argmax(parts: &[SubSolution]) -> SubSolution {
    let mut best: Option<&SubSolution> = None;
    for p in parts {
        let Some(v) = p.value() else { continue };
        if best.is_none_or(|b| arith::cmp_rat(v, b.value().expect("valued")) == Ordering::Greater) {
            best = Some(p);
        }
    }
    match best {
        Some(b) => b.clone(),
        None => parts[0].clone(),
    }
}

/// Approximate optimum of the subproblem for one real best response.
pub fn apx_solve(rp: &ReducedProblem, eps: &Rational, cfg: &SolverConfig) -> Result<StarSolution, SolveError> {
    if !eps.is_positive() {
        return Err(SolveError::NonPositiveEpsilon);
    }
    let l = prec(eps, rp, cfg.family);
    let s = Scaled::new(rp);
    let curves = subproblem::all_curves(&s);
    let active: Vec<&Curve> = curves.iter().filter(|c| partition_may_be_feasible(rp, c.first_tight)).collect();
    let mut parts = vec![boundary_solution(rp, Branch::Pn1), boundary_solution(rp, Branch::X0)];
    parts.extend(cfg.exec.map(&active, |c| part_solution(rp, &s, c, l)));
    let best = argmax(&parts);
    Ok(StarSolution { star: Star::Target(rp.star), constant: rp.uu_d_star.clone(), l, best, parts })
}

/// Attacker utility of target `i` (1-based label 0 is the dummy).
fn attacker_utility(inst: &AuditGameInstance, st: &Strategy, star: Star) -> Rational {
    match star {
        Star::Dummy => Rational::zero(),
        Star::Target(i) => {
            let t = &inst.targets[i];
            &t.uu_a - &st.probs[i] * (&st.x + &t.uu_a - &t.ua_a)
        }
    }
}

/// Exact check that `st` is a valid strategy against which `star` is a
/// best response.
pub fn is_best_response(inst: &AuditGameInstance, st: &Strategy, star: Star) -> bool {
    if !st.is_valid() || st.probs.len() != inst.n() || st.dummy.is_some() != inst.has_dummy {
        return false;
    }
    let us = attacker_utility(inst, st, star);
    inst.stars().into_iter().all(|o| attacker_utility(inst, st, o) <= us)
}

/// Defender utility of strategy `st` when the attacker plays `star`.
pub fn defender_utility(inst: &AuditGameInstance, st: &Strategy, star: Star) -> Rational {
    let cost = &inst.a * &st.x;
    match star {
        Star::Dummy => -cost,
        Star::Target(i) => {
            let t = &inst.targets[i];
            &t.uu_d + &st.probs[i] * (&t.ua_d - &t.uu_d) - cost
        }
    }
}

/// Additively `eps`-optimal commitment over all best responses.
pub fn solve_game(inst: &AuditGameInstance, eps: &Rational, cfg: &SolverConfig) -> Result<GameSolution, SolveError> {
    if !eps.is_positive() {
        return Err(SolveError::NonPositiveEpsilon);
    }
    let stars = inst.stars();
    let results = cfg.exec.map(&stars, |&star| match star {
        Star::Dummy => Ok(solve_dummy_star(inst, eps, cfg)),
        Star::Target(i) => apx_solve(&derive_reduced(inst, i)?, eps, cfg),
    });
    let stars: Vec<StarSolution> = results.into_iter().collect::<Result<_, SolveError>>()?;
    let mut best: Option<(usize, Rational)> = None;
    for (idx, s) in stars.iter().enumerate() {
        if let Some(v) = s.defender_value() {
            if best.as_ref().is_none_or(|(_, b)| arith::cmp_rat(&v, b) == Ordering::Greater) {
                best = Some((idx, v));
            }
        }
    }
    let (idx, defender_value) = best.ok_or(SolveError::NoFeasibleStar)?;
    let winner = &stars[idx];
    let strategy = winner.best.strategy.clone().ok_or_else(|| SolveError::InvariantBreach("valued branch without strategy".into()))?;
    if !is_best_response(inst, &strategy, winner.star) {
        return Err(SolveError::InvariantBreach(format!("strategy for {} violates the best-response constraints", winner.star)));
    }
    if !arith::rat_eq(&defender_utility(inst, &strategy, winner.star), &defender_value) {
        return Err(SolveError::InvariantBreach("reported value differs from the strategy's utility".into()));
    }
    Ok(GameSolution { best_star: winner.star, strategy, defender_value, epsilon: eps.clone(), stars })
}
