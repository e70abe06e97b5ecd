//! The dummy target as the attacker's best response. The defender gains
//! nothing from the dummy, so the objective is `-a x`: the smallest
//! punishment rate that deters every real target wins.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::subproblem::scale_int;
use super::{Branch, Candidate, CandidateSource, Nudge, SolverConfig, StarSolution, SubSolution};
use crate::arith::{self, Rational};
use crate::game_model::{AuditGameInstance, Star, Strategy};
use crate::rational_poly::int::{self, IPoly};
use crate::rational_poly::isolate::{Root01, Roots01};

/// `Σ U⁺_i / (x + Δ_i)` at `x`, over targets with `U^u_A > 0`.
fn pressure(pos: &[(usize, Rational, Rational)], x: &Rational) -> Rational {
    pos.iter().map(|(_, u, d)| u / (x + d)).sum()
}

/// Minimal `x ∈ [0, 1]` with `Σ U⁺_i / (x + Δ_i) <= 1`, rounded up to
/// `2^-l` when irrational; then `p_i = U⁺_i / (x + Δ_i)` and the leftover
/// mass goes to the lowest-index target so that the dummy gets none.
pub fn solve_dummy_star(inst: &AuditGameInstance, eps: &Rational, cfg: &SolverConfig) -> StarSolution {
    let family = cfg.family;
    let l = super::precision_bits(&Rational::zero(), &Rational::zero(), &inst.a, eps, family.l_floor(inst.size(), inst.k));
    let pos: Vec<(usize, Rational, Rational)> = inst
        .targets
        .iter()
        .enumerate()
        .filter(|(_, t)| t.uu_a.is_positive())
        .map(|(i, t)| (i, t.uu_a.clone(), &t.uu_a - &t.ua_a))
        .collect();
    let one = Rational::one();
    let empty = || StarSolution {
        star: Star::Dummy,
        constant: Rational::zero(),
        l,
        best: SubSolution::empty(Star::Dummy, Branch::DummyStar),
        parts: vec![SubSolution::empty(Star::Dummy, Branch::DummyStar)],
    };
    let x = if pressure(&pos, &Rational::zero()) <= one {
        Rational::zero()
    } else if pressure(&pos, &one) > one {
        return empty();
    } else {
        threshold(inst.k, &pos, l)
    };
    let mut probs = vec![Rational::zero(); inst.n()];
    for (i, u, d) in &pos {
        probs[*i] = u / (&x + d);
    }
    let rest = &one - probs.iter().sum::<Rational>();
    probs[0] += rest;
    let strategy = Strategy { probs, dummy: Some(Rational::zero()), x: x.clone() };
    let candidate = Candidate {
        x: x.clone(),
        p_n: Rational::zero(),
        value: -(&inst.a * &x),
        source: CandidateSource::DummyThreshold,
        nudged: Nudge::None,
    };
    let best = SubSolution { star: Star::Dummy, branch: Branch::DummyStar, candidate: Some(candidate), strategy: Some(strategy) };
    StarSolution { star: Star::Dummy, constant: Rational::zero(), l, best: best.clone(), parts: vec![best] }
}

/// The unique root in `(0, 1]` of `Π(y + d_j) - Σ u_i Π_{j≠i}(y + d_j)`
/// (scaled by `L = 2^K`, `y = Lx`), or the upper end of its `2^-l`
/// isolating interval.
fn threshold(k: u32, pos: &[(usize, Rational, Rational)], l: u64) -> Rational {
    let lscale = BigInt::one() << k as u64;
    let lin = |d: &Rational| -> IPoly { vec![scale_int(d, k), lscale.clone()] };
    let mut prod: IPoly = vec![BigInt::one()];
    let mut sum: IPoly = Vec::new();
    for (_, u, d) in pos {
        let li = lin(d);
        sum = int::add(&int::mul(&sum, &li), &int::scale(&prod, &scale_int(u, k)));
        prod = int::mul(&prod, &li);
    }
    let q = int::sub(&prod, &sum);
    let mut roots = Roots01::new(&q);
    assert_eq!(roots.len(), 1, "deterrence threshold is unique in (0, 1]");
    match roots.resolve(0, l) {
        Root01::Exact(r) => r,
        Root01::Open { c, k } => arith::dyadic(c + 1, k),
    }
}
