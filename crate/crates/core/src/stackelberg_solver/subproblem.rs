//! One partition of a subproblem: targets at sorted positions `>= i` have
//! tight constraints, the rest get probability zero. Summing the tight
//! constraints pins `p_n = F(x)`, leaving a one-dimensional search over x.
//!
//! Everything is scaled by `L = 2^K` so that the curves are integer
//! polynomials: with `y = Lx`, `(x + Δ_j) = (y + d_j) / L`.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::{Candidate, CandidateSource, Nudge};
use crate::arith::{self, Rational};
use crate::game_model::{ReducedProblem, Strategy};
use crate::rational_poly::int::{self, IPoly};
use crate::rational_poly::isolate::{Root01, Roots01};

/// `L · v` for a value with denominator dividing `L = 2^k`.
pub(crate) fn scale_int(v: &Rational, k: u32) -> BigInt {
    (v.numer() << k as u64) / v.denom()
}

/// A reduced problem with every quantity multiplied by `L = 2^K`.
pub(crate) struct Scaled {
    pub l: BigInt,
    /// `L Δ` and `L δ` in sorted order.
    pub d: Vec<BigInt>,
    pub e: Vec<BigInt>,
    pub dn: BigInt,
    pub dd: BigInt,
    pub aa: BigInt,
    pub e0: Option<BigInt>,
}

impl Scaled {
    pub fn new(rp: &ReducedProblem) -> Scaled {
        let k = rp.k;
        Scaled {
            l: BigInt::one() << k as u64,
            d: (0..rp.m()).map(|j| scale_int(rp.sorted_delta(j), k)).collect(),
            e: (0..rp.m()).map(|j| scale_int(rp.sorted_offset(j), k)).collect(),
            dn: scale_int(&rp.delta_star, k),
            dd: scale_int(&rp.delta_d_star, k),
            aa: scale_int(&rp.a, k),
            e0: rp.dummy_offset.as_ref().map(|v| scale_int(v, k)),
        }
    }

    /// `c + L x`.
    fn lin(&self, c: &BigInt) -> IPoly {
        vec![c.clone(), self.l.clone()]
    }
}

/// `p_n = N / D` for one partition.
#[derive(Clone, Debug)]
pub(crate) struct Curve {
    pub first_tight: usize,
    pub num: IPoly,
    pub den: IPoly,
}

/// Curves for every partition `0..m`, built from the top so that each
/// step adds one tight target:
/// `P_i = (y+d_i) P_{i+1}`, `S_i = (y+d_i) S_{i+1} + e_i P_{i+1}`,
/// `T_i = (y+d_i) T_{i+1} + P_{i+1}`, `N = P - S`, `D = P + (y+d_n) T`.
pub(crate) fn all_curves(s: &Scaled) -> Vec<Curve> {
    let m = s.d.len();
    let mut p: IPoly = vec![BigInt::one()];
    let mut sp: IPoly = Vec::new();
    let mut tp: IPoly = Vec::new();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let li = s.lin(&s.d[i]);
        let ns = int::add(&int::mul(&li, &sp), &int::scale(&p, &s.e[i]));
        let nt = int::add(&int::mul(&li, &tp), &p);
        p = int::mul(&li, &p);
        sp = ns;
        tp = nt;
        let num = int::sub(&p, &sp);
        let den = int::add(&p, &int::mul(&s.lin(&s.dn), &tp));
        out.push(Curve { first_tight: i, num, den });
    }
    out.reverse();
    out
}

/// Objective `f / g = L (Δ_D F(x) - a x)` and `h = g f' - f g'`.
pub(crate) fn objective(s: &Scaled, c: &Curve) -> (IPoly, IPoly, IPoly) {
    let f = int::sub(&int::scale(&c.num, &s.dd), &int::mul_x(&int::scale(&c.den, &s.aa)));
    let g = c.den.clone();
    let h = int::sub(&int::mul(&g, &int::derivative(&f)), &int::mul(&f, &int::derivative(&g)));
    (f, g, h)
}

/// `N (y + d_n) + e D`: zero where `p_n (x + Δ_n) + δ = 0` on the curve.
pub(crate) fn hyperbola(s: &Scaled, c: &Curve, e: &BigInt) -> IPoly {
    int::add(&int::mul(&c.num, &s.lin(&s.dn)), &int::scale(&c.den, e))
}

/// The curve evaluated at `x = u / v` with `v > 0`:
/// `nh = v^m N(u/v)`, `dh = v^m D(u/v)`, `wn = L u + d_n v`.
pub(crate) struct Point {
    pub u: BigInt,
    pub v: BigInt,
    pub nh: BigInt,
    pub dh: BigInt,
    pub wn: BigInt,
}

impl Point {
    pub fn new(s: &Scaled, c: &Curve, u: BigInt, v: BigInt) -> Point {
        let formal = (c.num.len().max(c.den.len())).max(1) - 1;
        let nh = int::eval_hom(&c.num, &u, &v, formal);
        let dh = int::eval_hom(&c.den, &u, &v, formal);
        let wn = &s.l * &u + &s.dn * &v;
        Point { u, v, nh, dh, wn }
    }

    pub fn x(&self) -> Rational {
        arith::tidy(self.u.clone(), self.v.clone())
    }

    /// Sign of `p_n (x + Δ_n) + δ` for `δ = e / L`.
    fn hyper_sign(&self, e: &BigInt) -> Sign {
        (&self.nh * &self.wn + e * &self.dh * &self.v).sign()
    }

    pub fn p_n(&self) -> Rational {
        arith::tidy(self.nh.clone(), self.dh.clone())
    }

    /// `Δ_D p_n - a x` as a (numerator, positive denominator) pair.
    pub fn value_frac(&self, s: &Scaled) -> (BigInt, BigInt) {
        let num = &s.dd * &self.nh * &self.v - &s.aa * &self.u * &self.dh;
        let den = &s.l * &self.dh * &self.v;
        (num, den)
    }

    /// Probability of the tight target at sorted position `j`.
    fn prob_frac(&self, s: &Scaled, j: usize) -> (BigInt, BigInt) {
        let num = &self.nh * &self.wn + &s.e[j] * &self.dh * &self.v;
        let den = &self.dh * (&s.l * &self.u + &s.d[j] * &self.v);
        (num, den)
    }
}

/// Exact membership of `(x, F(x))` in the partition's region.
pub(crate) fn feasible_at(s: &Scaled, c: &Curve, pt: &Point) -> bool {
    let i = c.first_tight;
    if !pt.u.is_positive() || pt.u > pt.v || !pt.dh.is_positive() {
        return false;
    }
    // 0 <= p_n < 1
    if pt.nh.is_negative() || pt.nh >= pt.dh {
        return false;
    }
    if pt.hyper_sign(&s.e[i]) == Sign::Minus {
        return false;
    }
    if i > 0 && pt.hyper_sign(&s.e[i - 1]) != Sign::Minus {
        return false;
    }
    if let Some(e0) = &s.e0 {
        if pt.hyper_sign(e0) == Sign::Plus {
            return false;
        }
    }
    true
}

/// Full strategy at a point of the curve, in original target order.
pub(crate) fn strategy_at(s: &Scaled, rp: &ReducedProblem, c: &Curve, pt: &Point) -> Strategy {
    let mut probs = vec![Rational::zero(); rp.n_real()];
    probs[rp.star] = pt.p_n();
    for j in c.first_tight..rp.m() {
        let (num, den) = pt.prob_frac(s, j);
        probs[rp.sorted_target(j)] = arith::tidy(num, den);
    }
    Strategy { probs, dummy: rp.dummy_offset.as_ref().map(|_| Rational::zero()), x: pt.x() }
}

/// Constraint polynomials of a partition and the sign each must have.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Need {
    NonNeg,
    Pos,
    Neg,
    NonPos,
}

impl Need {
    fn ok(self, s: Sign) -> bool {
        match self {
            Need::NonNeg => s != Sign::Minus,
            Need::Pos => s == Sign::Plus,
            Need::Neg => s == Sign::Minus,
            Need::NonPos => s != Sign::Plus,
        }
    }
}

struct Tracked {
    poly: IPoly,
    roots: Option<Roots01>,
    need: Option<Need>,
    source: Option<CandidateSource>,
}

impl Tracked {
    fn new(poly: IPoly, need: Option<Need>, source: Option<CandidateSource>) -> Tracked {
        let roots = (!poly.is_empty()).then(|| Roots01::new(&poly));
        Tracked { poly, roots, need, source }
    }
}

fn overlaps(r: &Root01, lo: &Rational, hi: &Rational) -> bool {
    match r {
        Root01::Exact(v) => arith::cmp_rat(v, lo) != Ordering::Less && arith::cmp_rat(v, hi) != Ordering::Greater,
        Root01::Open { .. } => {
            arith::cmp_rat(&r.hi(), lo) == Ordering::Greater && arith::cmp_rat(&r.lo(), hi) == Ordering::Less
        }
    }
}

/// Result of one partition: the best accepted candidate, if any.
pub(crate) struct PartResult {
    pub candidate: Candidate,
    pub strategy: Strategy,
}

/// Candidate search for one partition with root precision `l`.
///
/// Candidates are the roots in `(0, 1]` of `h`, of the lower hyperbola,
/// of `N` (`p_n = 0`), of the dummy boundary, and `x = 1`; each is tried
/// at `x`, then `x - 2^-l`, then `x + 2^-l`. Candidate roots whose whole
/// neighbourhood is provably outside the region are dropped before the
/// expensive refinement.
pub(crate) fn eq_opt(s: &Scaled, rp: &ReducedProblem, c: &Curve, l: u64) -> Option<PartResult> {
    let i = c.first_tight;
    let (_, _, h) = objective(s, c);
    let mut tracked = vec![
        Tracked::new(h, None, Some(CandidateSource::StationaryRoot)),
        Tracked::new(c.num.clone(), Some(Need::NonNeg), Some(CandidateSource::PnZero)),
        Tracked::new(hyperbola(s, c, &s.e[i]), Some(Need::NonNeg), Some(CandidateSource::LowerHyperbola)),
        Tracked::new(int::sub(&c.den, &c.num), Some(Need::Pos), None),
    ];
    if i > 0 {
        tracked.push(Tracked::new(hyperbola(s, c, &s.e[i - 1]), Some(Need::Neg), None));
    }
    if let Some(e0) = &s.e0 {
        tracked.push(Tracked::new(hyperbola(s, c, e0), Some(Need::NonPos), Some(CandidateSource::DummyBoundary)));
    }

    let mut best: Option<(Point, CandidateSource, Nudge)> = None;
    let consider = |pt: Point, source: CandidateSource, nudge: Nudge, best: &mut Option<(Point, CandidateSource, Nudge)>| {
        if !feasible_at(s, c, &pt) {
            return false;
        }
        let better = match best {
            None => true,
            Some((b, _, _)) => {
                let (an, ad) = pt.value_frac(s);
                let (bn, bd) = b.value_frac(s);
                match arith::cmp_frac(&an, &ad, &bn, &bd) {
                    Ordering::Greater => true,
                    Ordering::Equal => arith::cmp_frac(&pt.u, &pt.v, &b.u, &b.v) == Ordering::Less,
                    Ordering::Less => false,
                }
            }
        };
        if better {
            *best = Some((pt, source, nudge));
        }
        true
    };
    // tries x, x - 2^-l, x + 2^-l with x = u / 2^k (or an exact rational)
    let try_point = |u: BigInt, v: BigInt, source: CandidateSource, best: &mut Option<(Point, CandidateSource, Nudge)>| {
        if consider(Point::new(s, c, u.clone(), v.clone()), source, Nudge::None, best) {
            return;
        }
        // x ± 2^-l over the common denominator v·2^l
        let vv: BigInt = &v << l;
        let uu: BigInt = &u << l;
        if consider(Point::new(s, c, &uu - &v, vv.clone()), source, Nudge::Minus, best) {
            return;
        }
        consider(Point::new(s, c, &uu + &v, vv), source, Nudge::Plus, best);
    };

    for t in 0..tracked.len() {
        let Some(source) = tracked[t].source else { continue };
        let count = tracked[t].roots.as_ref().map_or(0, |r| r.len());
        for idx in 0..count {
            if !worth_refining(&mut tracked, t, idx, l) {
                continue;
            }
            let root = tracked[t].roots.as_mut().expect("roots").resolve(idx, l);
            let (u, v) = match root {
                Root01::Exact(r) => (r.numer().clone(), r.denom().clone()),
                Root01::Open { c: cc, k } => ((cc << 1) + 1, BigInt::one() << (k + 1)),
            };
            try_point(u, v, source, &mut best);
        }
    }
    try_point(BigInt::one(), BigInt::one(), CandidateSource::XOne, &mut best);

    best.map(|(pt, source, nudged)| {
        let (vn, vd) = pt.value_frac(s);
        let candidate = Candidate { x: pt.x(), p_n: pt.p_n(), value: arith::tidy(vn, vd), source, nudged };
        let strategy = strategy_at(s, rp, c, &pt);
        PartResult { candidate, strategy }
    })
}

/// False when every point within `2^-l` of root `idx` of `tracked[t]`
/// violates a constraint other than the candidate's own; such a
/// candidate can never be accepted, so it is not refined to `l` bits.
fn worth_refining(tracked: &mut [Tracked], t: usize, idx: usize, l: u64) -> bool {
    let ext = arith::dyadic(BigInt::one(), l);
    let root = tracked[t].roots.as_ref().expect("roots").roots[idx].clone();
    if matches!(root, Root01::Exact(_)) {
        return true;
    }
    let mut k = match &root {
        Root01::Open { k, .. } => *k,
        Root01::Exact(_) => unreachable!(),
    };
    // separate the neighbourhood from every other constraint root, a few
    // bits at a time, before giving up and refining fully
    let mut bits = (k + 8).min(l);
    loop {
        let r = tracked[t].roots.as_ref().expect("roots").roots[idx].clone();
        if let Root01::Exact(_) = r {
            return true;
        }
        let lo = r.lo() - &ext;
        let hi = r.hi() + &ext;
        if !lo.is_positive() || hi >= Rational::one() {
            return true;
        }
        let mut clash = false;
        for (q, other) in tracked.iter_mut().enumerate() {
            if q == t || other.need.is_none() {
                continue;
            }
            let Some(roots) = other.roots.as_mut() else { continue };
            for j in 0..roots.len() {
                if overlaps(&roots.roots[j], &lo, &hi) {
                    roots.tighten(j, bits + 2);
                    if overlaps(&roots.roots[j], &lo, &hi) {
                        clash = true;
                    }
                }
            }
        }
        if !clash {
            // every other constraint has constant sign on [lo, hi]
            let (cc, kk) = match r {
                Root01::Open { c, k } => (c, k),
                Root01::Exact(_) => unreachable!(),
            };
            let u: BigInt = (cc << 1) + 1;
            let v: BigInt = BigInt::one() << (kk + 1);
            return tracked.iter().enumerate().all(|(q, other)| {
                if q == t {
                    return true;
                }
                match other.need {
                    Some(need) if !other.poly.is_empty() => {
                        let d = other.poly.len() - 1;
                        need.ok(int::eval_hom(&other.poly, &u, &v, d).sign())
                    }
                    Some(need) => need.ok(Sign::NoSign),
                    None => true,
                }
            });
        }
        if k >= l {
            return true;
        }
        tracked[t].roots.as_mut().expect("roots").tighten(idx, bits);
        k = bits;
        bits = (bits * 2).min(l);
    }
}
