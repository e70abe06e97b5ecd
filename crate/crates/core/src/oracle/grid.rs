use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, Rational};
use crate::game_model::{AuditGameInstance, Star, Strategy};
use crate::lp_solver::{LinearProgram, Relation, VarBounds};
use crate::stackelberg_solver::Execution;

/// Best grid point for one assumed best response.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub star: Star,
    /// `Δ_D p_n - a x` at the best grid point (`None`: no feasible point).
    pub value: Option<Rational>,
    /// `value + U^u_D(star)`.
    pub defender_value: Option<Rational>,
    pub strategy: Option<Strategy>,
    pub grid_step: Rational,
    /// `(a + Δ_D L) · step`: how far the grid maximum can sit below the
    /// true optimum of the subproblem.
    pub error_bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameOracleReport {
    pub best_star: Option<Star>,
    pub defender_value: Option<Rational>,
    pub strategy: Option<Strategy>,
    pub grid_step: Rational,
    pub error_bound: Rational,
    pub stars: Vec<OracleReport>,
}

/// The subproblem for `star` with `x` fixed, as an explicit LP over
/// `(p_1..p_n[, p_0])`.
pub fn fixed_x_lp(inst: &AuditGameInstance, star: Star, x: &Rational) -> LinearProgram {
    let n = inst.n();
    let nv = n + usize::from(inst.has_dummy);
    let zero = Rational::zero;
    let mut obj = vec![zero(); nv];
    if let Star::Target(s) = star {
        obj[s] = &inst.targets[s].ua_d - &inst.targets[s].uu_d;
    }
    let mut lp = LinearProgram::new(obj);
    lp.bounds = vec![VarBounds::between(zero(), Rational::one()); nv];
    // attacker utility U(i) = uu_a(i) - p_i (x + Δ_i) as (coeffs, constant)
    let util = |i: usize| {
        let t = &inst.targets[i];
        let mut c = vec![zero(); nv];
        c[i] = -(x + &t.uu_a - &t.ua_a);
        (c, t.uu_a.clone())
    };
    let star_util = match star {
        Star::Target(s) => util(s),
        Star::Dummy => (vec![zero(); nv], zero()),
    };
    // U(i) <= U(star): (c_i - c_s)·p <= k_s - k_i
    let mut push = |(ci, ki): (Vec<Rational>, Rational)| {
        let coeffs: Vec<Rational> = ci.iter().zip(&star_util.0).map(|(a, b)| a - b).collect();
        lp.push(coeffs, Relation::Le, &star_util.1 - ki);
    };
    for i in 0..n {
        if star != Star::Target(i) {
            push(util(i));
        }
    }
    if inst.has_dummy && star != Star::Dummy {
        push((vec![zero(); nv], zero()));
    }
    lp.push(vec![Rational::one(); nv], Relation::Eq, Rational::one());
    lp
}

/// Exact optimum of the subproblem at a fixed `x` by water-filling:
/// `p_n` is raised until the minimal masses `max(0, (p_n(x+Δ_n)+δ_i)/(x+Δ_i))`
/// exhaust the budget. Returns the constant-free value and the strategy.
pub fn fixed_x_optimum(inst: &AuditGameInstance, star: Star, x: &Rational) -> Option<(Rational, Strategy)> {
    let one = Rational::one();
    let zero = Rational::zero();
    let n = inst.n();
    let Star::Target(s) = star else {
        let mut probs = vec![zero.clone(); n];
        for (i, t) in inst.targets.iter().enumerate() {
            if t.uu_a.is_positive() {
                probs[i] = &t.uu_a / (x + &t.uu_a - &t.ua_a);
            }
        }
        let rest = &one - probs.iter().sum::<Rational>();
        if rest.is_negative() {
            return None;
        }
        probs[0] += rest;
        return Some((-(&inst.a * x), Strategy { probs, dummy: Some(zero), x: x.clone() }));
    };
    let st = &inst.targets[s];
    let w = x + &st.uu_a - &st.ua_a;
    let mut cap = one.clone();
    if inst.has_dummy {
        let c0 = &st.uu_a / &w;
        if c0.is_negative() {
            return None;
        }
        cap = cap.min(c0);
    }
    // req_i(p) = max(0, a_i p + b_i), active for p > t_i
    let terms: Vec<(usize, Rational, Rational, Rational)> = (0..n)
        .filter(|&i| i != s)
        .map(|i| {
            let t = &inst.targets[i];
            let c = x + &t.uu_a - &t.ua_a;
            let delta = &t.uu_a - &st.uu_a;
            (i, &w / &c, &delta / &c, -delta / &w)
        })
        .collect();
    let g = |p: &Rational| -> Rational {
        p + terms.iter().map(|(_, a, b, _)| (a * p + b).max(Rational::zero())).sum::<Rational>()
    };
    if g(&zero) > one {
        return None;
    }
    let p = if g(&cap) <= one {
        cap.clone()
    } else {
        let mut bps: Vec<Rational> = terms.iter().map(|t| t.3.clone()).filter(|t| t.is_positive() && *t < cap).collect();
        bps.sort();
        bps.push(cap.clone());
        let mut s0 = zero.clone();
        let mut found = None;
        for s1 in bps {
            if g(&s1) > one {
                let (sa, sb) = terms
                    .iter()
                    .filter(|t| t.3 <= s0)
                    .fold((one.clone(), zero.clone()), |(sa, sb), t| (sa + &t.1, sb + &t.2));
                found = Some((&one - sb) / sa);
                break;
            }
            s0 = s1;
        }
        found.expect("budget crossing lies below the cap")
    };
    let mut probs = vec![zero.clone(); n];
    probs[s] = p.clone();
    for (i, a, b, _) in &terms {
        probs[*i] = (a * &p + b).max(zero.clone());
    }
    let rest = &one - probs.iter().sum::<Rational>();
    let mut dummy = None;
    if inst.has_dummy {
        dummy = Some(rest);
    } else if let Some(first) = terms.first() {
        probs[first.0] += rest;
    }
    let value = (&st.ua_d - &st.uu_d) * &p - &inst.a * x;
    Some((value, Strategy { probs, dummy, x: x.clone() }))
}

/// Float twin of [`fixed_x_optimum`] used only to screen grid points.
struct FloatStar {
    dd: f64,
    a: f64,
    dn: f64,
    u0: Option<f64>,
    terms: Vec<(f64, f64)>,
    dummy_star: Option<Vec<(f64, f64)>>,
}

impl FloatStar {
    fn new(inst: &AuditGameInstance, star: Star) -> FloatStar {
        let f = arith::to_f64;
        let a = f(&inst.a);
        match star {
            Star::Dummy => FloatStar {
                dd: 0.0,
                a,
                dn: 0.0,
                u0: None,
                terms: Vec::new(),
                dummy_star: Some(
                    inst.targets
                        .iter()
                        .filter(|t| t.uu_a.is_positive())
                        .map(|t| (f(&t.uu_a), f(&(&t.uu_a - &t.ua_a))))
                        .collect(),
                ),
            },
            Star::Target(s) => {
                let st = &inst.targets[s];
                FloatStar {
                    dd: f(&(&st.ua_d - &st.uu_d)),
                    a,
                    dn: f(&(&st.uu_a - &st.ua_a)),
                    u0: inst.has_dummy.then(|| f(&st.uu_a)),
                    terms: (0..inst.n())
                        .filter(|&i| i != s)
                        .map(|i| {
                            let t = &inst.targets[i];
                            (f(&(&t.uu_a - &t.ua_a)), f(&(&t.uu_a - &st.uu_a)))
                        })
                        .collect(),
                    dummy_star: None,
                }
            }
        }
    }

    fn value(&self, x: f64) -> Option<f64> {
        const SLACK: f64 = 1e-9;
        if let Some(ts) = &self.dummy_star {
            let s: f64 = ts.iter().map(|(u, d)| u / (x + d)).sum();
            return (s <= 1.0 + SLACK).then_some(-self.a * x);
        }
        let w = x + self.dn;
        let mut cap = 1.0f64;
        if let Some(u0) = self.u0 {
            if u0 < -SLACK {
                return None;
            }
            cap = cap.min(u0.max(0.0) / w);
        }
        let g = |p: f64| p + self.terms.iter().map(|(d, del)| ((p * w + del) / (x + d)).max(0.0)).sum::<f64>();
        if g(0.0) > 1.0 + SLACK {
            return None;
        }
        let p = if g(cap) <= 1.0 {
            cap
        } else {
            // g is increasing and piecewise linear: bisect to full precision
            let (mut lo, mut hi) = (0.0f64, cap);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if g(mid) <= 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        Some(self.dd * p - self.a * x)
    }
}

/// `L`: a bound on `|d p_n / d x|` of the fixed-x optimum on `[0, 1]`.
pub fn lipschitz_bound(inst: &AuditGameInstance, star: Star) -> Rational {
    let Star::Target(s) = star else { return Rational::zero() };
    let st = &inst.targets[s];
    let dn = &st.uu_a - &st.ua_a;
    let sum: Rational = (0..inst.n())
        .filter(|&i| i != s)
        .map(|i| {
            let t = &inst.targets[i];
            let d = &t.uu_a - &t.ua_a;
            ((&d - &dn).abs() + (&t.uu_a - &st.uu_a).abs()) / (&d * &d)
        })
        .sum();
    if inst.has_dummy {
        sum.max(st.uu_a.abs() / (&dn * &dn))
    } else {
        sum
    }
}

fn grid(step: &Rational) -> Vec<Rational> {
    assert!(step.is_positive() && *step <= Rational::one(), "grid step must lie in (0, 1]");
    let count = arith::floor_rat(&step.recip()).to_usize().expect("grid too large");
    let mut xs: Vec<Rational> = (0..=count).map(|k| step * Rational::from_integer(k.into())).collect();
    if xs.last().is_some_and(|x| !x.is_one()) {
        xs.push(Rational::one());
    }
    xs
}

/// Naive method for one best response: the exact fixed-x optimum at every
/// grid point `0, step, 2 step, ..., 1`, keeping the best (lowest x on
/// ties). Points are screened in floating point and only near-maximal
/// ones are evaluated exactly.
pub fn grid_oracle(inst: &AuditGameInstance, star: Star, step: &Rational, exec: Execution) -> OracleReport {
    let xs = grid(step);
    let fs = FloatStar::new(inst, star);
    let approx: Vec<Option<f64>> = exec.map(&xs, |x| fs.value(arith::to_f64(x)));
    let top = approx.iter().flatten().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let tol = 1e-9 * top.abs().max(1.0);
    let near: Vec<usize> = (0..xs.len()).filter(|&k| approx[k].is_some_and(|v| v >= top - tol)).collect();
    let mut best = exact_best(inst, star, &xs, &near, exec);
    // the minimal masses only shrink as x grows, so x = 1 being
    // infeasible rules out the whole grid
    if best.is_none() && fixed_x_optimum(inst, star, xs.last().expect("nonempty grid")).is_some() {
        let all: Vec<usize> = (0..xs.len()).collect();
        best = exact_best(inst, star, &xs, &all, exec);
    }
    let constant = match star {
        Star::Target(s) => inst.targets[s].uu_d.clone(),
        Star::Dummy => Rational::zero(),
    };
    let delta_d = match star {
        Star::Target(s) => &inst.targets[s].ua_d - &inst.targets[s].uu_d,
        Star::Dummy => Rational::zero(),
    };
    let error_bound = (&inst.a + delta_d * lipschitz_bound(inst, star)) * step;
    let (value, strategy) = match best {
        Some((v, st)) => (Some(v), Some(st)),
        None => (None, None),
    };
    OracleReport {
        star,
        defender_value: value.as_ref().map(|v| v + &constant),
        value,
        strategy,
        grid_step: step.clone(),
        error_bound,
    }
}

fn exact_best(
    inst: &AuditGameInstance,
    star: Star,
    xs: &[Rational],
    idx: &[usize],
    exec: Execution,
) -> Option<(Rational, Strategy)> {
    let vals = exec.map(idx, |&k| fixed_x_optimum(inst, star, &xs[k]));
    let mut best: Option<(Rational, Strategy)> = None;
    for v in vals.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| arith::cmp_rat(&v.0, &b.0) == Ordering::Greater) {
            best = Some(v);
        }
    }
    best
}

/// Naive method over every best response; ties go to the lowest star.
pub fn game_oracle(inst: &AuditGameInstance, step: &Rational, exec: Execution) -> GameOracleReport {
    let stars: Vec<OracleReport> = inst.stars().into_iter().map(|s| grid_oracle(inst, s, step, exec)).collect();
    let mut best: Option<&OracleReport> = None;
    for r in &stars {
        let Some(v) = &r.defender_value else { continue };
        if best.is_none_or(|b| v > b.defender_value.as_ref().expect("valued")) {
            best = Some(r);
        }
    }
    let error_bound = stars.iter().map(|r| r.error_bound.clone()).max().unwrap_or_else(Rational::zero);
    GameOracleReport {
        best_star: best.map(|b| b.star),
        defender_value: best.and_then(|b| b.defender_value.clone()),
        strategy: best.and_then(|b| b.strategy.clone()),
        grid_step: step.clone(),
        error_bound,
        stars,
    }
}
