//! Exact univariate polynomials over the rationals and their real roots.

pub(crate) mod int;
pub(crate) mod isolate;
pub(crate) mod modp;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, Rational};
use isolate::{Root01, Roots01};

pub use sturm::sturm_count;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("constant term is zero after removing factors of x")]
    ZeroConstantTerm,
    #[error("interval is empty: lower end must be below upper end")]
    EmptyInterval,
    #[error("precision must be at least one bit")]
    ZeroPrecision,
}

/// Dense polynomial with ascending exact coefficients; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| arith::int(c)).collect())
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Rational, c1: Rational) -> Polynomial {
        Polynomial::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        derivative(self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        horner_eval(self, x)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let t = &r[top] / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[top - dd + j] -= &t * c;
            }
            q[top - dd] = t;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Polynomial::new(q), Polynomial::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() && other.is_zero() {
            return Polynomial::zero();
        }
        let g = int::gcd(&self.to_int(), &other.to_int());
        Polynomial::new(int::to_rational(&g)).monic()
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic square-free part: same distinct roots, each simple.
    pub fn square_free(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let sq = int::square_free(&self.to_int());
        Polynomial::new(int::to_rational(&sq)).monic()
    }

    /// Largest bit length among the coefficients of the primitive integer
    /// polynomial proportional to `self`.
    pub fn integer_coefficient_bits(&self) -> u64 {
        int::max_bits(&int::primitive(&self.to_int()))
    }

    pub(crate) fn to_int(&self) -> int::IPoly {
        int::from_rational(&self.coeffs)
    }

    pub(crate) fn from_int(p: &[BigInt]) -> Polynomial {
        Polynomial::new(int::to_rational(p))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", arith::format_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", arith::format_rational(&a))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => Rational::zero(),
                })
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// `f / g` with `gcd(f, g) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Cancels the common factor of `num` and `den`.
    pub fn new(num: Polynomial, den: Polynomial) -> RationalFunction {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::constant(Rational::one()) };
        }
        let g = num.gcd(&den);
        if g.degree().unwrap_or(0) == 0 {
            return RationalFunction { num, den };
        }
        RationalFunction { num: num.div_rem(&g).0, den: den.div_rem(&g).0 }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

/// `p(x0)` by Horner's rule.
pub fn horner_eval(p: &Polynomial, x0: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.coeffs.iter().rev() {
        acc = acc * x0 + c;
    }
    acc
}

pub fn derivative(p: &Polynomial) -> Polynomial {
    Polynomial::new(
        p.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// `1 / (1 + max |a_i / a_0|)`: every nonzero root is larger in magnitude.
pub fn cauchy_root_lower_bound(p: &Polynomial) -> Result<Rational, PolyError> {
    let start = p.coeffs.iter().position(|c| !c.is_zero()).ok_or(PolyError::ZeroConstantTerm)?;
    let q = &p.coeffs[start..];
    let a0 = q[0].abs();
    let m = q[1..].iter().map(|c| c.abs() / &a0).fold(Rational::zero(), |m, v| if v > m { v } else { m });
    Ok((Rational::one() + m).recip())
}

/// A real root isolated to a small interval, or known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub value: Rational,
    pub exact: bool,
}

impl IsolatedRoot {
    pub(crate) fn from_root(r: &Root01) -> IsolatedRoot {
        match r {
            Root01::Exact(v) => IsolatedRoot { lo: v.clone(), hi: v.clone(), value: v.clone(), exact: true },
            Root01::Open { c, k } => {
                let value = arith::dyadic((c << 1) + 1, k + 1);
                IsolatedRoot { lo: r.lo(), hi: r.hi(), value, exact: false }
            }
        }
    }
}

/// Every distinct real root of `p` in `(0, 1]`, ascending, each isolated to
/// width at most `2^-l`. Rational roots are returned exactly.
pub fn isolate_real_roots(p: &Polynomial, l: u64) -> Result<Vec<IsolatedRoot>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if l == 0 {
        return Err(PolyError::ZeroPrecision);
    }
    let mut set = Roots01::new(&p.to_int());
    let mut out = Vec::with_capacity(set.len());
    for i in 0..set.len() {
        let r = set.resolve(i, l);
        let r = match r {
            Root01::Open { c, k } => settle_endpoints(&set, c, k),
            exact => exact,
        };
        out.push(IsolatedRoot::from_root(&r));
    }
    Ok(out)
}

/// Moves interval endpoints off roots of the square-free part. Such
/// endpoints only arise next to dyadic roots found during isolation.
fn settle_endpoints(set: &Roots01, mut c: BigInt, mut k: u64) -> Root01 {
    let on_root = |c: &BigInt, k: u64| int::eval_dyadic(&set.sq, c, k).is_zero();
    if !on_root(&c, k) && !on_root(&(&c + 1), k) {
        return Root01::Open { c, k };
    }
    let sa = int::eval_dyadic(&set.defl, &c, k).sign();
    loop {
        let m: BigInt = (&c << 1) + 1;
        let vm = int::eval_dyadic(&set.defl, &m, k + 1);
        if vm.is_zero() {
            return Root01::Exact(arith::dyadic(m, k + 1));
        }
        c = if vm.sign() == sa { m } else { c << 1 };
        k += 1;
        if !on_root(&c, k) && !on_root(&(&c + 1), k) {
            return Root01::Open { c, k };
        }
    }
}

/// All rational roots of a nonzero polynomial, ascending.
///
/// Real roots are isolated after scaling by a power-of-two Cauchy bound,
/// then each is refined until at most one fraction with an admissible
/// denominator fits, which is tested exactly.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let ip = int::primitive(&p.to_int());
    let (q, zeros) = int::strip_x(&ip);
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(Rational::zero());
    }
    if q.len() > 1 {
        let sq = int::square_free(&q);
        if !modp::no_rational_roots(&sq) {
            // |root| < 1 + max |a_i / a_d| <= 2^shift
            let lead = int::lc(&sq).abs();
            let mut m = BigInt::zero();
            for c in &sq[..sq.len() - 1] {
                let r = c.abs() / &lead + 1;
                if r > m {
                    m = r;
                }
            }
            let shift = (m + 1u32).bits();
            for negate in [true, false] {
                let base = if negate { int::negate_arg(&sq) } else { sq.clone() };
                let scaled = int::scale_arg_pow2(&base, shift);
                let mut set = Roots01::new(&scaled);
                for i in 0..set.len() {
                    if let Root01::Exact(t) = set.resolve(i, 1) {
                        let x = t * Rational::from_integer(BigInt::one() << shift);
                        out.push(if negate { -x } else { x });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn poly(c: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(c.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn arithmetic_examples() {
        let a = Polynomial::from_i64(&[-1, 1]);
        let b = Polynomial::from_i64(&[-2, 1]);
        assert_eq!(&a * &b, Polynomial::from_i64(&[2, -3, 1]));
        let g = Polynomial::from_i64(&[-1, 0, 1]).gcd(&a);
        assert_eq!(g, a);
        assert_eq!(Polynomial::from_i64(&[1, -2, 1]).square_free(), a);
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn horner_and_derivative() {
        let p = Polynomial::from_i64(&[1, -1, 0, 2]);
        assert_eq!(horner_eval(&p, &ratio(1, 2)), ratio(3, 4));
        assert_eq!(horner_eval(&p, &int(0)), int(1));
        assert_eq!(horner_eval(&Polynomial::from_i64(&[2, -3, 1]), &int(1)), int(0));
        assert_eq!(Polynomial::from_i64(&[2, -3, 1]).derivative(), Polynomial::from_i64(&[-3, 2]));
        assert!(Polynomial::from_i64(&[5]).derivative().is_zero());
        assert_eq!(poly(&[(1, 1), (1, 2), (-2, 1)]).derivative(), poly(&[(1, 2), (-4, 1)]));
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_root_lower_bound(&Polynomial::from_i64(&[2, -3, 1])).unwrap(), ratio(2, 5));
        assert_eq!(cauchy_root_lower_bound(&poly(&[(-1, 2), (1, 1)])).unwrap(), ratio(1, 3));
        assert_eq!(cauchy_root_lower_bound(&poly(&[(5, 4), (6, 1), (4, 1)])).unwrap(), ratio(5, 29));
        assert_eq!(cauchy_root_lower_bound(&Polynomial::zero()), Err(PolyError::ZeroConstantTerm));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&Polynomial::from_i64(&[1, -6, 8])), vec![ratio(1, 4), ratio(1, 2)]);
        assert!(rational_roots(&Polynomial::from_i64(&[-2, 0, 1])).is_empty());
        assert_eq!(rational_roots(&Polynomial::from_i64(&[0, -1, 0, 1])), vec![int(-1), int(0), int(1)]);
        assert_eq!(rational_roots(&Polynomial::from_i64(&[3, 7])), vec![ratio(-3, 7)]);
        assert_eq!(rational_roots(&Polynomial::from_i64(&[-50, 1])), vec![int(50)]);
    }

    #[test]
    fn isolation_examples() {
        let r = isolate_real_roots(&Polynomial::from_i64(&[1, -6, 8]), 32).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.exact));
        assert_eq!(r[0].value, ratio(1, 4));
        assert_eq!(r[1].value, ratio(1, 2));
        let none = isolate_real_roots(&poly(&[(-5, 4), (-6, 1), (-4, 1)]), 32).unwrap();
        assert!(none.is_empty());
        let s = isolate_real_roots(&poly(&[(-1, 2), (0, 1), (1, 1)]), 16).unwrap();
        assert_eq!(s.len(), 1);
        assert!(!s[0].exact);
        assert!(&s[0].hi - &s[0].lo <= ratio(1, 1 << 16));
        let approx = arith::to_f64(&s[0].value);
        assert!((approx - 0.5f64.sqrt()).abs() < 2f64.powi(-16));
        assert_eq!(isolate_real_roots(&Polynomial::zero(), 8), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn rational_function_reduces() {
        let num = Polynomial::from_i64(&[-1, 0, 1]);
        let den = Polynomial::from_i64(&[-1, 1]);
        let f = RationalFunction::new(num, den);
        assert_eq!(f.num(), &Polynomial::from_i64(&[1, 1]));
        assert_eq!(f.den(), &Polynomial::from_i64(&[1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// A real root known in closed form: `p/q` or `sign · sqrt(c)` for a
        /// non-square integer `c`.
        #[derive(Clone, Debug)]
        enum Known {
            Rat(Rational),
            Surd(i64, u64),
        }

        impl Known {
            /// Exact comparison of the root with a rational.
            fn le(&self, r: &Rational) -> bool {
                match self {
                    Known::Rat(v) => v <= r,
                    Known::Surd(sign, c) => {
                        let c = Rational::from_integer(BigInt::from(*c));
                        if *sign > 0 {
                            !r.is_negative() && c <= r * r
                        } else {
                            !r.is_negative() || r * r <= c
                        }
                    }
                }
            }

            fn approx(&self) -> f64 {
                match self {
                    Known::Rat(v) => arith::to_f64(v),
                    Known::Surd(sign, c) => *sign as f64 * (*c as f64).sqrt(),
                }
            }
        }

        const NON_SQUARES: [u64; 6] = [2, 3, 5, 6, 7, 10];

        prop_compose! {
            /// Product of linear factors `q x - p` (possibly repeated),
            /// surd quadratics `x^2 - c` or `4x^2 - c`, and optionally the
            /// root-free `x^2 + 1`. Surds are stored as `sqrt(cc) / 2`.
            fn built()(lin in prop::collection::vec((-6i64..=6, 1i64..=5, 1usize..=2), 0..4),
                       quad in prop::collection::vec((0usize..6, any::<bool>()), 0..2),
                       free in any::<bool>(), lead in 1i64..4) -> (Polynomial, Vec<Known>) {
                let mut p = Polynomial::from_i64(&[lead]);
                let mut roots: Vec<Known> = Vec::new();
                for (num, den, mult) in lin {
                    for _ in 0..mult {
                        p = &p * &Polynomial::from_i64(&[-num, den]);
                    }
                    let r = ratio(num, den);
                    if !roots.iter().any(|k| matches!(k, Known::Rat(v) if *v == r)) {
                        roots.push(Known::Rat(r));
                    }
                }
                for (ci, small) in quad {
                    let c = NON_SQUARES[ci];
                    // roots ±sqrt(c)/2 for the small form, else ±sqrt(c)
                    let (f, cc) = if small { (Polynomial::from_i64(&[-(c as i64), 0, 4]), c) } else { (Polynomial::from_i64(&[-(c as i64), 0, 1]), 4 * c) };
                    if roots.iter().any(|k| matches!(k, Known::Surd(_, d) if *d == cc)) {
                        continue;
                    }
                    p = &p * &f;
                    roots.push(Known::Surd(1, cc));
                    roots.push(Known::Surd(-1, cc));
                }
                if free {
                    p = &p * &Polynomial::from_i64(&[1, 0, 1]);
                }
                (p, roots)
            }
        }

        /// The stored surds are `sqrt(cc)/2`; rescale before comparing.
        fn root_le(k: &Known, r: &Rational) -> bool {
            match k {
                Known::Rat(_) => k.le(r),
                Known::Surd(..) => k.le(&(r * int(2))),
            }
        }

        fn root_approx(k: &Known) -> f64 {
            match k {
                Known::Rat(_) => k.approx(),
                Known::Surd(..) => k.approx() / 2.0,
            }
        }

        fn count_in(roots: &[Known], a: &Rational, b: &Rational) -> usize {
            roots.iter().filter(|k| !root_le(k, a) && root_le(k, b)).count()
        }

        fn bound() -> impl Strategy<Value = Rational> {
            (-24i64..=24, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
        }

        /// Divisor enumeration: every candidate `±u/w` with `u | a_0` and
        /// `w | a_d` (after clearing zero roots), tested by evaluation.
        fn divisor_oracle(p: &Polynomial) -> Vec<Rational> {
            let ip = int::primitive(&p.to_int());
            let (q, zeros) = int::strip_x(&ip);
            let mut out = Vec::new();
            if zeros > 0 {
                out.push(Rational::zero());
            }
            let qp = Polynomial::from_int(&q);
            let divs = |v: &BigInt| -> Vec<i64> {
                let v = v.abs().to_string().parse::<i64>().unwrap();
                (1..=v).filter(|d| v % d == 0).collect()
            };
            for u in divs(&q[0]) {
                for w in divs(int::lc(&q)) {
                    for s in [-1, 1] {
                        let r = ratio(s * u, w);
                        if qp.eval(&r).is_zero() && !out.contains(&r) {
                            out.push(r);
                        }
                    }
                }
            }
            out.sort();
            out
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn sturm_matches_known_roots((p, roots) in built(), a in bound(), b in bound()) {
                prop_assume!(a < b && p.degree().unwrap_or(0) > 0);
                prop_assert_eq!(sturm_count(&p, &a, &b).unwrap(), count_in(&roots, &a, &b));
            }

            #[test]
            fn isolation_brackets_every_root((p, roots) in built(), l in 4u64..40) {
                prop_assume!(p.degree().unwrap_or(0) > 0);
                let iso = isolate_real_roots(&p, l).unwrap();
                let expect = count_in(&roots, &int(0), &int(1));
                prop_assert_eq!(iso.len(), expect);
                prop_assert_eq!(iso.len(), sturm_count(&p, &int(0), &int(1)).unwrap());
                let width = arith::dyadic(BigInt::one(), l);
                for (j, r) in iso.iter().enumerate() {
                    prop_assert!(r.lo <= r.value && r.value <= r.hi);
                    prop_assert!(&r.hi - &r.lo <= width);
                    if r.exact {
                        prop_assert!(p.eval(&r.value).is_zero());
                    } else {
                        prop_assert_eq!(sturm_count(&p, &r.lo, &r.hi).unwrap(), 1);
                        prop_assert!(!p.eval(&r.lo).is_zero() && !p.eval(&r.hi).is_zero());
                    }
                    if j > 0 {
                        prop_assert!(iso[j - 1].hi <= r.lo);
                    }
                }
                // every known root in (0, 1] lands in some bracket
                for k in roots.iter().filter(|k| !root_le(k, &int(0)) && root_le(k, &int(1))) {
                    let hit = iso.iter().any(|r| {
                        if r.exact {
                            matches!(k, Known::Rat(v) if *v == r.value)
                        } else {
                            !root_le(k, &r.lo) && root_le(k, &r.hi)
                        }
                    });
                    prop_assert!(hit, "root {} not bracketed", root_approx(k));
                }
            }

            #[test]
            fn rational_roots_match_divisor_enumeration((p, roots) in built()) {
                let mut want: Vec<Rational> = roots.iter().filter_map(|k| match k { Known::Rat(v) => Some(v.clone()), _ => None }).collect();
                want.sort();
                prop_assert_eq!(rational_roots(&p), want.clone());
                prop_assert_eq!(divisor_oracle(&p), want);
            }

            #[test]
            fn cauchy_bound_below_all_roots((p, roots) in built()) {
                prop_assume!(!p.coeffs()[0].is_zero());
                let b = cauchy_root_lower_bound(&p).unwrap();
                for k in &roots {
                    prop_assert!(root_approx(k).abs() > arith::to_f64(&b) * (1.0 - 1e-12));
                    if let Known::Rat(v) = k {
                        prop_assert!(v.abs() > b);
                    }
                }
            }
        }
    }
}
