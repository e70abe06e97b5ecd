//! Real-root isolation on `(0, 1]` for integer polynomials.
//!
//! Isolation uses Descartes' rule of signs with bisection (Vincent,
//! Collins, Akritas); refinement uses quadratic interval refinement with
//! exact dyadic evaluation. Every interval carries an exact sign change of
//! the deflated square-free polynomial.

use std::cell::OnceCell;
use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::int::{self, IPoly};
use super::modp;
use crate::arith::{self, Rational};

/// A root of the polynomial in `(0, 1]`: either known exactly or isolated
/// in the open unit-width dyadic interval `(c / 2^k, (c + 1) / 2^k)`.
#[derive(Clone, Debug)]
pub(crate) enum Root01 {
    Exact(Rational),
    Open { c: BigInt, k: u64 },
}

impl Root01 {
    pub(crate) fn lo(&self) -> Rational {
        match self {
            Root01::Exact(r) => r.clone(),
            Root01::Open { c, k } => arith::dyadic(c.clone(), *k),
        }
    }

    pub(crate) fn hi(&self) -> Rational {
        match self {
            Root01::Exact(r) => r.clone(),
            Root01::Open { c, k } => arith::dyadic(c + 1, *k),
        }
    }

    /// Position key for sorting: `(c, k)` scaled to a common exponent.
    fn cmp_pos(&self, other: &Root01) -> Ordering {
        arith::cmp_rat(&self.lo(), &other.lo())
    }
}

/// Roots of a polynomial in `(0, 1]` after square-free reduction.
pub(crate) struct Roots01 {
    /// Square-free part with factors of `x` removed.
    pub sq: IPoly,
    /// `sq` with every exactly found dyadic root divided out; nonzero at
    /// every interval endpoint produced during isolation.
    pub defl: IPoly,
    pub roots: Vec<Root01>,
    rational_free: OnceCell<bool>,
}

impl Roots01 {
    pub(crate) fn new(p: &[BigInt]) -> Roots01 {
        let mut p = int::primitive(p);
        assert!(!p.is_empty(), "roots of the zero polynomial");
        p = int::strip_x(&p).0;
        if p.len() <= 1 {
            return Roots01 { sq: p.clone(), defl: p, roots: Vec::new(), rational_free: OnceCell::new() };
        }
        let sq = int::square_free(&p);
        let mut defl = sq.clone();
        let mut roots = Vec::new();
        let one = BigInt::one();
        if defl.iter().fold(BigInt::zero(), |s, c| s + c).is_zero() {
            roots.push(Root01::Exact(Rational::one()));
            defl = int::div_root(&defl, &one, &one);
        }
        let mut exact = Vec::new();
        if defl.len() > 1 {
            descartes(&defl, &mut roots, &mut exact);
        }
        for (c, k) in exact {
            defl = int::div_root(&defl, &c, &(BigInt::one() << k));
        }
        roots.sort_by(|a, b| a.cmp_pos(b));
        Roots01 { sq, defl, roots, rational_free: OnceCell::new() }
    }

    pub(crate) fn len(&self) -> usize {
        self.roots.len()
    }

    fn rational_free(&self) -> bool {
        *self.rational_free.get_or_init(|| modp::no_rational_roots(&self.defl))
    }

    /// Shrinks root `idx` until its width is at most `2^-bits`, or it is
    /// found exactly. Rational roots are not searched for.
    pub(crate) fn tighten(&mut self, idx: usize, bits: u64) {
        if let Root01::Open { c, k } = &self.roots[idx] {
            if *k < bits {
                self.roots[idx] = refine(&self.defl, c.clone(), *k, bits);
            }
        }
    }

    /// Refines root `idx` to width `2^-bits` and recognises it when it is
    /// rational. The result is also stored back.
    pub(crate) fn resolve(&mut self, idx: usize, bits: u64) -> Root01 {
        self.tighten(idx, bits);
        if let Root01::Open { k, .. } = self.roots[idx] {
            let sure = int::lc(&self.defl).bits() + 1;
            // the filter only pays off when it can save refinement work
            if k >= sure || !self.rational_free() {
                self.tighten(idx, sure);
                if let Root01::Open { c, k } = &self.roots[idx] {
                    if let Some(r) = self.recognise(c, *k) {
                        self.roots[idx] = Root01::Exact(r);
                    }
                }
            }
        }
        self.roots[idx].clone()
    }

    /// A rational root `t / lc` has `t` an integer; with the interval
    /// narrower than `1 / (2 lc)` there is at most one such `t` inside.
    fn recognise(&self, c: &BigInt, k: u64) -> Option<Rational> {
        let lcv = int::lc(&self.defl).abs();
        debug_assert!(k > lcv.bits());
        let t: BigInt = ((c * &lcv) >> k) + 1;
        if (&t << k) >= (c + 1) * &lcv {
            return None;
        }
        let s = Rational::new(t, lcv);
        if !(&self.defl[0] % s.numer()).is_zero() {
            return None;
        }
        if int::eval_hom(&self.defl, s.numer(), s.denom(), self.defl.len() - 1).is_zero() {
            Some(s)
        } else {
            None
        }
    }
}

/// Descartes bound on `(0, 1)`: sign variations of `(x+1)^d q(1/(x+1))`,
/// capped at 2.
fn descartes_bound(q: &[BigInt]) -> usize {
    // all coefficients of one sign: no positive roots at all
    if int::sign_variations(q, 1) == 0 {
        return 0;
    }
    let mut r: IPoly = q.iter().rev().cloned().collect();
    int::taylor_shift1(&mut r);
    int::sign_variations(&r, 2)
}

fn descartes(p: &[BigInt], out: &mut Vec<Root01>, exact: &mut Vec<(BigInt, u64)>) {
    let mut stack: Vec<(IPoly, BigInt, u64)> = vec![(p.to_vec(), BigInt::zero(), 0)];
    let one = BigInt::one();
    while let Some((q, c, k)) = stack.pop() {
        if q.len() <= 1 {
            continue;
        }
        match descartes_bound(&q) {
            0 => {}
            1 => out.push(Root01::Open { c, k }),
            _ => {
                let d = q.len() - 1;
                let mut left: IPoly = q.iter().enumerate().map(|(i, a)| a << (d - i)).collect();
                int::strip_pow2(&mut left);
                let mut right = left.clone();
                int::taylor_shift1(&mut right);
                let c2: BigInt = &c << 1;
                let mid: BigInt = &c2 + 1;
                if right[0].is_zero() {
                    out.push(Root01::Exact(arith::dyadic(mid.clone(), k + 1)));
                    exact.push((mid.clone(), k + 1));
                    right.remove(0);
                    left = int::div_root(&left, &one, &one);
                }
                int::strip_pow2(&mut right);
                stack.push((right, mid, k + 1));
                stack.push((left, c2, k + 1));
            }
        }
    }
}

/// Quadratic interval refinement of the unique root in
/// `(c / 2^k, (c+1) / 2^k)` down to width `2^-target`.
pub(crate) fn refine(p: &[BigInt], mut c: BigInt, mut k: u64, target: u64) -> Root01 {
    let d = (p.len() - 1) as u64;
    let mut va = int::eval_dyadic(p, &c, k);
    let mut vb = int::eval_dyadic(p, &(&c + 1), k);
    let sa = va.sign();
    debug_assert!(sa != Sign::NoSign && vb.sign() == -sa, "refine: no sign change");
    let mut j: u64 = 2;
    while k < target {
        let jj = j.min(target - k);
        if jj >= 2 {
            let t = secant_index(&va, &vb, jj);
            let kk = k + jj;
            let lo = (&c << jj) + t;
            let vlo = int::eval_dyadic(p, &lo, kk);
            if vlo.is_zero() {
                return Root01::Exact(arith::dyadic(lo, kk));
            }
            let hit = if vlo.sign() == sa {
                let hi = &lo + 1;
                let vhi = int::eval_dyadic(p, &hi, kk);
                if vhi.is_zero() {
                    return Root01::Exact(arith::dyadic(hi, kk));
                }
                (vhi.sign() != sa).then_some((lo, vlo, vhi))
            } else {
                let lm = &lo - 1;
                let vlm = int::eval_dyadic(p, &lm, kk);
                if vlm.is_zero() {
                    return Root01::Exact(arith::dyadic(lm, kk));
                }
                (vlm.sign() == sa).then_some((lm, vlm, vlo))
            };
            if let Some((nc, na, nb)) = hit {
                c = nc;
                va = na;
                vb = nb;
                k = kk;
                j = jj * 2;
                continue;
            }
            j = (j / 2).max(2);
        }
        let m: BigInt = (&c << 1) + 1;
        let vm = int::eval_dyadic(p, &m, k + 1);
        if vm.is_zero() {
            return Root01::Exact(arith::dyadic(m, k + 1));
        }
        if vm.sign() == sa {
            c = m;
            va = vm;
            vb <<= d;
        } else {
            c <<= 1;
            vb = vm;
            va <<= d;
        }
        k += 1;
    }
    Root01::Open { c, k }
}

/// Guess of the sub-interval index `floor(2^j * va / (va - vb))`.
fn secant_index(va: &BigInt, vb: &BigInt, j: u64) -> BigInt {
    let a = va.abs();
    let s = &a + vb.abs();
    let sh = s.bits().saturating_sub(j + 64);
    let a = a >> sh;
    let s = s >> sh;
    let t: BigInt = (a << j) / s;
    let top = (BigInt::one() << j) - 1;
    if t > top {
        top
    } else if t.is_negative() {
        BigInt::zero()
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn finds_dyadic_roots_exactly() {
        let mut r = Roots01::new(&ip(&[1, -6, 8]));
        assert_eq!(r.len(), 2);
        assert!(matches!(r.resolve(0, 8), Root01::Exact(v) if v == arith::ratio(1, 4)));
        assert!(matches!(&r.roots[1], Root01::Exact(v) if *v == arith::ratio(1, 2)));
    }

    #[test]
    fn root_at_one_and_zero() {
        // x (x - 1) (3x - 1)
        let p = int::mul(&int::mul(&ip(&[0, 1]), &ip(&[-1, 1])), &ip(&[-1, 3]));
        let mut r = Roots01::new(&p);
        assert_eq!(r.len(), 2);
        let third = r.resolve(0, 20);
        assert!(matches!(third, Root01::Exact(v) if v == arith::ratio(1, 3)));
        assert!(matches!(&r.roots[1], Root01::Exact(v) if *v == arith::int(1)));
    }

    #[test]
    fn irrational_refinement() {
        let mut r = Roots01::new(&ip(&[-1, 0, 2]));
        assert_eq!(r.len(), 1);
        match r.resolve(0, 200) {
            Root01::Open { c, k } => {
                assert!(k >= 200);
                let lo = arith::dyadic(c.clone(), k);
                let hi = arith::dyadic(c + 1, k);
                let two = arith::int(2);
                assert!(&lo * &lo * &two < arith::int(1));
                assert!(&hi * &hi * &two > arith::int(1));
            }
            Root01::Exact(_) => panic!("sqrt(1/2) is irrational"),
        }
    }

    #[test]
    fn clustered_roots() {
        // (1000x - 1)(1001x - 1)(x - 1/2) * 2
        let p = int::mul(&int::mul(&ip(&[-1, 1000]), &ip(&[-1, 1001])), &ip(&[-1, 2]));
        let mut r = Roots01::new(&p);
        assert_eq!(r.len(), 3);
        let vals: Vec<Rational> = (0..3)
            .map(|i| match r.resolve(i, 40) {
                Root01::Exact(v) => v,
                Root01::Open { .. } => panic!("rational root not recognised"),
            })
            .collect();
        assert_eq!(vals, vec![arith::ratio(1, 1001), arith::ratio(1, 1000), arith::ratio(1, 2)]);
    }
}
