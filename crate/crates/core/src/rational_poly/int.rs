//! Dense integer polynomials (ascending coefficients) used by the root
//! machinery. Working over `Z` instead of `Q` avoids a gcd per operation.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

pub(crate) type IPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree of a trimmed nonzero polynomial.
pub(crate) fn deg(p: &[BigInt]) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub(crate) fn lc(p: &[BigInt]) -> &BigInt {
    p.last().expect("zero polynomial has no leading coefficient")
}

pub(crate) fn max_bits(p: &[BigInt]) -> u64 {
    p.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Clears denominators of a rational coefficient vector.
pub(crate) fn from_rational(coeffs: &[Rational]) -> IPoly {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    let mut p: IPoly = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    trim(&mut p);
    p
}

pub(crate) fn to_rational(p: &[BigInt]) -> Vec<Rational> {
    p.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

/// Gcd of the coefficients (positive); stops early once it reaches 1.
/// Starts from the smallest coefficient and reduces each other one modulo
/// the running gcd first, so only small gcds are ever computed.
pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let Some(start) = p.iter().filter(|c| !c.is_zero()).min_by_key(|c| c.bits()) else {
        return BigInt::zero();
    };
    let mut g = start.abs();
    for c in p {
        if g.is_one() {
            break;
        }
        if c.is_zero() {
            continue;
        }
        let r = c % &g;
        if !r.is_zero() {
            g = g.gcd(&r);
        }
    }
    g
}

/// Divides out the content; the leading coefficient is made positive.
pub(crate) fn primitive(p: &[BigInt]) -> IPoly {
    let mut q: IPoly = p.to_vec();
    trim(&mut q);
    if q.is_empty() {
        return q;
    }
    let mut g = content(&q);
    if lc(&q).is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in q.iter_mut() {
            *c = &*c / &g;
        }
    }
    q
}

/// Divides out the positive content, keeping the sign pattern.
pub(crate) fn primitive_keep_sign(p: &[BigInt]) -> IPoly {
    let mut q: IPoly = p.to_vec();
    trim(&mut q);
    let g = content(&q);
    if !g.is_zero() && !g.is_one() {
        for c in q.iter_mut() {
            *c = &*c / &g;
        }
    }
    q
}

/// Removes the largest common power of two.
pub(crate) fn strip_pow2(p: &mut [BigInt]) {
    let tz = p.iter().filter_map(|c| c.trailing_zeros()).min().unwrap_or(0);
    if tz > 0 {
        for c in p.iter_mut() {
            *c >>= tz;
        }
    }
}

pub(crate) fn derivative(p: &[BigInt]) -> IPoly {
    let mut d: IPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut d);
    d
}

pub(crate) fn add(p: &[BigInt], q: &[BigInt]) -> IPoly {
    let n = p.len().max(q.len());
    let mut r: IPoly = (0..n)
        .map(|i| match (p.get(i), q.get(i)) {
            (Some(a), Some(b)) => a + b,
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => BigInt::zero(),
        })
        .collect();
    trim(&mut r);
    r
}

pub(crate) fn sub(p: &[BigInt], q: &[BigInt]) -> IPoly {
    let n = p.len().max(q.len());
    let mut r: IPoly = (0..n)
        .map(|i| match (p.get(i), q.get(i)) {
            (Some(a), Some(b)) => a - b,
            (Some(a), None) => a.clone(),
            (None, Some(b)) => -b,
            (None, None) => BigInt::zero(),
        })
        .collect();
    trim(&mut r);
    r
}

pub(crate) fn scale(p: &[BigInt], s: &BigInt) -> IPoly {
    if s.is_zero() {
        return Vec::new();
    }
    p.iter().map(|c| c * s).collect()
}

pub(crate) fn mul(p: &[BigInt], q: &[BigInt]) -> IPoly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            r[i + j] += a * b;
        }
    }
    trim(&mut r);
    r
}

/// `x * p`.
pub(crate) fn mul_x(p: &[BigInt]) -> IPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut r = Vec::with_capacity(p.len() + 1);
    r.push(BigInt::zero());
    r.extend(p.iter().cloned());
    r
}

/// Below this length plain Horner evaluation is used.
const SPLIT_LEN: usize = 8;

/// `2^(k*d) p(c / 2^k)` with `d = len - 1`. Long polynomials are split in
/// halves so the large multiplications are balanced.
pub(crate) fn eval_dyadic(p: &[BigInt], c: &BigInt, k: u64) -> BigInt {
    if p.len() <= SPLIT_LEN {
        return horner_dyadic(p, c, k);
    }
    // pows[j] = c^(2^j)
    let mut pows = vec![c.clone()];
    while (1usize << pows.len()) < p.len() {
        let last = pows.last().expect("nonempty");
        pows.push(last * last);
    }
    split_dyadic(p, c, k, &pows)
}

fn split_dyadic(p: &[BigInt], c: &BigInt, k: u64, pows: &[BigInt]) -> BigInt {
    if p.len() <= SPLIT_LEN {
        return horner_dyadic(p, c, k);
    }
    let d = p.len() - 1;
    let j = (usize::BITS - 1 - d.leading_zeros()) as usize;
    let h = 1usize << j;
    let low = split_dyadic(&p[..h], c, k, pows);
    let high = split_dyadic(&p[h..], c, k, pows);
    (low << (k * (d - h + 1) as u64)) + high * &pows[j]
}

fn horner_dyadic(p: &[BigInt], c: &BigInt, k: u64) -> BigInt {
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc *= c;
        if !p[i].is_zero() {
            acc += &p[i] << (k * (d - i) as u64);
        }
    }
    acc
}

/// `v^deg p(u / v)` for a formal degree `deg >= deg p`.
pub(crate) fn eval_hom(p: &[BigInt], u: &BigInt, v: &BigInt, formal: usize) -> BigInt {
    if p.is_empty() {
        return BigInt::zero();
    }
    let d = p.len() - 1;
    debug_assert!(formal >= d);
    if v.is_positive() && v.trailing_zeros() == Some(v.bits() - 1) {
        let k = v.bits() - 1;
        return eval_dyadic(p, u, k) << (k * (formal - d) as u64);
    }
    let mut acc = p[d].clone();
    let mut vp = BigInt::one();
    for i in (0..d).rev() {
        vp *= v;
        acc *= u;
        if !p[i].is_zero() {
            acc += &p[i] * &vp;
        }
    }
    if formal > d {
        acc *= num_traits::pow(v.clone(), formal - d);
    }
    acc
}

/// Sign of `p(r)`.
pub(crate) fn sign_at(p: &[BigInt], r: &Rational) -> Sign {
    if p.is_empty() {
        return Sign::NoSign;
    }
    eval_hom(p, r.numer(), r.denom(), p.len() - 1).sign()
}

/// `p(x + 1)` in place.
pub(crate) fn taylor_shift1(p: &mut [BigInt]) {
    let n = p.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let (lo, hi) = p.split_at_mut(j + 1);
            lo[j] += &hi[0];
        }
    }
}

/// Number of sign changes in the coefficient sequence, counted up to `cap`.
pub(crate) fn sign_variations(p: &[BigInt], cap: usize) -> usize {
    let mut last = Sign::NoSign;
    let mut v = 0;
    for c in p {
        let s = c.sign();
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            v += 1;
            if v >= cap {
                return v;
            }
        }
        last = s;
    }
    v
}

/// Removes factors of `x`; returns the quotient and the multiplicity.
pub(crate) fn strip_x(p: &[BigInt]) -> (IPoly, usize) {
    let k = p.iter().take_while(|c| c.is_zero()).count();
    (p[k..].to_vec(), k)
}

/// `p / (v x - u)` where `u / v` is a known root.
pub(crate) fn div_root(p: &[BigInt], u: &BigInt, v: &BigInt) -> IPoly {
    let d = p.len() - 1;
    let mut q = vec![BigInt::zero(); d];
    let (t, r) = p[d].div_rem(v);
    debug_assert!(r.is_zero());
    q[d - 1] = t;
    for i in (1..d).rev() {
        let (t, r) = (&p[i] + u * &q[i]).div_rem(v);
        debug_assert!(r.is_zero(), "div_root: not a root");
        q[i - 1] = t;
    }
    debug_assert!((&p[0] + u * &q[0]).is_zero(), "div_root: not a root");
    q
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(da-db+1) a = q b + r`.
pub(crate) fn prem(a: &[BigInt], b: &[BigInt]) -> IPoly {
    let da = deg(a);
    let db = deg(b);
    if da < db {
        return a.to_vec();
    }
    let l = lc(b).clone();
    let mut r: IPoly = a.to_vec();
    let mut steps = 0usize;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let t = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &l;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &t * bj;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        steps += 1;
    }
    let missing = da - db + 1 - steps;
    if missing > 0 && !r.is_empty() {
        let f = num_traits::pow(l, missing);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IPoly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive(&b);
        }
        a = b;
        b = primitive(&r);
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
    }
}

/// Exact quotient `a / b` when `b` divides `a` over `Z[x]`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> IPoly {
    let db = deg(b);
    let mut r: IPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    let l = lc(b);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (t, rem) = r[dr].div_rem(l);
        debug_assert!(rem.is_zero(), "div_exact: inexact division");
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &t * bj;
        }
        q[dr - db] = t;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "div_exact: nonzero remainder");
    trim(&mut q);
    q
}

/// Square-free part (primitive, positive leading coefficient).
pub(crate) fn square_free(p: &[BigInt]) -> IPoly {
    let p = primitive(p);
    if p.len() <= 2 {
        return p;
    }
    if super::modp::square_free_certified(&p) {
        return p;
    }
    let dp = derivative(&p);
    let g = gcd(&p, &dp);
    if g.len() == 1 {
        p
    } else {
        primitive(&div_exact(&p, &g))
    }
}

/// `p(s x)` for an integer scale `s` (coefficient `i` times `s^i`).
pub(crate) fn scale_arg_pow2(p: &[BigInt], shift: u64) -> IPoly {
    p.iter().enumerate().map(|(i, c)| c << (shift * i as u64)).collect()
}

pub(crate) fn negate_arg(p: &[BigInt]) -> IPoly {
    p.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn shift_and_eval() {
        let mut p = ip(&[2, -3, 1]);
        taylor_shift1(&mut p);
        assert_eq!(p, ip(&[0, -1, 1]));
        // 2^(2*1) * (x^2 - 3x + 2) at x = 1/2 → 4 * 3/4
        assert_eq!(eval_dyadic(&ip(&[2, -3, 1]), &BigInt::from(1), 1), BigInt::from(3));
        assert_eq!(eval_hom(&ip(&[2, -3, 1]), &BigInt::from(1), &BigInt::from(3), 3), BigInt::from(30));
    }

    #[test]
    fn division_and_gcd() {
        let p = ip(&[1, -6, 8]); // (2x-1)(4x-1)
        assert_eq!(div_root(&p, &BigInt::from(1), &BigInt::from(2)), ip(&[-1, 4]));
        let a = mul(&ip(&[-1, 1]), &ip(&[1, 1]));
        let g = gcd(&a, &ip(&[-3, 3]));
        assert_eq!(g, ip(&[-1, 1]));
        assert_eq!(div_exact(&a, &ip(&[1, 1])), ip(&[-1, 1]));
        let sq = square_free(&ip(&[1, -2, 1]));
        assert_eq!(sq, ip(&[-1, 1]));
        let cube = mul(&mul(&ip(&[-1, 2]), &ip(&[-1, 2])), &ip(&[3, 1]));
        assert_eq!(square_free(&cube), mul(&ip(&[-1, 2]), &ip(&[3, 1])));
    }

    #[test]
    fn split_evaluation_matches_horner() {
        for len in 1..40usize {
            let p: IPoly = (0..len).map(|i| BigInt::from((i as i64 * 7919) % 201 - 100)).collect();
            for (c, k) in [(0i64, 3u64), (5, 3), (-3, 2), (123_456, 20)] {
                let c = BigInt::from(c);
                assert_eq!(eval_dyadic(&p, &c, k), horner_dyadic(&p, &c, k), "len {len}");
            }
        }
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = ip(&[3, 0, 2, 5]);
        let b = ip(&[1, 3]);
        let r = prem(&a, &b);
        // 3^3 * a(-1/3) = r
        let v = eval_hom(&a, &BigInt::from(-1), &BigInt::from(3), 3);
        assert_eq!(r, vec![v]);
    }
}
