//! Small exact-arithmetic helpers shared by the modules.
//!
//! `BigRational` reduces on every operation and its `Ord` impl walks a
//! continued fraction recursively, which is slow for the multi-kilobit
//! values produced by the solver. Hot paths therefore work on plain
//! numerator/denominator pairs and only build a `Rational` at the end.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Values whose parts exceed this many bits are not fully reduced.
const REDUCE_LIMIT_BITS: u64 = 8192;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn bits(v: &BigInt) -> u64 {
    v.bits()
}

/// `c / 2^k` in lowest terms.
pub fn dyadic(c: BigInt, k: u64) -> Rational {
    if c.is_zero() {
        return Rational::zero();
    }
    let tz = c.trailing_zeros().unwrap_or(0).min(k);
    Rational::new_raw(c >> tz, BigInt::one() << (k - tz))
}

/// Builds `num / den` from a pair that may share huge factors.
///
/// Small values are reduced; above `REDUCE_LIMIT_BITS` only the common
/// power of two is stripped, so the result is exact but not necessarily
/// in lowest terms.
pub fn tidy(num: BigInt, den: BigInt) -> Rational {
    assert!(!den.is_zero(), "zero denominator");
    let (mut num, mut den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    if num.is_zero() {
        return Rational::zero();
    }
    if num.bits().max(den.bits()) <= REDUCE_LIMIT_BITS {
        return Rational::new(num, den);
    }
    let tz = num
        .trailing_zeros()
        .unwrap_or(0)
        .min(den.trailing_zeros().unwrap_or(0));
    num >>= tz;
    den >>= tz;
    Rational::new_raw(num, den)
}

/// Compares `an/ad` with `bn/bd`; denominators must be positive.
pub fn cmp_frac(an: &BigInt, ad: &BigInt, bn: &BigInt, bd: &BigInt) -> Ordering {
    let sa = an.sign();
    let sb = bn.sign();
    if sa != sb {
        return sign_rank(sa).cmp(&sign_rank(sb));
    }
    if sa == Sign::NoSign {
        return Ordering::Equal;
    }
    (an * bd).cmp(&(bn * ad))
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Cross-multiplying comparison; safe for unreduced values.
pub fn cmp_rat(a: &Rational, b: &Rational) -> Ordering {
    cmp_frac(a.numer(), a.denom(), b.numer(), b.denom())
}

pub fn rat_eq(a: &Rational, b: &Rational) -> bool {
    cmp_rat(a, b) == Ordering::Equal
}

/// Smallest `e` with `2^e >= r`, for `r > 0`.
pub fn ceil_log2(r: &Rational) -> i64 {
    assert!(r.is_positive(), "ceil_log2 of non-positive value");
    let num = r.numer();
    let den = r.denom();
    let mut e = num.bits() as i64 - den.bits() as i64;
    // 2^(e-1) < r < 2^(e+1) at this point
    loop {
        if pow2_ge(e, num, den) {
            if pow2_ge(e - 1, num, den) {
                e -= 1;
            } else {
                return e;
            }
        } else {
            e += 1;
        }
    }
}

fn pow2_ge(e: i64, num: &BigInt, den: &BigInt) -> bool {
    if e >= 0 {
        (den << e as u64) >= *num
    } else {
        *den >= (num << (-e) as u64)
    }
}

pub fn ceil_log2_usize(n: usize) -> u64 {
    assert!(n > 0);
    (usize::BITS - (n - 1).leading_zeros()) as u64
}

pub fn floor_rat(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Approximates a possibly huge rational by an `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    frac_to_f64(r.numer(), r.denom())
}

pub fn frac_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let neg = num.is_negative() != den.is_negative();
    let n = num.magnitude();
    let d = den.magnitude();
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 { (n << shift as u64) / d } else { n / (d >> (-shift) as u64) };
    let v = ldexp(q.to_f64().unwrap_or(f64::MAX), -shift);
    if neg {
        -v
    } else {
        v
    }
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Parses `p/q`, an integer, or a decimal literal such as `1e-6` or `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_int(p)?;
        let q = parse_int(q)?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{t}`"));
        }
        return Ok(Rational::new(p, q));
    }
    if t.contains(['.', 'e', 'E']) {
        return parse_decimal(t);
    }
    Ok(Rational::from_integer(parse_int(t)?))
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not an integer"));
    }
    s.parse::<BigInt>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_decimal(t: &str) -> Result<Rational, String> {
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], &t[pos + 1..]),
        None => (t, "0"),
    };
    let exp: i64 = exp
        .strip_prefix('+')
        .unwrap_or(exp)
        .parse()
        .map_err(|_| format!("bad exponent in `{t}`"))?;
    let (neg, body) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(format!("`{t}` is not a number"));
    }
    if !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("`{t}` is not a number"));
    }
    if exp.abs() > 100_000 {
        return Err(format!("exponent out of range in `{t}`"));
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| format!("`{t}`"))?;
    let scale = exp - fp.len() as i64;
    let ten = BigInt::from(10u32);
    let mut r = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` fractional digits, rounded to nearest
/// (ties away from zero).
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let num: BigInt = r.numer().abs() * &scale * 2 + r.denom();
    let q = num.div_floor(&(r.denom() * 2));
    let neg = r.is_negative() && !q.is_zero();
    let s = q.to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// The fraction with the smallest denominator in the closed interval
/// `[lo, hi]`, where `0 <= lo <= hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(!lo.is_negative() && lo <= hi);
    // continued fraction expansion of the common prefix
    let (mut ln, mut ld) = (lo.numer().clone(), lo.denom().clone());
    let (mut hn, mut hd) = (hi.numer().clone(), hi.denom().clone());
    let mut terms: Vec<BigInt> = Vec::new();
    loop {
        let (fl, rl) = ln.div_mod_floor(&ld);
        if rl.is_zero() {
            terms.push(fl);
            break;
        }
        let fh = hn.div_floor(&hd);
        if fl < fh {
            terms.push(fl + 1);
            break;
        }
        terms.push(fl.clone());
        // recurse on 1/(hi - fl) .. 1/(lo - fl)
        let new_ln = hd.clone();
        let new_ld = &hn - &fl * &hd;
        let new_hn = ld.clone();
        let new_hd = rl;
        ln = new_ln;
        ld = new_ld;
        hn = new_hn;
        hd = new_hd;
    }
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for t in terms.iter().rev() {
        let next = t * &num + &den;
        den = num;
        num = next;
    }
    Rational::new(num, den)
}
