//! Arithmetic in `F_p[x]` for word-sized primes. Used only as a fast
//! filter; every conclusion drawn here is a sound one-sided certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

const PRIMES: [u64; 16] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497,
    2147483489, 2147483477, 2147483423, 2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
];

type MPoly = Vec<u64>;

fn reduce(p: &[BigInt], m: u64) -> MPoly {
    let bm = BigInt::from(m);
    let mut r: MPoly = p.iter().map(|c| c.mod_floor(&bm).to_u64().unwrap()).collect();
    trim(&mut r);
    r
}

fn trim(p: &mut MPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

/// `a mod b` in place; `b` nonzero and trimmed.
fn rem(a: &mut MPoly, b: &[u64], m: u64) {
    let db = b.len() - 1;
    let il = inv(b[db], m);
    while a.len() > db {
        let da = a.len() - 1;
        let t = a[da] * il % m;
        if t != 0 {
            let nt = m - t;
            for j in 0..=db {
                let k = da - db + j;
                a[k] = (a[k] + nt * b[j]) % m;
            }
        }
        a.pop();
        trim(a);
    }
}

fn gcd_degree(mut a: MPoly, mut b: MPoly, m: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem(&mut a, &b, m);
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn derivative(p: &[u64], m: u64) -> MPoly {
    let mut d: MPoly = p.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % m) % m).collect();
    trim(&mut d);
    d
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], m: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // products are below 2^62, so u128 sums never overflow here
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x * y) as u128;
        }
    }
    let mut r: MPoly = acc.into_iter().map(|v| (v % m as u128) as u64).collect();
    trim(&mut r);
    rem(&mut r, f, m);
    r
}

/// True when some prime shows `p` has no root in `F_p`, which rules out
/// rational roots altogether. False means "unknown".
pub(crate) fn no_rational_roots(p: &[BigInt]) -> bool {
    if p.len() <= 1 {
        return true;
    }
    if p.len() == 2 {
        return false;
    }
    for &m in PRIMES.iter() {
        let f = reduce(p, m);
        if f.len() != p.len() {
            continue;
        }
        if f[0] == 0 {
            continue;
        }
        // x^m mod f by square-and-multiply
        let mut result: MPoly = vec![1];
        let mut base: MPoly = vec![0, 1];
        rem(&mut base, &f, m);
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, &f, m);
            }
            base = mul_mod(&base, &base, &f, m);
            e >>= 1;
        }
        // x^m - x
        if result.len() < 2 {
            result.resize(2, 0);
        }
        result[1] = (result[1] + m - 1) % m;
        trim(&mut result);
        let has_root = if result.is_empty() { true } else { gcd_degree(f.clone(), result, m) > 0 };
        if !has_root {
            return true;
        }
    }
    false
}

/// True when the derivative is certified coprime to `p` (square-free test).
pub(crate) fn square_free_certified(p: &[BigInt]) -> bool {
    if p.len() <= 2 {
        return true;
    }
    for &m in PRIMES.iter().take(3) {
        let pm = reduce(p, m);
        if pm.len() != p.len() {
            continue;
        }
        let d = derivative(&pm, m);
        if gcd_degree(pm, d, m) == 0 {
            return true;
        }
    }
    false
}
