//! Sturm sequences over `Z[x]` built with a primitive pseudo-remainder
//! sequence; signs are kept so that variation counts remain valid.

use num_bigint::{BigInt, Sign};
use num_traits::Signed;

use super::int::{self, IPoly};
use super::{PolyError, Polynomial};
use crate::arith::Rational;

pub(crate) fn chain(p: &[BigInt]) -> Vec<IPoly> {
    let mut seq = vec![p.to_vec()];
    let d = int::derivative(p);
    if d.is_empty() {
        return seq;
    }
    seq.push(int::primitive_keep_sign(&d));
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.len() == 1 {
            break;
        }
        let r = int::prem(a, b);
        if r.is_empty() {
            break;
        }
        // prem scales by lc(b)^(da-db+1); a negative factor flips the sign
        let e = a.len() - b.len() + 1;
        let flip = int::lc(b).is_negative() && e % 2 == 1;
        let mut r = int::primitive_keep_sign(&r);
        if !flip {
            for c in r.iter_mut() {
                *c = -&*c;
            }
        }
        seq.push(r);
    }
    seq
}

pub(crate) fn variations_at(seq: &[IPoly], x: &Rational) -> usize {
    let mut last = Sign::NoSign;
    let mut v = 0;
    for s in seq {
        let sg = int::sign_at(s, x);
        if sg == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && sg != last {
            v += 1;
        }
        last = sg;
    }
    v
}

/// Number of distinct real roots in `(a, b]`.
pub fn sturm_count(p: &Polynomial, a: &Rational, b: &Rational) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if a >= b {
        return Err(PolyError::EmptyInterval);
    }
    let sq = int::square_free(&p.to_int());
    let seq = chain(&sq);
    Ok(variations_at(&seq, a) - variations_at(&seq, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    #[test]
    fn counts() {
        let p = Polynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(1)).unwrap(), 0);
        assert_eq!(sturm_count(&p, &int(0), &ratio(3, 2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(-2), &int(2)).unwrap(), 2);
        let q = Polynomial::from_i64(&[1, -6, 8]);
        assert_eq!(sturm_count(&q, &int(0), &int(1)).unwrap(), 2);
        // half-open: root at the left end excluded, right end included
        assert_eq!(sturm_count(&q, &ratio(1, 4), &ratio(1, 2)).unwrap(), 1);
        assert_eq!(sturm_count(&q, &int(0), &ratio(1, 4)).unwrap(), 1);
        let dbl = Polynomial::from_i64(&[1, -2, 1]);
        assert_eq!(sturm_count(&dbl, &int(0), &int(2)).unwrap(), 1);
        assert!(sturm_count(&Polynomial::zero(), &int(0), &int(1)).is_err());
    }
}
