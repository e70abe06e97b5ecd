//! Root-accuracy bookkeeping: the Cauchy-type lower bound `B` on candidate
//! roots, the error-propagation sums `X`, `Y`, the growth factor `Ψ`, and
//! the bit precision `l` handed to root refinement.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Rational};
use crate::game_model::ReducedProblem;

/// Fractional guard bits used when rounding `X`, `Y` and `Ψ` upwards.
pub const GUARD_BITS: u64 = 64;

/// Which published bound family drives `B` and the precision floor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PrecFamily {
    #[default]
    Tight,
    Conservative,
}

impl FromStr for PrecFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tight" => Ok(PrecFamily::Tight),
            "conservative" => Ok(PrecFamily::Conservative),
            other => Err(format!("unknown precision family `{other}` (expected tight or conservative)")),
        }
    }
}

impl PrecFamily {
    /// `B = 2^-b_exp`.
    pub fn b_exp(self, n: usize, k: u32) -> u64 {
        let n64 = n as u64;
        let lg = arith::ceil_log2_usize(n);
        match self {
            PrecFamily::Tight => 4 * n64 * k as u64 + 6 * n64 + 2 * lg + 1,
            PrecFamily::Conservative => 6 * n64 * n64 * k as u64 * lg + 1,
        }
    }

    /// Lower limit on `l`.
    pub fn l_floor(self, n: usize, k: u32) -> u64 {
        self.b_exp(n, k) + 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionBounds {
    pub b_exp: u64,
    /// Upper bounds on the two sums, as multiples of `2^-GUARD_BITS`.
    pub x: Rational,
    pub y: Rational,
    /// `(Y + sqrt(Y^2 + 4X)) / 2`, rounded up to a multiple of `2^-GUARD_BITS`.
    pub psi: Rational,
    pub l_floor: u64,
}

impl PrecisionBounds {
    pub fn b(&self) -> Rational {
        arith::dyadic(BigInt::one(), self.b_exp)
    }
}

/// `ceil(2^G · t / (B + Δ)^2)` for `t = p/q >= 0`, `Δ = r/s > 0`,
/// `B = 2^-e`.
fn term_up(t: &Rational, delta: &Rational, e: u64) -> BigInt {
    let (p, q) = (t.numer(), t.denom());
    let (r, s) = (delta.numer(), delta.denom());
    let base: BigInt = s + (r << e);
    let num: BigInt = (p * s * s) << (2 * e + GUARD_BITS);
    let den: BigInt = q * &base * &base;
    let (quo, rem) = (&num / &den, &num % &den);
    if rem.is_zero() {
        quo
    } else {
        quo + 1
    }
}

/// Larger of the two one-sided sums of `|v_j| / (B+Δ_j)^2` (negative
/// side) and `2 v_j / (B+Δ_j)^2` (positive side), scaled by `2^G`.
fn directional(vals: impl Iterator<Item = (Rational, Rational)>, e: u64) -> BigInt {
    let mut neg = BigInt::zero();
    let mut pos = BigInt::zero();
    for (v, delta) in vals {
        if v.is_negative() {
            neg += term_up(&-v, &delta, e);
        } else if v.is_positive() {
            pos += term_up(&(v * Rational::from_integer(2.into())), &delta, e);
        }
    }
    neg.max(pos)
}

/// Bounds for the partition whose tight targets are sorted positions
/// `first_tight..m`.
pub fn error_bounds(rp: &ReducedProblem, first_tight: usize, family: PrecFamily) -> PrecisionBounds {
    let e = family.b_exp(rp.size, rp.k);
    let xs = directional((first_tight..rp.m()).map(|j| (rp.sorted_offset(j).clone(), rp.sorted_delta(j).clone())), e);
    let ys = directional(
        (first_tight..rp.m()).map(|j| (&rp.delta_star - rp.sorted_delta(j), rp.sorted_delta(j).clone())),
        e,
    );
    // Ψ·2^G = (Y' + sqrt(Y'^2 + 4 X' 2^G)) / 2 with X' = X·2^G, Y' = Y·2^G
    let disc: BigInt = &ys * &ys + ((&xs << GUARD_BITS) << 2);
    let mut root = disc.sqrt();
    if &root * &root != disc {
        root += 1;
    }
    let twice: BigInt = &ys + root;
    let psi_scaled: BigInt = (&twice + 1) >> 1;
    PrecisionBounds {
        b_exp: e,
        x: arith::dyadic(xs, GUARD_BITS),
        y: arith::dyadic(ys, GUARD_BITS),
        psi: arith::dyadic(psi_scaled, GUARD_BITS),
        l_floor: family.l_floor(rp.size, rp.k),
    }
}

/// `max(1 + ceil(log2((Δ_D Ψ + a) / ε)), floor)`.
pub fn precision_bits(delta_d: &Rational, psi: &Rational, a: &Rational, eps: &Rational, floor: u64) -> u64 {
    assert!(eps.is_positive(), "epsilon must be positive");
    let num = delta_d * psi + a;
    if !num.is_positive() {
        return floor;
    }
    let first = 1 + arith::ceil_log2(&(num / eps));
    if first > floor as i64 {
        first as u64
    } else {
        floor
    }
}

/// Bit precision for every partition of `rp`. The sums behind `Ψ` only
/// shrink as the tight set shrinks, so partition 0 gives the maximum.
pub fn prec(eps: &Rational, rp: &ReducedProblem, family: PrecFamily) -> u64 {
    let b = error_bounds(rp, 0, family);
    precision_bits(&rp.delta_d_star, &b.psi, &rp.a, eps, b.l_floor)
}
