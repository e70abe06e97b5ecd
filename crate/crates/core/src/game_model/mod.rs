//! Audit-game instances, their validation, and the compact form of the
//! subproblem that assumes a fixed best response of the attacker.

mod generate;
mod io;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, Rational};

pub use generate::{generate_random, MAX_GENERATED_K};
pub use io::{parse_instance, serialize_instance};

/// Utilities for one target: defender/attacker, audited/unaudited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetUtilities {
    pub ua_d: Rational,
    pub uu_d: Rational,
    pub ua_a: Rational,
    pub uu_a: Rational,
}

impl TargetUtilities {
    pub fn new(ua_d: Rational, uu_d: Rational, ua_a: Rational, uu_a: Rational) -> TargetUtilities {
        TargetUtilities { ua_d, uu_d, ua_a, uu_a }
    }

    fn fields(&self) -> [(&'static str, &Rational); 4] {
        [("ua_d", &self.ua_d), ("uu_d", &self.uu_d), ("ua_a", &self.ua_a), ("uu_a", &self.uu_a)]
    }
}

/// A game over `n` real targets, optionally with the zero-utility dummy
/// target `t0` (the "no attack" option). The dummy is implicit: it is never
/// stored in `targets`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditGameInstance {
    pub targets: Vec<TargetUtilities>,
    pub a: Rational,
    pub k: u32,
    pub has_dummy: bool,
}

impl AuditGameInstance {
    pub fn n(&self) -> usize {
        self.targets.len()
    }

    /// Target count used by the precision bounds (the dummy counts).
    pub fn size(&self) -> usize {
        self.n() + usize::from(self.has_dummy)
    }

    pub fn stars(&self) -> Vec<Star> {
        let mut v = Vec::with_capacity(self.size());
        if self.has_dummy {
            v.push(Star::Dummy);
        }
        v.extend((0..self.n()).map(Star::Target));
        v
    }
}

/// The attacker's assumed best response.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Star {
    Dummy,
    /// Zero-based index into `targets`.
    Target(usize),
}

impl Star {
    /// Number used in files and reports: 0 for the dummy, 1-based otherwise.
    pub fn label(self) -> usize {
        match self {
            Star::Dummy => 0,
            Star::Target(i) => i + 1,
        }
    }
}

impl fmt::Display for Star {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.label())
    }
}

/// Defender strategy. `probs` follows target order; `dummy` is the mass on
/// `t0` when the game has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub probs: Vec<Rational>,
    pub dummy: Option<Rational>,
    pub x: Rational,
}

impl Strategy {
    pub fn total(&self) -> Rational {
        self.probs.iter().chain(self.dummy.iter()).sum()
    }

    pub fn is_valid(&self) -> bool {
        let unit = |p: &Rational| !p.is_negative() && *p <= Rational::one();
        self.probs.iter().chain(self.dummy.iter()).all(unit) && self.total().is_one() && unit(&self.x)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("instance has no targets")]
    EmptyInstance,
    #[error("target t{target}: {rule} does not hold")]
    UtilityOrderViolation { target: usize, rule: &'static str },
    #[error("{field} = {value} is not a {k}-bit fixed-point value")]
    PrecisionViolation { field: String, value: String, k: u32 },
    #[error("K must be at least 1")]
    ZeroPrecision,
    #[error("a = {0} is negative")]
    NegativeCoefficient(String),
    #[error("target index {0} is out of range")]
    BadIndex(usize),
    #[error("syntax error at {path} (line {line}, column {column}): {message}")]
    SyntaxError { path: String, line: usize, column: usize, message: String },
}

/// True when `v = m / 2^e` with `e <= k` and `|m| <= 2^k`.
pub fn fits_precision(v: &Rational, k: u32) -> bool {
    let d = v.denom();
    let pow2 = d.trailing_zeros() == Some(d.bits() - 1) && d.bits() <= k as u64 + 1;
    pow2 && v.numer().abs() <= BigInt::one() << k
}

/// Checks every invariant and returns the instance in canonical form.
pub fn validate_instance(raw: AuditGameInstance) -> Result<AuditGameInstance, ModelError> {
    if raw.targets.is_empty() {
        return Err(ModelError::EmptyInstance);
    }
    if raw.k == 0 {
        return Err(ModelError::ZeroPrecision);
    }
    let k = raw.k;
    let check = |field: String, v: &Rational| {
        if fits_precision(v, k) {
            Ok(())
        } else {
            Err(ModelError::PrecisionViolation { field, value: arith::format_rational(v), k })
        }
    };
    if raw.a.is_negative() {
        return Err(ModelError::NegativeCoefficient(arith::format_rational(&raw.a)));
    }
    check("a".into(), &raw.a)?;
    for (i, t) in raw.targets.iter().enumerate() {
        for (name, v) in t.fields() {
            check(format!("targets[{i}].{name}"), v)?;
        }
        if t.ua_d <= t.uu_d {
            return Err(ModelError::UtilityOrderViolation { target: i + 1, rule: "ua_d > uu_d" });
        }
        if t.uu_a <= t.ua_a {
            return Err(ModelError::UtilityOrderViolation { target: i + 1, rule: "uu_a > ua_a" });
        }
    }
    // num-rational keeps values reduced already; this is the canonical form
    Ok(raw)
}

/// The compact subproblem for a real best response `star`.
///
/// `others` lists the remaining real targets in their original order and
/// `deltas`/`offsets` are aligned with it. `sort_perm[j]` is the position in
/// `others` of the `j`-th smallest offset (ties by original index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedProblem {
    pub star: usize,
    pub k: u32,
    /// Target count including the dummy, for the precision bounds.
    pub size: usize,
    pub delta_d_star: Rational,
    pub delta_star: Rational,
    pub uu_d_star: Rational,
    pub a: Rational,
    pub others: Vec<usize>,
    pub deltas: Vec<Rational>,
    pub offsets: Vec<Rational>,
    pub sort_perm: Vec<usize>,
    /// `δ_{0,star} = -U^u_A(star)` when the game has a dummy.
    pub dummy_offset: Option<Rational>,
}

impl ReducedProblem {
    /// Number of non-star real targets.
    pub fn m(&self) -> usize {
        self.others.len()
    }

    /// `Δ` of the target at sorted position `j`.
    pub fn sorted_delta(&self, j: usize) -> &Rational {
        &self.deltas[self.sort_perm[j]]
    }

    /// `δ` of the target at sorted position `j`.
    pub fn sorted_offset(&self, j: usize) -> &Rational {
        &self.offsets[self.sort_perm[j]]
    }

    /// Original target index at sorted position `j`.
    pub fn sorted_target(&self, j: usize) -> usize {
        self.others[self.sort_perm[j]]
    }

    pub fn n_real(&self) -> usize {
        self.others.len() + 1
    }
}

pub fn derive_reduced(inst: &AuditGameInstance, star: usize) -> Result<ReducedProblem, ModelError> {
    let st = inst.targets.get(star).ok_or(ModelError::BadIndex(star))?;
    let others: Vec<usize> = (0..inst.n()).filter(|&i| i != star).collect();
    let deltas: Vec<Rational> = others.iter().map(|&i| &inst.targets[i].uu_a - &inst.targets[i].ua_a).collect();
    let offsets: Vec<Rational> = others.iter().map(|&i| &inst.targets[i].uu_a - &st.uu_a).collect();
    let mut sort_perm: Vec<usize> = (0..others.len()).collect();
    // positions are already in index order, so a stable sort breaks ties
    sort_perm.sort_by(|&p, &q| offsets[p].cmp(&offsets[q]));
    Ok(ReducedProblem {
        star,
        k: inst.k,
        size: inst.size(),
        delta_d_star: &st.ua_d - &st.uu_d,
        delta_star: &st.uu_a - &st.ua_a,
        uu_d_star: st.uu_d.clone(),
        a: inst.a.clone(),
        others,
        deltas,
        offsets,
        sort_perm,
        dummy_offset: inst.has_dummy.then(|| -st.uu_a.clone()),
    })
}

/// Fixture used across the tests and docs: two targets, `a = 1`, `K = 4`.
pub fn fixture_e1() -> AuditGameInstance {
    let t = |uu_a: Rational| TargetUtilities::new(Rational::zero(), arith::int(-2), Rational::zero(), uu_a);
    AuditGameInstance {
        targets: vec![t(arith::int(1)), t(arith::ratio(1, 2))],
        a: arith::int(1),
        k: 4,
        has_dummy: false,
    }
}

#[cfg(test)]
mod tests;
