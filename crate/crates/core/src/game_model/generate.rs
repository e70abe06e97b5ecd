use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate_instance, AuditGameInstance, TargetUtilities};
use crate::arith::{self, Rational};

/// Largest `K` the generator supports (values are drawn as `i64`).
pub const MAX_GENERATED_K: u32 = 62;

fn fixed(rng: &mut ChaCha8Rng, k: u32) -> Rational {
    let lim = 1i64 << k;
    let m = rng.gen_range(-lim + 1..lim);
    arith::dyadic(m.into(), k as u64)
}

/// Two draws `(hi, lo)` with `hi > lo`, by rejection.
fn ordered_pair(rng: &mut ChaCha8Rng, k: u32) -> (Rational, Rational) {
    loop {
        let u = fixed(rng, k);
        let v = fixed(rng, k);
        if u > v {
            return (u, v);
        }
    }
}

/// Random instance with uniform `K`-bit utilities in `(-1, 1)` and
/// `a ∈ [0, 1)`; deterministic in `seed`.
pub fn generate_random(n: usize, k: u32, seed: u64) -> AuditGameInstance {
    assert!(n >= 1, "need at least one target");
    assert!((1..=MAX_GENERATED_K).contains(&k), "K must be in 1..={MAX_GENERATED_K}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = arith::dyadic(rng.gen_range(0..1i64 << k).into(), k as u64);
    let targets = (0..n)
        .map(|_| {
            let (ua_d, uu_d) = ordered_pair(&mut rng, k);
            let (uu_a, ua_a) = ordered_pair(&mut rng, k);
            TargetUtilities::new(ua_d, uu_d, ua_a, uu_a)
        })
        .collect();
    validate_instance(AuditGameInstance { targets, a, k, has_dummy: false }).expect("generated instance is valid")
}
