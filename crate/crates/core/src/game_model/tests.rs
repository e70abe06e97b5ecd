use proptest::prelude::*;

use super::*;
use crate::arith::{int, ratio};

#[test]
fn e1_is_valid() {
    let e1 = fixture_e1();
    assert_eq!(validate_instance(e1.clone()), Ok(e1));
}

#[test]
fn order_violation_names_target() {
    let mut e1 = fixture_e1();
    e1.targets[0].ua_d = int(-3);
    assert_eq!(
        validate_instance(e1),
        Err(ModelError::UtilityOrderViolation { target: 1, rule: "ua_d > uu_d" })
    );
}

#[test]
fn dummy_is_accepted() {
    let mut e1 = fixture_e1();
    e1.has_dummy = true;
    assert!(validate_instance(e1).is_ok());
}

#[test]
fn empty_and_precision_errors() {
    let mut e = fixture_e1();
    e.targets.clear();
    assert_eq!(validate_instance(e), Err(ModelError::EmptyInstance));
    let mut e = fixture_e1();
    e.targets[1].uu_a = ratio(1, 32);
    assert!(matches!(validate_instance(e), Err(ModelError::PrecisionViolation { .. })));
    let mut e = fixture_e1();
    e.targets[1].uu_a = ratio(1, 3);
    assert!(matches!(validate_instance(e), Err(ModelError::PrecisionViolation { .. })));
    let mut e = fixture_e1();
    e.a = int(17);
    assert!(matches!(validate_instance(e), Err(ModelError::PrecisionViolation { .. })));
    let mut e = fixture_e1();
    e.a = int(16);
    assert!(validate_instance(e).is_ok());
}

#[test]
fn reduced_e1() {
    let e1 = fixture_e1();
    let rp = derive_reduced(&e1, 1).unwrap();
    assert_eq!(rp.delta_d_star, int(2));
    assert_eq!(rp.deltas, vec![int(1)]);
    assert_eq!(rp.offsets, vec![ratio(1, 2)]);
    assert_eq!(rp.uu_d_star, int(-2));
    let rp = derive_reduced(&e1, 0).unwrap();
    assert_eq!(rp.delta_d_star, int(2));
    assert_eq!(rp.deltas, vec![ratio(1, 2)]);
    assert_eq!(rp.offsets, vec![ratio(-1, 2)]);
    assert_eq!(rp.dummy_offset, None);
    assert_eq!(derive_reduced(&e1, 2), Err(ModelError::BadIndex(2)));
}

#[test]
fn reduced_with_dummy() {
    let mut e1 = fixture_e1();
    e1.has_dummy = true;
    let rp = derive_reduced(&e1, 0).unwrap();
    assert_eq!(rp.dummy_offset, Some(int(-1)));
    assert_eq!(rp.size, 3);
}

#[test]
fn parse_round_trip_and_normalise() {
    let e1 = fixture_e1();
    let bytes = serialize_instance(&e1);
    assert_eq!(parse_instance(&bytes), Ok(e1.clone()));
    let text = r#"{"a": "2/2", "K": 4, "dummy": false, "targets": [
        {"ua_d": 0, "uu_d": "-2", "ua_a": "0", "uu_a": "1"},
        {"ua_d": "0", "uu_d": -2, "ua_a": "0/5", "uu_a": "3/6"}]}"#;
    let parsed = parse_instance(text.as_bytes()).unwrap();
    assert_eq!(parsed, e1);
    assert_eq!(serialize_instance(&parsed), bytes);
}

#[test]
fn parse_errors() {
    let neg = r#"{"a": "-1/2", "K": 4, "targets": [{"ua_d": 0, "uu_d": -2, "ua_a": 0, "uu_a": 1}]}"#;
    assert!(matches!(parse_instance(neg.as_bytes()), Err(ModelError::NegativeCoefficient(_))));
    let bad = r#"{"a": "1", "K": 4, "targets": [{"ua_d": 0, "uu_d": -2, "ua_a": [], "uu_a": 1}]}"#;
    match parse_instance(bad.as_bytes()) {
        Err(ModelError::SyntaxError { path, line, .. }) => {
            assert_eq!(path, "targets[0].ua_a");
            assert_eq!(line, 1);
        }
        other => panic!("unexpected {other:?}"),
    }
    let text = r#"{"a": "1", "K": 4, "targets": [{"ua_d": "x", "uu_d": -2, "ua_a": 0, "uu_a": 1}]}"#;
    match parse_instance(text.as_bytes()) {
        Err(ModelError::SyntaxError { path, .. }) => assert_eq!(path, "targets[0].ua_d"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn generator_is_deterministic() {
    assert_eq!(generate_random(3, 4, 7), generate_random(3, 4, 7));
    assert_ne!(generate_random(3, 4, 7), generate_random(3, 4, 8));
    let one = generate_random(1, 2, 0);
    assert_eq!(one.n(), 1);
}

proptest! {
    #[test]
    fn generated_instances_validate_and_reduce(n in 1usize..8, k in 1u32..20, seed in any::<u64>()) {
        let inst = generate_random(n, k, seed);
        prop_assert_eq!(validate_instance(inst.clone()), Ok(inst.clone()));
        prop_assert_eq!(parse_instance(&serialize_instance(&inst)), Ok(inst.clone()));
        for star in 0..n {
            let rp = derive_reduced(&inst, star).unwrap();
            prop_assert!(rp.delta_d_star > Rational::zero());
            prop_assert!(rp.delta_star > Rational::zero());
            prop_assert!(rp.deltas.iter().all(|d| *d > Rational::zero()));
            prop_assert!(!rp.others.contains(&star));
            for j in 1..rp.m() {
                prop_assert!(rp.sorted_offset(j - 1) <= rp.sorted_offset(j));
            }
            // unsorting recovers the original order
            let mut back: Vec<usize> = (0..rp.m()).map(|j| rp.sorted_target(j)).collect();
            back.sort();
            prop_assert_eq!(&back, &rp.others);
            for (pos, &i) in rp.others.iter().enumerate() {
                prop_assert_eq!(&rp.offsets[pos], &(&inst.targets[i].uu_a - &inst.targets[star].uu_a));
            }
        }
    }
}
