use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::arith::{int, ratio};
use crate::game_model::{derive_reduced, fixture_e1, TargetUtilities, AuditGameInstance};
use crate::stackelberg_solver::CandidateSource;

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

#[test]
fn e1_x0_lp() {
    // max 2 p2 s.t. p2 (0 + 1/2) + 1/2 <= p1 (0 + 1), p1 + p2 = 1, 0 <= p <= 1
    let mut lp = LinearProgram::new(vec![int(0), int(2)]);
    lp.bounds = vec![VarBounds::between(int(0), int(1)); 2];
    lp.push(vec![int(-1), ratio(1, 2)], Relation::Le, ratio(-1, 2));
    lp.push(v(&[1, 1]), Relation::Eq, int(1));
    let out = solve_lp(&lp).unwrap();
    assert_eq!(out.status, LpStatus::Optimal);
    assert_eq!(out.point, vec![ratio(2, 3), ratio(1, 3)]);
    assert_eq!(out.value, ratio(2, 3));
}

#[test]
fn infeasible_and_unbounded() {
    let mut lp = LinearProgram::new(v(&[1]));
    lp.bounds = vec![VarBounds::nonneg()];
    lp.push(v(&[1]), Relation::Le, int(-1));
    assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);

    let mut lp = LinearProgram::new(v(&[1, 1]));
    lp.bounds = vec![VarBounds::nonneg(); 2];
    lp.push(v(&[1, -1]), Relation::Le, int(2));
    assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
}

#[test]
fn simple_bound() {
    let mut lp = LinearProgram::new(v(&[1]));
    lp.push(v(&[1]), Relation::Le, int(1));
    lp.push(v(&[-1]), Relation::Le, int(0));
    let out = solve_lp(&lp).unwrap();
    assert_eq!((out.status, out.point, out.value), (LpStatus::Optimal, v(&[1]), int(1)));
}

#[test]
fn free_variables_and_redundant_rows() {
    // x + y = 2 twice, x - y <= 0, maximize x with both free
    let mut lp = LinearProgram::new(v(&[1, 0]));
    lp.push(v(&[1, 1]), Relation::Eq, int(2));
    lp.push(v(&[2, 2]), Relation::Eq, int(4));
    lp.push(v(&[1, -1]), Relation::Le, int(0));
    let out = solve_lp(&lp).unwrap();
    assert_eq!(out.point, v(&[1, 1]));
    // x in [-3, -1], maximize -x
    let mut lp = LinearProgram::new(v(&[-1]));
    lp.bounds = vec![VarBounds::between(int(-3), int(-1))];
    assert_eq!(solve_lp(&lp).unwrap().point, v(&[-3]));
}

#[test]
fn malformed_and_strict_inputs() {
    let mut lp = LinearProgram::new(v(&[1, 1]));
    lp.push(v(&[1]), Relation::Le, int(1));
    assert!(matches!(solve_lp(&lp), Err(LpError::Malformed(_))));
    let mut lp = LinearProgram::new(v(&[1]));
    lp.push(v(&[1]), Relation::Lt, int(1));
    assert_eq!(solve_lp(&lp).unwrap_err(), LpError::StrictConstraint(0));
}

#[test]
fn strict_feasibility() {
    // 0 <= x, x < 0 has no solution; 0 <= x < 1/2 does
    let mut lp = LinearProgram::new(v(&[0]));
    lp.bounds = vec![VarBounds::nonneg()];
    lp.push(v(&[1]), Relation::Lt, int(0));
    assert_eq!(find_feasible(&lp).unwrap(), None);
    let mut lp = LinearProgram::new(v(&[0]));
    lp.bounds = vec![VarBounds::nonneg()];
    lp.push(v(&[2]), Relation::Lt, int(1));
    let p = find_feasible(&lp).unwrap().unwrap();
    assert!(lp.is_feasible_point(&p));
    // x + y = 1, x < y, y < x + 1/4
    let mut lp = LinearProgram::new(v(&[0, 0]));
    lp.push(v(&[1, 1]), Relation::Eq, int(1));
    lp.push(v(&[1, -1]), Relation::Lt, int(0));
    lp.push(vec![int(-1), int(1)], Relation::Lt, ratio(1, 4));
    let p = find_feasible(&lp).unwrap().unwrap();
    assert!(lp.is_feasible_point(&p));
}

#[test]
fn boundary_x0_on_e1() {
    let (c, st) = solve_boundary_x0(&derive_reduced(&fixture_e1(), 1).unwrap()).unwrap();
    assert_eq!(c.source, CandidateSource::BoundaryX0);
    assert_eq!(c.x, int(0));
    assert_eq!(c.p_n, ratio(1, 3));
    assert_eq!(c.value, ratio(2, 3));
    assert_eq!(st.probs, vec![ratio(2, 3), ratio(1, 3)]);
    let (c, _) = solve_boundary_x0(&derive_reduced(&fixture_e1(), 0).unwrap()).unwrap();
    assert_eq!(c.p_n, ratio(2, 3));
    assert_eq!(c.value, ratio(4, 3));
}

#[test]
fn boundary_pn1() {
    // E1: star 1 at p1 = 1 needs Δ_1 + δ_2 <= 0, which fails
    assert!(solve_boundary_pn1(&derive_reduced(&fixture_e1(), 0).unwrap()).is_none());
    // a target the attacker never prefers
    let hi = TargetUtilities::new(int(1), int(-1), int(-1), int(1));
    let lo = TargetUtilities::new(int(0), int(-1), int(-2), int(-1));
    let inst = AuditGameInstance { targets: vec![hi, lo], a: int(0), k: 4, has_dummy: false };
    let (c, st) = solve_boundary_pn1(&derive_reduced(&inst, 0).unwrap()).unwrap();
    assert_eq!(c.x, int(0));
    assert_eq!(c.value, int(2));
    assert_eq!(st.probs, vec![int(1), int(0)]);
}

#[test]
fn boundary_x0_with_dummy_single_target() {
    // one real target plus dummy: p0 takes what the target cannot
    let t = TargetUtilities::new(int(1), int(-1), int(-1), ratio(1, 2));
    let inst = AuditGameInstance { targets: vec![t], a: int(0), k: 4, has_dummy: true };
    let rp = derive_reduced(&inst, 0).unwrap();
    // Δ_n p <= -δ_0 = 1/2 with Δ_n = 3/2 caps p at 1/3
    let (c, st) = solve_boundary_x0(&rp).unwrap();
    assert_eq!(c.p_n, ratio(1, 3));
    assert_eq!(st.dummy, Some(ratio(2, 3)));
    assert!(st.is_valid());
}

// ---- vertex enumeration oracle ----

/// Solves the square system `a x = b` by Gaussian elimination; `None` if
/// singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Best objective value over all basic feasible points of a bounded LP.
fn vertex_oracle(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars();
    let mut rows: Vec<(Vec<Rational>, Rational)> = lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    for (j, bd) in lp.bounds.iter().enumerate() {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        for b in [&bd.lo, &bd.hi].into_iter().flatten() {
            rows.push((e.clone(), b.clone()));
        }
    }
    let mut best: Option<Rational> = None;
    let r = rows.len();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let pick: Vec<_> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let a = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let b = pick.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if lp.is_feasible_point(&x) {
                let val = lp.value_at(&x);
                if best.as_ref().is_none_or(|b| val > *b) {
                    best = Some(val);
                }
            }
        }
    }
    best
}

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

prop_compose! {
    fn bounded_lp()(n in 1usize..=3)
        (obj in prop::collection::vec(small(), n),
         rows in prop::collection::vec((prop::collection::vec(small(), n), small(), 0u8..4), 0..=4),
         n in Just(n)) -> LinearProgram {
        let mut lp = LinearProgram::new(obj);
        lp.bounds = vec![VarBounds::between(int(-2), int(3)); n];
        for (c, rhs, k) in rows {
            let rel = if k == 0 { Relation::Eq } else { Relation::Le };
            lp.push(c, rel, rhs);
        }
        lp
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn simplex_matches_vertex_enumeration(lp in bounded_lp()) {
        let out = solve_lp(&lp).unwrap();
        match vertex_oracle(&lp) {
            None => prop_assert_eq!(out.status, LpStatus::Infeasible),
            Some(best) => {
                prop_assert_eq!(out.status, LpStatus::Optimal);
                prop_assert!(lp.is_feasible_point(&out.point));
                prop_assert_eq!(lp.value_at(&out.point), out.value.clone());
                prop_assert_eq!(out.value, best);
            }
        }
    }

    #[test]
    fn find_feasible_agrees_on_non_strict(lp in bounded_lp()) {
        let f = find_feasible(&lp).unwrap();
        prop_assert_eq!(f.is_some(), vertex_oracle(&lp).is_some());
        if let Some(p) = f {
            prop_assert!(lp.is_feasible_point(&p));
        }
    }
}
