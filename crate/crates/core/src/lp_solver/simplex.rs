use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpOutcome, LpStatus, Relation};
use crate::arith::Rational;

/// `x_j = offset + Σ sign · y_col` over the non-negative standard-form
/// variables `y`.
struct VarMap {
    offset: Rational,
    cols: Vec<(usize, bool)>,
}

struct Row {
    coeffs: Vec<Rational>,
    eq: bool,
    rhs: Rational,
}

/// Integer tableau; the real entries are `t[i][j] / det`.
struct Tableau {
    t: Vec<Vec<BigInt>>,
    z: Vec<BigInt>,
    det: BigInt,
    basis: Vec<usize>,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.z.len() - 1
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.t[r][s].clone();
        debug_assert!(p.is_positive());
        let det = std::mem::replace(&mut self.det, p.clone());
        let row_r = self.t[r].clone();
        let update = |row: &mut Vec<BigInt>| {
            let f = row[s].clone();
            for (v, rv) in row.iter_mut().zip(&row_r) {
                let num = &*v * &p - &f * rv;
                *v = if det.is_one() { num } else { num / &det };
            }
        };
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                update(row);
            }
        }
        update(&mut self.z);
        self.basis[r] = s;
    }

    /// Runs Bland's rule to optimality. Returns false if unbounded.
    fn run(&mut self) -> bool {
        let rc = self.rhs_col();
        loop {
            let Some(s) = (0..rc).find(|&j| self.allowed[j] && self.z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<usize> = None;
            for r in 0..self.t.len() {
                if !self.t[r][s].is_positive() {
                    continue;
                }
                best = Some(match best {
                    None => r,
                    Some(b) => {
                        // t[r][rc] / t[r][s] vs t[b][rc] / t[b][s]
                        let lhs = &self.t[r][rc] * &self.t[b][s];
                        let rhs = &self.t[b][rc] * &self.t[r][s];
                        match lhs.cmp(&rhs) {
                            Ordering::Less => r,
                            Ordering::Equal if self.basis[r] < self.basis[b] => r,
                            _ => b,
                        }
                    }
                });
            }
            match best {
                Some(r) => self.pivot(r, s),
                None => return false,
            }
        }
    }
}

fn lcm_denoms<'a>(vals: impl Iterator<Item = &'a Rational>) -> BigInt {
    vals.fold(BigInt::one(), |l, v| l.lcm(v.denom()))
}

fn scaled(vals: &[Rational], m: &BigInt) -> Vec<BigInt> {
    vals.iter().map(|v| (v.numer() * m) / v.denom()).collect()
}

pub(super) fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();
    let mut maps = Vec::with_capacity(n);
    let mut ny = 0;
    let mut rows: Vec<Row> = Vec::new();
    let mut upper: Vec<(usize, Rational)> = Vec::new();
    for b in &lp.bounds {
        let m = match (&b.lo, &b.hi) {
            (Some(l), h) => {
                if let Some(h) = h {
                    upper.push((ny, h - l));
                }
                VarMap { offset: l.clone(), cols: vec![(ny, true)] }
            }
            (None, Some(h)) => VarMap { offset: h.clone(), cols: vec![(ny, false)] },
            (None, None) => {
                ny += 1;
                VarMap { offset: Rational::zero(), cols: vec![(ny - 1, true), (ny, false)] }
            }
        };
        ny += 1;
        maps.push(m);
    }
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); ny];
        let mut rhs = c.rhs.clone();
        for (a, m) in c.coeffs.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            rhs -= a * &m.offset;
            for &(col, pos) in &m.cols {
                if pos {
                    coeffs[col] += a;
                } else {
                    coeffs[col] -= a;
                }
            }
        }
        rows.push(Row { coeffs, eq: c.rel == Relation::Eq, rhs });
    }
    for (col, h) in upper {
        let mut coeffs = vec![Rational::zero(); ny];
        coeffs[col] = Rational::one();
        rows.push(Row { coeffs, eq: false, rhs: h });
    }

    // columns: y (ny) | slacks | artificials | rhs
    let m = rows.len();
    let n_slack = rows.iter().filter(|r| !r.eq).count();
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    let mut needs_art = Vec::with_capacity(m);
    let mut slack_of = vec![None; m];
    let mut next_slack = ny;
    for (i, r) in rows.iter().enumerate() {
        let scale = lcm_denoms(r.coeffs.iter().chain(std::iter::once(&r.rhs)));
        let mut v = scaled(&r.coeffs, &scale);
        let mut rhs = (r.rhs.numer() * &scale) / r.rhs.denom();
        let flip = rhs.is_negative();
        if flip {
            v.iter_mut().for_each(|c| *c = -&*c);
            rhs = -rhs;
        }
        let mut full = v;
        full.resize(ny + n_slack, BigInt::zero());
        if !r.eq {
            full[next_slack] = if flip { -BigInt::one() } else { BigInt::one() };
            slack_of[i] = Some(next_slack);
            next_slack += 1;
        }
        needs_art.push(r.eq || flip);
        full.push(rhs);
        int_rows.push(full);
    }
    let n_art = needs_art.iter().filter(|&&a| a).count();
    let width = ny + n_slack + n_art;
    let mut basis = Vec::with_capacity(m);
    let mut next_art = ny + n_slack;
    for (i, row) in int_rows.iter_mut().enumerate() {
        let rhs = row.pop().expect("rhs");
        row.resize(width, BigInt::zero());
        if needs_art[i] {
            row[next_art] = BigInt::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack_of[i].expect("slack row"));
        }
        row.push(rhs);
    }
    let is_art = |j: usize| j >= ny + n_slack && j < width;

    // phase 1: maximise -Σ artificials
    let mut z = vec![BigInt::zero(); width + 1];
    for (i, row) in int_rows.iter().enumerate() {
        if needs_art[i] {
            for (j, v) in row.iter().enumerate() {
                if !is_art(j) {
                    z[j] -= v;
                }
            }
        }
    }
    let mut tab = Tableau { t: int_rows, z, det: BigInt::one(), basis, allowed: vec![true; width] };
    if n_art > 0 {
        tab.run();
        if !tab.z[width].is_zero() {
            return infeasible();
        }
        // drive zero-level artificials out of the basis
        let mut r = 0;
        while r < tab.t.len() {
            if !is_art(tab.basis[r]) {
                r += 1;
                continue;
            }
            match (0..width).find(|&j| !is_art(j) && !tab.t[r][j].is_zero()) {
                None => {
                    tab.t.remove(r);
                    tab.basis.remove(r);
                }
                Some(j) => {
                    if tab.t[r][j].is_negative() {
                        tab.t[r].iter_mut().for_each(|v| *v = -&*v);
                    }
                    tab.pivot(r, j);
                    r += 1;
                }
            }
        }
        for j in ny + n_slack..width {
            tab.allowed[j] = false;
        }
    }

    // phase 2
    let mut cy = vec![Rational::zero(); width];
    for (c, m) in lp.objective.iter().zip(&maps) {
        for &(col, pos) in &m.cols {
            if pos {
                cy[col] += c;
            } else {
                cy[col] -= c;
            }
        }
    }
    let cs = lcm_denoms(cy.iter());
    let c = scaled(&cy, &cs);
    let mut z: Vec<BigInt> = c.iter().map(|v| -(v * &tab.det)).collect();
    z.push(BigInt::zero());
    for (r, &b) in tab.basis.iter().enumerate() {
        if !c[b].is_zero() {
            for (zj, t) in z.iter_mut().zip(&tab.t[r]) {
                *zj += &c[b] * t;
            }
        }
    }
    tab.z = z;
    if !tab.run() {
        return LpOutcome { status: LpStatus::Unbounded, point: Vec::new(), value: Rational::zero() };
    }
    let mut y = vec![Rational::zero(); width];
    let rc = tab.rhs_col();
    for (r, &b) in tab.basis.iter().enumerate() {
        y[b] = Rational::new(tab.t[r][rc].clone(), tab.det.clone());
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|m| {
            m.cols.iter().fold(m.offset.clone(), |acc, &(col, pos)| if pos { acc + &y[col] } else { acc - &y[col] })
        })
        .collect();
    let value = lp.value_at(&point);
    LpOutcome { status: LpStatus::Optimal, point, value }
}

fn infeasible() -> LpOutcome {
    LpOutcome { status: LpStatus::Infeasible, point: Vec::new(), value: Rational::zero() }
}
