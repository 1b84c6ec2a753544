//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule, so the method terminates on degenerate
//! programs. Arithmetic first runs on `Ratio<i128>` with checked operations
//! and reruns on arbitrary-precision rationals if anything overflows.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x  rel  rhs`, with all variables implicitly nonnegative.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub rel: Relation,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

/// Maximizes `objective · x` subject to `constraints` and `x ≥ 0`.
pub fn maximize(objective: &[i64], constraints: &[Constraint]) -> LpOutcome {
    if let Some(out) = solve::<Ratio<i128>>(objective, constraints) {
        return out.map(|r| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())));
    }
    solve::<BigRational>(objective, constraints)
        .expect("arbitrary precision arithmetic cannot overflow")
        .map(|r| r.clone())
}

trait Scalar: Clone + PartialOrd + Zero + One {
    fn from_i64(v: i64) -> Self;
    fn try_sub(&self, o: &Self) -> Option<Self>;
    fn try_mul(&self, o: &Self) -> Option<Self>;
    fn try_div(&self, o: &Self) -> Option<Self>;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
}

enum Generic<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

impl<T> Generic<T> {
    fn map(self, f: impl Fn(&T) -> BigRational) -> LpOutcome {
        match self {
            Generic::Optimal { x, value } => LpOutcome::Optimal { x: x.iter().map(&f).collect(), value: f(&value) },
            Generic::Infeasible => LpOutcome::Infeasible,
            Generic::Unbounded => LpOutcome::Unbounded,
        }
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    obj: Vec<T>,
    basis: Vec<usize>,
    width: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.try_div(&p)?;
            }
        }
        let support: Vec<usize> = (0..=self.width).filter(|&k| !self.rows[r][k].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| -> Option<()> {
            let f = row[c].clone();
            if f.is_zero() {
                return Some(());
            }
            for &k in &support {
                row[k] = row[k].try_sub(&f.try_mul(&pivot_row[k])?)?;
            }
            Some(())
        };
        for i in 0..self.rows.len() {
            if i != r {
                eliminate(&mut self.rows[i])?;
            }
        }
        eliminate(&mut self.obj)?;
        self.basis[r] = c;
        Some(())
    }

    /// Runs Bland's-rule pivots over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> Option<Step> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_neg()) else {
                return Some(Step::Optimal);
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rows[i][rhs].try_div(a)?;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Some(Step::Unbounded);
            };
            self.pivot(r, c)?;
        }
    }
}

fn solve<T: Scalar>(objective: &[i64], constraints: &[Constraint]) -> Option<Generic<T>> {
    let nvars = objective.len();
    let m = constraints.len();
    let slack_count = constraints.iter().filter(|c| c.rel != Relation::Eq).count();
    let mut normalized: Vec<(Vec<i64>, Relation, i64)> = Vec::with_capacity(m);
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint width must match the objective");
        if c.rhs < 0 {
            let rel = match c.rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            normalized.push((c.coeffs.iter().map(|v| -v).collect(), rel, -c.rhs));
        } else {
            normalized.push((c.coeffs.clone(), c.rel, c.rhs));
        }
    }
    let art_count = normalized.iter().filter(|c| c.1 != Relation::Le).count();
    let art_start = nvars + slack_count;
    let width = art_start + art_count;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut slack, mut art) = (nvars, art_start);
    for (coeffs, rel, rhs) in &normalized {
        let mut row = vec![T::zero(); width + 1];
        for (j, &v) in coeffs.iter().enumerate() {
            row[j] = T::from_i64(v);
        }
        row[width] = T::from_i64(*rhs);
        match rel {
            Relation::Le => {
                row[slack] = T::one();
                basis.push(slack);
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = T::from_i64(-1);
                slack += 1;
                row[art] = T::one();
                basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                row[art] = T::one();
                basis.push(art);
                art += 1;
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, obj: vec![T::zero(); width + 1], basis, width };

    if art_count > 0 {
        for j in art_start..width {
            t.obj[j] = T::one();
        }
        for i in 0..m {
            if t.basis[i] >= art_start {
                for k in 0..=width {
                    t.obj[k] = t.obj[k].try_sub(&t.rows[i][k])?;
                }
            }
        }
        t.run(width)?;
        if t.obj[width].is_neg() {
            return Some(Generic::Infeasible);
        }
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j)?;
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    t.obj = vec![T::zero(); width + 1];
    for (j, &c) in objective.iter().enumerate() {
        t.obj[j] = T::from_i64(-c);
    }
    for i in 0..t.rows.len() {
        let f = t.obj[t.basis[i]].clone();
        if !f.is_zero() {
            for k in 0..=width {
                t.obj[k] = t.obj[k].try_sub(&f.try_mul(&t.rows[i][k])?)?;
            }
        }
    }
    match t.run(art_start)? {
        Step::Unbounded => Some(Generic::Unbounded),
        Step::Optimal => {
            let mut x = vec![T::zero(); nvars];
            for (i, &b) in t.basis.iter().enumerate() {
                if b < nvars {
                    x[b] = t.rows[i][width].clone();
                }
            }
            Some(Generic::Optimal { x, value: t.obj[width].clone() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint { coeffs: coeffs.to_vec(), rel, rhs }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y : x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18
        let out = maximize(
            &[3, 5],
            &[c(&[1, 0], Relation::Le, 4), c(&[0, 2], Relation::Le, 12), c(&[3, 2], Relation::Le, 18)],
        );
        assert_eq!(out, LpOutcome::Optimal { x: vec![q(2, 1), q(6, 1)], value: q(36, 1) });
    }

    #[test]
    fn fractional_optimum_with_ge_rows() {
        // max x + y : 2x + y ≤ 2, x + 3y ≤ 3, x + y ≥ 1/2·2
        let out = maximize(
            &[1, 1],
            &[c(&[2, 1], Relation::Le, 2), c(&[1, 3], Relation::Le, 3), c(&[2, 2], Relation::Ge, 1)],
        );
        assert_eq!(out, LpOutcome::Optimal { x: vec![q(3, 5), q(4, 5)], value: q(7, 5) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let inf = maximize(&[1], &[c(&[1], Relation::Le, 1), c(&[1], Relation::Ge, 2)]);
        assert_eq!(inf, LpOutcome::Infeasible);
        let unb = maximize(&[1, 0], &[c(&[0, 1], Relation::Le, 1)]);
        assert_eq!(unb, LpOutcome::Unbounded);
    }

    #[test]
    fn equality_rows_and_redundancy() {
        // x + y = 1 twice, max x
        let out = maximize(&[1, 0], &[c(&[1, 1], Relation::Eq, 1), c(&[1, 1], Relation::Eq, 1)]);
        assert_eq!(out, LpOutcome::Optimal { x: vec![q(1, 1), q(0, 1)], value: q(1, 1) });
    }

    #[test]
    fn negative_right_hand_side() {
        // -x ≤ -2  means x ≥ 2; min x via max -x
        let out = maximize(&[-1], &[c(&[-1], Relation::Le, -2)]);
        assert_eq!(out, LpOutcome::Optimal { x: vec![q(2, 1)], value: q(-2, 1) });
    }
}
