//! Exact two-phase simplex on a fraction-free integer tableau.
//!
//! The tableau holds integers `T` and a common denominator `D > 0`; the
//! rational tableau is `T / D`. A pivot on `p = T[r][k]` replaces every other
//! entry by `(p * T[i][j] - T[i][k] * T[r][j]) / D` (always an exact
//! division) and sets `D = p`. Entering and leaving variables follow Bland's
//! rule, so degenerate pivots cannot cycle.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait Entry: Clone + Ord + std::fmt::Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn sign(&self) -> Ordering;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// `(p * a - b * c) / d`, exact.
    fn cross(p: &Self, a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
}

impl Entry for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn cross(p: &Self, a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        let num = p.checked_mul(*a)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % d, 0);
        Some(num / d)
    }
}

impl Entry for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn cross(p: &Self, a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        let num = p * a - b * c;
        let (q, r) = num.div_rem(d);
        debug_assert!(r.is_zero());
        Some(q)
    }
}

/// Standard-form problem `A y = b, y >= 0` with a starting basis; every
/// `b_i >= 0`.
#[derive(Clone, Debug)]
pub(crate) struct Problem {
    /// Rows of `A` with `b` appended as the last column.
    pub rows: Vec<Vec<BigInt>>,
    /// Basic column of each row in the starting basis (an identity column).
    pub basis: Vec<usize>,
    /// Columns that start basic only to make the basis feasible; they are
    /// driven to zero in phase one and never re-enter.
    pub artificial: Vec<usize>,
}

pub(crate) enum Outcome {
    Infeasible,
    Unbounded,
    /// Value of every column at the optimum, as `(numerator, denominator)`.
    Optimal(Vec<BigInt>, BigInt),
}

struct Tableau<N> {
    rows: Vec<Vec<N>>,
    obj: Vec<N>,
    basis: Vec<usize>,
    denom: N,
    rhs: usize,
}

impl<N: Entry> Tableau<N> {
    fn pivot(&mut self, r: usize, k: usize) -> Option<()> {
        let p = self.rows[r][k].clone();
        let d = self.denom.clone();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update_row(row, &pivot_row, &p, k, &d)?;
            }
        }
        update_row(&mut self.obj, &pivot_row, &p, k, &d)?;
        self.denom = p;
        self.basis[r] = k;
        if self.denom.sign() == Ordering::Less {
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.obj)) {
                for v in row.iter_mut() {
                    *v = v.neg();
                }
            }
            self.denom = self.denom.neg();
        }
        Some(())
    }

    /// Maximizes the objective encoded in `obj` (reduced costs; optimal
    /// once none is negative). `Ok(false)` means unbounded.
    fn optimize(&mut self, banned: &[bool]) -> Option<bool> {
        loop {
            let entering = (0..self.rhs)
                .find(|&j| !banned[j] && self.obj[j].sign() == Ordering::Less);
            let Some(k) = entering else {
                return Some(true);
            };
            let mut leaving: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][k].sign() != Ordering::Greater {
                    continue;
                }
                leaving = match leaving {
                    None => Some(i),
                    Some(best) => {
                        // rows[i][rhs]/rows[i][k] vs rows[best][rhs]/rows[best][k]
                        let lhs = self.rows[i][self.rhs].mul(&self.rows[best][k])?;
                        let rhs = self.rows[best][self.rhs].mul(&self.rows[i][k])?;
                        match lhs.cmp(&rhs) {
                            Ordering::Less => Some(i),
                            Ordering::Equal if self.basis[i] < self.basis[best] => Some(i),
                            _ => Some(best),
                        }
                    }
                };
            }
            let Some(r) = leaving else {
                return Some(false);
            };
            self.pivot(r, k)?;
        }
    }

    /// Objective row for maximizing `sum c_j y_j` in the current basis.
    fn price(&mut self, cost: &[i64]) -> Option<()> {
        let width = self.rhs + 1;
        let mut obj = vec![N::zero(); width];
        for (j, o) in obj.iter_mut().enumerate() {
            let mut acc = <BigInt as Zero>::zero();
            for (i, row) in self.rows.iter().enumerate() {
                let c = cost[self.basis[i]];
                if c != 0 {
                    acc += row[j].to_big() * c;
                }
            }
            if j < self.rhs && cost[j] != 0 {
                acc -= self.denom.to_big() * cost[j];
            }
            *o = N::from_big(&acc)?;
        }
        self.obj = obj;
        Some(())
    }
}

fn update_row<N: Entry>(row: &mut [N], pivot_row: &[N], p: &N, k: usize, d: &N) -> Option<()> {
    let factor = row[k].clone();
    for (v, pr) in row.iter_mut().zip(pivot_row) {
        *v = N::cross(p, v, &factor, pr, d)?;
    }
    Some(())
}

/// Maximizes `sum cost_j y_j`. Returns `None` only when the arithmetic type
/// overflowed.
fn solve_with<N: Entry>(problem: &Problem, cost: &[i64]) -> Option<Outcome> {
    let width = problem.rows.first().map_or(0, Vec::len);
    let rhs = width - 1;
    let rows = problem
        .rows
        .iter()
        .map(|r| r.iter().map(N::from_big).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let mut t = Tableau {
        rows,
        obj: vec![N::zero(); width],
        basis: problem.basis.clone(),
        denom: N::from_big(&BigInt::from(1))?,
        rhs,
    };
    let mut banned = vec![false; rhs];
    if !problem.artificial.is_empty() {
        let mut phase_one = vec![0i64; rhs];
        for &a in &problem.artificial {
            phase_one[a] = -1;
            banned[a] = true;
        }
        t.price(&phase_one)?;
        if !t.optimize(&banned)? {
            return Some(Outcome::Unbounded);
        }
        if t.obj[rhs].sign() == Ordering::Less {
            return Some(Outcome::Infeasible);
        }
        // Drive zero-valued artificials out of the basis where possible.
        for r in 0..t.rows.len() {
            if !banned[t.basis[r]] {
                continue;
            }
            if let Some(k) = (0..rhs).find(|&k| !banned[k] && t.rows[r][k].sign() != Ordering::Equal)
            {
                t.pivot(r, k)?;
            }
        }
    }
    t.price(cost)?;
    if !t.optimize(&banned)? {
        return Some(Outcome::Unbounded);
    }
    let mut values = vec![<BigInt as Zero>::zero(); rhs];
    for (i, &b) in t.basis.iter().enumerate() {
        values[b] = t.rows[i][rhs].to_big();
    }
    Some(Outcome::Optimal(values, t.denom.to_big()))
}

pub(crate) fn solve(problem: &Problem, cost: &[i64]) -> Outcome {
    match solve_with::<i128>(problem, cost) {
        Some(out) => out,
        None => solve_with::<BigInt>(problem, cost).expect("big integers do not overflow"),
    }
}
