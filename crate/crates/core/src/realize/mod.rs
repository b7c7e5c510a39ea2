//! Realizability of genetic codes by exact linear feasibility.
//!
//! A code is realized by a generic length vector iff the homogeneous system
//! "every gee plus `n` is short, every minimal non-subgee plus `n` is long,
//! `0 < l_1 <= ... <= l_n`" has a solution. Strict rows are handled by
//! maximizing a common slack `t` over the normalized simplex `sum x = 1`.

mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gale::{GeneticCode, IndexSet};
use crate::lengths::LengthVector;
use simplex::{Outcome, Problem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `a . x > 0`
    Positive,
    /// `a . x >= 0`
    NonNegative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
}

/// Homogeneous constraints over nonnegative variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, coeffs: Vec<BigRational>, relation: Relation) -> Result<()> {
        if coeffs.len() != self.vars {
            return Err(Error::Internal(format!(
                "constraint has {} coefficients, system has {} variables",
                coeffs.len(),
                self.vars
            )));
        }
        self.constraints.push(Constraint { coeffs, relation });
        Ok(())
    }

    pub fn push_int(&mut self, coeffs: &[i64], relation: Relation) -> Result<()> {
        self.push(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
            relation,
        )
    }

    /// Whether `x` satisfies every row (strict rows strictly).
    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        self.constraints.iter().all(|c| {
            let v: BigRational = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            match c.relation {
                Relation::Positive => v.is_positive(),
                Relation::NonNegative => !v.is_negative(),
            }
        })
    }
}

/// A point `x >= 0` with `sum x = 1` satisfying the system, strict rows
/// strictly, or `None` if there is none.
pub fn lp_feasible(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    let n = sys.vars;
    let m = sys.constraints.len();
    // Columns: x (n), t, one slack per constraint, u (t <= 1), artificial a.
    let t_col = n;
    let slack = |j: usize| n + 1 + j;
    let u_col = n + 1 + m;
    let a_col = n + 2 + m;
    let width = n + m + 4;
    let mut rows = Vec::with_capacity(m + 2);
    for (j, c) in sys.constraints.iter().enumerate() {
        // Clear denominators; a positive row scaling keeps the solution set.
        let lcm = c
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut row = vec![BigInt::zero(); width];
        for (i, a) in c.coeffs.iter().enumerate() {
            row[i] = -(a.numer() * (&lcm / a.denom()));
        }
        if c.relation == Relation::Positive {
            row[t_col] = BigInt::one();
        }
        row[slack(j)] = BigInt::one();
        rows.push(row);
    }
    let mut bound = vec![BigInt::zero(); width];
    bound[t_col] = BigInt::one();
    bound[u_col] = BigInt::one();
    bound[width - 1] = BigInt::one();
    rows.push(bound);
    let mut norm = vec![BigInt::zero(); width];
    for v in norm.iter_mut().take(n) {
        *v = BigInt::one();
    }
    norm[a_col] = BigInt::one();
    norm[width - 1] = BigInt::one();
    rows.push(norm);

    let mut basis: Vec<usize> = (0..m).map(slack).collect();
    basis.push(u_col);
    basis.push(a_col);
    let problem = Problem {
        rows,
        basis,
        artificial: vec![a_col],
    };
    let mut cost = vec![0i64; width - 1];
    cost[t_col] = 1;
    match simplex::solve(&problem, &cost) {
        Outcome::Optimal(values, denom) => {
            let has_strict = sys
                .constraints
                .iter()
                .any(|c| c.relation == Relation::Positive);
            if has_strict && !values[t_col].is_positive() {
                return None;
            }
            Some(
                values[..n]
                    .iter()
                    .map(|v| BigRational::new(v.clone(), denom.clone()))
                    .collect(),
            )
        }
        Outcome::Infeasible => None,
        Outcome::Unbounded => unreachable!("slack is bounded by t <= 1"),
    }
}

/// The system "each set in `short` plus `{n}` is short, each set in `long`
/// plus `{n}` is long, and `0 < l_1 <= ... <= l_n`".
pub fn shortness_system(n: usize, short: &[IndexSet], long: &[IndexSet]) -> LinearSystem {
    let mut sys = LinearSystem::new(n);
    let mut first = vec![0i64; n];
    first[0] = 1;
    sys.push_int(&first, Relation::Positive).expect("width");
    for i in 0..n - 1 {
        let mut row = vec![0i64; n];
        row[i] = -1;
        row[i + 1] = 1;
        sys.push_int(&row, Relation::NonNegative).expect("width");
    }
    // Signed indicator: +1 on S + {n}, -1 elsewhere.
    let split = |s: IndexSet| -> Vec<i64> {
        (1..=n)
            .map(|i| if i == n || s.contains(i) { 1 } else { -1 })
            .collect()
    };
    for &s in short {
        let row: Vec<i64> = split(s).into_iter().map(|v| -v).collect();
        sys.push_int(&row, Relation::Positive).expect("width");
    }
    for &s in long {
        sys.push_int(&split(s), Relation::Positive).expect("width");
    }
    sys
}

/// Rescales a positive rational vector to coprime integers.
pub(crate) fn to_length_vector(x: &[BigRational]) -> Result<LengthVector> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    LengthVector::new(
        ints.into_iter()
            .map(|v| BigRational::from_integer(v / &gcd))
            .collect(),
    )
}

/// A generic length vector whose code is `code`, or `None` when the code is
/// not realizable.
pub fn is_realizable(code: &GeneticCode) -> Result<Option<LengthVector>> {
    if code.glem_conflict().is_some() {
        return Ok(None);
    }
    let sys = shortness_system(code.n(), code.gees(), &code.minimal_non_subgees());
    let Some(x) = lp_feasible(&sys) else {
        return Ok(None);
    };
    let witness = to_length_vector(&x)?;
    let derived = witness.genetic_code()?;
    if &derived != code {
        return Err(Error::Internal(format!(
            "witness {witness} realizes {derived}, not {code}"
        )));
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lengths::{family_vector, Family};

    fn code(s: &str) -> GeneticCode {
        s.parse().unwrap()
    }

    #[test]
    fn strict_difference() {
        let mut sys = LinearSystem::new(2);
        sys.push_int(&[-1, 1], Relation::Positive).unwrap();
        let x = lp_feasible(&sys).unwrap();
        assert!(sys.is_satisfied_by(&x));
        assert!(x[1] > x[0]);
    }

    #[test]
    fn forced_equality_is_not_strict() {
        let mut sys = LinearSystem::new(2);
        sys.push_int(&[1, -1], Relation::NonNegative).unwrap();
        sys.push_int(&[-1, 1], Relation::NonNegative).unwrap();
        sys.push_int(&[1, -1], Relation::Positive).unwrap();
        assert_eq!(lp_feasible(&sys), None);
    }

    #[test]
    fn rational_coefficients() {
        let mut sys = LinearSystem::new(2);
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        sys.push(vec![half, -third], Relation::Positive).unwrap();
        let x = lp_feasible(&sys).unwrap();
        assert!(sys.is_satisfied_by(&x));
        assert!(sys.push_int(&[1], Relation::Positive).is_err());
    }

    #[test]
    fn torus_system_round_trips() {
        let torus = family_vector(Family::Torus, 6).unwrap().genetic_code().unwrap();
        let sys = shortness_system(6, torus.gees(), &torus.minimal_non_subgees());
        let x = lp_feasible(&sys).unwrap();
        let w = to_length_vector(&x).unwrap();
        assert_eq!(w.genetic_code().unwrap().to_string(), "6:[321]");
    }

    #[test]
    fn realizability_examples() {
        let w = is_realizable(&code("7:[421|51]")).unwrap().unwrap();
        assert_eq!(w.genetic_code().unwrap(), code("7:[421|51]"));
        let bad = GeneticCode::canonicalize(6, [IndexSet::from_elements([4, 2]).unwrap()]).unwrap();
        assert_eq!(is_realizable(&bad).unwrap(), None);
        // LP alone agrees with the conflict test.
        let sys = shortness_system(6, bad.gees(), &bad.minimal_non_subgees());
        assert_eq!(lp_feasible(&sys), None);
        let w = is_realizable(&code("8:[6,3,2,1]")).unwrap().unwrap();
        assert!(w.is_generic());
        assert_eq!(w.genetic_code().unwrap(), code("8:[6321]"));
    }

    #[test]
    fn empty_code_is_realizable() {
        let w = is_realizable(&GeneticCode::empty(5)).unwrap().unwrap();
        assert!(w.genetic_code().unwrap().is_empty());
    }
}
