//! Length vectors and the short/long structure they induce.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gale::{GeneticCode, IndexSet, MAX_N};

/// Side lengths of an n-gon, kept both in input order and sorted ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct LengthVector {
    sorted: Vec<BigRational>,
    /// `order[i]` is the input position (0-based) of `sorted[i]`.
    order: Vec<usize>,
}

impl LengthVector {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        let n = values.len();
        if n < 3 {
            return Err(Error::TooFewSides(n));
        }
        if n > MAX_N {
            return Err(Error::UnsupportedN {
                n,
                min: 3,
                max: MAX_N,
            });
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositiveLength {
                index: i + 1,
                value: v.to_string(),
            });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].cmp(&values[b]).then(a.cmp(&b)));
        let sorted = order.iter().map(|&i| values[i].clone()).collect();
        Ok(LengthVector { sorted, order })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        LengthVector::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    /// Values in ascending order (the canonical indexing).
    pub fn sorted(&self) -> &[BigRational] {
        &self.sorted
    }

    /// Values in the order they were given.
    pub fn original(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.n()];
        for (s, &o) in self.order.iter().enumerate() {
            out[o] = self.sorted[s].clone();
        }
        out
    }

    /// Sorted values scaled by the common denominator.
    pub fn integer_weights(&self) -> Vec<BigInt> {
        let lcm = self
            .sorted
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        self.sorted
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect()
    }

    /// True iff no subset has exactly half the total length.
    pub fn is_generic(&self) -> bool {
        self.half_split().is_none()
    }

    /// A subset (sorted indexing, 0-based mask) summing to exactly half, if any.
    fn half_split(&self) -> Option<u64> {
        let w = self.integer_weights();
        let total: BigInt = w.iter().sum();
        if total.is_odd() {
            return None;
        }
        let target = total / 2;
        // Meet in the middle: sums over the first half, looked up from the second.
        let split = w.len() / 2;
        let left = subset_sums(&w[..split]);
        let lookup: std::collections::HashMap<&BigInt, u64> =
            left.iter().map(|(s, m)| (s, *m)).collect();
        for (s, m) in subset_sums(&w[split..]) {
            let need = &target - &s;
            if let Some(&lm) = lookup.get(&need) {
                return Some(lm | m << split);
            }
        }
        None
    }

    /// Whether the sides at `subset` (1-based input positions) are short.
    pub fn is_short(&self, subset: &[usize]) -> Result<bool> {
        let n = self.n();
        let mut chosen = vec![false; n];
        for &i in subset {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, max: n });
            }
            chosen[i - 1] = true;
        }
        let mut inside = BigRational::zero();
        let mut outside = BigRational::zero();
        for v in self.original().into_iter().zip(&chosen) {
            match v {
                (x, true) => inside += x,
                (x, false) => outside += x,
            }
        }
        match inside.cmp(&outside) {
            std::cmp::Ordering::Less => Ok(true),
            std::cmp::Ordering::Greater => Ok(false),
            std::cmp::Ordering::Equal => Err(Error::NonGeneric(format!(
                "subset {subset:?} has exactly half the total length"
            ))),
        }
    }

    /// The genetic code, computed in the sorted indexing: the Gale-maximal
    /// `T` in `[n-1]` with `T + {n}` short.
    pub fn genetic_code(&self) -> Result<GeneticCode> {
        if let Some(mask) = self.half_split() {
            let members: Vec<String> = (0..self.n())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (self.order[i] + 1).to_string())
                .collect();
            return Err(Error::NonGeneric(format!(
                "sides {{{}}} sum to half the perimeter",
                members.join(",")
            )));
        }
        let w = self.integer_weights();
        let total: BigInt = w.iter().sum();
        let gees = match (
            w.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>(),
            total.to_i64(),
        ) {
            (Some(small), Some(t)) if t < i64::MAX / 4 => {
                let small: Vec<i128> = small.into_iter().map(i128::from).collect();
                maximal_short_gees(&small, i128::from(t))
            }
            _ => maximal_short_gees(&w, total),
        };
        GeneticCode::canonicalize(self.n(), gees)
    }
}

fn subset_sums(w: &[BigInt]) -> Vec<(BigInt, u64)> {
    let mut out = vec![(BigInt::zero(), 0u64)];
    for (i, x) in w.iter().enumerate() {
        let grown: Vec<_> = out.iter().map(|(s, m)| (s + x, m | 1 << i)).collect();
        out.extend(grown);
    }
    out
}

/// Gale-maximal `T` in `[n-1]` with `2 * (w_n + sum_T w) < total`, for
/// ascending positive weights `w` (0-based, so element `i` has weight `w[i-1]`).
fn maximal_short_gees<W>(w: &[W], total: W) -> Vec<IndexSet>
where
    W: Clone + Ord + Add<Output = W> + Sub<Output = W>,
{
    let n = w.len();
    let weight = |e: usize| w[e - 1].clone();
    let short = |s: &W| s.clone() + s.clone() < total;
    let base = weight(n);
    if !short(&base) {
        return Vec::new();
    }
    let mut gees = Vec::new();
    // Depth-first over sets built in descending element order; shortness is
    // inherited by subsets, so a long set cuts its branch.
    let mut stack = vec![(IndexSet::EMPTY, base, n)];
    while let Some((t, sum, below)) = stack.pop() {
        let maximal = t.upper_moves(n - 1).into_iter().all(|u| {
            let s = if u.len() > t.len() {
                let added = u.bits() & !t.bits();
                sum.clone() + weight(added.trailing_zeros() as usize)
            } else {
                let raised = u.bits() & !t.bits();
                let dropped = t.bits() & !u.bits();
                sum.clone() + weight(raised.trailing_zeros() as usize)
                    - weight(dropped.trailing_zeros() as usize)
            };
            !short(&s)
        });
        if maximal {
            gees.push(t);
        }
        for e in 1..below {
            let s = sum.clone() + weight(e);
            if short(&s) {
                stack.push((t.with(e), s, e));
            }
        }
    }
    gees
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.original().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LengthVector({self})")
    }
}

impl FromStr for LengthVector {
    type Err = Error;

    /// Comma-separated integers or `a/b` fractions; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let values = compact
            .split(',')
            .map(|tok| {
                BigRational::from_str(tok).map_err(|e| Error::Parse {
                    what: "length vector",
                    input: s.to_string(),
                    reason: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LengthVector::new(values)
    }
}

/// The three families whose codes have `R^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Torus,
    Klein,
    Special,
}

impl Family {
    pub fn code(self, n: usize) -> GeneticCode {
        match self {
            Family::Torus => GeneticCode::torus(n),
            Family::Klein => GeneticCode::klein(n),
            Family::Special => GeneticCode::special(n),
        }
    }

    fn min_n(self) -> usize {
        match self {
            Family::Torus => 4,
            Family::Klein => 5,
            Family::Special => 6,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" => Ok(Family::Torus),
            "klein" => Ok(Family::Klein),
            "special" => Ok(Family::Special),
            _ => Err(Error::Parse {
                what: "family",
                input: s.to_string(),
                reason: "expected torus, klein or special".into(),
            }),
        }
    }
}

/// `k` tiny sides of length `1/(2k)` followed by `(1,1,1)`, `(1,1,1,2)` or
/// `(1,1,1,2,2)`. The result is checked against the family's code.
pub fn family_vector(family: Family, n: usize) -> Result<LengthVector> {
    if n < family.min_n() || n > MAX_N {
        return Err(Error::UnsupportedN {
            n,
            min: family.min_n(),
            max: MAX_N,
        });
    }
    let tail: &[i64] = match family {
        Family::Torus => &[1, 1, 1],
        Family::Klein => &[1, 1, 1, 2],
        Family::Special => &[1, 1, 1, 2, 2],
    };
    let k = n - tail.len();
    let eps = BigRational::new(BigInt::one(), BigInt::from(2 * k));
    let values: Vec<BigRational> = std::iter::repeat_n(eps, k)
        .chain(tail.iter().map(|&v| BigRational::from_integer(v.into())))
        .collect();
    let lv = LengthVector::new(values)?;
    let derived = lv
        .genetic_code()
        .map_err(|e| Error::Internal(format!("{family:?}({n}) vector: {e}")))?;
    if derived != family.code(n) {
        return Err(Error::Internal(format!(
            "{family:?}({n}) vector has code {derived}, expected {}",
            family.code(n)
        )));
    }
    Ok(lv)
}
