//! Binomial coefficients with integer upper argument, and exact checkers for
//! the binomial-sum identities behind the Stiefel-Whitney formula.
//!
//! `binom(m, k) = m (m-1) ... (m-k+1) / k!` for any integer `m` and `k >= 0`.
//! The checkers evaluate both sides with big integers (or big rationals for
//! the WZ certificate); nothing is reduced mod 2 before comparing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub fn binom_int(m: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(m) - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Parity of `binom(m, k)`: Lucas for `m >= 0`, and
/// `binom(m, k) = (-1)^k binom(k-m-1, k)` for `m < 0`.
pub fn binom_mod2(m: i64, k: u64) -> bool {
    if m >= 0 {
        k & !(m as u64) == 0
    } else {
        let top = k as i128 - m as i128 - 1;
        let top = u128::try_from(top).expect("positive");
        (k as u128) & !top == 0
    }
}

/// `binom(m-i, i) binom(i-m+k, k-i)`.
fn shifted_term(m: i64, k: i64, i: i64) -> BigInt {
    if i < 0 || i > k {
        return BigInt::zero();
    }
    binom_int(m - i, i as u64) * binom_int(i - m + k, (k - i) as u64)
}

fn shifted_sum(m: i64, k: i64) -> BigInt {
    (0..=k).map(|i| shifted_term(m, k, i)).sum()
}

/// `sum_i binom(m-i,i) binom(i-m+k,k-i)` is unchanged by `k -> k+2`.
pub fn sum_invariant_under_k_shift(m: i64, k: u64) -> bool {
    let k = k as i64;
    shifted_sum(m, k) == shifted_sum(m, k + 2)
}

/// `sum_i binom(m-i,i) binom(i-m+k,k-i)` is 1 for even `k`, 0 for odd `k`.
pub fn sum_is_parity_indicator(m: i64, k: u64) -> bool {
    let want = if k.is_multiple_of(2) { 1 } else { 0 };
    shifted_sum(m, k as i64) == BigInt::from(want)
}

/// For `d >= k - m`:
/// `sum_i binom(m-i,i) binom(i+d,k-i) = sum_j binom(m+d-1-2j, k-2j)`.
pub fn offset_sum_identity(m: i64, d: i64, k: u64) -> Result<bool> {
    let ki = k as i64;
    if d < ki - m {
        return Err(Error::Precondition(format!("need d >= k - m, got m={m} d={d} k={k}")));
    }
    let lhs: BigInt = (0..=ki)
        .map(|i| binom_int(m - i, i as u64) * binom_int(i + d, (ki - i) as u64))
        .sum();
    let rhs: BigInt = (0..=ki / 2)
        .map(|j| binom_int(m + d - 1 - 2 * j, (ki - 2 * j) as u64))
        .sum();
    Ok(lhs == rhs)
}

/// `sum_i binom(m-i,i) binom(i,k-i) = binom(m+1,k) mod 2` for `m >= k >= 0`:
/// the coefficient of `R^k` in `Sq(sum_i binom(m-i,i) R^i)` matches
/// `(1+R)^(m+1)`.
pub fn wu_square_parity(m: i64, k: u64) -> Result<bool> {
    let ki = k as i64;
    if m < ki {
        return Err(Error::Precondition(format!("need m >= k, got m={m} k={k}")));
    }
    let lhs: BigInt = (0..=ki)
        .map(|i| binom_int(m - i, i as u64) * binom_int(i, (ki - i) as u64))
        .sum();
    let rhs = binom_int(m + 1, k);
    let diff: BigInt = (lhs - rhs) % 2;
    Ok(diff.is_zero())
}

/// The named identity checks, with their arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityCase {
    KShift { m: i64, k: u64 },
    ParityIndicator { m: i64, k: u64 },
    OffsetSum { m: i64, d: i64, k: u64 },
    WuSquareParity { m: i64, k: u64 },
}

pub fn identity_check(case: IdentityCase) -> Result<bool> {
    match case {
        IdentityCase::KShift { m, k } => Ok(sum_invariant_under_k_shift(m, k)),
        IdentityCase::ParityIndicator { m, k } => Ok(sum_is_parity_indicator(m, k)),
        IdentityCase::OffsetSum { m, d, k } => offset_sum_identity(m, d, k),
        IdentityCase::WuSquareParity { m, k } => wu_square_parity(m, k),
    }
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// The certificate `G(k,i) = f(k,i) (2k-m+3)(i-m-1) i (2i-m) / ((k+1-i)(k+2-i))`
/// for `i <= k`, with `f(k,i) = binom(m-i,i) binom(i-m+k,k-i)`.
pub fn wz_certificate(m: i64, k: i64, i: i64) -> BigRational {
    assert!(i <= k, "certificate has poles at i = k+1, k+2");
    let num = shifted_term(m, k, i)
        * BigInt::from(2 * k - m + 3)
        * BigInt::from(i - m - 1)
        * BigInt::from(i)
        * BigInt::from(2 * i - m);
    BigRational::new(num, BigInt::from((k + 1 - i) * (k + 2 - i)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WzCheck {
    pub m: i64,
    pub k: u64,
    /// `(k+2)(k-m+1)(f(k,i) - f(k+2,i)) = G(k,i+1) - G(k,i)` for `0 <= i < k`.
    pub recurrence: bool,
    /// `G(k,0) = 0`.
    pub boundary: bool,
    /// `-(k+2)(k-m+1) S = G(k,k)`; `None` in the degenerate case `k-m+1 = 0`.
    pub closing: Option<bool>,
    /// When `k-m+1 = 0`: both sums of the shift identity equal the parity
    /// indicator of `k`.
    pub degenerate: Option<bool>,
}

impl WzCheck {
    pub fn passed(&self) -> bool {
        self.recurrence
            && self.boundary
            && self.closing.unwrap_or(true)
            && self.degenerate.unwrap_or(true)
    }
}

pub fn wz_certificate_check(m: i64, k: u64) -> WzCheck {
    let ki = k as i64;
    let f = |kk: i64, i: i64| shifted_term(m, kk, i);
    let scale = BigInt::from((ki + 2) * (ki - m + 1));
    let recurrence = (0..ki).all(|i| {
        let lhs = rat(&scale * (f(ki, i) - f(ki + 2, i)));
        lhs == wz_certificate(m, ki, i + 1) - wz_certificate(m, ki, i)
    });
    let boundary = wz_certificate(m, ki, 0).is_zero();
    let (closing, degenerate) = if ki - m + 1 == 0 {
        let want = BigInt::from(if k.is_multiple_of(2) { 1 } else { 0 });
        let ok = shifted_sum(m, ki) == want && shifted_sum(m, ki + 2) == want;
        (None, Some(ok))
    } else {
        let s = binom_int(m - ki, k) * (BigInt::one() - binom_int(2 * ki - m + 2, 2))
            - binom_int(m - ki - 1, k + 1) * binom_int(2 * ki - m + 3, 1)
            - binom_int(m - ki - 2, k + 2);
        let ok = rat(-&scale * s) == wz_certificate(m, ki, ki);
        (Some(ok), None)
    };
    WzCheck {
        m,
        k,
        recurrence,
        boundary,
        closing,
        degenerate,
    }
}

/// Grid bounds for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// `|m| <= max_m` and `k <= max_k` for the shift and parity identities.
    pub max_m: i64,
    pub max_k: u64,
    /// `|m| <= offset_max_m`, `k <= offset_max_k`,
    /// `0 <= d - (k - m) <= offset_max_excess` for the offset-sum identity.
    pub offset_max_m: i64,
    pub offset_max_k: u64,
    pub offset_max_excess: i64,
    /// `0 <= k <= m <= wu_max_m` for the Wu-square parity.
    pub wu_max_m: i64,
    pub wz: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_m: 20,
            max_k: 20,
            offset_max_m: 10,
            offset_max_k: 12,
            offset_max_excess: 10,
            wu_max_m: 24,
            wz: true,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityTally {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityTally {
    fn from_results(name: &'static str, results: Vec<(String, bool)>) -> Self {
        IdentityTally {
            name,
            checked: results.len(),
            failures: results
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(label, _)| label)
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub tallies: Vec<IdentityTally>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(IdentityTally::passed)
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mk_grid: Vec<(i64, u64)> = (-cfg.max_m..=cfg.max_m)
        .flat_map(|m| (0..=cfg.max_k).map(move |k| (m, k)))
        .collect();
    let label = |m: i64, k: u64| format!("m={m} k={k}");

    let shift = mk_grid
        .par_iter()
        .map(|&(m, k)| (label(m, k), sum_invariant_under_k_shift(m, k)))
        .collect();
    let parity = mk_grid
        .par_iter()
        .map(|&(m, k)| (label(m, k), sum_is_parity_indicator(m, k)))
        .collect();

    let mut offset_cells = Vec::new();
    for m in -cfg.offset_max_m..=cfg.offset_max_m {
        for k in 0..=cfg.offset_max_k {
            for excess in 0..=cfg.offset_max_excess {
                offset_cells.push((m, k as i64 - m + excess, k));
            }
        }
    }
    let offset = offset_cells
        .par_iter()
        .map(|&(m, d, k)| {
            let ok = offset_sum_identity(m, d, k).unwrap_or(false);
            (format!("m={m} d={d} k={k}"), ok)
        })
        .collect();

    let wu_cells: Vec<(i64, u64)> = (0..=cfg.wu_max_m)
        .flat_map(|m| (0..=m as u64).map(move |k| (m, k)))
        .collect();
    let wu = wu_cells
        .par_iter()
        .map(|&(m, k)| (label(m, k), wu_square_parity(m, k).unwrap_or(false)))
        .collect();

    let mut tallies = vec![
        IdentityTally::from_results("k-shift invariance", shift),
        IdentityTally::from_results("parity indicator", parity),
        IdentityTally::from_results("offset sum", offset),
        IdentityTally::from_results("wu square parity", wu),
    ];
    if cfg.wz {
        let wz = mk_grid
            .par_iter()
            .map(|&(m, k)| (label(m, k), wz_certificate_check(m, k).passed()))
            .collect();
        tallies.push(IdentityTally::from_results("wz certificate", wz));
    }
    SuiteReport { tallies }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom_int(3, 2), BigInt::from(3));
        assert_eq!(binom_int(-1, 2), BigInt::from(1));
        assert_eq!(binom_int(0, 1), BigInt::from(0));
        assert_eq!(binom_int(-5, 3), BigInt::from(-35));
        assert!(!binom_mod2(5, 2));
        assert!(binom_mod2(-5, 3));
        for m in -50..50 {
            assert!(binom_mod2(m, 0));
        }
    }

    #[test]
    fn identity_examples() {
        // 1 + 6 + 0 = 6 + 1
        assert!(offset_sum_identity(3, 2, 2).unwrap());
        assert_eq!(shifted_sum(5, 4), BigInt::from(1));
        assert!(sum_is_parity_indicator(5, 4));
        assert!(wu_square_parity(4, 2).unwrap());
        assert!(offset_sum_identity(3, -2, 2).is_err());
        assert!(wu_square_parity(2, 3).is_err());
        assert!(identity_check(IdentityCase::KShift { m: -7, k: 5 }).unwrap());
    }

    #[test]
    fn wz_examples() {
        let c = wz_certificate_check(7, 3);
        assert!(c.recurrence && c.boundary && c.closing == Some(true));
        for m in -6..=6 {
            for k in 0..6 {
                assert!(wz_certificate(m, k, 0).is_zero());
            }
        }
        // k - m + 1 = 0 with k odd: both sums vanish.
        assert_eq!(shifted_sum(4, 3), BigInt::zero());
        assert_eq!(shifted_sum(4, 5), BigInt::zero());
        let c = wz_certificate_check(4, 3);
        assert_eq!(c.closing, None);
        assert_eq!(c.degenerate, Some(true));
        assert!(wz_certificate_check(1, 0).passed());
    }

    #[test]
    fn default_suite_passes() {
        let report = run_suite(&SuiteConfig::default());
        for t in &report.tallies {
            assert!(t.passed(), "{}: {:?}", t.name, t.failures);
            assert!(t.checked > 0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn parity_matches_exact(m in -1000i64..=1000, k in 0u64..=100) {
            let rem: BigInt = binom_int(m, k) % 2;
            prop_assert_eq!(binom_mod2(m, k), !rem.is_zero());
        }
    }
}
