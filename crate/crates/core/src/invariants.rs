//! Topological invariants read off a genetic code.
//!
//! Everything here is a function of the code together with the mod-2
//! cohomology computed in [`crate::cohomology`]. The total Stiefel-Whitney
//! class of the tangent bundle is `(1 + R)^(n-2)`, so most answers reduce to
//! binomial parities and to which powers of `R` vanish.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cohomology::r_power_is_zero;
use crate::error::{Error, Result};
use crate::gale::GeneticCode;
use crate::identities::binom_mod2;

/// Degrees `i <= n-3` where `binom(n-2, i)` is odd.
pub fn sw_polynomial(n: usize) -> Vec<usize> {
    if n < 4 {
        return Vec::new();
    }
    (0..=n - 3)
        .filter(|&i| binom_mod2(n as i64 - 2, i as u64))
        .collect()
}

/// Parities of `binom(m-i, i)` for `i = 0..=m/2`.
pub fn wu_coefficients(m: usize) -> Vec<bool> {
    (0..=m / 2)
        .map(|i| binom_mod2((m - i) as i64, i as u64))
        .collect()
}

pub fn orientable(code: &GeneticCode) -> bool {
    code.n().is_multiple_of(2) || code.is_torus()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Cobordism {
    NullCobordant,
    /// Cobordant to real projective space of this dimension.
    CobordantToRP(usize),
}

impl Cobordism {
    /// Set when the answer is `RP^m` with `m` odd, which is itself a
    /// boundary.
    pub fn note(&self) -> Option<String> {
        match *self {
            Cobordism::CobordantToRP(m) if m % 2 == 1 => {
                Some(format!("RP^{m} is null cobordant since {m} is odd"))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Cobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cobordism::NullCobordant => f.write_str("NullCobordant"),
            Cobordism::CobordantToRP(m) => write!(f, "CobordantToRP({m})"),
        }
    }
}

impl FromStr for Cobordism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            what: "cobordism class",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s == "NullCobordant" {
            return Ok(Cobordism::NullCobordant);
        }
        let inner = s
            .strip_prefix("CobordantToRP(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("unknown class"))?;
        inner
            .parse()
            .map(Cobordism::CobordantToRP)
            .map_err(|_| bad("bad dimension"))
    }
}

impl From<Cobordism> for String {
    fn from(c: Cobordism) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Cobordism {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// `NullCobordant` iff `R^(n-3) = 0`.
pub fn cobordism_class(code: &GeneticCode) -> Result<Cobordism> {
    let m = code.n().saturating_sub(3);
    if r_power_is_zero(code, m)? {
        Ok(Cobordism::NullCobordant)
    } else {
        Ok(Cobordism::CobordantToRP(m))
    }
}

/// Euler characteristic and whether a nowhere-zero vector field exists.
pub fn euler_and_vector_field(code: &GeneticCode) -> Result<(i64, bool)> {
    if code.is_empty() {
        return Err(Error::EmptyCode(code.to_string()));
    }
    if code.n().is_multiple_of(2) {
        return Ok((0, true));
    }
    let chi = code.subgee_table().alternating_sum();
    Ok((chi, chi == 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Immersion {
    pub euclidean_dim: usize,
    /// No immersion into `R^euclidean_dim` exists.
    pub obstructed: bool,
}

/// `e` with `2^e + 3 <= n <= 2^(e+1)`, if any.
fn immersion_window(n: usize) -> Option<u32> {
    (1..usize::BITS - 1).find(|&e| (1usize << e) + 3 <= n && n <= 1usize << (e + 1))
}

/// Immersion test into `R^(2^(e+1) - 2)`: obstructed iff `R^j != 0` with
/// `j = 2^(e+1) + 2 - n`, the degree where the dual class `(1+R)^-(n-2)`
/// has its top odd coefficient.
pub fn immersion_obstruction(code: &GeneticCode) -> Result<Option<Immersion>> {
    if code.is_empty() {
        return Err(Error::EmptyCode(code.to_string()));
    }
    let n = code.n();
    let Some(e) = immersion_window(n) else {
        return Ok(None);
    };
    let top = 1usize << (e + 1);
    let j = top + 2 - n;
    let dual = binom_mod2(-(n as i64 - 2), j as u64);
    let mirror = binom_mod2(top as i64 - 1, n as u64 - 3);
    if !dual || !mirror {
        return Err(Error::Internal(format!(
            "dual Stiefel-Whitney coefficient in degree {j} is even for n={n}"
        )));
    }
    Ok(Some(Immersion {
        euclidean_dim: top - 2,
        obstructed: !r_power_is_zero(code, j)?,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parallelizability {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Parallelizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn parallelizability(code: &GeneticCode) -> Parallelizability {
    use Parallelizability::*;
    let n = code.n();
    if code.is_torus() {
        return Yes;
    }
    if code.is_klein() {
        return if (n - 3) % 2 == 1 { Yes } else { No };
    }
    if n % 2 == 1 {
        return No;
    }
    match n {
        4 | 6 | 10 => Yes,
        _ if n.is_multiple_of(4) => {
            if code.is_special() {
                Unknown
            } else {
                No
            }
        }
        _ => Unknown,
    }
}

/// Parity of `R^(n-3)` for a one-gee code via the closed sum over tuples
/// `B` with `b_1 + ... + b_l <= l` for each `l` and total `k`.
pub fn monogenic_top_power(code: &GeneticCode) -> Result<bool> {
    if !code.is_monogenic() {
        return Err(Error::NotMonogenic(code.to_string()));
    }
    let g = code.gees()[0].descending();
    let k = g.len();
    let gaps: Vec<i64> = (0..k)
        .map(|i| g[i] as i64 - g.get(i + 1).map_or(0, |&x| x as i64))
        .collect();
    Ok(tuple_sum(&gaps, 0, 0, k))
}

/// Mod-2 sum over admissible completions of `b_pos..`, given `used`.
fn tuple_sum(gaps: &[i64], pos: usize, used: usize, k: usize) -> bool {
    if pos == gaps.len() {
        return used == k;
    }
    let mut acc = false;
    let cap = (pos + 1).min(k) - used;
    for b in 0..=cap {
        if binom_mod2(gaps[pos] + b as i64 - 2, b as u64) {
            acc ^= tuple_sum(gaps, pos + 1, used + b, k);
        }
    }
    acc
}

/// Largest `d` with `R^d != 0`.
pub fn r_height(code: &GeneticCode) -> Result<usize> {
    let m = code.n().saturating_sub(3);
    for d in 1..=m {
        if r_power_is_zero(code, d)? {
            return Ok(d - 1);
        }
    }
    Ok(m)
}

/// Every invariant of one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub code: GeneticCode,
    /// Subgee counts by size.
    pub d_vector: Vec<usize>,
    pub orientable: bool,
    pub cobordism: Cobordism,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cobordism_note: Option<String>,
    pub euler: i64,
    /// `sum (-1)^i d_i`, reported for even `n` too.
    pub alternating_sum: i64,
    pub has_vector_field: bool,
    pub sw_nonzero_degrees: Vec<usize>,
    pub r_height: usize,
    pub immersion: Option<Immersion>,
    pub parallelizable: Parallelizability,
}

/// The code is assumed realizable; only emptiness is checked.
pub fn report(code: &GeneticCode) -> Result<InvariantReport> {
    if code.is_empty() {
        return Err(Error::EmptyCode(code.to_string()));
    }
    if code.n() < 4 {
        return Err(Error::UnsupportedN {
            n: code.n(),
            min: 4,
            max: crate::gale::MAX_N,
        });
    }
    let table = code.subgee_table();
    let cobordism = cobordism_class(code)?;
    let (euler, has_vector_field) = euler_and_vector_field(code)?;
    Ok(InvariantReport {
        n: code.n(),
        code: code.clone(),
        d_vector: table.d.clone(),
        orientable: orientable(code),
        cobordism,
        cobordism_note: cobordism.note(),
        euler,
        alternating_sum: table.alternating_sum(),
        has_vector_field,
        sw_nonzero_degrees: sw_polynomial(code.n()),
        r_height: r_height(code)?,
        immersion: immersion_obstruction(code)?,
        parallelizable: parallelizability(code),
    })
}
