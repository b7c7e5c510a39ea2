//! Genes, gees and subgees.
//!
//! A gee is a subset of `[n-1]`; the genetic code of a polygon space is the
//! antichain of its Gale-maximal subgees. Sets are stored as 64-bit masks
//! where bit `i` stands for the element `i`, so `n` is limited to 64.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest side count a mask can hold.
pub const MAX_N: usize = 64;

/// A subset of `{1, ..., 63}`.
///
/// `Ord` compares the raw masks and only serves ordered containers; the Gale
/// order is [`gale_leq`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        debug_assert_eq!(bits & 1, 0, "element 0 is not allowed");
        IndexSet(bits)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e >= MAX_N {
                return Err(Error::IndexOutOfRange {
                    index: e,
                    max: MAX_N - 1,
                });
            }
            bits |= 1 << e;
        }
        Ok(IndexSet(bits))
    }

    /// `{1, ..., k}`.
    pub fn initial(k: usize) -> Self {
        IndexSet(((1u64 << k) - 1) << 1)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_N && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        IndexSet(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> Self {
        IndexSet(self.0 & !(1 << e))
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// `[universe] - self`, where the universe is `{1, ..., universe}`.
    pub fn complement_in(self, universe: usize) -> Self {
        IndexSet(IndexSet::initial(universe).0 & !self.0)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl DoubleEndedIterator<Item = usize> {
        (1..MAX_N).filter(move |&e| self.0 >> e & 1 == 1)
    }

    pub fn descending(self) -> Vec<usize> {
        self.iter().rev().collect()
    }

    /// Sets reached by one downward step: delete an element, or lower an
    /// element by one onto an unused positive value.
    pub fn lower_moves(self) -> Vec<IndexSet> {
        let mut out = Vec::with_capacity(2 * self.len());
        for e in self.iter() {
            out.push(self.without(e));
            if e > 1 && !self.contains(e - 1) {
                out.push(self.without(e).with(e - 1));
            }
        }
        out
    }

    /// Sets reached by one upward step inside `[top]`: add an element, or
    /// raise an element by one onto an unused value `<= top`.
    pub fn upper_moves(self, top: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        for e in 1..=top {
            if !self.contains(e) {
                out.push(self.with(e));
            } else if e < top && !self.contains(e + 1) {
                out.push(self.without(e).with(e + 1));
            }
        }
        out
    }

    /// Presentation-column order: by size, then lexicographic on the
    /// descending element lists.
    pub fn column_cmp(&self, other: &IndexSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.descending().cmp(&other.descending()))
    }

    /// Order of gees inside a printed code: larger gees first, then
    /// lexicographic on the descending element lists.
    pub fn code_cmp(&self, other: &IndexSet) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.descending().cmp(&other.descending()))
    }

    fn render(self, digits: bool) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.descending().iter().map(|e| e.to_string()).collect();
        if digits {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.render(false))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.max_element().is_none_or(|m| m <= 9)))
    }
}

/// Gale order: `s <= t` iff the i-th largest element of `s` is at most the
/// i-th largest element of `t` for every i.
pub fn gale_leq(s: IndexSet, t: IndexSet) -> bool {
    if s.len() > t.len() {
        return false;
    }
    s.iter()
        .rev()
        .zip(t.iter().rev())
        .all(|(a, b)| a <= b)
}

/// A genetic code, stored without the common element `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneticCode {
    n: usize,
    gees: Vec<IndexSet>,
}

impl GeneticCode {
    /// Reduces `gees` to its Gale-maximal members and sorts them canonically.
    pub fn canonicalize<I: IntoIterator<Item = IndexSet>>(n: usize, gees: I) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedN {
                n,
                min: 3,
                max: MAX_N,
            });
        }
        let mut unique: Vec<IndexSet> = gees
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for g in &unique {
            if let Some(m) = g.max_element() {
                if m > n - 1 {
                    return Err(Error::IndexOutOfRange {
                        index: m,
                        max: n - 1,
                    });
                }
            }
            if g.len() > n - 3 {
                return Err(Error::GeeTooLarge {
                    size: g.len(),
                    limit: n - 3,
                });
            }
        }
        let all = unique.clone();
        unique.retain(|g| !all.iter().any(|h| h != g && gale_leq(*g, *h)));
        unique.sort_by(IndexSet::code_cmp);
        Ok(GeneticCode { n, gees: unique })
    }

    /// The code of the empty polygon space.
    pub fn empty(n: usize) -> Self {
        GeneticCode {
            n,
            gees: Vec::new(),
        }
    }

    /// `{n-3, ..., 1}`: the torus.
    pub fn torus(n: usize) -> Self {
        GeneticCode {
            n,
            gees: vec![IndexSet::initial(n - 3)],
        }
    }

    /// `{n-4, ..., 1}`: the Klein-bottle analogue.
    pub fn klein(n: usize) -> Self {
        GeneticCode {
            n,
            gees: vec![IndexSet::initial(n.saturating_sub(4))],
        }
    }

    /// `{n-2, n-5, ..., 1}`.
    pub fn special(n: usize) -> Self {
        GeneticCode {
            n,
            gees: vec![IndexSet::initial(n.saturating_sub(5)).with(n - 2)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gees(&self) -> &[IndexSet] {
        &self.gees
    }

    pub fn is_empty(&self) -> bool {
        self.gees.is_empty()
    }

    pub fn is_monogenic(&self) -> bool {
        self.gees.len() == 1
    }

    pub fn is_subgee(&self, t: IndexSet) -> bool {
        self.gees.iter().any(|&g| gale_leq(t, g))
    }

    pub fn is_torus(&self) -> bool {
        self.n >= 4 && *self == GeneticCode::torus(self.n)
    }

    pub fn is_klein(&self) -> bool {
        self.n >= 4 && *self == GeneticCode::klein(self.n)
    }

    pub fn is_special(&self) -> bool {
        self.n >= 5 && *self == GeneticCode::special(self.n)
    }

    /// All subgees, grouped by size.
    pub fn subgee_table(&self) -> SubgeeTable {
        let mut seen: HashSet<IndexSet> = self.gees.iter().copied().collect();
        let mut queue: VecDeque<IndexSet> = self.gees.iter().copied().collect();
        while let Some(t) = queue.pop_front() {
            for s in t.lower_moves() {
                if seen.insert(s) {
                    queue.push_back(s);
                }
            }
        }
        let top = seen.iter().map(|s| s.len()).max();
        let mut by_size: Vec<Vec<IndexSet>> = match top {
            Some(k) => vec![Vec::new(); k + 1],
            None => Vec::new(),
        };
        for s in seen {
            by_size[s.len()].push(s);
        }
        for row in &mut by_size {
            row.sort_by(IndexSet::column_cmp);
        }
        let d = by_size.iter().map(Vec::len).collect();
        SubgeeTable { by_size, d }
    }

    /// Non-subgees all of whose one-step predecessors are subgees.
    pub fn minimal_non_subgees(&self) -> Vec<IndexSet> {
        if self.gees.is_empty() {
            return vec![IndexSet::EMPTY];
        }
        let table = self.subgee_table();
        let subgees: HashSet<IndexSet> = table.iter().collect();
        let mut found = BTreeSet::new();
        for t in table.iter() {
            for h in t.upper_moves(self.n - 1) {
                if !subgees.contains(&h) && h.lower_moves().iter().all(|s| subgees.contains(s)) {
                    found.insert(h);
                }
            }
        }
        let mut out: Vec<IndexSet> = found.into_iter().collect();
        out.sort_by(IndexSet::column_cmp);
        out
    }

    /// A pair of gees `(g1, g2)` with `g2 >= bar(g1)`, where `bar(g1)` is
    /// `[n-1] - g1` with its largest element removed. Such a pair cannot
    /// occur in a realizable code.
    pub fn glem_conflict(&self) -> Option<(IndexSet, IndexSet)> {
        for &g1 in &self.gees {
            let bar = glem_bar(g1, self.n);
            if let Some(&g2) = self.gees.iter().find(|&&g2| gale_leq(bar, g2)) {
                return Some((g1, g2));
            }
        }
        None
    }

    fn digits(&self) -> bool {
        self.n <= 10
    }
}

/// `[n-1] - g` minus its maximum.
pub fn glem_bar(g: IndexSet, n: usize) -> IndexSet {
    let tilde = g.complement_in(n - 1);
    match tilde.max_element() {
        Some(m) => tilde.without(m),
        None => tilde,
    }
}

impl Ord for GeneticCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.gees.iter().zip(&other.gees) {
                let c = a.code_cmp(b);
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.gees.len().cmp(&other.gees.len())
        })
    }
}

impl PartialOrd for GeneticCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.digits();
        let gees: Vec<String> = self.gees.iter().map(|g| g.render(digits)).collect();
        write!(f, "{}:[{}]", self.n, gees.join("|"))
    }
}

impl fmt::Debug for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GeneticCode {
    type Err = Error;

    /// Parses `n:[gee|gee|...]`. A gee is a digit string (`421`) when
    /// `n <= 10`, or comma-separated integers (`12,3,1`); `0` is the empty
    /// gee and `n:[]` the empty code.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "genetic code",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (n_part, rest) = compact.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let n: usize = n_part.parse().map_err(|_| err("bad side count"))?;
        let body = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| err("gees must be enclosed in [...]"))?;
        if !(3..=MAX_N).contains(&n) {
            return Err(err("side count out of range"));
        }
        if body.is_empty() {
            return Ok(GeneticCode::empty(n));
        }
        let mut gees = Vec::new();
        for token in body.split('|') {
            if token.is_empty() {
                return Err(err("empty gee token"));
            }
            let elements: Vec<usize> = if token.contains(',') || n > 10 {
                token
                    .split(',')
                    .map(|p| p.parse::<usize>().map_err(|_| err("bad element")))
                    .collect::<Result<_>>()?
            } else {
                token
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| err("bad digit")))
                    .collect::<Result<_>>()?
            };
            let elements: Vec<usize> = if elements == [0] {
                Vec::new()
            } else {
                elements
            };
            if elements.contains(&0) {
                return Err(err("0 may only appear as the empty gee"));
            }
            if elements.iter().collect::<HashSet<_>>().len() != elements.len() {
                return Err(err("repeated element in a gee"));
            }
            gees.push(IndexSet::from_elements(elements)?);
        }
        GeneticCode::canonicalize(n, gees)
    }
}

impl serde::Serialize for GeneticCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GeneticCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Subgees grouped by cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgeeTable {
    pub by_size: Vec<Vec<IndexSet>>,
    pub d: Vec<usize>,
}

impl SubgeeTable {
    /// All subgees in column order.
    pub fn iter(&self) -> impl Iterator<Item = IndexSet> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn count(&self) -> usize {
        self.d.iter().sum()
    }

    /// `sum (-1)^i d_i`.
    pub fn alternating_sum(&self) -> i64 {
        self.d
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}
