//! Enumeration and persistence of all realizable genetic codes for small `n`.
//!
//! A code is the same thing as its down-set of subgees. The search visits the
//! subsets of `[n-1]` in an order compatible with the Gale order and decides
//! for each whether it is a subgee. Most decisions are forced by the down-set
//! property or by the complement rule of [`glem_bar`]; the rest are settled by
//! a witness length vector carried down the tree, with an LP solve only for
//! the side the witness does not already realize.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::r_power_is_zero;
use crate::error::{Error, Result};
use crate::gale::{gale_leq, glem_bar, GeneticCode, IndexSet};
use crate::invariants::{self, Cobordism, InvariantReport};
use crate::lengths::LengthVector;
use crate::realize::{is_realizable, lp_feasible, shortness_system};

pub const MIN_N: usize = 4;
pub const MAX_N: usize = 9;
/// Smallest `n` that needs [`EnumerateOptions::allow_long`].
pub const LONG_N: usize = 9;

/// Branch points above the fan-out frontier.
const SPLIT_DEPTH: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub code: GeneticCode,
    pub witness: LengthVector,
    pub report: Option<InvariantReport>,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub with_reports: bool,
    pub allow_long: bool,
    /// Finished subtrees are appended here and skipped on the next run.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone)]
struct Node {
    pos: usize,
    /// Bit `mask >> 1` is set when that subset is known not to be a subgee.
    out: Vec<u64>,
    /// Maximal subgees decided so far.
    ins: Vec<IndexSet>,
    /// Non-subgees decided by the LP; these are Gale-minimal.
    outs: Vec<IndexSet>,
    witness: Option<Vec<i128>>,
    branches: usize,
}

impl Node {
    fn is_out(&self, t: IndexSet) -> bool {
        let i = (t.bits() >> 1) as usize;
        self.out[i / 64] >> (i % 64) & 1 == 1
    }

    fn mark_out(&mut self, t: IndexSet) {
        let i = (t.bits() >> 1) as usize;
        self.out[i / 64] |= 1 << (i % 64);
    }

    fn add_in(&mut self, t: IndexSet) {
        self.ins.retain(|&g| !gale_leq(g, t));
        self.ins.push(t);
    }

    fn add_out(&mut self, t: IndexSet) {
        self.mark_out(t);
        self.outs.push(t);
    }
}

struct Search {
    n: usize,
    order: Vec<IndexSet>,
}

enum Step {
    Leaf(Node),
    Frontier(Node),
}

impl Search {
    fn new(n: usize) -> Self {
        let mut order: Vec<IndexSet> = (0u64..1 << (n - 1)).map(|b| IndexSet::from_bits(b << 1)).collect();
        // Element sum strictly increases along the Gale order.
        order.sort_by(|a, b| {
            let sa: usize = a.iter().sum();
            let sb: usize = b.iter().sum();
            sa.cmp(&sb).then_with(|| a.column_cmp(b))
        });
        Search { n, order }
    }

    fn root(&self) -> Option<Node> {
        let words = (1usize << (self.n - 1)).div_ceil(64);
        let mut node = Node {
            pos: 0,
            out: vec![0; words],
            ins: Vec::new(),
            outs: Vec::new(),
            witness: None,
            branches: 0,
        };
        debug_assert!(self.order[0].is_empty());
        node.witness = Some(self.solve(&[IndexSet::EMPTY], &[])?);
        node.add_in(IndexSet::EMPTY);
        node.pos = 1;
        Some(node)
    }

    fn solve(&self, ins: &[IndexSet], outs: &[IndexSet]) -> Option<Vec<i128>> {
        let x = lp_feasible(&shortness_system(self.n, ins, outs))?;
        Some(scaled_integers(&x).unwrap_or_default())
    }

    /// `Some(true)` if the witness makes `t + {n}` short, `None` on a tie.
    fn side(&self, w: &[i128], t: IndexSet) -> Option<bool> {
        if w.is_empty() {
            return None;
        }
        let total: i128 = w.iter().sum();
        let part: i128 = w[self.n - 1] + t.iter().map(|i| w[i - 1]).sum::<i128>();
        match (2 * part).cmp(&total) {
            std::cmp::Ordering::Less => Some(true),
            std::cmp::Ordering::Greater => Some(false),
            std::cmp::Ordering::Equal => None,
        }
    }

    fn forced_out(&self, node: &Node, t: IndexSet) -> bool {
        t.len() + 3 > self.n
            || t.lower_moves().into_iter().any(|s| node.is_out(s))
            || node.ins.iter().any(|&g| gale_leq(glem_bar(g, self.n), t))
    }

    fn try_side(&self, node: &Node, t: IndexSet, inside: bool) -> Option<Vec<i128>> {
        let mut ins = node.ins.clone();
        let mut outs = node.outs.clone();
        if inside {
            ins.retain(|&g| !gale_leq(g, t));
            ins.push(t);
        } else {
            outs.push(t);
        }
        self.solve(&ins, &outs)
    }

    fn child(&self, node: &Node, t: IndexSet, inside: bool, witness: Vec<i128>) -> Node {
        let mut c = node.clone();
        if inside {
            c.add_in(t);
        } else {
            c.add_out(t);
        }
        c.witness = Some(witness);
        c.pos += 1;
        c
    }

    /// Runs the subtree under `node`, handing leaves and, when `split` is
    /// set, nodes at that branch depth to `emit`.
    fn run(&self, mut node: Node, split: Option<usize>, emit: &mut dyn FnMut(Step)) {
        loop {
            if split.is_some_and(|d| node.branches >= d) {
                emit(Step::Frontier(node));
                return;
            }
            let Some(&t) = self.order.get(node.pos) else {
                emit(Step::Leaf(node));
                return;
            };
            if self.forced_out(&node, t) {
                node.mark_out(t);
                node.pos += 1;
                continue;
            }
            let w = node.witness.clone().unwrap_or_default();
            let (a, b) = match self.side(&w, t) {
                Some(inside) => {
                    let other = self.try_side(&node, t, !inside);
                    (Some((inside, w)), other.map(|x| (!inside, x)))
                }
                None => (
                    self.try_side(&node, t, true).map(|x| (true, x)),
                    self.try_side(&node, t, false).map(|x| (false, x)),
                ),
            };
            match (a, b) {
                (Some((s1, w1)), Some((s2, w2))) => {
                    let (mut first, mut second) = if s1 {
                        (self.child(&node, t, s1, w1), self.child(&node, t, s2, w2))
                    } else {
                        (self.child(&node, t, s2, w2), self.child(&node, t, s1, w1))
                    };
                    first.branches += 1;
                    second.branches += 1;
                    self.run(first, split, emit);
                    node = second;
                }
                (Some((s, x)), None) | (None, Some((s, x))) => {
                    node = self.child(&node, t, s, x);
                }
                (None, None) => unreachable!("the parent node is feasible"),
            }
        }
    }

    fn finish(&self, leaf: &Node) -> Result<CatalogEntry> {
        let code = GeneticCode::canonicalize(self.n, leaf.ins.iter().copied())?;
        let witness = is_realizable(&code)?
            .ok_or_else(|| Error::Internal(format!("search reached unrealizable {code}")))?;
        Ok(CatalogEntry {
            code,
            witness,
            report: None,
        })
    }
}

/// Integer multiple of a rational vector, if it fits in `i128`.
fn scaled_integers(x: &[BigRational]) -> Option<Vec<i128>> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    x.iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).to_i128())
        .collect::<Option<Vec<_>>>()
        .filter(|w| w.iter().map(|v| v.unsigned_abs()).sum::<u128>() < 1 << 120)
}

fn check_n(n: usize, opts: &EnumerateOptions) -> Result<()> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::UnsupportedN {
            n,
            min: MIN_N,
            max: MAX_N,
        });
    }
    if n >= LONG_N && !opts.allow_long {
        return Err(Error::Precondition(format!(
            "n={n} takes hours; enable the long-run option to proceed"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct CheckpointHeader {
    n: usize,
    split: usize,
    tasks: usize,
}

#[derive(Serialize, Deserialize)]
struct CheckpointTask {
    task: usize,
    entries: Vec<(GeneticCode, String)>,
}

fn load_checkpoint(path: &PathBuf, header: &CheckpointHeader) -> Result<BTreeMap<usize, Vec<CatalogEntry>>> {
    let mut done = BTreeMap::new();
    let Ok(file) = File::open(path) else {
        let mut f = File::create(path)?;
        writeln!(f, "{}", serde_json::to_string(header).expect("header"))?;
        return Ok(done);
    };
    let mut lines = BufReader::new(file).lines();
    let bad = |reason: String| Error::Parse {
        what: "checkpoint",
        input: path.display().to_string(),
        reason,
    };
    let first = lines.next().transpose()?.ok_or_else(|| bad("empty file".into()))?;
    let found: CheckpointHeader = serde_json::from_str(&first).map_err(|e| bad(e.to_string()))?;
    if found.n != header.n || found.split != header.split || found.tasks != header.tasks {
        return Err(bad("written by a different search".into()));
    }
    for line in lines {
        let line = line?;
        // A torn final line from an interrupted run is dropped.
        let Ok(task) = serde_json::from_str::<CheckpointTask>(&line) else {
            continue;
        };
        let entries = task
            .entries
            .into_iter()
            .map(|(code, w)| {
                Ok(CatalogEntry {
                    code,
                    witness: w.parse()?,
                    report: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        done.insert(task.task, entries);
    }
    Ok(done)
}

fn enumerate_inner(n: usize, opts: &EnumerateOptions) -> Result<Vec<CatalogEntry>> {
    let search = Search::new(n);
    let Some(root) = search.root() else {
        return Ok(Vec::new());
    };
    let mut leaves = Vec::new();
    let mut frontier = Vec::new();
    search.run(root, Some(SPLIT_DEPTH), &mut |s| match s {
        Step::Leaf(node) => leaves.push(node),
        Step::Frontier(node) => frontier.push(node),
    });
    let mut entries = leaves
        .iter()
        .map(|l| search.finish(l))
        .collect::<Result<Vec<_>>>()?;

    let header = CheckpointHeader {
        n,
        split: SPLIT_DEPTH,
        tasks: frontier.len(),
    };
    let done = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, &header)?,
        None => BTreeMap::new(),
    };
    let sink = match &opts.checkpoint {
        Some(path) => Some(Mutex::new(BufWriter::new(
            OpenOptions::new().append(true).open(path)?,
        ))),
        None => None,
    };
    let results: Vec<Vec<CatalogEntry>> = frontier
        .into_par_iter()
        .enumerate()
        .map(|(task, node)| -> Result<Vec<CatalogEntry>> {
            if let Some(found) = done.get(&task) {
                return Ok(found.clone());
            }
            let mut found = Vec::new();
            let mut failure = None;
            search.run(node, None, &mut |s| {
                if let Step::Leaf(leaf) = s {
                    match search.finish(&leaf) {
                        Ok(e) => found.push(e),
                        Err(e) => failure = Some(e),
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if let Some(sink) = &sink {
                let record = CheckpointTask {
                    task,
                    entries: found
                        .iter()
                        .map(|e| (e.code.clone(), e.witness.to_string()))
                        .collect(),
                };
                let mut w = sink.lock().expect("checkpoint lock");
                writeln!(w, "{}", serde_json::to_string(&record).expect("record"))?;
                w.flush()?;
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    entries.extend(results.into_iter().flatten());
    entries.sort_by(|a, b| a.code.cmp(&b.code));
    let before = entries.len();
    entries.dedup_by(|a, b| a.code == b.code);
    if entries.len() != before {
        return Err(Error::Internal("search produced a code twice".into()));
    }
    if opts.with_reports {
        entries.par_iter_mut().try_for_each(|e| -> Result<()> {
            e.report = Some(invariants::report(&e.code)?);
            Ok(())
        })?;
    }
    Ok(entries)
}

/// Every realizable nonempty code on `n` sides, in canonical order.
pub fn enumerate_codes(n: usize, opts: &EnumerateOptions) -> Result<Vec<CatalogEntry>> {
    check_n(n, opts)?;
    match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| enumerate_inner(n, opts)),
        None => enumerate_inner(n, opts),
    }
}

/// Number of realizable nonempty codes; `n = 9` is refused here.
pub fn census(n: usize) -> Result<usize> {
    Ok(enumerate_codes(n, &EnumerateOptions::default())?.len())
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    gees: Vec<Vec<usize>>,
    witness: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    report: Option<InvariantReport>,
}

impl From<&CatalogEntry> for Record {
    fn from(e: &CatalogEntry) -> Self {
        Record {
            n: e.code.n(),
            gees: e.code.gees().iter().map(|g| g.descending()).collect(),
            witness: e.witness.original().iter().map(|v| v.to_string()).collect(),
            report: e.report.clone(),
        }
    }
}

impl TryFrom<Record> for CatalogEntry {
    type Error = Error;

    fn try_from(r: Record) -> Result<Self> {
        let gees = r
            .gees
            .into_iter()
            .map(IndexSet::from_elements)
            .collect::<Result<Vec<_>>>()?;
        let code = GeneticCode::canonicalize(r.n, gees)?;
        let witness = r
            .witness
            .iter()
            .map(|s| {
                s.parse::<BigRational>().map_err(|e| Error::Parse {
                    what: "witness entry",
                    input: s.clone(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CatalogEntry {
            code,
            witness: LengthVector::new(witness)?,
            report: r.report,
        })
    }
}

/// One JSON object per line.
pub fn entry_to_json(entry: &CatalogEntry) -> String {
    serde_json::to_string(&Record::from(entry)).expect("records serialize")
}

pub fn entry_from_json(line: &str) -> Result<CatalogEntry> {
    let record: Record = serde_json::from_str(line).map_err(|e| Error::Parse {
        what: "catalog line",
        input: line.chars().take(80).collect(),
        reason: e.to_string(),
    })?;
    record.try_into()
}

pub fn write_jsonl<W: Write>(entries: &[CatalogEntry], mut out: W) -> Result<()> {
    for e in entries {
        writeln!(out, "{}", entry_to_json(e))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<CatalogEntry>> {
    input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| entry_from_json(&l?))
        .collect()
}

/// Whether the witness is generic and realizes the stored code.
pub fn witness_round_trips(entry: &CatalogEntry) -> bool {
    entry.witness.is_generic()
        && entry
            .witness
            .genetic_code()
            .is_ok_and(|c| c == entry.code)
}

/// Expected values shipped with the crate.
#[derive(Clone, Debug, Deserialize)]
pub struct Reference {
    pub version: u32,
    pub census: BTreeMap<usize, usize>,
    pub heptagon: HeptagonReference,
    pub r2_zero_range: (usize, usize),
}

#[derive(Clone, Debug, Deserialize)]
pub struct HeptagonReference {
    pub total: usize,
    pub null_cobordant: usize,
    pub cobordant_to_rp4: usize,
    pub r3_nonzero: usize,
    pub r3_zero: Vec<GeneticCode>,
    pub euler_zero: Vec<GeneticCode>,
    pub d_vector_example: DVectorExample,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DVectorExample {
    pub code: GeneticCode,
    pub d: Vec<usize>,
}

pub const REFERENCE_JSON: &str = include_str!("../fixtures/reference.json");

pub fn reference() -> Reference {
    serde_json::from_str(REFERENCE_JSON).expect("bundled reference parses")
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub found: String,
    /// Codes in the expected set only, then in the found set only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<(Vec<String>, Vec<String>)>,
}

impl Check {
    fn count(name: &str, expected: usize, found: usize) -> Self {
        Check {
            name: name.into(),
            passed: expected == found,
            expected: expected.to_string(),
            found: found.to_string(),
            diff: None,
        }
    }

    fn sets(name: &str, expected: &[GeneticCode], found: &[GeneticCode]) -> Self {
        let e: BTreeSet<&GeneticCode> = expected.iter().collect();
        let f: BTreeSet<&GeneticCode> = found.iter().collect();
        let missing: Vec<String> = e.difference(&f).map(|c| c.to_string()).collect();
        let extra: Vec<String> = f.difference(&e).map(|c| c.to_string()).collect();
        Check {
            name: name.into(),
            passed: missing.is_empty() && extra.is_empty() && e.len() == expected.len(),
            expected: format!("{} codes", expected.len()),
            found: format!("{} codes", found.len()),
            diff: (!missing.is_empty() || !extra.is_empty()).then_some((missing, extra)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperReport {
    pub checks: Vec<Check>,
}

impl PaperReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Heptagon statistics against the bundled reference values.
pub fn paper_reports(catalog: &[CatalogEntry], reference: &Reference) -> Result<PaperReport> {
    let want = &reference.heptagon;
    if catalog.iter().any(|e| e.code.n() != 7) {
        return Err(Error::Precondition("catalog must contain only n=7 codes".into()));
    }
    if catalog.len() != want.total {
        return Err(Error::Precondition(format!(
            "catalog has {} codes, expected the complete list of {}",
            catalog.len(),
            want.total
        )));
    }
    let mut null = 0;
    let mut rp4 = 0;
    let mut r3_zero = Vec::new();
    let mut euler_zero = Vec::new();
    for e in catalog {
        match invariants::cobordism_class(&e.code)? {
            Cobordism::NullCobordant => null += 1,
            Cobordism::CobordantToRP(_) => rp4 += 1,
        }
        if r_power_is_zero(&e.code, 3)? {
            r3_zero.push(e.code.clone());
        }
        if invariants::euler_and_vector_field(&e.code)?.0 == 0 {
            euler_zero.push(e.code.clone());
        }
    }
    let example = &want.d_vector_example;
    let d = example.code.subgee_table().d;
    let checks = vec![
        Check::count("null cobordant", want.null_cobordant, null),
        Check::count("cobordant to RP^4", want.cobordant_to_rp4, rp4),
        Check::count("R^3 nonzero", want.r3_nonzero, catalog.len() - r3_zero.len()),
        Check::sets("R^3 = 0 codes", &want.r3_zero, &r3_zero),
        Check::sets("Euler characteristic 0 codes", &want.euler_zero, &euler_zero),
        Check {
            name: format!("d-vector of {}", example.code),
            passed: d == example.d,
            expected: format!("{:?}", example.d),
            found: format!("{d:?}"),
            diff: None,
        },
    ];
    Ok(PaperReport { checks })
}

/// Compares the codes with `R^2 = 0` against the torus, Klein and special
/// codes.
pub fn r2_check(catalog: &[CatalogEntry], n: usize) -> Result<Check> {
    let mut found = Vec::new();
    for e in catalog.iter().filter(|e| e.code.n() == n) {
        if r_power_is_zero(&e.code, 2)? {
            found.push(e.code.clone());
        }
    }
    let expected = [
        GeneticCode::torus(n),
        GeneticCode::klein(n),
        GeneticCode::special(n),
    ];
    Ok(Check::sets(&format!("R^2 = 0 codes for n={n}"), &expected, &found))
}
