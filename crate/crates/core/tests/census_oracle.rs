//! The catalog against codes read off a dense sweep of integer length vectors.
//!
//! Codes here are derived by brute force over all subsets, independently of
//! the library's own derivation.

use std::collections::BTreeSet;

use polyspace::catalog::{entry_to_json, witness_round_trips};
use polyspace::{enumerate_codes, EnumerateOptions, GeneticCode, IndexSet};
use proptest::prelude::*;

/// Gale comparison by explicit matching of sorted lists.
fn below(s: &[usize], t: &[usize]) -> bool {
    let mut s = s.to_vec();
    let mut t = t.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    t.sort_unstable_by(|a, b| b.cmp(a));
    s.len() <= t.len() && s.iter().zip(&t).all(|(a, b)| a <= b)
}

/// Code of an ascending integer vector, or `None` if some subset sum ties.
fn brute_code(v: &[i64]) -> Option<Option<GeneticCode>> {
    let n = v.len();
    let total: i64 = v.iter().sum();
    let mut short_with_n: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..1 << n {
        let s: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).sum();
        if 2 * s == total {
            return None;
        }
        if mask >> (n - 1) & 1 == 1 && 2 * s < total {
            short_with_n.push((0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect());
        }
    }
    if short_with_n.is_empty() {
        return Some(None);
    }
    let maximal: Vec<IndexSet> = short_with_n
        .iter()
        .filter(|s| !short_with_n.iter().any(|t| t != *s && below(s, t)))
        .map(|s| IndexSet::from_elements(s.iter().copied()).unwrap())
        .collect();
    Some(Some(GeneticCode::canonicalize(n, maximal).unwrap()))
}

/// Nondecreasing vectors over `1..=top`, each also nudged by `+1` on a single
/// coordinate after scaling, so that ties resolve both ways.
fn sweep(n: usize, top: i64) -> BTreeSet<GeneticCode> {
    let mut found = BTreeSet::new();
    let mut v = vec![1i64; n];
    let scale = 4 * n as i64;
    loop {
        let mut candidates = vec![v.clone()];
        for i in 0..n {
            for delta in [-1, 1] {
                let mut w: Vec<i64> = v.iter().map(|x| x * scale).collect();
                w[i] += delta;
                w.sort_unstable();
                candidates.push(w);
            }
        }
        for c in candidates {
            if let Some(Some(code)) = brute_code(&c) {
                found.insert(code);
            }
        }
        // next nondecreasing vector
        let Some(i) = (0..n).rev().find(|&i| v[i] < top) else {
            break;
        };
        let next = v[i] + 1;
        for x in v[i..].iter_mut() {
            *x = next;
        }
    }
    found
}

fn catalog(n: usize) -> BTreeSet<GeneticCode> {
    enumerate_codes(n, &EnumerateOptions::default())
        .unwrap()
        .into_iter()
        .map(|e| e.code)
        .collect()
}

#[test]
fn small_censuses_match_the_sweep() {
    for n in 4..=6 {
        let oracle = sweep(n, 2 * n as i64);
        let found = catalog(n);
        assert_eq!(found, oracle, "n={n}");
    }
    assert_eq!(catalog(4).len(), 2);
    assert_eq!(catalog(5).len(), 6);
}

#[test]
fn runs_are_byte_identical() {
    let lines = |n| -> Vec<String> {
        enumerate_codes(n, &EnumerateOptions::default())
            .unwrap()
            .iter()
            .map(entry_to_json)
            .collect()
    };
    assert_eq!(lines(7), lines(7));
    let jobs = EnumerateOptions {
        jobs: Some(3),
        ..Default::default()
    };
    let threaded: Vec<String> = enumerate_codes(7, &jobs).unwrap().iter().map(entry_to_json).collect();
    assert_eq!(threaded, lines(7));
}

#[test]
fn catalog_entries_are_sound() {
    for n in 4..=7 {
        for e in enumerate_codes(n, &EnumerateOptions::default()).unwrap() {
            assert!(e.code.glem_conflict().is_none(), "{}", e.code);
            assert!(witness_round_trips(&e), "{}", e.code);
            assert_eq!(brute_code(&sorted(&e)), Some(Some(e.code.clone())));
        }
    }
}

fn sorted(e: &polyspace::CatalogEntry) -> Vec<i64> {
    e.witness
        .integer_weights()
        .iter()
        .map(|w| i64::try_from(w).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Any code read off a random vector is already in the catalog.
    #[test]
    fn random_vectors_land_in_the_catalog(n in 7usize..=8, seed in prop::collection::vec(1i64..200, 8)) {
        let mut v = seed[..n].to_vec();
        v.sort_unstable();
        if let Some(Some(code)) = brute_code(&v) {
            prop_assert!(catalogs()[n - 7].contains(&code), "{}", code);
        }
    }
}

fn catalogs() -> &'static [BTreeSet<GeneticCode>; 2] {
    static CELL: std::sync::OnceLock<[BTreeSet<GeneticCode>; 2]> = std::sync::OnceLock::new();
    CELL.get_or_init(|| [catalog(7), catalog(8)])
}
