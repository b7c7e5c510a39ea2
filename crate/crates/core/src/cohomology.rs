//! Mod-2 cohomology of a polygon space from its genetic code.
//!
//! In degree `d` the cohomology is spanned by monomials `R^(d-|T|) V_T` with
//! `T` a subgee of size at most `d` (square-free after `V_i^2 = R V_i`,
//! and `V_T = 0` for non-subgees). For each subgee `S` with
//! `|S| >= n-2-d` there is a relation summing the monomials with `T`
//! disjoint from `S`.

use crate::error::{Error, Result};
use crate::gale::{GeneticCode, IndexSet};
use crate::gf2::Gf2Matrix;

/// Relation matrix of one degree; column 0 is `T = {}` (the class `R^d`).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub degree: usize,
    pub columns: Vec<IndexSet>,
    pub relations: Vec<IndexSet>,
    pub matrix: Gf2Matrix,
}

impl Presentation {
    pub fn dimension(&self) -> usize {
        self.columns.len() - self.matrix.rank()
    }
}

fn disjointness_matrix(rows: &[IndexSet], columns: &[IndexSet]) -> Gf2Matrix {
    let mut m = Gf2Matrix::new(columns.len());
    for &s in rows {
        let ones: Vec<usize> = columns
            .iter()
            .enumerate()
            .filter(|(_, &t)| s.is_disjoint(t))
            .map(|(j, _)| j)
            .collect();
        m.push_row_from_indices(&ones);
    }
    m
}

fn check_degree(code: &GeneticCode, d: usize, min: usize) -> Result<()> {
    if code.is_empty() {
        return Err(Error::EmptyCode(code.to_string()));
    }
    let max = code.n() - 3;
    if d < min || d > max {
        return Err(Error::DegreeOutOfRange { d, min, max });
    }
    Ok(())
}

pub fn build_presentation(code: &GeneticCode, d: usize) -> Result<Presentation> {
    check_degree(code, d, 0)?;
    let n = code.n();
    let table = code.subgee_table();
    let columns: Vec<IndexSet> = table.iter().filter(|t| t.len() <= d).collect();
    let relations: Vec<IndexSet> = table.iter().filter(|s| s.len() + d + 2 >= n).collect();
    let matrix = disjointness_matrix(&relations, &columns);
    Ok(Presentation {
        degree: d,
        columns,
        relations,
        matrix,
    })
}

/// Whether `R^d = 0`: the relations span the unit vector of column `{}`.
pub fn r_power_is_zero(code: &GeneticCode, d: usize) -> Result<bool> {
    check_degree(code, d, 1)?;
    let p = build_presentation(code, d)?;
    Ok(p.matrix.spans_unit(0))
}

/// `dim H^d` over GF(2).
pub fn dim_cohomology(code: &GeneticCode, d: usize) -> Result<usize> {
    Ok(build_presentation(code, d)?.dimension())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Degree `n-3`.
    Top,
    /// Degree `n-4`.
    Subtop,
}

/// The dimension-counting rank tests for the top two degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTrick {
    pub level: Level,
    /// Rows of the full matrix.
    pub rows: usize,
    /// Columns of the full matrix, the `R` column included.
    pub columns: usize,
    /// Rank once the `R` column is deleted.
    pub rank_without_r: usize,
    pub r_power_zero: bool,
}

/// Columns are all subgees. `Top` uses a row per nonempty subgee and reports
/// `R^(n-3) = 0` when the rank without the `R` column is below that
/// column count; `Subtop` uses a row per subgee of size at least 2 and
/// reports `R^(n-4) = 0` when that rank is one less than the row count.
pub fn rank_trick(code: &GeneticCode, level: Level) -> Result<RankTrick> {
    if code.is_empty() {
        return Err(Error::EmptyCode(code.to_string()));
    }
    let min_n = match level {
        Level::Top => 4,
        Level::Subtop => 5,
    };
    if code.n() < min_n {
        return Err(Error::UnsupportedN {
            n: code.n(),
            min: min_n,
            max: crate::gale::MAX_N,
        });
    }
    let columns: Vec<IndexSet> = code.subgee_table().iter().collect();
    let min_row = match level {
        Level::Top => 1,
        Level::Subtop => 2,
    };
    let rows: Vec<IndexSet> = columns.iter().copied().filter(|s| s.len() >= min_row).collect();
    let reduced = disjointness_matrix(&rows, &columns).without_column(0);
    let rank = reduced.rank();
    let r_power_zero = match level {
        Level::Top => rank < reduced.width(),
        Level::Subtop => rank + 1 == rows.len(),
    };
    Ok(RankTrick {
        level,
        rows: rows.len(),
        columns: columns.len(),
        rank_without_r: rank,
        r_power_zero,
    })
}

pub fn rank_trick_zero(code: &GeneticCode, level: Level) -> Result<bool> {
    Ok(rank_trick(code, level)?.r_power_zero)
}
