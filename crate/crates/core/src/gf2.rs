//! Dense bit-packed matrices over GF(2).

use std::fmt;

const WORD: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<Vec<u64>>,
    width: usize,
}

impl Gf2Matrix {
    pub fn new(width: usize) -> Self {
        Gf2Matrix {
            rows: Vec::new(),
            width,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Gf2Matrix::new(size);
        for i in 0..size {
            m.push_row_from_indices(&[i]);
        }
        m
    }

    pub fn from_rows(width: usize, rows: &[Vec<bool>]) -> Self {
        let mut m = Gf2Matrix::new(width);
        for r in rows {
            assert_eq!(r.len(), width, "row width mismatch");
            let ones: Vec<usize> = r.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect();
            m.push_row_from_indices(&ones);
        }
        m
    }

    fn words(&self) -> usize {
        self.width.div_ceil(WORD)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row_from_indices(&mut self, ones: &[usize]) {
        let mut row = vec![0u64; self.words()];
        for &j in ones {
            assert!(j < self.width, "column {j} out of range");
            row[j / WORD] |= 1 << (j % WORD);
        }
        self.rows.push(row);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let bit = 1 << (j % WORD);
        if value {
            self.rows[i][j / WORD] |= bit;
        } else {
            self.rows[i][j / WORD] &= !bit;
        }
    }

    /// The same matrix with column `col` deleted.
    pub fn without_column(&self, col: usize) -> Gf2Matrix {
        let mut out = Gf2Matrix::new(self.width - 1);
        for i in 0..self.height() {
            let ones: Vec<usize> = (0..self.width)
                .filter(|&j| j != col && self.get(i, j))
                .map(|j| if j > col { j - 1 } else { j })
                .collect();
            out.push_row_from_indices(&ones);
        }
        out
    }

    /// Rank by Gaussian elimination, one machine word of columns at a time.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.width {
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[w] & bit != 0 {
                    for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Whether the unit vector `e_col` lies in the row space.
    pub fn spans_unit(&self, col: usize) -> bool {
        let mut stacked = self.clone();
        stacked.push_row_from_indices(&[col]);
        stacked.rank() == self.rank()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.height() {
            let line: String = (0..self.width)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
