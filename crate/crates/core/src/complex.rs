//! Finite cochain complexes of free abelian groups with explicit bases.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};

/// Integer matrix in triplet form. Entries are kept sorted by `(row, col)`
/// with no zeros and no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((r as u32, c as u32)).or_default() += v;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        SparseMatrix::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), cols, "ragged matrix");
                row.iter().enumerate().map(move |(c, &v)| (r, c, v))
            }),
        )
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries
            .iter()
            .map(|&(r, c, v)| (r as usize, c as usize, v))
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by(|&(er, ec, _)| (er as usize, ec as usize).cmp(&(r, c)))
            .map_or(0, |i| self.entries[i].2)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            m[r][c] = v;
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.entries().map(|(r, c, v)| (c, r, v)))
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (r, c, v) in rhs.entries() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, k, a) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    *acc.entry((r, c)).or_default() += a * b;
                }
            }
        }
        SparseMatrix::from_triplets(self.rows, rhs.cols, acc.into_iter().map(|((r, c), v)| (r, c, v)))
    }

    /// Reorder rows and columns: entry `(r, c)` moves to `(row_map[r], col_map[c])`.
    pub fn permuted(&self, row_map: &[usize], col_map: &[usize]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries().map(|(r, c, v)| (row_map[r], col_map[c], v)),
        )
    }

    /// `{rows, cols, triplets: [[r, c, v], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "triplets": self.entries.iter().map(|&(r, c, v)| json!([r, c, v])).collect::<Vec<_>>(),
        })
    }
}

/// Cochain complex concentrated in one quantum grading. `C^i` has an ordered
/// basis of generators `G`; `d^i : C^i -> C^{i+1}` is stored as a
/// `dim C^{i+1} x dim C^i` matrix.
#[derive(Debug, Clone)]
pub struct BigradedComplex<G> {
    quantum: i64,
    generators: BTreeMap<i64, Vec<G>>,
    differentials: BTreeMap<i64, SparseMatrix>,
}

impl<G> BigradedComplex<G> {
    /// Degrees missing from `generators` are rank zero. Matrix shapes are
    /// checked; absent differentials are zero.
    pub fn new(
        quantum: i64,
        generators: BTreeMap<i64, Vec<G>>,
        differentials: BTreeMap<i64, SparseMatrix>,
    ) -> Self {
        let c = BigradedComplex {
            quantum,
            generators,
            differentials,
        };
        for (&i, m) in &c.differentials {
            assert_eq!(m.cols(), c.rank(i), "d^{i} has wrong column count");
            assert_eq!(m.rows(), c.rank(i + 1), "d^{i} has wrong row count");
        }
        c
    }

    pub fn quantum(&self) -> i64 {
        self.quantum
    }

    pub fn rank(&self, i: i64) -> usize {
        self.generators.get(&i).map_or(0, Vec::len)
    }

    pub fn generators(&self, i: i64) -> &[G] {
        self.generators.get(&i).map_or(&[], Vec::as_slice)
    }

    /// Degrees carrying at least one generator, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.generators
            .iter()
            .filter(|(_, g)| !g.is_empty())
            .map(|(&i, _)| i)
            .collect()
    }

    /// Smallest and largest materialized degree.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.generators.keys().next()?;
        let hi = *self.generators.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn total_rank(&self) -> usize {
        self.generators.values().map(Vec::len).sum()
    }

    pub fn differential(&self, i: i64) -> SparseMatrix {
        self.differentials
            .get(&i)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.rank(i + 1), self.rank(i)))
    }

    pub fn differentials(&self) -> impl Iterator<Item = (i64, &SparseMatrix)> {
        self.differentials.iter().map(|(&i, m)| (i, m))
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.generators
            .iter()
            .map(|(&i, g)| if i.rem_euclid(2) == 0 { g.len() as i64 } else { -(g.len() as i64) })
            .sum()
    }

    /// Verify `d^{i+1} d^i = 0` in every degree.
    pub fn check_d_squared(&self) -> Result<()> {
        for (&i, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(i + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::NotAComplex { degree: i });
                }
            }
        }
        Ok(())
    }

    pub fn map_generators<H>(self, f: impl Fn(G) -> H) -> BigradedComplex<H> {
        BigradedComplex {
            quantum: self.quantum,
            generators: self
                .generators
                .into_iter()
                .map(|(i, g)| (i, g.into_iter().map(&f).collect()))
                .collect(),
            differentials: self.differentials,
        }
    }
}

impl<G: Serialize> BigradedComplex<G> {
    /// `{quantum, degrees: {i: {generators: [...], differential: {...}}}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let degrees: serde_json::Map<String, serde_json::Value> = self
            .generators
            .iter()
            .map(|(&i, gens)| {
                (
                    i.to_string(),
                    json!({
                        "generators": gens,
                        "differential": self.differential(i).to_json(),
                    }),
                )
            })
            .collect();
        json!({ "quantum": self.quantum, "degrees": degrees })
    }
}
