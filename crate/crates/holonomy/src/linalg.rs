//! Exact sparse linear algebra over the rationals.
//!
//! Elimination is fraction-free: each row is cleared to coprime integer
//! entries, and row combinations divide out the content so intermediate
//! entries stay integral and small.

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A sparse vector with integer entries, sorted by column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    pub entries: Vec<(u32, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn from_scalars(items: &[(usize, Scalar)]) -> Self {
        let lcm = crate::scalar::denominator_lcm(items.iter().map(|(_, s)| s));
        let mut entries: Vec<(u32, BigInt)> = items
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (*c as u32, s.numer() * (&lcm / s.denom())))
            .collect();
        entries.sort_by_key(|(c, _)| *c);
        // merge duplicates
        let mut merged: Vec<(u32, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let mut out = SparseVec { entries: merged };
        out.remove_content();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading_col(&self) -> Option<u32> {
        self.entries.first().map(|(c, _)| *c)
    }

    /// Divide all entries by their gcd and make the leading entry positive.
    pub fn remove_content(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        let negate = self.entries[0].1.is_negative();
        if g.is_one() && !negate {
            return;
        }
        if negate {
            g = -g;
        }
        for (_, v) in &mut self.entries {
            *v = &*v / &g;
        }
    }

    /// self * a + other * b, content-normalized.
    pub fn combine(&self, a: &BigInt, other: &SparseVec, b: &BigInt) -> SparseVec {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some((c1, _)), Some((c2, _))) => {
                    if c1 == c2 {
                        let v = &self.entries[i].1 * a + &other.entries[j].1 * b;
                        if !v.is_zero() {
                            entries.push((*c1, v));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    c1 < c2
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                let v = &self.entries[i].1 * a;
                if !v.is_zero() {
                    entries.push((self.entries[i].0, v));
                }
                i += 1;
            } else {
                let v = &other.entries[j].1 * b;
                if !v.is_zero() {
                    entries.push((other.entries[j].0, v));
                }
                j += 1;
            }
        }
        let mut out = SparseVec { entries };
        out.remove_content();
        out
    }

    pub fn to_scalars(&self) -> Vec<(usize, Scalar)> {
        self.entries.iter().map(|(c, v)| (*c as usize, Scalar::from_integer(v.clone()))).collect()
    }
}

/// Incremental echelon form: rows indexed by their leading column. Feeding
/// vectors one at a time yields the rank of their span; `reduce` gives the
/// residual of a vector against the current span.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    pivots: BTreeMap<u32, SparseVec>,
}

impl Eliminator {
    pub fn new() -> Self {
        Eliminator { pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the pivot rows until its leading column is not a
    /// pivot column (or it vanishes).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some(lead) = v.leading_col() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let a = p.entries[0].1.clone();
            let b = -v.entries[0].1.clone();
            let g = a.gcd(&b);
            v = v.combine(&(a / &g), p, &(b / g));
            debug_assert!(v.leading_col() != Some(lead));
        }
        v
    }

    /// Add `v` to the span. Returns the reduced residual if it was
    /// independent, `None` if it already lay in the span.
    pub fn insert(&mut self, v: SparseVec) -> Option<&SparseVec> {
        let r = self.reduce(v);
        if r.is_zero() {
            return None;
        }
        let lead = r.leading_col().unwrap();
        self.pivots.insert(lead, r);
        Some(&self.pivots[&lead])
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivot_cols(&self) -> Vec<u32> {
        self.pivots.keys().copied().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }
}

/// A sparse matrix in triplet form over exact rationals. No explicit zero
/// entries are stored.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn push(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        if !value.is_zero() {
            self.columns[col].push((row, value));
        }
    }

    pub fn column(&self, col: usize) -> &[(usize, Scalar)] {
        &self.columns[col]
    }

    /// Exact rank and a basis of the (right) nullspace.
    ///
    /// Row-reduces the transpose augmented with an identity block; rows whose
    /// matrix block vanishes carry nullspace vectors in the identity block.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<(usize, Scalar)>>) {
        let m = self.rows as u32;
        let mut elim = Eliminator::new();
        let mut kernel: Vec<SparseVec> = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut items: Vec<(usize, Scalar)> = col.clone();
            items.push((self.rows + j, crate::scalar::one()));
            let v = SparseVec::from_scalars(&items);
            let r = elim.reduce(v);
            match r.leading_col() {
                None => unreachable!("augmented row cannot vanish"),
                Some(lead) if lead >= m => kernel.push(r),
                Some(lead) => {
                    elim.pivots.insert(lead, r);
                }
            }
        }
        let rank = elim.rank();
        let kernel = kernel
            .into_iter()
            .map(|v| {
                v.to_scalars().into_iter().map(|(c, s)| (c - self.rows, s)).collect::<Vec<_>>()
            })
            .collect();
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new();
        for col in &self.columns {
            elim.insert(SparseVec::from_scalars(col));
        }
        elim.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{from_int, ratio};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Independent dense Gaussian elimination over exact rationals.
    fn dense_rank(rows: usize, cols: usize, get: impl Fn(usize, usize) -> Scalar) -> usize {
        let mut a: Vec<Vec<Scalar>> =
            (0..rows).map(|i| (0..cols).map(|j| get(i, j)).collect()).collect();
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for r in 0..rows {
                if r != rank && !a[r][col].is_zero() {
                    let factor = &a[r][col] / &pivot;
                    for c in 0..cols {
                        let delta = &factor * &a[rank][c];
                        a[r][c] = &a[r][c] - &delta;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    #[test]
    fn identity_matrix() {
        let mut m = SparseMatrix::new(2, 2);
        m.push(0, 0, from_int(1));
        m.push(1, 1, from_int(1));
        let (rank, kernel) = m.rank_nullspace();
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::new(3, 4);
        let (rank, kernel) = m.rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 4);
    }

    #[test]
    fn random_matrices_match_dense_oracle() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..30 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| if rng.gen_bool(0.6) { rng.gen_range(-5..=5) } else { 0 })
                        .collect()
                })
                .collect();
            let mut m = SparseMatrix::new(rows, cols);
            for (i, row) in data.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.push(i, j, from_int(v));
                }
            }
            let expected = dense_rank(rows, cols, |i, j| from_int(data[i][j]));
            let (rank, kernel) = m.rank_nullspace();
            assert_eq!(rank, expected);
            assert_eq!(rank + kernel.len(), cols, "rank-nullity");
            // every kernel vector is annihilated
            for v in &kernel {
                for i in 0..rows {
                    let mut acc = crate::scalar::zero();
                    for (c, s) in v {
                        acc += &from_int(data[i][*c]) * s;
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn rational_entries() {
        let mut m = SparseMatrix::new(2, 3);
        m.push(0, 0, ratio(1, 2));
        m.push(0, 1, ratio(1, 3));
        m.push(1, 0, ratio(3, 2));
        m.push(1, 1, from_int(1));
        m.push(1, 2, from_int(1));
        let (rank, kernel) = m.rank_nullspace();
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
    }
}
