use std::fmt;

use super::{FieldError, Prime};

/// Dense row-major matrix over `F_p`.
///
/// Entries are kept as residues in `[0, p)`. Shapes with zero rows or zero
/// columns are legal and have rank 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: Prime,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: Prime) -> Self {
        FpMatrix {
            rows,
            cols,
            p,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: Prime) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from explicit rows; values are reduced mod `p`.
    ///
    /// An empty row list yields a `0 x cols` matrix, so the column count has
    /// to be supplied separately for that case.
    pub fn from_rows<R: AsRef<[u64]>>(
        p: Prime,
        cols: usize,
        rows: &[R],
    ) -> Result<Self, FieldError> {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(FieldError::RaggedRows {
                    first: cols,
                    other: r.len(),
                });
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, p.reduce(v));
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p.get());
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Rows `start..start + count` as a new matrix.
    pub fn row_range(&self, start: usize, count: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(count, self.cols, self.p);
        m.entries
            .copy_from_slice(&self.entries[start * self.cols..(start + count) * self.cols]);
        m
    }

    /// `[self | b]`.
    pub fn augment(&self, b: &[u32]) -> Result<FpMatrix, FieldError> {
        if b.len() != self.rows {
            return Err(FieldError::DimensionMismatch {
                expected: self.rows,
                actual: b.len(),
            });
        }
        let mut m = FpMatrix::zeros(self.rows, self.cols + 1, self.p);
        for (r, &v) in b.iter().enumerate() {
            m.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            m.set(r, self.cols, self.p.reduce(u64::from(v)));
        }
        Ok(m)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: u32) {
        let p = self.p;
        for c in 0..self.cols {
            let v = p.add(self.get(dst, c), p.mul(factor, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    pub fn scale_row(&mut self, r: usize, factor: u32) {
        let p = self.p;
        for v in self.row_mut(r) {
            *v = p.mul(*v, factor);
        }
    }

    /// Rank over `F_p`. `p = 2` runs on bit-packed rows with XOR updates.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.p.get() == 2 {
            rank_gf2(self)
        } else {
            rank_fraction_free(self.clone())
        }
    }

    /// True iff `M x = b` has a solution, i.e. `rank(M) = rank([M | b])`.
    pub fn is_solvable(&self, b: &[u32]) -> Result<bool, FieldError> {
        let (rc, rce) = self.rank_pair(b)?;
        Ok(rc == rce)
    }

    /// `(rank(M), rank([M | b]))`.
    pub fn rank_pair(&self, b: &[u32]) -> Result<(usize, usize), FieldError> {
        let aug = self.augment(b)?;
        Ok((self.rank(), aug.rank()))
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn rank_gf2(m: &FpMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut bits = vec![0u64; m.rows * words];
    for r in 0..m.rows {
        for c in 0..m.cols {
            if m.get(r, c) != 0 {
                bits[r * words + c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut rank = 0;
    for c in 0..m.cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(piv) = (rank..m.rows).find(|&r| bits[r * words + w] & bit != 0) else {
            continue;
        };
        if piv != rank {
            for k in 0..words {
                bits.swap(piv * words + k, rank * words + k);
            }
        }
        for r in rank + 1..m.rows {
            if bits[r * words + w] & bit != 0 {
                for k in w..words {
                    bits[r * words + k] ^= bits[rank * words + k];
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

// Pivot on the first nonzero entry; update rows as piv*row - a*pivot_row so
// no inverses are needed during the sweep.
fn rank_fraction_free(mut m: FpMatrix) -> usize {
    let p = m.p;
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(piv) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
            continue;
        };
        m.swap_rows(piv, rank);
        let pv = m.get(rank, c);
        for r in rank + 1..m.rows {
            let a = m.get(r, c);
            if a == 0 {
                continue;
            }
            for k in c..m.cols {
                let v = p.sub(p.mul(pv, m.get(r, k)), p.mul(a, m.get(rank, k)));
                m.set(r, k, v);
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::binom_mod_p;
    use proptest::prelude::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(2, p(2)).rank(), 2);
        let ones = FpMatrix::from_rows(p(2), 2, &[[1u64, 1], [1, 1]]).unwrap();
        assert_eq!(ones.rank(), 1);
        // C(i+j, j) mod 2 for i, j in 0..3: [[1,1,1],[1,0,1],[1,1,0]].
        let mut pascal = FpMatrix::zeros(3, 3, p(2));
        for i in 0..3 {
            for j in 0..3 {
                pascal.set(i, j, binom_mod_p((i + j) as u64, j as i64, p(2)).value());
            }
        }
        assert_eq!(pascal.row(1), &[1, 0, 1]);
        assert_eq!(pascal.rank(), 3);
    }

    #[test]
    fn degenerate_shapes() {
        let empty = FpMatrix::zeros(0, 0, p(3));
        assert_eq!(empty.rank(), 0);
        assert!(empty.is_solvable(&[]).unwrap());
        assert_eq!(FpMatrix::zeros(0, 4, p(3)).rank(), 0);
        assert_eq!(FpMatrix::zeros(4, 0, p(3)).rank(), 0);
        let zero_row = FpMatrix::zeros(1, 1, p(2));
        assert!(!zero_row.is_solvable(&[1]).unwrap());
        let no_cols = FpMatrix::zeros(1, 0, p(5));
        assert!(!no_cols.is_solvable(&[3]).unwrap());
    }

    #[test]
    fn solvability_examples() {
        let m = FpMatrix::from_rows(p(2), 2, &[[1u64, 1], [0, 1]]).unwrap();
        assert!(m.is_solvable(&[0, 1]).unwrap());
        assert_eq!(
            m.is_solvable(&[1]),
            Err(FieldError::DimensionMismatch {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: Vec<Vec<u64>> = vec![vec![1, 2], vec![3]];
        assert!(FpMatrix::from_rows(p(5), 2, &rows).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u64, 3, 5]), 0usize..7, 0usize..7).prop_flat_map(
            |(pv, r, c)| {
                prop::collection::vec(0u64..pv, r * c).prop_map(move |vals| {
                    let rows: Vec<Vec<u64>> = vals.chunks(c.max(1)).map(|s| s.to_vec()).collect();
                    let rows = if c == 0 { vec![vec![]; r] } else { rows };
                    FpMatrix::from_rows(p(pv), c, &rows).unwrap()
                })
            },
        )
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_invariant_under_row_operations(
            m in arb_matrix(), a in 0usize..7, b in 0usize..7, unit in 1u32..5, mult in 0u32..5
        ) {
            prop_assume!(m.rows() > 0);
            let (a, b) = (a % m.rows(), b % m.rows());
            let pr = m.modulus();
            let base = m.rank();

            let mut swapped = m.clone();
            swapped.swap_rows(a, b);
            prop_assert_eq!(swapped.rank(), base);

            let unit = unit % pr.get();
            prop_assume!(unit != 0);
            let mut scaled = m.clone();
            scaled.scale_row(a, unit);
            prop_assert_eq!(scaled.rank(), base);

            if a != b {
                let mut added = m.clone();
                added.add_row_multiple(a, b, mult % pr.get());
                prop_assert_eq!(added.rank(), base);
            }
        }

        #[test]
        fn zero_rhs_always_solvable(m in arb_matrix()) {
            let zero = vec![0u32; m.rows()];
            prop_assert!(m.is_solvable(&zero).unwrap());
        }
    }
}
