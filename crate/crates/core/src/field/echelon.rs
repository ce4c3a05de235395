use super::Prime;

/// Incrementally maintained echelon basis of a row space.
///
/// Columns are ordered; the *leading* column of a vector is its smallest
/// column index holding a nonzero entry. Each stored row has a distinct
/// leading column (its pivot), so after any sequence of insertions the pivot
/// set is exactly the set of leading columns of nonzero vectors in the span.
pub struct EchelonBasis {
    p: Prime,
    cols: usize,
    rows: Rows,
    pivot_of_col: Vec<u32>,
    pivots: Vec<usize>,
}

enum Rows {
    // p = 2, one bit per entry.
    Bits { words: usize, data: Vec<u64> },
    // p > 2, pivot entries normalized to 1.
    Dense { data: Vec<u32> },
}

const NO_PIVOT: u32 = u32::MAX;

impl EchelonBasis {
    pub fn new(p: Prime, cols: usize) -> Self {
        let rows = if p.get() == 2 {
            Rows::Bits {
                words: cols.div_ceil(64),
                data: Vec::new(),
            }
        } else {
            Rows::Dense { data: Vec::new() }
        };
        EchelonBasis {
            p,
            cols,
            rows,
            pivot_of_col: vec![NO_PIVOT; cols],
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NO_PIVOT
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Inserts a sparse row given as `(column, value)` pairs; repeated
    /// columns accumulate. Returns the new pivot column if the row was
    /// independent of the current span.
    pub fn insert_sparse(&mut self, entries: &[(usize, u32)]) -> Option<usize> {
        let p = self.p;
        match &mut self.rows {
            Rows::Bits { words, data } => {
                let words = *words;
                let mut row = vec![0u64; words];
                for &(c, v) in entries {
                    if v % 2 == 1 {
                        row[c / 64] ^= 1 << (c % 64);
                    }
                }
                let mut w = 0;
                loop {
                    while w < words && row[w] == 0 {
                        w += 1;
                    }
                    if w == words {
                        return None;
                    }
                    let c = w * 64 + row[w].trailing_zeros() as usize;
                    let slot = self.pivot_of_col[c];
                    if slot == NO_PIVOT {
                        self.pivot_of_col[c] = self.pivots.len() as u32;
                        self.pivots.push(c);
                        data.extend_from_slice(&row);
                        return Some(c);
                    }
                    let base = slot as usize * words;
                    for k in w..words {
                        row[k] ^= data[base + k];
                    }
                }
            }
            Rows::Dense { data } => {
                let cols = self.cols;
                let mut row = vec![0u32; cols];
                for &(c, v) in entries {
                    row[c] = p.add(row[c], p.reduce(u64::from(v)));
                }
                let mut c = 0;
                loop {
                    while c < cols && row[c] == 0 {
                        c += 1;
                    }
                    if c == cols {
                        return None;
                    }
                    let slot = self.pivot_of_col[c];
                    if slot == NO_PIVOT {
                        let inv = p.inv(row[c]);
                        for v in &mut row[c..] {
                            *v = p.mul(*v, inv);
                        }
                        self.pivot_of_col[c] = self.pivots.len() as u32;
                        self.pivots.push(c);
                        data.extend_from_slice(&row);
                        return Some(c);
                    }
                    let base = slot as usize * cols;
                    let factor = row[c];
                    for k in c..cols {
                        row[k] = p.sub(row[k], p.mul(factor, data[base + k]));
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FpMatrix;
    use proptest::prelude::*;

    #[test]
    fn leading_columns_are_pivots() {
        let p = Prime::new(3).unwrap();
        let mut b = EchelonBasis::new(p, 4);
        assert_eq!(b.insert_sparse(&[(1, 1), (3, 2)]), Some(1));
        assert_eq!(b.insert_sparse(&[(1, 2), (3, 1)]), None);
        assert_eq!(b.insert_sparse(&[(1, 1), (2, 1)]), Some(2));
        assert_eq!(b.insert_sparse(&[]), None);
        assert_eq!(b.rank(), 2);
        assert!(b.has_pivot(1) && b.has_pivot(2) && !b.has_pivot(0));
    }

    proptest! {
        #[test]
        fn rank_agrees_with_matrix_rank(
            pv in prop::sample::select(vec![2u64, 3, 5, 7]),
            rows in prop::collection::vec(prop::collection::vec(0u64..7, 70), 0..12)
        ) {
            let p = Prime::new(pv).unwrap();
            let m = FpMatrix::from_rows(p, 70, &rows).unwrap();
            let mut b = EchelonBasis::new(p, 70);
            for r in &rows {
                let sparse: Vec<(usize, u32)> = r.iter().enumerate()
                    .filter(|(_, &v)| v % pv != 0)
                    .map(|(c, &v)| (c, (v % pv) as u32)).collect();
                b.insert_sparse(&sparse);
            }
            prop_assert_eq!(b.rank(), m.rank());
        }
    }
}
