//! The lower rows of the right-hand block and their staged reduction.
//!
//! Rows are labelled `★_r` (`r = 0..o-1`, listed from the largest `r` down)
//! followed by a final bottom row. `★_r` is present iff `r + 1 <= n3`.
//! Columns split into Part A (type-A columns `i`, listed from `i = n2` down,
//! present iff `i <= n2` and `o - i <= n3`; only `i = 0` in Case II) and the
//! lower Part B (columns `☆_c`, `c = 0..o-1`, present iff `t + c <= n3`).
//!
//! Entries:
//! * Part A at `(★_r, i)`: `(-1)^(o-r) C(o-r-1, i)`; bottom row `(-1)^(o+1) C(o, i)`.
//! * Part B at `(★_r, ☆_c)`: `alpha_{r-c}`; bottom row zero.
//! * Case II only: `★_0` has 0 in Part A and the right-hand side carries a
//!   1 in both of its last two rows.
//!
//! A stage "below `X`" replaces every row strictly below `X` by itself plus
//! the row directly above it (all rows at once).

use serde::Serialize;

use crate::field::{FpMatrix, Prime};

use super::entries::{alpha, EntryContext};
use super::TableError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `[2]` divides `A`.
    I,
    /// `[2]` does not divide `A`.
    II,
}

impl Case {
    pub fn of(ctx: &EntryContext) -> Case {
        if ctx.neg2() == 0 {
            Case::II
        } else {
            Case::I
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowLabel {
    Star(u64),
    Bottom,
}

/// Part A, lower Part B and the right-hand side, sharing one row list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedBlocks {
    pub case: Case,
    pub rows: Vec<RowLabel>,
    pub a_cols: Vec<u64>,
    pub b_cols: Vec<u64>,
    pub part_a: FpMatrix,
    pub part_b: FpMatrix,
    pub e: Vec<u32>,
    pub reduced: bool,
}

fn check(ctx: &EntryContext) -> Result<(), TableError> {
    let fail = |reason| {
        Err(TableError::Precondition {
            table: "B",
            ctx: ctx.to_string(),
            reason,
        })
    };
    if ctx.neg3() == 0 {
        return fail("needs neg3 >= 1");
    }
    if ctx.neg2() >= 1 && ctx.one_min() <= ctx.neg2() {
        return fail("needs one_min > neg2 when neg2 >= 1");
    }
    Ok(())
}

fn row_labels(ctx: &EntryContext) -> Vec<RowLabel> {
    let top = ctx.one_min().min(ctx.neg3());
    (0..top)
        .rev()
        .map(RowLabel::Star)
        .chain(std::iter::once(RowLabel::Bottom))
        .collect()
}

fn a_columns(ctx: &EntryContext) -> Vec<u64> {
    let (o, n2, n3) = (ctx.one_min(), ctx.neg2(), ctx.neg3());
    let hi = match Case::of(ctx) {
        Case::I => n2,
        Case::II => 0,
    };
    (0..=hi).rev().filter(|&i| o.saturating_sub(i) <= n3 && i <= n2).collect()
}

fn b_columns(ctx: &EntryContext) -> Vec<u64> {
    (0..ctx.one_min())
        .filter(|&c| ctx.two_min() + c <= ctx.neg3())
        .collect()
}

fn signed_binom(sign_exp: i64, n: u64, k: u64, p: Prime) -> u32 {
    let b = crate::field::binom_mod_p(n, k as i64, p).value();
    p.mul(p.sign(sign_exp), b)
}

/// Part A before any row operation.
pub fn build_b_part_a(ctx: &EntryContext) -> Result<FpMatrix, TableError> {
    check(ctx)?;
    Ok(part_a(ctx, &row_labels(ctx), &a_columns(ctx)))
}

fn part_a(ctx: &EntryContext, rows: &[RowLabel], cols: &[u64]) -> FpMatrix {
    let p = ctx.p();
    let o = ctx.one_min();
    let mut m = FpMatrix::zeros(rows.len(), cols.len(), p);
    for (ri, row) in rows.iter().enumerate() {
        for (ci, &i) in cols.iter().enumerate() {
            let v = match *row {
                RowLabel::Star(0) if Case::of(ctx) == Case::II => 0,
                RowLabel::Star(r) => signed_binom((o - r) as i64, o - r - 1, i, p),
                RowLabel::Bottom => signed_binom(o as i64 + 1, o, i, p),
            };
            m.set(ri, ci, v);
        }
    }
    m
}

/// The fully specified lower block of Part B before any row operation.
pub fn build_b_part_b_lower(ctx: &EntryContext) -> Result<FpMatrix, TableError> {
    check(ctx)?;
    Ok(part_b(ctx, &row_labels(ctx), &b_columns(ctx)))
}

fn part_b(ctx: &EntryContext, rows: &[RowLabel], cols: &[u64]) -> FpMatrix {
    let mut m = FpMatrix::zeros(rows.len(), cols.len(), ctx.p());
    for (ri, row) in rows.iter().enumerate() {
        if let RowLabel::Star(r) = *row {
            for (ci, &c) in cols.iter().enumerate() {
                m.set(ri, ci, alpha(r as i64 - c as i64, ctx).value());
            }
        }
    }
    m
}

impl StagedBlocks {
    /// Raw blocks and right-hand side.
    pub fn build(ctx: &EntryContext) -> Result<Self, TableError> {
        check(ctx)?;
        let case = Case::of(ctx);
        let rows = row_labels(ctx);
        let a_cols = a_columns(ctx);
        let b_cols = b_columns(ctx);
        let mut e = vec![0; rows.len()];
        let n = e.len();
        e[n - 1] = 1;
        if case == Case::II && n >= 2 {
            e[n - 2] = 1;
        }
        Ok(StagedBlocks {
            case,
            part_a: part_a(ctx, &rows, &a_cols),
            part_b: part_b(ctx, &rows, &b_cols),
            rows,
            a_cols,
            b_cols,
            e,
            reduced: false,
        })
    }

    /// Row count identified with the closed-form matrix: `o - n2` in Case I,
    /// `o` in Case II, capped at the rows that exist.
    pub fn identified_rows(&self, ctx: &EntryContext) -> usize {
        let l = match self.case {
            Case::I => ctx.one_min() - ctx.neg2(),
            Case::II => ctx.one_min(),
        };
        (l as usize).min(self.rows.len())
    }

    /// True when the nominal identified row count exceeds the available rows.
    pub fn identified_capped(&self, ctx: &EntryContext) -> bool {
        let l = match self.case {
            Case::I => ctx.one_min() - ctx.neg2(),
            Case::II => ctx.one_min(),
        };
        l as usize > self.rows.len()
    }

    fn tail(&self, m: &FpMatrix, ctx: &EntryContext) -> FpMatrix {
        let l = self.identified_rows(ctx);
        m.row_range(m.rows() - l, l)
    }

    /// Last identified rows of Part A.
    pub fn identified_part_a(&self, ctx: &EntryContext) -> FpMatrix {
        self.tail(&self.part_a, ctx)
    }

    /// Last identified rows of Part B.
    pub fn identified_part_b(&self, ctx: &EntryContext) -> FpMatrix {
        self.tail(&self.part_b, ctx)
    }

    /// Part A rows above the identified ones.
    pub fn upper_part_a(&self, ctx: &EntryContext) -> FpMatrix {
        let l = self.identified_rows(ctx);
        self.part_a.row_range(0, self.part_a.rows() - l)
    }

    pub fn identified_e(&self, ctx: &EntryContext) -> Vec<u32> {
        let l = self.identified_rows(ctx);
        self.e[self.e.len() - l..].to_vec()
    }

    /// Solvability of the identified Part B rows against the identified
    /// right-hand side; an empty system is unsolvable.
    pub fn identified_solvable(&self, ctx: &EntryContext) -> bool {
        let b = self.identified_part_b(ctx);
        if b.rows() == 0 {
            return false;
        }
        b.is_solvable(&self.identified_e(ctx))
            .expect("e restricted to the same rows")
    }

    fn position(&self, label: RowLabel) -> usize {
        self.rows
            .iter()
            .position(|&r| r == label)
            .expect("stage label names an existing row")
    }

    fn stage_below(&mut self, label: RowLabel) {
        let pos = self.position(label);
        let p = self.part_a.modulus();
        for ri in (pos + 1..self.rows.len()).rev() {
            add_row_above(&mut self.part_a, ri);
            add_row_above(&mut self.part_b, ri);
            self.e[ri] = p.add(self.e[ri], self.e[ri - 1]);
        }
    }

    // Case II: subtract the last row from the last-but-one.
    fn tr_transform(&mut self) {
        let n = self.rows.len();
        if n < 2 {
            return;
        }
        let p = self.part_a.modulus();
        let minus_one = p.get() - 1;
        self.part_a.add_row_multiple(n - 2, n - 1, minus_one);
        self.part_b.add_row_multiple(n - 2, n - 1, minus_one);
        self.e[n - 2] = p.sub(self.e[n - 2], self.e[n - 1]);
    }
}

fn add_row_above(m: &mut FpMatrix, r: usize) {
    m.add_row_multiple(r, r - 1, 1);
}

/// Applies the stage schedule to raw blocks.
///
/// Case I, with `k = max(0, o - n3)` and top row `★_{o-k-1}`: the stage below
/// the top row runs `k + 1` times, then one stage below `★_{o-k-s}` for each
/// `s = 2..=n2-k+1`. Case II: the transform above, then one stage below the
/// top row.
pub fn reduce_stages(mut blocks: StagedBlocks, ctx: &EntryContext) -> StagedBlocks {
    if blocks.reduced {
        return blocks;
    }
    let top = blocks.rows[0];
    match blocks.case {
        Case::I => {
            let o = ctx.one_min() as i64;
            let k = ctx.k().max(0);
            for _ in 0..=k {
                blocks.stage_below(top);
            }
            for s in 2..=ctx.neg2() as i64 - k + 1 {
                let r = o - k - s;
                let label = if r >= 0 {
                    RowLabel::Star(r as u64)
                } else {
                    RowLabel::Bottom
                };
                blocks.stage_below(label);
            }
        }
        Case::II => {
            blocks.tr_transform();
            blocks.stage_below(top);
        }
    }
    blocks.reduced = true;
    blocks
}
