use std::fmt;
use std::str::FromStr;

use log::debug;
use serde::Serialize;

use crate::field::FpMatrix;

use super::entries::{beta, beta0, blacksquare, heart, EntryContext};
use super::TableError;

/// The three closed-form rank tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Table {
    T5,
    T6,
    T8,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::T5 => "T5",
            Table::T6 => "T6",
            Table::T8 => "T8",
        }
    }

    fn check(self, ctx: &EntryContext) -> Result<(), TableError> {
        let (o, t, n2, n3) = (ctx.one_min(), ctx.two_min(), ctx.neg2(), ctx.neg3());
        let fail = |reason| {
            Err(TableError::Precondition {
                table: self.name(),
                ctx: ctx.to_string(),
                reason,
            })
        };
        match self {
            Table::T5 | Table::T6 if n2 == 0 => fail("needs neg2 >= 1"),
            Table::T5 | Table::T6 if o <= n2 => fail("needs one_min > neg2"),
            Table::T5 | Table::T8 if !(o.max(t) <= n3 && n3 + 1 < o + t) => {
                fail("needs max(one_min, two_min) <= neg3 < one_min + two_min - 1")
            }
            Table::T6 if !(t <= n3 && n3 < o) => fail("needs two_min <= neg3 < one_min"),
            Table::T8 if n2 != 0 => fail("needs neg2 = 0"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Table {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T5" => Ok(Table::T5),
            "T6" => Ok(Table::T6),
            "T8" => Ok(Table::T8),
            other => Err(TableError::UnknownTable(other.to_string())),
        }
    }
}

/// Rows dropped when a nominal row inventory exceeds the `one_min - neg2`
/// rows that survive the staged reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Clamp {
    pub nominal_rows: usize,
    pub kept_rows: usize,
}

/// `C x = e` with `e = (0, ..., 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvableSystem {
    pub table: Table,
    pub matrix: FpMatrix,
    pub e: Vec<u32>,
    pub clamp: Option<Clamp>,
}

impl SolvableSystem {
    fn new(table: Table, matrix: FpMatrix, clamp: Option<Clamp>) -> Self {
        let mut e = vec![0; matrix.rows()];
        if let Some(last) = e.last_mut() {
            *last = 1;
        }
        SolvableSystem {
            table,
            matrix,
            e,
            clamp,
        }
    }

    /// `(rank C, rank [C | e])`.
    pub fn ranks(&self) -> (usize, usize) {
        self.matrix
            .rank_pair(&self.e)
            .expect("e has one entry per row")
    }
}

/// Builds the closed-form system for `table`.
///
/// * T5: `(o - n2) x (k2 + 1)`, entry `(r, c) = beta(o - 1 - r - c)`.
/// * T8: `o x (k2 + 1)`, entry `(r, c) = beta0(o - 1 - r - c)`.
/// * T6: `k'+1` columns; heart rows for `i = k, ..., 1` (entry `♥_i^c`), then
///   `■` rows (entry `■_{c + r'}`), truncated to the first `o - n2` rows.
pub fn build_c(ctx: &EntryContext, table: Table) -> Result<SolvableSystem, TableError> {
    table.check(ctx)?;
    let p = ctx.p();
    let o = ctx.one_min() as i64;
    let cols = (ctx.k2() + 1) as usize;
    let fill = |rows: usize, f: &dyn Fn(i64, i64) -> u32| {
        let mut m = FpMatrix::zeros(rows, cols, p);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r as i64, c as i64));
            }
        }
        m
    };
    let sys = match table {
        Table::T5 => {
            let rows = (ctx.one_min() - ctx.neg2()) as usize;
            let m = fill(rows, &|r, c| beta(o - 1 - r - c, ctx).value());
            SolvableSystem::new(table, m, None)
        }
        Table::T8 => {
            let m = fill(ctx.one_min() as usize, &|r, c| beta0(o - 1 - r - c, ctx).value());
            SolvableSystem::new(table, m, None)
        }
        Table::T6 => {
            let k = ctx.k() as usize;
            let l = (ctx.one_min() - ctx.neg2()) as usize;
            let squares = l.saturating_sub(k);
            let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k + squares);
            for i in (1..=k as i64).rev() {
                rows.push((0..cols as i64).map(|c| heart(i, c, ctx).value().into()).collect());
            }
            for r in 0..squares as i64 {
                rows.push(
                    (0..cols as i64)
                        .map(|c| blacksquare(c + r, ctx).value().into())
                        .collect(),
                );
            }
            let clamp = (rows.len() > l).then(|| {
                debug!("T6 clamp {ctx}: {} nominal rows, keeping first {l}", rows.len());
                Clamp {
                    nominal_rows: rows.len(),
                    kept_rows: l,
                }
            });
            rows.truncate(l);
            let m = FpMatrix::from_rows(p, cols, &rows).expect("rows built at width cols");
            SolvableSystem::new(table, m, clamp)
        }
    };
    Ok(sys)
}

/// Membership verdict of a rank test: solvable, and at least one row.
pub fn is_member_by_rank(sys: &SolvableSystem) -> bool {
    if sys.matrix.rows() == 0 {
        return false;
    }
    let (rc, rce) = sys.ranks();
    rc == rce
}
