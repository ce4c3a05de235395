//! Closed-form rank-test matrices and the staged row reduction they come from.
//!
//! All entries are binomial expressions in the four mutation invariants,
//! reduced into `F_p` at construction. Notation used throughout:
//! `o = one_min`, `t = two_min`, `n2 = neg2_max`, `n3 = neg3_max`.

mod build;
mod entries;
mod staged;

pub use build::{build_c, is_member_by_rank, Clamp, SolvableSystem, Table};
pub use entries::{alpha, beta, beta0, blacksquare, delta, heart, EntryContext};
pub use staged::{build_b_part_a, build_b_part_b_lower, reduce_stages, Case, RowLabel, StagedBlocks};

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::FpMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("{table} preconditions fail for {ctx}: {reason}")]
    Precondition {
        table: &'static str,
        ctx: String,
        reason: &'static str,
    },
    #[error("invalid invariants: {0}")]
    InvalidContext(&'static str),
    #[error("unknown table '{0}' (expected T5, T6, T8, B_A or B_B)")]
    UnknownTable(String),
}

/// Plain-text dump: a header line then one line of residues per row.
pub fn dump(name: &str, ctx: &EntryContext, m: &FpMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "table={name} p={} one_min={} two_min={} neg2={} neg3={}",
        ctx.p(),
        ctx.one_min(),
        ctx.two_min(),
        ctx.neg2(),
        ctx.neg3()
    );
    out.push_str(&m.to_string());
    out
}
