//! Per-monomial membership decisions from the four mutation invariants.
//!
//! Only the monomials of `f` are read; coefficients are treated as 1.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Monomial, TermLabel, Trinomial};
use crate::tables::{build_c, is_member_by_rank, Clamp, EntryContext, Table};

/// `(1_min, 2_min, (-2)_max, (-3)_max)` of a monomial `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MutationInvariants {
    /// Fewest factors `[1]` that push some exponent of `A` to `q`.
    pub one_min: u64,
    /// Fewest factors `[2]` that push some exponent of `A` to `q`.
    pub two_min: u64,
    /// How often `[2]` divides `A`.
    pub neg2_max: u64,
    /// How often `[3]` divides `A`.
    pub neg3_max: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    Member,
    NotMember,
}

impl Verdict {
    pub fn from_bool(member: bool) -> Self {
        if member {
            Verdict::Member
        } else {
            Verdict::NotMember
        }
    }

    pub fn is_member(self) -> bool {
        self == Verdict::Member
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Member => "member",
            Verdict::NotMember => "not_member",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Leaf of the decision tree that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    CondI,
    CondII,
    NoTermDivides,
    AlwaysSolvableI1,
    AlwaysSolvableII1,
    RankTestT5,
    RankTestT6,
    RankTestT8,
    Iff1minLeNeg2max,
    UnsolvableRemark,
    UnsolvableII3a,
    UnsolvableII3b,
    UnsolvableII3c,
}

impl Branch {
    pub const ALL: [Branch; 13] = [
        Branch::CondI,
        Branch::CondII,
        Branch::NoTermDivides,
        Branch::AlwaysSolvableI1,
        Branch::AlwaysSolvableII1,
        Branch::RankTestT5,
        Branch::RankTestT6,
        Branch::RankTestT8,
        Branch::Iff1minLeNeg2max,
        Branch::UnsolvableRemark,
        Branch::UnsolvableII3a,
        Branch::UnsolvableII3b,
        Branch::UnsolvableII3c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Branch::CondI => "Cond_i",
            Branch::CondII => "Cond_ii",
            Branch::NoTermDivides => "NoTermDivides",
            Branch::AlwaysSolvableI1 => "AlwaysSolvable_I1",
            Branch::AlwaysSolvableII1 => "AlwaysSolvable_II1",
            Branch::RankTestT5 => "RankTest_T5",
            Branch::RankTestT6 => "RankTest_T6",
            Branch::RankTestT8 => "RankTest_T8",
            Branch::Iff1minLeNeg2max => "Iff_1min_le_neg2max",
            Branch::UnsolvableRemark => "Unsolvable_Remark",
            Branch::UnsolvableII3a => "Unsolvable_II3a",
            Branch::UnsolvableII3b => "Unsolvable_II3b",
            Branch::UnsolvableII3c => "Unsolvable_II3c",
        }
    }

    pub fn table(self) -> Option<Table> {
        match self {
            Branch::RankTestT5 => Some(Table::T5),
            Branch::RankTestT6 => Some(Table::T6),
            Branch::RankTestT8 => Some(Table::T8),
            _ => None,
        }
    }

    pub fn is_rank_test(self) -> bool {
        self.table().is_some()
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape and ranks of the system behind a rank-test verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankWitness {
    pub table: Table,
    pub rows: usize,
    pub cols: usize,
    pub rank_c: usize,
    pub rank_ce: usize,
    pub clamp: Option<Clamp>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipDecision {
    pub verdict: Verdict,
    pub branch: Branch,
    pub invariants: MutationInvariants,
    pub rank_witness: Option<RankWitness>,
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn over_support(term: &Monomial, a: &[u32], f: impl Fn(u64, u64) -> u64) -> u64 {
    term.exponents()
        .iter()
        .zip(a)
        .filter(|(&t, _)| t > 0)
        .map(|(&t, &ai)| f(u64::from(ai), u64::from(t)))
        .min()
        .expect("terms are non-constant")
}

/// Mutation invariants of `a` (exponents `< q`, one per variable of `f`).
pub fn invariants(a: &[u32], f: &Trinomial, q: u64) -> MutationInvariants {
    debug_assert_eq!(a.len(), f.nvars());
    debug_assert!(a.iter().all(|&e| u64::from(e) < q));
    let to_q = |ai: u64, t: u64| ceil_div(q.saturating_sub(ai), t);
    let divs = |ai: u64, t: u64| ai / t;
    MutationInvariants {
        one_min: over_support(f.monomial(TermLabel::One), a, to_q),
        two_min: over_support(f.monomial(TermLabel::Two), a, to_q),
        neg2_max: over_support(f.monomial(TermLabel::Two), a, divs),
        neg3_max: over_support(f.monomial(TermLabel::Three), a, divs),
    }
}

/// Branch selected by the invariants once `[1]` is known not to divide `A`.
/// Returns the branch and, for the non-rank branches, the verdict.
pub fn branch_of(inv: &MutationInvariants) -> (Branch, Option<bool>) {
    let MutationInvariants {
        one_min: o,
        two_min: t,
        neg2_max: n2,
        neg3_max: n3,
    } = *inv;
    if n2 >= 1 && o <= n2 {
        return (Branch::CondII, Some(true));
    }
    if n3 == 0 {
        return (Branch::NoTermDivides, Some(false));
    }
    let always = n3 + 1 >= o + t;
    let rank_window = o.max(t) <= n3;
    if n2 == 0 {
        return if always {
            (Branch::AlwaysSolvableII1, Some(true))
        } else if rank_window {
            (Branch::RankTestT8, None)
        } else if n3 < t && n3 >= o {
            (Branch::UnsolvableII3a, Some(false))
        } else if n3 < t {
            (Branch::UnsolvableII3b, Some(false))
        } else {
            (Branch::UnsolvableII3c, Some(false))
        };
    }
    if always {
        (Branch::AlwaysSolvableI1, Some(true))
    } else if rank_window {
        (Branch::RankTestT5, None)
    } else if n3 < t && (n3 >= o || o <= n2 + n3) {
        (Branch::Iff1minLeNeg2max, Some(o <= n2))
    } else if n3 < t {
        (Branch::UnsolvableRemark, Some(false))
    } else {
        (Branch::RankTestT6, None)
    }
}

/// Runs the rank test of `table` for the given invariants.
pub fn rank_test(inv: &MutationInvariants, table: Table, f: &Trinomial) -> (bool, RankWitness) {
    let ctx = EntryContext::from_invariants(inv, f.prime()).expect("invariants are positive");
    let sys = build_c(&ctx, table).expect("branch selection guarantees preconditions");
    let (rank_c, rank_ce) = sys.ranks();
    let witness = RankWitness {
        table,
        rows: sys.matrix.rows(),
        cols: sys.matrix.cols(),
        rank_c,
        rank_ce,
        clamp: sys.clamp,
    };
    (is_member_by_rank(&sys), witness)
}

/// Decides whether `A` lies in `A_c + (f)` at `q`.
pub fn classify(a: &[u32], f: &Trinomial, q: u64) -> MembershipDecision {
    let inv = invariants(a, f, q);
    let divides = |label| {
        f.monomial(label)
            .exponents()
            .iter()
            .zip(a)
            .all(|(t, e)| t <= e)
    };
    let (branch, settled) = if divides(TermLabel::One) {
        (Branch::CondI, Some(true))
    } else {
        branch_of(&inv)
    };
    let (member, rank_witness) = match (settled, branch.table()) {
        (Some(v), _) => (v, None),
        (None, Some(table)) => {
            let (v, w) = rank_test(&inv, table, f);
            (v, Some(w))
        }
        (None, None) => unreachable!("every non-rank branch is settled"),
    };
    MembershipDecision {
        verdict: Verdict::from_bool(member),
        branch,
        invariants: inv,
        rank_witness,
    }
}
