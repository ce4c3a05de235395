use std::fmt;

use crate::classifier::MutationInvariants;
use crate::field::{binom_mod_p, FpScalar, Prime};

use super::TableError;

/// Invariant quadruple plus the characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EntryContext {
    one_min: u64,
    two_min: u64,
    neg2: u64,
    neg3: u64,
    p: Prime,
}

impl EntryContext {
    pub fn new(
        one_min: u64,
        two_min: u64,
        neg2: u64,
        neg3: u64,
        p: Prime,
    ) -> Result<Self, TableError> {
        if one_min == 0 || two_min == 0 {
            return Err(TableError::InvalidContext("one_min and two_min must be positive"));
        }
        Ok(EntryContext {
            one_min,
            two_min,
            neg2,
            neg3,
            p,
        })
    }

    pub fn from_invariants(inv: &MutationInvariants, p: Prime) -> Result<Self, TableError> {
        Self::new(inv.one_min, inv.two_min, inv.neg2_max, inv.neg3_max, p)
    }

    pub fn one_min(&self) -> u64 {
        self.one_min
    }

    pub fn two_min(&self) -> u64 {
        self.two_min
    }

    pub fn neg2(&self) -> u64 {
        self.neg2
    }

    pub fn neg3(&self) -> u64 {
        self.neg3
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// `k2 = n3 - t` (negative when `[3]` divides fewer times than `t`).
    pub fn k2(&self) -> i64 {
        self.neg3 as i64 - self.two_min as i64
    }

    /// `k = o - n3`.
    pub fn k(&self) -> i64 {
        self.one_min as i64 - self.neg3 as i64
    }

    /// `k' = n3 - t`, the same quantity as `k2` under its Table 6 name.
    pub fn k_prime(&self) -> i64 {
        self.k2()
    }

    fn sign(&self) -> u32 {
        self.p.sign(self.two_min as i64 + 1)
    }
}

impl fmt::Display for EntryContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(one_min={}, two_min={}, neg2={}, neg3={}, p={})",
            self.one_min, self.two_min, self.neg2, self.neg3, self.p
        )
    }
}

/// `alpha_i = (-1)^(t+1) C(t-1, i)`.
pub fn alpha(i: i64, ctx: &EntryContext) -> FpScalar {
    let b = binom_mod_p(ctx.two_min - 1, i, ctx.p);
    ctx.p.scalar(u64::from(ctx.sign())) * b
}

/// `delta_l = C(n2+1, l)`.
pub fn delta(l: i64, ctx: &EntryContext) -> FpScalar {
    binom_mod_p(ctx.neg2 + 1, l, ctx.p)
}

// sum_{s=0..=upto} alpha_s * delta_{shift - s}, skipping terms that vanish
// for index reasons.
fn window(upto: i64, shift: i64, ctx: &EntryContext) -> FpScalar {
    let mut acc = FpScalar::zero(ctx.p);
    if upto < 0 {
        return acc;
    }
    let hi = upto.min(ctx.two_min as i64 - 1);
    let lo = (shift - ctx.neg2 as i64 - 1).max(0);
    for s in lo..=hi {
        acc = acc + alpha(s, ctx) * delta(shift - s, ctx);
    }
    acc
}

/// `beta_j = sum_{i=0..=j} alpha_i delta_{j-i}`; zero for `j < 0`.
pub fn beta(j: i64, ctx: &EntryContext) -> FpScalar {
    window(j, j, ctx)
}

/// `beta0_0 = alpha_0`, `beta0_j = alpha_{j-1} + alpha_j`; zero for `j < 0`.
pub fn beta0(j: i64, ctx: &EntryContext) -> FpScalar {
    match j {
        j if j < 0 => FpScalar::zero(ctx.p),
        0 => alpha(0, ctx),
        j => alpha(j - 1, ctx) + alpha(j, ctx),
    }
}

/// `■_j = sum_{s=0..=L} alpha_s delta_{L-s}` with `L = o - (k+1) - j`.
pub fn blacksquare(j: i64, ctx: &EntryContext) -> FpScalar {
    let l = ctx.one_min as i64 - (ctx.k() + 1) - j;
    window(l, l, ctx)
}

/// `♥_i^r = sum_{s=0..=L'} alpha_s delta_{L'+i-s}` with `L' = o - (k+1) - r`.
pub fn heart(i: i64, r: i64, ctx: &EntryContext) -> FpScalar {
    let l = ctx.one_min as i64 - (ctx.k() + 1) - r;
    window(l, l + i, ctx)
}
