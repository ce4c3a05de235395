//! Hilbert–Kunz functions of disjoint-term trinomial hypersurfaces over `F_p`.
//!
//! For `f = [3] + [2] + [1]` in `F_p[x_1, ..., x_m]` and `q = p^n`, the value
//! `HK(q)` is the `F_p`-dimension of `F_p[x]/(x_1^q, ..., x_m^q, f)`. It is
//! computed two independent ways:
//!
//! * [`classifier`] decides, monomial by monomial, whether `A` lies in
//!   `A_c + (f)` from four integer invariants of `A`, falling back to small
//!   closed-form rank tests built in [`tables`].
//! * [`oracle`] eliminates the rows `g * f` over `F_p` directly.
//!
//! [`engine`] runs either (or both) over every monomial and reports.

pub mod algebra;
pub mod classifier;
pub mod engine;
pub mod error;
pub mod field;
pub mod oracle;
pub mod tables;

pub use algebra::{Monomial, ParseError, TermLabel, Trinomial};
pub use classifier::{classify, invariants, Branch, MembershipDecision, MutationInvariants, Verdict};
pub use error::HkError;
pub use field::{binom_mod_p, FpMatrix, FpScalar, Prime};
