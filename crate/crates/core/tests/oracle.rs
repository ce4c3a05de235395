mod common;

use common::{all_monomials, corpus, naive_dimension, naive_members, tri};
use hk_core::oracle::{global_dimension, member, member_direct, member_set, OracleError, DEFAULT_BUDGET};
use hk_core::HkError;

// Values computed by an independent reference elimination and frozen here.
const PINNED: [(&str, u64, u32, u64); 8] = [
    ("x1^2 + x2^3 + x3^5", 2, 1, 8),
    ("x1^2 + x2^3 + x3^5", 2, 2, 32),
    ("x1^2 + x2^3 + x3^5", 2, 3, 128),
    ("x1^2 + x2^3 + x3^5", 3, 1, 18),
    ("x1^2 + x2^3 + x3^5", 3, 2, 162),
    ("x1^2 + x2^3 + x3^5", 5, 1, 50),
    ("x1^2 + x2^2 + x3^2", 3, 2, 121),
    ("x1 + x2*x4 + x3^3", 2, 3, 512),
];

#[test]
fn pinned_colengths() {
    for (text, p, n, hk) in PINNED {
        let f = tri(text, p);
        assert_eq!(global_dimension(&f, n, DEFAULT_BUDGET).unwrap(), hk, "{text} p={p} n={n}");
        let q = p.pow(n);
        assert_eq!(member_set(&f, q, DEFAULT_BUDGET).unwrap().non_member_count(), hk);
    }
}

#[test]
fn member_set_matches_reference_on_corpus() {
    for inst in corpus() {
        let f = inst.poly();
        let q = inst.q();
        if u64::from(q).pow(f.nvars() as u32) > 1024 {
            continue;
        }
        let reference = naive_members(&f, q);
        let set = member_set(&f, u64::from(q), DEFAULT_BUDGET).unwrap();
        for e in all_monomials(q, f.nvars()) {
            assert_eq!(set.member(&e), reference.contains(&e), "{} at {e:?}", inst.text);
        }
        assert_eq!(naive_dimension(&f, q), set.non_member_count());
    }
}

#[test]
fn single_queries_agree_with_sweep() {
    let f = tri("x1^2*x2 + x3^2 + x4", 3);
    let set = member_set(&f, 3, DEFAULT_BUDGET).unwrap();
    for e in all_monomials(3, 4) {
        let a = member(&e, &f, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, set.member(&e));
        assert_eq!(a, member_direct(&e, &f, 3, DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn budget_is_enforced_before_work() {
    let f = tri("x1 + x2 + x3", 2);
    let err = global_dimension(&f, 8, 1 << 20).unwrap_err();
    assert!(matches!(err, OracleError::BudgetExceeded { .. }));
    assert!(HkError::from(err).is_budget());
    assert_eq!(global_dimension(&f, 6, 1 << 18).unwrap(), 64 * 64);
}
