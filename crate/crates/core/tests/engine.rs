mod common;

use common::{corpus, tri};
use hk_core::engine::{hk_function, multiplicity_estimate, verify, HkSeries, Limits, Mode};
use hk_core::{HkError, Trinomial};
use num_rational::Ratio;

#[test]
fn modes_agree_on_corpus_series() {
    for inst in corpus().into_iter().take(6) {
        let f = inst.poly();
        let c = hk_function(&f, inst.n, Mode::Classifier, &Limits::default()).unwrap();
        let o = hk_function(&f, inst.n, Mode::Oracle, &Limits::default()).unwrap();
        assert_eq!(c, o, "{}", inst.text);
    }
}

#[test]
fn series_values_and_multiplicity() {
    let f = tri("x1^2 + x2^3 + x3^5", 3);
    let s = hk_function(&f, 2, Mode::Classifier, &Limits::default()).unwrap();
    let hk: Vec<u64> = s.points.iter().map(|pt| pt.hk).collect();
    assert_eq!(hk, vec![18, 162]);
    let mult = multiplicity_estimate(&s);
    assert_eq!(mult[0].exact, Ratio::new(2, 1));
    assert_eq!(mult[1].exact, Ratio::new(2, 1));
}

#[test]
fn json_round_trips_and_poly_reparses() {
    let f = tri("2*x1^3 + x2*x3 + x4^2", 5);
    let s = hk_function(&f, 1, Mode::Classifier, &Limits::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&s.to_json().unwrap()).unwrap();
    for key in ["p", "poly", "points", "rank_test_count"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let text = v["poly"].as_str().unwrap();
    let g = Trinomial::parse(text, f.prime()).unwrap();
    assert_eq!(g, f);
    let pt = &v["points"][0];
    for key in ["n", "q", "hk", "mult_num", "mult_den"] {
        assert!(pt.get(key).is_some(), "missing points[].{key}");
    }
    assert_eq!(pt["hk"].as_u64(), Some(s.points[0].hk));
}

#[test]
fn csv_series_layout() {
    let s: HkSeries = hk_function(&tri("x1 + x2 + x3", 2), 2, Mode::Oracle, &Limits::default()).unwrap();
    let csv = s.to_csv_string().unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines, ["n;q;hk;mult_num;mult_den", "1;2;4;1;1", "2;4;16;1;1"]);
}

#[test]
fn verify_is_exhaustive_and_ordered() {
    let f = tri("x1 + x2*x4 + x3^3", 2);
    let r = verify(&f, 2, 1 << 20).unwrap();
    assert_eq!(r.records.len(), 256);
    assert_eq!(r.total(), 256);
    assert!(r.disagreements.is_empty());
    assert_eq!(r.classifier_hk, r.oracle_hk);
    assert_eq!(r.oracle_hk, r.global_dimension);
    let first = &r.records[0].exponents;
    assert_eq!(first, &vec![3, 3, 3, 3]);
    assert_eq!(r.records.last().unwrap().exponents, vec![0, 0, 0, 0]);
}

#[test]
fn enumeration_limit_is_a_budget_error() {
    let f = tri("x1 + x2 + x3", 2);
    let limits = Limits { enumeration: 1000, ..Limits::default() };
    let err = hk_function(&f, 4, Mode::Classifier, &limits).unwrap_err();
    assert!(err.is_budget(), "{err}");
    assert!(matches!(verify(&f, 0, 1 << 20), Err(HkError::ZeroExponent)));
}
