mod common;

use std::time::{Duration, Instant};

use common::{check_qe, check_ranges, check_sum, QE_CASES, SUM_CASES};
use poincare_core::presburger::{eliminate_quantifiers, parse_presburger_with_vars};

#[test]
fn corpus_size() {
    assert!(QE_CASES.len() + SUM_CASES.len() >= 20);
}

#[test]
fn quantifier_elimination_matches_bounded_semantics() {
    let failures: Vec<String> = QE_CASES.iter().filter_map(|c| check_qe(c).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn elimination_is_fast() {
    for c in QE_CASES {
        let f = parse_presburger_with_vars(c.formula, c.vars).unwrap();
        let t = Instant::now();
        eliminate_quantifiers(&f);
        assert!(t.elapsed() < Duration::from_secs(1), "{}", c.formula);
    }
}

#[test]
fn range_systems_partition_the_set() {
    let failures: Vec<String> = SUM_CASES.iter().filter_map(|c| check_ranges(c).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn weighted_sums_match_enumeration() {
    let failures: Vec<String> = SUM_CASES.iter().filter_map(|c| check_sum(c).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}
