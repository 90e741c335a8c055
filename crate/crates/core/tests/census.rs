use std::collections::BTreeMap;

use permcode::search::{canonical_augmentation, enumerate_balanced, genbylist, size_slice};
use permcode::SearchConfig;

fn histogram(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
    pairs.iter().copied().collect()
}

/// 62 counts the singleton class; brute-force bucketing of all 9888
/// (4,3)-codes agrees (see the oracle tests).
#[test]
fn census_4_3_both_algorithms() {
    let cfg = SearchConfig::default();
    let a = genbylist(4, 3, &cfg).unwrap();
    let b = canonical_augmentation(4, 3, &cfg).unwrap();
    assert_eq!(a.total(), 62);
    assert_eq!(a.maximal_count(), 4);
    assert_eq!(a.certificates(), b.certificates());
    assert_eq!(a.maximal_counts_by_size(), b.maximal_counts_by_size());
}

#[test]
fn census_5_4_both_algorithms() {
    let cfg = SearchConfig::with_jobs(4);
    let a = canonical_augmentation(5, 4, &cfg).unwrap();
    assert_eq!(a.total(), 9445);
    assert_eq!(a.maximal_count(), 139);
    assert_eq!(
        a.maximal_counts_by_size(),
        histogram(&[(7, 1), (8, 25), (9, 36), (10, 46), (11, 18), (12, 10), (13, 1), (15, 1), (20, 1)])
    );
    let b = genbylist(5, 4, &cfg).unwrap();
    assert_eq!(a.certificates(), b.certificates());
    assert_eq!(a.maximal_counts_by_size(), b.maximal_counts_by_size());
}

#[test]
fn balanced_5_4_and_5_3() {
    let cfg = SearchConfig::with_jobs(4);
    assert_eq!(enumerate_balanced(5, 4, 2, &cfg).unwrap().total(), 6);
    assert_eq!(enumerate_balanced(5, 4, 3, &cfg).unwrap().total(), 1);
    assert_eq!(enumerate_balanced(5, 4, 4, &cfg).unwrap().total(), 1);
    assert_eq!(enumerate_balanced(5, 3, 2, &cfg).unwrap().total(), 218);
}

#[test]
#[ignore = "extended run, about an hour on one core"]
fn balanced_6_5_r2() {
    let cfg = SearchConfig::with_jobs(num_jobs());
    assert_eq!(enumerate_balanced(6, 5, 2, &cfg).unwrap().total(), 2799);
}

#[test]
#[ignore = "extended run, about a minute in release"]
fn slice_6_5_size_18() {
    let cfg = SearchConfig::with_jobs(num_jobs());
    assert_eq!(size_slice(6, 5, 18, &cfg).unwrap().total(), 7);
}

fn num_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
