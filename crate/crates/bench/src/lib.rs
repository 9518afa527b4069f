//! Inputs shared by the benchmarks.

use qcharlab_core::{Direction, KRSpec, MinAffSpec};

/// Increasing minimal affinizations of growing size, labelled by their weight.
pub fn specs() -> Vec<(String, MinAffSpec)> {
    [vec![1, 1], vec![2, 1, 1], vec![1, 2, 1, 1], vec![2, 2, 1, 1]]
        .into_iter()
        .map(|l| (format!("{l:?}"), MinAffSpec::new(l.len(), l, Direction::Increasing, 0).expect("valid")))
        .collect()
}

/// A resonant normal-form pair of rank `n`.
pub fn resonant_pair(n: usize) -> (MinAffSpec, KRSpec) {
    let mut lambda = vec![0; n];
    lambda[0] = 1;
    let spec = MinAffSpec::new(n, lambda, Direction::Increasing, 0).expect("valid");
    let kr = KRSpec::new(n, n, n as i32 + 1, 2).expect("valid");
    (spec, kr)
}
