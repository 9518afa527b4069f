//! q-factorization of rank-one dominant monomials.
//!
//! Every dominant `Y`-monomial of rank 1 splits uniquely into q-strings
//! `Y[1,r,k]` that are pairwise in general position: the spectral segments
//! `[r, r+2(k-1)]` of any two strings are either nested or separated by a gap
//! (never overlapping partially or abutting).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::lweight::{is_dominant, y_string, LMonomial};

/// Strings `Y[1,r,k]` given as `(r, k)`, sorted.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct StringList {
    pub strings: Vec<(i32, u32)>,
}

impl StringList {
    pub fn product(&self) -> LMonomial {
        self.strings
            .iter()
            .fold(LMonomial::identity(1).expect("rank 1"), |acc, &(r, k)| &acc * &y_string(1, 1, r, k).expect("node 1"))
    }
}

/// General position of two strings, written in centred form `a = q^{r+k-1}`:
/// `a_j / a_l ≠ q^{±(k_j + k_l - 2p)}` for `0 <= p < min(k_j, k_l)`.
pub fn pair_in_general_position(a: (i32, u32), b: (i32, u32)) -> bool {
    let (ra, ka) = a;
    let (rb, kb) = b;
    let diff = (ra + ka as i32 - 1) - (rb + kb as i32 - 1);
    (0..ka.min(kb)).all(|p| {
        let forbidden = (ka + kb - 2 * p) as i32;
        diff != forbidden && diff != -forbidden
    })
}

pub fn in_general_position(strings: &[(i32, u32)]) -> bool {
    strings.iter().enumerate().all(|(j, &a)| strings[j + 1..].iter().all(|&b| pair_in_general_position(a, b)))
}

/// The q-factorization of a dominant rank-one monomial.
///
/// Repeatedly removes the longest step-2 run starting at the smallest
/// remaining exponent.
pub fn q_factorize(m: &LMonomial) -> Result<StringList> {
    if m.rank() != 1 {
        return invalid(format!("q-factorization needs rank 1, got {}", m.rank()));
    }
    if !is_dominant(m) {
        return invalid(format!("{m} is not dominant"));
    }
    let mut counts: Vec<(i32, u32)> = m.terms().iter().map(|&(_, r, e)| (r, e as u32)).collect();
    let mut strings = Vec::new();
    while let Some(start) = counts.iter().find(|c| c.1 > 0).map(|c| c.0) {
        let mut len = 0u32;
        let mut r = start;
        while let Some(c) = counts.iter_mut().find(|c| c.0 == r && c.1 > 0) {
            c.1 -= 1;
            len += 1;
            r += 2;
        }
        strings.push((start, len));
    }
    strings.sort_unstable();
    Ok(StringList { strings })
}
