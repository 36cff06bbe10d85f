//! Exact combinatorics of linear extensions of finite posets: counting,
//! order polynomials and their q-analogues, promotion/evacuation dynamics,
//! explicit witness injections behind counting inequalities, deciders for
//! extensions with prescribed positions, and an exhaustive verification lab
//! that sweeps every inequality over all small labeled posets.
//!
//! Everything is exact: counts are `num_bigint::BigUint`, polynomial and
//! rational comparisons are cross-multiplied into integer comparisons. No
//! floating point is used anywhere in a theorem check.

pub mod counting;
pub mod dynamics;
pub mod injections;
pub mod lab;
pub mod poset;
pub mod qpoly;
pub mod restricted;

pub use poset::{Mask, Poset, PosetError};

/// A linear extension as a word: `word[i]` is the element in position `i+1`,
/// i.e. the element mapped to value `i+1` by the extension.
pub type Word = Vec<usize>;

/// Positions are 1-based throughout (they are values of extensions), while
/// elements are 0-based indices into the poset.
pub fn word_to_values(word: &Word) -> Vec<usize> {
    let mut vals = vec![0; word.len()];
    for (i, &x) in word.iter().enumerate() {
        vals[x] = i + 1;
    }
    vals
}

pub fn values_to_word(vals: &[usize]) -> Word {
    let mut word = vec![0; vals.len()];
    for (x, &v) in vals.iter().enumerate() {
        word[v - 1] = x;
    }
    word
}

/// Global cap (element count of materialized state spaces) honoring the
/// `EXTLAT_CAP` environment variable.
pub fn state_cap(default: usize) -> usize {
    std::env::var("EXTLAT_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}
