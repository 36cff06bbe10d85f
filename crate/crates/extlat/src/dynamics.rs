//! Promotion/evacuation dynamics on linear extensions, the adjacent- and
//! jump-transposition actions on extension words, and orbit computation for
//! the groups these generate.

use crate::counting::is_linear_extension;
use crate::poset::{iter_mask, Poset};
use crate::{word_to_values, Word};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("generator index {0} out of range for word of length {1}")]
    IndexError(usize, usize),
    #[error("orbit exploration exceeded cap {0}")]
    CapExceeded(usize),
    #[error("word is not a linear extension")]
    NotAnExtension,
}

/// Generators acting on extension words. Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `tau_i`: swap positions `i, i+1` when the occupants are incomparable.
    Tau(usize),
    /// `tau_{i,j}` (`i < j`): swap positions `i` and `j` when both occupants
    /// are incomparable to each other and to everything strictly between.
    TauPair(usize, usize),
    /// Reverse the triple of positions `j-1, j, j+1` when its three occupants
    /// are pairwise incomparable.
    Sigma(usize),
    /// `delta_{i,j}` (`i < j`): the promotion sweep `tau_i tau_{i+1} ... tau_{j-1}`.
    DeltaUp(usize, usize),
    /// `delta_{j,i}` (`i < j`): the demotion sweep `tau_{j-1} ... tau_{i+1} tau_i`.
    DeltaDown(usize, usize),
}

pub fn apply_tau(p: &Poset, word: &mut Word, i: usize) -> Result<(), DynamicsError> {
    if i == 0 || i + 1 > word.len() {
        return Err(DynamicsError::IndexError(i, word.len()));
    }
    if p.incomparable(word[i - 1], word[i]) {
        word.swap(i - 1, i);
    }
    Ok(())
}

pub fn apply_generator(p: &Poset, word: &Word, g: Generator) -> Result<Word, DynamicsError> {
    let n = word.len();
    let mut w = word.clone();
    match g {
        Generator::Tau(i) => apply_tau(p, &mut w, i)?,
        Generator::TauPair(i, j) => {
            if i == 0 || j <= i || j > n {
                return Err(DynamicsError::IndexError(j, n));
            }
            let (x, y) = (w[i - 1], w[j - 1]);
            let free = p.incomparable(x, y)
                && (i..j - 1).all(|k| p.incomparable(x, w[k]) && p.incomparable(y, w[k]));
            if free {
                w.swap(i - 1, j - 1);
            }
        }
        Generator::Sigma(j) => {
            if j < 2 || j + 1 > n {
                return Err(DynamicsError::IndexError(j, n));
            }
            let (x, y, z) = (w[j - 2], w[j - 1], w[j]);
            if p.incomparable(x, y) && p.incomparable(x, z) && p.incomparable(y, z) {
                w.swap(j - 2, j);
            }
        }
        Generator::DeltaUp(i, j) => {
            if i == 0 || j <= i || j > n {
                return Err(DynamicsError::IndexError(j, n));
            }
            for k in i..j {
                apply_tau(p, &mut w, k)?;
            }
        }
        Generator::DeltaDown(j, i) => {
            if i == 0 || j <= i || j > n {
                return Err(DynamicsError::IndexError(j, n));
            }
            for k in (i..j).rev() {
                apply_tau(p, &mut w, k)?;
            }
        }
    }
    Ok(w)
}

/// The promotion chain of an extension: start at the element of value 1 and
/// repeatedly step to the upper-set element of smallest value. The result is
/// a maximal chain (each step is automatically a cover) and is the
/// lexicographically smallest maximal chain by values.
pub fn promotion_chain(p: &Poset, word: &Word) -> Vec<usize> {
    let vals = word_to_values(word);
    let mut chain = Vec::new();
    let mut cur = word[0];
    loop {
        chain.push(cur);
        match iter_mask(p.upset(cur)).min_by_key(|&y| vals[y]) {
            Some(next) => cur = next,
            None => return chain,
        }
    }
}

/// Promotion: slide values down along the promotion chain; the chain's last
/// element takes the top value, every other element's value drops by one.
pub fn promote(p: &Poset, word: &Word) -> Word {
    let n = word.len();
    if n == 0 {
        return word.clone();
    }
    let chain = promotion_chain(p, word);
    let vals = word_to_values(word);
    let mut new_vals = vec![0usize; n];
    for x in 0..n {
        new_vals[x] = vals[x] - 1;
    }
    for w in chain.windows(2) {
        new_vals[w[0]] = vals[w[1]] - 1;
    }
    new_vals[*chain.last().unwrap()] = n;
    crate::values_to_word(&new_vals)
}

/// Demotion, the inverse of promotion: apply the defining adjacent swaps of
/// the promotion sweep in reverse order (each swap is an involution, so this
/// is exactly the inverse map).
pub fn demote(p: &Poset, word: &Word) -> Word {
    let n = word.len();
    if n <= 1 {
        return word.clone();
    }
    apply_generator(p, word, Generator::DeltaDown(n, 1)).expect("indices in range")
}

/// Evacuation: the composition of partial promotions on values `1..=k` for
/// `k = n, n-1, ..., 2`; an involution.
pub fn evacuate(p: &Poset, word: &Word) -> Word {
    let n = word.len();
    let mut w = word.clone();
    for k in (2..=n).rev() {
        w = apply_generator(p, &w, Generator::DeltaUp(1, k)).expect("indices in range");
    }
    w
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OrbitReport {
    pub total: usize,
    pub orbit_sizes: Vec<usize>,
    pub transitive: bool,
}

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// Orbit decomposition of the closure of `seeds` under `gens`. Sizes are
/// reported in discovery order of the seeds; `transitive` means a single
/// orbit covers everything reached.
pub fn orbits(
    p: &Poset,
    seeds: &[Word],
    gens: &[Generator],
    cap: usize,
) -> Result<OrbitReport, DynamicsError> {
    for w in seeds {
        if !is_linear_extension(p, w) {
            return Err(DynamicsError::NotAnExtension);
        }
    }
    let mut seen: HashSet<Word> = HashSet::new();
    let mut orbit_sizes = Vec::new();
    for seed in seeds {
        if seen.contains(seed) {
            continue;
        }
        let mut size = 0usize;
        let mut queue = VecDeque::new();
        seen.insert(seed.clone());
        queue.push_back(seed.clone());
        while let Some(w) = queue.pop_front() {
            size += 1;
            for &g in gens {
                let next = apply_generator(p, &w, g)?;
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(DynamicsError::CapExceeded(cap));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        orbit_sizes.push(size);
    }
    Ok(OrbitReport { total: seen.len(), orbit_sizes: orbit_sizes.clone(), transitive: orbit_sizes.len() == 1 })
}

/// The adjacent-transposition generators `tau_1 ... tau_{n-1}`.
pub fn tau_generators(n: usize) -> Vec<Generator> {
    (1..n).map(Generator::Tau).collect()
}

/// Generators of the restricted group fixing a position set `A = {a_1,...}`:
/// all `tau_i` with `i` outside `A` and `A - 1`, plus one triple-reversal
/// generator anchored at each fixed position.
pub fn restricted_generators(n: usize, a: &[usize]) -> Vec<Generator> {
    let mut gens = Vec::new();
    for i in 1..n {
        if !a.contains(&i) && !a.contains(&(i + 1)) {
            gens.push(Generator::Tau(i));
        }
    }
    for &ar in a {
        if ar >= 2 && ar + 1 <= n {
            gens.push(Generator::Sigma(ar));
        }
    }
    gens
}

/// Generators of the jump group for a fixed position set `A`: all
/// `tau_{i,j}` with both endpoints outside `A`.
pub fn jump_generators(n: usize, a: &[usize]) -> Vec<Generator> {
    let mut gens = Vec::new();
    for i in 1..=n {
        if a.contains(&i) {
            continue;
        }
        for j in i + 1..=n {
            if !a.contains(&j) {
                gens.push(Generator::TauPair(i, j));
            }
        }
    }
    gens
}
