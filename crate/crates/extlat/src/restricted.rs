//! Linear extensions with prescribed values: normalization of prescriptions,
//! a polynomial-time non-emptiness decider, a constructive polynomial-time
//! finder, and a uniqueness decider. Prescribed elements must form a chain.

use crate::counting::{is_linear_extension, lex_min_extension};
use crate::poset::{Poset, PosetError};
use crate::Word;
use thiserror::Error;

/// Prescription: the extension must satisfy `f(u[i]) = a[i]` (1-based
/// positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSpec {
    pub u: Vec<usize>,
    pub a: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("spec lengths differ")]
    LengthMismatch,
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("position {0} out of range")]
    PositionOutOfRange(usize),
    #[error("duplicate element {0}")]
    DuplicateElement(usize),
    #[error("duplicate position {0}")]
    DuplicatePosition(usize),
    #[error("prescribed elements do not form a chain in position order")]
    NotAChain,
    #[error("word does not satisfy the prescription")]
    NotASolution,
}

/// Reasons a prescription is unsatisfiable that are detected structurally
/// during normalization (before the full non-emptiness criterion runs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum InfeasibleReason {
    /// Adjacent prescribed positions, but something lies strictly between
    /// the two elements.
    BlockedMerge,
    /// Position 1 (or n) prescribed for a non-minimal (non-maximal) element.
    BoundaryMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    /// Reduced instance: positions strictly separated and interior. The
    /// reduced instance has the same number of solutions as the original.
    Normalized { poset: Poset, u: Vec<usize>, a: Vec<usize> },
    Infeasible(InfeasibleReason),
}

/// Validate, sort by position, and check the chain hypothesis. Returns the
/// sorted pairs.
fn checked_sorted(p: &Poset, spec: &RestrictionSpec) -> Result<(Vec<usize>, Vec<usize>), SpecError> {
    if spec.u.len() != spec.a.len() {
        return Err(SpecError::LengthMismatch);
    }
    let n = p.n();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(spec.u.len());
    let mut seen_e = vec![false; n];
    let mut seen_p = vec![false; n + 1];
    for (&x, &pos) in spec.u.iter().zip(&spec.a) {
        if x >= n {
            return Err(SpecError::ElementOutOfRange(x));
        }
        if pos == 0 || pos > n {
            return Err(SpecError::PositionOutOfRange(pos));
        }
        if seen_e[x] {
            return Err(SpecError::DuplicateElement(x));
        }
        if seen_p[pos] {
            return Err(SpecError::DuplicatePosition(pos));
        }
        seen_e[x] = true;
        seen_p[pos] = true;
        pairs.push((pos, x));
    }
    pairs.sort_unstable();
    for w in pairs.windows(2) {
        if !p.lt(w[0].1, w[1].1) {
            return Err(SpecError::NotAChain);
        }
    }
    Ok((pairs.iter().map(|&(_, x)| x).collect(), pairs.iter().map(|&(pos, _)| pos).collect()))
}

/// Normalize a prescription: merge elements at adjacent positions (they are
/// forced to be consecutive, so the pair contracts to one element), and strip
/// prescriptions at the extreme positions 1 and n (they force a minimal/
/// maximal element that can be deleted). Solution counts are preserved.
pub fn normalize_spec(p: &Poset, spec: &RestrictionSpec) -> Result<NormalizeOutcome, SpecError> {
    let (mut u, mut a) = checked_sorted(p, spec)?;
    let mut poset = p.clone();
    loop {
        let n = poset.n();
        // merge one adjacent pair per iteration
        if let Some(i) = (0..u.len().saturating_sub(1)).find(|&i| a[i + 1] == a[i] + 1) {
            let (x, y) = (u[i], u[i + 1]);
            if poset.interval_count(x, y).expect("chain checked") > 0 {
                return Ok(NormalizeOutcome::Infeasible(InfeasibleReason::BlockedMerge));
            }
            // contract y into x: x inherits everything above y
            let mut covers = Vec::new();
            for (s, t) in poset.relation_pairs() {
                if s == y {
                    covers.push((x, t));
                } else if t == y {
                    if s != x {
                        covers.push((s, x));
                    }
                } else {
                    covers.push((s, t));
                }
            }
            // drop y and relabel the tail down by one
            let fix = |z: usize| if z > y { z - 1 } else { z };
            let covers: Vec<(usize, usize)> =
                covers.into_iter().filter(|&(s, t)| s != y && t != y).map(|(s, t)| (fix(s), fix(t))).collect();
            poset = match Poset::from_covers(n - 1, &covers) {
                Ok(q) => q,
                Err(PosetError::Cycle) => {
                    return Ok(NormalizeOutcome::Infeasible(InfeasibleReason::BlockedMerge))
                }
                Err(e) => panic!("contraction produced an invalid poset: {e}"),
            };
            let gap = a[i];
            u.remove(i + 1);
            a.remove(i + 1);
            for z in u.iter_mut() {
                *z = fix(*z);
            }
            for pos in a.iter_mut() {
                if *pos > gap {
                    *pos -= 1;
                }
            }
            continue;
        }
        // strip a forced bottom
        if !u.is_empty() && a[0] == 1 {
            let x = u[0];
            if poset.downset(x) != 0 {
                return Ok(NormalizeOutcome::Infeasible(InfeasibleReason::BoundaryMismatch));
            }
            poset = poset.delete(x);
            u.remove(0);
            a.remove(0);
            for z in u.iter_mut() {
                if *z > x {
                    *z -= 1;
                }
            }
            for pos in a.iter_mut() {
                *pos -= 1;
            }
            continue;
        }
        // strip a forced top
        if !u.is_empty() && a[u.len() - 1] == n {
            let x = u[u.len() - 1];
            if poset.upset(x) != 0 {
                return Ok(NormalizeOutcome::Infeasible(InfeasibleReason::BoundaryMismatch));
            }
            poset = poset.delete(x);
            u.pop();
            a.pop();
            for z in u.iter_mut() {
                if *z > x {
                    *z -= 1;
                }
            }
            continue;
        }
        break;
    }
    Ok(NormalizeOutcome::Normalized { poset, u, a })
}

/// Polynomial-time non-emptiness criterion: with virtual bottom and top
/// adjoined at positions 0 and n+1, a solution exists iff every prescribed
/// pair is spaced wider than the open interval between its elements, i.e.
/// `ell(u_i) <= a_i`, `b(u_i) <= n - a_i + 1`, and
/// `a_j - a_i > #(open interval (u_i, u_j))` for all `i < j`.
pub fn vanishing_decide(p: &Poset, spec: &RestrictionSpec) -> Result<bool, SpecError> {
    let (u, a) = checked_sorted(p, spec)?;
    let n = p.n();
    let k = u.len();
    for i in 0..k {
        if p.ell(u[i]) > a[i] || p.b(u[i]) > n - a[i] + 1 {
            return Ok(false);
        }
        for j in i + 1..k {
            if a[j] - a[i] <= p.interval_count(u[i], u[j]).expect("chain checked") {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Constructive finder: starting from the lexicographically smallest
/// extension, walk each prescribed element to its position one step at a
/// time. A step extracts an incomparable escort element and splices it to
/// the other side of the walker; leftward steps may displace already-placed
/// prescribed elements, which a cascade of further splices restores. The
/// number of splices is returned and is `O(n^3)`.
pub fn restricted_find(p: &Poset, spec: &RestrictionSpec) -> Result<Option<(Word, usize)>, SpecError> {
    let (u, a) = checked_sorted(p, spec)?;
    if !vanishing_decide(p, spec)? {
        return Ok(None);
    }
    let mut word = lex_min_extension(p);
    let mut steps = 0usize;
    let index_of = |word: &Word, x: usize| word.iter().position(|&z| z == x).unwrap();
    for j in 0..u.len() {
        let x = u[j];
        let target = a[j] - 1; // 0-based index
        loop {
            let pos = index_of(&word, x);
            match pos.cmp(&target) {
                std::cmp::Ordering::Equal => break,
                std::cmp::Ordering::Less => {
                    // escort the first incomparable element from the right to
                    // just before x; x shifts right by one
                    let iz = (pos + 1..word.len())
                        .find(|&i| p.incomparable(word[i], x))
                        .expect("guaranteed by the spacing conditions");
                    let z = word.remove(iz);
                    word.insert(pos, z);
                    steps += 1;
                }
                std::cmp::Ordering::Greater => {
                    // escort the last incomparable element from the left to
                    // just after x; x shifts left by one
                    let iz = (0..pos)
                        .rev()
                        .find(|&i| p.incomparable(word[i], x))
                        .expect("guaranteed by the spacing conditions");
                    let z = word.remove(iz);
                    word.insert(pos - 1 + 1, z); // x slid to pos-1; insert right after it
                    steps += 1;
                    // earlier prescribed elements between iz and x slid left;
                    // restore them from front to back
                    loop {
                        let displaced = (0..j).find(|&t| index_of(&word, u[t]) + 1 != a[t]);
                        let Some(t) = displaced else { break };
                        let ut = u[t];
                        let cur = index_of(&word, ut);
                        debug_assert_eq!(cur + 2, a[t], "prescribed elements shift by at most one");
                        let limit = index_of(&word, x);
                        let iw = (cur + 1..limit)
                            .find(|&i| p.incomparable(word[i], ut))
                            .expect("guaranteed by the spacing conditions");
                        let zw = word.remove(iw);
                        word.insert(cur, zw);
                        steps += 1;
                    }
                }
            }
            debug_assert!(is_linear_extension(p, &word));
        }
    }
    debug_assert!(is_linear_extension(p, &word));
    for (&x, &pos) in u.iter().zip(&a) {
        debug_assert_eq!(word[pos - 1], x);
    }
    Ok(Some((word, steps)))
}

/// Uniqueness criterion for a known solution `f`: the solution is the only
/// one iff (1) the elements strictly between consecutive prescribed positions
/// (including the two boundary stretches) always form a chain, and (2) no
/// flank swap applies: there is no pair `i <= j` such that the elements at
/// positions `a_i - 1` and `a_j + 1` are incomparable to each other and to
/// everything at positions `a_i ..= a_j`.
pub fn uniqueness_decide(p: &Poset, spec: &RestrictionSpec, f: &Word) -> Result<bool, SpecError> {
    let (u, a) = checked_sorted(p, spec)?;
    if !is_linear_extension(p, f) {
        return Err(SpecError::NotASolution);
    }
    for (&x, &pos) in u.iter().zip(&a) {
        if f[pos - 1] != x {
            return Err(SpecError::NotASolution);
        }
    }
    let n = p.n();
    let k = u.len();
    // condition (1): gap stretches are chains
    let mut cuts = vec![0usize];
    cuts.extend(a.iter().copied());
    cuts.push(n + 1);
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let gap: Vec<usize> = (lo + 1..hi).map(|pos| f[pos - 1]).collect();
        for (s, &x) in gap.iter().enumerate() {
            for &y in &gap[s + 1..] {
                if p.incomparable(x, y) {
                    return Ok(false);
                }
            }
        }
    }
    // condition (2): flank swaps
    for i in 0..k {
        if a[i] == 1 {
            continue;
        }
        let v = f[a[i] - 2];
        for j in i..k {
            if a[j] == n {
                continue;
            }
            let w = f[a[j]];
            let mid = &f[a[i] - 1..a[j]];
            if p.incomparable(v, w)
                && mid.iter().all(|&z| p.incomparable(v, z) && p.incomparable(w, z))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_extensions, extensions, restricted_count, Count};
    use crate::poset::for_each_poset;
    use num_traits::{One, Zero};

    fn spec(u: &[usize], a: &[usize]) -> RestrictionSpec {
        RestrictionSpec { u: u.to_vec(), a: a.to_vec() }
    }

    #[test]
    fn spec_validation() {
        let p = Poset::chain(3);
        assert_eq!(vanishing_decide(&p, &spec(&[0, 0], &[1, 2])), Err(SpecError::DuplicateElement(0)));
        assert_eq!(vanishing_decide(&p, &spec(&[0, 1], &[2, 2])), Err(SpecError::DuplicatePosition(2)));
        assert_eq!(vanishing_decide(&p, &spec(&[0], &[4])), Err(SpecError::PositionOutOfRange(4)));
        let q = Poset::antichain(3);
        assert_eq!(vanishing_decide(&q, &spec(&[0, 1], &[1, 2])), Err(SpecError::NotAChain));
    }

    #[test]
    fn decider_matches_brute_force() {
        for_each_poset(5, |p| {
            let exts = extensions(p);
            // single prescriptions
            for x in 0..5 {
                for pos in 1..=5 {
                    let s = spec(&[x], &[pos]);
                    let brute = exts.iter().any(|w| w[pos - 1] == x);
                    assert_eq!(vanishing_decide(p, &s).unwrap(), brute);
                }
            }
            // chain pairs
            for x in 0..5 {
                for y in 0..5 {
                    if !p.lt(x, y) {
                        continue;
                    }
                    for px in 1..5 {
                        for py in px + 1..=5 {
                            let s = spec(&[x, y], &[px, py]);
                            let brute = exts.iter().any(|w| w[px - 1] == x && w[py - 1] == y);
                            assert_eq!(vanishing_decide(p, &s).unwrap(), brute, "{p:?} {s:?}");
                        }
                    }
                }
            }
        });
    }

    #[test]
    fn finder_agrees_with_decider() {
        for_each_poset(5, |p| {
            for x in 0..5 {
                for y in 0..5 {
                    if !p.lt(x, y) {
                        continue;
                    }
                    for px in 1..5 {
                        for py in px + 1..=5 {
                            let s = spec(&[x, y], &[px, py]);
                            match restricted_find(p, &s).unwrap() {
                                Some((w, steps)) => {
                                    assert!(is_linear_extension(p, &w));
                                    assert_eq!(w[px - 1], x);
                                    assert_eq!(w[py - 1], y);
                                    assert!(steps <= 2 * 5 * 5 * 5);
                                }
                                None => {
                                    assert!(!vanishing_decide(p, &s).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        });
    }

    #[test]
    fn normalization_preserves_counts() {
        for_each_poset(4, |p| {
            for x in 0..4 {
                for y in 0..4 {
                    if !p.lt(x, y) {
                        continue;
                    }
                    for px in 1..4 {
                        for py in px + 1..=4 {
                            let s = spec(&[x, y], &[px, py]);
                            let count = restricted_count(p, &s.u, &s.a);
                            match normalize_spec(p, &s).unwrap() {
                                NormalizeOutcome::Normalized { poset, u, a } => {
                                    let reduced = if u.is_empty() {
                                        count_extensions(&poset)
                                    } else {
                                        restricted_count(&poset, &u, &a)
                                    };
                                    assert_eq!(count, reduced, "{p:?} {s:?}");
                                    // invariants: interior, separated positions
                                    for w in a.windows(2) {
                                        assert!(w[1] > w[0] + 1);
                                    }
                                    if let (Some(&first), Some(&last)) = (a.first(), a.last()) {
                                        assert!(first > 1 && last < poset.n());
                                    }
                                }
                                NormalizeOutcome::Infeasible(_) => {
                                    assert!(count.is_zero(), "{p:?} {s:?}");
                                }
                            }
                        }
                    }
                }
            }
        });
    }

    #[test]
    fn infeasible_reasons() {
        // adjacent positions with an element strictly between
        let p = Poset::chain(3);
        let out = normalize_spec(&p, &spec(&[0, 2], &[1, 2])).unwrap();
        assert_eq!(out, NormalizeOutcome::Infeasible(InfeasibleReason::BlockedMerge));
        // position 1 prescribed for a non-minimal element
        let out = normalize_spec(&p, &spec(&[1], &[1])).unwrap();
        assert_eq!(out, NormalizeOutcome::Infeasible(InfeasibleReason::BoundaryMismatch));
    }

    #[test]
    fn uniqueness_matches_brute_force() {
        for_each_poset(5, |p| {
            let exts = extensions(p);
            for x in 0..5 {
                for pos in 1..=5 {
                    let s = spec(&[x], &[pos]);
                    let sols: Vec<_> = exts.iter().filter(|w| w[pos - 1] == x).collect();
                    if let Some(f) = sols.first() {
                        let unique = uniqueness_decide(p, &s, f).unwrap();
                        assert_eq!(unique, sols.len() == 1, "{p:?} {s:?} {f:?}");
                    }
                }
            }
        });
    }

    #[test]
    fn uniqueness_pairs_match_brute_force() {
        for_each_poset(4, |p| {
            let exts = extensions(p);
            for x in 0..4 {
                for y in 0..4 {
                    if !p.lt(x, y) {
                        continue;
                    }
                    for px in 1..4 {
                        for py in px + 1..=4 {
                            let s = spec(&[x, y], &[px, py]);
                            let sols: Vec<_> =
                                exts.iter().filter(|w| w[px - 1] == x && w[py - 1] == y).collect();
                            for f in &sols {
                                let unique = uniqueness_decide(p, &s, f).unwrap();
                                assert_eq!(unique, sols.len() == 1, "{p:?} {s:?} {f:?}");
                            }
                        }
                    }
                }
            }
        });
    }

    #[test]
    fn empty_spec_degenerates_gracefully() {
        let p = Poset::diamond();
        assert!(vanishing_decide(&p, &spec(&[], &[])).unwrap());
        let (w, steps) = restricted_find(&p, &spec(&[], &[])).unwrap().unwrap();
        assert!(is_linear_extension(&p, &w));
        assert_eq!(steps, 0);
        // a poset with a unique extension is detected by the empty spec
        let c = Poset::chain(4);
        assert!(uniqueness_decide(&c, &spec(&[], &[]), &vec![0, 1, 2, 3]).unwrap());
        assert_eq!(count_extensions(&c), Count::one());
    }
}
