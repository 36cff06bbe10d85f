//! Explicit injections behind the counting inequalities, together with
//! witness counters for the gaps they leave uncovered. Each injection comes
//! with its inverse replay; a pair is "in the image" exactly when the replay
//! followed by the forward map reproduces it.

use crate::counting::{
    count_extensions, extensions, factorial, for_each_order_map, is_linear_extension,
    lex_min_extension, order_polynomial, pow, Count,
};
use crate::poset::{iter_mask, mask_full, Mask, Poset};
use crate::{values_to_word, word_to_values, Word};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InjectionError {
    #[error("the identity labeling is not natural for this poset")]
    NotNaturalLabeling,
    #[error("word is not a linear extension")]
    NotAnExtension,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Outcome of a witness census: `witnesses` counts the pairs outside the
/// image of the injection, which must equal the closed-form `formula`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct WitnessReport {
    pub total: String,
    pub witnesses: String,
    pub formula: String,
    pub matches: bool,
    pub samples: Vec<String>,
}

fn witness_report(total: Count, witnesses: Count, formula: Count, samples: Vec<String>) -> WitnessReport {
    WitnessReport {
        total: total.to_string(),
        matches: witnesses == formula,
        witnesses: witnesses.to_string(),
        formula: formula.to_string(),
        samples,
    }
}

// ---------------------------------------------------------------------------
// Sorting injection: permutations -> (linear extension, upper-ideal map)
// ---------------------------------------------------------------------------

/// Forward sorting map. `alpha` is a fixed reference extension, `sigma` an
/// arbitrary bijection `X -> [n]` given as values. Elements are processed in
/// decreasing `alpha`-order; each element's value is demoted through its
/// principal upper ideal until that ideal is sorted, and `g(x)` records where
/// the displaced value came to rest (`x` itself when no demotion happened).
pub fn bw_forward(p: &Poset, alpha: &Word, sigma: &[usize]) -> (Word, Vec<usize>) {
    let n = p.n();
    debug_assert!(is_linear_extension(p, alpha));
    let mut fvals = vec![0usize; n];
    let mut g: Vec<usize> = (0..n).collect();
    for k in (0..n).rev() {
        let x = alpha[k];
        fvals[x] = sigma[x];
        let mut cur = x;
        loop {
            let next = iter_mask(p.upset(cur)).min_by_key(|&y| fvals[y]);
            match next {
                Some(y) if fvals[y] < fvals[cur] => {
                    fvals.swap(cur, y);
                    cur = y;
                }
                _ => break,
            }
        }
        g[x] = cur;
    }
    debug_assert!(is_linear_extension(p, &values_to_word(&fvals)));
    (values_to_word(&fvals), g)
}

/// Inverse replay: promote each displaced value back from `g(x)` to `x` in
/// increasing `alpha`-order, then confirm by re-running the forward map.
/// Returns the recovered permutation, or `None` when `(f, g)` is not in the
/// image.
pub fn bw_inverse(p: &Poset, alpha: &Word, f: &Word, g: &[usize]) -> Option<Vec<usize>> {
    let mut vals = word_to_values(f);
    for &x in alpha {
        let y = g[x];
        if !(y == x || p.lt(x, y)) {
            return None;
        }
        let mut cur = y;
        while cur != x {
            // candidates y' with x <= y' < cur
            let cand = (p.downset(cur) & p.upset(x)) | (p.downset(cur) & (1 << x));
            let best = iter_mask(cand).max_by_key(|&z| vals[z])?;
            vals.swap(cur, best);
            cur = best;
        }
    }
    let sigma = vals;
    let (f2, g2) = bw_forward(p, alpha, &sigma);
    if word_to_values(&f2) == word_to_values(f) && g2 == g {
        Some(sigma)
    } else {
        None
    }
}

/// Census over all pairs `(f, g)` with `f` a linear extension and
/// `g(x)` ranging over the principal upper ideal of `x`: counts the pairs
/// outside the image of the sorting injection. The closed form is
/// `e(P) * prod_x b(x) - n!`, and it vanishes exactly on ordered forests.
pub fn xi(p: &Poset, sample_limit: usize) -> WitnessReport {
    let n = p.n();
    let alpha = lex_min_extension(p);
    let exts = extensions(p);
    let mut witnesses = Count::zero();
    let mut total = Count::zero();
    let mut samples = Vec::new();
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut c: Vec<usize> = iter_mask(p.upset(x)).collect();
        c.push(x);
        choices.push(c);
    }
    for f in &exts {
        let mut g = vec![0usize; n];
        // depth-first odometer over the product of upper ideals
        fn rec(
            p: &Poset,
            alpha: &Word,
            f: &Word,
            choices: &[Vec<usize>],
            g: &mut Vec<usize>,
            x: usize,
            total: &mut Count,
            witnesses: &mut Count,
            samples: &mut Vec<String>,
            sample_limit: usize,
        ) {
            if x == p.n() {
                *total += Count::one();
                if bw_inverse(p, alpha, f, g).is_none() {
                    *witnesses += Count::one();
                    if samples.len() < sample_limit {
                        samples.push(format!("f={f:?} g={g:?}"));
                    }
                }
                return;
            }
            for &y in &choices[x] {
                g[x] = y;
                rec(p, alpha, f, choices, g, x + 1, total, witnesses, samples, sample_limit);
            }
        }
        rec(p, &alpha, f, &choices, &mut g, 0, &mut total, &mut witnesses, &mut samples, sample_limit);
    }
    let prod_b: Count = (0..n).map(|x| Count::from(p.b(x))).product();
    let formula = Count::from(exts.len()) * prod_b - factorial(n);
    witness_report(total, witnesses, formula, samples)
}

// ---------------------------------------------------------------------------
// Order-map injection: (extension, ordered set partition) -> (order map, permutation)
// ---------------------------------------------------------------------------

/// Standardization of a sequence of distinct values: `std[i]` is the rank
/// (1-based) of `seq[i]` within the sequence.
fn standardize(seq: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_by_key(|&i| seq[i]);
    let mut std = vec![0; seq.len()];
    for (rank, &i) in idx.iter().enumerate() {
        std[i] = rank + 1;
    }
    std
}

/// Forward map for naturally labeled posets. `f` is a linear extension and
/// `beta` an ordered set partition of the values `1..=n`. The block sizes
/// collapse `f` to an order-preserving map `g`, and the permutation `sigma`
/// rearranges each block so its order pattern matches the pattern of `f` on
/// the corresponding value class.
pub fn op_forward(
    p: &Poset,
    f: &Word,
    beta: &[Vec<usize>],
) -> Result<(Vec<usize>, Vec<usize>), InjectionError> {
    let n = p.n();
    if !p.is_naturally_labeled() {
        return Err(InjectionError::NotNaturalLabeling);
    }
    if !is_linear_extension(p, f) {
        return Err(InjectionError::NotAnExtension);
    }
    let mut seen = vec![false; n + 1];
    for blk in beta {
        for &v in blk {
            if v == 0 || v > n || seen[v] {
                return Err(InjectionError::Invalid("beta is not a set partition of 1..=n".into()));
            }
            seen[v] = true;
        }
    }
    if seen[1..].iter().any(|&s| !s) {
        return Err(InjectionError::Invalid("beta does not cover 1..=n".into()));
    }
    let fvals = word_to_values(f);
    // alpha maps value j to the block index owning position j
    let mut alpha = Vec::with_capacity(n);
    for (i, blk) in beta.iter().enumerate() {
        alpha.extend(std::iter::repeat(i + 1).take(blk.len()));
    }
    let gvals: Vec<usize> = (0..n).map(|x| alpha[fvals[x] - 1]).collect();
    let mut sigma = Vec::with_capacity(n);
    for (i, blk) in beta.iter().enumerate() {
        let class: Vec<usize> = (0..n).filter(|&x| gvals[x] == i + 1).collect();
        let pattern: Vec<usize> = class.iter().map(|&x| fvals[x]).collect();
        let std = standardize(&pattern);
        let mut sorted = blk.clone();
        sorted.sort_unstable();
        for &s in &std {
            sigma.push(sorted[s - 1]);
        }
    }
    Ok((gvals, sigma))
}

/// Inverse map: cut `sigma` into consecutive blocks sized by the value
/// classes of `g`, and rearrange the reserved value range of each class so
/// its order pattern matches the block's. The result is in the image exactly
/// when the rearranged map is a linear extension.
pub fn op_inverse(
    p: &Poset,
    gvals: &[usize],
    sigma: &[usize],
) -> Result<(Vec<usize>, Vec<Vec<usize>>, bool), InjectionError> {
    let n = p.n();
    if !p.is_naturally_labeled() {
        return Err(InjectionError::NotNaturalLabeling);
    }
    if gvals.len() != n || sigma.len() != n {
        return Err(InjectionError::Invalid("length mismatch".into()));
    }
    let t = gvals.iter().copied().max().unwrap_or(0);
    for x in 0..n {
        for y in iter_mask(p.upset(x)) {
            if gvals[x] > gvals[y] {
                return Err(InjectionError::Invalid("g is not order-preserving".into()));
            }
        }
    }
    let mut hvals = vec![0usize; n];
    let mut blocks = Vec::with_capacity(t);
    let mut offset = 0usize;
    for i in 1..=t {
        let class: Vec<usize> = (0..n).filter(|&x| gvals[x] == i).collect();
        let c = class.len();
        let block: Vec<usize> = sigma[offset..offset + c].to_vec();
        let std = standardize(&block);
        for (j, &x) in class.iter().enumerate() {
            hvals[x] = offset + std[j];
        }
        blocks.push(block);
        offset += c;
    }
    let in_image = is_linear_extension(p, &values_to_word(&hvals));
    Ok((hvals, blocks, in_image))
}

/// Census over all pairs (order-preserving `g : X -> [t]`, permutation):
/// counts pairs whose rearranged map fails to be a linear extension. Closed
/// form `Omega(P,t) * n! - e(P) * t^n`; vanishes iff P is an antichain. The
/// poset is relabeled naturally first (both sides are label-invariant).
pub fn zeta(p: &Poset, t: u64, sample_limit: usize) -> WitnessReport {
    let (p, _) = p.natural_relabeling();
    let n = p.n();
    let mut total = Count::zero();
    let mut witnesses = Count::zero();
    let mut samples = Vec::new();
    let perms = permutations(n);
    for_each_order_map(&p, t, |gvals| {
        for sigma in &perms {
            total += Count::one();
            let (_, _, in_image) = op_inverse(&p, gvals, sigma).expect("valid inputs");
            if !in_image {
                witnesses += Count::one();
                if samples.len() < sample_limit {
                    samples.push(format!("g={gvals:?} sigma={sigma:?}"));
                }
            }
        }
    });
    let formula = order_polynomial(&p, t) * factorial(n) - count_extensions(&p) * pow(t, n);
    witness_report(total, witnesses, formula, samples)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut vec![false; n + 1], &mut out);
    out
}

// ---------------------------------------------------------------------------
// Deletion bijection: E(P - y) <-> {g in E(P) : y on the promotion chain}
// ---------------------------------------------------------------------------

/// Promotion chain inside the induced subposet on `mask`, for an extension
/// given as values `1..=|mask|` on the elements of `mask`.
fn promotion_chain_masked(p: &Poset, mask: Mask, vals: &[usize]) -> Vec<usize> {
    let mut chain = Vec::new();
    let mut cur = iter_mask(mask).find(|&x| vals[x] == 1).expect("value 1 present");
    loop {
        chain.push(cur);
        match iter_mask(p.upset(cur) & mask).min_by_key(|&y| vals[y]) {
            Some(next) => cur = next,
            None => return chain,
        }
    }
}

/// Forward deletion bijection on the subposet induced by `mask`. Input:
/// values `1..|mask|-1` on `mask \ {y}` forming a linear extension of the
/// restriction. Walks the greedy descending chain from `y` (largest value
/// among lower neighbors, repeatedly); the chain's bottom takes value 1 and
/// every other value shifts up by one along it. The output extension has `y`
/// on its promotion chain.
fn dfs_forward_masked(p: &Poset, mask: Mask, y: usize, fvals: &[usize]) -> Vec<usize> {
    let mut chain = vec![y];
    let mut cur = y;
    while let Some(next) = iter_mask(p.downset(cur) & mask).max_by_key(|&z| fvals[z]) {
        chain.push(next);
        cur = next;
    }
    let mut gvals = vec![0usize; p.n()];
    for x in iter_mask(mask) {
        if x != y {
            gvals[x] = fvals[x] + 1;
        }
    }
    for w in chain.windows(2) {
        gvals[w[0]] = fvals[w[1]] + 1;
    }
    gvals[*chain.last().unwrap()] = 1;
    gvals
}

/// Inverse: locate `y` on the promotion chain of `g` and slide the values of
/// the chain prefix down by one step; returns `None` when `y` is not on the
/// chain.
fn dfs_inverse_masked(p: &Poset, mask: Mask, y: usize, gvals: &[usize]) -> Option<Vec<usize>> {
    let chain = promotion_chain_masked(p, mask, gvals);
    let j = chain.iter().position(|&z| z == y)?;
    let mut fvals = vec![0usize; p.n()];
    for x in iter_mask(mask) {
        if x != y {
            fvals[x] = gvals[x] - 1;
        }
    }
    for l in 0..j {
        fvals[chain[l]] = gvals[chain[l + 1]] - 1;
    }
    Some(fvals)
}

/// Public forward map on whole posets: `f` is an extension of `P - y` given
/// as a word over the elements of `P` other than `y`.
pub fn dfs_bijection(p: &Poset, y: usize, f: &Word) -> Result<Word, InjectionError> {
    let mask = p.all_mask() & !(1 << y);
    let mut fvals = vec![0usize; p.n()];
    let mut placed: Mask = 0;
    for (i, &x) in f.iter().enumerate() {
        if x >= p.n() || x == y || placed >> x & 1 != 0 || p.downset(x) & mask & !placed != 0 {
            return Err(InjectionError::NotAnExtension);
        }
        fvals[x] = i + 1;
        placed |= 1 << x;
    }
    if placed != mask {
        return Err(InjectionError::NotAnExtension);
    }
    let gvals = dfs_forward_masked(p, p.all_mask(), y, &fvals);
    Ok(values_to_word(&gvals))
}

/// Public inverse: defined on extensions of `P` whose promotion chain passes
/// through `y`; returns the matching extension of `P - y` as a word.
pub fn dfs_bijection_inverse(p: &Poset, y: usize, g: &Word) -> Option<Word> {
    if !is_linear_extension(p, g) {
        return None;
    }
    let gvals = word_to_values(g);
    let fvals = dfs_inverse_masked(p, p.all_mask(), y, &gvals)?;
    let mut word = vec![usize::MAX; p.n() - 1];
    for x in 0..p.n() {
        if x != y {
            word[fvals[x] - 1] = x;
        }
    }
    Some(word)
}

/// Does the antichain `a` meet every maximal chain of `P`? Decided by
/// reachability from minimal to maximal elements through the complement.
pub fn antichain_is_cut(p: &Poset, a: Mask) -> Result<bool, InjectionError> {
    if !p.is_antichain_set(a) {
        return Err(InjectionError::Invalid("set is not an antichain".into()));
    }
    let avoid = a;
    let mut reach: Mask = p.minimals() & !avoid;
    loop {
        let mut grown = reach;
        for x in iter_mask(reach) {
            grown |= p.upper_covers(x) & !avoid;
        }
        if grown == reach {
            break;
        }
        reach = grown;
    }
    Ok(reach & p.maximals() == 0)
}

// ---------------------------------------------------------------------------
// Product injection: permutations -> E(P) x E(Q) for posets whose common
// chains have at most one element (e.g. a permutation poset and its reverse)
// ---------------------------------------------------------------------------

/// Forward product injection. `w` is a bijection `X -> [n]` as values. At
/// each stage the element with the largest remaining `w`-value is removed,
/// the images are built recursively, and the deletion bijection reinserts the
/// element into both coordinates.
pub fn beta_forward(p: &Poset, q: &Poset, w: &[usize]) -> (Word, Word) {
    let n = p.n();
    assert_eq!(q.n(), n);
    fn rec(p: &Poset, q: &Poset, w: &[usize], mask: Mask) -> (Vec<usize>, Vec<usize>) {
        if mask == 0 {
            return (vec![0; w.len()], vec![0; w.len()]);
        }
        let y = iter_mask(mask).max_by_key(|&x| w[x]).unwrap();
        let (fsub, gsub) = rec(p, q, w, mask & !(1 << y));
        let f = dfs_forward_masked(p, mask, y, &fsub);
        let g = dfs_forward_masked(q, mask, y, &gsub);
        (f, g)
    }
    let (fvals, gvals) = rec(p, q, w, mask_full(n));
    (values_to_word(&fvals), values_to_word(&gvals))
}

/// Inverse replay: the promotion chains of the two coordinates are a chain of
/// `P` and a chain of `Q`, so they share at most one element; the pair is in
/// the image exactly when a shared element exists at every stage.
pub fn beta_inverse(p: &Poset, q: &Poset, f: &Word, g: &Word) -> Option<Vec<usize>> {
    let n = p.n();
    let mut fvals = word_to_values(f);
    let mut gvals = word_to_values(g);
    let mut w = vec![0usize; n];
    let mut mask = mask_full(n);
    for v in (1..=n).rev() {
        let chain_f = promotion_chain_masked(p, mask, &fvals);
        let chain_g = promotion_chain_masked(q, mask, &gvals);
        let common: Vec<usize> =
            chain_f.iter().copied().filter(|x| chain_g.contains(x)).collect();
        if common.len() != 1 {
            return None;
        }
        let y = common[0];
        w[y] = v;
        fvals = dfs_inverse_masked(p, mask, y, &fvals).expect("y is on the chain");
        gvals = dfs_inverse_masked(q, mask, y, &gvals).expect("y is on the chain");
        mask &= !(1 << y);
    }
    Some(w)
}

/// Product injection specialized to a permutation poset and the poset of the
/// reversed permutation (whose comparabilities are exactly complementary).
pub fn sid_beta(sigma: &[usize], w: &[usize]) -> Result<(Word, Word), InjectionError> {
    let p = Poset::from_permutation(sigma).map_err(|e| InjectionError::Invalid(e.to_string()))?;
    let rev: Vec<usize> = sigma.iter().rev().copied().collect();
    let q_rev = Poset::from_permutation(&rev).map_err(|e| InjectionError::Invalid(e.to_string()))?;
    // reversing index order keeps the ground set aligned: element i of P
    // corresponds to element n-1-i of the reversed permutation's poset, so
    // relabel back
    let n = sigma.len();
    let q = relabel_reversed(&q_rev, n);
    Ok(beta_forward(&p, &q, w))
}

pub fn sid_beta_inverse(sigma: &[usize], f: &Word, g: &Word) -> Result<Option<Vec<usize>>, InjectionError> {
    let p = Poset::from_permutation(sigma).map_err(|e| InjectionError::Invalid(e.to_string()))?;
    let rev: Vec<usize> = sigma.iter().rev().copied().collect();
    let q = relabel_reversed(
        &Poset::from_permutation(&rev).map_err(|e| InjectionError::Invalid(e.to_string()))?,
        sigma.len(),
    );
    Ok(beta_inverse(&p, &q, f, g))
}

/// The poset of the reversed permutation, relabeled so element `i` again
/// refers to position `i` of the original permutation.
pub fn reversed_permutation_poset(sigma: &[usize]) -> Poset {
    let rev: Vec<usize> = sigma.iter().rev().copied().collect();
    relabel_reversed(&Poset::from_permutation(&rev).expect("valid permutation"), sigma.len())
}

fn relabel_reversed(q_rev: &Poset, n: usize) -> Poset {
    let mut up = vec![0u64; n];
    for (x, y) in q_rev.relation_pairs() {
        up[n - 1 - x] |= 1 << (n - 1 - y);
    }
    Poset::from_closed_relation(n, up).expect("relabeling of a valid poset")
}

/// Census over `E(P_sigma) x E(P_sigma-reversed)`: counts the pairs outside
/// the image of the product injection. Closed form
/// `e(P_sigma) * e(P_sigma-rev) - n!`; vanishes iff `P_sigma` is
/// series-parallel.
pub fn eta(sigma: &[usize], sample_limit: usize) -> Result<WitnessReport, InjectionError> {
    let p = Poset::from_permutation(sigma).map_err(|e| InjectionError::Invalid(e.to_string()))?;
    let q = reversed_permutation_poset(sigma);
    let ef = extensions(&p);
    let eg = extensions(&q);
    let mut total = Count::zero();
    let mut witnesses = Count::zero();
    let mut samples = Vec::new();
    for f in &ef {
        for g in &eg {
            total += Count::one();
            if beta_inverse(&p, &q, f, g).is_none() {
                witnesses += Count::one();
                if samples.len() < sample_limit {
                    samples.push(format!("f={f:?} g={g:?}"));
                }
            }
        }
    }
    let formula = Count::from(ef.len()) * Count::from(eg.len()) - factorial(sigma.len());
    Ok(witness_report(total, witnesses, formula, samples))
}

// ---------------------------------------------------------------------------
// Scaled refinement witness: order maps to [t] paired with offsets mod k
// ---------------------------------------------------------------------------

/// Census over pairs (order-preserving `g : X -> [t]`, offset vector
/// `beta : X -> {0..k-1}`): the refinement `h(x) = k(g(x)-1) + beta(x) + 1`
/// covers each order-preserving map to `[kt]` at most once; the failures
/// number `Omega(P,t) * k^n - Omega(P,kt)`.
pub fn ks_scaled_witness(p: &Poset, t: u64, k: u64, sample_limit: usize) -> WitnessReport {
    let n = p.n();
    let mut total = Count::zero();
    let mut witnesses = Count::zero();
    let mut samples = Vec::new();
    let order_ok = |h: &[usize]| {
        (0..n).all(|x| iter_mask(p.upset(x)).all(|y| h[x] <= h[y]))
    };
    for_each_order_map(p, t, |gvals| {
        // odometer over offset vectors
        let mut beta = vec![0usize; n];
        loop {
            total += Count::one();
            let h: Vec<usize> =
                (0..n).map(|x| (k as usize) * (gvals[x] - 1) + beta[x] + 1).collect();
            if !order_ok(&h) {
                witnesses += Count::one();
                if samples.len() < sample_limit {
                    samples.push(format!("g={gvals:?} beta={beta:?}"));
                }
            }
            // increment
            let mut i = 0;
            while i < n {
                beta[i] += 1;
                if beta[i] < k as usize {
                    break;
                }
                beta[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    });
    let formula = order_polynomial(p, t) * pow(k, n) - order_polynomial(p, k * t);
    witness_report(total, witnesses, formula, samples)
}
