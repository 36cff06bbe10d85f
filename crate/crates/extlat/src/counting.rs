//! Exact counting: linear extensions, order polynomials (via the chain-of-
//! upper-ideals profile), q-analogues, restricted extension counts, counts of
//! order-preserving maps with a pinned value, P-partition series, and mixed
//! extension counts over complementary restrictions.

use crate::poset::{iter_mask, mask_full, Mask, Poset, PosetError};
use crate::qpoly::QPoly;
use crate::Word;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub type Count = BigUint;

/// Subset-DP memory cap: `2^n` table entries.
const DP_MAX_N: usize = 22;

pub fn factorial(n: usize) -> Count {
    let mut acc = Count::one();
    for k in 2..=n {
        acc *= Count::from(k);
    }
    acc
}

pub fn binomial(t: u64, m: u64) -> Count {
    if m > t {
        return Count::zero();
    }
    let mut acc = Count::one();
    for i in 0..m {
        acc = acc * Count::from(t - i) / Count::from(i + 1);
    }
    acc
}

pub fn pow(base: u64, exp: usize) -> Count {
    Count::from(base).pow(exp as u32)
}

pub fn is_linear_extension(p: &Poset, word: &Word) -> bool {
    if word.len() != p.n() {
        return false;
    }
    let mut placed: Mask = 0;
    for &x in word {
        if x >= p.n() || placed >> x & 1 != 0 || p.downset(x) & !placed != 0 {
            return false;
        }
        placed |= 1 << x;
    }
    true
}

/// Number of linear extensions, by dynamic programming over order ideals.
pub fn count_extensions(p: &Poset) -> Count {
    assert!(p.n() <= DP_MAX_N, "extension-count DP capped at {DP_MAX_N} elements");
    let n = p.n();
    let full = mask_full(n) as usize;
    let mut dp = vec![Count::zero(); full + 1];
    dp[0] = Count::one();
    for mask in 0..=full {
        if dp[mask].is_zero() {
            continue;
        }
        for x in iter_mask(!(mask as Mask) & mask_full(n)) {
            if p.downset(x) & !(mask as Mask) == 0 {
                let v = dp[mask].clone();
                dp[mask | 1 << x] += v;
            }
        }
    }
    dp[full].clone()
}

/// Visit every linear extension in lexicographic word order.
pub fn for_each_extension(p: &Poset, mut f: impl FnMut(&Word)) {
    fn rec(p: &Poset, placed: Mask, word: &mut Word, f: &mut impl FnMut(&Word)) {
        if word.len() == p.n() {
            f(word);
            return;
        }
        for x in 0..p.n() {
            if placed >> x & 1 == 0 && p.downset(x) & !placed == 0 {
                word.push(x);
                rec(p, placed | 1 << x, word, f);
                word.pop();
            }
        }
    }
    rec(p, 0, &mut Vec::with_capacity(p.n()), &mut f);
}

pub fn extensions(p: &Poset) -> Vec<Word> {
    let mut v = Vec::new();
    for_each_extension(p, |w| v.push(w.clone()));
    v
}

/// The lexicographically smallest linear extension (greedy smallest minimal
/// element first).
pub fn lex_min_extension(p: &Poset) -> Word {
    let mut placed: Mask = 0;
    let mut word = Vec::with_capacity(p.n());
    while word.len() < p.n() {
        let x = (0..p.n())
            .find(|&x| placed >> x & 1 == 0 && p.downset(x) & !placed == 0)
            .expect("valid poset");
        word.push(x);
        placed |= 1 << x;
    }
    word
}

/// All up-closed subsets, in increasing numeric mask order.
pub fn upsets(p: &Poset) -> Vec<Mask> {
    assert!(p.n() <= DP_MAX_N);
    (0..=mask_full(p.n())).filter(|&m| p.is_upset(m)).collect()
}

/// `profile[m]` counts strictly increasing chains of up-closed sets
/// `{} = I_0 < I_1 < ... < I_m = X`. The order polynomial is then
/// `sum_m profile[m] * binomial(t, m)`; in particular `profile[n]` equals the
/// number of linear extensions.
pub fn ideal_chain_profile(p: &Poset) -> Vec<Count> {
    let n = p.n();
    let ups = upsets(p);
    let full = mask_full(n);
    // dp[j] = number of chains {} -> ups[j] of the current length
    let mut dp: Vec<Count> = ups.iter().map(|&u| if u == 0 { Count::one() } else { Count::zero() }).collect();
    let mut profile = vec![Count::zero(); n + 1];
    profile[0] = if n == 0 { Count::one() } else { Count::zero() };
    for m in 1..=n {
        let mut next = vec![Count::zero(); ups.len()];
        for (j, &uj) in ups.iter().enumerate() {
            for (i, &ui) in ups.iter().enumerate() {
                if ui != uj && ui & uj == ui && !dp[i].is_zero() {
                    let v = dp[i].clone();
                    next[j] += v;
                }
            }
        }
        dp = next;
        let top = ups.iter().position(|&u| u == full).unwrap();
        profile[m] = dp[top].clone();
    }
    profile
}

/// The order polynomial value: number of order-preserving maps `X -> [t]`.
pub fn order_polynomial(p: &Poset, t: u64) -> Count {
    let profile = ideal_chain_profile(p);
    let mut acc = Count::zero();
    for (m, c) in profile.iter().enumerate() {
        if !c.is_zero() {
            acc += c * binomial(t, m as u64);
        }
    }
    acc
}

/// Visit every order-preserving map `X -> [t]` as a value vector (1-based
/// values). Intended for small `t^n` oracles and tabulations.
pub fn for_each_order_map(p: &Poset, t: u64, mut f: impl FnMut(&[usize])) {
    let order = crate::poset::topo_order(p);
    let n = p.n();
    let mut vals = vec![0usize; n];
    fn rec(
        p: &Poset,
        order: &[usize],
        t: usize,
        i: usize,
        vals: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if i == order.len() {
            f(vals);
            return;
        }
        let x = order[i];
        let lo = iter_mask(p.downset(x)).map(|y| vals[y]).max().unwrap_or(1);
        for v in lo..=t {
            vals[x] = v;
            rec(p, order, t, i + 1, vals, f);
        }
        vals[x] = 0;
    }
    rec(p, &order, t as usize, 0, &mut vals, &mut f);
}

/// Brute-force order polynomial (oracle for `order_polynomial`).
pub fn order_polynomial_direct(p: &Poset, t: u64) -> Count {
    let mut c = Count::zero();
    for_each_order_map(p, t, |_| c += Count::one());
    c
}

/// q-analogue of the order polynomial: `sum_g q^(|g| - n)` over
/// order-preserving `g : X -> [t]`, where `|g| = sum_x g(x)`. Computed by a
/// transfer DP over the weakly decreasing chain of up-closed level sets
/// `J_s = {x : g(x) >= s}` (so `J_1 = X` and level `s >= 2` contributes
/// `q^|J_s|`).
pub fn q_order_polynomial(p: &Poset, t: u64) -> QPoly {
    if p.n() == 0 {
        return QPoly::one();
    }
    if t == 0 {
        return QPoly::zero();
    }
    let ups = upsets(p);
    let full = mask_full(p.n());
    let mut dp: Vec<QPoly> =
        ups.iter().map(|&u| if u == full { QPoly::one() } else { QPoly::zero() }).collect();
    for _s in 2..=t {
        let mut next = vec![QPoly::zero(); ups.len()];
        for (j, &uj) in ups.iter().enumerate() {
            let mut acc = QPoly::zero();
            for (i, &ui) in ups.iter().enumerate() {
                if uj & ui == uj && !dp[i].is_zero() {
                    acc = acc.add(&dp[i]);
                }
            }
            next[j] = acc.shift(uj.count_ones() as usize);
        }
        dp = next;
    }
    let mut acc = QPoly::zero();
    for q in dp {
        acc = acc.add(&q);
    }
    acc
}

/// Brute-force q-analogue (oracle for `q_order_polynomial`).
pub fn q_order_polynomial_direct(p: &Poset, t: u64) -> QPoly {
    let n = p.n();
    let mut coeffs: Vec<BigInt> = Vec::new();
    for_each_order_map(p, t, |vals| {
        let w: usize = vals.iter().sum::<usize>() - n;
        if coeffs.len() <= w {
            coeffs.resize(w + 1, BigInt::zero());
        }
        coeffs[w] += 1;
    });
    QPoly::from_coeffs(coeffs)
}

/// Count linear extensions taking prescribed values: `f(u[i]) = a[i]` for all
/// `i` (elements distinct, positions 1-based and distinct).
pub fn restricted_count(p: &Poset, u: &[usize], a: &[usize]) -> Count {
    assert_eq!(u.len(), a.len());
    assert!(p.n() <= DP_MAX_N);
    let n = p.n();
    // at_pos[pos] = forced element at 1-based position pos, if any
    let mut at_pos = vec![usize::MAX; n + 1];
    let mut elem_pos = vec![0usize; n];
    for (&x, &pos) in u.iter().zip(a) {
        assert!(x < n && pos >= 1 && pos <= n);
        assert!(at_pos[pos] == usize::MAX && elem_pos[x] == 0, "positions and elements must be distinct");
        at_pos[pos] = x;
        elem_pos[x] = pos;
    }
    let full = mask_full(n) as usize;
    let mut dp = vec![Count::zero(); full + 1];
    dp[0] = Count::one();
    for mask in 0..=full {
        if dp[mask].is_zero() {
            continue;
        }
        let pos = (mask as u64).count_ones() as usize + 1;
        for x in iter_mask(!(mask as Mask) & mask_full(n)) {
            if p.downset(x) & !(mask as Mask) != 0 {
                continue;
            }
            if at_pos[pos] != usize::MAX && at_pos[pos] != x {
                continue;
            }
            if elem_pos[x] != 0 && elem_pos[x] != pos {
                continue;
            }
            let v = dp[mask].clone();
            dp[mask | 1 << x] += v;
        }
    }
    dp[full].clone()
}

/// Number of order-preserving maps `X -> [t]` with the value at `x` pinned to
/// `a`. Summing over `a` recovers the order polynomial.
pub fn graham_count(p: &Poset, t: u64, x: usize, a: u64) -> Count {
    if a == 0 || a > t {
        return Count::zero();
    }
    if p.n() == 0 {
        return Count::zero();
    }
    let ups = upsets(p);
    let full = mask_full(p.n());
    let xbit = 1u64 << x;
    // level sets J_1 = X ⊇ J_2 ⊇ ... ⊇ J_t; g(x) = a means x in J_s exactly
    // for s <= a
    let mut dp: Vec<Count> =
        ups.iter().map(|&u| if u == full { Count::one() } else { Count::zero() }).collect();
    for s in 2..=t {
        let mut next = vec![Count::zero(); ups.len()];
        for (j, &uj) in ups.iter().enumerate() {
            let want_x = s <= a;
            if (uj & xbit != 0) != want_x {
                continue;
            }
            for (i, &ui) in ups.iter().enumerate() {
                if uj & ui == uj && !dp[i].is_zero() {
                    let v = dp[i].clone();
                    next[j] += v;
                }
            }
        }
        dp = next;
    }
    let mut acc = Count::zero();
    for (i, &ui) in ups.iter().enumerate() {
        // t = 1 never entered the loop; enforce the pin on J_1 = X (trivial)
        if t == 1 && (ui & xbit != 0) != (a >= 1) {
            continue;
        }
        acc += &dp[i];
    }
    acc
}

/// Coefficients `c[0..=max_deg]` of the P-partition generating series
/// `sum_g q^|g|` over all weakly order-preserving maps `g : X -> {0,1,...}`.
pub fn p_partition_coeffs(p: &Poset, max_deg: usize) -> Vec<Count> {
    let ups = upsets(p);
    // chains(j, m): weakly decreasing sequences of up-closed sets starting at
    // ups[j] with total size m (the sequence ends when it reaches the empty
    // set, which contributes nothing)
    let k = ups.len();
    let mut memo: Vec<Vec<Option<Count>>> = vec![vec![None; max_deg + 1]; k];
    fn chains(
        ups: &[Mask],
        memo: &mut Vec<Vec<Option<Count>>>,
        j: usize,
        m: usize,
    ) -> Count {
        if ups[j] == 0 {
            return if m == 0 { Count::one() } else { Count::zero() };
        }
        let sz = ups[j].count_ones() as usize;
        if m < sz {
            return Count::zero();
        }
        if let Some(c) = &memo[j][m] {
            return c.clone();
        }
        let mut acc = Count::zero();
        for i in 0..ups.len() {
            if ups[i] & ups[j] == ups[i] {
                acc += chains(ups, memo, i, m - sz);
            }
        }
        memo[j][m] = Some(acc.clone());
        acc
    }
    (0..=max_deg)
        .map(|m| {
            let mut acc = Count::zero();
            for j in 0..k {
                acc += chains(&ups, &mut memo, j, m);
            }
            acc
        })
        .collect()
}

/// Coefficients of `prod_x 1 / (1 - q^b(x))` up to `q^max_deg`.
pub fn hook_series_coeffs(p: &Poset, max_deg: usize) -> Vec<Count> {
    let mut c = vec![Count::zero(); max_deg + 1];
    c[0] = Count::one();
    for x in 0..p.n() {
        let b = p.b(x);
        // multiply by the geometric series in q^b, in place
        for m in b..=max_deg {
            let v = c[m - b].clone();
            c[m] += v;
        }
    }
    c
}

/// Mixed extension count: sum over k-subsets J of `e(P|_J) * e(Q|_Jc)`.
/// Both posets must live on the same element set.
pub fn mixed_count(p: &Poset, q: &Poset, k: usize) -> Result<Count, PosetError> {
    if p.n() != q.n() {
        return Err(PosetError::InvalidElement(q.n(), p.n()));
    }
    let n = p.n();
    let full = mask_full(n);
    let mut acc = Count::zero();
    for mask in 0..=full {
        if mask.count_ones() as usize == k {
            acc += count_extensions(&p.restrict(mask)) * count_extensions(&q.restrict(full & !mask));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::for_each_poset;

    #[test]
    fn chain_and_antichain_counts() {
        for n in 0..=8 {
            assert_eq!(count_extensions(&Poset::chain(n)), Count::one());
            assert_eq!(count_extensions(&Poset::antichain(n)), factorial(n));
        }
        // N-shaped poset has 5 extensions
        let p = Poset::from_permutation(&[2, 4, 1, 3]).unwrap();
        assert_eq!(count_extensions(&p), Count::from(5u32));
    }

    #[test]
    fn dp_matches_enumeration() {
        for_each_poset(4, |p| {
            let exts = extensions(p);
            assert_eq!(count_extensions(p), Count::from(exts.len()));
            for w in &exts {
                assert!(is_linear_extension(p, w));
            }
            // lexicographic order and distinctness
            for pair in exts.windows(2) {
                assert!(pair[0] < pair[1]);
            }
            assert_eq!(exts[0], lex_min_extension(p));
        });
    }

    #[test]
    fn profile_endpoints() {
        for_each_poset(4, |p| {
            let profile = ideal_chain_profile(p);
            assert_eq!(profile[4], count_extensions(p));
            assert_eq!(profile[1], Count::one());
        });
    }

    #[test]
    fn order_polynomial_known_values() {
        for t in 1..=6u64 {
            assert_eq!(order_polynomial(&Poset::antichain(4), t), pow(t, 4));
            assert_eq!(order_polynomial(&Poset::chain(4), t), binomial(t + 3, 4));
        }
        // one chain element below a 4-antichain: value at t is sum_{k<=t} k^4
        let p = Poset::chain(1).linear_sum(&Poset::antichain(4)).unwrap();
        for t in 1..=10u64 {
            let expected: Count = (1..=t).map(|k| pow(k, 4)).sum();
            assert_eq!(order_polynomial(&p, t), expected);
        }
        assert_eq!(order_polynomial(&p, 2), Count::from(17u32));
    }

    #[test]
    fn order_polynomial_matches_direct() {
        for_each_poset(4, |p| {
            for t in 1..=4 {
                assert_eq!(order_polynomial(p, t), order_polynomial_direct(p, t));
            }
        });
    }

    #[test]
    fn q_analogue_matches_direct_and_specializes() {
        for_each_poset(4, |p| {
            for t in 1..=3u64 {
                let q = q_order_polynomial(p, t);
                assert_eq!(q, q_order_polynomial_direct(p, t));
                assert_eq!(
                    q.eval_at_one().to_biguint().unwrap(),
                    order_polynomial(p, t)
                );
            }
        });
    }

    #[test]
    fn restricted_count_matches_filter() {
        for_each_poset(4, |p| {
            let exts = extensions(p);
            for x in 0..4 {
                for a in 1..=4usize {
                    let brute =
                        exts.iter().filter(|w| w[a - 1] == x).count();
                    assert_eq!(restricted_count(p, &[x], &[a]), Count::from(brute));
                }
            }
            // pairs
            for x in 0..4 {
                for y in 0..4 {
                    if x == y {
                        continue;
                    }
                    let brute = exts.iter().filter(|w| w[0] == x && w[2] == y).count();
                    assert_eq!(restricted_count(p, &[x, y], &[1, 3]), Count::from(brute));
                }
            }
        });
    }

    #[test]
    fn graham_count_sums_to_order_polynomial() {
        for_each_poset(4, |p| {
            for t in 1..=4u64 {
                // oracle: tabulate by direct enumeration
                let mut table = vec![vec![Count::zero(); t as usize + 1]; 4];
                for_each_order_map(p, t, |vals| {
                    for (x, &v) in vals.iter().enumerate() {
                        table[x][v] += Count::one();
                    }
                });
                for x in 0..4 {
                    let mut total = Count::zero();
                    for a in 1..=t {
                        let c = graham_count(p, t, x, a);
                        assert_eq!(c, table[x][a as usize]);
                        total += c;
                    }
                    assert_eq!(total, order_polynomial(p, t));
                }
            }
        });
    }

    #[test]
    fn p_partition_series_examples() {
        // single element: all coefficients 1
        assert_eq!(p_partition_coeffs(&Poset::antichain(1), 5), vec![Count::one(); 6]);
        // 2-antichain: m+1 maps of weight m
        let c = p_partition_coeffs(&Poset::antichain(2), 4);
        assert_eq!(c, (1..=5u32).map(Count::from).collect::<Vec<_>>());
        // 2-chain equals its hook series exactly
        let p = Poset::chain(2);
        assert_eq!(p_partition_coeffs(&p, 8), hook_series_coeffs(&p, 8));
    }

    #[test]
    fn mixed_count_edges() {
        let p = Poset::from_permutation(&[2, 4, 1, 3]).unwrap();
        let q = Poset::from_permutation(&[3, 1, 4, 2]).unwrap();
        // k = n reduces to e(P), k = 0 to e(Q)
        assert_eq!(mixed_count(&p, &q, 4).unwrap(), count_extensions(&p));
        assert_eq!(mixed_count(&p, &q, 0).unwrap(), count_extensions(&q));
    }
}
