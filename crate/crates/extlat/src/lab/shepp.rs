//! Audit of the twisted product lattice behind the correlation proofs for
//! order polynomials. Fix a split of the ground set into `Y` and `Z` and
//! consider all vectors `v` in `[t]^X` ordered by
//! `v <= w  iff  v_y <= w_y for y in Y and v_z >= w_z for z in Z`.
//! Componentwise min/max on `Y` paired with max/min on `Z` make this a
//! distributive lattice, and the indicator `mu` of the maps that are
//! order-preserving within `Y` and within `Z` is log-supermodular. The audit
//! verifies the lattice laws, distributivity, and supermodularity — either
//! exhaustively or by deterministic seeded sampling when the lattice is too
//! large.

use super::LabError;
use crate::poset::{iter_mask, Mask, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SheppReport {
    pub n: usize,
    pub t: u64,
    pub y_set: Vec<usize>,
    pub lattice_size: usize,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub mu_positive: usize,
    pub lattice_ok: bool,
    pub distributive_ok: bool,
    pub supermodular_ok: bool,
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Exhaustive checking is quadratic/cubic in the lattice size; above this
/// size the audit switches to seeded sampling.
pub const EXHAUSTIVE_LATTICE_LIMIT: usize = 100;
pub const DEFAULT_SAMPLES: usize = 10_000;

struct Lattice<'a> {
    p: &'a Poset,
    n: usize,
    t: u64,
    y_mask: Mask,
}

impl<'a> Lattice<'a> {
    fn vector(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for x in 0..self.n {
            v[x] = (idx % self.t as usize) as u64 + 1;
            idx /= self.t as usize;
        }
        v
    }

    fn leq(&self, v: &[u64], w: &[u64]) -> bool {
        (0..self.n).all(|x| {
            if self.y_mask & (1 << x) != 0 {
                v[x] <= w[x]
            } else {
                v[x] >= w[x]
            }
        })
    }

    fn meet(&self, v: &[u64], w: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|x| {
                if self.y_mask & (1 << x) != 0 {
                    v[x].min(w[x])
                } else {
                    v[x].max(w[x])
                }
            })
            .collect()
    }

    fn join(&self, v: &[u64], w: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|x| {
                if self.y_mask & (1 << x) != 0 {
                    v[x].max(w[x])
                } else {
                    v[x].min(w[x])
                }
            })
            .collect()
    }

    /// Indicator of order preservation within each block of the split.
    fn mu(&self, v: &[u64]) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.p.lt(x, y) {
                    let same_side = (self.y_mask >> x & 1) == (self.y_mask >> y & 1);
                    if same_side && v[x] > v[y] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn shepp_audit(
    p: &Poset,
    y_mask: Mask,
    t: u64,
    samples: usize,
    seed: u64,
    cap: usize,
) -> Result<SheppReport, LabError> {
    let n = p.n();
    assert!(t >= 1);
    let size = (t as usize)
        .checked_pow(n as u32)
        .filter(|&s| s <= cap)
        .ok_or(LabError::CapExceeded(t.saturating_pow(n as u32) as usize, cap))?;
    let lat = Lattice { p, n, t, y_mask };
    let exhaustive = size <= EXHAUSTIVE_LATTICE_LIMIT;
    let mut failures = Vec::new();
    let mut lattice_ok = true;
    let mut distributive_ok = true;
    let mut supermodular_ok = true;
    let mut pairs_checked = 0;
    let mut triples_checked = 0;

    let mu_positive = (0..size).filter(|&i| lat.mu(&lat.vector(i))).count();

    let mut check_pair = |a: usize, b: usize| {
        let v = lat.vector(a);
        let w = lat.vector(b);
        let m = lat.meet(&v, &w);
        let j = lat.join(&v, &w);
        if !(lat.leq(&m, &v) && lat.leq(&m, &w) && lat.leq(&v, &j) && lat.leq(&w, &j)) {
            lattice_ok = false;
            failures.push(format!("bound failure at pair ({a},{b})"));
        }
        if lat.mu(&v) && lat.mu(&w) && !(lat.mu(&m) && lat.mu(&j)) {
            supermodular_ok = false;
            failures.push(format!("supermodularity failure at pair ({a},{b})"));
        }
        pairs_checked += 1;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if exhaustive {
        for a in 0..size {
            for b in a..size {
                check_pair(a, b);
            }
        }
    } else {
        for _ in 0..samples {
            check_pair(rng.gen_range(0..size), rng.gen_range(0..size));
        }
    }

    let mut check_triple = |a: usize, b: usize, c: usize| {
        let u = lat.vector(a);
        let v = lat.vector(b);
        let w = lat.vector(c);
        // universal property of meet and join
        if lat.leq(&u, &v) && lat.leq(&u, &w) && !lat.leq(&u, &lat.meet(&v, &w)) {
            lattice_ok = false;
            failures.push(format!("meet not greatest at triple ({a},{b},{c})"));
        }
        if lat.leq(&v, &u) && lat.leq(&w, &u) && !lat.leq(&lat.join(&v, &w), &u) {
            lattice_ok = false;
            failures.push(format!("join not least at triple ({a},{b},{c})"));
        }
        let lhs = lat.meet(&u, &lat.join(&v, &w));
        let rhs = lat.join(&lat.meet(&u, &v), &lat.meet(&u, &w));
        if lhs != rhs {
            distributive_ok = false;
            failures.push(format!("distributivity failure at triple ({a},{b},{c})"));
        }
        triples_checked += 1;
    };
    let triple_exhaustive = size * size * size <= EXHAUSTIVE_LATTICE_LIMIT.pow(2);
    if triple_exhaustive {
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    check_triple(a, b, c);
                }
            }
        }
    } else {
        for _ in 0..samples {
            check_triple(
                rng.gen_range(0..size),
                rng.gen_range(0..size),
                rng.gen_range(0..size),
            );
        }
    }

    failures.truncate(20);
    let ok = lattice_ok && distributive_ok && supermodular_ok;
    Ok(SheppReport {
        n,
        t,
        y_set: iter_mask(y_mask).collect(),
        lattice_size: size,
        exhaustive,
        pairs_checked,
        triples_checked,
        mu_positive,
        lattice_ok,
        distributive_ok,
        supermodular_ok,
        ok,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::mask_full;

    #[test]
    fn small_lattices_pass_exhaustively() {
        let p = Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        for y_mask in 0..=mask_full(3) {
            let r = shepp_audit(&p, y_mask, 2, 0, 7, 100_000).unwrap();
            assert!(r.exhaustive);
            assert!(r.ok, "failed split {y_mask}: {:?}", r.failures);
        }
    }

    #[test]
    fn trivial_split_counts_order_maps() {
        // with Z empty, mu-positive vectors are exactly the order-preserving
        // maps into [t]
        let p = Poset::chain(3);
        let r = shepp_audit(&p, mask_full(3), 3, 0, 7, 100_000).unwrap();
        let omega = crate::counting::order_polynomial(&p, 3);
        assert_eq!(crate::counting::Count::from(r.mu_positive), omega);
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let p = Poset::chain(4);
        let a = shepp_audit(&p, 0b0011, 5, 500, 42, 100_000).unwrap();
        let b = shepp_audit(&p, 0b0011, 5, 500, 42, 100_000).unwrap();
        assert!(!a.exhaustive);
        assert!(a.ok);
        assert_eq!(a.mu_positive, b.mu_positive);
        assert_eq!(a.pairs_checked, b.pairs_checked);
    }

    #[test]
    fn cap_is_enforced() {
        let p = Poset::antichain(5);
        assert!(shepp_audit(&p, 0, 10, 10, 1, 1000).is_err());
    }
}
