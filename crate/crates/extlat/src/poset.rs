//! Finite posets on elements `0..n`, stored as eagerly transitively closed
//! relation bit-matrices. All invariants (irreflexive, transitive,
//! antisymmetric) are checked on every construction path, so downstream code
//! can trust the closure unconditionally.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Subsets of elements as bitmasks; caps every poset at 64 elements, far above
/// the exhaustive scale this library targets.
pub type Mask = u64;

pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation contains a cycle")]
    Cycle,
    #[error("element {0} out of range for poset on {1} elements")]
    InvalidElement(usize, usize),
    #[error("poset size {0} exceeds cap {1}")]
    CapExceeded(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite poset. `up[x]` is the strict upper set `{y : x < y}` and
/// `down[x]` the strict lower set; both are closures, not cover relations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    n: usize,
    up: Vec<Mask>,
    down: Vec<Mask>,
}

impl Poset {
    /// Build from an already transitively closed strict relation. Checks all
    /// order axioms and fails with `Cycle` on antisymmetry violations.
    pub fn from_closed_relation(n: usize, up: Vec<Mask>) -> Result<Poset, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::CapExceeded(n, MAX_ELEMENTS));
        }
        assert_eq!(up.len(), n);
        let full = mask_full(n);
        let mut down = vec![0u64; n];
        for x in 0..n {
            if up[x] & !full != 0 {
                return Err(PosetError::InvalidElement(63 - up[x].leading_zeros() as usize, n));
            }
            if up[x] >> x & 1 != 0 {
                return Err(PosetError::Cycle);
            }
            for y in iter_mask(up[x]) {
                if up[y] >> x & 1 != 0 {
                    return Err(PosetError::Cycle);
                }
                if up[y] & !up[x] != 0 {
                    // not transitively closed; close it ourselves would hide
                    // caller bugs, so reject
                    return Err(PosetError::Parse("relation is not transitively closed".into()));
                }
                down[y] |= 1 << x;
            }
        }
        Ok(Poset { n, up, down })
    }

    /// Build from an arbitrary list of strict relations `(x, y)` meaning
    /// `x < y`; the transitive closure is taken and cycles rejected.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::CapExceeded(n, MAX_ELEMENTS));
        }
        let mut up = vec![0u64; n];
        for &(x, y) in covers {
            if x >= n {
                return Err(PosetError::InvalidElement(x, n));
            }
            if y >= n {
                return Err(PosetError::InvalidElement(y, n));
            }
            if x == y {
                return Err(PosetError::Cycle);
            }
            up[x] |= 1 << y;
        }
        transitive_close(&mut up);
        Poset::from_closed_relation(n, up)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn all_mask(&self) -> Mask {
        mask_full(self.n)
    }

    /// `x < y`?
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 != 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && !self.comparable(x, y)
    }

    /// Strict upper set `{y : x < y}` as a mask.
    #[inline]
    pub fn upset(&self, x: usize) -> Mask {
        self.up[x]
    }

    /// Strict lower set `{y : y < x}` as a mask.
    #[inline]
    pub fn downset(&self, x: usize) -> Mask {
        self.down[x]
    }

    /// `ell(x)` = size of the principal lower ideal `{y : y <= x}`.
    pub fn ell(&self, x: usize) -> usize {
        self.down[x].count_ones() as usize + 1
    }

    /// `b(x)` = size of the principal upper ideal `{y : y >= x}`.
    pub fn b(&self, x: usize) -> usize {
        self.up[x].count_ones() as usize + 1
    }

    /// Number of elements strictly between `x` and `y`; requires `x < y`.
    pub fn interval_count(&self, x: usize, y: usize) -> Result<usize, PosetError> {
        if !self.lt(x, y) {
            return Err(PosetError::InvalidElement(y, self.n));
        }
        Ok((self.up[x] & self.down[y]).count_ones() as usize)
    }

    /// Elements covered by `x` (lower covers).
    pub fn lower_covers(&self, x: usize) -> Mask {
        let mut m = 0;
        for y in iter_mask(self.down[x]) {
            if self.up[y] & self.down[x] == 0 {
                m |= 1 << y;
            }
        }
        m
    }

    pub fn upper_covers(&self, x: usize) -> Mask {
        let mut m = 0;
        for y in iter_mask(self.up[x]) {
            if self.down[y] & self.up[x] == 0 {
                m |= 1 << y;
            }
        }
        m
    }

    pub fn minimals(&self) -> Mask {
        let mut m = 0;
        for x in 0..self.n {
            if self.down[x] == 0 {
                m |= 1 << x;
            }
        }
        m
    }

    pub fn maximals(&self) -> Mask {
        let mut m = 0;
        for x in 0..self.n {
            if self.up[x] == 0 {
                m |= 1 << x;
            }
        }
        m
    }

    /// Is `s` a down-closed set (order ideal)?
    pub fn is_downset(&self, s: Mask) -> bool {
        iter_mask(s).all(|x| self.down[x] & !s == 0)
    }

    /// Is `s` an up-closed set (order filter)?
    pub fn is_upset(&self, s: Mask) -> bool {
        iter_mask(s).all(|x| self.up[x] & !s == 0)
    }

    pub fn is_chain_set(&self, s: Mask) -> bool {
        let elems: Vec<usize> = iter_mask(s).collect();
        for (i, &x) in elems.iter().enumerate() {
            for &y in &elems[i + 1..] {
                if !self.comparable(x, y) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_antichain_set(&self, s: Mask) -> bool {
        let elems: Vec<usize> = iter_mask(s).collect();
        for (i, &x) in elems.iter().enumerate() {
            for &y in &elems[i + 1..] {
                if self.comparable(x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Dual poset (all relations reversed).
    pub fn dual(&self) -> Poset {
        Poset { n: self.n, up: self.down.clone(), down: self.up.clone() }
    }

    /// Disjoint union; `self` keeps its elements, `other`'s shift up by
    /// `self.n()`.
    pub fn disjoint_sum(&self, other: &Poset) -> Result<Poset, PosetError> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(PosetError::CapExceeded(n, MAX_ELEMENTS));
        }
        let mut up = Vec::with_capacity(n);
        up.extend_from_slice(&self.up);
        up.extend(other.up.iter().map(|&m| m << self.n));
        Poset::from_closed_relation(n, up)
    }

    /// Ordinal sum: everything in `self` below everything in `other`.
    pub fn linear_sum(&self, other: &Poset) -> Result<Poset, PosetError> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(PosetError::CapExceeded(n, MAX_ELEMENTS));
        }
        let top = mask_full(n) & !mask_full(self.n);
        let mut up = Vec::with_capacity(n);
        up.extend(self.up.iter().map(|&m| m | top));
        up.extend(other.up.iter().map(|&m| m << self.n));
        Poset::from_closed_relation(n, up)
    }

    /// Direct product on pairs; pair `(x, y)` becomes element `x*|Q| + y`.
    pub fn product(&self, other: &Poset) -> Result<Poset, PosetError> {
        let n = self.n * other.n;
        if n > MAX_ELEMENTS {
            return Err(PosetError::CapExceeded(n, MAX_ELEMENTS));
        }
        let idx = |x: usize, y: usize| x * other.n + y;
        let mut up = vec![0u64; n];
        for x1 in 0..self.n {
            for y1 in 0..other.n {
                for x2 in 0..self.n {
                    for y2 in 0..other.n {
                        if (x1, y1) != (x2, y2) && self.leq(x1, x2) && other.leq(y1, y2) {
                            up[idx(x1, y1)] |= 1 << idx(x2, y2);
                        }
                    }
                }
            }
        }
        Poset::from_closed_relation(n, up)
    }

    /// Induced subposet on `s`, relabeled order-preservingly to `0..|s|`.
    pub fn restrict(&self, s: Mask) -> Poset {
        let elems: Vec<usize> = iter_mask(s).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let up = elems
            .iter()
            .map(|&x| iter_mask(self.up[x] & s).map(|y| 1u64 << pos[y]).sum())
            .collect();
        Poset::from_closed_relation(elems.len(), up).expect("restriction of a valid poset")
    }

    /// Remove one element.
    pub fn delete(&self, x: usize) -> Poset {
        self.restrict(self.all_mask() & !(1 << x))
    }

    /// Is the identity labeling natural, i.e. `x < y` in the poset implies
    /// `x < y` as integers?
    pub fn is_naturally_labeled(&self) -> bool {
        (0..self.n).all(|x| self.up[x] & mask_full(x + 1) == 0)
    }

    /// Relabel elements so the labeling becomes natural, keeping label order
    /// as close to the original as possible (greedy smallest-minimal-first).
    /// Returns the relabeled poset together with `map` where `map[old] = new`.
    pub fn natural_relabeling(&self) -> (Poset, Vec<usize>) {
        let mut map = vec![usize::MAX; self.n];
        let mut placed: Mask = 0;
        for new in 0..self.n {
            let x = (0..self.n)
                .find(|&x| placed >> x & 1 == 0 && self.down[x] & !placed == 0)
                .expect("a finite poset always has a minimal element");
            map[x] = new;
            placed |= 1 << x;
        }
        let mut up = vec![0u64; self.n];
        for x in 0..self.n {
            for y in iter_mask(self.up[x]) {
                up[map[x]] |= 1 << map[y];
            }
        }
        (Poset::from_closed_relation(self.n, up).expect("relabeling of a valid poset"), map)
    }

    /// Two-dimensional poset of a permutation: `i < j` iff `i < j` as indices
    /// and `sigma[i] < sigma[j]`. `sigma` is a permutation of `1..=n`.
    pub fn from_permutation(sigma: &[usize]) -> Result<Poset, PosetError> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &v in sigma {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PosetError::Parse(format!("not a permutation of 1..={n}")));
            }
            seen[v - 1] = true;
        }
        let mut up = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if sigma[i] < sigma[j] {
                    up[i] |= 1 << j;
                }
            }
        }
        Poset::from_closed_relation(n, up)
    }

    pub fn chain(n: usize) -> Poset {
        let up = (0..n).map(|x| mask_full(n) & !mask_full(x + 1)).collect();
        Poset::from_closed_relation(n, up).unwrap()
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_closed_relation(n, vec![0; n]).unwrap()
    }

    /// The four-element diamond: 0 below 1 and 2, both below 3.
    pub fn diamond() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Longest chain length.
    pub fn height(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        // process in any linearization; down-closed DP
        let mut h = vec![0usize; self.n];
        let order = topo_order(self);
        for &x in &order {
            h[x] = 1 + iter_mask(self.down[x]).map(|y| h[y]).max().unwrap_or(0);
        }
        h.into_iter().max().unwrap()
    }

    /// Largest antichain, by branching over the incomparability graph.
    pub fn width(&self) -> usize {
        fn rec(p: &Poset, avail: Mask) -> usize {
            if avail == 0 {
                return 0;
            }
            let x = avail.trailing_zeros() as usize;
            let without = rec(p, avail & !(1 << x));
            let with = 1 + rec(p, avail & !(1 << x) & !p.up[x] & !p.down[x]);
            with.max(without)
        }
        rec(self, self.all_mask())
    }

    /// Does every element cover at most one other element? (Equivalently the
    /// Hasse diagram is a forest of out-trees growing upward.)
    pub fn is_ordered_forest(&self) -> bool {
        (0..self.n).all(|x| self.lower_covers(x).count_ones() <= 1)
    }

    /// Recursive series-parallel test: decompose by comparability components
    /// (parallel) and by ordinal cuts (series).
    pub fn is_series_parallel(&self) -> bool {
        fn rec(p: &Poset, s: Mask) -> bool {
            let k = s.count_ones();
            if k <= 1 {
                return true;
            }
            // parallel split: comparability components inside s
            let comps = components(s, |x, y| p.comparable(x, y));
            if comps.len() > 1 {
                return comps.into_iter().all(|c| rec(p, c));
            }
            // series split: incomparability components inside s, checked to be
            // totally ordered against each other
            let comps = components(s, |x, y| p.incomparable(x, y));
            if comps.len() > 1 {
                return comps.into_iter().all(|c| rec(p, c));
            }
            false
        }
        rec(self, self.all_mask())
    }

    pub fn structure(&self) -> StructureReport {
        StructureReport {
            n: self.n,
            width: self.width(),
            height: self.height(),
            num_minimal: self.minimals().count_ones() as usize,
            num_maximal: self.maximals().count_ones() as usize,
            ordered_forest: self.is_ordered_forest(),
            series_parallel: self.is_series_parallel(),
        }
    }

    /// Comparability graph as a canonical edge-set key (for grouping posets).
    pub fn comparability_key(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.comparable(x, y) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    /// All strict relation pairs `(x, y)` with `x < y` in the order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for x in 0..self.n {
            for y in iter_mask(self.up[x]) {
                v.push((x, y));
            }
        }
        v
    }

    /// Serialize in the `poset v1` text format (1-based labels).
    pub fn to_text(&self) -> String {
        let mut s = format!("poset v1\nn {}\n", self.n);
        for x in 0..self.n {
            for y in iter_mask(self.upper_covers(x)) {
                s.push_str(&format!("cover {} {}\n", x + 1, y + 1));
            }
        }
        s
    }

    /// Parse the `poset v1` text format. Lines are whitespace-separated,
    /// order-insensitive after the header, duplicate covers are ignored.
    pub fn parse_text(input: &str) -> Result<Poset, PosetError> {
        let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some("poset v1") => {}
            _ => return Err(PosetError::Parse("expected header line `poset v1`".into())),
        }
        let mut n: Option<usize> = None;
        let mut covers = Vec::new();
        for line in lines {
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok.as_slice() {
                ["n", v] => {
                    let v: usize = v.parse().map_err(|_| PosetError::Parse(format!("bad size `{v}`")))?;
                    if n.replace(v).is_some() {
                        return Err(PosetError::Parse("duplicate `n` line".into()));
                    }
                }
                ["cover", a, b] => {
                    let a: usize = a.parse().map_err(|_| PosetError::Parse(format!("bad label `{a}`")))?;
                    let b: usize = b.parse().map_err(|_| PosetError::Parse(format!("bad label `{b}`")))?;
                    if a == 0 || b == 0 {
                        return Err(PosetError::Parse("labels are 1-based".into()));
                    }
                    covers.push((a - 1, b - 1));
                }
                _ => return Err(PosetError::Parse(format!("unrecognized line `{line}`"))),
            }
        }
        let n = n.ok_or_else(|| PosetError::Parse("missing `n` line".into()))?;
        Poset::from_covers(n, &covers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub width: usize,
    pub height: usize,
    pub num_minimal: usize,
    pub num_maximal: usize,
    pub ordered_forest: bool,
    pub series_parallel: bool,
}

pub fn mask_full(n: usize) -> Mask {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

pub fn iter_mask(m: Mask) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if m == 0 { None } else { Some((m.trailing_zeros() as usize, m)) },
        |&(_, rest)| {
            let rest = rest & (rest - 1);
            if rest == 0 {
                None
            } else {
                Some((rest.trailing_zeros() as usize, rest))
            }
        },
    )
    .map(|(x, _)| x)
}

fn transitive_close(up: &mut [Mask]) {
    let n = up.len();
    for k in 0..n {
        for x in 0..n {
            if up[x] >> k & 1 != 0 {
                up[x] |= up[k];
            }
        }
    }
}

/// Some linear order consistent with the poset (smallest-element-first).
pub fn topo_order(p: &Poset) -> Vec<usize> {
    let mut placed: Mask = 0;
    let mut order = Vec::with_capacity(p.n());
    while order.len() < p.n() {
        let x = (0..p.n())
            .find(|&x| placed >> x & 1 == 0 && p.downset(x) & !placed == 0)
            .expect("poset has no cycles");
        order.push(x);
        placed |= 1 << x;
    }
    order
}

/// Connected components of the graph on `iter_mask(s)` under `adj`.
fn components(s: Mask, adj: impl Fn(usize, usize) -> bool) -> Vec<Mask> {
    let mut left = s;
    let mut comps = Vec::new();
    while left != 0 {
        let seed = left.trailing_zeros() as usize;
        let mut comp: Mask = 1 << seed;
        let mut frontier = vec![seed];
        while let Some(x) = frontier.pop() {
            for y in iter_mask(left & !comp) {
                if adj(x, y) {
                    comp |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        comps.push(comp);
        left &= !comp;
    }
    comps
}

/// Visit every labeled poset on `0..n` exactly once, by extending posets on
/// `0..m` with element `m`: choose a down-closed set `d` below `m` and an
/// up-closed set `u` above it; the pair is admissible only when `x < y`
/// already holds for every `x` in `d`, `y` in `u` (otherwise the closure
/// would add relations between old elements and the base poset would be
/// generated twice).
pub fn for_each_poset(n: usize, mut f: impl FnMut(&Poset)) {
    fn rec(n: usize, m: usize, up: &mut Vec<Mask>, down: &mut Vec<Mask>, f: &mut impl FnMut(&Poset)) {
        if m == n {
            f(&Poset { n, up: up.clone(), down: down.clone() });
            return;
        }
        let prev = mask_full(m);
        for d in 0..=prev {
            // d must be down-closed
            if iter_mask(d).any(|x| down[x] & !d != 0) {
                continue;
            }
            // u ranges over up-closed subsets of the complement of d
            let rest = prev & !d;
            let mut u = rest;
            loop {
                let ok = iter_mask(u).all(|y| up[y] & !u == 0)
                    && iter_mask(d).all(|x| up[x] & u == u);
                if ok {
                    for x in iter_mask(d) {
                        up[x] |= 1 << m;
                    }
                    for y in iter_mask(u) {
                        down[y] |= 1 << m;
                    }
                    up.push(u);
                    down.push(d);
                    rec(n, m + 1, up, down, f);
                    up.pop();
                    down.pop();
                    for x in iter_mask(d) {
                        up[x] &= !(1 << m);
                    }
                    for y in iter_mask(u) {
                        down[y] &= !(1 << m);
                    }
                }
                if u == 0 {
                    break;
                }
                u = (u - 1) & rest;
            }
        }
    }
    let mut up = Vec::new();
    let mut down = Vec::new();
    rec(n, 0, &mut up, &mut down, &mut f);
}

pub const DEFAULT_ENUM_CAP: usize = 6;

/// Collect all labeled posets on `0..n`; refuses sizes beyond `cap` since the
/// count grows super-exponentially (130023 already at n = 6).
pub fn enumerate_posets(n: usize, cap: usize) -> Result<Vec<Poset>, PosetError> {
    if n > cap {
        return Err(PosetError::CapExceeded(n, cap));
    }
    let mut v = Vec::new();
    for_each_poset(n, |p| v.push(p.clone()));
    Ok(v)
}

/// Deterministic random poset: orient pairs along a hidden random total order
/// and keep each with probability `density`, then close transitively.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Result<Poset, PosetError> {
    if n > MAX_ELEMENTS {
        return Err(PosetError::CapExceeded(n, MAX_ELEMENTS));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                covers.push((order[i], order[j]));
            }
        }
    }
    Poset::from_covers(n, &covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_axioms() {
        let p = Poset::from_covers(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert!(Poset::from_covers(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn stats_on_diamond() {
        let p = Poset::diamond();
        assert_eq!(p.ell(0), 1);
        assert_eq!(p.b(0), 4);
        assert_eq!(p.b(1), 2);
        assert_eq!(p.interval_count(0, 3).unwrap(), 2);
        assert_eq!(p.width(), 2);
        assert_eq!(p.height(), 3);
        assert!(!p.is_ordered_forest());
        assert!(p.is_series_parallel());
    }

    #[test]
    fn duality_is_involutive() {
        for covers in [vec![(0usize, 1usize), (2, 1)], vec![(0, 1), (0, 2), (3, 2)]] {
            let p = Poset::from_covers(4, &covers).unwrap();
            assert_eq!(p.dual().dual(), p);
        }
    }

    #[test]
    fn combinators() {
        let c2 = Poset::chain(2);
        let a2 = Poset::antichain(2);
        let s = c2.disjoint_sum(&a2).unwrap();
        assert_eq!(s.n(), 4);
        assert!(s.lt(0, 1) && s.incomparable(2, 3) && s.incomparable(0, 2));
        let l = c2.linear_sum(&a2).unwrap();
        assert!(l.lt(0, 2) && l.lt(1, 3) && l.incomparable(2, 3));
        let pr = c2.product(&c2).unwrap();
        // product of two 2-chains is the diamond up to relabeling
        assert_eq!(pr.width(), 2);
        assert_eq!(pr.height(), 3);
        assert!(pr.is_series_parallel());
    }

    #[test]
    fn restriction_relabels() {
        let p = Poset::from_covers(4, &[(0, 2), (2, 3)]).unwrap();
        let q = p.restrict(0b1101); // keep 0,2,3 -> relabel 0,1,2
        assert_eq!(q.n(), 3);
        assert!(q.lt(0, 1) && q.lt(1, 2) && q.lt(0, 2));
    }

    #[test]
    fn permutation_poset_shape() {
        // 2413 gives the N-shaped poset: 0<1, 0<3, 2<3
        let p = Poset::from_permutation(&[2, 4, 1, 3]).unwrap();
        assert_eq!(p.relation_pairs(), vec![(0, 1), (0, 3), (2, 3)]);
        assert!(!p.is_series_parallel());
        // the identity permutation gives a chain
        assert_eq!(Poset::from_permutation(&[1, 2, 3]).unwrap(), Poset::chain(3));
    }

    #[test]
    fn labeled_poset_counts() {
        // 1, 1, 3, 19, 219, 4231 labeled posets on 0..n
        let mut counts = Vec::new();
        for n in 0..=5 {
            let mut c = 0usize;
            for_each_poset(n, |_| c += 1);
            counts.push(c);
        }
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
        assert!(enumerate_posets(7, DEFAULT_ENUM_CAP).is_err());
    }

    #[test]
    fn natural_relabeling_works() {
        for_each_poset(4, |p| {
            let (q, map) = p.natural_relabeling();
            assert!(q.is_naturally_labeled());
            for (x, y) in p.relation_pairs() {
                assert!(q.lt(map[x], map[y]));
            }
            assert_eq!(q.relation_pairs().len(), p.relation_pairs().len());
        });
    }

    #[test]
    fn text_round_trip() {
        let p = Poset::from_covers(5, &[(0, 1), (1, 4), (2, 4)]).unwrap();
        let q = Poset::parse_text(&p.to_text()).unwrap();
        assert_eq!(p, q);
        let dup = "poset v1\nn 3\ncover 1 2\ncover 1 2\ncover 2 3\n";
        assert_eq!(Poset::parse_text(dup).unwrap(), Poset::chain(3));
        assert!(Poset::parse_text("n 3\n").is_err());
    }

    #[test]
    fn random_poset_is_deterministic() {
        let a = random_poset(6, 0.4, 42).unwrap();
        let b = random_poset(6, 0.4, 42).unwrap();
        assert_eq!(a, b);
        // and different seeds eventually differ
        assert!((0..20).any(|s| random_poset(6, 0.4, s).unwrap() != a));
    }
}
