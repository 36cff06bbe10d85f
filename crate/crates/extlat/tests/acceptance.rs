//! Acceptance suite: ten end-to-end criteria, each printing a single
//! `ACCEPTANCE <k> <name>: PASS/FAIL` line (run with `-- --nocapture` to see
//! the lines). Every criterion is exhaustive over its stated family and uses
//! exact big-integer arithmetic throughout.

use extlat::counting::{
    count_extensions, extensions, factorial, order_polynomial, restricted_count, Count,
};
use extlat::dynamics::{
    apply_generator, demote, evacuate, jump_generators, orbits, promote, promotion_chain,
    restricted_generators, tau_generators, Generator, DEFAULT_ORBIT_CAP,
};
use extlat::injections::{eta, op_forward, op_inverse, xi, zeta};
use extlat::lab::{self, checks, shepp, CheckStatus, SweepParams};
use extlat::poset::{enumerate_posets, iter_mask, Mask, Poset};
use extlat::restricted::{restricted_find, uniqueness_decide, vanishing_decide, RestrictionSpec};
use extlat::{values_to_word, word_to_values, Word};
use num_traits::{One, Zero};
use std::collections::HashSet;

fn report<F: FnOnce() + std::panic::UnwindSafe>(num: usize, name: &str, f: F) {
    let result = std::panic::catch_unwind(f);
    match &result {
        Ok(()) => println!("ACCEPTANCE {num} {name}: PASS"),
        Err(_) => println!("ACCEPTANCE {num} {name}: FAIL"),
    }
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

fn all_posets(n_max: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(enumerate_posets(n, n_max).expect("within cap"));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    fn rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(cur, k + 1, out);
            cur.swap(k, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn standardize(vals: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = vals.to_vec();
    sorted.sort_unstable();
    vals.iter().map(|v| sorted.iter().position(|s| s == v).unwrap() + 1).collect()
}

/// The one-element-below-an-antichain poset `C_1 (+) A_{n-1}`.
fn bottom_plus_antichain(n: usize) -> Poset {
    let covers: Vec<(usize, usize)> = (1..n).map(|x| (0, x)).collect();
    Poset::from_covers(n, &covers).unwrap()
}

#[test]
fn criterion_01_closed_form_counts() {
    report(1, "closed-form counts", || {
        for n in 1..=10usize {
            assert_eq!(count_extensions(&Poset::antichain(n)), factorial(n), "e(A_{n})");
            assert_eq!(count_extensions(&Poset::chain(n)), Count::one(), "e(C_{n})");
        }
        // Omega(C_1 (+) A_4, t) = (6t^5 + 15t^4 + 10t^3 - t) / 30
        let p = bottom_plus_antichain(5);
        for t in 1..=10u64 {
            let tb = Count::from(t);
            let numerator = Count::from(6u32) * tb.pow(5)
                + Count::from(15u32) * tb.pow(4)
                + Count::from(10u32) * tb.pow(3)
                - &tb;
            assert!((&numerator % Count::from(30u32)).is_zero());
            assert_eq!(order_polynomial(&p, t), numerator / Count::from(30u32), "t={t}");
        }
    });
}

#[test]
fn criterion_02_worked_example() {
    report(2, "order-map injection worked example", || {
        let p = Poset::antichain(7);
        // forward: f with values (2,4,1,6,3,7,5) and blocks {2,3,7},{4,6},{1,5}
        let fvals = vec![2, 4, 1, 6, 3, 7, 5];
        let f = values_to_word(&fvals);
        let beta = vec![vec![2, 3, 7], vec![4, 6], vec![1, 5]];
        let (g, sigma) = op_forward(&p, &f, &beta).unwrap();
        assert_eq!(sigma, vec![3, 2, 7, 4, 6, 1, 5]);
        // the forward image replays back to f
        let (hvals, blocks, in_image) = op_inverse(&p, &g, &sigma).unwrap();
        assert!(in_image);
        assert_eq!(hvals, fvals);
        assert_eq!(blocks.iter().map(|b| b.len()).collect::<Vec<_>>(), vec![3, 2, 2]);

        // inverse: sigma = (7,1,3,2,5,4,6) cut into class sizes (2,2,3); one
        // relation (0 < 1) makes the rearranged map fail to be an extension
        let p = Poset::from_covers(7, &[(0, 1)]).unwrap();
        let gvals = vec![1, 1, 2, 2, 3, 3, 3];
        let sigma2 = vec![7, 1, 3, 2, 5, 4, 6];
        let (hvals2, blocks2, in_image2) = op_inverse(&p, &gvals, &sigma2).unwrap();
        assert_eq!(blocks2, vec![vec![7, 1], vec![3, 2], vec![5, 4, 6]]);
        let sets: Vec<Vec<usize>> = blocks2
            .iter()
            .map(|b| {
                let mut s = b.clone();
                s.sort_unstable();
                s
            })
            .collect();
        assert_eq!(sets, vec![vec![1, 7], vec![2, 3], vec![4, 5, 6]]);
        let stds: Vec<Vec<usize>> = blocks2.iter().map(|b| standardize(b)).collect();
        assert_eq!(stds, vec![vec![2, 1], vec![2, 1], vec![2, 1, 3]]);
        assert_eq!(hvals2, vec![2, 1, 4, 3, 6, 5, 7]);
        // the antichain makes every map an extension, but the blocks were cut
        // against the natural order, so this pair is outside the image
        assert!(!in_image2);
    });
}

#[test]
fn criterion_03_witness_censuses() {
    report(3, "witness censuses match closed forms", || {
        for p in all_posets(5) {
            let r = xi(&p, 0);
            assert!(r.matches, "xi on {:?}: {} != {}", p.relation_pairs(), r.witnesses, r.formula);
        }
        for p in all_posets(4) {
            for t in 1..=3 {
                let r = zeta(&p, t, 0);
                assert!(r.matches, "zeta t={t}: {} != {}", r.witnesses, r.formula);
            }
        }
        for n in 1..=5 {
            for sigma in permutations(n) {
                let r = eta(&sigma, 0).unwrap();
                assert!(r.matches, "eta {sigma:?}: {} != {}", r.witnesses, r.formula);
            }
        }
    });
}

/// All prescriptions with at most two pinned elements forming a chain.
fn small_specs(p: &Poset) -> Vec<RestrictionSpec> {
    let n = p.n();
    let mut specs = Vec::new();
    for x in 0..n {
        for a1 in 1..=n {
            specs.push(RestrictionSpec { u: vec![x], a: vec![a1] });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !p.lt(x, y) {
                continue;
            }
            for a1 in 1..=n {
                for a2 in a1 + 1..=n {
                    specs.push(RestrictionSpec { u: vec![x, y], a: vec![a1, a2] });
                }
            }
        }
    }
    specs
}

fn brute_restricted(p: &Poset, spec: &RestrictionSpec) -> Vec<Word> {
    extensions(p)
        .into_iter()
        .filter(|w| {
            let vals = word_to_values(w);
            spec.u.iter().zip(&spec.a).all(|(&x, &a)| vals[x] == a)
        })
        .collect()
}

#[test]
fn criterion_04_deciders_match_brute_force() {
    report(4, "restricted deciders agree with brute force", || {
        for p in all_posets(5) {
            for spec in small_specs(&p) {
                let sols = brute_restricted(&p, &spec);
                assert_eq!(
                    restricted_count(&p, &spec.u, &spec.a),
                    Count::from(sols.len()),
                    "count on {:?} {:?}",
                    p.relation_pairs(),
                    spec
                );
                assert_eq!(vanishing_decide(&p, &spec).unwrap(), !sols.is_empty());
                match restricted_find(&p, &spec).unwrap() {
                    Some((w, _steps)) => {
                        assert!(sols.contains(&w), "found word must satisfy the spec");
                        assert_eq!(
                            uniqueness_decide(&p, &spec, &w).unwrap(),
                            sols.len() == 1,
                            "uniqueness on {:?} {:?}",
                            p.relation_pairs(),
                            spec
                        );
                    }
                    None => assert!(sols.is_empty()),
                }
            }
        }
    });
}

#[test]
fn criterion_05_orbit_structure() {
    report(5, "generator-group orbits", || {
        for p in all_posets(5) {
            let n = p.n();
            let exts = extensions(&p);
            // adjacent transpositions act transitively on all of E(P)
            let r = orbits(&p, &exts, &tau_generators(n), DEFAULT_ORBIT_CAP).unwrap();
            assert!(r.transitive, "tau orbit split on {:?}", p.relation_pairs());
            assert_eq!(r.total, exts.len());
            // jump transpositions act transitively on each pinned class
            for spec in small_specs(&p) {
                let seeds = brute_restricted(&p, &spec);
                if seeds.is_empty() {
                    continue;
                }
                let gens = jump_generators(n, &spec.a);
                let r = orbits(&p, &seeds, &gens, DEFAULT_ORBIT_CAP).unwrap();
                assert_eq!(r.total, seeds.len(), "jump group must preserve the class");
                assert!(
                    r.transitive,
                    "jump orbit split on {:?} {:?}",
                    p.relation_pairs(),
                    spec
                );
            }
        }
        // the restricted group is weaker: on C_3 + C_1 + C_1 with the chain
        // pinned at positions 2 and 4 it leaves two singleton orbits
        let p = Poset::from_covers(5, &[(0, 1), (1, 2)]).unwrap();
        let spec = RestrictionSpec { u: vec![0, 2], a: vec![2, 4] };
        let seeds = brute_restricted(&p, &spec);
        assert_eq!(seeds.len(), 2);
        let r = orbits(&p, &seeds, &restricted_generators(5, &spec.a), DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(r.orbit_sizes, vec![1, 1], "expected exactly 2 orbits");
        let r = orbits(&p, &seeds, &jump_generators(5, &spec.a), DEFAULT_ORBIT_CAP).unwrap();
        assert!(r.transitive, "the jump group repairs transitivity");
    });
}

#[test]
fn criterion_06_theorem_sweeps_are_clean() {
    report(6, "zero violations across all theorem checks", || {
        for def in lab::registry() {
            if def.status != CheckStatus::Theorem {
                continue;
            }
            // the mixed form sweeps all permutation pairs: quadratic in n!,
            // so its exhaustive scale is n <= 4
            let n_max = if def.id == "MIXED-SID" { 4 } else { 5 };
            let params = SweepParams { n_max, t_max: 5, jobs: 1, seed: 0, random: None };
            let s = lab::sweep(def.id, params).unwrap();
            assert!(s.instances > 0, "{} swept nothing", def.id);
            assert!(
                s.violations.is_empty(),
                "{}: {} violations, first: {:?}",
                def.id,
                s.violations.len(),
                s.violations.first()
            );
        }
    });
}

#[test]
fn criterion_07_equality_classifiers() {
    report(7, "equality classifiers", || {
        for p in all_posets(5) {
            // BW: equality iff ordered forest
            for r in checks::check_bw(&p) {
                assert!(r.holds);
                assert_eq!(r.equality, p.is_ordered_forest());
            }
            // OP-GEN: equality (at every t, equivalently at any t) iff antichain
            let antichain = p.is_antichain_set(p.all_mask());
            for r in checks::check_op_gen(&p, 5) {
                assert!(r.holds);
                assert_eq!(r.equality, antichain, "t-instance {}", r.instance);
            }
            // EHS: the minimal antichain always achieves equality; in general
            // equality holds exactly when the antichain meets every promotion
            // chain (so e.g. on a chain every singleton is an equality case)
            let e = count_extensions(&p);
            let exts = extensions(&p);
            for a in 1..=p.all_mask() {
                if !p.is_antichain_set(a) {
                    continue;
                }
                let total: Count = iter_mask(a).map(|y| count_extensions(&p.delete(y))).sum();
                assert!(total <= e);
                let eq = total == e;
                if a == p.minimals() {
                    assert!(eq, "minimal antichain must achieve equality");
                }
                let cuts = exts
                    .iter()
                    .all(|w| promotion_chain(&p, w).iter().any(|&c| a >> c & 1 == 1));
                assert_eq!(eq, cuts, "equality iff the antichain cuts every promotion chain");
            }
        }
        // SID: equality iff the permutation poset is series-parallel
        for n in 1..=5 {
            for sigma in permutations(n) {
                let p = Poset::from_permutation(&sigma).unwrap();
                let reports = checks::check_sid_perm(&sigma).unwrap();
                assert!(reports.iter().all(|r| r.holds));
                assert_eq!(reports[0].equality, p.is_series_parallel(), "sigma={sigma:?}");
            }
        }
    });
}

fn involution_tokens(n: usize) -> Vec<Generator> {
    let mut gens = Vec::new();
    for i in 1..n {
        gens.push(Generator::Tau(i));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            gens.push(Generator::TauPair(i, j));
        }
    }
    for j in 2..n {
        gens.push(Generator::Sigma(j));
    }
    gens
}

#[test]
fn criterion_08_dynamics_properties() {
    report(8, "promotion, evacuation, and deletion dynamics", || {
        for p in all_posets(5) {
            let n = p.n();
            let exts = extensions(&p);
            let tokens = involution_tokens(n);
            let mut image: HashSet<Word> = HashSet::new();
            for w in &exts {
                let up = promote(&p, w);
                image.insert(up.clone());
                assert_eq!(demote(&p, &up), *w, "demotion inverts promotion");
                assert_eq!(promote(&p, &demote(&p, w)), *w);
                assert_eq!(evacuate(&p, &evacuate(&p, w)), *w, "evacuation is an involution");
                for &g in &tokens {
                    let once = apply_generator(&p, w, g).unwrap();
                    assert_eq!(apply_generator(&p, &once, g).unwrap(), *w, "{g:?}");
                }
            }
            assert_eq!(image.len(), exts.len(), "promotion is a bijection");
            for y in 0..n {
                let through = exts.iter().filter(|w| promotion_chain(&p, w).contains(&y)).count();
                assert_eq!(
                    Count::from(through),
                    count_extensions(&p.delete(y)),
                    "promotion-chain census at y={y}"
                );
            }
        }
    });
}

#[test]
fn criterion_09_shepp_lattice_audit() {
    report(9, "twisted-lattice audit", || {
        let cap = 100_000usize;
        for p in all_posets(4) {
            let n = p.n();
            let boundary = {
                let mut t = 1u64;
                while ((t + 1) as usize).pow(n as u32) <= cap {
                    t += 1;
                }
                t
            };
            let mut ts: Vec<u64> = (1..=boundary.min(6)).collect();
            if boundary > 6 {
                ts.push(boundary);
            }
            for y_mask in 0..=p.all_mask() as Mask {
                for &t in &ts {
                    let r = shepp::shepp_audit(&p, y_mask, t, 200, 42, cap).unwrap();
                    assert!(
                        r.ok,
                        "audit failed on {:?} Y={:?} t={t}: {:?}",
                        p.relation_pairs(),
                        r.y_set,
                        r.failures
                    );
                    // with everything in Y the positive-measure count is the
                    // order polynomial itself
                    if y_mask == p.all_mask() {
                        assert_eq!(Count::from(r.mu_positive), order_polynomial(&p, t));
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_10_conjecture_sweeps_reproducible() {
    report(10, "conjecture sweeps: clean and bit-reproducible", || {
        for id in ["KS-MON", "GRAHAM", "KS-FKG", "OP-ANALYTIC", "MATCHING"] {
            let params = SweepParams { n_max: 5, t_max: 6, jobs: 1, seed: 17, random: None };
            let s1 = lab::sweep(id, params).unwrap();
            assert!(s1.instances > 0);
            assert!(s1.violations.is_empty(), "{id}: counterexample {:?}", s1.violations.first());
            let s2 = lab::sweep(id, SweepParams { jobs: 2, ..params }).unwrap();
            assert_eq!(
                serde_json::to_string(&s1).unwrap(),
                serde_json::to_string(&s2).unwrap(),
                "{id}: report differs across worker counts"
            );
        }
        // seeded random families replay bit-for-bit under the same seed
        let rp = SweepParams { n_max: 6, t_max: 4, jobs: 1, seed: 99, random: Some((25, 0.35)) };
        let r1 = lab::sweep("KS-MON", rp).unwrap();
        let r2 = lab::sweep("KS-MON", SweepParams { jobs: 2, ..rp }).unwrap();
        assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r2).unwrap());
        assert!(r1.violations.is_empty());
    });
}
