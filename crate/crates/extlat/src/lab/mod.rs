//! The verification lab: a registry of inequality checks (theorems,
//! conjectures, and conditional statements), exhaustive and randomized sweep
//! drivers, and structured report emission. Theorem checks failing is a
//! hard error for callers; conjecture sweeps merely report counterexamples.

pub mod checks;
pub mod classes;
pub mod matching;
pub mod shepp;

use crate::poset::{enumerate_posets, random_poset, Poset, PosetError};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Theorem,
    Conjecture,
    Conditional,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDef {
    pub id: &'static str,
    pub status: CheckStatus,
    pub summary: &'static str,
}

/// One verified instance of one inequality. `holds` includes the equality
/// classifier when the check predicts one: a report only holds when the
/// inequality is satisfied and equality occurs exactly when predicted.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub equality: bool,
}

impl CheckReport {
    pub fn csv_row(&self) -> String {
        let esc = |s: &str| {
            if s.contains(',') || s.contains('"') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        format!(
            "{},{},{},{},{},{}",
            esc(&self.check_id),
            esc(&self.instance),
            esc(&self.lhs),
            esc(&self.rhs),
            self.holds,
            self.equality
        )
    }
}

pub const CSV_HEADER: &str = "check_id,instance,lhs,rhs,holds,equality";

pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("check `{0}` needs a permutation instance; pass a perm family")]
    NeedsPermutation(String),
    #[error("state space of size {0} exceeds cap {1} (set EXTLAT_CAP to raise)")]
    CapExceeded(usize, usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub fn registry() -> &'static [CheckDef] {
    use CheckStatus::*;
    &[
        CheckDef { id: "BW", status: Theorem, summary: "e(P) * prod b(x) >= n!, equality iff ordered forest" },
        CheckDef { id: "OP-HP", status: Theorem, summary: "hook-product lower bounds for the order polynomial (maximal and dual minimal forms)" },
        CheckDef { id: "OP-HP-STEP", status: Theorem, summary: "one-step deletion bound Omega(P,t)*b(x) >= (t+1)*Omega(P-x,t) for minimal x" },
        CheckDef { id: "OP-GEN", status: Theorem, summary: "Omega(P,t)*n! >= e(P)*t^n, equality iff antichain" },
        CheckDef { id: "SHEPP-CORR", status: Theorem, summary: "order-polynomial deletion correlation: positive for two minimal elements, reversed for a min/max pair without a covering relation" },
        CheckDef { id: "E-CORR", status: Theorem, summary: "extension-count deletion correlation with factor n/(n-1)" },
        CheckDef { id: "LOGC", status: Theorem, summary: "log-concavity of t -> Omega(P,t), plain and with the strict factor 1 + (t+1)^-(n+1)" },
        CheckDef { id: "Q-LOGC", status: Theorem, summary: "coefficientwise log-concavity of the q-analogue" },
        CheckDef { id: "Q-CORR", status: Theorem, summary: "q-analogue deletion correlation at q in {1/2, 1, 2}" },
        CheckDef { id: "REINER", status: Theorem, summary: "P-partition series dominates the hook series coefficientwise" },
        CheckDef { id: "STANLEY", status: Theorem, summary: "log-concavity of position counts N(x,a), plain and with extra prescribed values" },
        CheckDef { id: "SID", status: Theorem, summary: "e(P_sigma)*e(P_sigma-reversed) >= n!, equality iff series-parallel; plus the k-common-chain generalization" },
        CheckDef { id: "MIXED-SID", status: Theorem, summary: "mixed extension counts: e_k(P,P') * e_k(Q,Q') >= n! * C(n,k)" },
        CheckDef { id: "EHS", status: Theorem, summary: "sum over an antichain of e(P-y) is at most e(P), equality at the minimal antichain" },
        CheckDef { id: "REV-WIDTH", status: Theorem, summary: "Omega(P,t)/t^width is weakly increasing in t" },
        CheckDef { id: "KS-LEMMA", status: Theorem, summary: "Omega(P,k)/Omega(P,t) <= Omega(P-x,k)/Omega(P-x,t) for minimal x, k <= t" },
        CheckDef { id: "KS-SCALED", status: Theorem, summary: "Omega(P,kt) <= k^n * Omega(P,t)" },
        CheckDef { id: "KS-MON", status: Conjecture, summary: "Omega(P,t)/t^n weakly decreasing in t" },
        CheckDef { id: "GRAHAM", status: Conjecture, summary: "log-concavity in a of the pinned-value counts Omega(P,t;x,a)" },
        CheckDef { id: "KS-FKG", status: Conjecture, summary: "some element deletion reverses the ratio bound with factor k/t" },
        CheckDef { id: "OP-ANALYTIC", status: Conditional, summary: "Omega(P,t) >= t^r * prod over non-maximal x of (t/b(x) + 1/2)" },
        CheckDef { id: "MATCHING", status: Conjecture, summary: "the flanked-position exchange graph has a matching saturating the outer side" },
    ]
}

pub fn find_check(id: &str) -> Result<&'static CheckDef, LabError> {
    registry().iter().find(|c| c.id == id).ok_or_else(|| LabError::UnknownCheck(id.to_string()))
}

/// Compact instance key for a poset (relation pairs over 0-based elements).
pub fn poset_sig(p: &Poset) -> String {
    let rels: Vec<String> = p.relation_pairs().iter().map(|(x, y)| format!("{x}<{y}")).collect();
    format!("n={};{}", p.n(), rels.join(","))
}

#[derive(Debug, Clone, Copy)]
pub struct SweepParams {
    pub n_max: usize,
    pub t_max: u64,
    pub jobs: usize,
    pub seed: u64,
    /// `Some((count, density))` sweeps seeded random posets of size `n_max`
    /// instead of the exhaustive family.
    pub random: Option<(usize, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub check_id: String,
    pub status: CheckStatus,
    pub instances: usize,
    pub violations: Vec<CheckReport>,
}

enum Task {
    Poset(Poset),
    Perm(Vec<usize>),
    PermPair(Vec<usize>, Vec<usize>),
}

fn run_task(check_id: &str, task: &Task, t_max: u64) -> Result<Vec<CheckReport>, LabError> {
    match task {
        Task::Poset(p) => checks::run_check(check_id, p, t_max),
        Task::Perm(sigma) => checks::check_sid_perm(sigma),
        Task::PermPair(sigma, pi) => checks::check_mixed_sid(sigma, pi),
    }
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

/// Run one check over every labeled poset up to `n_max` (or a seeded random
/// family; permutation-based checks sweep the symmetric groups instead).
/// Deterministic: results are ordered by enumeration index regardless of the
/// worker count.
pub fn sweep(check_id: &str, params: SweepParams) -> Result<SweepSummary, LabError> {
    let def = find_check(check_id)?;
    let tasks = sweep_tasks(check_id, &params)?;
    let run = |task: &Task| run_task(check_id, task, params.t_max);
    let results: Vec<Vec<CheckReport>> = if params.jobs <= 1 {
        tasks.iter().map(run).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().map(run).collect::<Result<_, _>>())?
    };
    let mut instances = 0;
    let mut violations = Vec::new();
    for reports in results {
        for r in reports {
            instances += 1;
            if !r.holds {
                violations.push(r);
            }
        }
    }
    Ok(SweepSummary { check_id: check_id.to_string(), status: def.status, instances, violations })
}

fn sweep_tasks(check_id: &str, params: &SweepParams) -> Result<Vec<Task>, LabError> {
    let mut tasks = Vec::new();
    match check_id {
        "MIXED-SID" => {
            for n in 1..=params.n_max {
                let perms = permutations(n);
                for sigma in &perms {
                    for pi in &perms {
                        tasks.push(Task::PermPair(sigma.clone(), pi.clone()));
                    }
                }
            }
        }
        "SID" => {
            for n in 1..=params.n_max {
                for sigma in permutations(n) {
                    tasks.push(Task::Perm(sigma));
                }
            }
            for p in sweep_posets(params)? {
                tasks.push(Task::Poset(p));
            }
        }
        _ => {
            for p in sweep_posets(params)? {
                tasks.push(Task::Poset(p));
            }
        }
    }
    Ok(tasks)
}

fn sweep_posets(params: &SweepParams) -> Result<Vec<Poset>, LabError> {
    match params.random {
        Some((count, density)) => (0..count)
            .map(|i| {
                random_poset(params.n_max, density, params.seed.wrapping_add(i as u64))
                    .map_err(LabError::from)
            })
            .collect(),
        None => {
            let mut all = Vec::new();
            for n in 1..=params.n_max {
                all.extend(enumerate_posets(n, params.n_max)?);
            }
            Ok(all)
        }
    }
}
