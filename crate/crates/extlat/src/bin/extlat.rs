//! Command-line front end: exact counts, dynamics, witness censuses,
//! restricted-extension decisions, and the verification lab.
//!
//! Exit codes: 0 on success, 1 when a theorem-status check is violated,
//! 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use extlat::counting::{
    count_extensions, lex_min_extension, order_polynomial, q_order_polynomial,
};
use extlat::dynamics::{
    evacuate, jump_generators, orbits, promote, restricted_generators, tau_generators, demote,
    Generator, DEFAULT_ORBIT_CAP,
};
use extlat::injections::{eta, ks_scaled_witness, xi, zeta, WitnessReport};
use extlat::lab::{
    self, classes::comparability_class_check, reports_to_csv, shepp::shepp_audit, CheckReport,
    CheckStatus, SweepParams, CSV_HEADER,
};
use extlat::poset::{mask_full, Poset};
use extlat::restricted::{
    normalize_spec, restricted_find, uniqueness_decide, vanishing_decide, NormalizeOutcome,
    RestrictionSpec,
};
use extlat::Word;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "extlat", version, about = "exact computations on linear extensions of posets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format: text, json, or csv (csv only for report-shaped output)
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Raise the exhaustive state-space caps (10x the audit lattice cap)
    #[arg(long, global = true)]
    slow: bool,
}

#[derive(Args, Clone)]
struct Source {
    /// Poset file in the `poset v1` text format
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Built-in family: chain:N, antichain:N, diamond, perm:SIGMA,
    /// tree:PARENTS (PARENTS lists each element's parent label, 0 for roots;
    /// parents must precede children)
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of linear extensions e(P)
    Count(Source),
    /// Order polynomial value Omega(P,t)
    Omega {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        t: u64,
    },
    /// q-analogue of the order polynomial at t, as a polynomial in q
    Qomega {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        t: u64,
        /// Truncate the output polynomial to this degree
        #[arg(long)]
        q_degree: Option<usize>,
    },
    /// Apply promotion to an extension (default: the lexicographically least)
    Promote {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: Option<String>,
    },
    /// Apply demotion, the inverse of promotion
    Demote {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: Option<String>,
    },
    /// Apply evacuation (an involution)
    Evacuate {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        word: Option<String>,
    },
    /// Orbit decomposition of the extensions under a generator group
    Orbit {
        #[command(flatten)]
        src: Source,
        /// Group: tau (adjacent swaps), restricted (fixing positions), jump
        #[arg(long, default_value = "tau")]
        group: String,
        /// Fixed positions for the restricted/jump groups, e.g. 2,4
        #[arg(long, default_value = "")]
        positions: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// Witness census for an injection: xi, zeta, eta, or ks
    Witness {
        #[command(flatten)]
        src: Source,
        /// Which census: xi (sorting), zeta (order maps), eta (permutation
        /// pairs; needs --family perm:...), ks (scaled refinement)
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 2)]
        t: u64,
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// How many witness samples to record
        #[arg(long, default_value_t = 5)]
        limit: usize,
    },
    /// Decide whether extensions with the given pinned positions exist
    Decide {
        #[command(flatten)]
        src: Source,
        /// Pinned elements (1-based labels), e.g. 1,3
        #[arg(long)]
        u: String,
        /// Their positions, e.g. 2,4
        #[arg(long)]
        a: String,
    },
    /// Construct a pinned extension when one exists
    Find {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        u: String,
        #[arg(long)]
        a: String,
    },
    /// Decide whether the pinned extension is unique
    Unique {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        u: String,
        #[arg(long)]
        a: String,
        /// Extension to test (default: the constructed one)
        #[arg(long)]
        word: Option<String>,
    },
    /// Run one registered check against one instance
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 5)]
        t_max: u64,
    },
    /// Run one check over all labeled posets up to n-max
    Sweep {
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        t_max: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep this many seeded random posets of size n-max instead of the
        /// exhaustive family
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
    /// List the registered checks
    Checks,
    /// Audit the twisted product lattice behind the correlation proofs
    Audit {
        #[command(flatten)]
        src: Source,
        /// Elements of the Y block (1-based labels), e.g. 1,2; rest form Z
        #[arg(long, default_value = "")]
        y: String,
        #[arg(long, default_value_t = 2)]
        t: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Group posets by comparability graph and verify invariance of e and Omega
    Classes {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        t_max: u64,
    },
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| part.trim().parse::<usize>().map_err(|e| format!("bad number `{part}`: {e}")))
        .collect()
}

/// Parse a permutation given either as digits (`2413`) or comma-separated.
fn parse_perm(s: &str) -> Result<Vec<usize>, String> {
    let vals = if s.contains(',') {
        parse_usize_list(s)?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or(format!("bad digit `{c}`")))
            .collect::<Result<Vec<_>, _>>()?
    };
    let n = vals.len();
    let mut seen = vec![false; n + 1];
    for &v in &vals {
        if v == 0 || v > n || seen[v] {
            return Err(format!("`{s}` is not a permutation of 1..{n}"));
        }
        seen[v] = true;
    }
    Ok(vals)
}

impl Source {
    fn load(&self) -> Result<Poset, String> {
        match (&self.poset, &self.family) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                Poset::parse_text(&text).map_err(|e| e.to_string())
            }
            (None, Some(spec)) => Self::family(spec),
            _ => Err("give exactly one of --poset or --family".into()),
        }
    }

    fn family(spec: &str) -> Result<Poset, String> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        match kind {
            "chain" => Ok(Poset::chain(rest.parse().map_err(|e| format!("chain size: {e}"))?)),
            "antichain" => {
                Ok(Poset::antichain(rest.parse().map_err(|e| format!("antichain size: {e}"))?))
            }
            "diamond" => Ok(Poset::diamond()),
            "perm" => Poset::from_permutation(&parse_perm(rest)?).map_err(|e| e.to_string()),
            "tree" => {
                let parents = parse_usize_list(rest)?;
                let mut covers = Vec::new();
                for (i, &par) in parents.iter().enumerate() {
                    if par == 0 {
                        continue;
                    }
                    if par > i {
                        return Err(format!(
                            "tree parent {par} of element {} must precede it",
                            i + 1
                        ));
                    }
                    covers.push((par - 1, i));
                }
                Poset::from_covers(parents.len(), &covers).map_err(|e| e.to_string())
            }
            other => Err(format!("unknown family `{other}`")),
        }
    }

    /// For checks that need the permutation itself, not just its poset.
    fn perm(&self) -> Option<Vec<usize>> {
        let spec = self.family.as_deref()?;
        let rest = spec.strip_prefix("perm:")?;
        parse_perm(rest).ok()
    }
}

/// Words are written as 1-based labels in value order, e.g. `2,1,3`.
fn parse_word(p: &Poset, s: &str) -> Result<Word, String> {
    let labels = parse_usize_list(s)?;
    let n = p.n();
    if labels.len() != n {
        return Err(format!("word has {} entries, poset has {n}", labels.len()));
    }
    let word: Word = labels
        .iter()
        .map(|&l| {
            if l >= 1 && l <= n {
                Ok(l - 1)
            } else {
                Err(format!("label {l} out of range 1..{n}"))
            }
        })
        .collect::<Result<_, _>>()?;
    if !extlat::counting::is_linear_extension(p, &word) {
        return Err("word is not a linear extension of the poset".into());
    }
    Ok(word)
}

fn show_word(word: &Word) -> String {
    word.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn input_word(p: &Poset, word: &Option<String>) -> Result<Word, String> {
    match word {
        Some(s) => parse_word(p, s),
        None => Ok(lex_min_extension(p)),
    }
}

fn print_reports(reports: &[CheckReport], format: &str) {
    match format {
        "json" => println!("{}", serde_json::to_string_pretty(reports).unwrap()),
        "csv" => print!("{}", reports_to_csv(reports)),
        _ => {
            for r in reports {
                println!(
                    "[{}] {} lhs={} rhs={} holds={}{}",
                    r.check_id,
                    r.instance,
                    r.lhs,
                    r.rhs,
                    r.holds,
                    if r.equality { " (equality)" } else { "" }
                );
            }
        }
    }
}

fn print_witness(report: &WitnessReport, format: &str) {
    if format == "json" {
        println!("{}", serde_json::to_string_pretty(report).unwrap());
    } else {
        println!(
            "total={} witnesses={} formula={} matches={}",
            report.total, report.witnesses, report.formula, report.matches
        );
        for s in &report.samples {
            println!("  witness {s}");
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format.as_str();
    let slow = cli.slow;
    match cli.cmd {
        Cmd::Count(src) => {
            let p = src.load()?;
            let e = count_extensions(&p);
            if format == "json" {
                println!("{}", json!({"n": p.n(), "e": e.to_string()}));
            } else {
                println!("{e}");
            }
        }
        Cmd::Omega { src, t } => {
            let p = src.load()?;
            let v = order_polynomial(&p, t);
            if format == "json" {
                println!("{}", json!({"t": t, "omega": v.to_string()}));
            } else {
                println!("{v}");
            }
        }
        Cmd::Qomega { src, t, q_degree } => {
            let p = src.load()?;
            let mut q = q_order_polynomial(&p, t);
            if let Some(d) = q_degree {
                q = extlat::qpoly::QPoly::from_coeffs(
                    q.coeffs().iter().take(d + 1).cloned().collect(),
                );
            }
            if format == "json" {
                let coeffs: Vec<String> = q.coeffs().iter().map(|c| c.to_string()).collect();
                println!("{}", json!({"t": t, "coeffs": coeffs}));
            } else {
                println!("{}", q.to_string_in("q"));
            }
        }
        Cmd::Promote { src, word } => {
            let p = src.load()?;
            let w = input_word(&p, &word)?;
            println!("{}", show_word(&promote(&p, &w)));
        }
        Cmd::Demote { src, word } => {
            let p = src.load()?;
            let w = input_word(&p, &word)?;
            println!("{}", show_word(&demote(&p, &w)));
        }
        Cmd::Evacuate { src, word } => {
            let p = src.load()?;
            let w = input_word(&p, &word)?;
            println!("{}", show_word(&evacuate(&p, &w)));
        }
        Cmd::Orbit { src, group, positions, cap } => {
            let p = src.load()?;
            let n = p.n();
            let a = parse_usize_list(&positions)?;
            let gens: Vec<Generator> = match group.as_str() {
                "tau" => tau_generators(n),
                "restricted" => restricted_generators(n, &a),
                "jump" => jump_generators(n, &a),
                other => return Err(format!("unknown group `{other}`")),
            };
            // seed with every extension honoring the pins so every orbit is seen
            let mut seeds: Vec<Word> = Vec::new();
            extlat::counting::for_each_extension(&p, |w| {
                if a.is_empty() || group == "tau" {
                    seeds.push(w.clone());
                }
            });
            if seeds.is_empty() || (!a.is_empty() && group != "tau") {
                seeds.clear();
                extlat::counting::for_each_extension(&p, |w| seeds.push(w.clone()));
            }
            let report = orbits(&p, &seeds, &gens, cap).map_err(|e| e.to_string())?;
            if format == "json" {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "total={} orbits={} sizes={:?} transitive={}",
                    report.total,
                    report.orbit_sizes.len(),
                    report.orbit_sizes,
                    report.transitive
                );
            }
        }
        Cmd::Witness { src, kind, t, k, limit } => {
            let report = match kind.as_str() {
                "xi" => xi(&src.load()?, limit),
                "zeta" => zeta(&src.load()?, t, limit),
                "ks" => ks_scaled_witness(&src.load()?, t, k, limit),
                "eta" => {
                    let sigma = src
                        .perm()
                        .ok_or("eta needs a permutation instance: --family perm:...")?;
                    eta(&sigma, limit).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown witness kind `{other}`")),
            };
            print_witness(&report, format);
            if !report.matches {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Decide { src, u, a } => {
            let p = src.load()?;
            let spec = parse_spec(&p, &u, &a)?;
            let exists = vanishing_decide(&p, &spec).map_err(|e| e.to_string())?;
            let normalized = normalize_spec(&p, &spec).map_err(|e| e.to_string())?;
            let norm_desc = match &normalized {
                NormalizeOutcome::Normalized { u, a, .. } => {
                    format!(
                        "normalized u={:?} a={a:?}",
                        u.iter().map(|x| x + 1).collect::<Vec<_>>()
                    )
                }
                NormalizeOutcome::Infeasible(reason) => format!("infeasible: {reason:?}"),
            };
            if format == "json" {
                println!("{}", json!({"exists": exists, "normalization": norm_desc}));
            } else {
                println!("exists={exists} ({norm_desc})");
            }
        }
        Cmd::Find { src, u, a } => {
            let p = src.load()?;
            let spec = parse_spec(&p, &u, &a)?;
            match restricted_find(&p, &spec).map_err(|e| e.to_string())? {
                Some((word, steps)) => {
                    if format == "json" {
                        println!("{}", json!({"word": show_word(&word), "steps": steps}));
                    } else {
                        println!("{} (steps={steps})", show_word(&word));
                    }
                }
                None => println!("none"),
            }
        }
        Cmd::Unique { src, u, a, word } => {
            let p = src.load()?;
            let spec = parse_spec(&p, &u, &a)?;
            let f = match word {
                Some(s) => parse_word(&p, &s)?,
                None => restricted_find(&p, &spec)
                    .map_err(|e| e.to_string())?
                    .ok_or("no extension satisfies the pins")?
                    .0,
            };
            let unique = uniqueness_decide(&p, &spec, &f).map_err(|e| e.to_string())?;
            if format == "json" {
                println!("{}", json!({"word": show_word(&f), "unique": unique}));
            } else {
                println!("unique={unique} (word={})", show_word(&f));
            }
        }
        Cmd::Verify { src, check, t_max } => {
            let def = lab::find_check(&check).map_err(|e| e.to_string())?;
            let reports = match check.as_str() {
                "MIXED-SID" => {
                    let sigma = src
                        .perm()
                        .ok_or("MIXED-SID needs a permutation instance: --family perm:...")?;
                    // pair sigma with its reverse, whose permutation poset
                    // has the complementary comparabilities
                    let pi: Vec<usize> = sigma.iter().rev().copied().collect();
                    lab::checks::check_mixed_sid(&sigma, &pi).map_err(|e| e.to_string())?
                }
                "SID" => match src.perm() {
                    Some(sigma) => lab::checks::check_sid_perm(&sigma).map_err(|e| e.to_string())?,
                    None => lab::checks::check_sid_pairs(&src.load()?),
                },
                _ => lab::checks::run_check(&check, &src.load()?, t_max)
                    .map_err(|e| e.to_string())?,
            };
            print_reports(&reports, format);
            let violated = reports.iter().any(|r| !r.holds);
            if violated && def.status == CheckStatus::Theorem {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Sweep { check, n_max, t_max, jobs, seed, random, density } => {
            let params = SweepParams {
                n_max,
                t_max,
                jobs,
                seed,
                random: random.map(|count| (count, density)),
            };
            let summary = lab::sweep(&check, params).map_err(|e| e.to_string())?;
            match format {
                "json" => println!("{}", serde_json::to_string_pretty(&summary).unwrap()),
                "csv" => {
                    println!("{CSV_HEADER}");
                    for v in &summary.violations {
                        println!("{}", v.csv_row());
                    }
                }
                _ => {
                    println!(
                        "check={} status={:?} instances={} violations={}",
                        summary.check_id,
                        summary.status,
                        summary.instances,
                        summary.violations.len()
                    );
                    for v in summary.violations.iter().take(20) {
                        println!("  VIOLATION {} lhs={} rhs={}", v.instance, v.lhs, v.rhs);
                    }
                }
            }
            if !summary.violations.is_empty() && summary.status == CheckStatus::Theorem {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Checks => {
            for def in lab::registry() {
                println!("{:<12} {:<11} {}", def.id, format!("{:?}", def.status), def.summary);
            }
        }
        Cmd::Audit { src, y, t, samples, seed } => {
            let p = src.load()?;
            let labels = parse_usize_list(&y)?;
            let mut y_mask = 0u64;
            for l in labels {
                if l == 0 || l > p.n() {
                    return Err(format!("label {l} out of range"));
                }
                y_mask |= 1 << (l - 1);
            }
            if y_mask == 0 {
                y_mask = mask_full(p.n());
            }
            let cap = extlat::state_cap(if slow { 1_000_000 } else { 100_000 });
            let report =
                shepp_audit(&p, y_mask, t, samples, seed, cap).map_err(|e| e.to_string())?;
            if format == "json" {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "lattice={} exhaustive={} pairs={} triples={} mu+={} ok={}",
                    report.lattice_size,
                    report.exhaustive,
                    report.pairs_checked,
                    report.triples_checked,
                    report.mu_positive,
                    report.ok
                );
                for f in &report.failures {
                    println!("  FAILURE {f}");
                }
            }
            if !report.ok {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Classes { n, t_max } => {
            let summary = comparability_class_check(n, t_max).map_err(|e| e.to_string())?;
            if format == "json" {
                println!("{}", serde_json::to_string_pretty(&summary).unwrap());
            } else {
                println!(
                    "n={} posets={} classes={} consistent={}",
                    summary.n, summary.posets, summary.classes, summary.consistent
                );
            }
            if !summary.consistent {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_spec(p: &Poset, u: &str, a: &str) -> Result<RestrictionSpec, String> {
    let labels = parse_usize_list(u)?;
    let n = p.n();
    let u: Vec<usize> = labels
        .iter()
        .map(|&l| {
            if l >= 1 && l <= n {
                Ok(l - 1)
            } else {
                Err(format!("label {l} out of range 1..{n}"))
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(RestrictionSpec { u, a: parse_usize_list(a)? })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
