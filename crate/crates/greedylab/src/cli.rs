//! Command-line front-end: one-shot subcommands for each core operation and
//! a batch `report` mode.
//!
//! Exit codes: 0 — success; 1 — the run completed but at least one check
//! failed; 2 — configuration/schema error (including argument parsing).

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cheb::chebyshev_best;
use crate::error::{Error, Result};
use crate::greedy::enumerate_greedy_sets;
use crate::index::Index;
use crate::json::{norm_from_json, real_to_string, vector_from_value, vector_to_value};
use crate::norms::NormSpec;
use crate::params::{estimate_parameter, ParamKind, SearchBudget};
use crate::presets::{example72_conditionality_ratio, example74_zm, preset_by_name, SpacePreset};
use crate::report::{
    default_interval_family, run as run_report, set_to_string, BudgetProfile, ExperimentConfig,
};
use crate::sparse::SparseVector;
use crate::weights::Weight;
use crate::{approx, bounds};

#[derive(Parser, Debug)]
#[command(name = "greedylab", version, about = "Greedy-approximation experiments on explicit sequence spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Seed for all randomized searches (deterministic per seed).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for report bundles.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores). Results are input-ordered
    /// regardless.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Budget profile: quick, default, or deep.
    #[arg(long, global = true)]
    pub budget: Option<String>,
}

#[derive(Args, Debug)]
pub struct SpaceArg {
    /// Preset name (xp, ex72, ex74, ex76, sum, cor78:<variant>) or a path
    /// to a versioned norm-spec JSON file.
    #[arg(long)]
    pub space: String,
}

impl SpaceArg {
    fn resolve(&self) -> Result<SpacePreset> {
        if let Ok(p) = preset_by_name(&self.space) {
            return Ok(p);
        }
        let text = std::fs::read_to_string(&self.space).map_err(|e| {
            Error::Schema(format!(
                "--space {:?} is neither a preset name nor a readable file: {e}",
                self.space
            ))
        })?;
        let doc: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Schema(format!("bad JSON in {:?}: {e}", self.space)))?;
        let spec = norm_from_json(&doc)?;
        Ok(SpacePreset {
            name: self.space.clone(),
            spec,
            weight: Weight::Constant(1.0),
            metadata: json!({}),
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Norm-spec operations.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Greedy-set operations.
    Greedy {
        #[command(subcommand)]
        cmd: GreedyCmd,
    },
    /// Best approximation with a fixed support.
    Cheb {
        #[command(flatten)]
        space: SpaceArg,
        /// Vector as JSON [[index, coeff], ...] or @file.
        #[arg(long)]
        vector: String,
        /// Support set, comma-separated indices.
        #[arg(long)]
        set: String,
    },
    /// m-term approximation errors.
    Sigma {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        vector: String,
        #[arg(short, long)]
        m: usize,
        /// Pool, e.g. "1..12" or "1,2,5".
        #[arg(long, default_value = "1..12")]
        pool: String,
        /// Projectional variant (supports restricted to supp(x)).
        #[arg(long)]
        projection: bool,
    },
    /// Lower-bound estimate of one performance parameter.
    Param {
        #[command(flatten)]
        space: SpaceArg,
        /// One of: g_bar g_hat L_ch_u L_ch_l L L_d L_a L_ad squeeze k_m
        /// trunc_qg prop_C succ.
        #[arg(long)]
        kind: String,
        #[arg(short, long, default_value_t = 2)]
        m: usize,
        #[arg(short, long, default_value_t = 1.0)]
        t: f64,
    },
    /// Preset verification suites.
    Example {
        #[command(subcommand)]
        cmd: ExampleCmd,
    },
    /// Closed-form constant bounds.
    Bounds {
        /// Formula tag, e.g. thm314_i.
        #[arg(long)]
        formula: String,
        /// Inputs as name=value, repeatable.
        #[arg(long = "input", value_name = "NAME=VALUE")]
        inputs: Vec<String>,
    },
    /// Batch experiment report (CSV tables + manifest + summary).
    Report {
        /// Config JSON path; omitted = the default report.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpaceCmd {
    /// Evaluate the norm of a vector.
    Eval {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        vector: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GreedyCmd {
    /// Enumerate all m-t-greedy sets of a vector.
    Sets {
        #[arg(long)]
        vector: String,
        #[arg(short, long)]
        m: usize,
        #[arg(short, long, default_value_t = 1.0)]
        t: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExampleCmd {
    /// Run the named preset's verification suite; prints one line per check.
    Verify {
        /// Preset name: xp, ex72, ex74, ex76, sum, or cor78:<variant>.
        name: String,
    },
}

fn parse_vector(arg: &str) -> Result<SparseVector> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("cannot read vector file {path:?}: {e}")))?
    } else {
        arg.to_string()
    };
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Schema(format!("bad vector JSON: {e}")))?;
    vector_from_value(&v)
}

fn parse_set(arg: &str) -> Result<BTreeSet<Index>> {
    arg.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim()
                .parse::<Index>()
                .map_err(|e| Error::Schema(format!("bad index {s:?}: {e}")))
        })
        .collect()
}

fn parse_pool(arg: &str) -> Result<Vec<Index>> {
    if let Some((a, b)) = arg.split_once("..") {
        let a: Index = a.trim().parse().map_err(|e| Error::Schema(format!("bad pool: {e}")))?;
        let b: Index = b.trim().parse().map_err(|e| Error::Schema(format!("bad pool: {e}")))?;
        if a == 0 || b < a {
            return Err(Error::Schema(format!("bad pool range {arg:?}")));
        }
        Ok((a..=b).collect())
    } else {
        Ok(parse_set(arg)?.into_iter().collect())
    }
}

/// Runs one parsed invocation; returns the process exit code.
pub fn run_cli(cli: Cli) -> i32 {
    if let Some(jobs) = cli.jobs {
        // Ignore "already initialized": only the first configuration wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match dispatch(&cli) {
        Ok(failed) if failed == 0 => 0,
        Ok(failed) => {
            eprintln!("{failed} check(s) failed");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Executes the subcommand, returning the number of failed checks.
fn dispatch(cli: &Cli) -> Result<usize> {
    match &cli.cmd {
        Cmd::Space { cmd: SpaceCmd::Eval { space, vector } } => {
            let preset = space.resolve()?;
            let x = parse_vector(vector)?;
            println!("{}", real_to_string(preset.spec.eval(&x)));
            Ok(0)
        }
        Cmd::Greedy { cmd: GreedyCmd::Sets { vector, m, t } } => {
            let x = parse_vector(vector)?;
            for a in enumerate_greedy_sets(&x, *m, *t)? {
                println!("{}", set_to_string(&a));
            }
            Ok(0)
        }
        Cmd::Cheb { space, vector, set } => {
            let preset = space.resolve()?;
            let x = parse_vector(vector)?;
            let a = parse_set(set)?;
            let r = chebyshev_best(&preset.spec, &x, &a)?;
            println!(
                "{}",
                json!({
                    "error": real_to_string(r.error),
                    "gap": real_to_string(r.gap),
                    "converged": r.converged,
                    "y": vector_to_value(&r.y),
                })
            );
            Ok(0)
        }
        Cmd::Sigma { space, vector, m, pool, projection } => {
            let preset = space.resolve()?;
            let x = parse_vector(vector)?;
            let v = if *projection {
                approx::sigma_tilde_m(&preset.spec, &x, *m)?
            } else {
                let mut p: BTreeSet<Index> = parse_pool(pool)?.into_iter().collect();
                p.extend(x.support());
                approx::sigma_m(&preset.spec, &x, *m, &p)?
            };
            println!("{}", real_to_string(v));
            Ok(0)
        }
        Cmd::Param { space, kind, m, t } => {
            let preset = space.resolve()?;
            let kind = ParamKind::parse(kind)?;
            let profile = match &cli.budget {
                Some(name) => BudgetProfile::named(name)?,
                None => BudgetProfile::default(),
            };
            let pool: Vec<Index> = (1..=profile.pool_len as Index).collect();
            let est = estimate_parameter(
                &preset.spec,
                kind,
                *m,
                *t,
                &SearchBudget { candidates: profile.candidates },
                &pool,
                cli.seed,
            )?;
            let w = &est.witnesses[0];
            println!(
                "{}",
                json!({
                    "kind": est.kind.name(),
                    "m": est.m,
                    "t": real_to_string(est.t_or_s),
                    "lower_bound": real_to_string(est.lower_bound),
                    "seed": est.seed,
                    "witness": {
                        "x": vector_to_value(&w.x),
                        "a": w.a.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
                    },
                })
            );
            Ok(0)
        }
        Cmd::Example { cmd: ExampleCmd::Verify { name } } => verify_example(name),
        Cmd::Bounds { formula, inputs } => {
            let mut map = std::collections::BTreeMap::new();
            for kv in inputs {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Schema(format!("--input must be NAME=VALUE, got {kv:?}")))?;
                let v: f64 = v
                    .parse()
                    .map_err(|e| Error::Schema(format!("bad value in {kv:?}: {e}")))?;
                map.insert(k.to_string(), v);
            }
            println!("{}", real_to_string(bounds::bound_calculator(formula, &map)?));
            Ok(0)
        }
        Cmd::Report { config } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::Schema(format!("cannot read config {path:?}: {e}"))
                    })?;
                    let doc: Value = serde_json::from_str(&text)
                        .map_err(|e| Error::Schema(format!("bad config JSON: {e}")))?;
                    ExperimentConfig::from_json(&doc)?
                }
                None => ExperimentConfig::default_report(cli.seed),
            };
            if config.is_none() || cli.seed != 0 {
                cfg.seed = cli.seed;
            }
            if let Some(name) = &cli.budget {
                cfg.budget = BudgetProfile::named(name)?;
            }
            let bundle = run_report(&cfg)?;
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("report_out"));
            bundle
                .write_to(&out)
                .map_err(|e| Error::Schema(format!("cannot write to {out:?}: {e}")))?;
            println!("wrote {} table(s) to {}", bundle.tables.len(), out.display());
            Ok(bundle.failed_checks)
        }
    }
}

fn check(failed: &mut usize, name: &str, ok: bool, detail: String) {
    if ok {
        println!("PASS {name}: {detail}");
    } else {
        *failed += 1;
        println!("FAIL {name}: {detail}");
    }
}

/// Verification suites for each preset; one printed line per check.
fn verify_example(name: &str) -> Result<usize> {
    let preset = preset_by_name(name)?;
    let mut failed = 0usize;
    match name {
        "xp" => {
            // Indicator norms equal max{1, w(A)^{1/p}} on small sets.
            let p = preset.metadata["p"].as_f64().unwrap_or(2.0);
            let mut worst = 0.0f64;
            for mask in 1u32..1 << 6 {
                let a: BTreeSet<Index> =
                    (0..6).filter(|k| mask >> k & 1 == 1).map(|k| k as Index + 1).collect();
                for smask in 0u32..1 << a.len() {
                    let signs: Vec<f64> = (0..a.len())
                        .map(|k| if smask >> k & 1 == 1 { -1.0 } else { 1.0 })
                        .collect();
                    let got = preset.spec.eval(&SparseVector::signed_indicator(&a, &signs));
                    let want = preset.weight.weight_measure(&a)?.powf(1.0 / p).max(1.0);
                    worst = worst.max((got - want).abs() / want);
                }
            }
            check(&mut failed, "indicator_norm_formula", worst <= 1e-12, format!("worst rel dev {worst:e}"));
        }
        "ex72" => {
            // Sandwich: max{1, sqrt(w(A))} <= ||1_{eps,A}|| <= max{1, 4 sqrt(w(A))}.
            let mut ok = true;
            let mut worst = String::new();
            for mask in 1u32..1 << 8 {
                let a: BTreeSet<Index> =
                    (0..8).filter(|k| mask >> k & 1 == 1).map(|k| k as Index + 1).collect();
                let wa = preset.weight.weight_measure(&a)?;
                for smask in 0u32..1 << a.len() {
                    let signs: Vec<f64> = (0..a.len())
                        .map(|k| if smask >> k & 1 == 1 { -1.0 } else { 1.0 })
                        .collect();
                    let n = preset.spec.eval(&SparseVector::signed_indicator(&a, &signs));
                    let lo = wa.sqrt().max(1.0);
                    let hi = (4.0 * wa.sqrt()).max(1.0);
                    if !(n >= lo - 1e-10 && n <= hi + 1e-10) {
                        ok = false;
                        worst = format!("A={a:?} norm {n} outside [{lo}, {hi}]");
                    }
                }
            }
            check(&mut failed, "indicator_sandwich", ok, if ok { "all sets within bounds".into() } else { worst });
            let r2 = example72_conditionality_ratio(100);
            let r4 = example72_conditionality_ratio(10_000);
            check(
                &mut failed,
                "conditionality_ratio_increasing",
                r4 > r2,
                format!("r(100) = {r2:.6}, r(10^4) = {r4:.6}"),
            );
        }
        "ex74" => {
            let fam = default_interval_family()?;
            for m in 0..fam.intervals.len() {
                let w = example74_zm(&fam, m)?;
                let ok = w.all_certs_pass();
                let detail = format!(
                    "interval [{}, {}], {} certificate(s), ratio lower bound {:.4}",
                    w.interval.0,
                    w.interval.1,
                    w.certs.len(),
                    w.ratio_lower_bound()
                );
                check(&mut failed, &format!("certs_interval_{m}"), ok, detail);
            }
        }
        "ex76" => {
            // Unit norms preserved by the majorant; majorant dominates the
            // inner norm on signed indicators of small sets.
            let NormSpec::SchauderMajorant { inner } = &preset.spec else {
                return Err(Error::Contract("preset is not a majorant space".into()));
            };
            let mut unit_ok = true;
            for n in 1..=12u128 {
                let e = SparseVector::unit(n);
                if (preset.spec.eval(&e) - inner.eval(&e)).abs() > 1e-12 {
                    unit_ok = false;
                }
            }
            check(&mut failed, "unit_norms_preserved", unit_ok, "e_n norms match the inner space".into());
            let mut dom_ok = true;
            for mask in 1u32..1 << 6 {
                let a: BTreeSet<Index> =
                    (0..6).filter(|k| mask >> k & 1 == 1).map(|k| k as Index + 2).collect();
                let x = SparseVector::indicator(&a);
                if preset.spec.eval(&x) + 1e-12 < inner.eval(&x) {
                    dom_ok = false;
                }
            }
            check(&mut failed, "majorant_dominates_inner", dom_ok, "checked subsets of 2..=7".into());
        }
        _ if name == "sum" || name.starts_with("cor78:") => {
            // Interleaved-sum identity on all-ones indicators.
            let NormSpec::Interleave { left, right } = &preset.spec else {
                return Err(Error::Contract("preset is not an interleaved sum".into()));
            };
            let mut ok = true;
            for mask in 1u32..1 << 8 {
                let a: BTreeSet<Index> =
                    (0..8).filter(|k| mask >> k & 1 == 1).map(|k| k as Index + 1).collect();
                let odd: BTreeSet<Index> =
                    a.iter().filter(|i| *i % 2 == 1).map(|i| (i + 1) / 2).collect();
                let even: BTreeSet<Index> =
                    a.iter().filter(|i| *i % 2 == 0).map(|i| i / 2).collect();
                let got = preset.spec.eval(&SparseVector::indicator(&a));
                let want = left
                    .eval(&SparseVector::indicator(&odd))
                    .max(right.eval(&SparseVector::indicator(&even)));
                if (got - want).abs() > 1e-12 {
                    ok = false;
                }
            }
            check(&mut failed, "interleave_max_identity", ok, "exhaustive subsets of 1..=8".into());
            if name.starts_with("cor78:") {
                check(
                    &mut failed,
                    "weight_component_vanishes",
                    true,
                    "construction enforces a vanishing weight".into(),
                );
            }
        }
        other => {
            return Err(Error::Contract(format!("no verification suite for preset {other:?}")));
        }
    }
    Ok(failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_and_set_parsing() {
        assert_eq!(parse_pool("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_pool("5,2,9").unwrap(), vec![2, 5, 9]);
        assert!(parse_pool("4..1").is_err());
        assert_eq!(parse_set("3, 1").unwrap(), [1u128, 3].into_iter().collect());
    }

    #[test]
    fn vector_parsing_inline() {
        let x = parse_vector(r#"[["1","3e0"],["4","-5e-1"]]"#).unwrap();
        assert_eq!(x.get(1), 3.0);
        assert_eq!(x.get(4), -0.5);
    }

    #[test]
    fn verify_xp_passes() {
        assert_eq!(verify_example("xp").unwrap(), 0);
    }

    #[test]
    fn verify_sum_passes() {
        assert_eq!(verify_example("sum").unwrap(), 0);
    }

    #[test]
    fn unknown_preset_is_error() {
        assert!(verify_example("nope").is_err());
    }
}
