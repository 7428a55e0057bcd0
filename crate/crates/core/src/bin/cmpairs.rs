use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use cmpairs::cache::{self, Cache};
use cmpairs::dsl::{self, Env};
use cmpairs::groebner::Ideal;
use cmpairs::homological::{e_sup, ext};
use cmpairs::local_cohomology::{
    cd_support_in, cech_cohomology, deficiency, duality_table, grade_via_ext, koszul_grade, CohomologyTable, DegreeBox,
};
use cmpairs::module::GradedModule;
use cmpairs::pair::{
    ar_certificate, ass_monomial, cd_pair_with, depth_pair, glc_truncated, huneke_check, is_cci, is_semidualizing,
    is_totally_c_reflexive, present_over,
};
use cmpairs::verifier::{self, CapOverrides, GapSearch, SuiteOptions};

#[derive(Parser)]
#[command(name = "cmpairs", version, about = "Depth, cohomological dimension and generalized local cohomology of module pairs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Common {
    /// Input `.cm` files or directories.
    #[arg(short = 'f', long = "file", global = true, num_args = 1..)]
    files: Vec<PathBuf>,
    /// Also write the result as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Cap overrides: ext=N, glc_q=N, box_pad=N, semidualizing=N.
    #[arg(long, global = true, value_delimiter = ',')]
    caps: Vec<String>,
    /// Worker threads for `verify` (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for random property sampling in `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Do not read or write the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// depth_I N by the Ext and Koszul routes, or depth_I(M, N) of a pair.
    Depth {
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        pair: Option<String>,
    },
    /// cd_I N of a module, or the full invariant report of a pair.
    Cd {
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Ext^i(M, N) and e(M, N).
    Ext {
        #[arg(long)]
        index: usize,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Nonzero cells of H^i_I(N) on the default window.
    Lc {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        index: usize,
    },
    /// Truncated generalized local cohomology tables of a pair.
    Glc {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Cohen-Macaulay pair verdict.
    CmPair {
        #[arg(long)]
        pair: String,
    },
    /// Whether grade I = cd_I R.
    Cci {
        #[arg(long)]
        ideal: String,
    },
    /// Semidualizing test up to a cap.
    Semidualizing {
        #[arg(long)]
        module: String,
        /// With this module as C, also test total C-reflexivity of `--module`.
        #[arg(long)]
        reflexive_over: Option<String>,
    },
    /// Associated primes of a finely graded module.
    Ass {
        #[arg(long)]
        module: String,
    },
    /// Associated primes of the top generalized local cohomology.
    Huneke {
        #[arg(long)]
        pair: String,
    },
    /// Freeness certificate from the reflexivity and Ext conditions.
    Ar {
        #[arg(long)]
        module: String,
    },
    /// Run the property suite over a corpus; exit status 2 on any failure.
    Verify {
        /// Every entry (the default when no --entry is given).
        #[arg(long)]
        all: bool,
        /// Only these entries (pair name or file-stem/pair).
        #[arg(long, num_args = 1..)]
        entry: Vec<String>,
        /// Only these properties.
        #[arg(long, num_args = 1..)]
        only: Vec<String>,
        /// Evaluate this many randomly chosen properties per entry (needs --seed).
        #[arg(long)]
        sample: Option<usize>,
        /// Write the markdown report here.
        #[arg(long)]
        markdown: Option<PathBuf>,
        /// List the registered properties and exit.
        #[arg(long)]
        list: bool,
    },
    /// Search a family for pairs with cd_I N < cd_I(M, N) < infinity.
    SearchGap {
        #[arg(long)]
        ideal: String,
        /// Keep only pairs with a unique nonzero Ext.
        #[arg(long)]
        single_ext: bool,
    },
}

struct Inputs {
    envs: Vec<(PathBuf, Env)>,
}

impl Inputs {
    fn load(files: &[PathBuf]) -> Result<Inputs> {
        let mut envs = Vec::new();
        for f in files {
            let paths = if f.is_dir() {
                let mut v: Vec<PathBuf> = std::fs::read_dir(f)?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "cm"))
                    .collect();
                v.sort();
                v
            } else {
                vec![f.clone()]
            };
            for p in paths {
                let src = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                let env = dsl::load(&src).map_err(|e| anyhow!("{}: {e}", p.display()))?;
                envs.push((p, env));
            }
        }
        if envs.is_empty() {
            bail!("no input: pass -f FILE");
        }
        Ok(Inputs { envs })
    }

    fn find<T>(&self, what: &str, name: &str, get: impl Fn(&Env) -> Option<T>) -> Result<T> {
        self.envs.iter().rev().find_map(|(_, e)| get(e)).ok_or_else(|| anyhow!("no {what} named `{name}`"))
    }

    fn ideal(&self, name: &str) -> Result<Ideal> {
        self.find("ideal", name, |e| e.ideals.get(name).cloned())
    }

    fn module(&self, name: &str) -> Result<GradedModule> {
        self.find("module", name, |e| e.module_named(name))
    }

    fn pair(&self, name: &str) -> Result<dsl::PairDef> {
        self.find("pair", name, |e| e.pair(name).cloned())
    }
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn print_table(t: &CohomologyTable) {
    let mut any = false;
    for (d, c) in t.nonzero() {
        any = true;
        let limited = if c.status == cmpairs::local_cohomology::CellStatus::Exact { "" } else { " (box-limited)" };
        println!("  degree {d:?}: {}{limited}", c.dim);
    }
    if !any {
        println!("  zero on {:?}..{:?}", t.region.lo, t.region.hi);
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let c = &cli.common;
    if !c.no_cache {
        cache::install(Some(Arc::new(Cache::from_env()?)));
    }
    let caps = CapOverrides::parse(&c.caps)?;
    match &cli.verb {
        Verb::Verify { list: true, .. } => {
            for p in verifier::properties() {
                println!("{:<24} {}", p.name, p.statement);
            }
            return Ok(ExitCode::SUCCESS);
        }
        Verb::Verify { entry, only, sample, markdown, .. } => {
            let corpus = verifier::load_corpus(&c.files)?;
            let opts = SuiteOptions {
                properties: only.clone(),
                entries: entry.clone(),
                workers: c.workers,
                seed: c.seed,
                sample: *sample,
                caps,
            };
            if sample.is_some() && c.seed.is_none() {
                bail!("--sample needs --seed");
            }
            let report = verifier::run_suite(&corpus, &opts)?;
            for e in &report.entries {
                let fails: Vec<_> = e.outcomes.iter().filter(|o| o.outcome.is_fail()).collect();
                let status = if fails.is_empty() { "ok  " } else { "FAIL" };
                let counts = e.outcomes.iter().fold((0, 0), |(p, s), o| match o.outcome {
                    verifier::Outcome::Pass(_) => (p + 1, s),
                    verifier::Outcome::Skipped(_) => (p, s + 1),
                    verifier::Outcome::Fail(_) => (p, s),
                });
                println!("{status} {:<32} {} passed, {} skipped", e.name, counts.0, counts.1);
                for f in fails {
                    if let verifier::Outcome::Fail(d) = &f.outcome {
                        println!("     {}: {d}", f.property);
                    }
                }
                if e.outcomes.iter().any(|o| o.outcome.is_fail()) {
                    println!("     reproduce: {}", e.reproduce);
                }
            }
            for o in &report.objects {
                if let verifier::Outcome::Fail(d) = &o.outcome {
                    println!("FAIL {} {}.{}: {d}", o.source, o.subject, o.quantity);
                }
            }
            println!(
                "{} passed, {} failed, {} skipped; {} ms; cache {} hits, {} misses",
                report.summary.pass,
                report.summary.fail,
                report.summary.skipped,
                report.timing.total_ms,
                report.cache.hits,
                report.cache.misses
            );
            write_json(&c.json, &report)?;
            if let Some(p) = markdown {
                std::fs::write(p, report.to_markdown())?;
            }
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) });
        }
        _ => {}
    }
    let inputs = Inputs::load(&c.files)?;
    match &cli.verb {
        Verb::Depth { ideal, module, pair } => {
            if let Some(p) = pair {
                let p = inputs.pair(p)?;
                let d = depth_pair(&p.ideal, &p.m, &p.n)?;
                println!("depth_{}({}, {}) = {d}", p.ideal_name, p.m_name, p.n_name);
                write_json(&c.json, &json!({ "depth": d }))?;
            } else {
                let (Some(i), Some(n)) = (ideal, module) else { bail!("pass --pair, or --ideal and --module") };
                let (ii, nn) = (inputs.ideal(i)?, inputs.module(n)?);
                let via_ext = grade_via_ext(&ii, &nn, ii.ring.nvars() + 1)?;
                let via_koszul = koszul_grade(&ii.gens, &nn);
                println!("depth_{i} {n} = {via_ext} (Ext route: {via_ext}; Koszul route: {via_koszul})");
                write_json(&c.json, &json!({ "ext": via_ext, "koszul": via_koszul }))?;
            }
        }
        Verb::Cd { ideal, module, pair } => {
            if let Some(p) = pair {
                let p = inputs.pair(p)?;
                let r = cd_pair_with(&p.ideal, &p.m, &p.n, &caps.pair_caps(&p.ideal.ring))?;
                println!("cd = {} via {:?}; depth = {}; e = {}", r.cd.value, r.strategy, r.depth, r.e);
                if let Some(h) = &r.h {
                    println!("h = {h}");
                }
                for x in &r.cross_checks {
                    println!("  {:?}: cd {} (agrees: {:?})", x.strategy, x.cd, x.agrees);
                }
                println!("verdict: {}", r.verdict);
                write_json(&c.json, &r)?;
            } else {
                let (Some(i), Some(n)) = (ideal, module) else { bail!("pass --pair, or --ideal and --module") };
                let (ii, nn) = (inputs.ideal(i)?, inputs.module(n)?);
                let pad = caps.pair_caps(&ii.ring).box_pad;
                let r = cd_support_in(&ii, &nn, &DegreeBox::around(&nn, pad))?;
                println!("cd_{i} {n} = {}", r.value);
                write_json(&c.json, &r)?;
            }
        }
        Verb::Ext { index, m, n } => {
            let (mm, nn) = (inputs.module(m)?, inputs.module(n)?);
            let e = ext(*index, &mm, &nn)?;
            let p = present_over(&e, &mm.ring)?;
            let cap = caps.pair_caps(&mm.ring).ext;
            let sup = e_sup(&mm, &nn, cap)?;
            println!("Ext^{index}({m}, {n}) = {}", if p.is_zero() { "0".to_string() } else { p.format() });
            println!("e({m}, {n}) = {sup}");
            write_json(&c.json, &json!({ "index": index, "presentation": p.format(), "zero": p.is_zero(), "e": sup }))?;
        }
        Verb::Lc { ideal, module, index } => {
            let (ii, nn) = (inputs.ideal(ideal)?, inputs.module(module)?);
            let pad = caps.pair_caps(&ii.ring).box_pad;
            let window = DegreeBox::around(&nn, pad);
            let t = if ii.is_maximal_graded() {
                duality_table(&deficiency(*index, &nn)?, &window)
            } else {
                cech_cohomology(&ii, &nn, *index, &window)?
            };
            println!("H^{index}_{ideal}({module}):");
            print_table(&t);
            write_json(&c.json, &t)?;
        }
        Verb::Glc { pair, index, q } => {
            let p = inputs.pair(pair)?;
            let pc = caps.pair_caps(&p.ideal.ring);
            let window = DegreeBox::around(&p.n, 2);
            let t = glc_truncated(&p.ideal, &p.m, &p.n, *index, q.unwrap_or(pc.glc_q), &window)?;
            for (k, row) in t.tables.iter().enumerate() {
                println!("q = {}: total dimension {}", k + 1, row.iter().sum::<usize>());
            }
            match (t.exact, t.stabilized_at) {
                (true, _) => println!("exact: I^q M = 0, the system is constant"),
                (false, Some(q)) => println!("stabilized at q = {q} (evidence, not a certificate)"),
                (false, None) => println!("not stabilized"),
            }
            write_json(&c.json, &t)?;
        }
        Verb::CmPair { pair } => {
            let p = inputs.pair(pair)?;
            let r = cd_pair_with(&p.ideal, &p.m, &p.n, &caps.pair_caps(&p.ideal.ring))?;
            println!("{}: depth={}, cd={}", r.verdict, r.depth, r.cd.value);
            write_json(&c.json, &json!({ "verdict": r.verdict, "depth": r.depth, "cd": r.cd }))?;
        }
        Verb::Cci { ideal } => {
            let v = is_cci(&inputs.ideal(ideal)?)?;
            println!("{}", v.map_or("undetermined".to_string(), |b| b.to_string()));
            write_json(&c.json, &json!({ "cci": v }))?;
        }
        Verb::Semidualizing { module, reflexive_over } => {
            let cap = caps.sd_cap();
            let m = inputs.module(module)?;
            match reflexive_over {
                None => {
                    let v = is_semidualizing(&m, cap)?;
                    println!("{v:?}");
                    write_json(&c.json, &v)?;
                }
                Some(cn) => {
                    let v = is_totally_c_reflexive(&m, &inputs.module(cn)?, cap)?;
                    println!("{v:?}");
                    write_json(&c.json, &v)?;
                }
            }
        }
        Verb::Ass { module } => {
            let m = inputs.module(module)?;
            let ps = ass_monomial(&m)?;
            let names: Vec<String> = ps.iter().map(|p| p.format(&m.ring)).collect();
            println!("Ass {module} = {{{}}}", names.join(", "));
            write_json(&c.json, &json!({ "ass": names }))?;
        }
        Verb::Huneke { pair } => {
            let p = inputs.pair(pair)?;
            let h = huneke_check(&p.ideal, &p.m, &p.n)?;
            let names: Vec<String> = h.ass.iter().map(|x| x.format(&p.ideal.ring)).collect();
            println!("Ass H^{}_{}({}, {}) = {{{}}}; finite: {}", h.c, p.ideal_name, p.m_name, p.n_name, names.join(", "), h.finite);
            write_json(&c.json, &h)?;
        }
        Verb::Ar { module } => {
            let cert = ar_certificate(&inputs.module(module)?, caps.sd_cap())?;
            for cond in &cert.conditions {
                println!("  {}: {:?}", cond.name, cond.outcome);
            }
            println!("verdict: {:?}", cert.verdict);
            write_json(&c.json, &cert)?;
        }
        Verb::SearchGap { ideal, single_ext } => {
            let mut result = GapSearch { examined: vec![], candidates: vec![] };
            for (_, env) in &inputs.envs {
                if env.ideals.contains_key(ideal) {
                    let fam = verifier::family_from_env(env, ideal, *single_ext)?;
                    let r = verifier::search_gap(&fam, &caps)?;
                    result.examined.extend(r.examined);
                    result.candidates.extend(r.candidates);
                }
            }
            for l in &result.examined {
                println!("({}, {}): cd_I N = {}, cd_I(M,N) = {}: {}", l.m, l.n, l.cd_support, l.cd_pair, l.note);
            }
            println!("{} candidates", result.candidates.len());
            write_json(&c.json, &result)?;
        }
        Verb::Verify { .. } => unreachable!(),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
