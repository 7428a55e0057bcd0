//! Batch verification of the pair theorems over a corpus of `.cm` files.
//!
//! Every property carries an explicit hypothesis: an entry that does not
//! meet it is reported as skipped with the reason, never as a pass. A
//! failure records the computed values and the route that produced each,
//! and every entry echoes the command that reruns it on its own.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{self, CacheStats};
use crate::dsl::{self, ExpectDef, Tag, Value};
use crate::error::{Error, Result};
use crate::groebner::{annihilator, module_dimension, radical_contains, Ideal};
use crate::homological::{ext, hom_module, tor, ExtendedNat};
use crate::local_cohomology::{
    cd_support_in, cech_table, deficiency, depth, duality_table, grade_via_ext, is_cohen_macaulay, koszul_grade, Cech,
    DegreeBox,
};
use crate::module::GradedModule;
use crate::pair::{
    ar_certificate, ass_monomial, cd_pair_with, exact_route, huneke_check, is_cci, is_semidualizing,
    is_totally_c_reflexive, present_over, torsion_submodule, CapVerdict, CdStrategy, CmVerdict, FreenessVerdict,
    MonomialPrime, PairCaps, PairInvariantReport,
};
use crate::ring::{Grading, RingRef};

/// Ext indices checked by the semidualizing and reflexivity predicates.
pub const DEFAULT_SD_CAP: usize = 6;

/// One pair from a corpus file.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    /// `file-stem/pair-name`.
    pub name: String,
    pub source: PathBuf,
    pub pair: String,
    pub ring: RingRef,
    pub ideal_name: String,
    pub ideal: Ideal,
    pub m_name: String,
    pub m: GradedModule,
    pub n_name: String,
    pub n: GradedModule,
    pub c_name: Option<String>,
    pub c: Option<GradedModule>,
    pub expectations: Vec<ExpectDef>,
}

#[derive(Clone, Debug)]
pub enum ObjectKind {
    Ring(RingRef),
    Ideal(Ideal),
    Module(GradedModule),
}

/// An expectation about a ring, ideal or module rather than a pair.
#[derive(Clone, Debug)]
pub struct ObjectExpectation {
    pub source: PathBuf,
    pub subject: String,
    pub object: ObjectKind,
    pub expect: ExpectDef,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub objects: Vec<ObjectExpectation>,
}

fn cm_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut out = Vec::new();
        let rd = std::fs::read_dir(path).map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
        for e in rd {
            let p = e.map_err(|e| Error::Corpus(e.to_string()))?.path();
            if p.extension().is_some_and(|x| x == "cm") {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

/// Adds the pairs and object expectations of one document.
pub fn add_document(corpus: &mut Corpus, source: &Path, env: &dsl::Env) {
    let stem = source.file_stem().map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
    for p in &env.pairs {
        corpus.entries.push(CorpusEntry {
            name: format!("{stem}/{}", p.name),
            source: source.to_path_buf(),
            pair: p.name.clone(),
            ring: p.ideal.ring.clone(),
            ideal_name: p.ideal_name.clone(),
            ideal: p.ideal.clone(),
            m_name: p.m_name.clone(),
            m: p.m.clone(),
            n_name: p.n_name.clone(),
            n: p.n.clone(),
            c_name: p.c_name.clone(),
            c: p.c.clone(),
            expectations: env.expectations.iter().filter(|x| x.subject == p.name).cloned().collect(),
        });
    }
    for x in &env.expectations {
        let object = if let Some(r) = env.rings.get(&x.subject) {
            ObjectKind::Ring(r.clone())
        } else if let Some(i) = env.ideals.get(&x.subject) {
            ObjectKind::Ideal(i.clone())
        } else if let Some(m) = env.modules.get(&x.subject) {
            ObjectKind::Module(m.clone())
        } else {
            continue;
        };
        corpus.objects.push(ObjectExpectation {
            source: source.to_path_buf(),
            subject: x.subject.clone(),
            object,
            expect: x.clone(),
        });
    }
}

/// Reads `.cm` files; directories contribute their `.cm` files in name
/// order.
pub fn load_corpus(paths: &[PathBuf]) -> Result<Corpus> {
    let mut corpus = Corpus::default();
    for path in paths {
        for file in cm_files(path)? {
            let src = std::fs::read_to_string(&file).map_err(|e| Error::Corpus(format!("{}: {e}", file.display())))?;
            let env = dsl::load(&src).map_err(|e| Error::Corpus(format!("{}: {e}", file.display())))?;
            add_document(&mut corpus, &file, &env);
        }
    }
    Ok(corpus)
}

// ---------------------------------------------------------------- outcomes

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "details", rename_all = "snake_case")]
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    fn label(&self) -> &'static str {
        match self {
            Outcome::Pass(_) => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::Skipped(_) => "skipped",
        }
    }

    fn details(&self) -> &str {
        match self {
            Outcome::Pass(s) | Outcome::Fail(s) | Outcome::Skipped(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub source: String,
    pub ideal: String,
    pub m: String,
    pub n: String,
    pub c: Option<String>,
    pub caps: PairCaps,
    pub outcomes: Vec<PropertyOutcome>,
    /// Reruns this entry alone.
    pub reproduce: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectReport {
    pub source: String,
    pub subject: String,
    pub quantity: String,
    pub expected: String,
    pub tag: Tag,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub entries_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<EntryReport>,
    pub objects: Vec<ObjectReport>,
    pub summary: Summary,
    pub timing: Timing,
    pub cache: CacheStats,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Outcomes of `property` on the entry called `entry`.
    pub fn outcome(&self, entry: &str, property: &str) -> Option<&Outcome> {
        let e = self.entries.iter().find(|e| e.name == entry)?;
        e.outcomes.iter().find(|o| o.property == property).map(|o| &o.outcome)
    }

    /// The report with timing and cache counters cleared, for comparing
    /// runs.
    pub fn deterministic_part(&self) -> (Vec<EntryReport>, Vec<ObjectReport>, Summary) {
        (self.entries.clone(), self.objects.clone(), self.summary)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Verification report\n");
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped in {} ms (cache: {} hits, {} misses).\n",
            self.summary.pass,
            self.summary.fail,
            self.summary.skipped,
            self.timing.total_ms,
            self.cache.hits,
            self.cache.misses
        );
        for e in &self.entries {
            let _ = writeln!(s, "## {}\n", e.name);
            let c = e.c.as_ref().map_or(String::new(), |c| format!(" using {c}"));
            let _ = writeln!(s, "Pair ({}, {}) wrt {}{c}; source `{}`.\n", e.m, e.n, e.ideal, e.source);
            let _ = writeln!(s, "| property | status | details |\n|---|---|---|");
            for o in &e.outcomes {
                let _ = writeln!(s, "| {} | {} | {} |", o.property, o.outcome.label(), o.outcome.details().replace('|', "\\|"));
            }
            let _ = writeln!(s, "\nReproduce: `{}`\n", e.reproduce);
        }
        if !self.objects.is_empty() {
            let _ = writeln!(s, "## Object expectations\n\n| source | subject | quantity | expected | tag | status | details |\n|---|---|---|---|---|---|---|");
            for o in &self.objects {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    o.source,
                    o.subject,
                    o.quantity,
                    o.expected,
                    o.tag,
                    o.outcome.label(),
                    o.outcome.details().replace('|', "\\|")
                );
            }
        }
        s
    }
}

// ---------------------------------------------------------------- options

/// Overrides of the default caps; `None` keeps the owning module's default.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CapOverrides {
    pub ext: Option<usize>,
    pub glc_q: Option<usize>,
    pub box_pad: Option<i32>,
    pub semidualizing: Option<usize>,
}

impl CapOverrides {
    pub fn pair_caps(&self, ring: &RingRef) -> PairCaps {
        let mut c = PairCaps::for_ring(ring);
        if let Some(x) = self.ext {
            c.ext = x;
        }
        if let Some(x) = self.glc_q {
            c.glc_q = x;
        }
        if let Some(x) = self.box_pad {
            c.box_pad = x;
        }
        c
    }

    pub fn sd_cap(&self) -> usize {
        self.semidualizing.unwrap_or(DEFAULT_SD_CAP)
    }

    /// Parses `key=value` items: `ext`, `glc_q`, `box_pad`, `semidualizing`.
    pub fn parse(items: &[String]) -> Result<CapOverrides> {
        let mut c = CapOverrides::default();
        for item in items {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Other(format!("cap `{item}` is not key=value")))?;
            let bad = || Error::Other(format!("cap `{item}` has a bad value"));
            match k.trim() {
                "ext" => c.ext = Some(v.trim().parse().map_err(|_| bad())?),
                "glc_q" => c.glc_q = Some(v.trim().parse().map_err(|_| bad())?),
                "box_pad" => c.box_pad = Some(v.trim().parse().map_err(|_| bad())?),
                "semidualizing" => c.semidualizing = Some(v.trim().parse().map_err(|_| bad())?),
                other => return Err(Error::Other(format!("unknown cap `{other}`"))),
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Only these properties (all when empty).
    pub properties: Vec<String>,
    /// Only entries whose name or pair name matches.
    pub entries: Vec<String>,
    pub workers: Option<usize>,
    /// With `sample`, evaluate a random subset of properties per entry.
    pub seed: Option<u64>,
    pub sample: Option<usize>,
    pub caps: CapOverrides,
}

// ---------------------------------------------------------------- properties

type Check = fn(&Subject) -> Result<Outcome>;

pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    check: Check,
}

pub fn properties() -> Vec<Property> {
    vec![
        Property { name: "chain", statement: "depth_I N ≤ depth_I(M,N) ≤ cd_I(M,N) ≤ cd_I N + h", check: prop_chain },
        Property { name: "bounds", statement: "depth_I(M,N) ≤ cd_I(M,N) ≤ min(cd_I(M⊗N) + e, cd_I N + h)", check: prop_bounds },
        Property {
            name: "tensor_plus_e",
            statement: "cd_I(M,N) ≤ cd_I(M⊗N) + e, with equality iff cd_I Ext^e(M,N) = cd_I(M⊗N)",
            check: prop_tensor_plus_e,
        },
        Property {
            name: "top_degeneration",
            statement: "Ext^h(M, H^c_m(N)) ≅ H^{c+h}_m(M,N) for c = cd_m N, as graded dimensions",
            check: prop_top_degeneration,
        },
        Property {
            name: "bottom_degeneration",
            statement: "H^t_I(M,N) ≅ Hom(M, H^t_I(N)) for t = depth_I N when t = 0 or t ≥ max(1, h)",
            check: prop_bottom_degeneration,
        },
        Property {
            name: "single_ext_formulas",
            statement: "a unique nonzero Ext^e gives depth = depth_I Ext^e + e, cd = cd_I Ext^e + e, and CM pair iff Ext^e CM",
            check: prop_single_ext,
        },
        Property {
            name: "single_ext_local_depth",
            statement: "a unique nonzero Ext^e gives depth_m N = depth_m Ext^e + e",
            check: prop_single_ext_local_depth,
        },
        Property {
            name: "semidualizing_pair",
            statement: "semidualizing C gives depth_I(C,C) = depth_I R and cd_I(C,C) = cd_I R",
            check: prop_semidualizing_pair,
        },
        Property {
            name: "reflexive_dimension",
            statement: "totally C-reflexive M gives cd_m(M,C) = dim M = cd_m(M^C, C)",
            check: prop_reflexive_dimension,
        },
        Property {
            name: "support_monotone",
            statement: "Supp N ⊆ Supp M gives cd_I N ≤ cd_I M",
            check: prop_support_monotone,
        },
        Property { name: "strategy_agreement", statement: "every decided cd strategy returns the same value", check: prop_agreement },
        Property { name: "verdict_consistency", statement: "Yes(t) iff depth = cd = t; depth ≤ cd", check: prop_verdict },
        Property { name: "grade_routes", statement: "grade via Ext equals grade via Koszul homology", check: prop_grade_routes },
        Property {
            name: "cech_duality",
            statement: "Čech and local-duality tables of H^q_m agree cell by cell (fine grading)",
            check: prop_cech_duality,
        },
        Property {
            name: "hilbert_routes",
            statement: "linear-algebra and Gröbner-basis Hilbert functions agree on the window",
            check: prop_hilbert_routes,
        },
        Property { name: "expectations", statement: "recorded expectations match the computed values", check: prop_expectations },
    ]
}

/// Lazily computed values shared by the properties of one entry.
pub struct Subject<'a> {
    pub entry: &'a CorpusEntry,
    pub caps: PairCaps,
    pub sd_cap: usize,
    report: OnceCell<Result<PairInvariantReport>>,
    grade_n: OnceCell<Result<ExtendedNat>>,
    cd_n: OnceCell<Result<ExtendedNat>>,
    single_ext: OnceCell<Result<Option<(usize, GradedModule)>>>,
    semidualizing: OnceCell<Result<bool>>,
}

fn fmt_opt(v: &Option<ExtendedNat>) -> String {
    v.as_ref().map_or("n/a".into(), |v| v.to_string())
}

impl<'a> Subject<'a> {
    pub fn new(entry: &'a CorpusEntry, caps: &CapOverrides) -> Self {
        Subject {
            entry,
            caps: caps.pair_caps(&entry.ring),
            sd_cap: caps.sd_cap(),
            report: OnceCell::new(),
            grade_n: OnceCell::new(),
            cd_n: OnceCell::new(),
            single_ext: OnceCell::new(),
            semidualizing: OnceCell::new(),
        }
    }

    fn grade_cap(&self) -> usize {
        self.entry.ring.nvars() + 1
    }

    fn region(&self, x: &GradedModule) -> DegreeBox {
        DegreeBox::around(x, self.caps.box_pad)
    }

    pub fn report(&self) -> Result<&PairInvariantReport> {
        let e = self.entry;
        self.report.get_or_init(|| cd_pair_with(&e.ideal, &e.m, &e.n, &self.caps)).as_ref().map_err(Clone::clone)
    }

    fn grade_n(&self) -> Result<ExtendedNat> {
        let e = self.entry;
        self.grade_n.get_or_init(|| grade_via_ext(&e.ideal, &e.n, self.grade_cap())).clone()
    }

    fn cd_of(&self, x: &GradedModule) -> Result<ExtendedNat> {
        Ok(cd_support_in(&self.entry.ideal, x, &self.region(x))?.value)
    }

    fn cd_n(&self) -> Result<ExtendedNat> {
        self.cd_n.get_or_init(|| self.cd_of(&self.entry.n)).clone()
    }

    fn maximal(&self) -> bool {
        self.entry.ideal.is_maximal_graded()
    }

    /// `(e, Ext^e(M, N))` when `Ext^e` is the only nonzero Ext.
    fn single_ext(&self) -> Result<Option<(usize, GradedModule)>> {
        self.single_ext
            .get_or_init(|| {
                let r = self.report()?;
                match (&r.e, r.nonzero_ext.as_slice()) {
                    (ExtendedNat::Finite(e), [k]) if e == k => {
                        let x = present_over(&ext(*e, &self.entry.m, &self.entry.n)?, &self.entry.ring)?;
                        Ok(Some((*e, x)))
                    }
                    _ => Ok(None),
                }
            })
            .clone()
    }

    fn c_is_semidualizing(&self) -> Result<bool> {
        self.semidualizing
            .get_or_init(|| match &self.entry.c {
                Some(c) => Ok(is_semidualizing(c, self.sd_cap)?.is_yes()),
                None => Ok(false),
            })
            .clone()
    }

    /// A window covering both modules, used for dimension identities.
    fn window(&self) -> DegreeBox {
        let a = DegreeBox::around(&self.entry.m, 2);
        let b = DegreeBox::around(&self.entry.n, 2);
        DegreeBox {
            lo: a.lo.iter().zip(&b.lo).map(|(x, y)| *x.min(y)).collect(),
            hi: a.hi.iter().zip(&b.hi).map(|(x, y)| *x.max(y)).collect(),
        }
    }

    fn describe_cd(&self, r: &PairInvariantReport) -> String {
        format!("cd_I(M,N) = {} via {:?}", r.cd.value, r.strategy)
    }
}

fn unsupported(e: Error) -> Result<Outcome> {
    match e {
        Error::UnsupportedIdeal => Ok(Outcome::Skipped("ideal is neither monomial nor nilpotent on M".into())),
        other => Err(other),
    }
}

/// Collects decided comparisons; `None` marks an undecided one.
struct Comparisons {
    checked: Vec<String>,
    failed: Vec<String>,
    undecided: Vec<String>,
}

impl Comparisons {
    fn new() -> Self {
        Comparisons { checked: vec![], failed: vec![], undecided: vec![] }
    }

    fn le(&mut self, what: &str, a: &ExtendedNat, b: &ExtendedNat) {
        let text = format!("{what}: {a} ≤ {b}");
        match a.le(b) {
            Some(true) => self.checked.push(text),
            Some(false) => self.failed.push(text),
            None => self.undecided.push(text),
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, a: T, b: T) {
        let text = format!("{what}: {a:?} = {b:?}");
        if a == b {
            self.checked.push(text);
        } else {
            self.failed.push(text);
        }
    }

    fn outcome(self, context: String) -> Outcome {
        if !self.failed.is_empty() {
            return Outcome::Fail(format!("{}; {context}", self.failed.join("; ")));
        }
        if self.checked.is_empty() {
            let why = if self.undecided.is_empty() { "nothing to compare".to_string() } else { self.undecided.join("; ") };
            return Outcome::Skipped(format!("no decided comparison ({why})"));
        }
        let mut s = self.checked.join("; ");
        if !self.undecided.is_empty() {
            let _ = write!(s, "; undecided: {}", self.undecided.join("; "));
        }
        Outcome::Pass(s)
    }
}

fn prop_chain(s: &Subject) -> Result<Outcome> {
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let mut c = Comparisons::new();
    let g = s.grade_n()?;
    c.le("depth_I N ≤ depth_I(M,N)", &g, &r.depth);
    c.le("depth_I(M,N) ≤ cd_I(M,N)", &r.depth, &r.cd.value);
    if let Some(h) = &r.h {
        let cn = s.cd_n()?;
        if let (Some(_), Some(hv)) = (cn.finite(), h.finite()) {
            c.le("cd_I(M,N) ≤ cd_I N + h", &r.cd.value, &cn.plus(hv));
        }
    }
    let ctx = format!("depth_I N = {g} (grade via Ext); depth_I(M,N) = {} (grade of ann(M/IM)); {}; h = {}", r.depth, s.describe_cd(r), fmt_opt(&r.h));
    Ok(c.outcome(ctx))
}

fn prop_bounds(s: &Subject) -> Result<Outcome> {
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let Some(upper) = r.bounds.upper() else {
        return Ok(Outcome::Skipped("no decided upper bound (e and h both undecided)".into()));
    };
    let mut c = Comparisons::new();
    c.le("lower ≤ cd", &r.bounds.lower, &r.cd.value);
    c.le("cd ≤ upper", &r.cd.value, &upper);
    let ctx = format!(
        "{}; cd_I(M⊗N) + e = {}; cd_I N + h = {}",
        s.describe_cd(r),
        fmt_opt(&r.bounds.tensor_plus_e),
        fmt_opt(&r.bounds.support_plus_h)
    );
    Ok(c.outcome(ctx))
}

fn prop_tensor_plus_e(s: &Subject) -> Result<Outcome> {
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let ExtendedNat::Finite(e) = r.e else {
        return Ok(Outcome::Skipped(format!("e = {} is not finite", r.e)));
    };
    let Some(cd) = r.cd.value.finite() else {
        return Ok(Outcome::Skipped(format!("cd_I(M,N) = {} is not finite", r.cd.value)));
    };
    let ent = s.entry;
    let ext_e = present_over(&ext(e, &ent.m, &ent.n)?, &ent.ring)?;
    let cd_ext = s.cd_of(&ext_e)?;
    let cd_t = s.cd_of(&ent.m.tensor(&ent.n))?;
    let (Some(a), Some(t)) = (cd_ext.finite(), cd_t.finite()) else {
        return Ok(Outcome::Skipped(format!("cd_I Ext^e = {cd_ext}, cd_I(M⊗N) = {cd_t} not both finite")));
    };
    let ctx = format!("{}; e = {e}; cd_I(M⊗N) = {t} (Čech/duality); cd_I Ext^{e} = {a}", s.describe_cd(r));
    if cd > t + e {
        return Ok(Outcome::Fail(format!("bound fails: {cd} > {t} + {e}; {ctx}")));
    }
    let equal = cd == t + e;
    let criterion = a == t;
    if equal != criterion {
        return Ok(Outcome::Fail(format!("biconditional fails: (cd = cd(M⊗N) + e) is {equal}, (cd Ext^e = cd(M⊗N)) is {criterion}; {ctx}")));
    }
    Ok(Outcome::Pass(format!("{cd} ≤ {t} + {e}; equality {equal} iff criterion {criterion}; {ctx}")))
}

/// `H^j` dimensions from the exact route; `None` with a reason otherwise.
fn exact_table(s: &Subject, j: usize, window: &DegreeBox) -> Result<std::result::Result<Vec<usize>, String>> {
    let ent = s.entry;
    let Some(route) = exact_route(&ent.ideal, &ent.m, &ent.n, s.caps.ext)? else {
        return Ok(Err("no exact route for H^*(M,N): I not nilpotent on M and Ext not concentrated".into()));
    };
    Ok(route.table(j, window)?.ok_or_else(|| "a Čech cell did not stabilize".to_string()))
}

fn compare_tables(
    window: &DegreeBox,
    left: &[usize],
    right: &[usize],
    what: &str,
) -> Outcome {
    let degrees = window.degrees();
    let bad: Vec<String> = degrees
        .iter()
        .zip(left.iter().zip(right))
        .filter(|(_, (a, b))| a != b)
        .take(3)
        .map(|(d, (a, b))| format!("{d:?}: {a} vs {b}"))
        .collect();
    let total: usize = left.iter().sum();
    if bad.is_empty() {
        Outcome::Pass(format!("{what}: {} degrees agree, total dimension {total}", degrees.len()))
    } else {
        Outcome::Fail(format!("{what}: mismatch at {}", bad.join(", ")))
    }
}

fn prop_top_degeneration(s: &Subject) -> Result<Outcome> {
    if !s.maximal() {
        return Ok(Outcome::Skipped("h is only computed for the maximal graded ideal".into()));
    }
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let (Some(ExtendedNat::Finite(h)), ExtendedNat::Finite(c)) = (r.h.clone(), s.cd_n()?) else {
        return Ok(Outcome::Skipped(format!("h = {} and cd_m N = {} not both finite", fmt_opt(&r.h), s.cd_n()?)));
    };
    let window = s.window();
    let right = match exact_table(s, c + h, &window)? {
        Ok(t) => t,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    let ent = s.entry;
    let k = present_over(&deficiency(c, &ent.n)?.module, &ent.ring)?;
    let t = tor(h, &ent.m, &k)?;
    let left: Vec<usize> = window.degrees().iter().map(|d| t.dim(&d.neg())).collect();
    Ok(compare_tables(&window, &left, &right, &format!("dim Tor_{h}(M, K^{c})_(-d) vs dim H^{}(M,N)_d", c + h)))
}

fn prop_bottom_degeneration(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    let ExtendedNat::Finite(t) = s.grade_n()? else {
        return Ok(Outcome::Skipped(format!("depth_I N = {} is not finite", s.grade_n()?)));
    };
    let window = s.window();
    let left: Vec<usize> = if t == 0 {
        let gamma = present_over(&torsion_submodule(&ent.ideal, &ent.n)?, &ent.ring)?;
        let hom = hom_module(&ent.m, &gamma)?;
        window.degrees().iter().map(|d| hom.dim(d)).collect()
    } else {
        if !s.maximal() {
            return Ok(Outcome::Skipped(format!("depth_I N = {t} > 0 needs h, which needs I = m")));
        }
        let r = match s.report() {
            Ok(r) => r,
            Err(e) => return unsupported(e),
        };
        match r.h.as_ref().and_then(|h| h.finite().or(matches!(h, ExtendedNat::NegInfinite).then_some(0))) {
            Some(h) if t >= h.max(1) => {}
            _ => return Ok(Outcome::Skipped(format!("depth_m N = {t} < max(1, h) with h = {}", fmt_opt(&r.h)))),
        }
        // Hom(M, D(K^t)) ≅ D(M ⊗ K^t)
        let k = present_over(&deficiency(t, &ent.n)?.module, &ent.ring)?;
        let mk = ent.m.tensor(&k);
        window.degrees().iter().map(|d| mk.dim(&d.neg())).collect()
    };
    let right = match exact_table(s, t, &window)? {
        Ok(x) => x,
        Err(why) => return Ok(Outcome::Skipped(why)),
    };
    Ok(compare_tables(&window, &left, &right, &format!("dim Hom(M, H^{t}_I(N))_d vs dim H^{t}_I(M,N)_d")))
}

fn prop_single_ext(s: &Subject) -> Result<Outcome> {
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let Some((e, x)) = s.single_ext()? else {
        return Ok(Outcome::Skipped(format!("Ext is not concentrated in one index (nonzero at {:?}, e = {})", r.nonzero_ext, r.e)));
    };
    let ent = s.entry;
    let gx = grade_via_ext(&ent.ideal, &x, s.grade_cap())?;
    let cx = s.cd_of(&x)?;
    let mut c = Comparisons::new();
    c.eq("depth_I(M,N) = depth_I Ext^e + e", r.depth.clone(), gx.plus(e));
    let independent: Vec<_> = r
        .cross_checks
        .iter()
        .filter(|k| k.strategy != CdStrategy::SingleExt && !matches!(k.cd, ExtendedNat::AtLeast(_)))
        .collect();
    for k in &independent {
        c.eq(&format!("cd_I Ext^e + e = cd via {:?}", k.strategy), cx.plus(e), k.cd.clone());
    }
    let ext_cm = matches!((&gx, &cx), (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) if a == b);
    if r.verdict != CmVerdict::Undetermined {
        c.eq("Ext^e CM iff CM pair", ext_cm, matches!(r.verdict, CmVerdict::Yes(_)));
    }
    let note = if independent.is_empty() { "; cd formula has no independent route on this entry" } else { "" };
    Ok(c.outcome(format!("e = {e}; depth_I Ext^e = {gx}; cd_I Ext^e = {cx}; depth_I(M,N) = {}; {}{note}", r.depth, s.describe_cd(r))))
}

fn prop_single_ext_local_depth(s: &Subject) -> Result<Outcome> {
    if !s.maximal() {
        return Ok(Outcome::Skipped("needs the maximal graded ideal".into()));
    }
    if let Err(e) = s.report() {
        return unsupported(e);
    }
    let Some((e, x)) = s.single_ext()? else {
        return Ok(Outcome::Skipped("Ext is not concentrated in one index".into()));
    };
    let dn = depth(&s.entry.n)?;
    let dx = depth(&x)?;
    let mut c = Comparisons::new();
    c.eq("depth_m N = depth_m Ext^e + e", dn.clone(), dx.plus(e));
    Ok(c.outcome(format!("e = {e}; depth_m N = {dn}; depth_m Ext^e = {dx}")))
}

fn prop_semidualizing_pair(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    let Some(cn) = &ent.c_name else {
        return Ok(Outcome::Skipped("no module C declared with `using`".into()));
    };
    if &ent.m_name != cn || &ent.n_name != cn {
        return Ok(Outcome::Skipped("pair is not (C, C)".into()));
    }
    if !s.c_is_semidualizing()? {
        return Ok(Outcome::Skipped(format!("C is not semidualizing up to cap {}", s.sd_cap)));
    }
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let rm = GradedModule::ring_module(&ent.ring);
    let gr = grade_via_ext(&ent.ideal, &rm, s.grade_cap())?;
    let cr = s.cd_of(&rm)?;
    let mut c = Comparisons::new();
    c.eq("depth_I(C,C) = depth_I R", r.depth.clone(), gr.clone());
    c.eq("cd_I(C,C) = cd_I R", r.cd.value.clone(), cr.clone());
    Ok(c.outcome(format!("depth_I R = {gr}; cd_I R = {cr}; depth_I(C,C) = {}; {}", r.depth, s.describe_cd(r))))
}

fn prop_reflexive_dimension(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    if !s.maximal() {
        return Ok(Outcome::Skipped("needs the maximal graded ideal".into()));
    }
    let (Some(cn), Some(c)) = (&ent.c_name, &ent.c) else {
        return Ok(Outcome::Skipped("no module C declared with `using`".into()));
    };
    if &ent.n_name != cn {
        return Ok(Outcome::Skipped("second module is not C".into()));
    }
    if !s.c_is_semidualizing()? {
        return Ok(Outcome::Skipped(format!("C is not semidualizing up to cap {}", s.sd_cap)));
    }
    if let CapVerdict::No { witness } = is_totally_c_reflexive(&ent.m, c, s.sd_cap)? {
        return Ok(Outcome::Skipped(format!("M is not totally C-reflexive: {witness}")));
    }
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let dual = present_over(&hom_module(&ent.m, c)?, &ent.ring)?;
    let r2 = cd_pair_with(&ent.ideal, &dual, c, &s.caps)?;
    let dim = module_dimension(&ent.m).map_or(ExtendedNat::NegInfinite, ExtendedNat::Finite);
    let mut cmp = Comparisons::new();
    cmp.eq("cd_m(M,C) = dim M", r.cd.value.clone(), dim.clone());
    cmp.eq("cd_m(M^C,C) = dim M", r2.cd.value.clone(), dim.clone());
    Ok(cmp.outcome(format!(
        "dim M = {dim}; {}; cd_m(M^C,C) = {} via {:?}",
        s.describe_cd(r),
        r2.cd.value,
        r2.strategy
    )))
}

fn prop_support_monotone(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    if ent.m.is_zero() {
        return Ok(Outcome::Skipped("M = 0".into()));
    }
    let ann_m = annihilator(&ent.m);
    let ann_n = annihilator(&ent.n);
    if !ann_m.gens.iter().all(|g| radical_contains(&ann_n, g)) {
        return Ok(Outcome::Skipped("Supp N ⊆ Supp M not certified (ann M ⊄ √ann N)".into()));
    }
    let supported = ent.ideal.is_maximal_graded() || (ent.ideal.is_monomial() && ent.ring.grading == Grading::Fine);
    if !supported {
        return Ok(Outcome::Skipped("cd_I of a module needs a monomial or maximal ideal".into()));
    }
    let cn = s.cd_n()?;
    let cm = s.cd_of(&ent.m)?;
    let mut c = Comparisons::new();
    c.le("cd_I N ≤ cd_I M", &cn, &cm);
    Ok(c.outcome(format!("cd_I N = {cn}; cd_I M = {cm}")))
}

fn prop_agreement(s: &Subject) -> Result<Outcome> {
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let decided: Vec<_> = r.cross_checks.iter().filter(|k| k.agrees.is_some()).collect();
    if decided.len() < 2 {
        return Ok(Outcome::Skipped(format!("{} decided strategy, nothing to cross-check", decided.len())));
    }
    let list: Vec<String> = decided
        .iter()
        .map(|k| format!("{:?}: cd {}{}", k.strategy, k.cd, k.depth.as_ref().map_or(String::new(), |d| format!(", depth {d}"))))
        .collect();
    if r.all_agree {
        Ok(Outcome::Pass(format!("{}-way agreement: {}", decided.len(), list.join("; "))))
    } else {
        Ok(Outcome::Fail(format!("strategies disagree: {}", list.join("; "))))
    }
}

fn prop_verdict(s: &Subject) -> Result<Outcome> {
    let r = match s.report() {
        Ok(r) => r,
        Err(e) => return unsupported(e),
    };
    let mut c = Comparisons::new();
    if let (Some(_), Some(_)) = (r.depth.finite(), r.cd.value.finite()) {
        c.le("depth ≤ cd", &r.depth, &r.cd.value);
    }
    match (&r.verdict, &r.depth, &r.cd.value) {
        (CmVerdict::Yes(t), d, cd) => {
            c.eq("Yes(t): depth = t", d.clone(), ExtendedNat::Finite(*t));
            c.eq("Yes(t): cd = t", cd.clone(), ExtendedNat::Finite(*t));
        }
        (CmVerdict::No, ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => c.eq("No: depth ≠ cd", a != b, true),
        (CmVerdict::No, _, ExtendedNat::Infinite(_)) => c.eq("No: cd infinite", true, true),
        _ => {}
    }
    Ok(c.outcome(format!("verdict {}; depth {}; {}", r.verdict, r.depth, s.describe_cd(r))))
}

fn prop_grade_routes(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    let mut c = Comparisons::new();
    let mut pairs: Vec<(String, Ideal, &GradedModule)> =
        vec![(format!("({}, N)", ent.ideal_name), ent.ideal.clone(), &ent.n), (format!("({}, M)", ent.ideal_name), ent.ideal.clone(), &ent.m)];
    let q = ent.m.quotient_by(&ent.ideal.gens);
    if !q.is_zero() {
        pairs.push(("(ann(M/IM), N)".into(), annihilator(&q), &ent.n));
    }
    for (what, j, x) in &pairs {
        if x.is_zero() {
            continue;
        }
        let via_ext = grade_via_ext(j, x, s.grade_cap())?;
        let via_koszul = koszul_grade(&j.gens, x);
        // both report "infinite" when x = Jx, with different certificates
        let norm = |v: &ExtendedNat| if v.is_infinite() { "infinite".to_string() } else { v.to_string() };
        c.eq(&format!("grade {what}"), norm(&via_ext), norm(&via_koszul));
    }
    Ok(c.outcome(String::new()))
}

fn prop_cech_duality(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    if ent.ring.grading != Grading::Fine {
        return Ok(Outcome::Skipped("Čech tables need the fine grading".into()));
    }
    let m = Ideal::maximal(&ent.ring);
    let mut cells = 0;
    let mut mismatches = Vec::new();
    let mut limited = 0;
    let mut modules = vec![("M", &ent.m), ("N", &ent.n)];
    if ent.m_name == ent.n_name {
        modules.pop();
    }
    for (label, x) in modules {
        if x.is_zero() {
            continue;
        }
        let window = DegreeBox::around(x, 1);
        let cech = Cech::new(&m, x)?;
        for q in 0..=ent.ring.nvars() {
            let k = deficiency(q, x)?;
            let a = duality_table(&k, &window);
            let b = cech_table(&cech, q, &window);
            for (d, cell) in &a.cells {
                cells += 1;
                let other = &b.cells[d];
                if other.status != crate::local_cohomology::CellStatus::Exact {
                    limited += 1;
                }
                if other.dim != cell.dim && mismatches.len() < 3 {
                    mismatches.push(format!("H^{q}_m({label}) at {d:?}: duality {} vs Čech {}", cell.dim, other.dim));
                }
            }
        }
    }
    if !mismatches.is_empty() {
        return Ok(Outcome::Fail(mismatches.join("; ")));
    }
    Ok(Outcome::Pass(format!("{cells} cells agree ({limited} box-limited)")))
}

fn prop_hilbert_routes(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    let mut modules = vec![("M", &ent.m), ("N", &ent.n)];
    if let Some(c) = &ent.c {
        modules.push(("C", c));
    }
    let mut cells = 0;
    for (label, x) in modules {
        let window = DegreeBox::around(x, 2);
        let (_, gb) = match cache::active() {
            Some(c) => c.lifted_gb(x),
            None => x.lifted_gb(),
        };
        for d in window.degrees() {
            cells += 1;
            let a = x.hilbert_dim(&d)?;
            let b = x.gb_dim_with(&gb, &d);
            if a != b {
                return Ok(Outcome::Fail(format!("{label} at {d:?}: linear algebra {a} vs Gröbner {b}")));
            }
        }
    }
    Ok(Outcome::Pass(format!("{cells} degrees agree")))
}

// ---------------------------------------------------------------- expectations

fn fmt_ext(v: &ExtendedNat) -> String {
    match v {
        ExtendedNat::Finite(n) => n.to_string(),
        ExtendedNat::Infinite(_) => "infinite".into(),
        ExtendedNat::AtLeast(n) => format!("at_least({n})"),
        ExtendedNat::NegInfinite => "neg_infinite".into(),
    }
}

fn fmt_verdict(v: &CmVerdict) -> String {
    match v {
        CmVerdict::Yes(t) => format!("yes({t})"),
        CmVerdict::No => "no".into(),
        CmVerdict::Undetermined => "undetermined".into(),
    }
}

fn fmt_primes(ring: &RingRef, ps: &[MonomialPrime]) -> String {
    let set: BTreeSet<Vec<String>> = ps.iter().map(|p| p.vars.iter().map(|&v| ring.poly.names[v].clone()).collect()).collect();
    fmt_prime_set(&set)
}

fn fmt_prime_set(set: &BTreeSet<Vec<String>>) -> String {
    let items: Vec<String> =
        set.iter().map(|p| if p.is_empty() { "(0)".to_string() } else { format!("({})", p.join(", ")) }).collect();
    format!("{{{}}}", items.join(", "))
}

/// The canonical text of an expected value.
fn expected_text(ring: &RingRef, v: &Value) -> String {
    match v {
        Value::Primes(ps) => {
            let idx = |n: &str| ring.poly.names.iter().position(|x| x == n).unwrap_or(usize::MAX);
            let set: BTreeSet<Vec<String>> = ps
                .iter()
                .map(|p| {
                    let mut vs: Vec<&str> = p.iter().map(|n| n.text.as_str()).collect();
                    vs.sort_by_key(|n| idx(n));
                    vs.into_iter().map(String::from).collect()
                })
                .collect();
            fmt_prime_set(&set)
        }
        Value::Word(w, a) => Value::Word(w.to_lowercase(), *a).to_string(),
        other => other.to_string(),
    }
}

fn fmt_cap(v: &CapVerdict) -> String {
    if v.is_yes() { "yes".into() } else { "no".into() }
}

fn pair_quantity(s: &Subject, q: &str) -> Result<String> {
    let ent = s.entry;
    Ok(match q {
        "depth" => fmt_ext(&s.report()?.depth),
        "cd" => fmt_ext(&s.report()?.cd.value),
        "e" => fmt_ext(&s.report()?.e),
        "h" => s.report()?.h.as_ref().map_or("none".into(), fmt_ext),
        "verdict" => fmt_verdict(&s.report()?.verdict),
        "strategy" => format!("{:?}", s.report()?.strategy).to_lowercase(),
        "huneke" => {
            let h = huneke_check(&ent.ideal, &ent.m, &ent.n)?;
            fmt_primes(&ent.ring, &h.ass)
        }
        "totally_reflexive" => {
            let c = ent.c.as_ref().ok_or_else(|| Error::Other("no `using` module".into()))?;
            fmt_cap(&is_totally_c_reflexive(&ent.m, c, s.sd_cap)?)
        }
        other => return Err(Error::Other(format!("unknown pair quantity `{other}`"))),
    })
}

fn module_quantity(m: &GradedModule, q: &str, sd_cap: usize) -> Result<String> {
    Ok(match q {
        "depth" => fmt_ext(&depth(m)?),
        "dim" => module_dimension(m).map_or("neg_infinite".into(), |d| d.to_string()),
        "cm" => is_cohen_macaulay(m)?.to_string(),
        "free" => m.prune().module.relations.is_empty().to_string(),
        "generators" => m.minimal_generator_count().to_string(),
        "semidualizing" => fmt_cap(&is_semidualizing(m, sd_cap)?),
        "ass" => fmt_primes(&m.ring, &ass_monomial(m)?),
        "ar" => match ar_certificate(m, sd_cap)?.verdict {
            FreenessVerdict::Free => "free".into(),
            FreenessVerdict::NotFree(_) => "not_free".into(),
            FreenessVerdict::Inconclusive => "inconclusive".into(),
        },
        other => return Err(Error::Other(format!("unknown module quantity `{other}`"))),
    })
}

fn ideal_quantity(i: &Ideal, q: &str) -> Result<String> {
    let r = GradedModule::ring_module(&i.ring);
    Ok(match q {
        "cci" => is_cci(i)?.map_or("undetermined".into(), |b| b.to_string()),
        "grade" => fmt_ext(&grade_via_ext(i, &r, i.ring.nvars() + 1)?),
        "cd" => fmt_ext(&cd_support_in(i, &r, &DegreeBox::default_for(&r))?.value),
        other => return Err(Error::Other(format!("unknown ideal quantity `{other}`"))),
    })
}

fn judge(expected: String, computed: Result<String>, tag: &Tag) -> Outcome {
    match computed {
        Ok(c) if c == expected => Outcome::Pass(format!("{c} [{tag}]")),
        Ok(c) => Outcome::Fail(format!("expected {expected} [{tag}], computed {c}")),
        Err(e) => Outcome::Fail(format!("expected {expected} [{tag}], computation failed: {e}")),
    }
}

fn prop_expectations(s: &Subject) -> Result<Outcome> {
    let ent = s.entry;
    if ent.expectations.is_empty() {
        return Ok(Outcome::Skipped("no expectations recorded".into()));
    }
    let mut passed = Vec::new();
    for x in &ent.expectations {
        let want = expected_text(&ent.ring, &x.value);
        match judge(want, pair_quantity(s, &x.quantity), &x.tag) {
            Outcome::Pass(d) => passed.push(format!("{} = {d}", x.quantity)),
            Outcome::Fail(d) => return Ok(Outcome::Fail(format!("{} (line {}): {d}", x.quantity, x.line))),
            Outcome::Skipped(_) => unreachable!(),
        }
    }
    Ok(Outcome::Pass(passed.join("; ")))
}

fn check_object(o: &ObjectExpectation, sd_cap: usize) -> ObjectReport {
    let (ring, computed) = match &o.object {
        ObjectKind::Module(m) => (m.ring.clone(), module_quantity(m, &o.expect.quantity, sd_cap)),
        ObjectKind::Ideal(i) => (i.ring.clone(), ideal_quantity(i, &o.expect.quantity)),
        ObjectKind::Ring(r) => (r.clone(), module_quantity(&GradedModule::ring_module(r), &o.expect.quantity, sd_cap)),
    };
    let expected = expected_text(&ring, &o.expect.value);
    ObjectReport {
        source: o.source.display().to_string(),
        subject: o.subject.clone(),
        quantity: o.expect.quantity.clone(),
        expected: expected.clone(),
        tag: o.expect.tag.clone(),
        outcome: judge(expected, computed, &o.expect.tag),
    }
}

// ---------------------------------------------------------------- runner

fn entry_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn run_entry(entry: &CorpusEntry, opts: &SuiteOptions) -> EntryReport {
    let subject = Subject::new(entry, &opts.caps);
    let mut props: Vec<Property> = properties();
    if !opts.properties.is_empty() {
        props.retain(|p| opts.properties.iter().any(|f| f == p.name));
    }
    if let (Some(k), Some(seed)) = (opts.sample, opts.seed) {
        let mut rng = StdRng::seed_from_u64(entry_seed(seed, &entry.name));
        props.shuffle(&mut rng);
        props.truncate(k);
        let order: Vec<&str> = properties().iter().map(|p| p.name).collect();
        props.sort_by_key(|p| order.iter().position(|n| *n == p.name));
    }
    let outcomes = props
        .iter()
        .map(|p| {
            let outcome = (p.check)(&subject).unwrap_or_else(|e| Outcome::Fail(format!("computation failed: {e}")));
            PropertyOutcome { property: p.name.to_string(), outcome }
        })
        .collect();
    EntryReport {
        name: entry.name.clone(),
        source: entry.source.display().to_string(),
        ideal: entry.ideal_name.clone(),
        m: entry.m_name.clone(),
        n: entry.n_name.clone(),
        c: entry.c_name.clone(),
        caps: subject.caps.clone(),
        outcomes,
        reproduce: format!("cmpairs verify -f {} --entry {}", entry.source.display(), entry.pair),
    }
}

fn selected(entry: &CorpusEntry, filter: &[String]) -> bool {
    filter.is_empty() || filter.iter().any(|f| f == &entry.name || f == &entry.pair)
}

/// Evaluates every selected property on every selected entry. Entries run
/// concurrently; the report lists them in corpus order.
pub fn run_suite(corpus: &Corpus, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let before = cache::active().map(|c| c.stats()).unwrap_or_default();
    let chosen: Vec<&CorpusEntry> = corpus.entries.iter().filter(|e| selected(e, &opts.entries)).collect();
    let run = || -> Vec<(EntryReport, u128)> {
        chosen
            .par_iter()
            .map(|e| {
                let t = Instant::now();
                let r = run_entry(e, opts);
                (r, t.elapsed().as_millis())
            })
            .collect()
    };
    let workers = opts.workers.unwrap_or(0);
    let results = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Other(e.to_string()))?
        .install(run);
    let objects: Vec<ObjectReport> = if opts.entries.is_empty() && opts.properties.iter().all(|p| p == "expectations") {
        corpus.objects.iter().map(|o| check_object(o, opts.caps.sd_cap())).collect()
    } else {
        Vec::new()
    };
    let mut summary = Summary::default();
    let mut timing = Timing::default();
    let mut entries = Vec::with_capacity(results.len());
    for (r, ms) in results {
        timing.entries_ms.insert(r.name.clone(), ms);
        entries.push(r);
    }
    let all = entries.iter().flat_map(|e| e.outcomes.iter().map(|o| &o.outcome)).chain(objects.iter().map(|o| &o.outcome));
    for o in all {
        match o {
            Outcome::Pass(_) => summary.pass += 1,
            Outcome::Fail(_) => summary.fail += 1,
            Outcome::Skipped(_) => summary.skipped += 1,
        }
    }
    timing.total_ms = start.elapsed().as_millis();
    let after = cache::active().map(|c| c.stats()).unwrap_or_default();
    let cache = CacheStats { hits: after.hits - before.hits, misses: after.misses - before.misses };
    Ok(SuiteReport { entries, objects, summary, timing, cache })
}

// ---------------------------------------------------------------- gap search

/// Candidate pairs `(M, N)` drawn from a list of modules over one ring.
#[derive(Clone, Debug)]
pub struct GapFamily {
    pub ideal: Ideal,
    pub modules: Vec<(String, GradedModule)>,
    /// Keep only pairs with a unique nonzero Ext.
    pub single_ext_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapLine {
    pub m: String,
    pub n: String,
    pub cd_support: ExtendedNat,
    pub cd_pair: ExtendedNat,
    pub strategy: Option<CdStrategy>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapSearch {
    pub examined: Vec<GapLine>,
    /// Pairs with certified `cd_I N < cd_I(M, N) < ∞`.
    pub candidates: Vec<GapLine>,
}

/// Looks for pairs with `cd_I N < cd_I(M, N) < ∞` in a family, logging
/// every comparison made.
pub fn search_gap(family: &GapFamily, caps: &CapOverrides) -> Result<GapSearch> {
    let mut out = GapSearch { examined: vec![], candidates: vec![] };
    let pc = caps.pair_caps(&family.ideal.ring);
    for (mn, m) in &family.modules {
        for (nn, n) in &family.modules {
            let mut line = GapLine {
                m: mn.clone(),
                n: nn.clone(),
                cd_support: ExtendedNat::NegInfinite,
                cd_pair: ExtendedNat::NegInfinite,
                strategy: None,
                note: String::new(),
            };
            if m.is_zero() || n.is_zero() {
                line.note = "zero module".into();
                out.examined.push(line);
                continue;
            }
            let report = match cd_pair_with(&family.ideal, m, n, &pc) {
                Ok(r) => r,
                Err(Error::UnsupportedIdeal) => {
                    line.note = "unsupported ideal".into();
                    out.examined.push(line);
                    continue;
                }
                Err(e) => return Err(e),
            };
            if family.single_ext_only && report.nonzero_ext.len() != 1 {
                continue;
            }
            line.cd_support = cd_support_in(&family.ideal, n, &DegreeBox::around(n, pc.box_pad))?.value;
            line.cd_pair = report.cd.value.clone();
            line.strategy = Some(report.strategy);
            let gap = matches!((&line.cd_support, &line.cd_pair), (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) if a < b);
            line.note = if gap { "finite gap".into() } else { "no gap".into() };
            if gap {
                out.candidates.push(line.clone());
            }
            out.examined.push(line);
        }
    }
    Ok(out)
}

/// The family of all modules (and the ring itself) declared over the
/// ideal's ring in a document.
pub fn family_from_env(env: &dsl::Env, ideal: &str, single_ext_only: bool) -> Result<GapFamily> {
    let i = env.ideals.get(ideal).ok_or_else(|| Error::Other(format!("no ideal `{ideal}`")))?.clone();
    let mut modules = Vec::new();
    for (name, r) in &env.rings {
        if r == &i.ring {
            modules.push((name.clone(), GradedModule::ring_module(r)));
        }
    }
    for (name, m) in &env.modules {
        if m.ring == i.ring {
            modules.push((name.clone(), m.clone()));
        }
    }
    Ok(GapFamily { ideal: i, modules, single_ext_only })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "\
ring R = poly(x,y)/(x*y);
ideal I = (x);
module M = quotient(R, I);
module N = coker(R, [[x]], shifts=[(0,1)]);
pair P = (M, N) wrt I;
pair Q = (R, N) wrt I;
expect P.cd = infinite [paper];
expect P.verdict = no [paper];
expect Q.verdict = yes(0) [paper];
expect N.ass = {(x)} [derived];
";

    fn corpus(src: &str) -> Corpus {
        let mut c = Corpus::default();
        add_document(&mut c, Path::new("ex.cm"), &dsl::load(src).unwrap());
        c
    }

    #[test]
    fn zero_divisor_example_passes() {
        let c = corpus(EX);
        let r = run_suite(&c, &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
        assert!(matches!(r.outcome("ex/P", "chain"), Some(Outcome::Pass(_))));
        assert!(matches!(r.outcome("ex/P", "expectations"), Some(Outcome::Pass(_))));
        assert_eq!(r.objects.len(), 1);
        assert_eq!(r.entries[0].reproduce, "cmpairs verify -f ex.cm --entry P");
    }

    #[test]
    fn wrong_expectation_fails_with_values() {
        let c = corpus(&EX.replace("P.cd = infinite", "P.cd = 3"));
        let r = run_suite(&c, &SuiteOptions::default()).unwrap();
        match r.outcome("ex/P", "expectations") {
            Some(Outcome::Fail(d)) => assert!(d.contains("expected 3") && d.contains("infinite"), "{d}"),
            other => panic!("{other:?}"),
        }
        assert!(!r.passed());
    }

    #[test]
    fn runs_are_deterministic_and_filters_apply() {
        let c = corpus(EX);
        let opts = SuiteOptions { workers: Some(2), ..Default::default() };
        let a = run_suite(&c, &opts).unwrap();
        let b = run_suite(&c, &SuiteOptions { workers: Some(1), ..Default::default() }).unwrap();
        assert_eq!(a.deterministic_part(), b.deterministic_part());
        let only = SuiteOptions { properties: vec!["chain".into()], entries: vec!["Q".into()], ..Default::default() };
        let r = run_suite(&c, &only).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].outcomes.len(), 1);
        let sampled = SuiteOptions { seed: Some(7), sample: Some(3), ..Default::default() };
        let x = run_suite(&c, &sampled).unwrap();
        let y = run_suite(&c, &sampled).unwrap();
        assert_eq!(x.deterministic_part(), y.deterministic_part());
        assert_eq!(x.entries[0].outcomes.len(), 3);
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let r = run_suite(&Corpus::default(), &SuiteOptions::default()).unwrap();
        assert!(r.entries.is_empty() && r.passed());
    }

    #[test]
    fn gap_search() {
        let env = dsl::load(EX).unwrap();
        let fam = family_from_env(&env, "I", false).unwrap();
        let g = search_gap(&fam, &CapOverrides::default()).unwrap();
        assert!(g.candidates.is_empty());
        assert!(!g.examined.is_empty());
        let empty = GapFamily { modules: vec![], ..fam };
        assert!(search_gap(&empty, &CapOverrides::default()).unwrap().examined.is_empty());
    }

    #[test]
    fn caps_parse() {
        let c = CapOverrides::parse(&["ext=3".into(), "box_pad=2".into()]).unwrap();
        assert_eq!((c.ext, c.box_pad), (Some(3), Some(2)));
        assert!(CapOverrides::parse(&["bogus=1".into()]).is_err());
    }
}
