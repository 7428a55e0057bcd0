//! Invariants of pairs `(M, N)` with respect to an ideal `I`: the depth and
//! cohomological dimension of `H^i_I(M, N) = lim_q Ext^i(M/I^qM, N)`,
//! Cohen-Macaulay-pair verdicts, semidualizing and reflexivity checks,
//! associated primes and freeness certificates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Column, Elem};
use crate::groebner::{annihilator, krull_dimension, module_dimension, radical_contains, Ideal};
use crate::homological::{e_sup_with, ext_with, pd_of, resolve_decided, tor_sup, Certificate, ExtendedNat, Resolution};
use crate::local_cohomology::{
    cd_support_in, deficiencies, depth, grade_via_ext, is_cohen_macaulay, Cech, CdResult, CellStatus, DegreeBox,
};
use crate::module::{GradedModule, ModuleMap, Subquotient};
use crate::monomial::Degree;
use crate::poly::Poly;
use crate::ring::{Grading, RingRef};

/// Caps used by the pair computations. Every report records them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCaps {
    /// Length of resolutions used for Ext and Tor.
    pub ext: usize,
    /// Number of truncations `M/I^qM` in a glc table.
    pub glc_q: usize,
    /// Padding of the degree box around a module for Čech tables.
    pub box_pad: i32,
}

impl PairCaps {
    pub fn for_ring(ring: &RingRef) -> Self {
        let n = ring.nvars();
        PairCaps { ext: n + 4, glc_q: 4, box_pad: n as i32 + 2 }
    }
}

fn check_rings(ms: &[&GradedModule], ring: &RingRef) -> Result<()> {
    if ms.iter().any(|m| &m.ring != ring) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Whether `gens · M = 0`.
fn kills(gens: &[Poly], m: &GradedModule) -> bool {
    let free = m.free_module();
    gens.iter().all(|g| {
        let Some(gd) = m.ring.poly_degree(g) else { return true };
        (0..m.num_generators()).all(|j| {
            let mut col = free.zero();
            col[j] = g.clone();
            let col = free.reduce(&col);
            crate::graded::FreeModule::is_zero(&col)
                || free.contains(&m.relations, &Elem { col, deg: m.shifts[j].add(&gd) })
        })
    })
}

/// Whether `I ⊆ √(ann M)`, so that `I^q M = 0` for large `q` and the
/// direct system defining `H^i_I(M, -)` is eventually constant.
pub fn nilpotent_on(i: &Ideal, m: &GradedModule) -> bool {
    if m.is_zero() {
        return true;
    }
    let ann = annihilator(m);
    i.gens.iter().all(|g| radical_contains(&ann, g))
}

/// `(0 :_M (gens))` as a submodule of `M`.
pub fn colon_submodule(m: &GradedModule, gens: &[Poly]) -> Subquotient {
    let ring = &m.ring;
    let gens: Vec<Poly> = gens.iter().map(|g| ring.nf(g)).filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        let free = m.free_module();
        let all = (0..m.num_generators()).map(|j| free.basis_vector(j)).collect();
        return Subquotient { ambient: free, gens: all, rels: m.relations.clone() };
    }
    let mut target = GradedModule::zero(ring);
    for g in &gens {
        target = target.direct_sum(&m.shift(&ring.poly_degree(g).unwrap().neg()));
    }
    let k = m.num_generators();
    let images: Vec<Column> = (0..k)
        .map(|j| {
            let mut col = vec![Poly::zero(); k * gens.len()];
            for (b, g) in gens.iter().enumerate() {
                col[b * k + j] = g.clone();
            }
            col
        })
        .collect();
    ModuleMap { source: m.clone(), target, images }.kernel()
}

/// The `I`-torsion submodule `Γ_I(N) = (0 :_N I^∞)`, found as the first
/// `(0 :_N I^q)` equal to `(0 :_N I^{q+1})`.
pub fn torsion_submodule(i: &Ideal, n: &GradedModule) -> Result<Subquotient> {
    const MAX_POWER: u32 = 64;
    let mut prev = colon_submodule(n, &i.gens);
    for q in 2..=MAX_POWER {
        let next = colon_submodule(n, &i.power(q).gens);
        let mut span = prev.gens.clone();
        span.extend(prev.rels.iter().cloned());
        if next.gens.iter().all(|g| prev.ambient.contains(&span, g)) {
            return Ok(prev);
        }
        prev = next;
    }
    Err(Error::Other(format!("(0 :_N I^q) did not stabilize for q ≤ {MAX_POWER}")))
}

/// A subquotient presented as a module over `ring`, which may be a quotient
/// of the subquotient's ring (deficiency modules live over `S`).
pub fn present_over(sq: &Subquotient, ring: &RingRef) -> Result<GradedModule> {
    let p = sq.present().module;
    if p.num_generators() == 0 {
        return Ok(GradedModule::zero(ring));
    }
    if &p.ring == ring {
        return Ok(p);
    }
    p.change_ring(ring)
}

/// `depth_I(M, N) = grade(ann(M/IM), N)`.
pub fn depth_pair(i: &Ideal, m: &GradedModule, n: &GradedModule) -> Result<ExtendedNat> {
    check_rings(&[m, n], &i.ring)?;
    let q = m.quotient_by(&i.gens);
    if q.is_zero() {
        return Ok(ExtendedNat::Infinite(Certificate::Torsion { detail: "M = IM".into() }));
    }
    grade_via_ext(&annihilator(&q), n, n.ring.nvars() + 1)
}

/// Graded dimensions of `Ext^i(M/I^qM, N)` for `q = 1..Q` on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlcTable {
    pub index: usize,
    pub window: DegreeBox,
    /// `tables[q-1][k]` is the dimension at the `k`-th degree of the window.
    pub tables: Vec<Vec<usize>>,
    /// First `q` from which three consecutive tables agree, or from which
    /// `I^q M = 0`.
    pub stabilized_at: Option<usize>,
    /// `I^q M = 0` for some `q ≤ Q`: the system is constant from there and
    /// the stable table is `H^i_I(M, N)` exactly. Otherwise stabilization is
    /// evidence only.
    pub exact: bool,
}

impl GlcTable {
    pub fn degrees(&self) -> Vec<Degree> {
        self.window.degrees()
    }

    /// The last computed table.
    pub fn last(&self) -> &[usize] {
        self.tables.last().map(|t| t.as_slice()).unwrap_or(&[])
    }
}

pub fn glc_truncated(
    i: &Ideal,
    m: &GradedModule,
    n: &GradedModule,
    index: usize,
    q_max: usize,
    window: &DegreeBox,
) -> Result<GlcTable> {
    check_rings(&[m, n], &i.ring)?;
    let degrees = window.degrees();
    let mut tables: Vec<Vec<usize>> = Vec::with_capacity(q_max);
    let mut constant_from = None;
    for q in 1..=q_max {
        let power = i.power(q as u32);
        if kills(&power.gens, m) {
            let e = crate::homological::ext(index, m, n)?;
            let t: Vec<usize> = degrees.iter().map(|d| e.dim(d)).collect();
            while tables.len() < q_max {
                tables.push(t.clone());
            }
            constant_from = Some(q);
            break;
        }
        let e = crate::homological::ext(index, &m.quotient_by(&power.gens), n)?;
        tables.push(degrees.iter().map(|d| e.dim(d)).collect());
    }
    let stabilized_at = constant_from.or_else(|| {
        (0..tables.len().saturating_sub(2)).find(|&k| tables[k] == tables[k + 1] && tables[k] == tables[k + 2]).map(|k| k + 1)
    });
    Ok(GlcTable { index, window: window.clone(), tables, stabilized_at, exact: constant_from.is_some() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CdStrategy {
    /// `I^q M = 0`: `H^i_I(M, N) = Ext^i(M, N)`.
    AnnihilatedExt,
    /// A unique nonzero `Ext^e(M, N)`: `cd = cd_I Ext^e + e`.
    SingleExt,
    /// `I = m`, `N` Cohen-Macaulay: `cd = dim N + h`.
    CMPlusH,
    /// `I = m`, `R` Cohen-Macaulay, `pd M < ∞`: `cd = dim R - grade(ann N, M)`.
    CMLocalFormula,
    BoundsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "t")]
pub enum CmVerdict {
    Yes(usize),
    No,
    Undetermined,
}

impl std::fmt::Display for CmVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmVerdict::Yes(t) => write!(f, "Yes({t})"),
            CmVerdict::No => write!(f, "No"),
            CmVerdict::Undetermined => write!(f, "Undetermined"),
        }
    }
}

/// One strategy's values next to the reported ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub strategy: CdStrategy,
    pub cd: ExtendedNat,
    pub depth: Option<ExtendedNat>,
    /// `None` when either side is undecided.
    pub agrees: Option<bool>,
}

/// The sandwich `depth ≤ cd ≤ min(cd_I(M⊗N) + e, cd_I N + h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CdBounds {
    pub lower: ExtendedNat,
    pub tensor_plus_e: Option<ExtendedNat>,
    pub support_plus_h: Option<ExtendedNat>,
}

impl CdBounds {
    /// The smaller decided upper bound.
    pub fn upper(&self) -> Option<ExtendedNat> {
        let cands: Vec<&ExtendedNat> = [&self.tensor_plus_e, &self.support_plus_h].into_iter().flatten().collect();
        let mut best: Option<ExtendedNat> = None;
        for c in cands {
            if matches!(c, ExtendedNat::AtLeast(_)) {
                continue;
            }
            best = match best {
                None => Some(c.clone()),
                Some(b) => Some(if c.le(&b) == Some(true) { c.clone() } else { b }),
            };
        }
        best
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairInvariantReport {
    pub ideal: String,
    pub depth: ExtendedNat,
    pub cd: CdResult,
    /// Only for the maximal graded ideal.
    pub h: Option<ExtendedNat>,
    pub e: ExtendedNat,
    /// Indices `i` with `Ext^i(M, N) ≠ 0` among those computed.
    pub nonzero_ext: Vec<usize>,
    pub strategy: CdStrategy,
    pub verdict: CmVerdict,
    pub bounds: CdBounds,
    pub cross_checks: Vec<CrossCheck>,
    /// Every decided strategy returned the reported cd.
    pub all_agree: bool,
    /// Truncated glc tables, attached when only bounds are available.
    pub glc_evidence: Vec<GlcTable>,
    pub caps: PairCaps,
}

fn decided(v: &ExtendedNat) -> bool {
    !matches!(v, ExtendedNat::AtLeast(_))
}

fn sup2(a: ExtendedNat, b: ExtendedNat) -> ExtendedNat {
    use ExtendedNat::*;
    match (a, b) {
        (Infinite(c), _) | (_, Infinite(c)) => Infinite(c),
        (NegInfinite, x) | (x, NegInfinite) => x,
        (Finite(x), Finite(y)) => Finite(x.max(y)),
        (Finite(x) | AtLeast(x), Finite(y) | AtLeast(y)) => AtLeast(x.max(y)),
    }
}

/// Adds two extended values where the second is an offset that may itself
/// be undecided.
fn add(a: &ExtendedNat, b: &ExtendedNat) -> ExtendedNat {
    use ExtendedNat::*;
    match (a, b) {
        (NegInfinite, _) | (_, NegInfinite) => NegInfinite,
        (Infinite(c), _) | (_, Infinite(c)) => Infinite(c.clone()),
        (Finite(x), Finite(y)) => Finite(x + y),
        (Finite(x) | AtLeast(x), Finite(y) | AtLeast(y)) => AtLeast(x + y),
    }
}

fn verdict(depth: &ExtendedNat, cd: &ExtendedNat) -> CmVerdict {
    use ExtendedNat::*;
    match (depth, cd) {
        (Finite(a), Finite(b)) if a == b => CmVerdict::Yes(*a),
        (Finite(_), Finite(_)) | (Finite(_), Infinite(_)) => CmVerdict::No,
        (Finite(a), AtLeast(b)) if b > a => CmVerdict::No,
        (Infinite(_), NegInfinite) => CmVerdict::No,
        _ => CmVerdict::Undetermined,
    }
}

fn supported(i: &Ideal) -> bool {
    i.is_maximal_graded() || (i.is_monomial() && i.ring.grading == Grading::Fine)
}

/// `sup_q e(M, H^q_m(N))` through `Ext^p(M, D(K^q)) ≅ D(Tor_p(M, K^q))`.
pub fn h_invariant(m: &GradedModule, n: &GradedModule, cap: usize) -> Result<ExtendedNat> {
    check_rings(&[n], &m.ring)?;
    let mut acc = ExtendedNat::NegInfinite;
    if m.is_zero() || n.is_zero() {
        return Ok(acc);
    }
    for k in deficiencies(n)? {
        if k.is_zero() {
            continue;
        }
        let kq = present_over(&k.module, &m.ring)?;
        acc = sup2(acc, tor_sup(m, &kq, cap)?);
    }
    Ok(acc)
}

/// Exact access to `H^j_I(M, N)` when a strategy identifies it with a
/// computable module.
pub enum ExactRoute {
    /// `I^q M = 0`: `H^j = Ext^j(M, N)`.
    Constant { res: Resolution, n: GradedModule },
    /// `H^j = H^{j-e}_I(E)` for the unique nonzero `E = Ext^e(M, N)`.
    Shifted { ideal: Ideal, e: usize, module: GradedModule },
}

impl ExactRoute {
    /// Dimensions of `H^j_I(M, N)` on a window, or `None` when a Čech cell
    /// hit the step limit.
    pub fn table(&self, j: usize, window: &DegreeBox) -> Result<Option<Vec<usize>>> {
        let degrees = window.degrees();
        match self {
            ExactRoute::Constant { res, n } => {
                let mut r = res.clone();
                r.extend(j + 2);
                let e = ext_with(&r, j, n)?;
                Ok(Some(degrees.iter().map(|d| e.dim(d)).collect()))
            }
            ExactRoute::Shifted { ideal, e, module } => {
                if j < *e {
                    return Ok(Some(vec![0; degrees.len()]));
                }
                let q = j - e;
                if ideal.is_maximal_graded() {
                    let k = crate::local_cohomology::deficiency(q, module)?;
                    return Ok(Some(degrees.iter().map(|d| k.local_cohomology_dim(d)).collect()));
                }
                let cech = Cech::new(ideal, module)?;
                let mut out = Vec::with_capacity(degrees.len());
                for d in &degrees {
                    let (dim, status) = cech.cohomology_dim(q, d);
                    if status != CellStatus::Exact {
                        return Ok(None);
                    }
                    out.push(dim);
                }
                Ok(Some(out))
            }
        }
    }
}

struct ExtData {
    res: Resolution,
    e: ExtendedNat,
    nonzero: Vec<usize>,
}

fn ext_data(m: &GradedModule, n: &GradedModule, cap: usize) -> Result<ExtData> {
    let res = resolve_decided(m, cap.max(1));
    let e = e_sup_with(&res, n)?;
    let top = match &e {
        ExtendedNat::Finite(k) => Some(*k),
        ExtendedNat::NegInfinite => None,
        _ => res.maps.len().checked_sub(1),
    };
    let mut nonzero = Vec::new();
    if let Some(top) = top {
        for i in 0..=top {
            if !ext_with(&res, i, n)?.is_zero() {
                nonzero.push(i);
            }
        }
    }
    Ok(ExtData { res, e, nonzero })
}

/// The exact route for `H^*_I(M, N)`, if one of the exact strategies applies.
pub fn exact_route(i: &Ideal, m: &GradedModule, n: &GradedModule, cap: usize) -> Result<Option<ExactRoute>> {
    check_rings(&[m, n], &i.ring)?;
    let data = ext_data(m, n, cap)?;
    if nilpotent_on(i, m) {
        return Ok(Some(ExactRoute::Constant { res: data.res, n: n.clone() }));
    }
    if let (ExtendedNat::Finite(e), [k]) = (&data.e, data.nonzero.as_slice()) {
        debug_assert_eq!(e, k);
        let module = present_over(&ext_with(&data.res, *e, n)?, &m.ring)?;
        return Ok(Some(ExactRoute::Shifted { ideal: i.clone(), e: *e, module }));
    }
    Ok(None)
}

pub fn cd_pair(i: &Ideal, m: &GradedModule, n: &GradedModule) -> Result<PairInvariantReport> {
    cd_pair_with(i, m, n, &PairCaps::for_ring(&i.ring))
}

pub fn cd_pair_with(i: &Ideal, m: &GradedModule, n: &GradedModule, caps: &PairCaps) -> Result<PairInvariantReport> {
    check_rings(&[m, n], &i.ring)?;
    if !supported(i) && !nilpotent_on(i, m) {
        return Err(Error::UnsupportedIdeal);
    }
    let ring = &i.ring;
    let maximal = i.is_maximal_graded();
    let depth = depth_pair(i, m, n)?;
    let data = ext_data(m, n, caps.ext)?;
    let region = |x: &GradedModule| DegreeBox::around(x, caps.box_pad);
    let h = if maximal { Some(h_invariant(m, n, caps.ext)?) } else { None };

    let mut runs: Vec<(CdStrategy, CdResult, Option<ExtendedNat>)> = Vec::new();
    if m.is_zero() || n.is_zero() {
        let cd = CdResult { value: ExtendedNat::NegInfinite, certificates: vec![] };
        runs.push((CdStrategy::AnnihilatedExt, cd, Some(depth.clone())));
    } else {
        if nilpotent_on(i, m) {
            let first = data.nonzero.first().map(|&k| ExtendedNat::Finite(k));
            let cd = CdResult { value: data.e.clone(), certificates: vec![] };
            runs.push((CdStrategy::AnnihilatedExt, cd, first));
        }
        if let (ExtendedNat::Finite(e), [_]) = (&data.e, data.nonzero.as_slice()) {
            let ext_e = present_over(&ext_with(&data.res, *e, n)?, ring)?;
            if supported(i) {
                let sub = cd_support_in(i, &ext_e, &region(&ext_e))?;
                let d = grade_via_ext(i, &ext_e, ring.nvars() + 1)?.plus(*e);
                let cd = CdResult { value: sub.value.plus(*e), certificates: sub.certificates };
                runs.push((CdStrategy::SingleExt, cd, Some(d)));
            }
        }
        if maximal && is_cohen_macaulay(n)? {
            let dim_n = module_dimension(n).unwrap_or(0);
            let value = add(&ExtendedNat::Finite(dim_n), h.as_ref().unwrap());
            runs.push((CdStrategy::CMPlusH, CdResult { value, certificates: vec![] }, None));
        }
        if maximal && pd_of(&data.res).finite().is_some() {
            let r = GradedModule::ring_module(ring);
            if is_cohen_macaulay(&r)? {
                if let ExtendedNat::Finite(g) = grade_via_ext(&annihilator(n), m, ring.nvars() + 1)? {
                    let dim_r = krull_dimension(&Ideal::zero(ring))?;
                    let value = ExtendedNat::Finite(dim_r - g);
                    runs.push((CdStrategy::CMLocalFormula, CdResult { value, certificates: vec![] }, None));
                }
            }
        }
    }

    // the sandwich of upper bounds
    let mut bounds = CdBounds { lower: depth.clone(), tensor_plus_e: None, support_plus_h: None };
    if supported(i) && !m.is_zero() && !n.is_zero() {
        let t = m.tensor(n);
        if let ExtendedNat::Finite(_) | ExtendedNat::Infinite(_) = &data.e {
            let ct = cd_support_in(i, &t, &region(&t))?.value;
            bounds.tensor_plus_e = Some(add(&ct, &data.e));
        }
        if let Some(h) = &h {
            let cn = cd_support_in(i, n, &region(n))?.value;
            bounds.support_plus_h = Some(add(&cn, h));
        }
    }

    let chosen = runs.iter().position(|(_, cd, _)| decided(&cd.value));
    let mut glc_evidence = Vec::new();
    let (strategy, cd) = match chosen {
        Some(k) => (runs[k].0, runs[k].1.clone()),
        None => {
            let upper = bounds.upper();
            let value = match (&depth, &upper) {
                (ExtendedNat::Finite(a), Some(ExtendedNat::Finite(b))) if a == b => ExtendedNat::Finite(*a),
                _ => runs
                    .iter()
                    .map(|(_, cd, _)| cd.value.clone())
                    .fold(depth.finite().map_or(ExtendedNat::AtLeast(0), ExtendedNat::AtLeast), sup2),
            };
            if !decided(&value) {
                if let Some(ExtendedNat::Finite(top)) = upper {
                    let window = region(n);
                    glc_evidence.push(glc_truncated(i, m, n, top, caps.glc_q, &window)?);
                }
            }
            (CdStrategy::BoundsOnly, CdResult { value, certificates: vec![] })
        }
    };
    let cross_checks: Vec<CrossCheck> = runs
        .iter()
        .map(|(s, c, d)| {
            let agrees = (decided(&c.value) && decided(&cd.value)).then(|| c.value == cd.value);
            let depth_agrees = d.as_ref().map(|d| d == &depth);
            let agrees = match (agrees, depth_agrees) {
                (Some(a), Some(b)) => Some(a && b),
                (a, _) => a,
            };
            CrossCheck { strategy: *s, cd: c.value.clone(), depth: d.clone(), agrees }
        })
        .collect();
    let all_agree = cross_checks.iter().all(|c| c.agrees != Some(false));
    let verdict = verdict(&depth, &cd.value);
    Ok(PairInvariantReport {
        ideal: i.format(),
        depth,
        cd,
        h,
        e: data.e,
        nonzero_ext: data.nonzero,
        strategy,
        verdict,
        bounds,
        cross_checks,
        all_agree,
        glc_evidence,
        caps: caps.clone(),
    })
}

pub fn is_cm_pair(i: &Ideal, m: &GradedModule, n: &GradedModule) -> Result<CmVerdict> {
    Ok(cd_pair(i, m, n)?.verdict)
}

/// Whether `grade I = cd_I R`; `None` when `cd_I R` is not certified.
pub fn is_cci(i: &Ideal) -> Result<Option<bool>> {
    let r = GradedModule::ring_module(&i.ring);
    let grade = grade_via_ext(i, &r, i.ring.nvars() + 1)?;
    let cd = cd_support_in(i, &r, &DegreeBox::default_for(&r))?.value;
    Ok(match (grade, cd) {
        (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => Some(a == b),
        _ => None,
    })
}

/// Outcome of a check that holds up to a cap of Ext indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CapVerdict {
    /// Passed; `certified` when a resolution certificate covers every
    /// index, not just those up to the cap.
    YesToCap { cap: usize, certified: bool },
    No { witness: String },
}

impl CapVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, CapVerdict::YesToCap { .. })
    }
}

/// `Ext^i(M, N) = 0` for `1 ≤ i ≤ cap`, or a witness.
fn ext_vanishes(m: &GradedModule, n: &GradedModule, cap: usize, what: &str) -> Result<CapVerdict> {
    if m.is_zero() || n.is_zero() {
        return Ok(CapVerdict::YesToCap { cap, certified: true });
    }
    let res = resolve_decided(m, cap + 1);
    let witness = |i: usize| CapVerdict::No { witness: format!("Ext^{i}({what}) ≠ 0") };
    match e_sup_with(&res, n)? {
        ExtendedNat::Finite(0) | ExtendedNat::NegInfinite => Ok(CapVerdict::YesToCap { cap, certified: true }),
        ExtendedNat::AtLeast(0) => Ok(CapVerdict::YesToCap { cap, certified: false }),
        ExtendedNat::Finite(k) | ExtendedNat::AtLeast(k) => {
            // report the smallest nonzero index
            for i in 1..=k {
                if !ext_with(&res, i, n)?.is_zero() {
                    return Ok(witness(i));
                }
            }
            Ok(witness(k))
        }
        ExtendedNat::Infinite(c) => {
            for i in 1..res.maps.len() {
                if !ext_with(&res, i, n)?.is_zero() {
                    return Ok(witness(i));
                }
            }
            Ok(CapVerdict::No { witness: format!("Ext^i({what}) ≠ 0 for all large i ({c})") })
        }
    }
}

/// Whether the homothety `R → Hom(C, C)` is bijective and
/// `Ext^i(C, C) = 0` for `1 ≤ i ≤ cap`.
pub fn is_semidualizing(c: &GradedModule, cap: usize) -> Result<CapVerdict> {
    if c.is_zero() {
        return Ok(CapVerdict::No { witness: "C = 0".into() });
    }
    let ann = annihilator(c);
    if !ann.is_zero() {
        return Ok(CapVerdict::No { witness: format!("homothety not injective: ann C = {}", ann.format()) });
    }
    let hom = crate::homological::hom_module(c, c)?;
    let g = c.num_generators();
    let ring = &c.ring;
    let mut id = vec![Poly::zero(); g * g];
    for l in 0..g {
        id[l * g + l] = ring.poly.constant(1);
    }
    let mut span = vec![Elem { col: id, deg: ring.zero_degree() }];
    span.extend(hom.rels.iter().cloned());
    if let Some(bad) = hom.gens.iter().find(|x| !hom.ambient.contains(&span, x)) {
        return Ok(CapVerdict::No { witness: format!("homothety not surjective: Hom(C, C) has an extra generator in degree {}", bad.deg) });
    }
    ext_vanishes(c, c, cap, "C, C")
}

/// Why the evaluation map `M → M^{CC}` is not an isomorphism.
fn evaluation_failure(m: &GradedModule, c: &GradedModule) -> Result<Option<String>> {
    let ring = &m.ring;
    let g = c.num_generators();
    let dual = crate::homological::hom_module(m, c)?.present();
    let b = dual.module.num_generators();
    if b == 0 {
        return Ok((!m.is_zero()).then(|| "M^C = 0 while M ≠ 0".to_string()));
    }
    let bidual = crate::homological::hom_module(&dual.module, c)?;
    // m_l ↦ (φ_k(m_l))_k
    let images: Vec<Column> = (0..m.num_generators())
        .map(|l| {
            let mut col = vec![Poly::zero(); b * g];
            for (k, rep) in dual.representatives.iter().enumerate() {
                for j in 0..g {
                    col[k * g + j] = rep.col[l * g + j].clone();
                }
            }
            col
        })
        .collect();
    let target = GradedModule::from_elems(ring.clone(), bidual.ambient.shifts.clone(), bidual.rels.clone());
    let ev = ModuleMap::new(m.clone(), target, images.clone())?;
    let kernel = ev.kernel();
    if let Some(k) = kernel.nonzero_generators().first() {
        return Ok(Some(format!("M → M^CC not injective: kernel element in degree {}", k.deg)));
    }
    let mut span: Vec<Elem> = ev
        .images
        .iter()
        .zip(&m.shifts)
        .map(|(col, s)| Elem { col: col.clone(), deg: s.clone() })
        .collect();
    span.extend(bidual.rels.iter().cloned());
    if let Some(x) = bidual.gens.iter().find(|x| !bidual.ambient.contains(&span, x)) {
        return Ok(Some(format!("M → M^CC not surjective: M^CC has an element of degree {} outside the image", x.deg)));
    }
    Ok(None)
}

/// `M ≅ M^{CC}` through evaluation, and `Ext^i(M, C) = Ext^i(M^C, C) = 0`
/// for `1 ≤ i ≤ cap`.
pub fn is_totally_c_reflexive(m: &GradedModule, c: &GradedModule, cap: usize) -> Result<CapVerdict> {
    check_rings(&[c], &m.ring)?;
    if let Some(w) = evaluation_failure(m, c)? {
        return Ok(CapVerdict::No { witness: w });
    }
    let first = ext_vanishes(m, c, cap, "M, C")?;
    if !first.is_yes() {
        return Ok(first);
    }
    let dual = present_over(&crate::homological::hom_module(m, c)?, &m.ring)?;
    let second = ext_vanishes(&dual, c, cap, "M^C, C")?;
    Ok(match (first, second) {
        (CapVerdict::YesToCap { certified: a, .. }, CapVerdict::YesToCap { certified: b, .. }) => {
            CapVerdict::YesToCap { cap, certified: a && b }
        }
        (_, no) => no,
    })
}

/// A prime of `R` generated by variables, stored as sorted indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MonomialPrime {
    pub vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn ideal(&self, ring: &RingRef) -> Ideal {
        Ideal::new(ring, self.vars.iter().map(|&v| ring.poly.var(v)).collect()).unwrap()
    }

    pub fn format(&self, ring: &RingRef) -> String {
        if self.vars.is_empty() {
            return "(0)".to_string();
        }
        let names: Vec<&str> = self.vars.iter().map(|&v| ring.poly.names[v].as_str()).collect();
        format!("({})", names.join(", "))
    }

    /// `J ⊆ P` for the monomial relations `J`, which makes `P/J` prime.
    fn is_prime_in(&self, ring: &RingRef) -> bool {
        let mask: u32 = self.vars.iter().map(|&v| 1u32 << v).sum();
        ring.relation_gb.iter().all(|g| g.terms.iter().all(|(m, _)| m.support_mask() & mask != 0))
    }

    /// Whether every generator of `a` lies in `P`.
    fn contains(&self, a: &Ideal) -> bool {
        let p = self.ideal(&a.ring);
        p.contains_ideal(a)
    }
}

/// Associated primes of a finely graded module: the monomial primes `P`
/// with `(0 :_M P) ≠ 0` faithful over `R/P`.
pub fn ass_monomial(m: &GradedModule) -> Result<Vec<MonomialPrime>> {
    let ring = &m.ring;
    if ring.grading != Grading::Fine {
        return Err(Error::NotFineGraded);
    }
    let n = ring.nvars();
    let mut candidates: Vec<MonomialPrime> = (0u32..(1 << n))
        .map(|mask| MonomialPrime { vars: (0..n).filter(|v| mask & (1 << v) != 0).collect() })
        .filter(|p| p.is_prime_in(ring))
        .collect();
    candidates.sort_by_key(|p| (p.vars.len(), p.vars.clone()));
    let mut out = Vec::new();
    for p in candidates {
        let gens: Vec<Poly> = p.vars.iter().map(|&v| ring.poly.var(v)).collect();
        let socle = present_over(&colon_submodule(m, &gens), ring)?;
        if socle.is_zero() {
            continue;
        }
        if p.contains(&annihilator(&socle)) {
            out.push(p);
        }
    }
    Ok(out)
}

/// `P ∈ Supp M`, i.e. `ann M ⊆ P`.
fn in_support(p: &MonomialPrime, m: &GradedModule) -> bool {
    !m.is_zero() && p.contains(&annihilator(m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HunekeReport {
    pub applicable: bool,
    /// `c = cd_I N`.
    pub c: usize,
    pub h: Option<ExtendedNat>,
    /// `Supp M ∩ Ass H^c_I(N)`.
    pub ass: Vec<MonomialPrime>,
    pub finite: bool,
    /// `Ass H^c_I(M, N)` computed from the module itself, when it is finite.
    pub direct: Option<Vec<MonomialPrime>>,
    pub agrees: Option<bool>,
}

/// Associated primes of `H^c_I(M, N)` for `c = cd_I N` when `N` is
/// Cohen-Macaulay with respect to `I` and `c = 0`, or `I = m` with
/// `c ≥ max(1, h)`.
pub fn huneke_check(i: &Ideal, m: &GradedModule, n: &GradedModule) -> Result<HunekeReport> {
    check_rings(&[m, n], &i.ring)?;
    let ring = &i.ring;
    let grade = grade_via_ext(i, n, ring.nvars() + 1)?;
    let cd = cd_support_in(i, n, &DegreeBox::default_for(n))?.value;
    let c = match (&grade, &cd) {
        (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) if a == b => *a,
        _ => {
            return Err(Error::HypothesisNotMet(format!(
                "N is not certified Cohen-Macaulay with respect to I (depth {grade}, cd {cd})"
            )))
        }
    };
    if c == 0 {
        let gamma = present_over(&torsion_submodule(i, n)?, ring)?;
        let ass: Vec<MonomialPrime> =
            ass_monomial(&gamma)?.into_iter().filter(|p| in_support(p, m)).collect();
        let h0 = present_over(&crate::homological::hom_module(m, &gamma)?, ring)?;
        let direct = ass_monomial(&h0)?;
        let agrees = Some(direct == ass);
        return Ok(HunekeReport { applicable: true, c, h: None, ass, finite: true, direct: Some(direct), agrees });
    }
    if i.is_maximal_graded() {
        let h = h_invariant(m, n, PairCaps::for_ring(ring).ext)?;
        let ok = matches!(h, ExtendedNat::Finite(hv) if c >= hv.max(1)) || h == ExtendedNat::NegInfinite;
        if !ok {
            return Err(Error::HypothesisNotMet(format!("c = {c} is not ≥ max(1, h) with h = {h}")));
        }
        // H^c(M, N) ≅ Hom(M, H^c_m(N)) = D(M ⊗ K^c), supported at m only
        let k = present_over(&crate::local_cohomology::deficiency(c, n)?.module, ring)?;
        let nonzero = !m.tensor(&k).is_zero();
        let ass = if nonzero { vec![MonomialPrime { vars: (0..ring.nvars()).collect() }] } else { vec![] };
        return Ok(HunekeReport { applicable: true, c, h: Some(h), ass, finite: true, direct: None, agrees: None });
    }
    Err(Error::HypothesisNotMet(format!("c = {c} > 0 is only handled for the maximal graded ideal")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "snake_case")]
pub enum ConditionOutcome {
    Pass,
    Fail(String),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub outcome: ConditionOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free,
    NotFree(String),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    pub conditions: Vec<Condition>,
    pub verdict: FreenessVerdict,
}

/// Minors of a polynomial matrix are only enumerated up to this count.
const MAX_MINORS: usize = 4096;

fn determinant(ring: &RingRef, rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Poly::zero();
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Poly>> =
            rows[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = ring.mul(&rows[0][c], &determinant(ring, &sub));
        acc = if c % 2 == 0 { ring.poly.add(&acc, &term) } else { ring.poly.sub(&acc, &term) };
    }
    acc
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Fitting ideal `F_k`: the `(g-k)`-minors of the `g × r` relation matrix.
fn fitting_ideal(m: &GradedModule, k: usize) -> Option<Ideal> {
    let ring = &m.ring;
    let g = m.num_generators();
    if k >= g {
        return Some(Ideal::unit(ring));
    }
    let size = g - k;
    let r = m.relations.len();
    if binomial(g, size).saturating_mul(binomial(r, size)) > MAX_MINORS {
        return None;
    }
    let rows = crate::local_cohomology::subsets_of_size(g, size);
    let cols = crate::local_cohomology::subsets_of_size(r, size);
    let mut gens = Vec::new();
    for rs in &rows {
        for cs in &cols {
            let mat: Vec<Vec<Poly>> =
                rs.iter().map(|&a| cs.iter().map(|&b| m.relations[b].col[a].clone()).collect()).collect();
            gens.push(determinant(ring, &mat));
        }
    }
    Some(Ideal::new(ring, gens).ok()?.minimalized())
}

/// Evaluates the freeness conditions (reflexivity, `e(M, R) = 0`, the dual
/// being maximal Cohen-Macaulay and of Gorenstein dimension zero to the cap,
/// `Ext^j(M, M) = 0` for `1 ≤ j ≤ d-1`, local freeness in codimension one)
/// over a Cohen-Macaulay ring of dimension `d ≥ 2`.
pub fn ar_certificate(m: &GradedModule, cap: usize) -> Result<FreenessCertificate> {
    let ring = &m.ring;
    let r = GradedModule::ring_module(ring);
    let d = krull_dimension(&Ideal::zero(ring))?;
    let mut conditions = Vec::new();
    let mut push = |name: &str, outcome: ConditionOutcome| conditions.push(Condition { name: name.into(), outcome });
    if d < 2 || !is_cohen_macaulay(&r)? {
        push("ring is Cohen-Macaulay of dimension at least 2", ConditionOutcome::Fail(format!("dim R = {d}")));
        return Ok(FreenessCertificate { conditions, verdict: FreenessVerdict::Inconclusive });
    }
    push("ring is Cohen-Macaulay of dimension at least 2", ConditionOutcome::Pass);
    let from_cap = |v: CapVerdict| match v {
        CapVerdict::YesToCap { .. } => ConditionOutcome::Pass,
        CapVerdict::No { witness } => ConditionOutcome::Fail(witness),
    };

    let pruned = m.prune().module;
    push(
        "reflexive: M → M** is an isomorphism",
        match evaluation_failure(&pruned, &r)? {
            None => ConditionOutcome::Pass,
            Some(w) => ConditionOutcome::Fail(w),
        },
    );
    push("e(M, R) = 0 up to the cap", from_cap(ext_vanishes(&pruned, &r, cap, "M, R")?));
    let dual = present_over(&crate::homological::hom_module(&pruned, &r)?, ring)?;
    push(
        "M* is maximal Cohen-Macaulay",
        if dual.is_zero() {
            ConditionOutcome::Fail("M* = 0".into())
        } else {
            match depth(&dual)? {
                ExtendedNat::Finite(t) if t == d => ConditionOutcome::Pass,
                other => ConditionOutcome::Fail(format!("depth M* = {other} < {d}")),
            }
        },
    );
    let bidual = present_over(&crate::homological::hom_module(&dual, &r)?, ring)?;
    let g1 = ext_vanishes(&dual, &r, cap, "M*, R")?;
    let g2 = ext_vanishes(&bidual, &r, cap, "M**, R")?;
    push("M* has Gorenstein dimension zero up to the cap", if g1.is_yes() { from_cap(g2) } else { from_cap(g1) });
    let mut self_ext = ConditionOutcome::Pass;
    if !pruned.is_zero() {
        let mut res = Resolution::start(&pruned);
        res.extend(d);
        for j in 1..d {
            if !ext_with(&res, j, &pruned)?.is_zero() {
                self_ext = ConditionOutcome::Fail(format!("Ext^{j}(M, M) ≠ 0"));
                break;
            }
        }
    }
    push("Ext^j(M, M) = 0 for 1 ≤ j ≤ d-1", self_ext);
    push("free in codimension 1 (Fitting ideal of the non-free locus has codim ≥ 2)", free_in_codim_one(&pruned, d));

    let failed = conditions.iter().find_map(|c| match &c.outcome {
        ConditionOutcome::Fail(w) => Some(format!("{}: {w}", c.name)),
        _ => None,
    });
    let verdict = match failed {
        Some(w) => FreenessVerdict::NotFree(w),
        None if pruned.relations.is_empty() => FreenessVerdict::Free,
        None => FreenessVerdict::Inconclusive,
    };
    Ok(FreenessCertificate { conditions, verdict })
}

/// `M_P` is free whenever `F_r ⊄ P` for the least `r` with `F_r ≠ 0`, so
/// the non-free locus lies in `V(F_r)`.
fn free_in_codim_one(m: &GradedModule, d: usize) -> ConditionOutcome {
    for k in 0..=m.num_generators() {
        let Some(f) = fitting_ideal(m, k) else {
            return ConditionOutcome::Unknown(format!("too many minors for F_{k}"));
        };
        if f.is_zero() {
            continue;
        }
        return match krull_dimension(&f) {
            Err(_) => ConditionOutcome::Pass,
            Ok(dim) if d - dim >= 2 => ConditionOutcome::Pass,
            Ok(dim) => ConditionOutcome::Fail(format!("F_{k} = {} has codimension {}", f.format(), d - dim)),
        };
    }
    unreachable!("F_g is the unit ideal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderKind;
    use crate::ring::Ring;

    fn s2() -> RingRef {
        Ring::from_text(&["x", "y"], &[], Grading::Fine, OrderKind::Grevlex).unwrap()
    }

    fn rxy() -> RingRef {
        Ring::from_text(&["x", "y"], &["x*y"], Grading::Fine, OrderKind::Grevlex).unwrap()
    }

    fn cyclic(r: &RingRef, gens: &[&str]) -> GradedModule {
        let ps: Vec<Poly> = gens.iter().map(|g| r.parse(g).unwrap()).collect();
        GradedModule::cyclic(r, &ps).unwrap()
    }

    fn y_r(r: &RingRef) -> GradedModule {
        GradedModule::new(r.clone(), vec![Degree(vec![0, 1])], vec![vec![r.parse("x").unwrap()]]).unwrap()
    }

    fn prime(vars: &[usize]) -> MonomialPrime {
        MonomialPrime { vars: vars.to_vec() }
    }

    #[test]
    fn depth_pair_examples() {
        let r = rxy();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(depth_pair(&x, &cyclic(&r, &["x"]), &y_r(&r)).unwrap(), ExtendedNat::Finite(0));
        let s = s2();
        let m = Ideal::maximal(&s);
        let sx = cyclic(&s, &["x"]);
        assert_eq!(depth_pair(&m, &sx, &GradedModule::ring_module(&s)).unwrap(), ExtendedNat::Finite(2));
        // M = R recovers depth_I N
        let n = y_r(&r);
        assert_eq!(depth_pair(&x, &GradedModule::ring_module(&r), &n).unwrap(), grade_via_ext(&x, &n, 3).unwrap());
    }

    #[test]
    fn alternating_example_pair() {
        let r = rxy();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let m = cyclic(&r, &["x"]);
        let n = y_r(&r);
        let rep = cd_pair(&x, &m, &n).unwrap();
        assert_eq!(rep.strategy, CdStrategy::AnnihilatedExt);
        match &rep.cd.value {
            ExtendedNat::Infinite(Certificate::Periodicity { period: 2, .. }) => {}
            other => panic!("unexpected cd {other:?}"),
        }
        assert_eq!(rep.depth, ExtendedNat::Finite(0));
        assert_eq!(rep.verdict, CmVerdict::No);
        assert_eq!(is_cm_pair(&x, &GradedModule::ring_module(&r), &n).unwrap(), CmVerdict::Yes(0));
    }

    #[test]
    fn glc_constant_when_im_vanishes() {
        let r = rxy();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let window = DegreeBox::cube(2, -2, 2);
        let t = glc_truncated(&x, &cyclic(&r, &["x"]), &y_r(&r), 2, 3, &window).unwrap();
        assert!(t.exact);
        assert_eq!(t.stabilized_at, Some(1));
        assert!(t.tables.iter().all(|row| row.iter().sum::<usize>() == 1));
    }

    #[test]
    fn glc_stabilizes_to_shifted_local_cohomology() {
        let s = s2();
        let m = Ideal::maximal(&s);
        let window = DegreeBox::cube(2, -2, 0);
        let t = glc_truncated(&m, &cyclic(&s, &["x"]), &GradedModule::ring_module(&s), 2, 4, &window).unwrap();
        assert!(!t.exact);
        assert_eq!(t.stabilized_at, Some(2));
        let route = exact_route(&m, &cyclic(&s, &["x"]), &GradedModule::ring_module(&s), 6).unwrap().unwrap();
        assert_eq!(route.table(2, &window).unwrap().unwrap(), t.last());
    }

    #[test]
    fn three_strategies_agree() {
        let s = s2();
        let m = Ideal::maximal(&s);
        let rep = cd_pair(&m, &cyclic(&s, &["x"]), &GradedModule::ring_module(&s)).unwrap();
        assert_eq!(rep.cd.value, ExtendedNat::Finite(2));
        assert_eq!(rep.strategy, CdStrategy::SingleExt);
        let strategies: Vec<CdStrategy> = rep.cross_checks.iter().map(|c| c.strategy).collect();
        assert_eq!(strategies, vec![CdStrategy::SingleExt, CdStrategy::CMPlusH, CdStrategy::CMLocalFormula]);
        assert!(rep.all_agree && rep.cross_checks.iter().all(|c| c.agrees == Some(true)));
        assert_eq!(rep.verdict, CmVerdict::Yes(2));
        assert_eq!(rep.h, Some(ExtendedNat::Finite(0)));
        let rr = cd_pair(&m, &GradedModule::ring_module(&s), &GradedModule::ring_module(&s)).unwrap();
        assert_eq!((rr.depth, rr.cd.value, rr.verdict), (ExtendedNat::Finite(2), ExtendedNat::Finite(2), CmVerdict::Yes(2)));
    }

    #[test]
    fn h_examples() {
        let s = s2();
        let cap = 6;
        assert_eq!(h_invariant(&cyclic(&s, &["x"]), &GradedModule::ring_module(&s), cap).unwrap(), ExtendedNat::Finite(0));
        let r = rxy();
        let rr = GradedModule::ring_module(&r);
        assert_eq!(h_invariant(&cyclic(&r, &["x"]), &rr, cap).unwrap(), ExtendedNat::Finite(0));
        assert_eq!(h_invariant(&rr, &y_r(&r), cap).unwrap(), ExtendedNat::Finite(0));
        let m = Ideal::maximal(&r);
        assert_eq!(cd_pair(&m, &cyclic(&r, &["x"]), &rr).unwrap().cd.value, ExtendedNat::Finite(1));
    }

    #[test]
    fn cci_examples() {
        let s = s2();
        assert_eq!(is_cci(&Ideal::parse(&s, &["x"]).unwrap()).unwrap(), Some(true));
        assert_eq!(is_cci(&Ideal::maximal(&s)).unwrap(), Some(true));
        let r = rxy();
        assert_eq!(is_cci(&Ideal::parse(&r, &["x"]).unwrap()).unwrap(), Some(false));
    }

    #[test]
    fn semidualizing_and_reflexive() {
        let s = s2();
        let ss = GradedModule::ring_module(&s);
        assert!(is_semidualizing(&ss, 6).unwrap().is_yes());
        let k = cyclic(&s, &["x", "y"]);
        assert!(!is_semidualizing(&k, 6).unwrap().is_yes());
        assert!(is_totally_c_reflexive(&ss, &ss, 4).unwrap().is_yes());
        assert!(!is_totally_c_reflexive(&k, &ss, 4).unwrap().is_yes());
    }

    #[test]
    fn ass_examples() {
        let s = s2();
        assert_eq!(ass_monomial(&GradedModule::ring_module(&s)).unwrap(), vec![prime(&[])]);
        let r = rxy();
        assert_eq!(ass_monomial(&GradedModule::ring_module(&r)).unwrap(), vec![prime(&[0]), prime(&[1])]);
        assert_eq!(ass_monomial(&cyclic(&s, &["x^2", "x*y"])).unwrap(), vec![prime(&[0]), prime(&[0, 1])]);
    }

    #[test]
    fn huneke_examples() {
        let r = rxy();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let rep = huneke_check(&x, &cyclic(&r, &["x"]), &y_r(&r)).unwrap();
        assert!(rep.applicable && rep.finite);
        assert_eq!(rep.ass, vec![prime(&[0])]);
        assert_eq!(rep.agrees, Some(true));
        let rep = huneke_check(&x, &GradedModule::ring_module(&r), &y_r(&r)).unwrap();
        assert_eq!(rep.ass, vec![prime(&[0])]);
        let s = s2();
        let y = Ideal::parse(&s, &["y"]).unwrap();
        let sy = cyclic(&s, &["y"]);
        assert_eq!(huneke_check(&y, &sy, &sy).unwrap().ass, vec![prime(&[1])]);
    }

    #[test]
    fn freeness_certificates() {
        let s = s2();
        let z = s.zero_degree();
        let free = GradedModule::free(s.clone(), vec![z.clone(), z]);
        assert_eq!(ar_certificate(&free, 4).unwrap().verdict, FreenessVerdict::Free);
        let max = Ideal::maximal(&s).as_module();
        match ar_certificate(&max, 4).unwrap().verdict {
            FreenessVerdict::NotFree(w) => assert!(w.starts_with("reflexive"), "{w}"),
            v => panic!("unexpected {v:?}"),
        }
        assert!(matches!(ar_certificate(&cyclic(&s, &["x"]), 4).unwrap().verdict, FreenessVerdict::NotFree(_)));
    }
}
