//! Minimal graded free resolutions, Ext, Tor and Hom as subquotients, and
//! the suprema `pd` and `e` with certificates.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graded::{map_from_elems, Elem, FreeModule};
use crate::module::{GradedModule, ModuleMap, Subquotient};
use crate::monomial::Degree;
use crate::poly::Poly;

/// Why an infinite value is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// `coker d_{start+2} ≅ coker d_start (-shift)`, so the resolution repeats
    /// with the given period from `start` on.
    Periodicity { start: usize, period: usize, shift: Vec<i32> },
    /// The module vanishes modulo the ideal, so every Ext against the
    /// quotient vanishes.
    Torsion { detail: String },
    /// `Ω^start M ≅ ⊕ (R/a)(-s)` with `a² = 0` and `a ≅ ⊕ (R/a)(-t)`, so
    /// every later syzygy is free over `R/a` and index `start + 1` decides
    /// the vanishing of all higher Ext and Tor.
    QuotientFree { start: usize, ideal: String },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Periodicity { period, .. } => write!(f, "period {period}"),
            Certificate::Torsion { detail } => write!(f, "{detail}"),
            Certificate::QuotientFree { start, ideal } => write!(f, "syzygy {start} free over R/{ideal}"),
        }
    }
}

/// Values of `depth`, `cd`, `e`, `h` and `pd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedNat {
    Finite(usize),
    Infinite(Certificate),
    /// The value is at least this and was not resolved within the caps.
    AtLeast(usize),
    /// Supremum of the empty set: the relevant modules all vanish.
    NegInfinite,
}

impl ExtendedNat {
    pub fn finite(&self) -> Option<usize> {
        match self {
            ExtendedNat::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedNat::Infinite(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ExtendedNat::Finite(_) => "finite",
            ExtendedNat::Infinite(_) => "infinite",
            ExtendedNat::AtLeast(_) => "at_least",
            ExtendedNat::NegInfinite => "neg_infinite",
        }
    }

    /// Adds a finite offset; `NegInfinite` absorbs.
    pub fn plus(&self, k: usize) -> ExtendedNat {
        match self {
            ExtendedNat::Finite(n) => ExtendedNat::Finite(n + k),
            ExtendedNat::AtLeast(n) => ExtendedNat::AtLeast(n + k),
            other => other.clone(),
        }
    }

    /// `self ≤ other` when both are decided; `None` otherwise.
    pub fn le(&self, other: &ExtendedNat) -> Option<bool> {
        use ExtendedNat::*;
        match (self, other) {
            (NegInfinite, _) | (_, Infinite(_)) => Some(true),
            (Infinite(_), Finite(_)) | (Finite(_), NegInfinite) | (Infinite(_), NegInfinite) => Some(false),
            (Finite(a), Finite(b)) => Some(a <= b),
            (Finite(a), AtLeast(b)) if a <= b => Some(true),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinite(c) => write!(f, "Infinite({c})"),
            ExtendedNat::AtLeast(n) => write!(f, "AtLeast({n})"),
            ExtendedNat::NegInfinite => write!(f, "-Infinite"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("kind", self.kind())?;
        match self {
            ExtendedNat::Finite(n) | ExtendedNat::AtLeast(n) => m.serialize_entry("value", n)?,
            _ => m.serialize_entry("value", &Option::<usize>::None)?,
        }
        match self {
            ExtendedNat::Infinite(c) => m.serialize_entry("certificate", c)?,
            _ => m.serialize_entry("certificate", &Option::<Certificate>::None)?,
        }
        m.end()
    }
}

/// `0 ← F_0 ← F_1 ← … ← F_len`, minimal, with `maps[k]` the columns of
/// `d_{k+1}: F_{k+1} → F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: GradedModule,
    pub shifts: Vec<Vec<Degree>>,
    pub maps: Vec<Vec<Elem>>,
    pub cap: usize,
    /// `F_{len+1} = 0`: the resolution is finite and complete.
    pub complete: bool,
    pub periodicity: Option<Certificate>,
    /// A [`Certificate::QuotientFree`] found by [`Resolution::extend_decided`].
    pub tail: Option<Certificate>,
}

impl Resolution {
    /// Number of maps computed.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    pub fn free(&self, k: usize) -> FreeModule {
        let shifts = self.shifts.get(k).cloned().unwrap_or_default();
        FreeModule::new(self.module.ring.clone(), shifts)
    }

    /// `d_k` for `k ≥ 1`; empty past the end of a complete resolution.
    pub fn differential(&self, k: usize) -> Option<&[Elem]> {
        if k == 0 {
            return None;
        }
        match self.maps.get(k - 1) {
            Some(m) => Some(m),
            None if self.complete => Some(&[]),
            None => None,
        }
    }

    /// `d_k ∘ d_{k+1} = 0` for all computed `k`.
    pub fn is_complex(&self) -> bool {
        for k in 1..self.maps.len() {
            let fm = map_from_elems(&self.free(k - 1), &self.maps[k - 1]);
            for c in &self.maps[k] {
                if !FreeModule::is_zero(&fm.apply(&c.col)) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether any differential has a unit entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.iter().all(|c| c.col.iter().all(|p| !p.is_unit())))
    }

    /// Index `j` with `Ext^i ≅ Ext^j` (up to shift) for Ext computations
    /// beyond the computed length.
    fn reduce_index(&self, i: usize) -> usize {
        if let Some(Certificate::Periodicity { start, period, .. }) = &self.periodicity {
            let mut j = i;
            while j >= start + 2 && j + 1 > self.maps.len() {
                j -= period;
            }
            return j;
        }
        i
    }
}

/// Minimal graded free resolution computed to `cap` maps.
pub fn free_resolution(m: &GradedModule, cap: usize) -> Resolution {
    let compute = || {
        let mut res = Resolution::start(m);
        res.extend(cap);
        res
    };
    match crate::cache::active() {
        Some(c) => c.resolution(m, "plain", cap, compute),
        None => compute(),
    }
}

/// A resolution extended with [`Resolution::extend_decided`].
pub fn resolve_decided(m: &GradedModule, cap: usize) -> Resolution {
    let compute = || {
        let mut res = Resolution::start(m);
        res.extend_decided(cap);
        res
    };
    match crate::cache::active() {
        Some(c) => c.resolution(m, "decided", cap, compute),
        None => compute(),
    }
}

impl Resolution {
    /// The resolution with no maps computed yet.
    pub fn start(m: &GradedModule) -> Resolution {
        let pruned = m.prune().module;
        let complete = pruned.relations.is_empty();
        Resolution {
            shifts: vec![pruned.shifts.clone()],
            module: pruned,
            maps: Vec::new(),
            cap: 0,
            complete,
            periodicity: None,
            tail: None,
        }
    }

    /// Computes further maps until `cap` maps exist, the resolution stops,
    /// or a periodicity certificate is found.
    pub fn extend(&mut self, cap: usize) {
        let ring = self.module.ring.clone();
        let hypersurface = (ring.relation_gb.len() == 1).then(|| ring.poly_degree(&ring.relation_gb[0]).unwrap());
        self.cap = self.cap.max(cap);
        while !self.complete && self.periodicity.is_none() && self.maps.len() < cap {
            let next = match self.maps.last() {
                None => self.module.relations.clone(),
                Some(last) => {
                    let k = self.maps.len();
                    map_from_elems(&FreeModule::new(ring.clone(), self.shifts[k - 1].clone()), last).kernel()
                }
            };
            if next.is_empty() {
                self.complete = true;
                break;
            }
            self.shifts.push(next.iter().map(|e| e.deg.clone()).collect());
            self.maps.push(next);
            let top = self.maps.len();
            if let Some(delta) = &hypersurface {
                if top >= 3 && periodic_step(&ring, &self.shifts, &self.maps, top - 2, delta) {
                    self.periodicity =
                        Some(Certificate::Periodicity { start: top - 2, period: 2, shift: delta.0.clone() });
                }
            }
        }
    }
}

/// Checks `coker d_{k+2} ≅ coker d_k (-δ)` through a degree-respecting
/// permutation of the target bases under which the column spans coincide.
fn periodic_step(
    ring: &crate::ring::RingRef,
    shifts: &[Vec<Degree>],
    maps: &[Vec<Elem>],
    k: usize,
    delta: &Degree,
) -> bool {
    let (lo_t, hi_t) = (&shifts[k - 1], &shifts[k + 1]);
    let (lo, hi) = (&maps[k - 1], &maps[k + 1]);
    if lo_t.len() != hi_t.len() || lo.len() != hi.len() {
        return false;
    }
    let lo_free = FreeModule::new(ring.clone(), lo_t.clone());
    let mut perms = Vec::new();
    permutations_matching(hi_t, lo_t, delta, &mut vec![None; hi_t.len()], 0, &mut perms, 720);
    for perm in perms {
        // row r of d_{k+2} goes to row perm[r] of d_k
        let moved: Vec<Elem> = hi
            .iter()
            .map(|c| {
                let mut col = vec![Poly::zero(); c.col.len()];
                for (r, p) in c.col.iter().enumerate() {
                    col[perm[r]] = p.clone();
                }
                Elem { col, deg: c.deg.sub(delta) }
            })
            .collect();
        if moved.iter().all(|e| lo_free.contains(lo, e)) && lo.iter().all(|e| lo_free.contains(&moved, e)) {
            return true;
        }
    }
    false
}

fn permutations_matching(
    from: &[Degree],
    to: &[Degree],
    delta: &Degree,
    chosen: &mut Vec<Option<usize>>,
    r: usize,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if r == from.len() {
        out.push(chosen.iter().map(|c| c.unwrap()).collect());
        return;
    }
    let want = from[r].sub(delta);
    for (t, d) in to.iter().enumerate() {
        if *d == want && !chosen.contains(&Some(t)) {
            chosen[r] = Some(t);
            permutations_matching(from, to, delta, chosen, r + 1, out, limit);
            chosen[r] = None;
        }
    }
}

/// `Hom(F, N) = ⊕_l N(s_l)` for `F = ⊕ R(-s_l)`, block `l` first.
fn hom_free(shifts: &[Degree], n: &GradedModule) -> GradedModule {
    let mut out = GradedModule::zero(&n.ring);
    for s in shifts {
        out = out.direct_sum(&n.shift(&s.neg()));
    }
    out
}

/// `F ⊗ N = ⊕_l N(-s_l)`.
fn tensor_free(shifts: &[Degree], n: &GradedModule) -> GradedModule {
    let mut out = GradedModule::zero(&n.ring);
    for s in shifts {
        out = out.direct_sum(&n.shift(s));
    }
    out
}

/// The map `Hom(F_a, N) → Hom(F_b, N)` induced by `d: F_b → F_a`.
fn hom_induced(d: &[Elem], from: &GradedModule, to: &GradedModule, g: usize) -> ModuleMap {
    let a = if g == 0 { 0 } else { from.num_generators() / g };
    let mut images = Vec::with_capacity(a * g);
    for l in 0..a {
        for j in 0..g {
            let mut col = vec![Poly::zero(); to.num_generators()];
            for (k, c) in d.iter().enumerate() {
                col[k * g + j] = c.col[l].clone();
            }
            images.push(col);
        }
    }
    ModuleMap { source: from.clone(), target: to.clone(), images }
}

/// The map `F_b ⊗ N → F_a ⊗ N` induced by `d: F_b → F_a`.
fn tensor_induced(d: &[Elem], from: &GradedModule, to: &GradedModule, g: usize) -> ModuleMap {
    let mut images = Vec::with_capacity(d.len() * g);
    for c in d {
        for j in 0..g {
            let mut col = vec![Poly::zero(); to.num_generators()];
            for (l, p) in c.col.iter().enumerate() {
                col[l * g + j] = p.clone();
            }
            images.push(col);
        }
    }
    ModuleMap { source: from.clone(), target: to.clone(), images }
}

fn check_same_ring(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if m.ring != n.ring {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

fn cocycles(res: &Resolution, i: usize, n: &GradedModule) -> Result<(GradedModule, Subquotient)> {
    let g = n.num_generators();
    let fi = &res.shifts.get(i).cloned().unwrap_or_default();
    let src = hom_free(fi, n);
    let next = res
        .differential(i + 1)
        .ok_or(Error::ResolutionTooShort { index: i, needed: i + 1, cap: res.cap })?;
    let gens = if next.is_empty() {
        (0..src.num_generators()).map(|j| src.free_module().basis_vector(j)).collect()
    } else {
        let tgt = hom_free(&res.shifts[i + 1], n);
        hom_induced(next, &src, &tgt, g).kernel().gens
    };
    let sq = Subquotient { ambient: src.free_module(), gens, rels: src.relations.clone() };
    Ok((src, sq))
}

/// `Ext^i(M, N)` from a resolution of `M`.
pub fn ext_with(res: &Resolution, i: usize, n: &GradedModule) -> Result<Subquotient> {
    check_same_ring(&res.module, n)?;
    let i = res.reduce_index(i);
    if i >= res.shifts.len() && res.complete {
        return Ok(Subquotient { ambient: FreeModule::new(n.ring.clone(), vec![]), gens: vec![], rels: vec![] });
    }
    let (src, mut sq) = cocycles(res, i, n)?;
    if i >= 1 {
        let prev = hom_free(&res.shifts[i - 1], n);
        let d = res.differential(i).unwrap();
        let im = hom_induced(d, &prev, &src, n.num_generators());
        for (c, s) in im.images.iter().zip(&prev.shifts) {
            if !FreeModule::is_zero(c) {
                sq.rels.push(Elem { col: c.clone(), deg: s.clone() });
            }
        }
    }
    Ok(sq)
}

/// Default resolution cap: `dim S + 4`.
pub fn default_cap(m: &GradedModule) -> usize {
    m.ring.nvars() + 4
}

pub fn ext(i: usize, m: &GradedModule, n: &GradedModule) -> Result<Subquotient> {
    check_same_ring(m, n)?;
    let res = free_resolution(m, (i + 1).max(2));
    ext_with(&res, i, n)
}

/// `Tor_i(M, N)` from a resolution of `M`.
pub fn tor_with(res: &Resolution, i: usize, n: &GradedModule) -> Result<Subquotient> {
    check_same_ring(&res.module, n)?;
    let i = res.reduce_index(i);
    let g = n.num_generators();
    if i >= res.shifts.len() && res.complete {
        return Ok(Subquotient { ambient: FreeModule::new(n.ring.clone(), vec![]), gens: vec![], rels: vec![] });
    }
    let src = tensor_free(&res.shifts[i], n);
    let gens = if i == 0 {
        (0..src.num_generators()).map(|j| src.free_module().basis_vector(j)).collect()
    } else {
        let tgt = tensor_free(&res.shifts[i - 1], n);
        tensor_induced(res.differential(i).unwrap(), &src, &tgt, g).kernel().gens
    };
    let mut rels = src.relations.clone();
    let next = res
        .differential(i + 1)
        .ok_or(Error::ResolutionTooShort { index: i, needed: i + 1, cap: res.cap })?;
    if !next.is_empty() {
        let from = tensor_free(&res.shifts[i + 1], n);
        let im = tensor_induced(next, &from, &src, g);
        for (c, s) in im.images.iter().zip(&from.shifts) {
            if !FreeModule::is_zero(c) {
                rels.push(Elem { col: c.clone(), deg: s.clone() });
            }
        }
    }
    Ok(Subquotient { ambient: src.free_module(), gens, rels })
}

pub fn tor(i: usize, m: &GradedModule, n: &GradedModule) -> Result<Subquotient> {
    check_same_ring(m, n)?;
    let res = free_resolution(m, i + 1);
    tor_with(&res, i, n)
}

/// `Hom(M, N)` as a submodule of `⊕_l N(s_l)`: the tuple of images of the
/// generators of `M`.
pub fn hom_module(m: &GradedModule, n: &GradedModule) -> Result<Subquotient> {
    check_same_ring(m, n)?;
    let res = Resolution {
        module: m.clone(),
        shifts: vec![m.shifts.clone(), m.relations.iter().map(|e| e.deg.clone()).collect()],
        maps: vec![m.relations.clone()],
        cap: 1,
        complete: false,
        periodicity: None,
        tail: None,
    };
    Ok(cocycles(&res, 0, n)?.1)
}

/// Projective dimension: finite when the resolution stops within `cap`.
pub fn pd(m: &GradedModule, cap: usize) -> ExtendedNat {
    pd_of(&free_resolution(m, cap))
}

pub fn pd_of(res: &Resolution) -> ExtendedNat {
    if res.module.is_zero() {
        return ExtendedNat::NegInfinite;
    }
    if res.complete {
        return ExtendedNat::Finite(res.maps.len());
    }
    match &res.periodicity {
        Some(c) => ExtendedNat::Infinite(c.clone()),
        None => ExtendedNat::AtLeast(res.maps.len()),
    }
}

/// `e(M, N) = sup{i : Ext^i(M, N) ≠ 0}`.
pub fn e_sup(m: &GradedModule, n: &GradedModule, cap: usize) -> Result<ExtendedNat> {
    check_same_ring(m, n)?;
    if m.is_zero() || n.is_zero() {
        return Ok(ExtendedNat::NegInfinite);
    }
    e_sup_with(&resolve_decided(m, cap.max(1)), n)
}

pub fn e_sup_with(res: &Resolution, n: &GradedModule) -> Result<ExtendedNat> {
    if res.module.is_zero() || n.is_zero() {
        return Ok(ExtendedNat::NegInfinite);
    }
    sup_nonzero(res, |i| Ok(!ext_with(res, i, n)?.is_zero()))
}

/// `sup{p : Tor_p(M, N) ≠ 0}`, resolving `N` as well when the resolution of
/// `M` does not decide the tail.
pub fn tor_sup(m: &GradedModule, n: &GradedModule, cap: usize) -> Result<ExtendedNat> {
    check_same_ring(m, n)?;
    if m.is_zero() || n.is_zero() {
        return Ok(ExtendedNat::NegInfinite);
    }
    let mut first = ExtendedNat::AtLeast(0);
    for (a, b) in [(m, n), (n, m)] {
        let res = resolve_decided(a, cap.max(1));
        let v = sup_nonzero(&res, |i| Ok(!tor_with(&res, i, b)?.is_zero()))?;
        if !matches!(v, ExtendedNat::AtLeast(_)) {
            return Ok(v);
        }
        if let (ExtendedNat::AtLeast(x), ExtendedNat::AtLeast(y)) = (&first, &v) {
            first = ExtendedNat::AtLeast(*x.max(y));
        }
    }
    Ok(first)
}

/// Largest index with `nonzero`, using whatever the resolution certifies
/// about its tail.
fn sup_nonzero(res: &Resolution, nonzero: impl Fn(usize) -> Result<bool>) -> Result<ExtendedNat> {
    let scan_down = |top: usize| -> Result<ExtendedNat> {
        for i in (0..=top).rev() {
            if nonzero(i)? {
                return Ok(ExtendedNat::Finite(i));
            }
        }
        Ok(ExtendedNat::NegInfinite)
    };
    if res.complete {
        return scan_down(res.maps.len());
    }
    if let Some(Certificate::Periodicity { start, .. }) = &res.periodicity {
        let k = *start;
        if nonzero(k)? || nonzero(k + 1)? {
            return Ok(ExtendedNat::Infinite(res.periodicity.clone().unwrap()));
        }
        return if k == 0 { Ok(ExtendedNat::NegInfinite) } else { scan_down(k - 1) };
    }
    if let Some(Certificate::QuotientFree { start, .. }) = &res.tail {
        if nonzero(start + 1)? {
            return Ok(ExtendedNat::Infinite(res.tail.clone().unwrap()));
        }
        return scan_down(*start);
    }
    if res.maps.is_empty() {
        return Ok(ExtendedNat::AtLeast(0));
    }
    // index i is available for i < number of maps
    let top = res.maps.len() - 1;
    for i in (0..=top).rev() {
        if nonzero(i)? {
            return Ok(ExtendedNat::AtLeast(i));
        }
    }
    Ok(ExtendedNat::AtLeast(0))
}

/// Syzygies tried for a [`Certificate::QuotientFree`] tail.
const TAIL_TRIES: usize = 4;
/// Larger syzygies are not tested for a quotient-free tail.
const TAIL_MAX_GENERATORS: usize = 64;

impl Resolution {
    /// Like [`Resolution::extend`], but stops early once a tail certificate
    /// for `Ω^k` is found; index `k + 1` is then always computable.
    pub fn extend_decided(&mut self, cap: usize) {
        let mut k = 0;
        loop {
            self.extend((k + 2).min(cap));
            if self.complete || self.periodicity.is_some() || self.tail.is_some() {
                return;
            }
            if k + 2 > cap || self.maps.len() < k + 2 {
                break;
            }
            if k < TAIL_TRIES {
                self.tail = quotient_free_syzygy(self, k);
                if self.tail.is_some() {
                    return;
                }
            }
            k += 1;
        }
        self.extend(cap);
    }
}

/// Tests whether `Ω^k M = coker d_{k+1}` is free over `R/a` for
/// `a = ann Ω^k M`, with `a² = 0` and `a` itself free over `R/a`.
fn quotient_free_syzygy(res: &Resolution, k: usize) -> Option<Certificate> {
    let ring = res.module.ring.clone();
    let syz = GradedModule::from_elems(ring.clone(), res.shifts[k].clone(), res.maps.get(k)?.clone());
    if syz.num_generators() > TAIL_MAX_GENERATORS {
        return None;
    }
    let a = crate::groebner::annihilator(&syz);
    if a.is_zero() || a.is_unit() {
        return None;
    }
    for f in &a.gens {
        for g in &a.gens {
            if !ring.mul(f, g).is_zero() {
                return None;
            }
        }
    }
    let mut rels = ring.relations.clone();
    rels.extend(a.gens.iter().cloned());
    let quotient = ring.with_relations(rels);
    if !syz.change_ring(&quotient).ok()?.is_free() {
        return None;
    }
    let as_module = a.as_module();
    if !as_module.change_ring(&quotient).ok()?.is_free() {
        return None;
    }
    Some(Certificate::QuotientFree { start: k, ideal: a.format() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderKind;
    use crate::ring::{Grading, Ring, RingRef};

    fn d(v: &[i32]) -> Degree {
        Degree(v.to_vec())
    }

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

    fn window(n: usize, lo: i32, hi: i32) -> Vec<Degree> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i32>| (lo..=hi).map(move |a| [v.clone(), vec![a]].concat()))
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }

    #[test]
    fn koszul_resolution() {
        let s2 = s2();
        let k = cyclic(&s2, &["x", "y"]);
        let r = free_resolution(&k, 6);
        assert_eq!(r.betti(), vec![1, 2, 1]);
        assert!(r.complete && r.is_complex() && r.is_minimal());
        assert_eq!(pd(&k, 6), ExtendedNat::Finite(2));
        assert_eq!(pd(&GradedModule::ring_module(&s2), 6), ExtendedNat::Finite(0));
    }

    #[test]
    fn alternating_resolution_is_periodic() {
        let r = rxy();
        let m = cyclic(&r, &["x"]);
        let res = free_resolution(&m, 6);
        assert!(res.is_complex());
        assert_eq!(res.maps[0][0].col, vec![r.parse("x").unwrap()]);
        assert_eq!(res.maps[1][0].col[0].terms[0].0, r.parse("y").unwrap().terms[0].0);
        assert_eq!(
            res.periodicity,
            Some(Certificate::Periodicity { start: 1, period: 2, shift: vec![1, 1] })
        );
        assert!(pd(&m, 6).is_infinite());
        // without the certificate the resolution keeps alternating x, y
        let mut long = free_resolution(&m, 3);
        long.periodicity = None;
        assert_eq!(long.betti(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn ext_examples() {
        let r = rxy();
        let m = cyclic(&r, &["x"]);
        let n = GradedModule::new(r.clone(), vec![d(&[0, 1])], vec![vec![r.parse("x").unwrap()]]).unwrap();
        let e2 = ext(2, &m, &n).unwrap();
        let total: usize = window(2, -4, 4).iter().map(|w| e2.dim(w)).sum();
        assert_eq!(total, 1);
        // the class of y: degree (0,1) minus the shift (1,1) of F_2
        assert_eq!(e2.dim(&d(&[-1, 0])), 1);
        assert!(ext(1, &m, &n).unwrap().is_zero());

        let s2 = s2();
        let sx = cyclic(&s2, &["x"]);
        let s = GradedModule::ring_module(&s2);
        assert!(ext(0, &sx, &s).unwrap().is_zero());
        let e1 = ext(1, &sx, &s).unwrap();
        for w in window(2, -3, 3) {
            // Ext^1(S/x, S) ≅ (S/x)(1)
            assert_eq!(e1.dim(&w), sx.dim(&w.add(&d(&[1, 0]))), "{w}");
        }
        let e0 = ext(0, &GradedModule::ring_module(&r), &n).unwrap();
        for w in window(2, -1, 3) {
            assert_eq!(e0.dim(&w), n.dim(&w));
        }
    }

    #[test]
    fn tor_examples() {
        let s2 = s2();
        let a = cyclic(&s2, &["x"]);
        let b = cyclic(&s2, &["y"]);
        let t0 = tor(0, &a, &b).unwrap();
        assert_eq!(t0.dim(&d(&[0, 0])), 1);
        assert_eq!(t0.dim(&d(&[1, 0])), 0);
        let t1 = tor(1, &a, &a).unwrap();
        for w in window(2, -1, 3) {
            assert_eq!(t1.dim(&w), a.dim(&w.sub(&d(&[1, 0]))));
        }
        assert!(tor(1, &GradedModule::ring_module(&s2), &a).unwrap().is_zero());
    }

    #[test]
    fn hom_examples() {
        let s2 = s2();
        let sx = cyclic(&s2, &["x"]);
        let s = GradedModule::ring_module(&s2);
        assert!(hom_module(&sx, &s).unwrap().is_zero());
        let h = hom_module(&s, &sx).unwrap();
        for w in window(2, 0, 2) {
            assert_eq!(h.dim(&w), sx.dim(&w));
        }
    }

    #[test]
    fn e_sup_examples() {
        let s2 = s2();
        let sx = cyclic(&s2, &["x"]);
        let s = GradedModule::ring_module(&s2);
        assert_eq!(e_sup(&sx, &s, 6).unwrap(), ExtendedNat::Finite(1));
        assert_eq!(e_sup(&s, &sx, 6).unwrap(), ExtendedNat::Finite(0));
        let r = rxy();
        let m = cyclic(&r, &["x"]);
        let n = GradedModule::new(r.clone(), vec![d(&[0, 1])], vec![vec![r.parse("x").unwrap()]]).unwrap();
        assert!(e_sup(&m, &n, 6).unwrap().is_infinite());
        // Ext^i(R/x, R_xy) vanishes for i ≥ 1: the period is zero
        assert_eq!(e_sup(&m, &GradedModule::ring_module(&r), 6).unwrap(), ExtendedNat::Finite(0));
    }

    #[test]
    fn quotient_free_tail() {
        // m² = 0: k is free over R/m and m ≅ k², so Ext^1(k, k) decides the tail
        let r = Ring::from_text(&["x", "y"], &["x^2", "x*y", "y^2"], Grading::Fine, OrderKind::Grevlex).unwrap();
        let k = cyclic(&r, &["x", "y"]);
        match e_sup(&k, &k, 6).unwrap() {
            ExtendedNat::Infinite(Certificate::QuotientFree { start: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(tor_sup(&k, &k, 6).unwrap().is_infinite());
    }

    #[test]
    fn semidualizing_ext_vanishes_through_the_tail() {
        let s4 = Ring::from_text(&["x", "y", "t", "u"], &["x^2", "x*y", "y^2"], Grading::Fine, OrderKind::Grevlex)
            .unwrap();
        let r = s4.with_relations(
            ["x^2", "x*y", "y^2", "t^2", "t*u", "u^2"].iter().map(|g| s4.parse(g).unwrap()).collect(),
        );
        let over_s = cyclic(&s4, &["t^2", "t*u", "u^2"]);
        let c = ext(2, &over_s, &GradedModule::ring_module(&s4)).unwrap().present().module;
        let c = c.change_ring(&r).unwrap();
        assert_eq!(c.minimal_generator_count(), 2);
        assert_eq!(e_sup(&c, &c, 8).unwrap(), ExtendedNat::Finite(0));
    }

    #[test]
    fn extended_nat_json() {
        let v = serde_json::to_value(ExtendedNat::Finite(2)).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "finite", "value": 2, "certificate": null}));
        let c = Certificate::Periodicity { start: 1, period: 2, shift: vec![1, 1] };
        let v = serde_json::to_value(ExtendedNat::Infinite(c)).unwrap();
        assert_eq!(v["kind"], "infinite");
        assert_eq!(v["certificate"]["period"], 2);
    }
}
