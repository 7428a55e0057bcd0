//! Degree-by-degree linear algebra on graded free modules over `R = S/J`.
//!
//! A homogeneous element of `F = ⊕ R(-s_j)` of degree `d` is a column of
//! polynomials in normal form modulo `J`; its coordinates in `F_d` are taken
//! in the basis of standard monomials. Kernels, memberships and minimal
//! generating sets are all computed one degree at a time.

use std::collections::{BTreeSet, HashMap};

use crate::groebner::engine::{self, Ctx, ModuleOrder, ModuleOrderKind, MVec};
use crate::linalg::{self, Echelon};
use crate::monomial::{Degree, Monomial};
use crate::poly::Poly;
use crate::ring::RingRef;

pub type Column = Vec<Poly>;

/// A homogeneous element together with its degree.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Elem {
    pub col: Column,
    pub deg: Degree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeModule {
    pub ring: RingRef,
    pub shifts: Vec<Degree>,
}

/// Basis of the degree-`d` piece of a free module.
#[derive(Clone, Debug)]
pub struct PieceBasis {
    pub entries: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl PieceBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FreeModule {
    pub fn new(ring: RingRef, shifts: Vec<Degree>) -> Self {
        FreeModule { ring, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn zero(&self) -> Column {
        vec![Poly::zero(); self.rank()]
    }

    pub fn basis_vector(&self, j: usize) -> Elem {
        let mut col = self.zero();
        col[j] = self.ring.poly.constant(1);
        Elem { col, deg: self.shifts[j].clone() }
    }

    pub fn piece(&self, d: &Degree) -> PieceBasis {
        let mut entries = Vec::new();
        for (j, s) in self.shifts.iter().enumerate() {
            for m in self.ring.standard_monomials(&d.sub(s)).iter() {
                entries.push((j, *m));
            }
        }
        let index = entries.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        PieceBasis { entries, index }
    }

    pub fn piece_dim(&self, d: &Degree) -> usize {
        self.shifts.iter().map(|s| self.ring.standard_monomials(&d.sub(s)).len()).sum()
    }

    /// Coordinates of a reduced homogeneous element in `basis`.
    pub fn coords(&self, v: &Column, basis: &PieceBasis) -> Vec<u32> {
        let mut out = vec![0u32; basis.len()];
        for (j, p) in v.iter().enumerate() {
            for (m, c) in &p.terms {
                let i = basis.index.get(&(j, *m)).unwrap_or_else(|| {
                    panic!("term {m:?} in component {j} is not in the requested degree piece")
                });
                out[*i] = *c;
            }
        }
        out
    }

    pub fn from_coords(&self, v: &[u32], basis: &PieceBasis) -> Column {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.rank()];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                let (j, m) = basis.entries[i];
                buckets[j].push((m, c));
            }
        }
        buckets.into_iter().map(|b| self.ring.poly.from_terms(b)).collect()
    }

    pub fn reduce(&self, v: &Column) -> Column {
        v.iter().map(|p| self.ring.nf(p)).collect()
    }

    pub fn is_zero(v: &Column) -> bool {
        v.iter().all(|p| p.is_zero())
    }

    /// Degree of a homogeneous nonzero element, `None` when zero or
    /// inhomogeneous.
    pub fn degree_of(&self, v: &Column) -> Option<Degree> {
        let mut deg: Option<Degree> = None;
        for (j, p) in v.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = self.ring.poly_degree(p)?.add(&self.shifts[j]);
            match &deg {
                None => deg = Some(d),
                Some(e) if *e == d => {}
                Some(_) => return None,
            }
        }
        deg
    }

    /// `m * v`, reduced.
    pub fn mul_monomial(&self, v: &Column, m: &Monomial) -> Column {
        v.iter().map(|p| self.ring.nf(&self.ring.poly.mul_term(p, m, 1))).collect()
    }

    pub fn mul_poly(&self, v: &Column, f: &Poly) -> Column {
        v.iter().map(|p| self.ring.mul(p, f)).collect()
    }

    pub fn add(&self, a: &Column, b: &Column) -> Column {
        a.iter().zip(b).map(|(x, y)| self.ring.poly.add(x, y)).collect()
    }

    pub fn axpy(&self, a: &Column, f: &Poly, b: &Column) -> Column {
        a.iter().zip(b).map(|(x, y)| self.ring.poly.add(x, &self.ring.mul(f, y))).collect()
    }

    /// Span of `R`-multiples of `gens` in degree `d`.
    pub fn span_in_degree(&self, gens: &[Elem], d: &Degree, basis: &PieceBasis) -> Echelon {
        let mut e = Echelon::new(self.ring.poly.field, basis.len());
        if basis.is_empty() {
            return e;
        }
        for g in gens {
            let diff = d.sub(&g.deg);
            for m in self.ring.standard_monomials(&diff).iter() {
                let v = self.mul_monomial(&g.col, m);
                e.insert(&self.coords(&v, basis));
                if e.rank() == basis.len() {
                    return e;
                }
            }
        }
        e
    }

    /// Whether a homogeneous element lies in the submodule generated by `gens`.
    pub fn contains(&self, gens: &[Elem], v: &Elem) -> bool {
        if FreeModule::is_zero(&v.col) {
            return true;
        }
        let basis = self.piece(&v.deg);
        let span = self.span_in_degree(gens, &v.deg, &basis);
        span.contains(&self.coords(&v.col, &basis))
    }

    /// Dimension of the degree-`d` piece of the submodule generated by `gens`.
    pub fn submodule_dim(&self, gens: &[Elem], d: &Degree) -> usize {
        let basis = self.piece(d);
        self.span_in_degree(gens, d, &basis).rank()
    }

    /// A minimal homogeneous generating set of the submodule spanned by `gens`.
    pub fn minimal_generators(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut sorted: Vec<Elem> =
            gens.iter().filter(|g| !FreeModule::is_zero(&g.col)).cloned().collect();
        sorted.sort_by(|a, b| a.deg.total().cmp(&b.deg.total()).then_with(|| a.deg.cmp(&b.deg)));
        let mut kept: Vec<Elem> = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            // process one degree at a time so equal-degree generators see each other
            let d = sorted[i].deg.clone();
            let basis = self.piece(&d);
            let mut span = self.span_in_degree(&kept, &d, &basis);
            while i < sorted.len() && sorted[i].deg == d {
                if span.insert(&self.coords(&sorted[i].col, &basis)) {
                    kept.push(sorted[i].clone());
                }
                i += 1;
            }
        }
        kept
    }

    pub fn elem(&self, col: Column) -> Option<Elem> {
        let col = self.reduce(&col);
        let deg = self.degree_of(&col)?;
        Some(Elem { col, deg })
    }
}

/// A degree-preserving map of free modules, given by the images of the
/// source basis vectors.
#[derive(Clone, Debug)]
pub struct FreeMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub images: Vec<Column>,
}

impl FreeMap {
    pub fn apply(&self, v: &Column) -> Column {
        let mut out = self.target.zero();
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = self.target.axpy(&out, c, &self.images[j]);
            }
        }
        out
    }

    fn matrix_in_degree(&self, d: &Degree, src: &PieceBasis, tgt: &PieceBasis) -> Vec<Vec<u32>> {
        src.entries
            .iter()
            .map(|(j, m)| {
                let v = self.target.mul_monomial(&self.images[*j], m);
                self.target.coords(&v, tgt)
            })
            .inspect(|_| debug_assert!(d.len() == self.source.ring.degree_len()))
            .collect()
    }

    /// Degrees in which minimal generators of the kernel can live.
    fn candidate_degrees(&self) -> Vec<Degree> {
        let ring = &self.source.ring;
        let mut set: BTreeSet<(i64, Degree)> = BTreeSet::new();
        if let Some(std) = ring.all_standard_monomials() {
            for s in &self.source.shifts {
                for m in &std {
                    let d = s.add(&ring.monomial_degree(m));
                    set.insert((d.total(), d));
                }
            }
        } else {
            for s in &self.source.shifts {
                set.insert((s.total(), s.clone()));
            }
            for d in self.lifted_syzygy_degrees() {
                set.insert((d.total(), d));
            }
        }
        set.into_iter().map(|(_, d)| d).collect()
    }

    /// Degrees of the Schreyer syzygies of a Gröbner basis of the image
    /// lifted to the ambient ring (image columns plus `J` times each basis
    /// vector of the target).
    fn lifted_syzygy_degrees(&self) -> Vec<Degree> {
        let ring = &self.source.ring;
        let tgt = &self.target;
        // coarse degrees are already weighted; fine-mode order weights are all one
        let shifts: Vec<i64> = tgt.shifts.iter().map(|s| s.total()).collect();
        let order = ModuleOrder { kind: ModuleOrderKind::Top, shifts };
        let ctx = Ctx::new(&ring.poly, &order);
        let mut gens: Vec<MVec> = self.images.iter().map(|c| ctx.from_column(c)).collect();
        for j in 0..tgt.rank() {
            for g in &ring.relation_gb {
                let mut col = tgt.zero();
                col[j] = g.clone();
                gens.push(ctx.from_column(&col));
            }
        }
        let mut out = Vec::new();
        for g in &gens {
            if let Some(t) = g.lead() {
                out.push(tgt.shifts[t.pos as usize].add(&ring.monomial_degree(&t.mon)));
            }
        }
        let gb = engine::buchberger(&ctx, &gens);
        let mut by_pos: HashMap<u32, Vec<Monomial>> = HashMap::new();
        for g in &gb {
            let t = g.lead().unwrap();
            by_pos.entry(t.pos).or_default().push(t.mon);
        }
        for (pos, mons) in by_pos {
            let s = &tgt.shifts[pos as usize];
            for j in 0..mons.len() {
                for i in 0..j {
                    out.push(s.add(&ring.monomial_degree(&mons[i].lcm(&mons[j]))));
                }
            }
        }
        out
    }

    /// Minimal homogeneous generators of the kernel.
    pub fn kernel(&self) -> Vec<Elem> {
        if self.source.rank() == 0 {
            return Vec::new();
        }
        let field = self.source.ring.poly.field;
        let mut found: Vec<Elem> = Vec::new();
        for d in self.candidate_degrees() {
            let src = self.source.piece(&d);
            if src.is_empty() {
                continue;
            }
            let tgt = self.target.piece(&d);
            let images = self.matrix_in_degree(&d, &src, &tgt);
            let ker = linalg::kernel(field, &images, tgt.len());
            if ker.is_empty() {
                continue;
            }
            let mut span = self.source.span_in_degree(&found, &d, &src);
            for v in ker {
                if span.insert(&v) {
                    found.push(Elem { col: self.source.from_coords(&v, &src), deg: d.clone() });
                }
            }
        }
        found
    }

    /// Rank of the map in degree `d`.
    pub fn rank_in_degree(&self, d: &Degree) -> usize {
        let src = self.source.piece(d);
        let tgt = self.target.piece(d);
        let images = self.matrix_in_degree(d, &src, &tgt);
        linalg::rank(self.source.ring.poly.field, &images, tgt.len())
    }
}


/// Concatenates columns into a single free map `⊕ R(-deg) → target`.
pub fn map_from_elems(target: &FreeModule, elems: &[Elem]) -> FreeMap {
    FreeMap {
        source: FreeModule::new(target.ring.clone(), elems.iter().map(|e| e.deg.clone()).collect()),
        target: target.clone(),
        images: elems.iter().map(|e| e.col.clone()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderKind;
    use crate::ring::{Grading, Ring};

    fn col(r: &RingRef, entries: &[&str]) -> Column {
        entries.iter().map(|e| r.parse(e).unwrap()).collect()
    }

    #[test]
    fn koszul_syzygy() {
        let s2 = Ring::from_text(&["x", "y"], &[], Grading::Fine, OrderKind::Grevlex).unwrap();
        let target = FreeModule::new(s2.clone(), vec![Degree(vec![0, 0])]);
        let elems = vec![
            Elem { col: col(&s2, &["x"]), deg: Degree(vec![1, 0]) },
            Elem { col: col(&s2, &["y"]), deg: Degree(vec![0, 1]) },
        ];
        let k = map_from_elems(&target, &elems).kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].deg, Degree(vec![1, 1]));
        // proportional to (-y, x)
        let v = &k[0].col;
        assert!(v[0].is_monomial() && v[1].is_monomial());
        let f = s2.poly.field;
        assert_eq!(f.add(v[0].terms[0].1, v[1].terms[0].1), 0);
    }

    #[test]
    fn syzygy_over_hypersurface() {
        let r = Ring::from_text(&["x", "y"], &["x*y"], Grading::Fine, OrderKind::Grevlex).unwrap();
        let target = FreeModule::new(r.clone(), vec![Degree(vec![0, 0])]);
        let elems = vec![Elem { col: col(&r, &["x"]), deg: Degree(vec![1, 0]) }];
        let k = map_from_elems(&target, &elems).kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].col, col(&r, &["y"]));
    }

    #[test]
    fn minimal_generators_drop_redundant() {
        let s2 = Ring::from_text(&["x", "y"], &[], Grading::Coarse(vec![1, 1]), OrderKind::Grevlex).unwrap();
        let f = FreeModule::new(s2.clone(), vec![Degree(vec![0])]);
        let gens = vec![
            f.elem(col(&s2, &["x^2"])).unwrap(),
            f.elem(col(&s2, &["x"])).unwrap(),
            f.elem(col(&s2, &["x*y + x^2"])).unwrap(),
            f.elem(col(&s2, &["y^3"])).unwrap(),
        ];
        let m = f.minimal_generators(&gens);
        assert_eq!(m.len(), 2);
    }
}
