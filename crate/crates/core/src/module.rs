//! Finitely presented graded modules, subquotients and maps between them.

use crate::error::{Error, Result};
use crate::graded::{map_from_elems, Column, Elem, FreeMap, FreeModule, PieceBasis};
use crate::groebner::engine::{self, Ctx, ModuleOrder, ModuleOrderKind, MVec};
use crate::linalg::{self, Echelon};
use crate::monomial::{Degree, Monomial};
use crate::poly::Poly;
use crate::ring::RingRef;

/// `M = coker(⊕ R(-deg r) → ⊕ R(-s_j))`: generator shifts and relation
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule {
    pub ring: RingRef,
    pub shifts: Vec<Degree>,
    pub relations: Vec<Elem>,
}

/// A pruned module together with the indices of the original generators it
/// keeps.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: GradedModule,
    pub kept: Vec<usize>,
}

impl GradedModule {
    /// Validates a presentation. Columns are reduced modulo the ring
    /// relations and zero columns are dropped.
    pub fn new(ring: RingRef, shifts: Vec<Degree>, columns: Vec<Column>) -> Result<Self> {
        for s in &shifts {
            ring.check_degree(s)?;
        }
        let free = FreeModule::new(ring.clone(), shifts.clone());
        let mut relations = Vec::new();
        for (k, c) in columns.into_iter().enumerate() {
            if c.len() != shifts.len() {
                return Err(Error::ShapeMismatch(format!(
                    "column {k} has {} entries, module has {} generators",
                    c.len(),
                    shifts.len()
                )));
            }
            let c = free.reduce(&c);
            if FreeModule::is_zero(&c) {
                continue;
            }
            match free.degree_of(&c) {
                Some(deg) => relations.push(Elem { col: c, deg }),
                None => {
                    let detail = c.iter().map(|p| ring.poly.format(p)).collect::<Vec<_>>().join(", ");
                    return Err(Error::InhomogeneousColumn { column: k, detail });
                }
            }
        }
        Ok(GradedModule { ring, shifts, relations })
    }

    pub fn from_elems(ring: RingRef, shifts: Vec<Degree>, relations: Vec<Elem>) -> Self {
        let relations = relations.into_iter().filter(|e| !FreeModule::is_zero(&e.col)).collect();
        GradedModule { ring, shifts, relations }
    }

    pub fn free(ring: RingRef, shifts: Vec<Degree>) -> Self {
        GradedModule { ring, shifts, relations: Vec::new() }
    }

    /// The ring itself as a module, generated in degree zero.
    pub fn ring_module(ring: &RingRef) -> Self {
        GradedModule::free(ring.clone(), vec![ring.zero_degree()])
    }

    /// `R/I` for homogeneous generators of `I`.
    pub fn cyclic(ring: &RingRef, ideal: &[Poly]) -> Result<Self> {
        let cols = ideal.iter().map(|g| vec![g.clone()]).collect();
        GradedModule::new(ring.clone(), vec![ring.zero_degree()], cols)
    }

    pub fn zero(ring: &RingRef) -> Self {
        GradedModule::free(ring.clone(), Vec::new())
    }

    pub fn num_generators(&self) -> usize {
        self.shifts.len()
    }

    pub fn free_module(&self) -> FreeModule {
        FreeModule::new(self.ring.clone(), self.shifts.clone())
    }

    /// Dimension of the degree-`d` piece, using normal forms modulo `J`.
    pub fn dim(&self, d: &Degree) -> usize {
        let f = self.free_module();
        let basis = f.piece(d);
        basis.len() - f.span_in_degree(&self.relations, d, &basis).rank()
    }

    /// Dimension of the degree-`d` piece by row reduction on all monomials
    /// of the ambient free module, with the ring relations included as
    /// explicit generators. Uses no Gröbner basis.
    pub fn hilbert_dim(&self, d: &Degree) -> Result<usize> {
        self.ring.check_degree(d)?;
        let ring = &self.ring;
        let mut entries: Vec<(usize, Monomial)> = Vec::new();
        for (j, s) in self.shifts.iter().enumerate() {
            for m in ring.monomials_of_degree(&d.sub(s)) {
                entries.push((j, m));
            }
        }
        if entries.is_empty() {
            return Ok(0);
        }
        let index: std::collections::HashMap<(usize, Monomial), usize> =
            entries.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let coords = |col: &[Poly]| {
            let mut v = vec![0u32; entries.len()];
            for (j, p) in col.iter().enumerate() {
                for (m, c) in &p.terms {
                    v[index[&(j, *m)]] = *c;
                }
            }
            v
        };
        let mut vecs = Vec::new();
        for r in &self.relations {
            for m in ring.monomials_of_degree(&d.sub(&r.deg)) {
                let col: Vec<Poly> = r.col.iter().map(|p| ring.poly.mul_term(p, &m, 1)).collect();
                vecs.push(coords(&col));
            }
        }
        for (j, s) in self.shifts.iter().enumerate() {
            for g in &ring.relations {
                let gd = ring.poly_degree(g).unwrap();
                for m in ring.monomials_of_degree(&d.sub(s).sub(&gd)) {
                    let mut col = vec![Poly::zero(); self.shifts.len()];
                    col[j] = ring.poly.mul_term(g, &m, 1);
                    vecs.push(coords(&col));
                }
            }
        }
        Ok(entries.len() - linalg::rank(ring.poly.field, &vecs, entries.len()))
    }

    /// Module Gröbner basis of the lifted relations `im A + J F` in `S^r`.
    pub fn lifted_gb(&self) -> (ModuleOrder, Vec<MVec>) {
        let order = ModuleOrder {
            kind: ModuleOrderKind::Top,
            shifts: self.shifts.iter().map(|s| s.total()).collect(),
        };
        let ctx = Ctx::new(&self.ring.poly, &order);
        let mut gens: Vec<MVec> = self.relations.iter().map(|r| ctx.from_column(&r.col)).collect();
        for j in 0..self.shifts.len() {
            for g in &self.ring.relation_gb {
                let mut col = vec![Poly::zero(); self.shifts.len()];
                col[j] = g.clone();
                gens.push(ctx.from_column(&col));
            }
        }
        let gb = engine::buchberger(&ctx, &gens);
        (order, gb)
    }

    /// Dimension of the degree-`d` piece from the lead terms of a module
    /// Gröbner basis: standard monomials of the lifted presentation.
    pub fn gb_dim(&self, d: &Degree) -> usize {
        let (_, gb) = match crate::cache::active() {
            Some(c) => c.lifted_gb(self),
            None => self.lifted_gb(),
        };
        self.gb_dim_with(&gb, d)
    }

    pub fn gb_dim_with(&self, gb: &[MVec], d: &Degree) -> usize {
        let mut count = 0;
        for (j, s) in self.shifts.iter().enumerate() {
            for m in self.ring.ambient().monomials_of_degree(&d.sub(s)) {
                let divisible = gb.iter().any(|g| {
                    let t = g.lead().unwrap();
                    t.pos as usize == j && t.mon.divides(&m)
                });
                if !divisible {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether the module is zero: every generator lies in the relation span.
    pub fn is_zero(&self) -> bool {
        let f = self.free_module();
        (0..self.num_generators()).all(|j| f.contains(&self.relations, &f.basis_vector(j)))
    }

    /// Minimal presentation: units in the relation matrix are pivoted away
    /// (graded Nakayama), then the remaining relations are minimalized.
    pub fn prune(&self) -> Pruned {
        let ring = &self.ring;
        let mut kept: Vec<usize> = (0..self.num_generators()).collect();
        let mut shifts = self.shifts.clone();
        let mut cols: Vec<Elem> = self.relations.clone();
        loop {
            let mut pivot = None;
            'search: for (k, c) in cols.iter().enumerate() {
                for (j, p) in c.col.iter().enumerate() {
                    if p.is_unit() {
                        pivot = Some((k, j));
                        break 'search;
                    }
                }
            }
            let Some((k, j)) = pivot else { break };
            let pc = cols.swap_remove(k);
            let inv = ring.poly.field.inv_nz(pc.col[j].terms[0].1);
            let free = FreeModule::new(ring.clone(), shifts.clone());
            let mut next = Vec::with_capacity(cols.len());
            for c in cols {
                let coef = ring.poly.scale(&c.col[j], ring.poly.field.neg(inv));
                let mut col = free.axpy(&c.col, &coef, &pc.col);
                col.remove(j);
                if !FreeModule::is_zero(&col) {
                    next.push(Elem { col, deg: c.deg });
                }
            }
            cols = next;
            kept.remove(j);
            shifts.remove(j);
        }
        let free = FreeModule::new(ring.clone(), shifts.clone());
        let relations = free.minimal_generators(&cols);
        Pruned { module: GradedModule { ring: ring.clone(), shifts, relations }, kept }
    }

    pub fn is_free(&self) -> bool {
        self.prune().module.relations.is_empty()
    }

    /// Number of minimal generators.
    pub fn minimal_generator_count(&self) -> usize {
        self.prune().module.num_generators()
    }

    pub fn shift(&self, by: &Degree) -> GradedModule {
        GradedModule {
            ring: self.ring.clone(),
            shifts: self.shifts.iter().map(|s| s.add(by)).collect(),
            relations: self.relations.iter().map(|r| Elem { col: r.col.clone(), deg: r.deg.add(by) }).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let a = self.num_generators();
        let b = other.num_generators();
        let mut shifts = self.shifts.clone();
        shifts.extend(other.shifts.iter().cloned());
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut col = r.col.clone();
            col.extend(std::iter::repeat(Poly::zero()).take(b));
            relations.push(Elem { col, deg: r.deg.clone() });
        }
        for r in &other.relations {
            let mut col = vec![Poly::zero(); a];
            col.extend(r.col.iter().cloned());
            relations.push(Elem { col, deg: r.deg.clone() });
        }
        GradedModule { ring: self.ring.clone(), shifts, relations }
    }

    /// `M ⊗_R N`, generated by pairs `(i, j)` in row-major order.
    pub fn tensor(&self, other: &GradedModule) -> GradedModule {
        let (a, b) = (self.num_generators(), other.num_generators());
        let mut shifts = Vec::with_capacity(a * b);
        for s in &self.shifts {
            for t in &other.shifts {
                shifts.push(s.add(t));
            }
        }
        let mut relations = Vec::new();
        for r in &self.relations {
            for (j, t) in other.shifts.iter().enumerate() {
                let mut col = vec![Poly::zero(); a * b];
                for i in 0..a {
                    col[i * b + j] = r.col[i].clone();
                }
                relations.push(Elem { col, deg: r.deg.add(t) });
            }
        }
        for r in &other.relations {
            for (i, s) in self.shifts.iter().enumerate() {
                let mut col = vec![Poly::zero(); a * b];
                for j in 0..b {
                    col[i * b + j] = r.col[j].clone();
                }
                relations.push(Elem { col, deg: r.deg.add(s) });
            }
        }
        GradedModule::from_elems(self.ring.clone(), shifts, relations)
    }

    /// `M / I M` for homogeneous generators of `I`.
    pub fn quotient_by(&self, ideal: &[Poly]) -> GradedModule {
        let free = self.free_module();
        let mut relations = self.relations.clone();
        for g in ideal {
            let g = self.ring.nf(g);
            let Some(gd) = self.ring.poly_degree(&g) else { continue };
            for j in 0..self.num_generators() {
                let mut col = free.zero();
                col[j] = g.clone();
                relations.push(Elem { col, deg: self.shifts[j].add(&gd) });
            }
        }
        GradedModule { ring: self.ring.clone(), shifts: self.shifts.clone(), relations }
    }

    /// The same presentation read over the ambient polynomial ring, with the
    /// ring relations added as explicit relations.
    pub fn over_ambient(&self) -> GradedModule {
        let ambient = self.ring.ambient();
        let mut relations = self.relations.clone();
        for g in &self.ring.relation_gb {
            let gd = self.ring.poly_degree(g).unwrap();
            for (j, s) in self.shifts.iter().enumerate() {
                let mut col = vec![Poly::zero(); self.num_generators()];
                col[j] = g.clone();
                relations.push(Elem { col, deg: s.add(&gd) });
            }
        }
        GradedModule { ring: ambient, shifts: self.shifts.clone(), relations }
    }

    /// Reads the module over another quotient of the same polynomial ring.
    /// The target relations must annihilate the module.
    pub fn change_ring(&self, target: &RingRef) -> Result<GradedModule> {
        if self.ring.poly != target.poly || self.ring.grading != target.grading {
            return Err(Error::RingMismatch);
        }
        let free = self.free_module();
        for g in &target.relation_gb {
            let gd = target.poly_degree(g).unwrap();
            for j in 0..self.num_generators() {
                let mut col = free.zero();
                col[j] = self.ring.nf(g);
                let e = Elem { col, deg: self.shifts[j].add(&gd) };
                if !free.contains(&self.relations, &e) {
                    return Err(Error::NotAnnihilated);
                }
            }
        }
        let tfree = FreeModule::new(target.clone(), self.shifts.clone());
        let relations = self
            .relations
            .iter()
            .map(|r| Elem { col: tfree.reduce(&r.col), deg: r.deg.clone() })
            .collect();
        Ok(GradedModule::from_elems(target.clone(), self.shifts.clone(), relations))
    }

    /// Componentwise minimum of generator shifts (fine) or minimum degree.
    pub fn min_shift(&self) -> Option<Degree> {
        let mut it = self.shifts.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, s| Degree(acc.0.iter().zip(&s.0).map(|(a, b)| *a.min(b)).collect())))
    }

    pub fn format(&self) -> String {
        let shifts: Vec<String> = self.shifts.iter().map(|s| s.to_string()).collect();
        let rows: Vec<String> = (0..self.num_generators())
            .map(|j| {
                let entries: Vec<String> =
                    self.relations.iter().map(|r| self.ring.poly.format(&r.col[j])).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        format!("coker([{}], shifts=[{}])", rows.join(", "), shifts.join(", "))
    }
}

/// The degree-`d` piece of a presented module as an explicit vector space:
/// coordinates of `F_d` reduced modulo the relations, read at the non-pivot
/// positions.
#[derive(Clone, Debug)]
pub struct ModulePiece {
    pub basis: PieceBasis,
    rels: Echelon,
    pub free_cols: Vec<usize>,
}

impl ModulePiece {
    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    /// Quotient coordinates of an element of `F_d` given by its coordinates.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.rels.reduce(&mut w);
        self.free_cols.iter().map(|&c| w[c]).collect()
    }
}

impl GradedModule {
    pub fn piece_space(&self, d: &Degree) -> ModulePiece {
        let f = self.free_module();
        let basis = f.piece(d);
        let rels = f.span_in_degree(&self.relations, d, &basis);
        let mut is_pivot = vec![false; basis.len()];
        for &p in rels.pivots() {
            is_pivot[p] = true;
        }
        let free_cols = (0..basis.len()).filter(|&c| !is_pivot[c]).collect();
        ModulePiece { basis, rels, free_cols }
    }

    /// Rows: images of the basis of `from` under multiplication by `m`,
    /// in the coordinates of `to`.
    pub fn mul_matrix(&self, from: &ModulePiece, to: &ModulePiece, m: &Monomial) -> Vec<Vec<u32>> {
        let f = self.free_module();
        from.free_cols
            .iter()
            .map(|&c| {
                let (j, mon) = from.basis.entries[c];
                let mut col = f.zero();
                col[j] = self.ring.nf(&Poly::term(mon.mul(m), 1));
                if to.basis.is_empty() {
                    return Vec::new();
                }
                to.project(&f.coords(&col, &to.basis))
            })
            .collect()
    }
}

/// `(gens + rels) / rels` inside a free module.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient: FreeModule,
    pub gens: Vec<Elem>,
    pub rels: Vec<Elem>,
}

/// A presented module together with representatives of its generators in
/// the ambient free module of the subquotient it came from.
#[derive(Clone, Debug)]
pub struct Presented {
    pub module: GradedModule,
    pub representatives: Vec<Elem>,
}

impl Subquotient {
    pub fn dim(&self, d: &Degree) -> usize {
        let basis = self.ambient.piece(d);
        if basis.is_empty() {
            return 0;
        }
        let mut all = self.rels.clone();
        let r = self.ambient.span_in_degree(&all, d, &basis).rank();
        all.extend(self.gens.iter().cloned());
        self.ambient.span_in_degree(&all, d, &basis).rank() - r
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| self.ambient.contains(&self.rels, g))
    }

    /// Generators that are not already zero in the subquotient.
    pub fn nonzero_generators(&self) -> Vec<Elem> {
        self.gens.iter().filter(|g| !self.ambient.contains(&self.rels, g)).cloned().collect()
    }

    /// A minimal presentation. Generators are a subset of `gens`.
    pub fn present(&self) -> Presented {
        let gens = self.nonzero_generators();
        let ring = self.ambient.ring.clone();
        if gens.is_empty() {
            return Presented { module: GradedModule::zero(&ring), representatives: Vec::new() };
        }
        let mut all = gens.clone();
        all.extend(self.rels.iter().cloned());
        let k = map_from_elems(&self.ambient, &all).kernel();
        let g = gens.len();
        let rels: Vec<Elem> = k
            .into_iter()
            .map(|e| Elem { col: e.col[..g].to_vec(), deg: e.deg })
            .filter(|e| !FreeModule::is_zero(&e.col))
            .collect();
        let shifts: Vec<Degree> = gens.iter().map(|e| e.deg.clone()).collect();
        let m = GradedModule { ring, shifts, relations: rels };
        let pruned = m.prune();
        let representatives = pruned.kept.iter().map(|&i| gens[i].clone()).collect();
        Presented { module: pruned.module, representatives }
    }
}

/// A degree-preserving homomorphism of presented modules, given by images
/// of the source generators in the target's free cover.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub images: Vec<Column>,
}

impl ModuleMap {
    pub fn new(source: GradedModule, target: GradedModule, images: Vec<Column>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::ShapeMismatch("one image per source generator".into()));
        }
        let tf = target.free_module();
        for (j, im) in images.iter().enumerate() {
            if im.len() != target.num_generators() {
                return Err(Error::ShapeMismatch("image length must equal target rank".into()));
            }
            let im = tf.reduce(im);
            if let Some(d) = tf.degree_of(&im) {
                if d != source.shifts[j] {
                    return Err(Error::InhomogeneousColumn { column: j, detail: "map does not preserve degree".into() });
                }
            }
        }
        let images = images.iter().map(|c| tf.reduce(c)).collect();
        Ok(ModuleMap { source, target, images })
    }

    fn free_map(&self) -> FreeMap {
        FreeMap { source: self.source.free_module(), target: self.target.free_module(), images: self.images.clone() }
    }

    pub fn apply(&self, v: &Column) -> Column {
        self.free_map().apply(v)
    }

    /// Relations of the source map into relations of the target.
    pub fn is_well_defined(&self) -> bool {
        let tf = self.target.free_module();
        let fm = self.free_map();
        self.source.relations.iter().all(|r| {
            let v = fm.apply(&r.col);
            tf.contains(&self.target.relations, &Elem { col: v, deg: r.deg.clone() })
        })
    }

    pub fn kernel(&self) -> Subquotient {
        let tf = self.target.free_module();
        let n = self.source.num_generators();
        let mut all: Vec<Elem> = self
            .images
            .iter()
            .zip(&self.source.shifts)
            .map(|(c, s)| Elem { col: c.clone(), deg: s.clone() })
            .collect();
        all.extend(self.target.relations.iter().cloned());
        let k = map_from_elems(&tf, &all).kernel();
        let gens = k
            .into_iter()
            .map(|e| Elem { col: e.col[..n].to_vec(), deg: e.deg })
            .filter(|e| !FreeModule::is_zero(&e.col))
            .collect();
        Subquotient { ambient: self.source.free_module(), gens, rels: self.source.relations.clone() }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        let tf = self.target.free_module();
        let mut span: Vec<Elem> = self
            .images
            .iter()
            .zip(&self.source.shifts)
            .map(|(c, s)| Elem { col: c.clone(), deg: s.clone() })
            .collect();
        span.extend(self.target.relations.iter().cloned());
        (0..self.target.num_generators()).all(|j| tf.contains(&span, &tf.basis_vector(j)))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Rank of the induced linear map `M_d → N_d`.
    pub fn rank_in_degree(&self, d: &Degree) -> usize {
        let sf = self.source.free_module();
        let tf = self.target.free_module();
        let src = sf.piece(d);
        let tgt = tf.piece(d);
        let rels = tf.span_in_degree(&self.target.relations, d, &tgt);
        let base = rels.rank();
        let mut e = rels;
        let fm = self.free_map();
        for (j, m) in &src.entries {
            let v = tf.mul_monomial(&fm.images[*j], m);
            e.insert(&tf.coords(&v, &tgt));
        }
        e.rank() - base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderKind;
    use crate::ring::{Grading, Ring};

    fn d(v: &[i32]) -> Degree {
        Degree(v.to_vec())
    }

    fn rxy() -> RingRef {
        Ring::from_text(&["x", "y"], &["x*y"], Grading::Fine, OrderKind::Grevlex).unwrap()
    }

    fn s2() -> RingRef {
        Ring::from_text(&["x", "y"], &[], Grading::Fine, OrderKind::Grevlex).unwrap()
    }

    #[test]
    fn make_module_examples() {
        let s2 = s2();
        let free = GradedModule::new(s2.clone(), vec![d(&[0, 0])], vec![]).unwrap();
        assert_eq!(free.num_generators(), 1);
        assert!(free.relations.is_empty());

        let r = rxy();
        let x = r.parse("x").unwrap();
        let m = GradedModule::new(r.clone(), vec![d(&[0, 0])], vec![vec![x.clone()]]).unwrap();
        assert_eq!(m.relations.len(), 1);

        let n = GradedModule::new(r.clone(), vec![d(&[0, 1])], vec![vec![x.clone()]]).unwrap();
        // yR: annihilated by x, y acts freely
        assert_eq!(n.dim(&d(&[0, 3])), 1);
        assert_eq!(n.dim(&d(&[1, 1])), 0);
        assert_eq!(n.dim(&d(&[0, 0])), 0);
    }

    #[test]
    fn make_module_errors() {
        let r = rxy();
        let bad = r.parse("x + 1").unwrap();
        let e = GradedModule::new(r.clone(), vec![d(&[0, 0])], vec![vec![bad]]).unwrap_err();
        assert!(matches!(e, Error::InhomogeneousColumn { .. }));
        let e = GradedModule::new(r.clone(), vec![d(&[0, 0])], vec![vec![Poly::zero(), Poly::zero()]]).unwrap_err();
        assert!(matches!(e, Error::ShapeMismatch(_)));
        // zero columns are stripped, also after reduction modulo xy
        let xy = r.parse("x*y").unwrap();
        let m = GradedModule::new(r.clone(), vec![d(&[0, 0])], vec![vec![xy]]).unwrap();
        assert!(m.relations.is_empty());
    }

    #[test]
    fn hilbert_dim_examples() {
        let s2 = s2();
        let f = GradedModule::ring_module(&s2);
        assert_eq!(f.hilbert_dim(&d(&[2, 1])).unwrap(), 1);
        let r = rxy();
        assert_eq!(GradedModule::ring_module(&r).hilbert_dim(&d(&[1, 1])).unwrap(), 0);
        let m = GradedModule::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(m.hilbert_dim(&d(&[0, 3])).unwrap(), 1);
        assert_eq!(m.hilbert_dim(&d(&[0])), Err(Error::GradingModeMismatch));
    }

    #[test]
    fn prune_removes_units() {
        let s2 = s2();
        let one = s2.poly.constant(1);
        let x = s2.parse("x").unwrap();
        // generators e0 (deg 0), e1 (deg (1,0)); relation e1 - x e0 and x^2 e0...
        let m = GradedModule::new(
            s2.clone(),
            vec![d(&[0, 0]), d(&[1, 0])],
            vec![vec![s2.poly.neg(&x), one.clone()], vec![s2.parse("x*y").unwrap(), Poly::zero()]],
        )
        .unwrap();
        let p = m.prune();
        assert_eq!(p.kept, vec![0]);
        assert_eq!(p.module.num_generators(), 1);
        assert_eq!(p.module.relations.len(), 1);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(p.module.dim(&d(&[a, b])), m.dim(&d(&[a, b])));
            }
        }
    }

    #[test]
    fn tensor_of_cyclics() {
        let s2 = s2();
        let a = GradedModule::cyclic(&s2, &[s2.parse("x").unwrap()]).unwrap();
        let b = GradedModule::cyclic(&s2, &[s2.parse("y").unwrap()]).unwrap();
        let t = a.tensor(&b);
        assert_eq!(t.dim(&d(&[0, 0])), 1);
        assert_eq!(t.dim(&d(&[1, 0])), 0);
        assert_eq!(t.dim(&d(&[0, 1])), 0);
    }
}
