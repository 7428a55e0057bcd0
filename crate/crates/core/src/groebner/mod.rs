//! Gröbner bases over `R = S/J` and the ideal operations built on them.
//!
//! Computations run in the ambient ring `S` with the relations `J·e_j`
//! adjoined to every generating set.

pub mod engine;

use crate::error::{Error, Result};
use crate::graded::{map_from_elems, Column, Elem, FreeModule};
use crate::module::{GradedModule, ModuleMap};
use crate::monomial::{Degree, Monomial};
use crate::poly::{Poly, PolyRing};
use crate::ring::{ideal_gb, RingRef};
use engine::{Ctx, ModuleOrder, ModuleOrderKind, MVec};

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: RingRef,
    pub rank: usize,
    pub order: ModuleOrder,
    /// Basis over `S`, including the lifted relations of `R`.
    pub lifted: Vec<MVec>,
}

impl GroebnerBasis {
    pub fn new(ring: &RingRef, rank: usize, gens: &[Column]) -> Result<Self> {
        let order = ModuleOrder { kind: ModuleOrderKind::Pot, shifts: vec![0; rank] };
        let ctx = Ctx::new(&ring.poly, &order);
        let mut vs = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.len() });
            }
            vs.push(ctx.from_column(g));
        }
        for j in 0..rank {
            for r in &ring.relation_gb {
                let mut col = vec![Poly::zero(); rank];
                col[j] = r.clone();
                vs.push(ctx.from_column(&col));
            }
        }
        let lifted = engine::buchberger(&ctx, &vs);
        Ok(GroebnerBasis { ring: ring.clone(), rank, order, lifted })
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx::new(&self.ring.poly, &self.order)
    }

    /// Basis elements that are nonzero in `R^rank`.
    pub fn generators(&self) -> Vec<Column> {
        let ctx = self.ctx();
        self.lifted
            .iter()
            .map(|v| ctx.to_column(v, self.rank))
            .filter(|c| c.iter().any(|p| !self.ring.nf(p).is_zero()))
            .collect()
    }

    pub fn normal_form(&self, v: &Column) -> Result<Column> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: v.len() });
        }
        let ctx = self.ctx();
        let r = engine::normal_form(&ctx, &ctx.from_column(v), &self.lifted);
        Ok(ctx.to_column(&r, self.rank))
    }

    pub fn contains(&self, v: &Column) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(|p| p.is_zero()))
    }

    pub fn is_groebner(&self) -> bool {
        engine::is_groebner(&self.ctx(), &self.lifted)
    }

    pub fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.lifted.iter().map(|v| v.lead().map(|t| (t.pos as usize, t.mon)).unwrap()).collect()
    }
}

/// Minimal homogeneous generators of the syzygies among `gens`, which live
/// in `target`.
pub fn syzygies(target: &FreeModule, gens: &[Elem]) -> Vec<Elem> {
    map_from_elems(target, gens).kernel()
}

/// A homogeneous ideal of `R`, generators in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    pub ring: RingRef,
    pub gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            let g = ring.nf(&g);
            if g.is_zero() {
                continue;
            }
            if ring.poly_degree(&g).is_none() {
                return Err(Error::InhomogeneousColumn { column: out.len(), detail: ring.poly.format(&g) });
            }
            out.push(ring.poly.monic(&g));
        }
        Ok(Ideal { ring: ring.clone(), gens: out })
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Self> {
        let ps = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, ps)
    }

    /// The maximal graded ideal generated by the variables.
    pub fn maximal(ring: &RingRef) -> Self {
        let gens = (0..ring.nvars()).map(|i| ring.poly.var(i)).collect();
        Ideal::new(ring, gens).unwrap()
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: vec![ring.poly.constant(1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Homogeneous ideals are proper unless they contain a unit generator.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_unit())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn is_maximal_graded(&self) -> bool {
        let m = Ideal::maximal(&self.ring);
        self.contains_ideal(&m) && m.contains_ideal(self)
    }

    /// Generators as elements of the rank-one free module `R`.
    pub fn elems(&self) -> Vec<Elem> {
        self.gens
            .iter()
            .map(|g| Elem { col: vec![g.clone()], deg: self.ring.poly_degree(g).unwrap() })
            .collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        let f = self.ring.nf(f);
        if f.is_zero() {
            return true;
        }
        let free = FreeModule::new(self.ring.clone(), vec![self.ring.zero_degree()]);
        // inhomogeneous elements are members iff each homogeneous part is
        let mut parts: std::collections::BTreeMap<Degree, Vec<(Monomial, u32)>> = Default::default();
        for (m, c) in &f.terms {
            parts.entry(self.ring.monomial_degree(m)).or_default().push((*m, *c));
        }
        parts.into_iter().all(|(deg, terms)| {
            let col = vec![self.ring.poly.from_terms(terms)];
            free.contains(&self.elems(), &Elem { col, deg })
        })
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal { ring: self.ring.clone(), gens }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ideal::new(&self.ring, gens).unwrap()
    }

    /// `I^q`, with minimal generators.
    pub fn power(&self, q: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..q {
            acc = acc.product(self);
            acc = acc.minimalized();
        }
        acc
    }

    pub fn minimalized(&self) -> Ideal {
        let free = FreeModule::new(self.ring.clone(), vec![self.ring.zero_degree()]);
        let gens =
            free.minimal_generators(&self.elems()).into_iter().map(|e| self.ring.poly.monic(&e.col[0])).collect();
        Ideal { ring: self.ring.clone(), gens }
    }

    /// `R/I` as a cyclic module.
    pub fn quotient_module(&self) -> GradedModule {
        GradedModule::cyclic(&self.ring, &self.gens).unwrap()
    }

    /// `I` itself as a module, presented by the syzygies of its generators.
    pub fn as_module(&self) -> GradedModule {
        let unit = FreeModule::new(self.ring.clone(), vec![self.ring.zero_degree()]);
        let gens = self.elems();
        let relations = syzygies(&unit, &gens);
        GradedModule::from_elems(self.ring.clone(), gens.into_iter().map(|e| e.deg).collect(), relations)
    }

    /// Gröbner basis over `S` of `I + J`.
    pub fn lifted_gb(&self) -> Vec<Poly> {
        let mut gens = self.gens.clone();
        gens.extend(self.ring.relation_gb.iter().cloned());
        ideal_gb(&self.ring.poly, &gens)
    }

    pub fn format(&self) -> String {
        let gs: Vec<String> = self.gens.iter().map(|g| self.ring.poly.format(g)).collect();
        format!("({})", gs.join(", "))
    }
}

/// `(A : B) = {r : r·b ∈ A for all b ∈ B}`, the kernel of
/// `R → ⊕_b (R/A)(deg b)`, `1 ↦ (b)_b`.
pub fn ideal_quotient(a: &Ideal, b: &[Poly]) -> Ideal {
    let ring = &a.ring;
    let bs: Vec<Poly> = b.iter().map(|p| ring.nf(p)).filter(|p| !p.is_zero()).collect();
    if bs.is_empty() {
        return Ideal::unit(ring);
    }
    let quotient = a.quotient_module();
    let mut target = GradedModule::zero(ring);
    let mut image = Vec::new();
    for p in &bs {
        let deg = ring.poly_degree(p).expect("homogeneous quotient generator");
        target = target.direct_sum(&quotient.shift(&deg.neg()));
        image.push(p.clone());
    }
    annihilator_of_vector(ring, target, image)
}

/// `{r : r·v = 0}` for a degree-zero element `v` of `target`.
fn annihilator_of_vector(ring: &RingRef, target: GradedModule, v: Column) -> Ideal {
    let source = GradedModule::ring_module(ring);
    let map = ModuleMap::new(source, target, vec![v]).expect("degree-zero vector");
    let k = map.kernel();
    let gens = k.gens.into_iter().map(|e| e.col[0].clone()).collect();
    Ideal::new(ring, gens).unwrap().minimalized()
}

/// `(0 :_R M)`; the unit ideal when `M = 0`.
pub fn annihilator(m: &GradedModule) -> Ideal {
    let ring = &m.ring;
    let mut target = GradedModule::zero(ring);
    let mut v = Vec::new();
    let g = m.num_generators();
    for j in 0..g {
        target = target.direct_sum(&m.shift(&m.shifts[j].neg()));
        let mut e = vec![Poly::zero(); g];
        e[j] = ring.poly.constant(1);
        v.extend(e);
    }
    if g == 0 {
        return Ideal::unit(ring);
    }
    annihilator_of_vector(ring, target, v)
}

/// Whether `f ∈ √(I)`, by testing `1 ∈ (I + J, 1 - t·f)` in `S[t]`.
pub fn radical_contains(i: &Ideal, f: &Poly) -> bool {
    let ring = &i.ring;
    let f = ring.nf(f);
    if f.is_zero() {
        return true;
    }
    let n = ring.nvars();
    let mut names = ring.poly.names.clone();
    names.push(format!("{}_t", names.join("")));
    let ext = PolyRing { names, field: ring.poly.field, order: ring.poly.order.extended() };
    let t = Monomial::var(n);
    let mut gens: Vec<Poly> = i.gens.iter().chain(ring.relation_gb.iter()).map(|g| ext.resort(g)).collect();
    let tf = ext.mul_term(&ext.resort(&f), &t, 1);
    gens.push(ext.sub(&ext.constant(1), &tf));
    ideal_gb(&ext, &gens).iter().any(|g| g.is_unit())
}

/// Krull dimension of `R/I`: the largest set of variables containing the
/// support of no lead monomial of `I + J`.
pub fn krull_dimension(i: &Ideal) -> Result<usize> {
    let gb = i.lifted_gb();
    if gb.iter().any(|g| g.is_unit()) {
        return Err(Error::UnitIdeal);
    }
    let masks: Vec<u32> = gb.iter().map(|g| g.terms[0].0.support_mask()).collect();
    let n = i.ring.nvars();
    let mut best = 0;
    for u in 0u32..(1 << n) {
        let size = u.count_ones() as usize;
        if size > best && masks.iter().all(|&m| m & !u != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Krull dimension of a module: the dimension of `R/ann M`, or `None` for
/// the zero module.
pub fn module_dimension(m: &GradedModule) -> Option<usize> {
    krull_dimension(&annihilator(m)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderKind;
    use crate::ring::{Grading, Ring};

    fn s2() -> RingRef {
        Ring::from_text(&["x", "y"], &[], Grading::Fine, OrderKind::Grevlex).unwrap()
    }

    fn rxy() -> RingRef {
        Ring::from_text(&["x", "y"], &["x*y"], Grading::Fine, OrderKind::Grevlex).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> Poly {
        r.parse(s).unwrap()
    }

    #[test]
    fn groebner_basis_examples() {
        let s2 = s2();
        let gb = GroebnerBasis::new(&s2, 1, &[vec![p(&s2, "x^2")], vec![p(&s2, "x*y")]]).unwrap();
        assert_eq!(gb.generators().len(), 2);
        assert!(gb.is_groebner());
        assert_eq!(gb.normal_form(&vec![p(&s2, "x + y")]).unwrap(), vec![p(&s2, "x + y")]);

        let r = rxy();
        let gb = GroebnerBasis::new(&r, 1, &[vec![p(&r, "x")]]).unwrap();
        assert_eq!(gb.generators(), vec![vec![p(&r, "x")]]);
        assert!(gb.contains(&vec![s2.poly.mul(&p(&r, "x"), &p(&r, "y"))]).unwrap());

        let xy = GroebnerBasis::new(&s2, 1, &[vec![p(&s2, "x*y")]]).unwrap();
        assert!(xy.normal_form(&vec![p(&s2, "x^2*y")]).unwrap()[0].is_zero());
        let e = xy.normal_form(&vec![Poly::zero(), Poly::zero()]).unwrap_err();
        assert_eq!(e, Error::RankMismatch { expected: 1, got: 2 });
    }

    #[test]
    fn lex_substitution() {
        let r = Ring::from_text(&["y", "x"], &[], Grading::Coarse(vec![1, 1]), OrderKind::Lex).unwrap();
        // inhomogeneous input is fine for the raw basis
        let gb = GroebnerBasis::new(&r, 1, &[vec![p(&r, "y - x^2")]]).unwrap();
        assert_eq!(gb.normal_form(&vec![p(&r, "y^2")]).unwrap(), vec![p(&r, "x^4")]);
    }

    #[test]
    fn syzygy_examples() {
        let s2 = s2();
        let f = FreeModule::new(s2.clone(), vec![Degree(vec![0, 0])]);
        let gens = vec![f.elem(vec![p(&s2, "x^2")]).unwrap(), f.elem(vec![p(&s2, "x*y")]).unwrap()];
        let syz = syzygies(&f, &gens);
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].deg, Degree(vec![2, 1]));
        let combo = f.add(&f.mul_poly(&vec![p(&s2, "x^2")], &syz[0].col[0]), &f.mul_poly(&vec![p(&s2, "x*y")], &syz[0].col[1]));
        assert!(FreeModule::is_zero(&combo));
    }

    #[test]
    fn quotients_and_annihilators() {
        let s2 = s2();
        let q = ideal_quotient(&Ideal::parse(&s2, &["x*y"]).unwrap(), &[p(&s2, "x")]);
        assert_eq!(q.gens, vec![p(&s2, "y")]);
        let q = ideal_quotient(&Ideal::parse(&s2, &["x"]).unwrap(), &[p(&s2, "1")]);
        assert_eq!(q.gens, vec![p(&s2, "x")]);
        let r = rxy();
        let q = ideal_quotient(&Ideal::zero(&r), &[p(&r, "y")]);
        assert_eq!(q.gens, vec![p(&r, "x")]);

        let m = GradedModule::cyclic(&r, &[p(&r, "x")]).unwrap();
        assert_eq!(annihilator(&m).gens, vec![p(&r, "x")]);
        assert!(annihilator(&GradedModule::ring_module(&s2)).is_zero());
        let n = m.shift(&Degree(vec![0, 1]));
        assert_eq!(annihilator(&n).gens, vec![p(&r, "x")]);
        assert!(annihilator(&GradedModule::zero(&r)).is_unit());
    }

    #[test]
    fn radical_membership() {
        let s2 = s2();
        assert!(radical_contains(&Ideal::parse(&s2, &["x^2"]).unwrap(), &p(&s2, "x")));
        assert!(!radical_contains(&Ideal::parse(&s2, &["x*y"]).unwrap(), &p(&s2, "x")));
        assert!(radical_contains(&Ideal::parse(&s2, &["x^2", "y^3"]).unwrap(), &p(&s2, "x")));
        assert!(radical_contains(&Ideal::parse(&s2, &["x^2", "y^3"]).unwrap(), &p(&s2, "x*y + y^2")));
    }

    #[test]
    fn dimensions() {
        let s2 = s2();
        assert_eq!(krull_dimension(&Ideal::parse(&s2, &["x*y"]).unwrap()).unwrap(), 1);
        assert_eq!(krull_dimension(&Ideal::maximal(&s2)).unwrap(), 0);
        assert_eq!(krull_dimension(&Ideal::unit(&s2)), Err(Error::UnitIdeal));
        let s4 = Ring::from_text(&["x", "y", "t", "u"], &[], Grading::Fine, OrderKind::Grevlex).unwrap();
        let i = Ideal::parse(&s4, &["x^2", "x*y", "y^2", "t^2", "t*u", "u^2"]).unwrap();
        assert_eq!(krull_dimension(&i).unwrap(), 0);
    }
}
