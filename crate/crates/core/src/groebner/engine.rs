//! Buchberger's algorithm for submodules of free modules `S^r` over a
//! polynomial ring, with the normal selection strategy and both criteria.
//!
//! Elements are sparse vectors of `(position, monomial, coefficient)` terms,
//! sorted descending in a module order. Ideals are rank-one modules.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrderKind {
    /// Position over term: lower positions dominate.
    Pot,
    /// Degree (including the position shift), then term, then position.
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub pos: u32,
    pub mon: Monomial,
    pub coef: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MVec {
    pub terms: Vec<Term>,
}

impl MVec {
    pub fn zero() -> Self {
        MVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }
}

/// A module order on `S^r`. `shifts[i]` is the weighted degree of basis
/// vector `i`, used by the degree-first order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleOrder {
    pub kind: ModuleOrderKind,
    pub shifts: Vec<i64>,
}

/// The ring and module order every operation in this file runs against.
#[derive(Clone, Copy)]
pub struct Ctx<'a> {
    pub ring: &'a PolyRing,
    pub order: &'a ModuleOrder,
}

impl<'a> Ctx<'a> {
    pub fn new(ring: &'a PolyRing, order: &'a ModuleOrder) -> Self {
        Ctx { ring, order }
    }

    #[inline]
    fn term_degree(&self, pos: u32, m: &Monomial) -> i64 {
        self.ring.order.weighted_degree(m) as i64 + self.order.shifts.get(pos as usize).copied().unwrap_or(0)
    }

    #[inline]
    pub fn cmp_terms(&self, p1: u32, m1: &Monomial, p2: u32, m2: &Monomial) -> Ordering {
        match self.order.kind {
            ModuleOrderKind::Pot => match p2.cmp(&p1) {
                Ordering::Equal => self.ring.cmp(m1, m2),
                o => o,
            },
            ModuleOrderKind::Top => {
                match self.term_degree(p1, m1).cmp(&self.term_degree(p2, m2)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                match self.ring.cmp(m1, m2) {
                    Ordering::Equal => p2.cmp(&p1),
                    o => o,
                }
            }
        }
    }

    pub fn from_terms(&self, mut terms: Vec<Term>) -> MVec {
        terms.sort_by(|a, b| self.cmp_terms(b.pos, &b.mon, a.pos, &a.mon));
        let f = &self.ring.field;
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.pos == t.pos && last.mon == t.mon {
                    last.coef = f.add(last.coef, t.coef);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| t.coef != 0);
        MVec { terms: out }
    }

    /// Column of polynomials to a module element.
    pub fn from_column(&self, col: &[Poly]) -> MVec {
        let terms = col
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms.iter().map(move |(m, c)| Term { pos: i as u32, mon: *m, coef: *c }))
            .collect();
        self.from_terms(terms)
    }

    pub fn to_column(&self, v: &MVec, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &v.terms {
            buckets[t.pos as usize].push((t.mon, t.coef));
        }
        buckets.into_iter().map(|b| self.ring.from_terms(b)).collect()
    }

    /// `a + c * m * b`.
    pub fn axpy(&self, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vec<Term> {
        let f = &self.ring.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].mon.mul(m);
            match self.cmp_terms(a[i].pos, &a[i].mon, b[j].pos, &bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { pos: b[j].pos, mon: bm, coef: f.mul(c, b[j].coef) });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].coef, f.mul(c, b[j].coef));
                    if v != 0 {
                        out.push(Term { pos: a[i].pos, mon: bm, coef: v });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            out.push(Term { pos: b[j].pos, mon: b[j].mon.mul(m), coef: f.mul(c, b[j].coef) });
            j += 1;
        }
        out
    }

    pub fn monic(&self, v: &MVec) -> MVec {
        match v.lead() {
            None => MVec::zero(),
            Some(t) if t.coef == 1 => v.clone(),
            Some(t) => {
                let inv = self.ring.field.inv_nz(t.coef);
                MVec {
                    terms: v
                        .terms
                        .iter()
                        .map(|s| Term { pos: s.pos, mon: s.mon, coef: self.ring.field.mul(s.coef, inv) })
                        .collect(),
                }
            }
        }
    }

    pub fn spair(&self, a: &MVec, b: &MVec) -> MVec {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        debug_assert_eq!(la.pos, lb.pos);
        let l = la.mon.lcm(&lb.mon);
        let ma = la.mon.quotient(&l).unwrap();
        let mb = lb.mon.quotient(&l).unwrap();
        let f = &self.ring.field;
        // lc_b * ma * a - lc_a * mb * b
        let sa: Vec<Term> = self.axpy(&[], lb.coef, &ma, &a.terms);
        MVec { terms: self.axpy(&sa, f.neg(la.coef), &mb, &b.terms) }
    }
}

/// Lead-term index for fast reducer lookup.
struct Reducers<'b> {
    elems: &'b [MVec],
    by_pos: HashMap<u32, Vec<usize>>,
}

impl<'b> Reducers<'b> {
    fn new(elems: &'b [MVec], active: impl Iterator<Item = usize>) -> Self {
        let mut by_pos: HashMap<u32, Vec<usize>> = HashMap::new();
        for i in active {
            if let Some(t) = elems[i].lead() {
                by_pos.entry(t.pos).or_default().push(i);
            }
        }
        Reducers { elems, by_pos }
    }

    fn find(&self, pos: u32, m: &Monomial) -> Option<usize> {
        self.by_pos.get(&pos)?.iter().copied().find(|&i| self.elems[i].terms[0].mon.divides(m))
    }
}

fn reduce_with(ctx: &Ctx, v: &MVec, red: &Reducers, full: bool) -> MVec {
    let f = &ctx.ring.field;
    let mut rem: Vec<Term> = Vec::new();
    let mut cur: Vec<Term> = v.terms.clone();
    let mut start = 0;
    while start < cur.len() {
        let t = cur[start];
        match red.find(t.pos, &t.mon) {
            Some(i) => {
                let g = &red.elems[i];
                let lg = g.terms[0];
                let q = lg.mon.quotient(&t.mon).unwrap();
                let c = f.neg(f.mul(t.coef, f.inv_nz(lg.coef)));
                cur = ctx.axpy(&cur[start..], c, &q, &g.terms);
                start = 0;
            }
            None => {
                if !full {
                    let mut out = rem;
                    out.extend_from_slice(&cur[start..]);
                    return MVec { terms: out };
                }
                rem.push(t);
                start += 1;
            }
        }
    }
    MVec { terms: rem }
}

/// Full normal form of `v` with respect to `basis`.
pub fn normal_form(ctx: &Ctx, v: &MVec, basis: &[MVec]) -> MVec {
    let red = Reducers::new(basis, 0..basis.len());
    reduce_with(ctx, v, &red, true)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: i64,
    j: usize,
    i: usize,
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(ctx: &Ctx, gens: &[MVec]) -> Vec<MVec> {
    let rank_one = gens.iter().all(|g| g.terms.iter().all(|t| t.pos == 0));
    let mut input: Vec<MVec> = gens.iter().filter(|g| !g.is_zero()).map(|g| ctx.monic(g)).collect();
    input.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        ctx.term_degree(la.pos, &la.mon).cmp(&ctx.term_degree(lb.pos, &lb.mon))
    });

    let mut basis: Vec<MVec> = Vec::new();
    let mut pending: BTreeSet<PairKey> = BTreeSet::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let lcm_degree = |basis: &[MVec], i: usize, j: usize| {
        let a = basis[i].lead().unwrap();
        let b = basis[j].lead().unwrap();
        ctx.term_degree(a.pos, &a.mon.lcm(&b.mon))
    };

    let add = |basis: &mut Vec<MVec>,
               pending: &mut BTreeSet<PairKey>,
               pending_set: &mut HashSet<(usize, usize)>,
               v: MVec| {
        let j = basis.len();
        let lj = *v.lead().unwrap();
        basis.push(v);
        for i in 0..j {
            let li = basis[i].lead().unwrap();
            if li.pos != lj.pos {
                continue;
            }
            if rank_one && li.mon.is_coprime(&lj.mon) {
                // product criterion
                continue;
            }
            let key = PairKey { degree: lcm_degree(basis, i, j), j, i };
            pending.insert(key);
            pending_set.insert((i, j));
        }
    };

    for g in input {
        let red = Reducers::new(&basis, 0..basis.len());
        let r = reduce_with(ctx, &g, &red, false);
        if !r.is_zero() {
            add(&mut basis, &mut pending, &mut pending_set, ctx.monic(&r));
        }
    }

    while let Some(key) = pending.pop_first() {
        let (i, j) = (key.i, key.j);
        pending_set.remove(&(i, j));
        let li = *basis[i].lead().unwrap();
        let lj = *basis[j].lead().unwrap();
        let l = li.mon.lcm(&lj.mon);
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lk = basis[k].lead().unwrap();
            lk.pos == li.pos
                && lk.mon.divides(&l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = ctx.spair(&basis[i], &basis[j]);
        let red = Reducers::new(&basis, 0..basis.len());
        let r = reduce_with(ctx, &s, &red, false);
        if !r.is_zero() {
            add(&mut basis, &mut pending, &mut pending_set, ctx.monic(&r));
        }
    }
    interreduce(ctx, basis)
}

/// Minimalizes and tail-reduces a Gröbner basis.
pub fn interreduce(ctx: &Ctx, basis: Vec<MVec>) -> Vec<MVec> {
    let mut keep: Vec<MVec> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        ctx.cmp_terms(la.pos, &la.mon, lb.pos, &lb.mon)
    });
    // smaller leads first so that they survive
    for v in sorted {
        let lv = v.lead().unwrap();
        if keep.iter().any(|k| {
            let lk = k.lead().unwrap();
            lk.pos == lv.pos && lk.mon.divides(&lv.mon)
        }) {
            continue;
        }
        keep.push(v);
    }
    let n = keep.len();
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let red = Reducers::new(&keep, (0..n).filter(|&k| k != idx));
        let lead = keep[idx].terms[0];
        let tail = MVec { terms: keep[idx].terms[1..].to_vec() };
        let mut t = reduce_with(ctx, &tail, &red, true).terms;
        t.insert(0, lead);
        out.push(ctx.monic(&MVec { terms: t }));
    }
    out.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        ctx.cmp_terms(la.pos, &la.mon, lb.pos, &lb.mon)
    });
    out
}

/// Checks the Buchberger criterion: every S-pair reduces to zero.
pub fn is_groebner(ctx: &Ctx, basis: &[MVec]) -> bool {
    let red = Reducers::new(basis, 0..basis.len());
    for j in 0..basis.len() {
        for i in 0..j {
            if basis[i].lead().unwrap().pos != basis[j].lead().unwrap().pos {
                continue;
            }
            let s = ctx.spair(&basis[i], &basis[j]);
            if !reduce_with(ctx, &s, &red, true).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    fn s2(order: MonomialOrder) -> PolyRing {
        PolyRing { names: vec!["x".into(), "y".into()], field: PrimeField::default(), order }
    }

    #[test]
    fn ideal_already_groebner() {
        let r = s2(MonomialOrder::grevlex(2));
        let o = ModuleOrder { kind: ModuleOrderKind::Pot, shifts: vec![0] };
        let ctx = Ctx::new(&r, &o);
        let x = r.var(0);
        let y = r.var(1);
        let gens = vec![ctx.from_column(&[r.mul(&x, &x)]), ctx.from_column(&[r.mul(&x, &y)])];
        let gb = buchberger(&ctx, &gens);
        assert_eq!(gb.len(), 2);
        assert!(is_groebner(&ctx, &gb));
        // x + y is already reduced
        let v = ctx.from_column(&[r.add(&x, &y)]);
        assert_eq!(normal_form(&ctx, &v, &gb), v);
    }

    #[test]
    fn lex_substitution() {
        // order y > x
        let mut o = MonomialOrder::lex(2);
        o.perm = vec![1, 0];
        let r = s2(o);
        let mo = ModuleOrder { kind: ModuleOrderKind::Pot, shifts: vec![0] };
        let ctx = Ctx::new(&r, &mo);
        let x = r.var(0);
        let y = r.var(1);
        let g = r.sub(&y, &r.mul(&x, &x));
        let gb = buchberger(&ctx, &[ctx.from_column(&[g.clone()])]);
        assert_eq!(gb, vec![ctx.from_column(&[g])]);
        let nf = normal_form(&ctx, &ctx.from_column(&[r.mul(&y, &y)]), &gb);
        assert_eq!(ctx.to_column(&nf, 1)[0], r.pow(&x, 4));
    }
}
