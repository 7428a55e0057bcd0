//! Graded quotient rings `R = S/J` of a polynomial ring over GF(p).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::engine::{self, Ctx, ModuleOrder, ModuleOrderKind, MVec};
use crate::monomial::{Degree, Monomial, MonomialOrder, OrderKind, MAX_VARS};
use crate::poly::{Poly, PolyRing};
use crate::polyparse::parse_poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    /// `Z^n` grading by exponent vectors.
    Fine,
    /// `Z` grading with positive variable weights.
    Coarse(Vec<u32>),
}

/// Everything needed to build a ring, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub names: Vec<String>,
    pub characteristic: u32,
    pub order: OrderKind,
    pub grading: Grading,
    pub relations: Vec<Poly>,
}

pub struct Ring {
    pub poly: PolyRing,
    pub grading: Grading,
    /// Relations as given.
    pub relations: Vec<Poly>,
    /// Reduced Gröbner basis of the relation ideal.
    pub relation_gb: Vec<Poly>,
    pub monomial_relations: bool,
    standard: RwLock<HashMap<Degree, Arc<Vec<Monomial>>>>,
}

impl PartialEq for Ring {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly && self.grading == o.grading && self.relation_gb == o.relation_gb
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

pub type RingRef = Arc<Ring>;

impl Ring {
    /// Validates a ring description and computes the relation Gröbner basis.
    pub fn new(spec: RingSpec) -> Result<RingRef> {
        let n = spec.names.len();
        if n >= MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        for (i, a) in spec.names.iter().enumerate() {
            if spec.names[..i].contains(a) {
                return Err(Error::DuplicateVariable(a.clone()));
            }
        }
        let field = PrimeField::new(spec.characteristic)?;
        let weights = match &spec.grading {
            Grading::Fine => vec![1; n],
            Grading::Coarse(w) => {
                if w.len() != n || w.iter().any(|&x| x == 0) {
                    return Err(Error::BadWeights);
                }
                w.clone()
            }
        };
        let order = match spec.order {
            OrderKind::Grevlex => MonomialOrder::grevlex(n),
            OrderKind::Lex => MonomialOrder::lex(n),
        }
        .with_weights(&weights);
        let poly = PolyRing { names: spec.names.clone(), field, order };
        let mut ring = Ring {
            poly,
            grading: spec.grading.clone(),
            relations: Vec::new(),
            relation_gb: Vec::new(),
            monomial_relations: true,
            standard: RwLock::new(HashMap::new()),
        };
        let mut rels = Vec::new();
        for r in &spec.relations {
            let r = ring.poly.resort(r);
            if r.is_zero() {
                continue;
            }
            if ring.grading == Grading::Fine && !r.is_monomial() {
                return Err(Error::FineGradingNeedsMonomialRelations(ring.poly.format(&r)));
            }
            if ring.poly_degree(&r).is_none() {
                return Err(Error::NonHomogeneousRelation(ring.poly.format(&r)));
            }
            rels.push(r);
        }
        ring.monomial_relations = rels.iter().all(|r| r.is_monomial());
        ring.relation_gb = ideal_gb(&ring.poly, &rels);
        ring.relations = rels;
        Ok(Arc::new(ring))
    }

    /// Parses relations given as text against the ring's variables.
    pub fn from_text(
        names: &[&str],
        relations: &[&str],
        grading: Grading,
        order: OrderKind,
    ) -> Result<RingRef> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        let pr = PolyRing { names: names.clone(), field: PrimeField::default(), order: MonomialOrder::grevlex(n) };
        let rels = relations
            .iter()
            .map(|t| parse_poly(&pr, t).map_err(|e| Error::Other(e.message)))
            .collect::<Result<Vec<_>>>()?;
        Ring::new(RingSpec {
            names,
            characteristic: crate::field::DEFAULT_CHARACTERISTIC,
            order,
            grading,
            relations: rels,
        })
    }

    /// The same ring without relations.
    pub fn ambient(&self) -> RingRef {
        self.with_relations(Vec::new())
    }

    /// Same variables, grading and order, other relations.
    pub fn with_relations(&self, rels: Vec<Poly>) -> RingRef {
        Ring::new(RingSpec {
            names: self.poly.names.clone(),
            characteristic: self.poly.field.characteristic(),
            order: self.poly.order.kind,
            grading: self.grading.clone(),
            relations: rels,
        })
        .expect("relations of a valid ring stay valid")
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec {
            names: self.poly.names.clone(),
            characteristic: self.poly.field.characteristic(),
            order: self.poly.order.kind,
            grading: self.grading.clone(),
            relations: self.relations.clone(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relation_gb.is_empty()
    }

    /// Length of a degree vector in this ring's grading.
    pub fn degree_len(&self) -> usize {
        match self.grading {
            Grading::Fine => self.nvars(),
            Grading::Coarse(_) => 1,
        }
    }

    pub fn zero_degree(&self) -> Degree {
        Degree::zero(self.degree_len())
    }

    pub fn check_degree(&self, d: &Degree) -> Result<()> {
        if d.len() == self.degree_len() {
            Ok(())
        } else {
            Err(Error::GradingModeMismatch)
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        match &self.grading {
            Grading::Fine => Degree((0..self.nvars()).map(|i| m.exp(i) as i32).collect()),
            Grading::Coarse(w) => {
                Degree(vec![w.iter().enumerate().map(|(i, &wi)| wi as i32 * m.exp(i) as i32).sum()])
            }
        }
    }

    /// Degree of a homogeneous nonzero polynomial; `None` if zero or inhomogeneous.
    pub fn poly_degree(&self, p: &Poly) -> Option<Degree> {
        let d = self.monomial_degree(&p.lead()?.0);
        if p.terms.iter().all(|(m, _)| self.monomial_degree(m) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Sum of variable degrees: the shift of the canonical module of `S`.
    pub fn canonical_shift(&self) -> Degree {
        match &self.grading {
            Grading::Fine => Degree(vec![1; self.nvars()]),
            Grading::Coarse(w) => Degree(vec![w.iter().map(|&x| x as i32).sum()]),
        }
    }

    /// Normal form modulo the relations.
    pub fn nf(&self, p: &Poly) -> Poly {
        if self.relation_gb.is_empty() || p.is_zero() {
            return p.clone();
        }
        if self.monomial_relations {
            let terms: Vec<_> = p
                .terms
                .iter()
                .filter(|(m, _)| !self.relation_gb.iter().any(|g| g.terms[0].0.divides(m)))
                .copied()
                .collect();
            return Poly { terms };
        }
        let mo = ModuleOrder { kind: ModuleOrderKind::Pot, shifts: vec![0] };
        let ctx = Ctx::new(&self.poly, &mo);
        let basis: Vec<MVec> = self.relation_gb.iter().map(|g| ctx.from_column(std::slice::from_ref(g))).collect();
        let r = engine::normal_form(&ctx, &ctx.from_column(std::slice::from_ref(p)), &basis);
        ctx.to_column(&r, 1).pop().unwrap()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.nf(&self.poly.mul(a, b))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.relation_gb.iter().any(|g| g.terms[0].0.divides(m))
    }

    /// All monomials of `S` of the given degree.
    pub fn monomials_of_degree(&self, d: &Degree) -> Vec<Monomial> {
        match &self.grading {
            Grading::Fine => {
                if d.0.iter().any(|&e| e < 0) {
                    Vec::new()
                } else {
                    vec![Monomial::from_exponents(&d.0.iter().map(|&e| e as u32).collect::<Vec<_>>())]
                }
            }
            Grading::Coarse(w) => {
                let target = d.0[0];
                if target < 0 {
                    return Vec::new();
                }
                let mut out = Vec::new();
                let mut cur = vec![0u32; w.len()];
                enumerate_weighted(w, 0, target as u32, &mut cur, &mut out);
                out
            }
        }
    }

    /// Monomials of the given degree not in the initial ideal of the relations:
    /// a vector-space basis of `R_d`.
    pub fn standard_monomials(&self, d: &Degree) -> Arc<Vec<Monomial>> {
        if let Some(v) = self.standard.read().unwrap().get(d) {
            return v.clone();
        }
        let v: Vec<Monomial> = self.monomials_of_degree(d).into_iter().filter(|m| self.is_standard(m)).collect();
        let v = Arc::new(v);
        self.standard.write().unwrap().insert(d.clone(), v.clone());
        v
    }

    /// Whether `R` is Artinian (finite-dimensional over the field).
    pub fn is_artinian(&self) -> bool {
        (0..self.nvars()).all(|i| {
            self.relation_gb.iter().any(|g| {
                let m = g.terms[0].0;
                m.exp(i) > 0 && m.support_mask() == 1 << i
            })
        })
    }

    /// All standard monomials of an Artinian ring.
    pub fn all_standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_artinian() {
            return None;
        }
        let n = self.nvars();
        let bounds: Vec<u32> = (0..n)
            .map(|i| {
                self.relation_gb
                    .iter()
                    .map(|g| g.terms[0].0)
                    .filter(|m| m.support_mask() == 1 << i)
                    .map(|m| m.exp(i))
                    .min()
                    .unwrap()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(&cur);
            if self.is_standard(&m) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Some(out);
                }
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse_poly(&self.poly, text).map_err(|e| Error::Other(format!("{} at offset {}", e.message, e.offset)))
    }

    pub fn describe(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|r| self.poly.format(r)).collect();
        let grading = match &self.grading {
            Grading::Fine => "fine".to_string(),
            Grading::Coarse(w) => format!("weights {w:?}"),
        };
        format!(
            "GF({})[{}]/({}) {}",
            self.poly.field.characteristic(),
            self.poly.names.join(","),
            rels.join(", "),
            grading
        )
    }
}

fn enumerate_weighted(w: &[u32], i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == w.len() - 1 {
        if rest % w[i] == 0 {
            cur[i] = rest / w[i];
            out.push(Monomial::from_exponents(cur));
        }
        return;
    }
    let mut e = 0;
    while e * w[i] <= rest {
        cur[i] = e;
        enumerate_weighted(w, i + 1, rest - e * w[i], cur, out);
        e += 1;
    }
    cur[i] = 0;
}

/// Reduced Gröbner basis of an ideal of the ambient ring.
pub fn ideal_gb(ring: &PolyRing, gens: &[Poly]) -> Vec<Poly> {
    let mo = ModuleOrder { kind: ModuleOrderKind::Pot, shifts: vec![0] };
    let ctx = Ctx::new(ring, &mo);
    let vs: Vec<MVec> = gens.iter().map(|g| ctx.from_column(std::slice::from_ref(g))).collect();
    engine::buchberger(&ctx, &vs).iter().map(|v| ctx.to_column(v, 1).pop().unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_rings_validate() {
        let s2 = Ring::from_text(&["x", "y"], &[], Grading::Fine, OrderKind::Grevlex).unwrap();
        assert_eq!(s2.nvars(), 2);
        assert!(s2.is_polynomial_ring());
        let rxy = Ring::from_text(&["x", "y"], &["x*y"], Grading::Fine, OrderKind::Grevlex).unwrap();
        assert!(rxy.monomial_relations);
        let r36 = Ring::from_text(
            &["x", "y", "t", "u"],
            &["x^2", "x*y", "y^2", "t^2", "t*u", "u^2"],
            Grading::Fine,
            OrderKind::Grevlex,
        )
        .unwrap();
        assert!(r36.is_artinian());
        assert_eq!(r36.all_standard_monomials().unwrap().len(), 9);
    }

    #[test]
    fn validation_errors() {
        let e = Ring::from_text(&["x", "y"], &["x + y^2"], Grading::Coarse(vec![1, 1]), OrderKind::Grevlex).unwrap_err();
        assert!(matches!(e, Error::NonHomogeneousRelation(_)));
        let e = Ring::from_text(&["x", "y"], &["x^2 - y^2"], Grading::Fine, OrderKind::Grevlex).unwrap_err();
        assert!(matches!(e, Error::FineGradingNeedsMonomialRelations(_)));
        let e = Ring::from_text(&["x", "x"], &[], Grading::Fine, OrderKind::Grevlex).unwrap_err();
        assert!(matches!(e, Error::DuplicateVariable(_)));
        let e = Ring::from_text(&["x"], &[], Grading::Coarse(vec![0]), OrderKind::Grevlex).unwrap_err();
        assert_eq!(e, Error::BadWeights);
        assert!(Ring::new(RingSpec {
            names: vec!["x".into()],
            characteristic: 32002,
            order: OrderKind::Grevlex,
            grading: Grading::Fine,
            relations: vec![]
        })
        .is_err());
    }

    #[test]
    fn semigroup_ring_is_weighted_homogeneous() {
        let r = Ring::from_text(
            &["x", "y", "z"],
            &["y^2 - x*z", "z^2 - x^2*y", "y*z - x^3"],
            Grading::Coarse(vec![3, 4, 5]),
            OrderKind::Grevlex,
        )
        .unwrap();
        assert!(!r.monomial_relations);
        // k[t^3, t^4, t^5]: every piece has dimension at most one.
        for d in 0..30 {
            let dim = r.standard_monomials(&Degree(vec![d])).len();
            let expect = if d == 0 || d >= 3 { 1 } else { 0 };
            assert_eq!(dim, expect, "degree {d}");
        }
    }
}
