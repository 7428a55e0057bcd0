//! Sparse polynomials over a prime field.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Arithmetic context of an ambient polynomial ring: variable names,
/// coefficient field and the monomial order polynomials are sorted by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub names: Vec<String>,
    pub field: PrimeField,
    pub order: MonomialOrder,
}

/// Terms sorted strictly descending in the owning ring's order, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Poly {
    pub terms: Vec<(Monomial, u32)>,
}

impl PolyRing {
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, u32)>) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % self.field.characteristic();
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn constant(&self, c: u32) -> Poly {
        Poly::term(Monomial::ONE, c % self.field.characteristic())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::term(Monomial::var(i), 1)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.axpy(a, 1, &Monomial::ONE, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.axpy(a, self.field.neg(1), &Monomial::ONE, b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.scale(a, self.field.neg(1))
    }

    pub fn scale(&self, a: &Poly, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, v)| (*m, self.field.mul(*v, c))).collect() }
    }

    pub fn mul_term(&self, a: &Poly, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(t, v)| (t.mul(m), self.field.mul(*v, c))).collect() }
    }

    /// `a + c * m * b`, by a sorted merge.
    pub fn axpy(&self, a: &Poly, c: u32, m: &Monomial, b: &Poly) -> Poly {
        if c == 0 || b.is_zero() {
            return a.clone();
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let bm = b.terms[j].0.mul(m);
            match self.cmp(&a.terms[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, f.mul(c, b.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a.terms[i].1, f.mul(c, b.terms[j].1));
                    if v != 0 {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        while j < b.terms.len() {
            out.push((b.terms[j].0.mul(m), f.mul(c, b.terms[j].1)));
            j += 1;
        }
        Poly { terms: out }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.terms.len() < b.terms.len() {
            return self.mul(b, a);
        }
        let mut acc = Poly::zero();
        for (m, c) in &b.terms {
            acc = self.axpy(&acc, *c, m, a);
        }
        acc
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        let mut r = self.constant(1);
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self, a: &Poly) -> Poly {
        match a.lead_coeff() {
            None => Poly::zero(),
            Some(c) => self.scale(a, self.field.inv_nz(c)),
        }
    }

    /// Re-sorts a polynomial built under some other order.
    pub fn resort(&self, a: &Poly) -> Poly {
        self.from_terms(a.terms.clone())
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let c = self.field.to_signed(*c);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if m.is_one() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&m.fmt_with(&self.names));
            } else {
                s.push_str(&format!("{mag}*{}", m.fmt_with(&self.names)));
            }
        }
        s
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn term(m: Monomial, c: u32) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lead_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing {
            names: vec!["x".into(), "y".into()],
            field: PrimeField::default(),
            order: MonomialOrder::grevlex(2),
        }
    }

    #[test]
    fn arithmetic() {
        let r = ring();
        let x = r.var(0);
        let y = r.var(1);
        let s = r.add(&x, &y);
        let d = r.sub(&x, &y);
        let p = r.mul(&s, &d);
        let expect = r.sub(&r.mul(&x, &x), &r.mul(&y, &y));
        assert_eq!(p, expect);
        assert!(r.sub(&p, &expect).is_zero());
        assert_eq!(r.format(&p), "x^2 - y^2");
    }

    #[test]
    fn from_terms_combines() {
        let r = ring();
        let x = Monomial::var(0);
        let p = r.from_terms(vec![(x, 1), (Monomial::ONE, 3), (x, 32002)]);
        assert_eq!(p, r.constant(3));
    }
}
