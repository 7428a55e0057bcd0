//! Monomials, multidegrees and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_VARS: usize = 12;

/// Exponent vector. Slots beyond the ring's variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn from_exponents(e: &[u32]) -> Monomial {
        assert!(e.len() <= MAX_VARS);
        let mut exps = [0u16; MAX_VARS];
        for (slot, &v) in exps.iter_mut().zip(e) {
            *slot = u16::try_from(v).expect("exponent overflow");
        }
        Monomial { exps }
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial { exps }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            if self.exps[i] > other.exps[i] {
                return None;
            }
            exps[i] = other.exps[i] - self.exps[i];
        }
        Some(Monomial { exps })
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut exps = self.exps;
        for a in exps.iter_mut() {
            *a = u16::try_from(*a as u32 * k).expect("exponent overflow");
        }
        Monomial { exps }
    }

    /// Variables occurring in the monomial, as a bitmask.
    pub fn support_mask(&self) -> u32 {
        let mut m = 0;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

/// Degree of a homogeneous element: a vector of length `n` in the fine
/// multigrading, a single integer in the coarse weighted grading.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<i32>);

impl Degree {
    pub fn zero(len: usize) -> Degree {
        Degree(vec![0; len])
    }

    pub fn add(&self, o: &Degree) -> Degree {
        Degree(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Degree) -> Degree {
        Degree(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Degree {
        Degree(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= o`.
    pub fn le(&self, o: &Degree) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, v) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// A monomial order on `n` variables. `perm[0]` is the most significant
/// variable; grevlex compares weighted degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn grevlex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: (0..n).collect(), weights: vec![1; n] }
    }

    pub fn lex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..n).collect(), weights: vec![1; n] }
    }

    pub fn with_weights(mut self, w: &[u32]) -> Self {
        self.weights = w.to_vec();
        self
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        self.weights.iter().enumerate().map(|(i, &w)| w as u64 * m.exp(i) as u64).sum()
    }

    /// The same order on one extra variable, which becomes the least
    /// significant one and carries weight 1.
    pub fn extended(&self) -> Self {
        let n = self.nvars();
        let mut perm = self.perm.clone();
        perm.push(n);
        let mut weights = self.weights.clone();
        weights.push(1);
        MonomialOrder { kind: self.kind, perm, weights }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match self.weighted_degree(a).cmp(&self.weighted_degree(b)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &v in self.perm.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 4).prop_map(|v| Monomial::from_exponents(&v))
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex(3);
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        assert_eq!(o.cmp(&y, &z), Ordering::Greater);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&x.mul(&z), &y.mul(&y)), Ordering::Less);
        assert_eq!(o.cmp(&Monomial::ONE, &z), Ordering::Less);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::lex(2);
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert_eq!(o.cmp(&x, &y.pow(5)), Ordering::Greater);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn orders_are_monomial_orders(a in mono(), b in mono(), c in mono(), lex in any::<bool>()) {
            let o = if lex { MonomialOrder::lex(4) } else { MonomialOrder::grevlex(4).with_weights(&[1, 2, 3, 1]) };
            // antisymmetry and totality
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            // multiplicativity
            if o.cmp(&a, &b) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
            }
            // 1 is minimal
            prop_assert_ne!(o.cmp(&Monomial::ONE, &a), Ordering::Greater);
            // transitivity
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
