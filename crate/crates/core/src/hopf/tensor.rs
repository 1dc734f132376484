//! Finite tensors of order 2 or 3 over the PBW basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::RatFunc;
use crate::error::{domain, Result};
use crate::pbw::{mul_monomials, Monomial, PbwElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    order: usize,
    terms: BTreeMap<Vec<Monomial>, RatFunc>,
}

impl TensorElement {
    pub fn zero(order: usize) -> Self {
        TensorElement { order, terms: BTreeMap::new() }
    }

    /// `1 (x) ... (x) 1`.
    pub fn one(order: usize) -> Self {
        Self::pure(vec![Monomial::ONE; order], RatFunc::one())
    }

    pub fn pure(slots: Vec<Monomial>, c: RatFunc) -> Self {
        let mut t = Self::zero(slots.len());
        t.add_term(slots, &c);
        t
    }

    /// `x (x) y`.
    pub fn tensor2(x: &PbwElement, y: &PbwElement) -> Self {
        let mut t = Self::zero(2);
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                t.add_term(vec![*m1, *m2], &(c1 * c2));
            }
        }
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(RatFunc::is_integral)
    }

    pub fn add_term(&mut self, slots: Vec<Monomial>, c: &RatFunc) {
        debug_assert_eq!(slots.len(), self.order);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&slots) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&slots);
                }
            }
            None => {
                self.terms.insert(slots, c.clone());
            }
        }
    }

    pub fn add(&self, o: &TensorElement) -> Result<TensorElement> {
        if self.order != o.order {
            return domain("tensor order mismatch");
        }
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(s.clone(), c);
        }
        Ok(r)
    }

    pub fn sub(&self, o: &TensorElement) -> Result<TensorElement> {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> TensorElement {
        let mut r = Self::zero(self.order);
        for (s, x) in &self.terms {
            r.add_term(s.clone(), &(x * c));
        }
        r
    }

    /// Componentwise product.
    pub fn mul(&self, o: &TensorElement) -> Result<TensorElement> {
        if self.order != o.order {
            return domain("tensor order mismatch");
        }
        let mut r = Self::zero(self.order);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &o.terms {
                let c = c1 * c2;
                let mut partial: Vec<(Vec<Monomial>, RatFunc)> = vec![(Vec::new(), c)];
                for (x, y) in s1.iter().zip(s2) {
                    let prods = mul_monomials(*x, *y);
                    let mut next = Vec::with_capacity(partial.len() * prods.len());
                    for (slots, pc) in &partial {
                        for (m, w) in &prods {
                            let mut ns = slots.clone();
                            ns.push(*m);
                            next.push((ns, pc.mul_laurent(w)));
                        }
                    }
                    partial = next;
                }
                for (slots, pc) in partial {
                    r.add_term(slots, &pc);
                }
            }
        }
        Ok(r)
    }

    /// Applies `f` to slot `i` (a linear map given on basis monomials),
    /// which may raise the order.
    pub fn map_slot(
        &self,
        i: usize,
        new_order: usize,
        f: impl Fn(&Monomial) -> Result<Vec<(Vec<Monomial>, RatFunc)>>,
    ) -> Result<TensorElement> {
        let mut r = Self::zero(new_order);
        for (s, c) in &self.terms {
            for (image, w) in f(&s[i])? {
                let mut ns: Vec<Monomial> = Vec::with_capacity(new_order);
                ns.extend_from_slice(&s[..i]);
                ns.extend(image);
                ns.extend_from_slice(&s[i + 1..]);
                if ns.len() != new_order {
                    return domain("slot map produced the wrong order");
                }
                r.add_term(ns, &(c * &w));
            }
        }
        Ok(r)
    }

    /// Multiplies the slots together (`x (x) y -> xy`).
    pub fn contract(&self) -> PbwElement {
        let mut acc = PbwElement::zero();
        for (s, c) in &self.terms {
            let mut x = PbwElement::term(Monomial::ONE, c.clone());
            for m in s {
                x = &x * &PbwElement::monomial(*m);
            }
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for TensorElement {
    /// `(coeff) [x] (x) [y] + ...`, ascending by slot.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let slots: Vec<String> = s.iter().map(|m| format!("[{m}]")).collect();
            write!(f, "({c}) {}", slots.join(" (x) "))?;
        }
        Ok(())
    }
}
