//! Elements of the integral form in the PBW basis `F^(a) K^b e^m`.
//!
//! Here `e = (v - v^-1) E` and `F^(a) = F^a / [a]!`. The integral form is
//! free over `Z[v, v^-1]` on these monomials, so "integral" simply means
//! every coefficient is a Laurent polynomial.

pub mod grading;
pub mod irrep;
pub mod rewrite;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::{brace, brace_factorial, qbinom, LaurentInt, RatFunc};
use crate::error::{domain, Result};
use crate::torus::{falling_h, TorusElement};

pub use grading::{grade_decompose, Grading};
pub use irrep::{irrep_action, IrrepMatrix};
pub use rewrite::{normalize_word, Letter};

/// `F^(f) K^k e^e`. Ordered by `(f, e, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub f: u32,
    pub e: u32,
    pub k: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { f: 0, e: 0, k: 0 };

    pub fn new(f: u32, k: i64, e: u32) -> Self {
        Monomial { f, e, k }
    }

    /// Degree in the Z-grading, `KxK^-1 = v^{2n} x`.
    pub fn z_degree(&self) -> i64 {
        self.e as i64 - self.f as i64
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.f > 0 {
            parts.push(format!("F({})", self.f));
        }
        match self.k {
            0 => {}
            1 => parts.push("K".into()),
            k => parts.push(format!("K^{k}")),
        }
        match self.e {
            0 => {}
            1 => parts.push("e".into()),
            m => parts.push(format!("e^{m}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A finite combination of PBW monomials with coefficients in `Q(v)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PbwElement {
    terms: BTreeMap<Monomial, RatFunc>,
}

type FallingCache = OnceLock<Mutex<HashMap<(i64, u32), Arc<Vec<(i64, LaurentInt)>>>>>;
static FALLING_INT: FallingCache = OnceLock::new();

/// `BB(H+m; n)` as integral `(K-exponent, coefficient)` pairs.
pub(crate) fn falling_h_int(m: i64, n: u32) -> Arc<Vec<(i64, LaurentInt)>> {
    let map = FALLING_INT.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&(m, n)) {
        return v.clone();
    }
    let t = falling_h(m, n);
    let v: Arc<Vec<(i64, LaurentInt)>> =
        Arc::new(t.terms().iter().map(|(k, c)| (*k, c.to_laurent().expect("integral"))).collect());
    map.lock().unwrap().insert((m, n), v.clone());
    v
}

/// Product of two basis monomials:
/// `(F^(a)K^b e^m)(F^(c)K^d e^n) = sum_p qbinom(m,p) qbinom(a+c-p,a)
///  v^{-2b(c-p)-2d(m-p)} F^(a+c-p) K^{b+d} BB(H-m-c+2p; p) e^{m-p+n}`.
pub fn mul_monomials(x: Monomial, y: Monomial) -> Vec<(Monomial, LaurentInt)> {
    let (a, b, m) = (x.f, x.k, x.e);
    let (c, d, n) = (y.f, y.k, y.e);
    let mut out = Vec::new();
    for p in 0..=m.min(c) {
        let mut coef = &qbinom(m as i64, p) * &qbinom((a + c - p) as i64, a);
        coef.shift_in_place(-2 * b * (c - p) as i64 - 2 * d * (m - p) as i64);
        let bb = falling_h_int(-(m as i64) - c as i64 + 2 * p as i64, p);
        for (j, beta) in bb.iter() {
            let mon = Monomial { f: a + c - p, e: m - p + n, k: b + d + j };
            out.push((mon, &coef * beta));
        }
    }
    out
}

impl PbwElement {
    pub fn zero() -> Self {
        PbwElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, RatFunc::one())
    }

    pub fn term(m: Monomial, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PbwElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, RatFunc)>>(it: I) -> Self {
        let mut x = Self::zero();
        for (m, c) in it {
            x.add_term(m, &c);
        }
        x
    }

    /// `F^(n)`.
    pub fn f_div(n: u32) -> Self {
        Self::monomial(Monomial::new(n, 0, 0))
    }

    pub fn k_pow(b: i64) -> Self {
        Self::monomial(Monomial::new(0, b, 0))
    }

    /// `e^m`.
    pub fn e_pow(m: u32) -> Self {
        Self::monomial(Monomial::new(0, 0, m))
    }

    /// `E = e / {1}`.
    pub fn big_e() -> Self {
        Self::big_e_div(1)
    }

    /// `E^(n) = e^n / ({1}^n [n]!) = e^n / {n}!`.
    pub fn big_e_div(n: u32) -> Self {
        let c = RatFunc::new(LaurentInt::one(), brace_factorial(n)).expect("nonzero");
        Self::term(Monomial::new(0, 0, n), c)
    }

    /// `f = {1} F`.
    pub fn small_f() -> Self {
        Self::term(Monomial::new(1, 0, 0), brace(1).into())
    }

    /// `F^n = [n]! F^(n)`.
    pub fn f_pow(n: u32) -> Self {
        Self::term(Monomial::new(n, 0, 0), crate::coeff::bracket_factorial(n).into())
    }

    pub fn from_torus(t: &TorusElement) -> Self {
        Self::from_terms(t.terms().iter().map(|(k, c)| (Monomial::new(0, *k, 0), c.clone())))
    }

    /// `F^(a) t e^m` for a torus element `t`.
    pub fn sandwich(a: u32, t: &TorusElement, m: u32) -> Self {
        Self::from_terms(t.terms().iter().map(|(k, c)| (Monomial::new(a, *k, m), c.clone())))
    }

    pub fn add_term(&mut self, m: Monomial, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.integrality_witness().is_none()
    }

    /// First monomial (in basis order) whose coefficient is not in `Z[v, v^-1]`.
    pub fn integrality_witness(&self) -> Option<Monomial> {
        self.terms.iter().find(|(_, c)| !c.is_integral()).map(|(m, _)| *m)
    }

    /// Returns `c` if the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Returns the torus element if no F or e factors occur.
    pub fn as_torus(&self) -> Option<TorusElement> {
        if self.terms.keys().all(|m| m.f == 0 && m.e == 0) {
            Some(TorusElement::from_pairs(self.terms.iter().map(|(m, c)| (m.k, c.clone()))))
        } else {
            None
        }
    }

    /// Groups as `sum_{a,m} F^(a) t_{a,m} e^m`.
    pub fn components(&self) -> BTreeMap<(u32, u32), TorusElement> {
        let mut out: BTreeMap<(u32, u32), TorusElement> = BTreeMap::new();
        for (mon, c) in &self.terms {
            out.entry((mon.f, mon.e)).or_default().add_term(mon.k, c);
        }
        out
    }

    pub fn from_components(parts: &BTreeMap<(u32, u32), TorusElement>) -> Self {
        let mut x = Self::zero();
        for ((a, m), t) in parts {
            for (k, c) in t.terms() {
                x.add_term(Monomial::new(*a, *k, *m), c);
            }
        }
        x
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PbwElement { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial, &RatFunc) -> PbwElement) -> PbwElement {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            acc += &f(m, c);
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Integer power; negative exponents need an invertible `c K^b`.
    pub fn pow_signed(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let inv = self.inverse()?;
        Ok(inv.pow((-n) as u32))
    }

    /// Inverse of `c K^b` with nonzero `c`.
    pub fn inverse(&self) -> Result<Self> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.f == 0 && m.e == 0 {
                return Ok(Self::term(Monomial::new(0, -m.k, 0), c.inv()?));
            }
        }
        domain("only nonzero multiples of K^b are invertible")
    }

    fn mul_ref(&self, o: &PbwElement) -> PbwElement {
        let mut acc: HashMap<Monomial, RatFunc> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c12 = c1 * c2;
                for (mon, w) in mul_monomials(*m1, *m2) {
                    let t = c12.mul_laurent(&w);
                    match acc.get_mut(&mon) {
                        Some(x) => *x += &t,
                        None => {
                            acc.insert(mon, t);
                        }
                    }
                }
            }
        }
        PbwElement { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    fn add_ref(&self, o: &PbwElement, negate: bool) -> PbwElement {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            if negate {
                r.add_term(*m, &-c);
            } else {
                r.add_term(*m, c);
            }
        }
        r
    }
}

impl fmt::Display for PbwElement {
    /// Leading term first: descending `(a, m, b)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mon, c)) in self.terms.iter().rev().enumerate() {
            let one = RatFunc::one();
            let neg_one = -RatFunc::one();
            let is_unit_mon = *mon == Monomial::ONE;
            let (sep, body) = if *c == one {
                (" + ", if is_unit_mon { "1".to_string() } else { mon.to_string() })
            } else if *c == neg_one {
                (" - ", if is_unit_mon { "1".to_string() } else { mon.to_string() })
            } else if is_unit_mon {
                (" + ", format!("({c})"))
            } else {
                (" + ", format!("({c}) {mon}"))
            };
            if i == 0 {
                if sep == " - " {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sep}")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pbw[{self}]")
    }
}

impl From<RatFunc> for PbwElement {
    fn from(c: RatFunc) -> Self {
        PbwElement::scalar(c)
    }
}

impl From<&TorusElement> for PbwElement {
    fn from(t: &TorusElement) -> Self {
        PbwElement::from_torus(t)
    }
}

impl Neg for &PbwElement {
    type Output = PbwElement;
    fn neg(self) -> PbwElement {
        PbwElement { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for PbwElement {
    type Output = PbwElement;
    fn neg(self) -> PbwElement {
        -&self
    }
}

impl std::ops::AddAssign<&PbwElement> for PbwElement {
    fn add_assign(&mut self, rhs: &PbwElement) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl std::ops::SubAssign<&PbwElement> for PbwElement {
    fn sub_assign(&mut self, rhs: &PbwElement) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, &-c);
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&PbwElement> for &PbwElement {
            type Output = PbwElement;
            fn $m(self, rhs: &PbwElement) -> PbwElement {
                let f: fn(&PbwElement, &PbwElement) -> PbwElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<PbwElement> for PbwElement {
            type Output = PbwElement;
            fn $m(self, rhs: PbwElement) -> PbwElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PbwElement> for PbwElement {
            type Output = PbwElement;
            fn $m(self, rhs: &PbwElement) -> PbwElement {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b, false));
binop!(Sub, sub, |a, b| a.add_ref(b, true));
binop!(Mul, mul, |a, b| a.mul_ref(b));

/// `{iH + j}` as a PBW element.
pub fn brace_h_pbw(i: i64, j: i64) -> PbwElement {
    PbwElement::from_torus(&crate::torus::brace_h(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ef_straightening() {
        let x = &PbwElement::e_pow(1) * &PbwElement::f_div(1);
        assert_eq!(x.to_string(), "F(1) e + K - K^-1");
    }

    #[test]
    fn k_commutes_past_e() {
        let ke = &PbwElement::k_pow(1) * &PbwElement::e_pow(1);
        let ek = &PbwElement::e_pow(1) * &PbwElement::k_pow(1);
        assert_eq!(ke, PbwElement::monomial(Monomial::new(0, 1, 1)));
        assert_eq!(ke, ek.scale(&RatFunc::v_pow(2)));
    }

    #[test]
    fn e2_f2() {
        let x = &PbwElement::e_pow(2) * &PbwElement::f_div(2);
        let mut want = PbwElement::monomial(Monomial::new(2, 0, 2));
        let mid = PbwElement::sandwich(1, &falling_h(-2, 1), 1).scale(&crate::coeff::bracket(2).into());
        want += &mid;
        want += &PbwElement::from_torus(&falling_h(0, 2));
        assert_eq!(x, want);
    }
}
