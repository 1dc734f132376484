//! The Cartan part `Z[v, v^-1][K, K^-1]` and its symbolic brackets.
//!
//! `H` never appears on its own; every symbol such as `{iH + j}` or the
//! falling product `BB(H + m; n)` is expanded eagerly into a Laurent
//! polynomial in `K`.

pub mod kappa;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::coeff::{LaurentInt, RatFunc};
use crate::error::{domain, AlgebraError, Result};

pub use kappa::{beta_closed, kappa, kappa_double_sum, Affine, KappaValue};

/// Laurent polynomial in `K` with coefficients in `Q(v)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TorusElement {
    terms: BTreeMap<i64, RatFunc>,
}

impl TorusElement {
    pub fn zero() -> Self {
        TorusElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::k_pow(0)
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::term(c, 0)
    }

    pub fn k_pow(b: i64) -> Self {
        Self::term(RatFunc::one(), b)
    }

    pub fn term(c: RatFunc, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(b, c);
        }
        TorusElement { terms }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, RatFunc)>>(pairs: I) -> Self {
        let mut t = Self::zero();
        for (k, c) in pairs {
            t.add_term(k, &c);
        }
        t
    }

    pub fn from_laurent_pairs<I: IntoIterator<Item = (i64, LaurentInt)>>(pairs: I) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(k, c)| (k, RatFunc::from(c))))
    }

    pub fn add_term(&mut self, k: i64, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, RatFunc> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<i64, RatFunc> {
        self.terms
    }

    pub fn coeff(&self, k: i64) -> RatFunc {
        self.terms.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(RatFunc::is_integral)
    }

    pub fn min_k(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_k(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `c` if `self = c` is a scalar.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TorusElement { terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    /// Multiplies by `K^b`.
    pub fn shift_k(&self, b: i64) -> Self {
        TorusElement { terms: self.terms.iter().map(|(k, x)| (k + b, x.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The automorphism `K -> v^j K`.
    pub fn gamma(&self, j: i64) -> Self {
        TorusElement { terms: self.terms.iter().map(|(k, x)| (*k, x.shift(j * k))).collect() }
    }

    /// The involution `K -> v^-2 K^-1`.
    pub fn w(&self) -> Self {
        TorusElement { terms: self.terms.iter().map(|(k, x)| (-k, x.shift(-2 * k))).collect() }
    }

    /// The evaluation `K -> v^j`.
    pub fn eval_k(&self, j: i64) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (k, x) in &self.terms {
            acc += &x.shift(j * k);
        }
        acc
    }

    /// Exact quotient in `Q(v)[K, K^-1]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &TorusElement) -> Result<Option<TorusElement>> {
        if d.is_zero() {
            return Err(AlgebraError::ZeroDivision);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let (dl, dh) = (d.min_k().unwrap(), d.max_k().unwrap());
        let lc_inv = d.terms[&dh].inv()?;
        let mut r = self.clone();
        let mut q = Self::zero();
        // peel from the top; the quotient's span is bounded by the spans
        while let Some(top) = r.max_k() {
            if top - dh < r.min_k().unwrap() - dl {
                return Ok(None);
            }
            let c = &r.terms[&top] * &lc_inv;
            let step = Self::term(c, top - dh);
            r = &r - &(&step * d);
            q = &q + &step;
        }
        Ok(Some(q))
    }

    /// Remainder with K-exponents in `[0, deg p)`, where `p` has
    /// lowest K-exponent 0. Over `Z[v, v^-1]` this is exact when both end
    /// coefficients of `p` are units.
    pub fn rem_window(&self, p: &TorusElement) -> Result<TorusElement> {
        let (pl, ph) = match (p.min_k(), p.max_k()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(AlgebraError::ZeroDivision),
        };
        if pl != 0 {
            return Err(AlgebraError::Internal("window modulus must start at K^0".into()));
        }
        if ph == 0 {
            return Ok(Self::zero());
        }
        let c0_inv = p.terms[&0].inv()?;
        let lc_inv = p.terms[&ph].inv()?;
        let mut r = self.clone();
        while let Some(lo) = r.min_k() {
            if lo >= 0 {
                break;
            }
            let c = &r.terms[&lo] * &c0_inv;
            r = &r - &p.shift_k(lo).scale(&c);
        }
        while let Some(hi) = r.max_k() {
            if hi < ph {
                break;
            }
            let c = &r.terms[&hi] * &lc_inv;
            r = &r - &p.shift_k(hi - ph).scale(&c);
        }
        Ok(r)
    }

    /// Unique expansion `t = sum_j (a_j + b_j K) BBB(H; j)`, available for
    /// polynomials in `K`. Negative K-powers have no finite expansion.
    pub fn expand_bbb(&self) -> Result<Vec<(RatFunc, RatFunc)>> {
        if let Some(lo) = self.min_k() {
            if lo < 0 {
                return domain("expansion in BBB(H;j) needs a polynomial in K; reduce modulo BBB(H;l) first");
            }
        }
        let mut out: Vec<(RatFunc, RatFunc)> = Vec::new();
        let mut r = self.clone();
        while let Some(top) = r.max_k() {
            let j = (top / 2) as usize;
            let delta = top % 2;
            let c = r.terms[&top].clone();
            if out.len() <= j {
                out.resize(j + 1, (RatFunc::zero(), RatFunc::zero()));
            }
            if delta == 0 {
                out[j].0 = c.clone();
            } else {
                out[j].1 = c.clone();
            }
            r = &r - &bbb(j as u32).shift_k(delta).scale(&c);
        }
        Ok(out)
    }

    /// Reduces modulo `BBB(H; l)` and expands the remainder in the BBB basis,
    /// giving `l` pairs.
    pub fn expand_bbb_mod(&self, l: u32) -> Result<Vec<(RatFunc, RatFunc)>> {
        let r = self.rem_window(&bbb(l))?;
        let mut v = r.expand_bbb()?;
        v.resize(l as usize, (RatFunc::zero(), RatFunc::zero()));
        Ok(v)
    }

    pub fn assemble_bbb(coeffs: &[(RatFunc, RatFunc)]) -> TorusElement {
        let mut t = Self::zero();
        for (j, (a, b)) in coeffs.iter().enumerate() {
            let base = bbb(j as u32);
            t = &t + &(&base.scale(a) + &base.shift_k(1).scale(b));
        }
        t
    }

    /// Unique expansion `t = sum_j (a_j + b_j K) {H}^j`.
    pub fn expand_hpow(&self) -> Vec<(RatFunc, RatFunc)> {
        let mut out: Vec<(RatFunc, RatFunc)> = Vec::new();
        let add = |out: &mut Vec<(RatFunc, RatFunc)>, poly: &[(RatFunc, RatFunc)], c: &RatFunc| {
            if out.len() < poly.len() {
                out.resize(poly.len(), (RatFunc::zero(), RatFunc::zero()));
            }
            for (j, (a, b)) in poly.iter().enumerate() {
                out[j].0 += &(a * c);
                out[j].1 += &(b * c);
            }
        };
        for (k, c) in &self.terms {
            let p = hpow_of_k(*k);
            add(&mut out, &p, c);
        }
        while out.last().map(|(a, b)| a.is_zero() && b.is_zero()).unwrap_or(false) {
            out.pop();
        }
        out
    }

    pub fn assemble_hpow(coeffs: &[(RatFunc, RatFunc)]) -> TorusElement {
        let h = brace_h(1, 0);
        let mut t = Self::zero();
        let mut hp = Self::one();
        for (a, b) in coeffs {
            t = &t + &(&hp.scale(a) + &hp.shift_k(1).scale(b));
            hp = &hp * &h;
        }
        t
    }

    fn add_ref(&self, o: &TorusElement, negate: bool) -> TorusElement {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            if negate {
                r.add_term(*k, &-c);
            } else {
                r.add_term(*k, c);
            }
        }
        r
    }

    fn mul_ref(&self, o: &TorusElement) -> TorusElement {
        let mut r = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                r.add_term(k1 + k2, &(c1 * c2));
            }
        }
        r
    }
}

/// `K^k` written as `sum_j (a_j + b_j K) {H}^j`, from `K^2 = 1 + {H} K` and
/// `K^-1 = K - {H}`.
pub fn hpow_of_k(k: i64) -> Vec<(RatFunc, RatFunc)> {
    type Poly = Vec<RatFunc>;
    fn xmul(p: &Poly) -> Poly {
        let mut r = vec![RatFunc::zero()];
        r.extend(p.iter().cloned());
        r
    }
    fn padd(a: &Poly, b: &Poly, negate: bool) -> Poly {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(RatFunc::zero);
                let y = b.get(i).cloned().unwrap_or_else(RatFunc::zero);
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect()
    }
    let mut alpha: Poly = vec![RatFunc::one()];
    let mut beta: Poly = vec![];
    if k >= 0 {
        for _ in 0..k {
            // K (a + bK) = b + (a + x b) K
            let na = beta.clone();
            let nb = padd(&alpha, &xmul(&beta), false);
            alpha = na;
            beta = nb;
        }
    } else {
        for _ in 0..(-k) {
            // K^-1 (a + bK) = (b - x a) + a K
            let na = padd(&beta, &xmul(&alpha), true);
            let nb = alpha.clone();
            alpha = na;
            beta = nb;
        }
    }
    let n = alpha.len().max(beta.len());
    (0..n)
        .map(|i| {
            (alpha.get(i).cloned().unwrap_or_else(RatFunc::zero), beta.get(i).cloned().unwrap_or_else(RatFunc::zero))
        })
        .collect()
}

/// `{iH + j} = v^j K^i - v^-j K^-i`.
pub fn brace_h(i: i64, j: i64) -> TorusElement {
    TorusElement::from_pairs([(i, RatFunc::v_pow(j)), (-i, -RatFunc::v_pow(-j))])
}

type TorusCache = OnceLock<Mutex<HashMap<(i64, i64, u32), TorusElement>>>;
static FALLING_H: TorusCache = OnceLock::new();

/// `{iH+j}{iH+j-1}...{iH+j-n+1}`.
pub fn falling_affine(i: i64, j: i64, n: u32) -> TorusElement {
    let map = FALLING_H.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().unwrap().get(&(i, j, n)) {
        return t.clone();
    }
    let t = if n == 0 { TorusElement::one() } else { &falling_affine(i, j, n - 1) * &brace_h(i, j - n as i64 + 1) };
    map.lock().unwrap().insert((i, j, n), t.clone());
    t
}

/// `BB(H+m; n) = {H+m}{H+m-1}...{H+m-n+1}`.
pub fn falling_h(m: i64, n: u32) -> TorusElement {
    falling_affine(1, m, n)
}

/// Checked constructor taking a signed length.
pub fn make_brace_h(m: i64, n: i64) -> Result<TorusElement> {
    if n < 0 {
        return domain("BB(H+m;n) needs n >= 0");
    }
    Ok(falling_h(m, n as u32))
}

/// `BBB(H; l) = (K^2 - 1)(K^2 - q)...(K^2 - q^{l-1})`.
pub fn bbb(l: u32) -> TorusElement {
    (0..l as i64).fold(TorusElement::one(), |acc, i| {
        &acc * &TorusElement::from_pairs([(2, RatFunc::one()), (0, -RatFunc::v_pow(2 * i))])
    })
}

pub fn make_bbb(l: i64) -> Result<TorusElement> {
    if l < 0 {
        return domain("BBB(H;l) needs l >= 0");
    }
    Ok(bbb(l as u32))
}

impl fmt::Display for TorusElement {
    /// Ascending K-exponents, e.g. `(-v^-2)K^-1 + (v^2)K`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})K")?,
                _ => write!(f, "({c})K^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Torus[{self}]")
    }
}

impl From<RatFunc> for TorusElement {
    fn from(c: RatFunc) -> Self {
        TorusElement::constant(c)
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scale(&RatFunc::from_int(-1))
    }
}

impl Neg for TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&TorusElement> for &TorusElement {
            type Output = TorusElement;
            fn $m(self, rhs: &TorusElement) -> TorusElement {
                let f: fn(&TorusElement, &TorusElement) -> TorusElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<TorusElement> for TorusElement {
            type Output = TorusElement;
            fn $m(self, rhs: TorusElement) -> TorusElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b, false));
binop!(Sub, sub, |a, b| a.add_ref(b, true));
binop!(Mul, mul, |a, b| a.mul_ref(b));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::brace_factorial;

    #[test]
    fn brace_h_examples() {
        assert_eq!(falling_h(0, 1), TorusElement::from_pairs([(1, RatFunc::one()), (-1, RatFunc::from_int(-1))]));
        assert_eq!(falling_h(2, 1), brace_h(1, 2));
        assert!(make_brace_h(0, -1).is_err());
        assert!(make_bbb(-1).is_err());
    }

    #[test]
    fn bbb_relation() {
        for l in 0..=8u32 {
            let rhs = falling_h(0, l).shift_k(l as i64).scale(&RatFunc::v_pow((l * (l.max(1) - 1) / 2) as i64));
            assert_eq!(bbb(l), rhs);
        }
    }

    #[test]
    fn evaluation_telescopes() {
        for n in 0..=8u32 {
            assert_eq!(falling_h(0, n).eval_k(n as i64), RatFunc::from(brace_factorial(n)));
        }
    }

    #[test]
    fn expansions_roundtrip() {
        let k2 = TorusElement::k_pow(2);
        let e = k2.expand_bbb().unwrap();
        assert_eq!(e, vec![(RatFunc::one(), RatFunc::zero()), (RatFunc::one(), RatFunc::zero())]);
        let h = k2.expand_hpow();
        assert_eq!(h, vec![(RatFunc::one(), RatFunc::zero()), (RatFunc::zero(), RatFunc::one())]);
        let kinv = TorusElement::k_pow(-1).expand_hpow();
        assert_eq!(kinv, vec![(RatFunc::zero(), RatFunc::one()), (RatFunc::from_int(-1), RatFunc::zero())]);
        assert!(TorusElement::k_pow(-1).expand_bbb().is_err());
        let t = &falling_h(3, 3) + &TorusElement::k_pow(-4);
        assert_eq!(TorusElement::assemble_hpow(&t.expand_hpow()), t);
        let r = t.rem_window(&bbb(3)).unwrap();
        assert_eq!(TorusElement::assemble_bbb(&r.expand_bbb().unwrap()), r);
        assert!((&t - &r).div_exact(&bbb(3)).unwrap().unwrap().is_integral());
    }
}
