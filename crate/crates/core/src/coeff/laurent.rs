//! Laurent polynomials in `v` with integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// An element of `Z[v, v^-1]` stored as sorted `(exponent, coefficient)`
/// pairs with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentInt {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentInt { terms: vec![(exp, c)] }
        }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    /// `sign * v^exp` for `sign` in `{1, -1}`.
    pub fn signed_v_pow(negative: bool, exp: i64) -> Self {
        let c = if negative { -BigInt::one() } else { BigInt::one() };
        Self::monomial(c, exp)
    }

    /// Builds from arbitrary pairs, combining repeated exponents.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = pairs.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|p| !p.1.is_zero());
        LaurentInt { terms: out }
    }

    /// Builds from a dense coefficient vector whose first entry sits at `v^low`.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let terms =
            coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (low + i as i64, c)).collect();
        LaurentInt { terms }
    }

    /// Dense coefficients starting at the lowest exponent.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut d = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    d[(e - lo) as usize] = c.clone();
                }
                (lo, d)
            }
            _ => (0, Vec::new()),
        }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |p| p.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|p| p.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|p| p.0)
    }

    pub fn leading(&self) -> Option<&(i64, BigInt)> {
        self.terms.last()
    }

    pub fn trailing(&self) -> Option<&(i64, BigInt)> {
        self.terms.first()
    }

    /// Returns `Some((negative, exp))` when `self = +-v^exp`.
    pub fn as_unit(&self) -> Option<(bool, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = &self.terms[0];
        if c.is_one() {
            Some((false, *e))
        } else if (-c).is_one() {
            Some((true, *e))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    /// Inverse of a unit `+-v^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(neg, e)| Self::signed_v_pow(neg, -e))
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentInt { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn shift_in_place(&mut self, k: i64) {
        for t in &mut self.terms {
            t.0 += k;
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Substitutes `v -> v^factor` (factor may be negative).
    pub fn dilate(&self, factor: i64) -> Self {
        if factor == 0 {
            return Self::constant(self.eval_one());
        }
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * factor, c.clone())))
    }

    /// Inverse of `dilate(2)`; fails if some exponent is odd.
    pub fn contract2(&self) -> Option<Self> {
        if self.terms.iter().any(|(e, _)| e % 2 != 0) {
            return None;
        }
        Some(LaurentInt { terms: self.terms.iter().map(|(e, c)| (e / 2, c.clone())).collect() })
    }

    /// Substitutes `v -> -v`.
    pub fn negate_v(&self) -> Self {
        LaurentInt {
            terms: self.terms.iter().map(|(e, c)| (*e, if e.rem_euclid(2) == 1 { -c } else { c.clone() })).collect(),
        }
    }

    /// Splits into the parts with even and odd exponents.
    pub fn parity_split(&self) -> (Self, Self) {
        let (even, odd): (Vec<_>, Vec<_>) = self.terms.iter().cloned().partition(|(e, _)| e.rem_euclid(2) == 0);
        (LaurentInt { terms: even }, LaurentInt { terms: odd })
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().map(|p| &p.1).sum()
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division in `Z[v, v^-1]`; `Ok(None)` when the quotient is not
    /// a Laurent polynomial with integer coefficients.
    pub fn div_exact(&self, y: &LaurentInt) -> Result<Option<LaurentInt>> {
        if y.is_zero() {
            return Err(AlgebraError::ZeroDivision);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        if let Some(inv) = y.unit_inverse() {
            return Ok(Some(self * &inv));
        }
        let (xl, xd) = self.to_dense();
        let (yl, yd) = y.to_dense();
        match poly_divexact(&xd, &yd) {
            Some(q) => Ok(Some(Self::from_dense(xl - yl, q))),
            None => Ok(None),
        }
    }

    /// Like [`div_exact`](Self::div_exact) but treats a non-exact quotient as an error.
    pub fn div_exact_or_err(&self, y: &LaurentInt) -> Result<LaurentInt> {
        self.div_exact(y)?.ok_or_else(|| AlgebraError::NotDivisible(format!("({self}) / ({y})")))
    }

    /// Remainder modulo `p`, where `p` has lowest exponent 0 and unit
    /// leading and constant coefficients. The result has exponents in
    /// `[0, deg p)` and is the unique such representative of the class.
    pub fn rem_window(&self, p: &LaurentInt) -> Result<LaurentInt> {
        let (pl, pd) = p.to_dense();
        if pd.is_empty() {
            return Err(AlgebraError::ZeroDivision);
        }
        if pl != 0 {
            return Err(AlgebraError::Internal("window modulus must start at v^0".into()));
        }
        let deg = (pd.len() - 1) as i64;
        let lc = &pd[pd.len() - 1];
        let c0 = &pd[0];
        let unit = |c: &BigInt| c.is_one() || (-c).is_one();
        if !unit(lc) || !unit(c0) {
            return Err(AlgebraError::Domain("window modulus needs unit end coefficients".into()));
        }
        if deg == 0 {
            return Ok(Self::zero());
        }
        let (xl, xd) = self.to_dense();
        if xd.is_empty() {
            return Ok(Self::zero());
        }
        let lo = xl.min(0);
        let hi = (xl + xd.len() as i64 - 1).max(deg - 1);
        let mut buf = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in xd.into_iter().enumerate() {
            buf[(xl - lo) as usize + i] = c;
        }
        // lift negative exponents using the unit constant coefficient
        for e in lo..0 {
            let idx = (e - lo) as usize;
            if buf[idx].is_zero() {
                continue;
            }
            let f = &buf[idx] * c0; // c0 = c0^-1 since c0 = +-1
            for (j, pc) in pd.iter().enumerate() {
                if !pc.is_zero() {
                    let t = &f * pc;
                    buf[idx + j] -= t;
                }
            }
        }
        // reduce exponents >= deg using the unit leading coefficient
        for e in (deg..=hi).rev() {
            let idx = (e - lo) as usize;
            if buf[idx].is_zero() {
                continue;
            }
            let f = &buf[idx] * lc;
            let base = idx - deg as usize;
            for (j, pc) in pd.iter().enumerate() {
                if !pc.is_zero() {
                    let t = &f * pc;
                    buf[base + j] -= t;
                }
            }
        }
        let start = (0 - lo) as usize;
        let window: Vec<BigInt> = buf[start..start + deg as usize].to_vec();
        Ok(Self::from_dense(0, window))
    }

    fn add_scaled(&mut self, other: &LaurentInt, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { -other } else { other.clone() };
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(a.next().unwrap());
                    } else if x.0 > y.0 {
                        let (e, c) = b.next().unwrap();
                        out.push((*e, if negate { -c } else { c.clone() }));
                    } else {
                        let (e, mut c) = a.next().unwrap();
                        let (_, d) = b.next().unwrap();
                        if negate {
                            c -= d;
                        } else {
                            c += d;
                        }
                        if !c.is_zero() {
                            out.push((e, c));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (e, c) = b.next().unwrap();
                    out.push((*e, if negate { -c } else { c.clone() }));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    fn mul_ref(&self, other: &LaurentInt) -> LaurentInt {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return LaurentInt { terms: other.terms.iter().map(|(f, d)| (e + f, c * d)).collect() };
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return LaurentInt { terms: self.terms.iter().map(|(f, d)| (e + f, d * c)).collect() };
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                acc[(e1 + e2 - lo) as usize] += c1 * c2;
            }
        }
        Self::from_dense(lo, acc)
    }
}

/// Exact division of dense integer polynomials (lowest coefficient first).
/// The divisor's constant term may be zero only if the dividend's is too;
/// callers pass normalized operands with nonzero constant terms.
pub(crate) fn poly_divexact(x: &[BigInt], y: &[BigInt]) -> Option<Vec<BigInt>> {
    let x = trim(x);
    let y = trim(y);
    if x.is_empty() {
        return Some(Vec::new());
    }
    if y.len() > x.len() {
        return None;
    }
    let lc = y.last().unwrap();
    let mut r: Vec<BigInt> = x.to_vec();
    let qlen = x.len() - y.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &r[i + y.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qq, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, yc) in y.iter().enumerate() {
            if !yc.is_zero() {
                r[i + j] -= &qq * yc;
            }
        }
        q[i] = qq;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

pub(crate) fn trim(x: &[BigInt]) -> &[BigInt] {
    let mut n = x.len();
    while n > 0 && x[n - 1].is_zero() {
        n -= 1;
    }
    &x[..n]
}

impl fmt::Display for LaurentInt {
    /// Ascending exponents, e.g. `-v^-2 + 2 + v^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vpart = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                k => format!("v^{k}"),
            };
            if vpart.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{vpart}")?;
            } else {
                write!(f, "{mag} {vpart}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentInt({self})")
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        LaurentInt::constant(c)
    }
}

impl From<BigInt> for LaurentInt {
    fn from(c: BigInt) -> Self {
        LaurentInt::monomial(c, 0)
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(mut self) -> LaurentInt {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -self.clone()
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        self.add_scaled(rhs, false);
    }
}

impl AddAssign for LaurentInt {
    fn add_assign(&mut self, rhs: LaurentInt) {
        self.add_scaled(&rhs, false);
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        self.add_scaled(rhs, true);
    }
}

impl SubAssign for LaurentInt {
    fn sub_assign(&mut self, rhs: LaurentInt) {
        self.add_scaled(&rhs, true);
    }
}

impl MulAssign<&LaurentInt> for LaurentInt {
    fn mul_assign(&mut self, rhs: &LaurentInt) {
        *self = self.mul_ref(rhs);
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&LaurentInt> for &LaurentInt {
            type Output = LaurentInt;
            fn $m(self, rhs: &LaurentInt) -> LaurentInt {
                let f: fn(&LaurentInt, &LaurentInt) -> LaurentInt = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentInt> for LaurentInt {
            type Output = LaurentInt;
            fn $m(self, rhs: LaurentInt) -> LaurentInt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentInt> for LaurentInt {
            type Output = LaurentInt;
            fn $m(self, rhs: &LaurentInt) -> LaurentInt {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentInt> for &LaurentInt {
            type Output = LaurentInt;
            fn $m(self, rhs: LaurentInt) -> LaurentInt {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut r = a.clone();
    r += b;
    r
});
binop!(Sub, sub, |a, b| {
    let mut r = a.clone();
    r -= b;
    r
});
binop!(Mul, mul, |a, b| a.mul_ref(b));

#[cfg(test)]
mod tests {
    use super::*;

    fn l(pairs: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_terms(pairs.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn display_ascending() {
        assert_eq!(l(&[(2, 1), (0, 2), (-2, -1)]).to_string(), "-v^-2 + 2 + v^2");
        assert_eq!(l(&[(3, 2), (1, -3)]).to_string(), "-3 v + 2 v^3");
        assert_eq!(LaurentInt::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = l(&[(1, 1), (-1, -1)]);
        let b = l(&[(2, 1), (-2, -1)]);
        let q = b.div_exact(&a).unwrap().unwrap();
        assert_eq!(q, l(&[(1, 1), (-1, 1)]));
        assert_eq!(a.div_exact(&b).unwrap(), None);
        assert_eq!(l(&[(0, 3)]).div_exact(&l(&[(0, 2)])).unwrap(), None);
        assert!(a.div_exact(&LaurentInt::zero()).is_err());
    }

    #[test]
    fn window_remainder() {
        // (v^2 - 1)^2 = v^4 - 2v^2 + 1
        let p = l(&[(4, 1), (2, -2), (0, 1)]);
        let x = l(&[(5, 1), (-1, 3)]);
        let r = x.rem_window(&p).unwrap();
        assert!(r.min_exp().unwrap() >= 0 && r.max_exp().unwrap() < 4);
        let diff = &x - &r;
        assert!(diff.div_exact(&p).unwrap().is_some());
    }
}
