//! The fraction field `Q(v)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{poly_divexact, trim, LaurentInt};
use crate::error::{AlgebraError, Result};

/// A reduced fraction `num / den` of Laurent polynomials.
///
/// Normal form: `gcd(num, den) = 1` in `Z[v]`, `den` has lowest exponent 0
/// and positive leading coefficient. With this convention an element lies
/// in `Z[v, v^-1]` exactly when `den == 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFunc {
    num: LaurentInt,
    den: LaurentInt,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentInt::zero(), den: LaurentInt::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentInt::one(), den: LaurentInt::one() }
    }

    pub fn from_int(c: i64) -> Self {
        LaurentInt::constant(c).into()
    }

    pub fn v_pow(e: i64) -> Self {
        LaurentInt::v_pow(e).into()
    }

    pub fn new(num: LaurentInt, den: LaurentInt) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDivision);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentInt, den: LaurentInt) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        if let Some((neg, e)) = den.as_unit() {
            let n = num.shift(-e);
            return RatFunc { num: if neg { -n } else { n }, den: LaurentInt::one() };
        }
        let (nl, nd) = num.to_dense();
        let (dl, dd) = den.to_dense();
        let g = poly_gcd(&nd, &dd);
        let mut nq = poly_divexact(&nd, &g).expect("gcd divides numerator");
        let mut dq = poly_divexact(&dd, &g).expect("gcd divides denominator");
        if dq.last().map(|c| c.is_negative()).unwrap_or(false) {
            for c in nq.iter_mut().chain(dq.iter_mut()) {
                *c = -std::mem::take(c);
            }
        }
        // den = v^dl * D(v) with D(0) != 0; move v^dl into the numerator
        let num = LaurentInt::from_dense(nl - dl, nq);
        let den = LaurentInt::from_dense(0, dq);
        RatFunc { num, den }
    }

    pub fn num(&self) -> &LaurentInt {
        &self.num
    }

    pub fn den(&self) -> &LaurentInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentInt> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn into_laurent(self) -> Option<LaurentInt> {
        if self.is_integral() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroDivision);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn shift(&self, k: i64) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn mul_laurent(&self, c: &LaurentInt) -> Self {
        if self.den.is_one() {
            return RatFunc { num: &self.num * c, den: LaurentInt::one() };
        }
        Self::normalize(&self.num * c, self.den.clone())
    }

    /// Substitutes `v -> -v`.
    pub fn negate_v(&self) -> Self {
        Self::normalize(self.num.negate_v(), self.den.negate_v())
    }

    /// Splits `x = even + odd` where `even(-v) = even(v)` and `odd(-v) = -odd(v)`.
    pub fn parity_split(&self) -> (Self, Self) {
        if self.den.is_one() {
            let (e, o) = self.num.parity_split();
            return (e.into(), o.into());
        }
        // x = n(v) d(-v) / (d(v) d(-v)); the new denominator is even
        let dm = self.den.negate_v();
        let n2 = &self.num * &dm;
        let d2 = &self.den * &dm;
        let (ne, no) = n2.parity_split();
        (Self::normalize(ne, d2.clone()), Self::normalize(no, d2))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        Ok(RatFunc { num: self.num.pow(n as u32), den: self.den.pow(n as u32) })
    }

    fn add_ref(&self, o: &RatFunc, negate: bool) -> RatFunc {
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            let mut n = self.num.clone();
            if negate {
                n -= &o.num;
            } else {
                n += &o.num;
            }
            return RatFunc { num: n, den: LaurentInt::one() };
        }
        let on = if negate { -&o.num } else { o.num.clone() };
        if self.den == o.den {
            return Self::normalize(&self.num + &on, self.den.clone());
        }
        Self::normalize(&self.num * &o.den + &on * &self.den, &self.den * &o.den)
    }

    fn mul_ref(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: LaurentInt::one() };
        }
        Self::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (dense, lowest first).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim(a).to_vec();
    let b = trim(b);
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        let n = trim(&r).len();
        r.truncate(n);
    }
    r
}

/// gcd in `Z[v]` up to sign, via the primitive remainder sequence.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a = trim(a);
    let b = trim(b);
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let cg = content(a).gcd(&content(b));
    let (mut x, mut y) = if a.len() >= b.len() { (primitive(a), primitive(b)) } else { (primitive(b), primitive(a)) };
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g: Vec<BigInt> = primitive(&x).into_iter().map(|c| c * &cg).collect();
    if g.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in g.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    g
}

impl From<LaurentInt> for RatFunc {
    fn from(num: LaurentInt) -> Self {
        RatFunc { num, den: LaurentInt::one() }
    }
}

impl From<&LaurentInt> for RatFunc {
    fn from(num: &LaurentInt) -> Self {
        RatFunc { num: num.clone(), den: LaurentInt::one() }
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -self.clone()
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = self.add_ref(rhs, false);
        }
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = self.add_ref(rhs, true);
        }
    }
}

impl AddAssign for RatFunc {
    fn add_assign(&mut self, rhs: RatFunc) {
        *self += &rhs;
    }
}

impl SubAssign for RatFunc {
    fn sub_assign(&mut self, rhs: RatFunc) {
        *self -= &rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = self.mul_ref(rhs);
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b, false));
binop!(Sub, sub, |a, b| a.add_ref(b, true));
binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::div`] for a fallible version.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::div(self, rhs).expect("division by zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(pairs: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_terms(pairs.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn reduces_to_integral() {
        let a = l(&[(1, 1), (-1, -1)]);
        let b = l(&[(2, 1), (-2, -1)]);
        let q = RatFunc::new(b.clone(), a.clone()).unwrap();
        assert!(q.is_integral());
        assert_eq!(q.num(), &l(&[(1, 1), (-1, 1)]));
        let r = RatFunc::new(a, b).unwrap();
        assert!(!r.is_integral());
        assert_eq!(r.den().min_exp(), Some(0));
    }

    #[test]
    fn unit_denominators_fold() {
        let x = RatFunc::new(l(&[(0, 3)]), l(&[(2, -1)])).unwrap();
        assert_eq!(x, RatFunc::from(l(&[(-2, -3)])));
        let half = RatFunc::new(l(&[(0, 2)]), l(&[(0, 4)])).unwrap();
        assert_eq!(half.den(), &l(&[(0, 2)]));
    }

    #[test]
    fn field_identities() {
        let x = RatFunc::new(l(&[(0, 1), (1, 2)]), l(&[(0, 3), (2, 1)])).unwrap();
        let y = RatFunc::new(l(&[(-1, 1)]), l(&[(0, 1), (1, 1)])).unwrap();
        let s = &x + &y;
        assert_eq!(&s - &y, x);
        let p = &x * &y;
        assert_eq!(p.div(&y).unwrap(), x);
        let (e, o) = x.parity_split();
        assert_eq!(&e + &o, x);
        assert_eq!(e.negate_v(), e);
        assert_eq!(o.negate_v(), -o);
    }
}
