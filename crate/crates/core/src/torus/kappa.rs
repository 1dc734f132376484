//! The two-parameter family `kappa(a, r; b, s; c)` of torus elements.
//!
//! Exponents such as `(s - 2j)(-s + 1 + 2b + rc) / 2` are half-integers in
//! general, so the sums are accumulated over `u = v^(1/2)` and converted
//! back after checking that every exponent has the expected parity.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::{falling_affine, TorusElement};
use crate::coeff::{qbinom, LaurentInt, RatFunc};
use crate::error::{domain, AlgebraError, Result};

/// `h H + c` with integers `h`, `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Affine {
    pub h: i64,
    pub c: i64,
}

impl Affine {
    pub fn int(c: i64) -> Self {
        Affine { h: 0, c }
    }

    /// `H + c`.
    pub fn h_plus(c: i64) -> Self {
        Affine { h: 1, c }
    }

    pub fn plus(self, k: i64) -> Self {
        Affine { h: self.h, c: self.c + k }
    }
}

/// Torus element over `Z[u, u^-1]`, `u^2 = v`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HalfTorus {
    terms: BTreeMap<i64, LaurentInt>,
}

impl HalfTorus {
    /// Embeds an integral torus element (`v -> u^2`).
    pub fn from_torus(t: &TorusElement) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in t.terms() {
            let l = c
                .to_laurent()
                .ok_or_else(|| AlgebraError::Domain("half-grid embedding needs integral coefficients".into()))?;
            terms.insert(*k, l.dilate(2));
        }
        Ok(HalfTorus { terms })
    }

    /// Adds `coeff(u) * K^kshift * t`.
    fn add_scaled(&mut self, coeff: &LaurentInt, kshift: i64, t: &HalfTorus) {
        for (k, c) in &t.terms {
            let e = self.terms.entry(k + kshift).or_default();
            *e += coeff * c;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Splits off the common factor `u^parity` and returns a torus element in `v`.
    pub fn to_torus(&self, parity: i64) -> Result<TorusElement> {
        let mut out = TorusElement::zero();
        for (k, c) in &self.terms {
            let body = c
                .shift(-parity)
                .contract2()
                .ok_or_else(|| AlgebraError::Internal(format!("half-grid parity check failed at K^{k}")))?;
            out.add_term(*k, &RatFunc::from(body));
        }
        Ok(out)
    }
}

/// `v^(half/2) * body`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KappaValue {
    pub half: bool,
    pub body: TorusElement,
}

impl KappaValue {
    /// Multiplies by `v^(e/2)`.
    pub fn times_half_power(&self, e: i64) -> Result<KappaValue> {
        let total = e + self.half as i64;
        Ok(KappaValue { half: total.rem_euclid(2) == 1, body: self.body.scale(&RatFunc::v_pow(total.div_euclid(2))) })
    }

    /// The value as an ordinary torus element; fails when a `v^(1/2)` remains.
    pub fn into_torus(self) -> Result<TorusElement> {
        if self.half && !self.body.is_zero() {
            return Err(AlgebraError::Domain("value carries a factor v^(1/2)".into()));
        }
        Ok(self.body)
    }
}

impl fmt::Display for KappaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half {
            write!(f, "v^(1/2) * ({})", self.body)
        } else {
            write!(f, "{}", self.body)
        }
    }
}

fn sign(k: i64) -> BigInt {
    BigInt::from(if k % 2 == 0 { 1 } else { -1 })
}

fn falling_half(a: Affine, r: u32) -> HalfTorus {
    HalfTorus::from_torus(&falling_affine(a.h, a.c, r)).expect("falling products are integral")
}

fn check_len(r: i64, s: i64) -> Result<(u32, u32)> {
    if r < 0 || s < 0 {
        return domain("kappa needs r, s >= 0");
    }
    Ok((r as u32, s as u32))
}

/// `sum_j (-1)^j v^{(s-2j)(-s+1+2b+rc)/2} qbinom(s, j) BB(a + jc; r)`.
pub fn kappa(a: Affine, r: i64, b: Affine, s: i64, c: i64) -> Result<KappaValue> {
    let (ru, su) = check_len(r, s)?;
    let mut acc = HalfTorus::default();
    for j in 0..=s {
        let ue = (s - 2 * j) * (-s + 1 + 2 * b.c + r * c);
        let kshift = (s - 2 * j) * b.h;
        let coeff = qbinom(s, j as u32).dilate(2).shift(ue).scale(&sign(j));
        acc.add_scaled(&coeff, kshift, &falling_half(a.plus(j * c), ru));
    }
    let _ = su;
    let parity = (c * r * s).rem_euclid(2);
    Ok(KappaValue { half: parity == 1, body: acc.to_torus(parity)? })
}

/// The double-sum form of [`kappa`], used as an independent cross-check.
pub fn kappa_double_sum(a: Affine, r: i64, b: Affine, s: i64, c: i64) -> Result<KappaValue> {
    check_len(r, s)?;
    let mut acc = HalfTorus::default();
    let one = HalfTorus::from_torus(&TorusElement::one())?;
    for i in 0..=r {
        for j in 0..=s {
            let ue = (r - 2 * i) * (-r + 1 + 2 * a.c) + (s - 2 * j) * (-s + 1 + 2 * b.c) + c * (r * s - 4 * i * j);
            let kshift = (r - 2 * i) * a.h + (s - 2 * j) * b.h;
            let coeff = (&qbinom(r, i as u32) * &qbinom(s, j as u32)).dilate(2).shift(ue).scale(&sign(i + j));
            acc.add_scaled(&coeff, kshift, &one);
        }
    }
    let parity = (c * r * s).rem_euclid(2);
    Ok(KappaValue { half: parity == 1, body: acc.to_torus(parity)? })
}

/// The coefficient `beta_{n,j,k}` in the expansion of `e^j` acting
/// adjointly on `F^(n)`, in its K-graded closed form
/// `sum_l (-1)^l v^{(k-2l)(1-j+2n-2k)/2} qbinom(k, l) BB(n-k+l; j-k) K^{k-2l}`.
pub fn beta_closed(n: i64, j: i64, k: i64) -> Result<KappaValue> {
    if k < 0 || j < k {
        return domain("beta needs 0 <= k <= j");
    }
    let mut acc = HalfTorus::default();
    for l in 0..=k {
        let ue = (k - 2 * l) * (1 - j + 2 * n - 2 * k);
        let scalar = &qbinom(k, l as u32) * &crate::coeff::falling(n - k + l, (j - k) as u32);
        let coeff = scalar.dilate(2).shift(ue).scale(&sign(l));
        acc.add_scaled(&coeff, k - 2 * l, &HalfTorus::from_torus(&TorusElement::one())?);
    }
    let parity = (k * (j - k)).rem_euclid(2);
    Ok(KappaValue { half: parity == 1, body: acc.to_torus(parity)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_lengths() {
        let a = Affine::h_plus(2);
        let b = Affine::int(3);
        let k = kappa(a, 3, b, 0, 1).unwrap();
        assert_eq!(k.into_torus().unwrap(), falling_affine(1, 2, 3));
        let k = kappa(b, 0, a, 2, 5).unwrap();
        assert_eq!(k.into_torus().unwrap(), falling_affine(1, 2, 2));
        assert!(kappa(a, -1, b, 0, 1).is_err());
    }

    #[test]
    fn forms_agree() {
        for (a, r, b, s, c) in [
            (Affine::int(2), 2, Affine::h_plus(1), 3, 1),
            (Affine::h_plus(-1), 3, Affine::int(1), 1, 2),
            (Affine::h_plus(0), 2, Affine::h_plus(2), 2, -1),
        ] {
            let x = kappa(a, r, b, s, c).unwrap();
            assert_eq!(x, kappa_double_sum(a, r, b, s, c).unwrap());
            assert_eq!(x, kappa(b, s, a, r, c).unwrap());
        }
    }
}
