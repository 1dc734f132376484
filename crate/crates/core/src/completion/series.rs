//! Central elements of the completions as truncated sigma series
//! `sum_{n<N} (a_n + b_n C) sigma_n`.
//!
//! Over `A` only the sigma-index is truncated. Over `A^` and `A.` the
//! coefficients are also reduced modulo `{N}!` or `{1}^N`.

use std::fmt;

use crate::center::CentralPoly;
use crate::coeff::{brace, LaurentInt, RatFunc};
use crate::completion::{reduce_scalar, CoeffRing};
use crate::error::{domain, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralSeries {
    ring: CoeffRing,
    coeffs: Vec<(LaurentInt, LaurentInt)>,
    precision: u32,
}

/// `{i-1}{i+1}`, so that `sigma_i = (s - lambda_i) sigma_{i-1}` with `s = sigma_1`.
fn lambda(i: u32) -> LaurentInt {
    &brace(i as i64 - 1) * &brace(i as i64 + 1)
}

/// Coefficients of `sigma_n` as a polynomial in `s = C^2 - [2]^2`.
pub fn sigma_in_s(n: u32) -> Vec<LaurentInt> {
    let mut p = vec![LaurentInt::one()];
    for i in 1..=n {
        let l = lambda(i);
        let mut next = vec![LaurentInt::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &(c * &l);
        }
        p = next;
    }
    p
}

/// Coefficients of `s^k` in the basis `sigma_j`, from `s sigma_j = sigma_{j+1} + lambda_{j+1} sigma_j`.
pub fn s_pow_in_sigma(k: u32) -> Vec<LaurentInt> {
    let mut p = vec![LaurentInt::one()];
    for _ in 0..k {
        let mut next = vec![LaurentInt::zero(); p.len() + 1];
        for (j, c) in p.iter().enumerate() {
            next[j + 1] += c;
            next[j] += &(c * &lambda(j as u32 + 1));
        }
        p = next;
    }
    p
}

/// Smallest `M <= limit` with `s^M = 0` at precision `n`, if any. Since the
/// truncation kernel is an ideal, all higher powers then vanish too.
pub fn s_power_vanishing_order(ring: CoeffRing, n: u32, limit: u32) -> Option<u32> {
    (0..=limit).find(|&k| {
        let coeffs = s_pow_in_sigma(k).into_iter().map(|c| (c, LaurentInt::zero())).collect();
        CentralSeries::from_coeffs(ring, coeffs, n).is_zero()
    })
}

impl CentralSeries {
    pub fn from_coeffs(ring: CoeffRing, coeffs: Vec<(LaurentInt, LaurentInt)>, precision: u32) -> Self {
        let mut coeffs: Vec<(LaurentInt, LaurentInt)> = coeffs
            .into_iter()
            .take(precision as usize)
            .map(|(a, b)| (reduce_scalar(ring, &a, precision), reduce_scalar(ring, &b, precision)))
            .collect();
        while coeffs.last().map(|(a, b)| a.is_zero() && b.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        CentralSeries { ring, coeffs, precision }
    }

    /// Image of an exact central polynomial.
    pub fn from_poly(ring: CoeffRing, p: &CentralPoly, precision: u32) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for (a, b) in p.coeffs() {
            match (a.to_laurent(), b.to_laurent()) {
                (Some(a), Some(b)) => coeffs.push((a, b)),
                _ => return domain("central series need coefficients in Z[v, v^-1]"),
            }
        }
        Ok(Self::from_coeffs(ring, coeffs, precision))
    }

    pub fn one(ring: CoeffRing, precision: u32) -> Self {
        Self::from_coeffs(ring, vec![(LaurentInt::one(), LaurentInt::zero())], precision)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[(LaurentInt, LaurentInt)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact representative.
    pub fn to_poly(&self) -> CentralPoly {
        CentralPoly::from_coeffs(self.coeffs.iter().map(|(a, b)| (RatFunc::from(a), RatFunc::from(b))).collect())
    }

    pub fn lower(&self, precision: u32) -> Self {
        Self::from_coeffs(self.ring, self.coeffs.clone(), precision.min(self.precision))
    }

    fn check(&self, o: &CentralSeries) -> Result<u32> {
        if self.ring != o.ring {
            return domain("central series ring mismatch");
        }
        Ok(self.precision.min(o.precision))
    }

    pub fn add(&self, o: &CentralSeries) -> Result<CentralSeries> {
        let n = self.check(o)?;
        Self::from_poly(self.ring, &self.to_poly().add(&o.to_poly()), n)
    }

    /// Product via the sigma product convolution with `C^2 = sigma_1 + [2]^2`.
    pub fn mul(&self, o: &CentralSeries) -> Result<CentralSeries> {
        let n = self.check(o)?;
        Self::from_poly(self.ring, &self.to_poly().mul(&o.to_poly()), n)
    }

    /// Coefficients `(alpha_k, beta_k)` of `sum (alpha_k + beta_k C) s^k` for
    /// the exact representative, reduced in the coefficient ring.
    pub fn to_s_powers(&self) -> Vec<(LaurentInt, LaurentInt)> {
        let mut out: Vec<(LaurentInt, LaurentInt)> = Vec::new();
        for (n, (a, b)) in self.coeffs.iter().enumerate() {
            let p = sigma_in_s(n as u32);
            if out.len() < p.len() {
                out.resize(p.len(), (LaurentInt::zero(), LaurentInt::zero()));
            }
            for (k, c) in p.iter().enumerate() {
                out[k].0 += &(a * c);
                out[k].1 += &(b * c);
            }
        }
        let n = self.precision;
        out.into_iter().map(|(a, b)| (reduce_scalar(self.ring, &a, n), reduce_scalar(self.ring, &b, n))).collect()
    }

    /// Inverse of [`CentralSeries::to_s_powers`]: a finite s-power sum read
    /// back as a sigma series.
    pub fn from_s_powers(ring: CoeffRing, s: &[(LaurentInt, LaurentInt)], precision: u32) -> Self {
        let mut out: Vec<(LaurentInt, LaurentInt)> = Vec::new();
        for (k, (alpha, beta)) in s.iter().enumerate() {
            let p = s_pow_in_sigma(k as u32);
            if out.len() < p.len() {
                out.resize(p.len(), (LaurentInt::zero(), LaurentInt::zero()));
            }
            for (j, c) in p.iter().enumerate() {
                out[j].0 += &(alpha * c);
                out[j].1 += &(beta * c);
            }
        }
        Self::from_coeffs(ring, out, precision)
    }
}

impl fmt::Display for CentralSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.to_poly().to_string();
        let n = self.precision;
        match self.ring {
            CoeffRing::Exact => write!(f, "{body} + O(sigma({n}))"),
            CoeffRing::Hat => write!(f, "{body} + O(sigma({n}), {{{n}}}!)"),
            CoeffRing::Dot => write!(f, "{body} + O(sigma({n}), {{1}}^{n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::two_squared;

    fn sig(ring: CoeffRing, k: usize, n: u32) -> CentralSeries {
        CentralSeries::from_poly(ring, &CentralPoly::sigma(k), n).unwrap()
    }

    #[test]
    fn products() {
        for ring in [CoeffRing::Exact, CoeffRing::Hat, CoeffRing::Dot] {
            let s1 = sig(ring, 1, 4);
            let want = CentralSeries::from_coeffs(
                ring,
                vec![
                    (LaurentInt::zero(), LaurentInt::zero()),
                    (&brace(1) * &brace(3), LaurentInt::zero()),
                    (LaurentInt::one(), LaurentInt::zero()),
                ],
                4,
            );
            assert_eq!(s1.mul(&s1).unwrap(), want);
            let c = CentralSeries::from_poly(ring, &CentralPoly::casimir(), 4).unwrap();
            let want = CentralSeries::from_coeffs(
                ring,
                vec![(two_squared(), LaurentInt::zero()), (LaurentInt::one(), LaurentInt::zero())],
                4,
            );
            assert_eq!(c.mul(&c).unwrap(), want);
            assert_eq!(CentralSeries::one(ring, 4).mul(&c).unwrap(), c);
        }
        assert!(sig(CoeffRing::Hat, 1, 3).mul(&sig(CoeffRing::Dot, 1, 3)).is_err());
    }

    #[test]
    fn s_power_round_trip() {
        let x = CentralSeries::from_coeffs(
            CoeffRing::Dot,
            vec![
                (LaurentInt::v_pow(1), LaurentInt::one()),
                (LaurentInt::constant(3), LaurentInt::zero()),
                (LaurentInt::zero(), LaurentInt::v_pow(-2)),
            ],
            3,
        );
        let s = x.to_s_powers();
        assert_eq!(CentralSeries::from_s_powers(CoeffRing::Dot, &s, 3), x);
        for k in 0..5 {
            let mut s = vec![(LaurentInt::zero(), LaurentInt::zero()); k];
            s.push((LaurentInt::one(), LaurentInt::zero()));
            let back = CentralSeries::from_s_powers(CoeffRing::Exact, &s, 10);
            assert_eq!(back.to_s_powers(), s);
        }
    }

    #[test]
    fn vanishing_orders() {
        // s^k lies in ({1}^N, sigma_N) exactly from k = ceil((3N - 2) / 2)
        for n in 1..6u32 {
            assert_eq!(s_power_vanishing_order(CoeffRing::Dot, n, 4 * n), Some((3 * n - 1) / 2));
        }
        assert_eq!(s_power_vanishing_order(CoeffRing::Exact, 3, 8), None);
        assert_eq!(s_power_vanishing_order(CoeffRing::Hat, 3, 12), None);
    }
}
