//! Balanced cyclotomic polynomials and cyclotomic exponent profiles.
//!
//! The balanced cyclotomic `phi_d(v) = v^{-deg Phi_d} Phi_d(v^2)` satisfies
//! `{n} = prod_{d | n} phi_d`, so every product of braces, bracket
//! factorials and binomials has a finite profile `d -> exponent`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::{poly_divexact, LaurentInt};
use super::qsym::{brace_factorial, qbinom};
use super::ratfunc::RatFunc;
use crate::error::{domain, AlgebraError, Result};

static CYCLO: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();

/// Coefficients of the cyclotomic polynomial `Phi_d(q)`, lowest first.
pub fn cyclotomic_q(d: u64) -> Result<Vec<BigInt>> {
    if d == 0 {
        return domain("cyclotomic index must be positive");
    }
    let map = CYCLO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = map.lock().unwrap().get(&d) {
        return Ok(p.clone());
    }
    // q^d - 1 divided by Phi_e for the proper divisors e of d
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            let f = cyclotomic_q(e)?;
            p = poly_divexact(&p, &f).ok_or_else(|| AlgebraError::Internal("cyclotomic division failed".into()))?;
        }
    }
    map.lock().unwrap().insert(d, p.clone());
    Ok(p)
}

/// `phi_d(v) = v^{-deg Phi_d} Phi_d(v^2)`.
pub fn balanced_cyclotomic(d: u64) -> Result<LaurentInt> {
    let p = cyclotomic_q(d)?;
    let deg = (p.len() - 1) as i64;
    Ok(LaurentInt::from_terms(p.into_iter().enumerate().map(|(i, c)| (2 * i as i64 - deg, c))))
}

/// Building blocks accepted by [`cyclo_factorize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloFactor {
    /// `{n}`, `n >= 1`.
    Brace(u64),
    /// `[n]`, `n >= 1`.
    Bracket(u64),
    /// `{n}!`.
    BraceFactorial(u64),
    /// `[n]!`.
    BracketFactorial(u64),
    /// Quantum binomial `qbinom(top, bottom)` with `top >= bottom`.
    Binomial { top: u64, bottom: u64 },
    /// `{a}{a-1}...{a-n+1}` with `a >= n`.
    Falling { top: u64, len: u64 },
}

/// Exponents of the balanced cyclotomics in a product.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycloProfile {
    exps: BTreeMap<u64, i64>,
}

impl CycloProfile {
    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.exps.get(&d).copied().unwrap_or(0)
    }

    fn bump(&mut self, d: u64, by: i64) {
        if by == 0 {
            return;
        }
        let e = self.exps.entry(d).or_insert(0);
        *e += by;
        if *e == 0 {
            self.exps.remove(&d);
        }
    }

    /// Multiplies the profile back out.
    pub fn reconstruct(&self) -> Result<RatFunc> {
        let mut num = LaurentInt::one();
        let mut den = LaurentInt::one();
        for (&d, &e) in &self.exps {
            let p = balanced_cyclotomic(d)?.pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        RatFunc::new(num, den)
    }
}

fn floor_profile(p: &mut CycloProfile, n: u64, sign: i64, from: u64) {
    for d in from..=n {
        p.bump(d, sign * (n / d) as i64);
    }
}

fn add_factor(p: &mut CycloProfile, f: CycloFactor, mult: i64) -> Result<()> {
    match f {
        CycloFactor::Brace(0) | CycloFactor::Bracket(0) => return domain("{0} and [0] vanish and have no profile"),
        CycloFactor::Brace(n) => {
            for d in 1..=n {
                if n % d == 0 {
                    p.bump(d, mult);
                }
            }
        }
        CycloFactor::Bracket(n) => {
            for d in 2..=n {
                if n % d == 0 {
                    p.bump(d, mult);
                }
            }
        }
        CycloFactor::BraceFactorial(n) => floor_profile(p, n, mult, 1),
        CycloFactor::BracketFactorial(n) => floor_profile(p, n, mult, 2),
        CycloFactor::Binomial { top, bottom } => {
            if bottom > top {
                return domain("binomial with bottom > top vanishes");
            }
            floor_profile(p, top, mult, 1);
            floor_profile(p, bottom, -mult, 1);
            floor_profile(p, top - bottom, -mult, 1);
        }
        CycloFactor::Falling { top, len } => {
            if len > top {
                return domain("falling product through zero vanishes");
            }
            floor_profile(p, top, mult, 1);
            floor_profile(p, top - len, -mult, 1);
        }
    }
    Ok(())
}

/// Profile of `prod f_i^{e_i}`.
pub fn cyclo_factorize(factors: &[(CycloFactor, i64)]) -> Result<CycloProfile> {
    let mut p = CycloProfile::default();
    for &(f, e) in factors {
        add_factor(&mut p, f, e)?;
    }
    Ok(p)
}

/// Direct value of a single factor, for cross-checking profiles.
pub fn factor_value(f: CycloFactor) -> Result<LaurentInt> {
    use super::qsym::{brace, bracket, bracket_factorial, falling};
    Ok(match f {
        CycloFactor::Brace(0) | CycloFactor::Bracket(0) => return domain("zero factor"),
        CycloFactor::Brace(n) => brace(n as i64),
        CycloFactor::Bracket(n) => bracket(n as i64),
        CycloFactor::BraceFactorial(n) => brace_factorial(n as u32),
        CycloFactor::BracketFactorial(n) => bracket_factorial(n as u32),
        CycloFactor::Binomial { top, bottom } => qbinom(top as i64, bottom as u32),
        CycloFactor::Falling { top, len } => falling(top as i64, len as u32),
    })
}

fn fl(a: i64, d: i64) -> i64 {
    a.div_euclid(d)
}

/// `tau_d(x, y) = floor((x+y)/d) - floor(x/d) - floor(y/d)`, the exponent of
/// `phi_d` in `qbinom(x+y, x)`.
pub fn tau_d(d: u64, x: i64, y: i64) -> i64 {
    let d = d as i64;
    fl(x + y, d) - fl(x, d) - fl(y, d)
}

/// Exponent of `phi_d` in `{a+x+y}! {a}! / ({a+x}! {a+y}!)`.
pub fn psi_d(d: u64, a: i64, x: i64, y: i64) -> i64 {
    let d = d as i64;
    fl(a + x + y, d) + fl(a, d) - fl(a + x, d) - fl(a + y, d)
}

/// Exponent of `phi_d` in [`theta`].
pub fn theta_d(d: u64, a: i64, b: i64, x: i64, y: i64) -> i64 {
    psi_d(d, a, x, y) + tau_d(d, x, y) + tau_d(d, b, x + y) + tau_d(d, a, a + b + x + y)
}

/// The product
/// `{a+x+y}! {a}! / ({a+x}! {a+y}!) * qbinom(x+y, x) * qbinom(b+x+y, b) * qbinom(2a+b+x+y, a)`
/// for non-negative arguments. Its integrality follows from `theta_d >= 0`.
pub fn theta(a: u32, b: u32, x: u32, y: u32) -> Result<LaurentInt> {
    let num = &brace_factorial(a + x + y) * &brace_factorial(a);
    let den = &brace_factorial(a + x) * &brace_factorial(a + y);
    let psi = RatFunc::new(num, den)?;
    let rest = &(&qbinom((x + y) as i64, x) * &qbinom((b + x + y) as i64, b)) * &qbinom((2 * a + b + x + y) as i64, a);
    psi.mul_laurent(&rest)
        .into_laurent()
        .ok_or_else(|| AlgebraError::Internal("theta is not a Laurent polynomial".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qsym::brace;

    #[test]
    fn brace_is_product_of_divisors() {
        for n in 1..=12u64 {
            let mut acc = LaurentInt::one();
            for d in 1..=n {
                if n % d == 0 {
                    acc = &acc * &balanced_cyclotomic(d).unwrap();
                }
            }
            assert_eq!(acc, brace(n as i64));
        }
    }

    #[test]
    fn profile_zero_rejected() {
        assert!(cyclo_factorize(&[(CycloFactor::Brace(0), 1)]).is_err());
        assert!(balanced_cyclotomic(0).is_err());
    }

    #[test]
    fn theta_exponents_match() {
        let t = theta(1, 1, 1, 1).unwrap();
        let mut p = CycloProfile::default();
        for d in 1..=8 {
            p.bump(d, theta_d(d, 1, 1, 1, 1));
        }
        assert_eq!(p.reconstruct().unwrap(), RatFunc::from(t));
    }
}
