//! Finite-precision arithmetic in the completions.
//!
//! Scalars of `A^ = lim A/({n}!)` and `A. = lim A/({1}^n)` are stored as
//! canonical remainders. Elements of the completed algebras are stored as
//! canonical truncations, and central elements as sigma series.

pub mod ideal;
pub mod series;
pub mod truncation;

use std::fmt;

use crate::coeff::LaurentInt;
use crate::error::{domain, Result};

pub use ideal::{ideal_member, tensor_in_u1_sum, torus_in_u0_1pow, torus_in_u0kl, Ideal, Membership};
pub use series::{s_pow_in_sigma, s_power_vanishing_order, sigma_in_s, CentralSeries};
pub use truncation::{Filtration, TruncIndex, TruncatedElement};

/// Coefficient ring of a finite-precision value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    /// `Z[v, v^-1]` itself, no reduction.
    Exact,
    /// `A^`, reduced modulo `{N}!`.
    Hat,
    /// `A.`, reduced modulo `{1}^N`.
    Dot,
}

impl CoeffRing {
    pub fn name(&self) -> &'static str {
        match self {
            CoeffRing::Exact => "A",
            CoeffRing::Hat => "Ahat",
            CoeffRing::Dot => "Adot",
        }
    }
}

/// The modulus at precision `n` normalized to start at `v^0`:
/// `prod_{i<=n} (v^{2i} - 1)` for `A^` and `(v^2 - 1)^n` for `A.`.
pub fn scalar_modulus(ring: CoeffRing, n: u32) -> Option<LaurentInt> {
    let factor = |i: i64| LaurentInt::from_terms([(2 * i, 1), (0, -1)]);
    match ring {
        CoeffRing::Exact => None,
        CoeffRing::Hat => Some((1..=n as i64).fold(LaurentInt::one(), |acc, i| &acc * &factor(i))),
        CoeffRing::Dot => Some(factor(1).pow(n)),
    }
}

/// Canonical remainder of `x` at precision `n`: exponents in `[0, deg)`.
pub fn reduce_scalar(ring: CoeffRing, x: &LaurentInt, n: u32) -> LaurentInt {
    match scalar_modulus(ring, n) {
        None => x.clone(),
        Some(p) => x.rem_window(&p).expect("scalar moduli have unit end coefficients"),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarApprox {
    ring: CoeffRing,
    rep: LaurentInt,
    precision: u32,
}

/// Reduces `x` to its canonical representative in `ring` at precision `n`.
pub fn scalar_reduce(ring: CoeffRing, x: &LaurentInt, n: u32) -> ScalarApprox {
    ScalarApprox { ring, rep: reduce_scalar(ring, x, n), precision: n }
}

impl ScalarApprox {
    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rep(&self) -> &LaurentInt {
        &self.rep
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Image at a lower precision.
    pub fn lower(&self, n: u32) -> ScalarApprox {
        scalar_reduce(self.ring, &self.rep, n.min(self.precision))
    }

    fn combine(&self, o: &ScalarApprox, f: impl Fn(&LaurentInt, &LaurentInt) -> LaurentInt) -> Result<ScalarApprox> {
        if self.ring != o.ring {
            return domain("scalar ring mismatch");
        }
        Ok(scalar_reduce(self.ring, &f(&self.rep, &o.rep), self.precision.min(o.precision)))
    }

    pub fn add(&self, o: &ScalarApprox) -> Result<ScalarApprox> {
        self.combine(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ScalarApprox) -> Result<ScalarApprox> {
        self.combine(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &ScalarApprox) -> Result<ScalarApprox> {
        self.combine(o, |a, b| a * b)
    }

    pub fn neg(&self) -> ScalarApprox {
        scalar_reduce(self.ring, &-&self.rep, self.precision)
    }
}

impl fmt::Display for ScalarApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.precision;
        match self.ring {
            CoeffRing::Exact => write!(f, "{}", self.rep),
            CoeffRing::Hat => write!(f, "{} mod {{{n}}}!", self.rep),
            CoeffRing::Dot => write!(f, "{} mod {{1}}^{n}", self.rep),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{brace, brace_factorial};

    #[test]
    fn reduce_examples() {
        assert!(scalar_reduce(CoeffRing::Hat, &brace_factorial(3), 3).is_zero());
        let x = LaurentInt::from_terms([(2, 1), (0, -1)]).pow(3);
        assert!(scalar_reduce(CoeffRing::Dot, &x, 3).is_zero());
        let r = scalar_reduce(CoeffRing::Hat, &LaurentInt::v_pow(5), 2);
        assert!(r.rep().min_exp().unwrap() >= 0 && r.rep().max_exp().unwrap() < 6);
        let diff = &LaurentInt::v_pow(5) - r.rep();
        assert!(diff.div_exact(&brace_factorial(2)).unwrap().is_some());
    }

    #[test]
    fn homomorphism() {
        let a = LaurentInt::from_terms([(-3, 2), (1, -1), (4, 5)]);
        let b = LaurentInt::from_terms([(-1, 1), (2, 3)]);
        for ring in [CoeffRing::Hat, CoeffRing::Dot] {
            for n in 0..4 {
                let (x, y) = (scalar_reduce(ring, &a, n), scalar_reduce(ring, &b, n));
                assert_eq!(x.mul(&y).unwrap(), scalar_reduce(ring, &(&a * &b), n));
                assert_eq!(x.add(&y).unwrap(), scalar_reduce(ring, &(&a + &b), n));
            }
        }
        assert!(scalar_reduce(CoeffRing::Dot, &brace(1).pow(2), 2).is_zero());
        assert!(!scalar_reduce(CoeffRing::Dot, &brace(1), 2).is_zero());
    }
}
