//! Quantum integers, factorials and binomials.
//!
//! Everything is expressed through the brace `{a} = v^a - v^-a`; the
//! quantum integer is `[n] = {n}/{1}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::laurent::LaurentInt;
use super::ratfunc::RatFunc;
use crate::error::{domain, Result};

/// `{a} = v^a - v^-a`.
pub fn brace(a: i64) -> LaurentInt {
    LaurentInt::from_terms([(a, BigInt::from(1)), (-a, BigInt::from(-1))])
}

/// `[n] = {n}/{1}`, defined for every integer.
pub fn bracket(n: i64) -> LaurentInt {
    let m = n.abs();
    let s = LaurentInt::from_terms((0..m).map(|i| (m - 1 - 2 * i, BigInt::from(1))));
    if n < 0 {
        -s
    } else {
        s
    }
}

/// `{n}! = {1}{2}...{n}`.
pub fn brace_factorial(n: u32) -> LaurentInt {
    cached(&BRACE_FACT, n as i64, 0, || {
        if n == 0 {
            LaurentInt::one()
        } else {
            &brace_factorial(n - 1) * &brace(n as i64)
        }
    })
}

/// `[n]! = [1][2]...[n]`.
pub fn bracket_factorial(n: u32) -> LaurentInt {
    (1..=n as i64).fold(LaurentInt::one(), |acc, i| &acc * &bracket(i))
}

/// `(q)_n = (1 - q)(1 - q^2)...(1 - q^n)` with `q = v^2`.
pub fn q_pochhammer(n: u32) -> LaurentInt {
    (1..=n as i64).fold(LaurentInt::one(), |acc, i| &acc * &LaurentInt::from_terms([(0, 1), (2 * i, -1)]))
}

/// Falling brace product `{a}{a-1}...{a-n+1}`.
pub fn falling(a: i64, n: u32) -> LaurentInt {
    cached(&FALLING, a, n as i64, || {
        if n == 0 {
            LaurentInt::one()
        } else {
            &falling(a, n - 1) * &brace(a - n as i64 + 1)
        }
    })
}

/// Quantum binomial `falling(a, n) / {n}!`, which lies in `Z[v, v^-1]`.
pub fn qbinom(a: i64, n: u32) -> LaurentInt {
    cached(&QBINOM, a, n as i64, || {
        if n == 0 {
            return LaurentInt::one();
        }
        if a >= 0 && (n as i64) > a {
            return LaurentInt::zero();
        }
        falling(a, n)
            .div_exact(&brace_factorial(n))
            .expect("nonzero divisor")
            .expect("quantum binomials are Laurent polynomials")
    })
}

/// Quantum binomial as an element of `Q(v)`.
pub fn qbinom_rat(a: i64, n: u32) -> RatFunc {
    qbinom(a, n).into()
}

type Cache = OnceLock<Mutex<HashMap<(i64, i64), LaurentInt>>>;

static BRACE_FACT: Cache = OnceLock::new();
static FALLING: Cache = OnceLock::new();
static QBINOM: Cache = OnceLock::new();

fn cached(cell: &'static Cache, a: i64, b: i64, f: impl FnOnce() -> LaurentInt) -> LaurentInt {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(x) = map.lock().unwrap().get(&(a, b)) {
        return x.clone();
    }
    let x = f();
    map.lock().unwrap().insert((a, b), x.clone());
    x
}

/// The named scalars exposed by [`qscalar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QSymbol {
    Brace(i64),
    Bracket(i64),
    BraceFactorial(i64),
    BracketFactorial(i64),
    QPochhammer(i64),
    Falling(i64, i64),
    Binomial(i64, i64),
}

fn nonneg(n: i64, what: &str) -> Result<u32> {
    if n < 0 {
        return domain(format!("{what} needs a non-negative index, got {n}"));
    }
    u32::try_from(n).or_else(|_| domain(format!("{what} index too large")))
}

/// Evaluates a q-symbol; negative factorial or binomial indices are domain errors.
pub fn qscalar(sym: QSymbol) -> Result<LaurentInt> {
    Ok(match sym {
        QSymbol::Brace(a) => brace(a),
        QSymbol::Bracket(n) => bracket(n),
        QSymbol::BraceFactorial(n) => brace_factorial(nonneg(n, "{n}!")?),
        QSymbol::BracketFactorial(n) => bracket_factorial(nonneg(n, "[n]!")?),
        QSymbol::QPochhammer(n) => q_pochhammer(nonneg(n, "(q)_n")?),
        QSymbol::Falling(a, n) => falling(a, nonneg(n, "falling product")?),
        QSymbol::Binomial(a, n) => qbinom(a, nonneg(n, "binomial")?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_matches_brace_ratio() {
        for n in -5..=7 {
            assert_eq!(brace(n).div_exact(&brace(1)).unwrap().unwrap(), bracket(n));
        }
    }

    #[test]
    fn pochhammer_relation() {
        // (q)_n = (-1)^n v^{n(n+1)/2} {n}!
        for n in 0..6u32 {
            let sign = if n % 2 == 1 { -1 } else { 1 };
            let e = (n * (n + 1) / 2) as i64;
            let rhs = brace_factorial(n).scale(&BigInt::from(sign)).shift(e);
            assert_eq!(q_pochhammer(n), rhs);
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(qbinom(3, 1), bracket(3));
        assert_eq!(qbinom(2, 3), LaurentInt::zero());
        assert!(!qbinom(-2, 3).is_zero());
        assert!(qscalar(QSymbol::Binomial(4, -1)).is_err());
        assert!(qscalar(QSymbol::BraceFactorial(-1)).is_err());
    }
}
