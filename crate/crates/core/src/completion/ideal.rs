//! Membership tests for the filtration ideals.
//!
//! `(U_1)^n` and `U^0_{k,l} = ({k}!, BBB(H;l))` are decided exactly, as is
//! `U^e_n` on central elements. `U_n` and `U'_n` have no known normal form
//! and are bracketed by decidable ideals:
//! `U^0_{n,n}`-based truncation from inside, and
//! `U_{2k-1} in U'_k`, `U^0_{2p-1} in U^0_{p,p}`, `U_n in (U_1)^n` from outside.

use std::collections::BTreeMap;
use std::fmt;

use crate::center::sigma_expand;
use crate::coeff::{brace_factorial, LaurentInt};
use crate::completion::truncation::{Filtration, TruncatedElement};
use crate::completion::{reduce_scalar, CoeffRing};
use crate::error::{domain, AlgebraError, Result};
use crate::hopf::TensorElement;
use crate::pbw::PbwElement;
use crate::torus::{hpow_of_k, TorusElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ideal {
    /// `(U_1)^n`.
    U1Pow(u32),
    /// `U^0_{k,l}`, inside the torus.
    U0kl(u32, u32),
    /// `U_n`.
    Un(u32),
    /// `U'_n = U^- U^{>=0}_n`.
    UPrime(u32),
    /// `U^e_n`, for central elements only.
    UeCentral(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::In => "IN",
            Membership::Out => "OUT",
            Membership::Unknown => "UNKNOWN",
        })
    }
}

fn integral_torus(t: &TorusElement) -> Result<()> {
    if t.is_integral() {
        Ok(())
    } else {
        domain("membership needs integral coefficients")
    }
}

/// Exact test for `t in ({k}!, BBB(H;l))`.
pub fn torus_in_u0kl(t: &TorusElement, k: u32, l: u32) -> Result<bool> {
    integral_torus(t)?;
    if k == 0 || l == 0 {
        return Ok(true);
    }
    let d = brace_factorial(k);
    for (a, b) in t.expand_bbb_mod(l)? {
        for c in [a, b] {
            let c = c.into_laurent().ok_or_else(|| AlgebraError::Internal("reduction left Z[v, v^-1]".into()))?;
            if c.div_exact(&d)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact test for `t in (U^0_1)^p = sum_i ({1}^i {H}^{p-i})`.
pub fn torus_in_u0_1pow(t: &TorusElement, p: u32) -> Result<bool> {
    integral_torus(t)?;
    let x = PbwElement::from_torus(t);
    Ok(TruncatedElement::truncate(&x, Filtration::U1pow, p)?.is_zero())
}

fn both(in_: bool, out: bool, what: &str) -> Result<Membership> {
    match (in_, out) {
        (true, true) => Err(AlgebraError::Internal(format!("{what}: inner and outer bounds disagree"))),
        (true, false) => Ok(Membership::In),
        (false, true) => Ok(Membership::Out),
        (false, false) => Ok(Membership::Unknown),
    }
}

/// Decides or brackets `x in I`.
pub fn ideal_member(x: &PbwElement, ideal: Ideal) -> Result<Membership> {
    if let Some(m) = x.integrality_witness() {
        return domain(format!("membership needs an integral element; coefficient of {m} is not"));
    }
    let yes = |b: bool| if b { Membership::In } else { Membership::Out };
    match ideal {
        Ideal::U1Pow(n) => Ok(yes(TruncatedElement::truncate(x, Filtration::U1pow, n)?.is_zero())),
        Ideal::U0kl(k, l) => match x.as_torus() {
            Some(t) => Ok(yes(torus_in_u0kl(&t, k, l)?)),
            None => Ok(Membership::Out),
        },
        Ideal::UeCentral(n) => {
            let p = sigma_expand(x)?;
            let low = p.coeffs().iter().take(n as usize).all(|(a, b)| a.is_zero() && b.is_zero());
            Ok(yes(low))
        }
        Ideal::Un(n) => {
            let inner = TruncatedElement::truncate(x, Filtration::Un, n)?.is_zero();
            let mut outer = !TruncatedElement::truncate(x, Filtration::U1pow, n)?.is_zero();
            // U_n lies in U'_k for 2k - 1 <= n
            let k = n.div_ceil(2);
            for ((_, m), t) in x.components() {
                if outer {
                    break;
                }
                if m < k {
                    let p = (k - m).div_ceil(2);
                    outer = !torus_in_u0kl(&t, p, p)?;
                }
            }
            both(inner, outer, "U_n")
        }
        Ideal::UPrime(n) => {
            let mut inner = true;
            let mut outer = false;
            for ((_, m), t) in x.components() {
                if m >= n {
                    continue;
                }
                let r = n - m;
                inner &= torus_in_u0kl(&t, r, r)?;
                let p = r.div_ceil(2);
                outer |= !torus_in_u0kl(&t, p, p)? || !torus_in_u0_1pow(&t, r)?;
            }
            both(inner, outer, "U'_n")
        }
    }
}

/// A basis element `F^(a) K^delta` of `U / U_1`, `delta` in {0, 1}.
type QuotientBasis = (u32, u8);

/// Image of a monomial slot in `U / U_1`, as `(a, delta) -> coefficient`.
fn slot_mod_u1(f: u32, k: i64, e: u32) -> Vec<(QuotientBasis, LaurentInt)> {
    if e > 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some((alpha, beta)) = hpow_of_k(k).into_iter().next() {
        for (delta, c) in [(0u8, alpha), (1u8, beta)] {
            if let Some(c) = c.into_laurent() {
                if !c.is_zero() {
                    out.push(((f, delta), c));
                }
            }
        }
    }
    out
}

/// Exact test for an order-2 tensor lying in `U_1 (x) U + U (x) U_1`: its
/// image in `U/U_1 (x) U/U_1` must vanish modulo `{1}`.
pub fn tensor_in_u1_sum(t: &TensorElement) -> Result<bool> {
    if t.order() != 2 {
        return domain("expected an order-2 tensor");
    }
    if !t.is_integral() {
        return domain("membership needs integral coefficients");
    }
    let mut image: BTreeMap<(QuotientBasis, QuotientBasis), LaurentInt> = BTreeMap::new();
    for (slots, c) in t.terms() {
        let c = c.to_laurent().expect("checked integral");
        let l = slot_mod_u1(slots[0].f, slots[0].k, slots[0].e);
        let r = slot_mod_u1(slots[1].f, slots[1].k, slots[1].e);
        for (li, lc) in &l {
            for (ri, rc) in &r {
                let w = &(&c * lc) * rc;
                let slot = image.entry((*li, *ri)).or_insert_with(LaurentInt::zero);
                *slot += &w;
            }
        }
    }
    Ok(image.values().all(|c| reduce_scalar(CoeffRing::Dot, c, 1).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::sigma;
    use crate::coeff::brace;
    use crate::hopf::coproduct;
    use crate::pbw::Monomial;
    use crate::torus::brace_h;

    #[test]
    fn examples() {
        let h = PbwElement::from_torus(&brace_h(1, 0));
        assert_eq!(ideal_member(&h, Ideal::U1Pow(1)).unwrap(), Membership::In);
        let x = h.scale(&brace(1).into());
        assert_eq!(ideal_member(&x, Ideal::U1Pow(2)).unwrap(), Membership::In);
        assert_eq!(ideal_member(&sigma(2), Ideal::UeCentral(2)).unwrap(), Membership::In);
        assert_eq!(ideal_member(&PbwElement::f_div(1), Ideal::U1Pow(1)).unwrap(), Membership::Out);
        assert_eq!(ideal_member(&h, Ideal::U1Pow(2)).unwrap(), Membership::Out);
    }

    #[test]
    fn sandwich() {
        let e3 = PbwElement::e_pow(3);
        assert_eq!(ideal_member(&e3, Ideal::Un(3)).unwrap(), Membership::In);
        assert_eq!(ideal_member(&PbwElement::e_pow(1), Ideal::Un(2)).unwrap(), Membership::Out);
        let x = PbwElement::from_torus(&crate::torus::falling_h(1, 2));
        assert_ne!(ideal_member(&x, Ideal::Un(2)).unwrap(), Membership::Out);
        assert_ne!(ideal_member(&x, Ideal::UPrime(2)).unwrap(), Membership::Out);
    }

    #[test]
    fn generators_are_hopf_ideal_shadows() {
        let gens = [PbwElement::scalar(brace(1).into()), PbwElement::from_torus(&brace_h(1, 0)), PbwElement::e_pow(1)];
        for g in &gens {
            assert!(tensor_in_u1_sum(&coproduct(g)).unwrap());
        }
        let f = PbwElement::monomial(Monomial::new(1, 0, 0));
        assert!(!tensor_in_u1_sum(&coproduct(&f)).unwrap());
    }
}
