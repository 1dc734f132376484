//! Canonical truncations of elements of the completed algebras.
//!
//! `Un` at precision `n` keeps `F^(a) K^d BBB(H;j) e^m` with `j, m < n` and
//! coefficients modulo `{n}!`. `U1pow` keeps `F^(a) K^d {H}^j e^m` with
//! `j + m < n` and the coefficient modulo `{1}^{n-j-m}`; its kernel is
//! exactly `(U_1)^n`.
//!
//! The `Un` kernel is contained in `U_n` but is not a two-sided ideal:
//! `e^2` truncates to zero at `n = 2` while `e^2 F^(1)` does not. Products
//! of `Un` truncations are only meaningful when the factors carry enough
//! extra precision, see [`TruncatedElement::lift_precision`].

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{LaurentInt, RatFunc};
use crate::completion::{reduce_scalar, CoeffRing};
use crate::error::{domain, AlgebraError, Result};
use crate::pbw::PbwElement;
use crate::torus::{bbb, brace_h, TorusElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filtration {
    Un,
    U1pow,
}

impl Filtration {
    pub fn name(&self) -> &'static str {
        match self {
            Filtration::Un => "Un",
            Filtration::U1pow => "U1pow",
        }
    }
}

/// Index `(a, m, j, delta)` of `F^(a) K^delta B_j e^m`, where `B_j` is
/// `BBB(H;j)` or `{H}^j` depending on the filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncIndex {
    pub f: u32,
    pub e: u32,
    pub j: u32,
    pub delta: u8,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedElement {
    filtration: Filtration,
    n: u32,
    terms: BTreeMap<TruncIndex, LaurentInt>,
}

fn coeff_modulus(filt: Filtration, n: u32, idx: &TruncIndex) -> (CoeffRing, u32) {
    match filt {
        Filtration::Un => (CoeffRing::Hat, n),
        Filtration::U1pow => (CoeffRing::Dot, n - idx.j - idx.e),
    }
}

fn integral(c: RatFunc) -> Result<LaurentInt> {
    c.into_laurent().ok_or_else(|| AlgebraError::Internal("reduction left Z[v, v^-1]".into()))
}

impl TruncatedElement {
    pub fn zero(filtration: Filtration, n: u32) -> Self {
        TruncatedElement { filtration, n, terms: BTreeMap::new() }
    }

    pub fn filtration(&self) -> Filtration {
        self.filtration
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<TruncIndex, LaurentInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds a truncation from raw coefficients, reducing them.
    pub fn from_terms<I: IntoIterator<Item = (TruncIndex, LaurentInt)>>(
        filtration: Filtration,
        n: u32,
        it: I,
    ) -> Result<Self> {
        let mut t = Self::zero(filtration, n);
        for (idx, c) in it {
            let ok = idx.delta <= 1
                && match filtration {
                    Filtration::Un => idx.j < n && idx.e < n,
                    Filtration::U1pow => idx.j + idx.e < n,
                };
            if !ok {
                return domain(format!("index {idx:?} is outside the {} window at precision {n}", filtration.name()));
            }
            t.add_term(idx, &c);
        }
        Ok(t)
    }

    fn add_term(&mut self, idx: TruncIndex, c: &LaurentInt) {
        let (ring, p) = coeff_modulus(self.filtration, self.n, &idx);
        let old = self.terms.remove(&idx).unwrap_or_else(LaurentInt::zero);
        let r = reduce_scalar(ring, &(&old + c), p);
        if !r.is_zero() {
            self.terms.insert(idx, r);
        }
    }

    /// Canonical truncation of an integral element.
    pub fn truncate(x: &PbwElement, filtration: Filtration, n: u32) -> Result<Self> {
        if let Some(m) = x.integrality_witness() {
            return domain(format!("truncation needs an integral element; coefficient of {m} is not"));
        }
        let mut out = Self::zero(filtration, n);
        for ((a, m), t) in x.components() {
            if m >= n {
                continue;
            }
            let pairs = match filtration {
                Filtration::Un => t.expand_bbb_mod(n)?,
                Filtration::U1pow => t.expand_hpow(),
            };
            for (j, (alpha, beta)) in pairs.into_iter().enumerate() {
                let j = j as u32;
                if filtration == Filtration::U1pow && j + m >= n {
                    break;
                }
                for (delta, c) in [(0u8, alpha), (1u8, beta)] {
                    if !c.is_zero() {
                        out.add_term(TruncIndex { f: a, e: m, j, delta }, &integral(c)?);
                    }
                }
            }
        }
        Ok(out)
    }

    fn basis_torus(&self, j: u32) -> TorusElement {
        match self.filtration {
            Filtration::Un => bbb(j),
            Filtration::U1pow => brace_h(1, 0).pow(j),
        }
    }

    /// Representative in the integral form.
    pub fn assemble(&self) -> PbwElement {
        let mut acc = PbwElement::zero();
        for (idx, c) in &self.terms {
            let t = self.basis_torus(idx.j).shift_k(idx.delta as i64).scale(&c.into());
            acc += &PbwElement::sandwich(idx.f, &t, idx.e);
        }
        acc
    }

    fn check_compatible(&self, o: &TruncatedElement) -> Result<()> {
        if self.filtration != o.filtration {
            return domain("filtration mismatch");
        }
        if self.n != o.n {
            return domain("precision mismatch");
        }
        Ok(())
    }

    pub fn add(&self, o: &TruncatedElement) -> Result<TruncatedElement> {
        self.check_compatible(o)?;
        let mut r = self.clone();
        for (idx, c) in &o.terms {
            r.add_term(*idx, c);
        }
        Ok(r)
    }

    pub fn sub(&self, o: &TruncatedElement) -> Result<TruncatedElement> {
        self.add(&o.scale(&LaurentInt::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentInt) -> TruncatedElement {
        let mut r = Self::zero(self.filtration, self.n);
        for (idx, x) in &self.terms {
            r.add_term(*idx, &(x * c));
        }
        r
    }

    /// `truncate(assemble(self) * assemble(o))`. Well defined for `U1pow`;
    /// for `Un` the result depends on the representatives.
    pub fn mul(&self, o: &TruncatedElement) -> Result<TruncatedElement> {
        self.check_compatible(o)?;
        Self::truncate(&(&self.assemble() * &o.assemble()), self.filtration, self.n)
    }

    /// Image under the tower map to a lower precision.
    pub fn project(&self, n: u32) -> Result<TruncatedElement> {
        if n > self.n {
            return domain("cannot project to a higher precision");
        }
        Self::truncate(&self.assemble(), self.filtration, n)
    }

    /// Precision at which `Un` representatives may be multiplied and then
    /// truncated to `n`: `U_{6n-5}` lies in the `Un` kernel at `n`
    /// (via `U_{2k-1} in U'_k` and `U^0_{2p-1} in U^0_{p,p}`).
    pub fn lift_precision(filtration: Filtration, n: u32) -> u32 {
        match filtration {
            Filtration::U1pow => n,
            Filtration::Un => (6 * n).saturating_sub(5).max(n),
        }
    }
}

impl fmt::Display for TruncatedElement {
    /// Mirrors the PBW text form, leading term first, with `BBB(j)` or
    /// `brH(0,1)^j` factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ones = LaurentInt::one();
        let neg_ones = LaurentInt::constant(-1);
        for (i, (idx, c)) in self.terms.iter().rev().enumerate() {
            let mut parts: Vec<String> = Vec::new();
            if idx.f > 0 {
                parts.push(format!("F({})", idx.f));
            }
            if idx.delta == 1 {
                parts.push("K".into());
            }
            if idx.j > 0 {
                parts.push(match (self.filtration, idx.j) {
                    (Filtration::Un, j) => format!("BBB({j})"),
                    (Filtration::U1pow, 1) => "brH(0,1)".into(),
                    (Filtration::U1pow, j) => format!("brH(0,1)^{j}"),
                });
            }
            match idx.e {
                0 => {}
                1 => parts.push("e".into()),
                m => parts.push(format!("e^{m}")),
            }
            let mon = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
            let (sep, body) = if *c == ones {
                (" + ", mon)
            } else if *c == neg_ones {
                (" - ", mon)
            } else if parts.is_empty() {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::brace_factorial;
    use crate::pbw::Monomial;

    #[test]
    fn examples() {
        let e3 = PbwElement::e_pow(3);
        assert!(TruncatedElement::truncate(&e3, Filtration::Un, 3).unwrap().is_zero());
        let k = PbwElement::k_pow(1).scale(&brace_factorial(2).into());
        assert!(TruncatedElement::truncate(&k, Filtration::Un, 2).unwrap().is_zero());
        let fe = PbwElement::monomial(Monomial::new(5, 0, 1));
        let t = TruncatedElement::truncate(&fe, Filtration::Un, 2).unwrap();
        assert_eq!(t.assemble(), fe);
        assert_eq!(t.to_string(), "F(5) e");
    }

    #[test]
    fn canonical() {
        let x = &PbwElement::monomial(Monomial::new(1, -3, 1)) + &PbwElement::monomial(Monomial::new(0, 5, 0));
        for filt in [Filtration::Un, Filtration::U1pow] {
            for n in 0..4 {
                let t = TruncatedElement::truncate(&x, filt, n).unwrap();
                assert_eq!(TruncatedElement::truncate(&t.assemble(), filt, n).unwrap(), t);
                let rest = &x - &t.assemble();
                assert!(TruncatedElement::truncate(&rest, filt, n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn un_kernel_is_not_an_ideal() {
        let e2 = PbwElement::e_pow(2);
        let f1 = PbwElement::f_div(1);
        assert!(TruncatedElement::truncate(&e2, Filtration::Un, 2).unwrap().is_zero());
        let prod = &e2 * &f1;
        assert!(!TruncatedElement::truncate(&prod, Filtration::Un, 2).unwrap().is_zero());
        // with lifted inputs the product is consistent
        let hi = TruncatedElement::lift_precision(Filtration::Un, 2);
        let a = TruncatedElement::truncate(&e2, Filtration::Un, hi).unwrap();
        let b = TruncatedElement::truncate(&f1, Filtration::Un, hi).unwrap();
        let via = TruncatedElement::truncate(&(&a.assemble() * &b.assemble()), Filtration::Un, 2).unwrap();
        assert_eq!(via, TruncatedElement::truncate(&prod, Filtration::Un, 2).unwrap());
    }

    #[test]
    fn u1pow_products() {
        let x = &PbwElement::e_pow(1) + &PbwElement::f_div(2);
        let y = &PbwElement::monomial(Monomial::new(1, 1, 0)) + &PbwElement::e_pow(2);
        for n in 0..4 {
            let tx = TruncatedElement::truncate(&x, Filtration::U1pow, n).unwrap();
            let ty = TruncatedElement::truncate(&y, Filtration::U1pow, n).unwrap();
            let direct = TruncatedElement::truncate(&(&x * &y), Filtration::U1pow, n).unwrap();
            assert_eq!(tx.mul(&ty).unwrap(), direct);
        }
    }
}
