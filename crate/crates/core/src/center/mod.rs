//! The center: the Casimir `C`, the basis `sigma_n`, the Harish-Chandra
//! projection and the adjoint construction of `{n}! sigma_n`.
//!
//! `sigma_n = prod_{i=1}^n (C^2 - (v^i + v^-i)^2)`; together with `C sigma_n`
//! these form a basis of the center over `Z[v, v^-1]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::coeff::{brace, brace_factorial, bracket, falling, qbinom, LaurentInt, RatFunc};
use crate::error::{domain, AlgebraError, Result};
use crate::hopf::{adjoint, adjoint_e_pow, adjoint_f_div};
use crate::pbw::{Monomial, PbwElement};
use crate::torus::{falling_h, TorusElement};

/// `C = {1} F^(1) e + v K + v^-1 K^-1`.
pub fn casimir() -> PbwElement {
    PbwElement::from_terms([
        (Monomial::new(1, 0, 1), RatFunc::from(brace(1))),
        (Monomial::new(0, 1, 0), RatFunc::v_pow(1)),
        (Monomial::new(0, -1, 0), RatFunc::v_pow(-1)),
    ])
}

/// `v^i + v^-i`.
fn v_sym(i: i64) -> LaurentInt {
    LaurentInt::from_terms([(i, 1), (-i, 1)])
}

static SIGMA: OnceLock<Mutex<HashMap<u32, PbwElement>>> = OnceLock::new();

/// `sigma_n` in PBW form.
pub fn sigma(n: u32) -> PbwElement {
    let map = SIGMA.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(x) = map.lock().unwrap().get(&n) {
        return x.clone();
    }
    let x = if n == 0 {
        PbwElement::one()
    } else {
        let c = casimir();
        let shift = v_sym(n as i64).pow(2);
        let factor = &(&c * &c) - &PbwElement::scalar(shift.into());
        &sigma(n - 1) * &factor
    };
    map.lock().unwrap().insert(n, x.clone());
    x
}

pub fn sigma_checked(n: i64) -> Result<PbwElement> {
    if n < 0 {
        return domain("sigma(n) needs n >= 0");
    }
    Ok(sigma(n as u32))
}

/// `xi_m = prod_{i=1}^m (C - v^{2i+1} - v^{-2i-1})`.
pub fn xi(m: u32) -> PbwElement {
    let c = casimir();
    (1..=m as i64).fold(PbwElement::one(), |acc, i| &acc * &(&c - &PbwElement::scalar(v_sym(2 * i + 1).into())))
}

/// `xi'_m = prod_{i=1}^m (C - v^{2i+1} K - v^{-2i-1} K^-1)`.
pub fn xi_prime(m: u32) -> PbwElement {
    let c = casimir();
    (1..=m as i64).fold(PbwElement::one(), |acc, i| {
        let t = PbwElement::from_terms([
            (Monomial::new(0, 1, 0), RatFunc::v_pow(2 * i + 1)),
            (Monomial::new(0, -1, 0), RatFunc::v_pow(-2 * i - 1)),
        ]);
        &acc * &(&c - &t)
    })
}

/// Harish-Chandra projection on Z-degree-0 elements: keeps the `K^b` part.
pub fn harish_chandra(x: &PbwElement) -> Result<TorusElement> {
    if let Some(m) = x.terms().keys().find(|m| m.f != m.e) {
        return domain(format!("Harish-Chandra projection needs degree 0; offending monomial {m}"));
    }
    Ok(TorusElement::from_pairs(x.terms().iter().filter(|(m, _)| m.f == 0).map(|(m, c)| (m.k, c.clone()))))
}

/// Commutes with `K`, `e` and `F^(1)`.
pub fn is_central(x: &PbwElement) -> bool {
    [PbwElement::k_pow(1), PbwElement::e_pow(1), PbwElement::f_div(1)]
        .iter()
        .all(|g| &(g * x) - &(x * g) == PbwElement::zero())
}

/// `phi(C) = v K + v^-1 K^-1`.
pub fn phi_casimir() -> TorusElement {
    TorusElement::from_pairs([(1, RatFunc::v_pow(1)), (-1, RatFunc::v_pow(-1))])
}

/// `phi(sigma_n)` computed multiplicatively from `phi(C)`.
pub fn phi_sigma(n: u32) -> TorusElement {
    let pc = phi_casimir();
    let p2 = &pc * &pc;
    (1..=n as i64).fold(TorusElement::one(), |acc, i| &acc * &(&p2 - &TorusElement::constant(v_sym(i).pow(2).into())))
}

/// `BB(H; n) BB(H+1+n; n)`.
pub fn sigma_bar(n: u32) -> TorusElement {
    &falling_h(0, n) * &falling_h(1 + n as i64, n)
}

/// An element `sum_n (a_n + b_n C) sigma_n` of the center.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CentralPoly {
    coeffs: Vec<(RatFunc, RatFunc)>,
}

impl CentralPoly {
    pub fn zero() -> Self {
        CentralPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![(RatFunc::one(), RatFunc::zero())])
    }

    pub fn from_coeffs(coeffs: Vec<(RatFunc, RatFunc)>) -> Self {
        let mut p = CentralPoly { coeffs };
        p.trim();
        p
    }

    /// `sigma_n`.
    pub fn sigma(n: usize) -> Self {
        let mut v = vec![(RatFunc::zero(), RatFunc::zero()); n + 1];
        v[n].0 = RatFunc::one();
        Self::from_coeffs(v)
    }

    /// `C`.
    pub fn casimir() -> Self {
        Self::from_coeffs(vec![(RatFunc::zero(), RatFunc::one())])
    }

    /// `sum_k g_k C^k`.
    pub fn from_c_poly(g: &[RatFunc]) -> Self {
        let mut acc = Self::zero();
        for c in g.iter().rev() {
            acc = acc.mul_c().add(&Self::from_coeffs(vec![(c.clone(), RatFunc::zero())]));
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|(a, b)| a.is_zero() && b.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[(RatFunc, RatFunc)] {
        &self.coeffs
    }

    pub fn a(&self, n: usize) -> RatFunc {
        self.coeffs.get(n).map(|p| p.0.clone()).unwrap_or_else(RatFunc::zero)
    }

    pub fn b(&self, n: usize) -> RatFunc {
        self.coeffs.get(n).map(|p| p.1.clone()).unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|(a, b)| a.is_integral() && b.is_integral())
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, o: &CentralPoly) -> CentralPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| (self.a(i) + o.a(i), self.b(i) + o.b(i))).collect())
    }

    pub fn scale(&self, c: &RatFunc) -> CentralPoly {
        Self::from_coeffs(self.coeffs.iter().map(|(a, b)| (a * c, b * c)).collect())
    }

    /// Multiplication by `C`, using `C^2 sigma_k = sigma_{k+1} + (v^{k+1} + v^{-k-1})^2 sigma_k`.
    pub fn mul_c(&self) -> CentralPoly {
        let n = self.coeffs.len();
        let mut out = vec![(RatFunc::zero(), RatFunc::zero()); n + 1];
        for (k, (a, b)) in self.coeffs.iter().enumerate() {
            out[k].1 += a;
            out[k + 1].0 += b;
            out[k].0 += &b.mul_laurent(&v_sym(k as i64 + 1).pow(2));
        }
        Self::from_coeffs(out)
    }

    /// Exact product in the center.
    pub fn mul(&self, o: &CentralPoly) -> CentralPoly {
        let conv = |x: &dyn Fn(usize) -> RatFunc, y: &dyn Fn(usize) -> RatFunc, lx: usize, ly: usize| {
            let mut out = vec![RatFunc::zero(); (lx + ly).max(1)];
            for m in 0..lx {
                let xm = x(m);
                if xm.is_zero() {
                    continue;
                }
                for n in 0..ly {
                    let yn = y(n);
                    if yn.is_zero() {
                        continue;
                    }
                    let xy = &xm * &yn;
                    for (i, c) in sigma_product_coeffs(m as u32, n as u32).into_iter().enumerate() {
                        let idx = m + n - i;
                        out[idx] += &xy.mul_laurent(&c);
                    }
                }
            }
            out
        };
        let (lx, ly) = (self.coeffs.len(), o.coeffs.len());
        let a = |i: usize| self.a(i);
        let b = |i: usize| self.b(i);
        let c = |i: usize| o.a(i);
        let d = |i: usize| o.b(i);
        let ac = conv(&a, &c, lx, ly);
        let ad = conv(&a, &d, lx, ly);
        let bc = conv(&b, &c, lx, ly);
        let bd = conv(&b, &d, lx, ly);
        // b d C^2 = b d (sigma_1 + [2]^2)
        let bd_poly = Self::from_coeffs(bd.into_iter().map(|x| (x, RatFunc::zero())).collect());
        let bd_c2 = bd_poly.mul_c().mul_c();
        let len = ac.len().max(ad.len());
        let base = Self::from_coeffs(
            (0..len)
                .map(|i| {
                    let x = ac.get(i).cloned().unwrap_or_else(RatFunc::zero);
                    let y = ad.get(i).cloned().unwrap_or_else(RatFunc::zero)
                        + bc.get(i).cloned().unwrap_or_else(RatFunc::zero);
                    (x, y)
                })
                .collect(),
        );
        base.add(&bd_c2)
    }

    /// Assembles `sum (a_n + b_n C) sigma_n` as a PBW element.
    pub fn assemble(&self) -> PbwElement {
        let c = casimir();
        let mut acc = PbwElement::zero();
        for (n, (a, b)) in self.coeffs.iter().enumerate() {
            let s = sigma(n as u32);
            if !a.is_zero() {
                acc += &s.scale(a);
            }
            if !b.is_zero() {
                acc += &(&c * &s).scale(b);
            }
        }
        acc
    }

    /// `phi` of the assembled element, without building it in PBW form.
    pub fn harish_chandra(&self) -> TorusElement {
        let pc = phi_casimir();
        let mut acc = TorusElement::zero();
        for (n, (a, b)) in self.coeffs.iter().enumerate() {
            let s = phi_sigma(n as u32);
            acc = &acc + &(&s.scale(a) + &(&pc * &s).scale(b));
        }
        acc
    }
}

impl fmt::Display for CentralPoly {
    /// `(a) sigma(n) + (b) C sigma(n) + ...`, ascending in `n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, (a, b)) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                parts.push(format!("({a}) sigma({n})"));
            }
            if !b.is_zero() {
                parts.push(format!("({b}) C sigma({n})"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Expresses a central element in the basis `sigma_n, C sigma_n` by peeling
/// the top K-degree of its Harish-Chandra image: `phi(sigma_n)` has leading
/// term `v^{2n} K^{2n}` and `phi(C sigma_n)` has `v^{2n+1} K^{2n+1}`.
pub fn sigma_expand(z: &PbwElement) -> Result<CentralPoly> {
    if !is_central(z) {
        return domain("sigma expansion needs a central element");
    }
    peel_central_image(&harish_chandra(z)?)
}

/// Peeling step of [`sigma_expand`] on a torus element assumed to lie in
/// the image of the center.
pub fn peel_central_image(t: &TorusElement) -> Result<CentralPoly> {
    let pc = phi_casimir();
    let mut t = t.clone();
    let mut coeffs: Vec<(RatFunc, RatFunc)> = Vec::new();
    while let Some(d) = t.max_k() {
        if d < 0 {
            return Err(AlgebraError::Domain("image is not invariant under the w involution".into()));
        }
        let n = (d / 2) as usize;
        if coeffs.len() <= n {
            coeffs.resize(n + 1, (RatFunc::zero(), RatFunc::zero()));
        }
        let lead = t.coeff(d);
        let c = &lead * &RatFunc::v_pow(-d);
        let basis = if d % 2 == 1 { &pc * &phi_sigma(n as u32) } else { phi_sigma(n as u32) };
        if d % 2 == 1 {
            coeffs[n].1 = c.clone();
        } else {
            coeffs[n].0 = c.clone();
        }
        t = &t - &basis.scale(&c);
    }
    Ok(CentralPoly::from_coeffs(coeffs))
}

/// Coefficients `BB(m;i) BB(n;i) qbinom(m+n+1, i)` of `sigma_{m+n-i}` in
/// `sigma_m sigma_n`, indexed by `i`.
pub fn sigma_product_coeffs(m: u32, n: u32) -> Vec<LaurentInt> {
    (0..=m.min(n)).map(|i| &(&falling(m as i64, i) * &falling(n as i64, i)) * &qbinom((m + n + 1) as i64, i)).collect()
}

/// `F^(i) e^i |> x` through the fast paths for `e^i` and `F^(i)`.
fn adjoint_fe(i: u32, x: &PbwElement) -> PbwElement {
    adjoint_f_div(i, &adjoint_e_pow(i, x))
}

/// `sum_{i=0}^{2n} (-1)^i BB(2n+1; 2n-i) F^(i) e^i |> F^(n) K^-n e^n`, which
/// equals `{2n}!^-1 xi_{2n} |> F^(n) K^-n e^n`.
pub fn sigma_tilde(n: u32) -> PbwElement {
    let y = PbwElement::monomial(Monomial::new(n, -(n as i64), n));
    let mut acc = PbwElement::zero();
    for i in 0..=2 * n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = falling(2 * n as i64 + 1, 2 * n - i).scale(&sign.into());
        acc += &adjoint_fe(i, &y).scale(&c.into());
    }
    acc
}

/// The defining form `{2n}!^-1 xi_{2n} |> F^(n) K^-n e^n`, computed with
/// the generic adjoint action. Affordable only for small `n`.
pub fn sigma_tilde_from_xi(n: u32) -> Result<PbwElement> {
    let y = PbwElement::monomial(Monomial::new(n, -(n as i64), n));
    let z = adjoint(&xi(2 * n), &y);
    let inv = RatFunc::new(LaurentInt::one(), brace_factorial(2 * n))?;
    let out = z.scale(&inv);
    if !out.is_integral() {
        return Err(AlgebraError::Internal("division by {2n}! was not exact".into()));
    }
    Ok(out)
}

/// The closed form
/// `(-1)^n v^{-n^2+n} BB(H;n) sum_{i=n}^{2n} (-1)^i BB(i;n) qbinom(2n+1, i+1) BB(H+n-i; n)`.
pub fn phi_sigma_tilde_closed(n: u32) -> TorusElement {
    let n64 = n as i64;
    let mut inner = TorusElement::zero();
    for i in n..=2 * n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = (&falling(i as i64, n) * &qbinom(2 * n64 + 1, i + 1)).scale(&sign.into());
        inner = &inner + &falling_h(n64 - i as i64, n).scale(&c.into());
    }
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let pre = RatFunc::from(LaurentInt::constant(sign).shift(-n64 * n64 + n64));
    (&falling_h(0, n) * &inner).scale(&pre)
}

/// One summand of the integrality certificate.
#[derive(Clone, Debug)]
pub struct WitnessEntry {
    pub j: u32,
    /// `{2n-j}! (e^j |> F^(n))`.
    pub w: PbwElement,
    /// `w / {n}!`, integral.
    pub quotient: PbwElement,
    /// `F^(j) |> K^-n e^n`.
    pub factor: PbwElement,
    /// The pieces `(coefficient, left, right)` of `factor = sum c * left * e^n * right`.
    pub factor_pieces: Vec<(RatFunc, PbwElement, PbwElement)>,
}

/// Evidence that `sigma_n` lies in `{n}!^-1 * ({n}! U * U e^n U)`.
#[derive(Clone, Debug)]
pub struct IntegralityCertificate {
    pub n: u32,
    pub entries: Vec<WitnessEntry>,
    /// `sum_j (-1)^j v^{j(-j-1+2n)+2n} w_j factor_j`.
    pub assembled: PbwElement,
    /// `assembled / (v^{-n^2+n} {n}!)`.
    pub sigma: PbwElement,
}

/// Builds the certificate and checks every obligation.
pub fn integrality_witness(n: u32) -> Result<IntegralityCertificate> {
    let n64 = n as i64;
    let nfact = brace_factorial(n);
    let ke = PbwElement::monomial(Monomial::new(0, -n64, n));
    let mut entries = Vec::new();
    let mut assembled = PbwElement::zero();
    for j in 0..=2 * n {
        let ad = adjoint_e_pow(j, &PbwElement::f_div(n));
        let w = ad.scale(&brace_factorial(2 * n - j).into());
        let mut quotient = PbwElement::zero();
        for (m, c) in w.terms() {
            let num = c.to_laurent().ok_or_else(|| AlgebraError::Internal("non-integral adjoint image".into()))?;
            let q = num.div_exact(&nfact)?.ok_or_else(|| {
                AlgebraError::Internal(format!("coefficient of {m} in w_{j} is not divisible by {{{n}}}!"))
            })?;
            quotient.add_term(*m, &q.into());
        }
        // F^(j) |> K^-n e^n = sum_i (-1)^i v^{-i(j-1)} F^(j-i) (K^-n e^n) F^(i) K^j
        let mut pieces = Vec::new();
        let mut factor = PbwElement::zero();
        for i in 0..=j {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let c = RatFunc::from(LaurentInt::constant(sign).shift(-(i as i64) * (j as i64 - 1)));
            let left = &PbwElement::f_div(j - i) * &PbwElement::k_pow(-n64);
            let right = PbwElement::monomial(Monomial::new(i, j as i64, 0));
            let piece = &(&left * &PbwElement::e_pow(n)) * &right;
            factor += &piece.scale(&c);
            pieces.push((c, left, right));
        }
        if factor != adjoint_f_div(j, &ke) {
            return Err(AlgebraError::Internal("factor expansion mismatch".into()));
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let e = j as i64 * (-(j as i64) - 1 + 2 * n64) + 2 * n64;
        let c = RatFunc::from(LaurentInt::constant(sign).shift(e));
        assembled += &(&w * &factor).scale(&c);
        entries.push(WitnessEntry { j, w, quotient, factor, factor_pieces: pieces });
    }
    let denom = nfact.shift(-n64 * n64 + n64);
    let mut s = PbwElement::zero();
    for (m, c) in assembled.terms() {
        let num = c.to_laurent().ok_or_else(|| AlgebraError::Internal("non-integral assembly".into()))?;
        let q = num
            .div_exact(&denom)?
            .ok_or_else(|| AlgebraError::Internal("assembled sum not divisible by {n}!".into()))?;
        s.add_term(*m, &q.into());
    }
    if s != sigma(n) {
        return Err(AlgebraError::Internal("assembled certificate does not reproduce sigma_n".into()));
    }
    Ok(IntegralityCertificate { n, entries, assembled, sigma: s })
}

/// `[2]^2`, the constant in `C^2 = sigma_1 + [2]^2`.
pub fn two_squared() -> LaurentInt {
    bracket(2).pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casimir_is_central() {
        assert!(is_central(&casimir()));
        assert!(!is_central(&PbwElement::e_pow(1)));
        assert_eq!(harish_chandra(&casimir()).unwrap(), phi_casimir());
    }

    #[test]
    fn sigma_one_and_bar() {
        let c = casimir();
        assert_eq!(sigma(1), &(&c * &c) - &PbwElement::scalar(two_squared().into()));
        for n in 0..=3 {
            assert_eq!(harish_chandra(&sigma(n)).unwrap(), sigma_bar(n));
            assert_eq!(phi_sigma(n), sigma_bar(n));
        }
    }

    #[test]
    fn expansions() {
        let c = casimir();
        let e = sigma_expand(&(&c * &c)).unwrap();
        assert_eq!(e.a(1), RatFunc::one());
        assert_eq!(e.a(0), RatFunc::from(two_squared()));
        let e3 = sigma_expand(&(&(&c * &c) * &c)).unwrap();
        assert_eq!(e3.b(1), RatFunc::one());
        assert_eq!(e3.b(0), RatFunc::from(two_squared()));
        assert!(sigma_expand(&PbwElement::e_pow(1)).is_err());
    }

    #[test]
    fn sigma_tilde_small() {
        assert_eq!(sigma_tilde(0), PbwElement::one());
        assert_eq!(sigma_tilde(1), sigma(1).scale(&brace(1).into()));
        assert_eq!(sigma_tilde_from_xi(1).unwrap(), sigma_tilde(1));
        let cert = integrality_witness(1).unwrap();
        let e2 = &cert.entries[2];
        assert_eq!(e2.quotient, PbwElement::term(Monomial::new(0, -1, 1), RatFunc::from(-bracket(2))));
    }
}
