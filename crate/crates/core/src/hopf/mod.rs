//! Hopf structure: coproduct, counit, antipode and the adjoint action.
//!
//! On generators: `Delta(K) = K (x) K`, `Delta(e) = e (x) 1 + K (x) e`,
//! `Delta(F) = F (x) K^-1 + 1 (x) F`, `S(e) = -K^-1 e`, `S(F) = -F K`.

pub mod tensor;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::coeff::{qbinom, LaurentInt, RatFunc};
use crate::error::{domain, AlgebraError, Result};
use crate::pbw::{grade_decompose, Grading, Monomial, PbwElement};
use crate::torus::beta_closed;

pub use tensor::TensorElement;

type CoproductCache = OnceLock<Mutex<HashMap<Monomial, Arc<Vec<(Monomial, Monomial, LaurentInt)>>>>>;
static COPRODUCT: CoproductCache = OnceLock::new();
static ANTIPODE: OnceLock<Mutex<HashMap<Monomial, PbwElement>>> = OnceLock::new();

/// `Delta(F^(a) K^b e^m) = sum_{i,j} v^{i(a-i) - j(m-j)} qbinom(m, j)
///  F^(a-i) K^{b+j} e^{m-j} (x) F^(i) K^{b-a+i} e^j`.
pub fn coproduct_monomial(x: Monomial) -> Arc<Vec<(Monomial, Monomial, LaurentInt)>> {
    let map = COPRODUCT.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&x) {
        return v.clone();
    }
    let (a, b, m) = (x.f, x.k, x.e);
    let mut out = Vec::new();
    for i in 0..=a {
        for j in 0..=m {
            let e = (i * (a - i)) as i64 - (j * (m - j)) as i64;
            let c = qbinom(m as i64, j).shift(e);
            let left = Monomial::new(a - i, b + j as i64, m - j);
            let right = Monomial::new(i, b - a as i64 + i as i64, j);
            out.push((left, right, c));
        }
    }
    let v = Arc::new(out);
    map.lock().unwrap().insert(x, v.clone());
    v
}

pub fn coproduct(x: &PbwElement) -> TensorElement {
    let mut t = TensorElement::zero(2);
    for (mon, c) in x.terms() {
        for (l, r, w) in coproduct_monomial(*mon).iter() {
            t.add_term(vec![*l, *r], &c.mul_laurent(w));
        }
    }
    t
}

/// Counit: keeps the coefficients of the pure `K^b` terms.
pub fn counit(x: &PbwElement) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (m, c) in x.terms() {
        if m.f == 0 && m.e == 0 {
            acc += c;
        }
    }
    acc
}

/// `S(F^(a) K^b e^m) = S(e^m) S(K^b) S(F^(a))` with
/// `S(e^m) = (-1)^m v^{m(m-1)} K^-m e^m` and `S(F^(a)) = (-1)^a v^{-a(a-1)} F^(a) K^a`.
pub fn antipode_monomial(x: Monomial) -> PbwElement {
    let map = ANTIPODE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&x) {
        return v.clone();
    }
    let (a, b, m) = (x.f as i64, x.k, x.e as i64);
    let sign = if (a + m) % 2 == 0 { 1 } else { -1 };
    let c = RatFunc::from(LaurentInt::constant(sign).shift(m * (m - 1) - a * (a - 1)));
    let se = PbwElement::monomial(Monomial::new(0, -m, x.e));
    let sk = PbwElement::k_pow(-b);
    let sf = PbwElement::monomial(Monomial::new(x.f, a, 0));
    let v = (&(&se * &sk) * &sf).scale(&c);
    map.lock().unwrap().insert(x, v.clone());
    v
}

pub fn antipode(x: &PbwElement) -> PbwElement {
    let mut acc = PbwElement::zero();
    for (m, c) in x.terms() {
        acc += &antipode_monomial(*m).scale(c);
    }
    acc
}

/// `x |> y = sum x_(1) y S(x_(2))`.
pub fn adjoint(x: &PbwElement, y: &PbwElement) -> PbwElement {
    // group by the left tensor factor so that y is multiplied once per group
    let mut groups: BTreeMap<Monomial, PbwElement> = BTreeMap::new();
    for (mon, c) in x.terms() {
        for (l, r, w) in coproduct_monomial(*mon).iter() {
            let s = antipode_monomial(*r).scale(&c.mul_laurent(w));
            *groups.entry(*l).or_default() += &s;
        }
    }
    let mut acc = PbwElement::zero();
    for (l, s) in groups {
        if s.is_zero() {
            continue;
        }
        acc += &(&(&PbwElement::monomial(l) * y) * &s);
    }
    acc
}

/// `e^m |> x = sum_i (-1)^i v^{i(m-1+2|x|)} qbinom(m, i) e^{m-i} x e^i`,
/// applied to each Z-homogeneous part of `x`.
pub fn adjoint_e_pow(m: u32, x: &PbwElement) -> PbwElement {
    let mut acc = PbwElement::zero();
    for (d, part) in grade_decompose(x, Grading::Z) {
        for i in 0..=m {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let c = qbinom(m as i64, i).scale(&sign.into()).shift(i as i64 * (m as i64 - 1 + 2 * d));
            let t = &(&PbwElement::e_pow(m - i) * &part) * &PbwElement::e_pow(i);
            acc += &t.scale(&c.into());
        }
    }
    acc
}

/// `F^(m) |> x = sum_i (-1)^i v^{-i(m-1)} F^(m-i) x F^(i) K^m`.
pub fn adjoint_f_div(m: u32, x: &PbwElement) -> PbwElement {
    let mut acc = PbwElement::zero();
    for i in 0..=m {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = RatFunc::from(LaurentInt::constant(sign).shift(-(i as i64) * (m as i64 - 1)));
        let right = PbwElement::monomial(Monomial::new(i, m as i64, 0));
        let t = &(&PbwElement::f_div(m - i) * x) * &right;
        acc += &t.scale(&c);
    }
    acc
}

/// Closed form of `e^j |> F^(n)`:
/// `sum_k v^{-(j-k)(-j+1+2n)/2} qbinom(j, k) beta_{n,j,k} F^(n-k) e^{j-k}`.
pub fn adjoint_e_on_f_closed(j: u32, n: u32) -> Result<PbwElement> {
    let mut acc = PbwElement::zero();
    for k in 0..=j.min(n) {
        let beta = beta_closed(n as i64, j as i64, k as i64)?;
        let half = -((j - k) as i64) * (-(j as i64) + 1 + 2 * n as i64);
        let t = beta
            .times_half_power(half)?
            .into_torus()
            .map_err(|_| AlgebraError::Internal("adjoint closed form left a half-integer power".into()))?;
        let c = qbinom(j as i64, k);
        let term = &PbwElement::from_torus(&t) * &PbwElement::monomial(Monomial::new(n - k, 0, j - k));
        acc += &term.scale(&c.into());
    }
    Ok(acc)
}

/// `sum_{n<N} (-1)^n v^{-n(n-1)/2} F^(n) (x) e^n`.
pub fn theta_trunc(n: i64) -> Result<TensorElement> {
    if n < 0 {
        return domain("truncation order must be non-negative");
    }
    let mut t = TensorElement::zero(2);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = LaurentInt::constant(sign).shift(-k * (k - 1) / 2);
        t.add_term(vec![Monomial::new(k as u32, 0, 0), Monomial::new(0, 0, k as u32)], &c.into());
    }
    Ok(t)
}

/// `(Delta (x) id)` or `(id (x) Delta)` on an order-2 tensor.
pub fn coproduct_on_slot(t: &TensorElement, slot: usize) -> Result<TensorElement> {
    t.map_slot(slot, t.order() + 1, |m| {
        Ok(coproduct_monomial(*m).iter().map(|(l, r, w)| (vec![*l, *r], RatFunc::from(w))).collect())
    })
}

/// `(eps (x) id)` or `(id (x) eps)` on an order-2 tensor, returning a PBW element.
pub fn counit_on_slot(t: &TensorElement, slot: usize) -> Result<PbwElement> {
    if t.order() != 2 {
        return domain("counit_on_slot expects an order-2 tensor");
    }
    let mut acc = PbwElement::zero();
    for (s, c) in t.terms() {
        let (gone, kept) = if slot == 0 { (s[0], s[1]) } else { (s[1], s[0]) };
        if gone.f == 0 && gone.e == 0 {
            acc.add_term(kept, c);
        }
    }
    Ok(acc)
}

/// `mu (S (x) id)` or `mu (id (x) S)` on an order-2 tensor.
pub fn antipode_contract(t: &TensorElement, slot: usize) -> Result<PbwElement> {
    if t.order() != 2 {
        return domain("antipode_contract expects an order-2 tensor");
    }
    let mut acc = PbwElement::zero();
    for (s, c) in t.terms() {
        let (x, y) = if slot == 0 {
            (antipode_monomial(s[0]), PbwElement::monomial(s[1]))
        } else {
            (PbwElement::monomial(s[0]), antipode_monomial(s[1]))
        };
        acc += &(&x * &y).scale(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::bracket;

    #[test]
    fn generator_coproducts() {
        let de = coproduct(&PbwElement::e_pow(1));
        let want = TensorElement::tensor2(&PbwElement::e_pow(1), &PbwElement::one())
            .add(&TensorElement::tensor2(&PbwElement::k_pow(1), &PbwElement::e_pow(1)))
            .unwrap();
        assert_eq!(de, want);
        let de2 = coproduct(&PbwElement::e_pow(2));
        assert_eq!(de.mul(&de).unwrap(), de2);
        let mid = TensorElement::pure(
            vec![Monomial::new(0, 1, 1), Monomial::new(0, 0, 1)],
            RatFunc::from(bracket(2).shift(-1)),
        );
        assert_eq!(de2.terms().get(&vec![Monomial::new(0, 1, 1), Monomial::new(0, 0, 1)]), mid.terms().values().next());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&PbwElement::e_pow(1)), -PbwElement::monomial(Monomial::new(0, -1, 1)));
        assert_eq!(antipode(&PbwElement::e_pow(2)), PbwElement::term(Monomial::new(0, -2, 2), RatFunc::v_pow(2)));
        assert_eq!(antipode(&PbwElement::f_div(1)), -PbwElement::monomial(Monomial::new(1, 1, 0)));
    }

    #[test]
    fn adjoint_examples() {
        let x = adjoint(&PbwElement::e_pow(1), &PbwElement::f_div(1));
        let want = &PbwElement::term(Monomial::new(1, 0, 1), RatFunc::from(LaurentInt::from_terms([(0, 1), (-2, -1)])))
            + &PbwElement::from_torus(&crate::torus::brace_h(1, 0));
        assert_eq!(x, want);
        let y = PbwElement::monomial(Monomial::new(0, -1, 1));
        assert_eq!(adjoint_f_div(2, &y), adjoint(&PbwElement::f_div(2), &y));
    }

    #[test]
    fn theta_terms() {
        assert_eq!(theta_trunc(1).unwrap(), TensorElement::one(2));
        let t3 = theta_trunc(3).unwrap();
        assert_eq!(t3.terms().len(), 3);
        assert_eq!(t3.terms()[&vec![Monomial::new(2, 0, 0), Monomial::new(0, 0, 2)]], RatFunc::v_pow(-1));
    }
}
