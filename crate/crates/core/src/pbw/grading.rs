//! The three gradings on the PBW basis.
//!
//! * `Z`: `F^(a) K^b e^m` has degree `m - a`.
//! * `K2`: degree `(a + b) mod 2`; the even part is generated by
//!   `K^{+-2}`, `e` and `F K`.
//! * `V2`: degree given by the parity of the v-exponent of the coefficient
//!   shifted by `a(a-1)/2`, so that `v^{-a(a-1)/2} F^(a)` is even.

use std::collections::BTreeMap;

use crate::coeff::RatFunc;
use crate::pbw::{Monomial, PbwElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Z,
    K2,
    V2,
}

/// Splits `x` into homogeneous parts. Coefficients of mixed v-parity are
/// split rather than rejected.
pub fn grade_decompose(x: &PbwElement, g: Grading) -> BTreeMap<i64, PbwElement> {
    let mut out: BTreeMap<i64, PbwElement> = BTreeMap::new();
    let mut put = |d: i64, m: Monomial, c: &RatFunc| {
        if !c.is_zero() {
            out.entry(d).or_default().add_term(m, c);
        }
    };
    for (m, c) in x.terms() {
        match g {
            Grading::Z => put(m.z_degree(), *m, c),
            Grading::K2 => put((m.f as i64 + m.k).rem_euclid(2), *m, c),
            Grading::V2 => {
                let (even, odd) = c.parity_split();
                let shift = ((m.f as i64) * (m.f as i64 - 1) / 2).rem_euclid(2);
                put(shift, *m, &even);
                put(1 - shift, *m, &odd);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = PbwElement::monomial(Monomial::new(2, 1, 3));
        assert_eq!(grade_decompose(&x, Grading::Z).keys().copied().collect::<Vec<_>>(), vec![1]);
        let ke = PbwElement::monomial(Monomial::new(0, 1, 1));
        assert!(grade_decompose(&ke, Grading::K2).contains_key(&1));
        let fk = PbwElement::monomial(Monomial::new(1, 1, 0));
        assert!(grade_decompose(&fk, Grading::K2).contains_key(&0));
        let f = PbwElement::f_div(1);
        assert!(grade_decompose(&f, Grading::V2).contains_key(&0));
        let f2 = PbwElement::f_div(2);
        assert!(grade_decompose(&f2, Grading::V2).contains_key(&1));
    }
}
