#![allow(dead_code)]

use qsl2_core::coeff::{LaurentInt, RatFunc};
use qsl2_core::pbw::{Monomial, PbwElement};
use qsl2_core::torus::TorusElement;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Laurent polynomial with up to `len` terms.
pub fn laurent(r: &mut ChaCha8Rng, len: usize, span: i64) -> LaurentInt {
    let n = r.gen_range(1..=len);
    LaurentInt::from_terms((0..n).map(|_| (r.gen_range(-span..=span), r.gen_range(-3i64..=3))))
}

pub fn nonzero_laurent(r: &mut ChaCha8Rng, len: usize, span: i64) -> LaurentInt {
    loop {
        let x = laurent(r, len, span);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn torus(r: &mut ChaCha8Rng, terms: usize, kspan: i64) -> TorusElement {
    let n = r.gen_range(1..=terms);
    TorusElement::from_laurent_pairs((0..n).map(|_| (r.gen_range(-kspan..=kspan), laurent(r, 2, 3))))
}

pub fn monomial(r: &mut ChaCha8Rng, maxf: u32, maxk: i64, maxe: u32) -> Monomial {
    Monomial::new(r.gen_range(0..=maxf), r.gen_range(-maxk..=maxk), r.gen_range(0..=maxe))
}

/// Random integral element with up to `terms` monomials.
pub fn element(r: &mut ChaCha8Rng, terms: usize, maxf: u32, maxk: i64, maxe: u32) -> PbwElement {
    let n = r.gen_range(1..=terms);
    PbwElement::from_terms((0..n).map(|_| (monomial(r, maxf, maxk, maxe), RatFunc::from(laurent(r, 2, 2)))))
}

pub fn sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
