mod common;

use common::{element, monomial, rng, torus};
use proptest::prelude::*;
use qsl2_core::coeff::{qbinom, RatFunc};
use qsl2_core::completion::{ideal_member, Ideal, Membership};
use qsl2_core::pbw::*;
use qsl2_core::torus::{brace_h, falling_h};
use rand::Rng;

const LETTERS: [Letter; 6] = [Letter::K, Letter::KInv, Letter::E, Letter::F(1), Letter::F(2), Letter::F(3)];

fn letter_value(l: Letter) -> PbwElement {
    match l {
        Letter::K => PbwElement::k_pow(1),
        Letter::KInv => PbwElement::k_pow(-1),
        Letter::E => PbwElement::e_pow(1),
        Letter::F(n) => PbwElement::f_div(n),
    }
}

fn product(word: &[Letter]) -> PbwElement {
    word.iter().fold(PbwElement::one(), |acc, l| &acc * &letter_value(*l))
}

#[test]
fn rewriting_matches_multiplication_exhaustively() {
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &words {
            for l in LETTERS {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        for w in &next {
            assert_eq!(normalize_word(w), product(w), "word {w:?}");
        }
        words = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn rewriting_matches_multiplication_length5(idx in prop::collection::vec(0usize..6, 5)) {
        let w: Vec<Letter> = idx.iter().map(|&i| LETTERS[i]).collect();
        prop_assert_eq!(normalize_word(&w), product(&w));
    }
}

#[test]
fn straightening_closed_form() {
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let mut w = vec![Letter::E; m as usize];
            if n > 0 {
                w.push(Letter::F(n));
            }
            let mut want = PbwElement::zero();
            for p in 0..=m.min(n) {
                let t = falling_h(-(m as i64) - n as i64 + 2 * p as i64, p).scale(&qbinom(m as i64, p).into());
                want += &PbwElement::sandwich(n - p, &t, m - p);
            }
            assert_eq!(normalize_word(&w), want, "m = {m}, n = {n}");
        }
    }
}

#[test]
fn associativity() {
    let mut r = rng(21);
    for _ in 0..30 {
        let x = element(&mut r, 3, 2, 2, 2);
        let y = element(&mut r, 3, 2, 2, 2);
        let z = element(&mut r, 3, 2, 2, 2);
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }
}

#[test]
fn torus_commutes_past_homogeneous() {
    let mut r = rng(4);
    for _ in 0..40 {
        let t = torus(&mut r, 3, 4);
        let m = monomial(&mut r, 3, 2, 3);
        let x = PbwElement::monomial(m);
        let lhs = &PbwElement::from_torus(&t) * &x;
        let rhs = &x * &PbwElement::from_torus(&t.gamma(2 * m.z_degree()));
        assert_eq!(lhs, rhs);
    }
}

fn single_grade(x: &PbwElement, g: Grading) -> i64 {
    let parts = grade_decompose(x, g);
    assert_eq!(parts.len(), 1, "{x} is not homogeneous for {g:?}");
    *parts.keys().next().unwrap()
}

#[test]
fn gradings_are_multiplicative() {
    let mut r = rng(9);
    for _ in 0..60 {
        let mx = monomial(&mut r, 3, 2, 3);
        let my = monomial(&mut r, 3, 2, 3);
        let cx = RatFunc::v_pow(r.gen_range(-3..=3));
        let cy = RatFunc::v_pow(r.gen_range(-3..=3));
        let x = PbwElement::term(mx, cx);
        let y = PbwElement::term(my, cy);
        let xy = &x * &y;
        if xy.is_zero() {
            continue;
        }
        assert_eq!(single_grade(&xy, Grading::Z), single_grade(&x, Grading::Z) + single_grade(&y, Grading::Z));
        for g in [Grading::K2, Grading::V2] {
            let want = (single_grade(&x, g) + single_grade(&y, g)).rem_euclid(2);
            assert_eq!(single_grade(&xy, g), want, "{g:?}: ({x}) * ({y})");
        }
    }
}

#[test]
fn representations_respect_products() {
    let mut r = rng(13);
    for _ in 0..20 {
        let x = element(&mut r, 3, 3, 2, 3);
        let y = element(&mut r, 3, 3, 2, 3);
        for neg in [false, true] {
            for dim in 1..=5 {
                let lhs = irrep_action(neg, dim, &(&x * &y)).unwrap();
                let rhs = &irrep_action(neg, dim, &x).unwrap() * &irrep_action(neg, dim, &y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
    assert!(irrep_action(false, 0, &PbwElement::one()).is_err());
}

#[test]
fn augmentation_generators() {
    let gens = [
        PbwElement::scalar(qsl2_core::coeff::brace(1).into()),
        PbwElement::from_torus(&brace_h(1, 0)),
        PbwElement::e_pow(1),
    ];
    for g in &gens {
        assert_eq!(ideal_member(g, Ideal::U1Pow(1)).unwrap(), Membership::In);
    }
}

#[test]
fn basic_relations() {
    let k = PbwElement::k_pow(1);
    let e = PbwElement::e_pow(1);
    let f = PbwElement::f_div(1);
    assert_eq!(&k * &e, PbwElement::monomial(Monomial::new(0, 1, 1)));
    assert_eq!(&k * &e, (&e * &k).scale(&RatFunc::v_pow(2)));
    assert_eq!((&e * &f).to_string(), "F(1) e + K - K^-1");
    assert_eq!(&f * &f, PbwElement::f_div(2).scale(&qsl2_core::coeff::bracket(2).into()));
    assert_eq!(k.inverse().unwrap(), PbwElement::k_pow(-1));
}
