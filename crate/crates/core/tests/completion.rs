mod common;

use common::{element, laurent, rng, torus};
use qsl2_core::center::{sigma, CentralPoly};
use qsl2_core::coeff::{brace, LaurentInt, RatFunc};
use qsl2_core::completion::*;
use qsl2_core::hopf::{antipode, coproduct, counit};
use qsl2_core::pbw::{Monomial, PbwElement};
use qsl2_core::torus::brace_h;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn generator(r: &mut ChaCha8Rng) -> PbwElement {
    match r.gen_range(0..3) {
        0 => PbwElement::scalar(brace(1).into()),
        1 => PbwElement::from_torus(&brace_h(1, 0)),
        _ => PbwElement::e_pow(1),
    }
}

/// `x_0 g_1 x_1 ... g_n x_n` with generators `g_i` of `U_1`.
fn generator_product(r: &mut ChaCha8Rng, n: u32) -> PbwElement {
    let mut x = element(r, 2, 2, 1, 1);
    for _ in 0..n {
        x = &(&x * &generator(r)) * &element(r, 2, 2, 1, 1);
    }
    x
}

#[test]
fn u1pow_criterion_oracle() {
    let mut r = rng(43);
    for n in 0..=3u32 {
        for _ in 0..50 {
            let mut x = PbwElement::zero();
            for _ in 0..r.gen_range(1..=2) {
                x += &generator_product(&mut r, n).scale(&laurent(&mut r, 2, 2).into());
            }
            assert_eq!(ideal_member(&x, Ideal::U1Pow(n)).unwrap(), Membership::In, "n = {n}: {x}");
        }
        for j in 0..n {
            for m in 0..n - j {
                let a = r.gen_range(0..=3);
                let delta = r.gen_range(0..=1);
                let t = brace_h(1, 0).pow(j).shift_k(delta);
                let c = LaurentInt::signed_v_pow(r.gen_bool(0.5), r.gen_range(-3..=3));
                let x = PbwElement::sandwich(a, &t, m).scale(&c.into());
                assert_eq!(ideal_member(&x, Ideal::U1Pow(n)).unwrap(), Membership::Out);
            }
        }
    }
}

#[test]
fn sandwich_consistency() {
    let mut r = rng(47);
    let mut seen = [0usize; 3];
    for _ in 0..60 {
        let mut x = element(&mut r, 3, 2, 3, 4);
        if r.gen_bool(0.5) {
            x = &x * &PbwElement::e_pow(r.gen_range(1..=3));
        }
        if r.gen_bool(0.3) {
            x = x.scale(&qsl2_core::coeff::brace_factorial(2).into());
        }
        for n in 0..=4u32 {
            let m = ideal_member(&x, Ideal::Un(n)).unwrap();
            let zero = TruncatedElement::truncate(&x, Filtration::Un, n).unwrap().is_zero();
            assert_eq!(m == Membership::In, zero);
            seen[m as usize] += 1;
            if m == Membership::In {
                for k in 0..=n {
                    assert_ne!(ideal_member(&x, Ideal::Un(k)).unwrap(), Membership::Out);
                    assert_ne!(ideal_member(&x, Ideal::UPrime(k)).unwrap(), Membership::Out);
                }
            }
        }
    }
    assert!(seen.iter().all(|&c| c > 0), "all three outcomes should occur: {seen:?}");
}

#[test]
fn truncation_tower() {
    let mut r = rng(53);
    for _ in 0..30 {
        let x = element(&mut r, 3, 2, 3, 3);
        let y = element(&mut r, 3, 2, 3, 3);
        for filt in [Filtration::Un, Filtration::U1pow] {
            for n in 0..=3u32 {
                let hi = TruncatedElement::truncate(&x, filt, n + 1).unwrap();
                let lo = TruncatedElement::truncate(&x, filt, n).unwrap();
                assert_eq!(hi.project(n).unwrap(), lo);
                let hy = TruncatedElement::truncate(&y, filt, n + 1).unwrap();
                let ly = TruncatedElement::truncate(&y, filt, n).unwrap();
                assert_eq!(hi.add(&hy).unwrap().project(n).unwrap(), lo.add(&ly).unwrap());
                if filt == Filtration::U1pow {
                    assert_eq!(hi.mul(&hy).unwrap().project(n).unwrap(), lo.mul(&ly).unwrap());
                }
            }
        }
    }
}

#[test]
fn lifted_un_products() {
    let mut r = rng(59);
    for _ in 0..20 {
        let x = element(&mut r, 3, 2, 3, 3);
        let y = element(&mut r, 3, 2, 3, 3);
        for n in 1..=2u32 {
            let hi = TruncatedElement::lift_precision(Filtration::Un, n);
            let tx = TruncatedElement::truncate(&x, Filtration::Un, hi).unwrap();
            let ty = TruncatedElement::truncate(&y, Filtration::Un, hi).unwrap();
            let via = tx.mul(&ty).unwrap().project(n).unwrap();
            assert_eq!(via, TruncatedElement::truncate(&(&x * &y), Filtration::Un, n).unwrap());
        }
    }
}

#[test]
fn augmentation_ideal_is_hopf() {
    let gens = [PbwElement::scalar(brace(1).into()), PbwElement::from_torus(&brace_h(1, 0)), PbwElement::e_pow(1)];
    for g in &gens {
        assert!(tensor_in_u1_sum(&coproduct(g)).unwrap());
        let eps = counit(g).to_laurent().unwrap();
        assert!(scalar_reduce(CoeffRing::Hat, &eps, 1).is_zero());
        assert_eq!(ideal_member(&antipode(g), Ideal::U1Pow(1)).unwrap(), Membership::In);
    }
}

#[test]
fn torus_round_trip() {
    let mut r = rng(61);
    for _ in 0..40 {
        let t = torus(&mut r, 4, 6);
        let x = PbwElement::from_torus(&t);
        for n in 0..=4u32 {
            let back = TruncatedElement::truncate(&x, Filtration::Un, n).unwrap().assemble();
            let diff = (&x - &back).as_torus().unwrap_or_default();
            assert!(torus_in_u0kl(&diff, n, n).unwrap());
        }
    }
}

#[test]
fn truncated_text_form() {
    let x = &PbwElement::monomial(Monomial::new(2, 1, 1)) + &PbwElement::monomial(Monomial::new(0, 2, 0));
    let t = TruncatedElement::truncate(&x, Filtration::Un, 2).unwrap();
    assert_eq!(t.to_string(), "F(2) K e + BBB(1) + 1");
    let u = TruncatedElement::truncate(&PbwElement::k_pow(2), Filtration::U1pow, 2).unwrap();
    assert_eq!(u.to_string(), "K brH(0,1) + 1");
    assert!(TruncatedElement::truncate(&PbwElement::big_e(), Filtration::Un, 2).is_err());
}

fn random_series_poly(r: &mut ChaCha8Rng) -> CentralPoly {
    let n = r.gen_range(1..=3);
    CentralPoly::from_coeffs(
        (0..n).map(|_| (RatFunc::from(laurent(r, 2, 2)), RatFunc::from(laurent(r, 2, 2)))).collect(),
    )
}

#[test]
fn series_agree_with_exact_center() {
    let mut r = rng(67);
    for _ in 0..20 {
        let p = random_series_poly(&mut r);
        let q = random_series_poly(&mut r);
        let exact = p.mul(&q);
        for ring in [CoeffRing::Exact, CoeffRing::Hat, CoeffRing::Dot] {
            for n in 1..=4u32 {
                let sp = CentralSeries::from_poly(ring, &p, n).unwrap();
                let sq = CentralSeries::from_poly(ring, &q, n).unwrap();
                assert_eq!(sp.mul(&sq).unwrap(), CentralSeries::from_poly(ring, &exact, n).unwrap());
                assert_eq!(sp.add(&sq).unwrap(), CentralSeries::from_poly(ring, &p.add(&q), n).unwrap());
            }
        }
    }
    // sigma_n sits at index n
    let s2 = CentralSeries::from_poly(CoeffRing::Hat, &qsl2_core::center::sigma_expand(&sigma(2)).unwrap(), 3).unwrap();
    assert_eq!(s2.coeffs().len(), 3);
}

#[test]
fn s_power_round_trip() {
    let mut r = rng(71);
    for _ in 0..20 {
        let p = random_series_poly(&mut r);
        for ring in [CoeffRing::Exact, CoeffRing::Hat, CoeffRing::Dot] {
            let x = CentralSeries::from_poly(ring, &p, 3).unwrap();
            assert_eq!(CentralSeries::from_s_powers(ring, &x.to_s_powers(), 3), x);
        }
    }
}
