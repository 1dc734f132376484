mod common;

use common::{laurent, nonzero_laurent, rng, sign};
use proptest::prelude::*;
use qsl2_core::coeff::*;

fn lp() -> impl Strategy<Value = LaurentInt> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..5).prop_map(LaurentInt::from_terms)
}

proptest! {
    #[test]
    fn ring_axioms(a in lp(), b in lp(), c in lp()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn exact_division_recovers_factor(a in lp(), b in lp()) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn fractions_normalize(a in lp(), b in lp(), c in lp()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = RatFunc::new(a.clone(), b.clone()).unwrap();
        let y = RatFunc::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&x, &y);
        if !a.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn window_remainder(a in lp(), n in 1u32..4) {
        let p = (1..=n as i64).fold(LaurentInt::one(), |acc, i| &acc * &LaurentInt::from_terms([(2 * i, 1), (0, -1)]));
        let r = a.rem_window(&p).unwrap();
        if let (Some(lo), Some(hi)) = (r.min_exp(), r.max_exp()) {
            prop_assert!(lo >= 0 && hi < p.max_exp().unwrap());
        }
        prop_assert!((&a - &r).div_exact(&p).unwrap().is_some());
    }
}

#[test]
fn factorial_profiles() {
    for n in 0..=30u32 {
        let mut acc = LaurentInt::one();
        for d in 1..=n as u64 {
            acc = &acc * &balanced_cyclotomic(d).unwrap().pow(n / d as u32);
        }
        assert_eq!(acc, brace_factorial(n), "n = {n}");
    }
}

#[test]
fn binomial_profiles() {
    for m in 0..=12u64 {
        for n in 0..=m {
            let p = cyclo_factorize(&[(CycloFactor::Binomial { top: m, bottom: n }, 1)]).unwrap();
            assert!(p.exponents().values().all(|&e| e >= 0));
            let b = qbinom(m as i64, n as u32);
            assert_eq!(p.reconstruct().unwrap(), RatFunc::from(b.clone()));
            // oracle: [m]! / ([n]! [m-n]!) by exact division
            let num = bracket_factorial(m as u32);
            let den = &bracket_factorial(n as u32) * &bracket_factorial((m - n) as u32);
            assert_eq!(num.div_exact(&den).unwrap(), Some(b));
        }
    }
}

#[test]
fn theta_profiles() {
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for x in 0..=4u32 {
                for y in 0..=4u32 {
                    let t = theta(a, b, x, y).unwrap();
                    let top = (2 * a + b + x + y).max(1) as u64;
                    let mut acc = LaurentInt::one();
                    for d in 1..=top {
                        let e = theta_d(d, a as i64, b as i64, x as i64, y as i64);
                        assert!(e >= 0, "theta_{d}({a},{b},{x},{y}) = {e}");
                        acc = &acc * &balanced_cyclotomic(d).unwrap().pow(e as u32);
                    }
                    assert_eq!(acc, t);
                }
            }
        }
    }
}

#[test]
fn falling_as_binomial_sum() {
    for a in -4i64..=4 {
        for r in 0..=6u32 {
            let mut acc = LaurentInt::zero();
            for j in 0..=r {
                let e2 = (r as i64 - 2 * j as i64) * (-(r as i64) + 1 + 2 * a);
                assert_eq!(e2 % 2, 0);
                acc += &qbinom(r as i64, j).scale(&sign(j).into()).shift(e2 / 2);
            }
            assert_eq!(acc, falling(a, r), "a = {a}, r = {r}");
        }
    }
}

#[test]
fn alternating_binomial_sums() {
    for m in 0..=8i64 {
        for j in 0..=m {
            let mut acc = LaurentInt::zero();
            for i in j..=m {
                let t = &qbinom(i, j as u32) * &qbinom(m + 1, (i + 1) as u32);
                acc += &t.scale(&sign(i as u32).into()).shift(i * (j - m));
            }
            assert_eq!(acc, LaurentInt::constant(sign(j as u32)).shift(m - j));
        }
    }
    for l in 1..=8i64 {
        for k in 1..=l {
            let mut acc = LaurentInt::zero();
            for i in k..=l {
                let t = &qbinom(i - 1, (k - 1) as u32) * &qbinom(l, i as u32);
                acc += &t.scale(&sign(i as u32).into()).shift(i * (k - l));
            }
            assert_eq!(acc, LaurentInt::constant(sign(k as u32)));
        }
    }
}

#[test]
fn pochhammer_relation() {
    for n in 0..=12u32 {
        let want = brace_factorial(n).scale(&sign(n).into()).shift((n * (n + 1) / 2) as i64);
        assert_eq!(q_pochhammer(n), want);
    }
}

#[test]
fn negative_binomials() {
    // qbinom(-a, n) = (-1)^n qbinom(a + n - 1, n)
    for a in 1..=5i64 {
        for n in 0..=5u32 {
            let want = qbinom(a + n as i64 - 1, n).scale(&sign(n).into());
            assert_eq!(qbinom(-a, n), want);
        }
    }
}

#[test]
fn random_division_by_cyclotomics() {
    let mut r = rng(7);
    for _ in 0..50 {
        let x = laurent(&mut r, 4, 5);
        let d = nonzero_laurent(&mut r, 2, 2);
        let p = &x * &d;
        assert_eq!(div_exact(&p, &d).unwrap(), Some(x));
    }
    assert_eq!(div_exact(&LaurentInt::one(), &brace(1)).unwrap(), None);
}
