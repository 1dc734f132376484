mod common;

use common::{rng, sign, torus};
use qsl2_core::coeff::{falling, qbinom, RatFunc};
use qsl2_core::completion::torus_in_u0kl;
use qsl2_core::torus::*;
use rand::Rng;

#[test]
fn falling_in_generators() {
    for m in -5i64..=5 {
        for n in 0..=5u32 {
            let mut acc = TorusElement::zero();
            for i in 0..=n {
                let c = &qbinom(m, i) * &falling(n as i64, i);
                let t = falling_h(0, n - i).shift_k(-(i as i64)).scale(&RatFunc::from(c.shift((n - i) as i64 * m)));
                acc = &acc + &t;
            }
            assert_eq!(acc, falling_h(m, n), "m = {m}, n = {n}");
        }
    }
}

#[test]
fn bbb_against_falling() {
    for l in 0..=8u32 {
        let rhs = falling_h(0, l).shift_k(l as i64).scale(&RatFunc::v_pow((l * l.saturating_sub(1) / 2) as i64));
        assert_eq!(bbb(l), rhs);
    }
}

#[test]
fn expansions_invert_assembly() {
    let mut r = rng(11);
    for _ in 0..60 {
        let t = torus(&mut r, 4, 5);
        let h = t.expand_hpow();
        assert_eq!(TorusElement::assemble_hpow(&h), t);
        let p = t.shift_k(-t.min_k().unwrap_or(0));
        let b = p.expand_bbb().unwrap();
        assert_eq!(TorusElement::assemble_bbb(&b), p);
        let u = torus(&mut r, 3, 4);
        let sum = (&t + &u).expand_hpow();
        let mut parts = t.expand_hpow();
        let other = u.expand_hpow();
        parts.resize(parts.len().max(other.len()), (RatFunc::zero(), RatFunc::zero()));
        for (i, (a, bb)) in other.into_iter().enumerate() {
            parts[i].0 += &a;
            parts[i].1 += &bb;
        }
        assert_eq!(TorusElement::assemble_hpow(&parts), TorusElement::assemble_hpow(&sum));
    }
    assert!(TorusElement::k_pow(-1).expand_bbb().is_err());
}

#[test]
fn shifted_falling_sum() {
    for n in -4i64..=4 {
        for l in 0..=4u32 {
            let mut acc = TorusElement::zero();
            for j in 0..=l {
                let c = qbinom(l as i64, j).scale(&sign(j).into()).shift(j as i64 * (l as i64 - 1 - n));
                let t = &falling_h(-n, l - j) * &falling_h(j as i64 - l as i64, j);
                acc = &acc + &t.scale(&c.into());
            }
            let c = falling(n, l).scale(&sign(l).into()).shift((l * l) as i64 - l as i64);
            assert_eq!(acc, TorusElement::term(c.into(), -(l as i64)), "n = {n}, l = {l}");
        }
    }
}

#[test]
fn shifts_and_evaluations() {
    let mut r = rng(5);
    for _ in 0..40 {
        let t = torus(&mut r, 4, 4);
        let (j, k) = (r.gen_range(-4i64..=4), r.gen_range(-4i64..=4));
        assert_eq!(t.gamma(j).gamma(k), t.gamma(j + k));
        assert_eq!(t.gamma(k).eval_k(j), t.eval_k(j + k));
        assert!((&brace_h(1, -j) * &t).eval_k(j).is_zero());
        assert_eq!(t.w().w(), t);
    }
}

#[test]
fn double_filtration_containment() {
    for n in 1..=4u32 {
        for m in -6i64..=6 {
            assert!(torus_in_u0kl(&falling_h(m, 2 * n - 1), n, n).unwrap(), "n = {n}, m = {m}");
        }
        // the smaller power is generally not contained
        if n >= 2 {
            assert!(!torus_in_u0kl(&falling_h(1, n), n, n).unwrap());
        }
    }
}

#[test]
fn kappa_symmetry_and_forms() {
    let affines: Vec<Affine> =
        [(0, 0), (1, 0), (1, -2), (-1, 3), (2, 1), (0, -3)].iter().map(|&(h, c)| Affine { h, c }).collect();
    for a in &affines {
        for b in &affines {
            for r in 0..=3 {
                for s in 0..=3 {
                    for c in -1..=1 {
                        let x = kappa(*a, r, *b, s, c).unwrap();
                        assert_eq!(x, kappa(*b, s, *a, r, c).unwrap());
                        assert_eq!(x, kappa_double_sum(*a, r, *b, s, c).unwrap());
                    }
                }
            }
        }
    }
    // r = 0 reduces to the falling product in b
    for s in 0..=4 {
        let x = kappa(Affine::int(2), 0, Affine::h_plus(1), s, 1).unwrap().into_torus().unwrap();
        assert_eq!(x, falling_h(1, s as u32));
    }
}

#[test]
fn beta_is_kappa() {
    for n in 0..=4i64 {
        for j in 0..=4i64 {
            for k in 0..=j {
                let want = kappa(Affine::int(n - k), j - k, Affine::h_plus(n - j), k, 1).unwrap();
                assert_eq!(beta_closed(n, j, k).unwrap(), want, "n={n} j={j} k={k}");
            }
        }
    }
}

#[test]
fn window_reduction_is_canonical() {
    let mut r = rng(3);
    for _ in 0..40 {
        let t = torus(&mut r, 4, 6);
        let l = r.gen_range(1..=3u32);
        let p = bbb(l);
        let rem = t.rem_window(&p).unwrap();
        let diff = &t - &rem;
        assert!(diff.div_exact(&p).unwrap().is_some());
        if let Some(hi) = rem.max_k() {
            assert!(rem.min_k().unwrap() >= 0 && hi < 2 * l as i64);
        }
    }
}
