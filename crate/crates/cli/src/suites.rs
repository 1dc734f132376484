//! Invariant checks behind `qsl2 verify` and the acceptance harness.
//!
//! Every check is a pure function of its ranges and a seed and returns an
//! [`Outcome`]: how many instances were examined and the first
//! counterexample, if any. Suites bundle checks with default ranges that
//! `--max` rescales.

use std::time::{Duration, Instant};

use qsl2_core::center::*;
use qsl2_core::coeff::*;
use qsl2_core::completion::*;
use qsl2_core::hopf::*;
use qsl2_core::pbw::*;
use qsl2_core::torus::*;
use qsl2_core::Result as AResult;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub count: usize,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one instance; keeps only the first counterexample.
    pub fn push(&mut self, r: AResult<bool>, ctx: impl FnOnce() -> String) {
        self.count += 1;
        if self.failure.is_some() {
            return;
        }
        match r {
            Ok(true) => {}
            Ok(false) => self.failure = Some(ctx()),
            Err(e) => self.failure = Some(format!("{}: {e}", ctx())),
        }
    }

    pub fn merge(mut self, o: Outcome) -> Outcome {
        self.count += o.count;
        if self.failure.is_none() {
            self.failure = o.failure;
        }
        self
    }

    fn merge_all(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
        parts.into_iter().fold(Outcome::default(), Outcome::merge)
    }
}

pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub mod random {
    use super::*;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn laurent(r: &mut ChaCha8Rng, len: usize, span: i64) -> LaurentInt {
        let n = r.gen_range(1..=len);
        LaurentInt::from_terms((0..n).map(|_| (r.gen_range(-span..=span), r.gen_range(-3i64..=3))))
    }

    pub fn torus(r: &mut ChaCha8Rng, terms: usize, kspan: i64) -> TorusElement {
        let n = r.gen_range(1..=terms);
        TorusElement::from_laurent_pairs((0..n).map(|_| (r.gen_range(-kspan..=kspan), laurent(r, 2, 3))))
    }

    pub fn monomial(r: &mut ChaCha8Rng, maxf: u32, maxk: i64, maxe: u32) -> Monomial {
        Monomial::new(r.gen_range(0..=maxf), r.gen_range(-maxk..=maxk), r.gen_range(0..=maxe))
    }

    /// Integral element with up to `terms` monomials.
    pub fn element(r: &mut ChaCha8Rng, terms: usize, maxf: u32, maxk: i64, maxe: u32) -> PbwElement {
        let n = r.gen_range(1..=terms);
        PbwElement::from_terms((0..n).map(|_| (monomial(r, maxf, maxk, maxe), RatFunc::from(laurent(r, 2, 2)))))
    }

    /// Integral central polynomial with support at most `support`.
    pub fn central_poly(r: &mut ChaCha8Rng, support: usize) -> CentralPoly {
        let n = r.gen_range(1..=support);
        CentralPoly::from_coeffs((0..n).map(|_| (laurent(r, 2, 2).into(), laurent(r, 2, 2).into())).collect())
    }
}

use random::*;

// ---------------------------------------------------------------- qcomb

/// Cyclotomic profiles of `{n}!` and `[n]!` multiply back to the factorials.
pub fn factorial_profiles(max: u32) -> Outcome {
    let mut o = Outcome::default();
    for n in 0..=max {
        let n64 = n as u64;
        let got = cyclo_factorize(&[(CycloFactor::BraceFactorial(n64), 1)]).and_then(|p| p.reconstruct());
        o.push(got.map(|g| g == RatFunc::from(brace_factorial(n))), || format!("{{{n}}}! profile"));
        let got = cyclo_factorize(&[(CycloFactor::BracketFactorial(n64), 1)]).and_then(|p| p.reconstruct());
        o.push(got.map(|g| g == RatFunc::from(bracket_factorial(n))), || format!("[{n}]! profile"));
    }
    o
}

/// `qbinom(m, n) = [m]! / ([n]! [m-n]!)` and the negative-top reflection.
pub fn binomial_oracle(max: u32) -> Outcome {
    let mut o = Outcome::default();
    for m in 0..=max {
        for n in 0..=m {
            let den = &bracket_factorial(n) * &bracket_factorial(m - n);
            let want = RatFunc::new(bracket_factorial(m), den);
            o.push(want.map(|w| w == RatFunc::from(qbinom(m as i64, n))), || format!("qbinom({m},{n})"));
            // bb(-m; n) = (-1)^n bb(m+n-1; n)
            let refl = qbinom(m as i64 + n as i64 - 1, n).scale(&sign(n as i64).into());
            o.push(Ok(qbinom(-(m as i64), n) == refl), || format!("qbinom(-{m},{n})"));
        }
    }
    o
}

/// `theta(a,b,x,y)` is a Laurent polynomial, every `theta_d` is
/// non-negative for `d` up to `max(14, 2a+b+x+y)` and the cyclotomic product
/// reproduces the exact value.
pub fn theta_integrality(max: u32) -> Outcome {
    let top = (5 * max).max(14) as u64;
    let cyclo: Vec<LaurentInt> = (0..=top).map(|d| balanced_cyclotomic(d.max(1)).unwrap()).collect();
    let tuples: Vec<(u32, u32, u32, u32)> = (0..=max)
        .flat_map(|a| (0..=max).flat_map(move |b| (0..=max).flat_map(move |x| (0..=max).map(move |y| (a, b, x, y)))))
        .collect();
    let parts: Vec<Outcome> = tuples
        .par_iter()
        .map(|&(a, b, x, y)| {
            let mut o = Outcome::default();
            let bound = ((2 * a + b + x + y) as u64).max(14);
            let (ai, bi, xi, yi) = (a as i64, b as i64, x as i64, y as i64);
            let mut acc = LaurentInt::one();
            for d in 1..=bound {
                let e = theta_d(d, ai, bi, xi, yi);
                o.push(Ok(e >= 0), || format!("theta_{d}({a},{b},{x},{y}) = {e}"));
                if e > 0 {
                    acc = &acc * &cyclo[d as usize].pow(e as u32);
                }
            }
            let exact = theta(a, b, x, y);
            o.push(exact.map(|t| t == acc), || format!("cyclotomic product for theta({a},{b},{x},{y})"));
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// `sum_{i=j}^m (-1)^i v^{i(j-m)} bb(i;j) bb(m+1;i+1) = (-1)^j v^{m-j}`.
pub fn alternating_sum_upper(max: i64) -> Outcome {
    let mut o = Outcome::default();
    for m in 0..=max {
        for j in 0..=m {
            let mut acc = LaurentInt::zero();
            for i in j..=m {
                let t = &qbinom(i, j as u32) * &qbinom(m + 1, (i + 1) as u32);
                acc += &t.scale(&sign(i).into()).shift(i * (j - m));
            }
            o.push(Ok(acc == LaurentInt::constant(sign(j)).shift(m - j)), || format!("m = {m}, j = {j}"));
        }
    }
    o
}

/// `sum_{i=k}^l (-1)^i v^{i(k-l)} bb(i-1;k-1) bb(l;i) = (-1)^k`.
pub fn alternating_sum_lower(max: i64) -> Outcome {
    let mut o = Outcome::default();
    for l in 1..=max {
        for k in 1..=l {
            let mut acc = LaurentInt::zero();
            for i in k..=l {
                let t = &qbinom(i - 1, (k - 1) as u32) * &qbinom(l, i as u32);
                acc += &t.scale(&sign(i).into()).shift(i * (k - l));
            }
            o.push(Ok(acc == LaurentInt::constant(sign(k))), || format!("l = {l}, k = {k}"));
        }
    }
    o
}

/// `BB(a;r) = sum_j (-1)^j v^{(r-2j)(-r+1+2a)/2} bb(r;j)`.
pub fn falling_binomial_sum(max: i64) -> Outcome {
    let mut o = Outcome::default();
    for a in -max..=max {
        for r in 0..=max {
            let mut acc = LaurentInt::zero();
            for j in 0..=r {
                let e2 = (r - 2 * j) * (-r + 1 + 2 * a);
                acc += &qbinom(r, j as u32).scale(&sign(j).into()).shift(e2 / 2);
            }
            o.push(Ok(acc == falling(a, r as u32)), || format!("a = {a}, r = {r}"));
        }
    }
    o
}

// ---------------------------------------------------------------- torus

/// `BB(H+m;n) = sum_i v^{(n-i)m} K^-i bb(m;i) BB(n;i) BB(H;n-i)`.
pub fn falling_in_generators(nmax: u32, mmax: i64) -> Outcome {
    let mut o = Outcome::default();
    for m in -mmax..=mmax {
        for n in 0..=nmax {
            let mut acc = TorusElement::zero();
            for i in 0..=n {
                let c = (&qbinom(m, i) * &falling(n as i64, i)).shift((n - i) as i64 * m);
                acc = &acc + &falling_h(0, n - i).shift_k(-(i as i64)).scale(&c.into());
            }
            o.push(Ok(acc == falling_h(m, n)), || format!("m = {m}, n = {n}"));
        }
    }
    o
}

/// The unitriangular system in `m = 0..n` recovers every `BB(n;i) BB(H;n-i)`,
/// in particular `{n}!`, from the shifted products `BB(H+m;n)`.
pub fn factorial_from_shifted_products(nmax: u32) -> Outcome {
    let mut o = Outcome::default();
    for n in 1..=nmax {
        let mut recovered: Vec<TorusElement> = Vec::new();
        for m in 0..=n {
            let mut rest = falling_h(m as i64, n);
            for (i, c) in recovered.iter().enumerate() {
                let i = i as u32;
                let w = qbinom(m as i64, i).shift((n - i) as i64 * m as i64);
                rest = &rest - &c.shift_k(-(i as i64)).scale(&w.into());
            }
            let c = rest.shift_k(m as i64).scale(&RatFunc::v_pow(-((n - m) as i64) * m as i64));
            let want = falling_h(0, n - m).scale(&falling(n as i64, m).into());
            o.push(Ok(c == want), || format!("n = {n}, generator {m}"));
            recovered.push(c);
        }
        let last = recovered.last().and_then(TorusElement::as_scalar);
        o.push(Ok(last == Some(brace_factorial(n).into())), || format!("{{{n}}}! at n = {n}"));
    }
    o
}

/// `BBB(H;l) = v^{l(l-1)/2} K^l BB(H;l)`.
pub fn bbb_against_falling(max: u32) -> Outcome {
    let mut o = Outcome::default();
    for l in 0..=max {
        let rhs = falling_h(0, l).shift_k(l as i64).scale(&RatFunc::v_pow((l * l.saturating_sub(1) / 2) as i64));
        o.push(Ok(bbb(l) == rhs), || format!("l = {l}"));
    }
    o
}

/// `sum_j (-1)^j v^{j(l-1-n)} bb(l;j) BB(H-n;l-j) BB(H+j-l;j) = (-1)^l v^{l^2-l} BB(n;l) K^-l`.
pub fn shifted_falling_sum(max: i64) -> Outcome {
    let mut o = Outcome::default();
    for n in -max..=max {
        for l in 0..=max as u32 {
            let mut acc = TorusElement::zero();
            for j in 0..=l {
                let c = qbinom(l as i64, j).scale(&sign(j as i64).into()).shift(j as i64 * (l as i64 - 1 - n));
                let t = &falling_h(-n, l - j) * &falling_h(j as i64 - l as i64, j);
                acc = &acc + &t.scale(&c.into());
            }
            let c = falling(n, l).scale(&sign(l as i64).into()).shift((l * l) as i64 - l as i64);
            o.push(Ok(acc == TorusElement::term(c.into(), -(l as i64))), || format!("n = {n}, l = {l}"));
        }
    }
    o
}

/// `kappa(a,r;b,s;c) = kappa(b,s;a,r;c)`, and the closed form agrees with
/// the defining double sum.
pub fn kappa_symmetry(rs_max: i64, part_max: i64) -> Outcome {
    let affines: Vec<Affine> = (0..=1).flat_map(|h| (-part_max..=part_max).map(move |c| Affine { h, c })).collect();
    let pairs: Vec<(Affine, Affine)> = affines.iter().flat_map(|a| affines.iter().map(move |b| (*a, *b))).collect();
    let parts: Vec<Outcome> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut o = Outcome::default();
            for r in 0..=rs_max {
                for s in 0..=rs_max {
                    for c in -1..=1 {
                        let ctx = || format!("a = {a:?}, r = {r}, b = {b:?}, s = {s}, c = {c}");
                        let res = (|| {
                            let x = kappa(a, r, b, s, c)?;
                            Ok(x == kappa(b, s, a, r, c)? && x == kappa_double_sum(a, r, b, s, c)?)
                        })();
                        o.push(res, ctx);
                    }
                }
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// The closed beta coefficients are kappa values.
pub fn beta_is_kappa(max: i64) -> Outcome {
    let mut o = Outcome::default();
    for n in 0..=max {
        for j in 0..=max {
            for k in 0..=j {
                let res = (|| {
                    let want = kappa(Affine::int(n - k), j - k, Affine::h_plus(n - j), k, 1)?;
                    Ok(beta_closed(n, j, k)? == want)
                })();
                o.push(res, || format!("n = {n}, j = {j}, k = {k}"));
            }
        }
    }
    o
}

/// `BB(H+m; 2n-1)` lies in the double filtration ideal of index `(n, n)`.
pub fn double_filtration_containment(nmax: u32, mmax: i64) -> Outcome {
    let mut o = Outcome::default();
    for n in 1..=nmax {
        for m in -mmax..=mmax {
            o.push(torus_in_u0kl(&falling_h(m, 2 * n - 1), n, n), || format!("n = {n}, m = {m}"));
        }
    }
    o
}

/// H-power and BBB expansions invert their assemblies.
pub fn expansion_round_trip(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let t = torus(&mut r, 4, 5);
        let h = t.expand_hpow();
        o.push(Ok(TorusElement::assemble_hpow(&h) == t), || format!("H-power expansion of {t}"));
        let p = t.shift_k(-t.min_k().unwrap_or(0));
        let b = p.expand_bbb().map(|b| TorusElement::assemble_bbb(&b) == p);
        o.push(b, || format!("BBB expansion of {p}"));
    }
    o
}

// ---------------------------------------------------------------- pbw

pub const LETTERS: [Letter; 6] = [Letter::K, Letter::KInv, Letter::E, Letter::F(1), Letter::F(2), Letter::F(3)];

fn letter_value(l: Letter) -> PbwElement {
    match l {
        Letter::K => PbwElement::k_pow(1),
        Letter::KInv => PbwElement::k_pow(-1),
        Letter::E => PbwElement::e_pow(1),
        Letter::F(n) => PbwElement::f_div(n),
    }
}

fn word_product(word: &[Letter]) -> PbwElement {
    word.iter().fold(PbwElement::one(), |acc, l| &acc * &letter_value(*l))
}

/// Rewriting with the primitive relations agrees with multiplication on
/// every word of length at most `len`.
pub fn rewriting_exhaustive(len: usize) -> Outcome {
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..len {
        words = words
            .iter()
            .flat_map(|w| {
                LETTERS.iter().map(move |l| {
                    let mut x = w.clone();
                    x.push(*l);
                    x
                })
            })
            .collect();
        all.extend(words.iter().cloned());
    }
    let parts: Vec<Outcome> = all
        .par_chunks(64)
        .map(|chunk| {
            let mut o = Outcome::default();
            for w in chunk {
                o.push(Ok(normalize_word(w) == word_product(w)), || format!("word {w:?}"));
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// Same comparison on random longer words.
pub fn rewriting_random(seed: u64, count: usize, len: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let w: Vec<Letter> = (0..len).map(|_| LETTERS[r.gen_range(0..LETTERS.len())]).collect();
        o.push(Ok(normalize_word(&w) == word_product(&w)), || format!("word {w:?}"));
    }
    o
}

/// `e^m F^(n) = sum_p bb(m;p) F^(n-p) BB(H-m-n+2p; p) e^(m-p)` by rewriting.
pub fn straightening(max: u32) -> Outcome {
    let cases: Vec<(u32, u32)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();
    let parts: Vec<Outcome> = cases
        .par_iter()
        .map(|&(m, n)| {
            let mut w = vec![Letter::E; m as usize];
            if n > 0 {
                w.push(Letter::F(n));
            }
            let mut want = PbwElement::zero();
            for p in 0..=m.min(n) {
                let t = falling_h(-(m as i64) - n as i64 + 2 * p as i64, p).scale(&qbinom(m as i64, p).into());
                want += &PbwElement::sandwich(n - p, &t, m - p);
            }
            let mut o = Outcome::default();
            o.push(Ok(normalize_word(&w) == want), || format!("m = {m}, n = {n}"));
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

pub fn associativity(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let x = element(&mut r, 3, 2, 2, 2);
        let y = element(&mut r, 3, 2, 2, 2);
        let z = element(&mut r, 3, 2, 2, 2);
        o.push(Ok(&(&x * &y) * &z == &x * &(&y * &z)), || format!("({x}) ({y}) ({z})"));
    }
    o
}

/// `t x = x gamma(2 deg x)(t)` for torus `t` and homogeneous `x`.
pub fn torus_commutation(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let t = torus(&mut r, 3, 4);
        let m = monomial(&mut r, 3, 2, 3);
        let x = PbwElement::monomial(m);
        let lhs = &PbwElement::from_torus(&t) * &x;
        let rhs = &x * &PbwElement::from_torus(&t.gamma(2 * m.z_degree()));
        o.push(Ok(lhs == rhs), || format!("t = {t}, x = {x}"));
    }
    o
}

// ---------------------------------------------------------------- hopf

/// Coassociativity, both counit laws and both antipode laws at `x`.
pub fn hopf_axioms_at(x: &PbwElement) -> AResult<bool> {
    let d = coproduct(x);
    let eps = PbwElement::scalar(counit(x));
    Ok(coproduct_on_slot(&d, 0)? == coproduct_on_slot(&d, 1)?
        && counit_on_slot(&d, 0)? == *x
        && counit_on_slot(&d, 1)? == *x
        && antipode_contract(&d, 0)? == eps
        && antipode_contract(&d, 1)? == eps)
}

pub fn hopf_axioms_monomials(amax: u32, bmax: i64, mmax: u32) -> Outcome {
    let mons: Vec<Monomial> = (0..=amax)
        .flat_map(|a| (-bmax..=bmax).flat_map(move |b| (0..=mmax).map(move |m| Monomial::new(a, b, m))))
        .collect();
    let parts: Vec<Outcome> = mons
        .par_iter()
        .map(|m| {
            let mut o = Outcome::default();
            o.push(hopf_axioms_at(&PbwElement::monomial(*m)), || format!("monomial {m}"));
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

pub fn hopf_axioms_random(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let xs: Vec<PbwElement> = (0..count).map(|_| element(&mut r, 3, 2, 2, 2)).collect();
    let parts: Vec<Outcome> = xs
        .par_iter()
        .map(|x| {
            let mut o = Outcome::default();
            o.push(hopf_axioms_at(x), || format!("element {x}"));
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// `Delta` and `eps` are multiplicative and `S` is anti-multiplicative.
pub fn hopf_morphisms(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let x = element(&mut r, 2, 2, 1, 2);
        let y = element(&mut r, 2, 2, 1, 2);
        let xy = &x * &y;
        let res = coproduct(&x).mul(&coproduct(&y)).map(|d| {
            d == coproduct(&xy)
                && antipode(&xy) == &antipode(&y) * &antipode(&x)
                && counit(&xy) == &counit(&x) * &counit(&y)
        });
        o.push(res, || format!("x = {x}, y = {y}"));
    }
    o
}

/// Closed forms of the adjoint action agree with the generic definition.
pub fn adjoint_fast_paths(max: u32) -> Outcome {
    let mut o = Outcome::default();
    let mut xs = vec![PbwElement::k_pow(1), PbwElement::k_pow(-1)];
    for n in 0..=max {
        xs.push(PbwElement::f_div(n));
        xs.push(PbwElement::e_pow(n));
    }
    for m in 0..=max {
        for x in &xs {
            o.push(Ok(adjoint_e_pow(m, x) == adjoint(&PbwElement::e_pow(m), x)), || format!("e^{m} on {x}"));
            o.push(Ok(adjoint_f_div(m, x) == adjoint(&PbwElement::f_div(m), x)), || format!("F^({m}) on {x}"));
        }
    }
    for j in 0..=max {
        for n in 0..=max {
            let res = adjoint_e_on_f_closed(j, n).map(|c| c == adjoint(&PbwElement::e_pow(j), &PbwElement::f_div(n)));
            o.push(res, || format!("closed form e^{j} on F^({n})"));
        }
    }
    o
}

/// Coproduct, antipode and counit of the shifted falling products.
pub fn falling_structure_maps(nmax: u32, mmax: i64) -> Outcome {
    let mut o = Outcome::default();
    for m in -mmax..=mmax {
        for n in 0..=nmax {
            let mut want = TensorElement::zero(2);
            for i in 0..=n {
                let c = qbinom(n as i64, i).shift(-(i as i64) * m);
                let left = PbwElement::from_torus(&falling_h(m, n - i).shift_k(-(i as i64)).scale(&c.into()));
                let right = PbwElement::from_torus(&falling_h(0, i).shift_k((n - i) as i64));
                want = want.add(&TensorElement::tensor2(&left, &right)).expect("same order");
            }
            let x = PbwElement::from_torus(&falling_h(m, n));
            let s = falling_h(-m + n as i64 - 1, n).scale(&RatFunc::from_int(sign(n as i64)));
            let ok = coproduct(&x) == want
                && antipode(&x) == PbwElement::from_torus(&s)
                && counit(&x) == RatFunc::from(falling(m, n));
            o.push(Ok(ok), || format!("m = {m}, n = {n}"));
        }
    }
    o
}

/// V2-degree of a tensor term: coefficient parity plus `a(a-1)/2` per slot.
fn tensor_term_v_degree(slots: &[Monomial], c: &RatFunc) -> Option<i64> {
    let (even, odd) = c.parity_split();
    let parity = match (even.is_zero(), odd.is_zero()) {
        (false, true) => 0,
        (true, false) => 1,
        _ => return None,
    };
    let shift: i64 = slots.iter().map(|m| m.f as i64 * (m.f as i64 - 1) / 2).sum();
    Some((parity + shift).rem_euclid(2))
}

/// The first `n` terms of the truncated quasi-R-matrix are
/// `(-1)^k v^{-k(k-1)/2} F^(k) (x) e^k`, integral and v-even.
pub fn theta_terms(n: i64) -> Outcome {
    let mut o = Outcome::default();
    let t = match theta_trunc(n) {
        Ok(t) => t,
        Err(e) => {
            o.push(Err(e), || "theta truncation".into());
            return o;
        }
    };
    o.push(Ok(t.terms().len() == n as usize), || format!("{} terms, expected {n}", t.terms().len()));
    for k in 0..n {
        let slots = vec![Monomial::new(k as u32, 0, 0), Monomial::new(0, 0, k as u32)];
        let want = RatFunc::from(LaurentInt::constant(sign(k)).shift(-k * (k - 1) / 2));
        let got = t.terms().get(&slots).cloned().unwrap_or_else(RatFunc::zero);
        o.push(Ok(got == want), || format!("coefficient of F({k}) (x) e^{k} is {got}"));
        o.push(Ok(got.is_integral()), || format!("term {k} is not integral"));
        o.push(Ok(tensor_term_v_degree(&slots, &got) == Some(0)), || format!("term {k} is not v-even"));
    }
    o
}

// ---------------------------------------------------------------- center

/// `sigma_expand` inverts assembly on integral polynomials of bounded
/// support, and assembly of an integral polynomial is integral and central.
pub fn sigma_round_trip(seed: u64, count: usize, support: usize) -> Outcome {
    let mut r = rng(seed);
    let ps: Vec<CentralPoly> = (0..count).map(|_| central_poly(&mut r, support)).collect();
    let parts: Vec<Outcome> = ps
        .par_iter()
        .map(|p| {
            let mut o = Outcome::default();
            let z = p.assemble();
            o.push(Ok(z.is_integral() && is_central(&z)), || format!("assembly of {p}"));
            o.push(sigma_expand(&z).map(|q| q == *p && q.is_integral()), || format!("round trip of {p}"));
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// Membership of a central element in the ideal of index `n` matches
/// annihilation of the irreducibles `V_d^{+-}`, `d <= n`.
pub fn central_membership(seed: u64, count: usize, nmax: u32) -> Outcome {
    let mut r = rng(seed);
    let mut cases = Vec::new();
    for _ in 0..count {
        let p = central_poly(&mut r, 4);
        let lead = r.gen_range(0..3usize);
        let coeffs: Vec<(RatFunc, RatFunc)> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i < lead { (RatFunc::zero(), RatFunc::zero()) } else { c.clone() })
            .collect();
        cases.push(CentralPoly::from_coeffs(coeffs));
    }
    let parts: Vec<Outcome> = cases
        .par_iter()
        .map(|p| {
            let mut o = Outcome::default();
            let z = p.assemble();
            for n in 0..=nmax {
                let res = (|| {
                    let member = ideal_member(&z, Ideal::UeCentral(n))? == Membership::In;
                    let mut kills = true;
                    for d in 1..=n as usize {
                        for neg in [false, true] {
                            kills &= irrep_action(neg, d, &z)?.is_zero();
                        }
                    }
                    Ok(member == kills)
                })();
                o.push(res, || format!("n = {n}, z = {p}"));
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// `sigma_m sigma_n = sum_i BB(m;i) BB(n;i) bb(m+n+1;i) sigma_{m+n-i}`,
/// against direct multiplication.
pub fn product_formula(max: u32) -> Outcome {
    let cases: Vec<(u32, u32)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();
    let parts: Vec<Outcome> = cases
        .par_iter()
        .map(|&(m, n)| {
            let mut o = Outcome::default();
            let res = sigma_expand(&(&sigma(m) * &sigma(n))).map(|lhs| {
                let mut rhs = CentralPoly::zero();
                for (i, c) in sigma_product_coeffs(m, n).into_iter().enumerate() {
                    rhs = rhs.add(&CentralPoly::sigma((m + n) as usize - i).scale(&c.into()));
                }
                lhs == rhs && CentralPoly::sigma(m as usize).mul(&CentralPoly::sigma(n as usize)) == rhs
            });
            o.push(res, || format!("m = {m}, n = {n}"));
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// Harish-Chandra images of `sigma_n` and their `w`-invariance.
pub fn harish_chandra_images(max: u32) -> Outcome {
    let mut o = Outcome::default();
    for n in 0..=max {
        let res = harish_chandra(&sigma(n)).map(|p| p == phi_sigma(n) && p == sigma_bar(n) && p.w() == p);
        o.push(res, || format!("n = {n}"));
    }
    let res = harish_chandra(&casimir()).map(|p| p == phi_casimir() && p.w() == p);
    o.push(res, || "Casimir".into());
    o
}

/// The adjoint construction: the sum over `F^(i) e^i` equals
/// `v^{-n^2+n} {n}! sigma_n`, its image is the closed form, the
/// certificate's divisions are exact and its assembly reproduces `sigma_n`.
/// The definition through `xi_{2n}` is compared for `n <= xi_max`.
pub fn sigma_tilde_pipeline(nmax: u32, xi_max: u32) -> Outcome {
    let parts: Vec<Outcome> = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let mut o = Outcome::default();
            let n64 = n as i64;
            let st = sigma_tilde(n);
            let want = sigma(n).scale(&brace_factorial(n).shift(-n64 * n64 + n64).into());
            o.push(Ok(st == want), || format!("sigma tilde at n = {n}"));
            o.push(harish_chandra(&st).map(|p| p == phi_sigma_tilde_closed(n)), || format!("closed image at n = {n}"));
            let cert = integrality_witness(n);
            let res = cert.map(|c| {
                let nf = RatFunc::from(brace_factorial(n));
                let divisible = c.entries.iter().all(|e| e.quotient.scale(&nf) == e.w);
                let pieces = c.entries.iter().all(|e| {
                    let mut acc = PbwElement::zero();
                    for (k, l, r) in &e.factor_pieces {
                        acc += &(&(l * &PbwElement::e_pow(n)) * r).scale(k);
                    }
                    acc == e.factor
                });
                divisible && pieces && c.entries.len() == 2 * n as usize + 1 && c.sigma == sigma(n)
            });
            o.push(res, || format!("integrality certificate at n = {n}"));
            if n <= xi_max {
                o.push(sigma_tilde_from_xi(n).map(|x| x == st), || format!("xi construction at n = {n}"));
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

// ---------------------------------------------------------------- completion

fn u1_generator(r: &mut ChaCha8Rng) -> PbwElement {
    match r.gen_range(0..3) {
        0 => PbwElement::scalar(brace(1).into()),
        1 => PbwElement::from_torus(&brace_h(1, 0)),
        _ => PbwElement::e_pow(1),
    }
}

/// Random combinations of products of `n` generators of the augmentation
/// ideal classify IN; unit multiples of basis monomials `F^(a) K^d {H}^j e^m`
/// with `j + m < n` classify OUT.
pub fn u1pow_oracle(seed: u64, samples: usize, nmax: u32) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    let per = samples.div_ceil(nmax as usize + 1);
    for n in 0..=nmax {
        for _ in 0..per {
            let mut x = PbwElement::zero();
            for _ in 0..r.gen_range(1..=2) {
                let mut p = element(&mut r, 2, 2, 1, 1);
                for _ in 0..n {
                    p = &(&p * &u1_generator(&mut r)) * &element(&mut r, 2, 2, 1, 1);
                }
                x += &p.scale(&laurent(&mut r, 2, 2).into());
            }
            o.push(ideal_member(&x, Ideal::U1Pow(n)).map(|m| m == Membership::In), || format!("n = {n}: {x}"));
        }
        for j in 0..n {
            for m in 0..n - j {
                let a = r.gen_range(0..=3);
                let t = brace_h(1, 0).pow(j).shift_k(r.gen_range(0..=1));
                let c = LaurentInt::signed_v_pow(r.gen_bool(0.5), r.gen_range(-3..=3));
                let x = PbwElement::sandwich(a, &t, m).scale(&c.into());
                o.push(ideal_member(&x, Ideal::U1Pow(n)).map(|m| m == Membership::Out), || format!("n = {n}: {x}"));
            }
        }
    }
    o
}

fn random_pairs(seed: u64, count: usize) -> Vec<(PbwElement, PbwElement)> {
    let mut r = rng(seed);
    (0..count).map(|_| (element(&mut r, 3, 2, 3, 3), element(&mut r, 3, 2, 3, 3))).collect()
}

/// `truncate(assemble(T)) = T` and `truncate(x - assemble(truncate(x))) = 0`.
pub fn truncation_idempotent(seed: u64, count: usize, nmax: u32) -> Outcome {
    let parts: Vec<Outcome> = random_pairs(seed, count)
        .par_iter()
        .map(|(x, _)| {
            let mut o = Outcome::default();
            for filt in [Filtration::Un, Filtration::U1pow] {
                for n in 0..=nmax {
                    let res = (|| {
                        let t = TruncatedElement::truncate(x, filt, n)?;
                        let again = TruncatedElement::truncate(&t.assemble(), filt, n)?;
                        let rest = TruncatedElement::truncate(&(x - &t.assemble()), filt, n)?;
                        Ok(again == t && rest.is_zero())
                    })();
                    o.push(res, || format!("{} at n = {n}: {x}", filt.name()));
                }
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// `truncate(xy) = truncate(assemble(truncate(x)) assemble(truncate(y)))`.
/// With `lifted`, the factors are truncated at the lift precision and the
/// product projected back.
pub fn truncation_multiplicative(seed: u64, count: usize, filt: Filtration, nmax: u32, lifted: bool) -> Outcome {
    let parts: Vec<Outcome> = random_pairs(seed, count)
        .par_iter()
        .map(|(x, y)| {
            let mut o = Outcome::default();
            let xy = x * y;
            for n in 1..=nmax {
                let res = (|| {
                    let hi = if lifted { TruncatedElement::lift_precision(filt, n) } else { n };
                    let tx = TruncatedElement::truncate(x, filt, hi)?;
                    let ty = TruncatedElement::truncate(y, filt, hi)?;
                    Ok(tx.mul(&ty)?.project(n)? == TruncatedElement::truncate(&xy, filt, n)?)
                })();
                o.push(res, || format!("{} at n = {n}: x = {x}, y = {y}", filt.name()));
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// The precision tower commutes with addition, and with multiplication
/// for the augmentation powers.
pub fn truncation_tower(seed: u64, count: usize, nmax: u32) -> Outcome {
    let mut o = Outcome::default();
    for (x, y) in random_pairs(seed, count) {
        for filt in [Filtration::Un, Filtration::U1pow] {
            for n in 0..=nmax {
                let res = (|| {
                    let (hx, lx) =
                        (TruncatedElement::truncate(&x, filt, n + 1)?, TruncatedElement::truncate(&x, filt, n)?);
                    let (hy, ly) =
                        (TruncatedElement::truncate(&y, filt, n + 1)?, TruncatedElement::truncate(&y, filt, n)?);
                    let mut ok = hx.project(n)? == lx && hx.add(&hy)?.project(n)? == lx.add(&ly)?;
                    if filt == Filtration::U1pow {
                        ok &= hx.mul(&hy)?.project(n)? == lx.mul(&ly)?;
                    }
                    Ok(ok)
                })();
                o.push(res, || format!("{} tower at n = {n}: x = {x}, y = {y}", filt.name()));
            }
        }
    }
    o
}

/// Generators of the filtration ideals sit inside the sandwich bounds:
/// `F^(a') BB(H+m;i) e^j F^(a)` with `i + j = 2n - 1` is in `U'_n` (hence
/// not OUT of `U_n`), and `F^(a) BB(H+m;i) e^j` with `i + j = n` is not OUT
/// of `U_n`.
pub fn sandwich_generators(nmax: u32, mmax: i64) -> Outcome {
    let cases: Vec<(u32, i64)> = (1..=nmax).flat_map(|n| (-mmax..=mmax).map(move |m| (n, m))).collect();
    let parts: Vec<Outcome> = cases
        .par_iter()
        .map(|&(n, m)| {
            let mut o = Outcome::default();
            for i in 0..=2 * n - 1 {
                let j = 2 * n - 1 - i;
                for (a2, a) in [(0, 0), (1, 0), (0, 1)] {
                    let t = falling_h(m, i);
                    let x = &PbwElement::sandwich(a2, &t, j) * &PbwElement::f_div(a);
                    let res = (|| {
                        Ok(ideal_member(&x, Ideal::UPrime(n))? == Membership::In
                            && ideal_member(&x, Ideal::Un(n))? != Membership::Out)
                    })();
                    o.push(res, || format!("n = {n}, m = {m}, i = {i}, a' = {a2}, a = {a}"));
                }
            }
            for i in 0..=n {
                let x = PbwElement::sandwich(1, &falling_h(m, i), n - i);
                o.push(ideal_member(&x, Ideal::Un(n)).map(|r| r != Membership::Out), || {
                    format!("level generator n = {n}, m = {m}, i = {i}")
                });
            }
            o
        })
        .collect();
    Outcome::merge_all(parts)
}

/// `Delta(g)` lies in `U_1 (x) U + U (x) U_1`, `eps(g)` in `{1} A` and
/// `S(g)` in `U_1` for each generator `g` of the augmentation ideal.
pub fn augmentation_is_hopf_ideal() -> Outcome {
    let mut o = Outcome::default();
    let gens = [PbwElement::scalar(brace(1).into()), PbwElement::from_torus(&brace_h(1, 0)), PbwElement::e_pow(1)];
    for g in &gens {
        o.push(tensor_in_u1_sum(&coproduct(g)), || format!("coproduct of {g}"));
        let eps_ok = counit(g).to_laurent().is_some_and(|c| scalar_reduce(CoeffRing::Hat, &c, 1).is_zero());
        o.push(Ok(eps_ok), || format!("counit of {g}"));
        o.push(ideal_member(&antipode(g), Ideal::U1Pow(1)).map(|m| m == Membership::In), || format!("antipode of {g}"));
    }
    o
}

/// A torus element minus its reassembled truncation lies in the double
/// filtration ideal of index `(n, n)`.
pub fn torus_round_trip(seed: u64, count: usize, nmax: u32) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let t = torus(&mut r, 4, 6);
        let x = PbwElement::from_torus(&t);
        for n in 0..=nmax {
            let res = (|| {
                let back = TruncatedElement::truncate(&x, Filtration::Un, n)?.assemble();
                let diff = (&x - &back).as_torus().unwrap_or_default();
                torus_in_u0kl(&diff, n, n)
            })();
            o.push(res, || format!("n = {n}, t = {t}"));
        }
    }
    o
}

/// Series arithmetic over each coefficient ring agrees with exact
/// arithmetic in the center followed by truncation.
pub fn series_agreement(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let p = central_poly(&mut r, 3);
        let q = central_poly(&mut r, 3);
        let (prod, sum) = (p.mul(&q), p.add(&q));
        for ring in [CoeffRing::Exact, CoeffRing::Hat, CoeffRing::Dot] {
            for n in 1..=4u32 {
                let res = (|| {
                    let sp = CentralSeries::from_poly(ring, &p, n)?;
                    let sq = CentralSeries::from_poly(ring, &q, n)?;
                    Ok(sp.mul(&sq)? == CentralSeries::from_poly(ring, &prod, n)?
                        && sp.add(&sq)? == CentralSeries::from_poly(ring, &sum, n)?)
                })();
                o.push(res, || format!("{} at precision {n}: p = {p}, q = {q}", ring.name()));
            }
        }
    }
    o
}

/// Rewriting a series in powers of `C^2 - [2]^2` and back is the identity
/// at precision 3.
pub fn s_power_round_trip(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let mut o = Outcome::default();
    for _ in 0..count {
        let p = central_poly(&mut r, 3);
        for ring in [CoeffRing::Exact, CoeffRing::Hat, CoeffRing::Dot] {
            let res = CentralSeries::from_poly(ring, &p, 3)
                .map(|x| CentralSeries::from_s_powers(ring, &x.to_s_powers(), 3) == x);
            o.push(res, || format!("{}: {p}", ring.name()));
        }
    }
    o
}

// ---------------------------------------------------------------- suites

/// The suites run by `verify --suite=all`.
pub const SUITES: [&str; 6] = ["qcomb", "torus", "pbw", "hopf", "center", "completion"];

type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

pub struct Check {
    pub suite: &'static str,
    pub anchor: &'static str,
    run: CheckFn,
}

impl Check {
    pub fn new(suite: &'static str, anchor: &'static str, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Check { suite, anchor, run: Box::new(run) }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub anchor: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

/// Default `--max` per suite.
pub fn default_max(suite: &str) -> u32 {
    match suite {
        "qcomb" => 6,
        "torus" => 4,
        "pbw" => 6,
        "hopf" => 3,
        "center" => 2,
        _ => 3,
    }
}

/// The checks of one suite. `max` bounds the main index of each check;
/// the seed feeds every randomized check.
pub fn suite_checks(suite: &str, max: Option<u32>, seed: u64) -> Option<Vec<Check>> {
    let m = max.unwrap_or_else(|| default_max(suite));
    let mi = m as i64;
    let s = seed;
    let checks = match suite {
        "qcomb" => vec![
            Check::new("qcomb", "cyclotomic profiles of q-factorials", move || factorial_profiles(5 * m)),
            Check::new("qcomb", "q-binomials as factorial quotients", move || binomial_oracle(2 * m)),
            Check::new("qcomb", "theta integrality via cyclotomic exponents", move || theta_integrality(m)),
            Check::new("qcomb", "upper alternating q-binomial sum", move || alternating_sum_upper(mi + 2)),
            Check::new("qcomb", "lower alternating q-binomial sum", move || alternating_sum_lower(mi + 2)),
            Check::new("qcomb", "falling product as signed binomial sum", move || falling_binomial_sum(mi)),
        ],
        "torus" => vec![
            Check::new("torus", "shifted falling products in the generators", move || falling_in_generators(m, 6)),
            Check::new("torus", "q-factorial from shifted falling products", move || {
                factorial_from_shifted_products(m)
            }),
            Check::new("torus", "BBB against falling products", move || bbb_against_falling(2 * m)),
            Check::new("torus", "shifted falling sum collapses to one K-power", move || shifted_falling_sum(mi)),
            Check::new("torus", "kappa symmetry and double sum", move || kappa_symmetry(mi, 3)),
            Check::new("torus", "beta coefficients are kappa values", move || beta_is_kappa(mi)),
            Check::new("torus", "odd falling products in the double filtration", move || {
                double_filtration_containment(m, 6)
            }),
            Check::new("torus", "expansion round trips", move || expansion_round_trip(s, 50)),
        ],
        "pbw" => vec![
            Check::new("pbw", "rewriting agrees with multiplication (all short words)", || rewriting_exhaustive(4)),
            Check::new("pbw", "rewriting agrees with multiplication (random words)", move || {
                rewriting_random(s, 100, 6)
            }),
            Check::new("pbw", "straightening closed form for e^m F^(n)", move || straightening(m)),
            Check::new("pbw", "associativity", move || associativity(s, 30)),
            Check::new("pbw", "torus elements commute past homogeneous ones", move || torus_commutation(s, 40)),
        ],
        "hopf" => vec![
            Check::new("hopf", "Hopf axioms on monomials", move || hopf_axioms_monomials(m, 2, m)),
            Check::new("hopf", "Hopf axioms on random elements", move || hopf_axioms_random(s, 100)),
            Check::new("hopf", "structure maps are (anti)multiplicative", move || hopf_morphisms(s, 20)),
            Check::new("hopf", "adjoint action closed forms", move || adjoint_fast_paths(m)),
            Check::new("hopf", "structure maps on shifted falling products", move || falling_structure_maps(m + 1, 3)),
            Check::new("hopf", "quasi-R-matrix truncation coefficients", || theta_terms(5)),
        ],
        "center" => vec![
            Check::new("center", "sigma expansion round trip", move || sigma_round_trip(s, 20, 4)),
            Check::new("center", "central ideal membership by annihilation", move || central_membership(s, 12, 3)),
            Check::new("center", "sigma product formula", move || product_formula(m + 1)),
            Check::new("center", "Harish-Chandra images of sigma", move || harish_chandra_images(m + 1)),
            Check::new("center", "adjoint construction of sigma tilde", move || sigma_tilde_pipeline(m, m.min(1))),
        ],
        "completion" => vec![
            Check::new("completion", "augmentation-power criterion against the generator oracle", move || {
                u1pow_oracle(s, 200, m)
            }),
            Check::new("completion", "canonical truncations are idempotent", move || truncation_idempotent(s, 100, m)),
            Check::new("completion", "augmentation-power truncation is multiplicative", move || {
                truncation_multiplicative(s, 100, Filtration::U1pow, m, false)
            }),
            Check::new("completion", "lifted level truncation is multiplicative", move || {
                truncation_multiplicative(s, 30, Filtration::Un, m.min(2), true)
            }),
            Check::new("completion", "precision tower", move || truncation_tower(s, 30, m)),
            Check::new("completion", "filtration generators inside the sandwich", move || {
                sandwich_generators(m.min(4), 6)
            }),
            Check::new("completion", "augmentation ideal is a Hopf ideal", augmentation_is_hopf_ideal),
            Check::new("completion", "torus truncation round trip", move || torus_round_trip(s, 40, m + 1)),
            Check::new("completion", "series agree with the exact center", move || series_agreement(s, 20)),
            Check::new("completion", "s-power round trip", move || s_power_round_trip(s, 20)),
        ],
        // Known to fail: the level truncation kernel is not an ideal.
        "literal-un" => {
            vec![Check::new("literal-un", "level truncation is multiplicative without lifting", move || {
                truncation_multiplicative(s, 100, Filtration::Un, m, false)
            })]
        }
        _ => return None,
    };
    Some(checks)
}

/// Runs checks in parallel; results keep the input order.
pub fn run_checks(checks: &[Check]) -> Vec<CheckResult> {
    checks
        .par_iter()
        .map(|c| {
            let t0 = Instant::now();
            let outcome = (c.run)();
            CheckResult { suite: c.suite, anchor: c.anchor, outcome, elapsed: t0.elapsed() }
        })
        .collect()
}
