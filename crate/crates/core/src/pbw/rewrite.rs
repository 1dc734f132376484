//! Word normalization using only the primitive commutation rules.
//!
//! Rules, applied at the leftmost redex:
//!
//! ```text
//! K K^-1 -> 1,  K^-1 K -> 1
//! e K^{+-1}  -> v^{-+2} K^{+-1} e
//! K^{+-1} F(n) -> v^{-+2n} F(n) K^{+-1}
//! F(m) F(n)  -> qbinom(m+n, m) F(m+n)
//! e F(n)     -> F(n) e + v^{1-n} F(n-1) K - v^{n-1} F(n-1) K^-1
//! ```
//!
//! This is deliberately independent of the closed-form product in the
//! parent module and is used to cross-check it.

use std::collections::BTreeMap;

use crate::coeff::{qbinom, LaurentInt, RatFunc};
use crate::pbw::{Monomial, PbwElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `F^(n)` with `n >= 1`.
    F(u32),
    K,
    KInv,
    E,
}

type Word = Vec<Letter>;

fn class(l: Letter) -> u8 {
    match l {
        Letter::F(_) => 0,
        Letter::K | Letter::KInv => 1,
        Letter::E => 2,
    }
}

/// Rewrites the pair at `i, i+1` if it is a redex.
fn rewrite_pair(x: Letter, y: Letter) -> Option<Vec<(LaurentInt, Word)>> {
    use Letter::*;
    let one = LaurentInt::one;
    Some(match (x, y) {
        (K, KInv) | (KInv, K) => vec![(one(), vec![])],
        (E, K) => vec![(LaurentInt::v_pow(-2), vec![K, E])],
        (E, KInv) => vec![(LaurentInt::v_pow(2), vec![KInv, E])],
        (K, F(n)) => vec![(LaurentInt::v_pow(-2 * n as i64), vec![F(n), K])],
        (KInv, F(n)) => vec![(LaurentInt::v_pow(2 * n as i64), vec![F(n), KInv])],
        (F(m), F(n)) => vec![(qbinom((m + n) as i64, m), vec![F(m + n)])],
        (E, F(n)) => {
            let lower = |w: Letter| if n > 1 { vec![F(n - 1), w] } else { vec![w] };
            vec![
                (one(), vec![F(n), E]),
                (LaurentInt::v_pow(1 - n as i64), lower(K)),
                (-LaurentInt::v_pow(n as i64 - 1), lower(KInv)),
            ]
        }
        _ => {
            debug_assert!(class(x) <= class(y));
            return None;
        }
    })
}

fn leftmost_redex(w: &Word) -> Option<(usize, Vec<(LaurentInt, Word)>)> {
    w.windows(2).enumerate().find_map(|(i, p)| rewrite_pair(p[0], p[1]).map(|r| (i, r)))
}

fn word_to_monomial(w: &Word) -> Monomial {
    let mut mon = Monomial::ONE;
    for l in w {
        match l {
            Letter::F(n) => mon.f += n,
            Letter::K => mon.k += 1,
            Letter::KInv => mon.k -= 1,
            Letter::E => mon.e += 1,
        }
    }
    mon
}

/// Normal form of a word; `F(0)` letters are treated as `1`.
pub fn normalize_word(word: &[Letter]) -> PbwElement {
    let start: Word = word.iter().copied().filter(|l| *l != Letter::F(0)).collect();
    let mut pending: BTreeMap<Word, LaurentInt> = BTreeMap::new();
    pending.insert(start, LaurentInt::one());
    let mut done: BTreeMap<Monomial, LaurentInt> = BTreeMap::new();
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match leftmost_redex(&w) {
            None => {
                *done.entry(word_to_monomial(&w)).or_default() += &c;
            }
            Some((i, parts)) => {
                for (coef, mid) in parts {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.extend_from_slice(&w[..i]);
                    nw.extend(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    *pending.entry(nw).or_default() += &(&c * &coef);
                }
            }
        }
    }
    PbwElement::from_terms(done.into_iter().map(|(m, c)| (m, RatFunc::from(c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::falling_h;
    use Letter::*;

    #[test]
    fn primitive_examples() {
        let x = normalize_word(&[E, F(1)]);
        let want = &PbwElement::monomial(Monomial::new(1, 0, 1)) + &PbwElement::from_torus(&falling_h(0, 1));
        assert_eq!(x, want);
        assert_eq!(normalize_word(&[K, KInv]), PbwElement::one());
        let f3 = normalize_word(&[F(1), F(2)]);
        assert_eq!(f3, PbwElement::term(Monomial::new(3, 0, 0), crate::coeff::bracket(3).into()));
    }

    #[test]
    fn agrees_with_product() {
        let w = [E, E, K, F(2), KInv, E, F(1)];
        let mut prod = PbwElement::one();
        for l in w {
            let g = match l {
                F(n) => PbwElement::f_div(n),
                K => PbwElement::k_pow(1),
                KInv => PbwElement::k_pow(-1),
                E => PbwElement::e_pow(1),
            };
            prod = &prod * &g;
        }
        assert_eq!(normalize_word(&w), prod);
    }
}
