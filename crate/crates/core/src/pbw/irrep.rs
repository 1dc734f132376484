//! The irreducible modules `V^+-_i` as a representation-theoretic oracle.
//!
//! Basis `u_0, ..., u_{i-1}` with `u_j = F^(j) u_0`:
//! `K u_j = +-v^{i-1-2j} u_j`, `F^(n) u_j = qbinom(j+n, n) u_{j+n}`,
//! `e u_j = +-{i-j} u_{j-1}`.

use std::fmt;
use std::ops::{Add, Mul};

use crate::coeff::{brace, qbinom, RatFunc};
use crate::error::{domain, Result};
use crate::pbw::PbwElement;

/// Square matrix over `Q(v)` acting on `V^+-_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct IrrepMatrix {
    pub negative: bool,
    pub dim: usize,
    rows: Vec<Vec<RatFunc>>,
}

impl IrrepMatrix {
    pub fn zero(negative: bool, dim: usize) -> Self {
        IrrepMatrix { negative, dim, rows: vec![vec![RatFunc::zero(); dim]; dim] }
    }

    pub fn identity(negative: bool, dim: usize) -> Self {
        Self::diagonal(negative, dim, |_| RatFunc::one())
    }

    fn diagonal(negative: bool, dim: usize, f: impl Fn(usize) -> RatFunc) -> Self {
        let mut m = Self::zero(negative, dim);
        for j in 0..dim {
            m.rows[j][j] = f(j);
        }
        m
    }

    pub fn entry(&self, r: usize, c: usize) -> &RatFunc {
        &self.rows[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(RatFunc::is_zero))
    }

    /// `Some(c)` if the matrix is `c` times the identity.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        let c = self.rows.first().map(|r| r[0].clone()).unwrap_or_else(RatFunc::zero);
        (*self == Self::identity(self.negative, self.dim).scale(&c)).then_some(c)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        IrrepMatrix { negative: self.negative, dim: self.dim, rows }
    }

    fn sign(&self) -> RatFunc {
        RatFunc::from_int(if self.negative { -1 } else { 1 })
    }

    /// Matrix of `K^b`.
    pub fn k_pow(negative: bool, dim: usize, b: i64) -> Self {
        let i = dim as i64;
        let s = if negative && b.rem_euclid(2) == 1 { -1 } else { 1 };
        Self::diagonal(negative, dim, |j| RatFunc::v_pow(b * (i - 1 - 2 * j as i64)).mul_laurent(&s.into()))
    }

    /// Matrix of `e^m`.
    pub fn e_pow(negative: bool, dim: usize, m: u32) -> Self {
        let mut e = Self::zero(negative, dim);
        let sign = e.sign();
        for j in 1..dim {
            e.rows[j - 1][j] = &sign * &RatFunc::from(brace(dim as i64 - j as i64));
        }
        (0..m).fold(Self::identity(negative, dim), |acc, _| &acc * &e)
    }

    /// Matrix of `F^(n)`.
    pub fn f_div(negative: bool, dim: usize, n: u32) -> Self {
        let mut f = Self::zero(negative, dim);
        for j in 0..dim {
            let t = j + n as usize;
            if t < dim {
                f.rows[t][j] = qbinom(t as i64, n).into();
            }
        }
        f
    }
}

/// Matrix of `x` acting on `V^+-_i`.
pub fn irrep_action(negative: bool, dim: usize, x: &PbwElement) -> Result<IrrepMatrix> {
    if dim == 0 {
        return domain("irreducible module dimension must be at least 1");
    }
    let mut acc = IrrepMatrix::zero(negative, dim);
    for (mon, c) in x.terms() {
        let m = &(&IrrepMatrix::f_div(negative, dim, mon.f) * &IrrepMatrix::k_pow(negative, dim, mon.k))
            * &IrrepMatrix::e_pow(negative, dim, mon.e);
        acc = &acc + &m.scale(c);
    }
    Ok(acc)
}

impl Mul for &IrrepMatrix {
    type Output = IrrepMatrix;
    fn mul(self, o: &IrrepMatrix) -> IrrepMatrix {
        let n = self.dim;
        let mut out = IrrepMatrix::zero(self.negative, n);
        for r in 0..n {
            for k in 0..n {
                if self.rows[r][k].is_zero() {
                    continue;
                }
                for c in 0..n {
                    if !o.rows[k][c].is_zero() {
                        out.rows[r][c] += &(&self.rows[r][k] * &o.rows[k][c]);
                    }
                }
            }
        }
        out
    }
}

impl Add for &IrrepMatrix {
    type Output = IrrepMatrix;
    fn add(self, o: &IrrepMatrix) -> IrrepMatrix {
        let mut out = self.clone();
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.rows[r][c] += &o.rows[r][c];
            }
        }
        out
    }
}

impl fmt::Debug for IrrepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V{}_{}:", if self.negative { "-" } else { "+" }, self.dim)?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::Monomial;

    #[test]
    fn relations_hold() {
        for neg in [false, true] {
            for i in 1..=5 {
                let k = IrrepMatrix::k_pow(neg, i, 1);
                let e = IrrepMatrix::e_pow(neg, i, 1);
                let f = IrrepMatrix::f_div(neg, i, 1);
                assert_eq!(&k * &e, (&e * &k).scale(&RatFunc::v_pow(2)));
                assert_eq!(&k * &f, (&f * &k).scale(&RatFunc::v_pow(-2)));
                let ef = &e * &f;
                let fe = &f * &e;
                let comm = &ef + &fe.scale(&RatFunc::from_int(-1));
                let h = &k + &IrrepMatrix::k_pow(neg, i, -1).scale(&RatFunc::from_int(-1));
                assert_eq!(comm, h);
            }
        }
    }

    #[test]
    fn casimir_scalar() {
        let c = PbwElement::from_terms([
            (Monomial::new(1, 0, 1), RatFunc::from(brace(1))),
            (Monomial::new(0, 1, 0), RatFunc::v_pow(1)),
            (Monomial::new(0, -1, 0), RatFunc::v_pow(-1)),
        ]);
        for neg in [false, true] {
            for i in 1..=6 {
                let s = irrep_action(neg, i, &c).unwrap().as_scalar().unwrap();
                let want = RatFunc::v_pow(i as i64) + RatFunc::v_pow(-(i as i64));
                assert_eq!(s, if neg { -want } else { want });
            }
        }
    }
}
