use num_bigint::BigInt;
use qsl2_core::center::{casimir, sigma, xi, xi_prime};
use qsl2_core::coeff::{brace, qbinom, LaurentInt, RatFunc};
use qsl2_core::hopf::TensorElement;
use qsl2_core::pbw::PbwElement;
use qsl2_core::torus::{bbb, falling_h};

use crate::error::{domain, CliResult};
use crate::parse::{parse_expr, Atom, Expr};

/// An evaluated expression: an algebra element or a tensor of some order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Pbw(PbwElement),
    Tensor(TensorElement),
}

impl Value {
    pub fn is_integral(&self) -> bool {
        match self {
            Value::Pbw(x) => x.is_integral(),
            Value::Tensor(t) => t.is_integral(),
        }
    }

    pub fn into_pbw(self) -> CliResult<PbwElement> {
        match self {
            Value::Pbw(x) => Ok(x),
            Value::Tensor(_) => domain("expected an algebra element, got a tensor"),
        }
    }
}

fn atom(a: &Atom) -> PbwElement {
    match *a {
        Atom::V => PbwElement::scalar(RatFunc::v_pow(1)),
        Atom::Q => PbwElement::scalar(RatFunc::v_pow(2)),
        Atom::K => PbwElement::k_pow(1),
        Atom::BigE => PbwElement::big_e(),
        Atom::BigF => PbwElement::f_div(1),
        Atom::SmallE => PbwElement::e_pow(1),
        Atom::SmallF => PbwElement::small_f(),
        Atom::Casimir => casimir(),
        Atom::FDiv(n) => PbwElement::f_div(n),
        Atom::EDiv(n) => PbwElement::big_e_div(n),
        Atom::Sigma(n) => sigma(n),
        Atom::Xi(n) => xi(n),
        Atom::XiPrime(n) => xi_prime(n),
        Atom::Qb(m, n) => PbwElement::scalar(qbinom(m, n).into()),
        Atom::Br(a) => PbwElement::scalar(brace(a).into()),
        Atom::BrH(m, n) => PbwElement::from_torus(&falling_h(m, n)),
        Atom::Bbb(l) => PbwElement::from_torus(&bbb(l)),
    }
}

/// `x_1 (x) ... (x) x_k` for algebra elements.
pub fn tensor_of(parts: &[PbwElement]) -> TensorElement {
    let mut acc = TensorElement::one(0);
    for x in parts {
        let mut next = TensorElement::zero(acc.order() + 1);
        for (slots, c) in acc.terms() {
            for (m, d) in x.terms() {
                let mut s = slots.clone();
                s.push(*m);
                next.add_term(s, &(c * d));
            }
        }
        acc = next;
    }
    acc
}

fn add(x: Value, y: Value, negate: bool) -> CliResult<Value> {
    match (x, y) {
        (Value::Pbw(a), Value::Pbw(b)) => Ok(Value::Pbw(if negate { &a - &b } else { &a + &b })),
        (Value::Tensor(a), Value::Tensor(b)) => {
            if a.order() != b.order() {
                return domain(format!("cannot add tensors of orders {} and {}", a.order(), b.order()));
            }
            Ok(Value::Tensor(if negate { a.sub(&b)? } else { a.add(&b)? }))
        }
        _ => domain("cannot add an algebra element and a tensor"),
    }
}

fn mul(x: Value, y: Value) -> CliResult<Value> {
    match (x, y) {
        (Value::Pbw(a), Value::Pbw(b)) => Ok(Value::Pbw(&a * &b)),
        (Value::Tensor(a), Value::Tensor(b)) => {
            if a.order() != b.order() {
                return domain(format!("cannot multiply tensors of orders {} and {}", a.order(), b.order()));
            }
            Ok(Value::Tensor(a.mul(&b)?))
        }
        (Value::Pbw(a), Value::Tensor(t)) | (Value::Tensor(t), Value::Pbw(a)) => match a.as_scalar() {
            Some(c) => Ok(Value::Tensor(t.scale(&c))),
            None => domain("only scalars can multiply a tensor"),
        },
    }
}

pub fn eval(x: &Expr) -> CliResult<Value> {
    Ok(match x {
        Expr::Int(n) => Value::Pbw(PbwElement::scalar(LaurentInt::from(BigInt::clone(n)).into())),
        Expr::Atom(a) => Value::Pbw(atom(a)),
        Expr::Neg(a) => match eval(a)? {
            Value::Pbw(p) => Value::Pbw(-p),
            Value::Tensor(t) => Value::Tensor(t.scale(&RatFunc::from_int(-1))),
        },
        Expr::Add(a, b) => add(eval(a)?, eval(b)?, false)?,
        Expr::Sub(a, b) => add(eval(a)?, eval(b)?, true)?,
        Expr::Mul(a, b) => mul(eval(a)?, eval(b)?)?,
        Expr::Div(a, b) => {
            let d = match eval(b)? {
                Value::Pbw(p) => p.as_scalar(),
                Value::Tensor(_) => None,
            };
            let Some(d) = d else {
                return domain("division is only by scalars");
            };
            if d.is_zero() {
                return domain("division by zero");
            }
            mul(eval(a)?, Value::Pbw(PbwElement::scalar(RatFunc::one().div(&d)?)))?
        }
        Expr::Pow(a, k) => match eval(a)? {
            Value::Pbw(p) => Value::Pbw(p.pow_signed(*k)?),
            Value::Tensor(t) => {
                if *k < 0 {
                    return domain("negative powers of tensors are not supported");
                }
                let mut acc = TensorElement::one(t.order());
                for _ in 0..*k {
                    acc = acc.mul(&t)?;
                }
                Value::Tensor(acc)
            }
        },
        Expr::Tensor(parts) => {
            let mut xs = Vec::with_capacity(parts.len());
            for p in parts {
                xs.push(eval(p)?.into_pbw()?);
            }
            Value::Tensor(tensor_of(&xs))
        }
    })
}

pub fn eval_str(s: &str) -> CliResult<Value> {
    eval(&parse_expr(s)?)
}

pub fn eval_pbw(s: &str) -> CliResult<PbwElement> {
    eval_str(s)?.into_pbw()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsl2_core::center::is_central;

    #[test]
    fn examples() {
        let x = eval_pbw("e*F(1)").unwrap();
        assert_eq!(x.to_string(), "F(1) e + K - K^-1");
        assert!(is_central(&eval_pbw("sigma(2)*C").unwrap()));
        assert_eq!(eval_pbw("(F(1))^2").unwrap(), eval_pbw("qb(2,1)*F(2)").unwrap());
        assert_eq!(eval_pbw("K*K^-1").unwrap(), PbwElement::one());
        assert!(eval_pbw("e^-1").is_err());
        assert!(eval_pbw("e/0").is_err());
        assert!(eval_pbw("1 (x) e").is_err());
        assert!(!eval_pbw("E").unwrap().is_integral());
        assert_eq!(eval_pbw("f").unwrap(), eval_pbw("br(1)*F").unwrap());
    }

    #[test]
    fn printed_forms_read_back() {
        for s in ["e*F(3) + v*K^-2 - E(2)/br(2)", "C^2", "brH(1,2)*bbb(2)", "(v^2 + 1)/(v - 1)*e"] {
            let x = eval_pbw(s).unwrap();
            assert_eq!(eval_pbw(&x.to_string()).unwrap(), x, "{s}");
        }
        let t = tensor_of(&[eval_pbw("F(1) + K").unwrap(), eval_pbw("v e").unwrap()]);
        assert_eq!(eval_str(&t.to_string()).unwrap(), Value::Tensor(t));
    }
}
