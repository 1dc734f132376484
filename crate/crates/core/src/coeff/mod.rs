//! Coefficient rings and q-symbols.

pub mod cyclo;
pub mod laurent;
pub mod qsym;
pub mod ratfunc;

pub use cyclo::{balanced_cyclotomic, cyclo_factorize, psi_d, tau_d, theta, theta_d, CycloFactor, CycloProfile};
pub use laurent::LaurentInt;
pub use qsym::{
    brace, brace_factorial, bracket, bracket_factorial, falling, q_pochhammer, qbinom, qbinom_rat, qscalar, QSymbol,
};
pub use ratfunc::RatFunc;

/// Exact division in `Z[v, v^-1]`; `Ok(None)` when not divisible.
pub fn div_exact(x: &LaurentInt, y: &LaurentInt) -> crate::Result<Option<LaurentInt>> {
    x.div_exact(y)
}
