//! Exact scalars: a ring over the rationals generated by purely imaginary
//! symbols, lattices `Z*tau + Z`, the skew form `D_tau`, and Smith normal form.

mod parse;
mod ring;
pub mod snf;
mod tau;
mod value;

pub use ring::{NumberRing, SymbolDecl, SymbolKind};
pub use snf::{integer_kernel, quotient_invariants, smith_normal_form, IntMatrix, Smith};
pub use tau::{LatticeElement, Tau};
pub use value::{Monomial, NumberValue};

pub(crate) use tau::to_i64;
pub(crate) use value::q;

use num_rational::BigRational;

use crate::error::Result;

/// Coordinates `(a, b)` with `x = a*tau + b`.
pub fn decompose(x: &NumberValue, tau: &Tau) -> Result<(BigRational, BigRational)> {
    tau.decompose(x)
}

pub fn d_form(tau: &Tau, x: &NumberValue, y: &NumberValue) -> Result<BigRational> {
    tau.d_form(x, y)
}

pub fn in_lattice(x: &NumberValue, tau: &Tau) -> bool {
    tau.in_lattice(x)
}

pub fn im_ratio(x: &NumberValue, tau: &Tau) -> Result<BigRational> {
    tau.im_ratio(x)
}
