use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ring::SymbolKind;
use super::value::{Monomial, NumberValue};
use crate::error::{Error, Result};

/// A point of the upper half-plane of the form `re + im * s` with `s` one
/// declared symbol and `im > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tau {
    value: NumberValue,
    re: BigRational,
    im: BigRational,
    symbol: usize,
}

impl Tau {
    pub fn new(value: NumberValue) -> Result<Self> {
        let mut re = BigRational::zero();
        let mut found: Option<(usize, BigRational)> = None;
        for (m, c) in value.terms() {
            if m.is_one() {
                re = c.clone();
                continue;
            }
            let nonzero: Vec<(usize, i32)> =
                m.exponents().iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (k, e)).collect();
            if nonzero.len() != 1 || nonzero[0].1 != 1 || found.is_some() {
                return Err(Error::InvalidTau(format!("{value} is not of the form q0 + q1*s")));
            }
            found = Some((nonzero[0].0, c.clone()));
        }
        let (symbol, im) = found.ok_or_else(|| Error::InvalidTau(format!("{value} is real")))?;
        if !im.is_positive() {
            return Err(Error::InvalidTau(format!("{value} does not lie in the upper half-plane")));
        }
        Ok(Tau { value, re, im, symbol })
    }

    pub fn value(&self) -> &NumberValue {
        &self.value
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    /// Coefficient of the imaginary symbol.
    pub fn im_coeff(&self) -> &BigRational {
        &self.im
    }

    pub fn symbol(&self) -> usize {
        self.symbol
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.value.ring().kind(self.symbol), SymbolKind::Quadratic(_))
    }

    /// `d` of the imaginary symbol, for quadratic periods.
    pub fn quadratic_d(&self) -> Option<u64> {
        match self.value.ring().kind(self.symbol) {
            SymbolKind::Quadratic(d) => Some(d),
            SymbolKind::Transcendental => None,
        }
    }

    /// `|tau|^2` as a rational, for quadratic periods.
    pub fn norm_sq(&self) -> Option<BigRational> {
        let d = self.quadratic_d()?;
        Some(&self.re * &self.re + &self.im * &self.im * BigRational::from_integer(BigInt::from(d)))
    }

    /// Imaginary part as a real ring element.
    pub fn im_value(&self) -> NumberValue {
        self.value.im()
    }

    /// Coordinates `(a, b)` with `x = a*tau + b`.
    pub fn decompose(&self, x: &NumberValue) -> Result<(BigRational, BigRational)> {
        if !x.ring().same(self.value.ring()) {
            return Err(Error::RingMismatch);
        }
        let s = Monomial::unit(x.ring().len(), self.symbol, 1);
        let mut r0 = BigRational::zero();
        let mut r1 = BigRational::zero();
        for (m, c) in x.terms() {
            if m.is_one() {
                r0 = c.clone();
            } else if *m == s {
                r1 = c.clone();
            } else {
                return Err(Error::NotInSpan(format!("{x} over tau = {}", self.value)));
            }
        }
        let a = r1 / &self.im;
        let b = r0 - &a * &self.re;
        Ok((a, b))
    }

    /// `D_tau(x, y) = ad - bc` for `x = a*tau + b`, `y = c*tau + d`.
    pub fn d_form(&self, x: &NumberValue, y: &NumberValue) -> Result<BigRational> {
        let (a, b) = self.decompose(x)?;
        let (c, d) = self.decompose(y)?;
        Ok(a * d - b * c)
    }

    pub fn in_lattice(&self, x: &NumberValue) -> bool {
        matches!(self.decompose(x), Ok((a, b)) if a.is_integer() && b.is_integer())
    }

    /// Integer lattice coordinates of `x`.
    pub fn lattice(&self, x: &NumberValue) -> Result<LatticeElement> {
        let (a, b) = self.decompose(x)?;
        if !a.is_integer() || !b.is_integer() {
            return Err(Error::NotInLattice(format!("{x} over tau = {}", self.value)));
        }
        Ok(LatticeElement { a: to_i64(&a.to_integer())?, b: to_i64(&b.to_integer())?, tau: self.clone() })
    }

    /// `Im(x) / Im(tau)` when the imaginary parts are commensurable.
    pub fn im_ratio(&self, x: &NumberValue) -> Result<BigRational> {
        let s = Monomial::unit(x.ring().len(), self.symbol, 1);
        let mut ratio = BigRational::zero();
        for (m, c) in x.terms() {
            if m.degree() % 2 == 0 {
                continue;
            }
            if *m != s {
                return Err(Error::NotCommensurable(format!("{x} against tau = {}", self.value)));
            }
            ratio = c / &self.im;
        }
        Ok(ratio)
    }

    /// Representative of `x` modulo the lattice in the cell `[0,1)*tau + [0,1)`.
    pub fn reduce(&self, x: &NumberValue) -> Result<NumberValue> {
        let (a, b) = self.decompose(x)?;
        let a = &a - a.floor();
        let b = &b - b.floor();
        Ok(&self.value.scale(&a) + &NumberValue::rational(self.value.ring(), b))
    }

    /// Whether `x - y` lies in the lattice.
    pub fn congruent(&self, x: &NumberValue, y: &NumberValue) -> bool {
        self.in_lattice(&(x - y))
    }

    pub fn element(&self, a: i64, b: i64) -> LatticeElement {
        LatticeElement { a, b, tau: self.clone() }
    }

    /// Numeric value with quadratic symbols embedded as `i*sqrt(d)` and
    /// transcendental symbols taken from `numeric`.
    pub fn to_complex(&self, numeric: &dyn Fn(usize) -> Option<f64>) -> Option<num_complex::Complex64> {
        let im_unit = match self.value.ring().kind(self.symbol) {
            SymbolKind::Quadratic(d) => (d as f64).sqrt(),
            SymbolKind::Transcendental => numeric(self.symbol)?,
        };
        Some(num_complex::Complex64::new(self.re.to_f64()?, self.im.to_f64()? * im_unit))
    }
}

pub(crate) fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Overflow(format!("{n} does not fit in 64 bits")))
}

impl fmt::Debug for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tau({})", self.value)
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `a * tau + b` for integers `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeElement {
    pub a: i64,
    pub b: i64,
    pub tau: Tau,
}

impl LatticeElement {
    pub fn embed(&self) -> NumberValue {
        let ring = self.tau.value.ring();
        &self.tau.value.scale_int(self.a) + &ring.int(self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The skew form on coordinates, normalized by `D(tau, 1) = 1`.
    pub fn d(&self, other: &LatticeElement) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn add(&self, other: &LatticeElement) -> LatticeElement {
        LatticeElement { a: self.a + other.a, b: self.b + other.b, tau: self.tau.clone() }
    }

    pub fn neg(&self) -> LatticeElement {
        LatticeElement { a: -self.a, b: -self.b, tau: self.tau.clone() }
    }

    pub fn scale(&self, k: i64) -> LatticeElement {
        LatticeElement { a: k * self.a, b: k * self.b, tau: self.tau.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::{NumberRing, SymbolDecl};
    use super::super::value::q;
    use super::*;

    fn setup() -> (NumberRing, Tau) {
        let r = NumberRing::new(vec![SymbolDecl::quadratic("s3", 3), SymbolDecl::transcendental("t")]).unwrap();
        let tau = Tau::new(r.parse("1/2 + 1/2*s3").unwrap()).unwrap();
        (r, tau)
    }

    #[test]
    fn rejects_bad_periods() {
        let (r, _) = setup();
        assert!(Tau::new(r.parse("3").unwrap()).is_err());
        assert!(Tau::new(r.parse("-i").unwrap()).is_err());
        assert!(Tau::new(r.parse("i + s3").unwrap()).is_err());
        assert!(Tau::new(r.parse("i*s3").unwrap()).is_err());
        assert!(Tau::new(r.parse("t").unwrap()).is_ok());
    }

    #[test]
    fn decompose_examples() {
        let (r, tau) = setup();
        assert_eq!(tau.decompose(tau.value()).unwrap(), (q(1, 1), q(0, 1)));
        assert_eq!(tau.decompose(&r.int(5)).unwrap(), (q(0, 1), q(5, 1)));
        let x = &tau.value().scale_int(2) - &r.int(3);
        assert_eq!(tau.decompose(&x).unwrap(), (q(2, 1), q(-3, 1)));
        assert!(matches!(tau.decompose(&r.i()), Err(Error::NotInSpan(_))));
    }

    #[test]
    fn d_form_examples() {
        let (r, tau) = setup();
        assert_eq!(tau.d_form(tau.value(), &r.one()).unwrap(), q(1, 1));
        let x = &tau.value().scale_int(2) + &r.int(3);
        assert_eq!(tau.d_form(&x, &x).unwrap(), q(0, 1));
        let y = tau.value() - &r.one();
        assert_eq!(tau.d_form(&x, &y).unwrap(), q(-5, 1));
    }

    #[test]
    fn lattice_membership() {
        let (r, tau) = setup();
        let x = &tau.value().scale_int(3) - &r.int(7);
        assert!(tau.in_lattice(&x));
        assert!(!tau.in_lattice(&tau.value().scale(&q(1, 2))));
        let te = Tau::new(r.parse("t").unwrap()).unwrap();
        assert!(te.in_lattice(&r.parse("t").unwrap()));
        assert!(!te.in_lattice(&r.parse("i").unwrap()));
    }

    #[test]
    fn im_ratio_examples() {
        let (r, tau) = setup();
        assert_eq!(tau.im_ratio(tau.value()).unwrap(), q(1, 1));
        assert_eq!(tau.im_ratio(&r.int(5)).unwrap(), q(0, 1));
        let x = &tau.value().scale(&q(3, 7)) + &r.rational(2, 5);
        assert_eq!(tau.im_ratio(&x).unwrap(), q(3, 7));
        assert!(tau.im_ratio(&r.i()).is_err());
    }

    #[test]
    fn reduction_into_cell() {
        let (r, tau) = setup();
        let x = &tau.value().scale(&q(7, 3)) - &r.rational(5, 2);
        let red = tau.reduce(&x).unwrap();
        assert_eq!(tau.decompose(&red).unwrap(), (q(1, 3), q(1, 2)));
        assert!(tau.congruent(&x, &red));
        assert!(tau.reduce(&tau.element(3, -4).embed()).unwrap().is_zero());
    }

    #[test]
    fn embedding_round_trip() {
        let (_, tau) = setup();
        let e = tau.element(4, -9);
        assert_eq!(tau.lattice(&e.embed()).unwrap(), e);
        assert_eq!(tau.element(1, 0).d(&tau.element(0, 1)), 1);
    }
}
