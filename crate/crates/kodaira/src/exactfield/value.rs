use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{NumberRing, SymbolKind};
use crate::error::{Error, Result};

/// Exponent vector over the ring's symbols.
///
/// Quadratic symbols carry exponent 0 or 1. Transcendental symbols may carry
/// any integer exponent, so monomials in them are units.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn unit(n: usize, index: usize, exp: i32) -> Self {
        let mut e = vec![0; n];
        e[index] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Sum of exponents; its parity decides the sign under conjugation.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn weight(&self) -> i64 {
        self.0.iter().map(|&e| (e as i64).abs()).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact element of a [`NumberRing`].
///
/// Arithmetic operators panic when the operands live in different rings; the
/// `checked_*` methods report [`Error::RingMismatch`] instead.
#[derive(Clone)]
pub struct NumberValue {
    ring: NumberRing,
    terms: BTreeMap<Monomial, BigRational>,
}

pub(crate) fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl NumberValue {
    pub fn zero(ring: &NumberRing) -> Self {
        NumberValue { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn integer(ring: &NumberRing, n: i64) -> Self {
        Self::rational(ring, BigRational::from_integer(n.into()))
    }

    pub fn rational(ring: &NumberRing, r: BigRational) -> Self {
        Self::monomial(ring, Monomial::one(ring.len()), r)
    }

    pub fn monomial(ring: &NumberRing, m: Monomial, coeff: BigRational) -> Self {
        assert_eq!(m.0.len(), ring.len(), "monomial arity does not match ring");
        let mut v = NumberValue::zero(ring);
        v.push(m, coeff);
        v
    }

    /// Builds a value from raw terms, reducing quadratic exponents.
    pub fn from_terms(ring: &NumberRing, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Result<Self> {
        let mut v = NumberValue::zero(ring);
        for (m, c) in terms {
            if m.0.len() != ring.len() {
                return Err(Error::Parse("monomial arity does not match ring".into()));
            }
            let one = NumberValue::monomial(ring, Monomial::one(ring.len()), c);
            let mut factor = one;
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match ring.kind(k) {
                    SymbolKind::Quadratic(_) if e < 0 => {
                        return Err(Error::Parse(format!("negative exponent on quadratic symbol `{}`", ring.name(k))))
                    }
                    SymbolKind::Quadratic(_) => {
                        let s = NumberValue::monomial(ring, Monomial::unit(ring.len(), k, 1), BigRational::one());
                        factor = &factor * &s.pow(e as u32);
                    }
                    SymbolKind::Transcendental => {
                        let s = NumberValue::monomial(ring, Monomial::unit(ring.len(), k, e), BigRational::one());
                        factor = &factor * &s;
                    }
                }
            }
            v = &v + &factor;
        }
        Ok(v)
    }

    fn push(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    /// Terms in canonical order: by total weight, constant first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.ring.len()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn conjugate(&self) -> Self {
        let mut out = NumberValue::zero(&self.ring);
        for (m, c) in &self.terms {
            let c = if m.degree() % 2 == 0 { c.clone() } else { -c.clone() };
            out.terms.insert(m.clone(), c);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.keys().all(|m| m.degree() % 2 == 0)
    }

    /// Real part: the even-degree terms.
    pub fn re(&self) -> Self {
        self.filter(|m| m.degree() % 2 == 0)
    }

    /// Imaginary part `(x - conj x) / 2i`, itself a real value.
    pub fn im(&self) -> Self {
        let odd = self.filter(|m| m.degree() % 2 != 0);
        -(&odd * &self.ring.i())
    }

    /// `x * conj(x)`, always real.
    pub fn abs2(&self) -> Self {
        self * &self.conjugate()
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        NumberValue {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return NumberValue::zero(&self.ring);
        }
        NumberValue {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(n.into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let n = self.ring.len();
        let mut out = NumberValue::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut exps = Vec::with_capacity(n);
                let mut coeff = c1 * c2;
                for k in 0..n {
                    let e = m1.0[k] + m2.0[k];
                    match self.ring.kind(k) {
                        SymbolKind::Quadratic(d) if e == 2 => {
                            coeff *= BigRational::from_integer(-BigInt::from(d));
                            exps.push(0);
                        }
                        _ => exps.push(e),
                    }
                }
                out.push(Monomial(exps), coeff);
            }
        }
        Ok(out)
    }

    /// Flips the sign of one quadratic symbol.
    fn flip(&self, k: usize) -> Self {
        NumberValue {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.0[k] == 1 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse.
    ///
    /// Succeeds when every term shares one transcendental monomial; the
    /// remaining quadratic factor is inverted by clearing one symbol at a time
    /// with partial conjugates.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.ring.len();
        let transcendental: Vec<usize> =
            (0..n).filter(|&k| self.ring.kind(k) == SymbolKind::Transcendental).collect();
        let first = self.terms.keys().next().expect("nonzero value has a term");
        let shared: Vec<i32> = transcendental.iter().map(|&k| first.0[k]).collect();
        for m in self.terms.keys() {
            if transcendental.iter().zip(&shared).any(|(&k, &e)| m.0[k] != e) {
                return Err(Error::NotInvertible(format!("{self} mixes transcendental monomials")));
            }
        }
        let mut shift = vec![0; n];
        for (&k, &e) in transcendental.iter().zip(&shared) {
            shift[k] = -e;
        }
        let shift = NumberValue::monomial(&self.ring, Monomial(shift), BigRational::one());
        let mut den = self * &shift;
        let mut num = self.ring.one();
        for k in 0..n {
            if matches!(self.ring.kind(k), SymbolKind::Quadratic(_)) && den.terms.keys().any(|m| m.0[k] == 1) {
                let f = den.flip(k);
                num = &num * &f;
                den = &den * &f;
            }
        }
        let r = den.as_rational().expect("partial conjugates clear every quadratic symbol");
        Ok((&num * &shift).scale(&(BigRational::one() / r)))
    }

    pub fn divide(&self, y: &Self) -> Result<Self> {
        self.check_ring(y)?;
        Ok(self * &y.inverse()?)
    }
}

impl PartialEq for NumberValue {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for NumberValue {}

impl std::hash::Hash for NumberValue {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Ord for NumberValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl PartialOrd for NumberValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&NumberValue> for &NumberValue {
            type Output = NumberValue;
            fn $method(self, rhs: &NumberValue) -> NumberValue {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $trait<NumberValue> for NumberValue {
            type Output = NumberValue;
            fn $method(self, rhs: NumberValue) -> NumberValue {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&NumberValue> for NumberValue {
            type Output = NumberValue;
            fn $method(self, rhs: &NumberValue) -> NumberValue {
                (&self).$method(rhs)
            }
        }
        impl $trait<NumberValue> for &NumberValue {
            type Output = NumberValue;
            fn $method(self, rhs: NumberValue) -> NumberValue {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &NumberValue {
    type Output = NumberValue;
    fn neg(self) -> NumberValue {
        NumberValue {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for NumberValue {
    type Output = NumberValue;
    fn neg(self) -> NumberValue {
        -&self
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for NumberValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if m.is_one() || !mag.is_one() {
                factors.push(fmt_rational(&mag));
            }
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.name(k).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.name(k), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NumberValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberValue({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::SymbolDecl;
    use super::*;

    fn ring() -> NumberRing {
        NumberRing::new(vec![SymbolDecl::quadratic("s3", 3), SymbolDecl::transcendental("t")]).unwrap()
    }

    #[test]
    fn additive_identity() {
        let r = ring();
        let x = r.parse("2 - 3*i*t + 1/2*s3").unwrap();
        assert_eq!(&r.zero() + &x, x);
    }

    #[test]
    fn defining_relations() {
        let r = ring();
        assert_eq!(&r.i() * &r.i(), r.int(-1));
        let s = r.symbol("s3").unwrap();
        let a = &r.int(2) + &s;
        let b = &r.int(2) - &s;
        assert_eq!(&a * &b, r.int(7));
    }

    #[test]
    fn conjugation_signs() {
        let r = ring();
        assert_eq!(r.int(3).conjugate(), r.int(3));
        assert_eq!(r.parse("1 + i").unwrap().conjugate(), r.parse("1 - i").unwrap());
        let st = r.parse("s3*t").unwrap();
        assert_eq!(st.conjugate(), st);
        let tinv = r.parse("t^-1").unwrap();
        assert_eq!(tinv.conjugate(), -&tinv);
    }

    #[test]
    fn division_examples() {
        let r = ring();
        let x = r.parse("3 + s3*t").unwrap();
        assert_eq!(x.divide(&r.one()).unwrap(), x);
        assert_eq!(r.one().divide(&r.i()).unwrap(), -r.i());
        assert_eq!(r.parse("2 + 2*i").unwrap().divide(&r.parse("1 + i").unwrap()).unwrap(), r.int(2));
        let y = r.parse("1 + i + s3 + i*s3").unwrap();
        let z = x.divide(&y).unwrap();
        assert_eq!(&z * &y, x);
    }

    #[test]
    fn transcendental_inverses() {
        let r = ring();
        let t = r.symbol("t").unwrap();
        assert_eq!(&t * &t.inverse().unwrap(), r.one());
        let y = r.parse("2*t + 3*i*t").unwrap();
        assert_eq!(&y * &y.inverse().unwrap(), r.one());
        assert!(matches!(r.parse("1 + t").unwrap().inverse(), Err(Error::NotInvertible(_))));
        assert_eq!(r.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn real_and_imaginary_parts() {
        let r = ring();
        let x = r.parse("1/2 + 3*i + s3").unwrap();
        assert_eq!(x.re(), r.parse("1/2").unwrap());
        assert!(x.im().is_real());
        let back = &x.re() + &(&x.im() * &r.i());
        assert_eq!(back, x);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring().one();
        let b = NumberRing::gaussian().one();
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn display_is_canonical() {
        let r = ring();
        let x = r.parse("t^-1 - 1/2 + i*s3 - i").unwrap();
        assert_eq!(x.to_string(), "-1/2 - i + t^-1 + i*s3");
        assert_eq!(r.parse(&x.to_string()).unwrap(), x);
    }
}
