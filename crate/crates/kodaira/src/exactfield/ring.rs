use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::value::{Monomial, NumberValue};
use crate::error::{Error, Result};

/// How a declared symbol behaves under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// `s * s = -d` with `d` squarefree and positive.
    Quadratic(u64),
    /// Algebraically independent of the rationals and of every other symbol.
    Transcendental,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolDecl {
    pub name: String,
    pub kind: SymbolKind,
}

impl SymbolDecl {
    pub fn quadratic(name: &str, d: u64) -> Self {
        SymbolDecl { name: name.to_string(), kind: SymbolKind::Quadratic(d) }
    }

    pub fn transcendental(name: &str) -> Self {
        SymbolDecl { name: name.to_string(), kind: SymbolKind::Transcendental }
    }
}

#[derive(Debug)]
struct RingInner {
    symbols: Vec<SymbolDecl>,
}

/// The rationals extended by a list of purely imaginary symbols.
///
/// Cloning is cheap; values hold a handle to their ring.
#[derive(Clone)]
pub struct NumberRing(Arc<RingInner>);

const MAX_SYMBOLS: usize = 12;

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn is_perfect_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

impl NumberRing {
    /// Builds a ring from declarations, inserting `i` (d = 1) in front when absent.
    ///
    /// The quadratic symbols must generate a field of full degree: no even-size
    /// subset of them may have a product of `d`s that is a perfect square,
    /// otherwise the ring would contain zero divisors.
    pub fn new(decls: Vec<SymbolDecl>) -> Result<Self> {
        let mut symbols = Vec::with_capacity(decls.len() + 1);
        if !decls.iter().any(|s| s.name == "i") {
            symbols.push(SymbolDecl::quadratic("i", 1));
        }
        symbols.extend(decls);
        if symbols.len() > MAX_SYMBOLS {
            return Err(Error::InvalidRing(format!("at most {MAX_SYMBOLS} symbols are supported")));
        }
        for (k, s) in symbols.iter().enumerate() {
            if !is_identifier(&s.name) {
                return Err(Error::InvalidRing(format!("`{}` is not an identifier", s.name)));
            }
            if symbols[..k].iter().any(|t| t.name == s.name) {
                return Err(Error::InvalidRing(format!("symbol `{}` declared twice", s.name)));
            }
            if let SymbolKind::Quadratic(d) = s.kind {
                if d == 0 || !is_squarefree(d) {
                    return Err(Error::InvalidRing(format!(
                        "`{}`: d = {d} must be a squarefree positive integer",
                        s.name
                    )));
                }
            }
        }
        match symbols.iter().find(|s| s.name == "i") {
            Some(s) if s.kind == SymbolKind::Quadratic(1) => {}
            _ => return Err(Error::InvalidRing("`i` must be declared as quadratic with d = 1".into())),
        }
        let ds: Vec<u64> = symbols
            .iter()
            .filter_map(|s| match s.kind {
                SymbolKind::Quadratic(d) => Some(d),
                SymbolKind::Transcendental => None,
            })
            .collect();
        for mask in 1u32..(1u32 << ds.len()) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let prod = (0..ds.len())
                .filter(|j| mask & (1 << j) != 0)
                .fold(BigInt::from(1), |acc, j| acc * BigInt::from(ds[j]));
            if is_perfect_square(&prod) {
                let names: Vec<&str> = symbols
                    .iter()
                    .filter(|s| matches!(s.kind, SymbolKind::Quadratic(_)))
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, s)| s.name.as_str())
                    .collect();
                return Err(Error::InvalidRing(format!(
                    "quadratic symbols {} are dependent (their product is rational times i^k)",
                    names.join(", ")
                )));
            }
        }
        Ok(NumberRing(Arc::new(RingInner { symbols })))
    }

    /// The Gaussian rationals `Q(i)`.
    pub fn gaussian() -> Self {
        NumberRing::new(Vec::new()).expect("Q(i) is a valid ring")
    }

    pub fn symbols(&self) -> &[SymbolDecl] {
        &self.0.symbols
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.symbols.iter().position(|s| s.name == name)
    }

    pub fn kind(&self, index: usize) -> SymbolKind {
        self.0.symbols[index].kind
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.symbols[index].name
    }

    /// The symbol with the given name as a value.
    pub fn symbol(&self, name: &str) -> Result<NumberValue> {
        let k = self.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(NumberValue::monomial(self, Monomial::unit(self.len(), k, 1), BigRational::from_integer(1.into())))
    }

    /// Index of the quadratic symbol with the given `d`, if declared.
    pub fn quadratic_index(&self, d: u64) -> Option<usize> {
        self.0.symbols.iter().position(|s| s.kind == SymbolKind::Quadratic(d))
    }

    pub fn i(&self) -> NumberValue {
        self.symbol("i").expect("`i` is always declared")
    }

    pub fn zero(&self) -> NumberValue {
        NumberValue::zero(self)
    }

    pub fn one(&self) -> NumberValue {
        NumberValue::integer(self, 1)
    }

    pub fn int(&self, n: i64) -> NumberValue {
        NumberValue::integer(self, n)
    }

    pub fn rational(&self, num: i64, den: i64) -> NumberValue {
        NumberValue::rational(self, BigRational::new(num.into(), den.into()))
    }

    /// Parses an expression such as `1/2 - 3*i*s3 + t^-1`.
    pub fn parse(&self, text: &str) -> Result<NumberValue> {
        super::parse::parse_value(self, text)
    }

    pub fn same(&self, other: &NumberRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.symbols == other.0.symbols
    }
}

impl PartialEq for NumberRing {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for NumberRing {}

impl fmt::Debug for NumberRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .symbols()
            .iter()
            .map(|s| match s.kind {
                SymbolKind::Quadratic(d) => format!("{}^2=-{d}", s.name),
                SymbolKind::Transcendental => format!("{} transcendental", s.name),
            })
            .collect();
        write!(f, "NumberRing[{}]", parts.join(", "))
    }
}
