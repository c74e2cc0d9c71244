//! The fundamental group as pairs of lattice elements under the twisted
//! product, realized as deck transformations of the cover.

use std::fmt;

use num_bigint::BigInt;

use crate::affine::AffineCoverMap;
use crate::error::Result;
use crate::exactfield::{q, quotient_invariants, to_i64, LatticeElement, NumberValue};
use crate::surface::KodairaData;

/// An element `(x, y)` with `x` in the base lattice and `y` in the fibre lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pi1Element {
    pub x: LatticeElement,
    pub y: LatticeElement,
}

/// `(z, zeta) -> (z + shift_z, zeta + lin_z * z + shift_zeta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDeck {
    pub shift_z: NumberValue,
    pub lin_z: NumberValue,
    pub shift_zeta: NumberValue,
}

impl AffineDeck {
    pub fn to_cover_map(&self) -> AffineCoverMap {
        let ring = self.shift_z.ring();
        AffineCoverMap {
            a_z: ring.one(),
            b_z: self.shift_z.clone(),
            e_zeta: ring.one(),
            q: [self.shift_zeta.clone(), self.lin_z.clone(), ring.zero()],
        }
    }
}

/// Free rank and torsion factors (each > 1, each dividing the next) of a
/// finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub(crate) fn from_quotient(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let torsion = torsion.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
        Ok(AbelianInvariants { free_rank, torsion })
    }
}

impl Pi1Element {
    pub fn new(x: LatticeElement, y: LatticeElement) -> Self {
        Pi1Element { x, y }
    }

    pub fn identity(d: &KodairaData) -> Self {
        Pi1Element { x: d.tau_b().element(0, 0), y: d.tau_e().element(0, 0) }
    }

    /// The element `gamma_1^m1 gamma_2^m2 gamma_3^m3 gamma_4^m4`.
    pub fn from_exponents(m1: i64, m2: i64, m3: i64, m4: i64, d: &KodairaData) -> Self {
        Pi1Element { x: d.tau_b().element(m1, m2), y: d.tau_e().element(m3, m4) }
    }

    /// Exponents `(D(x,1), -D(x,tau_B), D(y,1), -D(y,tau_E))`.
    pub fn to_exponents(&self) -> (i64, i64, i64, i64) {
        let one_b = self.x.tau.element(0, 1);
        let tau_b = self.x.tau.element(1, 0);
        let one_e = self.y.tau.element(0, 1);
        let tau_e = self.y.tau.element(1, 0);
        (self.x.d(&one_b), -self.x.d(&tau_b), self.y.d(&one_e), -self.y.d(&tau_e))
    }

    /// The four standard generators `(tau_B, 0), (1, 0), (0, tau_E), (0, 1)`.
    pub fn generators(d: &KodairaData) -> [Pi1Element; 4] {
        [
            Pi1Element::from_exponents(1, 0, 0, 0, d),
            Pi1Element::from_exponents(0, 1, 0, 0, d),
            Pi1Element::from_exponents(0, 0, 1, 0, d),
            Pi1Element::from_exponents(0, 0, 0, 1, d),
        ]
    }

    /// `(x + x', y + y' + D(x, tau_B) D(x', 1) c)`.
    pub fn star(&self, other: &Pi1Element, d: &KodairaData) -> Pi1Element {
        let tau_b = d.tau_b().element(1, 0);
        let one = d.tau_b().element(0, 1);
        let twist = self.x.d(&tau_b) * other.x.d(&one);
        let c = d.c_lattice();
        Pi1Element { x: self.x.add(&other.x), y: self.y.add(&other.y).add(&c.scale(twist)) }
    }

    /// `(-x, -y + D(x, tau_B) D(x, 1) c)`.
    pub fn inverse(&self, d: &KodairaData) -> Pi1Element {
        let tau_b = d.tau_b().element(1, 0);
        let one = d.tau_b().element(0, 1);
        let twist = self.x.d(&tau_b) * self.x.d(&one);
        Pi1Element { x: self.x.neg(), y: self.y.neg().add(&d.c_lattice().scale(twist)) }
    }

    pub fn commutator(&self, other: &Pi1Element, d: &KodairaData) -> Pi1Element {
        self.star(other, d).star(&self.inverse(d), d).star(&other.inverse(d), d)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Central iff the base component vanishes.
    pub fn is_central(&self) -> bool {
        self.x.is_zero()
    }

    pub fn to_affine(&self, d: &KodairaData) -> AffineDeck {
        let x = self.x.embed();
        let a = self.x.a;
        let shift_zeta = &self.y.embed() + &translation_part(&self.x, d);
        AffineDeck { lin_z: d.c().scale_int(a), shift_z: x, shift_zeta }
    }

    pub fn to_cover_map(&self, d: &KodairaData) -> AffineCoverMap {
        self.to_affine(d).to_cover_map()
    }

    /// Recognizes a deck transformation among cover maps.
    pub fn from_cover_map(map: &AffineCoverMap, d: &KodairaData) -> Option<Pi1Element> {
        if !map.a_z.is_one() || !map.e_zeta.is_one() || !map.q[2].is_zero() {
            return None;
        }
        let x = d.tau_b().lattice(&map.b_z).ok()?;
        if map.q[1] != d.c().scale_int(x.a) {
            return None;
        }
        let y = &map.q[0] - &translation_part(&x, d);
        let y = d.tau_e().lattice(&y).ok()?;
        Some(Pi1Element { x, y })
    }
}

/// `a delta + a(a-1)/2 c tau_B + a b c` for `x = a tau_B + b`: the
/// zeta-translation of the deck map over `x` beyond its fibre part.
fn translation_part(x: &LatticeElement, d: &KodairaData) -> NumberValue {
    let (a, b) = (x.a, x.b);
    let c = d.c();
    let tri = &(c * d.tau_b().value()).scale(&q(a * (a - 1), 2));
    &(&d.delta().scale_int(a) + tri) + &c.scale_int(a * b)
}

impl fmt::Debug for Pi1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m1, m2, m3, m4) = self.to_exponents();
        write!(f, "Pi1({m1}, {m2}, {m3}, {m4})")
    }
}

/// `H_1` of the surface: the abelianization of the deck group, from the Smith
/// form of the exponent vectors of all generator commutators.
pub fn abelianization_invariants(d: &KodairaData) -> Result<AbelianInvariants> {
    let gens = Pi1Element::generators(d);
    let mut rows = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let (m1, m2, m3, m4) = gens[i].commutator(&gens[j], d).to_exponents();
            rows.push(vec![BigInt::from(m1), BigInt::from(m2), BigInt::from(m3), BigInt::from(m4)]);
        }
    }
    let (free, torsion) = quotient_invariants(&rows, 4);
    AbelianInvariants::from_quotient(free, torsion)
}
