//! Special lifts of surjective endomorphisms to the universal cover, their
//! descent conditions, and the group they form.

mod order;
mod structure;

pub use order::{canonical_unit, order_n_lift, power_sequences, unit_group_order, unit_order};
pub use structure::{
    classify_kernel, count_base_translations_infinite, factor_semidirect, nk_invariants, KernelClass,
};

use std::fmt;

use num_rational::BigRational;

use crate::affine::AffineCoverMap;
use crate::error::{Error, Result};
use crate::exactfield::{q, NumberValue};
use crate::pi1::Pi1Element;
use crate::surface::KodairaData;

/// `(z, zeta) -> (alpha z + beta, |alpha|^2 zeta + 1/2 D(alpha,1) c alpha z^2 + u z + v)`
/// with the z-coefficient `u` determined by `sigma10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpecialLift {
    alpha: NumberValue,
    beta: NumberValue,
    sigma10: NumberValue,
    v: NumberValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapClass {
    NotDescending,
    Endomorphism,
    Automorphism,
}

/// Both lattice conditions of the descent test with the offending values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub sigma10_in_lattice: bool,
    /// The value required to lie in the fibre lattice by the second condition.
    pub second_value: NumberValue,
    pub second_in_lattice: bool,
    pub class: MapClass,
}

/// `delta - c tau_B / 2`.
pub fn epsilon(d: &KodairaData) -> NumberValue {
    d.delta() - &(d.c() * d.tau_b().value()).scale(&q(1, 2))
}

fn dform(d: &KodairaData, x: &NumberValue, y: &NumberValue) -> Result<BigRational> {
    d.tau_b().d_form(x, y)
}

impl SpecialLift {
    /// Checks `alpha != 0`, `alpha * Lambda_B` inside `Lambda_B` and `|alpha|^2` integral.
    pub fn new(
        alpha: NumberValue,
        beta: NumberValue,
        sigma10: NumberValue,
        v: NumberValue,
        d: &KodairaData,
    ) -> Result<Self> {
        let ring = d.ring();
        for x in [&alpha, &beta, &sigma10, &v] {
            if !ring.same(x.ring()) {
                return Err(Error::RingMismatch);
            }
        }
        if alpha.is_zero() {
            return Err(Error::InvalidLift("alpha must be nonzero".into()));
        }
        let tb = d.tau_b();
        if !tb.in_lattice(&alpha) || !tb.in_lattice(&(&alpha * tb.value())) {
            return Err(Error::InvalidLift(format!("alpha = {alpha} does not preserve the base lattice")));
        }
        if alpha.abs2().as_integer().is_none() {
            return Err(Error::InvalidLift(format!("|alpha|^2 = {} is not an integer", alpha.abs2())));
        }
        Ok(SpecialLift { alpha, beta, sigma10, v })
    }

    pub fn identity(d: &KodairaData) -> Self {
        let r = d.ring();
        SpecialLift { alpha: r.one(), beta: r.zero(), sigma10: r.zero(), v: r.zero() }
    }

    /// The lift of a deck transformation.
    pub fn from_deck(g: &Pi1Element, d: &KodairaData) -> Self {
        SpecialLift::from_cover_map(&g.to_cover_map(d), d).expect("deck maps are special lifts")
    }

    pub fn alpha(&self) -> &NumberValue {
        &self.alpha
    }

    pub fn beta(&self) -> &NumberValue {
        &self.beta
    }

    pub fn sigma10(&self) -> &NumberValue {
        &self.sigma10
    }

    pub fn v(&self) -> &NumberValue {
        &self.v
    }

    pub fn with_v(&self, v: NumberValue) -> Self {
        SpecialLift { v, ..self.clone() }
    }

    pub fn is_unit(&self) -> bool {
        self.alpha.abs2().is_one()
    }

    /// Coefficient of `z^2` in the fibre coordinate.
    pub fn quadratic_coeff(&self, d: &KodairaData) -> Result<NumberValue> {
        let da1 = dform(d, &self.alpha, &d.ring().one())?;
        Ok((d.c() * &self.alpha).scale(&(da1 * q(1, 2))))
    }

    /// `sigma10 + D(alpha,1)(c beta + eps - D(alpha,tau_B) c / 2)`.
    pub fn u(&self, d: &KodairaData) -> Result<NumberValue> {
        let one = d.ring().one();
        let da1 = dform(d, &self.alpha, &one)?;
        let dat = dform(d, &self.alpha, d.tau_b().value())?;
        let inner = &(&(d.c() * &self.beta) + &epsilon(d)) - &d.c().scale(&(dat * q(1, 2)));
        Ok(&self.sigma10 + &inner.scale(&da1))
    }

    pub fn to_cover_map(&self, d: &KodairaData) -> Result<AffineCoverMap> {
        Ok(AffineCoverMap {
            a_z: self.alpha.clone(),
            b_z: self.beta.clone(),
            e_zeta: self.alpha.abs2(),
            q: [self.v.clone(), self.u(d)?, self.quadratic_coeff(d)?],
        })
    }

    /// Reads a cover map of the special form back as a lift.
    pub fn from_cover_map(map: &AffineCoverMap, d: &KodairaData) -> Result<Self> {
        let r = d.ring();
        let mut lift = SpecialLift::new(map.a_z.clone(), map.b_z.clone(), r.zero(), map.q[0].clone(), d)?;
        if map.e_zeta != lift.alpha.abs2() {
            return Err(Error::InvalidLift(format!(
                "fibre coefficient {} differs from |alpha|^2 = {}",
                map.e_zeta,
                lift.alpha.abs2()
            )));
        }
        if map.q[2] != lift.quadratic_coeff(d)? {
            return Err(Error::InvalidLift(format!("quadratic coefficient {} is not of special form", map.q[2])));
        }
        let offset = lift.u(d)?;
        lift.sigma10 = &map.q[1] - &offset;
        Ok(lift)
    }

    /// `sigma10 tau_B - conj(alpha)(c beta + (1 - alpha) eps)
    ///  + c/2 D(alpha,1)(D(alpha tau_B,1)|tau_B|^2 - D(alpha,tau_B) tau_B)`.
    pub fn second_condition_value(&self, d: &KodairaData) -> Result<NumberValue> {
        let r = d.ring();
        let tau = d.tau_b().value();
        let one = r.one();
        let eps = epsilon(d);
        let da1 = dform(d, &self.alpha, &one)?;
        let dat = dform(d, &self.alpha, tau)?;
        let dat1 = dform(d, &(&self.alpha * tau), &one)?;
        let bracket = &(d.c() * &self.beta) + &(&(&one - &self.alpha) * &eps);
        let norm_tau = tau.abs2();
        let tail = &norm_tau.scale(&dat1) - &tau.scale(&dat);
        let tail = (d.c() * &tail).scale(&(da1 * q(1, 2)));
        Ok(&(&(&self.sigma10 * tau) - &(&self.alpha.conjugate() * &bracket)) + &tail)
    }

    pub fn descent_report(&self, d: &KodairaData) -> Result<DescentReport> {
        let te = d.tau_e();
        let first = te.in_lattice(&self.sigma10);
        let second_value = self.second_condition_value(d)?;
        let second = te.in_lattice(&second_value);
        let class = if !(first && second) {
            MapClass::NotDescending
        } else if self.is_unit() {
            MapClass::Automorphism
        } else {
            MapClass::Endomorphism
        };
        Ok(DescentReport { sigma10_in_lattice: first, second_value, second_in_lattice: second, class })
    }

    pub fn descent_check(&self, d: &KodairaData) -> Result<MapClass> {
        Ok(self.descent_report(d)?.class)
    }

    /// Fibre component of the image of the deck transformation `g`.
    pub fn sigma_map(&self, d: &KodairaData, g: &Pi1Element) -> Result<NumberValue> {
        let r = d.ring();
        let one = r.one();
        let tau = d.tau_b().value();
        let x = g.x.embed();
        let ax = &self.alpha * &x;
        let n2 = self.alpha.abs2();
        let eps = epsilon(d);
        let dx1 = dform(d, &x, &one)?;
        let dxt = dform(d, &x, tau)?;
        let dax1 = dform(d, &ax, &one)?;
        let daxt = dform(d, &ax, tau)?;
        let da1 = dform(d, &self.alpha, &one)?;
        let dat = dform(d, &self.alpha, tau)?;
        let bracket = &(d.c() * &self.beta) + &(&(&one - &self.alpha) * &eps);
        let lin = &(&self.sigma10 * &x) - &(&self.alpha.conjugate() * &bracket).scale(&dx1);
        let quad_real = &(&dax1 * &daxt) - &(&dx1 * &dxt) * n2.as_rational().expect("integral norm");
        let quad = &d.c().scale(&(quad_real * q(1, 2))) - &(d.c() * &x).scale(&(da1 * dat * q(1, 2)));
        let value = &(&lin + &quad) + &(&n2 * &g.y.embed());
        if !d.tau_e().in_lattice(&value) {
            return Err(Error::LatticeViolation(format!("sigma({g:?}) = {value} is not in the fibre lattice")));
        }
        Ok(value)
    }

    /// The deck transformation `Phi g Phi^-1`.
    pub fn conjugate_deck(&self, d: &KodairaData, g: &Pi1Element) -> Result<Pi1Element> {
        let ax = &self.alpha * &g.x.embed();
        let x = d.tau_b().lattice(&ax).map_err(|e| Error::LatticeViolation(e.to_string()))?;
        let y = d.tau_e().lattice(&self.sigma_map(d, g)?).map_err(|e| Error::LatticeViolation(e.to_string()))?;
        Ok(Pi1Element::new(x, y))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SpecialLift, d: &KodairaData) -> Result<SpecialLift> {
        SpecialLift::from_cover_map(&self.to_cover_map(d)?.compose(&other.to_cover_map(d)?), d)
    }

    /// Inverse lift; only automorphism lifts are invertible in the group.
    pub fn invert(&self, d: &KodairaData) -> Result<SpecialLift> {
        if !self.is_unit() {
            return Err(Error::NotInvertible(format!("alpha = {} is not a root of unity", self.alpha)));
        }
        SpecialLift::from_cover_map(&self.to_cover_map(d)?.inverse()?, d)
    }

    /// `m`-fold composite by repeated composition.
    pub fn power(&self, m: u32, d: &KodairaData) -> Result<SpecialLift> {
        let mut acc = SpecialLift::identity(d);
        for _ in 0..m {
            acc = self.compose(&acc, d)?;
        }
        Ok(acc)
    }

    /// Whether both lifts induce the same map on the surface.
    pub fn equal_mod_pi1(&self, other: &SpecialLift, d: &KodairaData) -> Result<bool> {
        if self.alpha != other.alpha {
            return Ok(false);
        }
        let diff = self.to_cover_map(d)?.compose(&other.to_cover_map(d)?.inverse()?);
        Ok(Pi1Element::from_cover_map(&diff, d).is_some())
    }
}

impl fmt::Debug for SpecialLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpecialLift(alpha = {}, beta = {}, sigma10 = {}, v = {})", self.alpha, self.beta, self.sigma10, self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{NumberRing, Tau};

    fn data(tb: &str, te: &str, c: &str, delta: &str) -> KodairaData {
        let r = NumberRing::gaussian();
        KodairaData::new(
            Tau::new(r.parse(tb).unwrap()).unwrap(),
            Tau::new(r.parse(te).unwrap()).unwrap(),
            r.parse(c).unwrap(),
            r.parse(delta).unwrap(),
        )
        .unwrap()
    }

    fn lift(d: &KodairaData, a: &str, b: &str, s: &str, v: &str) -> SpecialLift {
        let r = d.ring();
        SpecialLift::new(r.parse(a).unwrap(), r.parse(b).unwrap(), r.parse(s).unwrap(), r.parse(v).unwrap(), d).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        let d = data("i", "i", "2", "i");
        assert!(epsilon(&d).is_zero());
        let d = data("i", "i", "2", "0");
        assert_eq!(epsilon(&d), d.ring().parse("-i").unwrap());
    }

    #[test]
    fn rejects_invalid_alpha() {
        let d = data("2*i", "i", "1", "0");
        let r = d.ring();
        assert!(SpecialLift::new(r.i(), r.zero(), r.zero(), r.zero(), &d).is_err());
        assert!(SpecialLift::new(r.zero(), r.zero(), r.zero(), r.zero(), &d).is_err());
        assert!(SpecialLift::new(r.rational(1, 2), r.zero(), r.zero(), r.zero(), &d).is_err());
        assert!(SpecialLift::new(r.int(3), r.zero(), r.zero(), r.zero(), &d).is_ok());
    }

    #[test]
    fn translation_descends_and_fixes_fibre_generators() {
        // c beta in the fibre lattice makes the translation descend.
        let d = data("i", "i", "2", "0");
        let l = lift(&d, "1", "1/2", "0", "0");
        assert_eq!(l.descent_check(&d).unwrap(), MapClass::Automorphism);
        let [g1, g2, g3, g4] = Pi1Element::generators(&d);
        assert_eq!(l.conjugate_deck(&d, &g2).unwrap(), g2);
        assert_eq!(l.conjugate_deck(&d, &g3).unwrap(), g3);
        assert_eq!(l.conjugate_deck(&d, &g4).unwrap(), g4);
        assert!(l.conjugate_deck(&d, &g1).unwrap().x == g1.x);
    }

    #[test]
    fn bundle_action_sends_first_generator_to_twisted_one() {
        let d = data("i", "i", "1", "1/2*i");
        let l = lift(&d, "1", "0", "2", "0");
        assert_eq!(l.u(&d).unwrap(), d.ring().int(2));
        assert_eq!(l.descent_check(&d).unwrap(), MapClass::Automorphism);
        let [g1, g2, g3, g4] = Pi1Element::generators(&d);
        assert_eq!(l.conjugate_deck(&d, &g1).unwrap(), g1.star(&g3.star(&g3, &d), &d));
        assert_eq!(l.conjugate_deck(&d, &g2).unwrap(), g2.star(&g4.star(&g4, &d), &d));
        for g in [g3, g4] {
            assert_eq!(l.conjugate_deck(&d, &g).unwrap(), g);
        }
    }

    #[test]
    fn half_fibre_period_does_not_descend() {
        let d = data("i", "i", "1", "0");
        let l = lift(&d, "1", "0", "1/2*i", "0");
        let rep = l.descent_report(&d).unwrap();
        assert!(!rep.sigma10_in_lattice);
        assert_eq!(rep.class, MapClass::NotDescending);
    }

    #[test]
    fn second_condition_is_sigma_at_tau() {
        let d = data("i", "2*i", "4*i", "1/3");
        let l = lift(&d, "i", "1/5 + 2*i", "7/3", "1");
        let g1 = Pi1Element::generators(&d)[0].clone();
        let direct = l.second_condition_value(&d).unwrap();
        match l.sigma_map(&d, &g1) {
            Ok(s) => assert_eq!(s, direct),
            Err(Error::LatticeViolation(msg)) => assert!(msg.contains(&direct.to_string())),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn sigma_on_fibre_generators() {
        let d = data("i", "i", "2", "0");
        let l = lift(&d, "1", "1/2", "0", "0");
        let [_, _, g3, g4] = Pi1Element::generators(&d);
        assert_eq!(l.sigma_map(&d, &g4).unwrap(), d.ring().one());
        assert_eq!(l.sigma_map(&d, &g3).unwrap(), d.tau_e().value().clone());
        let g = Pi1Element::from_exponents(0, 1, 0, 0, &d);
        assert_eq!(l.sigma_map(&d, &g).unwrap(), l.sigma10().clone());
    }

    #[test]
    fn endomorphism_with_non_unit_alpha() {
        // alpha = 1 + i has |alpha|^2 = 2; search sigma10 over small lattice elements.
        let d = data("i", "i", "2", "0");
        let r = d.ring();
        let mut found = None;
        'outer: for a in -2..=2 {
            for b in -2..=2 {
                let s = d.tau_e().element(a, b).embed();
                let l = SpecialLift::new(r.parse("1 + i").unwrap(), r.zero(), s, r.zero(), &d).unwrap();
                if l.descent_check(&d).unwrap() != MapClass::NotDescending {
                    found = Some(l);
                    break 'outer;
                }
            }
        }
        let l = found.expect("some sigma10 descends");
        assert_eq!(l.descent_check(&d).unwrap(), MapClass::Endomorphism);
        assert!(l.invert(&d).is_err());
    }

    #[test]
    fn cover_map_round_trip_and_identity() {
        let d = data("i", "i", "2", "1/3");
        let l = lift(&d, "i", "1/2 + i", "3", "5/7");
        let back = SpecialLift::from_cover_map(&l.to_cover_map(&d).unwrap(), &d).unwrap();
        assert_eq!(back, l);
        let id = SpecialLift::identity(&d);
        assert_eq!(l.compose(&id, &d).unwrap(), l);
        assert_eq!(id.compose(&l, &d).unwrap(), l);
        assert_eq!(id.invert(&d).unwrap(), id);
        assert_eq!(l.power(0, &d).unwrap(), id);
        assert_eq!(l.power(1, &d).unwrap(), l);
    }

    #[test]
    fn translation_inverse_matches_closed_form() {
        let d = data("i", "i", "2", "0");
        let l = lift(&d, "1", "1/2", "2*i", "1/3");
        let inv = l.invert(&d).unwrap();
        let b = l.beta();
        let s = l.sigma10();
        assert_eq!(inv.beta(), &-b);
        assert_eq!(inv.u(&d).unwrap(), -s);
        assert_eq!(inv.v(), &(&(s * b) - l.v()));
        assert_eq!(l.compose(&inv, &d).unwrap(), SpecialLift::identity(&d));
    }

    #[test]
    fn equal_mod_pi1_examples() {
        let d = data("i", "i", "2", "0");
        let l = lift(&d, "1", "1/2", "0", "0");
        let deck = SpecialLift::from_deck(&Pi1Element::from_exponents(1, 2, -1, 0, &d), &d);
        assert!(l.equal_mod_pi1(&deck.compose(&l, &d).unwrap(), &d).unwrap());
        assert!(l.equal_mod_pi1(&l.with_v(l.v() + &d.ring().one()), &d).unwrap());
        assert!(!l.equal_mod_pi1(&l.with_v(l.v() + &d.ring().rational(1, 2)), &d).unwrap());
        let rot = lift(&d, "-1", "0", "0", "0");
        assert!(!l.equal_mod_pi1(&rot, &d).unwrap());
    }
}
