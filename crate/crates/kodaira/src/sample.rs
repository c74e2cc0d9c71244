//! Seeded random surfaces, deck transformations and descending lifts.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactfield::{NumberRing, NumberValue, SymbolDecl, Tau};
use crate::lifts::{canonical_unit, SpecialLift};
use crate::pi1::Pi1Element;
use crate::surface::KodairaData;

pub struct Sampler {
    rng: ChaCha8Rng,
    ring: NumberRing,
}

impl Sampler {
    /// A sampler over the field generated by `i` and `s3` with `s3^2 = -3`.
    pub fn new(seed: u64) -> Self {
        let ring = NumberRing::new(vec![SymbolDecl::quadratic("s3", 3)]).expect("valid declarations");
        Sampler::with_ring(seed, ring)
    }

    /// Samples over `ring`; periods over `s3` fall back to `i` when `s3` is not declared.
    pub fn with_ring(seed: u64, ring: NumberRing) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), ring }
    }

    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn rational(&mut self, num: i64, den: i64) -> BigRational {
        let n = self.int(-num, num);
        let d = self.int(1, den);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Small rational complex number `a + b i`.
    pub fn complex(&mut self) -> NumberValue {
        let a = self.rational(6, 6);
        let b = self.rational(6, 6);
        &NumberValue::rational(&self.ring, a) + &self.ring.i().scale(&b)
    }

    /// A period: one of `i`, `2i`, `(1 + s3)/2` or a random point over `i` or `s3`.
    pub fn tau(&mut self) -> Tau {
        let r = self.ring.clone();
        let text = match self.int(0, 4) {
            0 => "i".to_string(),
            1 => "2*i".to_string(),
            2 if self.ring.index_of("s3").is_some() => "1/2 + 1/2*s3".to_string(),
            2 => "1/2 + i".to_string(),
            k => {
                let re = self.rational(3, 4);
                let im = BigRational::new(BigInt::from(self.int(1, 6)), BigInt::from(self.int(1, 3)));
                let sym = if k == 4 && self.ring.index_of("s3").is_some() { "s3" } else { "i" };
                return Tau::new(&NumberValue::rational(&r, re) + &r.symbol(sym).expect("declared").scale(&im))
                    .expect("positive imaginary part");
            }
        };
        Tau::new(r.parse(&text).expect("valid literal")).expect("valid period")
    }

    pub fn data(&mut self) -> KodairaData {
        let tau_b = self.tau();
        let tau_e = self.tau();
        let c = loop {
            let (a, b) = (self.int(-3, 3), self.int(-3, 3));
            if (a, b) != (0, 0) {
                break tau_e.element(a, b).embed();
            }
        };
        let delta = self.complex();
        KodairaData::new(tau_b, tau_e, c, delta).expect("c lies in the fibre lattice")
    }

    pub fn pi1(&mut self, d: &KodairaData) -> Pi1Element {
        let m: [i64; 4] = std::array::from_fn(|_| self.int(-5, 5));
        Pi1Element::from_exponents(m[0], m[1], m[2], m[3], d)
    }

    /// A random element of the unit group preserving the base lattice.
    pub fn unit(&mut self, d: &KodairaData) -> Result<NumberValue> {
        let (n, omega) = canonical_unit(d)?;
        let k = self.int(0, n as i64 - 1) as u32;
        Ok(omega.pow(k))
    }

    /// A multiplier of the base lattice: a unit, an integer, or `a + b tau_B` when that works.
    pub fn multiplier(&mut self, d: &KodairaData) -> Result<NumberValue> {
        let r = self.ring.clone();
        match self.int(0, 2) {
            0 => self.unit(d),
            1 => Ok(r.int(*[2, -2, 3].get(self.int(0, 2) as usize).expect("in range"))),
            _ => {
                for _ in 0..20 {
                    let (a, b) = (self.int(-2, 2), self.int(-2, 2));
                    let alpha = &r.int(a) + &d.tau_b().value().scale_int(b);
                    if !alpha.is_zero() && SpecialLift::new(alpha.clone(), r.zero(), r.zero(), r.zero(), d).is_ok() {
                        return Ok(alpha);
                    }
                }
                self.unit(d)
            }
        }
    }

    /// A lift with the given multiplier that descends to the surface.
    pub fn descending_lift(&mut self, d: &KodairaData, alpha: &NumberValue) -> Result<SpecialLift> {
        let r = self.ring.clone();
        let te = d.tau_e().clone();
        let sigma10 = te.element(self.int(-3, 3), self.int(-3, 3)).embed();
        let target = te.element(self.int(-3, 3), self.int(-3, 3)).embed();
        let v = self.complex();
        // The second descent value is affine in beta with slope -conj(alpha) c.
        let at_zero = SpecialLift::new(alpha.clone(), r.zero(), sigma10.clone(), v.clone(), d)?.second_condition_value(d)?;
        let beta = (&at_zero - &target).divide(&(&alpha.conjugate() * d.c()))?;
        SpecialLift::new(alpha.clone(), beta, sigma10, v, d)
    }

    pub fn automorphism_lift(&mut self, d: &KodairaData) -> Result<SpecialLift> {
        let alpha = self.unit(d)?;
        self.descending_lift(d, &alpha)
    }

    /// An `alpha = 1` lift `(z + beta, w + u z + v)` with `beta = a tau_B + b`,
    /// `a, b` in `(1/k) Z`, and `u` either `c a` or a random fibre-lattice point.
    /// May fail to descend.
    pub fn translation_lift(&mut self, d: &KodairaData) -> Result<SpecialLift> {
        let r = self.ring.clone();
        let k = self.int(1, 6);
        let a = BigRational::new(BigInt::from(self.int(-6, 6)), BigInt::from(k));
        let b = BigRational::new(BigInt::from(self.int(-6, 6)), BigInt::from(k));
        let beta = &d.tau_b().value().scale(&a) + &NumberValue::rational(&r, b);
        let u = if self.rng.gen_bool(0.5) {
            d.c().scale(&a)
        } else {
            d.tau_e().element(self.int(-2, 2), self.int(-2, 2)).embed()
        };
        let v = self.complex();
        SpecialLift::new(r.one(), beta, u, v, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::MapClass;

    #[test]
    fn lifts_descend() {
        let mut s = Sampler::new(7);
        for _ in 0..20 {
            let d = s.data();
            let alpha = s.multiplier(&d).unwrap();
            let l = s.descending_lift(&d, &alpha).unwrap();
            assert_ne!(l.descent_check(&d).unwrap(), MapClass::NotDescending);
            let a = s.automorphism_lift(&d).unwrap();
            assert_eq!(a.descent_check(&d).unwrap(), MapClass::Automorphism);
        }
    }

    #[test]
    fn gaussian_ring_fallback() {
        let mut s = Sampler::with_ring(5, NumberRing::gaussian());
        for _ in 0..20 {
            let d = s.data();
            assert!(d.ring().same(&NumberRing::gaussian()));
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let mut a = Sampler::new(3);
        let mut b = Sampler::new(3);
        for _ in 0..5 {
            assert_eq!(a.data(), b.data());
        }
    }
}
