//! Maps of the universal cover of the form
//! `(z, zeta) -> (a z + b, e zeta + q0 + q1 z + q2 z^2)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{NumberRing, NumberValue};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineCoverMap {
    pub a_z: NumberValue,
    pub b_z: NumberValue,
    pub e_zeta: NumberValue,
    /// Coefficients of the polynomial in `z`, constant term first.
    pub q: [NumberValue; 3],
}

impl AffineCoverMap {
    pub fn identity(ring: &NumberRing) -> Self {
        AffineCoverMap {
            a_z: ring.one(),
            b_z: ring.zero(),
            e_zeta: ring.one(),
            q: [ring.zero(), ring.zero(), ring.zero()],
        }
    }

    pub fn ring(&self) -> &NumberRing {
        self.a_z.ring()
    }

    pub fn apply(&self, z: &NumberValue, zeta: &NumberValue) -> (NumberValue, NumberValue) {
        let w = &(&self.a_z * z) + &self.b_z;
        let poly = &(&self.q[0] + &(&self.q[1] * z)) + &(&self.q[2] * &(z * z));
        (w, &(&self.e_zeta * zeta) + &poly)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineCoverMap) -> AffineCoverMap {
        let (fa, fb, fe, fq) = (&self.a_z, &self.b_z, &self.e_zeta, &self.q);
        let (ga, gb, ge, gq) = (&inner.a_z, &inner.b_z, &inner.e_zeta, &inner.q);
        let q0 = &(&(fe * &gq[0]) + &fq[0]) + &(&(&fq[1] * gb) + &(&fq[2] * &(gb * gb)));
        let q1 = &(&(fe * &gq[1]) + &(&fq[1] * ga)) + (&fq[2] * &(ga * gb)).scale_int(2);
        let q2 = &(fe * &gq[2]) + &(&fq[2] * &(ga * ga));
        AffineCoverMap { a_z: fa * ga, b_z: &(fa * gb) + fb, e_zeta: fe * ge, q: [q0, q1, q2] }
    }

    pub fn inverse(&self) -> Result<AffineCoverMap> {
        let inv_a = self.a_z.inverse().map_err(|e| Error::NotInvertible(format!("z-coefficient: {e}")))?;
        let inv_e = self.e_zeta.inverse().map_err(|e| Error::NotInvertible(format!("zeta-coefficient: {e}")))?;
        let b = -(&inv_a * &self.b_z);
        let q = &self.q;
        let c0 = &(&q[0] + &(&q[1] * &b)) + &(&q[2] * &(&b * &b));
        let c1 = &(&q[1] * &inv_a) + (&q[2] * &(&inv_a * &b)).scale_int(2);
        let c2 = &q[2] * &(&inv_a * &inv_a);
        Ok(AffineCoverMap {
            a_z: inv_a,
            b_z: b,
            e_zeta: inv_e.clone(),
            q: [-(&inv_e * &c0), -(&inv_e * &c1), -(&inv_e * &c2)],
        })
    }

    /// `self ∘ g ∘ self^-1`.
    pub fn conjugate(&self, g: &AffineCoverMap) -> Result<AffineCoverMap> {
        Ok(self.compose(g).compose(&self.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineCoverMap::identity(self.ring())
    }
}

impl fmt::Debug for AffineCoverMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(z, w) -> (({})z + ({}), ({})w + ({}) + ({})z + ({})z^2)",
            self.a_z, self.b_z, self.e_zeta, self.q[0], self.q[1], self.q[2]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(r: &NumberRing) -> AffineCoverMap {
        AffineCoverMap {
            a_z: r.parse("1 + i").unwrap(),
            b_z: r.parse("1/2 - 3*i").unwrap(),
            e_zeta: r.int(2),
            q: [r.parse("i").unwrap(), r.parse("2 - i").unwrap(), r.parse("1/3*i").unwrap()],
        }
    }

    #[test]
    fn compose_matches_pointwise_evaluation() {
        let r = NumberRing::gaussian();
        let f = sample(&r);
        let g = AffineCoverMap {
            a_z: r.parse("-i").unwrap(),
            b_z: r.int(3),
            e_zeta: r.int(1),
            q: [r.int(1), r.parse("5*i").unwrap(), r.int(-2)],
        };
        let fg = f.compose(&g);
        for (z, w) in [("0", "0"), ("1 + 2*i", "-3"), ("7/2", "i")] {
            let (z, w) = (r.parse(z).unwrap(), r.parse(w).unwrap());
            let (z1, w1) = g.apply(&z, &w);
            assert_eq!(fg.apply(&z, &w), f.apply(&z1, &w1));
        }
    }

    #[test]
    fn inverse_round_trips() {
        let r = NumberRing::gaussian();
        let f = sample(&r);
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).is_identity());
        assert!(inv.compose(&f).is_identity());
    }

    #[test]
    fn singular_map_is_rejected() {
        let r = NumberRing::gaussian();
        let mut f = sample(&r);
        f.e_zeta = r.zero();
        assert!(f.inverse().is_err());
    }
}
