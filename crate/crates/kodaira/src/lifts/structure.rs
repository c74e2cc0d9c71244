//! Splitting automorphism lifts into a base-translation part and a power of
//! the order-`n` lift, recognizing the kernel of the induced base action, and
//! the invariants of translations modulo that kernel.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::order::{canonical_unit, order_n_lift};
use super::SpecialLift;
use crate::error::{Error, Result};
use crate::exactfield::{integer_kernel, quotient_invariants, IntMatrix, Monomial, NumberValue};
use crate::pi1::{AbelianInvariants, Pi1Element};
use crate::surface::KodairaData;

/// Where an automorphism sits relative to the kernel of its action on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelClass {
    /// The induced base map is not the identity.
    NotInKerPsi,
    /// Translation along the fibres by the given point of the fibre curve.
    FibreTranslation(NumberValue),
    /// A fibre translation varying with the base point.
    GaugeWithHom,
}

/// `l = n_part ∘ f^k` with `n_part` a base translation lift and `f` the
/// canonical order-`n` lift. Returns `(n_part, k)` with `0 <= k < n`.
pub fn factor_semidirect(l: &SpecialLift, d: &KodairaData) -> Result<(SpecialLift, u32)> {
    if !l.is_unit() {
        return Err(Error::InvalidLift(format!("alpha = {} is not a root of unity", l.alpha())));
    }
    let (n, omega) = canonical_unit(d)?;
    let k = (0..n)
        .find(|&k| omega.pow(k) == *l.alpha())
        .ok_or_else(|| Error::NotAUnit(format!("alpha = {} is not a power of {omega}", l.alpha())))?;
    let f = order_n_lift(d, &omega)?;
    let n_part = l.compose(&f.power((n - k) % n, d)?, d)?;
    Ok((n_part, k))
}

pub fn classify_kernel(l: &SpecialLift, d: &KodairaData) -> Result<KernelClass> {
    if !l.alpha().is_one() || !d.tau_b().in_lattice(l.beta()) {
        return Ok(KernelClass::NotInKerPsi);
    }
    let x = d.tau_b().lattice(l.beta())?;
    let deck = SpecialLift::from_deck(&Pi1Element::new(x.neg(), d.tau_e().element(0, 0)), d);
    let normal = deck.compose(l, d)?;
    if !normal.u(d)?.is_zero() {
        return Ok(KernelClass::GaugeWithHom);
    }
    let v = d.tau_e().reduce(normal.v()).unwrap_or_else(|_| normal.v().clone());
    Ok(KernelClass::FibreTranslation(v))
}

/// Invariants of `(Lambda_E x Lambda_E) / K'` where `K'` holds the pairs
/// `(lambda, sigma)` with `sigma tau_B - lambda` in `c * Lambda_B`.
pub fn nk_invariants(d: &KodairaData) -> Result<AbelianInvariants> {
    let r = d.ring();
    let tb = d.tau_b().value();
    let te = d.tau_e().value();
    let c = d.c();
    // Unknowns: lambda = l1 tau_E + l2, sigma = s1 tau_E + s2, and a tau_B + b.
    let columns = [-te, -r.one(), te * tb, tb.clone(), -(c * tb), -c];
    let monomials: BTreeSet<&Monomial> = columns.iter().flat_map(|v| v.terms().map(|(m, _)| m)).collect();
    let mut rows = Vec::with_capacity(monomials.len());
    for m in monomials {
        let coeffs: Vec<_> = columns.iter().map(|v| v.coeff(m)).collect();
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(coeffs.iter().map(|x| (x * &lcm).to_integer()).collect::<Vec<BigInt>>());
    }
    let kernel = integer_kernel(&IntMatrix::from_rows(&rows));
    let projected: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..4].to_vec()).collect();
    let (free, torsion) = quotient_invariants(&projected, 4);
    AbelianInvariants::from_quotient(free, torsion)
}

/// Whether automorphisms induce infinitely many distinct base translations.
pub fn count_base_translations_infinite(d: &KodairaData) -> Result<bool> {
    Ok(nk_invariants(d)?.free_rank >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{NumberRing, SymbolDecl, Tau};
    use crate::lifts::MapClass;

    fn ring() -> NumberRing {
        NumberRing::new(vec![SymbolDecl::quadratic("s3", 3), SymbolDecl::transcendental("p")]).unwrap()
    }

    fn data(r: &NumberRing, tb: &str, te: &str, c: &str, delta: &str) -> KodairaData {
        KodairaData::new(
            Tau::new(r.parse(tb).unwrap()).unwrap(),
            Tau::new(r.parse(te).unwrap()).unwrap(),
            r.parse(c).unwrap(),
            r.parse(delta).unwrap(),
        )
        .unwrap()
    }

    fn inv(free: usize, torsion: &[i64]) -> AbelianInvariants {
        AbelianInvariants { free_rank: free, torsion: torsion.to_vec() }
    }

    #[test]
    fn nk_examples() {
        let r = ring();
        assert_eq!(nk_invariants(&data(&r, "i", "i", "1", "0")).unwrap(), inv(0, &[]));
        for m in [2, 3, 5] {
            let ms = m.to_string();
            assert_eq!(nk_invariants(&data(&r, "i", "p", &ms, "0")).unwrap(), inv(2, &[m, m]));
            assert_eq!(nk_invariants(&data(&r, "p", "p", &ms, "0")).unwrap(), inv(1, &[m, m]));
        }
        assert!(!count_base_translations_infinite(&data(&r, "i", "i", "1", "0")).unwrap());
        assert!(count_base_translations_infinite(&data(&r, "i", "p", "2", "0")).unwrap());
    }

    #[test]
    fn kernel_classes() {
        let r = ring();
        let d = data(&r, "i", "i", "1", "0");
        let pure = SpecialLift::new(r.one(), r.zero(), r.zero(), r.parse("3/2 + 5/4*i").unwrap(), &d).unwrap();
        assert_eq!(
            classify_kernel(&pure, &d).unwrap(),
            KernelClass::FibreTranslation(r.parse("1/2 + 1/4*i").unwrap())
        );
        let gauge = SpecialLift::new(r.one(), r.zero(), r.int(2), r.zero(), &d).unwrap();
        assert_eq!(classify_kernel(&gauge, &d).unwrap(), KernelClass::GaugeWithHom);
        let shifted = SpecialLift::new(r.one(), r.rational(1, 2), r.zero(), r.zero(), &d).unwrap();
        assert_eq!(classify_kernel(&shifted, &d).unwrap(), KernelClass::NotInKerPsi);
        let rot = SpecialLift::new(r.i(), r.zero(), r.zero(), r.zero(), &d).unwrap();
        assert_eq!(classify_kernel(&rot, &d).unwrap(), KernelClass::NotInKerPsi);
    }

    #[test]
    fn deck_lifts_are_trivial_fibre_translations() {
        let r = ring();
        let d = data(&r, "i", "i", "1", "1/3");
        let g = Pi1Element::from_exponents(2, -1, 3, 1, &d);
        let l = SpecialLift::from_deck(&g, &d);
        assert_eq!(classify_kernel(&l, &d).unwrap(), KernelClass::FibreTranslation(r.zero()));
    }

    #[test]
    fn semidirect_examples() {
        let r = ring();
        let d = data(&r, "i", "i", "2", "1/3 - i");
        let (n, omega) = canonical_unit(&d).unwrap();
        let f = order_n_lift(&d, &omega).unwrap();
        let (np, k) = factor_semidirect(&f, &d).unwrap();
        assert_eq!(k, 1);
        assert!(np.equal_mod_pi1(&SpecialLift::identity(&d), &d).unwrap());
        let t = SpecialLift::new(r.one(), r.rational(1, 2), r.zero(), r.int(3), &d).unwrap();
        assert_eq!(t.descent_check(&d).unwrap(), MapClass::Automorphism);
        assert_eq!(factor_semidirect(&t, &d).unwrap(), (t.clone(), 0));
        let l = t.compose(&f.power(3, &d).unwrap(), &d).unwrap();
        let (np, k) = factor_semidirect(&l, &d).unwrap();
        assert_eq!((np.alpha().clone(), k), (r.one(), 3));
        assert_eq!(np.compose(&f.power(k, &d).unwrap(), &d).unwrap(), l);
        assert!(n == 4);
    }
}
