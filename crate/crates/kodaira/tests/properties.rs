use kodaira::exactfield::{NumberRing, NumberValue};
use kodaira::fixedlocus::fixed_locus_with;
use kodaira::forms::{pullback, Chart, Poly, PolyForm};
use kodaira::lifts::{power_sequences, MapClass, SpecialLift};
use kodaira::par::Exec;
use kodaira::pi1::Pi1Element;
use kodaira::sample::Sampler;
use kodaira::surface::{change_base_marking, is_isomorphic, KodairaData, Sl2Matrix};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
}

fn value(r: &NumberRing, (a, b, c, d): (i64, i64, i64, i64)) -> NumberValue {
    &r.rational(a, b.unsigned_abs() as i64 + 1) + &r.i().scale(&num_rational::BigRational::new(c.into(), (d.abs() + 1).into()))
}

fn data(seed: u64) -> KodairaData {
    Sampler::new(seed).data()
}

fn lift(seed: u64) -> (KodairaData, SpecialLift) {
    let mut s = Sampler::new(seed);
    let d = s.data();
    let a = s.multiplier(&d).unwrap();
    let l = s.descending_lift(&d, &a).unwrap();
    (d, l)
}

/// A polynomial form of total degree one in the complex chart.
fn form(r: &NumberRing, coeffs: &[(i64, i64, i64, i64)]) -> PolyForm {
    let mut out = PolyForm::zero(r, Chart::Complex);
    for (k, c) in coeffs.iter().enumerate() {
        let p = Poly::var(r, k % 4).add(&Poly::constant(value(r, *c)));
        let q = Poly::var(r, (k + 1) % 4).mul(&p);
        out = out.add(&PolyForm::term(1 << (k % 4), q, Chart::Complex));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in small(), b in small(), c in small()) {
        let r = NumberRing::gaussian();
        let (x, y, z) = (value(&r, a), value(&r, b), value(&r, c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn star_is_a_group_law(seed in 0u64..500, a in small(), b in small(), c in small()) {
        let d = data(seed);
        let g = Pi1Element::from_exponents(a.0, a.1, a.2, a.3, &d);
        let h = Pi1Element::from_exponents(b.0, b.1, b.2, b.3, &d);
        let k = Pi1Element::from_exponents(c.0, c.1, c.2, c.3, &d);
        prop_assert_eq!(g.star(&h, &d).star(&k, &d), g.star(&h.star(&k, &d), &d));
        prop_assert!(g.star(&g.inverse(&d), &d).is_identity());
        prop_assert_eq!(g.star(&h, &d).to_cover_map(&d), g.to_cover_map(&d).compose(&h.to_cover_map(&d)));
        prop_assert!(g.commutator(&h, &d).is_central());
    }

    #[test]
    fn conjugation_is_a_homomorphism(seed in 0u64..500, a in small(), b in small()) {
        let (d, l) = lift(seed);
        prop_assert_ne!(l.descent_check(&d).unwrap(), MapClass::NotDescending);
        let g = Pi1Element::from_exponents(a.0, a.1, a.2, a.3, &d);
        let h = Pi1Element::from_exponents(b.0, b.1, b.2, b.3, &d);
        let lhs = l.conjugate_deck(&d, &g.star(&h, &d)).unwrap();
        let rhs = l.conjugate_deck(&d, &g).unwrap().star(&l.conjugate_deck(&d, &h).unwrap(), &d);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_respects_composition(seed in 0u64..500, a in small()) {
        let mut s = Sampler::new(seed);
        let d = s.data();
        let l1 = s.automorphism_lift(&d).unwrap();
        let l2 = s.automorphism_lift(&d).unwrap();
        let g = Pi1Element::from_exponents(a.0, a.1, a.2, a.3, &d);
        let both = l1.compose(&l2, &d).unwrap();
        prop_assert_eq!(both.descent_check(&d).unwrap(), MapClass::Automorphism);
        let nested = l1.conjugate_deck(&d, &l2.conjugate_deck(&d, &g).unwrap()).unwrap();
        prop_assert_eq!(both.conjugate_deck(&d, &g).unwrap(), nested);
        let inv = l1.invert(&d).unwrap();
        prop_assert!(inv.compose(&l1, &d).unwrap().equal_mod_pi1(&SpecialLift::identity(&d), &d).unwrap());
    }

    #[test]
    fn power_closed_forms(seed in 0u64..500, m in 0u32..8) {
        let mut s = Sampler::new(seed);
        let d = s.data();
        let l = s.automorphism_lift(&d).unwrap();
        let p = l.power(m, &d).unwrap();
        let (b, u, v) = power_sequences(&l, m, &d).unwrap();
        prop_assert_eq!((b, u, v), (p.beta().clone(), p.u(&d).unwrap(), p.v().clone()));
    }

    #[test]
    fn exterior_derivative_squares_to_zero(cs in prop::collection::vec(small(), 1..6)) {
        let r = NumberRing::gaussian();
        let a = form(&r, &cs);
        prop_assert!(a.exterior_d().exterior_d().is_zero());
        prop_assert!(a.dbar().dbar().is_zero());
        prop_assert_eq!(a.del().add(&a.dbar()), a.exterior_d());
    }

    #[test]
    fn pullback_is_functorial(seed in 0u64..500, cs in prop::collection::vec(small(), 1..5)) {
        let mut s = Sampler::new(seed);
        let d = s.data();
        let f = s.automorphism_lift(&d).unwrap().to_cover_map(&d).unwrap();
        let g = s.pi1(&d).to_cover_map(&d);
        let a = form(d.ring(), &cs);
        prop_assert_eq!(pullback(&a, &f.compose(&g)), pullback(&pullback(&a, &f), &g));
        prop_assert_eq!(pullback(&a.exterior_d(), &f), pullback(&a, &f).exterior_d());
    }

    #[test]
    fn fixed_locus_independent_of_execution(seed in 0u64..500) {
        let (d, l) = lift(seed);
        let par = fixed_locus_with(&l, &d, Exec::Parallel);
        let seq = fixed_locus_with(&l, &d, Exec::Sequential);
        prop_assert_eq!(par.ok(), seq.ok());
    }

    #[test]
    fn base_marking_preserves_isomorphism_class(seed in 0u64..500, t in -3i64..=3, invert in any::<bool>()) {
        let d = data(seed);
        let m = if invert { Sl2Matrix::translation(t).mul(&Sl2Matrix::inversion()) } else { Sl2Matrix::translation(t) };
        let e = change_base_marking(&d, &m).unwrap();
        prop_assert!(is_isomorphic(&d, &e).unwrap());
        prop_assert!(is_isomorphic(&e, &d).unwrap());
    }
}
