//! The invariant 1-forms on the universal cover, in complex and real
//! coordinates, and the identities they satisfy.

use super::poly::{Chart, Poly, PolyForm};
use crate::affine::AffineCoverMap;
use crate::error::Result;
use crate::exactfield::{NumberRing, NumberValue};
use crate::pi1::Pi1Element;
use crate::surface::KodairaData;

const Z: usize = 0;
const ZB: usize = 1;
const W: usize = 2;
const WB: usize = 3;

fn var(r: &NumberRing, k: usize) -> Poly {
    Poly::var(r, k)
}

/// `c / (tau_B - conj(tau_B))`.
fn twist(d: &KodairaData) -> Result<NumberValue> {
    let t = d.tau_b().value();
    d.c().divide(&(t - &t.conjugate()))
}

/// The function `c (z - zb) / (tau_B - conj(tau_B))`.
fn twist_poly(d: &KodairaData) -> Result<Poly> {
    let r = d.ring();
    Ok(var(r, Z).sub(&var(r, ZB)).scale(&twist(d)?))
}

/// `phi1 = dz`.
pub fn phi1(d: &KodairaData) -> PolyForm {
    PolyForm::basis(d.ring(), Z, Chart::Complex)
}

/// `phi2 = dw - c (z - zb) / (tau_B - conj(tau_B)) dz`.
pub fn phi2(d: &KodairaData) -> Result<PolyForm> {
    let r = d.ring();
    let dz = PolyForm::basis(r, Z, Chart::Complex);
    Ok(PolyForm::basis(r, W, Chart::Complex).sub(&dz.mul_poly(&twist_poly(d)?)))
}

/// The four coframe forms `[phi1, phibar1, phi2, phibar2]` on the complex chart.
pub fn coframe(d: &KodairaData) -> Result<[PolyForm; 4]> {
    let p1 = phi1(d);
    let p2 = phi2(d)?;
    Ok([p1.clone(), p1.conjugate(), p2.clone(), p2.conjugate()])
}

/// Rewrites a complex-chart form over the invariant coframe.
pub fn to_coframe(a: &PolyForm, d: &KodairaData) -> Result<PolyForm> {
    let r = d.ring();
    let k = twist_poly(d)?;
    let ch = Chart::Coframe;
    let f1 = PolyForm::basis(r, 0, ch);
    let fb1 = PolyForm::basis(r, 1, ch);
    let diffs = [
        f1.clone(),
        fb1.clone(),
        PolyForm::basis(r, 2, ch).add(&f1.mul_poly(&k)),
        PolyForm::basis(r, 3, ch).add(&fb1.mul_poly(&k.conjugate())),
    ];
    let vars = std::array::from_fn(|j| var(r, j));
    Ok(a.substitute(&vars, &diffs, ch))
}

/// Rewrites a coframe expansion back on the complex chart.
pub fn from_coframe(a: &PolyForm, d: &KodairaData) -> Result<PolyForm> {
    let r = d.ring();
    let vars = std::array::from_fn(|j| var(r, j));
    Ok(a.substitute(&vars, &coframe(d)?, Chart::Complex))
}

/// Images of the complex variables under a cover map.
pub fn complex_images(f: &AffineCoverMap) -> [Poly; 4] {
    let r = f.ring();
    let z = var(r, Z);
    let zn = z.scale(&f.a_z).add(&Poly::constant(f.b_z.clone()));
    let wn = var(r, W)
        .scale(&f.e_zeta)
        .add(&Poly::constant(f.q[0].clone()))
        .add(&z.scale(&f.q[1]))
        .add(&z.pow(2).scale(&f.q[2]));
    [zn.clone(), zn.conjugate(), wn.clone(), wn.conjugate()]
}

/// Pullback of a complex-chart form along a cover map.
pub fn pullback(a: &PolyForm, f: &AffineCoverMap) -> PolyForm {
    a.pullback_by(&complex_images(f))
}

/// `z = x + iy`, `w = u + iv` on coordinates.
fn real_substitution(r: &NumberRing) -> [Poly; 4] {
    let i = r.i();
    let (x, y, u, v) = (var(r, 0), var(r, 1), var(r, 2), var(r, 3));
    [x.add(&y.scale(&i)), x.sub(&y.scale(&i)), u.add(&v.scale(&i)), u.sub(&v.scale(&i))]
}

/// Rewrites a complex-chart form in real coordinates.
pub fn to_real(a: &PolyForm) -> PolyForm {
    let r = a.ring();
    let vars = real_substitution(r);
    let diffs = std::array::from_fn(|k| PolyForm::function(vars[k].clone(), Chart::Real).exterior_d());
    a.substitute(&vars, &diffs, Chart::Real)
}

/// Images of `x, y, u, v` under a cover map.
pub fn real_images(f: &AffineCoverMap) -> [Poly; 4] {
    let sub = real_substitution(f.ring());
    let [zn, _, wn, _] = complex_images(f);
    let zn = zn.substitute(&sub);
    let wn = wn.substitute(&sub);
    [zn.map_coeffs(NumberValue::re), zn.map_coeffs(NumberValue::im), wn.map_coeffs(NumberValue::re), wn.map_coeffs(NumberValue::im)]
}

/// The real invariant forms `[e1, e2, e3, e4]`.
pub fn real_frame(d: &KodairaData) -> Result<[PolyForm; 4]> {
    let r = d.ring();
    let ch = Chart::Real;
    let inv_im = d.tau_b().im_value().inverse()?;
    let rc = &d.c().re() * &inv_im;
    let ic = &d.c().im() * &inv_im;
    let y = var(r, 1);
    let dx = PolyForm::basis(r, 0, ch);
    let dy = PolyForm::basis(r, 1, ch);
    let e3 = PolyForm::basis(r, 2, ch).sub(&dx.mul_poly(&y.scale(&rc))).add(&dy.mul_poly(&y.scale(&ic)));
    let e4 = PolyForm::basis(r, 3, ch).sub(&dx.mul_poly(&y.scale(&ic))).sub(&dy.mul_poly(&y.scale(&rc)));
    Ok([dx, dy, e3, e4])
}

/// `[eps1, eps2, eps3, eps4]`: the real frame rotated so that `eps3` is closed.
pub fn rotated_frame(d: &KodairaData) -> Result<[PolyForm; 4]> {
    let [e1, e2, e3, e4] = real_frame(d)?;
    let (rc, ic) = (d.c().re(), d.c().im());
    let eps3 = e3.scale(&ic).sub(&e4.scale(&rc));
    let eps4 = e3.scale(&rc).add(&e4.scale(&ic));
    Ok([e1, e2, eps3, eps4])
}

/// One identity checked by [`verify_invariant_generators`].
#[derive(Clone, Debug)]
pub struct FormCheck {
    pub name: String,
    /// Left side minus right side; zero when the identity holds.
    pub residual: PolyForm,
}

impl FormCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct FormsReport {
    pub checks: Vec<FormCheck>,
}

impl FormsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(FormCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FormCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn check(name: impl Into<String>, lhs: &PolyForm, rhs: &PolyForm) -> FormCheck {
    FormCheck { name: name.into(), residual: lhs.sub(rhs) }
}

/// Real-chart word `dx_{k1} ^ dx_{k2} ^ ...` times a polynomial.
fn rword(r: &NumberRing, idx: &[usize], p: Poly) -> PolyForm {
    PolyForm::word(r, idx, Chart::Real).mul_poly(&p)
}

/// Closed-form expansions of the rotated-frame products in `dx, dy, du, dv`.
pub fn rotated_products_expanded(d: &KodairaData) -> Result<Vec<(&'static str, Vec<usize>, PolyForm)>> {
    let r = d.ring();
    let (rc, ic) = (d.c().re(), d.c().im());
    let n = d.c().abs2();
    let k = n.divide(&d.tau_b().im_value())?;
    let c = |v: &NumberValue| Poly::constant(v.clone());
    let ky = var(r, 1).scale(&k);
    Ok(vec![
        ("eps3", vec![2], rword(r, &[1], ky.clone()).add(&rword(r, &[2], c(&ic))).sub(&rword(r, &[3], c(&rc)))),
        (
            "eps1^eps3",
            vec![0, 2],
            rword(r, &[0, 1], ky.clone()).add(&rword(r, &[0, 2], c(&ic))).sub(&rword(r, &[0, 3], c(&rc))),
        ),
        ("eps1^eps4", vec![0, 3], rword(r, &[0, 2], c(&rc)).add(&rword(r, &[0, 3], c(&ic)))),
        ("eps2^eps3", vec![1, 2], rword(r, &[1, 2], c(&ic)).sub(&rword(r, &[1, 3], c(&rc)))),
        (
            "eps2^eps4",
            vec![1, 3],
            rword(r, &[0, 1], ky.clone()).add(&rword(r, &[1, 2], c(&rc))).add(&rword(r, &[1, 3], c(&ic))),
        ),
        ("eps1^eps2^eps3", vec![0, 1, 2], rword(r, &[0, 1, 2], c(&ic)).sub(&rword(r, &[0, 1, 3], c(&rc)))),
        (
            "eps1^eps3^eps4",
            vec![0, 2, 3],
            rword(r, &[0, 1, 2], ky.scale(&rc))
                .add(&rword(r, &[0, 1, 3], ky.scale(&ic)))
                .add(&rword(r, &[0, 2, 3], c(&n))),
        ),
        (
            "eps2^eps3^eps4",
            vec![1, 2, 3],
            rword(r, &[0, 1, 2], ky.scale(&-&ic))
                .add(&rword(r, &[0, 1, 3], ky.scale(&rc)))
                .add(&rword(r, &[1, 2, 3], c(&n))),
        ),
        ("eps1^eps2^eps3^eps4", vec![0, 1, 2, 3], rword(r, &[0, 1, 2, 3], c(&n))),
    ])
}

/// Closed forms of the Dolbeault generators on the complex chart. The index
/// lists name coframe slots `[phi1, phibar1, phi2, phibar2]`.
pub fn dolbeault_generators_expanded(d: &KodairaData) -> Result<Vec<(&'static str, Vec<usize>, PolyForm)>> {
    let r = d.ring();
    let ch = Chart::Complex;
    let k = twist_poly(d)?;
    // conj(twist(z - zb)) as a function: cbar (z - zb) / (tau - conj tau).
    let kb = k.conjugate();
    let w = |idx: &[usize]| PolyForm::word(r, idx, ch);
    Ok(vec![
        ("phi1", vec![Z], w(&[Z])),
        ("phibar1", vec![ZB], w(&[ZB])),
        ("phibar2", vec![WB], w(&[WB]).sub(&w(&[ZB]).mul_poly(&kb))),
        ("phi1^phi2", vec![Z, W], w(&[Z, W])),
        ("phi1^phibar2", vec![Z, WB], w(&[Z, WB]).sub(&w(&[Z, ZB]).mul_poly(&kb))),
        ("phi2^phibar1", vec![W, ZB], w(&[W, ZB]).sub(&w(&[Z, ZB]).mul_poly(&k))),
        ("phibar1^phibar2", vec![ZB, WB], w(&[ZB, WB])),
        ("phi1^phi2^phibar1", vec![Z, W, ZB], w(&[Z, W, ZB])),
        ("phi1^phi2^phibar2", vec![Z, W, WB], w(&[Z, W, WB]).sub(&w(&[Z, W, ZB]).mul_poly(&kb))),
        ("phi2^phibar1^phibar2", vec![W, ZB, WB], w(&[W, ZB, WB]).sub(&w(&[Z, ZB, WB]).mul_poly(&k))),
        ("phi1^phi2^phibar1^phibar2", vec![Z, W, ZB, WB], w(&[Z, W, ZB, WB])),
    ])
}

fn wedge_all(forms: &[PolyForm; 4], idx: &[usize], unit: PolyForm) -> PolyForm {
    idx.iter().fold(unit, |acc, &k| acc.wedge(&forms[k]))
}

/// Checks the invariance and structure identities of the invariant forms.
pub fn verify_invariant_generators(d: &KodairaData) -> Result<FormsReport> {
    let r = d.ring();
    let mut checks = Vec::new();
    let cf = coframe(d)?;
    let names = ["phi1", "phibar1", "phi2", "phibar2"];
    let frame = real_frame(d)?;
    let gens = Pi1Element::generators(d);
    for (i, g) in gens.iter().enumerate() {
        let map = g.to_cover_map(d);
        for (k, form) in cf.iter().enumerate() {
            checks.push(check(format!("g{}* {} = {}", i + 1, names[k], names[k]), &pullback(form, &map), form));
        }
        let images = real_images(&map);
        for (k, form) in frame.iter().enumerate() {
            checks.push(check(format!("g{}* e{} = e{}", i + 1, k + 1, k + 1), &form.pullback_by(&images), form));
        }
    }

    let zero_c = PolyForm::zero(r, Chart::Complex);
    let zero_r = PolyForm::zero(r, Chart::Real);
    checks.push(check("d phi1 = 0", &cf[0].exterior_d(), &zero_c));
    let inv_im = d.tau_b().im_value().inverse()?;
    let k2 = (&(d.c() * &inv_im) * &r.i()).scale(&crate::exactfield::q(1, 2));
    let rhs = cf[0].wedge(&cf[1]).scale(&k2);
    checks.push(check("d phi2 = (i/2)(c/Im tau_B) phi1^phibar1", &cf[2].exterior_d(), &rhs));
    checks.push(check("dbar phi2 = d phi2", &cf[2].dbar(), &cf[2].exterior_d()));
    checks.push(check("phi1 = e1 + i e2", &to_real(&cf[0]), &frame[0].add(&frame[1].scale(&r.i()))));
    checks.push(check("phi2 = e3 + i e4", &to_real(&cf[2]), &frame[2].add(&frame[3].scale(&r.i()))));

    checks.push(check("d e1 = 0", &frame[0].exterior_d(), &zero_r));
    checks.push(check("d e2 = 0", &frame[1].exterior_d(), &zero_r));
    let e12 = frame[0].wedge(&frame[1]);
    let rc = &d.c().re() * &inv_im;
    let ic = &d.c().im() * &inv_im;
    checks.push(check("d e3 = (Re c/Im tau_B) e1^e2", &frame[2].exterior_d(), &e12.scale(&rc)));
    checks.push(check("d e4 = (Im c/Im tau_B) e1^e2", &frame[3].exterior_d(), &e12.scale(&ic)));

    let eps = rotated_frame(d)?;
    let one_r = PolyForm::constant(r.one(), Chart::Real);
    for (name, idx, expanded) in rotated_products_expanded(d)? {
        let prod = wedge_all(&eps, &idx, one_r.clone());
        checks.push(check(format!("{name} expansion"), &prod, &expanded));
        checks.push(check(format!("d({name}) = 0"), &prod.exterior_d(), &zero_r));
    }

    let one_c = PolyForm::constant(r.one(), Chart::Complex);
    for (name, idx, expanded) in dolbeault_generators_expanded(d)? {
        let prod = wedge_all(&cf, &idx, one_c.clone());
        checks.push(check(format!("{name} expansion"), &prod, &expanded));
        checks.push(check(format!("dbar({name}) = 0"), &prod.dbar(), &zero_c));
    }
    Ok(FormsReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{SymbolDecl, Tau};

    fn data(tb: &str, te: &str, c: &str, delta: &str) -> KodairaData {
        let r = NumberRing::new(vec![SymbolDecl::quadratic("s3", 3), SymbolDecl::transcendental("p")]).unwrap();
        KodairaData::new(
            Tau::new(r.parse(tb).unwrap()).unwrap(),
            Tau::new(r.parse(te).unwrap()).unwrap(),
            r.parse(c).unwrap(),
            r.parse(delta).unwrap(),
        )
        .unwrap()
    }

    fn samples() -> Vec<KodairaData> {
        vec![
            data("i", "i", "2 + 4*i", "1/3 - i"),
            data("1/2 + 1/2*s3", "1/3 + 2*i", "2", "1/2"),
            data("1/5 + 3*i", "1/2 + 1/2*s3", "3 + 3*s3", "i"),
            data("p", "1/2 + i", "3", "1/7 + 2*i"),
        ]
    }

    #[test]
    fn all_identities_hold() {
        for d in samples() {
            let rep = verify_invariant_generators(&d).unwrap();
            let failed: Vec<_> = rep.failures().map(|c| format!("{}: {}", c.name, c.residual)).collect();
            assert!(failed.is_empty(), "{failed:?}");
            assert!(rep.checks.len() > 50);
        }
    }

    #[test]
    fn coframe_round_trip() {
        let d = samples().remove(0);
        let r = d.ring();
        let a = PolyForm::word(r, &[0, 3], Chart::Complex).mul_poly(&var(r, 1).mul(&var(r, 2)));
        assert_eq!(from_coframe(&to_coframe(&a, &d).unwrap(), &d).unwrap(), a);
        let cf = coframe(&d).unwrap();
        assert_eq!(to_coframe(&cf[2], &d).unwrap(), PolyForm::basis(r, 2, Chart::Coframe));
        assert_eq!(to_coframe(&cf[3], &d).unwrap(), PolyForm::basis(r, 3, Chart::Coframe));
    }

    #[test]
    fn printed_de4_sign_fails() {
        let d = samples().remove(0);
        let f = real_frame(&d).unwrap();
        let ic = d.c().im().divide(&d.tau_b().im_value()).unwrap();
        let printed = f[0].wedge(&f[1]).scale(&-ic.clone());
        let res = f[3].exterior_d().sub(&printed);
        assert_eq!(res, f[0].wedge(&f[1]).scale(&ic.scale_int(2)));
    }

    #[test]
    fn printed_triple_products_miss_a_constant_term() {
        let d = samples().remove(0);
        let r = d.ring();
        let eps = rotated_frame(&d).unwrap();
        let one = PolyForm::constant(r.one(), Chart::Real);
        let n = d.c().abs2();
        let k = n.divide(&d.tau_b().im_value()).unwrap();
        let ky = var(r, 1).scale(&k);
        let (rc, ic) = (d.c().re(), d.c().im());
        let printed134 = rword(r, &[0, 1, 2], ky.scale(&rc)).add(&rword(r, &[0, 1, 3], ky.scale(&ic)));
        let prod = wedge_all(&eps, &[0, 2, 3], one.clone());
        assert_eq!(prod.sub(&printed134), rword(r, &[0, 2, 3], Poly::constant(n.clone())));
        let printed234 = rword(r, &[0, 1, 2], ky.scale(&-&ic)).add(&rword(r, &[0, 1, 3], ky.scale(&rc)));
        let prod = wedge_all(&eps, &[1, 2, 3], one);
        assert_eq!(prod.sub(&printed234), rword(r, &[1, 2, 3], Poly::constant(n)));
    }

    #[test]
    fn printed_mixed_generator_needs_conjugate_twist() {
        let d = samples().remove(0);
        let r = d.ring();
        let cf = coframe(&d).unwrap();
        let prod = cf[0].wedge(&cf[3]);
        let printed = PolyForm::word(r, &[Z, WB], Chart::Complex)
            .sub(&PolyForm::word(r, &[Z, ZB], Chart::Complex).mul_poly(&twist_poly(&d).unwrap()));
        assert!(!prod.sub(&printed).is_zero());
    }

    #[test]
    fn real_action_of_generators() {
        let d = samples().remove(0);
        let r = d.ring();
        let g1 = Pi1Element::generators(&d)[0].to_cover_map(&d);
        let [x, y, u, v] = real_images(&g1);
        let t = d.tau_b().value();
        let (rc, ic) = (d.c().re(), d.c().im());
        assert_eq!(x, var(r, 0).add(&Poly::constant(t.re())));
        assert_eq!(y, var(r, 1).add(&Poly::constant(t.im())));
        // u + Re(c) x - Im(c) y + const, v + Im(c) x + Re(c) y + const.
        assert_eq!(u.derivative(0).as_constant(), Some(rc.clone()));
        assert_eq!(u.derivative(1).as_constant(), Some(-ic.clone()));
        assert_eq!(v.derivative(0).as_constant(), Some(ic));
        assert_eq!(v.derivative(1).as_constant(), Some(rc));
    }
}
