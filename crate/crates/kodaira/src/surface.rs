//! Surface data `(tau_B, tau_E, c, delta)`, its normalizations and the
//! isomorphism decision.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{q, to_i64, LatticeElement, NumberRing, NumberValue, Tau};

/// The data defining a primary Kodaira surface: base period, fibre period,
/// Chern class `c` of the fibration (a nonzero fibre lattice element) and
/// the translation part `delta` of the first generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KodairaData {
    tau_b: Tau,
    tau_e: Tau,
    c: NumberValue,
    delta: NumberValue,
}

impl KodairaData {
    pub fn new(tau_b: Tau, tau_e: Tau, c: NumberValue, delta: NumberValue) -> Result<Self> {
        let ring = tau_b.value().ring();
        if !ring.same(tau_e.value().ring()) || !ring.same(c.ring()) || !ring.same(delta.ring()) {
            return Err(Error::RingMismatch);
        }
        if c.is_zero() {
            return Err(Error::InvalidData("c must be nonzero".into()));
        }
        if !tau_e.in_lattice(&c) {
            return Err(Error::InvalidData(format!("c = {c} is not in the fibre lattice Z*{tau_e} + Z")));
        }
        Ok(KodairaData { tau_b, tau_e, c, delta })
    }

    pub fn tau_b(&self) -> &Tau {
        &self.tau_b
    }

    pub fn tau_e(&self) -> &Tau {
        &self.tau_e
    }

    pub fn c(&self) -> &NumberValue {
        &self.c
    }

    pub fn delta(&self) -> &NumberValue {
        &self.delta
    }

    pub fn ring(&self) -> &NumberRing {
        self.c.ring()
    }

    /// Fibre lattice coordinates of `c`.
    pub fn c_lattice(&self) -> LatticeElement {
        self.tau_e.lattice(&self.c).expect("validated at construction")
    }

    pub fn with_delta(&self, delta: NumberValue) -> Result<Self> {
        KodairaData::new(self.tau_b.clone(), self.tau_e.clone(), self.c.clone(), delta)
    }
}

impl fmt::Debug for KodairaData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KodairaData(tauB = {}, tauE = {}, c = {}, delta = {})", self.tau_b, self.tau_e, self.c, self.delta)
    }
}

/// `c = m * (p * tau_E + q)` with `m > 0` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorsionDecomposition {
    pub m: i64,
    pub p: i64,
    pub q: i64,
}

pub fn torsion_coefficient(d: &KodairaData) -> TorsionDecomposition {
    let cl = d.c_lattice();
    let m = cl.a.gcd(&cl.b);
    TorsionDecomposition { m, p: cl.a / m, q: cl.b / m }
}

/// `[[k, h], [p, q]]` with determinant one, acting by `(k tau + h) / (p tau + q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Matrix {
    pub k: i64,
    pub h: i64,
    pub p: i64,
    pub q: i64,
}

impl Sl2Matrix {
    pub fn new(k: i64, h: i64, p: i64, q: i64) -> Result<Self> {
        if k * q - h * p != 1 {
            return Err(Error::InvalidData(format!("[[{k}, {h}], [{p}, {q}]] does not have determinant 1")));
        }
        Ok(Sl2Matrix { k, h, p, q })
    }

    pub fn identity() -> Self {
        Sl2Matrix { k: 1, h: 0, p: 0, q: 1 }
    }

    pub fn translation(t: i64) -> Self {
        Sl2Matrix { k: 1, h: t, p: 0, q: 1 }
    }

    pub fn inversion() -> Self {
        Sl2Matrix { k: 0, h: -1, p: 1, q: 0 }
    }

    pub fn inverse(&self) -> Self {
        Sl2Matrix { k: self.q, h: -self.h, p: -self.p, q: self.k }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, o: &Sl2Matrix) -> Self {
        Sl2Matrix {
            k: self.k * o.k + self.h * o.p,
            h: self.k * o.h + self.h * o.q,
            p: self.p * o.k + self.q * o.p,
            q: self.p * o.h + self.q * o.q,
        }
    }

    /// Möbius action; fails when the image leaves the declared ring.
    pub fn apply(&self, tau: &Tau) -> Result<Tau> {
        let ring = tau.value().ring();
        let t = tau.value();
        let num = &t.scale_int(self.k) + &ring.int(self.h);
        let den = &t.scale_int(self.p) + &ring.int(self.q);
        let image = num.divide(&den).map_err(|e| match e {
            Error::NotInvertible(msg) => Error::NotRepresentable(msg),
            other => other,
        })?;
        Tau::new(image).map_err(|e| Error::NotRepresentable(e.to_string()))
    }
}

/// Reduction of a quadratic period to the standard fundamental domain:
/// `-1/2 <= Re < 1/2`, `|tau| >= 1`, and `Re <= 0` on the unit circle.
/// Returns the reduced point and `M` with `M * tau = reduced`.
pub fn sl2_reduce(tau: &Tau) -> (Tau, Sl2Matrix) {
    let Some(d) = tau.quadratic_d() else {
        return (tau.clone(), Sl2Matrix::identity());
    };
    let d = BigRational::from_integer(BigInt::from(d));
    let mut re = tau.re().clone();
    let mut im = tau.im_coeff().clone();
    let mut m = Sl2Matrix::identity();
    let half = q(1, 2);
    let norm = |re: &BigRational, im: &BigRational| re * re + im * im * &d;
    loop {
        let n = (&re + &half).floor().to_integer();
        if !n.is_zero() {
            let n = to_i64(&n).expect("translation fits in 64 bits");
            re -= BigRational::from_integer(n.into());
            m = Sl2Matrix::translation(-n).mul(&m);
        }
        let nsq = norm(&re, &im);
        if nsq < BigRational::one() {
            re = -&re / &nsq;
            im = &im / &nsq;
            m = Sl2Matrix::inversion().mul(&m);
            continue;
        }
        if nsq == BigRational::one() && re.is_positive() {
            re = -re;
            m = Sl2Matrix::inversion().mul(&m);
        }
        break;
    }
    let ring = tau.value().ring();
    let s = NumberValue::monomial(
        ring,
        crate::exactfield::Monomial::unit(ring.len(), tau.symbol(), 1),
        BigRational::one(),
    );
    let value = &NumberValue::rational(ring, re) + &s.scale(&im);
    (Tau::new(value).expect("reduction stays in the upper half-plane"), m)
}

/// Re-expresses `d` with `delta = 0` by the base translation `z -> z + delta/c`.
pub fn normalize_delta(d: &KodairaData) -> Result<(KodairaData, NumberValue)> {
    let shift = d.delta.divide(&d.c)?;
    Ok((d.with_delta(d.ring().zero())?, shift))
}

/// Minimal `(k, h)` with `q k - p h = 1`: smallest `|h|`, then smallest `|k|`,
/// then nonnegative entries first.
fn complete_basis(p: i64, q: i64) -> (i64, i64) {
    let e = (q as i128).extended_gcd(&(-p as i128));
    let (mut k0, mut h0) = (e.x, e.y);
    if e.gcd < 0 {
        k0 = -k0;
        h0 = -h0;
    }
    debug_assert_eq!(q as i128 * k0 - p as i128 * h0, 1);
    let (p, q) = (p as i128, q as i128);
    let candidates: Vec<i128> = if q != 0 {
        let t0 = Integer::div_floor(&-h0, &q);
        (t0 - 2..=t0 + 2).collect()
    } else if p != 0 {
        let t0 = Integer::div_floor(&-k0, &p);
        (t0 - 2..=t0 + 2).collect()
    } else {
        vec![0]
    };
    let best = candidates
        .into_iter()
        .map(|t| (k0 + p * t, h0 + q * t))
        .min_by_key(|&(k, h)| (h.abs(), k.abs(), h < 0, k < 0))
        .expect("nonempty candidates");
    (best.0 as i64, best.1 as i64)
}

/// Rescales the fibre so that `c` becomes the torsion coefficient `m`.
/// Returns the new data and the fibre scale `m / c`.
pub fn normalize_c(d: &KodairaData) -> Result<(KodairaData, NumberValue)> {
    let t = torsion_coefficient(d);
    let (k, h) = complete_basis(t.p, t.q);
    let mat = Sl2Matrix { k, h, p: t.p, q: t.q };
    let tau_e = mat.apply(&d.tau_e)?;
    let ring = d.ring();
    let scale = ring.int(t.m).divide(&d.c).map_err(|e| Error::NotRepresentable(e.to_string()))?;
    let delta = &scale * &d.delta;
    let nd = KodairaData::new(d.tau_b.clone(), tau_e, ring.int(t.m), delta)?;
    Ok((nd, scale))
}

/// Data over the base period `M^-1 * tau_B` describing the same surface.
///
/// The input base period plays the role of `M * tau` for the returned `tau`;
/// the new `delta` absorbs the quadratic gauge needed to bring the conjugated
/// generators back to standard form.
pub fn change_base_marking(d: &KodairaData, mat: &Sl2Matrix) -> Result<KodairaData> {
    let ring = d.ring();
    let tau_old = d.tau_b.value();
    let tau_new = mat.inverse().apply(&d.tau_b)?;
    let t = tau_new.value();
    let (p, qq) = (mat.p, mat.q);
    let c = &d.c;
    let denom = &t.scale_int(p) + &ring.int(qq);
    let frac = c.scale_int(p).divide(&denom).map_err(|e| Error::NotRepresentable(e.to_string()))?;
    let half = q(1, 2);
    let first = (c * tau_old).scale(&(q(qq * (qq - 1), 1) * &half));
    let second = d.delta.scale_int(qq);
    let third = (&frac * &(t * t)).scale(&half);
    let inner = &(&(c * tau_old).scale(&(q(p * (p + 1), 1) * &half)) - &d.delta.scale_int(p)) + &frac.scale(&half);
    let delta = &(&(&first + &second) + &third) - &(&inner * t);
    KodairaData::new(tau_new, d.tau_e.clone(), c.clone(), delta)
}

/// Decides whether two data describe isomorphic surfaces.
pub fn is_isomorphic(d1: &KodairaData, d2: &KodairaData) -> Result<bool> {
    if !d1.ring().same(d2.ring()) {
        return Err(Error::RingMismatch);
    }
    if torsion_coefficient(d1).m != torsion_coefficient(d2).m {
        return Ok(false);
    }
    let bases_match = match (d1.tau_b.is_quadratic(), d2.tau_b.is_quadratic()) {
        (true, true) => sl2_reduce(&d1.tau_b).0 == sl2_reduce(&d2.tau_b).0,
        (false, false) => d1.tau_b == d2.tau_b,
        _ => false,
    };
    if !bases_match {
        return Ok(false);
    }
    let (n1, _) = normalize_c(d1)?;
    let (n2, _) = normalize_c(d2)?;
    let diff = n1.tau_e.value() - n2.tau_e.value();
    Ok(diff.as_rational().map(|r| r.is_integer()).unwrap_or(false))
}

/// Display-only moduli coordinates `(j(tau_B), exp(2 pi i tau_E))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModuliPoint {
    pub j: Complex64,
    pub q_e: Complex64,
}

/// Evaluates the moduli point numerically. `numeric` maps a transcendental
/// symbol index to the positive real number `s / i`.
pub fn moduli_point(
    d: &KodairaData,
    precision: u32,
    numeric: &dyn Fn(usize) -> Option<f64>,
) -> Result<ModuliPoint> {
    let embed = |tau: &Tau| {
        tau.to_complex(numeric).ok_or_else(|| Error::NoEmbedding(tau.value().ring().name(tau.symbol()).to_string()))
    };
    let tb = embed(&d.tau_b)?;
    let te = embed(&d.tau_e)?;
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    Ok(ModuliPoint { j: j_invariant(tb, precision), q_e: (two_pi_i * te).exp() })
}

fn divisor_power_sum(n: u64, k: u32) -> f64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as f64).powi(k as i32)).sum()
}

/// Klein's j via the Eisenstein series `E4`, `E6` after numeric reduction.
pub fn j_invariant(tau: Complex64, precision: u32) -> Complex64 {
    let mut t = tau;
    for _ in 0..1000 {
        t.re -= t.re.round();
        if t.norm_sqr() < 1.0 - 1e-15 {
            t = -t.inv();
        } else {
            break;
        }
    }
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * t).exp();
    let target = 10f64.powi(-(precision.min(300) as i32) - 5);
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut e6 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=400u64 {
        qn *= q;
        e4 += qn * (240.0 * divisor_power_sum(n, 3));
        e6 -= qn * (504.0 * divisor_power_sum(n, 5));
        if qn.norm() * (n as f64).powi(6) < target {
            break;
        }
    }
    let e4c = e4 * e4 * e4;
    e4c * 1728.0 / (e4c - e6 * e6)
}
