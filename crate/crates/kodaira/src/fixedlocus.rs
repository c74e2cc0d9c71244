//! Fixed loci of automorphisms: empty, a finite union of fibres, or everything.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{q, NumberValue, Tau};
use crate::lifts::SpecialLift;
use crate::par::{self, Exec};
use crate::pi1::Pi1Element;
use crate::surface::KodairaData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    All,
    Empty,
    /// Base points of the fixed fibres, reduced into the fundamental cell.
    Fibres(Vec<NumberValue>),
}

impl FixedLocus {
    pub fn kind(&self) -> &'static str {
        match self {
            FixedLocus::All => "all",
            FixedLocus::Empty => "empty",
            FixedLocus::Fibres(_) => "fibres",
        }
    }

    pub fn fibres(&self) -> &[NumberValue] {
        match self {
            FixedLocus::Fibres(v) => v,
            _ => &[],
        }
    }
}

fn require_automorphism(l: &SpecialLift) -> Result<()> {
    if !l.is_unit() {
        return Err(Error::InvalidLift(format!("fixed loci need an automorphism, alpha = {}", l.alpha())));
    }
    Ok(())
}

/// Integer matrix of `x -> mu x` from `Lambda_B` to `Lambda_target`, columns
/// the images of `tau_B` and `1`.
fn multiplication_matrix(mu: &NumberValue, d: &KodairaData, target: &Tau) -> Result<[[i64; 2]; 2]> {
    let col1 = target.lattice(&(mu * d.tau_b().value()))?;
    let col2 = target.lattice(mu)?;
    Ok([[col1.a, col2.a], [col1.b, col2.b]])
}

/// Representatives of `Z^2 / M Z^2` for nonsingular `M`.
pub fn coset_representatives(m: [[i64; 2]; 2]) -> Vec<(i64, i64)> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    assert!(det != 0, "singular lattice map");
    let n = det.abs();
    let frac = |x: i64| x.rem_euclid(n);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // det * M^-1 (i, j), reduced mod det: equal keys mean equal cosets.
            let key = (frac(m[1][1] * i - m[0][1] * j), frac(-m[1][0] * i + m[0][0] * j));
            if seen.insert(key) {
                reps.push((i, j));
            }
        }
    }
    debug_assert_eq!(reps.len() as i64, n);
    reps
}

fn canonical(z: NumberValue, d: &KodairaData) -> NumberValue {
    d.tau_b().reduce(&z).unwrap_or(z)
}

fn sort_key(z: &NumberValue, d: &KodairaData) -> (Option<(BigRational, BigRational)>, String) {
    (d.tau_b().decompose(z).ok(), z.to_string())
}

fn canonical_sorted(points: Vec<NumberValue>, d: &KodairaData) -> Vec<NumberValue> {
    let mut points: Vec<NumberValue> = points.into_iter().map(|z| canonical(z, d)).collect();
    points.sort_by_key(|z| sort_key(z, d));
    points.dedup();
    points
}

/// All `z` modulo `Lambda_B` with `mu z - offset` in `Lambda_target`, for `mu`
/// mapping `Lambda_B` into `Lambda_target` injectively.
fn affine_solutions(mu: &NumberValue, offset: &NumberValue, d: &KodairaData, target: &Tau) -> Result<Vec<NumberValue>> {
    let m = multiplication_matrix(mu, d, target)?;
    let reps = coset_representatives(m);
    let lambdas: Vec<NumberValue> = reps.iter().map(|&(i, j)| target.element(i, j).embed()).collect();
    // mu and mu*tau_B both lie in a lattice of rank two, so mu never mixes
    // transcendental monomials and is invertible in the ring.
    let inv = mu
        .inverse()
        .map_err(|e| Error::NotRepresentable(format!("cannot divide by {mu}: {e}")))?;
    let pts = lambdas.iter().map(|lam| &(offset + lam) * &inv).collect();
    Ok(canonical_sorted(pts, d))
}

/// Points of the base fixed by the induced map. Empty when that map is a
/// translation; [`fixed_locus`] treats the case where it is the identity.
pub fn base_fixed_points(l: &SpecialLift, d: &KodairaData) -> Result<Vec<NumberValue>> {
    require_automorphism(l)?;
    let r = d.ring();
    if l.alpha().is_one() {
        return Ok(Vec::new());
    }
    affine_solutions(&(&r.one() - l.alpha()), l.beta(), d, d.tau_b())
}

/// Whether the whole fibre over the base fixed point `z0` is fixed.
pub fn fibre_is_fixed(l: &SpecialLift, d: &KodairaData, z0: &NumberValue) -> Result<bool> {
    require_automorphism(l)?;
    let map = l.to_cover_map(d)?;
    let (w, zeta) = map.apply(z0, &d.ring().zero());
    let mismatch = z0 - &w;
    let x = d
        .tau_b()
        .lattice(&mismatch)
        .map_err(|_| Error::NotABaseFixedPoint(format!("{z0} is moved to {w}")))?;
    let (m1, m2) = (x.a, x.b);
    let c = d.c();
    let deck = &(&(&(c * &w).scale_int(m1) + &c.scale_int(m1 * m2))
        + &(c * d.tau_b().value()).scale(&q(m1 * (m1 - 1), 2)))
        + &d.delta().scale_int(m1);
    Ok(d.tau_e().in_lattice(&(&zeta + &deck)))
}

pub fn fixed_locus(l: &SpecialLift, d: &KodairaData) -> Result<FixedLocus> {
    fixed_locus_with(l, d, Exec::default())
}

pub fn fixed_locus_with(l: &SpecialLift, d: &KodairaData, exec: Exec) -> Result<FixedLocus> {
    require_automorphism(l)?;
    if l.equal_mod_pi1(&SpecialLift::identity(d), d)? {
        return Ok(FixedLocus::All);
    }
    let candidates = if l.alpha().is_one() {
        if !d.tau_b().in_lattice(l.beta()) {
            return Ok(FixedLocus::Empty);
        }
        // Absorb the base shift into a deck transformation; what is left is
        // (z, w) -> (z, w + slope z + offset).
        let x = d.tau_b().lattice(l.beta())?;
        let deck = SpecialLift::from_deck(&Pi1Element::new(x.neg(), d.tau_e().element(0, 0)), d);
        let normal = deck.compose(l, d)?;
        let slope = normal.u(d)?;
        if slope.is_zero() {
            return Ok(FixedLocus::Empty);
        }
        affine_solutions(&slope, &-normal.v(), d, d.tau_e())?
    } else {
        base_fixed_points(l, d)?
    };
    let keep = par::try_map(exec, &candidates, |z| fibre_is_fixed(l, d, z))?;
    let fibres: Vec<NumberValue> = candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(z, _)| z).collect();
    Ok(if fibres.is_empty() { FixedLocus::Empty } else { FixedLocus::Fibres(fibres) })
}

/// `|Lambda_B / (1 - alpha) Lambda_B|` for `alpha != 1`.
pub fn base_fixed_point_count(l: &SpecialLift, d: &KodairaData) -> Result<u64> {
    let r = d.ring();
    let m = multiplication_matrix(&(&r.one() - l.alpha()), d, d.tau_b())?;
    let det = BigRational::from_integer((m[0][0] * m[1][1] - m[0][1] * m[1][0]).into());
    if det.is_zero() {
        return Err(Error::InvalidLift("the induced base map is a translation".into()));
    }
    Ok(det.abs().to_integer().try_into().expect("index fits in 64 bits"))
}
