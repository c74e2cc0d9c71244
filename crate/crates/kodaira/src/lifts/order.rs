//! The automorphism of order `n` attached to a unit of the base lattice and
//! the closed forms for powers of automorphism lifts.

use super::{dform, epsilon, SpecialLift};
use crate::error::{Error, Result};
use crate::exactfield::{q, NumberValue, Tau};
use crate::surface::{sl2_reduce, KodairaData};

/// Roots of unity preserving a lattice have order at most 6; 12 covers all
/// cyclotomic candidates of degree at most 4.
const MAX_ORDER: u32 = 12;

/// Multiplicative order of `omega` if it is a root of unity of order at most 12.
pub fn unit_order(omega: &NumberValue) -> Option<u32> {
    if !omega.abs2().is_one() {
        return None;
    }
    let one = omega.ring().one();
    let mut p = omega.clone();
    for n in 1..=MAX_ORDER {
        if p == one {
            return Some(n);
        }
        p = &p * omega;
    }
    None
}

/// Order of the group of roots of unity preserving `Lambda_tau`.
pub fn unit_group_order(tau: &Tau) -> u32 {
    if !tau.is_quadratic() {
        return 2;
    }
    let (red, _) = sl2_reduce(tau);
    let re = red.re().clone();
    let im = red.im_coeff().clone();
    match red.quadratic_d() {
        Some(1) if re == q(0, 1) && im == q(1, 1) => 4,
        Some(3) if re == q(-1, 2) && im == q(1, 2) => 6,
        _ => 2,
    }
}

/// The generator `i`, `(1 + sqrt(-3))/2` or `-1` of the unit group, with its order.
pub fn canonical_unit(d: &KodairaData) -> Result<(u32, NumberValue)> {
    let r = d.ring();
    let n = unit_group_order(d.tau_b());
    let omega = match n {
        4 => r.i(),
        6 => {
            let idx = r
                .quadratic_index(3)
                .ok_or_else(|| Error::NotAUnit("no symbol with square -3 is declared".into()))?;
            let s = r.symbol(r.name(idx))?;
            &r.rational(1, 2) + &s.scale(&q(1, 2))
        }
        _ => r.int(-1),
    };
    Ok((n, omega))
}

/// `sum_{i<m} x^i`.
fn geometric(x: &NumberValue, m: u32) -> NumberValue {
    let mut acc = x.ring().zero();
    let mut p = x.ring().one();
    for _ in 0..m {
        acc = &acc + &p;
        p = &p * x;
    }
    acc
}

/// The lift with `sigma10 = 0` of the automorphism of order `n` multiplying
/// the base by `omega`, normalized so that its `n`-th power is the identity.
pub fn order_n_lift(d: &KodairaData, omega: &NumberValue) -> Result<SpecialLift> {
    let r = d.ring();
    let tb = d.tau_b();
    let preserves = tb.in_lattice(omega) && tb.in_lattice(&(omega * tb.value()));
    let n = match unit_order(omega) {
        Some(n) if preserves => n,
        _ => return Err(Error::NotAUnit(format!("{omega} is not a root of unity preserving the base lattice"))),
    };
    let one = r.one();
    let tau = tb.value();
    let dw1 = dform(d, omega, &one)?;
    let dwt = dform(d, omega, tau)?;
    let dwt1 = dform(d, &(omega * tau), &one)?;
    let shift = (&(omega - &one) * &epsilon(d)).divide(d.c())?;
    let tail = &tau.abs2().scale(&dwt1) - &tau.scale(&dwt);
    let beta = &shift + &(omega * &tail).scale(&(dw1 * q(1, 2)));
    let mut lift = SpecialLift::new(omega.clone(), beta, r.zero(), r.zero(), d)?;
    let u = lift.u(d)?;
    let nq = lift.quadratic_coeff(d)?;
    let mut sum_sq = r.zero();
    let mut sum = r.zero();
    for k in 1..n {
        let bk = &geometric(omega, k) * &lift.beta;
        sum_sq = &sum_sq + &(&bk * &bk);
        sum = &sum + &bk;
    }
    let total = &(&nq * &sum_sq) + &(&u * &sum);
    lift.v = -(total.scale(&q(1, n as i64)));
    Ok(lift)
}

/// Closed forms `(beta_m, u_m, v_m)` for the `m`-th power of an automorphism lift.
pub fn power_sequences(l: &SpecialLift, m: u32, d: &KodairaData) -> Result<(NumberValue, NumberValue, NumberValue)> {
    if !l.is_unit() {
        return Err(Error::InvalidLift(format!("alpha = {} is not a root of unity", l.alpha)));
    }
    let r = d.ring();
    let a = &l.alpha;
    let one = r.one();
    let da1 = dform(d, a, &one)?;
    let u = l.u(d)?;
    let nq = l.quadratic_coeff(d)?;
    let beta_m = &geometric(a, m) * &l.beta;
    let mut double = r.zero();
    for i in 1..m {
        for j in 0..i {
            double = &double + &a.pow(i + j);
        }
    }
    let cross = (&(d.c() * a) * &l.beta).scale(&da1);
    let u_m = &(&cross * &double) + &(&u * &geometric(a, m));
    let mut sum_sq = r.zero();
    let mut sum = r.zero();
    for i in 1..m {
        let bi = &geometric(a, i) * &l.beta;
        sum_sq = &sum_sq + &(&bi * &bi);
        sum = &sum + &bi;
    }
    let v_m = &(&(&nq * &sum_sq) + &(&u * &sum)) + &l.v.scale_int(m as i64);
    Ok((beta_m, u_m, v_m))
}
