//! Polynomials in four commuting variables and differential forms with
//! polynomial coefficients over an ordered basis of four 1-forms.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::{NumberRing, NumberValue};

/// Which coordinates the variables and basis 1-forms stand for.
///
/// `Complex` uses `z, zb, w, wb` with basis `dz, dzb, dw, dwb` (`w` is the
/// fibre coordinate and `b` marks the conjugate, treated as independent).
/// `Real` uses `x, y, u, v` with `z = x + iy`, `w = u + iv`. `Coframe` keeps
/// the complex variables but expands over the invariant 1-forms
/// `phi1, phib1, phi2, phib2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    Complex,
    Real,
    Coframe,
}

impl Chart {
    fn var_names(self) -> [&'static str; 4] {
        match self {
            Chart::Real => ["x", "y", "u", "v"],
            Chart::Complex | Chart::Coframe => ["z", "zb", "w", "wb"],
        }
    }

    fn basis_names(self) -> [&'static str; 4] {
        match self {
            Chart::Complex => ["dz", "dzb", "dw", "dwb"],
            Chart::Real => ["dx", "dy", "du", "dv"],
            Chart::Coframe => ["phi1", "phib1", "phi2", "phib2"],
        }
    }
}

pub type Exponents = [u32; 4];

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: NumberRing,
    terms: BTreeMap<Exponents, NumberValue>,
}

impl Poly {
    pub fn zero(ring: &NumberRing) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: NumberValue) -> Self {
        let mut p = Poly::zero(c.ring());
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn one(ring: &NumberRing) -> Self {
        Poly::constant(ring.one())
    }

    pub fn var(ring: &NumberRing, k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        Poly::monomial(e, ring.one())
    }

    pub fn monomial(e: Exponents, c: NumberValue) -> Self {
        let mut p = Poly::zero(c.ring());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &NumberValue)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<NumberValue> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Exponents, c: NumberValue) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.map_coeffs(|c| -c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &NumberValue) -> Poly {
        self.map_coeffs(|x| x * c)
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(&self.ring), |acc, _| acc.mul(self))
    }

    pub fn map_coeffs(&self, f: impl Fn(&NumberValue) -> NumberValue) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    pub fn derivative(&self, k: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[k] -= 1;
            out.add_term(e2, c.scale_int(e[k] as i64));
        }
        out
    }

    /// Replaces each variable by the given polynomial.
    pub fn substitute(&self, images: &[Poly; 4]) -> Poly {
        let mut powers: [Vec<Poly>; 4] = Default::default();
        for (k, img) in images.iter().enumerate() {
            let max = self.terms.keys().map(|e| e[k]).max().unwrap_or(0);
            let mut list = vec![Poly::one(&self.ring)];
            for j in 1..=max as usize {
                let next = list[j - 1].mul(img);
                list.push(next);
            }
            powers[k] = list;
        }
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for k in 0..4 {
                if e[k] > 0 {
                    t = t.mul(&powers[k][e[k] as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Complex conjugation on the complex chart: swaps each variable with its
    /// conjugate and conjugates coefficients.
    pub fn conjugate(&self) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term([e[1], e[0], e[3], e[2]], c.conjugate());
        }
        out
    }
}

fn fmt_exponents(f: &mut fmt::Formatter<'_>, e: &Exponents, names: [&str; 4]) -> fmt::Result {
    for k in 0..4 {
        match e[k] {
            0 => {}
            1 => write!(f, "*{}", names[k])?,
            n => write!(f, "*{}^{n}", names[k])?,
        }
    }
    Ok(())
}

impl Poly {
    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, chart: Chart) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            fmt_exponents(f, e, chart.var_names())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, Chart::Complex)
    }
}

/// Sign of the permutation sorting `seq` (entries distinct).
fn sort_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn mask_indices(mask: u8) -> Vec<usize> {
    (0..4).filter(|k| mask & (1 << k) != 0).collect()
}

/// `dx_a ∧ dx_b` sign for disjoint increasing words `a`, `b`.
fn wedge_sign(a: u8, b: u8) -> i64 {
    let mut seq = mask_indices(a);
    seq.extend(mask_indices(b));
    sort_sign(&seq)
}

/// A differential form: wedge words (bit masks over the basis) with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    chart: Chart,
    ring: NumberRing,
    terms: BTreeMap<u8, Poly>,
}

impl PolyForm {
    pub fn zero(ring: &NumberRing, chart: Chart) -> Self {
        PolyForm { chart, ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn function(p: Poly, chart: Chart) -> Self {
        PolyForm::term(0, p, chart)
    }

    pub fn constant(c: NumberValue, chart: Chart) -> Self {
        PolyForm::function(Poly::constant(c), chart)
    }

    pub fn term(mask: u8, p: Poly, chart: Chart) -> Self {
        let mut out = PolyForm::zero(p.ring(), chart);
        if !p.is_zero() {
            out.terms.insert(mask, p);
        }
        out
    }

    /// The `k`-th basis 1-form.
    pub fn basis(ring: &NumberRing, k: usize, chart: Chart) -> Self {
        PolyForm::term(1 << k, Poly::one(ring), chart)
    }

    /// Wedge of basis 1-forms in the given order.
    pub fn word(ring: &NumberRing, indices: &[usize], chart: Chart) -> Self {
        indices
            .iter()
            .fold(PolyForm::constant(ring.one(), chart), |acc, &k| acc.wedge(&PolyForm::basis(ring, k, chart)))
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn ring(&self) -> &NumberRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u8, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mask: u8) -> Poly {
        self.terms.get(&mask).cloned().unwrap_or_else(|| Poly::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u8, p: Poly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(old) => old.add(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    fn check_chart(&self, other: &PolyForm) {
        assert_eq!(self.chart, other.chart, "forms on different charts");
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        self.check_chart(other);
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(*m, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyForm {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &NumberValue) -> PolyForm {
        self.map_coeffs(|x| x * c)
    }

    pub fn mul_poly(&self, p: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(&self.ring, self.chart);
        for (m, q) in &self.terms {
            out.add_term(*m, q.mul(p));
        }
        out
    }

    /// Applies `f` to every scalar coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&NumberValue) -> NumberValue) -> PolyForm {
        let mut out = PolyForm::zero(&self.ring, self.chart);
        for (m, p) in &self.terms {
            out.add_term(*m, p.map_coeffs(&f));
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        self.check_chart(other);
        let mut out = PolyForm::zero(&self.ring, self.chart);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let prod = p.mul(q);
                let prod = if wedge_sign(*a, *b) < 0 { prod.neg() } else { prod };
                out.add_term(a | b, prod);
            }
        }
        out
    }

    fn d_over(&self, vars: &[usize]) -> PolyForm {
        assert!(self.chart != Chart::Coframe, "exterior derivative needs coordinate differentials");
        let mut out = PolyForm::zero(&self.ring, self.chart);
        for (m, p) in &self.terms {
            for &k in vars {
                if m & (1 << k) != 0 {
                    continue;
                }
                let dp = p.derivative(k);
                if dp.is_zero() {
                    continue;
                }
                let dp = if wedge_sign(1 << k, *m) < 0 { dp.neg() } else { dp };
                out.add_term(m | (1 << k), dp);
            }
        }
        out
    }

    pub fn exterior_d(&self) -> PolyForm {
        self.d_over(&[0, 1, 2, 3])
    }

    /// Antiholomorphic part of `d` on the complex chart.
    pub fn dbar(&self) -> PolyForm {
        assert_eq!(self.chart, Chart::Complex, "dbar is defined on the complex chart");
        self.d_over(&[1, 3])
    }

    /// Holomorphic part of `d` on the complex chart.
    pub fn del(&self) -> PolyForm {
        assert_eq!(self.chart, Chart::Complex, "del is defined on the complex chart");
        self.d_over(&[0, 2])
    }

    /// Replaces variables by polynomials and basis 1-forms by 1-forms on `target`.
    pub fn substitute(&self, vars: &[Poly; 4], diffs: &[PolyForm; 4], target: Chart) -> PolyForm {
        let mut out = PolyForm::zero(&self.ring, target);
        for (m, p) in &self.terms {
            let word = mask_indices(*m)
                .into_iter()
                .fold(PolyForm::constant(self.ring.one(), target), |acc, k| acc.wedge(&diffs[k]));
            out = out.add(&word.mul_poly(&p.substitute(vars)));
        }
        out
    }

    /// Pullback along the map sending the variables to `images`, on the same chart.
    pub fn pullback_by(&self, images: &[Poly; 4]) -> PolyForm {
        let diffs: [PolyForm; 4] =
            std::array::from_fn(|k| PolyForm::function(images[k].clone(), self.chart).exterior_d());
        self.substitute(images, &diffs, self.chart)
    }

    /// Complex conjugation on the complex chart or the coframe.
    pub fn conjugate(&self) -> PolyForm {
        assert!(self.chart != Chart::Real, "use map_coeffs for real-chart conjugation");
        let swap = [1usize, 0, 3, 2];
        let mut out = PolyForm::zero(&self.ring, self.chart);
        for (m, p) in &self.terms {
            let seq: Vec<usize> = mask_indices(*m).into_iter().map(|k| swap[k]).collect();
            let mask = seq.iter().fold(0u8, |acc, k| acc | (1 << k));
            let c = p.conjugate();
            out.add_term(mask, if sort_sign(&seq) < 0 { c.neg() } else { c });
        }
        out
    }

    /// `(holomorphic, antiholomorphic)` degrees of a basis word on the complex
    /// chart or the coframe.
    pub fn bidegree(mask: u8) -> (u32, u32) {
        ((mask & 0b0101).count_ones(), (mask & 0b1010).count_ones())
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.chart.basis_names();
        for (n, (m, p)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[")?;
            p.fmt_with(f, self.chart)?;
            write!(f, "]")?;
            let word: Vec<&str> = mask_indices(*m).into_iter().map(|k| names[k]).collect();
            if !word.is_empty() {
                write!(f, " {}", word.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({self})", self.chart)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> NumberRing {
        NumberRing::gaussian()
    }

    fn v(k: usize) -> Poly {
        Poly::var(&r(), k)
    }

    #[test]
    fn wedge_anticommutes() {
        let r = r();
        let dz = PolyForm::basis(&r, 0, Chart::Complex);
        let dzb = PolyForm::basis(&r, 1, Chart::Complex);
        assert_eq!(dz.wedge(&dzb), dzb.wedge(&dz).neg());
        assert!(dz.wedge(&dz).is_zero());
    }

    #[test]
    fn d_of_basis_is_zero_and_d_squared_vanishes() {
        let r = r();
        assert!(PolyForm::basis(&r, 0, Chart::Complex).exterior_d().is_zero());
        let p = v(0).mul(&v(1)).mul(&v(2)).add(&v(3).pow(3).scale(&r.i()));
        let f = PolyForm::function(p.clone(), Chart::Complex);
        assert!(f.exterior_d().exterior_d().is_zero());
        let a = PolyForm::basis(&r, 1, Chart::Complex).mul_poly(&p.mul(&v(0)));
        assert!(a.exterior_d().exterior_d().is_zero());
        assert_eq!(a.exterior_d(), a.del().add(&a.dbar()));
    }

    #[test]
    fn leibniz_rule() {
        let r = r();
        let a = PolyForm::basis(&r, 0, Chart::Complex).mul_poly(&v(1).mul(&v(2)));
        let b = PolyForm::basis(&r, 3, Chart::Complex).mul_poly(&v(0).pow(2));
        let lhs = a.wedge(&b).exterior_d();
        let rhs = a.exterior_d().wedge(&b).sub(&a.wedge(&b.exterior_d()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_and_powers() {
        let r = r();
        let p = v(0).pow(2).add(&v(1));
        let images = [v(0).add(&Poly::one(&r)), v(1), v(2), v(3)];
        let expect = v(0).pow(2).add(&v(0).scale(&r.int(2))).add(&Poly::one(&r)).add(&v(1));
        assert_eq!(p.substitute(&images), expect);
    }

    #[test]
    fn pullback_is_functorial() {
        let r = r();
        let f1 = [v(0).scale(&r.i()), v(1).scale(&-r.i()), v(2).add(&v(0).pow(2)), v(3).add(&v(1).pow(2))];
        let f2 = [v(0).add(&Poly::one(&r)), v(1).add(&Poly::one(&r)), v(2).add(&v(0)), v(3).add(&v(1))];
        let form = PolyForm::basis(&r, 2, Chart::Complex)
            .mul_poly(&v(1))
            .wedge(&PolyForm::basis(&r, 0, Chart::Complex));
        // (f2 ∘ f1)^* = f1^* f2^*.
        let composite: [Poly; 4] = std::array::from_fn(|k| f2[k].substitute(&f1));
        assert_eq!(form.pullback_by(&composite), form.pullback_by(&f2).pullback_by(&f1));
        assert_eq!(form.exterior_d().pullback_by(&f1), form.pullback_by(&f1).exterior_d());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let r = r();
        let a = PolyForm::word(&r, &[0, 3], Chart::Complex).mul_poly(&v(1).scale(&r.parse("1 + 2*i").unwrap()));
        assert_eq!(a.conjugate().conjugate(), a);
        assert_eq!(
            PolyForm::basis(&r, 0, Chart::Complex).conjugate(),
            PolyForm::basis(&r, 1, Chart::Complex)
        );
    }
}
