//! The action of an automorphism on Dolbeault cohomology, computed from
//! pullbacks of the invariant generators.

use super::invariant::{coframe, from_coframe, pullback, to_coframe};
use super::poly::{Chart, PolyForm};
use crate::error::{Error, Result};
use crate::exactfield::NumberValue;
use crate::lifts::SpecialLift;
use crate::surface::KodairaData;

/// Coframe slots.
const P1: usize = 0;
const PB1: usize = 1;
const P2: usize = 2;
const PB2: usize = 3;

/// A bidegree with its generators, as ordered wedge words in the coframe slots.
pub type GeneratorSet = ((u32, u32), &'static [&'static [usize]]);

pub const GENERATORS: [GeneratorSet; 9] = [
    ((0, 0), &[&[]]),
    ((1, 0), &[&[P1]]),
    ((0, 1), &[&[PB1], &[PB2]]),
    ((2, 0), &[&[P1, P2]]),
    ((1, 1), &[&[P1, PB2], &[P2, PB1]]),
    ((0, 2), &[&[PB1, PB2]]),
    ((2, 1), &[&[P1, P2, PB1], &[P1, P2, PB2]]),
    ((1, 2), &[&[P2, PB1, PB2]]),
    ((2, 2), &[&[P1, P2, PB1, PB2]]),
];

pub fn generator_label(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let names = ["phi1", "phibar1", "phi2", "phibar2"];
    word.iter().map(|&k| names[k]).collect::<Vec<_>>().join("^")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBlock {
    pub p: u32,
    pub q: u32,
    pub labels: Vec<String>,
    /// `matrix[i][j]` is the coefficient of generator `j` in the pullback of generator `i`.
    pub matrix: Vec<Vec<NumberValue>>,
}

impl ActionBlock {
    pub fn trace(&self) -> NumberValue {
        let r = self.matrix[0][0].ring();
        (0..self.matrix.len()).fold(r.zero(), |acc, i| &acc + &self.matrix[i][i])
    }

    pub fn det(&self) -> NumberValue {
        let m = &self.matrix;
        match m.len() {
            1 => m[0][0].clone(),
            2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
            n => unreachable!("Hodge numbers are at most 2, got a block of size {n}"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DolbeaultAction {
    pub blocks: Vec<ActionBlock>,
}

impl DolbeaultAction {
    pub fn block(&self, p: u32, q: u32) -> &ActionBlock {
        self.blocks.iter().find(|b| (b.p, b.q) == (p, q)).expect("every bidegree has a block")
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(ActionBlock::is_identity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDet {
    /// `(p, q, trace, det)` per block.
    pub blocks: Vec<(u32, u32, NumberValue, NumberValue)>,
    pub total_trace: NumberValue,
    pub total_det: NumberValue,
}

fn require_automorphism(l: &SpecialLift) -> Result<()> {
    if !l.alpha().abs2().is_one() {
        return Err(Error::InvalidLift(format!(
            "cohomology actions need |alpha| = 1, got alpha = {}",
            l.alpha()
        )));
    }
    Ok(())
}

/// The constant `rho` with `f^* phi2 = rho phi1 + phi2`.
pub fn rho(l: &SpecialLift, d: &KodairaData) -> Result<NumberValue> {
    require_automorphism(l)?;
    let r = d.ring();
    let cf = coframe(d)?;
    let diff = to_coframe(&pullback(&cf[P2], &l.to_cover_map(d)?).sub(&cf[P2]), d)?;
    let mut value = r.zero();
    for (mask, p) in diff.terms() {
        match (*mask, p.as_constant()) {
            (m, Some(c)) if m == 1 << P1 => value = c,
            _ => {
                return Err(Error::NonConstantRho(format!(
                    "pullback of phi2 minus phi2 is {diff}, not a constant multiple of phi1"
                )))
            }
        }
    }
    Ok(value)
}

/// Constant coefficients of a coframe expansion on the words of one bidegree.
fn coefficient_vector(a: &PolyForm, masks: &[u8]) -> Result<Vec<NumberValue>> {
    for (m, _) in a.terms() {
        if !masks.contains(m) {
            return Err(Error::BasisExpressionFailure(format!("{a} leaves the bidegree")));
        }
    }
    masks
        .iter()
        .map(|m| {
            a.coefficient(*m)
                .as_constant()
                .ok_or_else(|| Error::BasisExpressionFailure(format!("{a} has non-constant coefficients")))
        })
        .collect()
}

fn words_of_bidegree(p: u32, q: u32) -> Vec<u8> {
    (0u8..16).filter(|m| PolyForm::bidegree(*m) == (p, q)).collect()
}

/// Solves `target = sum a_j gens_j + sum b_k exact_k` for the `a_j`.
fn express(target: &[NumberValue], gens: &[Vec<NumberValue>], exact: &[Vec<NumberValue>]) -> Result<Vec<NumberValue>> {
    let fail = || Error::BasisExpressionFailure("pullback is not in the span of the generators".into());
    let rows = target.len();
    let r = target[0].ring().clone();
    // Exact columns first so that each generator column must carry its own pivot.
    let cols: Vec<&Vec<NumberValue>> = exact.iter().chain(gens.iter()).collect();
    let ncols = cols.len();
    let mut m: Vec<Vec<NumberValue>> = (0..rows)
        .map(|i| cols.iter().map(|c| c[i].clone()).chain(std::iter::once(target[i].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..rows).find(|&i| m[i][col].inverse().is_ok()) else {
            if (row..rows).any(|i| !m[i][col].is_zero()) {
                return Err(Error::BasisExpressionFailure("pivot is not invertible".into()));
            }
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inverse()?;
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(p * &f);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    if (row..rows).any(|i| !m[i][ncols].is_zero()) {
        return Err(fail());
    }
    let mut out = vec![r.zero(); gens.len()];
    for (j, slot) in out.iter_mut().enumerate() {
        let col = exact.len() + j;
        let (pr, _) = pivots.iter().find(|(_, c)| *c == col).ok_or_else(fail)?;
        *slot = m[*pr][ncols].clone();
    }
    Ok(out)
}

/// Matrices of `f^*` on each Dolbeault group in the generator bases.
pub fn dolbeault_action(l: &SpecialLift, d: &KodairaData) -> Result<DolbeaultAction> {
    require_automorphism(l)?;
    rho(l, d)?;
    let r = d.ring();
    let map = l.to_cover_map(d)?;
    let ch = Chart::Coframe;
    let mut blocks = Vec::new();
    for ((p, q), words) in GENERATORS {
        let masks = words_of_bidegree(p, q);
        let gen_vectors: Vec<Vec<NumberValue>> = words
            .iter()
            .map(|w| coefficient_vector(&PolyForm::word(r, w, ch), &masks))
            .collect::<Result<_>>()?;
        let mut exact = Vec::new();
        if q > 0 {
            for m in words_of_bidegree(p, q - 1) {
                let word: Vec<usize> = (0..4).filter(|k| m & (1 << k) != 0).collect();
                let form = from_coframe(&PolyForm::word(r, &word, ch), d)?.dbar();
                let v = coefficient_vector(&to_coframe(&form, d)?, &masks)?;
                if v.iter().any(|x| !x.is_zero()) {
                    exact.push(v);
                }
            }
        }
        let mut matrix = Vec::new();
        for w in words {
            let pulled = pullback(&from_coframe(&PolyForm::word(r, w, ch), d)?, &map);
            let target = coefficient_vector(&to_coframe(&pulled, d)?, &masks)?;
            matrix.push(express(&target, &gen_vectors, &exact)?);
        }
        blocks.push(ActionBlock { p, q, labels: words.iter().map(|w| generator_label(w)).collect(), matrix });
    }
    Ok(DolbeaultAction { blocks })
}

pub fn trace_det(act: &DolbeaultAction) -> TraceDet {
    let r = act.blocks[0].matrix[0][0].ring().clone();
    let mut total_trace = r.zero();
    let mut total_det = r.one();
    let mut blocks = Vec::new();
    for b in &act.blocks {
        let (t, dt) = (b.trace(), b.det());
        total_trace = &total_trace + &t;
        total_det = &total_det * &dt;
        blocks.push((b.p, b.q, t, dt));
    }
    TraceDet { blocks, total_trace, total_det }
}

/// Alternating sum of traces over total degree.
pub fn lefschetz(act: &DolbeaultAction) -> NumberValue {
    let r = act.blocks[0].matrix[0][0].ring().clone();
    act.blocks.iter().fold(r.zero(), |acc, b| {
        let t = b.trace();
        if (b.p + b.q) % 2 == 0 {
            &acc + &t
        } else {
            &acc - &t
        }
    })
}

pub fn is_symplectic(l: &SpecialLift) -> bool {
    l.alpha().is_one()
}

pub fn acts_trivially_on_cohomology(l: &SpecialLift, d: &KodairaData) -> Result<bool> {
    Ok(l.alpha().is_one() && rho(l, d)?.is_zero())
}

/// `u = c Im(beta)/Im(tau_B)` and `m beta` in the base lattice, with `m` the torsion coefficient.
pub fn trivial_action_criterion(l: &SpecialLift, d: &KodairaData) -> Result<bool> {
    if !l.alpha().is_one() {
        return Ok(false);
    }
    let t = d.tau_b().value();
    // Im(beta)/Im(tau) as a ring element: (beta - conj beta)/(tau - conj tau).
    let ratio = (l.beta() - &l.beta().conjugate()).divide(&(t - &t.conjugate()))?;
    let m = crate::surface::torsion_coefficient(d).m;
    let m_beta = l.beta().scale_int(m);
    Ok(l.u(d)? == &ratio * d.c() && d.tau_b().in_lattice(&m_beta))
}
