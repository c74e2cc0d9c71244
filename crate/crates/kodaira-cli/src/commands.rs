//! Each command turns a validated scene into a JSON report.

use kodaira::acceptance;
use kodaira::exactfield::NumberValue;
use kodaira::fixedlocus::{base_fixed_points, fixed_locus_with};
use kodaira::forms::{
    dolbeault_action, is_symplectic, lefschetz, rho, trace_det, trivial_action_criterion, verify_invariant_generators,
};
use kodaira::lifts::{
    canonical_unit, classify_kernel, count_base_translations_infinite, factor_semidirect, nk_invariants, order_n_lift,
    power_sequences, KernelClass, MapClass, SpecialLift,
};
use kodaira::par::Exec;
use kodaira::pi1::{abelianization_invariants, AbelianInvariants, Pi1Element};
use kodaira::surface::{is_isomorphic, moduli_point, normalize_c, normalize_delta, torsion_coefficient, KodairaData};
use serde_json::{json, Value};

use crate::scene::{LiftRecord, Scene, SurfaceRecord};
use crate::CliError;

fn domain(e: kodaira::Error) -> CliError {
    CliError::Domain(e.to_string())
}

fn s(x: &NumberValue) -> Value {
    Value::String(x.to_string())
}

fn lift_json(l: &SpecialLift, d: &KodairaData) -> Result<Value, CliError> {
    let mut rec = serde_json::to_value(LiftRecord::from_lift(l)).expect("lift records serialize");
    rec["u"] = s(&l.u(d).map_err(domain)?);
    Ok(rec)
}

fn invariants_json(inv: &AbelianInvariants) -> Value {
    json!({ "free_rank": inv.free_rank, "torsion": inv.torsion })
}

fn class_name(c: MapClass) -> &'static str {
    match c {
        MapClass::NotDescending => "NotDescending",
        MapClass::Endomorphism => "Endomorphism",
        MapClass::Automorphism => "Automorphism",
    }
}

fn require_descent(l: &SpecialLift, d: &KodairaData) -> Result<(), CliError> {
    let rep = l.descent_report(d).map_err(domain)?;
    if rep.class == MapClass::NotDescending {
        let mut why = Vec::new();
        if !rep.sigma10_in_lattice {
            why.push(format!("sigma10 = {} is not in the fibre lattice", l.sigma10()));
        }
        if !rep.second_in_lattice {
            why.push(format!("second descent value {} is not in the fibre lattice", rep.second_value));
        }
        return Err(CliError::Domain(format!("lift does not descend: {}", why.join("; "))));
    }
    Ok(())
}

pub fn canonical(scene: &Scene) -> Value {
    serde_json::to_value(scene.canonical()).expect("scenes serialize")
}

pub fn normalize(scene: &Scene) -> Result<Value, CliError> {
    let (d0, shift) = normalize_delta(&scene.data).map_err(domain)?;
    let (d1, scale) = normalize_c(&d0).map_err(domain)?;
    Ok(json!({
        "torsion_coefficient": torsion_coefficient(&scene.data).m,
        "base_shift": s(&shift),
        "fibre_scale": s(&scale),
        "delta_zero": SurfaceRecord::from_data(&d0),
        "normal_form": SurfaceRecord::from_data(&d1),
    }))
}

pub fn iso(a: &Scene, b: &Scene) -> Result<Value, CliError> {
    if !a.ring.same(&b.ring) {
        return Err(CliError::Schema("both scenes must declare the same ring".into()));
    }
    Ok(json!({ "isomorphic": is_isomorphic(&a.data, &b.data).map_err(domain)? }))
}

pub fn moduli(scene: &Scene, precision: u32) -> Result<Value, CliError> {
    let p = moduli_point(&scene.data, precision, &|k| scene.numeric(k)).map_err(domain)?;
    let digits = precision.min(17) as usize;
    let fixed = |x: f64| {
        let t = format!("{x:.digits$}");
        // A value that rounds to zero prints without a sign.
        match t.strip_prefix('-') {
            Some(rest) if rest.chars().all(|ch| ch == '0' || ch == '.') => rest.to_string(),
            _ => t,
        }
    };
    let c = |z: num_complex::Complex64| json!({ "re": fixed(z.re), "im": fixed(z.im) });
    Ok(json!({ "j_tau_b": c(p.j), "q_tau_e": c(p.q_e), "torsion_coefficient": torsion_coefficient(&scene.data).m }))
}

pub enum Pi1Op {
    Abelianization,
    Star([i64; 4], [i64; 4]),
    Inverse([i64; 4]),
    Commutator([i64; 4], [i64; 4]),
}

fn element(m: [i64; 4], d: &KodairaData) -> Pi1Element {
    Pi1Element::from_exponents(m[0], m[1], m[2], m[3], d)
}

fn exponents(g: &Pi1Element) -> Value {
    let (a, b, c, e) = g.to_exponents();
    json!([a, b, c, e])
}

pub fn pi1(scene: &Scene, op: Pi1Op) -> Result<Value, CliError> {
    let d = &scene.data;
    Ok(match op {
        Pi1Op::Abelianization => json!({ "abelianization": invariants_json(&abelianization_invariants(d).map_err(domain)?) }),
        Pi1Op::Star(a, b) => json!({ "star": exponents(&element(a, d).star(&element(b, d), d)) }),
        Pi1Op::Inverse(a) => json!({ "inverse": exponents(&element(a, d).inverse(d)) }),
        Pi1Op::Commutator(a, b) => json!({ "commutator": exponents(&element(a, d).commutator(&element(b, d), d)) }),
    })
}

fn base_map(l: &SpecialLift, d: &KodairaData) -> Value {
    if !l.alpha().is_one() {
        let kind = if l.is_unit() { "automorphism" } else { "endomorphism" };
        return json!({ "kind": kind, "multiplier": s(l.alpha()), "degree": s(&l.alpha().abs2()) });
    }
    if d.tau_b().in_lattice(l.beta()) {
        json!({ "kind": "identity" })
    } else {
        json!({ "kind": "translation", "by": s(&d.tau_b().reduce(l.beta()).unwrap_or_else(|_| l.beta().clone())) })
    }
}

pub fn check_lift(scene: &Scene, name: Option<&str>) -> Result<Value, CliError> {
    let d = &scene.data;
    let (name, l) = scene.lift(name)?;
    let rep = l.descent_report(d).map_err(domain)?;
    let mut out = json!({
        "lift": name,
        "class": class_name(rep.class),
        "sigma10_in_lattice": rep.sigma10_in_lattice,
        "second_value": s(&rep.second_value),
        "second_in_lattice": rep.second_in_lattice,
        "base_map": base_map(l, d),
        "cover_map": lift_json(l, d)?,
    });
    if rep.class != MapClass::NotDescending {
        let images: Vec<Value> = Pi1Element::generators(d)
            .iter()
            .map(|g| l.conjugate_deck(d, g).map(|x| exponents(&x)))
            .collect::<kodaira::Result<_>>()
            .map_err(domain)?;
        out["generator_images"] = Value::Array(images);
    }
    Ok(out)
}

pub fn compose(scene: &Scene, outer: &str, inner: &str) -> Result<Value, CliError> {
    let d = &scene.data;
    let (_, f) = scene.lift(Some(outer))?;
    let (_, g) = scene.lift(Some(inner))?;
    let h = f.compose(g, d).map_err(domain)?;
    Ok(json!({ "composite": lift_json(&h, d)?, "class": class_name(h.descent_check(d).map_err(domain)?) }))
}

pub fn power(scene: &Scene, name: Option<&str>, m: u32) -> Result<Value, CliError> {
    let d = &scene.data;
    let (_, l) = scene.lift(name)?;
    let p = l.power(m, d).map_err(domain)?;
    let mut out = json!({ "exponent": m, "power": lift_json(&p, d)? });
    if l.is_unit() {
        let (b, u, v) = power_sequences(l, m, d).map_err(domain)?;
        out["closed_form"] = json!({ "beta": s(&b), "u": s(&u), "v": s(&v) });
    }
    Ok(out)
}

pub fn order_n(scene: &Scene) -> Result<Value, CliError> {
    let d = &scene.data;
    let (n, omega) = canonical_unit(d).map_err(domain)?;
    let f = order_n_lift(d, &omega).map_err(domain)?;
    let id = SpecialLift::identity(d);
    let trivial: Vec<bool> =
        (1..=n).map(|k| f.power(k, d).and_then(|p| p.equal_mod_pi1(&id, d))).collect::<kodaira::Result<_>>().map_err(domain)?;
    Ok(json!({ "order": n, "unit": s(&omega), "lift": lift_json(&f, d)?, "power_is_identity": trivial }))
}

pub fn semidirect(scene: &Scene, name: Option<&str>) -> Result<Value, CliError> {
    let d = &scene.data;
    let (_, l) = scene.lift(name)?;
    require_descent(l, d)?;
    let (part, k) = factor_semidirect(l, d).map_err(domain)?;
    let (n, omega) = canonical_unit(d).map_err(domain)?;
    Ok(json!({ "base_translation_part": lift_json(&part, d)?, "rotation_exponent": k, "order": n, "unit": s(&omega) }))
}

pub fn kernel_class(scene: &Scene, name: Option<&str>) -> Result<Value, CliError> {
    let d = &scene.data;
    let (_, l) = scene.lift(name)?;
    require_descent(l, d)?;
    Ok(match classify_kernel(l, d).map_err(domain)? {
        KernelClass::NotInKerPsi => json!({ "kind": "nontrivial_on_base" }),
        KernelClass::FibreTranslation(v) => json!({ "kind": "fibre_translation", "by": s(&v) }),
        KernelClass::GaugeWithHom => json!({ "kind": "varying_fibre_translation" }),
    })
}

pub fn nk(scene: &Scene) -> Result<Value, CliError> {
    let d = &scene.data;
    let inv = nk_invariants(d).map_err(domain)?;
    Ok(json!({
        "invariants": invariants_json(&inv),
        "infinitely_many_base_translations": count_base_translations_infinite(d).map_err(domain)?,
    }))
}

#[derive(Clone, Copy, Default)]
pub struct CohomologyParts {
    pub action: bool,
    pub trace: bool,
    pub det: bool,
    pub lefschetz: bool,
    pub symplectic: bool,
    pub trivial: bool,
}

impl CohomologyParts {
    pub fn or_all(self) -> Self {
        let any = self.action || self.trace || self.det || self.lefschetz || self.symplectic || self.trivial;
        if any {
            self
        } else {
            CohomologyParts { action: true, trace: true, det: true, lefschetz: true, symplectic: true, trivial: true }
        }
    }
}

pub fn cohomology(scene: &Scene, name: Option<&str>, parts: CohomologyParts) -> Result<Value, CliError> {
    let d = &scene.data;
    let (_, l) = scene.lift(name)?;
    require_descent(l, d)?;
    let parts = parts.or_all();
    let act = dolbeault_action(l, d).map_err(domain)?;
    let td = trace_det(&act);
    let mut out = json!({ "rho": s(&rho(l, d).map_err(domain)?) });
    let key = |p: u32, q: u32| format!("h{p}{q}");
    if parts.action {
        let blocks: serde_json::Map<String, Value> = act
            .blocks
            .iter()
            .map(|b| {
                let m: Vec<Vec<Value>> = b.matrix.iter().map(|row| row.iter().map(s).collect()).collect();
                (key(b.p, b.q), json!({ "basis": b.labels, "matrix": m }))
            })
            .collect();
        out["action"] = Value::Object(blocks);
    }
    if parts.trace {
        let t: serde_json::Map<String, Value> = td.blocks.iter().map(|(p, q, t, _)| (key(*p, *q), s(t))).collect();
        out["trace"] = Value::Object(t);
        out["total_trace"] = s(&td.total_trace);
    }
    if parts.det {
        let t: serde_json::Map<String, Value> = td.blocks.iter().map(|(p, q, _, dt)| (key(*p, *q), s(dt))).collect();
        out["det"] = Value::Object(t);
        out["total_det"] = s(&td.total_det);
    }
    if parts.lefschetz {
        out["lefschetz"] = s(&lefschetz(&act));
    }
    if parts.symplectic {
        out["symplectic"] = Value::Bool(is_symplectic(l));
    }
    if parts.trivial {
        out["acts_trivially"] = Value::Bool(act.is_identity());
        out["trivial_criterion"] = Value::Bool(trivial_action_criterion(l, d).map_err(domain)?);
    }
    Ok(out)
}

pub fn fixed_locus(scene: &Scene, name: Option<&str>, exec: Exec) -> Result<Value, CliError> {
    let d = &scene.data;
    let (_, l) = scene.lift(name)?;
    require_descent(l, d)?;
    let loc = fixed_locus_with(l, d, exec).map_err(domain)?;
    let base = base_fixed_points(l, d).map_err(domain)?;
    Ok(json!({
        "kind": loc.kind(),
        "fibres": loc.fibres().iter().map(s).collect::<Vec<_>>(),
        "base_fixed_points": base.iter().map(s).collect::<Vec<_>>(),
    }))
}

pub fn verify_forms(scene: &Scene) -> Result<Value, CliError> {
    let rep = verify_invariant_generators(&scene.data).map_err(domain)?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({ "identity": c.name, "holds": c.passed(), "residual": c.residual.to_string() }))
        .collect();
    Ok(json!({ "all_hold": rep.all_passed(), "checks": checks }))
}

pub fn selftest(exec: Exec, only: Option<u32>) -> Result<(Value, bool), CliError> {
    let outcomes = match only {
        Some(id) => vec![acceptance::run(id, exec).ok_or_else(|| CliError::Schema(format!("no criterion {id}")))?],
        None => acceptance::run_all(exec),
    };
    let passed = outcomes.iter().all(|o| o.passed);
    // Timings are left out so that the report is byte-stable.
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))
        .collect();
    Ok((json!({ "criteria": rows, "all_passed": passed }), passed))
}
