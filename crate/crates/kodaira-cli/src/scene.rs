//! Scene files: a ring, a surface, named lifts and display options, as JSON.

use std::collections::BTreeMap;
use std::path::Path;

use kodaira::exactfield::{NumberRing, NumberValue, SymbolDecl, SymbolKind, Tau};
use kodaira::lifts::SpecialLift;
use kodaira::surface::KodairaData;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default)]
    pub ring: Vec<SymbolRecord>,
    pub surface: SurfaceRecord,
    #[serde(default)]
    pub lifts: BTreeMap<String, LiftRecord>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum SymbolRecord {
    /// `name^2 = -d`.
    Quadratic { name: String, d: u64 },
    /// `value` is the positive real `name / i`, used only for numeric display.
    Transcendental {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceRecord {
    pub tau_b: String,
    pub tau_e: String,
    pub c: String,
    pub delta: String,
}

/// `(z, w) -> (alpha z + beta, |alpha|^2 w + ... + u z + v)`, with the
/// z-coefficient given either directly as `u` or through `sigma10`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftRecord {
    pub alpha: String,
    pub beta: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma10: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    pub v: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self.precision.is_none() && self.format.is_none()
    }
}

/// A validated scene.
pub struct Scene {
    pub file: SceneFile,
    pub ring: NumberRing,
    pub data: KodairaData,
    pub lifts: BTreeMap<String, SpecialLift>,
}

fn schema(what: impl std::fmt::Display) -> CliError {
    CliError::Schema(what.to_string())
}

pub fn parse_value(ring: &NumberRing, text: &str, field: &str) -> Result<NumberValue, CliError> {
    ring.parse(text).map_err(|e| schema(format!("{field}: {e}")))
}

impl SceneFile {
    pub fn load(path: &Path) -> Result<SceneFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| schema(format!("{}: {e}", path.display())))?;
        SceneFile::from_json(&text).map_err(|e| schema(format!("{}: {e}", path.display())))
    }

    pub fn from_json(text: &str) -> Result<SceneFile, CliError> {
        serde_json::from_str(text).map_err(schema)
    }

    #[cfg(test)]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene records serialize")
    }

    pub fn build_ring(&self) -> Result<NumberRing, CliError> {
        let decls = self
            .ring
            .iter()
            .map(|s| match s {
                SymbolRecord::Quadratic { name, d } => SymbolDecl::quadratic(name, *d),
                SymbolRecord::Transcendental { name, .. } => SymbolDecl::transcendental(name),
            })
            .collect();
        for s in &self.ring {
            if let SymbolRecord::Transcendental { name, value: Some(x) } = s {
                if !(x.is_finite() && *x > 0.0) {
                    return Err(schema(format!("ring: value of {name} must be a positive real, got {x}")));
                }
            }
        }
        NumberRing::new(decls).map_err(|e| schema(format!("ring: {e}")))
    }

    /// Parses and validates everything before any computation.
    pub fn validate(self) -> Result<Scene, CliError> {
        let ring = self.build_ring()?;
        let s = &self.surface;
        let tau = |text: &str, field: &str| -> Result<Tau, CliError> {
            Tau::new(parse_value(&ring, text, field)?).map_err(|e| schema(format!("{field}: {e}")))
        };
        let data = KodairaData::new(
            tau(&s.tau_b, "surface.tau_b")?,
            tau(&s.tau_e, "surface.tau_e")?,
            parse_value(&ring, &s.c, "surface.c")?,
            parse_value(&ring, &s.delta, "surface.delta")?,
        )
        .map_err(|e| schema(format!("surface: {e}")))?;
        let mut lifts = BTreeMap::new();
        for (name, rec) in &self.lifts {
            lifts.insert(name.clone(), rec.to_lift(&ring, &data, name)?);
        }
        Ok(Scene { file: self, ring, data, lifts })
    }
}

impl LiftRecord {
    pub fn to_lift(&self, ring: &NumberRing, d: &KodairaData, name: &str) -> Result<SpecialLift, CliError> {
        let field = |f: &str| format!("lifts.{name}.{f}");
        let alpha = parse_value(ring, &self.alpha, &field("alpha"))?;
        let beta = parse_value(ring, &self.beta, &field("beta"))?;
        let v = parse_value(ring, &self.v, &field("v"))?;
        let zero = ring.zero();
        let base = SpecialLift::new(alpha, beta, zero, v, d).map_err(|e| schema(format!("lifts.{name}: {e}")))?;
        let sigma10 = match (&self.sigma10, &self.u) {
            (Some(s), None) => parse_value(ring, s, &field("sigma10"))?,
            (None, Some(u)) => {
                let u = parse_value(ring, u, &field("u"))?;
                let offset = base.u(d).map_err(|e| schema(format!("lifts.{name}: {e}")))?;
                &u - &offset
            }
            _ => return Err(schema(format!("lifts.{name}: give exactly one of sigma10 and u"))),
        };
        SpecialLift::new(base.alpha().clone(), base.beta().clone(), sigma10, base.v().clone(), d)
            .map_err(|e| schema(format!("lifts.{name}: {e}")))
    }

    pub fn from_lift(l: &SpecialLift) -> Self {
        LiftRecord {
            alpha: l.alpha().to_string(),
            beta: l.beta().to_string(),
            sigma10: Some(l.sigma10().to_string()),
            u: None,
            v: l.v().to_string(),
        }
    }
}

impl SurfaceRecord {
    pub fn from_data(d: &KodairaData) -> Self {
        SurfaceRecord {
            tau_b: d.tau_b().value().to_string(),
            tau_e: d.tau_e().value().to_string(),
            c: d.c().to_string(),
            delta: d.delta().to_string(),
        }
    }
}

impl Scene {
    /// The scene with every value printed in normal form and lifts given by `sigma10`.
    pub fn canonical(&self) -> SceneFile {
        SceneFile {
            ring: self.file.ring.clone(),
            surface: SurfaceRecord::from_data(&self.data),
            lifts: self.lifts.iter().map(|(k, l)| (k.clone(), LiftRecord::from_lift(l))).collect(),
            options: self.file.options.clone(),
        }
    }

    /// Positive real `s / i` for the transcendental symbol at ring index `k`.
    pub fn numeric(&self, k: usize) -> Option<f64> {
        let name = self.ring.name(k);
        if self.ring.kind(k) != SymbolKind::Transcendental {
            return None;
        }
        self.file.ring.iter().find_map(|s| match s {
            SymbolRecord::Transcendental { name: n, value } if n == name => *value,
            _ => None,
        })
    }

    pub fn lift(&self, name: Option<&str>) -> Result<(&str, &SpecialLift), CliError> {
        match name {
            Some(n) => self
                .lifts
                .get_key_value(n)
                .map(|(k, l)| (k.as_str(), l))
                .ok_or_else(|| schema(format!("no lift named `{n}`"))),
            None if self.lifts.len() == 1 => {
                let (k, l) = self.lifts.iter().next().expect("one lift");
                Ok((k.as_str(), l))
            }
            None => Err(schema(format!("choose a lift with --lift; the scene has {}", self.lifts.len()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = r#"{
        "ring": [{"kind": "quadratic", "name": "s3", "d": 3}, {"kind": "transcendental", "name": "p", "value": 3.5}],
        "surface": {"tau_b": "i", "tau_e": "p", "c": "2", "delta": "1/3"},
        "lifts": {"t": {"alpha": "1", "beta": "1/2*p", "u": "0", "v": "0"}}
    }"#;

    #[test]
    fn parses_and_canonicalizes() {
        let scene = SceneFile::from_json(TEXT).unwrap().validate().unwrap();
        let canon = scene.canonical();
        assert_eq!(canon.lifts["t"].sigma10.as_deref(), Some("0"));
        let again = SceneFile::from_json(&canon.to_json()).unwrap().validate().unwrap().canonical();
        assert_eq!(again, canon);
        assert_eq!(scene.numeric(scene.ring.index_of("p").unwrap()), Some(3.5));
    }

    #[test]
    fn schema_violations() {
        let bad = [
            TEXT.replace("\"delta\"", "\"dleta\""),
            TEXT.replace("\"1/3\"", "\"q\""),
            TEXT.replace("\"u\": \"0\", ", ""),
            TEXT.replace("3.5", "-1"),
            TEXT.replace("\"c\": \"2\"", "\"c\": \"1/2\""),
        ];
        for text in bad {
            let r = SceneFile::from_json(&text).and_then(SceneFile::validate);
            assert!(matches!(r, Err(CliError::Schema(_))), "{text}");
        }
    }
}
