//! JSON instance files.
//!
//! `{"a": "p/q", "K": int, "dummy": bool, "targets": [{"ua_d": .., "uu_d": ..,
//! "ua_a": .., "uu_a": ..}, ...]}` where every rational is a string `"p/q"`
//! or a decimal integer (string or JSON number).

use serde::{Deserialize, Serialize};

use super::{validate_instance, AuditGameInstance, ModelError, TargetUtilities};
use crate::arith::{self, Rational};

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum Num {
    Text(String),
    Int(i64),
}

impl Num {
    fn of(r: &Rational) -> Num {
        Num::Text(arith::format_rational(r))
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    ua_d: Num,
    uu_d: Num,
    ua_a: Num,
    uu_a: Num,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    a: Num,
    #[serde(rename = "K")]
    k: u32,
    #[serde(default)]
    dummy: bool,
    targets: Vec<RawTarget>,
}

fn syntax(path: &str, message: String) -> ModelError {
    ModelError::SyntaxError { path: path.to_string(), line: 0, column: 0, message }
}

fn num(v: &Num, path: &str) -> Result<Rational, ModelError> {
    match v {
        Num::Int(i) => Ok(arith::int(*i)),
        Num::Text(s) => arith::parse_rational(s).map_err(|m| syntax(path, m)),
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<AuditGameInstance, ModelError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let raw: RawInstance = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ModelError::SyntaxError { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
    })?;
    let mut targets = Vec::with_capacity(raw.targets.len());
    for (i, t) in raw.targets.iter().enumerate() {
        let f = |v: &Num, name: &str| num(v, &format!("targets[{i}].{name}"));
        targets.push(TargetUtilities::new(f(&t.ua_d, "ua_d")?, f(&t.uu_d, "uu_d")?, f(&t.ua_a, "ua_a")?, f(&t.uu_a, "uu_a")?));
    }
    validate_instance(AuditGameInstance { targets, a: num(&raw.a, "a")?, k: raw.k, has_dummy: raw.dummy })
}

/// Pretty-printed JSON with a trailing newline.
pub fn serialize_instance(inst: &AuditGameInstance) -> Vec<u8> {
    let raw = RawInstance {
        a: Num::of(&inst.a),
        k: inst.k,
        dummy: inst.has_dummy,
        targets: inst
            .targets
            .iter()
            .map(|t| RawTarget { ua_d: Num::of(&t.ua_d), uu_d: Num::of(&t.uu_d), ua_a: Num::of(&t.ua_a), uu_a: Num::of(&t.uu_a) })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&raw).expect("instance serialises");
    out.push(b'\n');
    out
}
