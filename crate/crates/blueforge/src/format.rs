//! JSON file formats: blueprint presentations and Arakelov divisors.

use std::collections::BTreeMap;
use std::path::Path;

use blueforge_core::arakelov::{Archimedean, ArakelovDivisor};
use blueforge_core::hp::Ctx;
use blueforge_core::presentation::{BlueprintPresentation, FormalSum, MonoidPresentation, MonoidWord};
use blueforge_core::rational::{format_rational, parse_rational};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::FormatError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Vec<String>,
    #[serde(default)]
    monoid_relations: Vec<(Value, Value)>,
    #[serde(default)]
    preaddition: Vec<(Vec<Value>, Vec<Value>)>,
}

fn json_error(e: serde_json::Error) -> FormatError {
    FormatError::Json { line: e.line(), column: e.column(), message: e.to_string() }
}

fn malformed(position: &str, what: &str) -> FormatError {
    FormatError::Core(blueforge_core::Error::Malformed(format!("{what} at {position}")))
}

/// A word is `"0"`, `"1"`, or a list of `[generator, exponent]` pairs.
fn parse_word(v: &Value, generators: &[String], position: &str) -> Result<MonoidWord, FormatError> {
    match v {
        Value::String(s) if s == "0" => Ok(MonoidWord::zero()),
        Value::String(s) if s == "1" => Ok(MonoidWord::one()),
        Value::Array(factors) => {
            let mut exps = vec![0u32; generators.len()];
            for (k, f) in factors.iter().enumerate() {
                let at = format!("{position}[{k}]");
                let pair = f.as_array().filter(|p| p.len() == 2).ok_or_else(|| malformed(&at, "expected [generator, exponent]"))?;
                let name = pair[0].as_str().ok_or_else(|| malformed(&at, "generator must be a string"))?;
                let e = pair[1]
                    .as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| malformed(&at, "exponent must be a non-negative integer"))?;
                let g = generators.iter().position(|x| x == name).ok_or_else(|| {
                    FormatError::Core(blueforge_core::Error::UndeclaredGenerator { name: name.into(), position: at.clone() })
                })?;
                exps[g] += e;
            }
            Ok(MonoidWord::from_exponents(exps))
        }
        _ => Err(malformed(position, "expected a word")),
    }
}

fn parse_sum(v: &[Value], generators: &[String], position: &str) -> Result<FormalSum, FormatError> {
    let words = v
        .iter()
        .enumerate()
        .map(|(k, w)| parse_word(w, generators, &format!("{position}[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FormalSum::from_words(words))
}

pub fn parse_presentation(text: &str) -> Result<BlueprintPresentation, FormatError> {
    let raw: RawPresentation = serde_json::from_str(text).map_err(json_error)?;
    let gens = raw.generators;
    let mut rels = Vec::new();
    for (k, (l, r)) in raw.monoid_relations.iter().enumerate() {
        let l = parse_word(l, &gens, &format!("monoid_relations[{k}][0]"))?;
        let r = parse_word(r, &gens, &format!("monoid_relations[{k}][1]"))?;
        rels.push((l, r));
    }
    let mut pre = Vec::new();
    for (k, (l, r)) in raw.preaddition.iter().enumerate() {
        let l = parse_sum(l, &gens, &format!("preaddition[{k}][0]"))?;
        let r = parse_sum(r, &gens, &format!("preaddition[{k}][1]"))?;
        pre.push((l, r));
    }
    let monoid = MonoidPresentation::new(gens, rels)?;
    Ok(BlueprintPresentation::new(monoid, pre)?)
}

pub fn read_presentation(path: &Path) -> Result<BlueprintPresentation, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })?;
    parse_presentation(&text)
}

fn word_json(p: &MonoidPresentation, w: &MonoidWord) -> Value {
    if w.is_zero() {
        return json!("0");
    }
    let factors: Vec<Value> = w
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| json!([p.generators()[g], e]))
        .collect();
    Value::Array(factors)
}

fn sum_json(p: &MonoidPresentation, s: &FormalSum) -> Value {
    Value::Array(s.words().iter().map(|w| word_json(p, w)).collect())
}

pub fn presentation_json(b: &BlueprintPresentation) -> Value {
    let m = b.monoid();
    json!({
        "generators": m.generators(),
        "monoid_relations": m.relations().iter().map(|(l, r)| json!([word_json(m, l), word_json(m, r)])).collect::<Vec<_>>(),
        "preaddition": b.preaddition().iter().map(|(l, r)| json!([sum_json(m, l), sum_json(m, r)])).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivisor {
    #[serde(default)]
    finite: BTreeMap<String, i64>,
    inf: RawArchimedean,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArchimedean {
    value: String,
    kind: String,
}

pub fn parse_divisor(text: &str, ctx: &Ctx) -> Result<ArakelovDivisor, FormatError> {
    let raw: RawDivisor = serde_json::from_str(text).map_err(json_error)?;
    let mut finite = BTreeMap::new();
    for (p, e) in raw.finite {
        let q: BigUint = p.parse().map_err(|_| malformed(&format!("finite.{p}"), "prime key must be an integer"))?;
        finite.insert(q, e);
    }
    let inf = match raw.inf.kind.as_str() {
        "rational" => Archimedean::Rational(parse_rational(&raw.inf.value)?),
        "real" => Archimedean::Real(ctx.parse(&raw.inf.value)?),
        k => return Err(malformed("inf.kind", &format!("unknown kind `{k}`"))),
    };
    Ok(ArakelovDivisor::new(finite, inf)?)
}

pub fn divisor_json(d: &ArakelovDivisor, ctx: &Ctx) -> Value {
    let finite: serde_json::Map<String, Value> = d.finite().iter().map(|(p, e)| (p.to_string(), json!(e))).collect();
    let inf = match d.archimedean() {
        Archimedean::Rational(q) => json!({"value": format_rational(q), "kind": "rational"}),
        Archimedean::Real(r) => json!({"value": ctx.format(r), "kind": "real"}),
    };
    json!({"finite": finite, "inf": inf})
}
