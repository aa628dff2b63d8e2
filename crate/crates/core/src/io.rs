//! JSON file formats: groups, inequality systems and vector lists.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, DirichletIneq, RatVec};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    n: usize,
    generators: Vec<GeneratorSpec>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorSpec {
    Images(Vec<usize>),
    Cycles(String),
}

#[derive(Serialize)]
struct GroupOut {
    n: usize,
    generators: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IneqFile {
    n: usize,
    ineqs: Vec<IneqRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IneqRecord {
    gamma: Vec<String>,
    alpha: Vec<String>,
    g: Vec<usize>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(
        format!("line {} column {}", e.line(), e.column()),
        strip_position(&e.to_string()),
    )
}

// serde_json appends " at line L column C"; the location is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(k) => message[..k].to_string(),
        None => message.to_string(),
    }
}

fn in_file(path: &Path, err: Error) -> Error {
    match err {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    }
}

/// Parses the group format `{"n": 6, "generators": ["(1 2 3)", [2, 3, 1, 4, 5, 6]]}`.
/// Cycle strings are 1-based and may omit fixed points; image arrays list
/// `g(1), ..., g(n)`.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(json_error)?;
    let mut gens = Vec::with_capacity(file.generators.len());
    for (k, spec) in file.generators.iter().enumerate() {
        let at = |loc: Option<String>| match loc {
            Some(l) => format!("generator {}, {l}", k + 1),
            None => format!("generator {}", k + 1),
        };
        let g = match spec {
            GeneratorSpec::Cycles(s) => Permutation::parse_cycles(file.n, s).map_err(|e| match e {
                Error::Parse { location, message } => Error::parse(at(Some(location)), message),
                other => Error::parse(at(None), other.to_string()),
            })?,
            GeneratorSpec::Images(images) => {
                if images.len() != file.n {
                    return Err(Error::parse(
                        at(None),
                        format!("image array has {} entries, expected n = {}", images.len(), file.n),
                    ));
                }
                Permutation::from_one_based(images).map_err(|e| Error::parse(at(None), e.to_string()))?
            }
        };
        gens.push(g);
    }
    PermGroup::new(file.n, gens)
}

pub fn read_group(path: &Path) -> Result<PermGroup> {
    let text = fs::read_to_string(path)?;
    parse_group(&text).map_err(|e| in_file(path, e))
}

/// Writes generators in cycle notation.
pub fn group_to_json(group: &PermGroup) -> String {
    let out = GroupOut {
        n: group.degree(),
        generators: group.generators().iter().map(|g| g.to_string()).collect(),
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes") + "\n"
}

/// Inequality export: `{"n", "ineqs": [{"gamma", "alpha", "g"}]}` with
/// rationals as strings and `g` as 1-based images.
pub fn cone_to_json(cone: &ConeSystem) -> String {
    let file = IneqFile {
        n: cone.dim(),
        ineqs: cone
            .ineqs()
            .iter()
            .map(|i| IneqRecord {
                gamma: i.gamma().to_strings(),
                alpha: i.alpha().to_strings(),
                g: i.g().one_based_images(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes") + "\n"
}

pub fn parse_cone(text: &str) -> Result<ConeSystem> {
    let file: IneqFile = serde_json::from_str(text).map_err(json_error)?;
    let mut cone = ConeSystem::new(file.n);
    for (k, rec) in file.ineqs.into_iter().enumerate() {
        let at = format!("inequality {}", k + 1);
        let wrap = |e: Error| match e {
            Error::Parse { message, .. } => Error::parse(at.clone(), message),
            other => Error::parse(at.clone(), other.to_string()),
        };
        let gamma = RatVec::parse_strings(&rec.gamma).map_err(wrap)?;
        let alpha = RatVec::parse_strings(&rec.alpha).map_err(wrap)?;
        let g = Permutation::from_one_based(&rec.g).map_err(wrap)?;
        if gamma.dim() != file.n || alpha.dim() != file.n || g.degree() != file.n {
            return Err(Error::parse(at, format!("every field must have length n = {}", file.n)));
        }
        cone.push(DirichletIneq::with_gamma(alpha, g, gamma).map_err(wrap)?)?;
    }
    Ok(cone)
}

pub fn read_cone(path: &Path) -> Result<ConeSystem> {
    let text = fs::read_to_string(path)?;
    parse_cone(&text).map_err(|e| in_file(path, e))
}

/// A JSON list of vectors; entries are integers or `"p/q"` / decimal strings.
pub fn parse_vectors(text: &str) -> Result<Vec<RatVec>> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    let Value::Array(rows) = value else {
        return Err(Error::parse("top level", "expected a list of vectors"));
    };
    let mut out = Vec::with_capacity(rows.len());
    for (k, row) in rows.iter().enumerate() {
        let Value::Array(items) = row else {
            return Err(Error::parse(format!("vector {}", k + 1), "expected a list"));
        };
        let mut tokens = Vec::with_capacity(items.len());
        for (j, item) in items.iter().enumerate() {
            let token = match item {
                Value::String(s) => s.clone(),
                Value::Number(num) if num.is_i64() || num.is_u64() => num.to_string(),
                other => {
                    return Err(Error::parse(
                        format!("vector {}, entry {}", k + 1, j + 1),
                        format!("expected an integer or a rational string, found {other}"),
                    ))
                }
            };
            tokens.push(token);
        }
        let v = RatVec::parse_strings(&tokens).map_err(|e| match e {
            Error::Parse { location, message } => {
                Error::parse(format!("vector {}, {location}", k + 1), message)
            }
            other => other,
        })?;
        out.push(v);
    }
    Ok(out)
}

pub fn read_vectors(path: &Path) -> Result<Vec<RatVec>> {
    let text = fs::read_to_string(path)?;
    parse_vectors(&text).map_err(|e| in_file(path, e))
}
