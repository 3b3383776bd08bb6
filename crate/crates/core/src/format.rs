//! Plain-text set descriptions.
//!
//! One `key = value` pair per line, `#` starts a comment. A raw description
//! uses `period`, `residues`, `threshold`, `extras`, `orientation`; a
//! canonical one uses `m`, `x`, `y0`, `y1`, `shift`. Lists are comma
//! separated and may be wrapped in braces:
//!
//! ```text
//! # 5N + {2, 3} from 7 on, plus a few stragglers
//! period = 5
//! residues = 2, 3
//! threshold = 7
//! extras = {2, 4}
//! ```
//!
//! A file whose first non-blank character is `{` is read as JSON instead.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{FormatError, SetError};
use crate::sets::{canonicalize, reflect, CanonicalSet, Orientation, RawSet};

const RAW_FIELDS: [&str; 5] = ["period", "residues", "threshold", "extras", "orientation"];
const CANONICAL_FIELDS: [&str; 5] = ["m", "x", "y0", "y1", "shift"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetInput {
    Canonical(CanonicalSet),
    Raw(RawSet),
}

/// Canonical form of an input plus whether it had to be reflected first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolved {
    pub set: CanonicalSet,
    pub reflected: bool,
}

impl SetInput {
    /// Canonicalizes raw input, reflecting above-bounded sets; canonical
    /// input passes through with its own shift.
    pub fn resolve(&self) -> Result<Resolved, SetError> {
        match self {
            SetInput::Canonical(set) => {
                if set.is_empty() {
                    return Err(SetError::EmptySet);
                }
                Ok(Resolved {
                    set: set.clone(),
                    reflected: false,
                })
            }
            SetInput::Raw(raw) => match raw.orientation() {
                Orientation::Below => Ok(Resolved {
                    set: canonicalize(raw)?,
                    reflected: false,
                }),
                Orientation::Above => Ok(Resolved {
                    set: canonicalize(&reflect(raw))?,
                    reflected: true,
                }),
            },
        }
    }
}

pub fn parse_set(text: &str) -> Result<SetInput, FormatError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()));
    }
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or(FormatError::Syntax { line })?;
        let key = key.trim();
        if !RAW_FIELDS.contains(&key) && !CANONICAL_FIELDS.contains(&key) {
            return Err(FormatError::UnknownField {
                line,
                field: key.into(),
            });
        }
        if fields.insert(key, (line, value.trim())).is_some() {
            return Err(FormatError::DuplicateField {
                line,
                field: key.into(),
            });
        }
    }
    let raw = fields.keys().any(|k| RAW_FIELDS.contains(k));
    let canonical = fields.keys().any(|k| CANONICAL_FIELDS.contains(k));
    match (raw, canonical) {
        (true, true) => Err(FormatError::MixedKinds),
        (false, false) => Err(FormatError::Empty),
        (true, false) => {
            let period: usize =
                scalar(&fields, "period")?.ok_or(FormatError::MissingField("period"))?;
            let residues: Vec<usize> =
                list(&fields, "residues")?.ok_or(FormatError::MissingField("residues"))?;
            let threshold: i64 = scalar(&fields, "threshold")?.unwrap_or(0);
            let extras: Vec<i64> = list(&fields, "extras")?.unwrap_or_default();
            let orientation = match fields.get("orientation") {
                None => Orientation::Below,
                Some(&(_, "below")) => Orientation::Below,
                Some(&(_, "above")) => Orientation::Above,
                Some(&(line, other)) => {
                    return Err(FormatError::BadValue {
                        line,
                        field: "orientation".into(),
                        message: format!("expected `below` or `above`, got `{other}`"),
                    })
                }
            };
            Ok(SetInput::Raw(RawSet::new(
                period,
                &residues,
                threshold,
                &extras,
                orientation,
            )?))
        }
        (false, true) => {
            let m: usize = scalar(&fields, "m")?.ok_or(FormatError::MissingField("m"))?;
            let x: Vec<i64> = list(&fields, "x")?.ok_or(FormatError::MissingField("x"))?;
            let y0: Vec<i64> = list(&fields, "y0")?.unwrap_or_default();
            let y1: Vec<i64> = list(&fields, "y1")?.unwrap_or_default();
            let shift: i64 = scalar(&fields, "shift")?.unwrap_or(0);
            Ok(SetInput::Canonical(CanonicalSet::validate(
                m, &x, &y0, &y1, shift,
            )?))
        }
    }
}

fn scalar<T: std::str::FromStr>(
    fields: &BTreeMap<&str, (usize, &str)>,
    key: &str,
) -> Result<Option<T>, FormatError>
where
    T::Err: std::fmt::Display,
{
    fields
        .get(key)
        .map(|&(line, v)| {
            v.parse::<T>().map_err(|e| FormatError::BadValue {
                line,
                field: key.into(),
                message: format!("`{v}`: {e}"),
            })
        })
        .transpose()
}

fn list<T: std::str::FromStr>(
    fields: &BTreeMap<&str, (usize, &str)>,
    key: &str,
) -> Result<Option<Vec<T>>, FormatError>
where
    T::Err: std::fmt::Display,
{
    let Some(&(line, v)) = fields.get(key) else {
        return Ok(None);
    };
    let inner = v
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(v);
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>().map_err(|e| FormatError::BadValue {
                line,
                field: key.into(),
                message: format!("`{s}`: {e}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn write_raw(raw: &RawSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "period = {}", raw.period());
    let _ = writeln!(out, "residues = {{{}}}", join(raw.residues().iter()));
    let _ = writeln!(out, "threshold = {}", raw.threshold());
    let _ = writeln!(out, "extras = {{{}}}", join(raw.extras().iter()));
    let _ = writeln!(out, "orientation = {}", raw.orientation());
    out
}

pub fn write_canonical(set: &CanonicalSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "m = {}", set.m());
    let _ = writeln!(out, "x = {{{}}}", join(set.x_m().iter()));
    let _ = writeln!(out, "y0 = {{{}}}", join(set.y0().iter()));
    let _ = writeln!(out, "y1 = {{{}}}", join(set.y1().iter()));
    let _ = writeln!(out, "shift = {}", set.shift());
    out
}
