//! Reading and writing posets, labelings and inflation specs as JSON.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use promotion_core::{InflatedForestSpec, Labeling, Poset};

use crate::error::{LabError, Result};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_json(&text, &path.display().to_string())
}

fn parse_json<T: DeserializeOwned>(text: &str, context: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| LabError::Json {
        context: context.to_owned(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string(value).expect("serializable") + "\n";
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| LabError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    read_json(path)
}

pub fn read_spec(path: &Path) -> Result<InflatedForestSpec> {
    read_json(path)
}

/// A labeling given inline (`3,1,2` or `[3,1,2]`) or as a path to a JSON file.
pub fn parse_labeling(arg: &str) -> Result<Labeling> {
    let trimmed = arg.trim();
    let inline = trimmed.trim_start_matches('[').trim_end_matches(']');
    if !inline.is_empty()
        && inline
            .chars()
            .all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace())
    {
        let labels = inline
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| LabError::Usage(format!("bad label {s:?} in {arg:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Labeling::new(labels)?);
    }
    if trimmed == "[]" {
        return Ok(Labeling::identity(0));
    }
    read_json(Path::new(arg))
}

/// Comma separated non-negative integers, e.g. `2,3`.
pub fn parse_list(arg: &str) -> Result<Vec<usize>> {
    arg.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| LabError::Usage(format!("bad entry {s:?} in {arg:?}")))
        })
        .collect()
}

/// Comma separated integers that may be negative, e.g. `-1,0,0`.
pub fn parse_signed_list(arg: &str) -> Result<Vec<i64>> {
    arg.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| LabError::Usage(format!("bad entry {s:?} in {arg:?}")))
        })
        .collect()
}
