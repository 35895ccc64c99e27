use std::path::Path;

use anyhow::{Context, Result};
use quasirandom::setfun::SubsetFile;
use quasirandom::{FiniteGroup, Subset};

use crate::CliError;

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| CliError::new("E_INPUT", format!("bad {what} `{t}` in `{text}`")).into())
        })
        .collect()
}

pub fn indices(text: &str) -> Result<Vec<usize>> {
    parse_list(text, "element index")
}

pub fn integers(text: &str) -> Result<Vec<i64>> {
    parse_list(text, "integer")
}

pub fn reals(text: &str) -> Result<Vec<f64>> {
    parse_list(text, "number")
}

fn looks_like_list(text: &str) -> bool {
    text.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace())
}

/// A subset given as a comma-separated index list or a subset JSON file.
pub fn subset(g: &FiniteGroup, arg: &str) -> Result<Subset> {
    if looks_like_list(arg) {
        return Ok(Subset::from_indices(g.order(), &indices(arg)?)?);
    }
    let file: SubsetFile = read_json(Path::new(arg))?;
    if file.group != g.descriptor() {
        return Err(CliError::new(
            "E_INPUT",
            format!("subset file `{arg}` is over `{}`, not `{}`", file.group, g.descriptor()),
        )
        .into());
    }
    Ok(file.to_subset(g)?)
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

pub fn group(descriptor: &str) -> Result<FiniteGroup> {
    Ok(FiniteGroup::from_descriptor(descriptor)?)
}
