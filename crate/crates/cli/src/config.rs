use std::path::Path;

use serde::Deserialize;

use crate::CliError;

/// A scalar, a comma list in a string, or an array.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ListValue<T> {
    One(T),
    Many(Vec<T>),
    Text(String),
}

/// Flat key-value campaign file; keys mirror the long flags.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub i: Option<ListValue<usize>>,
    pub j: Option<ListValue<usize>>,
    pub group: Option<ListValue<String>>,
    pub check: Option<ListValue<String>>,
    pub n: Option<usize>,
    pub size_limit: Option<u64>,
    pub jobs: Option<usize>,
    pub strict: Option<bool>,
    pub out: Option<String>,
}

pub fn parse_usize_list(text: &str, flag: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::Config(format!("--{flag}: {s:?} is not a non-negative integer")))
        })
        .collect()
}

pub fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

impl ListValue<usize> {
    pub fn to_vec(&self, key: &str) -> Result<Vec<usize>, CliError> {
        match self {
            ListValue::One(x) => Ok(vec![*x]),
            ListValue::Many(v) => Ok(v.clone()),
            ListValue::Text(t) => parse_usize_list(t, key),
        }
    }
}

impl ListValue<String> {
    pub fn to_vec(&self) -> Vec<String> {
        match self {
            ListValue::One(x) | ListValue::Text(x) => split_list(x),
            ListValue::Many(v) => v.clone(),
        }
    }
}

pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
