//! `--config FILE`: TOML `key = value` pairs that stand in for command-line
//! flags.
//!
//! Keys are long flag names (`_` and `-` are interchangeable). Top-level
//! keys apply to whichever subcommand runs; a `[cluster]`-style table
//! applies to that subcommand only and wins over top-level keys. Flags on
//! the command line win over both.
//!
//! ```toml
//! seed = 7
//! weighting = "trim:10"
//!
//! [experiment]
//! labels = ["sci.med", "sci.space"]
//! mixture = [100, 100]
//! strip_headers = true
//! ```

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use toml::{Table, Value};

pub fn load(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    text.parse::<Table>()
        .with_context(|| format!("parsing config {}", path.display()))
}

/// Flags for `subcommand`, in key order.
pub fn to_args(table: &Table, subcommand: &str) -> Result<Vec<OsString>> {
    let mut merged: BTreeMap<String, &Value> = BTreeMap::new();
    for (k, v) in table {
        if !v.is_table() {
            merged.insert(k.replace('_', "-"), v);
        }
    }
    if let Some(section) = table.get(subcommand).and_then(Value::as_table) {
        for (k, v) in section {
            merged.insert(k.replace('_', "-"), v);
        }
    }

    let mut args = Vec::new();
    for (key, v) in merged {
        let flag = OsString::from(format!("--{key}"));
        match v {
            Value::Boolean(true) => args.push(flag),
            Value::Boolean(false) => {}
            Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|i| scalar(&key, i))
                    .collect::<Result<Vec<_>>>()?;
                args.push(flag);
                args.push(parts.join(",").into());
            }
            other => {
                args.push(flag);
                args.push(scalar(&key, other)?.into());
            }
        }
    }
    Ok(args)
}

fn scalar(key: &str, v: &Value) -> Result<String> {
    Ok(match v {
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(f) => f.to_string(),
        Value::Boolean(b) => b.to_string(),
        _ => bail!("config key {key:?}: unsupported value {v}"),
    })
}

/// Removes `--config FILE` / `--config=FILE` from `args` and splices the
/// file's flags in right after the subcommand name, so that later flags
/// from the command line override them.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        match a.to_str() {
            Some("--config") => path = Some(it.next().context("--config needs a file name")?),
            Some(s) if s.starts_with("--config=") => {
                path = Some(OsString::from(&s["--config=".len()..]))
            }
            _ => rest.push(a),
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let table = load(Path::new(&path))?;
    let Some(pos) = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|p| p + 1)
    else {
        return Ok(rest);
    };
    let sub = rest[pos].to_string_lossy().into_owned();
    let extra = to_args(&table, &sub)?;
    rest.splice(pos + 1..pos + 1, extra);
    Ok(rest)
}
