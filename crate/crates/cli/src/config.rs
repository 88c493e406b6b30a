//! The `key = value` config file. Every key names a long flag; command-line flags win over
//! the file.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got {line:?}", i + 1);
        };
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() || k == "config" {
            bail!("config line {}: invalid key {k:?}", i + 1);
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// The path given with `--config`, if any.
pub fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
        if s == "--" {
            break;
        }
    }
    None
}

/// Append `--key value` for each config entry whose flag is absent from `args`. Boolean flags
/// take `true` or `false`.
pub fn merge(mut args: Vec<OsString>, entries: &[(String, String)]) -> Vec<OsString> {
    let present = |key: &str| {
        let flag = format!("--{key}");
        let prefix = format!("--{key}=");
        args.iter().any(|a| {
            let s = a.to_string_lossy();
            s == flag || s.starts_with(&prefix)
        })
    };
    let mut extra = Vec::new();
    for (k, v) in entries {
        if present(k) {
            continue;
        }
        match v.as_str() {
            "true" => extra.push(OsString::from(format!("--{k}"))),
            "false" => {}
            _ => extra.push(OsString::from(format!("--{k}={v}"))),
        }
    }
    args.extend(extra);
    args
}

pub fn apply(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    Ok(merge(args, &parse(&text)?))
}
