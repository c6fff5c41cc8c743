use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ens_core::format::parse_behavior;
use ens_core::{Behavior, Error};

pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::GuardExceeded { .. }) => 3,
        _ => 2,
    }
}

pub fn read_behavior(path: &Path) -> Result<Behavior> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_behavior(&text)
        .map_err(anyhow::Error::from)
        .with_context(|| format!("parsing {}", path.display()))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// JSON with a trailing newline.
pub fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}
