//! Group-spec files and the data directory.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cycle_census_core::{GroupSpec, PermGroup};

pub const DATA_ENV: &str = "CYCLE_CENSUS_DATA";

/// `$CYCLE_CENSUS_DATA` when set, else the `data` directory shipped with the crate.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")),
    }
}

/// An existing path is used as given; otherwise the argument names a file in
/// the data directory, with `.grp` appended when it has no extension.
pub fn resolve_spec_path(arg: &str) -> PathBuf {
    let direct = PathBuf::from(arg);
    if direct.is_file() {
        return direct;
    }
    let mut p = data_dir().join(arg);
    if p.extension().is_none() {
        p.set_extension("grp");
    }
    p
}

/// Reads, parses and builds a group-spec file. The file must declare
/// `# expected_order`, and the built group must have that order.
pub fn load_group_spec(path: &Path) -> Result<(GroupSpec, PermGroup)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec = GroupSpec::parse(&text)?;
    if spec.expected_order.is_none() {
        bail!("{}: missing '# expected_order N' line", path.display());
    }
    let g = spec.build()?;
    Ok((spec, g))
}

/// Names (without extension) of the `.grp` files in the data directory.
pub fn bundled_specs() -> Result<Vec<String>> {
    let mut names: Vec<String> = fs::read_dir(data_dir())?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    names.sort();
    Ok(names)
}
