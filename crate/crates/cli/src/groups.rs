use std::fs;
use std::path::{Path, PathBuf};

use morita_core::structures::{cyclic_group, klein_four, parse_cayley, symmetric_group, FiniteGroup};

use crate::CliError;

pub const BUILTIN_NAMES: [&str; 12] = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S2", "S3", "S4", "K4"];

pub fn builtin(name: &str) -> Option<FiniteGroup> {
    match name {
        "K4" => Some(klein_four()),
        _ => {
            let (kind, n) = name.split_at(1);
            let n: usize = n.parse().ok()?;
            match kind {
                "C" if (1..=8).contains(&n) => cyclic_group(n).ok(),
                "S" if (2..=4).contains(&n) => symmetric_group(n).ok(),
                _ => None,
            }
        }
    }
}

/// `$MORITA_CACHE_DIR`, else `$XDG_CACHE_HOME/morita`, else `~/.cache/morita`.
pub fn cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("MORITA_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("morita");
    }
    std::env::var_os("HOME")
        .map(|h| PathBuf::from(h).join(".cache").join("morita"))
        .unwrap_or_else(|| PathBuf::from(".morita-cache"))
}

pub fn load_file(path: &Path) -> Result<FiniteGroup, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_cayley(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Parses a Cayley file and stores it in the cache under `name`.
pub fn load_and_cache(path: &Path, name: &str, cache: &Path) -> Result<FiniteGroup, CliError> {
    if builtin(name).is_some() {
        return Err(CliError::Config(format!("{name} is a built-in group name")));
    }
    let g = load_file(path)?.with_name(name);
    fs::create_dir_all(cache).map_err(|e| CliError::Config(format!("{}: {e}", cache.display())))?;
    let target = cache.join(format!("{name}.cayley"));
    fs::write(&target, g.to_cayley_text()).map_err(|e| CliError::Config(format!("{}: {e}", target.display())))?;
    Ok(g)
}

/// A built-in name, a cached name, or a path to a Cayley file.
pub fn resolve(spec: &str, cache: &Path) -> Result<FiniteGroup, CliError> {
    if let Some(g) = builtin(spec) {
        return Ok(g);
    }
    let cached = cache.join(format!("{spec}.cayley"));
    if cached.is_file() {
        return Ok(load_file(&cached)?.with_name(spec));
    }
    let path = Path::new(spec);
    if path.is_file() {
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
        return Ok(load_file(path)?.with_name(name));
    }
    Err(CliError::Config(format!(
        "unknown group {spec:?}: not built in ({}), not cached, not a file",
        BUILTIN_NAMES.join(", ")
    )))
}

pub fn describe(g: &FiniteGroup) -> String {
    format!(
        "{}: order {}, {} (identity {})",
        g.name(),
        g.order(),
        if g.is_abelian() { "abelian" } else { "nonabelian" },
        g.identity()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_resolve() {
        for name in BUILTIN_NAMES {
            assert_eq!(builtin(name).unwrap().name(), name);
        }
        assert!(builtin("C9").is_none());
        assert!(builtin("S5").is_none());
        assert!(builtin("X").is_none());
    }

    #[test]
    fn s3_description() {
        assert!(describe(&builtin("S3").unwrap()).contains("order 6, nonabelian"));
    }
}
