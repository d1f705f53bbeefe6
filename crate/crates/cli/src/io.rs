use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use avail_core::{AvailabilityCode, BitMatrix, CodeSidecar};

pub const OUT_DIR_VAR: &str = "AVAIL_OUT_DIR";

/// Relative output paths land under `$AVAIL_OUT_DIR` when it is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn sidecar_path(matrix: &Path) -> PathBuf {
    let p = matrix.with_extension("json");
    if p == matrix {
        let mut s = matrix.as_os_str().to_owned();
        s.push(".meta.json");
        PathBuf::from(s)
    } else {
        p
    }
}

pub fn read_matrix(path: &Path) -> Result<BitMatrix> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let name = path.display();
    text.parse().with_context(|| format!("parsing {name}"))
}

/// The sidecar written next to `path`, if there is one.
pub fn read_sidecar(path: &Path) -> Result<Option<CodeSidecar>> {
    if path == Path::new("-") {
        return Ok(None);
    }
    let p = sidecar_path(path);
    if !p.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
    let sidecar =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
    Ok(Some(sidecar))
}

/// Writes the matrix text and its sidecar; returns both paths.
pub fn write_code(code: &AvailabilityCode, path: &Path) -> Result<(PathBuf, PathBuf)> {
    let matrix = resolve_output(path);
    if let Some(dir) = matrix.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(&matrix, code.h().to_string())
        .with_context(|| format!("writing {}", matrix.display()))?;
    let side = sidecar_path(&matrix);
    let json = serde_json::to_string_pretty(&code.sidecar())?;
    fs::write(&side, json + "\n").with_context(|| format!("writing {}", side.display()))?;
    Ok((matrix, side))
}

pub fn write_text(path: &Path, text: &str) -> Result<PathBuf> {
    let p = resolve_output(path);
    if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_names() {
        assert_eq!(sidecar_path(Path::new("a/k4.txt")), Path::new("a/k4.json"));
        assert_eq!(sidecar_path(Path::new("k4")), Path::new("k4.json"));
        assert_eq!(
            sidecar_path(Path::new("k4.json")),
            Path::new("k4.json.meta.json")
        );
    }
}
