//! Benchmark manifests: simple key-value text, one block per instance,
//! blank-line separated.
//!
//! ```text
//! # Set III at desk scale
//! path = instances/mtsp51.tsp
//! m = 3,5,10
//! cutoff = n/5
//! runs = 10
//! ```

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::cutoff::CutoffSpec;

#[derive(Clone, Debug)]
pub struct ManifestEntry {
    pub name: String,
    pub path: PathBuf,
    pub m_values: Vec<usize>,
    pub cutoff: Option<CutoffSpec>,
    pub runs: Option<usize>,
}

pub fn parse_manifest(text: &str, base_dir: &Path) -> Result<Vec<ManifestEntry>> {
    let mut entries = Vec::new();
    let mut block: Vec<(usize, String, String)> = Vec::new();

    let mut flush = |block: &mut Vec<(usize, String, String)>| -> Result<()> {
        if block.is_empty() {
            return Ok(());
        }
        let mut path: Option<PathBuf> = None;
        let mut name: Option<String> = None;
        let mut m_values: Vec<usize> = Vec::new();
        let mut cutoff: Option<CutoffSpec> = None;
        let mut runs: Option<usize> = None;
        for (line_no, key, value) in block.drain(..) {
            match key.as_str() {
                "path" => {
                    let p = PathBuf::from(&value);
                    path = Some(if p.is_absolute() { p } else { base_dir.join(p) });
                }
                "name" => name = Some(value),
                "m" => {
                    m_values = value
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .with_context(|| format!("bad m list on line {line_no}"))?;
                }
                "cutoff" => cutoff = Some(CutoffSpec::parse(&value)?),
                "runs" => {
                    runs = Some(
                        value
                            .parse()
                            .with_context(|| format!("bad runs on line {line_no}"))?,
                    )
                }
                other => bail!("unknown manifest key {other:?} on line {line_no}"),
            }
        }
        let path = path.context("manifest block missing `path`")?;
        if m_values.is_empty() {
            bail!("manifest block for {} missing `m`", path.display());
        }
        let name = name.unwrap_or_else(|| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        });
        entries.push(ManifestEntry {
            name,
            path,
            m_values,
            cutoff,
            runs,
        });
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            flush(&mut block)?;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("manifest line {} is not `key = value`: {line:?}", idx + 1);
        };
        block.push((
            idx + 1,
            key.trim().to_ascii_lowercase(),
            value.trim().to_string(),
        ));
    }
    flush(&mut block)?;
    Ok(entries)
}

pub fn load_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading manifest {}", path.display()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_manifest(&text, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_and_defaults() {
        let text = "# demo\npath = a/eil51.tsp\nm = 2,3\ncutoff = n/5\n\nname = other\npath = /abs/b.tsp\nm = 4\nruns = 7\n";
        let entries = parse_manifest(text, Path::new("/base")).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "eil51");
        assert_eq!(entries[0].path, PathBuf::from("/base/a/eil51.tsp"));
        assert_eq!(entries[0].m_values, vec![2, 3]);
        assert_eq!(entries[0].cutoff, Some(CutoffSpec::NodesOverFive));
        assert_eq!(entries[1].name, "other");
        assert_eq!(entries[1].path, PathBuf::from("/abs/b.tsp"));
        assert_eq!(entries[1].runs, Some(7));
    }

    #[test]
    fn rejects_malformed_blocks() {
        assert!(parse_manifest("m = 2,3\n", Path::new(".")).is_err());
        assert!(parse_manifest("path = x.tsp\n", Path::new(".")).is_err());
        assert!(parse_manifest("path = x.tsp\nm = two\n", Path::new(".")).is_err());
        assert!(parse_manifest("weird line\n", Path::new(".")).is_err());
    }
}
