//! Artifact writing. Every file is written to a temporary sibling and then
//! renamed into place.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// A CSV cell. Floats use the shortest round-trip form, switching to
/// exponent notation for very small or large magnitudes; missing values are empty.
pub trait Cell {
    fn cell(&self) -> String;
}

impl Cell for f64 {
    fn cell(&self) -> String {
        format!("{self:?}")
    }
}

macro_rules! plain_cell {
    ($($t:ty),*) => {$(
        impl Cell for $t {
            fn cell(&self) -> String {
                self.to_string()
            }
        }
    )*};
}

plain_cell!(usize, u32, u64, bool);

impl Cell for str {
    fn cell(&self) -> String {
        if self.contains([',', '"', '\n']) {
            format!("\"{}\"", self.replace('"', "\"\""))
        } else {
            self.to_string()
        }
    }
}

impl Cell for String {
    fn cell(&self) -> String {
        self.as_str().cell()
    }
}

impl<T: Cell> Cell for Option<T> {
    fn cell(&self) -> String {
        self.as_ref().map(Cell::cell).unwrap_or_default()
    }
}

impl<T: Cell + ?Sized> Cell for &T {
    fn cell(&self) -> String {
        (**self).cell()
    }
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Csv {
        let mut text = header.join(",");
        text.push('\n');
        Csv { text }
    }

    pub fn row(&mut self, cells: &[&dyn Cell]) {
        let line: Vec<String> = cells.iter().map(|c| c.cell()).collect();
        let _ = writeln!(self.text, "{}", line.join(","));
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Writes artifacts under an optional output directory.
pub struct Artifacts {
    dir: Option<PathBuf>,
}

impl Artifacts {
    pub fn new(dir: Option<PathBuf>) -> Artifacts {
        Artifacts { dir }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<()> {
        if let Some(dir) = &self.dir {
            write_atomic(&dir.join(name), contents.as_bytes())?;
        }
        Ok(())
    }
}
