//! Instance files: complexes, Ising models and list-coloring instances.

use std::path::Path;

use anyhow::{bail, Context, Result};
use hodos_core::complex::{Complex, ComplexFile};
use hodos_core::models::{coloring_complex, ising_complex, ColoringInstance, IsingInstance};

pub enum Instance {
    Complex(Complex),
    Ising(IsingInstance, Complex),
    Coloring(ColoringInstance, Complex),
}

impl Instance {
    pub fn complex(&self) -> &Complex {
        match self {
            Instance::Complex(x) | Instance::Ising(_, x) | Instance::Coloring(_, x) => x,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Complex(_) => "complex",
            Instance::Ising(..) => "ising",
            Instance::Coloring(..) => "coloring",
        }
    }

    pub fn from_ising(inst: IsingInstance) -> Result<Instance> {
        let x = ising_complex(&inst, false)?.complex;
        Ok(Instance::Ising(inst, x))
    }

    pub fn from_coloring(inst: ColoringInstance) -> Result<Instance> {
        inst.validate()?;
        let x = coloring_complex(&inst)?;
        Ok(Instance::Coloring(inst, x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Complex,
    Ising,
    Coloring,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load(path: &Path, kind: Kind) -> Result<Instance> {
    parse(&read(path)?, kind).with_context(|| format!("in {}", path.display()))
}

pub fn parse(text: &str, kind: Kind) -> Result<Instance> {
    Ok(match kind {
        Kind::Complex => {
            let file: ComplexFile = serde_json::from_str(text)?;
            Instance::Complex(file.into_complex()?)
        }
        Kind::Ising => Instance::from_ising(serde_json::from_str(text)?)?,
        Kind::Coloring => Instance::from_coloring(serde_json::from_str(text)?)?,
    })
}

/// Guesses the kind of an instance file from its top-level keys.
pub fn detect(text: &str) -> Result<Kind> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .context("instance file must hold a JSON object")?;
    if obj.contains_key("facets") {
        Ok(Kind::Complex)
    } else if obj.contains_key("J") {
        Ok(Kind::Ising)
    } else if obj.contains_key("edges") {
        Ok(Kind::Coloring)
    } else {
        bail!("cannot tell the instance kind: expected a \"facets\", \"J\" or \"edges\" key")
    }
}

pub fn load_any(path: &Path) -> Result<Instance> {
    let text = read(path)?;
    let kind = detect(&text).with_context(|| format!("in {}", path.display()))?;
    parse(&text, kind).with_context(|| format!("in {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_kinds() {
        assert_eq!(detect(r#"{"n": 1, "facets": []}"#).unwrap(), Kind::Complex);
        assert_eq!(detect(r#"{"J": [[0]], "h": [0]}"#).unwrap(), Kind::Ising);
        assert_eq!(
            detect(r#"{"edges": [], "lists": [[1]]}"#).unwrap(),
            Kind::Coloring
        );
        assert!(detect(r#"{"x": 1}"#).is_err());
        assert!(detect("[1]").is_err());
    }

    #[test]
    fn parses_ising() {
        let inst = parse(r#"{"J": [[0,0],[0,0]], "h": [0,0]}"#, Kind::Ising).unwrap();
        assert_eq!(inst.complex().facets().len(), 4);
        assert_eq!(inst.kind(), "ising");
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse("{\n  \"n\": 2,\n  \"facets\": [\n", Kind::Complex)
            .err()
            .unwrap();
        assert!(format!("{err:#}").contains("line"));
    }
}
