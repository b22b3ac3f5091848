//! Preset data files: Dynkin graph, orientation, the reduced word `i0` of
//! `w_0` used for global labels, bounds and an initial rigid collection.
//!
//! Vertex numbering: type A is the path `1 - 2 - ... - n`; D4 has the
//! trivalent vertex 2 with leaves 1, 3, 4.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preproj::{RigidCollection, SummandFile};
use crate::quiver::{CartanDatum, Orientation, Vertex, WeightVector, WeylWord};

const SHIPPED: &[(&str, &str)] = &[
    ("A2", include_str!("../presets/A2.json")),
    ("A3", include_str!("../presets/A3.json")),
    ("A4", include_str!("../presets/A4.json")),
    ("D4", include_str!("../presets/D4.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub entries: Vec<i64>,
    pub bound: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub rank: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub orientation: Vec<(Vertex, Vertex)>,
    pub word: Vec<Vertex>,
    pub height_bound: i64,
    /// Whether canonical-basis computations are within reach.
    #[serde(default = "yes")]
    pub canonical: bool,
    pub enumeration: Option<EnumerationBounds>,
    #[serde(default)]
    pub rigid_collection: Vec<SummandFile>,
}

fn yes() -> bool {
    true
}

/// Names of the shipped presets.
pub fn names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

/// Raw bytes of a shipped preset, used for cache keys.
pub fn source(name: &str) -> Result<&'static str> {
    let base = name.strip_suffix("-w0").unwrap_or(name);
    SHIPPED
        .iter()
        .find(|(n, _)| *n == base)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

impl Preset {
    /// Loads a shipped preset; `"A2"` and `"A2-w0"` name the same file.
    pub fn load(name: &str) -> Result<Self> {
        Self::parse(source(name)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let p: Preset = serde_json::from_str(text)?;
        let d = p.datum()?;
        if !d.is_reduced(&p.i0()) || p.word.len() != d.positive_roots().len() {
            return Err(Error::InvalidArgument(format!("{}: word is not a reduced word of w0", p.name)));
        }
        Orientation::from_pairs(&d, &p.orientation)?;
        Ok(p)
    }

    pub fn datum(&self) -> Result<CartanDatum> {
        CartanDatum::from_graph(&self.name, self.rank, &self.edges)
    }

    pub fn orientation(&self) -> Result<Orientation> {
        Orientation::from_pairs(&self.datum()?, &self.orientation)
    }

    pub fn i0(&self) -> WeylWord {
        WeylWord::new(self.word.clone())
    }

    pub fn enumeration_bound(&self) -> Option<WeightVector> {
        self.enumeration.as_ref().map(|e| WeightVector(e.bound.clone()))
    }

    /// The initial rigid collection, re-validated.
    pub fn rigid_collection(&self) -> Result<Option<RigidCollection>> {
        if self.rigid_collection.is_empty() {
            return Ok(None);
        }
        RigidCollection::from_files(&self.datum()?, &self.orientation()?, &self.rigid_collection).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_presets_load() {
        for n in names() {
            let p = Preset::load(n).unwrap();
            assert_eq!(p.name, n);
            assert_eq!(p.datum().unwrap(), CartanDatum::from_graph(n, p.rank, &p.edges).unwrap());
        }
        assert_eq!(Preset::load("A2-w0").unwrap().word, vec![1, 2, 1]);
        assert!(matches!(Preset::load("B2"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn collections_are_rigid() {
        for n in ["A2", "A3"] {
            let p = Preset::load(n).unwrap();
            let t = p.rigid_collection().unwrap().unwrap();
            assert_eq!(t.len(), p.word.len());
            assert!(t.total().unwrap().is_rigid().unwrap());
        }
    }

    #[test]
    fn bad_word_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(source("A2").unwrap()).unwrap();
        v["word"] = serde_json::json!([1, 1, 2]);
        assert!(Preset::parse(&v.to_string()).is_err());
    }
}
