//! File formats: complexes as plain text, embeddings as JSON with exact
//! "p/q" rational coordinates, and run manifests. No floating point ever
//! appears in a geometry file.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;
use thiserror::Error;

use crate::constructions::AbstractCycle;
use crate::geometry::{PLEmbedding, Point, Rat};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("json failure: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid object: {0}")]
    Invalid(String),
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().abs() == 1.into() {
        format!("{}", x.numer() * x.denom().signum())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat, IoError> {
    Rat::from_str(s.trim()).map_err(|e| IoError::Parse(format!("bad rational {s:?}: {e}")))
}

/// Serde adapter: a rational as a "p/q" string.
pub mod rat_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: an optional rational as an optional "p/q" string.
pub mod opt_rat_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(r) => s.serialize_some(&rat_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| rat_from_string(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Plain-text complex format:
/// line 1: `dim=<n> vertices=<count>`
/// then one maximal face per line as whitespace-separated vertex ids.
/// Blank lines and `#` comments are skipped.
pub fn serialize_complex(k: &SimplicialComplex) -> String {
    let mut out = format!("dim={} vertices={}\n", k.dim(), k.num_vertices);
    for f in k.maximal_faces() {
        let words: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_complex(text: &str, name: &str) -> Result<SimplicialComplex, IoError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| IoError::Parse("empty complex file".into()))?;
    let mut dim = None;
    let mut vertices = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| IoError::Parse(format!("bad header field {field:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| IoError::Parse(format!("bad header value {value:?}")))?;
        match key {
            "dim" => dim = Some(value),
            "vertices" => vertices = Some(value),
            _ => return Err(IoError::Parse(format!("unknown header key {key:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| IoError::Parse("header missing dim".into()))?;
    let vertices = vertices.ok_or_else(|| IoError::Parse("header missing vertices".into()))?;
    let mut faces = Vec::new();
    for line in lines {
        let face: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let face = face.map_err(|_| IoError::Parse(format!("bad face line {line:?}")))?;
        if face.iter().any(|&v| v >= vertices) {
            return Err(IoError::Parse(format!("vertex out of range in {line:?}")));
        }
        faces.push(face);
    }
    let k = SimplicialComplex::from_maximal_faces(&faces, name)
        .map_err(|e| IoError::Invalid(e.to_string()))?;
    if k.dim() != dim {
        return Err(IoError::Invalid(format!(
            "declared dim {} but faces span dim {}",
            dim,
            k.dim()
        )));
    }
    if k.num_vertices > vertices {
        return Err(IoError::Invalid(format!(
            "declared {} vertices but faces use {}",
            vertices, k.num_vertices
        )));
    }
    Ok(k)
}

/// An abstract cycle in an embedding file: `cells` rows are
/// [coeff, v0, v1, ...].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CycleFile {
    pub dim: usize,
    pub cells: Vec<Vec<i64>>,
}

impl CycleFile {
    pub fn from_cycle(c: &AbstractCycle) -> CycleFile {
        CycleFile {
            dim: c.dim,
            cells: c
                .cells
                .iter()
                .map(|(verts, coeff)| {
                    let mut row = vec![*coeff];
                    row.extend(verts.iter().map(|&v| v as i64));
                    row
                })
                .collect(),
        }
    }

    pub fn to_cycle(&self) -> Result<AbstractCycle, IoError> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for row in &self.cells {
            if row.len() != self.dim + 2 {
                return Err(IoError::Parse(format!(
                    "cycle cell {row:?} needs {} entries for dim {}",
                    self.dim + 2,
                    self.dim
                )));
            }
            let verts: Result<Vec<usize>, _> =
                row[1..].iter().map(|&v| usize::try_from(v)).collect();
            let verts = verts.map_err(|_| IoError::Parse("negative vertex id".into()))?;
            cells.push((verts, row[0]));
        }
        let c = AbstractCycle { dim: self.dim, cells };
        if !c.boundary_vanishes() {
            return Err(IoError::Invalid("named chain has nonzero boundary".into()));
        }
        Ok(c)
    }
}

/// JSON embedding file: the complex, ambient dimension, exact rational
/// vertex coordinates, and named cycles (SBAR, S1, S2, ...).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EmbeddingFile {
    pub name: String,
    pub dim: usize,
    pub ambient_dim: usize,
    pub vertices: usize,
    pub maximal_faces: Vec<Vec<usize>>,
    /// One row per vertex, entries as "p/q" strings.
    pub coords: Vec<Vec<String>>,
    #[serde(default)]
    pub cycles: BTreeMap<String, CycleFile>,
}

impl EmbeddingFile {
    pub fn from_embedding(
        e: &PLEmbedding,
        cycles: &BTreeMap<String, AbstractCycle>,
    ) -> EmbeddingFile {
        EmbeddingFile {
            name: e.complex.name.clone(),
            dim: e.complex.dim(),
            ambient_dim: e.dim_ambient,
            vertices: e.complex.num_vertices,
            maximal_faces: e.complex.maximal_faces(),
            coords: e
                .coords
                .iter()
                .map(|p| p.0.iter().map(rat_to_string).collect())
                .collect(),
            cycles: cycles
                .iter()
                .map(|(k, v)| (k.clone(), CycleFile::from_cycle(v)))
                .collect(),
        }
    }

    pub fn to_embedding(
        &self,
    ) -> Result<(PLEmbedding, BTreeMap<String, AbstractCycle>), IoError> {
        let k = SimplicialComplex::from_maximal_faces(&self.maximal_faces, &self.name)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        if self.coords.len() != self.vertices || k.num_vertices > self.vertices {
            return Err(IoError::Invalid(format!(
                "coordinate rows {} do not match vertex count {}",
                self.coords.len(),
                self.vertices
            )));
        }
        let mut coords = Vec::with_capacity(self.coords.len());
        for row in &self.coords {
            if row.len() != self.ambient_dim {
                return Err(IoError::Invalid(format!(
                    "coordinate row has {} entries in ambient dimension {}",
                    row.len(),
                    self.ambient_dim
                )));
            }
            let pt: Result<Vec<Rat>, IoError> = row.iter().map(|s| rat_from_string(s)).collect();
            coords.push(Point(pt?));
        }
        let e = PLEmbedding::new(k, self.ambient_dim, coords);
        let mut cycles = BTreeMap::new();
        for (name, cf) in &self.cycles {
            let c = cf.to_cycle()?;
            if c.cells
                .iter()
                .any(|(verts, _)| verts.iter().any(|&v| v >= self.vertices))
            {
                return Err(IoError::Invalid(format!(
                    "cycle {name:?} references a vertex out of range"
                )));
            }
            cycles.insert(name.clone(), c);
        }
        Ok((e, cycles))
    }
}

pub fn serialize_embedding(
    e: &PLEmbedding,
    cycles: &BTreeMap<String, AbstractCycle>,
) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(&EmbeddingFile::from_embedding(e, cycles))?)
}

pub fn parse_embedding(
    text: &str,
) -> Result<(PLEmbedding, BTreeMap<String, AbstractCycle>), IoError> {
    let file: EmbeddingFile = serde_json::from_str(text)?;
    file.to_embedding()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{telescope, telescope_embedding, vk_flores_complex};
    use crate::geometry::rat;

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(3, 4)), "3/4");
        assert_eq!(rat_to_string(&rat(-6, 2)), "-3");
        assert_eq!(rat_from_string("22/7").unwrap(), rat(22, 7));
        assert_eq!(rat_from_string("-5").unwrap(), rat(-5, 1));
        assert!(rat_from_string("1.5").is_err());
    }

    #[test]
    fn complex_round_trip() {
        let k = vk_flores_complex(2);
        let text = serialize_complex(&k);
        let back = parse_complex(&text, "k").unwrap();
        assert_eq!(back.maximal_faces(), k.maximal_faces());
        assert_eq!(back.num_vertices, k.num_vertices);
    }

    #[test]
    fn complex_parse_errors() {
        assert!(parse_complex("", "k").is_err());
        assert!(parse_complex("dim=2 vertices=3\n0 1 5\n", "k").is_err());
        assert!(parse_complex("dim=3 vertices=3\n0 1 2\n", "k").is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let e = telescope_embedding(1, &rat(1, 2)).unwrap();
        let t = telescope(1);
        let mut cycles = BTreeMap::new();
        cycles.insert("SBAR".to_string(), t.sphere1.clone());
        cycles.insert("S2".to_string(), t.sphere2.clone());
        let text = serialize_embedding(&e, &cycles).unwrap();
        let (back, back_cycles) = parse_embedding(&text).unwrap();
        assert_eq!(back.coords, e.coords);
        assert_eq!(back.dim_ambient, e.dim_ambient);
        assert_eq!(back.complex.maximal_faces(), e.complex.maximal_faces());
        assert_eq!(back_cycles["SBAR"].cells, t.sphere1.cells);
        // parse(serialize(x)) = x at the byte level too
        let again = serialize_embedding(&back, &back_cycles).unwrap();
        assert_eq!(text, again);
    }
}
