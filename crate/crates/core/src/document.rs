//! Space-definition files.
//!
//! A space file is UTF-8 JSON with the fields `kind`, `points`, `distances`,
//! `maps` and `families`:
//!
//! ```json
//! {
//!   "kind": "generalized",
//!   "points": ["1", "2", "3"],
//!   "distances": [["1", "2", "3"], ["1", "3", "1"], ["2", "3", "1/2"]],
//!   "maps": { "S": { "1": "2", "2": "2", "3": "2" } }
//! }
//! ```
//!
//! Distances are rational strings (`"p/q"` or `"p"`), one entry per
//! unordered pair. A file may instead name a built-in family,
//! `"families": {"id": "kannan23", "n": 30}`, in which case the points and
//! the maps `S` and `T` come from the family.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::maps::{realize_family, AnalyticFamily, AuxMap, Realization, SelfMap};
use crate::rational::Rational;
use crate::space::{FiniteSpace, SpaceKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SpaceKind>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub distances: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families: Option<AnalyticFamily>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field(field: impl Into<String>, message: impl fmt::Display) -> DocumentError {
    DocumentError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

/// A document turned into a space and its named maps.
#[derive(Debug, Clone)]
pub struct LoadedSpace {
    pub space: FiniteSpace,
    pub maps: BTreeMap<String, AuxMap>,
    pub realization: Option<Realization>,
}

impl LoadedSpace {
    pub fn map(&self, name: &str) -> Result<&AuxMap, DocumentError> {
        self.maps.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.maps.keys().map(String::as_str).collect();
            field(
                format!("maps.{name}"),
                format!("no such map (known: {})", known.join(", ")),
            )
        })
    }

    /// A named map that must be a self-map table.
    pub fn self_map(&self, name: &str) -> Result<&SelfMap, DocumentError> {
        self.map(name)?.as_table().ok_or_else(|| {
            field(
                format!("maps.{name}"),
                "map leaves the point set and cannot be iterated",
            )
        })
    }

    /// Whether `name` is the built-in family's own auxiliary map.
    pub fn is_family_aux(&self, name: &str) -> bool {
        self.realization
            .as_ref()
            .is_some_and(|r| self.maps.get(name) == Some(&r.t))
    }
}

impl SpaceDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path).map_err(|e| DocumentError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Serializes a space (and maps given as tables) back into a document.
    pub fn from_space<'a>(
        space: &FiniteSpace,
        maps: impl IntoIterator<Item = (&'a str, &'a SelfMap)>,
    ) -> Self {
        assert!(
            space.is_symmetric(),
            "documents hold one distance per unordered pair"
        );
        let label = |i: usize| space.point(i).label.clone();
        let n = space.len();
        let distances = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (label(i), label(j), space.d(i, j).to_string()))
            .collect();
        let maps = maps
            .into_iter()
            .map(|(name, m)| {
                let table = (0..n).map(|i| (label(i), label(m.apply(i)))).collect();
                (name.to_string(), table)
            })
            .collect();
        SpaceDocument {
            kind: Some(space.kind()),
            points: space.points().iter().map(|p| p.label.clone()).collect(),
            distances,
            maps,
            families: None,
        }
    }

    /// Checks the document and builds the space and maps it describes.
    pub fn build(&self) -> Result<LoadedSpace, DocumentError> {
        match self.families {
            Some(family) => self.build_family(family),
            None => self.build_explicit(),
        }
    }

    fn build_family(&self, family: AnalyticFamily) -> Result<LoadedSpace, DocumentError> {
        if !self.points.is_empty() || !self.distances.is_empty() {
            return Err(field(
                "families",
                "a family document cannot also list points or distances",
            ));
        }
        if self.kind.is_some_and(|k| k != SpaceKind::Metric) {
            return Err(field(
                "kind",
                format!("family {} realizes a metric space", family.id),
            ));
        }
        let real = realize_family(family).map_err(|e| field("families.n", e))?;
        let mut maps = BTreeMap::new();
        maps.insert("S".to_string(), AuxMap::Table(real.s.clone()));
        maps.insert("T".to_string(), real.t.clone());
        for (name, table) in &self.maps {
            if maps.contains_key(name) {
                return Err(field(
                    format!("maps.{name}"),
                    "name is reserved by the family",
                ));
            }
            maps.insert(
                name.clone(),
                AuxMap::Table(build_map(&real.space, name, table)?),
            );
        }
        Ok(LoadedSpace {
            space: real.space.clone(),
            maps,
            realization: Some(real),
        })
    }

    fn build_explicit(&self) -> Result<LoadedSpace, DocumentError> {
        let kind = self
            .kind
            .ok_or_else(|| field("kind", "missing (expected \"metric\" or \"generalized\")"))?;
        if self.points.is_empty() {
            return Err(field("points", "at least one point is required"));
        }
        let mut index = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if index.insert(p.as_str(), i).is_some() {
                return Err(field(
                    format!("points[{i}]"),
                    format!("duplicate label `{p}`"),
                ));
            }
        }
        let lookup = |at: String, l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| field(at, format!("unknown point `{l}`")))
        };
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = Vec::with_capacity(self.distances.len());
        for (k, (a, b, v)) in self.distances.iter().enumerate() {
            let i = lookup(format!("distances[{k}][0]"), a)?;
            let j = lookup(format!("distances[{k}][1]"), b)?;
            if i == j {
                return Err(field(
                    format!("distances[{k}]"),
                    format!("self-distance for `{a}` is implicit (zero)"),
                ));
            }
            if let Some(prev) = seen.insert((i.min(j), i.max(j)), k) {
                return Err(field(
                    format!("distances[{k}]"),
                    format!("pair ({a}, {b}) already given at distances[{prev}]"),
                ));
            }
            let d: Rational = v
                .parse()
                .map_err(|e| field(format!("distances[{k}][2]"), e))?;
            if d.is_negative() {
                return Err(field(
                    format!("distances[{k}][2]"),
                    format!("negative distance {d}"),
                ));
            }
            pairs.push((i, j, d));
        }
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                if !seen.contains_key(&(i, j)) {
                    return Err(field(
                        "distances",
                        format!("missing pair ({}, {})", self.points[i], self.points[j]),
                    ));
                }
            }
        }
        let space = FiniteSpace::from_pairs(kind, self.points.clone(), pairs)
            .map_err(|e| field("distances", e))?;
        let maps = self
            .maps
            .iter()
            .map(|(name, table)| Ok((name.clone(), AuxMap::Table(build_map(&space, name, table)?))))
            .collect::<Result<_, DocumentError>>()?;
        Ok(LoadedSpace {
            space,
            maps,
            realization: None,
        })
    }
}

fn build_map(
    space: &FiniteSpace,
    name: &str,
    table: &BTreeMap<String, String>,
) -> Result<SelfMap, DocumentError> {
    let mut images = vec![None; space.len()];
    for (from, to) in table {
        let at = format!("maps.{name}.{from}");
        let i = space
            .index_of(from)
            .ok_or_else(|| field(&at, format!("unknown point `{from}`")))?;
        let j = space
            .index_of(to)
            .ok_or_else(|| field(&at, format!("unknown image `{to}`")))?;
        images[i] = Some(j);
    }
    let table = images
        .into_iter()
        .enumerate()
        .map(|(i, j)| {
            j.ok_or_else(|| {
                field(
                    format!("maps.{name}"),
                    format!("no image for `{}`", space.point(i).label),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    SelfMap::new(space, table).map_err(|e| field(format!("maps.{name}"), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const FOUR: &str = r#"{
        "kind": "generalized",
        "points": ["1", "2", "3", "4"],
        "distances": [["1","2","3"],["2","3","1"],["1","3","1"],["1","4","4"],["2","4","4"],["3","4","4"]],
        "maps": {"S": {"1":"4","2":"2","3":"2","4":"2"}, "T": {"1":"4","2":"3","3":"1","4":"2"}}
    }"#;

    fn err_field(text: &str) -> String {
        match SpaceDocument::from_json(text).unwrap().build() {
            Err(DocumentError::Field { field, .. }) => field,
            other => panic!("expected a field error, got {other:?}"),
        }
    }

    #[test]
    fn builds_the_four_point_fixture() {
        let loaded = SpaceDocument::from_json(FOUR).unwrap().build().unwrap();
        let fx = fixtures::branciari_four_point();
        assert_eq!(loaded.space, fx.space);
        assert_eq!(loaded.self_map("S").unwrap(), &fx.s);
        assert_eq!(loaded.map("T").unwrap(), &fx.t);
        assert!(loaded.map("U").is_err());
    }

    #[test]
    fn round_trips_through_from_space() {
        let fx = fixtures::branciari_four_point();
        let t = fx.t.as_table().unwrap();
        let doc = SpaceDocument::from_space(&fx.space, [("S", &fx.s), ("T", t)]);
        let again = SpaceDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.build().unwrap().space, fx.space);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match SpaceDocument::from_json("{\n  \"kind\": \"metric\",\n  \"points\": [1]\n}") {
            Err(DocumentError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            SpaceDocument::from_json(r#"{"kind": "ultra"}"#),
            Err(DocumentError::Syntax { .. })
        ));
        assert!(matches!(
            SpaceDocument::from_json(r#"{"kind": "metric", "extra": 1}"#),
            Err(DocumentError::Syntax { .. })
        ));
    }

    #[test]
    fn field_errors_name_the_field() {
        let missing = FOUR.replace(r#"["3","4","4"]"#, r#"["3","3","4"]"#);
        assert_eq!(err_field(&missing), "distances[5]");
        let dropped = FOUR.replace(r#",["3","4","4"]"#, "");
        assert_eq!(err_field(&dropped), "distances");
        let dup = FOUR.replace(r#"["3","4","4"]"#, r#"["4","1","4"]"#);
        assert_eq!(err_field(&dup), "distances[5]");
        let bad_value = FOUR.replace(r#"["1","2","3"]"#, r#"["1","2","3/0"]"#);
        assert_eq!(err_field(&bad_value), "distances[0][2]");
        let negative = FOUR.replace(r#"["1","2","3"]"#, r#"["1","2","-3"]"#);
        assert_eq!(err_field(&negative), "distances[0][2]");
        let unknown = FOUR.replace(r#"["1","2","3"]"#, r#"["1","9","3"]"#);
        assert_eq!(err_field(&unknown), "distances[0][1]");
        let partial_map = FOUR.replace(r#""4":"2"}, "T""#, r#""4":"2", "9":"1"}, "T""#);
        assert_eq!(err_field(&partial_map), "maps.S.9");
        let no_kind = FOUR.replace(r#""kind": "generalized","#, "");
        assert_eq!(err_field(&no_kind), "kind");
    }

    #[test]
    fn family_documents() {
        let loaded = SpaceDocument::from_json(r#"{"families": {"id": "kannan23", "n": 6}}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(loaded.space.len(), 4);
        assert!(loaded.is_family_aux("T"));
        assert!(!loaded.is_family_aux("S"));
        assert!(loaded.self_map("T").is_err());
        assert!(loaded.self_map("S").is_ok());

        let small =
            SpaceDocument::from_json(r#"{"families": {"id": "kannan23", "n": 4}}"#).unwrap();
        assert!(matches!(small.build(), Err(DocumentError::Field { .. })));
        let mixed = SpaceDocument::from_json(
            r#"{"points": ["a"], "families": {"id": "kannan23", "n": 6}}"#,
        )
        .unwrap();
        assert!(mixed.build().is_err());
    }
}
