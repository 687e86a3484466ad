//! The JSON input document shared by the command-line tools.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "periodicity": 2,
//!   "lattice": [["1", "0"], ["0", "1"]],
//!   "mode": "bar-joint",
//!   "vertices": ["a", "b"],
//!   "edges": [
//!     {"tail": "a", "head": "b", "gain": [0, 0]},
//!     {"id": "e1", "tail": "a", "head": "b", "gain": [1, 0]}
//!   ],
//!   "placement": {"a": ["3/10", "2/5"], "b": ["7/10", "3/5"]},
//!   "q": {"a": ["3/10", "2/5"], "b": ["7/10", "1/5"]}
//! }
//! ```
//!
//! The lattice is a `dim x periodicity` matrix given row by row. Rationals
//! are JSON integers or `"num/den"` strings and are always written back as
//! strings. Unknown fields are rejected.

use crate::error::{Error, Result};
use crate::framework::{Lattice, Placement, Point};
use crate::gain_graph::{GainGraph, Mode};
use crate::linalg::{format_rational, parse_rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalValue(pub BigRational);

impl Serialize for RationalValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalValue;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(RationalValue(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(RationalValue(BigRational::from_integer(BigInt::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                parse_rational(v)
                    .map(RationalValue)
                    .ok_or_else(|| E::custom(format!("invalid rational `{v}`")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub tail: String,
    pub head: String,
    pub gain: Vec<i64>,
}

pub type PointMap = BTreeMap<String, Vec<RationalValue>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub dim: usize,
    pub periodicity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<RationalValue>>>,
    pub mode: Mode,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<PointMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<PointMap>,
}

/// A validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub d: usize,
    pub k: usize,
    pub graph: GainGraph,
    pub lattice: Option<Lattice>,
    pub placement: Option<Placement>,
    pub q: Option<Placement>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Checks every graph, lattice and placement invariant.
    pub fn parse(&self) -> Result<Parsed> {
        let (d, k) = (self.dim, self.periodicity);
        if k > d {
            return Err(Error::InvalidDimensions(format!("periodicity {k} exceeds dim {d}")));
        }
        let mut sorted = self.vertices.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate vertex `{}`", w[0])));
        }
        let mut graph = GainGraph::new(k, self.mode, self.vertices.iter().cloned());
        for (i, e) in self.edges.iter().enumerate() {
            let id = e.id.clone().unwrap_or_else(|| format!("e{i}"));
            graph.add_edge(id, &e.tail, &e.head, e.gain.clone())?;
        }
        graph.ensure_valid()?;
        let lattice = self
            .lattice
            .as_ref()
            .map(|rows| {
                let rows: Vec<Point> = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
                Lattice::from_matrix_rows(d, k, &rows)
            })
            .transpose()?;
        let to_placement = |m: &PointMap| -> Result<Placement> {
            let p = Placement(
                m.iter()
                    .map(|(v, xs)| (v.clone(), xs.iter().map(|x| x.0.clone()).collect()))
                    .collect(),
            );
            p.positions_for(&graph, d)?;
            Ok(p)
        };
        let placement = self.placement.as_ref().map(to_placement).transpose()?;
        let q = self.q.as_ref().map(to_placement).transpose()?;
        Ok(Parsed {
            d,
            k,
            graph,
            lattice,
            placement,
            q,
        })
    }

    /// Serializes a graph (without placements).
    pub fn from_graph(graph: &GainGraph, d: usize, lattice: Option<&Lattice>) -> Self {
        InputDocument {
            dim: d,
            periodicity: graph.k(),
            lattice: lattice.map(|l| {
                l.matrix_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(RationalValue).collect())
                    .collect()
            }),
            mode: graph.mode(),
            vertices: graph.vertices().to_vec(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: Some(e.id.clone()),
                    tail: graph.vertex_name(e.tail).to_string(),
                    head: graph.vertex_name(e.head).to_string(),
                    gain: e.gain.0.clone(),
                })
                .collect(),
            placement: None,
            q: None,
        }
    }
}

pub fn parse_document(text: &str) -> Result<Parsed> {
    InputDocument::from_json(text)?.parse()
}
