//! Gain graphs over Z^k: the finite quotients of periodic graphs.
//!
//! The group is written additively, so inverting a gain is negation.
//! Vertices are opaque string identifiers kept in sorted order; every
//! operation that produces output iterates in that order.

use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of Z^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GainVector(pub Vec<i64>);

impl GainVector {
    pub fn zero(k: usize) -> Self {
        GainVector(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        GainVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for GainVector {
    fn from(v: Vec<i64>) -> Self {
        GainVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for GainVector {
    fn from(v: [i64; N]) -> Self {
        GainVector(v.to_vec())
    }
}

impl Add for &GainVector {
    type Output = GainVector;
    fn add(self, rhs: &GainVector) -> GainVector {
        GainVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GainVector {
    type Output = GainVector;
    fn sub(self, rhs: &GainVector) -> GainVector {
        GainVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GainVector {
    type Output = GainVector;
    fn neg(self) -> GainVector {
        GainVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for GainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// No loops, no parallel edges carrying the same gain.
    BarJoint,
    /// Loops with non-identity gain and equal-gain parallels are allowed.
    BodyBar,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::BarJoint => "bar-joint",
            Mode::BodyBar => "body-bar",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub gain: GainVector,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A violated mode invariant found by [`GainGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Loop { edge: String },
    IdentityLoop { edge: String },
    ParallelSameGain { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { edge } => write!(f, "edge `{edge}` is a loop (not allowed in bar-joint mode)"),
            Violation::IdentityLoop { edge } => write!(f, "edge `{edge}` is a loop with identity gain"),
            Violation::ParallelSameGain { first, second } => {
                write!(f, "edges `{first}` and `{second}` are parallel with the same gain")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainGraph {
    k: usize,
    mode: Mode,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl GainGraph {
    /// Creates an edgeless graph. Vertex ids are sorted and deduplicated.
    pub fn new<I, S>(k: usize, mode: Mode, vertices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        GainGraph {
            k,
            mode,
            vertices: set.into_iter().collect(),
            edges: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(v))
            .map_err(|_| Error::UnknownVertex(v.to_string()))
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Adds an edge. Structural errors (unknown endpoint, wrong gain length,
    /// duplicate id) are rejected here; mode invariants are left to
    /// [`GainGraph::validate`].
    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        tail: &str,
        head: &str,
        gain: impl Into<GainVector>,
    ) -> Result<usize> {
        let id = id.into();
        let gain = gain.into();
        if gain.len() != self.k {
            return Err(Error::GainLength {
                edge: id,
                expected: self.k,
                found: gain.len(),
            });
        }
        if self.edges.iter().any(|e| e.id == id) {
            return Err(Error::DuplicateEdgeId(id));
        }
        let tail = self.vertex_index(tail)?;
        let head = self.vertex_index(head)?;
        self.edges.push(Edge { id, tail, head, gain });
        Ok(self.edges.len() - 1)
    }

    /// Adds an edge with a generated id `e<n>` that does not clash.
    pub fn push_edge(&mut self, tail: &str, head: &str, gain: impl Into<GainVector>) -> Result<usize> {
        let id = self.fresh_edge_id("e");
        self.add_edge(id, tail, head, gain)
    }

    fn fresh_edge_id(&self, prefix: &str) -> String {
        let taken: BTreeSet<&str> = self.edges.iter().map(|e| e.id.as_str()).collect();
        (self.edges.len()..)
            .map(|n| format!("{prefix}{n}"))
            .find(|id| !taken.contains(id.as_str()))
            .expect("unbounded id space")
    }

    pub fn with_mode(&self, mode: Mode) -> GainGraph {
        GainGraph {
            mode,
            ..self.clone()
        }
    }

    /// Checks the mode-dependent invariants and reports every violation.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.is_loop() {
                match self.mode {
                    Mode::BarJoint => out.push(Violation::Loop { edge: e.id.clone() }),
                    Mode::BodyBar if e.gain.is_identity() => {
                        out.push(Violation::IdentityLoop { edge: e.id.clone() })
                    }
                    Mode::BodyBar => {}
                }
            }
        }
        if self.mode == Mode::BarJoint {
            // Orient every non-loop edge from the smaller to the larger index
            // and compare gains in that orientation.
            let mut seen: BTreeMap<(usize, usize, GainVector), &str> = BTreeMap::new();
            for e in self.edges.iter().filter(|e| !e.is_loop()) {
                let key = if e.tail < e.head {
                    (e.tail, e.head, e.gain.clone())
                } else {
                    (e.head, e.tail, -&e.gain)
                };
                if let Some(first) = seen.get(&key) {
                    out.push(Violation::ParallelSameGain {
                        first: first.to_string(),
                        second: e.id.clone(),
                    });
                } else {
                    seen.insert(key, &e.id);
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidGraph)
    }

    /// Switching at `v` by `gamma`: out-edges gain `+gamma`, in-edges `-gamma`.
    pub fn switch(&self, v: &str, gamma: &GainVector) -> Result<GainGraph> {
        let vi = self.vertex_index(v)?;
        if gamma.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "switching gain has length {}, expected {}",
                gamma.len(),
                self.k
            )));
        }
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            match (e.tail == vi, e.head == vi) {
                (true, false) => e.gain = &e.gain + gamma,
                (false, true) => e.gain = &e.gain - gamma,
                _ => {}
            }
        }
        Ok(g)
    }

    /// Swaps tail and head of edge `id` and negates its gain.
    pub fn reverse_edge(&self, id: &str) -> Result<GainGraph> {
        let i = self.edge_index(id)?;
        let mut g = self.clone();
        let e = &mut g.edges[i];
        std::mem::swap(&mut e.tail, &mut e.head);
        e.gain = -&e.gain;
        Ok(g)
    }

    /// Rank of the subgroup generated by gains of closed walks using only
    /// the given edges (by index).
    pub fn gain_rank(&self, edges: &[usize]) -> usize {
        let gens = self.cycle_generators(edges);
        integer_rank(&gens)
    }

    pub fn full_gain_rank(&self) -> usize {
        let all: Vec<usize> = (0..self.edges.len()).collect();
        self.gain_rank(&all)
    }

    /// Fundamental-cycle gains of a spanning forest of the given edges.
    /// Loops contribute their own gain.
    pub fn cycle_generators(&self, edges: &[usize]) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &ei in edges {
            let e = &self.edges[ei];
            if !e.is_loop() {
                adj[e.tail].push(ei);
                adj[e.head].push(ei);
            }
        }
        // Potentials: for a tree edge tail -> head with gain g,
        // potential(head) = potential(tail) + g.
        let mut potential: Vec<Option<GainVector>> = vec![None; n];
        let mut tree_edge = vec![false; self.edges.len()];
        let mut stack = Vec::new();
        let mut touched: Vec<usize> = edges
            .iter()
            .flat_map(|&ei| [self.edges[ei].tail, self.edges[ei].head])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for root in touched {
            if potential[root].is_some() {
                continue;
            }
            potential[root] = Some(GainVector::zero(self.k));
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &ei in &adj[u] {
                    let e = &self.edges[ei];
                    let (w, pw) = if e.tail == u {
                        (e.head, potential[u].as_ref().map(|p| p + &e.gain))
                    } else {
                        (e.tail, potential[u].as_ref().map(|p| p - &e.gain))
                    };
                    if potential[w].is_none() {
                        potential[w] = pw;
                        tree_edge[ei] = true;
                        stack.push(w);
                    }
                }
            }
        }
        let mut gens = Vec::new();
        for &ei in edges {
            if tree_edge[ei] {
                continue;
            }
            let e = &self.edges[ei];
            let (pt, ph) = (
                potential[e.tail].as_ref().expect("visited"),
                potential[e.head].as_ref().expect("visited"),
            );
            let g = &(pt + &e.gain) - ph;
            if !g.is_identity() {
                gens.push(g.0);
            }
        }
        gens
    }

    /// Removes `v` and every edge incident to it.
    pub fn delete_vertex(&self, v: &str) -> Result<GainGraph> {
        let vi = self.vertex_index(v)?;
        let remap = |i: usize| if i > vi { i - 1 } else { i };
        let mut vertices = self.vertices.clone();
        vertices.remove(vi);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.tail != vi && e.head != vi)
            .map(|e| Edge {
                id: e.id.clone(),
                tail: remap(e.tail),
                head: remap(e.head),
                gain: e.gain.clone(),
            })
            .collect();
        Ok(GainGraph {
            k: self.k,
            mode: self.mode,
            vertices,
            edges,
        })
    }

    /// Removes the edge with the given id; endpoints are kept.
    pub fn delete_edge(&self, id: &str) -> Result<GainGraph> {
        let i = self.edge_index(id)?;
        let mut g = self.clone();
        g.edges.remove(i);
        Ok(g)
    }

    /// Renames vertices; names missing from `mapping` are kept.
    pub fn relabel(&self, mapping: &BTreeMap<String, String>) -> Result<GainGraph> {
        let name = |i: usize| {
            let old = &self.vertices[i];
            mapping.get(old).unwrap_or(old).clone()
        };
        let mut g = GainGraph::new(self.k, self.mode, (0..self.vertices.len()).map(name));
        if g.vertices.len() != self.vertices.len() {
            return Err(Error::DimensionMismatch("relabelling is not injective".into()));
        }
        for e in &self.edges {
            g.add_edge(e.id.clone(), &name(e.tail), &name(e.head), e.gain.clone())?;
        }
        Ok(g)
    }

    /// The cone contraction at `v`: remove `v` and join every pair of its
    /// distinct neighbours `u`, `w` by an edge `u -> w` with gain
    /// `gain(v->w) - gain(v->u)` unless that edge is already present.
    pub fn cone_contract(&self, v: &str) -> Result<GainGraph> {
        if self.mode != Mode::BarJoint {
            return Err(Error::WrongMode {
                expected: "bar-joint",
            });
        }
        let vi = self.vertex_index(v)?;
        // Incident edges reoriented to leave v.
        let star: Vec<(&str, usize, GainVector)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .filter_map(|e| {
                if e.tail == vi {
                    Some((e.id.as_str(), e.head, e.gain.clone()))
                } else if e.head == vi {
                    Some((e.id.as_str(), e.tail, -&e.gain))
                } else {
                    None
                }
            })
            .collect();
        let mut g = self.delete_vertex(v)?;
        for (i, (id1, u, g1)) in star.iter().enumerate() {
            for (id2, w, g2) in &star[i + 1..] {
                if u == w {
                    continue;
                }
                let gain = g2 - g1;
                let u_name = self.vertices[*u].clone();
                let w_name = self.vertices[*w].clone();
                let (ui, wi) = (g.vertex_index(&u_name)?, g.vertex_index(&w_name)?);
                let present = g.edges.iter().any(|e| {
                    (e.tail == ui && e.head == wi && e.gain == gain)
                        || (e.tail == wi && e.head == ui && e.gain == -&gain)
                });
                if present {
                    continue;
                }
                let mut id = format!("{id1}.{id2}");
                if g.edge_index(&id).is_ok() {
                    id = g.fresh_edge_id(&format!("{id}#"));
                }
                g.add_edge(id, &u_name, &w_name, gain)?;
            }
        }
        Ok(g)
    }

    /// The finite part of the covering with shifts in `[-m, m]^k`.
    pub fn covering_window(&self, m: u32) -> CoveringWindow {
        let shifts = shift_box(self.k, m as i64);
        let side = shifts.len();
        let shift_index = |s: &GainVector| -> Option<usize> {
            let m = m as i64;
            let width = 2 * m + 1;
            let mut idx = 0usize;
            for &c in s.coords() {
                if c < -m || c > m {
                    return None;
                }
                idx = idx * width as usize + (c + m) as usize;
            }
            Some(idx)
        };
        let vertices = self
            .vertices
            .iter()
            .flat_map(|v| {
                shifts.iter().map(move |s| CoveringVertex {
                    vertex: v.clone(),
                    shift: s.clone(),
                })
            })
            .collect();
        let mut edges = Vec::new();
        for e in &self.edges {
            for (si, s) in shifts.iter().enumerate() {
                let target_shift = s + &e.gain;
                if let Some(ti) = shift_index(&target_shift) {
                    edges.push(CoveringEdge {
                        source: e.tail * side + si,
                        target: e.head * side + ti,
                        quotient_edge: e.id.clone(),
                    });
                }
            }
        }
        CoveringWindow {
            radius: m,
            vertices,
            edges,
        }
    }
}

/// All vectors of `[-m, m]^k` in lexicographic order.
pub fn shift_box(k: usize, m: i64) -> Vec<GainVector> {
    let mut out = vec![GainVector(Vec::with_capacity(k))];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-m..=m).map(move |c| {
                    let mut v = prefix.0.clone();
                    v.push(c);
                    GainVector(v)
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringVertex {
    pub vertex: String,
    pub shift: GainVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringEdge {
    pub source: usize,
    pub target: usize,
    pub quotient_edge: String,
}

/// Covering vertices `(v, shift)` and the covering edges between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringWindow {
    pub radius: u32,
    pub vertices: Vec<CoveringVertex>,
    pub edges: Vec<CoveringEdge>,
}

impl CoveringWindow {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("covering window serializes")
    }

    pub fn to_dot(&self) -> String {
        let label = |v: &CoveringVertex| {
            let s: Vec<String> = v.shift.coords().iter().map(|c| c.to_string()).collect();
            format!("{}[{}]", v.vertex, s.join(","))
        };
        let mut out = String::from("graph covering {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape_dot(&label(v))));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -- n{} [label=\"{}\"];\n",
                e.source,
                e.target,
                escape_dot(&e.quotient_edge)
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
