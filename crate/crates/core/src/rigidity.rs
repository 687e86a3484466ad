//! Rigidity, vertex-redundant rigidity and global rigidity verdicts.

use crate::error::Result;
use crate::framework::{check_dims, sample_framework, trivial_motions, Lattice, Point, DEFAULT_TRIALS};
use crate::gain_graph::{shift_box, GainGraph, Mode};
use crate::framework::Framework;
use rayon::prelude::*;
use serde::Serialize;

/// Dimension, periodicity, lattice and sampling parameters shared by every
/// decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub d: usize,
    pub k: usize,
    pub lattice: Option<Lattice>,
    pub trials: usize,
    pub seed: u64,
}

impl Settings {
    pub fn new(d: usize, k: usize) -> Self {
        Settings {
            d,
            k,
            lattice: None,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }

    pub fn with_lattice(mut self, lattice: Option<Lattice>) -> Self {
        self.lattice = lattice;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RigidityMethod {
    /// Rank compared with `d|V| - d - C(d-k, 2)`.
    StandardCount,
    /// Rank compared with the rank of the complete gain graph on the same
    /// vertices (gains saturated over a growing box).
    SaturatedCompleteComparison,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub achieved_rank: usize,
    pub target_rank: usize,
    pub method: RigidityMethod,
    pub trials: usize,
    pub seed: u64,
}

/// Generic periodic rigidity of a bar-joint gain graph.
///
/// With at least `d + 1` vertices (or full-rank periodicity `k = d`) the
/// rank is compared with `d|V| - d - C(d-k, 2)`. For fewer vertices the
/// trivial-motion count is not reliable, and the graph is instead compared
/// with the complete gain graph on its vertex set.
pub fn is_rigid(graph: &GainGraph, s: &Settings) -> Result<RigidityVerdict> {
    check_dims(graph, s.d, s.k)?;
    let n = graph.vertex_count();
    let (d, k) = (s.d, s.k);
    let verdict = |achieved: usize, target: usize, method| RigidityVerdict {
        rigid: achieved == target,
        achieved_rank: achieved,
        target_rank: target,
        method,
        trials: s.trials,
        seed: s.seed,
    };
    if n == 0 {
        return Ok(verdict(0, 0, RigidityMethod::StandardCount));
    }
    if n > d || k == d {
        let target = d * n - trivial_motions(d, k);
        let achieved = max_over_trials(s, |t| {
            let f = sample_framework(graph, d, s.lattice.as_ref(), s.seed, t)?;
            Ok(f.rigidity_matrix().rank())
        })?;
        return Ok(verdict(achieved, target, RigidityMethod::StandardCount));
    }
    let ranks: Vec<(usize, usize)> = (0..s.trials.max(1) as u64)
        .into_par_iter()
        .map(|t| {
            let f = sample_framework(graph, d, s.lattice.as_ref(), s.seed, t)?;
            let own = f.rigidity_matrix().rank();
            let saturated = saturated_rank(graph.vertices(), f.lattice(), f.positions())?;
            Ok((own, saturated))
        })
        .collect::<Result<_>>()?;
    let achieved = ranks.iter().map(|r| r.0).max().unwrap_or(0);
    let target = ranks.iter().map(|r| r.1).max().unwrap_or(0);
    Ok(verdict(achieved, target, RigidityMethod::SaturatedCompleteComparison))
}

fn max_over_trials(s: &Settings, rank: impl Fn(u64) -> Result<usize> + Sync + Send) -> Result<usize> {
    let ranks: Vec<usize> = (0..s.trials.max(1) as u64)
        .into_par_iter()
        .map(&rank)
        .collect::<Result<_>>()?;
    Ok(ranks.into_iter().max().unwrap_or(0))
}

/// All pairs `u < v` joined by every gain in `[-m, m]^k`.
pub fn saturated_graph(vertices: &[String], k: usize, m: i64) -> GainGraph {
    let mut g = GainGraph::new(k, Mode::BarJoint, vertices.iter().cloned());
    let shifts = shift_box(k, m);
    for (i, u) in vertices.iter().enumerate() {
        for v in &vertices[i + 1..] {
            for s in &shifts {
                g.push_edge(u, v, s.clone()).expect("vertices exist");
            }
        }
    }
    g
}

/// Rank of the complete gain graph on `vertices` at the given placement.
///
/// The gain box grows from radius 1 until two consecutive radii give the
/// same rank (or the translation bound `d|V| - d` is reached).
pub fn saturated_rank(vertices: &[String], lattice: &Lattice, positions: &[Point]) -> Result<usize> {
    let d = lattice.d();
    let n = vertices.len();
    if n < 2 {
        return Ok(0);
    }
    let bound = d * n - d;
    let rank_at = |m: i64| -> Result<usize> {
        let g = saturated_graph(vertices, lattice.k(), m);
        let f = Framework::from_positions(g, lattice.clone(), positions.to_vec())?;
        Ok(f.rigidity_matrix().rank())
    };
    let mut prev = rank_at(1)?;
    if lattice.k() == 0 {
        return Ok(prev);
    }
    let mut m = 2;
    while prev < bound {
        let r = rank_at(m)?;
        if r == prev {
            break;
        }
        prev = r;
        m += 1;
    }
    Ok(prev)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexDeletion {
    pub vertex: String,
    pub verdict: RigidityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedundancyVerdict {
    pub redundant: bool,
    pub first_failure: Option<String>,
    pub per_vertex: Vec<VertexDeletion>,
    pub trials: usize,
    pub seed: u64,
}

/// Rigidity after deleting each vertex (and its edges) in turn.
pub fn is_vertex_redundantly_rigid(graph: &GainGraph, s: &Settings) -> Result<RedundancyVerdict> {
    check_dims(graph, s.d, s.k)?;
    let per_vertex: Vec<VertexDeletion> = graph
        .vertices()
        .par_iter()
        .map(|v| {
            let verdict = is_rigid(&graph.delete_vertex(v)?, s)?;
            Ok(VertexDeletion {
                vertex: v.clone(),
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    let first_failure = per_vertex
        .iter()
        .find(|d| !d.verdict.rigid)
        .map(|d| d.vertex.clone());
    Ok(RedundancyVerdict {
        redundant: first_failure.is_none(),
        first_failure,
        per_vertex,
        trials: s.trials,
        seed: s.seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GlobalStatus {
    GloballyRigid,
    NotGloballyRigid,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlobalReason {
    /// Vertex-redundantly rigid, with full gain rank when `k = d`.
    #[serde(rename = "thm-2-rigid-and-rank")]
    TwoRigidAndRank,
    /// Rigid with at most `d - k + 1` vertices.
    #[serde(rename = "small-graph-corollary")]
    SmallGraph,
    NotRigid,
    /// At least two vertices and gain rank below `k`: the covering splits
    /// into infinitely many components that can be flipped independently.
    GainRankBelowK,
    Inconclusive,
    /// Body-bar: bar-redundantly rigid, with gain rank `d` when `k = d`.
    BarRedundantAndRank,
    NotBarRedundant,
    /// Body-bar with `k = d` and gain rank below `d`.
    GainRankBelowD,
}

impl GlobalReason {
    pub fn implied_status(self) -> GlobalStatus {
        match self {
            GlobalReason::TwoRigidAndRank
            | GlobalReason::SmallGraph
            | GlobalReason::BarRedundantAndRank => GlobalStatus::GloballyRigid,
            GlobalReason::Inconclusive => GlobalStatus::Unknown,
            _ => GlobalStatus::NotGloballyRigid,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalVerdict {
    pub status: GlobalStatus,
    pub reason: GlobalReason,
    pub rigidity: RigidityVerdict,
    pub gain_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_redundancy: Option<RedundancyVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_edge: Option<String>,
    pub trials: usize,
    pub seed: u64,
}

impl GlobalVerdict {
    pub(crate) fn new(reason: GlobalReason, rigidity: RigidityVerdict, gain_rank: usize, s: &Settings) -> Self {
        GlobalVerdict {
            status: reason.implied_status(),
            reason,
            rigidity,
            gain_rank,
            vertex_redundancy: None,
            failed_vertex: None,
            failed_edge: None,
            trials: s.trials,
            seed: s.seed,
        }
    }
}

/// Three-way global rigidity decision. The first matching rule wins:
///
/// 1. not rigid => not globally rigid;
/// 2. two or more vertices with gain rank below `k` => not globally rigid;
/// 3. at most `d - k + 1` vertices => globally rigid;
/// 4. vertex-redundantly rigid, and gain rank `d` when `k = d` => globally rigid;
/// 5. otherwise unknown.
pub fn decide_global_rigidity(graph: &GainGraph, s: &Settings) -> Result<GlobalVerdict> {
    let rigidity = is_rigid(graph, s)?;
    let gain_rank = graph.full_gain_rank();
    let n = graph.vertex_count();
    if !rigidity.rigid {
        return Ok(GlobalVerdict::new(GlobalReason::NotRigid, rigidity, gain_rank, s));
    }
    if n >= 2 && gain_rank < s.k {
        return Ok(GlobalVerdict::new(GlobalReason::GainRankBelowK, rigidity, gain_rank, s));
    }
    if n <= s.d - s.k + 1 {
        return Ok(GlobalVerdict::new(GlobalReason::SmallGraph, rigidity, gain_rank, s));
    }
    let redundancy = is_vertex_redundantly_rigid(graph, s)?;
    let reason = if redundancy.redundant && (s.k < s.d || gain_rank == s.d) {
        GlobalReason::TwoRigidAndRank
    } else {
        GlobalReason::Inconclusive
    };
    let mut v = GlobalVerdict::new(reason, rigidity, gain_rank, s);
    v.failed_vertex = redundancy.first_failure.clone();
    v.vertex_redundancy = Some(redundancy);
    Ok(v)
}
