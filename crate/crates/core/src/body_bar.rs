//! Periodic body-bar frameworks.
//!
//! A body-bar multigraph `H` (bodies as vertices, bars as edges, loops with
//! non-identity gain allowed) is expanded into a bar-joint gain graph: each
//! body becomes a complete graph on `d + 1` core vertices plus one
//! attachment vertex per incident bar end, and each bar joins two
//! attachment vertices. A loop bar gets two attachment vertices on its body
//! so the expanded graph has no loops.

use crate::error::{Error, Result};
use crate::framework::binom2;
use crate::gain_graph::{GainGraph, GainVector, Mode};
use crate::rigidity::{is_rigid, GlobalReason, GlobalVerdict, RigidityVerdict, Settings};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Default limit on `|E(H)|` for the subset enumeration in [`count_rank`].
pub const DEFAULT_EDGE_CAP: usize = 20;

/// The expanded graph plus where each piece came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BodyBarGainGraph {
    pub graph: GainGraph,
    /// Body id -> vertices of its complete graph, core vertices first.
    pub bodies: BTreeMap<String, Vec<String>>,
    /// `(H-edge id, bar edge id)` in H-edge order.
    pub bars: Vec<(String, String)>,
}

impl BodyBarGainGraph {
    pub fn bar_for(&self, h_edge: &str) -> Option<&str> {
        self.bars
            .iter()
            .find(|(h, _)| h == h_edge)
            .map(|(_, b)| b.as_str())
    }
}

fn check_body_bar(h: &GainGraph) -> Result<()> {
    if h.mode() != Mode::BodyBar {
        return Err(Error::WrongMode { expected: "body-bar" });
    }
    if h.vertex_count() == 0 {
        return Err(Error::NoBodies);
    }
    h.ensure_valid()
}

pub fn build_body_bar_gain_graph(h: &GainGraph, d: usize) -> Result<BodyBarGainGraph> {
    check_body_bar(h)?;
    if d == 0 {
        return Err(Error::InvalidDimensions("body-bar frameworks need d >= 1".into()));
    }
    let mut bodies: BTreeMap<String, Vec<String>> = h
        .vertices()
        .iter()
        .map(|v| (v.clone(), (1..=d + 1).map(|i| format!("{v}#c{i}")).collect()))
        .collect();
    // (tail attachment, head attachment) per H-edge.
    let mut ends = Vec::with_capacity(h.edge_count());
    for e in h.edges() {
        let (tv, hv) = (h.vertex_name(e.tail), h.vertex_name(e.head));
        let (ta, ha) = if e.is_loop() {
            (format!("{tv}#e:{}-", e.id), format!("{tv}#e:{}+", e.id))
        } else {
            (format!("{tv}#e:{}", e.id), format!("{hv}#e:{}", e.id))
        };
        bodies.get_mut(tv).expect("body exists").push(ta.clone());
        bodies.get_mut(hv).expect("body exists").push(ha.clone());
        ends.push((ta, ha));
    }
    let expected: usize = bodies.values().map(Vec::len).sum();
    let mut g = GainGraph::new(h.k(), Mode::BarJoint, bodies.values().flatten().cloned());
    if g.vertex_count() != expected {
        return Err(Error::InvalidDimensions(
            "body and edge ids produce clashing vertex names".into(),
        ));
    }
    let identity = GainVector::zero(h.k());
    for (body, members) in &bodies {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                g.add_edge(format!("body:{body}:{i}:{j}"), &members[i], &members[j], identity.clone())?;
            }
        }
    }
    let mut bars = Vec::with_capacity(h.edge_count());
    for (e, (ta, ha)) in h.edges().iter().zip(ends) {
        let id = format!("bar:{}", e.id);
        g.add_edge(id.clone(), &ta, &ha, e.gain.clone())?;
        bars.push((e.id.clone(), id));
    }
    Ok(BodyBarGainGraph {
        graph: g,
        bodies,
        bars,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarDeletion {
    pub edge: String,
    pub verdict: RigidityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarRedundancyVerdict {
    pub redundant: bool,
    pub rigidity: RigidityVerdict,
    pub first_failure: Option<String>,
    pub per_edge: Vec<BarDeletion>,
    pub trials: usize,
    pub seed: u64,
}

/// Rigidity of the expanded graph after removing each bar in turn
/// (attachment vertices stay). The expanded graph itself must be rigid too,
/// which only matters when `H` has no bars.
pub fn is_bar_redundantly_rigid(h: &GainGraph, s: &Settings) -> Result<BarRedundancyVerdict> {
    let built = build_body_bar_gain_graph(h, s.d)?;
    bar_redundancy(&built, s)
}

fn bar_redundancy(built: &BodyBarGainGraph, s: &Settings) -> Result<BarRedundancyVerdict> {
    let rigidity = is_rigid(&built.graph, s)?;
    let per_edge: Vec<BarDeletion> = built
        .bars
        .par_iter()
        .map(|(h_edge, bar)| {
            let verdict = is_rigid(&built.graph.delete_edge(bar)?, s)?;
            Ok(BarDeletion {
                edge: h_edge.clone(),
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    let first_failure = per_edge
        .iter()
        .find(|d| !d.verdict.rigid)
        .map(|d| d.edge.clone());
    Ok(BarRedundancyVerdict {
        redundant: rigidity.rigid && first_failure.is_none(),
        rigidity,
        first_failure,
        per_edge,
        trials: s.trials,
        seed: s.seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BodyBarGlobalVerdict {
    #[serde(flatten)]
    pub verdict: GlobalVerdict,
    pub bar_redundancy: BarRedundancyVerdict,
}

/// Global rigidity of a generic body-bar realisation: bar-redundant
/// rigidity, plus gain rank `d` of the expanded quotient when `k = d`.
/// This is a characterization, so the answer is never unknown.
pub fn decide_body_bar_global(h: &GainGraph, s: &Settings) -> Result<BodyBarGlobalVerdict> {
    let built = build_body_bar_gain_graph(h, s.d)?;
    let redundancy = bar_redundancy(&built, s)?;
    let gain_rank = built.graph.full_gain_rank();
    let reason = if !redundancy.redundant {
        GlobalReason::NotBarRedundant
    } else if s.k == s.d && gain_rank != s.d {
        GlobalReason::GainRankBelowD
    } else {
        GlobalReason::BarRedundantAndRank
    };
    let mut verdict = GlobalVerdict::new(reason, redundancy.rigidity.clone(), gain_rank, s);
    verdict.failed_edge = redundancy.first_failure.clone();
    Ok(BodyBarGlobalVerdict {
        verdict,
        bar_redundancy: redundancy,
    })
}

/// `C(d+1, 2)|V(F)| - d - C(d - k(F), 2)`; may be negative.
pub fn count_bound(d: usize, vertices: usize, gain_rank: usize) -> i64 {
    (binom2(d + 1) * vertices) as i64 - d as i64 - binom2(d - gain_rank) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountViolation {
    pub edges: Vec<String>,
    pub size: usize,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub rigid: bool,
    pub target: i64,
    pub achieved: usize,
    /// A maximum independent edge set (greedy in edge order).
    pub witness: Vec<String>,
    /// The violated subset with the largest excess `|F| - b(F)`, when the
    /// edge set is not itself independent.
    pub tightest_violation: Option<CountViolation>,
}

/// Independence table of the count matroid on `E(H)`: `F` is independent
/// when every nonempty `F' ⊆ F` satisfies `|F'| <= b(F')`.
pub struct CountMatroid {
    d: usize,
    edge_ids: Vec<String>,
    bounds: Vec<i64>,
    independent: Vec<bool>,
}

impl CountMatroid {
    pub fn new(h: &GainGraph, d: usize, cap: usize) -> Result<Self> {
        let m = h.edge_count();
        if m > cap {
            return Err(Error::EdgeCapExceeded { edges: m, cap });
        }
        let full = 1usize << m;
        let bounds: Vec<i64> = (0..full)
            .into_par_iter()
            .map(|mask| {
                let edges: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                let mut touched: Vec<usize> = edges
                    .iter()
                    .flat_map(|&i| [h.edges()[i].tail, h.edges()[i].head])
                    .collect();
                touched.sort_unstable();
                touched.dedup();
                count_bound(d, touched.len(), h.gain_rank(&edges).min(d))
            })
            .collect();
        // Masks in increasing order visit every proper subset first.
        let mut independent = vec![false; full];
        independent[0] = true;
        for mask in 1..full {
            let size = mask.count_ones() as i64;
            independent[mask] = size <= bounds[mask]
                && (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .all(|i| independent[mask ^ (1 << i)]);
        }
        Ok(CountMatroid {
            d,
            edge_ids: h.edges().iter().map(|e| e.id.clone()).collect(),
            bounds,
            independent,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_independent(&self, mask: usize) -> bool {
        self.independent[mask]
    }

    pub fn bound(&self, mask: usize) -> i64 {
        self.bounds[mask]
    }

    pub fn rank(&self) -> usize {
        (0..self.independent.len())
            .filter(|&m| self.independent[m])
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn greedy_basis(&self) -> usize {
        (0..self.edge_count()).fold(0usize, |acc, i| {
            let next = acc | 1 << i;
            if self.independent[next] {
                next
            } else {
                acc
            }
        })
    }

    fn ids(&self, mask: usize) -> Vec<String> {
        (0..self.edge_count())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.edge_ids[i].clone())
            .collect()
    }

    fn tightest_violation(&self) -> Option<CountViolation> {
        (1..self.bounds.len())
            .filter(|&m| m.count_ones() as i64 > self.bounds[m])
            .max_by_key(|&m| {
                let size = m.count_ones() as i64;
                (size - self.bounds[m], std::cmp::Reverse(size), std::cmp::Reverse(m))
            })
            .map(|m| CountViolation {
                edges: self.ids(m),
                size: m.count_ones() as usize,
                bound: self.bounds[m],
            })
    }
}

/// Combinatorial rigidity test by subset enumeration of the count matroid.
pub fn count_rank(h: &GainGraph, d: usize, k: usize) -> Result<CountReport> {
    count_rank_capped(h, d, k, DEFAULT_EDGE_CAP)
}

pub fn count_rank_capped(h: &GainGraph, d: usize, k: usize, cap: usize) -> Result<CountReport> {
    check_body_bar(h)?;
    if k > d || h.k() != k {
        return Err(Error::InvalidDimensions(format!(
            "graph periodicity {} with k = {k}, d = {d}",
            h.k()
        )));
    }
    let matroid = CountMatroid::new(h, d, cap)?;
    let target = count_bound(d, h.vertex_count(), k);
    let achieved = matroid.rank();
    let full = (1usize << matroid.edge_count()) - 1;
    Ok(CountReport {
        rigid: achieved as i64 == target,
        target,
        achieved,
        witness: matroid.ids(matroid.greedy_basis()),
        tightest_violation: if matroid.is_independent(full) {
            None
        } else {
            matroid.tightest_violation()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::GlobalStatus;

    fn body_with_loops(k: usize, loops: &[&[i64]]) -> GainGraph {
        let mut h = GainGraph::new(k, Mode::BodyBar, ["v"]);
        for (i, g) in loops.iter().enumerate() {
            h.add_edge(format!("l{i}"), "v", "v", g.to_vec()).unwrap();
        }
        h
    }

    fn two_bodies(k: usize, bars: usize) -> GainGraph {
        let mut h = GainGraph::new(k, Mode::BodyBar, ["u", "v"]);
        for i in 0..bars {
            h.add_edge(format!("b{i}"), "u", "v", vec![0; k]).unwrap();
        }
        h
    }

    #[test]
    fn build_single_loop() {
        let h = body_with_loops(2, &[&[1, 0]]);
        let b = build_body_bar_gain_graph(&h, 2).unwrap();
        assert_eq!(b.graph.vertex_count(), 5);
        assert_eq!(b.graph.edge_count(), 10 + 1);
        let bar = &b.graph.edges()[b.graph.edge_index("bar:l0").unwrap()];
        assert_eq!(bar.gain, GainVector::from([1, 0]));
        assert!(b.graph.validate().is_ok());
        assert_eq!(b.bar_for("l0"), Some("bar:l0"));
    }

    #[test]
    fn build_two_bodies() {
        let b = build_body_bar_gain_graph(&two_bodies(0, 1), 2).unwrap();
        assert_eq!(b.bodies["u"].len(), 4);
        assert_eq!(b.bodies["v"].len(), 4);
        assert_eq!(b.graph.edge_count(), 6 + 6 + 1);
        assert!(b.graph.validate().is_ok());
    }

    #[test]
    fn build_rejects_bad_input() {
        let mut h = GainGraph::new(1, Mode::BodyBar, ["v"]);
        h.add_edge("l", "v", "v", [0]).unwrap();
        assert!(matches!(build_body_bar_gain_graph(&h, 2), Err(Error::InvalidGraph(_))));
        let empty = GainGraph::new(1, Mode::BodyBar, Vec::<String>::new());
        assert_eq!(build_body_bar_gain_graph(&empty, 2), Err(Error::NoBodies));
        let bj = GainGraph::new(1, Mode::BarJoint, ["v"]);
        assert!(matches!(build_body_bar_gain_graph(&bj, 2), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn bar_redundancy_examples() {
        let s = Settings::new(2, 2);
        let v = is_bar_redundantly_rigid(&body_with_loops(2, &[&[1, 0], &[0, 1]]), &s).unwrap();
        assert!(v.redundant);
        assert_eq!(v.per_edge.len(), 2);

        let v = is_bar_redundantly_rigid(&body_with_loops(2, &[&[1, 0]]), &s).unwrap();
        assert!(!v.redundant);
        let gap = v.per_edge[0].verdict.target_rank - v.per_edge[0].verdict.achieved_rank;
        assert_eq!(gap, 1);

        let v = is_bar_redundantly_rigid(&two_bodies(0, 1), &Settings::new(2, 0)).unwrap();
        assert!(!v.redundant);
    }

    #[test]
    fn global_examples() {
        let s = Settings::new(2, 2);
        let v = decide_body_bar_global(&body_with_loops(2, &[&[1, 0], &[0, 1]]), &s).unwrap();
        assert_eq!(v.verdict.status, GlobalStatus::GloballyRigid);
        assert_eq!(v.verdict.gain_rank, 2);

        let v = decide_body_bar_global(&body_with_loops(2, &[&[1, 0], &[2, 0]]), &s).unwrap();
        assert_eq!(v.verdict.status, GlobalStatus::NotGloballyRigid);
        assert_eq!(v.verdict.reason, GlobalReason::GainRankBelowD);
        assert_eq!(v.verdict.gain_rank, 1);

        let v = decide_body_bar_global(&two_bodies(0, 3), &Settings::new(2, 0)).unwrap();
        assert_eq!(v.verdict.status, GlobalStatus::NotGloballyRigid);
        assert_eq!(v.verdict.reason, GlobalReason::NotBarRedundant);
        assert!(v.bar_redundancy.rigidity.rigid);
    }

    #[test]
    fn count_examples() {
        let r = count_rank(&body_with_loops(2, &[&[1, 0]]), 2, 2).unwrap();
        assert_eq!((r.rigid, r.target, r.achieved), (true, 1, 1));
        assert_eq!(r.witness, vec!["l0".to_string()]);

        let r = count_rank(&body_with_loops(2, &[]), 2, 2).unwrap();
        assert_eq!((r.rigid, r.target, r.achieved), (false, 1, 0));
        assert!(r.tightest_violation.is_none());

        let r = count_rank(&two_bodies(0, 3), 2, 0).unwrap();
        assert_eq!((r.rigid, r.target, r.achieved), (true, 3, 3));

        let r = count_rank(&two_bodies(0, 4), 2, 0).unwrap();
        assert!(r.rigid);
        let viol = r.tightest_violation.unwrap();
        assert_eq!((viol.size, viol.bound), (4, 3));

        let r = count_rank(&body_with_loops(2, &[&[1, 0], &[0, 1]]), 2, 2).unwrap();
        assert_eq!((r.target, r.achieved, r.witness.len()), (1, 1, 1));
    }

    #[test]
    fn count_cap_and_dimensions() {
        let h = two_bodies(0, 5);
        assert_eq!(
            count_rank_capped(&h, 2, 0, 4).unwrap_err(),
            Error::EdgeCapExceeded { edges: 5, cap: 4 }
        );
        assert!(count_rank(&h, 2, 1).is_err());
    }

    #[test]
    fn counts_agree_with_geometry_on_small_cases() {
        let cases = [
            (body_with_loops(2, &[&[1, 0]]), 2, 2),
            (body_with_loops(2, &[&[1, 0], &[0, 1]]), 2, 2),
            (body_with_loops(1, &[&[1]]), 2, 1),
            (two_bodies(0, 2), 2, 0),
            (two_bodies(0, 3), 2, 0),
            (two_bodies(0, 6), 3, 0),
            (two_bodies(0, 5), 3, 0),
        ];
        for (h, d, k) in cases {
            let counts = count_rank(&h, d, k).unwrap();
            let built = build_body_bar_gain_graph(&h, d).unwrap();
            let geo = is_rigid(&built.graph, &Settings::new(d, k)).unwrap();
            assert_eq!(counts.rigid, geo.rigid, "{h:?} d={d} k={k}");
        }
    }

    #[test]
    fn independence_is_hereditary() {
        let mut h = GainGraph::new(2, Mode::BodyBar, ["a", "b", "c"]);
        h.add_edge("x", "a", "b", [0, 0]).unwrap();
        h.add_edge("y", "a", "b", [1, 0]).unwrap();
        h.add_edge("z", "b", "c", [0, 1]).unwrap();
        h.add_edge("w", "c", "c", [1, 1]).unwrap();
        h.add_edge("u", "a", "a", [2, 0]).unwrap();
        let m = CountMatroid::new(&h, 2, DEFAULT_EDGE_CAP).unwrap();
        for mask in 0..1usize << 5 {
            if m.is_independent(mask) {
                for i in 0..5 {
                    assert!(m.is_independent(mask & !(1 << i)));
                }
            }
        }
        assert_eq!(m.greedy_basis().count_ones() as usize, m.rank());
    }
}
