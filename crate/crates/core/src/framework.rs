//! Periodic frameworks on a fixed lattice.
//!
//! A framework is a bar-joint gain graph together with a nonsingular lattice
//! `L: Z^k -> R^d` and a rational placement of the quotient vertices. The
//! covering placement is determined by `p(gamma v) = p(v) + L(gamma)`.

use crate::error::{Error, Result};
use crate::gain_graph::{GainGraph, GainVector, Mode};
use crate::linalg::{dot, rank, RationalMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

pub type Point = Vec<BigRational>;

/// Upper end of the sampling range for generic coordinates, `[1, 2^30]`.
pub const SAMPLE_MAX: i64 = 1 << 30;

pub const DEFAULT_TRIALS: usize = 3;

pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of independent trivial motions of a generic `L`-periodic
/// framework with rank-`k` periodicity in `R^d`.
pub fn trivial_motions(d: usize, k: usize) -> usize {
    d + binom2(d - k)
}

/// A nonsingular homomorphism `Z^k -> R^d`, stored as its `k` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    d: usize,
    columns: Vec<Point>,
}

impl Lattice {
    pub fn new(d: usize, columns: Vec<Point>) -> Result<Self> {
        let k = columns.len();
        if k > d {
            return Err(Error::InvalidDimensions(format!(
                "periodicity rank {k} exceeds dimension {d}"
            )));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "lattice column has length {}, expected {d}",
                c.len()
            )));
        }
        let r = rank(&RationalMatrix::from_rows(d, columns.clone()));
        if r < k {
            return Err(Error::SingularLattice { rank: r, k });
        }
        Ok(Lattice { d, columns })
    }

    /// Builds a lattice from a `d x k` matrix given row by row.
    pub fn from_matrix_rows(d: usize, k: usize, rows: &[Point]) -> Result<Self> {
        if rows.len() != d || rows.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch(format!("lattice must be a {d}x{k} matrix")));
        }
        let columns = (0..k).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Self::new(d, columns)
    }

    /// The first `k` standard basis vectors of `R^d`.
    pub fn standard(d: usize, k: usize) -> Result<Self> {
        let columns = (0..k)
            .map(|j| {
                (0..d)
                    .map(|i| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self::new(d, columns)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Point] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[BigRational] {
        &self.columns[j]
    }

    /// `L(gamma)` as a point of `R^d`.
    pub fn apply(&self, gamma: &GainVector) -> Point {
        let mut out = vec![BigRational::zero(); self.d];
        for (c, col) in gamma.coords().iter().zip(&self.columns) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for (o, x) in out.iter_mut().zip(col) {
                *o += &c * x;
            }
        }
        out
    }

    /// The `d x k` matrix rows, for serialization.
    pub fn matrix_rows(&self) -> Vec<Point> {
        (0..self.d)
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }
}

/// Vertex id -> point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Placement(pub BTreeMap<String, Point>);

impl Placement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: impl Into<String>, p: Point) {
        self.0.insert(v.into(), p);
    }

    pub fn get(&self, v: &str) -> Option<&Point> {
        self.0.get(v)
    }

    /// Resolves the placement against the vertex order of `graph`.
    pub fn positions_for(&self, graph: &GainGraph, d: usize) -> Result<Vec<Point>> {
        if let Some(extra) = self.0.keys().find(|v| graph.vertex_index(v).is_err()) {
            return Err(Error::UnknownVertex(extra.clone()));
        }
        graph
            .vertices()
            .iter()
            .map(|v| {
                let p = self
                    .0
                    .get(v)
                    .ok_or_else(|| Error::DimensionMismatch(format!("vertex `{v}` has no position")))?;
                if p.len() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "position of `{v}` has {} coordinates, expected {d}",
                        p.len()
                    )));
                }
                Ok(p.clone())
            })
            .collect()
    }
}

/// A bar-joint gain graph, a lattice and a placement of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framework {
    graph: GainGraph,
    lattice: Lattice,
    positions: Vec<Point>,
}

impl Framework {
    pub fn new(graph: GainGraph, lattice: Lattice, placement: &Placement) -> Result<Self> {
        let positions = placement.positions_for(&graph, lattice.d())?;
        Self::from_positions(graph, lattice, positions)
    }

    /// `positions[i]` is the point of `graph.vertices()[i]`.
    pub fn from_positions(graph: GainGraph, lattice: Lattice, positions: Vec<Point>) -> Result<Self> {
        if graph.mode() != Mode::BarJoint {
            return Err(Error::WrongMode {
                expected: "bar-joint",
            });
        }
        if graph.k() != lattice.k() {
            return Err(Error::DimensionMismatch(format!(
                "graph has periodicity rank {}, lattice has {}",
                graph.k(),
                lattice.k()
            )));
        }
        if positions.len() != graph.vertex_count() || positions.iter().any(|p| p.len() != lattice.d()) {
            return Err(Error::DimensionMismatch("placement does not match graph".into()));
        }
        graph.ensure_valid()?;
        Ok(Framework {
            graph,
            lattice,
            positions,
        })
    }

    pub fn graph(&self) -> &GainGraph {
        &self.graph
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn d(&self) -> usize {
        self.lattice.d()
    }

    pub fn k(&self) -> usize {
        self.lattice.k()
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn placement(&self) -> Placement {
        Placement(
            self.graph
                .vertices()
                .iter()
                .cloned()
                .zip(self.positions.iter().cloned())
                .collect(),
        )
    }

    /// Same graph and lattice, different positions.
    pub fn with_positions(&self, positions: Vec<Point>) -> Result<Self> {
        Self::from_positions(self.graph.clone(), self.lattice.clone(), positions)
    }

    /// `p(tail) - p(head) - L(gain)` for every edge.
    fn edge_vectors(&self, positions: &[Point]) -> Vec<Point> {
        self.graph
            .edges()
            .iter()
            .map(|e| {
                let shift = self.lattice.apply(&e.gain);
                positions[e.tail]
                    .iter()
                    .zip(&positions[e.head])
                    .zip(shift)
                    .map(|((a, b), s)| a - b - s)
                    .collect()
            })
            .collect()
    }

    /// Squared edge lengths in edge order.
    pub fn edge_measurements(&self) -> Vec<BigRational> {
        measurements(&self.edge_vectors(&self.positions))
    }

    pub fn measurements_of(&self, q: &[Point]) -> Vec<BigRational> {
        measurements(&self.edge_vectors(q))
    }

    /// The Jacobian of the squared-length map, halved.
    pub fn rigidity_matrix(&self) -> RationalMatrix {
        let d = self.d();
        let cols = d * self.graph.vertex_count();
        let mut m = RationalMatrix::zeros(0, cols);
        for (e, vec) in self.graph.edges().iter().zip(self.edge_vectors(&self.positions)) {
            let mut row = vec![BigRational::zero(); cols];
            for (i, x) in vec.into_iter().enumerate() {
                row[e.head * d + i] = -x.clone();
                row[e.tail * d + i] = x;
            }
            m.push_row(row);
        }
        m
    }

    pub fn pinned_rigidity_matrix(&self, pins: &PinSpec) -> Result<RationalMatrix> {
        let d = self.d();
        let n = self.graph.vertex_count();
        if pins.d != d || pins.k != self.k() {
            return Err(Error::DimensionMismatch("pin spec dimensions differ from framework".into()));
        }
        if n < pins.vertices.len() {
            return Err(Error::TooFewVertices {
                needed: pins.vertices.len(),
                found: n,
            });
        }
        let mut m = self.rigidity_matrix();
        for (v, count) in pins.vertices.iter().zip(pins.counts()) {
            let vi = self.graph.vertex_index(v)?;
            for c in 0..count {
                let mut row = vec![BigRational::zero(); d * n];
                row[vi * d + c] = BigRational::one();
                m.push_row(row);
            }
        }
        Ok(m)
    }

    pub fn is_equivalent(&self, q: &Placement) -> Result<bool> {
        let q = q.positions_for(&self.graph, self.d())?;
        Ok(self.edge_measurements() == self.measurements_of(&q))
    }

    /// Congruence over every pair of the covering: equal squared distances
    /// for all vertex pairs and equal inner products of the differences with
    /// every lattice generator.
    pub fn is_congruent(&self, q: &Placement) -> Result<bool> {
        let q = q.positions_for(&self.graph, self.d())?;
        let p = &self.positions;
        let n = p.len();
        for u in 0..n {
            for v in u + 1..n {
                let dp = sub(&p[u], &p[v]);
                let dq = sub(&q[u], &q[v]);
                if dot(&dp, &dp) != dot(&dq, &dq) {
                    return Ok(false);
                }
                for col in self.lattice.columns() {
                    if dot(&dp, col) != dot(&dq, col) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn are_equivalent(f: &Framework, q: &Placement) -> Result<bool> {
    f.is_equivalent(q)
}

pub fn are_congruent(f: &Framework, q: &Placement) -> Result<bool> {
    f.is_congruent(q)
}

fn measurements(vectors: &[Point]) -> Vec<BigRational> {
    vectors.iter().map(|x| dot(x, x)).collect()
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Which vertex coordinates are pinned to remove the trivial motions.
///
/// The first vertex has all `d` coordinates pinned, the following ones
/// `d-k-1, d-k-2, ..., 1`, for a total of `d + C(d-k, 2)` pinned
/// coordinates on `max(d-k, 1)` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinSpec {
    d: usize,
    k: usize,
    vertices: Vec<String>,
}

impl PinSpec {
    pub fn new(d: usize, k: usize, vertices: Vec<String>) -> Result<Self> {
        if k > d {
            return Err(Error::InvalidDimensions(format!("k = {k} > d = {d}")));
        }
        let t = Self::vertex_count(d, k);
        if vertices.len() != t {
            return Err(Error::TooFewVertices {
                needed: t,
                found: vertices.len(),
            });
        }
        let mut sorted = vertices.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(Error::DimensionMismatch("pinned vertices must be distinct".into()));
        }
        Ok(PinSpec { d, k, vertices })
    }

    /// Pins the first `max(d-k, 1)` vertices of `graph`.
    pub fn first_vertices(graph: &GainGraph, d: usize) -> Result<Self> {
        let t = Self::vertex_count(d, graph.k().min(d));
        if graph.vertex_count() < t {
            return Err(Error::TooFewVertices {
                needed: t,
                found: graph.vertex_count(),
            });
        }
        Self::new(d, graph.k(), graph.vertices()[..t].to_vec())
    }

    pub fn vertex_count(d: usize, k: usize) -> usize {
        (d - k).max(1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Pinned coordinate count per pinned vertex.
    pub fn counts(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .map(|i| if i == 0 { self.d } else { self.d - self.k - i })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.counts().iter().sum()
    }
}

/// The per-trial generator: seeded by `seed`, stream selected by `trial`.
pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn sample_point(rng: &mut ChaCha8Rng, d: usize) -> Point {
    (0..d)
        .map(|_| BigRational::from_integer(BigInt::from(rng.random_range(1..=SAMPLE_MAX))))
        .collect()
}

pub(crate) fn sample_lattice(rng: &mut ChaCha8Rng, d: usize, k: usize) -> Lattice {
    loop {
        let columns = (0..k).map(|_| sample_point(rng, d)).collect();
        if let Ok(l) = Lattice::new(d, columns) {
            return l;
        }
    }
}

pub(crate) fn sample_framework(
    graph: &GainGraph,
    d: usize,
    lattice: Option<&Lattice>,
    seed: u64,
    trial: u64,
) -> Result<Framework> {
    let mut rng = trial_rng(seed, trial);
    let lattice = match lattice {
        Some(l) => {
            if l.d() != d {
                return Err(Error::DimensionMismatch(format!(
                    "lattice lives in R^{}, expected R^{d}",
                    l.d()
                )));
            }
            l.clone()
        }
        None => {
            if graph.k() > d {
                return Err(Error::InvalidDimensions(format!("k = {} > d = {d}", graph.k())));
            }
            sample_lattice(&mut rng, d, graph.k())
        }
    };
    let positions = (0..graph.vertex_count()).map(|_| sample_point(&mut rng, d)).collect();
    Framework::from_positions(graph.clone(), lattice, positions)
}

/// A framework with placement coordinates drawn uniformly from `[1, 2^30]`.
/// When no lattice is given one is sampled the same way (resampled until
/// nonsingular).
pub fn random_generic_framework(
    graph: &GainGraph,
    d: usize,
    lattice: Option<&Lattice>,
    seed: u64,
) -> Result<Framework> {
    sample_framework(graph, d, lattice, seed, 0)
}

/// Maximum rigidity-matrix rank over `trials` random frameworks.
pub fn generic_rank(
    graph: &GainGraph,
    d: usize,
    k: usize,
    lattice: Option<&Lattice>,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    check_dims(graph, d, k)?;
    let ranks: Result<Vec<usize>> = (0..trials.max(1) as u64)
        .into_par_iter()
        .map(|t| sample_framework(graph, d, lattice, seed, t).map(|f| f.rigidity_matrix().rank()))
        .collect();
    Ok(ranks?.into_iter().max().unwrap_or(0))
}

pub(crate) fn check_dims(graph: &GainGraph, d: usize, k: usize) -> Result<()> {
    if k > d {
        return Err(Error::InvalidDimensions(format!("k = {k} > d = {d}")));
    }
    if graph.k() != k {
        return Err(Error::DimensionMismatch(format!(
            "graph has periodicity rank {}, expected {k}",
            graph.k()
        )));
    }
    if graph.mode() != Mode::BarJoint {
        return Err(Error::WrongMode {
            expected: "bar-joint",
        });
    }
    graph.ensure_valid()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn pt(xs: &[i64]) -> Point {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn flip_graph() -> GainGraph {
        let mut g = GainGraph::new(2, Mode::BarJoint, ["a", "b"]);
        g.add_edge("e0", "a", "b", [0, 0]).unwrap();
        g.add_edge("e1", "a", "b", [1, 0]).unwrap();
        g
    }

    fn triangle() -> GainGraph {
        let mut g = GainGraph::new(0, Mode::BarJoint, ["a", "b", "c"]);
        g.push_edge("a", "b", []).unwrap();
        g.push_edge("b", "c", []).unwrap();
        g.push_edge("a", "c", []).unwrap();
        g
    }

    #[test]
    fn lattice_validation() {
        assert!(Lattice::standard(2, 2).is_ok());
        let singular = Lattice::new(2, vec![pt(&[1, 2]), pt(&[2, 4])]);
        assert_eq!(singular, Err(Error::SingularLattice { rank: 1, k: 2 }));
        assert!(matches!(Lattice::new(1, vec![pt(&[1]), pt(&[2])]), Err(Error::InvalidDimensions(_))));
        let l = Lattice::from_matrix_rows(2, 1, &[pt(&[3]), pt(&[4])]).unwrap();
        assert_eq!(l.apply(&GainVector::from([-2])), pt(&[-6, -8]));
        assert_eq!(l.matrix_rows(), vec![pt(&[3]), pt(&[4])]);
    }

    #[test]
    fn measurement_examples() {
        let mut g = GainGraph::new(2, Mode::BarJoint, ["a", "b"]);
        g.add_edge("e", "a", "b", [0, 0]).unwrap();
        let l = Lattice::standard(2, 2).unwrap();
        let f = Framework::from_positions(g.clone(), l.clone(), vec![pt(&[0, 0]), pt(&[3, 4])]).unwrap();
        assert_eq!(f.edge_measurements(), vec![q(25)]);

        let mut g2 = GainGraph::new(2, Mode::BarJoint, ["a", "b"]);
        g2.add_edge("e", "a", "b", [1, 0]).unwrap();
        let f = Framework::from_positions(g2, l.clone(), vec![pt(&[0, 0]), pt(&[3, 4])]).unwrap();
        assert_eq!(f.edge_measurements(), vec![q(32)]);

        let empty = GainGraph::new(2, Mode::BarJoint, ["a", "b"]);
        let f = Framework::from_positions(empty, l, vec![pt(&[0, 0]), pt(&[3, 4])]).unwrap();
        assert!(f.edge_measurements().is_empty());
    }

    #[test]
    fn rigidity_matrix_examples() {
        let mut g = GainGraph::new(0, Mode::BarJoint, ["a", "b"]);
        g.add_edge("e", "a", "b", []).unwrap();
        let f = Framework::from_positions(g, Lattice::standard(2, 0).unwrap(), vec![pt(&[0, 0]), pt(&[1, 0])])
            .unwrap();
        assert_eq!(f.rigidity_matrix(), RationalMatrix::from_i64_rows(4, &[vec![-1, 0, 1, 0]]));

        for seed in 0..3 {
            let f = random_generic_framework(&flip_graph(), 2, None, seed).unwrap();
            assert_eq!(f.rigidity_matrix().rank(), 2);
        }

        let empty = GainGraph::new(1, Mode::BarJoint, ["a", "b", "c"]);
        let f = random_generic_framework(&empty, 2, None, 1).unwrap();
        let m = f.rigidity_matrix();
        assert_eq!((m.rows(), m.cols(), m.rank()), (0, 6, 0));
    }

    #[test]
    fn pin_counts() {
        let p = PinSpec::new(2, 2, vec!["a".into()]).unwrap();
        assert_eq!((p.counts(), p.total()), (vec![2], 2));
        let p = PinSpec::new(3, 1, vec!["a".into(), "b".into()]).unwrap();
        assert_eq!((p.counts(), p.total()), (vec![3, 1], 4));
        let p = PinSpec::new(3, 0, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(p.counts(), vec![3, 2, 1]);
        assert!(PinSpec::new(3, 1, vec!["a".into(), "a".into()]).is_err());

        let tiny = GainGraph::new(0, Mode::BarJoint, ["a", "b"]);
        assert_eq!(
            PinSpec::first_vertices(&tiny, 3),
            Err(Error::TooFewVertices { needed: 3, found: 2 })
        );
    }

    #[test]
    fn pinned_matrix_adds_unit_rows() {
        let f = random_generic_framework(&flip_graph(), 2, None, 4).unwrap();
        let pins = PinSpec::first_vertices(f.graph(), 2).unwrap();
        let m = f.pinned_rigidity_matrix(&pins).unwrap();
        assert_eq!(m.rows(), 2 + 2);
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_generic_framework(&flip_graph(), 2, None, 11).unwrap();
        let b = random_generic_framework(&flip_graph(), 2, None, 11).unwrap();
        assert_eq!(a, b);
        let c = random_generic_framework(&flip_graph(), 2, None, 12).unwrap();
        assert_ne!(a, c);

        let g = GainGraph::new(0, Mode::BarJoint, ["x"]);
        let f = random_generic_framework(&g, 3, None, 0).unwrap();
        assert_eq!(f.lattice().k(), 0);
        assert_eq!(f.positions()[0].len(), 3);
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(&triangle(), 2, 0, None, 3, 0).unwrap(), 3);
        assert_eq!(generic_rank(&flip_graph(), 2, 2, None, 3, 0).unwrap(), 2);
        let empty = GainGraph::new(1, Mode::BarJoint, ["a", "b"]);
        assert_eq!(generic_rank(&empty, 2, 1, None, 3, 0).unwrap(), 0);
        assert!(generic_rank(&flip_graph(), 2, 1, None, 3, 0).is_err());
    }

    #[test]
    fn equivalence_and_congruence_examples() {
        let l = Lattice::standard(2, 2).unwrap();
        let p = vec![pt(&[3, 4]), pt(&[7, 6])];
        let f = Framework::from_positions(flip_graph(), l, p.clone()).unwrap();
        assert!(f.is_equivalent(&f.placement()).unwrap());

        let moved = f.with_positions(p.iter().map(|x| sub(x, &pt(&[-5, 2]))).collect()).unwrap();
        assert!(f.is_equivalent(&moved.placement()).unwrap());
        assert!(f.is_congruent(&moved.placement()).unwrap());

        // Reflect b across the horizontal line through a.
        let flipped = f.with_positions(vec![pt(&[3, 4]), pt(&[7, 2])]).unwrap();
        assert!(f.is_equivalent(&flipped.placement()).unwrap());
        assert!(!f.is_congruent(&flipped.placement()).unwrap());

        // k = 0: a quarter turn keeps every distance.
        let l0 = Lattice::standard(2, 0).unwrap();
        let f = Framework::from_positions(triangle(), l0, vec![pt(&[0, 0]), pt(&[2, 1]), pt(&[5, 3])]).unwrap();
        let rotated = f.with_positions(vec![pt(&[0, 0]), pt(&[-1, 2]), pt(&[-3, 5])]).unwrap();
        assert!(f.is_congruent(&rotated.placement()).unwrap());
    }

    #[test]
    fn placement_errors() {
        let f = random_generic_framework(&flip_graph(), 2, None, 0).unwrap();
        let mut q = f.placement();
        q.insert("b", pt(&[1, 2, 3]));
        assert!(matches!(f.is_equivalent(&q), Err(Error::DimensionMismatch(_))));
        let mut q = f.placement();
        q.insert("zz", pt(&[1, 2]));
        assert!(matches!(f.is_congruent(&q), Err(Error::UnknownVertex(_))));
    }

    fn arb_case() -> impl Strategy<Value = (usize, usize, usize, u64)> {
        (1usize..4)
            .prop_flat_map(|d| (Just(d), 0..=d))
            .prop_flat_map(|(d, k)| (Just(d), Just(k), (d - k).max(1)..7, any::<u64>()))
    }

    fn random_graph(k: usize, n: usize, seed: u64) -> GainGraph {
        let mut rng = trial_rng(seed, 99);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut g = GainGraph::new(k, Mode::BarJoint, names.clone());
        for _ in 0..rng.random_range(0..3 * n) {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            let gain: Vec<i64> = (0..k).map(|_| rng.random_range(-1..=1)).collect();
            if a == b {
                continue;
            }
            let mut t = g.clone();
            t.push_edge(&names[a], &names[b], gain).unwrap();
            if t.validate().is_ok() {
                g = t;
            }
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn pinned_rank_identity((d, k, n, seed) in arb_case()) {
            let g = random_graph(k, n, seed);
            let f = random_generic_framework(&g, d, None, seed).unwrap();
            let pins = PinSpec::first_vertices(&g, d).unwrap();
            let pinned = f.pinned_rigidity_matrix(&pins).unwrap().rank();
            prop_assert_eq!(pinned, f.rigidity_matrix().rank() + d + binom2(d - k));
        }

        #[test]
        fn measurements_translation_invariant((d, k, n, seed) in arb_case(), t in proptest::collection::vec(-9i64..9, 3)) {
            let g = random_graph(k, n, seed);
            let f = random_generic_framework(&g, d, None, seed).unwrap();
            let shift = pt(&t[..d]);
            let moved: Vec<Point> = f.positions().iter().map(|p| sub(p, &shift)).collect();
            prop_assert_eq!(f.edge_measurements(), f.measurements_of(&moved));
        }

        #[test]
        fn generic_rank_bounds((d, k, n, seed) in arb_case()) {
            let g = random_graph(k, n, seed);
            let r = generic_rank(&g, d, k, None, 2, seed).unwrap();
            prop_assert!(r <= g.edge_count());
            if n > d {
                prop_assert!(r <= d * n - trivial_motions(d, k));
            }
            if g.edge_count() > 0 {
                let id = g.edges()[0].id.clone();
                let sw = g.switch(g.vertex_name(0), &GainVector(vec![1; k])).unwrap();
                prop_assert_eq!(generic_rank(&sw, d, k, None, 2, seed).unwrap(), r);
                let rev = g.reverse_edge(&id).unwrap();
                prop_assert_eq!(generic_rank(&rev, d, k, None, 2, seed).unwrap(), r);
                let smaller = g.delete_edge(&id).unwrap();
                prop_assert!(generic_rank(&smaller, d, k, None, 2, seed).unwrap() <= r);
            }
        }
    }
}
