//! The explicit motion in `R^{2d}` between two equivalent placements.
//!
//! For placements `p`, `q` on the same lattice every orbit point moves along
//!
//! ```text
//! x_i(t) = (a_i + cos(pi t) b_i,  sin(pi t) b_i),   a_i = (p_i + q_i)/2,  b_i = (p_i - q_i)/2
//! ```
//!
//! and the lattice is lifted to `gamma -> (L(gamma), 0)`. For two orbit
//! points at relative shift `gamma` the squared distance is
//!
//! ```text
//! |da - L(gamma)|^2 + |db|^2 + 2 cos(pi t) <da - L(gamma), db>
//! ```
//!
//! with `da = a_i - a_j`, `db = b_i - b_j`. It is affine in `cos(pi t)`, so
//! it is monotone on `[0, 1]` and constant exactly when the inner product
//! (the witness) vanishes. Certificates are built from these exact witnesses;
//! trigonometric functions only appear in the presentation sampler.

use crate::error::{Error, Result};
use crate::framework::{sub, Framework, Lattice, Placement, Point};
use crate::gain_graph::{shift_box, GainVector};
use crate::linalg::{dot, format_rational, sign};
use crate::rigidity::saturated_rank;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::io::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexPath {
    vertices: Vec<String>,
    lattice: Lattice,
    midpoints: Vec<Point>,
    half_differences: Vec<Point>,
}

impl FlexPath {
    pub fn d(&self) -> usize {
        self.lattice.d()
    }

    pub fn k(&self) -> usize {
        self.lattice.k()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn midpoints(&self) -> &[Point] {
        &self.midpoints
    }

    pub fn half_differences(&self) -> &[Point] {
        &self.half_differences
    }

    /// `(L(gamma), 0^d)`.
    pub fn lifted_shift(&self, gamma: &GainVector) -> Point {
        let mut v = self.lattice.apply(gamma);
        v.extend(std::iter::repeat_n(BigRational::zero(), self.d()));
        v
    }

    /// The witness `<a_i - a_j - L(gamma), b_i - b_j>` for the pair
    /// `(i, gamma j)`; its sign gives the monotonicity direction.
    pub fn pair_witness(&self, i: usize, j: usize, gamma: &GainVector) -> BigRational {
        let shift = self.lattice.apply(gamma);
        let da = sub(&sub(&self.midpoints[i], &self.midpoints[j]), &shift);
        let db = sub(&self.half_differences[i], &self.half_differences[j]);
        dot(&da, &db)
    }

    /// Floating-point position of orbit point `(i, gamma)` at time `t`.
    pub fn position(&self, i: usize, gamma: &GainVector, t: f64) -> Vec<f64> {
        let (c, s) = ((std::f64::consts::PI * t).cos(), (std::f64::consts::PI * t).sin());
        let shift = self.lattice.apply(gamma);
        let a = &self.midpoints[i];
        let b = &self.half_differences[i];
        let lower = a
            .iter()
            .zip(&shift)
            .zip(b)
            .map(|((a, l), b)| to_f64(a) + to_f64(l) + c * to_f64(b));
        let upper = b.iter().map(|b| s * to_f64(b));
        lower.chain(upper).collect()
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn build_flex_path(f: &Framework, q: &Placement) -> Result<FlexPath> {
    let q = q.positions_for(f.graph(), f.d())?;
    let two = BigRational::from_integer(2.into());
    let midpoints = f
        .positions()
        .iter()
        .zip(&q)
        .map(|(p, q)| p.iter().zip(q).map(|(x, y)| (x + y) / &two).collect())
        .collect();
    let half_differences = f
        .positions()
        .iter()
        .zip(&q)
        .map(|(p, q)| p.iter().zip(q).map(|(x, y)| (x - y) / &two).collect())
        .collect();
    Ok(FlexPath {
        vertices: f.graph().vertices().to_vec(),
        lattice: f.lattice().clone(),
        midpoints,
        half_differences,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
}

impl Monotonicity {
    /// The squared distance is `c + 2 cos(pi t) w`; `cos(pi t)` decreases on
    /// `[0, 1]`.
    pub fn from_witness(w: &BigRational) -> Self {
        match sign(w) {
            Ordering::Equal => Monotonicity::Constant,
            Ordering::Greater => Monotonicity::Decreasing,
            Ordering::Less => Monotonicity::Increasing,
        }
    }
}

fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub edge: String,
    #[serde(serialize_with = "ser_rational")]
    pub witness: BigRational,
    pub preserved: bool,
    pub direction: Monotonicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub u: String,
    pub v: String,
    pub shift: GainVector,
    #[serde(serialize_with = "ser_rational")]
    pub witness: BigRational,
    pub direction: Monotonicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCertificate {
    /// `a + b = p` and `a - b = q` exactly at every vertex.
    pub endpoints_exact: bool,
    /// Orbit paths are lattice translates of each other.
    pub periodicity_exact: bool,
    /// Every edge keeps its length along the whole path.
    pub lengths_preserved: bool,
    pub edges: Vec<EdgeWitness>,
    /// Pairs `(u, v, 0)` and `(u, v, e_j)` for `u < v`: all constant iff
    /// the placements are congruent.
    pub pairs: Vec<PairWitness>,
    /// Some certified pair changes its distance.
    pub flexibility: bool,
}

pub fn verify_path(path: &FlexPath, f: &Framework, q: &Placement) -> Result<PathCertificate> {
    if path.vertices() != f.graph().vertices() || path.lattice() != f.lattice() {
        return Err(Error::DimensionMismatch("path was not built from this framework".into()));
    }
    let q = q.positions_for(f.graph(), f.d())?;
    let p = f.positions();
    let n = p.len();

    let mut endpoints_exact = true;
    for i in 0..n {
        let a = &path.midpoints[i];
        let b = &path.half_differences[i];
        let at_zero: Point = a.iter().zip(b).map(|(a, b)| a + b).collect();
        let at_one: Point = a.iter().zip(b).map(|(a, b)| a - b).collect();
        endpoints_exact &= at_zero == p[i] && at_one == q[i];
    }

    // The orbit of i under gamma has midpoint a_i + L(gamma) and the same
    // half-difference; check this against the shifted endpoints directly.
    let mut periodicity_exact = true;
    let two = BigRational::from_integer(2.into());
    for gamma in shift_box(path.k(), 1) {
        let shift = path.lattice.apply(&gamma);
        let lifted = path.lifted_shift(&gamma);
        periodicity_exact &= lifted[..path.d()] == shift[..] && lifted[path.d()..].iter().all(Zero::is_zero);
        for i in 0..n {
            let ps: Point = p[i].iter().zip(&shift).map(|(x, l)| x + l).collect();
            let qs: Point = q[i].iter().zip(&shift).map(|(x, l)| x + l).collect();
            let mid: Point = ps.iter().zip(&qs).map(|(x, y)| (x + y) / &two).collect();
            let half: Point = ps.iter().zip(&qs).map(|(x, y)| (x - y) / &two).collect();
            let expected_mid: Point = path.midpoints[i].iter().zip(&shift).map(|(a, l)| a + l).collect();
            periodicity_exact &= mid == expected_mid && half == path.half_differences[i];
        }
    }

    let edges: Vec<EdgeWitness> = f
        .graph()
        .edges()
        .iter()
        .map(|e| {
            let w = path.pair_witness(e.tail, e.head, &e.gain);
            EdgeWitness {
                edge: e.id.clone(),
                preserved: w.is_zero(),
                direction: Monotonicity::from_witness(&w),
                witness: w,
            }
        })
        .collect();

    let mut shifts = vec![GainVector::zero(path.k())];
    shifts.extend((0..path.k()).map(|j| GainVector::unit(path.k(), j)));
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for s in &shifts {
                let w = path.pair_witness(u, v, s);
                pairs.push(PairWitness {
                    u: path.vertices[u].clone(),
                    v: path.vertices[v].clone(),
                    shift: s.clone(),
                    direction: Monotonicity::from_witness(&w),
                    witness: w,
                });
            }
        }
    }

    Ok(PathCertificate {
        endpoints_exact,
        periodicity_exact,
        lengths_preserved: edges.iter().all(|e| e.preserved),
        flexibility: pairs.iter().any(|p| p.direction != Monotonicity::Constant),
        edges,
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub vertex: String,
    pub shift: GainVector,
    pub coords: Vec<f64>,
}

/// Sampled positions of covering-window orbit points. Presentation only.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub dim: usize,
    pub rows: Vec<TrajectoryRow>,
}

impl Trajectory {
    /// Header `t,vertex,shift,x1,...,x2d`; shift coordinates joined by `;`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string(), "vertex".into(), "shift".into()];
        header.extend((1..=self.dim).map(|i| format!("x{i}")));
        w.write_record(&header)?;
        for row in &self.rows {
            let shift: Vec<String> = row.shift.coords().iter().map(|c| c.to_string()).collect();
            let mut rec = vec![format!("{}", row.t), row.vertex.clone(), shift.join(";")];
            rec.extend(row.coords.iter().map(|x| format!("{x:.12}")));
            w.write_record(&rec)?;
        }
        w.flush()
    }
}

pub fn sample_path(path: &FlexPath, samples: usize, window: u32) -> Result<Trajectory> {
    if samples < 2 {
        return Err(Error::Hypothesis("at least two samples are needed".into()));
    }
    let shifts = shift_box(path.k(), window as i64);
    let mut rows = Vec::new();
    for s in 0..samples {
        let t = s as f64 / (samples - 1) as f64;
        for (i, v) in path.vertices.iter().enumerate() {
            for gamma in &shifts {
                rows.push(TrajectoryRow {
                    t,
                    vertex: v.clone(),
                    shift: gamma.clone(),
                    coords: path.position(i, gamma, t),
                });
            }
        }
    }
    Ok(Trajectory {
        dim: 2 * path.d(),
        rows,
    })
}

/// Rigidity of a framework with at most `d - k + 1` vertices, which then
/// also gives global rigidity.
///
/// Rigidity is certified infinitesimally at the framework's own placement:
/// its rigidity matrix must reach the rank of the complete gain graph on
/// the same vertices (or `d|V| - d` when `k = d`).
pub fn small_graph_global_check(f: &Framework) -> Result<bool> {
    let (n, d, k) = (f.graph().vertex_count(), f.d(), f.k());
    if n > d - k + 1 {
        return Err(Error::Hypothesis(format!(
            "{n} vertices exceed d - k + 1 = {}",
            d - k + 1
        )));
    }
    let achieved = f.rigidity_matrix().rank();
    let target = if k == d {
        d * n - d
    } else {
        saturated_rank(f.graph().vertices(), f.lattice(), f.positions())?
    };
    Ok(achieved == target)
}
