#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use perigid_core::{GainGraph, Lattice, Mode, Placement, Point};

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pt(xs: &[(i64, i64)]) -> Point {
    xs.iter().map(|&(n, d)| r(n, d)).collect()
}

pub fn flip_graph() -> GainGraph {
    let mut g = GainGraph::new(2, Mode::BarJoint, ["a", "b"]);
    g.add_edge("e0", "a", "b", [0, 0]).unwrap();
    g.add_edge("e1", "a", "b", [1, 0]).unwrap();
    g
}

pub fn braced_flip_graph() -> GainGraph {
    let mut g = flip_graph();
    g.add_edge("e2", "a", "b", [0, 1]).unwrap();
    g
}

pub fn flip_p() -> Placement {
    let mut p = Placement::new();
    p.insert("a", pt(&[(3, 10), (2, 5)]));
    p.insert("b", pt(&[(7, 10), (3, 5)]));
    p
}

/// `b` reflected across the horizontal line through `a`.
pub fn flip_q() -> Placement {
    let mut q = Placement::new();
    q.insert("a", pt(&[(3, 10), (2, 5)]));
    q.insert("b", pt(&[(7, 10), (1, 5)]));
    q
}

pub fn unit_lattice(d: usize, k: usize) -> Lattice {
    Lattice::standard(d, k).unwrap()
}

/// Finite (k = 0) graph on `v0..v{n-1}`.
pub fn finite(n: usize, edges: &[(usize, usize)]) -> GainGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = GainGraph::new(0, Mode::BarJoint, names.clone());
    for &(u, v) in edges {
        g.push_edge(&names[u], &names[v], Vec::<i64>::new()).unwrap();
    }
    g
}

pub fn graph(k: usize, n: usize, edges: &[(usize, usize, &[i64])]) -> GainGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = GainGraph::new(k, Mode::BarJoint, names.clone());
    for &(u, v, gain) in edges {
        g.push_edge(&names[u], &names[v], gain.to_vec()).unwrap();
    }
    g
}

pub struct Instance {
    pub name: &'static str,
    pub d: usize,
    pub graph: GainGraph,
}

pub fn corpus() -> Vec<Instance> {
    let k4: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    vec![
        Instance { name: "flip", d: 2, graph: flip_graph() },
        Instance { name: "braced-flip", d: 2, graph: braced_flip_graph() },
        Instance { name: "triangle", d: 2, graph: finite(3, &[(0, 1), (1, 2), (0, 2)]) },
        Instance { name: "four-cycle", d: 2, graph: finite(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]) },
        Instance { name: "k4", d: 2, graph: finite(4, &k4) },
        Instance { name: "k4-minus-edge", d: 2, graph: finite(4, &k4[1..]) },
        Instance {
            name: "strip-triangle",
            d: 2,
            graph: graph(1, 3, &[(0, 1, &[0]), (1, 2, &[0]), (0, 2, &[0]), (0, 1, &[1]), (1, 2, &[1])]),
        },
        Instance { name: "rod", d: 3, graph: graph(1, 2, &[(0, 1, &[0]), (0, 1, &[1])]) },
        Instance {
            name: "layer",
            d: 3,
            graph: graph(2, 3, &[(0, 1, &[0, 0]), (1, 2, &[1, 0]), (2, 0, &[0, 1]), (0, 1, &[1, 1]), (1, 2, &[0, -1])]),
        },
        Instance { name: "line", d: 1, graph: graph(1, 2, &[(0, 1, &[0]), (0, 1, &[1])]) },
    ]
}

/// Textbook Gauss-Jordan rank over the rationals, independent of the
/// fraction-free routine in the library.
pub fn naive_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let prow: Vec<BigRational> = m[rank].iter().map(|x| x / &pivot).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

pub fn matrix_rows(m: &perigid_core::RationalMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}
