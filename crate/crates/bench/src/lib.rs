//! Seeded fixtures for the benchmarks.

use perigid_core::{GainGraph, Mode, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random integer matrix with entries in `[-bound, bound]`.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect();
    RationalMatrix::from_i64_rows(cols, &data)
}

/// Cycle on `n` vertices plus `chords` random chords, gains in `[-1, 1]^k`.
pub fn periodic_graph(n: usize, k: usize, chords: usize, seed: u64) -> GainGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut g = GainGraph::new(k, Mode::BarJoint, names.clone());
    let gain = |rng: &mut ChaCha8Rng| (0..k).map(|_| rng.random_range(-1..=1)).collect::<Vec<i64>>();
    for i in 0..n {
        let gv = gain(&mut rng);
        g.push_edge(&names[i], &names[(i + 1) % n], gv).unwrap();
    }
    let mut added = 0;
    while added < chords {
        let (t, h) = (rng.random_range(0..n), rng.random_range(0..n));
        if t == h {
            continue;
        }
        let mut c = g.clone();
        c.push_edge(&names[t], &names[h], gain(&mut rng)).unwrap();
        if c.validate().is_ok() {
            g = c;
            added += 1;
        }
    }
    g
}

/// Body-bar multigraph on `bodies` bodies with `bars` bars, gains in `[-2, 2]^k`.
pub fn body_bar_graph(bodies: usize, bars: usize, k: usize, seed: u64) -> GainGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..bodies).map(|i| format!("B{i}")).collect();
    let mut h = GainGraph::new(k, Mode::BodyBar, names.clone());
    while h.edge_count() < bars {
        let (t, u) = (rng.random_range(0..bodies), rng.random_range(0..bodies));
        let gain: Vec<i64> = (0..k).map(|_| rng.random_range(-2..=2)).collect();
        let mut c = h.clone();
        c.push_edge(&names[t], &names[u], gain).unwrap();
        if c.validate().is_ok() {
            h = c;
        }
    }
    h
}
