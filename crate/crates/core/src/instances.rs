//! Seeded generators for random test instances.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::error::Result;
use crate::expanders::{self, LabelledRegularGraph};
use crate::models::IsingInstance;

/// Random partite complex: `n` sides of 2 or 3 labels each, a random subset
/// of the product as facets (keeping every label in use), random weights.
pub fn random_partite_complex(n: usize, max_facets: usize, seed: u64) -> Result<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=3)).collect();
    let total: usize = sizes.iter().product();
    let mut all: Vec<Vec<usize>> = (0..total)
        .map(|mut i| {
            sizes
                .iter()
                .map(|&s| {
                    let c = i % s;
                    i /= s;
                    c
                })
                .collect()
        })
        .collect();
    all.shuffle(&mut rng);
    let keep = rng
        .gen_range((total / 2).max(1)..=total)
        .min(max_facets.max(1));
    let mut chosen: Vec<Vec<usize>> = all[..keep].to_vec();
    // Make sure every label on every side is used by some facet.
    for (side, &s) in sizes.iter().enumerate() {
        for label in 0..s {
            if !chosen.iter().any(|f| f[side] == label) {
                let f = all
                    .iter()
                    .find(|f| f[side] == label)
                    .expect("label occurs")
                    .clone();
                chosen.push(f);
            }
        }
    }
    let facets: Vec<(Vec<String>, f64)> = chosen
        .into_iter()
        .map(|f| {
            let w = rng.gen_range(0.2..2.0);
            (f.iter().map(|c| c.to_string()).collect(), w)
        })
        .collect();
    Complex::from_labels(&facets, true)
}

/// A graph on `m` vertices drawn from a rotating mix of builtins and random
/// regular graphs, including bipartite ones.
pub fn random_graph(m: usize, seed: u64) -> Result<LabelledRegularGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if m == 1 {
        return expanders::self_loops(1);
    }
    match seed % 6 {
        0 => expanders::cycle(m),
        1 => expanders::complete(m),
        2 => expanders::self_loops(m),
        3 => expanders::clique_loops(m),
        _ => {
            let mut k = rng.gen_range(2..=4);
            if k % 2 == 1 && m % 2 == 1 {
                k += 1;
            }
            expanders::random_regular(m, k, rng.gen())
        }
    }
}

/// Ising model on `n` spins with PSD `J` of operator norm `norm` and fields
/// of size at most `h_max`.
pub fn random_ising(n: usize, norm: f64, h_max: f64, seed: u64) -> IsingInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let mut j = &a * a.transpose();
    let top = j.clone().symmetric_eigen().eigenvalues.max();
    if norm == 0.0 || top <= 0.0 {
        j.fill(0.0);
    } else {
        j *= norm / top;
    }
    let j = (&j + j.transpose()) * 0.5;
    IsingInstance {
        j: (0..n)
            .map(|r| (0..n).map(|c| j[(r, c)]).collect())
            .collect(),
        h: (0..n).map(|_| rng.gen_range(-h_max..=h_max)).collect(),
    }
}
