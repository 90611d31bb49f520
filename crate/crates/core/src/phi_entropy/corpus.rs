use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of random functions in every corpus.
pub const RANDOM_FUNCTIONS: usize = 1000;

/// Above this dimension only a seeded sample of two-point perturbations is used.
const ALL_PAIRS_LIMIT: usize = 48;
const SAMPLED_PAIRS: usize = 1024;

/// Non-negative test functions on `dim` points: the constant, every
/// indicator, two-point perturbations `1 + (e_i − e_j)/2`, and seeded
/// random vectors drawn from a few shapes (uniform, exponential, sparse,
/// heavy-tailed).
pub fn test_functions(dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0; dim]];
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        out.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = |i: usize, j: usize| {
        let mut f = vec![1.0; dim];
        f[i] += 0.5;
        f[j] -= 0.5;
        f
    };
    if dim <= ALL_PAIRS_LIMIT {
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    out.push(pair(i, j));
                }
            }
        }
    } else {
        for _ in 0..SAMPLED_PAIRS {
            let i = rng.gen_range(0..dim);
            let j = (i + rng.gen_range(1..dim)) % dim;
            out.push(pair(i, j));
        }
    }
    for r in 0..RANDOM_FUNCTIONS {
        let f = (0..dim)
            .map(|_| {
                let u: f64 = rng.gen();
                match r % 4 {
                    0 => u,
                    1 => -(1.0 - u).ln(),
                    2 => {
                        if rng.gen_bool(0.2) {
                            u
                        } else {
                            0.0
                        }
                    }
                    _ => 1.0 / (1.0 - 0.999 * u),
                }
            })
            .collect();
        out.push(f);
    }
    out
}
