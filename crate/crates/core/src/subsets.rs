//! Binomial coefficients and the colex order on fixed-size subsets of `[n]`.
//!
//! Colex order compares subsets by their largest differing element, so the
//! `ℓ`-subsets of `[n]` are a prefix of the `ℓ`-subsets of `[n+1]`.

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k) as f64
}

/// Rank of a sorted subset in colex order.
pub fn colex_rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1) as usize)
        .sum()
}

/// Inverse of [`colex_rank`] for subsets of size `k`.
pub fn colex_unrank(mut rank: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) as usize <= rank {
            c += 1;
        }
        rank -= binomial(c, i) as usize;
        out[i - 1] = c;
    }
    out
}

/// All `k`-subsets of `[n]` in colex order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let total = binomial(n, k) as usize;
    (0..total).map(|r| colex_unrank(r, k)).collect()
}

/// All `k`-subsets of `items` in lexicographic order of positions.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of bits in one draw from `{0, …, m-1}`.
pub fn bits_for(m: usize) -> u32 {
    if m <= 1 {
        0
    } else {
        usize::BITS - (m - 1).leading_zeros()
    }
}
