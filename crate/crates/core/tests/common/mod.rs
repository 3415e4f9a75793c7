#![allow(dead_code)]

use hilbhodge::coefficient::Coefficient;
use hilbhodge::engine::BigradedDims;
use hilbhodge::series::{Monomial, TriSeries};
use hilbhodge::surface::{SurfaceDiamond, TwistedTable};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_diamond(rng: &mut ChaCha8Rng, max_entry: u64) -> SurfaceDiamond {
    let mut h = [[0u64; 3]; 3];
    for row in h.iter_mut() {
        for v in row.iter_mut() {
            *v = rng.gen_range(0..=max_entry);
        }
    }
    SurfaceDiamond::new(h)
}

/// Independent diamonds for `k = 0..=max_power`.
pub fn random_table(rng: &mut ChaCha8Rng, max_entry: u64, max_power: u32) -> TwistedTable {
    TwistedTable::new((0..=max_power).map(|_| random_diamond(rng, max_entry)).collect())
}

/// Bigraded dims in `[0,2]^2` with total dimension at most `max_total`.
pub fn random_small_dims(rng: &mut ChaCha8Rng, max_total: u64) -> BigradedDims {
    let total = rng.gen_range(0..=max_total);
    let mut v = BigradedDims::new();
    for _ in 0..total {
        let key = (rng.gen_range(0..3u32), rng.gen_range(0..3u32));
        *v.entry(key).or_default() += 1;
    }
    v
}

pub fn random_series(rng: &mut ChaCha8Rng, trunc: u32, terms: usize) -> TriSeries {
    let mut out = Vec::new();
    for _ in 0..terms {
        let t = rng.gen_range(0..=trunc);
        let m = Monomial::new(rng.gen_range(0..=2 * t + 1), rng.gen_range(0..=2 * t + 1), t);
        let c = if rng.gen_bool(0.2) {
            Coefficient::ratio(rng.gen_range(-50..=50), rng.gen_range(1..=7))
        } else if rng.gen_bool(0.05) {
            Coefficient::from_i64(i64::MAX - rng.gen_range(0..3))
        } else {
            Coefficient::from_i64(rng.gen_range(-9..=9))
        };
        out.push((m, c));
    }
    TriSeries::from_terms(out, trunc)
}

/// Rows of a rendered diamond, each row as its entries left to right.
pub fn diamond_rows(text: &str) -> Vec<Vec<u64>> {
    text.lines()
        .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect()
}

pub fn hopf_hilb2_rows() -> Vec<Vec<u64>> {
    vec![
        vec![1],
        vec![1, 0],
        vec![0, 1, 0],
        vec![0, 1, 1, 0],
        vec![0, 0, 2, 0, 0],
        vec![0, 1, 1, 0],
        vec![0, 1, 0],
        vec![0, 1],
        vec![1],
    ]
}

pub fn hopf_hilb3_rows() -> Vec<Vec<u64>> {
    vec![
        vec![1],
        vec![1, 0],
        vec![0, 1, 0],
        vec![0, 2, 1, 0],
        vec![0, 1, 3, 0, 0],
        vec![0, 0, 2, 2, 0, 0],
        vec![0, 0, 0, 4, 0, 0, 0],
        vec![0, 0, 2, 2, 0, 0],
        vec![0, 0, 3, 1, 0],
        vec![0, 1, 2, 0],
        vec![0, 1, 0],
        vec![0, 1],
        vec![1],
    ]
}
