//! Seeded low-discrepancy points (Halton with a random Cranley–Patterson shift).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u32; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311,
];

fn nth_prime(i: usize) -> u64 {
    if i < PRIMES.len() {
        return PRIMES[i] as u64;
    }
    let mut count = PRIMES.len();
    let mut candidate = *PRIMES.last().unwrap() as u64 + 2;
    loop {
        if (2..).take_while(|d| d * d <= candidate).all(|d| !candidate.is_multiple_of(d)) {
            if count == i {
                return candidate;
            }
            count += 1;
        }
        candidate += 2;
    }
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * f;
        index /= base;
        f *= inv;
    }
    out
}

/// `count` points in `[0, 1)^dim`. The same `(dim, count, seed)` always yields
/// the same points.
pub fn unit_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    let bases: Vec<u64> = (0..dim).map(nth_prime).collect();
    (0..count)
        .map(|k| {
            bases
                .iter()
                .zip(&shift)
                .map(|(&b, &s)| (radical_inverse(k as u64 + 1, b) + s).fract())
                .collect()
        })
        .collect()
}

/// Points scaled into the box `[lower, upper]`.
pub fn box_points(lower: &[f64], upper: &[f64], count: usize, seed: u64) -> Vec<Vec<f64>> {
    unit_points(lower.len(), count, seed)
        .into_iter()
        .map(|p| {
            p.iter()
                .zip(lower.iter().zip(upper))
                .map(|(s, (l, u))| l + s * (u - l))
                .collect()
        })
        .collect()
}
