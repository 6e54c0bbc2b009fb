//! Hand-rolled reference computations shared by the integration tests. Only
//! complex arithmetic is borrowed from the crate under test.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub const D: f64 = 1e-4;
pub const LAMBDA: f64 = 7.02e-7;
pub const F: f64 = 1.0;
pub const L: f64 = 0.02;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Bin centres written out directly.
pub fn centres(n_bins: usize) -> Vec<f64> {
    (0..n_bins).map(|i| -L / 2.0 + (i as f64 + 0.5) * L / n_bins as f64).collect()
}

/// Signal amplitude on slit 0 (A) or 1 (B) for a uniform envelope.
pub fn psi(slit: usize, x: f64, n_bins: usize) -> Complex64 {
    let phi = 2.0 * PI * x * D / (LAMBDA * F);
    let sign = if slit == 0 { 1.0 } else { -1.0 };
    Complex64::from_polar((1.0 / n_bins as f64).sqrt(), sign * phi)
}

/// 4x2 isometry for one idler arm: rows D1..D4, columns path A, path B.
pub fn arm_matrix(p: f64, present: bool, alpha: Complex64, beta: Complex64) -> [[Complex64; 2]; 4] {
    let (a, b) = if present { (alpha, beta) } else { (c(1.0, 0.0), c(0.0, 0.0)) };
    let t = (1.0 - p).sqrt();
    let r = c(p.sqrt(), 0.0);
    let z = c(0.0, 0.0);
    [
        [a * t, -b.conj() * t],
        [b * t, a.conj() * t],
        [r, z],
        [z, r],
    ]
}

/// `|Psi|^2` over (bin, j, k) from the full tensor contraction of the
/// three-photon path state with the signal map and both idler isometries.
#[allow(clippy::needless_range_loop)]
pub fn tensor_table(
    n_bins: usize,
    babu: [[Complex64; 2]; 4],
    alisha: [[Complex64; 2]; 4],
) -> Vec<[[f64; 4]; 4]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut ghz = [[[c(0.0, 0.0); 2]; 2]; 2];
    ghz[0][0][0] = c(h, 0.0);
    ghz[1][1][1] = c(h, 0.0);
    centres(n_bins)
        .into_iter()
        .map(|x| {
            let mut out = [[0.0; 4]; 4];
            for (j, row) in out.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    let mut amp = c(0.0, 0.0);
                    for s in 0..2 {
                        for b in 0..2 {
                            for a in 0..2 {
                                amp += ghz[s][b][a] * psi(s, x, n_bins) * babu[j][b] * alisha[k][a];
                            }
                        }
                    }
                    *cell = amp.norm_sqr();
                }
            }
            out
        })
        .collect()
}

/// Same for the two-photon entangled state with one idler.
pub fn tensor_table_single(n_bins: usize, babu: [[Complex64; 2]; 4]) -> Vec<[f64; 4]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    centres(n_bins)
        .into_iter()
        .map(|x| {
            let mut out = [0.0; 4];
            for (j, cell) in out.iter_mut().enumerate() {
                let amp = (psi(0, x, n_bins) * babu[j][0] + psi(1, x, n_bins) * babu[j][1]) * h;
                *cell = amp.norm_sqr();
            }
            out
        })
        .collect()
}

/// Pearson chi-square of `observed` against `probs * n`, pooling every cell
/// whose expectation is below 5 into one. Returns `(statistic, dof)`.
pub fn pooled_chi_square(observed: &[u64], probs: &[f64]) -> (f64, usize) {
    let n: u64 = observed.iter().sum();
    let n = n as f64;
    let (mut stat, mut cells) = (0.0, 0usize);
    let (mut pool_obs, mut pool_exp) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * n;
        if e < 5.0 {
            pool_obs += o as f64;
            pool_exp += e;
        } else {
            stat += (o as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    if pool_exp > 0.0 {
        stat += (pool_obs - pool_exp).powi(2) / pool_exp;
        cells += 1;
    } else {
        assert_eq!(pool_obs, 0.0, "counts in cells of zero probability");
    }
    (stat, cells - 1)
}

/// Upper `alpha` quantile of the chi-square distribution.
pub fn chi_square_critical(dof: usize, alpha: f64) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    ChiSquared::new(dof as f64).unwrap().inverse_cdf(1.0 - alpha)
}
