//! Exact Poisson variates: sequential-search inversion for small means,
//! Hörmann's transformed rejection with squeeze (PTRS) for large ones.

use rand::Rng;
use statrs::function::gamma::ln_gamma;

/// Means up to this value use inversion.
const INVERSION_MAX_MEAN: f64 = 30.0;

pub fn sample_poisson<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> u64 {
    debug_assert!(mean >= 0.0 && mean.is_finite());
    if mean == 0.0 {
        0
    } else if mean <= INVERSION_MAX_MEAN {
        inversion(rng, mean)
    } else {
        ptrs(rng, mean)
    }
}

fn inversion<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> u64 {
    let u: f64 = rng.random();
    let mut k = 0u64;
    let mut p = (-mean).exp();
    let mut cdf = p;
    while u > cdf {
        k += 1;
        p *= mean / k as f64;
        let next = cdf + p;
        if next == cdf {
            // cdf stalled below u through rounding; the tail is exhausted
            break;
        }
        cdf = next;
    }
    k
}

fn ptrs<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> u64 {
    let sqrt_mean = mean.sqrt();
    let ln_mean = mean.ln();
    let b = 0.931 + 2.53 * sqrt_mean;
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let v_r = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u = rng.random::<f64>() - 0.5;
        let v: f64 = rng.random();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
        if us >= 0.07 && v <= v_r {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let lhs = v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln();
        let rhs = -mean + k * ln_mean - ln_gamma(k + 1.0);
        if lhs <= rhs {
            return k as u64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::stream_rng;

    fn moments(mean: f64, n: usize) -> (f64, f64) {
        let mut rng = stream_rng(11, 3);
        let xs: Vec<f64> = (0..n).map(|_| sample_poisson(&mut rng, mean) as f64).collect();
        let m = xs.iter().sum::<f64>() / n as f64;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
        (m, v)
    }

    #[test]
    fn zero_mean() {
        let mut rng = stream_rng(0, 0);
        assert_eq!(sample_poisson(&mut rng, 0.0), 0);
    }

    #[test]
    fn small_mean_moments() {
        let n = 200_000;
        let (m, v) = moments(3.5, n);
        assert!((m - 3.5).abs() < 4.0 * (3.5 / n as f64).sqrt());
        assert!((v - 3.5).abs() < 0.1);
    }

    #[test]
    fn large_mean_moments() {
        let n = 200_000;
        for mean in [31.0, 150.0, 5000.0] {
            let (m, v) = moments(mean, n);
            assert!((m - mean).abs() < 4.0 * (mean / n as f64).sqrt(), "mean {mean}: {m}");
            assert!((v / mean - 1.0).abs() < 0.03, "mean {mean}: var {v}");
        }
    }
}
