//! Goodness-of-fit statistics used to check the sampler against the model.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// One-sample Kolmogorov–Smirnov distance `sup |F_n(x) - F(x)|`.
/// Sorts `samples` in place.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Two-sided KS critical value `c / sqrt(n)` for the asymptotic
/// coefficient `c` (1.36 at the 5% level).
pub fn ks_critical(n: usize, coefficient: f64) -> f64 {
    coefficient / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareFit {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub bins: usize,
}

/// Pearson chi-square test of observed counts against cell probabilities.
///
/// Adjacent cells are pooled left to right until each pooled cell expects at
/// least `min_expected` observations; the trailing remainder joins the last
/// pooled cell. `probs` should cover the full support (put the tail mass in
/// the last entry).
pub fn chi_square_gof(observed: &[u64], probs: &[f64], min_expected: f64) -> ChiSquareFit {
    assert_eq!(observed.len(), probs.len(), "observed/probability length mismatch");
    let total: u64 = observed.iter().sum();
    let total = total as f64;

    let mut pooled: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        obs += o as f64;
        exp += p * total;
        if exp >= min_expected {
            pooled.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 || obs > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => pooled.push((obs, exp)),
        }
    }

    let statistic: f64 = pooled.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = pooled.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .map(|d| d.sf(statistic))
            .unwrap_or(f64::NAN)
    };
    ChiSquareFit {
        statistic,
        dof,
        p_value,
        bins: pooled.len(),
    }
}
