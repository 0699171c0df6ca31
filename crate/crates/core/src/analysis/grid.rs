use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoSpacing {
    #[default]
    Linear,
    Log,
}

impl RhoSpacing {
    pub fn values(self, min: f64, max: f64, steps: usize) -> Vec<f64> {
        match self {
            RhoSpacing::Linear => linear_spaced(min, max, steps),
            RhoSpacing::Log => log_spaced(min, max, steps),
        }
    }
}

/// `steps` evenly spaced points from `min` to `max` inclusive.
pub fn linear_spaced(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (steps - 1) as f64;
            (0..steps)
                .map(|i| if i == steps - 1 { max } else { min + step * i as f64 })
                .collect()
        }
    }
}

/// `steps` geometrically spaced points from `min` to `max` inclusive; both
/// ends must be positive.
pub fn log_spaced(min: f64, max: f64, steps: usize) -> Vec<f64> {
    let (lo, hi) = (min.ln(), max.ln());
    linear_spaced(lo, hi, steps)
        .into_iter()
        .enumerate()
        .map(|(i, x)| match i {
            0 => min,
            _ if i == steps - 1 => max,
            _ => x.exp(),
        })
        .collect()
}
