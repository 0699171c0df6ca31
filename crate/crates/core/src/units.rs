//! Decibel/linear conversions for power ratios.

/// `10^(db / 10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10 log10(linear)`. Zero maps to negative infinity.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_twenty_db_is_one_percent() {
        assert!((db_to_linear(-20.0) - 0.01).abs() < 1e-15);
        assert!((linear_to_db(0.01) + 20.0).abs() < 1e-12);
    }

    #[test]
    fn unity_is_zero_db() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert_eq!(linear_to_db(1.0), 0.0);
    }
}
