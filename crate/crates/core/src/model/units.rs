//! Logarithmic unit conversions. All internal arithmetic is linear-scale.

/// dBm to milliwatts.
pub fn dbm_to_mw(p_dbm: f64) -> f64 {
    10f64.powf(p_dbm / 10.0)
}

/// dB ratio to a linear ratio.
pub fn db_to_linear(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_points() {
        assert_eq!(dbm_to_mw(0.0), 1.0);
        assert!((dbm_to_mw(10.0) - 10.0).abs() < 1e-12);
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((dbm_to_mw(1.0) - 1.258_925_411_794_167_2).abs() < 1e-12);
        assert!((linear_to_db(db_to_linear(-5.0)) + 5.0).abs() < 1e-12);
    }
}
