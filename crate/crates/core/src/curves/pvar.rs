use crate::error::{Error, Result};

/// Exact p-variation of a real series over dissections at its own indices.
///
/// For a piecewise-linear function the supremum over all dissections is
/// attained at vertices, so the dynamic program
/// `best[j] = max_{i<j} best[i] + |s_j - s_i|^p` is exact. O(n^2).
pub fn p_variation(series: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::BadExponent(p));
    }
    if series.len() < 2 {
        return Err(Error::InvalidParameter("p-variation needs at least 2 values".into()));
    }
    let n = series.len();
    let mut best = vec![0.0f64; n];
    for j in 1..n {
        let sj = series[j];
        best[j] = (0..j)
            .map(|i| best[i] + (sj - series[i]).abs().powf(p))
            .fold(f64::NEG_INFINITY, f64::max);
    }
    Ok(best[n - 1].powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Maximum over all subsets of interior vertices.
    fn brute_force(series: &[f64], p: f64) -> f64 {
        let n = series.len();
        let interior = n - 2;
        let mut best = 0.0f64;
        for mask in 0u32..(1 << interior) {
            let mut prev = series[0];
            let mut acc = 0.0;
            for k in 0..interior {
                if mask & (1 << k) != 0 {
                    acc += (series[k + 1] - prev).abs().powf(p);
                    prev = series[k + 1];
                }
            }
            acc += (series[n - 1] - prev).abs().powf(p);
            best = best.max(acc);
        }
        best.powf(1.0 / p)
    }

    #[test]
    fn basic_values() {
        assert_eq!(p_variation(&[0.0, 1.0, 2.0, 3.0], 1.0).unwrap(), 3.0);
        assert_eq!(p_variation(&[0.0, 1.0, 0.0], 1.0).unwrap(), 2.0);
        assert!((p_variation(&[0.0, 1.0, 0.0], 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(p_variation(&[4.0; 6], 1.5).unwrap(), 0.0);
    }

    #[test]
    fn enumeration_oracle_on_zigzag() {
        assert_eq!(brute_force(&[0.0, 1.0, 0.0], 1.0), 2.0);
        assert!((brute_force(&[0.0, 1.0, 0.0], 2.0) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(p_variation(&[0.0, 1.0], 0.5), Err(Error::BadExponent(_))));
        assert!(matches!(p_variation(&[0.0, 1.0], f64::NAN), Err(Error::BadExponent(_))));
        assert!(p_variation(&[0.0], 1.0).is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force(series in prop::collection::vec(-5.0f64..5.0, 2..=12), p in 1.0f64..4.0) {
            let dp = p_variation(&series, p).unwrap();
            let bf = brute_force(&series, p);
            prop_assert!((dp - bf).abs() <= 1e-12 * bf.max(1.0), "dp {} bf {}", dp, bf);
            prop_assert!(dp >= (series[series.len() - 1] - series[0]).abs() - 1e-12);
        }

        #[test]
        fn nonincreasing_in_p(series in prop::collection::vec(-5.0f64..5.0, 2..=12), p in 1.0f64..3.0, dp in 0.0f64..2.0) {
            let a = p_variation(&series, p).unwrap();
            let b = p_variation(&series, p + dp).unwrap();
            prop_assert!(b <= a * (1.0 + 1e-12) + 1e-15);
        }

        #[test]
        fn homogeneous(series in prop::collection::vec(-5.0f64..5.0, 2..=40), p in 1.0f64..3.0, c in -10.0f64..10.0) {
            let a = p_variation(&series, p).unwrap();
            let scaled: Vec<f64> = series.iter().map(|s| c * s).collect();
            let b = p_variation(&scaled, p).unwrap();
            prop_assert!((b - c.abs() * a).abs() <= 1e-12 * (c.abs() * a).max(1e-300));
        }
    }
}
