//! Small ensemble statistics.

pub fn mean(xs: &[f64]) -> f64 {
    winding_core::sum::pairwise_sum(xs) / xs.len() as f64
}

/// Standard error of the mean; `None` for fewer than two samples.
pub fn std_error(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let dev: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    let var = winding_core::sum::pairwise_sum(&dev) / (xs.len() - 1) as f64;
    Some((var / xs.len() as f64).sqrt())
}

/// Pearson correlation and least-squares slope of `y` on `x`.
pub fn correlation_and_slope(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (mx, my) = (mean(x), mean(y));
    let sxy: Vec<f64> = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).collect();
    let sxx: Vec<f64> = x.iter().map(|a| (a - mx) * (a - mx)).collect();
    let syy: Vec<f64> = y.iter().map(|b| (b - my) * (b - my)).collect();
    let (sxy, sxx, syy) = (
        winding_core::sum::pairwise_sum(&sxy),
        winding_core::sum::pairwise_sum(&sxx),
        winding_core::sum::pairwise_sum(&syy),
    );
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt(), sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        assert_eq!(mean(&[1.0, 2.0, 3.0]), 2.0);
        assert_eq!(std_error(&[5.0]), None);
        let se = std_error(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exact_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 1.0).collect();
        let (r, s) = correlation_and_slope(&x, &y).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
        assert!((s - 2.0).abs() < 1e-15);
        assert_eq!(correlation_and_slope(&[1.0, 1.0], &[2.0, 3.0]), None);
    }
}
