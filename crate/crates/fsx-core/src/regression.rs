//! Least-squares slope extraction and ratio-spread summaries for the
//! experiment harness.

/// Ordinary least squares on pre-logged points.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest |y - fit(x)| over the sample.
    pub max_residual: f64,
}

/// Fit `y = slope * x + intercept`. Expects at least two distinct abscissae.
pub fn least_squares(points: &[(f64, f64)]) -> Option<Fit> {
    let m = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let det = m * sxx - sx * sx;
    if det == 0.0 {
        return None;
    }
    let slope = (m * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / m;
    let max_residual = points
        .iter()
        .map(|&(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0, f64::max);
    Some(Fit {
        slope,
        intercept,
        max_residual,
    })
}

/// Multiplicative spread `max/min - 1` over strictly positive values.
/// `None` if the slice is empty or touches zero/negative values.
pub fn relative_spread(values: &[f64]) -> Option<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &v in values {
        if !(v > 0.0) || !v.is_finite() {
            return None;
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if values.is_empty() {
        None
    } else {
        Some(hi / lo - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_an_exact_line() {
        let pts: Vec<(f64, f64)> = (0..6).map(|i| (i as f64, 3.5 - 0.75 * i as f64)).collect();
        let fit = least_squares(&pts).unwrap();
        assert!((fit.slope + 0.75).abs() < 1e-12);
        assert!((fit.intercept - 3.5).abs() < 1e-12);
        assert!(fit.max_residual < 1e-12);
    }

    #[test]
    fn residual_reports_worst_deviation() {
        let mut pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 2.0 * i as f64)).collect();
        pts[2].1 += 0.5;
        let fit = least_squares(&pts).unwrap();
        assert!(fit.max_residual >= 0.3);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(least_squares(&[(1.0, 2.0)]).is_none());
        assert!(least_squares(&[(1.0, 2.0), (1.0, 3.0)]).is_none());
    }

    #[test]
    fn spread_of_constant_family_is_zero() {
        assert_eq!(relative_spread(&[2.0, 2.0, 2.0]), Some(0.0));
        let s = relative_spread(&[1.0, 1.1]).unwrap();
        assert!((s - 0.1).abs() < 1e-12);
        assert_eq!(relative_spread(&[1.0, 0.0]), None);
        assert_eq!(relative_spread(&[]), None);
    }
}
