//! Summaries drawn by adjacent panels: boxplot five-number summaries and the
//! local-linear trend curve.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoxplotStats {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

/// Quantile by linear interpolation at zero-based position `p * (n - 1)` of
/// the sorted values.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

impl BoxplotStats {
    /// Tukey boxplot: whiskers reach the most extreme values within 1.5 IQR
    /// of the quartiles; anything beyond is an outlier.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("boxplot", "no values"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("boxplot", "non-finite value"));
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q1 = quantile_sorted(&v, 0.25);
        let median = quantile_sorted(&v, 0.5);
        let q3 = quantile_sorted(&v, 0.75);
        let iqr = q3 - q1;
        let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
        let inside: Vec<f64> = v
            .iter()
            .copied()
            .filter(|&x| x >= lo_fence && x <= hi_fence)
            .collect();
        // quartiles are inside the fences, so `inside` is never empty
        let whisker_low = inside[0].min(q1);
        let whisker_high = inside[inside.len() - 1].max(q3);
        let outliers = v
            .into_iter()
            .filter(|&x| x < lo_fence || x > hi_fence)
            .collect();
        Ok(Self {
            q1,
            median,
            q3,
            whisker_low,
            whisker_high,
            outliers,
        })
    }
}

/// Local linear regression with tricube weights, evaluated at each `x`.
///
/// Each fit uses the `ceil(span * n)` nearest neighbours (at least 2).
pub fn local_linear(xs: &[f64], ys: &[f64], span: f64) -> Vec<f64> {
    let n = xs.len();
    if n < 3 {
        return ys.to_vec();
    }
    let q = ((span * n as f64).ceil() as usize).clamp(2, n);
    let mut dist: Vec<f64> = Vec::with_capacity(n);
    xs.iter()
        .map(|&x0| {
            dist.clear();
            dist.extend(xs.iter().map(|&x| (x - x0).abs()));
            let mut sorted = dist.clone();
            sorted.sort_by(f64::total_cmp);
            let h = sorted[q - 1] * 1.000_001;
            let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for ((&x, &y), &d) in xs.iter().zip(ys).zip(&dist) {
                let w = if h > 0.0 && d < h {
                    let u = d / h;
                    (1.0 - u * u * u).powi(3)
                } else if h == 0.0 && d == 0.0 {
                    1.0
                } else {
                    0.0
                };
                sw += w;
                sx += w * x;
                sy += w * y;
                sxx += w * x * x;
                sxy += w * x * y;
            }
            let xm = sx / sw;
            let ym = sy / sw;
            let var = sxx / sw - xm * xm;
            if var.abs() < 1e-12 * (1.0 + xm * xm) {
                ym
            } else {
                let slope = (sxy / sw - xm * ym) / var;
                ym + slope * (x0 - xm)
            }
        })
        .collect()
}
