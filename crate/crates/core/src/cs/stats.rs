/// Box-plot summary: median-exclusive quartiles and Tukey whiskers at
/// 1.5·IQR.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxStats {
    pub count: usize,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    /// Smallest sample not below `q1 - 1.5·IQR`.
    pub whisker_lo: f64,
    /// Largest sample not above `q3 + 1.5·IQR`.
    pub whisker_hi: f64,
    pub outliers: Vec<f64>,
}

fn median_of_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

impl BoxStats {
    /// Summarizes `values`; `None` when empty. NaNs are ignored.
    pub fn from_values(values: &[f64]) -> Option<BoxStats> {
        let mut v: Vec<f64> = values.iter().copied().filter(|x| !x.is_nan()).collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = median_of_sorted(&v);
        let (lower, upper) = if n == 1 {
            (&v[..], &v[..])
        } else {
            (&v[..n / 2], &v[n.div_ceil(2)..])
        };
        let q1 = median_of_sorted(lower);
        let q3 = median_of_sorted(upper);
        let iqr = q3 - q1;
        let iqr = if iqr.is_nan() { 0.0 } else { iqr };
        let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
        let inside = |x: &&f64| **x >= lo_fence && **x <= hi_fence;
        let whisker_lo = v.iter().find(inside).copied().unwrap_or(q1);
        let whisker_hi = v.iter().rev().find(inside).copied().unwrap_or(q3);
        let outliers = v
            .iter()
            .copied()
            .filter(|x| !(*x >= lo_fence && *x <= hi_fence))
            .collect();
        Some(BoxStats {
            count: n,
            q1,
            median,
            q3,
            whisker_lo,
            whisker_hi,
            outliers,
        })
    }
}
