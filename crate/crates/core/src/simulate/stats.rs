use statrs::distribution::{ContinuousCDF, Normal};

/// Wilcoxon signed-rank test on paired samples, normal approximation with
/// tie and continuity corrections. Zero differences are dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedRank {
    /// Number of non-zero differences.
    pub n: usize,
    /// Rank sum of the positive differences `x - y`.
    pub w_plus: f64,
    pub z: f64,
    /// `P` for the alternative that `x` tends to be smaller than `y`.
    pub p_less: f64,
    pub p_greater: f64,
    pub p_two_sided: f64,
}

pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> SignedRank {
    assert_eq!(x.len(), y.len(), "paired samples must have equal length");
    let mut d: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    let n = d.len();
    if n == 0 {
        return SignedRank {
            n,
            w_plus: 0.0,
            z: 0.0,
            p_less: 1.0,
            p_greater: 1.0,
            p_two_sided: 1.0,
        };
    }
    d.sort_by(|a, b| a.abs().total_cmp(&b.abs()));

    let mut w_plus = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && d[j].abs() == d[i].abs() {
            j += 1;
        }
        // ranks i+1..=j share their mean
        let rank = (i + 1 + j) as f64 / 2.0;
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        w_plus += rank * d[i..j].iter().filter(|v| **v > 0.0).count() as f64;
        i = j;
    }
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    if var <= 0.0 {
        return SignedRank {
            n,
            w_plus,
            z: 0.0,
            p_less: 1.0,
            p_greater: 1.0,
            p_two_sided: 1.0,
        };
    }
    let sd = var.sqrt();
    let z = (w_plus - mean) / sd;
    let z_less = (w_plus - mean + 0.5) / sd;
    let z_greater = (w_plus - mean - 0.5) / sd;
    let p_less = normal.cdf(z_less);
    let p_greater = normal.sf(z_greater);
    let p_two_sided = (2.0 * p_less.min(p_greater)).min(1.0);
    SignedRank {
        n,
        w_plus,
        z,
        p_less,
        p_greater,
        p_two_sided,
    }
}
