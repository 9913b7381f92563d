//! Per-fold metrics: Brier score, log-loss, AUC-ROC, the Spiegelhalter
//! Z-statistic, and the reliability/resolution/uncertainty decomposition of
//! the Brier score.
//!
//! All operations are pure functions of a [`FoldSeries`]; identical inputs
//! yield bit-identical outputs.

use crate::numeric::{clip, compensated_sum, fractional_ranks};
use crate::series::FoldSeries;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two-sided 5% critical value of the standard normal; `|z|` above this
/// rejects the perfect-calibration null.
pub const Z_CRITICAL: f64 = 1.96;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("AUC is undefined: series contains a single class")]
    SingleClass,
    #[error("Z-statistic variance is zero: every probability is 0, 0.5, or 1")]
    DegenerateVariance,
    #[error("clip epsilon {0} is outside (0, 0.5)")]
    InvalidClipEps(f64),
    #[error("bin count must be >= 1 for binned schemes")]
    InvalidBinCount,
}

/// Result of the Spiegelhalter calibration test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZResult {
    pub z: f64,
    /// `|z| > 1.96` (two-sided 5% level).
    pub significant: bool,
}

/// Grouping rule for the Brier decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinningScheme {
    /// One bin per distinct predicted probability; the decomposition identity
    /// holds exactly (residual 0).
    UniqueValue,
    /// Fixed-width bins over [0, 1].
    EqualWidth,
    /// Quantile bins with near-equal occupancy.
    EqualMass,
}

impl BinningScheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            BinningScheme::UniqueValue => "unique-value",
            BinningScheme::EqualWidth => "equal-width",
            BinningScheme::EqualMass => "equal-mass",
        }
    }
}

/// Three-component Brier decomposition plus the within-bin remainder.
///
/// `brier = reliability - resolution + uncertainty + residual`; under
/// unique-value grouping the residual vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub reliability: f64,
    pub resolution: f64,
    pub uncertainty: f64,
    pub residual: f64,
    pub bin_count: usize,
    pub scheme: BinningScheme,
}

/// Mean squared error between predicted probabilities and outcomes.
pub fn brier_score(series: &FoldSeries) -> f64 {
    let n = series.len() as f64;
    compensated_sum(series.iter().map(|(p, y)| {
        let d = p - y as f64;
        d * d
    })) / n
}

/// Mean negative log-likelihood with probabilities clipped to
/// `[clip_eps, 1 - clip_eps]` before the logarithm.
pub fn log_loss(series: &FoldSeries, clip_eps: f64) -> Result<f64, MetricsError> {
    if !(clip_eps > 0.0 && clip_eps < 0.5) {
        return Err(MetricsError::InvalidClipEps(clip_eps));
    }
    let n = series.len() as f64;
    let total = compensated_sum(series.iter().map(|(p, y)| {
        let p = clip(p, clip_eps);
        if y == 1 {
            -p.ln()
        } else {
            -(1.0 - p).ln()
        }
    }));
    Ok(total / n)
}

/// Concordance probability, ties counted as one half.
///
/// Computed by the rank-sum identity in O(N log N); equal to exhaustive
/// all-pairs counting.
pub fn auc_roc(series: &FoldSeries) -> Result<f64, MetricsError> {
    let n_pos = series.positives();
    let n_neg = series.negatives();
    if n_pos == 0 || n_neg == 0 {
        return Err(MetricsError::SingleClass);
    }
    let ranks = fractional_ranks(series.probs());
    let pos_rank_sum: f64 = series
        .labels()
        .iter()
        .zip(ranks.iter())
        .filter(|(&y, _)| y == 1)
        .map(|(_, &r)| r)
        .sum();
    let n_pos_f = n_pos as f64;
    let u = pos_rank_sum - n_pos_f * (n_pos_f + 1.0) / 2.0;
    Ok(u / (n_pos_f * n_neg as f64))
}

/// Spiegelhalter's bin-free calibration test statistic:
///
/// ```text
/// z = sum (y_i - p_i)(1 - 2 p_i) / sqrt(sum (1 - 2 p_i)^2 p_i (1 - p_i))
/// ```
///
/// Asymptotically standard normal when the model is perfectly calibrated.
pub fn spiegelhalter_z(series: &FoldSeries) -> Result<ZResult, MetricsError> {
    let numerator = compensated_sum(series.iter().map(|(p, y)| (y as f64 - p) * (1.0 - 2.0 * p)));
    let variance = compensated_sum(series.iter().map(|(p, _)| {
        let w = 1.0 - 2.0 * p;
        w * w * p * (1.0 - p)
    }));
    if variance <= 0.0 {
        return Err(MetricsError::DegenerateVariance);
    }
    let z = numerator / variance.sqrt();
    Ok(ZResult { z, significant: z.abs() > Z_CRITICAL })
}

/// Murphy-style decomposition of the Brier score into reliability,
/// resolution, and uncertainty over the chosen grouping, with the within-bin
/// remainder reported as `residual` rather than silently absorbed.
pub fn brier_decomposition(
    series: &FoldSeries,
    scheme: BinningScheme,
    bin_count: usize,
) -> Result<DecompositionResult, MetricsError> {
    if scheme != BinningScheme::UniqueValue && bin_count == 0 {
        return Err(MetricsError::InvalidBinCount);
    }
    let bins = assign_bins(series, scheme, bin_count);
    let n = series.len() as f64;
    let y_bar = series.base_rate();

    let n_bins = bins.iter().copied().max().map_or(0, |m| m + 1);
    let mut count = vec![0usize; n_bins];
    let mut p_sum = vec![0.0f64; n_bins];
    let mut y_sum = vec![0.0f64; n_bins];
    for ((p, y), &b) in series.iter().zip(bins.iter()) {
        count[b] += 1;
        p_sum[b] += p;
        y_sum[b] += y as f64;
    }

    let occupied = count.iter().filter(|&&c| c > 0).count();
    let reliability = compensated_sum((0..n_bins).filter(|&b| count[b] > 0).map(|b| {
        let nk = count[b] as f64;
        let p_bar = p_sum[b] / nk;
        let o_bar = y_sum[b] / nk;
        nk * (p_bar - o_bar) * (p_bar - o_bar)
    })) / n;
    let resolution = compensated_sum((0..n_bins).filter(|&b| count[b] > 0).map(|b| {
        let nk = count[b] as f64;
        let o_bar = y_sum[b] / nk;
        nk * (o_bar - y_bar) * (o_bar - y_bar)
    })) / n;
    let uncertainty = y_bar * (1.0 - y_bar);
    let residual = brier_score(series) - (reliability - resolution + uncertainty);

    Ok(DecompositionResult {
        reliability,
        resolution,
        uncertainty,
        residual,
        bin_count: occupied,
        scheme,
    })
}

fn assign_bins(series: &FoldSeries, scheme: BinningScheme, bin_count: usize) -> Vec<usize> {
    let n = series.len();
    match scheme {
        BinningScheme::UniqueValue => {
            // Group by exact probability value.
            let mut sorted: Vec<(f64, usize)> =
                series.probs().iter().copied().zip(0..n).collect();
            sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("probs are finite"));
            let mut bins = vec![0usize; n];
            let mut bin = 0usize;
            for i in 0..n {
                if i > 0 && sorted[i].0 != sorted[i - 1].0 {
                    bin += 1;
                }
                bins[sorted[i].1] = bin;
            }
            bins
        }
        BinningScheme::EqualWidth => {
            let k = bin_count;
            series
                .probs()
                .iter()
                .map(|&p| (((p * k as f64).floor() as usize).min(k - 1)))
                .collect()
        }
        BinningScheme::EqualMass => {
            // Sort stably by probability and cut into K contiguous chunks of
            // near-equal size; deterministic for identical inputs.
            let k = bin_count.min(n);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                series.probs()[a]
                    .partial_cmp(&series.probs()[b])
                    .expect("probs are finite")
                    .then(a.cmp(&b))
            });
            let base = n / k;
            let extra = n % k;
            let mut bins = vec![0usize; n];
            let mut idx = 0usize;
            for b in 0..k {
                let size = base + usize::from(b < extra);
                for _ in 0..size {
                    bins[order[idx]] = b;
                    idx += 1;
                }
            }
            bins
        }
    }
}
