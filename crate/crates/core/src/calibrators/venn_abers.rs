//! Inductive Venn-Abers prediction.
//!
//! For each test score `s`, two isotonic fits are run over the calibration
//! set augmented with `(s, 0)` and `(s, 1)`; the fitted values at `s` give
//! the interval `[p0, p1]`, merged to a single probability by the
//! log-loss-optimal rule `p1 / (1 - p0 + p1)`.
//!
//! The implementation refits per test point (the semantics that define
//! correctness) but keeps the calibration set pooled and sorted once, so a
//! refit costs one O(K) pool-adjacent-violators pass instead of a full sort.

use super::isotonic::{pav, pool_by_score};
use crate::series::FoldSeries;
use serde::{Deserialize, Serialize};

/// The interval produced for one test score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VennAbersOutput {
    pub p0: f64,
    pub p1: f64,
    /// `p1 / (1 - p0 + p1)`; always inside `[p0, p1]`.
    pub merged: f64,
}

/// Calibration pairs pooled by distinct score, ready for augmented refits.
#[derive(Debug, Clone)]
pub struct VennAbersCalibrator {
    scores: Vec<f64>,
    label_sums: Vec<f64>,
    counts: Vec<f64>,
}

impl VennAbersCalibrator {
    pub fn new(cal: &FoldSeries) -> Self {
        let (scores, label_sums, counts) = pool_by_score(cal.probs(), cal.labels());
        Self { scores, label_sums, counts }
    }

    /// Isotonic fit over the calibration set plus `(s, label)`, evaluated at `s`.
    fn augmented_fit_at(&self, s: f64, label: u8) -> f64 {
        let k = self.scores.len();
        let insert = self.scores.partition_point(|&x| x < s);
        let duplicate = insert < k && self.scores[insert] == s;
        let total = if duplicate { k } else { k + 1 };

        let mut means = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut target = 0usize;
        for i in 0..k {
            if i == insert && !duplicate {
                means.push(label as f64);
                weights.push(1.0);
                target = means.len() - 1;
            }
            if i == insert && duplicate {
                means.push((self.label_sums[i] + label as f64) / (self.counts[i] + 1.0));
                weights.push(self.counts[i] + 1.0);
                target = means.len() - 1;
            } else {
                means.push(self.label_sums[i] / self.counts[i]);
                weights.push(self.counts[i]);
            }
        }
        if insert == k {
            means.push(label as f64);
            weights.push(1.0);
            target = means.len() - 1;
        }

        let fitted = pav(&means, &weights);
        fitted[target]
    }

    pub fn predict_one(&self, s: f64) -> VennAbersOutput {
        let p0 = self.augmented_fit_at(s, 0);
        let p1 = self.augmented_fit_at(s, 1);
        VennAbersOutput { p0, p1, merged: p1 / (1.0 - p0 + p1) }
    }

    pub fn predict(&self, test_scores: &[f64]) -> Vec<VennAbersOutput> {
        test_scores.iter().map(|&s| self.predict_one(s)).collect()
    }
}

/// One-shot helper matching the operation signature.
pub fn venn_abers_predict(cal: &FoldSeries, test_scores: &[f64]) -> Vec<VennAbersOutput> {
    VennAbersCalibrator::new(cal).predict(test_scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(probs: &[f64], labels: &[u8]) -> FoldSeries {
        FoldSeries::new(labels.to_vec(), probs.to_vec()).unwrap()
    }

    #[test]
    fn hand_traced_two_point_example() {
        let cal = series(&[0.1, 0.9], &[0, 1]);
        let out = venn_abers_predict(&cal, &[0.9]);
        assert_eq!(out.len(), 1);
        assert!((out[0].p0 - 0.5).abs() < 1e-15);
        assert!((out[0].p1 - 1.0).abs() < 1e-15);
        assert!((out[0].merged - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empty_test_list_gives_empty_output() {
        let cal = series(&[0.1, 0.9], &[0, 1]);
        assert!(venn_abers_predict(&cal, &[]).is_empty());
    }

    /// Naive reference: re-sort and refit from scratch per test point.
    fn naive_predict(cal: &FoldSeries, s: f64, label: u8) -> f64 {
        let mut probs = cal.probs().to_vec();
        let mut labels = cal.labels().to_vec();
        probs.push(s);
        labels.push(label);
        let (scores, sums, counts) = pool_by_score(&probs, &labels);
        let means: Vec<f64> = sums.iter().zip(&counts).map(|(a, b)| a / b).collect();
        let fitted = pav(&means, &counts);
        let idx = scores.iter().position(|&x| x == s).unwrap();
        fitted[idx]
    }

    #[test]
    fn matches_from_scratch_refits() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let n = rng.gen_range(1..40);
            let probs: Vec<f64> = (0..n).map(|_| rng.gen_range(0..10) as f64 / 10.0).collect();
            let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let cal = series(&probs, &labels);
            let va = VennAbersCalibrator::new(&cal);
            for _ in 0..10 {
                let s = rng.gen_range(0..20) as f64 / 20.0;
                let out = va.predict_one(s);
                assert!((out.p0 - naive_predict(&cal, s, 0)).abs() < 1e-12);
                assert!((out.p1 - naive_predict(&cal, s, 1)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interval_always_contains_merged() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let n = rng.gen_range(1..50);
            let probs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let cal = series(&probs, &labels);
            let va = VennAbersCalibrator::new(&cal);
            for _ in 0..5 {
                let out = va.predict_one(rng.gen_range(0.0..1.0));
                assert!(out.p0 <= out.p1 + 1e-15);
                assert!(out.p0 <= out.merged + 1e-15 && out.merged <= out.p1 + 1e-15);
            }
        }
    }
}
