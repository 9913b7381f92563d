//! Least-squares isotonic regression via pool-adjacent-violators, and the
//! step-function map it produces.

use crate::series::FoldSeries;
use serde::{Deserialize, Serialize};

/// One step of a fitted isotonic map: all inputs from `score` up to the next
/// breakpoint share `value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakpoint {
    pub score: f64,
    pub value: f64,
}

/// Weighted isotonic least-squares fit of `values` (already ordered by their
/// regressor). Returns the fitted vector, non-decreasing, block-constant.
pub(crate) fn pav(values: &[f64], weights: &[f64]) -> Vec<f64> {
    debug_assert_eq!(values.len(), weights.len());
    // Stack of merged blocks: (mean, weight, count of inputs covered).
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((v, w, 1));
        while blocks.len() > 1 {
            let last = blocks[blocks.len() - 1];
            let prev = blocks[blocks.len() - 2];
            if prev.0 <= last.0 {
                break;
            }
            blocks.pop();
            blocks.pop();
            let weight = prev.1 + last.1;
            let mean = (prev.0 * prev.1 + last.0 * last.1) / weight;
            blocks.push((mean, weight, prev.2 + last.2));
        }
    }
    let mut fitted = Vec::with_capacity(values.len());
    for (mean, _, count) in blocks {
        fitted.extend(std::iter::repeat(mean).take(count));
    }
    fitted
}

/// Pools observations that share an exact score so the fitted map stays a
/// function of the score. Returns (distinct sorted scores, label sums, counts).
pub(crate) fn pool_by_score(scores: &[f64], labels: &[u8]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("scores are finite"));
    let mut distinct = Vec::new();
    let mut label_sum = Vec::new();
    let mut count = Vec::new();
    for &i in &order {
        if distinct.last() == Some(&scores[i]) {
            *label_sum.last_mut().unwrap() += labels[i] as f64;
            *count.last_mut().unwrap() += 1.0;
        } else {
            distinct.push(scores[i]);
            label_sum.push(labels[i] as f64);
            count.push(1.0);
        }
    }
    (distinct, label_sum, count)
}

/// The pool-adjacent-violators solution minimizing `sum (g(p_i) - y_i)^2`
/// over non-decreasing `g`.
pub fn fit_isotonic(cal: &FoldSeries) -> Vec<Breakpoint> {
    let (scores, label_sum, count) = pool_by_score(cal.probs(), cal.labels());
    let means: Vec<f64> = label_sum.iter().zip(&count).map(|(s, c)| s / c).collect();
    let fitted = pav(&means, &count);
    scores
        .into_iter()
        .zip(fitted)
        .map(|(score, value)| Breakpoint { score, value })
        .collect()
}

/// Step-function evaluation: the value of the greatest breakpoint score <= s,
/// clamped to the end values outside the training range.
pub fn eval_step(breakpoints: &[Breakpoint], s: f64) -> f64 {
    debug_assert!(!breakpoints.is_empty());
    match breakpoints.partition_point(|b| b.score <= s) {
        0 => breakpoints[0].value,
        k => breakpoints[k - 1].value,
    }
}

/// Fitted values at the training scores themselves, in input order.
pub fn fitted_at_training(cal: &FoldSeries) -> Vec<f64> {
    let breakpoints = fit_isotonic(cal);
    cal.probs().iter().map(|&p| eval_step(&breakpoints, p)).collect()
}
