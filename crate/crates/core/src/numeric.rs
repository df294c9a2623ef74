//! Small numeric helpers shared across modules.

/// Logistic (sigmoid) function, 1 / (1 + e^-x).
pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Inverse of [`logistic`]: log(p / (1 - p)).
pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// Binomial coefficient C(n, k) as f64, with C(n, k) = 0 for k > n.
///
/// Exact for results below 2^53; large arguments degrade gracefully to the
/// nearest representable float instead of overflowing.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * ((n - i) as f64) / ((i + 1) as f64);
    }
    acc
}

/// Sum of a slice using a fixed-order pairwise tree.
///
/// The reduction order depends only on the slice length, so results are
/// bit-reproducible regardless of how the inputs were produced, and the
/// O(log n) error growth beats a naive left fold on long accumulations.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
