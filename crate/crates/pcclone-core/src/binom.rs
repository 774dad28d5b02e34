//! Small combinatorics helpers shared by the estimation and cloning bounds.

/// Largest copy count for which binomial sums are evaluated by direct
/// products; above this the log-domain path is used to avoid loss of range.
pub(crate) const DIRECT_LIMIT: u64 = 30;

/// Binomial coefficient as a float, by direct multiplicative evaluation.
pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// ln(n!) from a cumulative table (exact summation of ln i).
fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

pub(crate) fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Deterministic pairwise summation: bit-stable and better conditioned than
/// a left fold for long node sums.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Σ_{l=0}^{k-1} sqrt(C(k,l) C(k,l+1)) — the root-binomial sum appearing in
/// both the mean phase-estimation fidelity and the cloning bound.
///
/// Direct products up to k = 30; log-domain beyond to avoid overflow.
pub(crate) fn root_binomial_sum(k: u64) -> f64 {
    let terms: Vec<f64> = if k <= DIRECT_LIMIT {
        (0..k)
            .map(|l| (binomial(k, l) * binomial(k, l + 1)).sqrt())
            .collect()
    } else {
        (0..k)
            .map(|l| (0.5 * (ln_binomial(k, l) + ln_binomial(k, l + 1))).exp())
            .collect()
    };
    pairwise_sum(&terms)
}
