//! Small shared numeric helpers.

/// `ln(sum(exp(x_i)))` with the usual max shift, so huge exponents cannot
/// overflow and tiny ones cannot silently vanish relative to the leader.
pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

pub(crate) fn is_nonneg_finite(x: f64) -> bool {
    x.is_finite() && x >= 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_evaluation_for_small_inputs() {
        let direct = (1.0f64.exp() + 2.0f64.exp() + 0.5f64.exp()).ln();
        assert!((log_sum_exp(&[1.0, 2.0, 0.5]) - direct).abs() < 1e-14);
    }

    #[test]
    fn survives_exponents_that_would_overflow() {
        let v = log_sum_exp(&[0.0, 1000.0]);
        assert!(v.is_finite());
        assert!((v - 1000.0).abs() < 1e-12, "dominant term wins: {v}");
    }

    #[test]
    fn empty_input_is_log_of_zero() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }
}
