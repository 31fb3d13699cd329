//! Capacity of a Gaussian channel whose interference is known only through
//! noisy observations — at the transmitter, at the receiver, or both.
//!
//! The channel is `Y = X + S + Z0` with transmit power `P`, interference
//! `S ~ N(0, Q)`, and channel noise `Z0 ~ N(0, N0)`.  The transmitter sees
//! `M1 = S + Z1` and the receiver sees `M2 = S + Z2`, with observation noise
//! variances `N1` and `N2`; either may be `+∞` (no observation at all).
//!
//! Only the *residual fraction*
//!
//! ```text
//! μ = 1 / (1 + Q/N1 + Q/N2)
//! ```
//!
//! of the interference survives the two observations, and the capacity is
//! `C(P / (μ·Q + N0))`.  A perfect observation on either side (`N1 = 0` or
//! `N2 = 0`) drives `μ` to zero and recovers the clean-channel rate
//! `C(P/N0)` — writing on dirty paper costs nothing once anyone knows the
//! dirt exactly.  With no observations at all (`N1 = N2 = +∞`), `μ = 1` and
//! the interference acts as plain noise.
//!
//! The module also exposes the auxiliary-coefficient view: the transmitter
//! encodes `U = X + α·M1`, achieving [`DirtyPaperChannel::rate_of_alpha`],
//! which is maximized at [`DirtyPaperChannel::optimal_alpha`] where it meets
//! the capacity above.

use crate::error::{Error, Result};
use crate::gaussian::Rate;
use crate::numeric::is_nonneg_finite;

/// A Gaussian channel with additive interference observed noisily at the
/// transmitter (variance `N1`) and the receiver (variance `N2`).
///
/// Invariants, enforced at construction: `P ≥ 0`, `Q ≥ 0`, `N0 > 0`, and
/// `N1, N2 ∈ [0, +∞]` (infinity meaning the observation is absent).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirtyPaperChannel {
    p: f64,
    q: f64,
    n0: f64,
    n1: f64,
    n2: f64,
}

fn check_obs_noise(name: &str, v: f64) -> Result<()> {
    if v.is_nan() || v < 0.0 {
        return Err(Error::Domain(format!(
            "{name} must lie in [0, +inf], got {v}"
        )));
    }
    Ok(())
}

impl DirtyPaperChannel {
    pub fn new(p: f64, q: f64, n0: f64, n1: f64, n2: f64) -> Result<Self> {
        if !is_nonneg_finite(p) {
            return Err(Error::Domain(format!("P must be finite and >= 0, got {p}")));
        }
        if !is_nonneg_finite(q) {
            return Err(Error::Domain(format!("Q must be finite and >= 0, got {q}")));
        }
        if n0.is_nan() || n0 < 0.0 || !n0.is_finite() {
            return Err(Error::Domain(format!(
                "N0 must be finite and >= 0, got {n0}"
            )));
        }
        if n0 == 0.0 {
            return Err(Error::Unsupported(
                "N0 = 0 gives a noiseless channel with infinite capacity".into(),
            ));
        }
        check_obs_noise("N1", n1)?;
        check_obs_noise("N2", n2)?;
        Ok(DirtyPaperChannel { p, q, n0, n1, n2 })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn n0(&self) -> f64 {
        self.n0
    }
    pub fn n1(&self) -> f64 {
        self.n1
    }
    pub fn n2(&self) -> f64 {
        self.n2
    }

    /// The fraction `μ = 1/(1 + Q/N1 + Q/N2)` of the interference power that
    /// survives both observations.
    ///
    /// `Q/N` is taken as zero when `N = +∞` and as `+∞` when `N = 0`, so a
    /// perfect observation on either side gives exactly `μ = 0` and absent
    /// observations on both sides give exactly `μ = 1`.
    ///
    /// Errors when `Q = 0`: with no interference there is nothing to cancel
    /// and `μ` is undefined — use [`Self::capacity`] directly.
    pub fn residual_fraction(&self) -> Result<f64> {
        if self.q == 0.0 {
            return Err(Error::Domain(
                "Q = 0: no interference, the residual fraction is undefined".into(),
            ));
        }
        let term = |n: f64| if n.is_infinite() { 0.0 } else { self.q / n };
        // sum the observation terms before adding 1 so that swapping the two
        // sides gives a bit-identical result
        let s = term(self.n1) + term(self.n2);
        Ok(1.0 / (1.0 + s))
    }

    /// Channel capacity `C(P / (μ·Q + N0))` in nats.
    ///
    /// `Q = 0` bypasses `μ` entirely and returns the clean rate `C(P/N0)`.
    pub fn capacity(&self) -> Rate {
        if self.q == 0.0 {
            return Rate::new_unchecked(0.5 * (self.p / self.n0).ln_1p());
        }
        let mu = self
            .residual_fraction()
            .expect("Q > 0 was just checked");
        Rate::new_unchecked(0.5 * (self.p / (mu * self.q + self.n0)).ln_1p())
    }

    /// Rate achieved by encoding against `U = X + α·M1` for an arbitrary
    /// inflation coefficient `α`, in nats:
    ///
    /// ```text
    ///         1       P·[(Q+P+N0)(Q+N2) − Q²]
    /// R(α) = --- ln ----------------------------------------------------------
    ///         2     α²·[Q(P+N0)(N1+N2) + (Q+P+N0)N1N2] − 2αQPN2 + P(QN0+QN2+N0N2)
    /// ```
    ///
    /// `N2 = +∞` is evaluated as the corresponding limit.  A wild `α` can push
    /// the log's argument below one; the result clamps at rate zero.
    ///
    /// Errors: the construction requires the transmitter observation, so
    /// `N1 = +∞` is a domain error, as is a non-finite `α`.
    pub fn rate_of_alpha(&self, alpha: f64) -> Result<Rate> {
        if self.n1.is_infinite() {
            return Err(Error::Domain(
                "the inflation scheme needs a transmitter observation (finite N1)".into(),
            ));
        }
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        let (p, q, n0, n1, n2) = (self.p, self.q, self.n0, self.n1, self.n2);
        if p == 0.0 {
            return Ok(Rate::new_unchecked(0.0));
        }
        let (num, den) = if n2.is_infinite() {
            (
                p * (q + p + n0),
                alpha * alpha * (q * (p + n0) + (q + p + n0) * n1) - 2.0 * alpha * q * p
                    + p * (q + n0),
            )
        } else {
            (
                p * ((q + p + n0) * (q + n2) - q * q),
                alpha * alpha * (q * (p + n0) * (n1 + n2) + (q + p + n0) * n1 * n2)
                    - 2.0 * alpha * q * p * n2
                    + p * (q * n0 + q * n2 + n0 * n2),
            )
        };
        if den <= 0.0 || num <= 0.0 {
            return Ok(Rate::new_unchecked(0.0));
        }
        Ok(Rate::new_unchecked((0.5 * (num / den).ln()).max(0.0)))
    }

    /// The inflation coefficient that maximizes [`Self::rate_of_alpha`]:
    ///
    /// ```text
    /// α* = QPN2 / [Q(P+N0)(N1+N2) + (Q+P+N0)N1N2]
    /// ```
    ///
    /// with the `N2 = +∞` limit `QP / [Q(P+N0) + (Q+P+N0)N1]`.  Degenerate
    /// channels (`P = 0`, `Q = 0`, or `N2 = 0`) return `α* = 0`.
    ///
    /// Errors: `N1 = +∞`, as for [`Self::rate_of_alpha`].
    pub fn optimal_alpha(&self) -> Result<f64> {
        if self.n1.is_infinite() {
            return Err(Error::Domain(
                "the inflation scheme needs a transmitter observation (finite N1)".into(),
            ));
        }
        let (p, q, n0, n1, n2) = (self.p, self.q, self.n0, self.n1, self.n2);
        if q * p == 0.0 || n2 == 0.0 {
            return Ok(0.0);
        }
        // both branches cancel Q (and N2) out of the ratio before dividing, so
        // a perfect transmitter observation collapses to P/(P+N0) with no
        // rounding residue
        let tx_term = (1.0 + (p + n0) / q) * n1;
        if n2.is_infinite() {
            return Ok(p / ((p + n0) + tx_term));
        }
        Ok(p / ((p + n0) * ((n1 + n2) / n2) + tx_term))
    }
}

/// Capacity when only the transmitter observes the interference:
/// `C(P / (Q·N1/(Q+N1) + N0))`.
///
/// Matches the full channel with `N2 = +∞`; kept as a separate algebraic
/// route so the two can be cross-checked.
pub fn capacity_tx_only(p: f64, q: f64, n0: f64, n1: f64) -> Result<Rate> {
    let ch = DirtyPaperChannel::new(p, q, n0, n1, f64::INFINITY)?;
    let residual = if q == 0.0 || n1 == 0.0 {
        0.0
    } else if n1.is_infinite() {
        q
    } else {
        q * n1 / (q + n1)
    };
    Ok(Rate::new_unchecked(
        0.5 * (ch.p() / (residual + n0)).ln_1p(),
    ))
}

/// Capacity when only the receiver observes the interference:
/// `C(P / (Q·N2/(Q+N2) + N0))`.  Mirror image of [`capacity_tx_only`].
pub fn capacity_rx_only(p: f64, q: f64, n0: f64, n2: f64) -> Result<Rate> {
    let ch = DirtyPaperChannel::new(p, q, n0, f64::INFINITY, n2)?;
    let residual = if q == 0.0 || n2 == 0.0 {
        0.0
    } else if n2.is_infinite() {
        q
    } else {
        q * n2 / (q + n2)
    };
    Ok(Rate::new_unchecked(
        0.5 * (ch.p() / (residual + n0)).ln_1p(),
    ))
}

/// A collection of independent noisy looks at one interference process:
/// some taken at the transmitter, some at the receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    q: f64,
    tx_variances: Vec<f64>,
    rx_variances: Vec<f64>,
}

impl ObservationSet {
    pub fn new(q: f64, tx_variances: Vec<f64>, rx_variances: Vec<f64>) -> Result<Self> {
        if !is_nonneg_finite(q) {
            return Err(Error::Domain(format!("Q must be finite and >= 0, got {q}")));
        }
        for &v in tx_variances.iter().chain(&rx_variances) {
            check_obs_noise("an observation variance", v)?;
        }
        Ok(ObservationSet {
            q,
            tx_variances,
            rx_variances,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn tx_variances(&self) -> &[f64] {
        &self.tx_variances
    }
    pub fn rx_variances(&self) -> &[f64] {
        &self.rx_variances
    }

    /// Pooled residual fraction `μ̂ = 1/(1 + Σ_i Q/N_i)` over every
    /// observation on both sides.  With no observations at all, `μ̂ = 1`.
    pub fn residual_fraction(&self) -> f64 {
        let sum: f64 = self
            .tx_variances
            .iter()
            .chain(&self.rx_variances)
            .map(|&n| if n.is_infinite() { 0.0 } else { self.q / n })
            .sum();
        1.0 / (1.0 + sum)
    }
}

/// Capacity with any number of independent observations on each side:
/// `C(P / (μ̂·Q + N0))` with the pooled `μ̂` of
/// [`ObservationSet::residual_fraction`].
///
/// Where each side holds exactly one observation this reduces to the
/// two-observation channel; which side holds an observation never matters.
pub fn capacity_multi_obs(obs: &ObservationSet, p: f64, n0: f64) -> Result<Rate> {
    if !is_nonneg_finite(p) {
        return Err(Error::Domain(format!("P must be finite and >= 0, got {p}")));
    }
    if !n0.is_finite() || n0 < 0.0 {
        return Err(Error::Domain(format!("N0 must be finite and >= 0, got {n0}")));
    }
    if n0 == 0.0 {
        return Err(Error::Unsupported(
            "N0 = 0 gives a noiseless channel with infinite capacity".into(),
        ));
    }
    let mu = obs.residual_fraction();
    Ok(Rate::new_unchecked(0.5 * (p / (mu * obs.q + n0)).ln_1p()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::cap;
    use proptest::prelude::*;

    const INF: f64 = f64::INFINITY;

    fn ch(p: f64, q: f64, n0: f64, n1: f64, n2: f64) -> DirtyPaperChannel {
        DirtyPaperChannel::new(p, q, n0, n1, n2).unwrap()
    }

    #[test]
    fn residual_fraction_splits_evenly_for_unit_parameters() {
        let mu = ch(1.0, 1.0, 1.0, 1.0, 1.0).residual_fraction().unwrap();
        assert!((mu - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn perfect_observation_on_either_side_kills_the_residual() {
        assert_eq!(ch(1.0, 2.0, 1.0, 0.0, 5.0).residual_fraction().unwrap(), 0.0);
        assert_eq!(ch(1.0, 2.0, 1.0, 5.0, 0.0).residual_fraction().unwrap(), 0.0);
    }

    #[test]
    fn no_observations_leave_all_interference() {
        assert_eq!(ch(1.0, 2.0, 1.0, INF, INF).residual_fraction().unwrap(), 1.0);
    }

    #[test]
    fn nearly_useless_observations_leave_nearly_all_interference() {
        let mu = ch(1.0, 1.0, 1.0, 1e9, 1e9).residual_fraction().unwrap();
        assert!(mu > 1.0 - 1e-8);
    }

    #[test]
    fn residual_fraction_undefined_without_interference() {
        assert!(matches!(
            ch(1.0, 0.0, 1.0, 1.0, 1.0).residual_fraction(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn capacity_for_unit_parameters() {
        let c = ch(1.0, 1.0, 1.0, 1.0, 1.0).capacity();
        assert!((c.nats() - 0.5 * 1.75f64.ln()).abs() < 1e-15);
        assert!((c.bits() - 0.5 * 1.75f64.ln() / std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn perfect_tx_observation_with_no_rx_observation_recovers_clean_rate() {
        // canonical writing-on-dirty-paper corner: N1 = 0, N2 = +inf
        let c = ch(1.0, 10.0, 1.0, 0.0, INF).capacity();
        assert_eq!(c.nats(), cap(1.0).unwrap().nats());
    }

    #[test]
    fn no_interference_bypasses_the_residual_fraction() {
        assert_eq!(ch(3.0, 0.0, 1.5, 1.0, 1.0).capacity().nats(), cap(2.0).unwrap().nats());
    }

    #[test]
    fn channel_construction_rejects_bad_parameters() {
        assert!(matches!(
            DirtyPaperChannel::new(-1.0, 1.0, 1.0, 1.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DirtyPaperChannel::new(1.0, 1.0, 0.0, 1.0, 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            DirtyPaperChannel::new(1.0, 1.0, 1.0, -0.5, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DirtyPaperChannel::new(f64::INFINITY, 1.0, 1.0, 1.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DirtyPaperChannel::new(1.0, 1.0, f64::NAN, 1.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tx_only_matches_the_full_channel_with_absent_rx_observation() {
        for &(p, q, n0, n1) in &[
            (1.0, 1.0, 1.0, 1.0),
            (5.0, 2.0, 0.5, 3.0),
            (0.7, 12.0, 2.0, 0.25),
        ] {
            let direct = capacity_tx_only(p, q, n0, n1).unwrap().nats();
            let full = ch(p, q, n0, n1, INF).capacity().nats();
            assert!((direct - full).abs() < 1e-12, "({p},{q},{n0},{n1})");
        }
    }

    #[test]
    fn tx_only_limits() {
        // perfect observation
        assert_eq!(capacity_tx_only(1.0, 7.0, 1.0, 0.0).unwrap().nats(), cap(1.0).unwrap().nats());
        // worthless observation
        assert_eq!(
            capacity_tx_only(1.0, 2.0, 1.0, INF).unwrap().nats(),
            cap(1.0 / 3.0).unwrap().nats()
        );
        // overwhelming interference saturates the residual at N1
        let r = capacity_tx_only(1.0, 1e15, 1.0, 2.0).unwrap().nats();
        assert!((r - cap(1.0 / 3.0).unwrap().nats()).abs() < 1e-9);
    }

    #[test]
    fn rx_only_mirrors_tx_only() {
        for &(p, q, n0, n) in &[(1.0, 1.0, 1.0, 1.0), (4.0, 9.0, 0.5, 2.5)] {
            assert_eq!(
                capacity_tx_only(p, q, n0, n).unwrap().nats(),
                capacity_rx_only(p, q, n0, n).unwrap().nats()
            );
        }
    }

    #[test]
    fn multi_obs_with_no_observations_treats_interference_as_noise() {
        let obs = ObservationSet::new(2.0, vec![], vec![]).unwrap();
        assert_eq!(obs.residual_fraction(), 1.0);
        assert_eq!(
            capacity_multi_obs(&obs, 1.0, 1.0).unwrap().nats(),
            cap(1.0 / 3.0).unwrap().nats()
        );
    }

    #[test]
    fn four_unit_variance_observations_pool_their_precision() {
        let obs = ObservationSet::new(1.0, vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert!((obs.residual_fraction() - 0.2).abs() < 1e-15);
        let c = capacity_multi_obs(&obs, 1.0, 1.0).unwrap().nats();
        assert!((c - cap(1.0 / 1.2).unwrap().nats()).abs() < 1e-15);
    }

    #[test]
    fn single_observation_per_side_reduces_to_the_two_observation_channel() {
        let obs = ObservationSet::new(3.0, vec![0.8], vec![2.2]).unwrap();
        let pooled = capacity_multi_obs(&obs, 1.5, 0.9).unwrap().nats();
        let direct = ch(1.5, 3.0, 0.9, 0.8, 2.2).capacity().nats();
        assert!((pooled - direct).abs() < 1e-12);
    }

    #[test]
    fn one_perfect_observation_dominates_the_pool() {
        let obs = ObservationSet::new(5.0, vec![1.0, 0.0], vec![9.0]).unwrap();
        assert_eq!(obs.residual_fraction(), 0.0);
        assert_eq!(
            capacity_multi_obs(&obs, 2.0, 1.0).unwrap().nats(),
            cap(2.0).unwrap().nats()
        );
    }

    #[test]
    fn rate_at_optimal_alpha_meets_capacity() {
        for &(p, q, n0, n1, n2) in &[
            (1.0, 1.0, 1.0, 1.0, 1.0),
            (5.0, 2.0, 1.0, 0.5, 3.0),
            (10.0, 20.0, 2.0, 4.0, 1.0),
            (3.0, 0.7, 0.4, 1.5, INF),
        ] {
            let c = ch(p, q, n0, n1, n2);
            let a = c.optimal_alpha().unwrap();
            let r = c.rate_of_alpha(a).unwrap().nats();
            assert!(
                (r - c.capacity().nats()).abs() < 1e-12,
                "({p},{q},{n0},{n1},{n2}): {r} vs {}",
                c.capacity().nats()
            );
        }
    }

    #[test]
    fn zero_alpha_without_rx_observation_treats_interference_as_noise() {
        let c = ch(1.0, 2.0, 1.0, 1.0, INF);
        let r = c.rate_of_alpha(0.0).unwrap().nats();
        assert!((r - cap(1.0 / 3.0).unwrap().nats()).abs() < 1e-14);
    }

    #[test]
    fn zero_alpha_with_rx_observation_only_uses_the_receiver_side() {
        let c = ch(1.0, 2.0, 1.0, 1.0, 4.0);
        let r = c.rate_of_alpha(0.0).unwrap().nats();
        let rx = capacity_rx_only(1.0, 2.0, 1.0, 4.0).unwrap().nats();
        assert!((r - rx).abs() < 1e-14);
    }

    #[test]
    fn wild_alpha_clamps_to_zero_rate() {
        let c = ch(1.0, 1.0, 1.0, 1.0, 1.0);
        assert_eq!(c.rate_of_alpha(1e6).unwrap().nats(), 0.0);
        assert!(matches!(c.rate_of_alpha(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn optimal_alpha_for_unit_parameters_is_one_seventh() {
        let a = ch(1.0, 1.0, 1.0, 1.0, 1.0).optimal_alpha().unwrap();
        assert!((a - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn optimal_alpha_degenerate_cases_return_zero() {
        assert_eq!(ch(0.0, 1.0, 1.0, 1.0, 1.0).optimal_alpha().unwrap(), 0.0);
        assert_eq!(ch(1.0, 0.0, 1.0, 1.0, 1.0).optimal_alpha().unwrap(), 0.0);
        assert_eq!(ch(1.0, 1.0, 1.0, 1.0, 0.0).optimal_alpha().unwrap(), 0.0);
    }

    #[test]
    fn optimal_alpha_with_perfect_tx_and_no_rx_is_the_classic_coefficient() {
        // N1 = 0, N2 -> inf: alpha* = P/(P+N0), independent of Q
        for &q in &[0.1, 1.0, 42.0] {
            let a = ch(3.0, q, 2.0, 0.0, INF).optimal_alpha().unwrap();
            assert_eq!(a, 3.0 / 5.0);
            let a_surrogate = ch(3.0, q, 2.0, 0.0, 1e12).optimal_alpha().unwrap();
            assert!((a_surrogate - 3.0 / 5.0).abs() < 1e-6);
        }
    }

    #[test]
    fn inflation_scheme_requires_a_transmitter_observation() {
        let c = ch(1.0, 1.0, 1.0, INF, 1.0);
        assert!(matches!(c.rate_of_alpha(0.1), Err(Error::Domain(_))));
        assert!(matches!(c.optimal_alpha(), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn capacity_is_symmetric_in_the_two_observations(
            p in 0.1f64..50.0, q in 0.1f64..50.0, n0 in 0.1f64..10.0,
            n1 in 0.05f64..20.0, n2 in 0.05f64..20.0,
        ) {
            let a = ch(p, q, n0, n1, n2).capacity().nats();
            let b = ch(p, q, n0, n2, n1).capacity().nats();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn capacity_sits_strictly_between_the_all_noise_and_clean_rates(
            p in 0.1f64..50.0, q in 0.1f64..50.0, n0 in 0.1f64..10.0,
            n1 in 0.05f64..20.0, n2 in 0.05f64..20.0,
        ) {
            let c = ch(p, q, n0, n1, n2);
            let lo = cap(p / (q + n0)).unwrap().nats();
            let hi = cap(p / n0).unwrap().nats();
            prop_assert!(c.capacity().nats() > lo);
            prop_assert!(c.capacity().nats() < hi);
        }

        #[test]
        fn capacity_improves_with_better_observations_and_more_power(
            p in 0.1f64..50.0, q in 0.1f64..50.0, n0 in 0.1f64..10.0,
            n1 in 0.05f64..20.0, n2 in 0.05f64..20.0,
        ) {
            let base = ch(p, q, n0, n1, n2).capacity().nats();
            // worse observation never helps
            prop_assert!(ch(p, q, n0, n1 * 2.0, n2).capacity().nats() <= base);
            // more transmit power never hurts
            prop_assert!(ch(p * 2.0, q, n0, n1, n2).capacity().nats() >= base);
        }

        #[test]
        fn optimal_alpha_beats_every_sampled_alpha(
            p in 0.1f64..20.0, q in 0.1f64..20.0, n0 in 0.1f64..5.0,
            n1 in 0.05f64..10.0, n2 in 0.05f64..10.0,
            probe in -1.0f64..1.0,
        ) {
            let c = ch(p, q, n0, n1, n2);
            let best = c.rate_of_alpha(c.optimal_alpha().unwrap()).unwrap().nats();
            prop_assert!(c.rate_of_alpha(probe).unwrap().nats() <= best + 1e-10);
        }

        #[test]
        fn pooled_capacity_ignores_which_side_holds_an_observation(
            q in 0.1f64..20.0, p in 0.1f64..20.0, n0 in 0.1f64..5.0,
            v in proptest::collection::vec(0.05f64..20.0, 1..6),
            split in 0usize..6,
        ) {
            let k = split.min(v.len());
            let all_tx = ObservationSet::new(q, v.clone(), vec![]).unwrap();
            let split_set = ObservationSet::new(q, v[..k].to_vec(), v[k..].to_vec()).unwrap();
            let a = capacity_multi_obs(&all_tx, p, n0).unwrap().nats();
            let b = capacity_multi_obs(&split_set, p, n0).unwrap().nats();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
