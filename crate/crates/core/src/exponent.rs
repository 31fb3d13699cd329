//! Random-coding error exponents for the power-constrained Gaussian channel.
//!
//! A decoder that observes a signal at effective signal-to-noise ratio `A`
//! and tries to decode a rate-`R` random Gaussian codebook over `m` symbols
//! fails with probability at most `exp(−m·E(A, R))`, where `E` is the
//! exponent computed here.  `E` is positive strictly below capacity, zero at
//! and above it, and piecewise: linear in `R` with slope `−1` below the
//! critical rate, curved between the critical rate and capacity.

use crate::dpc::DirtyPaperChannel;
use crate::error::{Error, Result};
use crate::gaussian::Rate;

/// `γ = 1/2 + A/4 + (1/2)·√(1 + A²/4)`, the tilt parameter the two branch
/// expressions share.
fn gamma(a: f64) -> f64 {
    0.5 + 0.25 * a + 0.5 * (1.0 + 0.25 * a * a).sqrt()
}

/// Exponent expression valid for rates between the critical rate and
/// capacity.  With `β = e^{2R}` and `s = √(1 + 4β/(A(β−1)))`:
///
/// ```text
/// E = (A/4β)·[(β+1) − (β−1)s] + (1/2)·ln[β − (A(β−1)/2)(s−1)]
/// ```
///
/// evaluated in the cancellation-free rearrangement
/// `E = A/(2β) − 1/(s+1) + (1/2)·ln(βx) − ln(s+1)` with `x = 4β/(A(β−1))`,
/// which is identical because `s − 1 = x/(s+1)`.
fn middle_branch_raw(a: f64, r: f64) -> f64 {
    let beta_m1 = (2.0 * r).exp_m1();
    let beta = 1.0 + beta_m1;
    let x = 4.0 * beta / (a * beta_m1);
    let s = (1.0 + x).sqrt();
    0.5 * a / beta - 1.0 / (s + 1.0) + 0.5 * (beta * x).ln() - (s + 1.0).ln()
}

/// Exponent expression valid for rates below the critical rate: linear with
/// slope `−1`, intercept `1 − γ + A/2 + (1/2)·ln(γ − A/2) + (1/2)·ln γ`.
fn low_branch_raw(a: f64, r: f64) -> f64 {
    let g = gamma(a);
    // γ − A/2 = 1/2 − A/4 + (1/2)√(1+A²/4), always > 1/2
    let g_minus_half_a = 0.5 - 0.25 * a + 0.5 * (1.0 + 0.25 * a * a).sqrt();
    1.0 - g + 0.5 * a + 0.5 * g_minus_half_a.ln() + 0.5 * g.ln() - r
}

/// Full piecewise exponent, tolerant of `a = 0` (zero-capacity channel,
/// exponent identically zero) and of `r = 0` (which always lands in the
/// low-rate branch, since the critical rate is positive for `a > 0`).
pub(crate) fn exponent_raw(a: f64, r: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let c = 0.5 * a.ln_1p();
    if r > c {
        return 0.0;
    }
    let delta = 0.5 * gamma(a).ln();
    if r >= delta {
        middle_branch_raw(a, r).max(0.0)
    } else {
        low_branch_raw(a, r)
    }
}

/// A single-user Gaussian decoding problem: a rate-`R` codebook heard at
/// effective signal-to-noise ratio `A1 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeSetting {
    a1: f64,
    rate: Rate,
}

impl DecodeSetting {
    /// A decoding problem at SNR `a1` (finite, strictly positive) and
    /// codebook rate `rate` (strictly positive).
    pub fn new(a1: f64, rate: Rate) -> Result<Self> {
        if !a1.is_finite() || a1 <= 0.0 {
            return Err(Error::Domain(format!(
                "effective SNR must be finite and > 0, got {a1}"
            )));
        }
        if rate.nats() <= 0.0 {
            return Err(Error::Domain(
                "the codebook rate must be strictly positive".into(),
            ));
        }
        Ok(DecodeSetting { a1, rate })
    }

    /// The decoding problem seen through a noisy-interference channel:
    /// effective SNR `P/(μQ + N0)`.  Requires `P > 0`.
    pub fn from_channel(ch: &DirtyPaperChannel, rate: Rate) -> Result<Self> {
        let denom = if ch.q() == 0.0 {
            ch.n0()
        } else {
            let mu = ch.residual_fraction().expect("Q > 0 was just checked");
            mu * ch.q() + ch.n0()
        };
        DecodeSetting::new(ch.p() / denom, rate)
    }

    pub fn snr(&self) -> f64 {
        self.a1
    }

    pub fn rate(&self) -> Rate {
        self.rate
    }

    /// `C = (1/2)·ln(1 + A1)`, where the exponent hits zero.  Depends only
    /// on the SNR.
    pub fn capacity(&self) -> Rate {
        Rate::new_unchecked(0.5 * self.a1.ln_1p())
    }

    /// The critical rate `δ = (1/2)·ln γ` below which the exponent is linear
    /// in the rate.  Always in `(0, C)`; depends only on the SNR.
    pub fn critical_rate(&self) -> Rate {
        Rate::new_unchecked(0.5 * gamma(self.a1).ln())
    }

    /// The random-coding exponent at this setting's rate, in nats.  Zero at
    /// and above capacity; positive below.
    pub fn random_coding_exponent(&self) -> f64 {
        exponent_raw(self.a1, self.rate.nats())
    }

    /// The branch expression valid on `[critical_rate, capacity]`, exposed
    /// so the two branches can be compared where they meet.  Outside that
    /// interval its value is meaningless.
    pub fn middle_branch_at(&self, rate: Rate) -> f64 {
        middle_branch_raw(self.a1, rate.nats())
    }

    /// The branch expression valid on `(0, critical_rate]`; linear in the
    /// rate with slope `−1`.
    pub fn low_rate_branch_at(&self, rate: Rate) -> f64 {
        low_branch_raw(self.a1, rate.nats())
    }
}

/// Natural log of the random-coding bound on the decoding error probability
/// over a block of `symbols` channel uses: `ln Pe ≤ −symbols·exponent`.
///
/// Kept in the log domain — never exponentiated here — so block lengths in
/// the millions cannot overflow.  Requires a finite `exponent ≥ 0` and
/// `symbols ≥ 1`.
pub fn log_error_bound(exponent: f64, symbols: u64) -> Result<f64> {
    if !exponent.is_finite() || exponent < 0.0 {
        return Err(Error::Domain(format!(
            "exponent must be finite and >= 0, got {exponent}"
        )));
    }
    if symbols == 0 {
        return Err(Error::Domain("block length must be at least 1".into()));
    }
    Ok(-(symbols as f64) * exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setting(a: f64, r: f64) -> DecodeSetting {
        DecodeSetting::new(a, Rate::from_nats(r).unwrap()).unwrap()
    }

    fn rate(r: f64) -> Rate {
        Rate::from_nats(r).unwrap()
    }

    #[test]
    fn pinned_exponent_values() {
        // spot values computed independently at double precision
        let cases = [
            (10.0, 0.3, 0.7079806643153057),
            (10.0, 1.0, 0.04590945560428006),
            (2.0, 0.2, 0.1870064220432513),
            (0.5, 0.1, 0.025152409480888357),
            (1.0, 0.05, 0.16965356265451242),
        ];
        for (a, r, want) in cases {
            let got = setting(a, r).random_coding_exponent();
            assert!(
                (got - want).abs() < 1e-12,
                "E({a}, {r}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn pinned_critical_rate_and_capacity() {
        let s = setting(10.0, 0.3);
        assert!((s.critical_rate().nats() - 0.8568547958740372).abs() < 1e-15);
        assert!((s.capacity().nats() - 1.1989476363991853).abs() < 1e-15);
        let s = setting(1.0, 0.3);
        assert!((s.critical_rate().nats() - 0.1346382347796308).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_the_critical_rate() {
        for &a in &[0.1, 1.0, 3.6, 10.0, 42.0] {
            let s = setting(a, 0.01);
            let d = s.critical_rate();
            let diff = (s.middle_branch_at(d) - s.low_rate_branch_at(d)).abs();
            assert!(diff < 1e-12, "A={a}: branch gap {diff:e}");
        }
    }

    #[test]
    fn exponent_vanishes_at_and_above_capacity() {
        for &a in &[0.1, 1.0, 10.0, 42.0] {
            let c = setting(a, 0.01).capacity().nats();
            assert!(setting(a, c - 1e-6).random_coding_exponent() < 1e-9, "A={a}");
            assert_eq!(setting(a, c + 1e-6).random_coding_exponent(), 0.0);
            assert_eq!(setting(a, 10.0 * c + 1.0).random_coding_exponent(), 0.0);
        }
    }

    #[test]
    fn low_branch_has_slope_minus_one() {
        let d = setting(5.0, 0.01).critical_rate().nats();
        let e1 = setting(5.0, 0.1 * d).random_coding_exponent();
        let e2 = setting(5.0, 0.6 * d).random_coding_exponent();
        assert!((e1 - e2 - 0.5 * d).abs() < 1e-13);
    }

    #[test]
    fn zero_snr_raw_exponent_is_zero() {
        assert_eq!(exponent_raw(0.0, 0.0), 0.0);
        assert_eq!(exponent_raw(0.0, 0.5), 0.0);
    }

    #[test]
    fn raw_exponent_at_rate_zero_uses_the_low_branch() {
        // delta > 0 for any positive SNR, so r = 0 is strictly below it and
        // the middle branch's division by beta - 1 = 0 is never reached
        let e = exponent_raw(3.0, 0.0);
        assert!(e.is_finite());
        assert!((e - low_branch_raw(3.0, 0.0)).abs() < 1e-15);
    }

    #[test]
    fn setting_validation() {
        let r = rate(0.3);
        assert!(matches!(DecodeSetting::new(0.0, r), Err(Error::Domain(_))));
        assert!(matches!(DecodeSetting::new(-1.0, r), Err(Error::Domain(_))));
        assert!(matches!(
            DecodeSetting::new(f64::INFINITY, r),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DecodeSetting::new(f64::NAN, r),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            DecodeSetting::new(1.0, rate(0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn setting_from_channel_uses_the_residual_interference() {
        let ch = DirtyPaperChannel::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let s = DecodeSetting::from_channel(&ch, rate(0.1)).unwrap();
        // mu = 1/3, so A1 = 1/(1/3 + 1) = 3/4
        assert!((s.snr() - 0.75).abs() < 1e-15);
        assert_eq!(s.capacity().nats(), ch.capacity().nats());
        // and at that capacity the exponent is (numerically) zero
        let at_cap = DecodeSetting::from_channel(&ch, ch.capacity()).unwrap();
        assert!(at_cap.random_coding_exponent() < 1e-12);
    }

    #[test]
    fn setting_from_channel_rejects_zero_power() {
        let ch = DirtyPaperChannel::new(0.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            DecodeSetting::from_channel(&ch, rate(0.1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn log_bound_is_minus_block_length_times_exponent() {
        assert_eq!(log_error_bound(0.5, 100).unwrap(), -50.0);
        assert_eq!(log_error_bound(0.0, 12345).unwrap(), 0.0);
        let e = setting(10.0, 0.3).random_coding_exponent();
        assert!((log_error_bound(e, 200).unwrap() - (-200.0 * e)).abs() < 1e-12);
    }

    #[test]
    fn log_bound_validation() {
        assert!(matches!(log_error_bound(0.5, 0), Err(Error::Domain(_))));
        assert!(matches!(log_error_bound(-0.1, 10), Err(Error::Domain(_))));
        assert!(matches!(
            log_error_bound(f64::NAN, 10),
            Err(Error::Domain(_))
        ));
    }

    proptest! {
        #[test]
        fn exponent_is_nonnegative_and_nonincreasing_in_rate(
            a in 0.05f64..50.0,
            t1 in 0.01f64..1.2,
            t2 in 0.01f64..1.2,
        ) {
            let c = setting(a, 0.01).capacity().nats();
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let e_lo = setting(a, lo * c).random_coding_exponent();
            let e_hi = setting(a, hi * c).random_coding_exponent();
            prop_assert!(e_lo >= 0.0 && e_hi >= 0.0);
            prop_assert!(e_lo >= e_hi - 1e-12);
        }

        #[test]
        fn exponent_is_nondecreasing_in_snr(
            a in 0.05f64..50.0,
            r in 0.001f64..0.5,
        ) {
            let e1 = setting(a, r).random_coding_exponent();
            let e2 = setting(a * 1.5, r).random_coding_exponent();
            prop_assert!(e2 >= e1 - 1e-12);
        }

        #[test]
        fn critical_rate_sits_strictly_inside_the_capacity_interval(
            a in 1e-3f64..1e3,
        ) {
            let s = setting(a, 0.01);
            prop_assert!(s.critical_rate().nats() > 0.0);
            prop_assert!(s.critical_rate().nats() < s.capacity().nats());
        }

        #[test]
        fn exponent_is_strictly_positive_below_capacity(
            a in 0.05f64..50.0,
            t in 0.05f64..0.95,
        ) {
            let c = setting(a, 0.01).capacity().nats();
            prop_assert!(setting(a, t * c).random_coding_exponent() > 0.0);
        }
    }
}
