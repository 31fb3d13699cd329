//! Achievable rates for a secondary transmitter–receiver pair sharing the
//! band with a primary transmitter.
//!
//! The secondary transmitter `C` sends to the secondary receiver `D` over a
//! link with gain `h_CD` while a primary transmitter `A` (power `P_A`, rate
//! `R`) interferes, heard at `C` with gain `h_AC` and at `D` with gain
//! `h_AD`.  Depending on how strong those two gains are relative to the
//! decode thresholds, the best known strategy changes qualitatively, giving
//! five regimes ([`CaseId`]):
//!
//! * the interference is strong enough at `D` to decode and subtract
//!   outright ([`CaseId::UbAchieving`] — the interference-free upper bound
//!   is achieved);
//! * too weak at both nodes to do anything but absorb it into the noise
//!   floor ([`CaseId::TreatAsNoise`]);
//! * decodable at exactly one node, which then cancels what it can
//!   ([`CaseId::RxOnlyDpc`], [`CaseId::TxOnlyDpc`]);
//! * decodable at both ([`CaseId::BothDpc`]).
//!
//! In the transmitter-side cases `C` spends the first `m` of `n` symbols
//! listening to the primary, then dirty-paper-codes against its (imperfect)
//! estimate in the remaining `n − m`, boosting power by `n/(n−m)` to keep
//! the block average at `P_C`.  The decode-failure probabilities enter as
//! equivalent observation noises, shrinking the cancellable share of the
//! interference to a residual fraction `μ` — the same `μ` mechanics as
//! [`DirtyPaperChannel`](crate::dpc::DirtyPaperChannel), fed by
//! random-coding error exponents instead of physical observation noise.

use crate::error::{Error, Result};
use crate::exponent::exponent_raw;
use crate::gaussian::Rate;
use crate::numeric::log_sum_exp;
use std::fmt;
use std::str::FromStr;

/// Which of the five operating regimes a network instance falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// Interference decodable at the receiver before the secondary message:
    /// the interference-free upper bound is achieved.
    UbAchieving,
    /// Interference too weak to decode anywhere: absorbed into the noise.
    TreatAsNoise,
    /// Only the receiver can decode the primary; it cancels the decoded
    /// share, no listening time is spent.
    RxOnlyDpc,
    /// Only the transmitter can decode; listen for `m` symbols, then
    /// dirty-paper-code against the estimate.
    TxOnlyDpc,
    /// Both nodes decode; listen for `m` symbols, both cancellations apply.
    BothDpc,
}

impl CaseId {
    /// Stable machine-readable name, as emitted in CSV/JSON output.
    pub fn token(&self) -> &'static str {
        match self {
            CaseId::UbAchieving => "UB_ACHIEVING",
            CaseId::TreatAsNoise => "TREAT_AS_NOISE",
            CaseId::RxOnlyDpc => "RX_ONLY_DPC",
            CaseId::TxOnlyDpc => "TX_ONLY_DPC",
            CaseId::BothDpc => "BOTH_DPC",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Which nodes have decoded the primary's codeword and can cancel it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoders {
    RxOnly,
    TxOnly,
    Both,
}

/// Decode-feasibility thresholds on the *squared* gains, all of the form
/// `noise·(e^{2R}−1)/P_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// `h_AC²` must exceed this for the transmitter to decode the primary.
    pub tx_decode: f64,
    /// `h_AD²` at or below this leaves the receiver unable to decode even
    /// with the secondary silent.
    pub rx_decode_lo: f64,
    /// `h_AD²` at or above this lets the receiver decode the primary while
    /// treating the *secondary's own signal* as noise — the upper bound
    /// becomes achievable.
    pub rx_decode_hi: f64,
}

/// A primary/secondary interference scenario: powers, noises, gains, the
/// primary's rate, and the block length available for listening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CognitiveNetwork {
    p_a: f64,
    p_c: f64,
    n_c: f64,
    n_d: f64,
    h_ac: f64,
    h_ad: f64,
    h_cd: f64,
    rate: Rate,
    block: u32,
}

fn check_gain(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "{name} must be finite and >= 0, got {v}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::Domain(format!(
            "{name} must be finite and > 0, got {v}"
        )));
    }
    Ok(())
}

impl CognitiveNetwork {
    /// Validates: `P_A, N_C, N_D > 0`; `P_C ≥ 0` (zero secondary power is a
    /// legal degenerate scenario with rate zero); gains finite and `≥ 0`;
    /// `rate > 0`; `block ≥ 2` (at least one symbol to listen and one to
    /// transmit).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p_a: f64,
        p_c: f64,
        n_c: f64,
        n_d: f64,
        h_ac: f64,
        h_ad: f64,
        h_cd: f64,
        rate: Rate,
        block: u32,
    ) -> Result<Self> {
        check_positive("P_A", p_a)?;
        if !p_c.is_finite() || p_c < 0.0 {
            return Err(Error::Domain(format!(
                "P_C must be finite and >= 0, got {p_c}"
            )));
        }
        check_positive("N_C", n_c)?;
        check_positive("N_D", n_d)?;
        check_gain("h_AC", h_ac)?;
        check_gain("h_AD", h_ad)?;
        check_gain("h_CD", h_cd)?;
        if rate.nats() <= 0.0 {
            return Err(Error::Domain(
                "the primary rate must be strictly positive".into(),
            ));
        }
        if block < 2 {
            return Err(Error::Domain(format!(
                "block length must be at least 2, got {block}"
            )));
        }
        Ok(CognitiveNetwork {
            p_a,
            p_c,
            n_c,
            n_d,
            h_ac,
            h_ad,
            h_cd,
            rate,
            block,
        })
    }

    pub fn p_a(&self) -> f64 {
        self.p_a
    }
    pub fn p_c(&self) -> f64 {
        self.p_c
    }
    pub fn n_c(&self) -> f64 {
        self.n_c
    }
    pub fn n_d(&self) -> f64 {
        self.n_d
    }
    pub fn h_ac(&self) -> f64 {
        self.h_ac
    }
    pub fn h_ad(&self) -> f64 {
        self.h_ad
    }
    pub fn h_cd(&self) -> f64 {
        self.h_cd
    }
    pub fn rate(&self) -> Rate {
        self.rate
    }
    pub fn block(&self) -> u32 {
        self.block
    }

    /// Interference power received at `D`: `Q = h_AD²·P_A`.
    fn interference_at_rx(&self) -> f64 {
        self.h_ad * self.h_ad * self.p_a
    }

    pub fn thresholds(&self) -> Thresholds {
        let g = (2.0 * self.rate.nats()).exp_m1();
        Thresholds {
            tx_decode: self.n_c * g / self.p_a,
            rx_decode_lo: self.n_d * g / self.p_a,
            rx_decode_hi: (self.p_c * self.h_cd * self.h_cd + self.n_d) * g / self.p_a,
        }
    }

    /// Places the instance in exactly one of the five regimes.  Boundary
    /// ties resolve toward the weaker assumption: `≥` keeps the upper-bound
    /// case, `≤` keeps the non-decoding case, so the five regions tile the
    /// `(h_AC², h_AD²)` quadrant with no gaps or overlaps.
    pub fn classify(&self) -> CaseId {
        let t = self.thresholds();
        let ac2 = self.h_ac * self.h_ac;
        let ad2 = self.h_ad * self.h_ad;
        if ad2 >= t.rx_decode_hi {
            return CaseId::UbAchieving;
        }
        if ac2 <= t.tx_decode {
            if ad2 <= t.rx_decode_lo {
                CaseId::TreatAsNoise
            } else {
                CaseId::RxOnlyDpc
            }
        } else if ad2 <= t.rx_decode_lo {
            CaseId::TxOnlyDpc
        } else {
            CaseId::BothDpc
        }
    }

    /// Rate with the interference absorbed into the noise floor:
    /// `C(h_CD²·P_C / (N_D + h_AD²·P_A))`.
    pub fn rate_lower_bound(&self) -> Rate {
        let snr = self.h_cd * self.h_cd * self.p_c / (self.n_d + self.interference_at_rx());
        Rate::new_unchecked(0.5 * snr.ln_1p())
    }

    /// Interference-free rate `C(h_CD²·P_C / N_D)`.
    pub fn rate_upper_bound(&self) -> Rate {
        let snr = self.h_cd * self.h_cd * self.p_c / self.n_d;
        Rate::new_unchecked(0.5 * snr.ln_1p())
    }

    /// Error exponent of the transmitter's attempt to decode the primary:
    /// SNR `h_AC²·P_A/N_C` at rate `R`.  Zero when the primary is
    /// undecodable at `C`.
    pub fn tx_decode_exponent(&self) -> f64 {
        exponent_raw(self.h_ac * self.h_ac * self.p_a / self.n_c, self.rate.nats())
    }

    /// Error exponent of the receiver's attempt: SNR `h_AD²·P_A/N_D` at
    /// rate `R`.
    pub fn rx_decode_exponent(&self) -> f64 {
        exponent_raw(self.h_ad * self.h_ad * self.p_a / self.n_d, self.rate.nats())
    }

    /// The fraction of the interference power that survives cancellation by
    /// the given decoders:
    ///
    /// ```text
    /// μ_t  = 1/(1 + 0.5·e^{m·E_C})            (transmitter only)
    /// μ_r  = 1/(1 + 0.5·e^{n·E_D})            (receiver only)
    /// μ_tr = 1/(1 + 0.5·e^{m·E_C} + 0.5·e^{n·E_D})
    /// ```
    ///
    /// where `E_C`/`E_D` are the decode exponents, the transmitter listens
    /// for `m` symbols, and the receiver uses the whole block of `n`.
    /// Everything is computed in the log domain, so block lengths in the
    /// millions cannot overflow; the result can still underflow to zero
    /// when `m·E` exceeds ≈ 745 (the true value is below the smallest
    /// subnormal).
    ///
    /// `m` must satisfy `1 ≤ m ≤ n−1` for [`Decoders::TxOnly`] and
    /// [`Decoders::Both`]; it is ignored for [`Decoders::RxOnly`].
    pub fn residual_mu(&self, m: u32, which: Decoders) -> Result<f64> {
        let x = || -> Result<f64> {
            if m < 1 || m >= self.block {
                return Err(Error::Domain(format!(
                    "listening length m={m} outside 1..={}",
                    self.block - 1
                )));
            }
            Ok(m as f64 * self.tx_decode_exponent())
        };
        let y = self.block as f64 * self.rx_decode_exponent();
        let ln_mu = match which {
            Decoders::TxOnly => -log_sum_exp(&[0.0, x()? - std::f64::consts::LN_2]),
            Decoders::RxOnly => -log_sum_exp(&[0.0, y - std::f64::consts::LN_2]),
            Decoders::Both => -log_sum_exp(&[
                0.0,
                x()? - std::f64::consts::LN_2,
                y - std::f64::consts::LN_2,
            ]),
        };
        Ok(ln_mu.exp())
    }

    /// Rate of the listen-then-cancel scheme at listening length `m`:
    ///
    /// ```text
    /// (1 − m/n)·C( h_CD²·P_C·n/(n−m) / (μ·h_AD²·P_A + N_D) )
    /// ```
    ///
    /// with `μ` for the chosen decoders.  [`Decoders::RxOnly`] has no
    /// listening split and is rejected.
    pub fn rate_at_m(&self, m: u32, which: Decoders) -> Result<Rate> {
        if which == Decoders::RxOnly {
            return Err(Error::Domain(
                "receiver-only cancellation uses the whole block; there is no listening length to choose".into(),
            ));
        }
        let mu = self.residual_mu(m, which)?;
        let n = self.block as f64;
        let mf = m as f64;
        let boost = n / (n - mf);
        let snr = self.h_cd * self.h_cd * self.p_c * boost / (mu * self.interference_at_rx() + self.n_d);
        Ok(Rate::new_unchecked((1.0 - mf / n) * 0.5 * snr.ln_1p()))
    }

    /// Exhaustive search of [`Self::rate_at_m`] over `m ∈ {1, …, n−1}`.
    /// Returns the maximizing `m` (smallest on ties) and its rate.  `m = n`
    /// is excluded: all listening and no transmission is always rate zero.
    pub fn optimize_m(&self, which: Decoders) -> Result<(u32, Rate)> {
        let mut best_m = 1;
        let mut best = self.rate_at_m(1, which)?;
        for m in 2..self.block {
            let r = self.rate_at_m(m, which)?;
            if r.nats() > best.nats() {
                best_m = m;
                best = r;
            }
        }
        Ok((best_m, best))
    }

    /// The best known strategy for this instance: classifies it, runs the
    /// per-regime rate expression (optimizing the listening length where one
    /// exists), and reports the result together with the two bounds.
    ///
    /// In the listening regimes the scheme competes against simply treating
    /// the interference as noise — which needs no listening time — so the
    /// reported rate is the larger of the two; the achieved rate therefore
    /// always lies in `[lower_bound, upper_bound]`.
    pub fn achievable_rate(&self) -> RateOutcome {
        let case_id = self.classify();
        let lower_bound = self.rate_lower_bound();
        let upper_bound = self.rate_upper_bound();
        let (rate, m_opt, mu_effective) = match case_id {
            CaseId::UbAchieving => (upper_bound, None, None),
            CaseId::TreatAsNoise => (lower_bound, None, Some(1.0)),
            CaseId::RxOnlyDpc => {
                let mu = self
                    .residual_mu(1, Decoders::RxOnly)
                    .expect("m is ignored for rx-only");
                let snr =
                    self.h_cd * self.h_cd * self.p_c / (mu * self.interference_at_rx() + self.n_d);
                (Rate::new_unchecked(0.5 * snr.ln_1p()), None, Some(mu))
            }
            CaseId::TxOnlyDpc | CaseId::BothDpc => {
                let which = if case_id == CaseId::TxOnlyDpc {
                    Decoders::TxOnly
                } else {
                    Decoders::Both
                };
                let (m, r) = self
                    .optimize_m(which)
                    .expect("block >= 2 guarantees a valid split");
                let mu = self
                    .residual_mu(m, which)
                    .expect("optimize_m returned a valid m");
                let rate = if r.nats() >= lower_bound.nats() {
                    r
                } else {
                    lower_bound
                };
                (rate, Some(m), Some(mu))
            }
        };
        RateOutcome {
            case_id,
            rate,
            m_opt,
            mu_effective,
            lower_bound,
            upper_bound,
        }
    }

    /// Evaluates the network over a grid of values for one parameter,
    /// holding everything else fixed.  Each grid value produces one row;
    /// values invalid for the variable (negative gains, fractional or
    /// out-of-range `m`/`n`) yield an error row rather than aborting the
    /// sweep.
    ///
    /// Sweeping over `m` requires an instance whose classification has a
    /// listening split ([`CaseId::TxOnlyDpc`] or [`CaseId::BothDpc`]);
    /// other regimes have no `m`-dependent rate at all.
    pub fn sweep(&self, variable: SweepVariable, grid: &[f64]) -> Result<Vec<SweepRow>> {
        if grid.is_empty() {
            return Err(Error::Domain("sweep grid must be nonempty".into()));
        }
        let mut rows = Vec::with_capacity(grid.len());
        match variable {
            SweepVariable::M => {
                let case_id = self.classify();
                let which = match case_id {
                    CaseId::TxOnlyDpc => Decoders::TxOnly,
                    CaseId::BothDpc => Decoders::Both,
                    other => {
                        return Err(Error::Unsupported(format!(
                            "an m sweep needs a listening regime (TX_ONLY_DPC or BOTH_DPC); this instance classifies as {other}"
                        )))
                    }
                };
                for &value in grid {
                    let point = as_index(value, 1, self.block as u64 - 1).and_then(|m| {
                        Ok(SweepPoint {
                            case_id,
                            rate: self.rate_at_m(m, which)?,
                            m_opt: Some(m),
                            mu_effective: Some(self.residual_mu(m, which)?),
                        })
                    });
                    rows.push(SweepRow { value, point });
                }
            }
            SweepVariable::HAd | SweepVariable::HAc => {
                for &value in grid {
                    let point = {
                        let mut net = *self;
                        if variable == SweepVariable::HAd {
                            check_gain("h_AD", value).map(|_| net.h_ad = value)
                        } else {
                            check_gain("h_AC", value).map(|_| net.h_ac = value)
                        }
                        .map(|_| SweepPoint::from(net.achievable_rate()))
                    };
                    rows.push(SweepRow { value, point });
                }
            }
            SweepVariable::N => {
                for &value in grid {
                    let point = as_index(value, 2, u32::MAX as u64).map(|n| {
                        let mut net = *self;
                        net.block = n;
                        SweepPoint::from(net.achievable_rate())
                    });
                    rows.push(SweepRow { value, point });
                }
            }
        }
        Ok(rows)
    }
}

/// Interprets a grid value as an integer in `[lo, hi]`, tolerating float
/// representation error of up to `1e-9`.
fn as_index(value: f64, lo: u64, hi: u64) -> Result<u32> {
    if !value.is_finite() {
        return Err(Error::Domain(format!("{value} is not a valid index")));
    }
    let r = value.round();
    if (value - r).abs() > 1e-9 {
        return Err(Error::Domain(format!("{value} is not an integer")));
    }
    if r < lo as f64 || r > hi as f64 {
        return Err(Error::Domain(format!(
            "{value} outside the valid range {lo}..={hi}"
        )));
    }
    Ok(r as u32)
}

/// The classified regime and its achieved rate, with the split point and
/// residual fraction where the regime has them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateOutcome {
    pub case_id: CaseId,
    pub rate: Rate,
    /// Optimal listening length; present exactly for the two listening
    /// regimes.
    pub m_opt: Option<u32>,
    /// Residual interference fraction at the operating point, in `(0, 1]`:
    /// `1` when nothing is decoded, absent when the interference is removed
    /// outright.
    pub mu_effective: Option<f64>,
    pub lower_bound: Rate,
    pub upper_bound: Rate,
}

/// Which parameter a [`CognitiveNetwork::sweep`] varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Listening length `m` (integer grid values).
    M,
    /// Gain from the primary to the secondary receiver.
    HAd,
    /// Gain from the primary to the secondary transmitter.
    HAc,
    /// Block length `n` (integer grid values).
    N,
}

impl FromStr for SweepVariable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(SweepVariable::M),
            "hAD" => Ok(SweepVariable::HAd),
            "hAC" => Ok(SweepVariable::HAc),
            "n" => Ok(SweepVariable::N),
            other => Err(Error::Domain(format!(
                "unknown sweep variable {other:?}; expected one of m, hAD, hAC, n"
            ))),
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::M => "m",
            SweepVariable::HAd => "hAD",
            SweepVariable::HAc => "hAC",
            SweepVariable::N => "n",
        })
    }
}

/// One evaluated grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub case_id: CaseId,
    pub rate: Rate,
    pub m_opt: Option<u32>,
    pub mu_effective: Option<f64>,
}

impl From<RateOutcome> for SweepPoint {
    fn from(o: RateOutcome) -> Self {
        SweepPoint {
            case_id: o.case_id,
            rate: o.rate,
            m_opt: o.m_opt,
            mu_effective: o.mu_effective,
        }
    }
}

/// One sweep row: the grid value and either the evaluated point or the
/// error that made this value invalid.
#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub point: Result<SweepPoint>,
}
