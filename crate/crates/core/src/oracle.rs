//! Independent cross-checks for the closed-form results in this crate.
//!
//! Every formula elsewhere in the library has a second, structurally
//! different route to the same number collected here:
//!
//! * [`determinant_capacity`] — capacity as a Gaussian mutual information
//!   `I(X; Y, M1, M2)` evaluated from a joint covariance matrix, instead of
//!   the one-line residual-fraction expression.
//! * [`scheme_covariance`] — the full covariance of the auxiliary-coding
//!   variables `(U, X, Y, M1, M2)`, from which the achievable rate
//!   `I(U; Y, M2) − I(U; M1)` can be assembled entropy by entropy.
//! * [`grid_argmax_alpha`] — brute-force search over the inflation
//!   coefficient, checking the closed-form optimum.
//! * [`mc_mutual_info`] — a seeded Monte-Carlo estimate of any of the above
//!   mutual informations from simulated samples.
//! * [`exponent_by_maximization`] — the error exponent recomputed by
//!   numerically maximizing the Gallager function the closed form solves.
//!
//! The oracles trade speed and elegance for independence; production code
//! should use the closed forms, tests should compare the two.

use crate::dpc::DirtyPaperChannel;
use crate::error::{Error, Result};
use crate::gaussian::{mutual_info, CovarianceMatrix, Rate};
use crate::linalg::psd_factor;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Finite stand-in for an absent observation (`N = +∞`) in covariance-based
/// oracles, which cannot hold infinite entries.  Large enough that the
/// observation is worthless (capacity error on the order of `1e-12` nats),
/// small enough that determinants stay inside `f64` range.
pub const OBSERVATION_SURROGATE: f64 = 1e12;

fn finite_obs(n: f64) -> f64 {
    if n.is_infinite() {
        OBSERVATION_SURROGATE
    } else {
        n
    }
}

/// Row/column order of the joint covariance matrices built here.
pub mod scheme_index {
    /// Auxiliary codeword `U = X + α·M1`.
    pub const U: usize = 0;
    /// Transmitted signal `X`.
    pub const X: usize = 1;
    /// Channel output `Y = X + S + Z0`.
    pub const Y: usize = 2;
    /// Transmitter-side observation `M1 = S + Z1`.
    pub const M1: usize = 3;
    /// Receiver-side observation `M2 = S + Z2`.
    pub const M2: usize = 4;
}

/// Capacity recomputed as `I(X; Y, M1, M2)` from the 4×4 joint covariance of
/// `(X, Y, M1, M2)`, with infinite observation noises replaced by
/// [`OBSERVATION_SURROGATE`].
///
/// Exercises a completely different code path from
/// [`DirtyPaperChannel::capacity`]: covariance assembly, determinants, and
/// differential entropies instead of one logarithm.  Degenerate corners
/// (`P = 0`, or `Q = 0` together with a zero observation noise) make the
/// covariance singular and surface as a degenerate-distribution error.
pub fn determinant_capacity(ch: &DirtyPaperChannel) -> Result<Rate> {
    let (p, q, n0) = (ch.p(), ch.q(), ch.n0());
    let n1 = finite_obs(ch.n1());
    let n2 = finite_obs(ch.n2());
    let cov = CovarianceMatrix::new(vec![
        vec![p, p, 0.0, 0.0],
        vec![p, p + q + n0, q, q],
        vec![0.0, q, q + n1, q],
        vec![0.0, q, q, q + n2],
    ])?;
    mutual_info(&cov, &[0], &[1, 2, 3])
}

/// Joint covariance of the auxiliary-coding variables `(U, X, Y, M1, M2)`
/// with `U = X + α·M1`, rows and columns ordered as in [`scheme_index`].
///
/// The matrix is singular by construction — `U` is a linear combination of
/// `X` and `M1` — so it admits no Cholesky factor; sampling goes through the
/// eigenvalue-based [`psd_factor`] route instead.  Infinite observation
/// noises are replaced by [`OBSERVATION_SURROGATE`].
pub fn scheme_covariance(ch: &DirtyPaperChannel, alpha: f64) -> Result<CovarianceMatrix> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
    }
    let (p, q, n0) = (ch.p(), ch.q(), ch.n0());
    let n1 = finite_obs(ch.n1());
    let n2 = finite_obs(ch.n2());
    let a = alpha;
    CovarianceMatrix::new(vec![
        vec![p + a * a * (q + n1), p, p + a * q, a * (q + n1), a * q],
        vec![p, p, p, 0.0, 0.0],
        vec![p + a * q, p, p + q + n0, q, q],
        vec![a * (q + n1), 0.0, q, q + n1, q],
        vec![a * q, 0.0, q, q, q + n2],
    ])
}

/// Brute-force maximization of [`DirtyPaperChannel::rate_of_alpha`] over the
/// grid `lo, lo+step, lo+2·step, …` up to `hi`.  Returns the maximizing
/// coefficient; exact ties go to the smallest one.
///
/// Requires `lo < hi`, `step > 0`, and at most `1e7` grid points.
pub fn grid_argmax_alpha(ch: &DirtyPaperChannel, lo: f64, hi: f64, step: f64) -> Result<f64> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::Domain(format!(
            "need a finite interval with lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Domain(format!("step must be > 0, got {step}")));
    }
    let count = ((hi - lo) / step).floor();
    if count > 1e7 {
        return Err(Error::Domain(format!(
            "grid of {count} points exceeds the 1e7 limit"
        )));
    }
    let count = count as usize;
    let mut best_alpha = lo;
    let mut best_rate = ch.rate_of_alpha(lo)?.nats();
    for i in 1..=count {
        let alpha = lo + step * i as f64;
        let r = ch.rate_of_alpha(alpha)?.nats();
        if r > best_rate {
            best_alpha = alpha;
            best_rate = r;
        }
    }
    Ok(best_alpha)
}

/// How many samples to draw and from which generator stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub samples: u64,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        if samples < 100 {
            return Err(Error::Domain(format!(
                "need at least 100 samples for a meaningful estimate, got {samples}"
            )));
        }
        Ok(SampleSpec { samples, seed })
    }
}

/// Standard normal variates from a seeded ChaCha stream via the polar
/// (Marsaglia) transform.  Deterministic for a given seed across platforms:
/// the only floating-point operations are arithmetic, `sqrt`, and `ln`.
struct GaussianSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianSource {
    fn new(seed: u64) -> Self {
        GaussianSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on `[0, 1)` from the top 53 bits of one `u64` draw.
    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let m = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * m);
                return u * m;
            }
        }
    }
}

/// Monte-Carlo estimate of a mutual information between two groups of the
/// auxiliary-coding variables of [`scheme_covariance`]`(ch, alpha)`.
///
/// Draws `spec.samples` joint Gaussian vectors (deterministically in
/// `spec.seed`), forms the empirical covariance, and evaluates the Gaussian
/// mutual information of the *empirical* matrix.  Groups index into
/// [`scheme_index`] order.  The estimate converges at the usual
/// `O(1/√samples)` pace; at `10^6` samples the error is a few times `10^-4`
/// nats for well-conditioned instances.
pub fn mc_mutual_info(
    ch: &DirtyPaperChannel,
    alpha: f64,
    group_a: &[usize],
    group_b: &[usize],
    spec: SampleSpec,
) -> Result<Rate> {
    let cov = scheme_covariance(ch, alpha)?;
    let nats = mc_mutual_info_of(&cov, group_a, group_b, spec)?;
    Ok(Rate::new_unchecked(nats))
}

/// The sampling core behind [`mc_mutual_info`], usable with any covariance.
pub(crate) fn mc_mutual_info_of(
    cov: &CovarianceMatrix,
    group_a: &[usize],
    group_b: &[usize],
    spec: SampleSpec,
) -> Result<f64> {
    // revalidate: SampleSpec fields are pub, so it may not have gone through new()
    let spec = SampleSpec::new(spec.samples, spec.seed)?;
    // validate the groups (and the exact MI's existence) before spending
    // time on sampling
    mutual_info(cov, group_a, group_b)?;

    let d = cov.dim();
    let factor = psd_factor(cov.raw(), d);
    let mut src = GaussianSource::new(spec.seed);

    let mut sums = vec![0.0f64; d];
    let mut prods = vec![0.0f64; d * d]; // upper triangle used
    let mut z = vec![0.0f64; d];
    let mut x = vec![0.0f64; d];
    for _ in 0..spec.samples {
        for zi in z.iter_mut() {
            *zi = src.next();
        }
        for i in 0..d {
            let row = &factor[i * d..(i + 1) * d];
            x[i] = row.iter().zip(&z).map(|(f, zj)| f * zj).sum();
        }
        for i in 0..d {
            sums[i] += x[i];
            for j in i..d {
                prods[i * d + j] += x[i] * x[j];
            }
        }
    }

    let n = spec.samples as f64;
    let mut emp = vec![vec![0.0f64; d]; d];
    for i in 0..d {
        for j in i..d {
            let c = (prods[i * d + j] - sums[i] * sums[j] / n) / (n - 1.0);
            emp[i][j] = c;
            emp[j][i] = c;
        }
    }
    let emp = CovarianceMatrix::new(emp)?;
    Ok(mutual_info(&emp, group_a, group_b)?.nats())
}

/// `E0(ρ)` for the power-constrained Gaussian channel at SNR `snr`, with the
/// inner tilt parameter set to its optimum for the given `ρ` (the optimum
/// solves a quadratic; see [`exponent_by_maximization`]).
fn e0_at(snr: f64, rho: f64) -> f64 {
    let b = 0.5 / (1.0 + rho);
    let k = 2.0 * (1.0 + rho) * snr;
    let coeff = k * b - (1.0 + rho);
    let mut a = (-coeff + (coeff * coeff + 4.0 * k * b).sqrt()) / (2.0 * k);
    let a_max = 0.5 / snr;
    if a > a_max {
        a = a_max;
    }
    (1.0 + rho) * (0.5 - a * snr)
        + 0.5 * std::f64::consts::LN_2
        + 0.5 * (1.0 + rho) * (2.0 * snr * (a + b)).ln()
        + 0.5 * ((1.0 + rho) * a * b / (a + b)).ln()
}

/// Random-coding exponent recomputed as `max_{ρ∈[0,1]} [E0(ρ) − ρR]` by
/// direct numerical maximization (coarse grid, then golden-section
/// refinement), where `E0` is the Gallager function of the power-constrained
/// Gaussian channel with the inner tilt optimized analytically.
///
/// This is the definition the closed-form piecewise exponent solves; the two
/// agree to better than `1e-9` over the practical range while sharing no
/// algebraic steps.  Tolerates `snr = 0` (exponent zero).
pub fn exponent_by_maximization(snr: f64, rate: Rate) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(format!(
            "SNR must be finite and >= 0, got {snr}"
        )));
    }
    if snr == 0.0 {
        return Ok(0.0);
    }
    let r = rate.nats();
    let f = |rho: f64| e0_at(snr, rho) - rho * r;

    // coarse grid to bracket the maximum
    const GRID: usize = 200;
    let mut best_i = 0;
    let mut best_v = f(0.0);
    for i in 1..=GRID {
        let rho = i as f64 / GRID as f64;
        let v = f(rho);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = if best_i == 0 {
        0.0
    } else {
        (best_i - 1) as f64 / GRID as f64
    };
    let hi = if best_i == GRID {
        1.0
    } else {
        (best_i + 1) as f64 / GRID as f64
    };

    // golden-section refinement on the bracket
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let refined = fc.max(fd);

    Ok(refined.max(best_v).max(f(0.0)).max(f(1.0)).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::DecodeSetting;
    use scheme_index::{M1, M2, U, X, Y};

    const CHANNELS: [(f64, f64, f64, f64, f64); 5] = [
        (1.0, 1.0, 1.0, 1.0, 1.0),
        (5.0, 2.0, 1.0, 0.5, 3.0),
        (10.0, 20.0, 2.0, 4.0, 1.0),
        (0.5, 8.0, 1.5, 2.0, 2.0),
        (3.0, 0.7, 0.4, 1.5, 6.0),
    ];

    fn ch(t: (f64, f64, f64, f64, f64)) -> DirtyPaperChannel {
        DirtyPaperChannel::new(t.0, t.1, t.2, t.3, t.4).unwrap()
    }

    fn spec(samples: u64, seed: u64) -> SampleSpec {
        SampleSpec::new(samples, seed).unwrap()
    }

    #[test]
    fn determinant_route_matches_closed_capacity() {
        for &t in &CHANNELS {
            let c = ch(t);
            let det = determinant_capacity(&c).unwrap().nats();
            let closed = c.capacity().nats();
            assert!(
                (det - closed).abs() < 1e-12,
                "{t:?}: det {det} vs closed {closed}"
            );
        }
    }

    #[test]
    fn determinant_route_handles_absent_observations_via_surrogate() {
        let c = DirtyPaperChannel::new(2.0, 5.0, 1.0, 3.0, f64::INFINITY).unwrap();
        let det = determinant_capacity(&c).unwrap().nats();
        assert!((det - c.capacity().nats()).abs() < 1e-9);
    }

    #[test]
    fn determinant_route_without_interference_is_the_clean_rate() {
        // Q = 0: the observations are pure noise, independent of the signal
        let c = DirtyPaperChannel::new(3.0, 0.0, 1.5, 1.0, 2.0).unwrap();
        let det = determinant_capacity(&c).unwrap().nats();
        assert!((det - c.capacity().nats()).abs() < 1e-12);
    }

    #[test]
    fn determinant_route_is_symmetric_in_the_observations() {
        let a = determinant_capacity(&ch((2.0, 3.0, 1.0, 0.7, 4.0))).unwrap();
        let b = determinant_capacity(&ch((2.0, 3.0, 1.0, 4.0, 0.7))).unwrap();
        assert!((a.nats() - b.nats()).abs() < 1e-12);
    }

    #[test]
    fn determinant_route_flags_degenerate_channels() {
        // P = 0: the signal group has zero variance
        let c = DirtyPaperChannel::new(0.0, 5.0, 1.0, 3.0, 2.0).unwrap();
        assert!(matches!(
            determinant_capacity(&c),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn scheme_covariance_at_alpha_zero_collapses_u_onto_x() {
        let c = ch(CHANNELS[0]);
        let cov = scheme_covariance(&c, 0.0).unwrap();
        for j in 0..5 {
            assert_eq!(cov.get(U, j), cov.get(X, j), "col {j}");
            assert_eq!(cov.get(j, U), cov.get(j, X), "row {j}");
        }
    }

    #[test]
    fn scheme_covariance_u_variance_is_p_plus_alpha_sq_q_plus_n1() {
        let c = ch(CHANNELS[0]);
        let cov = scheme_covariance(&c, 1.0 / 7.0).unwrap();
        assert!((cov.get(U, U) - (1.0 + 2.0 / 49.0)).abs() < 1e-15);
    }

    #[test]
    fn scheme_covariance_reproduces_capacity_two_ways() {
        for &t in &CHANNELS {
            let c = ch(t);
            let alpha = c.optimal_alpha().unwrap();
            let cov = scheme_covariance(&c, alpha).unwrap();
            let closed = c.capacity().nats();

            let direct = mutual_info(&cov, &[X], &[Y, M1, M2]).unwrap().nats();
            assert!((direct - closed).abs() < 1e-9, "{t:?}: I(X;Y,M1,M2)");

            let coding = mutual_info(&cov, &[U], &[Y, M2]).unwrap().nats()
                - mutual_info(&cov, &[U], &[M1]).unwrap().nats();
            assert!((coding - closed).abs() < 1e-9, "{t:?}: I(U;Y,M2)-I(U;M1)");
        }
    }

    #[test]
    fn scheme_covariance_is_singular_but_factorable() {
        let c = ch(CHANNELS[1]);
        let cov = scheme_covariance(&c, c.optimal_alpha().unwrap()).unwrap();
        // U = X + alpha*M1 exactly: the matrix has a null direction
        let scale: f64 = (0..5).map(|i| cov.get(i, i)).fold(0.0, f64::max);
        assert!(cov.determinant().abs() < 1e-9 * scale.powi(5));
        // eigen-based factorization still reconstructs it
        let f = psd_factor(cov.raw(), 5);
        for i in 0..5 {
            for j in 0..5 {
                let mut s = 0.0;
                for k in 0..5 {
                    s += f[i * 5 + k] * f[j * 5 + k];
                }
                assert!(
                    (s - cov.get(i, j)).abs() < 1e-9 * scale,
                    "({i},{j}): {s} vs {}",
                    cov.get(i, j)
                );
            }
        }
    }

    #[test]
    fn grid_search_confirms_the_closed_form_alpha() {
        for &t in &CHANNELS {
            let c = ch(t);
            let astar = c.optimal_alpha().unwrap();
            let agrid = grid_argmax_alpha(&c, -1.0, 1.0, 1e-3).unwrap();
            assert!((agrid - astar).abs() <= 1e-3 + 1e-12, "{t:?}: {agrid} vs {astar}");
        }
    }

    #[test]
    fn grid_search_flat_objective_ties_to_the_smallest_alpha() {
        // zero power: every alpha achieves rate zero
        let c = DirtyPaperChannel::new(0.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(grid_argmax_alpha(&c, 0.0, 1.0, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn grid_search_validates_its_arguments() {
        let c = ch(CHANNELS[0]);
        assert!(matches!(
            grid_argmax_alpha(&c, 1.0, 0.0, 0.1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            grid_argmax_alpha(&c, 0.0, 1.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            grid_argmax_alpha(&c, 0.0, 1.0, 1e-9),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            grid_argmax_alpha(&c, 0.0, f64::INFINITY, 0.1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mc_estimate_is_deterministic_in_the_seed() {
        let c = ch(CHANNELS[0]);
        let alpha = c.optimal_alpha().unwrap();
        let a = mc_mutual_info(&c, alpha, &[X], &[Y, M1, M2], spec(10_000, 42)).unwrap();
        let b = mc_mutual_info(&c, alpha, &[X], &[Y, M1, M2], spec(10_000, 42)).unwrap();
        assert_eq!(a.nats(), b.nats());
        let other = mc_mutual_info(&c, alpha, &[X], &[Y, M1, M2], spec(10_000, 43)).unwrap();
        assert_ne!(a.nats(), other.nats());
    }

    #[test]
    fn mc_estimate_approaches_the_closed_form_capacity() {
        let c = ch(CHANNELS[1]);
        let alpha = c.optimal_alpha().unwrap();
        let est = mc_mutual_info(&c, alpha, &[X], &[Y, M1, M2], spec(200_000, 7)).unwrap();
        let exact = c.capacity().nats();
        assert!((est.nats() - exact).abs() < 5e-3, "{} vs {exact}", est.nats());
    }

    #[test]
    fn mc_estimate_of_independent_groups_is_near_zero() {
        // X and M1 are uncorrelated in the scheme covariance
        let c = ch(CHANNELS[0]);
        let est = mc_mutual_info(&c, 0.3, &[X], &[M1], spec(100_000, 5)).unwrap();
        assert!(est.nats() < 5e-3, "{}", est.nats());
    }

    #[test]
    fn mc_errors_shrink_with_more_samples() {
        // median over seeds so a single lucky small-sample draw cannot flip
        // the comparison
        let c = ch(CHANNELS[1]);
        let alpha = c.optimal_alpha().unwrap();
        let exact = c.capacity().nats();
        let median_err = |samples: u64| {
            let mut errs: Vec<f64> = (0..15u64)
                .map(|seed| {
                    let est =
                        mc_mutual_info(&c, alpha, &[X], &[Y, M1, M2], spec(samples, seed))
                            .unwrap();
                    (est.nats() - exact).abs()
                })
                .collect();
            errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            errs[errs.len() / 2]
        };
        let coarse = median_err(4_000);
        let fine = median_err(64_000);
        assert!(
            fine < coarse,
            "median error did not shrink: {coarse:e} -> {fine:e}"
        );
    }

    #[test]
    fn mc_validates_inputs_before_sampling() {
        let c = ch(CHANNELS[0]);
        assert!(matches!(SampleSpec::new(99, 0), Err(Error::Domain(_))));
        assert!(SampleSpec::new(100, 0).is_ok());
        // overlapping groups are rejected by the exact-MI pre-check
        assert!(matches!(
            mc_mutual_info(&c, 0.1, &[X], &[X], spec(1000, 0)),
            Err(Error::Domain(_))
        ));
        // out-of-range index
        assert!(matches!(
            mc_mutual_info(&c, 0.1, &[X], &[7], spec(1000, 0)),
            Err(Error::Domain(_))
        ));
        // a literally-constructed spec below the floor is still rejected
        assert!(matches!(
            mc_mutual_info(&c, 0.1, &[X], &[Y], SampleSpec { samples: 2, seed: 0 }),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn maximization_oracle_matches_the_closed_form_exponent() {
        // log-spaced SNRs, rates spread over (0, 1.2*C]
        let mut worst = 0.0f64;
        for i in 0..20 {
            let snr = 0.05 * (50.0f64 / 0.05).powf(i as f64 / 19.0);
            let c = 0.5 * snr.ln_1p();
            for j in 1..=20 {
                let r = Rate::from_nats(1.2 * c * j as f64 / 20.0).unwrap();
                let closed = DecodeSetting::new(snr, r).unwrap().random_coding_exponent();
                let oracle = exponent_by_maximization(snr, r).unwrap();
                worst = worst.max((closed - oracle).abs());
            }
        }
        assert!(worst < 1e-9, "max deviation {worst:e}");
    }

    #[test]
    fn maximization_oracle_edge_cases() {
        let r = Rate::from_nats(0.5).unwrap();
        assert_eq!(exponent_by_maximization(0.0, r).unwrap(), 0.0);
        assert!(matches!(
            exponent_by_maximization(-1.0, r),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            exponent_by_maximization(f64::NAN, r),
            Err(Error::Domain(_))
        ));
        // far above capacity the best rho is 0 and the exponent is exactly 0
        assert_eq!(
            exponent_by_maximization(1.0, Rate::from_nats(10.0).unwrap()).unwrap(),
            0.0
        );
    }
}
