//! Rates, covariance matrices, and Gaussian information measures.
//!
//! Everything downstream reduces to two primitives:
//!
//! * the scalar rate function [`cap`], `C(x) = (1/2)·ln(1 + x)` in nats, and
//! * differential entropies of Gaussian vectors, from which [`mutual_info`]
//!   is assembled as `H(A) + H(B) − H(A ∪ B)`.
//!
//! Rates are carried in **nats** internally; thresholds elsewhere in the
//! crate take the form `e^{2R} − 1` and only stay exact in that unit.  Bits
//! are a display conversion, available through [`Rate::bits`] and
//! [`Rate::value_in`].

use crate::error::{Error, Result};
use crate::linalg;
use crate::numeric::is_nonneg_finite;
use std::f64::consts::{LN_2, PI};

/// Display units for a [`Rate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    /// Natural logarithm units (the internal representation).
    Nats,
    /// Base-2 units; `bits = nats / ln 2`.
    Bits,
}

impl std::str::FromStr for Unit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nats" => Ok(Unit::Nats),
            "bits" => Ok(Unit::Bits),
            other => Err(Error::Domain(format!(
                "unknown unit {other:?}; expected \"nats\" or \"bits\""
            ))),
        }
    }
}

impl std::fmt::Display for Unit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        })
    }
}

/// A non-negative information rate, stored in nats per channel use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rate(f64);

impl Rate {
    /// Wraps a rate given in nats.  Rejects negative or non-finite values.
    pub fn from_nats(nats: f64) -> Result<Self> {
        if !is_nonneg_finite(nats) {
            return Err(Error::Domain(format!(
                "a rate must be finite and non-negative, got {nats}"
            )));
        }
        Ok(Rate(nats))
    }

    // Internal fast path for values already known to be valid.
    pub(crate) fn new_unchecked(nats: f64) -> Self {
        debug_assert!(is_nonneg_finite(nats), "invalid rate {nats}");
        Rate(nats)
    }

    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        self.0 / LN_2
    }

    pub fn value_in(self, unit: Unit) -> f64 {
        match unit {
            Unit::Nats => self.nats(),
            Unit::Bits => self.bits(),
        }
    }
}

/// The scalar Gaussian rate function `C(x) = (1/2)·ln(1 + x)` in nats.
///
/// `x` is a signal-to-noise ratio and must be finite and non-negative.
pub fn cap(snr: f64) -> Result<Rate> {
    if !is_nonneg_finite(snr) {
        return Err(Error::Domain(format!(
            "SNR must be finite and non-negative, got {snr}"
        )));
    }
    Ok(Rate::new_unchecked(0.5 * snr.ln_1p()))
}

/// A small symmetric positive-semidefinite matrix (dimension 1..=8).
///
/// Construction checks squareness, exact symmetry, finiteness, and
/// positive semidefiniteness (eigenvalues no lower than `−1e-10` times the
/// largest diagonal entry).
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    dim: usize,
    data: Vec<f64>, // row-major
}

impl CovarianceMatrix {
    pub const MAX_DIM: usize = 8;

    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > Self::MAX_DIM {
            return Err(Error::Domain(format!(
                "dimension must be 1..={}, got {dim}",
                Self::MAX_DIM
            )));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::Domain(format!(
                    "matrix must be square: found a row of length {} in a {dim}-dimensional matrix",
                    row.len()
                )));
            }
            for &x in row {
                if !x.is_finite() {
                    return Err(Error::Domain(format!("non-finite entry {x}")));
                }
                data.push(x);
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::Domain(format!(
                        "not symmetric at ({i},{j}): {} vs {}",
                        data[i * dim + j],
                        data[j * dim + i]
                    )));
                }
            }
        }
        let max_diag = (0..dim).map(|i| data[i * dim + i]).fold(0.0f64, f64::max);
        let (eigs, _) = linalg::jacobi_eigen(&data, dim);
        let floor = -1e-10 * max_diag.max(0.0);
        if let Some(bad) = eigs.iter().find(|&&l| l < floor) {
            return Err(Error::Domain(format!(
                "not positive semidefinite: eigenvalue {bad} below tolerance {floor}"
            )));
        }
        Ok(CovarianceMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at row `i`, column `j` (zero-based).  Panics out of range.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        self.data[i * self.dim + j]
    }

    /// Determinant: cofactor expansion up to 4×4 (exact on small integer
    /// matrices), LU with partial pivoting above that.
    pub fn determinant(&self) -> f64 {
        if self.dim <= 4 {
            linalg::det_cofactor(&self.data, self.dim)
        } else {
            linalg::det_lu(&self.data, self.dim)
        }
    }

    pub(crate) fn raw(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn principal_submatrix(&self, idx: &[usize]) -> CovarianceMatrix {
        let k = idx.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                data.push(self.data[i * self.dim + j]);
            }
        }
        CovarianceMatrix { dim: k, data }
    }
}

// ln(2·π·e) = ln(2π) + 1
fn ln_two_pi_e() -> f64 {
    (2.0 * PI).ln() + 1.0
}

/// Differential entropy `h = (1/2)·ln((2πe)^dim · det Σ)` in nats.
///
/// Errors with [`Error::Degenerate`] when the determinant is not strictly
/// positive.
pub fn gaussian_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    let det = sigma.determinant();
    if det <= 0.0 {
        return Err(Error::Degenerate(format!(
            "covariance determinant {det} is not positive; the distribution has collapsed"
        )));
    }
    Ok(0.5 * (sigma.dim() as f64 * ln_two_pi_e() + det.ln()))
}

/// Mutual information `I(A;B) = H(A) + H(B) − H(A ∪ B)` in nats between two
/// disjoint groups of coordinates of a joint Gaussian vector.
///
/// A tiny negative result (above `−1e-9`, pure rounding) clamps to zero; a
/// larger negative value is reported as an internal-consistency error.
pub fn mutual_info(joint: &CovarianceMatrix, group_a: &[usize], group_b: &[usize]) -> Result<Rate> {
    if group_a.is_empty() || group_b.is_empty() {
        return Err(Error::Domain("both coordinate groups must be non-empty".into()));
    }
    let mut seen = [false; CovarianceMatrix::MAX_DIM];
    for &i in group_a.iter().chain(group_b) {
        if i >= joint.dim() {
            return Err(Error::Domain(format!(
                "coordinate {i} out of range for a {}-dimensional joint",
                joint.dim()
            )));
        }
        if seen[i] {
            return Err(Error::Domain(format!(
                "coordinate {i} appears twice; groups must be disjoint and duplicate-free"
            )));
        }
        seen[i] = true;
    }
    let union: Vec<usize> = group_a.iter().chain(group_b).copied().collect();
    let h_a = gaussian_entropy(&joint.principal_submatrix(group_a))?;
    let h_b = gaussian_entropy(&joint.principal_submatrix(group_b))?;
    let h_ab = gaussian_entropy(&joint.principal_submatrix(&union))?;
    let mi = h_a + h_b - h_ab;
    if mi < -1e-9 {
        return Err(Error::Inconsistency(format!(
            "mutual information came out {mi}, beyond what rounding can explain"
        )));
    }
    Ok(Rate::new_unchecked(mi.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: &[&[f64]]) -> CovarianceMatrix {
        CovarianceMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn cap_of_unit_snr_is_half_ln_two() {
        let r = cap(1.0).unwrap();
        assert!((r.nats() - 0.5 * LN_2).abs() < 1e-15);
        assert!((r.bits() - 0.5).abs() < 1e-15, "one SNR is half a bit");
    }

    #[test]
    fn cap_of_zero_is_zero() {
        assert_eq!(cap(0.0).unwrap().nats(), 0.0);
    }

    #[test]
    fn cap_rejects_negative_and_non_finite_snr() {
        assert!(matches!(cap(-1e-9), Err(Error::Domain(_))));
        assert!(matches!(cap(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(cap(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn rate_unit_conversion_round_trips() {
        let r = Rate::from_nats(0.75).unwrap();
        assert!((r.bits() * LN_2 - r.nats()).abs() < 1e-15);
        assert_eq!(r.value_in(Unit::Nats), 0.75);
    }

    #[test]
    fn rate_rejects_negative_values() {
        assert!(Rate::from_nats(-0.1).is_err());
        assert!(Rate::from_nats(f64::INFINITY).is_err());
    }

    #[test]
    fn determinant_of_scalar_matrix() {
        assert_eq!(cm(&[&[2.0]]).determinant(), 2.0);
    }

    #[test]
    fn determinant_of_integer_three_by_three_is_exact() {
        let m = cm(&[&[3.0, 1.0, 1.0], &[1.0, 2.0, 1.0], &[1.0, 1.0, 2.0]]);
        assert_eq!(m.determinant(), 7.0);
    }

    #[test]
    fn determinant_paths_agree_across_the_dispatch_boundary() {
        // 5x5 uses LU; embed a known 5x5 PSD integer matrix B·Bᵀ and compare
        // against exact integer cofactor arithmetic on B.
        let b: [[i64; 5]; 5] = [
            [1, 0, 2, -1, 0],
            [0, 1, 1, 0, 1],
            [2, 1, 3, 0, 0],
            [-1, 0, 0, 2, 1],
            [0, 1, 0, 1, 2],
        ];
        fn idet(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            let mut d = 0;
            for c in 0..n {
                let minor: Vec<Vec<i64>> = (1..n)
                    .map(|i| (0..n).filter(|&j| j != c).map(|j| m[i][j]).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                d += s * m[0][c] * idet(&minor);
            }
            d
        }
        let bi: Vec<Vec<i64>> = b.iter().map(|r| r.to_vec()).collect();
        let expected = idet(&bi) * idet(&bi); // det(B Bᵀ) = det(B)²
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| (0..5).map(|k| (b[i][k] * b[j][k]) as f64).sum())
                    .collect()
            })
            .collect();
        let m = CovarianceMatrix::new(rows).unwrap();
        let d = m.determinant();
        assert!(
            (d - expected as f64).abs() <= 1e-12 * (expected as f64).abs(),
            "LU determinant {d} vs exact {expected}"
        );
    }

    #[test]
    fn construction_rejects_asymmetry_and_non_psd() {
        assert!(CovarianceMatrix::new(vec![vec![1.0, 0.5], vec![0.4, 1.0]]).is_err());
        // eigenvalues 3 and -1
        assert!(CovarianceMatrix::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
        assert!(CovarianceMatrix::new(vec![vec![1.0, 0.0], vec![0.0]]).is_err());
        assert!(CovarianceMatrix::new(vec![]).is_err());
        assert!(CovarianceMatrix::new(vec![vec![f64::NAN]]).is_err());
    }

    #[test]
    fn construction_accepts_singular_psd_matrices() {
        // rank-1, eigenvalues {5, 0}
        assert!(CovarianceMatrix::new(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).is_ok());
    }

    #[test]
    fn entropy_of_a_scalar_gaussian() {
        let h = gaussian_entropy(&cm(&[&[4.0]])).unwrap();
        let expected = 0.5 * (2.0 * PI * std::f64::consts::E * 4.0).ln();
        assert!((h - expected).abs() < 1e-14);
    }

    #[test]
    fn entropy_is_additive_for_independent_coordinates() {
        let joint = cm(&[&[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0], &[0.0, 0.0, 0.5]]);
        let lhs = gaussian_entropy(&joint).unwrap();
        let rhs: f64 = [2.0, 3.0, 0.5]
            .iter()
            .map(|&v| gaussian_entropy(&cm(&[&[v]])).unwrap())
            .sum();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_collapsed_distributions() {
        let singular = cm(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(gaussian_entropy(&singular), Err(Error::Degenerate(_))));
    }

    #[test]
    fn mutual_info_of_signal_plus_noise_is_half_ln_two() {
        // X ~ N(0,1), Y = X + Z with Z ~ N(0,1)
        let joint = cm(&[&[1.0, 1.0], &[1.0, 2.0]]);
        let mi = mutual_info(&joint, &[0], &[1]).unwrap();
        assert!((mi.nats() - 0.5 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn mutual_info_vanishes_for_independent_blocks() {
        let joint = cm(&[&[1.0, 0.0, 0.0], &[0.0, 2.0, 0.5], &[0.0, 0.5, 1.0]]);
        assert_eq!(mutual_info(&joint, &[0], &[1, 2]).unwrap().nats(), 0.0);
    }

    #[test]
    fn mutual_info_is_symmetric_in_its_groups() {
        let joint = cm(&[
            &[2.0, 0.3, 0.1, 0.0],
            &[0.3, 1.5, 0.2, 0.4],
            &[0.1, 0.2, 1.0, 0.1],
            &[0.0, 0.4, 0.1, 3.0],
        ]);
        let ab = mutual_info(&joint, &[0, 2], &[1, 3]).unwrap().nats();
        let ba = mutual_info(&joint, &[1, 3], &[0, 2]).unwrap().nats();
        assert!((ab - ba).abs() < 1e-10);
    }

    #[test]
    fn mutual_info_rejects_bad_groups() {
        let joint = cm(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(mutual_info(&joint, &[0], &[0]), Err(Error::Domain(_))));
        assert!(matches!(mutual_info(&joint, &[], &[1]), Err(Error::Domain(_))));
        assert!(matches!(mutual_info(&joint, &[0], &[5]), Err(Error::Domain(_))));
        assert!(matches!(
            mutual_info(&joint, &[0, 0], &[1]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mutual_info_reports_collapsed_subgroups() {
        let joint = CovarianceMatrix::new(vec![
            vec![1.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(
            mutual_info(&joint, &[0, 1], &[2]),
            Err(Error::Degenerate(_))
        ));
    }
}
