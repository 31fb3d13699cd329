//! Dense routines for the tiny symmetric matrices this crate works with
//! (dimension at most eight).  Hand-rolled on purpose: cofactor expansion is
//! exact on the small integer matrices used to pin the determinant down, and
//! keeping the whole path in-crate means the verification oracles share no
//! code with any external solver.

/// Determinant by cofactor expansion along the first row.  Exact for integer
/// entries whose minors stay inside the 53-bit mantissa; intended for n <= 4.
pub(crate) fn det_cofactor(a: &[f64], n: usize) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    match n {
        0 => 1.0,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        _ => {
            let mut det = 0.0;
            let mut minor = vec![0.0; (n - 1) * (n - 1)];
            for col in 0..n {
                for i in 1..n {
                    let mut k = 0;
                    for j in 0..n {
                        if j == col {
                            continue;
                        }
                        minor[(i - 1) * (n - 1) + k] = a[i * n + j];
                        k += 1;
                    }
                }
                let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * a[col] * det_cofactor(&minor, n - 1);
            }
            det
        }
    }
}

/// Determinant by LU factorization with partial pivoting; the workhorse for
/// n >= 5 where cofactor expansion starts to cost and lose accuracy.
pub(crate) fn det_lu(a: &[f64], n: usize) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        for i in (k + 1)..n {
            if m[i * n + k].abs() > m[piv * n + k].abs() {
                piv = i;
            }
        }
        if m[piv * n + k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = m[k * n + k];
        det *= pivot;
        for i in (k + 1)..n {
            let f = m[i * n + k] / pivot;
            for j in k..n {
                m[i * n + j] -= f * m[k * n + j];
            }
        }
    }
    det
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations.  Returns `(values, vectors)` with `vectors` column-major:
/// column j (entries `vectors[i*n + j]`) is the eigenvector for `values[j]`.
pub(crate) fn jacobi_eigen(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| m[i * n + i]).collect();
    (values, v)
}

/// Factor a positive semidefinite matrix as `F * F^T` for sampling.  Tries
/// plain Cholesky first; a pivot at or below the positivity tolerance means
/// the matrix is singular (or nearly so), and the routine falls back to the
/// eigendecomposition with negative eigenvalues clamped to zero.
pub(crate) fn psd_factor(a: &[f64], n: usize) -> Vec<f64> {
    if let Some(l) = cholesky(a, n) {
        return l;
    }
    let (vals, vecs) = jacobi_eigen(a, n);
    let mut f = vec![0.0; n * n];
    for j in 0..n {
        let s = vals[j].max(0.0).sqrt();
        for i in 0..n {
            f[i * n + j] = vecs[i * n + j] * s;
        }
    }
    f
}

fn cholesky(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let max_diag = (0..n).map(|i| a[i * n + i].abs()).fold(0.0f64, f64::max);
    let tol = 1e-12 * max_diag.max(1e-300);
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= tol {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactor_and_lu_agree_on_dense_matrices() {
        let a = vec![
            2.0, 1.0, 0.5, 0.0, //
            1.0, 3.0, 1.0, 0.2, //
            0.5, 1.0, 2.5, 0.7, //
            0.0, 0.2, 0.7, 1.8,
        ];
        let dc = det_cofactor(&a, 4);
        let dl = det_lu(&a, 4);
        assert!((dc - dl).abs() < 1e-12 * dc.abs(), "{dc} vs {dl}");
    }

    #[test]
    fn lu_determinant_is_zero_for_singular_input() {
        // second row is twice the first
        let a = vec![1.0, 2.0, 2.0, 4.0];
        assert_eq!(det_lu(&a, 2), 0.0);
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let (mut vals, _) = jacobi_eigen(&[2.0, 1.0, 1.0, 2.0], 2);
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_vectors_reconstruct_the_matrix() {
        let a = vec![
            4.0, 1.0, 0.0, 0.5, //
            1.0, 3.0, 1.0, 0.0, //
            0.0, 1.0, 2.0, 1.0, //
            0.5, 0.0, 1.0, 5.0,
        ];
        let n = 4;
        let (vals, vecs) = jacobi_eigen(&a, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += vecs[i * n + k] * vals[k] * vecs[j * n + k];
                }
                assert!((s - a[i * n + j]).abs() < 1e-10, "({i},{j}): {s}");
            }
        }
    }

    #[test]
    fn psd_factor_handles_a_singular_matrix() {
        // rank-1: outer product of (1, 2)
        let a = vec![1.0, 2.0, 2.0, 4.0];
        let f = psd_factor(&a, 2);
        for i in 0..2 {
            for j in 0..2 {
                let s: f64 = (0..2).map(|k| f[i * 2 + k] * f[j * 2 + k]).sum();
                assert!((s - a[i * 2 + j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn psd_factor_matches_cholesky_on_positive_definite_input() {
        let a = vec![4.0, 2.0, 2.0, 3.0];
        let f = psd_factor(&a, 2);
        // Cholesky path: lower triangular with positive diagonal
        assert!(f[1] == 0.0 && f[0] > 0.0 && f[3] > 0.0);
    }
}
