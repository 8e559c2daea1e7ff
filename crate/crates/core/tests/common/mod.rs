//! Reference eigensolver for cross-checking inertia counts.
//!
//! Deliberately independent of the library's factorization path: the
//! generalized problem K x = lambda M x is reduced with a bidiagonal
//! Cholesky factor of M and handed to a dense cyclic Jacobi
//! diagonalization. Only meant for small grids.

/// Cholesky factor (diagonal, subdiagonal) of a symmetric positive
/// definite tridiagonal matrix.
fn tridiag_cholesky(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut l_diag = vec![0.0; n];
    let mut l_sub = vec![0.0; n.saturating_sub(1)];
    l_diag[0] = diag[0].sqrt();
    assert!(l_diag[0] > 0.0, "mass matrix not positive definite");
    for i in 1..n {
        l_sub[i - 1] = off[i - 1] / l_diag[i - 1];
        let v = diag[i] - l_sub[i - 1] * l_sub[i - 1];
        assert!(v > 0.0, "mass matrix not positive definite at row {i}");
        l_diag[i] = v.sqrt();
    }
    (l_diag, l_sub)
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0][0]];
    }
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    for sweep in 0..200 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p][q].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        assert!(sweep < 199, "Jacobi sweeps failed to converge");
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Eigenvalues of the generalized pencil (K, M) given as tridiagonal
/// (diag, off) pairs, via C = L^{-1} K L^{-T} with M = L L^T.
pub fn generalized_eigenvalues(
    k_diag: &[f64],
    k_off: &[f64],
    m_diag: &[f64],
    m_off: &[f64],
) -> Vec<f64> {
    let n = k_diag.len();
    let (l_diag, l_sub) = tridiag_cholesky(m_diag, m_off);

    // Dense K.
    let mut k = vec![vec![0.0; n]; n];
    for i in 0..n {
        k[i][i] = k_diag[i];
        if i + 1 < n {
            k[i][i + 1] = k_off[i];
            k[i + 1][i] = k_off[i];
        }
    }
    // X = L^{-1} K: forward-substitute down each column.
    for col in 0..n {
        for row in 0..n {
            let mut v = k[row][col];
            if row > 0 {
                v -= l_sub[row - 1] * k[row - 1][col];
            }
            k[row][col] = v / l_diag[row];
        }
    }
    // C = X L^{-T}: forward-substitute across each row.
    for row in 0..n {
        for col in 0..n {
            let mut v = k[row][col];
            if col > 0 {
                v -= l_sub[col - 1] * k[row][col - 1];
            }
            k[row][col] = v / l_diag[col];
        }
    }
    jacobi_eigenvalues(k)
}

/// Number of generalized eigenvalues strictly below zero.
pub fn dense_negative_count(
    k_diag: &[f64],
    k_off: &[f64],
    m_diag: &[f64],
    m_off: &[f64],
) -> usize {
    generalized_eigenvalues(k_diag, k_off, m_diag, m_off)
        .into_iter()
        .filter(|v| *v < 0.0)
        .count()
}

/// Smallest generalized eigenvalue.
pub fn dense_smallest_eigenvalue(
    k_diag: &[f64],
    k_off: &[f64],
    m_diag: &[f64],
    m_off: &[f64],
) -> f64 {
    generalized_eigenvalues(k_diag, k_off, m_diag, m_off)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}
