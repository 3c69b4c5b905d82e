//! Dense 4x4 real linear algebra: cyclic-Jacobi symmetric eigendecomposition,
//! matrix exponential, PSD square root, and spectra of products of PSD
//! matrices.
//!
//! Everything operates on plain value types; all functions are pure and safe
//! to call concurrently. Every matrix in this crate is real in the chosen
//! basis, so no complex arithmetic is needed.

use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};

/// Symmetry precondition tolerance (max |m_ij - m_ji|).
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues in [-PSD_CLAMP, 0) are roundoff and get clamped to zero;
/// anything below -PSD_CLAMP is a hard not-PSD error.
pub const PSD_CLAMP: f64 = 1e-10;

/// exp(x) overflows f64 just above x = 709; the guard trips at 700.
pub const EXP_ARG_MAX: f64 = 700.0;

/// Off-diagonal Frobenius threshold for Jacobi convergence, relative to
/// max(1, ||A||_F) so the sweep terminates at every scale.
const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// A dense 4x4 matrix of f64, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub fn zeros() -> Self {
        Mat4([[0.0; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..4 {
            m.0[k][k] = 1.0;
        }
        m
    }

    pub fn from_diag(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for k in 0..4 {
            m.0[k][k] = d[k];
        }
        m
    }

    pub fn diag(&self) -> [f64; 4] {
        [self.0[0][0], self.0[1][1], self.0[2][2], self.0[3][3]]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    /// self + s * I.
    pub fn plus_scaled_identity(&self, s: f64) -> Self {
        let mut m = *self;
        for k in 0..4 {
            m.0[k][k] += s;
        }
        m
    }

    pub fn frob_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        let mut d = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// (self + self^T) / 2.
    pub fn symmetrized(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = 0.5 * (self.0[i][j] + self.0[j][i]);
            }
        }
        m
    }

    /// Checks the symmetry precondition, naming the worst offending pair.
    pub fn check_symmetric(&self) -> Result<()> {
        let mut worst = (0, 0, 0.0f64);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let delta = (self.0[i][j] - self.0[j][i]).abs();
                if delta > worst.2 {
                    worst = (i, j, delta);
                }
            }
        }
        if worst.2 > SYMMETRY_TOL {
            return Err(Error::NotSymmetric {
                i: worst.0,
                j: worst.1,
                delta: worst.2,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let aik = self.0[i][k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += aik * rhs.0[k][j];
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
#[derive(Debug, Clone, Copy)]
pub struct SymEig4 {
    /// values[0] >= values[1] >= values[2] >= values[3].
    pub values: [f64; 4],
    /// Orthonormal eigenvectors as columns, paired with `values`.
    pub vectors: Mat4,
}

fn off_diag_frob(a: &Mat4) -> f64 {
    let mut s = 0.0;
    for p in 0..3 {
        for q in (p + 1)..4 {
            s += a.0[p][q] * a.0[p][q];
        }
    }
    (2.0 * s).sqrt()
}

/// One Jacobi rotation annihilating a[p][q], accumulated into v.
fn jacobi_rotate(a: &mut Mat4, v: &mut Mat4, p: usize, q: usize) {
    let apq = a.0[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = 0.5 * (a.0[q][q] - a.0[p][p]) / apq;
    let t = if theta.abs() > 1e12 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);
    let h = t * apq;
    a.0[p][p] -= h;
    a.0[q][q] += h;
    a.0[p][q] = 0.0;
    a.0[q][p] = 0.0;
    for j in 0..4 {
        if j == p || j == q {
            continue;
        }
        let g = a.0[j][p];
        let h = a.0[j][q];
        a.0[j][p] = g - s * (h + g * tau);
        a.0[p][j] = a.0[j][p];
        a.0[j][q] = h + s * (g - h * tau);
        a.0[q][j] = a.0[j][q];
    }
    for j in 0..4 {
        let g = v.0[j][p];
        let h = v.0[j][q];
        v.0[j][p] = g - s * (h + g * tau);
        v.0[j][q] = h + s * (g - h * tau);
    }
}

/// Eigendecomposition of a symmetric 4x4 matrix by cyclic Jacobi rotations.
///
/// The input must be symmetric within 1e-12 (max entry deviation); it is
/// symmetrized exactly before iterating. Convergence threshold is an
/// off-diagonal Frobenius norm of 1e-14 relative to max(1, ||A||_F),
/// at most 100 sweeps (4x4 needs ~5).
pub fn eig_sym(m: &Mat4) -> Result<SymEig4> {
    m.check_symmetric()?;
    let mut a = m.symmetrized();
    let mut v = Mat4::identity();
    let tol = JACOBI_OFF_TOL * a.frob_norm().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diag_frob(&a) <= tol {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut order = [0usize, 1, 2, 3];
    let d = a.diag();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).expect("finite eigenvalues"));
    let mut values = [0.0; 4];
    let mut vectors = Mat4::zeros();
    for (col, &k) in order.iter().enumerate() {
        values[col] = d[k];
        for row in 0..4 {
            vectors.0[row][col] = v.0[row][k];
        }
    }
    Ok(SymEig4 { values, vectors })
}

/// V diag(w) V^T, exactly symmetrized.
fn assemble_spectral(vectors: &Mat4, w: &[f64; 4]) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..4 {
        for j in i..4 {
            let mut s = 0.0;
            for k in 0..4 {
                s += vectors.0[i][k] * w[k] * vectors.0[j][k];
            }
            out.0[i][j] = s;
            out.0[j][i] = s;
        }
    }
    out
}

/// exp(s * m) for symmetric m via eigendecomposition.
///
/// Errors when any exponent s * eigenvalue exceeds 700 (f64 overflow);
/// large negative exponents underflow to zero harmlessly, so Gibbs-state
/// callers can shift the spectrum and stay in-domain at any temperature.
pub fn exp_sym(m: &Mat4, s: f64) -> Result<Mat4> {
    let eig = eig_sym(m)?;
    let mut w = [0.0; 4];
    for k in 0..4 {
        let arg = s * eig.values[k];
        if arg > EXP_ARG_MAX {
            return Err(Error::ExpOverflow { arg });
        }
        w[k] = arg.exp();
    }
    Ok(assemble_spectral(&eig.vectors, &w))
}

/// Symmetric PSD square root. Eigenvalues in [-1e-10, 0) are clamped to
/// zero; anything lower is a not-PSD error carrying the offending value.
pub fn sqrt_psd(m: &Mat4) -> Result<Mat4> {
    let eig = eig_sym(m)?;
    let mut w = [0.0; 4];
    for k in 0..4 {
        let lam = eig.values[k];
        if lam < -PSD_CLAMP {
            return Err(Error::NotPsd { eigenvalue: lam });
        }
        w[k] = lam.max(0.0).sqrt();
    }
    Ok(assemble_spectral(&eig.vectors, &w))
}

/// Eigenvalues of the product rho_tilde * rho of two symmetric PSD matrices,
/// sorted descending and clamped to be nonnegative.
///
/// Computed as the spectrum of the symmetric matrix
/// sqrt(rho) * rho_tilde * sqrt(rho), which is similar to the (generally
/// nonsymmetric) product and numerically stable.
pub fn eig_rho_product(rho: &Mat4, rho_tilde: &Mat4) -> Result<[f64; 4]> {
    let root = sqrt_psd(rho)?;
    let tilde_min = eig_sym(rho_tilde)?.values[3];
    if tilde_min < -PSD_CLAMP {
        return Err(Error::NotPsd {
            eigenvalue: tilde_min,
        });
    }
    let m = (&(&root * rho_tilde) * &root).symmetrized();
    let vals = eig_sym(&m)?.values;
    let mut out = [0.0; 4];
    for k in 0..4 {
        if vals[k] < -PSD_CLAMP {
            return Err(Error::NotPsd {
                eigenvalue: vals[k],
            });
        }
        out[k] = vals[k].max(0.0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    // The two-atom effective Hamiltonian with a = b = 1; spectrum {±√5, 0, 0}.
    fn coupled_hamiltonian() -> Mat4 {
        Mat4([
            [1.0, 0.0, 1.0, 1.0],
            [0.0, -1.0, 1.0, 1.0],
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
        ])
    }

    #[test]
    fn eig_identity() {
        let e = eig_sym(&Mat4::identity()).unwrap();
        for v in e.values {
            assert_close(v, 1.0, 1e-15);
        }
    }

    #[test]
    fn eig_diagonal_sorted_descending() {
        let e = eig_sym(&Mat4::from_diag([3.0, -1.0, 2.0, 0.0])).unwrap();
        assert_eq!(e.values, [3.0, 2.0, 0.0, -1.0]);
    }

    #[test]
    fn eig_coupled_hamiltonian_spectrum() {
        let e = eig_sym(&coupled_hamiltonian()).unwrap();
        let root5 = 5.0f64.sqrt();
        let expect = [root5, 0.0, 0.0, -root5];
        for k in 0..4 {
            assert_close(e.values[k], expect[k], 1e-11);
        }
    }

    #[test]
    fn eig_vectors_orthonormal_and_reconstruct() {
        let m = Mat4([
            [2.0, -1.0, 0.5, 0.3],
            [-1.0, 1.5, 0.2, -0.7],
            [0.5, 0.2, -3.0, 1.1],
            [0.3, -0.7, 1.1, 0.4],
        ]);
        let e = eig_sym(&m).unwrap();
        let vtv = &e.vectors.transpose() * &e.vectors;
        assert!(vtv.max_abs_diff(&Mat4::identity()) <= 1e-12);
        let rec = assemble_spectral(&e.vectors, &e.values);
        assert!(rec.max_abs_diff(&m) <= 1e-11 * m.frob_norm().max(1.0));
    }

    #[test]
    fn eig_rejects_asymmetric_input() {
        let mut m = Mat4::identity();
        m.0[0][2] = 1e-3;
        match eig_sym(&m) {
            Err(Error::NotSymmetric { i: 0, j: 2, delta }) => {
                assert_close(delta, 1e-3, 1e-12);
            }
            other => panic!("expected NotSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn exp_zero_is_identity() {
        let e = exp_sym(&Mat4::zeros(), 3.7).unwrap();
        assert!(e.max_abs_diff(&Mat4::identity()) <= 1e-15);
    }

    #[test]
    fn exp_diagonal() {
        let e = exp_sym(&Mat4::from_diag([1.0, 2.0, 0.0, -1.0]), 1.0).unwrap();
        let want = Mat4::from_diag([1f64.exp(), 2f64.exp(), 1.0, (-1f64).exp()]);
        assert!(e.max_abs_diff(&want) <= 1e-12);
    }

    #[test]
    fn exp_coupled_hamiltonian_trace() {
        // trace of exp(-H) equals the sum of exp(-E) over the spectrum {±√5, 0, 0}
        let e = exp_sym(&coupled_hamiltonian(), -1.0).unwrap();
        assert_close(e.trace(), 11.463346942261533, 1e-12);
    }

    #[test]
    fn exp_overflow_guard_is_signed() {
        let m = Mat4::from_diag([1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            exp_sym(&m, 701.0),
            Err(Error::ExpOverflow { .. })
        ));
        // the same magnitude with negative sign only underflows
        let e = exp_sym(&m, -1000.0).unwrap();
        assert!(e.is_finite());
    }

    #[test]
    fn sqrt_examples() {
        let r = sqrt_psd(&Mat4::identity()).unwrap();
        assert!(r.max_abs_diff(&Mat4::identity()) <= 1e-15);
        let r = sqrt_psd(&Mat4::from_diag([4.0, 1.0, 0.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&Mat4::from_diag([2.0, 1.0, 0.0, 3.0])) <= 1e-12);
        let quarter = Mat4::identity().scaled(0.25);
        let r = sqrt_psd(&quarter).unwrap();
        assert!(r.max_abs_diff(&Mat4::identity().scaled(0.5)) <= 1e-15);
    }

    #[test]
    fn sqrt_squares_back() {
        let m = Mat4([
            [2.0, 0.5, 0.1, 0.0],
            [0.5, 1.0, 0.2, 0.1],
            [0.1, 0.2, 3.0, -0.4],
            [0.0, 0.1, -0.4, 1.5],
        ]);
        let r = sqrt_psd(&m).unwrap();
        assert!((&r * &r).max_abs_diff(&m) <= 1e-10);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        match sqrt_psd(&Mat4::from_diag([1.0, 1.0, 1.0, -1e-6])) {
            Err(Error::NotPsd { eigenvalue }) => assert_close(eigenvalue, -1e-6, 1e-12),
            other => panic!("expected NotPsd, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_clamps_roundoff_negatives() {
        let m = Mat4::from_diag([1.0, 1.0, 1.0, -5e-11]);
        let r = sqrt_psd(&m).unwrap();
        assert_eq!(r.0[3][3], 0.0);
    }

    #[test]
    fn product_eigs_commuting_scalar() {
        let quarter = Mat4::identity().scaled(0.25);
        let v = eig_rho_product(&quarter, &quarter).unwrap();
        for x in v {
            assert_close(x, 1.0 / 16.0, 1e-15);
        }
    }

    #[test]
    fn product_eigs_diagonal() {
        let p = Mat4::from_diag([0.4, 0.3, 0.2, 0.1]);
        let q = Mat4::from_diag([0.1, 0.2, 0.3, 0.4]);
        let v = eig_rho_product(&p, &q).unwrap();
        let mut want = [0.04, 0.06, 0.06, 0.04];
        want.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for k in 0..4 {
            assert_close(v[k], want[k], 1e-14);
        }
    }

    #[test]
    fn product_eigs_rejects_non_psd() {
        let p = Mat4::from_diag([0.5, 0.5, 0.5, -0.5]);
        let q = Mat4::identity().scaled(0.25);
        assert!(matches!(
            eig_rho_product(&p, &q),
            Err(Error::NotPsd { .. })
        ));
        assert!(matches!(
            eig_rho_product(&q, &p),
            Err(Error::NotPsd { .. })
        ));
    }
}
