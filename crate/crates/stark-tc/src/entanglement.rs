//! Wootters concurrence of the thermal state: the spin-flip transform, the
//! R-matrix spectrum, the concurrence map over the dimensionless (x, y)
//! plane, and the two closed-form coupling laws.

use serde::Serialize;

use crate::error::Result;
use crate::model::{thermal_state_oracle, ModelParams, ThermalState};
use crate::numerics::{eig_rho_product, Mat4};

/// Slope of the small-coupling linear law, sqrt(2) - 1.
pub const LINEAR_LAW_SLOPE: f64 = std::f64::consts::SQRT_2 - 1.0;

/// Concurrence value with the four descending square-rooted R-eigenvalues
/// and the (x, y) the state was evaluated at.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConcurrenceReport {
    pub x: f64,
    pub y: f64,
    /// max(0, roots[0] - roots[1] - roots[2] - roots[3]), in [0, 1].
    pub c: f64,
    /// sqrt of the eigenvalues of rho_tilde * rho, descending.
    pub roots: [f64; 4],
}

/// Spin flip of a real density matrix in STANDARD ordering:
/// rho_tilde = (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y), which for real
/// rho is conjugation by the antidiagonal matrix antidiag(-1, 1, 1, -1).
pub fn spin_flip_rho(rho: &Mat4) -> Mat4 {
    const F: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out.0[i][j] = F[i] * F[j] * rho.0[3 - i][3 - j];
        }
    }
    out
}

/// Spin flip of a thermal state. The basis tag guarantees STANDARD ordering,
/// so the antidiagonal form applies.
pub fn spin_flip(state: &ThermalState) -> Mat4 {
    spin_flip_rho(state.rho())
}

/// Wootters concurrence of a thermal state:
/// C = max(0, sqrt(R1) - sqrt(R2) - sqrt(R3) - sqrt(R4)) with R-eigenvalues
/// taken from the spectrum of sqrt(rho) rho_tilde sqrt(rho).
pub fn concurrence(state: &ThermalState) -> Result<ConcurrenceReport> {
    let flipped = spin_flip(state);
    let eigs = eig_rho_product(state.rho(), &flipped)?;
    let roots = eigs.map(f64::sqrt);
    let c = (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0);
    Ok(ConcurrenceReport {
        x: state.params().x(),
        y: state.params().y(),
        c,
        roots,
    })
}

/// Concurrence as a function of the two dimensionless parameters
/// x = 2g/xi, y = xi*alpha^2/T, in the a = 1 gauge (the state depends on
/// (x, y) only; rescaling the energy unit leaves the result unchanged).
pub fn concurrence_xy(x: f64, y: f64) -> Result<ConcurrenceReport> {
    let params = ModelParams::from_xy(x, y)?;
    concurrence(&thermal_state_oracle(&params))
}

/// Small-coupling linear law C = max(0, (sqrt(2) - 1) * g/xi).
///
/// Provided as the quoted closed form; the computed surface rises with a
/// steeper slope (about 2 * g/xi at large y), so treat this as a reference
/// formula rather than a fit to [`concurrence_xy`]. See the README notes.
pub fn linear_law(g_over_xi: f64) -> f64 {
    (LINEAR_LAW_SLOPE * g_over_xi).max(0.0)
}

/// Strong-coupling square-root decay law, evaluated verbatim:
/// with A = 4y/x - 1, returns max(0, sqrt(A + sqrt(A)) - sqrt(A - sqrt(A))).
///
/// Defined for x > 2 and A >= 1 (the regime condition b*beta/(g/xi)^2 >= 1
/// is algebraically the same as A >= 1); `None` signals out-of-regime.
/// As printed the formula reaches sqrt(2) > 1 at its boundary A = 1,
/// exceeding the concurrence ceiling, so it is a qualitative decay trend
/// only — never a certified value. See the README notes.
pub fn sqrt_decay_law(x: f64, y: f64) -> Option<f64> {
    if !(x > 2.0) {
        return None;
    }
    let decay_arg = 4.0 * y / x - 1.0;
    if !(decay_arg >= 1.0) {
        return None;
    }
    let s = decay_arg.sqrt();
    Some(((decay_arg + s).sqrt() - (decay_arg - s).sqrt()).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{limit_state_small_coupling, limit_state_strong_coupling};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn flip_fixes_maximally_mixed() {
        let quarter = Mat4::identity().scaled(0.25);
        assert!(spin_flip_rho(&quarter).max_abs_diff(&quarter) <= 0.0);
    }

    #[test]
    fn flip_swaps_ee_and_gg() {
        let mut ee = Mat4::zeros();
        ee.0[0][0] = 1.0;
        let mut gg = Mat4::zeros();
        gg.0[3][3] = 1.0;
        assert!(spin_flip_rho(&ee).max_abs_diff(&gg) <= 0.0);
    }

    #[test]
    fn flip_reverses_diagonal() {
        let d = Mat4::from_diag([0.1, 0.2, 0.3, 0.4]);
        let want = Mat4::from_diag([0.4, 0.3, 0.2, 0.1]);
        assert!(spin_flip_rho(&d).max_abs_diff(&want) <= 0.0);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let rep = concurrence_xy(1.0, 0.0).unwrap();
        assert_eq!(rep.c, 0.0);
        for r in rep.roots {
            assert_close(r, 0.25, 1e-14);
        }
    }

    #[test]
    fn singlet_has_unit_concurrence() {
        // (|eg> - |ge>)/sqrt(2) as a raw density matrix
        let mut rho = Mat4::zeros();
        rho.0[1][1] = 0.5;
        rho.0[2][2] = 0.5;
        rho.0[1][2] = -0.5;
        rho.0[2][1] = -0.5;
        let eigs = eig_rho_product(&rho, &spin_flip_rho(&rho)).unwrap();
        let roots = eigs.map(f64::sqrt);
        let c = (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0);
        assert_close(c, 1.0, 1e-12);
    }

    #[test]
    fn decoupled_limit_is_disentangled() {
        // roots are (e^{+y/2}, e^{+y/2}, e^{-y/2}, e^{-y/2})/Z, so the
        // Wootters sum is -2 e^{-y/2}/Z < 0 and c clips to zero.
        let p = ModelParams::new(0.0, 1.0, 1.0, 1.7).unwrap();
        let state = limit_state_small_coupling(&p);
        let rep = concurrence(&state).unwrap();
        assert_eq!(rep.c, 0.0);
        let z = state.z();
        let y = p.y();
        assert_close(rep.roots[0], (y / 2.0).exp() / z, 1e-13);
        assert_close(rep.roots[1], (y / 2.0).exp() / z, 1e-13);
        assert_close(rep.roots[2], (-y / 2.0).exp() / z, 1e-13);
        assert_close(rep.roots[3], (-y / 2.0).exp() / z, 1e-13);
    }

    #[test]
    fn strong_coupling_limit_is_disentangled() {
        // R-eigenvalues {e^{6 beta b}, e^{6 beta b}, e^{2 beta b}, e^{2 beta b}}
        // / (1 + e^{2 beta b})^4; the Wootters sum is again strictly negative.
        let (b, beta) = (1.0, 1.0);
        let p = ModelParams::new(b, 0.0, 1.0, beta).unwrap();
        let rep = concurrence(&limit_state_strong_coupling(&p)).unwrap();
        assert_eq!(rep.c, 0.0);
        let denom = (1.0 + (2.0 * beta * b).exp()).powi(2);
        assert_close(rep.roots[0], (3.0 * beta * b).exp() / denom, 1e-13);
        assert_close(rep.roots[1], (3.0 * beta * b).exp() / denom, 1e-13);
        assert_close(rep.roots[2], (beta * b).exp() / denom, 1e-13);
        assert_close(rep.roots[3], (beta * b).exp() / denom, 1e-13);
    }

    #[test]
    fn golden_point() {
        let rep = concurrence_xy(1.0, 4.0).unwrap();
        assert_close(rep.c, 0.49301344076045194, 1e-11);
        assert_close(rep.roots[0], 0.49997592803754209, 1e-11);
        assert_close(rep.roots[1], 0.0034692076573161152, 1e-11);
        assert_close(rep.roots[2], 0.0034692076573161152, 1e-11);
        assert_close(rep.roots[3], 2.4071962457914687e-5, 1e-11);
        // reconstruction identity holds exactly
        let sum = rep.roots[0] - rep.roots[1] - rep.roots[2] - rep.roots[3];
        assert_eq!(rep.c, sum.max(0.0));
    }

    #[test]
    fn rejects_nonpositive_x() {
        assert!(concurrence_xy(0.0, 1.0).is_err());
        assert!(concurrence_xy(-1.0, 1.0).is_err());
    }

    #[test]
    fn linear_law_values() {
        assert_eq!(linear_law(0.0), 0.0);
        assert_close(linear_law(0.1), 0.041421356237309505, 1e-16);
        assert_close(linear_law(1.0 / LINEAR_LAW_SLOPE), 1.0, 1e-15);
    }

    #[test]
    fn sqrt_decay_law_values() {
        // A = 1 at 4y/x = 2: value sqrt(2), above the physical ceiling
        let v = sqrt_decay_law(4.0, 2.0).unwrap();
        assert_close(v, std::f64::consts::SQRT_2, 1e-15);
        // 4y/x < 1: out of regime
        assert!(sqrt_decay_law(4.0, 0.9).is_none());
        // A just below 1: out of regime
        assert!(sqrt_decay_law(4.0, 1.9).is_none());
        // weak-coupling side excluded
        assert!(sqrt_decay_law(1.0, 10.0).is_none());
        // large A tends to 1
        let v = sqrt_decay_law(4.0, 1e8).unwrap();
        assert_close(v, 1.0, 1e-4);
    }
}
