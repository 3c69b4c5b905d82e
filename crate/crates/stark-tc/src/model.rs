//! Physical parameters, the effective two-atom Hamiltonian with an
//! intensity-dependent (dynamical Stark) level shift, and its thermal
//! reduced density matrix, built along two independent routes: direct
//! exponentiation of the Hamiltonian and closed-form cosh/sinh entries.
//!
//! Units: k_B = hbar = 1 throughout; temperatures are energies, beta = 1/T.
//!
//! The canonical basis ordering is STANDARD = (|ee>, |eg>, |ge>, |gg>), the
//! ordering the spin-flip transform in [`crate::entanglement`] assumes. In
//! this ordering the effective Hamiltonian reads
//!
//! ```text
//!         | a   0   b   b |
//!   H  =  | 0  -a   b   b |        a = xi * alpha^2,  b = g * alpha^2,
//!         | b   b   0   0 |        spectrum {-L, 0, 0, +L},
//!         | b   b   0   0 |        L = sqrt(a^2 + 4 b^2).
//! ```
//!
//! A frequently quoted closed form for the two degenerate middle diagonal
//! entries of the Gibbs state omits a b^2 term and violates unit trace; this
//! module implements the trace-consistent entry
//! (a^2 + 2 b^2 + 2 b^2 cosh(beta*L)) / (Z * L^2), cross-checked entrywise
//! against the exponentiation route. The uncorrected variant is kept as
//! [`thermal_state_closed_printed`] for documentation and for fault
//! injection in the verification suite.

use crate::error::{Error, Result};
use crate::numerics::{exp_sym, Mat4, EXP_ARG_MAX};

/// Margin defining "much smaller than" in [`check_kinetic_energy_neglect`]:
/// the kinetic term must be below this fraction of the coupling energy.
pub const KINETIC_MARGIN: f64 = 0.1;

/// Basis-ordering tag. The single canonical value is
/// STANDARD = (|ee>, |eg>, |ge>, |gg>); thermal states are only
/// constructible in it, which is what makes the spin flip well-defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Standard,
}

/// Physical inputs (g, xi, alpha^2, beta) with the derived dimensionless
/// quantities a, b, x, y, Lambda recomputed on demand (never stored).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    g: f64,
    xi: f64,
    alpha_sq: f64,
    beta: f64,
}

impl ModelParams {
    /// Validates g >= 0, xi >= 0 (not both zero), alpha^2 > 0, beta >= 0,
    /// all finite.
    pub fn new(g: f64, xi: f64, alpha_sq: f64, beta: f64) -> Result<Self> {
        let finite_nonneg = |name, value: f64| {
            if value.is_finite() && value >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    requirement: "finite and >= 0",
                })
            }
        };
        finite_nonneg("g", g)?;
        finite_nonneg("xi", xi)?;
        finite_nonneg("beta", beta)?;
        if g == 0.0 && xi == 0.0 {
            return Err(Error::InvalidParameter {
                name: "g",
                value: 0.0,
                requirement: "g and xi must not both vanish",
            });
        }
        if !(alpha_sq.is_finite() && alpha_sq > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha_sq",
                value: alpha_sq,
                requirement: "finite and > 0",
            });
        }
        Ok(Self {
            g,
            xi,
            alpha_sq,
            beta,
        })
    }

    /// The (x, y) gauge: a = 1 (xi = 1, alpha^2 = 1), b = x/2, beta = y.
    /// The thermal state depends on (x, y) only, so this fixes nothing but
    /// an overall energy scale.
    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidParameter {
                name: "x",
                value: x,
                requirement: "finite and > 0",
            });
        }
        if !(y.is_finite() && y >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "y",
                value: y,
                requirement: "finite and >= 0",
            });
        }
        Self::new(x / 2.0, 1.0, 1.0, y)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// a = xi * alpha^2.
    pub fn a(&self) -> f64 {
        self.xi * self.alpha_sq
    }

    /// b = g * alpha^2.
    pub fn b(&self) -> f64 {
        self.g * self.alpha_sq
    }

    /// x = 2g/xi; +inf when xi = 0 (documented sentinel).
    pub fn x(&self) -> f64 {
        if self.xi == 0.0 {
            f64::INFINITY
        } else {
            2.0 * self.g / self.xi
        }
    }

    /// y = beta * a; zero whenever beta = 0 or xi = 0.
    pub fn y(&self) -> f64 {
        self.beta * self.a()
    }

    /// Lambda = sqrt(a^2 + 4 b^2), half the spectral width.
    pub fn lambda(&self) -> f64 {
        f64::hypot(self.a(), 2.0 * self.b())
    }
}

/// Thermal reduced density matrix with its partition function (stored as
/// ln Z so low temperatures cannot overflow) and basis tag.
#[derive(Debug, Clone, Copy)]
pub struct ThermalState {
    params: ModelParams,
    rho: Mat4,
    ln_z: f64,
    basis: Basis,
}

impl ThermalState {
    pub fn rho(&self) -> &Mat4 {
        &self.rho
    }

    /// Partition function Z = 2(1 + cosh(beta*Lambda)); +inf once beta*Lambda
    /// exceeds ~709 (use [`Self::ln_z`] in that regime).
    pub fn z(&self) -> f64 {
        self.ln_z.exp()
    }

    pub fn ln_z(&self) -> f64 {
        self.ln_z
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }
}

/// The effective Hamiltonian in STANDARD ordering: diagonal (a, -a, 0, 0),
/// couplings |ee>↔|ge>, |ee>↔|gg>, |eg>↔|ge>, |eg>↔|gg> of strength b.
/// Spectrum is exactly {-Lambda, 0, 0, +Lambda}.
pub fn effective_hamiltonian(a: f64, b: f64) -> Mat4 {
    Mat4([
        [a, 0.0, b, b],
        [0.0, -a, b, b],
        [b, b, 0.0, 0.0],
        [b, b, 0.0, 0.0],
    ])
}

/// Gibbs state by direct exponentiation: rho = exp(-beta H) / tr exp(-beta H).
///
/// The spectrum is shifted by +Lambda before exponentiating so every exponent
/// is nonpositive; the state is therefore well-defined at arbitrarily low
/// temperature (beta * Lambda far beyond 709).
pub fn thermal_state_oracle(p: &ModelParams) -> ThermalState {
    let lambda = p.lambda();
    let shifted = effective_hamiltonian(p.a(), p.b()).plus_scaled_identity(lambda);
    let e = exp_sym(&shifted, -p.beta()).expect("nonpositive exponents cannot overflow");
    let tr = e.trace();
    ThermalState {
        params: *p,
        rho: e.scaled(1.0 / tr),
        ln_z: tr.ln() + p.beta() * lambda,
        basis: Basis::Standard,
    }
}

fn closed_form_state(p: &ModelParams, corrected: bool) -> ThermalState {
    let (a, b) = (p.a(), p.b());
    let lambda = p.lambda();
    let l2 = lambda * lambda;
    // m = exp(-beta*Lambda) in (0, 1]; every entry is a ratio of cosh/sinh of
    // beta*Lambda to Z = (1+m)^2/m, all stable in m down to m = 0 exactly.
    let m = (-p.beta() * lambda).exp();
    let opm = 1.0 + m;
    let inv_z = m / (opm * opm);
    let cosh_z = (1.0 + m * m) / (2.0 * opm * opm);
    let sinh_z = (1.0 - m) / (2.0 * opm);

    let even = (2.0 * b * b * inv_z + (a * a + 2.0 * b * b) * cosh_z) / l2;
    let odd = (a / lambda) * sinh_z;
    let r_ee = even - odd;
    let r_eg = even + odd;
    let mid_const = if corrected {
        a * a + 2.0 * b * b
    } else {
        a * a + b * b
    };
    let r_mid = (mid_const * inv_z + 2.0 * b * b * cosh_z) / l2;
    let pair = (2.0 * b * b / l2) * (cosh_z - inv_z);
    let off_p = (a * b / l2) * (cosh_z - inv_z) - (b / lambda) * sinh_z;
    let off_m = -(a * b / l2) * (cosh_z - inv_z) - (b / lambda) * sinh_z;

    ThermalState {
        params: *p,
        rho: Mat4([
            [r_ee, pair, off_p, off_p],
            [pair, r_eg, off_m, off_m],
            [off_p, off_m, r_mid, pair],
            [off_p, off_m, pair, r_mid],
        ]),
        ln_z: p.beta() * lambda + 2.0 * m.ln_1p(),
        basis: Basis::Standard,
    }
}

/// Gibbs state from the closed-form cosh/sinh entries (trace-corrected
/// middle diagonal). Agrees with [`thermal_state_oracle`] entrywise to
/// better than 1e-10 over the whole parameter range.
pub fn thermal_state_closed(p: &ModelParams) -> ThermalState {
    closed_form_state(p, true)
}

/// The closed form with the uncorrected middle diagonal
/// (a^2 + b^2 + 2 b^2 cosh(beta*L)) / (Z L^2), which fails unit trace by
/// 2 b^2 / (Z L^2). Kept for documentation and verification fault injection;
/// do not use for physics.
pub fn thermal_state_closed_printed(p: &ModelParams) -> ThermalState {
    closed_form_state(p, false)
}

/// Z = 2(1 + cosh(beta*Lambda)) evaluated directly; errors once
/// beta*Lambda > 700 (the raw value would overflow — use
/// [`ThermalState::ln_z`] instead in that regime).
pub fn partition_function(p: &ModelParams) -> Result<f64> {
    let arg = p.beta() * p.lambda();
    if arg > EXP_ARG_MAX {
        return Err(Error::ExpOverflow { arg });
    }
    Ok(2.0 * (1.0 + arg.cosh()))
}

/// Weak-coupling limit state (b -> 0): diag(e^{-beta a}, e^{+beta a}, 1, 1)/Z
/// with Z = 2(1 + cosh(beta a)). Exact at b = 0 for any temperature.
pub fn limit_state_small_coupling(p: &ModelParams) -> ThermalState {
    let m = (-p.beta() * p.a()).exp();
    let d = (1.0 + m) * (1.0 + m);
    ThermalState {
        params: *p,
        rho: Mat4::from_diag([m * m / d, 1.0 / d, m / d, m / d]),
        ln_z: p.beta() * p.a() + 2.0 * m.ln_1p(),
        basis: Basis::Standard,
    }
}

/// Strong-coupling limit state (a -> 0): constant diagonal 1/4 with the
/// a1/a2 off-diagonal pattern, a1 = (cosh(2 beta b) - 1)/(2Z),
/// a2 = -sinh(2 beta b)/(2Z), Z = 2(1 + cosh(2 beta b)). Exact at xi = 0.
pub fn limit_state_strong_coupling(p: &ModelParams) -> ThermalState {
    let m = (-2.0 * p.beta() * p.b()).exp();
    let opm = 1.0 + m;
    let a1 = (1.0 - m) * (1.0 - m) / (4.0 * opm * opm);
    let a2 = -(1.0 - m) / (4.0 * opm);
    let q = 0.25;
    ThermalState {
        params: *p,
        rho: Mat4([
            [q, a1, a2, a2],
            [a1, q, a2, a2],
            [a2, a2, q, a1],
            [a2, a2, a1, q],
        ]),
        ln_z: 2.0 * p.beta() * p.b() + 2.0 * m.ln_1p(),
        basis: Basis::Standard,
    }
}

const FACTORIALS: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

/// Coherent-field photon-number weight W_n^2 = alpha^{2n} e^{-alpha^2} / n!
/// (a Poisson distribution with mean alpha^2). Direct evaluation up to
/// n = 20, log-space above; n > 170 is rejected (factorial overflow).
pub fn coherent_weight(n: u32, alpha_sq: f64) -> Result<f64> {
    if !(alpha_sq.is_finite() && alpha_sq > 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha_sq",
            value: alpha_sq,
            requirement: "finite and > 0",
        });
    }
    if n > 170 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            requirement: "n <= 170",
        });
    }
    if n <= 20 {
        Ok(alpha_sq.powi(n as i32) * (-alpha_sq).exp() / FACTORIALS[n as usize])
    } else {
        let ln_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
        Ok((n as f64 * alpha_sq.ln() - alpha_sq - ln_fact).exp())
    }
}

/// Outcome of the center-of-mass kinetic-energy check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticCheck {
    /// (P^2 / 2M) / (d * sqrt(hbar * omega * n / (2 eps0 V))).
    pub ratio: f64,
    /// ratio < [`KINETIC_MARGIN`].
    pub valid: bool,
}

/// Checks that the center-of-mass kinetic energy P^2/2M is negligible
/// against the dipole coupling energy d*sqrt(hbar*omega*n/(2 eps0 V)).
/// "Negligible" means the ratio is below [`KINETIC_MARGIN`] (0.1).
pub fn check_kinetic_energy_neglect(
    p_momentum: f64,
    mass: f64,
    dipole: f64,
    omega: f64,
    n_photons: f64,
    volume: f64,
    hbar: f64,
    eps0: f64,
) -> Result<KineticCheck> {
    if !(p_momentum.is_finite() && p_momentum >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "p_momentum",
            value: p_momentum,
            requirement: "finite and >= 0",
        });
    }
    let positive = |name, value: f64| {
        if value.is_finite() && value > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name,
                value,
                requirement: "finite and > 0",
            })
        }
    };
    positive("mass", mass)?;
    positive("dipole", dipole)?;
    positive("omega", omega)?;
    positive("n_photons", n_photons)?;
    positive("volume", volume)?;
    positive("hbar", hbar)?;
    positive("eps0", eps0)?;
    let kinetic = p_momentum * p_momentum / (2.0 * mass);
    let coupling = dipole * (hbar * omega * n_photons / (2.0 * eps0 * volume)).sqrt();
    let ratio = kinetic / coupling;
    Ok(KineticCheck {
        ratio,
        valid: ratio < KINETIC_MARGIN,
    })
}
