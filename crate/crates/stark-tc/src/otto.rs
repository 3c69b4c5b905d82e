//! Quantum Otto cycle on the four-level structure (-λ, 0, 0, +λ): stroke
//! populations, exchanged heats, net work, efficiency, the positive-work
//! condition, the Carnot bound, and the small/large-shift efficiency
//! asymptotics.
//!
//! The cycle alternates two isochores (heat exchange at fixed level
//! structure) and two adiabats (the coupling changes g2 -> g1 -> g2 at fixed
//! populations), so the splittings are λ1 = α²·sqrt(ξ² + 4g1²) on the hot
//! stroke and λ2 = α²·sqrt(ξ² + 4g2²) on the cold one. Units: k_B = 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::EXP_ARG_MAX;

/// Engine specification: couplings of the two strokes, Stark shift, mean
/// photon number, and the two bath temperatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OttoCycle {
    g1: f64,
    g2: f64,
    xi: f64,
    alpha_sq: f64,
    t_hot: f64,
    t_cold: f64,
}

/// Thermodynamic summary of one cycle. Signs: q_hot > 0 is absorbed from
/// the hot bath, q_cold > 0 is released to the cold bath, work = q_hot -
/// q_cold is the net output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CycleReport {
    pub q_hot: f64,
    pub q_cold: f64,
    pub work: f64,
    /// 1 - λ2/λ1, a pure spectrum ratio (independent of α² and of both
    /// temperatures). Outside the positive-work region the engine reading
    /// of this number is not physical; check `positive_work`.
    pub eta: f64,
    pub eta_carnot: f64,
    /// T_H/T_L > λ1/λ2, equivalently β_L λ2 > β_H λ1.
    pub positive_work: bool,
}

impl OttoCycle {
    /// Validates t_hot > t_cold > 0, g1 >= g2 >= 0 (so λ1 >= λ2 and η >= 0),
    /// α² > 0, ξ >= 0, and not (ξ = 0 and g2 = 0) — that corner collapses
    /// the cold-stroke splitting and with it the cycle.
    pub fn new(
        g1: f64,
        g2: f64,
        xi: f64,
        alpha_sq: f64,
        t_hot: f64,
        t_cold: f64,
    ) -> Result<Self> {
        let finite = |name, value: f64, req: &'static str, ok: bool| {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    requirement: req,
                })
            }
        };
        finite("g2", g2, "finite and >= 0", g2 >= 0.0)?;
        finite("g1", g1, "finite and >= g2", g1 >= g2)?;
        finite("xi", xi, "finite and >= 0", xi >= 0.0)?;
        finite("alpha_sq", alpha_sq, "finite and > 0", alpha_sq > 0.0)?;
        finite("t_cold", t_cold, "finite and > 0", t_cold > 0.0)?;
        finite("t_hot", t_hot, "finite and > t_cold", t_hot > t_cold)?;
        if xi == 0.0 && g2 == 0.0 {
            return Err(Error::InvalidParameter {
                name: "g2",
                value: 0.0,
                requirement: "xi and g2 must not both vanish",
            });
        }
        Ok(Self {
            g1,
            g2,
            xi,
            alpha_sq,
            t_hot,
            t_cold,
        })
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn t_hot(&self) -> f64 {
        self.t_hot
    }

    pub fn t_cold(&self) -> f64 {
        self.t_cold
    }

    /// λ1 = α² sqrt(ξ² + 4 g1²), the hot-stroke splitting.
    pub fn lambda1(&self) -> f64 {
        self.alpha_sq * f64::hypot(self.xi, 2.0 * self.g1)
    }

    /// λ2 = α² sqrt(ξ² + 4 g2²), the cold-stroke splitting (λ2 > 0 by
    /// construction, so ratios are always defined).
    pub fn lambda2(&self) -> f64 {
        self.alpha_sq * f64::hypot(self.xi, 2.0 * self.g2)
    }

    /// Heat absorbed from the hot bath per cycle,
    /// Q_H = λ1 (tanh(β_L λ2 / 2) - tanh(β_H λ1 / 2)).
    ///
    /// This is the sinh/Z form rewritten with sinh u / (1 + cosh u)
    /// = tanh(u/2); tanh saturates, so the expression is total for every
    /// valid cycle at any temperature.
    pub fn heat_hot(&self) -> f64 {
        let l1 = self.lambda1();
        let l2 = self.lambda2();
        l1 * ((l2 / (2.0 * self.t_cold)).tanh() - (l1 / (2.0 * self.t_hot)).tanh())
    }

    /// Heat released to the cold bath, Q_L = (λ2/λ1) Q_H; the proportionality
    /// is exact.
    pub fn heat_cold(&self) -> f64 {
        (self.lambda2() / self.lambda1()) * self.heat_hot()
    }

    /// η = 1 - λ2/λ1 = (Q_H - Q_L)/Q_H identically in the cycle parameters.
    pub fn efficiency(&self) -> f64 {
        1.0 - self.lambda2() / self.lambda1()
    }

    /// Assembles heats, work, efficiency, the Carnot bound, and the
    /// positive-work flag. work = q_hot - q_cold by construction.
    pub fn report(&self) -> CycleReport {
        let q_hot = self.heat_hot();
        let ratio = self.lambda2() / self.lambda1();
        let q_cold = ratio * q_hot;
        CycleReport {
            q_hot,
            q_cold,
            work: q_hot - q_cold,
            eta: 1.0 - ratio,
            eta_carnot: 1.0 - self.t_cold / self.t_hot,
            positive_work: self.lambda2() / self.t_cold > self.lambda1() / self.t_hot,
        }
    }
}

/// The level structure at splitting λ: E = (-λ, 0, 0, +λ).
pub fn level_spectrum(lambda: f64) -> [f64; 4] {
    [-lambda, 0.0, 0.0, lambda]
}

/// Gibbs populations over [`level_spectrum`] at the given temperature:
/// (e^{+βλ}, 1, 1, e^{-βλ})/Z with Z = 2(1 + cosh βλ); the ground level -λ
/// carries the largest weight. Errors when βλ > 700.
pub fn gibbs_populations(lambda: f64, temperature: f64) -> Result<[f64; 4]> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            requirement: "finite and >= 0",
        });
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::InvalidParameter {
            name: "temperature",
            value: temperature,
            requirement: "finite and > 0",
        });
    }
    let u = lambda / temperature;
    if u > EXP_ARG_MAX {
        return Err(Error::ExpOverflow { arg: u });
    }
    let m = (-u).exp();
    let d = (1.0 + m) * (1.0 + m);
    Ok([1.0 / d, m / d, m / d, m * m / d])
}

/// Exact ξ = 0 efficiency, η_max = δg/(g + δg); the efficiency is maximal
/// there and decreases with the shift.
pub fn efficiency_asymptote_small_shift(g: f64, dg: f64) -> Result<f64> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            requirement: "finite and > 0",
        });
    }
    if !(dg.is_finite() && dg >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "dg",
            value: dg,
            requirement: "finite and >= 0",
        });
    }
    Ok(dg / (g + dg))
}

/// Leading large-shift term of the exact efficiency,
/// 2 (g1² - g2²)/ξ² = 2 (2 g δg + δg²)/ξ² with g1 = g + δg, g2 = g;
/// the exact η divided by this tends to 1 as ξ grows.
pub fn efficiency_asymptote_large_shift(g: f64, dg: f64, xi: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::InvalidParameter {
            name: "xi",
            value: xi,
            requirement: "finite and > 0",
        });
    }
    Ok(2.0 * (2.0 * g * dg + dg * dg) / (xi * xi))
}
