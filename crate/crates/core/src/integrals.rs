//! Elliptic hypergeometric integrals over pole-separating period contours,
//! and the theta-weighted combinations built from them.

use crate::contour::{integrate_separated, PoleInventory, QuadOptions, QuadratureResult, Side};
use crate::error::{Error, Result};
use crate::kernel::{ell_gamma, qpoch1, theta, theta0, theta_prime0, Real, C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A computed quantity with its quadrature error and a magnitude scale for
/// absolute comparisons (the largest term of any cancelling combination).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: C64,
    pub error: Real,
    pub scale: Real,
}

impl Estimate {
    pub fn exact(value: C64) -> Estimate {
        Estimate {
            value,
            error: 0.0,
            scale: value.norm(),
        }
    }

    fn from_quad(q: QuadratureResult) -> Estimate {
        Estimate {
            value: q.value,
            error: q.error_estimate,
            scale: q.value.norm(),
        }
    }

    pub fn scaled(self, f: C64) -> Estimate {
        Estimate {
            value: self.value * f,
            error: self.error * f.norm(),
            scale: self.scale * f.norm(),
        }
    }

    pub fn minus(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value - other.value,
            error: self.error + other.error,
            scale: self.scale.max(other.scale),
        }
    }

    pub fn plus(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value + other.value,
            error: self.error + other.error,
            scale: self.scale.max(other.scale),
        }
    }
}

/// `theta(a; tau) / theta(b; tau)` without recomputing the common factors.
pub fn theta_ratio(a: C64, b: C64, tau: C64) -> Result<C64> {
    Ok((-PI * I * (a - b)).exp() * theta0(a, tau)? / theta0(b, tau)?)
}

/// Poles of the integrand with `Gamma(t + 2 eta)/Gamma(t - 2 eta)` and the
/// theta denominators `theta(t - 2 eta)` in both modular parameters.
pub fn fv_poles(tau: C64, sigma: C64, eta: C64) -> PoleInventory {
    PoleInventory::new()
        .family(-2.0 * eta, &[-tau, -sigma], Side::Below)
        .family(2.0 * eta + tau + sigma, &[tau, sigma], Side::Above)
        .family(2.0 * eta, &[tau], Side::Above)
        .family(2.0 * eta + sigma, &[sigma], Side::Above)
}

/// Poles of `Gamma(t - 2 eta; tau, 8 eta)/Gamma(t + 2 eta; tau, 8 eta)`: the
/// family at `2 eta` below the contour, the one at `-2 eta` above.
pub fn asym_poles(tau: C64, eta: C64) -> PoleInventory {
    PoleInventory::new()
        .family(2.0 * eta, &[-tau, -8.0 * eta], Side::Below)
        .family(-2.0 * eta, &[tau, 8.0 * eta], Side::Above)
}

/// Poles of `prod_i Gamma(+-t + s_i; tau, sigma)`.
pub fn balanced_poles(tau: C64, sigma: C64, s: &[C64]) -> PoleInventory {
    s.iter().fold(PoleInventory::new(), |inv, &si| {
        inv.family(-si, &[-tau, -sigma], Side::Below)
            .family(si, &[tau, sigma], Side::Above)
    })
}

fn check_upper(name: &str, z: C64) -> Result<()> {
    if z.im > 0.0 {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!("Im({name}) must be positive, got {z}")))
    }
}

/// `int prod_{i=1}^6 Gamma(+-t + s_i) / Gamma(+-2t) dt` over the straight period.
pub fn balanced_integral(s: &[C64; 6], tau: C64, sigma: C64, opts: &QuadOptions) -> Result<Estimate> {
    check_upper("tau", tau)?;
    check_upper("sigma", sigma)?;
    let f = |t: C64| -> Result<C64> {
        // 1/(Gamma(2t) Gamma(-2t)) = -e^{-4 pi i t} theta0(2t; tau) theta0(2t; sigma)
        let mut v = -(-4.0 * PI * I * t).exp() * theta0(2.0 * t, tau)? * theta0(2.0 * t, sigma)?;
        for &si in s {
            v *= ell_gamma(t + si, tau, sigma)? * ell_gamma(si - t, tau, sigma)?;
        }
        Ok(v)
    };
    integrate_separated(f, &balanced_poles(tau, sigma, s), opts).map(Estimate::from_quad)
}

/// The integral with `Gamma(t + 2 eta)/Gamma(t - 2 eta)` and `theta0` ratios at
/// `eta = +-1/8`, `lambda = mu = 1/2`, in plain `theta0` normalisation.
pub fn quarter_integral(tau: C64, sigma: C64, eta: Real, opts: &QuadOptions) -> Result<Estimate> {
    check_upper("tau", tau)?;
    check_upper("sigma", sigma)?;
    let h = C64::new(2.0 * eta, 0.0);
    let f = |t: C64| -> Result<C64> {
        Ok(ell_gamma(t + h, tau, sigma)? / ell_gamma(t - h, tau, sigma)?
            * theta0(t + 0.5, tau)?
            / theta0(t - h, tau)?
            * theta0(t + 0.5, sigma)?
            / theta0(t - h, sigma)?)
    };
    integrate_separated(f, &fv_poles(tau, sigma, h / 2.0), opts).map(Estimate::from_quad)
}

/// `u(lambda, mu; tau, sigma; eta) = e^{-pi i lambda mu / 2 eta} int Gamma(t + 2eta)/Gamma(t - 2eta)
/// theta(t + lambda; tau)/theta(t - 2eta; tau) theta(t + mu; sigma)/theta(t - 2eta; sigma) dt`.
pub fn fv_u(lambda: C64, mu: C64, tau: C64, sigma: C64, eta: C64, opts: &QuadOptions) -> Result<Estimate> {
    check_upper("tau", tau)?;
    check_upper("sigma", sigma)?;
    if eta.norm() == 0.0 {
        return Err(Error::DomainViolation("eta must be nonzero".into()));
    }
    let h = 2.0 * eta;
    let f = |t: C64| -> Result<C64> {
        Ok(ell_gamma(t + h, tau, sigma)? / ell_gamma(t - h, tau, sigma)?
            * theta_ratio(t + lambda, t - h, tau)?
            * theta_ratio(t + mu, t - h, sigma)?)
    };
    let q = integrate_separated(f, &fv_poles(tau, sigma, eta), opts)?;
    Ok(Estimate::from_quad(q).scaled((-PI * I * lambda * mu / (2.0 * eta)).exp()))
}

/// The asymmetric integral of the symmetric evaluation, `Im eta > 0`.
pub fn asym_integral(lambda: C64, tau: C64, eta: C64, opts: &QuadOptions) -> Result<Estimate> {
    check_upper("tau", tau)?;
    check_upper("eta", eta)?;
    let p = 8.0 * eta;
    let f = |t: C64| -> Result<C64> {
        Ok(ell_gamma(t - 2.0 * eta, tau, p)? / ell_gamma(t + 2.0 * eta, tau, p)?
            * theta0(t + lambda, tau)?
            / theta0(t + 2.0 * eta, tau)?
            * theta0(t - 4.0 * eta, p)?
            / theta0(t + 2.0 * eta, p)?
            * theta0(2.0 * t + 6.0 * tau - 4.0 * lambda + 0.5, 8.0 * tau)?)
    };
    let q = integrate_separated(f, &asym_poles(tau, eta), opts)?;
    Ok(Estimate::from_quad(q).scaled((-3.0 * PI * I * lambda).exp()))
}

/// `asym(lambda) - asym(-lambda)`.
pub fn sym_integral(lambda: C64, tau: C64, eta: C64, opts: &QuadOptions) -> Result<Estimate> {
    Ok(asym_integral(lambda, tau, eta, opts)?.minus(asym_integral(-lambda, tau, eta, opts)?))
}

/// `Q(mu; sigma, eta) = theta(4 eta) theta'(0) / (theta(mu - 2 eta) theta(mu + 2 eta))`, all in `sigma`.
pub fn q_factor(mu: C64, sigma: C64, eta: C64) -> Result<C64> {
    let den = theta(mu - 2.0 * eta, sigma)? * theta(mu + 2.0 * eta, sigma)?;
    if den.norm() == 0.0 {
        return Err(Error::PoleHit {
            at: format!("mu = {mu} coincides with +-2 eta"),
        });
    }
    Ok(theta(4.0 * eta, sigma)? * theta_prime0(sigma)? / den)
}

/// Parameters of the level-`kappa` family: `Im tau > 0`, `Im eta < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelParams {
    pub mu: i64,
    pub kappa: i64,
    pub tau: C64,
    pub eta: C64,
}

impl LevelParams {
    pub fn new(mu: i64, kappa: i64, tau: C64, eta: C64) -> Result<LevelParams> {
        check_upper("tau", tau)?;
        if !(eta.im < 0.0) {
            return Err(Error::DomainViolation(format!("Im(eta) must be negative, got {eta}")));
        }
        if kappa < 1 {
            return Err(Error::DomainViolation(format!("kappa must be positive, got {kappa}")));
        }
        Ok(LevelParams { mu, kappa, tau, eta })
    }

    /// The second modular parameter `-2 eta kappa`.
    pub fn sigma(&self) -> C64 {
        -2.0 * self.eta * self.kappa as Real
    }
}

/// Level-`kappa` integral: the `u`-type integrand with its second theta
/// argument at `2 eta mu`, weighted by `theta0(1/2 + mu tau + kappa tau - kappa lambda + 2t; 2 kappa tau)`.
pub fn level_integral(p: &LevelParams, lambda: C64, opts: &QuadOptions) -> Result<Estimate> {
    let (tau, eta) = (p.tau, p.eta);
    let s = p.sigma();
    let (m, k) = (p.mu as Real, p.kappa as Real);
    let h = 2.0 * eta;
    let f = |t: C64| -> Result<C64> {
        Ok(ell_gamma(t + h, tau, s)? / ell_gamma(t - h, tau, s)?
            * theta_ratio(t + lambda, t - h, tau)?
            * theta_ratio(t + h * m, t - h, s)?
            * theta0(0.5 + m * tau + k * tau - k * lambda + 2.0 * t, 2.0 * k * tau)?)
    };
    let q = integrate_separated(f, &fv_poles(tau, s, eta), opts)?;
    let pre = (PI * I * tau * m * m / (2.0 * k) - PI * I * lambda * m).exp() * qpoch1(2.0 * k * tau, 2.0 * k * tau)?;
    Ok(Estimate::from_quad(q).scaled(pre))
}

fn check_residue(mu: i64, kappa: i64) -> Result<()> {
    let r = mu.rem_euclid(kappa);
    if r == 1 || r == kappa - 1 {
        return Err(Error::DomainViolation(format!("mu = {mu} is +-1 mod kappa = {kappa}")));
    }
    Ok(())
}

/// `e^{2 pi i eta mu^2 / kappa} Q(2 eta mu; -2 eta kappa, eta)` times [`level_integral`].
pub fn delta_tilde(p: &LevelParams, lambda: C64, opts: &QuadOptions) -> Result<Estimate> {
    check_residue(p.mu, p.kappa)?;
    let m = p.mu as Real;
    let pre = (2.0 * PI * I * p.eta * m * m / p.kappa as Real).exp() * q_factor(2.0 * p.eta * m, p.sigma(), p.eta)?;
    Ok(level_integral(p, lambda, opts)?.scaled(pre))
}

/// Antisymmetrised [`delta_tilde`].
pub fn delta(p: &LevelParams, lambda: C64, opts: &QuadOptions) -> Result<Estimate> {
    Ok(delta_tilde(p, lambda, opts)?.minus(delta_tilde(p, -lambda, opts)?))
}

/// The series form of [`delta_tilde`]: `sum_{j in 2 kappa Z + mu} u(lambda, 2 eta j; tau, -2 eta kappa; eta)
/// Q(2 eta j) e^{pi i (tau + 4 eta) j^2 / 2 kappa}`, summed outward until the terms are negligible.
pub fn delta_tilde_series(p: &LevelParams, lambda: C64, opts: &QuadOptions) -> Result<Estimate> {
    check_residue(p.mu, p.kappa)?;
    let s = p.sigma();
    let term = |n: i64| -> Result<Estimate> {
        let j = (2 * p.kappa * n + p.mu) as Real;
        let w = q_factor(2.0 * p.eta * j, s, p.eta)? * (PI * I * (p.tau + 4.0 * p.eta) * j * j / (2.0 * p.kappa as Real)).exp();
        Ok(fv_u(lambda, 2.0 * p.eta * j, p.tau, s, p.eta, opts)?.scaled(w))
    };
    let mut total = term(0)?;
    for dir in [1i64, -1] {
        let mut n = dir;
        let mut small = 0;
        while small < 2 {
            let t = term(n)?;
            small = if t.value.norm() < 1e-15 * total.value.norm() { small + 1 } else { 0 };
            total = total.plus(t);
            n += dir;
            if n.abs() > 40 {
                return Err(Error::NonConvergent { terms: 40 });
            }
        }
    }
    Ok(total)
}

/// `P_{mu,kappa}(lambda; tau, eta) = e^{-pi i (4 eta + tau)(mu + 2)^2 / 2 kappa + 3 pi i tau / 4}
/// Delta_{mu+2,kappa}(lambda) / (theta(lambda - 2 eta) theta(lambda) theta(lambda + 2 eta))`.
pub fn ellmac_p(p: &LevelParams, lambda: C64, opts: &QuadOptions) -> Result<Estimate> {
    check_residue(p.mu + 2, p.kappa)?;
    for j in 1..=200 {
        let z = j as Real * p.tau + 4.0 * p.eta;
        if (z - z.re.round()).norm() < 1e-10 {
            return Err(Error::DomainViolation(format!("{j} tau + 4 eta is an integer")));
        }
    }
    let (tau, eta) = (p.tau, p.eta);
    let shifted = LevelParams { mu: p.mu + 2, ..*p };
    let m2 = (p.mu + 2) as Real;
    let pre = (-PI * I * (4.0 * eta + tau) * m2 * m2 / (2.0 * p.kappa as Real) + 0.75 * PI * I * tau).exp();
    let den = theta(lambda - 2.0 * eta, tau)? * theta(lambda, tau)? * theta(lambda + 2.0 * eta, tau)?;
    if den.norm() == 0.0 {
        return Err(Error::PoleHit {
            at: format!("lambda = {lambda} is a zero of the theta denominator"),
        });
    }
    Ok(delta(&shifted, lambda, opts)?.scaled(pre / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::c;

    #[test]
    fn theta_ratio_matches_quotient() {
        let tau = c(0.1, 0.8);
        let (a, b) = (c(0.3, 0.1), c(-0.2, 0.05));
        let r = theta_ratio(a, b, tau).unwrap();
        let q = theta(a, tau).unwrap() / theta(b, tau).unwrap();
        assert!((r / q - 1.0).norm() < 1e-14);
    }

    #[test]
    fn q_factor_is_even_and_rejects_poles() {
        let (sigma, eta) = (c(0.2, 0.9), c(0.05, -0.2));
        let mu = c(0.3, 0.1);
        let a = q_factor(mu, sigma, eta).unwrap();
        let b = q_factor(-mu, sigma, eta).unwrap();
        assert!((a / b - 1.0).norm() < 1e-13);
        assert!(matches!(q_factor(2.0 * eta, sigma, eta), Err(Error::PoleHit { .. })));
    }

    #[test]
    fn residue_exclusions() {
        let p = LevelParams::new(1, 4, c(0.0, 0.8), c(0.0, -0.1)).unwrap();
        assert!(matches!(ellmac_p(&p, c(0.1, 0.0), &QuadOptions::default()), Err(Error::DomainViolation(_))));
        assert!(LevelParams::new(0, 4, c(0.0, 0.8), c(0.0, 0.1)).is_err());
    }
}
