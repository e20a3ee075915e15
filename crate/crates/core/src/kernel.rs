//! q-Pochhammer products, theta functions and the elliptic gamma function.
//!
//! Additive convention throughout: a parameter `tau` with `Im tau > 0` stands
//! for the nome `e^{2 pi i tau}`. The multiplicative entry points take the
//! nome directly.

use crate::error::{Error, Result};
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Real = f64;
pub type C64 = Complex<Real>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: Real, im: Real) -> C64 {
    C64::new(re, im)
}

/// `e^{2 pi i z}`
pub fn e(z: C64) -> C64 {
    (2.0 * PI * I * z).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Stop once the remaining factors differ from 1 by less than this.
    pub epsilon: Real,
    pub max_terms: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            epsilon: 1e-17,
            max_terms: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Additive,
    Multiplicative,
}

/// A modular parameter given either as `tau` (upper half plane) or as a nome
/// `q` with `0 < |q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularParam {
    value: C64,
    convention: Convention,
}

impl ModularParam {
    pub fn additive(tau: C64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() {
            return Err(Error::InvalidModulus(format!("Im(tau) must be positive, got {tau}")));
        }
        Ok(ModularParam {
            value: tau,
            convention: Convention::Additive,
        })
    }

    pub fn multiplicative(q: C64) -> Result<Self> {
        let r = q.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidModulus(format!("need 0 < |q| < 1, got |q| = {r}")));
        }
        Ok(ModularParam {
            value: q,
            convention: Convention::Multiplicative,
        })
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn nome(&self) -> C64 {
        match self.convention {
            Convention::Additive => e(self.value),
            Convention::Multiplicative => self.value,
        }
    }

    /// Additive parameter; for a multiplicative nome this is the principal
    /// logarithm divided by `2 pi i`.
    pub fn tau(&self) -> C64 {
        match self.convention {
            Convention::Additive => self.value,
            Convention::Multiplicative => self.value.ln() / (2.0 * PI * I),
        }
    }
}

/// A product value together with a relative error bound (tail plus roundoff).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: C64,
    pub rel_bound: Real,
}

fn check_nome(q: C64) -> Result<()> {
    let r = q.norm();
    if r < 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidModulus(format!("|q| = {r} is not below 1")))
    }
}

/// `(u; q)_inf = prod_{n >= 0} (1 - u q^n)`.
pub fn poch_nome(u: C64, q: C64, policy: &Truncation) -> Result<Bounded> {
    check_nome(q)?;
    let qa = q.norm();
    let mut x = u;
    let mut p = C64::new(1.0, 0.0);
    let mut n = 0usize;
    loop {
        p *= C64::new(1.0, 0.0) - x;
        x *= q;
        n += 1;
        let ax = x.norm();
        // tail: sum_{k >= n} |x_k| / (1 - |x_k|) <= |x_n| / ((1 - |q|)(1 - |x_n|))
        if ax < policy.epsilon * (1.0 - qa) || p == C64::new(0.0, 0.0) {
            let tail = if ax < 0.5 { ax / ((1.0 - qa) * (1.0 - ax)) } else { 0.0 };
            return Ok(Bounded {
                value: p,
                rel_bound: tail + 4.0 * n as Real * Real::EPSILON,
            });
        }
        if n >= policy.max_terms {
            return Err(Error::NonConvergent { terms: n });
        }
    }
}

/// `(u; q, r)_inf = prod_{m, n >= 0} (1 - u q^n r^m)`.
pub fn poch2_nome(u: C64, q: C64, r: C64, policy: &Truncation) -> Result<Bounded> {
    check_nome(q)?;
    check_nome(r)?;
    let (qa, ra) = (q.norm(), r.norm());
    let mut y = u;
    let mut p = C64::new(1.0, 0.0);
    let mut bound = 0.0;
    let mut m = 0usize;
    loop {
        let inner = poch_nome(y, q, policy)?;
        p *= inner.value;
        bound += inner.rel_bound;
        y *= r;
        m += 1;
        let ay = y.norm();
        let tail_scale = ay / ((1.0 - qa) * (1.0 - ra));
        if tail_scale < policy.epsilon || p == C64::new(0.0, 0.0) {
            let tail = if tail_scale < 0.5 { 2.0 * tail_scale } else { 0.0 };
            return Ok(Bounded {
                value: p,
                rel_bound: bound + tail,
            });
        }
        if m >= policy.max_terms {
            return Err(Error::NonConvergent { terms: m });
        }
    }
}

/// `(z; tau)_inf` in additive notation.
pub fn qpoch1(z: C64, tau: C64) -> Result<C64> {
    qpoch1_with(z, tau, &Truncation::default()).map(|b| b.value)
}

pub fn qpoch1_with(z: C64, tau: C64, policy: &Truncation) -> Result<Bounded> {
    ModularParam::additive(tau)?;
    poch_nome(e(z), e(tau), policy)
}

/// `(z; tau, sigma)_inf` in additive notation.
pub fn qpoch2(z: C64, tau: C64, sigma: C64) -> Result<C64> {
    qpoch2_with(z, tau, sigma, &Truncation::default()).map(|b| b.value)
}

pub fn qpoch2_with(z: C64, tau: C64, sigma: C64, policy: &Truncation) -> Result<Bounded> {
    ModularParam::additive(tau)?;
    ModularParam::additive(sigma)?;
    poch2_nome(e(z), e(tau), e(sigma), policy)
}

/// `theta0(z; tau) = (z; tau)(tau - z; tau)`.
///
/// The argument is first reduced to `|Im z| <= Im tau / 2` with the
/// quasi-periodicity `theta0(w + k tau) = (-1)^k e^{-2 pi i k w - pi i k(k-1) tau} theta0(w)`.
pub fn theta0(z: C64, tau: C64) -> Result<C64> {
    ModularParam::additive(tau)?;
    let k = (z.im / tau.im).round();
    let w = z - k * tau;
    let w = C64::new(w.re - w.re.round(), w.im);
    let policy = Truncation::default();
    let q = e(tau);
    let base = poch_nome(e(w), q, &policy)?.value * poch_nome(e(tau - w), q, &policy)?.value;
    if k == 0.0 {
        return Ok(base);
    }
    let sign = if (k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let expo = -2.0 * PI * I * k * w - PI * I * k * (k - 1.0) * tau;
    Ok(base * expo.exp() * sign)
}

/// Jacobi theta `i e^{pi i tau/4 - pi i z} (tau; tau) theta0(z; tau)`, odd in `z`.
pub fn theta(z: C64, tau: C64) -> Result<C64> {
    let pre = I * (PI * I * tau / 4.0 - PI * I * z).exp();
    Ok(pre * qpoch1(tau, tau)? * theta0(z, tau)?)
}

/// Derivative of [`theta`] at the origin: `2 pi e^{pi i tau/4} (tau; tau)^3`.
pub fn theta_prime0(tau: C64) -> Result<C64> {
    let p = qpoch1(tau, tau)?;
    Ok(2.0 * PI * (PI * I * tau / 4.0).exp() * p * p * p)
}

/// Elliptic gamma function `(tau + sigma - z; tau, sigma) / (z; tau, sigma)`.
pub fn ell_gamma(z: C64, tau: C64, sigma: C64) -> Result<C64> {
    let zr = C64::new(z.re - z.re.round(), z.im);
    let den = qpoch2(zr, tau, sigma)?;
    if den == C64::new(0.0, 0.0) {
        return Err(Error::PoleHit { at: format!("{z}") });
    }
    Ok(qpoch2(tau + sigma - zr, tau, sigma)? / den)
}

/// Cubic polynomial in the modular transformation of [`ell_gamma`].
pub fn modular_q(z: C64, tau: C64, sigma: C64) -> C64 {
    let ts = tau * sigma;
    let s = tau + sigma - 1.0;
    z * z * z / (3.0 * ts) - s * z * z / (2.0 * ts)
        + (tau * tau + sigma * sigma + 3.0 * ts - 3.0 * tau - 3.0 * sigma + 1.0) * z / (6.0 * ts)
        + s * (1.0 / tau + 1.0 / sigma - 1.0) / 12.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaMode {
    Series,
    Product,
}

/// Level-`kappa` theta function `sum_{n in Z + mu/2kappa} e^{2 pi i kappa (n^2 tau + n lambda)}`.
pub fn theta_level(mu: i64, kappa: i64, lambda: C64, tau: C64, mode: ThetaMode) -> Result<C64> {
    ModularParam::additive(tau)?;
    if kappa <= 0 {
        return Err(Error::DomainViolation(format!("level must be positive, got {kappa}")));
    }
    let kf = kappa as Real;
    let shift = mu as Real / (2.0 * kf);
    match mode {
        ThetaMode::Series => {
            let term = |m: i64| {
                let n = m as Real + shift;
                (2.0 * PI * I * kf * (n * n * tau + n * lambda)).exp()
            };
            // the exponent's real part is a downward parabola in n; start at its top
            let top = (-lambda.im / (2.0 * tau.im) - shift).round() as i64;
            let mut sum = term(top);
            let peak = sum.norm();
            for dir in [1i64, -1] {
                let mut m = top + dir;
                loop {
                    let t = term(m);
                    sum += t;
                    if t.norm() < 1e-18 * peak.max(Real::MIN_POSITIVE) && (m - top).abs() > 2 {
                        break;
                    }
                    if (m - top).abs() > 1_000_000 {
                        return Err(Error::NonConvergent { terms: 1_000_000 });
                    }
                    m += dir;
                }
            }
            Ok(sum)
        }
        ThetaMode::Product => {
            let m = mu as Real;
            let pre = (PI * I * tau * m * m / (2.0 * kf) + PI * I * lambda * m).exp();
            let t2 = 2.0 * kf * tau;
            Ok(pre * qpoch1(t2, t2)? * theta0(0.5 + m * tau + kf * tau + kf * lambda, t2)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: Real) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn pochhammer_reference_value() {
        let v = poch_nome(c(0.5, 0.0), c(0.25, 0.0), &Truncation::default()).unwrap();
        assert!((v.value.re - 0.41942244179510746).abs() < 1e-15);
        assert!(v.rel_bound < 1e-13);
    }

    #[test]
    fn pochhammer_matches_direct_product() {
        let q = c(0.3, 0.2);
        let u = c(-0.7, 1.1);
        let mut direct = c(1.0, 0.0);
        let mut x = u;
        for _ in 0..200 {
            direct *= c(1.0, 0.0) - x;
            x *= q;
        }
        let v = poch_nome(u, q, &Truncation::default()).unwrap().value;
        assert!(close(v, direct, 1e-14));
    }

    #[test]
    fn invalid_moduli_are_rejected() {
        assert!(matches!(qpoch1(c(0.1, 0.0), c(0.3, 0.0)), Err(Error::InvalidModulus(_))));
        assert!(ModularParam::multiplicative(c(1.0, 0.0)).is_err());
        assert!(ModularParam::additive(c(0.0, -0.1)).is_err());
    }

    #[test]
    fn nonconvergence_is_reported() {
        let tight = Truncation {
            epsilon: 1e-17,
            max_terms: 5,
        };
        assert!(matches!(
            poch_nome(c(0.5, 0.0), c(0.9, 0.0), &tight),
            Err(Error::NonConvergent { .. })
        ));
    }

    #[test]
    fn reduced_theta0_matches_unreduced_product() {
        let tau = c(0.2, 0.7);
        let z = c(0.3, 2.3);
        let raw = qpoch1(z, tau).unwrap() * qpoch1(tau - z, tau).unwrap();
        assert!(close(theta0(z, tau).unwrap(), raw, 1e-12));
    }

    #[test]
    fn modular_param_round_trip() {
        let tau = c(0.1, 0.4);
        let p = ModularParam::additive(tau).unwrap();
        let m = ModularParam::multiplicative(p.nome()).unwrap();
        assert!(close(m.tau(), tau, 1e-14));
    }

    #[test]
    fn theta_prime_matches_difference_quotient() {
        let tau = c(0.1, 0.9);
        let h = 1e-5;
        let d = (theta(c(h, 0.0), tau).unwrap() - theta(c(-h, 0.0), tau).unwrap()) / (2.0 * h);
        assert!(close(d, theta_prime0(tau).unwrap(), 1e-8));
    }

    #[test]
    fn gamma_reference_values() {
        let (tau, sigma) = (c(0.0, 0.8), c(0.0, 1.1));
        let g = ell_gamma(c(0.25, 0.0), tau, sigma).unwrap();
        assert!(g.re.is_finite());
        assert!(matches!(ell_gamma(c(0.0, 0.0), tau, sigma), Err(Error::PoleHit { .. })));
        // Gamma(z) Gamma(tau + sigma - z) = 1
        let z = c(0.17, 0.3);
        let p = ell_gamma(z, tau, sigma).unwrap() * ell_gamma(tau + sigma - z, tau, sigma).unwrap();
        assert!(close(p, c(1.0, 0.0), 1e-13));
    }

    #[test]
    fn level_theta_series_and_product_agree() {
        for (mu, kappa) in [(0, 1), (1, 3), (2, 4), (5, 2)] {
            let (lam, tau) = (c(0.31, 0.12), c(-0.1, 0.6));
            let s = theta_level(mu, kappa, lam, tau, ThetaMode::Series).unwrap();
            let p = theta_level(mu, kappa, lam, tau, ThetaMode::Product).unwrap();
            assert!(close(s, p, 1e-12), "{mu} {kappa}: {s} vs {p}");
        }
    }
}
