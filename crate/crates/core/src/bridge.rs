//! Affine Macdonald values for sl_2 at `t = q^2`, obtained from the
//! level-`kappa` elliptic functions with `kappa = k + 4`.
//!
//! Everything with `|q| > 1` is routed through additive parameters
//! `eta = log q / (2 pi i)` (so `Im eta < 0`); products are never formed
//! with a nome of modulus above one.

use crate::contour::QuadOptions;
use crate::error::{Error, Result};
use crate::integrals::{ellmac_p, Estimate, LevelParams};
use crate::kernel::{e, qpoch1, qpoch2, theta0, Real, C64, I};
use crate::qseries::conjectures::theorem_x_series;
use crate::qseries::Series;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineParams {
    pub mu: i64,
    pub k: i64,
    pub q: C64,
    pub lambda: C64,
    pub omega: C64,
}

/// `log q / (2 pi i)`, principal branch.
pub fn eta_of(q: C64) -> C64 {
    q.ln() / (2.0 * PI * I)
}

impl AffineParams {
    pub fn new(mu: i64, k: i64, q: C64, lambda: C64, omega: C64) -> Result<AffineParams> {
        if mu < 0 || k < 0 {
            return Err(Error::DomainViolation(format!("mu = {mu} and k = {k} must be nonnegative")));
        }
        if !(q.norm() > 1.0) {
            return Err(Error::DomainViolation(format!("|q| = {} must exceed 1", q.norm())));
        }
        let p = AffineParams { mu, k, q, lambda, omega };
        let (eta, tau, _) = p.conventions();
        // |q^{-2 omega}| < |q^{-6}|
        if !(tau.im > -6.0 * eta.im) {
            return Err(Error::DomainViolation(format!(
                "|q^(-2 omega)| must be below |q^(-6)|: Im tau = {} vs {}",
                tau.im,
                -6.0 * eta.im
            )));
        }
        Ok(p)
    }

    pub fn kappa(&self) -> i64 {
        self.k + 4
    }

    /// `(eta, tau, lambda_additive) = (log q / 2 pi i, -2 eta omega, 2 eta lambda)`.
    pub fn conventions(&self) -> (C64, C64, C64) {
        let eta = eta_of(self.q);
        (eta, -2.0 * eta * self.omega, 2.0 * eta * self.lambda)
    }
}

/// The affine Macdonald polynomial `J_{mu,k}` at `t = q^2` through the
/// level-`(k + 4)` elliptic Macdonald function.
pub fn j_mu_k(ap: &AffineParams, opts: &QuadOptions) -> Result<Estimate> {
    let opts = QuadOptions {
        rel_tol: opts.rel_tol.min(1e-10),
        ..*opts
    };
    let (eta, tau, lam) = ap.conventions();
    let kappa = ap.kappa();
    let s = -2.0 * eta * kappa as Real;
    let m = ap.mu as Real;
    let level = LevelParams::new(ap.mu, kappa, tau, eta)?;
    let p = ellmac_p(&level, lam, &opts)?;
    let f22 = qpoch1(tau + 2.0 * eta, tau)? / qpoch1(tau + 4.0 * eta, tau)?;
    let mut pre = 1.0 / (2.0 * PI * f22);
    pre *= qpoch1(-4.0 * eta, tau)? * qpoch1(tau, tau)?.powu(3) / qpoch1(tau + 2.0 * eta, tau)?;
    pre *= (qpoch2(tau + 2.0 * eta, tau, s)? / qpoch2(tau - 2.0 * eta, tau, s)?).powu(2);
    pre *= (2.0 * PI * I * eta * (m + 4.0)).exp() * qpoch1(-(2.0 * m + 6.0) * eta, s)? * qpoch1((2.0 * m + 2.0) * eta + s, s)?
        / (qpoch1(-4.0 * eta, s)? * qpoch1(s, s)?);
    Ok(p.scaled(pre))
}

/// Closed form of `J_{mu,k}(q, 2, 4)`.
pub fn evaluation_closed(mu: i64, k: i64, q: C64) -> Result<C64> {
    let eta = eta_of(q);
    let m = mu as Real;
    let s = -2.0 * eta * (k + 4) as Real;
    let num = qpoch1(-2.0 * eta, s)? / qpoch1(-4.0 * eta, s)?
        * theta0((-2.0 * m - 4.0) * eta, s)?
        * qpoch1((-2.0 * m - 6.0) * eta, s)?
        * qpoch1((2.0 * m + 2.0) * eta + s, s)?
        * qpoch1(s, s)?
        * qpoch1(s - 2.0 * eta, s)?;
    let den = qpoch1(-4.0 * eta, -2.0 * eta)? * qpoch1(-6.0 * eta, -8.0 * eta)? * qpoch1(-2.0 * eta, -8.0 * eta)?;
    Ok(q.powi(2 * mu as i32) * num / den)
}

/// The affine denominator at `t = q^2`:
/// `q^lambda (p q^2; p)/(p q^4; p) (q^{2 - 2 lambda}; p)(q^{2 lambda + 2} p; p)(p q^2; p)`, `p = q^{-2 omega}`.
pub fn chi_002(q: C64, lambda: C64, omega: C64) -> Result<C64> {
    let eta = eta_of(q);
    let tau = -2.0 * eta * omega;
    Ok(e(eta * lambda) * qpoch1(tau + 2.0 * eta, tau)?.powu(2) / qpoch1(tau + 4.0 * eta, tau)?
        * qpoch1((2.0 - 2.0 * lambda) * eta, tau)?
        * qpoch1((2.0 * lambda + 2.0) * eta + tau, tau)?)
}

const SERIES_CAP: i64 = 48;

fn cached_series(order: i64) -> Result<Series> {
    static CACHE: OnceLock<Mutex<BTreeMap<i64, Series>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(s) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&order) {
        return Ok(s.clone());
    }
    let s = theorem_x_series(order)?;
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(order, s.clone());
    Ok(s)
}

/// [`chi_002`] by summing its exact expansion in `p` at numeric `p`, `q`,
/// `w = q^{-lambda}`. The order is chosen from the decay ratio of the terms.
pub fn chi_002_series(q: C64, lambda: C64, omega: C64) -> Result<C64> {
    let eta = eta_of(q);
    let p = e(-2.0 * eta * omega);
    let w = e(-eta * lambda);
    let ratio = p.norm() * q.norm().powi(4) * w.norm().powi(2).max(w.norm().powi(-2));
    if !(ratio < 0.5) {
        return Err(Error::DomainViolation(format!("series decay ratio {ratio:.3} too close to 1")));
    }
    let order = ((1e-14f64.ln() / ratio.ln()).ceil() as i64 + 2).min(SERIES_CAP);
    Ok(cached_series(order)?.evaluate(&[p, q, w]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::c;

    #[test]
    fn conventions_invert_the_nome() {
        let q = c((0.2 * PI).exp(), 0.0);
        let eta = eta_of(q);
        assert!((eta - c(0.0, -0.1)).norm() < 1e-15);
        let q2 = C64::from_polar(1.37, 0.3);
        assert!((e(eta_of(q2)) / q2 - 1.0).norm() < 1e-14);
        assert!(eta_of(q2).im < 0.0);
    }

    #[test]
    fn strip_is_enforced() {
        let q = c(1.3, 0.0);
        assert!(AffineParams::new(0, 0, q, c(0.4, 0.0), c(5.0, 0.0)).is_ok());
        assert!(AffineParams::new(0, 0, q, c(0.4, 0.0), c(2.5, 0.0)).is_err());
        assert!(AffineParams::new(0, 0, c(0.9, 0.0), c(0.4, 0.0), c(5.0, 0.0)).is_err());
    }

    #[test]
    fn denominator_structure() {
        let (q, l, w) = (c(1.3, 0.0), c(0.4, 0.0), c(5.0, 0.0));
        let v = chi_002(q, l, w).unwrap();
        let s = chi_002_series(q, l, w).unwrap();
        assert!((v / s - 1.0).norm() < 1e-10);
        // dividing off the root product leaves (p q^2; p)/(p q^4; p) with constant term 1
        let eta = eta_of(q);
        let tau = -2.0 * eta * w;
        let roots = e(eta * l) * qpoch1((2.0 - 2.0 * l) * eta, tau).unwrap()
            * qpoch1((2.0 * l + 2.0) * eta + tau, tau).unwrap()
            * qpoch1(tau + 2.0 * eta, tau).unwrap();
        let f = v / roots;
        let expect = qpoch1(tau + 2.0 * eta, tau).unwrap() / qpoch1(tau + 4.0 * eta, tau).unwrap();
        assert!((f / expect - 1.0).norm() < 1e-14);
        let p = e(tau);
        assert!((f - 1.0).norm() < 2.0 * p.norm() * q.norm().powi(4));
    }
}
