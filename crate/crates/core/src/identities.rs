//! Numeric identities: closed forms, samplers and the evaluation of both sides.

use crate::bridge;
use crate::catalog::{NumericIdentity, Params, Sides};
use crate::contour::{integrate_separated, QuadOptions};
use crate::error::{Error, Result};
use crate::integrals::{
    asym_integral, asym_poles, balanced_integral, delta_tilde, delta_tilde_series, ellmac_p, fv_u, q_factor,
    quarter_integral, sym_integral, Estimate, LevelParams,
};
use crate::kernel::{
    c, ell_gamma, modular_q, qpoch1, theta, theta0, theta_level, theta_prime0, Real, ThetaMode, C64, I,
};
use crate::sampling::{complex, uniform, SampleRng};
use std::f64::consts::PI;

const ONE: C64 = C64::new(1.0, 0.0);

fn sides(lhs: Estimate, rhs: C64) -> Sides {
    Sides {
        lhs: lhs.value,
        rhs,
        quad_error: lhs.error,
        scale: lhs.scale.max(rhs.norm()),
    }
}

/// `1 / ((tau; tau)(tau + 1/2; 2 tau))`
fn half_factor(tau: C64) -> Result<C64> {
    Ok(ONE / (qpoch1(tau, tau)? * qpoch1(tau + 0.5, 2.0 * tau)?))
}

fn quarter_ratio(tau: C64, sigma: C64) -> Result<C64> {
    Ok(ell_gamma(c(0.25, 0.0), tau, sigma)? / ell_gamma(c(0.75, 0.0), tau, sigma)?)
}

pub fn eval1_closed(tau: C64, sigma: C64) -> Result<C64> {
    Ok(-(ONE + I) * quarter_ratio(tau, sigma)? * half_factor(tau)? * half_factor(sigma)?)
}

pub fn eval2_closed(tau: C64, sigma: C64) -> Result<C64> {
    Ok(-(ONE - I) / quarter_ratio(tau, sigma)? * half_factor(tau)? * half_factor(sigma)?)
}

pub fn eval3_closed(lambda: C64, tau: C64, eta: C64) -> Result<C64> {
    let p = 8.0 * eta;
    let pre = (-12.0 * PI * I * eta).exp() * ell_gamma(6.0 * eta, tau, p)? / ell_gamma(2.0 * eta, tau, p)?
        / (qpoch1(8.0 * tau, 8.0 * tau)? * theta0(-4.0 * eta, tau)?)
        / (qpoch1(4.0 * eta, 4.0 * eta)? * qpoch1(2.0 * eta + 0.5, 2.0 * eta)?);
    Ok(pre
        * (-3.0 * PI * I * lambda).exp()
        * theta0(lambda, tau)?
        * theta0(lambda - 2.0 * eta, tau)?
        * theta0(lambda + 2.0 * eta, tau)?)
}

/// Closed form of the level-4, `mu = 0` specialisation; independent of `lambda`.
pub fn p04_closed(tau: C64, eta: C64) -> Result<C64> {
    let p = -8.0 * eta;
    let q = -4.0 * eta;
    Ok(-2.0 * PI * ell_gamma(-6.0 * eta, tau, p)? / ell_gamma(-2.0 * eta, tau, p)?
        / (theta0(4.0 * eta, tau)? * qpoch1(tau, tau)?.powu(3))
        * qpoch1(q, q)?
        / qpoch1(-2.0 * eta, q)?)
}

/// Closed form of the specialisation `lambda = 4 eta`, `tau = -8 eta`.
pub fn ellmac_eval_closed(mu: i64, kappa: i64, eta: C64) -> Result<C64> {
    let m2 = (mu + 2) as Real;
    let s = -2.0 * kappa as Real * eta;
    let p = -8.0 * eta;
    let num = ell_gamma(-6.0 * eta, s, p)? / ell_gamma(-2.0 * eta, s, p)?
        * theta0(2.0 * m2 * eta, s)?
        * qpoch1(s, s)?.powu(2);
    let den = qpoch1(p, p)? * qpoch1(-4.0 * eta, -4.0 * eta)?.powu(2) * qpoch1(-2.0 * eta, -2.0 * eta)?;
    Ok(-2.0 * PI * (-12.0 * PI * I * eta - 2.0 * PI * I * m2 * eta).exp() * num / den)
}

fn tau_eta_lower(rng: &mut SampleRng) -> (C64, C64) {
    (complex(rng, (-0.3, 0.3), (0.4, 1.2)), complex(rng, (-0.1, 0.1), (-0.5, -0.1)))
}

fn small_lambda(rng: &mut SampleRng) -> C64 {
    complex(rng, (-0.45, 0.45), (-0.1, 0.1))
}

// ---- kernel

fn s_theta_mod(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("z", complex(rng, (-0.5, 0.5), (-0.3, 0.3)))
        .with("tau", complex(rng, (-0.5, 0.5), (0.5, 1.5)))
}

fn e_theta_mod(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (z, tau) = (p.c("z")?, p.c("tau")?);
    let lhs = theta(z / tau, -ONE / tau)?;
    let rhs = -I * (-I * tau).sqrt() * (PI * I * z * z / tau).exp() * theta(z, tau)?;
    Ok(Sides::exact(lhs, rhs))
}

fn s_gamma_mod(_: usize, rng: &mut SampleRng) -> Params {
    let z = complex(rng, (-0.5, 0.5), (-0.3, 0.3));
    let mut t = complex(rng, (-0.3, 0.3), (0.5, 1.5));
    let mut s = complex(rng, (-0.3, 0.3), (0.5, 1.5));
    if (t / s).im <= 0.0 {
        std::mem::swap(&mut t, &mut s);
    }
    Params::new().with("z", z).with("tau", t).with("sigma", s)
}

fn e_gamma_mod(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (z, t, s) = (p.c("z")?, p.c("tau")?, p.c("sigma")?);
    let lhs = ell_gamma(z / s, t / s, -ONE / s)?;
    let rhs = (PI * I * modular_q(z, t, s)).exp() * ell_gamma((z - s) / t, -ONE / t, -s / t)? * ell_gamma(z, t, s)?;
    Ok(Sides::exact(lhs, rhs))
}

fn s_gamma_shift(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("z", complex(rng, (-0.5, 0.5), (-0.3, 0.3)))
        .with("tau", complex(rng, (-0.3, 0.3), (0.3, 1.2)))
        .with("sigma", complex(rng, (-0.3, 0.3), (0.3, 1.2)))
}

fn e_gamma_shift(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (z, t, s) = (p.c("z")?, p.c("tau")?, p.c("sigma")?);
    Ok(Sides::exact(ell_gamma(z + t, t, s)?, theta0(z, s)? * ell_gamma(z, t, s)?))
}

fn s_level_theta(i: usize, rng: &mut SampleRng) -> Params {
    let cases = [(0, 1), (1, 2), (2, 4), (3, 5), (5, 3)];
    let (mu, kappa) = cases[i % cases.len()];
    Params::new()
        .with_int("mu", mu)
        .with_int("kappa", kappa)
        .with("lambda", complex(rng, (-0.5, 0.5), (-0.2, 0.2)))
        .with("tau", complex(rng, (-0.5, 0.5), (0.3, 1.2)))
}

fn e_level_theta(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (mu, kappa, lam, tau) = (p.int("mu")?, p.int("kappa")?, p.c("lambda")?, p.c("tau")?);
    Ok(Sides::exact(
        theta_level(mu, kappa, lam, tau, ThetaMode::Series)?,
        theta_level(mu, kappa, lam, tau, ThetaMode::Product)?,
    ))
}

// ---- balanced integral

fn s_balanced(_: usize, rng: &mut SampleRng) -> Params {
    let tau = complex(rng, (-0.3, 0.3), (0.5, 1.2));
    let sigma = complex(rng, (-0.3, 0.3), (0.5, 1.2));
    let total = tau + sigma;
    let w: Vec<Real> = (0..6).map(|_| uniform(rng, 0.5, 1.5)).collect();
    let wsum: Real = w.iter().sum();
    let mut p = Params::new().with("tau", tau).with("sigma", sigma);
    let mut re_sum = 0.0;
    for (i, wi) in w.iter().enumerate().take(5) {
        let re = uniform(rng, -0.3, 0.3);
        re_sum += re;
        p = p.with(&format!("s{}", i + 1), C64::new(re, total.im * wi / wsum));
    }
    p.with("s6", C64::new(total.re - re_sum, total.im * w[5] / wsum))
}

fn e_balanced(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (tau, sigma) = (p.c("tau")?, p.c("sigma")?);
    let mut s = [C64::new(0.0, 0.0); 6];
    for (i, si) in s.iter_mut().enumerate() {
        *si = p.c(&format!("s{}", i + 1))?;
    }
    let sum: C64 = s.iter().sum();
    if (sum - tau - sigma).norm() > 1e-12 {
        return Err(Error::DomainViolation("parameters are not balanced".into()));
    }
    let lhs = balanced_integral(&s, tau, sigma, q)?;
    let mut rhs = 2.0 / (qpoch1(tau, tau)? * qpoch1(sigma, sigma)?);
    for i in 0..6 {
        for j in i + 1..6 {
            rhs *= ell_gamma(s[i] + s[j], tau, sigma)?;
        }
    }
    Ok(sides(lhs, rhs))
}

// ---- evaluations at eta = +-1/8

fn s_tau_sigma(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("tau", complex(rng, (-0.5, 0.5), (0.5, 1.2)))
        .with("sigma", complex(rng, (-0.5, 0.5), (0.5, 1.2)))
}

fn e_eval1(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (tau, sigma) = (p.c("tau")?, p.c("sigma")?);
    Ok(sides(quarter_integral(tau, sigma, 0.125, q)?, eval1_closed(tau, sigma)?))
}

fn e_eval2(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (tau, sigma) = (p.c("tau")?, p.c("sigma")?);
    Ok(sides(quarter_integral(tau, sigma, -0.125, q)?, eval2_closed(tau, sigma)?))
}

fn half() -> C64 {
    c(0.5, 0.0)
}

fn e_fv1(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (tau, sigma) = (p.c("tau")?, p.c("sigma")?);
    let lhs = fv_u(half(), half(), tau, sigma, c(-0.125, 0.0), q)?;
    let rhs = -(ONE + I) / quarter_ratio(tau, sigma)? * half_factor(tau)? * half_factor(sigma)?;
    Ok(sides(lhs, rhs))
}

fn e_fv2_printed(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (tau, sigma) = (p.c("tau")?, p.c("sigma")?);
    let lhs = fv_u(half(), half(), tau, sigma, c(0.125, 0.0), q)?;
    let rhs = -(ONE - I) / quarter_ratio(tau, sigma)? * half_factor(tau)? * half_factor(sigma)?;
    Ok(sides(lhs, rhs))
}

fn e_fv2_chain(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (tau, sigma) = (p.c("tau")?, p.c("sigma")?);
    let lhs = fv_u(half(), half(), tau, sigma, c(0.125, 0.0), q)?;
    // u = -e^{-3 pi i / 2} times the eta = 1/8 evaluation
    let rhs = -(-1.5 * PI * I).exp() * eval1_closed(tau, sigma)?;
    Ok(sides(lhs, rhs))
}

fn s_fv_swap(i: usize, rng: &mut SampleRng) -> Params {
    let im = if i % 2 == 0 { (0.1, 0.3) } else { (-0.3, -0.1) };
    Params::new()
        .with("lambda", small_lambda(rng))
        .with("mu", small_lambda(rng))
        .with("tau", complex(rng, (-0.3, 0.3), (0.5, 1.2)))
        .with("sigma", complex(rng, (-0.3, 0.3), (0.5, 1.2)))
        .with("eta", complex(rng, (-0.1, 0.1), im))
}

fn e_fv_swap(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (l, m, t, s, h) = (p.c("lambda")?, p.c("mu")?, p.c("tau")?, p.c("sigma")?, p.c("eta")?);
    let lhs = fv_u(l, m, t, s, h, q)?;
    let rhs = fv_u(m, l, s, t, h, q)?;
    Ok(Sides {
        lhs: lhs.value,
        rhs: rhs.value,
        quad_error: lhs.error + rhs.error,
        scale: lhs.scale.max(rhs.scale),
    })
}

// ---- symmetric theta integral

fn s_eval3(i: usize, rng: &mut SampleRng) -> Params {
    // stratified over a 6 x 6 grid of (Im tau, Im eta) in [0.2, 0.8]^2
    let cell = |k: usize, rng: &mut SampleRng| 0.2 + 0.1 * (k % 6) as Real + uniform(rng, 0.0, 0.1);
    let ti = cell(i, rng);
    let ei = cell(i / 6, rng);
    Params::new()
        .with("lambda", complex(rng, (-0.5, 0.5), (-0.2, 0.2)))
        .with("tau", C64::new(uniform(rng, -0.2, 0.2), ti))
        .with("eta", C64::new(uniform(rng, -0.1, 0.1), ei))
}

fn e_eval3(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (l, t, h) = (p.c("lambda")?, p.c("tau")?, p.c("eta")?);
    Ok(sides(sym_integral(l, t, h, q)?, eval3_closed(l, t, h)?))
}

fn e_eval3_origin(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (t, h) = (p.c("tau")?, p.c("eta")?);
    Ok(sides(sym_integral(c(0.0, 0.0), t, h, q)?, c(0.0, 0.0)))
}

fn s_eval3_shift(i: usize, rng: &mut SampleRng) -> Params {
    s_eval3(i, rng).with_int("sign", if i % 2 == 0 { 1 } else { -1 })
}

fn e_eval3_shift(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (t, h) = (p.c("tau")?, p.c("eta")?);
    let l = 2.0 * h * p.int("sign")? as Real;
    Ok(sides(sym_integral(l, t, h, q)?, c(0.0, 0.0)))
}

// ---- level-kappa family

fn s_p04(_: usize, rng: &mut SampleRng) -> Params {
    let (tau, eta) = tau_eta_lower(rng);
    Params::new()
        .with("lambda", small_lambda(rng))
        .with("lambda2", small_lambda(rng))
        .with("tau", tau)
        .with("eta", eta)
}

fn e_p04(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let lp = LevelParams::new(0, 4, p.c("tau")?, p.c("eta")?)?;
    Ok(sides(ellmac_p(&lp, p.c("lambda")?, q)?, p04_closed(lp.tau, lp.eta)?))
}

fn e_p04_free(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let lp = LevelParams::new(0, 4, p.c("tau")?, p.c("eta")?)?;
    let a = ellmac_p(&lp, p.c("lambda")?, q)?;
    let b = ellmac_p(&lp, p.c("lambda2")?, q)?;
    Ok(Sides {
        lhs: a.value,
        rhs: b.value,
        quad_error: a.error + b.error,
        scale: a.scale.max(b.scale),
    })
}

/// `(mu, kappa)` pairs with `kappa` in {4, 5, 6, 8}, `mu` in {0, 1, 2} and `mu + 2` not `+-1` mod `kappa`.
pub fn evaluation_cases() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for kappa in [4, 5, 6, 8] {
        for mu in 0..3 {
            let r = (mu + 2) % kappa;
            if r != 1 && r != kappa - 1 {
                out.push((mu, kappa));
            }
        }
    }
    out
}

fn s_ellmac_eval(i: usize, rng: &mut SampleRng) -> Params {
    let cases = evaluation_cases();
    let (mu, kappa) = cases[i % cases.len()];
    Params::new()
        .with_int("mu", mu)
        .with_int("kappa", kappa)
        .with("eta", complex(rng, (-0.1, 0.1), (-0.3, -0.1)))
}

fn e_ellmac_eval(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (mu, kappa, eta) = (p.int("mu")?, p.int("kappa")?, p.c("eta")?);
    let lp = LevelParams::new(mu, kappa, -8.0 * eta, eta)?;
    Ok(sides(ellmac_p(&lp, 4.0 * eta, q)?, ellmac_eval_closed(mu, kappa, eta)?))
}

fn s_q_special(_: usize, rng: &mut SampleRng) -> Params {
    Params::new().with("eta", complex(rng, (-0.2, 0.2), (-0.5, -0.1)))
}

fn e_q_special(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let eta = p.c("eta")?;
    let s = -8.0 * eta;
    let lhs = q_factor(4.0 * eta, s, eta)?;
    let rhs = -2.0 * PI * I * (4.0 * PI * I * eta).exp() * theta0(4.0 * eta, s)? * qpoch1(s, s)?.powu(2)
        / (theta0(2.0 * eta, s)? * theta0(6.0 * eta, s)?);
    Ok(Sides::exact(lhs, rhs))
}

fn s_delta_series(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("lambda", small_lambda(rng))
        .with("tau", complex(rng, (-0.2, 0.2), (0.7, 1.2)))
        .with("eta", complex(rng, (-0.05, 0.05), (-0.15, -0.08)))
}

fn e_delta_series(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let lp = LevelParams::new(2, 4, p.c("tau")?, p.c("eta")?)?;
    let l = p.c("lambda")?;
    let a = delta_tilde(&lp, l, q)?;
    let b = delta_tilde_series(&lp, l, q)?;
    Ok(Sides {
        lhs: a.value,
        rhs: b.value,
        quad_error: a.error + b.error,
        scale: a.scale.max(b.scale),
    })
}

// ---- modular relations of the level-4 evaluation

fn s_mod(rng: &mut SampleRng, sign: Real) -> Params {
    let lambda = small_lambda(rng);
    for _ in 0..10_000 {
        let tau = complex(rng, (-0.9, 0.9), (0.5, 1.3));
        let eta = complex(rng, (-0.3, 0.3), (-0.4, -0.1));
        let s = sign * tau / (8.0 * eta);
        let ok = s.im > 0.25
            && (ONE / (8.0 * eta)).im > 0.25
            && (-ONE / tau).im > 0.3
            && (-8.0 * sign * eta / tau).im > 0.4;
        if ok {
            return Params::new().with("lambda", lambda).with("tau", tau).with("eta", eta);
        }
    }
    unreachable!("rejection sampling for the modular relation did not accept");
}

fn s_mod_minus(_: usize, rng: &mut SampleRng) -> Params {
    s_mod(rng, 1.0)
}

fn s_mod_plus(_: usize, rng: &mut SampleRng) -> Params {
    s_mod(rng, -1.0)
}

fn p04_numeric(lambda: C64, tau: C64, eta: C64, q: &QuadOptions) -> Result<Estimate> {
    ellmac_p(&LevelParams::new(0, 4, tau, eta)?, lambda, q)
}

fn theta_weight(s: C64, a: Real, b: Real) -> Result<C64> {
    Ok(theta(half(), s)? * theta_prime0(s)? / (theta(c(a, 0.0), s)? * theta(c(b, 0.0), s)?))
}

fn e_mod_minus(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (l, tau, eta) = (p.c("lambda")?, p.c("tau")?, p.c("eta")?);
    let s = tau / (8.0 * eta);
    let u = fv_u(half(), half(), ONE / (8.0 * eta), s, c(-0.125, 0.0), q)?;
    let sm = u.scaled(-2.0 * theta_weight(s, 0.75, 0.25)?);
    let a = p04_numeric(l, tau, eta, q)?;
    let b = p04_numeric(l, -ONE / tau, eta / tau, q)?;
    let lhs = a.value * sm.value / b.value;
    let rel = a.error / a.value.norm() + sm.error / sm.value.norm() + b.error / b.value.norm();
    let rhs = 4.0
        * Real::sqrt(2.0)
        * PI
        * I
        * tau
        * (PI * I * (4.0 + 216.0 * eta * eta - 42.0 * eta * (tau - 1.0) + 3.0 * tau + 4.0 * tau * tau) / (12.0 * tau))
            .exp();
    Ok(Sides {
        lhs,
        rhs,
        quad_error: rel * lhs.norm(),
        scale: lhs.norm().max(rhs.norm()),
    })
}

fn e_mod_plus(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (l, tau, eta) = (p.c("lambda")?, p.c("tau")?, p.c("eta")?);
    let s = -tau / (8.0 * eta);
    let u = fv_u(half(), -half(), ONE / (8.0 * eta), s, c(0.125, 0.0), q)?;
    let sp = u.scaled(2.0 * theta_weight(s, 0.25, 0.75)?);
    let a = p04_numeric(l, tau, eta, q)?;
    let b = p04_numeric(l, -ONE / tau, -eta / tau, q)?;
    let lhs = a.value * sp.value / b.value;
    let rel = a.error / a.value.norm() + sp.error / sp.value.norm() + b.error / b.value.norm();
    let rhs = -4.0
        * Real::sqrt(2.0)
        * PI
        * I
        * tau
        * (PI * I * (4.0 + 216.0 * eta * eta - 42.0 * eta * (1.0 + tau) - 3.0 * tau + 4.0 * tau * tau) / (12.0 * tau))
            .exp();
    Ok(Sides {
        lhs,
        rhs,
        quad_error: rel * lhs.norm(),
        scale: lhs.norm().max(rhs.norm()),
    })
}

// ---- pointwise theta/gamma rearrangements used by the symmetric evaluation

fn s_lemma(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("t", complex(rng, (-0.5, 0.5), (-0.1, 0.1)))
        .with("lambda", complex(rng, (-0.5, 0.5), (-0.1, 0.1)))
        .with("z", complex(rng, (-0.5, 0.5), (-0.1, 0.1)))
        .with("tau", complex(rng, (-0.2, 0.2), (0.4, 1.0)))
        .with("sigma", complex(rng, (-0.2, 0.2), (0.4, 1.0)))
        .with("eta", complex(rng, (-0.1, 0.1), (0.1, 0.4)))
}

fn j1(t: C64, tau: C64, eta: C64) -> Result<C64> {
    let p = 8.0 * eta;
    Ok(ell_gamma(t - 2.0 * eta, tau, p)? * ell_gamma(-t - 2.0 * eta, tau, p)? * theta0(t + 4.0 * eta, p)?)
}

fn j2(t: C64, l: C64, tau: C64) -> Result<C64> {
    Ok((-3.0 * PI * I * l).exp() * theta0(t + l, tau)? * theta0(2.0 * t + 6.0 * tau - 4.0 * l + 0.5, 8.0 * tau)?)
}

fn e_sym_rearrange(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (t, tau, eta) = (p.c("t")?, p.c("tau")?, p.c("eta")?);
    let g = |z: C64| ell_gamma(z, tau, 8.0 * eta);
    let lhs = g(t - 2.0 * eta)? / g(t + 2.0 * eta)? / theta0(t + 2.0 * eta, tau)? / theta0(t + 2.0 * eta, 8.0 * eta)?;
    let rhs = -(-2.0 * PI * I * t - 4.0 * PI * I * eta).exp() * g(t - 2.0 * eta)? * g(-t - 2.0 * eta)?;
    Ok(Sides::exact(lhs, rhs))
}

fn e_theta_simp(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (t, l, tau) = (p.c("t")?, p.c("lambda")?, p.c("tau")?);
    let lhs = j2(t, l, tau)? - j2(-t, -l, tau)?;
    let rhs = 2.0 * theta0(6.0 * tau + 0.5, 8.0 * tau)? * (PI * I * l - 2.0 * PI * I * t).exp() * theta0(t + l, tau)?
        * theta0(t - 2.0 * l + 0.5, 2.0 * tau)?
        / theta0(half(), 2.0 * tau)?;
    Ok(Sides::exact(lhs, rhs))
}

fn e_theta_simp2(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (z, s) = (p.c("z")?, p.c("sigma")?);
    let lhs = theta0(2.0 * z + 3.0 * s + 0.5, 4.0 * s)? + (-2.0 * PI * I * z).exp() * theta0(2.0 * z + s + 0.5, 4.0 * s)?;
    let rhs = 2.0 * theta0(3.0 * s + 0.5, 4.0 * s)? * (-2.0 * PI * I * z).exp() * theta0(z + 0.5, s)? / theta0(half(), s)?;
    Ok(Sides::exact(lhs, rhs))
}

/// Right-hand bracket shared by the three-term and full symmetrisations.
fn simp3_bracket(t: C64, l: C64, tau: C64) -> Result<(C64, C64)> {
    let t2 = 2.0 * tau;
    let a = theta0(2.0 * l + 0.5, t2)? / theta0(tau + 0.5, t2)? * theta0(t + 0.5, t2)?.powu(2);
    let b = theta0(l + 0.5, tau)?.powu(2) / theta0(tau, t2)? * theta0(t, t2)?.powu(2);
    Ok((a, b))
}

fn e_theta_simp3(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (t, l, tau) = (p.c("t")?, p.c("lambda")?, p.c("tau")?);
    let t2 = 2.0 * tau;
    let lhs = (PI * I * l).exp() * theta0(t + l, tau)? * theta0(t - 2.0 * l + 0.5, t2)?
        - (-PI * I * l).exp() * theta0(t - l, tau)? * theta0(t + 2.0 * l + 0.5, t2)?;
    let (a, b) = simp3_bracket(t, l, tau)?;
    let rhs = 2.0 * (-3.0 * PI * I * l).exp() * theta0(t + tau + 0.5, t2)? * theta0(l, tau)?
        / theta0(half(), t2)?.powu(2)
        * (a - b);
    Ok(Sides::exact(lhs, rhs))
}

fn e_full_sym(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (t, l, tau) = (p.c("t")?, p.c("lambda")?, p.c("tau")?);
    let t2 = 2.0 * tau;
    let lhs = j2(t, l, tau)? - j2(t, -l, tau)? + j2(-t, l, tau)? - j2(-t, -l, tau)?;
    let (a, b) = simp3_bracket(t, l, tau)?;
    let rhs = 4.0 * theta0(6.0 * tau + 0.5, 8.0 * tau)? * theta0(l, tau)? / theta0(half(), t2)?.powu(3)
        * (-3.0 * PI * I * l).exp()
        * (-2.0 * PI * I * t).exp()
        * theta0(t + tau + 0.5, t2)?
        * (a - b);
    Ok(Sides::exact(lhs, rhs))
}

fn gamma_product(args: &[C64], tau: C64, sigma: C64) -> Result<C64> {
    let mut r = ONE;
    for &a in args {
        r *= ell_gamma(a, tau, sigma)?;
    }
    Ok(r)
}

/// Gamma arguments (in `(2 tau, 8 eta)`) of the second integral evaluation.
pub fn int_eval2_args(tau: C64, eta: C64) -> Vec<C64> {
    let h = 0.5;
    vec![
        -4.0 * eta + tau,
        6.0 * eta + h,
        -2.0 * eta,
        2.0 * eta + h,
        -2.0 * eta + tau,
        -2.0 * eta + tau,
        -2.0 * eta + 2.0 * tau,
        8.0 * eta + h,
        12.0 * eta,
        8.0 * eta + tau + h,
        4.0 * eta + h,
        tau,
    ]
}

/// Gamma arguments (in `(2 tau, 8 eta)`) of the first integral evaluation.
pub fn int_eval1_args(tau: C64, eta: C64) -> Vec<C64> {
    let h = 0.5;
    vec![
        -4.0 * eta + tau,
        6.0 * eta,
        -2.0 * eta + h,
        2.0 * eta + h,
        -2.0 * eta + tau,
        6.0 * eta + tau,
        -2.0 * eta + tau + h,
        2.0 * eta + tau + h,
        -2.0 * eta + 2.0 * tau,
        8.0 * eta + h,
        12.0 * eta + h,
        8.0 * eta + tau,
        4.0 * eta,
        tau + h,
    ]
}

fn int_eval_prefactor(tau: C64, eta: C64) -> Result<C64> {
    Ok(2.0 / (qpoch1(2.0 * tau, 2.0 * tau)? * qpoch1(8.0 * eta, 8.0 * eta)?))
}

fn e_theta_simp4(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (tau, eta) = (p.c("tau")?, p.c("eta")?);
    let lhs = int_eval_prefactor(tau, eta)? * gamma_product(&int_eval2_args(tau, eta), 2.0 * tau, 8.0 * eta)?;
    let p8 = 8.0 * eta;
    let rhs = 2.0 * ell_gamma(6.0 * eta, tau, p8)? / ell_gamma(2.0 * eta, tau, p8)? * qpoch1(tau + 0.5, tau)?
        * theta0(2.0 * eta + 0.5, tau)?
        * theta0(tau + 2.0 * eta + 0.5, tau)?
        / (qpoch1(tau, tau)? * theta0(tau + 4.0 * eta, tau)?)
        / (qpoch1(4.0 * eta, 4.0 * eta)? * qpoch1(2.0 * eta + 0.5, 2.0 * eta)?);
    Ok(Sides::exact(lhs, rhs))
}

fn s_lemma_integral(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("lambda", small_lambda(rng))
        .with("tau", complex(rng, (-0.2, 0.2), (0.4, 1.0)))
        .with("eta", complex(rng, (-0.1, 0.1), (0.1, 0.4)))
}

fn e_int_rearrange(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (l, tau, eta) = (p.c("lambda")?, p.c("tau")?, p.c("eta")?);
    let lhs = asym_integral(l, tau, eta, q)?;
    let f = |t: C64| -> Result<C64> { Ok(j1(t, tau, eta)? * j2(t, l, tau)?) };
    let r = integrate_separated(f, &asym_poles(tau, eta), q)?;
    let pre = (-12.0 * PI * I * eta).exp();
    Ok(Sides {
        lhs: lhs.value,
        rhs: pre * r.value,
        quad_error: lhs.error + pre.norm() * r.error_estimate,
        scale: lhs.scale,
    })
}

fn int_eval(p: &Params, q: &QuadOptions, first: bool) -> Result<Sides> {
    let (tau, eta) = (p.c("tau")?, p.c("eta")?);
    let t2 = 2.0 * tau;
    let f = |t: C64| -> Result<C64> {
        let a = if first { theta0(t, t2)? } else { theta0(t + 0.5, t2)? };
        Ok(j1(t, tau, eta)? * (-2.0 * PI * I * t).exp() * a * a * theta0(t + tau + 0.5, t2)?)
    };
    let r = integrate_separated(f, &asym_poles(tau, eta), q)?;
    let (sign, args) = if first {
        (-1.0, int_eval1_args(tau, eta))
    } else {
        (1.0, int_eval2_args(tau, eta))
    };
    let rhs = sign * int_eval_prefactor(tau, eta)? * gamma_product(&args, t2, 8.0 * eta)?;
    Ok(Sides {
        lhs: r.value,
        rhs,
        quad_error: r.error_estimate,
        scale: r.value.norm().max(rhs.norm()),
    })
}

fn e_int_eval1(p: &Params, q: &QuadOptions) -> Result<Sides> {
    int_eval(p, q, true)
}

fn e_int_eval2(p: &Params, q: &QuadOptions) -> Result<Sides> {
    int_eval(p, q, false)
}

// ---- affine bridge

fn s_bridge_denominator(_: usize, rng: &mut SampleRng) -> Params {
    let q = C64::from_polar(uniform(rng, 1.15, 1.6), uniform(rng, -0.2, 0.2));
    Params::new()
        .with("q", q)
        .with("lambda", complex(rng, (-0.5, 0.5), (-0.1, 0.1)))
        .with("omega", complex(rng, (3.8, 6.0), (-0.3, 0.3)))
}

fn e_bridge_denominator(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let ap = bridge::AffineParams::new(0, 0, p.c("q")?, p.c("lambda")?, p.c("omega")?)?;
    Ok(sides(bridge::j_mu_k(&ap, q)?, ONE))
}

/// `(mu, k)` pairs checked through the full pipeline (`mu + 2` not `+-1` mod `k + 4`).
pub fn bridge_cases() -> Vec<(i64, i64)> {
    vec![(1, 1), (0, 2), (1, 2), (0, 0), (2, 0), (3, 3)]
}

fn s_bridge_eval(i: usize, rng: &mut SampleRng) -> Params {
    let cases = bridge_cases();
    let (mu, k) = cases[i % cases.len()];
    Params::new()
        .with_int("mu", mu)
        .with_int("k", k)
        .with("q", C64::from_polar(uniform(rng, 1.25, 1.6), uniform(rng, -0.15, 0.15)))
}

fn e_bridge_eval(p: &Params, q: &QuadOptions) -> Result<Sides> {
    let (mu, k, qq) = (p.int("mu")?, p.int("k")?, p.c("q")?);
    let ap = bridge::AffineParams::new(mu, k, qq, c(2.0, 0.0), c(4.0, 0.0))?;
    let lhs = bridge::j_mu_k(&ap, q)?;
    let rhs = bridge::evaluation_closed(mu, k, qq)?;
    Ok(Sides {
        lhs: lhs.value,
        rhs,
        quad_error: lhs.error,
        scale: lhs.scale.max(rhs.norm()).max(1.0),
    })
}

fn s_chi(_: usize, rng: &mut SampleRng) -> Params {
    Params::new()
        .with("q", C64::from_polar(uniform(rng, 1.25, 1.5), uniform(rng, -0.2, 0.2)))
        .with("lambda", complex(rng, (-0.5, 0.5), (-0.1, 0.1)))
        .with("omega", complex(rng, (4.5, 6.0), (-0.2, 0.2)))
}

fn e_chi(p: &Params, _: &QuadOptions) -> Result<Sides> {
    let (q, l, w) = (p.c("q")?, p.c("lambda")?, p.c("omega")?);
    Ok(Sides::exact(bridge::chi_002(q, l, w)?, bridge::chi_002_series(q, l, w)?))
}

macro_rules! ident {
    ($id:expr, $st:expr, $dom:expr, $tol:expr, $n:expr, $s:expr, $e:expr) => {
        NumericIdentity {
            id: $id,
            statement: $st,
            domain: $dom,
            tolerance: $tol,
            samples: $n,
            sampler: $s,
            eval: $e,
        }
    };
}

pub fn all() -> Vec<NumericIdentity> {
    vec![
        ident!(
            "kernel.theta-modular",
            "theta(z/tau; -1/tau) = -i sqrt(-i tau) e^{pi i z^2/tau} theta(z; tau)",
            "Im tau in [0.5, 1.5]",
            1e-10,
            20,
            s_theta_mod,
            e_theta_mod
        ),
        ident!(
            "kernel.gamma-modular",
            "Gamma(z/sigma; tau/sigma, -1/sigma) = e^{pi i Q(z)} Gamma((z-sigma)/tau; -1/tau, -sigma/tau) Gamma(z; tau, sigma)",
            "Im tau, Im sigma in [0.5, 1.5], Im(tau/sigma) > 0",
            1e-10,
            20,
            s_gamma_mod,
            e_gamma_mod
        ),
        ident!(
            "kernel.gamma-shift",
            "Gamma(z + tau; tau, sigma) = theta0(z; sigma) Gamma(z; tau, sigma)",
            "Im tau, Im sigma in [0.3, 1.2]",
            1e-10,
            20,
            s_gamma_shift,
            e_gamma_shift
        ),
        ident!(
            "kernel.level-theta",
            "level-kappa theta series equals its triple product form",
            "Im tau in [0.3, 1.2]",
            1e-10,
            20,
            s_level_theta,
            e_level_theta
        ),
        ident!(
            "spiridonov",
            "elliptic beta integral: int prod Gamma(+-t + s_i)/Gamma(+-2t) = 2 prod_{i<j} Gamma(s_i + s_j) / ((tau;tau)(sigma;sigma))",
            "Im tau, Im sigma in [0.5, 1.2]; Im s_i > 0; sum s_i = tau + sigma",
            1e-8,
            20,
            s_balanced,
            e_balanced
        ),
        ident!(
            "eval1",
            "gamma/theta integral at eta = 1/8 (contour above -1/4, below 1/4) equals -(1+i) Gamma(1/4)/Gamma(3/4) P(tau) P(sigma)",
            "Im tau, Im sigma in [0.5, 1.2]",
            1e-8,
            20,
            s_tau_sigma,
            e_eval1
        ),
        ident!(
            "eval2",
            "gamma/theta integral at eta = -1/8 (contour above 1/4, below -1/4) equals -(1-i) Gamma(3/4)/Gamma(1/4) P(tau) P(sigma)",
            "Im tau, Im sigma in [0.5, 1.2]",
            1e-8,
            20,
            s_tau_sigma,
            e_eval2
        ),
        ident!(
            "eval3",
            "antisymmetrised theta integral equals the gamma prefactor times e^{-3 pi i lambda} theta0(lambda) theta0(lambda - 2 eta) theta0(lambda + 2 eta)",
            "stratified grid Im tau, Im eta in [0.2, 0.8]",
            1e-8,
            36,
            s_eval3,
            e_eval3
        ),
        ident!(
            "eval3.zero-origin",
            "antisymmetrised theta integral vanishes at lambda = 0",
            "Im tau, Im eta in [0.2, 0.8]",
            1e-8,
            10,
            s_eval3,
            e_eval3_origin
        ),
        ident!(
            "eval3.zero-shift",
            "antisymmetrised theta integral vanishes at lambda = +-2 eta",
            "Im tau, Im eta in [0.2, 0.8]",
            1e-8,
            10,
            s_eval3_shift,
            e_eval3_shift
        ),
        ident!(
            "fv-val1",
            "u(1/2, 1/2; tau, sigma; -1/8) = -(1+i) Gamma(3/4)/Gamma(1/4) P(tau) P(sigma)",
            "Im tau, Im sigma in [0.5, 1.2]",
            1e-8,
            20,
            s_tau_sigma,
            e_fv1
        ),
        ident!(
            "fv-val2",
            "u(1/2, 1/2; tau, sigma; 1/8) = -(1-i) Gamma(3/4)/Gamma(1/4) P(tau) P(sigma)",
            "Im tau, Im sigma in [0.5, 1.2]",
            1e-8,
            20,
            s_tau_sigma,
            e_fv2_printed
        ),
        ident!(
            "fv-val2.via-eval1",
            "u(1/2, 1/2; tau, sigma; 1/8) = -e^{-3 pi i/2} times the eta = 1/8 evaluation, i.e. -(1-i) Gamma(1/4)/Gamma(3/4) P(tau) P(sigma)",
            "Im tau, Im sigma in [0.5, 1.2]",
            1e-8,
            20,
            s_tau_sigma,
            e_fv2_chain
        ),
        ident!(
            "fv-swap",
            "u(lambda, mu; tau, sigma; eta) = u(mu, lambda; sigma, tau; eta)",
            "Im tau, Im sigma in [0.5, 1.2]; |Im eta| in [0.1, 0.3], both signs",
            1e-10,
            10,
            s_fv_swap,
            e_fv_swap
        ),
        ident!(
            "ellmac-val",
            "level-4, mu = 0 theta-weighted integral equals its gamma/Pochhammer closed form",
            "Im tau in [0.4, 1.2], Im eta in [-0.5, -0.1]",
            1e-8,
            10,
            s_p04,
            e_p04
        ),
        ident!(
            "ellmac-val.lambda-free",
            "level-4, mu = 0 theta-weighted integral does not depend on lambda",
            "Im tau in [0.4, 1.2], Im eta in [-0.5, -0.1]",
            1e-8,
            10,
            s_p04,
            e_p04_free
        ),
        ident!(
            "ellmac-eval",
            "level-kappa integral at lambda = 4 eta, tau = -8 eta equals its closed form",
            "kappa in {4, 5, 6, 8}, mu in {0, 1, 2}, mu + 2 not +-1 mod kappa; Im eta in [-0.3, -0.1]",
            1e-8,
            20,
            s_ellmac_eval,
            e_ellmac_eval
        ),
        ident!(
            "q-factor.special",
            "Q(4 eta; -8 eta, eta) = -2 pi i e^{4 pi i eta} theta0(4 eta) (s; s)^2 / (theta0(2 eta) theta0(6 eta)), s = -8 eta",
            "Im eta in [-0.5, -0.1]",
            1e-10,
            20,
            s_q_special,
            e_q_special
        ),
        ident!(
            "delta.series",
            "level-4, mu = 2 integral equals its expansion as a sum of u-integrals over j in 8Z + 2",
            "Im tau in [0.7, 1.2], Im eta in [-0.15, -0.08]",
            1e-6,
            5,
            s_delta_series,
            e_delta_series
        ),
        ident!(
            "ellmac-mod.minus",
            "P(tau, eta) S^-(tau, eta) / P(-1/tau, eta/tau) = 4 sqrt2 pi i tau exp(...)",
            "Im eta < 0, Im(tau/eta) > 0",
            1e-6,
            5,
            s_mod_minus,
            e_mod_minus
        ),
        ident!(
            "ellmac-mod.plus",
            "P(tau, eta) S^+(tau, eta) / P(-1/tau, -eta/tau) = -4 sqrt2 pi i tau exp(...)",
            "Im eta < 0, Im(tau/eta) < 0",
            1e-6,
            5,
            s_mod_plus,
            e_mod_plus
        ),
        ident!(
            "lemma.sym-rearrange",
            "Gamma(t-2eta)/Gamma(t+2eta) / (theta0(t+2eta; tau) theta0(t+2eta; 8eta)) = -e^{-2 pi i t - 4 pi i eta} Gamma(t-2eta) Gamma(-t-2eta)",
            "Im tau in [0.4, 1.0], Im eta in [0.1, 0.4]",
            1e-8,
            20,
            s_lemma,
            e_sym_rearrange
        ),
        ident!(
            "lemma.int-rearrange",
            "asymmetric theta integral equals e^{-12 pi i eta} int J1(t) J2(t, lambda)",
            "Im tau in [0.4, 1.0], Im eta in [0.1, 0.4]",
            1e-8,
            20,
            s_lemma_integral,
            e_int_rearrange
        ),
        ident!(
            "lemma.theta-simp",
            "J2(t, lambda) - J2(-t, -lambda) as a single theta product",
            "Im tau in [0.4, 1.0]",
            1e-8,
            20,
            s_lemma,
            e_theta_simp
        ),
        ident!(
            "lemma.full-sym",
            "four-term symmetrisation of J2 as two theta products",
            "Im tau in [0.4, 1.0]",
            1e-8,
            20,
            s_lemma,
            e_full_sym
        ),
        ident!(
            "lemma.theta-simp2",
            "theta0(2z+3s+1/2; 4s) + e^{-2 pi i z} theta0(2z+s+1/2; 4s) = 2 theta0(3s+1/2; 4s) e^{-2 pi i z} theta0(z+1/2; s)/theta0(1/2; s)",
            "Im sigma in [0.4, 1.0]",
            1e-8,
            20,
            s_lemma,
            e_theta_simp2
        ),
        ident!(
            "lemma.theta-simp3",
            "two-term theta difference in t, lambda as a combination of theta0(t; 2tau)^2 and theta0(t+1/2; 2tau)^2",
            "Im tau in [0.4, 1.0]",
            1e-8,
            20,
            s_lemma,
            e_theta_simp3
        ),
        ident!(
            "lemma.theta-simp4",
            "product of twelve gamma values in (2tau, 8eta) equals the symmetric evaluation prefactor",
            "Im tau in [0.4, 1.0], Im eta in [0.1, 0.4]",
            1e-8,
            20,
            s_lemma,
            e_theta_simp4
        ),
        ident!(
            "lemma.int-eval1",
            "elliptic beta integral with J1 and theta0(t; 2tau)^2 weight equals fourteen gamma values",
            "Im tau in [0.4, 1.0], Im eta in [0.1, 0.4]",
            1e-8,
            20,
            s_lemma_integral,
            e_int_eval1
        ),
        ident!(
            "lemma.int-eval2",
            "elliptic beta integral with J1 and theta0(t+1/2; 2tau)^2 weight equals twelve gamma values",
            "Im tau in [0.4, 1.0], Im eta in [0.1, 0.4]",
            1e-8,
            20,
            s_lemma_integral,
            e_int_eval2
        ),
        ident!(
            "bridge.denominator",
            "affine bridge at mu = k = 0 (theta-weighted integral over the character closed form) equals 1",
            "|q| in [1.15, 1.6], Re omega in [3.8, 6]",
            1e-6,
            10,
            s_bridge_denominator,
            e_bridge_denominator
        ),
        ident!(
            "bridge.evaluation",
            "affine bridge at lambda = 2, omega = 4 equals the q-product evaluation",
            "|q| in [1.25, 1.6]; (mu, k) from a fixed list",
            1e-6,
            6,
            s_bridge_eval,
            e_bridge_eval
        ),
        ident!(
            "bridge.chi-series",
            "level-zero character closed form equals its exact series expansion evaluated numerically",
            "|q| in [1.2, 1.5], Re omega in [4, 6]",
            1e-10,
            5,
            s_chi,
            e_chi
        ),
    ]
}
