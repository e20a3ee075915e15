use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thetahyp::kernel::{
    c, e, ell_gamma, modular_q, poch2_nome, poch_nome, qpoch1, qpoch2, theta, theta0, theta_level, theta_prime0,
    ThetaMode, Truncation, C64, I,
};

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn upper(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    c(rng.random_range(-0.5..0.5), rng.random_range(lo..hi))
}

fn point(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.random_range(-0.5..0.5), rng.random_range(-0.3..0.3))
}

#[test]
fn pochhammer_basics() {
    let t = Truncation::default();
    for q in [c(0.3, 0.1), c(-0.7, 0.2), c(0.0, 0.0)] {
        assert_eq!(poch_nome(c(0.0, 0.0), q, &t).unwrap().value, c(1.0, 0.0));
    }
    // direct product run until |u q^n| < 1e-17
    let mut oracle = c(1.0, 0.0);
    let mut term = 0.5;
    while term > 1e-17 {
        oracle *= 1.0 - term;
        term *= 0.25;
    }
    let v = poch_nome(c(0.5, 0.0), c(0.25, 0.0), &t).unwrap().value;
    assert!(rel(v, oracle) < 1e-14);
    assert!((v.re - 0.4194224).abs() < 1e-7);
    let u = c(0.37, -0.2);
    assert_eq!(poch_nome(u, c(0.0, 0.0), &t).unwrap().value, 1.0 - u);
}

#[test]
fn pochhammer_recurrence_and_double_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let z = point(&mut rng);
        let tau = upper(&mut rng, 0.3, 1.2);
        let sigma = upper(&mut rng, 0.3, 1.2);
        let a = qpoch1(z, tau).unwrap();
        assert!(rel(a, (1.0 - e(z)) * qpoch1(z + tau, tau).unwrap()) < 1e-12);
        let d = qpoch2(z, tau, sigma).unwrap();
        assert!(rel(d, qpoch2(z, sigma, tau).unwrap()) < 1e-12);
        assert!(rel(d, a * qpoch2(z + sigma, tau, sigma).unwrap()) < 1e-12);
    }
    let t = Truncation::default();
    let (u, q, r) = (0.3, 0.2, 0.1);
    let mut oracle = 1.0;
    let mut rm = 1.0;
    while u * rm >= 1e-17 {
        let mut f = u * rm;
        while f >= 1e-17 {
            oracle *= 1.0 - f;
            f *= q;
        }
        rm *= r;
    }
    let v = poch2_nome(c(u, 0.0), c(q, 0.0), c(r, 0.0), &t).unwrap().value;
    assert!(rel(v, c(oracle, 0.0)) < 1e-14);
}

#[test]
fn invalid_moduli_are_rejected() {
    let t = Truncation::default();
    assert!(poch_nome(c(0.5, 0.0), c(1.0, 0.0), &t).is_err());
    assert!(qpoch1(c(0.1, 0.0), c(0.3, -0.2)).is_err());
    assert!(theta0(c(0.1, 0.0), c(0.3, 0.0)).is_err());
}

#[test]
fn theta0_periodicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let z = point(&mut rng);
        let tau = upper(&mut rng, 0.3, 1.5);
        let v = theta0(z, tau).unwrap();
        assert!(rel(theta0(z + 1.0, tau).unwrap(), v) < 1e-12);
        assert!(rel(theta0(z + tau, tau).unwrap(), -(-2.0 * PI * I * z).exp() * v) < 1e-12);
        assert!(rel(theta0(-z, tau).unwrap(), -(-2.0 * PI * I * z).exp() * v) < 1e-12);
    }
}

#[test]
fn jacobi_theta_parity_and_modularity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let z = point(&mut rng);
        let tau = upper(&mut rng, 0.3, 1.5);
        assert_eq!(theta(c(0.0, 0.0), tau).unwrap(), c(0.0, 0.0));
        assert!(rel(theta(-z, tau).unwrap(), -theta(z, tau).unwrap()) < 1e-12);
        let lhs = theta(z / tau, -1.0 / tau).unwrap();
        let rhs = -I * (-I * tau).sqrt() * (PI * I * z * z / tau).exp() * theta(z, tau).unwrap();
        assert!(rel(lhs, rhs) < 1e-10, "tau = {tau}");
    }
}

#[test]
fn theta_derivative_at_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = 1e-6;
    for _ in 0..20 {
        let tau = upper(&mut rng, 0.3, 1.5);
        let d = theta_prime0(tau).unwrap();
        let fd = (theta(c(h, 0.0), tau).unwrap() - theta(c(-h, 0.0), tau).unwrap()) / (2.0 * h);
        assert!(rel(fd, d) < 1e-8);
        let ratio = d / qpoch1(tau, tau).unwrap().powu(3);
        assert!(rel(ratio, 2.0 * PI * (PI * I * tau / 4.0).exp()) < 1e-12);
    }
    // the products tend to 1; the exponential prefactor remains
    let tau = c(0.1, 30.0);
    let far = theta_prime0(tau).unwrap() / (PI * I * tau / 4.0).exp();
    assert!((far.norm() - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn elliptic_gamma_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let z = point(&mut rng);
        let tau = upper(&mut rng, 0.3, 1.2);
        let sigma = upper(&mut rng, 0.3, 1.2);
        assert_eq!(ell_gamma((tau + sigma) / 2.0, tau, sigma).unwrap(), c(1.0, 0.0));
        let g = ell_gamma(z, tau, sigma).unwrap();
        assert!(rel(g, ell_gamma(z, sigma, tau).unwrap()) < 1e-12);
        assert!((g * ell_gamma(tau + sigma - z, tau, sigma).unwrap() - 1.0).norm() < 1e-12);
        assert!(rel(ell_gamma(z + tau, tau, sigma).unwrap(), theta0(z, sigma).unwrap() * g) < 1e-12);
        assert!(rel(ell_gamma(z + sigma, tau, sigma).unwrap(), theta0(z, tau).unwrap() * g) < 1e-12);
    }
}

#[test]
fn gamma_pole_is_reported() {
    let (tau, sigma) = (c(0.1, 0.8), c(-0.2, 0.9));
    assert!(ell_gamma(c(0.0, 0.0), tau, sigma).is_err());
    assert!(ell_gamma(tau + sigma, tau, sigma).is_ok());
}

#[test]
fn modular_cubic() {
    let (tau, sigma) = (c(0.2, 0.9), c(-0.1, 1.1));
    let q0 = modular_q(c(0.0, 0.0), tau, sigma);
    assert!(rel(q0, (tau + sigma - 1.0) * (1.0 / tau + 1.0 / sigma - 1.0) / 12.0) < 1e-14);
    // fourth finite difference vanishes, third gives 6 * leading coefficient
    let f = |x: f64| modular_q(c(x, 0.0), tau, sigma) - q0;
    let d3 = f(3.0) - 3.0 * f(2.0) + 3.0 * f(1.0) - f(0.0);
    let d4 = f(4.0) - 4.0 * f(3.0) + 6.0 * f(2.0) - 4.0 * f(1.0) + f(0.0);
    assert!(rel(d3 / 6.0, 1.0 / (3.0 * tau * sigma)) < 1e-12);
    assert!(d4.norm() < 1e-12);
}

#[test]
fn gamma_modular_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 50 {
        let z = point(&mut rng);
        let tau = upper(&mut rng, 0.3, 1.5);
        let sigma = upper(&mut rng, 0.3, 1.5);
        if (tau / sigma).im <= 0.05 {
            continue;
        }
        let lhs = ell_gamma(z / sigma, tau / sigma, -1.0 / sigma).unwrap();
        let rhs = (PI * I * modular_q(z, tau, sigma)).exp()
            * ell_gamma((z - sigma) / tau, -1.0 / tau, -sigma / tau).unwrap()
            * ell_gamma(z, tau, sigma).unwrap();
        assert!(rel(lhs, rhs) < 1e-8, "z={z} tau={tau} sigma={sigma}");
        done += 1;
    }
}

#[test]
fn level_theta() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let tau = upper(&mut rng, 0.3, 1.2);
        let lambda = point(&mut rng);
        let kappa = rng.random_range(1..6);
        let mu = rng.random_range(0..2 * kappa);
        let s = theta_level(mu, kappa, lambda, tau, ThetaMode::Series).unwrap();
        let p = theta_level(mu, kappa, lambda, tau, ThetaMode::Product).unwrap();
        assert!(rel(p, s) < 1e-10);
        let shifted = theta_level(mu + 2 * kappa, kappa, lambda, tau, ThetaMode::Series).unwrap();
        assert!(rel(shifted, s) < 1e-12);
        let k = kappa as f64;
        let moved = theta_level(mu, kappa, lambda + 2.0 * tau, tau, ThetaMode::Series).unwrap();
        assert!(rel(moved, (-2.0 * PI * I * k * (tau + lambda)).exp() * s) < 1e-10);
    }
    assert!(theta_level(0, 0, c(0.1, 0.0), c(0.0, 1.0), ThetaMode::Series).is_err());
}

#[test]
fn kernel_is_pure() {
    let (z, tau, sigma) = (c(0.13, 0.05), c(0.21, 0.77), c(-0.3, 0.9));
    assert_eq!(ell_gamma(z, tau, sigma).unwrap(), ell_gamma(z, tau, sigma).unwrap());
    assert_eq!(theta(z, tau).unwrap(), theta(z, tau).unwrap());
}
