//! Theta and gamma rearrangements as exact series in exponentials of the
//! arguments. `e(1/2 + u)` becomes a monomial with coefficient `-1`.

use super::{rat, Mono, Product, Ring, Series};
use crate::error::{Error, Result};

pub const LEMMA_IDS: [&str; 4] = ["theta-simp2", "theta-simp3", "theta-simp4", "sym-rearrange"];

/// Ring `a = e(z)` (weight 0), `s = e(sigma)` (weight 1).
pub fn theta_simp2(order: i64) -> Result<(Series, Series)> {
    let r = Ring::new(&[("a", 0), ("s", 1)]);
    let s4 = r.exps(&[("s", 4)]);
    let s1 = r.exps(&[("s", 1)]);
    let mut t1 = Product::new(&r);
    t1.theta0(Mono::signed(&r, -1, &[("a", 2), ("s", 3)]), s4.clone(), 1);
    let mut t2 = Product::new(&r);
    t2.times(&Mono::unit(&r, &[("a", -1)]))
        .theta0(Mono::signed(&r, -1, &[("a", 2), ("s", 1)]), s4.clone(), 1);
    let lhs = &t1.build(order)? + &t2.build(order)?;
    let mut rhs = Product::new(&r);
    rhs.scale(rat(2))
        .theta0(Mono::signed(&r, -1, &[("s", 3)]), s4, 1)
        .times(&Mono::unit(&r, &[("a", -1)]))
        .theta0(Mono::signed(&r, -1, &[("a", 1)]), s1.clone(), 1)
        .theta0(Mono::signed(&r, -1, &[]), s1, -1);
    Ok((lhs, rhs.build(order)?))
}

/// Ring `x = e(t)`, `l = e(lambda / 2)` (weight 0), `s = e(tau)` (weight 1).
pub fn theta_simp3(order: i64) -> Result<(Series, Series)> {
    let r = Ring::new(&[("x", 0), ("l", 0), ("s", 1)]);
    let s1 = r.exps(&[("s", 1)]);
    let s2 = r.exps(&[("s", 2)]);
    let mut a = Product::new(&r);
    a.times(&Mono::unit(&r, &[("l", 1)]))
        .theta0(Mono::unit(&r, &[("x", 1), ("l", 2)]), s1.clone(), 1)
        .theta0(Mono::signed(&r, -1, &[("x", 1), ("l", -4)]), s2.clone(), 1);
    let mut b = Product::new(&r);
    b.times(&Mono::unit(&r, &[("l", -1)]))
        .theta0(Mono::unit(&r, &[("x", 1), ("l", -2)]), s1.clone(), 1)
        .theta0(Mono::signed(&r, -1, &[("x", 1), ("l", 4)]), s2.clone(), 1);
    let lhs = &a.build(order)? - &b.build(order)?;

    let mut pre = Product::new(&r);
    pre.scale(rat(2))
        .times(&Mono::unit(&r, &[("l", -3)]))
        .theta0(Mono::signed(&r, -1, &[("x", 1), ("s", 1)]), s2.clone(), 1)
        .theta0(Mono::unit(&r, &[("l", 2)]), s1.clone(), 1)
        .theta0(Mono::signed(&r, -1, &[]), s2.clone(), -2);
    let mut ta = Product::new(&r);
    ta.theta0(Mono::signed(&r, -1, &[("l", 4)]), s2.clone(), 1)
        .theta0(Mono::signed(&r, -1, &[("s", 1)]), s2.clone(), -1)
        .theta0(Mono::signed(&r, -1, &[("x", 1)]), s2.clone(), 2);
    let mut tb = Product::new(&r);
    tb.theta0(Mono::signed(&r, -1, &[("l", 2)]), s1, 2)
        .theta0(Mono::unit(&r, &[("s", 1)]), s2.clone(), -1)
        .theta0(Mono::unit(&r, &[("x", 1)]), s2, 2);
    let bracket = &ta.build(order)? - &tb.build(order)?;
    Ok((lhs, &pre.build(order)? * &bracket))
}

/// Ring `h = e(eta)` (weight 1), `s = e(tau)` (weight 5).
pub fn theta_simp4(order: i64) -> Result<(Series, Series)> {
    let r = Ring::new(&[("h", 1), ("s", 5)]);
    let (ss, h8) = (r.exps(&[("s", 2)]), r.exps(&[("h", 8)]));
    let mut lhs = Product::new(&r);
    lhs.scale(rat(2))
        .poch(Mono::unit(&r, &[("s", 2)]), vec![ss.clone()], -1)
        .poch(Mono::unit(&r, &[("h", 8)]), vec![h8.clone()], -1);
    let args: [(i64, &[(&str, i64)]); 12] = [
        (1, &[("s", 1), ("h", -4)]),
        (-1, &[("h", 6)]),
        (1, &[("h", -2)]),
        (-1, &[("h", 2)]),
        (1, &[("s", 1), ("h", -2)]),
        (1, &[("s", 1), ("h", -2)]),
        (1, &[("s", 2), ("h", -2)]),
        (-1, &[("h", 8)]),
        (1, &[("h", 12)]),
        (-1, &[("s", 1), ("h", 8)]),
        (-1, &[("h", 4)]),
        (1, &[("s", 1)]),
    ];
    for (sign, pairs) in args {
        lhs.gamma(Mono::signed(&r, sign, pairs), ss.clone(), h8.clone(), 1);
    }
    let s1 = r.exps(&[("s", 1)]);
    let mut rhs = Product::new(&r);
    rhs.scale(rat(2))
        .gamma(Mono::unit(&r, &[("h", 6)]), s1.clone(), h8.clone(), 1)
        .gamma(Mono::unit(&r, &[("h", 2)]), s1.clone(), h8, -1)
        .poch(Mono::signed(&r, -1, &[("s", 1)]), vec![s1.clone()], 1)
        .theta0(Mono::signed(&r, -1, &[("h", 2)]), s1.clone(), 1)
        .theta0(Mono::signed(&r, -1, &[("s", 1), ("h", 2)]), s1.clone(), 1)
        .poch(Mono::unit(&r, &[("s", 1)]), vec![s1.clone()], -1)
        .theta0(Mono::unit(&r, &[("s", 1), ("h", 4)]), s1, -1)
        .poch(Mono::unit(&r, &[("h", 4)]), vec![r.exps(&[("h", 4)])], -1)
        .poch(Mono::signed(&r, -1, &[("h", 2)]), vec![r.exps(&[("h", 2)])], -1);
    Ok((lhs.build(order)?, rhs.build(order)?))
}

/// Ring `x = e(t)` (weight 0), `h = e(eta)` (weight 1), `s = e(tau)` (weight 3).
pub fn sym_rearrange(order: i64) -> Result<(Series, Series)> {
    let r = Ring::new(&[("x", 0), ("h", 1), ("s", 3)]);
    let (s1, h8) = (r.exps(&[("s", 1)]), r.exps(&[("h", 8)]));
    let mut lhs = Product::new(&r);
    lhs.gamma(Mono::unit(&r, &[("x", 1), ("h", -2)]), s1.clone(), h8.clone(), 1)
        .gamma(Mono::unit(&r, &[("x", 1), ("h", 2)]), s1.clone(), h8.clone(), -1)
        .theta0(Mono::unit(&r, &[("x", 1), ("h", 2)]), s1.clone(), -1)
        .theta0(Mono::unit(&r, &[("x", 1), ("h", 2)]), h8.clone(), -1);
    let mut rhs = Product::new(&r);
    rhs.times(&Mono::signed(&r, -1, &[("x", -1), ("h", -2)]))
        .gamma(Mono::unit(&r, &[("x", 1), ("h", -2)]), s1.clone(), h8.clone(), 1)
        .gamma(Mono::unit(&r, &[("x", -1), ("h", -2)]), s1, h8, 1);
    Ok((lhs.build(order)?, rhs.build(order)?))
}

pub fn lemma_sides(id: &str, order: i64) -> Result<(Series, Series)> {
    match id {
        "theta-simp2" => theta_simp2(order),
        "theta-simp3" => theta_simp3(order),
        "theta-simp4" => theta_simp4(order),
        "sym-rearrange" => sym_rearrange(order),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

pub fn theta_lemma_series_check(id: &str, order: i64) -> Result<bool> {
    let (a, b) = lemma_sides(id, order)?;
    Ok(a.agrees_with(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_hold_exactly() {
        assert!(theta_lemma_series_check("theta-simp2", 10).unwrap());
        assert!(theta_lemma_series_check("theta-simp3", 8).unwrap());
        assert!(theta_lemma_series_check("sym-rearrange", 8).unwrap());
        assert!(theta_lemma_series_check("theta-simp4", 12).unwrap());
    }

    #[test]
    fn unknown_lemma() {
        assert!(matches!(lemma_sides("nope", 4), Err(Error::UnknownId(_))));
    }
}
