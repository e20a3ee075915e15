//! Exact series checks exposed through the registry.

use super::conjectures::{
    aff_eval_conjecture_series, denominator_conjecture_series, hall_limit_mismatch, theorem_x_series,
    theorem_y_series,
};
use super::lemmas::lemma_sides;
use super::{series_pochhammer, triple_product_sides, Mono, Ring, Series};
use crate::catalog::{ExactCheck, SeriesOutcome};
use crate::error::{Error, Result};

fn positive(order: i64) -> Result<()> {
    if order < 1 {
        return Err(Error::Config(format!("series order must be at least 1, got {order}")));
    }
    Ok(())
}

/// Compares labelled pairs and stops at the first disagreement.
fn outcome(order: i64, pairs: Vec<(String, Series, Series)>) -> SeriesOutcome {
    let cases = pairs.len();
    for (label, a, b) in pairs {
        if let Some(d) = a.first_difference(&b) {
            return SeriesOutcome {
                order,
                equal: false,
                detail: Some(format!("{label}: {d}")),
                cases,
            };
        }
    }
    SeriesOutcome {
        order,
        equal: true,
        detail: None,
        cases,
    }
}

fn pentagonal(order: i64) -> Result<SeriesOutcome> {
    positive(order)?;
    let r = Ring::new(&[("p", 1)]);
    let euler = series_pochhammer(&r, &Mono::unit(&r, &[("p", 1)]), &r.exps(&[("p", 1)]), order)?;
    let mut sum = Series::zero(&r, order);
    let mut k: i64 = 0;
    loop {
        let lo = k * (3 * k - 1) / 2;
        let hi = k * (3 * k + 1) / 2;
        if lo >= order && hi >= order {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sum = &sum + &Series::monomial(&r, &Mono::signed(&r, sign, &[("p", lo)]), order);
        if k > 0 {
            sum = &sum + &Series::monomial(&r, &Mono::signed(&r, sign, &[("p", hi)]), order);
        }
        k += 1;
    }
    let unit = &euler * &euler.inverse()?;
    Ok(outcome(
        order,
        vec![
            ("product vs pentagonal sum".into(), euler, sum),
            ("product times inverse".into(), unit, Series::one(&r, order)),
        ],
    ))
}

fn triple_product(order: i64) -> Result<SeriesOutcome> {
    positive(order)?;
    let mut pairs = Vec::new();
    for kappa in 1..=4 {
        for mu in 0..=2 * kappa {
            let (a, b) = triple_product_sides(mu, kappa, order)?;
            pairs.push((format!("mu={mu} kappa={kappa}"), a, b));
        }
    }
    Ok(outcome(order, pairs))
}

fn denominator(order: i64) -> Result<SeriesOutcome> {
    positive(order)?;
    let mut pairs = vec![(
        "n=2 k=2 against the closed form".to_string(),
        denominator_conjecture_series(2, 2, order)?,
        theorem_x_series(order)?,
    )];
    for n in 2..=3 {
        let s = denominator_conjecture_series(n, 1, order)?;
        let one = Series::one(s.ring(), order);
        pairs.push((format!("n={n} k=1 is 1"), s, one));
    }
    Ok(outcome(order, pairs))
}

fn evaluation(order: i64) -> Result<SeriesOutcome> {
    positive(order)?;
    let mut pairs = Vec::new();
    for mu in 0..4 {
        for k in 0..4 {
            pairs.push((
                format!("n=2 k=2 mu={mu} level={k}"),
                aff_eval_conjecture_series(2, 2, &[mu], k, order)?,
                theorem_y_series(mu, k, order)?,
            ));
        }
    }
    for (n, kk) in [(2, 3), (3, 2), (3, 3)] {
        let zero = vec![0; n - 1];
        let s = aff_eval_conjecture_series(n, kk, &zero, 0, order)?;
        let one = Series::one(s.ring(), order);
        pairs.push((format!("n={n} k={kk} trivial weight is 1"), s, one));
    }
    Ok(outcome(order, pairs))
}

fn hall_limit(order: i64) -> Result<SeriesOutcome> {
    positive(order)?;
    let mut cases = 0;
    for n in 2..=3 {
        for kk in 1..=3 {
            cases += 1;
            if let Some(d) = hall_limit_mismatch(n, kk, order)? {
                return Ok(SeriesOutcome {
                    order,
                    equal: false,
                    detail: Some(format!("n={n} k={kk}: {d}")),
                    cases,
                });
            }
        }
    }
    Ok(SeriesOutcome {
        order,
        equal: true,
        detail: None,
        cases,
    })
}

fn lemma(id: &str, order: i64) -> Result<SeriesOutcome> {
    positive(order)?;
    let (a, b) = lemma_sides(id, order)?;
    Ok(outcome(order, vec![(id.to_string(), a, b)]))
}

fn theta_simp2(order: i64) -> Result<SeriesOutcome> {
    lemma("theta-simp2", order)
}

fn theta_simp3(order: i64) -> Result<SeriesOutcome> {
    lemma("theta-simp3", order)
}

fn theta_simp4(order: i64) -> Result<SeriesOutcome> {
    lemma("theta-simp4", order)
}

fn sym_rearrange(order: i64) -> Result<SeriesOutcome> {
    lemma("sym-rearrange", order)
}

pub fn all() -> Vec<ExactCheck> {
    vec![
        ExactCheck {
            id: "series.pentagonal",
            statement: "(p; p) equals Euler's pentagonal-number sum, and times its inverse gives 1",
            order: 12,
            run: pentagonal,
        },
        ExactCheck {
            id: "series.triple-product",
            statement: "level theta function: bilateral sum equals the triple product, 1 <= kappa <= 4, 0 <= mu <= 2 kappa",
            order: 12,
            run: triple_product,
        },
        ExactCheck {
            id: "series.denominator",
            statement: "conjectured affine denominator equals the proven n = 2, k = 2 closed form; is 1 at k = 1",
            order: 6,
            run: denominator,
        },
        ExactCheck {
            id: "series.evaluation",
            statement: "conjectured affine evaluation equals the proven n = 2, k = 2 closed form for mu, level in 0..3; is 1 at trivial weight",
            order: 40,
            run: evaluation,
        },
        ExactCheck {
            id: "series.hall-limit",
            statement: "correction factor Delta(q, t, p): q -> 0 limit and t = q^k substitution, n in {2, 3}, k in 1..3",
            order: 8,
            run: hall_limit,
        },
        ExactCheck {
            id: "series.theta-simp2",
            statement: "two-term theta sum at nome sigma collapses to a single theta product",
            order: 10,
            run: theta_simp2,
        },
        ExactCheck {
            id: "series.theta-simp3",
            statement: "antisymmetrised theta product in lambda equals the bracketed theta form",
            order: 8,
            run: theta_simp3,
        },
        ExactCheck {
            id: "series.theta-simp4",
            statement: "twelve-gamma product at (2 tau, 8 eta) equals the gamma-theta closed form",
            order: 12,
            run: theta_simp4,
        },
        ExactCheck {
            id: "series.sym-rearrange",
            statement: "gamma ratio over two thetas equals a symmetric gamma product",
            order: 8,
            run: sym_rearrange,
        },
    ]
}
