//! Exact truncated Laurent series over the rationals.
//!
//! Every variable carries an integer weight. A series stores the terms of
//! weighted degree below its `order`; weight-zero variables are formal
//! Laurent variables carried exactly inside each coefficient.

pub mod checks;
pub mod conjectures;
pub mod lemmas;
pub mod roots;

use crate::error::{Error, Result};
use crate::kernel::{Real, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Order used for series that are exact (polynomials, monomials).
pub const EXACT: i64 = i64::MAX / 4;

pub type Exps = Vec<i64>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    weights: Vec<i64>,
}

impl Ring {
    pub fn new(vars: &[(&str, i64)]) -> Arc<Ring> {
        Arc::new(Ring {
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            weights: vars.iter().map(|(_, w)| *w).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight(&self, e: &[i64]) -> i64 {
        e.iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    pub fn zero_exps(&self) -> Exps {
        vec![0; self.len()]
    }

    /// Exponent vector from `(name, exponent)` pairs. Panics on unknown names.
    pub fn exps(&self, pairs: &[(&str, i64)]) -> Exps {
        let mut e = self.zero_exps();
        for (name, k) in pairs {
            let i = self.index(name).unwrap_or_else(|| panic!("no variable {name}"));
            e[i] += k;
        }
        e
    }
}

/// A coefficient times a monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Mono {
    pub coef: BigRational,
    pub exps: Exps,
}

impl Mono {
    pub fn new(coef: BigRational, exps: Exps) -> Mono {
        Mono { coef, exps }
    }

    /// `sign * x^a * y^b ...`, the usual shape of `e(affine form)` with a
    /// half-integer constant.
    pub fn signed(ring: &Ring, sign: i64, pairs: &[(&str, i64)]) -> Mono {
        Mono::new(rat(sign), ring.exps(pairs))
    }

    pub fn unit(ring: &Ring, pairs: &[(&str, i64)]) -> Mono {
        Mono::signed(ring, 1, pairs)
    }

    pub fn times(&self, other: &Mono) -> Mono {
        Mono::new(
            &self.coef * &other.coef,
            self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn inverse(&self) -> Mono {
        Mono::new(self.coef.recip(), self.exps.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i64) -> Mono {
        let c = if k >= 0 {
            num_traits::pow(self.coef.clone(), k as usize)
        } else {
            num_traits::pow(self.coef.recip(), (-k) as usize)
        };
        Mono::new(c, self.exps.iter().map(|a| a * k).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    ring: Arc<Ring>,
    order: i64,
    terms: BTreeMap<Exps, BigRational>,
}

impl Series {
    pub fn zero(ring: &Arc<Ring>, order: i64) -> Series {
        Series {
            ring: ring.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational, order: i64) -> Series {
        Series::monomial(ring, &Mono::new(c, ring.zero_exps()), order)
    }

    pub fn one(ring: &Arc<Ring>, order: i64) -> Series {
        Series::constant(ring, BigRational::one(), order)
    }

    pub fn monomial(ring: &Arc<Ring>, m: &Mono, order: i64) -> Series {
        let mut s = Series::zero(ring, order);
        s.insert(m.exps.clone(), m.coef.clone());
        s
    }

    /// Builds a series from terms, dropping zeros and terms at or above `order`.
    pub fn from_terms<I: IntoIterator<Item = (Exps, BigRational)>>(ring: &Arc<Ring>, terms: I, order: i64) -> Series {
        let mut s = Series::zero(ring, order);
        for (e, c) in terms {
            s.insert(e, c);
        }
        s
    }

    fn insert(&mut self, e: Exps, c: BigRational) {
        assert_eq!(e.len(), self.ring.len(), "exponent vector length");
        if c.is_zero() || self.ring.weight(&e) >= self.order {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Exps, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Lowest weighted degree of a stored term.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.ring.weight(e)).min()
    }

    /// Valuation, or the order for the zero series (all we know is `O(order)`).
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.order)
    }

    pub fn coefficient(&self, e: &[i64]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: i64) -> Series {
        let order = order.min(self.order);
        Series::from_terms(&self.ring, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())), order)
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series::from_terms(&self.ring, self.terms.iter().map(|(e, v)| (e.clone(), v * c)), self.order)
    }

    fn same_ring(&self, other: &Series) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "series over different rings"
        );
    }

    fn by_weight(&self) -> Vec<(i64, &Exps, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (self.ring.weight(e), e, c)).collect();
        v.sort_by_key(|t| t.0);
        v
    }

    pub fn inverse(&self) -> Result<Series> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let lowest: Vec<_> = self.terms.iter().filter(|(e, _)| self.ring.weight(e) == v).collect();
        if lowest.len() != 1 {
            return Err(Error::NotInvertible(format!(
                "lowest-weight part has {} terms",
                lowest.len()
            )));
        }
        let lead = Mono::new(lowest[0].1.clone(), lowest[0].0.clone());
        let inv_lead = Series::monomial(&self.ring, &lead.inverse(), EXACT);
        if self.len() == 1 {
            return Ok(Series::monomial(&self.ring, &lead.inverse(), self.order.saturating_sub(2 * v)));
        }
        if self.order >= EXACT {
            return Err(Error::NotInvertible("exact series with several terms has no finite inverse order".into()));
        }
        // self = lead * (1 + u), with u of positive weight
        let inner = self.order - v;
        let u = &(self * &inv_lead) - &Series::one(&self.ring, inner);
        let neg_u = -&u;
        let mut sum = Series::one(&self.ring, inner);
        let mut power = Series::one(&self.ring, inner);
        loop {
            power = (&power * &neg_u).truncate(inner);
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(&sum * &inv_lead)
    }

    pub fn pow(&self, k: i64) -> Result<Series> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut r = Series::one(&self.ring, EXACT);
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }

    /// Replaces variable `var` by the monomial `m`. The replacement may only
    /// raise weights, so the order is kept.
    pub fn substitute(&self, var: &str, m: &Mono) -> Result<Series> {
        let i = self
            .ring
            .index(var)
            .ok_or_else(|| Error::Config(format!("no variable {var}")))?;
        let shift = self.ring.weight(&m.exps) - self.ring.weights[i];
        let mut out = Series::zero(&self.ring, self.order);
        for (e, c) in &self.terms {
            let k = e[i];
            if k * shift < 0 {
                return Err(Error::InconsistentTruncation(format!(
                    "substituting {var} lowers the weight of a term with exponent {k}"
                )));
            }
            let mut e2 = e.clone();
            e2[i] = 0;
            let mk = m.pow(k);
            for (a, b) in e2.iter_mut().zip(&mk.exps) {
                *a += b;
            }
            out.insert(e2, c * &mk.coef);
        }
        Ok(out)
    }

    /// Sets a positive-weight variable to zero coefficient-wise.
    pub fn at_zero(&self, var: &str) -> Result<Series> {
        let i = self
            .ring
            .index(var)
            .ok_or_else(|| Error::Config(format!("no variable {var}")))?;
        if self.ring.weights[i] <= 0 {
            return Err(Error::DomainViolation(format!("{var} must have positive weight")));
        }
        if self.terms.keys().any(|e| e[i] < 0) {
            return Err(Error::DomainViolation(format!("negative power of {var}")));
        }
        Ok(Series::from_terms(
            &self.ring,
            self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (e.clone(), c.clone())),
            self.order,
        ))
    }

    /// Sums the stored terms at numeric values of the variables.
    pub fn evaluate(&self, values: &[C64]) -> C64 {
        assert_eq!(values.len(), self.ring.len());
        let mut total = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = C64::new(c.to_f64().unwrap_or(Real::NAN), 0.0);
            for (v, &k) in values.iter().zip(e) {
                if k != 0 {
                    t *= v.powi(k as i32);
                }
            }
            total += t;
        }
        total
    }

    /// First term, in canonical order, where the two series differ below the
    /// common order.
    pub fn first_difference(&self, other: &Series) -> Option<String> {
        self.same_ring(other);
        let order = self.order.min(other.order);
        let a = self.truncate(order);
        let b = other.truncate(order);
        let mut keys: Vec<&Exps> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.sort_by(|x, y| (self.ring.weight(x), *x).cmp(&(self.ring.weight(y), *y)));
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let (x, y) = (a.coefficient(e), b.coefficient(e));
            (x != y).then(|| format!("{}: {} vs {}", monomial_text(&self.ring, e), x, y))
        })
    }

    pub fn agrees_with(&self, other: &Series) -> bool {
        self.first_difference(other).is_none()
    }
}

fn monomial_text(ring: &Ring, e: &[i64]) -> String {
    let parts: Vec<String> = ring
        .names
        .iter()
        .zip(e)
        .filter(|(_, &k)| k != 0)
        .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Canonical text: terms by increasing weight then exponent vector.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (_, e, c) in self.by_weight() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = monomial_text(&self.ring, e);
            let body = match (a.is_one(), mono == "1") {
                (true, _) => mono,
                (false, true) => a.to_string(),
                (false, false) => format!("{a}*{mono}"),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if self.order < EXACT {
            write!(f, " + O[{}]", self.order)?;
        }
        Ok(())
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        self.same_ring(o);
        let mut r = self.truncate(self.order.min(o.order));
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&rat(-1))
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self + &(-o)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        self.same_ring(o);
        let order = self
            .order
            .saturating_add(o.effective_valuation())
            .min(o.order.saturating_add(self.effective_valuation()))
            .min(EXACT);
        let a = self.by_weight();
        let b = o.by_weight();
        let mut acc: BTreeMap<Exps, BigRational> = BTreeMap::new();
        if let Some(b0) = b.first().map(|t| t.0) {
            for (wa, ea, ca) in &a {
                if wa + b0 >= order {
                    break;
                }
                for (wb, eb, cb) in &b {
                    if wa + wb >= order {
                        break;
                    }
                    let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                    *acc.entry(e).or_insert_with(BigRational::zero) += *ca * *cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Series {
            ring: self.ring.clone(),
            order,
            terms: acc,
        }
    }
}

/// Expansion of `prod_{j >= 0} (1 - arg * modulus^j)`.
pub fn series_pochhammer(ring: &Arc<Ring>, arg: &Mono, modulus: &Exps, order: i64) -> Result<Series> {
    let mut p = Product::new(ring);
    p.poch(arg.clone(), vec![modulus.clone()], 1);
    p.build(order)
}

#[derive(Debug, Clone)]
enum Item {
    /// `(1 - m)^power`
    Factor { m: Mono, power: i64 },
    /// `prod over lattice j of (1 - m * moduli^j)`, raised to `power`.
    Poch { m: Mono, moduli: Vec<Exps>, power: i64 },
}

/// Product of monomial prefactors and factors `(1 - c M)^{+-1}`, expanded at
/// the end so negative-weight factors can be padded for.
#[derive(Debug, Clone)]
pub struct Product {
    ring: Arc<Ring>,
    prefactor: Mono,
    items: Vec<Item>,
}

impl Product {
    pub fn new(ring: &Arc<Ring>) -> Product {
        Product {
            ring: ring.clone(),
            prefactor: Mono::new(BigRational::one(), ring.zero_exps()),
            items: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn times(&mut self, m: &Mono) -> &mut Self {
        self.prefactor = self.prefactor.times(m);
        self
    }

    pub fn scale(&mut self, c: BigRational) -> &mut Self {
        self.prefactor.coef *= c;
        self
    }

    /// `(1 - m)^power`
    pub fn factor(&mut self, m: Mono, power: i64) -> &mut Self {
        if power != 0 {
            self.items.push(Item::Factor { m, power });
        }
        self
    }

    /// `(m; moduli)^power`, a single or multiple Pochhammer symbol.
    pub fn poch(&mut self, m: Mono, moduli: Vec<Exps>, power: i64) -> &mut Self {
        if power != 0 {
            self.items.push(Item::Poch { m, moduli, power });
        }
        self
    }

    /// `theta0(m; T)^power = ((m; T)(T/m; T))^power`
    pub fn theta0(&mut self, m: Mono, modulus: Exps, power: i64) -> &mut Self {
        let other = Mono::new(BigRational::one(), modulus.clone()).times(&m.inverse());
        self.poch(m, vec![modulus.clone()], power);
        self.poch(other, vec![modulus], power)
    }

    /// Elliptic gamma `(m1 m2 / m; m1, m2) / (m; m1, m2)` raised to `power`.
    pub fn gamma(&mut self, m: Mono, m1: Exps, m2: Exps, power: i64) -> &mut Self {
        let top: Exps = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
        let other = Mono::new(BigRational::one(), top).times(&m.inverse());
        self.poch(other, vec![m1.clone(), m2.clone()], power);
        self.poch(m, vec![m1, m2], -power)
    }

    fn check_moduli(&self) -> Result<()> {
        for it in &self.items {
            if let Item::Poch { moduli, .. } = it {
                for md in moduli {
                    if self.ring.weight(md) <= 0 {
                        return Err(Error::NonTerminating(format!(
                            "modulus {} has non-positive weight",
                            monomial_text(&self.ring, md)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Factors `(monomial, power)`; Pochhammer lattices are cut at weight `bound`.
    fn expand(&self, bound: i64) -> Vec<(Mono, i64)> {
        let mut out = Vec::new();
        for it in &self.items {
            match it {
                Item::Factor { m, power } => out.push((m.clone(), *power)),
                Item::Poch { m, moduli, power } => {
                    // non-decreasing modulus index visits each lattice point once
                    let mut stack = vec![(m.clone(), 0usize)];
                    while let Some((cur, from)) = stack.pop() {
                        if self.ring.weight(&cur.exps) >= bound {
                            continue;
                        }
                        for (k, md) in moduli.iter().enumerate().skip(from) {
                            stack.push((cur.times(&Mono::new(BigRational::one(), md.clone())), k));
                        }
                        out.push((cur, *power));
                    }
                }
            }
        }
        out
    }

    pub fn build(&self, order: i64) -> Result<Series> {
        self.check_moduli()?;
        let ring = &self.ring;
        // Numerator factors of negative weight lower the order of the product;
        // inverted denominator factors of negative weight raise it.
        let mut pad = 0;
        let mut lift = 0;
        for (m, p) in self.expand(0) {
            let w = ring.weight(&m.exps);
            if w >= 0 {
                continue;
            }
            if p > 0 {
                pad += -w * p;
            } else {
                lift += w * p;
            }
        }
        let target = order + pad - lift - ring.weight(&self.prefactor.exps);
        let mut mono = self.prefactor.clone();
        let mut scalar = BigRational::one();
        let mut positives: Vec<(Mono, i64)> = Vec::new();
        let mut negatives: Vec<(Mono, i64)> = Vec::new();
        for (m, p) in self.expand(target.max(1)) {
            let w = ring.weight(&m.exps);
            if w == 0 && m.is_constant() {
                let v = BigRational::one() - &m.coef;
                if v.is_zero() {
                    if p > 0 {
                        return Ok(Series::zero(ring, order));
                    }
                    return Err(Error::NotInvertible("factor (1 - 1) in a denominator".into()));
                }
                scalar *= if p > 0 {
                    num_traits::pow(v, p as usize)
                } else {
                    num_traits::pow(v.recip(), (-p) as usize)
                };
            } else if w == 0 && p < 0 {
                return Err(Error::NotInvertible(format!(
                    "weight-zero factor 1 - {} in a denominator",
                    monomial_text(ring, &m.exps)
                )));
            } else if w < 0 && p < 0 {
                // 1/(1 - m) = -m^{-1} / (1 - m^{-1})
                let inv = m.inverse();
                mono = mono.times(&Mono::new(rat(-1), ring.zero_exps()).times(&inv).pow(-p));
                positives.push((inv, p));
            } else if w < 0 {
                negatives.push((m, p));
            } else {
                positives.push((m, p));
            }
        }
        let one_minus = |m: &Mono, o: i64| {
            Series::from_terms(
                ring,
                [(ring.zero_exps(), BigRational::one()), (m.exps.clone(), -m.coef.clone())],
                o,
            )
        };
        let mut acc = Series::constant(ring, scalar, target);
        for (m, p) in &positives {
            let f = if *p > 0 {
                one_minus(m, target).pow(*p)?.truncate(target)
            } else {
                geometric(ring, m, target).pow(-*p)?.truncate(target)
            };
            acc = &acc * &f;
        }
        for (m, p) in &negatives {
            acc = &acc * &one_minus(m, EXACT).pow(*p)?;
        }
        acc = &acc * &Series::monomial(ring, &mono, EXACT);
        if acc.order() < order {
            return Err(Error::InconsistentTruncation(format!(
                "product reached order {} below the requested {order}",
                acc.order()
            )));
        }
        Ok(acc.truncate(order))
    }
}

/// `1/(1 - m)` for `m` of positive weight.
fn geometric(ring: &Arc<Ring>, m: &Mono, order: i64) -> Series {
    let w = ring.weight(&m.exps);
    assert!(w > 0);
    let mut s = Series::zero(ring, order);
    let mut k = 0;
    while k * w < order {
        let t = m.pow(k);
        s.insert(t.exps, t.coef);
        k += 1;
    }
    s
}

/// Bilateral sum `sum_m s^{kappa m^2 + mu m} l^{2 kappa m + mu}` over
/// `|m| <= m_max`; rejects ranges that could miss terms below `order`.
pub fn bilateral_theta_sum(ring: &Arc<Ring>, mu: i64, kappa: i64, m_max: i64, order: i64) -> Result<Series> {
    let w = |m: i64| kappa * m * m + mu * m;
    let outside = w(m_max + 1).min(w(-m_max - 1));
    if outside < order {
        return Err(Error::InconsistentTruncation(format!(
            "|m| <= {m_max} omits a term of weight {outside} below order {order}"
        )));
    }
    let s = ring.index("s").ok_or_else(|| Error::Config("ring needs s".into()))?;
    let l = ring.index("l").ok_or_else(|| Error::Config("ring needs l".into()))?;
    let mut out = Series::zero(ring, order);
    for m in -m_max..=m_max {
        let mut e = ring.zero_exps();
        e[s] = w(m);
        e[l] = 2 * kappa * m + mu;
        out.insert(e, BigRational::one());
    }
    Ok(out)
}

/// Smallest symmetric range that captures every term below `order`.
pub fn bilateral_range(mu: i64, kappa: i64, order: i64) -> i64 {
    let mut m = 0;
    while (kappa * (m + 1) * (m + 1) + mu * (m + 1)).min(kappa * (m + 1) * (m + 1) - mu * (m + 1)) < order {
        m += 1;
    }
    m
}

/// Sum side and product side of the triple product for one `(mu, kappa)`.
pub fn triple_product_sides(mu: i64, kappa: i64, order: i64) -> Result<(Series, Series)> {
    if kappa < 1 {
        return Err(Error::DomainViolation("kappa must be at least 1".into()));
    }
    let ring = Ring::new(&[("s", 1), ("l", 0)]);
    let sum = bilateral_theta_sum(&ring, mu, kappa, bilateral_range(mu, kappa, order), order)?;
    let t = ring.exps(&[("s", 2 * kappa)]);
    let mut p = Product::new(&ring);
    p.times(&Mono::unit(&ring, &[("l", mu)]))
        .poch(Mono::unit(&ring, &[("s", 2 * kappa)]), vec![t.clone()], 1)
        .poch(Mono::signed(&ring, -1, &[("s", kappa + mu), ("l", 2 * kappa)]), vec![t.clone()], 1)
        .poch(Mono::signed(&ring, -1, &[("s", kappa - mu), ("l", -2 * kappa)]), vec![t], 1);
    Ok((sum, p.build(order)?))
}

pub fn series_triple_product_check(mu: i64, kappa: i64, order: i64) -> Result<bool> {
    let (a, b) = triple_product_sides(mu, kappa, order)?;
    Ok(a.agrees_with(&b))
}
