//! Period contours that separate two pole families, and adaptive
//! Gauss-Kronrod quadrature along them.
//!
//! A contour is the unit segment `[start, start + 1]` with small semicircular
//! bumps around poles sitting on the real axis, plus closed residue loops
//! around poles that lie on the wrong side of the axis. Integrands are assumed
//! 1-periodic, so the segment closes up on the cylinder.

use crate::error::{Error, Result};
use crate::kernel::{Real, C64};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Where a pole has to lie relative to the contour, or which side of a pole a
/// bump passes on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
        }
    }
}

/// Semicircular bump of the base segment; `side` is where the arc passes
/// relative to `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deformation {
    pub center: Real,
    pub side: Side,
    pub radius: Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Loop {
    pub center: C64,
    pub radius: Real,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    start: Real,
    deformations: Vec<Deformation>,
    loops: Vec<Loop>,
    reversed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Segment { a: C64, b: C64 },
    Arc { center: C64, radius: Real, start: Real, sweep: Real },
}

impl Piece {
    /// Point and derivative at `s` in `[0, 1]`.
    pub fn point(&self, s: Real) -> (C64, C64) {
        match *self {
            Piece::Segment { a, b } => (a + (b - a) * s, b - a),
            Piece::Arc { center, radius, start, sweep } => {
                let th = start + sweep * s;
                let u = C64::from_polar(radius, th);
                (center + u, C64::new(0.0, sweep) * u)
            }
        }
    }

    pub fn distance(&self, p: C64) -> Real {
        match *self {
            Piece::Segment { a, b } => {
                let d = b - a;
                let t = ((p - a) * d.conj()).re / d.norm_sqr();
                let t = t.clamp(0.0, 1.0);
                (a + d * t - p).norm()
            }
            Piece::Arc { center, radius, start, sweep } => {
                let v = p - center;
                let ends = (self.point(0.0).0 - p).norm().min((self.point(1.0).0 - p).norm());
                if v.norm() == 0.0 {
                    return radius;
                }
                if sweep.abs() >= 2.0 * PI - 1e-12 {
                    return (v.norm() - radius).abs();
                }
                let (lo, hi) = if sweep > 0.0 { (start, start + sweep) } else { (start + sweep, start) };
                let mut th = v.arg();
                while th < lo {
                    th += 2.0 * PI;
                }
                while th > lo + 2.0 * PI {
                    th -= 2.0 * PI;
                }
                if th <= hi {
                    (v.norm() - radius).abs()
                } else {
                    ends
                }
            }
        }
    }
}

impl Contour {
    /// The segment `[-1/2, 1/2]`.
    pub fn straight() -> Contour {
        Contour {
            start: -0.5,
            deformations: Vec::new(),
            loops: Vec::new(),
            reversed: false,
        }
    }

    pub fn new(deformations: Vec<Deformation>, loops: Vec<Loop>) -> Result<Contour> {
        Contour::with_start(-0.5, deformations, loops)
    }

    /// Same as [`Contour::new`] over the period segment `[start, start + 1]`.
    pub fn with_start(start: Real, mut deformations: Vec<Deformation>, loops: Vec<Loop>) -> Result<Contour> {
        for d in &deformations {
            if !(d.center > start && d.center <= start + 1.0) {
                return Err(Error::CenterOutOfRange(d.center));
            }
            if !(d.radius > 0.0) || d.center - d.radius <= start || d.center + d.radius >= start + 1.0 {
                return Err(Error::DomainViolation(format!(
                    "deformation at {} with radius {} leaves the period segment",
                    d.center, d.radius
                )));
            }
        }
        deformations.sort_by(|a, b| a.center.total_cmp(&b.center));
        for w in deformations.windows(2) {
            if w[0].center + w[0].radius >= w[1].center - w[1].radius {
                return Err(Error::OverlappingDeformations { a: w[0].center, b: w[1].center });
            }
        }
        for l in &loops {
            if !(l.radius > 0.0) {
                return Err(Error::DomainViolation(format!("loop radius {} must be positive", l.radius)));
            }
        }
        Ok(Contour {
            start,
            deformations,
            loops,
            reversed: false,
        })
    }

    pub fn start(&self) -> Real {
        self.start
    }

    pub fn deformations(&self) -> &[Deformation] {
        &self.deformations
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// Same path traversed backwards; integrals over it are exact negatives.
    pub fn reversed(&self) -> Contour {
        let mut c = self.clone();
        c.reversed = !c.reversed;
        c
    }

    /// Pieces of the forward path (base segment pieces, then loops).
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        let mut x = self.start;
        for d in &self.deformations {
            out.push(Piece::Segment {
                a: C64::new(x, 0.0),
                b: C64::new(d.center - d.radius, 0.0),
            });
            let sweep = match d.side {
                Side::Above => -PI,
                Side::Below => PI,
            };
            out.push(Piece::Arc {
                center: C64::new(d.center, 0.0),
                radius: d.radius,
                start: PI,
                sweep,
            });
            x = d.center + d.radius;
        }
        out.push(Piece::Segment {
            a: C64::new(x, 0.0),
            b: C64::new(self.start + 1.0, 0.0),
        });
        for l in &self.loops {
            let sweep = match l.orientation {
                Orientation::Counterclockwise => 2.0 * PI,
                Orientation::Clockwise => -2.0 * PI,
            };
            out.push(Piece::Arc {
                center: l.center,
                radius: l.radius,
                start: 0.0,
                sweep,
            });
        }
        out
    }

    /// Builds the contour that puts every declared pole on its required side.
    ///
    /// Poles within `1e-6` of the axis get a semicircular bump; poles off the
    /// axis on the wrong side get a residue loop; the rest need nothing.
    pub fn separating(poles: &[DeclaredPole]) -> Result<Contour> {
        const NEAR: Real = 1e-6;
        let on_axis: Vec<&DeclaredPole> = poles.iter().filter(|p| p.position.im.abs() < NEAR).collect();
        let start = choose_start(&on_axis);
        let nearest_other = |p: &DeclaredPole| -> Real {
            let mut d = Real::INFINITY;
            for q in poles {
                for k in [-1.0, 0.0, 1.0] {
                    let dist = (q.position + k - p.position).norm();
                    if dist > 1e-13 {
                        d = d.min(dist);
                    }
                }
            }
            d
        };
        let mut deformations = Vec::new();
        let mut loops = Vec::new();
        for p in poles {
            let z = p.position;
            if z.im.abs() < NEAR {
                let x = start + (z.re - start).rem_euclid(1.0);
                let edge = (x - start).min(start + 1.0 - x);
                let radius = (0.125 as Real).min(0.5 * nearest_other(p)).min(0.5 * edge);
                if radius <= 2.0 * z.im.abs() {
                    return Err(Error::PoleOnPath {
                        pole: format!("{z}"),
                        distance: radius,
                    });
                }
                deformations.push(Deformation {
                    center: x,
                    side: p.side.flip(),
                    radius,
                });
            } else {
                let wrong = (z.im > 0.0 && p.side == Side::Below) || (z.im < 0.0 && p.side == Side::Above);
                if wrong {
                    let radius = (0.25 as Real).min(0.5 * nearest_other(p));
                    let orientation = match p.side {
                        Side::Above => Orientation::Counterclockwise,
                        Side::Below => Orientation::Clockwise,
                    };
                    loops.push(Loop {
                        center: z,
                        radius,
                        orientation,
                    });
                }
            }
        }
        Contour::with_start(start, deformations, loops)
    }
}

/// Start of the period segment, kept well away from poles on the axis.
fn choose_start(on_axis: &[&DeclaredPole]) -> Real {
    let clear = |s: Real| {
        on_axis.iter().all(|p| {
            let d = (p.position.re - s).rem_euclid(1.0);
            d.min(1.0 - d) > 0.05
        })
    };
    if clear(-0.5) {
        return -0.5;
    }
    let mut xs: Vec<Real> = on_axis.iter().map(|p| p.position.re.rem_euclid(1.0)).collect();
    xs.sort_by(|a, b| a.total_cmp(b));
    let mut best = (0.0, -0.5);
    for i in 0..xs.len() {
        let a = xs[i];
        let b = if i + 1 < xs.len() { xs[i + 1] } else { xs[0] + 1.0 };
        if b - a > best.0 {
            best = (b - a, 0.5 * (a + b));
        }
    }
    let s = best.1.rem_euclid(1.0);
    if s > 0.5 {
        s - 1.0
    } else {
        s
    }
}

/// Pole at a fixed position together with the side it must lie on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeclaredPole {
    pub position: C64,
    pub side: Side,
}

/// The lattice cone `base + sum n_i g_i`, `n_i >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleFamily {
    pub base: C64,
    pub generators: Vec<C64>,
    pub side: Side,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleInventory {
    pub families: Vec<PoleFamily>,
}

impl PoleInventory {
    pub fn new() -> Self {
        PoleInventory::default()
    }

    pub fn family(mut self, base: C64, generators: &[C64], side: Side) -> Self {
        self.families.push(PoleFamily {
            base,
            generators: generators.to_vec(),
            side,
        });
        self
    }

    pub fn point(self, position: C64, side: Side) -> Self {
        self.family(position, &[], side)
    }

    /// All members with `|Im| <= band`, real parts reduced to `(-1/2, 1/2]`.
    /// The band always covers every base point, so all wrong-side members are
    /// included.
    pub fn enumerate(&self, band: Real) -> Result<Vec<DeclaredPole>> {
        let band = self
            .families
            .iter()
            .fold(band, |b, f| b.max(f.base.im.abs() + 1.0));
        let mut out: Vec<DeclaredPole> = Vec::new();
        for f in &self.families {
            let sign = f.generators.first().map(|g| g.im.signum()).unwrap_or(1.0);
            for g in &f.generators {
                if g.im.abs() < 1e-12 || g.im.signum() != sign {
                    return Err(Error::DomainViolation(format!(
                        "pole family generators must share a nonzero imaginary direction, got {g}"
                    )));
                }
            }
            let mut members = Vec::new();
            walk(f.base, &f.generators, sign, band, &mut members)?;
            for z in members {
                if z.im.abs() > band {
                    continue;
                }
                let r = z.re - (z.re - 0.5).ceil();
                let z = C64::new(if r <= -0.5 { r + 1.0 } else { r }, z.im);
                push_pole(&mut out, DeclaredPole { position: z, side: f.side })?;
            }
        }
        Ok(out)
    }
}

fn walk(p: C64, gens: &[C64], sign: Real, band: Real, out: &mut Vec<C64>) -> Result<()> {
    if gens.is_empty() {
        out.push(p);
        if out.len() > 200_000 {
            return Err(Error::NonConvergent { terms: out.len() });
        }
        return Ok(());
    }
    let mut q = p;
    loop {
        if q.im * sign > band {
            return Ok(());
        }
        walk(q, &gens[1..], sign, band, out)?;
        q += gens[0];
    }
}

fn push_pole(out: &mut Vec<DeclaredPole>, p: DeclaredPole) -> Result<()> {
    for q in out.iter() {
        let mut d = q.position - p.position;
        d.re -= d.re.round();
        if d.norm() < 1e-12 {
            if q.side != p.side {
                return Err(Error::DomainViolation(format!(
                    "pole {} is required on both sides of the contour",
                    p.position
                )));
            }
            return Ok(());
        }
    }
    out.push(p);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observed {
    Above,
    Below,
    TooClose,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub pole: C64,
    pub required: Side,
    pub observed: Observed,
    pub distance: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleAudit {
    pub entries: Vec<AuditEntry>,
    pub passed: bool,
}

impl PoleAudit {
    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| match e.observed {
            Observed::Above => e.required != Side::Above,
            Observed::Below => e.required != Side::Below,
            _ => true,
        })
    }
}

/// Classifies every declared pole against the contour.
pub fn pole_audit(poles: &[DeclaredPole], contour: &Contour, margin: Real) -> PoleAudit {
    let pieces = contour.pieces();
    let mut entries = Vec::with_capacity(poles.len());
    for p in poles {
        let mut distance = Real::INFINITY;
        for k in [-1.0, 0.0, 1.0] {
            for piece in &pieces {
                distance = distance.min(piece.distance(p.position + k));
            }
        }
        let x = contour.start + (p.position.re - contour.start).rem_euclid(1.0);
        let z = C64::new(x, p.position.im);
        let observed = if distance < margin {
            Observed::TooClose
        } else {
            let inside = contour
                .deformations
                .iter()
                .find(|d| (z - C64::new(d.center, 0.0)).norm() < d.radius);
            let mut above = match inside {
                Some(d) => (d.side == Side::Below) as i32,
                None => (z.im > 0.0) as i32,
            };
            for l in &contour.loops {
                let mut off = p.position - l.center;
                off.re -= off.re.round();
                if off.norm() < l.radius {
                    above += match l.orientation {
                        Orientation::Counterclockwise => 1,
                        Orientation::Clockwise => -1,
                    };
                }
            }
            match above {
                1 => Observed::Above,
                0 => Observed::Below,
                _ => Observed::Inconsistent,
            }
        };
        entries.push(AuditEntry {
            pole: p.position,
            required: p.side,
            observed,
            distance,
        });
    }
    let mut audit = PoleAudit { entries, passed: true };
    let passed = audit.failures().next().is_none();
    audit.passed = passed;
    audit
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    /// Relative target, measured against `max(scale_floor, |value|)`.
    pub rel_tol: Real,
    pub scale_floor: Real,
    pub max_evals: usize,
    /// Minimal distance between a declared pole and the path.
    pub pole_margin: Real,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-13,
            scale_floor: 0.0,
            max_evals: 200_000,
            pole_margin: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: C64,
    pub error_estimate: Real,
    pub evaluations: usize,
    /// Integral of `|f| |dz|`, the scale for absolute comparisons.
    pub magnitude: Real,
}

const XGK: [Real; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [Real; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [Real; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    piece: usize,
    a: Real,
    b: Real,
    value: C64,
    error: Real,
    magnitude: Real,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn gk15<F>(f: &F, piece: &Piece, a: Real, b: Real) -> Result<(C64, Real, Real)>
where
    F: Fn(C64) -> Result<C64>,
{
    let h = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let g = |s: Real| -> Result<C64> {
        let (z, dz) = piece.point(s);
        Ok(f(z)? * dz)
    };
    let fc = g(mid)?;
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv1 = [C64::new(0.0, 0.0); 7];
    let mut fv2 = [C64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = g(mid - x)?;
        let f2 = g(mid + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        rk += (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            rg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = rk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let value = rk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((rk - rg) * h).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (1.0 as Real).min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > Real::MIN_POSITIVE / (50.0 * Real::EPSILON) {
        err = err.max(50.0 * Real::EPSILON * resabs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::PoleHit {
            at: format!("non-finite integrand near {}", piece.point(mid).0),
        });
    }
    Ok((value, err, resabs))
}

/// Globally adaptive G7/K15 quadrature of `f` along `contour`.
///
/// Stops when the summed error estimate is below
/// `max(rel_tol * max(scale_floor, |value|), roundoff)` where the roundoff
/// floor is `100 eps` times the integral of `|f|`.
pub fn integrate<F>(f: F, contour: &Contour, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(C64) -> Result<C64>,
{
    let pieces = contour.pieces();
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut evals = 0usize;
    let mut value = C64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for (i, piece) in pieces.iter().enumerate() {
        let splits = 4;
        for k in 0..splits {
            let a = k as Real / splits as Real;
            let b = (k + 1) as Real / splits as Real;
            let (v, e, m) = gk15(&f, piece, a, b)?;
            evals += 15;
            value += v;
            error += e;
            magnitude += m;
            heap.push(Panel {
                piece: i,
                a,
                b,
                value: v,
                error: e,
                magnitude: m,
                seq,
            });
            seq += 1;
        }
    }
    let mut stalled = false;
    loop {
        let target = (opts.rel_tol * opts.scale_floor.max(value.norm())).max(100.0 * Real::EPSILON * magnitude);
        if error <= target {
            break;
        }
        if evals + 30 > opts.max_evals || stalled {
            return Err(Error::ToleranceNotReached {
                value: format!("{value}"),
                error,
                evaluations: evals,
            });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || worst.b - worst.a < 1e-15 {
            stalled = true;
            heap.push(worst);
            continue;
        }
        let piece = &pieces[worst.piece];
        let (v1, e1, m1) = gk15(&f, piece, worst.a, mid)?;
        let (v2, e2, m2) = gk15(&f, piece, mid, worst.b)?;
        evals += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        magnitude += m1 + m2 - worst.magnitude;
        for (a, b, v, e, m) in [(worst.a, mid, v1, e1, m1), (mid, worst.b, v2, e2, m2)] {
            heap.push(Panel {
                piece: worst.piece,
                a,
                b,
                value: v,
                error: e,
                magnitude: m,
                seq,
            });
            seq += 1;
        }
    }
    // resum in a fixed order to remove drift from the incremental updates
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.piece.cmp(&y.piece).then(x.a.total_cmp(&y.a)));
    let mut value = C64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for p in &panels {
        value += p.value;
        error += p.error;
        magnitude += p.magnitude;
    }
    if contour.reversed {
        value = -value;
    }
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations: evals,
        magnitude,
    })
}

/// Enumerates the inventory, builds the separating contour, audits it and
/// integrates. An audit failure is an error, never a silent fallback.
pub fn integrate_separated<F>(f: F, inventory: &PoleInventory, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(C64) -> Result<C64>,
{
    let poles = inventory.enumerate(3.0)?;
    let contour = Contour::separating(&poles)?;
    let audit = pole_audit(&poles, &contour, opts.pole_margin);
    if !audit.passed {
        let bad: Vec<String> = audit
            .failures()
            .map(|e| format!("{} needs {:?}, is {:?}", e.pole, e.required, e.observed))
            .collect();
        return Err(Error::AuditFailed(bad.join("; ")));
    }
    integrate(f, &contour, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{c, e};

    #[test]
    fn constant_and_fourier_modes() {
        let opts = QuadOptions::default();
        let one = integrate(|_| Ok(c(1.0, 0.0)), &Contour::straight(), &opts).unwrap();
        assert!((one.value - c(1.0, 0.0)).norm() < 1e-15);
        let mode = integrate(|z| Ok(e(3.0 * z)), &Contour::straight(), &opts).unwrap();
        assert!(mode.value.norm() < 1e-14);
    }

    #[test]
    fn reversal_negates_exactly() {
        let contour = Contour::new(
            vec![Deformation {
                center: 0.1,
                side: Side::Above,
                radius: 0.05,
            }],
            vec![],
        )
        .unwrap();
        let f = |z: C64| Ok((z * 3.0).cos() / (z - c(0.4, 0.3)));
        let fwd = integrate(f, &contour, &QuadOptions::default()).unwrap();
        let back = integrate(f, &contour.reversed(), &QuadOptions::default()).unwrap();
        assert_eq!(fwd.value, -back.value);
    }

    #[test]
    fn invalid_deformations() {
        let d = |center, radius| Deformation {
            center,
            side: Side::Above,
            radius,
        };
        assert!(matches!(
            Contour::new(vec![d(0.1, 0.1), d(0.25, 0.1)], vec![]),
            Err(Error::OverlappingDeformations { .. })
        ));
        assert!(matches!(Contour::new(vec![d(0.7, 0.1)], vec![]), Err(Error::CenterOutOfRange(_))));
    }

    #[test]
    fn semicircle_picks_up_half_residue_difference() {
        // passing above minus passing below is a clockwise circle around a
        let a = 0.2;
        let f = move |z: C64| Ok(C64::new(1.0, 0.0) / (C64::new(1.0, 0.0) - e(z - a)));
        let mk = |side| {
            Contour::new(
                vec![Deformation {
                    center: a,
                    side,
                    radius: 0.1,
                }],
                vec![],
            )
            .unwrap()
        };
        let up = integrate(f, &mk(Side::Above), &QuadOptions::default()).unwrap();
        let down = integrate(f, &mk(Side::Below), &QuadOptions::default()).unwrap();
        // residue -1/(2 pi i), so the clockwise circle gives 1
        assert!((up.value - down.value - c(1.0, 0.0)).norm() < 1e-13, "{}", up.value - down.value);
    }

    #[test]
    fn residue_loop_oracle() {
        let a = c(0.1, -0.3);
        let contour = Contour::new(
            vec![],
            vec![Loop {
                center: a,
                radius: 0.2,
                orientation: Orientation::Counterclockwise,
            }],
        )
        .unwrap();
        // the base segment integral of e(-z)/(z - a) is computed separately
        let f = move |z: C64| Ok(e(-z) / (z - a));
        let total = integrate(f, &contour, &QuadOptions::default()).unwrap();
        let base = integrate(f, &Contour::straight(), &QuadOptions::default()).unwrap();
        let loop_part = (total.value - base.value) / C64::new(0.0, 2.0 * PI);
        assert!((loop_part - e(-a)).norm() < 1e-13);
    }
}
