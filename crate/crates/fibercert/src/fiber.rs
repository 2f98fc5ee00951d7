//! Exact fiber computation for planar maps: count and isolate all real
//! solutions of `p = a, q = b`, report parity, and detect infinite complex
//! fibers.
//!
//! The pipeline is classical elimination: resultants of the shifted pair in
//! both variable orders give univariate eliminants whose real roots are the
//! candidate coordinates. Candidate boxes are then confirmed or excluded
//! exactly: by direct evaluation once both coordinates are known rationally,
//! by a gcd root count on the restricted pair when one coordinate is exact,
//! and by an interval Newton contraction (exact rational interval
//! arithmetic) for fully irrational simple solutions. A refinement-depth cap
//! turns pathological (singular) intersections into a diagnostic error
//! instead of a wrong count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::ProblemSpec;
use crate::poly::{Degree, MultiPoly, PolyMap};
use crate::realalg::{
    bareiss_det, gcd_univariate, sturm_count, sylvester_matrix, Isolation, RealBound,
    RootIsolator, UniPoly, ZPoly,
};
use crate::systems::build_combined;

const MAX_REFINEMENT_DEPTH: usize = 64;

/// Diagnostics from fiber solving; these are reported, never guessed around.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FiberError {
    #[error(
        "candidate box x in [{x_lo}, {x_hi}], y in [{y_lo}, {y_hi}] unresolved after {depth} \
         refinement steps (possibly a singular intersection)"
    )]
    UnresolvedBox { x_lo: String, x_hi: String, y_lo: String, y_hi: String, depth: usize },
    #[error("combined equation {row} has degree {degree}; the degree product needs every degree finite and positive")]
    DegenerateEquation { row: usize, degree: String },
    #[error("degree product overflows a 64-bit integer")]
    Overflow,
}

/// Real-count parity of a finite fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
    NotApplicable,
}

/// One isolated real solution: a product of coordinate isolations that
/// contains exactly one solution of the system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBox {
    pub x: Isolation,
    pub y: Isolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberStatus {
    Finite { count: usize, points: Vec<SolutionBox> },
    InfiniteOverC,
    Empty,
}

/// Outcome of one fiber query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    #[serde(with = "crate::serial::rat_vec_str")]
    pub target: Vec<BigRational>,
    pub status: FiberStatus,
    pub parity: Parity,
    /// Product of the component total degrees (the complex solution count
    /// with multiplicity for generic data); absent for degenerate maps.
    pub bezout: Option<u64>,
}

impl FiberReport {
    /// Real solution count; `None` for infinite complex fibers.
    pub fn count(&self) -> Option<usize> {
        match &self.status {
            FiberStatus::Finite { count, .. } => Some(*count),
            FiberStatus::Empty => Some(0),
            FiberStatus::InfiniteOverC => None,
        }
    }
}

/// Coefficients of `p` as a polynomial in `var`, each a `UniPoly` in the
/// other variable, lowest `var`-degree first.
fn coeffs_in_var(p: &MultiPoly, var: usize) -> Vec<UniPoly> {
    assert_eq!(p.nvars(), 2);
    let other = 1 - var;
    let dv = match p.degree_in(var) {
        Degree::Finite(d) => d as usize,
        Degree::NegInfinity => return Vec::new(),
    };
    let dmax = match p.degree_in(other) {
        Degree::Finite(d) => d as usize,
        Degree::NegInfinity => 0,
    };
    let mut table = vec![vec![BigRational::zero(); dmax + 1]; dv + 1];
    for (m, c) in p.terms() {
        let e = m.exponents();
        table[e[var] as usize][e[other] as usize] += c;
    }
    table.into_iter().map(UniPoly::from_coeffs).collect()
}

fn unipoly_pow(base: &UniPoly, k: usize) -> UniPoly {
    let mut acc = UniPoly::constant(BigRational::one());
    for _ in 0..k {
        acc = acc.mul(base);
    }
    acc
}

/// Resultant of `p` and `q` with respect to `var`, as a polynomial in the
/// other variable. Identically zero exactly when the pair shares a factor of
/// positive degree in `var`.
///
/// Computed fraction-free: both inputs are scaled to integer coefficients,
/// the Sylvester determinant is taken by Bareiss elimination over the ring
/// of integer univariate polynomials, and the scaling is divided back out.
pub fn eliminate(p: &MultiPoly, q: &MultiPoly, var: usize) -> UniPoly {
    assert_eq!(p.nvars(), 2, "elimination needs two variables");
    assert!(var < 2, "variable index out of range");
    assert!(!p.is_zero() && !q.is_zero(), "elimination of a zero polynomial");
    let pc = coeffs_in_var(p, var);
    let qc = coeffs_in_var(q, var);
    let m = pc.len() - 1; // deg_var p
    let n = qc.len() - 1; // deg_var q
    if m == 0 {
        return unipoly_pow(&pc[0], n);
    }
    if n == 0 {
        return unipoly_pow(&qc[0], m);
    }
    // Scale each polynomial by the lcm of all its coefficient denominators.
    let scale_of = |rows: &[UniPoly]| -> BigInt {
        let mut l = BigInt::one();
        for row in rows {
            for c in row.coeffs() {
                if !c.is_zero() {
                    l = num_integer::Integer::lcm(&l, c.denom());
                }
            }
        }
        l
    };
    let lp = scale_of(&pc);
    let lq = scale_of(&qc);
    let to_z = |row: &UniPoly, l: &BigInt| -> ZPoly {
        ZPoly::from_coeffs(
            row.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
    };
    let pz: Vec<ZPoly> = pc.iter().map(|r| to_z(r, &lp)).collect();
    let qz: Vec<ZPoly> = qc.iter().map(|r| to_z(r, &lq)).collect();
    let det = bareiss_det(sylvester_matrix(&pz, &qz));
    // res(lp*p, lq*q) = lp^n * lq^m * res(p, q)
    let back = BigRational::new(BigInt::one(), lp.pow(n as u32) * lq.pow(m as u32));
    UniPoly::from_coeffs(
        det.coeffs.iter().map(|c| BigRational::from_integer(c.clone()) * &back).collect(),
    )
}

/// Closed rational interval; arithmetic is exact, so enclosures are rigorous.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    fn point(v: BigRational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    fn from_isolation(iso: &Isolation) -> Self {
        RatInterval::new(iso.lo.clone(), iso.hi.clone())
    }

    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    fn mul(&self, o: &RatInterval) -> RatInterval {
        let c1 = &self.lo * &o.lo;
        let c2 = &self.lo * &o.hi;
        let c3 = &self.hi * &o.lo;
        let c4 = &self.hi * &o.hi;
        let mut lo = c1.clone();
        let mut hi = c1;
        for c in [c2, c3, c4] {
            if c < lo {
                lo = c.clone();
            }
            if c > hi {
                hi = c;
            }
        }
        RatInterval::new(lo, hi)
    }

    fn scale(&self, c: &BigRational) -> RatInterval {
        if c.is_negative() {
            RatInterval::new(&self.hi * c, &self.lo * c)
        } else {
            RatInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Sign-aware power: even powers of sign-mixed intervals clamp at zero.
    fn pow(&self, k: u32) -> RatInterval {
        if k == 0 {
            return RatInterval::point(BigRational::one());
        }
        let lp = pow_rat(&self.lo, k);
        let hp = pow_rat(&self.hi, k);
        if k % 2 == 1 || !self.lo.is_negative() {
            RatInterval::new(lp, hp)
        } else if !self.hi.is_positive() {
            RatInterval::new(hp, lp)
        } else {
            RatInterval::new(BigRational::zero(), lp.max(hp))
        }
    }

    /// Reciprocal; defined only when zero is outside.
    fn recip(&self) -> RatInterval {
        assert!(!self.contains_zero());
        RatInterval::new(self.hi.recip(), self.lo.recip())
    }

    fn intersects(&self, o: &RatInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Strict containment in the interior of `o`.
    fn inside_interior(&self, o: &RatInterval) -> bool {
        o.lo < self.lo && self.hi < o.hi
    }
}

fn pow_rat(v: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= v;
    }
    acc
}

/// Rigorous enclosure of a bivariate polynomial over a box, term by term.
fn eval_box(p: &MultiPoly, bx: &RatInterval, by: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(BigRational::zero());
    let mut x_pows: Vec<RatInterval> = vec![RatInterval::point(BigRational::one())];
    let mut y_pows: Vec<RatInterval> = vec![RatInterval::point(BigRational::one())];
    for (m, c) in p.terms() {
        let (ex, ey) = (m.exponents()[0] as usize, m.exponents()[1] as usize);
        while x_pows.len() <= ex {
            x_pows.push(bx.pow(x_pows.len() as u32));
        }
        while y_pows.len() <= ey {
            y_pows.push(by.pow(y_pows.len() as u32));
        }
        acc = acc.add(&x_pows[ex].mul(&y_pows[ey]).scale(c));
    }
    acc
}

/// `p(x0, y)` as a univariate polynomial in `y`.
fn restrict_x(p: &MultiPoly, x0: &BigRational) -> UniPoly {
    let rows = coeffs_in_var(p, 1); // coefficients in y, entries in x
    UniPoly::from_coeffs(rows.iter().map(|r| r.eval(x0)).collect())
}

/// `p(x, y0)` as a univariate polynomial in `x`.
fn restrict_y(p: &MultiPoly, y0: &BigRational) -> UniPoly {
    let rows = coeffs_in_var(p, 0);
    UniPoly::from_coeffs(rows.iter().map(|r| r.eval(y0)).collect())
}

struct ShiftedSystem {
    p: MultiPoly,
    q: MultiPoly,
    px: MultiPoly,
    py: MultiPoly,
    qx: MultiPoly,
    qy: MultiPoly,
}

enum NewtonOutcome {
    Confirmed,
    Excluded,
    Unknown,
}

/// One interval Newton test on the box, with exact rational intervals. The
/// contraction `K(B)` landing in the interior of `B` certifies exactly one
/// solution in `B`; an empty intersection certifies none.
fn newton_test(sys: &ShiftedSystem, bx: &RatInterval, by: &RatInterval) -> NewtonOutcome {
    let two = BigRational::from_integer(2.into());
    let mx = (&bx.lo + &bx.hi) / &two;
    let my = (&by.lo + &by.hi) / &two;
    let point = [mx.clone(), my.clone()];
    let f1 = RatInterval::point(sys.p.evaluate(&point));
    let f2 = RatInterval::point(sys.q.evaluate(&point));
    let j11 = eval_box(&sys.px, bx, by);
    let j12 = eval_box(&sys.py, bx, by);
    let j21 = eval_box(&sys.qx, bx, by);
    let j22 = eval_box(&sys.qy, bx, by);
    let det = j11.mul(&j22).sub(&j12.mul(&j21));
    if det.contains_zero() {
        return NewtonOutcome::Unknown;
    }
    let inv_det = det.recip();
    // Cramer solve of J d = f.
    let d1 = j22.mul(&f1).sub(&j12.mul(&f2)).mul(&inv_det);
    let d2 = j11.mul(&f2).sub(&j21.mul(&f1)).mul(&inv_det);
    let kx = RatInterval::point(mx).sub(&d1);
    let ky = RatInterval::point(my).sub(&d2);
    if kx.inside_interior(bx) && ky.inside_interior(by) {
        NewtonOutcome::Confirmed
    } else if !kx.intersects(bx) || !ky.intersects(by) {
        NewtonOutcome::Excluded
    } else {
        NewtonOutcome::Unknown
    }
}

/// Confirm or exclude one candidate box; refines coordinates on demand.
fn resolve_candidate(
    sys: &ShiftedSystem,
    ix: &RootIsolator,
    iy: &RootIsolator,
    mut cx: Isolation,
    mut cy: Isolation,
) -> Result<Option<SolutionBox>, FiberError> {
    for _depth in 0..=MAX_REFINEMENT_DEPTH {
        match (cx.exact_root.clone(), cy.exact_root.clone()) {
            (Some(x0), Some(y0)) => {
                let point = [x0, y0];
                let hit = sys.p.evaluate(&point).is_zero() && sys.q.evaluate(&point).is_zero();
                return Ok(hit.then_some(SolutionBox { x: cx, y: cy }));
            }
            (Some(x0), None) => {
                // Solutions above x0 have y among the roots of the gcd of
                // the restricted pair; the isolation admits at most one.
                let py = restrict_x(&sys.p, &x0);
                let qy = restrict_x(&sys.q, &x0);
                let g = match (py.is_zero(), qy.is_zero()) {
                    (true, true) => unreachable!("common line factor escaped elimination"),
                    (true, false) => qy,
                    (false, true) => py,
                    (false, false) => gcd_univariate(&py, &qy),
                };
                if g.degree().is_none_or(|d| d == 0) {
                    return Ok(None);
                }
                let hits = sturm_count(
                    &g,
                    &RealBound::Value(cy.lo.clone()),
                    &RealBound::Value(cy.hi.clone()),
                );
                debug_assert!(hits <= 1);
                return Ok((hits == 1).then_some(SolutionBox { x: cx, y: cy }));
            }
            (None, Some(y0)) => {
                let px = restrict_y(&sys.p, &y0);
                let qx = restrict_y(&sys.q, &y0);
                let g = match (px.is_zero(), qx.is_zero()) {
                    (true, true) => unreachable!("common line factor escaped elimination"),
                    (true, false) => qx,
                    (false, true) => px,
                    (false, false) => gcd_univariate(&px, &qx),
                };
                if g.degree().is_none_or(|d| d == 0) {
                    return Ok(None);
                }
                let hits = sturm_count(
                    &g,
                    &RealBound::Value(cx.lo.clone()),
                    &RealBound::Value(cx.hi.clone()),
                );
                debug_assert!(hits <= 1);
                return Ok((hits == 1).then_some(SolutionBox { x: cx, y: cy }));
            }
            (None, None) => {
                let bx = RatInterval::from_isolation(&cx);
                let by = RatInterval::from_isolation(&cy);
                if !eval_box(&sys.p, &bx, &by).contains_zero()
                    || !eval_box(&sys.q, &bx, &by).contains_zero()
                {
                    return Ok(None);
                }
                match newton_test(sys, &bx, &by) {
                    NewtonOutcome::Confirmed => return Ok(Some(SolutionBox { x: cx, y: cy })),
                    NewtonOutcome::Excluded => return Ok(None),
                    NewtonOutcome::Unknown => {
                        cx = ix.refine(&cx);
                        cy = iy.refine(&cy);
                    }
                }
            }
        }
    }
    Err(FiberError::UnresolvedBox {
        x_lo: crate::serial::rat_to_string(&cx.lo),
        x_hi: crate::serial::rat_to_string(&cx.hi),
        y_lo: crate::serial::rat_to_string(&cy.lo),
        y_hi: crate::serial::rat_to_string(&cy.hi),
        depth: MAX_REFINEMENT_DEPTH,
    })
}

/// Exact fiber of a planar map over a rational target.
pub fn solve_fiber(f: &PolyMap, target: &[BigRational]) -> Result<FiberReport, FiberError> {
    assert_eq!(f.nvars(), 2, "fiber solving is implemented for two variables");
    assert_eq!(target.len(), 2, "target needs two coordinates");
    let p = f.component(0) - &MultiPoly::constant(2, target[0].clone());
    let q = f.component(1) - &MultiPoly::constant(2, target[1].clone());
    let bezout = match (f.component(0).total_degree(), f.component(1).total_degree()) {
        (Degree::Finite(a), Degree::Finite(b)) if a >= 1 && b >= 1 => {
            (a as u64).checked_mul(b as u64)
        }
        _ => None,
    };
    let report = |status: FiberStatus| -> FiberReport {
        let parity = match &status {
            FiberStatus::Finite { count, .. } => {
                if count % 2 == 1 {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            }
            FiberStatus::Empty => Parity::Even,
            FiberStatus::InfiniteOverC => Parity::NotApplicable,
        };
        FiberReport { target: target.to_vec(), status, parity, bezout }
    };

    // Degenerate components decide the fiber outright. A nonzero constant
    // equation kills every solution; an identically zero one leaves the
    // zero set of the other equation, a full plane or a complex curve.
    for (this, other) in [(&p, &q), (&q, &p)] {
        if let Some(c) = this.as_constant() {
            let unsatisfiable =
                !c.is_zero() || other.as_constant().is_some_and(|v| !v.is_zero());
            return Ok(if unsatisfiable {
                report(FiberStatus::Empty)
            } else {
                report(FiberStatus::InfiniteOverC)
            });
        }
    }

    let e1 = eliminate(&p, &q, 1); // eliminate y: roots give x-coordinates
    let e2 = eliminate(&p, &q, 0); // eliminate x: roots give y-coordinates
    if e1.is_zero() || e2.is_zero() {
        // A common nonconstant factor: the complex solution set is a curve.
        return Ok(report(FiberStatus::InfiniteOverC));
    }

    let empty = report(FiberStatus::Empty);
    let make_isolator = |e: &UniPoly| -> Option<(RootIsolator, Vec<Isolation>)> {
        if e.degree() == Some(0) {
            return None;
        }
        let iso = RootIsolator::new(e);
        // Eliminant root bounds can be astronomically large; bring every
        // isolation to width at most 1 so the refinement cap below starts
        // from a sane scale.
        let unit = BigRational::one();
        let roots = iso.isolate().iter().map(|r| iso.refine_below(r, &unit)).collect();
        Some((iso, roots))
    };
    let Some((ix, rx)) = make_isolator(&e1) else {
        return Ok(empty);
    };
    let Some((iy, ry)) = make_isolator(&e2) else {
        return Ok(empty);
    };
    if rx.is_empty() || ry.is_empty() {
        return Ok(empty);
    }

    let sys = ShiftedSystem {
        px: p.partial_derivative(0),
        py: p.partial_derivative(1),
        qx: q.partial_derivative(0),
        qy: q.partial_derivative(1),
        p,
        q,
    };

    let mut points = Vec::new();
    let display_width = BigRational::new(BigInt::one(), 16.into());
    for cx in &rx {
        for cy in &ry {
            if let Some(sol) = resolve_candidate(&sys, &ix, &iy, cx.clone(), cy.clone())? {
                // Tighten for reporting; refinement keeps each coordinate
                // root inside and often lands on rational roots exactly.
                points.push(SolutionBox {
                    x: ix.refine_below(&sol.x, &display_width),
                    y: iy.refine_below(&sol.y, &display_width),
                });
            }
        }
    }
    if points.is_empty() {
        return Ok(empty);
    }
    // Deterministic order: graded-lex on the lower corners.
    points.sort_by(|a, b| {
        let ka = (&a.x.lo + &a.y.lo, a.x.lo.clone());
        let kb = (&b.x.lo + &b.y.lo, b.x.lo.clone());
        ka.cmp(&kb)
    });
    let count = points.len();
    Ok(report(FiberStatus::Finite { count, points }))
}

/// Product of the combined-system degrees (alpha exponents and matrix
/// included); every degree must be finite and positive.
pub fn bezout_number(spec: &ProblemSpec) -> Result<u64, FiberError> {
    let combined = build_combined(spec, false);
    let mut product: u64 = 1;
    for (row, d) in combined.degrees.iter().enumerate() {
        match d {
            Degree::Finite(v) if *v >= 1 => {
                product = product.checked_mul(*v as u64).ok_or(FiberError::Overflow)?;
            }
            _ => {
                return Err(FiberError::DegenerateEquation {
                    row: row + 1,
                    degree: d.to_string(),
                })
            }
        }
    }
    Ok(product)
}
