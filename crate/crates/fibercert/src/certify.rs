//! Certification pipelines.
//!
//! Each rule checks the hypotheses of one sufficient (or necessary)
//! condition and produces a structured [`Certificate`]: a verdict plus the
//! systems built, the sub-test outcomes, the determinant classification, and
//! the degree product when relevant. A `Surjective` verdict is only emitted
//! when every gate passed or was explicitly assumed; everything that cannot
//! be decided exactly stays a visible `Inconclusive`, never a silent pass.
//!
//! Rule tags: `cor14` (odd degree product, leading forms only-zero), `cor13`
//! (unique odd maximal top pair), `thm12a` (combined system, real test),
//! `thm12b` (combined system, complex test, fiber parity), `thm19` (even
//! exponent gradient combinations), and the necessary-condition checks
//! `thm17` (odd matrix column) and `thm18` (component times gradient).

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fiber::bezout_number;
use crate::parse::{render, ProblemSpec};
use crate::poly::{poly_matrix_det, Degree, MultiPoly, PolyMap};
use crate::realalg::{
    complex_only_zero, real_only_zero_seeded, FieldLabel, ZeroSolutionVerdict, ZeroStatus,
};
use crate::systems::{
    build_combined, build_cor13_system, build_thm17_system, build_thm18_system,
    build_thm19_system, induced_homogeneous, CombinedSystem, HomogSystem, SystemsError,
};

/// Which certification rule produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Thm12a,
    Thm12b,
    Cor13,
    Cor14,
    Thm17,
    Thm18,
    Thm19,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Rule::Thm12a => "thm12a",
            Rule::Thm12b => "thm12b",
            Rule::Cor13 => "cor13",
            Rule::Cor14 => "cor14",
            Rule::Thm17 => "thm17",
            Rule::Thm18 => "thm18",
            Rule::Thm19 => "thm19",
        };
        f.write_str(tag)
    }
}

/// Classification of whether a polynomial matrix determinant can vanish on
/// real space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DetStatus {
    /// The determinant is a nonzero constant.
    ConstantNonzero {
        #[serde(with = "crate::serial::rat_str")]
        value: BigRational,
    },
    /// Positive constant term plus positive coefficients on all-even
    /// monomials: bounded below by the constant term, hence never zero.
    PositiveByMonomialTest,
    /// An exact real zero of the determinant.
    VanishWitness {
        #[serde(with = "crate::serial::rat_vec_str")]
        point: Vec<BigRational>,
    },
    /// Accepted on the caller's explicit flag, recorded as an assumption.
    AssumedNonvanishing,
    Unknown,
}

impl DetStatus {
    /// Statuses that satisfy the never-vanishing hypothesis (possibly by
    /// assumption).
    pub fn passes_nonvanishing_gate(&self) -> bool {
        matches!(
            self,
            DetStatus::ConstantNonzero { .. }
                | DetStatus::PositiveByMonomialTest
                | DetStatus::AssumedNonvanishing
        )
    }
}

impl fmt::Display for DetStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetStatus::ConstantNonzero { value } => {
                write!(f, "constant nonzero ({})", crate::serial::rat_to_string(value))
            }
            DetStatus::PositiveByMonomialTest => {
                write!(f, "positive by the even-monomial test")
            }
            DetStatus::VanishWitness { point } => {
                let coords: Vec<String> = point.iter().map(crate::serial::rat_to_string).collect();
                write!(f, "vanishes at ({})", coords.join(", "))
            }
            DetStatus::AssumedNonvanishing => write!(f, "assumed nonvanishing"),
            DetStatus::Unknown => write!(f, "unknown"),
        }
    }
}

/// Verdict of one certification rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Every hypothesis verified (or explicitly assumed): the map is onto.
    Surjective { via: Rule },
    /// Every finite real fiber has odd cardinality (and the infinite-fiber
    /// branch applies only when the recorded side condition held).
    OddFiberParity { via: Rule },
    /// A necessary condition was confirmed by an explicit witness.
    NecessaryConditionHolds { via: Rule },
    /// The necessary condition fails, so some hypothesis must fail too: the
    /// determinant in question vanishes somewhere on real space.
    TheoremViolatedOrHypothesisFails {
        via: Rule,
        #[serde(default, with = "crate::serial::opt_rat_vec_str")]
        witness: Option<Vec<BigRational>>,
    },
    NotApplicable { via: Rule, reason: String },
    Inconclusive { via: Rule, reason: String },
}

impl Verdict {
    pub fn rule(&self) -> Rule {
        match self {
            Verdict::Surjective { via }
            | Verdict::OddFiberParity { via }
            | Verdict::NecessaryConditionHolds { via }
            | Verdict::TheoremViolatedOrHypothesisFails { via, .. }
            | Verdict::NotApplicable { via, .. }
            | Verdict::Inconclusive { via, .. } => *via,
        }
    }

    pub fn is_surjective(&self) -> bool {
        matches!(self, Verdict::Surjective { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Surjective { via } => write!(f, "Surjective via {via}"),
            Verdict::OddFiberParity { via } => write!(f, "OddFiberParity via {via}"),
            Verdict::NecessaryConditionHolds { via } => {
                write!(f, "NecessaryConditionHolds via {via}")
            }
            Verdict::TheoremViolatedOrHypothesisFails { via, witness } => {
                write!(f, "TheoremViolatedOrHypothesisFails via {via}")?;
                if let Some(point) = witness {
                    let coords: Vec<String> =
                        point.iter().map(crate::serial::rat_to_string).collect();
                    write!(f, " (determinant zero at ({}))", coords.join(", "))?;
                }
                Ok(())
            }
            Verdict::NotApplicable { via, reason } => {
                write!(f, "NotApplicable via {via}: {reason}")
            }
            Verdict::Inconclusive { via, reason } => {
                write!(f, "Inconclusive via {via}: {reason}")
            }
        }
    }
}

/// A system recorded in a certificate, rendered canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemEvidence {
    pub label: String,
    pub nvars: usize,
    pub forms: Vec<String>,
    pub degrees: Vec<Degree>,
}

/// One named sub-test and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub check: String,
    pub outcome: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub systems: Vec<SystemEvidence>,
    pub subverdicts: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det_status: Option<DetStatus>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bezout: Option<u64>,
}

/// Structured outcome of one rule: verdict, the assumptions it leaned on,
/// and the evidence trail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
    pub evidence: Evidence,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        if !self.assumptions.is_empty() {
            writeln!(f, "assumptions:")?;
            for a in &self.assumptions {
                writeln!(f, "  - {a}")?;
            }
        }
        if let Some(ds) = &self.evidence.det_status {
            writeln!(f, "det status: {ds}")?;
        }
        if let Some(b) = self.evidence.bezout {
            writeln!(f, "degree product (complex count bound): {b}")?;
        }
        for sys in &self.evidence.systems {
            let degrees: Vec<String> = sys.degrees.iter().map(|d| d.to_string()).collect();
            writeln!(f, "{} (degrees {}):", sys.label, degrees.join(", "))?;
            for (k, form) in sys.forms.iter().enumerate() {
                writeln!(f, "  [{}] {form}", k + 1)?;
            }
        }
        for sub in &self.evidence.subverdicts {
            writeln!(f, "check {}: {}", sub.check, sub.outcome)?;
        }
        Ok(())
    }
}

/// Incremental certificate builder. Gate failures are recorded on the way
/// out, and `surjective()` refuses to fire unless every recorded gate
/// passed, which makes the no-silent-unsoundness rule structural.
struct CertBuilder {
    via: Rule,
    assumptions: Vec<String>,
    evidence: Evidence,
    gates_ok: bool,
}

impl CertBuilder {
    fn new(via: Rule) -> Self {
        CertBuilder {
            via,
            assumptions: Vec::new(),
            evidence: Evidence::default(),
            gates_ok: true,
        }
    }

    fn homog_system(&mut self, label: &str, sys: &HomogSystem) {
        self.evidence.systems.push(SystemEvidence {
            label: label.to_string(),
            nvars: sys.nvars,
            forms: sys.forms.iter().map(render).collect(),
            degrees: sys.degrees.clone(),
        });
    }

    fn combined_system(&mut self, label: &str, sys: &CombinedSystem) {
        self.evidence.systems.push(SystemEvidence {
            label: label.to_string(),
            nvars: sys.nvars,
            forms: sys.equations.iter().map(render).collect(),
            degrees: sys.degrees.clone(),
        });
    }

    fn record(&mut self, check: &str, outcome: impl fmt::Display, ok: bool) {
        self.evidence.subverdicts.push(SubCheck {
            check: check.to_string(),
            outcome: outcome.to_string(),
        });
        if !ok {
            self.gates_ok = false;
        }
    }

    fn assume(&mut self, text: &str) {
        self.assumptions.push(text.to_string());
    }

    fn finish(self, verdict: Verdict) -> Certificate {
        Certificate { verdict, assumptions: self.assumptions, evidence: self.evidence }
    }

    fn not_applicable(mut self, reason: impl Into<String>) -> Certificate {
        self.gates_ok = false;
        let via = self.via;
        self.finish(Verdict::NotApplicable { via, reason: reason.into() })
    }

    fn inconclusive(mut self, reason: impl Into<String>) -> Certificate {
        self.gates_ok = false;
        let via = self.via;
        self.finish(Verdict::Inconclusive { via, reason: reason.into() })
    }

    fn surjective(self) -> Certificate {
        let via = self.via;
        if !self.gates_ok {
            // Unreachable by construction; kept as a hard backstop so a
            // future edit cannot certify past a failed gate.
            return self.inconclusive("internal gate bookkeeping failure");
        }
        self.finish(Verdict::Surjective { via })
    }
}

/// Grid values for the exact vanish search, simple points first.
fn det_grid_values() -> Vec<BigRational> {
    [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1), (1, 3), (-1, 3), (3, 1), (-3, 1)]
        .into_iter()
        .map(|(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

const DET_GRID_CAP: usize = 20_000;

/// Classify whether `det(gmatrix)` can vanish on real space.
///
/// In order: a nonzero constant, the positive even-monomial pattern, an
/// exact zero found on a small deterministic rational grid, the caller's
/// assumption, and otherwise `Unknown`.
pub fn det_status(gmatrix: &[Vec<MultiPoly>], assume: bool) -> DetStatus {
    let n = gmatrix.len();
    assert!(n >= 1 && gmatrix.iter().all(|r| r.len() == n), "matrix must be square");
    let det = poly_matrix_det(gmatrix);
    if let Some(c) = det.as_constant() {
        return if c.is_zero() {
            // Identically zero: it vanishes everywhere, the origin will do.
            DetStatus::VanishWitness { point: vec![BigRational::zero(); det.nvars()] }
        } else {
            DetStatus::ConstantNonzero { value: c }
        };
    }
    if positive_monomial_test(&det) {
        return DetStatus::PositiveByMonomialTest;
    }
    if let Some(point) = grid_vanish_search(&det) {
        return DetStatus::VanishWitness { point };
    }
    if assume {
        DetStatus::AssumedNonvanishing
    } else {
        DetStatus::Unknown
    }
}

/// Positive constant term and positive coefficients on all-even monomials:
/// such a polynomial is bounded below by its constant term.
fn positive_monomial_test(det: &MultiPoly) -> bool {
    if !det.constant_term().is_positive() {
        return false;
    }
    det.terms().all(|(m, c)| {
        m.is_unit() || (m.exponents().iter().all(|e| e % 2 == 0) && c.is_positive())
    })
}

fn grid_vanish_search(det: &MultiPoly) -> Option<Vec<BigRational>> {
    let n = det.nvars();
    let values = det_grid_values();
    let mut idx = vec![0usize; n];
    let mut visited = 0usize;
    loop {
        let point: Vec<BigRational> = idx.iter().map(|&i| values[i].clone()).collect();
        if det.evaluate(&point).is_zero() {
            return Some(point);
        }
        visited += 1;
        if visited >= DET_GRID_CAP {
            return None;
        }
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Shared determinant gate: pass, assume, or bail out with a certificate.
fn det_gate(
    builder: &mut CertBuilder,
    gmatrix: &[Vec<MultiPoly>],
    assume: bool,
) -> Option<Verdict> {
    let status = det_status(gmatrix, assume);
    builder.evidence.det_status = Some(status.clone());
    match &status {
        DetStatus::ConstantNonzero { .. } | DetStatus::PositiveByMonomialTest => {
            builder.record("determinant never vanishes", &status, true);
            None
        }
        DetStatus::AssumedNonvanishing => {
            builder.record("determinant never vanishes", &status, true);
            builder.assume("determinant assumed nonvanishing on real space");
            None
        }
        DetStatus::VanishWitness { point } => {
            builder.record("determinant never vanishes", &status, false);
            Some(Verdict::NotApplicable {
                via: builder.via,
                reason: format!(
                    "determinant vanishes at ({})",
                    point.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
                ),
            })
        }
        DetStatus::Unknown => {
            builder.record("determinant never vanishes", &status, false);
            Some(Verdict::Inconclusive {
                via: builder.via,
                reason: "determinant nonvanishing could not be decided".to_string(),
            })
        }
    }
}

fn record_zero_verdict(builder: &mut CertBuilder, name: &str, v: &ZeroSolutionVerdict) {
    builder.record(name, v, v.is_only_zero());
}

fn odd_degree_gate(builder: &mut CertBuilder, degrees: &[Degree]) -> Option<String> {
    for (i, d) in degrees.iter().enumerate() {
        if !d.is_odd() {
            let reason = format!("equation {} has degree {d}, which is not odd", i + 1);
            builder.record("all equation degrees odd", &reason, false);
            return Some(reason);
        }
    }
    builder.record(
        "all equation degrees odd",
        degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
        true,
    );
    None
}

/// Full-hypothesis surjectivity rule on the combined system: the
/// determinant gate, odd combined degrees, and the real only-zero test of
/// the induced leading-form system.
pub fn certify_thm12a(spec: &ProblemSpec) -> Certificate {
    certify_thm12a_seeded(spec, 0)
}

pub fn certify_thm12a_seeded(spec: &ProblemSpec, seed: u64) -> Certificate {
    let mut b = CertBuilder::new(Rule::Thm12a);
    if let Some(v) = det_gate(&mut b, &spec.effective_gmatrix(), spec.assume_det_nonvanishing) {
        return b.finish(v);
    }
    let combined = build_combined(spec, false);
    b.combined_system("combined system", &combined);
    if let Some(reason) = odd_degree_gate(&mut b, &combined.degrees) {
        return b.not_applicable(reason);
    }
    let induced = induced_homogeneous(&combined);
    b.homog_system("induced leading-form system", &induced);
    let verdict = real_only_zero_seeded(&induced, seed);
    record_zero_verdict(&mut b, "real only-zero test", &verdict);
    match verdict.status {
        ZeroStatus::OnlyZero => b.surjective(),
        ZeroStatus::NonzeroWitness { point } => b.not_applicable(format!(
            "leading-form system has the nonzero real solution ({})",
            point.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
        )),
        ZeroStatus::Inconclusive { reason } => b.inconclusive(reason),
    }
}

/// Fiber-parity rule on the combined system: odd degrees plus the complex
/// only-zero test. Records the degree product and whether the constant-
/// determinant side condition for the infinite-fiber branch held.
pub fn certify_thm12b(spec: &ProblemSpec, target: &[BigRational]) -> Certificate {
    let mut b = CertBuilder::new(Rule::Thm12b);
    assert_eq!(target.len(), spec.nvars, "target length mismatch");
    b.record(
        "target",
        format!(
            "({}) (the parity claim holds for every real target)",
            target.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
        ),
        true,
    );
    if let Some(v) = det_gate(&mut b, &spec.effective_gmatrix(), spec.assume_det_nonvanishing) {
        return b.finish(v);
    }
    let combined = build_combined(spec, false);
    b.combined_system("combined system", &combined);
    if let Some(reason) = odd_degree_gate(&mut b, &combined.degrees) {
        return b.not_applicable(reason);
    }
    let induced = induced_homogeneous(&combined);
    b.homog_system("induced leading-form system", &induced);
    let verdict = complex_only_zero(&induced);
    debug_assert_eq!(verdict.field, FieldLabel::Complex);
    record_zero_verdict(&mut b, "complex only-zero test", &verdict);
    match verdict.status {
        ZeroStatus::OnlyZero => {}
        ZeroStatus::NonzeroWitness { point } => {
            return b.not_applicable(format!(
                "leading-form system has the nonzero complex solution ({})",
                point.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
            ));
        }
        ZeroStatus::Inconclusive { reason } => return b.inconclusive(reason),
    }
    match bezout_number(spec) {
        Ok(bez) => b.evidence.bezout = Some(bez),
        Err(e) => return b.inconclusive(format!("degree product unavailable: {e}")),
    }
    let constant_det = matches!(
        b.evidence.det_status,
        Some(DetStatus::ConstantNonzero { .. })
    );
    b.record(
        "infinite-fiber branch side condition (constant nonzero determinant)",
        if constant_det {
            "holds: an infinite complex fiber is possible only as stated"
        } else {
            "not verified: only the odd real parity branch is certified"
        },
        true,
    );
    let via = b.via;
    b.finish(Verdict::OddFiberParity { via })
}

/// Top-pair surjectivity rule: unique odd maximal degrees select one
/// product of leading forms per row; the real only-zero test closes it.
pub fn certify_cor13(spec: &ProblemSpec) -> Certificate {
    certify_cor13_seeded(spec, 0)
}

pub fn certify_cor13_seeded(spec: &ProblemSpec, seed: u64) -> Certificate {
    let mut b = CertBuilder::new(Rule::Cor13);
    let (sys, selector) = match build_cor13_system(spec) {
        Ok(v) => v,
        Err(SystemsError::NotApplicable { reason }) => {
            b.record("unique odd maximal degree per row", &reason, false);
            return b.not_applicable(reason);
        }
        Err(e) => return b.not_applicable(e.to_string()),
    };
    b.record(
        "unique odd maximal degree per row",
        format!(
            "selected components: {}",
            selector.iter().enumerate().map(|(i, j)| format!("row {} -> p{}", i + 1, j + 1)).collect::<Vec<_>>().join(", ")
        ),
        true,
    );
    if let Some(v) = det_gate(&mut b, &spec.effective_gmatrix(), spec.assume_det_nonvanishing) {
        return b.finish(v);
    }
    b.homog_system("top-pair system", &sys);
    let verdict = real_only_zero_seeded(&sys, seed);
    record_zero_verdict(&mut b, "real only-zero test", &verdict);
    match verdict.status {
        ZeroStatus::OnlyZero => {
            // Part (b): when the complex test also passes, fibers have odd
            // real parity; record it with the degree product.
            let complex = complex_only_zero(&sys);
            b.record("complex only-zero test (parity claim)", &complex, true);
            if complex.is_only_zero() {
                if let Ok(bez) = bezout_number(spec) {
                    b.evidence.bezout = Some(bez);
                }
            }
            b.surjective()
        }
        ZeroStatus::NonzeroWitness { point } => b.not_applicable(format!(
            "top-pair system has the nonzero real solution ({})",
            point.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
        )),
        ZeroStatus::Inconclusive { reason } => b.inconclusive(reason),
    }
}

/// Leading-form surjectivity rule for maps with an odd degree product: no
/// matrix, no exponents, just the componentwise leading forms.
pub fn certify_cor14(f: &PolyMap) -> Certificate {
    certify_cor14_seeded(f, 0)
}

pub fn certify_cor14_seeded(f: &PolyMap, seed: u64) -> Certificate {
    let mut b = CertBuilder::new(Rule::Cor14);
    let degrees = f.degrees();
    for (j, d) in degrees.iter().enumerate() {
        if !d.is_odd() {
            let reason =
                format!("component {} has degree {d}; the degree product is not odd", j + 1);
            b.record("odd degree product", &reason, false);
            return b.not_applicable(reason);
        }
    }
    b.record(
        "odd degree product",
        degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" * "),
        true,
    );
    let sys = HomogSystem::from_forms(f.leading_forms());
    b.homog_system("componentwise leading forms", &sys);
    let verdict = real_only_zero_seeded(&sys, seed);
    record_zero_verdict(&mut b, "real only-zero test", &verdict);
    match verdict.status {
        ZeroStatus::OnlyZero => {
            let complex = complex_only_zero(&sys);
            b.record("complex only-zero test (parity claim)", &complex, true);
            if complex.is_only_zero() {
                let product = degrees.iter().try_fold(1u64, |acc, d| {
                    d.finite().and_then(|v| acc.checked_mul(v as u64))
                });
                b.evidence.bezout = product;
            }
            b.surjective()
        }
        ZeroStatus::NonzeroWitness { point } => b.not_applicable(format!(
            "leading-form system has the nonzero real solution ({})",
            point.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
        )),
        ZeroStatus::Inconclusive { reason } => b.inconclusive(reason),
    }
}

/// Even-exponent gradient rule: with a nonvanishing Jacobian determinant
/// and an all-even exponent vector, the leading forms of the gradient
/// combinations having only the zero real solution certifies surjectivity.
pub fn certify_thm19(f: &PolyMap, alpha: &[u32], assume_jacobian: bool) -> Certificate {
    certify_thm19_seeded(f, alpha, assume_jacobian, 0)
}

pub fn certify_thm19_seeded(
    f: &PolyMap,
    alpha: &[u32],
    assume_jacobian: bool,
    seed: u64,
) -> Certificate {
    let mut b = CertBuilder::new(Rule::Thm19);
    let sys = match build_thm19_system(f, alpha) {
        Ok(sys) => sys,
        Err(SystemsError::NotApplicable { reason }) => {
            b.record("even exponent vector", &reason, false);
            return b.not_applicable(reason);
        }
        Err(e) => return b.not_applicable(e.to_string()),
    };
    b.record(
        "even exponent vector",
        alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "),
        true,
    );
    if let Some(v) = det_gate(&mut b, &f.jacobian_matrix(), assume_jacobian) {
        return b.finish(v);
    }
    b.homog_system("gradient-combination leading forms", &sys);
    let verdict = real_only_zero_seeded(&sys, seed);
    record_zero_verdict(&mut b, "real only-zero test", &verdict);
    match verdict.status {
        ZeroStatus::OnlyZero => b.surjective(),
        ZeroStatus::NonzeroWitness { point } => b.not_applicable(format!(
            "gradient-combination system has the nonzero real solution ({})",
            point.iter().map(crate::serial::rat_to_string).collect::<Vec<_>>().join(", ")
        )),
        ZeroStatus::Inconclusive { reason } => b.inconclusive(reason),
    }
}

/// Necessary-condition check on one matrix column with all-odd degrees: its
/// leading forms must have a nonzero real solution whenever the determinant
/// never vanishes. An exact `OnlyZero` outcome therefore proves the
/// determinant vanishes somewhere.
pub fn check_thm17(gmatrix: &[Vec<MultiPoly>], j0: usize) -> Certificate {
    check_thm17_seeded(gmatrix, j0, 0)
}

pub fn check_thm17_seeded(gmatrix: &[Vec<MultiPoly>], j0: usize, seed: u64) -> Certificate {
    let mut b = CertBuilder::new(Rule::Thm17);
    let status = det_status(gmatrix, false);
    b.record("determinant classification", &status, true);
    b.evidence.det_status = Some(status.clone());
    let sys = match build_thm17_system(gmatrix, j0) {
        Ok(sys) => sys,
        Err(SystemsError::NotApplicable { reason }) => {
            b.record("column degrees all odd", &reason, false);
            return b.not_applicable(reason);
        }
        Err(e) => return b.not_applicable(e.to_string()),
    };
    b.record("column degrees all odd", format!("column {}", j0 + 1), true);
    b.homog_system("column leading forms", &sys);
    let verdict = real_only_zero_seeded(&sys, seed);
    b.record("real only-zero test", &verdict, true);
    let via = b.via;
    match verdict.status {
        ZeroStatus::NonzeroWitness { .. } => b.finish(Verdict::NecessaryConditionHolds { via }),
        ZeroStatus::OnlyZero => {
            let witness = match &status {
                DetStatus::VanishWitness { point } => Some(point.clone()),
                _ => None,
            };
            b.record(
                "conclusion",
                "only the zero solution: the determinant must vanish somewhere on real space",
                true,
            );
            b.finish(Verdict::TheoremViolatedOrHypothesisFails { via, witness })
        }
        ZeroStatus::Inconclusive { reason } => b.inconclusive(reason),
    }
}

/// Necessary-condition check per component: each system of
/// `leading_form(p_j) * leading_form(d p_j/d x_i)` must have a nonzero real
/// solution whenever the Jacobian determinant never vanishes. Aggregated
/// over all components into one certificate.
pub fn check_thm18(f: &PolyMap) -> Certificate {
    check_thm18_seeded(f, 0)
}

pub fn check_thm18_seeded(f: &PolyMap, seed: u64) -> Certificate {
    let mut b = CertBuilder::new(Rule::Thm18);
    let status = det_status(&f.jacobian_matrix(), false);
    b.record("jacobian determinant classification", &status, true);
    b.evidence.det_status = Some(status.clone());
    let mut all_witnessed = true;
    let mut any_only_zero = false;
    for j in 0..f.nvars() {
        let sys = match build_thm18_system(f, j) {
            Ok(sys) => sys,
            Err(SystemsError::NotApplicable { reason }) => {
                return b.not_applicable(reason);
            }
            Err(e) => return b.not_applicable(e.to_string()),
        };
        b.homog_system(&format!("component {} self-product system", j + 1), &sys);
        let reduced: Vec<String> =
            sys.positive_scalar_normal_forms().iter().map(render).collect();
        b.record(
            &format!("component {} reduced system (up to positive scalars)", j + 1),
            format!("{{ {} }}", reduced.join(", ")),
            true,
        );
        let verdict = real_only_zero_seeded(&sys, seed);
        b.record(&format!("component {} real only-zero test", j + 1), &verdict, true);
        match verdict.status {
            ZeroStatus::NonzeroWitness { .. } => {}
            ZeroStatus::OnlyZero => {
                any_only_zero = true;
                all_witnessed = false;
            }
            ZeroStatus::Inconclusive { .. } => all_witnessed = false,
        }
    }
    let via = b.via;
    if any_only_zero {
        let witness = match &status {
            DetStatus::VanishWitness { point } => Some(point.clone()),
            _ => None,
        };
        b.record(
            "conclusion",
            "some component system has only the zero solution: the Jacobian determinant must vanish somewhere on real space",
            true,
        );
        b.finish(Verdict::TheoremViolatedOrHypothesisFails { via, witness })
    } else if all_witnessed {
        b.finish(Verdict::NecessaryConditionHolds { via })
    } else {
        b.inconclusive("some component test was inconclusive and none certified only-zero")
    }
}

/// The full analysis pipeline: cheapest and most specific rules first, all
/// certificates reported, then the fiber-parity rule.
pub fn run_pipeline(spec: &ProblemSpec, seed: u64) -> Vec<Certificate> {
    vec![
        certify_cor14_seeded(&spec.map, seed),
        certify_cor13_seeded(spec, seed),
        certify_thm12a_seeded(spec, seed),
        certify_thm19_seeded(&spec.map, &spec.alpha, spec.assume_det_nonvanishing, seed),
        certify_thm12b(spec, &spec.target),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use num_bigint::BigInt;

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p2(text: &str) -> MultiPoly {
        parse_poly(text, 2).unwrap()
    }

    fn map2(a: &str, b: &str) -> PolyMap {
        PolyMap::new(vec![p2(a), p2(b)])
    }

    #[test]
    fn det_status_examples() {
        let identity = crate::parse::identity_matrix(2);
        assert_eq!(det_status(&identity, false), DetStatus::ConstantNonzero { value: rq(1, 1) });

        let f = map2("x + y^3", "y - x^3");
        assert_eq!(det_status(&f.jacobian_matrix(), false), DetStatus::PositiveByMonomialTest);

        let g = vec![vec![p2("x"), p2("0")], vec![p2("0"), p2("1")]];
        match det_status(&g, false) {
            DetStatus::VanishWitness { point } => {
                assert!(point[0].is_zero());
            }
            other => panic!("expected vanish witness, got {other:?}"),
        }
    }

    #[test]
    fn det_status_respects_assume_flag() {
        // det = 1 + x^3 vanishes at x = -1, which is on the grid.
        let h = vec![vec![p2("1 + x^3"), p2("0")], vec![p2("0"), p2("1")]];
        match det_status(&h, true) {
            DetStatus::VanishWitness { point } => assert_eq!(point[0], rq(-1, 1)),
            other => panic!("grid should find the zero, got {other:?}"),
        }
        // A positive non-even pattern the grid misses: (x - 1/7)^2 + 1 expanded
        // has a negative cross term, and no grid point zeroes it.
        let k = vec![vec![p2("x^2 - 2/7*x + 50/49"), p2("0")], vec![p2("0"), p2("1")]];
        assert_eq!(det_status(&k, false), DetStatus::Unknown);
        assert_eq!(det_status(&k, true), DetStatus::AssumedNonvanishing);
    }

    #[test]
    fn thm12a_certifies_odd_cubic() {
        let spec = ProblemSpec::from_map(map2("x^3 - x", "y"));
        let cert = certify_thm12a(&spec);
        assert!(cert.verdict.is_surjective());
        assert!(cert.assumptions.is_empty());
    }

    #[test]
    fn thm12a_rejects_even_degree() {
        let spec = ProblemSpec::from_map(map2("x^2", "y"));
        let cert = certify_thm12a(&spec);
        assert!(matches!(cert.verdict, Verdict::NotApplicable { ref reason, .. } if reason.contains("not odd")));
    }

    #[test]
    fn thm12b_attaches_degree_product() {
        let spec = ProblemSpec::from_map(map2("x^3 - x", "y"));
        let cert = certify_thm12b(&spec, &[rq(0, 1), rq(0, 1)]);
        assert!(matches!(cert.verdict, Verdict::OddFiberParity { .. }));
        assert_eq!(cert.evidence.bezout, Some(3));

        let spec = ProblemSpec::from_map(map2("x^3", "y^3"));
        let cert = certify_thm12b(&spec, &[rq(2, 1), rq(-1, 3)]);
        assert!(matches!(cert.verdict, Verdict::OddFiberParity { .. }));
        assert_eq!(cert.evidence.bezout, Some(9));
    }

    #[test]
    fn thm12b_rejects_even_degree() {
        let spec = ProblemSpec::from_map(map2("x^2", "y"));
        let cert = certify_thm12b(&spec, &[rq(0, 1), rq(0, 1)]);
        assert!(matches!(cert.verdict, Verdict::NotApplicable { .. }));
    }

    #[test]
    fn cor13_certifies_mixed_degrees() {
        let spec = ProblemSpec::from_map(map2("x^3 + 2*y^3 + x", "3*x - y + 1"));
        let cert = certify_cor13(&spec);
        assert!(cert.verdict.is_surjective());
    }

    #[test]
    fn cor13_reports_ties() {
        let mut spec = ProblemSpec::from_map(map2("x^3", "x^3"));
        spec.gmatrix = Some(vec![vec![p2("1"), p2("1")], vec![p2("1"), p2("-1")]]);
        let cert = certify_cor13(&spec);
        assert!(matches!(cert.verdict, Verdict::NotApplicable { ref reason, .. } if reason.contains("tie")));
    }

    #[test]
    fn cor13_certifies_diagonal_cubes() {
        let spec = ProblemSpec::from_map(map2("x^3", "y^3"));
        let cert = certify_cor13(&spec);
        assert!(cert.verdict.is_surjective());
        // The complex test also passes, so the parity claim is recorded.
        assert_eq!(cert.evidence.bezout, Some(9));
    }

    #[test]
    fn cor14_examples() {
        let cert = certify_cor14(&map2("x^3 - x", "y"));
        assert!(cert.verdict.is_surjective());

        // Unit-determinant linear map: the classical linear-algebra case.
        let cert = certify_cor14(&map2("x + y", "y"));
        assert!(cert.verdict.is_surjective());

        let cert = certify_cor14(&map2("x^2", "y"));
        assert!(matches!(cert.verdict, Verdict::NotApplicable { .. }));
    }

    #[test]
    fn thm19_examples() {
        let cert = certify_thm19(&map2("x + y^3", "y - x^3"), &[2, 2], false);
        assert!(cert.verdict.is_surjective());
        assert_eq!(cert.evidence.det_status, Some(DetStatus::PositiveByMonomialTest));

        let cert = certify_thm19(&map2("x", "y"), &[2, 2], false);
        assert!(cert.verdict.is_surjective());

        // Here the gradient system passes but det J = 2x vanishes.
        let cert = certify_thm19(&map2("x^2", "y"), &[2, 2], false);
        assert!(matches!(cert.verdict, Verdict::NotApplicable { ref reason, .. } if reason.contains("vanishes")));

        let cert = certify_thm19(&map2("x", "y"), &[2, 3], false);
        assert!(matches!(cert.verdict, Verdict::NotApplicable { .. }));
    }

    #[test]
    fn thm17_examples() {
        // Column (x^3, x + y): only the zero solution, so the determinant
        // (here x^3) must vanish somewhere; the grid finds x = 0.
        let g = vec![vec![p2("x^3"), p2("0")], vec![p2("x + y"), p2("1")]];
        let cert = check_thm17(&g, 0);
        match &cert.verdict {
            Verdict::TheoremViolatedOrHypothesisFails { witness, .. } => {
                let w = witness.as_ref().expect("grid finds the determinant zero");
                assert!(w[0].is_zero());
            }
            other => panic!("expected violation report, got {other:?}"),
        }

        // Even-degree column is out of scope.
        let cert = check_thm17(&g, 1);
        assert!(matches!(cert.verdict, Verdict::NotApplicable { .. }));
    }

    #[test]
    fn thm18_examples() {
        let cert = check_thm18(&map2("x + y^3", "y - x^3"));
        assert!(matches!(cert.verdict, Verdict::NecessaryConditionHolds { .. }));

        // (x^2 + y^2, y): component 1 gives a positive-definite factor, so
        // the self-product system has only the zero solution and det J = 2x
        // must vanish; the grid corroborates with x = 0.
        let cert = check_thm18(&map2("x^2 + y^2", "y"));
        match &cert.verdict {
            Verdict::TheoremViolatedOrHypothesisFails { witness, .. } => {
                let w = witness.as_ref().expect("det J = 2x vanishes on the grid");
                assert!(w[0].is_zero());
            }
            other => panic!("expected violation report, got {other:?}"),
        }
    }

    #[test]
    fn pipeline_reports_all_rules() {
        let spec = ProblemSpec::from_map(map2("x^3 - x", "y"));
        let certs = run_pipeline(&spec, 0);
        assert_eq!(certs.len(), 5);
        assert_eq!(
            certs.iter().map(|c| c.verdict.rule()).collect::<Vec<_>>(),
            vec![Rule::Cor14, Rule::Cor13, Rule::Thm12a, Rule::Thm19, Rule::Thm12b]
        );
        assert!(certs[0].verdict.is_surjective());
        // Default alpha is all ones, so the even-exponent rule is off.
        assert!(matches!(certs[3].verdict, Verdict::NotApplicable { .. }));
    }

    #[test]
    fn certificates_round_trip_through_json() {
        let spec = ProblemSpec::from_map(map2("x^3 - x", "y"));
        for cert in run_pipeline(&spec, 0) {
            let text = serde_json::to_string(&cert).unwrap();
            let back: Certificate = serde_json::from_str(&text).unwrap();
            assert_eq!(back, cert);
        }
    }

    #[test]
    fn surjective_never_coexists_with_failed_gates() {
        // Sweep a few maps; whenever a certificate says Surjective, no
        // recorded sub-check may carry a failing outcome.
        let specs = [
            ProblemSpec::from_map(map2("x^3 - x", "y")),
            ProblemSpec::from_map(map2("x^2", "y")),
            ProblemSpec::from_map(map2("x^3 + 2*y^3 + x", "3*x - y + 1")),
            ProblemSpec::from_map(map2("x*y", "y")),
        ];
        for spec in &specs {
            for cert in run_pipeline(spec, 0) {
                if cert.verdict.is_surjective() {
                    for sub in &cert.evidence.subverdicts {
                        assert!(
                            !sub.outcome.to_lowercase().contains("inconclusive"),
                            "surjective certificate carries inconclusive evidence: {sub:?}"
                        );
                    }
                }
            }
        }
    }
}
