//! The bundled equal-chord equation system for pentagon pairs, staged
//! elimination, and verification of the bundled reference eliminants.
//!
//! The system encodes when two convex pentagons have identical chord
//! functions (Steiner symmetrals) in six directions. Each equation is
//! labeled by the vertex pair spanning its direction (for example `B1B5`),
//! and comes with side conditions: polynomials that must not vanish for the
//! equation to be meaningful. The six polynomial relations use parameters
//! `u, v, w, x, y, z` in the unit box.
//!
//! The crate also bundles a reference derivation: first-stage eliminants
//! `Q1, Q2, Q3` (after removing `z` and `w`) and second-stage resultants
//! `R1, R2` (after removing `v`). [`eliminate_zw`], [`eliminate_v`], and
//! [`final_resultant`] recompute each stage from scratch, and
//! [`compare_with_reference`] classifies how a computed polynomial relates
//! to the bundled claim, from exact equality down to sampled consistency.

use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cache::{self, CacheError};
use crate::eliminate::{self, ElimError, LinearSolution};
use crate::poly::{Mono, OrderKind, MonomialOrder, Poly, Var};
use crate::solver;

/// Label of an equation: a chord direction of the pentagon construction,
/// or a stage tag of the bundled reference derivation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EquationLabel {
    B1B5,
    C1C5,
    D1D5,
    E2A2,
    E3A3,
    E4A4,
    Q1,
    Q2,
    Q3,
    R1,
    R2,
}

impl std::fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EquationLabel::B1B5 => "B1B5",
            EquationLabel::C1C5 => "C1C5",
            EquationLabel::D1D5 => "D1D5",
            EquationLabel::E2A2 => "E2A2",
            EquationLabel::E3A3 => "E3A3",
            EquationLabel::E4A4 => "E4A4",
            EquationLabel::Q1 => "Q1",
            EquationLabel::Q2 => "Q2",
            EquationLabel::Q3 => "Q3",
            EquationLabel::R1 => "R1",
            EquationLabel::R2 => "R2",
        };
        write!(f, "{s}")
    }
}

/// One equation of a polynomial system: the polynomial that must vanish and
/// the side conditions (polynomials that must not vanish) under which the
/// equation was derived.
#[derive(Clone, Debug)]
pub struct SystemEquation {
    pub label: EquationLabel,
    pub poly: Poly,
    pub nonvanishing: Vec<Poly>,
}

// The six direction equations with their side conditions.
const RELATION_TABLE: &[(EquationLabel, &str, &[&str])] = &[
    (
        EquationLabel::B1B5,
        "w - w*v - x*y - u*y - w*y",
        &["1 - v"],
    ),
    (
        EquationLabel::C1C5,
        "u + w - x",
        &["1 - v", "1 - v - y - z"],
    ),
    (
        EquationLabel::D1D5,
        "v - 2*u*v - x*v + 2*u - 2*y*u - 2*z*u - w*v + 1 + y + z + x - x*y - x*z + w - y*w - z*w",
        &["1 - y - z"],
    ),
    (
        EquationLabel::E2A2,
        "1 - 2*u - v + 2*u*v - 2*x*y - z + z*w + 2*z*u + u^2 - u^2*v + 2*x*y*u - z*w*u - z*u^2 \
         - w + w*u + w*v - u*v*w + x*y*w",
        &["1 - u", "1 - w - u"],
    ),
    (
        EquationLabel::E3A3,
        "-y + 2*y*u - y*u^2 + x*y - x*y*u - x*y*w + w - u*w - z*w + z*w*u",
        &["1 - u", "1 - x - u"],
    ),
    (
        EquationLabel::E4A4,
        "z*w - y*u - v*w",
        &["u + w"],
    ),
];

// Reference eliminants, stored per power of the eliminated variable so the
// source layout matches the bundled derivation line for line.
const Q1_BLOCKS: &[(u16, &str)] = &[
    (1, "y - 3*y*u + y*u^2 - 3*x*y + 3*x*y*u + u"),
    (0, "-y + 2*y*u + 3*x*y - 3*x*y*u - 2*x^2*y^2 - u"),
];

const Q2_BLOCKS: &[(u16, &str)] = &[
    (2, "-4*x + 7*x*u + 4*x^2 - 2*u^2 + u"),
    (1, "-10*x*u - 2*x^2 + 4*u^2 - 2*u - 2*x*y + 6*x*y*u - 6*x^2*y"),
    (0, "3*x*u - 2*u^2 + 2*x^2*y + 2*x + 2*x*y + u + 2*x^2 - 6*x*y*u - 4*x^2*y^2"),
];

const Q3_BLOCKS: &[(u16, &str)] = &[
    (2, "4*x - 8*x*u - u + 2*u^2 + 4*x*u^2 - u^3"),
    (
        1,
        "-6*x + 12*x*u + 2*u - 4*u^2 - 6*x*u^2 + 2*u^3 + 12*x^2*y - 12*x^2*y*u - 2*x*y*u \
         + 2*x*y*u^2",
    ),
    (
        0,
        "2*x - 4*x*u - 8*x^2*y - u + 2*u^2 + 2*x*u^2 + 8*x^2*y*u - u^3 + 2*x*y*u - 2*x*y*u^2 \
         + 4*x^3*y^2",
    ),
];

const R1_BLOCKS: &[(u16, &str)] = &[
    (6, "-2*y^2"),
    (5, "5*y^2 - 11*x*y^2 - 6*x*y^3"),
    (
        4,
        "-4*y^2 - 4*x*y - 10*x^2*y^2 - 8*x^2*y^3 - 2*x*y^2 + 26*x*y^3 - 4*x^2*y^4",
    ),
    (
        3,
        "y^2 + 26*x^2*y^2 + 8*x*y - 13*x*y^2 - 32*x*y^3 + 6*x^3*y^2 + 2*x^2*y - 26*x^3*y^3 \
         + 22*x^2*y^3 - 12*x^3*y^4 + 24*x^2*y^4",
    ),
    (
        2,
        "-16*x^4*y^3 + 8*x*y^2 + 14*x*y^3 + 24*x^3*y + 36*x^4*y^2 + 4*x^2 - 34*x^2*y + 4*x*y \
         - 2*x - 94*x^3*y^2 + 52*x^3*y^3 + 26*x^2*y^2 - 22*x^2*y^3 + 56*x^3*y^4 - 20*x^4*y^4 \
         - 44*x^2*y^4",
    ),
    (
        1,
        "36*x^5*y^3 - 8*x^5*y^4 - 32*x^4*y^3 - 2*x*y^3 - 60*x^4*y^2 - 24*x^3*y + 122*x^3*y^2 \
         + 20*x^2*y - 4*x*y + 4*x*y^2 - 18*x^3*y^3 - 50*x^2*y^2 + 16*x^2*y^3 + 64*x^4*y^4 \
         - 72*x^3*y^4 + 24*x^2*y^4",
    ),
    (
        0,
        "16*x^6*y^4 - 36*x^5*y^3 + 60*x^4*y^3 + 20*x^5*y^4 + 36*x^4*y^2 + 16*x^2*y^2 \
         - 42*x^3*y^2 - 2*x*y^2 + 8*x^3*y^3 - 36*x^4*y^3 - 4*x^2*y^3 + 20*x^3*y^4 \
         - 36*x^4*y^4 - 4*x^2*y^4",
    ),
];

const R2_BLOCKS: &[(u16, &str)] = &[
    (7, "-y"),
    (6, "4*y + 2*x*y - 2*x*y^2"),
    (5, "-6*y - 6*x^2*y - 2*x - 6*x*y + 10*x*y^2 + 6*x^2*y^2"),
    (4, "4*y + 6*x + 2*x*y - 16*x*y^2 + 28*x^2*y - 26*x^2*y^2 + 8*x^3*y^3"),
    (
        3,
        "-y - 28*x^2*y - 6*x + 8*x*y + 10*x*y^2 + 22*x^2*y^2 - 24*x^4*y^2 - 4*x^2 - 20*x^3*y \
         + 8*x^4*y^3 + 52*x^3*y^2 - 40*x^3*y^3",
    ),
    (
        2,
        "4*x^2*y + 2*x - 8*x*y - 20*x^5*y^3 - 2*x*y^2 + 44*x^3*y - 128*x^3*y^2 + 72*x^4*y^2 \
         + 4*x^2 + 10*x^2*y^2 - 16*x^4*y^3 + 60*x^3*y^3",
    ),
    (
        1,
        "2*x*y + 40*x^5*y^3 - 72*x^4*y^2 - 20*x^3*y - 16*x^2*y^2 + 88*x^3*y^2 - 28*x^3*y^3 \
         + 8*x^4*y^3 + 2*x^2*y",
    ),
    (0, "4*x^3*y^3 + 4*x^2*y^2 + 24*x^4*y^2 - 20*x^3*y^2 - 20*x^5*y^3"),
];

fn parse_known(text: &str) -> Poly {
    Poly::parse(text).expect("bundled polynomial text parses")
}

fn assemble(var: Var, blocks: &[(u16, &str)]) -> Poly {
    blocks
        .iter()
        .map(|&(power, text)| &parse_known(text) * &Poly::monomial(Mono::of_var(var, power), BigInt::one()))
        .sum()
}

/// The six direction equations of the pentagon pair construction, in the
/// fixed order `B1B5, C1C5, D1D5, E2A2, E3A3, E4A4`, each with its side
/// conditions.
pub fn pentagon_system() -> &'static [SystemEquation; 6] {
    static SYSTEM: OnceLock<[SystemEquation; 6]> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let eqs: Vec<SystemEquation> = RELATION_TABLE
            .iter()
            .map(|&(label, poly, sides)| SystemEquation {
                label,
                poly: parse_known(poly),
                nonvanishing: sides.iter().map(|s| parse_known(s)).collect(),
            })
            .collect();
        eqs.try_into().expect("six equations")
    })
}

/// The bundled first-stage reference eliminants `Q1, Q2, Q3` (claimed
/// images of the system after removing `z` and `w`; variables `u, v, x, y`).
pub fn stage1_reference() -> &'static [SystemEquation; 3] {
    static REF: OnceLock<[SystemEquation; 3]> = OnceLock::new();
    REF.get_or_init(|| {
        [
            (EquationLabel::Q1, Q1_BLOCKS),
            (EquationLabel::Q2, Q2_BLOCKS),
            (EquationLabel::Q3, Q3_BLOCKS),
        ]
        .map(|(label, blocks)| SystemEquation {
            label,
            poly: assemble(Var::V, blocks),
            nonvanishing: Vec::new(),
        })
    })
}

/// The bundled second-stage reference resultants `R1, R2` (claimed
/// eliminants after also removing `v`; variables `u, x, y`).
pub fn stage2_reference() -> &'static [SystemEquation; 2] {
    static REF: OnceLock<[SystemEquation; 2]> = OnceLock::new();
    REF.get_or_init(|| {
        [
            (EquationLabel::R1, R1_BLOCKS),
            (EquationLabel::R2, R2_BLOCKS),
        ]
        .map(|(label, blocks)| SystemEquation {
            label,
            poly: assemble(Var::U, blocks),
            nonvanishing: Vec::new(),
        })
    })
}

fn equation(label: EquationLabel) -> &'static Poly {
    let found = pentagon_system()
        .iter()
        .chain(stage1_reference().iter())
        .chain(stage2_reference().iter())
        .find(|eq| eq.label == label);
    &found.expect("label exists").poly
}

/// Solution `w = x - u` read off the linear `C1C5` equation.
fn w_solution() -> LinearSolution {
    LinearSolution::from_linear(equation(EquationLabel::C1C5), Var::W)
        .expect("the C1C5 equation is linear in w")
}

/// Solution `z = (y*u + v*w) / w` (with `w` already replaced by `x - u`)
/// read off the `E4A4` equation.
fn z_solution() -> LinearSolution {
    let e4a4 = eliminate::substitute_linear(equation(EquationLabel::E4A4), &w_solution());
    LinearSolution::from_linear(&e4a4, Var::Z).expect("the E4A4 equation is linear in z")
}

/// Recomputes the first elimination stage: substitutes `w = x - u` (from
/// `C1C5`) and then `z = (y*u + v*w)/w` (from `E4A4`, denominator-free)
/// into the four remaining equations `B1B5, D1D5, E2A2, E3A3`, returning
/// their content-normalized images in the variables `u, v, x, y`.
pub fn eliminate_zw() -> [Poly; 4] {
    let w_sol = w_solution();
    let z_sol = z_solution();
    [
        EquationLabel::B1B5,
        EquationLabel::D1D5,
        EquationLabel::E2A2,
        EquationLabel::E3A3,
    ]
    .map(|label| {
        let after_w = eliminate::substitute_linear(equation(label), &w_sol);
        eliminate::substitute_linear(&after_w, &z_sol).primitive_part()
    })
}

/// Solution of the reference eliminant `Q1` (linear in `v`) for `v`.
pub fn v_solution() -> LinearSolution {
    LinearSolution::from_linear(equation(EquationLabel::Q1), Var::V)
        .expect("Q1 is linear in v")
}

/// Recomputes the second elimination stage: clears `v` from the reference
/// eliminants `Q2` and `Q3` through the linear `v`-solution of `Q1`,
/// returning the content-normalized results in `u, x, y`. Because `Q2` and
/// `Q3` are quadratic in `v`, each raw substitution equals the resultant of
/// the pair with respect to `v` exactly.
pub fn eliminate_v() -> [Poly; 2] {
    let v_sol = v_solution();
    [EquationLabel::Q2, EquationLabel::Q3].map(|label| {
        eliminate::substitute_linear(equation(label), &v_sol).primitive_part()
    })
}

/// Which solution variety ambient samples are drawn from when a relation
/// has to be judged numerically.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AmbientStage {
    /// Solutions of the full six-equation system in `u, v, w, x, y, z`,
    /// subject to its side conditions and residual thresholds.
    FullSystem,
    /// Solutions of the first-stage system `Q1 = Q2 = Q3 = 0` in
    /// `u, v, x, y` (the remaining coordinates are reported as zero).
    Derived,
}

impl AmbientStage {
    /// Draws up to `samples` solution points deterministically from `seed`.
    ///
    /// Fails with [`SamplingFailure`] when the attempt budget is exhausted
    /// without finding a single admissible solution; that failure is
    /// distinct from any relation verdict.
    pub fn sample_points(self, samples: usize, seed: u64) -> Result<Vec<[f64; 6]>, SamplingFailure> {
        match self {
            AmbientStage::FullSystem => {
                let outcome = solver::sample_solutions(samples, seed);
                if outcome.tuples.is_empty() {
                    Err(SamplingFailure::from_diagnostics(
                        "full-system",
                        &outcome.diagnostics,
                    ))
                } else {
                    Ok(outcome.tuples.iter().map(|t| t.as_array()).collect())
                }
            }
            AmbientStage::Derived => solver::derived_variety_samples(samples, seed),
        }
    }
}

/// Ambient sampling found no admissible solutions. Carries the search
/// diagnostics; deliberately not a [`RelationKind`], since an empty sample
/// set says nothing about consistency either way.
#[derive(Clone, Debug, Error)]
#[error("{stage} sampling found no admissible solutions: {detail}")]
pub struct SamplingFailure {
    pub stage: String,
    pub detail: String,
}

impl SamplingFailure {
    pub(crate) fn from_diagnostics(stage: &str, diag: &solver::SampleDiagnostics) -> SamplingFailure {
        SamplingFailure {
            stage: stage.to_string(),
            detail: diag.to_string(),
        }
    }
}

/// How a computed polynomial relates to a bundled reference claim, from
/// strongest to weakest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum RelationKind {
    /// Equal up to sign after content normalization.
    Exact,
    /// Equal up to a nonzero rational constant.
    ConstantMultiple,
    /// One divides the other exactly.
    DividesComputed,
    /// No symbolic relation, but both vanish (scaled residual at most
    /// `1e-9`) at every sampled ambient solution.
    SampleConsistent,
    /// Some sampled ambient solution of the system leaves a scaled residual
    /// above `1e-9` in one of the polynomials.
    Inconsistent,
}

impl std::fmt::Display for RelationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RelationKind::Exact => "EXACT",
            RelationKind::ConstantMultiple => "CONSTANT_MULTIPLE",
            RelationKind::DividesComputed => "DIVIDES_COMPUTED",
            RelationKind::SampleConsistent => "SAMPLE_CONSISTENT",
            RelationKind::Inconsistent => "INCONSISTENT",
        };
        write!(f, "{s}")
    }
}

/// Outcome of comparing a computed polynomial against a reference claim.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub kind: RelationKind,
    /// For [`RelationKind::ConstantMultiple`] (and [`RelationKind::Exact`],
    /// where it is `1` or `-1`): `computed = factor * claimed`.
    pub factor: Option<BigRational>,
    /// For [`RelationKind::DividesComputed`]: the exact quotient.
    pub quotient: Option<Poly>,
    /// Direction of the division: `true` means `computed = quotient *
    /// claimed`, `false` means `claimed = quotient * computed`.
    pub claimed_divides_computed: bool,
    /// Number of ambient samples used (zero when decided symbolically).
    pub samples_used: usize,
    /// Largest scaled residual of either polynomial over the samples.
    pub max_scaled_residual: Option<f64>,
}

impl RelationReport {
    fn symbolic(kind: RelationKind) -> RelationReport {
        RelationReport {
            kind,
            factor: None,
            quotient: None,
            claimed_divides_computed: false,
            samples_used: 0,
            max_scaled_residual: None,
        }
    }
}

impl std::fmt::Display for RelationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.kind)?;
        match self.kind {
            RelationKind::Exact => {
                if let Some(k) = &self.factor {
                    write!(f, " (computed = {k} * claimed)")?;
                }
            }
            RelationKind::ConstantMultiple => {
                if let Some(k) = &self.factor {
                    write!(f, " (computed = ({k}) * claimed)")?;
                }
            }
            RelationKind::DividesComputed => {
                if let Some(q) = &self.quotient {
                    if self.claimed_divides_computed {
                        write!(f, " (computed = ({q}) * claimed)")?;
                    } else {
                        write!(f, " (claimed = ({q}) * computed)")?;
                    }
                }
            }
            RelationKind::SampleConsistent | RelationKind::Inconsistent => {
                write!(
                    f,
                    " (max scaled residual {:.3e} over {} samples)",
                    self.max_scaled_residual.unwrap_or(f64::NAN),
                    self.samples_used
                )?;
            }
        }
        Ok(())
    }
}

/// Residual threshold of the sampled-consistency rung.
pub const SAMPLE_CONSISTENCY_TOLERANCE: f64 = 1e-9;

/// Classifies the relation between a computed polynomial and a bundled
/// reference claim at explicitly provided ambient sample points.
///
/// The ladder is tried in order: exact equality after content
/// normalization (covering sign flips), equality up to a rational constant,
/// exact division in either direction, then sampled consistency at the
/// given points. An empty `points` slice fails with [`SamplingFailure`]
/// when the symbolic rungs do not settle the comparison.
pub fn compare_at_points(
    computed: &Poly,
    claimed: &Poly,
    points: &[[f64; 6]],
) -> Result<RelationReport, SamplingFailure> {
    if computed.is_zero() && claimed.is_zero() {
        let mut rep = RelationReport::symbolic(RelationKind::Exact);
        rep.factor = Some(BigRational::one());
        return Ok(rep);
    }
    if !computed.is_zero() && !claimed.is_zero() {
        if computed.primitive_part() == claimed.primitive_part() {
            let factor = BigRational::new(computed.integer_content(), claimed.integer_content());
            let kind = if factor.numer().abs() == *factor.denom() {
                RelationKind::Exact
            } else {
                RelationKind::ConstantMultiple
            };
            let mut rep = RelationReport::symbolic(kind);
            rep.factor = Some(factor);
            return Ok(rep);
        }
        if let Ok(Some(q)) = computed.try_exact_div(claimed) {
            let mut rep = RelationReport::symbolic(RelationKind::DividesComputed);
            rep.quotient = Some(q);
            rep.claimed_divides_computed = true;
            return Ok(rep);
        }
        if let Ok(Some(q)) = claimed.try_exact_div(computed) {
            let mut rep = RelationReport::symbolic(RelationKind::DividesComputed);
            rep.quotient = Some(q);
            rep.claimed_divides_computed = false;
            return Ok(rep);
        }
    }
    if points.is_empty() {
        return Err(SamplingFailure {
            stage: "ambient".to_string(),
            detail: "no sample points available for the numeric rung".to_string(),
        });
    }
    let mut max_residual = 0.0f64;
    for point in points {
        let r = solver::scaled_residual(computed, point)
            .max(solver::scaled_residual(claimed, point));
        if r > max_residual {
            max_residual = r;
        }
    }
    let kind = if max_residual <= SAMPLE_CONSISTENCY_TOLERANCE {
        RelationKind::SampleConsistent
    } else {
        RelationKind::Inconsistent
    };
    Ok(RelationReport {
        kind,
        factor: None,
        quotient: None,
        claimed_divides_computed: false,
        samples_used: points.len(),
        max_scaled_residual: Some(max_residual),
    })
}

/// [`compare_at_points`] with ambient samples drawn internally: up to
/// `samples` deterministic solutions of the `stage` system seeded by
/// `seed`. Sampling runs only when the symbolic rungs fail to settle the
/// comparison.
pub fn compare_with_reference(
    computed: &Poly,
    claimed: &Poly,
    samples: usize,
    seed: u64,
    stage: AmbientStage,
) -> Result<RelationReport, SamplingFailure> {
    match compare_at_points(computed, claimed, &[]) {
        Ok(report) => Ok(report),
        Err(_) => {
            let points = stage.sample_points(samples, seed)?;
            compare_at_points(computed, claimed, &points)
        }
    }
}

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("final resultant is identically zero: common factor suspected")]
    ZeroResultant,
    #[error("the polynomial has no x^42*y^34 term")]
    MonomialAbsent,
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

/// Identifier of the determinant backend, part of the cache digest.
pub const BACKEND_ID: &str = eliminate::BACKEND_ID;

fn resultant_digest() -> String {
    let r = stage2_reference();
    let input = format!("{}\n{}\n{}", r[0].poly, r[1].poly, BACKEND_ID);
    cache::digest_hex(&input)
}

/// The resultant of the two reference resultants `R1` and `R2` with respect
/// to `u`, content-normalized. Its zero set in the `(x, y)` plane is the
/// parameter curve on which pentagon pairs with six equal chord functions
/// would have to live.
///
/// The computation takes a couple of seconds, so the result is cached in
/// `cache_dir` keyed by a digest of the inputs and the determinant backend;
/// a valid cache entry is loaded instead of recomputed, and a corrupt one
/// is silently recomputed and replaced. An identically zero resultant is a
/// hard error ([`SystemError::ZeroResultant`]).
pub fn final_resultant(cache_dir: &Path) -> Result<Poly, SystemError> {
    let digest = resultant_digest();
    if let Some(cached) = cache::load_resultant(cache_dir, &digest)? {
        return Ok(cached);
    }
    let r = stage2_reference();
    let res = eliminate::resultant(&r[0].poly, &r[1].poly, Var::U)?;
    if res.is_zero() {
        return Err(SystemError::ZeroResultant);
    }
    let normalized = res.primitive_part();
    cache::store_resultant(cache_dir, &digest, &normalized)?;
    Ok(normalized)
}

/// The claimed magnitude of the `x^42*y^34` coefficient of the final
/// resultant in the bundled derivation: `16^7`.
pub fn reference_leading_magnitude() -> BigInt {
    // 16^7
    BigInt::from(268_435_456u64)
}

/// What [`check_first_term`] reports about the final resultant.
#[derive(Clone, Debug)]
pub struct FirstTermReport {
    /// Coefficient of `x^42*y^34`.
    pub coefficient: BigInt,
    /// Whether `|coefficient|` equals the claimed `16^7`.
    pub matches_reference: bool,
    /// Leading term under pure lex with `x > y`.
    pub lead_lex_xy: (Mono, BigInt),
    /// Leading term under pure lex with `y > x`.
    pub lead_lex_yx: (Mono, BigInt),
    /// Leading term under graded lex with `x > y`.
    pub lead_grlex_xy: (Mono, BigInt),
}

/// Reports the `x^42*y^34` coefficient of a (content-normalized) final
/// resultant, whether its magnitude matches the claimed `16^7`, and the
/// polynomial's leading terms under three term orders. Errors when the
/// monomial is absent.
pub fn check_first_term(poly: &Poly) -> Result<FirstTermReport, SystemError> {
    let mut mono = Mono::ONE;
    mono.0[Var::X.index()] = 42;
    mono.0[Var::Y.index()] = 34;
    let coefficient = poly.coefficient(&mono);
    if coefficient.is_zero() {
        return Err(SystemError::MonomialAbsent);
    }
    let lex_xy = MonomialOrder::prioritizing(OrderKind::Lex, &[Var::X, Var::Y]);
    let lex_yx = MonomialOrder::prioritizing(OrderKind::Lex, &[Var::Y, Var::X]);
    let grlex_xy = MonomialOrder::prioritizing(OrderKind::GrLex, &[Var::X, Var::Y]);
    let lead = |order: &MonomialOrder| {
        poly.leading_term(order)
            .expect("nonzero polynomial has a leading term")
    };
    Ok(FirstTermReport {
        matches_reference: coefficient.abs() == reference_leading_magnitude(),
        coefficient,
        lead_lex_xy: lead(&lex_xy),
        lead_lex_yx: lead(&lex_yx),
        lead_grlex_xy: lead(&grlex_xy),
    })
}
