//! Floating-point layer: residual evaluation, real-root isolation, ambient
//! solution sampling, curve tracing, and back-solving parameter tuples from
//! curve points.
//!
//! Everything here is deterministic: random draws come from a seeded
//! counter-based generator, root isolation is bisection on a fixed
//! schedule, and grid scans emit cells in row-major order, so repeated runs
//! with the same inputs produce bit-identical output.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::eliminate;
use crate::poly::{big_to_f64, Mono, Poly, Var};
use crate::system::{self, SamplingFailure};

/// A candidate solution of the six-equation system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParameterTuple {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ParameterTuple {
    /// Coordinates in the fixed variable order `u, v, w, x, y, z`.
    pub fn as_array(&self) -> [f64; 6] {
        [self.u, self.v, self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 6]) -> ParameterTuple {
        ParameterTuple {
            u: a[0],
            v: a[1],
            w: a[2],
            x: a[3],
            y: a[4],
            z: a[5],
        }
    }
}

/// Raw measurements of a tuple against the six-equation system. Nothing is
/// discarded: residuals, side-condition margins, and range checks are all
/// reported and the caller decides what passes.
#[derive(Clone, Copy, Debug)]
pub struct ValidationReport {
    /// `|P(t)|` for the six equations, in system order.
    pub residuals: [f64; 6],
    /// `|s(t)|` for the nine side conditions, flattened in system order.
    pub side_margins: [f64; 9],
    /// Whether each coordinate lies strictly inside `(0, 1)`, in the order
    /// `u, v, w, x, y, z`.
    pub in_range: [bool; 6],
}

impl ValidationReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(*r))
    }

    pub fn min_side_margin(&self) -> f64 {
        self.side_margins.iter().fold(f64::INFINITY, |m, s| m.min(*s))
    }

    pub fn all_in_range(&self) -> bool {
        self.in_range.iter().all(|b| *b)
    }
}

/// Evaluates every equation and side condition of the six-equation system
/// at the tuple and reports the raw absolute values.
pub fn validate_tuple(tuple: &ParameterTuple) -> ValidationReport {
    let point = tuple.as_array();
    let sys = system::pentagon_system();
    let mut residuals = [0.0f64; 6];
    for (slot, eq) in residuals.iter_mut().zip(sys.iter()) {
        *slot = eq.poly.eval_float(&point).abs();
    }
    let margins: Vec<f64> = sys
        .iter()
        .flat_map(|eq| eq.nonvanishing.iter())
        .map(|s| s.eval_float(&point).abs())
        .collect();
    let side_margins: [f64; 9] = margins.try_into().expect("nine side conditions");
    let mut in_range = [false; 6];
    for (slot, c) in in_range.iter_mut().zip(point.iter()) {
        *slot = *c > 0.0 && *c < 1.0;
    }
    ValidationReport {
        residuals,
        side_margins,
        in_range,
    }
}

/// Residual of `p` at `point`, scaled by the polynomial's coefficient mass
/// and the point's magnitude: `|p(point)| / (1 + l1(p) * max(1, |point|)^deg)`.
/// Dimensionless, comparable across polynomials of different size.
pub fn scaled_residual(p: &Poly, point: &[f64; 6]) -> f64 {
    let value = p.eval_float(point).abs();
    let deg = p.total_degree().unwrap_or(0);
    let norm = point.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    value / (1.0 + p.coefficient_l1() * norm.powi(deg as i32))
}

// ---------------------------------------------------------------------------
// Conversion of huge integer coefficients to workable floats.

/// Common binary shift that maps the largest magnitude in the set near
/// `2^512`, keeping every shifted value comfortably inside `f64` range.
fn joint_shift<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> u64 {
    let max_bits = coeffs.map(|c| c.bits()).max().unwrap_or(0);
    max_bits.saturating_sub(512)
}

/// `n / 2^shift` as `f64`. Values whose leading bits sit more than about
/// 900 bits up are reduced through their top 64 bits first so the
/// conversion itself never overflows; values far below the shift underflow
/// to zero, which is the correct relative outcome.
fn shifted_to_f64(n: &BigInt, shift: u64) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let bits = n.bits();
    if bits <= 900 {
        big_to_f64(n) * 2.0f64.powi(-(shift as i32))
    } else {
        let drop = bits - 64;
        let top = n >> usize::try_from(drop).expect("bit count fits usize");
        big_to_f64(&top) * 2.0f64.powi((drop as i64 - shift as i64) as i32)
    }
}

/// Scales a coefficient slice so its largest magnitude is 1. Returns
/// `false` (leaving the slice untouched) when that is impossible: all
/// zeros, or a non-finite entry.
fn normalize_unit(coeffs: &mut [f64]) -> bool {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 || !max.is_finite() {
        return false;
    }
    for c in coeffs.iter_mut() {
        *c /= max;
    }
    true
}

// ---------------------------------------------------------------------------
// Real-root isolation.

/// Half-width of the interval searched for `u`- and `y`-roots of slice
/// polynomials. Large enough to dwarf every coordinate the construction can
/// produce while keeping root isolation well scaled.
pub const ROOT_SEARCH_BOUND: f64 = 64.0;

fn eval_desc(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * t + c)
}

/// `sum |c_i| |t|^(d-i)`: a bound on the evaluation magnitude at `t`, used
/// to decide when a value is indistinguishable from zero at that point.
fn local_scale(coeffs: &[f64], t: f64) -> f64 {
    let a = t.abs();
    coeffs.iter().fold(0.0, |acc, c| acc * a + c.abs())
}

fn local_zero_eps(coeffs: &[f64], t: f64) -> f64 {
    1e-12 * (1.0 + local_scale(coeffs, t))
}

fn bisect(coeffs: &[f64], mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        if b - a <= 1e-14 {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval_desc(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Real roots of the polynomial with the given coefficients (descending
/// powers) on `[lo, hi]`, in increasing order.
///
/// The interval is split at the roots of the derivative (computed
/// recursively), so the polynomial is strictly monotonic between
/// breakpoints and every sign change brackets exactly one root, which
/// bisection pins to a width of `1e-14`. A breakpoint where the value is
/// below the local evaluation-noise bound is itself reported as a root,
/// which is what catches roots of even multiplicity. Reports closer than
/// `1e-11` are collapsed to one root. Accuracy is about `1e-12` for
/// well-conditioned roots; a zero or constant polynomial yields no roots.
pub fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi || coeffs.iter().any(|c| !c.is_finite()) {
        return Vec::new();
    }
    let Some(first) = coeffs.iter().position(|c| *c != 0.0) else {
        return Vec::new();
    };
    let c = &coeffs[first..];
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        let r = -c[1] / c[0];
        return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
    }
    let deriv: Vec<f64> = (0..d).map(|i| c[i] * (d - i) as f64).collect();
    let mut breaks = vec![lo];
    for t in real_roots(&deriv, lo, hi) {
        if t > lo && t < hi {
            breaks.push(t);
        }
    }
    breaks.push(hi);
    let vals: Vec<f64> = breaks.iter().map(|t| eval_desc(c, *t)).collect();
    let mut roots = Vec::new();
    for (t, v) in breaks.iter().zip(&vals) {
        if v.abs() <= local_zero_eps(c, *t) {
            roots.push(*t);
        }
    }
    for i in 0..breaks.len() - 1 {
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fa.abs() <= local_zero_eps(c, breaks[i]) || fb.abs() <= local_zero_eps(c, breaks[i + 1])
        {
            continue;
        }
        if (fa > 0.0) == (fb > 0.0) {
            continue;
        }
        roots.push(bisect(c, breaks[i], breaks[i + 1], fa));
    }
    roots.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last() {
            Some(last) if r - last <= 1e-11 => {}
            _ => out.push(r),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Bivariate slices in (u, y) with oversized integer coefficients.

/// A polynomial in `u` and `y` only, with coefficients shifted to floats by
/// a common power of two so slice evaluation stays inside `f64` range.
struct BiSlice {
    /// `ucols[k][j]` is the (shifted) coefficient of `u^k y^j`.
    ucols: Vec<Vec<f64>>,
}

impl BiSlice {
    fn new(p: &Poly) -> Option<BiSlice> {
        if p.is_zero() {
            return None;
        }
        let cols: Vec<Vec<BigInt>> = p
            .coefficients_in(Var::U)
            .iter()
            .map(|col| {
                col.coefficients_in(Var::Y)
                    .iter()
                    .map(|c| c.coefficient(&Mono::ONE))
                    .collect()
            })
            .collect();
        let shift = joint_shift(cols.iter().flatten());
        let ucols = cols
            .iter()
            .map(|col| col.iter().map(|c| shifted_to_f64(c, shift)).collect())
            .collect();
        Some(BiSlice { ucols })
    }

    /// Ascending `u`-coefficients at the given `y`.
    fn ucoeffs_at(&self, y: f64) -> Vec<f64> {
        self.ucols
            .iter()
            .map(|col| col.iter().rev().fold(0.0, |acc, c| acc * y + c))
            .collect()
    }

    /// Scaled residual of the slice at `(u, y)`.
    fn residual_at(&self, u: f64, y: f64) -> f64 {
        let cs = self.ucoeffs_at(y);
        let value = cs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c)
            .abs();
        let m = u.abs().max(1.0);
        let scale = cs
            .iter()
            .fold((1.0, 1.0), |(acc, pw), c| (acc + c.abs() * pw, pw * m))
            .0;
        value / scale
    }
}

/// Extracts the ascending integer coefficient sequence of a univariate
/// polynomial in `var`, stripped of the leading block of zero coefficients
/// (a root at zero of known multiplicity carries no sample information).
/// Returns `None` when nothing nonzero remains or only a constant does.
fn stripped_coeffs(p: &Poly, var: Var) -> Option<Vec<BigInt>> {
    let coeffs: Vec<BigInt> = p
        .coefficients_in(var)
        .iter()
        .map(|c| c.coefficient(&Mono::ONE))
        .collect();
    let first = coeffs.iter().position(|c| !c.is_zero())?;
    if coeffs.len() - first <= 1 {
        return None;
    }
    Some(coeffs[first..].to_vec())
}

// ---------------------------------------------------------------------------
// Ambient sampling.

/// Raw residual bound for accepting a tuple as a solution of the full
/// six-equation system.
pub const SAMPLE_RESIDUAL_BOUND: f64 = 1e-10;
/// Minimum side-condition margin for accepting a tuple.
pub const SIDE_MARGIN_BOUND: f64 = 1e-6;
/// Scaled residual bound for accepting a point of the derived system
/// `Q1 = Q2 = Q3 = 0`.
pub const DERIVED_RESIDUAL_BOUND: f64 = 1e-10;
/// Scaled residual bound for keeping a root of one slice when checked
/// against the companion slice.
pub const CROSS_FILTER_TOLERANCE: f64 = 1e-8;
/// Below this magnitude the substitution pivot `w = x - u` is treated as
/// vanishing.
pub const PIVOT_TOLERANCE: f64 = 1e-12;
/// Below this scaled magnitude the linear `v`-coefficient of `Q1` is
/// treated as vanishing.
pub const LINEAR_GUARD: f64 = 1e-6;

const DERIVED_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;
const X_DENOMINATOR_LOG2: u32 = 20;

/// Search counters, reported whether or not sampling succeeds.
#[derive(Clone, Copy, Debug, Default)]
pub struct SampleDiagnostics {
    /// Slices of the parameter space drawn.
    pub attempts: usize,
    /// Slices discarded whole (degenerate resultant or no usable roots).
    pub slice_failures: usize,
    /// Root pairs examined as candidate solutions.
    pub candidate_roots: usize,
    /// Candidates rejected by a residual bound.
    pub rejected_residual: usize,
    /// Candidates rejected by side-condition margins or the unit range.
    pub rejected_margin: usize,
    /// Candidates skipped because the linear `v`-coefficient vanished.
    pub skipped_linear: usize,
    /// Candidates skipped because the pivot `w = x - u` vanished.
    pub skipped_pivot: usize,
}

impl std::fmt::Display for SampleDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "attempts: {}, slice failures: {}, candidate roots: {}, \
             rejected by residual: {}, rejected by side conditions: {}, \
             skipped (vanishing linear coefficient): {}, skipped (vanishing pivot): {}",
            self.attempts,
            self.slice_failures,
            self.candidate_roots,
            self.rejected_residual,
            self.rejected_margin,
            self.skipped_linear,
            self.skipped_pivot
        )
    }
}

/// Result of a sampling run: whatever tuples were found (possibly none)
/// plus the search counters.
#[derive(Clone, Debug)]
pub struct SampleOutcome {
    pub tuples: Vec<ParameterTuple>,
    pub diagnostics: SampleDiagnostics,
}

fn attempt_budget(n: usize) -> usize {
    25 * n + 50
}

/// Draws a slice position `x = k / 2^20` with `k` uniform in
/// `1..2^20`, returning the exact numerator and the float value.
fn draw_x(rng: &mut ChaCha8Rng) -> (BigInt, f64) {
    let k: u32 = rng.gen_range(1..(1u32 << X_DENOMINATOR_LOG2));
    (
        BigInt::from(k),
        f64::from(k) / f64::from(1u32 << X_DENOMINATOR_LOG2),
    )
}

/// Candidate `(u, y)` pairs on the slice `x = x0` of the pair of surfaces
/// given by `filter` and `source` (both polynomials in `u` and `y`):
/// `y`-values come from the roots of the resultant of the pair with respect
/// to `u`, `u`-values from the `source` slice at each `y`, and each pair is
/// kept only when the `filter` slice residual stays within
/// [`CROSS_FILTER_TOLERANCE`].
fn slice_candidates(
    filter: &Poly,
    source: &Poly,
    diag: &mut SampleDiagnostics,
) -> Vec<(f64, f64)> {
    let res_y = match eliminate::resultant(filter, source, Var::U) {
        Ok(p) => p,
        Err(_) => {
            diag.slice_failures += 1;
            return Vec::new();
        }
    };
    let Some(ycoeffs) = stripped_coeffs(&res_y, Var::Y) else {
        diag.slice_failures += 1;
        return Vec::new();
    };
    let shift = joint_shift(ycoeffs.iter());
    let mut desc: Vec<f64> = ycoeffs
        .iter()
        .rev()
        .map(|c| shifted_to_f64(c, shift))
        .collect();
    if !normalize_unit(&mut desc) {
        diag.slice_failures += 1;
        return Vec::new();
    }
    let yroots = real_roots(&desc, -ROOT_SEARCH_BOUND, ROOT_SEARCH_BOUND);
    let (Some(filter_slice), Some(source_slice)) = (BiSlice::new(filter), BiSlice::new(source))
    else {
        diag.slice_failures += 1;
        return Vec::new();
    };
    let mut out = Vec::new();
    for y0 in yroots {
        // The y = 0 line is a fixed artifact of resultants of slices and
        // never meets the admissible open box; skip it.
        if y0.abs() <= 1e-9 {
            continue;
        }
        let mut ucoeffs = source_slice.ucoeffs_at(y0);
        ucoeffs.reverse();
        if !normalize_unit(&mut ucoeffs) {
            continue;
        }
        for u0 in real_roots(&ucoeffs, -ROOT_SEARCH_BOUND, ROOT_SEARCH_BOUND) {
            diag.candidate_roots += 1;
            if filter_slice.residual_at(u0, y0) > CROSS_FILTER_TOLERANCE {
                diag.rejected_residual += 1;
                continue;
            }
            out.push((u0, y0));
        }
    }
    out
}

/// Solves `v` out of `Q1` at the partial point, returning `None` (and
/// counting it) when the linear coefficient effectively vanishes.
fn v_from_q1(point: &[f64; 6], diag: &mut SampleDiagnostics) -> Option<f64> {
    let sol = system::v_solution();
    if scaled_residual(sol.a(), point) <= LINEAR_GUARD {
        diag.skipped_linear += 1;
        return None;
    }
    let a = sol.a().eval_float(point);
    let b = sol.b().eval_float(point);
    Some(-b / a)
}

/// Searches for solutions of the full six-equation system: residuals within
/// [`SAMPLE_RESIDUAL_BOUND`], side-condition margins at least
/// [`SIDE_MARGIN_BOUND`], and every coordinate strictly inside `(0, 1)`.
///
/// The search is slice-based: it draws `x = k/2^20`, eliminates down the
/// reference chain on that slice, lifts candidate `(u, y)` roots to full
/// tuples through `Q1` and the pivot relations, and validates each
/// candidate against the original system. The run is deterministic in
/// `seed` and stops after `n` tuples or a fixed attempt budget. An empty
/// result is not an error here; callers that need samples treat it as a
/// sampling failure, and the diagnostics say how the search died.
pub fn sample_solutions(n: usize, seed: u64) -> SampleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stage2 = system::stage2_reference();
    let (r1, r2) = (&stage2[0].poly, &stage2[1].poly);
    let den = BigInt::from(1u64 << X_DENOMINATOR_LOG2);
    let mut diag = SampleDiagnostics::default();
    let mut tuples = Vec::new();
    while tuples.len() < n && diag.attempts < attempt_budget(n) {
        diag.attempts += 1;
        let (k, x0) = draw_x(&mut rng);
        let s1 = r1.substitute_rational(Var::X, &k, &den);
        let s2 = r2.substitute_rational(Var::X, &k, &den);
        for (u0, y0) in slice_candidates(&s1, &s2, &mut diag) {
            let partial = [u0, 0.0, 0.0, x0, y0, 0.0];
            let Some(v0) = v_from_q1(&partial, &mut diag) else {
                continue;
            };
            let w0 = x0 - u0;
            if w0.abs() <= PIVOT_TOLERANCE {
                diag.skipped_pivot += 1;
                continue;
            }
            let z0 = (y0 * u0 + v0 * w0) / w0;
            let tuple = ParameterTuple {
                u: u0,
                v: v0,
                w: w0,
                x: x0,
                y: y0,
                z: z0,
            };
            let report = validate_tuple(&tuple);
            if report.max_residual() > SAMPLE_RESIDUAL_BOUND {
                diag.rejected_residual += 1;
            } else if report.min_side_margin() < SIDE_MARGIN_BOUND || !report.all_in_range() {
                diag.rejected_margin += 1;
            } else {
                tuples.push(tuple);
                if tuples.len() == n {
                    break;
                }
            }
        }
    }
    SampleOutcome {
        tuples,
        diagnostics: diag,
    }
}

/// Samples points of the derived system `Q1 = Q2 = Q3 = 0` in the
/// variables `u, v, x, y` (the `w` and `z` coordinates of the returned
/// points are zero and unused by any polynomial of that stage).
///
/// Acceptance is by scaled residual of all three polynomials within
/// [`DERIVED_RESIDUAL_BOUND`]. Deterministic in `seed`; draws from a
/// stream offset from the full-system sampler so the two stages explore
/// different slices under the same seed.
pub fn derived_variety_samples(n: usize, seed: u64) -> Result<Vec<[f64; 6]>, SamplingFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(DERIVED_SEED_OFFSET));
    let [s12, s13] = system::eliminate_v();
    let stage1 = system::stage1_reference();
    let den = BigInt::from(1u64 << X_DENOMINATOR_LOG2);
    let mut diag = SampleDiagnostics::default();
    let mut points: Vec<[f64; 6]> = Vec::new();
    while points.len() < n && diag.attempts < attempt_budget(n) {
        diag.attempts += 1;
        let (k, x0) = draw_x(&mut rng);
        let t12 = s12.substitute_rational(Var::X, &k, &den);
        let t13 = s13.substitute_rational(Var::X, &k, &den);
        for (u0, y0) in slice_candidates(&t12, &t13, &mut diag) {
            let partial = [u0, 0.0, 0.0, x0, y0, 0.0];
            let Some(v0) = v_from_q1(&partial, &mut diag) else {
                continue;
            };
            let point = [u0, v0, 0.0, x0, y0, 0.0];
            let worst = stage1
                .iter()
                .map(|eq| scaled_residual(&eq.poly, &point))
                .fold(0.0f64, f64::max);
            if worst > DERIVED_RESIDUAL_BOUND {
                diag.rejected_residual += 1;
                continue;
            }
            points.push(point);
            if points.len() == n {
                break;
            }
        }
    }
    if points.is_empty() {
        Err(SamplingFailure::from_diagnostics("derived-system", &diag))
    } else {
        Ok(points)
    }
}

// ---------------------------------------------------------------------------
// Curve tracing.

/// One emitted point of a traced zero curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    /// Scaled residual of the curve polynomial at the point.
    pub residual: f64,
}

/// Traces the zero set of a polynomial in `x` and `y` over the rectangle
/// `domain = [x0, x1, y0, y1]` with a `grid x grid` cell scan.
///
/// Lattice values are classified by sign with zero counted as positive;
/// each cell contributes the midpoints of its sign-change segments, with
/// the two saddle configurations resolved the same fixed way every time,
/// so the output is a deterministic function of the inputs. Cells are
/// scanned row-major (increasing `y` outer, increasing `x` inner).
///
/// Panics when the polynomial involves variables other than `x` and `y`,
/// when `grid` is zero, or when the domain is empty.
pub fn trace_curve(p: &Poly, grid: usize, domain: [f64; 4]) -> Vec<CurvePoint> {
    assert!(grid >= 1, "grid must be at least 1");
    let [x0, x1, y0, y1] = domain;
    assert!(x1 > x0 && y1 > y0, "domain must be nonempty");
    for var in [Var::U, Var::V, Var::W, Var::Z] {
        assert!(
            p.degree_in(var).unwrap_or(0) == 0,
            "trace_curve expects a polynomial in x and y only"
        );
    }

    struct Term {
        xexp: usize,
        yexp: usize,
        coeff: f64,
    }
    let shift = joint_shift(p.terms().map(|(_, c)| c));
    let terms: Vec<Term> = p
        .terms()
        .map(|(m, c)| Term {
            xexp: usize::from(m.exponent(Var::X)),
            yexp: usize::from(m.exponent(Var::Y)),
            coeff: shifted_to_f64(c, shift),
        })
        .collect();
    let max_xexp = terms.iter().map(|t| t.xexp).max().unwrap_or(0);
    let max_yexp = terms.iter().map(|t| t.yexp).max().unwrap_or(0);

    let nodes = grid + 1;
    let xs: Vec<f64> = (0..nodes)
        .map(|i| x0 + (x1 - x0) * i as f64 / grid as f64)
        .collect();
    let ys: Vec<f64> = (0..nodes)
        .map(|j| y0 + (y1 - y0) * j as f64 / grid as f64)
        .collect();
    let mut xpow = vec![vec![1.0f64; nodes]; max_xexp + 1];
    for a in 1..=max_xexp {
        for i in 0..nodes {
            xpow[a][i] = xpow[a - 1][i] * xs[i];
        }
    }
    // values[j][i] = p(xs[i], ys[j]); rows computed in parallel, collected
    // in order so downstream output stays deterministic.
    let values: Vec<Vec<f64>> = (0..nodes)
        .into_par_iter()
        .map(|j| {
            let mut yp = vec![1.0f64; max_yexp + 1];
            for b in 1..=max_yexp {
                yp[b] = yp[b - 1] * ys[j];
            }
            let mut row = vec![0.0f64; nodes];
            for t in &terms {
                let cb = t.coeff * yp[t.yexp];
                let xrow = &xpow[t.xexp];
                for (slot, xv) in row.iter_mut().zip(xrow.iter()) {
                    *slot += cb * xv;
                }
            }
            row
        })
        .collect();

    // Segment table: crossed edge pairs per corner-class nibble. Edges are
    // E0 bottom, E1 right, E2 top, E3 left; bit k set means corner k is in
    // the nonnegative class (corners counterclockwise from lower-left).
    const SEGMENTS: [&[(u8, u8)]; 16] = [
        &[],
        &[(3, 0)],
        &[(0, 1)],
        &[(3, 1)],
        &[(1, 2)],
        &[(3, 0), (1, 2)],
        &[(0, 2)],
        &[(3, 2)],
        &[(2, 3)],
        &[(0, 2)],
        &[(0, 1), (2, 3)],
        &[(1, 2)],
        &[(1, 3)],
        &[(0, 1)],
        &[(3, 0)],
        &[],
    ];

    let mut out = Vec::new();
    for jy in 0..grid {
        for ix in 0..grid {
            let v0 = values[jy][ix];
            let v1 = values[jy][ix + 1];
            let v2 = values[jy + 1][ix + 1];
            let v3 = values[jy + 1][ix];
            let nibble = usize::from(v0 >= 0.0)
                | usize::from(v1 >= 0.0) << 1
                | usize::from(v2 >= 0.0) << 2
                | usize::from(v3 >= 0.0) << 3;
            if SEGMENTS[nibble].is_empty() {
                continue;
            }
            let edge_point = |edge: u8| -> (f64, f64) {
                match edge {
                    0 => {
                        let t = v0 / (v0 - v1);
                        (xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[jy])
                    }
                    1 => {
                        let t = v1 / (v1 - v2);
                        (xs[ix + 1], ys[jy] + t * (ys[jy + 1] - ys[jy]))
                    }
                    2 => {
                        let t = v3 / (v3 - v2);
                        (xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[jy + 1])
                    }
                    _ => {
                        let t = v0 / (v0 - v3);
                        (xs[ix], ys[jy] + t * (ys[jy + 1] - ys[jy]))
                    }
                }
            };
            for &(ea, eb) in SEGMENTS[nibble] {
                let (ax, ay) = edge_point(ea);
                let (bx, by) = edge_point(eb);
                let (mx, my) = (0.5 * (ax + bx), 0.5 * (ay + by));
                let residual = scaled_residual(p, &[0.0, 0.0, 0.0, mx, my, 0.0]);
                out.push(CurvePoint {
                    x: mx,
                    y: my,
                    residual,
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Back-solving curve points to parameter tuples.

/// Why a candidate root could not be lifted to a full tuple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SkipReason {
    /// The linear `v`-coefficient of `Q1` vanished at the root.
    LinearCoefficientVanishes { u: f64 },
    /// The substitution pivot `w = x - u` vanished at the root.
    PivotVanishes { u: f64 },
}

impl std::fmt::Display for SkipReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SkipReason::LinearCoefficientVanishes { u } => {
                write!(f, "vanishing linear v-coefficient at u = {u:.16e}")
            }
            SkipReason::PivotVanishes { u } => {
                write!(f, "vanishing pivot w = x - u at u = {u:.16e}")
            }
        }
    }
}

/// Everything [`back_solve`] found at one curve point. Tuples come with
/// their full validation reports; nothing is filtered by side conditions.
#[derive(Clone, Debug, Default)]
pub struct BackSolveOutcome {
    pub tuples: Vec<(ParameterTuple, ValidationReport)>,
    /// Roots that could not be lifted, with the reason.
    pub skipped: Vec<SkipReason>,
    /// Roots of the second reference resultant dropped because the first
    /// one left a scaled residual above the tolerance.
    pub filtered_roots: usize,
}

/// Reconstructs candidate parameter tuples over a point `(x, y)`:
/// `u`-roots of the second reference resultant's slice are kept when the
/// first resultant's scaled residual stays within `tol`, then `v`, `w`, `z`
/// are lifted through `Q1` and the pivot relations. Every lifted tuple is
/// returned together with its validation report; side conditions are
/// reported, not enforced.
pub fn back_solve(x: f64, y: f64, tol: f64) -> BackSolveOutcome {
    let stage2 = system::stage2_reference();
    let (r1, r2) = (&stage2[0].poly, &stage2[1].poly);
    let base = [0.0, 0.0, 0.0, x, y, 0.0];
    let mut desc: Vec<f64> = r2
        .coefficients_in(Var::U)
        .iter()
        .rev()
        .map(|c| c.eval_float(&base))
        .collect();
    let mut outcome = BackSolveOutcome::default();
    if !normalize_unit(&mut desc) {
        return outcome;
    }
    for u0 in real_roots(&desc, -ROOT_SEARCH_BOUND, ROOT_SEARCH_BOUND) {
        let partial = [u0, 0.0, 0.0, x, y, 0.0];
        if scaled_residual(r1, &partial) > tol {
            outcome.filtered_roots += 1;
            continue;
        }
        let sol = system::v_solution();
        if scaled_residual(sol.a(), &partial) <= LINEAR_GUARD {
            outcome.skipped.push(SkipReason::LinearCoefficientVanishes { u: u0 });
            continue;
        }
        let v0 = -sol.b().eval_float(&partial) / sol.a().eval_float(&partial);
        let w0 = x - u0;
        if w0.abs() <= PIVOT_TOLERANCE {
            outcome.skipped.push(SkipReason::PivotVanishes { u: u0 });
            continue;
        }
        let z0 = (y * u0 + v0 * w0) / w0;
        let tuple = ParameterTuple {
            u: u0,
            v: v0,
            w: w0,
            x,
            y,
            z: z0,
        };
        let report = validate_tuple(&tuple);
        outcome.tuples.push((tuple, report));
    }
    outcome
}
