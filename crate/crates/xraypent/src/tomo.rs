//! Exact discrete tomography of convex polygons: chord functions, Steiner
//! symmetrals, and construction of non-congruent triangle pairs with equal
//! chord functions in two directions.
//!
//! Everything is computed over arbitrary-precision rationals, so equality
//! of chord functions, areas, and symmetrals is decided exactly, never by
//! tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Exact rational scalar used throughout this module.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TomoError {
    #[error("a polygon needs at least three vertices")]
    TooFewVertices,
    #[error("consecutive vertices coincide")]
    DuplicateVertex,
    #[error("three consecutive vertices are collinear")]
    CollinearVertices,
    #[error("vertices are not in strictly convex position")]
    NotConvex,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("a chord function needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoints must be strictly increasing")]
    UnsortedBreakpoints,
    #[error("breakpoint and value counts differ")]
    LengthMismatch,
    #[error("chord values must be nonnegative")]
    NegativeValue,
    #[error("no ambiguous triangle pair found within the iteration bound")]
    SearchFailed,
}

fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn cross(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn sub(a: &[Rat; 2], b: &[Rat; 2]) -> [Rat; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

/// Quadrant index of a nonzero vector, splitting the circle at the four
/// half-axes so exact angle comparison reduces to (quadrant, cross sign).
fn quadrant(v: &[Rat; 2]) -> u8 {
    if v[0].is_positive() && !v[1].is_negative() {
        0
    } else if !v[0].is_positive() && v[1].is_positive() {
        1
    } else if v[0].is_negative() && !v[1].is_positive() {
        2
    } else {
        3
    }
}

/// A strictly convex polygon with rational vertices, stored
/// counterclockwise starting from the lexicographically smallest vertex.
/// Either input orientation is accepted; the stored form is canonical, so
/// derived equality is equality of vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<[Rat; 2]>,
}

impl ConvexPolygon {
    /// Validates and canonicalizes a vertex cycle. Rejects repeated or
    /// collinear consecutive vertices, reflex turns, and self-intersecting
    /// (multiply winding) cycles.
    pub fn new(vertices: Vec<[Rat; 2]>) -> Result<ConvexPolygon, TomoError> {
        if vertices.len() < 3 {
            return Err(TomoError::TooFewVertices);
        }
        let mut verts = vertices;
        let signum = Self::turn_signum(&verts)?;
        if signum < 0 {
            verts.reverse();
        }
        // With all turns strictly counterclockwise, the edge directions
        // advance monotonically; a simple convex cycle wraps around the
        // angle origin exactly once, a star polygon more often.
        let n = verts.len();
        let edges: Vec<[Rat; 2]> = (0..n).map(|i| sub(&verts[(i + 1) % n], &verts[i])).collect();
        let mut wraps = 0;
        for i in 0..n {
            let a = &edges[i];
            let b = &edges[(i + 1) % n];
            let (qa, qb) = (quadrant(a), quadrant(b));
            let advanced = qa < qb || (qa == qb && cross(a, b).is_positive());
            if !advanced {
                wraps += 1;
            }
        }
        if wraps != 1 {
            return Err(TomoError::NotConvex);
        }
        let start = (0..n)
            .min_by(|&i, &j| verts[i].cmp(&verts[j]))
            .expect("nonempty");
        verts.rotate_left(start);
        Ok(ConvexPolygon { vertices: verts })
    }

    /// Sign of every turn, or the error that rules the cycle out.
    fn turn_signum(verts: &[[Rat; 2]]) -> Result<i8, TomoError> {
        let n = verts.len();
        let mut signum = 0i8;
        for i in 0..n {
            let e1 = sub(&verts[(i + 1) % n], &verts[i]);
            if e1[0].is_zero() && e1[1].is_zero() {
                return Err(TomoError::DuplicateVertex);
            }
            let e2 = sub(&verts[(i + 2) % n], &verts[(i + 1) % n]);
            let c = cross(&e1, &e2);
            let s = if c.is_positive() {
                1
            } else if c.is_negative() {
                -1
            } else {
                return Err(TomoError::CollinearVertices);
            };
            if signum == 0 {
                signum = s;
            } else if signum != s {
                return Err(TomoError::NotConvex);
            }
        }
        Ok(signum)
    }

    /// Counterclockwise vertices, starting from the lexicographically
    /// smallest.
    pub fn vertices(&self) -> &[[Rat; 2]] {
        &self.vertices
    }

    /// Exact (positive) area by the shoelace formula.
    pub fn area(&self) -> Rat {
        let n = self.vertices.len();
        let twice: Rat = (0..n)
            .map(|i| cross(&self.vertices[i], &self.vertices[(i + 1) % n]))
            .sum();
        twice / rat_int(2)
    }

    /// Squared edge lengths in ascending order: a congruence invariant
    /// (two triangles are congruent exactly when these multisets agree).
    pub fn squared_side_lengths(&self) -> Vec<Rat> {
        let n = self.vertices.len();
        let mut sides: Vec<Rat> = (0..n)
            .map(|i| {
                let e = sub(&self.vertices[(i + 1) % n], &self.vertices[i]);
                dot(&e, &e)
            })
            .collect();
        sides.sort();
        sides
    }

    /// The chord function in direction `dir`: chord extent as a function of
    /// the coordinate across the direction.
    ///
    /// With `n = (-dir.y, dir.x)`, a point decomposes as
    /// `P = s*dir + t*n` where `t = (P.n)/(n.n)` and `s = (P.dir)/(dir.dir)`;
    /// the chord function maps `t` to the length of the `s`-interval cut
    /// from the polygon, which is piecewise linear with breakpoints at the
    /// vertex projections.
    pub fn chord_function(&self, dir: &[Rat; 2]) -> Result<ChordFunction, TomoError> {
        if dir[0].is_zero() && dir[1].is_zero() {
            return Err(TomoError::ZeroDirection);
        }
        let dd = dot(dir, dir);
        let normal = [-dir[1].clone(), dir[0].clone()];
        let ts: Vec<Rat> = self.vertices.iter().map(|p| dot(p, &normal) / &dd).collect();
        let ss: Vec<Rat> = self.vertices.iter().map(|p| dot(p, dir) / &dd).collect();
        let mut breakpoints = ts.clone();
        breakpoints.sort();
        breakpoints.dedup();
        let n = self.vertices.len();
        let values: Vec<Rat> = breakpoints
            .iter()
            .map(|t0| {
                let mut smin: Option<Rat> = None;
                let mut smax: Option<Rat> = None;
                let mut consider = |s: Rat| {
                    if smin.as_ref().is_none_or(|m| s < *m) {
                        smin = Some(s.clone());
                    }
                    if smax.as_ref().is_none_or(|m| s > *m) {
                        smax = Some(s);
                    }
                };
                for i in 0..n {
                    let (ta, sa) = (&ts[i], &ss[i]);
                    let (tb, sb) = (&ts[(i + 1) % n], &ss[(i + 1) % n]);
                    let da = ta - t0;
                    let db = tb - t0;
                    if da.is_zero() && db.is_zero() {
                        // Edge parallel to the chord direction: both ends cut.
                        consider(sa.clone());
                        consider(sb.clone());
                    } else if !(&da * &db).is_positive() {
                        if da.is_zero() {
                            consider(sa.clone());
                        } else if db.is_zero() {
                            consider(sb.clone());
                        } else {
                            let lambda = &da / (&da - &db);
                            consider(sa + lambda * (sb - sa));
                        }
                    }
                }
                smax.expect("breakpoint meets the polygon") - smin.expect("nonempty")
            })
            .collect();
        ChordFunction::new(breakpoints, values)
    }

    /// The Steiner symmetral in direction `dir`: the convex polygon with
    /// the same chord function, every chord recentered on the axis
    /// `s = 0`. Exact, and area-preserving by construction.
    pub fn steiner_symmetral(&self, dir: &[Rat; 2]) -> Result<ConvexPolygon, TomoError> {
        let f = self.chord_function(dir)?;
        let bp = f.breakpoints();
        let vals = f.values();
        let last = bp.len() - 1;
        let half = |v: &Rat| v / rat_int(2);
        // Walk the outline counterclockwise in (s, t) coordinates: along
        // the bottom chord, up the right profile s = f(t)/2, back along the
        // top chord, down the left profile s = -f(t)/2. Zero-length end
        // chords contribute a single vertex.
        let mut st: Vec<(Rat, Rat)> = Vec::new();
        if vals[0].is_positive() {
            st.push((-half(&vals[0]), bp[0].clone()));
            st.push((half(&vals[0]), bp[0].clone()));
        } else {
            st.push((Rat::zero(), bp[0].clone()));
        }
        for i in 1..last {
            st.push((half(&vals[i]), bp[i].clone()));
        }
        if vals[last].is_positive() {
            st.push((half(&vals[last]), bp[last].clone()));
            st.push((-half(&vals[last]), bp[last].clone()));
        } else {
            st.push((Rat::zero(), bp[last].clone()));
        }
        for i in (1..last).rev() {
            st.push((-half(&vals[i]), bp[i].clone()));
        }
        let vertices = st
            .into_iter()
            .map(|(s, t)| {
                [
                    &s * &dir[0] - &t * &dir[1],
                    &s * &dir[1] + &t * &dir[0],
                ]
            })
            .collect();
        ConvexPolygon::new(vertices)
    }
}

/// A piecewise-linear chord profile: breakpoints with the chord extent at
/// each. Stored canonically (no removable interior breakpoints), so derived
/// equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordFunction {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

impl ChordFunction {
    /// Validates and canonicalizes: breakpoints strictly increasing, values
    /// nonnegative, matching lengths of at least two; interior breakpoints
    /// where the slope does not change are merged away.
    pub fn new(breakpoints: Vec<Rat>, values: Vec<Rat>) -> Result<ChordFunction, TomoError> {
        if breakpoints.len() != values.len() {
            return Err(TomoError::LengthMismatch);
        }
        if breakpoints.len() < 2 {
            return Err(TomoError::TooFewBreakpoints);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TomoError::UnsortedBreakpoints);
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(TomoError::NegativeValue);
        }
        let mut out_b = vec![breakpoints[0].clone()];
        let mut out_v = vec![values[0].clone()];
        for i in 1..breakpoints.len() - 1 {
            let prev_b = out_b.last().expect("nonempty");
            let prev_v = out_v.last().expect("nonempty");
            let s1 = (&values[i] - prev_v) / (&breakpoints[i] - prev_b);
            let s2 = (&values[i + 1] - &values[i]) / (&breakpoints[i + 1] - &breakpoints[i]);
            if s1 != s2 {
                out_b.push(breakpoints[i].clone());
                out_v.push(values[i].clone());
            }
        }
        out_b.push(breakpoints[breakpoints.len() - 1].clone());
        out_v.push(values[values.len() - 1].clone());
        Ok(ChordFunction {
            breakpoints: out_b,
            values: out_v,
        })
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Exact value at `t`; zero outside the support interval.
    pub fn evaluate(&self, t: &Rat) -> Rat {
        let n = self.breakpoints.len();
        if *t < self.breakpoints[0] || *t > self.breakpoints[n - 1] {
            return Rat::zero();
        }
        let i = match self.breakpoints.binary_search(t) {
            Ok(i) => return self.values[i].clone(),
            Err(i) => i - 1,
        };
        let lambda = (t - &self.breakpoints[i]) / (&self.breakpoints[i + 1] - &self.breakpoints[i]);
        &self.values[i] + lambda * (&self.values[i + 1] - &self.values[i])
    }

    /// Exact integral over the support (trapezoid rule is exact for a
    /// piecewise-linear function).
    pub fn integral(&self) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.breakpoints.len() - 1 {
            let width = &self.breakpoints[i + 1] - &self.breakpoints[i];
            acc += width * (&self.values[i] + &self.values[i + 1]) / rat_int(2);
        }
        acc
    }

    /// Whether the profile is concave over its support (successive slopes
    /// nonincreasing), as every convex body's chord function is.
    pub fn is_concave(&self) -> bool {
        let slopes: Vec<Rat> = (0..self.breakpoints.len() - 1)
            .map(|i| {
                (&self.values[i + 1] - &self.values[i])
                    / (&self.breakpoints[i + 1] - &self.breakpoints[i])
            })
            .collect();
        slopes.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Whether two polygons have identical chord functions in the given
/// direction. Exact.
pub fn chord_functions_equal(
    a: &ConvexPolygon,
    b: &ConvexPolygon,
    dir: &[Rat; 2],
) -> Result<bool, TomoError> {
    Ok(a.chord_function(dir)? == b.chord_function(dir)?)
}

/// A pair of non-congruent triangles with identical chord functions in two
/// directions, together with the parameters that generated it.
#[derive(Clone, Debug)]
pub struct AmbiguousTrianglePair {
    pub first: ConvexPolygon,
    pub second: ConvexPolygon,
    pub directions: [[Rat; 2]; 2],
    pub b: Rat,
    pub c: Rat,
}

/// Best rational approximation `p/q` of `x` with `0 < p/q < 1` and
/// denominator at most `max_den`.
fn best_rational_in_unit(x: f64, max_den: i64) -> Rat {
    let mut best: Option<(f64, Rat)> = None;
    for q in 2..=max_den {
        let p = (x * q as f64).round().clamp(1.0, (q - 1) as f64) as i64;
        let err = (x - p as f64 / q as f64).abs();
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, Rat::new(BigInt::from(p), BigInt::from(q))));
        }
    }
    best.expect("max_den at least 2").1
}

/// Searches for a pair of non-congruent triangles with equal chord
/// functions in the axis directions `(1, 0)` and `(0, 1)`.
///
/// The family searched is `T1 = (0,0), (b,c), (1,1)` against
/// `T2 = (b,0), (1,c), (0,1)`. Both share the projection breakpoints
/// `{0, c, 1}` and `{0, b, 1}`, so chord equality reduces to matching the
/// extents at the interior breakpoints, which balances exactly when
/// `b*(2 - c) = 1 + c`. The search draws `c` at random, solves the balance
/// numerically by bisection, snaps `c` to a small-denominator rational,
/// re-solves exactly, and accepts only after verifying chord equality in
/// both directions exactly and rejecting the one congruent configuration
/// (`c = 1/2`, where the balance forces `b = 1`). Deterministic in `seed`.
pub fn find_ambiguous_triangles(seed: u64) -> Result<AmbiguousTrianglePair, TomoError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = [
        [Rat::one(), Rat::zero()],
        [Rat::zero(), Rat::one()],
    ];
    for _ in 0..1000 {
        let c_float: f64 = rng.gen_range(0.05..0.95);
        // Chord extents at the interior breakpoint differ by
        // g(b) = (b - c) - (1 - b + b*c); bisect the sign change.
        let balance = |b: f64| (b - c_float) - (1.0 - b + b * c_float);
        let (mut lo, mut hi) = (0.0f64, 3.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if balance(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let b_float = 0.5 * (lo + hi);
        if balance(b_float).abs() > 1e-9 {
            // No usable numeric balance at this draw.
            continue;
        }
        let c = best_rational_in_unit(c_float, 64);
        // The balance is linear in b, so the exact root at the snapped c
        // is immediate.
        let b = (Rat::one() + &c) / (rat_int(2) - &c);
        let first = ConvexPolygon::new(vec![
            [Rat::zero(), Rat::zero()],
            [b.clone(), c.clone()],
            [Rat::one(), Rat::one()],
        ])?;
        let second = ConvexPolygon::new(vec![
            [b.clone(), Rat::zero()],
            [Rat::one(), c.clone()],
            [Rat::zero(), Rat::one()],
        ])?;
        if !(chord_functions_equal(&first, &second, &dirs[0])?
            && chord_functions_equal(&first, &second, &dirs[1])?)
        {
            continue;
        }
        if first.squared_side_lengths() == second.squared_side_lengths() {
            // The c = 1/2 configuration: the pair is congruent, hence not
            // ambiguous. Redraw.
            continue;
        }
        return Ok(AmbiguousTrianglePair {
            first,
            second,
            directions: dirs,
            b,
            c,
        });
    }
    Err(TomoError::SearchFailed)
}
