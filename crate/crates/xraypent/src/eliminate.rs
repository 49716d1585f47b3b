//! Resultant machinery: Sylvester matrices, exact determinants, and
//! substitution of linear solutions.
//!
//! Two determinant backends are provided. [`det_fraction_free`] is Bareiss
//! one-step fraction-free elimination directly over the polynomial ring;
//! [`det_interpolation`] evaluates the matrix at integer nodes, takes exact
//! integer determinants, and reconstructs the polynomial by exact Lagrange
//! interpolation, parallelized over nodes. Both are exact, and because
//! polynomials have one canonical representation their outputs are
//! bit-identical; [`det`] picks a backend by matrix shape.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{Mono, Poly, PolyError, Var};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ElimError {
    #[error("determinant of a non-square matrix")]
    NotSquare,
    #[error("resultant of the zero polynomial")]
    ZeroPolynomial,
    #[error("resultant in {0} of two polynomials of degree zero in {0}")]
    BothConstant(Var),
    #[error("linear solution for {0} has an identically zero leading coefficient")]
    DegenerateLinear(Var),
    #[error("linear solution coefficients may not involve the solved variable {0}")]
    SelfReferential(Var),
    #[error("polynomial is not linear in {0}")]
    NotLinear(Var),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A dense matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> PolyMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        PolyMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.cols + col]
    }

    fn to_grid(&self) -> Vec<Vec<Poly>> {
        self.entries
            .chunks(self.cols.max(1))
            .map(|row| row.to_vec())
            .collect()
    }
}

/// Sylvester matrix of `f` and `g` with respect to `var`.
///
/// With `m = deg_var f` and `n = deg_var g`, the matrix is `(m+n) x (m+n)`:
/// the first `n` rows hold the coefficients of `f` in descending powers of
/// `var`, each row shifted one column right from the previous, followed by
/// `m` such rows for `g`. Errors: either input zero, or both inputs of
/// degree zero in `var`.
pub fn sylvester(f: &Poly, g: &Poly, var: Var) -> Result<PolyMatrix, ElimError> {
    if f.is_zero() || g.is_zero() {
        return Err(ElimError::ZeroPolynomial);
    }
    let m = f.degree_in(var).expect("nonzero polynomial") as usize;
    let n = g.degree_in(var).expect("nonzero polynomial") as usize;
    if m == 0 && n == 0 {
        return Err(ElimError::BothConstant(var));
    }
    let mut fc = f.coefficients_in(var);
    let mut gc = g.coefficients_in(var);
    fc.reverse();
    gc.reverse();
    let size = m + n;
    let mut grid = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in fc.iter().enumerate() {
            grid[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in gc.iter().enumerate() {
            grid[n + i][i + j] = c.clone();
        }
    }
    Ok(PolyMatrix::from_rows(grid))
}

/// Exact determinant by Bareiss one-step fraction-free elimination over the
/// polynomial ring. Every division in the schedule is exact.
pub fn det_fraction_free(m: &PolyMatrix) -> Result<Poly, ElimError> {
    if !m.is_square() {
        return Err(ElimError::NotSquare);
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a = m.to_grid();
    let mut negated = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            a.swap(k, swap);
            negated = !negated;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &pivot) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .try_exact_div(&prev)?
                    .expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negated { -d } else { d })
}

/// Exact determinant by evaluation-interpolation.
///
/// Variables appearing in the matrix are eliminated one at a time: for each,
/// the matrix is specialized at `B+1` integer nodes `i - floor(B/2)`, where
/// the degree bound `B` sums each row's maximum entry degree; the recursive
/// determinants are then recombined by exact integer Lagrange interpolation
/// (scaling by the lcm of the node weights, so no rationals appear). Node
/// evaluations run in parallel; the result does not depend on scheduling.
pub fn det_interpolation(m: &PolyMatrix) -> Result<Poly, ElimError> {
    if !m.is_square() {
        return Err(ElimError::NotSquare);
    }
    if m.rows == 0 {
        return Ok(Poly::one());
    }
    let grid = m.to_grid();
    let vars: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|&v| grid.iter().flatten().any(|p| p.degree_in(v).unwrap_or(0) > 0))
        .collect();
    Ok(interp_rec(&grid, &vars))
}

fn interp_rec(a: &[Vec<Poly>], vars: &[Var]) -> Poly {
    let Some((&v, rest)) = vars.split_first() else {
        let ints: Vec<Vec<BigInt>> = a
            .iter()
            .map(|row| row.iter().map(|p| p.coefficient(&Mono::ONE)).collect())
            .collect();
        return Poly::constant_big(det_bareiss_int(ints));
    };
    let bound: u32 = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| p.degree_in(v).unwrap_or(0))
                .max()
                .unwrap_or(0)
        })
        .sum();
    let offset = (bound / 2) as i64;
    let nodes: Vec<i64> = (0..=bound as i64).map(|i| i - offset).collect();
    let one = BigInt::one();
    let vals: Vec<Poly> = nodes
        .par_iter()
        .map(|&t| {
            let tb = BigInt::from(t);
            let sub: Vec<Vec<Poly>> = a
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.substitute_rational(v, &tb, &one))
                        .collect()
                })
                .collect();
            interp_rec(&sub, rest)
        })
        .collect();
    lagrange(v, &nodes, &vals)
}

/// Integer determinant by Bareiss elimination. Consumes the matrix.
fn det_bareiss_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negated = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            negated = !negated;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &pivot - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    if negated {
        -d
    } else {
        d
    }
}

/// Exact Lagrange interpolation in `v` through `(nodes[i], vals[i])`.
///
/// Works entirely over the integers: with `w_i` the usual node weights and
/// `W = lcm_i |w_i|`, accumulates `sum_i (W/w_i) vals_i prod_{j != i}(v -
/// t_j)` and divides the final sum by `W`, which is exact.
fn lagrange(v: Var, nodes: &[i64], vals: &[Poly]) -> Poly {
    let n = nodes.len();
    if n == 1 {
        return vals[0].clone();
    }
    let weights: Vec<BigInt> = (0..n)
        .map(|i| {
            let mut w = BigInt::one();
            for j in 0..n {
                if j != i {
                    w *= BigInt::from(nodes[i] - nodes[j]);
                }
            }
            w
        })
        .collect();
    let mut lcm = BigInt::one();
    for w in &weights {
        lcm = lcm.lcm(&w.abs());
    }
    // full(v) = prod_j (v - t_j), ascending coefficients.
    let mut full = vec![BigInt::one()];
    for &t in nodes {
        let mut next = vec![BigInt::zero(); full.len() + 1];
        for (k, c) in full.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= BigInt::from(t) * c;
        }
        full = next;
    }
    let mut acc = Poly::zero();
    for i in 0..n {
        if vals[i].is_zero() {
            continue;
        }
        let scale = &lcm / &weights[i];
        let quotient = divide_by_linear(&full, nodes[i]);
        let scaled = vals[i].scale(&scale);
        for (k, c) in quotient.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let vk = Poly::monomial(Mono::of_var(v, k as u16), c.clone());
            acc += &(&scaled * &vk);
        }
    }
    acc.try_exact_div(&Poly::constant_big(lcm))
        .expect("nonzero divisor")
        .expect("interpolation scaling divides exactly")
}

/// Quotient of `f` (ascending coefficients) by `v - t`, given that `t` is a
/// root of `f`.
fn divide_by_linear(f: &[BigInt], t: i64) -> Vec<BigInt> {
    let n = f.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    q[n - 1] = f[n].clone();
    for k in (1..n).rev() {
        q[k - 1] = &f[k] + BigInt::from(t) * &q[k];
    }
    debug_assert!((&f[0] + BigInt::from(t) * &q[0]).is_zero());
    q
}

/// Identifies the determinant backend pair; callers that cache results
/// derived from [`det`] include it in their cache keys so a backend change
/// invalidates old entries.
pub const BACKEND_ID: &str = "bareiss+eval-interp-v1";

/// Exact determinant, choosing a backend by shape: fraction-free Bareiss for
/// small or constant matrices, evaluation-interpolation otherwise.
pub fn det(m: &PolyMatrix) -> Result<Poly, ElimError> {
    if !m.is_square() {
        return Err(ElimError::NotSquare);
    }
    let constant = m
        .entries
        .iter()
        .all(|p| p.total_degree().unwrap_or(0) == 0);
    if constant || m.rows <= 5 {
        det_fraction_free(m)
    } else {
        det_interpolation(m)
    }
}

/// Resultant of `f` and `g` with respect to `var`: the determinant of their
/// Sylvester matrix. A zero result signals a common factor.
pub fn resultant(f: &Poly, g: &Poly, var: Var) -> Result<Poly, ElimError> {
    det(&sylvester(f, g, var)?)
}

/// The solution of `a * var + b = 0` for `var`, i.e. `var = -b/a`, where
/// neither `a` nor `b` involves `var` and `a` is not identically zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSolution {
    var: Var,
    a: Poly,
    b: Poly,
}

impl LinearSolution {
    pub fn new(var: Var, a: Poly, b: Poly) -> Result<LinearSolution, ElimError> {
        if a.is_zero() {
            return Err(ElimError::DegenerateLinear(var));
        }
        if a.degree_in(var).unwrap_or(0) > 0 || b.degree_in(var).unwrap_or(0) > 0 {
            return Err(ElimError::SelfReferential(var));
        }
        Ok(LinearSolution { var, a, b })
    }

    /// Reads the solution off a polynomial of degree exactly 1 in `var`.
    pub fn from_linear(p: &Poly, var: Var) -> Result<LinearSolution, ElimError> {
        if p.degree_in(var) != Some(1) {
            return Err(ElimError::NotLinear(var));
        }
        let mut coeffs = p.coefficients_in(var);
        let a = coeffs.pop().expect("degree 1 has two coefficient slots");
        let b = coeffs.pop().expect("degree 1 has two coefficient slots");
        LinearSolution::new(var, a, b)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Leading coefficient `a` in `a * var + b = 0`.
    pub fn a(&self) -> &Poly {
        &self.a
    }

    /// Constant coefficient `b` in `a * var + b = 0`.
    pub fn b(&self) -> &Poly {
        &self.b
    }
}

/// Clears `sol.var()` from `target` by the denominator-free substitution
/// `var := -b/a`: returns `a^d * target` at `var = -b/a`, where `d` is the
/// degree of `target` in the variable. When `d` is even this equals the
/// resultant of `target` and `a*var + b` in `var`; in general the two agree
/// up to the sign `(-1)^d`.
pub fn substitute_linear(target: &Poly, sol: &LinearSolution) -> Poly {
    let Some(d) = target.degree_in(sol.var) else {
        return Poly::zero();
    };
    let d = d as usize;
    let coeffs = target.coefficients_in(sol.var);
    let neg_b = -&sol.b;
    let mut nb_pow = Vec::with_capacity(d + 1);
    let mut a_pow = Vec::with_capacity(d + 1);
    nb_pow.push(Poly::one());
    a_pow.push(Poly::one());
    for k in 1..=d {
        nb_pow.push(&nb_pow[k - 1] * &neg_b);
        a_pow.push(&a_pow[k - 1] * &sol.a);
    }
    let mut acc = Poly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc += &(&(c * &nb_pow[k]) * &a_pow[d - k]);
    }
    acc
}
