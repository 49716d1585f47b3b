//! Sparse exact polynomials over arbitrary-precision integers.
//!
//! All polynomials live in the fixed variable universe `u, v, w, x, y, z`.
//! Coefficients are [`BigInt`]; terms are kept in a [`BTreeMap`] keyed by
//! monomial in graded-lexicographic order (`u > v > w > x > y > z`), so a
//! polynomial has exactly one representation and equality is structural.
//!
//! The text format accepted by [`Poly::parse`] and produced by `Display` is:
//!
//! ```text
//! poly   := [sign] term (('+'|'-') term)*
//! term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow := var ('^' uint)?
//! var    := 'u'|'v'|'w'|'x'|'y'|'z'
//! coeff  := uint          (unsigned decimal, arbitrary precision)
//! ```
//!
//! Whitespace is ignored everywhere. A sign directly before a term binds to
//! that term, so `-y + 3*x` and `2 - x^2*y` parse as expected. `Display`
//! emits terms in descending graded-lex order with explicit `*` between
//! factors, e.g. `2*u*v^2 - x + 1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Number of variables in the fixed universe.
pub const NVARS: usize = 6;

/// One of the six variables `u, v, w, x, y, z`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    U,
    V,
    W,
    X,
    Y,
    Z,
}

impl Var {
    /// All variables in descending default precedence (`u` first).
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::W, Var::X, Var::Y, Var::Z];

    /// Index of the variable in [`Var::ALL`].
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn as_char(self) -> char {
        match self {
            Var::U => 'u',
            Var::V => 'v',
            Var::W => 'w',
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        Some(match c {
            'u' => Var::U,
            'v' => Var::V,
            'w' => Var::W,
            'x' => Var::X,
            'y' => Var::Y,
            'z' => Var::Z,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A monomial: the exponent of each variable, indexed by [`Var::index`].
///
/// `Ord` is graded lexicographic with precedence `u > v > w > x > y > z`:
/// higher total degree wins, ties broken by the exponent vector compared
/// left-to-right. This is the canonical order used for storage, `Display`,
/// and the sign convention of [`Poly::integer_content`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    /// The empty monomial (constant term).
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn of_var(v: Var, exp: u16) -> Mono {
        let mut m = [0u16; NVARS];
        m[v.index()] = exp;
        Mono(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    /// Monomial product; `None` when an exponent overflows `u16`.
    pub fn checked_mul(&self, other: &Mono) -> Option<Mono> {
        let mut out = [0u16; NVARS];
        for (slot, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *slot = a.checked_add(*b)?;
        }
        Some(Mono(out))
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Exponent-wise quotient. Caller guarantees `divisor.divides(self)`.
    fn quotient(&self, divisor: &Mono) -> Mono {
        let mut out = [0u16; NVARS];
        for (slot, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&divisor.0)) {
            *slot = a - b;
        }
        Mono(out)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total_degree(), self.0).cmp(&(other.total_degree(), other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Mono::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Kind of term order: pure lexicographic or graded lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    Lex,
    GrLex,
}

/// A monomial order: an [`OrderKind`] plus a variable precedence permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: [Var; NVARS],
}

impl MonomialOrder {
    /// The canonical order: graded lex with `u > v > w > x > y > z`.
    pub const DEFAULT: MonomialOrder = MonomialOrder {
        kind: OrderKind::GrLex,
        precedence: Var::ALL,
    };

    /// Builds an order from a full precedence permutation.
    ///
    /// Panics if `precedence` is not a permutation of all six variables.
    pub fn new(kind: OrderKind, precedence: [Var; NVARS]) -> MonomialOrder {
        let mut seen = [false; NVARS];
        for v in precedence {
            assert!(!seen[v.index()], "duplicate variable in precedence");
            seen[v.index()] = true;
        }
        MonomialOrder { kind, precedence }
    }

    /// Builds an order whose highest-precedence variables are `leading`, in
    /// the given sequence, with the remaining variables following in default
    /// order. Panics on duplicates in `leading`.
    pub fn prioritizing(kind: OrderKind, leading: &[Var]) -> MonomialOrder {
        let mut precedence = [Var::U; NVARS];
        let mut n = 0;
        for &v in leading {
            precedence[n] = v;
            n += 1;
        }
        for v in Var::ALL {
            if !leading.contains(&v) {
                precedence[n] = v;
                n += 1;
            }
        }
        MonomialOrder::new(kind, precedence)
    }

    pub fn compare(&self, a: &Mono, b: &Mono) -> Ordering {
        if self.kind == OrderKind::GrLex {
            match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for v in self.precedence {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Error from polynomial parsing, with a byte position into the input.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Error from polynomial arithmetic.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("monomial exponent overflow")]
    ExponentOverflow,
}

/// A sparse multivariate polynomial with [`BigInt`] coefficients.
///
/// Invariant: no stored coefficient is zero, so `Eq` is mathematical
/// equality and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: i64) -> Poly {
        Poly::monomial(Mono::ONE, BigInt::from(c))
    }

    pub fn constant_big(c: BigInt) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn variable(v: Var) -> Poly {
        Poly::monomial(Mono::of_var(v, 1), BigInt::one())
    }

    pub fn monomial(mono: Mono, coeff: BigInt) -> Poly {
        let mut p = Poly::zero();
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical (graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of `mono`, zero when absent.
    pub fn coefficient(&self, mono: &Mono) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert_add(&mut self, mono: Mono, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::total_degree)
    }

    /// Degree in a single variable, or `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as u32)
            .max()
    }

    /// Coefficients of powers of `v`: entry `k` is the (polynomial)
    /// coefficient of `v^k`. Empty for the zero polynomial; otherwise the
    /// length is `degree_in(v) + 1`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let Some(d) = self.degree_in(v) else {
            return Vec::new();
        };
        let mut out = vec![Poly::zero(); d as usize + 1];
        for (mono, coeff) in &self.terms {
            let k = mono.exponent(v) as usize;
            let mut rest = *mono;
            rest.0[v.index()] = 0;
            out[k].insert_add(rest, coeff.clone());
        }
        out
    }

    /// Leading term under `order`, or `None` for the zero polynomial.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Mono, BigInt)> {
        if *order == MonomialOrder::DEFAULT {
            // Storage order is the default order; take the last key.
            return self
                .terms
                .iter()
                .next_back()
                .map(|(m, c)| (*m, c.clone()));
        }
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Signed integer content: the gcd of all coefficients, with sign chosen
    /// so that the primitive part has a positive leading coefficient under
    /// the canonical graded-lex order. The content of the zero polynomial
    /// is zero.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if let Some((_, lead)) = self.terms.iter().next_back() {
            if lead.is_negative() {
                g = -g;
            }
        }
        g
    }

    /// `self / integer_content()`; zero for the zero polynomial. The result
    /// has content `1` and a positive canonical leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        let content = self.integer_content();
        if content.is_zero() || content.is_one() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c / &content))
            .collect();
        Poly { terms }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * k)).collect();
        Poly { terms }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact polynomial division. Returns `Ok(Some(q))` with `self == q *
    /// divisor` when the division is exact over the integers, `Ok(None)`
    /// when it is not, and an error for a zero divisor.
    pub fn try_exact_div(&self, divisor: &Poly) -> Result<Option<Poly>, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (div_mono, div_coeff) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (*m, c.clone()))
            .expect("nonzero divisor has a leading term");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !div_mono.divides(&m) {
                return Ok(None);
            }
            let (q, r) = c.div_rem(&div_coeff);
            if !r.is_zero() {
                return Ok(None);
            }
            let qm = m.quotient(&div_mono);
            // rem -= (q * v^qm) * divisor; the leading term cancels exactly.
            for (dm, dc) in &divisor.terms {
                let prod = dm.checked_mul(&qm).ok_or(PolyError::ExponentOverflow)?;
                rem.insert_add(prod, -(dc * &q));
            }
            quot.insert_add(qm, q);
        }
        Ok(Some(quot))
    }

    /// Clears `v` by the exact scaled substitution `v := num/den`:
    /// returns `den^d * self` evaluated at `v = num/den`, where `d` is the
    /// degree of `self` in `v`. With `den = 1` this is plain substitution.
    /// Panics if `den` is zero.
    pub fn substitute_rational(&self, v: Var, num: &BigInt, den: &BigInt) -> Poly {
        assert!(!den.is_zero(), "zero denominator in substitution");
        let Some(d) = self.degree_in(v) else {
            return Poly::zero();
        };
        let d = d as usize;
        let mut num_pow = Vec::with_capacity(d + 1);
        let mut den_pow = Vec::with_capacity(d + 1);
        num_pow.push(BigInt::one());
        den_pow.push(BigInt::one());
        for k in 1..=d {
            num_pow.push(&num_pow[k - 1] * num);
            den_pow.push(&den_pow[k - 1] * den);
        }
        let mut out = Poly::zero();
        for (mono, coeff) in &self.terms {
            let k = mono.exponent(v) as usize;
            let mut rest = *mono;
            rest.0[v.index()] = 0;
            out.insert_add(rest, coeff * &num_pow[k] * &den_pow[d - k]);
        }
        out
    }

    /// Exact evaluation at a rational point, indexed by [`Var::index`].
    pub fn eval_exact(&self, point: &[BigRational; NVARS]) -> BigRational {
        let mut pow_tables: [Vec<BigRational>; NVARS] =
            std::array::from_fn(|_| vec![BigRational::one()]);
        for (i, table) in pow_tables.iter_mut().enumerate() {
            let max_e = self
                .terms
                .keys()
                .map(|m| m.0[i])
                .max()
                .unwrap_or(0) as usize;
            for k in 1..=max_e {
                let next = &table[k - 1] * &point[i];
                table.push(next);
            }
        }
        let mut acc = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = BigRational::from(coeff.clone());
            for (table, e) in pow_tables.iter().zip(&mono.0) {
                if *e > 0 {
                    term *= &table[*e as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// Float evaluation with compensated (Neumaier) summation.
    ///
    /// For points with coordinates of magnitude at most 1, at most `10^4`
    /// terms, and coefficients below `2^30`, the result agrees with
    /// [`Poly::eval_exact`] to a relative error of `1e-12`. Far outside
    /// that envelope the usual floating-point caveats apply.
    pub fn eval_float(&self, point: &[f64; NVARS]) -> f64 {
        let mut pow_tables: [Vec<f64>; NVARS] = std::array::from_fn(|_| vec![1.0]);
        for (i, table) in pow_tables.iter_mut().enumerate() {
            let max_e = self
                .terms
                .keys()
                .map(|m| m.0[i])
                .max()
                .unwrap_or(0) as usize;
            for k in 1..=max_e {
                let next = table[k - 1] * point[i];
                table.push(next);
            }
        }
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (mono, coeff) in &self.terms {
            let mut term = big_to_f64(coeff);
            for (table, e) in pow_tables.iter().zip(&mono.0) {
                if *e > 0 {
                    term *= table[*e as usize];
                }
            }
            let s = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - s) + term;
            } else {
                comp += (term - s) + sum;
            }
            sum = s;
        }
        sum + comp
    }

    /// Sum of the absolute values of all coefficients, as a float.
    pub fn coefficient_l1(&self) -> f64 {
        let mut acc = BigInt::zero();
        for c in self.terms.values() {
            acc += c.abs();
        }
        big_to_f64(&acc)
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Poly, ParseError> {
        Parser::new(text).parse()
    }
}

/// `BigInt` to `f64`, saturating to signed infinity on overflow.
pub fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(if v.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if *mono == Mono::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly::parse(s)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            end: text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(b, _)| b)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.byte_pos(),
            message: message.into(),
        })
    }

    fn parse(mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return self.error("empty input");
        }
        let mut negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let term = self.parse_term(negate)?;
            acc += &term;
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('+') => {
                    self.bump();
                    negate = false;
                }
                Some('-') => {
                    self.bump();
                    negate = true;
                }
                Some(c) => return self.error(format!("expected '+' or '-', found '{c}'")),
            }
        }
    }

    fn parse_term(&mut self, negate: bool) -> Result<Poly, ParseError> {
        self.skip_ws();
        let mut coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.parse_uint_big()?,
            Some(c) if Var::from_char(c).is_some() => BigInt::one(),
            Some(c) => return self.error(format!("expected coefficient or variable, found '{c}'")),
            None => return self.error("expected term"),
        };
        if negate {
            coeff = -coeff;
        }
        let mut exponents = [0u32; NVARS];
        // A leading variable is part of the term even without a '*'.
        if matches!(self.peek(), Some(c) if Var::from_char(c).is_some()) {
            let (v, e) = self.parse_varpow()?;
            exponents[v.index()] += e;
        }
        loop {
            self.skip_ws();
            if self.peek() != Some('*') {
                break;
            }
            self.bump();
            self.skip_ws();
            let (v, e) = self.parse_varpow()?;
            exponents[v.index()] += e;
        }
        let mut mono = [0u16; NVARS];
        for i in 0..NVARS {
            mono[i] = u16::try_from(exponents[i])
                .map_err(|_| ParseError {
                    position: self.byte_pos(),
                    message: "exponent overflow".into(),
                })?;
        }
        Ok(Poly::monomial(Mono(mono), coeff))
    }

    fn parse_varpow(&mut self) -> Result<(Var, u32), ParseError> {
        let v = match self.peek().and_then(Var::from_char) {
            Some(v) => {
                self.bump();
                v
            }
            None => {
                let found = self
                    .peek()
                    .map_or("end of input".to_string(), |c| format!("'{c}'"));
                return self.error(format!("expected variable, found {found}"));
            }
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let e = self.parse_uint_u32()?;
            Ok((v, e))
        } else {
            Ok((v, 1))
        }
    }

    fn parse_uint_big(&mut self) -> Result<BigInt, ParseError> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return self.error("expected digits");
        }
        Ok(BigInt::parse_bytes(digits.as_bytes(), 10).expect("digits parse as an integer"))
    }

    fn parse_uint_u32(&mut self) -> Result<u32, ParseError> {
        let start = self.byte_pos();
        let mut value: u64 = 0;
        let mut any = false;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            any = true;
            value = value * 10 + u64::from(self.bump().unwrap() as u8 - b'0');
            if value > u16::MAX as u64 {
                return Err(ParseError {
                    position: start,
                    message: "exponent overflow".into(),
                });
            }
        }
        if !any {
            return self.error("expected exponent digits");
        }
        Ok(value as u32)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.insert_add(*m, c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Poly { terms }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma
                    .checked_mul(mb)
                    .expect("monomial exponent overflow in product");
                out.insert_add(m, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}
