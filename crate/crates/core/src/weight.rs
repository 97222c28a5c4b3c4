//! Weight sequences `b`, the shift/difference calculus on integer functions,
//! and the membership test for the class F of odd functions whose n-th
//! differences are divisible by `2^(n+1)`.
//!
//! Functions `f: Z>=0 -> Z` are handled through [`FunctionWindow`], a finite
//! run of exact values `f(origin), f(origin + 1), ...`. Every window operation
//! keeps that indexing: `values[i]` is always the value at `origin + i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer polynomial in the monomial basis with no trailing zero coefficient.
///
/// The zero polynomial has an empty coefficient list and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// The polynomial `p(x + 1)`, by binomial expansion of every monomial.
    pub fn shifted(&self) -> Self {
        let d = self.coeffs.len();
        let mut out = vec![BigInt::zero(); d];
        for (i, c) in self.coeffs.iter().enumerate() {
            // (x+1)^i = sum_j C(i,j) x^j
            let mut binom = BigInt::one();
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += c * &binom;
                binom = binom * (i - j) / (j + 1);
            }
        }
        Self::new(out)
    }

    /// The forward difference `p(x + 1) - p(x)`, computed on coefficients.
    pub fn difference(&self) -> Self {
        let mut out = self.shifted().coeffs;
        out.resize(self.coeffs.len(), BigInt::zero());
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o -= c;
        }
        Self::new(out)
    }
}

/// An exactly evaluable integer sequence `b(0), b(1), ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WeightSequence {
    Constant(BigInt),
    Polynomial(IntPolynomial),
    /// `b(x) = q^x`.
    Geometric(BigInt),
    /// `b(x) = (2x + 1)^2`.
    OddSquares,
    /// Finitely many stored values; evaluation past the end is an error.
    Table(Vec<BigInt>),
}

impl WeightSequence {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        WeightSequence::Constant(c.into())
    }

    pub fn polynomial<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        WeightSequence::Polynomial(IntPolynomial::new(
            coeffs.into_iter().map(Into::into).collect(),
        ))
    }

    pub fn geometric(q: impl Into<BigInt>) -> Self {
        WeightSequence::Geometric(q.into())
    }

    pub fn table<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        WeightSequence::Table(values.into_iter().map(Into::into).collect())
    }

    pub fn evaluate(&self, x: u64) -> Result<BigInt> {
        Ok(match self {
            WeightSequence::Constant(c) => c.clone(),
            WeightSequence::Polynomial(p) => p.eval(&BigInt::from(x)),
            WeightSequence::Geometric(q) => {
                let e = usize::try_from(x)
                    .map_err(|_| Error::domain(format!("exponent {x} is too large")))?;
                num_traits::pow(q.clone(), e)
            }
            WeightSequence::OddSquares => {
                let odd = BigInt::from(x) * 2 + 1;
                &odd * &odd
            }
            WeightSequence::Table(values) => usize::try_from(x)
                .ok()
                .and_then(|i| values.get(i))
                .cloned()
                .ok_or(Error::OutOfWindow {
                    x,
                    len: values.len(),
                })?,
        })
    }

    /// Values on `[origin, origin + len)`.
    pub fn window(&self, origin: u64, len: usize) -> Result<FunctionWindow> {
        let values = (0..len as u64)
            .map(|i| self.evaluate(origin + i))
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctionWindow::new(origin, values))
    }

    /// The monomial form, when the sequence is a polynomial in `x`.
    pub fn as_polynomial(&self) -> Option<IntPolynomial> {
        match self {
            WeightSequence::Constant(c) => Some(IntPolynomial::constant(c.clone())),
            WeightSequence::Polynomial(p) => Some(p.clone()),
            WeightSequence::OddSquares => Some(IntPolynomial::new(vec![
                BigInt::one(),
                BigInt::from(4),
                BigInt::from(4),
            ])),
            WeightSequence::Geometric(_) | WeightSequence::Table(_) => None,
        }
    }

    /// Number of stored values for a table, `None` for unbounded sequences.
    pub fn table_len(&self) -> Option<usize> {
        match self {
            WeightSequence::Table(v) => Some(v.len()),
            _ => None,
        }
    }
}

fn parse_list(input: &str, body: &str) -> Result<Vec<BigInt>> {
    body.split(',')
        .map(|tok| {
            BigInt::from_str(tok.trim()).map_err(|e| Error::Parse {
                input: input.to_string(),
                reason: format!("`{}`: {e}", tok.trim()),
            })
        })
        .collect()
}

impl FromStr for WeightSequence {
    type Err = Error;

    /// Grammar: `const:<c>`, `poly:<c0>,<c1>,...`, `geom:<q>`, `oddsq`,
    /// `table:<v0>,<v1>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s == "oddsq" {
            return Ok(WeightSequence::OddSquares);
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| bad("expected const:, poly:, geom:, table: or oddsq"))?;
        if body.trim().is_empty() {
            return Err(bad("missing value list"));
        }
        let values = parse_list(s, body)?;
        match kind {
            "const" | "geom" if values.len() != 1 => Err(bad("expected a single integer")),
            "const" => Ok(WeightSequence::Constant(values[0].clone())),
            "geom" => Ok(WeightSequence::Geometric(values[0].clone())),
            "poly" => Ok(WeightSequence::Polynomial(IntPolynomial::new(values))),
            "table" => Ok(WeightSequence::Table(values)),
            _ => Err(bad("unknown weight kind")),
        }
    }
}

fn join(values: &[BigInt]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSequence::Constant(c) => write!(f, "const:{c}"),
            WeightSequence::Polynomial(p) if p.is_zero() => write!(f, "poly:0"),
            WeightSequence::Polynomial(p) => write!(f, "poly:{}", join(p.coeffs())),
            WeightSequence::Geometric(q) => write!(f, "geom:{q}"),
            WeightSequence::OddSquares => write!(f, "oddsq"),
            WeightSequence::Table(v) => write!(f, "table:{}", join(v)),
        }
    }
}

/// Exact values of a function on the consecutive points `origin, origin + 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionWindow {
    origin: u64,
    #[serde(with = "crate::report::decimal_vec")]
    values: Vec<BigInt>,
}

impl FunctionWindow {
    pub fn new(origin: u64, values: Vec<BigInt>) -> Self {
        FunctionWindow { origin, values }
    }

    pub fn constant(c: impl Into<BigInt>, origin: u64, len: usize) -> Self {
        FunctionWindow::new(origin, vec![c.into(); len])
    }

    pub fn origin(&self) -> u64 {
        self.origin
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last covered point.
    pub fn end(&self) -> u64 {
        self.origin + self.values.len() as u64
    }

    pub fn get(&self, x: u64) -> Option<&BigInt> {
        x.checked_sub(self.origin)
            .and_then(|i| usize::try_from(i).ok())
            .and_then(|i| self.values.get(i))
    }

    /// `(Sf)(x) = f(x + 1)` on `[origin, end - 1)`.
    pub fn shift(&self) -> Result<FunctionWindow> {
        if self.is_empty() {
            return Err(Error::domain("cannot shift an empty window"));
        }
        Ok(FunctionWindow::new(self.origin, self.values[1..].to_vec()))
    }

    /// `S^k f`.
    pub fn shift_by(&self, k: usize) -> Result<FunctionWindow> {
        if k > self.len() {
            return Err(Error::domain(format!(
                "cannot shift a window of length {} by {k}",
                self.len()
            )));
        }
        Ok(FunctionWindow::new(self.origin, self.values[k..].to_vec()))
    }

    /// `Δ^n f`, which covers `n` fewer points.
    pub fn difference(&self, n: usize) -> Result<FunctionWindow> {
        if self.len() <= n {
            return Err(Error::domain(format!(
                "window of length {} is too short for a difference of order {n}",
                self.len()
            )));
        }
        let mut values = self.values.clone();
        for _ in 0..n {
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Ok(FunctionWindow::new(self.origin, values))
    }

    fn overlap(&self, other: &FunctionWindow) -> Option<(u64, usize)> {
        let lo = self.origin.max(other.origin);
        let hi = self.end().min(other.end());
        (hi > lo).then(|| (lo, (hi - lo) as usize))
    }

    /// Pointwise product on the common points of both windows.
    pub fn product(&self, other: &FunctionWindow) -> Result<FunctionWindow> {
        let (lo, len) = self
            .overlap(other)
            .ok_or_else(|| Error::domain("windows do not overlap"))?;
        let values = (lo..lo + len as u64)
            .map(|x| self.get(x).unwrap() * other.get(x).unwrap())
            .collect();
        Ok(FunctionWindow::new(lo, values))
    }

    /// `<f, g>(x) = (f(x+1) g(x) + f(x) g(x+1)) / 2`, with the halving exact.
    pub fn bracket(&self, other: &FunctionWindow) -> Result<FunctionWindow> {
        let (lo, len) = self
            .overlap(other)
            .filter(|&(_, len)| len >= 2)
            .ok_or_else(|| Error::domain("bracket needs two common points"))?;
        let mut values = Vec::with_capacity(len - 1);
        for x in lo..lo + len as u64 - 1 {
            let (f0, f1) = (self.get(x).unwrap(), self.get(x + 1).unwrap());
            let (g0, g1) = (other.get(x).unwrap(), other.get(x + 1).unwrap());
            let (half, rem) = (f1 * g0 + f0 * g1).div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                return Err(Error::InexactBracket { x });
            }
            values.push(half);
        }
        Ok(FunctionWindow::new(lo, values))
    }
}

/// A concrete violation of the class F hypotheses.
///
/// `n == 0` means `b(x)` is even; otherwise `value = Δ^n b(x)` is not a
/// multiple of `2^(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u32,
    pub x: u64,
    #[serde(with = "crate::report::decimal")]
    pub value: BigInt,
}

impl Witness {
    /// Recomputes the offending value from `b` and confirms the violation.
    pub fn confirm(&self, b: &WeightSequence) -> Result<bool> {
        let f = b.window(self.x, self.n as usize + 1)?;
        let v = f.difference(self.n as usize)?.values[0].clone();
        Ok(v == self.value && !divisible_by_pow2(&v, modulus_exponent(self.n)))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            write!(f, "b({}) = {} is even", self.x, self.value)
        } else {
            write!(
                f,
                "Δ^{} b({}) = {} is not divisible by 2^{}",
                self.n,
                self.x,
                self.value,
                self.n + 1
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MembershipVerdict {
    /// Decided for every `n >= 1` and every `x >= 0`.
    ProvenMember,
    ProvenNonMember {
        witness: Witness,
    },
    /// Hypotheses hold for all `1 <= n <= n_max` and `x <= x_max`.
    WindowVerified {
        n_max: u32,
        x_max: u64,
    },
}

impl MembershipVerdict {
    pub fn is_rejected(&self) -> bool {
        matches!(self, MembershipVerdict::ProvenNonMember { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            MembershipVerdict::ProvenNonMember { witness } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipVerdict::ProvenMember => write!(f, "proven member"),
            MembershipVerdict::ProvenNonMember { witness } => {
                write!(f, "proven non-member: {witness}")
            }
            MembershipVerdict::WindowVerified { n_max, x_max } => {
                write!(f, "window verified (n <= {n_max}, x <= {x_max})")
            }
        }
    }
}

/// Extent of the finite check used for sequences where the quantifier over
/// all `n` cannot be discharged in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckWindow {
    pub n_max: u32,
    pub x_max: u64,
}

impl Default for CheckWindow {
    fn default() -> Self {
        CheckWindow {
            n_max: 8,
            x_max: 64,
        }
    }
}

fn modulus_exponent(n: u32) -> u64 {
    if n == 0 {
        1
    } else {
        n as u64 + 1
    }
}

fn divisible_by_pow2(v: &BigInt, e: u64) -> bool {
    v.is_zero() || v.trailing_zeros().is_some_and(|tz| tz >= e)
}

fn is_odd(v: &BigInt) -> bool {
    v.is_odd()
}

/// Decides whether `b(0)` is odd and `2^(n+1) | Δ^n b(x)` for all `n >= 1`, `x >= 0`.
///
/// Polynomial-like sequences and geometric sequences are decided exactly;
/// tables are checked on `window` and can at best be window-verified.
pub fn check_membership(b: &WeightSequence, window: CheckWindow) -> Result<MembershipVerdict> {
    if let Some(p) = b.as_polynomial() {
        return Ok(polynomial_membership(&p));
    }
    match b {
        WeightSequence::Geometric(q) => {
            // Δ^n q^x = (q-1)^n q^x, so 4 | q-1 gives 4^n | Δ^n b. Otherwise
            // Δb(0) = q-1 is already not a multiple of 4.
            let q1: BigInt = q - 1;
            if divisible_by_pow2(&q1, 2) {
                Ok(MembershipVerdict::ProvenMember)
            } else {
                Ok(MembershipVerdict::ProvenNonMember {
                    witness: Witness {
                        n: 1,
                        x: 0,
                        value: q1,
                    },
                })
            }
        }
        WeightSequence::Table(values) => {
            let need = window.x_max + window.n_max as u64;
            if (values.len() as u64) <= need {
                return Err(Error::OutOfWindow {
                    x: need,
                    len: values.len(),
                });
            }
            let f = b.window(0, need as usize + 1)?;
            Ok(
                check_window(&f, window.n_max).unwrap_or(MembershipVerdict::WindowVerified {
                    n_max: window.n_max,
                    x_max: window.x_max,
                }),
            )
        }
        _ => unreachable!("polynomial-like variants handled above"),
    }
}

fn polynomial_membership(p: &IntPolynomial) -> MembershipVerdict {
    let b0 = p.eval(&BigInt::zero());
    if !is_odd(&b0) {
        return MembershipVerdict::ProvenNonMember {
            witness: Witness {
                n: 0,
                x: 0,
                value: b0,
            },
        };
    }
    let mut d = p.clone();
    let mut n = 0u32;
    loop {
        d = d.difference();
        n += 1;
        let Some(deg) = d.degree() else {
            return MembershipVerdict::ProvenMember;
        };
        // A degree-d integer polynomial is a multiple of m on all of Z>=0
        // iff it is on 0..=d (Newton interpolation has integer coefficients).
        for x in 0..=deg as u64 {
            let v = d.eval(&BigInt::from(x));
            if !divisible_by_pow2(&v, n as u64 + 1) {
                return MembershipVerdict::ProvenNonMember {
                    witness: Witness { n, x, value: v },
                };
            }
        }
    }
}

/// Finite version of the class F test on an arbitrary window: `f(origin)` odd
/// and `2^(n+1) | Δ^n f(x)` for `1 <= n <= n_max` wherever the window reaches.
///
/// Returns the verdict with `x_max` the last point at which every order was
/// checked, or `None` when the window is shorter than `n_max + 1`.
pub fn check_window(f: &FunctionWindow, n_max: u32) -> Option<MembershipVerdict> {
    let first = f.values.first()?;
    if !is_odd(first) {
        return Some(MembershipVerdict::ProvenNonMember {
            witness: Witness {
                n: 0,
                x: f.origin,
                value: first.clone(),
            },
        });
    }
    let mut diff = f.values.clone();
    for n in 1..=n_max {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        if let Some((i, v)) = diff
            .iter()
            .enumerate()
            .find(|(_, v)| !divisible_by_pow2(v, n as u64 + 1))
        {
            return Some(MembershipVerdict::ProvenNonMember {
                witness: Witness {
                    n,
                    x: f.origin + i as u64,
                    value: v.clone(),
                },
            });
        }
    }
    if diff.is_empty() {
        return None;
    }
    Some(MembershipVerdict::WindowVerified {
        n_max,
        x_max: f.origin + diff.len() as u64 - 1,
    })
}

/// Decides `2^(n+1) | v` for callers outside this module.
pub fn pow2_divides(v: &BigInt, e: u64) -> bool {
    divisible_by_pow2(v, e)
}
