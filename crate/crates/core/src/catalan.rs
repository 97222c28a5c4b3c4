//! Catalan numbers, weighted Catalan numbers `C_n^b` and their specializations.
//!
//! `C_n^b` is computed three ways that share no code beyond weight
//! evaluation: a height-indexed lattice DP over Dyck paths, the power series
//! of the truncated continued fraction `1/(1 - b0 x/(1 - b1 x/(1 - ...)))`,
//! and explicit enumeration of every Dyck path.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::WeightSequence;

pub const DEFAULT_BRUTE_FORCE_BOUND: u32 = 14;

/// `C_n` via `C_{k+1} = C_k * 2(2k+1) / (k+2)`, each division exact.
pub fn catalan(n: u32) -> BigInt {
    CatalanIter::new().nth(n as usize).unwrap()
}

/// `C_0, ..., C_{n_max}`.
pub fn catalan_sequence(n_max: u32) -> Vec<BigInt> {
    CatalanIter::new().take(n_max as usize + 1).collect()
}

/// Unbounded iterator over `C_0, C_1, ...` using the exact recurrence.
#[derive(Debug, Clone)]
pub struct CatalanIter {
    k: u64,
    current: BigInt,
}

impl CatalanIter {
    pub fn new() -> Self {
        CatalanIter {
            k: 0,
            current: BigInt::one(),
        }
    }
}

impl Default for CatalanIter {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CatalanIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let k = self.k;
        let next = &self.current * (2 * (2 * k + 1)) / (k + 2);
        self.k += 1;
        Some(std::mem::replace(&mut self.current, next))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
}

/// A balanced sequence of up and down steps that never dips below height 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            if height < 0 {
                return Err(Error::domain(format!("path drops below zero at step {i}")));
            }
        }
        if height != 0 {
            return Err(Error::domain("path does not return to height zero"));
        }
        Ok(DyckPath { steps })
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Half the number of steps.
    pub fn order(&self) -> usize {
        self.steps.len() / 2
    }

    /// Starting heights of the steps, `y_{i-1}` for step `i`.
    pub fn heights(&self) -> Vec<u32> {
        let mut h = 0u32;
        self.steps
            .iter()
            .map(|s| {
                let start = h;
                match s {
                    Step::Up => h += 1,
                    Step::Down => h -= 1,
                }
                start
            })
            .collect()
    }

    /// Starting heights of the up steps, in order.
    pub fn ascent_heights(&self) -> Vec<u32> {
        self.heights()
            .into_iter()
            .zip(&self.steps)
            .filter(|(_, s)| **s == Step::Up)
            .map(|(h, _)| h)
            .collect()
    }

    /// Number of whole unit squares between the path and the lowest sawtooth path.
    pub fn area(&self) -> u64 {
        self.ascent_heights().iter().map(|&h| h as u64).sum()
    }

    /// `wt(P) = b(h_1) b(h_2) ... b(h_n)`.
    pub fn weight(&self, b: &WeightSequence) -> Result<BigInt> {
        let mut w = BigInt::one();
        for h in self.ascent_heights() {
            w *= b.evaluate(h as u64)?;
        }
        Ok(w)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dp,
    Series,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dp => "dp",
            Method::Series => "series",
            Method::BruteForce => "brute",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCount {
    pub n: u32,
    pub value: BigInt,
    pub method: Method,
}

/// `b(0), ..., b(len - 1)`.
fn weights(b: &WeightSequence, len: u32) -> Result<Vec<BigInt>> {
    (0..len as u64).map(|h| b.evaluate(h)).collect()
}

/// `C_n^b` by dynamic programming over (step, height): an up step leaving
/// height `h` multiplies by `b(h)`, a down step by 1.
pub fn weighted_catalan_dp(n: u32, b: &WeightSequence) -> Result<WeightedCount> {
    let bw = weights(b, n)?;
    let n = n as usize;
    // layer[h] = total weight of prefixes of the current length ending at h
    let mut layer = vec![BigInt::zero(); n + 1];
    layer[0] = BigInt::one();
    for step in 0..2 * n {
        let remaining = 2 * n - step - 1;
        let top = step.min(2 * n - step).min(n);
        let mut next = vec![BigInt::zero(); n + 1];
        for h in 0..=top {
            if layer[h].is_zero() {
                continue;
            }
            if h < n && h < remaining {
                next[h + 1] += &layer[h] * &bw[h];
            }
            if h > 0 {
                next[h - 1] += &layer[h];
            }
        }
        layer = next;
    }
    Ok(WeightedCount {
        n: n as u32,
        value: layer.swap_remove(0),
        method: Method::Dp,
    })
}

/// `C_0^b, ..., C_{n_max}^b` from a single DP run of `2 n_max` steps.
///
/// Paths of length `2k` that return to height 0 are a prefix stage of the
/// same lattice walk, so every order is read off the height-0 cell.
pub fn weighted_catalan_dp_upto(n_max: u32, b: &WeightSequence) -> Result<Vec<BigInt>> {
    let bw = weights(b, n_max)?;
    let n = n_max as usize;
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    let mut layer = vec![BigInt::zero(); n + 2];
    layer[0] = BigInt::one();
    for step in 0..2 * n {
        // heights above the remaining budget can never return in time
        let remaining = 2 * n - step;
        let top = step.min(remaining);
        let mut next = vec![BigInt::zero(); n + 2];
        for h in 0..=top {
            if layer[h].is_zero() {
                continue;
            }
            if h < n && h + 1 < remaining {
                next[h + 1] += &layer[h] * &bw[h];
            }
            if h > 0 {
                next[h - 1] += &layer[h];
            }
        }
        layer = next;
        if step % 2 == 1 {
            out.push(layer[0].clone());
        }
    }
    Ok(out)
}

/// Multiplicative inverse of a power series with constant term 1, to order `order`.
fn invert_unit_series(g: &[BigInt], order: usize) -> Vec<BigInt> {
    debug_assert!(g[0].is_one());
    let mut h = vec![BigInt::zero(); order + 1];
    h[0] = BigInt::one();
    for m in 1..=order {
        let mut acc = BigInt::zero();
        for j in 1..=m.min(g.len() - 1) {
            acc += &g[j] * &h[m - j];
        }
        h[m] = -acc;
    }
    h
}

/// Coefficients `C_0^b, ..., C_{n_max}^b` of the continued fraction.
///
/// Expands bottom-up from `F = 1` at depth `n_max` through
/// `F <- 1 / (1 - b(k) x F)`. The weight `b(k)` first reaches the
/// coefficient of `x^(k+1)`, so the truncation is exact to order `n_max`.
pub fn weighted_catalan_series(n_max: u32, b: &WeightSequence) -> Result<Vec<BigInt>> {
    weighted_catalan_series_depth(n_max, n_max, b)
}

/// Same expansion with an explicit truncation depth `depth >= n_max`.
pub fn weighted_catalan_series_depth(
    n_max: u32,
    depth: u32,
    b: &WeightSequence,
) -> Result<Vec<BigInt>> {
    if depth < n_max {
        return Err(Error::domain(format!(
            "truncation depth {depth} is below the requested order {n_max}"
        )));
    }
    let order = n_max as usize;
    let bw = weights(b, depth)?;
    let mut f = vec![BigInt::zero(); order + 1];
    f[0] = BigInt::one();
    for bk in bw.iter().rev() {
        // g = 1 - bk * x * f
        let mut g = vec![BigInt::zero(); order + 1];
        g[0] = BigInt::one();
        for i in 1..=order {
            g[i] = -(bk * &f[i - 1]);
        }
        f = invert_unit_series(&g, order);
    }
    Ok(f)
}

/// Calls `visit` once for every Dyck path of order `n`, with its ascent heights.
fn for_each_dyck_path(n: u32, mut visit: impl FnMut(&[Step], &[u32])) {
    fn go(
        n: u32,
        ups: u32,
        downs: u32,
        steps: &mut Vec<Step>,
        ascents: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[Step], &[u32]),
    ) {
        if ups == n && downs == n {
            visit(steps, ascents);
            return;
        }
        if ups < n {
            steps.push(Step::Up);
            ascents.push(ups - downs);
            go(n, ups + 1, downs, steps, ascents, visit);
            ascents.pop();
            steps.pop();
        }
        if downs < ups {
            steps.push(Step::Down);
            go(n, ups, downs + 1, steps, ascents, visit);
            steps.pop();
        }
    }
    let mut steps = Vec::with_capacity(2 * n as usize);
    let mut ascents = Vec::with_capacity(n as usize);
    go(n, 0, 0, &mut steps, &mut ascents, &mut visit);
}

fn check_bound(n: u32, bound: u32) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "brute-force order",
            requested: n as u64,
            bound: bound as u64,
        });
    }
    Ok(())
}

/// All Dyck paths of order `n`, in lexicographic order with `Up < Down`.
pub fn enumerate_dyck_paths(n: u32, bound: u32) -> Result<Vec<DyckPath>> {
    check_bound(n, bound)?;
    let mut out = Vec::new();
    for_each_dyck_path(n, |steps, _| {
        out.push(DyckPath::from_steps_unchecked(steps.to_vec()))
    });
    Ok(out)
}

/// Outcome of explicit enumeration: the weighted sum and the number of paths visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceSum {
    pub count: WeightedCount,
    pub paths: u64,
}

/// `C_n^b` by summing `wt(P)` over every Dyck path of order `n`. Testing oracle;
/// refuses `n > bound`.
pub fn weighted_catalan_bruteforce(
    n: u32,
    b: &WeightSequence,
    bound: u32,
) -> Result<BruteForceSum> {
    check_bound(n, bound)?;
    let bw = weights(b, n)?;
    let mut total = BigInt::zero();
    let mut paths = 0u64;
    for_each_dyck_path(n, |_, ascents| {
        let mut w = BigInt::one();
        for &h in ascents {
            w *= &bw[h as usize];
        }
        total += w;
        paths += 1;
    });
    Ok(BruteForceSum {
        count: WeightedCount {
            n,
            value: total,
            method: Method::BruteForce,
        },
        paths,
    })
}

/// `C_n(q) = sum over Dyck paths of q^area`, i.e. `C_n^b` with `b(i) = q^i`.
pub fn q_catalan(n: u32, q: impl Into<BigInt>) -> BigInt {
    weighted_catalan_dp(n, &WeightSequence::Geometric(q.into()))
        .expect("geometric weights evaluate everywhere")
        .value
}

/// Number of plane Morse links of order `n`: `C_n^b` with `b(i) = (2i+1)^2`.
pub fn morse_link_number(n: u32) -> BigInt {
    weighted_catalan_dp(n, &WeightSequence::OddSquares)
        .expect("odd squares evaluate everywhere")
        .value
}
