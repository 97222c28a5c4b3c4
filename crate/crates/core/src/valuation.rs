//! Valuations, digit sums, and the divisibility sweeps built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::catalan::{weighted_catalan_dp_upto, CatalanIter};
use crate::error::{Error, Result};
use crate::weight::{check_membership, CheckWindow, MembershipVerdict, WeightSequence};

/// Largest `e` with `base^e | m`.
pub fn xi(m: &BigInt, base: u64) -> Result<u64> {
    if base < 2 {
        return Err(Error::domain(format!("valuation base {base} is below 2")));
    }
    if m.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if base.is_power_of_two() {
        let bits = base.trailing_zeros() as u64;
        return Ok(m.trailing_zeros().unwrap() / bits);
    }
    let base = BigInt::from(base);
    let mut e = 0;
    let mut rest = m.clone();
    loop {
        let (q, r) = rest.div_rem(&base);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Valuation of a machine integer; `k` must be nonzero.
pub fn xi_u64(k: u64, base: u64) -> Result<u64> {
    xi(&BigInt::from(k), base)
}

/// Sum of the base-`base` digits of `n`.
pub fn digit_sum(mut n: u64, base: u64) -> Result<u64> {
    if base < 2 {
        return Err(Error::domain(format!("digit base {base} is below 2")));
    }
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    Ok(s)
}

/// `s(n + 1) - 1`.
pub fn predicted_xi(n: u64) -> u64 {
    (n + 1).count_ones() as u64 - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationReport {
    pub n: u32,
    /// 2-adic valuation of the computed value.
    pub xi: u64,
    /// `s(n + 1) - 1`.
    pub predicted: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl ValuationReport {
    pub fn new(n: u32, value: &BigInt) -> Result<Self> {
        let xi = xi(value, 2)?;
        let predicted = predicted_xi(n as u64);
        Ok(ValuationReport {
            n,
            xi,
            predicted,
            matches: xi == predicted,
        })
    }
}

/// Reports for `values[n]`, `n = 0, 1, ...`, with no membership precondition.
pub fn valuation_reports(values: &[BigInt]) -> Result<Vec<ValuationReport>> {
    values
        .iter()
        .enumerate()
        .map(|(n, v)| ValuationReport::new(n as u32, v))
        .collect()
}

/// `ξ(C_n)` against `s(n+1) - 1` for `0 <= n <= n_max`.
pub fn verify_classical(n_max: u32) -> Vec<ValuationReport> {
    CatalanIter::new()
        .take(n_max as usize + 1)
        .enumerate()
        .map(|(n, c)| ValuationReport::new(n as u32, &c).expect("Catalan numbers are positive"))
        .collect()
}

/// `ξ(C_n^b)` against `s(n+1) - 1` for `0 <= n <= n_max`.
///
/// Weights proven to lie outside the class F are rejected with their witness.
pub fn verify_weighted(
    n_max: u32,
    b: &WeightSequence,
    window: CheckWindow,
) -> Result<(MembershipVerdict, Vec<ValuationReport>)> {
    let verdict = check_membership(b, window)?;
    if let MembershipVerdict::ProvenNonMember { witness } = verdict {
        return Err(Error::NotInClass(witness));
    }
    let values = weighted_catalan_dp_upto(n_max, b)?;
    Ok((verdict, valuation_reports(&values)?))
}

/// One maximal run of indices `n` with `C_n ≡ 0 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroBlockReport {
    pub p: u64,
    /// 1-based block index.
    pub k: u64,
    /// First index of the run.
    pub start: u64,
    pub observed: u64,
    pub predicted: u64,
    /// False for a block still open at the end of the scanned range; such
    /// blocks are never compared.
    pub complete: bool,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Length of the `k`-th zero block of `C mod 2`: `2^k - 1`.
pub fn predicted_block_length_mod2(k: u64) -> Result<u64> {
    1u64.checked_shl(k as u32)
        .filter(|_| k < 64)
        .map(|v| v - 1)
        .ok_or_else(|| Error::domain(format!("block index {k} is too large")))
}

/// `(p^(ξ_q(k) + δ_{3,p} + 1) - 3) / 2` with `q = (p + 1) / 2`, for odd primes `p`.
pub fn predicted_block_length(p: u64, k: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    let q = p.div_ceil(2);
    let e = xi_u64(k, q)? + u64::from(p == 3) + 1;
    u32::try_from(e)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .map(|v| (v - 3) / 2)
        .ok_or_else(|| Error::domain(format!("predicted length for p = {p}, k = {k} overflows")))
}

/// `C_n mod p` for `0 <= n <= n_max`, reduced from the exact values.
pub fn catalan_residues(p: u64, n_max: u64) -> Vec<u64> {
    let modulus = BigInt::from(p);
    CatalanIter::new()
        .take(n_max as usize + 1)
        .map(|c| c.mod_floor(&modulus).to_u64().unwrap())
        .collect()
}

/// Maximal zero runs of `residues` as `(start, length, complete)`.
fn zero_runs(residues: &[u64]) -> Vec<(u64, u64, bool)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < residues.len() {
        if residues[i] != 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < residues.len() && residues[i] == 0 {
            i += 1;
        }
        runs.push((start as u64, (i - start) as u64, i < residues.len()));
    }
    runs
}

/// Zero blocks `1..=k_max` of `C mod p` among `C_0, ..., C_{n_max}`, each
/// compared against the predicted length. `p = 2` uses `2^k - 1`.
pub fn zero_blocks(p: u64, n_max: u64, k_max: u64) -> Result<Vec<ZeroBlockReport>> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let residues = catalan_residues(p, n_max);
    zero_runs(&residues)
        .into_iter()
        .take(k_max as usize)
        .zip(1u64..)
        .map(|((start, observed, complete), k)| {
            let predicted = if p == 2 {
                predicted_block_length_mod2(k)?
            } else {
                predicted_block_length(p, k)?
            };
            Ok(ZeroBlockReport {
                p,
                k,
                start,
                observed,
                predicted,
                complete,
                matches: complete && observed == predicted,
            })
        })
        .collect()
}
