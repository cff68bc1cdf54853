//! Witt numbers `N_k^r` (basic commutators of length `k` on `r` letters),
//! Milnor numbers `M_k^r = r N_k^r - N_{k+1}^r` (independent degree-`k`
//! invariants of `r`-component links), and the inequalities between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{divisors, factorize};

pub use crate::arith::mobius;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("rank must be at least {min}, got {r}")]
    RankTooSmall { r: u64, min: u64 },
    #[error("length must be at least {min}, got {k}")]
    LengthTooSmall { k: u64, min: u64 },
    #[error("necklace sum {sum} is not divisible by k = {k} (r = {r})")]
    Indivisible { r: u64, k: u64, sum: BigInt },
    #[error("bound violated at (r, k) = ({r}, {k}): {what}")]
    Violation { r: u64, k: u64, what: String },
}

fn check(r: u64, r_min: u64, k: u64, k_min: u64) -> Result<(), CountError> {
    if r < r_min {
        return Err(CountError::RankTooSmall { r, min: r_min });
    }
    if k < k_min {
        return Err(CountError::LengthTooSmall { k, min: k_min });
    }
    Ok(())
}

fn power(r: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(r), e as usize)
}

/// `Σ_{d|k} μ(d) r^{k/d}`, the number of aperiodic words of length `k`.
pub fn necklace_sum(r: u64, k: u64) -> BigInt {
    divisors(k)
        .into_iter()
        .fold(BigInt::zero(), |acc, d| acc + power(r, k / d) * mobius(d))
}

/// Witt's formula `N_k^r = (1/k) Σ_{d|k} μ(d) r^{k/d}`.
pub fn witt(r: u64, k: u64) -> Result<BigInt, CountError> {
    check(r, 1, k, 1)?;
    let sum = necklace_sum(r, k);
    let (q, rem) = sum.div_rem(&BigInt::from(k));
    if !rem.is_zero() {
        return Err(CountError::Indivisible { r, k, sum });
    }
    Ok(q)
}

/// `M_k^r = r N_k^r - N_{k+1}^r`.
pub fn milnor_number(r: u64, k: u64) -> Result<BigInt, CountError> {
    check(r, 2, k, 2)?;
    Ok(witt(r, k)? * r - witt(r, k + 1)?)
}

/// `𝒫(r^k) = Σ_{p|k prime} r^{k/p}`.
pub fn p_sum(r: u64, k: u64) -> Result<BigInt, CountError> {
    check(r, 2, k, 2)?;
    Ok(factorize(k)
        .into_iter()
        .fold(BigInt::zero(), |acc, (p, _)| acc + power(r, k / p)))
}

/// The pairs where the strong inequality `r^k >= (k+1) 𝒫(r^k)` fails.
pub const EXCEPTIONAL: [(u64, u64); 3] = [(2, 2), (2, 4), (2, 6)];

fn is_exceptional(r: u64, k: u64) -> bool {
    EXCEPTIONAL.contains(&(r, k))
}

/// Outcome of a grid check: the cells examined and the pairs where the
/// (expected-to-fail) strong or lower bound failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub r_max: u64,
    pub k_max: u64,
    pub cells: usize,
    pub exceptions: Vec<(u64, u64)>,
}

impl fmt::Display for GridReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ex: Vec<String> = self
            .exceptions
            .iter()
            .map(|(r, k)| format!("({r},{k})"))
            .collect();
        write!(
            f,
            "checked {} cells, 2 <= r <= {}, 2 <= k <= {}; exceptions: {}",
            self.cells,
            self.r_max,
            self.k_max,
            if ex.is_empty() {
                "none".to_string()
            } else {
                ex.join(",")
            }
        )
    }
}

fn grid(r_max: u64, k_max: u64) -> Result<impl Iterator<Item = (u64, u64)>, CountError> {
    check(r_max, 2, k_max, 2)?;
    Ok((2..=r_max).flat_map(move |r| (2..=k_max).map(move |k| (r, k))))
}

/// `r^k > 𝒫(r^k)` everywhere, and `r^k >= (k+1) 𝒫(r^k)` away from
/// [`EXCEPTIONAL`]. Fails if an inequality breaks or an exceptional pair
/// unexpectedly satisfies the strong form.
pub fn verify_lemma_b(r_max: u64, k_max: u64) -> Result<GridReport, CountError> {
    let mut cells = 0;
    let mut exceptions = Vec::new();
    for (r, k) in grid(r_max, k_max)? {
        cells += 1;
        let rk = power(r, k);
        let p = p_sum(r, k)?;
        if rk <= p {
            return Err(CountError::Violation {
                r,
                k,
                what: format!("r^k = {rk} <= P = {p}"),
            });
        }
        let strong = rk >= &p * (k + 1);
        if !strong {
            exceptions.push((r, k));
        }
        if strong == is_exceptional(r, k) {
            return Err(CountError::Violation {
                r,
                k,
                what: format!("strong form r^k >= (k+1)P is {strong} for r^k = {rk}, P = {p}"),
            });
        }
    }
    Ok(GridReport {
        r_max,
        k_max,
        cells,
        exceptions,
    })
}

/// `r^k/(k+1) <= N_k^r < r^k/k`: the upper bound everywhere, the lower
/// bound failing exactly at [`EXCEPTIONAL`] (which are reported).
pub fn verify_star_bounds(r_max: u64, k_max: u64) -> Result<GridReport, CountError> {
    let mut cells = 0;
    let mut exceptions = Vec::new();
    for (r, k) in grid(r_max, k_max)? {
        cells += 1;
        let rk = power(r, k);
        let n = witt(r, k)?;
        if &n * k >= rk {
            return Err(CountError::Violation {
                r,
                k,
                what: format!("upper bound: N = {n} >= r^k/k"),
            });
        }
        let lower = &n * (k + 1) >= rk;
        if !lower {
            exceptions.push((r, k));
        }
        if lower == is_exceptional(r, k) {
            return Err(CountError::Violation {
                r,
                k,
                what: format!("lower bound r^k/(k+1) <= N is {lower} for N = {n}"),
            });
        }
    }
    Ok(GridReport {
        r_max,
        k_max,
        cells,
        exceptions,
    })
}

/// Groups the Witt sum by the number `s` of primes in the squarefree
/// divisor: `k N_k^r = Σ_s (-1)^s n_s` with `n_s = Σ_{d|k, ω(d)=s, μ(d)≠0} r^{k/d}`.
pub fn alternating_terms(r: u64, k: u64) -> Vec<BigInt> {
    let omega = factorize(k).len();
    let mut terms = vec![BigInt::zero(); omega + 1];
    for d in divisors(k) {
        let mu = mobius(d);
        if mu != 0 {
            terms[factorize(d).len()] += power(r, k / d);
        }
    }
    terms
}

/// Whether the alternating terms strictly decrease and stay positive.
pub fn alternating_terms_decrease(terms: &[BigInt]) -> bool {
    terms.iter().all(|t| t.is_positive()) && terms.windows(2).all(|w| w[0] > w[1])
}

/// `k N_k^r` recovered from the alternating terms.
pub fn alternating_sum(terms: &[BigInt]) -> BigInt {
    terms.iter().enumerate().fold(
        BigInt::zero(),
        |acc, (s, t)| {
            if s % 2 == 0 {
                acc + t
            } else {
                acc - t
            }
        },
    )
}

/// `r^k` as an exact integer, exposed for report formatting.
pub fn r_to_k(r: u64, k: u64) -> BigInt {
    if k == 0 {
        BigInt::one()
    } else {
        power(r, k)
    }
}
