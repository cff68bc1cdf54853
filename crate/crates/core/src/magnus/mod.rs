//! The Magnus embedding `m_i ↦ 1 + h_i` of the free group into truncated
//! noncommutative power series, lower central series membership, and
//! Milnor μ̄-invariants read off longitude words.

mod dense;
mod polynomial;
mod word;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

pub use polynomial::{MagnusPolynomial, Monomial};
pub use word::{FreeWord, Letter};

use dense::Expansion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("truncation cap must be at least 1")]
    ZeroCap,
    #[error("cap {cap} is too small; at least {min} is required")]
    CapTooSmall { cap: usize, min: usize },
    #[error("free group rank must be at least 1")]
    ZeroRank,
    #[error("free group rank {rank} exceeds the supported maximum of 65535")]
    RankTooLarge { rank: usize },
    #[error("generator index {index} out of range 1..={rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("letter exponent {exponent} is not ±1")]
    BadExponent { exponent: i8 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("expected one longitude per generator: rank {rank} but {count} longitudes")]
    LongitudeCount { rank: usize, count: usize },
    #[error("series is not invertible, or a substitution image has a constant term")]
    NotInvertible,
    #[error("index sequence must have length at least 2, got {len}")]
    IndexSequenceTooShort { len: usize },
    #[error("invariant of length {length} is not first-nonvanishing: mu({witness}) = {value} is nonzero")]
    LowerDegreeNonzero {
        length: usize,
        witness: IndexSequence,
        value: BigInt,
    },
}

/// A μ̄ index sequence `i_1 ... i_k i`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSequence(pub Vec<usize>);

impl fmt::Display for IndexSequence {
    /// Digits are run together when every index is below 10 (`231`), and
    /// comma separated otherwise (`2,11,1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|&i| i < 10);
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 && !compact {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A nonzero first-nonvanishing invariant `μ̄(I) = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: IndexSequence,
    pub value: BigInt,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu({})={}", self.indices, self.value)
    }
}

/// Outcome of a Milnor degree computation with finite truncation.
///
/// Infinite degree is never asserted: when every invariant the truncation
/// can see vanishes the verdict is `AtLeast(cap)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeVerdict {
    Exact {
        degree: usize,
        witness: Option<Witness>,
    },
    AtLeast(usize),
}

impl DegreeVerdict {
    /// The certified lower bound on the degree.
    pub fn lower_bound(&self) -> usize {
        match self {
            DegreeVerdict::Exact { degree, .. } => *degree,
            DegreeVerdict::AtLeast(k) => *k,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            DegreeVerdict::Exact { degree, .. } => Some(*degree),
            DegreeVerdict::AtLeast(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            DegreeVerdict::Exact { witness, .. } => witness.as_ref(),
            DegreeVerdict::AtLeast(_) => None,
        }
    }

    /// Degree of a split union: the smaller degree wins. An `AtLeast` bound
    /// below an exact degree stays a bound, since the hidden value may be lower.
    pub fn min(&self, other: &DegreeVerdict) -> DegreeVerdict {
        use DegreeVerdict::*;
        match (self, other) {
            (Exact { degree: a, .. }, Exact { degree: b, .. }) => {
                if a <= b {
                    self.clone()
                } else {
                    other.clone()
                }
            }
            (Exact { degree, .. }, AtLeast(k)) | (AtLeast(k), Exact { degree, .. }) => {
                if degree <= k {
                    if let Exact { .. } = self {
                        self.clone()
                    } else {
                        other.clone()
                    }
                } else {
                    AtLeast(*k)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(*a.min(b)),
        }
    }
}

impl fmt::Display for DegreeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeVerdict::Exact { degree, .. } => write!(f, "exact {degree}"),
            DegreeVerdict::AtLeast(k) => write!(f, ">= {k}"),
        }
    }
}

/// Whether [`mu_bar`] checks that every lower-degree invariant vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Unchecked,
}

/// Magnus expansion `e(w)` truncated above degree `cap`.
pub fn magnus_expand(w: &FreeWord, cap: usize) -> Result<MagnusPolynomial, MagnusError> {
    if cap == 0 {
        return Err(MagnusError::ZeroCap);
    }
    Ok(Expansion::of(w, cap).into_polynomial())
}

/// Whether `w` lies in the `k`-th lower central subgroup `F_k`.
///
/// Uses the minimal cap `k - 1`: `w ∈ F_k` iff `e(w) ≡ 1` through degree `k - 1`.
pub fn lcs_member(w: &FreeWord, k: usize) -> bool {
    if k <= 1 {
        return true;
    }
    if w.is_identity() {
        return true;
    }
    Expansion::of(w, k - 1)
        .lowest_nonconstant_degree()
        .is_none()
}

fn check_longitudes(longitudes: &[FreeWord]) -> Result<usize, MagnusError> {
    let rank = match longitudes.first() {
        Some(w) => w.rank(),
        None => return Err(MagnusError::ZeroRank),
    };
    if let Some(bad) = longitudes.iter().find(|w| w.rank() != rank) {
        return Err(MagnusError::RankMismatch {
            left: rank,
            right: bad.rank(),
        });
    }
    if longitudes.len() != rank {
        return Err(MagnusError::LongitudeCount {
            rank,
            count: longitudes.len(),
        });
    }
    Ok(rank)
}

/// First nonvanishing invariant of degree below `bound`, if any: scans
/// degrees upward, expanding every longitude at the current degree.
fn first_nonvanishing(longitudes: &[FreeWord], bound: usize) -> Option<Witness> {
    for degree in 1..bound {
        for (i, w) in longitudes.iter().enumerate() {
            if w.is_identity() {
                continue;
            }
            let e = Expansion::of(w, degree);
            if let Some((m, value)) = e.first_term(degree) {
                let mut idx = m.to_indices();
                idx.push(i + 1);
                return Some(Witness {
                    indices: IndexSequence(idx),
                    value,
                });
            }
        }
    }
    None
}

/// Milnor's invariant `μ̄(i_1 ... i_k i)`: the coefficient of
/// `h_{i_1} ... h_{i_k}` in `e(ℓ_i)`.
///
/// In strict mode, fails unless every invariant of shorter length vanishes.
pub fn mu_bar(
    longitudes: &[FreeWord],
    indices: &[usize],
    strictness: Strictness,
) -> Result<BigInt, MagnusError> {
    let rank = check_longitudes(longitudes)?;
    if indices.len() < 2 {
        return Err(MagnusError::IndexSequenceTooShort { len: indices.len() });
    }
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > rank) {
        return Err(MagnusError::GeneratorOutOfRange { index: bad, rank });
    }
    let k = indices.len() - 1;
    if strictness == Strictness::Strict {
        if let Some(w) = first_nonvanishing(longitudes, k) {
            return Err(MagnusError::LowerDegreeNonzero {
                length: indices.len(),
                witness: w.indices,
                value: w.value,
            });
        }
    }
    let target = &longitudes[indices[k] - 1];
    if target.is_identity() {
        return Ok(BigInt::zero());
    }
    Ok(Expansion::of(target, k).coefficient(&indices[..k]))
}

/// Milnor degree of a link from its longitude words: the largest `k` with
/// every `ℓ_i ∈ F_k`, searched up to `cap`.
///
/// Returns `Exact(k)` with the lexicographically first nonzero `μ̄` of length
/// `k + 1` as witness, or `AtLeast(cap)` when every `ℓ_i ∈ F_cap`.
pub fn link_degree(longitudes: &[FreeWord], cap: usize) -> Result<DegreeVerdict, MagnusError> {
    check_longitudes(longitudes)?;
    if cap < 2 {
        return Err(MagnusError::CapTooSmall { cap, min: 2 });
    }
    Ok(match first_nonvanishing(longitudes, cap) {
        Some(w) => DegreeVerdict::Exact {
            degree: w.indices.0.len() - 1,
            witness: Some(w),
        },
        None => DegreeVerdict::AtLeast(cap),
    })
}

/// [`link_degree`] computed from precomputed longitude expansions `e(ℓ_i)`,
/// all truncated at a common degree `c`; equivalent to a search with cap `c + 1`.
pub fn degree_of_expansions(expansions: &[MagnusPolynomial]) -> Result<DegreeVerdict, MagnusError> {
    let first = expansions.first().ok_or(MagnusError::ZeroRank)?;
    if let Some(bad) = expansions.iter().find(|p| p.rank() != first.rank()) {
        return Err(MagnusError::RankMismatch {
            left: first.rank(),
            right: bad.rank(),
        });
    }
    if expansions.len() != first.rank() {
        return Err(MagnusError::LongitudeCount {
            rank: first.rank(),
            count: expansions.len(),
        });
    }
    let cap = expansions
        .iter()
        .map(MagnusPolynomial::cap)
        .min()
        .unwrap_or(0);
    for degree in 1..=cap {
        for (i, e) in expansions.iter().enumerate() {
            if let Some((m, c)) = e.homogeneous_part(degree).first() {
                let mut idx = m.to_indices();
                idx.push(i + 1);
                return Ok(DegreeVerdict::Exact {
                    degree,
                    witness: Some(Witness {
                        indices: IndexSequence(idx),
                        value: (*c).clone(),
                    }),
                });
            }
        }
    }
    Ok(DegreeVerdict::AtLeast(cap + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn gen(rank: usize, i: usize) -> FreeWord {
        FreeWord::generator(rank, i).unwrap()
    }

    fn comm(a: &FreeWord, b: &FreeWord) -> FreeWord {
        FreeWord::commutator(a, b).unwrap()
    }

    fn poly(rank: usize, cap: usize, terms: &[(&[usize], i64)]) -> MagnusPolynomial {
        MagnusPolynomial::from_terms(
            rank,
            cap,
            terms.iter().map(|(m, c)| (m.to_vec(), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn expand_generator() {
        let e = magnus_expand(&gen(2, 1), 3).unwrap();
        assert_eq!(e, poly(2, 3, &[(&[], 1), (&[1], 1)]));
    }

    #[test]
    fn expand_inverse_generator() {
        let w = gen(1, 1).inverse();
        let e = magnus_expand(&w, 2).unwrap();
        assert_eq!(e, poly(1, 2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]));
    }

    #[test]
    fn expand_commutator() {
        // (1+h1)(1+h2)(1-h1+h1²)(1-h2+h2²) = 1 + h1h2 - h2h1 through degree 2
        let w = comm(&gen(2, 1), &gen(2, 2));
        let e = magnus_expand(&w, 2).unwrap();
        assert_eq!(e, poly(2, 2, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)]));
    }

    #[test]
    fn expand_rejects_zero_cap() {
        assert_eq!(magnus_expand(&gen(1, 1), 0), Err(MagnusError::ZeroCap));
    }

    #[test]
    fn lcs_membership_of_commutator() {
        let w = comm(&gen(2, 1), &gen(2, 2));
        assert!(lcs_member(&w, 1));
        assert!(lcs_member(&w, 2));
        assert!(!lcs_member(&w, 3));
        assert!(lcs_member(&FreeWord::identity(3).unwrap(), 10));
        assert!(!lcs_member(&gen(2, 1), 2));
    }

    fn hopf() -> Vec<FreeWord> {
        vec![gen(2, 2), gen(2, 1)]
    }

    fn borromean() -> Vec<FreeWord> {
        vec![
            comm(&gen(3, 2), &gen(3, 3)),
            comm(&gen(3, 3), &gen(3, 1)),
            comm(&gen(3, 1), &gen(3, 2)),
        ]
    }

    #[test]
    fn mu_bar_hopf_linking_number() {
        assert_eq!(
            mu_bar(&hopf(), &[2, 1], Strictness::Strict).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            mu_bar(&hopf(), &[1, 2], Strictness::Strict).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn mu_bar_borromean_triple() {
        let l = borromean();
        assert_eq!(
            mu_bar(&l, &[2, 3, 1], Strictness::Strict).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            mu_bar(&l, &[3, 2, 1], Strictness::Strict).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn mu_bar_unlink_vanishes() {
        let l = vec![FreeWord::identity(3).unwrap(); 3];
        for idx in [&[1, 2][..], &[2, 3, 1], &[1, 1, 2, 3]] {
            assert!(mu_bar(&l, idx, Strictness::Strict).unwrap().is_zero());
        }
    }

    #[test]
    fn mu_bar_strict_rejects_nonfirst_invariant() {
        let err = mu_bar(&hopf(), &[1, 2, 1], Strictness::Strict).unwrap_err();
        assert!(matches!(
            err,
            MagnusError::LowerDegreeNonzero { length: 3, .. }
        ));
        // unchecked mode just reads the coefficient
        assert!(mu_bar(&hopf(), &[1, 2, 1], Strictness::Unchecked).is_ok());
    }

    #[test]
    fn mu_bar_rejects_bad_indices() {
        assert!(matches!(
            mu_bar(&hopf(), &[1], Strictness::Strict),
            Err(MagnusError::IndexSequenceTooShort { len: 1 })
        ));
        assert!(matches!(
            mu_bar(&hopf(), &[1, 3], Strictness::Strict),
            Err(MagnusError::GeneratorOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn degree_examples() {
        let v = link_degree(&hopf(), 4).unwrap();
        assert_eq!(v.exact(), Some(1));
        assert_eq!(v.witness().unwrap().to_string(), "mu(21)=1");

        let v = link_degree(&borromean(), 4).unwrap();
        assert_eq!(v.exact(), Some(2));
        assert_eq!(v.witness().unwrap().to_string(), "mu(231)=1");

        let unlink = vec![FreeWord::identity(2).unwrap(); 2];
        assert_eq!(link_degree(&unlink, 6).unwrap(), DegreeVerdict::AtLeast(6));
    }

    #[test]
    fn degree_rejects_mismatched_ranks() {
        let l = vec![gen(2, 2), gen(3, 1)];
        assert!(matches!(
            link_degree(&l, 3),
            Err(MagnusError::RankMismatch { .. })
        ));
        let l = vec![gen(3, 2), gen(3, 1)];
        assert!(matches!(
            link_degree(&l, 3),
            Err(MagnusError::LongitudeCount { .. })
        ));
        assert!(matches!(
            link_degree(&hopf(), 1),
            Err(MagnusError::CapTooSmall { .. })
        ));
    }

    #[test]
    fn verdict_min() {
        let e2 = DegreeVerdict::Exact {
            degree: 2,
            witness: None,
        };
        let e3 = DegreeVerdict::Exact {
            degree: 3,
            witness: None,
        };
        assert_eq!(e2.min(&e3), e2);
        assert_eq!(e3.min(&DegreeVerdict::AtLeast(5)), e3);
        assert_eq!(
            e3.min(&DegreeVerdict::AtLeast(2)),
            DegreeVerdict::AtLeast(2)
        );
        assert_eq!(
            DegreeVerdict::AtLeast(4).min(&DegreeVerdict::AtLeast(6)),
            DegreeVerdict::AtLeast(4)
        );
    }

    #[test]
    fn index_sequence_display() {
        assert_eq!(IndexSequence(vec![2, 3, 1]).to_string(), "231");
        assert_eq!(IndexSequence(vec![2, 11, 1]).to_string(), "2,11,1");
    }
}
