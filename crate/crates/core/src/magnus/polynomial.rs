//! Truncated power series in noncommuting variables `h_1, ..., h_r` with
//! arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::MagnusError;

/// A noncommutative monomial `h_{i_1} ... h_{i_k}`, stored as its 1-based
/// index sequence. The empty monomial is the constant term.
///
/// Ordering is lexicographic on the index sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial(indices.iter().map(|&i| i as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.indices().collect()
    }

    fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub(crate) fn from_raw(v: Vec<u16>) -> Self {
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for i in &self.0 {
            write!(f, "h{i}")?;
        }
        Ok(())
    }
}

/// An element of `Z<<h_1, ..., h_r>>` truncated above total degree `cap`.
///
/// Zero coefficients are never stored and no monomial exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusPolynomial {
    rank: usize,
    cap: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MagnusPolynomial {
    pub fn zero(rank: usize, cap: usize) -> Self {
        MagnusPolynomial {
            rank,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, cap: usize) -> Self {
        let mut p = Self::zero(rank, cap);
        p.terms.insert(Monomial::one(), BigInt::one());
        p
    }

    /// `e(m_i) = 1 + h_i`.
    pub fn generator(rank: usize, cap: usize, i: usize) -> Result<Self, MagnusError> {
        check_index(rank, i)?;
        let mut p = Self::one(rank, cap);
        p.add_term(Monomial::from_indices(&[i]), BigInt::one());
        Ok(p)
    }

    /// `e(m_i^-1) = 1 - h_i + h_i^2 - ...`, truncated at the cap.
    pub fn generator_inverse(rank: usize, cap: usize, i: usize) -> Result<Self, MagnusError> {
        check_index(rank, i)?;
        let mut p = Self::zero(rank, cap);
        for j in 0..=cap {
            let c = if j % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            p.add_term(Monomial::from_indices(&vec![i; j]), c);
        }
        Ok(p)
    }

    /// Builds a polynomial from explicit terms; terms above the cap are dropped.
    pub fn from_terms<I>(rank: usize, cap: usize, terms: I) -> Result<Self, MagnusError>
    where
        I: IntoIterator<Item = (Vec<usize>, BigInt)>,
    {
        let mut p = Self::zero(rank, cap);
        for (idx, c) in terms {
            for &i in &idx {
                check_index(rank, i)?;
            }
            p.add_term(Monomial::from_indices(&idx), c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, indices: &[usize]) -> BigInt {
        self.terms
            .get(&Monomial::from_indices(indices))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    /// Smallest degree `>= 1` carrying a nonzero coefficient.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .filter(|&d| d > 0)
            .min()
    }

    /// Terms of exactly the given degree, in lexicographic order.
    pub fn homogeneous_part(&self, degree: usize) -> Vec<(&Monomial, &BigInt)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree() == degree)
            .collect()
    }

    /// Drops every term of degree above `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        MagnusPolynomial {
            rank: self.rank,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Truncated product; the result keeps the smaller of the two caps.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, MagnusError> {
        if self.rank != other.rank {
            return Err(MagnusError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.rank, cap);
        for (ma, ca) in &self.terms {
            if ma.degree() > cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > cap {
                    continue;
                }
                out.add_term(ma.concat(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn retain<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        MagnusPolynomial {
            rank: self.rank,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Inverse of a series with constant term 1: `Σ (1 - p)^n` through the cap.
    pub fn checked_inverse(&self) -> Result<Self, MagnusError> {
        let constant = self.terms.get(&Monomial::one());
        if !constant.is_some_and(|c| c.is_one()) {
            return Err(MagnusError::NotInvertible);
        }
        let mut minus_tail = Self::zero(self.rank, self.cap);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() > 0) {
            minus_tail.add_term(m.clone(), -c);
        }
        let mut out = Self::one(self.rank, self.cap);
        let mut power = Self::one(self.rank, self.cap);
        for _ in 0..self.cap {
            power = power.checked_mul(&minus_tail)?;
            if power.is_empty() {
                break;
            }
            for (m, c) in &power.terms {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Group commutator `a b a^-1 b^-1` of two invertible series.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, MagnusError> {
        a.checked_mul(b)?
            .checked_mul(&a.checked_inverse()?)?
            .checked_mul(&b.checked_inverse()?)
    }

    /// The algebra map sending `h_i` to `images[i - 1]`, which must have no
    /// constant term and share one rank. Applying it to `e(w)` gives
    /// `e(φ(w))` for the free-group map `φ` with `e(φ(m_i)) = 1 + images[i-1]`.
    pub fn substitute(&self, images: &[MagnusPolynomial]) -> Result<Self, MagnusError> {
        if images.len() != self.rank {
            return Err(MagnusError::LongitudeCount {
                rank: self.rank,
                count: images.len(),
            });
        }
        let new_rank = images.first().map_or(self.rank, |p| p.rank);
        if let Some(bad) = images.iter().find(|p| p.rank != new_rank) {
            return Err(MagnusError::RankMismatch {
                left: new_rank,
                right: bad.rank,
            });
        }
        if images
            .iter()
            .any(|p| p.terms.contains_key(&Monomial::one()))
        {
            return Err(MagnusError::NotInvertible);
        }
        let cap = images.iter().fold(self.cap, |c, p| c.min(p.cap));
        let mut out = Self::zero(new_rank, cap);
        // memoized images of monomial prefixes, shared across the sorted terms
        let mut cache: BTreeMap<Monomial, MagnusPolynomial> = BTreeMap::new();
        cache.insert(Monomial::one(), Self::one(new_rank, cap));
        for (m, c) in &self.terms {
            let mut prefix = Monomial::one();
            let mut acc = cache[&prefix].clone();
            for i in m.indices() {
                prefix.0.push(i as u16);
                acc = match cache.get(&prefix) {
                    Some(p) => p.clone(),
                    None => {
                        let next = acc.checked_mul(&images[i - 1])?;
                        cache.insert(prefix.clone(), next.clone());
                        next
                    }
                };
                if acc.is_empty() {
                    break;
                }
            }
            for (mm, cc) in &acc.terms {
                out.add_term(mm.clone(), cc * c);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.degree() > self.cap || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Mul for &MagnusPolynomial {
    type Output = MagnusPolynomial;

    /// Panics on rank mismatch; use [`MagnusPolynomial::checked_mul`] otherwise.
    fn mul(self, rhs: &MagnusPolynomial) -> MagnusPolynomial {
        self.checked_mul(rhs).expect("rank mismatch in product")
    }
}

impl fmt::Display for MagnusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // graded order reads better than raw lexicographic order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

fn check_index(rank: usize, i: usize) -> Result<(), MagnusError> {
    if i == 0 || i > rank {
        Err(MagnusError::GeneratorOutOfRange { index: i, rank })
    } else {
        Ok(())
    }
}
