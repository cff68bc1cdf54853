//! Words in the free group on meridian generators `m_1, ..., m_r`.

use std::fmt;

use super::MagnusError;

/// A single letter `m_i` or `m_i^-1`. Generator indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u16,
    inverted: bool,
}

impl Letter {
    pub fn new(generator: usize, inverted: bool) -> Self {
        assert!(
            generator >= 1 && generator <= u16::MAX as usize,
            "generator index {generator} outside 1..=65535"
        );
        Letter {
            generator: generator as u16,
            inverted,
        }
    }

    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn is_inverted(self) -> bool {
        self.inverted
    }

    /// Exponent of the letter, `+1` or `-1`.
    pub fn exponent(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverted: !self.inverted,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "m{}^-1", self.generator)
        } else {
            write!(f, "m{}", self.generator)
        }
    }
}

/// A freely reduced word in the free group of rank `rank`.
///
/// Words are reduced on construction, so two words are equal as group
/// elements exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Builds a word, validating generator indices and freely reducing.
    pub fn new(rank: usize, letters: Vec<Letter>) -> Result<Self, MagnusError> {
        if rank == 0 {
            return Err(MagnusError::ZeroRank);
        }
        if rank > u16::MAX as usize {
            return Err(MagnusError::RankTooLarge { rank });
        }
        if let Some(bad) = letters
            .iter()
            .find(|l| l.generator() == 0 || l.generator() > rank)
        {
            return Err(MagnusError::GeneratorOutOfRange {
                index: bad.generator(),
                rank,
            });
        }
        Ok(FreeWord {
            rank,
            letters: reduce(letters),
        })
    }

    /// Builds a word from `(generator, exponent)` pairs; exponents must be `±1`.
    pub fn from_pairs(rank: usize, pairs: &[(usize, i8)]) -> Result<Self, MagnusError> {
        let mut letters = Vec::with_capacity(pairs.len());
        for &(g, e) in pairs {
            if g == 0 || g > rank {
                return Err(MagnusError::GeneratorOutOfRange { index: g, rank });
            }
            match e {
                1 => letters.push(Letter::new(g, false)),
                -1 => letters.push(Letter::new(g, true)),
                _ => return Err(MagnusError::BadExponent { exponent: e }),
            }
        }
        FreeWord::new(rank, letters)
    }

    pub fn identity(rank: usize) -> Result<Self, MagnusError> {
        FreeWord::new(rank, Vec::new())
    }

    /// The generator `m_i`.
    pub fn generator(rank: usize, i: usize) -> Result<Self, MagnusError> {
        if i == 0 || i > rank {
            return Err(MagnusError::GeneratorOutOfRange { index: i, rank });
        }
        FreeWord::new(rank, vec![Letter::new(i, false)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether the letter `m_i^{±1}` occurs anywhere in the word.
    pub fn mentions(&self, i: usize) -> bool {
        self.letters.iter().any(|l| l.generator() == i)
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &FreeWord) -> Result<Self, MagnusError> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(FreeWord {
            rank: self.rank,
            letters: reduce(letters),
        })
    }

    /// Commutator `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Result<Self, MagnusError> {
        a.check_rank(b)?;
        let mut letters = Vec::with_capacity(2 * (a.len() + b.len()));
        letters.extend_from_slice(&a.letters);
        letters.extend_from_slice(&b.letters);
        letters.extend(a.letters.iter().rev().map(|l| l.inverse()));
        letters.extend(b.letters.iter().rev().map(|l| l.inverse()));
        Ok(FreeWord {
            rank: a.rank,
            letters: reduce(letters),
        })
    }

    /// Conjugate `g w g^-1`.
    pub fn conjugate_by(&self, g: &FreeWord) -> Result<Self, MagnusError> {
        g.mul(self)?.mul(&g.inverse())
    }

    /// `w^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        FreeWord {
            rank: self.rank,
            letters: reduce(letters),
        }
    }

    /// Reinterprets the word in a free group of larger rank, shifting every
    /// generator index by `offset`.
    pub fn embed(&self, new_rank: usize, offset: usize) -> Result<Self, MagnusError> {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new(l.generator() + offset, l.is_inverted()))
            .collect();
        FreeWord::new(new_rank, letters)
    }

    /// Applies the homomorphism sending `m_i` to `image(i)`.
    ///
    /// All images must have rank `new_rank`.
    pub fn substitute<F>(&self, new_rank: usize, mut image: F) -> Result<Self, MagnusError>
    where
        F: FnMut(usize) -> FreeWord,
    {
        let mut letters = Vec::new();
        for l in &self.letters {
            let w = image(l.generator());
            if w.rank != new_rank {
                return Err(MagnusError::RankMismatch {
                    left: new_rank,
                    right: w.rank,
                });
            }
            if l.is_inverted() {
                letters.extend(w.letters.iter().rev().map(|x| x.inverse()));
            } else {
                letters.extend_from_slice(&w.letters);
            }
        }
        FreeWord::new(new_rank, letters)
    }

    fn check_rank(&self, other: &FreeWord) -> Result<(), MagnusError> {
        if self.rank != other.rank {
            return Err(MagnusError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(&top) if top == l.inverse() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, pairs: &[(usize, i8)]) -> FreeWord {
        FreeWord::from_pairs(rank, pairs).unwrap()
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let word = w(2, &[(1, 1), (2, 1), (2, -1), (1, -1), (2, 1)]);
        assert_eq!(word, w(2, &[(2, 1)]));
    }

    #[test]
    fn commutator_expands_to_four_letters() {
        let a = FreeWord::generator(3, 2).unwrap();
        let b = FreeWord::generator(3, 3).unwrap();
        let c = FreeWord::commutator(&a, &b).unwrap();
        assert_eq!(c.to_string(), "m2 m3 m2^-1 m3^-1");
        assert!(FreeWord::commutator(&a, &a).unwrap().is_identity());
    }

    #[test]
    fn rejects_out_of_range_generator() {
        assert!(matches!(
            FreeWord::from_pairs(3, &[(4, 1)]),
            Err(MagnusError::GeneratorOutOfRange { index: 4, rank: 3 })
        ));
        assert!(FreeWord::from_pairs(3, &[(0, 1)]).is_err());
        assert!(FreeWord::from_pairs(3, &[(1, 2)]).is_err());
        assert!(matches!(FreeWord::identity(0), Err(MagnusError::ZeroRank)));
    }

    #[test]
    fn inverse_and_pow() {
        let word = w(2, &[(1, 1), (2, -1)]);
        assert!(word.mul(&word.inverse()).unwrap().is_identity());
        assert_eq!(word.pow(-2), word.inverse().pow(2));
        assert!(word.pow(0).is_identity());
    }

    #[test]
    fn substitute_replaces_generators() {
        let word = w(2, &[(2, 1), (1, -1)]);
        let out = word
            .substitute(3, |g| match g {
                2 => FreeWord::commutator(
                    &FreeWord::generator(3, 2).unwrap(),
                    &FreeWord::generator(3, 3).unwrap(),
                )
                .unwrap(),
                other => FreeWord::generator(3, other).unwrap(),
            })
            .unwrap();
        assert_eq!(out.to_string(), "m2 m3 m2^-1 m3^-1 m1^-1");
    }

    #[test]
    fn embed_shifts_indices() {
        let word = w(2, &[(1, 1), (2, -1)]);
        assert_eq!(word.embed(5, 3).unwrap().to_string(), "m4 m5^-1");
    }
}
