//! Dense evaluation of Magnus expansions.
//!
//! A truncated series in `r` variables up to degree `D` is laid out as one
//! flat array: the block for degree `j` holds `r^j` coefficients indexed by
//! the base-`r` code of the monomial, most significant index first, so codes
//! within a block increase in lexicographic order. Right multiplication by
//! `1 + h_i` or its inverse then only touches adjacent blocks.
//!
//! Coefficients start out as `i128` with checked arithmetic; an overflow
//! restarts the expansion with `BigInt` coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::{MagnusPolynomial, Monomial};
use super::word::{FreeWord, Letter};

/// Above this many coefficients the sparse engine is used instead.
const DENSE_LIMIT: usize = 1 << 22;

pub(crate) trait Coeff: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    /// Returns false on overflow.
    fn add_in(&mut self, rhs: &Self) -> bool;
    fn sub_in(&mut self, rhs: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add_in(&mut self, rhs: &Self) -> bool {
        match self.checked_add(*rhs) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn sub_in(&mut self, rhs: &Self) -> bool {
        match self.checked_sub(*rhs) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_in(&mut self, rhs: &Self) -> bool {
        *self += rhs;
        true
    }
    fn sub_in(&mut self, rhs: &Self) -> bool {
        *self -= rhs;
        true
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) struct DenseSeries<C> {
    rank: usize,
    cap: usize,
    /// `offsets[j]` is the start of the degree-`j` block; `offsets[cap + 1]` is the length.
    offsets: Vec<usize>,
    coef: Vec<C>,
}

fn layout(rank: usize, cap: usize) -> Option<Vec<usize>> {
    let mut offsets = Vec::with_capacity(cap + 2);
    let mut total = 0usize;
    let mut block = 1usize;
    for _ in 0..=cap {
        offsets.push(total);
        total = total.checked_add(block)?;
        block = block.checked_mul(rank)?;
    }
    offsets.push(total);
    (total <= DENSE_LIMIT).then_some(offsets)
}

impl<C: Coeff> DenseSeries<C> {
    fn one(rank: usize, cap: usize, offsets: Vec<usize>) -> Self {
        let mut coef = vec![C::nil(); offsets[cap + 1]];
        coef[0] = C::unit();
        DenseSeries {
            rank,
            cap,
            offsets,
            coef,
        }
    }

    /// Right-multiplies by `e(letter)`. Returns false on coefficient overflow.
    fn mul_letter(&mut self, letter: Letter) -> bool {
        let g = letter.generator() - 1;
        let r = self.rank;
        let mut step = |len: usize, inverted: bool| -> bool {
            let (lo, hi) = self.coef.split_at_mut(self.offsets[len]);
            let src = &lo[self.offsets[len - 1]..];
            for (c, s) in src.iter().enumerate() {
                if s.is_nil() {
                    continue;
                }
                let dst = &mut hi[c * r + g];
                let ok = if inverted {
                    dst.sub_in(s)
                } else {
                    dst.add_in(s)
                };
                if !ok {
                    return false;
                }
            }
            true
        };
        if letter.is_inverted() {
            // Q (1 + h) = P, solved upward so each source is already final.
            (1..=self.cap).all(|len| step(len, true))
        } else {
            // Downward so each source still holds its old value.
            (1..=self.cap).rev().all(|len| step(len, false))
        }
    }

    fn block(&self, degree: usize) -> &[C] {
        &self.coef[self.offsets[degree]..self.offsets[degree + 1]]
    }

    fn decode(&self, degree: usize, mut code: usize) -> Monomial {
        let mut v = vec![0u16; degree];
        for slot in v.iter_mut().rev() {
            *slot = (code % self.rank) as u16 + 1;
            code /= self.rank;
        }
        Monomial::from_raw(v)
    }

    fn encode(&self, indices: &[usize]) -> usize {
        indices.iter().fold(0, |acc, &i| acc * self.rank + (i - 1))
    }

    fn lowest_nonconstant_degree(&self) -> Option<usize> {
        (1..=self.cap).find(|&d| self.block(d).iter().any(|c| !c.is_nil()))
    }

    fn first_term(&self, degree: usize) -> Option<(Monomial, BigInt)> {
        self.block(degree)
            .iter()
            .position(|c| !c.is_nil())
            .map(|code| (self.decode(degree, code), self.block(degree)[code].to_big()))
    }

    fn coefficient(&self, indices: &[usize]) -> BigInt {
        if indices.len() > self.cap {
            return BigInt::zero();
        }
        self.block(indices.len())[self.encode(indices)].to_big()
    }

    fn to_polynomial(&self) -> MagnusPolynomial {
        let mut p = MagnusPolynomial::zero(self.rank, self.cap);
        for d in 0..=self.cap {
            for (code, c) in self.block(d).iter().enumerate() {
                if !c.is_nil() {
                    p.add_term(self.decode(d, code), c.to_big());
                }
            }
        }
        p
    }
}

fn expand_with<C: Coeff>(w: &FreeWord, cap: usize, offsets: Vec<usize>) -> Option<DenseSeries<C>> {
    let mut s = DenseSeries::<C>::one(w.rank(), cap, offsets);
    for &l in w.letters() {
        if !s.mul_letter(l) {
            return None;
        }
    }
    Some(s)
}

/// Magnus expansion of a word, held in whichever representation fits.
pub(crate) enum Expansion {
    Small(DenseSeries<i128>),
    Big(DenseSeries<BigInt>),
    Sparse(MagnusPolynomial),
}

impl Expansion {
    /// Expands `w` up to degree `cap` (caller guarantees `cap >= 1`).
    pub(crate) fn of(w: &FreeWord, cap: usize) -> Expansion {
        match layout(w.rank(), cap) {
            Some(offsets) => match expand_with::<i128>(w, cap, offsets.clone()) {
                Some(s) => Expansion::Small(s),
                None => Expansion::Big(
                    expand_with::<BigInt>(w, cap, offsets)
                        .expect("BigInt arithmetic cannot overflow"),
                ),
            },
            None => Expansion::Sparse(sparse_expand(w, cap)),
        }
    }

    pub(crate) fn lowest_nonconstant_degree(&self) -> Option<usize> {
        match self {
            Expansion::Small(s) => s.lowest_nonconstant_degree(),
            Expansion::Big(s) => s.lowest_nonconstant_degree(),
            Expansion::Sparse(p) => p.lowest_nonconstant_degree(),
        }
    }

    /// Lexicographically first nonzero term of the given degree.
    pub(crate) fn first_term(&self, degree: usize) -> Option<(Monomial, BigInt)> {
        match self {
            Expansion::Small(s) => s.first_term(degree),
            Expansion::Big(s) => s.first_term(degree),
            Expansion::Sparse(p) => p
                .homogeneous_part(degree)
                .first()
                .map(|(m, c)| ((*m).clone(), (*c).clone())),
        }
    }

    pub(crate) fn coefficient(&self, indices: &[usize]) -> BigInt {
        match self {
            Expansion::Small(s) => s.coefficient(indices),
            Expansion::Big(s) => s.coefficient(indices),
            Expansion::Sparse(p) => p.coefficient(indices),
        }
    }

    pub(crate) fn into_polynomial(self) -> MagnusPolynomial {
        match self {
            Expansion::Small(s) => s.to_polynomial(),
            Expansion::Big(s) => s.to_polynomial(),
            Expansion::Sparse(p) => p,
        }
    }
}

fn sparse_expand(w: &FreeWord, cap: usize) -> MagnusPolynomial {
    let rank = w.rank();
    let mut acc = MagnusPolynomial::one(rank, cap);
    for &l in w.letters() {
        let factor = if l.is_inverted() {
            MagnusPolynomial::generator_inverse(rank, cap, l.generator())
        } else {
            MagnusPolynomial::generator(rank, cap, l.generator())
        }
        .expect("letters of a FreeWord are in range");
        acc = &acc * &factor;
    }
    acc
}
