//! Torsion linking forms on finite cyclic groups.
//!
//! `(q/n)` is the form on `Z_n` whose generator has self-linking `q/n`.
//! Two forms on `Z_n` are isomorphic when `q' ≡ k²q (mod n)`. A form is
//! simple when isomorphic to `(±1/n)`, semisimple when an orthogonal sum of
//! simple forms; the non-semisimple ones are exactly the linking forms of
//! rational homology spheres of Milnor degree one.

mod matrix;
mod table;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{factorize, gcd, inv_mod, is_prime, legendre, mul_mod, residue};

pub use matrix::{
    block_decompose, cokernel_invariants, complete_to_basis, cyclic_form_of_matrix, determinant,
    identity, mat_mul, primitive_null_vector, smith_normal_form, transpose, BlockDecomposition,
    IntMatrix, SmithForm, SymIntMatrix,
};
pub use table::{lens_representative, table1, write_csv, write_json_lines, write_text, Table1Row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("q = {q} is not prime to n = {n}")]
    NotCoprime { q: i64, n: u64 },
    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },
    #[error("orders {a} and {b} are not relatively prime")]
    OrdersNotCoprime { a: u64, b: u64 },
    #[error("orders multiply to {product}, expected {n}")]
    BadFactorization { product: u64, n: u64 },
    #[error("torsion is not cyclic: invariant factors {}", join(factors))]
    NonCyclicTorsion { factors: Vec<BigInt> },
    #[error("torsion order {order} does not fit in 64 bits")]
    OrderTooLarge { order: BigInt },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
}

fn join(factors: &[BigInt]) -> String {
    factors
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The form `(q/n)` with `q` reduced to `1 <= q < n`, or `(0/1)` on the trivial group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicForm {
    n: u64,
    q: u64,
}

impl CyclicForm {
    pub fn new(q: i64, n: u64) -> Result<Self, FormError> {
        if n == 0 {
            return Err(FormError::ZeroOrder);
        }
        let r = residue(q, n);
        if gcd(r, n) != 1 {
            return Err(FormError::NotCoprime { q, n });
        }
        Ok(CyclicForm { n, q: r })
    }

    pub(crate) fn new_unsigned(q: u64, n: u64) -> Result<Self, FormError> {
        if n == 0 {
            return Err(FormError::ZeroOrder);
        }
        let r = q % n;
        if gcd(r, n) != 1 {
            return Err(FormError::NotCoprime { q: q as i64, n });
        }
        Ok(CyclicForm { n, q: r })
    }

    pub fn trivial() -> Self {
        CyclicForm { n: 1, q: 0 }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The form with the opposite orientation, `(-q/n)`.
    pub fn negate(&self) -> Self {
        CyclicForm {
            n: self.n,
            q: (self.n - self.q) % self.n,
        }
    }

    /// The isomorphic form with the smallest `q`.
    pub fn canonical(&self) -> Self {
        self.min_over(false)
    }

    /// Smallest `q'` with `(q'/n) ≅ (±q/n)`, the representative used in tables.
    pub fn canonical_up_to_sign(&self) -> Self {
        self.min_over(true)
    }

    fn min_over(&self, with_sign: bool) -> Self {
        if self.n <= 2 {
            return *self;
        }
        let inv = inv_mod(self.q, self.n).expect("q is a unit");
        (1..self.n)
            .filter(|&c| gcd(c, self.n) == 1)
            .find(|&c| {
                let ratio = mul_mod(c, inv, self.n);
                is_square_unit(ratio, self.n)
                    || (with_sign && is_square_unit(self.n - ratio, self.n))
            })
            .map(|q| CyclicForm { n: self.n, q })
            .expect("q itself qualifies")
    }
}

impl fmt::Display for CyclicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})", self.q, self.n)
    }
}

/// Whether the unit `u` is a square modulo `n`: a residue modulo every odd
/// prime divisor, and `≡ 1` modulo 4 or 8 when `4 | n` or `8 | n`.
fn is_square_unit(u: u64, n: u64) -> bool {
    factorize(n).into_iter().all(|(p, e)| match p {
        2 => match e {
            1 => true,
            2 => u % 4 == 1,
            _ => u % 8 == 1,
        },
        _ => legendre(u % p, p) == 1,
    })
}

/// `⟨q⟩_n`: `+1` when `q ≡ ±k² (mod n)` for some unit `k`, else `-1`.
///
/// Decided without search: `q` (or `-q`) must be a residue modulo every odd
/// prime divisor, with the same sign choice forcing `q ≡ ±1 (mod gcd(8, n))`.
pub fn pm_qr_symbol(q: i64, n: u64) -> Result<i8, FormError> {
    let f = CyclicForm::new(q, n)?;
    Ok(if pm_qr(f.q, n) { 1 } else { -1 })
}

fn pm_qr(q: u64, n: u64) -> bool {
    if n <= 2 {
        return true;
    }
    is_square_unit(q, n) || is_square_unit(n - q, n)
}

pub fn form_isomorphic(a: &CyclicForm, b: &CyclicForm) -> bool {
    a.n == b.n && a.canonical() == b.canonical()
}

pub fn is_simple(f: &CyclicForm) -> bool {
    pm_qr(f.q, f.n)
}

/// `d` is `q`-quadratic in `n` when `gcd(d, n/d) = 1` and `⟨qd⟩_{n/d} = 1`.
pub fn q_quadratic(d: u64, n: u64, q: i64) -> Result<bool, FormError> {
    let f = CyclicForm::new(q, n)?;
    if d == 0 || !n.is_multiple_of(d) {
        return Err(FormError::NotADivisor { d, n });
    }
    let m = n / d;
    Ok(gcd(d, m) == 1 && pm_qr(mul_mod(f.q, d, m), m))
}

/// Decides semisimplicity by trying every grouping of the prime-power
/// factors of `n` into blocks `n_i`, each of which must carry a simple form
/// `(q n/n_i / n_i)`.
pub fn is_semisimple(f: &CyclicForm) -> bool {
    let parts: Vec<u64> = factorize(f.n).into_iter().map(|(p, e)| p.pow(e)).collect();
    let k = parts.len();
    let full = (1usize << k) - 1;
    let block_simple = |mask: usize| {
        let ni: u64 = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| parts[i])
            .product();
        pm_qr(mul_mod(f.q, f.n / ni, ni), ni)
    };
    // ok[mask]: the factors in mask can be grouped into simple blocks
    let mut ok = vec![false; full + 1];
    ok[0] = true;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if ok[mask ^ block] && block_simple(block) {
                ok[mask] = true;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    ok[full]
}

/// Semisimplicity by peeling off `q`-quadratic factors: `n` splits as a
/// simple block `n/d` (with `d` q-quadratic) plus a semisimple remainder on `Z_d`.
pub fn is_semisimple_by_divisors(f: &CyclicForm) -> bool {
    if f.n == 1 {
        return true;
    }
    crate::arith::divisors(f.n)
        .into_iter()
        .filter(|&d| d != f.n)
        .any(|d| {
            let m = f.n / d;
            gcd(d, m) == 1
                && pm_qr(mul_mod(f.q, d, m), m)
                && is_semisimple_by_divisors(&CyclicForm {
                    n: d,
                    q: mul_mod(f.q, m, d),
                })
        })
}

/// An orthogonal sum of forms on groups of pairwise coprime order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSum {
    summands: Vec<CyclicForm>,
}

impl FormSum {
    pub fn new(summands: Vec<CyclicForm>) -> Result<Self, FormError> {
        for (i, a) in summands.iter().enumerate() {
            for b in &summands[i + 1..] {
                if gcd(a.n, b.n) != 1 {
                    return Err(FormError::OrdersNotCoprime { a: a.n, b: b.n });
                }
            }
        }
        Ok(FormSum { summands })
    }

    pub fn summands(&self) -> &[CyclicForm] {
        &self.summands
    }

    pub fn order(&self) -> u64 {
        self.summands.iter().map(|f| f.n).product()
    }
}

impl fmt::Display for FormSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `⊕ (r_i/n_i) = (q/n)` with `n = ∏ n_i` and `q = Σ r_i n/n_i`.
pub fn form_sum(fs: &FormSum) -> CyclicForm {
    let n = fs.order();
    let q = fs
        .summands
        .iter()
        .fold(0u64, |acc, s| (acc + mul_mod(s.q, n / s.n, n)) % n);
    CyclicForm::new_unsigned(q, n).expect("sum of coprime summands is nondegenerate")
}

/// Splits `(q/n)` along a coprime factorization: `r_i = q · (n/n_i)^{-1} mod n_i`.
pub fn form_split(f: &CyclicForm, orders: &[u64]) -> Result<FormSum, FormError> {
    if orders.contains(&0) {
        return Err(FormError::ZeroOrder);
    }
    let product = orders
        .iter()
        .try_fold(1u64, |acc, &o| acc.checked_mul(o))
        .unwrap_or(0);
    if product != f.n {
        return Err(FormError::BadFactorization { product, n: f.n });
    }
    let mut summands = Vec::with_capacity(orders.len());
    for &ni in orders {
        let s = inv_mod((f.n / ni) % ni, ni).ok_or_else(|| {
            let other = *orders
                .iter()
                .find(|&&o| o != ni && gcd(o, ni) != 1)
                .unwrap_or(&ni);
            FormError::OrdersNotCoprime { a: ni, b: other }
        })?;
        summands.push(CyclicForm::new_unsigned(mul_mod(f.q % ni, s, ni), ni)?);
    }
    FormSum::new(summands)
}

/// Whether `Z_n` carries a non-semisimple form.
pub fn is_linked(n: u64) -> bool {
    units(n).any(|q| !is_semisimple(&CyclicForm { n, q }))
}

/// Whether every semisimple form on `Z_n` is simple.
pub fn is_quasiprime(n: u64) -> bool {
    units(n).all(|q| {
        let f = CyclicForm { n, q };
        !is_semisimple(&f) || is_simple(&f)
    })
}

fn units(n: u64) -> impl Iterator<Item = u64> {
    let start = if n == 1 { 0 } else { 1 };
    (start..n.max(1)).filter(move |&q| gcd(q, n) == 1)
}

/// What the linking form alone says about the Milnor degree of a manifold
/// with `H_1 = Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeOneVerdict {
    /// Non-semisimple form: degree exactly one.
    DegreeOne,
    /// Simple form: the manifold has infinite degree.
    InfiniteDegree,
    /// Semisimple but not simple: degree at least two, otherwise undetermined.
    Unknown,
}

impl fmt::Display for DegreeOneVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeOneVerdict::DegreeOne => "degree one",
            DegreeOneVerdict::InfiniteDegree => "infinite degree",
            DegreeOneVerdict::Unknown => "unknown (degree >= 2)",
        })
    }
}

pub fn degree_one_verdict(f: &CyclicForm) -> DegreeOneVerdict {
    if !is_semisimple(f) {
        DegreeOneVerdict::DegreeOne
    } else if is_simple(f) {
        DegreeOneVerdict::InfiniteDegree
    } else {
        DegreeOneVerdict::Unknown
    }
}

/// Finite Milnor degrees realized by manifolds with `H_1 = Z_{p^e}`.
pub fn milnor_set_prime_power(p: u64, e: u32) -> Result<BTreeSet<u32>, FormError> {
    if !is_prime(p) {
        return Err(FormError::NotPrime { p });
    }
    if e == 0 {
        return Err(FormError::ZeroExponent);
    }
    let mut out = BTreeSet::new();
    if p % 4 == 1 || (p == 2 && e >= 3) {
        out.insert(1);
    }
    Ok(out)
}

/// Stable equivalence of two presentations whose torsion is cyclic: same
/// nullity and isomorphic linking forms.
pub fn stable_equivalent_cyclic(a: &SymIntMatrix, b: &SymIntMatrix) -> Result<bool, FormError> {
    let fa = cyclic_form_of_matrix(a)?;
    let fb = cyclic_form_of_matrix(b)?;
    Ok(a.nullity() == b.nullity() && form_isomorphic(&fa, &fb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(q: i64, n: u64) -> CyclicForm {
        CyclicForm::new(q, n).unwrap()
    }

    /// ∃ unit k with q ≡ ±k² (mod n).
    fn pm_square_oracle(q: u64, n: u64) -> bool {
        (0..n.max(1)).filter(|&k| gcd(k, n) == 1).any(|k| {
            let s = k * k % n;
            s == q % n || (n - s) % n == q % n
        })
    }

    #[test]
    fn construction_normalizes() {
        assert_eq!(cf(-3, 8), cf(5, 8));
        assert_eq!(cf(7, 1), CyclicForm::trivial());
        assert_eq!(
            CyclicForm::new(2, 4),
            Err(FormError::NotCoprime { q: 2, n: 4 })
        );
        assert_eq!(CyclicForm::new(1, 0), Err(FormError::ZeroOrder));
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(pm_qr_symbol(2, 5), Ok(-1));
        assert_eq!(pm_qr_symbol(3, 8), Ok(-1));
        assert_eq!(pm_qr_symbol(7, 8), Ok(1));
        for n in 1..60 {
            assert_eq!(pm_qr_symbol(1, n), Ok(1));
        }
        assert!(pm_qr_symbol(5, 10).is_err());
        // 10 is a residue mod 3 and -10 mod 7, but not ±k² mod 21
        assert_eq!(pm_qr_symbol(10, 21), Ok(-1));
    }

    #[test]
    fn symbol_matches_search_small() {
        for n in 1..=300u64 {
            for q in units(n) {
                assert_eq!(pm_qr(q, n), pm_square_oracle(q, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        assert!(form_isomorphic(&cf(2, 5), &cf(3, 5)));
        assert!(!form_isomorphic(&cf(1, 8), &cf(3, 8)));
        assert!(form_isomorphic(&cf(11, 40), &cf(11, 40)));
        assert!(!form_isomorphic(&cf(1, 5), &cf(1, 7)));
    }

    #[test]
    fn simplicity() {
        assert!(!is_simple(&cf(2, 5)));
        assert!(is_simple(&cf(1, 40)));
        assert!(is_simple(&CyclicForm::trivial()));
        // 7 ≡ -3 (mod 10) and the unit squares mod 10 are {1, 9}
        assert!(!is_simple(&cf(7, 10)));
        assert!(!is_simple(&cf(3, 10)));
    }

    #[test]
    fn q_quadratic_examples() {
        for n in [5u64, 12, 40] {
            assert_eq!(q_quadratic(n, n, 1), Ok(true));
        }
        for q in [1i64, 2, 3] {
            assert_eq!(q_quadratic(1, 5, q), Ok(pm_qr_symbol(q, 5).unwrap() == 1));
        }
        assert_eq!(q_quadratic(2, 10, 3), Ok(true));
        assert_eq!(
            q_quadratic(3, 10, 3),
            Err(FormError::NotADivisor { d: 3, n: 10 })
        );
        assert_eq!(q_quadratic(2, 8, 1), Ok(false));
    }

    #[test]
    fn semisimplicity() {
        assert!(!is_semisimple(&cf(2, 5)));
        assert!(is_semisimple(&cf(3, 10)));
        assert!(is_semisimple(&cf(1, 40)));
        assert!(!is_semisimple(&cf(7, 48)));
        for n in 1..=200u64 {
            for q in units(n) {
                let f = CyclicForm { n, q };
                assert_eq!(is_semisimple(&f), is_semisimple_by_divisors(&f), "{f}");
            }
        }
    }

    #[test]
    fn sums_and_splits() {
        let s = FormSum::new(vec![cf(2, 5), cf(-3, 8)]).unwrap();
        assert_eq!(form_sum(&s), cf(1, 40));
        assert_eq!(
            form_sum(&FormSum::new(vec![cf(1, 3), cf(1, 4)]).unwrap()),
            cf(7, 12)
        );
        assert_eq!(form_sum(&FormSum::new(vec![cf(3, 7)]).unwrap()), cf(3, 7));

        let split = form_split(&cf(1, 40), &[5, 8]).unwrap();
        assert_eq!(split.summands(), &[cf(2, 5), cf(5, 8)]);
        assert!(form_isomorphic(&split.summands()[1], &cf(-3, 8)));
        assert_eq!(
            form_split(&cf(7, 12), &[3, 4]).unwrap().summands(),
            &[cf(1, 3), cf(1, 4)]
        );
        assert_eq!(form_split(&cf(5, 9), &[9]).unwrap().summands(), &[cf(5, 9)]);

        assert!(matches!(
            FormSum::new(vec![cf(1, 4), cf(1, 6)]),
            Err(FormError::OrdersNotCoprime { a: 4, b: 6 })
        ));
        assert!(matches!(
            form_split(&cf(1, 12), &[2, 6]),
            Err(FormError::OrdersNotCoprime { .. })
        ));
        assert!(matches!(
            form_split(&cf(1, 12), &[3, 5]),
            Err(FormError::BadFactorization { .. })
        ));
    }

    #[test]
    fn linked_and_quasiprime() {
        assert!(is_linked(5));
        assert!(!is_linked(7));
        assert!(is_linked(8));
        assert!(is_quasiprime(9));
        assert!(!is_quasiprime(10));
        assert!(!is_quasiprime(24));
        let non_quasi: Vec<u64> = (1..=24).filter(|&n| !is_quasiprime(n)).collect();
        assert_eq!(non_quasi, vec![10, 12, 15, 21, 24]);
    }

    #[test]
    fn prime_powers() {
        for (p, e) in [(3u64, 1u32), (3, 4), (7, 2), (11, 1), (19, 2)] {
            for q in units(p.pow(e)) {
                assert!(is_simple(&CyclicForm { n: p.pow(e), q }));
            }
        }
        assert_eq!(milnor_set_prime_power(5, 1).unwrap(), BTreeSet::from([1]));
        assert!(milnor_set_prime_power(3, 4).unwrap().is_empty());
        assert_eq!(milnor_set_prime_power(2, 3).unwrap(), BTreeSet::from([1]));
        assert!(milnor_set_prime_power(2, 2).unwrap().is_empty());
        assert_eq!(
            milnor_set_prime_power(6, 1),
            Err(FormError::NotPrime { p: 6 })
        );
        // the Milnor set contains 1 exactly for linked orders
        for (p, e) in [
            (2u64, 1u32),
            (2, 2),
            (2, 3),
            (2, 5),
            (3, 2),
            (5, 2),
            (13, 1),
            (7, 2),
        ] {
            let has_one = milnor_set_prime_power(p, e).unwrap().contains(&1);
            assert_eq!(has_one, is_linked(p.pow(e)), "{p}^{e}");
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(degree_one_verdict(&cf(2, 5)), DegreeOneVerdict::DegreeOne);
        assert_eq!(degree_one_verdict(&cf(7, 48)), DegreeOneVerdict::DegreeOne);
        assert_eq!(
            degree_one_verdict(&cf(1, 40)),
            DegreeOneVerdict::InfiniteDegree
        );
        assert_eq!(degree_one_verdict(&cf(3, 10)), DegreeOneVerdict::Unknown);
    }

    #[test]
    fn stable_equivalence() {
        let five = SymIntMatrix::diagonal(&[5]);
        assert_eq!(
            stable_equivalent_cyclic(&five, &SymIntMatrix::diagonal(&[1, 5, -1])),
            Ok(true)
        );
        let other = SymIntMatrix::from_i64(&[vec![3, 1], vec![1, 2]]).unwrap();
        assert_eq!(stable_equivalent_cyclic(&five, &other), Ok(false));
        assert_eq!(
            stable_equivalent_cyclic(&five, &SymIntMatrix::diagonal(&[0, 5])),
            Ok(false)
        );
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(cf(3, 5).canonical(), cf(2, 5));
        assert_eq!(cf(4, 5).canonical(), cf(1, 5));
        assert_eq!(cf(4, 5).canonical_up_to_sign(), cf(1, 5));
        assert_eq!(cf(5, 8).canonical(), cf(5, 8));
        assert_eq!(cf(5, 8).canonical_up_to_sign(), cf(3, 8));
    }
}
