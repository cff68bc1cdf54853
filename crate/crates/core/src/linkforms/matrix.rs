#![allow(clippy::needless_range_loop)]
//! Symmetric integer matrices, Smith normal form, and the splitting
//! `PᵀAP = 0 ⊕ core` with `core` nonsingular.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CyclicForm, FormError};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// A square symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymIntMatrix {
    rows: IntMatrix,
}

impl SymIntMatrix {
    pub fn new(rows: IntMatrix) -> Result<Self, FormError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(FormError::NotSquare {
                row: bad + 1,
                len: rows[bad].len(),
                size: n,
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(FormError::NotSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(SymIntMatrix { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, FormError> {
        SymIntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, &e) in entries.iter().enumerate() {
            rows[i][i] = BigInt::from(e);
        }
        SymIntMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    /// Block sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &SymIntMatrix) -> SymIntMatrix {
        let (a, b) = (self.size(), other.size());
        let mut rows = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            rows[i][..a].clone_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            rows[a + i][a..].clone_from_slice(&other.rows[i]);
        }
        SymIntMatrix { rows }
    }

    /// The congruent matrix `PᵀAP`. `p` must be square of the same size.
    pub fn congruence(&self, p: &IntMatrix) -> SymIntMatrix {
        let ap = mat_mul(&self.rows, p);
        SymIntMatrix {
            rows: mat_mul(&transpose(p), &ap),
        }
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.rows)
    }

    /// Dimension of the rational kernel.
    pub fn nullity(&self) -> usize {
        self.size() - rational_rref(&self.rows).1.len()
    }
}

impl fmt::Display for SymIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Reduced row echelon form over `Q`; returns the matrix and pivot columns.
fn rational_rref(a: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (m, pivots)
}

/// The canonical primitive kernel vector: the rational kernel basis vector
/// of the first free column, cleared of denominators, divided by its content
/// and signed so the first nonzero entry is positive.
pub fn primitive_null_vector(a: &IntMatrix) -> Option<Vec<BigInt>> {
    let cols = a.first().map_or(0, Vec::len);
    let (rref, pivots) = rational_rref(a);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -rref[row][free].clone();
    }
    let denom = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &denom).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    for x in ints.iter_mut() {
        *x /= &content;
    }
    if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    Some(ints)
}

/// A unimodular matrix whose first column is the primitive vector `v`.
///
/// Built by reducing `v` to `e_1` with elementary row operations (Euclid on
/// the entries) and inverting the accumulated transformation.
pub fn complete_to_basis(v: &[BigInt]) -> IntMatrix {
    let n = v.len();
    let mut v = v.to_vec();
    // p tracks the inverse of the row operations applied to v so far, as
    // column operations: W v = current, p = W^{-1}.
    let mut p = identity(n);
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        let Some(&piv) = nonzero
            .iter()
            .min_by(|&&i, &&j| v[i].abs().cmp(&v[j].abs()))
        else {
            break;
        };
        let mut done = true;
        for &j in &nonzero {
            if j == piv {
                continue;
            }
            let c = v[j].div_floor(&v[piv]);
            if c.is_zero() {
                continue;
            }
            // row_j -= c row_piv on v  <=>  col_piv += c col_j on p
            v[j] = &v[j] - &c * &v[piv];
            for row in p.iter_mut() {
                let add = &c * &row[j];
                row[piv] += add;
            }
            if !v[j].is_zero() {
                done = false;
            }
        }
        if done {
            if piv != 0 {
                v.swap(0, piv);
                for row in p.iter_mut() {
                    row.swap(0, piv);
                }
            }
            if v[0].is_negative() {
                v[0] = -&v[0];
                for row in p.iter_mut() {
                    row[0] = -&row[0];
                }
            }
            break;
        }
    }
    p
}

/// Result of [`block_decompose`]: `Pᵀ A P = 0_{nullity} ⊕ core`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub nullity: usize,
    pub core: SymIntMatrix,
    pub change_of_basis: IntMatrix,
}

/// Splits off the kernel one primitive null vector at a time: each vector is
/// completed to a unimodular basis, which makes its row and column vanish,
/// and the remaining block is treated the same way.
pub fn block_decompose(a: &SymIntMatrix) -> BlockDecomposition {
    let n = a.size();
    let mut p_total = identity(n);
    let mut current = a.clone();
    let mut nullity = 0;
    while current.size() > 0 {
        let Some(v) = primitive_null_vector(&current.rows) else {
            break;
        };
        let p = complete_to_basis(&v);
        let reduced = current.congruence(&p);
        // embed p as 1_{nullity} ⊕ p
        let m = current.size();
        let mut lifted = identity(n);
        for i in 0..m {
            for j in 0..m {
                lifted[nullity + i][nullity + j] = p[i][j].clone();
            }
        }
        p_total = mat_mul(&p_total, &lifted);
        nullity += 1;
        current = SymIntMatrix {
            rows: reduced.rows[1..].iter().map(|r| r[1..].to_vec()).collect(),
        };
    }
    BlockDecomposition {
        nullity,
        core: current,
        change_of_basis: p_total,
    }
}

/// Smith normal form `U A V = D` with `U`, `V` unimodular and
/// `d_1 | d_2 | ...` nonnegative. Also returns `U^{-1}`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);

    // row_i += c row_j
    let add_row = |m: &mut IntMatrix,
                   u: &mut IntMatrix,
                   u_inv: &mut IntMatrix,
                   i: usize,
                   j: usize,
                   c: &BigInt| {
        for k in 0..m[0].len() {
            let d = c * &m[j][k];
            m[i][k] += d;
        }
        for k in 0..u[0].len() {
            let d = c * &u[j][k];
            u[i][k] += d;
        }
        for row in u_inv.iter_mut() {
            let d = c * &row[i];
            row[j] -= d;
        }
    };
    // col_i += c col_j
    let add_col = |m: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, c: &BigInt| {
        for row in m.iter_mut() {
            let d = c * &row[j];
            row[i] += d;
        }
        for row in v.iter_mut() {
            let d = c * &row[j];
            row[i] += d;
        }
    };

    let limit = rows.min(cols);
    for t in 0..limit {
        loop {
            // smallest nonzero entry of the trailing block to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            if bi != t {
                m.swap(bi, t);
                u.swap(bi, t);
                for row in u_inv.iter_mut() {
                    row.swap(bi, t);
                }
            }
            if bj != t {
                for row in m.iter_mut() {
                    row.swap(bj, t);
                }
                for row in v.iter_mut() {
                    row.swap(bj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let c = -m[i][t].div_floor(&m[t][t]);
                    add_row(&mut m, &mut u, &mut u_inv, i, t, &c);
                    clean &= m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let c = -m[t][j].div_floor(&m[t][t]);
                    add_col(&mut m, &mut v, j, t, &c);
                    clean &= m[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pull a non-multiple into row t and retry
            let pivot = m[t][t].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => add_row(&mut m, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
            for row in u_inv.iter_mut() {
                row[t] = -&row[t];
            }
        }
    }
    SmithForm {
        diagonal: (0..limit).map(|i| m[i][i].clone()).collect(),
        u,
        u_inv,
        v,
    }
}

/// Invariant factors of the cokernel `Z^n / A Z^n` that exceed one
/// (zeros stand for free summands).
pub fn cokernel_invariants(a: &SymIntMatrix) -> Vec<BigInt> {
    smith_normal_form(&a.rows)
        .diagonal
        .into_iter()
        .filter(|d| !d.is_one())
        .collect()
}

/// The linking form on the torsion of `coker A`, provided that torsion is cyclic.
///
/// The kernel is split off first; on the nonsingular core `𝔸` a generator
/// `x` of the cokernel is read off the Smith form and its self-linking is
/// `xᵀ𝔸⁻¹x mod 1`. The result is the isomorphism-class representative with
/// the smallest `q`.
pub fn cyclic_form_of_matrix(a: &SymIntMatrix) -> Result<CyclicForm, FormError> {
    let core = block_decompose(a).core;
    let m = core.size();
    if m == 0 {
        return Ok(CyclicForm::trivial());
    }
    let snf = smith_normal_form(&core.rows);
    let torsion: Vec<BigInt> = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    if torsion.len() > 1 {
        return Err(FormError::NonCyclicTorsion { factors: torsion });
    }
    let Some(order) = torsion.first() else {
        return Ok(CyclicForm::trivial());
    };
    let n = order.to_u64().ok_or_else(|| FormError::OrderTooLarge {
        order: order.clone(),
    })?;
    // generator: U^{-1} e_last
    let x: Vec<BigInt> = snf.u_inv.iter().map(|row| row[m - 1].clone()).collect();
    let y = solve_rational(&core.rows, &x);
    let self_link: BigRational = x
        .iter()
        .zip(&y)
        .fold(BigRational::zero(), |acc, (xi, yi)| acc + yi * xi);
    let scaled = self_link * BigRational::from_integer(order.clone());
    debug_assert!(scaled.is_integer(), "self-linking has denominator n");
    let q = scaled
        .to_integer()
        .mod_floor(order)
        .to_u64()
        .expect("below n");
    Ok(CyclicForm::new_unsigned(q, n)?.canonical())
}

/// Solves `A y = b` for nonsingular `A` over `Q`.
fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Vec<BigRational> {
    let n = a.len();
    let aug: IntMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    // rational_rref wants integer input; the augmented column never pivots
    // for nonsingular A
    let (rref, pivots) = rational_rref(&aug);
    debug_assert_eq!(pivots, (0..n).collect::<Vec<_>>());
    (0..n).map(|i| rref[i][n].clone()).collect()
}
