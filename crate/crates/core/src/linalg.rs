//! Exact symmetric rational matrices: determinant, inertia, signature.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::Error;

/// Square symmetric matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymRatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }

    pub fn signature(&self) -> i64 {
        self.n_pos as i64 - self.n_neg as i64
    }

    /// Number of negative eigenvalues.
    pub fn b_minus(&self) -> usize {
        self.n_neg
    }

    /// (-1)^{b_-}
    pub fn parity_sign(&self) -> i64 {
        if self.n_neg % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl SymRatMatrix {
    pub fn empty() -> SymRatMatrix {
        SymRatMatrix { n: 0, entries: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<SymRatMatrix, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPresentation("matrix is not square".into()));
        }
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        let m = SymRatMatrix { n, entries };
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidPresentation(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    pub fn diagonal(diag: Vec<Rational>) -> SymRatMatrix {
        let n = diag.len();
        let mut entries = vec![Rational::zero(); n * n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * n + i] = d;
        }
        SymRatMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Principal submatrix on the given (sorted) index list.
    pub fn principal(&self, keep: &[usize]) -> SymRatMatrix {
        let k = keep.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in keep {
            for &j in keep {
                entries.push(self.get(i, j).clone());
            }
        }
        SymRatMatrix { n: k, entries }
    }

    /// Principal submatrix on the complement of `border`, with each kept
    /// diagonal entry increased by the sum of its row over `border`.
    pub fn bordered(&self, border: &[usize]) -> SymRatMatrix {
        let keep: Vec<usize> = (0..self.n).filter(|i| !border.contains(i)).collect();
        let mut m = self.principal(&keep);
        let k = keep.len();
        for (a, &i) in keep.iter().enumerate() {
            let extra: Rational = border.iter().map(|&b| self.get(b, i)).sum();
            m.entries[a * k + a] += extra;
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// matrix scaled to integers. The 0x0 determinant is 1.
    pub fn det(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::one();
        }
        let scale = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x = self.get(i, j);
                        x.numer() * (&scale / x.denom())
                    })
                    .collect()
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let mut d = a[n - 1][n - 1].clone();
        if sign < 0 {
            d = -d;
        }
        Rational::from_bigint(d) / Rational::from_bigint(num_traits::pow(scale, n))
    }

    /// Eigenvalue sign counts by symmetric congruence diagonalization.
    pub fn inertia(&self) -> Inertia {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut out = Inertia::default();
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    swap_sym(&mut a, k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // row_k += row_j, col_k += col_j gives pivot 2 a[k][j].
                    add_sym(&mut a, k, j);
                } else {
                    out.n_zero += 1;
                    continue;
                }
            }
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                out.n_pos += 1;
            } else {
                out.n_neg += 1;
            }
            // Schur complement: a[i][j] -= a[i][k] a[k][j] / pivot for i, j > k.
            let col: Vec<Rational> = (k + 1..n).map(|i| &a[i][k] / &pivot).collect();
            for (ii, i) in (k + 1..n).enumerate() {
                if col[ii].is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = &col[ii] * &a[k][j];
                    a[i][j] -= v;
                }
            }
            for i in k + 1..n {
                a[i][k] = Rational::zero();
                a[k][i] = Rational::zero();
            }
        }
        out
    }
}

fn swap_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn add_sym(a: &mut [Vec<Rational>], k: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[k][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][k] += v;
    }
}
