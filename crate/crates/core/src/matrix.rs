//! Exact rational matrices.
//!
//! `ExactMatrix` is the linear-algebra side of every dual-route check in
//! this crate: determinants via fraction-free (Bareiss) elimination over
//! integers after clearing denominators, inverses via Gauss-Jordan over
//! rationals. Both are exact; floating point only appears in `FloatMatrix`,
//! the input type of the eigensolver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zero(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut m = ExactMatrix::zero(n);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), n, "matrix rows must be square");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = ExactMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    ///
    /// Rows are first scaled to integers (tracking the total scale), so all
    /// intermediate divisions are exact integer divisions.
    pub fn det(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            let row = (0..n)
                .map(|j| {
                    let e = self.get(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect();
            scale *= &lcm;
            a.push(row);
        }

        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot_row = match (k..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if pivot_row != k {
                a.swap(k, pivot_row);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det_int = if sign < 0 {
            -a[n - 1][n - 1].clone()
        } else {
            a[n - 1][n - 1].clone()
        };
        Rational::new(det_int, scale)
    }

    /// Exact inverse by Gauss-Jordan elimination over rationals.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = ExactMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(pivot, j).clone();
                    a.set(pivot, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.get(pivot, j).clone();
                    inv.set(pivot, j, inv.get(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j) / &p);
                inv.set(col, j, inv.get(col, j) / &p);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn to_float(&self) -> FloatMatrix {
        let entries = self
            .entries
            .iter()
            .map(|v| v.to_f64().expect("rational out of f64 range"))
            .collect();
        FloatMatrix { n: self.n, entries }
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }
}

/// Dense symmetric matrix over `f64`; the eigensolver input.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn zero(n: usize) -> Self {
        FloatMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        let mut m = FloatMatrix::zero(n);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), n, "matrix rows must be square");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rational};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(ExactMatrix::zero(0).det(), int(1));
        assert_eq!(m(&[&[5]]).det(), int(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), int(-1));
        // triangle C3
        assert_eq!(m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).det(), int(2));
        // C4 is singular
        assert_eq!(
            m(&[&[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 0]]).det(),
            int(0)
        );
    }

    #[test]
    fn determinant_rational_entries() {
        let a = ExactMatrix::from_rows(vec![
            vec![rational(1, 2), rational(1, 3)],
            vec![rational(1, 5), rational(2, 7)],
        ]);
        // 1/2*2/7 - 1/3*1/5 = 1/7 - 1/15 = 8/105
        assert_eq!(a.det(), rational(8, 105));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ExactMatrix::identity(3));
        assert_eq!(inv.get(0, 0), &rational(-1, 2));
        assert_eq!(inv.get(0, 1), &rational(1, 2));
    }

    #[test]
    fn singular_matrix_reports_error() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.det(), int(0));
        assert!(matches!(a.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion_on_random_int_matrices() {
        // Cofactor expansion is the independent oracle here.
        fn cofactor_det(a: &ExactMatrix) -> Rational {
            let n = a.dim();
            if n == 0 {
                return Rational::one();
            }
            let mut acc = Rational::zero();
            for j in 0..n {
                if a.get(0, j).is_zero() {
                    continue;
                }
                let mut sub = ExactMatrix::zero(n - 1);
                for i in 1..n {
                    let mut jj = 0;
                    for k in 0..n {
                        if k == j {
                            continue;
                        }
                        sub.set(i - 1, jj, a.get(i, k).clone());
                        jj += 1;
                    }
                }
                let term = a.get(0, j) * cofactor_det(&sub);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }

        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let n = (next() % 5 + 1) as usize;
            let mut a = ExactMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    let num = (next() % 9) as i64 - 4;
                    let den = (next() % 3 + 1) as i64;
                    a.set(i, j, rational(num, den));
                }
            }
            assert_eq!(a.det(), cofactor_det(&a));
        }
    }
}
