//! Dense LU with partial pivoting for the small systems that appear here
//! (metric tensors, Newton Jacobians, tangent determinants).

use num_complex::Complex;

use crate::scalar::Real;

/// Row-major square matrix.
pub type Matrix<T> = Vec<Vec<T>>;

#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    sign: T,
    singular: bool,
}

impl<T: Real> Lu<T> {
    pub fn new(mut a: Matrix<T>) -> Self {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        let mut singular = false;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(k);
            if a[p][k] == T::zero() {
                singular = true;
                continue;
            }
            if p != k {
                a.swap(p, k);
                perm.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                let factor = a[i][k] / a[k][k];
                a[i][k] = factor;
                for j in k + 1..n {
                    let akj = a[k][j];
                    a[i][j] = a[i][j] - factor * akj;
                }
            }
        }
        Lu { lu: a, perm, sign, singular }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> T {
        if self.singular {
            return T::zero();
        }
        (0..self.lu.len()).fold(self.sign, |acc, i| acc * self.lu[i][i])
    }

    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        if self.singular {
            return None;
        }
        let n = self.lu.len();
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] = x[i] - self.lu[i][j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] = x[i] - self.lu[i][j] * x[j];
            }
            x[i] = x[i] / self.lu[i][i];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        let n = self.lu.len();
        let mut inv = vec![vec![T::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            let col = self.solve(&e)?;
            for i in 0..n {
                inv[i][j] = col[i];
            }
        }
        Some(inv)
    }
}

pub fn norm1<T: Real>(a: &Matrix<T>) -> T {
    let n = a.len();
    (0..n).map(|j| (0..n).map(|i| a[i][j].abs()).sum::<T>()).fold(T::zero(), T::max)
}

/// `||A||_1 ||A^{-1}||_1`, infinite when `A` is singular.
pub fn condition_1<T: Real>(a: &Matrix<T>) -> T {
    match Lu::new(a.clone()).inverse() {
        Some(inv) => norm1(a) * norm1(&inv),
        None => T::infinity(),
    }
}

/// Determinant of a complex square matrix by Gaussian elimination.
pub fn complex_det<T: Real>(mut a: Vec<Vec<Complex<T>>>) -> Complex<T> {
    let n = a.len();
    let mut det = Complex::new(T::one(), T::zero());
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if a[p][k].norm() == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det = det * a[k][k];
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                let akj = a[k][j];
                a[i][j] = a[i][j] - factor * akj;
            }
        }
    }
    det
}
