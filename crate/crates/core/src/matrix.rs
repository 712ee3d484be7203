//! Finite model of the Fourier transform on `M_q = C*(u, v)`: clock and shift
//! generators with `vu = e(p/q) uv`, and the unitary `W` implementing
//! `Σ(u) = v`, `Σ(v) = u*` by conjugation.
//!
//! `W` is extracted as the null space of the stacked linear constraints
//! `Wu = vW`, `Wv = u*W`; a one-dimensional solution space certifies uniqueness
//! up to phase.

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Floating-point types the matrix model can run on.
pub trait MatrixScalar: Float + FloatConst + Debug + Send + Sync + 'static {
    /// Residual tolerance for intertwiner checks.
    fn tolerance() -> Self;

    /// Pivot threshold for numerical rank decisions.
    fn rank_tolerance() -> Self {
        Self::epsilon().sqrt() * Self::from(100.0).unwrap_or_else(Self::one)
    }
}

impl MatrixScalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl MatrixScalar for f32 {
    fn tolerance() -> Self {
        1e-3
    }
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: MatrixScalar> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out[(i, i)] = Complex::one();
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadInput("matrix must be square and non-empty".into()));
        }
        Ok(Self { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    /// Frobenius norm; bounds the operator norm from above.
    pub fn norm(&self) -> T {
        self.data.iter().map(|x| x.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| &acc * self)
    }

    /// `W x W*`.
    pub fn conjugate_by(&self, w: &CMatrix<T>) -> Self {
        &(w * self) * &w.adjoint()
    }

    /// Rows of `[re, im]` pairs, for JSON dumps.
    pub fn to_pairs(&self) -> Vec<Vec<[T; 2]>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: MatrixScalar> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * rhs[(l, j)];
                }
            }
        }
        out
    }
}

impl<T: MatrixScalar> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: MatrixScalar> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

fn fl<T: MatrixScalar>(x: impl num_traits::ToPrimitive) -> T {
    <T as num_traits::NumCast>::from(x).expect("representable")
}

/// `e(x) = exp(2πix)` for `x = num/den`, reducing `num mod den` first.
fn e_frac<T: MatrixScalar>(num: i64, den: i64) -> Complex<T> {
    let r = num.rem_euclid(den);
    let angle = T::TAU() * fl::<T>(r) / fl::<T>(den);
    Complex::from_polar(T::one(), angle)
}

fn check_pq(q: i64, p: i64) -> Result<()> {
    if q < 1 {
        return Err(Error::BadInput(format!("q = {q} must be ≥ 1")));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::BadInput(format!("p = {p} and q = {q} are not coprime")));
    }
    Ok(())
}

/// `diag(e(jp/q))`, `j = 0..q−1`.
pub fn clock<T: MatrixScalar>(q: i64, p: i64) -> Result<CMatrix<T>> {
    check_pq(q, p)?;
    let mut out = CMatrix::zeros(q as usize);
    for j in 0..q {
        out[(j as usize, j as usize)] = e_frac(j * p, q);
    }
    Ok(out)
}

/// Cyclic shift `v e_j = e_{j−1}`, so that `vu = e(p/q) uv` with [`clock`].
pub fn shift<T: MatrixScalar>(q: i64) -> Result<CMatrix<T>> {
    if q < 1 {
        return Err(Error::BadInput(format!("q = {q} must be ≥ 1")));
    }
    let n = q as usize;
    let mut out = CMatrix::zeros(n);
    for j in 0..n {
        out[((j + n - 1) % n, j)] = Complex::one();
    }
    Ok(out)
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
fn row_reduce<T: MatrixScalar>(rows: &mut [Vec<Complex<T>>], cols: usize) -> Vec<usize> {
    let tol = T::rank_tolerance();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let (best, mag) = (next..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .fold((next, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= tol {
            continue;
        }
        rows.swap(next, best);
        let inv = rows[next][col].inv();
        for x in rows[next].iter_mut() {
            *x = *x * inv;
        }
        let pivot_row = rows[next].clone();
        let support: Vec<usize> = (0..cols).filter(|&c| !pivot_row[c].is_zero()).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            let factor = row[col];
            if factor.is_zero() {
                continue;
            }
            for &c in &support {
                row[c] = row[c] - factor * pivot_row[c];
            }
            row[col] = Complex::zero();
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Intertwiner together with its verification residuals.
#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport<T> {
    pub q: i64,
    pub p: i64,
    pub nullity: usize,
    /// `‖WuW* − v‖`
    pub residual_u: T,
    /// `‖WvW* − u*‖`
    pub residual_v: T,
    /// `‖W*W − I‖`
    pub residual_unitary: T,
    #[serde(skip)]
    pub w: CMatrix<T>,
}

impl<T: MatrixScalar> IntertwinerReport<T> {
    pub fn within(&self, tol: T) -> bool {
        self.nullity == 1
            && self.residual_u <= tol
            && self.residual_v <= tol
            && self.residual_unitary <= tol
    }
}

/// Solves `Wu = vW`, `Wv = u*W` for `W` and normalizes it to a unitary whose first
/// nonzero entry in the first row is positive real.
pub fn intertwiner_report<T: MatrixScalar>(q: i64, p: i64) -> Result<IntertwinerReport<T>> {
    let u = clock::<T>(q, p)?;
    let v = shift::<T>(q)?;
    let n = q as usize;
    let unknowns = n * n;

    // Row for entry (i, j) of W·A − B·W; coefficient of W_{ab} is δ_{ia} A_{bj} − B_{ia} δ_{bj}.
    let mut rows = Vec::with_capacity(2 * unknowns);
    for (a_mat, b_mat) in [(&u, &v), (&v, &u.adjoint())] {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Complex::zero(); unknowns];
                for b in 0..n {
                    row[i * n + b] = row[i * n + b] + a_mat[(b, j)];
                }
                for a in 0..n {
                    row[a * n + j] = row[a * n + j] - b_mat[(i, a)];
                }
                rows.push(row);
            }
        }
    }
    let pivots = row_reduce(&mut rows, unknowns);
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::NoIntertwiner(free.len()));
    }
    let free_col = free[0];
    let mut sol: Vec<Complex<T>> = vec![Complex::zero(); unknowns];
    sol[free_col] = Complex::one();
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = -rows[r][free_col];
    }
    let mut w = CMatrix { dim: n, data: sol };

    let gram = &w.adjoint() * &w;
    let c = gram.trace().re / fl::<T>(n);
    w = w.scale(Complex::new(c.sqrt().recip(), T::zero()));
    let tol = T::tolerance();
    if let Some(first) = (0..n).map(|j| w[(0, j)]).find(|x| x.norm() > tol) {
        w = w.scale(first.conj() / Complex::new(first.norm(), T::zero()));
    }

    let residual_unitary = (&(&w.adjoint() * &w) - &CMatrix::<T>::identity(n)).norm();
    if residual_unitary > tol {
        return Err(Error::NotUnitary(residual_unitary.to_f64().unwrap_or(f64::NAN)));
    }
    let residual_u = (&u.conjugate_by(&w) - &v).norm();
    let residual_v = (&v.conjugate_by(&w) - &u.adjoint()).norm();
    Ok(IntertwinerReport { q, p, nullity: free.len(), residual_u, residual_v, residual_unitary, w })
}

pub fn fourier_intertwiner<T: MatrixScalar>(q: i64, p: i64) -> Result<CMatrix<T>> {
    Ok(intertwiner_report::<T>(q, p)?.w)
}

/// `Σ²(u) ≈ u*`, `Σ²(v) ≈ v*`, `Σ⁴ ≈ id` on generators and `W⁴ ≈ λI`.
pub fn verify_order_four<T: MatrixScalar>(q: i64, p: i64) -> Result<bool> {
    let w = fourier_intertwiner::<T>(q, p)?;
    let u = clock::<T>(q, p)?;
    let v = shift::<T>(q)?;
    let tol = T::tolerance();
    let w2 = &w * &w;
    let w4 = &w2 * &w2;
    let close = |a: &CMatrix<T>, b: &CMatrix<T>| (a - b).norm() <= tol;
    let lambda = w4[(0, 0)];
    Ok(close(&u.conjugate_by(&w2), &u.adjoint())
        && close(&v.conjugate_by(&w2), &v.adjoint())
        && close(&u.conjugate_by(&w4), &u)
        && close(&v.conjugate_by(&w4), &v)
        && close(&w4, &CMatrix::<T>::identity(q as usize).scale(lambda)))
}

/// Normalized trace of `u^a v^b` is preserved by `Σ` for all `0 ≤ a, b < q`.
pub fn check_trace_preservation<T: MatrixScalar>(q: i64, p: i64) -> Result<bool> {
    let w = fourier_intertwiner::<T>(q, p)?;
    let u = clock::<T>(q, p)?;
    let v = shift::<T>(q)?;
    let tol = T::tolerance();
    let qf = fl::<T>(q);
    for a in 0..q as u32 {
        let ua = u.pow(a);
        for b in 0..q as u32 {
            let x = &ua * &v.pow(b);
            let before = x.trace() / qf;
            let after = x.conjugate_by(&w).trace() / qf;
            if (before - after).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
