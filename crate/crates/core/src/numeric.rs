//! Dense factorization kernel.
//!
//! Everything rank-sensitive funnels through here: the factorizations come
//! from faer (full SVD, Hermitian eigendecompositions, QZ) and are exposed on
//! nalgebra's matrix types, which the rest of the crate uses for plain
//! arithmetic.  Keeping one seam makes accuracy assumptions auditable.

use faer::linalg::solvers::{GeneralizedEigen, SelfAdjointEigen, Svd};
use faer::{c64, MatRef, Side};
use num_complex::Complex64;

use crate::{CMatrix, CVector};

fn fa(a: &CMatrix) -> MatRef<'_, c64> {
    MatRef::from_column_major_slice(a.as_slice(), a.nrows(), a.ncols())
}

fn na(a: MatRef<'_, c64>) -> CMatrix {
    CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Full SVD: U is square m x m, V square n x n, singular values sorted
/// nonincreasing (length min(m, n)).
pub(crate) fn svd_full(a: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let (m, n) = (a.nrows(), a.ncols());
    if m == 0 || n == 0 {
        return (
            CMatrix::identity(m, m),
            Vec::new(),
            CMatrix::identity(n, n),
        );
    }
    match Svd::new(fa(a)) {
        Ok(svd) => {
            let sigma = svd.S().column_vector().iter().map(|s| s.re).collect();
            (na(svd.U()), sigma, na(svd.V()))
        }
        Err(_) => jacobi_svd(a),
    }
}

/// Thin SVD: U is m x min(m, n); V is not returned.
pub(crate) fn svd_thin(a: &CMatrix) -> (CMatrix, Vec<f64>) {
    let (m, n) = (a.nrows(), a.ncols());
    if m == 0 || n == 0 {
        return (CMatrix::zeros(m, m.min(n)), Vec::new());
    }
    match Svd::new_thin(fa(a)) {
        Ok(svd) => {
            let sigma = svd.S().column_vector().iter().map(|s| s.re).collect();
            (na(svd.U()), sigma)
        }
        Err(_) => {
            let (u, sigma, _) = jacobi_svd(a);
            (u.columns(0, m.min(n)).into_owned(), sigma)
        }
    }
}

/// Singular values only, sorted nonincreasing.
pub(crate) fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    match fa(a).singular_values() {
        Ok(sigma) => sigma,
        Err(_) => jacobi_svd(a).1,
    }
}

/// One-sided Jacobi SVD, the backstop for inputs whose bidiagonal QR
/// iteration stalls in faer (observed on [v, c I] blocks, which carry a
/// repeated singular value).  Cyclic Jacobi cannot fail to converge, and
/// its cubic cost with a fat constant is irrelevant at the matrix sizes
/// seen here; it only runs when faer has already given up.
fn jacobi_svd(a: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let (m, n) = (a.nrows(), a.ncols());
    if m < n {
        let (u, sigma, v) = jacobi_svd(&a.adjoint());
        return (v, sigma, u);
    }
    let mut w = a.clone();
    let mut v = CMatrix::identity(n, n);
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let wp = w.column(p).into_owned();
                let wq = w.column(q).into_owned();
                let alpha = wp.norm_squared();
                let beta = wq.norm_squared();
                let gamma = wp.dotc(&wq);
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                // Unitary R = [[c, st], [-conj(st), c]] zeroing the (p, q)
                // entry of the column Gram matrix: with tau the usual
                // cotangent parameter, t solves t^2 - 2 tau t - 1 = 0.
                let tau = (beta - alpha) / (2.0 * gamma.norm());
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let st = (gamma / gamma.norm()).conj() * (c * t);
                let cc = Complex64::new(c, 0.0);
                w.set_column(p, &(&wp * cc + &wq * st));
                w.set_column(q, &(&wq * cc - &wp * st.conj()));
                let vp = v.column(p).into_owned();
                let vq = v.column(q).into_owned();
                v.set_column(p, &(&vp * cc + &vq * st));
                v.set_column(q, &(&vq * cc - &vp * st.conj()));
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);
    let mut u = CMatrix::zeros(m, m);
    let mut filled = 0;
    for &j in &order {
        if norms[j] > 1e-13 * smax.max(f64::MIN_POSITIVE) {
            u.set_column(filled, &(w.column(j).into_owned() / Complex64::new(norms[j], 0.0)));
            filled += 1;
        }
    }
    complete_basis(&mut u, filled);
    let mut vs = CMatrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        vs.set_column(k, &v.column(j).into_owned());
    }
    (u, sigma, vs)
}

/// Extends `filled` orthonormal columns of the square matrix to a full
/// orthonormal basis, greedily taking the standard basis vector with the
/// largest component outside the current span.
fn complete_basis(u: &mut CMatrix, filled: usize) {
    let m = u.nrows();
    for have in filled..m {
        let mut best: Option<(f64, CVector)> = None;
        for i in 0..m {
            let mut e = CVector::zeros(m);
            e[i] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for j in 0..have {
                    let col = u.column(j).into_owned();
                    let coeff = col.dotc(&e);
                    e -= col * coeff;
                }
            }
            let norm = e.norm();
            if best.as_ref().map_or(true, |(b, _)| norm > *b) {
                best = Some((norm, e));
            }
        }
        let (norm, e) = best.expect("positive ambient dimension");
        u.set_column(have, &(e / Complex64::new(norm, 0.0)));
    }
}

/// Largest singular value; 0 for an empty matrix.
pub(crate) fn spectral_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Numerical rank at a relative cutoff: singular values above
/// `rel_tol * sigma_max` count.
pub(crate) fn rank_at(sigma: &[f64], rel_tol: f64) -> usize {
    match sigma.first() {
        None => 0,
        Some(&smax) if smax <= 0.0 => 0,
        Some(&smax) => sigma.iter().filter(|s| **s > rel_tol * smax).count(),
    }
}

/// Eigendecomposition of a Hermitian matrix: values nondecreasing, vectors
/// as the columns of the returned matrix.
pub(crate) fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let evd = SelfAdjointEigen::new(fa(a), Side::Lower).expect("eigendecomposition convergence");
    let values = evd.S().column_vector().iter().map(|s| s.re).collect();
    (values, na(evd.U()))
}

/// Eigenvalues of a Hermitian matrix, nondecreasing.
pub(crate) fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    fa(a)
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("eigendecomposition convergence")
}

/// Eigenvalues of a general complex square matrix.
pub(crate) fn eigenvalues(a: &CMatrix) -> Vec<Complex64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    fa(a).eigenvalues().expect("eigendecomposition convergence")
}

/// Generalized eigenvalues of the pencil (A, B) as (alpha, beta) pairs;
/// finite eigenvalues are alpha/beta where beta is away from zero.
pub(crate) fn generalized_eigenvalues(a: &CMatrix, b: &CMatrix) -> Vec<(Complex64, Complex64)> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    if a.nrows() == 1 {
        // faer 0.24 undersizes its QZ scratch for 1x1 pencils; the scalar
        // pencil needs no factorization anyway.
        return vec![(a[(0, 0)], b[(0, 0)])];
    }
    let qz = GeneralizedEigen::new(fa(a), fa(b)).expect("qz convergence");
    let alphas: Vec<Complex64> = qz.S_a().column_vector().iter().copied().collect();
    let betas: Vec<Complex64> = qz.S_b().column_vector().iter().copied().collect();
    alphas.into_iter().zip(betas).collect()
}

/// SplitMix64 step, used to derive independent stream seeds from one master
/// seed without correlation between nearby inputs.
pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Standard complex gaussian sample (Box-Muller), real and imaginary parts
/// independent N(0, 1).
pub(crate) fn gauss(rng: &mut impl rand::Rng) -> Complex64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u.ln()).sqrt();
    Complex64::new(r * v.cos(), r * v.sin())
}

/// Minimum-norm least-squares solution of A x = b through the SVD, with
/// singular values below `rel_tol * sigma_max` treated as zero.
pub(crate) fn min_norm_lstsq(a: &CMatrix, b: &CVector, rel_tol: f64) -> CVector {
    let (u, sigma, v) = svd_full(a);
    let rank = rank_at(&sigma, rel_tol);
    let mut x = CVector::zeros(a.ncols());
    for k in 0..rank {
        let coeff = u.column(k).adjoint() * b;
        x += v.column(k) * (coeff[(0, 0)] / Complex64::new(sigma[k], 0.0));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A shifted-graph block [v, c I]: carries a doubly repeated singular
    /// value, and faer 0.24 reports NoConvergence on it.  Factoring this is
    /// exactly what the Jacobi backstop is for.
    fn stubborn() -> CMatrix {
        let e = [
            [
                (-0.3632043949508261, -0.49680202066847623),
                (-0.5349147424114349, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
            ],
            [
                (0.2917327901392932, 0.2788453033246094),
                (0.0, 0.0),
                (-0.5349147424114349, 0.0),
                (0.0, 0.0),
            ],
            [
                (0.16040355309465482, 0.10434917995326146),
                (0.0, 0.0),
                (0.0, 0.0),
                (-0.5349147424114349, 0.0),
            ],
        ];
        CMatrix::from_fn(3, 4, |i, j| Complex64::new(e[i][j].0, e[i][j].1))
    }

    fn assert_factors(a: &CMatrix, u: &CMatrix, sigma: &[f64], v: &CMatrix) {
        let (m, n) = (a.nrows(), a.ncols());
        assert!((u.adjoint() * u - CMatrix::identity(m, m)).norm() <= 1e-12);
        assert!((v.adjoint() * v - CMatrix::identity(n, n)).norm() <= 1e-12);
        assert!(sigma.windows(2).all(|w| w[0] >= w[1]));
        let mut s = CMatrix::zeros(m, n);
        for (k, val) in sigma.iter().enumerate() {
            s[(k, k)] = Complex64::new(*val, 0.0);
        }
        assert!((a - u * s * v.adjoint()).norm() <= 1e-12);
    }

    #[test]
    fn svd_full_survives_the_stubborn_block() {
        let a = stubborn();
        let (u, sigma, v) = svd_full(&a);
        assert_factors(&a, &u, &sigma, &v);
    }

    #[test]
    fn jacobi_svd_handles_both_orientations_and_rank_drops() {
        let wide = stubborn();
        let (u, sigma, v) = jacobi_svd(&wide);
        assert_factors(&wide, &u, &sigma, &v);

        let tall = wide.adjoint();
        let (u, sigma, v) = jacobi_svd(&tall);
        assert_factors(&tall, &u, &sigma, &v);

        let mut deficient = CMatrix::zeros(4, 3);
        deficient[(0, 0)] = Complex64::new(1.0, 0.0);
        deficient[(0, 1)] = Complex64::new(1.0, 0.0);
        let (u, sigma, v) = jacobi_svd(&deficient);
        assert_factors(&deficient, &u, &sigma, &v);
        assert!(sigma[1] <= 1e-14 && sigma[2] <= 1e-14);
    }
}
