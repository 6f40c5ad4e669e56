//! Rank-tolerant arithmetic of subspaces of C^m.
//!
//! A [`Subspace`] is stored as an orthonormal basis (m x d matrix) plus the
//! relative rank tolerance it was constructed with.  Orthonormal bases are
//! not unique, so equality and all predicates go through residual norms and
//! the opening (gap) metric, never through basis comparison.  The zero
//! subspace is an ordinary value with a 0-column basis.

use num_complex::Complex64;

use crate::numeric;
use crate::{CMatrix, CVector, Error, Result, EQ_TOL};

/// A subspace of C^m carried by an orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMatrix,
    tol: f64,
}

/// Default relative rank tolerance for an ambient dimension.
fn default_tol(m: usize) -> f64 {
    m as f64 * f64::EPSILON
}

impl Subspace {
    /// The zero subspace {0} of C^m.
    pub fn zero(m: usize) -> Subspace {
        Subspace {
            ambient_dim: m,
            basis: CMatrix::zeros(m, 0),
            tol: default_tol(m),
        }
    }

    /// The whole space C^m.
    pub fn full(m: usize) -> Subspace {
        Subspace {
            ambient_dim: m,
            basis: CMatrix::identity(m, m),
            tol: default_tol(m),
        }
    }

    /// Closed span of the given vectors in C^m.  Directions whose singular
    /// value falls below `tol * sigma_max` are discarded; `None` uses the
    /// default `m * eps`.
    pub fn span(m: usize, vectors: &[CVector], tol: Option<f64>) -> Result<Subspace> {
        for v in vectors {
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
        }
        let mut cols = CMatrix::zeros(m, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            cols.set_column(j, v);
        }
        Subspace::from_cols(m, &cols, tol)
    }

    /// Closed span of the columns of `cols`.
    pub fn from_cols(m: usize, cols: &CMatrix, tol: Option<f64>) -> Result<Subspace> {
        if m == 0 {
            return Err(Error::ZeroAmbient);
        }
        if cols.nrows() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: cols.nrows(),
            });
        }
        let rel_tol = tol.unwrap_or_else(|| default_tol(m));
        if cols.ncols() == 0 {
            let mut s = Subspace::zero(m);
            s.tol = rel_tol;
            return Ok(s);
        }
        let (u, sigma) = numeric::svd_thin(cols);
        let rank = numeric::rank_at(&sigma, rel_tol);
        Ok(Subspace {
            ambient_dim: m,
            basis: u.columns(0, rank).into_owned(),
            tol: rel_tol,
        })
    }

    /// Like [`Subspace::from_cols`], but with an absolute singular-value
    /// cutoff.  Blocks carved out of an orthonormal basis live at the scale
    /// of the parent basis, not their own largest singular value, so their
    /// rank must be decided against an absolute threshold.
    pub(crate) fn from_cols_abs(m: usize, cols: &CMatrix, cutoff: f64) -> Result<Subspace> {
        if m == 0 {
            return Err(Error::ZeroAmbient);
        }
        if cols.nrows() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: cols.nrows(),
            });
        }
        let (u, sigma) = numeric::svd_thin(cols);
        let rank = sigma.iter().filter(|s| **s > cutoff).count();
        Ok(Subspace {
            ambient_dim: m,
            basis: u.columns(0, rank).into_owned(),
            tol: default_tol(m),
        })
    }

    /// Kernel with an absolute singular-value cutoff; see
    /// [`Subspace::from_cols_abs`].
    pub(crate) fn kernel_of_abs(mat: &CMatrix, cutoff: f64) -> Result<Subspace> {
        let cols = mat.ncols();
        if cols == 0 {
            return Err(Error::ZeroAmbient);
        }
        if mat.nrows() == 0 {
            return Ok(Subspace::full(cols));
        }
        let (_, sigma, v) = numeric::svd_full(mat);
        let rank = sigma.iter().filter(|s| **s > cutoff).count();
        Ok(Subspace {
            ambient_dim: cols,
            basis: v.columns(rank, cols - rank).into_owned(),
            tol: default_tol(cols),
        })
    }

    /// Wraps a matrix already known to have orthonormal columns.
    pub(crate) fn from_orthonormal(m: usize, basis: CMatrix, tol: f64) -> Subspace {
        debug_assert_eq!(basis.nrows(), m);
        debug_assert!({
            let d = basis.ncols();
            (basis.adjoint() * &basis - CMatrix::identity(d, d)).norm() <= 1e-10 * (d.max(1) as f64)
        });
        Subspace {
            ambient_dim: m,
            basis,
            tol,
        }
    }

    /// Kernel of `mat` as a subspace of its column count's space: the
    /// trailing right singular vectors past the numerical rank.
    pub fn kernel_of(mat: &CMatrix, tol: Option<f64>) -> Result<Subspace> {
        let cols = mat.ncols();
        if cols == 0 {
            return Err(Error::ZeroAmbient);
        }
        let rel_tol = tol.unwrap_or_else(|| default_tol(mat.nrows().max(cols)));
        if mat.nrows() == 0 {
            let mut s = Subspace::full(cols);
            s.tol = rel_tol;
            return Ok(s);
        }
        let (_, sigma, v) = numeric::svd_full(mat);
        let rank = numeric::rank_at(&sigma, rel_tol);
        Ok(Subspace {
            ambient_dim: cols,
            basis: v.columns(rank, cols - rank).into_owned(),
            tol: rel_tol,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// The orthonormal basis, one column per dimension.
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Relative rank tolerance this subspace was built with.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Orthogonal complement; dim(S) + dim(S^perp) = m exactly.
    pub fn complement(&self) -> Subspace {
        let m = self.ambient_dim;
        let d = self.dim();
        if d == 0 {
            let mut s = Subspace::full(m);
            s.tol = self.tol;
            return s;
        }
        if d == m {
            let mut s = Subspace::zero(m);
            s.tol = self.tol;
            return s;
        }
        // The trailing m-d columns of the full left factor of the basis span
        // the complement; the count is forced, not thresholded, so dimensions
        // always add up.
        let (u, _, _) = numeric::svd_full(&self.basis);
        Subspace {
            ambient_dim: m,
            basis: u.columns(d, m - d).into_owned(),
            tol: self.tol,
        }
    }

    /// Closed span of the union.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let m = self.ambient_dim;
        let mut cols = CMatrix::zeros(m, self.dim() + other.dim());
        cols.view_mut((0, 0), (m, self.dim())).copy_from(&self.basis);
        cols.view_mut((0, self.dim()), (m, other.dim()))
            .copy_from(&other.basis);
        Subspace::from_cols(m, &cols, Some(self.tol.max(other.tol)))
    }

    /// Intersection computed as (S^perp + T^perp)^perp.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.complement().sum(&other.complement())?.complement())
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// Residual-norm membership test at the max of the stored tolerance and
    /// the crate-wide equality floor.
    pub fn contains(&self, v: &CVector) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let norm = v.norm();
        if norm == 0.0 {
            return true;
        }
        let coeffs = self.basis.adjoint() * v;
        let residual = v - &self.basis * coeffs;
        residual.norm() <= self.tol.max(EQ_TOL) * norm
    }

    /// True when every basis vector of `self` lies in `other`.
    pub fn leq(&self, other: &Subspace) -> bool {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "ambient dimension mismatch"
        );
        self.basis
            .column_iter()
            .all(|c| other.contains(&c.into_owned()))
    }

    /// Opening (gap) between subspaces: the spectral norm of the projector
    /// difference, a metric with values in [0,1].
    pub fn opening(&self, other: &Subspace) -> f64 {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "ambient dimension mismatch"
        );
        if self.dim() == 0 && other.dim() == 0 {
            return 0.0;
        }
        numeric::spectral_norm(&(self.projector() - other.projector()))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }
}

impl PartialEq for Subspace {
    /// Equality as metric closeness: opening at most the crate-wide
    /// equality tolerance.
    fn eq(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.opening(other) <= EQ_TOL
    }
}

/// Unit vector e_k of C^m (0-indexed).
pub fn unit_vector(m: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(m);
    v[k] = Complex64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_subspace, seeded_rng};
    use proptest::prelude::*;

    fn cv(entries: &[(f64, f64)]) -> CVector {
        CVector::from_iterator(entries.len(), entries.iter().map(|&(re, im)| Complex64::new(re, im)))
    }

    #[test]
    fn span_single_vector_is_line() {
        let s = Subspace::span(2, &[cv(&[(1.0, 0.0), (0.0, 0.0)])], None).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&unit_vector(2, 0)));
        assert!(!s.contains(&unit_vector(2, 1)));
    }

    #[test]
    fn span_dependent_vectors_collapse() {
        let s = Subspace::span(
            2,
            &[cv(&[(1.0, 0.0), (0.0, 0.0)]), cv(&[(2.0, 0.0), (0.0, 0.0)])],
            None,
        )
        .unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn span_independent_vectors_fill_plane() {
        // det [[1,1],[1,-1]] = -2, so the rank is 2.
        let s = Subspace::span(
            2,
            &[cv(&[(1.0, 0.0), (1.0, 0.0)]), cv(&[(1.0, 0.0), (-1.0, 0.0)])],
            None,
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.is_full());
    }

    #[test]
    fn span_rejects_wrong_length() {
        let err = Subspace::span(2, &[cv(&[(1.0, 0.0)])], None).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn complement_of_line_in_plane() {
        let s = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let c = s.complement();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&unit_vector(2, 1)));
    }

    #[test]
    fn complement_of_full_space_is_zero() {
        assert_eq!(Subspace::full(3).complement().dim(), 0);
        assert_eq!(Subspace::zero(3).complement().dim(), 3);
    }

    #[test]
    fn complement_of_diagonal_line() {
        // Kernel of the row (1,1) is the anti-diagonal.
        let s = Subspace::span(2, &[cv(&[(1.0, 0.0), (1.0, 0.0)])], None).unwrap();
        let c = s.complement();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&cv(&[(1.0, 0.0), (-1.0, 0.0)])));
    }

    #[test]
    fn sum_of_axes_is_plane() {
        let a = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let b = Subspace::span(2, &[unit_vector(2, 1)], None).unwrap();
        assert!(a.sum(&b).unwrap().is_full());
    }

    #[test]
    fn intersect_with_self_is_identity() {
        let mut rng = seeded_rng(11);
        let s = random_subspace(&mut rng, 5, 3);
        assert_eq!(s.intersect(&s).unwrap(), s);
    }

    #[test]
    fn intersect_plane_with_skew_line_is_zero() {
        // (a,b,0) = c(0,1,1) forces c = 0.
        let plane = Subspace::span(3, &[unit_vector(3, 0), unit_vector(3, 1)], None).unwrap();
        let line = Subspace::span(3, &[cv(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0)])], None).unwrap();
        assert_eq!(plane.intersect(&line).unwrap().dim(), 0);
    }

    #[test]
    fn sum_rejects_ambient_mismatch() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(
            a.sum(&b),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn projector_of_zero_subspace_is_zero_matrix() {
        let p = Subspace::zero(3).projector();
        assert_eq!(p.nrows(), 3);
        assert!(p.norm() == 0.0);
    }

    #[test]
    fn projector_of_diagonal_line() {
        let s = Subspace::span(2, &[cv(&[(1.0, 0.0), (1.0, 0.0)])], None).unwrap();
        let p = s.projector();
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[(i, j)] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn contains_rejects_vector_off_span() {
        let s = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        assert!(!s.contains(&cv(&[(1.0, 0.0), (1.0, 0.0)])));
        assert!(s.contains(&CVector::zeros(2)));
    }

    #[test]
    fn opening_of_equal_subspaces_is_zero() {
        let mut rng = seeded_rng(3);
        let s = random_subspace(&mut rng, 4, 2);
        assert!(s.opening(&s) <= 1e-14);
    }

    #[test]
    fn opening_of_orthogonal_lines_is_one() {
        let a = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let b = Subspace::span(2, &[unit_vector(2, 1)], None).unwrap();
        assert!((a.opening(&b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn opening_of_tilted_line_is_half_sqrt_two() {
        // Frozen from the 2x2 eigenvalue problem for P1 - P2.
        let a = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let b = Subspace::span(2, &[cv(&[(1.0, 0.0), (1.0, 0.0)])], None).unwrap();
        assert!((a.opening(&b) - 0.7071067811865476).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn opening_invariant_under_complements(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let m = 1 + (seed % 8) as usize;
            let s = random_subspace(&mut rng, m, (seed % (m as u64 + 1)) as usize);
            let t = random_subspace(&mut rng, m, ((seed / 7) % (m as u64 + 1)) as usize);
            let direct = s.opening(&t);
            let complemented = s.complement().opening(&t.complement());
            prop_assert!((direct - complemented).abs() <= 1e-9);
        }

        #[test]
        fn opening_matches_supremum_formula(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let m = 2 + (seed % 6) as usize;
            let s = random_subspace(&mut rng, m, 1 + (seed % (m as u64 - 1)) as usize);
            let t = random_subspace(&mut rng, m, 1 + ((seed / 11) % (m as u64 - 1)) as usize);
            let eye = CMatrix::identity(m, m);
            let from_s = crate::numeric::spectral_norm(&((&eye - t.projector()) * s.basis()));
            let from_t = crate::numeric::spectral_norm(&((&eye - s.projector()) * t.basis()));
            prop_assert!((s.opening(&t) - from_s.max(from_t)).abs() <= 1e-8);
        }

        #[test]
        fn small_opening_forces_equal_dims(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let m = 1 + (seed % 8) as usize;
            let s = random_subspace(&mut rng, m, (seed % (m as u64 + 1)) as usize);
            let t = random_subspace(&mut rng, m, ((seed / 13) % (m as u64 + 1)) as usize);
            if s.opening(&t) < 1.0 - 1e-10 {
                prop_assert_eq!(s.dim(), t.dim());
            }
        }

        #[test]
        fn de_morgan_for_sum_and_intersection(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let m = 1 + (seed % 7) as usize;
            let s = random_subspace(&mut rng, m, (seed % (m as u64 + 1)) as usize);
            let t = random_subspace(&mut rng, m, ((seed / 5) % (m as u64 + 1)) as usize);
            let lhs = s.sum(&t).unwrap().complement();
            let rhs = s.complement().intersect(&t.complement()).unwrap();
            prop_assert!(lhs == rhs);
        }

        #[test]
        fn dimension_formula_holds(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let m = 1 + (seed % 8) as usize;
            let s = random_subspace(&mut rng, m, (seed % (m as u64 + 1)) as usize);
            let t = random_subspace(&mut rng, m, ((seed / 3) % (m as u64 + 1)) as usize);
            let sum_dim = s.sum(&t).unwrap().dim();
            let meet_dim = s.intersect(&t).unwrap().dim();
            prop_assert_eq!(s.dim() + t.dim(), sum_dim + meet_dim);
        }
    }
}
