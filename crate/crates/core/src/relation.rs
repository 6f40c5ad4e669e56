//! Linear relations on C^n as graph subspaces of C^n x C^n.
//!
//! A relation is any subspace of the product space; it generalizes an
//! operator by allowing a multivalued part mul A = A(0) and a partial domain.
//! The basis of the graph is kept orthonormal and split into the top block F
//! (first components) and bottom block G (second components), so dom A is
//! spanned by the columns of F, ran A by those of G, and the kernel and
//! multivalued part come from nullspaces of the blocks.
//!
//! The adjoint is computed exactly from the orthogonal complement of the
//! graph via the unitary block swap (f, f') -> (f', -f), so adjoint chains do
//! not lose orthonormality.

use num_complex::Complex64;

use crate::subspace::Subspace;
use crate::{CMatrix, CVector, Error, Result, EQ_TOL};

/// A linear relation in C^n, stored as its graph.
#[derive(Clone, Debug)]
pub struct Relation {
    n: usize,
    graph: Subspace,
    f: CMatrix,
    g: CMatrix,
}

/// An element {f, f'} of the product space, candidate member of a relation.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementPair {
    pub f: CVector,
    pub f_prime: CVector,
}

impl ElementPair {
    pub fn new(f: CVector, f_prime: CVector) -> ElementPair {
        ElementPair { f, f_prime }
    }

    /// Stacks the pair into a single 2n-vector matching the graph layout.
    pub fn stacked(&self) -> CVector {
        let n = self.f.len();
        let mut v = CVector::zeros(2 * n);
        v.rows_mut(0, n).copy_from(&self.f);
        v.rows_mut(n, n).copy_from(&self.f_prime);
        v
    }
}

/// The four component subspaces of a relation.
#[derive(Clone, Debug)]
pub struct Components {
    pub dom: Subspace,
    pub ran: Subspace,
    pub ker: Subspace,
    pub mul: Subspace,
}

impl Relation {
    /// Relation spanned by the given {f, f'} pairs stacked as 2n-vectors.
    pub fn from_graph(n: usize, vectors: &[CVector]) -> Result<Relation> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        let graph = Subspace::span(2 * n, vectors, None)?;
        Relation::from_subspace(n, graph)
    }

    /// Wraps an existing subspace of C^2n as a relation.
    pub fn from_subspace(n: usize, graph: Subspace) -> Result<Relation> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        if graph.ambient_dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                got: graph.ambient_dim(),
            });
        }
        let f = graph.basis().rows(0, n).into_owned();
        let g = graph.basis().rows(n, n).into_owned();
        Ok(Relation { n, graph, f, g })
    }

    /// Trusted constructor for a basis that is already orthonormal (block
    /// swaps, orthogonal embeddings).
    pub(crate) fn from_orthonormal_graph(n: usize, basis: CMatrix) -> Relation {
        let graph = Subspace::from_orthonormal(2 * n, basis, default_graph_tol(n));
        let f = graph.basis().rows(0, n).into_owned();
        let g = graph.basis().rows(n, n).into_owned();
        Relation { n, graph, f, g }
    }

    /// Graph of the matrix `m` restricted to `domain`.
    pub fn from_operator(m: &CMatrix, domain: &Subspace) -> Result<Relation> {
        let n = domain.ambient_dim();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.nrows().max(m.ncols()),
            });
        }
        let d = domain.dim();
        let mut cols = CMatrix::zeros(2 * n, d);
        let b = domain.basis();
        cols.view_mut((0, 0), (n, d)).copy_from(b);
        cols.view_mut((n, 0), (n, d)).copy_from(&(m * b));
        let graph = Subspace::from_cols(2 * n, &cols, None)?;
        Relation::from_subspace(n, graph)
    }

    /// The zero relation {0}x{0}.
    pub fn zero_relation(n: usize) -> Result<Relation> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        Ok(Relation {
            n,
            graph: Subspace::zero(2 * n),
            f: CMatrix::zeros(n, 0),
            g: CMatrix::zeros(n, 0),
        })
    }

    /// Identity restricted to a subspace; columns (b, b)/sqrt(2) stay
    /// orthonormal exactly.
    pub fn identity_on(s: &Subspace) -> Relation {
        let n = s.ambient_dim();
        let d = s.dim();
        let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut basis = CMatrix::zeros(2 * n, d);
        let b = s.basis();
        basis.view_mut((0, 0), (n, d)).copy_from(&(b * half));
        basis.view_mut((n, 0), (n, d)).copy_from(&(b * half));
        Relation::from_orthonormal_graph(n, basis)
    }

    /// Zero operator on a subspace: pairs (b, 0).
    pub fn zero_on(s: &Subspace) -> Relation {
        let n = s.ambient_dim();
        let d = s.dim();
        let mut basis = CMatrix::zeros(2 * n, d);
        basis.view_mut((0, 0), (n, d)).copy_from(s.basis());
        Relation::from_orthonormal_graph(n, basis)
    }

    /// The product relation S x T: every vector of S relates to every value
    /// in T; mul = T, ker = S.
    pub fn cross(s: &Subspace, t: &Subspace) -> Result<Relation> {
        let n = s.ambient_dim();
        if t.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: t.ambient_dim(),
            });
        }
        let (ds, dt) = (s.dim(), t.dim());
        let mut basis = CMatrix::zeros(2 * n, ds + dt);
        basis.view_mut((0, 0), (n, ds)).copy_from(s.basis());
        basis.view_mut((n, ds), (n, dt)).copy_from(t.basis());
        Ok(Relation::from_orthonormal_graph(n, basis))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn graph_dim(&self) -> usize {
        self.graph.dim()
    }

    /// Top block of the orthonormal graph basis (first components).
    pub fn f_block(&self) -> &CMatrix {
        &self.f
    }

    /// Bottom block of the orthonormal graph basis (second components).
    pub fn g_block(&self) -> &CMatrix {
        &self.g
    }

    pub fn dom(&self) -> Subspace {
        Subspace::from_cols_abs(self.n, &self.f, BLOCK_CUTOFF)
            .expect("ambient checked at construction")
    }

    pub fn ran(&self) -> Subspace {
        Subspace::from_cols_abs(self.n, &self.g, BLOCK_CUTOFF)
            .expect("ambient checked at construction")
    }

    /// mul A = A(0): values paired with the zero vector.
    pub fn mul(&self) -> Subspace {
        self.null_image(&self.f, &self.g)
    }

    /// ker A: vectors mapped onto zero.
    pub fn ker(&self) -> Subspace {
        self.null_image(&self.g, &self.f)
    }

    fn null_image(&self, pivot: &CMatrix, image: &CMatrix) -> Subspace {
        if self.graph_dim() == 0 {
            return Subspace::zero(self.n);
        }
        let kernel = Subspace::kernel_of_abs(pivot, BLOCK_CUTOFF).expect("graph dim > 0");
        if kernel.dim() == 0 {
            return Subspace::zero(self.n);
        }
        Subspace::from_cols_abs(self.n, &(image * kernel.basis()), BLOCK_CUTOFF)
            .expect("ambient checked at construction")
    }

    pub fn components(&self) -> Components {
        Components {
            dom: self.dom(),
            ran: self.ran(),
            ker: self.ker(),
            mul: self.mul(),
        }
    }

    /// True when the pair {f, f'} belongs to the relation.
    pub fn contains(&self, pair: &ElementPair) -> bool {
        self.graph.contains(&pair.stacked())
    }

    /// Inverse relation: exact block swap, no refactorization.
    pub fn inverse(&self) -> Relation {
        let d = self.graph_dim();
        let mut basis = CMatrix::zeros(2 * self.n, d);
        basis.view_mut((0, 0), (self.n, d)).copy_from(&self.g);
        basis.view_mut((self.n, 0), (self.n, d)).copy_from(&self.f);
        Relation::from_orthonormal_graph(self.n, basis)
    }

    /// Adjoint A* = J(A^perp) with J{f, f'} = {f', -f}.  The complement basis
    /// is orthonormal and J is unitary, so the result is exact.
    pub fn adjoint(&self) -> Relation {
        let ortho = self.graph.complement();
        let d = ortho.dim();
        let top = ortho.basis().rows(0, self.n);
        let bottom = ortho.basis().rows(self.n, self.n);
        let mut basis = CMatrix::zeros(2 * self.n, d);
        basis.view_mut((0, 0), (self.n, d)).copy_from(&bottom);
        basis
            .view_mut((self.n, 0), (self.n, d))
            .copy_from(&(-top.into_owned()));
        Relation::from_orthonormal_graph(self.n, basis)
    }

    /// Componentwise sum A +^ B: the subspace sum of the graphs.
    pub fn cw_sum(&self, other: &Relation) -> Result<Relation> {
        self.check_ambient(other)?;
        Relation::from_subspace(self.n, self.graph.sum(&other.graph)?)
    }

    /// Operatorwise sum: pairs (f, f' + f'') with (f, f') in A and
    /// (f, f'') in B.  Parameter pairs (z, w) with F_A z = F_B w come from
    /// the nullspace of [F_A, -F_B].
    pub fn op_sum(&self, other: &Relation) -> Result<Relation> {
        self.check_ambient(other)?;
        let (da, db) = (self.graph_dim(), other.graph_dim());
        if da + db == 0 {
            return Relation::zero_relation(self.n);
        }
        let mut m = CMatrix::zeros(self.n, da + db);
        m.view_mut((0, 0), (self.n, da)).copy_from(&self.f);
        m.view_mut((0, da), (self.n, db))
            .copy_from(&(-other.f.clone()));
        let kernel = Subspace::kernel_of_abs(&m, BLOCK_CUTOFF)?;
        let k = kernel.dim();
        if k == 0 {
            return Relation::zero_relation(self.n);
        }
        let z = kernel.basis().rows(0, da).into_owned();
        let w = kernel.basis().rows(da, db).into_owned();
        let mut cols = CMatrix::zeros(2 * self.n, k);
        cols.view_mut((0, 0), (self.n, k)).copy_from(&(&self.f * &z));
        cols.view_mut((self.n, 0), (self.n, k))
            .copy_from(&(&self.g * &z + &other.g * &w));
        let graph = Subspace::from_cols_abs(2 * self.n, &cols, BLOCK_CUTOFF)?;
        Relation::from_subspace(self.n, graph)
    }

    /// Operatorwise difference A - B.
    pub fn op_diff(&self, other: &Relation) -> Result<Relation> {
        self.op_sum(&other.scalar_mul(Complex64::new(-1.0, 0.0)))
    }

    /// The relation cA = {(f, c f') : (f, f') in A}.
    pub fn scalar_mul(&self, c: Complex64) -> Relation {
        let d = self.graph_dim();
        let mut cols = CMatrix::zeros(2 * self.n, d);
        cols.view_mut((0, 0), (self.n, d)).copy_from(&self.f);
        cols.view_mut((self.n, 0), (self.n, d))
            .copy_from(&(&self.g * c));
        let graph = Subspace::from_cols_abs(2 * self.n, &cols, BLOCK_CUTOFF * c.norm().max(1.0))
            .expect("ambient checked at construction");
        Relation::from_subspace(self.n, graph).expect("n unchanged")
    }

    /// A - lambda, sharing dom and mul with A.
    pub fn shift(&self, lambda: Complex64) -> Relation {
        let scalar = Relation::from_operator(
            &CMatrix::from_diagonal_element(self.n, self.n, -lambda),
            &Subspace::full(self.n),
        )
        .expect("square matrix on full domain");
        self.op_sum(&scalar).expect("same ambient dimension")
    }

    /// Product A o B: pairs (f, f') with some h, (f, h) in B and (h, f') in
    /// A.  The intermediate h is matched through the nullspace of
    /// [G_B, -F_A].
    pub fn product(&self, other: &Relation) -> Result<Relation> {
        self.check_ambient(other)?;
        let (da, db) = (self.graph_dim(), other.graph_dim());
        if da + db == 0 {
            return Relation::zero_relation(self.n);
        }
        let mut m = CMatrix::zeros(self.n, db + da);
        m.view_mut((0, 0), (self.n, db)).copy_from(&other.g);
        m.view_mut((0, db), (self.n, da))
            .copy_from(&(-self.f.clone()));
        let kernel = Subspace::kernel_of_abs(&m, BLOCK_CUTOFF)?;
        let k = kernel.dim();
        if k == 0 {
            return Relation::zero_relation(self.n);
        }
        let w = kernel.basis().rows(0, db).into_owned();
        let z = kernel.basis().rows(db, da).into_owned();
        let mut cols = CMatrix::zeros(2 * self.n, k);
        cols.view_mut((0, 0), (self.n, k)).copy_from(&(&other.f * &w));
        cols.view_mut((self.n, 0), (self.n, k))
            .copy_from(&(&self.g * &z));
        let graph = Subspace::from_cols_abs(2 * self.n, &cols, BLOCK_CUTOFF)?;
        Relation::from_subspace(self.n, graph)
    }

    /// Componentwise orthogonal sum: block-embeds the graphs into
    /// C^(n1+n2) x C^(n1+n2).
    pub fn cw_orth_sum(&self, other: &Relation) -> Relation {
        let (n1, n2) = (self.n, other.n);
        let n = n1 + n2;
        let (d1, d2) = (self.graph_dim(), other.graph_dim());
        let mut basis = CMatrix::zeros(2 * n, d1 + d2);
        basis.view_mut((0, 0), (n1, d1)).copy_from(&self.f);
        basis.view_mut((n, 0), (n1, d1)).copy_from(&self.g);
        basis.view_mut((n1, d1), (n2, d2)).copy_from(&other.f);
        basis.view_mut((n + n1, d1), (n2, d2)).copy_from(&other.g);
        Relation::from_orthonormal_graph(n, basis)
    }

    /// A restricted to values in S: graph(A) intersected with C^n x S.
    pub fn restrict_range(&self, s: &Subspace) -> Result<Relation> {
        if s.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: s.ambient_dim(),
            });
        }
        let window = Relation::cross(&Subspace::full(self.n), s)?;
        Relation::from_subspace(self.n, self.graph.intersect(window.graph())?)
    }

    /// A restricted to first components in S: graph(A) intersected with
    /// S x C^n.
    pub fn restrict_domain(&self, s: &Subspace) -> Result<Relation> {
        if s.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: s.ambient_dim(),
            });
        }
        let window = Relation::cross(s, &Subspace::full(self.n))?;
        Relation::from_subspace(self.n, self.graph.intersect(window.graph())?)
    }

    /// The extension A_inf = A +^ ({0} x mul A*).
    pub fn infinity_ext(&self) -> Relation {
        let tail = Relation::cross(&Subspace::zero(self.n), &self.adjoint().mul())
            .expect("matching ambient dimensions");
        self.cw_sum(&tail).expect("matching ambient dimensions")
    }

    /// Pushes the relation through an isometry V: C^n -> C^m, giving a
    /// relation in the larger space.
    pub fn embed(&self, v: &CMatrix) -> Result<Relation> {
        let m = v.nrows();
        if v.ncols() != self.n || m < self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.ncols(),
            });
        }
        let defect = (v.adjoint() * v - CMatrix::identity(self.n, self.n)).norm();
        if defect > 1e-10 {
            return Err(Error::NotAnIsometry { defect });
        }
        let d = self.graph_dim();
        let mut cols = CMatrix::zeros(2 * m, d);
        cols.view_mut((0, 0), (m, d)).copy_from(&(v * &self.f));
        cols.view_mut((m, 0), (m, d)).copy_from(&(v * &self.g));
        let graph = Subspace::from_cols(2 * m, &cols, None)?;
        Relation::from_subspace(m, graph)
    }

    /// Value of the operator part at f: G F^+ f, which lands orthogonal to
    /// mul A because the graph basis is orthonormal.
    pub fn op_apply(&self, f: &CVector) -> Result<CVector> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: f.len(),
            });
        }
        if self.graph_dim() == 0 {
            if f.norm() <= EQ_TOL {
                return Ok(CVector::zeros(self.n));
            }
            return Err(Error::OutsideDomain);
        }
        let z = crate::numeric::min_norm_lstsq(&self.f, f, EQ_TOL);
        let residual = (&self.f * &z - f).norm();
        if residual > EQ_TOL * f.norm().max(1.0) {
            return Err(Error::OutsideDomain);
        }
        Ok(&self.g * z)
    }

    fn check_ambient(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Relation) -> bool {
        self.n == other.n && self.graph == other.graph
    }
}

fn default_graph_tol(n: usize) -> f64 {
    2.0 * n as f64 * f64::EPSILON
}

/// Absolute singular-value cutoff for blocks of an orthonormal graph basis.
/// Rounding garbage in such blocks sits near machine epsilon times the unit
/// graph scale, far below this; genuine graph directions sit far above it.
pub(crate) const BLOCK_CUTOFF: f64 = 1e-10;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::unit_vector;
    use crate::testutil::{random_matrix, random_subspace, seeded_rng};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// dom = ker = span e1, ran = mul = span e2; selfadjoint and singular.
    fn a_sd() -> Relation {
        let mut v1 = CVector::zeros(4);
        v1[0] = c(1.0, 0.0);
        let mut v2 = CVector::zeros(4);
        v2[3] = c(1.0, 0.0);
        Relation::from_graph(2, &[v1, v2]).unwrap()
    }

    fn nilpotent() -> Relation {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        Relation::from_operator(&m, &Subspace::full(2)).unwrap()
    }

    fn random_relation(rng: &mut impl rand::Rng, n: usize, d: usize) -> Relation {
        Relation::from_subspace(n, random_subspace(rng, 2 * n, d)).unwrap()
    }

    #[test]
    fn identity_has_full_graph_dimension() {
        let id = Relation::from_operator(&CMatrix::identity(2, 2), &Subspace::full(2)).unwrap();
        assert_eq!(id.graph_dim(), 2);
        let parts = id.components();
        assert!(parts.dom.is_full() && parts.ran.is_full());
        assert!(parts.ker.is_zero() && parts.mul.is_zero());
    }

    #[test]
    fn graph_fixture_components_read_off_basis() {
        let a = a_sd();
        let parts = a.components();
        assert!(parts.dom.contains(&unit_vector(2, 0)) && parts.dom.dim() == 1);
        assert!(parts.ran.contains(&unit_vector(2, 1)) && parts.ran.dim() == 1);
        assert!(parts.ker.contains(&unit_vector(2, 0)) && parts.ker.dim() == 1);
        assert!(parts.mul.contains(&unit_vector(2, 1)) && parts.mul.dim() == 1);
    }

    #[test]
    fn nilpotent_matrix_kernel_equals_range() {
        let parts = nilpotent().components();
        assert!(parts.ker.contains(&unit_vector(2, 0)) && parts.ker.dim() == 1);
        assert!(parts.ran.contains(&unit_vector(2, 0)) && parts.ran.dim() == 1);
        assert!(parts.mul.is_zero());
    }

    #[test]
    fn zero_ambient_is_rejected() {
        assert!(matches!(Relation::from_graph(0, &[]), Err(Error::ZeroAmbient)));
    }

    #[test]
    fn zero_graph_dimension_is_legal() {
        let z = Relation::zero_relation(3).unwrap();
        assert_eq!(z.graph_dim(), 0);
        assert!(z.dom().is_zero() && z.mul().is_zero());
    }

    #[test]
    fn inverse_swaps_components() {
        let inv = nilpotent().inverse();
        assert!(inv.dom().contains(&unit_vector(2, 0)) && inv.dom().dim() == 1);
        assert!(inv.mul().contains(&unit_vector(2, 0)) && inv.mul().dim() == 1);
    }

    #[test]
    fn inverse_of_identity_is_identity() {
        let id = Relation::identity_on(&Subspace::full(3));
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn adjoint_of_scalar_i_is_scalar_minus_i() {
        let full = Subspace::full(1);
        let mi = Relation::from_operator(&CMatrix::from_element(1, 1, c(0.0, 1.0)), &full).unwrap();
        let expected =
            Relation::from_operator(&CMatrix::from_element(1, 1, c(0.0, -1.0)), &full).unwrap();
        assert_eq!(mi.adjoint(), expected);
    }

    #[test]
    fn adjoint_of_zero_relation_is_everything() {
        let z = Relation::zero_relation(1).unwrap();
        assert_eq!(z.adjoint().graph_dim(), 2);
    }

    #[test]
    fn graph_fixture_is_selfadjoint() {
        let a = a_sd();
        assert_eq!(a.adjoint(), a);
    }

    #[test]
    fn op_sum_of_matrix_graphs_adds_matrices() {
        let mut rng = seeded_rng(21);
        let m1 = random_matrix(&mut rng, 3, 3);
        let m2 = random_matrix(&mut rng, 3, 3);
        let full = Subspace::full(3);
        let a = Relation::from_operator(&m1, &full).unwrap();
        let b = Relation::from_operator(&m2, &full).unwrap();
        let expected = Relation::from_operator(&(m1 + m2), &full).unwrap();
        assert_eq!(a.op_sum(&b).unwrap(), expected);
    }

    #[test]
    fn zero_relation_is_neutral_for_cw_sum() {
        let mut rng = seeded_rng(5);
        let a = random_relation(&mut rng, 3, 2);
        let z = Relation::zero_relation(3).unwrap();
        assert_eq!(a.cw_sum(&z).unwrap(), a);
    }

    #[test]
    fn op_sum_keeps_singular_fixture() {
        let a = a_sd();
        assert_eq!(a.op_sum(&a).unwrap(), a);
    }

    #[test]
    fn product_of_matrix_graphs_multiplies_matrices() {
        let mut rng = seeded_rng(33);
        let m1 = random_matrix(&mut rng, 3, 3);
        let m2 = random_matrix(&mut rng, 3, 3);
        let full = Subspace::full(3);
        let a = Relation::from_operator(&m1, &full).unwrap();
        let b = Relation::from_operator(&m2, &full).unwrap();
        let expected = Relation::from_operator(&(&m1 * &m2), &full).unwrap();
        assert_eq!(a.product(&b).unwrap(), expected);
    }

    #[test]
    fn relation_times_inverse_is_identity_plus_mul() {
        let a = a_sd();
        let got = a.product(&a.inverse()).unwrap();
        let e2 = Subspace::span(2, &[unit_vector(2, 1)], None).unwrap();
        let expected = Relation::cross(&e2, &e2).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn shift_preserves_domain_and_mul() {
        let a = a_sd();
        let shifted = a.shift(c(2.5, -1.0));
        assert_eq!(shifted.dom(), a.dom());
        assert_eq!(shifted.mul(), a.mul());
    }

    #[test]
    fn cw_orth_sum_of_identities_is_identity() {
        let id1 = Relation::identity_on(&Subspace::full(1));
        let got = id1.cw_orth_sum(&id1);
        assert_eq!(got, Relation::identity_on(&Subspace::full(2)));
    }

    #[test]
    fn cw_orth_sum_components_are_blockwise() {
        let a = a_sd();
        let z = Relation::zero_relation(1).unwrap();
        let s = a.cw_orth_sum(&z);
        assert_eq!(s.n(), 3);
        let parts = s.components();
        assert!(parts.dom.contains(&unit_vector(3, 0)) && parts.dom.dim() == 1);
        assert!(parts.mul.contains(&unit_vector(3, 1)) && parts.mul.dim() == 1);
    }

    #[test]
    fn infinity_ext_of_densely_defined_is_identity_map() {
        let mut rng = seeded_rng(8);
        let m = random_matrix(&mut rng, 3, 3);
        let a = Relation::from_operator(&m, &Subspace::full(3)).unwrap();
        assert_eq!(a.infinity_ext(), a);
    }

    #[test]
    fn infinity_ext_of_partial_zero_operator() {
        let e1 = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let a = Relation::zero_on(&e1);
        assert_eq!(a.infinity_ext(), a_sd());
    }

    #[test]
    fn restrict_range_to_full_space_is_identity() {
        let mut rng = seeded_rng(14);
        let a = random_relation(&mut rng, 3, 4);
        assert_eq!(a.restrict_range(&Subspace::full(3)).unwrap(), a);
    }

    #[test]
    fn restrict_range_of_fixture_keeps_kernel_line() {
        let a = a_sd();
        let e1 = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let got = a.restrict_range(&e1).unwrap();
        assert_eq!(got, Relation::zero_on(&e1));
    }

    #[test]
    fn cross_with_zero_first_factor_is_purely_multivalued() {
        let t = Subspace::span(2, &[unit_vector(2, 1)], None).unwrap();
        let r = Relation::cross(&Subspace::zero(2), &t).unwrap();
        assert!(r.dom().is_zero());
        assert_eq!(r.mul(), t);
    }

    #[test]
    fn embed_with_identity_is_neutral() {
        let mut rng = seeded_rng(40);
        let a = random_relation(&mut rng, 3, 2);
        assert_eq!(a.embed(&CMatrix::identity(3, 3)).unwrap(), a);
    }

    #[test]
    fn embed_inclusion_of_identity_line() {
        let id1 = Relation::identity_on(&Subspace::full(1));
        let mut v = CMatrix::zeros(2, 1);
        v[(0, 0)] = c(1.0, 0.0);
        let got = id1.embed(&v).unwrap();
        let e1 = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        assert_eq!(got, Relation::identity_on(&e1));
    }

    #[test]
    fn embed_rejects_non_isometry() {
        let a = a_sd();
        let v = CMatrix::from_element(3, 2, c(0.7, 0.0));
        assert!(matches!(a.embed(&v), Err(Error::NotAnIsometry { .. })));
    }

    #[test]
    fn op_apply_returns_operator_part_value() {
        let a = a_sd();
        // e1 maps to 0 modulo mul; the operator-part value is exactly 0.
        let v = a.op_apply(&unit_vector(2, 0)).unwrap();
        assert!(v.norm() <= 1e-12);
        assert!(matches!(a.op_apply(&unit_vector(2, 1)), Err(Error::OutsideDomain)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn adjoint_swaps_domain_and_mul(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 6) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            let star = a.adjoint();
            prop_assert!(a.dom().complement().opening(&star.mul()) <= 1e-9);
            prop_assert!(a.ran().complement().opening(&star.ker()) <= 1e-9);
        }

        #[test]
        fn double_adjoint_is_identity(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 6) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            prop_assert!(a.adjoint().adjoint() == a);
        }

        #[test]
        fn inverse_commutes_with_adjoint(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 5) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            prop_assert!(a.inverse().adjoint() == a.adjoint().inverse());
        }

        #[test]
        fn cw_sum_adjoint_is_adjoint_intersection(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 4) as usize;
            let a = random_relation(&mut rng, n, (seed % (n as u64 + 2)) as usize);
            let b = random_relation(&mut rng, n, ((seed / 9) % (n as u64 + 2)) as usize);
            let lhs = a.cw_sum(&b).unwrap().adjoint();
            let rhs = Relation::from_subspace(
                n,
                a.adjoint().graph().intersect(b.adjoint().graph()).unwrap(),
            ).unwrap();
            prop_assert!(lhs == rhs);
        }

        #[test]
        fn op_sum_adjoint_inclusion_and_operator_equality(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 4) as usize;
            let a = random_relation(&mut rng, n, (seed % (n as u64 + 2)) as usize);
            let b = random_relation(&mut rng, n, 1 + ((seed / 9) % (n as u64 + 1)) as usize);
            let sum_star = a.op_sum(&b).unwrap().adjoint();
            let star_sum = a.adjoint().op_sum(&b.adjoint()).unwrap();
            prop_assert!(star_sum.graph().leq(sum_star.graph()));

            let m = random_matrix(&mut rng, n, n);
            let everywhere = Relation::from_operator(&m, &Subspace::full(n)).unwrap();
            let lhs = a.op_sum(&everywhere).unwrap().adjoint();
            let rhs = a.adjoint().op_sum(&everywhere.adjoint()).unwrap();
            prop_assert!(lhs == rhs);
        }

        #[test]
        fn product_adjoint_inclusion_and_operator_equality(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 4) as usize;
            let a = random_relation(&mut rng, n, (seed % (n as u64 + 2)) as usize);
            let b = random_relation(&mut rng, n, ((seed / 7) % (n as u64 + 2)) as usize);
            let prod_star = a.product(&b).unwrap().adjoint();
            let star_prod = b.adjoint().product(&a.adjoint()).unwrap();
            prop_assert!(star_prod.graph().leq(prod_star.graph()));

            let m = random_matrix(&mut rng, n, n);
            let everywhere = Relation::from_operator(&m, &Subspace::full(n)).unwrap();
            let lhs = everywhere.product(&b).unwrap().adjoint();
            let rhs = b.adjoint().product(&everywhere.adjoint()).unwrap();
            prop_assert!(lhs == rhs);
        }

        #[test]
        fn adjoint_distributes_over_orthogonal_sum(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n1 = 1 + (seed % 3) as usize;
            let n2 = 1 + ((seed / 5) % 3) as usize;
            let a = random_relation(&mut rng, n1, (seed % (n1 as u64 + 1)) as usize);
            let b = random_relation(&mut rng, n2, ((seed / 11) % (n2 as u64 + 1)) as usize);
            let lhs = a.cw_orth_sum(&b).adjoint();
            let rhs = a.adjoint().cw_orth_sum(&b.adjoint());
            prop_assert!(lhs == rhs);
        }
    }
}
