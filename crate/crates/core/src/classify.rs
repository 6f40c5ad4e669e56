//! Predicates placing a relation in the operator-theoretic taxonomy.
//!
//! With an orthonormal graph basis [F; G] the value form (f', f) of an
//! element parametrized by z is z^H (F^H G) z, so symmetry, dissipativity,
//! accretivity and sectoriality all reduce to Hermitian-form tests on the
//! d x d matrix F^H G.  Tightness predicates compare domains and ranges
//! against the adjoint as subspaces (never by dimension count), and the two
//! normality predicates work through the operator parts.

use num_complex::Complex64;

use crate::numeric;
use crate::relation::Relation;
use crate::subspace::Subspace;
use crate::{CMatrix, Error, Result, EQ_TOL};

/// Relative floor for deciding positive semidefiniteness of a form matrix.
const PSD_TOL: f64 = 1e-10;

/// The two Hermitian-form ingredients read off the graph basis.
#[derive(Clone, Debug)]
pub struct FormPair {
    /// F^H G; the value form (f', f) is z^H cross z.
    pub cross: CMatrix,
    /// F^H F; z^H gram z = ||f||^2.
    pub gram: CMatrix,
}

pub fn form_pair(a: &Relation) -> FormPair {
    FormPair {
        cross: a.f_block().adjoint() * a.g_block(),
        gram: a.f_block().adjoint() * a.f_block(),
    }
}

fn hermitian_half(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn skew_half(m: &CMatrix) -> CMatrix {
    (m - m.adjoint()) * Complex64::new(0.0, -0.5)
}

/// Smallest eigenvalue at least -PSD_TOL times the spectral norm.  The
/// scale is floored at one: form matrices hold inner products of unit
/// vectors, so an all-noise matrix (e.g. the value form of a purely
/// multivalued relation) must count as positive semidefinite.
fn is_psd(m: &CMatrix) -> bool {
    if m.nrows() == 0 {
        return true;
    }
    let eigs = numeric::hermitian_eigenvalues(m);
    let scale = eigs.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
    eigs[0] >= -PSD_TOL * scale
}

pub fn is_symmetric(a: &Relation) -> bool {
    numeric::spectral_norm(&skew_half(&form_pair(a).cross)) <= EQ_TOL
}

pub fn is_selfadjoint(a: &Relation) -> bool {
    a.graph().opening(a.adjoint().graph()) <= EQ_TOL
}

pub fn is_formally_domain_tight(a: &Relation) -> bool {
    a.dom().leq(&a.adjoint().dom())
}

pub fn is_domain_tight(a: &Relation) -> bool {
    a.dom() == a.adjoint().dom()
}

pub fn is_formally_range_tight(a: &Relation) -> bool {
    a.ran().leq(&a.adjoint().ran())
}

pub fn is_range_tight(a: &Relation) -> bool {
    a.ran() == a.adjoint().ran()
}

/// The range lies inside the multivalued part, so the operator part vanishes.
pub fn is_singular(a: &Relation) -> bool {
    a.ran().leq(&a.mul())
}

/// The relation is (the graph of) an operator.
pub fn is_regular(a: &Relation) -> bool {
    a.mul().is_zero()
}

/// Im (f', f) >= 0 on the graph.
pub fn is_dissipative(a: &Relation) -> bool {
    is_psd(&skew_half(&form_pair(a).cross))
}

/// Re (f', f) >= 0 on the graph.
pub fn is_accretive(a: &Relation) -> bool {
    is_psd(&hermitian_half(&form_pair(a).cross))
}

pub fn is_nonnegative(a: &Relation) -> bool {
    is_symmetric(a) && is_accretive(a)
}

/// (tan alpha) Re (f', f) >= |Im (f', f)| on the graph.  The scalar
/// inequality holds for every element exactly when both Hermitian matrices
/// tan(alpha) H - S and tan(alpha) H + S are positive semidefinite.
pub fn is_sectorial(a: &Relation, alpha: f64) -> Result<bool> {
    if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidAngle { alpha });
    }
    let t = Complex64::new(alpha.tan(), 0.0);
    let cross = form_pair(a).cross;
    let h = hermitian_half(&cross);
    let s = skew_half(&cross);
    Ok(is_psd(&(&h * t - &s)) && is_psd(&(&h * t + &s)))
}

/// Existence of an isometry V from A into A* fixing first components.
///
/// An element of A is (f, A_op f + m) with (f, m) ranging over
/// dom A x mul A, and a candidate image must be (f, (A*)_op f + w) with w in
/// mul A*.  Since operator-part values are orthogonal to the respective mul
/// parts, matching all inner products amounts to factoring the Gram gap
/// Delta = G^H G - Y^H Y (Y = (A*)_op F on the graph basis) as W^H W with W
/// mapping into mul A*.  That is possible exactly when Delta is positive
/// semidefinite with rank at most dim mul A*.
pub fn is_formally_normal(a: &Relation) -> bool {
    let star = a.adjoint();
    if !a.dom().leq(&star.dom()) {
        return false;
    }
    let d = a.graph_dim();
    if d == 0 {
        return true;
    }
    let n = a.n();
    let mut y = CMatrix::zeros(n, d);
    for j in 0..d {
        let f = a.f_block().column(j).into_owned();
        match star.op_apply(&f) {
            Ok(v) => y.set_column(j, &v),
            Err(_) => return false,
        }
    }
    let delta = a.g_block().adjoint() * a.g_block() - y.adjoint() * &y;
    let delta = hermitian_half(&delta);
    let eigs = numeric::hermitian_eigenvalues(&delta);
    let scale = eigs.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
    let tol = PSD_TOL * scale;
    if eigs[0] < -tol {
        return false;
    }
    let rank = eigs.iter().filter(|e| **e > tol).count();
    rank <= star.mul().dim()
}

/// mul A = mul A*, dom A = (mul A)^perp, and the matrix of the operator part
/// on that complement is normal.
pub fn is_normal(a: &Relation) -> bool {
    let star = a.adjoint();
    if a.mul() != star.mul() || a.dom() != a.mul().complement() {
        return false;
    }
    let h_basis = a.mul().complement().basis().clone();
    let h = h_basis.ncols();
    let mut m = CMatrix::zeros(h, h);
    for j in 0..h {
        let f = h_basis.column(j).into_owned();
        match a.op_apply(&f) {
            Ok(v) => m.set_column(j, &(h_basis.adjoint() * v)),
            Err(_) => return false,
        }
    }
    let comm = &m * m.adjoint() - m.adjoint() * &m;
    let scale = numeric::spectral_norm(&m);
    numeric::spectral_norm(&comm) <= EQ_TOL * (1.0 + scale * scale)
}

/// Numerical-range classes that have a maximality notion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Class {
    Symmetric,
    Dissipative,
    Accretive,
    Nonnegative,
    Sectorial(f64),
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Class::Symmetric => write!(f, "symmetric"),
            Class::Dissipative => write!(f, "dissipative"),
            Class::Accretive => write!(f, "accretive"),
            Class::Nonnegative => write!(f, "nonnegative"),
            Class::Sectorial(alpha) => write!(f, "sectorial({alpha})"),
        }
    }
}

/// Maximality within the class: ran(A - lambda0) is everything at a
/// canonical point lambda0 outside the closed numerical range of the class.
/// Symmetric relations are tested at both +/- i; dissipative at -i; the
/// right-half-plane classes at -1.
pub fn is_maximal(a: &Relation, class: Class) -> Result<bool> {
    let member = match class {
        Class::Symmetric => is_symmetric(a),
        Class::Dissipative => is_dissipative(a),
        Class::Accretive => is_accretive(a),
        Class::Nonnegative => is_nonnegative(a),
        Class::Sectorial(alpha) => is_sectorial(a, alpha)?,
    };
    if !member {
        return Err(Error::ClassMismatch {
            class: class.to_string(),
        });
    }
    let surjective_after = |lambda: Complex64| a.shift(lambda).ran().is_full();
    Ok(match class {
        Class::Symmetric => surjective_after(Complex64::i()) && surjective_after(-Complex64::i()),
        Class::Dissipative => surjective_after(-Complex64::i()),
        _ => surjective_after(Complex64::new(-1.0, 0.0)),
    })
}

fn check_extension(a: &Relation, b: &Relation, v: &CMatrix) -> Result<Relation> {
    let embedded = a.embed(v)?;
    if embedded.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            got: embedded.n(),
        });
    }
    if !embedded.graph().leq(b.graph()) {
        return Err(Error::NotAnExtension);
    }
    Ok(embedded)
}

/// V(dom A) = dom B intersected with the embedded copy of the small space.
pub fn is_tight_extension(a: &Relation, b: &Relation, v: &CMatrix) -> Result<bool> {
    check_extension(a, b, v)?;
    let m = b.n();
    let v_dom = Subspace::from_cols(m, &(v * a.dom().basis()), None)?;
    let ran_v = Subspace::from_cols(m, v, None)?;
    let cut = b.dom().intersect(&ran_v)?;
    Ok(v_dom == cut)
}

/// Pulling dom B* back through V^H recovers dom A*.
pub fn is_star_tight_extension(a: &Relation, b: &Relation, v: &CMatrix) -> Result<bool> {
    check_extension(a, b, v)?;
    let pulled = Subspace::from_cols(a.n(), &(v.adjoint() * b.adjoint().dom().basis()), None)?;
    Ok(pulled == a.adjoint().dom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::unit_vector;
    use crate::testutil::{random_matrix, random_subspace, random_unitary, seeded_rng};
    use crate::CVector;
    use proptest::prelude::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn a_sd() -> Relation {
        let mut v1 = CVector::zeros(4);
        v1[0] = c(1.0, 0.0);
        let mut v2 = CVector::zeros(4);
        v2[3] = c(1.0, 0.0);
        Relation::from_graph(2, &[v1, v2]).unwrap()
    }

    fn matrix_graph(m: &CMatrix) -> Relation {
        Relation::from_operator(m, &Subspace::full(m.nrows())).unwrap()
    }

    fn random_relation(rng: &mut impl Rng, n: usize, d: usize) -> Relation {
        Relation::from_subspace(n, random_subspace(rng, 2 * n, d)).unwrap()
    }

    /// Hermitian H restricted to D, then all of D-perp glued on as mul
    /// directions: a domain tight symmetric relation.
    fn tight_symmetric(rng: &mut impl Rng, n: usize, dom_dim: usize) -> Relation {
        let r = random_matrix(rng, n, n);
        let h = &r + r.adjoint();
        let d = random_subspace(rng, n, dom_dim);
        let base = Relation::from_operator(&h, &d).unwrap();
        let tail = Relation::cross(&Subspace::zero(n), &d.complement()).unwrap();
        base.cw_sum(&tail).unwrap()
    }

    /// M = H + iK with K >= 0 on D, plus mul directions inside D-perp.
    fn dissipative_with_mul(rng: &mut impl Rng, n: usize, dom_dim: usize, full_tail: bool) -> Relation {
        let r = random_matrix(rng, n, n);
        let h = &r + r.adjoint();
        let s = random_matrix(rng, n, n);
        let k = &s * s.adjoint();
        let m = h + k * Complex64::i();
        let d = random_subspace(rng, n, dom_dim);
        let base = Relation::from_operator(&m, &d).unwrap();
        let w_all = d.complement();
        let w = if full_tail || w_all.dim() == 0 {
            w_all
        } else {
            Subspace::from_cols(n, &w_all.basis().columns(0, 1).into_owned(), None).unwrap()
        };
        let tail = Relation::cross(&Subspace::zero(n), &w).unwrap();
        base.cw_sum(&tail).unwrap()
    }

    #[test]
    fn form_pair_of_identity_is_half_identity() {
        let a = Relation::identity_on(&Subspace::full(3));
        let fp = form_pair(&a);
        let half = CMatrix::identity(3, 3) * c(0.5, 0.0);
        assert!((fp.cross - &half).norm() <= 1e-12);
        assert!((fp.gram - half).norm() <= 1e-12);
    }

    #[test]
    fn form_pair_of_zero_relation_is_empty() {
        let a = Relation::zero_relation(2).unwrap();
        let fp = form_pair(&a);
        assert_eq!(fp.cross.nrows(), 0);
        assert_eq!(fp.gram.nrows(), 0);
    }

    #[test]
    fn form_pair_of_singular_fixture_has_zero_cross() {
        let fp = form_pair(&a_sd());
        assert!(fp.cross.norm() <= 1e-14);
    }

    #[test]
    fn hermitian_graph_is_symmetric_selfadjoint_tight() {
        let mut rng = seeded_rng(3);
        let r = random_matrix(&mut rng, 3, 3);
        let a = matrix_graph(&(&r + r.adjoint()));
        assert!(is_symmetric(&a));
        assert!(is_selfadjoint(&a));
        assert!(is_domain_tight(&a));
        assert!(is_range_tight(&a) == (a.ran() == a.adjoint().ran()));
    }

    #[test]
    fn singular_fixture_predicates() {
        let a = a_sd();
        assert!(is_selfadjoint(&a));
        assert!(is_domain_tight(&a));
        assert!(is_singular(&a));
        assert!(!is_regular(&a));
        assert!(is_normal(&a));
    }

    #[test]
    fn partial_zero_operator_is_formally_but_not_domain_tight() {
        let e1 = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let a = Relation::zero_on(&e1);
        assert!(is_symmetric(&a));
        assert!(is_formally_domain_tight(&a));
        assert!(!is_domain_tight(&a));
    }

    #[test]
    fn positive_diagonal_is_nonnegative_and_sectorial() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        let a = matrix_graph(&m);
        assert!(is_nonnegative(&a));
        assert!(is_accretive(&a));
        assert!(is_sectorial(&a, 0.3).unwrap());
        assert!(is_sectorial(&a, 1.2).unwrap());
    }

    #[test]
    fn nilpotent_matrix_is_not_dissipative() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let a = matrix_graph(&m);
        assert!(!is_dissipative(&a));
        assert!(!is_accretive(&a));
        assert!(!is_formally_normal(&a));
        assert!(!is_normal(&a));
    }

    #[test]
    fn scalar_one_plus_i_sectorial_threshold() {
        let m = CMatrix::from_element(1, 1, c(1.0, 1.0));
        let a = matrix_graph(&m);
        let quarter = std::f64::consts::FRAC_PI_4;
        assert!(is_sectorial(&a, quarter + 0.1).unwrap());
        assert!(!is_sectorial(&a, quarter - 0.1).unwrap());
    }

    #[test]
    fn sectorial_rejects_angle_outside_range() {
        let a = matrix_graph(&CMatrix::identity(2, 2));
        assert!(matches!(is_sectorial(&a, 0.0), Err(Error::InvalidAngle { .. })));
        assert!(matches!(
            is_sectorial(&a, std::f64::consts::FRAC_PI_2),
            Err(Error::InvalidAngle { .. })
        ));
    }

    #[test]
    fn normal_matrix_graph_is_formally_normal_and_normal() {
        let mut rng = seeded_rng(11);
        let u = random_unitary(&mut rng, 3);
        let mut d = CMatrix::zeros(3, 3);
        for i in 0..3 {
            d[(i, i)] = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * c(4.0, 0.0);
        }
        let m = &u * d * u.adjoint();
        let a = matrix_graph(&m);
        assert!(is_formally_normal(&a));
        assert!(is_normal(&a));
    }

    #[test]
    fn hermitian_graph_is_maximal_symmetric() {
        let mut rng = seeded_rng(19);
        let r = random_matrix(&mut rng, 3, 3);
        let a = matrix_graph(&(&r + r.adjoint()));
        assert!(is_maximal(&a, Class::Symmetric).unwrap());
    }

    #[test]
    fn partial_zero_operator_is_not_maximal_symmetric() {
        let e1 = Subspace::span(2, &[unit_vector(2, 0)], None).unwrap();
        let a = Relation::zero_on(&e1);
        assert!(!is_maximal(&a, Class::Symmetric).unwrap());
    }

    #[test]
    fn singular_fixture_is_maximal_symmetric() {
        assert!(is_maximal(&a_sd(), Class::Symmetric).unwrap());
    }

    #[test]
    fn maximality_rejects_wrong_class() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let a = matrix_graph(&m);
        assert!(matches!(
            is_maximal(&a, Class::Symmetric),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn extension_of_itself_is_tight_both_ways() {
        let mut rng = seeded_rng(23);
        let a = random_relation(&mut rng, 3, 3);
        let v = CMatrix::identity(3, 3);
        assert!(is_tight_extension(&a, &a, &v).unwrap());
        assert!(is_star_tight_extension(&a, &a, &v).unwrap());
    }

    #[test]
    fn identity_line_inside_identity_plane_is_tight() {
        let a = Relation::identity_on(&Subspace::full(1));
        let b = Relation::identity_on(&Subspace::full(2));
        let mut v = CMatrix::zeros(2, 1);
        v[(0, 0)] = c(1.0, 0.0);
        assert!(is_tight_extension(&a, &b, &v).unwrap());
        assert!(is_star_tight_extension(&a, &b, &v).unwrap());
    }

    #[test]
    fn non_extension_pair_is_rejected() {
        let a = Relation::identity_on(&Subspace::full(1));
        let b = Relation::zero_relation(2).unwrap();
        let mut v = CMatrix::zeros(2, 1);
        v[(0, 0)] = c(1.0, 0.0);
        assert!(matches!(
            is_tight_extension(&a, &b, &v),
            Err(Error::NotAnExtension)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn symmetry_two_ways_agree(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 4) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            let by_form = is_symmetric(&a);
            let by_graph = a.graph().leq(a.adjoint().graph());
            prop_assert_eq!(by_form, by_graph);
            // symmetric constructions must pass both ways
            let s = tight_symmetric(&mut rng, n, d.min(n));
            prop_assert!(is_symmetric(&s));
            prop_assert!(s.graph().leq(s.adjoint().graph()));
        }

        #[test]
        fn form_classes_match_scalar_sampling(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 4) as usize;
            let d = 1 + (seed % (2 * n as u64)) as usize;
            let a = random_relation(&mut rng, n, d);
            let cross = form_pair(&a).cross;
            for (m, passes) in [
                (skew_half(&cross), is_dissipative(&a)),
                (hermitian_half(&cross), is_accretive(&a)),
            ] {
                let scale = numeric::spectral_norm(&m);
                if passes {
                    for _ in 0..10 {
                        let z = crate::testutil::random_vector(&mut rng, d);
                        let q = (z.adjoint() * &m * &z)[(0, 0)].re;
                        prop_assert!(q >= -1e-8 * (1.0 + scale) * z.norm_squared());
                    }
                } else if m.nrows() > 0 {
                    let (evals, evecs) = numeric::hermitian_eigen(&m);
                    let z = evecs.column(0).into_owned();
                    let q = (z.adjoint() * &m * &z)[(0, 0)].re;
                    prop_assert!(q < 0.0);
                    prop_assert!(evals[0] < 0.0);
                }
            }
        }

        #[test]
        fn tight_symmetric_relations_are_selfadjoint(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 2 + (seed % 3) as usize;
            let d = (seed % (n as u64 + 1)) as usize;
            let a = tight_symmetric(&mut rng, n, d);
            prop_assert!(is_symmetric(&a));
            prop_assert!(is_domain_tight(&a));
            prop_assert!(a.adjoint().mul().leq(&a.mul()));
            prop_assert!(is_selfadjoint(&a));
            prop_assert!(is_maximal(&a, Class::Symmetric).unwrap());
        }

        #[test]
        fn infinity_ext_selfadjoint_iff_symmetric(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 3) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            prop_assert_eq!(is_selfadjoint(&a.infinity_ext()), is_symmetric(&a));
            let s = tight_symmetric(&mut rng, n, d.min(n));
            prop_assert!(is_selfadjoint(&s.infinity_ext()));
        }

        #[test]
        fn infinity_ext_keeps_formal_tightness(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 3) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            let ext = a.infinity_ext();
            prop_assert_eq!(is_formally_domain_tight(&a), is_formally_domain_tight(&ext));
            if is_domain_tight(&a) {
                prop_assert!(ext.adjoint() == a.adjoint());
            }
        }

        #[test]
        fn dissipative_constructions_behave(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 2 + (seed % 3) as usize;
            let d = 1 + (seed % (n as u64 - 1)) as usize;
            // partial tail: dissipative, mul A inside mul A*
            let a = dissipative_with_mul(&mut rng, n, d, false);
            prop_assert!(is_dissipative(&a));
            prop_assert!(a.mul().leq(&a.adjoint().mul()));
            // full tail: maximal, so mul A = mul A*
            let b = dissipative_with_mul(&mut rng, n, d, true);
            prop_assert!(is_maximal(&b, Class::Dissipative).unwrap());
            prop_assert!(b.mul() == b.adjoint().mul());
            // the operator part compressed to its space stays in class
            let h_basis = b.mul().complement().basis().clone();
            let op = crate::decompose::operator_part(&b);
            let mut stacked = CMatrix::zeros(2 * h_basis.ncols(), op.graph_dim());
            stacked.view_mut((0, 0), (h_basis.ncols(), op.graph_dim()))
                .copy_from(&(h_basis.adjoint() * op.f_block()));
            stacked.view_mut((h_basis.ncols(), 0), (h_basis.ncols(), op.graph_dim()))
                .copy_from(&(h_basis.adjoint() * op.g_block()));
            if h_basis.ncols() > 0 {
                let compressed = Relation::from_subspace(
                    h_basis.ncols(),
                    Subspace::from_cols(2 * h_basis.ncols(), &stacked, None).unwrap(),
                ).unwrap();
                prop_assert!(is_dissipative(&compressed));
            }
        }

        #[test]
        fn range_tightness_ties_to_inverse(seed in any::<u64>()) {
            let mut rng = seeded_rng(seed);
            let n = 1 + (seed % 4) as usize;
            let d = (seed % (2 * n as u64 + 1)) as usize;
            let a = random_relation(&mut rng, n, d);
            prop_assert_eq!(is_range_tight(&a), is_domain_tight(&a.inverse()));
            prop_assert_eq!(is_formally_range_tight(&a), is_formally_domain_tight(&a.inverse()));
        }
    }
}
