//! Splitting a relation into operator-like and multivalued pieces.
//!
//! Four families are provided: the canonical operatorwise sum A = A_reg +
//! A_sing, the componentwise sum A = A_op +^ A_mul, the orthogonal variant of
//! the componentwise sum (which exists only when the domain is orthogonal to
//! the multivalued part), and the Cartesian decomposition A = A_1 + i A_2
//! into symmetric components (which exists only when dom A lies inside
//! dom A*).  Every constructor reassembles its parts and reports the opening
//! between the reassembly and the original as `identity_residual`, so
//! tolerance drift is observed rather than hidden; for the same reason A** is
//! always computed as adjoint of adjoint even though it equals A here.

use num_complex::Complex64;

use crate::relation::Relation;
use crate::subspace::Subspace;
use crate::{CVector, Result};

/// Which family a [`Decomposition`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    /// Operatorwise sum of the regular and singular parts.
    Canonical,
    /// Componentwise sum of the operator part and {0} x mul A.
    Componentwise,
    /// Componentwise sum with graph-orthogonal parts.
    Orthogonal,
    /// A = A_1 + i A_2 with both components symmetric.
    Cartesian,
    /// Componentwise decomposition of the adjoint.
    AdjointComponentwise,
    /// Componentwise sum built from the maximal operator part.
    MaximalPart,
}

/// Parts of a decomposition plus how well they reassemble the original.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub parts: Vec<Relation>,
    /// Opening between the original graph and the reassembled graph.
    pub identity_residual: f64,
}

/// Outcome of the decomposability check: either the componentwise
/// decomposition or a vector certifying the failure.
#[derive(Clone, Debug)]
pub enum Decomposability {
    Decomposable(Decomposition),
    NotDecomposable { witness: CVector },
}

impl Decomposability {
    pub fn holds(&self) -> bool {
        matches!(self, Decomposability::Decomposable(_))
    }
}

/// The space the operator-like parts live in: the orthogonal complement of
/// mul A**.
fn regular_space(a: &Relation) -> Subspace {
    a.adjoint().adjoint().mul().complement()
}

/// Regular part A_reg = P A, with P the projection onto the complement of
/// mul A**.  Always an operator.
pub fn regular_part(a: &Relation) -> Relation {
    let p = regular_space(a).projector();
    let proj = Relation::from_operator(&p, &Subspace::full(a.n())).expect("square projector");
    proj.product(a).expect("same ambient dimension")
}

/// Singular part A_sing = (I - P) A; its range stays inside mul A** and its
/// multivalued part is exactly mul A.
pub fn singular_part(a: &Relation) -> Relation {
    let n = a.n();
    let p = crate::CMatrix::identity(n, n) - regular_space(a).projector();
    let proj = Relation::from_operator(&p, &Subspace::full(n)).expect("square projector");
    proj.product(a).expect("same ambient dimension")
}

/// Canonical operatorwise decomposition A = A_reg + A_sing.
pub fn canonical_decompose(a: &Relation) -> Decomposition {
    let reg = regular_part(a);
    let sing = singular_part(a);
    let reassembled = reg.op_sum(&sing).expect("same ambient dimension");
    let identity_residual = reassembled.graph().opening(a.graph());
    Decomposition {
        kind: DecompositionKind::Canonical,
        parts: vec![reg, sing],
        identity_residual,
    }
}

/// Operator part A_op: the pairs of A whose values lie in the complement of
/// mul A**.
pub fn operator_part(a: &Relation) -> Relation {
    a.restrict_range(&regular_space(a))
        .expect("same ambient dimension")
}

/// Multivalued part A_mul = {0} x mul A.
pub fn mul_part(a: &Relation) -> Relation {
    Relation::cross(&Subspace::zero(a.n()), &a.mul()).expect("same ambient dimension")
}

/// Componentwise decomposition A = A_op +^ A_mul.
pub fn componentwise_decompose(a: &Relation) -> Decomposition {
    let op = operator_part(a);
    let mul = mul_part(a);
    let reassembled = op.cw_sum(&mul).expect("same ambient dimension");
    let identity_residual = reassembled.graph().opening(a.graph());
    Decomposition {
        kind: DecompositionKind::Componentwise,
        parts: vec![op, mul],
        identity_residual,
    }
}

/// Maximal operator part A_m = P_m A with P_m onto (mul A)^perp.
pub fn max_operator_part(a: &Relation) -> Relation {
    let p = a.mul().complement().projector();
    let proj = Relation::from_operator(&p, &Subspace::full(a.n())).expect("square projector");
    proj.product(a).expect("same ambient dimension")
}

/// Decomposition built from the maximal operator part, A = A_m +^ A_mul.
pub fn maximal_part_decompose(a: &Relation) -> Decomposition {
    let m = max_operator_part(a);
    let mul = mul_part(a);
    let reassembled = m.cw_sum(&mul).expect("same ambient dimension");
    let identity_residual = reassembled.graph().opening(a.graph());
    Decomposition {
        kind: DecompositionKind::MaximalPart,
        parts: vec![m, mul],
        identity_residual,
    }
}

/// Checks ran((I - P) A) inside mul A and hands back either the
/// componentwise decomposition or the violating range vector.  The check is
/// executed even though it cannot fail here (mul A is closed), so the
/// certificate is earned, not assumed.
pub fn is_decomposable(a: &Relation) -> Decomposability {
    let sing_ran = singular_part(a).ran();
    let mul = a.mul();
    if sing_ran.leq(&mul) {
        return Decomposability::Decomposable(componentwise_decompose(a));
    }
    let p = mul.projector();
    let witness = sing_ran
        .basis()
        .column_iter()
        .map(|col| {
            let v = col.into_owned();
            let res = (&v - &p * &v).norm();
            (v, res)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(v, _)| v)
        .expect("leq failed, so the range is nonempty");
    Decomposability::NotDecomposable { witness }
}

/// Orthogonal componentwise decomposition.  Exists exactly when mul A lies
/// inside mul A*, equivalently when dom A is orthogonal to mul A; the
/// refusal carries a domain vector with a component inside mul A.
pub fn orthogonal_decompose(a: &Relation) -> Result<Decomposition> {
    if a.mul().leq(&a.adjoint().mul()) {
        let mut dec = componentwise_decompose(a);
        dec.kind = DecompositionKind::Orthogonal;
        return Ok(dec);
    }
    let p = a.mul().projector();
    let witness = a
        .dom()
        .basis()
        .column_iter()
        .map(|col| {
            let v = col.into_owned();
            let overlap = (&p * &v).norm();
            (v, overlap)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(v, _)| v)
        .expect("non-orthogonal domain is nonzero");
    Err(crate::Error::NotOrthogonallyDecomposable {
        witness: witness.iter().copied().collect(),
    })
}

/// Componentwise decomposition of the adjoint, A* = (A*)_op +^ (A*)_mul.
pub fn adjoint_decompose(a: &Relation) -> Decomposition {
    let mut dec = componentwise_decompose(&a.adjoint());
    dec.kind = DecompositionKind::AdjointComponentwise;
    dec
}

/// Re A = (A + A*) / 2; symmetric, with mul Re A = mul A + mul A*.
pub fn real_part(a: &Relation) -> Relation {
    a.op_sum(&a.adjoint())
        .expect("same ambient dimension")
        .scalar_mul(Complex64::new(0.5, 0.0))
}

/// Im A = (A - A*) / 2i; symmetric, with the same domain and mul as Re A.
pub fn imag_part(a: &Relation) -> Relation {
    a.op_diff(&a.adjoint())
        .expect("same ambient dimension")
        .scalar_mul(Complex64::new(0.0, -0.5))
}

/// Cartesian components A_1 = (A + (A*)_op) / 2 and
/// A_2 = (A - (A*)_op) / 2i.  Requires dom A inside dom A*; the error
/// carries a witness from dom A outside dom A*.
pub fn cartesian_components(a: &Relation) -> Result<(Relation, Relation)> {
    let star = a.adjoint();
    let dom_star = star.dom();
    if !a.dom().leq(&dom_star) {
        let p = dom_star.projector();
        let witness = a
            .dom()
            .basis()
            .column_iter()
            .map(|col| {
                let v = col.into_owned();
                let res = (&v - &p * &v).norm();
                (v, res)
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(v, _)| v)
            .expect("domain containment failed, so dom A is nonzero");
        return Err(crate::Error::NotFormallyDomainTight {
            witness: witness.iter().copied().collect(),
        });
    }
    let star_op = operator_part(&star);
    let a1 = a
        .op_sum(&star_op)
        .expect("same ambient dimension")
        .scalar_mul(Complex64::new(0.5, 0.0));
    let a2 = a
        .op_diff(&star_op)
        .expect("same ambient dimension")
        .scalar_mul(Complex64::new(0.0, -0.5));
    debug_assert!({
        let envelope = real_part(a)
            .op_sum(&imag_part(a).scalar_mul(Complex64::new(0.0, 1.0)))
            .expect("same ambient dimension");
        a.infinity_ext().graph().opening(envelope.graph()) <= 1e-8
    });
    Ok((a1, a2))
}

/// Cartesian decomposition A = A_1 + i A_2 wrapped with its reassembly
/// residual.
pub fn cartesian_decompose(a: &Relation) -> Result<Decomposition> {
    let (a1, a2) = cartesian_components(a)?;
    let reassembled = a1
        .op_sum(&a2.scalar_mul(Complex64::new(0.0, 1.0)))
        .expect("same ambient dimension");
    let identity_residual = reassembled.graph().opening(a.graph());
    Ok(Decomposition {
        kind: DecompositionKind::Cartesian,
        parts: vec![a1, a2],
        identity_residual,
    })
}
