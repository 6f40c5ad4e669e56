//! Random fixtures shared by the in-crate unit tests.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{CMatrix, Subspace};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex gaussian via Box-Muller.
pub fn gauss(rng: &mut impl Rng) -> Complex64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * (std::f64::consts::TAU * u2).cos(), r * (std::f64::consts::TAU * u2).sin())
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gauss(rng))
}

pub fn random_vector(rng: &mut impl Rng, len: usize) -> crate::CVector {
    crate::CVector::from_fn(len, |_, _| gauss(rng))
}

/// Haar-ish random subspace of C^m with exact dimension d.
pub fn random_subspace(rng: &mut impl Rng, m: usize, d: usize) -> Subspace {
    assert!(d <= m);
    if d == 0 {
        return Subspace::zero(m);
    }
    let cols = random_matrix(rng, m, d);
    let sub = Subspace::from_cols(m, &cols, None).unwrap();
    assert_eq!(sub.dim(), d, "gaussian columns should be full rank");
    sub
}

/// Random unitary from the QR of a gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, m: usize) -> CMatrix {
    let qr = random_matrix(rng, m, m).qr();
    qr.q()
}
