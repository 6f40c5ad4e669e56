//! Spectral data of a relation, read off the graph pencil (G, F).
//!
//! An eigenvalue of a relation A is a lambda with {f, lambda f} in A for some
//! nonzero f.  In graph coordinates that asks for z with (G - lambda F) z = 0
//! and F z != 0, where the multivalued part may absorb the residual; the
//! directions with F z = 0 themselves carry mul A and are reported as a
//! separate bucket, never as eigenvalues.  The lower bound
//! c(lambda) = inf ||f' - lambda f|| / ||f|| over the relation detects points
//! of regular type, and together with the defect number
//! dim ran(A - lambda)^perp decides resolvent membership and norm estimates.
//!
//! The numerical range is explored two ways: seeded random sampling of
//! Rayleigh values, and a constructive convexity witness that, given two
//! achieved values, produces an element achieving any convex combination of
//! them.

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numeric;
use crate::relation::{ElementPair, Relation, BLOCK_CUTOFF};
use crate::subspace::Subspace;
use crate::{CMatrix, CVector, Error, Result};

/// Relative singular-value cutoff for rank drops of the reduced pencil at a
/// candidate eigenvalue.
const PENCIL_RANK_TOL: f64 = 1e-8;

/// Candidates from the compressed pencil closer than this (relative to their
/// size) collapse into one listing; QZ scatters a defective eigenvalue by
/// about sqrt(eps), far inside this radius.
const CLUSTER_TOL: f64 = 1e-6;

/// Relative slack allowed when checking the resolvent norm estimate.
const EST_SLACK: f64 = 1e-8;

/// Fixed stream for generic-rank probes and the pencil compression, so
/// reports are reproducible run to run.
const COMPRESS_SEED: u64 = 0x51B9_D04A_6E2C_8F13;

/// Eigenvalue data and probe samples for one relation.
///
/// `eigenvalues` lists each isolated eigenvalue together with the kernel
/// dimension of the reduced pencil there (the geometric multiplicity).
/// `mul_dim` is the dimension of mul A, the F z = 0 directions that classical
/// texts file under an eigenvalue at infinity.  When the reduced pencil is
/// singular as a pencil, its kernel keeps a positive dimension
/// `persistent_dim` at every lambda, so every complex number is an
/// eigenvalue; only the points where the kernel grows beyond that floor are
/// listed.  `samples` records (lambda, c(lambda), defect) at the probe points
/// 0, 1, -1, i, -i.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub eigenvalues: Vec<(Complex64, usize)>,
    pub mul_dim: usize,
    pub persistent_dim: usize,
    pub samples: Vec<(Complex64, f64, usize)>,
}

/// The graph pencil with ker F deflated out of the parameter space and values
/// projected off mul A, so kernels correspond to genuine eigenvectors.
struct ReducedPencil {
    /// F K1, the eigenvector candidates; full column rank by construction.
    fk: CMatrix,
    /// Q G K1 with Q the projector onto (mul A)^perp.
    qgk: CMatrix,
    /// Q F K1.
    qfk: CMatrix,
    /// Spectral norms of the two pencil blocks, the scale rank cutoffs refer
    /// to.  At an eigenvalue whose kernel is everything, the evaluated matrix
    /// is pure rounding debris and its own largest singular value says
    /// nothing.
    gnorm: f64,
    fnorm: f64,
}

impl ReducedPencil {
    fn build(a: &Relation) -> ReducedPencil {
        let kerf = Subspace::kernel_of_abs(a.f_block(), BLOCK_CUTOFF)
            .expect("parameter space has positive dimension");
        let k1 = kerf.complement();
        let q = a.mul().complement().projector();
        let fk = a.f_block() * k1.basis();
        let qgk = &q * (a.g_block() * k1.basis());
        let qfk = &q * &fk;
        let gnorm = numeric::spectral_norm(&qgk);
        let fnorm = numeric::spectral_norm(&qfk);
        ReducedPencil {
            fk,
            qgk,
            qfk,
            gnorm,
            fnorm,
        }
    }

    fn dim(&self) -> usize {
        self.fk.ncols()
    }

    fn at(&self, lambda: Complex64) -> CMatrix {
        &self.qgk - &self.qfk * lambda
    }

    fn scale(&self, lambda: Complex64) -> f64 {
        (self.gnorm + lambda.norm() * self.fnorm).max(f64::MIN_POSITIVE)
    }

    fn kernel_dim(&self, lambda: Complex64) -> usize {
        let cutoff = PENCIL_RANK_TOL * self.scale(lambda);
        let rank = numeric::singular_values(&self.at(lambda))
            .iter()
            .filter(|s| **s > cutoff)
            .count();
        self.dim() - rank
    }
}

/// Eigenvalues of the relation with multiplicities, the dimension of the
/// multivalued bucket, and c/defect samples at the five canonical probes.
///
/// Directions with F z = 0 are deflated once and counted in `mul_dim`; the
/// remaining rectangular pencil is compressed by fixed random maps to a
/// square one whose QZ eigenvalues are candidates, and every candidate is
/// validated (and its multiplicity measured) by the rank drop it causes.
pub fn eigenvalues(a: &Relation) -> SpectralReport {
    let probes = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    let samples = probes
        .iter()
        .map(|&l| (l, regularity_constant(a, l), defect(a, l)))
        .collect();
    if a.graph_dim() == 0 {
        return SpectralReport {
            eigenvalues: Vec::new(),
            mul_dim: 0,
            persistent_dim: 0,
            samples,
        };
    }
    let mul_dim = a.mul().dim();
    let pencil = ReducedPencil::build(a);
    let d1 = pencil.dim();
    if d1 == 0 {
        return SpectralReport {
            eigenvalues: Vec::new(),
            mul_dim,
            persistent_dim: 0,
            samples,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(COMPRESS_SEED);
    let generic_rank = (0..2)
        .map(|_| {
            let probe = numeric::gauss(&mut rng) * 3.0;
            d1 - pencil.kernel_dim(probe)
        })
        .max()
        .expect("two probes");
    let persistent_dim = d1 - generic_rank;

    let mut eigenvalues = Vec::new();
    if generic_rank > 0 {
        let n = a.n();
        let u = CMatrix::from_fn(generic_rank, n, |_, _| numeric::gauss(&mut rng));
        let v = CMatrix::from_fn(d1, generic_rank, |_, _| numeric::gauss(&mut rng));
        let m0 = &u * &pencil.qgk * &v;
        let m1 = &u * &pencil.qfk * &v;
        let mut candidates: Vec<Complex64> = numeric::generalized_eigenvalues(&m0, &m1)
            .into_iter()
            .filter(|(alpha, beta)| beta.norm() > 1e-10 * (alpha.norm() + beta.norm()))
            .map(|(alpha, beta)| alpha / beta)
            .collect();
        candidates
            .sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
        for cluster in cluster_means(&candidates) {
            let kdim = pencil.kernel_dim(cluster);
            if kdim > persistent_dim {
                eigenvalues.push((cluster, kdim));
            }
        }
    }

    SpectralReport {
        eigenvalues,
        mul_dim,
        persistent_dim,
        samples,
    }
}

/// Collapses sorted candidates into cluster means, chaining consecutive
/// points that sit within `CLUSTER_TOL` of each other.
fn cluster_means(sorted: &[Complex64]) -> Vec<Complex64> {
    let mut means = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        let mut sum = sorted[i];
        while j < sorted.len()
            && (sorted[j] - sorted[j - 1]).norm() <= CLUSTER_TOL * sorted[i].norm().max(1.0)
        {
            sum += sorted[j];
            j += 1;
        }
        means.push(sum / (j - i) as f64);
        i = j;
    }
    means
}

/// The lower bound c(lambda) = inf ||f' - lambda f|| / ||f|| over nonzero-f
/// elements of A, the modulus of injectivity of A - lambda.
///
/// Multivalued shifts of f' are minimized away by the mul-A projection inside
/// the reduced pencil, and the F-normalization is absorbed through the thin
/// SVD of F K1, leaving a plain smallest singular value.  A relation with
/// domain {0} has an empty infimum, reported as infinity; an exact rank drop
/// at working precision is snapped to exactly 0.
pub fn regularity_constant(a: &Relation, lambda: Complex64) -> f64 {
    if a.dom().dim() == 0 {
        return f64::INFINITY;
    }
    let pencil = ReducedPencil::build(a);
    let w = pencil.at(lambda);
    let (_, sb, vb) = numeric::svd_full(&pencil.fk);
    let d1 = pencil.dim();
    let whitened = &w * CMatrix::from_fn(d1, d1, |i, j| vb[(i, j)] / sb[j]);
    let sigma = numeric::singular_values(&whitened);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let smin = sigma.last().copied().unwrap_or(0.0);
    // The whitened pencil inherits the scale of the blocks over the smallest
    // F-direction; below working precision at that scale the rank has
    // genuinely dropped and the infimum is 0, not debris.
    let floor = pencil.scale(lambda) / sb.last().copied().unwrap_or(1.0);
    if smin <= 100.0 * f64::EPSILON * smax.max(floor) {
        0.0
    } else {
        smin
    }
}

/// Scale-aware threshold below which c(lambda) counts as zero: rounding in
/// the pencil entries grows like ||G|| + |lambda| ||F||.
pub fn gamma_tol(a: &Relation, lambda: Complex64) -> f64 {
    1e-9
        * (numeric::spectral_norm(a.g_block())
            + lambda.norm() * numeric::spectral_norm(a.f_block()))
}

/// Whether lambda is a point of regular type for A, i.e. c(lambda) clears
/// the rounding threshold.
pub fn in_regular_type_set(a: &Relation, lambda: Complex64) -> bool {
    regularity_constant(a, lambda) > gamma_tol(a, lambda)
}

/// Defect number dim ran(A - lambda)^perp = n - rank(G - lambda F).
pub fn defect(a: &Relation, lambda: Complex64) -> usize {
    let shifted = a.g_block() - a.f_block() * lambda;
    let cutoff = BLOCK_CUTOFF * (1.0 + lambda.norm());
    let rank = numeric::singular_values(&shifted)
        .iter()
        .filter(|s| **s > cutoff)
        .count();
    a.n() - rank
}

/// Resolvent membership: lambda of regular type with full range (in finite
/// dimension dense range means all of the space).
pub fn in_resolvent_set(a: &Relation, lambda: Complex64) -> bool {
    in_regular_type_set(a, lambda) && defect(a, lambda) == 0
}

/// Checks the resolvent norm estimate
/// 1/c(lambda) <= (1/c(mu)) / (1 - |lambda - mu| / c(mu)) with a small
/// relative slack.  Requires mu of regular type and the step |lambda - mu|
/// strictly inside the disk of radius c(mu).
pub fn resolvent_norm_bound_check(a: &Relation, mu: Complex64, lambda: Complex64) -> Result<bool> {
    let c_mu = regularity_constant(a, mu);
    if !(c_mu > gamma_tol(a, mu)) {
        return Err(Error::Precondition {
            msg: format!("mu = {mu} is not a point of regular type"),
        });
    }
    let step = (lambda - mu).norm();
    let q = if c_mu.is_infinite() { 0.0 } else { step / c_mu };
    if q >= 1.0 {
        return Err(Error::Precondition {
            msg: format!("step |lambda - mu| = {step:.3e} reaches c(mu) = {c_mu:.3e}"),
        });
    }
    let c_lambda = regularity_constant(a, lambda);
    let lhs = c_lambda.recip();
    let rhs = c_mu.recip() / (1.0 - q);
    Ok(lhs <= rhs * (1.0 + EST_SLACK) + f64::MIN_POSITIVE)
}

/// Draws `count` numerical-range values (f', f) with ||f|| = 1 from seeded
/// gaussian graph coordinates; deterministic per (seed, count), and each
/// index derives its own stream so ranges could be split across workers.
///
/// A purely multivalued relation (dom A = {0}) has numerical range {0} by
/// convention and yields that single point.
pub fn nrange_sample(a: &Relation, count: usize, seed: u64) -> Vec<Complex64> {
    if a.graph_dim() == 0 || a.dom().dim() == 0 {
        return vec![Complex64::new(0.0, 0.0)];
    }
    let d = a.graph_dim();
    let cross = a.f_block().adjoint() * a.g_block();
    (0..count)
        .map(|i| {
            let stream = numeric::splitmix64(numeric::splitmix64(seed) ^ (i as u64));
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            loop {
                let z = CVector::from_fn(d, |_, _| numeric::gauss(&mut rng));
                let norm = (a.f_block() * &z).norm();
                if norm > 1e-12 * z.norm() {
                    let zn = &z * Complex64::new(1.0 / norm, 0.0);
                    break (zn.adjoint() * &cross * &zn)[(0, 0)];
                }
            }
        })
        .collect()
}

/// Rayleigh value (f', f) / (f, f) of an element pair with nonzero f; the
/// quantity the numerical range collects once f is normalized.
pub fn rayleigh_value(pair: &ElementPair) -> Complex64 {
    pair.f.dotc(&pair.f_prime) / Complex64::new(pair.f.norm_squared(), 0.0)
}

/// Constructive convexity of the numerical range: given graph coordinates of
/// two elements with unit domain components and distinct values lambda_1 and
/// lambda_2, returns an element of A whose Rayleigh value is
/// u lambda_1 + (1 - u) lambda_2.
///
/// Follows the classical two-dimensional reduction: with
/// H(x1, x2) = ((x1 g1 + x2 g2, x1 f1 + x2 f2) - lambda_2 G) / (lambda_1 - lambda_2)
/// and G the squared norm of x1 f1 + x2 f2, a unimodular twist delta makes
/// both forms real on the curve (t1, delta t2(t1)) of unit-norm combinations,
/// and H runs continuously from 0 to 1 there; bisection lands on H = u.
pub fn nrange_convex_witness(
    a: &Relation,
    z1: &CVector,
    z2: &CVector,
    u: f64,
) -> Result<ElementPair> {
    let d = a.graph_dim();
    if z1.len() != d || z2.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: if z1.len() != d { z1.len() } else { z2.len() },
        });
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Precondition {
            msg: format!("segment parameter u = {u} lies outside [0, 1]"),
        });
    }
    let endpoint = |z: &CVector| -> Result<(CVector, CVector)> {
        let f = a.f_block() * z;
        let g = a.g_block() * z;
        let norm = f.norm();
        if norm <= 1e-12 {
            return Err(Error::Precondition {
                msg: "endpoint coordinate has vanishing domain component".into(),
            });
        }
        let scale = Complex64::new(1.0 / norm, 0.0);
        Ok((&f * scale, &g * scale))
    };
    let (f1, g1) = endpoint(z1)?;
    let (f2, g2) = endpoint(z2)?;
    let lambda1 = f1.dotc(&g1);
    let lambda2 = f2.dotc(&g2);
    let gap = lambda1 - lambda2;
    if gap.norm() <= 1e-12 * lambda1.norm().max(lambda2.norm()).max(1.0) {
        return Err(Error::DegenerateSegment);
    }

    let c1 = (f1.dotc(&g2) - lambda2 * f1.dotc(&f2)) / gap;
    let c2 = (f2.dotc(&g1) - lambda2 * f2.dotc(&f1)) / gap;
    let twist = c1.conj() - c2;
    let delta = if twist.norm() <= 1e-14 * (1.0 + c1.norm() + c2.norm()) {
        Complex64::new(1.0, 0.0)
    } else {
        twist / twist.norm()
    };
    let beta = (delta * f1.dotc(&f2)).re.clamp(-1.0, 1.0);
    let gamma = (delta * c1 + delta.conj() * c2).re;
    let sign = if beta >= 0.0 { 1.0 } else { -1.0 };
    let root = |t1: f64| (1.0 - (1.0 - beta * beta) * t1 * t1).max(0.0).sqrt();
    let h = |t1: f64| (1.0 - beta * gamma) * t1 * t1 + sign * gamma * t1 * root(t1);

    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t1 = 0.5 * (lo + hi);
    let residual = (h(t1) - u).abs();
    if residual > 1e-12 {
        return Err(Error::Bisection { residual });
    }

    let x1 = Complex64::new(t1, 0.0);
    let x2 = delta * (-beta * t1 + sign * root(t1));
    Ok(ElementPair::new(
        &f1 * x1 + &f2 * x2,
        &g1 * x1 + &g2 * x2,
    ))
}
