//! Randomized generators for relations of prescribed type and a registry of
//! the calculus' identities as executable laws.
//!
//! Each law draws fresh relations from the profile its statement needs,
//! measures how far the claimed identity is from holding (openings for
//! equalities, projection defects for inclusions, 0/1 for boolean
//! equivalences) and reports the worst offender together with the seed that
//! reproduces it.  Trial seeds derive from (master seed, law id, trial index)
//! through a fixed mixing function, so trials can run concurrently and a
//! recorded failure replays bit for bit.
//!
//! Structured profiles are built as {(Qh, QSh + Ch) : h} +^ ({0} x W) with Q
//! an orthonormal domain basis, C mapping into the domain's complement and
//! W inside that complement: cross terms then vanish, so the value form of
//! the whole graph is exactly h^H S h and shaping S (Hermitian, PSD real or
//! imaginary part, sector) certifies the class.  Every generated instance is
//! checked against its classify predicate rather than trusted.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{self, Class};
use crate::decompose::{
    self, canonical_decompose, imag_part, max_operator_part, mul_part, operator_part, real_part,
    regular_part, singular_part,
};
use crate::numeric;
use crate::relation::Relation;
use crate::spectral;
use crate::subspace::Subspace;
use crate::{CMatrix, CVector, Error, Result, EQ_TOL};

/// Shapes a generated relation must fit; certified by the matching
/// classify predicate after construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProfileKind {
    Generic,
    Operator,
    Symmetric,
    Selfadjoint,
    Dissipative,
    Accretive,
    /// Numerical range inside the closed sector of the given half-angle.
    Sectorial(f64),
    Singular,
    PurelyMultivalued,
    FormallyDomainTight,
    DomainTight,
}

/// A reproducible recipe for one random relation.
#[derive(Clone, Debug)]
pub struct GenProfile {
    pub kind: ProfileKind,
    pub n: usize,
    /// Requested graph dimension; drawn at random when absent.  Selfadjoint
    /// and domain tight relations always have graph dimension n.
    pub graph_dim: Option<usize>,
    pub seed: u64,
}

impl GenProfile {
    pub fn new(kind: ProfileKind, n: usize, seed: u64) -> GenProfile {
        GenProfile { kind, n, graph_dim: None, seed }
    }

    pub fn with_graph_dim(mut self, d: usize) -> GenProfile {
        self.graph_dim = Some(d);
        self
    }
}

/// One reproducible counterexample candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct LawFailure {
    /// Trial seed; rerunning the law body on it replays the instance.
    pub seed: u64,
    pub residual: f64,
    pub witness: String,
}

/// Outcome of running one law over many random instances.
#[derive(Clone, Debug, PartialEq)]
pub struct LawReport {
    pub law_id: String,
    /// The identity the law checks, in plain text.
    pub statement: String,
    pub trials: u32,
    pub failures: Vec<LawFailure>,
    /// True for statements with no finite-dimensional content beyond the
    /// residual inclusions that are still checked.
    pub degenerate: bool,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Worst residual seen so far in one trial, with a label for the check that
/// produced it.
struct Checks {
    worst: f64,
    label: String,
}

impl Checks {
    fn new() -> Checks {
        Checks { worst: 0.0, label: String::new() }
    }

    fn residual(&mut self, label: &str, r: f64) {
        if r > self.worst {
            self.worst = r;
            self.label = label.to_string();
        }
    }

    fn ensure(&mut self, label: &str, ok: bool) {
        self.residual(label, if ok { 0.0 } else { 1.0 });
    }

    /// All flags must agree (the equivalence holds in both directions).
    fn agree(&mut self, label: &str, flags: &[bool]) {
        let ok = flags.iter().all(|&b| b == flags[0]);
        self.ensure(label, ok);
    }
}

struct Law {
    id: &'static str,
    statement: &'static str,
    degenerate: bool,
    body: fn(&mut ChaCha8Rng, usize) -> Checks,
}

/// Ids of all registered laws, in registry order.
pub fn law_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|l| l.id).collect()
}

/// Runs one law; `dims` is the inclusive range ambient dimensions are drawn
/// from, one draw per trial.
pub fn run_law(
    law_id: &str,
    trials: u32,
    dims: RangeInclusive<usize>,
    seed: u64,
) -> Result<LawReport> {
    let law = REGISTRY
        .iter()
        .find(|l| l.id == law_id)
        .ok_or_else(|| Error::UnknownLaw { id: law_id.to_string() })?;
    check_dims(&dims)?;
    Ok(run_entry(law, trials, &dims, seed))
}

/// Runs every registered law with the same budget.
pub fn run_all(trials: u32, dims: RangeInclusive<usize>, seed: u64) -> Result<Vec<LawReport>> {
    check_dims(&dims)?;
    Ok(REGISTRY.iter().map(|law| run_entry(law, trials, &dims, seed)).collect())
}

fn check_dims(dims: &RangeInclusive<usize>) -> Result<()> {
    if *dims.start() == 0 || dims.is_empty() {
        return Err(Error::Precondition {
            msg: "dimension range must be nonempty with positive lower end".into(),
        });
    }
    Ok(())
}

fn run_entry(law: &Law, trials: u32, dims: &RangeInclusive<usize>, seed: u64) -> LawReport {
    let (lo, hi) = (*dims.start(), *dims.end());
    let failures: Vec<LawFailure> = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let s = trial_seed(seed, law.id, t);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let n = rng.gen_range(lo..=hi);
            let out = (law.body)(&mut rng, n);
            (out.worst > EQ_TOL).then(|| LawFailure {
                seed: s,
                residual: out.worst,
                witness: format!("n={n}: {} residual {:.3e}", out.label, out.worst),
            })
        })
        .collect();
    LawReport {
        law_id: law.id.to_string(),
        statement: law.statement.to_string(),
        trials,
        failures,
        degenerate: law.degenerate,
    }
}

fn fnv1a64(s: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn trial_seed(master: u64, law_id: &str, index: u32) -> u64 {
    numeric::splitmix64(numeric::splitmix64(master ^ fnv1a64(law_id)) ^ u64::from(index))
}

// ---------------------------------------------------------------------------
// generation

/// Builds the relation a profile describes; deterministic in the seed.
pub fn generate(profile: &GenProfile) -> Result<Relation> {
    let n = profile.n;
    if n == 0 {
        return Err(Error::ZeroAmbient);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let a = match profile.kind {
        ProfileKind::Generic => {
            let d = resolve_dim(profile.graph_dim, 2 * n, &mut rng)?;
            generic_relation(&mut rng, n, d)
        }
        ProfileKind::Operator => {
            let d = resolve_dim(profile.graph_dim, n, &mut rng)?;
            operator_relation(&mut rng, n, d)
        }
        ProfileKind::Symmetric => {
            let (k, m) = split_class_dim(profile.graph_dim, n, &mut rng)?;
            form_relation(&mut rng, n, k, m, FormShape::Hermitian)
        }
        ProfileKind::Selfadjoint => {
            require_full_graph(profile.graph_dim, n, "selfadjoint")?;
            selfadjoint_relation(&mut rng, n)
        }
        ProfileKind::Dissipative => {
            let (k, m) = split_class_dim(profile.graph_dim, n, &mut rng)?;
            form_relation(&mut rng, n, k, m, FormShape::ImPsd)
        }
        ProfileKind::Accretive => {
            let (k, m) = split_class_dim(profile.graph_dim, n, &mut rng)?;
            form_relation(&mut rng, n, k, m, FormShape::RePsd)
        }
        ProfileKind::Sectorial(alpha) => {
            if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
                return Err(Error::InvalidAngle { alpha });
            }
            let (k, m) = split_class_dim(profile.graph_dim, n, &mut rng)?;
            form_relation(&mut rng, n, k, m, FormShape::Sector(alpha))
        }
        ProfileKind::Singular => {
            let d = resolve_dim(profile.graph_dim, 2 * n, &mut rng)?;
            let lo = d.saturating_sub(n);
            let s_dim = rng.gen_range(lo..=d.min(n));
            let s = random_subspace(&mut rng, n, s_dim);
            let t = random_subspace(&mut rng, n, d - s_dim);
            Relation::cross(&s, &t).expect("ambients agree")
        }
        ProfileKind::PurelyMultivalued => {
            let d = resolve_dim(profile.graph_dim, n, &mut rng)?;
            let t = random_subspace(&mut rng, n, d);
            Relation::cross(&Subspace::zero(n), &t).expect("ambients agree")
        }
        ProfileKind::FormallyDomainTight => {
            let (k, m) = split_class_dim(profile.graph_dim, n, &mut rng)?;
            form_relation(&mut rng, n, k, m, FormShape::Free)
        }
        ProfileKind::DomainTight => {
            require_full_graph(profile.graph_dim, n, "domain tight")?;
            let k = rng.gen_range(0..=n);
            form_relation(&mut rng, n, k, n - k, FormShape::Free)
        }
    };
    if let Some(d) = profile.graph_dim {
        assert_eq!(a.graph_dim(), d, "generated graph dimension drifted");
    }
    let certified = match profile.kind {
        ProfileKind::Generic => true,
        ProfileKind::Operator => a.mul().dim() == 0,
        ProfileKind::Symmetric => classify::is_symmetric(&a),
        ProfileKind::Selfadjoint => classify::is_selfadjoint(&a),
        ProfileKind::Dissipative => classify::is_dissipative(&a),
        ProfileKind::Accretive => classify::is_accretive(&a),
        ProfileKind::Sectorial(alpha) => classify::is_sectorial(&a, alpha)?,
        ProfileKind::Singular => classify::is_singular(&a),
        ProfileKind::PurelyMultivalued => a.dom().dim() == 0,
        ProfileKind::FormallyDomainTight => classify::is_formally_domain_tight(&a),
        ProfileKind::DomainTight => classify::is_domain_tight(&a),
    };
    assert!(certified, "generated instance failed its class certificate");
    Ok(a)
}

fn resolve_dim(requested: Option<usize>, max: usize, rng: &mut ChaCha8Rng) -> Result<usize> {
    match requested {
        Some(d) if d > max => Err(Error::InfeasibleProfile {
            reason: format!("graph dimension {d} exceeds the feasible maximum {max}"),
        }),
        Some(d) => Ok(d),
        None => Ok(rng.gen_range(0..=max)),
    }
}

/// Classes whose multivalued part is forced orthogonal to the domain have
/// graph dimension dom + mul <= n; splits a requested total into the two.
fn split_class_dim(
    requested: Option<usize>,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(usize, usize)> {
    let d = resolve_dim(requested, n, rng)?;
    let k = rng.gen_range(0..=d);
    Ok((k, d - k))
}

fn require_full_graph(requested: Option<usize>, n: usize, what: &str) -> Result<()> {
    match requested {
        Some(d) if d != n => Err(Error::InfeasibleProfile {
            reason: format!("a {what} relation in dimension {n} has graph dimension {n}, not {d}"),
        }),
        _ => Ok(()),
    }
}

/// How the form matrix S of a structured profile is shaped.
#[derive(Clone, Copy)]
enum FormShape {
    Free,
    Hermitian,
    /// (S - S^H)/2i positive semidefinite: upper half plane values.
    ImPsd,
    /// (S + S^H)/2 positive semidefinite: right half plane values.
    RePsd,
    /// H^(1/2) (I + iB) H^(1/2) with ||B|| < tan(alpha).
    Sector(f64),
    Psd,
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| numeric::gauss(rng))
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> CVector {
    CVector::from_fn(len, |_, _| numeric::gauss(rng))
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Subspace {
    if dim == 0 {
        return Subspace::zero(n);
    }
    loop {
        let s = Subspace::from_cols(n, &random_matrix(rng, n, dim), None).expect("n >= 1");
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random subspace of the given dimension inside `parent`.
fn sub_subspace(rng: &mut ChaCha8Rng, parent: &Subspace, dim: usize) -> Subspace {
    let n = parent.ambient_dim();
    if dim == 0 {
        return Subspace::zero(n);
    }
    loop {
        let cols = parent.basis() * random_matrix(rng, parent.dim(), dim);
        let s = Subspace::from_cols(n, &cols, None).expect("n >= 1");
        if s.dim() == dim {
            return s;
        }
    }
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    numeric::svd_full(&random_matrix(rng, n, n)).0
}

fn hermitian_form(rng: &mut ChaCha8Rng, k: usize) -> CMatrix {
    let r = random_matrix(rng, k, k);
    (&r + r.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Random PSD form, rank anywhere from 0 to k.
fn psd_form(rng: &mut ChaCha8Rng, k: usize) -> CMatrix {
    let rank = rng.gen_range(0..=k);
    let l = random_matrix(rng, k, rank);
    &l * l.adjoint()
}

fn shaped_form(rng: &mut ChaCha8Rng, k: usize, shape: FormShape) -> CMatrix {
    if k == 0 {
        return CMatrix::zeros(0, 0);
    }
    let i = Complex64::i();
    match shape {
        FormShape::Free => random_matrix(rng, k, k),
        FormShape::Hermitian => hermitian_form(rng, k),
        FormShape::ImPsd => hermitian_form(rng, k) + psd_form(rng, k) * i,
        FormShape::RePsd => psd_form(rng, k) + hermitian_form(rng, k) * i,
        FormShape::Psd => psd_form(rng, k),
        FormShape::Sector(alpha) => {
            let h = psd_form(rng, k);
            let (vals, vecs) = numeric::hermitian_eigen(&h);
            let roots = CMatrix::from_fn(k, k, |r, c| {
                if r == c {
                    Complex64::new(vals[r].max(0.0).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let sqrt_h = &vecs * roots * vecs.adjoint();
            let b = hermitian_form(rng, k);
            let norm = numeric::spectral_norm(&b);
            let scale = if norm > 0.0 { 0.9 * alpha.tan() / norm } else { 0.0 };
            let core = CMatrix::identity(k, k) + b * Complex64::new(0.0, scale);
            &sqrt_h * core * sqrt_h
        }
    }
}

/// {(Qh, QSh + Ch) : h in C^k} +^ ({0} x W) with C into and W inside the
/// domain's orthogonal complement; the graph's value form is h^H S h.
fn form_relation(
    rng: &mut ChaCha8Rng,
    n: usize,
    dom_dim: usize,
    mul_dim: usize,
    shape: FormShape,
) -> Relation {
    debug_assert!(dom_dim + mul_dim <= n);
    let d = random_subspace(rng, n, dom_dim);
    let q = d.basis().clone();
    let s = shaped_form(rng, dom_dim, shape);
    let off = (CMatrix::identity(n, n) - d.projector()) * random_matrix(rng, n, dom_dim);
    let values = &q * s + off;
    let mut cols: Vec<CVector> = Vec::with_capacity(dom_dim + mul_dim);
    for j in 0..dom_dim {
        let mut v = CVector::zeros(2 * n);
        v.rows_mut(0, n).copy_from(&q.column(j));
        v.rows_mut(n, n).copy_from(&values.column(j));
        cols.push(v);
    }
    let w = sub_subspace(rng, &d.complement(), mul_dim);
    for j in 0..mul_dim {
        let mut v = CVector::zeros(2 * n);
        v.rows_mut(n, n).copy_from(&w.basis().column(j));
        cols.push(v);
    }
    Relation::from_graph(n, &cols).expect("n >= 1")
}

fn generic_relation(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Relation {
    Relation::from_subspace(n, random_subspace(rng, 2 * n, d)).expect("n >= 1")
}

fn operator_relation(rng: &mut ChaCha8Rng, n: usize, dom_dim: usize) -> Relation {
    let m = random_matrix(rng, n, n);
    Relation::from_operator(&m, &random_subspace(rng, n, dom_dim)).expect("ambients agree")
}

/// Inverse Cayley image {((I-U)h, i(I+U)h)} of a random unitary; a couple of
/// eigenvalues of U are pinned at 1 so the multivalued part is often
/// nontrivial.
fn selfadjoint_relation(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let v = random_unitary(rng, n);
    let pinned = rng.gen_range(0..=n.min(2));
    let phases = CMatrix::from_fn(n, n, |r, c| {
        if r != c {
            Complex64::new(0.0, 0.0)
        } else if r < pinned {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
        }
    });
    let u = &v * phases * v.adjoint();
    let eye = CMatrix::identity(n, n);
    let f = &eye - &u;
    let g = (&eye + &u) * Complex64::i();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = CVector::zeros(2 * n);
        col.rows_mut(0, n).copy_from(&f.column(j));
        col.rows_mut(n, n).copy_from(&g.column(j));
        cols.push(col);
    }
    Relation::from_graph(n, &cols).expect("n >= 1")
}

/// Everywhere defined normal operator on a subspace, made domain tight by
/// filling the complement with multivalued directions.
fn normal_relation(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Relation {
    let d = random_subspace(rng, n, k);
    let op = if k == 0 {
        CMatrix::zeros(n, n)
    } else {
        let v = random_unitary(rng, k);
        let diag = CMatrix::from_fn(k, k, |r, c| {
            if r == c { numeric::gauss(rng) } else { Complex64::new(0.0, 0.0) }
        });
        d.basis() * (&v * diag * v.adjoint()) * d.basis().adjoint()
    };
    let graph = Relation::from_operator(&op, &d).expect("ambients agree");
    graph
        .cw_sum(&Relation::cross(&Subspace::zero(n), &d.complement()).expect("ambients agree"))
        .expect("same ambient")
}

// profile draws used inside law bodies

fn draw_generic(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let d = rng.gen_range(0..=2 * n);
    generic_relation(rng, n, d)
}

fn draw_operator(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let d = rng.gen_range(1..=n);
    operator_relation(rng, n, d)
}

fn draw_shaped(rng: &mut ChaCha8Rng, n: usize, shape: FormShape) -> Relation {
    let d = rng.gen_range(0..=n);
    let k = rng.gen_range(0..=d);
    form_relation(rng, n, k, d - k, shape)
}

fn draw_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    draw_shaped(rng, n, FormShape::Hermitian)
}

fn draw_fdt(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    draw_shaped(rng, n, FormShape::Free)
}

fn draw_dt(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let k = rng.gen_range(0..=n);
    form_relation(rng, n, k, n - k, FormShape::Free)
}

fn draw_maximal(rng: &mut ChaCha8Rng, n: usize, shape: FormShape) -> Relation {
    let k = rng.gen_range(0..=n);
    form_relation(rng, n, k, n - k, shape)
}

fn draw_singular(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let (sd, td) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
    let s = random_subspace(rng, n, sd);
    let t = random_subspace(rng, n, td);
    Relation::cross(&s, &t).expect("ambients agree")
}

fn draw_purely_multivalued(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let td = rng.gen_range(0..=n);
    let t = random_subspace(rng, n, td);
    Relation::cross(&Subspace::zero(n), &t).expect("ambients agree")
}

// ---------------------------------------------------------------------------
// residual helpers

fn cw(a: &Relation, b: &Relation) -> Relation {
    a.cw_sum(b).expect("same ambient")
}

fn plus(a: &Relation, b: &Relation) -> Relation {
    a.op_sum(b).expect("same ambient")
}

/// a o b: apply b first.
fn after(a: &Relation, b: &Relation) -> Relation {
    a.product(b).expect("same ambient")
}

fn inter(a: &Relation, b: &Relation) -> Relation {
    let g = a.graph().intersect(b.graph()).expect("same ambient");
    Relation::from_subspace(a.n(), g).expect("n >= 1")
}

fn cross_rel(s: &Subspace, t: &Subspace) -> Relation {
    Relation::cross(s, t).expect("ambients agree")
}

fn sub_eq(s: &Subspace, t: &Subspace) -> f64 {
    s.opening(t)
}

/// How far `s` sticks out of `t`.
fn sub_incl(s: &Subspace, t: &Subspace) -> f64 {
    if s.dim() == 0 {
        return 0.0;
    }
    let out = s.basis() - t.projector() * s.basis();
    numeric::spectral_norm(&out)
}

fn rel_eq(a: &Relation, b: &Relation) -> f64 {
    a.graph().opening(b.graph())
}

fn rel_incl(a: &Relation, b: &Relation) -> f64 {
    sub_incl(a.graph(), b.graph())
}

/// Rewrites a relation whose components live inside `s` in coordinates of
/// an orthonormal basis of `s`.
fn compress_to(a: &Relation, s: &Subspace) -> Relation {
    let k = s.dim();
    debug_assert!(k > 0, "compression target must be nonzero");
    let qh = s.basis().adjoint();
    let f = &qh * a.f_block();
    let g = &qh * a.g_block();
    let mut cols = CMatrix::zeros(2 * k, a.graph_dim());
    cols.rows_mut(0, k).copy_from(&f);
    cols.rows_mut(k, k).copy_from(&g);
    let graph = Subspace::from_cols(2 * k, &cols, None).expect("k >= 1");
    Relation::from_subspace(k, graph).expect("k >= 1")
}

fn re_plus_i_im(a: &Relation) -> Relation {
    plus(&real_part(a), &imag_part(a).scalar_mul(Complex64::i()))
}

fn re_minus_i_im(a: &Relation) -> Relation {
    plus(&real_part(a), &imag_part(a).scalar_mul(-Complex64::i()))
}

fn unit_in(rng: &mut ChaCha8Rng, s: &Subspace) -> CVector {
    debug_assert!(s.dim() > 0);
    loop {
        let v = s.basis() * random_vector(rng, s.dim());
        let norm = v.norm();
        if norm > 1e-6 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Random point keeping the given distance from every listed eigenvalue.
fn point_avoiding(rng: &mut ChaCha8Rng, eigs: &[(Complex64, usize)], gap: f64) -> Complex64 {
    loop {
        let z = numeric::gauss(rng) * 1.5;
        if eigs.iter().all(|(e, _)| (z - e).norm() >= gap) {
            return z;
        }
    }
}

// ---------------------------------------------------------------------------
// the registry

static REGISTRY: &[Law] = &[
    Law {
        id: "adjoint-duality",
        statement: "(dom A)^perp = mul A* and (ran A)^perp = ker A*, also with A* in place of A",
        degenerate: false,
        body: law_adjoint_duality,
    },
    Law {
        id: "cw-adjoint",
        statement: "(A (+) B)* = A* cap B* and A (+) B = (A* cap B*)*",
        degenerate: false,
        body: law_cw_adjoint,
    },
    Law {
        id: "opsum-adjoint",
        statement: "A* + B* lies inside (A + B)*, with equality when B is an everywhere defined operator",
        degenerate: false,
        body: law_opsum_adjoint,
    },
    Law {
        id: "product-adjoint",
        statement: "B* A* lies inside (A B)*, with equality when A is an everywhere defined operator",
        degenerate: false,
        body: law_product_adjoint,
    },
    Law {
        id: "projection-product",
        statement: "for mul A* = X (+) Y and R projecting onto dom A (+) X: AR = A (+) (Y x {0}) and A(I - R) = (dom A (+) X) x mul A",
        degenerate: false,
        body: law_projection_product,
    },
    Law {
        id: "dom-ran-sum",
        statement: "dom A + ran A* = H = ran A + dom A*",
        degenerate: false,
        body: law_dom_ran_sum,
    },
    Law {
        id: "canonical",
        statement: "A = A_reg + A_sing with A_reg regular, A_sing singular and mul A_sing = mul A",
        degenerate: false,
        body: law_canonical,
    },
    Law {
        id: "singular-equiv",
        statement: "A singular iff dom A* = ker A* iff A* = dom A* x mul A* iff A = dom A x mul A; A, A^-1 and A* are singular together",
        degenerate: false,
        body: law_singular_equiv,
    },
    Law {
        id: "componentwise-unique",
        statement: "A = B (+) ({0} x mul A) with ran B inside (mul A)^perp holds exactly for B = A_op, and the sum is direct",
        degenerate: false,
        body: law_componentwise_unique,
    },
    Law {
        id: "reglem-equiv",
        statement: "dom A_op = dom A, A_reg = A_op, ran(A - A_op) inside mul A, and A = A_reg (+) ({0} x mul A)",
        degenerate: false,
        body: law_reglem_equiv,
    },
    Law {
        id: "maxpart",
        statement: "A_m = P_m A is an operator with A = A_m (+) ({0} x mul A), dom A_m = dom A, ran A_m perpendicular to mul A, and A_m = A_op = A_reg",
        degenerate: false,
        body: law_maxpart,
    },
    Law {
        id: "orth-iff",
        statement: "the componentwise parts of A are graph orthogonal iff mul A lies inside mul A*",
        degenerate: false,
        body: law_orth_iff,
    },
    Law {
        id: "adjoint-orth-iff",
        statement: "the componentwise parts of A* are graph orthogonal iff mul A* lies inside mul A",
        degenerate: false,
        body: law_adjoint_orth_iff,
    },
    Law {
        id: "opstar-commute",
        statement: "for domain tight A, (A_op)* = (A*)_op inside (mul A)^perp",
        degenerate: false,
        body: law_opstar_commute,
    },
    Law {
        id: "mulba",
        statement: "A is domain tight with mul A = mul A* iff A = B (+) ({0} x mul A) with B an everywhere defined domain tight operator in (mul A)^perp",
        degenerate: false,
        body: law_mulba,
    },
    Law {
        id: "convexity",
        statement: "the normalized numerical range is convex: each convex combination of two achieved values is achieved by a constructed element",
        degenerate: false,
        body: law_convexity,
    },
    Law {
        id: "nr-mulinc",
        statement: "when the numerical range omits a half plane or sector, mul A lies inside mul A* and c(z) >= dist(z, W(A)) outside",
        degenerate: false,
        body: law_nr_mulinc,
    },
    Law {
        id: "maximal-mul",
        statement: "maximal dissipative, accretive, sectorial and nonnegative relations satisfy mul A = mul A*",
        degenerate: false,
        body: law_maximal_mul,
    },
    Law {
        id: "resolvent-est",
        statement: "|z - mu| < c(mu) keeps z of regular type and propagates the resolvent norm bound",
        degenerate: false,
        body: law_resolvent_est,
    },
    Law {
        id: "defect-const",
        statement: "the defect dim ran(A - z)^perp is constant across points of regular type",
        degenerate: false,
        body: law_defect_const,
    },
    Law {
        id: "ainf-adjoint",
        statement: "(A_inf)* = A* cap (dom A x H), dom (A_inf)* = dom A cap dom A*, mul (A_inf)* = mul A*",
        degenerate: false,
        body: law_ainf_adjoint,
    },
    Law {
        id: "ainf-tight",
        statement: "A and A_inf are formally domain tight together; A_inf is domain tight iff dom A lies inside dom A*; A is domain tight iff in addition dom A* lies inside dom A, and then (A_inf)* = A* = (A*)_inf",
        degenerate: false,
        body: law_ainf_tight,
    },
    Law {
        id: "ainf-marci",
        statement: "for formally domain tight A: mul A_inf = mul A*, A_inf = A iff mul A* = mul A, A cap ({0} x mul A*) = {0} x mul A with directness iff A is an operator, and A_inf is an operator iff dom A is everything",
        degenerate: false,
        body: law_ainf_marci,
    },
    Law {
        id: "ainf-selfadjoint",
        statement: "A_inf is selfadjoint iff A is symmetric and dom A lies inside dom A*",
        degenerate: false,
        body: law_ainf_selfadjoint,
    },
    Law {
        id: "sym-sa",
        statement: "a domain tight symmetric relation with mul A* inside mul A is selfadjoint; maximal symmetric coincides with selfadjoint here",
        degenerate: false,
        body: law_sym_sa,
    },
    Law {
        id: "reim",
        statement: "RE A = RE A* and IM A = -IM A*, both symmetric, mul RE A = mul IM A = mul A + mul A*, RE(iA) = -IM A and IM(iA) = RE A",
        degenerate: false,
        body: law_reim,
    },
    Law {
        id: "eenv",
        statement: "RE A and IM A lie inside A (+) A*, ran IM A = mul(A (+) A*), ran RE A = mul(iA (+) (iA)*), and RE A +- i IM A sit between RE A (+) ({0} x ran IM A) and A (+) A* (likewise with RE and IM exchanged)",
        degenerate: false,
        body: law_eenv,
    },
    Law {
        id: "fdtight",
        statement: "A is formally domain tight iff A lies inside RE A + i IM A iff (RE A) (+) A* = A (+) A* iff some B with dom B = dom A has A inside B*",
        degenerate: false,
        body: law_fdtight,
    },
    Law {
        id: "rmlem",
        statement: "dom A* lies inside dom A iff (RE A) (+) A = A (+) A*; for domain tight A moreover RE A = RE A* and IM A = -IM A*",
        degenerate: false,
        body: law_rmlem,
    },
    Law {
        id: "reaal",
        statement: "A is domain tight iff (RE A) (+) A = (RE A) (+) A* iff (RE A) (+) ({0} x ran IM A) = A (+) A*, and then all four sums coincide",
        degenerate: false,
        body: law_reaal,
    },
    Law {
        id: "cart",
        statement: "A is formally domain tight iff A = A_1 + i A_2 with symmetric components iff A_inf = RE A + i IM A",
        degenerate: false,
        body: law_cart,
    },
    Law {
        id: "cart-plus",
        statement: "A is domain tight iff A_inf = RE A + i IM A and (A*)_inf = RE A - i IM A iff A lies inside RE A + i IM A and A* = RE A - i IM A",
        degenerate: false,
        body: law_cart_plus,
    },
    Law {
        id: "cart-plusplus",
        statement: "A is domain tight with mul A = mul A* iff A = RE A + i IM A and A* = RE A - i IM A",
        degenerate: false,
        body: law_cart_plusplus,
    },
    Law {
        id: "dualpair",
        statement: "for A = A_1 + i A_2 with symmetric parts, B = A_1 - i A_2 has dom B = dom A, both are formally domain tight, B lies inside A* and A inside B*, and A_1, A_2 cut to dom A sit inside RE A, IM A",
        degenerate: false,
        body: law_dualpair,
    },
    Law {
        id: "class-orth",
        statement: "maximal dissipative, accretive, sectorial, nonnegative, selfadjoint and normal relations split orthogonally into an operator part of the same kind in (mul A)^perp plus {0} x mul A",
        degenerate: false,
        body: law_class_orth,
    },
    Law {
        id: "tight-ext",
        statement: "a domain tight A makes every formally domain tight extension B satisfy dom B cap H = P(dom B*) and be tight and star tight over A; those three conversely force A domain tight",
        degenerate: false,
        body: law_tight_ext,
    },
    Law {
        id: "range-tight-inv",
        statement: "A is (formally) range tight iff A^-1 is (formally) domain tight, and a range tight symmetric relation is selfadjoint",
        degenerate: false,
        body: law_range_tight_inv,
    },
    Law {
        id: "degenerate-findim",
        statement: "closedness, boundedness and density statements collapse here; the remaining content, compressions P(A) into dom A*, Q(A*) into dom A, projections of domains into ranges, and the chain dom A* = H iff ran A inside dom A* iff A is an operator, is checked",
        degenerate: true,
        body: law_degenerate_findim,
    },
];

// ---------------------------------------------------------------------------
// law bodies

fn law_adjoint_duality(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let star = a.adjoint();
    c.residual("(dom A)^perp = mul A*", sub_eq(&a.dom().complement(), &star.mul()));
    c.residual("(ran A)^perp = ker A*", sub_eq(&a.ran().complement(), &star.ker()));
    let second = star.adjoint();
    c.residual("(dom A*)^perp = mul A**", sub_eq(&star.dom().complement(), &second.mul()));
    c.residual("(ran A*)^perp = ker A**", sub_eq(&star.ran().complement(), &second.ker()));
    c
}

fn law_cw_adjoint(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let b = draw_generic(rng, n);
    let sum = cw(&a, &b);
    let rhs = inter(&a.adjoint(), &b.adjoint());
    c.residual("(A (+) B)* = A* cap B*", rel_eq(&sum.adjoint(), &rhs));
    c.residual("A (+) B = (A* cap B*)*", rel_eq(&sum, &rhs.adjoint()));
    c
}

fn law_opsum_adjoint(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let b = draw_generic(rng, n);
    let lhs = plus(&a.adjoint(), &b.adjoint());
    c.residual("A* + B* inside (A + B)*", rel_incl(&lhs, &plus(&a, &b).adjoint()));
    let bounded = operator_relation(rng, n, n);
    c.residual(
        "(A + B)* = A* + B* for everywhere defined B",
        rel_eq(&plus(&a, &bounded).adjoint(), &plus(&a.adjoint(), &bounded.adjoint())),
    );
    c
}

fn law_product_adjoint(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let b = draw_generic(rng, n);
    let lhs = after(&b.adjoint(), &a.adjoint());
    c.residual("B* A* inside (A B)*", rel_incl(&lhs, &after(&a, &b).adjoint()));
    let bounded = operator_relation(rng, n, n);
    c.residual(
        "(A B)* = B* A* for everywhere defined A",
        rel_eq(
            &after(&bounded, &b).adjoint(),
            &after(&b.adjoint(), &bounded.adjoint()),
        ),
    );
    c
}

fn law_projection_product(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let mulstar = a.adjoint().mul();
    let xd = rng.gen_range(0..=mulstar.dim());
    let x = sub_subspace(rng, &mulstar, xd);
    let y = mulstar.intersect(&x.complement()).expect("same ambient");
    let r_ran = a.dom().sum(&x).expect("same ambient");
    let full = Subspace::full(n);
    let r = Relation::from_operator(&r_ran.projector(), &full).expect("ambients agree");
    let co = Relation::from_operator(&(CMatrix::identity(n, n) - r_ran.projector()), &full)
        .expect("ambients agree");
    c.residual(
        "AR = A (+) (Y x {0})",
        rel_eq(&after(&a, &r), &cw(&a, &Relation::zero_on(&y))),
    );
    c.residual(
        "A(I - R) = (dom A (+) X) x mul A",
        rel_eq(&after(&a, &co), &cross_rel(&r_ran, &a.mul())),
    );
    c
}

fn law_dom_ran_sum(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let star = a.adjoint();
    let full = Subspace::full(n);
    c.residual(
        "dom A + ran A* = H",
        sub_eq(&a.dom().sum(&star.ran()).expect("same ambient"), &full),
    );
    c.residual(
        "ran A + dom A* = H",
        sub_eq(&a.ran().sum(&star.dom()).expect("same ambient"), &full),
    );
    c
}

fn law_canonical(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let dec = canonical_decompose(&a);
    c.residual("A_reg + A_sing reassembles A", dec.identity_residual);
    c.ensure("regular part is regular", classify::is_regular(&dec.parts[0]));
    c.ensure("singular part is singular", classify::is_singular(&dec.parts[1]));
    c.residual("mul A_sing = mul A", sub_eq(&dec.parts[1].mul(), &a.mul()));
    c
}

fn law_singular_equiv(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let s = draw_singular(rng, n);
    let sstar = s.adjoint();
    c.residual("dom A* = ker A* on singular A", sub_eq(&sstar.dom(), &sstar.ker()));
    c.residual(
        "A* = dom A* x mul A* on singular A",
        rel_eq(&sstar, &cross_rel(&sstar.dom(), &sstar.mul())),
    );
    c.residual(
        "A = dom A x mul A on singular A",
        rel_eq(&s, &cross_rel(&s.dom(), &s.mul())),
    );
    let g = draw_generic(rng, n);
    let gstar = g.adjoint();
    c.agree(
        "the four characterizations decide alike",
        &[
            classify::is_singular(&g),
            sub_eq(&gstar.dom(), &gstar.ker()) <= EQ_TOL,
            rel_eq(&gstar, &cross_rel(&gstar.dom(), &gstar.mul())) <= EQ_TOL,
            rel_eq(&g, &cross_rel(&g.dom(), &g.mul())) <= EQ_TOL,
        ],
    );
    c.agree(
        "A, A^-1, A* singular together",
        &[
            classify::is_singular(&g),
            classify::is_singular(&g.inverse()),
            classify::is_singular(&gstar),
        ],
    );
    c
}

fn law_componentwise_unique(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let aop = operator_part(&a);
    let amul = mul_part(&a);
    let ha = a.mul().complement();
    c.residual("A_op (+) ({0} x mul A) = A", rel_eq(&cw(&aop, &amul), &a));
    c.residual("ran A_op inside (mul A)^perp", sub_incl(&aop.ran(), &ha));
    c.ensure(
        "the componentwise sum is direct",
        aop.graph_dim() + a.mul().dim() == a.graph_dim(),
    );
    // perturbing the operator part towards mul A keeps the reassembly but
    // breaks the range condition
    if aop.graph_dim() > 0 && a.mul().dim() > 0 {
        let dir = unit_in(rng, &a.mul());
        let b = perturb_values(rng, &aop, &dir);
        c.ensure("mul-direction probe differs from A_op", rel_eq(&b, &aop) > 1e-6);
        c.residual("mul-direction probe still reassembles A", rel_eq(&cw(&b, &amul), &a));
        c.ensure(
            "mul-direction probe leaves (mul A)^perp",
            sub_incl(&b.ran(), &ha) > 1e-6,
        );
    }
    // perturbing inside (mul A)^perp keeps the range condition but breaks
    // the reassembly
    if aop.graph_dim() > 0 && ha.dim() > 0 {
        let dir = unit_in(rng, &ha);
        let b = perturb_values(rng, &aop, &dir);
        c.residual("in-space probe keeps ran inside (mul A)^perp", sub_incl(&b.ran(), &ha));
        c.ensure(
            "in-space probe no longer reassembles A",
            rel_eq(&cw(&b, &amul), &a) > 1e-6,
        );
    }
    c
}

/// Adds `dir` times a random unit coefficient row to the value block of the
/// graph; the result is a genuinely different relation with the same domain.
fn perturb_values(rng: &mut ChaCha8Rng, a: &Relation, dir: &CVector) -> Relation {
    let d = a.graph_dim();
    let n = a.n();
    let mut row = random_vector(rng, d);
    row /= Complex64::new(row.norm(), 0.0);
    let mut cols = CMatrix::zeros(2 * n, d);
    cols.rows_mut(0, n).copy_from(a.f_block());
    cols.rows_mut(n, n).copy_from(&(a.g_block() + dir * row.transpose()));
    Relation::from_subspace(n, Subspace::from_cols(2 * n, &cols, None).expect("n >= 1"))
        .expect("n >= 1")
}

fn law_reglem_equiv(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let aop = operator_part(&a);
    let reg = regular_part(&a);
    c.residual("dom A_op = dom A", sub_eq(&aop.dom(), &a.dom()));
    c.residual("A_reg = A_op", rel_eq(&reg, &aop));
    c.residual("A_reg inside A", rel_incl(&reg, &a));
    c.residual("ran(A - A_op) inside mul A", sub_incl(&singular_part(&a).ran(), &a.mul()));
    c.residual("A = A_reg (+) ({0} x mul A)", rel_eq(&a, &cw(&reg, &mul_part(&a))));
    c.ensure("decomposability holds", decompose::is_decomposable(&a).holds());
    c
}

fn law_maxpart(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let am = max_operator_part(&a);
    c.ensure("A_m is an operator", am.mul().dim() == 0);
    c.residual("A = A_m (+) ({0} x mul A)", rel_eq(&a, &cw(&am, &mul_part(&a))));
    c.residual("dom A_m = dom A", sub_eq(&am.dom(), &a.dom()));
    c.residual("ran A_m perpendicular to mul A", sub_incl(&am.ran(), &a.mul().complement()));
    c.residual("A_m = A_op", rel_eq(&am, &operator_part(&a)));
    c.residual("A_m = A_reg", rel_eq(&am, &regular_part(&a)));
    c
}

/// How far the relation sticks out of s in either component; zero exactly
/// when its graph lies inside s x s.
fn confinement(a: &Relation, s: &Subspace) -> f64 {
    sub_incl(&a.dom(), s).max(sub_incl(&a.ran(), s))
}

fn law_orth_iff(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_generic(rng, n),
        1 => draw_fdt(rng, n),
        _ => draw_symmetric(rng, n),
    };
    let orth = confinement(&operator_part(&a), &a.mul().complement()) <= EQ_TOL;
    let cond = sub_incl(&a.mul(), &a.adjoint().mul()) <= EQ_TOL;
    c.agree("orthogonal parts iff mul A inside mul A*", &[orth, cond]);
    match decompose::orthogonal_decompose(&a) {
        Ok(dec) => {
            c.ensure("constructor agrees with the criterion", cond);
            c.residual("orthogonal decomposition reassembles A", dec.identity_residual);
        }
        Err(_) => c.ensure("constructor agrees with the criterion", !cond),
    }
    c
}

fn law_adjoint_orth_iff(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_generic(rng, n),
        1 => draw_purely_multivalued(rng, n),
        _ => draw_dt(rng, n),
    };
    let star = a.adjoint();
    let orth = confinement(&operator_part(&star), &star.mul().complement()) <= EQ_TOL;
    let cond = sub_incl(&star.mul(), &a.mul()) <= EQ_TOL;
    c.agree("orthogonal parts of A* iff mul A* inside mul A", &[orth, cond]);
    c
}

fn law_opstar_commute(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_dt(rng, n);
    let ha = a.mul().complement();
    if ha.dim() == 0 {
        return c;
    }
    let lhs = compress_to(&operator_part(&a), &ha).adjoint();
    let rhs = compress_to(&operator_part(&a.adjoint()), &ha);
    c.residual("(A_op)* = (A*)_op inside (mul A)^perp", rel_eq(&lhs, &rhs));
    c
}

fn law_mulba(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_dt(rng, n);
    c.residual("mul A = mul A*", sub_eq(&a.mul(), &a.adjoint().mul()));
    let b = operator_part(&a);
    c.ensure("B is an operator", b.mul().dim() == 0);
    c.residual("A = B (+) ({0} x mul A)", rel_eq(&a, &cw(&b, &mul_part(&a))));
    let ha = a.mul().complement();
    c.residual("dom B fills (mul A)^perp", sub_eq(&b.dom(), &ha));
    if ha.dim() > 0 {
        let cb = compress_to(&b, &ha);
        c.ensure("B is domain tight in (mul A)^perp", classify::is_domain_tight(&cb));
    }
    if a.mul().dim() > 0 {
        let cm = compress_to(&mul_part(&a), &a.mul());
        c.ensure("{0} x mul A is selfadjoint in mul A", classify::is_selfadjoint(&cm));
    }
    // converse: such a split forces domain tightness with equal mul
    let k = rng.gen_range(1..=n);
    let dom = random_subspace(rng, n, k);
    let op = dom.projector() * random_matrix(rng, n, n) * dom.projector();
    let bp = Relation::from_operator(&op, &dom).expect("ambients agree");
    let rebuilt = cw(&bp, &cross_rel(&Subspace::zero(n), &dom.complement()));
    c.ensure("converse: rebuilt relation is domain tight", classify::is_domain_tight(&rebuilt));
    c.residual(
        "converse: rebuilt relation keeps mul A = mul A*",
        sub_eq(&rebuilt.mul(), &rebuilt.adjoint().mul()),
    );
    c.residual("converse: B is recovered as A_op", rel_eq(&operator_part(&rebuilt), &bp));
    c
}

fn law_convexity(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    for _ in 0..4 {
        let a = if rng.gen_range(0..2) == 0 {
            draw_operator(rng, n)
        } else {
            let k = rng.gen_range(1..=n);
            let m = rng.gen_range(0..=(n - k));
            form_relation(rng, n, k, m, FormShape::Free)
        };
        let d = a.graph_dim();
        for _ in 0..32 {
            let z1 = random_vector(rng, d);
            let z2 = random_vector(rng, d);
            let f1 = a.f_block() * &z1;
            let f2 = a.f_block() * &z2;
            if f1.norm() < 1e-6 * z1.norm() || f2.norm() < 1e-6 * z2.norm() {
                continue;
            }
            let v1 = (a.g_block() * &z1).dotc(&f1) / Complex64::new(f1.norm_squared(), 0.0);
            let v2 = (a.g_block() * &z2).dotc(&f2) / Complex64::new(f2.norm_squared(), 0.0);
            if (v1 - v2).norm() < 1e-3 {
                continue;
            }
            let u = match rng.gen_range(0..6) {
                0 => 0.0,
                1 => 0.25,
                2 => 0.5,
                3 => 0.75,
                4 => 1.0,
                _ => rng.gen_range(0.0..1.0),
            };
            let target = v1 * Complex64::new(u, 0.0) + v2 * Complex64::new(1.0 - u, 0.0);
            match spectral::nrange_convex_witness(&a, &z1, &z2, u) {
                Ok(pair) => {
                    c.ensure("witness element belongs to A", a.contains(&pair));
                    c.residual("witness is normalized", (pair.f.norm() - 1.0).abs());
                    let scale = 1.0f64.max(v1.norm()).max(v2.norm());
                    c.residual(
                        "witness value hits the convex combination",
                        (spectral::rayleigh_value(&pair) - target).norm() / scale,
                    );
                }
                Err(e) => c.ensure(&format!("witness construction failed: {e}"), false),
            }
            return c;
        }
    }
    // every draw had an effectively one point numerical range; nothing to do
    c
}

fn law_nr_mulinc(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let (a, lambda, dist) = match rng.gen_range(0..3) {
        0 => {
            let a = draw_shaped(rng, n, FormShape::ImPsd);
            let t = 0.5 + rng.gen_range(0.0..2.0);
            (a, Complex64::new(0.0, -t), t)
        }
        1 => {
            let a = draw_shaped(rng, n, FormShape::RePsd);
            let t = 0.5 + rng.gen_range(0.0..2.0);
            (a, Complex64::new(-t, 0.0), t)
        }
        _ => {
            let alpha = rng.gen_range(0.3..1.2);
            let a = draw_shaped(rng, n, FormShape::Sector(alpha));
            let t = 0.5 + rng.gen_range(0.0..2.0);
            (a, Complex64::new(-t, 0.0), t)
        }
    };
    c.residual("mul A inside mul A*", sub_incl(&a.mul(), &a.adjoint().mul()));
    let cv = spectral::regularity_constant(&a, lambda);
    let shortfall = if cv.is_infinite() { 0.0 } else { ((dist - cv) / dist).max(0.0) };
    c.residual("c(z) >= dist(z, W(A))", shortfall);
    c.ensure("z is of regular type", spectral::in_regular_type_set(&a, lambda));
    c
}

fn law_maximal_mul(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let (a, class) = match rng.gen_range(0..4) {
        0 => (draw_maximal(rng, n, FormShape::ImPsd), Class::Dissipative),
        1 => (draw_maximal(rng, n, FormShape::RePsd), Class::Accretive),
        2 => {
            let alpha = rng.gen_range(0.3..1.2);
            (draw_maximal(rng, n, FormShape::Sector(alpha)), Class::Sectorial(alpha))
        }
        _ => (draw_maximal(rng, n, FormShape::Psd), Class::Nonnegative),
    };
    c.ensure(
        "full graph dimension instance is maximal",
        classify::is_maximal(&a, class).unwrap_or(false),
    );
    c.residual("mul A = mul A*", sub_eq(&a.mul(), &a.adjoint().mul()));
    c
}

/// Generic draw restricted to graph dimensions <= n and free of persistent
/// pencil directions, so the regular type set is nonempty.
fn draw_spectral(rng: &mut ChaCha8Rng, n: usize) -> (Relation, spectral::SpectralReport) {
    for _ in 0..8 {
        let d = rng.gen_range(0..=n);
        let a = generic_relation(rng, n, d);
        let report = spectral::eigenvalues(&a);
        if report.persistent_dim == 0 {
            return (a, report);
        }
    }
    let a = Relation::zero_relation(n).expect("n >= 1");
    let report = spectral::eigenvalues(&a);
    (a, report)
}

fn law_resolvent_est(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let (a, report) = draw_spectral(rng, n);
    let mu = point_avoiding(rng, &report.eigenvalues, 0.15);
    let cmu = spectral::regularity_constant(&a, mu);
    c.ensure("base point is of regular type", spectral::in_regular_type_set(&a, mu));
    let lambda = if cmu.is_infinite() {
        mu + numeric::gauss(rng)
    } else {
        let radius = (0.45 * cmu).min(1e3);
        mu + Complex64::from_polar(radius, rng.gen_range(0.0..std::f64::consts::TAU))
    };
    c.ensure("perturbed point stays of regular type", spectral::in_regular_type_set(&a, lambda));
    match spectral::resolvent_norm_bound_check(&a, mu, lambda) {
        Ok(ok) => c.ensure("norm bound propagates", ok),
        Err(e) => c.ensure(&format!("norm bound check failed: {e}"), false),
    }
    c
}

fn law_defect_const(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let (a, report) = draw_spectral(rng, n);
    let base = spectral::defect(&a, point_avoiding(rng, &report.eigenvalues, 0.15));
    for _ in 0..6 {
        let z = point_avoiding(rng, &report.eigenvalues, 0.15);
        c.ensure(
            &format!("defect at {z} equals defect {base} of the base point"),
            spectral::defect(&a, z) == base,
        );
    }
    c
}

fn law_ainf_adjoint(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let star = a.adjoint();
    let infstar = a.infinity_ext().adjoint();
    let rhs = inter(&star, &cross_rel(&a.dom(), &Subspace::full(n)));
    c.residual("(A_inf)* = A* cap (dom A x H)", rel_eq(&infstar, &rhs));
    c.residual(
        "dom (A_inf)* = dom A cap dom A*",
        sub_eq(&infstar.dom(), &a.dom().intersect(&star.dom()).expect("same ambient")),
    );
    c.residual("mul (A_inf)* = mul A*", sub_eq(&infstar.mul(), &star.mul()));
    c
}

fn law_ainf_tight(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..4) {
        0 => draw_generic(rng, n),
        1 => draw_fdt(rng, n),
        2 => draw_dt(rng, n),
        _ => draw_purely_multivalued(rng, n),
    };
    let star = a.adjoint();
    let ainf = a.infinity_ext();
    c.agree(
        "A and A_inf formally domain tight together",
        &[
            classify::is_formally_domain_tight(&a),
            classify::is_formally_domain_tight(&ainf),
        ],
    );
    c.agree(
        "A_inf domain tight iff dom A inside dom A*",
        &[
            classify::is_domain_tight(&ainf),
            sub_incl(&a.dom(), &star.dom()) <= EQ_TOL,
        ],
    );
    c.agree(
        "A domain tight iff also dom A* inside dom A",
        &[
            classify::is_domain_tight(&a),
            classify::is_domain_tight(&ainf) && sub_incl(&star.dom(), &a.dom()) <= EQ_TOL,
        ],
    );
    if classify::is_domain_tight(&a) {
        c.residual("(A_inf)* = A*", rel_eq(&ainf.adjoint(), &star));
        c.residual("A* = (A*)_inf", rel_eq(&star, &star.infinity_ext()));
    }
    c
}

fn law_ainf_marci(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_fdt(rng, n);
    let star = a.adjoint();
    let ainf = a.infinity_ext();
    c.residual("mul A_inf = mul A*", sub_eq(&ainf.mul(), &star.mul()));
    c.agree(
        "A_inf = A iff mul A* = mul A",
        &[
            rel_eq(&ainf, &a) <= EQ_TOL,
            sub_eq(&star.mul(), &a.mul()) <= EQ_TOL,
        ],
    );
    let zero = Subspace::zero(n);
    c.residual(
        "A cap ({0} x mul A*) = {0} x mul A",
        rel_eq(&inter(&a, &cross_rel(&zero, &star.mul())), &cross_rel(&zero, &a.mul())),
    );
    c.agree(
        "the extension sum is direct iff A is an operator",
        &[
            a.graph_dim() + star.mul().dim() == ainf.graph_dim(),
            a.mul().dim() == 0,
        ],
    );
    c.agree(
        "A_inf is an operator iff dom A is everything",
        &[ainf.mul().dim() == 0, a.dom().is_full()],
    );
    let dt = draw_dt(rng, n);
    c.residual("domain tight A keeps A_inf = A", rel_eq(&dt.infinity_ext(), &dt));
    c
}

fn law_ainf_selfadjoint(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_symmetric(rng, n),
        1 => draw_generic(rng, n),
        _ => draw_purely_multivalued(rng, n),
    };
    c.agree(
        "A_inf selfadjoint iff A symmetric with dom A inside dom A*",
        &[
            classify::is_selfadjoint(&a.infinity_ext()),
            classify::is_symmetric(&a) && sub_incl(&a.dom(), &a.adjoint().dom()) <= EQ_TOL,
        ],
    );
    c
}

fn law_sym_sa(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_symmetric(rng, n);
    if classify::is_domain_tight(&a) && sub_incl(&a.adjoint().mul(), &a.mul()) <= EQ_TOL {
        c.ensure("domain tight symmetric with mul A* inside mul A is selfadjoint",
            classify::is_selfadjoint(&a));
    }
    c.agree(
        "maximal symmetric coincides with selfadjoint",
        &[
            classify::is_maximal(&a, Class::Symmetric).unwrap_or(false),
            classify::is_selfadjoint(&a),
        ],
    );
    let sa = selfadjoint_relation(rng, n);
    c.ensure(
        "selfadjoint instances are domain tight symmetric",
        classify::is_selfadjoint(&sa)
            && classify::is_symmetric(&sa)
            && classify::is_domain_tight(&sa),
    );
    c
}

fn law_reim(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let star = a.adjoint();
    let re = real_part(&a);
    let im = imag_part(&a);
    c.residual("RE A = RE A*", rel_eq(&re, &real_part(&star)));
    c.residual("IM A = -IM A*", rel_eq(&im, &imag_part(&star).scalar_mul(Complex64::new(-1.0, 0.0))));
    c.residual("RE A is symmetric", rel_incl(&re, &re.adjoint()));
    c.residual("IM A is symmetric", rel_incl(&im, &im.adjoint()));
    c.residual("mul RE A = mul IM A", sub_eq(&re.mul(), &im.mul()));
    c.residual(
        "mul RE A = mul A + mul A*",
        sub_eq(&re.mul(), &a.mul().sum(&star.mul()).expect("same ambient")),
    );
    let ia = a.scalar_mul(Complex64::i());
    c.residual("RE(iA) = -IM A", rel_eq(&real_part(&ia), &im.scalar_mul(Complex64::new(-1.0, 0.0))));
    c.residual("IM(iA) = RE A", rel_eq(&imag_part(&ia), &re));
    let f = draw_fdt(rng, n);
    c.residual(
        "mul RE A = mul A* for formally domain tight A",
        sub_eq(&real_part(&f).mul(), &f.adjoint().mul()),
    );
    c
}

fn law_eenv(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_generic(rng, n),
        1 => selfadjoint_relation(rng, n),
        _ => draw_fdt(rng, n),
    };
    let star = a.adjoint();
    let both = cw(&a, &star);
    let re = real_part(&a);
    let im = imag_part(&a);
    c.residual("RE A inside A (+) A*", rel_incl(&re, &both));
    c.residual("IM A inside A (+) A*", rel_incl(&im, &both));
    c.residual("ran IM A = mul(A (+) A*)", sub_eq(&im.ran(), &both.mul()));
    let ia = a.scalar_mul(Complex64::i());
    let rotated = cw(&ia, &ia.adjoint());
    c.residual("ran RE A = mul(iA (+) (iA)*)", sub_eq(&re.ran(), &rotated.mul()));
    let zero = Subspace::zero(n);
    let re_env = cw(&re, &cross_rel(&zero, &im.ran()));
    let im_env = cw(&im, &cross_rel(&zero, &re.ran()));
    for (label, rel) in [
        ("RE A + i IM A", plus(&re, &im.scalar_mul(Complex64::i()))),
        ("RE A - i IM A", plus(&re, &im.scalar_mul(-Complex64::i()))),
    ] {
        c.residual(&format!("{label} inside RE A (+) ({{0}} x ran IM A)"), rel_incl(&rel, &re_env));
    }
    for (label, rel) in [
        ("IM A + i RE A", plus(&im, &re.scalar_mul(Complex64::i()))),
        ("IM A - i RE A", plus(&im, &re.scalar_mul(-Complex64::i()))),
    ] {
        c.residual(&format!("{label} inside IM A (+) ({{0}} x ran RE A)"), rel_incl(&rel, &im_env));
    }
    c.residual("RE A (+) ({0} x ran IM A) inside A (+) A*", rel_incl(&re_env, &both));
    c.residual("IM A (+) ({0} x ran RE A) inside A (+) A*", rel_incl(&im_env, &both));
    c
}

fn law_fdtight(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..5) {
        0 => draw_fdt(rng, n),
        1 => draw_dt(rng, n),
        2 => draw_generic(rng, n),
        3 => draw_purely_multivalued(rng, n),
        _ => draw_singular(rng, n),
    };
    let star = a.adjoint();
    let re = real_part(&a);
    let fdt = classify::is_formally_domain_tight(&a);
    c.agree(
        "formally domain tight iff A inside RE A + i IM A iff (RE A) (+) A* = A (+) A*",
        &[
            fdt,
            rel_incl(&a, &re_plus_i_im(&a)) <= EQ_TOL,
            rel_eq(&cw(&re, &star), &cw(&a, &star)) <= EQ_TOL,
        ],
    );
    if fdt {
        let b = re_minus_i_im(&a);
        c.residual("dom B = dom A for B = RE A - i IM A", sub_eq(&b.dom(), &a.dom()));
        c.residual("A inside B*", rel_incl(&a, &b.adjoint()));
    }
    c
}

fn law_rmlem(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_generic(rng, n),
        1 => draw_fdt(rng, n).adjoint(),
        _ => draw_dt(rng, n),
    };
    let star = a.adjoint();
    let re = real_part(&a);
    c.agree(
        "dom A* inside dom A iff (RE A) (+) A = A (+) A*",
        &[
            sub_incl(&star.dom(), &a.dom()) <= EQ_TOL,
            rel_eq(&cw(&re, &a), &cw(&a, &star)) <= EQ_TOL,
        ],
    );
    let dt = draw_dt(rng, n);
    let dtstar = dt.adjoint();
    c.residual("RE A = RE A* for domain tight A", rel_eq(&real_part(&dt), &real_part(&dtstar)));
    c.residual(
        "IM A = -IM A* for domain tight A",
        rel_eq(&imag_part(&dt), &imag_part(&dtstar).scalar_mul(Complex64::new(-1.0, 0.0))),
    );
    c
}

fn law_reaal(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_dt(rng, n),
        1 => draw_fdt(rng, n),
        _ => draw_generic(rng, n),
    };
    let star = a.adjoint();
    let re = real_part(&a);
    let im = imag_part(&a);
    let zero = Subspace::zero(n);
    let dt = classify::is_domain_tight(&a);
    c.agree(
        "domain tight iff (RE A) (+) A = (RE A) (+) A* iff (RE A) (+) ({0} x ran IM A) = A (+) A*",
        &[
            dt,
            rel_eq(&cw(&re, &a), &cw(&re, &star)) <= EQ_TOL,
            rel_eq(&cw(&re, &cross_rel(&zero, &im.ran())), &cw(&a, &star)) <= EQ_TOL,
        ],
    );
    if dt {
        let reference = cw(&a, &star);
        c.residual("(RE A) (+) A matches A (+) A*", rel_eq(&cw(&re, &a), &reference));
        c.residual("(RE A) (+) A* matches A (+) A*", rel_eq(&cw(&re, &star), &reference));
        c.residual(
            "(RE A) (+) ({0} x ran IM A) matches A (+) A*",
            rel_eq(&cw(&re, &cross_rel(&zero, &im.ran())), &reference),
        );
    }
    c
}

fn law_cart(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_fdt(rng, n),
        1 => draw_generic(rng, n),
        _ => draw_purely_multivalued(rng, n),
    };
    let decomposed = match decompose::cartesian_components(&a) {
        Ok((a1, a2)) => {
            classify::is_symmetric(&a1)
                && classify::is_symmetric(&a2)
                && rel_eq(&plus(&a1, &a2.scalar_mul(Complex64::i())), &a) <= EQ_TOL
        }
        Err(_) => false,
    };
    c.agree(
        "formally domain tight iff A splits into symmetric components iff A_inf = RE A + i IM A",
        &[
            classify::is_formally_domain_tight(&a),
            decomposed,
            rel_eq(&a.infinity_ext(), &re_plus_i_im(&a)) <= EQ_TOL,
        ],
    );
    c
}

fn law_cart_plus(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..3) {
        0 => draw_dt(rng, n),
        1 => draw_fdt(rng, n),
        _ => draw_generic(rng, n),
    };
    let star = a.adjoint();
    let rpii = re_plus_i_im(&a);
    let rmii = re_minus_i_im(&a);
    c.agree(
        "domain tight iff both infinity extensions split iff A inside RE A + i IM A with A* = RE A - i IM A",
        &[
            classify::is_domain_tight(&a),
            rel_eq(&a.infinity_ext(), &rpii) <= EQ_TOL
                && rel_eq(&star.infinity_ext(), &rmii) <= EQ_TOL,
            rel_incl(&a, &rpii) <= EQ_TOL && rel_eq(&star, &rmii) <= EQ_TOL,
        ],
    );
    c
}

fn law_cart_plusplus(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = match rng.gen_range(0..4) {
        0 => draw_dt(rng, n),
        1 => selfadjoint_relation(rng, n),
        2 => draw_fdt(rng, n),
        _ => draw_generic(rng, n),
    };
    let star = a.adjoint();
    let via_components = match decompose::cartesian_components(&a) {
        Ok((a1, a2)) => {
            classify::is_symmetric(&a1)
                && classify::is_symmetric(&a2)
                && rel_eq(&plus(&a1, &a2.scalar_mul(Complex64::i())), &a) <= EQ_TOL
                && rel_eq(&plus(&a1, &a2.scalar_mul(-Complex64::i())), &star) <= EQ_TOL
        }
        Err(_) => false,
    };
    c.agree(
        "domain tight with mul A = mul A* iff A = RE A + i IM A and A* = RE A - i IM A",
        &[
            classify::is_domain_tight(&a) && sub_eq(&a.mul(), &star.mul()) <= EQ_TOL,
            rel_eq(&a, &re_plus_i_im(&a)) <= EQ_TOL && rel_eq(&star, &re_minus_i_im(&a)) <= EQ_TOL,
            via_components,
        ],
    );
    c
}

fn law_dualpair(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a1 = draw_symmetric(rng, n);
    let a2 = draw_symmetric(rng, n);
    let a = plus(&a1, &a2.scalar_mul(Complex64::i()));
    let b = plus(&a1, &a2.scalar_mul(-Complex64::i()));
    c.residual("dom B = dom A", sub_eq(&b.dom(), &a.dom()));
    c.ensure("A is formally domain tight", classify::is_formally_domain_tight(&a));
    c.ensure("B is formally domain tight", classify::is_formally_domain_tight(&b));
    c.residual("B inside A*", rel_incl(&b, &a.adjoint()));
    c.residual("A inside B*", rel_incl(&a, &b.adjoint()));
    let window = cross_rel(&a.dom(), &Subspace::full(n));
    c.residual("A_1 cut to dom A inside RE A", rel_incl(&inter(&a1, &window), &real_part(&a)));
    c.residual("A_2 cut to dom A inside IM A", rel_incl(&inter(&a2, &window), &imag_part(&a)));
    c.residual("A inside RE A + i IM A", rel_incl(&a, &re_plus_i_im(&a)));
    c.residual("B inside RE A - i IM A", rel_incl(&b, &re_minus_i_im(&a)));
    c
}

fn law_class_orth(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let pick = rng.gen_range(0..6);
    let (a, class) = match pick {
        0 => (draw_maximal(rng, n, FormShape::ImPsd), Some(Class::Dissipative)),
        1 => (draw_maximal(rng, n, FormShape::RePsd), Some(Class::Accretive)),
        2 => {
            let alpha = rng.gen_range(0.3..1.2);
            (draw_maximal(rng, n, FormShape::Sector(alpha)), Some(Class::Sectorial(alpha)))
        }
        3 => (draw_maximal(rng, n, FormShape::Psd), Some(Class::Nonnegative)),
        4 => (selfadjoint_relation(rng, n), None),
        _ => {
            let k = rng.gen_range(0..=n);
            (normal_relation(rng, n, k), None)
        }
    };
    if let Some(class) = class {
        c.ensure("instance is maximal in its class", classify::is_maximal(&a, class).unwrap_or(false));
    }
    let dec = match decompose::orthogonal_decompose(&a) {
        Ok(dec) => dec,
        Err(_) => {
            c.ensure("orthogonal decomposition exists", false);
            return c;
        }
    };
    c.residual("orthogonal decomposition reassembles A", dec.identity_residual);
    let aop = operator_part(&a);
    let ha = a.mul().complement();
    c.residual("dom A_op fills (mul A)^perp", sub_eq(&aop.dom(), &ha));
    if a.mul().dim() > 0 {
        let cm = compress_to(&mul_part(&a), &a.mul());
        c.ensure("{0} x mul A is selfadjoint in mul A", classify::is_selfadjoint(&cm));
    }
    if ha.dim() == 0 {
        return c;
    }
    let caop = compress_to(&aop, &ha);
    c.ensure("operator part is an operator", caop.mul().dim() == 0);
    match (pick, class) {
        (4, _) => c.ensure("compressed part selfadjoint", classify::is_selfadjoint(&caop)),
        (5, _) => c.ensure("compressed part normal", classify::is_normal(&caop)),
        (_, Some(class)) => c.ensure(
            "compressed part maximal in the same class",
            classify::is_maximal(&caop, class).unwrap_or(false),
        ),
        _ => unreachable!(),
    }
    c
}

fn law_tight_ext(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let m = n + 1 + rng.gen_range(0..=1);
    let v = numeric::svd_full(&random_matrix(rng, m, n)).0.columns(0, n).into_owned();
    let h = Subspace::from_cols(m, &v, None).expect("m >= 1");
    // forward: domain tight A, structured formally domain tight extension
    let a = draw_dt(rng, n);
    let b = extend_fdt(rng, &a, &v, &h);
    c.ensure("extension is formally domain tight", classify::is_formally_domain_tight(&b));
    c.residual("extension contains the embedded relation", rel_incl(&a.embed(&v).expect("isometry"), &b));
    c.ensure("B is a tight extension", classify::is_tight_extension(&a, &b, &v).unwrap_or(false));
    c.ensure(
        "B is a star tight extension",
        classify::is_star_tight_extension(&a, &b, &v).unwrap_or(false),
    );
    let projected = Subspace::from_cols(m, &(h.projector() * b.adjoint().dom().basis()), None)
        .expect("m >= 1");
    c.residual(
        "dom B cap H = P(dom B*)",
        sub_eq(&b.dom().intersect(&h).expect("same ambient"), &projected),
    );
    // converse: a formally but not actually domain tight A must lose one of
    // the three conditions
    if n >= 2 {
        let k = rng.gen_range(0..=(n - 1));
        let m2 = rng.gen_range(0..=(n - 1 - k));
        let a2 = form_relation(rng, n, k, m2, FormShape::Free);
        if !classify::is_domain_tight(&a2) {
            let b2 = extend_fdt(rng, &a2, &v, &h);
            let projected2 =
                Subspace::from_cols(m, &(h.projector() * b2.adjoint().dom().basis()), None)
                    .expect("m >= 1");
            let all_three = classify::is_tight_extension(&a2, &b2, &v).unwrap_or(false)
                && classify::is_star_tight_extension(&a2, &b2, &v).unwrap_or(false)
                && sub_eq(&b2.dom().intersect(&h).expect("same ambient"), &projected2) <= EQ_TOL;
            c.ensure("converse: the three conditions detect missing tightness", !all_three);
        }
    }
    c
}

/// Formally domain tight extension of `a` into the bigger space: the
/// embedded relation plus a graph over directions leaning out of ran V (with
/// components back into dom A) plus extra multivalued directions.
fn extend_fdt(rng: &mut ChaCha8Rng, a: &Relation, v: &CMatrix, h: &Subspace) -> Relation {
    let m = h.ambient_dim();
    let embedded = a.embed(v).expect("isometry");
    let perp = h.complement();
    let d_extra = rng.gen_range(0..=perp.dim());
    let p = sub_subspace(rng, &perp, d_extra);
    let mut b = embedded;
    if d_extra > 0 {
        let lean = if a.dom().dim() > 0 {
            v * (a.dom().basis() * random_matrix(rng, a.dom().dim(), d_extra))
                * Complex64::new(0.5, 0.0)
        } else {
            CMatrix::zeros(m, d_extra)
        };
        let firsts = p.basis() + lean;
        let values = random_matrix(rng, m, d_extra);
        let mut cols = Vec::with_capacity(d_extra);
        for j in 0..d_extra {
            let mut col = CVector::zeros(2 * m);
            col.rows_mut(0, m).copy_from(&firsts.column(j));
            col.rows_mut(m, m).copy_from(&values.column(j));
            cols.push(col);
        }
        b = cw(&b, &Relation::from_graph(m, &cols).expect("m >= 1"));
    }
    let rest = perp.intersect(&p.complement()).expect("same ambient");
    let wd = rng.gen_range(0..=rest.dim());
    let w_extra = sub_subspace(rng, &rest, wd);
    cw(&b, &cross_rel(&Subspace::zero(m), &w_extra))
}

fn law_range_tight_inv(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    c.agree(
        "formally range tight iff inverse formally domain tight",
        &[
            classify::is_formally_range_tight(&a),
            classify::is_formally_domain_tight(&a.inverse()),
        ],
    );
    c.agree(
        "range tight iff inverse domain tight",
        &[classify::is_range_tight(&a), classify::is_domain_tight(&a.inverse())],
    );
    let s = draw_symmetric(rng, n);
    if classify::is_range_tight(&s) {
        c.ensure("range tight symmetric is selfadjoint", classify::is_selfadjoint(&s));
    }
    let sa = selfadjoint_relation(rng, n);
    c.ensure(
        "selfadjoint instances are range tight",
        classify::is_range_tight(&sa) && classify::is_selfadjoint(&sa),
    );
    c
}

fn law_degenerate_findim(rng: &mut ChaCha8Rng, n: usize) -> Checks {
    let mut c = Checks::new();
    let a = draw_generic(rng, n);
    let star = a.adjoint();
    let full = Subspace::full(n);
    let p = Relation::from_operator(&star.dom().projector(), &full).expect("ambients agree");
    c.residual("ran(P A) inside dom A*", sub_incl(&after(&p, &a).ran(), &star.dom()));
    let q = Relation::from_operator(&a.dom().projector(), &full).expect("ambients agree");
    c.residual("ran(Q A*) inside dom A", sub_incl(&after(&q, &star).ran(), &a.dom()));
    let into_ran_star =
        Subspace::from_cols(n, &(star.ran().projector() * a.dom().basis()), None).expect("n >= 1");
    c.residual("projection of dom A into ran A*", sub_incl(&into_ran_star, &star.ran()));
    let into_ran =
        Subspace::from_cols(n, &(a.ran().projector() * star.dom().basis()), None).expect("n >= 1");
    c.residual("projection of dom A* into ran A", sub_incl(&into_ran, &a.ran()));
    c.agree(
        "dom A* = H iff ran A inside dom A* iff A is an operator",
        &[
            star.dom().is_full(),
            sub_incl(&a.ran(), &star.dom()) <= EQ_TOL,
            a.mul().dim() == 0,
        ],
    );
    c
}
