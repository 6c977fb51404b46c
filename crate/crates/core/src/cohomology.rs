//! Basic, reduced and relative cohomology with trivial coefficients, computed
//! on the eigenvalue-zero (and, for the reduced complex, eigenvalue-one) part of
//! the Euler grading, plus coboundary certificates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Embedding};
use crate::cochain::{Cochain, ComponentKey};
use crate::complex::{
    differential, eigen_decompose, enumerate_bounded_slots, enumerate_slots, partial_mult, tau, tau2,
    ComplexError, GradedSlot, SlotSpace,
};
use crate::linalg::{complement_basis, row_space_basis, Matrix};
use crate::poly::{Poly, Scalar};
use crate::textfmt::{cochain_record, CochainRecord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("certificate check failed: {0}")]
    CertificateMismatch(String),
}

type Result<T> = std::result::Result<T, CohomologyError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Basic,
    Reduced { a: Scalar },
    Relative { sub: Vec<usize> },
    /// Manual truncation to polynomial degree at most `bound`.
    Bounded { bound: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub q: usize,
    pub dim: usize,
    pub representatives: Vec<Cochain>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub q: usize,
    pub key: Vec<String>,
    /// Multiplicity of each generator, in generator order.
    pub counts: Vec<usize>,
    pub vandermonde: u32,
    pub budget: String,
    pub degree: u32,
    pub basis_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub q: usize,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFlag {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl VerificationFlag {
    fn new(check: &str, passed: bool, detail: impl Into<String>) -> Self {
        VerificationFlag { check: check.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub mode: Mode,
    pub slots: Vec<GradedSlot>,
    pub groups: Vec<Group>,
    pub certificates: Vec<Certificate>,
    pub flags: Vec<VerificationFlag>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.dim).collect()
    }

    pub fn dim(&self, q: usize) -> usize {
        self.groups.iter().find(|g| g.q == q).map_or(0, |g| g.dim)
    }

    pub fn group(&self, q: usize) -> Option<&Group> {
        self.groups.iter().find(|g| g.q == q)
    }

    pub fn verified(&self) -> bool {
        self.flags.iter().all(|f| f.passed)
    }

    pub fn report(&self, alg: &Algebra) -> CohomologyReport {
        let names: Vec<String> = alg.generators().iter().map(|g| g.name.clone()).collect();
        let mode = match &self.mode {
            Mode::Basic => ModeRecord { kind: "basic".into(), a: None, sub: None, bound: None },
            Mode::Reduced { a } => ModeRecord { kind: "reduced".into(), a: Some(a.to_string()), sub: None, bound: None },
            Mode::Relative { sub } => ModeRecord {
                kind: "relative".into(),
                a: None,
                sub: Some(sub.iter().map(|&i| names[i].clone()).collect()),
                bound: None,
            },
            Mode::Bounded { bound } => ModeRecord { kind: "bounded".into(), a: None, sub: None, bound: Some(*bound) },
        };
        CohomologyReport {
            mode,
            algebra: alg.name.clone(),
            generators: names,
            table: table_rows(alg, &self.slots),
            groups: self
                .groups
                .iter()
                .map(|g| GroupRecord {
                    q: g.q,
                    dim: g.dim,
                    representatives: g.representatives.iter().map(|r| cochain_record(r, alg)).collect(),
                })
                .collect(),
            certificates: self.certificates.clone(),
            verification_flags: self.flags.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sub: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub q: usize,
    pub dim: usize,
    pub representatives: Vec<CochainRecord>,
}

/// JSON form of a [`Cohomology`] result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub mode: ModeRecord,
    pub algebra: String,
    pub generators: Vec<String>,
    pub table: Vec<TableRow>,
    pub groups: Vec<GroupRecord>,
    pub certificates: Vec<Certificate>,
    pub verification_flags: Vec<VerificationFlag>,
}

pub fn table_rows(alg: &Algebra, slots: &[GradedSlot]) -> Vec<TableRow> {
    slots
        .iter()
        .map(|s| TableRow {
            q: s.q(),
            key: s.key.tuple().iter().map(|&g| alg.generator_name(g).to_string()).collect(),
            counts: s.key.counts(alg.rank()),
            vandermonde: s.key.vandermonde_degree(),
            budget: s.budget.to_string(),
            degree: s.degree,
            basis_dim: s.basis.len(),
        })
        .collect()
}

/// Slot spaces and matrices of `d` and `∂`-multiplication per Euler eigenvalue.
pub struct Engine<'a> {
    alg: &'a Algebra,
    weights: Vec<Scalar>,
    slots: BTreeMap<Scalar, Vec<GradedSlot>>,
    spaces: BTreeMap<(Scalar, usize), SlotSpace>,
    d: BTreeMap<(Scalar, usize), Matrix>,
}

impl<'a> Engine<'a> {
    pub fn new(alg: &'a Algebra) -> Result<Self> {
        let weights = alg.weights()?;
        Ok(Engine { alg, weights, slots: BTreeMap::new(), spaces: BTreeMap::new(), d: BTreeMap::new() })
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn slots(&mut self, c: &Scalar) -> &[GradedSlot] {
        if !self.slots.contains_key(c) {
            let s = enumerate_slots(&self.weights, c);
            self.slots.insert(c.clone(), s);
        }
        &self.slots[c]
    }

    /// Largest `q` carrying a slot of eigenvalue `c`.
    pub fn max_q(&mut self, c: &Scalar) -> usize {
        self.slots(c).iter().map(|s| s.q()).max().unwrap_or(0)
    }

    pub fn space(&mut self, c: &Scalar, q: usize) -> SlotSpace {
        let k = (c.clone(), q);
        if !self.spaces.contains_key(&k) {
            let s = SlotSpace::from_all(q, self.slots(c));
            self.spaces.insert(k.clone(), s);
        }
        self.spaces[&k].clone()
    }

    /// `d: C_c^q -> C_c^{q+1}`.
    pub fn d_matrix(&mut self, c: &Scalar, q: usize) -> Result<Matrix> {
        let k = (c.clone(), q);
        if !self.d.contains_key(&k) {
            let from = self.space(c, q);
            let to = self.space(c, q + 1);
            let alg = self.alg;
            let m = from.matrix_of(&to, |g| Ok(differential(g, alg)))?;
            self.d.insert(k.clone(), m);
        }
        Ok(self.d[&k].clone())
    }

    /// `d: C_c^{q-1} -> C_c^q`, with an empty domain for `q = 0`.
    pub fn d_into(&mut self, c: &Scalar, q: usize) -> Result<Matrix> {
        if q == 0 {
            Ok(Matrix::zeros(self.space(c, 0).dim(), 0))
        } else {
            self.d_matrix(c, q - 1)
        }
    }

    /// `∂ (a = 0): C_{c-1}^q -> C_c^q`.
    pub fn partial_matrix(&mut self, c: &Scalar, q: usize) -> Result<Matrix> {
        let below = c - Scalar::one();
        let from = self.space(&below, q);
        let to = self.space(c, q);
        Ok(from.matrix_of(&to, |g| Ok(partial_mult(g, &Scalar::zero())))?)
    }

    pub fn coordinates(&mut self, c: &Scalar, gamma: &Cochain) -> Result<Vec<Scalar>> {
        Ok(self.space(c, gamma.q()).coordinates(gamma)?)
    }
}

fn cols(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn rank_of(dim: usize, vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        0
    } else {
        row_space_basis(dim, vs).0.len()
    }
}

fn homotopy_flag(engine: &mut Engine, c: &Scalar) -> Result<VerificationFlag> {
    let alg = engine.alg;
    let mut checked = 0;
    let mut bad = Vec::new();
    for slot in engine.slots(c).to_vec() {
        for b in &slot.basis {
            let g = Cochain::single(slot.key.clone(), b.clone());
            let mut lhs = tau(&differential(&g, alg), alg)?;
            if g.q() > 0 {
                lhs = lhs.add(&differential(&tau(&g, alg)?, alg));
            }
            checked += 1;
            if lhs != g.scale(c) {
                bad.push(format!("{:?}/{}", slot.key.tuple(), slot.degree));
            }
        }
    }
    Ok(VerificationFlag::new(
        "homotopy-identity",
        bad.is_empty(),
        if bad.is_empty() {
            format!("(dτ+τd)γ = {c}·γ on all {checked} retained basis cochains; other eigenspaces are contractible")
        } else {
            format!("identity fails on {}", bad.join(", "))
        },
    ))
}

struct Basic {
    dims: Vec<usize>,
    reps: Vec<Vec<Cochain>>,
    // degrees where rank-nullity or d∘d = 0 failed on the assembled matrices
    inconsistent: Vec<usize>,
}

impl Basic {
    fn flag(&self) -> VerificationFlag {
        VerificationFlag::new(
            "matrix-consistency",
            self.inconsistent.is_empty(),
            if self.inconsistent.is_empty() {
                "rank + nullity = dim and d∘d = 0 for every assembled matrix".to_string()
            } else {
                format!("fails at q = {:?}", self.inconsistent)
            },
        )
    }
}

fn basic_groups(engine: &mut Engine, c: &Scalar, max_q: usize) -> Result<Basic> {
    let mut dims = Vec::new();
    let mut reps = Vec::new();
    let mut inconsistent = Vec::new();
    for q in 0..=max_q {
        let space = engine.space(c, q);
        let dq = engine.d_matrix(c, q)?;
        let dprev = engine.d_into(c, q)?;
        let kernel = dq.kernel();
        let dd = dq.mul(&dprev);
        if dq.rank() + kernel.len() != space.dim() || (0..dd.cols()).any(|j| dd.column(j).iter().any(|x| !x.is_zero())) {
            inconsistent.push(q);
        }
        let image = cols(&dprev);
        let rank_prev = rank_of(space.dim(), &image);
        let classes = complement_basis(space.dim(), &kernel, &image);
        debug_assert_eq!(classes.len(), kernel.len() - rank_prev);
        dims.push(kernel.len() - rank_prev);
        reps.push(classes.iter().map(|v| space.cochain(v)).collect());
    }
    Ok(Basic { dims, reps, inconsistent })
}

fn cocycle_flag(groups: &[Group], alg: &Algebra, a: Option<&Scalar>) -> VerificationFlag {
    let mut bad = Vec::new();
    for g in groups {
        for (i, r) in g.representatives.iter().enumerate() {
            let dr = differential(r, alg);
            let ok = match a {
                None => dr.is_zero(),
                Some(a) => {
                    let f = Poly::constant(a.clone()) + Poly::lambda_sum(dr.q() as u32);
                    dr.components().all(|(_, p)| matches!(p.divide_by_affine(&f), Ok(Some(_))))
                }
            };
            if !ok {
                bad.push(format!("q={} #{}", g.q, i));
            }
        }
    }
    let what = if a.is_some() { "reduced-closed (dγ divisible by a+Σλ)" } else { "closed (dγ = 0)" };
    VerificationFlag::new(
        "representatives-closed",
        bad.is_empty(),
        if bad.is_empty() { format!("every representative is {what}") } else { format!("not {what}: {}", bad.join(", ")) },
    )
}

pub fn basic_cohomology(alg: &Algebra) -> Result<Cohomology> {
    let mut engine = Engine::new(alg)?;
    let zero = Scalar::zero();
    let max_q = engine.max_q(&zero) + 1;
    let basic = basic_groups(&mut engine, &zero, max_q)?;
    let groups: Vec<Group> = (0..=max_q)
        .map(|q| Group { q, dim: basic.dims[q], representatives: basic.reps[q].clone() })
        .collect();
    let flags = vec![basic.flag(), homotopy_flag(&mut engine, &zero)?, cocycle_flag(&groups, alg, None)];
    Ok(Cohomology { mode: Mode::Basic, slots: engine.slots(&zero).to_vec(), groups, certificates: Vec::new(), flags })
}

/// Cohomology of `C_{≤bound}` for algebras without usable weights. The
/// truncation is not justified by any homotopy and is flagged as such.
pub fn bounded_cohomology(alg: &Algebra, bound: u32) -> Result<Cohomology> {
    let rank = alg.rank();
    let max_coeff = alg.entries().flat_map(|(_, c)| c.values()).map(|p| p.total_degree().max(0) as u32).max().unwrap_or(0);
    let mut low = Vec::new();
    for q in 0.. {
        let s = SlotSpace::new(q, enumerate_bounded_slots(rank, q, bound));
        if s.dim() == 0 && q > 0 {
            low.push(s);
            break;
        }
        low.push(s);
    }
    let max_q = low.len() - 1;
    let mut groups = Vec::new();
    let mut all_slots = Vec::new();
    for q in 0..=max_q {
        let space = &low[q];
        all_slots.extend(space.slots().iter().cloned());
        let high_target = SlotSpace::new(q + 1, enumerate_bounded_slots(rank, q + 1, bound + max_coeff));
        let dq = space.matrix_of(&high_target, |g| Ok(differential(g, alg)))?;
        let kernel = dq.kernel();
        let image: Vec<Vec<Scalar>> = if q == 0 {
            Vec::new()
        } else {
            let prev = &low[q - 1];
            let wide = SlotSpace::new(q, enumerate_bounded_slots(rank, q, bound + max_coeff));
            let dprev = prev.matrix_of(&wide, |g| Ok(differential(g, alg)))?;
            // preimages whose image stays within degree <= bound
            let high_rows: Vec<usize> = (0..wide.dim()).filter(|&i| wide.slots()[wide.locate(i).0].degree > bound).collect();
            let ker_high = dprev.select_rows(&high_rows).kernel();
            ker_high
                .iter()
                .map(|y| space.coordinates(&wide.cochain(&dprev.apply(y))))
                .collect::<std::result::Result<Vec<_>, _>>()?
        };
        let classes = complement_basis(space.dim(), &kernel, &image);
        groups.push(Group { q, dim: classes.len(), representatives: classes.iter().map(|v| space.cochain(v)).collect() });
    }
    let flags = vec![
        VerificationFlag::new(
            "unverified-truncation",
            false,
            format!("manual truncation to polynomial degree <= {bound}; no homotopy bounds the complex, so dimensions may be incomplete"),
        ),
        cocycle_flag(&groups, alg, None),
    ];
    Ok(Cohomology { mode: Mode::Bounded { bound }, slots: all_slots, groups, certificates: Vec::new(), flags })
}

/// A preimage `φ` with `dφ = γ`, or `None` when `γ` is not a coboundary.
/// Components of nonzero Euler eigenvalue `c` are handled in closed form by
/// `τγ_c / c`.
pub fn is_coboundary(gamma: &Cochain, alg: &Algebra) -> Result<Option<Cochain>> {
    let q = gamma.q();
    if !differential(gamma, alg).is_zero() {
        return Ok(None);
    }
    if q == 0 {
        return Ok(if gamma.is_zero() { Some(Cochain::zero(0)) } else { None });
    }
    let mut engine = Engine::new(alg)?;
    let mut cert = Cochain::zero(q - 1);
    for (c, part) in eigen_decompose(gamma, engine.weights()) {
        if c.is_zero() {
            let v = engine.coordinates(&c, &part)?;
            let dprev = engine.d_matrix(&c, q - 1)?;
            let Some(x) = dprev.solve(&v) else { return Ok(None) };
            cert = cert.add(&engine.space(&c, q - 1).cochain(&x));
        } else {
            cert = cert.add(&tau(&part, alg)?.scale(&(Scalar::one() / &c)));
        }
    }
    if differential(&cert, alg) != *gamma {
        return Err(CohomologyError::CertificateMismatch("d(certificate) differs from the input".into()));
    }
    Ok(Some(cert))
}

/// Coefficients `c_i` with `γ - Σ c_i r_i` a coboundary, for a closed `γ`
/// and representatives `r_i`. `None` if `γ` is not in their span modulo
/// coboundaries (or is not closed).
pub fn express_in_classes(gamma: &Cochain, reps: &[Cochain], alg: &Algebra) -> Result<Option<Vec<Scalar>>> {
    if !differential(gamma, alg).is_zero() {
        return Ok(None);
    }
    let q = gamma.q();
    let mut engine = Engine::new(alg)?;
    let zero = Scalar::zero();
    // nonzero eigencomponents of closed cochains are coboundaries
    let part0 = |g: &Cochain, w: &[Scalar]| eigen_decompose(g, w).remove(&Scalar::zero()).unwrap_or(Cochain::zero(q));
    let w = engine.weights().to_vec();
    let v = engine.coordinates(&zero, &part0(gamma, &w))?;
    let dprev = engine.d_into(&zero, q)?;
    let rep_cols = reps
        .iter()
        .map(|r| engine.coordinates(&zero, &part0(r, &w)))
        .collect::<Result<Vec<_>>>()?;
    let m = dprev.hstack(&Matrix::from_columns(v.len(), &rep_cols));
    Ok(m.solve(&v).map(|x| x[dprev.cols()..].to_vec()))
}

struct QuotientPiece {
    dim: usize,
    // span of coboundaries in C_c^q: d C_c^{q-1} + ∂ C_{c-1}^q
    boundaries: Vec<Vec<Scalar>>,
    space: SlotSpace,
}

// H^q of Q_c = C_c / ∂C_{c-1} for a = 0.
fn quotient_piece(engine: &mut Engine, c: &Scalar, q: usize) -> Result<QuotientPiece> {
    let space = engine.space(c, q);
    let dq = engine.d_matrix(c, q)?;
    let p_next = engine.partial_matrix(c, q + 1)?;
    let neg: Vec<Vec<Scalar>> = cols(&p_next).into_iter().map(|v| v.into_iter().map(|x| -x).collect()).collect();
    let joint = dq.hstack(&Matrix::from_columns(dq.rows(), &neg));
    let cycles: Vec<Vec<Scalar>> = joint.kernel().into_iter().map(|v| v[..space.dim()].to_vec()).collect();
    let mut boundaries = cols(&engine.d_into(c, q)?);
    boundaries.extend(cols(&engine.partial_matrix(c, q)?));
    let dim = rank_of(space.dim(), &cycles) - rank_of(space.dim(), &boundaries);
    Ok(QuotientPiece { dim, boundaries, space })
}

fn independent_mod(piece: &QuotientPiece, reps: &[Cochain]) -> Result<bool> {
    let mut vs = piece.boundaries.clone();
    let base = rank_of(piece.space.dim(), &vs);
    for r in reps {
        vs.push(piece.space.coordinates(r)?);
    }
    Ok(rank_of(piece.space.dim(), &vs) == base + reps.len())
}

pub fn reduced_cohomology(alg: &Algebra, a: &Scalar) -> Result<Cohomology> {
    if a.is_zero() {
        reduced_at_zero(alg)
    } else {
        reduced_nonzero(alg, a)
    }
}

fn reduced_at_zero(alg: &Algebra) -> Result<Cohomology> {
    let mut engine = Engine::new(alg)?;
    let zero = Scalar::zero();
    let one = Scalar::one();
    let max_q = engine.max_q(&zero).max(engine.max_q(&one)) + 1;
    let basic = basic_groups(&mut engine, &zero, max_q + 1)?;
    let mut groups = Vec::new();
    let mut flags = vec![basic.flag(), homotopy_flag(&mut engine, &zero)?];
    let mut formula_bad = Vec::new();
    let mut independence_bad = Vec::new();
    for q in 0..=max_q {
        let p0 = quotient_piece(&mut engine, &zero, q)?;
        let p1 = quotient_piece(&mut engine, &one, q)?;
        let reps0 = basic.reps[q].clone();
        let reps1 = basic.reps[q + 1]
            .iter()
            .map(|g| tau(&partial_mult(g, &zero), alg))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if reps0.len() != p0.dim || !independent_mod(&p0, &reps0)? {
            independence_bad.push(format!("q={q} eigenvalue 0"));
        }
        if reps1.len() != p1.dim || !independent_mod(&p1, &reps1)? {
            independence_bad.push(format!("q={q} eigenvalue 1"));
        }
        let dim = p0.dim + p1.dim;
        if q >= 1 && dim != basic.dims[q] + basic.dims[q + 1] {
            formula_bad.push(format!("q={q}: {dim} vs {}", basic.dims[q] + basic.dims[q + 1]));
        }
        let mut reps = reps0;
        reps.extend(reps1);
        groups.push(Group { q, dim, representatives: reps });
    }
    flags.push(VerificationFlag::new(
        "reduced-basic-relation",
        formula_bad.is_empty(),
        if formula_bad.is_empty() {
            "dim H^q = dim H~^q + dim H~^(q+1) for every q >= 1".to_string()
        } else {
            format!("mismatch at {}", formula_bad.join(", "))
        },
    ));
    let (h0, expected) = (groups[0].dim, basic.dims[0] + basic.dims[1]);
    flags.push(VerificationFlag::new(
        "reduced-degree-zero",
        h0 == expected,
        format!("dim H^0 = {h0} computed directly; dim H~^0 + dim H~^1 = {expected}"),
    ));
    flags.push(VerificationFlag::new(
        "representatives-independent",
        independence_bad.is_empty(),
        if independence_bad.is_empty() {
            "basic representatives and τ(∂γ) images are independent modulo reduced coboundaries".to_string()
        } else {
            format!("dependent or short at {}", independence_bad.join(", "))
        },
    ));
    flags.push(cocycle_flag(&groups, alg, Some(&zero)));
    Ok(Cohomology {
        mode: Mode::Reduced { a: zero.clone() },
        slots: engine.slots(&zero).to_vec(),
        groups,
        certificates: Vec::new(),
        flags,
    })
}

/// `(dτ₂ + τ₂d)γ + aγ`, which must be divisible by `a + Σλ`.
pub fn tau2_residual(gamma: &Cochain, alg: &Algebra, a: &Scalar) -> Result<Cochain> {
    let mut r = tau2(&differential(gamma, alg), alg)?.add(&gamma.scale(a));
    if gamma.q() > 0 {
        r = r.add(&differential(&tau2(gamma, alg)?, alg));
    }
    Ok(r)
}

fn divide_cochain(gamma: &Cochain, a: &Scalar) -> Option<Cochain> {
    let f = Poly::constant(a.clone()) + Poly::lambda_sum(gamma.q() as u32);
    let mut out = Cochain::zero(gamma.q());
    for (k, p) in gamma.components() {
        out.add_component(k.clone(), &p.divide_by_affine(&f).ok()??);
    }
    Some(out)
}

fn reduced_nonzero(alg: &Algebra, a: &Scalar) -> Result<Cohomology> {
    let mut engine = Engine::new(alg)?;
    let zero = Scalar::zero();
    let max_q = engine.max_q(&zero) + 1;
    let mut certificates = Vec::new();
    let mut bad = Vec::new();
    for slot in engine.slots(&zero).to_vec() {
        let mut ok = true;
        for b in &slot.basis {
            let g = Cochain::single(slot.key.clone(), b.clone());
            ok &= divide_cochain(&tau2_residual(&g, alg, a)?, a).is_some();
        }
        let names: Vec<&str> = slot.key.tuple().iter().map(|&i| alg.generator_name(i)).collect();
        let subject = format!("({}) degree {}", names.join(","), slot.degree);
        if !ok {
            bad.push(subject.clone());
        }
        certificates.push(Certificate {
            kind: "tau2-divisibility".into(),
            q: slot.q(),
            subject,
            detail: if ok {
                format!("(dτ₂+τ₂d)γ + ({a})γ is divisible by ({a} + Σλ) on all {} basis cochains", slot.basis.len())
            } else {
                "divisibility fails".into()
            },
        });
    }
    let passed = bad.is_empty();
    let groups = if passed {
        (0..=max_q).map(|q| Group { q, dim: 0, representatives: Vec::new() }).collect()
    } else {
        Vec::new()
    };
    let flags = vec![VerificationFlag::new(
        "tau2-vanishing",
        passed,
        if passed {
            format!("τ₂ homotopy verified on every retained slot; the reduced complex with a = {a} is acyclic")
        } else {
            format!("τ₂ divisibility failed on {}; no dimensions asserted", bad.join(", "))
        },
    )];
    Ok(Cohomology { mode: Mode::Reduced { a: a.clone() }, slots: engine.slots(&zero).to_vec(), groups, certificates, flags })
}

/// `(φ, ψ)` with `γ = dφ + (a + Σλ)ψ`, or `None`.
pub fn is_reduced_coboundary(gamma: &Cochain, alg: &Algebra, a: &Scalar) -> Result<Option<(Cochain, Cochain)>> {
    let q = gamma.q();
    let (phi, psi) = if a.is_zero() {
        let mut engine = Engine::new(alg)?;
        let mut phi = Cochain::zero(q.saturating_sub(1));
        let mut psi = Cochain::zero(q);
        for (c, part) in eigen_decompose(gamma, engine.weights()) {
            let v = engine.coordinates(&c, &part)?;
            let dprev = engine.d_into(&c, q)?;
            let p = engine.partial_matrix(&c, q)?;
            let Some(x) = dprev.hstack(&p).solve(&v) else { return Ok(None) };
            if q > 0 {
                phi = phi.add(&engine.space(&c, q - 1).cochain(&x[..dprev.cols()]));
            }
            psi = psi.add(&engine.space(&(&c - Scalar::one()), q).cochain(&x[dprev.cols()..]));
        }
        (phi, psi)
    } else {
        // closed form from (dτ₂+τ₂d)γ = (Σλ)γ and τ₂∂ = ∂τ₂
        let Some(eta) = divide_cochain(&differential(gamma, alg), a) else { return Ok(None) };
        let inv = Scalar::one() / a;
        let phi = if q == 0 { Cochain::zero(0) } else { tau2(gamma, alg)?.scale(&-inv.clone()) };
        let psi = gamma.sub(&tau2(&eta, alg)?).scale(&inv);
        (phi, psi)
    };
    let mut rebuilt = partial_mult(&psi, a);
    if q > 0 {
        rebuilt = rebuilt.add(&differential(&phi, alg));
    }
    if rebuilt != *gamma {
        return Err(CohomologyError::CertificateMismatch("dφ + (a+Σλ)ψ differs from the input".into()));
    }
    Ok(Some((phi, psi)))
}

/// Coefficients `c_i` with `γ - Σ c_i r_i` a reduced coboundary (`a = 0`).
pub fn express_in_reduced_classes(gamma: &Cochain, reps: &[Cochain], alg: &Algebra) -> Result<Option<Vec<Scalar>>> {
    let q = gamma.q();
    let mut engine = Engine::new(alg)?;
    let w = engine.weights().to_vec();
    let mut parts: Vec<BTreeMap<Scalar, Cochain>> = vec![eigen_decompose(gamma, &w)];
    for r in reps {
        parts.push(eigen_decompose(r, &w));
    }
    let eigen: BTreeSet<Scalar> = parts.iter().flat_map(|p| p.keys().cloned()).collect();
    // block rows per eigenvalue; columns: d and ∂ blocks per eigenvalue, then reps
    let mut row_blocks = Vec::new();
    for c in &eigen {
        let dim = engine.space(c, q).dim();
        row_blocks.push((c.clone(), dim));
    }
    let total_rows: usize = row_blocks.iter().map(|b| b.1).sum();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut offset = 0;
    let mut rhs = vec![Scalar::zero(); total_rows];
    let mut rep_cols = vec![vec![Scalar::zero(); total_rows]; reps.len()];
    for (c, dim) in &row_blocks {
        let mut push_block = |m: Matrix| {
            for col in cols(&m) {
                let mut full = vec![Scalar::zero(); total_rows];
                full[offset..offset + dim].clone_from_slice(&col);
                columns.push(full);
            }
        };
        push_block(engine.d_into(c, q)?);
        push_block(engine.partial_matrix(c, q)?);
        if let Some(g) = parts[0].get(c) {
            let v = engine.coordinates(c, g)?;
            rhs[offset..offset + dim].clone_from_slice(&v);
        }
        for (i, rp) in parts[1..].iter().enumerate() {
            if let Some(g) = rp.get(c) {
                let v = engine.coordinates(c, g)?;
                rep_cols[i][offset..offset + dim].clone_from_slice(&v);
            }
        }
        offset += dim;
    }
    let n_fixed = columns.len();
    columns.extend(rep_cols);
    let m = Matrix::from_columns(total_rows, &columns);
    Ok(m.solve(&rhs).map(|x| x[n_fixed..].to_vec()))
}

pub fn relative_cohomology(alg: &Algebra, sub: &[usize]) -> Result<Cohomology> {
    alg.require_subalgebra(sub)?;
    let mut engine = Engine::new(alg)?;
    let zero = Scalar::zero();
    let max_q = engine.max_q(&zero) + 1;
    let touches = |key: &ComponentKey| sub.iter().any(|&b| key.contains(b));

    // R^q: B-free cochains whose differential vanishes on B-containing slots,
    // as columns in full C^q coordinates
    let mut relative: Vec<Vec<Vec<Scalar>>> = Vec::new();
    let mut constraint: Vec<(Vec<usize>, Vec<usize>, Matrix)> = Vec::new();
    for q in 0..=max_q + 1 {
        let space = engine.space(&zero, q);
        let next = engine.space(&zero, q + 1);
        let free: Vec<usize> = (0..space.dim()).filter(|&i| !touches(&space.slots()[space.locate(i).0].key)).collect();
        let b_rows: Vec<usize> = (0..next.dim()).filter(|&i| touches(&next.slots()[next.locate(i).0].key)).collect();
        let dq = engine.d_matrix(&zero, q)?;
        let k = dq.select_rows(&b_rows).transpose().select_rows(&free).transpose();
        let basis: Vec<Vec<Scalar>> = k
            .kernel()
            .into_iter()
            .map(|v| {
                let mut full = vec![Scalar::zero(); space.dim()];
                for (x, &i) in v.into_iter().zip(&free) {
                    full[i] = x;
                }
                full
            })
            .collect();
        let b_coords: Vec<usize> = (0..space.dim()).filter(|i| !free.contains(i)).collect();
        constraint.push((b_coords, b_rows, dq));
        relative.push(basis);
    }
    let in_relative = |q: usize, v: &[Scalar], constraint: &[(Vec<usize>, Vec<usize>, Matrix)]| {
        let (b_coords, b_rows, dq) = &constraint[q];
        if b_coords.iter().any(|&i| !v[i].is_zero()) {
            return false;
        }
        let dv = dq.apply(v);
        b_rows.iter().all(|&i| dv[i].is_zero())
    };

    let mut groups = Vec::new();
    let mut closure_ok = true;
    let mut tau_ok = true;
    for q in 0..=max_q {
        let space = engine.space(&zero, q);
        let dq = engine.d_matrix(&zero, q)?;
        let r = Matrix::from_columns(space.dim(), &relative[q]);
        let m = dq.mul(&r);
        for col in cols(&m) {
            closure_ok &= in_relative(q + 1, &col, &constraint);
        }
        let kernel: Vec<Vec<Scalar>> = m.kernel().iter().map(|y| r.apply(y)).collect();
        let image: Vec<Vec<Scalar>> = if q == 0 {
            Vec::new()
        } else {
            let rp = Matrix::from_columns(engine.space(&zero, q - 1).dim(), &relative[q - 1]);
            cols(&engine.d_matrix(&zero, q - 1)?.mul(&rp))
        };
        let classes = complement_basis(space.dim(), &kernel, &image);
        if q > 0 {
            let below = engine.space(&zero, q - 1);
            for v in &relative[q] {
                let t = tau(&space.cochain(v), alg)?;
                let tv = below.coordinates(&t)?;
                tau_ok &= in_relative(q - 1, &tv, &constraint);
            }
        }
        groups.push(Group { q, dim: classes.len(), representatives: classes.iter().map(|v| space.cochain(v)).collect() });
    }
    let names: Vec<&str> = sub.iter().map(|&i| alg.generator_name(i)).collect();
    let flags = vec![
        VerificationFlag::new(
            "relative-subcomplex-closed",
            closure_ok,
            if closure_ok { "d maps relative cochains to relative cochains" } else { "d leaves the relative subspace" },
        ),
        VerificationFlag::new(
            "relative-tau-closed",
            tau_ok,
            if tau_ok {
                format!("τ preserves the relative subspace for B = {{{}}}, so the eigenvalue-zero truncation applies", names.join(","))
            } else {
                "τ leaves the relative subspace; truncation is not justified".to_string()
            },
        ),
        homotopy_flag(&mut engine, &zero)?,
        cocycle_flag(&groups, alg, None),
    ];
    Ok(Cohomology {
        mode: Mode::Relative { sub: sub.to_vec() },
        slots: engine.slots(&zero).iter().filter(|s| !touches(&s.key)).cloned().collect(),
        groups,
        certificates: Vec::new(),
        flags,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckRow {
    pub q: usize,
    pub relative: usize,
    pub quotient: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub algebra: String,
    pub ideal: Vec<String>,
    pub quotient: String,
    pub rows: Vec<CrosscheckRow>,
    pub all_agree: bool,
    pub verification_flags: Vec<VerificationFlag>,
}

/// Compares relative cohomology modulo an ideal with the basic cohomology of
/// the quotient algebra.
pub fn ideal_quotient_crosscheck(alg: &Algebra, ideal: &[usize]) -> Result<CrosscheckReport> {
    let quotient = alg.quotient(ideal)?;
    let rel = relative_cohomology(alg, ideal)?;
    let quo = basic_cohomology(&quotient)?;
    let n = rel.groups.len().max(quo.groups.len());
    let rows: Vec<CrosscheckRow> = (0..n)
        .map(|q| {
            let (r, s) = (rel.dim(q), quo.dim(q));
            CrosscheckRow { q, relative: r, quotient: s, agree: r == s }
        })
        .collect();
    let mut flags = rel.flags.clone();
    flags.extend(quo.flags.iter().cloned());
    Ok(CrosscheckReport {
        algebra: alg.name.clone(),
        ideal: ideal.iter().map(|&i| alg.generator_name(i).to_string()).collect(),
        quotient: quotient.name.clone(),
        all_agree: rows.iter().all(|r| r.agree),
        rows,
        verification_flags: flags,
    })
}

/// The cochain equal to `γ` on tuples from the image of the embedding and
/// zero elsewhere.
pub fn extend_by_zero(gamma: &Cochain, emb: &Embedding) -> Cochain {
    let mut out = Cochain::zero(gamma.q());
    for (k, p) in gamma.components() {
        let tuple: Vec<usize> = k.tuple().iter().map(|&g| emb.image(g)).collect();
        let single = Cochain::from_tuples(gamma.q(), [(&tuple[..], p.clone())]);
        out = out.add(&single);
    }
    out
}

/// Whether the given cocycles are linearly independent modulo coboundaries.
pub fn independent_mod_coboundaries(cocycles: &[Cochain], alg: &Algebra) -> Result<bool> {
    let Some(first) = cocycles.first() else { return Ok(true) };
    let q = first.q();
    if cocycles.iter().any(|c| !differential(c, alg).is_zero()) {
        return Ok(false);
    }
    let mut engine = Engine::new(alg)?;
    let zero = Scalar::zero();
    let w = engine.weights().to_vec();
    let mut vs = cols(&engine.d_into(&zero, q)?);
    let dim = engine.space(&zero, q).dim();
    let base = rank_of(dim, &vs);
    for c in cocycles {
        let part = eigen_decompose(c, &w).remove(&zero).unwrap_or(Cochain::zero(q));
        vs.push(engine.coordinates(&zero, &part)?);
    }
    Ok(rank_of(dim, &vs) == base + cocycles.len())
}
