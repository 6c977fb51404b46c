//! The differential, the homotopy operators `τ` and `τ₂`, `∂`-multiplication,
//! the Euler grading, and graded slot spaces.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::cochain::{self, antisym_basis, Cochain, ComponentKey};
use crate::linalg::Matrix;
use crate::poly::{scalar, scalar_to_i64, Poly, Scalar, Var};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("algebra has no designated virasoro generator")]
    NoVirasoro,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("component {key} in degree {degree} lies outside the slot space")]
    OutsideSpace { key: String, degree: i64 },
    #[error(transparent)]
    Cochain(#[from] cochain::CochainError),
}

/// `(dγ)(a_1..a_{q+1}) = Σ_{i<j} (-1)^{i+j} γ([a_i λ_i a_j], a_1..â_i..â_j..a_{q+1})`
/// with `∂ ↦ -(λ_i+λ_j)` in the bracket coefficients.
pub fn differential(gamma: &Cochain, alg: &Algebra) -> Cochain {
    let q = gamma.q();
    // brackets producing each target generator
    let mut producers: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (&(x, y), combo) in alg.entries() {
        for &g in combo.keys() {
            producers.entry(g).or_default().push((x, y));
        }
    }
    let mut targets = BTreeSet::new();
    for (key, _) in gamma.components() {
        let mut seen = BTreeSet::new();
        for &g in key.tuple() {
            if !seen.insert(g) {
                continue;
            }
            let rest = key.without_one(g).unwrap();
            for &(x, y) in producers.get(&g).into_iter().flatten() {
                targets.insert(rest.with(x).with(y));
            }
        }
    }
    let mut out = Cochain::zero(q + 1);
    for t in targets {
        let tuple = t.tuple();
        let mut value = Poly::zero();
        for i in 0..=q {
            for j in i + 1..=q {
                let entry = alg.bracket(tuple[i], tuple[j]);
                if entry.is_empty() {
                    continue;
                }
                let li = Poly::lam(i as u32 + 1);
                let sum = &li + &Poly::lam(j as u32 + 1);
                let mut sub_tuple = Vec::with_capacity(q);
                let mut args = Vec::with_capacity(q);
                sub_tuple.push(0);
                args.push(sum.clone());
                for k in (0..=q).filter(|&k| k != i && k != j) {
                    sub_tuple.push(tuple[k]);
                    args.push(Poly::lam(k as u32 + 1));
                }
                let mut term = Poly::zero();
                for (&g, coeff) in entry {
                    sub_tuple[0] = g;
                    let v = gamma.evaluate_at(&sub_tuple, &args);
                    if v.is_zero() {
                        continue;
                    }
                    let c = coeff.substitute_many(&[(Var::Del, -&sum), (Var::Lam(0), li.clone())]);
                    term += &(&c * &v);
                }
                if (i + j) % 2 == 1 {
                    value -= &term;
                } else {
                    value += &term;
                }
            }
        }
        out.add_component(t, &value);
    }
    out
}

fn contract(gamma: &Cochain, alg: &Algebra, derivative: bool) -> Result<Cochain, ComplexError> {
    let l = alg.virasoro().ok_or(ComplexError::NoVirasoro)?;
    let q = gamma.q();
    if q == 0 {
        return Ok(Cochain::zero(0));
    }
    let last = Var::Lam(q as u32);
    let mut out = Cochain::zero(q - 1);
    for (key, _) in gamma.components() {
        let Some(rest) = key.without_one(l) else { continue };
        let mut tuple = rest.tuple().to_vec();
        tuple.push(l);
        let mut v = gamma.evaluate(&tuple);
        if derivative {
            v = v.partial_derivative(last);
        }
        v = v.substitute_many(&[(last, Poly::zero())]);
        if q.is_multiple_of(2) {
            v = -v;
        }
        out.add_component(rest, &v);
    }
    Ok(out)
}

/// `(τγ)(a_1..a_{q-1}) = (-1)^{q-1} ∂_λ γ(a_1..a_{q-1}, L)|_{λ=0}`.
pub fn tau(gamma: &Cochain, alg: &Algebra) -> Result<Cochain, ComplexError> {
    contract(gamma, alg, true)
}

/// `(τ₂γ)(a_1..a_{q-1}) = (-1)^{q-1} γ(a_1..a_{q-1}, L)|_{λ=0}`.
pub fn tau2(gamma: &Cochain, alg: &Algebra) -> Result<Cochain, ComplexError> {
    contract(gamma, alg, false)
}

/// Multiplication by `a + λ_1 + ... + λ_q`.
pub fn partial_mult(gamma: &Cochain, a: &Scalar) -> Cochain {
    let f = Poly::constant(a.clone()) + Poly::lambda_sum(gamma.q() as u32);
    gamma.mul_poly(&f)
}

/// `Σ_g mult(g)·(Δ_g - 1)`.
pub fn budget(key: &ComponentKey, weights: &[Scalar]) -> Scalar {
    let one = scalar(1);
    key.tuple().iter().map(|&g| &weights[g] - &one).fold(Scalar::zero(), |a, b| a + b)
}

pub fn euler_eigenvalue(key: &ComponentKey, d: i64, weights: &[Scalar]) -> Scalar {
    scalar(d) - budget(key, weights)
}

/// One `(key, degree)` summand of a cochain space with its antisymmetric basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlot {
    pub key: ComponentKey,
    pub degree: u32,
    pub budget: Scalar,
    pub basis: Vec<Poly>,
}

impl GradedSlot {
    pub fn q(&self) -> usize {
        self.key.q()
    }
}

fn choose2(m: i64) -> i64 {
    m * (m - 1) / 2
}

// Largest multiplicity m with C(m,2) - m(Δ-1) <= cap.
fn multiplicity_cap(delta: &Scalar, cap: &Scalar) -> usize {
    let one = scalar(1);
    let excess = |m: i64| scalar(choose2(m)) - scalar(m) * (delta - &one);
    let mut m = 0i64;
    let mut best = 0;
    // excess is convex in m; scan until it exceeds cap past the minimum
    loop {
        let e = excess(m);
        if &e <= cap {
            best = m;
        } else if m > 0 && excess(m) > excess(m - 1) {
            break;
        }
        m += 1;
    }
    best as usize
}

/// All slots of Euler eigenvalue `c`: keys whose budget `D` makes `D + c` a
/// nonnegative integer at least the Vandermonde degree. Sorted by `(q, key)`.
pub fn enumerate_slots(weights: &[Scalar], c: &Scalar) -> Vec<GradedSlot> {
    let one = scalar(1);
    let surplus: Scalar = weights
        .iter()
        .map(|w| {
            let gain = |m: i64| scalar(m) * (w - &one) - scalar(choose2(m));
            let mut best = Scalar::zero();
            let mut m = 1;
            loop {
                let g = gain(m);
                if g > best {
                    best = g.clone();
                }
                if g < gain(m - 1) && g.is_negative() {
                    break;
                }
                m += 1;
            }
            best
        })
        .fold(Scalar::zero(), |a, b| a + b);
    let cap = surplus + if c.is_positive() { c.clone() } else { Scalar::zero() };
    let caps: Vec<usize> = weights.iter().map(|w| multiplicity_cap(w, &cap)).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; weights.len()];
    loop {
        let key = ComponentKey::from_counts(&counts);
        let total = budget(&key, weights) + c;
        if let Some(d) = scalar_to_i64(&total) {
            if d >= key.vandermonde_degree() as i64 {
                let basis = antisym_basis(&key, d as u32);
                if !basis.is_empty() {
                    out.push(GradedSlot { budget: budget(&key, weights), key, degree: d as u32, basis });
                }
            }
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == counts.len() {
                out.sort_by(|a, b| (a.q(), &a.key).cmp(&(b.q(), &b.key)));
                return out;
            }
            if counts[i] < caps[i] {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// The eigenvalue-zero slots, which carry all of the cohomology.
pub fn enumerate_zero_slots(alg: &Algebra) -> Result<Vec<GradedSlot>, ComplexError> {
    let w = alg.weights()?;
    Ok(enumerate_slots(&w, &Scalar::zero()))
}

/// Every slot of degree `q` with polynomial degree at most `bound`, for
/// manual truncation when weights are unavailable.
pub fn enumerate_bounded_slots(rank: usize, q: usize, bound: u32) -> Vec<GradedSlot> {
    let mut out = Vec::new();
    let mut tuple = vec![0usize; q];
    loop {
        let key = ComponentKey::from_tuple(&tuple);
        for d in key.vandermonde_degree()..=bound {
            let basis = antisym_basis(&key, d);
            if !basis.is_empty() {
                out.push(GradedSlot { key: key.clone(), degree: d, budget: Scalar::zero(), basis });
            }
        }
        // next non-decreasing tuple
        let mut i = q;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if tuple[i] + 1 < rank {
                let v = tuple[i] + 1;
                for t in tuple[i..].iter_mut() {
                    *t = v;
                }
                break;
            }
        }
    }
}

/// A finite-dimensional space of `q`-cochains spanned by slot bases.
#[derive(Clone, Debug)]
pub struct SlotSpace {
    q: usize,
    slots: Vec<GradedSlot>,
    offsets: Vec<usize>,
    index: BTreeMap<(ComponentKey, u32), usize>,
}

impl SlotSpace {
    pub fn new(q: usize, slots: Vec<GradedSlot>) -> Self {
        let mut offsets = Vec::with_capacity(slots.len() + 1);
        let mut index = BTreeMap::new();
        let mut n = 0;
        for (i, s) in slots.iter().enumerate() {
            assert_eq!(s.q(), q);
            offsets.push(n);
            n += s.basis.len();
            index.insert((s.key.clone(), s.degree), i);
        }
        offsets.push(n);
        SlotSpace { q, slots, offsets, index }
    }

    /// The slots of degree `q` from a mixed list.
    pub fn from_all(q: usize, all: &[GradedSlot]) -> Self {
        SlotSpace::new(q, all.iter().filter(|s| s.q() == q).cloned().collect())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn slots(&self) -> &[GradedSlot] {
        &self.slots
    }

    /// `(slot index, basis index)` of a coordinate.
    pub fn locate(&self, coord: usize) -> (usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= coord) - 1;
        (s, coord - self.offsets[s])
    }

    pub fn slot_range(&self, s: usize) -> std::ops::Range<usize> {
        self.offsets[s]..self.offsets[s + 1]
    }

    pub fn basis_cochain(&self, coord: usize) -> Cochain {
        let (s, b) = self.locate(coord);
        Cochain::single(self.slots[s].key.clone(), self.slots[s].basis[b].clone())
    }

    pub fn cochain(&self, v: &[Scalar]) -> Cochain {
        assert_eq!(v.len(), self.dim());
        let mut out = Cochain::zero(self.q);
        for (coord, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (s, b) = self.locate(coord);
            out.add_component(self.slots[s].key.clone(), &self.slots[s].basis[b].scale(x));
        }
        out
    }

    pub fn coordinates(&self, gamma: &Cochain) -> Result<Vec<Scalar>, ComplexError> {
        assert_eq!(gamma.q(), self.q);
        let mut v = vec![Scalar::zero(); self.dim()];
        for (key, p) in gamma.components() {
            for (d, part) in p.homogeneous_parts() {
                let outside = || ComplexError::OutsideSpace { key: format!("{:?}", key.tuple()), degree: d as i64 };
                let &s = self.index.get(&(key.clone(), d)).ok_or_else(outside)?;
                let c = cochain::coordinates(key, d, &part)?;
                let mut check = Poly::zero();
                for (x, b) in c.iter().zip(&self.slots[s].basis) {
                    check += &b.scale(x);
                }
                if check != part {
                    return Err(cochain::CochainError::NotDivisible(format!("{:?}", key.tuple())).into());
                }
                for (i, x) in c.into_iter().enumerate() {
                    v[self.offsets[s] + i] = x;
                }
            }
        }
        Ok(v)
    }

    /// Matrix of a linear map `self -> target`, one column per basis cochain.
    pub fn matrix_of(
        &self,
        target: &SlotSpace,
        f: impl Fn(&Cochain) -> Result<Cochain, ComplexError>,
    ) -> Result<Matrix, ComplexError> {
        let cols = (0..self.dim())
            .map(|i| target.coordinates(&f(&self.basis_cochain(i))?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(target.dim(), &cols))
    }
}

/// Splits a cochain by Euler eigenvalue of its homogeneous parts.
pub fn eigen_decompose(gamma: &Cochain, weights: &[Scalar]) -> BTreeMap<Scalar, Cochain> {
    let mut out: BTreeMap<Scalar, Cochain> = BTreeMap::new();
    for (key, p) in gamma.components() {
        for (d, part) in p.homogeneous_parts() {
            let c = euler_eigenvalue(key, d as i64, weights);
            out.entry(c).or_insert_with(|| Cochain::zero(gamma.q())).add_component(key.clone(), &part);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::*;
    use crate::poly::ratio;

    fn l(i: u32) -> Poly {
        Poly::lam(i)
    }

    #[test]
    fn differential_of_n_dual() {
        let esv = extended_schrodinger_virasoro();
        let n = esv.index_of("N").unwrap();
        let gamma = Cochain::single(ComponentKey::from_tuple(&[n]), Poly::one());
        let d = differential(&gamma, &esv);
        let ln = ComponentKey::from_tuple(&[0, n]);
        assert_eq!(d.components().count(), 1);
        assert_eq!(d.get(&ln), Some(&l(2)));
    }

    #[test]
    fn differential_on_yyn() {
        let esv = extended_schrodinger_virasoro();
        let (n, y) = (1, 2);
        let s = scalar(5);
        let gamma = Cochain::from_tuples(3, [(&[y, y, n][..], (l(1) - l(2)).scale(&s))]);
        let d = differential(&gamma, &esv);
        let got = d.evaluate(&[0, y, y, n]);
        assert_eq!(got, ((l(2) - l(3)) * (l(2) + l(3) + l(4))).scale(&s));
    }

    #[test]
    fn tau_examples() {
        let vir = virasoro();
        let ll = Cochain::single(ComponentKey::from_tuple(&[0, 0]), l(1) - l(2));
        // the sign (-1)^{q-1} is -1 for q = 2
        assert_eq!(tau2(&ll, &vir).unwrap(), Cochain::single(ComponentKey::from_tuple(&[0]), -l(1)));
        assert!(tau(&Cochain::single(ComponentKey::empty(), Poly::one()), &vir).unwrap().is_zero());
        assert!(tau2(&Cochain::zero(2), &vir).unwrap().is_zero());
        let esv = extended_schrodinger_virasoro();
        let nl = Cochain::single(ComponentKey::from_tuple(&[0, 1]), l(1).pow(2).scale(&scalar(3)));
        assert!(tau2(&nl, &esv).unwrap().is_zero());
    }

    #[test]
    fn partial_mult_examples() {
        let c = Cochain::single(ComponentKey::empty(), Poly::int(3));
        assert!(partial_mult(&c, &Scalar::zero()).is_zero());
        assert_eq!(partial_mult(&c, &scalar(5)), c.scale(&scalar(5)));
    }

    #[test]
    fn eigenvalues() {
        let w = extended_schrodinger_virasoro().weights().unwrap();
        let k = |t: &[usize]| ComponentKey::from_tuple(t);
        assert_eq!(euler_eigenvalue(&k(&[0, 0, 0]), 3, &w), scalar(0));
        assert_eq!(euler_eigenvalue(&k(&[0, 2, 2]), 2, &w), scalar(0));
        assert_eq!(euler_eigenvalue(&k(&[0, 0]), 1, &w), scalar(-1));
        assert_eq!(euler_eigenvalue(&k(&[2]), 0, &w), ratio(-1, 2));
    }

    #[test]
    fn virasoro_zero_slots() {
        let slots = enumerate_zero_slots(&virasoro()).unwrap();
        let qs: Vec<usize> = slots.iter().map(|s| s.q()).collect();
        assert_eq!(qs, vec![0, 1, 2, 3]);
    }

    #[test]
    fn homotopy_on_virasoro_slots() {
        let vir = virasoro();
        let w = vir.weights().unwrap();
        for c in [scalar(-1), scalar(0), scalar(1), scalar(2)] {
            for slot in enumerate_slots(&w, &c) {
                for b in &slot.basis {
                    let g = Cochain::single(slot.key.clone(), b.clone());
                    let mut lhs = tau(&differential(&g, &vir), &vir).unwrap();
                    if g.q() > 0 {
                        lhs = lhs.add(&differential(&tau(&g, &vir).unwrap(), &vir));
                    }
                    assert_eq!(lhs, g.scale(&c), "slot {:?} degree {}", slot.key, slot.degree);
                }
            }
        }
    }

    #[test]
    fn bounded_slots_cover_all_keys() {
        let s = enumerate_bounded_slots(2, 2, 1);
        let keys: Vec<(Vec<usize>, u32)> = s.iter().map(|s| (s.key.tuple().to_vec(), s.degree)).collect();
        assert_eq!(
            keys,
            vec![(vec![0, 0], 1), (vec![0, 1], 0), (vec![0, 1], 1), (vec![1, 1], 1)]
        );
    }
}
