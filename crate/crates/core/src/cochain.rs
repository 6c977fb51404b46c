//! Cochains with trivial coefficients, stored on canonical (sorted) generator
//! tuples, and bases of block-antisymmetric polynomial spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Monomial, Poly, Scalar, Var};

/// A multiset of generators, kept as a non-decreasing tuple of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ComponentKey(Vec<usize>);

impl ComponentKey {
    pub fn empty() -> Self {
        ComponentKey(Vec::new())
    }

    pub fn from_tuple(tuple: &[usize]) -> Self {
        let mut v = tuple.to_vec();
        v.sort_unstable();
        ComponentKey(v)
    }

    /// `counts[g]` copies of generator `g`.
    pub fn from_counts(counts: &[usize]) -> Self {
        let mut v = Vec::new();
        for (g, &c) in counts.iter().enumerate() {
            v.extend(std::iter::repeat_n(g, c));
        }
        ComponentKey(v)
    }

    pub fn tuple(&self) -> &[usize] {
        &self.0
    }

    pub fn q(&self) -> usize {
        self.0.len()
    }

    pub fn multiplicity(&self, g: usize) -> usize {
        self.0.iter().filter(|&&h| h == g).count()
    }

    pub fn counts(&self, rank: usize) -> Vec<usize> {
        let mut c = vec![0; rank];
        for &g in &self.0 {
            c[g] += 1;
        }
        c
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.contains(&g)
    }

    /// `(generator, first position, length)` for each block of equal generators.
    pub fn blocks(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = Vec::new();
        for (i, &g) in self.0.iter().enumerate() {
            match out.last_mut() {
                Some(b) if b.0 == g => b.2 += 1,
                _ => out.push((g, i, 1)),
            }
        }
        out
    }

    pub fn vandermonde_degree(&self) -> u32 {
        self.blocks().iter().map(|&(_, _, m)| (m * (m - 1) / 2) as u32).sum()
    }

    pub fn without_one(&self, g: usize) -> Option<ComponentKey> {
        let pos = self.0.iter().position(|&h| h == g)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(ComponentKey(v))
    }

    pub fn with(&self, g: usize) -> ComponentKey {
        let mut v = self.0.clone();
        let pos = v.partition_point(|&h| h <= g);
        v.insert(pos, g);
        ComponentKey(v)
    }

    pub fn render(&self, names: &[impl AsRef<str>]) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&g| names[g].as_ref()).collect();
        format!("({})", parts.join(","))
    }
}

/// Stable sort permutation `σ` with `sorted[p] = tuple[σ[p]]`, and its sign.
pub fn sort_permutation(tuple: &[usize]) -> (Vec<usize>, i32) {
    let mut sigma: Vec<usize> = (0..tuple.len()).collect();
    sigma.sort_by_key(|&i| tuple[i]);
    (sigma.clone(), permutation_sign(&sigma))
}

pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Moves a value given on `tuple` (in `λ_1..λ_q`) to the canonical key.
pub fn canonicalize(tuple: &[usize], p: &Poly) -> (ComponentKey, Poly) {
    let (sigma, sign) = sort_permutation(tuple);
    let mut inverse = vec![0u32; sigma.len()];
    for (pos, &src) in sigma.iter().enumerate() {
        inverse[src] = pos as u32 + 1;
    }
    let v = p.permute_lambdas(&inverse);
    (ComponentKey::from_tuple(tuple), if sign < 0 { -v } else { v })
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CochainError {
    #[error("component {0} has degree {1} below its Vandermonde degree")]
    NotAntisymmetric(String, i64),
    #[error("value on {0} is not block-antisymmetric")]
    NotDivisible(String),
    #[error("value on {key} uses variable x{index} beyond q = {q}")]
    VariableOutOfRange { key: String, index: u32, q: usize },
    #[error("tuple length {got} does not match cochain degree {q}")]
    WrongLength { got: usize, q: usize },
}

/// A `q`-cochain: a block-antisymmetric polynomial in `λ_1..λ_q` per key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    q: usize,
    values: BTreeMap<ComponentKey, Poly>,
}

impl Cochain {
    pub fn zero(q: usize) -> Self {
        Cochain { q, values: BTreeMap::new() }
    }

    pub fn single(key: ComponentKey, p: Poly) -> Self {
        let mut c = Cochain::zero(key.q());
        c.add_component(key, &p);
        c
    }

    /// A cochain from values on arbitrary tuples (canonicalized and summed).
    pub fn from_tuples<'a>(q: usize, items: impl IntoIterator<Item = (&'a [usize], Poly)>) -> Self {
        let mut c = Cochain::zero(q);
        for (t, p) in items {
            assert_eq!(t.len(), q, "tuple length must equal q");
            let (k, v) = canonicalize(t, &p);
            c.add_component(k, &v);
        }
        c
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&ComponentKey, &Poly)> {
        self.values.iter()
    }

    pub fn get(&self, key: &ComponentKey) -> Option<&Poly> {
        self.values.get(key)
    }

    pub fn add_component(&mut self, key: ComponentKey, p: &Poly) {
        debug_assert_eq!(key.q(), self.q);
        if p.is_zero() {
            return;
        }
        let e = self.values.entry(key).or_default();
        *e += p;
        if e.is_zero() {
            self.values.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.q, other.q);
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.add_component(k.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        if c.is_zero() {
            return Cochain::zero(self.q);
        }
        Cochain { q: self.q, values: self.values.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect() }
    }

    /// Componentwise product with a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> Cochain {
        let mut out = Cochain::zero(self.q);
        for (k, v) in &self.values {
            out.add_component(k.clone(), &(v * p));
        }
        out
    }

    /// Componentwise `f` applied to each value.
    pub fn map_values(&self, f: impl Fn(&Poly) -> Poly) -> Cochain {
        let mut out = Cochain::zero(self.q);
        for (k, v) in &self.values {
            out.add_component(k.clone(), &f(v));
        }
        out
    }

    /// Value on an arbitrary ordered tuple, in the caller's variable order.
    pub fn evaluate(&self, tuple: &[usize]) -> Poly {
        assert_eq!(tuple.len(), self.q, "tuple length must equal q");
        let key = ComponentKey::from_tuple(tuple);
        let Some(v) = self.values.get(&key) else { return Poly::zero() };
        let (sigma, sign) = sort_permutation(tuple);
        let map: Vec<u32> = sigma.iter().map(|&s| s as u32 + 1).collect();
        let p = v.permute_lambdas(&map);
        if sign < 0 {
            -p
        } else {
            p
        }
    }

    /// Value on `tuple` with `λ_i` replaced by `args[i-1]`.
    pub fn evaluate_at(&self, tuple: &[usize], args: &[Poly]) -> Poly {
        assert_eq!(args.len(), tuple.len());
        let key = ComponentKey::from_tuple(tuple);
        let Some(v) = self.values.get(&key) else { return Poly::zero() };
        let (sigma, sign) = sort_permutation(tuple);
        let subs: Vec<(Var, Poly)> =
            sigma.iter().enumerate().map(|(p, &s)| (Var::Lam(p as u32 + 1), args[s].clone())).collect();
        let p = v.substitute_many(&subs);
        if sign < 0 {
            -p
        } else {
            p
        }
    }

    /// Checks variable range and block antisymmetry of every stored value.
    pub fn validate(&self) -> Result<(), CochainError> {
        for (k, v) in &self.values {
            let idx = v.max_lambda_index();
            if idx as usize > self.q || v.contains(Var::Del) || v.contains(Var::Lam(0)) {
                return Err(CochainError::VariableOutOfRange { key: format!("{:?}", k.0), index: idx, q: self.q });
            }
            for (_, start, len) in k.blocks() {
                for i in start..start + len - 1 {
                    let mut swap: Vec<u32> = (1..=self.q as u32).collect();
                    swap.swap(i, i + 1);
                    if v.permute_lambdas(&swap) != -v {
                        return Err(CochainError::NotDivisible(format!("{:?}", k.0)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Largest total degree among the values (-1 for the zero cochain).
    pub fn max_degree(&self) -> i64 {
        self.values.values().map(|v| v.total_degree()).max().unwrap_or(-1)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{:?}: {}", k.0, v)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// `Π_blocks Π_{i<j} (λ_i - λ_j)` over 1-based positions.
pub fn vandermonde(key: &ComponentKey) -> Poly {
    let mut v = Poly::one();
    for (_, start, len) in key.blocks() {
        for i in start..start + len {
            for j in i + 1..start + len {
                v = &v * &(Poly::lam(i as u32 + 1) - Poly::lam(j as u32 + 1));
            }
        }
    }
    v
}

// Exponent vectors of total degree `d`, non-increasing within each block.
fn block_sorted_exponents(key: &ComponentKey, d: u32) -> Vec<Vec<u32>> {
    fn rec(blocks: &[(usize, usize)], d: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&(_, len), rest)) = blocks.split_first() else {
            if d == 0 {
                out.push(acc.clone());
            }
            return;
        };
        // non-increasing vectors of length `len` with sum s, for every s <= d
        fn parts(len: usize, sum: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if len == 0 {
                if sum == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for e in (0..=max.min(sum)).rev() {
                if e * len as u32 >= sum {
                    cur.push(e);
                    parts(len - 1, sum - e, e, cur, out);
                    cur.pop();
                }
            }
        }
        for s in (0..=d).rev() {
            let mut ps = Vec::new();
            parts(len, s, s, &mut Vec::new(), &mut ps);
            for p in ps {
                let n = acc.len();
                acc.extend(&p);
                rec(rest, d - s, acc, out);
                acc.truncate(n);
            }
        }
    }
    let blocks: Vec<(usize, usize)> = key.blocks().iter().map(|&(g, _, l)| (g, l)).collect();
    let mut out = Vec::new();
    rec(&blocks, d, &mut Vec::new(), &mut out);
    out
}

fn exps_to_monomial(e: &[u32]) -> Monomial {
    Monomial::from_exponents(e.iter().enumerate().map(|(i, &x)| (Var::Lam(i as u32 + 1), x as u16)))
}

// Sum of the distinct monomials obtained by permuting exponents within blocks.
fn orbit_sum(key: &ComponentKey, e: &[u32]) -> Poly {
    let mut orbit: Vec<Vec<u32>> = vec![Vec::new()];
    for (_, start, len) in key.blocks() {
        let mut block: Vec<u32> = e[start..start + len].to_vec();
        block.sort_unstable();
        let mut perms = Vec::new();
        loop {
            perms.push(block.clone());
            if !next_permutation(&mut block) {
                break;
            }
        }
        orbit = orbit
            .into_iter()
            .flat_map(|pre| {
                perms.iter().map(move |p| {
                    let mut v = pre.clone();
                    v.extend(p);
                    v
                })
            })
            .collect();
    }
    let mut out = Poly::zero();
    for v in orbit {
        out += &Poly::term(Scalar::from_integer(1.into()), exps_to_monomial(&v));
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Representative monomials (block-sorted) of the residual symmetric basis, in
/// descending monomial order.
fn residual_representatives(key: &ComponentKey, d: u32) -> Vec<Monomial> {
    let vd = key.vandermonde_degree();
    if d < vd {
        return Vec::new();
    }
    let mut reps: Vec<Monomial> =
        block_sorted_exponents(key, d - vd).iter().map(|e| exps_to_monomial(e)).collect();
    reps.sort();
    reps.reverse();
    reps
}

/// Basis of homogeneous degree-`d` polynomials in `λ_1..λ_q` antisymmetric
/// within every block of `key`.
pub fn antisym_basis(key: &ComponentKey, d: u32) -> Vec<Poly> {
    let reps = residual_representatives(key, d);
    if reps.is_empty() {
        return Vec::new();
    }
    let v = vandermonde(key);
    reps.iter()
        .map(|m| {
            let e: Vec<u32> = (1..=key.q() as u32).map(|i| m.exponent(Var::Lam(i)) as u32).collect();
            &v * &orbit_sum(key, &e)
        })
        .collect()
}

/// Coordinates of a homogeneous degree-`d` block-antisymmetric polynomial in
/// the [`antisym_basis`] of `(key, d)`.
pub fn coordinates(key: &ComponentKey, d: u32, p: &Poly) -> Result<Vec<Scalar>, CochainError> {
    let reps = residual_representatives(key, d);
    let describe = || format!("{:?}", key.tuple());
    if p.is_zero() {
        return Ok(vec![Scalar::zero(); reps.len()]);
    }
    if reps.is_empty() {
        return Err(CochainError::NotAntisymmetric(describe(), p.total_degree()));
    }
    let mut s = p.clone();
    for (_, start, len) in key.blocks() {
        for i in start..start + len {
            for j in i + 1..start + len {
                let f = Poly::lam(i as u32 + 1) - Poly::lam(j as u32 + 1);
                s = match s.divide_by_affine(&f) {
                    Ok(Some(quot)) => quot,
                    _ => return Err(CochainError::NotDivisible(describe())),
                };
            }
        }
    }
    Ok(reps.iter().map(|m| s.coefficient(m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar;

    fn l(i: u32) -> Poly {
        Poly::lam(i)
    }

    #[test]
    fn canonicalize_examples() {
        let (l_, n) = (0, 1);
        let p = l(1) * l(1) + l(2).scale(&scalar(3));
        let (k, v) = canonicalize(&[n, l_], &p);
        assert_eq!(k.tuple(), &[l_, n]);
        assert_eq!(v, -(l(2) * l(2) + l(1).scale(&scalar(3))));
        assert_eq!(canonicalize(&[l_, n], &p).1, p);
        // generators 0 < 1 < 2: the tuple (1,0,2) is one transposition away
        let (a, b, c) = (0, 1, 2);
        let p3 = l(1) * l(2).pow(2) * l(3).pow(3);
        let (k, v) = canonicalize(&[b, a, c], &p3);
        assert_eq!(k.tuple(), &[a, b, c]);
        assert_eq!(v, -(l(2) * l(1).pow(2) * l(3).pow(3)));
        let stored = Cochain::single(k, v);
        assert_eq!(stored.evaluate(&[b, a, c]), p3);
    }

    #[test]
    fn vandermonde_degrees() {
        let k = |t: &[usize]| ComponentKey::from_tuple(t);
        assert_eq!(k(&[0, 0, 0]).vandermonde_degree(), 3);
        assert_eq!(k(&[0, 1, 2, 3]).vandermonde_degree(), 0);
        assert_eq!(k(&[2, 2, 3, 1]).vandermonde_degree(), 1);
    }

    #[test]
    fn basis_examples() {
        let ll = ComponentKey::from_tuple(&[0, 0]);
        assert_eq!(antisym_basis(&ll, 2), vec![(l(1) - l(2)) * (l(1) + l(2))]);
        assert!(antisym_basis(&ll, 0).is_empty());
        let lnn = ComponentKey::from_tuple(&[0, 1, 1]);
        assert_eq!(antisym_basis(&lnn, 1), vec![l(2) - l(3)]);
    }

    #[test]
    fn evaluate_examples() {
        let (lg, n) = (0, 1);
        let phi = Cochain::single(ComponentKey::from_tuple(&[lg, n, n]), l(2) - l(3));
        assert_eq!(phi.evaluate(&[lg, n, n]), l(2) - l(3));
        assert_eq!(phi.evaluate(&[n, lg, n]), -(l(1) - l(3)));
        assert!(phi.evaluate(&[n, n, n]).is_zero());
    }

    #[test]
    fn coordinates_recover_combinations() {
        let key = ComponentKey::from_tuple(&[0, 0, 1, 2, 2]);
        for d in 0..5 {
            let basis = antisym_basis(&key, d);
            let mut p = Poly::zero();
            for (i, b) in basis.iter().enumerate() {
                p += &b.scale(&scalar(i as i64 * 3 - 2));
            }
            let c = coordinates(&key, d, &p).unwrap();
            let want: Vec<Scalar> = (0..basis.len()).map(|i| scalar(i as i64 * 3 - 2)).collect();
            assert_eq!(c, want);
        }
        assert!(coordinates(&ComponentKey::from_tuple(&[0, 0]), 1, &l(1)).is_err());
    }
}
