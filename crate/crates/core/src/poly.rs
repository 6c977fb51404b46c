//! Exact multivariate polynomials over the rationals.
//!
//! The variables are the formal derivation `∂` ([`Var::Del`]), the bracket-side
//! `λ` ([`Var::Lam`]`(0)`, rendered `x`) and the cochain variables `λ_i`
//! ([`Var::Lam`]`(i)` for `i >= 1`, rendered `xi`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Exact rational coefficient. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn scalar_to_i64(s: &Scalar) -> Option<i64> {
    if !s.is_integer() {
        return None;
    }
    i64::try_from(s.to_integer()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Del,
    /// `Lam(0)` is the bracket-side `λ`; `Lam(i)` with `i >= 1` is `λ_i`.
    Lam(u32),
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::Del => 0,
            Var::Lam(i) => i as usize + 1,
        }
    }

    fn from_slot(slot: usize) -> Var {
        if slot == 0 {
            Var::Del
        } else {
            Var::Lam((slot - 1) as u32)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Del => f.write_str("d"),
            Var::Lam(0) => f.write_str("x"),
            Var::Lam(i) => write!(f, "x{i}"),
        }
    }
}

/// Exponent vector indexed by `(∂, λ, λ_1, λ_2, ...)` with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::one();
        m.set(v, 1);
        m
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Var, u16)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in exps {
            let cur = m.exponent(v);
            m.set(v, cur + e);
        }
        m
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0.get(v.slot()).copied().unwrap_or(0)
    }

    fn set(&mut self, v: Var, e: u16) {
        let s = v.slot();
        if s >= self.0.len() {
            if e == 0 {
                return;
            }
            self.0.resize(s + 1, 0);
        }
        self.0[s] = e;
        self.trim();
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Nonzero exponents in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (Var::from_slot(s), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut out = SmallVec::with_capacity(n);
        for i in 0..n {
            out.push(self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0));
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if out[i] < e {
                return None;
            }
            out[i] -= e;
        }
        let mut m = Monomial(out);
        m.trim();
        Some(m)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order on `(∂, λ, λ_1, λ_2, ...)`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("substitution of {0} by a polynomial that contains {0}")]
    SelfReferentialSubstitution(Var),
    #[error("divisor must be nonzero")]
    ZeroDivisor,
    #[error("divisor has total degree {0}, expected at most 1")]
    NonAffineDivisor(i64),
}

/// Sparse polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(scalar(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Scalar::one(), Monomial::var(v))
    }

    pub fn del() -> Self {
        Poly::var(Var::Del)
    }

    /// The bracket-side `λ`.
    pub fn x() -> Self {
        Poly::var(Var::Lam(0))
    }

    /// The cochain variable `λ_i`.
    pub fn lam(i: u32) -> Self {
        Poly::var(Var::Lam(i))
    }

    /// `λ_1 + ... + λ_q`.
    pub fn lambda_sum(q: u32) -> Self {
        (1..=q).map(Poly::lam).fold(Poly::zero(), |acc, p| acc + p)
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Total degree; the zero polynomial has degree `-1`.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    pub fn homogeneous_component(&self, d: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() as i64 == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Largest `i` with `λ_i` present (0 if none).
    pub fn max_lambda_index(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.factors())
            .filter_map(|(v, _)| match v {
                Var::Lam(i) => Some(i),
                Var::Del => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Replaces every occurrence of `v` by `r`.
    pub fn substitute(&self, v: Var, r: &Poly) -> Result<Poly, PolyError> {
        if r.contains(v) {
            return Err(PolyError::SelfReferentialSubstitution(v));
        }
        Ok(self.substitute_many(&[(v, r.clone())]))
    }

    /// Simultaneous substitution: each listed variable is replaced by its image
    /// in one pass, so images may mention the replaced variables.
    pub fn substitute_many(&self, subs: &[(Var, Poly)]) -> Poly {
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one()]; subs.len()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = Poly::one();
            for (v, e) in m.factors() {
                match subs.iter().position(|(w, _)| *w == v) {
                    Some(k) => {
                        let cache = &mut powers[k];
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * &subs[k].1;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                    }
                    None => kept.set(v, e),
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc * c);
            }
        }
        out
    }

    /// Applies `λ_i -> λ_{sigma[i-1]}` for `i <= sigma.len()`; other variables are fixed.
    pub fn permute_lambdas(&self, sigma: &[u32]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mapped = Monomial::from_exponents(m.factors().map(|(v, e)| match v {
                Var::Lam(i) if i >= 1 && (i as usize) <= sigma.len() => {
                    (Var::Lam(sigma[i as usize - 1]), e)
                }
                other => (other, e),
            }));
            out.add_term(mapped, c.clone());
        }
        out
    }

    pub fn partial_derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.set(v, e - 1);
            out.add_term(dm, c * scalar(e as i64));
        }
        out
    }

    /// Exact quotient `p / f` for `f` of total degree at most one, or `None`
    /// when `f` does not divide `p`.
    pub fn divide_by_affine(&self, f: &Poly) -> Result<Option<Poly>, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let deg = f.total_degree();
        if deg > 1 {
            return Err(PolyError::NonAffineDivisor(deg));
        }
        let (lead_m, lead_c) = f.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = m.div(&lead_m) else {
                return Ok(None);
            };
            let qc = c / &lead_c;
            let step = Poly::term(qc.clone(), qm.clone());
            rem -= &(&step * f);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering, highest monomial first: `-x1^3 + x2^3`, `d + 2*x`, `1/2*d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(mut self, rhs: &Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: &Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Add<Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self + &rhs
    }
}

impl Sub<Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self - &rhs
    }
}

impl Mul<Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: u32) -> Poly {
        Poly::lam(i)
    }

    #[test]
    fn bracket_factor_under_differential_substitution() {
        // (∂ + 2λ) with ∂ -> -(λ1 + λ2), then λ -> λ1.
        let p = Poly::del() + Poly::x().scale(&scalar(2));
        let s = p.substitute(Var::Del, &-(l(1) + l(2))).unwrap();
        let s = s.substitute(Var::Lam(0), &l(1)).unwrap();
        assert_eq!(s, l(1) - l(2));
    }

    #[test]
    fn substitute_zero_and_expansion() {
        assert!(Poly::zero().substitute(Var::Del, &l(3)).unwrap().is_zero());
        let p = &(&l(1) * &l(1)) * &l(2);
        let s = p.substitute(Var::Lam(2), &(l(1) + l(3))).unwrap();
        assert_eq!(s, l(1).pow(3) + &l(1).pow(2) * &l(3));
    }

    #[test]
    fn substitute_rejects_self_reference() {
        let err = l(1).substitute(Var::Lam(1), &(l(1) + l(2))).unwrap_err();
        assert_eq!(err, PolyError::SelfReferentialSubstitution(Var::Lam(1)));
    }

    #[test]
    fn permutations() {
        assert_eq!((l(1) - l(2)).permute_lambdas(&[2, 1]), l(2) - l(1));
        let sym = &l(1) * &l(2);
        assert_eq!(sym.permute_lambdas(&[2, 1]), sym);
        // cycle 1 -> 2 -> 3 -> 1
        let p = &(l(1) - l(2)) * &l(3);
        assert_eq!(p.permute_lambdas(&[2, 3, 1]), &(l(2) - l(3)) * &l(1));
    }

    #[test]
    fn derivative_then_evaluate_at_zero() {
        let p = &(l(1) + l(2) + Poly::x()) * &(l(1) - l(2));
        let dp = p.partial_derivative(Var::Lam(0));
        let at0 = dp.substitute(Var::Lam(0), &Poly::zero()).unwrap();
        assert_eq!(at0, l(1) - l(2));
        assert!(Poly::int(7).partial_derivative(Var::Lam(0)).is_zero());
        let q = &Poly::x().pow(2) * &l(1);
        assert_eq!(q.partial_derivative(Var::Lam(0)), (&Poly::x() * &l(1)).scale(&scalar(2)));
    }

    #[test]
    fn affine_division() {
        let f = l(1) + l(2);
        let p = &f * &(l(1) - l(2));
        assert_eq!(p.divide_by_affine(&f).unwrap(), Some(l(1) - l(2)));
        assert_eq!(l(1).divide_by_affine(&f).unwrap(), None);
        let g = Poly::one() + l(1);
        let h = l(1).pow(2) - Poly::int(3);
        assert_eq!((&g * &h).divide_by_affine(&g).unwrap(), Some(h.clone()));
        assert_eq!(h.divide_by_affine(&Poly::zero()), Err(PolyError::ZeroDivisor));
        assert_eq!(
            h.divide_by_affine(&l(1).pow(2)),
            Err(PolyError::NonAffineDivisor(2))
        );
        assert_eq!(h.divide_by_affine(&Poly::int(2)).unwrap(), Some(h.scale(&ratio(1, 2))));
    }

    #[test]
    fn degrees() {
        assert_eq!((&(l(1) - l(2)) * &l(3)).total_degree(), 2);
        assert_eq!(Poly::zero().total_degree(), -1);
        assert_eq!((l(1) + l(1).pow(2)).homogeneous_component(1), l(1));
        let v = &(&(l(1) - l(2)) * &(l(1) - l(3))) * &(l(2) - l(3));
        assert_eq!(v.total_degree(), 3);
    }

    #[test]
    fn rendering() {
        let p = Poly::del() + Poly::x().scale(&scalar(2));
        assert_eq!(p.to_string(), "d + 2*x");
        let q = Poly::del().scale(&ratio(1, 2)) + Poly::x().scale(&ratio(3, 2));
        assert_eq!(q.to_string(), "1/2*d + 3/2*x");
        assert_eq!((l(2).pow(3) - l(1).pow(3)).to_string(), "-x1^3 + x2^3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::int(-5).to_string(), "-5");
        let r = -(&l(1).pow(2) * &l(3)) + l(2);
        assert_eq!(r.to_string(), "-x1^2*x3 + x2");
    }
}
