//! Finite Lie conformal algebras presented by free generators and λ-bracket
//! structure constants.
//!
//! A bracket `[a_λ b]` is stored as a map from target generator to a coefficient
//! polynomial in `∂` ([`Var::Del`]) and the bracket-side `λ` ([`Var::Lam`]`(0)`).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{scalar, Poly, Scalar, Var};

pub mod builtin;

/// Linear combination of generators with polynomial coefficients.
pub type GenCombo = BTreeMap<usize, Poly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Conformal weight `Δ` with `[L_λ g] = (∂ + Δλ) g`.
    pub weight: Option<Scalar>,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator { name: name.into(), weight: None }
    }

    pub fn with_weight(name: impl Into<String>, weight: Scalar) -> Self {
        Generator { name: name.into(), weight: Some(weight) }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("bracket [{0}, {1}] references generator index {2} out of range")]
    InvalidTarget(usize, usize, usize),
    #[error("bracket coefficient for [{0}, {1}] uses variables other than d and x")]
    ForeignVariable(String, String),
    #[error("skew-symmetry violated on {}", format_pairs(.0))]
    SkewInconsistent(Vec<SkewViolation>),
    #[error("virasoro generator {0} does not satisfy [L_x L] = (d + 2*x) L")]
    NotVirasoro(String),
    #[error("no designated virasoro generator")]
    NoVirasoro,
    #[error("[L_x {0}] is not of the primary form (d + w*x) {0}")]
    PrimaryFormViolation(String),
    #[error("declared weight {declared} of {generator} disagrees with inferred weight {inferred}")]
    WeightMismatch { generator: String, declared: Box<Scalar>, inferred: Box<Scalar> },
    #[error("generators {0:?} do not span a subalgebra")]
    NotSubalgebra(Vec<String>),
    #[error("generators {0:?} do not span an ideal")]
    NotIdeal(Vec<String>),
    #[error("embedding is not compatible with brackets at [{0}, {1}]")]
    IncompatibleEmbedding(String, String),
    #[error("embedding is not injective")]
    NonInjectiveEmbedding,
}

fn format_pairs(v: &[SkewViolation]) -> String {
    v.iter().map(|s| format!("({}, {})", s.first, s.second)).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkewViolation {
    pub first: String,
    pub second: String,
    /// `[a_λ b] + [b_{-λ-∂} a]`, rendered per target generator.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiViolation {
    pub triple: [String; 3],
    /// Residual in `d`, `x1` (= λ) and `x2` (= μ), per target generator.
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SkewReport {
    pub pairs_checked: usize,
    pub violations: Vec<SkewViolation>,
}

impl SkewReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    generators: Vec<Generator>,
    brackets: BTreeMap<(usize, usize), GenCombo>,
    virasoro: Option<usize>,
}

static EMPTY: GenCombo = BTreeMap::new();

impl Algebra {
    /// Builds an algebra from raw bracket entries without skew completion.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        entries: impl IntoIterator<Item = ((usize, usize), GenCombo)>,
        virasoro: Option<usize>,
    ) -> Result<Self, AlgebraError> {
        let n = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut brackets = BTreeMap::new();
        for ((i, j), combo) in entries {
            for &k in [i, j].iter().chain(combo.keys()) {
                if k >= n {
                    return Err(AlgebraError::InvalidTarget(i, j, k));
                }
            }
            let combo: GenCombo = combo.into_iter().filter(|(_, p)| !p.is_zero()).collect();
            if combo.values().any(|p| p.max_lambda_index() > 0) {
                return Err(AlgebraError::ForeignVariable(
                    generators[i].name.clone(),
                    generators[j].name.clone(),
                ));
            }
            if !combo.is_empty() {
                brackets.insert((i, j), combo);
            }
        }
        if let Some(l) = virasoro {
            if l >= n {
                return Err(AlgebraError::InvalidTarget(l, l, l));
            }
        }
        let alg = Algebra { name: name.into(), generators, brackets, virasoro };
        if let Some(l) = virasoro {
            let expected: GenCombo = [(l, Poly::del() + Poly::x().scale(&scalar(2)))].into();
            if alg.bracket(l, l) != &expected {
                return Err(AlgebraError::NotVirasoro(alg.generators[l].name.clone()));
            }
        }
        Ok(alg)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Resolves a list of generator names to sorted, deduplicated indices.
    pub fn indices_of(&self, names: &[impl AsRef<str>]) -> Result<Vec<usize>, AlgebraError> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            out.push(self.index_of(n).ok_or_else(|| AlgebraError::UnknownGenerator(n.to_string()))?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn virasoro(&self) -> Option<usize> {
        self.virasoro
    }

    /// `[g_i λ g_j]`; missing entries are zero.
    pub fn bracket(&self, i: usize, j: usize) -> &GenCombo {
        self.brackets.get(&(i, j)).unwrap_or(&EMPTY)
    }

    /// All stored (nonzero) entries in canonical pair order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &GenCombo)> {
        self.brackets.iter()
    }

    /// `[g_i μ g_j]` with the bracket variable replaced by `mu`.
    fn bracket_at(&self, i: usize, j: usize, mu: &Poly) -> GenCombo {
        self.bracket(i, j)
            .iter()
            .map(|(&k, p)| (k, p.substitute_many(&[(Var::Lam(0), mu.clone())])))
            .collect()
    }

    /// The transposed entry obtained from skew-symmetry: `-[g_i_{-λ-∂} g_j]`.
    fn skew_transpose(&self, i: usize, j: usize) -> GenCombo {
        let image = -(Poly::x() + Poly::del());
        self.bracket(i, j)
            .iter()
            .map(|(&k, p)| (k, -p.substitute_many(&[(Var::Lam(0), image.clone())])))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    pub fn render_combo(&self, combo: &GenCombo) -> String {
        if combo.is_empty() {
            return "0".to_string();
        }
        combo
            .iter()
            .map(|(&k, p)| format!("({}) {}", p, self.generators[k].name))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Fills every missing transposed entry from skew-symmetry. Pairs given in
    /// both directions are cross-checked.
    pub fn complete_by_skew(&self) -> Result<Algebra, AlgebraError> {
        let report = self.check_skew_present();
        if !report.is_empty() {
            return Err(AlgebraError::SkewInconsistent(report));
        }
        let mut out = self.clone();
        for &(i, j) in self.brackets.keys() {
            if !self.brackets.contains_key(&(j, i)) {
                let t = self.skew_transpose(i, j);
                if !t.is_empty() {
                    out.brackets.insert((j, i), t);
                }
            }
        }
        Ok(out)
    }

    fn skew_residual(&self, i: usize, j: usize) -> GenCombo {
        let mut res = self.bracket(i, j).clone();
        for (k, p) in self.skew_transpose(j, i) {
            let e = res.entry(k).or_default();
            *e -= &p;
        }
        res.retain(|_, p| !p.is_zero());
        res
    }

    fn violation(&self, i: usize, j: usize, residual: &GenCombo) -> SkewViolation {
        SkewViolation {
            first: self.generators[i].name.clone(),
            second: self.generators[j].name.clone(),
            residual: self.render_combo(residual),
        }
    }

    // Violations among pairs where both directions (or the diagonal) are present.
    fn check_skew_present(&self) -> Vec<SkewViolation> {
        let mut out = Vec::new();
        for &(i, j) in self.brackets.keys() {
            if i <= j && (i == j || self.brackets.contains_key(&(j, i))) {
                let r = self.skew_residual(i, j);
                if !r.is_empty() {
                    out.push(self.violation(i, j, &r));
                }
            }
        }
        out
    }

    /// Checks `[a_λ b] = -[b_{-λ-∂} a]` on every unordered pair.
    pub fn check_skew(&self) -> SkewReport {
        let n = self.rank();
        let mut report = SkewReport::default();
        for i in 0..n {
            for j in i..n {
                report.pairs_checked += 1;
                let r = self.skew_residual(i, j);
                if !r.is_empty() {
                    report.violations.push(self.violation(i, j, &r));
                }
            }
        }
        report
    }

    /// Expands `[a_λ[b_μ c]] - [[a_λ b]_{λ+μ} c] - [b_μ[a_λ c]]` for every
    /// ordered triple, with `λ = x1` and `μ = x2`.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.rank();
        let lam = Poly::lam(1);
        let mu = Poly::lam(2);
        let nu = &lam + &mu;
        let del = Poly::del();
        let mut report = JacobiReport::default();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    report.triples_checked += 1;
                    let mut res: GenCombo = BTreeMap::new();
                    let mut add = |k: usize, p: Poly| {
                        let e = res.entry(k).or_default();
                        *e += &p;
                    };
                    // [a_λ [b_μ c]]: [a_λ Q(∂,μ) g] = Q(∂+λ, μ) [a_λ g]
                    for (g, q) in self.bracket_at(b, c, &mu) {
                        let q = q.substitute_many(&[(Var::Del, &del + &lam)]);
                        for (h, r) in self.bracket_at(a, g, &lam) {
                            add(h, &q * &r);
                        }
                    }
                    // [[a_λ b]_ν c]: [P(∂,λ) g _ν c] = P(-ν, λ) [g_ν c]
                    for (g, p) in self.bracket_at(a, b, &lam) {
                        let p = p.substitute_many(&[(Var::Del, -&nu)]);
                        for (h, r) in self.bracket_at(g, c, &nu) {
                            add(h, -(&p * &r));
                        }
                    }
                    // [b_μ [a_λ c]]: [b_μ P(∂,λ) g] = P(∂+μ, λ) [b_μ g]
                    for (g, p) in self.bracket_at(a, c, &lam) {
                        let p = p.substitute_many(&[(Var::Del, &del + &mu)]);
                        for (h, r) in self.bracket_at(b, g, &mu) {
                            add(h, -(&p * &r));
                        }
                    }
                    res.retain(|_, p| !p.is_zero());
                    if !res.is_empty() {
                        report.violations.push(JacobiViolation {
                            triple: [a, b, c].map(|k| self.generators[k].name.clone()),
                            residual: self.render_combo(&res),
                        });
                    }
                }
            }
        }
        report
    }

    /// Reads off `Δ_g` from `[L_λ g] = (∂ + Δ_g λ) g` for every generator `g`.
    pub fn infer_weights(&self, l: usize) -> Result<Vec<Scalar>, AlgebraError> {
        let del = crate::poly::Monomial::var(Var::Del);
        let x = crate::poly::Monomial::var(Var::Lam(0));
        let mut out = Vec::with_capacity(self.rank());
        for g in 0..self.rank() {
            let entry = self.bracket(l, g);
            let violation = || AlgebraError::PrimaryFormViolation(self.generators[g].name.clone());
            if entry.len() != 1 {
                return Err(violation());
            }
            let p = entry.get(&g).ok_or_else(violation)?;
            let delta = p.coefficient(&x);
            let expected = Poly::del() + Poly::x().scale(&delta);
            if !p.coefficient(&del).is_one() || p != &expected {
                return Err(violation());
            }
            out.push(delta);
        }
        if out[l] != scalar(2) {
            return Err(AlgebraError::NotVirasoro(self.generators[l].name.clone()));
        }
        Ok(out)
    }

    /// Weights relative to the designated Virasoro generator, cross-checked
    /// against any declared weights.
    pub fn weights(&self) -> Result<Vec<Scalar>, AlgebraError> {
        let l = self.virasoro.ok_or(AlgebraError::NoVirasoro)?;
        let w = self.infer_weights(l)?;
        for (g, inferred) in self.generators.iter().zip(&w) {
            if let Some(declared) = &g.weight {
                if declared != inferred {
                    return Err(AlgebraError::WeightMismatch {
                        generator: g.name.clone(),
                        declared: Box::new(declared.clone()),
                        inferred: Box::new(inferred.clone()),
                    });
                }
            }
        }
        Ok(w)
    }

    fn lands_in(&self, combo: &GenCombo, set: &[usize]) -> bool {
        combo.keys().all(|k| set.contains(k))
    }

    pub fn is_subalgebra(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&i| set.iter().all(|&j| self.lands_in(self.bracket(i, j), set)))
    }

    pub fn is_ideal(&self, set: &[usize]) -> bool {
        set.iter().all(|&i| {
            (0..self.rank()).all(|j| {
                self.lands_in(self.bracket(i, j), set) && self.lands_in(self.bracket(j, i), set)
            })
        })
    }

    fn names(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.generators[i].name.clone()).collect()
    }

    pub fn require_subalgebra(&self, set: &[usize]) -> Result<(), AlgebraError> {
        if self.is_subalgebra(set) {
            Ok(())
        } else {
            Err(AlgebraError::NotSubalgebra(self.names(set)))
        }
    }

    /// The quotient by the ideal spanned by `set`: drops those generators and
    /// every bracket term landing in them.
    pub fn quotient(&self, set: &[usize]) -> Result<Algebra, AlgebraError> {
        if !self.is_ideal(set) {
            return Err(AlgebraError::NotIdeal(self.names(set)));
        }
        let keep: Vec<usize> = (0..self.rank()).filter(|i| !set.contains(i)).collect();
        let new_index = |old: usize| keep.iter().position(|&k| k == old);
        let generators = keep.iter().map(|&i| self.generators[i].clone()).collect();
        let mut entries = Vec::new();
        for (&(i, j), combo) in &self.brackets {
            let (Some(ni), Some(nj)) = (new_index(i), new_index(j)) else { continue };
            let c: GenCombo = combo
                .iter()
                .filter_map(|(&k, p)| new_index(k).map(|nk| (nk, p.clone())))
                .collect();
            entries.push(((ni, nj), c));
        }
        let virasoro = self.virasoro.and_then(new_index);
        let name = format!("{}/<{}>", self.name, self.names(set).join(","));
        Algebra::new(name, generators, entries, virasoro)
    }

    /// Restriction to the subalgebra spanned by `set`, keeping generator order.
    pub fn subalgebra(&self, set: &[usize]) -> Result<Algebra, AlgebraError> {
        self.require_subalgebra(set)?;
        let new_index = |old: usize| set.iter().position(|&k| k == old);
        let generators = set.iter().map(|&i| self.generators[i].clone()).collect();
        let mut entries = Vec::new();
        for (&(i, j), combo) in &self.brackets {
            let (Some(ni), Some(nj)) = (new_index(i), new_index(j)) else { continue };
            let c = combo.iter().map(|(&k, p)| (new_index(k).unwrap(), p.clone())).collect();
            entries.push(((ni, nj), c));
        }
        let virasoro = self.virasoro.and_then(new_index);
        let name = format!("<{}>", self.names(set).join(","));
        Algebra::new(name, generators, entries, virasoro)
    }
}

/// Injective, bracket-compatible map from the generators of `source` into
/// those of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(source: &Algebra, target: &Algebra, map: Vec<usize>) -> Result<Self, AlgebraError> {
        if map.len() != source.rank() || map.iter().any(|&t| t >= target.rank()) {
            return Err(AlgebraError::NonInjectiveEmbedding);
        }
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != map.len() {
            return Err(AlgebraError::NonInjectiveEmbedding);
        }
        for i in 0..source.rank() {
            for j in 0..source.rank() {
                let image: GenCombo =
                    source.bracket(i, j).iter().map(|(&k, p)| (map[k], p.clone())).collect();
                if &image != target.bracket(map[i], map[j]) {
                    return Err(AlgebraError::IncompatibleEmbedding(
                        source.generators[i].name.clone(),
                        source.generators[j].name.clone(),
                    ));
                }
            }
        }
        Ok(Embedding { map })
    }

    /// Matches generators by name.
    pub fn by_name(source: &Algebra, target: &Algebra) -> Result<Self, AlgebraError> {
        let map = source
            .generators
            .iter()
            .map(|g| target.index_of(&g.name).ok_or_else(|| AlgebraError::UnknownGenerator(g.name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Embedding::new(source, target, map)
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textfmt::render_algebra(self))
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;
    use crate::poly::ratio;

    fn combo(k: usize, p: Poly) -> GenCombo {
        [(k, p)].into()
    }

    #[test]
    fn skew_completion_derives_transposes() {
        let esv = extended_schrodinger_virasoro();
        let (l, n, m) = (0, 1, 3);
        assert_eq!(esv.bracket(m, l), &combo(m, Poly::x()));
        assert_eq!(esv.bracket(n, l), &combo(n, Poly::x()));
        // [Y_λ Y] is a fixed point of the skew map
        let y = 2;
        let yy = Algebra::new("t", esv.generators().to_vec(), [((y, y), esv.bracket(y, y).clone())], None)
            .unwrap();
        assert_eq!(yy.complete_by_skew().unwrap().bracket(y, y), esv.bracket(y, y));
    }

    #[test]
    fn completion_is_idempotent() {
        for a in all() {
            assert_eq!(a.complete_by_skew().unwrap(), a);
        }
    }

    #[test]
    fn skew_counterexample_names_pair() {
        let gens = vec![Generator::new("A"), Generator::new("B")];
        let a = Algebra::new(
            "bad",
            gens,
            [((0, 1), combo(1, Poly::one())), ((1, 0), combo(1, Poly::one()))],
            None,
        )
        .unwrap();
        let r = a.check_skew();
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].first.as_str(), r.violations[0].second.as_str()), ("A", "B"));
        assert_eq!(r.violations[0].residual, "(2) B");
        assert!(matches!(a.complete_by_skew(), Err(AlgebraError::SkewInconsistent(_))));
    }

    #[test]
    fn builtins_pass_axioms() {
        for a in all() {
            assert!(a.check_skew().passed(), "{}", a.name);
            let j = a.check_jacobi();
            assert!(j.passed(), "{}: {:?}", a.name, j.violations);
            assert_eq!(j.triples_checked, a.rank().pow(3));
        }
    }

    #[test]
    fn perturbed_jacobi_fails_on_lyy() {
        let esv = extended_schrodinger_virasoro();
        let (y, m) = (2, 3);
        let entries = esv.entries().map(|(&k, c)| {
            if k == (y, y) {
                (k, combo(m, Poly::del() + Poly::x().scale(&scalar(3))))
            } else {
                (k, c.clone())
            }
        });
        let bad = Algebra::new("bad", esv.generators().to_vec(), entries.collect::<Vec<_>>(), Some(0))
            .unwrap();
        let r = bad.check_jacobi();
        assert!(r.violations.iter().any(|v| v.triple == ["L", "Y", "Y"].map(String::from)));
    }

    #[test]
    fn weights_of_builtins() {
        let esv = extended_schrodinger_virasoro();
        let w = esv.weights().unwrap();
        let by = |n: &str| w[esv.index_of(n).unwrap()].clone();
        assert_eq!(
            [by("L"), by("N"), by("Y"), by("M")],
            [scalar(2), scalar(1), ratio(3, 2), scalar(1)]
        );
        assert_eq!(virasoro().weights().unwrap(), vec![scalar(2)]);
    }

    #[test]
    fn primary_form_violation() {
        let gens = vec![Generator::new("L"), Generator::new("g")];
        let a = Algebra::new(
            "t",
            gens,
            [
                ((0, 0), combo(0, Poly::del() + Poly::x().scale(&scalar(2)))),
                ((0, 1), combo(1, Poly::del().scale(&scalar(2)) + Poly::x())),
            ],
            Some(0),
        )
        .unwrap();
        assert_eq!(a.infer_weights(0), Err(AlgebraError::PrimaryFormViolation("g".into())));
    }

    #[test]
    fn subalgebras_ideals_quotients() {
        let esv = extended_schrodinger_virasoro();
        let ym = esv.indices_of(&["Y", "M"]).unwrap();
        assert!(esv.is_ideal(&ym));
        let q = esv.quotient(&ym).unwrap();
        let hv = heisenberg_virasoro();
        assert_eq!(q.generators().iter().map(|g| &g.name).collect::<Vec<_>>(), ["L", "N"]);
        assert_eq!(q.entries().collect::<Vec<_>>(), hv.entries().collect::<Vec<_>>());
        assert!(esv.is_subalgebra(&[0]));
        assert!(!esv.is_ideal(&[0]));
        assert!(matches!(esv.quotient(&[0]), Err(AlgebraError::NotIdeal(_))));
        for set in [vec!["Y", "M"], vec!["M"], vec!["N", "Y", "M"]] {
            let idx = esv.indices_of(&set).unwrap();
            let q = esv.quotient(&idx).unwrap();
            assert!(q.check_skew().passed() && q.check_jacobi().passed());
            let w = q.weights().unwrap();
            let full = esv.weights().unwrap();
            for (g, wg) in q.generators().iter().zip(w) {
                assert_eq!(full[esv.index_of(&g.name).unwrap()], wg);
            }
        }
    }

    #[test]
    fn euler_budget_matches_k_plus_half_l() {
        let esv = extended_schrodinger_virasoro();
        let w = esv.weights().unwrap();
        let idx = |n: &str| esv.index_of(n).unwrap();
        for (k, l, m, n) in [(1, 2, 0, 0), (3, 2, 1, 1), (0, 0, 1, 1)] {
            let budget = w[idx("L")].clone() * scalar(k) - scalar(k)
                + (w[idx("Y")].clone() - scalar(1)) * scalar(l)
                + (w[idx("M")].clone() - scalar(1)) * scalar(m)
                + (w[idx("N")].clone() - scalar(1)) * scalar(n);
            assert_eq!(budget, scalar(k) + ratio(l, 2));
        }
    }

    #[test]
    fn embedding_checks() {
        let esv = extended_schrodinger_virasoro();
        let hv = heisenberg_virasoro();
        let e = Embedding::by_name(&hv, &esv).unwrap();
        assert_eq!(e.image(1), esv.index_of("N").unwrap());
        // L -> L, N -> M is not bracket compatible ([N_λ N] = 0 but [M_λ M] = 0 too; [L_λ N] maps fine)
        let sv = schrodinger_virasoro();
        assert!(Embedding::by_name(&sv, &hv).is_err());
        assert_eq!(
            Embedding::new(&hv, &esv, vec![0, 0]),
            Err(AlgebraError::NonInjectiveEmbedding)
        );
        // L -> L, N -> Y is incompatible: [L_λ Y] = (∂ + 3/2 λ) Y
        assert!(matches!(
            Embedding::new(&hv, &esv, vec![0, 2]),
            Err(AlgebraError::IncompatibleEmbedding(_, _))
        ));
    }
}
