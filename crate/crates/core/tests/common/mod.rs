// Shared fixtures and property checks for the integration tests.
#![allow(dead_code)]

use lcc_core::algebra::GenCombo;
use lcc_core::cochain::antisym_basis;
use lcc_core::cohomology::tau2_residual;
use lcc_core::complex::{differential, enumerate_bounded_slots, enumerate_slots, partial_mult, tau};
use lcc_core::poly::{ratio, scalar};
use lcc_core::textfmt::{parse_algebra, parse_algebra_bytes, render_algebra};
use lcc_core::{builtin, Algebra, Cochain, ComponentKey, Generator, Poly, Scalar};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn esv() -> Algebra {
    builtin::extended_schrodinger_virasoro()
}

/// Cochain with the given values on generator-name tuples, extended by skew-symmetry.
pub fn cochain(alg: &Algebra, items: &[(&[&str], Poly)]) -> Cochain {
    let q = items[0].0.len();
    let tuples: Vec<(Vec<usize>, Poly)> =
        items.iter().map(|(names, p)| (indices(alg, names), p.clone())).collect();
    Cochain::from_tuples(q, tuples.iter().map(|(t, p)| (&t[..], p.clone())))
}

/// Generator indices in the given order, repeats kept.
pub fn indices(alg: &Algebra, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| alg.index_of(n).expect("known generator")).collect()
}

pub fn l(i: u32) -> Poly {
    Poly::lam(i)
}

pub fn small_scalar(rng: &mut impl Rng) -> Scalar {
    ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_cochain(rng: &mut impl Rng, rank: usize, q: usize, bound: u32) -> Cochain {
    let slots = enumerate_bounded_slots(rank, q, bound);
    let mut out = Cochain::zero(q);
    for s in &slots {
        if !rng.gen_bool(0.5) {
            continue;
        }
        for b in &s.basis {
            if rng.gen_bool(0.6) {
                out.add_component(s.key.clone(), &b.scale(&small_scalar(rng)));
            }
        }
    }
    out
}

/// d² = 0 on random cochains of degree at most 3; returns the number checked.
pub fn check_d_squared(alg: &Algebra, count: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for i in 0..count {
        let q = r.gen_range(0..=3);
        let g = random_cochain(&mut r, alg.rank(), q, 3);
        let dd = differential(&differential(&g, alg), alg);
        if !dd.is_zero() {
            return Err(format!("{}: d² ≠ 0 on sample {i}: {g}", alg.name));
        }
    }
    Ok(count)
}

/// d(a+Σλ)γ = (a+Σλ)dγ on random cochains and random a.
pub fn check_d_partial(alg: &Algebra, count: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for i in 0..count {
        let q = r.gen_range(0..=3);
        let g = random_cochain(&mut r, alg.rank(), q, 3);
        let a = small_scalar(&mut r);
        if differential(&partial_mult(&g, &a), alg) != partial_mult(&differential(&g, alg), &a) {
            return Err(format!("{}: d∂ ≠ ∂d on sample {i}", alg.name));
        }
    }
    Ok(count)
}

/// (dτ+τd)γ = cγ on every basis cochain of every eigenvalue-c slot.
pub fn check_homotopy(alg: &Algebra, c: &Scalar) -> Result<usize, String> {
    let weights = alg.weights().map_err(|e| e.to_string())?;
    let mut n = 0;
    for slot in enumerate_slots(&weights, c) {
        for b in &slot.basis {
            let g = Cochain::single(slot.key.clone(), b.clone());
            let mut lhs = tau(&differential(&g, alg), alg).map_err(|e| e.to_string())?;
            if g.q() > 0 {
                lhs = lhs.add(&differential(&tau(&g, alg).map_err(|e| e.to_string())?, alg));
            }
            if lhs != g.scale(c) {
                return Err(format!("{}: homotopy identity fails on {:?} degree {}", alg.name, slot.key.tuple(), slot.degree));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// (dτ₂+τ₂d)γ = (Σλ)γ on random cochains.
pub fn check_tau2_identity(alg: &Algebra, count: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for i in 0..count {
        let q = r.gen_range(0..=3);
        let g = random_cochain(&mut r, alg.rank(), q, 3);
        let lhs = tau2_residual(&g, alg, &Scalar::zero()).map_err(|e| e.to_string())?;
        if lhs != partial_mult(&g, &Scalar::zero()) {
            return Err(format!("{}: τ₂ identity fails on sample {i}", alg.name));
        }
    }
    Ok(count)
}

pub fn check_axioms(alg: &Algebra) -> Result<(), String> {
    let s = alg.check_skew();
    let j = alg.check_jacobi();
    if s.passed() && j.passed() {
        Ok(())
    } else {
        Err(format!("{}: skew {:?} jacobi {:?}", alg.name, s.violations, j.violations))
    }
}

fn random_ident(rng: &mut impl Rng, taken: &[String]) -> String {
    loop {
        let len = rng.gen_range(1..=4);
        let mut s: String = (0..len).map(|_| (b'A' + rng.gen_range(0..26)) as char).collect();
        if rng.gen_bool(0.3) {
            s.push_str(&rng.gen_range(0..10).to_string());
        }
        if !taken.contains(&s) {
            return s;
        }
    }
}

fn random_bracket_poly(rng: &mut impl Rng) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = Poly::del().pow(rng.gen_range(0..=2)) * Poly::x().pow(rng.gen_range(0..=2));
        p = p + m.scale(&small_scalar(rng));
    }
    p
}

/// A random table that is valid input (skew-consistent, optionally with a
/// Virasoro generator and declared weights). Jacobi is not required.
pub fn random_table(rng: &mut impl Rng, index: usize) -> Algebra {
    let rank = rng.gen_range(1..=4);
    let mut names = Vec::new();
    for _ in 0..rank {
        let n = random_ident(rng, &names);
        names.push(n);
    }
    let with_vir = rng.gen_bool(0.5);
    let weights: Vec<Scalar> = (0..rank).map(|i| if with_vir && i == 0 { scalar(2) } else { ratio(rng.gen_range(0..=6), 2) }).collect();
    let gens: Vec<Generator> = names
        .iter()
        .zip(&weights)
        .map(|(n, w)| if with_vir { Generator::with_weight(n.clone(), w.clone()) } else { Generator::new(n.clone()) })
        .collect();
    let mut entries: Vec<((usize, usize), GenCombo)> = Vec::new();
    for i in 0..rank {
        for j in i..rank {
            let mut combo = GenCombo::new();
            if with_vir && i == 0 {
                // primary fields: [L_x g] = (d + Δx) g
                combo.insert(j, Poly::del() + Poly::x().scale(&weights[j]));
            } else {
                for k in 0..rank {
                    if rng.gen_bool(0.3) {
                        let p = if i == j {
                            let f = Poly::del().pow(rng.gen_range(0..=1)).scale(&small_scalar(rng));
                            f * (Poly::del() + Poly::x().scale(&scalar(2)))
                        } else {
                            random_bracket_poly(rng)
                        };
                        combo.insert(k, p);
                    }
                }
            }
            entries.push(((i, j), combo));
        }
    }
    Algebra::new(format!("t{index}"), gens, entries, with_vir.then_some(0))
        .and_then(|a| a.complete_by_skew())
        .expect("random tables are skew-consistent")
}

/// parse(render(A)) == A for random tables.
pub fn check_round_trip(count: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    for i in 0..count {
        let a = random_table(&mut r, i);
        let text = render_algebra(&a);
        let back = parse_algebra(&text).map_err(|d| format!("table {i} failed to parse: {d:?}\n{text}"))?;
        if back != a {
            return Err(format!("table {i} changed on round trip:\n{text}"));
        }
        if render_algebra(&back) != text {
            return Err(format!("table {i} renders differently the second time"));
        }
    }
    Ok(count)
}

/// Random byte strings and mutated valid documents never panic the parser;
/// every rejection carries at least one diagnostic.
pub fn check_fuzz(count: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    let seeds: Vec<Vec<u8>> = builtin::all().iter().map(|a| render_algebra(a).into_bytes()).collect();
    for i in 0..count {
        let bytes: Vec<u8> = if i % 2 == 0 {
            let len = r.gen_range(0..120);
            (0..len).map(|_| r.gen()).collect()
        } else {
            let mut b = seeds.choose(&mut r).unwrap().clone();
            for _ in 0..r.gen_range(1..6) {
                let pos = r.gen_range(0..=b.len());
                match r.gen_range(0..3) {
                    0 if pos < b.len() => {
                        b.remove(pos);
                    }
                    1 => b.insert(pos, *b"[]=+-*^()/,#\n dxLM0123456789".choose(&mut r).unwrap()),
                    _ if pos < b.len() => b[pos] = r.gen(),
                    _ => {}
                }
            }
            b
        };
        let outcome = std::panic::catch_unwind(|| parse_algebra_bytes(&bytes));
        match outcome {
            Err(_) => return Err(format!("parser panicked on input {i}: {:?}", String::from_utf8_lossy(&bytes))),
            Ok(Err(diags)) if diags.is_empty() => return Err(format!("input {i} rejected without diagnostics")),
            Ok(_) => {}
        }
    }
    Ok(count)
}

/// Dimension of antisymmetric homogeneous polynomials of degree `d` on `key`,
/// by antisymmetrizing every monomial over the block permutations.
pub fn brute_force_dim(key: &ComponentKey, d: u32) -> usize {
    let q = key.q();
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    compositions(q, d, &mut Vec::new(), &mut monomials);
    let perms = block_permutations(key);
    let mut images: Vec<Poly> = Vec::new();
    for exps in &monomials {
        let m = (0..q).fold(Poly::one(), |acc, i| acc * Poly::lam(i as u32 + 1).pow(exps[i]));
        let mut img = Poly::zero();
        for (sigma, sign) in &perms {
            let s: Vec<u32> = sigma.iter().map(|&j| j as u32 + 1).collect();
            img = img + m.permute_lambdas(&s).scale(&scalar(*sign));
        }
        images.push(img);
    }
    poly_rank(&images)
}

fn compositions(q: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == q {
        if d == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in 0..=d {
        cur.push(e);
        compositions(q, d - e, cur, out);
        cur.pop();
    }
}

fn block_permutations(key: &ComponentKey) -> Vec<(Vec<usize>, i64)> {
    let mut perms = vec![(Vec::new(), 1i64)];
    for (_, start, len) in key.blocks() {
        let mut next = Vec::new();
        for (p, s) in &perms {
            for (bp, bs) in all_permutations(len) {
                let mut v = p.clone();
                v.extend(bp.iter().map(|&x| x + start));
                next.push((v, s * bs));
            }
        }
        perms = next;
    }
    perms
}

fn all_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((v, sign));
        }
    }
    out
}

fn poly_rank(polys: &[Poly]) -> usize {
    use lcc_core::linalg::Matrix;
    let mut monos: Vec<_> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Scalar>> = polys.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    if monos.is_empty() {
        return 0;
    }
    Matrix::from_rows(monos.len(), &rows).rank()
}

pub fn check_basis_dims(max_q: usize, max_d: u32) -> Result<usize, String> {
    let mut n = 0;
    for q in 0..=max_q {
        for counts in count_vectors(3, q) {
            let key = ComponentKey::from_counts(&counts);
            for d in 0..=max_d {
                let fast = antisym_basis(&key, d).len();
                let slow = brute_force_dim(&key, d);
                if fast != slow {
                    return Err(format!("basis of {:?} degree {d}: {fast} vs oracle {slow}", key.tuple()));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

fn count_vectors(rank: usize, q: usize) -> Vec<Vec<usize>> {
    if rank == 1 {
        return vec![vec![q]];
    }
    (0..=q)
        .flat_map(|first| {
            count_vectors(rank - 1, q - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}
