//! The built-in algebras: Virasoro, Heisenberg-Virasoro, Schrödinger-Virasoro
//! and extended Schrödinger-Virasoro.

use super::{Algebra, GenCombo, Generator};
use crate::poly::{ratio, scalar, Poly, Scalar};

fn lin(d: Scalar, x: Scalar) -> Poly {
    Poly::del().scale(&d) + Poly::x().scale(&x)
}

fn one(k: usize, p: Poly) -> GenCombo {
    [(k, p)].into()
}

fn build(name: &str, gens: &[(&str, Scalar)], entries: Vec<((usize, usize), GenCombo)>) -> Algebra {
    let generators = gens.iter().map(|(n, w)| Generator::with_weight(*n, w.clone())).collect();
    Algebra::new(name, generators, entries, Some(0))
        .and_then(|a| a.complete_by_skew())
        .expect("built-in table is valid")
}

/// `Vir = C[∂]L`.
pub fn virasoro() -> Algebra {
    build("vir", &[("L", scalar(2))], vec![((0, 0), one(0, lin(scalar(1), scalar(2))))])
}

/// Generators L, N with `[L_λ N] = (∂+λ)N` and `[N_λ N] = 0`.
pub fn heisenberg_virasoro() -> Algebra {
    build(
        "hv",
        &[("L", scalar(2)), ("N", scalar(1))],
        vec![
            ((0, 0), one(0, lin(scalar(1), scalar(2)))),
            ((0, 1), one(1, lin(scalar(1), scalar(1)))),
        ],
    )
}

/// Generators L, Y, M.
pub fn schrodinger_virasoro() -> Algebra {
    let (l, y, m) = (0, 1, 2);
    build(
        "sv",
        &[("L", scalar(2)), ("Y", ratio(3, 2)), ("M", scalar(1))],
        vec![
            ((l, l), one(l, lin(scalar(1), scalar(2)))),
            ((l, y), one(y, lin(scalar(1), ratio(3, 2)))),
            ((y, l), one(y, lin(ratio(1, 2), ratio(3, 2)))),
            ((l, m), one(m, lin(scalar(1), scalar(1)))),
            ((m, l), one(m, Poly::x())),
            ((y, y), one(m, lin(scalar(1), scalar(2)))),
        ],
    )
}

/// Generators L, N, Y, M.
pub fn extended_schrodinger_virasoro() -> Algebra {
    let (l, n, y, m) = (0, 1, 2, 3);
    build(
        "esv",
        &[("L", scalar(2)), ("N", scalar(1)), ("Y", ratio(3, 2)), ("M", scalar(1))],
        vec![
            ((l, l), one(l, lin(scalar(1), scalar(2)))),
            ((l, y), one(y, lin(scalar(1), ratio(3, 2)))),
            ((y, l), one(y, lin(ratio(1, 2), ratio(3, 2)))),
            ((l, m), one(m, lin(scalar(1), scalar(1)))),
            ((m, l), one(m, Poly::x())),
            ((y, y), one(m, lin(scalar(1), scalar(2)))),
            ((l, n), one(n, lin(scalar(1), scalar(1)))),
            ((n, y), one(y, Poly::one())),
            ((n, m), one(m, Poly::int(2))),
        ],
    )
}

pub const NAMES: [&str; 4] = ["vir", "hv", "sv", "esv"];

pub fn by_name(name: &str) -> Option<Algebra> {
    match name {
        "vir" => Some(virasoro()),
        "hv" => Some(heisenberg_virasoro()),
        "sv" => Some(schrodinger_virasoro()),
        "esv" => Some(extended_schrodinger_virasoro()),
        _ => None,
    }
}

pub fn all() -> Vec<Algebra> {
    NAMES.iter().filter_map(|n| by_name(n)).collect()
}
