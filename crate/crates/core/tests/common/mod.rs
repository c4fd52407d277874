//! Independent oracle used by the acceptance suite: the quotient slice
//! dimension computed from the full constraint matrix over every monomial
//! of grading at most the level, with its own elimination routine. Shares
//! only the scalar arithmetic with the implementation under test.

use hartogs_core::element::{HElement, MultiplierPoly, Space};
use hartogs_core::index::level_basis;
use hartogs_core::scalar::GaussianRational;

/// Row rank by plain forward elimination (first nonzero pivot, no
/// normalization order tricks); deliberately separate from the library's
/// reduced-echelon routine.
#[allow(clippy::needless_range_loop)]
pub fn rank(mut rows: Vec<Vec<GaussianRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv();
        for c in col..cols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..cols {
                let sub = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force slice dimension: one constraint row per monomial `g` with
/// `grading(g) <= m`, no shift filtering.
pub fn naive_quotient_dim(p: &MultiplierPoly, m: u32) -> usize {
    let entries = level_basis(m);
    let mut rows = Vec::new();
    for source in 0..=m {
        for &g in level_basis(source).entries() {
            let g_elem = HElement::unit_monomial(Space::Hartogs, g).unwrap();
            let product = p.multiply(&g_elem);
            let row: Vec<GaussianRational> = entries
                .entries()
                .iter()
                .map(|e| product.coeff(*e).conj())
                .collect();
            rows.push(row);
        }
    }
    entries.len() - rank(rows)
}
