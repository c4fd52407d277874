//! The exponent lattice of the Hartogs Hardy space, its grading into levels,
//! and the canonical ordered basis of each level.
//!
//! A monomial `z^a * w^b` belongs to the Hartogs index set when `a >= 0` and
//! `a + b + 1 >= 0`; it belongs to the bidisc index set when `a, b >= 0`.
//! The grading assigns `z^a * w^b` the level `2a + b + 1`; the level-`m` set
//! has exactly `m + 1` monomials.

use std::cmp::Ordering;
use std::fmt;

use crate::error::DomainError;

/// Exponent pair of a monomial `z^z_exp * w^w_exp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIndex {
    pub z_exp: i64,
    pub w_exp: i64,
}

impl MonomialIndex {
    pub fn new(z_exp: i64, w_exp: i64) -> Self {
        Self { z_exp, w_exp }
    }

    /// Member of the Hartogs index set: `z_exp >= 0` and `z_exp + w_exp + 1 >= 0`.
    pub fn is_hartogs(&self) -> bool {
        self.z_exp >= 0 && self.z_exp + self.w_exp + 1 >= 0
    }

    /// Member of the nonnegative quadrant (bidisc index set).
    pub fn is_bidisc(&self) -> bool {
        self.z_exp >= 0 && self.w_exp >= 0
    }

    /// The grading `2*z_exp + w_exp + 1`, extended to every lattice point so
    /// multiplier shifts are computable without special cases. Nonnegative on
    /// the Hartogs index set.
    pub fn grading(&self) -> i64 {
        2 * self.z_exp + self.w_exp + 1
    }

    /// Grading of a Hartogs index, rejecting points outside the index set.
    pub fn hartogs_degree(&self) -> Result<u32, DomainError> {
        if !self.is_hartogs() {
            return Err(DomainError::NotHartogsIndex {
                z_exp: self.z_exp,
                w_exp: self.w_exp,
            });
        }
        Ok(self.grading() as u32)
    }

    /// Componentwise exponent sum.
    pub fn shifted(&self, by: MonomialIndex) -> MonomialIndex {
        MonomialIndex::new(self.z_exp + by.z_exp, self.w_exp + by.w_exp)
    }

    /// The level-`m` basis monomial with z-exponent `i`: `z^i * w^(m-2i-1)`,
    /// for `0 <= i <= m`.
    pub fn level_entry(m: u32, i: u32) -> Self {
        debug_assert!(i <= m);
        Self::new(i as i64, m as i64 - 2 * i as i64 - 1)
    }
}

/// Total order: lexicographic by (grading, z-exponent). Within one level the
/// w-exponent is determined, so this is a total order on the lattice.
impl Ord for MonomialIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.grading(), self.z_exp).cmp(&(other.grading(), other.z_exp))
    }
}

impl PartialOrd for MonomialIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.z_exp, self.w_exp) {
            (0, 0) => write!(f, "1"),
            (z, 0) => write!(f, "{}", fmt_var('z', z)),
            (0, w) => write!(f, "{}", fmt_var('w', w)),
            (z, w) => write!(f, "{}*{}", fmt_var('z', z), fmt_var('w', w)),
        }
    }
}

fn fmt_var(name: char, exp: i64) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

/// The canonical ordered basis of the level-`m` slice: the `m + 1` monomials
/// `(m-j, 2j-m-1)` for `j = 0..=m`, i.e. z-exponent descending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelBasis {
    level: u32,
    entries: Vec<MonomialIndex>,
}

impl LevelBasis {
    pub fn new(m: u32) -> Self {
        let entries = (0..=m)
            .map(|j| MonomialIndex::new(m as i64 - j as i64, 2 * j as i64 - m as i64 - 1))
            .collect();
        Self { level: m, entries }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[MonomialIndex] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of `idx` in the canonical ordering, when it lies in this level.
    pub fn position(&self, idx: MonomialIndex) -> Option<usize> {
        if idx.is_hartogs() && idx.grading() == self.level as i64 {
            Some((self.level as i64 - idx.z_exp) as usize)
        } else {
            None
        }
    }
}

/// Shorthand for the canonical level basis.
pub fn level_basis(m: u32) -> LevelBasis {
    LevelBasis::new(m)
}
