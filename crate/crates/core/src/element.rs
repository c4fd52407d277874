//! Formal elements over the monomial bases: finite linear combinations of
//! monomials with Gaussian-rational coefficients, tagged by the space whose
//! index set supports them. Monomials are orthonormal in both Hardy spaces,
//! so inner products are exact coefficient pairings.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::DomainError;
use crate::index::MonomialIndex;
use crate::scalar::{GaussianRational, Rat};

/// Which Hardy space an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    /// Index set `z_exp >= 0`, `z_exp + w_exp + 1 >= 0`.
    Hartogs,
    /// Index set `z_exp >= 0`, `w_exp >= 0`.
    Bidisc,
}

impl Space {
    pub fn contains(&self, idx: MonomialIndex) -> bool {
        match self {
            Space::Hartogs => idx.is_hartogs(),
            Space::Bidisc => idx.is_bidisc(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Space::Hartogs => "hartogs",
            Space::Bidisc => "bidisc",
        }
    }

    fn reject(&self, idx: MonomialIndex) -> DomainError {
        match self {
            Space::Hartogs => DomainError::NotHartogsIndex {
                z_exp: idx.z_exp,
                w_exp: idx.w_exp,
            },
            Space::Bidisc => DomainError::NotBidiscIndex {
                z_exp: idx.z_exp,
                w_exp: idx.w_exp,
            },
        }
    }
}

/// A finite formal combination of monomials. Zero coefficients are never
/// stored; terms iterate in the canonical (grading, z-exponent) order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HElement {
    space: Space,
    terms: BTreeMap<MonomialIndex, GaussianRational>,
}

impl HElement {
    pub fn zero(space: Space) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(
        space: Space,
        idx: MonomialIndex,
        coeff: GaussianRational,
    ) -> Result<Self, DomainError> {
        if !space.contains(idx) {
            return Err(space.reject(idx));
        }
        let mut e = Self::zero(space);
        if !coeff.is_zero() {
            e.terms.insert(idx, coeff);
        }
        Ok(e)
    }

    pub fn unit_monomial(space: Space, idx: MonomialIndex) -> Result<Self, DomainError> {
        Self::monomial(space, idx, GaussianRational::one())
    }

    pub fn from_terms<I>(space: Space, terms: I) -> Result<Self, DomainError>
    where
        I: IntoIterator<Item = (MonomialIndex, GaussianRational)>,
    {
        let mut e = Self::zero(space);
        for (idx, c) in terms {
            e.add_term(idx, c)?;
        }
        Ok(e)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: MonomialIndex) -> GaussianRational {
        self.terms.get(&idx).cloned().unwrap_or_default()
    }

    /// Accumulates `coeff` onto the term at `idx`, dropping the entry when it
    /// cancels to zero.
    pub fn add_term(&mut self, idx: MonomialIndex, coeff: GaussianRational) -> Result<(), DomainError> {
        if coeff.is_zero() {
            return Ok(());
        }
        if !self.space.contains(idx) {
            return Err(self.space.reject(idx));
        }
        let entry = self.terms.entry(idx).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DomainError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(*idx, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DomainError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(*idx, -c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scaled(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.space);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * s;
        }
        out
    }

    fn check_space(&self, other: &Self) -> Result<(), DomainError> {
        if self.space != other.space {
            return Err(DomainError::SpaceMismatch {
                left: self.space.name(),
                right: other.space.name(),
            });
        }
        Ok(())
    }

    /// `sum_a u_a * conj(v_a)`: the exact pairing of coefficients over the
    /// orthonormal monomial family. Conjugate-linear in the second argument.
    pub fn inner(&self, other: &Self) -> Result<GaussianRational, DomainError> {
        self.check_space(other)?;
        // iterate over the shorter support
        let (small, large, swap) = if self.terms.len() <= other.terms.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = GaussianRational::zero();
        for (idx, c) in small.terms() {
            if let Some(d) = large.terms.get(idx) {
                if swap {
                    acc += &(d * &c.conj());
                } else {
                    acc += &(c * &d.conj());
                }
            }
        }
        Ok(acc)
    }

    /// `<v, v>` as an exact rational; zero iff `v = 0`.
    pub fn norm_sqr(&self) -> Rat {
        let mut acc = Rat::zero();
        for c in self.terms.values() {
            acc += c.norm_sqr();
        }
        acc
    }

    /// Multiplies every term by `coeff * z^d.z_exp * w^d.w_exp`, rejecting the
    /// result if any shifted index leaves the tagged space.
    pub fn mul_monomial(
        &self,
        delta: MonomialIndex,
        coeff: &GaussianRational,
    ) -> Result<Self, DomainError> {
        let mut out = Self::zero(self.space);
        if coeff.is_zero() {
            return Ok(out);
        }
        for (idx, c) in self.terms() {
            out.add_term(idx.shifted(delta), c * coeff)?;
        }
        Ok(out)
    }

    /// Adjoint of multiplication by the monomial `delta` on the orthonormal
    /// family: keeps the coefficient at `alpha + delta` for every index
    /// `alpha` of the tagged space, drops the rest.
    pub fn monomial_adjoint_shift(&self, delta: MonomialIndex) -> Self {
        let mut out = Self::zero(self.space);
        for (idx, c) in self.terms() {
            let target = MonomialIndex::new(idx.z_exp - delta.z_exp, idx.w_exp - delta.w_exp);
            if self.space.contains(target) {
                out.terms.insert(target, c.clone());
            }
        }
        out
    }

    /// Splits the element by grading level; concatenating the parts
    /// reproduces the element exactly.
    pub fn level_parts(&self) -> BTreeMap<u32, HElement> {
        let mut parts: BTreeMap<u32, HElement> = BTreeMap::new();
        for (idx, c) in self.terms() {
            let level = idx.grading();
            debug_assert!(level >= 0, "grading negative on a tagged-space index");
            parts
                .entry(level as u32)
                .or_insert_with(|| HElement::zero(self.space))
                .terms
                .insert(*idx, c.clone());
        }
        parts
    }

    /// The part of the element supported on grading level `m`.
    pub fn level_part(&self, m: u32) -> HElement {
        let mut out = HElement::zero(self.space);
        for (idx, c) in self.terms() {
            if idx.grading() == m as i64 {
                out.terms.insert(*idx, c.clone());
            }
        }
        out
    }

    /// Largest grading level in the support, `None` for zero.
    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().map(|i| i.grading() as u32).max()
    }

    /// Retags a Hartogs element whose support happens to lie in the
    /// nonnegative quadrant (and conversely).
    pub fn retag(&self, space: Space) -> Result<Self, DomainError> {
        let mut out = Self::zero(space);
        for (idx, c) in self.terms() {
            out.add_term(*idx, c.clone())?;
        }
        Ok(out)
    }
}

/// Convenience pairing that panics on a space mismatch.
#[cfg(test)]
pub(crate) fn inner(u: &HElement, v: &HElement) -> GaussianRational {
    u.inner(v).expect("inner product across spaces")
}

/// A genuine polynomial in `z, w`: every exponent pair lies in the
/// nonnegative quadrant. Acts as a multiplier on both spaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplierPoly {
    terms: BTreeMap<MonomialIndex, GaussianRational>,
}

impl MultiplierPoly {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(MonomialIndex::new(0, 0), GaussianRational::one()).unwrap()
    }

    pub fn monomial(idx: MonomialIndex, coeff: GaussianRational) -> Result<Self, DomainError> {
        let mut p = Self::zero();
        p.add_term(idx, coeff)?;
        Ok(p)
    }

    pub fn from_terms<I>(terms: I) -> Result<Self, DomainError>
    where
        I: IntoIterator<Item = (MonomialIndex, GaussianRational)>,
    {
        let mut p = Self::zero();
        for (idx, c) in terms {
            p.add_term(idx, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, idx: MonomialIndex, coeff: GaussianRational) -> Result<(), DomainError> {
        if coeff.is_zero() {
            return Ok(());
        }
        if !idx.is_bidisc() {
            return Err(DomainError::NotPolynomialExponent {
                z_exp: idx.z_exp,
                w_exp: idx.w_exp,
            });
        }
        let entry = self.terms.entry(idx).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: MonomialIndex) -> GaussianRational {
        self.terms.get(&idx).cloned().unwrap_or_default()
    }

    /// The set of grading shifts `2q + n` over the terms `z^q * w^n`.
    /// Nonempty for nonzero polynomials.
    pub fn shift_set(&self) -> Vec<i64> {
        let mut shifts: Vec<i64> = self.terms.keys().map(|i| i.grading() - 1).collect();
        shifts.sort_unstable();
        shifts.dedup();
        shifts
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.terms.keys().map(|i| i.grading() - 1).min()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.terms.keys().map(|i| i.grading() - 1).max()
    }

    /// Formal convolution of exponents with `v`; total on both spaces since
    /// each index set is closed under adding nonnegative-quadrant exponents.
    pub fn multiply(&self, v: &HElement) -> HElement {
        let mut out = HElement::zero(v.space());
        for (pidx, pc) in self.terms() {
            for (vidx, vc) in v.terms() {
                out.add_term(vidx.shifted(*pidx), pc * vc)
                    .expect("index sets are closed under polynomial shifts");
            }
        }
        out
    }

    /// Views the polynomial as a bidisc element.
    pub fn as_element(&self, space: Space) -> HElement {
        HElement::from_terms(space, self.terms().map(|(i, c)| (*i, c.clone())))
            .expect("polynomial exponents are valid in both spaces")
    }

    /// The exponent pair of a single-term polynomial.
    pub fn single_monomial(&self) -> Result<(MonomialIndex, GaussianRational), DomainError> {
        if self.terms.len() != 1 {
            return Err(DomainError::NotMonomial {
                terms: self.terms.len(),
            });
        }
        let (idx, c) = self.terms.iter().next().unwrap();
        Ok((*idx, c.clone()))
    }
}

fn is_negative_for_display(c: &GaussianRational) -> bool {
    (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative())
}

fn format_term(idx: MonomialIndex, coeff: &GaussianRational) -> String {
    if idx == MonomialIndex::new(0, 0) {
        return coeff.to_string();
    }
    if coeff.re.is_one() && coeff.im.is_zero() {
        return idx.to_string();
    }
    format!("{coeff}*{idx}")
}

fn format_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a MonomialIndex, &'a GaussianRational)>,
{
    let mut out = String::new();
    for (n, (idx, coeff)) in terms.enumerate() {
        let (neg, shown) = if is_negative_for_display(coeff) {
            (true, -coeff)
        } else {
            (false, coeff.clone())
        };
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format_term(*idx, &shown));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for HElement {
    /// Canonical text form, `c1*z^a*w^b + ...` in (grading, z-exponent) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms()))
    }
}

impl fmt::Display for MultiplierPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn hart(idx: (i64, i64)) -> HElement {
        HElement::unit_monomial(Space::Hartogs, MonomialIndex::new(idx.0, idx.1)).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        // orthonormality of z*w with itself
        let zw = hart((1, 1));
        assert_eq!(inner(&zw, &zw), G::one());
        // distinct monomials are orthogonal
        let inv_w = hart((0, -1));
        let w = hart((0, 1));
        assert_eq!(inner(&inv_w, &w), G::zero());
        // coefficient extraction: <z + I*w, z> = 1
        let z = hart((1, 0));
        let v = z.add(&w.scaled(&G::i())).unwrap();
        assert_eq!(inner(&v, &z), G::one());
        // conjugate symmetry picks up the conjugate on the flip
        assert_eq!(inner(&z, &v), G::one());
        assert_eq!(inner(&v, &w), G::i());
        assert_eq!(inner(&w, &v), -G::i());
    }

    #[test]
    fn inner_rejects_space_mismatch() {
        let u = hart((0, -1));
        let v = HElement::unit_monomial(Space::Bidisc, MonomialIndex::new(0, 0)).unwrap();
        assert!(u.inner(&v).is_err());
    }

    #[test]
    fn multiply_examples() {
        // z * z^i w^{-i-1} -> z^{i+1} w^{-i-1}
        let p = MultiplierPoly::monomial(MonomialIndex::new(1, 0), G::one()).unwrap();
        for i in 0..6i64 {
            let e = hart((i, -i - 1));
            let shifted = p.multiply(&e);
            assert_eq!(shifted, hart((i + 1, -i - 1)));
        }
        // w * 1 = w
        let w = MultiplierPoly::monomial(MonomialIndex::new(0, 1), G::one()).unwrap();
        assert_eq!(w.multiply(&hart((0, 0))), hart((0, 1)));
        // (z + w^2) * (1/w) = z/w + w
        let p = MultiplierPoly::from_terms([
            (MonomialIndex::new(1, 0), G::one()),
            (MonomialIndex::new(0, 2), G::one()),
        ])
        .unwrap();
        let expected = hart((1, -1)).add(&hart((0, 1))).unwrap();
        assert_eq!(p.multiply(&hart((0, -1))), expected);
    }

    #[test]
    fn multiplier_rejects_negative_exponents() {
        assert!(MultiplierPoly::monomial(MonomialIndex::new(0, -1), G::one()).is_err());
    }

    #[test]
    fn shift_set_examples() {
        let p = MultiplierPoly::from_terms([
            (MonomialIndex::new(1, 0), G::one()),
            (MonomialIndex::new(0, 2), G::one()),
        ])
        .unwrap();
        assert_eq!(p.shift_set(), vec![2]);
        let q = MultiplierPoly::from_terms([
            (MonomialIndex::new(0, 1), G::one()),
            (MonomialIndex::new(0, 0), G::from_ratio(-1, 2)),
        ])
        .unwrap();
        assert_eq!(q.shift_set(), vec![0, 1]);
    }

    #[test]
    fn level_parts_examples() {
        // z + w^2 is concentrated at level 3
        let v = hart((1, 0)).add(&hart((0, 2))).unwrap();
        let parts = v.level_parts();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&3], v);
        // 1/w is level 0
        assert_eq!(hart((0, -1)).level_parts()[&0], hart((0, -1)));
        // z*w is level 4
        assert_eq!(hart((1, 1)).level_parts()[&4], hart((1, 1)));
        // concatenation reproduces the element
        let mixed = hart((0, -1))
            .add(&hart((1, 0)).scaled(&G::from_ratio(2, 3)))
            .unwrap()
            .add(&hart((2, -3)).scaled(&G::i()))
            .unwrap();
        let mut rebuilt = HElement::zero(Space::Hartogs);
        for part in mixed.level_parts().values() {
            rebuilt = rebuilt.add(part).unwrap();
        }
        assert_eq!(rebuilt, mixed);
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let a = hart((1, 0));
        let b = a.neg();
        let sum = a.add(&b).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.term_count(), 0);
    }

    #[test]
    fn norm_squared_sums_coefficient_moduli() {
        let v = hart((1, 0))
            .scaled(&G::from_ratio(3, 5))
            .add(&hart((0, 2)).scaled(&G::new(
                num::BigRational::new(4.into(), 5.into()),
                num::BigRational::new(1.into(), 5.into()),
            )))
            .unwrap();
        // (3/5)^2 + (4/5)^2 + (1/5)^2 = 26/25
        assert_eq!(v.norm_sqr(), num::BigRational::new(26.into(), 25.into()));
    }

    #[test]
    fn canonical_rendering() {
        // (grading, z-exponent) order puts w^2 (level 3) before z*w (4) before z^2 (5)
        let p = MultiplierPoly::from_terms([
            (MonomialIndex::new(2, 0), G::one()),
            (MonomialIndex::new(1, 1), G::from_integer(-2)),
            (MonomialIndex::new(0, 2), G::one()),
        ])
        .unwrap();
        assert_eq!(p.to_string(), "w^2 - 2*z*w + z^2");

        let v = hart((0, -1))
            .add(&hart((1, -2)).scaled(&G::from_ratio(-1, 2)))
            .unwrap()
            .add(&hart((0, 0)).scaled(&G::i()))
            .unwrap();
        // gradings: w^-1 is 0, the constant is 1 (z-exp 0), z*w^-2 is 1 (z-exp 1)
        assert_eq!(v.to_string(), "w^-1 + I - 1/2*z*w^-2");
        assert_eq!(HElement::zero(Space::Hartogs).to_string(), "0");
    }
}
