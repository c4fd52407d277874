//! The unitary identification of the Hartogs Hardy space with the bidisc
//! Hardy space. On monomials it is a pure exponent relabeling,
//! `(a, b) -> (a, a+b+1)`, which maps the Hartogs index set bijectively onto
//! the nonnegative quadrant and preserves the coefficient pairing exactly.
//! Under the map, multiplication by `z` on the Hartogs side corresponds to
//! multiplication by `z*w` on the bidisc side, and `w` to `w`.

use crate::element::{HElement, Space};
use crate::error::DomainError;
use crate::index::MonomialIndex;

/// Forward relabeling `(a, b) -> (a, a+b+1)`.
pub fn forward_index(idx: MonomialIndex) -> MonomialIndex {
    MonomialIndex::new(idx.z_exp, idx.z_exp + idx.w_exp + 1)
}

/// Inverse relabeling `(a, b) -> (a, b-a-1)`.
pub fn inverse_index(idx: MonomialIndex) -> MonomialIndex {
    MonomialIndex::new(idx.z_exp, idx.w_exp - idx.z_exp - 1)
}

/// Applies the unitary to a Hartogs element: coefficientwise exponent
/// relabeling. Preserves the squared norm exactly.
pub fn psi(v: &HElement) -> Result<HElement, DomainError> {
    if v.space() != Space::Hartogs {
        return Err(DomainError::SpaceMismatch {
            left: v.space().name(),
            right: Space::Hartogs.name(),
        });
    }
    HElement::from_terms(
        Space::Bidisc,
        v.terms().map(|(idx, c)| (forward_index(*idx), c.clone())),
    )
}

/// Applies the inverse unitary to a bidisc element.
pub fn psi_inverse(v: &HElement) -> Result<HElement, DomainError> {
    if v.space() != Space::Bidisc {
        return Err(DomainError::SpaceMismatch {
            left: v.space().name(),
            right: Space::Bidisc.name(),
        });
    }
    HElement::from_terms(
        Space::Hartogs,
        v.terms().map(|(idx, c)| (inverse_index(*idx), c.clone())),
    )
}

/// One checked identity of the intertwining report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningViolation {
    pub monomial: MonomialIndex,
    pub letter: char,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of checking both intertwining identities on every Hartogs
/// monomial of grading at most `level_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningReport {
    pub level_max: u32,
    pub monomials_checked: usize,
    pub identities_checked: usize,
    pub violations: Vec<IntertwiningViolation>,
}

impl IntertwiningReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every Hartogs monomial `e` with grading `<= level_max`, asserts
/// `psi(z*e) = z*w*psi(e)` and `psi(w*e) = w*psi(e)`.
pub fn verify_intertwining(level_max: u32) -> IntertwiningReport {
    let z = MonomialIndex::new(1, 0);
    let w = MonomialIndex::new(0, 1);
    let zw = MonomialIndex::new(1, 1);
    let one = crate::scalar::GaussianRational::one();

    let mut monomials_checked = 0;
    let mut identities_checked = 0;
    let mut violations = Vec::new();

    for m in 0..=level_max {
        for &idx in crate::index::level_basis(m).entries() {
            monomials_checked += 1;
            let e = HElement::unit_monomial(Space::Hartogs, idx).expect("level entry is valid");
            let psi_e = psi(&e).expect("hartogs element");

            let lhs_z = psi(&e.mul_monomial(z, &one).expect("closed under z")).unwrap();
            let rhs_z = psi_e.mul_monomial(zw, &one).expect("closed under z*w");
            identities_checked += 1;
            if lhs_z != rhs_z {
                violations.push(IntertwiningViolation {
                    monomial: idx,
                    letter: 'z',
                    lhs: lhs_z.to_string(),
                    rhs: rhs_z.to_string(),
                });
            }

            let lhs_w = psi(&e.mul_monomial(w, &one).expect("closed under w")).unwrap();
            let rhs_w = psi_e.mul_monomial(w, &one).expect("closed under w");
            identities_checked += 1;
            if lhs_w != rhs_w {
                violations.push(IntertwiningViolation {
                    monomial: idx,
                    letter: 'w',
                    lhs: lhs_w.to_string(),
                    rhs: rhs_w.to_string(),
                });
            }
        }
    }

    IntertwiningReport {
        level_max,
        monomials_checked,
        identities_checked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn hart(z: i64, w: i64) -> HElement {
        HElement::unit_monomial(Space::Hartogs, MonomialIndex::new(z, w)).unwrap()
    }

    fn bid(z: i64, w: i64) -> HElement {
        HElement::unit_monomial(Space::Bidisc, MonomialIndex::new(z, w)).unwrap()
    }

    #[test]
    fn psi_examples() {
        // 1/w -> 1
        assert_eq!(psi(&hart(0, -1)).unwrap(), bid(0, 0));
        // z^2 w^-3 -> z^2
        assert_eq!(psi(&hart(2, -3)).unwrap(), bid(2, 0));
        // 1 -> w
        assert_eq!(psi(&hart(0, 0)).unwrap(), bid(0, 1));
    }

    #[test]
    fn psi_inverse_examples() {
        assert_eq!(psi_inverse(&bid(0, 0)).unwrap(), hart(0, -1));
        assert_eq!(psi_inverse(&bid(2, 0)).unwrap(), hart(2, -3));
        // z*w -> z/w
        assert_eq!(psi_inverse(&bid(1, 1)).unwrap(), hart(1, -1));
    }

    #[test]
    fn inverse_composes_to_identity() {
        for m in 0..=12u32 {
            for &idx in crate::index::level_basis(m).entries() {
                assert_eq!(inverse_index(forward_index(idx)), idx);
                let e = hart(idx.z_exp, idx.w_exp);
                assert_eq!(psi_inverse(&psi(&e).unwrap()).unwrap(), e);
            }
        }
    }

    #[test]
    fn forward_is_bijection_onto_quadrant() {
        use std::collections::BTreeSet;
        let bound = 15u32;
        let mut images = BTreeSet::new();
        let mut count = 0usize;
        for m in 0..=bound {
            for &idx in crate::index::level_basis(m).entries() {
                let img = forward_index(idx);
                assert!(img.is_bidisc());
                images.insert((img.z_exp, img.w_exp));
                count += 1;
            }
        }
        assert_eq!(images.len(), count);
        // every quadrant point with a preimage of grading <= bound is hit
        for a in 0..=bound as i64 {
            for b in 0..=bound as i64 {
                let pre = inverse_index(MonomialIndex::new(a, b));
                if pre.is_hartogs() && pre.grading() <= bound as i64 {
                    assert!(images.contains(&(a, b)));
                }
            }
        }
    }

    #[test]
    fn psi_preserves_pairing() {
        let u = hart(1, -1)
            .scaled(&G::from_ratio(2, 3))
            .add(&hart(0, 2).scaled(&G::i()))
            .unwrap();
        let v = hart(1, -1).add(&hart(3, -4).scaled(&G::from_ratio(-5, 7))).unwrap();
        let lhs = u.inner(&v).unwrap();
        let rhs = psi(&u).unwrap().inner(&psi(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(u.norm_sqr(), psi(&u).unwrap().norm_sqr());
    }

    #[test]
    fn intertwining_identities_hold() {
        // level 0 checks e = 1/w: psi(z/w) = z*w agrees with z*w*psi(1/w)
        let rep = verify_intertwining(0);
        assert_eq!(rep.monomials_checked, 1);
        assert!(rep.passed());
        // levels 0..=1 check 3 monomials
        let rep = verify_intertwining(1);
        assert_eq!(rep.monomials_checked, 3);
        assert!(rep.passed());
        let rep = verify_intertwining(12);
        assert!(rep.passed());
        assert_eq!(rep.identities_checked, 2 * rep.monomials_checked);
    }

    #[test]
    fn submodule_shift_correspondence() {
        // adding (1,1)/(0,1) on the bidisc side matches (1,0)/(0,1) on the
        // Hartogs side under the inverse relabeling
        for a in 0..6i64 {
            for b in 0..6i64 {
                let idx = MonomialIndex::new(a, b);
                assert_eq!(
                    inverse_index(idx.shifted(MonomialIndex::new(1, 1))),
                    inverse_index(idx).shifted(MonomialIndex::new(1, 0))
                );
                assert_eq!(
                    inverse_index(idx.shifted(MonomialIndex::new(0, 1))),
                    inverse_index(idx).shifted(MonomialIndex::new(0, 1))
                );
            }
        }
    }
}
