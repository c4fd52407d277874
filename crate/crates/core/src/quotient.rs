//! Exact slice computations for quotient modules generated by a polynomial:
//! per-level kernel bases, closed-form dimension predictions, finite
//! submodule slices, and gradedness certificates.
//!
//! The level-`m` slice of the quotient is `{f in F_m : <f, p*g> = 0 for all
//! monomials g}`. Only monomials `g` whose grading lies in `m - shift_set(p)`
//! can contribute a constraint, so the constraint matrix stays small; its
//! kernel is computed by exact row reduction.

use crate::element::{HElement, MultiplierPoly, Space};
use crate::error::EngineError;
use crate::index::{level_basis, MonomialIndex};
use crate::linalg::Mat;
use crate::par::map_levels;
use crate::scalar::GaussianRational;
use std::collections::BTreeMap;

/// An ordered list of elements spanning a finite-dimensional subspace,
/// together with its exact Gram matrix.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    elements: Vec<HElement>,
    gram: Mat,
}

impl SubspaceBasis {
    pub fn from_elements(elements: Vec<HElement>) -> Self {
        let n = elements.len();
        let mut gram = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *gram.at_mut(i, j) = elements[i]
                    .inner(&elements[j])
                    .expect("basis elements share a space");
            }
        }
        Self { elements, gram }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[HElement] {
        &self.elements
    }

    /// `gram[i][j] = <f_i, f_j>`; conjugate-symmetric and nonsingular.
    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Coordinates of the orthogonal projection of `v` onto the span,
    /// solved through the Gram system.
    pub fn project_coords(&self, v: &HElement) -> Vec<GaussianRational> {
        let n = self.dim();
        if n == 0 {
            return Vec::new();
        }
        // sum_j x_j <f_j, f_i> = <v, f_i>
        let mut system = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *system.at_mut(i, j) = self.gram.at(j, i).clone();
            }
        }
        let rhs: Vec<GaussianRational> = self
            .elements
            .iter()
            .map(|f| v.inner(f).expect("projection across spaces"))
            .collect();
        system
            .solve(&rhs)
            .expect("Gram matrix of independent elements is nonsingular")
    }

    pub fn linear_combination(&self, coords: &[GaussianRational]) -> HElement {
        assert_eq!(coords.len(), self.dim());
        let space = self
            .elements
            .first()
            .map_or(Space::Hartogs, |e| e.space());
        let mut out = HElement::zero(space);
        for (c, f) in coords.iter().zip(&self.elements) {
            out = out.add(&f.scaled(c)).expect("same space");
        }
        out
    }

    pub fn project(&self, v: &HElement) -> HElement {
        if self.dim() == 0 {
            return HElement::zero(v.space());
        }
        self.linear_combination(&self.project_coords(v))
    }
}

fn reject_zero(p: &MultiplierPoly) -> Result<(), EngineError> {
    if p.is_zero() {
        Err(EngineError::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// Constraint matrix for the level-`m` slice: one row per contributing
/// monomial `g`, entries `conj((p*g)_alpha)` over the canonical level basis.
fn constraint_matrix(p: &MultiplierPoly, m: u32) -> Mat {
    let entries = level_basis(m);
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    for s in p.shift_set() {
        let source = m as i64 - s;
        if source < 0 {
            continue;
        }
        for &g in level_basis(source as u32).entries() {
            let g_elem =
                HElement::unit_monomial(Space::Hartogs, g).expect("level entries are valid");
            let product = p.multiply(&g_elem);
            let row: Vec<GaussianRational> = entries
                .entries()
                .iter()
                .map(|e| product.coeff(*e).conj())
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Mat::zero(0, entries.len());
    }
    Mat::from_rows(rows)
}

/// Basis of `{f in F_m : f` is orthogonal to `p*g` for every monomial `g}`,
/// in reduced echelon form over the canonical level ordering.
pub fn quotient_level_basis(p: &MultiplierPoly, m: u32) -> Result<SubspaceBasis, EngineError> {
    reject_zero(p)?;
    let entries = level_basis(m);
    let matrix = constraint_matrix(p, m);
    let kernel = if matrix.rows() == 0 {
        // no constraints reach this level; the whole slice survives
        (0..entries.len())
            .map(|j| {
                let mut v = vec![GaussianRational::zero(); entries.len()];
                v[j] = GaussianRational::one();
                v
            })
            .collect()
    } else {
        matrix.kernel_basis()
    };
    let elements = kernel
        .into_iter()
        .map(|coeffs| {
            HElement::from_terms(
                Space::Hartogs,
                entries
                    .entries()
                    .iter()
                    .zip(coeffs)
                    .map(|(idx, c)| (*idx, c)),
            )
            .expect("level entries are valid")
        })
        .collect();
    Ok(SubspaceBasis::from_elements(elements))
}

/// Cardinality of `quotient_level_basis(p, m)`; always `<= m + 1`.
pub fn quotient_level_dim(p: &MultiplierPoly, m: u32) -> Result<usize, EngineError> {
    reject_zero(p)?;
    Ok(m as usize + 1 - constraint_matrix(p, m).rank())
}

/// Reference computation of the same dimension from the full constraint
/// matrix over every monomial `g` of grading at most `m`, without the
/// shift-set filter. Slower; kept as an alternate route for cross-checks.
pub fn quotient_level_dim_unfiltered(p: &MultiplierPoly, m: u32) -> Result<usize, EngineError> {
    reject_zero(p)?;
    let entries = level_basis(m);
    let mut rows = Vec::new();
    for source in 0..=m {
        for &g in level_basis(source).entries() {
            let g_elem =
                HElement::unit_monomial(Space::Hartogs, g).expect("level entries are valid");
            let product = p.multiply(&g_elem);
            let row: Vec<GaussianRational> = entries
                .entries()
                .iter()
                .map(|e| product.coeff(*e).conj())
                .collect();
            rows.push(row);
        }
    }
    let matrix = Mat::from_rows(rows);
    Ok(entries.len() - matrix.rank())
}

/// Which closed-form dimension law applies to a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaCase {
    /// Single term `z^q * w^n`: dimension `m+1` below the shift `2q+n`,
    /// then constantly `2q+n`.
    Monomial { shift: u32 },
    /// All terms have pairwise distinct gradings (and none is constant):
    /// dimension eventually stabilizes at `min{i+j} + min{i}`.
    DistinctDegrees { stable_dim: usize },
    /// All terms share one grading: dimension `m+1` below the common shift,
    /// and equal to the shift from `upper_from` on; the range in between is
    /// computed, not predicted.
    EqualDegrees { shift: u32, upper_from: u32 },
}

/// Classifies `p` into one of the closed-form cases, when one applies.
pub fn classify(p: &MultiplierPoly) -> Option<FormulaCase> {
    let terms: Vec<MonomialIndex> = p.terms().map(|(i, _)| *i).collect();
    if terms.is_empty() {
        return None;
    }
    if terms.len() == 1 {
        let t = terms[0];
        return Some(FormulaCase::Monomial {
            shift: (t.grading() - 1) as u32,
        });
    }
    let mut shifts: Vec<i64> = terms.iter().map(|t| t.grading() - 1).collect();
    shifts.sort_unstable();
    let all_equal = shifts.windows(2).all(|w| w[0] == w[1]);
    if all_equal {
        // terms sorted by z-exponent; the common shift is attained by the
        // smallest z-exponent, the upper threshold involves the largest
        let q0 = terms.iter().map(|t| t.z_exp).min().unwrap();
        let qt = terms.iter().map(|t| t.z_exp).max().unwrap();
        let shift = shifts[0] as u32;
        return Some(FormulaCase::EqualDegrees {
            shift,
            upper_from: (shift as i64 + (qt - q0)) as u32,
        });
    }
    let all_distinct = shifts.windows(2).all(|w| w[0] != w[1]);
    let has_constant = terms.contains(&MonomialIndex::new(0, 0));
    if all_distinct && !has_constant {
        let min_total = terms.iter().map(|t| t.z_exp + t.w_exp).min().unwrap();
        let min_z = terms.iter().map(|t| t.z_exp).min().unwrap();
        return Some(FormulaCase::DistinctDegrees {
            stable_dim: (min_total + min_z) as usize,
        });
    }
    None
}

/// A closed-form dimension prediction for one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub dim: usize,
    pub case: FormulaCase,
    /// Set when the prediction rests on an empirically detected
    /// stabilization level rather than a proved threshold.
    pub empirical_from: Option<u32>,
}

/// Confirmation window for empirical stabilization: the stable value must
/// hold through the end of the computed range, with a run at least this long.
fn stabilization_window(p: &MultiplierPoly) -> u32 {
    (2 * p.max_shift().unwrap_or(0).max(0) as u32).max(6)
}

/// Smallest level from which `dims` equals `target` through the end of the
/// slice, provided the run is longer than `window`.
fn detect_stabilization(dims: &[usize], target: usize, window: u32) -> Option<u32> {
    let n = dims.len();
    let mut m0 = n;
    while m0 > 0 && dims[m0 - 1] == target {
        m0 -= 1;
    }
    if m0 == n || n - m0 <= window as usize {
        return None;
    }
    Some(m0 as u32)
}

fn predict_from_dims(
    case: FormulaCase,
    dims_ext: &[usize],
    window: u32,
    m: u32,
) -> Option<Prediction> {
    match case {
        FormulaCase::Monomial { shift } => {
            let dim = if m < shift { m as usize + 1 } else { shift as usize };
            Some(Prediction {
                dim,
                case,
                empirical_from: None,
            })
        }
        FormulaCase::EqualDegrees { shift, upper_from } => {
            if m < shift {
                Some(Prediction {
                    dim: m as usize + 1,
                    case,
                    empirical_from: None,
                })
            } else if m >= upper_from {
                Some(Prediction {
                    dim: shift as usize,
                    case,
                    empirical_from: None,
                })
            } else {
                None
            }
        }
        FormulaCase::DistinctDegrees { stable_dim } => {
            let m0 = detect_stabilization(dims_ext, stable_dim, window)?;
            (m >= m0).then_some(Prediction {
                dim: stable_dim,
                case,
                empirical_from: Some(m0),
            })
        }
    }
}

/// The closed-form dimension for level `m` when one of the dimension laws
/// covers it; `None` in uncovered ranges or for unclassified polynomials.
pub fn predicted_dim(p: &MultiplierPoly, m: u32) -> Result<Option<Prediction>, EngineError> {
    reject_zero(p)?;
    let Some(case) = classify(p) else {
        return Ok(None);
    };
    let window = stabilization_window(p);
    let dims_ext = if matches!(case, FormulaCase::DistinctDegrees { .. }) {
        compute_dims(p, m + window + 1)?
    } else {
        Vec::new()
    };
    Ok(predict_from_dims(case, &dims_ext, window, m))
}

fn compute_dims(p: &MultiplierPoly, m_max: u32) -> Result<Vec<usize>, EngineError> {
    reject_zero(p)?;
    let p = p.clone();
    Ok(map_levels(0..=m_max, move |m| {
        quotient_level_dim(&p, m).expect("nonzero polynomial")
    }))
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub m: u32,
    pub computed: usize,
    pub predicted: Option<usize>,
    /// True whenever the prediction is absent or matches the computation.
    pub agrees: bool,
}

/// Computed-versus-predicted slice dimensions over `0..=m_max`.
#[derive(Clone, Debug)]
pub struct DimTable {
    pub rows: Vec<DimRow>,
    pub case: Option<FormulaCase>,
    pub empirical_from: Option<u32>,
}

impl DimTable {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

/// Tabulates computed and predicted dimensions. For the empirical case the
/// computation extends past `m_max` by the confirmation window so the
/// stabilization level is honestly detected.
pub fn dim_table(p: &MultiplierPoly, m_max: u32) -> Result<DimTable, EngineError> {
    reject_zero(p)?;
    let case = classify(p);
    let window = stabilization_window(p);
    let ext = if matches!(case, Some(FormulaCase::DistinctDegrees { .. })) {
        m_max + window + 1
    } else {
        m_max
    };
    let dims_ext = compute_dims(p, ext)?;
    let mut empirical_from = None;
    let rows = (0..=m_max)
        .map(|m| {
            let computed = dims_ext[m as usize];
            let predicted = case.and_then(|c| predict_from_dims(c, &dims_ext, window, m));
            if let Some(pr) = &predicted {
                if pr.empirical_from.is_some() {
                    empirical_from = pr.empirical_from;
                }
            }
            let predicted = predicted.map(|p| p.dim);
            DimRow {
                m,
                computed,
                predicted,
                agrees: predicted.is_none_or(|d| d == computed),
            }
        })
        .collect();
    Ok(DimTable {
        rows,
        case,
        empirical_from,
    })
}

/// Basis of `{p*g : g polynomial supported on gradings <= level_max -
/// min_shift(p)}` intersected with the span of levels `<= level_max`. A
/// combination lands there iff its components above `level_max` vanish,
/// a finite exact linear condition.
pub fn submodule_slice(p: &MultiplierPoly, level_max: u32) -> Result<SubspaceBasis, EngineError> {
    reject_zero(p)?;
    let products = slice_products(p, level_max);
    if products.is_empty() {
        return Ok(SubspaceBasis::from_elements(Vec::new()));
    }
    let matrix = high_component_matrix(&products, level_max);
    let kernel = if matrix.rows() == 0 {
        (0..products.len())
            .map(|j| {
                let mut v = vec![GaussianRational::zero(); products.len()];
                v[j] = GaussianRational::one();
                v
            })
            .collect()
    } else {
        matrix.kernel_basis()
    };
    let elements: Vec<HElement> = kernel
        .into_iter()
        .map(|coeffs| {
            let mut out = HElement::zero(Space::Hartogs);
            for (c, prod) in coeffs.iter().zip(&products) {
                out = out.add(&prod.scaled(c)).expect("same space");
            }
            out
        })
        .collect();
    Ok(SubspaceBasis::from_elements(elements))
}

/// Dimension of `submodule_slice` without materializing the basis.
pub fn submodule_slice_dim(p: &MultiplierPoly, level_max: u32) -> Result<usize, EngineError> {
    reject_zero(p)?;
    let products = slice_products(p, level_max);
    if products.is_empty() {
        return Ok(0);
    }
    let matrix = high_component_matrix(&products, level_max);
    Ok(products.len() - matrix.rank())
}

/// Products `p*g` over the canonical enumeration of domain monomials.
fn slice_products(p: &MultiplierPoly, level_max: u32) -> Vec<HElement> {
    let min_shift = p.min_shift().expect("nonzero polynomial");
    let bound = level_max as i64 - min_shift;
    let mut products = Vec::new();
    if bound < 0 {
        return products;
    }
    for l in 0..=bound as u32 {
        for &g in level_basis(l).entries() {
            let g_elem =
                HElement::unit_monomial(Space::Hartogs, g).expect("level entries are valid");
            products.push(p.multiply(&g_elem));
        }
    }
    products
}

/// Rows indexed by the monomials above `level_max` that any product hits;
/// columns by the products.
fn high_component_matrix(products: &[HElement], level_max: u32) -> Mat {
    let mut row_of: BTreeMap<MonomialIndex, usize> = BTreeMap::new();
    for prod in products {
        for (idx, _) in prod.terms() {
            if idx.grading() > level_max as i64 {
                let next = row_of.len();
                row_of.entry(*idx).or_insert(next);
            }
        }
    }
    let mut matrix = Mat::zero(row_of.len(), products.len());
    for (col, prod) in products.iter().enumerate() {
        for (idx, c) in prod.terms() {
            if let Some(&row) = row_of.get(idx) {
                *matrix.at_mut(row, col) = c.clone();
            }
        }
    }
    matrix
}

/// Finite-level gradedness certificate: the quotient level slices and the
/// submodule slice must together exhaust the span of levels `<= level_max`.
///
/// The dimension count is a strong finite test. It can under-report:
/// products of `p` with polynomials need not reach every element of the
/// closed submodule at finite level (limits of products can live at lower
/// levels than any single product), so `graded = false` with a zero
/// `cross_level_defect` means "not exhausted by finite products", not a
/// disproof of the level decomposition. A nonzero `cross_level_defect` is
/// different: it exhibits finitely supported quotient elements spanning
/// several levels, which genuinely contradicts the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCertificate {
    pub level_max: u32,
    pub quotient_dims: Vec<usize>,
    pub submodule_slice_dim: usize,
    pub graded: bool,
    /// Shortfall against `dim F_{<= level_max} = (M+1)(M+2)/2`.
    pub defect: usize,
    /// `dim(Q_p` within levels `<= level_max) - sum(quotient_dims)`: the
    /// number of independent finitely supported quotient elements that do
    /// not split into level components. Zero whenever `graded` is true.
    pub cross_level_defect: usize,
}

/// Total dimension of the span of levels `0..=level_max`.
pub fn full_slice_dim(level_max: u32) -> usize {
    let m = level_max as usize;
    (m + 1) * (m + 2) / 2
}

/// Dimension of `{f supported on levels <= level_max : <f, p*g> = 0 for all
/// monomials g}` as a whole, cross-level elements included.
pub fn quotient_window_dim(p: &MultiplierPoly, level_max: u32) -> Result<usize, EngineError> {
    reject_zero(p)?;
    let products = slice_products(p, level_max);
    let mut coords: Vec<MonomialIndex> = Vec::with_capacity(full_slice_dim(level_max));
    for m in 0..=level_max {
        coords.extend(level_basis(m).entries());
    }
    if products.is_empty() {
        return Ok(coords.len());
    }
    let mut matrix = Mat::zero(products.len(), coords.len());
    let col_of: BTreeMap<MonomialIndex, usize> = coords
        .iter()
        .enumerate()
        .map(|(c, idx)| (*idx, c))
        .collect();
    for (row, prod) in products.iter().enumerate() {
        for (idx, c) in prod.terms() {
            if let Some(&col) = col_of.get(idx) {
                *matrix.at_mut(row, col) = c.conj();
            }
        }
    }
    Ok(coords.len() - matrix.rank())
}

/// `quotient_window_dim` minus the sum of the per-level dimensions: counts
/// independent finitely supported quotient elements that mix levels.
pub fn cross_level_defect(p: &MultiplierPoly, level_max: u32) -> Result<usize, EngineError> {
    let window = quotient_window_dim(p, level_max)?;
    let level_sum: usize = compute_dims(p, level_max)?.iter().sum();
    debug_assert!(window >= level_sum);
    Ok(window - level_sum)
}

pub fn graded_certificate(
    p: &MultiplierPoly,
    level_max: u32,
) -> Result<GradedCertificate, EngineError> {
    reject_zero(p)?;
    let quotient_dims = compute_dims(p, level_max)?;
    let slice_dim = submodule_slice_dim(p, level_max)?;
    let total = full_slice_dim(level_max);
    let level_sum: usize = quotient_dims.iter().sum();
    let sum = level_sum + slice_dim;
    debug_assert!(sum <= total, "orthogonal pieces cannot exceed the ambient");
    let graded = sum == total;
    // exhaustion forces the window to split levelwise, so the extra rank
    // computation is only spent on failing certificates
    let cross_level_defect = if graded {
        0
    } else {
        quotient_window_dim(p, level_max)? - level_sum
    };
    Ok(GradedCertificate {
        level_max,
        quotient_dims,
        submodule_slice_dim: slice_dim,
        graded,
        defect: total - sum,
        cross_level_defect,
    })
}
