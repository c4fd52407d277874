//! Truncated-series computations on the bidisc Hardy space: Blaschke
//! factors, the theta family along `z*w`, quotient projections, and the
//! phi-double-commutativity checks.
//!
//! Monomial data stays exact. Blaschke data is stored as an exactly
//! rational truncation together with two rigorous tail bounds: an l2 bound
//! on the dropped part of each series, and an l1 (multiplier-norm) bound
//! used when a truncated inner function acts as an operator. Every derived
//! quantity carries a rational error bound computed from these; since
//! multiplication by a genuine inner function is an isometry, the bounds
//! stay geometric in the truncation degree.

use num::{One, Signed, Zero};

use crate::element::{HElement, Space};
use crate::error::SeriesError;
use crate::index::MonomialIndex;
use crate::scalar::{sqrt_upper, GaussianRational, Rat};

/// Coordinate variable on the bidisc.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variable {
    Z,
    W,
}

impl Variable {
    pub fn monomial(self, power: u32) -> MonomialIndex {
        match self {
            Variable::Z => MonomialIndex::new(power as i64, 0),
            Variable::W => MonomialIndex::new(0, power as i64),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Variable::Z => 'z',
            Variable::W => 'w',
        }
    }
}

pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

fn max_degree(idx: &MonomialIndex) -> i64 {
    idx.z_exp.max(idx.w_exp)
}

fn scale_rat(c: &GaussianRational, r: &Rat) -> GaussianRational {
    GaussianRational::new(&c.re * r, &c.im * r)
}

/// A bidisc element supported on the square `0 <= z_exp, w_exp <= N`, with
/// a rigorous l2 bound on whatever the represented series carries beyond
/// the stored part.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    elem: HElement,
    truncation: u32,
    err: Rat,
    tail_base: Rat,
}

impl TruncatedSeries {
    /// Exact polynomial data; rejects support outside the square.
    pub fn exact(elem: HElement, truncation: u32) -> Result<Self, SeriesError> {
        if elem.space() != Space::Bidisc {
            return Err(SeriesError::UnsupportedShape {
                reason: "series live on the bidisc".into(),
            });
        }
        if let Some((idx, _)) = elem.terms().find(|(i, _)| max_degree(i) > truncation as i64) {
            return Err(SeriesError::TruncationTooSmall {
                given: truncation,
                needed: max_degree(idx) as u32,
            });
        }
        Ok(Self {
            elem,
            truncation,
            err: Rat::zero(),
            tail_base: Rat::zero(),
        })
    }

    pub fn zero(truncation: u32) -> Self {
        Self {
            elem: HElement::zero(Space::Bidisc),
            truncation,
            err: Rat::zero(),
            tail_base: Rat::zero(),
        }
    }

    pub fn element(&self) -> &HElement {
        &self.elem
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Rigorous l2 bound on (represented series) minus (stored part).
    pub fn error_bound(&self) -> &Rat {
        &self.err
    }

    /// Geometric decay base of the dropped coefficients; zero for exact
    /// data.
    pub fn tail_base(&self) -> &Rat {
        &self.tail_base
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    pub fn coeff(&self, idx: MonomialIndex) -> GaussianRational {
        self.elem.coeff(idx)
    }

    pub fn norm_sqr(&self) -> Rat {
        self.elem.norm_sqr()
    }

    /// Upper bound on the l2 norm of the represented series.
    pub fn norm_upper(&self) -> Rat {
        sqrt_upper(&self.elem.norm_sqr()) + &self.err
    }

    /// `|<u_true, v_true> - <u_stored, v_stored>|` bound.
    pub fn inner_error(&self, other: &Self) -> Rat {
        &self.err * sqrt_upper(&other.elem.norm_sqr())
            + sqrt_upper(&self.elem.norm_sqr()) * &other.err
            + &self.err * &other.err
    }

    /// Stored pairing, with the bound on its deviation from the true one.
    pub fn inner(&self, other: &Self) -> (GaussianRational, Rat) {
        let value = self.elem.inner(&other.elem).expect("both bidisc");
        (value, self.inner_error(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let sum = self.elem.add(&other.elem).expect("both bidisc");
        let (elem, dropped) = truncate_element(sum, truncation);
        Self {
            elem,
            truncation,
            err: &self.err + &other.err + dropped,
            tail_base: max_rat(&self.tail_base, &other.tail_base),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-GaussianRational::one()))
    }

    pub fn scaled(&self, c: &GaussianRational) -> Self {
        Self {
            elem: self.elem.scaled(c),
            truncation: self.truncation,
            err: &self.err * sqrt_upper(&c.norm_sqr()),
            tail_base: self.tail_base.clone(),
        }
    }

    /// Multiplication by a monomial (an isometry); drops whatever leaves
    /// the square, accounting for it in the error bound.
    pub fn shifted(&self, delta: MonomialIndex) -> Self {
        let raw = self
            .elem
            .mul_monomial(delta, &GaussianRational::one())
            .expect("bidisc closed under forward shifts");
        let (elem, dropped) = truncate_element(raw, self.truncation);
        Self {
            elem,
            truncation: self.truncation,
            err: &self.err + dropped,
            tail_base: self.tail_base.clone(),
        }
    }

    /// Backward shift (adjoint of the monomial multiplication); exact on
    /// the stored part and a contraction on the tail.
    pub fn shifted_adjoint(&self, delta: MonomialIndex) -> Self {
        Self {
            elem: self.elem.monomial_adjoint_shift(delta),
            truncation: self.truncation,
            err: self.err.clone(),
            tail_base: self.tail_base.clone(),
        }
    }
}

fn max_rat(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn truncate_element(elem: HElement, truncation: u32) -> (HElement, Rat) {
    let mut kept = HElement::zero(Space::Bidisc);
    let mut dropped_sq = Rat::zero();
    for (idx, c) in elem.terms() {
        if max_degree(idx) <= truncation as i64 {
            kept.add_term(*idx, c.clone()).expect("bidisc index");
        } else {
            dropped_sq += c.norm_sqr();
        }
    }
    (kept, sqrt_upper(&dropped_sq))
}

fn mul_elements(a: &HElement, b: &HElement) -> HElement {
    let mut out = HElement::zero(Space::Bidisc);
    for (ai, ac) in a.terms() {
        for (bi, bc) in b.terms() {
            out.add_term(ai.shifted(*bi), ac * bc)
                .expect("bidisc closed under products");
        }
    }
    out
}

/// `(M_s* v)_alpha = sum_beta conj(s_beta) v_{alpha+beta}` over the stored
/// coefficients; exact.
fn correlate(s: &HElement, v: &HElement) -> HElement {
    let mut out = HElement::zero(Space::Bidisc);
    for (vi, vc) in v.terms() {
        for (si, sc) in s.terms() {
            let alpha = MonomialIndex::new(vi.z_exp - si.z_exp, vi.w_exp - si.w_exp);
            if alpha.is_bidisc() {
                out.add_term(alpha, &sc.conj() * vc).expect("bidisc index");
            }
        }
    }
    out
}

fn l1_upper(elem: &HElement) -> Rat {
    let mut acc = Rat::zero();
    for (_, c) in elem.terms() {
        acc += sqrt_upper(&c.norm_sqr());
    }
    acc
}

/// A truncated inner function: the stored series plus an l1 bound on the
/// dropped coefficients, which dominates the operator norm of the
/// truncation error when the series multiplies or correlates.
#[derive(Clone, Debug)]
pub struct InnerSeries {
    series: TruncatedSeries,
    tail_l1: Rat,
}

impl InnerSeries {
    fn new(series: TruncatedSeries, tail_l1: Rat) -> Self {
        Self { series, tail_l1 }
    }

    /// An exact inner polynomial: a unimodular constant times a monomial.
    pub fn exact_monomial(
        coeff: &GaussianRational,
        idx: MonomialIndex,
        truncation: u32,
    ) -> Result<Self, SeriesError> {
        if !coeff.is_unimodular() {
            return Err(SeriesError::NotUnimodular {
                value: coeff.to_string(),
            });
        }
        let elem =
            HElement::monomial(Space::Bidisc, idx, coeff.clone()).map_err(SeriesError::Domain)?;
        Ok(Self::new(
            TruncatedSeries::exact(elem, truncation)?,
            Rat::zero(),
        ))
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// Multiplier-norm bound of the dropped part.
    pub fn tail_l1(&self) -> &Rat {
        &self.tail_l1
    }

    pub fn is_exact(&self) -> bool {
        self.tail_l1.is_zero() && self.series.is_exact()
    }

    /// Product of two truncated inner functions; the stored parts multiply
    /// exactly and anything pushed outside the square is accounted for in
    /// both tail bounds.
    pub fn product(&self, other: &Self) -> Result<Self, SeriesError> {
        let truncation = self.series.truncation.min(other.series.truncation);
        let raw = mul_elements(&self.series.elem, &other.series.elem);
        let mut dropped_l1 = Rat::zero();
        for (idx, c) in raw.terms() {
            if max_degree(idx) > truncation as i64 {
                dropped_l1 += sqrt_upper(&c.norm_sqr());
            }
        }
        let (elem, dropped_l2) = truncate_element(raw, truncation);
        // || t1 t2 - s1 s2 || <= ||(t1-s1) t2|| + ||s1 (t2-s2)||; the first
        // factor is inner, so its multiplier norm is 1
        let err = &self.series.err
            + (Rat::one() + &self.tail_l1) * &other.series.err
            + &dropped_l2;
        let tail_l1 = &self.tail_l1 * (l1_upper(&other.series.elem) + &other.tail_l1)
            + l1_upper(&self.series.elem) * &other.tail_l1
            + dropped_l1;
        Ok(Self::new(
            TruncatedSeries {
                elem,
                truncation,
                err,
                tail_base: max_rat(&self.series.tail_base, &other.series.tail_base),
            },
            tail_l1,
        ))
    }
}

/// Expansion of the disc automorphism `c (x - a) / (1 - a x)` in the given
/// variable: `c(-a + (1 - a^2) sum_{k>=1} a^{k-1} x^k)`, truncated at
/// degree `n` with geometric tail bounds. Requires rational `|a| < 1` and
/// unimodular `c`.
pub fn blaschke_series(
    a: &Rat,
    c: &GaussianRational,
    var: Variable,
    n: u32,
) -> Result<InnerSeries, SeriesError> {
    if a.abs() >= Rat::one() {
        return Err(SeriesError::ParameterOutOfRange {
            param: crate::scalar::format_rat(a),
        });
    }
    if !c.is_unimodular() {
        return Err(SeriesError::NotUnimodular {
            value: c.to_string(),
        });
    }
    if n < 1 {
        return Err(SeriesError::TruncationTooSmall { given: n, needed: 1 });
    }
    let mut elem = HElement::zero(Space::Bidisc);
    elem.add_term(MonomialIndex::new(0, 0), scale_rat(c, &-a.clone()))
        .unwrap();
    let one_minus = Rat::one() - a * a;
    let mut pow = Rat::one();
    for k in 1..=n {
        elem.add_term(var.monomial(k), scale_rat(c, &(&one_minus * &pow)))
            .unwrap();
        pow *= a;
    }
    let abs_a = a.abs();
    // dropped coefficients: (1-a^2) a^{k-1} for k > n
    let tail_l1 = (Rat::one() + &abs_a) * rat_pow(&abs_a, n);
    let tail_l2 = sqrt_upper(&(one_minus.abs() * rat_pow(&abs_a, 2 * n)));
    Ok(InnerSeries::new(
        TruncatedSeries {
            elem,
            truncation: n,
            err: tail_l2,
            tail_base: abs_a,
        },
        tail_l1,
    ))
}

/// Expansion of `(zw - a) / (1 - a zw)` along the diagonal variable `zw`:
/// `-a + (1 - a^2) sum_{k>=1} a^{k-1} (zw)^k`, keeping `k <= n`. Requires
/// rational `0 < a < 1`.
pub fn theta_a_series(a: &Rat, n: u32) -> Result<InnerSeries, SeriesError> {
    if !(a > &Rat::zero() && a < &Rat::one()) {
        return Err(SeriesError::ThetaParameterOutOfRange {
            param: crate::scalar::format_rat(a),
        });
    }
    if n < 2 {
        return Err(SeriesError::TruncationTooSmall { given: n, needed: 2 });
    }
    let mut elem = HElement::zero(Space::Bidisc);
    elem.add_term(
        MonomialIndex::new(0, 0),
        GaussianRational::from_rat(-a.clone()),
    )
    .unwrap();
    let one_minus = Rat::one() - a * a;
    let mut pow = Rat::one();
    for k in 1..=n as i64 {
        elem.add_term(
            MonomialIndex::new(k, k),
            GaussianRational::from_rat(&one_minus * &pow),
        )
        .unwrap();
        pow *= a;
    }
    let tail_l1 = (Rat::one() + a) * rat_pow(a, n);
    let tail_l2 = sqrt_upper(&(&one_minus * rat_pow(a, 2 * n)));
    Ok(InnerSeries::new(
        TruncatedSeries {
            elem,
            truncation: n,
            err: tail_l2,
            tail_base: a.clone(),
        },
        tail_l1,
    ))
}

/// Truncated reproducing-kernel series `sum_{k<=n} a^k x^k` in the given
/// variable, with the geometric tail bound.
pub fn geometric_kernel(a: &Rat, var: Variable, n: u32) -> Result<TruncatedSeries, SeriesError> {
    if a.abs() >= Rat::one() {
        return Err(SeriesError::ParameterOutOfRange {
            param: crate::scalar::format_rat(a),
        });
    }
    let mut elem = HElement::zero(Space::Bidisc);
    let mut pow = Rat::one();
    for k in 0..=n {
        elem.add_term(var.monomial(k), GaussianRational::from_rat(pow.clone()))
            .unwrap();
        pow *= a;
    }
    let abs_a = a.abs();
    let tail_sq = rat_pow(&abs_a, 2 * (n + 1)) / (Rat::one() - &abs_a * &abs_a);
    Ok(TruncatedSeries {
        elem,
        truncation: n,
        err: sqrt_upper(&tail_sq),
        tail_base: abs_a,
    })
}

/// The quotient of the bidisc space by `theta * H^2` for an inner `theta`,
/// with the compressed shifts. All operators are evaluated on truncations
/// with rigorous error bounds; everything is exact when `theta` is.
#[derive(Clone, Debug)]
pub struct QuotientContext {
    theta: InnerSeries,
}

impl QuotientContext {
    pub fn new(theta: InnerSeries) -> Self {
        Self { theta }
    }

    pub fn theta(&self) -> &InnerSeries {
        &self.theta
    }

    /// `P v = v - theta (theta* v)`: multiplication by an inner function is
    /// an isometry, so `M_theta M_theta*` is the projection onto
    /// `theta H^2`.
    pub fn project(&self, v: &TruncatedSeries) -> TruncatedSeries {
        let s = &self.theta.series;
        let t = &self.theta.tail_l1;
        let corr = correlate(&s.elem, &v.elem);
        let raw = mul_elements(&s.elem, &corr);
        let (product, dropped) = truncate_element(raw, v.truncation);
        let elem = v.elem.sub(&product).expect("both bidisc");
        // || P v_true - computed || <= 2 v.err + t (2 + t) ||v_stored|| + dropped
        let nv = sqrt_upper(&v.elem.norm_sqr());
        let two = Rat::from_integer(2.into());
        let err = &two * &v.err + t * (two.clone() + t) * nv + dropped;
        TruncatedSeries {
            elem,
            truncation: v.truncation,
            err,
            tail_base: max_rat(&v.tail_base, &s.tail_base),
        }
    }

    /// Compressed forward shift `Q_var = P M_var`.
    pub fn shift(&self, v: &TruncatedSeries, var: Variable) -> TruncatedSeries {
        self.project(&v.shifted(var.monomial(1)))
    }

    /// Compressed backward shift `Q_var* = P M_var*`, valid on quotient
    /// elements.
    pub fn shift_adjoint(&self, v: &TruncatedSeries, var: Variable) -> TruncatedSeries {
        self.project(&v.shifted_adjoint(var.monomial(1)))
    }

    /// `[Q_1 Q_2, Q_2*] f = Q_1 Q_2 Q_2* f - Q_2* Q_1 Q_2 f`.
    pub fn phi_dc_defect(&self, f: &TruncatedSeries) -> TruncatedSeries {
        let route_a = self.shift(
            &self.shift(&self.shift_adjoint(f, Variable::W), Variable::W),
            Variable::Z,
        );
        let route_b = self.shift_adjoint(
            &self.shift(&self.shift(f, Variable::W), Variable::Z),
            Variable::W,
        );
        route_a.sub(&route_b)
    }
}

/// One-off quotient projection against an inner symbol.
pub fn quotient_projection(theta: &InnerSeries, v: &TruncatedSeries) -> TruncatedSeries {
    QuotientContext::new(theta.clone()).project(v)
}

/// Inner-function shapes accepted by the phi-double-commutativity check.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaSpec {
    /// A unimodular constant.
    Constant(GaussianRational),
    /// `c * x^power` with `c` unimodular.
    MonomialPower {
        coeff: GaussianRational,
        power: u32,
    },
    /// A disc automorphism with rational parameter (coefficient 1).
    Blaschke { param: Rat },
}

impl ThetaSpec {
    /// Parses the surface syntax: `1`, `-1`, `z`, `z^2`, `c:z` with `c` in
    /// {1, -1, I, -I}, or `blaschke(p/q)`. The variable letter must match
    /// the slot.
    pub fn parse(text: &str, var: Variable) -> Result<Self, SeriesError> {
        let bad = |reason: &str| SeriesError::UnsupportedShape {
            reason: format!("{text:?}: {reason}"),
        };
        let text = text.trim();
        if text == "1" {
            return Ok(ThetaSpec::Constant(GaussianRational::one()));
        }
        if text == "-1" {
            return Ok(ThetaSpec::Constant(-GaussianRational::one()));
        }
        if text == "I" {
            return Ok(ThetaSpec::Constant(GaussianRational::i()));
        }
        if text == "-I" {
            return Ok(ThetaSpec::Constant(-GaussianRational::i()));
        }
        if let Some(rest) = text
            .strip_prefix("blaschke(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let param = parse_rat(rest).ok_or_else(|| bad("expected a rational parameter"))?;
            if param.abs() >= Rat::one() {
                return Err(SeriesError::ParameterOutOfRange {
                    param: crate::scalar::format_rat(&param),
                });
            }
            return Ok(ThetaSpec::Blaschke { param });
        }
        let (coeff, monomial) = match text.split_once(':') {
            Some((c, m)) => {
                let coeff = match c.trim() {
                    "1" => GaussianRational::one(),
                    "-1" => -GaussianRational::one(),
                    "I" => GaussianRational::i(),
                    "-I" => -GaussianRational::i(),
                    _ => return Err(bad("coefficient must be one of 1, -1, I, -I")),
                };
                (coeff, m.trim())
            }
            None => (GaussianRational::one(), text),
        };
        let var_char = var.symbol();
        let power = if monomial == var_char.to_string() {
            1u32
        } else if let Some(exp) = monomial.strip_prefix(&format!("{var_char}^")) {
            exp.parse::<u32>().map_err(|_| bad("bad exponent"))?
        } else {
            return Err(bad("expected the slot's variable"));
        };
        if power == 0 {
            return Ok(ThetaSpec::Constant(coeff));
        }
        Ok(ThetaSpec::MonomialPower { coeff, power })
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ThetaSpec::Blaschke { .. })
    }

    pub fn to_series(&self, var: Variable, n: u32) -> Result<InnerSeries, SeriesError> {
        match self {
            ThetaSpec::Constant(c) => InnerSeries::exact_monomial(c, MonomialIndex::new(0, 0), n),
            ThetaSpec::MonomialPower { coeff, power } => {
                InnerSeries::exact_monomial(coeff, var.monomial(*power), n)
            }
            ThetaSpec::Blaschke { param } => {
                blaschke_series(param, &GaussianRational::one(), var, n)
            }
        }
    }

    pub fn describe(&self, var: Variable) -> String {
        match self {
            ThetaSpec::Constant(c) => c.to_string(),
            ThetaSpec::MonomialPower { coeff, power } => {
                let var = var.symbol();
                let m = if *power == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{power}")
                };
                if coeff == &GaussianRational::one() {
                    m
                } else {
                    format!("{coeff}*{m}")
                }
            }
            ThetaSpec::Blaschke { param } => {
                format!("blaschke({})", crate::scalar::format_rat(param))
            }
        }
    }
}

fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (neg, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text),
    };
    let r = match rest.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Rat::new(p.into(), q.into())
        }
        None => Rat::from_integer(rest.trim().parse::<i64>().ok()?.into()),
    };
    Some(if neg { -r } else { r })
}

/// Result of a phi-double-commutativity check.
#[derive(Clone, Debug)]
pub struct PhiDcReport {
    pub theta1: String,
    pub theta2: String,
    pub truncation: u32,
    /// All computations were exact (monomial data, no truncation losses).
    pub exact: bool,
    pub passes: bool,
    /// Largest squared defect over the tested family.
    pub max_defect_sq: Rat,
    /// Largest error bound attached to a defect; squared defects at or
    /// below the squared bound are truncation noise.
    pub tail_bound: Rat,
    pub vectors_tested: usize,
    pub witness: Option<PhiDcWitness>,
}

#[derive(Clone, Debug)]
pub struct PhiDcWitness {
    pub vector: String,
    pub defect: String,
    pub defect_norm_sq: Rat,
}

/// Evaluates `[Q_1 Q_2, Q_2*]` on a spanning family of the truncated
/// quotient of `theta_1(z) theta_2(w)`. Exact verdict for monomial data;
/// for Blaschke data a failure is certified only when the computed defect
/// exceeds its rigorous error bound, and a pass reports the bound.
pub fn phi_dc_check(
    theta1: &ThetaSpec,
    theta2: &ThetaSpec,
    n: u32,
) -> Result<PhiDcReport, SeriesError> {
    if n < 8 {
        return Err(SeriesError::TruncationTooSmall { given: n, needed: 8 });
    }
    let s1 = theta1.to_series(Variable::Z, n)?;
    let s2 = theta2.to_series(Variable::W, n)?;
    let theta = s1.product(&s2)?;
    let ctx = QuotientContext::new(theta);

    // canonical witnesses first, so reported failures mirror the standard
    // constructions (the constant and the kernels k_a / m_b)
    let mut family: Vec<(String, TruncatedSeries)> = Vec::new();
    if let ThetaSpec::Blaschke { param } = theta1 {
        family.push(("k_a".into(), geometric_kernel(param, Variable::Z, n)?));
    }
    if let ThetaSpec::Blaschke { param } = theta2 {
        family.push(("m_b".into(), geometric_kernel(param, Variable::W, n)?));
    }
    let probe_degree = 4.min(n / 2) as i64;
    for total in 0..=probe_degree {
        for i in (0..=total).rev() {
            let idx = MonomialIndex::new(i, total - i);
            let elem = HElement::unit_monomial(Space::Bidisc, idx).unwrap();
            family.push((idx.to_string(), TruncatedSeries::exact(elem, n)?));
        }
    }

    let results = crate::par::map_items(family, |(name, raw)| {
        let f = ctx.project(&raw);
        let defect = ctx.phi_dc_defect(&f);
        (name, defect)
    });

    let mut max_defect_sq = Rat::zero();
    let mut tail_bound = Rat::zero();
    let mut witness = None;
    let mut exact = true;
    for (name, defect) in &results {
        let d2 = defect.norm_sqr();
        let bound = defect.error_bound().clone();
        if !defect.is_exact() {
            exact = false;
        }
        if d2 > &bound * &bound && witness.is_none() {
            witness = Some(PhiDcWitness {
                vector: name.clone(),
                defect: defect.element().to_string(),
                defect_norm_sq: d2.clone(),
            });
        }
        max_defect_sq = max_rat(&max_defect_sq, &d2);
        tail_bound = max_rat(&tail_bound, &bound);
    }

    Ok(PhiDcReport {
        theta1: theta1.describe(Variable::Z),
        theta2: theta2.describe(Variable::W),
        truncation: n,
        exact,
        passes: witness.is_none(),
        max_defect_sq,
        tail_bound,
        vectors_tested: results.len(),
        witness,
    })
}

/// Verification report for the theta family along `z*w`.
#[derive(Clone, Debug)]
pub struct ThetaAReport {
    pub a: Rat,
    pub truncation: u32,
    /// Stored `||1 + a theta_a||^2`, with its deviation from the closed
    /// form `1 - a^2`.
    pub norm_sq: Rat,
    pub norm_deviation: Rat,
    /// Largest squared pairing among distinct family vectors.
    pub max_orthogonality_defect_sq: Rat,
    /// Largest squared deviation of the compressed-shift action formulas.
    pub max_action_defect_sq: Rat,
    /// Which adjoint coefficient convention the data supports.
    pub adjoint_convention: String,
    /// Largest squared commutator defect over the family.
    pub max_commutator_defect_sq: Rat,
    /// Largest error bound attached to a commutator evaluation.
    pub commutator_tail_bound: Rat,
    pub vectors_tested: usize,
    pub all_within_bounds: bool,
}

/// Builds the orthogonal family `(1 + a theta_a) z^i`, `(1 + a theta_a)`,
/// `(1 + a theta_a) w^j` in the quotient by `theta_a`, then verifies
/// orthogonality, the compressed-shift action formulas, the adjoint
/// coefficient convention, and the vanishing of `[Q_1 Q_2, Q_2*]` up to
/// the rigorous tail bounds.
pub fn theta_a_verify(a: &Rat, n: u32) -> Result<ThetaAReport, SeriesError> {
    if n < 8 {
        return Err(SeriesError::TruncationTooSmall { given: n, needed: 8 });
    }
    let theta = theta_a_series(a, n)?;
    let ctx = QuotientContext::new(theta.clone());
    let ga = GaussianRational::from_rat(a.clone());

    let one = TruncatedSeries::exact(
        HElement::unit_monomial(Space::Bidisc, MonomialIndex::new(0, 0)).unwrap(),
        n,
    )?;
    let base = one.add(&theta.series().scaled(&ga));

    // ten family vectors: base*z^4 .. base*z, base, base*w .. base*w^5
    let mut family: Vec<(i64, TruncatedSeries)> = Vec::new();
    for i in (1..=4i64).rev() {
        family.push((-i, base.shifted(MonomialIndex::new(i, 0))));
    }
    family.push((0, base.clone()));
    for j in 1..=5i64 {
        family.push((j, base.shifted(MonomialIndex::new(0, j))));
    }

    let norm_sq = base.norm_sqr();
    let closed_form = Rat::one() - a * a;
    let norm_deviation = (&norm_sq - &closed_form).abs();

    let mut max_orth = Rat::zero();
    for (i, (_, u)) in family.iter().enumerate() {
        for (_, v) in family.iter().skip(i + 1) {
            let (val, _) = u.inner(v);
            max_orth = max_rat(&max_orth, &val.norm_sqr());
        }
    }

    // action formulas: Q_2 (base z^i) = a base z^{i-1} for i >= 1 and
    // Q_2 (base w^j) = base w^{j+1} for j >= 0
    let mut max_action = Rat::zero();
    let mut within = true;
    for (tag, f) in &family {
        let image = ctx.shift(f, Variable::W);
        let expected = if *tag < 0 {
            base.shifted(MonomialIndex::new(-tag - 1, 0)).scaled(&ga)
        } else {
            base.shifted(MonomialIndex::new(0, tag + 1))
        };
        let defect = image.sub(&expected);
        let d2 = defect.norm_sqr();
        let bound = defect.error_bound();
        if d2 > bound * bound {
            within = false;
        }
        max_action = max_rat(&max_action, &d2);
    }

    // adjoint convention on base z^i: plain coefficient a against the
    // norm-weighted variant a(1-a^2)
    let plain_coeff = ga.clone();
    let weighted_coeff = GaussianRational::from_rat(a * &closed_form);
    let mut plain_defect = Rat::zero();
    let mut weighted_defect = Rat::zero();
    for i in 0..=2i64 {
        let f = base.shifted(MonomialIndex::new(i, 0));
        let image = ctx.shift_adjoint(&f, Variable::W);
        let target = base.shifted(MonomialIndex::new(i + 1, 0));
        let plain = image.sub(&target.scaled(&plain_coeff)).norm_sqr();
        let weighted = image.sub(&target.scaled(&weighted_coeff)).norm_sqr();
        plain_defect = max_rat(&plain_defect, &plain);
        weighted_defect = max_rat(&weighted_defect, &weighted);
    }
    let adjoint_convention = if plain_defect < weighted_defect {
        format!(
            "Q_2*(1+a*theta_a)z^i = a*(1+a*theta_a)z^(i+1), unnormalized coefficient a \
             (defect^2 {} against {} for the norm-weighted variant)",
            crate::scalar::format_rat(&plain_defect),
            crate::scalar::format_rat(&weighted_defect)
        )
    } else {
        format!(
            "norm-weighted adjoint coefficient fits better (defect^2 {} against {})",
            crate::scalar::format_rat(&weighted_defect),
            crate::scalar::format_rat(&plain_defect)
        )
    };

    let mut max_comm = Rat::zero();
    let mut comm_bound = Rat::zero();
    let vectors: Vec<TruncatedSeries> = family.iter().map(|(_, f)| f.clone()).collect();
    let defects = crate::par::map_items(vectors, |f| ctx.phi_dc_defect(&f));
    for defect in &defects {
        let d2 = defect.norm_sqr();
        let bound = defect.error_bound();
        if d2 > bound * bound {
            within = false;
        }
        max_comm = max_rat(&max_comm, &d2);
        comm_bound = max_rat(&comm_bound, bound);
    }

    Ok(ThetaAReport {
        a: a.clone(),
        truncation: n,
        norm_sq,
        norm_deviation,
        max_orthogonality_defect_sq: max_orth,
        max_action_defect_sq: max_action,
        adjoint_convention,
        max_commutator_defect_sq: max_comm,
        commutator_tail_bound: comm_bound,
        vectors_tested: family.len(),
        all_within_bounds: within,
    })
}
