//! Gaussian-rational scalars: complex numbers with exact rational real and
//! imaginary parts. All coefficient arithmetic in this crate runs over these,
//! so every downstream verdict (orthogonality, kernel dimension, commutator
//! vanishing) is exact rather than floating-point.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational number, arbitrary precision.
pub type Rat = BigRational;

/// A complex number `re + im*I` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        Self::new(Rat::one(), Rat::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rat::zero(), Rat::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn from_rat(re: Rat) -> Self {
        Self::new(re, Rat::zero())
    }

    /// Exact rational `p/q`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rat(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|c|^2 = re^2 + im^2`, an exact rational.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero GaussianRational");
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    /// Checked division: `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self * &rhs.inv())
        }
    }

    /// True when `|c|^2 = 1`.
    pub fn is_unimodular(&self) -> bool {
        self.norm_sqr().is_one()
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: Self) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Renders a rational in lowest terms as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational upper bound on `sqrt(x)` for `x >= 0`.
pub fn sqrt_upper(x: &Rat) -> Rat {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rat::zero();
    }
    // sqrt(p/q) = sqrt(p*q)/q <= (isqrt(p*q)+1)/q
    let pq = x.numer() * x.denom();
    Rat::new(pq.sqrt() + BigInt::one(), x.denom().clone())
}

impl fmt::Display for GaussianRational {
    /// Canonical scalar text: `p/q` when real, `p/q*I` when pure imaginary
    /// (just `I`/`-I` for units), `(re+im*I)` when mixed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rat(&self.re));
        }
        let im_str = if self.im.is_one() {
            "I".to_string()
        } else if (-&self.im).is_one() {
            "-I".to_string()
        } else {
            format!("{}*I", format_rat(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im_str}")
        } else if self.im.is_negative() {
            write!(f, "({}{})", format_rat(&self.re), im_str)
        } else {
            write!(f, "({}+{})", format_rat(&self.re), im_str)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> Rat {
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn exact_field_ops() {
        let a = GaussianRational::new(q(1, 3), q(-2, 7));
        let b = GaussianRational::new(q(5, 2), q(1, 4));
        let prod = &a * &b;
        let back = &prod / &b;
        assert_eq!(back, a);
        assert!(a.checked_div(&GaussianRational::zero()).is_none());
    }

    #[test]
    fn conjugation_involution_and_norm() {
        let a = GaussianRational::new(q(3, 5), q(4, 5));
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.norm_sqr(), q(1, 1));
        assert!(a.is_unimodular());
        assert_eq!((&a * &a.conj()).re, a.norm_sqr());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(GaussianRational::i().to_string(), "I");
        assert_eq!((-GaussianRational::i()).to_string(), "-I");
        assert_eq!(
            GaussianRational::new(q(1, 2), q(-5, 3)).to_string(),
            "(1/2-5/3*I)"
        );
        assert_eq!(
            GaussianRational::new(q(1, 1), q(2, 1)).to_string(),
            "(1+2*I)"
        );
    }

    #[test]
    fn sqrt_upper_bounds() {
        for (p, den) in [(2i64, 1i64), (3, 4), (7, 5), (1, 3)] {
            let x = q(p, den);
            let s = sqrt_upper(&x);
            assert!(&s * &s >= x);
        }
        assert_eq!(sqrt_upper(&Rat::zero()), Rat::zero());
    }
}
