//! Univariate polynomials with exact rational coefficients.
//!
//! Every inequality between Hilbert polynomials in this crate is an
//! inequality "for all sufficiently large m". For polynomials that is the
//! lexicographic order on coefficient vectors read from the top degree
//! down, which [`cmp_eventual`] implements and which backs the `Ord` impl
//! of [`RatPoly`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Result of comparing two polynomials for all sufficiently large arguments.
pub type EventualOrdering = Ordering;

/// Polynomial `c_0 + c_1 x + ... + c_n x^n` in canonical form: the stored
/// top coefficient is nonzero, and the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![rational::zero(), rational::one()])
    }

    /// Builds from coefficients listed from degree 0 upward, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, m: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(rational::zero(), |acc, c| acc * m + c)
    }

    pub fn evaluate_int(&self, m: i64) -> Rational {
        self.evaluate(&rational::int(m))
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Rank in the Hilbert-polynomial convention: the leading coefficient.
    pub fn rank(&self) -> Result<Rational> {
        self.leading().cloned().ok_or(Error::ZeroPolynomial)
    }

    /// Coefficient of degree `d - 1` of `self / rank`.
    pub fn mu_hat(&self) -> Result<Rational> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::DegreeTooLow {
                degree: 0,
                required: 1,
            });
        }
        Ok(&self.coeffs[d - 1] / &self.coeffs[d])
    }

    /// Sign of the polynomial for all sufficiently large arguments.
    pub fn eventual_sign(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// `1 + max |c_i / c_n|`: every real root lies strictly below this.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return rational::one();
        };
        let top = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(rational::zero);
        top + rational::one()
    }
}

/// Compares `p` and `q` by their values at all sufficiently large arguments.
pub fn cmp_eventual(p: &RatPoly, q: &RatPoly) -> EventualOrdering {
    let n = p.coeffs.len().max(q.coeffs.len());
    for k in (0..n).rev() {
        match p.coeff(k).cmp(&q.coeff(k)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub fn evaluate(p: &RatPoly, m: &Rational) -> Rational {
    p.evaluate(m)
}

pub fn rank_of(p: &RatPoly) -> Result<Rational> {
    p.rank()
}

pub fn mu_hat(p: &RatPoly) -> Result<Rational> {
    p.mu_hat()
}

/// `max(x, 0)^d`, with `0^0 = 1`.
pub fn bracket_plus_pow(x: &Rational, d: u32) -> Rational {
    let base = if x.is_negative() {
        rational::zero()
    } else {
        x.clone()
    };
    num_traits::pow(base, d as usize)
}

impl Ord for RatPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_eventual(self, other)
    }
}

impl PartialOrd for RatPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $f(self, rhs: RatPoly) -> RatPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $f(self, rhs: &RatPoly) -> RatPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a == rational::one();
            match k {
                0 => write!(f, "{a}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{a}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::serde_vec::deserialize(d).map(RatPoly::from_coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn eventual_order_examples() {
        assert_eq!(
            cmp_eventual(&p(&[1, 0, 1]), &p(&[0, 0, 1])),
            Ordering::Greater
        );
        assert_eq!(
            cmp_eventual(&RatPoly::zero(), &RatPoly::zero()),
            Ordering::Equal
        );
        assert_eq!(cmp_eventual(&p(&[0, 3]), &p(&[0, -100, 1])), Ordering::Less);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p(&[1, 0, 1]).evaluate_int(3), int(10));
        assert_eq!(RatPoly::zero().evaluate_int(7), int(0));
        // term-by-term: 2*1 + 2
        let q = p(&[2, 2]);
        let by_terms: Rational = q
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c * num_traits::pow(int(1), k))
            .sum();
        assert_eq!(q.evaluate_int(1), by_terms);
        assert_eq!(by_terms, int(4));
    }

    #[test]
    fn rank_and_mu_hat() {
        assert_eq!(rank_of(&p(&[2, 2])).unwrap(), int(2));
        assert_eq!(rank_of(&p(&[0, 0, 1])).unwrap(), int(1));
        assert_eq!(rank_of(&RatPoly::zero()), Err(Error::ZeroPolynomial));

        // P/r = x^2 + 3x + 1/2, degree-1 coefficient 3
        assert_eq!(mu_hat(&p(&[1, 6, 2])).unwrap(), int(3));
        assert_eq!(mu_hat(&p(&[0, 0, 0, 1])).unwrap(), int(0));
        assert_eq!(mu_hat(&p(&[2, 2])).unwrap(), int(1));
        assert!(matches!(mu_hat(&p(&[5])), Err(Error::DegreeTooLow { .. })));
    }

    #[test]
    fn truncated_power() {
        assert_eq!(bracket_plus_pow(&int(-2), 3), int(0));
        assert_eq!(bracket_plus_pow(&int(3), 2), int(9));
        assert_eq!(bracket_plus_pow(&int(0), 5), int(0));
        assert_eq!(bracket_plus_pow(&ratio(-1, 2), 0), int(1));
    }

    #[test]
    fn canonical_form_and_arithmetic() {
        let a = p(&[1, 2, 3]);
        let b = p(&[0, 0, -3]);
        assert_eq!((&a + &b).degree(), Some(1));
        assert!((&a - &a).is_zero());
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(a.scale(&int(0)), RatPoly::zero());
    }

    #[test]
    fn json_encoding() {
        let q = p(&[2, 2]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["2/1","2/1"]"#);
        let back: RatPoly = serde_json::from_str(r#"["4/2", 2, "0/5"]"#).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<RatPoly>(r#"["1/0"]"#).is_err());
        assert!(serde_json::from_str::<RatPoly>(r#"[1.5]"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 2]).to_string(), "2x + 2");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(RatPoly::constant(ratio(-3, 2)).to_string(), "-3/2");
    }
}
