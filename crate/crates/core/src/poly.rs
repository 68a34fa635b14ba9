//! Univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree order; never carries trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x - c`.
    pub fn linear_root(c: impl Into<BigInt>) -> Self {
        Self::new(vec![-c.into(), BigInt::one()])
    }

    /// `c - x`.
    pub fn c_minus_x(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into(), -BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::constant(1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(x + c)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * &c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// Divides by `(x - c)`, returning quotient and remainder `p(c)`.
    pub fn div_linear(&self, c: &BigInt) -> (Self, BigInt) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigInt::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * c;
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Exact division by `(x - c)^times`.
    pub fn div_linear_power(&self, c: &BigInt, times: usize) -> Result<Self> {
        let mut p = self.clone();
        for _ in 0..times {
            let (q, r) = p.div_linear(c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            p = q;
        }
        Ok(p)
    }

    /// Exact division by an arbitrary nonzero divisor.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_exact(divisor).ok_or(Error::InexactDivision)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Long division that stays in the integers; `None` when a quotient
    /// coefficient is not an integer.
    fn div_rem_exact(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let (f, r) = rem[i].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &f * d;
            }
            quot[i - dd] = f;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content removed, positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("nonzero divisor");
        let lead = b.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let f = r.leading();
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lead).collect();
            for (j, d) in b.coeffs.iter().enumerate() {
                next[dr - db + j] -= &f * d;
            }
            r = Self::new(next);
        }
        r
    }

    /// Primitive gcd over the integers.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Product of the distinct irreducible factors (up to sign and content).
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        self.primitive()
            .div_exact(&g)
            .expect("gcd divides the polynomial")
            .primitive()
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial { (&self).$m(&rhs) }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
