//! Sparse univariate polynomials with exact coefficients, and Lagrange
//! interpolation over the rationals.
//!
//! Text rendering is canonical: descending exponents, no spaces, `x^e`,
//! with `x^1` written `x`, `x^0` omitted, and unit coefficients elided
//! (`x^3-2x+1`). The zero polynomial renders as `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{NlError, Result};

/// Exponent -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(coeff: BigInt, exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c.into(), e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: BigInt, exp: u32) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().rev().map(|(&e, c)| (e, c))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, coeff: &BigInt, exp: u32) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        // Horner over the sparse exponents
        let mut acc = BigInt::zero();
        let mut prev: Option<u32> = None;
        for (e, c) in self.terms() {
            if let Some(p) = prev {
                acc *= num_traits::pow(x.clone(), (p - e) as usize);
            }
            acc += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= num_traits::pow(x.clone(), p as usize);
        }
        acc
    }

    pub fn evaluate_at(&self, x: i64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(c.clone(), e);
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&e, c) in &rhs.coeffs {
            out = &out + &self.mul_monomial(c, e);
        }
        out
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    negative: bool,
    magnitude: &str,
    unit: bool,
    exp: u32,
) -> fmt::Result {
    if negative {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    if !unit || exp == 0 {
        f.write_str(magnitude)?;
    }
    match exp {
        0 => Ok(()),
        1 => f.write_str("x"),
        e => write!(f, "x^{e}"),
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            write_term(
                f,
                i == 0,
                c.is_negative(),
                &mag.to_string(),
                mag.is_one(),
                e,
            )?;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = NlError;

    /// Parses the canonical rendering (whitespace is ignored).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| NlError::Parse { line: 1, msg };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty polynomial".into()));
        }
        let mut p = IntPolynomial::zero();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coeff_text, exp) = match term.find('x') {
                None => (term, 0),
                Some(pos) => {
                    let tail = &term[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| bad(format!("bad exponent in {term:?}")))?
                    };
                    (&term[..pos], exp)
                }
            };
            let mut coeff = if coeff_text.is_empty() && exp > 0 {
                BigInt::one()
            } else {
                coeff_text
                    .parse::<BigInt>()
                    .map_err(|_| bad(format!("bad coefficient in {term:?}")))?
            };
            if negative {
                coeff = -coeff;
            }
            p.add_term(coeff, exp);
        }
        Ok(p)
    }
}

/// Serialized as `{"coeffs": {"<exp>": "<decimal>"}}`, ascending exponents.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<u32, BigInt>);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    map.serialize_entry(&e.to_string(), &c.to_string())?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut p = IntPolynomial::zero();
        for (e, c) in raw.coeffs {
            let e: u32 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term(c, e);
        }
        Ok(p)
    }
}

/// Polynomial with rational coefficients, produced by interpolation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPolynomial {
    coeffs: BTreeMap<u32, BigRational>,
}

impl RatPolynomial {
    fn add_term(&mut self, coeff: BigRational, exp: u32) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigRational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .map(|(&e, c)| c * num_traits::pow(x.clone(), e as usize))
            .sum()
    }

    pub fn evaluate_at(&self, x: i64) -> BigRational {
        self.evaluate(&BigRational::from_integer(x.into()))
    }

    /// The integer polynomial with the same coefficients, if they are all
    /// integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        let mut p = IntPolynomial::zero();
        for (&e, c) in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            p.add_term(c.to_integer(), e);
        }
        Some(p)
    }
}

impl From<&IntPolynomial> for RatPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        RatPolynomial {
            coeffs: p
                .coeffs
                .iter()
                .map(|(&e, c)| (e, BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl fmt::Display for RatPolynomial {
    /// Like the integer rendering, with non-integral coefficients wrapped in
    /// parentheses: `(16/3)x^3-8x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            let text = if mag.is_integer() {
                mag.to_integer().to_string()
            } else if e == 0 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            write_term(f, i == 0, c.is_negative(), &text, mag.is_one(), e)?;
        }
        Ok(())
    }
}

/// Lagrange interpolant of degree at most `degree_bound` through the first
/// `degree_bound + 1` points; every further point is a witness that must lie
/// on the interpolant.
pub fn interpolate_rational(
    points: &[(i64, BigInt)],
    degree_bound: usize,
) -> Result<RatPolynomial> {
    let needed = degree_bound + 1;
    let mut xs: Vec<i64> = points.iter().map(|p| p.0).collect();
    xs.sort_unstable();
    xs.dedup();
    if points.len() < needed || xs.len() != points.len() {
        return Err(NlError::InsufficientPoints {
            needed,
            got: xs.len().min(points.len()),
        });
    }

    let (basis, witnesses) = points.split_at(needed);
    let mut poly = RatPolynomial::default();
    for (i, (xi, yi)) in basis.iter().enumerate() {
        // numerator prod_{j != i} (x - xj), as dense ascending coefficients
        let mut num = vec![BigInt::one()];
        let mut den = BigInt::one();
        for (j, (xj, _)) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigInt::zero(); num.len() + 1];
            for (d, c) in num.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigInt::from(*xj);
            }
            num = next;
            den *= BigInt::from(xi - xj);
        }
        for (d, c) in num.into_iter().enumerate() {
            poly.add_term(BigRational::new(c * yi, den.clone()), d as u32);
        }
    }

    for (k, y) in witnesses {
        let predicted = poly.evaluate_at(*k);
        if predicted != BigRational::from_integer(y.clone()) {
            return Err(NlError::PolynomialityViolated {
                k: *k,
                predicted: predicted.to_string(),
                actual: y.to_string(),
            });
        }
    }
    Ok(poly)
}

/// As [`interpolate_rational`], but the interpolant must have integer
/// coefficients.
pub fn interpolate_exact(points: &[(i64, BigInt)], degree_bound: usize) -> Result<IntPolynomial> {
    let rational = interpolate_rational(points, degree_bound)?;
    rational
        .to_integer()
        .ok_or_else(|| NlError::NotIntegerPolynomial {
            rational: rational.to_string(),
        })
}
