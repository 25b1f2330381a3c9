//! Exact univariate polynomials in `k` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficients in ascending powers of `k`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `k`.
    pub fn variable() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `a*k + b`
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_ints(&[b, a])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, k: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * k + c)
    }

    pub fn evaluate_int(&self, k: i64) -> BigRational {
        self.evaluate(&int(k))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `inner` for `k`.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// `binomial(k + shift, d)` as a polynomial in `k`.
    pub fn binomial(shift: i64, d: usize) -> Self {
        let mut p = Self::one();
        for j in 0..d as i64 {
            p = &p * &Self::linear(1, shift - j);
        }
        p.scale(&BigRational::from_integer(factorial(d as u64)).recip())
    }

    /// True if every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Polynomial::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
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
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({}/{})", a.numer(), a.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a JSON array of decimal strings (`"n"` or `"n/d"`),
/// ascending powers.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self
            .coeffs
            .iter()
            .map(rational_to_string)
            .collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// Parses `"n"` or `"n/d"` with `d != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)` for nonnegative `n`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for j in 0..k {
        c = c * (n - j) / (j + 1);
    }
    c
}

/// Unique polynomial of degree below the number of samples through the
/// given `(k, value)` points, by Newton divided differences.
pub fn interpolate(samples: &[(i64, BigInt)]) -> Result<Polynomial> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut xs: Vec<i64> = samples.iter().map(|s| s.0).collect();
    xs.sort_unstable();
    if let Some(w) = xs.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateAbscissa(w[0]));
    }

    let xs: Vec<BigRational> = samples.iter().map(|s| int(s.0)).collect();
    let mut table: Vec<BigRational> = samples
        .iter()
        .map(|s| BigRational::from_integer(s.1.clone()))
        .collect();
    let n = samples.len();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }

    let mut result = Polynomial::zero();
    for i in (0..n).rev() {
        result = &(&result * &Polynomial::from_coeffs(vec![-&xs[i], BigRational::one()]))
            + &Polynomial::constant(table[i].clone());
    }
    Ok(result)
}

/// Convenience wrapper for small integer samples.
pub fn interpolate_ints(samples: &[(i64, i64)]) -> Result<Polynomial> {
    let samples: Vec<(i64, BigInt)> = samples.iter().map(|&(k, v)| (k, BigInt::from(v))).collect();
    interpolate(&samples)
}

pub fn evaluate(p: &Polynomial, k: i64) -> BigRational {
    p.evaluate_int(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Subtract,
    Multiply,
}

pub fn combine(p: &Polynomial, q: &Polynomial, op: CombineOp) -> Polynomial {
    match op {
        CombineOp::Add => p + q,
        CombineOp::Subtract => p - q,
        CombineOp::Multiply => p * q,
    }
}

/// The reference families `(k+1)^d`, `(2k+1)^d` and `k^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardFamily {
    ShiftedPower,
    DoubleShifted,
    Power,
}

impl FromStr for StandardFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shifted_power" => Ok(Self::ShiftedPower),
            "double_shifted" => Ok(Self::DoubleShifted),
            "power" => Ok(Self::Power),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

pub fn standard_family(family: StandardFamily, d: u32) -> Polynomial {
    let base = match family {
        StandardFamily::ShiftedPower => Polynomial::linear(1, 1),
        StandardFamily::DoubleShifted => Polynomial::linear(2, 1),
        StandardFamily::Power => Polynomial::variable(),
    };
    base.pow(d)
}

/// Converts an integer-valued rational to `BigInt`, if it is one.
pub fn to_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub(crate) fn sign_pow(e: usize) -> BigInt {
    if e.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn ints(p: &Polynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn interpolation_examples() {
        let p = interpolate_ints(&[(0, 1), (1, 3), (2, 5)]).unwrap();
        assert_eq!(p, Polynomial::linear(2, 1));
        let p = interpolate_ints(&[(0, 1), (1, 7), (2, 19), (3, 37)]).unwrap();
        assert_eq!(ints(&p), vec![1, 3, 3]);
        assert_eq!(p, Polynomial::linear(1, 1).pow(3) - Polynomial::variable().pow(3));
    }

    #[test]
    fn interpolation_errors() {
        assert!(matches!(
            interpolate_ints(&[(0, 1), (0, 2)]),
            Err(Error::DuplicateAbscissa(0))
        ));
        assert!(matches!(interpolate_ints(&[]), Err(Error::EmptySamples)));
    }

    #[test]
    fn evaluation_examples() {
        let p = Polynomial::from_ints(&[1, 3, 3]);
        assert_eq!(p.evaluate_int(2), int(19));
        assert_eq!(Polynomial::zero().evaluate_int(7), int(0));
        let cubic = Polynomial::linear(1, -1) * Polynomial::linear(1, -2) * Polynomial::linear(1, -3);
        assert_eq!(evaluate(&cubic, 4), int(6));
    }

    #[test]
    fn combine_examples() {
        let sq = Polynomial::linear(1, 1).pow(2);
        let other = Polynomial::linear(1, -1) * Polynomial::linear(1, -2);
        assert_eq!(combine(&sq, &other, CombineOp::Subtract), Polynomial::linear(5, -1));
        let t = Polynomial::linear(2, 1);
        assert_eq!(
            combine(&t, &t, CombineOp::Multiply),
            Polynomial::from_ints(&[1, 4, 4])
        );
        assert_eq!(combine(&sq, &Polynomial::zero(), CombineOp::Add), sq);
    }

    #[test]
    fn standard_families() {
        assert_eq!(
            ints(&standard_family(StandardFamily::ShiftedPower, 3)),
            vec![1, 3, 3, 1]
        );
        assert_eq!(
            ints(&standard_family(StandardFamily::DoubleShifted, 2)),
            vec![1, 4, 4]
        );
        assert_eq!(standard_family(StandardFamily::Power, 0), Polynomial::one());
        assert!("cubic".parse::<StandardFamily>().is_err());
    }

    #[test]
    fn binomial_polynomial_matches_integers() {
        let p = Polynomial::binomial(3, 3);
        for k in 0..10u64 {
            assert_eq!(p.evaluate_int(k as i64), BigRational::from_integer(binomial(k + 3, 3)));
        }
    }

    #[test]
    fn serde_and_display() {
        let p = Polynomial::from_coeffs(vec![int(3), BigRational::new(8.into(), 3.into())]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["3","8/3"]"#);
        let back: Polynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(Polynomial::from_ints(&[-1, 5]).to_string(), "5k - 1");
        assert_eq!(Polynomial::from_ints(&[1, 0, -1]).to_string(), "-k^2 + 1");
        assert!(parse_rational("1/0").is_err());
    }

    proptest! {
        #[test]
        fn interpolation_reproduces_samples(
            values in proptest::collection::vec(-50i64..50, 1..8),
            offset in -5i64..5,
            seed in any::<u64>(),
        ) {
            let mut samples: Vec<(i64, i64)> =
                values.iter().enumerate().map(|(i, &v)| (offset + 2 * i as i64, v)).collect();
            let p = interpolate_ints(&samples).unwrap();
            for &(k, v) in &samples {
                prop_assert_eq!(p.evaluate_int(k), int(v));
            }
            prop_assert!(p.degree().is_none_or(|d| d < samples.len()));
            // permutation invariance
            let n = samples.len();
            for i in 0..n {
                let j = (seed as usize).wrapping_mul(i + 7) % n;
                samples.swap(i, j);
            }
            prop_assert_eq!(interpolate_ints(&samples).unwrap(), p);
        }

        #[test]
        fn combine_is_pointwise(
            a in proptest::collection::vec(-20i64..20, 0..6),
            b in proptest::collection::vec(-20i64..20, 0..6),
            ks in proptest::collection::vec(-1000i64..1000, 100),
        ) {
            let (p, q) = (Polynomial::from_ints(&a), Polynomial::from_ints(&b));
            let sum = combine(&p, &q, CombineOp::Add);
            let diff = combine(&p, &q, CombineOp::Subtract);
            let prod = combine(&p, &q, CombineOp::Multiply);
            for k in ks {
                let (x, y) = (p.evaluate_int(k), q.evaluate_int(k));
                prop_assert_eq!(sum.evaluate_int(k), &x + &y);
                prop_assert_eq!(diff.evaluate_int(k), &x - &y);
                prop_assert_eq!(prod.evaluate_int(k), &x * &y);
            }
        }
    }
}
