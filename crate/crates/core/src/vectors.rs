//! f-, h- and h*-vectors of polynomials, and the Eulerian and MacMahon
//! numbers that describe the h*-vectors of `k^n`, `(k+1)^n` and `(2k+1)^n`.
//!
//! All three vectors are taken relative to an explicit reference degree `d`,
//! which may exceed the actual degree of the polynomial:
//!
//! * h*: `p(k) = sum_{i=0}^{d} h*_i C(k+d-i, d)`
//! * h:  `p(k) = C(k+d, d) + sum_{i=1}^{d+1} h_i C(k+d-i, d)`, with `h_0 = 1`
//! * f:  `p(k) = sum_{i=0}^{d} f_i C(k-1, i)`
//!
//! Each transform evaluates `p` at consecutive integers where the basis is
//! unitriangular and back-substitutes exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{binomial, parse_rational, rational_to_string, sign_pow, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorKind {
    F,
    H,
    Hstar,
}

impl VectorKind {
    /// Number of entries for reference degree `d`.
    pub fn len_for(self, d: usize) -> usize {
        match self {
            VectorKind::H => d + 2,
            VectorKind::F | VectorKind::Hstar => d + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    kind: VectorKind,
    d: usize,
    entries: Vec<BigRational>,
}

impl CoeffVector {
    pub fn new(kind: VectorKind, d: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != kind.len_for(d) {
            return Err(Error::MalformedVector(format!(
                "{kind:?}-vector of reference degree {d} needs {} entries, got {}",
                kind.len_for(d),
                entries.len()
            )));
        }
        Ok(Self { kind, d, entries })
    }

    pub fn from_ints(kind: VectorKind, d: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            kind,
            d,
            entries
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn ref_degree(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Entries as integers, or `None` if any entry is fractional.
    pub fn integer_entries(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffVectorRepr {
    kind: VectorKind,
    d: usize,
    entries: Vec<String>,
}

impl Serialize for CoeffVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoeffVectorRepr {
            kind: self.kind,
            d: self.d,
            entries: self.entries.iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CoeffVectorRepr::deserialize(d)?;
        let entries = repr
            .entries
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CoeffVector::new(repr.kind, repr.d, entries).map_err(D::Error::custom)
    }
}

fn check_degree(p: &Polynomial, d: usize) -> Result<()> {
    match p.degree() {
        Some(degree) if degree > d => Err(Error::DegreeTooLarge { degree, d }),
        _ => Ok(()),
    }
}

fn binom_q(n: u64, k: u64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

pub fn hstar_vector(p: &Polynomial, d: usize) -> Result<CoeffVector> {
    check_degree(p, d)?;
    let d64 = d as u64;
    let mut h: Vec<BigRational> = Vec::with_capacity(d + 1);
    for j in 0..=d64 {
        let mut value = p.evaluate_int(j as i64);
        for (i, hi) in h.iter().enumerate() {
            value -= hi * binom_q(j + d64 - i as u64, d64);
        }
        h.push(value);
    }
    CoeffVector::new(VectorKind::Hstar, d, h)
}

pub fn h_vector(p: &Polynomial, d: usize) -> Result<CoeffVector> {
    check_degree(p, d)?;
    let d64 = d as u64;
    let mut h: Vec<BigRational> = vec![BigRational::one()];
    for j in 1..=d64 + 1 {
        let mut value = p.evaluate_int(j as i64) - binom_q(j + d64, d64);
        for (i, hi) in h.iter().enumerate().skip(1) {
            value -= hi * binom_q(j + d64 - i as u64, d64);
        }
        h.push(value);
    }
    CoeffVector::new(VectorKind::H, d, h)
}

pub fn f_vector(p: &Polynomial, d: usize) -> Result<CoeffVector> {
    check_degree(p, d)?;
    let mut f: Vec<BigRational> = Vec::with_capacity(d + 1);
    for j in 1..=d as u64 + 1 {
        let mut value = p.evaluate_int(j as i64);
        for (i, fi) in f.iter().enumerate() {
            value -= fi * binom_q(j - 1, i as u64);
        }
        f.push(value);
    }
    CoeffVector::new(VectorKind::F, d, f)
}

/// Inverse of the forward transform matching `v.kind()`.
pub fn vector_to_poly(v: &CoeffVector) -> Result<Polynomial> {
    let d = v.d;
    let term = |c: &BigRational, basis: Polynomial| basis.scale(c);
    let mut p = Polynomial::zero();
    match v.kind {
        VectorKind::Hstar => {
            for (i, c) in v.entries.iter().enumerate() {
                p = &p + &term(c, Polynomial::binomial(d as i64 - i as i64, d));
            }
        }
        VectorKind::H => {
            if !v.entries[0].is_one() {
                return Err(Error::HVectorNormalization);
            }
            for (i, c) in v.entries.iter().enumerate() {
                p = &p + &term(c, Polynomial::binomial(d as i64 - i as i64, d));
            }
        }
        VectorKind::F => {
            for (i, c) in v.entries.iter().enumerate() {
                p = &p + &term(c, Polynomial::binomial(-1, i));
            }
        }
    }
    Ok(p)
}

/// Eulerian number `A(n, i) = sum_{j=0}^{i} (-1)^j C(n+1, j) (i-j)^n`, for
/// `0 <= i <= n+1`; `A(n, 0) = A(n, n+1) = 0`.
pub fn eulerian(n: u32, i: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "eulerian n",
            n: 0,
            index: 0,
        });
    }
    if i > n + 1 {
        return Err(Error::OutOfRange {
            what: "eulerian",
            n: n.into(),
            index: i.into(),
        });
    }
    let mut sum = BigInt::zero();
    for j in 0..=i {
        sum += sign_pow(j as usize) * binomial(u64::from(n) + 1, j.into()) * BigInt::from(i - j).pow(n);
    }
    Ok(sum)
}

/// MacMahon number `B(n, i) = sum_{j=1}^{i} (-1)^{i-j} C(n, i-j) (2j-1)^{n-1}`,
/// for `0 <= i <= n`; `B(n, 0) = 0`.
pub fn macmahon(n: u32, i: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "macmahon n",
            n: 0,
            index: 0,
        });
    }
    if i > n {
        return Err(Error::OutOfRange {
            what: "macmahon",
            n: n.into(),
            index: i.into(),
        });
    }
    let mut sum = BigInt::zero();
    for j in 1..=i {
        sum += sign_pow((i - j) as usize)
            * binomial(n.into(), (i - j).into())
            * BigInt::from(2 * j - 1).pow(n - 1);
    }
    Ok(sum)
}

/// Row `(A(n,0), ..., A(n,n))`.
pub fn eulerian_row(n: u32) -> Vec<BigInt> {
    (0..=n).map(|i| eulerian(n, i).expect("in range")).collect()
}

/// Row `(B(n,0), ..., B(n,n))`.
pub fn macmahon_row(n: u32) -> Vec<BigInt> {
    (0..=n).map(|i| macmahon(n, i).expect("in range")).collect()
}
