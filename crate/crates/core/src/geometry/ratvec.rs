use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Exact rational vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatVec(Vec<BigRational>);

impl RatVec {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RatVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![BigRational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigRational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RatVec(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Self {
        RatVec(values.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn dot(&self, other: &RatVec) -> Result<BigRational> {
        self.check_dim(other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn sub(&self, other: &RatVec) -> Result<RatVec> {
        self.check_dim(other.dim())?;
        Ok(RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, factor: &BigRational) -> RatVec {
        RatVec(self.0.iter().map(|a| a * factor).collect())
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// `g x`, with `(gx)_i = x_{g^{-1}(i)}`.
    pub fn permuted(&self, g: &Permutation) -> RatVec {
        RatVec(g.act(&self.0))
    }

    /// Checked coordinate action.
    pub fn act(&self, g: &Permutation) -> Result<RatVec> {
        Ok(RatVec(g.try_act(&self.0)?))
    }

    /// Dense rank of each coordinate among the distinct values (smallest
    /// value gets 0). Order-isomorphic to the vector, so it can stand in for
    /// it in orbit and lexicographic computations.
    pub fn rank_labels(&self) -> Vec<u32> {
        let mut distinct: Vec<&BigRational> = self.0.iter().collect();
        distinct.sort();
        distinct.dedup();
        self.0
            .iter()
            .map(|v| distinct.binary_search(&v).unwrap() as u32)
            .collect()
    }

    /// Positive integer multiple of the vector (denominators cleared, gcd
    /// divided out). The zero vector maps to zeros.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|v| v / &g).collect()
    }

    /// Same positive-multiple scaling as `primitive_integer` but only
    /// clearing denominators; used to move sample points onto integers.
    pub fn cleared_denominators(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        self.0.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn parse_strings<S: AsRef<str>>(items: &[S]) -> Result<RatVec> {
        items
            .iter()
            .enumerate()
            .map(|(k, s)| {
                parse_rational(s.as_ref())
                    .map_err(|m| Error::parse(format!("coordinate {}", k + 1), m))
            })
            .collect::<Result<Vec<_>>>()
            .map(RatVec)
    }
}

impl From<Vec<BigRational>> for RatVec {
    fn from(v: Vec<BigRational>) -> Self {
        RatVec(v)
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let mut numer = BigInt::from_str(&digits).map_err(|_| format!("bad decimal {s:?}"))?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(numer, denom));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| format!("not a rational number: {s:?}"))
}

pub(crate) fn rational_sign(v: &BigRational) -> std::cmp::Ordering {
    if v.is_positive() {
        std::cmp::Ordering::Greater
    } else if v.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}
