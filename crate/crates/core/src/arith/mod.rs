//! Exact arithmetic: the scalar trait, dense matrices, univariate
//! polynomials and Sturm-sequence root isolation.
//!
//! Everything here is generic over [`ExactScalar`], which is implemented for
//! every `num_rational::Ratio<I>` with a signed integer `I`. The rest of the
//! crate instantiates it with [`crate::Rational`] (`BigRational`).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

pub mod matrix;
pub mod poly;
pub mod roots;

pub use matrix::Matrix;
pub use poly::Polynomial;
pub use roots::{isolate_roots, RootEnclosure, RootIsolator};

/// An exact ordered field element backed by an integer type.
///
/// The integer view (`numer_int`/`denom_int`) is what lets the determinant
/// run fraction-free over the integers.
pub trait ExactScalar:
    Clone + Ord + Debug + Display + Num + Signed + Send + Sync + 'static
{
    type Int: Integer + Signed + Clone + Debug + Display + Send + Sync;

    fn from_int(n: Self::Int) -> Self;
    fn from_i64(n: i64) -> Self;
    fn ratio(numer: Self::Int, denom: Self::Int) -> Self;
    fn numer_int(&self) -> Self::Int;
    /// Always positive.
    fn denom_int(&self) -> Self::Int;

    fn floor_int(&self) -> Self::Int {
        self.numer_int().div_floor(&self.denom_int())
    }

    fn ceil_int(&self) -> Self::Int {
        self.numer_int().div_ceil(&self.denom_int())
    }

    fn is_integer(&self) -> bool {
        self.denom_int().is_one()
    }
}

impl<I> ExactScalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromPrimitive + Send + Sync + 'static,
{
    type Int = I;

    fn from_int(n: I) -> Self {
        Ratio::from_integer(n)
    }

    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(I::from_i64(n).expect("i64 fits the integer type"))
    }

    fn ratio(numer: I, denom: I) -> Self {
        Ratio::new(numer, denom)
    }

    fn numer_int(&self) -> I {
        self.numer().clone()
    }

    fn denom_int(&self) -> I {
        self.denom().clone()
    }
}

/// Sign of a scalar as -1, 0 or 1.
pub fn sign<T: ExactScalar>(x: &T) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `"p/q"`, `"p"` or a plain decimal integer into a rational.
pub fn parse_rational(s: &str) -> Result<crate::Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?} in {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Ratio::new(n, d))
        }
        None => Ok(Ratio::from_integer(parse_int(s)?)),
    }
}

/// Canonical `"p/q"` rendering; integers render without a denominator.
pub fn fmt_rational(r: &crate::Rational) -> String {
    r.to_string()
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Serde adapters. Rationals travel as `"p/q"` strings and big integers as
/// decimal strings so that no precision is lost in JSON.
pub mod serde_exact {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub mod rational {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&r.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
            let s = String::deserialize(d)?;
            crate::arith::parse_rational(&s).map_err(serde::de::Error::custom)
        }
    }

    pub mod rational_opt {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| crate::arith::parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod rational_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| crate::arith::parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod bigint {
        use super::*;

        pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&n.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            String::deserialize(d)?
                .trim()
                .parse()
                .map_err(serde::de::Error::custom)
        }
    }

    pub mod bigint_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for n in v {
                seq.serialize_element(&n.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| s.trim().parse().map_err(serde::de::Error::custom))
                .collect()
        }
    }

    /// Lattice coordinates: JSON numbers when they fit `i64`, decimal
    /// strings otherwise. Both forms are accepted on input.
    pub mod lattice_coords {
        use super::*;
        use num_traits::ToPrimitive;
        use serde::ser::SerializeSeq;
        use serde::Serialize;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Num(i64),
            Str(String),
        }

        struct Row<'a>(&'a [BigInt]);

        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for n in self.0 {
                    match n.to_i64() {
                        Some(v) => seq.serialize_element(&v)?,
                        None => seq.serialize_element(&n.to_string())?,
                    }
                }
                seq.end()
            }
        }

        fn parse_row<E: serde::de::Error>(row: Vec<Coord>) -> Result<Vec<BigInt>, E> {
            row.into_iter()
                .map(|c| match c {
                    Coord::Num(v) => Ok(BigInt::from(v)),
                    Coord::Str(s) => s.trim().parse().map_err(E::custom),
                })
                .collect()
        }

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            Row(v).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            parse_row(Vec::<Coord>::deserialize(d)?)
        }

        pub mod nested {
            use super::*;

            pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for row in v {
                    seq.serialize_element(&Row(row))?;
                }
                seq.end()
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(
                d: D,
            ) -> Result<Vec<Vec<BigInt>>, D::Error> {
                Vec::<Vec<Coord>>::deserialize(d)?
                    .into_iter()
                    .map(parse_row)
                    .collect()
            }
        }
    }
}

/// Serializes with sorted keys so identical values give identical bytes.
pub fn to_canonical_json<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize infallibly");
    serde_json::to_string_pretty(&v).expect("json values serialize infallibly")
}
