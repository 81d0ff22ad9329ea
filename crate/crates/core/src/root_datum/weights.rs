use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{format_vec, parse_scalar, to_scalars, Scalar};

/// Element of `X_*(T) ⊗ Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalCoweight<T>(pub Vec<T>);

/// Element of `X*(T) ⊗ Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalWeight<T>(pub Vec<T>);

macro_rules! vector_newtype {
    ($name:ident) => {
        impl<T: Scalar> $name<T> {
            pub fn from_ints(v: &[i64]) -> Self {
                $name(to_scalars(v))
            }

            pub fn zero(rank: usize) -> Self {
                $name(vec![T::zero(); rank])
            }

            pub fn coords(&self) -> &[T] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_integral(&self) -> bool {
                self.0.iter().all(Scalar::is_integral)
            }

            pub fn to_ints(&self) -> Option<Vec<i64>> {
                self.0.iter().map(Scalar::to_int).collect()
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
            }

            pub fn scale(&self, c: &T) -> Self {
                $name(self.0.iter().map(|a| a.clone() * c.clone()).collect())
            }

            /// Parses a comma- or whitespace-separated list such as `1,1/2,0`.
            pub fn parse(s: &str) -> Option<Self> {
                let s = s.trim().trim_start_matches('(').trim_end_matches(')');
                s.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|p| !p.is_empty())
                    .map(parse_scalar)
                    .collect::<Option<Vec<T>>>()
                    .map($name)
            }

            /// Coordinates as strings (`"1/2"`), the wire form used in JSON.
            pub fn to_strings(&self) -> Vec<String> {
                self.0.iter().map(|x| x.to_string()).collect()
            }
        }

        impl<T: Scalar> fmt::Display for $name<T> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&format_vec(&self.0))
            }
        }

        impl<T: Scalar> Serialize for $name<T> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                self.to_strings().serialize(s)
            }
        }

        impl<'de, T: Scalar> Deserialize<'de> for $name<T> {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let parts = Vec::<String>::deserialize(d)?;
                parts
                    .iter()
                    .map(|p| parse_scalar(p).ok_or_else(|| serde::de::Error::custom(format!("bad rational {p:?}"))))
                    .collect::<Result<Vec<T>, _>>()
                    .map($name)
            }
        }
    };
}

vector_newtype!(RationalCoweight);
vector_newtype!(RationalWeight);
