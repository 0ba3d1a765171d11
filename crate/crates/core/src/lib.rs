//! Exact reconstruction of the composition algebras (Hurwitz, para-Hurwitz,
//! Okubo and their split forms) from the three-dimensional geometric
//! algebras Cl(p,q), p + q = 3, over the field ℚ(√3).

/// Serialize through `Display`, deserialize through `FromStr`.
macro_rules! serde_as_str {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

pub mod analysis;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod expr;
pub mod involutions;
pub mod linalg;
pub mod products;
pub mod roots;
pub mod sample;
pub mod scalar;
pub mod verify;

pub use clifford::{Blade, Multivector, Signature, Subalgebra};
pub use error::{Error, Result};
pub use involutions::NormId;
pub use products::{Product, ProductId, SplitInterpretation, TauVariant};
pub use scalar::QS3Scalar;
