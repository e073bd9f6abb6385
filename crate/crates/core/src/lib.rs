//! Equational reasoning for idempotent semirings, idempotent semifields and
//! lattice-ordered groups.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised as:
//!
//! * [`terms`]: signatures, term syntax, parsing/printing and free-word normal forms.
//! * [`translate`]: syntactic translations between statement shapes
//!   (simple inequations, quasiequations, inverse elimination, meet splitting,
//!   `e`-removal and `0`-simplification).
//! * [`decide`]: validity over lattice-ordered groups (finite diagram search) and
//!   over the tropical semifield (exact Fourier–Motzkin), plus per-class dispatch.
//! * [`models`]: finite monoids and algebras, flat extensions, brute-force
//!   checkers and quasiequation oracles over `Z` and `Z_n`.
//! * [`orders`]: right-order existence on free groups and free monoids.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

/// Serialize a type as its printed form and read it back with `$parse`.
macro_rules! serde_via_display {
    ($ty:ty, $parse:expr) => {
        #[cfg(feature = "serde")]
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> core::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        #[cfg(feature = "serde")]
        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(
                d: D,
            ) -> core::result::Result<Self, D::Error> {
                let text = <alloc::string::String as serde::Deserialize>::deserialize(d)?;
                ($parse)(&text).map_err(serde::de::Error::custom)
            }
        }
    };
}

pub mod decide;
mod error;
pub mod models;
pub mod orders;
pub mod terms;
pub mod translate;

pub use error::{Error, ParseError, Result};
