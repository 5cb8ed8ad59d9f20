//! Exact computation of equisingularity data for irreducible plane curve
//! singularities.
//!
//! * [`numsg`]: branch semigroups (characteristic sequences, conductor, gaps).
//! * [`bipoly`]: exact bivariate polynomials over the rationals, resultants,
//!   adic expansions and approximate roots.
//! * [`abhyankar`]: intersection multiplicities, generalized Newton polygons
//!   and the irreducibility criterion.
//! * [`canon`]: canonical equations and generic forms of a class.
//! * [`enumalg`]: all classes with a prescribed Milnor number.

pub mod abhyankar;
pub mod bipoly;
pub mod canon;
pub mod enumalg;
pub mod numsg;

use num_bigint::BigInt;
use serde_json::Value;

pub use abhyankar::{is_irreducible, milnor, semigroup_of, CriterionTrace, Verdict};
pub use bipoly::{BiPoly, Order, Rat};
pub use canon::{canonical_element, generic_form, CanonicalElement, GenericForm};
pub use enumalg::{brute_force_enumerate, enumerate_semigroups, sharp_family};
pub use numsg::{derive_char, validate, SemigroupData, ValidationReport};

/// Renders an integer as a JSON number without loss of precision.
pub(crate) fn json_int(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal is a JSON number"))
}
