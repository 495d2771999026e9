//! Finite inverse semigroups, their partial actions on finite sets, groupoids
//! of germs, Steinberg algebras and crossed products, and the graph
//! semigroups of finite directed graphs, all with exact arithmetic.
//!
//! The core is generic over the coefficient ring through [`scalar::Ring`];
//! the aliases below fix the common choices.

pub mod algebra;
pub mod catalog;
pub mod germs;
pub mod graph;
pub mod invsemi;
pub mod linalg;
pub mod paction;
pub mod scalar;
pub mod schema;
pub mod suite;
pub mod unionfind;

pub use num::{BigInt, BigRational};

pub type Rational = BigRational;
pub type Integer = BigInt;
pub type Z2 = scalar::Zn<2>;
pub type Z3 = scalar::Zn<3>;
pub type Z5 = scalar::Zn<5>;
pub type Z6 = scalar::Zn<6>;
