//! Closure operators on the congruence form of finite universal algebras.
//!
//! A closure operator here assigns to every congruence `R` of every algebra
//! `X` of a finite [`Universe`] a larger congruence `C_X(R)`, compatibly with
//! every quotient map. Idempotent cohereditary operators correspond exactly
//! to reflections of the universe onto a full subcategory whose units are
//! quotient maps; minimal ones to subcategories closed under quotients.
//! The [`reflection`] module builds both directions of that correspondence
//! and checks them exhaustively.

pub mod algebra;
pub mod closure;
pub mod error;
pub mod form;
pub mod instances;
pub mod reflection;

pub use algebra::{
    Congruence, CongruenceLattice, Equation, FiniteAlgebra, Homomorphism, QuasiEquation, Term,
    Variety,
};
pub use closure::{ClosureOperator, OperatorReport, Universe, Verdict, Witness};
pub use error::{Error, Result};
pub use reflection::{Reflector, SubcategoryPredicate};
