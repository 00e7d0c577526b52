//! Concrete closure operators and the bundled corpora.

pub mod corpus;
pub mod groups;
pub mod quandles;
pub mod rngs;

use std::sync::Arc;

use crate::algebra::{Equation, QuasiEquation, Term};
use crate::closure::{ClosureOperator, Universe};
use crate::error::{Error, Result};
use crate::reflection::SubcategoryPredicate;

pub use corpus::{corpus, CorpusKind};

/// Operator names understood by [`operator_by_name`].
pub const OPERATOR_NAMES: &[&str] = &[
    "identity",
    "total",
    "nilradical",
    "trivial-quandle",
    "abelianization",
    "exponent-2-abelianization",
];

pub fn operator_by_name(universe: &Arc<Universe>, name: &str) -> Result<ClosureOperator> {
    match name {
        "identity" => Ok(ClosureOperator::identity(universe)),
        "total" => Ok(ClosureOperator::total(universe)),
        "nilradical" => rngs::nilradical_operator(universe),
        "trivial-quandle" => quandles::quandle_closure_operator(universe),
        "abelianization" => groups::abelianization_operator(universe),
        "exponent-2-abelianization" => groups::exponent_two_operator(universe),
        other => Err(Error::UnknownOp(other.to_string())),
    }
}

/// Built-in operators that apply to a corpus.
pub fn operators_for(kind: CorpusKind) -> &'static [&'static str] {
    match kind {
        CorpusKind::Groups => &[
            "identity",
            "total",
            "abelianization",
            "exponent-2-abelianization",
        ],
        CorpusKind::Rngs => &["identity", "total", "nilradical"],
        CorpusKind::Quandles => &["identity", "total", "trivial-quandle"],
    }
}

/// The subcategory fixed by a built-in operator, described by (quasi-)equations.
pub fn defining_predicate(name: &str) -> Option<SubcategoryPredicate<'static>> {
    let (x, y) = (Term::var(0), Term::var(1));
    let commutes = Equation::new(
        Term::binary("mul", x.clone(), y.clone()),
        Term::binary("mul", y.clone(), x.clone()),
    );
    let pred = match name {
        "identity" => SubcategoryPredicate::Equations(vec![]),
        "total" => SubcategoryPredicate::Equations(vec![Equation::new(x, y)]),
        "nilradical" => {
            let zero = Term::constant("zero");
            SubcategoryPredicate::QuasiEquations(vec![QuasiEquation::new(
                vec![Equation::new(
                    Term::binary("mul", x.clone(), x.clone()),
                    zero.clone(),
                )],
                Equation::new(x, zero),
            )])
        }
        "trivial-quandle" => SubcategoryPredicate::Equations(vec![Equation::new(
            Term::binary("lhd", x.clone(), y),
            x,
        )]),
        "abelianization" => SubcategoryPredicate::Equations(vec![commutes]),
        "exponent-2-abelianization" => SubcategoryPredicate::Equations(vec![
            commutes,
            Equation::new(Term::binary("mul", x.clone(), x), Term::constant("e")),
        ]),
        _ => return None,
    };
    Some(pred)
}
