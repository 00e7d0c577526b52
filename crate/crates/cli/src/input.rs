use std::path::Path;
use std::sync::Arc;

use closure_form::algebra::json;
use closure_form::instances::{self, OPERATOR_NAMES};
use closure_form::reflection::closure_from_reflector;
use closure_form::{
    ClosureOperator, Congruence, Equation, FiniteAlgebra, Homomorphism, QuasiEquation, Reflector,
    SubcategoryPredicate, Universe,
};
use serde::Deserialize;

use crate::{Failure, Morphism, Source};

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn input<T>(what: &str, r: closure_form::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{what}: {e}")))
}

/// Parses and validates an algebra file; axiom violations are reported as
/// check failures only by `validate`, so everything here is an input error.
pub fn algebra(path: &Path) -> Result<FiniteAlgebra, Failure> {
    input(
        &path.display().to_string(),
        json::algebra_from_str(&read(path)?),
    )
}

pub fn name_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "X".into())
}

pub fn congruence(text: &str, n: usize) -> Result<Congruence, Failure> {
    input("--congruence", json::congruence_from_str(text, n))
}

pub fn morphism(m: &Morphism) -> Result<Homomorphism, Failure> {
    let dom = Arc::new(algebra(&m.algebra)?);
    let cod = Arc::new(algebra(&m.codomain)?);
    let map: Vec<usize> =
        serde_json::from_str(&m.map).map_err(|e| Failure::Input(format!("--map: {e}")))?;
    input("--map", Homomorphism::new(dom, cod, map))
}

/// The universe named by `--algebra` (closed under quotients) or `--corpus`.
pub fn universe(source: &Source) -> Result<Arc<Universe>, Failure> {
    match (&source.algebra, source.corpus) {
        (Some(path), None) => {
            let alg = algebra(path)?;
            input(
                "universe",
                Universe::quotient_closure(vec![(name_of(path), alg)]),
            )
        }
        (None, Some(kind)) => input("--corpus", instances::corpus(kind, source.max_size)),
        (Some(_), Some(_)) => Err(Failure::Input(
            "give either --algebra or --corpus, not both".into(),
        )),
        (None, None) => Err(Failure::Input(
            "one of --algebra or --corpus is required".into(),
        )),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    name: Option<String>,
    #[serde(default)]
    equations: Vec<Equation>,
    #[serde(default)]
    quasi_equations: Vec<QuasiEquation>,
}

/// A built-in operator by name, or the reflection onto the models of the
/// (quasi-)equations in a JSON file.
pub fn operator(spec: &str, universe: &Arc<Universe>) -> Result<ClosureOperator, Failure> {
    if OPERATOR_NAMES.contains(&spec) {
        return Ok(instances::operator_by_name(universe, spec)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::Input(format!(
            "unknown operator `{spec}`: expected one of {} or a JSON file",
            OPERATOR_NAMES.join(", ")
        )));
    }
    let file: OperatorFile = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let name = file.name.unwrap_or_else(|| name_of(path));
    let mut qeqs = file.quasi_equations;
    qeqs.extend(
        file.equations
            .into_iter()
            .map(|e| QuasiEquation::new(vec![], e)),
    );
    let pred = SubcategoryPredicate::QuasiEquations(qeqs);
    // evaluate once up front so unknown operations surface as input errors
    input(&name, pred.holds(&universe.member(0).algebra))?;
    let refl = Reflector::from_predicate(universe, &name, &pred)?;
    Ok(closure_from_reflector(&refl)?)
}
