use std::sync::Arc;

use closure_form::closure::all_operators;
use closure_form::form::preimage_congruence;
use closure_form::instances::{self, CorpusKind};
use closure_form::reflection::{
    antitone_check, birkhoff_check, oracle_reflection, reflector_from_closure, roundtrip_closure,
    roundtrip_reflector,
};
use closure_form::{ClosureOperator, Homomorphism, Reflector, Universe, Verdict, Witness};
use serde::Serialize;
use serde_json::json;

use crate::{Failure, Outcome};

/// Micro-universes whose extensive tables outnumber this are skipped.
const ENUMERATION_LIMIT: usize = 20_000;

#[derive(Serialize)]
struct Theorem {
    name: &'static str,
    pass: bool,
    checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl Theorem {
    fn new(name: &'static str) -> Self {
        Theorem {
            name,
            pass: true,
            checked: 0,
            note: None,
            witness: None,
        }
    }

    fn record(&mut self, v: Verdict) {
        self.checked += 1;
        if let Verdict::Fails(w) = v {
            if self.pass {
                self.witness = Some(*w);
            }
            self.pass = false;
        }
    }

    fn fail(&mut self, w: Witness) {
        self.record(Verdict::Fails(Box::new(w)));
    }
}

fn micro_operators(u: &Universe) -> Result<(Vec<ClosureOperator>, usize), Failure> {
    let mut ops = Vec::new();
    let mut skipped = 0;
    for m in u.members() {
        let micro = Universe::quotient_closure(vec![(m.name.clone(), (*m.algebra).clone())])?;
        match all_operators(&micro, ENUMERATION_LIMIT) {
            Ok(found) => ops.extend(
                found
                    .into_iter()
                    .filter(|op| op.is_idempotent().holds() && op.is_cohereditary().holds())
                    .map(|op| {
                        let name = format!("{} on Q({})", op.name(), m.name);
                        op.renamed(&name)
                    }),
            ),
            Err(closure_form::Error::SizeTooLarge { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok((ops, skipped))
}

pub fn verify_all(kind: CorpusKind, max_size: usize) -> Result<Outcome, Failure> {
    let u: Arc<Universe> =
        instances::corpus(kind, max_size).map_err(|e| Failure::Input(e.to_string()))?;
    let names = instances::operators_for(kind);
    let builtins = names
        .iter()
        .map(|n| instances::operator_by_name(&u, n))
        .collect::<closure_form::Result<Vec<_>>>()?;

    let mut axioms = Theorem::new("operator axioms");
    for op in &builtins {
        axioms.record(op.is_monotone());
        axioms.record(op.is_idempotent());
        axioms.record(op.is_cohereditary());
    }

    let (micro, skipped) = micro_operators(&u)?;
    let mut lemma = Theorem::new("minimal iff preserves pushouts");
    for op in builtins.iter().chain(&micro) {
        let (minimal, pushes) = (op.is_minimal(), op.preserves_cocartesian());
        if minimal.holds() == pushes.holds() {
            lemma.record(Verdict::Holds);
        } else {
            let w = minimal
                .witness()
                .or(pushes.witness())
                .cloned()
                .expect("one side fails");
            lemma.fail(w);
        }
    }
    if skipped > 0 {
        lemma.note = Some(format!("{skipped} micro-universes too large to enumerate"));
    }

    let mut roundtrips = Theorem::new("closure/reflector round-trips");
    for op in &builtins {
        roundtrips.record(roundtrip_closure(op)?);
        roundtrips.record(roundtrip_reflector(&reflector_from_closure(op)?)?);
    }

    let mut birkhoff = Theorem::new("minimal iff closed under quotients");
    for op in builtins.iter().chain(&micro) {
        birkhoff.record(birkhoff_check(op)?);
    }

    let mut antitone = Theorem::new("antitone order");
    for a in &builtins {
        for b in &builtins {
            antitone.record(antitone_check(a, b)?);
        }
    }

    let mut oracle = Theorem::new("oracle agreement");
    for op in &builtins {
        let pred = instances::defining_predicate(op.name()).expect("built-in predicate");
        let refl = Reflector::from_predicate(&u, op.name(), &pred)?;
        for m in u.members() {
            if refl.rho(m.index) != op.closure_of_bottom(m.index) {
                oracle.fail(
                    Witness::new("oracle reflection", &m.name)
                        .with("C(Δ)", op.closure_of_bottom(m.index))
                        .with("oracle", refl.rho(m.index)),
                );
                continue;
            }
            for r in m.lattice.elements() {
                let (q, proj) = Homomorphism::quotient(&m.algebra, r);
                let expected = preimage_congruence(&proj, &oracle_reflection(&q, &pred)?)?;
                let got = op.apply(m.index, r)?;
                if *got == expected {
                    oracle.record(Verdict::Holds);
                } else {
                    oracle.fail(
                        Witness::new(&format!("{} agrees with oracle", op.name()), &m.name)
                            .with("R", r)
                            .with("C(R)", got)
                            .with("oracle", &expected),
                    );
                }
            }
        }
    }

    let theorems = [axioms, lemma, roundtrips, birkhoff, antitone, oracle];
    let pass = theorems.iter().all(|t| t.pass);
    let mut summary = String::new();
    for t in &theorems {
        let status = if t.pass { "PASS" } else { "FAIL" };
        summary.push_str(&format!("{status} {} ({} checks)\n", t.name, t.checked));
    }
    summary.push_str(&format!(
        "{} {kind} up to size {max_size}, {} operators, {} enumerated micro-operators: {}",
        u.len(),
        builtins.len(),
        micro.len(),
        if pass { "all checks pass" } else { "failures" }
    ));
    let value = json!({
        "corpus": kind,
        "max_size": max_size,
        "algebras": u.len(),
        "operators": names,
        "micro_operators": micro.len(),
        "theorems": theorems,
        "pass": pass,
    });
    Ok(Outcome::verdict(value, summary, pass))
}
