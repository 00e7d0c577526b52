use std::path::Path;

use closure_form::algebra::json;
use closure_form::form::{image_congruence, lifts, preimage_congruence};
use closure_form::instances::{self, CorpusKind};
use closure_form::reflection::{
    antitone_check, birkhoff_check, closed_under_quotients, reflector_from_closure,
    roundtrip_closure, roundtrip_reflector,
};
use closure_form::{CongruenceLattice, Error, FiniteAlgebra, SubcategoryPredicate, Verdict};
use serde_json::{json, Value};

use crate::{input, Failure, Morphism, Outcome, Source};

fn witness(v: &Verdict) -> Value {
    v.witness()
        .map(|w| serde_json::to_value(w).expect("serializable"))
        .unwrap_or(Value::Null)
}

fn checked_congruence(
    alg: &FiniteAlgebra,
    text: &str,
    flag: &str,
) -> Result<closure_form::Congruence, Failure> {
    let r = input::congruence(text, alg.size())?;
    if let Some((op, a, b)) = alg.compatibility_witness(&r) {
        let name = alg.signature().name(op);
        return Err(Failure::Input(format!(
            "{flag} {r} is not a congruence: `{name}` at {a:?} and {b:?} gives unrelated results"
        )));
    }
    Ok(r)
}

pub fn validate(path: &Path) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    match json::algebra_from_str(&text) {
        Ok(alg) => {
            let tag = alg.tag().map(|t| t.to_string());
            let value = json!({
                "valid": true,
                "size": alg.size(),
                "tag": tag,
                "algebra": json::algebra_to_value(&alg),
            });
            Ok(Outcome::pass(
                value,
                format!("valid algebra of size {}", alg.size()),
            ))
        }
        Err(Error::AxiomViolation { axiom, assignment }) => {
            let value = json!({ "valid": false, "axiom": axiom, "assignment": assignment });
            Ok(Outcome::verdict(
                value,
                format!("axiom `{axiom}` fails at {assignment:?}"),
                false,
            ))
        }
        Err(e) => Err(Failure::Input(format!("{}: {e}", path.display()))),
    }
}

pub fn con_lattice(path: &Path) -> Result<Outcome, Failure> {
    let alg = input::algebra(path)?;
    let lat = CongruenceLattice::of(&alg);
    let covers: Vec<[usize; 2]> = lat.covers().into_iter().map(|(a, b)| [a, b]).collect();
    let value = json!({
        "size": alg.size(),
        "count": lat.len(),
        "congruences": lat.elements(),
        "covers": covers,
    });
    Ok(Outcome::pass(value, format!("{} congruences", lat.len())))
}

pub fn close(operator: &str, path: &Path, congruence: &str) -> Result<Outcome, Failure> {
    let u = input::universe(&Source {
        algebra: Some(path.to_path_buf()),
        ..Source::default()
    })?;
    let op = input::operator(operator, &u)?;
    let x = u
        .find(&input::name_of(path))
        .expect("seed algebra is a member");
    let r = checked_congruence(&u.member(x).algebra, congruence, "--congruence")?;
    let closed = op.apply(x, &r)?;
    let value = serde_json::to_value(closed).expect("serializable");
    Ok(Outcome::pass(
        value,
        format!("{}: {r} closes to {closed}", op.name()),
    ))
}

pub fn lift(m: &Morphism, congruence: &str, target: &str) -> Result<Outcome, Failure> {
    let f = input::morphism(m)?;
    let r = checked_congruence(f.dom(), congruence, "--congruence")?;
    let s = checked_congruence(f.cod(), target, "--target")?;
    let holds = lifts(&f, &r, &s)?;
    Ok(Outcome::pass(
        json!({ "lifts": holds }),
        format!("lifts: {holds}"),
    ))
}

pub fn push(m: &Morphism, congruence: &str) -> Result<Outcome, Failure> {
    let f = input::morphism(m)?;
    let r = checked_congruence(f.dom(), congruence, "--congruence")?;
    let image = image_congruence(&f, &r).map_err(|e| match e {
        Error::NotInE => Failure::Input(
            "--map is not surjective; images are taken along surjections only".into(),
        ),
        e => Failure::Check(e),
    })?;
    Ok(Outcome::pass(
        serde_json::to_value(&image).expect("serializable"),
        format!("image {image}"),
    ))
}

pub fn pull(m: &Morphism, target: &str) -> Result<Outcome, Failure> {
    let f = input::morphism(m)?;
    let s = checked_congruence(f.cod(), target, "--target")?;
    let pre = preimage_congruence(&f, &s)?;
    Ok(Outcome::pass(
        serde_json::to_value(&pre).expect("serializable"),
        format!("preimage {pre}"),
    ))
}

pub fn reflect(operator: &str, source: &Source) -> Result<Outcome, Failure> {
    let u = input::universe(source)?;
    let op = input::operator(operator, &u)?;
    let refl = reflector_from_closure(&op)?;
    let members: Vec<Value> = u
        .members()
        .iter()
        .map(|m| {
            let (l, unit) = refl.reflect(m.index);
            json!({
                "id": m.name,
                "member": refl.is_member(m.index),
                "rho": refl.rho(m.index),
                "reflection": json::algebra_to_value(&l),
                "unit": unit.map(),
            })
        })
        .collect();
    let inside = (0..u.len()).filter(|&x| refl.is_member(x)).count();
    let value = json!({ "operator": op.name(), "algebras": members });
    Ok(Outcome::pass(
        value,
        format!("{inside} of {} algebras in the subcategory", u.len()),
    ))
}

pub fn check_operator(operator: &str, source: &Source) -> Result<Outcome, Failure> {
    let u = input::universe(source)?;
    let op = match input::operator(operator, &u) {
        Ok(op) => op,
        Err(Failure::Check(e)) => {
            if let Some(report) = closure_form::OperatorReport::rejected(operator, &e) {
                let value = serde_json::to_value(&report).expect("serializable");
                return Ok(Outcome::verdict(
                    value,
                    format!("{operator} is not a closure operator"),
                    false,
                ));
            }
            return Err(Failure::Check(e));
        }
        Err(e) => return Err(e),
    };
    let report = op.report();
    let flags = [
        ("idempotent", report.idempotent),
        ("cohereditary", report.cohereditary),
        ("minimal", report.minimal),
        ("preserves pushouts", report.preserves_pushouts),
    ];
    let summary = flags
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let value = serde_json::to_value(&report).expect("serializable");
    Ok(Outcome::pass(
        value,
        format!("{}: closure operator; {summary}", op.name()),
    ))
}

pub fn roundtrip(operator: &str, source: &Source) -> Result<Outcome, Failure> {
    let u = input::universe(source)?;
    let op = input::operator(operator, &u)?;
    let closure = roundtrip_closure(&op)?;
    let reflector = roundtrip_reflector(&reflector_from_closure(&op)?)?;
    let pass = closure.holds() && reflector.holds();
    let value = json!({
        "operator": op.name(),
        "closure_roundtrip": closure.holds(),
        "reflector_roundtrip": reflector.holds(),
        "witnesses": { "closure": witness(&closure), "reflector": witness(&reflector) },
    });
    Ok(Outcome::verdict(
        value,
        format!(
            "{}: round-trips {}",
            op.name(),
            if pass { "hold" } else { "fail" }
        ),
        pass,
    ))
}

pub fn birkhoff(operator: &str, source: &Source) -> Result<Outcome, Failure> {
    let u = input::universe(source)?;
    let op = input::operator(operator, &u)?;
    let minimal = op.is_minimal();
    let closed = closed_under_quotients(&SubcategoryPredicate::Operator(&op), &u)?;
    let agree = birkhoff_check(&op)?;
    let value = json!({
        "operator": op.name(),
        "minimal": minimal.holds(),
        "closed_under_quotients": closed.holds(),
        "agree": agree.holds(),
        "witnesses": { "minimal": witness(&minimal), "closed_under_quotients": witness(&closed) },
    });
    let summary = format!(
        "{}: minimal={} closed under quotients={}",
        op.name(),
        minimal.holds(),
        closed.holds()
    );
    Ok(Outcome::verdict(value, summary, agree.holds()))
}

pub fn antitone(operators: &[String], source: &Source) -> Result<Outcome, Failure> {
    let [first, second] = operators else {
        return Err(Failure::Input(
            "antitone takes --operator exactly twice".into(),
        ));
    };
    let u = input::universe(source)?;
    let c1 = input::operator(first, &u)?;
    let c2 = input::operator(second, &u)?;
    let leq = c1.leq(&c2)?;
    let included = (0..u.len()).all(|x| !c2.is_closed_at_bottom(x) || c1.is_closed_at_bottom(x));
    let check = antitone_check(&c1, &c2)?;
    let value = json!({
        "c1": c1.name(),
        "c2": c2.name(),
        "leq": leq.holds(),
        "subcategory_of_c2_inside_c1": included,
        "consistent": check.holds(),
        "witness": witness(&check),
    });
    let summary = format!(
        "{} <= {}: {}; reverse inclusion: {included}",
        c1.name(),
        c2.name(),
        leq.holds()
    );
    Ok(Outcome::verdict(value, summary, check.holds()))
}

pub fn corpus(kind: CorpusKind, max_size: usize) -> Result<Outcome, Failure> {
    let u = instances::corpus(kind, max_size).map_err(|e| Failure::Input(e.to_string()))?;
    let value = instances::corpus::manifest(kind, max_size, &u);
    Ok(Outcome::pass(
        value,
        format!("{} {kind} of size at most {max_size}", u.len()),
    ))
}
