use std::sync::Arc;

use closure_form::closure::all_operators;
use closure_form::instances::{corpus, groups, operator_by_name, quandles, rngs, CorpusKind};
use closure_form::reflection::{
    antitone_check, birkhoff_check, closed_under_quotients, closure_from_reflector, membership,
    oracle_reflection, reflector_from_closure, roundtrip_closure, roundtrip_reflector,
};
use closure_form::{
    ClosureOperator, Congruence, Equation, Error, Reflector, SubcategoryPredicate, Term, Universe,
};

fn commutative() -> SubcategoryPredicate<'static> {
    let (x, y) = (Term::var(0), Term::var(1));
    SubcategoryPredicate::Equations(vec![Equation::new(
        Term::binary("mul", x.clone(), y.clone()),
        Term::binary("mul", y, x),
    )])
}

fn s3_universe() -> Arc<Universe> {
    Universe::quotient_closure(vec![("S3".into(), groups::symmetric3())]).unwrap()
}

#[test]
fn abelian_reflection_of_s3() {
    let u = s3_universe();
    let refl = Reflector::from_predicate(&u, "abelian", &commutative()).unwrap();
    let c = closure_from_reflector(&refl).unwrap();
    let s3 = u.find("S3").unwrap();
    assert_eq!(
        c.closure_of_bottom(s3).blocks(),
        vec![vec![0, 1, 2], vec![3, 4, 5]]
    );
    for m in u.members() {
        if refl.is_member(m.index) {
            assert!(c.closure_of_bottom(m.index).is_identity());
        }
    }
    let direct = oracle_reflection(&Arc::new(groups::symmetric3()), &commutative()).unwrap();
    assert_eq!(&direct, c.closure_of_bottom(s3));
    assert!(
        oracle_reflection(&Arc::new(groups::cyclic(4)), &commutative())
            .unwrap()
            .is_identity()
    );
}

#[test]
fn terminal_and_identity_reflectors() {
    let u = corpus(CorpusKind::Groups, 6).unwrap();
    let terminal = reflector_from_closure(&ClosureOperator::total(&u)).unwrap();
    let c = closure_from_reflector(&terminal).unwrap();
    assert_eq!(c, ClosureOperator::total(&u));
    for m in u.members() {
        assert!(terminal.rho(m.index).is_total());
        for r in m.lattice.elements() {
            assert!(c.apply(m.index, r).unwrap().is_total());
        }
    }
    let identity = reflector_from_closure(&ClosureOperator::identity(&u)).unwrap();
    assert!((0..u.len()).all(|x| identity.is_member(x)));
    assert_eq!(
        closure_from_reflector(&identity).unwrap(),
        ClosureOperator::identity(&u)
    );
}

#[test]
fn membership_examples() {
    let q = Universe::quotient_closure(vec![("T3".into(), quandles::trivial(3))]).unwrap();
    let op = quandles::quandle_closure_operator(&q).unwrap();
    assert!(membership(&op, q.find("T3").unwrap()));

    let r = Universe::quotient_closure(vec![("Z4".into(), rngs::zn(4))]).unwrap();
    let op = rngs::nilradical_operator(&r).unwrap();
    assert!(!membership(&op, r.find("Z4").unwrap()));

    let one = r.members().iter().find(|m| m.algebra.size() == 1).unwrap();
    assert!(membership(&ClosureOperator::total(&r), one.index));
}

#[test]
fn closed_under_quotients_examples() {
    let g = corpus(CorpusKind::Groups, 8).unwrap();
    assert!(closed_under_quotients(&commutative(), &g).unwrap().holds());
    let small = SubcategoryPredicate::custom("size <= 2", |a| a.size() <= 2);
    assert!(closed_under_quotients(&small, &g).unwrap().holds());
    // groups of order 4 exactly: the quotient Z4 → Z2 leaves it
    let four = SubcategoryPredicate::custom("size = 4", |a| a.size() == 4);
    let verdict = closed_under_quotients(&four, &g).unwrap();
    let w = verdict.witness().expect("witness");
    assert_eq!(w.property, "closed under quotients");
    assert!(w.morphism.is_some());

    let not_closed = Universe::new(vec![("Z4".into(), groups::cyclic(4))]).unwrap();
    assert!(matches!(
        closed_under_quotients(&commutative(), &not_closed),
        Err(Error::UniverseNotQuotientClosed)
    ));
}

#[test]
fn non_reflective_predicate_is_reported() {
    // Z2 × Z2 has three quotients onto Z2 and no least one
    let small = SubcategoryPredicate::custom("size <= 2", |a| a.size() <= 2);
    let err = oracle_reflection(&Arc::new(groups::klein()), &small).unwrap_err();
    assert!(matches!(err, Error::NotReflective(_)));
}

#[test]
fn reflection_requires_quotient_closed_universe() {
    let u = Universe::new(vec![("Z4".into(), groups::cyclic(4))]).unwrap();
    assert!(!u.is_quotient_closed());
    assert!(matches!(
        Reflector::new(&u, "id", vec![Congruence::identity(4)]),
        Err(Error::UniverseNotQuotientClosed)
    ));
}

#[test]
fn invalid_reflection_kernels_rejected() {
    let u = Universe::quotient_closure(vec![("S3".into(), groups::symmetric3())]).unwrap();
    // keep S3, send Z2 to the point: the embeddings Z2 → S3 do not factor
    let rho: Vec<Congruence> = u
        .members()
        .iter()
        .map(|m| match m.algebra.size() {
            2 => Congruence::total(2),
            n => Congruence::identity(n),
        })
        .collect();
    assert!(matches!(
        Reflector::new(&u, "bad", rho),
        Err(Error::NotReflection(_))
    ));
}

#[test]
fn reflector_round_trips() {
    let r = corpus(CorpusKind::Rngs, 12).unwrap();
    assert!(roundtrip_closure(&rngs::nilradical_operator(&r).unwrap())
        .unwrap()
        .holds());
    let g = corpus(CorpusKind::Groups, 8).unwrap();
    let refl = Reflector::from_predicate(&g, "abelian", &commutative()).unwrap();
    assert!(roundtrip_reflector(&refl).unwrap().holds());
    assert_eq!(
        reflector_from_closure(&closure_from_reflector(&refl).unwrap()).unwrap(),
        refl
    );
    assert!(roundtrip_closure(&ClosureOperator::identity(&g))
        .unwrap()
        .holds());
}

#[test]
fn non_idempotent_operator_has_no_reflector() {
    // on Z8 as a group, sending R to the congruence one step up the chain
    let u = Universe::quotient_closure(vec![("Z8".into(), groups::cyclic(8))]).unwrap();
    let op = ClosureOperator::from_rule(&u, "step", |m, r| {
        let lat = &m.lattice;
        let i = lat.index_of(r).unwrap();
        // the chain is sorted with ∇ first
        Ok(lat.get(i.saturating_sub(1)).clone())
    })
    .unwrap();
    assert!(!op.is_idempotent().holds());
    assert!(matches!(
        reflector_from_closure(&op),
        Err(Error::NotIdempotent(_))
    ));
    assert!(matches!(op.strictify(), Err(Error::PreconditionFailed(_))));
}

#[test]
fn every_idempotent_cohereditary_operator_comes_from_a_reflection() {
    for seed in [
        groups::cyclic(4),
        groups::klein(),
        groups::cyclic(6),
        rngs::zn(4),
        rngs::zn(8),
        rngs::zn(6),
    ] {
        let u = Universe::quotient_closure(vec![("X".into(), seed)]).unwrap();
        for op in all_operators(&u, 1_000_000).unwrap() {
            if !op.is_idempotent().holds() || !op.is_cohereditary().holds() {
                continue;
            }
            let refl = reflector_from_closure(&op).unwrap();
            assert!(roundtrip_closure(&op).unwrap().holds());
            assert!(roundtrip_reflector(&refl).unwrap().holds());
            assert!(birkhoff_check(&op).unwrap().holds());
            assert_eq!(op.strictify().unwrap(), op);
        }
    }
}

#[test]
fn non_minimal_reflection_on_z4_rngs() {
    // {Z4, 0} is reflective among rngs (Z2 has no rng map into Z4 other than 0)
    // but not closed under the quotient Z4 → Z2
    let u = Universe::quotient_closure(vec![("Z4".into(), rngs::zn(4))]).unwrap();
    let pred = SubcategoryPredicate::custom("not Z2", |a| a.size() != 2);
    let refl = Reflector::from_predicate(&u, "not Z2", &pred).unwrap();
    let op = closure_from_reflector(&refl).unwrap();
    assert!(op.is_idempotent().holds() && op.is_cohereditary().holds());
    assert!(!op.is_minimal().holds());
    assert!(!op.preserves_cocartesian().holds());
    assert!(!closed_under_quotients(&pred, &u).unwrap().holds());
    assert!(birkhoff_check(&op).unwrap().holds());
    // the same subcategory is not reflective among groups: Z2 embeds in Z4
    let g = Universe::quotient_closure(vec![("Z4".into(), groups::cyclic(4))]).unwrap();
    assert!(Reflector::from_predicate(&g, "not Z2", &pred).is_err());
}

#[test]
fn antitone_on_all_built_in_pairs() {
    let g = corpus(CorpusKind::Groups, 12).unwrap();
    let names = [
        "identity",
        "total",
        "abelianization",
        "exponent-2-abelianization",
    ];
    let ops: Vec<ClosureOperator> = names
        .iter()
        .map(|n| operator_by_name(&g, n).unwrap())
        .collect();
    for a in &ops {
        for b in &ops {
            assert!(
                antitone_check(a, b).unwrap().holds(),
                "{} {}",
                a.name(),
                b.name()
            );
        }
    }
    let r = corpus(CorpusKind::Rngs, 12).unwrap();
    let ops: Vec<ClosureOperator> = ["identity", "total", "nilradical"]
        .iter()
        .map(|n| operator_by_name(&r, n).unwrap())
        .collect();
    for a in &ops {
        for b in &ops {
            assert!(antitone_check(a, b).unwrap().holds());
        }
    }
}

#[test]
fn oracle_agrees_with_reflector_from_closure() {
    let cases: Vec<(Arc<Universe>, &str, SubcategoryPredicate<'static>)> = vec![
        (
            corpus(CorpusKind::Groups, 12).unwrap(),
            "abelianization",
            commutative(),
        ),
        (
            corpus(CorpusKind::Quandles, 4).unwrap(),
            "trivial-quandle",
            SubcategoryPredicate::Equations(vec![Equation::new(
                Term::binary("lhd", Term::var(0), Term::var(1)),
                Term::var(0),
            )]),
        ),
    ];
    for (u, name, pred) in cases {
        let op = operator_by_name(&u, name).unwrap();
        let refl = reflector_from_closure(&op).unwrap();
        for m in u.members() {
            assert_eq!(
                &oracle_reflection(&m.algebra, &pred).unwrap(),
                refl.rho(m.index),
                "{}",
                m.name
            );
        }
        let via_operator =
            Reflector::from_predicate(&u, name, &SubcategoryPredicate::Operator(&op)).unwrap();
        assert_eq!(via_operator, refl);
    }
}

#[test]
fn exponent_two_sits_above_abelianization() {
    let g = corpus(CorpusKind::Groups, 12).unwrap();
    let ab = groups::abelianization_operator(&g).unwrap();
    let e2 = groups::exponent_two_operator(&g).unwrap();
    assert!(ab.leq(&e2).unwrap().holds());
    assert!(!e2.leq(&ab).unwrap().holds());
    assert!(e2.is_minimal().holds());
    // members of the exponent-2 subcategory are Z1, Z2, Z2xZ2, Z2xZ2xZ2
    let mut names: Vec<&str> = g
        .members()
        .iter()
        .filter(|m| e2.is_closed_at_bottom(m.index))
        .map(|m| m.name.as_str())
        .collect();
    names.sort();
    assert_eq!(names, ["Z1", "Z2", "Z2xZ2", "Z2xZ2xZ2"]);
}
