mod common;

use std::sync::Arc;

use closure_form::instances::rngs::{congruence_of_ideal, ideal_of_congruence, nilradical, Ideal};
use closure_form::instances::{corpus, groups, quandles, rngs, CorpusKind};
use closure_form::reflection::{
    closed_under_quotients, membership, oracle_reflection, reflector_from_closure,
};
use closure_form::{ClosureOperator, Congruence, Equation, SubcategoryPredicate, Term, Universe};

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

#[test]
fn ideal_bridge_round_trips_on_every_ideal() {
    let u = corpus(CorpusKind::Rngs, 12).unwrap();
    for m in u.members() {
        let a = &m.algebra;
        let ideals: Vec<Ideal> = subsets(a.size())
            .filter_map(|s| Ideal::new(a, s).ok())
            .collect();
        // Z/n has one ideal per divisor of n, and as many congruences
        assert_eq!(ideals.len(), m.lattice.len(), "{}", m.name);
        for ideal in &ideals {
            let r = congruence_of_ideal(a, ideal).unwrap();
            assert_eq!(&ideal_of_congruence(a, &r).unwrap(), ideal);
        }
        for r in m.lattice.elements() {
            let back = congruence_of_ideal(a, &ideal_of_congruence(a, r).unwrap()).unwrap();
            assert_eq!(&back, r);
        }
    }
}

#[test]
fn ideal_bridge_preserves_order_meets_and_joins() {
    let u = corpus(CorpusKind::Rngs, 12).unwrap();
    for m in u.members() {
        let a = &m.algebra;
        for r in m.lattice.elements() {
            let i = ideal_of_congruence(a, r).unwrap();
            for s in m.lattice.elements() {
                let j = ideal_of_congruence(a, s).unwrap();
                let subset = i.elements().iter().all(|&x| j.contains(x));
                assert_eq!(r.leq(s), subset);
                let meet = ideal_of_congruence(a, &r.meet(s).unwrap()).unwrap();
                let both: Vec<usize> = i
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&x| j.contains(x))
                    .collect();
                assert_eq!(meet.elements(), &both[..]);
                // I + J
                let add = a.op_index("add").unwrap();
                let mut sums: Vec<usize> = i
                    .elements()
                    .iter()
                    .flat_map(|&x| j.elements().iter().map(move |&y| a.apply(add, &[x, y])))
                    .collect();
                sums.sort_unstable();
                sums.dedup();
                let join = ideal_of_congruence(a, &r.join(s).unwrap()).unwrap();
                assert_eq!(join.elements(), &sums[..]);
            }
        }
    }
}

#[test]
fn nilradical_matches_power_iteration() {
    let u = corpus(CorpusKind::Rngs, 12).unwrap();
    for m in u.members() {
        let a = &m.algebra;
        let mul = a.op_index("mul").unwrap();
        for r in m.lattice.elements() {
            let i = ideal_of_congruence(a, r).unwrap();
            let expected: Vec<usize> = (0..a.size())
                .filter(|&x| common::powers(a, mul, x).iter().any(|&p| i.contains(p)))
                .collect();
            let root = nilradical(a, &i).unwrap();
            assert_eq!(root.elements(), &expected[..], "{} {r}", m.name);
            assert_eq!(nilradical(a, &root).unwrap(), root);
            assert!(i.elements().iter().all(|&x| root.contains(x)));
        }
    }
}

#[test]
fn nilradical_examples() {
    let z8 = rngs::zn(8);
    let zero = Ideal::new(&z8, vec![0]).unwrap();
    assert_eq!(nilradical(&z8, &zero).unwrap().elements(), &[0, 2, 4, 6]);
    let z6 = rngs::zn(6);
    assert_eq!(
        nilradical(&z6, &Ideal::new(&z6, vec![0]).unwrap())
            .unwrap()
            .elements(),
        &[0]
    );

    let u = Universe::new(vec![("Z4".into(), rngs::zn(4)), ("Z6".into(), rngs::zn(6))]).unwrap();
    let op = rngs::nilradical_operator(&u).unwrap();
    assert_eq!(
        op.closure_of_bottom(0).blocks(),
        vec![vec![0, 2], vec![1, 3]]
    );
    assert!(op.closure_of_bottom(1).is_identity());
    assert!(op.apply(0, &Congruence::total(4)).unwrap().is_total());
    assert!(op.apply(1, &Congruence::total(6)).unwrap().is_total());
}

#[test]
fn nilradical_operator_is_idempotent_and_its_reflector_is_the_root_of_zero() {
    let u = corpus(CorpusKind::Rngs, 12).unwrap();
    let op = rngs::nilradical_operator(&u).unwrap();
    assert!(op.is_idempotent().holds());
    let refl = reflector_from_closure(&op).unwrap();
    for m in u.members() {
        let a = &m.algebra;
        let root = nilradical(a, &Ideal::new(a, vec![0]).unwrap()).unwrap();
        assert_eq!(refl.rho(m.index), &congruence_of_ideal(a, &root).unwrap());
    }
    // Z4 is not reduced
    let z4 = u.find("Z4").unwrap();
    assert!(!membership(&op, z4));
    assert!(membership(&op, u.find("Z6").unwrap()));
}

#[test]
fn nilradical_minimality_observed_on_the_corpus() {
    // quotients of squarefree Z/n are squarefree, so the reduced members are
    // closed under quotients here
    let u = corpus(CorpusKind::Rngs, 24).unwrap();
    let op = rngs::nilradical_operator(&u).unwrap();
    assert!(op.is_minimal().holds());
    assert!(op.is_cohereditary().holds());
}

#[test]
fn z8_oracle_reflection_for_reduced_rngs() {
    let x = Term::var(0);
    let zero = Term::constant("zero");
    let pred = SubcategoryPredicate::QuasiEquations(vec![closure_form::QuasiEquation::new(
        vec![Equation::new(
            Term::binary("mul", x.clone(), x.clone()),
            zero.clone(),
        )],
        Equation::new(x, zero),
    )]);
    let rho = oracle_reflection(&Arc::new(rngs::zn(8)), &pred).unwrap();
    assert_eq!(rho.blocks(), vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
}

#[test]
fn reachability_is_orbit_closure() {
    let u = corpus(CorpusKind::Quandles, 4).unwrap();
    for m in u.members() {
        let a = &m.algebra;
        let n = a.size();
        let sim = quandles::reachability(a).unwrap();
        // breadth-first search along x ↦ x ◁ b and x ↦ x ◁⁻¹ b
        for start in 0..n {
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for b in 0..n {
                    for op in 0..2 {
                        let y = a.apply(op, &[x, b]);
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            for (y, &reached) in seen.iter().enumerate() {
                assert_eq!(sim.related(start, y), reached);
            }
        }
        let trivial = (0..n).all(|x| (0..n).all(|y| a.apply(0, &[x, y]) == x));
        assert_eq!(sim.is_identity(), trivial, "{}", m.name);
    }
}

#[test]
fn quandle_operator_examples() {
    let u = Universe::new(vec![
        ("R3".into(), quandles::dihedral(3)),
        ("T3".into(), quandles::trivial(3)),
        ("T1".into(), quandles::trivial(1)),
    ])
    .unwrap();
    let op = quandles::quandle_closure_operator(&u).unwrap();
    assert!(op.closure_of_bottom(0).is_total());
    assert!(op.closure_of_bottom(1).is_identity());
    assert!(membership(&op, 1));
    for m in u.members() {
        let sim = quandles::reachability(&m.algebra).unwrap();
        assert_eq!(op.closure_of_bottom(m.index), &sim);
        assert!(op
            .apply(m.index, &Congruence::total(m.algebra.size()))
            .unwrap()
            .is_total());
    }
}

#[test]
fn quandle_composite_is_a_congruence_everywhere() {
    let u = corpus(CorpusKind::Quandles, 4).unwrap();
    let op = quandles::quandle_closure_operator(&u).unwrap();
    for m in u.members() {
        let sim = quandles::reachability(&m.algebra).unwrap();
        for r in m.lattice.elements() {
            let c = op.apply(m.index, r).unwrap();
            let composite = quandles::compose(&m.algebra, r, &sim).unwrap();
            assert_eq!(c, &composite);
            assert_eq!(c, &r.join(&sim).unwrap());
        }
    }
    let trivial = SubcategoryPredicate::custom("trivial", |a| {
        let n = a.size();
        (0..n).all(|x| (0..n).all(|y| a.apply(0, &[x, y]) == x))
    });
    assert!(closed_under_quotients(&trivial, &u).unwrap().holds());
}

#[test]
fn commutator_subgroup_of_s3_by_brute_force() {
    let s3 = groups::symmetric3();
    let n = s3.size();
    let inv = |a: usize| (0..n).find(|&b| s3.apply(0, &[a, b]) == 0).unwrap();
    // the commutator subgroup of S3 is generated by, and here equal to, the set of commutators
    let commutators: Vec<usize> = {
        let mut c: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| s3.apply(0, &[s3.apply(0, &[a, b]), s3.apply(0, &[inv(a), inv(b)])]))
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    assert_eq!(commutators.len(), 3);
    let u = Universe::quotient_closure(vec![("S3".into(), s3.clone())]).unwrap();
    let op = groups::abelianization_operator(&u).unwrap();
    let gamma = op.closure_of_bottom(u.find("S3").unwrap());
    let zero_block: Vec<usize> = (0..n).filter(|&a| gamma.related(0, a)).collect();
    assert_eq!(zero_block, commutators);
    assert_eq!(gamma.num_blocks(), 2);
    assert!(op.is_minimal().holds());
}

#[test]
fn abelianization_is_identity_on_abelian_groups() {
    let u = Universe::quotient_closure(vec![("Z4".into(), groups::cyclic(4))]).unwrap();
    let op = groups::abelianization_operator(&u).unwrap();
    assert_eq!(op, ClosureOperator::identity(&u));
    let g = corpus(CorpusKind::Groups, 8).unwrap();
    let op = groups::abelianization_operator(&g).unwrap();
    for m in g.members() {
        assert!(op
            .apply(m.index, &Congruence::total(m.algebra.size()))
            .unwrap()
            .is_total());
    }
    assert!(op.is_minimal().holds());
}

#[test]
fn wrong_variety_is_rejected() {
    let groups_u = Universe::quotient_closure(vec![("Z2".into(), groups::cyclic(2))]).unwrap();
    assert!(matches!(
        rngs::nilradical_operator(&groups_u),
        Err(closure_form::Error::NotRng(_))
    ));
    assert!(matches!(
        quandles::quandle_closure_operator(&groups_u),
        Err(closure_form::Error::NotQuandle(_))
    ));
    let rngs_u = Universe::quotient_closure(vec![("Z2".into(), rngs::zn(2))]).unwrap();
    assert!(matches!(
        groups::abelianization_operator(&rngs_u),
        Err(closure_form::Error::NotGroup(_))
    ));
}

#[test]
fn corpus_examples() {
    assert_eq!(corpus(CorpusKind::Quandles, 3).unwrap().len(), 5);
    let g = corpus(CorpusKind::Groups, 4).unwrap();
    for name in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2"] {
        assert!(g.find(name).is_some(), "{name}");
    }
    let r = corpus(CorpusKind::Rngs, 8).unwrap();
    assert_eq!(r.len(), 8);
    assert!(r.is_quotient_closed());
    // exhaustive and family-based group corpora agree up to order 6
    assert_eq!(
        corpus(CorpusKind::Groups, 6).unwrap().len(),
        groups::families(6).len()
    );
    assert_eq!(corpus(CorpusKind::Groups, 12).unwrap().len(), 24);
}

#[test]
fn corpus_manifest_is_stable() {
    let u = corpus(CorpusKind::Groups, 4).unwrap();
    let a = closure_form::instances::corpus::manifest(CorpusKind::Groups, 4, &u);
    let b = closure_form::instances::corpus::manifest(
        CorpusKind::Groups,
        4,
        &corpus(CorpusKind::Groups, 4).unwrap(),
    );
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    let ids: Vec<&str> = a["algebras"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 5);
}
