//! Finite groups in the `mul/inv/e` signature, their commutator
//! congruences, and the abelianization closure operators.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::algebra::{Congruence, FiniteAlgebra, Variety};
use crate::closure::{ClosureOperator, Universe};
use crate::error::{Error, Result};

/// Builds a group from a multiplication on `{0..n-1}` with identity 0.
pub fn from_mul(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteAlgebra> {
    let table: Vec<usize> = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    let inv: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap_or(0))
        .collect();
    let sig = Variety::Group.signature();
    FiniteAlgebra::new(n, sig, vec![table, inv, vec![0]], Some(Variety::Group))
}

/// Builds a group from explicit elements; `elements[0]` must be the identity.
fn from_elements<T: Clone + Eq + Hash>(
    elements: Vec<T>,
    mul: impl Fn(&T, &T) -> T,
) -> FiniteAlgebra {
    let index: HashMap<T, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    from_mul(elements.len(), |a, b| {
        index[&mul(&elements[a], &elements[b])]
    })
    .expect("constructed group satisfies the axioms")
}

pub fn cyclic(n: usize) -> FiniteAlgebra {
    from_mul(n, |a, b| (a + b) % n).expect("cyclic group")
}

pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    let (na, nb) = (a.size(), b.size());
    from_mul(na * nb, |x, y| {
        a.apply(0, &[x / nb, y / nb]) * nb + b.apply(0, &[x % nb, y % nb])
    })
    .expect("product of groups")
}

/// Symmetries of the regular `n`-gon, order `2n`; `(k, s)` means `r^k s^s`.
pub fn dihedral(n: usize) -> FiniteAlgebra {
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..n).map(move |k| (k, s))).collect();
    from_elements(elements, |&(k1, s1), &(k2, s2)| {
        let k = if s1 == 0 {
            (k1 + k2) % n
        } else {
            (k1 + n - k2) % n
        };
        (k, s1 ^ s2)
    })
}

/// `⟨a, x | a^{2n}, x² = a^n, x a x⁻¹ = a⁻¹⟩`, order `4n`; `n = 2` is Q8.
pub fn dicyclic(n: usize) -> FiniteAlgebra {
    let m = 2 * n;
    let elements: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..m).map(move |k| (k, s))).collect();
    from_elements(elements, |&(k1, s1), &(k2, s2)| match (s1, s2) {
        (0, s) => ((k1 + k2) % m, s),
        (1, 0) => ((k1 + m - k2) % m, 1),
        _ => ((k1 + m - k2 + n) % m, 0),
    })
}

pub fn symmetric3() -> FiniteAlgebra {
    dihedral(3)
}

pub fn klein() -> FiniteAlgebra {
    product(&cyclic(2), &cyclic(2))
}

/// Even permutations of four points.
pub fn alternating4() -> FiniteAlgebra {
    let compose =
        |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
    let gens = [vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
    let mut elements = vec![vec![0, 1, 2, 3]];
    let mut i = 0;
    while i < elements.len() {
        for g in &gens {
            let next = compose(&elements[i], g);
            if !elements.contains(&next) {
                elements.push(next);
            }
        }
        i += 1;
    }
    from_elements(elements, compose)
}

/// Every group of order at most 12, one per isomorphism class, with names.
pub fn families(max_order: usize) -> Vec<(String, FiniteAlgebra)> {
    let mut out: Vec<(String, FiniteAlgebra)> = Vec::new();
    let mut push = |name: &str, g: FiniteAlgebra| {
        if g.size() <= max_order {
            out.push((name.to_string(), g));
        }
    };
    for n in 1..=12 {
        push(&format!("Z{n}"), cyclic(n));
    }
    push("Z2xZ2", klein());
    push("S3", symmetric3());
    push("Z4xZ2", product(&cyclic(4), &cyclic(2)));
    push("Z2xZ2xZ2", product(&klein(), &cyclic(2)));
    push("Dih4", dihedral(4));
    push("Q8", dicyclic(2));
    push("Z3xZ3", product(&cyclic(3), &cyclic(3)));
    push("Dih5", dihedral(5));
    push("Z6xZ2", product(&cyclic(6), &cyclic(2)));
    push("Dih6", dihedral(6));
    push("A4", alternating4());
    push("Dic3", dicyclic(3));
    out.sort_by_key(|(_, g)| g.size());
    out
}

struct GroupOps {
    mul: usize,
    inv: usize,
    e: usize,
}

fn group_ops(name: &str, alg: &FiniteAlgebra) -> Result<GroupOps> {
    if alg.tag() != Some(Variety::Group) {
        return Err(Error::NotGroup(name.to_string()));
    }
    Ok(GroupOps {
        mul: alg.op_index("mul")?,
        inv: alg.op_index("inv")?,
        e: alg.op_index("e")?,
    })
}

/// The coset congruence of the subgroup generated by all commutators.
pub fn commutator_congruence(alg: &FiniteAlgebra) -> Result<Congruence> {
    let ops = group_ops("algebra", alg)?;
    let n = alg.size();
    let mul = |a, b| alg.apply(ops.mul, &[a, b]);
    let inv = |a| alg.apply(ops.inv, &[a]);
    let mut inside = vec![false; n];
    inside[alg.apply(ops.e, &[])] = true;
    let mut frontier = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = mul(mul(a, b), mul(inv(a), inv(b)));
            if !inside[c] {
                inside[c] = true;
                frontier.push(c);
            }
        }
    }
    // close under products; finite, so this is the generated subgroup
    while let Some(c) = frontier.pop() {
        for d in 0..n {
            if !inside[d] {
                continue;
            }
            for p in [mul(c, d), mul(d, c)] {
                if !inside[p] {
                    inside[p] = true;
                    frontier.push(p);
                }
            }
        }
    }
    Ok(coset_congruence(alg, &ops, &inside))
}

fn coset_congruence(alg: &FiniteAlgebra, ops: &GroupOps, subgroup: &[bool]) -> Congruence {
    let n = alg.size();
    let labels: Vec<usize> = (0..n)
        .map(|a| {
            let ia = alg.apply(ops.inv, &[a]);
            (0..n)
                .find(|&b| subgroup[alg.apply(ops.mul, &[ia, b])])
                .unwrap()
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// Kernel of `X → X/[X,X]X²`, the largest elementary abelian 2-quotient.
pub fn exponent_two_congruence(alg: &FiniteAlgebra) -> Result<Congruence> {
    let ops = group_ops("algebra", alg)?;
    let n = alg.size();
    let e = alg.apply(ops.e, &[]);
    let mut pairs = Vec::new();
    for a in 0..n {
        pairs.push((alg.apply(ops.mul, &[a, a]), e));
        for b in 0..n {
            pairs.push((alg.apply(ops.mul, &[a, b]), alg.apply(ops.mul, &[b, a])));
        }
    }
    Ok(alg.generated_congruence(&pairs))
}

fn join_operator(
    universe: &Arc<Universe>,
    name: &str,
    kernel: fn(&FiniteAlgebra) -> Result<Congruence>,
) -> Result<ClosureOperator> {
    let gammas = universe
        .members()
        .iter()
        .map(|m| {
            group_ops(&m.name, &m.algebra)?;
            kernel(&m.algebra)
        })
        .collect::<Result<Vec<_>>>()?;
    ClosureOperator::from_rule(universe, name, |m, r| r.join(&gammas[m.index]))
}

/// `C(R) = R ∨ γ_X` with `γ_X` the commutator congruence.
pub fn abelianization_operator(universe: &Arc<Universe>) -> Result<ClosureOperator> {
    join_operator(universe, "abelianization", commutator_congruence)
}

pub fn exponent_two_operator(universe: &Arc<Universe>) -> Result<ClosureOperator> {
    join_operator(
        universe,
        "exponent-2-abelianization",
        exponent_two_congruence,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        let fams = families(12);
        assert_eq!(fams.len(), 24);
        assert_eq!(families(8).len(), 14);
        let names: Vec<String> = families(4).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, vec!["Z1", "Z2", "Z3", "Z4", "Z2xZ2"]);
    }

    #[test]
    fn q8_and_a4_shapes() {
        let q8 = dicyclic(2);
        // exactly one element of order 2
        let squares_to_e = (1..8).filter(|&a| q8.apply(0, &[a, a]) == 0).count();
        assert_eq!(squares_to_e, 1);
        assert_eq!(alternating4().size(), 12);
    }

    #[test]
    fn commutators() {
        let s3 = symmetric3();
        let gamma = commutator_congruence(&s3).unwrap();
        // rotations {0,1,2} vs reflections {3,4,5}
        assert_eq!(gamma.blocks(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(commutator_congruence(&cyclic(4)).unwrap().is_identity());
        assert_eq!(commutator_congruence(&dihedral(4)).unwrap().num_blocks(), 4);
        assert_eq!(
            commutator_congruence(&alternating4()).unwrap().num_blocks(),
            3
        );
    }

    #[test]
    fn exponent_two_kernels() {
        assert_eq!(exponent_two_congruence(&cyclic(4)).unwrap().num_blocks(), 2);
        assert!(exponent_two_congruence(&cyclic(3)).unwrap().is_total());
        assert!(exponent_two_congruence(&klein()).unwrap().is_identity());
    }
}
