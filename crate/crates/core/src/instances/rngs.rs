//! Commutative rngs (rings without unit): ideals, the ideal/congruence
//! correspondence, and the nilradical closure operator.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Congruence, FiniteAlgebra, OpSymbol, Variety};
use crate::closure::{ClosureOperator, Universe};
use crate::error::{Error, Result};

/// `Z/n` with modular addition and multiplication.
pub fn zn(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fns(
        n,
        vec![
            (
                OpSymbol::new("add", 2),
                Box::new(move |a: &[usize]| (a[0] + a[1]) % n),
            ),
            (
                OpSymbol::new("neg", 1),
                Box::new(move |a: &[usize]| (n - a[0]) % n),
            ),
            (OpSymbol::new("zero", 0), Box::new(|_: &[usize]| 0)),
            (
                OpSymbol::new("mul", 2),
                Box::new(move |a: &[usize]| (a[0] * a[1]) % n),
            ),
        ],
        Some(Variety::CommutativeRng),
    )
    .expect("Z/n is a commutative rng")
}

struct RngOps {
    add: usize,
    neg: usize,
    zero: usize,
    mul: usize,
}

impl RngOps {
    fn of(alg: &FiniteAlgebra) -> Result<Self> {
        if alg.tag() != Some(Variety::CommutativeRng) {
            return Err(Error::NotRng("algebra".into()));
        }
        Ok(RngOps {
            add: alg.op_index("add")?,
            neg: alg.op_index("neg")?,
            zero: alg.apply(alg.op_index("zero")?, &[]),
            mul: alg.op_index("mul")?,
        })
    }
}

/// Sorted element list of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Ideal {
    elements: Vec<usize>,
}

impl Ideal {
    /// Checks: contains 0, closed under `+`, `-` and multiplication by anything.
    pub fn new(alg: &FiniteAlgebra, mut elements: Vec<usize>) -> Result<Self> {
        let ops = RngOps::of(alg)?;
        elements.sort_unstable();
        elements.dedup();
        let n = alg.size();
        let mut member = vec![false; n];
        for &a in &elements {
            if a >= n {
                return Err(Error::InvalidIdeal(format!("element {a} outside carrier")));
            }
            member[a] = true;
        }
        if !member[ops.zero] {
            return Err(Error::InvalidIdeal("missing zero".into()));
        }
        for &a in &elements {
            if !member[alg.apply(ops.neg, &[a])] {
                return Err(Error::InvalidIdeal(format!(
                    "not closed under negation at {a}"
                )));
            }
            for &b in &elements {
                if !member[alg.apply(ops.add, &[a, b])] {
                    return Err(Error::InvalidIdeal(format!(
                        "not closed under + at {a}, {b}"
                    )));
                }
            }
            for r in 0..n {
                if !member[alg.apply(ops.mul, &[r, a])] {
                    return Err(Error::InvalidIdeal(format!("not absorbing at {r}·{a}")));
                }
            }
        }
        Ok(Ideal { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}

/// The block of zero.
pub fn ideal_of_congruence(alg: &FiniteAlgebra, r: &Congruence) -> Result<Ideal> {
    let ops = RngOps::of(alg)?;
    let zero_block = r.block_of(ops.zero);
    let elements = (0..alg.size())
        .filter(|&a| r.block_of(a) == zero_block)
        .collect();
    Ok(Ideal { elements })
}

/// Additive cosets: `a ≡ b` iff `a - b ∈ I`.
pub fn congruence_of_ideal(alg: &FiniteAlgebra, ideal: &Ideal) -> Result<Congruence> {
    let ops = RngOps::of(alg)?;
    let n = alg.size();
    let labels: Vec<usize> = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| ideal.contains(alg.apply(ops.add, &[a, alg.apply(ops.neg, &[b])])))
                .unwrap()
        })
        .collect();
    Ok(Congruence::from_labels(&labels))
}

/// `√I = {a : aᵏ ∈ I for some 1 ≤ k ≤ |A|}`; powers cycle within `|A|` steps.
pub fn nilradical(alg: &FiniteAlgebra, ideal: &Ideal) -> Result<Ideal> {
    let ops = RngOps::of(alg)?;
    let n = alg.size();
    let elements = (0..n)
        .filter(|&a| {
            let mut power = a;
            for _ in 0..n {
                if ideal.contains(power) {
                    return true;
                }
                power = alg.apply(ops.mul, &[power, a]);
            }
            false
        })
        .collect();
    Ok(Ideal { elements })
}

/// `C(R) = congruence of √(ideal of R)`.
pub fn nilradical_operator(universe: &Arc<Universe>) -> Result<ClosureOperator> {
    for m in universe.members() {
        if m.algebra.tag() != Some(Variety::CommutativeRng) {
            return Err(Error::NotRng(m.name.clone()));
        }
    }
    ClosureOperator::from_rule(universe, "nilradical", |m, r| {
        let ideal = ideal_of_congruence(&m.algebra, r)?;
        congruence_of_ideal(&m.algebra, &nilradical(&m.algebra, &ideal)?)
    })
}
