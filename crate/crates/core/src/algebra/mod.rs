//! Finite algebras given by operation tables over the carrier `{0..n-1}`.

mod congruence;
mod hom;
pub mod json;
mod lattice;
mod term;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use congruence::{Congruence, UnionFind};
pub use hom::{enumerate_homs, enumerate_surjections, find_isomorphism, Homomorphism};
pub use lattice::CongruenceLattice;
pub use term::{
    satisfies_equations, satisfies_quasiequations, Counterexample, Equation, QuasiEquation, Term,
};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

impl OpSymbol {
    pub fn new(name: &str, arity: usize) -> Self {
        OpSymbol {
            name: name.to_string(),
            arity,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new(ops: Vec<OpSymbol>) -> Result<Self> {
        for (i, op) in ops.iter().enumerate() {
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate operation `{}`",
                    op.name
                )));
            }
        }
        Ok(Signature { ops })
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn name(&self, op: usize) -> &str {
        &self.ops[op].name
    }
}

/// Variety labels with built-in signatures and defining equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variety {
    Group,
    CommutativeRng,
    Quandle,
}

/// A named defining equation of a variety.
#[derive(Clone, Debug)]
pub struct Axiom {
    pub label: &'static str,
    pub equation: Equation,
}

impl Variety {
    pub fn signature(self) -> Signature {
        let ops = match self {
            Variety::Group => vec![
                OpSymbol::new("mul", 2),
                OpSymbol::new("inv", 1),
                OpSymbol::new("e", 0),
            ],
            Variety::CommutativeRng => vec![
                OpSymbol::new("add", 2),
                OpSymbol::new("neg", 1),
                OpSymbol::new("zero", 0),
                OpSymbol::new("mul", 2),
            ],
            Variety::Quandle => vec![OpSymbol::new("lhd", 2), OpSymbol::new("lhd_inv", 2)],
        };
        Signature { ops }
    }

    pub fn axioms(self) -> Vec<Axiom> {
        let (a, b, c) = (Term::var(0), Term::var(1), Term::var(2));
        let bin = |name: &str, x: &Term, y: &Term| Term::binary(name, x.clone(), y.clone());
        let ax = |label, lhs, rhs| Axiom {
            label,
            equation: Equation::new(lhs, rhs),
        };
        match self {
            Variety::Group => {
                let mul = |x: &Term, y: &Term| bin("mul", x, y);
                let e = Term::constant("e");
                let inv = |x: &Term| Term::unary("inv", x.clone());
                vec![
                    ax(
                        "(a·b)·c = a·(b·c)",
                        mul(&mul(&a, &b), &c),
                        mul(&a, &mul(&b, &c)),
                    ),
                    ax("e·a = a", mul(&e, &a), a.clone()),
                    ax("a·e = a", mul(&a, &e), a.clone()),
                    ax("a⁻¹·a = e", mul(&inv(&a), &a), e.clone()),
                    ax("a·a⁻¹ = e", mul(&a, &inv(&a)), e.clone()),
                ]
            }
            Variety::CommutativeRng => {
                let add = |x: &Term, y: &Term| bin("add", x, y);
                let mul = |x: &Term, y: &Term| bin("mul", x, y);
                let zero = Term::constant("zero");
                let neg = |x: &Term| Term::unary("neg", x.clone());
                vec![
                    ax(
                        "(a+b)+c = a+(b+c)",
                        add(&add(&a, &b), &c),
                        add(&a, &add(&b, &c)),
                    ),
                    ax("a+b = b+a", add(&a, &b), add(&b, &a)),
                    ax("a+0 = a", add(&a, &zero), a.clone()),
                    ax("a+(-a) = 0", add(&a, &neg(&a)), zero.clone()),
                    ax(
                        "(a·b)·c = a·(b·c)",
                        mul(&mul(&a, &b), &c),
                        mul(&a, &mul(&b, &c)),
                    ),
                    ax("a·b = b·a", mul(&a, &b), mul(&b, &a)),
                    ax(
                        "a·(b+c) = a·b+a·c",
                        mul(&a, &add(&b, &c)),
                        add(&mul(&a, &b), &mul(&a, &c)),
                    ),
                ]
            }
            Variety::Quandle => {
                let l = |x: &Term, y: &Term| bin("lhd", x, y);
                let li = |x: &Term, y: &Term| bin("lhd_inv", x, y);
                vec![
                    ax("a ◁ a = a", l(&a, &a), a.clone()),
                    ax("(a ◁ b) ◁⁻¹ b = a", li(&l(&a, &b), &b), a.clone()),
                    ax("(a ◁⁻¹ b) ◁ b = a", l(&li(&a, &b), &b), a.clone()),
                    ax(
                        "(a ◁ b) ◁ c = (a ◁ c) ◁ (b ◁ c)",
                        l(&l(&a, &b), &c),
                        l(&l(&a, &c), &l(&b, &c)),
                    ),
                ]
            }
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::Group => "group",
            Variety::CommutativeRng => "commutative-rng",
            Variety::Quandle => "quandle",
        })
    }
}

/// An operation given as a function of its arguments.
pub type OpFn<'a> = Box<dyn Fn(&[usize]) -> usize + 'a>;

/// A finite algebra. Operation tables are flat, row-major in the arguments:
/// the entry for `(a_1, .., a_k)` sits at `sum a_i * n^(k-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    sig: Signature,
    tables: Vec<Vec<usize>>,
    tag: Option<Variety>,
}

impl FiniteAlgebra {
    pub fn new(
        size: usize,
        sig: Signature,
        tables: Vec<Vec<usize>>,
        tag: Option<Variety>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::TableShape("carrier must be non-empty".into()));
        }
        if tables.len() != sig.len() {
            return Err(Error::TableShape(format!(
                "{} tables for {} operations",
                tables.len(),
                sig.len()
            )));
        }
        for (op, table) in sig.ops().iter().zip(&tables) {
            let expected = size
                .checked_pow(op.arity as u32)
                .ok_or_else(|| Error::TableShape(format!("table `{}` is too large", op.name)))?;
            if table.len() != expected {
                return Err(Error::TableShape(format!(
                    "table `{}` has {} entries, expected {}",
                    op.name,
                    table.len(),
                    expected
                )));
            }
            if let Some(flat) = table.iter().position(|&v| v >= size) {
                return Err(Error::OutOfRange {
                    op: op.name.clone(),
                    position: unflatten(flat, size, op.arity),
                    value: table[flat],
                    size,
                });
            }
        }
        let alg = FiniteAlgebra {
            size,
            sig,
            tables,
            tag,
        };
        if let Some(variety) = tag {
            alg.check_variety(variety)?;
        }
        Ok(alg)
    }

    /// Builds an algebra from closures computing each operation.
    pub fn from_fns(
        size: usize,
        ops: Vec<(OpSymbol, OpFn<'_>)>,
        tag: Option<Variety>,
    ) -> Result<Self> {
        let mut symbols = Vec::with_capacity(ops.len());
        let mut tables = Vec::with_capacity(ops.len());
        for (sym, f) in ops {
            let len = size.pow(sym.arity as u32);
            let table = (0..len)
                .map(|i| f(&unflatten(i, size, sym.arity)))
                .collect();
            symbols.push(sym);
            tables.push(table);
        }
        FiniteAlgebra::new(size, Signature::new(symbols)?, tables, tag)
    }

    fn check_variety(&self, variety: Variety) -> Result<()> {
        let expected = variety.signature();
        let mut mine: Vec<_> = self.sig.ops().to_vec();
        let mut theirs: Vec<_> = expected.ops().to_vec();
        mine.sort_by(|a, b| a.name.cmp(&b.name));
        theirs.sort_by(|a, b| a.name.cmp(&b.name));
        if mine != theirs {
            let names: Vec<_> = expected
                .ops()
                .iter()
                .map(|o| format!("{}/{}", o.name, o.arity))
                .collect();
            return Err(Error::InvalidSignature(format!(
                "{} requires operations {}",
                variety,
                names.join(", ")
            )));
        }
        let axioms = variety.axioms();
        let eqs: Vec<_> = axioms.iter().map(|a| a.equation.clone()).collect();
        if let Some(cex) = satisfies_equations(self, &eqs)? {
            return Err(Error::AxiomViolation {
                axiom: axioms[cex.index].label.to_string(),
                assignment: cex.assignment,
            });
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn tag(&self) -> Option<Variety> {
        self.tag
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn op_index(&self, name: &str) -> Result<usize> {
        self.sig
            .position(name)
            .ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[op][idx]
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        self.sig == other.sig
    }

    /// Relabels the carrier along the bijection `perm` (old element `a` becomes `perm[a]`).
    pub fn relabel(&self, perm: &[usize]) -> FiniteAlgebra {
        let n = self.size;
        let mut inverse = vec![0; n];
        for (a, &b) in perm.iter().enumerate() {
            inverse[b] = a;
        }
        let tables = self
            .sig
            .ops()
            .iter()
            .enumerate()
            .map(|(op, sym)| {
                (0..n.pow(sym.arity as u32))
                    .map(|i| {
                        let args: Vec<usize> = unflatten(i, n, sym.arity)
                            .iter()
                            .map(|&x| inverse[x])
                            .collect();
                        perm[self.apply(op, &args)]
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra {
            size: n,
            sig: self.sig.clone(),
            tables,
            tag: self.tag,
        }
    }

    /// Checks that `r` is compatible with every operation. On failure returns
    /// the operation index and two argument tuples that are related
    /// componentwise but whose results are not.
    pub fn compatibility_witness(&self, r: &Congruence) -> Option<(usize, Vec<usize>, Vec<usize>)> {
        assert_eq!(r.size(), self.size);
        let n = self.size;
        for (op, sym) in self.sig.ops().iter().enumerate() {
            let k = sym.arity;
            if k == 0 {
                continue;
            }
            let rest = n.pow(k as u32 - 1);
            for a in 0..n {
                for b in (a + 1)..n {
                    if !r.related(a, b) {
                        continue;
                    }
                    // one coordinate at a time suffices by transitivity
                    for pos in 0..k {
                        for other in 0..rest {
                            let mut ta = unflatten(other, n, k - 1);
                            ta.insert(pos, a);
                            let mut tb = ta.clone();
                            tb[pos] = b;
                            if !r.related(self.apply(op, &ta), self.apply(op, &tb)) {
                                return Some((op, ta, tb));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, r: &Congruence) -> bool {
        r.size() == self.size && self.compatibility_witness(r).is_none()
    }

    /// The least congruence containing every pair in `pairs`.
    ///
    /// Union-find with a worklist: each time two classes merge, every
    /// one-coordinate translate of the merged pair is queued.
    pub fn generated_congruence(&self, pairs: &[(usize, usize)]) -> Congruence {
        let n = self.size;
        let mut uf = UnionFind::new(n);
        let mut pending: Vec<(usize, usize)> = pairs.to_vec();
        let mut scratch = Vec::new();
        while let Some((a, b)) = pending.pop() {
            if !uf.union(a, b) {
                continue;
            }
            for (op, sym) in self.sig.ops().iter().enumerate() {
                let k = sym.arity;
                if k == 0 {
                    continue;
                }
                let rest = n.pow(k as u32 - 1);
                for pos in 0..k {
                    for other in 0..rest {
                        scratch.clear();
                        scratch.extend(unflatten(other, n, k - 1));
                        scratch.insert(pos, a);
                        let x = self.apply(op, &scratch);
                        scratch[pos] = b;
                        let y = self.apply(op, &scratch);
                        if uf.find(x) != uf.find(y) {
                            pending.push((x, y));
                        }
                    }
                }
            }
        }
        uf.into_congruence()
    }

    /// The quotient algebra `X/R`, carrier = block ids of `r`.
    pub(crate) fn quotient_tables(&self, r: &Congruence) -> FiniteAlgebra {
        let reps = r.representatives();
        let m = reps.len();
        let tables = self
            .sig
            .ops()
            .iter()
            .enumerate()
            .map(|(op, sym)| {
                (0..m.pow(sym.arity as u32))
                    .map(|i| {
                        let args: Vec<usize> = unflatten(i, m, sym.arity)
                            .iter()
                            .map(|&blk| reps[blk])
                            .collect();
                        r.block_of(self.apply(op, &args))
                    })
                    .collect()
            })
            .collect();
        FiniteAlgebra {
            size: m,
            sig: self.sig.clone(),
            tables,
            tag: self.tag,
        }
    }

    /// Zero-argument operation values, in signature order.
    pub fn constants(&self) -> Vec<(usize, usize)> {
        self.sig
            .ops()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.arity == 0)
            .map(|(op, _)| (op, self.tables[op][0]))
            .collect()
    }
}

/// Digits of `index` in base `n`, most significant first, padded to `len`.
pub(crate) fn unflatten(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z_group(n: usize) -> FiniteAlgebra {
        FiniteAlgebra::from_fns(
            n,
            vec![
                (
                    OpSymbol::new("mul", 2),
                    Box::new(move |a: &[usize]| (a[0] + a[1]) % n),
                ),
                (
                    OpSymbol::new("inv", 1),
                    Box::new(move |a: &[usize]| (n - a[0]) % n),
                ),
                (OpSymbol::new("e", 0), Box::new(|_: &[usize]| 0)),
            ],
            Some(Variety::Group),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_group_accepted() {
        let z4 = z_group(4);
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.apply(0, &[3, 2]), 1);
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let z4 = z_group(4);
        let mut tables: Vec<Vec<usize>> = (0..3).map(|op| z4.table(op).to_vec()).collect();
        tables[0][5] = 7;
        let err = FiniteAlgebra::new(4, z4.signature().clone(), tables, Some(Variety::Group))
            .unwrap_err();
        match err {
            Error::OutOfRange {
                value, position, ..
            } => {
                assert_eq!(value, 7);
                assert_eq!(position, vec![1, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_table_length_rejected() {
        let sig = Signature::new(vec![OpSymbol::new("f", 2)]).unwrap();
        let err = FiniteAlgebra::new(2, sig, vec![vec![0, 1, 1]], None).unwrap_err();
        assert!(matches!(err, Error::TableShape(_)));
    }

    #[test]
    fn duplicate_op_names_rejected() {
        let err = Signature::new(vec![OpSymbol::new("f", 2), OpSymbol::new("f", 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSignature(_)));
    }

    #[test]
    fn non_idempotent_quandle_cites_axiom() {
        // x ◁ y = x + 1 mod 3: both cancellation laws hold, idempotence fails
        let alg = FiniteAlgebra::from_fns(
            3,
            vec![
                (
                    OpSymbol::new("lhd", 2),
                    Box::new(|a: &[usize]| (a[0] + 1) % 3),
                ),
                (
                    OpSymbol::new("lhd_inv", 2),
                    Box::new(|a: &[usize]| (a[0] + 2) % 3),
                ),
            ],
            Some(Variety::Quandle),
        );
        match alg.unwrap_err() {
            Error::AxiomViolation { axiom, assignment } => {
                assert_eq!(axiom, "a ◁ a = a");
                assert_eq!(assignment, vec![0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tag_requires_variety_signature() {
        let alg = FiniteAlgebra::from_fns(
            2,
            vec![(
                OpSymbol::new("mul", 2),
                Box::new(|a: &[usize]| (a[0] + a[1]) % 2),
            )],
            Some(Variety::Group),
        );
        assert!(matches!(alg.unwrap_err(), Error::InvalidSignature(_)));
    }

    #[test]
    fn generated_congruence_small_cases() {
        let z4 = z_group(4);
        assert_eq!(
            z4.generated_congruence(&[(0, 2)]).blocks(),
            vec![vec![0, 2], vec![1, 3]]
        );
        assert_eq!(z4.generated_congruence(&[(0, 1)]), Congruence::total(4));
        assert_eq!(z4.generated_congruence(&[]), Congruence::identity(4));
    }

    #[test]
    fn relabel_is_isomorphic() {
        let z4 = z_group(4);
        let perm = [0, 3, 2, 1];
        let other = z4.relabel(&perm);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    perm[z4.apply(0, &[a, b])],
                    other.apply(0, &[perm[a], perm[b]])
                );
            }
        }
    }
}
