//! Terms, equations and quasi-equations over a signature, and their
//! satisfaction by a finite algebra (exhaustive over all assignments).

use serde::{Deserialize, Serialize};

use super::FiniteAlgebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Var { var: usize },
    Op { op: String, args: Vec<Term> },
}

impl Term {
    pub fn var(index: usize) -> Self {
        Term::Var { var: index }
    }

    pub fn op(name: &str, args: Vec<Term>) -> Self {
        Term::Op {
            op: name.to_string(),
            args,
        }
    }

    pub fn constant(name: &str) -> Self {
        Term::op(name, Vec::new())
    }

    pub fn unary(name: &str, a: Term) -> Self {
        Term::op(name, vec![a])
    }

    pub fn binary(name: &str, a: Term, b: Term) -> Self {
        Term::op(name, vec![a, b])
    }

    /// One more than the largest variable index, or 0 for ground terms.
    pub fn var_count(&self) -> usize {
        match self {
            Term::Var { var } => var + 1,
            Term::Op { args, .. } => args.iter().map(Term::var_count).max().unwrap_or(0),
        }
    }

    fn compile(&self, alg: &FiniteAlgebra) -> Result<Compiled> {
        match self {
            Term::Var { var } => Ok(Compiled::Var(*var)),
            Term::Op { op, args } => {
                let index = alg
                    .signature()
                    .position(op)
                    .ok_or_else(|| Error::UnknownOp(op.clone()))?;
                let arity = alg.signature().arity(index);
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        op: op.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                let args = args
                    .iter()
                    .map(|a| a.compile(alg))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Compiled::Op(index, args))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn var_count(&self) -> usize {
        self.lhs.var_count().max(self.rhs.var_count())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuasiEquation {
    #[serde(default)]
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiEquation {
    pub fn new(premises: Vec<Equation>, conclusion: Equation) -> Self {
        QuasiEquation {
            premises,
            conclusion,
        }
    }

    pub fn var_count(&self) -> usize {
        self.premises
            .iter()
            .map(Equation::var_count)
            .max()
            .unwrap_or(0)
            .max(self.conclusion.var_count())
    }
}

/// First failing (quasi-)equation and the variable assignment that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub assignment: Vec<usize>,
}

enum Compiled {
    Var(usize),
    Op(usize, Vec<Compiled>),
}

impl Compiled {
    fn eval(&self, alg: &FiniteAlgebra, env: &[usize], scratch: &mut Vec<usize>) -> usize {
        match self {
            Compiled::Var(v) => env[*v],
            Compiled::Op(op, args) => {
                let base = scratch.len();
                for a in args {
                    let v = a.eval(alg, env, scratch);
                    scratch.push(v);
                }
                let out = alg.apply(*op, &scratch[base..]);
                scratch.truncate(base);
                out
            }
        }
    }
}

/// Calls `visit` on every assignment of `vars` variables over a carrier of
/// size `n` in lexicographic order, stopping at the first `false`.
fn for_each_assignment(n: usize, vars: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut env = vec![0; vars];
    loop {
        if !visit(&env) {
            return;
        }
        let mut i = vars;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            env[i] += 1;
            if env[i] < n {
                break;
            }
            env[i] = 0;
        }
    }
}

pub fn satisfies_equations(
    alg: &FiniteAlgebra,
    eqs: &[Equation],
) -> Result<Option<Counterexample>> {
    let compiled = eqs
        .iter()
        .map(|e| Ok((e.lhs.compile(alg)?, e.rhs.compile(alg)?, e.var_count())))
        .collect::<Result<Vec<_>>>()?;
    let mut scratch = Vec::new();
    for (index, (lhs, rhs, vars)) in compiled.iter().enumerate() {
        let mut failure = None;
        for_each_assignment(alg.size(), *vars, |env| {
            if lhs.eval(alg, env, &mut scratch) != rhs.eval(alg, env, &mut scratch) {
                failure = Some(env.to_vec());
                return false;
            }
            true
        });
        if let Some(assignment) = failure {
            return Ok(Some(Counterexample { index, assignment }));
        }
    }
    Ok(None)
}

pub fn satisfies_quasiequations(
    alg: &FiniteAlgebra,
    qeqs: &[QuasiEquation],
) -> Result<Option<Counterexample>> {
    let mut scratch = Vec::new();
    for (index, q) in qeqs.iter().enumerate() {
        let premises = q
            .premises
            .iter()
            .map(|e| Ok((e.lhs.compile(alg)?, e.rhs.compile(alg)?)))
            .collect::<Result<Vec<_>>>()?;
        let lhs = q.conclusion.lhs.compile(alg)?;
        let rhs = q.conclusion.rhs.compile(alg)?;
        let mut failure = None;
        for_each_assignment(alg.size(), q.var_count(), |env| {
            let premised = premises
                .iter()
                .all(|(l, r)| l.eval(alg, env, &mut scratch) == r.eval(alg, env, &mut scratch));
            if premised && lhs.eval(alg, env, &mut scratch) != rhs.eval(alg, env, &mut scratch) {
                failure = Some(env.to_vec());
                return false;
            }
            true
        });
        if let Some(assignment) = failure {
            return Ok(Some(Counterexample { index, assignment }));
        }
    }
    Ok(None)
}
