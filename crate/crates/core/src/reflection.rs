//! Reflections onto full subcategories whose units are quotient maps, and
//! their correspondence with idempotent cohereditary closure operators.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    satisfies_equations, satisfies_quasiequations, Congruence, CongruenceLattice, Equation,
    FiniteAlgebra, Homomorphism, QuasiEquation,
};
use crate::closure::{ClosureOperator, Universe, Verdict, Witness};
use crate::error::{Error, Result};
use crate::form::preimage_congruence;

/// A reflection given by its kernels: `L(X) = X/ρ_X` with unit the canonical
/// projection. `rho[x]` is a lattice index in member `x`'s fibre.
#[derive(Clone, Debug)]
pub struct Reflector {
    name: String,
    universe: Arc<Universe>,
    rho: Vec<usize>,
}

impl PartialEq for Reflector {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) && self.rho == other.rho
    }
}

impl Reflector {
    pub fn new(universe: &Arc<Universe>, name: &str, rho: Vec<Congruence>) -> Result<Self> {
        universe.require_quotient_closed()?;
        if rho.len() != universe.len() {
            return Err(Error::InvalidCongruence(format!(
                "{} reflection kernels for {} algebras",
                rho.len(),
                universe.len()
            )));
        }
        let rho = rho
            .iter()
            .zip(universe.members())
            .map(|(r, m)| {
                m.lattice.index_of(r).ok_or_else(|| {
                    Error::NotCongruence(Box::new(
                        Witness::new("reflection kernel is a congruence", &m.name).with("ρ", r),
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let refl = Reflector {
            name: name.to_string(),
            universe: universe.clone(),
            rho,
        };
        refl.validate()?;
        Ok(refl)
    }

    /// Reflector onto the algebras satisfying `pred`, computed member by
    /// member with [`oracle_reflection`].
    pub fn from_predicate(
        universe: &Arc<Universe>,
        name: &str,
        pred: &SubcategoryPredicate,
    ) -> Result<Self> {
        let rho = universe
            .members()
            .iter()
            .map(|m| oracle_on_lattice(&m.name, &m.algebra, &m.lattice, pred))
            .collect::<Result<Vec<_>>>()?;
        Reflector::new(universe, name, rho)
    }

    fn validate(&self) -> Result<()> {
        let u = &self.universe;
        for m in u.members() {
            let rho = self.rho(m.index);
            // L(X) lies in the subcategory
            let slot = u
                .quotient_slot(m.index, self.rho[m.index])
                .expect("quotient-closed");
            if !self.rho(slot.member).is_identity() {
                return Err(Error::NotReflection(Box::new(
                    Witness::new("reflection lands in the subcategory", &m.name)
                        .with("ρ_X", rho)
                        .with("ρ_L(X)", self.rho(slot.member)),
                )));
            }
            // every map into the subcategory factors through the unit
            for y in u.members() {
                if !self.rho(y.index).is_identity() {
                    continue;
                }
                for f in u.homs(m.index, y.index) {
                    if !rho.leq(&f.kernel()) {
                        return Err(Error::NotReflection(Box::new(
                            Witness::new("universal property", &m.name)
                                .with_morphism(&y.name, f.map())
                                .with("ρ_X", rho)
                                .with("ker f", &f.kernel()),
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn rho(&self, x: usize) -> &Congruence {
        self.universe.member(x).lattice.get(self.rho[x])
    }

    pub fn is_member(&self, x: usize) -> bool {
        self.rho(x).is_identity()
    }

    /// `(L(X), η_X)`.
    pub fn reflect(&self, x: usize) -> (Arc<FiniteAlgebra>, Homomorphism) {
        Homomorphism::quotient(&self.universe.member(x).algebra, self.rho(x))
    }
}

/// `C_X(R) = q⁻¹(ρ_{X/R})` where `q: X → X/R`.
pub fn closure_from_reflector(refl: &Reflector) -> Result<ClosureOperator> {
    let u = &refl.universe;
    u.require_quotient_closed()?;
    ClosureOperator::from_rule(u, &refl.name, |m, r| {
        let i = m.lattice.index_of(r).expect("fibre element");
        let slot = u.quotient_slot(m.index, i).expect("quotient-closed");
        preimage_congruence(&slot.map, refl.rho(slot.member))
    })
}

/// `ρ_X = C_X(Δ)`.
pub fn reflector_from_closure(c: &ClosureOperator) -> Result<Reflector> {
    if let Verdict::Fails(w) = c.is_idempotent() {
        return Err(Error::NotIdempotent(w));
    }
    if let Verdict::Fails(w) = c.is_cohereditary() {
        return Err(Error::NotCohereditary(w));
    }
    let u = c.universe();
    let rho = (0..u.len())
        .map(|x| c.closure_of_bottom(x).clone())
        .collect();
    Reflector::new(u, c.name(), rho)
}

/// Membership in a full subcategory of the universe.
pub enum SubcategoryPredicate<'a> {
    Equations(Vec<Equation>),
    QuasiEquations(Vec<QuasiEquation>),
    /// Algebras at which the operator leaves Δ closed.
    Operator(&'a ClosureOperator),
    Reflector(&'a Reflector),
    Custom {
        name: String,
        test: Box<dyn Fn(&FiniteAlgebra) -> bool + 'a>,
    },
}

impl fmt::Debug for SubcategoryPredicate<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubcategoryPredicate::Equations(e) => write!(f, "Equations({})", e.len()),
            SubcategoryPredicate::QuasiEquations(q) => write!(f, "QuasiEquations({})", q.len()),
            SubcategoryPredicate::Operator(c) => write!(f, "Operator({})", c.name()),
            SubcategoryPredicate::Reflector(r) => write!(f, "Reflector({})", r.name()),
            SubcategoryPredicate::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl SubcategoryPredicate<'_> {
    pub fn custom<'a>(
        name: &str,
        test: impl Fn(&FiniteAlgebra) -> bool + 'a,
    ) -> SubcategoryPredicate<'a> {
        SubcategoryPredicate::Custom {
            name: name.to_string(),
            test: Box::new(test),
        }
    }

    pub fn holds(&self, alg: &FiniteAlgebra) -> Result<bool> {
        match self {
            SubcategoryPredicate::Equations(eqs) => Ok(satisfies_equations(alg, eqs)?.is_none()),
            SubcategoryPredicate::QuasiEquations(q) => {
                Ok(satisfies_quasiequations(alg, q)?.is_none())
            }
            SubcategoryPredicate::Operator(c) => {
                let (x, _) = c.universe().locate(alg).ok_or(Error::NotInUniverse)?;
                Ok(c.is_closed_at_bottom(x))
            }
            SubcategoryPredicate::Reflector(r) => {
                let (x, _) = r.universe().locate(alg).ok_or(Error::NotInUniverse)?;
                Ok(r.is_member(x))
            }
            SubcategoryPredicate::Custom { test, .. } => Ok(test(alg)),
        }
    }
}

/// Whether `X` belongs to the subcategory of `C`: `C_X(Δ) = Δ`.
pub fn membership(c: &ClosureOperator, x: usize) -> bool {
    c.is_closed_at_bottom(x)
}

/// Every quotient of a member satisfying `pred` satisfies `pred`.
pub fn closed_under_quotients(pred: &SubcategoryPredicate, universe: &Universe) -> Result<Verdict> {
    universe.require_quotient_closed()?;
    for m in universe.members() {
        if !pred.holds(&m.algebra)? {
            continue;
        }
        for (i, r) in m.lattice.elements().iter().enumerate() {
            let slot = universe.quotient_slot(m.index, i).expect("quotient-closed");
            let target = universe.member(slot.member);
            if !pred.holds(&target.algebra)? {
                return Ok(Verdict::fail(
                    Witness::new("closed under quotients", &m.name)
                        .with_morphism(&target.name, slot.map.map())
                        .with("R", r),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Least `R` with `pred(X/R)`, as the meet of all such `R`; errors when the
/// meet itself fails `pred`.
pub fn oracle_reflection(
    alg: &Arc<FiniteAlgebra>,
    pred: &SubcategoryPredicate,
) -> Result<Congruence> {
    oracle_on_lattice("X", alg, &CongruenceLattice::of(alg), pred)
}

fn oracle_on_lattice(
    name: &str,
    alg: &Arc<FiniteAlgebra>,
    lattice: &CongruenceLattice,
    pred: &SubcategoryPredicate,
) -> Result<Congruence> {
    let mut meet: Option<Congruence> = None;
    for r in lattice.elements() {
        let (q, _) = Homomorphism::quotient(alg, r);
        if pred.holds(&q)? {
            meet = Some(match meet {
                None => r.clone(),
                Some(m) => m.meet(r)?,
            });
        }
    }
    let meet = meet.ok_or_else(|| {
        Error::NotReflective(Box::new(Witness::new(
            "some quotient satisfies the predicate",
            name,
        )))
    })?;
    let (q, _) = Homomorphism::quotient(alg, &meet);
    if !pred.holds(&q)? {
        return Err(Error::NotReflective(Box::new(
            Witness::new("meet of admissible congruences is admissible", name).with("meet", &meet),
        )));
    }
    Ok(meet)
}

/// closure → reflector → closure is the identity.
pub fn roundtrip_closure(c: &ClosureOperator) -> Result<Verdict> {
    let back = closure_from_reflector(&reflector_from_closure(c)?)?;
    Ok(first_difference(c, &back))
}

/// reflector → closure → reflector is the identity.
pub fn roundtrip_reflector(refl: &Reflector) -> Result<Verdict> {
    let back = reflector_from_closure(&closure_from_reflector(refl)?)?;
    for m in refl.universe.members() {
        if refl.rho[m.index] != back.rho[m.index] {
            return Ok(Verdict::fail(
                Witness::new("reflector round-trip", &m.name)
                    .with("ρ", refl.rho(m.index))
                    .with("ρ'", back.rho(m.index)),
            ));
        }
    }
    Ok(Verdict::Holds)
}

fn first_difference(a: &ClosureOperator, b: &ClosureOperator) -> Verdict {
    for m in a.universe().members() {
        for (i, r) in m.lattice.elements().iter().enumerate() {
            let (ca, cb) = (a.apply_index(m.index, i), b.apply_index(m.index, i));
            if ca != cb {
                return Verdict::fail(
                    Witness::new("closure round-trip", &m.name)
                        .with("R", r)
                        .with("C(R)", m.lattice.get(ca))
                        .with("C'(R)", m.lattice.get(cb)),
                );
            }
        }
    }
    Verdict::Holds
}

/// `C1 ⩽ C2` exactly when the subcategory of `C2` is contained in that of `C1`.
pub fn antitone_check(c1: &ClosureOperator, c2: &ClosureOperator) -> Result<Verdict> {
    let order = c1.leq(c2)?;
    let u = c1.universe();
    let escapee = (0..u.len()).find(|&x| c2.is_closed_at_bottom(x) && !c1.is_closed_at_bottom(x));
    match (order.holds(), escapee) {
        (true, None) | (false, Some(_)) => Ok(Verdict::Holds),
        (true, Some(x)) => Ok(Verdict::fail(
            Witness::new("subcategory inclusion", &u.member(x).name)
                .with("C1(Δ)", c1.closure_of_bottom(x))
                .with("C2(Δ)", c2.closure_of_bottom(x)),
        )),
        (false, None) => Ok(order),
    }
}

/// Minimality coincides with closure of the subcategory under quotients.
pub fn birkhoff_check(c: &ClosureOperator) -> Result<Verdict> {
    let minimal = c.is_minimal();
    let closed = closed_under_quotients(&SubcategoryPredicate::Operator(c), c.universe())?;
    Ok(match (minimal.holds(), closed.holds()) {
        (true, true) | (false, false) => Verdict::Holds,
        (true, false) => closed,
        (false, true) => minimal,
    })
}
