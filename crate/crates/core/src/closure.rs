//! Closure operators on the congruence form over a finite universe of
//! algebras, and the checkers for their axioms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{
    enumerate_homs, enumerate_surjections, find_isomorphism, Congruence, CongruenceLattice,
    FiniteAlgebra, Homomorphism,
};
use crate::error::{Error, Result};
use crate::form::{image_congruence, lifts, preimage_congruence};

#[derive(Debug)]
pub struct Member {
    pub index: usize,
    pub name: String,
    pub algebra: Arc<FiniteAlgebra>,
    pub lattice: CongruenceLattice,
}

/// Where `X/R` lives in the universe: the member it is isomorphic to and the
/// surjection `X → member` whose kernel is `R`.
#[derive(Debug)]
pub struct QuotientSlot {
    pub member: usize,
    pub map: Homomorphism,
}

type HomTable = Vec<Vec<Vec<Homomorphism>>>;

/// A finite set of pairwise non-isomorphic algebras over one signature,
/// with all surjections between members precomputed.
#[derive(Debug)]
pub struct Universe {
    members: Vec<Member>,
    quotient_closed: bool,
    quotients: Vec<Vec<Option<QuotientSlot>>>,
    surjections: HomTable,
    homs: OnceLock<HomTable>,
}

impl Universe {
    /// Members isomorphic to an earlier one are dropped.
    pub fn new(algebras: Vec<(String, FiniteAlgebra)>) -> Result<Arc<Universe>> {
        let mut members: Vec<Member> = Vec::new();
        for (name, alg) in algebras {
            if let Some(first) = members.first() {
                if !first.algebra.same_signature(&alg) {
                    return Err(Error::SignatureMismatch);
                }
            }
            if members
                .iter()
                .any(|m| find_isomorphism(&m.algebra, &alg).is_some())
            {
                continue;
            }
            let lattice = CongruenceLattice::of(&alg);
            members.push(Member {
                index: members.len(),
                name,
                algebra: Arc::new(alg),
                lattice,
            });
        }
        let mut quotient_closed = true;
        let mut quotients = Vec::with_capacity(members.len());
        for m in &members {
            let mut row = Vec::with_capacity(m.lattice.len());
            for r in m.lattice.elements() {
                let (q, proj) = Homomorphism::quotient(&m.algebra, r);
                let slot = locate_in(&members, &q).map(|(j, iso)| {
                    let map = proj.map().iter().map(|&b| iso[b]).collect();
                    QuotientSlot {
                        member: j,
                        map: Homomorphism::unchecked(
                            m.algebra.clone(),
                            members[j].algebra.clone(),
                            map,
                        ),
                    }
                });
                quotient_closed &= slot.is_some();
                row.push(slot);
            }
            quotients.push(row);
        }
        let mut surjections = Vec::with_capacity(members.len());
        for x in &members {
            let mut row = Vec::with_capacity(members.len());
            for y in &members {
                row.push(enumerate_surjections(&x.algebra, &y.algebra)?);
            }
            surjections.push(row);
        }
        Ok(Arc::new(Universe {
            members,
            quotient_closed,
            quotients,
            surjections,
            homs: OnceLock::new(),
        }))
    }

    /// The seeds together with all their quotients, up to isomorphism.
    pub fn quotient_closure(seeds: Vec<(String, FiniteAlgebra)>) -> Result<Arc<Universe>> {
        let mut found: Vec<(String, Arc<FiniteAlgebra>)> = Vec::new();
        let mut queue: Vec<(String, Arc<FiniteAlgebra>)> =
            seeds.into_iter().map(|(n, a)| (n, Arc::new(a))).collect();
        queue.reverse();
        while let Some((name, alg)) = queue.pop() {
            if found
                .iter()
                .any(|(_, m)| find_isomorphism(m, &alg).is_some())
            {
                continue;
            }
            for r in CongruenceLattice::of(&alg).elements() {
                if r.is_identity() {
                    continue;
                }
                let (q, _) = Homomorphism::quotient(&alg, r);
                queue.insert(0, (format!("{name}/{r}"), q));
            }
            found.push((name, alg));
        }
        found.sort_by_key(|(_, a)| std::cmp::Reverse(a.size()));
        Universe::new(
            found
                .into_iter()
                .map(|(n, a)| (n, Arc::try_unwrap(a).unwrap_or_else(|a| (*a).clone())))
                .collect(),
        )
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, x: usize) -> &Member {
        &self.members[x]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.members.iter().position(|m| m.name == name)
    }

    pub fn is_quotient_closed(&self) -> bool {
        self.quotient_closed
    }

    pub fn require_quotient_closed(&self) -> Result<()> {
        if self.quotient_closed {
            Ok(())
        } else {
            Err(Error::UniverseNotQuotientClosed)
        }
    }

    pub fn quotient_slot(&self, x: usize, r: usize) -> Option<&QuotientSlot> {
        self.quotients[x][r].as_ref()
    }

    /// Member isomorphic to `alg`, with an isomorphism `alg → member`.
    pub fn locate(&self, alg: &FiniteAlgebra) -> Option<(usize, Vec<usize>)> {
        locate_in(&self.members, alg)
    }

    pub fn surjections(&self, x: usize, y: usize) -> &[Homomorphism] {
        &self.surjections[x][y]
    }

    /// Every homomorphism between members, computed on first use.
    pub fn homs(&self, x: usize, y: usize) -> &[Homomorphism] {
        let table = self.homs.get_or_init(|| {
            self.members
                .iter()
                .map(|a| {
                    self.members
                        .iter()
                        .map(|b| enumerate_homs(&a.algebra, &b.algebra).expect("shared signature"))
                        .collect()
                })
                .collect()
        });
        &table[x][y]
    }

    fn all_surjections(&self) -> impl Iterator<Item = (usize, usize, &Homomorphism)> {
        (0..self.len()).flat_map(move |x| {
            (0..self.len()).flat_map(move |y| self.surjections(x, y).iter().map(move |f| (x, y, f)))
        })
    }
}

fn locate_in(members: &[Member], alg: &FiniteAlgebra) -> Option<(usize, Vec<usize>)> {
    members
        .iter()
        .find_map(|m| find_isomorphism(alg, &m.algebra).map(|iso| (m.index, iso)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismWitness {
    pub codomain: String,
    pub map: Vec<usize>,
}

/// A minimal counterexample: the algebra, optionally a morphism out of it,
/// and the congruences involved, keyed by role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: String,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismWitness>,
    pub congruences: BTreeMap<String, Congruence>,
}

impl Witness {
    pub fn new(property: &str, algebra: &str) -> Self {
        Witness {
            property: property.to_string(),
            algebra: algebra.to_string(),
            morphism: None,
            congruences: BTreeMap::new(),
        }
    }

    pub fn with_morphism(mut self, codomain: &str, map: &[usize]) -> Self {
        self.morphism = Some(MorphismWitness {
            codomain: codomain.to_string(),
            map: map.to_vec(),
        });
        self
    }

    pub fn with(mut self, role: &str, c: &Congruence) -> Self {
        self.congruences.insert(role.to_string(), c.clone());
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Box<Witness>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub(crate) fn fail(w: Witness) -> Self {
        Verdict::Fails(Box::new(w))
    }
}

/// A closure operator stored extensionally: `table[x][i]` is the lattice
/// index of `C_X` applied to the `i`-th congruence of member `x`.
#[derive(Clone, Debug)]
pub struct ClosureOperator {
    name: String,
    universe: Arc<Universe>,
    table: Vec<Vec<usize>>,
}

impl PartialEq for ClosureOperator {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) && self.table == other.table
    }
}

impl ClosureOperator {
    /// Tabulates `rule` on every fibre and validates the result.
    pub fn from_rule<F>(universe: &Arc<Universe>, name: &str, mut rule: F) -> Result<Self>
    where
        F: FnMut(&Member, &Congruence) -> Result<Congruence>,
    {
        let mut table = Vec::with_capacity(universe.len());
        for m in universe.members() {
            let mut row = Vec::with_capacity(m.lattice.len());
            for r in m.lattice.elements() {
                let c = rule(m, r)?;
                let i = m.lattice.index_of(&c).ok_or_else(|| {
                    Error::NotCongruence(Box::new(
                        Witness::new("value is a congruence", &m.name)
                            .with("R", r)
                            .with("C(R)", &c),
                    ))
                })?;
                row.push(i);
            }
            table.push(row);
        }
        Self::validated(universe, name, table)
    }

    pub fn from_table(
        universe: &Arc<Universe>,
        name: &str,
        table: Vec<Vec<Congruence>>,
    ) -> Result<Self> {
        if table.len() != universe.len() {
            return Err(Error::InvalidCongruence(format!(
                "operator table covers {} algebras, universe has {}",
                table.len(),
                universe.len()
            )));
        }
        let members = universe.members();
        let rows = table
            .iter()
            .zip(members)
            .map(|(row, m)| {
                if row.len() != m.lattice.len() {
                    return Err(Error::InvalidCongruence(format!(
                        "operator row for `{}` has {} entries, fibre has {}",
                        m.name,
                        row.len(),
                        m.lattice.len()
                    )));
                }
                row.iter()
                    .zip(m.lattice.elements())
                    .map(|(c, r)| {
                        m.lattice.index_of(c).ok_or_else(|| {
                            Error::NotCongruence(Box::new(
                                Witness::new("value is a congruence", &m.name)
                                    .with("R", r)
                                    .with("C(R)", c),
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::validated(universe, name, rows)
    }

    /// Builds from lattice indices, checking extensivity and naturality.
    pub fn from_indices(
        universe: &Arc<Universe>,
        name: &str,
        table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        Self::validated(universe, name, table)
    }

    fn validated(universe: &Arc<Universe>, name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let op = ClosureOperator {
            name: name.to_string(),
            universe: universe.clone(),
            table,
        };
        if let Some(w) = op.extensivity_witness() {
            return Err(Error::NotExtensive(Box::new(w)));
        }
        if let Some(w) = op.naturality_witness() {
            return Err(Error::NotNatural(Box::new(w)));
        }
        Ok(op)
    }

    pub fn identity(universe: &Arc<Universe>) -> Self {
        let table = universe
            .members()
            .iter()
            .map(|m| (0..m.lattice.len()).collect())
            .collect();
        ClosureOperator {
            name: "identity".into(),
            universe: universe.clone(),
            table,
        }
    }

    /// `C(R) = ∇` everywhere.
    pub fn total(universe: &Arc<Universe>) -> Self {
        let table = universe
            .members()
            .iter()
            .map(|m| vec![0; m.lattice.len()])
            .collect();
        ClosureOperator {
            name: "total".into(),
            universe: universe.clone(),
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn apply_index(&self, x: usize, r: usize) -> usize {
        self.table[x][r]
    }

    pub fn apply(&self, x: usize, r: &Congruence) -> Result<&Congruence> {
        let lat = &self.universe.member(x).lattice;
        let i = lat.index_of(r).ok_or_else(|| {
            Error::InvalidCongruence(format!(
                "{r} is not a congruence of `{}`",
                self.universe.member(x).name
            ))
        })?;
        Ok(lat.get(self.table[x][i]))
    }

    /// `C_X(Δ)`.
    pub fn closure_of_bottom(&self, x: usize) -> &Congruence {
        let lat = &self.universe.member(x).lattice;
        lat.get(self.table[x][lat.bottom_index()])
    }

    /// `C_X(Δ) = Δ`: X belongs to the corresponding subcategory.
    pub fn is_closed_at_bottom(&self, x: usize) -> bool {
        self.closure_of_bottom(x).is_identity()
    }

    fn value(&self, x: usize, r: usize) -> &Congruence {
        self.universe.member(x).lattice.get(self.table[x][r])
    }

    fn extensivity_witness(&self) -> Option<Witness> {
        for m in self.universe.members() {
            for (i, r) in m.lattice.elements().iter().enumerate() {
                let c = self.value(m.index, i);
                if !r.leq(c) {
                    return Some(
                        Witness::new("extensive", &m.name)
                            .with("R", r)
                            .with("C(R)", c),
                    );
                }
            }
        }
        None
    }

    fn naturality_witness(&self) -> Option<Witness> {
        let u = &self.universe;
        for x in u.members() {
            for y in u.members() {
                for f in u.homs(x.index, y.index) {
                    for (i, r) in x.lattice.elements().iter().enumerate() {
                        for (j, s) in y.lattice.elements().iter().enumerate() {
                            if lifts(f, r, s).unwrap()
                                && !lifts(f, self.value(x.index, i), self.value(y.index, j))
                                    .unwrap()
                            {
                                return Some(
                                    Witness::new("natural", &x.name)
                                        .with_morphism(&y.name, f.map())
                                        .with("R", r)
                                        .with("S", s),
                                );
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// `R ⩽ S ⇒ C(R) ⩽ C(S)` on every fibre.
    pub fn is_monotone(&self) -> Verdict {
        for m in self.universe.members() {
            let els = m.lattice.elements();
            for (i, r) in els.iter().enumerate() {
                for (j, s) in els.iter().enumerate() {
                    if r.leq(s) && !self.value(m.index, i).leq(self.value(m.index, j)) {
                        return Verdict::fail(
                            Witness::new("monotone", &m.name).with("R", r).with("S", s),
                        );
                    }
                }
            }
        }
        Verdict::Holds
    }

    pub fn is_idempotent(&self) -> Verdict {
        for m in self.universe.members() {
            for (i, r) in m.lattice.elements().iter().enumerate() {
                let once = self.table[m.index][i];
                if self.table[m.index][once] != once {
                    return Verdict::fail(
                        Witness::new("idempotent", &m.name)
                            .with("R", r)
                            .with("C(R)", self.value(m.index, i))
                            .with("C(C(R))", self.value(m.index, once)),
                    );
                }
            }
        }
        Verdict::Holds
    }

    /// `C_X(f⁻¹ S) = f⁻¹(C_Y S)` for every surjection `f: X → Y`.
    pub fn is_cohereditary(&self) -> Verdict {
        let u = &self.universe;
        for (x, y, f) in u.all_surjections() {
            let (mx, my) = (u.member(x), u.member(y));
            for (j, s) in my.lattice.elements().iter().enumerate() {
                let pulled = preimage_congruence(f, s).unwrap();
                let lhs = self.apply(x, &pulled).unwrap();
                let rhs = preimage_congruence(f, self.value(y, j)).unwrap();
                if *lhs != rhs {
                    return Verdict::fail(
                        Witness::new("cohereditary", &mx.name)
                            .with_morphism(&my.name, f.map())
                            .with("S", s)
                            .with("C(f⁻¹S)", lhs)
                            .with("f⁻¹C(S)", &rhs),
                    );
                }
            }
        }
        Verdict::Holds
    }

    /// `C(R ∨ S) = C(R) ∨ S` on every fibre.
    pub fn is_minimal(&self) -> Verdict {
        for m in self.universe.members() {
            let lat = &m.lattice;
            for i in 0..lat.len() {
                for j in 0..lat.len() {
                    let lhs = self.table[m.index][lat.join(i, j)];
                    let rhs = lat.join(self.table[m.index][i], j);
                    if lhs != rhs {
                        return Verdict::fail(
                            Witness::new("minimal", &m.name)
                                .with("R", lat.get(i))
                                .with("S", lat.get(j))
                                .with("C(R∨S)", lat.get(lhs))
                                .with("C(R)∨S", lat.get(rhs)),
                        );
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// `f(C_X R) = C_Y(f R)` for every surjection `f: X → Y`.
    pub fn preserves_cocartesian(&self) -> Verdict {
        let u = &self.universe;
        for (x, y, f) in u.all_surjections() {
            let (mx, my) = (u.member(x), u.member(y));
            for (i, r) in mx.lattice.elements().iter().enumerate() {
                let lhs = image_congruence(f, self.value(x, i)).unwrap();
                let pushed = image_congruence(f, r).unwrap();
                let rhs = self.apply(y, &pushed).unwrap();
                if lhs != *rhs {
                    return Verdict::fail(
                        Witness::new("preserves pushouts", &mx.name)
                            .with_morphism(&my.name, f.map())
                            .with("R", r)
                            .with("f(C(R))", &lhs)
                            .with("C(f(R))", rhs),
                    );
                }
            }
        }
        Verdict::Holds
    }

    /// Rebuilds the operator from its values at Δ: `C_X(R) = R` when the
    /// quotient `X/R` is closed, else the preimage of the closure of Δ on
    /// `X/R`. Equal to `self` whenever `self` is idempotent and cohereditary.
    pub fn strictify(&self) -> Result<ClosureOperator> {
        if let Verdict::Fails(w) = self.is_idempotent() {
            return Err(Error::PreconditionFailed(w));
        }
        if let Verdict::Fails(w) = self.is_cohereditary() {
            return Err(Error::PreconditionFailed(w));
        }
        let u = &self.universe;
        u.require_quotient_closed()?;
        let mut table = Vec::with_capacity(u.len());
        for m in u.members() {
            let mut row = Vec::with_capacity(m.lattice.len());
            for (i, r) in m.lattice.elements().iter().enumerate() {
                let slot = u.quotient_slot(m.index, i).expect("quotient-closed");
                let closed = self.closure_of_bottom(slot.member);
                let c = if closed.is_identity() {
                    r.clone()
                } else {
                    preimage_congruence(&slot.map, closed)?
                };
                row.push(m.lattice.index_of(&c).expect("preimage is a congruence"));
            }
            table.push(row);
        }
        Self::validated(u, &self.name, table)
    }

    /// `C ⩽ C'` iff `C_X(R) ⩽ C'_X(R)` everywhere.
    pub fn leq(&self, other: &ClosureOperator) -> Result<Verdict> {
        if !Arc::ptr_eq(&self.universe, &other.universe) {
            return Err(Error::UniverseMismatch);
        }
        for m in self.universe.members() {
            for (i, r) in m.lattice.elements().iter().enumerate() {
                let (a, b) = (self.value(m.index, i), other.value(m.index, i));
                if !a.leq(b) {
                    return Ok(Verdict::fail(
                        Witness::new("operator order", &m.name)
                            .with("R", r)
                            .with("C(R)", a)
                            .with("C'(R)", b),
                    ));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    pub fn report(&self) -> OperatorReport {
        let mut witnesses = BTreeMap::new();
        let mut record = |key: &str, v: Verdict| {
            if let Verdict::Fails(w) = &v {
                witnesses.insert(key.to_string(), (**w).clone());
            }
            v.holds()
        };
        let idempotent = record("idempotent", self.is_idempotent());
        let cohereditary = record("cohereditary", self.is_cohereditary());
        let minimal = record("minimal", self.is_minimal());
        let preserves_pushouts = record("preserves_pushouts", self.preserves_cocartesian());
        OperatorReport {
            name: self.name.clone(),
            extensive: true,
            natural: true,
            idempotent,
            cohereditary,
            minimal,
            preserves_pushouts,
            witnesses,
        }
    }
}

/// Enumerates every closure operator on a (small) universe: all extensive
/// tables, filtered by naturality. Fails with `SizeTooLarge` when the
/// number of extensive tables exceeds `limit`.
pub fn all_operators(universe: &Arc<Universe>, limit: usize) -> Result<Vec<ClosureOperator>> {
    let mut choices: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut total: usize = 1;
    for m in universe.members() {
        let els = m.lattice.elements();
        for (i, r) in els.iter().enumerate() {
            let above: Vec<usize> = (0..els.len()).filter(|&j| r.leq(&els[j])).collect();
            total = total.saturating_mul(above.len());
            choices.push((m.index, i, above));
        }
    }
    if total > limit {
        return Err(Error::SizeTooLarge {
            what: "operator enumeration".into(),
            size: total,
            limit,
        });
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut table: Vec<Vec<usize>> = universe
            .members()
            .iter()
            .map(|m| vec![0; m.lattice.len()])
            .collect();
        for ((x, i, above), &p) in choices.iter().zip(&pick) {
            table[*x][*i] = above[p];
        }
        if let Ok(op) = ClosureOperator::from_indices(universe, &format!("op{}", out.len()), table)
        {
            out.push(op);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(out);
            }
            pick[k] += 1;
            if pick[k] < choices[k].2.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorReport {
    pub name: String,
    pub extensive: bool,
    pub natural: bool,
    pub idempotent: bool,
    pub cohereditary: bool,
    pub minimal: bool,
    pub preserves_pushouts: bool,
    pub witnesses: BTreeMap<String, Witness>,
}

impl OperatorReport {
    /// Report for an operator that failed validation.
    pub fn rejected(name: &str, err: &Error) -> Option<Self> {
        let (key, w) = match err {
            Error::NotExtensive(w) => ("extensive", w),
            Error::NotNatural(w) => ("natural", w),
            _ => return None,
        };
        let extensive = key != "extensive";
        Some(OperatorReport {
            name: name.to_string(),
            extensive,
            natural: false,
            idempotent: false,
            cohereditary: false,
            minimal: false,
            preserves_pushouts: false,
            witnesses: BTreeMap::from([(key.to_string(), (**w).clone())]),
        })
    }

    pub fn all_hold(&self) -> bool {
        self.extensive
            && self.natural
            && self.idempotent
            && self.cohereditary
            && self.minimal
            && self.preserves_pushouts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::groups;

    fn z4_universe() -> Arc<Universe> {
        Universe::quotient_closure(vec![("Z4".into(), groups::cyclic(4))]).unwrap()
    }

    #[test]
    fn quotient_closure_of_z4() {
        let u = z4_universe();
        assert_eq!(u.len(), 3);
        assert!(u.is_quotient_closed());
        let sizes: Vec<usize> = u.members().iter().map(|m| m.algebra.size()).collect();
        assert_eq!(sizes, vec![4, 2, 1]);
    }

    #[test]
    fn identity_and_total_are_valid() {
        let u = z4_universe();
        let id = ClosureOperator::identity(&u);
        let top = ClosureOperator::total(&u);
        for op in [&id, &top] {
            let rebuilt =
                ClosureOperator::from_indices(&u, op.name(), op.table().to_vec()).unwrap();
            assert_eq!(&rebuilt, op);
            let report = op.report();
            assert!(report.all_hold(), "{report:?}");
        }
        assert!(id.leq(&top).unwrap().holds());
        assert!(!top.leq(&id).unwrap().holds());
    }

    #[test]
    fn non_extensive_rejected() {
        let u = z4_universe();
        // C(R) = Δ for every R
        let table = u
            .members()
            .iter()
            .map(|m| vec![m.lattice.bottom_index(); m.lattice.len()])
            .collect();
        let err = ClosureOperator::from_indices(&u, "bad", table).unwrap_err();
        match err {
            Error::NotExtensive(w) => assert!(w.congruences["R"].is_total()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_natural_rejected() {
        // close Δ only on Z4 and leave the quotients alone: the mod-2 map
        // lifts Δ to Δ on Z2, but not the closed congruence ∇ to Δ
        let u = z4_universe();
        let mut table: Vec<Vec<usize>> = u
            .members()
            .iter()
            .map(|m| (0..m.lattice.len()).collect())
            .collect();
        let z4 = u.find("Z4").unwrap();
        let bottom = u.member(z4).lattice.bottom_index();
        table[z4][bottom] = 0;
        assert!(matches!(
            ClosureOperator::from_indices(&u, "bad", table),
            Err(Error::NotNatural(_))
        ));
    }

    #[test]
    fn operators_on_other_universes_do_not_compare() {
        let a = ClosureOperator::identity(&z4_universe());
        let b = ClosureOperator::identity(&z4_universe());
        assert!(matches!(a.leq(&b), Err(Error::UniverseMismatch)));
    }

    #[test]
    fn strictify_fixed_points() {
        let u = z4_universe();
        let id = ClosureOperator::identity(&u);
        assert_eq!(id.strictify().unwrap(), id);
        let top = ClosureOperator::total(&u);
        let s = top.strictify().unwrap();
        assert_eq!(s, top);
        for m in u.members() {
            assert!(s.apply(m.index, m.lattice.top()).unwrap().is_total());
        }
    }

    #[test]
    fn enumeration_on_z2_universe() {
        // Con(Z2) = {∇, Δ}, Con(Z1) = {Δ}: C_Z2(Δ) ∈ {Δ, ∇}
        let u = Universe::quotient_closure(vec![("Z2".into(), groups::cyclic(2))]).unwrap();
        let ops = all_operators(&u, 1000).unwrap();
        assert_eq!(ops.len(), 2);
    }
}
