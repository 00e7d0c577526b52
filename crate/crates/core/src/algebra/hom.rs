use std::sync::Arc;

use super::{unflatten, Congruence, FiniteAlgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Homomorphism {
    dom: Arc<FiniteAlgebra>,
    cod: Arc<FiniteAlgebra>,
    map: Vec<usize>,
    surjective: bool,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.dom == *other.dom && *self.cod == *other.cod
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    pub fn new(dom: Arc<FiniteAlgebra>, cod: Arc<FiniteAlgebra>, map: Vec<usize>) -> Result<Self> {
        if !dom.same_signature(&cod) {
            return Err(Error::SignatureMismatch);
        }
        if map.len() != dom.size() {
            return Err(Error::NotHomomorphism(format!(
                "map has {} entries for a domain of size {}",
                map.len(),
                dom.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::NotHomomorphism(format!(
                "value {v} outside codomain of size {}",
                cod.size()
            )));
        }
        let n = dom.size();
        for (op, sym) in dom.signature().ops().iter().enumerate() {
            for i in 0..n.pow(sym.arity as u32) {
                let args = unflatten(i, n, sym.arity);
                let image: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                if map[dom.apply(op, &args)] != cod.apply(op, &image) {
                    return Err(Error::NotHomomorphism(format!(
                        "`{}` not preserved at {:?}",
                        sym.name, args
                    )));
                }
            }
        }
        Ok(Self::unchecked(dom, cod, map))
    }

    pub(crate) fn unchecked(
        dom: Arc<FiniteAlgebra>,
        cod: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Self {
        let mut hit = vec![false; cod.size()];
        for &v in &map {
            hit[v] = true;
        }
        let surjective = hit.into_iter().all(|h| h);
        Homomorphism {
            dom,
            cod,
            map,
            surjective,
        }
    }

    pub fn identity(alg: Arc<FiniteAlgebra>) -> Self {
        let map = (0..alg.size()).collect();
        Self::unchecked(alg.clone(), alg, map)
    }

    pub fn dom(&self) -> &Arc<FiniteAlgebra> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteAlgebra> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if *self.cod != *other.dom {
            return Err(Error::NotHomomorphism(
                "morphisms are not composable".into(),
            ));
        }
        let map = self.map.iter().map(|&a| other.map[a]).collect();
        Ok(Self::unchecked(self.dom.clone(), other.cod.clone(), map))
    }

    /// Kernel pair as a congruence: blocks are the fibres of the map.
    pub fn kernel(&self) -> Congruence {
        Congruence::from_labels(&self.map)
    }

    /// The canonical projection `X → X/R`.
    pub fn quotient(
        alg: &Arc<FiniteAlgebra>,
        r: &Congruence,
    ) -> (Arc<FiniteAlgebra>, Homomorphism) {
        assert_eq!(alg.size(), r.size(), "congruence on a different carrier");
        let q = Arc::new(alg.quotient_tables(r));
        let hom = Self::unchecked(alg.clone(), q.clone(), r.labels().to_vec());
        (q, hom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    Bijective,
}

/// Backtracking search over partial maps. Each tentative assignment is
/// propagated through every operation tuple whose arguments are all mapped,
/// which forces the images of generated elements.
struct Search<'a> {
    dom: &'a FiniteAlgebra,
    cod: &'a FiniteAlgebra,
    mode: Mode,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl<'a> Search<'a> {
    fn new(dom: &'a FiniteAlgebra, cod: &'a FiniteAlgebra, mode: Mode, limit: usize) -> Self {
        Search {
            dom,
            cod,
            mode,
            map: vec![None; dom.size()],
            used: vec![false; cod.size()],
            trail: Vec::new(),
            found: Vec::new(),
            limit,
        }
    }

    fn assign(&mut self, a: usize, b: usize) -> bool {
        match self.map[a] {
            Some(existing) => existing == b,
            None => {
                if self.mode == Mode::Bijective && self.used[b] {
                    return false;
                }
                self.map[a] = Some(b);
                self.used[b] = true;
                self.trail.push(a);
                true
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            let b = self.map[a].take().unwrap();
            self.used[b] = false;
        }
    }

    /// Propagates consequences of trail entries from `start` on.
    fn propagate(&mut self, start: usize) -> bool {
        let n = self.dom.size();
        let mut cursor = start;
        let mut args = Vec::new();
        let mut image = Vec::new();
        while cursor < self.trail.len() {
            let fresh = self.trail[cursor];
            cursor += 1;
            for (op, sym) in self.dom.signature().ops().iter().enumerate() {
                let k = sym.arity;
                if k == 0 {
                    continue;
                }
                for pos in 0..k {
                    'tuple: for other in 0..n.pow(k as u32 - 1) {
                        args.clear();
                        args.extend(unflatten(other, n, k - 1));
                        args.insert(pos, fresh);
                        // visit each tuple once: `pos` is the first slot holding `fresh`
                        if args[..pos].contains(&fresh) {
                            continue;
                        }
                        image.clear();
                        for &x in &args {
                            match self.map[x] {
                                Some(y) => image.push(y),
                                None => continue 'tuple,
                            }
                        }
                        let target = self.dom.apply(op, &args);
                        let value = self.cod.apply(op, &image);
                        if !self.assign(target, value) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn seed(&mut self) -> bool {
        let dc = self.dom.constants();
        let cc = self.cod.constants();
        for ((_, a), (_, b)) in dc.into_iter().zip(cc) {
            if !self.assign(a, b) {
                return false;
            }
        }
        self.propagate(0)
    }

    fn run(&mut self) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(next) = self.map.iter().position(Option::is_none) else {
            self.found
                .push(self.map.iter().map(|v| v.unwrap()).collect());
            return;
        };
        for b in 0..self.cod.size() {
            let mark = self.trail.len();
            if self.assign(next, b) && self.propagate(mark) {
                self.run();
            }
            self.undo(mark);
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    mode: Mode,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    if !dom.same_signature(cod) {
        return Err(Error::SignatureMismatch);
    }
    let mut s = Search::new(dom, cod, mode, limit);
    if s.seed() {
        s.run();
    }
    let mut found = s.found;
    found.sort();
    Ok(found)
}

/// All homomorphisms `X → Y`, lexicographically ordered by their maps.
pub fn enumerate_homs(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<Vec<Homomorphism>> {
    Ok(search(x, y, Mode::All, usize::MAX)?
        .into_iter()
        .map(|m| Homomorphism::unchecked(x.clone(), y.clone(), m))
        .collect())
}

pub fn enumerate_surjections(
    x: &Arc<FiniteAlgebra>,
    y: &Arc<FiniteAlgebra>,
) -> Result<Vec<Homomorphism>> {
    if !x.same_signature(y) {
        return Err(Error::SignatureMismatch);
    }
    if y.size() > x.size() {
        return Ok(Vec::new());
    }
    Ok(enumerate_homs(x, y)?
        .into_iter()
        .filter(Homomorphism::is_surjective)
        .collect())
}

/// Some isomorphism `X → Y`, as a map, if one exists.
pub fn find_isomorphism(x: &FiniteAlgebra, y: &FiniteAlgebra) -> Option<Vec<usize>> {
    if x.size() != y.size() || !x.same_signature(y) || x.tag() != y.tag() {
        return None;
    }
    search(x, y, Mode::Bijective, 1).ok()?.into_iter().next()
}
