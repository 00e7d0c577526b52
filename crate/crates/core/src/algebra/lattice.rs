use std::collections::{BTreeSet, HashMap};

use super::{Congruence, FiniteAlgebra};

/// Con(X): every congruence of a finite algebra, sorted lexicographically by
/// block array (so ∇ comes first and Δ last).
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    elements: Vec<Congruence>,
    index: HashMap<Congruence, usize>,
}

impl CongruenceLattice {
    /// Principal congruences Cg(a, b), then closure under binary join.
    pub fn of(alg: &FiniteAlgebra) -> Self {
        let n = alg.size();
        let mut found: BTreeSet<Congruence> = BTreeSet::new();
        found.insert(Congruence::identity(n));
        for a in 0..n {
            for b in (a + 1)..n {
                found.insert(alg.generated_congruence(&[(a, b)]));
            }
        }
        let mut frontier: Vec<Congruence> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let snapshot: Vec<Congruence> = found.iter().cloned().collect();
            let mut next = Vec::new();
            for r in &frontier {
                for s in &snapshot {
                    let j = r.join(s).expect("same carrier");
                    if !found.contains(&j) {
                        found.insert(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Self::from_sorted(found.into_iter().collect())
    }

    fn from_sorted(elements: Vec<Congruence>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        CongruenceLattice { elements, index }
    }

    pub fn elements(&self) -> &[Congruence] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.elements[i]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.index.contains_key(c)
    }

    pub fn bottom(&self) -> &Congruence {
        self.elements.last().expect("lattice is never empty")
    }

    pub fn top(&self) -> &Congruence {
        &self.elements[0]
    }

    pub fn bottom_index(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index of the join of two members.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let c = self.elements[i]
            .join(&self.elements[j])
            .expect("same carrier");
        self.index[&c]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let c = self.elements[i]
            .meet(&self.elements[j])
            .expect("same carrier");
        self.index[&c]
    }

    /// Hasse diagram edges `(lower, upper)` by index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.elements.len();
        let mut out = Vec::new();
        for lo in 0..m {
            for hi in 0..m {
                if lo == hi || !self.elements[lo].leq(&self.elements[hi]) {
                    continue;
                }
                let between = (0..m).any(|mid| {
                    mid != lo
                        && mid != hi
                        && self.elements[lo].leq(&self.elements[mid])
                        && self.elements[mid].leq(&self.elements[hi])
                });
                if !between {
                    out.push((lo, hi));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{OpSymbol, Variety};

    fn z_group(n: usize) -> FiniteAlgebra {
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
    fn con_z4_is_a_three_chain() {
        let lat = CongruenceLattice::of(&z_group(4));
        let shown: Vec<String> = lat.elements().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            shown,
            vec!["[[0,1,2,3]]", "[[0,2],[1,3]]", "[[0],[1],[2],[3]]"]
        );
        assert!(lat.bottom().is_identity());
        assert!(lat.top().is_total());
        assert_eq!(lat.covers(), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn con_of_one_element_algebra() {
        let lat = CongruenceLattice::of(&z_group(1));
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.bottom(), lat.top());
    }

    #[test]
    fn con_z6_matches_divisor_lattice() {
        // subgroups of Z6 ↔ divisors of 6
        assert_eq!(CongruenceLattice::of(&z_group(6)).len(), 4);
        assert_eq!(CongruenceLattice::of(&z_group(12)).len(), 6);
    }
}
