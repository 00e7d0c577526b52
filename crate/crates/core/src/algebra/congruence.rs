use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// An equivalence relation on `{0..n-1}` stored as a block-id array with ids
/// assigned in order of least element, so equal partitions compare equal.
///
/// Whether it is compatible with a particular algebra is checked by
/// [`FiniteAlgebra::is_congruence`](super::FiniteAlgebra::is_congruence);
/// every constructor in this crate that hands one out for an algebra
/// guarantees it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    /// Canonicalizes an arbitrary labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap: Vec<Option<usize>> = Vec::new();
        let mut next = 0;
        let labels = labels
            .iter()
            .map(|&l| {
                if l >= remap.len() {
                    remap.resize(l + 1, None);
                }
                *remap[l].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Congruence { labels }
    }

    /// Parses a list of blocks on a carrier of size `n`. Unlisted elements are
    /// singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (i, block) in blocks.iter().enumerate() {
            for &a in block {
                if a >= n {
                    return Err(Error::InvalidCongruence(format!(
                        "element {a} outside carrier of size {n}"
                    )));
                }
                if labels[a].is_some() {
                    return Err(Error::InvalidCongruence(format!(
                        "element {a} appears in more than one block"
                    )));
                }
                labels[a] = Some(i);
            }
        }
        let fresh = blocks.len();
        let raw: Vec<usize> = labels
            .iter()
            .enumerate()
            .map(|(a, l)| l.unwrap_or(fresh + a))
            .collect();
        Ok(Congruence::from_labels(&raw))
    }

    /// Δ, the diagonal.
    pub fn identity(n: usize) -> Self {
        Congruence {
            labels: (0..n).collect(),
        }
    }

    /// ∇, everything related.
    pub fn total(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (a, &l) in self.labels.iter().enumerate() {
            out[l].push(a);
        }
        out
    }

    /// Least element of each block, indexed by block id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = Vec::with_capacity(self.num_blocks());
        for (a, &l) in self.labels.iter().enumerate() {
            if l == reps.len() {
                reps.push(a);
            }
        }
        reps
    }

    fn check_fibre(&self, other: &Congruence) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::FibreMismatch(self.size(), other.size()));
        }
        Ok(())
    }

    /// Fibre order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Congruence) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let reps = self.representatives();
        self.labels
            .iter()
            .enumerate()
            .all(|(a, &l)| other.related(a, reps[l]))
    }

    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        self.check_fibre(other)?;
        let n = other.num_blocks().max(1);
        let raw: Vec<usize> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| a * n + b)
            .collect();
        Ok(Congruence::from_labels(&raw))
    }

    /// Join as equivalence relations. For two congruences of one algebra this
    /// is again a congruence, hence their join in the congruence lattice.
    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        self.check_fibre(other)?;
        let mut uf = UnionFind::new(self.size());
        for rel in [self, other] {
            let reps = rel.representatives();
            for (a, &l) in rel.labels.iter().enumerate() {
                uf.union(a, reps[l]);
            }
        }
        Ok(uf.into_congruence())
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, a) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Congruence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks = self.blocks();
        let mut seq = serializer.serialize_seq(Some(blocks.len()))?;
        for b in &blocks {
            seq.serialize_element(b)?;
        }
        seq.end()
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_congruence(mut self) -> Congruence {
        let raw: Vec<usize> = (0..self.parent.len()).map(|a| self.find(a)).collect();
        Congruence::from_labels(&raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels() {
        let c = Congruence::from_labels(&[5, 2, 5, 2]);
        assert_eq!(c.labels(), &[0, 1, 0, 1]);
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(c.to_string(), "[[0,2],[1,3]]");
        assert_eq!(serde_json::to_string(&c).unwrap(), "[[0,2],[1,3]]");
    }

    #[test]
    fn partial_blocks_fill_singletons() {
        let c = Congruence::from_blocks(5, &[vec![0]]).unwrap();
        assert!(c.is_identity());
        let c = Congruence::from_blocks(5, &[vec![3, 1]]).unwrap();
        assert_eq!(c.to_string(), "[[0],[1,3],[2],[4]]");
    }

    #[test]
    fn overlapping_blocks_rejected() {
        assert!(Congruence::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Congruence::from_blocks(3, &[vec![0, 3]]).is_err());
    }

    #[test]
    fn order_meet_join() {
        let d = Congruence::identity(4);
        let t = Congruence::total(4);
        let r = Congruence::from_labels(&[0, 1, 0, 1]);
        let s = Congruence::from_labels(&[0, 0, 1, 1]);
        assert!(d.leq(&r) && r.leq(&t) && !t.leq(&r));
        assert_eq!(d.join(&r).unwrap(), r);
        assert_eq!(t.meet(&r).unwrap(), r);
        assert_eq!(r.meet(&s).unwrap(), d);
        assert_eq!(r.join(&s).unwrap(), t);
        assert!(matches!(
            r.join(&Congruence::identity(3)),
            Err(Error::FibreMismatch(4, 3))
        ));
    }
}
