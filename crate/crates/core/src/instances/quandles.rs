//! Quandles in the two-operation signature `lhd` (◁) and `lhd_inv` (◁⁻¹),
//! the reachability congruence `∼_A`, and the closure `R ∘ ∼_A` onto
//! trivial quandles.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Congruence, FiniteAlgebra, UnionFind, Variety};
use crate::closure::{ClosureOperator, Universe, Witness};
use crate::error::{Error, Result};

/// Builds a quandle from its ◁ table (`lhd[x * n + y] = x ◁ y`); ◁⁻¹ is the
/// inverse of each right translation.
pub fn from_lhd(n: usize, lhd: Vec<usize>) -> Result<FiniteAlgebra> {
    let mut inv = vec![n; n * n];
    for y in 0..n {
        for x in 0..n {
            let z = lhd[x * n + y];
            if z < n {
                inv[z * n + y] = x;
            }
        }
    }
    // a non-bijective column leaves a hole; clamp so validation reports the axiom
    for v in inv.iter_mut() {
        if *v >= n {
            *v = 0;
        }
    }
    FiniteAlgebra::new(
        n,
        Variety::Quandle.signature(),
        vec![lhd, inv],
        Some(Variety::Quandle),
    )
}

pub fn trivial(n: usize) -> FiniteAlgebra {
    from_lhd(n, (0..n * n).map(|i| i / n).collect()).expect("trivial quandle")
}

/// `x ◁ y = 2y − x mod n`.
pub fn dihedral(n: usize) -> FiniteAlgebra {
    from_lhd(
        n,
        (0..n * n).map(|i| (2 * (i % n) + n - i / n) % n).collect(),
    )
    .expect("dihedral quandle")
}

fn quandle_ops(name: &str, alg: &FiniteAlgebra) -> Result<(usize, usize)> {
    if alg.tag() != Some(Variety::Quandle) {
        return Err(Error::NotQuandle(name.to_string()));
    }
    Ok((alg.op_index("lhd")?, alg.op_index("lhd_inv")?))
}

/// `∼_A`: orbits of the maps `x ↦ x ◁ b` and `x ↦ x ◁⁻¹ b`.
pub fn reachability(alg: &FiniteAlgebra) -> Result<Congruence> {
    let (lhd, inv) = quandle_ops("algebra", alg)?;
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in 0..n {
            uf.union(a, alg.apply(lhd, &[a, b]));
            uf.union(a, alg.apply(inv, &[a, b]));
        }
    }
    let sim = uf.into_congruence();
    if let Some((op, x, y)) = alg.compatibility_witness(&sim) {
        return Err(Error::CompositeNotCongruence(Box::new(
            Witness::new(
                &format!("∼ compatible with op {op} at {x:?}, {y:?}"),
                "algebra",
            )
            .with("∼", &sim),
        )));
    }
    Ok(sim)
}

/// `R ∘ ∼ = {(a, b) : ∃c. a ∼ c ∧ c R b}`, validated as a congruence.
pub fn compose(alg: &FiniteAlgebra, r: &Congruence, sim: &Congruence) -> Result<Congruence> {
    let n = alg.size();
    let related: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).any(|c| sim.related(a, c) && r.related(c, b)))
                .collect()
        })
        .collect();
    let labels: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| related[a][b]).unwrap())
        .collect();
    let candidate = Congruence::from_labels(&labels);
    // the composite must be exactly the equivalence it induces
    let exact = (0..n).all(|a| (0..n).all(|b| related[a][b] == candidate.related(a, b)));
    if !exact || !alg.is_congruence(&candidate) {
        return Err(Error::CompositeNotCongruence(Box::new(
            Witness::new("R ∘ ∼ is a congruence", "algebra")
                .with("R", r)
                .with("∼", sim),
        )));
    }
    Ok(candidate)
}

pub fn quandle_closure_operator(universe: &Arc<Universe>) -> Result<ClosureOperator> {
    let sims = universe
        .members()
        .iter()
        .map(|m| {
            quandle_ops(&m.name, &m.algebra)?;
            reachability(&m.algebra)
        })
        .collect::<Result<Vec<_>>>()?;
    ClosureOperator::from_rule(universe, "trivial-quandle", |m, r| {
        compose(&m.algebra, r, &sims[m.index])
    })
}

/// Lexicographically least ◁ table over all relabelings.
pub fn canonical_table(n: usize, lhd: &[usize]) -> Vec<usize> {
    canonical_relabeling(n, lhd, 0)
}

/// Least relabeled table over permutations fixing `0..fixed`; relabelings
/// are compared cell by cell and abandoned at the first larger entry.
pub(crate) fn canonical_relabeling(n: usize, table: &[usize], fixed: usize) -> Vec<usize> {
    let mut best = table.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut inv = vec![0; n];
    let mut candidate = vec![0; n * n];
    while next_permutation(&mut perm[fixed..]) {
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        // candidate[i, j] = p(p⁻¹(i) · p⁻¹(j))
        let mut smaller = false;
        let mut larger = false;
        for i in 0..n * n {
            let v = perm[table[inv[i / n] * n + inv[i % n]]];
            candidate[i] = v;
            if !smaller {
                if v > best[i] {
                    larger = true;
                    break;
                }
                smaller = v < best[i];
            }
        }
        if smaller && !larger {
            best.copy_from_slice(&candidate);
        }
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All quandles of order `n` up to isomorphism, as canonical ◁ tables in
/// increasing order.
pub fn enumerate(n: usize) -> Vec<Vec<usize>> {
    let mut search = TableSearch {
        n,
        table: vec![None; n * n],
        used: vec![vec![false; n]; n],
        found: BTreeSet::new(),
    };
    for y in 0..n {
        search.table[y * n + y] = Some(y);
        search.used[y][y] = true;
    }
    search.run(0);
    search.found.into_iter().collect()
}

/// Column-by-column filling; each column `x ↦ x ◁ y` is a permutation fixing
/// `y`, and right self-distributivity is checked on every fully known triple.
struct TableSearch {
    n: usize,
    table: Vec<Option<usize>>,
    used: Vec<Vec<bool>>,
    found: BTreeSet<Vec<usize>>,
}

impl TableSearch {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.n + y]
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.get(x, y) else { continue };
                for z in 0..n {
                    let (Some(lhs), Some(xz), Some(yz)) =
                        (self.get(xy, z), self.get(x, z), self.get(y, z))
                    else {
                        continue;
                    };
                    if let Some(rhs) = self.get(xz, yz) {
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize) {
        let n = self.n;
        // column-major order
        let Some(next) = (cell..n * n).find(|&c| self.table[(c % n) * n + c / n].is_none()) else {
            let table: Vec<usize> = self.table.iter().map(|v| v.unwrap()).collect();
            self.found.insert(canonical_table(n, &table));
            return;
        };
        let (x, y) = (next % n, next / n);
        for v in 0..n {
            if self.used[y][v] {
                continue;
            }
            self.table[x * n + y] = Some(v);
            self.used[y][v] = true;
            if self.consistent() {
                self.run(next + 1);
            }
            self.used[y][v] = false;
            self.table[x * n + y] = None;
        }
    }
}
