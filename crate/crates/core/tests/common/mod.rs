//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the library's congruence machinery.

#![allow(dead_code)]

use closure_form::algebra::FiniteAlgebra;

/// Every set partition of `{0..n-1}` as a restricted growth string.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, n, max.max(b), out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    go(&mut prefix, n, 0, &mut out);
    out
}

/// Compatibility straight from the definition: related argument tuples give
/// related results, for every operation and every pair of tuples.
pub fn compatible(alg: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = alg.size();
    for op in 0..alg.signature().len() {
        let k = alg.signature().arity(op);
        let tuples = tuples(n, k);
        for a in &tuples {
            for b in &tuples {
                if a.iter().zip(b).all(|(&x, &y)| labels[x] == labels[y])
                    && labels[alg.apply(op, a)] != labels[alg.apply(op, b)]
                {
                    return false;
                }
            }
        }
    }
    true
}

pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// All congruences, as sets of related pairs.
pub fn congruence_relations(alg: &FiniteAlgebra) -> Vec<Vec<Vec<bool>>> {
    partitions(alg.size())
        .into_iter()
        .filter(|p| compatible(alg, p))
        .map(|p| relation(&p))
        .collect()
}

pub fn relation(labels: &[usize]) -> Vec<Vec<bool>> {
    let n = labels.len();
    (0..n)
        .map(|a| (0..n).map(|b| labels[a] == labels[b]).collect())
        .collect()
}

pub fn relation_of(c: &closure_form::Congruence) -> Vec<Vec<bool>> {
    relation(c.labels())
}

/// Intersection of all congruences containing `pairs`.
pub fn generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    generated_in(&congruence_relations(alg), alg.size(), pairs)
}

/// As [`generated`], over a precomputed list of congruence relations.
pub fn generated_in(
    relations: &[Vec<Vec<bool>>],
    n: usize,
    pairs: &[(usize, usize)],
) -> Vec<Vec<bool>> {
    let mut meet = vec![vec![true; n]; n];
    for rel in relations {
        if pairs.iter().all(|&(a, b)| rel[a][b]) {
            for a in 0..n {
                for b in 0..n {
                    meet[a][b] &= rel[a][b];
                }
            }
        }
    }
    meet
}

pub fn leq(r: &[Vec<bool>], s: &[Vec<bool>]) -> bool {
    r.iter()
        .zip(s)
        .all(|(x, y)| x.iter().zip(y).all(|(&a, &b)| !a || b))
}

/// The distinct powers `a, a², a³, …` under `mul`.
pub fn powers(alg: &FiniteAlgebra, mul: usize, a: usize) -> Vec<usize> {
    let mut seen = vec![a];
    let mut p = a;
    loop {
        p = alg.apply(mul, &[p, a]);
        if seen.contains(&p) {
            return seen;
        }
        seen.push(p);
    }
}
