//! Bundled universes: groups, `Z/n` rngs and quandles, each closed under
//! quotients and free of isomorphic duplicates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use super::{groups, quandles, rngs};
use crate::algebra::{find_isomorphism, json, FiniteAlgebra};
use crate::closure::Universe;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Groups,
    Rngs,
    Quandles,
}

impl FromStr for CorpusKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "groups" => Ok(CorpusKind::Groups),
            "rngs" => Ok(CorpusKind::Rngs),
            "quandles" => Ok(CorpusKind::Quandles),
            other => Err(format!(
                "unknown corpus `{other}` (expected groups, rngs or quandles)"
            )),
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusKind::Groups => "groups",
            CorpusKind::Rngs => "rngs",
            CorpusKind::Quandles => "quandles",
        })
    }
}

pub const MAX_QUANDLE_ORDER: usize = 6;
pub const MAX_EXHAUSTIVE_GROUP_ORDER: usize = 6;
pub const MAX_GROUP_ORDER: usize = 12;
pub const MAX_RNG_ORDER: usize = 24;

/// Named algebras of the corpus, smallest first.
pub fn corpus_algebras(kind: CorpusKind, max_size: usize) -> Result<Vec<(String, FiniteAlgebra)>> {
    let too_large = |limit: usize| Error::SizeTooLarge {
        what: format!("{kind} corpus"),
        size: max_size,
        limit,
    };
    match kind {
        CorpusKind::Quandles => {
            if max_size > MAX_QUANDLE_ORDER {
                return Err(too_large(MAX_QUANDLE_ORDER));
            }
            let mut out = Vec::new();
            for n in 1..=max_size {
                for (k, table) in quandles::enumerate(n).into_iter().enumerate() {
                    out.push((format!("Q{n}.{}", k + 1), quandles::from_lhd(n, table)?));
                }
            }
            Ok(out)
        }
        CorpusKind::Rngs => {
            if max_size > MAX_RNG_ORDER {
                return Err(too_large(MAX_RNG_ORDER));
            }
            Ok((1..=max_size)
                .map(|n| (format!("Z{n}"), rngs::zn(n)))
                .collect())
        }
        CorpusKind::Groups => {
            if max_size > MAX_GROUP_ORDER {
                return Err(too_large(MAX_GROUP_ORDER));
            }
            if max_size > MAX_EXHAUSTIVE_GROUP_ORDER {
                return Ok(groups::families(max_size));
            }
            let named = groups::families(max_size);
            let mut out = Vec::new();
            for n in 1..=max_size {
                for (k, table) in enumerate_group_tables(n).into_iter().enumerate() {
                    let g = groups::from_mul(n, |a, b| table[a * n + b])?;
                    let name = named
                        .iter()
                        .find(|(_, h)| find_isomorphism(&g, h).is_some())
                        .map(|(name, _)| name.clone())
                        .unwrap_or_else(|| format!("G{n}.{}", k + 1));
                    out.push((name, g));
                }
            }
            Ok(out)
        }
    }
}

pub fn corpus(kind: CorpusKind, max_size: usize) -> Result<Arc<Universe>> {
    let u = Universe::new(corpus_algebras(kind, max_size)?)?;
    u.require_quotient_closed()?;
    Ok(u)
}

/// `{"kind", "max_size", "algebras": [{"id", "size", "algebra"}]}`.
pub fn manifest(kind: CorpusKind, max_size: usize, universe: &Universe) -> Value {
    let algebras: Vec<Value> = universe
        .members()
        .iter()
        .map(|m| {
            serde_json::json!({
                "id": m.name,
                "size": m.algebra.size(),
                "congruences": m.lattice.len(),
                "algebra": json::algebra_to_value(&m.algebra),
            })
        })
        .collect();
    serde_json::json!({
        "kind": kind,
        "max_size": max_size,
        "quotient_closed": universe.is_quotient_closed(),
        "algebras": algebras,
    })
}

/// Cayley tables of all groups of order `n` with identity 0, one per
/// isomorphism class (lexicographically least relabeling fixing 0).
pub fn enumerate_group_tables(n: usize) -> Vec<Vec<usize>> {
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for a in 0..n {
        table[a] = Some(a);
        table[a * n] = Some(a);
    }
    let mut found = BTreeSet::new();
    fill_group(n, &mut table, &mut found);
    found.into_iter().collect()
}

fn fill_group(n: usize, table: &mut [Option<usize>], found: &mut BTreeSet<Vec<usize>>) {
    let Some(cell) = table.iter().position(Option::is_none) else {
        let t: Vec<usize> = table.iter().map(|v| v.unwrap()).collect();
        // relabelings must fix the identity
        found.insert(quandles::canonical_relabeling(n, &t, 1));
        return;
    };
    let (a, b) = (cell / n, cell % n);
    for v in 0..n {
        let row_clash = (0..n).any(|c| table[a * n + c] == Some(v));
        let col_clash = (0..n).any(|r| table[r * n + b] == Some(v));
        if row_clash || col_clash {
            continue;
        }
        table[cell] = Some(v);
        if associative_so_far(n, table) {
            fill_group(n, table, found);
        }
        table[cell] = None;
    }
}

fn associative_so_far(n: usize, t: &[Option<usize>]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = t[a * n + b] else { continue };
            for c in 0..n {
                let (Some(l), Some(bc)) = (t[ab * n + c], t[b * n + c]) else {
                    continue;
                };
                if let Some(r) = t[a * n + bc] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}
