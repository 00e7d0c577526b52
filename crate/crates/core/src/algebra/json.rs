//! JSON encoding of algebras:
//! `{"size": n, "signature": [{"name": .., "arity": k}], "tables": {name: nested array}, "tag": ..}`.
//! A k-ary table nests k levels deep; a constant is a bare number.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{unflatten, Congruence, FiniteAlgebra, OpSymbol, Signature, Variety};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct RawAlgebra {
    pub size: usize,
    pub signature: Vec<OpSymbol>,
    pub tables: BTreeMap<String, Value>,
    #[serde(default)]
    pub tag: Option<Variety>,
}

impl RawAlgebra {
    pub fn validate(self) -> Result<FiniteAlgebra> {
        let n = self.size;
        let sig = Signature::new(self.signature)?;
        let mut tables = Vec::with_capacity(sig.len());
        for sym in sig.ops() {
            let value = self
                .tables
                .get(&sym.name)
                .ok_or_else(|| Error::TableShape(format!("missing table `{}`", sym.name)))?;
            let mut flat = Vec::with_capacity(n.pow(sym.arity as u32));
            flatten(value, n, sym.arity, &sym.name, &mut Vec::new(), &mut flat)?;
            tables.push(flat);
        }
        if let Some(extra) = self.tables.keys().find(|k| sig.position(k).is_none()) {
            return Err(Error::TableShape(format!(
                "table `{extra}` has no operation in the signature"
            )));
        }
        FiniteAlgebra::new(n, sig, tables, self.tag)
    }
}

fn flatten(
    value: &Value,
    n: usize,
    depth: usize,
    op: &str,
    path: &mut Vec<usize>,
    out: &mut Vec<usize>,
) -> Result<()> {
    if depth == 0 {
        let v = value.as_u64().ok_or_else(|| {
            Error::TableShape(format!(
                "table `{op}` at {path:?}: expected a non-negative integer"
            ))
        })? as usize;
        if v >= n {
            return Err(Error::OutOfRange {
                op: op.to_string(),
                position: path.clone(),
                value: v,
                size: n,
            });
        }
        out.push(v);
        return Ok(());
    }
    let items = value
        .as_array()
        .ok_or_else(|| Error::TableShape(format!("table `{op}` at {path:?}: expected an array")))?;
    if items.len() != n {
        return Err(Error::TableShape(format!(
            "table `{op}` at {path:?}: expected {n} entries, found {}",
            items.len()
        )));
    }
    for (i, item) in items.iter().enumerate() {
        path.push(i);
        flatten(item, n, depth - 1, op, path, out)?;
        path.pop();
    }
    Ok(())
}

fn nest(table: &[usize], n: usize, arity: usize) -> Value {
    if arity == 0 {
        return Value::from(table[0]);
    }
    let stride = n.pow(arity as u32 - 1);
    Value::Array(
        (0..n)
            .map(|i| nest(&table[i * stride..(i + 1) * stride], n, arity - 1))
            .collect(),
    )
}

pub fn to_raw(alg: &FiniteAlgebra) -> RawAlgebra {
    let n = alg.size();
    let tables = alg
        .signature()
        .ops()
        .iter()
        .enumerate()
        .map(|(op, sym)| (sym.name.clone(), nest(alg.table(op), n, sym.arity)))
        .collect();
    RawAlgebra {
        size: n,
        signature: alg.signature().ops().to_vec(),
        tables,
        tag: alg.tag(),
    }
}

pub fn algebra_from_str(s: &str) -> Result<FiniteAlgebra> {
    let raw: RawAlgebra = serde_json::from_str(s)?;
    raw.validate()
}

pub fn algebra_to_value(alg: &FiniteAlgebra) -> Value {
    serde_json::to_value(to_raw(alg)).expect("algebra serializes")
}

/// Parses a list of blocks (`[[0,2],[1,3]]`); unlisted elements become singletons.
pub fn congruence_from_str(s: &str, n: usize) -> Result<Congruence> {
    let blocks: Vec<Vec<usize>> = serde_json::from_str(s)?;
    Congruence::from_blocks(n, &blocks)
}

/// Every table entry with its argument tuple; used in diagnostics.
pub fn entries(alg: &FiniteAlgebra, op: usize) -> Vec<(Vec<usize>, usize)> {
    let n = alg.size();
    let k = alg.signature().arity(op);
    (0..n.pow(k as u32))
        .map(|i| (unflatten(i, n, k), alg.table(op)[i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: &str = r#"{
        "size": 4,
        "signature": [{"name": "mul", "arity": 2}, {"name": "inv", "arity": 1}, {"name": "e", "arity": 0}],
        "tables": {
            "mul": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
            "inv": [0,3,2,1],
            "e": 0
        },
        "tag": "group"
    }"#;

    #[test]
    fn parse_and_reencode() {
        let alg = algebra_from_str(Z4).unwrap();
        assert_eq!(alg.size(), 4);
        assert_eq!(alg.tag(), Some(Variety::Group));
        let again = algebra_from_str(&algebra_to_value(&alg).to_string()).unwrap();
        assert_eq!(alg, again);
    }

    #[test]
    fn entry_seven_is_out_of_range() {
        let bad = Z4.replace("[1,2,3,0]", "[1,2,7,0]");
        match algebra_from_str(&bad).unwrap_err() {
            Error::OutOfRange {
                op,
                position,
                value,
                ..
            } => {
                assert_eq!((op.as_str(), position, value), ("mul", vec![1, 2], 7));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_table_is_shape_error() {
        let bad = Z4.replace("[1,2,3,0]", "[1,2,3]");
        assert!(matches!(algebra_from_str(&bad), Err(Error::TableShape(_))));
        let missing = Z4.replace(r#""e": 0"#, r#""f": 0"#);
        assert!(matches!(
            algebra_from_str(&missing),
            Err(Error::TableShape(_))
        ));
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = algebra_from_str("{\"size\": 4,\n \"signature\": [}").unwrap_err();
        match err {
            Error::Json(e) => assert_eq!(e.line(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
