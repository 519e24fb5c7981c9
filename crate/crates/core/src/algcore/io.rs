//! JSON text format for algebras:
//! `{"signature":[{"name":"a","arity":1}],"size":3,"ops":{"a":[1,2,0]}}`.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct SymbolRecord {
    name: String,
    arity: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraRecord {
    signature: Vec<SymbolRecord>,
    size: usize,
    ops: IndexMap<String, Vec<usize>>,
}

pub fn to_json(alg: &FiniteAlgebra) -> String {
    let record = AlgebraRecord {
        signature: alg
            .signature()
            .ops()
            .iter()
            .map(|s| SymbolRecord {
                name: s.name.clone(),
                arity: s.arity,
            })
            .collect(),
        size: alg.size(),
        ops: alg
            .signature()
            .ops()
            .iter()
            .zip(alg.tables())
            .map(|(s, t)| (s.name.clone(), t.clone()))
            .collect(),
    };
    serde_json::to_string(&record).expect("algebra records always serialize")
}

pub fn from_json(text: &str) -> Result<FiniteAlgebra> {
    let mut record: AlgebraRecord = serde_json::from_str(text)?;
    let signature = Signature::new(record.signature.iter().map(|s| (s.name.clone(), s.arity)))?;
    let mut tables = Vec::with_capacity(signature.len());
    for sym in signature.ops() {
        let table = record
            .ops
            .shift_remove(&sym.name)
            .ok_or_else(|| Error::parse(format!("missing table for `{}`", sym.name)))?;
        tables.push(table);
    }
    if let Some(extra) = record.ops.keys().next() {
        return Err(Error::UnknownSymbol(extra.clone()));
    }
    FiniteAlgebra::new(signature, record.size, tables)
}

pub fn read_file(path: &std::path::Path) -> Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("{}: {}", path.display(), e)))?;
    from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let text = r#"{"signature":[{"name":"a","arity":1}],"size":3,"ops":{"a":[1,2,0]}}"#;
        let alg = from_json(text).unwrap();
        assert_eq!(alg, FiniteAlgebra::cyclic_unary(3).unwrap());
        assert_eq!(to_json(&alg), text);
    }

    #[test]
    fn constants_and_binary() {
        let text = r#"{"signature":[{"name":"m","arity":2},{"name":"e","arity":0}],"size":2,"ops":{"m":[0,1,1,0],"e":[0]}}"#;
        let alg = from_json(text).unwrap();
        assert_eq!(alg.apply(0, &[1, 1]), 0);
        assert_eq!(to_json(&alg), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json(r#"{"signature":[{"name":"a","arity":1}],"size":3,"ops":{}}"#).is_err());
        assert!(from_json(r#"{"signature":[{"name":"a","arity":1}],"size":3,"ops":{"a":[1,2,3]}}"#).is_err());
        assert!(from_json(r#"{"signature":[{"name":"a","arity":1}],"size":2,"ops":{"a":[1,0],"b":[0,0]}}"#).is_err());
        assert!(from_json("not json").is_err());
    }
}
