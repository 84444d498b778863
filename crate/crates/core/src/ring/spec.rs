//! JSON ring-spec documents.
//!
//! ```json
//! {"kind": "zalgebra", "name": "deligne", "free_rank": 1, "torsion": [2],
//!  "basis": ["1", "x"], "unity": [1, 0],
//!  "structure": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]}
//! ```
//!
//! Other kinds: `zmod {n}`, `table {labels?, add, mul}`, `product {factors}`,
//! `quotient {ring, generators}`, `powerset {ground}`. Every kind accepts an
//! optional `name`. Integers in Z-algebra payloads may be JSON numbers or
//! decimal strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::finite::Shape;
use super::{Backend, BackendKind, Presentation, Ring};
use crate::error::{Error, Result};

/// Arbitrary-precision integer with a JSON number-or-string encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.trim().parse::<BigInt>().map(Int).map_err(|_| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zmod {
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        add: Vec<Vec<u32>>,
        mul: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Product {
        factors: Vec<RingSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Quotient {
        ring: Box<RingSpec>,
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Powerset {
        ground: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Zalgebra {
        free_rank: usize,
        torsion: Vec<Int>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis: Option<Vec<String>>,
        unity: Vec<Int>,
        structure: Vec<Vec<Vec<Int>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl RingSpec {
    pub fn from_json(text: &str) -> Result<RingSpec> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ring specs serialize")
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            RingSpec::Zmod { name, .. }
            | RingSpec::Table { name, .. }
            | RingSpec::Product { name, .. }
            | RingSpec::Quotient { name, .. }
            | RingSpec::Powerset { name, .. }
            | RingSpec::Zalgebra { name, .. } => name.as_deref(),
        }
    }

    pub fn presentation(&self) -> Option<Presentation> {
        match self {
            RingSpec::Zalgebra { free_rank, torsion, basis, unity, structure, .. } => {
                let m = free_rank + torsion.len();
                let basis = basis.clone().unwrap_or_else(|| (0..m).map(|i| format!("b{i}")).collect());
                Some(Presentation {
                    free_rank: *free_rank,
                    torsion: bigs(torsion),
                    basis,
                    unity: bigs(unity),
                    structure: structure.iter().map(|row| row.iter().map(|v| bigs(v)).collect()).collect(),
                })
            }
            _ => None,
        }
    }

    pub fn from_presentation(p: &Presentation, name: Option<String>) -> RingSpec {
        RingSpec::Zalgebra {
            free_rank: p.free_rank,
            torsion: ints(&p.torsion),
            basis: Some(p.basis.clone()),
            unity: ints(&p.unity),
            structure: p.structure.iter().map(|row| row.iter().map(|v| ints(v)).collect()).collect(),
            name,
        }
    }
}

/// Builds and validates a ring from a spec.
pub fn construct_ring(spec: &RingSpec) -> Result<Ring> {
    let ring = match spec {
        RingSpec::Zmod { n, .. } => Ring::zmod(*n)?,
        RingSpec::Powerset { ground, .. } => Ring::power_set(*ground)?,
        RingSpec::Table { labels, add, mul, .. } => {
            let n = add.len();
            if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
                return Err(Error::Schema("table rows must form square matrices of equal size".into()));
            }
            Ring::from_tables(add.concat(), mul.concat(), labels.clone())?
        }
        RingSpec::Product { factors, .. } => {
            let parts = factors.iter().map(construct_ring).collect::<Result<Vec<_>>>()?;
            Ring::product(parts)?
        }
        RingSpec::Quotient { ring, generators, .. } => {
            let base = construct_ring(ring)?;
            let gens = generators.iter().map(|g| base.parse(g)).collect::<Result<Vec<_>>>()?;
            let ideal = crate::ideal::Ideal::new(&base, &gens)?;
            crate::ideal::quotient_ring(&ideal)?
        }
        RingSpec::Zalgebra { .. } => {
            let p = spec.presentation().unwrap();
            if p.torsion.len() + p.free_rank != p.basis.len() {
                return Err(Error::Schema("basis length differs from free_rank + torsion".into()));
            }
            Ring::zalgebra(&p)?
        }
    };
    Ok(match spec.name() {
        Some(n) => ring.with_name(n),
        None => ring,
    })
}

pub fn parse_ring(text: &str) -> Result<Ring> {
    construct_ring(&RingSpec::from_json(text)?)
}

pub(crate) fn describe(ring: &Ring) -> RingSpec {
    let name = Some(ring.name().to_string());
    match ring.backend() {
        Backend::ZAlg(z) => RingSpec::from_presentation(&z.presentation(), name),
        Backend::Finite(f) => match f.shape() {
            Shape::Zmod(n) if ring.kind() == BackendKind::Zmod => RingSpec::Zmod { n: *n, name },
            Shape::PowerSet { ground } => RingSpec::Powerset { ground: *ground, name },
            Shape::Product { factors, .. } => {
                RingSpec::Product { factors: factors.iter().map(describe).collect(), name }
            }
            _ => {
                let n = f.size();
                let (add, mul) = ring.tables().unwrap();
                RingSpec::Table {
                    labels: Some(f.elements().map(|i| f.label(i)).collect()),
                    add: add.chunks(n).map(|c| c.to_vec()).collect(),
                    mul: mul.chunks(n).map(|c| c.to_vec()).collect(),
                    name,
                }
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DELIGNE: &str = r#"{"kind":"zalgebra","name":"deligne","free_rank":1,"torsion":[2],
        "basis":["1","x"],"unity":[1,0],"structure":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;

    #[test]
    fn deligne_round_trip() {
        let r = parse_ring(DELIGNE).unwrap();
        assert_eq!(r.name(), "deligne");
        let again = construct_ring(&r.spec()).unwrap();
        assert_eq!(again.zalg().unwrap().presentation(), r.zalg().unwrap().presentation());
    }

    #[test]
    fn big_integers_as_strings() {
        let text = r#"{"kind":"zalgebra","free_rank":1,"torsion":[],"unity":["1"],"structure":[[["1"]]]}"#;
        let r = parse_ring(text).unwrap();
        assert_eq!(r.format(&r.one()), "b0");
    }

    #[test]
    fn malformed_specs() {
        assert!(matches!(RingSpec::from_json(r#"{"kind":"zmod"}"#), Err(Error::Schema(_))));
        let bad = r#"{"kind":"table","add":[[0,1],[1,0]],"mul":[[0,0],[0,0]]}"#;
        assert!(matches!(parse_ring(bad), Err(Error::Algebra(_))));
    }

    #[test]
    fn product_and_table_round_trip() {
        let text = r#"{"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":3}]}"#;
        let r = parse_ring(text).unwrap();
        let again = construct_ring(&r.spec()).unwrap();
        assert_eq!(again.tables().unwrap(), r.tables().unwrap());
        let f4 = Ring::poly_quotient(&Ring::zmod(2).unwrap(), vec![1, 1], "a").unwrap();
        let t = construct_ring(&f4.spec()).unwrap();
        assert_eq!(t.tables().unwrap(), f4.tables().unwrap());
        assert_eq!(t.format(&t.parse("1+a").unwrap()), "1+a");
    }
}
