//! Named rings with expected profiles.

use crate::classify::{classify, Predicate};
use crate::error::{Error, Result};
use crate::ring::spec::{construct_ring, RingSpec};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub predicate: Predicate,
    pub value: bool,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: RingSpec,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn ring(&self) -> Result<Ring> {
        construct_ring(&self.spec)
    }

    /// Expectations the classifier does not reproduce, as `(predicate, expected, got)`.
    pub fn mismatches(&self) -> Result<Vec<(Predicate, bool, String)>> {
        let c = classify(&self.ring()?)?;
        Ok(self
            .expected
            .iter()
            .filter(|e| c.get(e.predicate).as_bool() != Some(e.value))
            .map(|e| (e.predicate, e.value, c.get(e.predicate).to_string()))
            .collect())
    }
}

const ZALGEBRAS: [(&str, &str); 7] = [
    (
        "deligne",
        r#"{"kind":"zalgebra","free_rank":1,"torsion":[2],"basis":["1","x"],"unity":[1,0],
            "structure":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#,
    ),
    ("z", r#"{"kind":"zalgebra","free_rank":1,"torsion":[],"basis":["1"],"unity":[1],"structure":[[[1]]]}"#),
    (
        "z_x_x2_minus_2x",
        r#"{"kind":"zalgebra","free_rank":2,"torsion":[],"basis":["1","x"],"unity":[1,0],
            "structure":[[[1,0],[0,1]],[[0,1],[0,2]]]}"#,
    ),
    (
        "z_omega",
        r#"{"kind":"zalgebra","free_rank":2,"torsion":[],"basis":["1","w"],"unity":[1,0],
            "structure":[[[1,0],[0,1]],[[0,1],[-5,0]]]}"#,
    ),
    (
        "z_cross_z",
        r#"{"kind":"zalgebra","free_rank":2,"torsion":[],"basis":["e","f"],"unity":[1,1],
            "structure":[[[1,0],[0,0]],[[0,0],[0,1]]]}"#,
    ),
    (
        "z_x_x2",
        r#"{"kind":"zalgebra","free_rank":2,"torsion":[],"basis":["1","x"],"unity":[1,0],
            "structure":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#,
    ),
    (
        "z_cross_f2",
        r#"{"kind":"zalgebra","free_rank":1,"torsion":[2],"basis":["e","f"],"unity":[1,1],
            "structure":[[[1,0],[0,0]],[[0,0],[0,1]]]}"#,
    ),
];

const FINITE: [(&str, &str); 11] = [
    ("zero", r#"{"kind":"zmod","n":1}"#),
    ("zmod4", r#"{"kind":"zmod","n":4}"#),
    ("zmod6", r#"{"kind":"zmod","n":6}"#),
    ("zmod12", r#"{"kind":"zmod","n":12}"#),
    ("boolean2", r#"{"kind":"powerset","ground":2}"#),
    ("boolean3", r#"{"kind":"powerset","ground":3}"#),
    ("f2_x_z4", r#"{"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":4}]}"#),
    ("z4_x_z9", r#"{"kind":"product","factors":[{"kind":"zmod","n":4},{"kind":"zmod","n":9}]}"#),
    (
        "f2_x_f3_x_z4",
        r#"{"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":3},{"kind":"zmod","n":4}]}"#,
    ),
    (
        "f4",
        r#"{"kind":"table","labels":["0","1","a","1+a"],
            "add":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
            "mul":[[0,0,0,0],[0,1,2,3],[0,2,3,1],[0,3,1,2]]}"#,
    ),
    (
        "f2_x_x2",
        r#"{"kind":"table","labels":["0","1","x","1+x"],
            "add":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
            "mul":[[0,0,0,0],[0,1,2,3],[0,2,0,2],[0,3,2,1]]}"#,
    ),
];

fn expectations(name: &str) -> Vec<Expectation> {
    use Predicate::*;
    let e = |predicate, value, note| Expectation { predicate, value, note };
    match name {
        "zero" => vec![
            e(Pp, true, "every annihilator is the whole ring"),
            e(Reduced, true, "no nonzero elements"),
            e(AbsolutelyFlat, true, "0 = 0^2 0"),
            e(Domain, false, "domains are nonzero"),
            e(Local, false, "no maximal ideals"),
            e(Primary, false, "primary rings are nonzero"),
        ],
        "zmod4" => vec![
            e(Gpf, true, "Ann(2^2) is the whole ring"),
            e(Pf, false, "Ann(2) = {0,2} is not pure"),
            e(Pp, false, "Ann(2) = {0,2} has no idempotent generator"),
            e(QuasiPf, true, "local"),
            e(Primary, true, "zero-divisors 0, 2 are nilpotent"),
            e(Local, true, "unique maximal ideal (2)"),
            e(Reduced, false, "2^2 = 0"),
        ],
        "zmod6" => vec![
            e(Pp, true, "product of two fields"),
            e(AbsolutelyFlat, true, "product of two fields"),
            e(Local, false, "maximal ideals (2) and (3)"),
            e(Primary, false, "2 is a zero-divisor that is not nilpotent"),
        ],
        "zmod12" => vec![
            e(Pp, false, "Ann(6) = (2) has no idempotent generator"),
            e(Gpp, true, "finite rings are zero-dimensional"),
            e(Mp, true, "minimal primes (2), (3) are comaximal"),
            e(Reduced, false, "6^2 = 0"),
        ],
        "boolean2" | "boolean3" => vec![
            e(AbsolutelyFlat, true, "every element is idempotent"),
            e(Pp, true, "Ann(a) is generated by the complement of a"),
            e(Local, false, "several maximal ideals"),
        ],
        "f2_x_z4" => vec![
            e(Pp, false, "Ann((0,2)) has no idempotent generator"),
            e(Gpp, true, "finite"),
            e(Pf, false, "Ann((0,2)) is not pure"),
            e(Purified, true, "minimal primes separated by (1,0)"),
        ],
        "z4_x_z9" => vec![
            e(Pp, false, "Ann((2,0)) has no idempotent generator"),
            e(QuasiPf, true, "finite rings are GPF"),
            e(Reduced, false, "(2,3) is nilpotent"),
        ],
        "f2_x_f3_x_z4" => vec![e(Pp, false, "the Z/4 factor"), e(Gpp, true, "finite")],
        "f4" => vec![e(Field, true, "x^2 + x + 1 is irreducible over F2")],
        "f2_x_x2" => vec![
            e(Local, true, "maximal ideal (x)"),
            e(Primary, true, "zero-divisors are multiples of x"),
            e(Pp, false, "Ann(x) = (x)"),
            e(Gpp, true, "finite"),
        ],
        "deligne" => vec![
            e(Mp, true, "unique minimal prime (x)"),
            e(QuasiPf, false, "Ker(R -> R_(x)) = (x) is not pure"),
            e(Gpp, false, "Ann(2^n) = (x) has no idempotent generator"),
            e(Gpf, false, "Ann(2^n) = (x) is not pure"),
            e(Pp, false, "x^2 = 0"),
            e(Reduced, false, "x^2 = 0"),
            e(Domain, false, "2x = 0"),
            e(Primary, false, "2 is a zero-divisor that is not nilpotent"),
            e(StronglyPurified, false, "Ann(2^n) = (x) is not regular"),
            e(ZeroDimensional, false, "positive free rank"),
        ],
        "z" => vec![
            e(Domain, true, "the integers"),
            e(Pp, true, "Ann(f) is 0 or Z"),
            e(Field, false, "2 is not a unit"),
            e(Local, false, "(2) and (3) are maximal"),
            e(Primary, true, "0 is the only zero-divisor"),
            e(ZeroDimensional, false, "(0) is not maximal"),
        ],
        "z_x_x2_minus_2x" => vec![
            e(Reduced, true, "x(x-2) = 0 with (x) and (x-2) prime"),
            e(Mp, false, "(x) + (x-2) = (2,x)"),
            e(Pp, false, "Ann(x) = (x-2) and the only idempotents are 0, 1"),
            e(Pf, false, "Ann(x) = (x-2) is not pure"),
            e(QuasiPf, false, "not mp"),
            e(Purified, false, "no idempotent separates (x) and (x-2)"),
        ],
        "z_omega" => {
            vec![e(Domain, true, "subring of Q(sqrt(-5))"), e(Pp, true, "domain"), e(Field, false, "2 is not a unit")]
        }
        "z_cross_z" => vec![
            e(Pp, true, "Ann(a,b) is generated by an idempotent"),
            e(Domain, false, "(1,0)(0,1) = 0"),
            e(Reduced, true, "product of domains"),
            e(Purified, true, "minimal primes separated by (1,0)"),
        ],
        "z_x_x2" => vec![
            e(Reduced, false, "x^2 = 0"),
            e(Primary, true, "zero-divisors are multiples of x"),
            e(Gpp, true, "Ann(f^n) is 0 or R"),
            e(Pp, false, "Ann(x) = (x)"),
            e(QuasiPf, true, "primary"),
        ],
        "z_cross_f2" => vec![
            e(Reduced, true, "product of reduced rings"),
            e(Pp, true, "product of p.p. rings"),
            e(ZeroDimensional, false, "Z factor"),
        ],
        _ => Vec::new(),
    }
}

fn with_name(json: &str, name: &str) -> Result<RingSpec> {
    let mut v: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    v["name"] = serde_json::Value::String(name.to_string());
    RingSpec::from_json(&v.to_string())
}

/// Every registered entry, in name order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = ZALGEBRAS
        .iter()
        .chain(FINITE.iter())
        .map(|(name, json)| CatalogEntry {
            name: name.to_string(),
            spec: with_name(json, name).expect("catalog specs parse"),
            expected: expectations(name),
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// A registered entry, or `zmodN` for any `N >= 1`.
pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    if let Some(e) = catalog().into_iter().find(|e| e.name == name) {
        return Ok(e);
    }
    if let Some(n) = name.strip_prefix("zmod").and_then(|n| n.parse::<u32>().ok()).filter(|&n| n > 0) {
        return Ok(CatalogEntry {
            name: name.to_string(),
            spec: RingSpec::Zmod { n, name: Some(name.to_string()) },
            expected: vec![
                Expectation { predicate: Predicate::ZeroDimensional, value: true, note: "finite" },
                Expectation { predicate: Predicate::Gpp, value: true, note: "finite" },
            ],
        });
    }
    Err(Error::UnknownName(format!("catalog entry {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_matches() {
        for e in catalog() {
            assert_eq!(e.mismatches().unwrap(), vec![], "{}", e.name);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(catalog_get("zmod10").unwrap().ring().unwrap().name(), "zmod10");
        assert!(matches!(catalog_get("nope"), Err(Error::UnknownName(_))));
        assert!(matches!(catalog_get("zmod0"), Err(Error::UnknownName(_))));
    }
}
