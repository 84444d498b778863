//! Whole-ring classification.
//!
//! Finite rings are decided by definitional scans. Z-algebras are decided by
//! exact reductions where one exists and by sampled searches otherwise; every
//! theorem-backed verdict passes a sampled consistency guard.

pub mod finite;
pub mod guard;
pub mod zalg;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::nil_quotient;
use crate::ring::Ring;
use crate::verdict::{Decision, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Reduced,
    Domain,
    Field,
    Local,
    ZeroDimensional,
    AbsolutelyFlat,
    Primary,
    Mp,
    Pp,
    Pf,
    Gpp,
    Gpf,
    QuasiPf,
    AlmostPp,
    Purified,
    StronglyPurified,
    Admissible,
}

impl Predicate {
    pub const ALL: [Predicate; 17] = [
        Predicate::Reduced,
        Predicate::Domain,
        Predicate::Field,
        Predicate::Local,
        Predicate::ZeroDimensional,
        Predicate::AbsolutelyFlat,
        Predicate::Primary,
        Predicate::Mp,
        Predicate::Pp,
        Predicate::Pf,
        Predicate::Gpp,
        Predicate::Gpf,
        Predicate::QuasiPf,
        Predicate::AlmostPp,
        Predicate::Purified,
        Predicate::StronglyPurified,
        Predicate::Admissible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Reduced => "reduced",
            Predicate::Domain => "domain",
            Predicate::Field => "field",
            Predicate::Local => "local",
            Predicate::ZeroDimensional => "zero_dimensional",
            Predicate::AbsolutelyFlat => "absolutely_flat",
            Predicate::Primary => "primary",
            Predicate::Mp => "mp",
            Predicate::Pp => "pp",
            Predicate::Pf => "pf",
            Predicate::Gpp => "gpp",
            Predicate::Gpf => "gpf",
            Predicate::QuasiPf => "quasi_pf",
            Predicate::AlmostPp => "almost_pp",
            Predicate::Purified => "purified",
            Predicate::StronglyPurified => "strongly_purified",
            Predicate::Admissible => "admissible",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Predicate> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::UnknownName(format!("predicate {s:?}")))
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// A direct check of the definition.
    Definitional,
    /// An exact reduction to finitely many checks.
    TheoremBacked,
    /// No decision within the search bounds.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub ring: String,
    pub verdicts: BTreeMap<Predicate, Verdict>,
    pub witnesses: BTreeMap<Predicate, Witness>,
    pub strategies: BTreeMap<Predicate, Strategy>,
}

impl Classification {
    pub fn get(&self, p: Predicate) -> &Verdict {
        &self.verdicts[&p]
    }

    pub fn decision(&self, p: Predicate) -> Decision {
        Decision { verdict: self.get(p).clone(), witness: self.witnesses.get(&p).cloned() }
    }

    /// Decided implications of the predicate lattice that this profile breaks.
    pub fn implication_violations(&self) -> Vec<(Predicate, Predicate)> {
        IMPLICATIONS.iter().copied().filter(|&(a, b)| self.get(a).is_true() && self.get(b).is_false()).collect()
    }
}

/// Implications between predicates that hold in every commutative ring.
pub const IMPLICATIONS: [(Predicate, Predicate); 10] = [
    (Predicate::Pp, Predicate::Pf),
    (Predicate::Pp, Predicate::Gpp),
    (Predicate::Pf, Predicate::Gpf),
    (Predicate::Gpp, Predicate::Gpf),
    (Predicate::Gpf, Predicate::QuasiPf),
    (Predicate::QuasiPf, Predicate::Mp),
    (Predicate::AbsolutelyFlat, Predicate::Pp),
    (Predicate::ZeroDimensional, Predicate::Gpp),
    (Predicate::Domain, Predicate::Pp),
    (Predicate::Primary, Predicate::Gpf),
];

thread_local! {
    static ROUTES: RefCell<Vec<&'static str>> = const { RefCell::new(Vec::new()) };
}

/// Records that a fast path ran on this thread.
pub fn log_route(id: &'static str) {
    ROUTES.with(|r| r.borrow_mut().push(id));
}

/// Drains the routes recorded on this thread.
pub fn take_routes() -> Vec<&'static str> {
    ROUTES.with(|r| std::mem::take(&mut *r.borrow_mut()))
}

/// One predicate on one ring.
pub fn decide(ring: &Ring, p: Predicate) -> Result<(Decision, Strategy)> {
    if ring.finite().is_some() {
        let d = match p {
            Predicate::Reduced => finite::reduced(ring)?,
            Predicate::Domain => finite::domain(ring)?,
            Predicate::Field => finite::field(ring)?,
            Predicate::Local => finite::local(ring)?,
            Predicate::ZeroDimensional => {
                return Ok((finite::zero_dimensional(ring)?, Strategy::TheoremBacked));
            }
            Predicate::AbsolutelyFlat => finite::absolutely_flat(ring)?,
            Predicate::Primary => finite::primary(ring)?,
            Predicate::Mp => finite::mp(ring)?,
            Predicate::Pp => finite::pp(ring)?,
            Predicate::Pf => finite::pf(ring)?,
            Predicate::Gpp => finite::gpp(ring)?,
            Predicate::Gpf => finite::gpf(ring)?,
            Predicate::QuasiPf => finite::quasi_pf(ring)?,
            Predicate::AlmostPp => finite::almost_pp(ring)?,
            Predicate::Purified => finite::purified(ring)?,
            Predicate::StronglyPurified => finite::strongly_purified(ring)?,
            Predicate::Admissible => {
                return Ok((finite::admissible(ring)?, Strategy::TheoremBacked));
            }
        };
        return Ok((d, Strategy::Definitional));
    }
    zalg::decide(ring, p)
}

/// The full profile, memoized per ring.
pub fn classify(ring: &Ring) -> Result<Arc<Classification>> {
    let cached = ring.memo("classification", || compute(ring).map(Arc::new));
    (*cached).clone()
}

fn compute(ring: &Ring) -> Result<Classification> {
    let saved = take_routes();
    let out = compute_inner(ring);
    ROUTES.with(|r| *r.borrow_mut() = saved);
    out
}

fn compute_inner(ring: &Ring) -> Result<Classification> {
    let mut c = Classification {
        ring: ring.name().to_string(),
        verdicts: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        strategies: BTreeMap::new(),
    };
    for p in Predicate::ALL {
        let (d, s) = decide(ring, p)?;
        let s = if d.verdict.is_decided() { s } else { Strategy::Unknown };
        c.verdicts.insert(p, d.verdict);
        if let Some(w) = d.witness {
            c.witnesses.insert(p, w);
        }
        c.strategies.insert(p, s);
    }
    if ring.zalg().is_some() {
        guard::check(ring, &c)?;
    }
    Ok(c)
}

/// One predicate by name.
pub fn predicate(ring: &Ring, name: &str) -> Result<Decision> {
    let p: Predicate = name.parse()?;
    Ok(classify(ring)?.decision(p))
}

/// The profile of `R / Nil(R)`.
pub fn quotient_mod_nil_profile(ring: &Ring) -> Result<Arc<Classification>> {
    let q = nil_quotient(ring)?;
    classify(q.target())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::spec::parse_ring;

    pub(crate) const DELIGNE: &str = r#"{"kind":"zalgebra","name":"deligne","free_rank":1,"torsion":[2],
        "basis":["1","x"],"unity":[1,0],"structure":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;

    fn v(c: &Classification, p: Predicate) -> Option<bool> {
        c.get(p).as_bool()
    }

    #[test]
    fn small_finite_profiles() {
        let z4 = classify(&Ring::zmod(4).unwrap()).unwrap();
        assert_eq!(v(&z4, Predicate::Pp), Some(false));
        assert_eq!(v(&z4, Predicate::Gpp), Some(true));
        assert_eq!(v(&z4, Predicate::Primary), Some(true));
        assert_eq!(v(&z4, Predicate::Local), Some(true));
        let z6 = classify(&Ring::zmod(6).unwrap()).unwrap();
        assert_eq!(v(&z6, Predicate::Pp), Some(true));
        assert_eq!(v(&z6, Predicate::AbsolutelyFlat), Some(true));
        assert_eq!(v(&z6, Predicate::Local), Some(false));
        let z1 = classify(&Ring::zmod(1).unwrap()).unwrap();
        assert_eq!(v(&z1, Predicate::Pp), Some(true));
        assert_eq!(v(&z1, Predicate::Domain), Some(false));
        assert_eq!(v(&z1, Predicate::Local), Some(false));
    }

    #[test]
    fn deligne_profile() {
        let r = parse_ring(DELIGNE).unwrap();
        let c = classify(&r).unwrap();
        assert_eq!(v(&c, Predicate::Mp), Some(true));
        assert_eq!(v(&c, Predicate::QuasiPf), Some(false));
        assert_eq!(v(&c, Predicate::Gpf), Some(false));
        assert_eq!(v(&c, Predicate::Reduced), Some(false));
        let q = quotient_mod_nil_profile(&r).unwrap();
        assert_eq!(v(&q, Predicate::Pp), Some(true));
        assert_eq!(v(&q, Predicate::Domain), Some(true));
    }

    #[test]
    fn predicate_names() {
        assert_eq!("quasi-pf".parse::<Predicate>().unwrap(), Predicate::QuasiPf);
        assert!(matches!("nope".parse::<Predicate>(), Err(Error::UnknownName(_))));
    }
}
