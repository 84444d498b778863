//! Theorem reports: clause verdicts and the rules that relate them.

use std::fmt;

use serde::Serialize;

use crate::classify::Strategy;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Pass,
    Indeterminate,
    Fail,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agreement::Pass => "pass",
            Agreement::Indeterminate => "indeterminate",
            Agreement::Fail => "fail",
        })
    }
}

/// How clause verdicts must relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Holds(usize),
    Implies(usize, usize),
    Equiv(usize, usize),
}

impl Rule {
    /// All clauses equivalent to the first.
    pub fn equivalent(n: usize) -> Vec<Rule> {
        (1..n).map(|k| Rule::Equiv(0, k)).collect()
    }

    /// Each clause implies the next.
    pub fn chain(n: usize) -> Vec<Rule> {
        (1..n).map(|k| Rule::Implies(k - 1, k)).collect()
    }

    /// The first clause implies each of the others.
    pub fn premise(n: usize) -> Vec<Rule> {
        (1..n).map(|k| Rule::Implies(0, k)).collect()
    }

    pub fn judge(self, v: &[Verdict]) -> Agreement {
        let b = |i: usize| v[i].as_bool();
        match self {
            Rule::Holds(i) => match b(i) {
                Some(true) => Agreement::Pass,
                Some(false) => Agreement::Fail,
                None => Agreement::Indeterminate,
            },
            Rule::Implies(i, j) => match (b(i), b(j)) {
                (Some(false), _) | (_, Some(true)) => Agreement::Pass,
                (Some(true), Some(false)) => Agreement::Fail,
                _ => Agreement::Indeterminate,
            },
            Rule::Equiv(i, j) => match (b(i), b(j)) {
                (Some(x), Some(y)) if x == y => Agreement::Pass,
                (Some(_), Some(_)) => Agreement::Fail,
                _ => Agreement::Indeterminate,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub label: String,
    pub verdict: Verdict,
    pub strategy: Strategy,
    pub routes: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ClauseResult {
    pub fn new(label: impl Into<String>, verdict: Verdict, strategy: Strategy) -> Self {
        let strategy = if verdict.is_decided() { strategy } else { Strategy::Unknown };
        ClauseResult { label: label.into(), verdict, strategy, routes: Vec::new(), witness: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub ring: String,
    pub clauses: Vec<ClauseResult>,
    pub rules: Vec<Rule>,
    pub agreement: Agreement,
}

impl TheoremReport {
    pub fn new(
        theorem: impl Into<String>,
        ring: impl Into<String>,
        clauses: Vec<ClauseResult>,
        rules: Vec<Rule>,
    ) -> Self {
        let verdicts: Vec<Verdict> = clauses.iter().map(|c| c.verdict.clone()).collect();
        let agreement = rules.iter().map(|r| r.judge(&verdicts)).max().unwrap_or(Agreement::Pass);
        TheoremReport { theorem: theorem.into(), ring: ring.into(), clauses, rules, agreement }
    }

    pub fn witnesses(&self) -> Vec<&Witness> {
        self.clauses.iter().filter_map(|c| c.witness.as_ref()).collect()
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}: {}", self.theorem, self.ring, self.agreement)?;
        let width = self.clauses.iter().map(|c| c.label.chars().count()).max().unwrap_or(0);
        for c in &self.clauses {
            write!(f, "  {:<width$}  {}", c.label, c.verdict)?;
            if let Some(w) = &c.witness {
                write!(f, "  [{}: {}]", w.elements.join(", "), w.note)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        let t = Verdict::True;
        let f = Verdict::False;
        let u = Verdict::unknown("bound");
        assert_eq!(Rule::Implies(0, 1).judge(&[t.clone(), f.clone()]), Agreement::Fail);
        assert_eq!(Rule::Implies(0, 1).judge(&[u.clone(), t.clone()]), Agreement::Pass);
        assert_eq!(Rule::Implies(0, 1).judge(&[t.clone(), u.clone()]), Agreement::Indeterminate);
        assert_eq!(Rule::Equiv(0, 1).judge(&[f.clone(), f.clone()]), Agreement::Pass);
        assert_eq!(Rule::Equiv(0, 1).judge(&[u, f.clone()]), Agreement::Indeterminate);
        assert_eq!(Rule::Holds(0).judge(&[f]), Agreement::Fail);
    }
}
