use serde::{Deserialize, Serialize};
use std::fmt;

/// Three-valued decision result.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    /// Search exhausted its bound without deciding.
    Unknown {
        bound: String,
    },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn unknown(bound: impl Into<String>) -> Self {
        Verdict::Unknown { bound: bound.into() }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn is_true(&self) -> bool {
        *self == Verdict::True
    }

    pub fn is_false(&self) -> bool {
        *self == Verdict::False
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Verdict::Unknown { .. })
    }

    /// Kleene conjunction.
    pub fn and(&self, other: &Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            (Verdict::Unknown { bound }, _) | (_, Verdict::Unknown { bound }) => {
                Verdict::Unknown { bound: bound.clone() }
            }
        }
    }

    pub fn not(&self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            u => u.clone(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unknown { bound } => write!(f, "unknown ({bound})"),
            v => f.write_str(v.label()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    RefutingElement,
    RefutingPair,
    Idempotent,
    Separator,
}

/// Explanation attached to a verdict. Elements are in canonical syntax so a
/// witness can be replayed against the ring it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<String>,
    pub note: String,
}

impl Witness {
    pub fn new(kind: WitnessKind, elements: Vec<String>, note: impl Into<String>) -> Self {
        Witness { kind, elements, note: note.into() }
    }

    pub fn element(e: String, note: impl Into<String>) -> Self {
        Self::new(WitnessKind::RefutingElement, vec![e], note)
    }

    pub fn pair(a: String, b: String, note: impl Into<String>) -> Self {
        Self::new(WitnessKind::RefutingPair, vec![a, b], note)
    }
}

/// A verdict together with its optional witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl Decision {
    pub fn yes() -> Self {
        Decision { verdict: Verdict::True, witness: None }
    }

    pub fn no(w: Option<Witness>) -> Self {
        Decision { verdict: Verdict::False, witness: w }
    }

    pub fn unknown(bound: impl Into<String>) -> Self {
        Decision { verdict: Verdict::unknown(bound), witness: None }
    }

    pub fn from_bool(b: bool) -> Self {
        Decision { verdict: Verdict::from_bool(b), witness: None }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_and() {
        let u = Verdict::unknown("h=4");
        assert_eq!(Verdict::True.and(&u), u);
        assert_eq!(Verdict::False.and(&u), Verdict::False);
        assert_eq!(Verdict::True.and(&Verdict::True), Verdict::True);
        assert_eq!(u.not(), u);
    }
}
