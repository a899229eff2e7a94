//! Three-valued check results.
//!
//! Every law checker returns a [`Verdict`]. A `Fails` verdict always carries a
//! [`Witness`] naming the morphisms involved and the equation that broke, so a
//! failure can be replayed in isolation. `Unknown` is reserved for searches
//! that ran out of budget without settling the question.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub equation: String,
    pub items: Vec<(String, String)>,
}

impl Witness {
    pub fn new(equation: impl Into<String>) -> Self {
        Witness {
            equation: equation.into(),
            items: Vec::new(),
        }
    }

    pub fn item(mut self, label: impl Into<String>, value: impl fmt::Debug) -> Self {
        self.items.push((label.into(), format!("{value:?}")));
        self
    }

    pub fn text(mut self, label: impl Into<String>, value: impl Into<String>) -> Self {
        self.items.push((label.into(), value.into()));
        self
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.items
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.equation)?;
        for (label, value) in &self.items {
            write!(f, "; {label} = {value}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Unknown,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails { witness: Witness },
    Unknown { bound: String },
}

impl Verdict {
    pub fn fails(witness: Witness) -> Self {
        Verdict::Fails { witness }
    }

    pub fn unknown(bound: impl Into<String>) -> Self {
        Verdict::Unknown {
            bound: bound.into(),
        }
    }

    pub fn from_bool(holds: bool, witness: impl FnOnce() -> Witness) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::fails(witness())
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Holds => Outcome::Holds,
            Verdict::Fails { .. } => Outcome::Fails,
            Verdict::Unknown { .. } => Outcome::Unknown,
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    /// Conjunction: Fails dominates Unknown dominates Holds. Among verdicts of
    /// equal rank the left one is kept, so folding in a fixed order is
    /// deterministic.
    pub fn and(self, other: Verdict) -> Verdict {
        if other.outcome() > self.outcome() {
            other
        } else {
            self
        }
    }

    /// Disjunction for existential searches: Holds dominates Unknown dominates
    /// Fails.
    pub fn or(self, other: Verdict) -> Verdict {
        let rank = |v: &Verdict| match v {
            Verdict::Holds => 2,
            Verdict::Unknown { .. } => 1,
            Verdict::Fails { .. } => 0,
        };
        if rank(&other) > rank(&self) {
            other
        } else {
            self
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(verdicts: I) -> Verdict {
        let mut acc = Verdict::Holds;
        for v in verdicts {
            acc = acc.and(v);
            if acc.is_fails() {
                break;
            }
        }
        acc
    }

    /// Negation of a decided verdict; Unknown stays Unknown.
    pub fn negate(self, witness: impl FnOnce() -> Witness) -> Verdict {
        match self {
            Verdict::Holds => Verdict::fails(witness()),
            Verdict::Fails { .. } => Verdict::Holds,
            u => u,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "Holds"),
            Verdict::Fails { witness } => write!(f, "Fails({witness})"),
            Verdict::Unknown { bound } => write!(f, "Unknown({bound})"),
        }
    }
}
