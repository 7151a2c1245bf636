//! Three-valued outcome shared by every relation check.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Majorize,
    Submajorize,
    Supermajorize,
    Power,
    Trump,
    Certificate,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Majorize => "majorize",
            Relation::Submajorize => "submajorize",
            Relation::Supermajorize => "supermajorize",
            Relation::Power => "power",
            Relation::Trump => "trump",
            Relation::Certificate => "certificate",
        }
    }
}

/// Evidence that a relation fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// 1-based prefix index whose partial-sum inequality is violated.
    Prefix {
        k: usize,
        deficit: f64,
    },
    /// Parameter `r` (or `p`) at which the scanned inequality is violated.
    Parameter {
        r: f64,
        value: f64,
    },
    Reason {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails {
        witness: Witness,
    },
    /// The numerical margin is too small to decide either way.
    Inconclusive {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        min_gap: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        argmin_r: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn fails_with(reason: impl Into<String>) -> Self {
        Verdict::Fails {
            witness: Witness::Reason {
                reason: reason.into(),
            },
        }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Self {
        Verdict::Inconclusive {
            reason: reason.into(),
            min_gap: None,
            argmin_r: None,
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Holds => Outcome::Holds,
            Verdict::Fails { .. } => Outcome::Fails,
            Verdict::Inconclusive { .. } => Outcome::Inconclusive,
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn from_bool(holds: bool, witness: impl FnOnce() -> Witness) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails { witness: witness() }
        }
    }
}

/// Uniform machine-readable summary: `{relation, outcome, witness, margins, exact}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub relation: Relation,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub margins: Vec<f64>,
    pub exact: bool,
}
