use std::collections::BTreeMap;

use serde::Serialize;

/// Which result a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    /// Pure-power nonexistence below the Sobolev exponent.
    A,
    /// `s^{-p_S} f(s)` nonincreasing and nonconstant.
    B,
    /// Regular variation hypotheses for the universal estimate.
    CHyp,
    /// Growth window plus the `φ`-ratio condition.
    GsModified,
    /// Integral-estimate conditions with free parameters `(q, k, m_i, γ_i)`.
    GsGeneral,
    /// Growth and Pohozaev-sign conditions for gradient systems.
    Thm1,
    Cor22,
    Cor23,
    Proportional,
    LaneEmdenRegion,
}

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Holds {
    Yes,
    No,
    Indeterminate,
}

impl Holds {
    /// Verdict for a strict inequality `margin > 0`.
    pub fn strict(margin: f64, tol: f64) -> Holds {
        if margin.is_nan() {
            Holds::Indeterminate
        } else if margin > tol {
            Holds::Yes
        } else if margin < -tol {
            Holds::No
        } else {
            Holds::Indeterminate
        }
    }

    /// Verdict for a non-strict inequality `margin >= 0`.
    pub fn non_strict(margin: f64, tol: f64) -> Holds {
        if margin.is_nan() {
            Holds::Indeterminate
        } else if margin >= -tol {
            Holds::Yes
        } else {
            Holds::No
        }
    }

    pub fn from_bool(b: bool) -> Holds {
        if b {
            Holds::Yes
        } else {
            Holds::No
        }
    }

    /// Conjunction: any `No` wins, then any `Indeterminate`.
    pub fn and(self, other: Holds) -> Holds {
        match (self, other) {
            (Holds::No, _) | (_, Holds::No) => Holds::No,
            (Holds::Indeterminate, _) | (_, Holds::Indeterminate) => Holds::Indeterminate,
            _ => Holds::Yes,
        }
    }
}

/// A point where a condition binds or fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub condition: String,
    /// Coordinates (`s`, or `(u, v)`, or parameters).
    pub point: Vec<f64>,
    /// Value of the tested quantity there.
    pub value: f64,
    /// The bound it is compared with.
    pub bound: f64,
}

/// One sub-condition of a check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: Holds,
    pub margin: f64,
    pub detail: String,
}

/// Where and how finely a check was scanned.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanMeta {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub tol: f64,
}

/// Report of a hypothesis check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckVerdict {
    pub theorem: TheoremId,
    pub holds: Holds,
    /// Signed distance to the boundary of the (aggregate) condition.
    pub margin: f64,
    pub conditions: Vec<Condition>,
    pub witnesses: Vec<Witness>,
    /// Named auxiliary values (suprema, fitted indices, parameters).
    pub values: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub scan: ScanMeta,
}

impl CheckVerdict {
    pub fn new(theorem: TheoremId, scan: ScanMeta) -> Self {
        CheckVerdict {
            theorem,
            holds: Holds::Yes,
            margin: f64::INFINITY,
            conditions: Vec::new(),
            witnesses: Vec::new(),
            values: BTreeMap::new(),
            warnings: Vec::new(),
            scan,
        }
    }

    /// Record a sub-condition and fold it into the aggregate.
    pub fn push(&mut self, name: &str, holds: Holds, margin: f64, detail: impl Into<String>) {
        self.holds = self.holds.and(holds);
        self.conditions.push(Condition { name: name.to_string(), holds, margin, detail: detail.into() });
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn set(&mut self, name: &str, v: f64) {
        self.values.insert(name.to_string(), v);
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn witness(&mut self, condition: &str, point: Vec<f64>, value: f64, bound: f64) {
        self.witnesses.push(Witness { condition: condition.to_string(), point, value, bound });
    }
}
