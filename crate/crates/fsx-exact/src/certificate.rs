//! Condition records and certificates.
//!
//! A certificate is the auditable output of one hypothesis check: every
//! condition the theorem imposes, evaluated in exact arithmetic, with a signed
//! residual measuring the margin in the favorable direction. The verdict
//! follows a fixed precedence:
//!
//! 1. any violated condition → `Inadmissible`;
//! 2. otherwise, any *strict* condition sitting exactly on its boundary
//!    (residual 0) → `Boundary` — limit cases are open questions, and the
//!    checker must not claim falsity there;
//! 3. otherwise `Admissible`.

use crate::rational::Xr;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Comparison relation of a condition, `lhs REL rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

impl Rel {
    pub fn is_strict(self) -> bool {
        matches!(self, Rel::Lt | Rel::Gt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Ne => "!=",
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One evaluated hypothesis condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    /// Stable id within the theorem (e.g. `"chain-upper"`).
    pub id: String,
    /// Human-readable transcription of the condition.
    pub text: String,
    pub rel: Rel,
    pub lhs: Xr,
    pub rhs: Xr,
    /// Margin in the favorable direction: `rhs − lhs` for `<`/`<=`,
    /// `lhs − rhs` for `>`/`>=`/`=`/`!=`. Equal infinities give 0.
    pub residual: Xr,
    pub satisfied: bool,
    /// Whether increasing the smoothness parameter `s` can only increase this
    /// condition's residual (`Some(true)`), only decrease it (`Some(false)`),
    /// or `s` does not act monotonically / does not appear (`None`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_favorable: Option<bool>,
}

impl Condition {
    pub fn evaluate(
        id: impl Into<String>,
        text: impl Into<String>,
        lhs: Xr,
        rel: Rel,
        rhs: Xr,
        s_favorable: Option<bool>,
    ) -> Self {
        let residual = match rel {
            Rel::Lt | Rel::Le => Xr::residual_diff(&rhs, &lhs),
            Rel::Gt | Rel::Ge | Rel::Eq | Rel::Ne => Xr::residual_diff(&lhs, &rhs),
        };
        let satisfied = match rel {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Eq => lhs == rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
            Rel::Ne => lhs != rhs,
        };
        Condition {
            id: id.into(),
            text: text.into(),
            rel,
            lhs,
            rhs,
            residual,
            satisfied,
            s_favorable,
        }
    }

    /// A satisfied-but-marginal strict condition (residual exactly 0).
    pub fn on_boundary(&self) -> bool {
        self.rel.is_strict() && self.residual.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Admissible,
    Inadmissible,
    Boundary,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Admissible => "admissible",
            Verdict::Inadmissible => "inadmissible",
            Verdict::Boundary => "boundary",
        })
    }
}

/// The full outcome of one hypothesis check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem_id: String,
    pub verdict: Verdict,
    pub conditions: Vec<Condition>,
    /// Parameters the checker solved or selected (θ, δ, δ₁, λ, μ(σ), ϖ(σ), …),
    /// in deterministic key order.
    pub derived: BTreeMap<String, Xr>,
    /// Free-form flags: adopted notational readings, unsolvable branches, etc.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    /// Apply the verdict precedence to an evaluated condition list. A strict
    /// condition sitting exactly on its boundary is *not* a violation — it
    /// demotes the verdict to `Boundary` unless something else is violated
    /// outright.
    pub fn conclude(
        theorem_id: impl Into<String>,
        conditions: Vec<Condition>,
        derived: BTreeMap<String, Xr>,
        notes: Vec<String>,
    ) -> Self {
        let hard_violation = |c: &Condition| !c.satisfied && !c.on_boundary();
        let verdict = if conditions.iter().any(hard_violation) {
            Verdict::Inadmissible
        } else if conditions.iter().any(|c| c.on_boundary()) {
            Verdict::Boundary
        } else {
            Verdict::Admissible
        };
        Certificate {
            theorem_id: theorem_id.into(),
            verdict,
            conditions,
            derived,
            notes,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.verdict == Verdict::Admissible
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn derived_value(&self, key: &str) -> Option<&Xr> {
        self.derived.get(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cond(id: &str, lhs: Xr, rel: Rel, rhs: Xr) -> Condition {
        Condition::evaluate(id, format!("{lhs} {rel} {rhs}"), lhs, rel, rhs, None)
    }

    #[test]
    fn residual_directions() {
        let c = cond("a", Xr::int(1), Rel::Lt, Xr::int(3));
        assert_eq!(c.residual, Xr::int(2));
        assert!(c.satisfied);

        let c = cond("b", Xr::int(5), Rel::Ge, Xr::int(2));
        assert_eq!(c.residual, Xr::int(3));
        assert!(c.satisfied);

        let c = cond("c", Xr::ratio(1, 2), Rel::Eq, Xr::ratio(1, 3));
        assert_eq!(c.residual, Xr::ratio(1, 6));
        assert!(!c.satisfied);
    }

    #[test]
    fn verdict_precedence() {
        // Violated non-strict beats boundary.
        let cert = Certificate::conclude(
            "t",
            vec![
                cond("strict-zero", Xr::int(1), Rel::Gt, Xr::int(1)),
                cond("violated", Xr::int(0), Rel::Ge, Xr::int(1)),
            ],
            BTreeMap::new(),
            vec![],
        );
        assert_eq!(cert.verdict, Verdict::Inadmissible);

        // Boundary: all satisfied except a strict at equality.
        let cert = Certificate::conclude(
            "t",
            vec![
                cond("ok", Xr::int(2), Rel::Gt, Xr::int(1)),
                cond("strict-zero", Xr::int(1), Rel::Lt, Xr::int(1)),
            ],
            BTreeMap::new(),
            vec![],
        );
        assert_eq!(cert.verdict, Verdict::Boundary);

        let cert = Certificate::conclude(
            "t",
            vec![cond("ok", Xr::int(2), Rel::Gt, Xr::int(1))],
            BTreeMap::new(),
            vec![],
        );
        assert_eq!(cert.verdict, Verdict::Admissible);
    }

    #[test]
    fn strict_below_boundary_is_violation() {
        let cert = Certificate::conclude(
            "t",
            vec![cond("neg", Xr::int(0), Rel::Gt, Xr::int(1))],
            BTreeMap::new(),
            vec![],
        );
        assert_eq!(cert.verdict, Verdict::Inadmissible);
    }

    #[test]
    fn ne_zero_residual_is_violation() {
        let c = cond("ne", Xr::int(2), Rel::Ne, Xr::int(2));
        assert!(!c.satisfied);
        assert_eq!(c.residual, Xr::zero());
    }

    #[test]
    fn serde_embeds_exact_strings() {
        let cert = Certificate::conclude(
            "demo",
            vec![cond("w", Xr::ratio(-1, 4), Rel::Lt, Xr::ratio(3, 4))],
            BTreeMap::from([("theta".to_string(), Xr::ratio(2, 5))]),
            vec!["note".into()],
        );
        let js = serde_json::to_string(&cert).unwrap();
        assert!(js.contains("\"theta\":\"2/5\""));
        assert!(js.contains("\"residual\":\"1\""));
        let back: Certificate = serde_json::from_str(&js).unwrap();
        assert_eq!(cert, back);
    }
}
