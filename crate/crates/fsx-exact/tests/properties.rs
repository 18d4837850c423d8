//! Randomized invariants of the admissibility checkers.
//!
//! Tuples are drawn from the sane input domain (positive finite indices,
//! small rational weights); every theorem id is run on every tuple.

use fsx_exact::{check, Certificate, ParamTuple, Verdict, Xr, THEOREM_IDS};
use proptest::prelude::*;

fn xr(s: String) -> Xr {
    s.parse().unwrap()
}

/// Positive rational in (0, 24], denominators up to 6.
fn index() -> impl Strategy<Value = Xr> {
    (1u32..=24, 1u32..=6).prop_map(|(n, d)| xr(format!("{n}/{d}")))
}

/// Rational weight in [−2, 2], denominators up to 8.
fn weight() -> impl Strategy<Value = Xr> {
    (-16i32..=16, 1u32..=8).prop_map(|(n, d)| xr(format!("{n}/{d}")))
}

/// A fully populated tuple: no checker can fail with a missing parameter, so
/// every run exercises the full condition table.
fn full_tuple() -> impl Strategy<Value = ParamTuple> {
    let indices = proptest::collection::vec(index(), 20);
    let weights = proptest::collection::vec(weight(), 7);
    (1u32..=3, indices, weights, proptest::option::of(index()), 1u32..=4).prop_map(
        |(n, idx, w, theta, big_m)| {
            let mut pt = ParamTuple::new(n);
            let names = [
                "p", "q", "r", "s", "u", "v", "tau", "rho", "beta", "kappa", "mu", "delta",
                "p1", "p2", "q1", "q2", "u1", "u2", "s1", "s2",
            ];
            for (name, value) in names.iter().zip(idx) {
                pt.set(name, value).unwrap();
            }
            let wnames = ["alpha", "alpha1", "alpha2", "alpha3", "sigma", "s1", "s2"];
            for (name, value) in wnames.iter().zip(w) {
                pt.set(name, value).unwrap();
            }
            if let Some(th) = theta {
                pt.set("theta", th).unwrap();
            }
            pt.set("M", xr(big_m.to_string())).unwrap();
            pt
        },
    )
}

/// Re-derive the verdict from the published conditions; the checker's own
/// conclusion must agree.
fn expected_verdict(cert: &Certificate) -> Verdict {
    if cert
        .conditions
        .iter()
        .any(|c| !c.satisfied && !c.on_boundary())
    {
        Verdict::Inadmissible
    } else if cert.conditions.iter().any(|c| c.on_boundary()) {
        Verdict::Boundary
    } else {
        Verdict::Admissible
    }
}

proptest! {
    /// Checking is a pure function of the tuple, down to serialized bytes.
    #[test]
    fn deterministic_across_reruns(pt in full_tuple()) {
        for id in THEOREM_IDS {
            let a = check(id, &pt);
            let b = check(id, &pt);
            match (a, b) {
                (Ok(ca), Ok(cb)) => {
                    prop_assert_eq!(&ca, &cb, "{}", id);
                    let ja = serde_json::to_string(&ca).unwrap();
                    let jb = serde_json::to_string(&cb).unwrap();
                    prop_assert_eq!(ja, jb, "{}", id);
                }
                (Err(ea), Err(eb)) => prop_assert_eq!(ea.to_string(), eb.to_string()),
                _ => prop_assert!(false, "{}: one run errored, the other did not", id),
            }
        }
    }

    /// The verdict is exactly the precedence fold over the condition table:
    /// any hard violation ⇒ inadmissible, else any strict-at-equality
    /// condition ⇒ boundary, else admissible.
    #[test]
    fn verdict_matches_condition_fold(pt in full_tuple()) {
        for id in THEOREM_IDS {
            if let Ok(cert) = check(id, &pt) {
                prop_assert_eq!(cert.verdict, expected_verdict(&cert), "{}", id);
            }
        }
    }

    /// Whenever a checker solves θ from its balance relation, back-substitution
    /// is exact: the balance residual is the literal zero, never a small
    /// rational.
    #[test]
    fn solved_theta_zeroes_the_balance(pt in full_tuple()) {
        let mut pt = pt;
        pt.theta = None; // force the solving path
        for id in THEOREM_IDS {
            if let Ok(cert) = check(id, &pt) {
                if cert.derived_value("theta").is_some() {
                    if let Some(balance) = cert.condition("balance") {
                        prop_assert_eq!(&balance.residual, &Xr::zero(), "{}", id);
                    }
                }
                if let Some(backsub) = cert.derived_value("lambda_backsub") {
                    prop_assert_eq!(backsub, &Xr::zero(), "{}", id);
                }
            }
        }
    }

    /// For the windows whose only use of s is a favorable lower gate,
    /// admissibility is upward-closed in s.
    #[test]
    fn admissibility_is_monotone_in_s_for_lower_gated_windows(pt in full_tuple(), bump in index()) {
        for id in ["regularity_B", "regularity_F", "new_norm3", "new_norm4", "riesz_split"] {
            let before = check(id, &pt).unwrap();
            if before.verdict == Verdict::Admissible {
                let mut raised = pt.clone();
                let s = raised.field("s").unwrap().clone();
                raised.set("s", &s + &bump).unwrap();
                let after = check(id, &raised).unwrap();
                prop_assert_eq!(after.verdict, Verdict::Admissible, "{}", id);
            }
        }
    }
}
