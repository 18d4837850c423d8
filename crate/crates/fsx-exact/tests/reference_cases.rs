//! Runs every frozen reference tuple through its checker and pins the verdict,
//! selected derived values, and selected exact residuals.
//!
//! The expected values in the table were worked out by hand in exact rational
//! arithmetic from the hypothesis lists; this suite asserts bit-for-bit
//! agreement (no floating point is involved anywhere).

use fsx_exact::refcases::{all, RefCase};
use fsx_exact::{Verdict, Xr};
use std::collections::BTreeMap;

fn xr(s: &str) -> Xr {
    s.parse().unwrap_or_else(|e| panic!("bad rational {s:?}: {e}"))
}

#[test]
fn every_case_produces_its_expected_verdict_and_values() {
    for case in all() {
        let cert = case.run().unwrap_or_else(|e| panic!("{}: {e}", case.label));
        assert_eq!(
            cert.verdict, case.expect,
            "{}: verdict mismatch\n{:#?}",
            case.label, cert
        );
        for (key, want) in case.derived {
            let got = cert
                .derived_value(key)
                .unwrap_or_else(|| panic!("{}: missing derived `{key}`", case.label));
            assert_eq!(*got, xr(want), "{}: derived `{key}`", case.label);
        }
        for (id, want) in case.residuals {
            let got = cert
                .condition(id)
                .unwrap_or_else(|| panic!("{}: missing condition `{id}`", case.label));
            assert_eq!(got.residual, xr(want), "{}: residual of `{id}`", case.label);
        }
    }
}

/// Whenever a checker solves θ itself, back-substitution into the balance
/// relation must be exact, and the same for the λ split.
#[test]
fn solved_parameters_back_substitute_exactly() {
    let zero = Xr::zero();
    for case in all() {
        let cert = case.run().unwrap();
        if cert.derived_value("theta").is_some() {
            if let Some(balance) = cert.condition("balance") {
                assert_eq!(
                    balance.residual, zero,
                    "{}: solved θ must zero the balance residual",
                    case.label
                );
            }
        }
        if let Some(backsub) = cert.derived_value("lambda_backsub") {
            assert_eq!(
                *backsub, zero,
                "{}: λ back-substitution must be exact",
                case.label
            );
        }
    }
}

/// Coverage contract for the table itself: at least 40 cases overall, at least
/// three per interpolation/embedding theorem family, and at least one boundary
/// case per family.
#[test]
fn table_covers_every_family_with_a_boundary_case() {
    let family = |theorem: &str| -> &'static str {
        match theorem {
            "ckn_classical" => "classical",
            "ckn_T2i" | "ckn_T2ii" | "ckn_T2iii" => "T2",
            "ckn_T21i" | "ckn_T21ii" | "ckn_T21iii" => "T21",
            "ckn_T3i" | "ckn_T3ii" | "ckn_T3iii" => "T3",
            "ckn_T4" => "T4",
            "ckn_T5" => "T5",
            "morrey_ckn" => "morrey_ckn",
            "morrey_embedding" => "morrey_embedding",
            "embedding_B" | "embedding_F" => "embedding",
            "franke" => "franke",
            _ => "lemma",
        }
    };
    let core = [
        "classical",
        "T2",
        "T21",
        "T3",
        "T4",
        "T5",
        "morrey_ckn",
        "morrey_embedding",
        "embedding",
        "franke",
    ];
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for case in all() {
        let entry = counts.entry(family(case.theorem)).or_default();
        entry.0 += 1;
        if case.expect == Verdict::Boundary {
            entry.1 += 1;
        }
    }
    assert!(all().len() >= 40, "table has only {} cases", all().len());
    for fam in core {
        let (total, boundary) = counts.get(fam).copied().unwrap_or_default();
        assert!(total >= 3, "family {fam} has only {total} cases");
        assert!(boundary >= 1, "family {fam} has no boundary case");
    }
}

/// The classical-reduction rows (all-zero weights or the documented reduction
/// shape) must come out admissible: they are the sanity anchors tying the
/// general hypothesis tables back to their unweighted special cases.
#[test]
fn classical_reduction_rows_are_admissible() {
    let reductions: Vec<&RefCase> = all()
        .iter()
        .filter(|c| c.label.contains("classical reduction") || c.label.contains("classical-reduction"))
        .collect();
    assert!(
        reductions.len() >= 4,
        "expected reduction rows for each interpolation family, found {}",
        reductions.len()
    );
    for case in reductions {
        assert_eq!(case.expect, Verdict::Admissible, "{}", case.label);
    }
}

/// Certificates are pure functions of the tuple: two runs must agree exactly,
/// including serialized form.
#[test]
fn checking_is_deterministic() {
    for case in all() {
        let a = case.run().unwrap();
        let b = case.run().unwrap();
        assert_eq!(a, b, "{}", case.label);
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb, "{}", case.label);
    }
}

/// Round-trip: a certificate survives JSON serialization unchanged.
#[test]
fn certificates_round_trip_through_json() {
    for case in all() {
        let cert = case.run().unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: fsx_exact::Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(cert, back, "{}", case.label);
    }
}
