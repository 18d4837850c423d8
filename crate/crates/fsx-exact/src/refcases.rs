//! Hand-worked reference tuples for the admissibility checkers.
//!
//! Every entry was derived by hand in exact rational arithmetic directly from
//! the hypothesis lists implemented in [`crate::theorems`], then frozen here:
//! the expected verdict, selected derived values, and selected condition
//! residuals. The table is exported (not test-only) so integration suites
//! elsewhere in the workspace can audit the same cases.
//!
//! Conventions used when deriving the entries:
//! - Where a case solves θ (or λ), the recorded value was obtained by solving
//!   the affine balance by hand and back-substituting; the `balance` residual
//!   must then be exactly 0, and `lambda_backsub`, when present, exactly 0.
//! - "classical reduction" labels mark tuples whose weights and indices
//!   collapse the hypothesis list to a known unweighted special case.
//! - Boundary rows place exactly one (or a coupled pair of) strict conditions
//!   at residual zero while keeping everything else strictly satisfied.

use crate::certificate::{Certificate, Verdict};
use crate::params::ParamTuple;
use crate::theorems::{check, ExactError};
use Verdict::{Admissible, Boundary, Inadmissible};

/// One frozen reference tuple with its expected outcome.
#[derive(Debug)]
pub struct RefCase {
    /// Unique description of what the case exercises.
    pub label: &'static str,
    /// Theorem id accepted by [`check`].
    pub theorem: &'static str,
    /// Dimension.
    pub n: u32,
    /// Parameter assignments; values parse as exact rationals (`"3/4"`,
    /// `"-1/8"`, `"inf"`).
    pub fields: &'static [(&'static str, &'static str)],
    /// Expected verdict.
    pub expect: Verdict,
    /// Expected derived values (exact equality after parsing).
    pub derived: &'static [(&'static str, &'static str)],
    /// Expected residuals of selected conditions (exact equality).
    pub residuals: &'static [(&'static str, &'static str)],
}

impl RefCase {
    /// Build the parameter tuple and run the checker.
    pub fn run(&self) -> Result<Certificate, ExactError> {
        let mut pt = ParamTuple::new(self.n);
        for (name, value) in self.fields {
            let x = value
                .parse()
                .unwrap_or_else(|e| panic!("{}: bad value {value:?} for {name}: {e}", self.label));
            pt.set(name, x)
                .unwrap_or_else(|| panic!("{}: unknown field {name:?}", self.label));
        }
        check(self.theorem, &pt)
    }
}

/// The frozen reference table.
pub fn all() -> &'static [RefCase] {
    CASES
}

const CASES: &[RefCase] = &[
    // -----------------------------------------------------------------
    // Classical weighted interpolation with a gradient factor
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_classical: unweighted Nash-type tuple, theta given",
        theorem: "ckn_classical",
        n: 1,
        fields: &[
            ("tau", "2"),
            ("q", "1"),
            ("p", "2"),
            ("theta", "2/3"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("scale_exponent", "-1/2")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_classical: unweighted Nash-type tuple, theta solved from the balance",
        theorem: "ckn_classical",
        n: 1,
        fields: &[
            ("tau", "2"),
            ("q", "1"),
            ("p", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "2/3"), ("scale_exponent", "-1/2")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_classical: LHS weight pinned at the lower window edge",
        theorem: "ckn_classical",
        n: 1,
        fields: &[
            ("tau", "2"),
            ("q", "1"),
            ("p", "2"),
            ("theta", "1/3"),
            ("alpha1", "-1/2"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[],
        residuals: &[("alpha1-lower", "0"), ("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Band-limited norm lifting (annulus-weighted form)
    // -----------------------------------------------------------------
    RefCase {
        label: "ppn1: unweighted lift q -> s with equal weights (outer index r)",
        theorem: "ppn1",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "1"),
            ("tau", "3"),
            ("r", "4"),
            ("alpha1", "0"),
            ("alpha2", "0"),
        ],
        expect: Admissible,
        derived: &[("delta", "4"), ("exponent", "1/2")],
        residuals: &[],
    },
    RefCase {
        label: "ppn1: strictly larger source weight switches the outer index to tau",
        theorem: "ppn1",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "1"),
            ("tau", "3"),
            ("r", "4"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
        ],
        expect: Admissible,
        derived: &[("delta", "3"), ("exponent", "3/4")],
        residuals: &[],
    },
    RefCase {
        label: "ppn1: weight window alpha1 + n/s > 0 pinned at zero",
        theorem: "ppn1",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "1"),
            ("tau", "3"),
            ("r", "4"),
            ("alpha1", "-1/2"),
            ("alpha2", "-1/2"),
        ],
        expect: Boundary,
        derived: &[("delta", "4"), ("exponent", "1/2")],
        residuals: &[("alpha1-window", "0")],
    },
    RefCase {
        label: "ppn2: weight gap at its sharp minimum (outer index r)",
        theorem: "ppn2",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "4"),
            ("tau", "3"),
            ("r", "4"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
        ],
        expect: Admissible,
        derived: &[("delta", "4"), ("exponent", "0")],
        residuals: &[],
    },
    RefCase {
        label: "ppn2: weight gap above the minimum (outer index tau)",
        theorem: "ppn2",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "4"),
            ("tau", "3"),
            ("r", "4"),
            ("alpha1", "0"),
            ("alpha2", "1/2"),
        ],
        expect: Admissible,
        derived: &[("delta", "3"), ("exponent", "1/4")],
        residuals: &[],
    },
    // -----------------------------------------------------------------
    // Single-multiplier smoothing bounds (annulus-weighted form)
    // -----------------------------------------------------------------
    RefCase {
        label: "qj_i: u = 1 lift with smoothing order 1 (slope 3/2 tuple)",
        theorem: "qj_i",
        n: 1,
        fields: &[
            ("u", "1"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("sigma", "1"),
            ("alpha1", "0"),
            ("alpha2", "0"),
        ],
        expect: Admissible,
        derived: &[("delta", "2"), ("exponent", "3/2")],
        residuals: &[],
    },
    RefCase {
        label: "qj_i: target weight pinned at the upper window edge",
        theorem: "qj_i",
        n: 1,
        fields: &[
            ("u", "1"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("sigma", "0"),
            ("alpha1", "1/2"),
            ("alpha2", "1/2"),
        ],
        expect: Boundary,
        derived: &[("delta", "2"), ("exponent", "1/2")],
        residuals: &[("alpha1-upper", "0")],
    },
    RefCase {
        label: "qj_ii: v <= u variant with the weight gap at its sharp minimum",
        theorem: "qj_ii",
        n: 1,
        fields: &[
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "3"),
            ("sigma", "1/2"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
        ],
        expect: Admissible,
        derived: &[("delta", "2"), ("exponent", "1/2")],
        residuals: &[],
    },
    RefCase {
        label: "qj_ii: equal indices with the weight at the upper window edge",
        theorem: "qj_ii",
        n: 1,
        fields: &[
            ("u", "2"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("sigma", "0"),
            ("alpha1", "1/2"),
            ("alpha2", "1/2"),
        ],
        expect: Boundary,
        derived: &[("delta", "2"), ("exponent", "0")],
        residuals: &[("alpha1-upper", "0")],
    },
    // -----------------------------------------------------------------
    // Band-limited lifting between ball-uniform norms
    // -----------------------------------------------------------------
    RefCase {
        label: "pn1: two-factor lift with v = u (vanishing exponent)",
        theorem: "pn1",
        n: 1,
        fields: &[("u", "2"), ("p", "4"), ("s", "2"), ("q", "4"), ("v", "2")],
        expect: Admissible,
        derived: &[
            ("v_over_u", "1"),
            ("exponent", "0"),
            ("second_factor_index", "4"),
        ],
        residuals: &[],
    },
    RefCase {
        label: "pn1: two-factor lift with v strictly inside (1, u)",
        theorem: "pn1",
        n: 1,
        fields: &[("u", "2"), ("p", "4"), ("s", "2"), ("q", "4"), ("v", "3/2")],
        expect: Admissible,
        derived: &[
            ("v_over_u", "3/4"),
            ("exponent", "1/16"),
            ("second_factor_index", "3"),
        ],
        residuals: &[],
    },
    RefCase {
        label: "pn1: u and v pinned at their strict lower bounds",
        theorem: "pn1",
        n: 1,
        fields: &[("u", "1"), ("p", "4"), ("s", "2"), ("q", "4"), ("v", "1")],
        expect: Boundary,
        derived: &[("v_over_u", "1")],
        residuals: &[("u-gt-1", "0"), ("v-gt-1", "0")],
    },
    RefCase {
        label: "pn2: direct lift inside the ratio window",
        theorem: "pn2",
        n: 1,
        fields: &[("u", "2"), ("p", "4"), ("s", "2"), ("q", "2")],
        expect: Admissible,
        derived: &[("exponent", "1/4")],
        residuals: &[],
    },
    RefCase {
        label: "pn2: ratio window u/p <= s/q violated by 1/2",
        theorem: "pn2",
        n: 1,
        fields: &[("u", "4"), ("p", "4"), ("s", "2"), ("q", "4")],
        expect: Inadmissible,
        derived: &[],
        residuals: &[("ratio-window", "-1/2")],
    },
    // -----------------------------------------------------------------
    // Single-multiplier smoothing on ball-uniform norms
    // -----------------------------------------------------------------
    RefCase {
        label: "qj_morrey: equal index ratios, smoothing order 1",
        theorem: "qj_morrey",
        n: 1,
        fields: &[
            ("u", "2"),
            ("p", "4"),
            ("v", "2"),
            ("q", "4"),
            ("sigma", "1"),
        ],
        expect: Admissible,
        derived: &[("exponent", "1")],
        residuals: &[],
    },
    RefCase {
        label: "qj_morrey: strict ratio gap, zero smoothing order",
        theorem: "qj_morrey",
        n: 1,
        fields: &[
            ("u", "2"),
            ("p", "4"),
            ("v", "2"),
            ("q", "2"),
            ("sigma", "0"),
        ],
        expect: Admissible,
        derived: &[("exponent", "1/4")],
        residuals: &[],
    },
    RefCase {
        label: "qj_morrey: inner index v pinned at its strict lower bound 1",
        theorem: "qj_morrey",
        n: 1,
        fields: &[
            ("u", "2"),
            ("p", "4"),
            ("v", "1"),
            ("q", "2"),
            ("sigma", "0"),
        ],
        expect: Boundary,
        derived: &[("exponent", "1/4")],
        residuals: &[("v-gt-1", "0")],
    },
    // -----------------------------------------------------------------
    // Weighted-bundle embeddings (sum- and pointwise-aggregated)
    // -----------------------------------------------------------------
    RefCase {
        label: "embedding_B: identity embedding (equal bundles, sharp branch r)",
        theorem: "embedding_B",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "2"),
            ("p", "2"),
            ("r", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("s1", "1"),
            ("s2", "1"),
        ],
        expect: Admissible,
        derived: &[("theta_index", "2")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "embedding_B: integrability gain q = 2 -> s = 4 with equal weights",
        theorem: "embedding_B",
        n: 1,
        fields: &[
            ("s", "4"),
            ("q", "2"),
            ("p", "3"),
            ("r", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("s1", "3/4"),
            ("s2", "1"),
        ],
        expect: Admissible,
        derived: &[("theta_index", "2")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "embedding_B: balance equality violated by exactly 1/100",
        theorem: "embedding_B",
        n: 1,
        fields: &[
            ("s", "4"),
            ("q", "2"),
            ("p", "3"),
            ("r", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "1/100"),
            ("s1", "3/4"),
            ("s2", "1"),
        ],
        expect: Inadmissible,
        derived: &[("theta_index", "3")],
        residuals: &[("balance", "1/100")],
    },
    RefCase {
        label: "embedding_B: both weights pinned at their lower window edges",
        theorem: "embedding_B",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "2"),
            ("p", "2"),
            ("r", "2"),
            ("beta", "2"),
            ("alpha1", "-1/2"),
            ("alpha2", "-1/2"),
            ("s1", "1"),
            ("s2", "1"),
        ],
        expect: Boundary,
        derived: &[("theta_index", "2")],
        residuals: &[("alpha1-window", "0"), ("alpha2-window", "0")],
    },
    RefCase {
        label: "embedding_F: integrability gain with the strict branch (inner index inf)",
        theorem: "embedding_F",
        n: 1,
        fields: &[
            ("s", "4"),
            ("q", "2"),
            ("p", "3"),
            ("r", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("s1", "3/4"),
            ("s2", "1"),
        ],
        expect: Admissible,
        derived: &[("theta_index", "inf")],
        residuals: &[("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Cross-aggregation embedding at equal outer index
    // -----------------------------------------------------------------
    RefCase {
        label: "franke: first branch (q < s) with equal weights",
        theorem: "franke",
        n: 1,
        fields: &[
            ("s", "4"),
            ("q", "2"),
            ("p", "2"),
            ("theta", "1/2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("s1", "3/4"),
            ("s2", "1"),
        ],
        expect: Admissible,
        derived: &[],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "franke: second branch shifted-weight inequality exactly at equality",
        theorem: "franke",
        n: 1,
        fields: &[
            ("s", "2"),
            ("q", "4"),
            ("p", "2"),
            ("theta", "1/2"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
            ("s1", "1"),
            ("s2", "1"),
        ],
        expect: Boundary,
        derived: &[],
        residuals: &[("window", "0"), ("balance", "0")],
    },
    RefCase {
        label: "franke: balance equality violated by exactly -1/100",
        theorem: "franke",
        n: 1,
        fields: &[
            ("s", "4"),
            ("q", "2"),
            ("p", "2"),
            ("theta", "1/2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("s1", "3/4"),
            ("s2", "101/100"),
        ],
        expect: Inadmissible,
        derived: &[],
        residuals: &[("balance", "-1/100")],
    },
    // -----------------------------------------------------------------
    // Local-integrability gate
    // -----------------------------------------------------------------
    RefCase {
        label: "regularity_B: small positive smoothness passes the zero gate",
        theorem: "regularity_B",
        n: 1,
        fields: &[("q", "2"), ("alpha", "0"), ("s", "1/10"), ("beta", "2")],
        expect: Admissible,
        derived: &[("sigma_q", "0"), ("alpha0", "1/2")],
        residuals: &[],
    },
    RefCase {
        label: "regularity_B: sub-unit integrability lifts the gate to s = 1 exactly",
        theorem: "regularity_B",
        n: 1,
        fields: &[("q", "1/2"), ("alpha", "0"), ("s", "1"), ("beta", "2")],
        expect: Boundary,
        derived: &[("sigma_q", "1"), ("alpha0", "-1")],
        residuals: &[("s-gate", "0")],
    },
    RefCase {
        label: "regularity_B: dominating smoothness with sub-unit aggregation index",
        theorem: "regularity_B",
        n: 1,
        fields: &[("q", "2"), ("alpha", "0"), ("s", "10"), ("beta", "1/2")],
        expect: Admissible,
        derived: &[("sigma_q", "0")],
        residuals: &[],
    },
    RefCase {
        label: "regularity_F: pointwise-aggregated gate with finite p",
        theorem: "regularity_F",
        n: 1,
        fields: &[
            ("q", "2"),
            ("p", "3"),
            ("alpha", "0"),
            ("s", "1/10"),
            ("beta", "2"),
        ],
        expect: Admissible,
        derived: &[("sigma_q", "0"), ("alpha0", "1/2")],
        residuals: &[],
    },
    // -----------------------------------------------------------------
    // Hardy-type weight pinning
    // -----------------------------------------------------------------
    RefCase {
        label: "hardy_sobolev: q = 2 -> s = 4 with the pinned weight -3/4",
        theorem: "hardy_sobolev",
        n: 1,
        fields: &[("q", "2"), ("s", "4"), ("alpha", "-3/4")],
        expect: Admissible,
        derived: &[("alpha_expected", "-3/4")],
        residuals: &[("alpha-pinned", "0")],
    },
    RefCase {
        label: "hardy_sobolev: equal indices pin the weight at -1",
        theorem: "hardy_sobolev",
        n: 1,
        fields: &[("q", "2"), ("s", "2"), ("alpha", "-1")],
        expect: Admissible,
        derived: &[("alpha_expected", "-1")],
        residuals: &[("alpha-pinned", "0")],
    },
    RefCase {
        label: "hardy_sobolev: source index pinned at its strict lower bound 1",
        theorem: "hardy_sobolev",
        n: 1,
        fields: &[("q", "1"), ("s", "4"), ("alpha", "-1/4")],
        expect: Boundary,
        derived: &[("alpha_expected", "-1/4")],
        residuals: &[("q-gt-1", "0")],
    },
    // -----------------------------------------------------------------
    // Difference characterizations
    // -----------------------------------------------------------------
    RefCase {
        label: "meansdiff_B: half-order smoothness inside the window",
        theorem: "meansdiff_B",
        n: 1,
        fields: &[
            ("p", "2"),
            ("q", "2"),
            ("beta", "2"),
            ("alpha", "0"),
            ("s", "1/2"),
            ("M", "2"),
        ],
        expect: Admissible,
        derived: &[("alpha0", "1/2"), ("gate", "0")],
        residuals: &[],
    },
    RefCase {
        label: "meansdiff_B: smoothness pinned at the difference order M",
        theorem: "meansdiff_B",
        n: 1,
        fields: &[
            ("p", "2"),
            ("q", "2"),
            ("beta", "2"),
            ("alpha", "0"),
            ("s", "2"),
            ("M", "2"),
        ],
        expect: Boundary,
        derived: &[],
        residuals: &[("s-upper", "0")],
    },
    RefCase {
        label: "meansdiff_F: sub-unit aggregation index raises the gate to 1",
        theorem: "meansdiff_F",
        n: 1,
        fields: &[
            ("p", "2"),
            ("q", "2"),
            ("beta", "1/2"),
            ("alpha", "0"),
            ("s", "3/2"),
            ("M", "2"),
        ],
        expect: Admissible,
        derived: &[("gate", "1")],
        residuals: &[],
    },
    RefCase {
        label: "supdiff: negative weight inside the window",
        theorem: "supdiff",
        n: 1,
        fields: &[
            ("p", "2"),
            ("q", "2"),
            ("beta", "2"),
            ("alpha", "-1/4"),
            ("s", "1/2"),
            ("M", "2"),
        ],
        expect: Admissible,
        derived: &[],
        residuals: &[],
    },
    RefCase {
        label: "supdiff: smoothness pinned at |alpha|",
        theorem: "supdiff",
        n: 1,
        fields: &[
            ("p", "2"),
            ("q", "2"),
            ("beta", "2"),
            ("alpha", "1/4"),
            ("s", "1/4"),
            ("M", "2"),
        ],
        expect: Boundary,
        derived: &[],
        residuals: &[("s-lower", "0")],
    },
    // -----------------------------------------------------------------
    // Square-function coincidence windows and the fractional split
    // -----------------------------------------------------------------
    RefCase {
        label: "coincidence1: interior point of the two-sided weight window",
        theorem: "coincidence1",
        n: 1,
        fields: &[("p", "2"), ("q", "2"), ("alpha", "0"), ("s", "1")],
        expect: Admissible,
        derived: &[("s", "1")],
        residuals: &[],
    },
    RefCase {
        label: "coincidence1: weight pinned at the upper window edge n - n/q",
        theorem: "coincidence1",
        n: 1,
        fields: &[("p", "2"), ("q", "2"), ("alpha", "1/2"), ("s", "1")],
        expect: Boundary,
        derived: &[("s", "1")],
        residuals: &[("alpha-upper", "0")],
    },
    RefCase {
        label: "coincidence3: zero-smoothness window, off-center weight",
        theorem: "coincidence3",
        n: 1,
        fields: &[("p", "2"), ("q", "2"), ("alpha", "1/4")],
        expect: Admissible,
        derived: &[],
        residuals: &[],
    },
    RefCase {
        label: "riesz_split: first-order split inside the window",
        theorem: "riesz_split",
        n: 1,
        fields: &[("s", "1"), ("p", "2"), ("q", "2"), ("alpha", "0")],
        expect: Admissible,
        derived: &[],
        residuals: &[],
    },
    RefCase {
        label: "riesz_split: smoothness order pinned at zero",
        theorem: "riesz_split",
        n: 1,
        fields: &[("s", "0"), ("p", "2"), ("q", "2"), ("alpha", "0")],
        expect: Boundary,
        derived: &[],
        residuals: &[("s-pos", "0")],
    },
    // -----------------------------------------------------------------
    // Two-term splits of the ball-uniform smoothness norms
    // -----------------------------------------------------------------
    RefCase {
        label: "new_norm3: u = 1 split with vanishing gate",
        theorem: "new_norm3",
        n: 1,
        fields: &[("u", "1"), ("p", "2"), ("q", "2"), ("s", "1/2")],
        expect: Admissible,
        derived: &[("sigma_u", "0")],
        residuals: &[],
    },
    RefCase {
        label: "new_norm3: sub-unit u lifts the gate to s = 1 exactly",
        theorem: "new_norm3",
        n: 1,
        fields: &[("u", "1/2"), ("p", "2"), ("q", "2"), ("s", "1")],
        expect: Boundary,
        derived: &[("sigma_u", "1")],
        residuals: &[("s-gate", "0")],
    },
    RefCase {
        label: "new_norm4: pointwise split with small positive smoothness",
        theorem: "new_norm4",
        n: 1,
        fields: &[("u", "2"), ("p", "2"), ("q", "1"), ("s", "1/10")],
        expect: Admissible,
        derived: &[("sigma_u", "0")],
        residuals: &[],
    },
    // -----------------------------------------------------------------
    // Weighted-bundle interpolation, smoothing LHS, v >= max(p,u):
    // ordered-weights variant
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T2i: classical reduction (zero weights, r = v), theta = 1/4",
        theorem: "ckn_T2i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "4"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/4"), ("delta", "4"), ("delta1", "4")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T2i: chain middle term vanishes (v = max(p,u), zero weights)",
        theorem: "ckn_T2i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "0")],
        residuals: &[("chain-lower", "0"), ("theta-pos", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T2i: strictly ordered weights with smoothing order 1/2, theta = 1/2",
        theorem: "ckn_T2i",
        n: 1,
        fields: &[
            ("s", "2"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "3"),
            ("tau", "2"),
            ("rho", "3"),
            ("beta", "2"),
            ("sigma", "1/2"),
            ("alpha1", "-1/8"),
            ("alpha2", "0"),
            ("alpha3", "1/4"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/2"), ("delta", "2"), ("delta1", "3")],
        residuals: &[("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Same family: matched-weight variant with the r-bound
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T2ii: classical reduction tuple satisfies the r-bound and weight split",
        theorem: "ckn_T2ii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "4"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/4"), ("sigma_p_beta", "0")],
        residuals: &[("balance", "0"), ("alpha1-split", "0")],
    },
    RefCase {
        label: "ckn_T2ii: sub-unit beta lifts the pointwise gate to s exactly",
        theorem: "ckn_T2ii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "4"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "1/2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "1/4"), ("sigma_p_beta", "1")],
        residuals: &[("s-gate", "0")],
    },
    // -----------------------------------------------------------------
    // Same family: two-level variant with the lambda split
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T2iii: lambda = 3/5 split with exact weight-split equality",
        theorem: "ckn_T2iii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "4"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "-1/8"),
            ("alpha3", "1/2"),
        ],
        expect: Admissible,
        derived: &[
            ("theta", "1/3"),
            ("lambda", "3/5"),
            ("t", "1/12"),
            ("mu_sigma", "8/3"),
            ("n_over_mu_sigma", "3/8"),
            ("n_over_varpi_sigma", "1/6"),
            ("lambda_backsub", "0"),
        ],
        residuals: &[("balance", "0"), ("weight-split", "0")],
    },
    RefCase {
        label: "ckn_T2iii: detuned r breaks the weight split by exactly 1/24",
        theorem: "ckn_T2iii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "24/7"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "-1/8"),
            ("alpha3", "1/2"),
        ],
        expect: Inadmissible,
        derived: &[("lambda", "2/5"), ("lambda_backsub", "0")],
        residuals: &[("weight-split", "1/24")],
    },
    RefCase {
        label: "ckn_T2iii: chain collapsed to equality (theta = 1) with consistent split",
        theorem: "ckn_T2iii",
        n: 1,
        fields: &[
            ("s", "3/4"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "4"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "-1/8"),
            ("alpha3", "1/2"),
        ],
        expect: Boundary,
        derived: &[("theta", "1"), ("lambda", "1/5"), ("t", "1/2"), ("lambda_backsub", "0")],
        residuals: &[
            ("chain-upper", "0"),
            ("theta-lt-1", "0"),
            ("balance", "0"),
            ("weight-split", "0"),
        ],
    },
    // -----------------------------------------------------------------
    // Plain-LHS interpolation family (zero smoothing order on the left)
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T21i: classical reduction (zero weights, r = v), theta = 1/4",
        theorem: "ckn_T21i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "4"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/4"), ("delta", "4"), ("delta1", "4")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T21i: chain middle term vanishes at v = max(u,p)",
        theorem: "ckn_T21i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "0")],
        residuals: &[("chain-lower", "0"), ("theta-pos", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T21i: strictly ordered weights propagate tau and rho, theta = 2/3",
        theorem: "ckn_T21i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "2"),
            ("v", "4"),
            ("r", "2"),
            ("tau", "5"),
            ("rho", "7"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
            ("alpha3", "1/2"),
        ],
        expect: Admissible,
        derived: &[("theta", "2/3"), ("delta", "5"), ("delta1", "7")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T21ii: exact-split tuple with the r-bound at equality",
        theorem: "ckn_T21ii",
        n: 1,
        fields: &[
            ("s", "1/4"),
            ("p", "2"),
            ("u", "1"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "2/3"), ("third_index", "4")],
        residuals: &[("balance", "0"), ("alpha1-split", "0"), ("r-bound", "0")],
    },
    RefCase {
        label: "ckn_T21ii: integrability window p < n/s pinned at equality",
        theorem: "ckn_T21ii",
        n: 1,
        fields: &[
            ("s", "1/2"),
            ("p", "2"),
            ("u", "1"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "1/2"), ("third_index", "inf")],
        residuals: &[("p-window", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T21iii: lambda = 3/5 two-level split at zero smoothing order",
        theorem: "ckn_T21iii",
        n: 1,
        fields: &[
            ("s", "1/4"),
            ("p", "2"),
            ("u", "2"),
            ("v", "5/2"),
            ("r", "5/2"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("alpha1", "-7/80"),
            ("alpha2", "-1/8"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[
            ("theta", "1/2"),
            ("lambda", "3/5"),
            ("t", "-1/16"),
            ("mu_sigma", "16/7"),
            ("third_index", "4"),
            ("lambda_backsub", "0"),
        ],
        residuals: &[("balance", "0"), ("weight-split", "0"), ("mu-dominates", "1/16")],
    },
    RefCase {
        label: "ckn_T21iii: consistent two-level split with p = n/s at equality",
        theorem: "ckn_T21iii",
        n: 1,
        fields: &[
            ("s", "1/2"),
            ("p", "2"),
            ("u", "2"),
            ("v", "48/17"),
            ("r", "48/17"),
            ("tau", "2"),
            ("rho", "2"),
            ("beta", "2"),
            ("alpha1", "-5/48"),
            ("alpha2", "-1/8"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "1/3"), ("lambda", "1/2"), ("t", "-1/12"), ("lambda_backsub", "0")],
        residuals: &[("p-window", "0"), ("balance", "0"), ("weight-split", "0")],
    },
    // -----------------------------------------------------------------
    // Intermediate-v family, p <= v < u side
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T3i: equal second and third weights, strict weight gap",
        theorem: "ckn_T3i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "1/4"),
            ("alpha1", "0"),
            ("alpha2", "1/2"),
            ("alpha3", "1/2"),
        ],
        expect: Admissible,
        derived: &[("theta", "2/3"), ("sigma_p_beta", "0")],
        residuals: &[("balance", "0"), ("alpha3-eq", "0")],
    },
    RefCase {
        label: "ckn_T3i: weight gap pinned at n/v - n/u exactly",
        theorem: "ckn_T3i",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "1/4"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
            ("alpha3", "1/4"),
        ],
        expect: Boundary,
        derived: &[("theta", "1/3")],
        residuals: &[("alpha-gap", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T3ii: third weight strictly above the second",
        theorem: "ckn_T3ii",
        n: 1,
        fields: &[
            ("s", "2"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "1/4"),
            ("alpha1", "0"),
            ("alpha2", "1/2"),
            ("alpha3", "3/4"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/3")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T3ii: strict weight ordering pinned at equality",
        theorem: "ckn_T3ii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "2"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "1/4"),
            ("alpha1", "0"),
            ("alpha2", "1/2"),
            ("alpha3", "1/2"),
        ],
        expect: Boundary,
        derived: &[("theta", "2/3")],
        residuals: &[("alpha3-gt", "0"), ("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Intermediate-v family, u <= v < p side
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T3iii: strict gap selects outer index tau",
        theorem: "ckn_T3iii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "4"),
            ("u", "2"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "3"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "0"),
            ("alpha1", "-1/8"),
            ("alpha2", "1/4"),
            ("alpha3", "1/4"),
        ],
        expect: Admissible,
        derived: &[("theta", "3/10"), ("delta", "3")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T3iii: gap at its non-strict minimum selects outer index r",
        theorem: "ckn_T3iii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "4"),
            ("u", "2"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "3"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "1/4"),
            ("alpha3", "1/4"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/5"), ("delta", "2")],
        residuals: &[("alpha-gap", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T3iii: v pinned at p (strict window edge)",
        theorem: "ckn_T3iii",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "4"),
            ("u", "2"),
            ("v", "4"),
            ("r", "2"),
            ("tau", "2"),
            ("beta", "2"),
            ("kappa", "2"),
            ("sigma", "0"),
            ("alpha1", "0"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "1/5"), ("delta", "2")],
        residuals: &[("v-lt-p", "0"), ("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Small-v family (v <= min(p,u)), two-sided target window
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T4: classical-reduction shape (r = v, zero smoothing, tau = max(u,p))",
        theorem: "ckn_T4",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "4"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "-3/8"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/6")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T4: chain collapsed to equality (theta = 1)",
        theorem: "ckn_T4",
        n: 1,
        fields: &[
            ("s", "3/8"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "4"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "-3/8"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "1")],
        residuals: &[("chain-upper", "0"), ("theta-lt-1", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T4: target weight pinned at the upper window edge n - n/v",
        theorem: "ckn_T4",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "4"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "1/2"),
            ("alpha2", "7/8"),
            ("alpha3", "7/8"),
        ],
        expect: Boundary,
        derived: &[("theta", "1/6")],
        residuals: &[("alpha1-upper", "0"), ("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Small-v family without the upper target-weight bound
    // -----------------------------------------------------------------
    RefCase {
        label: "ckn_T5: target weight at n - n/v is admissible without the upper bound",
        theorem: "ckn_T5",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "4"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "1/2"),
            ("alpha2", "7/8"),
            ("alpha3", "7/8"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/6")],
        residuals: &[("balance", "0")],
    },
    RefCase {
        label: "ckn_T5: chain collapsed to equality (theta = 1)",
        theorem: "ckn_T5",
        n: 1,
        fields: &[
            ("s", "3/8"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "4"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "-3/8"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Boundary,
        derived: &[("theta", "1")],
        residuals: &[("chain-upper", "0"), ("theta-lt-1", "0"), ("balance", "0")],
    },
    RefCase {
        label: "ckn_T5: classical-reduction shape (r = v, zero smoothing, tau = max(u,p))",
        theorem: "ckn_T5",
        n: 1,
        fields: &[
            ("s", "1"),
            ("p", "2"),
            ("u", "4"),
            ("v", "2"),
            ("r", "2"),
            ("tau", "4"),
            ("beta", "2"),
            ("sigma", "0"),
            ("alpha1", "-3/8"),
            ("alpha2", "0"),
            ("alpha3", "0"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/6")],
        residuals: &[("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Ball-uniform (Morrey-scale) interpolation
    // -----------------------------------------------------------------
    RefCase {
        label: "morrey_ckn: full collapse (u = p, mu = delta, v = q), theta = 1/2",
        theorem: "morrey_ckn",
        n: 1,
        fields: &[
            ("u", "4"),
            ("p", "4"),
            ("mu", "4"),
            ("delta", "4"),
            ("v", "4"),
            ("q", "4"),
            ("sigma", "1/2"),
            ("s", "1"),
            ("beta", "2"),
        ],
        expect: Admissible,
        derived: &[("theta", "1/2"), ("sigma_v", "0")],
        residuals: &[("balance", "0"), ("gap", "1/2")],
    },
    RefCase {
        label: "morrey_ckn: scaling gap pinned at equality (theta = 1)",
        theorem: "morrey_ckn",
        n: 1,
        fields: &[
            ("u", "4"),
            ("p", "4"),
            ("mu", "4"),
            ("delta", "4"),
            ("v", "4"),
            ("q", "4"),
            ("sigma", "1/2"),
            ("s", "1/2"),
            ("beta", "2"),
        ],
        expect: Boundary,
        derived: &[("theta", "1")],
        residuals: &[("gap", "0"), ("theta-lt-1", "0"), ("balance", "0")],
    },
    RefCase {
        label: "morrey_ckn: lower index ratio violated by exactly 1/2",
        theorem: "morrey_ckn",
        n: 1,
        fields: &[
            ("u", "4"),
            ("p", "4"),
            ("mu", "2"),
            ("delta", "4"),
            ("v", "4"),
            ("q", "4"),
            ("sigma", "1/2"),
            ("s", "1"),
            ("beta", "2"),
        ],
        expect: Inadmissible,
        derived: &[("theta", "1/2")],
        residuals: &[("ratio-lower", "-1/2"), ("balance", "0")],
    },
    // -----------------------------------------------------------------
    // Ball-uniform smoothness-space embedding (iff form)
    // -----------------------------------------------------------------
    RefCase {
        label: "morrey_embedding: strict scaling gap with compatible ratios",
        theorem: "morrey_embedding",
        n: 1,
        fields: &[
            ("p1", "2"),
            ("p2", "4"),
            ("u1", "2"),
            ("u2", "2"),
            ("q1", "2"),
            ("q2", "2"),
            ("s1", "1"),
            ("s2", "1/2"),
        ],
        expect: Admissible,
        derived: &[],
        residuals: &[("s-gap", "1/4")],
    },
    RefCase {
        label: "morrey_embedding: equal gaps with p1 = p2 fail the distinctness clause",
        theorem: "morrey_embedding",
        n: 1,
        fields: &[
            ("p1", "2"),
            ("p2", "2"),
            ("u1", "2"),
            ("u2", "2"),
            ("q1", "2"),
            ("q2", "2"),
            ("s1", "1"),
            ("s2", "1"),
        ],
        expect: Inadmissible,
        derived: &[],
        residuals: &[("s-gap", "0"), ("p-distinct", "0")],
    },
    RefCase {
        label: "morrey_embedding: index ratio u2/p2 <= u1/p1 violated by 1/2",
        theorem: "morrey_embedding",
        n: 1,
        fields: &[
            ("p1", "2"),
            ("p2", "4"),
            ("u1", "1"),
            ("u2", "4"),
            ("q1", "2"),
            ("q2", "2"),
            ("s1", "1"),
            ("s2", "0"),
        ],
        expect: Inadmissible,
        derived: &[],
        residuals: &[("ratio", "-1/2")],
    },
    RefCase {
        label: "morrey_embedding: equal gaps with distinct p are admissible",
        theorem: "morrey_embedding",
        n: 1,
        fields: &[
            ("p1", "2"),
            ("p2", "4"),
            ("u1", "2"),
            ("u2", "2"),
            ("q1", "2"),
            ("q2", "2"),
            ("s1", "1"),
            ("s2", "3/4"),
        ],
        expect: Admissible,
        derived: &[],
        residuals: &[("s-gap", "0")],
    },
    RefCase {
        label: "morrey_embedding: every non-strict condition at equality at once",
        theorem: "morrey_embedding",
        n: 1,
        fields: &[
            ("p1", "2"),
            ("p2", "4"),
            ("u1", "2"),
            ("u2", "4"),
            ("q1", "2"),
            ("q2", "2"),
            ("s1", "1"),
            ("s2", "3/4"),
        ],
        expect: Admissible,
        derived: &[],
        residuals: &[("ratio", "0"), ("s-gap", "0")],
    },
    RefCase {
        label: "morrey_embedding: infinite target p sits on the finiteness edge",
        theorem: "morrey_embedding",
        n: 1,
        fields: &[
            ("p1", "2"),
            ("p2", "inf"),
            ("u1", "2"),
            ("u2", "2"),
            ("q1", "2"),
            ("q2", "2"),
            ("s1", "1"),
            ("s2", "0"),
        ],
        expect: Boundary,
        derived: &[],
        residuals: &[("p2-finite", "0"), ("s-gap", "1/2")],
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_unique() {
        let mut seen = std::collections::BTreeSet::new();
        for case in all() {
            assert!(seen.insert(case.label), "duplicate label: {}", case.label);
        }
    }

    #[test]
    fn table_is_well_formed() {
        for case in all() {
            let cert = case.run().unwrap_or_else(|e| panic!("{}: {e}", case.label));
            assert_eq!(cert.theorem_id, case.theorem, "{}", case.label);
        }
    }
}
