//! Hypothesis condition tables.
//!
//! Each public checker transcribes one inequality's hypothesis system into a
//! list of exact-rational conditions, solves the balance equations for any
//! derived parameters (θ, δ, δ₁, λ, μ(σ), ϖ(σ), …), and emits a
//! [`Certificate`]. The transcriptions deliberately stay close to the printed
//! hypothesis lists — one condition per printed inequality, in order — so the
//! tables can be audited line by line.
//!
//! Conventions:
//! - `1/∞ = 0`; conditions stated only for finite indices become explicit
//!   `x < ∞` conditions; equality in any strict condition yields a `boundary`
//!   verdict rather than `inadmissible` (limit cases are open).
//! - σ_q = n·max(1/q − 1, 0) and σ_{q,β} = n·max(1/q − 1, 1/β − 1, 0).
//! - Disjunctive windows (either-or hypothesis branches) are folded into one
//!   composite condition whose residual is the best branch's worst margin.

use crate::certificate::{Certificate, Condition, Rel};
use crate::params::ParamTuple;
use crate::rational::Xr;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("theorem `{theorem}` requires parameter `{symbol}`")]
    MissingParam { theorem: String, symbol: &'static str },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

/// Every theorem id accepted by [`check`].
pub const THEOREM_IDS: &[&str] = &[
    "ckn_classical",
    "ppn1",
    "ppn2",
    "qj_i",
    "qj_ii",
    "pn1",
    "pn2",
    "qj_morrey",
    "embedding_B",
    "embedding_F",
    "franke",
    "regularity_B",
    "regularity_F",
    "hardy_sobolev",
    "meansdiff_B",
    "meansdiff_F",
    "supdiff",
    "coincidence1",
    "coincidence3",
    "riesz_split",
    "new_norm3",
    "new_norm4",
    "morrey_ckn",
    "morrey_embedding",
    "ckn_T2i",
    "ckn_T2ii",
    "ckn_T2iii",
    "ckn_T21i",
    "ckn_T21ii",
    "ckn_T21iii",
    "ckn_T3i",
    "ckn_T3ii",
    "ckn_T3iii",
    "ckn_T4",
    "ckn_T5",
];

/// Check a parameter tuple against a theorem's hypothesis table.
pub fn check(theorem_id: &str, pt: &ParamTuple) -> Result<Certificate, ExactError> {
    match theorem_id {
        "ckn_classical" => ckn_classical(pt),
        "ppn1" => ppn(pt, false),
        "ppn2" => ppn(pt, true),
        "qj_i" => qj(pt, false),
        "qj_ii" => qj(pt, true),
        "pn1" => pn(pt, false),
        "pn2" => pn(pt, true),
        "qj_morrey" => qj_morrey(pt),
        "embedding_B" => check_embedding(pt, AFamily::Besov),
        "embedding_F" => check_embedding(pt, AFamily::TriebelLizorkin),
        "franke" => check_franke(pt),
        "regularity_B" => regularity(pt, AFamily::Besov),
        "regularity_F" => regularity(pt, AFamily::TriebelLizorkin),
        "hardy_sobolev" => hardy_sobolev(pt),
        "meansdiff_B" => meansdiff(pt, AFamily::Besov),
        "meansdiff_F" => meansdiff(pt, AFamily::TriebelLizorkin),
        "supdiff" => supdiff(pt),
        "coincidence1" => coincidence(pt, "coincidence1", true),
        "coincidence3" => coincidence(pt, "coincidence3", false),
        "riesz_split" => riesz_split(pt),
        "new_norm3" => new_norm(pt, "new_norm3"),
        "new_norm4" => new_norm(pt, "new_norm4"),
        "morrey_ckn" => morrey_ckn(pt),
        "morrey_embedding" => morrey_embedding(pt),
        id => {
            if let Some(variant) = id.strip_prefix("ckn_") {
                if let Ok(v) = variant.parse::<CknVariant>() {
                    return check_ckn(v, pt);
                }
            }
            Err(ExactError::UnknownTheorem(id.to_string()))
        }
    }
}

/// Smoothness-scale family selector for the checks that come in a
/// sum-then-norm and a norm-of-sum flavor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AFamily {
    Besov,
    TriebelLizorkin,
}

/// Variants of the weighted interpolation inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum CknVariant {
    T2i,
    T2ii,
    T2iii,
    T21i,
    T21ii,
    T21iii,
    T3i,
    T3ii,
    T3iii,
    T4,
    T5,
}

impl std::str::FromStr for CknVariant {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "T2i" => CknVariant::T2i,
            "T2ii" => CknVariant::T2ii,
            "T2iii" => CknVariant::T2iii,
            "T21i" => CknVariant::T21i,
            "T21ii" => CknVariant::T21ii,
            "T21iii" => CknVariant::T21iii,
            "T3i" => CknVariant::T3i,
            "T3ii" => CknVariant::T3ii,
            "T3iii" => CknVariant::T3iii,
            "T4" => CknVariant::T4,
            "T5" => CknVariant::T5,
            _ => return Err(()),
        })
    }
}

impl CknVariant {
    pub fn theorem_id(self) -> &'static str {
        match self {
            CknVariant::T2i => "ckn_T2i",
            CknVariant::T2ii => "ckn_T2ii",
            CknVariant::T2iii => "ckn_T2iii",
            CknVariant::T21i => "ckn_T21i",
            CknVariant::T21ii => "ckn_T21ii",
            CknVariant::T21iii => "ckn_T21iii",
            CknVariant::T3i => "ckn_T3i",
            CknVariant::T3ii => "ckn_T3ii",
            CknVariant::T3iii => "ckn_T3iii",
            CknVariant::T4 => "ckn_T4",
            CknVariant::T5 => "ckn_T5",
        }
    }
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

struct Ck<'a> {
    id: &'static str,
    pt: &'a ParamTuple,
    conds: Vec<Condition>,
    derived: BTreeMap<String, Xr>,
    notes: Vec<String>,
}

impl<'a> Ck<'a> {
    fn new(id: &'static str, pt: &'a ParamTuple) -> Self {
        Ck {
            id,
            pt,
            conds: Vec::new(),
            derived: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn req(&self, symbol: &'static str) -> Result<Xr, ExactError> {
        self.pt.field(symbol).cloned().ok_or(ExactError::MissingParam {
            theorem: self.id.to_string(),
            symbol,
        })
    }

    fn n(&self) -> Xr {
        self.pt.dim()
    }

    /// n/x with `n/∞ = 0` and `n/0 = +∞`.
    fn n_over(&self, x: &Xr) -> Xr {
        &self.n() * &x.recip()
    }

    fn cond(&mut self, id: &str, text: impl Into<String>, lhs: Xr, rel: Rel, rhs: Xr) {
        self.cond_s(id, text, lhs, rel, rhs, None);
    }

    fn cond_s(
        &mut self,
        id: &str,
        text: impl Into<String>,
        lhs: Xr,
        rel: Rel,
        rhs: Xr,
        s_favorable: Option<bool>,
    ) {
        self.conds
            .push(Condition::evaluate(id, text, lhs, rel, rhs, s_favorable));
    }

    fn derive(&mut self, key: &str, value: Xr) {
        self.derived.insert(key.to_string(), value);
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Positivity of an optional index parameter; absent fields are simply
    /// not part of the tuple's claim and add no condition.
    fn opt_positive(&mut self, symbol: &'static str) -> Option<Xr> {
        let x = self.pt.field(symbol).cloned()?;
        self.cond(
            &format!("{symbol}-pos"),
            format!("{symbol} > 0"),
            x.clone(),
            Rel::Gt,
            Xr::zero(),
        );
        Some(x)
    }

    /// Positivity of an index parameter: `sym > 0`.
    fn positive(&mut self, symbol: &'static str) -> Result<Xr, ExactError> {
        let x = self.req(symbol)?;
        self.cond(
            &format!("{symbol}-pos"),
            format!("{symbol} > 0"),
            x.clone(),
            Rel::Gt,
            Xr::zero(),
        );
        Ok(x)
    }

    /// `1 < sym < ∞`.
    fn open_finite(&mut self, symbol: &'static str) -> Result<Xr, ExactError> {
        let x = self.req(symbol)?;
        self.cond(
            &format!("{symbol}-gt-1"),
            format!("{symbol} > 1"),
            x.clone(),
            Rel::Gt,
            Xr::one(),
        );
        self.cond(
            &format!("{symbol}-finite"),
            format!("{symbol} < ∞"),
            x.clone(),
            Rel::Lt,
            Xr::PosInf,
        );
        Ok(x)
    }

    fn finite(&mut self, symbol: &'static str, x: &Xr) {
        self.cond(
            &format!("{symbol}-finite"),
            format!("{symbol} < ∞"),
            x.clone(),
            Rel::Lt,
            Xr::PosInf,
        );
    }

    /// Two-sided weight window `−n/idx < weight < n − n/idx`.
    fn weight_window(&mut self, wsym: &'static str, isym: &'static str) -> Result<Xr, ExactError> {
        let w = self.req(wsym)?;
        let idx = self.req(isym)?;
        let n_over = self.n_over(&idx);
        self.cond(
            &format!("{wsym}-lower"),
            format!("{wsym} > −n/{isym}"),
            w.clone(),
            Rel::Gt,
            -&n_over,
        );
        self.cond(
            &format!("{wsym}-upper"),
            format!("{wsym} < n − n/{isym}"),
            w.clone(),
            Rel::Lt,
            &self.n() - &n_over,
        );
        Ok(w)
    }

    /// One-sided weight window `weight > −n/idx`.
    fn weight_lower(&mut self, wsym: &'static str, isym: &'static str) -> Result<Xr, ExactError> {
        let w = self.req(wsym)?;
        let idx = self.req(isym)?;
        let n_over = self.n_over(&idx);
        self.cond(
            &format!("{wsym}-lower"),
            format!("{wsym} > −n/{isym}"),
            w.clone(),
            Rel::Gt,
            -&n_over,
        );
        Ok(w)
    }

    fn finish(self) -> Certificate {
        Certificate::conclude(self.id, self.conds, self.derived, self.notes)
    }
}

/// σ_q = n·max(1/q − 1, 0).
fn sigma_single(n: &Xr, q: &Xr) -> Xr {
    let g = (&q.recip() - &Xr::one()).max(Xr::zero());
    n * &g
}

/// σ_{q,β} = n·max(1/q − 1, 1/β − 1, 0).
fn sigma_pair(n: &Xr, q: &Xr, beta: &Xr) -> Xr {
    let g = (&q.recip() - &Xr::one())
        .max(&beta.recip() - &Xr::one())
        .max(Xr::zero());
    n * &g
}

/// One branch of a disjunctive hypothesis window.
struct Branch {
    label: &'static str,
    conds: Vec<(String, Xr, Rel, Xr)>,
}

/// Fold an either-or hypothesis into one composite condition. The residual is
/// `max over branches of (min residual within the branch)`; a branch counts as
/// satisfied when all of its conditions hold, as boundary when its only
/// defects are strict conditions at equality.
fn disjunction(ck: &mut Ck, id: &str, text: String, branches: Vec<Branch>) {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum State {
        Violated,
        Boundary,
        Ok,
    }
    let mut best: Option<(State, Xr, &'static str)> = None;
    for br in &branches {
        let evaluated: Vec<Condition> = br
            .conds
            .iter()
            .map(|(t, lhs, rel, rhs)| {
                Condition::evaluate("", t.clone(), lhs.clone(), *rel, rhs.clone(), None)
            })
            .collect();
        let state = if evaluated.iter().any(|c| !c.satisfied && !c.on_boundary()) {
            State::Violated
        } else if evaluated.iter().any(|c| c.on_boundary()) {
            State::Boundary
        } else {
            State::Ok
        };
        let margin = evaluated
            .iter()
            .map(|c| c.residual.clone())
            .min()
            .unwrap_or_else(Xr::zero);
        let better = match &best {
            None => true,
            Some((bs, bm, _)) => (&state, &margin) > (&(*bs), bm),
        };
        if better {
            best = Some((state, margin, br.label));
        }
    }
    let (state, margin, label) = best.expect("disjunction requires at least one branch");
    let full_text = format!("{text} [closest branch: {label}]");
    // Encode the composite outcome as residual-vs-zero so the standard
    // verdict precedence applies unchanged.
    let cond = match state {
        State::Ok => Condition::evaluate(id, full_text, margin, Rel::Ge, Xr::zero(), None),
        State::Boundary => Condition::evaluate(id, full_text, Xr::zero(), Rel::Gt, Xr::zero(), None),
        State::Violated => Condition::evaluate(id, full_text, margin, Rel::Ge, Xr::zero(), None),
    };
    ck.conds.push(cond);
}

// ---------------------------------------------------------------------------
// Classical weighted interpolation (gradient form)
// ---------------------------------------------------------------------------

/// Classical weighted Lebesgue interpolation with a gradient factor:
/// ‖|x|^γ f‖_τ ≤ c ‖|x|^β f‖_q^θ ‖|x|^α ∇f‖_p^{1−θ}, in annulus-sum form.
/// Tuple mapping: γ → alpha1 (LHS weight, index τ), β → alpha2 (index q),
/// α → alpha3 (index p).
fn ckn_classical(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("ckn_classical", pt);
    let p = ck.req("p")?;
    let q = ck.req("q")?;
    let tau = ck.req("tau")?;
    ck.cond("p-ge-1", "p ≥ 1", p.clone(), Rel::Ge, Xr::one());
    ck.finite("p", &p);
    ck.cond("q-ge-1", "q ≥ 1", q.clone(), Rel::Ge, Xr::one());
    ck.finite("q", &q);
    ck.cond("tau-pos", "τ > 0", tau.clone(), Rel::Gt, Xr::zero());
    let g_w = ck.weight_lower("alpha1", "tau")?; // γ > −n/τ
    let b_w = ck.weight_lower("alpha2", "q")?; // β > −n/q
    let a_w = ck.weight_lower("alpha3", "p")?; // α > −n/p
    let n_tau = ck.n_over(&tau);
    let n_q = ck.n_over(&q);
    let n_p = ck.n_over(&p);
    // Scaling balance: −γ−n/τ = θ(−β−n/q) + (1−θ)(1−α−n/p).
    let lhs_scale = &(-&g_w) - &n_tau;
    let mid_term = &(-&b_w) - &n_q; // factor for θ
    let grad_term = &(&Xr::one() - &a_w) - &n_p; // factor for (1−θ)
    let theta = match pt.theta.clone() {
        Some(th) => th,
        None => {
            // Solve θ from the affine balance; the denominator vanishes only
            // in the degenerate case where both factors scale identically.
            let den = &grad_term - &mid_term;
            if den.is_zero() {
                ck.note("θ not solvable: both factors carry the same scaling exponent");
                Xr::zero()
            } else {
                let th = (&grad_term - &lhs_scale).div(&den);
                ck.derive("theta", th.clone());
                th
            }
        }
    };
    let rhs_scale = &(&theta * &mid_term) + &(&(&Xr::one() - &theta) * &grad_term);
    ck.cond(
        "balance",
        "−γ − n/τ = θ(−β − n/q) + (1−θ)(1 − α − n/p)",
        lhs_scale.clone(),
        Rel::Eq,
        rhs_scale,
    );
    ck.cond("theta-ge-0", "θ ≥ 0", theta.clone(), Rel::Ge, Xr::zero());
    ck.cond("theta-le-1", "θ ≤ 1", theta.clone(), Rel::Le, Xr::one());
    ck.derive("scale_exponent", lhs_scale);
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// Band-limited norm-lifting lemmas (annulus-weighted form)
// ---------------------------------------------------------------------------

/// Band-limited lifting between weighted annulus norms. The bound carries the
/// factor R^{n/q − n/s + α₂ − α₁}; `second_window` selects the s ≤ q variant.
fn ppn(pt: &ParamTuple, second_window: bool) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new(if second_window { "ppn2" } else { "ppn1" }, pt);
    let s = ck.positive("s")?;
    ck.positive("tau")?;
    let q = ck.positive("q")?;
    let r = ck.positive("r")?;
    let a1 = ck.req("alpha1")?;
    let a2 = ck.req("alpha2")?;
    let n_s = ck.n_over(&s);
    let n_q = ck.n_over(&q);
    ck.cond(
        "alpha1-window",
        "α₁ + n/s > 0",
        &a1 + &n_s,
        Rel::Gt,
        Xr::zero(),
    );
    if second_window {
        ck.cond("s-le-q", "s ≤ q", s.clone(), Rel::Le, q.clone());
        let lower = &a1 + &(&n_s - &n_q);
        ck.cond(
            "alpha2-ge",
            "α₂ ≥ α₁ + n/s − n/q",
            a2.clone(),
            Rel::Ge,
            lower.clone(),
        );
        let delta = if a2 == lower { r } else { ck.req("tau")? };
        ck.derive("delta", delta);
    } else {
        ck.cond("q-le-s", "q ≤ s", q.clone(), Rel::Le, s.clone());
        ck.cond("alpha2-ge", "α₂ ≥ α₁", a2.clone(), Rel::Ge, a1.clone());
        let delta = if a2 == a1 { r } else { ck.req("tau")? };
        ck.derive("delta", delta);
    }
    ck.derive("exponent", &(&n_q - &n_s) + &(&a2 - &a1));
    Ok(ck.finish())
}

/// Single-multiplier smoothing bound on weighted annulus norms; exponent in
/// the cutoff level J is n/u − n/v + α₂ − α₁ + σ. `second_window` selects the
/// v ≤ u variant.
fn qj(pt: &ParamTuple, second_window: bool) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new(if second_window { "qj_ii" } else { "qj_i" }, pt);
    let sigma = ck.req("sigma")?;
    ck.cond("sigma-nonneg", "σ ≥ 0", sigma.clone(), Rel::Ge, Xr::zero());
    let r = ck.open_finite("r")?;
    let v = ck.open_finite("v")?;
    ck.positive("tau")?;
    let u = ck.req("u")?;
    let a1 = ck.weight_window("alpha1", "v")?;
    let a2 = ck.req("alpha2")?;
    let n_u = ck.n_over(&u);
    let n_v = ck.n_over(&v);
    if second_window {
        ck.cond("v-le-u", "v ≤ u", v.clone(), Rel::Le, u.clone());
        let lower = &a1 + &(&n_v - &n_u);
        ck.cond(
            "alpha2-ge",
            "α₂ ≥ α₁ + n/v − n/u",
            a2.clone(),
            Rel::Ge,
            lower.clone(),
        );
        let delta = if a2 == lower { r } else { ck.req("tau")? };
        ck.derive("delta", delta);
    } else {
        ck.cond("u-ge-1", "u ≥ 1", u.clone(), Rel::Ge, Xr::one());
        ck.cond("u-le-v", "u ≤ v", u.clone(), Rel::Le, v.clone());
        ck.cond("alpha2-ge", "α₂ ≥ α₁", a2.clone(), Rel::Ge, a1.clone());
        let delta = if a2 == a1 { r } else { ck.req("tau")? };
        ck.derive("delta", delta);
    }
    ck.derive("exponent", &(&(&n_u - &n_v) + &(&a2 - &a1)) + &sigma);
    Ok(ck.finish())
}

/// Band-limited lifting between ball-uniform norms. `direct` = the
/// single-factor variant with exponent n/q − n/p; otherwise the two-factor
/// variant with exponent n/q − v·n/(q·u).
fn pn(pt: &ParamTuple, direct: bool) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new(if direct { "pn2" } else { "pn1" }, pt);
    let u = ck.req("u")?;
    let p = ck.req("p")?;
    let s = ck.req("s")?;
    let q = ck.req("q")?;
    ck.cond("u-gt-1", "u > 1", u.clone(), Rel::Gt, Xr::one());
    ck.cond("u-le-p", "u ≤ p", u.clone(), Rel::Le, p.clone());
    ck.finite("p", &p);
    ck.cond("s-gt-1", "s > 1", s.clone(), Rel::Gt, Xr::one());
    ck.cond("s-le-q", "s ≤ q", s.clone(), Rel::Le, q.clone());
    ck.finite("q", &q);
    let n_q = ck.n_over(&q);
    let n_p = ck.n_over(&p);
    if direct {
        ck.cond(
            "ratio-window",
            "u/p ≤ s/q",
            u.div(&p),
            Rel::Le,
            s.div(&q),
        );
        ck.cond("q-le-p", "q ≤ p", q.clone(), Rel::Le, p.clone());
        ck.derive("exponent", &n_q - &n_p);
    } else {
        let v = ck.req("v")?;
        ck.cond("v-gt-1", "v > 1", v.clone(), Rel::Gt, Xr::one());
        ck.cond("v-le-u", "v ≤ u", v.clone(), Rel::Le, u.clone());
        let v_over_u = v.div(&u);
        ck.derive("v_over_u", v_over_u.clone());
        ck.derive("exponent", &n_q - &(&v_over_u * &n_q));
        ck.derive("second_factor_index", &v_over_u * &p);
    }
    Ok(ck.finish())
}

/// Single-multiplier smoothing on ball-uniform norms; exponent in J is
/// n(1/q − 1/p) + σ.
fn qj_morrey(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("qj_morrey", pt);
    let u = ck.req("u")?;
    let p = ck.req("p")?;
    let v = ck.req("v")?;
    let q = ck.req("q")?;
    let sigma = ck.req("sigma")?;
    ck.cond("u-gt-1", "u > 1", u.clone(), Rel::Gt, Xr::one());
    ck.cond("u-le-p", "u ≤ p", u.clone(), Rel::Le, p.clone());
    ck.finite("p", &p);
    ck.cond("v-gt-1", "v > 1", v.clone(), Rel::Gt, Xr::one());
    ck.cond("v-le-q", "v ≤ q", v.clone(), Rel::Le, q.clone());
    ck.finite("q", &q);
    ck.cond(
        "ratio-window",
        "u/p ≤ v/q",
        u.div(&p),
        Rel::Le,
        v.div(&q),
    );
    ck.cond("q-le-p", "q ≤ p", q.clone(), Rel::Le, p.clone());
    ck.cond("sigma-nonneg", "σ ≥ 0", sigma.clone(), Rel::Ge, Xr::zero());
    let expo = &(&ck.n_over(&q) - &ck.n_over(&p)) + &sigma;
    ck.derive("exponent", expo);
    ck.note("per-level exponent read as n(1/q − 1/p) + σ per level (the slope in J)");
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// Embeddings and regularity
// ---------------------------------------------------------------------------

/// Weighted-space embedding between smoothness bundles. Symbols: source space
/// has integrability q, weight α₂, smoothness s₂; target has integrability s,
/// weight α₁, smoothness s₁, outer index r; p is the alternative outer index
/// of the sharp branch; β the smoothness aggregation index.
pub fn check_embedding(pt: &ParamTuple, family: AFamily) -> Result<Certificate, ExactError> {
    let id = match family {
        AFamily::Besov => "embedding_B",
        AFamily::TriebelLizorkin => "embedding_F",
    };
    let mut ck = Ck::new(id, pt);
    let s = ck.positive("s")?;
    let q = ck.positive("q")?;
    let p = ck.positive("p")?;
    let r = ck.positive("r")?;
    ck.positive("beta")?;
    let a1 = ck.req("alpha1")?;
    let a2 = ck.req("alpha2")?;
    let s1 = ck.req("s1")?;
    let s2 = ck.req("s2")?;
    let n_s = ck.n_over(&s);
    let n_q = ck.n_over(&q);
    ck.cond(
        "alpha1-window",
        "α₁ > −n/s",
        a1.clone(),
        Rel::Gt,
        -&n_s,
    );
    ck.cond(
        "alpha2-window",
        "α₂ > −n/q",
        a2.clone(),
        Rel::Gt,
        -&n_q,
    );
    // Balance: s₁ − n/s − α₁ = s₂ − n/q − α₂.
    ck.cond(
        "balance",
        "s₁ − n/s − α₁ = s₂ − n/q − α₂",
        &(&s1 - &n_s) - &a1,
        Rel::Eq,
        &(&s2 - &n_q) - &a2,
    );
    // Window disjunction: (q ≤ s and α₂ ≥ α₁) or (s ≤ q and α₂+n/q ≥ α₁+n/s).
    disjunction(
        &mut ck,
        "window",
        "(q ≤ s ∧ α₂ ≥ α₁) ∨ (s ≤ q ∧ α₂ + n/q ≥ α₁ + n/s)".to_string(),
        vec![
            Branch {
                label: "q ≤ s",
                conds: vec![
                    ("q ≤ s".into(), q.clone(), Rel::Le, s.clone()),
                    ("α₂ ≥ α₁".into(), a2.clone(), Rel::Ge, a1.clone()),
                ],
            },
            Branch {
                label: "s ≤ q",
                conds: vec![
                    ("s ≤ q".into(), s.clone(), Rel::Le, q.clone()),
                    (
                        "α₂ + n/q ≥ α₁ + n/s".into(),
                        &a2 + &n_q,
                        Rel::Ge,
                        &a1 + &n_s,
                    ),
                ],
            },
        ],
    );
    match family {
        AFamily::Besov => {
            // Source outer index branch table.
            let shifted_eq = &a2 + &n_q == &a1 + &n_s;
            let theta_index = if (shifted_eq && s <= q) || (a2 == a1 && q <= s) {
                ck.note("source outer index branch: sharp equality case, index r");
                r
            } else {
                ck.note("source outer index branch: strict case, index p");
                p
            };
            ck.derive("theta_index", theta_index);
        }
        AFamily::TriebelLizorkin => {
            ck.finite("q", &q);
            ck.finite("s", &s);
            ck.cond("r-le-p", "0 < r ≤ p < ∞", r.clone(), Rel::Le, p.clone());
            ck.finite("p", &p);
            let theta_index = if s <= q && q < Xr::PosInf && &a2 + &n_q == &a1 + &n_s {
                ck.note("source inner index branch: sharp equality case, index β");
                ck.req("beta")?
            } else {
                ck.note("source inner index branch: strict case, index ∞");
                Xr::PosInf
            };
            ck.derive("theta_index", theta_index);
        }
    }
    Ok(ck.finish())
}

/// Embedding from a sum-aggregated bundle into a pointwise-aggregated one at
/// the same outer index (the sharpened cross-family case).
pub fn check_franke(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("franke", pt);
    let s = ck.positive("s")?;
    ck.finite("s", &s);
    let q = ck.positive("q")?;
    ck.finite("q", &q);
    let p = ck.positive("p")?;
    ck.finite("p", &p);
    ck.positive("theta")?;
    let a1 = ck.req("alpha1")?;
    let a2 = ck.req("alpha2")?;
    let s1 = ck.req("s1")?;
    let s2 = ck.req("s2")?;
    let n_s = ck.n_over(&s);
    let n_q = ck.n_over(&q);
    ck.cond("alpha1-window", "α₁ > −n/s", a1.clone(), Rel::Gt, -&n_s);
    ck.cond("alpha2-window", "α₂ > −n/q", a2.clone(), Rel::Gt, -&n_q);
    ck.cond(
        "balance",
        "s₁ − n/s − α₁ = s₂ − n/q − α₂",
        &(&s1 - &n_s) - &a1,
        Rel::Eq,
        &(&s2 - &n_q) - &a2,
    );
    disjunction(
        &mut ck,
        "window",
        "(q < s ∧ α₂ ≥ α₁) ∨ (s ≤ q ∧ α₂ + n/q > α₁ + n/s)".to_string(),
        vec![
            Branch {
                label: "q < s",
                conds: vec![
                    ("q < s".into(), q.clone(), Rel::Lt, s.clone()),
                    ("α₂ ≥ α₁".into(), a2.clone(), Rel::Ge, a1.clone()),
                ],
            },
            Branch {
                label: "s ≤ q",
                conds: vec![
                    ("s ≤ q".into(), s.clone(), Rel::Le, q.clone()),
                    (
                        "α₂ + n/q > α₁ + n/s".into(),
                        &a2 + &n_q,
                        Rel::Gt,
                        &a1 + &n_s,
                    ),
                ],
            },
        ],
    );
    Ok(ck.finish())
}

/// Local-integrability gate: members of the weighted bundle are regular
/// distributions when s > max(σ_q, α − α₀) with α₀ = n − n/q.
fn regularity(pt: &ParamTuple, family: AFamily) -> Result<Certificate, ExactError> {
    let id = match family {
        AFamily::Besov => "regularity_B",
        AFamily::TriebelLizorkin => "regularity_F",
    };
    let mut ck = Ck::new(id, pt);
    let q = ck.positive("q")?;
    ck.opt_positive("beta");
    match family {
        AFamily::Besov => {
            ck.opt_positive("p");
        }
        AFamily::TriebelLizorkin => {
            let p = ck.positive("p")?;
            ck.finite("p", &p);
            ck.finite("q", &q);
        }
    }
    let alpha = ck.weight_lower("alpha", "q")?;
    let s = ck.req("s")?;
    let n = ck.n();
    let alpha0 = &n - &ck.n_over(&q);
    let sq = sigma_single(&n, &q);
    let gate = sq.clone().max(&alpha - &alpha0);
    ck.cond_s(
        "s-gate",
        "s > max(σ_q, α − α₀)",
        s,
        Rel::Gt,
        gate,
        Some(true),
    );
    ck.derive("alpha0", alpha0);
    ck.derive("sigma_q", sq);
    Ok(ck.finish())
}

/// Weighted Hardy-type inequality window: 1 < q ≤ s < ∞ with the weight pinned
/// at α = n/q − n/s − 1.
fn hardy_sobolev(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("hardy_sobolev", pt);
    let q = ck.req("q")?;
    let s = ck.req("s")?;
    let alpha = ck.req("alpha")?;
    ck.cond("q-gt-1", "q > 1", q.clone(), Rel::Gt, Xr::one());
    ck.cond("q-le-s", "q ≤ s", q.clone(), Rel::Le, s.clone());
    ck.finite("s", &s);
    let expected = &(&ck.n_over(&q) - &ck.n_over(&s)) - &Xr::one();
    ck.cond(
        "alpha-pinned",
        "α = n/q − n/s − 1",
        alpha,
        Rel::Eq,
        expected.clone(),
    );
    ck.derive("alpha_expected", expected);
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// Difference characterizations and coincidences
// ---------------------------------------------------------------------------

/// Ball-means-of-differences characterization window:
/// max(gate, α − α₀) < s < M, gate = σ_q (sum form) or σ_{q,β} (pointwise form).
fn meansdiff(pt: &ParamTuple, family: AFamily) -> Result<Certificate, ExactError> {
    let id = match family {
        AFamily::Besov => "meansdiff_B",
        AFamily::TriebelLizorkin => "meansdiff_F",
    };
    let mut ck = Ck::new(id, pt);
    let p = ck.positive("p")?;
    let q = ck.positive("q")?;
    let beta = ck.positive("beta")?;
    if family == AFamily::TriebelLizorkin {
        ck.finite("p", &p);
        ck.finite("q", &q);
    }
    let alpha = ck.weight_lower("alpha", "q")?;
    let s = ck.req("s")?;
    let m = ck.req("M")?;
    ck.cond("m-ge-1", "M ≥ 1", m.clone(), Rel::Ge, Xr::one());
    let n = ck.n();
    let alpha0 = &n - &ck.n_over(&q);
    let gate = match family {
        AFamily::Besov => sigma_single(&n, &q),
        AFamily::TriebelLizorkin => sigma_pair(&n, &q, &beta),
    };
    let lower = gate.clone().max(&alpha - &alpha0);
    ck.cond_s(
        "s-lower",
        match family {
            AFamily::Besov => "s > max(σ_q, α − α₀)",
            AFamily::TriebelLizorkin => "s > max(σ_{q,β}, α − α₀)",
        },
        s.clone(),
        Rel::Gt,
        lower,
        Some(true),
    );
    ck.cond_s("s-upper", "s < M", s, Rel::Lt, m, Some(false));
    ck.derive("alpha0", alpha0);
    ck.derive("gate", gate);
    Ok(ck.finish())
}

/// Sup-over-offsets difference characterization window. The characterized
/// space is written with inner integrability p and outer index q; the weight
/// window is α > −n/p and the smoothness window |α| < s < M.
fn supdiff(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("supdiff", pt);
    let p = ck.open_finite("p")?;
    ck.open_finite("q")?;
    let beta = ck.req("beta")?;
    ck.cond("beta-ge-1", "β ≥ 1", beta, Rel::Ge, Xr::one());
    let alpha = ck.req("alpha")?;
    let n_p = ck.n_over(&p);
    ck.cond("alpha-window", "α > −n/p", alpha.clone(), Rel::Gt, -&n_p);
    let s = ck.req("s")?;
    let m = ck.req("M")?;
    ck.cond("m-ge-1", "M ≥ 1", m.clone(), Rel::Ge, Xr::one());
    ck.cond_s("s-lower", "s > |α|", s.clone(), Rel::Gt, alpha.abs(), Some(true));
    ck.cond_s("s-upper", "s < M", s, Rel::Lt, m, Some(false));
    Ok(ck.finish())
}

/// Square-function coincidence window: 1 < p,q < ∞ and −n/q < α < n − n/q.
/// `with_s` keeps the smoothness parameter in the certificate for the
/// Bessel-scale identification; the zero-smoothness identification omits it.
fn coincidence(pt: &ParamTuple, id: &'static str, with_s: bool) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new(id, pt);
    ck.open_finite("p")?;
    ck.open_finite("q")?;
    ck.weight_window("alpha", "q")?;
    if with_s {
        let s = ck.req("s")?;
        ck.derive("s", s);
    }
    Ok(ck.finish())
}

/// Fractional-Laplacian split window: s > 0, 1 < p,q < ∞, −n/q < α < n − n/q.
fn riesz_split(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("riesz_split", pt);
    let s = ck.req("s")?;
    ck.cond_s("s-pos", "s > 0", s, Rel::Gt, Xr::zero(), Some(true));
    ck.open_finite("p")?;
    ck.open_finite("q")?;
    ck.weight_window("alpha", "q")?;
    Ok(ck.finish())
}

/// Two-term split of the ball-uniform smoothness norms: 0 < u ≤ p < ∞,
/// 0 < q ≤ ∞, s > σ_u.
fn new_norm(pt: &ParamTuple, id: &'static str) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new(id, pt);
    let u = ck.positive("u")?;
    let p = ck.req("p")?;
    ck.cond("u-le-p", "u ≤ p", u.clone(), Rel::Le, p.clone());
    ck.finite("p", &p);
    ck.positive("q")?;
    let s = ck.req("s")?;
    let su = sigma_single(&ck.n(), &u);
    ck.cond_s("s-gate", "s > σ_u", s, Rel::Gt, su.clone(), Some(true));
    ck.derive("sigma_u", su);
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// Ball-uniform (Morrey-scale) interpolation and embedding
// ---------------------------------------------------------------------------

/// Morrey-scale interpolation toward a smoothing norm of order σ:
/// gate chain u/p ≤ μ/δ ≤ v/q, p ≥ max(q, δ), s > σ_v, s − n/q > σ − n/p,
/// and the balance σ − n/p = −(1−θ)n/δ + θ(s − n/q) with 0 < θ < 1.
fn morrey_ckn(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("morrey_ckn", pt);
    let u = ck.req("u")?;
    let p = ck.req("p")?;
    let mu = ck.req("mu")?;
    let delta = ck.req("delta")?;
    let v = ck.req("v")?;
    let q = ck.req("q")?;
    let s = ck.req("s")?;
    let sigma = ck.req("sigma")?;
    ck.cond("u-gt-1", "u > 1", u.clone(), Rel::Gt, Xr::one());
    ck.cond("u-le-p", "u ≤ p", u.clone(), Rel::Le, p.clone());
    ck.finite("p", &p);
    ck.cond("mu-ge-1", "μ ≥ 1", mu.clone(), Rel::Ge, Xr::one());
    ck.cond("mu-le-delta", "μ ≤ δ", mu.clone(), Rel::Le, delta.clone());
    ck.finite("delta", &delta);
    ck.positive("beta")?;
    ck.cond("sigma-nonneg", "σ ≥ 0", sigma.clone(), Rel::Ge, Xr::zero());
    ck.cond("v-pos", "v > 0", v.clone(), Rel::Gt, Xr::zero());
    ck.cond("v-le-q", "v ≤ q", v.clone(), Rel::Le, q.clone());
    ck.finite("q", &q);
    ck.cond(
        "ratio-lower",
        "u/p ≤ μ/δ",
        u.div(&p),
        Rel::Le,
        mu.div(&delta),
    );
    ck.cond(
        "ratio-upper",
        "μ/δ ≤ v/q",
        mu.div(&delta),
        Rel::Le,
        v.div(&q),
    );
    ck.cond(
        "p-dominates",
        "p ≥ max(q, δ)",
        p.clone(),
        Rel::Ge,
        q.clone().max(delta.clone()),
    );
    let sv = sigma_single(&ck.n(), &v);
    ck.cond_s("s-gate", "s > σ_v", s.clone(), Rel::Gt, sv.clone(), Some(true));
    ck.derive("sigma_v", sv);
    let n_q = ck.n_over(&q);
    let n_p = ck.n_over(&p);
    let n_delta = ck.n_over(&delta);
    ck.cond_s(
        "gap",
        "s − n/q > σ − n/p",
        &s - &n_q,
        Rel::Gt,
        &sigma - &n_p,
        Some(true),
    );
    // Balance σ − n/p = −(1−θ)n/δ + θ(s − n/q); solve θ when absent.
    let theta = match pt.theta.clone() {
        Some(th) => th,
        None => {
            let den = &(&s - &n_q) + &n_delta;
            if den.is_positive() {
                let th = (&(&sigma - &n_p) + &n_delta).div(&den);
                ck.derive("theta", th.clone());
                th
            } else {
                ck.note("θ not solvable: s − n/q + n/δ is nonpositive");
                Xr::zero()
            }
        }
    };
    let rhs = &(-&(&(&Xr::one() - &theta) * &n_delta)) + &(&theta * &(&s - &n_q));
    ck.cond(
        "balance",
        "σ − n/p = −(1−θ)n/δ + θ(s − n/q)",
        &sigma - &n_p,
        Rel::Eq,
        rhs,
    );
    ck.cond_s("theta-pos", "0 < θ", theta.clone(), Rel::Gt, Xr::zero(), Some(false));
    ck.cond_s("theta-lt-1", "θ < 1", theta.clone(), Rel::Lt, Xr::one(), Some(true));
    Ok(ck.finish())
}

/// Ball-uniform smoothness-space embedding, an if-and-only-if:
/// p₁ ≤ p₂, u₂/p₂ ≤ u₁/p₁, and s₁ − n/p₁ > s₂ − n/p₂ or equality with p₁ ≠ p₂.
fn morrey_embedding(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    let mut ck = Ck::new("morrey_embedding", pt);
    let p1 = ck.req("p1")?;
    let p2 = ck.req("p2")?;
    let u1 = ck.req("u1")?;
    let u2 = ck.req("u2")?;
    let q1 = ck.req("q1")?;
    let q2 = ck.req("q2")?;
    let s1 = ck.req("s1")?;
    let s2 = ck.req("s2")?;
    ck.cond("q1-pos", "q₁ > 0", q1, Rel::Gt, Xr::zero());
    ck.cond("q2-pos", "q₂ > 0", q2, Rel::Gt, Xr::zero());
    ck.cond("u1-pos", "u₁ > 0", u1.clone(), Rel::Gt, Xr::zero());
    ck.cond("u1-le-p1", "u₁ ≤ p₁", u1.clone(), Rel::Le, p1.clone());
    ck.finite("p1", &p1);
    ck.cond("u2-pos", "u₂ > 0", u2.clone(), Rel::Gt, Xr::zero());
    ck.cond("u2-le-p2", "u₂ ≤ p₂", u2.clone(), Rel::Le, p2.clone());
    ck.finite("p2", &p2);
    ck.cond("p-ordered", "p₁ ≤ p₂", p1.clone(), Rel::Le, p2.clone());
    ck.cond(
        "ratio",
        "u₂/p₂ ≤ u₁/p₁",
        u2.div(&p2),
        Rel::Le,
        u1.div(&p1),
    );
    let gap1 = &s1 - &ck.n_over(&p1);
    let gap2 = &s2 - &ck.n_over(&p2);
    if gap1 == gap2 {
        ck.cond(
            "s-gap",
            "s₁ − n/p₁ ≥ s₂ − n/p₂ (equality branch)",
            gap1,
            Rel::Ge,
            gap2,
        );
        ck.cond(
            "p-distinct",
            "equality branch requires p₁ ≠ p₂",
            p1,
            Rel::Ne,
            p2,
        );
    } else {
        ck.cond_s(
            "s-gap",
            "s₁ − n/p₁ > s₂ − n/p₂",
            gap1,
            Rel::Gt,
            gap2,
            Some(true),
        );
    }
    Ok(ck.finish())
}

// ---------------------------------------------------------------------------
// The weighted-bundle interpolation family
// ---------------------------------------------------------------------------

/// Chain inequality + balance relation shared by the interpolation variants.
/// `sigma` is the LHS smoothing order (zero for the plain-LHS family).
/// `printed_sigma_form` selects the orientation of the printed balance:
/// `true` → `σ − n/v = …`, `false` → `n/v = …`. Returns the solved (or given)
/// θ when one is available.
fn ckn_chain_balance(
    ck: &mut Ck,
    sigma: &Xr,
    printed_sigma_form: bool,
) -> Result<Option<Xr>, ExactError> {
    let s = ck.req("s")?;
    let p = ck.req("p")?;
    let u = ck.req("u")?;
    let v = ck.req("v")?;
    let a1 = ck.req("alpha1")?;
    let a2 = ck.req("alpha2")?;
    let a3 = ck.req("alpha3")?;
    let n_p = ck.n_over(&p);
    let n_u = ck.n_over(&u);
    let n_v = ck.n_over(&v);
    let left = &(&(&s - &n_p) + &n_u) + &(&a2 - &a3);
    let mid = &(&(sigma - &n_v) + &(&a2 - &a1)) + &n_u;
    ck.cond_s(
        "chain-upper",
        "s − n/p + n/u + α₂ − α₃ > σ − n/v + α₂ − α₁ + n/u",
        left.clone(),
        Rel::Gt,
        mid.clone(),
        Some(true),
    );
    ck.cond(
        "chain-lower",
        "σ − n/v + α₂ − α₁ + n/u > 0",
        mid.clone(),
        Rel::Gt,
        Xr::zero(),
    );
    let theta = match ck.pt.theta.clone() {
        Some(th) => Some(th),
        None => {
            if left.is_positive() {
                let th = mid.div(&left);
                ck.derive("theta", th.clone());
                Some(th)
            } else {
                ck.note("θ not solvable: chain left side is nonpositive");
                None
            }
        }
    };
    if let Some(th) = &theta {
        // Printed balance orientation, evaluated with the exact θ.
        let one_m = &Xr::one() - th;
        if printed_sigma_form {
            // σ − n/v = −(1−θ)n/u + θ(s − n/p) + α₁ − ((1−θ)α₂ + θα₃)
            let rhs = &(&(&(-&(&one_m * &n_u)) + &(th * &(&s - &n_p))) + &a1)
                - &(&(&one_m * &a2) + &(th * &a3));
            ck.cond(
                "balance",
                "σ − n/v = −(1−θ)n/u + θ(s − n/p) + α₁ − ((1−θ)α₂ + θα₃)",
                sigma - &n_v,
                Rel::Eq,
                rhs,
            );
        } else {
            // n/v = (1−θ)n/u + θ(n/p − s) − α₁ + (1−θ)α₂ + θα₃
            let rhs = &(&(&(&one_m * &n_u) + &(th * &(&n_p - &s))) - &a1)
                + &(&(&one_m * &a2) + &(th * &a3));
            ck.cond(
                "balance",
                "n/v = (1−θ)n/u + θ(n/p − s) − α₁ + (1−θ)α₂ + θα₃",
                n_v.clone(),
                Rel::Eq,
                rhs,
            );
        }
        ck.cond_s("theta-pos", "0 < θ", th.clone(), Rel::Gt, Xr::zero(), Some(false));
        ck.cond_s("theta-lt-1", "θ < 1", th.clone(), Rel::Lt, Xr::one(), Some(true));
    }
    Ok(theta)
}

/// Outer-index branch picks δ (second factor) and δ₁ (third factor):
/// δ = r if α₂ = α₁ else τ; δ₁ = r if α₃ = α₁ else ϱ.
fn delta_branches(ck: &mut Ck) -> Result<(), ExactError> {
    let r = ck.req("r")?;
    let tau = ck.req("tau")?;
    let rho = ck.req("rho")?;
    let a1 = ck.req("alpha1")?;
    let a2 = ck.req("alpha2")?;
    let a3 = ck.req("alpha3")?;
    let delta = if a2 == a1 { r.clone() } else { tau };
    let delta1 = if a3 == a1 { r } else { rho };
    ck.derive("delta", delta);
    ck.derive("delta1", delta1);
    Ok(())
}

/// μ(σ)/ϖ(σ)/λ system of the two-level variants:
/// n/μ(σ) = (1−θ)n/u + θ(n/p − s) + σ − θ(α₂ − α₃),
/// n/ϖ(σ) = (1−θ)n/u + θ(n/p − s) + σ,
/// λ solved from 1/r = (1−λ)·n/μ(σ) + λ·n/ϖ(σ),
/// α₁ − t = (1−λ)θ(α₂ − α₃) with t = (1−θ)α₂ + θα₃.
fn two_level_system(ck: &mut Ck, sigma: &Xr, theta: &Xr) -> Result<(), ExactError> {
    let s = ck.req("s")?;
    let p = ck.req("p")?;
    let u = ck.req("u")?;
    let r = ck.req("r")?;
    let a1 = ck.req("alpha1")?;
    let a2 = ck.req("alpha2")?;
    let a3 = ck.req("alpha3")?;
    let n_p = ck.n_over(&p);
    let n_u = ck.n_over(&u);
    let one_m = &Xr::one() - theta;
    let base = &(&(&one_m * &n_u) + &(theta * &(&n_p - &s))) + sigma;
    let n_mu = &base - &(theta * &(&a2 - &a3));
    let n_varpi = base;
    // Structural guard: the defining relation n/μ(σ) = … only names a valid
    // index (0 < μ(σ) ≤ ∞) when the right-hand side is nonnegative.
    ck.cond(
        "mu-index",
        "n/μ(σ) ≥ 0 (μ(σ) is a positive, possibly infinite, index)",
        n_mu.clone(),
        Rel::Ge,
        Xr::zero(),
    );
    ck.derive("mu_sigma", ck.n().div(&n_mu));
    ck.derive("varpi_sigma", ck.n().div(&n_varpi));
    ck.derive("n_over_mu_sigma", n_mu.clone());
    ck.derive("n_over_varpi_sigma", n_varpi.clone());
    ck.cond(
        "alpha2-mu-window",
        "α₂ > −n/μ(σ)",
        a2.clone(),
        Rel::Gt,
        -&n_mu,
    );
    let t = &(&one_m * &a2) + &(theta * &a3);
    ck.derive("t", t.clone());
    ck.note("auxiliary weight t taken as t = (1−θ)α₂ + θα₃ (defined in the argument, not the statement)");
    let den = &n_varpi - &n_mu; // = θ(α₂ − α₃)
    if den.is_zero() {
        ck.note("λ not solvable: the two level exponents coincide (θ(α₂ − α₃) = 0)");
        return Ok(());
    }
    let lambda = (&r.recip() - &n_mu).div(&den);
    ck.derive("lambda", lambda.clone());
    // Back-substitution of λ into the defining relation must be exact.
    let backsub = &r.recip() - &(&(&(&Xr::one() - &lambda) * &n_mu) + &(&lambda * &n_varpi));
    ck.derive("lambda_backsub", backsub);
    ck.cond("lambda-pos", "0 < λ", lambda.clone(), Rel::Gt, Xr::zero());
    ck.cond("lambda-lt-1", "λ < 1", lambda.clone(), Rel::Lt, Xr::one());
    ck.cond(
        "weight-split",
        "α₁ − t = (1−λ)θ(α₂ − α₃)",
        &a1 - &t,
        Rel::Eq,
        &(&(&Xr::one() - &lambda) * theta) * &(&a2 - &a3),
    );
    Ok(())
}

/// Check one variant of the weighted-bundle interpolation family.
pub fn check_ckn(variant: CknVariant, pt: &ParamTuple) -> Result<Certificate, ExactError> {
    use CknVariant::*;
    let mut ck = Ck::new(variant.theorem_id(), pt);
    match variant {
        T2i | T2ii | T2iii => {
            // Common block: 0 < p,τ,β,ϱ ≤ ∞; 1 < r,v < ∞; 1 ≤ u < ∞; σ ≥ 0;
            // −n/v < α₁ < n − n/v; −n/u < α₂ < n − n/u; α₃ > −n/p;
            // v ≥ max(p,u); chain; balance.
            let p = ck.positive("p")?;
            ck.positive("tau")?;
            ck.positive("beta")?;
            ck.positive("rho")?;
            let r = ck.open_finite("r")?;
            let v = ck.open_finite("v")?;
            let u = ck.req("u")?;
            ck.cond("u-ge-1", "u ≥ 1", u.clone(), Rel::Ge, Xr::one());
            ck.finite("u", &u);
            let sigma = ck.req("sigma")?;
            ck.cond("sigma-nonneg", "σ ≥ 0", sigma.clone(), Rel::Ge, Xr::zero());
            ck.weight_window("alpha1", "v")?;
            ck.weight_window("alpha2", "u")?;
            ck.weight_lower("alpha3", "p")?;
            ck.cond(
                "v-dominates",
                "v ≥ max(p, u)",
                v.clone(),
                Rel::Ge,
                p.clone().max(u.clone()),
            );
            let theta = ckn_chain_balance(&mut ck, &sigma, true)?;
            match variant {
                T2i => {
                    let a1 = ck.req("alpha1")?;
                    let a2 = ck.req("alpha2")?;
                    let a3 = ck.req("alpha3")?;
                    ck.cond("alpha-order-12", "α₁ ≤ α₂", a1, Rel::Le, a2.clone());
                    ck.cond("alpha-order-23", "α₂ ≤ α₃", a2, Rel::Le, a3);
                    delta_branches(&mut ck)?;
                    ck.note("checked under the sum-aggregated (B) reading; the pointwise-aggregated (F) reading additionally needs 0 < p,τ < ∞ and s > σ_{p,β}");
                }
                T2ii => {
                    ck.finite("p", &p);
                    let tau = ck.req("tau")?;
                    ck.finite("tau", &tau);
                    let beta = ck.req("beta")?;
                    let s = ck.req("s")?;
                    let gate = sigma_pair(&ck.n(), &p, &beta);
                    ck.cond_s(
                        "s-gate",
                        "s > σ_{p,β} (pointwise-aggregated case)",
                        s,
                        Rel::Gt,
                        gate.clone(),
                        Some(true),
                    );
                    ck.derive("sigma_p_beta", gate);
                    if let Some(th) = &theta {
                        let n_u = ck.n_over(&u);
                        let n_p = ck.n_over(&p);
                        let one_m = &Xr::one() - th;
                        ck.cond(
                            "r-bound",
                            "1/r ≤ (1−θ)n/u + θ·n/p",
                            r.recip(),
                            Rel::Le,
                            &(&one_m * &n_u) + &(th * &n_p),
                        );
                        let a1 = ck.req("alpha1")?;
                        let a2 = ck.req("alpha2")?;
                        let a3 = ck.req("alpha3")?;
                        ck.cond(
                            "alpha1-split",
                            "α₁ = (1−θ)α₂ + θα₃",
                            a1,
                            Rel::Eq,
                            &(&one_m * &a2) + &(th * &a3),
                        );
                    } else {
                        ck.note("skipped r-bound and weight-split conditions: θ unavailable");
                    }
                    ck.note("zero-smoothness factor read at inner index ∞ (stray subscript ignored)");
                }
                T2iii => {
                    let a1 = ck.req("alpha1")?;
                    let a2 = ck.req("alpha2")?;
                    let a3 = ck.req("alpha3")?;
                    ck.cond("alpha-order-21", "α₂ < α₁", a2.clone(), Rel::Lt, a1.clone());
                    ck.note("second-factor zero-smoothness space carries a stray subscript in the source display; read with inner index ∞");
                    if let Some(th) = theta.clone() {
                        let one_m = &Xr::one() - &th;
                        let t = &(&one_m * &a2) + &(&th * &a3);
                        ck.cond(
                            "alpha1-below-t",
                            "α₁ < (1−θ)α₂ + θα₃",
                            a1,
                            Rel::Lt,
                            t,
                        );
                        two_level_system(&mut ck, &sigma, &th)?;
                        // μ(σ) ≥ max(u,p) in reciprocal form, valid since all
                        // indices here are positive.
                        let n_mu = ck.derived["n_over_mu_sigma"].clone();
                        let bound = ck.n_over(&p).min(ck.n_over(&u));
                        ck.cond(
                            "mu-dominates",
                            "μ(σ) ≥ max(u, p), i.e. n/μ(σ) ≤ min(n/u, n/p)",
                            n_mu,
                            Rel::Le,
                            bound,
                        );
                    } else {
                        ck.note("skipped two-level system: θ unavailable");
                    }
                }
                _ => unreachable!(),
            }
        }
        T21i | T21ii | T21iii => {
            // Common block: 0 < p,τ,β,ϱ ≤ ∞; 1 < r,v < ∞; 1 ≤ u < ∞;
            // chain with σ = 0; balance in n/v form.
            let p = ck.positive("p")?;
            ck.positive("tau")?;
            ck.positive("beta")?;
            ck.positive("rho")?;
            let r = ck.open_finite("r")?;
            ck.open_finite("v")?;
            let u = ck.req("u")?;
            ck.cond("u-ge-1", "u ≥ 1", u.clone(), Rel::Ge, Xr::one());
            ck.finite("u", &u);
            let zero = Xr::zero();
            let theta = ckn_chain_balance(&mut ck, &zero, false)?;
            ck.note("checked under the sum-aggregated (B) reading; the pointwise-aggregated (F) reading additionally needs 0 < p,τ < ∞ and s > σ_{p,β}");
            match variant {
                T21i => {
                    let v = ck.req("v")?;
                    let a1 = ck.req("alpha1")?;
                    let a2 = ck.req("alpha2")?;
                    let a3 = ck.req("alpha3")?;
                    ck.cond("alpha-order-12", "α₁ ≤ α₂", a1, Rel::Le, a2.clone());
                    ck.cond("alpha-order-23", "α₂ ≤ α₃", a2, Rel::Le, a3);
                    ck.cond(
                        "v-dominates",
                        "v ≥ max(u, p)",
                        v,
                        Rel::Ge,
                        u.clone().max(p.clone()),
                    );
                    ck.weight_lower("alpha1", "v")?;
                    ck.weight_lower("alpha2", "u")?;
                    ck.weight_lower("alpha3", "p")?;
                    delta_branches(&mut ck)?;
                }
                T21ii => {
                    let s = ck.req("s")?;
                    ck.cond_s(
                        "p-window",
                        "p < n/s",
                        p.clone(),
                        Rel::Lt,
                        &ck.n() * &s.recip(),
                        Some(false),
                    );
                    ck.weight_window("alpha3", "p")?;
                    if let Some(th) = &theta {
                        let one_m = &Xr::one() - th;
                        let n_u = ck.n_over(&u);
                        let n_p = ck.n_over(&p);
                        ck.cond(
                            "r-bound",
                            "1/r ≤ (1−θ)n/u + θ(n/p − s)",
                            r.recip(),
                            Rel::Le,
                            &(&one_m * &n_u) + &(th * &(&n_p - &s)),
                        );
                        let a1 = ck.req("alpha1")?;
                        let a2 = ck.req("alpha2")?;
                        let a3 = ck.req("alpha3")?;
                        ck.cond(
                            "alpha1-split",
                            "α₁ = (1−θ)α₂ + θα₃",
                            a1,
                            Rel::Eq,
                            &(&one_m * &a2) + &(th * &a3),
                        );
                        let third = (&n_p - &s).recip();
                        ck.derive("third_index", third.clone());
                        ck.derive("rho_sum_form", third);
                        ck.note("third-factor smoothness aggregation: 1/(n/p − s) in the sum form, ∞ in the pointwise form");
                    } else {
                        ck.note("skipped r-bound and weight-split conditions: θ unavailable");
                    }
                }
                T21iii => {
                    let s = ck.req("s")?;
                    ck.cond_s(
                        "p-window",
                        "p < n/s",
                        p.clone(),
                        Rel::Lt,
                        &ck.n() * &s.recip(),
                        Some(false),
                    );
                    ck.weight_window("alpha3", "p")?;
                    if let Some(th) = theta.clone() {
                        two_level_system(&mut ck, &Xr::zero(), &th)?;
                        let n_mu = ck.derived["n_over_mu_sigma"].clone();
                        ck.cond(
                            "mu-dominates",
                            "μ(0) > p, i.e. n/μ(0) < n/p",
                            n_mu,
                            Rel::Lt,
                            ck.n_over(&p),
                        );
                        let n_p = ck.n_over(&p);
                        let third = (&n_p - &s).recip();
                        ck.derive("third_index", third);
                    } else {
                        ck.note("skipped two-level system: θ unavailable");
                    }
                }
                _ => unreachable!(),
            }
        }
        T3i | T3ii | T3iii => {
            // Common block: 0 < p,τ < ∞; 0 < β,κ ≤ ∞; 1 < r,v < ∞; σ ≥ 0;
            // 1 ≤ u < ∞; −n/v < α₁ < n − n/v; α₂ > −n/u; α₃ > −n/p;
            // chain; balance; s > σ_{p,β}.
            let p = ck.positive("p")?;
            ck.finite("p", &p);
            let tau = ck.positive("tau")?;
            ck.finite("tau", &tau);
            let beta = ck.positive("beta")?;
            ck.positive("kappa")?;
            let r = ck.open_finite("r")?;
            let v = ck.open_finite("v")?;
            let sigma = ck.req("sigma")?;
            ck.cond("sigma-nonneg", "σ ≥ 0", sigma.clone(), Rel::Ge, Xr::zero());
            let u = ck.req("u")?;
            ck.cond("u-ge-1", "u ≥ 1", u.clone(), Rel::Ge, Xr::one());
            ck.finite("u", &u);
            ck.weight_window("alpha1", "v")?;
            ck.weight_lower("alpha2", "u")?;
            ck.weight_lower("alpha3", "p")?;
            let s = ck.req("s")?;
            let gate = sigma_pair(&ck.n(), &p, &beta);
            ck.cond_s(
                "s-gate",
                "s > σ_{p,β}",
                s,
                Rel::Gt,
                gate.clone(),
                Some(true),
            );
            ck.derive("sigma_p_beta", gate);
            ckn_chain_balance(&mut ck, &sigma, true)?;
            let a1 = ck.req("alpha1")?;
            let a2 = ck.req("alpha2")?;
            let a3 = ck.req("alpha3")?;
            let n_v = ck.n_over(&v);
            let n_u = ck.n_over(&u);
            let n_p = ck.n_over(&p);
            match variant {
                T3i | T3ii => {
                    ck.cond("p-le-v", "p ≤ v", p.clone(), Rel::Le, v.clone());
                    ck.cond("v-lt-u", "v < u", v.clone(), Rel::Lt, u.clone());
                    ck.cond(
                        "alpha-gap",
                        "α₂ − α₁ > n/v − n/u",
                        &a2 - &a1,
                        Rel::Gt,
                        &n_v - &n_u,
                    );
                    if variant == T3i {
                        ck.cond("alpha3-eq", "α₃ = α₂", a3, Rel::Eq, a2);
                    } else {
                        ck.cond("alpha3-gt", "α₃ > α₂", a3, Rel::Gt, a2);
                    }
                }
                T3iii => {
                    ck.cond("u-le-v", "u ≤ v", u.clone(), Rel::Le, v.clone());
                    ck.cond("v-lt-p", "v < p", v.clone(), Rel::Lt, p.clone());
                    let gap = &a3 - &a1;
                    let bound = &n_v - &n_p;
                    ck.cond(
                        "alpha-gap",
                        "α₃ − α₁ ≥ n/v − n/p",
                        gap.clone(),
                        Rel::Ge,
                        bound.clone(),
                    );
                    // Tighten α₂ to its two-sided window and order it above α₃.
                    ck.cond(
                        "alpha2-upper",
                        "α₂ < n − n/u",
                        a2.clone(),
                        Rel::Lt,
                        &ck.n() - &n_u,
                    );
                    ck.cond("alpha2-ge-alpha3", "α₂ ≥ α₃", a2, Rel::Ge, a3);
                    let delta = if gap == bound { r.clone() } else { tau.clone() };
                    ck.derive("delta", delta);
                }
                _ => unreachable!(),
            }
        }
        T4 | T5 => {
            // 1 < r < ∞; 0 < p,β,τ ≤ ∞; 1 < v ≤ min(p,u);
            // α₂ − α₁ > n/v − n/max(p,u); α₃ ≥ α₂; σ ≥ 0;
            // −n/v < α₁ < n − n/v (only the lower bound for the plain-LHS
            // variant); α₂ > −n/u; α₃ > −n/p; chain; balance.
            ck.open_finite("r")?;
            let p = ck.positive("p")?;
            ck.positive("beta")?;
            ck.positive("tau")?;
            let v = ck.req("v")?;
            let u = ck.req("u")?;
            ck.cond("v-gt-1", "v > 1", v.clone(), Rel::Gt, Xr::one());
            ck.cond("v-le-p", "v ≤ p", v.clone(), Rel::Le, p.clone());
            ck.cond("v-le-u", "v ≤ u", v.clone(), Rel::Le, u.clone());
            let a1 = ck.req("alpha1")?;
            let a2 = ck.req("alpha2")?;
            let a3 = ck.req("alpha3")?;
            let n_v = ck.n_over(&v);
            let n_maxpu = &ck.n() * &p.clone().max(u.clone()).recip();
            ck.cond(
                "alpha-gap",
                "α₂ − α₁ > n/v − n/max(p,u)",
                &a2 - &a1,
                Rel::Gt,
                &n_v - &n_maxpu,
            );
            ck.cond("alpha-order-23", "α₃ ≥ α₂", a3.clone(), Rel::Ge, a2.clone());
            let sigma = ck.req("sigma")?;
            ck.cond("sigma-nonneg", "σ ≥ 0", sigma.clone(), Rel::Ge, Xr::zero());
            if variant == T4 {
                ck.weight_window("alpha1", "v")?;
            } else {
                ck.weight_lower("alpha1", "v")?;
            }
            ck.weight_lower("alpha2", "u")?;
            ck.weight_lower("alpha3", "p")?;
            ckn_chain_balance(&mut ck, &sigma, true)?;
            ck.note("second and third factors share the outer index τ; checked under the sum-aggregated (B) reading — the pointwise (F) reading additionally needs 0 < p,τ < ∞ and s > σ_{p,β}");
        }
    }
    Ok(ck.finish())
}

/// Spec-facing alias: ball-uniform interpolation when the tuple carries the
/// single-space symbols, the embedding iff when it carries the paired ones.
pub fn check_ckn_morrey(pt: &ParamTuple) -> Result<Certificate, ExactError> {
    if pt.p1.is_some() && pt.p2.is_some() {
        morrey_embedding(pt)
    } else {
        morrey_ckn(pt)
    }
}

/// Spec-facing alias for the regularity gate (sum-aggregated family).
pub fn check_regularity(pt: &ParamTuple, family: AFamily) -> Result<Certificate, ExactError> {
    regularity(pt, family)
}

// ---------------------------------------------------------------------------
// Interpolation bundles (exact affine combination)
// ---------------------------------------------------------------------------

/// One weighted smoothness bundle: annulus weight α, inner index q, outer
/// index p, smoothness aggregation β, smoothness s.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    pub alpha: Xr,
    pub p: Xr,
    pub q: Xr,
    pub beta: Xr,
    pub s: Xr,
}

impl Bundle {
    pub fn new(alpha: Xr, p: Xr, q: Xr, beta: Xr, s: Xr) -> Self {
        Bundle { alpha, p, q, beta, s }
    }
}

/// The θ-intermediate bundle: affine in α and s, harmonic in p, q, β.
pub fn interpolate_bundle(b0: &Bundle, b1: &Bundle, theta: &Xr) -> Bundle {
    let one_m = &Xr::one() - theta;
    let affine = |x0: &Xr, x1: &Xr| &(&one_m * x0) + &(theta * x1);
    let harmonic = |x0: &Xr, x1: &Xr| affine(&x0.recip(), &x1.recip()).recip();
    Bundle {
        alpha: affine(&b0.alpha, &b1.alpha),
        p: harmonic(&b0.p, &b1.p),
        q: harmonic(&b0.q, &b1.q),
        beta: harmonic(&b0.beta, &b1.beta),
        s: affine(&b0.s, &b1.s),
    }
}

/// Certificate for the multiplicative interpolation inequality between two
/// bundles: positivity of every index and 0 < θ < 1. The derived map carries
/// the exact intermediate bundle.
pub fn check_interpolation(b0: &Bundle, b1: &Bundle, theta: &Xr) -> Certificate {
    let mut conds = Vec::new();
    let mut push = |id: &str, text: String, lhs: Xr, rel: Rel, rhs: Xr| {
        conds.push(Condition::evaluate(id, text, lhs, rel, rhs, None));
    };
    for (tag, b) in [("0", b0), ("1", b1)] {
        push(
            &format!("p{tag}-pos"),
            format!("p_{tag} > 0"),
            b.p.clone(),
            Rel::Gt,
            Xr::zero(),
        );
        push(
            &format!("q{tag}-pos"),
            format!("q_{tag} > 0"),
            b.q.clone(),
            Rel::Gt,
            Xr::zero(),
        );
        push(
            &format!("beta{tag}-pos"),
            format!("β_{tag} > 0"),
            b.beta.clone(),
            Rel::Gt,
            Xr::zero(),
        );
    }
    push("theta-pos", "0 < θ".into(), theta.clone(), Rel::Gt, Xr::zero());
    push("theta-lt-1", "θ < 1".into(), theta.clone(), Rel::Lt, Xr::one());
    let mid = interpolate_bundle(b0, b1, theta);
    let derived = BTreeMap::from([
        ("alpha".to_string(), mid.alpha),
        ("p".to_string(), mid.p),
        ("q".to_string(), mid.q),
        ("beta".to_string(), mid.beta),
        ("s".to_string(), mid.s),
    ]);
    Certificate::conclude("interp", conds, derived, vec![])
}
