//! Exact-rational admissibility certificates for the hypothesis systems of a
//! family of weighted-space inequalities (annulus-weighted and ball-uniform
//! scales).
//!
//! All arithmetic is performed over arbitrary-precision rationals extended
//! with ±∞ ([`Xr`]), so every certificate embeds exact residuals: a condition
//! sits on its boundary iff its residual is literally zero, never "within
//! tolerance". Floating point appears only in [`Xr::to_f64`], which is for
//! display and downstream numerics, never for verdicts.

pub mod certificate;
pub mod params;
pub mod rational;
pub mod refcases;
pub mod theorems;

pub use certificate::{Certificate, Condition, Rel, Verdict};
pub use params::ParamTuple;
pub use rational::{ParseXrError, Xr};
pub use theorems::{
    check, check_ckn, check_ckn_morrey, check_embedding, check_franke, check_interpolation,
    check_regularity, interpolate_bundle, AFamily, Bundle, CknVariant, ExactError, THEOREM_IDS,
};
