//! Parameter tuples: one bag of named exact rationals per hypothesis check.
//!
//! Field names follow the symbols used by the inequality statements
//! themselves (`alpha2`, `tau`, `sigma`, …) so that a serialized tuple reads
//! like the hypothesis list it is checked against. Every field except the
//! dimension is optional; each theorem's checker demands exactly the symbols
//! it consumes and reports a missing one as a specification error rather than
//! defaulting it.

use crate::rational::Xr;
use serde::{Deserialize, Serialize};

macro_rules! param_tuple {
    ($(($field:ident, $json:literal)),* $(,)?) => {
        /// Named parameters for one admissibility check. `n` is the dimension.
        #[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct ParamTuple {
            pub n: u32,
            $(
                #[serde(rename = $json, default, skip_serializing_if = "Option::is_none")]
                pub $field: Option<Xr>,
            )*
        }

        impl ParamTuple {
            /// Look a symbol up by its serialized name.
            pub fn field(&self, name: &str) -> Option<&Xr> {
                match name {
                    $( $json => self.$field.as_ref(), )*
                    _ => None,
                }
            }

            /// All symbol names this tuple can carry, in declaration order.
            pub const FIELD_NAMES: &'static [&'static str] = &[$($json),*];
        }
    };
}

param_tuple![
    (alpha, "alpha"),
    (alpha1, "alpha1"),
    (alpha2, "alpha2"),
    (alpha3, "alpha3"),
    (p, "p"),
    (q, "q"),
    (u, "u"),
    (v, "v"),
    (r, "r"),
    (tau, "tau"),
    (rho, "rho"),
    (beta, "beta"),
    (kappa, "kappa"),
    (mu, "mu"),
    (delta, "delta"),
    (s, "s"),
    (s1, "s1"),
    (s2, "s2"),
    (sigma, "sigma"),
    (theta, "theta"),
    (big_m, "M"),
    (p1, "p1"),
    (p2, "p2"),
    (q1, "q1"),
    (q2, "q2"),
    (u1, "u1"),
    (u2, "u2"),
];

impl ParamTuple {
    pub fn new(n: u32) -> Self {
        ParamTuple {
            n,
            ..Default::default()
        }
    }

    /// Builder-style setter used heavily by tests and sweep configs.
    pub fn with(mut self, name: &str, value: Xr) -> Self {
        self.set(name, value).unwrap_or_else(|| panic!("unknown parameter symbol `{name}`"));
        self
    }

    /// Set a symbol by serialized name; `None` if the name is unknown.
    pub fn set(&mut self, name: &str, value: Xr) -> Option<()> {
        macro_rules! setter {
            ($(($field:ident, $json:literal)),* $(,)?) => {
                match name {
                    $( $json => { self.$field = Some(value); Some(()) } )*
                    _ => None,
                }
            };
        }
        setter![
            (alpha, "alpha"),
            (alpha1, "alpha1"),
            (alpha2, "alpha2"),
            (alpha3, "alpha3"),
            (p, "p"),
            (q, "q"),
            (u, "u"),
            (v, "v"),
            (r, "r"),
            (tau, "tau"),
            (rho, "rho"),
            (beta, "beta"),
            (kappa, "kappa"),
            (mu, "mu"),
            (delta, "delta"),
            (s, "s"),
            (s1, "s1"),
            (s2, "s2"),
            (sigma, "sigma"),
            (theta, "theta"),
            (big_m, "M"),
            (p1, "p1"),
            (p2, "p2"),
            (q1, "q1"),
            (q2, "q2"),
            (u1, "u1"),
            (u2, "u2"),
        ]
    }

    /// The dimension as an exact rational.
    pub fn dim(&self) -> Xr {
        Xr::int(self.n as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_preserves_symbols() {
        let pt = ParamTuple::new(2)
            .with("alpha1", Xr::ratio(-1, 4))
            .with("p", Xr::int(2))
            .with("beta", Xr::PosInf)
            .with("M", Xr::int(3));
        let js = serde_json::to_string(&pt).unwrap();
        let back: ParamTuple = serde_json::from_str(&js).unwrap();
        assert_eq!(pt, back);
        assert!(js.contains("\"alpha1\":\"-1/4\""));
        assert!(js.contains("\"beta\":\"inf\""));
        assert!(js.contains("\"M\":\"3\""));
    }

    #[test]
    fn unset_fields_are_omitted() {
        let pt = ParamTuple::new(1).with("q", Xr::int(2));
        let js = serde_json::to_string(&pt).unwrap();
        assert_eq!(js, r#"{"n":1,"q":"2"}"#);
    }

    #[test]
    fn integer_json_values_accepted() {
        let pt: ParamTuple = serde_json::from_str(r#"{"n":1,"q":2,"alpha":"-3/4"}"#).unwrap();
        assert_eq!(pt.q, Some(Xr::int(2)));
        assert_eq!(pt.alpha, Some(Xr::ratio(-3, 4)));
    }

    #[test]
    fn field_lookup_matches_setters() {
        let pt = ParamTuple::new(1).with("sigma", Xr::ratio(1, 2));
        assert_eq!(pt.field("sigma"), Some(&Xr::ratio(1, 2)));
        assert_eq!(pt.field("nope"), None);
    }
}
