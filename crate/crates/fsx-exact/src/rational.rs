//! Extended exact rationals: arbitrary-precision fractions plus `±∞`.
//!
//! Every hypothesis check in this crate runs on [`Xr`] so that residuals are
//! exact; floating point never enters a verdict. The only non-total operations
//! are the indeterminate forms (`∞ − ∞`, `0 · ∞`), which panic: a condition
//! table that produces one is a transcription bug, not a data error.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact extended rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Xr {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Xr {
    pub fn int(v: i64) -> Self {
        Xr::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den` as an exact fraction; `den` must be nonzero.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "ratio denominator must be nonzero");
        Xr::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Xr::int(0)
    }

    pub fn one() -> Self {
        Xr::int(1)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Xr::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Xr::Finite(r) if r.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Xr::PosInf => true,
            Xr::NegInf => false,
            Xr::Finite(r) => r.is_positive(),
        }
    }

    /// Multiplicative inverse with the conventions `1/±∞ = 0` and `1/0 = +∞`.
    ///
    /// The second convention matches how the condition tables use reciprocals:
    /// they only ever invert index parameters, which are positive, and a zero
    /// index is the degenerate limit where `n/p` blows up.
    pub fn recip(&self) -> Xr {
        match self {
            Xr::PosInf | Xr::NegInf => Xr::zero(),
            Xr::Finite(r) if r.is_zero() => Xr::PosInf,
            Xr::Finite(r) => Xr::Finite(r.recip()),
        }
    }

    /// `self / other` via `recip`; panics on the indeterminate `∞/∞` and `0/0`.
    pub fn div(&self, other: &Xr) -> Xr {
        self * &other.recip()
    }

    pub fn min(self, other: Xr) -> Xr {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Xr) -> Xr {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn abs(&self) -> Xr {
        match self {
            Xr::PosInf | Xr::NegInf => Xr::PosInf,
            Xr::Finite(r) => Xr::Finite(r.abs()),
        }
    }

    /// Lossy conversion for report prose; never used in a verdict.
    pub fn to_f64(&self) -> f64 {
        match self {
            Xr::PosInf => f64::INFINITY,
            Xr::NegInf => f64::NEG_INFINITY,
            Xr::Finite(r) => {
                let num = r.numer();
                let den = r.denom();
                // Good to ~15 digits for the parameter magnitudes in play.
                let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
                let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
                nf / df
            }
        }
    }

    /// Difference used for condition residuals: equal infinities yield 0
    /// (distance to the boundary), mixed infinities yield the signed infinity.
    pub fn residual_diff(lhs: &Xr, rhs: &Xr) -> Xr {
        match (lhs, rhs) {
            (Xr::PosInf, Xr::PosInf) | (Xr::NegInf, Xr::NegInf) => Xr::zero(),
            _ => lhs - rhs,
        }
    }
}

impl PartialOrd for Xr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Xr {
    fn cmp(&self, other: &Self) -> Ordering {
        use Xr::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) => Ordering::Less,
            (_, NegInf) => Ordering::Greater,
            (PosInf, _) => Ordering::Greater,
            (_, PosInf) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &Xr {
    type Output = Xr;
    fn add(self, other: &Xr) -> Xr {
        use Xr::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => panic!("indeterminate form: ∞ − ∞"),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }
}

impl Sub for &Xr {
    type Output = Xr;
    fn sub(self, other: &Xr) -> Xr {
        self + &(-other)
    }
}

impl Neg for &Xr {
    type Output = Xr;
    fn neg(self) -> Xr {
        match self {
            Xr::PosInf => Xr::NegInf,
            Xr::NegInf => Xr::PosInf,
            Xr::Finite(r) => Xr::Finite(-r.clone()),
        }
    }
}

impl Mul for &Xr {
    type Output = Xr;
    fn mul(self, other: &Xr) -> Xr {
        use Xr::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a * b),
            (inf, Finite(r)) | (Finite(r), inf) => {
                if r.is_zero() {
                    panic!("indeterminate form: 0 · ∞");
                }
                let pos = matches!(inf, PosInf) == r.is_positive();
                if pos {
                    PosInf
                } else {
                    NegInf
                }
            }
            (a, b) => {
                let pos = matches!(a, PosInf) == matches!(b, PosInf);
                if pos {
                    PosInf
                } else {
                    NegInf
                }
            }
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Xr {
            type Output = Xr;
            fn $m(self, other: Xr) -> Xr { $tr::$m(&self, &other) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Xr {
    type Output = Xr;
    fn neg(self) -> Xr {
        -&self
    }
}

impl fmt::Display for Xr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Xr::PosInf => write!(f, "inf"),
            Xr::NegInf => write!(f, "-inf"),
            Xr::Finite(r) => {
                if r.denom() == &BigInt::from(1) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse `{0}` as a rational (expected `n`, `n/d`, decimal, `inf`, or `-inf`)")]
pub struct ParseXrError(String);

impl FromStr for Xr {
    type Err = ParseXrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "inf" | "+inf" | "Inf" | "oo" => return Ok(Xr::PosInf),
            "-inf" | "-Inf" | "-oo" => return Ok(Xr::NegInf),
            _ => {}
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| ParseXrError(s.into()))?;
            let d: BigInt = den.trim().parse().map_err(|_| ParseXrError(s.into()))?;
            if d.is_zero() {
                return Err(ParseXrError(s.into()));
            }
            return Ok(Xr::Finite(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            // Decimal notation is exact: 1.25 = 125/100.
            let neg = int.trim_start().starts_with('-');
            let digits: String = int.chars().chain(frac.chars()).filter(|c| *c != '-' && *c != '+').collect();
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(ParseXrError(s.into()));
            }
            let mut n: BigInt = digits.parse().map_err(|_| ParseXrError(s.into()))?;
            if neg {
                n = -n;
            }
            let d = BigInt::from(10).pow(frac.len() as u32);
            return Ok(Xr::Finite(BigRational::new(n, d)));
        }
        let n: BigInt = t.parse().map_err(|_| ParseXrError(s.into()))?;
        Ok(Xr::Finite(BigRational::from_integer(n)))
    }
}

impl Serialize for Xr {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Xr {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> de::Visitor<'de> for V {
            type Value = Xr;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a rational as `n`, `n/d`, decimal string, `inf`, `-inf`, or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Xr, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Xr, E> {
                Ok(Xr::int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Xr, E> {
                Ok(Xr::Finite(BigRational::from_integer(BigInt::from(v))))
            }
        }
        de.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3", "-7", "1/3", "-22/7", "inf", "-inf"] {
            let x: Xr = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        // Decimal input normalizes to fraction form.
        let x: Xr = "0.25".parse().unwrap();
        assert_eq!(x, Xr::ratio(1, 4));
        let x: Xr = "-1.5".parse().unwrap();
        assert_eq!(x, Xr::ratio(-3, 2));
    }

    #[test]
    fn ordering_spans_infinities() {
        assert!(Xr::NegInf < Xr::int(-1_000_000));
        assert!(Xr::int(5) < Xr::PosInf);
        assert!(Xr::ratio(1, 3) < Xr::ratio(1, 2));
    }

    #[test]
    fn infinity_conventions() {
        assert_eq!(Xr::PosInf.recip(), Xr::zero());
        assert_eq!(Xr::zero().recip(), Xr::PosInf);
        assert_eq!(&Xr::PosInf + &Xr::int(7), Xr::PosInf);
        assert_eq!(&Xr::int(-2) * &Xr::PosInf, Xr::NegInf);
    }

    #[test]
    #[should_panic(expected = "indeterminate")]
    fn infinity_minus_infinity_panics() {
        let _ = &Xr::PosInf - &Xr::PosInf;
    }

    #[test]
    fn residual_diff_handles_equal_infinities() {
        assert_eq!(Xr::residual_diff(&Xr::PosInf, &Xr::PosInf), Xr::zero());
        assert_eq!(Xr::residual_diff(&Xr::int(3), &Xr::int(1)), Xr::int(2));
        assert_eq!(Xr::residual_diff(&Xr::int(3), &Xr::PosInf), Xr::NegInf);
    }

    #[test]
    fn exact_arithmetic_no_drift() {
        // 1/3 + 1/6 == 1/2 exactly.
        let x = &Xr::ratio(1, 3) + &Xr::ratio(1, 6);
        assert_eq!(x, Xr::ratio(1, 2));
    }
}
