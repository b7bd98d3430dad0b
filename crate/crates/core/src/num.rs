//! Extended nonnegative reals and the logarithm-base convention.
//!
//! Divergences and reliabilities live in `[0, +inf]`. Infinity is a real
//! outcome (support mismatches, empty regions), so it is carried explicitly
//! rather than smuggled through sentinel floats.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A value in `[0, +inf]`: a divergence or an error exponent.
#[derive(Debug, Clone, Copy)]
pub enum ExtReal {
    Finite(f64),
    Inf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Wraps a finite nonnegative float. Tiny negative rounding noise is
    /// clamped to zero; anything else is a caller bug.
    pub fn finite(value: f64) -> ExtReal {
        debug_assert!(value.is_finite(), "ExtReal::finite got {value}");
        debug_assert!(value > -1e-9, "ExtReal::finite got negative {value}");
        ExtReal::Finite(value.max(0.0))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            ExtReal::Inf => None,
        }
    }

    /// Finite value or panic; for contexts where infinity is already excluded.
    pub fn expect_finite(&self) -> f64 {
        self.as_finite().expect("unexpected infinite value")
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(v) if *v == 0.0)
    }

    /// `|a - b| <= tol`, where two infinities agree and a finite value never
    /// agrees with infinity.
    pub fn approx_eq(&self, other: &ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Inf, ExtReal::Inf) => true,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            _ => false,
        }
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Inf, ExtReal::Inf) => Ordering::Equal,
            (ExtReal::Inf, ExtReal::Finite(_)) => Ordering::Greater,
            (ExtReal::Finite(_), ExtReal::Inf) => Ordering::Less,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.total_cmp(b),
        }
    }
}

impl std::ops::Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Inf,
        }
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |acc, v| acc + v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Inf => write!(f, "inf"),
        }
    }
}

/// Infinite exponents serialize as the string `"inf"`; finite ones as numbers.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => serializer.serialize_f64(*v),
            ExtReal::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> de::Visitor<'de> for V {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a nonnegative number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                if v.is_finite() && v >= 0.0 {
                    Ok(ExtReal::Finite(v))
                } else {
                    Err(E::custom(format!("not a nonnegative finite number: {v}")))
                }
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                Ok(ExtReal::Finite(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<ExtReal, E> {
                if s == "inf" {
                    Ok(ExtReal::Inf)
                } else {
                    Err(E::custom(format!("expected \"inf\", got {s:?}")))
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// The logarithm base used for every divergence and exponent.
///
/// The default is base 2, so reliabilities are measured in bits per sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase {
    base: f64,
    ln_base: f64,
}

impl LogBase {
    pub const BITS: LogBase = LogBase {
        base: 2.0,
        ln_base: std::f64::consts::LN_2,
    };

    pub const NATS: LogBase = LogBase {
        base: std::f64::consts::E,
        ln_base: 1.0,
    };

    pub fn new(base: f64) -> Result<LogBase, Error> {
        if !(base.is_finite() && base > 1.0) {
            return Err(Error::InvalidLogBase { base });
        }
        Ok(LogBase {
            base,
            ln_base: base.ln(),
        })
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// log_b(x)
    pub fn log(&self, x: f64) -> f64 {
        x.ln() / self.ln_base
    }

    /// Converts a natural-log quantity into this base.
    pub fn from_nats(&self, nats: f64) -> f64 {
        nats / self.ln_base
    }

    /// Converts a quantity in this base back to natural log.
    pub fn to_nats(&self, value: f64) -> f64 {
        value * self.ln_base
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::BITS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = [ExtReal::Inf, ExtReal::finite(2.0), ExtReal::finite(0.5)];
        v.sort();
        assert_eq!(v[0], ExtReal::finite(0.5));
        assert_eq!(v[2], ExtReal::Inf);
        assert!(ExtReal::finite(1.0) < ExtReal::Inf);
    }

    #[test]
    fn addition_absorbs_infinity() {
        assert_eq!(ExtReal::finite(1.0) + ExtReal::finite(2.0), ExtReal::finite(3.0));
        assert_eq!(ExtReal::finite(1.0) + ExtReal::Inf, ExtReal::Inf);
    }

    #[test]
    fn serializes_infinity_as_string() {
        assert_eq!(serde_json::to_string(&ExtReal::Inf).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&ExtReal::finite(0.25)).unwrap(), "0.25");
        let back: ExtReal = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(back, ExtReal::Inf);
        let back: ExtReal = serde_json::from_str("0.25").unwrap();
        assert_eq!(back, ExtReal::finite(0.25));
    }

    #[test]
    fn log_base_rejects_degenerate_bases() {
        assert!(LogBase::new(1.0).is_err());
        assert!(LogBase::new(0.5).is_err());
        assert!(LogBase::new(f64::NAN).is_err());
        let b = LogBase::new(4.0).unwrap();
        assert!((b.log(16.0) - 2.0).abs() < 1e-15);
    }
}
