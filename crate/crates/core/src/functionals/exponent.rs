use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::MINUS_N_GUARD;
use crate::error::{Error, Result};

/// The exponent `p`, with the two infinite limits kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    PosInf,
    NegInf,
}

/// Exponents of one `(p, s)` pair:
/// `curvature = (n-s)/(n+p)`, `support = (n-s)(1-p)/(n+p)`, `alpha = p/(n+p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    pub curvature: f64,
    pub support: f64,
    pub alpha: f64,
}

impl PExponent {
    pub fn value(self) -> f64 {
        match self {
            PExponent::Finite(p) => p,
            PExponent::PosInf => f64::INFINITY,
            PExponent::NegInf => f64::NEG_INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        !matches!(self, PExponent::Finite(_))
    }

    /// True when `|n + p|` is below the guard.
    pub fn is_minus_n(self, n: usize) -> bool {
        matches!(self, PExponent::Finite(p) if (n as f64 + p).abs() < MINUS_N_GUARD)
    }

    pub fn check(self, n: usize) -> Result<()> {
        if self.is_minus_n(n) {
            return Err(Error::PEqualsMinusN {
                p: self.value(),
                n,
            });
        }
        Ok(())
    }

    /// Exponents for dimension `n` and mixing index `s`; at `±∞` these are
    /// the limits `0`, `-(n-s)` and `1`.
    pub fn exponents(self, n: usize, s: f64) -> Result<Exponents> {
        self.check(n)?;
        let n = n as f64;
        Ok(match self {
            PExponent::Finite(p) => Exponents {
                curvature: (n - s) / (n + p),
                support: (n - s) * (1.0 - p) / (n + p),
                alpha: p / (n + p),
            },
            _ => Exponents {
                curvature: 0.0,
                support: -(n - s),
                alpha: 1.0,
            },
        })
    }
}

impl From<f64> for PExponent {
    fn from(p: f64) -> Self {
        if p == f64::INFINITY {
            PExponent::PosInf
        } else if p == f64::NEG_INFINITY {
            PExponent::NegInf
        } else {
            PExponent::Finite(p)
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(PExponent::PosInf),
            "-inf" | "-infinity" => Ok(PExponent::NegInf),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|p| p.is_finite())
                .map(PExponent::Finite)
                .ok_or_else(|| Error::InvalidArgument(format!("`{s}` is not a valid exponent p"))),
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::PosInf => f.write_str("inf"),
            PExponent::NegInf => f.write_str("-inf"),
        }
    }
}

/// Finite values as JSON numbers, infinities as `"inf"` / `"-inf"`.
impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PExponent::Finite(p) => serializer.serialize_f64(*p),
            PExponent::PosInf => serializer.serialize_str("inf"),
            PExponent::NegInf => serializer.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(p) => Ok(PExponent::Finite(p)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
