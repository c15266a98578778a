use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An integrability exponent in `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtExponent {
    Finite(f64),
    Infinite,
}

impl ExtExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(ExtExponent::Infinite);
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("exponent {p} is not in [1, inf]")));
        }
        Ok(ExtExponent::Finite(p))
    }

    /// Shorthand for finite exponents known to be valid; panics otherwise.
    pub fn finite(p: f64) -> Self {
        Self::new(p).expect("exponent must be >= 1")
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtExponent::Finite(_))
    }

    /// The finite value, if any.
    pub fn value(self) -> Option<f64> {
        match self {
            ExtExponent::Finite(p) => Some(p),
            ExtExponent::Infinite => None,
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            ExtExponent::Finite(p) => 1.0 / p,
            ExtExponent::Infinite => 0.0,
        }
    }

    /// The conjugate exponent `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            ExtExponent::Infinite => ExtExponent::Finite(1.0),
            ExtExponent::Finite(p) if p == 1.0 => ExtExponent::Infinite,
            ExtExponent::Finite(p) => ExtExponent::Finite(p / (p - 1.0)),
        }
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtExponent::Finite(p) => write!(f, "{p}"),
            ExtExponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(ExtExponent::Infinite),
            other => {
                let p: f64 =
                    other.parse().map_err(|_| Error::InvalidParameter(format!("cannot parse exponent '{s}'")))?;
                ExtExponent::new(p)
            }
        }
    }
}

impl Serialize for ExtExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtExponent::Finite(p) => serializer.serialize_f64(*p),
            ExtExponent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// A pair of mixed-norm exponents: `p` along radii, `q` over angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PQPair {
    pub p: ExtExponent,
    pub q: ExtExponent,
}

impl PQPair {
    pub fn new(p: ExtExponent, q: ExtExponent) -> Self {
        PQPair { p, q }
    }

    /// Both exponents finite and valid; panics otherwise.
    pub fn finite(p: f64, q: f64) -> Self {
        PQPair { p: ExtExponent::finite(p), q: ExtExponent::finite(q) }
    }

    pub fn p_conj(&self) -> ExtExponent {
        self.p.conjugate()
    }

    pub fn q_conj(&self) -> ExtExponent {
        self.q.conjugate()
    }
}

impl fmt::Display for PQPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(ExtExponent::Infinite.conjugate(), ExtExponent::Finite(1.0));
        assert_eq!(ExtExponent::Finite(1.0).conjugate(), ExtExponent::Infinite);
        assert_eq!(ExtExponent::Finite(2.0).conjugate(), ExtExponent::Finite(2.0));
        let p = ExtExponent::Finite(3.0);
        assert!((p.reciprocal() + p.conjugate().reciprocal() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parse() {
        assert_eq!("inf".parse::<ExtExponent>().unwrap(), ExtExponent::Infinite);
        assert_eq!("2.5".parse::<ExtExponent>().unwrap(), ExtExponent::Finite(2.5));
        assert!("0.5".parse::<ExtExponent>().is_err());
        assert!("nan".parse::<ExtExponent>().is_err());
    }
}
