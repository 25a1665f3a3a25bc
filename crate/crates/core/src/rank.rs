//! Entrenchment ranks: reals in `[0, 1]` compared with an absolute tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Absolute tolerance for every rank comparison.
pub const TOLERANCE: f64 = 1e-9;

/// A rank in `[0, 1]`. Equality and ordering are tolerance-based, so two
/// ranks closer than [`TOLERANCE`] compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rank(pub(crate) f64);

impl Rank {
    pub const ZERO: Rank = Rank(0.0);
    pub const ONE: Rank = Rank(1.0);

    pub fn new(value: f64) -> Result<Self, Error> {
        if !value.is_finite() || !(-TOLERANCE..=1.0 + TOLERANCE).contains(&value) {
            return Err(Error::RankOutOfRange(value));
        }
        Ok(Rank(value.clamp(0.0, 1.0)))
    }

    /// Rank from thousandths, e.g. `from_milli(856)` is 0.856.
    pub fn from_milli(milli: u32) -> Self {
        Rank((milli.min(1000)) as f64 / 1000.0)
    }

    /// Rounded to three decimals.
    pub fn quantized(self) -> Self {
        Rank::from_milli((self.0 * 1000.0).round() as u32)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 <= TOLERANCE
    }

    pub fn is_max(self) -> bool {
        self.0 >= 1.0 - TOLERANCE
    }
}

impl PartialEq for Rank {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).abs() <= TOLERANCE
    }
}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else {
            self.0.partial_cmp(&other.0)
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3}", self.0)
    }
}

impl FromStr for Rank {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("not a rank: {s:?}")))?;
        Rank::new(v)
    }
}

impl TryFrom<f64> for Rank {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self, Error> {
        Rank::new(v)
    }
}

// Ranks travel as their 3-decimal strings so clients never re-round.
impl serde::Serialize for Rank {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rank {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
            Repr::Number(n) => Rank::new(n).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(Rank::new(1.5).is_err());
        assert!(Rank::new(-0.1).is_err());
        assert!(Rank::new(f64::NAN).is_err());
        assert!(Rank::new(1.0).is_ok());
    }

    #[test]
    fn tolerance_comparisons() {
        let a = Rank::new(0.5).unwrap();
        let b = Rank::new(0.5 + 1e-12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.partial_cmp(&b), Some(std::cmp::Ordering::Less));
        assert!(Rank::new(0.5001).unwrap() > a);
    }

    #[test]
    fn quantizes_to_thousandths() {
        let r = Rank::new(0.85601).unwrap().quantized();
        assert_eq!(r.value(), 0.856);
        assert_eq!(r.to_string(), "0.856");
        assert_eq!("0.856".parse::<Rank>().unwrap().value(), r.value());
    }

    #[test]
    fn serde_uses_three_decimals() {
        let r = Rank::from_milli(785);
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"0.785\"");
        let back: Rank = serde_json::from_str("0.785").unwrap();
        assert_eq!(back, r);
    }
}
