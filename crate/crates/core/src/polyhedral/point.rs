use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::rational::{ExtRational, Rational};

/// A point of `T^n`, where a coordinate may be `-inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<ExtRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<ExtRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Dimension("a point needs at least one coordinate".into()));
        }
        Ok(Self { coords })
    }

    pub fn finite(coords: &[Rational]) -> Self {
        Self { coords: coords.iter().cloned().map(ExtRational::Finite).collect() }
    }

    pub fn coords(&self) -> &[ExtRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Finite coordinates, if the point lies in `R^n`.
    pub fn to_vector(&self) -> Option<Vector> {
        self.coords.iter().map(|c| c.finite().cloned()).collect()
    }
}

/// Number of coordinates equal to `-inf`.
pub fn sedentarity(x: &RationalPoint) -> usize {
    x.coords.iter().filter(|c| c.is_neg_inf()).count()
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        let raw = Vec::<Raw>::deserialize(d)?;
        let coords = raw
            .into_iter()
            .map(|r| match r {
                Raw::Str(s) => s.parse::<ExtRational>(),
                Raw::Int(n) => Ok(ExtRational::Finite(crate::rational::q(n))),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RationalPoint::new(coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn sedentarity_counts() {
        let a = RationalPoint::finite(&[q(3), qf(1, 2)]);
        assert_eq!(sedentarity(&a), 0);
        let b = RationalPoint::new(vec![ExtRational::NegInf, ExtRational::Finite(q(0))]).unwrap();
        assert_eq!(sedentarity(&b), 1);
        let c = RationalPoint::new(vec![ExtRational::NegInf, ExtRational::NegInf]).unwrap();
        assert_eq!(sedentarity(&c), 2);
        assert!(c.to_vector().is_none());
    }

    #[test]
    fn json_round_trip() {
        let p: RationalPoint = serde_json::from_str(r#"["-inf", "1/2", 3]"#).unwrap();
        assert_eq!(sedentarity(&p), 1);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["-inf","1/2","3"]"#);
    }
}
