use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polyhedral::json::schema_error;
use crate::rational::{parse_rational, Rational};

use super::fan::SmoothCompleteFan2D;
use super::ring::{CohomologyClass, ToricSpace};

/// `{"rays": [[1,0],[0,1],[-1,-1]]}` or `{"tpn": 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FanJson {
    Rays { rays: Vec<Vec<i64>> },
    Projective { tpn: usize },
}

impl FanJson {
    pub fn to_space(&self) -> Result<ToricSpace> {
        match self {
            FanJson::Rays { rays } => {
                SmoothCompleteFan2D::new(rays.clone()).map(ToricSpace::Surface).map_err(|e| schema_error("rays", e.to_string()))
            }
            FanJson::Projective { tpn } => ToricSpace::projective(*tpn).map_err(|e| schema_error("tpn", e.to_string())),
        }
    }

    pub fn from_space(x: &ToricSpace) -> Self {
        match x {
            ToricSpace::Projective(n) => FanJson::Projective { tpn: *n },
            ToricSpace::Surface(f) => FanJson::Rays { rays: f.rays().iter().map(|r| r.to_vec()).collect() },
        }
    }
}

/// A divisor class: `{"coeffs": {"H": "2"}}` on `TP^n`, or ray indices as
/// keys on a surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub coeffs: BTreeMap<String, String>,
}

impl ClassJson {
    pub fn to_class(&self, x: &ToricSpace) -> Result<CohomologyClass> {
        let len = x.boundary_divisors().len();
        let mut coeffs = vec![Rational::from_integer(0.into()); if matches!(x, ToricSpace::Projective(_)) { 1 } else { len }];
        for (k, v) in &self.coeffs {
            let path = format!("coeffs[{k:?}]");
            let value = parse_rational(v).map_err(|e| schema_error(&path, e.to_string()))?;
            let slot = match x {
                ToricSpace::Projective(_) if k == "H" => 0,
                ToricSpace::Surface(_) => {
                    k.parse::<usize>().ok().filter(|&i| i < len).ok_or_else(|| schema_error(&path, "not a ray index"))?
                }
                _ => return Err(schema_error(&path, "TP^n classes use the key \"H\"")),
            };
            coeffs[slot] += value;
        }
        x.divisor(&coeffs)
    }

    pub fn from_class(x: &ToricSpace, c: &CohomologyClass) -> Self {
        let coeffs = c
            .component(1)
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let key = if matches!(x, ToricSpace::Projective(_)) { "H".to_string() } else { i.to_string() };
                (key, crate::rational::format_rational(v))
            })
            .collect();
        Self { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::json::from_json_str;
    use crate::rational::q;
    use crate::Error;

    #[test]
    fn fans_and_classes() {
        let f: FanJson = from_json_str(r#"{"tpn": 2}"#).unwrap();
        let x = f.to_space().unwrap();
        let c: ClassJson = from_json_str(r#"{"coeffs": {"H": "3"}}"#).unwrap();
        assert_eq!(x.rr_number(&c.to_class(&x).unwrap()).unwrap(), q(10));
        let s: FanJson = from_json_str(r#"{"rays": [[1,0],[0,1],[-1,0],[0,-1]]}"#).unwrap();
        let y = s.to_space().unwrap();
        let d = ClassJson { coeffs: [("0".into(), "1".into()), ("1".into(), "1/1".into())].into_iter().collect() };
        assert_eq!(y.rr_number(&d.to_class(&y).unwrap()).unwrap(), q(4));
        assert_eq!(FanJson::from_space(&y), s);
        assert_eq!(ClassJson::from_class(&x, &c.to_class(&x).unwrap()), c);
    }

    #[test]
    fn schema_errors_are_positional() {
        let x = ToricSpace::projective(2).unwrap();
        let c = ClassJson { coeffs: [("0".into(), "1".into())].into_iter().collect() };
        assert!(matches!(c.to_class(&x), Err(Error::Schema { path, .. }) if path == "coeffs[\"0\"]"));
        let bad: FanJson = from_json_str(r#"{"rays": [[2,0],[0,1],[-1,-1]]}"#).unwrap();
        assert!(matches!(bad.to_space(), Err(Error::Schema { .. })));
    }
}
