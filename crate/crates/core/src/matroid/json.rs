use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polyhedral::json::schema_error;

use super::core::Matroid;

/// `{"n": 4, "bases": [[0,1], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidJson {
    pub fn to_matroid(&self) -> Result<Matroid> {
        for (i, b) in self.bases.iter().enumerate() {
            if let Some(j) = b.iter().position(|&e| e >= self.n) {
                return Err(schema_error(format!("bases[{i}][{j}]"), format!("element outside 0..{}", self.n)));
            }
        }
        Matroid::new(self.n, self.bases.clone()).map_err(|e| schema_error("bases", e.to_string()))
    }

    pub fn from_matroid(m: &Matroid) -> Self {
        Self { n: m.ground_size(), bases: m.bases() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::json::from_json_str;
    use crate::Error;

    #[test]
    fn parse_and_report() {
        let j: MatroidJson = from_json_str(r#"{"n": 3, "bases": [[0,1],[0,2],[1,2]]}"#).unwrap();
        assert_eq!(j.to_matroid().unwrap(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(MatroidJson::from_matroid(&j.to_matroid().unwrap()), j);
        let bad: MatroidJson = from_json_str(r#"{"n": 2, "bases": [[0,1],[0,5]]}"#).unwrap();
        assert!(matches!(bad.to_matroid(), Err(Error::Schema { path, .. }) if path == "bases[1][1]"));
    }
}
