use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedral::json::schema_error;
use crate::polyhedral::LatticePolytope;
use crate::rational::{serde_rational, Rational};

/// `max_i (c_i + ⟨a_i, x⟩)` over distinct exponents `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    n: usize,
    terms: Vec<(Vec<i64>, Rational)>,
}

impl TropicalPolynomial {
    pub fn new(n: usize, terms: Vec<(Vec<i64>, Rational)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Degenerate("a tropical polynomial needs a term".into()));
        }
        let mut seen = BTreeSet::new();
        for (a, _) in &terms {
            if a.len() != n {
                return Err(Error::Dimension(format!("exponent {a:?} in {n} variables")));
            }
            if !seen.insert(a.clone()) {
                return Err(Error::Degenerate(format!("repeated exponent {a:?}")));
            }
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<i64>, Rational)] {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.iter().map(|(_, c)| c.clone()).collect()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(a, c)| crate::linalg::dot_int(a, x) + c)
            .max()
            .expect("nonempty")
    }

    pub fn newton_polytope(&self) -> LatticePolytope {
        LatticePolytope::new(self.exponents()).expect("nonempty exponent set")
    }

    /// Terms whose exponents satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(&[i64]) -> bool) -> Option<TropicalPolynomial> {
        let terms: Vec<_> = self.terms.iter().filter(|(a, _)| keep(a)).cloned().collect();
        (!terms.is_empty()).then_some(TropicalPolynomial { n: self.n, terms })
    }

    /// `max(c, x_i + …)` written as text, for reports.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let mono: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("{e}x{}", i + 1) })
                    .collect();
                match (mono.is_empty(), c == &Rational::from_integer(0.into())) {
                    (true, _) => c.to_string(),
                    (false, true) => mono.join("+"),
                    (false, false) => format!("{c}+{}", mono.join("+")),
                }
            })
            .collect();
        format!("max({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<TropicalPolynomial> {
        for (i, t) in self.terms.iter().enumerate() {
            if t.exp.len() != self.n {
                return Err(schema_error(format!("terms[{i}].exp"), format!("expected {} entries", self.n)));
            }
        }
        TropicalPolynomial::new(self.n, self.terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect())
    }

    pub fn from_polynomial(f: &TropicalPolynomial) -> Self {
        Self {
            n: f.n,
            terms: f.terms.iter().map(|(a, c)| TermJson { exp: a.clone(), coeff: c.clone() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qvec};

    fn line() -> TropicalPolynomial {
        TropicalPolynomial::new(2, vec![(vec![0, 0], q(0)), (vec![1, 0], q(0)), (vec![0, 1], q(0))]).unwrap()
    }

    #[test]
    fn newton_polytopes() {
        assert_eq!(line().newton_polytope(), crate::polyhedral::LatticePolytope::simplex(1, 2));
        let mono = TropicalPolynomial::new(2, vec![(vec![3, 1], q(2))]).unwrap();
        assert_eq!(mono.newton_polytope().vertices().len(), 1);
        let mut terms = Vec::new();
        for i in 0..=2i64 {
            for j in 0..=(2 - i) {
                terms.push((vec![i, j], q(-(i * i + j * j))));
            }
        }
        let quad = TropicalPolynomial::new(2, terms).unwrap();
        assert_eq!(quad.newton_polytope(), crate::polyhedral::LatticePolytope::simplex(2, 2));
    }

    #[test]
    fn evaluation_and_json() {
        assert_eq!(line().eval(&qvec(&[2, -1])), q(2));
        let j = PolynomialJson::from_polynomial(&line());
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains(r#""coeff":"0""#));
        let back: PolynomialJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_polynomial().unwrap(), line());
        assert!(TropicalPolynomial::new(1, vec![(vec![1], q(0)), (vec![1], q(2))]).is_err());
    }
}
