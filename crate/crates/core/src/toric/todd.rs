//! The Todd multiplicative sequence, generated from its characteristic
//! series `x/(1 − e^{−x})`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported Todd index.
pub const TODD_CAP: usize = 6;

/// A polynomial in `c_1, …, c_N`: exponent vector (index `i` for `c_{i+1}`)
/// to coefficient.
pub type ChernPolynomial = BTreeMap<Vec<u32>, Rational>;

fn weight(m: &[u32]) -> usize {
    m.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum()
}

fn add_into(a: &mut ChernPolynomial, m: Vec<u32>, c: Rational) {
    let e = a.entry(m.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        a.remove(&m);
    }
}

fn mul(a: &ChernPolynomial, b: &ChernPolynomial, cap: usize) -> ChernPolynomial {
    let mut out = ChernPolynomial::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            if weight(&m) <= cap {
                add_into(&mut out, m, ca.clone() * cb.clone());
            }
        }
    }
    out
}

fn scale(a: &ChernPolynomial, c: &Rational) -> ChernPolynomial {
    a.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).filter(|(_, x)| !x.is_zero()).collect()
}

fn plus(a: &ChernPolynomial, b: &ChernPolynomial) -> ChernPolynomial {
    let mut out = a.clone();
    for (m, c) in b {
        add_into(&mut out, m.clone(), c.clone());
    }
    out
}

/// Coefficients `b_0..=b_n` of `x/(1 − e^{−x})`, by inverting
/// `(1 − e^{−x})/x = Σ (−1)^k x^k/(k+1)!`.
pub fn characteristic_series(n: usize) -> Vec<Rational> {
    let mut fact = Rational::one();
    let mut denom = Vec::with_capacity(n + 1);
    for k in 0..=n {
        fact *= Rational::from_integer((k as i64 + 1).into());
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        denom.push(sign / fact.clone());
    }
    let mut b: Vec<Rational> = vec![Rational::one()];
    for k in 1..=n {
        let s: Rational = (1..=k).map(|i| denom[i].clone() * b[k - i].clone()).sum();
        b.push(-s);
    }
    b
}

/// The Todd polynomials `Todd_0..=Todd_n` in the Chern classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSequenceTable {
    n_max: usize,
    todd: Vec<ChernPolynomial>,
}

impl MSequenceTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `Todd_j` as a polynomial in `c_1..c_{n_max}`.
    pub fn todd(&self, j: usize) -> Option<&ChernPolynomial> {
        self.todd.get(j)
    }

    /// `Todd_j(c_1, …, c_j)` at given values of the Chern classes.
    pub fn evaluate(&self, j: usize, c: &[Rational]) -> Result<Rational> {
        let poly = self.todd(j).ok_or_else(|| Error::OutOfRange(format!("Todd_{j} beyond the table")))?;
        let mut total = Rational::zero();
        for (m, coeff) in poly {
            let mut term = coeff.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let ci = c.get(i).ok_or_else(|| Error::Dimension(format!("c_{} not given", i + 1)))?;
                    for _ in 0..e {
                        term *= ci.clone();
                    }
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Readable form such as `1/12*c1^2 + 1/12*c2`.
    pub fn describe(&self, j: usize) -> String {
        let Some(p) = self.todd(j) else { return String::new() };
        if p.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = p
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("c{}", i + 1) } else { format!("c{}^{e}", i + 1) })
                    .collect();
                let c = crate::rational::format_rational(c);
                if vars.is_empty() {
                    c
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        terms.join(" + ")
    }
}

/// Builds `Todd_0..=Todd_{n_max}`: take `log` of the characteristic series,
/// turn power sums into Chern classes with Newton's identities, and
/// exponentiate.
pub fn todd_polynomials(n_max: usize) -> Result<MSequenceTable> {
    if n_max > TODD_CAP {
        return Err(Error::OutOfRange(format!("Todd polynomials are capped at degree {TODD_CAP}")));
    }
    let n = n_max;
    let b = characteristic_series(n);
    // Q = exp(A): k a_k = k b_k − Σ_{i<k} i a_i b_{k−i}
    let mut a = vec![Rational::zero(); n + 1];
    for k in 1..=n {
        let kq = Rational::from_integer((k as i64).into());
        let s: Rational = (1..k).map(|i| Rational::from_integer((i as i64).into()) * a[i].clone() * b[k - i].clone()).sum();
        a[k] = (kq.clone() * b[k].clone() - s) / kq;
    }
    let var = |i: usize| -> ChernPolynomial {
        let mut m = vec![0u32; n];
        m[i - 1] = 1;
        [(m, Rational::one())].into_iter().collect()
    };
    let one: ChernPolynomial = [(vec![0u32; n], Rational::one())].into_iter().collect();
    // Newton: p_k = Σ_{i=1}^{k−1} (−1)^{i−1} c_i p_{k−i} + (−1)^{k−1} k c_k
    let mut p: Vec<ChernPolynomial> = vec![ChernPolynomial::new()];
    for k in 1..=n {
        let sign = |i: usize| if i % 2 == 1 { Rational::one() } else { -Rational::one() };
        let mut pk = scale(&var(k), &(sign(k) * Rational::from_integer((k as i64).into())));
        for i in 1..k {
            pk = plus(&pk, &scale(&mul(&var(i), &p[k - i], n), &sign(i)));
        }
        p.push(pk);
    }
    let log: ChernPolynomial = (1..=n).fold(ChernPolynomial::new(), |acc, k| plus(&acc, &scale(&p[k], &a[k])));
    // exp(log), truncated at weight n
    let mut total = one.clone();
    let mut power = one;
    let mut fact = Rational::one();
    for m in 1..=n {
        power = mul(&power, &log, n);
        fact *= Rational::from_integer((m as i64).into());
        total = plus(&total, &scale(&power, &(Rational::one() / fact.clone())));
    }
    let mut todd = vec![ChernPolynomial::new(); n + 1];
    for (m, c) in total {
        todd[weight(&m)].insert(m, c);
    }
    Ok(MSequenceTable { n_max, todd })
}

/// The full table up to the cap, built once.
pub fn todd_table() -> &'static MSequenceTable {
    static TABLE: OnceLock<MSequenceTable> = OnceLock::new();
    TABLE.get_or_init(|| todd_polynomials(TODD_CAP).expect("within the cap"))
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`, from
/// `Σ_{k=0}^{m} binom(m+1, k) B_k = 0`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut bs: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m).map(|k| Rational::from_integer(binom(m + 1, k).into()) * bs[k].clone()).sum();
        bs.push(-s / Rational::from_integer(((m + 1) as i64).into()));
    }
    bs
}

fn binom(n: usize, k: usize) -> i64 {
    crate::util::binomial(n as i64, k as i64)
}

/// One-variable coefficients of `x/(1 − e^{−x})` through Bernoulli numbers,
/// `B^+_k / k!`: an oracle independent of [`characteristic_series`].
pub fn one_variable_expansion(n: usize) -> Vec<Rational> {
    let mut fact = Rational::one();
    bernoulli(n)
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            if k > 0 {
                fact *= Rational::from_integer((k as i64).into());
            }
            let b = if k == 1 { -b } else { b };
            b / fact.clone()
        })
        .collect()
}

/// Elementary symmetric functions `e_1..=e_k` of `xs`.
pub fn elementary_symmetric(xs: &[Rational], k: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); k + 1];
    e[0] = Rational::one();
    for x in xs {
        for j in (1..=k).rev() {
            let prev = e[j - 1].clone();
            e[j] += prev * x.clone();
        }
    }
    e[1..].to_vec()
}

/// Degree-`j` part of `∏ Q(x_i)` computed directly from the one-variable
/// series.
pub fn product_expansion(xs: &[Rational], j: usize) -> Rational {
    let q = one_variable_expansion(j);
    // poly in t: coefficient list
    let mut acc = vec![Rational::zero(); j + 1];
    acc[0] = Rational::one();
    for x in xs {
        let mut next = vec![Rational::zero(); j + 1];
        let mut xp = Rational::one();
        let powers: Vec<Rational> = (0..=j)
            .map(|k| {
                if k > 0 {
                    xp *= x.clone();
                }
                q[k].clone() * xp.clone()
            })
            .collect();
        for (a, ca) in acc.iter().enumerate() {
            for (b, cb) in powers.iter().enumerate().take(j + 1 - a) {
                next[a + b] += ca.clone() * cb.clone();
            }
        }
        acc = next;
    }
    acc[j].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn series_coefficients() {
        let expected = vec![q(1), qf(1, 2), qf(1, 12), q(0), qf(-1, 720)];
        assert_eq!(characteristic_series(4), expected);
        assert_eq!(one_variable_expansion(4), expected);
    }

    #[test]
    fn low_todd_polynomials() {
        let t = todd_polynomials(4).unwrap();
        assert_eq!(t.describe(1), "1/2*c1");
        assert_eq!(t.evaluate(2, &[q(3), q(3)]).unwrap(), q(1));
        assert_eq!(t.evaluate(2, &[q(1), q(0)]).unwrap(), qf(1, 12));
        assert_eq!(t.evaluate(2, &[q(0), q(1)]).unwrap(), qf(1, 12));
        assert_eq!(t.evaluate(3, &[q(1), q(1), q(0)]).unwrap(), qf(1, 24));
        assert_eq!(t.todd(3).unwrap().len(), 1);
        assert!(todd_polynomials(7).is_err());
    }

    #[test]
    fn specialization_matches_the_product() {
        let xs = [qf(1, 3), qf(-2, 5), q(2), qf(7, 4), qf(-1, 2), q(1)];
        let table = todd_table();
        for j in 0..=TODD_CAP {
            let e = elementary_symmetric(&xs, TODD_CAP);
            assert_eq!(table.evaluate(j, &e).unwrap(), product_expansion(&xs, j), "Todd_{j}");
        }
    }
}
