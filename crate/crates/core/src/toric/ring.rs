use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::fan::SmoothCompleteFan2D;
use super::todd::todd_table;

/// The smooth complete toric instances with a presented cohomology ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricSpace {
    /// `TP^n`, with `H^•` spanned by powers of the hyperplane class.
    Projective(usize),
    /// A smooth toric surface; `H²` is spanned (redundantly) by the
    /// boundary divisors.
    Surface(SmoothCompleteFan2D),
}

/// A class given by its graded pieces. Degree-1 pieces of a surface are
/// coefficients over the rays; the top piece is a multiple of the point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyClass {
    #[serde(with = "crate::rational::serde_vecvec")]
    pub components: Vec<Vec<Rational>>,
}

impl CohomologyClass {
    pub fn component(&self, k: usize) -> &[Rational] {
        &self.components[k]
    }

    /// The grade of a nonzero homogeneous class.
    pub fn grade(&self) -> Option<usize> {
        let nonzero: Vec<usize> =
            (0..self.components.len()).filter(|&k| self.components[k].iter().any(|x| !x.is_zero())).collect();
        match nonzero.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self { components }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { components: self.components.iter().map(|v| v.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    /// Only the piece of grade `k`.
    pub fn part(&self, k: usize) -> Self {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(j, v)| if j == k { v.clone() } else { vec![Rational::zero(); v.len()] })
            .collect();
        Self { components }
    }
}

/// Result of the curve reduction of `RR(X; D' − D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrDifference {
    #[serde(with = "crate::rational::serde_rational")]
    pub value: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub rr_d_prime: Rational,
    /// `D'·D`.
    #[serde(with = "crate::rational::serde_rational")]
    pub meeting_degree: Rational,
    /// Genus of a smooth curve in the class of `D`.
    #[serde(with = "crate::rational::serde_rational")]
    pub curve_genus: Rational,
    /// `RR(D; D'|_D) = D'·D + 1 − g`.
    #[serde(with = "crate::rational::serde_rational")]
    pub curve_rr: Rational,
    pub agrees: bool,
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

impl ToricSpace {
    pub fn projective(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("TP^0 has no divisors".into()));
        }
        Ok(Self::Projective(n))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Projective(n) => *n,
            Self::Surface(_) => 2,
        }
    }

    fn basis_len(&self, k: usize) -> usize {
        match self {
            Self::Surface(f) if k == 1 => f.len(),
            _ => 1,
        }
    }

    /// `χ(X) = 1`: the tropical toric variety is homeomorphic to its polytope.
    pub fn chi(&self) -> i64 {
        1
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass { components: (0..=self.dim()).map(|k| vec![Rational::zero(); self.basis_len(k)]).collect() }
    }

    pub fn one(&self) -> CohomologyClass {
        let mut c = self.zero();
        c.components[0][0] = Rational::one();
        c
    }

    /// The point class.
    pub fn point(&self) -> CohomologyClass {
        let mut c = self.zero();
        c.components[self.dim()][0] = Rational::one();
        c
    }

    /// A degree-1 class from coefficients (one for `TP^n`, one per ray for
    /// a surface).
    pub fn divisor(&self, coeffs: &[Rational]) -> Result<CohomologyClass> {
        if coeffs.len() != self.basis_len(1) {
            return Err(Error::Dimension(format!("{} divisor coefficients expected", self.basis_len(1))));
        }
        let mut c = self.zero();
        c.components[1] = coeffs.to_vec();
        Ok(c)
    }

    pub fn divisor_int(&self, coeffs: &[i64]) -> Result<CohomologyClass> {
        self.divisor(&coeffs.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    /// The torus-invariant prime divisors `D_ρ`.
    pub fn boundary_divisors(&self) -> Vec<CohomologyClass> {
        let m = match self {
            Self::Projective(n) => n + 1,
            Self::Surface(f) => f.len(),
        };
        (0..m)
            .map(|i| {
                let mut c = self.zero();
                let slot = if matches!(self, Self::Projective(_)) { 0 } else { i };
                c.components[1][slot] = Rational::one();
                c
            })
            .collect()
    }

    fn check(&self, a: &CohomologyClass) -> Result<()> {
        let ok = a.components.len() == self.dim() + 1
            && a.components.iter().enumerate().all(|(k, v)| v.len() == self.basis_len(k));
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch("class does not belong to this ring".into()))
        }
    }

    pub fn mul(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(a)?;
        self.check(b)?;
        let n = self.dim();
        let mut out = self.zero();
        for i in 0..=n {
            for j in 0..=(n - i) {
                let (x, y) = (&a.components[i], &b.components[j]);
                if x.iter().all(|v| v.is_zero()) || y.iter().all(|v| v.is_zero()) {
                    continue;
                }
                match self {
                    Self::Projective(_) => out.components[i + j][0] += &x[0] * &y[0],
                    Self::Surface(f) => {
                        if i == 1 && j == 1 {
                            let mut s = Rational::zero();
                            for (p, xp) in x.iter().enumerate() {
                                for (r, yr) in y.iter().enumerate() {
                                    s += xp * yr * int(f.intersection(p, r));
                                }
                            }
                            out.components[2][0] += s;
                        } else if i == 0 {
                            out.components[j].iter_mut().zip(y).for_each(|(o, v)| *o += &x[0] * v);
                        } else {
                            out.components[i].iter_mut().zip(x).for_each(|(o, v)| *o += &y[0] * v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn product(&self, classes: &[CohomologyClass]) -> Result<CohomologyClass> {
        classes.iter().try_fold(self.one(), |acc, c| self.mul(&acc, c))
    }

    pub fn pow(&self, a: &CohomologyClass, k: usize) -> Result<CohomologyClass> {
        (0..k).try_fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Degree of the top piece.
    pub fn integrate(&self, a: &CohomologyClass) -> Result<Rational> {
        self.check(a)?;
        Ok(a.components[self.dim()][0].clone())
    }

    /// `∫ a_1 ⋯ a_k` for homogeneous classes of total grade `dim`.
    pub fn intersection_number(&self, classes: &[CohomologyClass]) -> Result<Rational> {
        let mut total = 0;
        for (i, c) in classes.iter().enumerate() {
            self.check(c)?;
            total += c.grade().ok_or_else(|| Error::Dimension(format!("class {i} is zero or not homogeneous")))?;
        }
        if total != self.dim() {
            return Err(Error::Dimension(format!("total degree {total} but dimension {}", self.dim())));
        }
        self.integrate(&self.product(classes)?)
    }

    /// `∏_ρ (1 + D_ρ)`.
    pub fn chern_total(&self) -> Result<CohomologyClass> {
        let factors: Vec<CohomologyClass> = self.boundary_divisors().iter().map(|d| self.one().plus(d)).collect();
        self.product(&factors)
    }

    /// `K = −Σ D_ρ`.
    pub fn canonical(&self) -> CohomologyClass {
        self.boundary_divisors().iter().fold(self.zero(), |acc, d| acc.minus(d))
    }

    /// `∫ c_n`, the number of maximal cones.
    pub fn euler_number(&self) -> Result<Rational> {
        self.integrate(&self.chern_total()?)
    }

    /// `Σ_j Todd_j(c_1, …, c_j)`.
    pub fn todd_class(&self) -> Result<CohomologyClass> {
        let n = self.dim();
        let table = todd_table();
        if n > table.n_max() {
            return Err(Error::OutOfRange(format!("dimension {n} exceeds the Todd table")));
        }
        let c = self.chern_total()?;
        let chern: Vec<CohomologyClass> = (1..=n).map(|k| c.part(k)).collect();
        let mut td = self.zero();
        for j in 0..=n {
            for (m, coeff) in table.todd(j).expect("within the table") {
                let mut term = self.one().scaled(coeff);
                for (i, &e) in m.iter().enumerate().take(n) {
                    term = self.mul(&term, &self.pow(&chern[i], e as usize)?)?;
                }
                td = td.plus(&term);
            }
        }
        Ok(td)
    }

    /// `Σ_i D^i / i!`.
    pub fn exp(&self, d: &CohomologyClass) -> Result<CohomologyClass> {
        let mut total = self.one();
        let mut term = self.one();
        for i in 1..=self.dim() {
            term = self.mul(&term, d)?.scaled(&(Rational::one() / int(i as i64)));
            total = total.plus(&term);
        }
        Ok(total)
    }

    /// `RR(X; D) = ∫ ch(D)·td(X)`.
    pub fn rr_number(&self, d: &CohomologyClass) -> Result<Rational> {
        self.integrate(&self.mul(&self.exp(d)?, &self.todd_class()?)?)
    }

    /// `∫ ∏_j (1 − e^{−D_j})·td(X)`.
    pub fn virtual_t_genus(&self, ds: &[CohomologyClass]) -> Result<Rational> {
        let mut acc = self.todd_class()?;
        for d in ds {
            acc = self.mul(&acc, &self.one().minus(&self.exp(&d.negated())?))?;
        }
        self.integrate(&acc)
    }

    /// `deg((D − K)·D)/2 + χ(X)` on a surface.
    pub fn adjunction_rr_surface(&self, d: &CohomologyClass) -> Result<Rational> {
        if self.dim() != 2 {
            return Err(Error::Dimension("a surface instance".into()));
        }
        let dk = d.minus(&self.canonical());
        Ok(self.integrate(&self.mul(&dk, d)?)? / int(2) + int(self.chi()))
    }

    /// `RR(X; D' − D)` and, on surfaces, `RR(X; D') − RR(D; D'|_D)` with the
    /// genus of `D` from adjunction.
    pub fn rr_difference(&self, d_prime: &CohomologyClass, d: &CohomologyClass) -> Result<RrDifference> {
        if self.dim() != 2 {
            return Err(Error::Dimension("the curve reduction needs a surface".into()));
        }
        let value = self.rr_number(&d_prime.minus(d))?;
        let rr_d_prime = self.rr_number(d_prime)?;
        let meeting_degree = self.integrate(&self.mul(d_prime, d)?)?;
        let dd = self.integrate(&self.mul(d, &d.plus(&self.canonical()))?)?;
        let curve_genus = Rational::one() + dd / int(2);
        let curve_rr = &meeting_degree + Rational::one() - &curve_genus;
        let agrees = value == &rr_d_prime - &curve_rr;
        Ok(RrDifference { value, rr_d_prime, meeting_degree, curve_genus, curve_rr, agrees })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::LatticePolytope;
    use crate::rational::q;

    fn p2() -> ToricSpace {
        ToricSpace::projective(2).unwrap()
    }

    fn surface(rays: &[[i64; 2]]) -> ToricSpace {
        ToricSpace::Surface(SmoothCompleteFan2D::new(rays.iter().map(|r| r.to_vec()).collect()).unwrap())
    }

    #[test]
    fn chern_classes() {
        let c = p2().chern_total().unwrap();
        assert_eq!(c.components, vec![vec![q(1)], vec![q(3)], vec![q(3)]]);
        let p1p1 = surface(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        assert_eq!(p1p1.euler_number().unwrap(), q(4));
        let f1 = surface(&[[1, 0], [0, 1], [-1, 1], [0, -1]]);
        assert_eq!(f1.euler_number().unwrap(), q(4));
        assert_eq!(ToricSpace::projective(3).unwrap().euler_number().unwrap(), q(4));
    }

    #[test]
    fn intersection_numbers() {
        let h = p2().divisor_int(&[1]).unwrap();
        assert_eq!(p2().intersection_number(&[h.clone(), h.clone()]).unwrap(), q(1));
        assert!(p2().intersection_number(&[h]).is_err());
        let p1p1 = surface(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        let d = p1p1.boundary_divisors();
        assert_eq!(p1p1.intersection_number(&[d[0].clone(), d[1].clone()]).unwrap(), q(1));
        assert_eq!(p1p1.intersection_number(&[d[0].clone(), d[0].clone()]).unwrap(), q(0));
    }

    #[test]
    fn riemann_roch_on_the_plane() {
        let x = p2();
        assert_eq!(x.rr_number(&x.zero()).unwrap(), q(1));
        for d in 1..=6 {
            let expected = LatticePolytope::simplex(d, 2).lattice_points().len() as i64;
            assert_eq!(x.rr_number(&x.divisor_int(&[d]).unwrap()).unwrap(), q(expected));
        }
        assert_eq!(x.rr_number(&x.divisor_int(&[-3]).unwrap()).unwrap(), q(1));
        assert_eq!(x.adjunction_rr_surface(&x.divisor_int(&[2]).unwrap()).unwrap(), q(6));
        assert_eq!(x.adjunction_rr_surface(&x.divisor_int(&[3]).unwrap()).unwrap(), q(10));
    }

    #[test]
    fn t_genus_and_differences() {
        let x = p2();
        assert_eq!(x.virtual_t_genus(&[]).unwrap(), x.rr_number(&x.zero()).unwrap());
        for d in 1..=4 {
            let h = x.divisor_int(&[d]).unwrap();
            let sum = x.virtual_t_genus(std::slice::from_ref(&h)).unwrap() + x.virtual_t_genus(&[h.clone(), h.clone()]).unwrap();
            assert_eq!(sum, x.rr_number(&h).unwrap() - q(1));
        }
        let r = x.rr_difference(&x.divisor_int(&[2]).unwrap(), &x.divisor_int(&[1]).unwrap()).unwrap();
        assert_eq!((r.value.clone(), r.rr_d_prime.clone(), r.curve_rr.clone()), (q(3), q(6), q(3)));
        assert!(r.agrees);
    }

    #[test]
    fn polygon_classes_satisfy_pick() {
        let p = LatticePolytope::new(vec![vec![0, 0], vec![3, 0], vec![1, 2], vec![0, 2]]).unwrap();
        let (fan, b) = SmoothCompleteFan2D::from_polygon(&p).unwrap();
        let x = ToricSpace::Surface(fan);
        let d = x.divisor_int(&b).unwrap();
        let count = q(p.lattice_points().len() as i64);
        assert_eq!(x.adjunction_rr_surface(&d).unwrap(), count);
        assert_eq!(x.rr_number(&d).unwrap(), count);
    }
}
