//! Small dense linear algebra over exact rationals.
//!
//! Vectors are `Vec<Rational>`; a list of vectors is read as the rows of a
//! matrix. Everything is Gaussian elimination, which is plenty for the
//! ambient dimensions used here (at most a dozen coordinates).

use num_traits::{One, ToPrimitive, Zero};

use crate::rational::{q, Rational};

pub type Vector = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[i64], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| q(*x) * y).sum()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn from_int(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

pub fn zero(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    if let Some(r) = rref_integral(rows) {
        return r;
    }
    let mut m: Vec<Vector> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free elimination for integral input; `None` if an entry is not
/// a small integer or an intermediate value overflows.
fn rref_integral(rows: &[Vector]) -> Option<(Vec<Vector>, Vec<usize>)> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { x.to_integer().to_i64().map(i128::from) } else { None }).collect())
        .collect::<Option<_>>()?;
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, f) = (m[r][c], m[i][c]);
                let g = gcd128(a, f);
                let (a, f) = (a / g, f / g);
                let mut row = Vec::with_capacity(ncols);
                for j in 0..ncols {
                    row.push(m[i][j].checked_mul(a)?.checked_sub(m[r][j].checked_mul(f)?)?);
                }
                let g = row.iter().fold(0, |g, &x| gcd128(g, x));
                if g > 1 {
                    row.iter_mut().for_each(|x| *x /= g);
                }
                m[i] = row;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let out = m
        .iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let p = Rational::from_integer(row[c].into());
            row.iter().map(|&x| Rational::from_integer(x.into()) / &p).collect()
        })
        .collect();
    Some((out, pivots))
}

pub fn rank(rows: &[Vector]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : row · x = 0 for every row}` in dimension `n`.
pub fn nullspace(rows: &[Vector], n: usize) -> Vec<Vector> {
    let rows: Vec<Vector> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    if rows.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let (m, pivots) = rref(&rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = zero(n);
            x[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero(n);
    v[i] = Rational::one();
    v
}

/// A basis of the span of `vectors` (rows of the rref).
pub fn span_basis(vectors: &[Vector]) -> Vec<Vector> {
    rref(vectors).0
}

pub fn in_span(basis: &[Vector], v: &[Rational]) -> bool {
    if is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let r = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == r
}

/// Is `span(a) ⊆ span(b)`?
pub fn span_contains(b: &[Vector], a: &[Vector]) -> bool {
    a.iter().all(|v| in_span(b, v))
}

/// Basis of `span(a) ∩ span(b)` in dimension `n`.
pub fn span_intersection(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    // x ∈ both ⇔ x ⊥ (a^⊥ + b^⊥)
    let mut perp = nullspace(a, n);
    if a.is_empty() || rank(a) == 0 {
        return Vec::new();
    }
    if b.is_empty() || rank(b) == 0 {
        return Vec::new();
    }
    perp.extend(nullspace(b, n));
    nullspace(&perp, n)
}

/// Solves `Σ c_i · cols[i] = target`; returns one solution if consistent.
pub fn solve_combination(cols: &[Vector], target: &[Rational]) -> Option<Vector> {
    let n = target.len();
    let k = cols.len();
    // augmented system rows: for each coordinate j: Σ_i cols[i][j] c_i = target[j]
    let rows: Vec<Vector> = (0..n)
        .map(|j| {
            let mut r: Vector = cols.iter().map(|c| c[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = zero(k);
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Determinant of a square matrix.
pub fn det(rows: &[Vector]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn nullspace_of_plane() {
        let ns = nullspace(&[qvec(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(v, &qvec(&[1, 1, 1])).is_zero());
        }
    }

    #[test]
    fn intersections() {
        let a = vec![qvec(&[1, 0, 0]), qvec(&[0, 1, 0])];
        let b = vec![qvec(&[0, 1, 0]), qvec(&[0, 0, 1])];
        let i = span_intersection(&a, &b, 3);
        assert_eq!(i.len(), 1);
        assert!(in_span(&i, &qvec(&[0, 5, 0])));
    }

    #[test]
    fn solve_and_det() {
        let cols = vec![qvec(&[1, 0]), qvec(&[1, 1])];
        let x = solve_combination(&cols, &qvec(&[3, 2])).unwrap();
        assert_eq!(x, qvec(&[1, 2]));
        assert_eq!(det(&[qvec(&[2, 0]), qvec(&[0, 1])]), q(2));
        assert!(solve_combination(&[qvec(&[1, 1])], &qvec(&[1, 0])).is_none());
    }
}
