//! Integer lattice routines: primitive vectors, saturated sublattices and
//! primitive generators of rank-one quotients.

use num_traits::{Signed, Zero};

use crate::linalg::{self, Vector};
use crate::rational::{primitive_integer_vector, q, Rational};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quo = old_r / r;
        (old_r, r) = (r, old_r - quo * r);
        (old_s, s) = (s, old_s - quo * s);
        (old_t, t) = (t, old_t - quo * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

pub fn is_primitive(v: &[i64]) -> bool {
    content(v) == 1
}

/// Divides by the content. Zero stays zero.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Primitive and with first nonzero entry positive.
pub fn normalized_direction(v: &[i64]) -> Vec<i64> {
    let p = primitive(v);
    match p.iter().find(|x| **x != 0) {
        Some(x) if *x < 0 => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// A ℤ-basis of `{x ∈ ℤ^n : M x = 0}` for the integer matrix `rows`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    // column operations on `a`, mirrored on the columns of `u`
    let col_op = |m: &mut Vec<Vec<i128>>, p: usize, j: usize, x: i128, y: i128, s: i128, t: i128| {
        for row in m.iter_mut() {
            let (cp, cj) = (row[p], row[j]);
            row[p] = x * cp + y * cj;
            row[j] = s * cp + t * cj;
        }
    };
    let mut piv = 0;
    for r in 0..a.len() {
        if piv >= n {
            break;
        }
        for j in piv + 1..n {
            if a[r][j] != 0 {
                let (ap, aj) = (a[r][piv], a[r][j]);
                let (g, x, y) = ext_gcd(ap, aj);
                let (s, t) = (-aj / g, ap / g);
                col_op(&mut a, piv, j, x, y, s, t);
                col_op(&mut u, piv, j, x, y, s, t);
            }
        }
        if a[r][piv] != 0 {
            piv += 1;
        }
    }
    (piv..n)
        .map(|c| {
            let v: Vec<i64> = (0..n).map(|i| u[i][c] as i64).collect();
            v
        })
        .collect()
}

/// Scales rational rows to integer rows (row-wise primitive).
pub fn integer_rows(rows: &[Vector]) -> Vec<Vec<i64>> {
    rows.iter().filter_map(|r| primitive_integer_vector(r)).collect()
}

/// ℤ-basis of `span(vectors) ∩ ℤ^n`.
pub fn saturated_basis(vectors: &[Vector], n: usize) -> Vec<Vec<i64>> {
    let basis = linalg::span_basis(vectors);
    if basis.is_empty() {
        return Vec::new();
    }
    let perp = linalg::nullspace(&basis, n);
    if perp.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    }
    integer_kernel(&integer_rows(&perp), n)
}

/// Integer matrix `Q` (rows) with kernel `span(sub)` that maps `ℤ^n` onto
/// `ℤ^{n-k}`; `sub` must span a saturated sublattice direction.
pub fn quotient_map(sub: &[Vector], n: usize) -> Vec<Vec<i64>> {
    let sat = saturated_basis(sub, n);
    if sat.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    }
    // annihilator of the saturated lattice in the dual lattice
    integer_kernel(&sat, n)
}

pub fn apply(map: &[Vec<i64>], v: &[Rational]) -> Vector {
    map.iter().map(|row| linalg::dot_int(row, v)).collect()
}

pub fn apply_int(map: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    map.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// The primitive generator of `L_big / L_small ≅ ℤ` pointing along `toward`.
///
/// `big` and `small` span the direction spaces (`small` ⊂ `big`, codimension
/// one); `toward ∈ span(big) ∖ span(small)` fixes the orientation.
pub fn primitive_generator_mod(big: &[Vector], small: &[Vector], toward: &[Rational]) -> Option<Vec<i64>> {
    let n = toward.len();
    let lattice = saturated_basis(big, n);
    let small_basis = linalg::span_basis(small);
    let normals = linalg::nullspace(&small_basis, n);
    let mut func = normals.into_iter().find(|a| !linalg::dot(a, toward).is_zero())?;
    if linalg::dot(&func, toward).is_negative() {
        func = func.iter().map(|x| -x).collect();
    }
    let values: Vec<Rational> = lattice.iter().map(|b| linalg::dot_int(b, &func)).collect();
    let ints = primitive_integer_vector(&values)?;
    // sign of the scaling used by primitive_integer_vector is positive, so
    // `ints` is proportional to `values` with a positive factor
    let mut g: i128 = 0;
    let mut coeffs: Vec<i128> = vec![0; ints.len()];
    for (i, &d) in ints.iter().enumerate() {
        if d == 0 {
            continue;
        }
        if g == 0 {
            g = d as i128;
            coeffs[i] = 1;
            if g < 0 {
                g = -g;
                coeffs[i] = -1;
            }
            continue;
        }
        let (ng, x, y) = ext_gcd(g, d as i128);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs[i] = y;
        g = ng;
    }
    let mut v = vec![0i128; n];
    for (c, b) in coeffs.iter().zip(&lattice) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * (*bi as i128);
        }
    }
    Some(v.into_iter().map(|x| x as i64).collect())
}

/// Index `[span ∩ ℤ^n : ℤ⟨gens⟩]` for linearly independent integer generators,
/// i.e. `|det|` of `gens` in a basis of their saturation.
pub fn lattice_index(gens: &[Vec<i64>], n: usize) -> Option<Rational> {
    let vecs: Vec<Vector> = gens.iter().map(|g| linalg::from_int(g)).collect();
    if linalg::rank(&vecs) != gens.len() {
        return None;
    }
    let sat = saturated_basis(&vecs, n);
    let sat_cols: Vec<Vector> = sat.iter().map(|b| linalg::from_int(b)).collect();
    let mut m = Vec::new();
    for g in &vecs {
        m.push(linalg::solve_combination(&sat_cols, g)?);
    }
    Some(linalg::det(&m).abs())
}

pub fn to_rational(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn kernel_basis() {
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        // saturation: index of the kernel lattice must be 1
        let idx = lattice_index(&k, 3).unwrap();
        assert_eq!(idx, q(1));
    }

    #[test]
    fn generator_mod_line() {
        // L_big = ℤ^2, L_small = ℤ(1,1); generator of the quotient toward (1,0)
        let v = primitive_generator_mod(&[qvec(&[1, 0]), qvec(&[0, 1])], &[qvec(&[1, 1])], &qvec(&[1, 0])).unwrap();
        // v must be ±(1,0) mod (1,1) with positive orientation
        let det = v[0] - v[1];
        assert_eq!(det, 1);
    }

    #[test]
    fn generator_of_ray() {
        let v = primitive_generator_mod(&[qvec(&[2, 4])], &[], &qvec(&[1, 2])).unwrap();
        assert_eq!(v, vec![1, 2]);
        let v = primitive_generator_mod(&[qvec(&[2, 4])], &[], &qvec(&[-1, -2])).unwrap();
        assert_eq!(v, vec![-1, -2]);
    }

    #[test]
    fn quotient_by_diagonal() {
        let qm = quotient_map(&[qvec(&[1, 1, 1])], 3);
        assert_eq!(qm.len(), 2);
        for row in &qm {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn index_of_sublattice() {
        assert_eq!(lattice_index(&[vec![2, 0], vec![0, 1]], 2).unwrap(), q(2));
        assert_eq!(lattice_index(&[vec![1, 1]], 2).unwrap(), q(1));
    }
}
