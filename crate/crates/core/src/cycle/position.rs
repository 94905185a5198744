use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::{self, Vector};
use crate::polyhedral::{lineality_space, PolyhedralComplex, Polyhedron};
use crate::rational::Rational;
use crate::util::combinations;

use super::cartier::CartierFunction;
use super::cycle::TropicalCycle;
use super::intersect::divisor_intersect;
use super::support::{support_equal, support_subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModerateOutcome {
    pub holds: bool,
    /// Index of the first pair where the lineality test fails.
    pub witness: Option<usize>,
}

fn as_vectors(v: &[Vec<i64>]) -> Vec<Vector> {
    v.iter().map(|x| lattice::to_rational(x)).collect()
}

/// For each `(Y cone, X cone)` pair, the lineality space of `Y` must be a
/// proper subspace of that of `X`.
pub fn moderate_position(pairs: &[(PolyhedralComplex, PolyhedralComplex)]) -> Result<ModerateOutcome> {
    for (y, x) in pairs {
        let xs: Vec<Polyhedron> = x.maximal_cells().into_iter().map(|i| x.cell(i).clone()).collect();
        let ys: Vec<Polyhedron> = y.maximal_cells().into_iter().map(|i| y.cell(i).clone()).collect();
        if !support_subset(&ys, &xs) {
            return Err(Error::DomainMismatch("Y cone is not contained in the X cone".into()));
        }
    }
    for (k, (y, x)) in pairs.iter().enumerate() {
        let ly = as_vectors(&lineality_space(y));
        let lx = as_vectors(&lineality_space(x));
        let proper = linalg::span_contains(&lx, &ly) && linalg::rank(&ly) < linalg::rank(&lx);
        if !proper {
            return Ok(ModerateOutcome { holds: false, witness: Some(k) });
        }
    }
    Ok(ModerateOutcome { holds: true, witness: None })
}

/// Local-cone pairs of `y ⊂ x` at the given points.
pub fn local_pairs(
    y: &PolyhedralComplex,
    x: &PolyhedralComplex,
    points: &[Vector],
) -> Result<Vec<(PolyhedralComplex, PolyhedralComplex)>> {
    points.iter().map(|p| Ok((y.local_cone(p)?, x.local_cone(p)?))).collect()
}

/// Outcome of matching a local pair against `L_M × L_{U_{r,r+1}} ⊂ L_M × R^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniformity {
    Uniform { r: usize },
    NotUniform(String),
    Unsupported(String),
}

impl Uniformity {
    pub fn is_uniform(&self) -> bool {
        matches!(self, Uniformity::Uniform { .. })
    }
}

/// Decides relative uniformity for linear ambient cones (any `r`) and for
/// `r = 1` over an arbitrary ambient fan; other cases are `Unsupported`.
pub fn relatively_uniform(y: &TropicalCycle, x: &TropicalCycle) -> Result<Uniformity> {
    let n = x.ambient_dim();
    let xs = x.maximal_polyhedra();
    let ys = y.maximal_polyhedra();
    if y.is_empty() || x.is_empty() {
        return Ok(Uniformity::NotUniform("empty local cone".into()));
    }
    if !support_subset(&ys, &xs) {
        return Err(Error::DomainMismatch("Y cone is not contained in the X cone".into()));
    }
    if y.dim() + 1 != x.dim() {
        return Ok(Uniformity::NotUniform("Y does not have codimension one".into()));
    }
    let lx = lineality_space(x.complex());
    if lx.len() == x.dim() {
        if x.weights().values().any(|&w| w != 1) {
            return Ok(Uniformity::NotUniform("ambient weight is not one".into()));
        }
        return linear_case(y, &lx, n);
    }
    match section_case(y, x, &lx, n)? {
        Some(u) => Ok(u),
        None => Ok(Uniformity::Unsupported("non-linear ambient cone beyond r = 1".into())),
    }
}

fn linear_case(y: &TropicalCycle, lx: &[Vec<i64>], n: usize) -> Result<Uniformity> {
    if y.weights().values().any(|&w| w != 1) {
        return Ok(Uniformity::NotUniform("a weight differs from one".into()));
    }
    let ly = lineality_space(y.complex());
    let ly_q = as_vectors(&ly);
    let r = lx.len() - ly.len();
    let ys = y.maximal_polyhedra();
    if r == 1 {
        let lin = Polyhedron::cone(n, vec![], ly.clone())?;
        return Ok(if support_equal(&ys, &[lin]) {
            Uniformity::Uniform { r: 1 }
        } else {
            Uniformity::NotUniform("codimension-one piece is not a linear space".into())
        });
    }
    // rays of Y modulo its lineality, with one integer lift each
    let qmap = lattice::quotient_map(&ly_q, n);
    let mut images: Vec<Vec<i64>> = Vec::new();
    let mut lifts: Vec<Vec<i64>> = Vec::new();
    for p in &ys {
        for ray in p.rays() {
            let img = lattice::apply_int(&qmap, ray);
            if img.iter().all(|&c| c == 0) {
                continue;
            }
            let img = lattice::primitive(&img);
            if !images.contains(&img) {
                images.push(img);
                lifts.push(ray.clone());
            }
        }
    }
    let lx_img: Vec<Vector> = lx.iter().map(|v| lattice::to_rational(&lattice::apply_int(&qmap, v))).collect();
    let basis = lattice::saturated_basis(&lx_img, qmap.len());
    let basis_q = as_vectors(&basis);
    let coords = |v: &Vec<i64>| linalg::solve_combination(&basis_q, &lattice::to_rational(v));
    for subset in combinations(images.len(), r + 1) {
        let chosen: Vec<Vector> = match subset.iter().map(|&i| coords(&images[i])).collect::<Option<Vec<_>>>() {
            Some(c) => c,
            None => continue,
        };
        let total = chosen.iter().fold(linalg::zero(r), |acc, v| linalg::add(&acc, v));
        if !linalg::is_zero(&total) {
            continue;
        }
        let unimodular = combinations(r + 1, r).into_iter().all(|s| {
            let m: Vec<Vector> = s.iter().map(|&i| chosen[i].clone()).collect();
            linalg::det(&m).abs() == Rational::from_integer(1.into())
        });
        if !unimodular {
            continue;
        }
        let model: Vec<Polyhedron> = combinations(r + 1, r - 1)
            .into_iter()
            .map(|s| Polyhedron::cone(n, s.iter().map(|&i| lifts[subset[i]].clone()).collect(), ly.clone()))
            .collect::<Result<_>>()?;
        if support_equal(&ys, &model) {
            return Ok(Uniformity::Uniform { r });
        }
    }
    Ok(Uniformity::NotUniform(format!("no lattice isomorphism to the U({r},{}) fan", r + 1)))
}

/// `X = Y + R·w` with `L_X = L_Y ⊕ Z·w`: the pair is `L_M × pt ⊂ L_M × R`.
fn section_case(y: &TropicalCycle, x: &TropicalCycle, lx: &[Vec<i64>], n: usize) -> Result<Option<Uniformity>> {
    if x.weights().values().chain(y.weights().values()).any(|&w| w != 1) {
        return Ok(None);
    }
    let ys = y.maximal_polyhedra();
    let span_y: Vec<Vector> = linalg::span_basis(&ys.iter().flat_map(|p| p.direction_space()).collect::<Vec<_>>());
    let lx_q = as_vectors(lx);
    let Some(toward) = lx_q.iter().find(|v| !linalg::in_span(&span_y, v)).cloned() else {
        return Ok(None);
    };
    let common = linalg::span_intersection(&lx_q, &span_y, n);
    let Some(w) = lattice::primitive_generator_mod(&lx_q, &common, &toward) else {
        return Ok(None);
    };
    let mut gens = lattice::saturated_basis(&span_y, n);
    gens.push(w.clone());
    if lattice::lattice_index(&gens, n) != Some(Rational::from_integer(1.into())) {
        return Ok(Some(Uniformity::NotUniform("lattice does not split along the section".into())));
    }
    let xs = x.maximal_polyhedra();
    let swept: Vec<Polyhedron> = ys
        .iter()
        .map(|p| {
            let mut lin = p.lineality().to_vec();
            lin.push(w.clone());
            Polyhedron::new(p.vertices().to_vec(), p.rays().to_vec(), lin)
        })
        .collect::<Result<_>>()?;
    Ok(Some(if support_equal(&xs, &swept) {
        Uniformity::Uniform { r: 1 }
    } else {
        Uniformity::NotUniform("ambient is not Y times a line".into())
    }))
}

/// `|C²|` computed by the tower, against `C_sing ∩ S_reg` computed from
/// valences.
#[derive(Clone, Debug)]
pub struct SelfIntersection {
    pub squared: Vec<(Vector, i64)>,
    pub singular_regular: Vec<Vector>,
    pub agree: bool,
}

/// `curve` must be `phi · X` for a surface `X` given by `surface`;
/// `is_regular` decides membership in the smooth locus of the surface.
pub fn self_intersection_support(
    phi: &CartierFunction,
    curve: &TropicalCycle,
    surface: &TropicalCycle,
    is_regular: impl Fn(&[Rational]) -> bool,
) -> Result<SelfIntersection> {
    if curve.dim() != 1 || surface.dim() != 2 {
        return Err(Error::Dimension("expected a curve inside a surface".into()));
    }
    let mut points: Vec<Vector> = curve.vertices();
    points.extend(curve.weighted_cells().map(|(p, _)| p.relint_point()));
    let pairs = local_pairs(curve.complex(), surface.complex(), &points)?;
    let m = moderate_position(&pairs)?;
    if !m.holds {
        return Err(Error::Hypothesis("curve is not in moderate position".into()));
    }
    let squared = divisor_intersect(phi, curve)?.points();
    let mut singular_regular: Vec<Vector> =
        curve.vertices().into_iter().filter(|v| curve.valence(v) >= 3 && is_regular(v)).collect();
    singular_regular.sort();
    let mut support: Vec<Vector> = squared.iter().map(|(p, _)| p.clone()).filter(|p| is_regular(p)).collect();
    support.sort();
    let agree = support == singular_regular;
    Ok(SelfIntersection { squared, singular_regular, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::cartier::max_of_coordinates;
    use crate::cycle::cycle::ray_fan;
    use crate::rational::qvec;

    fn line() -> TropicalCycle {
        ray_fan(2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![-1, -1], 1)]).unwrap()
    }

    fn line_through(n: usize, dir: Vec<i64>) -> PolyhedralComplex {
        PolyhedralComplex::from_maximal_cells(n, vec![Polyhedron::cone(n, vec![], vec![dir]).unwrap()]).unwrap()
    }

    #[test]
    fn moderate_examples() {
        let curve_edge = line_through(2, vec![1, 0]);
        let valence_two = (PolyhedralComplex::from_maximal_cells(2, vec![Polyhedron::point(qvec(&[0, 0]))]).unwrap(), curve_edge.clone());
        assert!(moderate_position(&[valence_two]).unwrap().holds);
        let vertex = (PolyhedralComplex::from_maximal_cells(2, vec![Polyhedron::point(qvec(&[0, 0]))]).unwrap(), line().complex().clone());
        let m = moderate_position(&[vertex]).unwrap();
        assert!(!m.holds);
        assert_eq!(m.witness, Some(0));
        let plane = TropicalCycle::ambient(2);
        assert!(moderate_position(&[(line().complex().clone(), plane.complex().clone())]).unwrap().holds);
    }

    #[test]
    fn uniform_line_in_plane() {
        let u = relatively_uniform(&line(), &TropicalCycle::ambient(2)).unwrap();
        assert_eq!(u, Uniformity::Uniform { r: 2 });
        let bad = ray_fan(2, &[(vec![1, 0], 2), (vec![-1, 1], 1), (vec![-1, -1], 1)]).unwrap();
        assert!(bad.check_balancing().is_balanced());
        assert!(matches!(relatively_uniform(&bad, &TropicalCycle::ambient(2)).unwrap(), Uniformity::NotUniform(_)));
    }

    #[test]
    fn uniform_edge_of_curve() {
        let edge = TropicalCycle::from_weighted_cells(2, 1, vec![(Polyhedron::cone(2, vec![], vec![vec![1, 1]]).unwrap(), 1)]).unwrap();
        assert_eq!(relatively_uniform(&edge, &TropicalCycle::ambient(2)).unwrap(), Uniformity::Uniform { r: 1 });
    }

    #[test]
    fn product_chart_section() {
        let x = TropicalCycle::from_weighted_cells(
            3,
            2,
            [vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0]]
                .into_iter()
                .map(|r| (Polyhedron::cone(3, vec![r], vec![vec![0, 0, 1]]).unwrap(), 1))
                .collect(),
        )
        .unwrap();
        let y = ray_fan(3, &[(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![-1, -1, 0], 1)]).unwrap();
        assert_eq!(relatively_uniform(&y, &x).unwrap(), Uniformity::Uniform { r: 1 });
        let spine = TropicalCycle::from_weighted_cells(3, 1, vec![(Polyhedron::cone(3, vec![], vec![vec![0, 0, 1]]).unwrap(), 1)]).unwrap();
        assert!(!relatively_uniform(&spine, &x).unwrap().is_uniform());
    }

    #[test]
    fn line_self_intersection() {
        let phi = max_of_coordinates(2);
        let s = self_intersection_support(&phi, &line(), &TropicalCycle::ambient(2), |_| true).unwrap();
        assert!(s.agree);
        assert_eq!(s.singular_regular, vec![qvec(&[0, 0])]);
    }
}
