use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::curve::json::GraphJson;
use crate::curve::{
    baker_norine_rank, chi_complement_curve, complement_cohomology_ranks, rr_number_curve, CurveDivisor, CurvePoint,
    TropicalCurveGraph,
};
use crate::cycle::divisor_intersect;
use crate::error::{Error, Result};
use crate::euler::{chi_c_complement, chi_complement, chi_relative_pair, chi_surface_complement};
use crate::hypersurface::dual::cartier_from_subdivision;
use crate::hypersurface::{
    is_delzant, smooth_polynomial, tropical_hypersurface, PolynomialJson, RegularSubdivision, ToricHypersurface,
    TropicalPolynomial,
};
use crate::matroid::json::MatroidJson;
use crate::matroid::{bergman_fan, csm_cycle, Matroid};
use crate::polyhedral::json::schema_error;
use crate::polyhedral::LatticePolytope;
use crate::rational::{q, Rational};
use crate::toric::{CohomologyClass, SmoothCompleteFan2D, ToricSpace};
use crate::util::binomial;

use super::report::VerificationReport;

/// Knobs shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    /// Re-seeds allowed when a random instance is not smooth or not in
    /// moderate position.
    pub retries: usize,
    pub max_degree: i64,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 0, retries: 32, max_degree: 6 }
    }
}

/// `{"vertices": [[x, y], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<Vec<i64>>,
}

impl PolygonJson {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != 2 {
                return Err(schema_error(format!("vertices[{i}]"), "expected two coordinates"));
            }
        }
        LatticePolytope::new(self.vertices.clone()).map_err(|e| schema_error("vertices", e.to_string()))
    }

    pub fn from_polytope(p: &LatticePolytope) -> Self {
        Self { vertices: p.vertices().to_vec() }
    }
}

/// `{"d": polygon, "d_prime": polygon}`; both polygons must share a normal fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub d: PolygonJson,
    pub d_prime: PolygonJson,
}

fn count(n: usize) -> Rational {
    q(n as i64)
}

fn delzant_surface(p: &LatticePolytope) -> Result<(ToricSpace, CohomologyClass, SmoothCompleteFan2D)> {
    if !is_delzant(p) {
        return Err(Error::NotSmooth(format!("polygon {:?} violates the Delzant condition", p.vertices())));
    }
    let (fan, b) = SmoothCompleteFan2D::from_polygon(p)?;
    let space = ToricSpace::Surface(fan.clone());
    let class = space.divisor_int(&b)?;
    Ok((space, class, fan))
}

/// Adds the hypothesis flags shared by all compact instances.
fn flag_instance(r: &mut VerificationReport, t: &ToricHypersurface) -> Result<bool> {
    let smooth = t.main_orbit().subdivision.as_ref().is_some_and(RegularSubdivision::is_smooth);
    r.hypothesis("smooth", smooth, "unimodular dual subdivision");
    let uniform = t.uniformity()?;
    let detail = uniform.failure.as_ref().map(|(s, why)| format!("stratum {s}: {why:?}")).unwrap_or_default();
    r.hypothesis("relatively uniform", uniform.holds(), detail);
    Ok(uniform.holds())
}

/// The Euler-power identities on one compact instance.
fn euler_checks(r: &mut VerificationReport, t: &ToricHypersurface) -> Result<i64> {
    let chi = chi_complement(t)?;
    r.check("euler-power paths", "sum chi(|D^k|)", chi.path_a, "sum (k+1) chi_c(strata)", chi.path_b);
    r.check("euler integral", "sum chi(|D^k|)", chi.path_a, "integral of local index", chi.integral);
    Ok(chi.path_a)
}

/// `RR(TPⁿ; dH)` against the lattice count and both Euler-calculus paths,
/// plus the dual identity for `−dH`.
pub fn cmd_tpn(n: usize, d: i64, opts: &Options) -> Result<VerificationReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::OutOfRange(format!("n = {n}, expected 1, 2 or 3")));
    }
    if d < 1 || d > opts.max_degree {
        return Err(Error::OutOfRange(format!("d = {d}, expected 1..={}", opts.max_degree)));
    }
    let poly = LatticePolytope::simplex(d, n);
    let (f, seed) = smooth_polynomial(&poly, opts.seed, opts.retries)?;
    let mut r = VerificationReport::new("tpn", json!({"n": n, "d": d}), Some(seed));
    let space = ToricSpace::projective(n)?;
    let h = space.divisor_int(&[d])?;
    let rr = space.rr_number(&h)?;
    let lattice = count(poly.lattice_points().len());
    r.check("riemann-roch", "RR(X; D)", rr.clone(), "#(P ∩ Z^n)", lattice.clone());
    let t = ToricHypersurface::new(&f)?;
    flag_instance(&mut r, &t)?;
    let path_a = euler_checks(&mut r, &t)?;
    r.check("main theorem", "#(P ∩ Z^n)", lattice, "chi(X ∖ D)", q(path_a));
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let dual = space.rr_number(&h.negated())?;
    let interior = q(sign * poly.interior_lattice_points().len() as i64);
    r.check("dual", "RR(X; -D)", dual, "(-1)^n #int(P)", interior.clone());
    r.check("dual compact support", "(-1)^n #int(P)", interior, "chi_c(X ∖ D)", q(chi_c_complement(&t)?));
    Ok(r)
}

/// The three-way check on the surface of a Delzant polygon, re-seeding
/// until the curve is in moderate position.
pub fn cmd_surface(p: &PolygonJson, opts: &Options) -> Result<VerificationReport> {
    let poly = p.to_polytope()?;
    let (space, class, _) = delzant_surface(&poly)?;
    let mut next = opts.seed;
    let mut attempts = 0;
    let (t, seed) = loop {
        let (f, s) = smooth_polynomial(&poly, next, opts.retries)?;
        let t = ToricHypersurface::new(&f)?;
        attempts += 1;
        if attempts > opts.retries || t.moderate_position()? {
            break (t, s);
        }
        next = s.wrapping_add(1);
    };
    let mut r = VerificationReport::new("surface", serde_json::to_value(p).expect("plain data"), Some(seed));
    let adj = space.adjunction_rr_surface(&class)?;
    let rr = space.rr_number(&class)?;
    let lattice = count(poly.lattice_points().len());
    r.check("adjunction", "deg((D-K)·D)/2 + chi(X)", adj, "RR(X; D)", rr.clone());
    r.check("riemann-roch", "RR(X; D)", rr, "#(P ∩ Z^2)", lattice.clone());
    flag_instance(&mut r, &t)?;
    let moderate = t.moderate_position()?;
    r.hypothesis("moderate position", moderate, "");
    let path_a = euler_checks(&mut r, &t)?;
    r.check("main theorem", "#(P ∩ Z^2)", lattice, "chi(X ∖ D)", q(path_a));
    if moderate {
        r.check("iterated euler", "chi(X ∖ D)", q(path_a), "chi(S) + chi(C) + chi(|C^2|)", q(chi_surface_complement(&t)?));
    }
    Ok(r)
}

/// `χ(X∖D') − χ(D∖(D'∩D)) = RR(X; D'−D)` for a pair of curves, re-seeding
/// until the pair is in moderate position.
pub fn cmd_bertini(pair: &PairJson, opts: &Options) -> Result<VerificationReport> {
    let pd = pair.d.to_polytope()?;
    let pdp = pair.d_prime.to_polytope()?;
    let (space, d, fan) = delzant_surface(&pd)?;
    if !is_delzant(&pdp) {
        return Err(Error::NotSmooth("D' violates the Delzant condition".into()));
    }
    let dp = space.divisor_int(&fan.polygon_class(&pdp)?)?;
    let mut found = None;
    for attempt in 0..=opts.retries as u64 {
        let s = opts.seed.wrapping_add(attempt.wrapping_mul(2));
        let (f, s) = smooth_polynomial(&pd, s, opts.retries)?;
        // an independent stream for D', so D = D' still gives two curves
        let (fp, sp) = smooth_polynomial(&pdp, s.wrapping_add(0x9e37_79b9), opts.retries)?;
        let (t, tp) = (ToricHypersurface::new(&f)?, ToricHypersurface::new(&fp)?);
        let rel = chi_relative_pair(Some(&t), Some(&tp))?;
        let done = rel.moderate;
        found = Some((s, sp, t, tp, rel));
        if done {
            break;
        }
    }
    let (s, sp, t, tp, rel) = found.expect("at least one attempt");
    let mut r = VerificationReport::new(
        "bertini",
        json!({"d": pair.d, "d_prime": pair.d_prime, "seed_d_prime": sp}),
        Some(s),
    );
    r.hypothesis("moderate position", rel.moderate, "transverse in the torus, disjoint on the boundary");
    for (name, x) in [("D", &t), ("D'", &tp)] {
        let smooth = x.main_orbit().subdivision.as_ref().is_some_and(RegularSubdivision::is_smooth);
        r.hypothesis(&format!("smooth {name}"), smooth, "");
    }
    let diff = dp.minus(&d);
    let rhs = space.adjunction_rr_surface(&diff)?;
    r.check(
        "rr-bertini",
        "chi(X ∖ D') - chi(D ∖ (D' ∩ D))",
        q(rel.value),
        "deg((D'-D)·(D'-D-K))/2 + chi(X)",
        rhs.clone(),
    );
    r.check("todd side", "deg((D'-D)·(D'-D-K))/2 + chi(X)", rhs, "RR(X; D' - D)", space.rr_number(&diff)?);
    let red = space.rr_difference(&dp, &d)?;
    r.check("curve reduction", "RR(X; D' - D)", red.value.clone(), "RR(X; D') - RR(D; D'|_D)", &red.rr_d_prime - &red.curve_rr);
    r.check("meeting degree", "deg(D' · D) tropical", q(rel.meeting_degree), "D' · D in the ring", red.meeting_degree);
    Ok(r)
}

fn reduced_points(d: &CurveDivisor) -> Option<Vec<CurvePoint>> {
    d.iter().all(|(_, c)| c == 1).then(|| d.support())
}

fn is_bridge(g: &TropicalCurveGraph, e: usize) -> bool {
    let (u, v) = g.edges()[e];
    if u == v {
        return false;
    }
    let rest = g.edges().iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &x)| x).collect();
    TropicalCurveGraph::new(g.vertex_count(), rest).is_err()
}

/// Curve Riemann–Roch, graph Riemann–Roch and, for a set of regular
/// points, the cohomology of the complement.
pub fn cmd_curve(input: &GraphJson) -> Result<VerificationReport> {
    let g = input.to_graph()?;
    let d = input.to_divisor(&g)?;
    let mut r = VerificationReport::new("curve", serde_json::to_value(input).expect("plain data"), None);
    let genus = g.genus();
    r.check("curve rr", "RR(C; D)", rr_number_curve(&g, &d), "#D + chi(C)", d.degree() + g.euler_char());
    let k = g.canonical_divisor();
    let rd = baker_norine_rank(&g, &d)?;
    let rkd = baker_norine_rank(&g, &k.minus(&d))?;
    r.check("graph riemann-roch", "r(D) - r(K-D)", rd - rkd, "deg D + 1 - g", d.degree() + 1 - genus);
    let Some(points) = reduced_points(&d) else {
        return Ok(r);
    };
    let ranks = match complement_cohomology_ranks(&g, &points) {
        Ok(x) => x,
        Err(Error::Hypothesis(why)) => {
            r.hypothesis("points are regular", false, why);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    r.hypothesis("points are regular", true, "");
    let n = points.len() as i64;
    r.check("complement chi", "h0 - h1", ranks.chi(), "chi(C) + #D", chi_complement_curve(&g, &points)?);
    r.check("compact support h0", "rank H^0_c", ranks.h0_c, "r(-D) + 1", baker_norine_rank(&g, &d.negated())? + 1);
    r.check("compact support h1", "rank H^1_c", ranks.h1_c, "r(K+D) + 1", baker_norine_rank(&g, &k.plus(&d))? + 1);
    let one_edge = match points.first() {
        Some(CurvePoint::Edge { edge, .. }) => {
            let e = *edge;
            points.iter().all(|p| matches!(p, CurvePoint::Edge { edge, .. } if *edge == e)) && !is_bridge(&g, e)
        }
        _ => false,
    };
    if genus == 2 && one_edge {
        r.check("cohomology h0", "rank H^0(C ∖ D)", ranks.h0, "#D", n);
        r.check("cohomology h1", "rank H^1(C ∖ D)", ranks.h1, "1", 1);
        if n > 2 {
            r.check("rank of D", "r(D) + 1", rd + 1, "#D - 1", n - 1);
            r.check("rank of K-D", "r(K-D) + 1", rkd + 1, "0", 0);
        }
    }
    Ok(r)
}

/// Balancing and weights of the Bergman fan and CSM cycles, and the beta
/// invariant by two routes.
pub fn cmd_csm(input: &MatroidJson) -> Result<VerificationReport> {
    let m = input.to_matroid()?;
    let mut r = VerificationReport::new("csm", serde_json::to_value(input).expect("plain data"), None);
    let fan = bergman_fan(&m)?;
    let failures = fan.check_balancing().failures.len() as i64;
    r.check("bergman balanced", "unbalanced codim-1 cells", failures, "0", 0);
    let top = m.rank() - 1;
    for k in 0..=top {
        let c = csm_cycle(&m, k)?;
        r.check(&format!("csm_{k} balanced"), "balanced", i64::from(c.is_balanced()), "1", 1);
        if k == top {
            let off = c.flags().iter().filter(|(_, w)| *w != 1).count() as i64;
            r.check("csm top weights", "flags of weight != 1", off, "0", 0);
        }
    }
    let beta = m.beta_invariant()?;
    r.check("beta", "deletion-contraction", beta, "signed rank sum", m.beta_by_rank_sum());
    if is_uniform(&m) {
        let (rk, n) = (m.rank() as i64, m.ground_size() as i64);
        if n >= 2 {
            r.check("uniform beta", "beta(U_{r,n})", beta, "binomial(n-2, r-1)", binomial(n - 2, rk - 1));
        }
    }
    Ok(r)
}

fn is_uniform(m: &Matroid) -> bool {
    m.bases().len() as i64 == binomial(m.ground_size() as i64, m.rank() as i64)
}

/// Balancing of `V(f)`, complement regions against lattice points, and on
/// a smooth Delzant surface the engine self-pairing against the ring.
pub fn cmd_hypersurface(input: &PolynomialJson, opts: &Options) -> Result<VerificationReport> {
    let f = input.to_polynomial()?;
    let mut r = VerificationReport::new("hypersurface", serde_json::to_value(input).expect("plain data"), None);
    let sub = RegularSubdivision::new(&f)?;
    let smooth = sub.is_smooth();
    r.hypothesis("smooth", smooth, "unimodular dual subdivision");
    let v = tropical_hypersurface(&f)?;
    r.check("balanced", "unbalanced codim-1 cells", v.check_balancing().failures.len() as i64, "0", 0);
    if smooth {
        let regions = ToricHypersurface::new(&f)?.complement_components()?.len();
        r.check("complement regions", "components of R^n ∖ V(f)", regions as i64, "#(P ∩ Z^n)", f.newton_polytope().lattice_points().len() as i64);
    }
    let poly = f.newton_polytope();
    if f.n() == 2 && is_delzant(&poly) {
        let (space, class, _) = delzant_surface(&poly)?;
        // pair with a second, independent curve of the same class
        let (g, _) = smooth_polynomial(&poly, opts.seed, opts.retries)?;
        let curve = tropical_hypersurface(&g)?;
        let meet = divisor_intersect(&cartier_from_subdivision(&sub)?, &curve)?;
        r.check(
            "pairing",
            "deg(D · D) tropical",
            q(meet.degree()?),
            "D^2 in the ring",
            space.intersection_number(&[class.clone(), class])?,
        );
    }
    Ok(r)
}

/// Both Euler-calculus paths for `χ(X ∖ D)` on the compact instance of `f`,
/// compared with `RR` whenever the ambient ring is available.
pub fn cmd_euler(input: &PolynomialJson) -> Result<VerificationReport> {
    let f = input.to_polynomial()?;
    let mut r = VerificationReport::new("euler", serde_json::to_value(input).expect("plain data"), None);
    let t = ToricHypersurface::new(&f)?;
    flag_instance(&mut r, &t)?;
    let path_a = euler_checks(&mut r, &t)?;
    let poly = f.newton_polytope();
    let lattice = poly.lattice_points().len() as i64;
    r.check("main theorem", "chi(X ∖ D)", path_a, "#(P ∩ Z^n)", lattice);
    if let Some(rr) = ring_rr(&f, &poly)? {
        r.check("riemann-roch", "RR(X; D)", rr, "chi(X ∖ D)", q(path_a));
    }
    Ok(r)
}

/// `RR(X_P; D_P)` when the toric ring of `P` is implemented: dilated
/// standard simplices and Delzant polygons.
fn ring_rr(f: &TropicalPolynomial, poly: &LatticePolytope) -> Result<Option<Rational>> {
    let n = f.n();
    let d = poly.vertices().iter().flatten().copied().max().unwrap_or(0);
    let sorted = |p: &LatticePolytope| {
        let mut v = p.vertices().to_vec();
        v.sort();
        v
    };
    if d > 0 && sorted(poly) == sorted(&LatticePolytope::simplex(d, n)) {
        let space = ToricSpace::projective(n)?;
        return space.rr_number(&space.divisor_int(&[d])?).map(Some);
    }
    if n == 2 && is_delzant(poly) {
        let (space, class, _) = delzant_surface(poly)?;
        return space.rr_number(&class).map(Some);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::json::from_json_str;

    #[test]
    fn tpn_examples() {
        let opts = Options::default();
        for (n, d, want) in [(2, 1, "3"), (2, 3, "10"), (1, 4, "5")] {
            let r = cmd_tpn(n, d, &opts).unwrap();
            assert_eq!(r.exit_code(), 0, "{}", r.render());
            assert_eq!(r.find("riemann-roch").unwrap().right, want);
        }
        assert!(cmd_tpn(4, 1, &opts).is_err());
        assert!(cmd_tpn(2, 7, &opts).is_err());
    }

    #[test]
    fn unit_square() {
        let p = PolygonJson { vertices: vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]] };
        let r = cmd_surface(&p, &Options::default()).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("riemann-roch").unwrap().left, "4");
    }

    #[test]
    fn non_delzant_is_an_error() {
        let p = PolygonJson { vertices: vec![vec![0, 0], vec![2, 0], vec![0, 1]] };
        assert!(matches!(cmd_surface(&p, &Options::default()), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn line_and_conic() {
        let pair = PairJson {
            d: PolygonJson { vertices: vec![vec![0, 0], vec![1, 0], vec![0, 1]] },
            d_prime: PolygonJson { vertices: vec![vec![0, 0], vec![2, 0], vec![0, 2]] },
        };
        let r = cmd_bertini(&pair, &Options::default()).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("rr-bertini").unwrap().left, "3");
    }

    #[test]
    fn equal_classes() {
        let line = PolygonJson { vertices: vec![vec![0, 0], vec![1, 0], vec![0, 1]] };
        let r = cmd_bertini(&PairJson { d: line.clone(), d_prime: line }, &Options::default()).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("rr-bertini").unwrap().right, "1");
    }

    #[test]
    fn theta_three_points() {
        let j: GraphJson =
            from_json_str(r#"{"vertices": 2, "edges": [[0,1],[0,1],[0,1]], "divisor": {"e0.0": 1, "e0.1": 1, "e0.2": 1}}"#)
                .unwrap();
        let r = cmd_curve(&j).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("cohomology h0").unwrap().left, "3");
        assert_eq!(r.find("rank of D").unwrap().left, "2");
    }

    #[test]
    fn circle_two_points() {
        let j: GraphJson = from_json_str(r#"{"vertices": 1, "edges": [[0,0]], "divisor": {"e0.0": 1, "e0.1": 1}}"#).unwrap();
        let r = cmd_curve(&j).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("complement chi").unwrap().left, "2");
    }

    #[test]
    fn u24() {
        let m = Matroid::uniform(2, 4).unwrap();
        let r = cmd_csm(&MatroidJson::from_matroid(&m)).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("beta").unwrap().left, "2");
    }

    #[test]
    fn conic_hypersurface_and_euler() {
        let poly = LatticePolytope::simplex(2, 2);
        let (f, _) = smooth_polynomial(&poly, 5, 32).unwrap();
        let j = PolynomialJson::from_polynomial(&f);
        let r = cmd_hypersurface(&j, &Options::default()).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.render());
        assert_eq!(r.find("pairing").unwrap().right, "4");
        let e = cmd_euler(&j).unwrap();
        assert_eq!(e.exit_code(), 0, "{}", e.render());
        assert_eq!(e.find("riemann-roch").unwrap().left, "6");
    }
}
