use proptest::prelude::*;

use tropical_rr::hypersurface::random::rng;
use tropical_rr::hypersurface::random_delzant_polygon;
use tropical_rr::polyhedral::LatticePolytope;
use tropical_rr::rational::{q, qf, Rational};
use tropical_rr::toric::json::ClassJson;
use tropical_rr::toric::{elementary_symmetric, product_expansion, todd_table, SmoothCompleteFan2D, ToricSpace, TODD_CAP};

/// `binom(n + d, n)` as a polynomial in `d`, valid for negative `d`.
fn hilbert(n: usize, d: i64) -> Rational {
    (1..=n as i64).fold(q(1), |acc, i| acc * q(d + i) / q(i))
}

fn surface_of(p: &LatticePolytope) -> (ToricSpace, tropical_rr::toric::CohomologyClass) {
    let (fan, b) = SmoothCompleteFan2D::from_polygon(p).unwrap();
    let space = ToricSpace::Surface(fan);
    let class = space.divisor_int(&b).unwrap();
    (space, class)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn todd_series_matches_product(j in 1usize..=TODD_CAP, raw in prop::collection::vec((-9i64..10, 1i64..6), 1..6)) {
        let xs: Vec<Rational> = raw.iter().map(|&(a, b)| qf(a, b)).collect();
        let c = elementary_symmetric(&xs, j);
        prop_assert_eq!(todd_table().evaluate(j, &c).unwrap(), product_expansion(&xs, j));
    }

    #[test]
    fn projective_rr_is_the_hilbert_polynomial(n in 1usize..=3, d in -6i64..8) {
        let x = ToricSpace::projective(n).unwrap();
        let rr = x.rr_number(&x.divisor_int(&[d]).unwrap()).unwrap();
        prop_assert_eq!(rr, hilbert(n, d));
    }

    #[test]
    fn delzant_surfaces(seed in any::<u64>()) {
        let p = random_delzant_polygon(&mut rng(seed), 6);
        let (x, d) = surface_of(&p);
        let rr = x.rr_number(&d).unwrap();
        let lattice = p.lattice_points().len() as i64;
        prop_assert_eq!(&rr, &q(lattice));
        prop_assert_eq!(&rr, &x.adjunction_rr_surface(&d).unwrap());
        // Pick
        let area2 = p.twice_area().unwrap();
        prop_assert_eq!(2 * lattice, area2 + p.boundary_count().unwrap() + 2);
        // D² is twice the area, and χ(X) is the number of rays
        prop_assert_eq!(x.intersection_number(&[d.clone(), d.clone()]).unwrap(), q(area2));
        prop_assert_eq!(x.euler_number().unwrap(), q(p.vertices().len() as i64));
        prop_assert_eq!(x.rr_number(&x.zero()).unwrap(), q(1));
        let back = ClassJson::from_class(&x, &d).to_class(&x).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn serre_duality_on_surfaces(seed in any::<u64>(), k in -3i64..4) {
        let p = random_delzant_polygon(&mut rng(seed), 4);
        let (x, d) = surface_of(&p);
        let kd = d.scaled(&q(k));
        let dual = x.canonical().minus(&kd);
        prop_assert_eq!(x.rr_number(&kd).unwrap(), x.rr_number(&dual).unwrap());
    }
}
