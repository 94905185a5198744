use proptest::prelude::*;

use tropical_rr::euler::{chi_c_complement, chi_complement};
use tropical_rr::hypersurface::random::rng;
use tropical_rr::hypersurface::{random_delzant_polygon, smooth_polynomial, ToricHypersurface};
use tropical_rr::polyhedral::LatticePolytope;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn both_paths_count_lattice_points(seed in any::<u64>()) {
        let p = random_delzant_polygon(&mut rng(seed), 4);
        let (f, _) = smooth_polynomial(&p, seed, 32).unwrap();
        let t = ToricHypersurface::new(&f).unwrap();
        let chi = chi_complement(&t).unwrap();
        prop_assert!(chi.relatively_uniform);
        prop_assert_eq!(chi.path_a, chi.path_b);
        prop_assert_eq!(chi.path_a, chi.integral);
        prop_assert_eq!(chi.path_a, p.lattice_points().len() as i64);
        prop_assert_eq!(chi_c_complement(&t).unwrap(), p.interior_lattice_points().len() as i64);
    }
}

#[test]
fn points_on_the_line() {
    for d in 1..=6 {
        let (f, _) = smooth_polynomial(&LatticePolytope::simplex(d, 1), 0, 8).unwrap();
        let t = ToricHypersurface::new(&f).unwrap();
        assert_eq!(chi_complement(&t).unwrap().path_a, d + 1);
        assert_eq!(chi_c_complement(&t).unwrap(), -(d - 1));
    }
}
