mod common;

use convexkit::delvor::{
    delaunay_paraboloid, delaunay_sphere, empty_circumsphere_check, lift_paraboloid_homogeneous, stereo_sigma,
    stereo_tau, stereo_tau_homogeneous, voronoi_from_delaunay_duality,
};
use convexkit::duality::{theta_map, Direction};
use convexkit::exact::{int, norm_sq, ray_normal_form, sub, Scalar};
use convexkit::polyhedra::{h_to_v, Polytope};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn delaunay_routes_agree(seed in any::<u64>(), n in 3usize..=12) {
        let mut r = common::rng(seed);
        let sites = common::general_position_sites(&mut r, n, 2);
        let a = delaunay_paraboloid(&sites, false).unwrap();
        prop_assert_eq!(&delaunay_sphere(&sites, false).unwrap(), &a);
        prop_assert!(empty_circumsphere_check(&a).unwrap());
        let e = a.edges().unwrap().len() as i64;
        prop_assert_eq!(n as i64 - e + a.cells.len() as i64, 1);
    }

    #[test]
    fn voronoi_is_dual_to_delaunay(seed in any::<u64>(), n in 3usize..=10) {
        let mut r = common::rng(seed);
        let sites = common::general_position_sites(&mut r, n, 2);
        let rep = voronoi_from_delaunay_duality(&sites).unwrap();
        prop_assert!(rep.agrees());
        prop_assert!(rep.simple_vertices());
        for (v, _) in &rep.vertices {
            let dist: Vec<Scalar> = sites.iter().map(|s| norm_sq(&sub(s, v))).collect();
            let min = dist.iter().min().unwrap();
            prop_assert_eq!(dist.iter().filter(|x| *x == min).count(), 3);
        }
        let hull = Polytope::from_points(2, sites.clone()).unwrap();
        for (i, cell) in rep.bisector_cells.iter().enumerate() {
            let unbounded = !h_to_v(cell).unwrap().rays.is_empty();
            let on_hull = hull.h.ineqs.iter().any(|row| row.eval(&sites[i]).is_zero());
            prop_assert_eq!(unbounded, on_hull);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn stereographic_round_trip(x in (1usize..=4).prop_flat_map(common::rat_vec)) {
        let z = stereo_tau(&x);
        prop_assert_eq!(norm_sq(&z), int(1));
        prop_assert_eq!(stereo_sigma(&z).unwrap(), x);
    }

    #[test]
    fn theta_chain(x in (1usize..=4).prop_flat_map(common::rat_vec)) {
        let t = theta_map(&stereo_tau_homogeneous(&x), Direction::Forward).unwrap();
        prop_assert_eq!(ray_normal_form(&t), ray_normal_form(&lift_paraboloid_homogeneous(&x)));
    }
}
