mod common;

use std::collections::BTreeSet;

use convexkit::classics::{
    caratheodory_reduce, centerpoint, farkas, helly_check, radon_partition, tukey_depth, verify_centerpoint,
    verify_farkas, ConvexCombination, FarkasCertificate, FarkasProblem,
};
use convexkit::complexes::{
    dehn_sommerville_check, dehn_sommerville_from_f, euler_check, h_from_f, h_from_shelling, is_shelling,
    line_shelling, EulerTarget, SimplicialComplex,
};
use convexkit::cyclic::{
    cyclic_facet_count, cyclic_polytope, gale_facets, is_gale_even, lower_bound_check, upper_bound_check,
    CyclicSpec,
};
use convexkit::delvor::{
    delaunay_paraboloid, delaunay_sphere, empty_circumsphere_check, lift_paraboloid_homogeneous, north_pole,
    stereo_sigma, stereo_sphere_image, stereo_sphere_preimage, stereo_tau, stereo_tau_homogeneous,
    voronoi_from_delaunay_duality, DelaunayComplex, StereoImage,
};
use convexkit::duality::{check_completion_duality_commutes, polar_dual_h, polar_dual_v, theta_map, Direction, Quadric};
use convexkit::exact::{
    affine_dimension, binomial, dot, frac, int, ints, norm_sq, ray_normal_form, sub, zeros, Scalar, Vector,
};
use convexkit::polyhedra::{face_lattice, fm_project, fm_slice, h_to_v, v_to_h, HCone, HRep, Polytope, VCone, VRep};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn finish(label: &str, failures: &[String], checked: usize) {
    let ok = failures.is_empty();
    let detail = if ok {
        format!("{checked} checks")
    } else {
        format!("{} of {checked} checks failed; first: {}", failures.len(), failures[0])
    };
    common::report(label, ok, &detail);
    assert!(ok, "{label}: {detail}");
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, label: &str) {
        finish(label, &self.failures, self.checked);
    }
}

fn pyritohedron() -> Polytope {
    let mut pts = Vec::new();
    for m in 0..8 {
        let s = |b: i64| if m >> b & 1 == 1 { -1 } else { 1 };
        pts.push(ints(&[s(0), s(1), s(2)]));
    }
    let (a, b) = (frac(3, 2), frac(3, 4));
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let (x, y) = (&a * int(s1), &b * int(s2));
            pts.push(vec![int(0), x.clone(), y.clone()]);
            pts.push(vec![x.clone(), y.clone(), int(0)]);
            pts.push(vec![y, int(0), x]);
        }
    }
    Polytope::from_points(3, pts).unwrap()
}

fn icosahedron() -> Polytope {
    let h = frac(8, 5);
    let mut pts = Vec::new();
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let (x, y) = (int(s1), &h * int(s2));
            pts.push(vec![int(0), x.clone(), y.clone()]);
            pts.push(vec![x.clone(), y.clone(), int(0)]);
            pts.push(vec![y, int(0), x]);
        }
    }
    Polytope::from_points(3, pts).unwrap()
}

fn cross_polytope(d: usize) -> Polytope {
    let mut pts = Vec::new();
    for i in 0..d {
        let mut e = zeros(d);
        e[i] = int(1);
        pts.push(e.clone());
        e[i] = int(-1);
        pts.push(e);
    }
    Polytope::from_points(d, pts).unwrap()
}

fn i64_f(f: &[usize]) -> Vec<i64> {
    f.iter().map(|&x| x as i64).collect()
}

#[test]
fn c01_euler_poincare() {
    let mut t = Tally::new();
    let mut r = common::rng(1);
    for d in 2..=5 {
        for _ in 0..50 {
            let n = r.gen_range(d + 1..=10);
            let p = common::polytope(&mut r, n, d);
            let f = face_lattice(&p.h, &p.v).unwrap().f_vector();
            let solid = euler_check(&f, EulerTarget::Solid);
            t.check(solid.ok, || format!("chi(P)={} for f={f:?}", solid.chi));
            let boundary = euler_check(&f[..f.len() - 1], EulerTarget::Boundary(d));
            t.check(boundary.ok && boundary.chi == 1 - (-1i64).pow(d as u32), || {
                format!("chi(boundary)={} for f={f:?}", boundary.chi)
            });
        }
    }
    let f = face_lattice(&pyritohedron().h, &pyritohedron().v).unwrap().f_vector();
    t.check(f == vec![1, 20, 30, 12, 1], || format!("dodecahedron f={f:?}"));
    t.check(f[1] as i64 - f[2] as i64 + f[3] as i64 == 2, || "dodecahedron 20 - 30 + 12 != 2".into());
    t.finish("1 Euler-Poincare");
}

/// Indices of `points` not in the hull of the others.
fn extreme_points(points: &[Vector]) -> BTreeSet<Vector> {
    let d = points[0].len();
    points
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<Vector> = points
                .iter()
                .enumerate()
                .filter(|(j, q)| j != i && q != p)
                .map(|(_, q)| q.clone())
                .collect();
            let dup_before = points[..*i].contains(p);
            !dup_before && (others.is_empty() || !VRep::from_points(d, others).unwrap().contains(p))
        })
        .map(|(_, p)| p.clone())
        .collect()
}

#[test]
fn c02_hv_equivalence() {
    let mut t = Tally::new();
    let mut r = common::rng(2);
    for case in 0..100 {
        let d = 1 + case % 4;
        let n = r.gen_range(1..=8);
        let pts = common::points(&mut r, n, d);
        let v = VRep::from_points(d, pts.clone()).unwrap();
        let h = v_to_h(&v).unwrap();
        let back = h_to_v(&h).unwrap();
        let got: BTreeSet<Vector> = back.points.iter().cloned().collect();
        let expect = extreme_points(&pts);
        t.check(got == expect && back.rays.is_empty(), || format!("case {case}: vertex sets differ"));
        for x in common::sample_points(&mut r, &pts, 1000) {
            let (in_h, in_v) = (h.contains(&x), v.contains(&x));
            t.check(in_h == in_v, || format!("case {case}: membership differs at {x:?}"));
        }
    }
    t.finish("2 H/V equivalence");
}

fn random_cone(r: &mut ChaCha8Rng, d: usize) -> VCone {
    let m = r.gen_range(1..=6);
    VCone::new(d, (0..m).map(|_| common::nonzero_int_vec(r, d, 6)).collect()).unwrap()
}

#[test]
fn c03_fourier_motzkin() {
    let mut t = Tally::new();
    let mut r = common::rng(3);
    for case in 0..100 {
        let d = 2 + case % 3;
        let c = random_cone(&mut r, d);
        let k = r.gen_range(0..d);
        let s = fm_slice(&c, k);
        for _ in 0..5 {
            let x = common::nonneg_combination(&mut r, &s.generators, d);
            t.check(x[k].is_zero() && common::cone_member(&c.generators, &x), || {
                format!("slice case {case}: {x:?} not in C ∩ x_k=0")
            });
            // Balance a random element of C onto x_k = 0 using a generator of the other sign.
            let mut y = common::nonneg_combination(&mut r, &c.generators, d);
            let other = c.generators.iter().find(|g| (&g[k] * &y[k]).is_negative()).cloned();
            if let Some(g) = other {
                let lambda = -&y[k] / &g[k];
                y = y.iter().zip(&g).map(|(a, b)| a + &lambda * b).collect();
            }
            if y[k].is_zero() {
                t.check(common::cone_member(&s.generators, &y), || {
                    format!("slice case {case}: {y:?} missing from the slice")
                });
            }
        }
        t.check(
            c.generators.iter().filter(|g| g[k].is_zero()).all(|g| common::cone_member(&s.generators, g)),
            || format!("slice case {case}: a generator with x_k = 0 was lost"),
        );
    }
    for case in 0..100 {
        let d = 2 + case % 3;
        let m = r.gen_range(1..=6);
        let c = HCone::new(d, (0..m).map(|_| common::nonzero_int_vec(&mut r, d, 6)).collect()).unwrap();
        let k = r.gen_range(0..d);
        let p = fm_project(&c, k);
        let gens = c.to_vcone().generators;
        for i in 0..12 {
            let mut z = if i % 2 == 0 {
                common::nonneg_combination(&mut r, &gens, d)
            } else {
                common::small_int_vec(&mut r, d, 5)
            };
            z[k] = Scalar::zero();
            let expect = common::fiber_nonempty(&c, &z, k);
            t.check(p.contains(&z) == expect, || format!("project case {case}: {z:?} expected {expect}"));
        }
    }
    t.finish("3 Fourier-Motzkin");
}

#[test]
fn c04_duality() {
    let mut t = Tally::new();
    let mut r = common::rng(4);
    let origin = |d: usize| zeros(d);
    for case in 0..50 {
        let d = 2 + case % 3;
        let n = r.gen_range(d + 1..=8);
        let p = common::polytope_around_origin(&mut r, n, d);
        let dual_h = polar_dual_v(&p.v, &origin(d)).unwrap();
        let back = polar_dual_h(&dual_h).unwrap();
        t.check(back.sorted_points() == p.v.sorted_points(), || format!("case {case}: A** != A"));
        let dual = Polytope::from_hrep(&dual_h).unwrap();
        let f = face_lattice(&p.h, &p.v).unwrap().f_vector();
        let g = face_lattice(&dual.h, &dual.v).unwrap().f_vector();
        t.check((0..d).all(|k| f[k + 1] == g[d - k]), || format!("case {case}: f={f:?} dual f={g:?}"));
    }
    let square = Polytope::from_points(2, vec![ints(&[1, 1]), ints(&[1, -1]), ints(&[-1, 1]), ints(&[-1, -1])]).unwrap();
    let dual = polar_dual_h(&square.h).unwrap();
    t.check(dual.sorted_points() == cross_polytope(2).v.sorted_points(), || "square dual".into());
    let cube = Polytope::from_points(3, (0..8).map(|m| ints(&[1 - 2 * (m & 1), 1 - 2 * (m >> 1 & 1), 1 - 2 * (m >> 2 & 1)])).collect()).unwrap();
    let dual = polar_dual_h(&cube.h).unwrap();
    t.check(dual.sorted_points() == cross_polytope(3).v.sorted_points(), || "cube dual".into());
    let oct = cross_polytope(3);
    let dual = polar_dual_h(&oct.h).unwrap();
    t.check(dual.sorted_points() == cube.v.sorted_points(), || "octahedron dual".into());
    for d in 2..=4 {
        let mut pts: Vec<Vector> = (0..d).map(|i| {
            let mut e = zeros(d);
            e[i] = int(d as i64 + 1);
            e
        }).collect();
        pts.push(vec![int(0); d]);
        let shift = vec![int(1); d];
        let pts: Vec<Vector> = pts.iter().map(|p| sub(p, &shift)).collect();
        let simplex = Polytope::from_points(d, pts).unwrap();
        let dual = Polytope::from_hrep(&polar_dual_v(&simplex.v, &origin(d)).unwrap()).unwrap();
        let f = face_lattice(&dual.h, &dual.v).unwrap().f_vector();
        let expect: Vec<usize> = (0..=d + 1).map(|k| binomial(d as i64 + 1, k as i64).to_usize().unwrap()).collect();
        t.check(f == expect, || format!("simplex dual d={d}: f={f:?}"));
    }
    for case in 0..25 {
        let d = 2 + case % 2;
        let n = r.gen_range(d + 1..=6);
        let p = common::polytope_around_origin(&mut r, n, d);
        let rep = check_completion_duality_commutes(&p.v, &Quadric::sphere(d)).unwrap();
        t.check(rep.passed, || format!("commute case {case} fails"));
    }
    t.finish("4 Duality");
}

fn shelling_instances(r: &mut ChaCha8Rng) -> Vec<Polytope> {
    (0..50)
        .map(|case| {
            let d = 3 + case % 2;
            let n = r.gen_range(d + 2..=10);
            common::polytope(r, n, d)
        })
        .collect()
}

#[test]
fn c05_shellings() {
    let mut t = Tally::new();
    let mut r = common::rng(5);
    for (case, p) in shelling_instances(&mut r).iter().enumerate() {
        let x = common::outside_point(&mut r, p);
        let ls = line_shelling(p, &x, 0).unwrap();
        let rep = is_shelling(&ls.complex, &ls.shelling.facet_order).unwrap();
        t.check(rep.ok, || format!("case {case}: line shelling rejected"));
        let h = h_from_shelling(&ls.shelling).unwrap();
        let f = i64_f(&ls.complex.f_vector());
        t.check(h == h_from_f(&f, p.dim()).unwrap(), || format!("case {case}: h from shelling {h:?} f={f:?}"));
        let x2 = common::outside_point(&mut r, p);
        let other = line_shelling(p, &x2, 7).unwrap();
        t.check(h_from_shelling(&other.shelling).unwrap() == h, || format!("case {case}: h depends on the line"));
        let mut rev = ls.shelling.facet_order.clone();
        rev.reverse();
        t.check(is_shelling(&ls.complex, &rev).unwrap().ok, || format!("case {case}: reversal rejected"));
    }
    let order: Vec<Vec<usize>> = [[1, 2], [1, 3], [3, 4], [3, 5], [4, 5], [3, 6], [5, 6]]
        .iter()
        .map(|e| e.iter().map(|v| v - 1).collect())
        .collect();
    let g = SimplicialComplex::from_facets(6, order.clone()).unwrap();
    let s = is_shelling(&g, &order).unwrap().shelling.unwrap();
    t.check(h_from_shelling(&s).unwrap() == vec![1, 4, 2], || "graph h-vector".into());
    t.finish("5 Shellings and h-vectors");
}

#[test]
fn c06_dehn_sommerville() {
    let mut t = Tally::new();
    let mut r = common::rng(5);
    for (case, p) in shelling_instances(&mut r).iter().enumerate() {
        if !p.is_simplicial() {
            continue;
        }
        let rep = dehn_sommerville_check(p).unwrap();
        t.check(rep.ok(), || format!("random case {case}: h={:?}", rep.h));
    }
    for d in 2..=6 {
        for n in d + 1..=10 {
            let p = Polytope::from_vrep(&cyclic_polytope(&CyclicSpec::standard(d, n).unwrap())).unwrap();
            let rep = dehn_sommerville_check(&p).unwrap();
            t.check(rep.ok(), || format!("C_{d}({n}): h={:?}", rep.h));
        }
    }
    for (name, p, expect) in [("octahedron", cross_polytope(3), [6, 12, 8]), ("icosahedron", icosahedron(), [12, 30, 20])] {
        let f = face_lattice(&p.h, &p.v).unwrap().f_vector();
        let (f0, f1, f2) = (f[1] as i64, f[2] as i64, f[3] as i64);
        t.check([f0, f1, f2] == expect, || format!("{name}: f={f:?}"));
        t.check(f1 == 3 * f0 - 6 && f2 == 2 * f0 - 4, || format!("{name}: relations fail"));
        t.check(dehn_sommerville_from_f(&[1, f0, f1, f2], 3).unwrap().ok(), || format!("{name}: h not palindromic"));
    }
    t.finish("6 Dehn-Sommerville");
}

/// Facet count of the cyclic polytope in closed form.
fn facets_closed_form(d: usize, n: usize) -> u64 {
    let (lo, hi) = ((d / 2) as i64, d.div_ceil(2) as i64);
    let n = n as i64;
    (binomial(n - hi, lo) + binomial(n - lo - 1, hi - 1)).to_u64().unwrap()
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Gale's condition checked directly: between two non-members, an even number of members.
fn gale_brute(s: &[usize], n: usize) -> bool {
    let outside: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    outside.windows(2).all(|w| s.iter().filter(|&&v| v > w[0] && v < w[1]).count() % 2 == 0)
}

fn geometric_facets(spec: &CyclicSpec) -> BTreeSet<Vec<usize>> {
    let v = cyclic_polytope(spec);
    let p = Polytope::from_vrep(&v).unwrap();
    let index = |x: &Vector| v.points.iter().position(|y| y == x).unwrap();
    p.facet_vertex_sets()
        .iter()
        .map(|f| {
            let mut s: Vec<usize> = f.iter().map(|&i| index(&p.v.points[i])).collect();
            s.sort();
            s
        })
        .collect()
}

#[test]
fn c07_cyclic_and_upper_bound() {
    let mut t = Tally::new();
    for d in 2..=6 {
        for n in d + 1..=10 {
            let gale = gale_facets(d, n).unwrap();
            let expect = facets_closed_form(d, n);
            t.check(gale.len() as u64 == expect && cyclic_facet_count(d, n).unwrap() == expect, || {
                format!("d={d} n={n}: {} Gale facets, closed form {expect}", gale.len())
            });
            let brute: Vec<Vec<usize>> = subsets_of_size(n, d).into_iter().filter(|s| gale_brute(s, n)).collect();
            let gale_set: BTreeSet<Vec<usize>> = gale.iter().cloned().collect();
            t.check(brute.into_iter().collect::<BTreeSet<_>>() == gale_set, || format!("d={d} n={n}: Gale sets"));
            t.check(gale.iter().all(|s| is_gale_even(s, n)), || format!("d={d} n={n}: is_gale_even"));
        }
    }
    t.check(cyclic_facet_count(4, 7).unwrap() == 14, || "C_4(7) facet count".into());
    for d in 2..=4 {
        for n in d + 1..=8 {
            let gale: BTreeSet<Vec<usize>> = gale_facets(d, n).unwrap().into_iter().collect();
            let standard = CyclicSpec::standard(d, n).unwrap();
            let other = CyclicSpec::new(d, (0..n).map(|i| frac(i as i64 * i as i64 - 7, 3)).collect()).unwrap();
            for spec in [standard, other] {
                t.check(geometric_facets(&spec) == gale, || format!("d={d} n={n}: geometric facets"));
            }
        }
    }
    let mut r = common::rng(7);
    for case in 0..50 {
        let d = 3 + case % 3;
        let n = r.gen_range(d + 2..=10);
        let p = common::polytope(&mut r, n, d);
        if !p.is_simplicial() {
            continue;
        }
        let ub = upper_bound_check(&p).unwrap();
        t.check(ub.ok(), || format!("case {case}: upper bound f={:?}", ub.f));
        let lb = lower_bound_check(&p).unwrap();
        t.check(lb.ok(), || format!("case {case}: lower bound f={:?}", lb.f));
    }
    t.finish("7 Cyclic polytopes and UBT");
}

fn farkas_instance(r: &mut ChaCha8Rng, version: usize) -> FarkasProblem {
    let d = r.gen_range(1..=3);
    let n = r.gen_range(1..=4);
    let z = common::small_int_vec(r, d, 4);
    match version {
        0 => FarkasProblem::I { a: common::int_matrix(r, d, n, 4), z },
        1 => FarkasProblem::II { a: common::int_matrix(r, d, n, 4), z },
        2 => FarkasProblem::III { a: common::int_matrix(r, d, n, 4), z },
        _ => {
            let q = r.gen_range(0..=2);
            let v = if q == 0 { Vec::new() } else { common::int_matrix(r, d, q, 4) };
            FarkasProblem::IV { y: common::int_matrix(r, d, n, 4), v, z }
        }
    }
}

fn centerpoint_case(t: &mut Tally, label: &str, s: &[Vector]) {
    let c = centerpoint(s).unwrap();
    t.check(verify_centerpoint(&c, s).unwrap(), || format!("{label}: {c:?} fails verification"));
    if s[0].len() == 2 {
        let depth = common::depth_2d(&c, s);
        t.check(depth * 3 >= s.len() && tukey_depth(&c, s).unwrap() == depth, || {
            format!("{label}: sweep depth {depth}")
        });
    }
}

#[test]
fn c08_classics() {
    let mut t = Tally::new();
    let mut r = common::rng(8);
    for case in 0..200 {
        let d = r.gen_range(1..=4);
        let q = r.gen_range(1..=10);
        let points = if case % 5 == 0 {
            // Points in a lower-dimensional flat.
            let base = common::points(&mut r, 2.min(q), d);
            (0..q).map(|_| common::convex_combination(&mut r, &base)).collect()
        } else {
            common::points(&mut r, q, d)
        };
        let weights: Vec<Scalar> = (0..q).map(|_| int(r.gen_range(0..=5))).collect();
        let total: Scalar = weights.iter().sum();
        let weights: Vec<Scalar> = if total.is_zero() {
            vec![frac(1, q as i64); q]
        } else {
            weights.iter().map(|w| w / &total).collect()
        };
        let cc = ConvexCombination { points, weights };
        let b = cc.evaluate();
        let red = caratheodory_reduce(&b, &cc).unwrap();
        let daff = affine_dimension(&red.points).unwrap();
        let orig_daff = affine_dimension(&cc.points).unwrap();
        t.check(
            red.is_convex()
                && red.evaluate() == b
                && red.points.len() as i64 <= daff + 1
                && red.points.len() as i64 <= orig_daff + 1
                && red.points.iter().all(|p| cc.points.contains(p)),
            || format!("caratheodory case {case}"),
        );
    }
    for case in 0..200 {
        let m = r.gen_range(1..=4);
        let n = r.gen_range(m + 2..=m + 4);
        let x = common::points(&mut r, n, m);
        let rp = radon_partition(&x).unwrap();
        let first: Vec<Vector> = rp.first.iter().map(|&i| x[i].clone()).collect();
        let second: Vec<Vector> = rp.second.iter().map(|&i| x[i].clone()).collect();
        let disjoint = rp.first.iter().all(|i| !rp.second.contains(i)) && rp.first.len() + rp.second.len() == n;
        t.check(
            disjoint
                && rp.first_combination.is_convex()
                && rp.second_combination.is_convex()
                && rp.first_combination.points == first
                && rp.second_combination.points == second
                && rp.first_combination.evaluate() == rp.witness
                && rp.second_combination.evaluate() == rp.witness
                && VRep::from_points(m, first).unwrap().contains(&rp.witness)
                && VRep::from_points(m, second).unwrap().contains(&rp.witness),
            || format!("radon case {case}"),
        );
    }
    for version in 0..4 {
        let mut kinds = [0usize; 2];
        for case in 0..100 {
            let p = farkas_instance(&mut r, version);
            let cert = farkas(&p).unwrap();
            let primal = common::farkas_primal_system(&p).solve().is_feasible();
            let dual = common::farkas_dual_system(&p).solve().is_feasible();
            let is_primal = matches!(cert, FarkasCertificate::Primal { .. });
            kinds[usize::from(!is_primal)] += 1;
            t.check(verify_farkas(&p, &cert) && primal != dual && primal == is_primal, || {
                format!("farkas {} case {case}: primal {primal} dual {dual} cert {cert:?}", p.version())
            });
            if let FarkasProblem::II { a, z } = &p {
                let gens = convexkit::exact::transpose(a);
                t.check(common::cone_member(&gens, z) == is_primal, || format!("farkas II case {case}: cone membership"));
            }
        }
        t.check(kinds[0] > 0 && kinds[1] > 0, || format!("farkas version {version}: only one alternative seen"));
    }
    for case in 0..50 {
        let m = r.gen_range(1..=3);
        let hidden = common::small_int_vec(&mut r, m, 10);
        let count = r.gen_range(m + 2..=m + 4);
        let family: Vec<HRep> = (0..count)
            .map(|_| {
                let mut h = HRep::new(m);
                for _ in 0..r.gen_range(1..=3) {
                    let a = common::nonzero_int_vec(&mut r, m, 5);
                    let slack = int(r.gen_range(0..=3));
                    h.le(a.clone(), dot(&a, &hidden) + slack).unwrap();
                }
                h
            })
            .collect();
        let rep = helly_check(&family, m).unwrap();
        let witness_ok = rep.witness.as_ref().is_some_and(|w| family.iter().all(|h| h.contains(w)));
        t.check(rep.hypothesis_holds && witness_ok && rep.consistent(), || format!("helly case {case}"));
    }
    for case in 0..30 {
        let n = r.gen_range(3..=10);
        let s = common::points(&mut r, n, 2);
        centerpoint_case(&mut t, &format!("centerpoint case {case}"), &s);
    }
    let hexagon = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, 1]), ints(&[-1, 0]), ints(&[0, -1]), ints(&[1, -1])];
    centerpoint_case(&mut t, "hexagon", &hexagon);
    let c = centerpoint(&hexagon).unwrap();
    t.check(c == ints(&[0, 0]), || format!("hexagon centerpoint {c:?}"));
    let collinear: Vec<Vector> = (0..7).map(|i| ints(&[i, 2 * i + 1])).collect();
    centerpoint_case(&mut t, "collinear", &collinear);
    t.finish("8 Classics");
}

fn delaunay_suite(t: &mut Tally, label: &str, sites: &[Vector]) {
    let a = delaunay_paraboloid(sites, false).unwrap();
    let b = delaunay_sphere(sites, false).unwrap();
    t.check(a == b, || format!("{label}: routes differ"));
    t.check(empty_circumsphere_check(&a).unwrap(), || format!("{label}: circumsphere not empty"));
    t.check(independent_empty_spheres(&a), || format!("{label}: direct circumsphere test"));
    if a.dim() == 2 {
        let (v, e, f) = (sites.len() as i64, a.edges().unwrap().len() as i64, a.cells.len() as i64);
        t.check(v - e + f == 1, || format!("{label}: v-e+f={}", v - e + f));
    }
    let rep = voronoi_from_delaunay_duality(sites).unwrap();
    t.check(rep.agrees(), || format!("{label}: cells {:?} adjacency {:?}", rep.cell_mismatches, rep.adjacency_mismatches));
    let d = a.dim();
    let cell_centers: BTreeSet<Vector> = a
        .cells
        .iter()
        .map(|c| convexkit::delvor::circumcenter(&c.iter().map(|&i| sites[i].clone()).collect::<Vec<_>>()).unwrap())
        .collect();
    let vertex_set: BTreeSet<Vector> = rep.vertices.iter().map(|(v, _)| v.clone()).collect();
    t.check(vertex_set == cell_centers, || format!("{label}: Voronoi vertices are not the circumcenters"));
    for (v, _) in &rep.vertices {
        let dist: Vec<Scalar> = sites.iter().map(|s| norm_sq(&sub(s, v))).collect();
        let min = dist.iter().min().unwrap();
        let nearest = dist.iter().filter(|x| *x == min).count();
        t.check(nearest == d + 1, || format!("{label}: vertex {v:?} is nearest to {nearest} sites"));
    }
    // Unbounded cells are exactly the cells of hull sites.
    let hull = Polytope::from_points(d, sites.to_vec()).unwrap();
    for (i, cell) in rep.bisector_cells.iter().enumerate() {
        let unbounded = !h_to_v(cell).unwrap().rays.is_empty();
        let on_hull = hull.h.ineqs.iter().any(|row| row.eval(&sites[i]).is_zero());
        t.check(unbounded == on_hull, || format!("{label}: site {i} unbounded={unbounded} on_hull={on_hull}"));
    }
}

/// Circumsphere emptiness computed by solving for each center directly.
fn independent_empty_spheres(c: &DelaunayComplex) -> bool {
    c.cells.iter().all(|cell| {
        let p0 = &c.sites[cell[0]];
        let rows: Vec<Vector> = cell[1..].iter().map(|&i| sub(&c.sites[i], p0).iter().map(|x| x * int(2)).collect()).collect();
        let rhs: Vec<Scalar> = cell[1..].iter().map(|&i| norm_sq(&c.sites[i]) - norm_sq(p0)).collect();
        let Ok(Some(center)) = convexkit::exact::solve_linear(&rows, &rhs) else { return false };
        let r2 = norm_sq(&sub(p0, &center));
        c.sites.iter().enumerate().all(|(i, s)| {
            let dist = norm_sq(&sub(s, &center));
            if cell.contains(&i) { dist == r2 } else { dist > r2 }
        })
    })
}

#[test]
fn c09_delaunay_voronoi() {
    let mut t = Tally::new();
    let mut r = common::rng(9);
    for case in 0..100 {
        let n = r.gen_range(3..=12);
        let sites = common::general_position_sites(&mut r, n, 2);
        delaunay_suite(&mut t, &format!("planar case {case}"), &sites);
    }
    let sites = common::general_position_sites(&mut r, 8, 3);
    delaunay_suite(&mut t, "spatial case", &sites);
    t.finish("9 Delaunay and Voronoi");
}

#[test]
fn c10_stereographic() {
    let mut t = Tally::new();
    let mut r = common::rng(10);
    for case in 0..100 {
        let d = 1 + case % 3;
        let x = common::point(&mut r, d);
        let z = stereo_tau(&x);
        t.check(norm_sq(&z) == int(1) && z != north_pole(d), || format!("case {case}: tau off the sphere"));
        t.check(stereo_sigma(&z).unwrap() == x, || format!("case {case}: sigma(tau(x)) != x"));

        let mut a = common::small_int_vec(&mut r, d + 1, 5);
        if convexkit::exact::is_zero_vec(&a) {
            a[d] = int(1);
        }
        let b = if case % 4 == 0 { -a[d].clone() } else { int(r.gen_range(-5..=5)) };
        let img = stereo_sphere_image(&a, &b).unwrap();
        let plane = dot(&a, &z) + &b;
        let n1 = norm_sq(&x) + int(1);
        let expect = match &img {
            StereoImage::Sphere { .. } => (&a[d] + &b) * img.eval(&x) / &n1,
            StereoImage::Hyperplane { .. } => int(2) * img.eval(&x) / &n1,
        };
        t.check(plane == expect, || format!("case {case}: image formula"));
        t.check(matches!(img, StereoImage::Hyperplane { .. }) == (&a[d] + &b).is_zero(), || format!("case {case}: image kind"));
        let (a2, b2) = stereo_sphere_preimage(&img);
        let mut h1 = a.clone();
        h1.push(b.clone());
        let mut h2 = a2;
        h2.push(b2);
        let same = ray_normal_form(&h1) == ray_normal_form(&h2)
            || ray_normal_form(&h1) == ray_normal_form(&h2.iter().map(|v| -v).collect::<Vec<_>>());
        t.check(same, || format!("case {case}: preimage round trip"));

        let lhs = theta_map(&stereo_tau_homogeneous(&x), Direction::Forward).unwrap();
        let rhs = lift_paraboloid_homogeneous(&x);
        let ratio = &lhs[d + 1] / &rhs[d + 1];
        t.check(
            ratio.is_positive() && lhs.iter().zip(&rhs).all(|(u, v)| u == &(v * &ratio)),
            || format!("case {case}: theta chain"),
        );
        let back = theta_map(&lhs, Direction::Inverse).unwrap();
        t.check(back == stereo_tau_homogeneous(&x), || format!("case {case}: theta inverse"));
    }
    t.finish("10 Stereographic identities");
}
