#![allow(dead_code)]

use convexkit::classics::FarkasProblem;
use convexkit::delvor::general_position_check;
use convexkit::exact::{
    add, affine_dimension, dot, frac, int, is_zero_vec, neg, rank, scale, solve_linear, sub, transpose, unit,
    zeros, Matrix, Scalar, Vector,
};
use convexkit::feasibility::LinearSystem;
use convexkit::polyhedra::{HCone, Polytope};
use proptest::prelude::*;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(r: &mut ChaCha8Rng, range: i64, max_den: i64) -> Scalar {
    frac(r.gen_range(-range..=range), r.gen_range(1..=max_den))
}

pub fn point(r: &mut ChaCha8Rng, d: usize) -> Vector {
    (0..d).map(|_| rational(r, 1000, 7)).collect()
}

pub fn points(r: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vector> {
    (0..n).map(|_| point(r, d)).collect()
}

/// Hull of `n` random points; redrawn until full-dimensional.
pub fn polytope(r: &mut ChaCha8Rng, n: usize, d: usize) -> Polytope {
    loop {
        let p = Polytope::from_points(d, points(r, n, d)).unwrap();
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// Full-dimensional polytope with the origin strictly inside.
pub fn polytope_around_origin(r: &mut ChaCha8Rng, n: usize, d: usize) -> Polytope {
    loop {
        let p = polytope(r, n, d);
        let c = p.v.vertex_centroid().unwrap();
        let shifted: Vec<Vector> = p
            .v
            .points
            .iter()
            .map(|x| x.iter().zip(&c).map(|(a, b)| a - b).collect())
            .collect();
        let q = Polytope::from_points(d, shifted).unwrap();
        if q.strictly_contains(&vec![frac(0, 1); d]) {
            return q;
        }
    }
}

pub fn small_int_vec(r: &mut ChaCha8Rng, d: usize, range: i64) -> Vector {
    (0..d).map(|_| frac(r.gen_range(-range..=range), 1)).collect()
}

/// One pass/fail line per criterion, in a fixed format.
pub fn report(label: &str, ok: bool, detail: &str) {
    println!("[{}] {label}: {detail}", if ok { "PASS" } else { "FAIL" });
}

pub fn nonzero_int_vec(r: &mut ChaCha8Rng, d: usize, range: i64) -> Vector {
    loop {
        let v = small_int_vec(r, d, range);
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

/// A point far outside `p` in a random direction, off every facet hyperplane.
pub fn outside_point(r: &mut ChaCha8Rng, p: &Polytope) -> Vector {
    let c = p.v.vertex_centroid().unwrap();
    loop {
        let dir = nonzero_int_vec(r, p.dim(), 9);
        let x: Vector = c.iter().zip(&dir).map(|(a, b)| a + b * int(100_000)).collect();
        if !p.contains(&x) && p.h.ineqs.iter().all(|row| !row.eval(&x).is_zero()) {
            return x;
        }
    }
}

/// Random convex combination of `points`.
pub fn convex_combination(r: &mut ChaCha8Rng, points: &[Vector]) -> Vector {
    let w: Vec<Scalar> = points.iter().map(|_| int(r.gen_range(0..=5))).collect();
    let total: Scalar = w.iter().sum();
    if total.is_zero() {
        return points[0].clone();
    }
    let mut out = zeros(points[0].len());
    for (p, wi) in points.iter().zip(&w) {
        out = add(&out, &scale(p, &(wi / &total)));
    }
    out
}

/// Test points for membership: vertices, interior combinations, points just
/// past the boundary, and points of the bounding box.
pub fn sample_points(r: &mut ChaCha8Rng, vertices: &[Vector], count: usize) -> Vec<Vector> {
    let d = vertices[0].len();
    let lo: Vector = (0..d).map(|k| vertices.iter().map(|v| v[k].clone()).min().unwrap()).collect();
    let hi: Vector = (0..d).map(|k| vertices.iter().map(|v| v[k].clone()).max().unwrap()).collect();
    (0..count)
        .map(|i| match i % 4 {
            0 => vertices[r.gen_range(0..vertices.len())].clone(),
            1 => convex_combination(r, vertices),
            2 => {
                let c = convex_combination(r, vertices);
                let v = &vertices[r.gen_range(0..vertices.len())];
                let t = frac(r.gen_range(1..=20), 19);
                add(&c, &scale(&sub(v, &c), &t))
            }
            _ => (0..d)
                .map(|k| &lo[k] + (&hi[k] - &lo[k]) * frac(r.gen_range(-2..=12), 10))
                .collect(),
        })
        .collect()
}

/// Cone membership by trying every linearly independent subset of generators.
pub fn cone_member(gens: &[Vector], z: &[Scalar]) -> bool {
    if is_zero_vec(z) {
        return true;
    }
    let n = gens.len();
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let cols: Vec<Vector> = idx.iter().map(|&i| gens[i].clone()).collect();
        if rank(&cols) != cols.len() {
            continue;
        }
        let a = transpose(&cols);
        if let Ok(Some(x)) = solve_linear(&a, z) {
            if x.iter().all(|xi| !xi.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn perp(v: &[Scalar]) -> Vector {
    vec![-v[1].clone(), v[0].clone()]
}

/// Planar halfspace depth of `c` by sweeping the open arcs between critical directions.
pub fn depth_2d(c: &[Scalar], s: &[Vector]) -> usize {
    let q: Vec<Vector> = s.iter().map(|p| sub(p, c)).collect();
    let zeros_count = q.iter().filter(|v| is_zero_vec(v)).count();
    let nonzero: Vec<&Vector> = q.iter().filter(|v| !is_zero_vec(v)).collect();
    if nonzero.is_empty() {
        return zeros_count;
    }
    let mut crit: Vec<Vector> = Vec::new();
    for v in &nonzero {
        let p = perp(v);
        crit.push(neg(&p));
        crit.push(p);
    }
    let mut candidates: Vec<Vector> = crit.iter().map(|u| perp(u)).collect();
    for a in &crit {
        for b in &crit {
            let s = add(a, b);
            if !is_zero_vec(&s) {
                candidates.push(s);
            }
        }
    }
    candidates
        .iter()
        .filter(|w| nonzero.iter().all(|v| !dot(w, v).is_zero()))
        .map(|w| nonzero.iter().filter(|v| dot(w, v).is_positive()).count())
        .min()
        .unwrap()
        + zeros_count
}

/// The alternative to the primal system of a Farkas problem, with the strict
/// inequality scaled to a margin of one.
pub fn farkas_dual_system(p: &FarkasProblem) -> LinearSystem {
    match p {
        FarkasProblem::I { a, z } => {
            let d = z.len();
            let mut s = LinearSystem::new(d + 1);
            let mut row = z.clone();
            row.push(int(-1));
            s.le(row, int(-1));
            for col in transpose(a) {
                let mut row = col;
                row.push(int(-1));
                s.ge(row, int(0));
            }
            s
        }
        FarkasProblem::II { a, z } => {
            let mut s = LinearSystem::new(z.len());
            s.le(z.clone(), int(-1));
            for col in transpose(a) {
                s.ge(col, int(0));
            }
            s
        }
        FarkasProblem::III { a, z } => {
            let d = z.len();
            let mut s = LinearSystem::new(d);
            for i in 0..d {
                s.ge(unit(d, i), int(0));
            }
            for col in transpose(a) {
                s.equal(col, int(0));
            }
            s.le(z.clone(), int(-1));
            s
        }
        FarkasProblem::IV { y, v, z } => {
            let d = z.len();
            let mut s = LinearSystem::new(d + 1);
            let mut row = z.clone();
            row.push(int(-1));
            s.le(row, int(-1));
            for col in transpose(y) {
                let mut row = col;
                row.push(int(-1));
                s.ge(row, int(0));
            }
            if !v.is_empty() {
                for col in transpose(v) {
                    let mut row = col;
                    row.push(int(0));
                    s.ge(row, int(0));
                }
            }
            s
        }
    }
}

/// The primal system of a Farkas problem, built independently of the library.
pub fn farkas_primal_system(p: &FarkasProblem) -> LinearSystem {
    let nonneg = |s: &mut LinearSystem, n: usize| {
        for i in 0..n {
            s.ge(unit(n, i), int(0));
        }
    };
    match p {
        FarkasProblem::I { a, z } | FarkasProblem::II { a, z } => {
            let n = a[0].len();
            let mut s = LinearSystem::new(n);
            nonneg(&mut s, n);
            for (row, zi) in a.iter().zip(z) {
                s.equal(row.clone(), zi.clone());
            }
            if matches!(p, FarkasProblem::I { .. }) {
                s.equal(vec![int(1); n], int(1));
            }
            s
        }
        FarkasProblem::III { a, z } => {
            let mut s = LinearSystem::new(a[0].len());
            for (row, zi) in a.iter().zip(z) {
                s.le(row.clone(), zi.clone());
            }
            s
        }
        FarkasProblem::IV { y, v, z } => {
            let (py, qv) = (y[0].len(), v.first().map_or(0, Vec::len));
            let n = py + qv;
            let mut s = LinearSystem::new(n);
            nonneg(&mut s, n);
            for k in 0..z.len() {
                let mut row = y[k].clone();
                if qv > 0 {
                    row.extend(v[k].iter().cloned());
                }
                s.equal(row, z[k].clone());
            }
            let mut ones = vec![int(1); py];
            ones.extend(zeros(qv));
            s.equal(ones, int(1));
            s
        }
    }
}

/// Random `rows × cols` integer matrix.
pub fn int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, range: i64) -> Matrix {
    (0..rows).map(|_| small_int_vec(r, cols, range)).collect()
}

/// Points in general position (no `d + 2` on a common sphere), with distinct coordinates.
pub fn general_position_sites(r: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vector> {
    loop {
        let s: Vec<Vector> = (0..n).map(|_| small_int_vec(r, d, 60)).collect();
        let mut sorted = s.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == n
            && affine_dimension(&s).unwrap() == d as i64
            && general_position_check(&s).unwrap()
        {
            return s;
        }
    }
}

pub fn nonneg_combination(r: &mut ChaCha8Rng, gens: &[Vector], d: usize) -> Vector {
    let mut x = zeros(d);
    for g in gens {
        let w = int(r.gen_range(0..=4));
        x = add(&x, &scale(g, &w));
    }
    x
}

/// Interval `{t : z + t e_k ∈ C}` is nonempty, for `C = {x : u·x ≤ 0}`.
pub fn fiber_nonempty(c: &HCone, z: &[Scalar], k: usize) -> bool {
    let (mut lo, mut hi): (Option<Scalar>, Option<Scalar>) = (None, None);
    for u in &c.normals {
        let s = dot(u, z);
        if u[k].is_zero() {
            if s.is_positive() {
                return false;
            }
        } else {
            let bound = -&s / &u[k];
            if u[k].is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => l <= h,
        _ => true,
    }
}

pub fn rat() -> impl Strategy<Value = Scalar> {
    (-60i64..=60, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

pub fn rat_vec(d: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(rat(), d)
}
