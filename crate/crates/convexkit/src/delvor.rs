//! Voronoi diagrams and Delaunay complexes through lifting to the paraboloid
//! and to the sphere.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::complexes::SimplicialComplex;
use crate::error::{check_dim, Error, Result};
use crate::exact::{affine_dimension, determinant, dot, norm_sq, scale, solve_linear, sub, Scalar, Vector};
use crate::polyhedra::{h_to_v, make_irredundant, v_to_h, HRep, HRow, VRep};

fn check_sites(sites: &[Vector]) -> Result<usize> {
    let d = sites.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no sites".into()))?;
    for s in sites {
        check_dim(d, s.len())?;
    }
    let distinct: BTreeSet<&Vector> = sites.iter().collect();
    if distinct.len() != sites.len() {
        return Err(Error::InvalidInput("sites must be pairwise distinct".into()));
    }
    Ok(d)
}

/// The closed halfspace `H(a, b)` of points at least as close to `a` as to `b`:
/// `(b − a)·x ≤ (‖b‖² − ‖a‖²)/2`.
pub fn bisector(a: &[Scalar], b: &[Scalar]) -> Result<HRow> {
    check_dim(a.len(), b.len())?;
    if a == b {
        return Err(Error::InvalidInput("bisector of a point with itself".into()));
    }
    let rhs = (norm_sq(b) - norm_sq(a)) / Scalar::from_integer(2.into());
    Ok(HRow::new(rhs, sub(a, b)))
}

/// `V(p_i)`, the intersection of `H(p_i, p_j)` over `j ≠ i`, made irredundant.
pub fn voronoi_cell(i: usize, sites: &[Vector]) -> Result<HRep> {
    let d = check_sites(sites)?;
    if i >= sites.len() {
        return Err(Error::InvalidInput(format!("site index {i} out of range")));
    }
    let mut h = HRep::new(d);
    for (j, q) in sites.iter().enumerate() {
        if j != i {
            h.push_ineq(bisector(&sites[i], q)?)?;
        }
    }
    make_irredundant(&h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiDiagram {
    pub dim: usize,
    pub cells: Vec<HRep>,
}

impl VoronoiDiagram {
    /// Indices of the cells containing `x`.
    pub fn locate(&self, x: &[Scalar]) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].contains(x)).collect()
    }
}

pub fn voronoi_diagram(sites: &[Vector]) -> Result<VoronoiDiagram> {
    let dim = check_sites(sites)?;
    let cells = (0..sites.len()).map(|i| voronoi_cell(i, sites)).collect::<Result<_>>()?;
    Ok(VoronoiDiagram { dim, cells })
}

/// `(x, ‖x‖²)`.
pub fn lift_paraboloid(x: &[Scalar]) -> Vector {
    let mut out = x.to_vec();
    out.push(norm_sq(x));
    out
}

/// `(x, ‖x‖², 1)`.
pub fn lift_paraboloid_homogeneous(x: &[Scalar]) -> Vector {
    let mut out = lift_paraboloid(x);
    out.push(Scalar::one());
    out
}

/// Stereographic projection from the north pole: `(x, x_{d+1}) ↦ x/(1 − x_{d+1})`.
pub fn stereo_sigma(z: &[Scalar]) -> Result<Vector> {
    let (last, head) = z.split_last().ok_or_else(|| Error::InvalidInput("empty point".into()))?;
    let denom = Scalar::one() - last;
    if denom.is_zero() {
        return Err(Error::InvalidInput("the north pole has no image".into()));
    }
    Ok(scale(head, &denom.recip()))
}

/// Inverse stereographic projection `x ↦ (2x, ‖x‖² − 1)/(‖x‖² + 1)`.
pub fn stereo_tau(x: &[Scalar]) -> Vector {
    let n2 = norm_sq(x);
    let denom = (&n2 + Scalar::one()).recip();
    let mut out: Vector = x.iter().map(|xi| Scalar::from_integer(2.into()) * xi * &denom).collect();
    out.push((n2 - Scalar::one()) * denom);
    out
}

/// `(2x, ‖x‖² − 1, ‖x‖² + 1)`, the homogeneous form of [`stereo_tau`].
pub fn stereo_tau_homogeneous(x: &[Scalar]) -> Vector {
    let n2 = norm_sq(x);
    let mut out: Vector = x.iter().map(|xi| xi * Scalar::from_integer(2.into())).collect();
    out.push(&n2 - Scalar::one());
    out.push(n2 + Scalar::one());
    out
}

pub fn north_pole(d: usize) -> Vector {
    let mut n = vec![Scalar::zero(); d + 1];
    n[d] = Scalar::one();
    n
}

/// A sphere `‖X‖² + linear·X + constant = 0` or a hyperplane `a·X + b = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StereoImage {
    Sphere { linear: Vector, constant: Scalar },
    Hyperplane { a: Vector, b: Scalar },
}

impl StereoImage {
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        match self {
            StereoImage::Sphere { linear, constant } => norm_sq(x) + dot(linear, x) + constant,
            StereoImage::Hyperplane { a, b } => dot(a, x) + b,
        }
    }
}

/// Image under `σ_N` of the hyperplane `a·x + b = 0` of `E^{d+1}`.
pub fn stereo_sphere_image(a: &[Scalar], b: &Scalar) -> Result<StereoImage> {
    let (ad1, head) = a.split_last().ok_or_else(|| Error::InvalidInput("empty hyperplane".into()))?;
    if a.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("zero normal".into()));
    }
    let s = ad1 + b;
    if s.is_zero() {
        return Ok(StereoImage::Hyperplane {
            a: head.to_vec(),
            b: -ad1.clone(),
        });
    }
    let two = Scalar::from_integer(2.into());
    Ok(StereoImage::Sphere {
        linear: head.iter().map(|ai| &two * ai / &s).collect(),
        constant: -(ad1 - b) / &s,
    })
}

/// The hyperplane `(a, b)` of `E^{d+1}` whose `σ_N` image is the given sphere or
/// hyperplane; the inverse of [`stereo_sphere_image`] up to scaling.
pub fn stereo_sphere_preimage(img: &StereoImage) -> (Vector, Scalar) {
    let half = Scalar::new(1.into(), 2.into());
    match img {
        StereoImage::Sphere { linear, constant } => {
            let mut a: Vector = linear.iter().map(|c| c * &half).collect();
            a.push((Scalar::one() - constant) * &half);
            (a, (Scalar::one() + constant) * half)
        }
        StereoImage::Hyperplane { a, b } => {
            let mut out = a.clone();
            out.push(-b.clone());
            (out, b.clone())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    /// `x_1² + … + x_{d+1}² = x_{d+2}²`.
    Sphere,
    /// `x_1² + … + x_d² = x_{d+1} x_{d+2}`.
    Paraboloid,
}

/// Tangent hyperplane at a homogeneous point `a` (length `d+2`) on the surface.
pub fn tangent_hyperplane(surface: Surface, a: &[Scalar]) -> Result<Vector> {
    let m = a.len();
    if m < 3 {
        return Err(Error::InvalidInput("need at least three homogeneous coordinates".into()));
    }
    match surface {
        Surface::Sphere => {
            if norm_sq(&a[..m - 1]) != &a[m - 1] * &a[m - 1] {
                return Err(Error::InvalidInput("point is not on the sphere".into()));
            }
            let mut h = a.to_vec();
            h[m - 1] = -a[m - 1].clone();
            Ok(h)
        }
        Surface::Paraboloid => {
            if norm_sq(&a[..m - 2]) != &a[m - 2] * &a[m - 1] {
                return Err(Error::InvalidInput("point is not on the paraboloid".into()));
            }
            let two = Scalar::from_integer(2.into());
            let mut h: Vector = a[..m - 2].iter().map(|x| x * &two).collect();
            h.push(-a[m - 1].clone());
            h.push(-a[m - 2].clone());
            Ok(h)
        }
    }
}

/// The standard in-sphere determinant with rows `(p, ‖p‖², 1)`.
pub fn insphere_determinant(points: &[Vector]) -> Result<Scalar> {
    let rows: Vec<Vector> = points.iter().map(|p| {
        let mut r = lift_paraboloid(p);
        r.push(Scalar::one());
        r
    }).collect();
    determinant(&rows)
}

fn subsets(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            let go = rec(i + 1, n, k, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, n, k, &mut Vec::new(), &mut f);
}

/// No `d + 2` sites lie on a common sphere (or hyperplane).
pub fn general_position_check(sites: &[Vector]) -> Result<bool> {
    let d = check_sites(sites)?;
    let mut ok = true;
    subsets(sites.len(), d + 2, |s| {
        let pts: Vec<Vector> = s.iter().map(|&i| sites[i].clone()).collect();
        match insphere_determinant(&pts) {
            Ok(det) if det.is_zero() => {
                ok = false;
                false
            }
            _ => true,
        }
    });
    Ok(ok)
}

/// A Delaunay subdivision: cells as sorted site-index sets. Cells are
/// simplices unless built from degenerate input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelaunayComplex {
    pub sites: Vec<Vector>,
    pub cells: Vec<Vec<usize>>,
    pub simplicial: bool,
}

impl DelaunayComplex {
    pub fn new(sites: Vec<Vector>, cells: Vec<Vec<usize>>) -> Result<Self> {
        let d = check_sites(&sites)?;
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        if cells.iter().flatten().any(|&i| i >= sites.len()) {
            return Err(Error::InvalidInput("cell refers to a missing site".into()));
        }
        cells.sort();
        let simplicial = cells.iter().all(|c| c.len() == d + 1);
        Ok(DelaunayComplex { sites, cells, simplicial })
    }

    pub fn dim(&self) -> usize {
        self.sites[0].len()
    }

    pub fn to_simplicial_complex(&self) -> Result<SimplicialComplex> {
        if !self.simplicial {
            return Err(Error::NotSimplicial("degenerate Delaunay subdivision".into()));
        }
        SimplicialComplex::from_facets(self.sites.len(), self.cells.clone())?.with_coords(self.sites.clone())
    }

    /// Pairs of sites joined by an edge of some cell. For simplicial cells this is
    /// every pair; for polyhedral cells only pairs adjacent on the cell boundary.
    pub fn edges(&self) -> Result<BTreeSet<(usize, usize)>> {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            if c.len() == self.dim() + 1 {
                for (x, &i) in c.iter().enumerate() {
                    for &j in &c[x + 1..] {
                        out.insert((i, j));
                    }
                }
            } else {
                let pts: Vec<Vector> = c.iter().map(|&i| self.sites[i].clone()).collect();
                let p = crate::polyhedra::Polytope::from_points(self.dim(), pts.clone())?;
                let l = crate::polyhedra::face_lattice(&p.h, &p.v)?;
                for e in l.faces_of_dim(1) {
                    let a = c[pts.iter().position(|q| *q == l.vertices[e.vertices[0]]).expect("vertex of cell")];
                    let b = c[pts.iter().position(|q| *q == l.vertices[e.vertices[1]]).expect("vertex of cell")];
                    out.insert((a.min(b), a.max(b)));
                }
            }
        }
        Ok(out)
    }
}

fn delaunay_gate(sites: &[Vector], allow_degenerate: bool) -> Result<usize> {
    let d = check_sites(sites)?;
    if affine_dimension(sites)? != d as i64 {
        return Err(Error::Degenerate("sites do not affinely span the space".into()));
    }
    if !allow_degenerate && !general_position_check(sites)? {
        return Err(Error::Degenerate(
            "sites are not in general position (run general_position_check, or allow degenerate input)".into(),
        ));
    }
    Ok(d)
}

fn tight_sets(h: &HRep, points: &[Vector], keep: impl Fn(&HRow) -> bool) -> Vec<Vec<usize>> {
    h.ineqs
        .iter()
        .filter(|r| keep(r))
        .map(|r| (0..points.len()).filter(|&i| r.eval(&points[i]).is_zero()).collect())
        .collect()
}

/// Lower facets of `conv(l(S)) + cone(e_{d+1})`, projected to the sites.
pub fn delaunay_paraboloid(sites: &[Vector], allow_degenerate: bool) -> Result<DelaunayComplex> {
    let d = delaunay_gate(sites, allow_degenerate)?;
    let lifted: Vec<Vector> = sites.iter().map(|s| lift_paraboloid(s)).collect();
    let up = {
        let mut e = vec![Scalar::zero(); d + 1];
        e[d] = Scalar::one();
        e
    };
    let h = v_to_h(&VRep::new(d + 1, lifted.clone(), vec![up])?)?;
    let cells = tight_sets(&h, &lifted, |r| r.a[d].is_positive());
    DelaunayComplex::new(sites.to_vec(), cells)
}

/// Facets of `conv(τ_N(S) ∪ {N})` avoiding the north pole, pulled back by `σ_N`.
pub fn delaunay_sphere(sites: &[Vector], allow_degenerate: bool) -> Result<DelaunayComplex> {
    let d = delaunay_gate(sites, allow_degenerate)?;
    let mut pts: Vec<Vector> = sites.iter().map(|s| stereo_tau(s)).collect();
    let n = north_pole(d);
    pts.push(n.clone());
    let h = v_to_h(&VRep::from_points(d + 1, pts.clone())?)?;
    let cells = tight_sets(&h, &pts, |r| !r.eval(&n).is_zero());
    DelaunayComplex::new(sites.to_vec(), cells)
}

/// Circumcenter of `d + 1` affinely independent points in `E^d`.
pub fn circumcenter(points: &[Vector]) -> Result<Vector> {
    let p0 = points.first().ok_or_else(|| Error::InvalidInput("no points".into()))?;
    let two = Scalar::from_integer(2.into());
    let rows: Vec<Vector> = points[1..].iter().map(|p| scale(&sub(p, p0), &two)).collect();
    let rhs: Vector = points[1..].iter().map(|p| norm_sq(p) - norm_sq(p0)).collect();
    if rows.len() != p0.len() {
        return Err(Error::Degenerate("cell is not a full simplex".into()));
    }
    solve_linear(&rows, &rhs)?
        .filter(|_| affine_dimension(points).ok() == Some(p0.len() as i64))
        .ok_or_else(|| Error::Degenerate("cell is not affinely independent".into()))
}

/// Every cell's circumsphere passes through its own vertices and has no other
/// site inside it (nor on it, for simplicial complexes).
pub fn empty_circumsphere_check(c: &DelaunayComplex) -> Result<bool> {
    let d = c.dim();
    for cell in &c.cells {
        let pts: Vec<Vector> = cell.iter().map(|&i| c.sites[i].clone()).collect();
        let mut basis = None;
        subsets(pts.len(), d + 1, |s| {
            let sub: Vec<Vector> = s.iter().map(|&i| pts[i].clone()).collect();
            if affine_dimension(&sub).ok() == Some(d as i64) {
                basis = Some(sub);
                false
            } else {
                true
            }
        });
        let basis = basis.ok_or_else(|| Error::Degenerate("cell is not affinely independent".into()))?;
        let center = circumcenter(&basis)?;
        let r2 = norm_sq(&sub(&basis[0], &center));
        for (i, s) in c.sites.iter().enumerate() {
            let dist = norm_sq(&sub(s, &center));
            let on_cell = cell.binary_search(&i).is_ok();
            if on_cell && dist != r2 {
                return Ok(false);
            }
            if !on_cell && (dist < r2 || (c.simplicial && dist == r2)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct VoronoiDualityReport {
    pub delaunay: DelaunayComplex,
    pub bisector_cells: Vec<HRep>,
    pub tangent_cells: Vec<HRep>,
    /// Sites whose two cells differ.
    pub cell_mismatches: Vec<usize>,
    /// Pairs that are Delaunay edges or Voronoi neighbors, but not both.
    pub adjacency_mismatches: Vec<(usize, usize)>,
    /// Bounded Voronoi vertices with their nearest sites.
    pub vertices: Vec<(Vector, Vec<usize>)>,
}

impl VoronoiDualityReport {
    pub fn agrees(&self) -> bool {
        self.cell_mismatches.is_empty() && self.adjacency_mismatches.is_empty()
    }

    /// Every bounded Voronoi vertex is nearest to exactly `d + 1` sites.
    pub fn simple_vertices(&self) -> bool {
        let d = self.delaunay.dim();
        self.vertices.iter().all(|(_, near)| near.len() == d + 1)
    }
}

/// Sites at minimum distance from `x`.
pub fn nearest_sites(x: &[Scalar], sites: &[Vector]) -> Vec<usize> {
    let dists: Vec<Scalar> = sites.iter().map(|s| norm_sq(&sub(s, x))).collect();
    let min = dists.iter().min().cloned().unwrap_or_default();
    (0..sites.len()).filter(|&i| dists[i] == min).collect()
}

/// The halfspace of `E^d` cut out by the tangent hyperplanes to the paraboloid at
/// `l̃(p)` and `l̃(q)`, on the side of `p`.
fn tangent_halfspace(p: &[Scalar], q: &[Scalar]) -> Result<HRow> {
    let d = p.len();
    let tp = tangent_hyperplane(Surface::Paraboloid, &lift_paraboloid_homogeneous(p))?;
    let tq = tangent_hyperplane(Surface::Paraboloid, &lift_paraboloid_homogeneous(q))?;
    // Eliminate x_{d+1}, then dehomogenize x_{d+2} = 1.
    let diff = sub(&tq, &tp);
    debug_assert!(diff[d].is_zero());
    let row = HRow::new(diff[d + 1].clone(), diff[..d].to_vec());
    Ok(if row.eval(p).is_negative() {
        HRow::new(-row.b, row.a.iter().map(|x| -x).collect())
    } else {
        row
    })
}

/// Builds every Voronoi cell from bisectors and again from tangent hyperplanes
/// of Delaunay neighbors, and compares cells and adjacency.
pub fn voronoi_from_delaunay_duality(sites: &[Vector]) -> Result<VoronoiDualityReport> {
    let d = check_sites(sites)?;
    let independent = affine_dimension(sites)? + 1 == sites.len() as i64;
    let (delaunay, edges) = if independent && sites.len() <= d {
        // Fewer than d + 1 independent sites: one lower-dimensional simplex.
        let all: Vec<usize> = (0..sites.len()).collect();
        let edges = (0..sites.len())
            .flat_map(|i| (i + 1..sites.len()).map(move |j| (i, j)))
            .collect();
        (DelaunayComplex::new(sites.to_vec(), vec![all])?, edges)
    } else {
        let del = delaunay_paraboloid(sites, false)?;
        let edges = del.edges()?;
        (del, edges)
    };
    let mut bisector_cells = Vec::new();
    let mut tangent_cells = Vec::new();
    let mut cell_mismatches = Vec::new();
    let mut voronoi_neighbors = BTreeSet::new();
    let mut vertices: Vec<(Vector, Vec<usize>)> = Vec::new();
    for i in 0..sites.len() {
        let a = voronoi_cell(i, sites)?;
        let mut t = HRep::new(d);
        for &(x, y) in &edges {
            let j = if x == i { y } else if y == i { x } else { continue };
            t.push_ineq(tangent_halfspace(&sites[i], &sites[j])?)?;
        }
        let t = make_irredundant(&t)?;
        if a.canonical_rows() != t.canonical_rows() || !a.eqs.is_empty() || !t.eqs.is_empty() {
            cell_mismatches.push(i);
        }
        for row in a.canonical_rows() {
            for j in (0..sites.len()).filter(|&j| j != i) {
                if bisector(&sites[i], &sites[j])?.normalized() == row {
                    voronoi_neighbors.insert((i.min(j), i.max(j)));
                }
            }
        }
        for v in h_to_v(&a)?.points {
            if !vertices.iter().any(|(w, _)| *w == v) {
                let near = nearest_sites(&v, sites);
                vertices.push((v, near));
            }
        }
        bisector_cells.push(a);
        tangent_cells.push(t);
    }
    let adjacency_mismatches = edges.symmetric_difference(&voronoi_neighbors).cloned().collect();
    vertices.sort();
    Ok(VoronoiDualityReport {
        delaunay,
        bisector_cells,
        tangent_cells,
        cell_mismatches,
        adjacency_mismatches,
        vertices,
    })
}
