//! Simplicial and polyhedral complexes: stars, links, boundaries, shellings,
//! f- and h-vectors, Euler characteristics and Dehn–Sommerville relations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exact::{affine_dimension, binomial, dot, perturbation_vector, sub, Scalar, Vector};
use crate::feasibility::LinearSystem;
use crate::polyhedra::{face_lattice, FaceLattice, Polytope};

/// A simplicial complex on vertices `0..n_vertices`, stored as its nonempty faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub n_vertices: usize,
    pub faces: BTreeSet<Vec<usize>>,
    pub coords: Option<Vec<Vector>>,
}

fn subsets(face: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let k = face.len();
    (1u64..(1u64 << k)).map(move |mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| face[i]).collect())
}

fn sorted(mut s: Vec<usize>) -> Vec<usize> {
    s.sort_unstable();
    s.dedup();
    s
}

impl SimplicialComplex {
    /// The complex generated by `facets` (closure under subsets).
    pub fn from_facets(n_vertices: usize, facets: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut faces = BTreeSet::new();
        for f in facets {
            let f = sorted(f);
            if let Some(&v) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidInput(format!("vertex {v} out of range")));
            }
            if f.len() > 63 {
                return Err(Error::InvalidInput("face too large".into()));
            }
            if faces.contains(&f) {
                continue;
            }
            faces.extend(subsets(&f));
        }
        Ok(SimplicialComplex {
            n_vertices,
            faces,
            coords: None,
        })
    }

    /// A family of faces taken as given, without closing it.
    pub fn from_faces(n_vertices: usize, faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        SimplicialComplex {
            n_vertices,
            faces: faces.into_iter().map(sorted).filter(|f| !f.is_empty()).collect(),
            coords: None,
        }
    }

    pub fn with_coords(mut self, coords: Vec<Vector>) -> Result<Self> {
        check_dim(self.n_vertices, coords.len())?;
        if let Some(first) = coords.first() {
            for c in &coords {
                check_dim(first.len(), c.len())?;
            }
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Largest face cardinality minus one; −1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.faces.iter().map(|f| f.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        face.is_empty() || self.faces.contains(&sorted(face.to_vec()))
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut by_size: Vec<&Vec<usize>> = self.faces.iter().collect();
        by_size.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut covered: HashSet<Vec<usize>> = HashSet::new();
        for f in by_size {
            if covered.contains(f) {
                continue;
            }
            out.push(f.clone());
            for s in subsets(f) {
                covered.insert(s);
            }
        }
        out.sort();
        out
    }

    pub fn is_pure(&self) -> bool {
        let f = self.facets();
        f.iter().all(|x| x.len() == f[0].len())
    }

    /// `(f_{−1}, f_0, …, f_dim)` with `f_{−1} = 1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; (self.dim() + 2).max(1) as usize];
        f[0] = 1;
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    fn is_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            (0..f.len()).all(|i| {
                let mut g = f.clone();
                g.remove(i);
                g.is_empty() || self.faces.contains(&g)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexValidity {
    pub closed: bool,
    /// `None` when no coordinates are attached.
    pub geometric: Option<bool>,
    pub detail: String,
}

impl ComplexValidity {
    pub fn is_valid(&self) -> bool {
        self.closed && self.geometric != Some(false)
    }
}

/// Closure under subsets and, with coordinates, disjointness of the relative
/// interiors of distinct realized faces.
pub fn validate_complex(k: &SimplicialComplex) -> ComplexValidity {
    if !k.is_closed() {
        return ComplexValidity {
            closed: false,
            geometric: None,
            detail: "a subset of a face is missing".into(),
        };
    }
    let Some(coords) = &k.coords else {
        return ComplexValidity {
            closed: true,
            geometric: None,
            detail: "closed".into(),
        };
    };
    for f in k.facets() {
        let pts: Vec<Vector> = f.iter().map(|&i| coords[i].clone()).collect();
        if affine_dimension(&pts).unwrap_or(-1) != f.len() as i64 - 1 {
            return ComplexValidity {
                closed: true,
                geometric: Some(false),
                detail: format!("face {f:?} is not a simplex"),
            };
        }
    }
    let faces: Vec<&Vec<usize>> = k.faces.iter().collect();
    for (i, s) in faces.iter().enumerate() {
        for t in &faces[i + 1..] {
            let (ss, ts): (BTreeSet<_>, BTreeSet<_>) = (s.iter().collect(), t.iter().collect());
            if ss.is_subset(&ts) || ts.is_subset(&ss) {
                continue;
            }
            if interiors_meet(coords, s, t) {
                return ComplexValidity {
                    closed: true,
                    geometric: Some(false),
                    detail: format!("faces {s:?} and {t:?} overlap"),
                };
            }
        }
    }
    ComplexValidity {
        closed: true,
        geometric: Some(true),
        detail: "closed and geometric".into(),
    }
}

/// Whether the relative interiors of the realized simplices meet: a positive
/// solution of `Σλ_i p_i = Σμ_j q_j`, `Σλ = Σμ`, scaled so every weight is ≥ 1.
fn interiors_meet(coords: &[Vector], s: &[usize], t: &[usize]) -> bool {
    let (p, q) = (s.len(), t.len());
    let dim = coords[0].len();
    let mut sys = LinearSystem::new(p + q);
    for c in 0..dim {
        let mut a = vec![Scalar::zero(); p + q];
        for (i, &v) in s.iter().enumerate() {
            a[i] = coords[v][c].clone();
        }
        for (j, &v) in t.iter().enumerate() {
            a[p + j] = -coords[v][c].clone();
        }
        sys.equal(a, Scalar::zero());
    }
    let mut a = vec![Scalar::one(); p + q];
    for x in &mut a[p..] {
        *x = -Scalar::one();
    }
    sys.equal(a, Scalar::zero());
    for i in 0..p + q {
        let mut e = vec![Scalar::zero(); p + q];
        e[i] = Scalar::one();
        sys.ge(e, Scalar::one());
    }
    sys.solve().is_feasible()
}

/// Star and link of `sigma`.
pub fn star_link(k: &SimplicialComplex, sigma: &[usize]) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let sigma = sorted(sigma.to_vec());
    if !k.contains(&sigma) {
        return Err(Error::InvalidInput(format!("{sigma:?} is not a face")));
    }
    let cofaces: Vec<Vec<usize>> = k
        .faces
        .iter()
        .filter(|f| sigma.iter().all(|v| f.binary_search(v).is_ok()))
        .cloned()
        .collect();
    let star = SimplicialComplex::from_facets(k.n_vertices, cofaces)?;
    let link = SimplicialComplex::from_faces(
        k.n_vertices,
        star.faces.iter().filter(|f| f.iter().all(|v| sigma.binary_search(v).is_err())).cloned(),
    );
    Ok((star, link))
}

/// The join `v * L`: `v`, the faces of `L`, and every face of `L` with `v` added.
pub fn cone_over(v: usize, l: &SimplicialComplex) -> SimplicialComplex {
    let mut faces: BTreeSet<Vec<usize>> = l.faces.clone();
    faces.insert(vec![v]);
    for f in &l.faces {
        let mut g = f.clone();
        g.push(v);
        faces.insert(sorted(g));
    }
    SimplicialComplex {
        n_vertices: l.n_vertices.max(v + 1),
        faces,
        coords: None,
    }
}

/// Subcomplex generated by the codimension-one faces lying in exactly one facet.
pub fn boundary_complex(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    if !k.is_pure() {
        return Err(Error::InvalidInput("complex is not pure".into()));
    }
    let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f in k.facets() {
        for i in 0..f.len() {
            let mut r = f.clone();
            r.remove(i);
            if !r.is_empty() {
                *count.entry(r).or_default() += 1;
            }
        }
    }
    let mut b = SimplicialComplex::from_facets(
        k.n_vertices,
        count.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r),
    )?;
    b.coords = k.coords.clone();
    Ok(b)
}

/// A verified facet order with its restriction sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shelling {
    pub facet_order: Vec<Vec<usize>>,
    pub restrictions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingReport {
    pub ok: bool,
    /// Position (0-based) of the first facet that breaks the condition.
    pub failed_at: Option<usize>,
    pub shelling: Option<Shelling>,
}

/// Restriction set of `f` given the codimension-one faces already present.
fn restriction(f: &[usize], ridges: &HashSet<Vec<usize>>) -> Vec<usize> {
    (0..f.len())
        .filter(|&i| {
            let mut r = f.to_vec();
            r.remove(i);
            ridges.contains(&r)
        })
        .map(|i| f[i])
        .collect()
}

fn add_ridges(f: &[usize], ridges: &mut HashSet<Vec<usize>>) {
    for i in 0..f.len() {
        let mut r = f.to_vec();
        r.remove(i);
        ridges.insert(r);
    }
}

/// Whether `f` may follow `prefix`: every earlier intersection lies in a common
/// codimension-one face, and there is at least one such face.
fn step_ok(r: &[usize], prefix: &[Vec<usize>]) -> bool {
    if prefix.is_empty() {
        return true;
    }
    !r.is_empty() && prefix.iter().all(|g| r.iter().any(|v| g.binary_search(v).is_err()))
}

/// Checks a facet order of a pure simplicial complex against the simplicial
/// shelling criterion and computes restriction sets.
pub fn is_shelling(k: &SimplicialComplex, order: &[Vec<usize>]) -> Result<ShellingReport> {
    if !k.is_pure() {
        return Err(Error::InvalidInput("complex is not pure".into()));
    }
    let facets: BTreeSet<Vec<usize>> = k.facets().into_iter().collect();
    let given: Vec<Vec<usize>> = order.iter().map(|f| sorted(f.clone())).collect();
    let given_set: BTreeSet<Vec<usize>> = given.iter().cloned().collect();
    if given.len() != facets.len() || given_set != facets {
        return Err(Error::InvalidInput("order is not a permutation of the facets".into()));
    }
    Ok(check_order(&given))
}

fn check_order(order: &[Vec<usize>]) -> ShellingReport {
    let mut ridges = HashSet::new();
    let mut restrictions = Vec::with_capacity(order.len());
    for (j, f) in order.iter().enumerate() {
        let r = restriction(f, &ridges);
        if !step_ok(&r, &order[..j]) {
            return ShellingReport {
                ok: false,
                failed_at: Some(j),
                shelling: None,
            };
        }
        add_ridges(f, &mut ridges);
        restrictions.push(r);
    }
    ShellingReport {
        ok: true,
        failed_at: None,
        shelling: Some(Shelling {
            facet_order: order.to_vec(),
            restrictions,
        }),
    }
}

/// `h_i = #{j : |R_j| = i}` for a shelling; the order is re-verified first.
pub fn h_from_shelling(s: &Shelling) -> Result<Vec<i64>> {
    let report = check_order(&s.facet_order);
    match report.shelling {
        Some(v) if v.restrictions == s.restrictions => {}
        _ => return Err(Error::InvalidInput("not a verified shelling".into())),
    }
    let d = s.facet_order.first().map_or(0, Vec::len);
    let mut h = vec![0i64; d + 1];
    for r in &s.restrictions {
        h[r.len()] += 1;
    }
    Ok(h)
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Internal("integer overflow".into()))
}

/// h-vector from `(f_{−1}, …, f_{d−1})`.
pub fn h_from_f(f: &[i64], d: usize) -> Result<Vec<i64>> {
    check_dim(d + 1, f.len())?;
    (0..=d as i64)
        .map(|k| {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                let term = binomial(d as i64 - i, d as i64 - k) * BigInt::from(f[i as usize]);
                if (k - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            to_i64(&acc)
        })
        .collect()
}

/// `(f_{−1}, …, f_{d−1})` from the h-vector.
pub fn f_from_h(h: &[i64], d: usize) -> Result<Vec<i64>> {
    check_dim(d + 1, h.len())?;
    (0..=d as i64)
        .map(|k| {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                acc += binomial(d as i64 - i, k - i) * BigInt::from(h[i as usize]);
            }
            to_i64(&acc)
        })
        .collect()
}

/// `Σ_{k≥0} (−1)^k f_k` from `(f_{−1}, f_0, …)`.
pub fn euler_characteristic(f: &[usize]) -> i64 {
    f.iter()
        .skip(1)
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerTarget {
    /// A polytope, or a triangulated disk.
    Solid,
    /// Boundary of a `d`-polytope.
    Boundary(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCheck {
    pub chi: i64,
    pub expected: i64,
    pub ok: bool,
}

pub fn euler_check(f: &[usize], target: EulerTarget) -> EulerCheck {
    let chi = euler_characteristic(f);
    let expected = match target {
        EulerTarget::Solid => 1,
        EulerTarget::Boundary(d) => 1 - if d % 2 == 0 { 1 } else { -1 },
    };
    EulerCheck {
        chi,
        expected,
        ok: chi == expected,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnSommervilleReport {
    /// `(f_{−1}, …, f_{d−1})` of the boundary.
    pub f: Vec<i64>,
    pub h: Vec<i64>,
    pub palindromic: bool,
    /// For `d = 3`: `2f_1 = 3f_2`, `f_1 = 3f_0 − 6` and `f_2 = 2f_0 − 4`.
    pub relations_3d: Option<bool>,
}

impl DehnSommervilleReport {
    pub fn ok(&self) -> bool {
        self.palindromic && self.relations_3d != Some(false)
    }
}

pub fn dehn_sommerville_from_f(f: &[i64], d: usize) -> Result<DehnSommervilleReport> {
    let h = h_from_f(f, d)?;
    let palindromic = (0..=d).all(|k| h[k] == h[d - k]);
    let relations_3d = (d == 3).then(|| {
        let (f0, f1, f2) = (f[1], f[2], f[3]);
        2 * f1 == 3 * f2 && f1 == 3 * f0 - 6 && f2 == 2 * f0 - 4
    });
    Ok(DehnSommervilleReport {
        f: f.to_vec(),
        h,
        palindromic,
        relations_3d,
    })
}

/// Boundary f-vector `(f_{−1}, …, f_{d−1})` of a polytope from its face lattice.
pub fn boundary_f_vector(l: &FaceLattice) -> Vec<i64> {
    let full = l.f_vector();
    full[..full.len() - 1].iter().map(|&x| x as i64).collect()
}

pub fn dehn_sommerville_check(p: &Polytope) -> Result<DehnSommervilleReport> {
    if !p.is_full_dimensional() {
        return Err(Error::InvalidInput("polytope must be full-dimensional".into()));
    }
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial("a facet is not a simplex".into()));
    }
    let l = face_lattice(&p.h, &p.v)?;
    dehn_sommerville_from_f(&boundary_f_vector(&l), p.dim())
}

/// A polyhedral complex given by cells over shared vertices, with every face
/// recorded by its vertex set and dimension.
#[derive(Debug, Clone)]
pub struct PolyhedralComplex {
    pub vertices: Vec<Vector>,
    pub cells: Vec<Vec<usize>>,
    pub faces: BTreeMap<Vec<usize>, i64>,
    pub dim: i64,
}

impl PolyhedralComplex {
    /// Cells given by their vertex coordinates; coordinates shared between cells
    /// are identified.
    pub fn from_cells(cells: &[Vec<Vector>]) -> Result<Self> {
        let mut vertices: Vec<Vector> = Vec::new();
        let mut index: HashMap<Vector, usize> = HashMap::new();
        let mut faces = BTreeMap::new();
        let mut cell_sets = Vec::new();
        let mut dim = -1;
        for pts in cells {
            let amb = pts.first().map_or(0, Vec::len);
            let p = Polytope::from_points(amb, pts.clone())?;
            let l = face_lattice(&p.h, &p.v)?;
            let global: Vec<usize> = p
                .v
                .points
                .iter()
                .map(|x| {
                    *index.entry(x.clone()).or_insert_with(|| {
                        vertices.push(x.clone());
                        vertices.len() - 1
                    })
                })
                .collect();
            for f in &l.faces {
                if f.vertices.is_empty() {
                    continue;
                }
                faces.insert(sorted(f.vertices.iter().map(|&i| global[i]).collect()), f.dim);
            }
            cell_sets.push(sorted(global));
            dim = dim.max(l.dim);
        }
        if cells.iter().any(|c| affine_dimension(c).unwrap_or(-1) != dim) {
            return Err(Error::InvalidInput("complex is not pure".into()));
        }
        Ok(PolyhedralComplex {
            vertices,
            cells: cell_sets,
            faces,
            dim,
        })
    }

    fn facets_of(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let d = self.faces[face];
        self.faces
            .iter()
            .filter(|(g, &gd)| gd == d - 1 && is_subset(g, face))
            .map(|(g, _)| g.clone())
            .collect()
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Checks an order of the cells (indices into `cells`) against the recursive
/// definition of a shelling for polyhedral complexes.
pub fn is_polyhedral_shelling(k: &PolyhedralComplex, order: &[usize]) -> Result<ShellingReport> {
    let mut seen = order.to_vec();
    seen.sort_unstable();
    if seen != (0..k.cells.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidInput("order is not a permutation of the cells".into()));
    }
    let cells: Vec<Vec<usize>> = order.iter().map(|&i| k.cells[i].clone()).collect();
    for j in 0..cells.len() {
        if !step_allowed(k, &cells[j], &cells[..j]) {
            return Ok(ShellingReport {
                ok: false,
                failed_at: Some(j),
                shelling: None,
            });
        }
    }
    Ok(ShellingReport {
        ok: true,
        failed_at: None,
        shelling: None,
    })
}

/// Whether `cell` may follow `prefix` in a shelling of a pure complex.
fn step_allowed(k: &PolyhedralComplex, cell: &[usize], prefix: &[Vec<usize>]) -> bool {
    let d = k.faces[cell];
    if d == 0 {
        return true;
    }
    let facets = k.facets_of(cell);
    if prefix.is_empty() {
        return extends_to_shelling(k, &facets, &[]);
    }
    // Faces of the cell lying in an earlier cell; all maximal ones must be facets.
    let shared: Vec<&Vec<usize>> = k
        .faces
        .keys()
        .filter(|g| is_subset(g, cell) && g.as_slice() != cell && prefix.iter().any(|c| is_subset(g, c)))
        .collect();
    if shared.is_empty() {
        return false;
    }
    let start: Vec<Vec<usize>> = facets.iter().filter(|f| shared.contains(f)).cloned().collect();
    if !shared.iter().all(|g| start.iter().any(|f| is_subset(g, f))) {
        return false;
    }
    extends_to_shelling(k, &facets, &start)
}

/// Whether the facets can be ordered as a shelling whose first cells are
/// exactly `start` (in some order).
fn extends_to_shelling(k: &PolyhedralComplex, facets: &[Vec<usize>], start: &[Vec<usize>]) -> bool {
    fn search(
        k: &PolyhedralComplex,
        facets: &[Vec<usize>],
        start: &[Vec<usize>],
        placed: &mut Vec<Vec<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if placed.len() == facets.len() {
            return true;
        }
        let in_start = placed.len() < start.len();
        for i in 0..facets.len() {
            if used[i] || start.contains(&facets[i]) != in_start {
                continue;
            }
            if !step_allowed(k, &facets[i], placed) {
                continue;
            }
            used[i] = true;
            placed.push(facets[i].clone());
            if search(k, facets, start, placed, used) {
                return true;
            }
            placed.pop();
            used[i] = false;
        }
        false
    }
    let mut used = vec![false; facets.len()];
    search(k, facets, start, &mut Vec::new(), &mut used)
}

/// Pulling triangulation of every face, pivoting on the smallest vertex index.
/// With vertices sorted lexicographically this is the lex-least vertex.
pub fn pulling_triangulation(l: &FaceLattice, face: &[usize], memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(face) {
        return t.clone();
    }
    let dim = l
        .faces
        .iter()
        .find(|f| f.vertices == face)
        .map(|f| f.dim)
        .expect("face of the lattice");
    let out = if face.len() as i64 == dim + 1 {
        vec![face.to_vec()]
    } else {
        let v = face[0];
        let mut simplices = Vec::new();
        for g in l.faces.iter().filter(|g| g.dim == dim - 1 && is_subset(&g.vertices, face)) {
            if g.vertices.contains(&v) {
                continue;
            }
            for mut t in pulling_triangulation(l, &g.vertices, memo) {
                t.push(v);
                simplices.push(sorted(t));
            }
        }
        simplices.sort();
        simplices
    };
    memo.insert(face.to_vec(), out.clone());
    out
}

/// A line shelling of a polytope boundary.
#[derive(Debug, Clone)]
pub struct LineShelling {
    /// Facet indices (into `h.ineqs` of the polytope) in shelling order.
    pub facet_order: Vec<usize>,
    /// Line parameter at which each facet hyperplane is crossed, in the same order.
    pub parameters: Vec<Scalar>,
    pub lambda: Scalar,
    /// Boundary complex on the polytope's vertex indices, triangulated when needed.
    pub complex: SimplicialComplex,
    pub shelling: Shelling,
}

/// Strict separation of `x` from the interior by the supporting hyperplane of the facet.
pub fn is_visible(p: &Polytope, facet: usize, x: &[Scalar]) -> bool {
    p.h.ineqs[facet].eval(x).is_negative()
}

/// Line shelling through `x` and a perturbation of the vertex centroid.
pub fn line_shelling(p: &Polytope, x: &[Scalar], seed: u32) -> Result<LineShelling> {
    let y = p
        .v
        .vertex_centroid()
        .ok_or_else(|| Error::InvalidInput("empty polytope".into()))?;
    line_shelling_from(p, x, &y, seed)
}

/// Line shelling along the line through `x` and `y + (λ, λ², …, λ^d)`, for
/// `λ = 1/2^t` with `t` increasing from `seed` until the line is generic.
pub fn line_shelling_from(p: &Polytope, x: &[Scalar], y: &[Scalar], seed: u32) -> Result<LineShelling> {
    let d = p.dim();
    check_dim(d, x.len())?;
    check_dim(d, y.len())?;
    if !p.is_full_dimensional() {
        return Err(Error::InvalidInput("polytope must be full-dimensional".into()));
    }
    if !p.strictly_contains(y) {
        return Err(Error::InvalidInput("base point must be interior".into()));
    }
    if p.contains(x) {
        return Err(Error::InvalidInput("x must lie outside the polytope".into()));
    }
    // Rows a·(z − y) ≤ 1, origin moved to y.
    let rows: Vec<(Vector, Scalar)> = p
        .h
        .ineqs
        .iter()
        .map(|r| {
            let s = r.eval(y);
            (r.a.iter().map(|c| -c / &s).collect(), s)
        })
        .collect();
    if rows.iter().any(|(a, _)| dot(a, &sub(x, y)) == Scalar::one()) {
        return Err(Error::Degenerate("x lies on a facet hyperplane".into()));
    }
    let two = Scalar::from_integer(2.into());
    for t in seed..seed.saturating_add(64) {
        let lambda = Scalar::one() / two.pow(t as i32);
        let pert = perturbation_vector(&lambda, d);
        let yl: Vector = y.iter().zip(&pert).map(|(a, b)| a + b).collect();
        if !p.strictly_contains(&yl) {
            continue;
        }
        let dir = sub(x, &yl);
        let off = sub(&yl, y);
        let mut params = Vec::with_capacity(rows.len());
        for (a, _) in &rows {
            let den = dot(a, &dir);
            if den.is_zero() {
                break;
            }
            params.push((Scalar::one() - dot(a, &off)) / den);
        }
        if params.len() < rows.len() {
            continue;
        }
        let mut distinct = params.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < params.len() {
            continue;
        }
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (&params[i], &params[j]);
            (a.is_negative(), a).cmp(&(b.is_negative(), b))
        });
        let (complex, shelling) = triangulated_shelling(p, &order)?;
        return Ok(LineShelling {
            parameters: order.iter().map(|&i| params[i].clone()).collect(),
            facet_order: order,
            lambda,
            complex,
            shelling,
        });
    }
    Err(Error::Degenerate("no generic line found".into()))
}

/// Shelling of the (triangulated) boundary following a facet order, ordering the
/// simplices inside each facet by backtracking search.
pub fn triangulated_shelling(p: &Polytope, facet_order: &[usize]) -> Result<(SimplicialComplex, Shelling)> {
    let l = face_lattice(&p.h, &p.v)?;
    let sets = p.facet_vertex_sets();
    let mut memo = HashMap::new();
    let groups: Vec<Vec<Vec<usize>>> = facet_order
        .iter()
        .map(|&i| pulling_triangulation(&l, &sets[i], &mut memo))
        .collect();
    let mut placed: Vec<Vec<usize>> = Vec::new();
    for g in &groups {
        let mut remaining = g.clone();
        if !order_group(&mut placed, &mut remaining) {
            return Err(Error::Internal("facet triangulation admits no compatible order".into()));
        }
    }
    let complex = SimplicialComplex::from_facets(p.v.points.len(), placed.clone())?.with_coords(p.v.points.clone())?;
    let report = check_order(&placed);
    let shelling = report
        .shelling
        .ok_or_else(|| Error::Internal("line shelling failed verification".into()))?;
    Ok((complex, shelling))
}

fn order_group(placed: &mut Vec<Vec<usize>>, remaining: &mut Vec<Vec<usize>>) -> bool {
    if remaining.is_empty() {
        return true;
    }
    let mut ridges = HashSet::new();
    for f in placed.iter() {
        add_ridges(f, &mut ridges);
    }
    for i in 0..remaining.len() {
        let f = remaining[i].clone();
        let r = restriction(&f, &ridges);
        if !step_ok(&r, placed) {
            continue;
        }
        remaining.remove(i);
        placed.push(f.clone());
        if order_group(placed, remaining) {
            return true;
        }
        placed.pop();
        remaining.insert(i, f);
    }
    false
}
