//! H- and V-representations, cones, Fourier–Motzkin elimination,
//! representation conversion and face lattices.

mod convert;
mod elimination;
mod lattice;

pub use convert::{canonicalize_vrep, h_to_v, make_irredundant, v_to_h, Polytope};
pub use elimination::{cone_generators, fm_project, fm_slice};
pub use lattice::{face_lattice, Face, FaceLattice};

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exact::{dot, neg, primitive, ray_normal_form, unit, zeros, Scalar, Vector};
use crate::feasibility::LinearSystem;

/// An affine row `b + a·x`, read as `≥ 0` (inequality) or `= 0` (equation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HRow {
    pub b: Scalar,
    pub a: Vector,
}

impl HRow {
    pub fn new(b: Scalar, a: Vector) -> Self {
        HRow { b, a }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        &self.b + dot(&self.a, x)
    }

    /// Homogeneous coefficients `(a, b)` acting on `(x, t)`.
    pub fn homogeneous(&self) -> Vector {
        let mut v = self.a.clone();
        v.push(self.b.clone());
        v
    }

    /// Same halfspace, scaled to primitive integer coefficients.
    pub fn normalized(&self) -> HRow {
        let h = ray_normal_form(&self.homogeneous());
        let (a, b) = h.split_at(self.a.len());
        HRow::new(b[0].clone(), a.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub ineqs: Vec<HRow>,
    pub eqs: Vec<HRow>,
}

impl HRep {
    pub fn new(dim: usize) -> Self {
        HRep {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn from_rows(dim: usize, ineqs: Vec<HRow>) -> Result<Self> {
        let mut h = HRep::new(dim);
        for r in ineqs {
            h.push_ineq(r)?;
        }
        Ok(h)
    }

    pub fn push_ineq(&mut self, r: HRow) -> Result<()> {
        check_dim(self.dim, r.a.len())?;
        self.ineqs.push(r);
        Ok(())
    }

    pub fn push_eq(&mut self, r: HRow) -> Result<()> {
        check_dim(self.dim, r.a.len())?;
        self.eqs.push(r);
        Ok(())
    }

    /// `a·x ≤ b`, the form most callers think in.
    pub fn le(&mut self, a: Vector, b: Scalar) -> Result<&mut Self> {
        self.push_ineq(HRow::new(b, neg(&a)))?;
        Ok(self)
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        membership(x, self)
    }

    /// The rows as `−a·x ≤ b` constraints for the feasibility engine.
    pub fn to_system(&self) -> LinearSystem {
        let mut s = LinearSystem::new(self.dim);
        for r in &self.ineqs {
            s.le(neg(&r.a), r.b.clone());
        }
        for r in &self.eqs {
            s.equal(r.a.clone(), -r.b.clone());
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        !self.to_system().solve().is_feasible()
    }

    pub fn interior_point(&self) -> Option<Vector> {
        self.to_system().solve().point()
    }

    pub fn intersect(&self, other: &HRep) -> Result<HRep> {
        check_dim(self.dim, other.dim)?;
        let mut h = self.clone();
        h.ineqs.extend(other.ineqs.iter().cloned());
        h.eqs.extend(other.eqs.iter().cloned());
        Ok(h)
    }

    /// Equations expanded into inequality pairs.
    pub fn expanded_ineqs(&self) -> Vec<HRow> {
        let mut rows = self.ineqs.clone();
        for e in &self.eqs {
            rows.push(e.clone());
            rows.push(HRow::new(-e.b.clone(), neg(&e.a)));
        }
        rows
    }

    /// Rows in a canonical order with primitive integer coefficients, for comparisons.
    pub fn canonical_rows(&self) -> Vec<HRow> {
        let mut rows: Vec<HRow> = self.ineqs.iter().map(HRow::normalized).collect();
        rows.sort();
        rows.dedup();
        rows
    }
}

/// True iff every row of `p` holds at `x` exactly.
pub fn membership(x: &[Scalar], p: &HRep) -> bool {
    x.len() == p.dim
        && p.ineqs.iter().all(|r| !r.eval(x).is_negative())
        && p.eqs.iter().all(|r| r.eval(x).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<Vector>,
    pub rays: Vec<Vector>,
}

impl VRep {
    pub fn new(dim: usize, points: Vec<Vector>, rays: Vec<Vector>) -> Result<Self> {
        for p in points.iter().chain(&rays) {
            check_dim(dim, p.len())?;
        }
        if rays.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidInput("zero ray".into()));
        }
        Ok(VRep { dim, points, rays })
    }

    pub fn from_points(dim: usize, points: Vec<Vector>) -> Result<Self> {
        Self::new(dim, points, Vec::new())
    }

    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            points: Vec::new(),
            rays: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// System in the coefficients `(u, t)` expressing `z = Σ u_i y_i + Σ t_j v_j`, `u, t ≥ 0`,
    /// and `Σu = 1` unless there are no points.
    pub(crate) fn combination_system(points: &[Vector], rays: &[Vector], z: &[Scalar]) -> LinearSystem {
        let p = points.len();
        let n = p + rays.len();
        let mut s = LinearSystem::new(n);
        for (i, zi) in z.iter().enumerate() {
            let row: Vector = points.iter().chain(rays).map(|g| g[i].clone()).collect();
            s.equal(row, zi.clone());
        }
        if p > 0 {
            let mut ones = zeros(n);
            for c in ones.iter_mut().take(p) {
                *c = Scalar::one();
            }
            s.equal(ones, Scalar::one());
        }
        for i in 0..n {
            s.le(neg(&unit(n, i)), Scalar::zero());
        }
        s
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        if x.len() != self.dim || self.is_empty() {
            return false;
        }
        Self::combination_system(&self.points, &self.rays, x).solve().is_feasible()
    }

    /// Homogenized generators `(y, 1)` and `(v, 0)`.
    pub fn homogeneous_generators(&self) -> Vec<Vector> {
        let lift = |v: &Vector, t: Scalar| {
            let mut w = v.clone();
            w.push(t);
            w
        };
        self.points
            .iter()
            .map(|y| lift(y, Scalar::one()))
            .chain(self.rays.iter().map(|v| lift(v, Scalar::zero())))
            .collect()
    }

    pub fn vertex_centroid(&self) -> Option<Vector> {
        let n = self.points.len();
        if n == 0 {
            return None;
        }
        let mut c = zeros(self.dim);
        for p in &self.points {
            for (a, b) in c.iter_mut().zip(p) {
                *a += b;
            }
        }
        let k = Scalar::from_integer(n.into());
        Some(c.into_iter().map(|x| x / &k).collect())
    }

    /// Points sorted lexicographically, for set comparisons.
    pub fn sorted_points(&self) -> Vec<Vector> {
        let mut p = self.points.clone();
        p.sort();
        p.dedup();
        p
    }
}

/// Cone generated by nonnegative combinations of `generators`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VCone {
    pub dim: usize,
    pub generators: Vec<Vector>,
}

/// Cone `{x : u·x ≤ 0 for every u in normals}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCone {
    pub dim: usize,
    pub normals: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeRep {
    V(VCone),
    H(HCone),
}

impl ConeRep {
    pub fn dim(&self) -> usize {
        match self {
            ConeRep::V(c) => c.dim,
            ConeRep::H(c) => c.dim,
        }
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        match self {
            ConeRep::V(c) => c.contains(x),
            ConeRep::H(c) => c.contains(x),
        }
    }

    pub fn to_vcone(&self) -> VCone {
        match self {
            ConeRep::V(c) => c.clone(),
            ConeRep::H(c) => c.to_vcone(),
        }
    }

    pub fn to_hcone(&self) -> HCone {
        match self {
            ConeRep::V(c) => c.to_hcone(),
            ConeRep::H(c) => c.clone(),
        }
    }
}

impl VCone {
    pub fn new(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        for g in &generators {
            check_dim(dim, g.len())?;
        }
        Ok(VCone {
            dim,
            generators: generators.into_iter().filter(|g| !g.iter().all(Zero::is_zero)).collect(),
        })
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        VRep::combination_system(&[], &self.generators, x).solve().is_feasible()
    }

    /// Inequality description, via generators of the dual cone.
    pub fn to_hcone(&self) -> HCone {
        let normals = cone_generators(self.dim, &self.generators);
        HCone {
            dim: self.dim,
            normals,
        }
    }

    /// Lineality basis in reduced echelon form and the extreme rays modulo the
    /// lineality space, each projected orthogonally onto its complement and scaled
    /// to a primitive integer vector, sorted.
    pub fn canonical(&self) -> CanonicalCone {
        let h = self.to_hcone();
        let gens = h.to_vcone().generators;
        canonical_from_generators(&h.normals, gens)
    }

    pub fn is_pointed(&self) -> bool {
        self.canonical().lineality.is_empty()
    }

    pub fn same_set(&self, other: &VCone) -> bool {
        self.dim == other.dim && self.canonical() == other.canonical()
    }
}

impl HCone {
    pub fn new(dim: usize, normals: Vec<Vector>) -> Result<Self> {
        for u in &normals {
            check_dim(dim, u.len())?;
        }
        Ok(HCone { dim, normals })
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        x.len() == self.dim && self.normals.iter().all(|u| !dot(u, x).is_positive())
    }

    pub fn to_vcone(&self) -> VCone {
        VCone {
            dim: self.dim,
            generators: cone_generators(self.dim, &self.normals),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCone {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

fn canonical_from_generators(normals: &[Vector], gens: Vec<Vector>) -> CanonicalCone {
    let tight_all: Vec<Vector> = gens
        .iter()
        .filter(|g| normals.iter().all(|u| dot(u, g).is_zero()))
        .cloned()
        .collect();
    let (basis, _) = crate::exact::rref(&tight_all);
    let mut rays: Vec<Vector> = gens
        .iter()
        .filter(|g| !normals.iter().all(|u| dot(u, g).is_zero()))
        .map(|g| ray_normal_form(&orthogonal_part(g, &basis)))
        .collect();
    rays.sort();
    rays.dedup();
    let lineality = basis.iter().map(|b| ray_normal_form(b)).collect();
    CanonicalCone { lineality, rays }
}

/// Component of `v` orthogonal to the span of `basis`.
pub fn orthogonal_part(v: &[Scalar], basis: &[Vector]) -> Vector {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve the normal equations G c = B v with G the Gram matrix.
    let gram: Vec<Vector> = basis
        .iter()
        .map(|b| basis.iter().map(|c| dot(b, c)).collect())
        .collect();
    let rhs: Vector = basis.iter().map(|b| dot(b, v)).collect();
    let coef = crate::exact::solve_linear(&gram, &rhs)
        .ok()
        .flatten()
        .expect("basis is independent");
    let mut out = v.to_vec();
    for (c, b) in coef.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= c * x;
        }
    }
    out
}

/// Split of a cone into its lineality space and a pointed part lying in the
/// orthogonal complement.
pub fn orthogonal_split(c: &VCone) -> (Vec<Vector>, VCone) {
    let canon = c.canonical();
    let pointed = VCone {
        dim: c.dim,
        generators: canon.rays,
    };
    (canon.lineality, pointed)
}

pub enum Representation {
    H(HRep),
    V(VRep),
}

/// H-cone `{Ax − t b ≤ 0, −t ≤ 0}` for `P = {Ax ≤ b}`.
pub fn homogenize_h(p: &HRep) -> HCone {
    let mut normals: Vec<Vector> = p
        .expanded_ineqs()
        .iter()
        .map(|r| {
            // b + a·x ≥ 0  ⇔  −a·x − b t ≤ 0
            let mut u = neg(&r.a);
            u.push(-r.b.clone());
            u
        })
        .collect();
    let mut last = zeros(p.dim + 1);
    last[p.dim] = -Scalar::one();
    normals.push(last);
    HCone {
        dim: p.dim + 1,
        normals,
    }
}

/// V-cone generated by `(y, 1)` and `(v, 0)`.
pub fn homogenize_v(p: &VRep) -> VCone {
    VCone {
        dim: p.dim + 1,
        generators: p.homogeneous_generators(),
    }
}

pub fn homogenize(p: &Representation) -> ConeRep {
    match p {
        Representation::H(h) => ConeRep::H(homogenize_h(h)),
        Representation::V(v) => ConeRep::V(homogenize_v(v)),
    }
}

/// Slices a V-cone at `x_{d+1} = 1`.
pub fn dehomogenize(c: &VCone) -> Result<VRep> {
    if c.dim == 0 {
        return Err(Error::InvalidInput("cannot dehomogenize a 0-dimensional cone".into()));
    }
    let d = c.dim - 1;
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for g in &c.generators {
        let t = &g[d];
        if t.is_negative() {
            return Err(Error::InvalidInput("generator with negative last coordinate".into()));
        }
        if t.is_zero() {
            if !g[..d].iter().all(Zero::is_zero) {
                rays.push(g[..d].to_vec());
            }
        } else {
            points.push(g[..d].iter().map(|x| x / t).collect());
        }
    }
    Ok(VRep {
        dim: d,
        points,
        rays,
    })
}

pub(crate) fn dedup_rays(rays: Vec<Vector>) -> Vec<Vector> {
    let mut seen = std::collections::HashSet::new();
    rays.into_iter()
        .filter(|r| !r.iter().all(Zero::is_zero))
        .filter(|r| seen.insert(primitive(r)))
        .collect()
}
