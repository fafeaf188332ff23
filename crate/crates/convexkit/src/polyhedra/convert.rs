use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use super::{cone_generators, dedup_rays, dehomogenize, homogenize_h, HRep, HRow, VCone, VRep};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{dot, neg, rank, ray_normal_form, rref, unit, zeros, Scalar, Vector};
use crate::feasibility::LinearSystem;

/// Vertices and rays of an H-polyhedron. An empty polyhedron yields an empty `VRep`.
///
/// Points are exactly the vertices when `p` is pointed; otherwise the rays contain a
/// basis of the lineality space and its negation.
pub fn h_to_v(p: &HRep) -> Result<VRep> {
    let cone = homogenize_h(p);
    let gens = cone_generators(cone.dim, &cone.normals);
    let v = dehomogenize(&VCone {
        dim: cone.dim,
        generators: gens,
    })?;
    if v.points.is_empty() {
        return Ok(VRep::empty(p.dim));
    }
    Ok(v)
}

/// Inequality description of `conv(points) + cone(rays)`, irredundant.
pub fn v_to_h(p: &VRep) -> Result<HRep> {
    if p.is_empty() {
        return Err(Error::InvalidInput("v_to_h needs at least one point".into()));
    }
    let d = p.dim;
    let np = p.points.len();
    let nr = p.rays.len();
    let n = d + np + nr;
    // Variables (x, u, t): x = Y u + V t, Σu = 1, u, t ≥ 0.
    let mut s = LinearSystem::new(n);
    for i in 0..d {
        let mut row = zeros(n);
        row[i] = Scalar::one();
        for (j, y) in p.points.iter().enumerate() {
            row[d + j] = -y[i].clone();
        }
        for (j, v) in p.rays.iter().enumerate() {
            row[d + np + j] = -v[i].clone();
        }
        s.equal(row, Scalar::zero());
    }
    let mut ones = zeros(n);
    for c in &mut ones[d..d + np] {
        *c = Scalar::one();
    }
    s.equal(ones, Scalar::one());
    for j in d..n {
        s.le(neg(&unit(n, j)), Scalar::zero());
    }
    let aux: Vec<usize> = (d..n).collect();
    let proj = s.project(&aux);

    let mut h = HRep::new(d);
    for c in &proj.ineqs {
        // a·x ≤ b  ⇔  b − a·x ≥ 0
        h.ineqs.push(HRow::new(c.b.clone(), neg(&c.a)));
    }
    for c in &proj.eqs {
        h.eqs.push(HRow::new(-c.b.clone(), c.a.clone()));
    }
    Ok(irredundant_with_generators(&h, &p.homogeneous_generators()))
}

/// Removes redundant inequalities; implicit equations move to `eqs`.
pub fn make_irredundant(p: &HRep) -> Result<HRep> {
    let v = h_to_v(p)?;
    if v.is_empty() {
        return Ok(p.clone());
    }
    Ok(irredundant_with_generators(p, &v.homogeneous_generators()))
}

/// Keeps one inequality per facet of the homogenized cone generated by `gens`
/// (excluding the face at infinity), decided from the rank of the tight generators.
pub(crate) fn irredundant_with_generators(p: &HRep, gens: &[Vector]) -> HRep {
    let full = rank(gens);
    let is_point = |g: &Vector| !g[p.dim].is_zero();
    let mut eqs: Vec<Vector> = p.eqs.iter().map(HRow::homogeneous).collect();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut ineqs = Vec::new();
    for r in &p.ineqs {
        let h = r.homogeneous();
        let tight = BitSet::from_indices(gens.len(), (0..gens.len()).filter(|&i| dot(&h, &gens[i]).is_zero()));
        if tight.len() == gens.len() {
            eqs.push(h);
            continue;
        }
        let tight_gens: Vec<Vector> = tight.iter().map(|i| gens[i].clone()).collect();
        if !tight_gens.iter().any(is_point) || rank(&tight_gens) + 1 != full {
            continue;
        }
        if seen.insert(tight) {
            ineqs.push(r.normalized());
        }
    }
    let (basis, _) = rref(&eqs);
    let eqs = basis
        .iter()
        .map(|h| {
            let h = ray_normal_form(h);
            HRow::new(h[p.dim].clone(), h[..p.dim].to_vec())
        })
        .collect();
    HRep {
        dim: p.dim,
        ineqs,
        eqs,
    }
}

/// Drops duplicate and non-extreme points and rays.
///
/// A point is dropped when it lies in the hull of the remaining points plus the cone of
/// the rays; a ray when it is a nonnegative combination of the remaining rays.
pub fn canonicalize_vrep(p: &VRep) -> VRep {
    let mut rays: Vec<Vector> = dedup_rays(p.rays.iter().map(|r| ray_normal_form(r)).collect());
    let mut i = 0;
    while i < rays.len() {
        let others: Vec<Vector> = rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
        let mut s = LinearSystem::new(others.len());
        for k in 0..p.dim {
            s.equal(others.iter().map(|r| r[k].clone()).collect(), rays[i][k].clone());
        }
        for k in 0..others.len() {
            s.le(neg(&unit(others.len(), k)), Scalar::zero());
        }
        if s.solve().is_feasible() {
            rays.remove(i);
        } else {
            i += 1;
        }
    }
    let mut points: Vec<Vector> = Vec::new();
    for q in &p.points {
        if !points.contains(q) {
            points.push(q.clone());
        }
    }
    let mut i = 0;
    while i < points.len() {
        let others: Vec<Vector> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
        if !others.is_empty() && VRep::combination_system(&others, &rays, &points[i]).solve().is_feasible() {
            points.remove(i);
        } else {
            i += 1;
        }
    }
    VRep {
        dim: p.dim,
        points,
        rays,
    }
}

/// A polytope held in both representations: vertices (sorted) and irredundant inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub h: HRep,
    pub v: VRep,
}

impl Polytope {
    pub fn from_points(dim: usize, points: Vec<Vector>) -> Result<Polytope> {
        Self::from_vrep(&VRep::from_points(dim, points)?)
    }

    pub fn from_vrep(v: &VRep) -> Result<Polytope> {
        if !v.is_bounded() {
            return Err(Error::InvalidInput("polytope must be bounded".into()));
        }
        let h = v_to_h(v)?;
        let mut verts: Vec<Vector> = v
            .points
            .iter()
            .filter(|p| {
                // A vertex is a point where the tight facets and equations have full rank.
                let tight: Vec<Vector> = h
                    .ineqs
                    .iter()
                    .filter(|r| r.eval(p).is_zero())
                    .chain(h.eqs.iter())
                    .map(|r| r.a.clone())
                    .collect();
                rank(&tight) == v.dim
            })
            .cloned()
            .collect();
        verts.sort();
        verts.dedup();
        Ok(Polytope {
            h,
            v: VRep {
                dim: v.dim,
                points: verts,
                rays: Vec::new(),
            },
        })
    }

    pub fn from_hrep(h: &HRep) -> Result<Polytope> {
        let v = h_to_v(h)?;
        if v.is_empty() {
            return Err(Error::InvalidInput("empty polytope".into()));
        }
        if !v.is_bounded() {
            return Err(Error::InvalidInput("polytope must be bounded".into()));
        }
        Self::from_vrep(&v)
    }

    pub fn dim(&self) -> usize {
        self.v.dim
    }

    pub fn affine_dimension(&self) -> i64 {
        crate::exact::affine_dimension(&self.v.points).expect("consistent dimensions")
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension() == self.v.dim as i64
    }

    /// Vertex index sets of the facets, in the order of `h.ineqs`.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.h
            .ineqs
            .iter()
            .map(|r| {
                (0..self.v.points.len())
                    .filter(|&i| r.eval(&self.v.points[i]).is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        let d = self.affine_dimension();
        self.facet_vertex_sets().iter().all(|f| f.len() as i64 == d)
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.h.contains(x)
    }

    /// True when `x` satisfies every inequality strictly.
    pub fn strictly_contains(&self, x: &[Scalar]) -> bool {
        self.h.ineqs.iter().all(|r| r.eval(x).is_positive()) && self.h.eqs.iter().all(|r| r.eval(x).is_zero())
    }
}
