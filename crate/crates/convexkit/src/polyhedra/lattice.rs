use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;

use super::{membership, HRep, HRow, VRep};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exact::{affine_dimension, Vector};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: i64,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub vertices: Vec<Vector>,
    pub facets: Vec<HRow>,
    pub incidence: Vec<Vec<usize>>,
    /// Sorted by dimension, then vertex set.
    pub faces: Vec<Face>,
    pub dim: i64,
}

impl FaceLattice {
    /// Face counts `(f_{−1}, f_0, …, f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim + 2) as usize];
        for face in &self.faces {
            f[(face.dim + 1) as usize] += 1;
        }
        f
    }

    /// Number of faces of dimension `k`.
    pub fn count(&self, k: i64) -> usize {
        self.faces.iter().filter(|f| f.dim == k).count()
    }

    /// `Σ_{k=0}^{dim} (−1)^k f_k`, which is 1 for every nonempty polytope.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim).map(|k| sign(k) * self.count(k) as i64).sum()
    }

    /// Alternating sum over proper faces, `1 − (−1)^dim` for a polytope boundary.
    pub fn boundary_euler_characteristic(&self) -> i64 {
        (0..self.dim).map(|k| sign(k) * self.count(k) as i64).sum()
    }

    pub fn faces_of_dim(&self, k: i64) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn contains_face(&self, vertices: &[usize]) -> bool {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.faces.iter().any(|f| f.vertices == v)
    }
}

fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Face lattice of a polytope from its facet inequalities and its vertices.
pub fn face_lattice(p: &HRep, v: &VRep) -> Result<FaceLattice> {
    if !v.rays.is_empty() {
        return Err(Error::InvalidInput("face lattice needs a bounded polytope".into()));
    }
    for x in &v.points {
        if !membership(x, p) {
            return Err(Error::InvalidInput(
                "representations disagree: a vertex violates the inequalities".into(),
            ));
        }
    }
    let n = v.points.len();
    let incidence: Vec<BitSet> = p
        .ineqs
        .iter()
        .map(|r| BitSet::from_indices(n, (0..n).filter(|&i| r.eval(&v.points[i]).is_zero())))
        .collect();

    let mut seen: HashSet<BitSet> = HashSet::new();
    let full = BitSet::full(n);
    seen.insert(full.clone());
    seen.insert(BitSet::new(n));
    let mut queue: Vec<BitSet> = Vec::new();
    for f in &incidence {
        if seen.insert(f.clone()) {
            queue.push(f.clone());
        }
    }
    while let Some(face) = queue.pop() {
        for f in &incidence {
            let g = face.intersection(f);
            if seen.insert(g.clone()) {
                queue.push(g);
            }
        }
    }

    let mut faces: BTreeSet<Face> = BTreeSet::new();
    for s in seen {
        let verts = s.to_vec();
        let pts: Vec<Vector> = verts.iter().map(|&i| v.points[i].clone()).collect();
        faces.insert(Face {
            dim: affine_dimension(&pts)?,
            vertices: verts,
        });
    }
    let dim = affine_dimension(&v.points)?;
    let faces: Vec<Face> = faces.into_iter().collect();
    Ok(FaceLattice {
        vertices: v.points.clone(),
        facets: p.ineqs.clone(),
        incidence: incidence.iter().map(BitSet::to_vec).collect(),
        faces,
        dim,
    })
}
