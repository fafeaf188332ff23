//! Polar duality with respect to the unit sphere and to nondegenerate quadrics,
//! projective completion, and the sphere/paraboloid projectivity.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exact::{determinant, dot, inverse, mat_mul, mat_vec, neg, sub, transpose, zeros, Matrix, Scalar, Vector};
use crate::polyhedra::{
    canonicalize_vrep, h_to_v, homogenize_h, homogenize_v, HCone, HRep, HRow, Representation, VCone, VRep,
};

/// A nondegenerate quadric given by a symmetric `(d+1)×(d+1)` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadric {
    pub matrix: Matrix,
    pub dim: usize,
}

impl Quadric {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if n < 2 {
            return Err(Error::InvalidInput("quadric matrix must be at least 2×2".into()));
        }
        for row in &matrix {
            check_dim(n, row.len())?;
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidInput("quadric matrix is not symmetric".into()));
                }
            }
        }
        if determinant(&matrix)?.is_zero() {
            return Err(Error::Degenerate("quadric matrix is singular".into()));
        }
        Ok(Quadric { matrix, dim: n - 1 })
    }

    /// `x_1² + … + x_d² − x_{d+1}²`
    pub fn sphere(d: usize) -> Self {
        let mut m = vec![zeros(d + 1); d + 1];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = if i < d { Scalar::one() } else { -Scalar::one() };
        }
        Quadric { matrix: m, dim: d }
    }

    /// `x_1² + … + x_{d−1}² − x_d x_{d+1}`
    pub fn paraboloid(d: usize) -> Self {
        assert!(d >= 1);
        let mut m = vec![zeros(d + 1); d + 1];
        for (i, row) in m.iter_mut().enumerate().take(d - 1) {
            row[i] = Scalar::one();
        }
        let half = Scalar::new((-1).into(), 2.into());
        m[d - 1][d] = half.clone();
        m[d][d - 1] = half;
        Quadric { matrix: m, dim: d }
    }

    /// The polar form `φ(u, v) = uᵀ F v`.
    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &mat_vec(&self.matrix, v))
    }

    /// Image quadric under the linear map with matrix `a`: `A⁻ᵀ F A⁻¹`.
    pub fn transport(&self, a: &[Vector]) -> Result<Quadric> {
        check_dim(self.dim + 1, a.len())?;
        let inv = inverse(a)?;
        let m = mat_mul(&mat_mul(&transpose(&inv), &self.matrix), &inv);
        Quadric::new(m)
    }
}

/// Polar dual of `conv(points) + cone(rays)` about `center`, as inequalities
/// `1 − (y−c)·(x−c) ≥ 0` and `−v·(x−c) ≥ 0`.
pub fn polar_dual_v(p: &VRep, center: &[Scalar]) -> Result<HRep> {
    check_dim(p.dim, center.len())?;
    if p.is_empty() {
        return Err(Error::InvalidInput("polar dual of an empty set".into()));
    }
    let mut h = HRep::new(p.dim);
    for y in &p.points {
        let yc = sub(y, center);
        h.push_ineq(HRow::new(Scalar::one() + dot(&yc, center), neg(&yc)))?;
    }
    for v in &p.rays {
        h.push_ineq(HRow::new(dot(v, center), neg(v)))?;
    }
    Ok(h)
}

/// Polar dual about the origin of `{x : A x ≤ 1, A′ x ≤ 0}`: the hull of the
/// rows of `A` and the origin, plus the cone of the rows of `A′`.
pub fn polar_dual_h(p: &HRep) -> Result<VRep> {
    let mut points = vec![zeros(p.dim)];
    let mut rays = Vec::new();
    for r in p.expanded_ineqs() {
        // b + a·x ≥ 0  ⇔  (−a/b)·x ≤ 1
        if r.b.is_negative() {
            return Err(Error::InvalidInput("origin violates an inequality".into()));
        }
        if r.b.is_zero() {
            if r.a.iter().any(|x| !x.is_zero()) {
                rays.push(neg(&r.a));
            }
        } else {
            points.push(r.a.iter().map(|x| -x / &r.b).collect());
        }
    }
    Ok(canonicalize_vrep(&VRep::new(p.dim, points, rays)?))
}

/// Dual cone `{v : uᵀ F v ≤ 0 for every generator u}`.
pub fn quadric_polar_cone(c: &VCone, q: &Quadric) -> Result<HCone> {
    check_dim(q.dim + 1, c.dim)?;
    let normals = c.generators.iter().map(|u| mat_vec(&q.matrix, u)).collect();
    HCone::new(c.dim, normals)
}

/// The cone over `P × {1}`; the projective completion of `P`.
pub fn projective_completion(p: &Representation) -> Result<VCone> {
    match p {
        Representation::V(v) => {
            if v.is_empty() {
                return Err(Error::InvalidInput("projective completion of an empty set".into()));
            }
            Ok(homogenize_v(v))
        }
        Representation::H(h) => {
            if h.is_empty() {
                return Err(Error::InvalidInput("projective completion of an empty set".into()));
            }
            Ok(homogenize_h(h).to_vcone())
        }
    }
}

/// Affine polar dual `{x : ŷᵀ F (x, 1) ≤ 0, v̂ᵀ F (x, 0) ≤ 0}`.
pub fn affine_quadric_dual(p: &VRep, q: &Quadric) -> Result<HRep> {
    check_dim(q.dim, p.dim)?;
    let d = p.dim;
    let mut h = HRep::new(d);
    for g in p.homogeneous_generators() {
        let u = mat_vec(&transpose(&q.matrix), &g);
        // u·(x, 1) ≤ 0  ⇔  −u_last − u'·x ≥ 0
        h.push_ineq(HRow::new(-u[d].clone(), neg(&u[..d])))?;
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommuteReport {
    pub passed: bool,
    pub dual_of_completion: VCone,
    pub completion_of_dual: VCone,
}

/// Compares the quadric dual of the completion of `P` with the completion of the
/// affine dual of `P`, both reduced to canonical generators.
pub fn check_completion_duality_commutes(p: &VRep, q: &Quadric) -> Result<CommuteReport> {
    let left = quadric_polar_cone(&homogenize_v(p), q)?.to_vcone();
    let dual = affine_quadric_dual(p, q)?;
    let dual_v = h_to_v(&dual)?;
    let right = if dual_v.is_empty() {
        VCone::new(p.dim + 1, Vec::new())?
    } else {
        homogenize_v(&dual_v)
    };
    Ok(CommuteReport {
        passed: left.same_set(&right),
        dual_of_completion: left,
        completion_of_dual: right,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The projectivity between the sphere `Σx_i² = x_{d+2}²` and the paraboloid
/// `Σz_i² = z_{d+1} z_{d+2}` on homogeneous coordinates of length `d+2`.
pub fn theta_map(x: &[Scalar], direction: Direction) -> Result<Vector> {
    if x.len() < 2 {
        return Err(Error::InvalidInput("theta needs at least two coordinates".into()));
    }
    let n = x.len();
    let (s, t) = (&x[n - 2], &x[n - 1]);
    let mut out = x.to_vec();
    match direction {
        Direction::Forward => {
            out[n - 2] = s + t;
            out[n - 1] = t - s;
        }
        Direction::Inverse => {
            let two = Scalar::from_integer(2.into());
            out[n - 2] = (s - t) / &two;
            out[n - 1] = (s + t) / &two;
        }
    }
    Ok(out)
}
