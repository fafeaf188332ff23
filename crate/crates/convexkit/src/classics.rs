//! Carathéodory reduction, Radon partitions, Farkas certificates, Helly checks
//! and centerpoints.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exact::{affine_dimension, dot, nullspace, rank, rref, sub, transpose, zeros, Matrix, Scalar, Vector};
use crate::feasibility::{Feasibility, LinearSystem};
use crate::polyhedra::{v_to_h, HRep, VRep};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCombination {
    pub points: Vec<Vector>,
    pub weights: Vec<Scalar>,
}

impl ConvexCombination {
    pub fn evaluate(&self) -> Vector {
        let dim = self.points.first().map_or(0, Vec::len);
        let mut out = zeros(dim);
        for (p, w) in self.points.iter().zip(&self.weights) {
            for (o, x) in out.iter_mut().zip(p) {
                *o += w * x;
            }
        }
        out
    }

    /// Nonnegative weights summing to one.
    pub fn is_convex(&self) -> bool {
        self.points.len() == self.weights.len()
            && self.weights.iter().all(|w| !w.is_negative())
            && self.weights.iter().sum::<Scalar>() == Scalar::one()
    }
}

/// Affine dependence `μ ≠ 0` with `Σμ_i = 0` and `Σμ_i a_i = 0`, if one exists.
fn affine_dependence(points: &[Vector]) -> Option<Vector> {
    let dim = points.first()?.len();
    let mut rows: Matrix = (0..dim).map(|k| points.iter().map(|p| p[k].clone()).collect()).collect();
    rows.push(vec![Scalar::one(); points.len()]);
    nullspace(&rows, points.len()).into_iter().next()
}

/// Rewrites a convex combination equal to `b` with at most `d + 1` points,
/// where `d` is the affine dimension of the support.
pub fn caratheodory_reduce(b: &[Scalar], cc: &ConvexCombination) -> Result<ConvexCombination> {
    if !cc.is_convex() || cc.points.is_empty() {
        return Err(Error::InvalidInput("weights are not a convex combination".into()));
    }
    for p in &cc.points {
        check_dim(b.len(), p.len())?;
    }
    if cc.evaluate() != b {
        return Err(Error::InvalidInput("combination does not evaluate to b".into()));
    }
    let (mut points, mut weights): (Vec<Vector>, Vec<Scalar>) = cc
        .points
        .iter()
        .zip(&cc.weights)
        .filter(|(_, w)| w.is_positive())
        .map(|(p, w)| (p.clone(), w.clone()))
        .unzip();
    loop {
        let d = affine_dimension(&points)?;
        if points.len() as i64 <= d + 1 {
            break;
        }
        let mu = affine_dependence(&points).ok_or_else(|| Error::Internal("no affine dependence".into()))?;
        // α = max over μ_i > 0 of −λ_i/μ_i; the arg max is driven to zero.
        let (idx, alpha) = mu
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_positive())
            .map(|(i, m)| (i, -(&weights[i] / m)))
            .max_by(|a, b| a.1.cmp(&b.1))
            .expect("a dependence has a positive entry");
        for (w, m) in weights.iter_mut().zip(&mu) {
            *w += &alpha * m;
        }
        weights[idx] = Scalar::zero();
        let keep: Vec<bool> = weights.iter().map(|w| w.is_positive()).collect();
        points = points.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| p).collect();
        weights = weights.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(w, _)| w).collect();
    }
    Ok(ConvexCombination { points, weights })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadonPartition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub witness: Vector,
    pub first_combination: ConvexCombination,
    pub second_combination: ConvexCombination,
}

/// Splits at least `m + 2` points into two parts whose hulls meet.
pub fn radon_partition(x: &[Vector]) -> Result<RadonPartition> {
    let m = x.first().map_or(0, Vec::len);
    for p in x {
        check_dim(m, p.len())?;
    }
    if x.len() < m + 2 {
        return Err(Error::InvalidInput(format!("need at least {} points", m + 2)));
    }
    let mu = affine_dependence(x).ok_or_else(|| Error::Internal("no affine dependence".into()))?;
    let first: Vec<usize> = (0..x.len()).filter(|&i| mu[i].is_positive()).collect();
    let second: Vec<usize> = (0..x.len()).filter(|&i| !mu[i].is_positive()).collect();
    let total: Scalar = first.iter().map(|&i| mu[i].clone()).sum();
    let first_combination = ConvexCombination {
        points: first.iter().map(|&i| x[i].clone()).collect(),
        weights: first.iter().map(|&i| &mu[i] / &total).collect(),
    };
    let second_combination = ConvexCombination {
        points: second.iter().map(|&i| x[i].clone()).collect(),
        weights: second.iter().map(|&i| -&mu[i] / &total).collect(),
    };
    let witness = first_combination.evaluate();
    Ok(RadonPartition {
        first,
        second,
        witness,
        first_combination,
        second_combination,
    })
}

/// The four alternatives systems. Matrices are given row by row (`d` rows);
/// their columns are the points or vectors involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FarkasProblem {
    /// `Ax = z, x ≥ 0, Σx = 1`, or `cᵀz < α ≤ cᵀA`.
    I { a: Matrix, z: Vector },
    /// `Ax = z, x ≥ 0`, or `cᵀz < 0 ≤ cᵀA`.
    II { a: Matrix, z: Vector },
    /// `Ax ≤ z`, or `c ≥ 0, cᵀA = 0, cᵀz < 0`.
    III { a: Matrix, z: Vector },
    /// `z = Yu + Vt, u, t ≥ 0, Σu = 1`, or `cᵀy_i ≥ α, cᵀv_j ≥ 0, cᵀz < α`.
    IV { y: Matrix, v: Matrix, z: Vector },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FarkasCertificate {
    Primal { x: Vector },
    Dual { c: Vector, alpha: Scalar },
}

fn columns(a: &Matrix, d: usize) -> Result<usize> {
    check_dim(d, a.len())?;
    let n = a.first().map_or(0, Vec::len);
    for row in a {
        check_dim(n, row.len())?;
    }
    Ok(n)
}

impl FarkasProblem {
    pub fn version(&self) -> &'static str {
        match self {
            FarkasProblem::I { .. } => "I",
            FarkasProblem::II { .. } => "II",
            FarkasProblem::III { .. } => "III",
            FarkasProblem::IV { .. } => "IV",
        }
    }

    fn z(&self) -> &Vector {
        match self {
            FarkasProblem::I { z, .. }
            | FarkasProblem::II { z, .. }
            | FarkasProblem::III { z, .. }
            | FarkasProblem::IV { z, .. } => z,
        }
    }

    /// The primal system. Returns it together with the index of the first
    /// equation row of `A` and the index of the `Σ = 1` row, when present.
    fn system(&self) -> Result<LinearSystem> {
        let d = self.z().len();
        match self {
            FarkasProblem::I { a, z } | FarkasProblem::II { a, z } => {
                let n = columns(a, d)?;
                let mut s = LinearSystem::new(n);
                for i in 0..n {
                    s.ge(crate::exact::unit(n, i), Scalar::zero());
                }
                for (row, zi) in a.iter().zip(z) {
                    s.equal(row.clone(), zi.clone());
                }
                if matches!(self, FarkasProblem::I { .. }) {
                    s.equal(vec![Scalar::one(); n], Scalar::one());
                }
                Ok(s)
            }
            FarkasProblem::III { a, z } => {
                let n = columns(a, d)?;
                let mut s = LinearSystem::new(n);
                for (row, zi) in a.iter().zip(z) {
                    s.le(row.clone(), zi.clone());
                }
                Ok(s)
            }
            FarkasProblem::IV { y, v, z } => {
                let p = columns(y, d)?;
                let q = if v.is_empty() { 0 } else { columns(v, d)? };
                let n = p + q;
                let mut s = LinearSystem::new(n);
                for i in 0..n {
                    s.ge(crate::exact::unit(n, i), Scalar::zero());
                }
                for k in 0..d {
                    let mut row = y[k].clone();
                    if q > 0 {
                        row.extend(v[k].iter().cloned());
                    }
                    s.equal(row, z[k].clone());
                }
                let mut ones = vec![Scalar::one(); p];
                ones.extend(zeros(q));
                s.equal(ones, Scalar::one());
                Ok(s)
            }
        }
    }
}

/// Decides the alternative exactly and returns the matching certificate.
pub fn farkas(problem: &FarkasProblem) -> Result<FarkasCertificate> {
    let sys = problem.system()?;
    let d = problem.z().len();
    match sys.solve() {
        Feasibility::Feasible(x) => Ok(FarkasCertificate::Primal { x }),
        Feasibility::Infeasible(cert) => {
            // Σ y_i (row_i) + Σ w_j (eq_j) = 0 with right-hand side < 0.
            let w = &cert.eq_multipliers;
            let out = match problem {
                FarkasProblem::I { .. } | FarkasProblem::IV { .. } => FarkasCertificate::Dual {
                    c: w[..d].to_vec(),
                    alpha: -w[d].clone(),
                },
                FarkasProblem::II { .. } => FarkasCertificate::Dual {
                    c: w[..d].to_vec(),
                    alpha: Scalar::zero(),
                },
                FarkasProblem::III { .. } => FarkasCertificate::Dual {
                    c: cert.ineq_multipliers.clone(),
                    alpha: Scalar::zero(),
                },
            };
            Ok(out)
        }
    }
}

/// Substitutes a certificate into the problem.
pub fn verify_farkas(problem: &FarkasProblem, cert: &FarkasCertificate) -> bool {
    let Ok(sys) = problem.system() else { return false };
    match cert {
        FarkasCertificate::Primal { x } => x.len() == sys.nvars && sys.is_satisfied_by(x),
        FarkasCertificate::Dual { c, alpha } => match problem {
            FarkasProblem::I { a, z } => {
                c.len() == z.len()
                    && dot(c, z) < *alpha
                    && transpose(a).iter().all(|col| dot(c, col) >= *alpha)
            }
            FarkasProblem::II { a, z } => {
                c.len() == z.len() && dot(c, z).is_negative() && transpose(a).iter().all(|col| !dot(c, col).is_negative())
            }
            FarkasProblem::III { a, z } => {
                c.len() == z.len()
                    && c.iter().all(|x| !x.is_negative())
                    && dot(c, z).is_negative()
                    && transpose(a).iter().all(|col| dot(c, col).is_zero())
            }
            FarkasProblem::IV { y, v, z } => {
                c.len() == z.len()
                    && dot(c, z) < *alpha
                    && transpose(y).iter().all(|col| dot(c, col) >= *alpha)
                    && (v.is_empty() || transpose(v).iter().all(|col| !dot(c, col).is_negative()))
            }
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HellyReport {
    pub subsets_checked: usize,
    pub hypothesis_holds: bool,
    /// An `(m+1)`-subset with empty intersection, when the hypothesis fails.
    pub counterexample: Option<Vec<usize>>,
    /// A point common to all sets, when one exists.
    pub witness: Option<Vector>,
}

impl HellyReport {
    /// The theorem's conclusion holds whenever its hypothesis does.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || self.witness.is_some()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn intersection(family: &[HRep], idx: &[usize], m: usize) -> Result<HRep> {
    let mut h = HRep::new(m);
    for &i in idx {
        h = h.intersect(&family[i])?;
    }
    Ok(h)
}

/// Tests every `(m+1)`-wise intersection and the full intersection of convex sets in `E^m`.
pub fn helly_check(family: &[HRep], m: usize) -> Result<HellyReport> {
    for h in family {
        check_dim(m, h.dim)?;
    }
    if family.len() < m + 2 {
        return Err(Error::InvalidInput(format!("need at least {} sets", m + 2)));
    }
    let subsets = combinations(family.len(), m + 1);
    let mut counterexample = None;
    for s in &subsets {
        if intersection(family, s, m)?.is_empty() {
            counterexample = Some(s.clone());
            break;
        }
    }
    let all: Vec<usize> = (0..family.len()).collect();
    let witness = intersection(family, &all, m)?.to_system().solve().point();
    Ok(HellyReport {
        subsets_checked: subsets.len(),
        hypothesis_holds: counterexample.is_none(),
        counterexample,
        witness,
    })
}

/// Whether `t` (indices into `s`) is cut off from the rest by an open halfspace:
/// some `(w, β)` with `w·t − β ≥ 1` on `t` and `w·u − β ≤ −1` elsewhere.
pub fn strictly_separable(s: &[Vector], t: &[bool]) -> bool {
    let d = s.first().map_or(0, Vec::len);
    let mut sys = LinearSystem::new(d + 1);
    for (p, &inside) in s.iter().zip(t) {
        let mut a = p.clone();
        a.push(-Scalar::one());
        if inside {
            sys.ge(a, Scalar::one());
        } else {
            sys.le(a, -Scalar::one());
        }
    }
    sys.solve().is_feasible()
}

/// Default cap on the number of points accepted by [`centerpoint`].
pub const CENTERPOINT_MAX_POINTS: usize = 12;

/// A centerpoint of `s` (dimension at most 3): a point of every hull of more
/// than `dn/(d+1)` points that an open halfspace can cut off.
pub fn centerpoint(s: &[Vector]) -> Result<Vector> {
    centerpoint_with_limit(s, CENTERPOINT_MAX_POINTS)
}

pub fn centerpoint_with_limit(s: &[Vector], max_points: usize) -> Result<Vector> {
    let n = s.len();
    if n == 0 {
        return Err(Error::InvalidInput("no points".into()));
    }
    let d = s[0].len();
    for p in s {
        check_dim(d, p.len())?;
    }
    if d > 3 {
        return Err(Error::InvalidInput("centerpoints are limited to dimension ≤ 3".into()));
    }
    if n > max_points {
        return Err(Error::InvalidInput(format!("at most {max_points} points")));
    }
    let mut region = HRep::new(d);
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        // |T| > dn/(d+1)
        if size * (d + 1) <= d * n {
            continue;
        }
        let t: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if !strictly_separable(s, &t) {
            continue;
        }
        let pts: Vec<Vector> = (0..n).filter(|&i| t[i]).map(|i| s[i].clone()).collect();
        let hull = v_to_h(&VRep::from_points(d, pts)?)?;
        region = region.intersect(&hull)?;
    }
    region
        .to_system()
        .solve()
        .point()
        .ok_or_else(|| Error::Internal("centerpoint region is empty".into()))
}

/// Coordinates of vectors in the rref basis of their span.
fn span_coordinates(q: &[Vector]) -> Vec<Vector> {
    let (_, pivots) = rref(q);
    q.iter().map(|v| pivots.iter().map(|&p| v[p].clone()).collect()).collect()
}

/// `min_{w ≠ 0} #{i : w·q_i ≥ 0}`, exactly.
fn min_closed_halfspace_count(q: &[Vector]) -> usize {
    let zeros_count = q.iter().filter(|v| v.iter().all(Zero::is_zero)).count();
    let nonzero: Vec<Vector> = q.iter().filter(|v| !v.iter().all(Zero::is_zero)).cloned().collect();
    if nonzero.is_empty() {
        return zeros_count;
    }
    let k = nonzero[0].len();
    let r = rank(&nonzero);
    if r < k {
        return zeros_count + min_closed_halfspace_count(&span_coordinates(&nonzero));
    }
    if k == 1 {
        let pos = nonzero.iter().filter(|v| v[0].is_positive()).count();
        return zeros_count + pos.min(nonzero.len() - pos);
    }
    // Minimum over the rays of the arrangement {q_i^⊥}, each refined by the
    // best perturbation inside the hyperplanes through it.
    let mut best = usize::MAX;
    for subset in combinations(nonzero.len(), k - 1) {
        let rows: Matrix = subset.iter().map(|&i| nonzero[i].clone()).collect();
        let ns = nullspace(&rows, k);
        if ns.len() != 1 {
            continue;
        }
        for w in [ns[0].clone(), ns[0].iter().map(|x| -x).collect()] {
            let pos = nonzero.iter().filter(|v| dot(&w, v).is_positive()).count();
            if pos >= best {
                continue;
            }
            let tight: Vec<Vector> = nonzero.iter().filter(|v| dot(&w, v).is_zero()).cloned().collect();
            let inner = min_closed_halfspace_count(&span_coordinates(&tight));
            best = best.min(pos + inner);
        }
    }
    zeros_count + best
}

/// Halfspace (Tukey) depth of `c`: the fewest points of `s` in a closed halfspace containing `c`.
pub fn tukey_depth(c: &[Scalar], s: &[Vector]) -> Result<usize> {
    for p in s {
        check_dim(c.len(), p.len())?;
    }
    let q: Vec<Vector> = s.iter().map(|p| sub(p, c)).collect();
    Ok(min_closed_halfspace_count(&q))
}

/// Every closed halfspace containing `c` holds at least `n/(d+1)` of the points.
pub fn verify_centerpoint(c: &[Scalar], s: &[Vector]) -> Result<bool> {
    let depth = tukey_depth(c, s)?;
    Ok(depth * (c.len() + 1) >= s.len())
}
