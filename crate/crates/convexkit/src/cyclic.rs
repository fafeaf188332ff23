//! Moment curve, cyclic polytopes, Gale evenness, and the upper and lower bound checks.

use num_traits::{One, ToPrimitive};

use crate::complexes::{boundary_f_vector, h_from_f, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exact::{binomial, int, Scalar, Vector};
use crate::polyhedra::{face_lattice, Polytope, VRep};

/// `(t, t², …, t^d)`.
pub fn moment_curve(t: &Scalar, d: usize) -> Vector {
    let mut out = Vec::with_capacity(d);
    let mut p = Scalar::one();
    for _ in 0..d {
        p *= t;
        out.push(p.clone());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSpec {
    pub d: usize,
    pub params: Vec<Scalar>,
}

impl CyclicSpec {
    pub fn new(d: usize, params: Vec<Scalar>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput("dimension must be at least 2".into()));
        }
        if params.len() <= d {
            return Err(Error::InvalidInput(format!("need more than {d} parameters")));
        }
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("parameters must be strictly increasing".into()));
        }
        Ok(CyclicSpec { d, params })
    }

    /// Parameters `1, 2, …, n`.
    pub fn standard(d: usize, n: usize) -> Result<Self> {
        Self::new(d, (1..=n as i64).map(int).collect())
    }
}

/// The points `c(t_1), …, c(t_n)`, in parameter order.
pub fn cyclic_polytope(spec: &CyclicSpec) -> VRep {
    VRep {
        dim: spec.d,
        points: spec.params.iter().map(|t| moment_curve(t, spec.d)).collect(),
        rays: Vec::new(),
    }
}

/// The `d`-subsets of `{0, …, n−1}` satisfying Gale's evenness condition,
/// in lexicographic order.
pub fn gale_facets(d: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if d < 2 || d >= n {
        return Err(Error::InvalidInput("need 2 ≤ d < n".into()));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    gale_rec(0, n, d, &mut cur, &mut out);
    Ok(out)
}

fn gale_rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == d {
        if is_gale_even(cur, n) {
            out.push(cur.clone());
        }
        return;
    }
    for i in start..n {
        if n - i < d - cur.len() {
            break;
        }
        cur.push(i);
        gale_rec(i + 1, n, d, cur, out);
        cur.pop();
    }
}

/// Every maximal interior run of consecutive elements has even length.
pub fn is_gale_even(s: &[usize], n: usize) -> bool {
    let mut inside = vec![false; n];
    for &i in s {
        inside[i] = true;
    }
    let mut run = 0;
    let mut started = false;
    for &b in &inside {
        if b {
            run += 1;
        } else {
            if started && run % 2 == 1 {
                return false;
            }
            started = true;
            run = 0;
        }
    }
    true
}

/// `C(n − ⌊(d+1)/2⌋, n − d) + C(n − ⌊(d+2)/2⌋, n − d)`.
pub fn cyclic_facet_count(d: usize, n: usize) -> Result<u64> {
    if d < 2 || d >= n {
        return Err(Error::InvalidInput("need 2 ≤ d < n".into()));
    }
    let (d, n) = (d as i64, n as i64);
    let c = binomial(n - (d + 1) / 2, n - d) + binomial(n - (d + 2) / 2, n - d);
    c.to_u64().ok_or_else(|| Error::Internal("facet count overflow".into()))
}

/// Boundary f-vector `(f_{−1}, …, f_{d−1})` of `C_d(n)`, built from the Gale facets.
pub fn cyclic_f_vector(d: usize, n: usize) -> Result<Vec<i64>> {
    let k = SimplicialComplex::from_facets(n, gale_facets(d, n)?)?;
    Ok(k.f_vector().into_iter().map(|x| x as i64).collect())
}

fn simplicial_boundary(p: &Polytope) -> Result<Vec<i64>> {
    if !p.is_full_dimensional() {
        return Err(Error::InvalidInput("polytope must be full-dimensional".into()));
    }
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial("a facet is not a simplex".into()));
    }
    Ok(boundary_f_vector(&face_lattice(&p.h, &p.v)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBoundReport {
    pub d: usize,
    pub n: usize,
    /// `(f_{−1}, …, f_{d−1})` of the polytope boundary.
    pub f: Vec<i64>,
    pub cyclic_f: Vec<i64>,
    pub h: Vec<i64>,
    /// `C(n − d − 1 + k, k)` for `k = 0..=d`.
    pub h_bounds: Vec<i64>,
    pub f_ok: bool,
    pub h_ok: bool,
}

impl UpperBoundReport {
    pub fn ok(&self) -> bool {
        self.f_ok && self.h_ok
    }

    /// Equality in every face count.
    pub fn neighborly_equality(&self) -> bool {
        self.f == self.cyclic_f
    }
}

pub fn upper_bound_check(p: &Polytope) -> Result<UpperBoundReport> {
    let f = simplicial_boundary(p)?;
    let d = p.dim();
    let n = p.v.points.len();
    let cyclic_f = if n > d { cyclic_f_vector(d, n)? } else { f.clone() };
    let h = h_from_f(&f, d)?;
    let h_bounds: Vec<i64> = (0..=d as i64)
        .map(|k| binomial(n as i64 - d as i64 - 1 + k, k).to_i64().unwrap_or(i64::MAX))
        .collect();
    Ok(UpperBoundReport {
        d,
        n,
        f_ok: f.iter().zip(&cyclic_f).all(|(a, b)| a <= b),
        h_ok: h.iter().zip(&h_bounds).all(|(a, b)| a <= b),
        f,
        cyclic_f,
        h,
        h_bounds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub d: usize,
    pub n: usize,
    pub f: Vec<i64>,
    /// `(k, f_k, bound)` for `k = 0..=d−1`.
    pub bounds: Vec<(usize, i64, i64)>,
}

impl LowerBoundReport {
    pub fn ok(&self) -> bool {
        self.bounds.iter().all(|(_, fk, b)| fk >= b)
    }
}

/// The lower bound for `f_k` of a simplicial `d`-polytope with `n` vertices.
pub fn lower_bound(d: usize, n: usize, k: usize) -> i64 {
    let (d, n, k) = (d as i64, n as i64, k as i64);
    if k == d - 1 {
        (d - 1) * n - (d + 1) * (d - 2)
    } else {
        (binomial(d, k) * n - binomial(d + 1, k + 1) * k).to_i64().unwrap_or(i64::MIN)
    }
}

pub fn lower_bound_check(p: &Polytope) -> Result<LowerBoundReport> {
    let f = simplicial_boundary(p)?;
    let d = p.dim();
    let n = p.v.points.len();
    let bounds = (0..d).map(|k| (k, f[k + 1], lower_bound(d, n, k))).collect();
    Ok(LowerBoundReport { d, n, f, bounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, ints};

    #[test]
    fn moment_curve_examples() {
        assert_eq!(moment_curve(&int(0), 3), ints(&[0, 0, 0]));
        assert_eq!(moment_curve(&int(2), 3), ints(&[2, 4, 8]));
        assert_eq!(moment_curve(&frac(1, 2), 2), vec![frac(1, 2), frac(1, 4)]);
    }

    #[test]
    fn spec_validation() {
        assert!(CyclicSpec::new(3, ints(&[1, 2, 3])).is_err());
        assert!(CyclicSpec::new(2, ints(&[1, 3, 2])).is_err());
        assert!(CyclicSpec::new(1, ints(&[1, 2, 3])).is_err());
        assert!(CyclicSpec::standard(3, 5).is_ok());
    }

    #[test]
    fn gale_examples() {
        assert_eq!(gale_facets(3, 5).unwrap().len(), 6);
        assert_eq!(gale_facets(4, 7).unwrap().len(), 14);
        assert_eq!(
            gale_facets(2, 4).unwrap(),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
        assert_eq!(cyclic_facet_count(4, 7).unwrap(), 14);
        assert_eq!(cyclic_facet_count(3, 5).unwrap(), 6);
        assert_eq!(cyclic_facet_count(2, 9).unwrap(), 9);
        assert!(gale_facets(3, 3).is_err());
    }

    #[test]
    fn cyclic_vertices() {
        let p = Polytope::from_vrep(&cyclic_polytope(&CyclicSpec::standard(3, 5).unwrap())).unwrap();
        assert_eq!(p.v.points.len(), 5);
        assert!(p.is_simplicial());
        let p = Polytope::from_vrep(&cyclic_polytope(&CyclicSpec::standard(4, 6).unwrap())).unwrap();
        let l = face_lattice(&p.h, &p.v).unwrap();
        assert_eq!(l.count(1), 15);
    }

    fn octahedron() -> Polytope {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = ints(&[0, 0, 0]);
                v[i] = int(s);
                pts.push(v);
            }
        }
        Polytope::from_points(3, pts).unwrap()
    }

    #[test]
    fn bound_checks() {
        let oct = octahedron();
        let r = upper_bound_check(&oct).unwrap();
        assert!(r.ok());
        assert_eq!(r.f, vec![1, 6, 12, 8]);
        assert!(r.neighborly_equality());
        let lb = lower_bound_check(&oct).unwrap();
        assert!(lb.ok());
        assert_eq!(lb.bounds[2], (2, 8, 8));

        let simplex = Polytope::from_points(3, vec![ints(&[0, 0, 0]), ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap();
        let r = upper_bound_check(&simplex).unwrap();
        assert!(r.ok() && r.neighborly_equality());
        assert_eq!(lower_bound_check(&simplex).unwrap().bounds[2], (2, 4, 4));
        assert_eq!(lower_bound(3, 12, 2), 20);

        let cube = Polytope::from_points(
            3,
            (0..8).map(|i| ints(&[i & 1, (i >> 1) & 1, (i >> 2) & 1])).collect(),
        )
        .unwrap();
        assert!(matches!(upper_bound_check(&cube), Err(Error::NotSimplicial(_))));
    }
}
