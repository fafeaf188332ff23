use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{dedup_rays, HCone, VCone};
use crate::bitset::BitSet;
use crate::exact::{neg, primitive, rank_int, ray_normal_form, rref, unit, Scalar, Vector};

/// Pairwise combination eliminating coordinate `k` (0-based) from a list of vectors:
/// keeps those with `v_k = 0` and adds `p_k·n − n_k·p` for `p_k > 0 > n_k`.
fn eliminate_pairs(vs: &[Vector], k: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = vs.iter().filter(|v| v[k].is_zero()).cloned().collect();
    for p in vs.iter().filter(|v| v[k].is_positive()) {
        for n in vs.iter().filter(|v| v[k].is_negative()) {
            let mut c: Vector = p
                .iter()
                .zip(n)
                .map(|(x, y)| &p[k] * y - &n[k] * x)
                .collect();
            c[k] = Scalar::zero();
            out.push(c);
        }
    }
    dedup_rays(out)
}

/// Generators of `C ∩ {x_k = 0}` (coordinate `k` is 0-based).
pub fn fm_slice(c: &VCone, k: usize) -> VCone {
    assert!(k < c.dim, "coordinate out of range");
    VCone {
        dim: c.dim,
        generators: eliminate_pairs(&c.generators, k),
    }
}

/// Inequalities of the orthogonal projection of `C` onto `{x_k = 0}` (coordinate `k` is 0-based),
/// including the pair of rows fixing `x_k = 0`.
pub fn fm_project(c: &HCone, k: usize) -> HCone {
    assert!(k < c.dim, "coordinate out of range");
    let mut normals = eliminate_pairs(&c.normals, k);
    normals.push(unit(c.dim, k));
    normals.push(neg(&unit(c.dim, k)));
    HCone {
        dim: c.dim,
        normals: dedup_rays(normals),
    }
}

struct Gen {
    v: Vec<BigInt>,
    tight: BitSet,
}

fn primitive_int(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Generators of the cone `{x ∈ R^dim : u·x ≤ 0 for u in normals}`.
///
/// The cone is the slice `w = 0` of `C₀ = {(x, w) : u_i·x ≤ w_i}`, whose generators
/// are `±(e_i, U e_i)` and `(0, e_j)`; the slack coordinates are sliced away one at a
/// time. After each slice only generators of the lineality space and one generator
/// per minimal proper face are kept, which is decided from the rank of the slack
/// functionals `w_i − u_i·x` vanishing at a generator.
///
/// The output is a basis of the lineality space together with its negation, followed by one
/// representative of each minimal proper face, all scaled to primitive integer vectors.
pub fn cone_generators(dim: usize, normals: &[Vector]) -> Vec<Vector> {
    let normals: Vec<Vec<BigInt>> = dedup_rays(normals.to_vec()).iter().map(|u| primitive(u)).collect();
    let m = normals.len();
    let big = dim + m;
    let unit_int = |i: usize| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); big];
        v[i] = BigInt::one();
        v
    };
    let mut gens: Vec<Gen> = Vec::new();
    for i in 0..dim {
        let mut v = unit_int(i);
        for (j, u) in normals.iter().enumerate() {
            v[dim + j] = u[i].clone();
        }
        let w: Vec<BigInt> = v.iter().map(|x| -x).collect();
        gens.push(Gen {
            v,
            tight: BitSet::full(m),
        });
        gens.push(Gen {
            v: w,
            tight: BitSet::full(m),
        });
    }
    for j in 0..m {
        let mut tight = BitSet::full(m);
        tight.remove(j);
        gens.push(Gen {
            v: unit_int(dim + j),
            tight,
        });
    }

    for j in 0..m {
        let col = dim + j;
        // Slack rows of unsliced coordinates own a private unit column, so the rank of a
        // tight set is its count of those rows plus the rank of the sliced normals in it.
        let rank_of_set = |t: &BitSet| -> usize {
            let sliced: Vec<Vec<BigInt>> = t.iter().filter(|&i| i <= j).map(|i| normals[i].clone()).collect();
            t.iter().filter(|&i| i > j).count() + rank_int(&sliced)
        };
        let full_rank = rank_of_set(&BitSet::full(m));
        let mut cache: HashMap<BitSet, usize> = HashMap::new();
        let mut rank_of = |t: &BitSet| -> usize {
            if let Some(&r) = cache.get(t) {
                return r;
            }
            let r = rank_of_set(t);
            cache.insert(t.clone(), r);
            r
        };

        let mut next: Vec<Gen> = Vec::new();
        let (mut pos, mut negs) = (Vec::new(), Vec::new());
        for g in gens {
            if g.v[col].is_zero() {
                next.push(g);
            } else if g.v[col].is_positive() {
                pos.push(g);
            } else {
                negs.push(g);
            }
        }
        for p in &pos {
            for n in &negs {
                let tight = p.tight.intersection(&n.tight);
                if tight.len() + 1 < full_rank || rank_of(&tight) + 1 < full_rank {
                    continue;
                }
                let s = -n.v[col].clone();
                let t = p.v[col].clone();
                let mut v: Vec<BigInt> = p.v.iter().zip(&n.v).map(|(x, y)| &s * x + &t * y).collect();
                v[col] = BigInt::zero();
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                next.push(Gen {
                    v: primitive_int(v),
                    tight,
                });
            }
        }

        // Keep the lineality space as ± an echelon basis, and one generator per minimal face.
        let mut lineal: Vec<Vector> = Vec::new();
        let mut faces: HashSet<BitSet> = HashSet::new();
        gens = Vec::new();
        for g in next {
            let r = rank_of(&g.tight);
            if r == full_rank {
                lineal.push(g.v.into_iter().map(Scalar::from_integer).collect());
            } else if r + 1 == full_rank && faces.insert(g.tight.clone()) {
                gens.push(g);
            }
        }
        let (basis, _) = rref(&lineal);
        for b in basis {
            let b = primitive(&b);
            gens.push(Gen {
                v: b.iter().map(|x| -x).collect(),
                tight: BitSet::full(m),
            });
            gens.push(Gen {
                v: b,
                tight: BitSet::full(m),
            });
        }
    }

    let mut lines = Vec::new();
    let mut rays = Vec::new();
    for g in gens {
        let x: Vector = g.v[..dim].iter().cloned().map(Scalar::from_integer).collect();
        if g.tight.len() == m {
            lines.push(x);
        } else {
            rays.push(x);
        }
    }
    lines.sort();
    rays.sort();
    lines.extend(rays);
    dedup_rays(lines).into_iter().map(|v| ray_normal_form(&v)).collect()
}
