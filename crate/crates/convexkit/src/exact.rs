//! Exact rationals, dense vectors and matrices, and the linear algebra
//! predicates everything else is built on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;
/// Dense vector of scalars.
pub type Vector = Vec<Scalar>;
/// Dense matrix stored as a list of rows.
pub type Matrix = Vec<Vector>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| int(x)).collect()
}

/// Parses `p/q` or `p` into a canonical rational.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::InvalidScalar(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Scalar::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(parse_int(p)?, q))
        }
    }
}

/// Renders a scalar as `p/q`, or `p` when the denominator is 1.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn format_vector(v: &[Scalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(" ")
}

/// Decimal rendering with a fixed number of fractional digits, rounded half away from zero.
pub fn to_decimal(x: &Scalar, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * Scalar::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded.is_negative();
    let (whole, rest) = rounded.abs().div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", rest.to_string(), width = digits));
    }
    out
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Scalar], s: &Scalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `s*a + t*b`
pub fn lincomb(s: &Scalar, a: &[Scalar], t: &Scalar, b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| s * x + t * y).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn norm_sq(a: &[Scalar]) -> Scalar {
    dot(a, a)
}

pub fn mat_vec(a: &[Vector], x: &[Scalar]) -> Vector {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn transpose(a: &[Vector]) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

/// Integer vector proportional to `v` by a positive factor, with coprime entries.
pub fn primitive(v: &[Scalar]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Representative of the ray through `v`: scaled by a positive factor to a primitive integer vector.
pub fn ray_normal_form(v: &[Scalar]) -> Vector {
    primitive(v).into_iter().map(Scalar::from_integer).collect()
}

fn integer_rows(a: &[Vector]) -> Vec<Vec<BigInt>> {
    a.iter().map(|r| primitive(r)).collect()
}

/// Bareiss elimination in place; returns the rank.
fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank by fraction-free elimination.
pub fn rank(a: &[Vector]) -> usize {
    let mut m = integer_rows(a);
    bareiss_rank(&mut m)
}

/// Rank of integer rows.
pub fn rank_int(a: &[Vec<BigInt>]) -> usize {
    let mut m = a.to_vec();
    bareiss_rank(&mut m)
}

/// Exact determinant of a square matrix.
pub fn determinant(a: &[Vector]) -> Result<Scalar> {
    let n = a.len();
    for row in a {
        check_dim(n, row.len())?;
    }
    if n == 0 {
        return Ok(Scalar::one());
    }
    // Clear denominators row by row, remembering the scale.
    let mut denom = Scalar::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in a {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        denom *= Scalar::from_integer(lcm.clone());
        m.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = Scalar::from_integer(m[n - 1][n - 1].clone() * sign) / denom;
    Ok(det)
}

/// Reduced row echelon form; returns the nonzero rows and the pivot columns.
pub fn rref(a: &[Vector]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of {x : A x = 0}.
pub fn nullspace(a: &[Vector], cols: usize) -> Matrix {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(cols);
            v[f] = Scalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or an error when it is singular.
pub fn inverse(a: &[Vector]) -> Result<Matrix> {
    let n = a.len();
    for row in a {
        check_dim(n, row.len())?;
    }
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Degenerate("singular matrix".into()));
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Matrix {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

/// Solves `A x = b`; free variables are set to zero. `None` when inconsistent.
pub fn solve_linear(a: &[Vector], b: &[Scalar]) -> Result<Option<Vector>> {
    check_dim(a.len(), b.len())?;
    let cols = a.first().map_or(0, Vec::len);
    for row in a {
        check_dim(cols, row.len())?;
    }
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = zeros(cols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}

/// Dimension of the affine hull: −1 for no points, otherwise rank of the differences.
pub fn affine_dimension(points: &[Vector]) -> Result<i64> {
    let Some(p0) = points.first() else {
        return Ok(-1);
    };
    for p in points {
        check_dim(p0.len(), p.len())?;
    }
    let diffs: Matrix = points[1..].iter().map(|p| sub(p, p0)).collect();
    Ok(rank(&diffs) as i64)
}

/// `(λ, λ², …, λ^d)`
pub fn perturbation_vector(lambda: &Scalar, d: usize) -> Vector {
    let mut out = Vec::with_capacity(d);
    let mut p = Scalar::one();
    for _ in 0..d {
        p *= lambda;
        out.push(p.clone());
    }
    out
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
