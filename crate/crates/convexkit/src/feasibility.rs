//! Fourier–Motzkin engine for systems of linear equations and inequalities.
//!
//! Every derived row remembers the combination of input rows it came from, so an
//! infeasible system yields an explicit certificate and a feasible one yields a
//! point by back-substitution.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{dot, zeros, Scalar, Vector};

/// A constraint `a·x ≤ b` (or `a·x = b` when stored as an equation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub a: Vector,
    pub b: Scalar,
}

impl Constraint {
    pub fn new(a: Vector, b: Scalar) -> Self {
        Constraint { a, b }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub nvars: usize,
    pub ineqs: Vec<Constraint>,
    pub eqs: Vec<Constraint>,
}

/// Multipliers `y ≥ 0` (inequalities) and `w` (equations) with
/// `yᵀA + wᵀE = 0` and `yᵀb + wᵀc < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasibility {
    pub ineq_multipliers: Vector,
    pub eq_multipliers: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vector),
    Infeasible(Infeasibility),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn point(self) -> Option<Vector> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            ..Default::default()
        }
    }

    pub fn le(&mut self, a: Vector, b: Scalar) -> &mut Self {
        debug_assert_eq!(a.len(), self.nvars);
        self.ineqs.push(Constraint::new(a, b));
        self
    }

    pub fn ge(&mut self, a: Vector, b: Scalar) -> &mut Self {
        let a = a.into_iter().map(|x| -x).collect();
        self.le(a, -b)
    }

    pub fn equal(&mut self, a: Vector, b: Scalar) -> &mut Self {
        debug_assert_eq!(a.len(), self.nvars);
        self.eqs.push(Constraint::new(a, b));
        self
    }

    pub fn is_satisfied_by(&self, x: &[Scalar]) -> bool {
        self.ineqs.iter().all(|c| dot(&c.a, x) <= c.b) && self.eqs.iter().all(|c| dot(&c.a, x) == c.b)
    }

    pub fn solve(&self) -> Feasibility {
        let all: Vec<usize> = (0..self.nvars).collect();
        let mut engine = Engine::new(self);
        match engine.eliminate(&all) {
            Err(cert) => Feasibility::Infeasible(cert),
            Ok(()) => Feasibility::Feasible(engine.back_substitute()),
        }
    }

    /// Projects onto the variables not listed in `eliminate`, keeping their order.
    pub fn project(&self, eliminate: &[usize]) -> LinearSystem {
        let keep: Vec<usize> = (0..self.nvars).filter(|v| !eliminate.contains(v)).collect();
        let mut engine = Engine::new(self);
        let mut out = LinearSystem::new(keep.len());
        if engine.eliminate(eliminate).is_err() {
            out.le(zeros(keep.len()), -Scalar::one());
            return out;
        }
        let restrict = |a: &[BigInt]| keep.iter().map(|&v| to_scalar(&a[v])).collect::<Vector>();
        for r in &engine.rows {
            out.ineqs.push(Constraint::new(restrict(&r.a), to_scalar(&r.b)));
        }
        for r in &engine.eq_rows {
            out.eqs.push(Constraint::new(restrict(&r.a), to_scalar(&r.b)));
        }
        out
    }
}

impl Infeasibility {
    /// Checks the certificate against the system by substitution.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.ineq_multipliers.len() != sys.ineqs.len() || self.eq_multipliers.len() != sys.eqs.len() {
            return false;
        }
        if self.ineq_multipliers.iter().any(Signed::is_negative) {
            return false;
        }
        let mut combo = zeros(sys.nvars);
        let mut rhs = Scalar::zero();
        let pairs = sys
            .ineqs
            .iter()
            .zip(&self.ineq_multipliers)
            .chain(sys.eqs.iter().zip(&self.eq_multipliers));
        for (c, m) in pairs {
            for (acc, a) in combo.iter_mut().zip(&c.a) {
                *acc += m * a;
            }
            rhs += m * &c.b;
        }
        combo.iter().all(Zero::is_zero) && rhs.is_negative()
    }
}

/// Integer row `a·x ≤ b` (or `= b`) together with the integer multipliers of the
/// scaled input rows it was derived from.
#[derive(Debug, Clone)]
struct Row {
    a: Vec<BigInt>,
    b: BigInt,
    y: Vec<BigInt>,
    w: Vec<BigInt>,
}

impl Row {
    fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.a.iter().chain(std::iter::once(&self.b)).chain(&self.y).chain(&self.w)
    }

    /// Divides out the common content (a positive factor).
    fn reduce(mut self) -> Row {
        let g = self.entries().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in self.a.iter_mut().chain(std::iter::once(&mut self.b)).chain(&mut self.y).chain(&mut self.w) {
                *x /= &g;
            }
        }
        self
    }

    fn combine(&self, s: &BigInt, other: &Row, t: &BigInt) -> Row {
        let lc = |p: &[BigInt], q: &[BigInt]| -> Vec<BigInt> { p.iter().zip(q).map(|(x, z)| s * x + t * z).collect() };
        Row {
            a: lc(&self.a, &other.a),
            b: s * &self.b + t * &other.b,
            y: lc(&self.y, &other.y),
            w: lc(&self.w, &other.w),
        }
        .reduce()
    }

    fn negated(&self) -> Row {
        let ng = |p: &[BigInt]| -> Vec<BigInt> { p.iter().map(|x| -x).collect() };
        Row {
            a: ng(&self.a),
            b: -&self.b,
            y: ng(&self.y),
            w: ng(&self.w),
        }
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }
}

enum Stage {
    /// `x_var = (b − Σ_{j≠var} a_j x_j) / a_var`
    Pivot { var: usize, row: Row },
    /// Bounds on `var` from the rows present when it was eliminated.
    Bounds { var: usize, rows: Vec<Row> },
}

struct Engine {
    nvars: usize,
    rows: Vec<Row>,
    eq_rows: Vec<Row>,
    stages: Vec<Stage>,
    fm_steps: usize,
    ineq_scale: Vec<BigInt>,
    eq_scale: Vec<BigInt>,
}

/// Integer multiple `(L·a, L·b)` of a rational constraint, with `L > 0`.
fn integerize(c: &Constraint) -> (Vec<BigInt>, BigInt, BigInt) {
    let l = c
        .a
        .iter()
        .chain(std::iter::once(&c.b))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let conv = |x: &Scalar| x.numer() * (&l / x.denom());
    (c.a.iter().map(conv).collect(), conv(&c.b), l)
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn unit_int(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

fn to_scalar(x: &BigInt) -> Scalar {
    Scalar::from_integer(x.clone())
}

impl Engine {
    fn new(sys: &LinearSystem) -> Self {
        let m = sys.ineqs.len();
        let k = sys.eqs.len();
        let mut ineq_scale = Vec::with_capacity(m);
        let mut eq_scale = Vec::with_capacity(k);
        let mut rows = Vec::with_capacity(m);
        for (i, c) in sys.ineqs.iter().enumerate() {
            let (a, b, l) = integerize(c);
            ineq_scale.push(l);
            rows.push(Row {
                a,
                b,
                y: unit_int(m, i),
                w: vec![BigInt::zero(); k],
            });
        }
        let mut eq_rows = Vec::with_capacity(k);
        for (i, c) in sys.eqs.iter().enumerate() {
            let (a, b, l) = integerize(c);
            eq_scale.push(l);
            eq_rows.push(Row {
                a,
                b,
                y: vec![BigInt::zero(); m],
                w: unit_int(k, i),
            });
        }
        Engine {
            nvars: sys.nvars,
            rows,
            eq_rows,
            stages: Vec::new(),
            fm_steps: 0,
            ineq_scale,
            eq_scale,
        }
    }

    fn certificate(&self, r: &Row) -> Infeasibility {
        Infeasibility {
            ineq_multipliers: r.y.iter().zip(&self.ineq_scale).map(|(y, l)| to_scalar(&(y * l))).collect(),
            eq_multipliers: r.w.iter().zip(&self.eq_scale).map(|(w, l)| to_scalar(&(w * l))).collect(),
        }
    }

    fn eliminate(&mut self, vars: &[usize]) -> Result<(), Infeasibility> {
        self.substitute_equations(vars)?;
        self.clean()?;
        let mut remaining: Vec<usize> = vars
            .iter()
            .copied()
            .filter(|&v| !self.stages.iter().any(|s| matches!(s, Stage::Pivot { var, .. } if *var == v)))
            .collect();
        while !remaining.is_empty() {
            // Cheapest variable first: fewest new rows.
            let (pos, &var) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| {
                    let p = self.rows.iter().filter(|r| r.a[v].is_positive()).count();
                    let n = self.rows.iter().filter(|r| r.a[v].is_negative()).count();
                    (p * n) as i64 - (p + n) as i64
                })
                .unwrap();
            remaining.remove(pos);
            self.fourier_motzkin_step(var)?;
        }
        Ok(())
    }

    fn contradiction(&self, e: &Row) -> Infeasibility {
        // 0 = b with b ≠ 0: orient so the right-hand side is negative.
        if e.b.is_positive() {
            self.certificate(&e.negated())
        } else {
            self.certificate(e)
        }
    }

    fn substitute_equations(&mut self, vars: &[usize]) -> Result<(), Infeasibility> {
        loop {
            let mut found = None;
            'search: for (i, e) in self.eq_rows.iter().enumerate() {
                for &v in vars {
                    if !e.a[v].is_zero() {
                        found = Some((i, v));
                        break 'search;
                    }
                }
            }
            let Some((i, var)) = found else { break };
            let mut pivot = self.eq_rows.swap_remove(i);
            if pivot.a[var].is_negative() {
                pivot = pivot.negated();
            }
            let pv = pivot.a[var].clone();
            for r in self.rows.iter_mut().chain(self.eq_rows.iter_mut()) {
                if !r.a[var].is_zero() {
                    let f = -r.a[var].clone();
                    *r = r.combine(&pv, &pivot, &f);
                }
            }
            self.stages.push(Stage::Pivot { var, row: pivot });
            if let Some(e) = self.eq_rows.iter().find(|e| e.is_trivial() && !e.b.is_zero()) {
                return Err(self.contradiction(e));
            }
        }
        self.eq_rows.retain(|e| !(e.is_trivial() && e.b.is_zero()));
        if let Some(e) = self.eq_rows.iter().find(|e| e.is_trivial()) {
            return Err(self.contradiction(e));
        }
        Ok(())
    }

    /// Drops trivial rows, reports contradictions, and removes rows implied by a
    /// parallel row that is at least as tight and has no more ancestors. A tighter
    /// row with other ancestors does not replace a weaker one, since the pruning in
    /// [`Engine::fourier_motzkin_step`] counts ancestors.
    fn clean(&mut self) -> Result<(), Infeasibility> {
        let mut groups: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
        let mut kept: Vec<Option<Row>> = Vec::with_capacity(self.rows.len());
        for r in std::mem::take(&mut self.rows) {
            if r.is_trivial() {
                if r.b.is_negative() {
                    return Err(self.certificate(&r));
                }
                continue;
            }
            let g = content(&r.a);
            let key: Vec<BigInt> = r.a.iter().map(|x| x / &g).collect();
            let group = groups.entry(key).or_default();
            let implies = |s: &Row, t: &Row| {
                let (gs, gt) = (content(&s.a), content(&t.a));
                &s.b * &gt <= &t.b * &gs && s.y.iter().zip(&t.y).all(|(a, b)| a.is_zero() || !b.is_zero())
            };
            if group.iter().any(|&i| kept[i].as_ref().is_some_and(|k| implies(k, &r))) {
                continue;
            }
            group.retain(|&i| {
                let drop = kept[i].as_ref().is_some_and(|k| implies(&r, k));
                if drop {
                    kept[i] = None;
                }
                !drop
            });
            group.push(kept.len());
            kept.push(Some(r));
        }
        self.rows = kept.into_iter().flatten().collect();
        Ok(())
    }

    fn fourier_motzkin_step(&mut self, var: usize) -> Result<(), Infeasibility> {
        let mut pos = Vec::new();
        let mut negs = Vec::new();
        let mut rest = Vec::new();
        for r in self.rows.drain(..) {
            if r.a[var].is_positive() {
                pos.push(r);
            } else if r.a[var].is_negative() {
                negs.push(r);
            } else {
                rest.push(r);
            }
        }
        self.fm_steps += 1;
        let limit = self.fm_steps + 1;
        for p in &pos {
            for n in &negs {
                // Chernikov: rows built from more than k+1 originals after k steps are redundant.
                let support = p.y.iter().zip(&n.y).filter(|(a, b)| !a.is_zero() || !b.is_zero()).count();
                if support > limit {
                    continue;
                }
                let s = -n.a[var].clone();
                let t = p.a[var].clone();
                let mut r = p.combine(&s, n, &t);
                r.a[var] = BigInt::zero();
                rest.push(r);
            }
        }
        let mut bounds = pos;
        bounds.extend(negs);
        self.stages.push(Stage::Bounds { var, rows: bounds });
        self.rows = rest;
        self.clean()
    }

    fn back_substitute(&self) -> Vector {
        let mut x = zeros(self.nvars);
        let solve_for = |r: &Row, var: usize, x: &Vector| -> Scalar {
            let mut rest = Scalar::zero();
            for (j, c) in r.a.iter().enumerate() {
                if j != var && !c.is_zero() {
                    rest += to_scalar(c) * &x[j];
                }
            }
            (to_scalar(&r.b) - rest) / to_scalar(&r.a[var])
        };
        for stage in self.stages.iter().rev() {
            match stage {
                Stage::Bounds { var, rows } => {
                    let mut lo: Option<Scalar> = None;
                    let mut hi: Option<Scalar> = None;
                    for r in rows {
                        let bound = solve_for(r, *var, &x);
                        if r.a[*var].is_positive() {
                            if hi.as_ref().is_none_or(|h| bound < *h) {
                                hi = Some(bound);
                            }
                        } else if lo.as_ref().is_none_or(|l| bound > *l) {
                            lo = Some(bound);
                        }
                    }
                    x[*var] = match (lo, hi) {
                        (Some(l), Some(h)) => (l + h) / Scalar::from_integer(2.into()),
                        (Some(l), None) => l,
                        (None, Some(h)) => h,
                        (None, None) => Scalar::zero(),
                    };
                }
                Stage::Pivot { var, row } => {
                    x[*var] = solve_for(row, *var, &x);
                }
            }
        }
        x
    }
}
