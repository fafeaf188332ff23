//! Text formats: H- and V-representations, quadric matrices, point sets and
//! simplicial complexes.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::complexes::SimplicialComplex;
use crate::duality::Quadric;
use crate::error::{Error, Result};
use crate::exact::{format_scalar, format_vector, parse_scalar, Scalar, Vector};
use crate::polyhedra::{HRep, HRow, Representation, VRep};

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Nonblank, non-comment lines split into tokens with 1-based positions.
/// Comments start with `#` or `*`.
struct Lines<'a> {
    lines: Vec<(usize, Vec<Token<'a>>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim_start().starts_with('*') {
                continue;
            }
            let mut toks = Vec::new();
            let mut start = None;
            for (j, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        toks.push(Token {
                            text: &content[s..j],
                            line: i + 1,
                            column: content[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !toks.is_empty() {
                lines.push((i + 1, toks));
            }
        }
        Lines { lines, pos: 0, last_line }
    }

    fn next(&mut self, what: &str) -> Result<&(usize, Vec<Token<'a>>)> {
        let l = self
            .lines
            .get(self.pos)
            .ok_or_else(|| parse_error(self.last_line + 1, 1, format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(l)
    }

    fn peek(&self) -> Option<&(usize, Vec<Token<'a>>)> {
        self.lines.get(self.pos)
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let (line, toks) = self.next(word)?;
        if toks.len() != 1 || !toks[0].text.eq_ignore_ascii_case(word) {
            return Err(parse_error(*line, toks[0].column, format!("expected {word:?}, found {:?}", toks[0].text)));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, toks)) => Err(parse_error(*line, toks[0].column, "unexpected content after end")),
        }
    }
}

fn scalar(t: &Token) -> Result<Scalar> {
    parse_scalar(t.text).map_err(|_| parse_error(t.line, t.column, format!("invalid rational {:?}", t.text)))
}

fn natural(t: &Token) -> Result<usize> {
    t.text
        .parse()
        .map_err(|_| parse_error(t.line, t.column, format!("expected a nonnegative integer, found {:?}", t.text)))
}

fn row(line: usize, toks: &[Token], width: usize) -> Result<Vector> {
    if toks.len() != width {
        let col = toks.get(width).or(toks.last()).map_or(1, |t| t.column);
        return Err(parse_error(line, col, format!("expected {width} entries, found {}", toks.len())));
    }
    toks.iter().map(scalar).collect()
}

struct Block {
    rows: Vec<Vector>,
    columns: usize,
    /// Line and column of each row's first entry.
    starts: Vec<(usize, usize)>,
}

/// Reads `begin`, the `m n rational` header and `m` rows of width `n`, then `end`.
fn matrix_block(lines: &mut Lines) -> Result<Block> {
    lines.keyword("begin")?;
    let (line, toks) = lines.next("matrix size")?.clone();
    if toks.len() != 3 {
        return Err(parse_error(line, toks[0].column, "expected \"rows columns rational\""));
    }
    let m = natural(&toks[0])?;
    let n = natural(&toks[1])?;
    if !toks[2].text.eq_ignore_ascii_case("rational") && !toks[2].text.eq_ignore_ascii_case("integer") {
        return Err(parse_error(line, toks[2].column, format!("unsupported number type {:?}", toks[2].text)));
    }
    if n == 0 {
        return Err(parse_error(line, toks[1].column, "at least one column is required"));
    }
    let mut rows = Vec::with_capacity(m);
    let mut starts = Vec::with_capacity(m);
    for _ in 0..m {
        let (l, t) = lines.next("a matrix row")?.clone();
        if t.len() == 1 && t[0].text.eq_ignore_ascii_case("end") {
            return Err(parse_error(l, 1, format!("expected {m} rows, found {}", rows.len())));
        }
        rows.push(row(l, &t, n)?);
        starts.push((l, t[0].column));
    }
    lines.keyword("end")?;
    Ok(Block { rows, columns: n, starts })
}

fn linearity(lines: &mut Lines) -> Result<Vec<(usize, usize, usize)>> {
    let mut out = Vec::new();
    if let Some((line, toks)) = lines.peek().cloned() {
        if toks[0].text.eq_ignore_ascii_case("linearity") {
            lines.pos += 1;
            let k = toks.get(1).ok_or_else(|| parse_error(line, toks[0].column, "linearity needs a count"))?;
            let k = natural(k)?;
            if toks.len() != k + 2 {
                return Err(parse_error(line, toks[0].column, format!("linearity lists {k} indices")));
            }
            for t in &toks[2..] {
                out.push((natural(t)?, t.line, t.column));
            }
        }
    }
    Ok(out)
}

fn check_linearity(lin: &[(usize, usize, usize)], m: usize) -> Result<Vec<bool>> {
    let mut flags = vec![false; m];
    for &(i, line, column) in lin {
        if i == 0 || i > m {
            return Err(parse_error(line, column, format!("linearity index {i} out of range 1..={m}")));
        }
        flags[i - 1] = true;
    }
    Ok(flags)
}

pub fn parse_hrep(text: &str) -> Result<HRep> {
    let mut lines = Lines::new(text);
    lines.keyword("H-representation")?;
    let lin = linearity(&mut lines)?;
    let block = matrix_block(&mut lines)?;
    lines.finish()?;
    let flags = check_linearity(&lin, block.rows.len())?;
    let mut h = HRep::new(block.columns - 1);
    for (r, eq) in block.rows.into_iter().zip(flags) {
        let row = HRow::new(r[0].clone(), r[1..].to_vec());
        if eq {
            h.push_eq(row)?;
        } else {
            h.push_ineq(row)?;
        }
    }
    Ok(h)
}

pub fn parse_vrep(text: &str) -> Result<VRep> {
    let mut lines = Lines::new(text);
    lines.keyword("V-representation")?;
    let lin = linearity(&mut lines)?;
    let block = matrix_block(&mut lines)?;
    lines.finish()?;
    let flags = check_linearity(&lin, block.rows.len())?;
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for ((r, lineal), (line, column)) in block.rows.into_iter().zip(flags).zip(block.starts) {
        if r[0].is_one() && !lineal {
            points.push(r[1..].to_vec());
        } else if r[0].is_zero() {
            if lineal {
                rays.push(r[1..].iter().map(|x| -x).collect());
            }
            rays.push(r[1..].to_vec());
        } else {
            return Err(parse_error(line, column, "leading entry must be 1 (point) or 0 (ray)"));
        }
    }
    VRep::new(block.columns - 1, points, rays)
}

/// Reads either representation, dispatching on the first keyword.
pub fn parse_representation(text: &str) -> Result<Representation> {
    let lines = Lines::new(text);
    match lines.peek() {
        Some((_, t)) if t[0].text.eq_ignore_ascii_case("H-representation") => Ok(Representation::H(parse_hrep(text)?)),
        Some((_, t)) if t[0].text.eq_ignore_ascii_case("V-representation") => Ok(Representation::V(parse_vrep(text)?)),
        Some((line, t)) => Err(parse_error(*line, t[0].column, "expected H-representation or V-representation")),
        None => Err(parse_error(1, 1, "empty input")),
    }
}

pub fn parse_quadric(text: &str) -> Result<Quadric> {
    let mut lines = Lines::new(text);
    lines.keyword("Q-matrix")?;
    let block = matrix_block(&mut lines)?;
    lines.finish()?;
    if block.rows.len() != block.columns {
        let (line, column) = block.starts.first().copied().unwrap_or((1, 1));
        return Err(parse_error(line, column, "quadric matrix must be square"));
    }
    Quadric::new(block.rows)
}

pub fn parse_points(text: &str) -> Result<Vec<Vector>> {
    let mut lines = Lines::new(text);
    lines.keyword("P")?;
    let (line, toks) = lines.next("point count and dimension")?.clone();
    if toks.len() != 2 {
        return Err(parse_error(line, toks[0].column, "expected \"n d\""));
    }
    let n = natural(&toks[0])?;
    let d = natural(&toks[1])?;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let (l, t) = lines.next("a point")?.clone();
        pts.push(row(l, &t, d)?);
    }
    lines.finish()?;
    Ok(pts)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    Ok(parse_complex_listing(text)?.0)
}

/// The complex together with its faces in file order.
pub fn parse_complex_listing(text: &str) -> Result<(SimplicialComplex, Vec<Vec<usize>>)> {
    let mut lines = Lines::new(text);
    lines.keyword("SC")?;
    let (line, toks) = lines.next("vertex count")?.clone();
    if toks.len() != 2 || !toks[0].text.eq_ignore_ascii_case("vertices") {
        return Err(parse_error(line, toks[0].column, "expected \"vertices n\""));
    }
    let n = natural(&toks[1])?;
    let mut faces = Vec::new();
    while let Some((_, toks)) = lines.peek().cloned() {
        lines.pos += 1;
        let mut face = Vec::with_capacity(toks.len());
        for t in &toks {
            let v = natural(t)?;
            if v >= n {
                return Err(parse_error(t.line, t.column, format!("vertex {v} out of range 0..{n}")));
            }
            if face.last().is_some_and(|&p| p >= v) {
                return Err(parse_error(t.line, t.column, "face indices must be strictly increasing"));
            }
            face.push(v);
        }
        faces.push(face);
    }
    Ok((SimplicialComplex::from_facets(n, faces.clone())?, faces))
}

pub fn write_hrep(h: &HRep) -> String {
    let mut s = String::from("H-representation\n");
    if !h.eqs.is_empty() {
        let idx: Vec<String> = (1..=h.eqs.len()).map(|i| i.to_string()).collect();
        let _ = writeln!(s, "linearity {} {}", h.eqs.len(), idx.join(" "));
    }
    let _ = writeln!(s, "begin\n{} {} rational", h.eqs.len() + h.ineqs.len(), h.dim + 1);
    for r in h.eqs.iter().chain(&h.ineqs) {
        let _ = writeln!(s, "{} {}", format_scalar(&r.b), format_vector(&r.a));
    }
    s.push_str("end\n");
    s
}

pub fn write_vrep(v: &VRep) -> String {
    let mut s = String::from("V-representation\nbegin\n");
    let _ = writeln!(s, "{} {} rational", v.points.len() + v.rays.len(), v.dim + 1);
    for p in &v.points {
        let _ = writeln!(s, "1 {}", format_vector(p));
    }
    for r in &v.rays {
        let _ = writeln!(s, "0 {}", format_vector(r));
    }
    s.push_str("end\n");
    s
}

pub fn write_quadric(q: &Quadric) -> String {
    let n = q.matrix.len();
    let mut s = format!("Q-matrix\nbegin\n{n} {n} rational\n");
    for r in &q.matrix {
        let _ = writeln!(s, "{}", format_vector(r));
    }
    s.push_str("end\n");
    s
}

pub fn write_points(points: &[Vector]) -> String {
    let d = points.first().map_or(0, Vec::len);
    let mut s = format!("P\n{} {d}\n", points.len());
    for p in points {
        let _ = writeln!(s, "{}", format_vector(p));
    }
    s
}

/// Writes the facets of a complex.
pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut s = format!("SC\nvertices {}\n", k.n_vertices);
    for f in k.facets() {
        let idx: Vec<String> = f.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "{}", idx.join(" "));
    }
    s
}

/// `key=value` lines.
pub fn report_line(key: &str, value: impl std::fmt::Display) -> String {
    format!("{key}={value}")
}

pub fn format_labeled(label: &str, v: &[Scalar]) -> String {
    format!("{label}=({})", v.iter().map(format_scalar).collect::<Vec<_>>().join(", "))
}
