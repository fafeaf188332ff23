use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use convexkit::delvor::{DelaunayComplex, VoronoiDiagram};
use convexkit::exact::{sub, to_decimal};
use convexkit::polyhedra::{h_to_v, HRep};
use convexkit::{Scalar, Vector};
use num_traits::{Signed, Zero};

const DIGITS: usize = 12;

fn dec(x: &Scalar) -> String {
    to_decimal(x, DIGITS)
}

fn half_plane(v: &[Scalar]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Sorts planar points counterclockwise around their centroid.
fn cyclic_order(points: &mut [Vector]) {
    if points.is_empty() {
        return;
    }
    let n = Scalar::from_integer((points.len() as i64).into());
    let c: Vector = (0..2).map(|k| points.iter().map(|p| p[k].clone()).sum::<Scalar>() / &n).collect();
    points.sort_by(|a, b| {
        let (u, v) = (sub(a, &c), sub(b, &c));
        half_plane(&u).cmp(&half_plane(&v)).then_with(|| {
            let cross = &u[0] * &v[1] - &u[1] * &v[0];
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
}

/// `[xmin, ymin, xmax, ymax]` of the points, padded by half the larger extent.
fn padded_box(points: &[Vector]) -> [Scalar; 4] {
    let min = |k: usize| points.iter().map(|p| p[k].clone()).min().unwrap_or_default();
    let max = |k: usize| points.iter().map(|p| p[k].clone()).max().unwrap_or_default();
    let (x0, y0, x1, y1) = (min(0), min(1), max(0), max(1));
    let mut pad = (&x1 - &x0).max(&y1 - &y0) / Scalar::from_integer(2.into());
    if pad.is_zero() {
        pad = Scalar::from_integer(1.into());
    }
    [&x0 - &pad, &y0 - &pad, x1 + &pad, y1 + pad]
}

fn svg_header(b: &[Scalar; 4], comment: &str) -> String {
    let w = &b[2] - &b[0];
    let h = &b[3] - &b[1];
    let mut s = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(s, "<!-- {comment} -->");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        dec(&b[0]),
        dec(&-b[3].clone()),
        dec(&w),
        dec(&h)
    );
    s
}

fn stroke(b: &[Scalar; 4]) -> String {
    dec(&((&b[2] - &b[0]).max(&b[3] - &b[1]) / Scalar::from_integer(300.into())))
}

fn polygon(points: &[Vector], style: &str) -> String {
    let pts: Vec<String> = points.iter().map(|p| format!("{},{}", dec(&p[0]), dec(&-p[1].clone()))).collect();
    format!("<polygon points=\"{}\" {style}/>\n", pts.join(" "))
}

fn sites_markup(sites: &[Vector], r: &str) -> String {
    let mut s = String::new();
    for p in sites {
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"black\"/>",
            dec(&p[0]),
            dec(&-p[1].clone())
        );
    }
    s
}

pub fn delaunay_svg(del: &DelaunayComplex) -> Result<String, String> {
    if del.dim() != 2 {
        return Err("SVG output needs planar sites".into());
    }
    let b = padded_box(&del.sites);
    let sw = stroke(&b);
    let mut s = svg_header(&b, "Delaunay subdivision");
    for c in &del.cells {
        let mut pts: Vec<Vector> = c.iter().map(|&i| del.sites[i].clone()).collect();
        cyclic_order(&mut pts);
        s.push_str(&polygon(&pts, &format!("fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\"")));
    }
    s.push_str(&sites_markup(&del.sites, &sw));
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn voronoi_svg(sites: &[Vector], vd: &VoronoiDiagram, bbox: Option<[Scalar; 4]>) -> Result<String, String> {
    if vd.dim != 2 {
        return Err("SVG output needs planar sites".into());
    }
    let b = bbox.unwrap_or_else(|| padded_box(sites));
    if b[0] >= b[2] || b[1] >= b[3] {
        return Err("empty clipping box".into());
    }
    let mut clip = HRep::new(2);
    let one = Scalar::from_integer(1.into());
    let zero = Scalar::zero();
    let e = |x: &Scalar, y: &Scalar| vec![x.clone(), y.clone()];
    clip.le(e(&one, &zero), b[2].clone()).map_err(|e| e.to_string())?;
    clip.le(e(&-one.clone(), &zero), -b[0].clone()).map_err(|e| e.to_string())?;
    clip.le(e(&zero, &one), b[3].clone()).map_err(|e| e.to_string())?;
    clip.le(e(&zero, &-one.clone()), -b[1].clone()).map_err(|e| e.to_string())?;
    let sw = stroke(&b);
    let corners: Vec<String> = b.iter().map(dec).collect();
    let comment = format!("Voronoi diagram clipped to box {}", corners.join(" "));
    let mut s = svg_header(&b, &comment);
    for cell in &vd.cells {
        let region = cell.intersect(&clip).map_err(|e| e.to_string())?;
        let mut pts = h_to_v(&region).map_err(|e| e.to_string())?.points;
        cyclic_order(&mut pts);
        s.push_str(&polygon(&pts, &format!("fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\"")));
    }
    s.push_str(&sites_markup(sites, &sw));
    s.push_str("</svg>\n");
    Ok(s)
}

/// ASCII OFF of the cells (d = 2), their boundary triangles (d = 3) or segments (d = 1).
pub fn delaunay_off(del: &DelaunayComplex) -> Result<String, String> {
    let d = del.dim();
    let faces: Vec<Vec<usize>> = match d {
        1 | 2 => del
            .cells
            .iter()
            .map(|c| {
                if d == 1 {
                    return c.clone();
                }
                let mut pts: Vec<(Vector, usize)> = c.iter().map(|&i| (del.sites[i].clone(), i)).collect();
                let mut coords: Vec<Vector> = pts.iter().map(|(p, _)| p.clone()).collect();
                cyclic_order(&mut coords);
                pts.sort_by_key(|(p, _)| coords.iter().position(|q| q == p));
                pts.into_iter().map(|(_, i)| i).collect()
            })
            .collect(),
        3 => {
            if !del.simplicial {
                return Err("OFF output for 3-dimensional subdivisions needs simplicial cells".into());
            }
            let mut tris = BTreeSet::new();
            for c in &del.cells {
                for skip in 0..c.len() {
                    let t: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                    tris.insert(t);
                }
            }
            tris.into_iter().collect()
        }
        _ => return Err("OFF output needs dimension at most 3".into()),
    };
    let mut s = format!("OFF\n{} {} 0\n", del.sites.len(), faces.len());
    let zero = Scalar::zero();
    for p in &del.sites {
        let coords: Vec<String> = (0..3).map(|k| dec(p.get(k).unwrap_or(&zero))).collect();
        let _ = writeln!(s, "{}", coords.join(" "));
    }
    for f in &faces {
        let idx: Vec<String> = f.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{} {}", f.len(), idx.join(" "));
    }
    Ok(s)
}
