use std::fmt::Display;
use std::fs;
use std::path::Path;

use convexkit::classics::{
    caratheodory_reduce, centerpoint, farkas, helly_check, radon_partition, tukey_depth, verify_centerpoint,
    verify_farkas, ConvexCombination, FarkasCertificate, FarkasProblem,
};
use convexkit::complexes::{
    boundary_f_vector, dehn_sommerville_check, euler_check, h_from_f, is_shelling, line_shelling_from, EulerTarget,
    SimplicialComplex,
};
use convexkit::cyclic::{cyclic_facet_count, cyclic_polytope, gale_facets, lower_bound_check, upper_bound_check, CyclicSpec};
use convexkit::delvor::{
    delaunay_paraboloid, delaunay_sphere, empty_circumsphere_check, voronoi_diagram, voronoi_from_delaunay_duality,
};
use convexkit::duality::{affine_quadric_dual, check_completion_duality_commutes, polar_dual_h, polar_dual_v, Quadric};
use convexkit::exact::{format_scalar, parse_scalar, transpose, zeros};
use convexkit::io::{
    format_labeled, parse_complex_listing, parse_hrep, parse_points, parse_quadric, parse_representation, parse_vrep,
    write_complex, write_hrep, write_vrep,
};
use convexkit::polyhedra::{canonicalize_vrep, face_lattice, h_to_v, make_irredundant, v_to_h, Polytope, Representation, VRep};
use convexkit::{Error, Scalar, Vector};

use crate::figures;
use crate::{Cli, Command, Method, Target, Version};

type Outcome = Result<bool, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn at<T>(path: &Path, r: convexkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| match e {
        Error::Parse { .. } => format!("{}: {e}", path.display()),
        other => other.to_string(),
    })
}

fn lib<T>(r: convexkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn kv(key: &str, value: impl Display) {
    println!("{key}={value}");
}

fn tuple<T: Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn indices(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_vector(text: &str) -> Result<Vector, String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| parse_scalar(s).map_err(|e| e.to_string()))
        .collect()
}

fn keyword(text: &str) -> &str {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty() && !l.starts_with('*'))
        .unwrap_or("")
}

enum Input {
    Polytope(Polytope),
    Complex(SimplicialComplex, Vec<Vec<usize>>),
}

fn load_representation(path: &Path) -> Result<Representation, String> {
    at(path, parse_representation(&read(path)?))
}

fn load_polytope(path: &Path) -> Result<Polytope, String> {
    match load_representation(path)? {
        Representation::H(h) => lib(Polytope::from_hrep(&h)),
        Representation::V(v) => lib(Polytope::from_vrep(&v)),
    }
}

fn load_input(path: &Path) -> Result<Input, String> {
    let text = read(path)?;
    if keyword(&text).eq_ignore_ascii_case("SC") {
        let (k, order) = at(path, parse_complex_listing(&text))?;
        Ok(Input::Complex(k, order))
    } else {
        load_polytope(path).map(Input::Polytope)
    }
}

fn load_points(path: &Path) -> Result<Vec<Vector>, String> {
    at(path, parse_points(&read(path)?))
}

fn load_quadric(spec: &str, d: usize) -> Result<Quadric, String> {
    match spec {
        "sphere" => Ok(Quadric::sphere(d)),
        "paraboloid" => Ok(Quadric::paraboloid(d)),
        file => {
            let p = Path::new(file);
            let q = at(p, parse_quadric(&read(p)?))?;
            if q.dim != d {
                return Err(format!("quadric has dimension {}, expected {d}", q.dim));
            }
            Ok(q)
        }
    }
}

fn to_vrep(r: Representation) -> Result<VRep, String> {
    match r {
        Representation::V(v) => Ok(v),
        Representation::H(h) => lib(h_to_v(&h)),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Convert { input, to, output } => {
            let r = load_representation(input)?;
            let text = match (r, to) {
                (Representation::H(h), Target::V) => write_vrep(&lib(h_to_v(&h))?),
                (Representation::V(v), Target::V) => write_vrep(&canonicalize_vrep(&v)),
                (Representation::V(v), Target::H) => write_hrep(&lib(v_to_h(&v))?),
                (Representation::H(h), Target::H) => write_hrep(&lib(make_irredundant(&h))?),
            };
            emit(output.as_deref(), &text)?;
            Ok(true)
        }
        Command::Dual {
            input,
            quadric,
            center,
            output,
        } => {
            let r = load_representation(input)?;
            let text = match (quadric, r) {
                (Some(q), r) => {
                    let v = to_vrep(r)?;
                    let q = load_quadric(q, v.dim)?;
                    write_hrep(&lib(affine_quadric_dual(&v, &q))?)
                }
                (None, Representation::V(v)) => {
                    let c = match center {
                        Some(c) => parse_vector(c)?,
                        None => zeros(v.dim),
                    };
                    write_hrep(&lib(polar_dual_v(&v, &c))?)
                }
                (None, Representation::H(h)) => {
                    if center.is_some() {
                        return Err("--center applies to V-representations only".into());
                    }
                    write_vrep(&lib(polar_dual_h(&h))?)
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(true)
        }
        Command::Fvector { input } => {
            match load_input(input)? {
                Input::Polytope(p) => {
                    let l = lib(face_lattice(&p.h, &p.v))?;
                    let f = l.f_vector();
                    kv("dim", l.dim);
                    kv("f", tuple(&f[1..f.len() - 1]));
                }
                Input::Complex(k, _) => {
                    kv("dim", k.dim());
                    kv("f", tuple(&k.f_vector()[1..]));
                }
            }
            Ok(true)
        }
        Command::Hvector { input } => {
            let (f, d): (Vec<i64>, usize) = match load_input(input)? {
                Input::Polytope(p) => {
                    if !p.is_simplicial() {
                        return Err(Error::NotSimplicial("a facet is not a simplex".into()).to_string());
                    }
                    (boundary_f_vector(&lib(face_lattice(&p.h, &p.v))?), p.affine_dimension() as usize)
                }
                Input::Complex(k, _) => (
                    k.f_vector().into_iter().map(|x| x as i64).collect(),
                    (k.dim() + 1) as usize,
                ),
            };
            kv("h", tuple(&lib(h_from_f(&f, d))?));
            Ok(true)
        }
        Command::Euler { input } => match load_input(input)? {
            Input::Polytope(p) => {
                let l = lib(face_lattice(&p.h, &p.v))?;
                let f = l.f_vector();
                let d = l.dim as usize;
                let boundary = euler_check(&f[..f.len() - 1], EulerTarget::Boundary(d));
                let solid = euler_check(&f, EulerTarget::Solid);
                let word = |ok: bool| if ok { "OK" } else { "FAIL" };
                println!("chi(boundary)={} {}", boundary.chi, word(boundary.ok));
                println!("chi(polytope)={} {}", solid.chi, word(solid.ok));
                Ok(boundary.ok && solid.ok)
            }
            Input::Complex(k, _) => {
                kv("chi", convexkit::complexes::euler_characteristic(&k.f_vector()));
                Ok(true)
            }
        },
        Command::DsCheck { input } => {
            let p = load_polytope(input)?;
            let r = lib(dehn_sommerville_check(&p))?;
            kv("f", tuple(&r.f[1..]));
            kv("h", tuple(&r.h));
            kv("palindromic", r.palindromic);
            if let Some(x) = r.relations_3d {
                kv("relations_3d", x);
            }
            kv("result", if r.ok() { "OK" } else { "FAIL" });
            Ok(r.ok())
        }
        Command::Shell { input, from } => shell(input, from.as_deref(), cli.seed),
        Command::Cyclic {
            d,
            n,
            params,
            facets,
            count,
            output,
        } => {
            if *count {
                println!("{}", lib(cyclic_facet_count(*d, *n))?);
                return Ok(true);
            }
            if *facets {
                for f in lib(gale_facets(*d, *n))? {
                    println!("{}", indices(&f));
                }
                return Ok(true);
            }
            let spec = match params {
                Some(t) => {
                    let t = parse_vector(t)?;
                    if t.len() != *n {
                        return Err(format!("expected {n} parameters, found {}", t.len()));
                    }
                    lib(CyclicSpec::new(*d, t))?
                }
                None => lib(CyclicSpec::standard(*d, *n))?,
            };
            emit(output.as_deref(), &write_vrep(&cyclic_polytope(&spec)))?;
            Ok(true)
        }
        Command::UbtCheck { input } => {
            let r = lib(upper_bound_check(&load_polytope(input)?))?;
            kv("n", r.n);
            kv("d", r.d);
            kv("f", tuple(&r.f[1..]));
            kv("cyclic_f", tuple(&r.cyclic_f[1..]));
            kv("h", tuple(&r.h));
            kv("h_bound", tuple(&r.h_bounds));
            kv("neighborly_equality", r.neighborly_equality());
            kv("result", if r.ok() { "OK" } else { "FAIL" });
            Ok(r.ok())
        }
        Command::LbtCheck { input } => {
            let r = lib(lower_bound_check(&load_polytope(input)?))?;
            kv("n", r.n);
            kv("d", r.d);
            for (k, fk, b) in &r.bounds {
                println!("f{k}={fk} bound={b} {}", if fk >= b { "OK" } else { "FAIL" });
            }
            kv("result", if r.ok() { "OK" } else { "FAIL" });
            Ok(r.ok())
        }
        Command::Caratheodory { points, weights } => {
            let pts = load_points(points)?;
            if pts.is_empty() {
                return Err("no points".into());
            }
            let weights = match weights {
                Some(w) => parse_vector(w)?,
                None => vec![Scalar::new(1.into(), (pts.len() as i64).into()); pts.len()],
            };
            let cc = ConvexCombination { points: pts.clone(), weights };
            let b = cc.evaluate();
            let r = lib(caratheodory_reduce(&b, &cc))?;
            println!("{}", format_labeled("b", &b));
            let support: Vec<usize> = r
                .points
                .iter()
                .map(|p| pts.iter().position(|q| q == p).expect("reduced point comes from input"))
                .collect();
            kv("support", indices(&support));
            println!("{}", format_labeled("weights", &r.weights));
            let ok = r.is_convex() && r.evaluate() == b;
            kv("verified", ok);
            Ok(ok)
        }
        Command::Radon { points } => {
            let pts = load_points(points)?;
            let r = lib(radon_partition(&pts))?;
            kv("I", indices(&r.first));
            kv("J", indices(&r.second));
            println!("{}", format_labeled("witness", &r.witness));
            println!("{}", format_labeled("weights_I", &r.first_combination.weights));
            println!("{}", format_labeled("weights_J", &r.second_combination.weights));
            let ok = r.first_combination.evaluate() == r.second_combination.evaluate();
            kv("verified", ok);
            Ok(ok)
        }
        Command::Helly { inputs } => {
            let mut family = Vec::new();
            for p in inputs {
                family.push(at(p, parse_hrep(&read(p)?))?);
            }
            let m = family.first().map_or(0, |h| h.dim);
            let r = lib(helly_check(&family, m))?;
            kv("sets", family.len());
            kv("subsets_checked", r.subsets_checked);
            kv("hypothesis", r.hypothesis_holds);
            if let Some(c) = &r.counterexample {
                kv("counterexample", indices(c));
            }
            match &r.witness {
                Some(w) => println!("{}", format_labeled("witness", w)),
                None => kv("witness", "none"),
            }
            kv("consistent", r.consistent());
            Ok(r.consistent())
        }
        Command::Farkas { input, version, z } => farkas_command(input, *version, z.as_deref()),
        Command::Centerpoint { points, verify, point } => {
            let pts = load_points(points)?;
            let c = match point {
                Some(p) => parse_vector(p)?,
                None => lib(centerpoint(&pts))?,
            };
            println!("{}", format_labeled("centerpoint", &c));
            if *verify || point.is_some() {
                let depth = lib(tukey_depth(&c, &pts))?;
                let ok = lib(verify_centerpoint(&c, &pts))?;
                kv("depth", depth);
                kv("required", format_scalar(&Scalar::new((pts.len() as i64).into(), (c.len() as i64 + 1).into())));
                kv("verified", ok);
                return Ok(ok);
            }
            Ok(true)
        }
        Command::Delaunay {
            sites,
            method,
            allow_degenerate,
            output,
            off,
            svg,
        } => {
            let s = load_points(sites)?;
            let (del, agree) = match method {
                Method::Paraboloid => (lib(delaunay_paraboloid(&s, *allow_degenerate))?, None),
                Method::Sphere => (lib(delaunay_sphere(&s, *allow_degenerate))?, None),
                Method::Both => {
                    let a = lib(delaunay_paraboloid(&s, *allow_degenerate))?;
                    let b = lib(delaunay_sphere(&s, *allow_degenerate))?;
                    let same = a == b;
                    (a, Some(same))
                }
            };
            kv("sites", s.len());
            kv("cells", del.cells.len());
            kv("simplicial", del.simplicial);
            for c in &del.cells {
                kv("cell", indices(c));
            }
            let empty = lib(empty_circumsphere_check(&del))?;
            kv("empty_circumspheres", empty);
            if let Some(a) = agree {
                println!("agree: {a}");
            }
            if let Some(o) = output {
                let text = if del.simplicial {
                    write_complex(&lib(del.to_simplicial_complex())?)
                } else {
                    let mut t = format!("SC\nvertices {}\n", s.len());
                    for c in &del.cells {
                        t.push_str(&indices(c));
                        t.push('\n');
                    }
                    t
                };
                write(o, &text)?;
            }
            if let Some(o) = off {
                write(o, &figures::delaunay_off(&del)?)?;
            }
            if let Some(o) = svg {
                write(o, &figures::delaunay_svg(&del)?)?;
            }
            Ok(empty && agree.unwrap_or(true))
        }
        Command::Voronoi {
            sites,
            dual_check,
            out_dir,
            svg,
            bbox,
        } => {
            let s = load_points(sites)?;
            let vd = lib(voronoi_diagram(&s))?;
            let mut ok = true;
            for (i, c) in vd.cells.iter().enumerate() {
                let v = lib(h_to_v(c))?;
                println!("cell={i} facets={} vertices={} bounded={}", c.ineqs.len(), v.points.len(), v.is_bounded());
            }
            if *dual_check {
                let r = lib(voronoi_from_delaunay_duality(&s))?;
                kv("cell_mismatches", indices(&r.cell_mismatches));
                let pairs: Vec<String> = r.adjacency_mismatches.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                kv("adjacency_mismatches", pairs.join(" "));
                kv("simple_vertices", r.simple_vertices());
                kv("agree", r.agrees());
                ok = r.agrees() && r.simple_vertices();
            }
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
                for (i, c) in vd.cells.iter().enumerate() {
                    write(&dir.join(format!("cell_{i}.ine")), &write_hrep(c))?;
                }
            }
            if let Some(o) = svg {
                let b = match bbox {
                    Some(b) => {
                        let v = parse_vector(b)?;
                        if v.len() != 4 {
                            return Err("--box needs four numbers".into());
                        }
                        Some([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
                    }
                    None => None,
                };
                write(o, &figures::voronoi_svg(&s, &vd, b)?)?;
            }
            Ok(ok)
        }
        Command::CheckCommute { input, quadric } => {
            let v = to_vrep(load_representation(input)?)?;
            let q = load_quadric(quadric, v.dim)?;
            let r = lib(check_completion_duality_commutes(&v, &q))?;
            kv("dual_of_completion_generators", r.dual_of_completion.generators.len());
            kv("completion_of_dual_generators", r.completion_of_dual.generators.len());
            kv("commutes", r.passed);
            Ok(r.passed)
        }
    }
}

fn shell(input: &Path, from: Option<&str>, seed: u32) -> Outcome {
    match load_input(input)? {
        Input::Complex(k, order) => {
            let r = lib(is_shelling(&k, &order))?;
            kv("facets", order.len());
            kv("shelling", r.ok);
            if let Some(i) = r.failed_at {
                kv("failed_at", i);
            }
            if let Some(s) = &r.shelling {
                let h = lib(convexkit::complexes::h_from_shelling(s))?;
                kv("h", tuple(&h));
            }
            Ok(r.ok)
        }
        Input::Polytope(p) => {
            let y = p.v.vertex_centroid().ok_or("empty polytope")?;
            let candidates: Vec<Vector> = match from {
                Some(x) => vec![parse_vector(x)?],
                None => default_outside_points(&p, &y),
            };
            let mut last = String::from("no outside point found");
            for x in candidates {
                match line_shelling_from(&p, &x, &y, seed) {
                    Ok(ls) => {
                        let sets = p.facet_vertex_sets();
                        println!("{}", format_labeled("from", &x));
                        kv("lambda", format_scalar(&ls.lambda));
                        kv("facets", ls.facet_order.len());
                        for &i in &ls.facet_order {
                            kv("facet", indices(&sets[i]));
                        }
                        let h = lib(convexkit::complexes::h_from_shelling(&ls.shelling))?;
                        kv("simplices", ls.shelling.facet_order.len());
                        kv("h", tuple(&h));
                        kv("shelling", true);
                        return Ok(true);
                    }
                    Err(e @ Error::Degenerate(_)) if from.is_none() => last = e.to_string(),
                    Err(e) => return Err(e.to_string()),
                }
            }
            Err(last)
        }
    }
}

/// Points `y + 2^k (1, 1/3, 1/9, …)` moving outward from the centroid.
fn default_outside_points(p: &Polytope, y: &[Scalar]) -> Vec<Vector> {
    let d = y.len();
    let three = Scalar::from_integer(3.into());
    let dir: Vector = (0..d).map(|i| three.pow(-(i as i32))).collect();
    (0..64)
        .map(|k| {
            let s = Scalar::from_integer(2.into()).pow(k);
            y.iter().zip(&dir).map(|(a, b)| a + &s * b).collect::<Vector>()
        })
        .filter(|x| !p.contains(x))
        .collect()
}

fn farkas_command(input: &Path, version: Version, z: Option<&str>) -> Outcome {
    let text = read(input)?;
    let need_z = || -> Result<Vector, String> { parse_vector(z.ok_or("--z is required for this version")?) };
    let problem = match version {
        Version::I | Version::II => {
            let pts = at(input, parse_points(&text))?;
            let a = transpose(&pts);
            let z = need_z()?;
            if !pts.is_empty() && z.len() != pts[0].len() {
                return Err("z has the wrong dimension".into());
            }
            if version == Version::I {
                FarkasProblem::I { a, z }
            } else {
                FarkasProblem::II { a, z }
            }
        }
        Version::III => {
            if z.is_some() {
                return Err("version III reads A and z from the H-file".into());
            }
            let h = at(input, parse_hrep(&text))?;
            // b + a·x ≥ 0  ⇔  (−a)·x ≤ b
            let rows = h.expanded_ineqs();
            FarkasProblem::III {
                a: rows.iter().map(|r| r.a.iter().map(|x| -x).collect()).collect(),
                z: rows.iter().map(|r| r.b.clone()).collect(),
            }
        }
        Version::IV => {
            let v = at(input, parse_vrep(&text))?;
            let z = need_z()?;
            if z.len() != v.dim {
                return Err("z has the wrong dimension".into());
            }
            let cols = |m: &[Vector]| if m.is_empty() { Vec::new() } else { transpose(m) };
            FarkasProblem::IV {
                y: cols(&v.points),
                v: cols(&v.rays),
                z,
            }
        }
    };
    let cert = lib(farkas(&problem))?;
    kv("version", problem.version());
    match &cert {
        FarkasCertificate::Primal { x } => {
            kv("alternative", "primal");
            println!("{}", format_labeled("x", x));
        }
        FarkasCertificate::Dual { c, alpha } => {
            kv("alternative", "dual");
            println!("{}", format_labeled("c", c));
            kv("alpha", format_scalar(alpha));
        }
    }
    let ok = verify_farkas(&problem, &cert);
    kv("verified", ok);
    Ok(ok)
}
