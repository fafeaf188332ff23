mod commands;
mod figures;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "convexkit", version, about = "Exact convex polytope computations")]
pub struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    H,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Paraboloid,
    Sphere,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Version {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
    #[value(name = "IV")]
    IV,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convert between H- and V-representations.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Polar dual, or the dual with respect to a quadric.
    Dual {
        input: PathBuf,
        /// sphere, paraboloid, or a Q-matrix file.
        #[arg(long, allow_hyphen_values = true)]
        quadric: Option<String>,
        /// Center for the polar dual of a V-representation.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// f-vector of a polytope or simplicial complex.
    Fvector { input: PathBuf },
    /// h-vector of a simplicial polytope boundary or simplicial complex.
    Hvector { input: PathBuf },
    /// Euler characteristic.
    Euler { input: PathBuf },
    /// Dehn–Sommerville relations for a simplicial polytope.
    DsCheck { input: PathBuf },
    /// Line shelling of a polytope boundary, or check the facet order of a complex file.
    Shell {
        input: PathBuf,
        /// Point outside the polytope the line passes through.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
    },
    /// Cyclic polytope on the moment curve.
    Cyclic {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'n')]
        n: usize,
        /// Strictly increasing curve parameters (default 1..n).
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, conflicts_with = "count")]
        facets: bool,
        #[arg(long)]
        count: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Upper bound inequalities for a simplicial polytope.
    UbtCheck { input: PathBuf },
    /// Lower bound inequalities for a simplicial polytope.
    LbtCheck { input: PathBuf },
    /// Reduce a convex combination to at most d+1 points.
    Caratheodory {
        points: PathBuf,
        /// One weight per point; defaults to uniform weights.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Radon partition of at least d+2 points.
    Radon { points: PathBuf },
    /// Check Helly's theorem on a family of H-representations.
    Helly {
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
    },
    /// Decide a Farkas alternative with a certificate.
    Farkas {
        input: PathBuf,
        #[arg(long, value_enum)]
        version: Version,
        /// Right-hand side (not used by version III, which reads an H-file).
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// Compute a centerpoint of at most 12 points in dimension ≤ 3.
    Centerpoint {
        points: PathBuf,
        /// Verify the result by exact halfspace depth.
        #[arg(long)]
        verify: bool,
        /// Check this point instead of computing one.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Delaunay complex by lifting.
    Delaunay {
        sites: PathBuf,
        #[arg(long, value_enum, default_value = "paraboloid")]
        method: Method,
        #[arg(long)]
        allow_degenerate: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        off: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Voronoi cells from bisectors.
    Voronoi {
        sites: PathBuf,
        /// Recompute cells from tangent hyperplanes of Delaunay neighbors and compare.
        #[arg(long)]
        dual_check: bool,
        /// Directory receiving one H-file per cell.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Clipping box "xmin ymin xmax ymax" for the SVG.
        #[arg(long = "box", allow_hyphen_values = true)]
        bbox: Option<String>,
    },
    /// Check that projective completion commutes with quadric duality.
    CheckCommute {
        input: PathBuf,
        #[arg(long, default_value = "sphere")]
        quadric: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
