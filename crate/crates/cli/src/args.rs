use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hotopo", version, about = "High-order field post-processing and level-set topology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// L2-project a built-in analytic field onto a mesh.
    Project(ProjectArgs),
    /// Sample a field on an equispaced grid.
    Sample(SampleArgs),
    /// Subdivide every element and average shared vertices.
    Subdivide(SubdivideArgs),
    /// Sample a line-SIAC filtered field on an equispaced grid.
    Lsiac(LsiacArgs),
    /// Vorticity v_x - u_y of a velocity field.
    Vorticity(VorticityArgs),
    /// Rescale values onto [0, 1].
    Normalize(NormalizeArgs),
    /// Topological analysis of a grid or PL field.
    #[command(subcommand)]
    Topo(TopoCommand),
    /// Generate a seeded demo mesh on the unit square.
    Mesh(MeshArgs),
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Built-in analytic field: harmonic2d, rotation, cells, x or y.
    #[arg(long)]
    pub field: String,
    /// Mesh file (a field file; any fields in it are ignored).
    #[arg(long)]
    pub mesh: PathBuf,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FieldInput {
    /// Field file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Field name; may be omitted when the file holds a single field.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Grid resolution in nodes, e.g. 500x500.
    #[arg(long)]
    pub res: String,
    /// `auto` or `xmin,ymin,xmax,ymax`.
    #[arg(long, default_value = "auto")]
    pub bbox: String,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub field: FieldInput,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SubdivideArgs {
    #[command(flatten)]
    pub field: FieldInput,
    /// Refinement factor; defaults to degree + 1.
    #[arg(long)]
    pub factor: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Filter half-order k (2k+1 B-splines).
    #[arg(long, default_value_t = 2)]
    pub ksiac: usize,
    /// B-spline order; defaults to k + 1.
    #[arg(long)]
    pub spline_order: Option<usize>,
    /// Adapt the characteristic length to the local element sizes (default).
    #[arg(long, conflicts_with = "h")]
    pub adaptive: bool,
    /// Fixed characteristic length.
    #[arg(long = "H", id = "h")]
    pub h: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LsiacArgs {
    #[command(flatten)]
    pub field: FieldInput,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Filter direction in degrees.
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// 0 for values, 1 for the directional derivative.
    #[arg(long, default_value_t = 0)]
    pub deriv: u8,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VorticityMethod {
    /// Finite differences on two sampled grids.
    Fd,
    /// Area-weighted vertex gradients on two subdivided PL fields.
    Subdivided,
    /// Derivative line filters on a field file.
    Lsiac,
}

#[derive(Debug, Args)]
pub struct VorticityArgs {
    #[arg(long, value_enum)]
    pub method: VorticityMethod,
    /// Field file holding both components (lsiac method).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// x component: a grid or PL file, or a field name with --in.
    #[arg(long)]
    pub u: String,
    /// y component: a grid or PL file, or a field name with --in.
    #[arg(long)]
    pub v: String,
    /// Grid resolution (lsiac method).
    #[arg(long)]
    pub res: Option<String>,
    #[arg(long, default_value = "auto")]
    pub bbox: String,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScalarIo {
    /// Grid (SGRID) or PL field (JSON) file.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum TopoCommand {
    /// Critical points with positions.
    Critical(ScalarIo),
    /// Persistence pairs.
    Persistence(ScalarIo),
    /// Persistence curve from a pairs file.
    Curve(CurveArgs),
    /// Remove every pair with persistence at most epsilon.
    Simplify(SimplifyArgs),
    /// Contour tree, optionally with the induced segmentation.
    ContourTree(TreeArgs),
    /// Per-vertex contour tree segment labels.
    Segment(ScalarIo),
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Pairs file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// `lo:hi:n` for evenly spaced thresholds; default is every breakpoint.
    #[arg(long)]
    pub thresholds: Option<String>,
    /// Leave out the essential pair.
    #[arg(long)]
    pub exclude_essential: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    #[command(flatten)]
    pub io: ScalarIo,
    #[arg(long)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[command(flatten)]
    pub io: ScalarIo,
    /// Also write the segmentation labels here.
    #[arg(long)]
    pub segmentation: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    /// Cells along x and y, e.g. 10x10.
    #[arg(long)]
    pub grid: String,
    /// Vertex displacement as a fraction of the spacing, below 0.3.
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Two triangles per cell (default).
    #[arg(long, conflicts_with = "quad")]
    pub tri: bool,
    /// One quadrilateral per cell.
    #[arg(long)]
    pub quad: bool,
    #[arg(long)]
    pub out: PathBuf,
}
