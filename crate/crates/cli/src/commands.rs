use std::fmt;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use hotopo::demo::{demo_mesh, DemoMeshSpec};
use hotopo::hofield::{project, AnalyticField, HighOrderField};
use hotopo::io::{self, FieldSet, GridHeader, ScalarInput};
use hotopo::topology::{
    breakpoint_thresholds, classify_critical_points, contour_tree, linear_thresholds, persistence_curve,
    persistence_pairs, segmentation, simplify, Segmentation, TriangulatedField,
};
use hotopo::transform::{
    lsiac_grid, normalize, sample_grid, subdivide, vorticity_grid_fd, vorticity_lsiac, vorticity_subdivided,
};

use crate::args::*;
use crate::params;

/// Why a command stopped. Usage failures are bad flags or parameters;
/// data failures are unreadable inputs or errors raised by the library.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Data(m) => write!(f, "{m}"),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn data<E: fmt::Display>(context: impl fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Data(format!("{context}: {e}"))
}

fn read_text(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(data(path.display()))
}

/// Writes through a temporary file in the target directory, then renames
/// it into place so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Outcome {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut builder = tempfile::Builder::new();
    // Ordinary file permissions (subject to the umask) rather than 0600.
    #[cfg(unix)]
    builder.permissions(std::os::unix::fs::PermissionsExt::from_mode(0o666));
    let mut tmp = builder.tempfile_in(dir).map_err(data(path.display()))?;
    tmp.write_all(contents.as_bytes()).map_err(data(path.display()))?;
    tmp.as_file().sync_all().map_err(data(path.display()))?;
    tmp.persist(path).map_err(|e| Failure::Data(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

fn note(msg: impl fmt::Display) {
    eprintln!("hotopo: {msg}");
}

fn read_fields(path: &Path) -> Outcome<FieldSet> {
    io::read_field_set(&read_text(path)?).map_err(data(path.display()))
}

fn pick_field<'a>(set: &'a FieldSet, name: Option<&str>, path: &Path) -> Outcome<&'a HighOrderField> {
    match name {
        Some(n) => set.get(n).map_err(data(path.display())),
        None => match &set.fields[..] {
            [(_, f)] => Ok(f),
            [] => Err(Failure::Data(format!("{}: file holds no fields", path.display()))),
            _ => Err(Failure::Usage(format!(
                "{} holds {} fields; choose one with --name",
                path.display(),
                set.fields.len()
            ))),
        },
    }
}

fn read_scalar(path: &Path) -> Outcome<ScalarInput> {
    ScalarInput::parse(&read_text(path)?).map_err(data(path.display()))
}

fn triangulate(input: &ScalarInput, path: &Path) -> Outcome<TriangulatedField> {
    input.triangulate().map_err(data(path.display()))
}

fn write_segmentation(input: &ScalarInput, seg: &Segmentation, path: &Path) -> Outcome {
    let text = match input {
        ScalarInput::Grid(g) => io::write_labels(&GridHeader::of(g), &seg.labels).map_err(data(path.display()))?,
        ScalarInput::Pl(_) => io::write_pl_labels(&seg.labels),
    };
    write_atomic(path, &text)
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Project(a) => run_project(a),
        Command::Sample(a) => run_sample(a),
        Command::Subdivide(a) => run_subdivide(a),
        Command::Lsiac(a) => run_lsiac(a),
        Command::Vorticity(a) => run_vorticity(a),
        Command::Normalize(a) => run_normalize(a),
        Command::Topo(t) => run_topo(t),
        Command::Mesh(a) => run_mesh(a),
    }
}

fn run_project(a: ProjectArgs) -> Outcome {
    let degree = params::degree(a.degree)?;
    let analytic = AnalyticField::builtin(&a.field).map_err(|e| Failure::Usage(format!("--field: {e}")))?;
    let mesh = read_fields(&a.mesh)?.mesh;
    let fields = analytic
        .iter()
        .map(|f| Ok((f.name().to_string(), project(f, Arc::clone(&mesh), degree)?)))
        .collect::<hotopo::Result<Vec<_>>>()
        .map_err(data("projection"))?;
    note(format_args!("projected {} field(s) onto {} elements", fields.len(), mesh.num_elements()));
    write_atomic(&a.out, &io::write_field_set(&FieldSet { mesh, fields }))
}

fn run_sample(a: SampleArgs) -> Outcome {
    let res = params::dims("res", &a.grid.res, 2)?;
    let bbox = params::bbox(&a.grid.bbox)?;
    let set = read_fields(&a.field.input)?;
    let field = pick_field(&set, a.field.name.as_deref(), &a.field.input)?;
    let grid = sample_grid(field, res, bbox).map_err(data("sampling"))?;
    write_atomic(&a.out, &io::write_grid(&grid))
}

fn run_subdivide(a: SubdivideArgs) -> Outcome {
    let factor = params::factor(a.factor)?;
    let set = read_fields(&a.field.input)?;
    let field = pick_field(&set, a.field.name.as_deref(), &a.field.input)?;
    let m = factor.unwrap_or(field.degree() + 1);
    let pl = subdivide(field, m).map_err(data("subdivision"))?;
    note(format_args!("{} triangles, {} vertices", pl.triangles.len(), pl.vertices.len()));
    write_atomic(&a.out, &io::write_pl_field(&pl))
}

fn run_lsiac(a: LsiacArgs) -> Outcome {
    let res = params::dims("res", &a.grid.res, 2)?;
    let bbox = params::bbox(&a.grid.bbox)?;
    let filter = params::filter(&a.filter, params::theta(a.theta)?, a.deriv)?;
    let set = read_fields(&a.field.input)?;
    let field = pick_field(&set, a.field.name.as_deref(), &a.field.input)?;
    let grid = lsiac_grid(field, res, bbox, &filter).map_err(data("L-SIAC filtering"))?;
    let fallback = grid.flags().map_or(0, |f| f.iter().filter(|&&b| b).count());
    note(format_args!("{fallback} of {} nodes fell back to raw values", grid.len()));
    write_atomic(&a.out, &io::write_grid(&grid))
}

fn run_vorticity(a: VorticityArgs) -> Outcome {
    let text = match a.method {
        VorticityMethod::Fd | VorticityMethod::Subdivided => {
            if a.input.is_some() || a.res.is_some() {
                return Err(Failure::Usage("--in and --res apply only to --method lsiac".into()));
            }
            let (up, vp) = (Path::new(&a.u), Path::new(&a.v));
            match (read_scalar(up)?, read_scalar(vp)?, a.method) {
                (ScalarInput::Grid(u), ScalarInput::Grid(v), VorticityMethod::Fd) => {
                    io::write_grid(&vorticity_grid_fd(&u, &v).map_err(data("vorticity"))?)
                }
                (ScalarInput::Pl(u), ScalarInput::Pl(v), VorticityMethod::Subdivided) => {
                    io::write_pl_field(&vorticity_subdivided(&u, &v).map_err(data("vorticity"))?)
                }
                _ => {
                    return Err(Failure::Data(
                        "--method fd needs two grid files, --method subdivided two PL field files".into(),
                    ))
                }
            }
        }
        VorticityMethod::Lsiac => {
            let (Some(input), Some(res)) = (&a.input, &a.res) else {
                return Err(Failure::Usage("--method lsiac needs --in and --res".into()));
            };
            let res = params::dims("res", res, 2)?;
            let bbox = params::bbox(&a.bbox)?;
            let filter = params::filter(&a.filter, 0.0, 1)?;
            let set = read_fields(input)?;
            let u = pick_field(&set, Some(&a.u), input)?;
            let v = pick_field(&set, Some(&a.v), input)?;
            let grid = vorticity_lsiac(u, v, res, bbox, filter.k, filter.spline_order, filter.scale)
                .map_err(data("vorticity"))?;
            io::write_grid(&grid)
        }
    };
    write_atomic(&a.out, &text)
}

fn run_normalize(a: NormalizeArgs) -> Outcome {
    let input = read_scalar(&a.input)?;
    let out = match &input {
        ScalarInput::Grid(g) => ScalarInput::Grid(normalize(g).map_err(data(a.input.display()))?),
        ScalarInput::Pl(f) => ScalarInput::Pl(normalize(f).map_err(data(a.input.display()))?),
    };
    write_atomic(&a.out, &out.write())
}

fn run_topo(command: TopoCommand) -> Outcome {
    match command {
        TopoCommand::Critical(io_args) => {
            let input = read_scalar(&io_args.input)?;
            let tf = triangulate(&input, &io_args.input)?;
            let points = classify_critical_points(&tf);
            note(format_args!("{} critical points", points.len()));
            write_atomic(&io_args.out, &io::write_critical_points(&tf, &points))
        }
        TopoCommand::Persistence(io_args) => {
            let input = read_scalar(&io_args.input)?;
            let tf = triangulate(&input, &io_args.input)?;
            let pairs = persistence_pairs(&tf);
            note(format_args!("{} pairs", pairs.len()));
            write_atomic(&io_args.out, &io::write_pairs(&pairs))
        }
        TopoCommand::Curve(a) => {
            let range = a.thresholds.as_deref().map(params::thresholds).transpose()?;
            let mut pairs = io::read_pairs(&read_text(&a.input)?).map_err(data(a.input.display()))?;
            if a.exclude_essential {
                pairs.retain(|p| !p.is_essential());
            }
            let thresholds = match range {
                Some((lo, hi, n)) => linear_thresholds(lo, hi, n),
                None => breakpoint_thresholds(&pairs),
            };
            write_atomic(&a.out, &io::write_curve(&persistence_curve(&pairs, &thresholds)))
        }
        TopoCommand::Simplify(a) => {
            let epsilon = params::epsilon(a.epsilon)?;
            let input = read_scalar(&a.io.input)?;
            let tf = triangulate(&input, &a.io.input)?;
            let simplified = simplify(&tf, epsilon).map_err(data("simplification"))?;
            let out = input
                .with_values(simplified.values().to_vec())
                .map_err(data("simplification"))?;
            write_atomic(&a.io.out, &out.write())
        }
        TopoCommand::ContourTree(a) => {
            let input = read_scalar(&a.io.input)?;
            let tf = triangulate(&input, &a.io.input)?;
            let tree = contour_tree(&tf).map_err(data(a.io.input.display()))?;
            let seg = segmentation(&tree, &tf);
            note(format_args!(
                "{} nodes, {} arcs, {} leaves",
                tree.nodes.len(),
                tree.arcs.len(),
                tree.num_leaves()
            ));
            if let Some(path) = &a.segmentation {
                write_segmentation(&input, &seg, path)?;
            }
            write_atomic(&a.io.out, &io::write_tree(&tf, &tree, Some(&seg)))
        }
        TopoCommand::Segment(io_args) => {
            let input = read_scalar(&io_args.input)?;
            let tf = triangulate(&input, &io_args.input)?;
            let tree = contour_tree(&tf).map_err(data(io_args.input.display()))?;
            let seg = segmentation(&tree, &tf);
            note(format_args!(
                "{} segments, {} on leaf arcs",
                seg.segments.len(),
                seg.leaf_segments(1).len()
            ));
            write_segmentation(&input, &seg, &io_args.out)
        }
    }
}

fn run_mesh(a: MeshArgs) -> Outcome {
    let [nx, ny] = params::dims("grid", &a.grid, 1)?;
    let spec = DemoMeshSpec {
        nx,
        ny,
        jitter: a.jitter,
        seed: a.seed,
        quads: a.quad,
    };
    spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let mesh = demo_mesh(&spec).map_err(data("mesh generation"))?;
    note(format_args!("{} elements", mesh.num_elements()));
    write_atomic(&a.out, &io::write_field_set(&FieldSet::mesh_only(Arc::new(mesh))))
}
