use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pvgkit::construction::ConstructionOutput;
use pvgkit::fan::{build_arrangement_fan, build_fan, build_grid, build_perles_fan};
use pvgkit::formats::{parse_graph, parse_points, write_graph, write_points};
use pvgkit::genfan::{build_generalized_fan, s0_failure, Mode};
use pvgkit::recognize::{recognize_on_grid, RealizationQuery, SearchStatus};
use pvgkit::reduce::{compile, parse_system, parse_witness, read_output, verify_output, write_output, ReduceParams};
use pvgkit::specfile::{parse_arrangement_spec, parse_fan_spec, parse_genfan_spec};
use pvgkit::svg::{render_svg, RenderConfig};
use pvgkit::visibility::{visibility_graph, Analysis};
use pvgkit::vonstaudt::{gadget_construction, GadgetKind};
use pvgkit::Scalar;

#[derive(Parser, Debug)]
#[command(name = "pvg", version, about = "Exact point visibility graph constructions and checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Overrides any seed given in the input.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Machine-readable report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Scaled,
    Faithful,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Scaled => Mode::Scaled,
            ModeArg::Faithful => Mode::Faithful,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Add,
    Mul,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Visibility graph of a point-set file.
    Compute {
        points: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fan of a set of segments between two lines.
    Fan {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generalized fan with bundles and extension rows.
    Genfan {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Integer grid with its rows, columns and lines.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fan over the lines of the Perles configuration.
    Perles {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fan over a line arrangement.
    Arrangement {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Single addition or multiplication gadget.
    Gadget {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compile a constraint system with a witness into a point set.
    Reduce {
        system: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "scaled")]
        mode: ModeArg,
        /// Bundle size (scaled mode).
        #[arg(long, default_value_t = 2)]
        bundle: usize,
        /// Extension rows per side (scaled mode).
        #[arg(long, default_value_t = 2)]
        ext: usize,
    },
    /// Re-check an output directory from its coordinates.
    Verify { dir: PathBuf },
    /// Exhaustive grid search for a realization of a graph.
    Recognize {
        graph: PathBuf,
        #[arg(long, default_value_t = 5)]
        grid: usize,
        #[arg(long, default_value_t = pvgkit::recognize::DEFAULT_VERTEX_CAP)]
        max_vertices: usize,
        /// Enumerate every realization.
        #[arg(long)]
        all: bool,
        /// Split the search over threads; statistics become run-dependent.
        #[arg(long)]
        parallel: bool,
        /// Realization point-set file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// JSON-lines statistics file.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// SVG drawing of an output directory.
    Render {
        dir: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, default_value_t = 1.0)]
        stroke_scale: f64,
    },
}

/// Finished run: whether the report passed, and what to print.
pub struct Outcome {
    pub passed: bool,
    pub text: String,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn summary(out: &ConstructionOutput, dir: &Path, json: bool) -> Outcome {
    let n = out.points.len();
    let m = out.graph.edge_count();
    let extra = out.provenance.extra_collinear.len();
    let text = if json {
        json!({"kind": out.provenance.kind, "points": n, "edges": m, "groups": out.provenance.groups.len(), "extra_collinear": extra})
            .to_string()
    } else {
        format!("{}: {n} points, {m} edges, {extra} extra collinear sets -> {}", out.provenance.kind, dir.display())
    };
    Outcome { passed: true, text }
}

fn emit(out: &ConstructionOutput, dir: &Path, json: bool) -> Result<Outcome> {
    out.write_dir(dir)?;
    Ok(summary(out, dir, json))
}

fn verify_construction(dir: &Path, json: bool) -> Result<Outcome> {
    let out = ConstructionOutput::read_dir(dir)?;
    let mut problems = out.audit();
    if out.provenance.kind == "generalized_fan" {
        if let Some(msg) = s0_failure(&out) {
            problems.push(format!("s0: {msg}"));
        }
    }
    let reports = Analysis::new(&out.points).check_all();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    problems.extend(failed);
    let passed = problems.is_empty();
    let text = if json {
        json!({"passed": passed, "structural_checks": reports.len(), "problems": problems}).to_string()
    } else {
        let mut t = format!("{} structural checks, {} problems\n", reports.len(), problems.len());
        for p in &problems {
            t.push_str(&format!("FAIL {p}\n"));
        }
        t.push_str(if passed { "verdict: pass" } else { "verdict: fail" });
        t
    };
    Ok(Outcome { passed, text })
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let common = &cli.common;
    let json = common.json;
    match cli.command {
        Command::Compute { points, output } => {
            let ps = parse_points(&read(&points)?)?;
            let g = visibility_graph(&ps);
            fs::write(&output, write_graph(&g))?;
            let text = if json {
                json!({"points": ps.len(), "edges": g.edge_count()}).to_string()
            } else {
                format!("{} points, {} edges -> {}", ps.len(), g.edge_count(), output.display())
            };
            Ok(Outcome { passed: true, text })
        }
        Command::Fan { spec, output } => {
            let mut s = parse_fan_spec(&read(&spec)?)?;
            if let Some(seed) = common.seed {
                s.seed = seed;
            }
            emit(&build_fan(&s)?, &output, json)
        }
        Command::Genfan { spec, output, mode } => {
            let mut s = parse_genfan_spec(&read(&spec)?)?;
            if let Some(seed) = common.seed {
                s.seed = seed;
            }
            if let Some(m) = mode {
                s.mode = m.into();
            }
            emit(&build_generalized_fan(&s)?.output, &output, json)
        }
        Command::Grid { rows, cols, output } => emit(&build_grid(rows, cols)?, &output, json),
        Command::Perles { output } => emit(&build_perles_fan(common.seed.unwrap_or(0))?, &output, json),
        Command::Arrangement { spec, output } => {
            let (lines, names, seed) = parse_arrangement_spec(&read(&spec)?)?;
            emit(&build_arrangement_fan(&lines, &names, common.seed.unwrap_or(seed))?, &output, json)
        }
        Command::Gadget { kind, x, y, output } => {
            let kind = match kind {
                KindArg::Add => GadgetKind::Add,
                KindArg::Mul => GadgetKind::Mul,
            };
            let (x, y): (Scalar, Scalar) = (x.parse()?, y.parse()?);
            let (_, out) = gadget_construction(kind, &x, &y, common.seed.unwrap_or(0))?;
            emit(&out, &output, json)
        }
        Command::Reduce { system, witness, output, mode, bundle, ext } => {
            let sys = parse_system(&read(&system)?)?;
            let w = parse_witness(&read(&witness)?, sys.n)?;
            let seed = common.seed.unwrap_or(0);
            let params = match mode {
                ModeArg::Scaled => ReduceParams::scaled(bundle, ext, seed),
                ModeArg::Faithful => {
                    let segments = sys
                        .constraints
                        .iter()
                        .map(|c| if c.kind == GadgetKind::Mul { 5 } else { 4 })
                        .sum();
                    ReduceParams::faithful(segments, seed)
                }
            };
            let out = compile(&sys, &w, &params)?;
            write_output(&out, &output)?;
            let report = verify_output(&out);
            let text = if json {
                serde_json::to_string(&report)?
            } else {
                format!(
                    "{} gadgets, {} points, {} edges -> {}\n{}",
                    out.certificate.gadgets.len(),
                    out.construction.points.len(),
                    out.construction.graph.edge_count(),
                    output.display(),
                    report.to_string().trim_end()
                )
            };
            Ok(Outcome { passed: report.passed(), text })
        }
        Command::Verify { dir } => {
            if dir.join("certificate.json").exists() {
                let out = read_output(&dir)?;
                let report = verify_output(&out);
                let text = if json { serde_json::to_string(&report)? } else { report.to_string().trim_end().to_string() };
                Ok(Outcome { passed: report.passed(), text })
            } else {
                verify_construction(&dir, json)
            }
        }
        Command::Recognize { graph, grid, max_vertices, all, parallel, output, stats } => {
            let g = parse_graph(&read(&graph)?, None)?;
            let mut q = RealizationQuery::new(g, grid);
            q.vertex_cap = max_vertices;
            q.enumerate_all = all;
            q.parallel = parallel;
            q.grid_cap = q.grid_cap.max(grid);
            let r = recognize_on_grid(&q)?;
            if let (Some(path), Some(ps)) = (&output, &r.realization) {
                fs::write(path, write_points(ps))?;
            }
            let line = json!({
                "grid": grid,
                "status": r.status,
                "nodes": r.stats.nodes,
                "prunes": r.stats.prunes,
                "realizations": r.stats.realizations,
            })
            .to_string();
            if let Some(path) = &stats {
                fs::write(path, format!("{line}\n"))?;
            }
            let text = if json {
                line
            } else {
                let mut t = format!("{} on the {grid}x{grid} grid ({} nodes, {} prunes)", r.status, r.stats.nodes, r.stats.prunes);
                if all {
                    t.push_str(&format!(", {} realizations", r.all.len()));
                }
                t
            };
            Ok(Outcome { passed: r.status == SearchStatus::Found, text })
        }
        Command::Render { dir, output, no_labels, stroke_scale } => {
            if !(stroke_scale.is_finite() && stroke_scale > 0.0) {
                bail!("--stroke-scale must be positive");
            }
            let out = ConstructionOutput::read_dir(&dir)?;
            let cfg = RenderConfig { stroke_scale, labels: !no_labels };
            fs::write(&output, render_svg(&out, &cfg)?)?;
            let text = if json {
                json!({"points": out.points.len(), "output": output.display().to_string()}).to_string()
            } else {
                format!("{} points -> {}", out.points.len(), output.display())
            };
            Ok(Outcome { passed: true, text })
        }
    }
}
