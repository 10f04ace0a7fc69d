//! `tangle`: enumerate, validate, draw and combine Tangles from the command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tangles_core::document::{table_csv, table_json, DocumentError, GraphDocument};
use tangles_core::dualgraph::{self, GraphError};
use tangles_core::enumerator::{self, count_tables, enumerate_by_class};
use tangles_core::geometry::{self, check_smooth_simple, numeric_area, render_svg, GeometryConfig, RenderOptions};
use tangles_core::growth::{concat_area, concat_length, growth_estimates};
use tangles_core::polyomino::{chan_polyomino, fleron_polyomino};

/// Largest `--max-size` accepted without `--force`.
const SIZE_CEILING: u32 = 12;

#[derive(Parser)]
#[command(name = "tangle", version, about = "Enumerate and draw planar Tangles")]
struct Cli {
    /// Worker threads for enumeration (results do not depend on it).
    #[arg(long, global = true, env = "TANGLE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Chan,
    Fleron,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConcatMode {
    Area,
    Length,
}

#[derive(Subcommand)]
enum Command {
    /// Count dual graphs by size and class.
    Enumerate {
        #[arg(long)]
        max_size: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow sizes above 12.
        #[arg(long)]
        force: bool,
    },
    /// Count all Tangles of one class.
    ByClass {
        #[arg(long)]
        class: u32,
        #[arg(long)]
        force: bool,
    },
    /// Draw a graph document as an SVG curve.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        show_dual: bool,
        #[arg(long)]
        show_packing: bool,
    },
    /// Check a graph document; exit 2 if it is not a dual graph.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the Chan or Fleron polyomino of a graph.
    Polyomino {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: PolyKind,
    },
    /// Root sequences and the superadditivity and sandwich checks.
    Growth {
        #[arg(long)]
        max_size: u32,
        /// Also enumerate complete classes up to this one.
        #[arg(long)]
        max_class: Option<u32>,
        #[arg(long)]
        force: bool,
    },
    /// Join two graphs by area or by length.
    Concat {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum)]
        mode: ConcatMode,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A document that parsed but is not a dual graph; exits with status 2.
#[derive(Debug)]
struct InvalidGraph(GraphError);

impl std::fmt::Display for InvalidGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "not a dual graph: {}", self.0)
    }
}

impl std::error::Error for InvalidGraph {}

fn read_graph(path: &Path) -> Result<GraphDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GraphDocument::from_json(&text).map_err(|e| match e {
        DocumentError::Graph(g) => anyhow::Error::new(InvalidGraph(g)),
        other => anyhow::Error::new(other).context(format!("parsing {}", path.display())),
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn check_ceiling(size: u32, force: bool) -> Result<()> {
    if size > SIZE_CEILING && !force {
        bail!("size {size} is above {SIZE_CEILING}; pass --force to run it anyway");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Enumerate { max_size, format, out, force } => {
            check_ceiling(max_size, force)?;
            let t = pooled(cli.threads, move || count_tables(max_size))?;
            let text = match format {
                TableFormat::Csv => table_csv(&t),
                TableFormat::Json => table_json(&t),
            };
            write_out(out.as_deref(), &text)
        }
        Command::ByClass { class, force } => {
            if class == 0 {
                bail!("classes start at 1");
            }
            let (lo, hi) = dualgraph::edge_bounds(class);
            check_ceiling(hi, force)?;
            let cc = pooled(cli.threads, move || enumerate_by_class(class))?;
            println!("class {class} (sizes {lo}..={hi}, complete)");
            println!("fixed {}", cc.counts.fixed);
            println!("one_sided {}", cc.counts.one_sided);
            println!("free {}", cc.counts.free);
            Ok(())
        }
        Command::Render { input, out, radius, show_dual, show_packing } => {
            let doc = read_graph(&input)?;
            let cfg = GeometryConfig::with_radius(radius)?;
            let curve = geometry::trace(&doc.graph, &cfg)?;
            let svg = render_svg(&curve, &cfg, RenderOptions { show_dual, show_packing });
            write_out(Some(&out), &svg)?;
            let area = numeric_area(&curve)?;
            let report = check_smooth_simple(&curve);
            println!(
                "arcs {} (convex {}, concave {}), length {:.6}, area {:.6}, smooth and simple: {}",
                curve.len(),
                curve.convex_count(),
                curve.concave_count(),
                curve.length(),
                area,
                report.passes()
            );
            Ok(())
        }
        Command::Validate { input } => {
            let g = read_graph(&input)?.graph;
            println!("valid m={} k={} c={}", g.size(), g.count_squares(), g.class());
            Ok(())
        }
        Command::Polyomino { input, kind } => {
            let g = read_graph(&input)?.graph;
            let (name, p) = match kind {
                PolyKind::Chan => ("chan", chan_polyomino(&g)),
                PolyKind::Fleron => ("fleron", fleron_polyomino(&g)),
            };
            println!("{name} cells {} perimeter {} hole_free {}", p.len(), p.perimeter(), p.is_hole_free());
            let cells: Vec<String> = p.cells().map(|c| format!("{},{}", c.x, c.y)).collect();
            println!("{}", cells.join(" "));
            Ok(())
        }
        Command::Growth { max_size, max_class, force } => {
            check_ceiling(max_size, force)?;
            if let Some(c) = max_class {
                check_ceiling(dualgraph::edge_bounds(c).1, force)?;
            }
            let (t, classes) = pooled(cli.threads, move || {
                let t = count_tables(max_size);
                let extra: Vec<_> = (t.max_complete_class() + 1..=max_class.unwrap_or(0)).map(enumerate_by_class).collect();
                (t, extra)
            })?;
            let r = growth_estimates(&t, &classes);
            println!("by size: m, a_0^(1/m), a_1^(1/m), a_2^(1/m)");
            for row in &r.by_size {
                println!("{} {:.6} {:.6} {:.6}", row.index, row.fixed, row.one_sided, row.free);
            }
            println!("by class: c, l_0^(1/c), l_1^(1/c), l_2^(1/c)");
            for row in &r.by_class {
                println!("{} {:.6} {:.6} {:.6}", row.index, row.fixed, row.one_sided, row.free);
            }
            let (s, w) = (&r.superadditivity, &r.sandwich);
            println!(
                "superadditivity: {} size pairs, {} class pairs, {} violations",
                s.by_size.len(),
                s.by_class.len(),
                s.violations().len()
            );
            println!(
                "sandwich: {} sizes, {} classes, {} violations",
                w.by_size.len(),
                w.by_class.len(),
                w.violations().len()
            );
            println!(
                "reference bands, context only: [{:.8}, {:.8}] and [{:.11}, {:.11}]",
                r.kappa_band.0, r.kappa_band.1, r.mu_band.0, r.mu_band.1
            );
            if !s.holds() || !w.holds() {
                bail!("inequality violated; the tables are wrong");
            }
            Ok(())
        }
        Command::Concat { a, b, mode, out } => {
            let (g1, g2) = (read_graph(&a)?.graph, read_graph(&b)?.graph);
            let g = match mode {
                ConcatMode::Area => concat_area(&g1, &g2),
                ConcatMode::Length => concat_length(&g1, &g2),
            };
            write_out(Some(&out), &GraphDocument::new(g.clone()).to_json())?;
            println!("m={} k={} c={}", g.size(), g.count_squares(), g.class());
            Ok(())
        }
    }
}

fn pooled<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    Ok(match threads {
        Some(n) => enumerator::with_threads(n, f)?,
        None => f(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(InvalidGraph(g)) = e.downcast_ref::<InvalidGraph>() {
                println!("invalid: {g}");
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
