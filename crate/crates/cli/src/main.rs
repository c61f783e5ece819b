mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crystalframe::arith::{format_rational, rat_from_int};
use crystalframe::frame::{catalog_frame, parse_catalog_name, Frame};
use crystalframe::graph::{parse_graph, FiniteGraph, GraphOptions};
use crystalframe::jacobian::JacobianReport;
use crystalframe::nets::{enumerate_nets, standard_realization, NetExport, RealizationReport, VanishingSummand};
use crystalframe::verify::{run_suite, Suite};

use input::{parse_height_bound, parse_summand, SummandSpec};

/// Exact tight frames, crystal nets and graph Jacobians.
#[derive(Parser, Debug)]
#[command(name = "crystalframe", version)]
struct Cli {
	/// Accept graph vertices of degree one or two.
	#[arg(long, global = true)]
	allow_low_degree: bool,
	/// Seed for randomized corpora.
	#[arg(long, global = true, default_value_t = 0)]
	seed: u64,
	#[command(subcommand)]
	command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
	Json,
	Obj,
}

#[derive(Subcommand, Debug)]
enum Command {
	/// Standard realization of the crystal given by a graph and a vanishing summand.
	Realize {
		graph: PathBuf,
		/// `zero`, or rows of integers in homology coordinates separated by `;` or
		/// newlines; `@file` reads the rows from a file.
		#[arg(long, default_value = "zero")]
		summand: String,
		/// Patch radius in period-lattice steps.
		#[arg(long, default_value_t = 1)]
		radius: u32,
		#[arg(long, value_enum, default_value_t = ExportFormat::Json)]
		export: ExportFormat,
	},
	/// Summands of the homology with bounded height and their invariants.
	Enumerate {
		graph: PathBuf,
		/// Dimension of the realizations.
		#[arg(long)]
		dim: usize,
		/// Height bound `h`: an integer, `p/q`, decimal, or `sqrt(n)`.
		#[arg(long)]
		height_bound: String,
	},
	/// Runs a verification suite.
	Verify {
		/// lattice, frames, diophantine, nets, jacobian, heights or all.
		#[arg(conflicts_with = "suite_flag")]
		suite: Option<String>,
		#[arg(long = "suite")]
		suite_flag: Option<String>,
	},
	/// Jacobian, Abel-Jacobi table and pairing of a graph.
	Jacobian {
		graph: PathBuf,
		/// Base vertex.
		#[arg(long, default_value_t = 0)]
		base: usize,
	},
	/// Cycle basis used for homology coordinates.
	Basis { graph: PathBuf },
	/// Analysis of a catalog frame (`polygon:6`, `root:B:3`, ...) or `@frame.json`.
	Frame { name: String },
}

const MAX_HEIGHT_SQUARED: i64 = 10_000;

enum Outcome {
	Text(String),
	Report { body: Value, passed: bool },
}

fn main() -> ExitCode {
	let cli = Cli::parse();
	match run(&cli) {
		Ok(Outcome::Text(s)) => {
			emit(&s);
			ExitCode::SUCCESS
		}
		Ok(Outcome::Report { body, passed }) => {
			emit(&(serde_json::to_string_pretty(&body).expect("report serializes") + "\n"));
			if passed {
				ExitCode::SUCCESS
			} else {
				ExitCode::from(1)
			}
		}
		Err(e) => {
			eprintln!("error: {e:#}");
			ExitCode::from(2)
		}
	}
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
	use std::io::Write;
	let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn read_graph(path: &Path, cli: &Cli) -> Result<FiniteGraph> {
	let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
	let options = GraphOptions { allow_low_degree: cli.allow_low_degree };
	parse_graph(&src, options).with_context(|| format!("in {}", path.display()))
}

fn run(cli: &Cli) -> Result<Outcome> {
	match &cli.command {
		Command::Realize { graph, summand, radius, export } => {
			let g = read_graph(graph, cli)?;
			let vs = match parse_summand(summand)? {
				SummandSpec::Zero => VanishingSummand::zero(g.clone())?,
				SummandSpec::Rows(rows) => VanishingSummand::from_rows(g.clone(), &rows)?,
			};
			let r = standard_realization(&vs)?;
			let report = RealizationReport::new(&r, *radius)?;
			let geometry = NetExport::new(&r, *radius)?;
			match export {
				ExportFormat::Obj => {
					if !report.passes {
						bail!("realization failed verification");
					}
					Ok(Outcome::Text(geometry.to_obj()))
				}
				ExportFormat::Json => {
					let passed = report.passes;
					let body = json!({
						"graph": graph_json(&g),
						"homology_basis": basis_json(&g),
						"summand": vs.h().basis_vectors().iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
						"report": report,
						"geometry": geometry,
					});
					Ok(Outcome::Report { body, passed })
				}
			}
		}
		Command::Enumerate { graph, dim, height_bound } => {
			let g = read_graph(graph, cli)?;
			let h_sq = parse_height_bound(height_bound)?;
			if h_sq > crystalframe::arith::rat(MAX_HEIGHT_SQUARED, 1) {
				return Err(crystalframe::Error::BoundTooLarge(format!("h² = {h_sq} exceeds {MAX_HEIGHT_SQUARED}")).into());
			}
			let rows = enumerate_nets(&g, *dim, &h_sq)?;
			let body = json!({
				"dim": dim,
				"height_squared_bound": format_rational(&h_sq),
				"kappa": g.tree_number().to_string(),
				"count": rows.len(),
				"rows": rows,
			});
			Ok(Outcome::Report { body, passed: true })
		}
		Command::Verify { suite, suite_flag } => {
			let name = suite.as_deref().or(suite_flag.as_deref()).unwrap_or("all");
			let suite: Suite = name.parse()?;
			let report = run_suite(suite, cli.seed);
			let passed = report.passed;
			Ok(Outcome::Report { body: serde_json::to_value(report)?, passed })
		}
		Command::Jacobian { graph, base } => {
			let g = read_graph(graph, cli)?;
			let report = JacobianReport::new(&g, *base)?;
			let passed = report.abel_theorem;
			Ok(Outcome::Report { body: serde_json::to_value(report)?, passed })
		}
		Command::Basis { graph } => {
			let g = read_graph(graph, cli)?;
			let hb = g.homology_basis();
			let body = json!({
				"betti": hb.rank(),
				"cycles": basis_json(&g),
				"gram": hb.gram.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
			});
			Ok(Outcome::Report { body, passed: true })
		}
		Command::Frame { name } => {
			let f = read_frame(name)?;
			Ok(Outcome::Report { body: frame_json(&f)?, passed: true })
		}
	}
}

fn graph_json(g: &FiniteGraph) -> Value {
	serde_json::from_str(&g.to_json()).expect("graph JSON round-trips")
}

/// Each cycle as a list of signed edge ids.
fn basis_json(g: &FiniteGraph) -> Value {
	let hb = g.homology_basis();
	let cycles: Vec<Value> = hb
		.cycles
		.iter()
		.enumerate()
		.map(|(i, c)| {
			let edges: Vec<String> = c
				.iter()
				.enumerate()
				.filter(|(_, x)| !x.is_zero())
				.map(|(k, x)| format!("{}*{}", x, g.edges()[k].id))
				.collect();
			json!({ "index": i, "non_tree_edge": g.edges()[hb.non_tree_edges[i]].id, "chain": edges })
		})
		.collect();
	Value::Array(cycles)
}

fn read_frame(name: &str) -> Result<Frame> {
	if let Some(path) = name.strip_prefix('@') {
		let src = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
		return Ok(Frame::from_json(&src)?);
	}
	Ok(catalog_frame(parse_catalog_name(name)?)?)
}

fn frame_json(f: &Frame) -> Result<Value> {
	let mut body = json!({
		"frame": f.to_json(),
		"exact": f.is_exact(),
		"tight": f.is_tight(),
		"naimark": f.naimark_check(),
		"crystallographic": f.is_crystallographic(),
	});
	if let Some(t) = f.tight_constant() {
		body["tight_constant"] = match t {
			crystalframe::frame::TightConstant::Exact(r) => json!(format_rational(&r)),
			crystalframe::frame::TightConstant::Approximate(x) => json!(x),
		};
	}
	match f.gram_exact() {
		Some(g) => body["gram"] = json!(g.to_strings()),
		None => body["gram_approximate"] = json!(f.gram_f64()),
	}
	if let Ok(w) = f.vanishing_group() {
		body["vanishing_group"] =
			json!(w.basis_vectors().iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
		body["height_squared"] = json!(format_rational(&rat_from_int(&w.covolume_squared())));
	}
	if let Ok(p) = f.period_lattice() {
		body["period_lattice"] = json!({
			"surds": p.surds,
			"gram": p.gram.to_strings(),
			"volume_squared": format_rational(&p.volume_squared),
		});
	}
	if let Ok(a) = f.automorphism_group(8) {
		body["automorphisms"] = json!({
			"order": a.permutations.len(),
			"isotropic": a.isotropic,
			"strongly_isotropic": a.strongly_isotropic,
		});
	}
	Ok(body)
}
