//! `cluster`: batch interface for reproducible cluster-variety computations.
//!
//! Subcommands mirror the library modules: `seed` (mutation, mutation
//! classes), `map` (mutation pullbacks, composition, property
//! verification), `surface` (triangulations, flips, m-triangulation seeds),
//! and `coords` (polygon double-configuration coordinates, reconstruction,
//! round trips).
//!
//! Exit codes: 0 on success, 1 when a verified property fails, 2 on
//! malformed input. Stdout is byte-deterministic for fixed arguments and
//! `--seed`; timing goes to stderr.

mod report;
mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use cluster_core::cluster_maps::{a_mutation, d_mutation, x_mutation, ClusterMap, ClusterMapData};
use cluster_core::flagconfig::{
    reconstruct_double, ConfigData, CoordsData, DoubleConfig, FramedConfig, ProjPoint,
};
use cluster_core::rational::format_rat;
use cluster_core::seed::Seed;
use cluster_core::surface::{IdealTriangulation, TriangulationData};

#[derive(Parser)]
#[command(
    name = "cluster",
    about = "Exact-arithmetic engine for cluster varieties of surfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Seed files: mutation and mutation-class enumeration.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Cluster maps: mutation pullbacks, composition, property checks.
    #[command(subcommand)]
    Map(MapCmd),
    /// Triangulated surfaces: validation, flips, m-triangulation seeds.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Polygon double-configuration coordinates.
    #[command(subcommand)]
    Coords(CoordsCmd),
}

#[derive(Args)]
struct OutArg {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SeedCmd {
    /// Mutate a seed at an index.
    Mutate {
        /// Seed file (JSON: {"indices", "frozen", "eps"}).
        #[arg(long)]
        file: PathBuf,
        /// Index label to mutate at.
        #[arg(long)]
        at: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Enumerate the mutation class up to index-permutation isomorphism.
    Class {
        #[arg(long)]
        file: PathBuf,
        /// Stop after this many distinct canonical forms.
        #[arg(long, default_value_t = 100)]
        max_nodes: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum MapCmd {
    /// A-torus mutation pullback of a seed.
    MutateA {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// X-torus mutation pullback of a seed.
    MutateX {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Symplectic-double mutation pullback of a seed.
    MutateD {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compose serialized maps left to right ("f then g").
    Compose {
        /// Two or more map files in application order.
        #[arg(long, num_args = 2.., required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Verify a symbolic property on deterministic random seeds.
    Verify {
        /// One of: involutivity|pentagon|iota|phi-pi|j-diagonal|naturality.
        #[arg(long)]
        property: String,
        /// Maximum seed rank for the random draws.
        #[arg(long, default_value_t = 4)]
        rank: usize,
        /// Number of trials (for pentagon: numeric points).
        #[arg(long, default_value_t = 50)]
        trials: u64,
        /// Generator seed for reproducible draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Emit a triangulated convex polygon.
    Polygon {
        /// Number of vertices (>= 3).
        #[arg(long)]
        n: usize,
        /// Triangulation shape: fan or zigzag.
        #[arg(long, default_value = "fan")]
        shape: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check the structural invariants of a triangulation file.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Seed of the m-triangulation.
    Seed {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: OutArg,
    },
    /// Flip an internal edge.
    Flip {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        edge: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Verify flip/mutation agreement at m = 2.
    CheckFlip {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Check a single edge (default: every internal edge).
        #[arg(long)]
        edge: Option<String>,
    },
}

#[derive(Subcommand)]
enum CoordsCmd {
    /// Compute coordinates of a configuration file: X from the flags, B
    /// from the front/back lifts when both are present.
    Compute {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reconstruct a double configuration from a coordinate file.
    Reconstruct {
        /// Triangulation file.
        #[arg(long)]
        triangulation: PathBuf,
        /// Coordinate file ({"B": {...}, "X": {...}}).
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reconstruction round trip on deterministic random coordinates.
    Roundtrip {
        /// Triangulation file.
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn read_seed(path: &Path) -> Result<Seed> {
    let seed: Seed = read_json(path)?;
    seed.validate()
        .with_context(|| format!("invalid seed in {}", path.display()))?;
    Ok(seed)
}

fn read_triangulation(path: &Path) -> Result<IdealTriangulation> {
    let data: TriangulationData = read_json(path)?;
    IdealTriangulation::from_data(&data)
        .with_context(|| format!("invalid triangulation in {}", path.display()))
}

fn emit_json<T: serde::Serialize>(value: &T, out: &OutArg) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(())
}

fn mutation_map(
    kind: &str,
    file: &Path,
    at: &str,
) -> Result<ClusterMapData> {
    let seed = read_seed(file)?;
    let map = match kind {
        "A" => a_mutation(&seed, at),
        "X" => x_mutation(&seed, at),
        _ => d_mutation(&seed, at),
    }?;
    Ok(map.to_data())
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Seed(cmd) => match cmd {
            SeedCmd::Mutate { file, at, out } => {
                let seed = read_seed(&file)?;
                let mutated = seed.mutate(&at)?;
                emit_json(&mutated, &out)?;
                Ok(0)
            }
            SeedCmd::Class {
                file,
                max_nodes,
                out,
            } => {
                let seed = read_seed(&file)?;
                let class = seed.mutation_class(max_nodes);
                let value = serde_json::json!({
                    "nodes": class.nodes,
                    "edges": class
                        .edges
                        .iter()
                        .map(|e| serde_json::json!([e.from, e.direction, e.to]))
                        .collect::<Vec<_>>(),
                    "truncated": class.truncated,
                });
                emit_json(&value, &out)?;
                Ok(0)
            }
        },
        Cmd::Map(cmd) => match cmd {
            MapCmd::MutateA { file, at, out } => {
                emit_json(&mutation_map("A", &file, &at)?, &out)?;
                Ok(0)
            }
            MapCmd::MutateX { file, at, out } => {
                emit_json(&mutation_map("X", &file, &at)?, &out)?;
                Ok(0)
            }
            MapCmd::MutateD { file, at, out } => {
                emit_json(&mutation_map("D", &file, &at)?, &out)?;
                Ok(0)
            }
            MapCmd::Compose { files, out } => {
                let mut acc: Option<ClusterMap> = None;
                for path in &files {
                    let data: ClusterMapData = read_json(path)?;
                    let map = ClusterMap::from_data(&data)
                        .with_context(|| format!("invalid map in {}", path.display()))?;
                    acc = Some(match acc {
                        None => map,
                        Some(prev) => prev.compose(&map).with_context(|| {
                            format!("composition failed at {}", path.display())
                        })?,
                    });
                }
                emit_json(&acc.expect("clap enforces >= 2 files").to_data(), &out)?;
                Ok(0)
            }
            MapCmd::Verify {
                property,
                rank,
                trials,
                seed,
            } => {
                let report = verify::run_property(&property, rank, trials, seed)?;
                report.emit();
                Ok(report.exit_code())
            }
        },
        Cmd::Surface(cmd) => match cmd {
            SurfaceCmd::Polygon { n, shape, out } => {
                anyhow::ensure!(n >= 3, "a polygon needs at least 3 vertices");
                let tri = match shape.as_str() {
                    "fan" => IdealTriangulation::polygon_fan(n),
                    "zigzag" => IdealTriangulation::polygon_zigzag(n),
                    other => anyhow::bail!("unknown shape {:?}; use fan or zigzag", other),
                };
                emit_json(&tri.to_data(), &out)?;
                Ok(0)
            }
            SurfaceCmd::Validate { file } => {
                let data: TriangulationData = read_json(&file)?;
                // Validation is report-valued: build without the validity
                // gate so issues are printed, not turned into input errors.
                match IdealTriangulation::from_data(&data) {
                    Ok(tri) => {
                        let report = tri.validate();
                        for t in &report.self_folded {
                            println!("SELF-FOLDED triangle={}", t);
                        }
                        println!(
                            "VERDICT property=validate issues=0 self_folded={} status=PASS",
                            report.self_folded.len()
                        );
                        Ok(0)
                    }
                    Err(e) => {
                        println!("ISSUE {}", e);
                        println!("VERDICT property=validate issues=1 status=FAIL");
                        Ok(1)
                    }
                }
            }
            SurfaceCmd::Seed { file, m, out } => {
                let tri = read_triangulation(&file)?;
                let seed = tri.m_seed(m)?;
                emit_json(&seed, &out)?;
                Ok(0)
            }
            SurfaceCmd::Flip { file, edge, out } => {
                let tri = read_triangulation(&file)?;
                let (flipped, corr) = tri.flip(&edge)?;
                let value = serde_json::json!({
                    "triangulation": flipped.to_data(),
                    "correspondence": {
                        "from": corr.flipped_from,
                        "to": corr.flipped_to,
                        "renames": corr.renames,
                    },
                });
                emit_json(&value, &out)?;
                Ok(0)
            }
            SurfaceCmd::CheckFlip { file, m, edge } => {
                let tri = read_triangulation(&file)?;
                let edges = match edge {
                    Some(e) => vec![tri.edge_by_label(&e)?],
                    None => tri.internal_edges(),
                };
                let mut failures = 0;
                for e in &edges {
                    let verdict = tri.flip_mutation_check(&e.label, m)?;
                    println!(
                        "VERDICT property=check-flip edge={} m={} status={}",
                        e.label,
                        m,
                        if verdict.equal { "PASS" } else { "FAIL" }
                    );
                    if let Some((i, j, want, got)) = verdict.discrepancy {
                        println!(
                            "COUNTEREXAMPLE edge={} entry=({},{}) mutated={} flipped={}",
                            e.label, i, j, want, got
                        );
                        failures += 1;
                    }
                }
                Ok(if failures == 0 { 0 } else { 1 })
            }
        },
        Cmd::Coords(cmd) => match cmd {
            CoordsCmd::Compute { file, out } => {
                let data: ConfigData = read_json(&file)?;
                if !data.lifts.is_empty() && !data.back_lifts.is_empty() {
                    let d = DoubleConfig::from_data(&data)?;
                    let coords = d.double_coords()?;
                    emit_json(&CoordsData::from_coords(&coords), &out)?;
                } else {
                    // Framed-only input: X-coordinates from the flags.
                    let tri = IdealTriangulation::from_data(&data.triangulation)?;
                    let mut flags = BTreeMap::new();
                    for (v, s) in &data.flags {
                        flags.insert(v.clone(), ProjPoint::parse(s)?);
                    }
                    let framed = FramedConfig::new(tri, flags)?;
                    let xs = framed.x_coords()?;
                    let value = CoordsData {
                        b: BTreeMap::new(),
                        x: xs.iter().map(|(k, v)| (k.clone(), format_rat(v))).collect(),
                    };
                    emit_json(&value, &out)?;
                }
                Ok(0)
            }
            CoordsCmd::Reconstruct {
                triangulation,
                file,
                out,
            } => {
                let tri = read_triangulation(&triangulation)?;
                let data: CoordsData = read_json(&file)?;
                let coords = data.parse()?;
                let d = reconstruct_double(&tri, &coords.b, &coords.x)?;
                emit_json(&d.to_data(), &out)?;
                Ok(0)
            }
            CoordsCmd::Roundtrip { file, trials, seed } => {
                let tri = read_triangulation(&file)?;
                let report = verify::run_roundtrip(&tri, trials, seed)?;
                report.emit();
                Ok(report.exit_code())
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
