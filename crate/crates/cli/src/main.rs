use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use teq_core::classify::{brick_type_matrix, is_totally_equimodular, is_totally_unimodular};
use teq_core::cone::TeCone;
use teq_core::decompose::{decompose_te_set, minimal_non_tu_row_subsets};
use teq_core::hilbert::{hilbert_basis_te_cone, hilbert_oracle};
use teq_core::hunt::{enumerate_thick_interlaces_with, HuntOptions};
use teq_core::io::{
    brick_type_json, certificate, decomposition_json, hilbert_json, matrix_json, read_matrix_file,
    report_json, search_report_json, triangulation_from_json, triangulation_json, vec_json,
};
use teq_core::triangulate::{triangulate_te_cone, verify_triangulation};
use teq_core::{Error, ExactMatrix, RowSet};

/// Exact tests and constructions for totally equimodular matrices and their
/// cones.
#[derive(Parser)]
#[command(name = "teq", version)]
struct Cli {
    /// Worker threads for parallel kernels.
    #[arg(long, global = true, env = "TEQ_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total unimodularity, with a bad square submatrix as witness.
    CheckTu { matrix: PathBuf },
    /// Total equimodularity, with a failing row subset as witness.
    CheckTe { matrix: PathBuf },
    /// Brick type and equideterminant of a square matrix.
    Classify { matrix: PathBuf },
    /// Split a te-set into a tu-set and te-bricks.
    Decompose {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hilbert basis of the cone over the rows, from the closed formulas.
    Hilbert {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hilbert basis by enumerating the fundamental zonotope.
    Oracle {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regular unimodular triangulation of the cone over the rows.
    Triangulate {
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run every check on a triangulation JSON.
    Verify { triangulation: PathBuf },
    /// Enumerate thick te-interlaces of one size.
    Hunt {
        #[arg(long)]
        size: usize,
        /// Checkpoint file, read if present and appended per shard.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Holds,
    Fails,
}

fn input_json(path: &Path, m: &ExactMatrix) -> Value {
    json!({ "file": path.display().to_string(), "matrix": matrix_json(m) })
}

fn emit(doc: &Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::CheckTu { matrix } => {
            let a = read_matrix_file(&matrix)?;
            match is_totally_unimodular(&a).witness {
                None => {
                    println!("totally unimodular: true");
                    Ok(Outcome::Holds)
                }
                Some(w) => {
                    println!("totally unimodular: false");
                    println!("witness rows {:?} cols {:?} det {}", w.rows, w.cols, w.det);
                    Ok(Outcome::Fails)
                }
            }
        }
        Command::CheckTe { matrix } => {
            let a = read_matrix_file(&matrix)?;
            if a.nrows() > 64 {
                bail!(Error::Unsupported(format!("{} rows; at most 64 are supported", a.nrows())));
            }
            match is_totally_equimodular(&a).witness {
                None => {
                    println!("totally equimodular: true");
                    if a.nrows() <= 16 {
                        println!("minimal non-TU row subsets: {:?}", minimal_non_tu_row_subsets(&a)?);
                    }
                    Ok(Outcome::Holds)
                }
                Some(w) => {
                    println!("totally equimodular: false");
                    println!("witness rows {w:?} are independent but not equimodular");
                    Ok(Outcome::Fails)
                }
            }
        }
        Command::Classify { matrix } => {
            let a = read_matrix_file(&matrix)?;
            let t = match brick_type_matrix(&a) {
                Err(e @ (Error::RankDeficient { .. } | Error::NotEssentiallyPm1 { .. } | Error::Dimension(_))) => {
                    println!("not a te-brick: {e}");
                    return Ok(Outcome::Fails);
                }
                t => t?,
            };
            match t {
                Some(t) => {
                    println!("{} of size {}, equideterminant {}", t.tag.name(), t.size, t.equideterminant);
                    Ok(Outcome::Holds)
                }
                None => {
                    println!("not a te-brick");
                    Ok(Outcome::Fails)
                }
            }
        }
        Command::Decompose { matrix, out } => {
            let a = read_matrix_file(&matrix)?;
            let d = decompose_te_set(&RowSet::all(a.clone()))?;
            let types: Vec<Value> = d
                .parts()
                .iter()
                .map(|(_, rows)| brick_type_json(&brick_type_matrix(&d.part_matrix(rows)).ok().flatten()))
                .collect();
            let doc = certificate(
                "decompose",
                input_json(&matrix, &a),
                decomposition_json(&d),
                json!({ "brickTypes": types }),
            );
            emit(&doc, out.as_deref())?;
            Ok(Outcome::Holds)
        }
        Command::Hilbert { matrix, out } => hilbert(&matrix, out.as_deref(), false),
        Command::Oracle { matrix, out } => hilbert(&matrix, out.as_deref(), true),
        Command::Triangulate { matrix, out } => {
            let a = read_matrix_file(&matrix)?;
            let cone = TeCone::new(a.clone())?;
            let t = triangulate_te_cone(&cone)?;
            let rep = verify_triangulation(&cone, &t)?;
            let doc = certificate(
                "triangulate",
                input_json(&matrix, &a),
                triangulation_json(&cone, &t, &rep),
                report_json(&rep),
            );
            emit(&doc, out.as_deref())?;
            Ok(if rep.all_pass() { Outcome::Holds } else { Outcome::Fails })
        }
        Command::Verify { triangulation } => {
            let text = std::fs::read_to_string(&triangulation)
                .with_context(|| format!("reading {}", triangulation.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(Error::from)?;
            let (cone, t) = triangulation_from_json(&v)?;
            let rep = verify_triangulation(&cone, &t)?;
            println!("{} cells: {}", rep.cell_count, rep.summary());
            Ok(if rep.all_pass() { Outcome::Holds } else { Outcome::Fails })
        }
        Command::Hunt { size, resume, out } => {
            let opts = HuntOptions { jobs: cli.jobs, checkpoint: resume.clone() };
            let r = enumerate_thick_interlaces_with(size, &opts)?;
            let input = json!({
                "size": size.to_string(),
                "resume": resume.map(|p| p.display().to_string()),
            });
            let keys: Vec<Value> = r.representatives.iter().map(|c| vec_json(&c.key)).collect();
            let doc = certificate("hunt", input, search_report_json(&r), json!({ "canonicalKeys": keys }));
            emit(&doc, out.as_deref())?;
            Ok(Outcome::Holds)
        }
    }
}

fn hilbert(matrix: &Path, out: Option<&Path>, oracle: bool) -> anyhow::Result<Outcome> {
    let a = read_matrix_file(matrix)?;
    let cone = TeCone::new(a.clone())?;
    let (command, hb) = if oracle {
        ("oracle", hilbert_oracle(&cone))
    } else {
        ("hilbert", hilbert_basis_te_cone(&cone)?)
    };
    let doc = certificate(
        command,
        input_json(matrix, &a),
        hilbert_json(&hb),
        json!({ "gcddet": teq_core::exact::gcddet_matrix(&a)?.to_string() }),
    );
    emit(&doc, out)?;
    Ok(Outcome::Holds)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NotTotallyEquimodular { .. } | Error::NotMutuallyTu { .. } | Error::OutsideCone) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // Sets the pool for everything but hunt, which builds its own.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let start = Instant::now();
    let res = run(cli);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match res {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
