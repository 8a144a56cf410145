use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use uncolor::cert::{verify_certificate, Certificate};
use uncolor::generators as gen;
use uncolor::io::{parse_mg, write_mg, MgDocument};
use uncolor::report::{
    measure, report_table, survey_graph, survey_header, survey_line, Limits, Measure, SurveyRow,
};
use uncolor::search::DEFAULT_NODE_BUDGET;
use uncolor::vertex::DEFAULT_SUBSET_BUDGET;
use uncolor::MultiGraph;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "uncolor",
    version,
    about = "Edge-uncolorability measures of multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Search-node limit per measure.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Vertex subsets tested per r_v / r'_v computation.
    #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
    subset_budget: u64,
    /// Wall-clock limit in seconds; searches still running report unknown.
    #[arg(long)]
    time_limit_s: Option<u64>,
}

impl BudgetArgs {
    fn limits(&self) -> Limits {
        Limits {
            node_budget: self.node_budget,
            subset_budget: self.subset_budget,
            deadline: self
                .time_limit_s
                .map(|s| Instant::now() + Duration::from_secs(s)),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Cycle,
    Bipartite,
    Petersen,
    Meredith,
    Sum,
    Ok,
    TriangleChain,
    OddDelta,
    Join2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a member of a graph family in .mg format.
    ///
    /// Parameters: complete N | cycle N | bipartite A B | petersen |
    /// meredith S | sum COPIES S | ok K S | triangle-chain K | odd-delta K |
    /// join2 LEFT.mg EDGE RIGHT.mg EDGE
    Gen {
        family: Family,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute measures of one graph and write certificates next to it.
    Measure {
        file: PathBuf,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        chi: bool,
        #[arg(long)]
        r: bool,
        #[arg(long)]
        rv: bool,
        #[arg(long)]
        rvp: bool,
        #[arg(long)]
        oddness: bool,
        /// Directory for certificates (default: next to the input).
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Both)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Measure every .mg file in a directory and check the invariants.
    Survey {
        dir: PathBuf,
        /// Also write all rows as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn read_graph(path: &Path) -> Result<MultiGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_mg(&text)
        .map(|d| d.graph)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn num(params: &[String], i: usize, what: &str) -> Result<usize, String> {
    let raw = params
        .get(i)
        .ok_or_else(|| format!("missing parameter {what}"))?;
    raw.parse()
        .map_err(|_| format!("parameter {what} must be a non-negative integer, got {raw:?}"))
}

fn generate(family: Family, params: &[String]) -> Result<MgDocument, String> {
    let err = |e: uncolor::Error| e.to_string();
    let expect = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(format!("expected {k} parameters, got {}", params.len()))
        }
    };
    let (name, values, graph): (&str, Vec<(&str, usize)>, MultiGraph) = match family {
        Family::Complete => {
            expect(1)?;
            let n = num(params, 0, "N")?;
            ("complete", vec![("n", n)], gen::complete(n).map_err(err)?)
        }
        Family::Cycle => {
            expect(1)?;
            let n = num(params, 0, "N")?;
            ("cycle", vec![("n", n)], gen::cycle(n).map_err(err)?)
        }
        Family::Bipartite => {
            expect(2)?;
            let (a, b) = (num(params, 0, "A")?, num(params, 1, "B")?);
            (
                "bipartite",
                vec![("a", a), ("b", b)],
                gen::complete_bipartite(a, b).map_err(err)?,
            )
        }
        Family::Petersen => {
            expect(0)?;
            ("petersen", vec![], gen::petersen())
        }
        Family::Meredith => {
            expect(1)?;
            let s = num(params, 0, "S")?;
            (
                "meredith",
                vec![("s", s)],
                gen::gen_meredith(s).map_err(err)?.0,
            )
        }
        Family::Sum => {
            expect(2)?;
            let (c, s) = (num(params, 0, "COPIES")?, num(params, 1, "S")?);
            (
                "sum",
                vec![("copies", c), ("s", s)],
                gen::gen_meredith_sum(c, s).map_err(err)?,
            )
        }
        Family::Ok => {
            expect(2)?;
            let (k, s) = (num(params, 0, "K")?, num(params, 1, "S")?);
            (
                "ok",
                vec![("k", k), ("s", s)],
                gen::gen_o_k(k, s).map_err(err)?,
            )
        }
        Family::TriangleChain => {
            expect(1)?;
            let k = num(params, 0, "K")?;
            (
                "triangle-chain",
                vec![("k", k)],
                gen::gen_triangle_chain(k).map_err(err)?,
            )
        }
        Family::OddDelta => {
            expect(1)?;
            let k = num(params, 0, "K")?;
            (
                "odd-delta",
                vec![("k", k)],
                gen::gen_odd_delta_extremal(k).map_err(err)?,
            )
        }
        Family::Join2 => {
            expect(4)?;
            let left = read_graph(Path::new(&params[0]))?;
            let right = read_graph(Path::new(&params[2]))?;
            let (e, f) = (num(params, 1, "EDGE")?, num(params, 3, "EDGE")?);
            let j = gen::two_edge_join(&left, e, &right, f).map_err(err)?;
            ("join2", vec![("left_edge", e), ("right_edge", f)], j.graph)
        }
    };
    Ok(MgDocument::new(graph).with_comment(gen::provenance(name, &values)))
}

fn cert_path(file: &Path, dir: Option<&Path>, key: &str) -> PathBuf {
    let stem = file
        .file_stem()
        .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    let base = dir.map_or_else(
        || file.parent().unwrap_or(Path::new(".")).to_path_buf(),
        Path::to_path_buf,
    );
    base.join(format!("{stem}.{key}.cert.json"))
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Gen {
            family,
            params,
            output,
        } => {
            let text = write_mg(&generate(family, &params)?);
            match output {
                Some(p) => fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Measure {
            file,
            all,
            chi,
            r,
            rv,
            rvp,
            oddness,
            cert_dir,
            format,
            budget,
        } => {
            let g = read_graph(&file)?;
            let mut which = Vec::new();
            for (on, m) in [
                (chi, Measure::Chi),
                (r, Measure::R),
                (rv, Measure::Rv),
                (rvp, Measure::Rvp),
                (oddness, Measure::Oddness),
            ] {
                if on || all {
                    which.push(m);
                }
            }
            if which.is_empty() {
                which = Measure::ALL.to_vec();
            }
            let name = file
                .file_stem()
                .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
            let mut m = measure(&name, &g, &which, &budget.limits());
            for (key, cert) in &m.certificates {
                let path = cert_path(&file, cert_dir.as_deref(), key);
                fs::write(&path, cert.to_json() + "\n")
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                if *key != "r-deletion" {
                    if let Some(entry) = m.report.entry_mut(key) {
                        entry.certificate = Some(path.display().to_string());
                    }
                }
            }
            if format != Format::Json {
                print!("{}", report_table(&m.report));
            }
            if format != Format::Table {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&m.report).expect("serializable")
                );
            }
            Ok(if m.report.has_unknowns() {
                EXIT_UNKNOWN
            } else {
                0
            })
        }
        Cmd::Verify {
            graph,
            certificate,
            budget,
        } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&certificate)
                .map_err(|e| format!("{}: {e}", certificate.display()))?;
            let cert: Certificate = serde_json::from_str(&text)
                .map_err(|e| format!("{}: {e}", certificate.display()))?;
            match verify_certificate(&g, &cert, &mut budget.limits().budget()) {
                Ok(check) if check.ok => {
                    println!("PASS {}: {}", check.kind, check.reason);
                    Ok(0)
                }
                Ok(check) => {
                    println!("FAIL {}: {}", check.kind, check.reason);
                    Ok(EXIT_VIOLATION)
                }
                Err(e) => {
                    println!("FAIL {}: {e}", cert.kind());
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Cmd::Survey { dir, json, budget } => {
            let mut files: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|e| format!("{}: {e}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mg"))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(format!("{}: no .mg files", dir.display()));
            }
            let limits = budget.limits();
            let results: Vec<(PathBuf, Result<SurveyRow, String>)> = files
                .par_iter()
                .map(|p| {
                    let name = p
                        .file_stem()
                        .map_or(String::new(), |s| s.to_string_lossy().into_owned());
                    (
                        p.clone(),
                        read_graph(p).map(|g| survey_graph(&name, &g, &limits)),
                    )
                })
                .collect();
            println!("{}", survey_header());
            let mut rows = Vec::new();
            let mut unreadable = 0;
            for (path, res) in results {
                match res {
                    Ok(row) => {
                        println!("{}", survey_line(&row));
                        rows.push(row);
                    }
                    Err(e) => {
                        unreadable += 1;
                        eprintln!("skipped {}: {e}", path.display());
                    }
                }
            }
            for row in &rows {
                for note in &row.notes {
                    println!("  {}: {note}", row.name);
                }
            }
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&rows).expect("serializable");
                fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?;
            }
            let failed = rows.iter().filter(|r| r.failed()).count();
            let undecided = rows.iter().filter(|r| r.undecided()).count();
            println!("{} graphs, {failed} with violations, {undecided} with undecided checks, {unreadable} unreadable", rows.len());
            Ok(if failed > 0 {
                EXIT_VIOLATION
            } else if undecided > 0 {
                EXIT_UNKNOWN
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
