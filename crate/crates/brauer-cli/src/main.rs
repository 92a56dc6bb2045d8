use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use brauer::oracle::{crosscheck_bijection, hom_dim, strings_of_walk, HomTarget, PathAlgebra};
use brauer::ribbon::{parse_graph, Direction};
use brauer::tilt::{enumerate_two_term_tilting, hasse_quiver, hom_vanishes_into_shift, TiltError};
use brauer::walks::{discrete_length_bound, enumerate_admissible_walks, make_signed_walk};
use brauer::BrauerGraph;

const USAGE: u8 = 1;
const PARSE: u8 = 2;
const REFUSED: u8 = 3;
const MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "brauer", version, about = "Two-term tilting complexes of Brauer graph algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Extra diagnostics on stderr.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph file.
    Validate { graph: PathBuf },
    /// List admissible signed walks.
    Walks {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List complete admissible sets (two-term tilting complexes).
    Tilt2 {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hasse quiver of the complete sets.
    Hasse {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Flip the graph at an edge.
    Flip {
        graph: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long, value_enum, default_value = "left")]
        direction: Side,
    },
    /// Decide tilting-discreteness.
    Discrete {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare the combinatorics with the string-module oracle.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hom(T_source, T_target[1]) through Hom(M_target, N_source).
    Hom {
        graph: PathBuf,
        source: String,
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load(path: &PathBuf) -> Result<BrauerGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn cap_or_refuse(g: &BrauerGraph, cap: Option<usize>) -> Result<usize, Failure> {
    match cap {
        Some(0) => Err(fail(USAGE, "--cap must be at least 1")),
        Some(c) => Ok(c),
        None => discrete_length_bound(g).ok_or_else(|| {
            fail(
                REFUSED,
                "the graph is not tilting-discrete, so it has infinitely many admissible walks; pass --cap",
            )
        }),
    }
}

fn only(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(fail(USAGE, "this subcommand does not support that --format"))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Validate { graph } => {
            let g = load(&graph)?;
            let p = g.cycle_profile();
            Ok(format!(
                "valid: {} vertices, {} edges, {} half-edges, betti {}\n",
                g.vertex_count(),
                g.edge_count(),
                g.half_count(),
                p.betti
            ))
        }
        Command::Walks { graph, cap, format } => {
            only(format, &[Format::Text, Format::Json])?;
            let g = load(&graph)?;
            let cap = cap_or_refuse(&g, cap)?;
            let en = enumerate_admissible_walks(&g, cap);
            if verbose {
                eprintln!("{} admissible walks, stabilized: {}", en.walks.len(), en.stabilized);
            }
            let texts: Vec<String> = en.walks.iter().map(|w| w.to_text(&g)).collect();
            Ok(match format {
                Format::Json => json!({"walks": texts, "stabilized": en.stabilized}).to_string() + "\n",
                _ => texts.iter().map(|t| format!("{t}\n")).collect(),
            })
        }
        Command::Tilt2 { graph, cap, format } => {
            only(format, &[Format::Text, Format::Json])?;
            let g = load(&graph)?;
            cap_or_refuse(&g, cap)?;
            let sets = enumerate_two_term_tilting(&g, cap).map_err(tilt_failure)?;
            let ser: Vec<Vec<String>> = sets.iter().map(|s| s.serialize(&g)).collect();
            if verbose {
                eprintln!("{} complete sets", sets.len());
            }
            Ok(match format {
                Format::Json => json!({ "complete_sets": ser }).to_string() + "\n",
                _ => ser.iter().map(|s| format!("{}\n", s.join(" | "))).collect(),
            })
        }
        Command::Hasse { graph, cap, format } => {
            let g = load(&graph)?;
            cap_or_refuse(&g, cap)?;
            let q = hasse_quiver(&g, cap).map_err(tilt_failure)?;
            Ok(match format {
                Format::Dot => q.to_dot(),
                Format::Json => q.to_json() + "\n",
                Format::Text => {
                    let mut s = String::new();
                    for n in &q.nodes {
                        s += &format!("{}: {}\n", n.id, n.walks.join(" | "));
                    }
                    for (a, b) in &q.arrows {
                        s += &format!("{a} -> {b}\n");
                    }
                    s
                }
            })
        }
        Command::Flip {
            graph,
            edge,
            direction,
        } => {
            let g = load(&graph)?;
            let d = match direction {
                Side::Left => Direction::Left,
                Side::Right => Direction::Right,
            };
            let f = g.flip(&edge, d).map_err(|e| fail(PARSE, e.to_string()))?;
            Ok(f.to_text())
        }
        Command::Discrete { graph, format } => {
            only(format, &[Format::Text, Format::Json])?;
            let g = load(&graph)?;
            let p = g.cycle_profile();
            let td = g.is_tilting_discrete();
            Ok(match format {
                Format::Json => json!({"tilting_discrete": td, "cycle_profile": p}).to_string() + "\n",
                _ => format!(
                    "tilting-discrete: {td}\nbetti: {}\ncycle lengths: {:?}\nodd basis cycles: {}\neven basis cycles: {}\n",
                    p.betti, p.cycle_lengths, p.odd_basis_cycles, p.even_basis_cycles
                ),
            })
        }
        Command::Verify { graph, cap, format } => {
            only(format, &[Format::Text, Format::Json])?;
            let g = load(&graph)?;
            let cap = cap_or_refuse(&g, cap)?;
            let r = crosscheck_bijection(&g, cap);
            if verbose {
                for d in &r.disagreements {
                    eprintln!("{d}");
                }
            }
            let out = match format {
                Format::Json => serde_json::to_string(&r).expect("serializable") + "\n",
                _ => format!(
                    "{} walks, {} pairs, {} disagreements\n",
                    r.walks,
                    r.pairs,
                    r.disagreements.len()
                ),
            };
            if r.disagreements.is_empty() {
                Ok(out)
            } else {
                print!("{out}");
                Err(fail(MISMATCH, "the oracle disagrees with the combinatorics"))
            }
        }
        Command::Hom {
            graph,
            source,
            target,
            format,
        } => {
            only(format, &[Format::Text, Format::Json])?;
            let g = load(&graph)?;
            let s = make_signed_walk(&g, &source).map_err(|e| fail(PARSE, e.to_string()))?;
            let t = make_signed_walk(&g, &target).map_err(|e| fail(PARSE, e.to_string()))?;
            let alg = PathAlgebra::new(&g);
            let (m, _) = strings_of_walk(&g, &t);
            let (_, n) = strings_of_walk(&g, &s);
            let dim = hom_dim(&g, &alg, &m, &n);
            let report = hom_vanishes_into_shift(&g, &s, &t);
            if verbose {
                for (name, x) in [("M", &m), ("N", &n)] {
                    if let HomTarget::String(w) = x {
                        eprintln!("{name}: {}\n{}", w.to_text(&g), w.loewy_text(&g));
                    }
                }
            }
            Ok(match format {
                Format::Json => json!({
                    "hom_dim": dim,
                    "vanishes": report.vanishes,
                    "u2_witness": report.u2_witness,
                    "l2_witness": report.l2_witness,
                })
                .to_string()
                    + "\n",
                _ => format!(
                    "dim Hom(M_target, N_source) = {dim}\nHom(T_source, T_target[1]) vanishes: {}\n",
                    report.vanishes
                ),
            })
        }
    }
}

fn tilt_failure(e: TiltError) -> Failure {
    match e {
        TiltError::NotEnumerable => fail(REFUSED, e.to_string()),
        _ => fail(MISMATCH, e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
