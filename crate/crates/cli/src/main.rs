//! `sgrid`: command-line frontend over the library. Each subcommand reads text
//! files, calls one library function and prints the result.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sgrid::braid::{grid_to_braid, rectilinear_closure, SingularBraidWord};
use sgrid::closure::pd::PDDiagram;
use sgrid::closure::{braid_closure_pd, to_pd, transverse::transverse_closure};
use sgrid::legendrian::{census, render_front, to_front, FrontFormat};
use sgrid::moves::{all_families, enumerate_moves, Family, Move};
use sgrid::oracle::fingerprint;
use sgrid::resolution::{resolve, Eta};
use sgrid::search::{equivalent, replay, simplify_path, Category, Outcome, SearchBudget};
use sgrid::GridDiagram;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;

#[derive(Parser)]
#[command(name = "sgrid", version, about = "Singular grid diagrams: moves, resolutions, braids, fronts and link diagrams")]
struct Cli {
    /// Wrap output as {command, input-hash, result}
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for search and the oracle (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureKind {
    /// Rectilinear closure back to a grid
    Grid,
    /// Planar diagram of the braid closure
    Pd,
    /// Transverse closure front
    Transverse,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a grid file; prints `ok` or one problem per line
    Validate { file: String },
    /// Draw the grid with its derived tiling
    Render { file: String },
    /// Front projection of the grid
    Front {
        file: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Thurston-Bennequin number
    Tb {
        file: String,
        /// Also print the feature counts
        #[arg(long)]
        census: bool,
    },
    /// Singular braid word read off the grid
    Braid { file: String },
    /// Planar diagram code of the grid
    Pd { file: String },
    /// Oracle invariants of a grid, braid or PD file
    Fingerprint { file: String },
    /// Apply move literals in order, e.g. `trH:3 cmV:5 stab:NE:2,3:0 rot+:2,2`.
    /// Line indices are 1-based and name the gap after that line.
    Move {
        file: String,
        #[arg(required = true, allow_hyphen_values = true)]
        moves: Vec<String>,
    },
    /// List applicable moves
    Moves {
        file: String,
        /// Restrict to the moves of a category
        #[arg(long)]
        cat: Option<Category>,
    },
    /// Resolve the singular tile at `r,c` (row from the bottom, column from the left)
    Resolve {
        file: String,
        #[arg(long, value_parser = parse_cell)]
        at: (usize, usize),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_eta)]
        eta: Eta,
    },
    /// Close a braid file
    Closure {
        file: String,
        #[arg(long, value_enum, default_value = "grid")]
        kind: ClosureKind,
    },
    /// Bounded equivalence search; exit 0 equivalent, 1 distinguished, 2 unknown
    Equiv {
        f1: String,
        f2: String,
        #[arg(long, default_value = "sk")]
        cat: Category,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max_visited: Option<usize>,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Greedy destabilization within a category
    Simplify {
        file: String,
        #[arg(long, default_value = "sk")]
        cat: Category,
    },
}

fn parse_cell(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected r,c")?;
    Ok((a.trim().parse().map_err(|_| "bad row")?, b.trim().parse().map_err(|_| "bad column")?))
}

fn parse_eta(s: &str) -> Result<Eta, String> {
    Eta::parse(s).ok_or_else(|| format!("expected +, - or 0, got '{s}'"))
}

/// A failure with its exit code.
struct Fail(u8, String);

impl Fail {
    fn data(msg: impl ToString) -> Fail {
        Fail(EX_DATAERR, msg.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn plain(text: String) -> Output {
        let json = Value::String(text.trim_end().to_string());
        Output { text, json, code: 0 }
    }
}

fn read(path: &str) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(EX_NOINPUT, format!("{path}: {e}")))
}

fn grid(text: &str, path: &str) -> Result<GridDiagram, Fail> {
    GridDiagram::parse(text).map_err(|e| Fail::data(format!("{path}: {e}")))
}

fn braid(text: &str, path: &str) -> Result<SingularBraidWord, Fail> {
    SingularBraidWord::parse(text).map_err(|e| Fail::data(format!("{path}: {e}")))
}

fn first_word(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("").split_whitespace().next().unwrap_or("")
}

fn budget(size: Option<usize>, visited: Option<usize>, depth: Option<usize>) -> SearchBudget {
    let d = SearchBudget::default();
    SearchBudget {
        max_size: size.unwrap_or(d.max_size),
        max_visited: visited.unwrap_or(d.max_visited),
        max_depth: depth.unwrap_or(d.max_depth),
    }
}

fn path_text(path: &[Move]) -> Vec<String> {
    path.iter().map(|m| m.to_string()).collect()
}

fn run(cmd: &Cmd, inputs: &mut Vec<String>) -> Result<Output, Fail> {
    let mut load = |path: &str| -> Result<String, Fail> {
        let t = read(path)?;
        inputs.push(t.clone());
        Ok(t)
    };
    Ok(match cmd {
        Cmd::Validate { file } => {
            let t = load(file)?;
            let g = grid(&t, file)?;
            match g.validate() {
                Ok(()) => Output::plain("ok\n".into()),
                Err(problems) => return Err(Fail::data(problems.join("\n"))),
            }
        }
        Cmd::Render { file } => Output::plain(grid(&load(file)?, file)?.render_ascii()),
        Cmd::Front { file, format } => {
            let f = to_front(&grid(&load(file)?, file)?);
            let fmt = match format {
                Format::Ascii => FrontFormat::Ascii,
                Format::Svg => FrontFormat::Svg,
            };
            Output::plain(render_front(&f, fmt))
        }
        Cmd::Tb { file, census: show } => {
            let c = census(&grid(&load(file)?, file)?);
            let mut text = format!("{}\n", c.tb());
            if *show {
                text += &format!("positive {:?}\nnegative {:?}\n", c.positives(), c.negatives());
            }
            let json = json!({"tb": c.tb(), "positive": c.positives(), "negative": c.negatives()});
            Output { text, json, code: 0 }
        }
        Cmd::Braid { file } => Output::plain(grid_to_braid(&grid(&load(file)?, file)?).serialize()),
        Cmd::Pd { file } => Output::plain(to_pd(&grid(&load(file)?, file)?).to_text()),
        Cmd::Fingerprint { file } => {
            let t = load(file)?;
            let pd = match first_word(&t) {
                "grid" => to_pd(&grid(&t, file)?),
                "braid" => braid_closure_pd(&braid(&t, file)?),
                _ => PDDiagram::parse(&t).map_err(|e| Fail::data(format!("{file}: {e}")))?,
            };
            Output::plain(fingerprint(&pd).map_err(Fail::data)?.to_string())
        }
        Cmd::Move { file, moves } => {
            let g = grid(&load(file)?, file)?;
            let parsed = moves.iter().map(|m| m.parse::<Move>().map_err(Fail::data)).collect::<Result<Vec<_>, _>>()?;
            let out = replay(&g, &parsed).map_err(Fail::data)?;
            Output::plain(out.serialize())
        }
        Cmd::Moves { file, cat } => {
            let g = grid(&load(file)?, file)?;
            let fams: Vec<Family> = all_families().into_iter().filter(|&f| cat.map_or(true, |c| c.allows(f))).collect();
            let list = path_text(&enumerate_moves(&g, &fams));
            let text = list.iter().map(|m| format!("{m}\n")).collect();
            Output { text, json: json!(list), code: 0 }
        }
        Cmd::Resolve { file, at, eta } => {
            let g = grid(&load(file)?, file)?;
            Output::plain(resolve(&g, *at, *eta).map_err(Fail::data)?.serialize())
        }
        Cmd::Closure { file, kind } => {
            let w = braid(&load(file)?, file)?;
            Output::plain(match kind {
                ClosureKind::Grid => rectilinear_closure(&w).serialize(),
                ClosureKind::Pd => braid_closure_pd(&w).to_text(),
                ClosureKind::Transverse => render_front(&transverse_closure(&w), FrontFormat::Ascii),
            })
        }
        Cmd::Equiv { f1, f2, cat, max_size, max_visited, max_depth } => {
            let g1 = grid(&load(f1)?, f1)?;
            let g2 = grid(&load(f2)?, f2)?;
            let b = budget(*max_size, *max_visited, *max_depth);
            let b = SearchBudget { max_size: b.max_size.max(g1.n).max(g2.n), ..b };
            match equivalent(&g1, &g2, *cat, b) {
                Outcome::Equivalent(path) => {
                    let p = path_text(&path);
                    let text = format!("equivalent\n{}\n", p.join(" "));
                    Output { text, json: json!({"outcome": "equivalent", "path": p}), code: 0 }
                }
                Outcome::Distinguished(why) => Output {
                    text: format!("distinguished: {why}\n"),
                    json: json!({"outcome": "distinguished", "invariant": why}),
                    code: 1,
                },
                Outcome::Unknown { visited } => Output {
                    text: format!("unknown after {visited} diagrams\n"),
                    json: json!({"outcome": "unknown", "visited": visited}),
                    code: 2,
                },
            }
        }
        Cmd::Simplify { file, cat } => {
            let g = grid(&load(file)?, file)?;
            let (s, path) = simplify_path(&g, *cat, SearchBudget::default());
            let text = s.serialize();
            Output { json: json!({"grid": text, "path": path_text(&path)}), text, code: 0 }
        }
    })
}

fn name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Validate { .. } => "validate",
        Cmd::Render { .. } => "render",
        Cmd::Front { .. } => "front",
        Cmd::Tb { .. } => "tb",
        Cmd::Braid { .. } => "braid",
        Cmd::Pd { .. } => "pd",
        Cmd::Fingerprint { .. } => "fingerprint",
        Cmd::Move { .. } => "move",
        Cmd::Moves { .. } => "moves",
        Cmd::Resolve { .. } => "resolve",
        Cmd::Closure { .. } => "closure",
        Cmd::Equiv { .. } => "equiv",
        Cmd::Simplify { .. } => "simplify",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EX_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut inputs = Vec::new();
    match run(&cli.cmd, &mut inputs) {
        Ok(out) => {
            if cli.json {
                let mut h = Sha256::new();
                for t in &inputs {
                    h.update(t.as_bytes());
                }
                let env = json!({"command": name(&cli.cmd), "input-hash": format!("{:x}", h.finalize()), "result": out.json});
                println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(out.code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
