//! Argument handling for the `hopfarb` binary.
//!
//! [`run`] takes argv and two writers so the whole front end can be driven
//! in-process by tests; `main` only wires it to the real stdio.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use hopfarb::embedding::{self, ORACLE_MAX_SIZE};
use hopfarb::invariants::{self, SeifertMatrix};
use hopfarb::minor_lab::{self, Quantity, DEFAULT_GUARD};
use hopfarb::{enumerate, Error, PlaneTree, Predicate};

#[derive(Parser, Debug)]
#[command(name = "hopfarb", version, about = "Signed plane trees and Hopf arborescent links")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(clap::Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["tree", "file"])))]
struct TreeInput {
    /// Tree in text form, e.g. "+(-,+)".
    #[arg(long, allow_hyphen_values = true)]
    tree: Option<String>,
    /// File with one tree per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse trees and print them in canonical form.
    Parse {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List all trees of a given size in enumeration order.
    Enum {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Number of signed plane trees with N vertices.
    Count { n: usize },
    /// Seifert matrix and link invariants.
    Inv {
        #[command(flatten)]
        input: TreeInput,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether SUB is a minor of SUPER, with a certificate.
    #[command(group(ArgGroup::new("supers").required(true).args(["sup", "file"])))]
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        #[arg(long = "super", allow_hyphen_values = true)]
        sup: Option<String>,
        /// Test SUB against every tree in this file, one answer per line.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also print the vertex map and edge paths in readable form.
        #[arg(long)]
        witness: bool,
    },
    /// Brute-force minor test by exhausting reductions of SUPER.
    OracleEmbed {
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        #[arg(long = "super", allow_hyphen_values = true)]
        sup: String,
        /// Largest SUPER size accepted.
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Minor poset of all trees up to a size; prints per-size counts.
    #[command(group(ArgGroup::new("out").required(true).multiple(true).args(["dot", "csv"])))]
    Poset {
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Minimal trees violating a predicate, e.g. `genus_le:1`.
    Mine {
        #[arg(long)]
        predicate: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        guard: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Minor pairs where a quantity decreases towards the larger tree.
    Audit {
        /// One of betti, genus, top_defect_ub.
        #[arg(long)]
        quantity: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        guard: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Group trees of one size by invariant fingerprint.
    Classes {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Uniform random tree, reproducible from the seed.
    Random {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Failure that maps to exit status 1.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the CLI and returns the process exit status: 0 on success, 1 on a
/// domain or I/O error, 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    // Output is buffered so the command can run inside a dedicated pool.
    let (mut buf_out, mut buf_err) = (Vec::new(), Vec::new());
    let result = match cli.jobs {
        Some(0) => Err(Failure("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, &mut buf_out, &mut buf_err)),
            Err(e) => Err(Failure(e.to_string())),
        },
        None => dispatch(cli.command, &mut buf_out, &mut buf_err),
    };
    if out.write_all(&buf_out).is_err() || err.write_all(&buf_err).is_err() {
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Parse { input, format } => {
            let fmt = only(format, &[Format::Text, Format::Json], "parse")?;
            for t in read_trees(&input)? {
                match fmt {
                    Format::Json => writeln!(out, "{}", json(&t.to_json()))?,
                    _ => writeln!(out, "{t}")?,
                }
            }
        }
        Command::Enum { size, limit } => {
            let trees = enumerate(size)?;
            for t in trees.take(limit.unwrap_or(usize::MAX)) {
                writeln!(out, "{t}")?;
            }
        }
        Command::Count { n } => writeln!(out, "{}", hopfarb::count(n)?)?,
        Command::Inv { input, format } => {
            let fmt = only(format, &[Format::Text, Format::Json], "inv")?;
            let trees = read_trees(&input)?;
            for (k, t) in trees.iter().enumerate() {
                match fmt {
                    Format::Json => writeln!(out, "{}", invariants::fingerprint(t).to_json())?,
                    _ => {
                        if k > 0 {
                            writeln!(out)?;
                        }
                        write_invariants(out, t)?;
                    }
                }
            }
        }
        Command::Embed { sub, sup, file, witness } => {
            let small = parse_arg("--sub", &sub)?;
            if let Some(s) = sup {
                let large = parse_arg("--super", &s)?;
                match embedding::embed_witness(&small, &large) {
                    Some(w) => {
                        writeln!(out, "true")?;
                        writeln!(out, "{}", w.to_json())?;
                        if witness {
                            for &(a, b) in &w.vertex_map {
                                writeln!(out, "vertex {a} -> {b}")?;
                            }
                            for p in &w.edge_paths {
                                let steps: Vec<String> = p.iter().map(usize::to_string).collect();
                                writeln!(out, "path {}", steps.join(" -> "))?;
                            }
                        }
                    }
                    None => writeln!(out, "false")?,
                }
            } else if let Some(path) = file {
                for large in read_file(&path)? {
                    writeln!(out, "{}", embedding::embeds(&small, &large))?;
                }
            }
        }
        Command::OracleEmbed { sub, sup, guard } => {
            let small = parse_arg("--sub", &sub)?;
            let large = parse_arg("--super", &sup)?;
            let limit = guard_value(guard, ORACLE_MAX_SIZE, err)?;
            writeln!(out, "{}", embedding::oracle_embeds_with_limit(&small, &large, limit)?)?;
        }
        Command::Poset { max_size, dot, csv, guard } => {
            let guard = guard_value(guard, DEFAULT_GUARD, err)?;
            if max_size > guard {
                return Err(Error::GuardExceeded { what: "universe size bound", actual: max_size, limit: guard }.into());
            }
            let u = minor_lab::universe(max_size)?;
            let report = minor_lab::poset_with_guard(&u, guard)?;
            if let Some(path) = dot {
                fs::write(&path, report.to_dot(&u)).map_err(|e| io_failure(&path, e))?;
            }
            if let Some(path) = csv {
                fs::write(&path, report.to_csv()).map_err(|e| io_failure(&path, e))?;
            }
            writeln!(out, "size\ttrees\trelation_pairs\thasse_pairs")?;
            for s in &report.stats {
                writeln!(out, "{}\t{}\t{}\t{}", s.size, s.trees, s.relation_pairs, s.hasse_pairs)?;
            }
            writeln!(out, "total\t{}\t{}\t{}", u.len(), report.relation_pairs.len(), report.hasse_pairs.len())?;
        }
        Command::Mine { predicate, max_size, guard, format } => {
            let fmt = only(format, &[Format::Text, Format::Json], "mine")?;
            let p = Predicate::parse(&predicate)?;
            let guard = guard_value(guard, DEFAULT_GUARD, err)?;
            let found = minor_lab::minimal_excluded_with_guard(&p, max_size, guard)?;
            let texts: Vec<String> = found.iter().map(PlaneTree::to_text).collect();
            match fmt {
                Format::Json => writeln!(out, "{}", json(&texts))?,
                _ => {
                    for t in texts {
                        writeln!(out, "{t}")?;
                    }
                }
            }
        }
        Command::Audit { quantity, max_size, guard, format } => {
            let fmt = only(format, &[Format::Text, Format::Json, Format::Csv], "audit")?;
            let q: Quantity = quantity.parse()?;
            let guard = guard_value(guard, DEFAULT_GUARD, err)?;
            let violations = minor_lab::audit_monotone_with_guard(q, max_size, guard)?;
            match fmt {
                Format::Json => writeln!(out, "{}", json(&violations))?,
                Format::Csv => {
                    writeln!(out, "sub,super,sub_value,super_value")?;
                    for v in &violations {
                        writeln!(out, "{},{},{},{}", v.sub, v.sup, v.sub_value, v.sup_value)?;
                    }
                }
                _ => {
                    for v in &violations {
                        writeln!(out, "{} <= {}\t{} > {}", v.sub, v.sup, v.sub_value, v.sup_value)?;
                    }
                    writeln!(out, "violations: {}", violations.len())?;
                }
            }
        }
        Command::Classes { size, format } => {
            let fmt = only(format, &[Format::Text, Format::Json], "classes")?;
            for (fp, members) in minor_lab::fingerprint_classes(size)? {
                let texts: Vec<String> = members.iter().map(PlaneTree::to_text).collect();
                match fmt {
                    Format::Json => {
                        writeln!(out, "{}", json(&serde_json::json!({ "fingerprint": fp, "members": texts })))?
                    }
                    _ => writeln!(out, "{}\t{fp}", texts.join(" "))?,
                }
            }
        }
        Command::Random { size, seed } => writeln!(out, "{}", hopfarb::random_tree(size, seed)?)?,
    }
    Ok(())
}

fn write_invariants(out: &mut dyn Write, t: &PlaneTree) -> Outcome {
    let v = SeifertMatrix::of_tree(t);
    let fp = v.fingerprint();
    writeln!(out, "tree: {t}")?;
    writeln!(out, "seifert:")?;
    write!(out, "{v}")?;
    writeln!(out, "n: {}", fp.n)?;
    writeln!(out, "b: {}", fp.b)?;
    writeln!(out, "g: {}", fp.g)?;
    writeln!(out, "alexander: {}", fp.alexander)?;
    writeln!(out, "signature: {}", fp.signature)?;
    writeln!(out, "determinant: {}", fp.determinant)?;
    writeln!(out, "nullity: {}", fp.nullity)?;
    match invariants::top_defect_upper_bound(t) {
        Ok(d) => writeln!(out, "top_defect_upper_bound: {d}")?,
        Err(_) => writeln!(out, "top_defect_upper_bound: n/a ({} components)", fp.b)?,
    }
    writeln!(out, "smooth_defect_guarantee: {}", invariants::smooth_defect_guarantee(t))?;
    Ok(())
}

fn only(format: Format, allowed: &[Format], verb: &str) -> std::result::Result<Format, Failure> {
    if allowed.contains(&format) {
        Ok(format)
    } else {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Err(Failure(format!("{verb} does not support --format {name}")))
    }
}

fn guard_value(guard: Option<usize>, default: usize, err: &mut dyn Write) -> std::result::Result<usize, Failure> {
    match guard {
        Some(g) if g != default => {
            writeln!(err, "note: size guard set to {g} (default {default})")?;
            Ok(g)
        }
        _ => Ok(default),
    }
}

fn json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("value serializes")
}

fn parse_arg(flag: &str, text: &str) -> std::result::Result<PlaneTree, Failure> {
    PlaneTree::parse(text).map_err(|e| Failure(format!("{flag}: {e}")))
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure(format!("{}: {e}", path.display()))
}

fn read_trees(input: &TreeInput) -> std::result::Result<Vec<PlaneTree>, Failure> {
    match (&input.tree, &input.file) {
        (Some(t), _) => Ok(vec![parse_arg("--tree", t)?]),
        (None, Some(path)) => read_file(path),
        (None, None) => unreachable!("clap requires one input"),
    }
}

fn read_file(path: &Path) -> std::result::Result<Vec<PlaneTree>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    text.lines()
        .enumerate()
        .map(|(i, line)| (i, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(i, line)| PlaneTree::parse(line).map_err(|e| Failure(format!("{}:{}: {e}", path.display(), i + 1))))
        .collect()
}
