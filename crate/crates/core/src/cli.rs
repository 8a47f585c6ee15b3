//! The `macpoly` command line, as a library function so it can be driven
//! in-process by tests. The binary only prints the outcome.
//!
//! Exit codes: 0 success, 1 domain failure (degenerate region, rate not
//! achievable, verification mismatch), 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::channel::{mi_notation, ChannelSpec};
use crate::counting::{count_table, count_total, write_csv, FaceCounts};
use crate::error::{Error, Result};
use crate::face::{enumerate_faces, locate_minimal_face, FaceLabel, Location, DEFAULT_TOL};
use crate::hasse::lattice_dot;
use crate::oracle::{cross_validate, enumerate_vertices, FEASIBILITY_TOL};
use crate::region::{build_hrep, check_degeneracy, Region, DEFAULT_MARGIN};
use crate::sets::UserSet;

#[derive(Debug, Parser)]
#[command(
    name = "macpoly",
    version,
    about = "Faces, decoding orders and face counts of multiple-access channel rate regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Front bounds I(X_S;Y|X_{S^c}) for every nonempty S.
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Non-degeneracy report.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long)]
        json: bool,
    },
    /// Face labels with dimensions and decoding orders.
    Faces {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        users: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Face counts from the closed-form formulas.
    Count {
        #[arg(long, required_unless_present = "table")]
        users: Option<usize>,
        #[arg(long, requires = "users")]
        dim: Option<usize>,
        /// Emit the table for M = 1..=TABLE as CSV.
        #[arg(long)]
        table: Option<usize>,
        /// CSV destination for --table (standard output when omitted).
        #[arg(long, requires = "table")]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Smallest face containing a rate tuple, and its decoding order.
    Locate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        rate: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Vertices from brute-force enumeration.
    Vertices {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check labels against the brute-force face lattice.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Face lattice as a DOT digraph.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        Self::with_code(0, stdout)
    }

    fn with_code(exit_code: i32, stdout: String) -> Self {
        CommandOutcome {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        let exit_code = match err {
            Error::Degenerate(_) | Error::Internal(_) | Error::NotTelescopic { .. } => 1,
            _ => 2,
        };
        CommandOutcome {
            exit_code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                CommandOutcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|err| CommandOutcome::error(&err))
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn load(path: &Path) -> Result<ChannelSpec> {
    ChannelSpec::from_path(path)
}

fn dispatch(command: Command) -> Result<CommandOutcome> {
    match command {
        Command::Info { file, json } => info(&load(&file)?, json),
        Command::Check { file, margin, json } => check(&load(&file)?, margin, json),
        Command::Faces {
            file,
            users,
            dim,
            json,
        } => {
            let users = match (file, users) {
                (Some(file), None) => Region::new(&load(&file)?)?.users(),
                (None, Some(users)) => users,
                _ => {
                    return Err(Error::Precondition(
                        "faces needs either a channel file or --users".to_string(),
                    ))
                }
            };
            faces(users, dim, json)
        }
        Command::Count {
            users,
            dim,
            table,
            csv,
            json,
        } => match table {
            Some(max_users) => table_csv(max_users, csv.as_deref()),
            None => count(users.expect("clap enforces --users"), dim, json),
        },
        Command::Locate {
            file,
            rate,
            tol,
            json,
        } => locate(&load(&file)?, &rate, tol, json),
        Command::Vertices { file, json } => vertices(&load(&file)?, json),
        Command::Verify { file, json } => verify(&load(&file)?, json),
        Command::Lattice { file, dot } => {
            let region = Region::new(&load(&file)?)?;
            let text = lattice_dot(region.users())?;
            match dot {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    Ok(CommandOutcome::ok(format!("wrote {}\n", path.display())))
                }
                None => Ok(CommandOutcome::ok(text)),
            }
        }
    }
}

fn info(spec: &ChannelSpec, json: bool) -> Result<CommandOutcome> {
    let hrep = build_hrep(spec)?;
    let rows: Vec<(UserSet, UserSet, f64)> = UserSet::all(spec.users)
        .skip(1)
        .map(|s| (s, s.complement(spec.users), hrep.bound(s)))
        .collect();
    if json {
        let bounds: Vec<_> = rows
            .iter()
            .map(|(s, given, bits)| json!({"subset": s, "given": given, "bits": bits}))
            .collect();
        return Ok(CommandOutcome::ok(to_json(&json!({"users": spec.users, "bounds": bounds}))?));
    }
    let mut out = format!("users: {}\n", spec.users);
    for (s, given, bits) in rows {
        writeln!(out, "{} = {bits:.6}", mi_notation(s, given)).unwrap();
    }
    Ok(CommandOutcome::ok(out))
}

fn check(spec: &ChannelSpec, margin: f64, json: bool) -> Result<CommandOutcome> {
    let report = check_degeneracy(spec, margin)?;
    let code = if report.nondegenerate { 0 } else { 1 };
    if json {
        return Ok(CommandOutcome::with_code(code, to_json(&report)?));
    }
    let mut out = String::new();
    if report.nondegenerate {
        writeln!(out, "non-degenerate (margin {margin:e} bits)").unwrap();
    }
    for violation in &report.violations {
        writeln!(out, "{violation}").unwrap();
    }
    Ok(CommandOutcome::with_code(code, out))
}

fn faces(users: usize, dim: Option<usize>, json: bool) -> Result<CommandOutcome> {
    let labels = enumerate_faces(users, dim)?;
    if json {
        let items = labels
            .iter()
            .map(|l| Ok(json!({"label": l, "dim": l.dim()?, "decoding_order": l.decoding_order()?})))
            .collect::<Result<Vec<_>>>()?;
        return Ok(CommandOutcome::ok(to_json(&items)?));
    }
    let mut out = String::new();
    for label in &labels {
        writeln!(out, "{label}\tdim={}\torder={}", label.dim()?, label.decoding_order()?).unwrap();
    }
    Ok(CommandOutcome::ok(out))
}

fn count(users: usize, dim: Option<usize>, json: bool) -> Result<CommandOutcome> {
    if let Some(d) = dim {
        let n = count_total(users, d)?;
        let text = if json {
            to_json(&json!({"users": users, "dim": d, "total": n.to_string()}))?
        } else {
            format!("D={d}:{n}\n")
        };
        return Ok(CommandOutcome::ok(text));
    }
    let counts = FaceCounts::new(users)?;
    if json {
        return Ok(CommandOutcome::ok(to_json(&counts)?));
    }
    Ok(CommandOutcome::ok(counts.summary() + "\n"))
}

fn table_csv(max_users: usize, path: Option<&Path>) -> Result<CommandOutcome> {
    let table = count_table(max_users)?;
    match path {
        Some(path) => {
            write_csv(&table, std::fs::File::create(path)?)?;
            Ok(CommandOutcome::ok(format!("wrote {}\n", path.display())))
        }
        None => {
            let mut buf = Vec::new();
            write_csv(&table, &mut buf)?;
            Ok(CommandOutcome::ok(String::from_utf8(buf).expect("CSV is UTF-8")))
        }
    }
}

fn locate(spec: &ChannelSpec, rate: &[f64], tol: f64, json: bool) -> Result<CommandOutcome> {
    let region = Region::new(spec)?;
    match locate_minimal_face(&region, rate, tol)? {
        Location::Face { label } => {
            let plan = label.decoding_order()?;
            let dim = label.dim()?;
            if json {
                let doc = json!({"status": "face", "label": label, "dim": dim, "decoding_order": plan});
                return Ok(CommandOutcome::ok(to_json(&doc)?));
            }
            Ok(CommandOutcome::ok(format!("{label} dim={dim} order={plan}\n")))
        }
        Location::NotAchievable {
            index,
            constraint,
            excess,
        } => {
            let text = if json {
                to_json(&json!({
                    "status": "not_achievable",
                    "index": index,
                    "constraint": constraint,
                    "excess": excess,
                }))?
            } else {
                format!("not achievable: violates {constraint} by {excess:.6}\n")
            };
            Ok(CommandOutcome::with_code(1, text))
        }
    }
}

fn vertices(spec: &ChannelSpec, json: bool) -> Result<CommandOutcome> {
    let hrep = build_hrep(spec)?;
    let set = enumerate_vertices(&hrep, FEASIBILITY_TOL)?;
    if json {
        return Ok(CommandOutcome::ok(to_json(&set)?));
    }
    let mut out = format!("{} vertices\n", set.len());
    for (v, tight) in set.vertices.iter().zip(&set.incidence) {
        let coords: Vec<String> = v.iter().map(|&x| fmt_coord(x)).collect();
        writeln!(out, "({})\ttight={tight:?}", coords.join(", ")).unwrap();
    }
    Ok(CommandOutcome::ok(out))
}

/// Six decimals, without a sign on values that round to zero.
fn fmt_coord(x: f64) -> String {
    let text = format!("{x:.6}");
    match text.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => text,
    }
}

fn verify(spec: &ChannelSpec, json: bool) -> Result<CommandOutcome> {
    let report = cross_validate(spec)?;
    let code = if report.is_clean() { 0 } else { 1 };
    if json {
        return Ok(CommandOutcome::with_code(code, to_json(&report)?));
    }
    let mut out = String::new();
    writeln!(out, "oracle faces by dimension:  {:?}", report.oracle_counts).unwrap();
    writeln!(out, "formula faces by dimension: [{}]", report.formula_counts.join(", ")).unwrap();
    writeln!(
        out,
        "{} labels matched to {} faces, {} label pairs checked",
        report.matches.len(),
        report.faces,
        report.pairs_checked
    )
    .unwrap();
    for mismatch in &report.mismatches {
        writeln!(out, "MISMATCH {mismatch}").unwrap();
    }
    writeln!(out, "{}", if report.is_clean() { "OK" } else { "FAILED" }).unwrap();
    Ok(CommandOutcome::with_code(code, out))
}

/// Parses a label for an `M`-user region and checks it describes a face.
pub fn parse_valid_label(text: &str, users: usize) -> Result<FaceLabel> {
    let label = FaceLabel::parse(text, users)?;
    label.validate().map_err(Error::InvalidLabel)?;
    Ok(label)
}
