use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use tricanon::canon::{canonicalize, check_table, CanonInput, Relation};
use tricanon::io::{format_matrix, parse_matrices, Report};
use tricanon::pencil::kronecker_decompose;
use tricanon::summands::table_samples;
use tricanon::witness::congruence_witness;
use tricanon::{Error, ExactMatrix, GaussianRational, Result, Scalar, TowerElement};

/// Exact canonical forms under congruence and *congruence.
///
/// Matrix files hold `rows cols` followed by the entries in row-major
/// order; the matrices of a pair are separated by a `---` line. Entries
/// are Gaussian rationals such as `3/5`, `-2i` or `1/2+3/4i`; entries
/// with `sqrt(m)` switch the whole file to the radical tower.
#[derive(Parser)]
#[command(name = "tricanon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker blocks of the pencil `B - tA` given as a pair `A --- B`.
    Kronecker {
        /// Pencil file (`-` for stdin).
        file: PathBuf,
        /// Also print `R`, `S` with `R A S`, `R B S` in canonical form.
        #[arg(long)]
        witness: bool,
    },
    /// Canonical summands of a matrix or pair.
    Canon {
        #[arg(long, value_parser = Relation::from_str)]
        relation: Relation,
        /// Matrix or pair file (`-` for stdin).
        file: PathBuf,
        /// Also print the explicit canonical matrix (pair).
        #[arg(long)]
        materialize: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Congruence `N` between two pairs `A --- B --- A' --- B'`.
    Witness {
        /// File with both pairs (`-` for stdin).
        file: PathBuf,
    },
    /// Check every sampled canonical summand against its Kronecker table.
    VerifyTables {
        #[arg(long)]
        max_size: usize,
        /// Print one line per sampled summand.
        #[arg(long)]
        verbose: bool,
    },
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

/// Matrices over `Q(i)` when possible, otherwise over the radical tower.
enum Loaded {
    Gaussian(Vec<ExactMatrix<GaussianRational>>),
    Tower(Vec<ExactMatrix<TowerElement>>),
}

fn load(text: &str) -> Result<Loaded> {
    match parse_matrices::<GaussianRational>(text) {
        Ok(ms) => Ok(Loaded::Gaussian(ms)),
        Err(gauss_err) => parse_matrices::<TowerElement>(text).map(Loaded::Tower).map_err(|_| gauss_err),
    }
}

fn expect_count<S: Scalar>(ms: Vec<ExactMatrix<S>>, count: usize) -> Result<Vec<ExactMatrix<S>>> {
    if ms.len() != count {
        return Err(Error::Parse(format!("expected {count} matrices separated by `---`, found {}", ms.len())));
    }
    Ok(ms)
}

/// `count` matrices forming pairs whose members share a shape.
fn expect_pairs<S: Scalar>(ms: Vec<ExactMatrix<S>>, count: usize) -> Result<Vec<ExactMatrix<S>>> {
    let ms = expect_count(ms, count)?;
    for p in ms.chunks(2) {
        if p[0].shape() != p[1].shape() {
            let (a, b) = (p[0].shape(), p[1].shape());
            return Err(Error::Parse(format!("pair members have shapes {}x{} and {}x{}", a.0, a.1, b.0, b.1)));
        }
    }
    Ok(ms)
}

fn kronecker<S: Scalar>(ms: Vec<ExactMatrix<S>>, witness: bool) -> Result<String> {
    let ms = expect_pairs(ms, 2)?;
    let form = kronecker_decompose(&ms[0], &ms[1])?;
    let mut out = String::new();
    for b in &form.blocks {
        writeln!(out, "{b}").unwrap();
    }
    if witness {
        writeln!(out, "R:").unwrap();
        out.push_str(&format_matrix(&form.r));
        writeln!(out, "S:").unwrap();
        out.push_str(&format_matrix(&form.s));
    }
    Ok(out)
}

fn canon<S: Scalar>(relation: Relation, ms: Vec<ExactMatrix<S>>, materialize: bool, json: bool) -> Result<String> {
    let input = if relation.is_single() {
        CanonInput::Matrix(expect_count(ms, 1)?.pop().unwrap())
    } else {
        let mut ms = expect_pairs(ms, 2)?;
        let b = ms.pop().unwrap();
        CanonInput::Pair(ms.pop().unwrap(), b)
    };
    let report = Report::new(&canonicalize(relation, &input)?, materialize)?;
    Ok(if json { report.to_json() + "\n" } else { report.to_text() })
}

fn witness<S: Scalar>(ms: Vec<ExactMatrix<S>>) -> Result<String> {
    let ms = expect_pairs(ms, 4)?;
    let (a, b, a2, b2) = (&ms[0], &ms[1], &ms[2], &ms[3]);
    let n = congruence_witness(a, b, a2, b2)?;
    let nt = n.transpose();
    let ok = |x: bool| if x { "OK" } else { "FAILED" };
    let check_a = nt.mul(a).mul(&n) == *a2;
    let check_b = nt.mul(b).mul(&n) == *b2;
    let mut out = String::from("N:\n");
    out.push_str(&format_matrix(&n));
    writeln!(out, "N^T A N = A': {}", ok(check_a)).unwrap();
    writeln!(out, "N^T B N = B': {}", ok(check_b)).unwrap();
    writeln!(out, "verification: {}", ok(check_a && check_b)).unwrap();
    if !(check_a && check_b) {
        return Err(Error::Internal(format!("witness failed verification\n{out}")));
    }
    Ok(out)
}

/// Pass/fail matrix: one row per family, one column per size.
fn verify_tables(max_size: usize, verbose: bool) -> Result<(String, bool)> {
    if max_size == 0 {
        return Err(Error::Precondition("--max-size must be at least 1".into()));
    }
    // family -> size -> (passed, total)
    let mut grid: BTreeMap<String, BTreeMap<usize, (usize, usize)>> = BTreeMap::new();
    let mut out = String::new();
    let mut all = true;
    for d in table_samples(max_size) {
        let check = check_table(&d)?;
        let passed = check.passed();
        all &= passed;
        let cell = grid.entry(d.family.to_string()).or_default().entry(d.n).or_default();
        cell.1 += 1;
        if passed {
            cell.0 += 1;
        }
        if verbose || !passed {
            let tag = if passed { "PASS" } else { "FAIL" };
            write!(out, "{tag} {d}").unwrap();
            if !passed {
                write!(out, ": predicted {:?}, computed {:?}", check.predicted, check.computed).unwrap();
            }
            out.push('\n');
        }
    }
    write!(out, "{:<9}", "family").unwrap();
    for n in 1..=max_size {
        write!(out, " {n:>3}").unwrap();
    }
    out.push('\n');
    for (family, row) in &grid {
        write!(out, "{family:<9}").unwrap();
        for n in 1..=max_size {
            let cell = match row.get(&n) {
                None => "-".to_string(),
                Some((p, t)) if p == t => "ok".to_string(),
                Some((p, t)) => format!("{}/{t}", t - p),
            };
            write!(out, " {cell:>3}").unwrap();
        }
        out.push('\n');
    }
    let total: usize = grid.values().flat_map(|r| r.values()).map(|c| c.1).sum();
    writeln!(out, "{} ({total} summands)", if all { "all tables reproduced" } else { "table mismatches found" }).unwrap();
    Ok((out, all))
}

fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Kronecker { file, witness: w } => {
            let out = match load(&read_input(&file)?)? {
                Loaded::Gaussian(ms) => kronecker(ms, w)?,
                Loaded::Tower(ms) => kronecker(ms, w)?,
            };
            Ok((out, true))
        }
        Command::Canon { relation, file, materialize, json } => {
            let out = match load(&read_input(&file)?)? {
                Loaded::Gaussian(ms) => canon(relation, ms, materialize, json)?,
                Loaded::Tower(ms) => canon(relation, ms, materialize, json)?,
            };
            Ok((out, true))
        }
        Command::Witness { file } => {
            let out = match load(&read_input(&file)?)? {
                Loaded::Gaussian(ms) => witness(ms)?,
                Loaded::Tower(ms) => witness(ms)?,
            };
            Ok((out, true))
        }
        Command::VerifyTables { max_size, verbose } => verify_tables(max_size, verbose),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.category().exit_code() as u8)
        }
    }
}
