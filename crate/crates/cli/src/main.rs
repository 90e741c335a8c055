//! `permcode`: enumerate, canonicalize and compare permutation codes.
//!
//! Exit status: 0 success or affirmative verdict, 1 negative verdict,
//! 2 usage or input error, 3 resource cap hit, 4 internal failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use permcode::census::{summary_csv, write_aborted, write_census, TOOL_VERSION};
use permcode::invariants::{cycle_index, distance_enumerator, is_balanced, occurrence_matrix, quotient_pair};
use permcode::isometry::{are_isometric_bruteforce, BRUTEFORCE_ISOMETRY_CAP};
use permcode::search::{
    canonical_augmentation, enumerate_balanced, genbylist, maximum_code, orbit_clique_search, size_slice, Algorithm,
    Mode, OrbitAction,
};
use permcode::{
    canonical_form_with, find_isometry, Code, EnumerationResult, Equivalence, Error, Permutation, SearchConfig,
};

#[derive(Parser)]
#[command(name = "permcode", version, about = "Permutation codes up to isometry")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for census files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Abort after this many search nodes.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long, global = true)]
    max_seconds: Option<f64>,
    /// Ignore the inversion: classify up to row, column and symbol
    /// permutations only.
    #[arg(long, global = true)]
    no_inversion: bool,
    /// Suppress progress lines on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    List,
    Canaug,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActionArg {
    Left,
    Conjugation,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all (n,d)-codes up to isometry.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Alg::Canaug)]
        alg: Alg,
        /// Write only maximal classes (default for canaug).
        #[arg(long, conflicts_with = "all")]
        maximal_only: bool,
        /// Write every class (default for list).
        #[arg(long)]
        all: bool,
    },
    /// Classify r-balanced (n,d)-codes.
    Balanced {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        r: usize,
    },
    /// Decide whether two code files are isometric.
    Isometric {
        first: PathBuf,
        second: PathBuf,
        /// Cross-check the verdict by brute force over the whole group.
        #[arg(long)]
        oracle: bool,
    },
    /// Report the cheap invariants of a code file.
    Invariants { file: PathBuf },
    /// Canonical form and certificate of a code file.
    Canon { file: PathBuf },
    /// Largest size of an (n,d)-code.
    Mu {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
    },
    /// Largest union of group orbits forming an (n,d)-code.
    OrbitSearch {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        /// Generator in image notation, e.g. "2 3 4 5 1"; repeat or
        /// separate with ';' for several.
        #[arg(long, required = true)]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value_t = ActionArg::Left)]
        mode: ActionArg,
    },
    /// Classes of (6,5)-codes of size 18.
    Kloeve65,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => Failure::Cap(e.to_string()),
            Error::Internal(_) | Error::Structural(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a command decided.
enum Verdict {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("aborted: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(4)
        }
    }
}

fn equivalence(c: &Common) -> Equivalence {
    if c.no_inversion {
        Equivalence::NoInversion
    } else {
        Equivalence::Full
    }
}

fn search_config(c: &Common) -> SearchConfig {
    SearchConfig {
        jobs: c.jobs,
        max_nodes: c.max_nodes,
        max_seconds: c.max_seconds,
        equivalence: equivalence(c),
        progress: !c.quiet,
    }
}

fn read_code(path: &Path) -> Result<Code, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Code::from_text(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Verdict, Failure> {
    let c = &cli.common;
    match &cli.command {
        Command::Enumerate { n, d, alg, maximal_only, all } => {
            let algorithm = match alg {
                Alg::List => Algorithm::List,
                Alg::Canaug => Algorithm::CanonicalAugmentation,
            };
            let maximal_only = *maximal_only || (*alg == Alg::Canaug && !*all);
            let result = census_run(c, *n, *d, Mode::Census { algorithm }, |cfg| match alg {
                Alg::List => genbylist(*n, *d, cfg),
                Alg::Canaug => canonical_augmentation(*n, *d, cfg),
            })?;
            report_census(c, &result, maximal_only)
        }
        Command::Balanced { n, d, r } => {
            let result = census_run(c, *n, *d, Mode::Balanced { r: *r }, |cfg| enumerate_balanced(*n, *d, *r, cfg))?;
            report_census(c, &result, false)
        }
        Command::Kloeve65 => {
            let result = census_run(c, 6, 5, Mode::SizeSlice { size: 18 }, |cfg| size_slice(6, 5, 18, cfg))?;
            report_census(c, &result, false)
        }
        Command::Isometric { first, second, oracle } => isometric(c, first, second, *oracle),
        Command::Invariants { file } => invariants(c, &read_code(file)?),
        Command::Canon { file } => canon(c, &read_code(file)?),
        Command::Mu { n, d } => {
            let code = maximum_code(*n, *d)?;
            match c.format {
                Format::Json => print_json(&json!({ "n": n, "d": d, "mu": code.len(), "code": code_json(&code) })),
                Format::Csv => print!("n,d,mu\n{n},{d},{}\n", code.len()),
                Format::Text => println!("{}", code.len()),
            }
            Ok(Verdict::Yes)
        }
        Command::OrbitSearch { n, d, gens, mode } => orbit_search(c, *n, *d, gens, *mode),
    }
}

fn census_run(
    c: &Common,
    n: usize,
    d: usize,
    mode: Mode,
    f: impl FnOnce(&SearchConfig) -> permcode::Result<EnumerationResult>,
) -> Result<EnumerationResult, Failure> {
    match f(&search_config(c)) {
        Ok(r) => Ok(r),
        Err(e) => {
            if let (Error::ResourceCap { .. }, Some(dir)) = (&e, &c.out) {
                write_aborted(dir, n, d, mode, equivalence(c), &e)?;
            }
            Err(e.into())
        }
    }
}

fn report_census(c: &Common, result: &EnumerationResult, maximal_only: bool) -> Result<Verdict, Failure> {
    if let Some(dir) = &c.out {
        write_census(dir, result, maximal_only)?;
    }
    match c.format {
        Format::Csv => print!("{}", summary_csv(result, maximal_only)),
        Format::Json => print_json(&json!({
            "tool_version": TOOL_VERSION,
            "n": result.degree,
            "d": result.min_distance,
            "mode": result.mode,
            "equivalence": result.equivalence,
            "classes": result.total(),
            "maximal": result.maximal_count(),
            "counts_by_size": result.counts_by_size(),
            "maximal_counts_by_size": result.maximal_counts_by_size(),
            "nodes": result.nodes,
            "wall_time_seconds": result.wall_time.as_secs_f64(),
        })),
        Format::Text => {
            let mut out = format!("classes: {}, maximal: {}\n", result.total(), result.maximal_count());
            out.push_str("size  classes  maximal\n");
            let maximal = result.maximal_counts_by_size();
            for (size, count) in result.counts_by_size() {
                let _ = writeln!(out, "{size:>4}  {count:>7}  {:>7}", maximal.get(&size).copied().unwrap_or(0));
            }
            print!("{out}");
        }
    }
    Ok(Verdict::Yes)
}

fn isometric(c: &Common, first: &Path, second: &Path, oracle: bool) -> Result<Verdict, Failure> {
    let (a, b) = (read_code(first)?, read_code(second)?);
    if a.degree() != b.degree() || a.min_distance() != b.min_distance() {
        return Err(Failure::Usage(format!(
            "parameters differ: (n={}, d={}) vs (n={}, d={})",
            a.degree(),
            a.min_distance(),
            b.degree(),
            b.min_distance()
        )));
    }
    let witness = find_isometry(&a, &b, equivalence(c))?;
    if oracle {
        if c.no_inversion {
            return Err(Failure::Usage("--oracle checks the full group only".into()));
        }
        if a.degree() > BRUTEFORCE_ISOMETRY_CAP {
            return Err(Failure::Usage(format!("--oracle needs n <= {BRUTEFORCE_ISOMETRY_CAP}")));
        }
        let brute = are_isometric_bruteforce(&a, &b)?;
        if brute.is_some() != witness.is_some() {
            return Err(Failure::Internal("certificate verdict disagrees with brute force".into()));
        }
    }
    match c.format {
        Format::Json => print_json(&json!({
            "isometric": witness.is_some(),
            "witness": witness.map(|t| t.to_string()),
            "oracle_checked": oracle,
        })),
        Format::Csv => {
            print!("isometric,witness\n{},{}\n", witness.is_some(), witness.map(|t| t.to_string()).unwrap_or_default())
        }
        Format::Text => match witness {
            Some(t) => println!("isometric: {t}"),
            None => println!("not isometric"),
        },
    }
    Ok(if witness.is_some() { Verdict::Yes } else { Verdict::No })
}

fn invariants(c: &Common, code: &Code) -> Result<Verdict, Failure> {
    let qp = quotient_pair(code);
    let ci = cycle_index(code);
    let de = distance_enumerator(code);
    let occ = occurrence_matrix(code);
    let n = code.degree();
    let balanced = (code.len().is_multiple_of(n) && is_balanced(code, code.len() / n)).then(|| code.len() / n);
    match c.format {
        Format::Json => print_json(&json!({
            "n": n,
            "d": code.min_distance(),
            "size": code.len(),
            "delta": qp.delta.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "sigma": qp.sigma.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "cycle_index": ci.nonzero(),
            "distance_enumerator": de,
            "occurrences": (0..n).map(|i| (0..n).map(|j| occ.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "occurrence_multiset": occ.multiset(),
            "balanced_r": balanced,
        })),
        Format::Csv => {
            let mut out = String::from("cycle_type,pairs\n");
            for (t, k) in ci.nonzero() {
                let _ = writeln!(out, "{t},{k}");
            }
            print!("{out}");
        }
        Format::Text => {
            let mut out = format!("n={} d={} s={}\n", n, code.min_distance(), code.len());
            let _ = writeln!(out, "|delta|={} |sigma|={}", qp.delta.len(), qp.sigma.len());
            let terms: Vec<String> = ci.nonzero().into_iter().map(|(t, k)| format!("{k}*[{t}]")).collect();
            let _ = writeln!(out, "cycle index: ({})/{}", terms.join(" + "), ci.code_size);
            let _ = writeln!(out, "distance enumerator: {de:?}");
            out.push_str("occurrences:\n");
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| occ.get(i, j).to_string()).collect();
                let _ = writeln!(out, "  {}", row.join(" "));
            }
            match balanced {
                Some(r) => {
                    let _ = writeln!(out, "balanced: r={r}");
                }
                None => out.push_str("balanced: no\n"),
            }
            print!("{out}");
        }
    }
    Ok(Verdict::Yes)
}

fn canon(c: &Common, code: &Code) -> Result<Verdict, Failure> {
    let form = canonical_form_with(code, equivalence(c));
    let rep = form.canonical_code(code);
    match c.format {
        Format::Json => print_json(&json!({
            "certificate": form.certificate.to_hex(),
            "sha256": form.certificate.digest(),
            "stabilizer_order": form.group_size.to_string(),
            "equivalence": form.equivalence,
            "canonical_code": code_json(&rep),
        })),
        Format::Csv => print!("certificate,stabilizer_order\n{},{}\n", form.certificate, form.group_size),
        Format::Text => {
            println!("certificate: {}", form.certificate);
            println!("sha256: {}", form.certificate.digest());
            println!("stabilizer order: {}", form.group_size);
            print!("{}", rep.to_text());
        }
    }
    Ok(Verdict::Yes)
}

/// Parses generators given as image lists; parentheses are ignored and
/// `;` separates several generators inside one argument.
fn parse_generators(n: usize, args: &[String]) -> Result<Vec<Permutation>, Failure> {
    let mut gens = Vec::new();
    for arg in args {
        for part in arg.split(';').map(|p| p.replace(['(', ')'], " ")).filter(|p| !p.trim().is_empty()) {
            let g: Permutation =
                part.trim().parse().map_err(|e: Error| Failure::Usage(format!("generator `{part}`: {e}")))?;
            if g.degree() != n {
                return Err(Failure::Usage(format!(
                    "generator `{}` has degree {}, expected {n}",
                    part.trim(),
                    g.degree()
                )));
            }
            gens.push(g);
        }
    }
    Ok(gens)
}

fn orbit_search(c: &Common, n: usize, d: usize, gens: &[String], mode: ActionArg) -> Result<Verdict, Failure> {
    let generators = parse_generators(n, gens)?;
    let action = match mode {
        ActionArg::Left => OrbitAction::Left,
        ActionArg::Conjugation => OrbitAction::Conjugation,
    };
    let r = orbit_clique_search(n, d, &generators, action, c.max_nodes)?;
    let size = r.code.as_ref().map_or(0, Code::len);
    match c.format {
        Format::Json => print_json(&json!({
            "n": n,
            "d": d,
            "mode": action,
            "orbits": r.orbit_count,
            "admissible": r.admissible_count,
            "edges": r.edge_count,
            "chosen": r.chosen,
            "size": size,
            "optimal": r.optimal,
            "code": r.code.as_ref().map(code_json),
        })),
        Format::Csv => print!(
            "orbits,admissible,edges,size,optimal\n{},{},{},{size},{}\n",
            r.orbit_count, r.admissible_count, r.edge_count, r.optimal
        ),
        Format::Text => {
            println!("orbits: {}, admissible: {}, edges: {}", r.orbit_count, r.admissible_count, r.edge_count);
            println!("size: {size}{}", if r.optimal { "" } else { " (node cap hit, not proven optimal)" });
            if let Some(code) = &r.code {
                print!("{}", code.to_text());
            }
        }
    }
    Ok(if r.code.is_some() { Verdict::Yes } else { Verdict::No })
}

fn code_json(code: &Code) -> Value {
    json!({
        "n": code.degree(),
        "d": code.min_distance(),
        "elements": code.elements().iter().map(|p| p.images()).collect::<Vec<_>>(),
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values always serialize"));
}
