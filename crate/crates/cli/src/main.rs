//! `newton`: Newton strata, central-leaf root sets and isocrystal slopes
//! from the command line.
//!
//! Exit status: 0 success, 2 usage, 3 consistency failure, 4 precision too
//! low, 5 leaf datum violates the Levi condition (`wν ≠ ν`), 6 leaf datum
//! violates anti-dominance, 1 i/o failure.

mod cache;
mod check;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use newton_core::central_leaf::{leaf_matrix, leaf_precision, make_leaf_datum, root_sets};
use newton_core::format;
use newton_core::kottwitz::enumerate_bgmu;
use newton_core::strata::strata_report;
use newton_core::witt::{kappa_of_matrix, newton_slopes, FrobeniusMatrix, GaloisRing, MatrixFile};
use newton_core::{Coweight, GroupSpec, Rational, RootDatum};

use cache::Cache;
use error::{usage, CliError};

#[derive(Parser)]
#[command(name = "newton", version, about = "Exact Newton-stratum combinatorics for unramified groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The poset B(G, mu): json (default) or dot.
    Poset(Opts),
    /// Strata table for B(G, mu): tsv (default) or json.
    Dims(Opts),
    /// Root sets R_mu, R_nu, R_mu_nu and R_C of a leaf datum (mu', w): json (default) or tsv.
    Rc(Opts),
    /// Slopes of F = A sigma, from --matrix or from a GL_n leaf datum.
    Slopes(Opts),
    /// Run the cross-module invariant suites for groups up to size --n (default 4).
    Check(Opts),
}

#[derive(Args, Default)]
struct Opts {
    /// Group name such as GL4, GSp4, U3, SO5; the size may come from --n.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Integral cocharacter, comma separated: 1,1,0,0.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Weyl element as a word in simple reflections, 1-based and comma
    /// separated (`2` is s_2; `1,2` is s_1 s_2). Empty means the identity.
    #[arg(long)]
    w: Option<String>,
    /// Matrix file (JSON with p, N, s, optional modulus, entries).
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long, env = "NEWTON_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    /// Witt-vector precision N (work modulo p^N).
    #[arg(long)]
    precision: Option<u32>,
    /// Residue degree s of F_{p^s}.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Tsv,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Tsv => "tsv",
            Format::Text => "text",
        }
    }
}

/// Rejects flags a subcommand does not read.
fn reject(o: &Opts, cmd: &str, allowed: &[&str]) -> Result<(), CliError> {
    let present = [
        ("group", o.group.is_some()),
        ("n", o.n.is_some()),
        ("mu", o.mu.is_some()),
        ("w", o.w.is_some()),
        ("matrix", o.matrix.is_some()),
        ("format", o.format.is_some()),
        ("p", o.p.is_some()),
        ("precision", o.precision.is_some()),
        ("degree", o.degree.is_some()),
    ];
    for (flag, set) in present {
        if set && !allowed.contains(&flag) {
            return Err(usage(format!("--{flag} does not apply to `{cmd}`")));
        }
    }
    Ok(())
}

fn parse_format(o: &Opts, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = match o.format.as_deref() {
        None => return Ok(default),
        Some("json") => Format::Json,
        Some("dot") => Format::Dot,
        Some("tsv") => Format::Tsv,
        Some(other) => return Err(usage(format!("unknown format {other:?}"))),
    };
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<&str> = allowed.iter().filter(|f| **f != Format::Text).map(|f| f.name()).collect();
        Err(usage(format!("format {} not available here; choose from {}", f.name(), names.join(", "))))
    }
}

fn parse_group(o: &Opts) -> Result<(GroupSpec, RootDatum), CliError> {
    let name = o.group.as_deref().ok_or_else(|| usage("--group is required"))?;
    let mut spec: GroupSpec = name.parse()?;
    match (spec.n, o.n) {
        (0, Some(n)) => spec.n = n,
        (0, None) => return Err(usage(format!("group {name:?} needs a size (e.g. GL4 or --n 4)"))),
        (a, Some(b)) if a != b => return Err(usage(format!("group {name:?} conflicts with --n {b}"))),
        _ => {}
    }
    let datum = spec.build()?;
    Ok((spec, datum))
}

fn parse_mu(o: &Opts, datum: &RootDatum) -> Result<Coweight, CliError> {
    let text = o.mu.as_deref().ok_or_else(|| usage("--mu is required"))?;
    let mu = Coweight::parse(text).ok_or_else(|| usage(format!("cannot parse --mu {text:?}")))?;
    if !mu.is_integral() {
        return Err(usage(format!("--mu {text:?} must be integral")));
    }
    if mu.len() != datum.rank() {
        return Err(usage(format!("--mu has {} entries, the group has rank {}", mu.len(), datum.rank())));
    }
    Ok(mu)
}

fn parse_word(o: &Opts, datum: &RootDatum) -> Result<Vec<usize>, CliError> {
    let text = o.w.as_deref().unwrap_or("").trim();
    if text.is_empty() || text == "e" || text == "id" {
        return Ok(Vec::new());
    }
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let i: usize = s.trim_start_matches('s').parse().map_err(|_| usage(format!("bad reflection {s:?} in --w")))?;
            if i == 0 || i > datum.num_simple() {
                return Err(usage(format!("reflection index {i} outside 1..={}", datum.num_simple())));
            }
            Ok(i - 1)
        })
        .collect()
}

fn cached(o: &Opts, parts: &[&str], compute: impl FnOnce() -> Result<String, CliError>) -> Result<Vec<u8>, CliError> {
    let Some(dir) = o.cache_dir.as_deref() else {
        return Ok(compute()?.into_bytes());
    };
    let cache = Cache::new(dir);
    let key = Cache::key(parts);
    if let Some(hit) = cache.get(&key) {
        return Ok(hit);
    }
    let out = compute()?.into_bytes();
    cache.put(&key, &out)?;
    Ok(out)
}

fn canonical_mu(mu: &Coweight) -> String {
    mu.to_strings().join(",")
}

fn cmd_poset(o: &Opts) -> Result<Vec<u8>, CliError> {
    reject(o, "poset", &["group", "n", "mu", "format"])?;
    let fmt = parse_format(o, Format::Json, &[Format::Json, Format::Dot])?;
    let (spec, datum) = parse_group(o)?;
    let mu = parse_mu(o, &datum)?;
    let (g, m) = (spec.to_string(), canonical_mu(&mu));
    cached(o, &["poset", &g, &m, fmt.name()], || {
        let poset = enumerate_bgmu(&datum, &mu)?;
        Ok(match fmt {
            Format::Dot => format::poset_dot(&poset),
            _ => format::poset_json(&poset),
        })
    })
}

fn cmd_dims(o: &Opts) -> Result<Vec<u8>, CliError> {
    reject(o, "dims", &["group", "n", "mu", "format"])?;
    let fmt = parse_format(o, Format::Tsv, &[Format::Tsv, Format::Json])?;
    let (spec, datum) = parse_group(o)?;
    let mu = parse_mu(o, &datum)?;
    let (g, m) = (spec.to_string(), canonical_mu(&mu));
    cached(o, &["dims", &g, &m, fmt.name()], || {
        let report = strata_report(&datum, &mu)?;
        Ok(match fmt {
            Format::Json => format::strata_json(&report),
            _ => format::strata_tsv(&report),
        })
    })
}

fn cmd_rc(o: &Opts) -> Result<Vec<u8>, CliError> {
    reject(o, "rc", &["group", "n", "mu", "w", "format"])?;
    let fmt = parse_format(o, Format::Json, &[Format::Json, Format::Tsv])?;
    let (spec, datum) = parse_group(o)?;
    let mu = parse_mu(o, &datum)?;
    let word = parse_word(o, &datum)?;
    let (g, m) = (spec.to_string(), canonical_mu(&mu));
    let w_key = word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    cached(o, &["rc", &g, &m, &w_key, fmt.name()], || {
        let w = datum.weyl_element(&word)?;
        let ld = make_leaf_datum(&datum, &mu, &w)?;
        let sets = root_sets(&ld);
        Ok(match fmt {
            Format::Tsv => format::root_sets_tsv(&ld, &sets),
            _ => format::root_sets_json(&ld, &sets),
        })
    })
}

/// Reads a matrix file, optionally truncating to a lower precision.
fn load_matrix(o: &Opts, path: &PathBuf) -> Result<FrobeniusMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut file: MatrixFile = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if o.p.is_some_and(|p| p != file.p) {
        return Err(usage(format!("--p disagrees with the file (p = {})", file.p)));
    }
    if o.degree.is_some_and(|s| s != file.s) {
        return Err(usage(format!("--degree disagrees with the file (s = {})", file.s)));
    }
    if let Some(n) = o.precision {
        if n > file.precision {
            return Err(usage(format!("the file only fixes entries modulo p^{}; --precision cannot exceed it", file.precision)));
        }
        let m = file.p.checked_pow(n).ok_or_else(|| usage("p^N does not fit in 64 bits"))?;
        file.precision = n;
        for c in file.modulus.iter_mut().chain(file.entries.iter_mut().flatten().flatten()) {
            *c %= m;
        }
    }
    Ok(FrobeniusMatrix::from_file(&file)?)
}

fn cmd_slopes(o: &Opts) -> Result<Vec<u8>, CliError> {
    let fmt = parse_format(o, Format::Text, &[Format::Text, Format::Json])?;
    let a = if let Some(path) = &o.matrix {
        reject(o, "slopes --matrix", &["matrix", "format", "p", "precision", "degree"])?;
        load_matrix(o, path)?
    } else {
        let (_, datum) = parse_group(o)?;
        let mu = parse_mu(o, &datum)?;
        let w = datum.weyl_element(&parse_word(o, &datum)?)?;
        let ld = make_leaf_datum(&datum, &mu, &w)?;
        let s = o.degree.unwrap_or(1);
        let n = o.precision.unwrap_or_else(|| leaf_precision(&ld, s as u32));
        let ring = GaloisRing::new(o.p.unwrap_or(3), n, s)?;
        leaf_matrix(&ld, &ring)?
    };
    let slopes: Vec<Rational> = newton_slopes(&a)?;
    Ok(match fmt {
        Format::Json => {
            let v = serde_json::json!({
                "schema": format::SCHEMA_VERSION,
                "p": a.ring().p(),
                "N": a.ring().precision(),
                "s": a.ring().degree(),
                "slopes": slopes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "val_det": kappa_of_matrix(&a)?,
            });
            serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
        }
        _ => format::slopes_text(&slopes),
    }
    .into_bytes())
}

fn cmd_check(o: &Opts) -> Result<Vec<u8>, CliError> {
    reject(o, "check", &["n"])?;
    let max_n = o.n.unwrap_or(4);
    if max_n == 0 || max_n > 6 {
        return Err(usage("--n for `check` must lie in 1..=6"));
    }
    let mut out = String::new();
    if check::run(max_n, &mut out) {
        Ok(out.into_bytes())
    } else {
        print!("{out}");
        Err(CliError::Consistency("some suites failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Poset(o) => cmd_poset(o),
        Command::Dims(o) => cmd_dims(o),
        Command::Rc(o) => cmd_rc(o),
        Command::Slopes(o) => cmd_slopes(o),
        Command::Check(o) => cmd_check(o),
    };
    match result {
        Ok(bytes) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&bytes).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("newton: {e}");
            e.exit_code()
        }
    }
}
