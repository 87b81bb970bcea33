use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qci_core::io::{self, format_identity, parse_word, Entry, Format};
use qci_core::miner::count_table;
use qci_core::{filter, mine, FilterConfig, RawIdentitySet, Simplifier, DEFAULT_TOLERANCE};

/// Mine, filter, verify and apply single-qubit gate identities.
#[derive(Parser)]
#[command(name = "qci", version)]
struct Cli {
    /// key=value file supplying defaults for any long option
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate all words up to a length and record products equal to a gate
    Mine {
        #[arg(long)]
        max_len: Option<usize>,
        /// Match tolerance; falls back to QCI_TOLERANCE, then 1e-9
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; defaults to the extension of --out, else text
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
    /// Reduce a mined file to canonical identities
    Filter {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        drop_rotations: Option<Switch>,
        #[arg(long, value_enum)]
        group: Option<Switch>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
    /// Check every identity in a file with exact arithmetic
    Verify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Cumulative identity counts by length
    Counts {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Shorten a gate word such as "H X H"
    Simplify {
        word: String,
        #[arg(long)]
        trace: bool,
        /// Identity file to use instead of the built-in list
        #[arg(long)]
        db: Option<PathBuf>,
    },
}

/// Settings read from `--config`.
struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Config> {
        let mut map = HashMap::new();
        let Some(path) = path else { return Ok(Config(map)) };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value", path.display(), n + 1);
            };
            map.insert(k.trim().replace('_', "-"), v.trim().to_string());
        }
        Ok(Config(map))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| anyhow::anyhow!("config {key}: {e}")),
        }
    }

    fn switch(&self, key: &str) -> Result<Option<bool>> {
        match self.0.get(key).map(String::as_str) {
            None => Ok(None),
            Some("on" | "true" | "yes") => Ok(Some(true)),
            Some("off" | "false" | "no") => Ok(Some(false)),
            Some(v) => bail!("config {key}: expected on or off, got {v}"),
        }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.0.get(key).map(PathBuf::from)
    }
}

fn tolerance(flag: Option<f64>, cfg: &Config) -> Result<f64> {
    if let Some(t) = flag {
        return Ok(t);
    }
    if let Some(t) = cfg.get("tolerance")? {
        return Ok(t);
    }
    match std::env::var("QCI_TOLERANCE") {
        Ok(v) => v.trim().parse().with_context(|| format!("QCI_TOLERANCE={v}")),
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn read_entries(path: &Path) -> Result<Vec<Entry>> {
    let data = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::import(&data, Format::from_path(path)).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(bytes).context("writing output"),
    }
}

fn out_format(flag: Option<OutFormat>, cfg: &Config, out: Option<&Path>) -> Result<Format> {
    if let Some(f) = flag {
        return Ok(f.into());
    }
    if let Some(f) = cfg.get::<Format>("format")? {
        return Ok(f);
    }
    Ok(out.map(Format::from_path).unwrap_or(Format::Text))
}

fn render_counts(cumulative: &[usize]) -> String {
    let heads: Vec<String> = (1..=cumulative.len()).map(|n| format!("<={n}")).collect();
    let vals: Vec<String> = cumulative.iter().map(usize::to_string).collect();
    let w: Vec<usize> = heads.iter().zip(&vals).map(|(h, v)| h.len().max(v.len())).collect();
    let row = |cells: &[String]| cells.iter().zip(&w).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
    format!("length      {}\nidentities  {}\n", row(&heads), row(&vals))
}

fn required(flag: Option<PathBuf>, cfg: &Config, key: &str) -> Result<PathBuf> {
    flag.or_else(|| cfg.path(key)).with_context(|| format!("--{key} is required"))
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Mine { max_len, tolerance: tol, out, format } => {
            let max_len = max_len.or(cfg.get("max-len")?).context("--max-len is required")?;
            let eps = tolerance(tol, &cfg)?;
            let out = out.or_else(|| cfg.path("out"));
            let format = out_format(format, &cfg, out.as_deref())?;
            let raw = mine(max_len, eps)?;
            write_out(&io::export(&io::raw_entries(&raw), format)?, out.as_deref())?;
            eprint!("{}", render_counts(&count_table(&raw.counts_by_length())));
            if raw.false_positives > 0 {
                eprintln!("discarded {} float matches that failed exact verification", raw.false_positives);
            }
            Ok(true)
        }
        Cmd::Filter { input, drop_rotations, group, out, format } => {
            let input = required(input, &cfg, "in")?;
            let drop = match drop_rotations {
                Some(s) => matches!(s, Switch::On),
                None => cfg.switch("drop-rotations")?.unwrap_or(true),
            };
            let grouping = match group {
                Some(s) => matches!(s, Switch::On),
                None => cfg.switch("group")?.unwrap_or(true),
            };
            let out = out.or_else(|| cfg.path("out"));
            let format = out_format(format, &cfg, out.as_deref())?;
            let entries = read_entries(&input)?;
            if let Some(e) = entries.iter().find(|e| e.identity.grouped || e.identity.rhs.sign != qci_core::Sign::Plus) {
                bail!("{} is not a mined identity", format_identity(&e.identity));
            }
            let raw = RawIdentitySet::from_identities(entries.into_iter().map(|e| e.identity).collect());
            let set = filter(&raw, FilterConfig { drop_rotations: drop, grouping })?;
            write_out(&io::export(&io::filtered_entries(&set), format)?, out.as_deref())?;
            eprint!("{}", render_counts(&set.count_table()));
            Ok(true)
        }
        Cmd::Verify { input } => {
            let input = required(input, &cfg, "in")?;
            let entries = read_entries(&input)?;
            let mut stdout = std::io::stdout().lock();
            let mut passed = 0;
            for e in &entries {
                let ok = e.identity.verify();
                passed += ok as usize;
                writeln!(stdout, "{}  {}", if ok { "PASS" } else { "FAIL" }, format_identity(&e.identity))?;
            }
            writeln!(stdout, "{passed}/{} identities verified", entries.len())?;
            Ok(passed == entries.len())
        }
        Cmd::Counts { input } => {
            let input = required(input, &cfg, "in")?;
            let entries = read_entries(&input)?;
            let max = entries.iter().map(|e| e.origin_len).max().unwrap_or(0);
            let mut by_len = vec![0; max + 1];
            for e in &entries {
                by_len[e.origin_len] += 1;
            }
            print!("{}", render_counts(&count_table(&by_len)));
            Ok(true)
        }
        Cmd::Simplify { word, trace, db } => {
            let w = parse_word(&word)?;
            let db = db.or_else(|| cfg.path("db"));
            let owned;
            let simplifier = match db {
                Some(p) => {
                    let entries = read_entries(&p)?;
                    owned = Simplifier::new(entries.iter().map(|e| &e.identity));
                    &owned
                }
                None => qci_core::default_simplifier(),
            };
            let (result, t) = simplifier.simplify(&w);
            if trace || cfg.switch("trace")?.unwrap_or(false) {
                print!("{t}");
            }
            println!("{result}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("qci: {e:#}");
            ExitCode::from(2)
        }
    }
}
