//! `boxgap` command line: `verify`, `count`, `boxdim`, `render`,
//! `constants` and `report`.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 budget or
//! feasibility error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::boxdim::{self, column_count_brute, column_count_closed, paper_scales, scale_records};
use crate::combinatorics::{self, brute, ln, CountTable, Family};
use crate::error::{Error, Result};
use crate::format::sig10;
use crate::geometry;
use crate::shift_model::presentation::{End, Start};
use crate::shift_model::{forced_distance, Budget, GridConfig, Presentation, Word};

#[derive(Debug, Parser)]
#[command(name = "boxgap", about = "Exact box-counting estimates for a coded-subshift carpet")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct ConfigArgs {
    /// Built-in configuration: paper, tiny or small.
    #[arg(long, default_value = "paper", conflicts_with = "config")]
    preset: String,
    /// JSON file `{"m": .., "n": .., "p": ..}`.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scales {
    All,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Symbolic,
    Grid,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the brute-force oracle suite up to a word length.
    Verify {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// Exact counts of one word family as CSV `N,value,log_value,rate`.
    Count {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value = "sigma")]
        family: String,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Covering estimates as CSV `k,l,n_hat,ratio`.
    Boxdim {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 13)]
        kmax: u64,
        #[arg(long, value_enum, default_value_t = Scales::All)]
        scales: Scales,
        /// Largest N of the scale families when `--scales paper`.
        #[arg(long, default_value_t = 2)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Oracle::Symbolic)]
        oracle: Oracle,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rasterise the depth-d cylinders to a binary PBM.
    Render {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 864)]
        width: usize,
        #[arg(long, default_value_t = 864)]
        height: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the two asymptotic dimension constants.
    Constants {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Markdown gap report.
    Report {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Resolved settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub budget: Budget,
    pub verbosity: u8,
    /// Flags that reproduce the config on the command line.
    pub source: String,
}

impl RunConfig {
    fn resolve(args: &ConfigArgs) -> Result<Self> {
        let (grid, source) = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                (GridConfig::from_json(&text)?, format!("--config {}", path.display()))
            }
            None => (GridConfig::preset(&args.preset)?, format!("--preset {}", args.preset)),
        };
        Ok(RunConfig {
            grid,
            budget: Budget::from_env(),
            verbosity: args.verbose,
            source,
        })
    }
}

/// Entry point for the binary; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => out.write_all(bytes).map_err(|e| Error::io("<stdout>", e)),
    }
}

fn csv_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Verify { cfg, nmax } => {
            let rc = RunConfig::resolve(&cfg)?;
            verify(&rc, nmax, out)
        }
        Command::Count {
            cfg,
            family,
            nmax,
            out: path,
        } => {
            let rc = RunConfig::resolve(&cfg)?;
            let family = Family::parse(&family)?;
            let table = CountTable::build(family, nmax, &rc.grid, &rc.budget)?;
            let rows = table
                .values
                .iter()
                .enumerate()
                .map(|(n, v)| {
                    let log = ln(v);
                    vec![
                        n.to_string(),
                        v.to_string(),
                        log.map(sig10).unwrap_or_default(),
                        match (log, n) {
                            (Some(x), n) if n > 0 => sig10(x / n as f64),
                            _ => String::new(),
                        },
                    ]
                })
                .collect();
            emit(out, path.as_deref(), &csv_bytes(&["N", "value", "log_value", "rate"], rows))
        }
        Command::Boxdim {
            cfg,
            kmax,
            scales,
            nmax,
            oracle,
            out: path,
        } => {
            let rc = RunConfig::resolve(&cfg)?;
            let ks: Vec<u64> = match scales {
                Scales::All => (1..=kmax).collect(),
                Scales::Paper => {
                    let (high, low) = paper_scales(nmax, &rc.grid);
                    let mut ks: Vec<u64> = high.into_iter().chain(low).collect();
                    ks.sort_unstable();
                    ks.dedup();
                    ks
                }
            };
            let bytes = match oracle {
                Oracle::Symbolic => {
                    let records = scale_records(&ks, &rc.grid, &rc.budget)?;
                    csv_bytes(&geometry::SCALE_CSV_HEADER, records.iter().map(geometry::scale_row).collect())
                }
                Oracle::Grid => {
                    let mut rows = Vec::new();
                    for &k in &ks {
                        let count = geometry::grid_box_count(k as usize, &rc.grid, &rc.budget)?;
                        let ratio = ln(&count).unwrap_or(0.0) / (k as f64 * (rc.grid.n as f64).ln());
                        rows.push(vec![
                            k.to_string(),
                            boxdim::l_of_k(k, &rc.grid).to_string(),
                            count.to_string(),
                            sig10(ratio),
                        ]);
                        if rc.verbosity > 0 {
                            let _ = writeln!(err, "grid k = {k}: {count}");
                        }
                    }
                    csv_bytes(&["k", "l", "grid_count", "ratio"], rows)
                }
            };
            emit(out, path.as_deref(), &bytes)
        }
        Command::Render {
            cfg,
            depth,
            width,
            height,
            out: path,
        } => {
            let rc = RunConfig::resolve(&cfg)?;
            let raster = geometry::rasterize(depth, width, height, &rc.grid, &rc.budget)?;
            geometry::write_pnm(&raster, &path)
        }
        Command::Constants { cfg } => {
            let rc = RunConfig::resolve(&cfg)?;
            let (high, low) = boxdim::dimension_constants(&rc.grid)?;
            let text = format!("D_high = {}\nD_low = {}\n", sig10(high), sig10(low));
            emit(out, None, text.as_bytes())
        }
        Command::Report {
            cfg,
            nmax,
            kmax,
            out: path,
        } => {
            let rc = RunConfig::resolve(&cfg)?;
            let report = boxdim::gap_report(nmax, kmax, &rc.grid, &rc.budget)?;
            emit(out, path.as_deref(), report.to_markdown().as_bytes())
        }
    }
}

fn fail(rc: &RunConfig, nmax: usize, what: String) -> Error {
    Error::Domain(format!(
        "oracle violation: {what}\nreproduce: boxgap verify {} --nmax {nmax}",
        rc.source
    ))
}

/// Checks every DP and closed form against the unrolled-graph oracle for
/// word lengths up to `nmax`, stopping at the first violation.
fn verify(rc: &RunConfig, nmax: usize, out: &mut dyn Write) -> Result<()> {
    let cfg = &rc.grid;
    let budget = &rc.budget;
    let mut say = |line: String| {
        let _ = writeln!(out, "{line}");
    };
    let counter = combinatorics::WordCounter::with_budget(nmax, cfg, budget)?;
    let loops = combinatorics::loops_table(nmax, cfg);

    for n in 0..=nmax {
        crate::shift_model::presentation::check_budget(&counter.count_sigma(n), budget)?;
        let pres = Presentation::new(cfg, n);
        let mut hist = std::collections::BTreeMap::<u64, BigUint>::new();
        let mut mismatch = None;
        pres.for_each_word(n, Start::Anywhere, End::Anywhere, |w, set| {
            let brute = pres.forced(set).expect("non-empty set");
            *hist.entry(brute).or_default() += 1u32;
            if mismatch.is_none() {
                let word = Word::new(w.to_vec());
                if forced_distance(&word, cfg).ok() != Some(brute) {
                    mismatch = Some(word);
                }
            }
        });
        if let Some(word) = mismatch {
            return Err(fail(rc, nmax, format!("forced distance of {word}")));
        }
        if hist != counter.forced_histogram(n) {
            return Err(fail(rc, nmax, format!("forced histogram at length {n}")));
        }
        let brute_loops = pres.count_words(n, Start::Hub, End::Hub);
        let brute_ends = pres.count_words(n, Start::Anywhere, End::Hub);
        if loops[n] != brute_loops.into() {
            return Err(fail(rc, nmax, format!("#G_{n}")));
        }
        if *counter.ends_at_hub(n) != brute_ends.into() {
            return Err(fail(rc, nmax, format!("#I_{n}")));
        }
        say(format!(
            "ok  length {n:>2}: #Σ = {}, #G = {}, #I = {}",
            counter.count_sigma(n),
            loops[n],
            counter.ends_at_hub(n)
        ));
    }

    // column counts on short prefixes with a few extra symbols
    let kmax = nmax.min(4);
    for k in 0..=kmax {
        let pres = Presentation::new(cfg, k);
        let mut words = Vec::new();
        pres.for_each_word(k, Start::Anywhere, End::Anywhere, |w, _| words.push(Word::new(w.to_vec())));
        for l in k..=k + 6 {
            for w in &words {
                let f = forced_distance(w, cfg)?;
                let closed = column_count_closed(f, k as u64, l as u64, cfg)?;
                if column_count_brute(w, l, cfg, budget)? != closed {
                    return Err(fail(rc, nmax, format!("M({w}, {l})")));
                }
            }
        }
        say(format!("ok  column counts for k = {k}, l <= {}", k + 6));
    }

    for c in 0..=30u64 {
        let want = BigUint::from(brute::compositions(c, cfg.p as u64));
        if combinatorics::ordered_power_sums(c as usize, cfg) != want {
            return Err(fail(rc, nmax, format!("S_{c}")));
        }
    }
    say("ok  ordered power sums S_c, c <= 30".into());
    for c in 0..=200u64 {
        let sum: BigUint = brute::power_partitions(c, cfg.p as u64)
            .iter()
            .map(|m| combinatorics::reorder_count(m).expect("positive multiplicities"))
            .sum();
        if sum != combinatorics::ordered_power_sums(c as usize, cfg) {
            return Err(fail(rc, nmax, format!("reorder identity at c = {c}")));
        }
    }
    say("ok  reorder identity, c <= 200".into());
    Ok(())
}
