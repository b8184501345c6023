use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcensus_core::census::{self, DEFAULT_BUDGET};
use pcensus_core::groupfile::{Group, GroupFile};
use pcensus_core::verify::{self, Fault, Mode, Verdict, VerifyConfig, VerifyReport};
use pcensus_core::Error;

#[derive(Parser)]
#[command(name = "pcensus", version, about = "Exact commutator fiber censuses of small p-groups")]
struct Cli {
    /// Worker threads; output never depends on this.
    #[arg(long, global = true, env = "PCENSUS_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and write it as a JSON group file.
    Build {
        kind: BuildKind,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compute the coset-level fiber census of a group file.
    Census {
        group: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Enumerate all element pairs instead (pc and class3 files).
        #[arg(long)]
        bruteforce: bool,
        /// Largest |G|^2 accepted by --bruteforce.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run verification checks and print one JSON report per line.
    Verify {
        claim: Claim,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Number of generators for lemma3.1.
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Include wall time in reports.
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum)]
        fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Ito,
    Theorem1,
    Class3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Ito,
    #[value(name = "lemma3.1")]
    Lemma31,
    #[value(name = "lemma3.2")]
    Lemma32,
    Theorem1,
    Theorem2,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    ItoTensor,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) => 1,
        Error::Capacity(_) => 3,
        _ => 2,
    }
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Usage(format!("missing --{flag}")))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn build(kind: BuildKind, p: u32, r: Option<usize>, n: Option<usize>, out: Option<&PathBuf>) -> Result<(), Error> {
    let file = match kind {
        BuildKind::Ito => GroupFile::ito(p, require(r, "r")?)?,
        BuildKind::Theorem1 => GroupFile::theorem1(p, require(n, "n")?)?,
        BuildKind::Class3 => GroupFile::class3(p)?,
    };
    emit(out, &file.to_json()?)
}

fn census_cmd(path: &PathBuf, out: Option<&PathBuf>, bruteforce: bool, budget: u64) -> Result<(), Error> {
    let file = GroupFile::load(path)?;
    let c = if bruteforce {
        match &file.group {
            Group::Class2(g) => census::census_bruteforce(&g.to_pc()?, budget)?,
            Group::Class3(g) => census::census_bruteforce(g.pc(), budget)?,
            Group::Pc(g) => census::census_bruteforce(g, budget)?,
        }
    } else {
        file.group.census()?
    };
    let mut text = c.to_json(&file.group_id())?;
    text.push('\n');
    emit(out, &text)
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    claim: Claim,
    p: Option<u32>,
    r: Option<usize>,
    n: Option<usize>,
    gens: Option<usize>,
    mode: ModeArg,
    timing: bool,
    fault: Option<FaultArg>,
) -> Result<Vec<VerifyReport>, Error> {
    let cfg = VerifyConfig {
        restrict_p: None,
        timing,
        fault: fault.map(|FaultArg::ItoTensor| Fault::ItoTensor),
        ..VerifyConfig::default()
    };
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Witness => Mode::Witness,
    };
    Ok(match claim {
        Claim::Ito => vec![verify::verify_ito(p.unwrap_or(3), r.unwrap_or(1), &cfg)?],
        Claim::Lemma31 => {
            let (p, gens) = (p.unwrap_or(3), gens.unwrap_or(4));
            let patterns: Vec<Vec<u32>> = (2..=gens / 2).flat_map(|m| verify::nonzero_patterns(p, m)).collect();
            vec![verify::verify_lemma31(p, gens, &patterns, &cfg)?]
        }
        Claim::Lemma32 => {
            let p = p.unwrap_or(3);
            vec![verify::verify_lemma32(p, &verify::nonzero_patterns(p, 3), &cfg)?]
        }
        Claim::Theorem1 => vec![verify::verify_theorem1(p.unwrap_or(3), n.unwrap_or(2), mode, &cfg)?],
        Claim::Theorem2 => vec![verify::verify_theorem2(p.unwrap_or(5), &cfg)?],
        Claim::All => verify::verify_all(&VerifyConfig { restrict_p: p, ..cfg })?,
    })
}

fn run(cli: Cli) -> Result<bool, Error> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Build { kind, p, r, n, out } => build(kind, p, r, n, out.as_ref()).map(|_| true),
        Command::Census { group, out, bruteforce, budget } => census_cmd(&group, out.as_ref(), bruteforce, budget).map(|_| true),
        Command::Verify { claim, p, r, n, gens, mode, timing, fault } => {
            let reports = verify_cmd(claim, p, r, n, gens, mode, timing, fault)?;
            let mut stdout = std::io::stdout().lock();
            for rep in &reports {
                writeln!(stdout, "{}", rep.to_json()?)?;
            }
            for rep in reports.iter().filter(|r| r.verdict == Verdict::Fail) {
                eprintln!("FAIL {} {:?}: {}", rep.claim, rep.params, rep.failures().join(", "));
            }
            Ok(reports.iter().all(|r| r.verdict != Verdict::Fail))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
