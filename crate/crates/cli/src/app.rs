use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use morita_core::bimodules::{dual_bimodule, random_bimodule, regular_bimodule, BimoduleRef};
use morita_core::homology::{vanishing_suite, DEFAULT_SIZE_LIMIT};
use morita_core::structures::{brandt, semigroup_algebra, FiniteGroup, StructureError};

use crate::campaign::{run_campaign, Campaign, Check};
use crate::checks::{RANDOM_MODULE_MAX_DIM, RANDOM_MODULE_SEED};
use crate::config::{self, parse_usize_list, split_list, ConfigFile};
use crate::report::{Report, Status};
use crate::{exit, groups, CliError};

#[derive(Parser, Debug)]
#[command(name = "morita", version, about = "Exact certificates for Brandt semigroup algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Default)]
struct CampaignArgs {
    /// Index set sizes |I|, comma separated.
    #[arg(long = "i")]
    i: Option<String>,
    /// Index set sizes |J|, comma separated.
    #[arg(long = "j")]
    j: Option<String>,
    /// Groups: built-in names, cached names or Cayley files, comma separated.
    #[arg(long)]
    group: Option<String>,
    /// Bar complex degree bound for homology checks.
    #[arg(long = "n")]
    n: Option<usize>,
    /// Largest allowed boundary matrix size, in estimated entries.
    #[arg(long)]
    size_limit: Option<u64>,
    /// Flat TOML file with the same keys as the long flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the structured JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect built-in groups or load a Cayley table file.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Run a verification campaign.
    Verify {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Checks to run, comma separated.
        #[arg(long)]
        check: Option<String>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Exit 3 when a check is skipped for size.
        #[arg(long)]
        strict: bool,
    },
    /// Betti numbers of H_n(A, E) and H^n(A, E*) for A = ℓ¹(B(I, G)).
    Homology {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// regular, dual, random[:SEED] or battery.
        #[arg(long, default_value = "regular")]
        coefficients: String,
    },
    /// Re-render a stored structured report.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Describe a built-in group.
    Builtin { name: String },
    /// Parse a Cayley file and cache it under a name (the file stem by default).
    Load {
        path: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Runs the command line and returns the process exit code.
pub fn run(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::PASS };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Group { action } => cmd_group(action, out),
        Command::Verify {
            campaign,
            check,
            jobs,
            strict,
        } => cmd_verify(&campaign, check.as_deref(), jobs, strict, out),
        Command::Homology { campaign, coefficients } => cmd_homology(&campaign, &coefficients, out),
        Command::Report { path, format } => cmd_report(&path, format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit::CONFIG
        }
    }
}

fn cmd_group(action: GroupAction, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = match action {
        GroupAction::Builtin { name } => groups::builtin(&name).ok_or_else(|| {
            CliError::Config(format!(
                "no built-in group {name:?}; built-ins are {}",
                groups::BUILTIN_NAMES.join(", ")
            ))
        })?,
        GroupAction::Load { path, name } => {
            let name = name
                .or_else(|| path.file_stem().and_then(|s| s.to_str()).map(String::from))
                .ok_or_else(|| CliError::Config("cannot derive a group name; pass --name".into()))?;
            let cache = groups::cache_dir();
            let g = groups::load_and_cache(&path, &name, &cache)?;
            let _ = writeln!(out, "cached as {name} in {}", cache.display());
            g
        }
    };
    let _ = writeln!(out, "{}", groups::describe(&g));
    Ok(exit::PASS)
}

struct Resolved {
    i: Vec<usize>,
    j: Vec<usize>,
    groups: Vec<FiniteGroup>,
    n: usize,
    size_limit: u64,
    out: Option<PathBuf>,
    file: ConfigFile,
}

fn resolve(args: &CampaignArgs, default_n: usize) -> Result<Resolved, CliError> {
    let file = match &args.config {
        Some(p) => config::load(p)?,
        None => ConfigFile::default(),
    };
    let i = match (&args.i, &file.i) {
        (Some(t), _) => parse_usize_list(t, "i")?,
        (None, Some(v)) => v.to_vec("i")?,
        (None, None) => vec![1],
    };
    let j = match (&args.j, &file.j) {
        (Some(t), _) => parse_usize_list(t, "j")?,
        (None, Some(v)) => v.to_vec("j")?,
        (None, None) => vec![1],
    };
    if i.iter().chain(&j).any(|&x| x == 0) {
        return Err(CliError::Config(StructureError::EmptyIndexSet.to_string()));
    }
    let group_specs = match (&args.group, &file.group) {
        (Some(t), _) => split_list(t),
        (None, Some(v)) => v.to_vec(),
        (None, None) => vec!["C1".to_string()],
    };
    let cache = groups::cache_dir();
    let groups = group_specs
        .iter()
        .map(|s| groups::resolve(s, &cache))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Resolved {
        i,
        j,
        groups,
        n: args.n.or(file.n).unwrap_or(default_n),
        size_limit: args.size_limit.or(file.size_limit).unwrap_or(DEFAULT_SIZE_LIMIT as u64),
        out: args.out.clone().or_else(|| file.out.as_ref().map(PathBuf::from)),
        file,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn cmd_verify(
    args: &CampaignArgs,
    check: Option<&str>,
    jobs: Option<usize>,
    strict: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let r = resolve(args, 2)?;
    let names = match (check, &r.file.check) {
        (Some(t), _) => split_list(t),
        (None, Some(v)) => v.to_vec(),
        (None, None) => return Err(CliError::Config("no checks requested; pass --check".into())),
    };
    let checks = names
        .iter()
        .map(|s| s.parse::<Check>())
        .collect::<Result<Vec<_>, _>>()?;
    let strict = strict || r.file.strict.unwrap_or(false);
    let jobs = jobs
        .or(r.file.jobs)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let campaign = Campaign::new(&r.i, &r.j, &r.groups, checks, r.n, r.size_limit)?;
    let report = run_campaign(&campaign, jobs)?;
    let _ = write!(out, "{}", report.to_text());
    if let Some(p) = &r.out {
        write_file(p, &report.to_json())?;
    }
    Ok(exit_code(&report, strict))
}

pub fn exit_code(report: &Report, strict: bool) -> i32 {
    if report.count(Status::Fail) > 0 {
        exit::FAIL
    } else if strict && report.count(Status::Skipped) > 0 {
        exit::SIZE_LIMIT
    } else {
        exit::PASS
    }
}

fn cmd_homology(args: &CampaignArgs, coefficients: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let r = resolve(args, 2)?;
    let mut worst = exit::PASS;
    let mut json = Vec::new();
    for &i in &r.i {
        for g in &r.groups {
            let a = semigroup_algebra(&brandt(i, g).map_err(|e| CliError::Config(e.to_string()))?);
            let modules: Vec<BimoduleRef> = match coefficients.split_once(':').unwrap_or((coefficients, "")) {
                ("regular", "") => vec![regular_bimodule(&a)],
                ("dual", "") => vec![dual_bimodule(&regular_bimodule(&a))],
                ("random", seed) => {
                    let seed = if seed.is_empty() {
                        RANDOM_MODULE_SEED
                    } else {
                        seed.parse()
                            .map_err(|_| CliError::Config(format!("bad random seed {seed:?}")))?
                    };
                    vec![random_bimodule(&a, seed, RANDOM_MODULE_MAX_DIM)]
                }
                ("battery", "") => crate::checks::battery(&a)
                    .map_err(CliError::Config)?
                    .into_iter()
                    .map(|(_, m)| m)
                    .collect(),
                _ => {
                    return Err(CliError::Config(format!(
                        "unknown coefficients {coefficients:?}; expected regular, dual, random[:SEED] or battery"
                    )))
                }
            };
            let report = vanishing_suite(&a, &modules, r.n, r.size_limit as u128)
                .map_err(|e| CliError::Config(e.to_string()))?;
            let _ = writeln!(out, "A = {} (dim {}), n_max {}", a.name(), a.dim(), r.n);
            for e in &report.entries {
                let _ = writeln!(
                    out,
                    "  coefficients {} (dim {}, tested dim {})",
                    e.module, e.module_dim, e.tested_dim
                );
                for n in &e.notes {
                    let _ = writeln!(out, "    note: {n}");
                }
                if let Some(s) = &e.skipped {
                    let _ = writeln!(out, "    {s}");
                    worst = worst.max(exit::SIZE_LIMIT);
                    continue;
                }
                let _ = writeln!(out, "    n   betti H_n   betti H^n");
                for (n, (h, c)) in e.homology_betti.iter().zip(&e.cohomology_betti).enumerate() {
                    let _ = writeln!(out, "    {n:<3} {h:<11} {c}");
                }
                if let Some(h0) = e.h0_dim {
                    let _ = writeln!(out, "    dim H_0 = {h0}");
                }
                if !e.passed && worst == exit::PASS {
                    worst = exit::FAIL;
                }
            }
            json.push(report);
        }
    }
    if let Some(p) = &r.out {
        let text = serde_json::to_string_pretty(&json).expect("serializable") + "\n";
        write_file(p, &text)?;
    }
    Ok(worst)
}

fn cmd_report(path: &Path, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::MalformedReport(format!("{}: {e}", path.display())))?;
    let report = Report::from_json(&text)?;
    let rendered = match format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    };
    let _ = write!(out, "{rendered}");
    Ok(exit::PASS)
}
