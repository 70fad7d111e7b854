//! Command-line frontend: every library operation behind a subcommand with
//! JSON (default) or CSV output.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when a
//! verification or consistency check fails.

use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use cordalg_core::{
    census, classify, classify_rep, enumerate, ext1_dim, from_sheaf, universal_locus_check,
    Augmentation, EnumerateOptions, GroupWord, KnotRef, Representation, Scalar, SheafData,
    WirtingerPresentation,
};

#[derive(Parser)]
#[command(name = "cordalg", version, about = "Exact knot-invariant computations")]
struct Cli {
    /// Output format; csv applies only to point sets
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Seed for the randomized spot-check sampler
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Args)]
struct KnotArgs {
    /// Built-in knot name (unknot, trefoil, figure-eight)
    #[arg(long, conflicts_with = "pd")]
    knot: Option<String>,
    /// Planar diagram code, e.g. "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"
    #[arg(long)]
    pd: Option<String>,
}

impl KnotArgs {
    fn knot_ref(&self) -> Result<KnotRef> {
        match (&self.knot, &self.pd) {
            (Some(name), None) => Ok(KnotRef::named(name)),
            (None, Some(pd)) => Ok(KnotRef::from_pd(pd)),
            (None, None) => bail!("one of --knot or --pd is required"),
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        }
    }

    fn presentation(&self) -> Result<(KnotRef, Arc<WirtingerPresentation>)> {
        let r = self.knot_ref()?;
        let pres = r.presentation().context("cannot resolve knot diagram")?;
        Ok((r, pres))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Wirtinger presentation of a knot diagram
    Wirtinger(KnotArgs),
    /// Check a representation against the Wirtinger relations
    CheckRep {
        /// Representation JSON (path or inline)
        #[arg(long)]
        rep: String,
    },
    /// Classify a representation (family, mu0, irreducibility)
    ClassifyRep {
        #[arg(long)]
        rep: String,
    },
    /// Classify simple sheaf data into its five-family normal form
    ClassifySheaf {
        /// Sheaf data JSON (path or inline)
        #[arg(long)]
        sheaf: String,
    },
    /// Compute the trace augmentation of simple sheaf data
    SheafToAug {
        #[arg(long)]
        sheaf: String,
    },
    /// Lift a verified augmentation to a knot-group representation
    LiftAug {
        /// Augmentation JSON (path or inline)
        #[arg(long)]
        aug: String,
    },
    /// Verify the cord-algebra conditions of an augmentation
    VerifyAug {
        #[arg(long)]
        aug: String,
        /// Additionally evaluate this many random-word relation instances
        #[arg(long, default_value_t = 0)]
        spot_check: u32,
    },
    /// Dimension of the gluing space onto a rank-one knot local system
    Ext1 {
        #[arg(long)]
        rep: String,
        /// Monodromy eigenvalue (nonzero, in the representation's field)
        #[arg(long)]
        alpha: String,
    },
    /// Enumerate all augmentations over a prime field
    Enumerate {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Exit with status 2 unless the whole locus {lambda=1} u {mu=1}
        /// is realized
        #[arg(long)]
        check_universal: bool,
        /// Candidate budget; overrides CORDALG_ENUM_BUDGET
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate, lift every augmentation, and tally the correspondence rows
    Census {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Loads a JSON value from a file path or from an inline `{...}` literal.
fn load<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?
    };
    serde_json::from_str(&text).context("invalid input document")
}

/// Writes a line to stdout, exiting quietly when the pipe is closed.
fn out_line(line: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    out_line(&serde_json::to_string_pretty(value)?);
    Ok(())
}

fn enumerate_opts(budget: Option<u64>, threads: usize) -> EnumerateOptions {
    let mut opts = EnumerateOptions {
        threads,
        ..Default::default()
    };
    if let Some(b) = budget {
        opts.budget = b;
    } else if let Ok(env) = std::env::var("CORDALG_ENUM_BUDGET") {
        if let Ok(b) = env.parse() {
            opts.budget = b;
        }
    }
    opts
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.output == Output::Csv && !matches!(cli.command, Command::Enumerate { .. }) {
        bail!("csv output is only available for point sets (enumerate)");
    }
    match cli.command {
        Command::Wirtinger(knot) => {
            let (_, pres) = knot.presentation()?;
            emit(pres.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckRep { rep } => {
            let rep: Representation = load(&rep)?;
            let ok = rep.check_relations();
            emit(&json!({ "relations_hold": ok }))?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::ClassifyRep { rep } => {
            let rep: Representation = load(&rep)?;
            if !rep.check_relations() {
                emit(&json!({ "relations_hold": false }))?;
                return Ok(ExitCode::from(2));
            }
            emit(&classify_rep(&rep))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ClassifySheaf { sheaf } => {
            let sheaf: SheafData = load(&sheaf)?;
            match classify(&sheaf) {
                Ok(class) => {
                    emit(&class)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    emit(&json!({ "error": e.to_string() }))?;
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::SheafToAug { sheaf } => {
            let sheaf: SheafData = load(&sheaf)?;
            match from_sheaf(&sheaf) {
                Ok(aug) => {
                    emit(&aug)?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    emit(&json!({ "error": e.to_string() }))?;
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::LiftAug { aug } => {
            let aug: Augmentation = load(&aug)?;
            if let Err(e) = aug.verify() {
                emit(&json!({ "ok": false, "failed": e.to_string() }))?;
                return Ok(ExitCode::from(2));
            }
            emit(&aug.lift())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAug { aug, spot_check } => {
            let aug: Augmentation = load(&aug)?;
            match aug.verify() {
                Ok(()) => {
                    let failures = spot_check_failures(&aug, spot_check, cli.seed);
                    emit(&json!({
                        "ok": failures == 0,
                        "spot_checks": spot_check,
                        "spot_check_failures": failures,
                    }))?;
                    Ok(if failures == 0 {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(2)
                    })
                }
                Err(e) => {
                    emit(&json!({ "ok": false, "failed": e.to_string() }))?;
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Ext1 { rep, alpha } => {
            let rep: Representation = load(&rep)?;
            let alpha = Scalar::parse(rep.field(), &alpha).context("bad --alpha value")?;
            match ext1_dim(&rep, &alpha) {
                Ok(d) => {
                    emit(&json!({ "ext1_dim": d }))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    emit(&json!({ "error": e.to_string() }))?;
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Enumerate {
            knot,
            prime,
            threads,
            check_universal,
            budget,
        } => {
            let (knot_ref, pres) = knot.presentation()?;
            let opts = enumerate_opts(budget, threads);
            let e = enumerate(&knot_ref, &pres, prime, &opts).context("enumeration failed")?;
            eprintln!(
                "enumerated {} candidates in {} ms: {} augmentations, {} points",
                e.report.candidates,
                e.report.wall_ms,
                e.report.augmentation_count,
                e.report.points.len()
            );
            match cli.output {
                Output::Json => emit(&e.report)?,
                Output::Csv => {
                    out_line("lambda,mu,multiplicity");
                    for entry in &e.report.points {
                        out_line(&format!(
                            "{},{},{}",
                            entry.point.lambda, entry.point.mu, entry.multiplicity
                        ));
                    }
                }
            }
            if check_universal && !universal_locus_check(&e.report) {
                eprintln!("universal locus check failed");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            knot,
            prime,
            threads,
            budget,
        } => {
            let (knot_ref, pres) = knot.presentation()?;
            let opts = enumerate_opts(budget, threads);
            let e = enumerate(&knot_ref, &pres, prime, &opts).context("enumeration failed")?;
            let lifts: Vec<Representation> =
                e.augmentations.iter().map(Augmentation::lift).collect();
            match census(&e.augmentations, &lifts) {
                Ok(table) => {
                    emit(&json!({
                        "knot": knot_ref,
                        "prime": prime,
                        "table": table,
                        "total": table.total(),
                        "consistent": true,
                    }))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(mismatch) => {
                    emit(&json!({
                        "knot": knot_ref,
                        "prime": prime,
                        "consistent": false,
                        "witness": mismatch.to_string(),
                        "witness_augmentation": e.augmentations[mismatch.index],
                    }))?;
                    Ok(ExitCode::from(2))
                }
            }
        }
    }
}

/// Evaluates random-word instances of the normalization, meridian,
/// longitude, and skein identities; returns the number of failures.
fn spot_check_failures(aug: &Augmentation, count: u32, seed: u64) -> u32 {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = aug.presentation().n_generators;
    let field_one = aug.field().one();
    let m1 = GroupWord::generator(1);
    let l = aug.presentation().longitude.clone();
    let mut failures = 0;
    for _ in 0..count {
        let w1 = random_word(&mut rng, n, 6);
        let w2 = random_word(&mut rng, n, 6);
        let e = aug.evaluate(&GroupWord::identity());
        if e != field_one.sub(aug.mu()) {
            failures += 1;
            continue;
        }
        let ok_meridian = aug.evaluate(&m1.concat(&w1)) == aug.mu().mul(&aug.evaluate(&w1));
        let ok_longitude = aug.evaluate(&l.concat(&w1)) == aug.lambda().mul(&aug.evaluate(&w1));
        let skein_lhs = aug
            .evaluate(&w1.concat(&w2))
            .sub(&aug.evaluate(&w1.concat(&m1).concat(&w2)));
        let ok_skein = skein_lhs == aug.evaluate(&w1).mul(&aug.evaluate(&w2));
        if !(ok_meridian && ok_longitude && ok_skein) {
            failures += 1;
        }
    }
    failures
}

fn random_word(rng: &mut impl rand::Rng, n_gens: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| {
        cordalg_core::Letter::new(
            rng.gen_range(1..=n_gens),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        )
    }))
}
