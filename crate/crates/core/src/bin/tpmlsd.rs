use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tpmlsd::harness::{
    self, load_received, parse_snr_list, write_csv, write_json, CodeSpec, DecoderKind,
    OutputFormat, SimConfig,
};
use tpmlsd::selftest::run_selftest;
use tpmlsd::{Error, Result, Trellis, TrellisMode};

#[derive(Parser)]
#[command(
    name = "tpmlsd",
    version,
    about = "Two-phase ML soft-decision decoding via supercodes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeArgs {
    /// Reed-Muller pair as r,rbar,m
    #[arg(long, value_name = "R,RBAR,M", conflicts_with = "parity_check")]
    rm: Option<String>,
    /// Parity-check matrix file of the code
    #[arg(long, value_name = "FILE")]
    parity_check: Option<PathBuf>,
    /// Rows of the parity-check file that define the supercode
    #[arg(long, value_name = "T", requires = "parity_check")]
    prefix: Option<usize>,
}

impl CodeArgs {
    fn spec(&self) -> Result<Option<CodeSpec>> {
        match (&self.rm, &self.parity_check) {
            (Some(s), _) => CodeSpec::parse_rm(s).map(Some),
            (None, Some(path)) => {
                let prefix = self
                    .prefix
                    .ok_or_else(|| Error::Config("--parity-check needs --prefix".into()))?;
                Ok(Some(CodeSpec::ParityCheck {
                    path: path.clone(),
                    prefix,
                }))
            }
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<CodeSpec> {
        self.spec()?
            .ok_or_else(|| Error::Config("specify a code with --rm or --parity-check".into()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo sweep over SNR points
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Named configuration (table1)
        #[arg(long)]
        preset: Option<String>,
        /// Comma-separated SNR_b values in dB
        #[arg(long, value_name = "LIST")]
        snr_db: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = DecoderKind::Tpmlsd)]
        decoder: DecoderKind,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Fixed noise standard deviation, overriding the SNR
        #[arg(long)]
        sigma: Option<f64>,
        /// Compute code-trellis successors on the fly
        #[arg(long)]
        lazy_trellis: bool,
        /// Transmit the all-zero codeword every trial
        #[arg(long)]
        all_zero: bool,
    },
    /// Decode one received word and print a JSON report
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Received reals, one per line
        #[arg(long)]
        received: PathBuf,
        #[arg(long, value_enum, default_value_t = DecoderKind::Tpmlsd)]
        decoder: DecoderKind,
    },
    /// Print state and branch counts per level as JSON
    TrellisStats {
        #[command(flatten)]
        code: CodeArgs,
        /// Print every branch of the code trellis instead
        #[arg(long)]
        dump: bool,
    },
    /// Run the built-in quick checks
    Selftest,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| {
            Error::Io {
                path: p.clone(),
                source,
            }
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Simulate {
            code,
            preset,
            snr_db,
            trials,
            seed,
            decoder,
            out,
            format,
            sigma,
            lazy_trellis,
            all_zero,
        } => {
            let mut cfg = match (preset, code.spec()?) {
                (Some(name), None) => SimConfig::preset(&name, trials)?,
                (Some(_), Some(_)) => {
                    return Err(Error::Config(
                        "--preset cannot be combined with a code".into(),
                    ))
                }
                (None, Some(spec)) => SimConfig::new(spec, Vec::new(), trials),
                (None, None) => {
                    return Err(Error::Config(
                        "specify --preset, --rm or --parity-check".into(),
                    ))
                }
            };
            if let Some(list) = snr_db {
                cfg.snr_b_db = parse_snr_list(&list)?;
            }
            cfg.base_seed = seed;
            cfg.decoder = decoder;
            cfg.output_format = format;
            cfg.sigma_override = sigma;
            cfg.all_zero_codeword = all_zero;
            if lazy_trellis {
                cfg.trellis_mode = TrellisMode::Lazy;
            }
            let rows = harness::run_sweep(&cfg)?;
            let out = output(&out)?;
            match cfg.output_format {
                OutputFormat::Csv => write_csv(&rows, out)?,
                OutputFormat::Json => write_json(&rows, out)?,
            }
            Ok(true)
        }
        Command::Decode {
            code,
            received,
            decoder,
        } => {
            let pair = code.require()?.build()?;
            let r = load_received(&received)?;
            print_json(&harness::decode_once(pair, decoder, &r)?)?;
            Ok(true)
        }
        Command::TrellisStats { code, dump } => {
            let spec = code.require()?;
            if dump {
                let pair = spec.build()?;
                let t = Trellis::build(pair.code().parity_check())?;
                t.dump(io::stdout().lock()).map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            } else {
                print_json(&harness::profile_pair(&spec.build()?)?)?;
            }
            Ok(true)
        }
        Command::Selftest => {
            let lines = run_selftest();
            for l in &lines {
                println!("{l}");
            }
            Ok(lines.iter().all(|l| l.passed))
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
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
