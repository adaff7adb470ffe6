//! `fibcodec` command-line tool.
//!
//! Exit status: 0 on success, 1 on codec, tamper or I/O errors, 2 on usage
//! errors.

mod demo;
mod golden;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibcodec::harness::{self, CorruptionSpec, Strategy};
use fibcodec::layout::{self, PAD_SYMBOL};
use fibcodec::{encode_text, wire, AlphabetRegistry, NRule, Scheme, DEFAULT_ALPHABET_ID};

#[derive(Parser)]
#[command(
    name = "fibcodec",
    version,
    about = "Fibonacci/Lucas matrix block codec"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode text into a payload.
    Encode {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, value_enum, default_value_t = NRuleArg::Half)]
        n_rule: NRuleArg,
        #[arg(long, default_value = DEFAULT_ALPHABET_ID)]
        alphabet: String,
        /// Input file (stdin if omitted).
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode a payload back into text.
    Decode {
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Render::Text)]
        render: Render,
        /// `restore` shows each '0' as a space.
        #[arg(long, value_enum, default_value_t = Spaces::Keep)]
        spaces: Spaces,
    },
    /// Walk through one of the worked examples and check it against pinned values.
    Demo {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
    },
    /// Measure tamper detection under injected corruption.
    Harness {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        magnitude: u32,
        #[arg(long, value_enum, default_value_t = NRuleArg::Half)]
        n_rule: NRuleArg,
        /// Message text; read from --input or stdin when omitted.
        #[arg(long, conflicts_with = "input")]
        message: Option<String>,
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Write per-trial outcomes as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Lucas,
    Mine,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Lucas => Scheme::LucasBlocking,
            SchemeArg::Mine => Scheme::Minesweeper,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NRuleArg {
    Half,
    Tas,
}

impl From<NRuleArg> for NRule {
    fn from(r: NRuleArg) -> Self {
        match r {
            NRuleArg::Half => NRule::Half,
            NRuleArg::Tas => NRule::Tas,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    PerturbD,
    PerturbKept,
    SwapRows,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::PerturbD => Strategy::PerturbD,
            StrategyArg::PerturbKept => Strategy::PerturbKept,
            StrategyArg::SwapRows => Strategy::SwapRows,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Render {
    Text,
    Grid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Spaces {
    Restore,
    Keep,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&PathBuf>, data: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, data).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout()
            .write_all(data.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    }
}

fn strip_line_ending(s: &str) -> &str {
    s.strip_suffix("\r\n")
        .or_else(|| s.strip_suffix('\n'))
        .unwrap_or(s)
}

fn show(symbol: char, spaces: Spaces) -> char {
    if spaces == Spaces::Restore && symbol == PAD_SYMBOL {
        ' '
    } else {
        symbol
    }
}

fn run(cli: Cli) -> Result<(), String> {
    let registry = AlphabetRegistry::with_default();
    match cli.command {
        Command::Encode {
            scheme,
            n_rule,
            alphabet,
            input,
            output,
        } => {
            let alphabet = registry.get(&alphabet).map_err(|e| e.to_string())?;
            let text = read_input(input.as_ref())?;
            let coded = encode_text(
                strip_line_ending(&text),
                scheme.into(),
                n_rule.into(),
                alphabet,
            )
            .map_err(|e| e.to_string())?;
            write_output(output.as_ref(), &wire::serialize(&coded))
        }
        Command::Decode {
            input,
            output,
            render,
            spaces,
        } => {
            let payload = read_input(input.as_ref())?;
            let coded = wire::parse(&payload, &registry).map_err(|e| e.to_string())?;
            let table = coded.char_table(&registry).map_err(|e| e.to_string())?;
            let matrix = fibcodec::decode(&coded, &table).map_err(|e| e.to_string())?;
            let text = layout::render(&matrix, &table).map_err(|e| e.to_string())?;
            let symbols: Vec<char> = text.chars().map(|c| show(c, spaces)).collect();
            let rendered = match render {
                Render::Text => {
                    let s: String = symbols.into_iter().collect();
                    // Restored padding at the end is only trailing blanks.
                    let s = if spaces == Spaces::Restore {
                        s.trim_end().to_string()
                    } else {
                        s
                    };
                    format!("{s}\n")
                }
                Render::Grid => symbols
                    .chunks(matrix.dim())
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(char::to_string).collect();
                        format!("{}\n", cells.join(" "))
                    })
                    .collect(),
            };
            write_output(output.as_ref(), &rendered)
        }
        Command::Demo { example } => {
            let g = if example == 1 {
                &golden::EXAMPLE_1
            } else {
                &golden::EXAMPLE_2
            };
            let out = demo::run(example, g).map_err(|e| e.to_string())?;
            write_output(None, &out.report)?;
            if out.mismatches.is_empty() {
                Ok(())
            } else {
                Err(format!(
                    "golden data mismatch: {}",
                    out.mismatches.join(", ")
                ))
            }
        }
        Command::Harness {
            scheme,
            strategy,
            trials,
            seed,
            magnitude,
            n_rule,
            message,
            input,
            csv,
        } => {
            let text = match message {
                Some(m) => m,
                None => strip_line_ending(&read_input(input.as_ref())?).to_string(),
            };
            let alphabet = registry
                .get(DEFAULT_ALPHABET_ID)
                .map_err(|e| e.to_string())?;
            let spec = CorruptionSpec {
                strategy: strategy.into(),
                magnitude,
                seed,
            };
            let report = harness::detection_rate(
                &text,
                alphabet,
                scheme.into(),
                n_rule.into(),
                &spec,
                trials as usize,
            )
            .map_err(|e| e.to_string())?;
            if let Some(path) = csv {
                let file =
                    fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                report
                    .write_csv(io::BufWriter::new(file))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            write_output(None, &format!("{report}\n"))
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
