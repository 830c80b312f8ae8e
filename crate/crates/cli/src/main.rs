// Copyright 2026 The clifford-vqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use clifford_vqd::io::{self, OutputFormat, ResultsDocument, RunConfig};
use clifford_vqd::oracle::hamiltonian_spectrum;
use clifford_vqd::refine::{warmstart_report, DEFAULT_MAX_SWEEPS};
use clifford_vqd::search::{BetaPolicy, SearchConfig, Strategy, DEFAULT_EXHAUSTIVE_CAP, DEFAULT_RESTARTS};
use clifford_vqd::validate::{cross_validate, random_hamiltonian};
use clifford_vqd::{AnsatzTemplate, Error};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "clifford-vqd", version, about = "Clifford-grid variational deflation for Pauli-sum Hamiltonians")]
struct Cli {
    /// Worker threads for the search (defaults to all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the lowest k levels of one Hamiltonian
    Solve {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        levels: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve every point of a sweep manifest in order
    Sweep {
        #[arg(long)]
        manifest: PathBuf,
        /// Warm-start each level from the previous point's optimum
        #[arg(long)]
        transfer: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continuous refinement from Clifford and random starts
    Refine {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        cold_seeds: usize,
        /// Convergence tolerance in Hartree
        #[arg(long)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
        max_sweeps: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Cross-check the stabilizer engine against dense simulation
    Validate {
        #[arg(long, default_value_t = 2)]
        qubits: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entangling blocks of the template (default 2 up to three qubits, else 1)
        #[arg(long)]
        blocks: Option<usize>,
        /// Also check these Hamiltonian files (repeatable)
        #[arg(long)]
        hamiltonian: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    blocks: usize,
    #[arg(long, value_enum, default_value_t = SearchArg::Exhaustive)]
    search: SearchArg,
    /// `auto` or a comma-separated list of penalty weights in Hartree
    #[arg(long, default_value = "auto", value_parser = parse_beta)]
    beta: BetaPolicy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    exhaustive_cap: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Skip exact diagonalization
    #[arg(long)]
    no_oracle: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchArg {
    Exhaustive,
    Cd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn parse_beta(s: &str) -> Result<BetaPolicy, String> {
    if s == "auto" {
        return Ok(BetaPolicy::Auto);
    }
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if values.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
        return Err("penalty weights must be positive".into());
    }
    Ok(BetaPolicy::Explicit(values))
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            strategy: match self.search {
                SearchArg::Exhaustive => Strategy::Exhaustive,
                SearchArg::Cd => Strategy::CoordinateDescent,
            },
            exhaustive_cap: self.exhaustive_cap,
            restarts: self.restarts,
            seed: self.seed,
            beta_policy: self.beta.clone(),
        }
    }
}

enum Failure {
    Validation(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            hamiltonian,
            levels,
            search,
            output,
        } => {
            let h = io::load_hamiltonian(&hamiltonian)?;
            let template = AnsatzTemplate::new(h.n_qubits(), search.blocks)?;
            let config = search.config();
            let spectrum = if output.no_oracle {
                None
            } else {
                Some(hamiltonian_spectrum(&h)?)
            };
            let mut ladder = clifford_vqd::solve_ladder(&h, levels, &template, &config, spectrum.as_deref())?;
            ladder.hamiltonian_id = file_stem(&hamiltonian);
            for l in &ladder.levels {
                eprintln!(
                    "level {}: energy {:.12} Ha, penalty {:.12} Ha, params {}",
                    l.level, l.energy, l.penalty, l.params
                );
            }
            let run = RunConfig {
                n_qubits: h.n_qubits(),
                entangling_blocks: search.blocks,
                levels,
                search: config,
                oracle: !output.no_oracle,
                transfer: false,
            };
            io::write_results(&ResultsDocument::new(run, &[ladder]), output.format.into(), &output.out)?;
        }
        Command::Sweep {
            manifest,
            transfer,
            search,
            output,
        } => {
            let mut m = io::load_manifest(&manifest)?;
            m.transfer_enabled |= transfer;
            let first = io::load_hamiltonian(&m.points[0].hamiltonian_source)?;
            let template = AnsatzTemplate::new(first.n_qubits(), search.blocks)?;
            let config = search.config();
            let ladders = clifford_vqd::sweep(&m, &template, &config, !output.no_oracle)?;
            eprintln!("solved {} points x {} levels", ladders.len(), m.levels_requested);
            let run = RunConfig {
                n_qubits: first.n_qubits(),
                entangling_blocks: search.blocks,
                levels: m.levels_requested,
                search: config,
                oracle: !output.no_oracle,
                transfer: m.transfer_enabled,
            };
            io::write_results(&ResultsDocument::new(run, &ladders), output.format.into(), &output.out)?;
        }
        Command::Refine {
            hamiltonian,
            levels,
            cold_seeds,
            tolerance,
            max_sweeps,
            search,
            out,
            format,
        } => {
            let h = io::load_hamiltonian(&hamiltonian)?;
            let template = AnsatzTemplate::new(h.n_qubits(), search.blocks)?;
            let reports = warmstart_report(
                &h,
                levels,
                &template,
                &search.config(),
                cold_seeds,
                tolerance,
                max_sweeps,
            )?;
            io::write_refine(&reports, format.into(), &out)?;
        }
        Command::Validate {
            qubits,
            samples,
            seed,
            blocks,
            hamiltonian,
        } => {
            let blocks = blocks.unwrap_or(if qubits <= 3 { 2 } else { 1 });
            let template = AnsatzTemplate::new(qubits, blocks)?;
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let mut hs: Vec<_> = (0..5).map(|_| random_hamiltonian(qubits, 2 * qubits + 2, &mut rng)).collect();
            for path in &hamiltonian {
                let h = io::load_hamiltonian(path)?;
                if h.n_qubits() != qubits {
                    return Err(Error::SizeMismatch {
                        expected: qubits,
                        found: h.n_qubits(),
                    }
                    .into());
                }
                hs.push(h);
            }
            let report = cross_validate(&template, &hs, samples, seed)?;
            println!(
                "energy checks: {} (max deviation {:.3e}), overlap checks: {} (max deviation {:.3e})",
                report.energy_checks,
                report.max_energy_deviation,
                report.overlap_checks,
                report.max_overlap_deviation
            );
            if !report.passed() {
                for f in report.failures.iter().take(20) {
                    eprintln!("mismatch: {f}");
                }
                return Err(Failure::Validation(format!("{} mismatches", report.failures.len())));
            }
            println!("ok");
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => run(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
