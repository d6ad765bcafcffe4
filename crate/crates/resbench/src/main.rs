//! `resbench`: command-line front end for the restriction workbench.

mod commands;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Outcome;

#[derive(Parser, Debug)]
#[command(name = "resbench", version, about = "GF(2) module structure and orbit statistics for restriction problems")]
pub struct Cli {
    /// Write machine-readable output to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Largest number of 3-subsets enumerated directly [default: 10000000].
    #[arg(long, global = true, env = "WORKBENCH_CAP_TRIPLES")]
    cap_triples: Option<u64>,

    /// Seed for the irreducibility test and mark sampling [default: 1].
    #[arg(long, global = true, env = "WORKBENCH_SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

pub const DEFAULT_SEED: u64 = 1;

impl Cli {
    pub fn cap(&self) -> u64 {
        self.cap_triples.unwrap_or(resbench_core::orbits::DEFAULT_TRIPLE_CAP)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mullineux symbol and image of a p-regular partition.
    Mullineux {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: u32,
        #[arg(long, value_name = "PARTS")]
        lambda: String,
    },
    /// List the (p-regular) partitions of n.
    Partitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Rank of the incidence map η_{r,s} by formula and by elimination.
    WilsonRank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Dimensions of a Specht module and its simple head.
    Specht {
        #[arg(long, value_name = "PARTS")]
        lambda: String,
    },
    /// Socle series of M_1, M_2, M'_2, M_3 or S_2.
    Socle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = ["m1", "m2", "m2prime", "m3", "s2"])]
        module: String,
    },
    /// d_r(D^λ) for the given r values.
    Dr {
        #[arg(long, value_name = "PARTS")]
        lambda: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 3])]
        r: Vec<usize>,
    },
    /// Compare d_3 and d_1 over all 2-regular partitions of n.
    HomBattery {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        cap: usize,
    },
    /// Socle structure claims for M_1, M_2, M_3 and their submodules.
    StructureBattery {
        #[arg(long)]
        n: usize,
    },
    /// Orbit counts f_1, f_2, f_3 for a special embedding.
    Orbits {
        #[arg(long, value_name = "SPEC")]
        spec: String,
        /// Also look for a parity witness among the pair orbits.
        #[arg(long)]
        witness: bool,
    },
    /// f_3 − f_2 for S_{as} on partitions into s blocks of size a.
    E32 {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        s: usize,
    },
    /// Stabilizer bound on h for a special embedding of A_m.
    HBound {
        #[arg(long, value_name = "SPEC")]
        spec: String,
        /// Cross-check against the 2-abelianization of the point stabilizer.
        #[arg(long)]
        check: bool,
    },
    /// Check the reduction hypotheses for an action.
    ReduceCert {
        #[arg(long, value_name = "SPEC", conflicts_with = "classical", required_unless_present = "classical")]
        spec: Option<String>,
        #[arg(long, value_name = "CASE")]
        classical: Option<String>,
        /// Take X = O²(X) as given instead of computing it.
        #[arg(long)]
        assume_o2: bool,
    },
    /// f_2 ≥ 3 and e_3 ≥ h_max + 2 for all special embeddings in a range of m.
    BoundBattery {
        #[arg(long, default_value_t = 11)]
        m_lo: usize,
        #[arg(long, default_value_t = 13)]
        m_hi: usize,
    },
    /// Rank-3 classical actions: degree, orbit counts, parity witness.
    Classical {
        /// Cases such as sl:d=4,q=2; defaults to the standard list.
        #[arg(long = "case", value_name = "CASE")]
        cases: Vec<String>,
    },
    /// Run every claim of a manifest.
    VerifyPaper {
        /// `default` or a path to a TOML manifest.
        #[arg(long, default_value = "default")]
        manifest: String,
        /// Write a manifest with every slot filled from this run.
        #[arg(long, value_name = "PATH")]
        record: Option<PathBuf>,
        /// Restrict to claims whose id starts with one of these prefixes.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = commands::run(&cli);
    match result {
        Ok(outcome) => finish(&cli, outcome),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(output::exit_code_for(&e))
        }
    }
}

fn finish(cli: &Cli, outcome: Outcome) -> ExitCode {
    for line in &outcome.lines {
        println!("{line}");
    }
    if let Some(path) = &cli.json {
        if let Err(e) = output::write_json(path, &outcome) {
            eprintln!("error: writing {}: {e:#}", path.display());
            return ExitCode::from(1);
        }
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
