use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use polar_flip::latency::{fast_ssc_latency, memory_estimate, sc_latency_semiparallel, scf_worst_case};
use polar_flip::sim::{compare_runs, emit_csv, format_csv, run_sweep, SweepConfig, DEFAULT_TARGET_FER};
use polar_flip::{DecoderTree, NodeKind};

#[derive(Parser)]
#[command(name = "polar-flip", version, about = "Polar-code fast-SSC-flip simulator and latency models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo FER sweep and write CSV.
    Sweep {
        #[command(flatten)]
        opts: ConfigArgs,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the pruned decoder tree.
    TreeDump {
        #[command(flatten)]
        opts: ConfigArgs,
    },
    /// Print latency and memory estimates for the configured code.
    Latency {
        #[command(flatten)]
        opts: ConfigArgs,
    },
    /// Eb/N0 gap between two sweep CSVs at a target FER.
    Compare {
        baseline: PathBuf,
        candidate: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TARGET_FER)]
        target_fer: f64,
    },
}

/// Each option overrides the matching key of the `--config` file.
#[derive(Args)]
struct ConfigArgs {
    /// key = value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    n: Option<String>,
    /// Unfrozen positions including the CRC.
    #[arg(long, value_name = "K")]
    k: Option<String>,
    /// Interpret --k as payload length, excluding the CRC.
    #[arg(long)]
    k_excludes_crc: bool,
    /// Design Eb/N0 (dB) of the GA construction.
    #[arg(long, value_name = "DB", allow_hyphen_values = true)]
    design_ebn0: Option<String>,
    #[arg(long, value_name = "PATH")]
    frozen_file: Option<String>,
    /// sc, scf, fast-ssc or fast-ssc-flip.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_name = "T")]
    tmax: Option<String>,
    /// SPC decision-LLR scaling factor s in [0, 1].
    #[arg(long, value_name = "S")]
    scale: Option<String>,
    #[arg(long)]
    no_spc: bool,
    #[arg(long)]
    no_birep: bool,
    #[arg(long, value_name = "W")]
    max_rep: Option<String>,
    #[arg(long, value_name = "W")]
    max_birep: Option<String>,
    #[arg(long, value_name = "W")]
    max_spc: Option<String>,
    /// ccitt16, none, or width:poly.
    #[arg(long)]
    crc: Option<String>,
    /// Comma list or start:step:stop.
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    ebn0: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    min_errors: Option<String>,
    #[arg(long)]
    max_frames: Option<String>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    workers: Option<String>,
    #[arg(long, value_name = "P")]
    p_lanes: Option<String>,
    #[arg(long, value_name = "BITS")]
    q_lambda: Option<String>,
    #[arg(long)]
    calibration: Option<String>,
    /// Charge combines whose output is never read in the fast-SSC cycle model.
    #[arg(long)]
    dead_combines: bool,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        let overrides = [
            ("n", &self.n),
            ("k", &self.k),
            ("design_ebn0", &self.design_ebn0),
            ("frozen_file", &self.frozen_file),
            ("variant", &self.variant),
            ("t_max", &self.tmax),
            ("s_factor", &self.scale),
            ("max_rep", &self.max_rep),
            ("max_birep", &self.max_birep),
            ("max_spc", &self.max_spc),
            ("crc", &self.crc),
            ("ebn0", &self.ebn0),
            ("seed", &self.seed),
            ("min_errors", &self.min_errors),
            ("max_frames", &self.max_frames),
            ("workers", &self.workers),
            ("p_lanes", &self.p_lanes),
            ("q_lambda", &self.q_lambda),
            ("calibration", &self.calibration),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, v).with_context(|| format!("--{}", key.replace('_', "-")))?;
            }
        }
        let flags = [
            ("k_excludes_crc", self.k_excludes_crc),
            ("no_spc", self.no_spc),
            ("no_birep", self.no_birep),
            ("dead_combines", self.dead_combines),
        ];
        for (key, on) in flags {
            if on {
                cfg.set(key, "true")?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Sweep { opts, out } => {
            let cfg = opts.resolve()?;
            let rows = run_sweep(&cfg)?;
            match out {
                Some(path) => emit_csv(&rows, &path)?,
                None => std::io::stdout().write_all(format_csv(&rows).as_bytes())?,
            }
        }
        Command::TreeDump { opts } => {
            let cfg = opts.resolve()?;
            let code = cfg.build_code()?;
            let tree = DecoderTree::build(&code, cfg.constraints);
            print!("{}", tree.dump());
            let hist = tree.kind_histogram();
            let counts: Vec<String> =
                NodeKind::ALL.iter().zip(hist).map(|(k, c)| format!("{}={c}", k.name())).collect();
            println!("leaves: {}", tree.leaves().len());
            println!("kinds: {}", counts.join(" "));
        }
        Command::Latency { opts } => {
            let cfg = opts.resolve()?;
            let code = cfg.build_code()?;
            let tree = DecoderTree::build(&code, cfg.constraints);
            let hw = cfg.hw();
            let b = code.first_info_index();
            let sc = sc_latency_semiparallel(code.n_bits(), b);
            let fast = fast_ssc_latency(&tree, &hw);
            println!("N={} k={} crc={} first_info={b}", code.n_bits(), code.k_info(), code.crc_bits());
            println!("sc_per_trial_cc={sc}");
            println!("scf_worst_case_cc={}", scf_worst_case(cfg.t_max, sc));
            println!("fast_ssc_per_trial_cc={fast}");
            println!("fast_ssc_flip_worst_case_cc={}", scf_worst_case(cfg.t_max, fast));
            if cfg.t_max >= 2 {
                let mem = memory_estimate(&code, &hw);
                println!("decision_list_lambda_bits={}", mem.lambda_bits);
                println!("decision_list_index_bits={}", mem.index_bits);
            }
        }
        Command::Compare { baseline, candidate, target_fer } => {
            let g = compare_runs(&baseline, &candidate, target_fer)?;
            println!("target_fer={:e}", g.target_fer);
            println!("baseline_ebn0_db={:.4}", g.baseline_ebn0_db);
            println!("candidate_ebn0_db={:.4}", g.candidate_ebn0_db);
            println!("gap_db={:.4}", g.gap_db);
        }
    }
    Ok(())
}
