use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use a22::analyzer::{
    build_W, check_exact_sequence, check_monomial_basis, check_oracle, check_presentation, check_recursion,
    check_section6, graded_dimension, partition_oracle, Section6Config,
};
use a22::envelope::check_ideal_stability;
use a22::fock::{check_brackets, check_linear_relations, check_quadratic_relations, FockSpace};
use a22::group::{check_group, TwistedGroup};
use a22::report::SuiteReport;

#[derive(Parser)]
#[command(name = "a22", version, about = "Principal subspace of the twisted A2^(2) lattice module: tables and checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Suite {
    Relations,
    Brackets,
    Quadratic,
    Recursion,
    Exactness,
    Presentation,
    Oracle,
    Group,
    Section6,
    Stability,
    MonomialBasis,
}

const DEFAULT_SUITES: [Suite; 8] = [
    Suite::Relations,
    Suite::Brackets,
    Suite::Quadratic,
    Suite::Recursion,
    Suite::Exactness,
    Suite::Presentation,
    Suite::Oracle,
    Suite::Group,
];

#[derive(clap::Args, Clone, Debug)]
struct Common {
    /// qweight cutoff for the graded dimension table
    #[arg(long, default_value_t = 40)]
    cutoff: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// worker threads (0: one per core)
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded dimensions of W next to the partition oracle
    Dims {
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites
    Verify {
        #[command(flatten)]
        common: Common,
        /// default: min(16, cutoff)
        #[arg(long)]
        presentation_cutoff: Option<i64>,
        /// default: min(30, cutoff)
        #[arg(long)]
        exactness_cutoff: Option<i64>,
        /// qweight cutoff for the operator suites (relations, brackets, quadratic)
        #[arg(long, default_value_t = 24)]
        operator_cutoff: i64,
        /// bound on |4n| for bracket modes
        #[arg(long, default_value_t = 12)]
        max_mode4: i64,
        /// bound on 4t for the quadratic and stability suites
        #[arg(long, default_value_t = 24)]
        t_max4: i64,
        #[arg(long, default_value_t = 16)]
        section6_cutoff: i64,
        #[arg(long, default_value_t = 3)]
        group_radius: i64,
        #[arg(long, value_enum, value_delimiter = ',')]
        suites: Vec<Suite>,
    },
    /// Partitions of n into m distinct odd parts
    Oracle {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn setup(common: &Common) -> Result<(), ExitCode> {
    if common.cutoff < 0 {
        return Err(usage_error("--cutoff must be nonnegative"));
    }
    if common.parallelism > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(common.parallelism)
            .build_global()
            .map_err(|e| usage_error(&e.to_string()))?;
    }
    Ok(())
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    }
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn cmd_dims(common: Common) -> ExitCode {
    if let Err(code) = setup(&common) {
        return code;
    }
    let fs = FockSpace::new(common.cutoff);
    let w = match build_W(&fs, common.cutoff) {
        Ok(w) => w,
        Err(e) => return usage_error(&e.to_string()),
    };
    let table = graded_dimension(&w);
    let mut all = true;
    let mut rows = Vec::new();
    for (&(k, l), &d) in &table.entries {
        let o = partition_oracle(k as u32, l as u32);
        all &= d as u64 == o;
        rows.push((k, l, d, o, d as u64 == o));
    }
    match common.format {
        Format::Json => {
            let buckets: Vec<Value> = rows
                .iter()
                .map(|&(k, l, d, o, m)| json!({"charge": k, "qweight": l, "dim": d, "oracle": o, "match": m}))
                .collect();
            println!("{}", json!({"cutoff": common.cutoff, "buckets": buckets}));
        }
        Format::Csv => {
            println!("charge,qweight,dim,oracle,match");
            for (k, l, d, o, m) in rows {
                println!("{k},{l},{d},{o},{m}");
            }
        }
        Format::Text => {
            for (k, l, d, o, m) in rows.into_iter().filter(|r| r.2 > 0 || r.3 > 0) {
                println!("({k},{l}) dim {d} oracle {o}{}", if m { "" } else { "  MISMATCH" });
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

struct VerifyConfig {
    common: Common,
    presentation_cutoff: i64,
    exactness_cutoff: i64,
    operator_cutoff: i64,
    max_mode4: i64,
    t_max4: i64,
    section6_cutoff: i64,
    group_radius: i64,
    suites: Vec<Suite>,
}

impl VerifyConfig {
    fn validate(&self) -> Result<(), String> {
        let c = self.common.cutoff;
        if self.presentation_cutoff > c {
            return Err(format!("--presentation-cutoff {} exceeds --cutoff {c}", self.presentation_cutoff));
        }
        if self.exactness_cutoff > c {
            return Err(format!("--exactness-cutoff {} exceeds --cutoff {c}", self.exactness_cutoff));
        }
        let nonneg = [
            self.presentation_cutoff,
            self.exactness_cutoff,
            self.operator_cutoff,
            self.max_mode4,
            self.t_max4,
            self.section6_cutoff,
            self.group_radius,
        ];
        if nonneg.iter().any(|&x| x < 0) {
            return Err("cutoffs and bounds must be nonnegative".into());
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "cutoff": self.common.cutoff,
            "presentation_cutoff": self.presentation_cutoff,
            "exactness_cutoff": self.exactness_cutoff,
            "operator_cutoff": self.operator_cutoff,
            "max_mode4": self.max_mode4,
            "t_max4": self.t_max4,
            "section6_cutoff": self.section6_cutoff,
            "group_radius": self.group_radius,
            "format": format_name(self.common.format),
            "parallelism": self.common.parallelism,
            "suites": self.suites.iter().map(|&s| suite_name(s)).collect::<Vec<_>>(),
        })
    }
}

fn run_suites(cfg: &VerifyConfig) -> a22::Result<Vec<SuiteReport>> {
    let needs_w = cfg
        .suites
        .iter()
        .any(|s| matches!(s, Suite::Recursion | Suite::Exactness | Suite::Presentation | Suite::Oracle | Suite::MonomialBasis));
    let op_cut = cfg.operator_cutoff.min(cfg.common.cutoff);
    let mut fs_cut = 0;
    for s in &cfg.suites {
        fs_cut = fs_cut.max(match s {
            Suite::Relations | Suite::Brackets | Suite::Quadratic => op_cut,
            // ψ(a)·1 sits up to about twice the monomial's qweight
            Suite::Section6 => 2 * cfg.section6_cutoff + 8,
            Suite::Group | Suite::Stability => 0,
            _ => cfg.common.cutoff,
        });
    }
    let fs = FockSpace::new(fs_cut);
    let w = if needs_w { Some(build_W(&fs, cfg.common.cutoff)?) } else { None };
    let table = w.as_ref().map(graded_dimension);
    let mut out = Vec::new();
    for &s in &cfg.suites {
        let r = match s {
            Suite::Relations => check_linear_relations(&fs, op_cut),
            Suite::Brackets => check_brackets(&fs, op_cut, cfg.max_mode4),
            Suite::Quadratic => check_quadratic_relations(&fs, op_cut, cfg.t_max4),
            Suite::Recursion => check_recursion(table.as_ref().expect("built")),
            Suite::Oracle => check_oracle(table.as_ref().expect("built")),
            Suite::Exactness => check_exact_sequence(&fs, w.as_ref().expect("built"), cfg.exactness_cutoff),
            Suite::Presentation => check_presentation(&fs, w.as_ref().expect("built"), cfg.presentation_cutoff),
            Suite::MonomialBasis => check_monomial_basis(&fs, w.as_ref().expect("built"), cfg.common.cutoff),
            Suite::Group => check_group(&TwistedGroup::default(), cfg.group_radius),
            Suite::Section6 => check_section6(&fs, Section6Config { cutoff: cfg.section6_cutoff, max4: cfg.max_mode4 }),
            Suite::Stability => check_ideal_stability(cfg.t_max4),
        };
        out.push(r);
    }
    Ok(out)
}

fn cmd_verify(mut cfg: VerifyConfig) -> ExitCode {
    if let Err(msg) = cfg.validate() {
        return usage_error(&msg);
    }
    if let Err(code) = setup(&cfg.common) {
        return code;
    }
    if cfg.suites.is_empty() {
        cfg.suites = DEFAULT_SUITES.to_vec();
    }
    cfg.suites.sort();
    cfg.suites.dedup();
    let reports = match run_suites(&cfg) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let all = reports.iter().all(|r| r.pass);
    match cfg.common.format {
        Format::Json => {
            let doc = json!({
                "tool_version": env!("CARGO_PKG_VERSION"),
                "config": cfg.to_json(),
                "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
            });
            println!("{doc}");
        }
        Format::Csv => {
            println!("name,pass,checked,counterexample");
            for r in &reports {
                let ce = r.counterexample.as_deref().unwrap_or("").replace('"', "\"\"");
                println!("{},{},{},\"{ce}\"", r.name, r.pass, r.checked);
            }
        }
        Format::Text => {
            for r in &reports {
                println!("{}", r.summary());
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
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
    match cli.cmd {
        Cmd::Dims { common } => cmd_dims(common),
        Cmd::Verify {
            common,
            presentation_cutoff,
            exactness_cutoff,
            operator_cutoff,
            max_mode4,
            t_max4,
            section6_cutoff,
            group_radius,
            suites,
        } => cmd_verify(VerifyConfig {
            presentation_cutoff: presentation_cutoff.unwrap_or(common.cutoff.min(16)),
            exactness_cutoff: exactness_cutoff.unwrap_or(common.cutoff.min(30)),
            common,
            operator_cutoff,
            max_mode4,
            t_max4,
            section6_cutoff,
            group_radius,
            suites,
        }),
        Cmd::Oracle { m, n } => {
            println!("{}", partition_oracle(m, n));
            ExitCode::SUCCESS
        }
    }
}
