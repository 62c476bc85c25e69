//! Command-line front end for the etaq library.
//!
//! Exit status: 0 on success (all checks pass), 1 when a verification
//! check fails, 2 on usage or computation errors.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use etaq::modform::{self, eta_expansion, hecke_tp, EtaQuotient};
use etaq::newman::{self, CongruenceFamily, NewmanProfile};
use etaq::partitions::{a_r_series, c_series, PartitionSeriesRequest};
use etaq::verify::{self, CheckResult, ScanConfig};

#[derive(Parser)]
#[command(name = "etaq", version, about = "r-colored partition congruences: series, eta quotients, and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a_r(n) for n = 0..limit
    Coeffs {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        limit: usize,
        /// Reduce modulo this; omit for exact integers
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Print c(n) = coefficients of f1 f2^2 for n = 0..limit
    Cseries {
        #[arg(long)]
        limit: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Scan a congruence family given as JSON, e.g. '{"r":3,"A":7,"B":2,"mod":7}'
    Check {
        #[arg(long)]
        family: String,
        #[arg(long)]
        nmax: u64,
    },
    /// Print the xi/omega profile of a prime, with optional recurrence scan
    Newman {
        #[arg(long)]
        p: u64,
        /// Also verify the recurrence for n <= NMAX
        #[arg(long)]
        nmax: Option<u64>,
    },
    /// Print the congruence families generated for a prime and exponent
    Families {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Eta-quotient analysis
    Eta {
        #[command(subcommand)]
        sub: EtaCommand,
    },
    /// Apply the Hecke operator T_p repeatedly to an eta quotient
    Hecke {
        #[arg(long)]
        p: u64,
        /// Number of applications
        #[arg(long, default_value_t = 1)]
        times: u32,
        /// Eta quotient as JSON, e.g. '{"N":4,"factors":{"1":184,"2":4}}'
        #[arg(long)]
        form: String,
        #[arg(long = "mod")]
        modulus: u64,
        /// Print image coefficients through this index
        #[arg(long)]
        through: usize,
    },
    /// Run the full verification suite
    Suite {
        /// JSON config overriding scan ceilings
        #[arg(long)]
        config: Option<String>,
        /// Write the machine-readable report here
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Subcommand)]
enum EtaCommand {
    /// Holomorphy/weight/character analysis of an eta quotient JSON
    Analyze { form: String },
}

fn print_series(label: &str, s: &etaq::TruncatedSeries, limit: usize) {
    for n in 0..limit {
        match s.residues() {
            Some(r) => println!("{label}({n}) = {}", r[n]),
            None => println!("{label}({n}) = {}", s.coeff(n)),
        }
    }
}

fn report_line(rep: &verify::CheckReport) {
    let status = match rep.result {
        CheckResult::Pass => "PASS",
        CheckResult::Fail => "FAIL",
        CheckResult::Vacuous => "VACUOUS",
    };
    print!("[{status}] {} (n <= {}, {} ms)", rep.id, rep.n_max, rep.wall_ms);
    if let Some(ce) = &rep.counterexample {
        print!(" counterexample at n = {}, index {}: {}", ce.n, ce.index, ce.value);
    }
    println!();
}

fn run(cli: Cli) -> Result<bool, String> {
    let config = ScanConfig::default();
    match cli.command {
        Command::Coeffs { r, limit, modulus } => {
            let s = a_r_series(PartitionSeriesRequest {
                r,
                trunc: limit,
                modulus: modulus.unwrap_or(0),
            })
            .map_err(|e| e.to_string())?;
            print_series(&format!("a_{r}"), &s, limit);
            Ok(true)
        }
        Command::Cseries { limit, modulus } => {
            let s = c_series(limit, modulus.unwrap_or(0)).map_err(|e| e.to_string())?;
            print_series("c", s.series(), limit);
            Ok(true)
        }
        Command::Check { family, nmax } => {
            let fam: CongruenceFamily =
                serde_json::from_str(&family).map_err(|e| format!("bad family JSON: {e}"))?;
            let rep = verify::check_family(&fam, nmax, &config).map_err(|e| e.to_string())?;
            report_line(&rep);
            Ok(!rep.failed())
        }
        Command::Newman { p, nmax } => {
            let need = nmax.map_or(newman::shift_d(p), |n| p * p * n + newman::shift_d(p));
            if need > config.max_exact_len {
                return Err(format!(
                    "scan needs exact c-series length {need}, ceiling is {}",
                    config.max_exact_len
                ));
            }
            let c = c_series(need as usize, 0).map_err(|e| e.to_string())?;
            let prof = NewmanProfile::compute(p, &c).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&prof).expect("profile serializes"));
            if let Some(n) = nmax {
                let rep = verify::check_recurrence(p, n, &c).map_err(|e| e.to_string())?;
                report_line(&rep);
                return Ok(!rep.failed());
            }
            Ok(true)
        }
        Command::Families { p, k } => {
            let need = newman::shift_d(p);
            if need > config.max_exact_len {
                return Err(format!("xi({p}) needs exact c-series length {need}"));
            }
            let c = c_series(need as usize, 0).map_err(|e| e.to_string())?;
            let prof = NewmanProfile::compute(p, &c).map_err(|e| e.to_string())?;
            let fam1 = newman::families_part1(p, k as u64, &prof).map_err(|e| e.to_string())?;
            let fam2 = newman::families_part2(p, k as u64, &prof).map_err(|e| e.to_string())?;
            let derived = newman::derived_section3_families(p, k as u64, &prof).map_err(|e| e.to_string())?;
            let doc = serde_json::json!({
                "p": p, "k": k, "omega": prof.omega,
                "a3_families": [fam1, fam2],
                "c_families": derived,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("families serialize"));
            Ok(true)
        }
        Command::Eta { sub } => match sub {
            EtaCommand::Analyze { form } => {
                let eq: EtaQuotient =
                    serde_json::from_str(&form).map_err(|e| format!("bad eta-quotient JSON: {e}"))?;
                let meta = modform::analyze(&eq).map_err(|e| e.to_string())?;
                println!("{}", serde_json::to_string_pretty(&meta).expect("meta serializes"));
                Ok(meta.passes())
            }
        },
        Command::Hecke {
            p,
            times,
            form,
            modulus,
            through,
        } => {
            let eq: EtaQuotient =
                serde_json::from_str(&form).map_err(|e| format!("bad eta-quotient JSON: {e}"))?;
            let meta = modform::analyze(&eq).map_err(|e| e.to_string())?;
            if !meta.integer_weight {
                return Err("Hecke T_p needs an integer weight".to_string());
            }
            let k = (meta.weight2 / 2) as u64;
            let chi_p = modform::character_at(&eq, p as i64).map_err(|e| e.to_string())?;
            let in_trunc = (through + 1) * p.pow(times) as usize;
            let mut img = eta_expansion(&eq, in_trunc, modulus).map_err(|e| e.to_string())?;
            for _ in 0..times {
                let t = img.trunc() / p as usize;
                img = hecke_tp(&img, p, k, chi_p, t).map_err(|e| e.to_string())?;
            }
            print_series("b", &img, through + 1);
            Ok(true)
        }
        Command::Suite { config, json } => {
            let config: ScanConfig = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read config {path}: {e}"))?;
                    serde_json::from_str(&text).map_err(|e| format!("bad config JSON: {e}"))?
                }
                None => ScanConfig::default(),
            };
            let suite = verify::run_paper_suite(&config).map_err(|e| e.to_string())?;
            for rep in &suite.checks {
                report_line(rep);
            }
            println!(
                "{}/{} checks passed{}",
                suite.checks.iter().filter(|c| !c.failed()).count(),
                suite.checks.len(),
                if suite.all_pass { "" } else { " — FAILURES PRESENT" }
            );
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&suite).expect("suite serializes");
                fs::write(&path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            Ok(suite.all_pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
