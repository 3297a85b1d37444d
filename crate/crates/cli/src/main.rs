//! Command-line front end: compute Kostka tables, t-string functions,
//! Hall-Littlewood series, constant terms and principal specializations,
//! and run the identity catalog.
//!
//! Exit codes: 0 on success (all checks pass), 1 when an identity check
//! fails, 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ahl_core::affine::{DominantWeight, RootVector};
use ahl_core::formal::{mu_kernel, orbit_sum};
use ahl_core::hall::{
    hl_pi_route, kostka_table, t_string, verify_all, verify_identity, IdentityId,
};
use ahl_core::qseries::QSeries;
use ahl_core::report::IdentityReport;

#[derive(Parser)]
#[command(
    name = "ahl",
    about = "Exact affine Hall-Littlewood functions, Kostka-Foulkes polynomials, \
             t-string functions and identity verification for the rank-one affine root system",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Kostka-Foulkes polynomials K for all dominant weights below lambda
    Kostka {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        p: i64,
        /// Maximum height of lambda - mu
        #[arg(long, default_value_t = 10)]
        depth: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// t-string function a^lambda_mu(t, q) for mu = lambda - (m a0 + n a1)
    String {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        p: i64,
        #[arg(long = "mu-m", default_value_t = 0)]
        mu_m: i64,
        #[arg(long = "mu-n", default_value_t = 0)]
        mu_n: i64,
        /// q-order of the result
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hall-Littlewood series e^{-lambda} P_lambda on a box
    Hl {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        p: i64,
        #[arg(long = "box", default_value_t = 10)]
        box_size: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constant term of the Cherednik kernel against an orbit sum:
    /// ct(mu_kernel * e^{-lambda} m_lambda), or ct(mu_kernel) without lambda
    Ct {
        #[arg(long)]
        level: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long = "box", default_value_t = 10)]
        box_size: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Principal specialization F(e^{-lambda} P_lambda) as a v-series
    Specialize {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        p: i64,
        /// v-order of the result
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify one named identity
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full identity catalog
    VerifyAll {
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((output, sink, code)) => {
            if let Err(e) = emit(&output, sink.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, output.as_bytes()),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(output.as_bytes())
        }
    }
}

fn weight(level: i64, p: i64) -> Result<DominantWeight, String> {
    DominantWeight::new(level, p).map_err(|e| e.to_string())
}

fn nonnegative(name: &str, value: i64) -> Result<i64, String> {
    if value < 0 {
        Err(format!("--{name} must be nonnegative, got {value}"))
    } else {
        Ok(value)
    }
}

fn run(command: Command) -> Result<(String, Option<PathBuf>, u8), String> {
    match command {
        Command::Kostka {
            level,
            p,
            depth,
            format,
            out,
        } => {
            let lam = weight(level, p)?;
            let depth = nonnegative("depth", depth)?;
            let table = kostka_table(&lam, depth, depth).map_err(|e| e.to_string())?;
            for w in &table.warnings {
                eprintln!("warning: {w}");
            }
            let body = match format {
                Format::Csv => {
                    let mut s = String::from("mu_m,mu_n,K\n");
                    for e in &table.entries {
                        s.push_str(&format!(
                            "{},{},{}\n",
                            e.offset.m,
                            e.offset.n,
                            e.poly.render()
                        ));
                    }
                    s
                }
                Format::Json => {
                    let mut s = format!("{{\"depth\":{},\"entries\":[", table.depth);
                    let mut first = true;
                    for e in &table.entries {
                        if !first {
                            s.push(',');
                        }
                        first = false;
                        s.push_str(&format!(
                            "[{},{},{}]",
                            e.offset.m,
                            e.offset.n,
                            json_str(&e.poly.render())
                        ));
                    }
                    s.push_str(&format!(
                        "],\"lambda\":{{\"level\":{},\"p\":{}}}}}\n",
                        level, p
                    ));
                    s
                }
                Format::Text => {
                    let mut s =
                        format!("Kostka-Foulkes table for level={level}, p={p}, depth={depth}\n");
                    for e in &table.entries {
                        let max_mark = if e.in_max { "  [Max]" } else { "" };
                        s.push_str(&format!(
                            "  mu = lambda - ({} a0 + {} a1): K = {}{}\n",
                            e.offset.m,
                            e.offset.n,
                            e.poly.render(),
                            max_mark
                        ));
                    }
                    s
                }
            };
            Ok((body, out, 0))
        }
        Command::String {
            level,
            p,
            mu_m,
            mu_n,
            order,
            format,
            out,
        } => {
            let lam = weight(level, p)?;
            let order = nonnegative("order", order)?;
            if mu_m < 0 || mu_n < 0 {
                return Err("--mu-m and --mu-n must be nonnegative".to_string());
            }
            let offset = RootVector::new(mu_m, mu_n);
            let box_size = order + mu_m.max(mu_n);
            let series = t_string(&lam, &offset, box_size).map_err(|e| e.to_string())?;
            Ok((render_series(&series, format), out, 0))
        }
        Command::Hl {
            level,
            p,
            box_size,
            format,
            out,
        } => {
            let lam = weight(level, p)?;
            let box_size = nonnegative("box", box_size)?;
            let hl = hl_pi_route(&lam, box_size).map_err(|e| e.to_string())?;
            let body = match format {
                Format::Json => format!("{}\n", hl.render_json()),
                Format::Csv => {
                    let mut s = String::from("m,n,coeff\n");
                    for m in 0..=hl.known() {
                        for n in 0..=hl.known() {
                            let c = hl.get(m, n);
                            if !c.is_zero() {
                                s.push_str(&format!("{},{},{}\n", m, n, c.render()));
                            }
                        }
                    }
                    s
                }
                Format::Text => {
                    let mut s =
                        format!("e^(-lambda) P_lambda for level={level}, p={p}, box={box_size}\n");
                    for m in 0..=hl.known() {
                        for n in 0..=hl.known() {
                            let c = hl.get(m, n);
                            if !c.is_zero() {
                                s.push_str(&format!("  ({m},{n}): {}\n", c.render()));
                            }
                        }
                    }
                    s
                }
            };
            Ok((body, out, 0))
        }
        Command::Ct {
            level,
            p,
            box_size,
            format,
            out,
        } => {
            let box_size = nonnegative("box", box_size)?;
            let kernel = mu_kernel(box_size);
            let series = match (level, p) {
                (None, None) => kernel.ct().map_err(|e| e.to_string())?,
                (Some(l), Some(pp)) => {
                    let lam = weight(l, pp)?;
                    kernel
                        .mul(&orbit_sum(&lam, box_size))
                        .ct()
                        .map_err(|e| e.to_string())?
                }
                _ => return Err("--level and --p must be given together".to_string()),
            };
            Ok((render_series(&series, format), out, 0))
        }
        Command::Specialize {
            level,
            p,
            order,
            format,
            out,
        } => {
            let lam = weight(level, p)?;
            let order = nonnegative("order", order)?;
            let hl = hl_pi_route(&lam, order).map_err(|e| e.to_string())?;
            Ok((render_series(&hl.principal_spec(), format), out, 0))
        }
        Command::Verify {
            id,
            order,
            format,
            out,
        } => {
            let id = IdentityId::parse(&id).map_err(|_| {
                let valid: Vec<&str> = IdentityId::ALL.iter().map(|i| i.as_str()).collect();
                format!(
                    "unknown identity id `{id}`; valid ids: {}",
                    valid.join(", ")
                )
            })?;
            let order = nonnegative("order", order)?;
            let report = verify_identity(id, order).map_err(|e| e.to_string())?;
            let code = if report.passed() { 0 } else { 1 };
            Ok((render_reports(&[report], format), out, code))
        }
        Command::VerifyAll { order, format, out } => {
            let order = nonnegative("order", order)?;
            let threads = std::env::var("AHL_THREADS")
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
                .unwrap_or(1)
                .max(1);
            let reports = verify_all(order, threads).map_err(|e| e.to_string())?;
            let code = if reports.iter().all(|r| r.passed()) {
                0
            } else {
                1
            };
            Ok((render_reports(&reports, format), out, code))
        }
    }
}

fn render_series(series: &QSeries, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", series.render_json()),
        Format::Csv => {
            let mut s = String::from("exp2,coeff\n");
            for (e, c) in series.iter() {
                s.push_str(&format!("{},{}\n", e, c.render()));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "series in {} (doubled exponents, known through {}):\n",
                series.var(),
                series.trunc()
            );
            for (e, c) in series.iter() {
                if e % 2 == 0 {
                    s.push_str(&format!("  {}^{}: {}\n", series.var(), e / 2, c.render()));
                } else {
                    s.push_str(&format!("  {}^({}/2): {}\n", series.var(), e, c.render()));
                }
            }
            s
        }
    }
}

fn render_reports(reports: &[IdentityReport], format: Format) -> String {
    match format {
        Format::Json => {
            if reports.len() == 1 {
                format!("{}\n", reports[0].render_json())
            } else {
                let mut s = String::from("{\"reports\":[");
                for (i, r) in reports.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&r.render_json());
                }
                s.push_str("]}\n");
                s
            }
        }
        Format::Csv => {
            let mut s = String::from("id,order,status,first_mismatch,elapsed_ms\n");
            for r in reports {
                s.push_str(&r.render_csv_row());
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.render_text());
                s.push('\n');
            }
            if reports.len() > 1 {
                let passed = reports.iter().filter(|r| r.passed()).count();
                s.push_str(&format!(
                    "{} of {} identities pass\n",
                    passed,
                    reports.len()
                ));
            }
            s
        }
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
