use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use flowpoly_core::counting::DEFAULT_GUARD;
use flowpoly_core::families::{default_corpus, generate_family};
use flowpoly_core::vectors::{eulerian_row, macmahon_row};
use flowpoly_core::verify::{verify_graph, CheckName, CheckStatus, TheoremReport, VerifyOptions};
use flowpoly_core::Error;

/// Exact flow/tension polynomials of graphs and checks of their coefficient bounds.
#[derive(Parser)]
#[command(name = "flowpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all polynomials of one graph and run the theorem checks.
    Analyze {
        /// complete:n, cycle:n, path:n, star:n, bouquet:r, theta:a:b:c,
        /// edges:1-2,2-3,... or file:PATH
        #[arg(long)]
        graph: String,
        /// `all` or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Largest dilation for the reflexivity test.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        kmax: i64,
        /// Largest number of candidates any enumeration may visit.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u128,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check on all small connected graphs plus named families.
    Corpus {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        kmax: i64,
        /// Directory receiving one JSON report per graph and `summary.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print Eulerian and MacMahon number triangles.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        eulerian: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        macmahon: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownGraphSpec(_)
            | Error::InvalidArgument(_)
            | Error::OutOfRange { .. }
            | Error::InvalidGraph(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_checks(list: &str) -> Result<Option<Vec<CheckName>>, Failure> {
    if list == "all" {
        return Ok(None);
    }
    list.split(',')
        .map(|s| s.trim().parse::<CheckName>().map_err(Failure::from))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn to_json(report: &TheoremReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
}

fn show(p: &Option<impl ToString>) -> String {
    p.as_ref().map_or_else(|| "(guard)".to_string(), ToString::to_string)
}

fn to_table(r: &TheoremReport) -> String {
    let c = &r.classification;
    let mut out = format!(
        "graph {}  |V|={} |E|={} components={} cyclomatic={}\n",
        r.graph.spec, c.vertex_count, c.edge_count, c.component_count, c.cyclomatic_number
    );
    let p = &r.polynomials;
    for (name, value) in [
        ("modular flow", show(&p.mflow)),
        ("modular tension", show(&p.mtension)),
        ("integral flow", show(&p.iflow)),
        ("integral tension", show(&p.itension)),
        ("ehrhart F_G", show(&r.ehrhart.flow)),
        ("ehrhart T_G", show(&r.ehrhart.tension)),
    ] {
        out += &format!("  {name:<17} {value}\n");
    }
    for (name, h) in [("h* F_G", &r.hstar.flow), ("h* T_G", &r.hstar.tension)] {
        let entries = h.as_ref().map_or_else(
            || "(guard)".to_string(),
            |h| {
                let e: Vec<String> = h.entries().iter().map(ToString::to_string).collect();
                format!("({})", e.join(", "))
            },
        );
        out += &format!("  {name:<17} {entries}\n");
    }
    out += "\n";
    for (name, result) in r.checks.iter() {
        let status = match result.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        let reason = result.reason.as_deref().unwrap_or("");
        out += &format!("  {:<24} {status:<8} {reason}\n", name.as_str());
    }
    out
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn file_name(index: usize, id: &str) -> String {
    let clean: String = id
        .chars()
        .map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' })
        .collect();
    format!("{index:04}_{clean}.json")
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Analyze {
            graph,
            checks,
            kmax,
            guard,
            format,
            out,
        } => {
            let options = VerifyOptions {
                k_max: kmax,
                guard,
                checks: parse_checks(&checks)?,
            };
            let g = generate_family(&graph)?;
            let report = verify_graph(&graph, &g, &options)?;
            let text = match format {
                Format::Json => to_json(&report),
                Format::Table => to_table(&report),
            };
            emit(&text, out.as_deref())?;
            Ok(!report.any_failed())
        }
        Command::Corpus {
            max_vertices,
            max_edges,
            kmax,
            out,
        } => {
            let corpus = default_corpus(max_vertices, max_edges)?;
            let options = VerifyOptions {
                k_max: kmax,
                ..VerifyOptions::default()
            };
            let reports = corpus
                .par_iter()
                .map(|entry| verify_graph(&entry.id, &entry.graph, &options))
                .collect::<Result<Vec<_>, _>>()?;
            fs::create_dir_all(&out)?;
            let mut summary = Vec::new();
            let (mut pass, mut fail, mut skipped) = (0usize, 0usize, 0usize);
            for (i, report) in reports.iter().enumerate() {
                let name = file_name(i, &report.graph.spec);
                fs::write(out.join(&name), to_json(report))?;
                for (_, r) in report.checks.iter() {
                    match r.status {
                        CheckStatus::Pass => pass += 1,
                        CheckStatus::Fail => fail += 1,
                        CheckStatus::Skipped => skipped += 1,
                    }
                }
                summary.push(serde_json::json!({
                    "graph": report.graph.spec,
                    "file": name,
                    "failed": report.checks.iter()
                        .filter(|(_, r)| r.status == CheckStatus::Fail)
                        .map(|(n, _)| n.as_str())
                        .collect::<Vec<_>>(),
                }));
            }
            let summary = serde_json::json!({
                "graphs": reports.len(),
                "pass": pass,
                "fail": fail,
                "skipped": skipped,
                "reports": summary,
            });
            fs::write(
                out.join("summary.json"),
                serde_json::to_string_pretty(&summary).expect("json") + "\n",
            )?;
            println!(
                "{} graphs: {pass} checks passed, {fail} failed, {skipped} skipped",
                reports.len()
            );
            Ok(fail == 0)
        }
        Command::Tables { eulerian, macmahon } => {
            if eulerian.is_none() && macmahon.is_none() {
                return Err(Failure::Usage(
                    "tables needs --eulerian N and/or --macmahon N".into(),
                ));
            }
            let mut text = String::new();
            if let Some(n) = eulerian {
                text += "Eulerian numbers A(n,i), i = 0..=n\n";
                for m in 1..=n {
                    text += &format!("n={m}: {}\n", row(&eulerian_row(m)));
                }
                text += "conventions: A(n,0) = 0, A(n,n+1) = 0\n";
            }
            if let Some(n) = macmahon {
                if eulerian.is_some() {
                    text += "\n";
                }
                text += "MacMahon numbers B(n,i), i = 0..=n\n";
                for m in 1..=n {
                    text += &format!("n={m}: {}\n", row(&macmahon_row(m)));
                }
                text += "conventions: B(n,0) = 0\n";
            }
            emit(&text, None)?;
            Ok(true)
        }
    }
}

fn row<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(1)
        }
    }
}
