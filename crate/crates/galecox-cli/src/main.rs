//! `galecox` — exact toric-geometry checks from the command line.
//!
//! Exit status contract, uniform across subcommands:
//! 0 = the queried property holds / success, 1 = the property fails (a
//! witness is printed), 2 = input or usage error. Diagnostics go to stderr
//! as a single JSON object.

mod docs;
mod report;

use clap::{Parser, ValueEnum};
use docs::{
    ConfigDocument, ConfigKind, MatrixDocument, ModuleInfo, SnfDocument, WeightSystemDocument,
};
use galecox::sl3::{self, Sl3Table};
use galecox::{condstar, gale, series, spanning};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "galecox",
    about = "Exact Gale duality, positive 2-spanning certificates, and Cox-realization checks",
    version
)]
enum Cli {
    /// Gale transform of a point configuration (reads a points document,
    /// writes a vectors document).
    Gale {
        /// Input file, or `-` for stdin.
        input: String,
        /// Write the output document here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a vector configuration is positively 2-spanning.
    Check2span {
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the Cox-realization criterion for a weight system.
    Checkstar {
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify the bundled SL3 weight table (or a row of it).
    #[command(name = "verify-sl3")]
    VerifySl3 {
        /// Verify a single case, e.g. `2c`, `1d`, `2b,r=1`, `3,l=2`.
        #[arg(long)]
        case: Option<String>,
        /// Read the table from this file instead of the bundled one.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Construct the weight system of an SL_n-embedding with class-group
    /// rank d (n >= 4, d >= 1); emits a weight-system document.
    #[command(name = "make-series")]
    MakeSeries {
        n: usize,
        d: usize,
        /// Also verify the construction; the report goes to stderr.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Smith normal form of an integer matrix: D, U, V with U*A*V = D.
    Snf {
        input: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    kind: &'static str,
    message: String,
    line: Option<usize>,
    column: Option<usize>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            kind: "input",
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn parse(err: &serde_json::Error) -> Self {
        Failure {
            kind: "parse",
            message: err.to_string(),
            line: Some(err.line()),
            column: Some(err.column()),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure {
            kind: "io",
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn emit(&self) {
        let diag = json!({
            "error": {
                "kind": self.kind,
                "message": self.message,
                "line": self.line,
                "column": self.column,
            }
        });
        eprintln!("{diag}");
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::io(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::io(format!("reading {path}: {e}")))
    }
}

fn parse_doc<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::parse(&e))
}

fn write_output(doc: &impl serde::Serialize, output: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize");
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::io(format!("writing {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_gale(input: &str, output: Option<&PathBuf>) -> Result<u8, Failure> {
    let doc: ConfigDocument = parse_doc(&read_input(input)?)?;
    if doc.kind != ConfigKind::Points {
        return Err(Failure::input("expected a document with kind \"points\""));
    }
    let points = doc.to_points().map_err(|e| Failure::input(e.to_string()))?;
    let g = gale::gale_transform(&points).map_err(|e| Failure::input(e.to_string()))?;
    write_output(&ConfigDocument::from_vectors(&g), output)?;
    Ok(0)
}

fn cmd_check2span(input: &str, format: Format) -> Result<u8, Failure> {
    let doc: ConfigDocument = parse_doc(&read_input(input)?)?;
    if doc.kind != ConfigKind::Vectors {
        return Err(Failure::input("expected a document with kind \"vectors\""));
    }
    let g = doc.to_vectors().map_err(|e| Failure::input(e.to_string()))?;
    let verdict = spanning::is_positively_2_spanning(&g);
    match format {
        Format::Text => print!("{}", report::spanning_text(&verdict)),
        Format::Json => println!("{}", report::spanning_json(&verdict)),
    }
    Ok(if verdict.holds { 0 } else { 1 })
}

fn cmd_checkstar(input: &str, format: Format) -> Result<u8, Failure> {
    let doc: WeightSystemDocument = parse_doc(&read_input(input)?)?;
    let collection = doc.to_collection().map_err(Failure::input)?;
    let star = condstar::check_condition_star(&collection);
    match format {
        Format::Text => print!("{}", report::star_text(&star)),
        Format::Json => println!("{}", report::star_json(&star)),
    }
    Ok(if star.holds { 0 } else { 1 })
}

fn cmd_verify_sl3(
    case: Option<&str>,
    table_path: Option<&PathBuf>,
    format: Format,
) -> Result<u8, Failure> {
    let table = match table_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::io(format!("reading {}: {e}", p.display())))?;
            Sl3Table::from_json(&text).map_err(|e| Failure::input(e.to_string()))?
        }
        None => Sl3Table::bundled(),
    };
    let report = match case {
        None => sl3::verify_all_cases(&table).map_err(|e| Failure::input(e.to_string()))?,
        Some(sel) => {
            let labels =
                sl3::parse_case_selector(sel).map_err(|e| Failure::input(e.to_string()))?;
            let mut reports = Vec::new();
            for label in labels {
                reports
                    .push(sl3::verify_case(&table, label).map_err(|e| Failure::input(e.to_string()))?);
            }
            sl3::TableReport {
                rows: vec![sl3::RowReport {
                    case: sel.to_string(),
                    reports,
                }],
            }
        }
    };
    match format {
        Format::Text => print!("{}", report::table_text(&report)),
        Format::Json => println!("{}", report::table_json(&report)),
    }
    Ok(if report.pass() { 0 } else { 1 })
}

fn cmd_make_series(
    n: usize,
    d: usize,
    verify: bool,
    output: Option<&PathBuf>,
    format: Format,
) -> Result<u8, Failure> {
    let inst = series::construct_series_example(n, d)
        .map_err(|e| Failure::input(e.to_string()))?;
    let mut summands = vec!["standard".to_string(); inst.n];
    summands.extend(std::iter::repeat_n("trivial".to_string(), inst.d - 1));
    let doc = WeightSystemDocument::from_collection(
        &inst.collection,
        Some(ModuleInfo::Summands {
            n: inst.n,
            summands,
        }),
    );
    write_output(&doc, output)?;
    if verify {
        let rep = series::verify_series(&inst);
        match format {
            Format::Text => eprint!("{}", report::series_text(&inst, &rep)),
            Format::Json => eprintln!("{}", report::series_json(&inst, &rep)),
        }
        if !rep.pass() {
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_snf(input: &str, output: Option<&PathBuf>) -> Result<u8, Failure> {
    let doc: MatrixDocument = parse_doc(&read_input(input)?)?;
    let a = doc.to_matrix().map_err(Failure::input)?;
    let snf = galecox::lattice::smith_normal_form(&a);
    let out = SnfDocument {
        d: MatrixDocument::from_matrix(&snf.d),
        u: MatrixDocument::from_matrix(&snf.u),
        v: MatrixDocument::from_matrix(&snf.v),
    };
    write_output(&out, output)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli {
        Cli::Gale { input, output } => cmd_gale(&input, output.as_ref()),
        Cli::Check2span { input, format } => cmd_check2span(&input, format),
        Cli::Checkstar { input, format } => cmd_checkstar(&input, format),
        Cli::VerifySl3 {
            case,
            table,
            format,
        } => cmd_verify_sl3(case.as_deref(), table.as_ref(), format),
        Cli::MakeSeries {
            n,
            d,
            verify,
            output,
            format,
        } => cmd_make_series(n, d, verify, output.as_ref(), format),
        Cli::Snf { input, output } => cmd_snf(&input, output.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            failure.emit();
            ExitCode::from(2)
        }
    }
}
