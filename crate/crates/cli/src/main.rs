use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use hochlie::generators;
use hochlie::harness::{corpus::selftest, run_all, HarnessConfig, Verdict};
use hochlie::hh1::hh1;
use hochlie::lie::Recognition;
use hochlie::linalg::Field;
use hochlie::quiver::{parse_presentation_with_field, Presentation};

#[derive(Parser)]
#[command(
    name = "hochlie",
    version,
    about = "First Hochschild cohomology of bound quiver algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute HH^1 of a presentation and describe it as a Lie algebra.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replace the field declared in the file (changes the algebra).
        #[arg(long, value_parser = parse_field)]
        field_override: Option<Field>,
    },
    /// Run the theorem checks. Exit status 0 pass or warn, 1 fail, 2 bad input.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field)]
        field_override: Option<Field>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print a presentation from one of the built-in families.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Run the acceptance suite on the built-in corpus.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    Kronecker {
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
    },
    TruncPoly {
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
    },
    Nakayama {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        e: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        l: u64,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
    },
    RadSqZero {
        /// Edges such as `0-1,1-2,2-0`.
        edges: String,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
    },
}

/// `Q`, `F5`, `F 5` or `5`.
fn parse_field(s: &str) -> Result<Field, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let digits = s.strip_prefix(['F', 'f']).unwrap_or(s).trim();
    let p: u64 = digits.parse().map_err(|_| format!("unknown field {s:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn load(file: &PathBuf, field: Option<Field>) -> Result<Presentation, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_presentation_with_field(&text, field).map_err(|e| format!("{}: {e}", file.display()))
}

fn analyze(
    file: &PathBuf,
    json: bool,
    seed: u64,
    field: Option<Field>,
) -> Result<ExitCode, String> {
    let presentation = load(file, field)?;
    let alg = presentation.build().map_err(|e| e.to_string())?;
    let h = hh1(&alg).map_err(|e| e.to_string())?;
    let lie = h.lie();
    let series = lie.series_report().summary();
    let probe = lie.is_simple_probe(seed, hochlie::lie::DEFAULT_TRIALS);
    let sl2 = lie.recognize_sl2(seed);
    let witt = lie.recognize_witt(seed).ok();
    let class = alg.quiver_class();
    if json {
        let report = json!({
            "algebra": {
                "hash": presentation.hash(),
                "field": alg.field().to_string(),
                "dim": alg.dim(),
                "vertices": alg.num_vertices(),
                "arrows": alg.num_arrows(),
                "loewy_length": alg.loewy_length(),
                "quiver_class": class,
            },
            "hh1": {
                "dim": h.dim(),
                "series": series,
                "simple_probe": if probe.is_probably_simple() { "probably_yes" } else { "no" },
                "sl2": sl2.verdict(),
                "witt": witt.as_ref().map(Recognition::verdict),
                "structure_constants": lie.structure_constants(),
            },
            "seed": seed,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
        return Ok(ExitCode::SUCCESS);
    }
    println!("field {}", alg.field());
    println!(
        "dim A {}; vertices {}; Loewy length {}; arrows {}",
        alg.dim(),
        alg.num_vertices(),
        alg.loewy_length(),
        alg.num_arrows()
    );
    println!(
        "quiver: loops {}; max parallel {}; simple digraph {}",
        class.has_loops, class.max_parallel, class.is_simple_digraph
    );
    let mut line = format!("HH1 dim {}; sl2: {}", h.dim(), sl2.verdict());
    if let Some(w) = &witt {
        line.push_str(&format!("; witt: {}", w.verdict()));
    }
    println!("{line}");
    println!("derived series dims {:?}", series.derived_dims);
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
    println!(
        "solvable {}; derived length {}; derived subalgebra nilpotent {} (class {})",
        series.solvable,
        opt(series.derived_length),
        series.nilpotent_derived,
        opt(series.nilpotency_class_of_derived)
    );
    println!(
        "simple probe: {}",
        if probe.is_probably_simple() {
            "probably yes"
        } else {
            "no"
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(
    file: &PathBuf,
    json: bool,
    config: HarnessConfig,
    field: Option<Field>,
) -> Result<ExitCode, String> {
    let presentation = load(file, field)?;
    let report = run_all(&presentation, config).map_err(|e| e.to_string())?;
    if json {
        println!("{}", report.to_json());
    } else {
        for c in &report.checks {
            let status = if c.applicable {
                c.verdict.as_str()
            } else {
                "n/a"
            };
            println!("{:<20} {:<5} {}", c.id, status, c.reason);
            for note in &c.notes {
                println!("    {note}");
            }
        }
        println!("overall: {}", report.verdict().as_str());
    }
    Ok(if report.verdict() == Verdict::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn generate(family: &Family) -> Result<ExitCode, String> {
    let text = match family {
        Family::Kronecker { field } => generators::kronecker(*field),
        Family::TruncPoly { n, field } => {
            generators::trunc_poly(*field, *n as usize).map_err(|e| e.to_string())?
        }
        Family::Nakayama { e, l, field } => {
            generators::nakayama(*field, *e as usize, *l as usize).map_err(|e| e.to_string())?
        }
        Family::RadSqZero { edges, field } => {
            let edges = generators::parse_edge_list(edges).map_err(|e| e.to_string())?;
            generators::rad_square_zero(*field, &edges).map_err(|e| e.to_string())?
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn run_selftest(seed: u64, json: bool) -> Result<ExitCode, String> {
    let report = selftest(seed).map_err(|e| e.to_string())?;
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary_table());
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze {
            file,
            json,
            seed,
            field_override,
        } => analyze(file, *json, *seed, *field_override),
        Command::Verify {
            file,
            json,
            seed,
            field_override,
            inject_fault,
        } => {
            let config = HarnessConfig {
                inject_fault: *inject_fault,
                ..HarnessConfig::with_seed(*seed)
            };
            verify(file, *json, config, *field_override)
        }
        Command::Gen { family } => generate(family),
        Command::Selftest { seed, json } => run_selftest(*seed, *json),
    };
    result.unwrap_or_else(|message| {
        eprintln!("error: {message}");
        ExitCode::from(2)
    })
}
