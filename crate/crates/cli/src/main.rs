//! Command-line front end: parse ideal files and stream names, dispatch to
//! the engines, emit text or JSON.
//!
//! Exit codes: 0 on success, 1 on check failure or cross-validation
//! mismatch, 2 on usage errors (including unreadable or malformed input).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hilbnum::{
    bjorner_kalai_check, classify_numerator, is_stream_name, numerator_incl_excl, numerator_koszul,
    numerator_lcm_lattice, numerator_oracle, parse_ideal_text, parse_stream_name, pcond_check,
    realize_stream, CollapsedSeries, GradedSeries, KoszulComplex, Monomial, MonomialIdeal,
    Partition, UnivariateSeries,
};

#[derive(Parser)]
#[command(
    name = "hilbnum",
    version,
    about = "Multigraded Hilbert series and Hilbert numerators of monomial ideals"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    InclExcl,
    LcmLattice,
    Koszul,
    Oracle,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Hilbert numerator p(I).
    Numerator {
        /// Ideal source: a file path, or a built-in stream name
        /// (`example-23gen`, `powers:d1,d2,...`).
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = Method::InclExcl)]
        method: Method,
        /// Total-degree truncation bound.
        #[arg(long)]
        cap: u32,
        /// Variable bound for the oracle method and for `all`
        /// cross-validation (defaults to the largest index present).
        #[arg(long)]
        nvars: Option<u32>,
        /// Collapse the result through a partition spec
        /// (`total`, or `r=..;default=..;..`).
        #[arg(long)]
        collapse: Option<String>,
    },
    /// Emit the characteristic series chi and the Hilbert series q.
    Series {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        nvars: u32,
        #[arg(long)]
        cap: u32,
    },
    /// Emit the lcm lattice with its Möbius values.
    Lattice {
        #[arg(long)]
        ideal: String,
        /// Realization degree for stream sources.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Emit the Koszul complex of a monomial and its Euler characteristic.
    Koszul {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        monomial: String,
        /// Realization degree for stream sources.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Run the convergence experiment g_n over a generator stream.
    Converge {
        /// Built-in stream name (`example-23gen`, `powers:d1,d2,...`).
        #[arg(long)]
        stream: String,
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        cap: u32,
        #[arg(long, default_value = "total")]
        collapse: String,
    },
    /// Classify a univariate numerator prefix into G_{a,b}.
    Classify {
        /// Comma-separated coefficients, e.g. `1,-1,0,2`.
        #[arg(long, conflicts_with = "series_file")]
        series: Option<String>,
        /// A CollapsedSeries JSON file with r = 1.
        #[arg(long)]
        series_file: Option<PathBuf>,
        #[arg(long)]
        bmax: u32,
    },
    /// Run the numerator validity checks on a series JSON file.
    Check {
        /// A GradedSeries JSON file.
        #[arg(long)]
        series_file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let output = cli.output;
    match cli.command {
        Command::Numerator {
            ideal,
            method,
            cap,
            nvars,
            collapse,
        } => {
            let ideal = load_ideal(&ideal, Some(cap))?;
            let collapse = collapse
                .map(|spec| spec.parse::<Partition>())
                .transpose()
                .map_err(|e| e.to_string())?;
            numerator_command(&ideal, method, cap, nvars, collapse, output)
        }
        Command::Series { ideal, nvars, cap } => {
            let ideal = load_ideal(&ideal, Some(cap))?;
            let chi = ideal.char_series(nvars, cap);
            let q = ideal.staircase_complement(nvars, cap);
            match output {
                Output::Text => {
                    println!("chi: {chi}");
                    println!("q: {q}");
                }
                Output::Json => println!(
                    "{}",
                    json!({ "chi": chi.to_json_value(), "q": q.to_json_value() })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { ideal, cap } => {
            let ideal = load_ideal(&ideal, cap)?;
            let lattice = hilbnum::build_lcm_lattice(&ideal).map_err(|e| e.to_string())?;
            match output {
                Output::Text => {
                    for m in lattice.elements() {
                        println!("{m}\t{}", lattice.mobius(m).unwrap());
                    }
                }
                Output::Json => {
                    let elements: Vec<_> = lattice
                        .elements()
                        .iter()
                        .map(|m| {
                            json!({
                                "monomial": m.to_string(),
                                "mobius": lattice.mobius(m).unwrap(),
                            })
                        })
                        .collect();
                    println!("{}", json!({ "elements": elements }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Koszul {
            ideal,
            monomial,
            cap,
        } => {
            let ideal = load_ideal(&ideal, cap)?;
            let m: Monomial = monomial
                .parse()
                .map_err(|e: hilbnum::Error| e.to_string())?;
            if m.support_size() > 62 {
                return Err("monomial support too large to enumerate faces".into());
            }
            let complex = KoszulComplex::build(&ideal, &m);
            let chi = complex.reduced_euler_characteristic();
            let coeff = hilbnum::koszul_coefficient(&ideal, &m);
            match output {
                Output::Text => {
                    println!("monomial: {m}");
                    let rendered: Vec<String> = complex
                        .faces()
                        .iter()
                        .map(|face| {
                            let inner: Vec<String> = face.iter().map(|v| format!("x{v}")).collect();
                            format!("{{{}}}", inner.join(","))
                        })
                        .collect();
                    println!("faces: {}", rendered.join(" "));
                    println!("chi_tilde: {chi}");
                    println!("coefficient: {coeff}");
                }
                Output::Json => println!(
                    "{}",
                    json!({
                        "monomial": m.to_string(),
                        "faces": complex.faces(),
                        "chi_tilde": chi,
                        "coefficient": coeff,
                    })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Converge {
            stream,
            nmax,
            cap,
            collapse,
        } => {
            let s = parse_stream_name(&stream).map_err(|e| e.to_string())?;
            let partition: Partition = collapse
                .parse()
                .map_err(|e: hilbnum::Error| e.to_string())?;
            let run = hilbnum::convergence_run(s.as_ref(), &partition, nmax, cap)
                .map_err(|e| e.to_string())?;
            // The recursion check applies to the example family only.
            let recursion = (stream == "example-23gen" && nmax >= 2)
                .then(|| hilbnum::verify_23gen_recursion(nmax, cap))
                .transpose()
                .map_err(|e| e.to_string())?;
            let stable = run.steps.last().map(|(_, g)| g.clone());
            match output {
                Output::Text => {
                    for (n, g) in &run.steps {
                        println!("n={n}: {g}");
                    }
                    if let Some(g) = &stable {
                        println!("stabilized: {g} (prefix degree {})", run.stabilized_prefix);
                    }
                    if let Some(ok) = recursion {
                        println!("recursion check: {}", if ok { "ok" } else { "FAILED" });
                    }
                }
                Output::Json => {
                    let steps: Vec<_> = run
                        .steps
                        .iter()
                        .map(|(n, g)| json!({ "n": n, "series": g.to_json_value() }))
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "steps": steps,
                            "stabilized_prefix": run.stabilized_prefix,
                            "recursion_check": recursion,
                        })
                    );
                }
            }
            if recursion == Some(false) {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            series,
            series_file,
            bmax,
        } => {
            let f = match (series, series_file) {
                (Some(csv), None) => csv.parse::<UnivariateSeries>().map_err(|e| e.to_string())?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let collapsed =
                        CollapsedSeries::from_json_str(&text).map_err(|e| e.to_string())?;
                    UnivariateSeries::from_collapsed(&collapsed).map_err(|e| e.to_string())?
                }
                _ => return Err("pass exactly one of --series or --series-file".into()),
            };
            let certs = classify_numerator(&f, bmax);
            match output {
                Output::Text => {
                    if certs.is_empty() {
                        println!("NotCertified");
                    }
                    for c in &certs {
                        if c.degenerate {
                            println!("certificate: a=0 b={} (degenerate: h = 1)", c.b);
                        } else {
                            println!("certificate: a={} b={}", c.a, c.b);
                        }
                    }
                }
                Output::Json => {
                    let list: Vec<_> = certs
                        .iter()
                        .map(|c| json!({ "a": c.a, "b": c.b, "degenerate": c.degenerate }))
                        .collect();
                    println!("{}", json!({ "certificates": list }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { series_file } => {
            let text = std::fs::read_to_string(&series_file)
                .map_err(|e| format!("{}: {e}", series_file.display()))?;
            let p = GradedSeries::from_json_str(&text).map_err(|e| e.to_string())?;
            let pcond = pcond_check(&p);
            let bjorner = bjorner_kalai_check(&p);
            match output {
                Output::Text => {
                    println!("pcond: {}", if pcond { "pass" } else { "fail" });
                    println!("bjorner-kalai: {}", if bjorner { "pass" } else { "fail" });
                }
                Output::Json => println!("{}", json!({ "pcond": pcond, "bjorner_kalai": bjorner })),
            }
            Ok(if pcond && bjorner {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Resolve an ideal source: a built-in stream name is realized to the
/// given degree, anything else is read as an ideal file. Redundant
/// generators are reported on stderr with their line numbers.
fn load_ideal(source: &str, realize_degree: Option<u32>) -> Result<MonomialIdeal, String> {
    if is_stream_name(source) {
        let stream = parse_stream_name(source).map_err(|e| e.to_string())?;
        let degree =
            realize_degree.ok_or("stream sources need --cap to fix a realization degree")?;
        return realize_stream(stream.as_ref(), degree).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
    let parsed = parse_ideal_text(&text).map_err(|e| e.to_string())?;
    for (line, m) in &parsed.redundant {
        eprintln!("note: {source}:{line}: redundant generator {m}");
    }
    Ok(parsed.ideal)
}

fn numerator_command(
    ideal: &MonomialIdeal,
    method: Method,
    cap: u32,
    nvars: Option<u32>,
    collapse: Option<Partition>,
    output: Output,
) -> Result<ExitCode, String> {
    let oracle_n = nvars.unwrap_or_else(|| ideal.max_var().max(1));
    let p = match method {
        Method::InclExcl => numerator_incl_excl(ideal, cap).map_err(|e| e.to_string())?,
        Method::LcmLattice => numerator_lcm_lattice(ideal, cap).map_err(|e| e.to_string())?,
        Method::Koszul => numerator_koszul(ideal, cap),
        Method::Oracle => numerator_oracle(ideal, oracle_n, cap).map_err(|e| e.to_string())?,
        Method::All => {
            let p = numerator_incl_excl(ideal, cap).map_err(|e| e.to_string())?;
            let candidates = [
                (
                    "lcm-lattice",
                    numerator_lcm_lattice(ideal, cap).map_err(|e| e.to_string())?,
                ),
                ("koszul", numerator_koszul(ideal, cap)),
            ];
            for (name, q) in &candidates {
                if let Some(diff) = first_mismatch(&p, q) {
                    emit_mismatch("incl-excl", name, &diff, output);
                    return Ok(ExitCode::from(1));
                }
            }
            let oracle = numerator_oracle(ideal, oracle_n, cap).map_err(|e| e.to_string())?;
            if let Some(diff) = first_mismatch(&p.restrict_vars(oracle_n), &oracle) {
                emit_mismatch("incl-excl", "oracle", &diff, output);
                return Ok(ExitCode::from(1));
            }
            p
        }
    };

    match collapse {
        Some(partition) => {
            let g = p.collapse(&partition).map_err(|e| e.to_string())?;
            match output {
                Output::Text => println!("{g}"),
                Output::Json => println!("{}", g.to_json_value()),
            }
        }
        None => match output {
            Output::Text => println!("{p}"),
            Output::Json => println!("{}", p.to_json_value()),
        },
    }
    Ok(ExitCode::SUCCESS)
}

struct Mismatch {
    monomial: Monomial,
    left: i64,
    right: i64,
}

/// First disagreeing coefficient in canonical monomial order.
fn first_mismatch(a: &GradedSeries, b: &GradedSeries) -> Option<Mismatch> {
    let mut keys: Vec<&Monomial> = a.terms().map(|(m, _)| m).collect();
    keys.extend(b.terms().map(|(m, _)| m));
    keys.sort();
    keys.dedup();
    for m in keys {
        let left = a.coefficient_at(m).unwrap_or(0);
        let right = b.coefficient_at(m).unwrap_or(0);
        if left != right {
            return Some(Mismatch {
                monomial: m.clone(),
                left,
                right,
            });
        }
    }
    None
}

fn emit_mismatch(left_name: &str, right_name: &str, diff: &Mismatch, output: Output) {
    match output {
        Output::Text => eprintln!(
            "mismatch at {}: {left_name} = {}, {right_name} = {}",
            diff.monomial, diff.left, diff.right
        ),
        Output::Json => eprintln!(
            "{}",
            json!({
                "mismatch": {
                    "monomial": diff.monomial.to_string(),
                    left_name: diff.left,
                    right_name: diff.right,
                }
            })
        ),
    }
}
