use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use toric_cox::chamber::{chamber_of, same_chamber};
use toric_cox::dataset;
use toric_cox::embedding::mori_embedding_report;
use toric_cox::exact::IntMat;
use toric_cox::incidence::{check_printed_data, find_transversal_plane, target_planes};
use toric_cox::monomial::{irrelevant_radical, monomials_of_degree};
use toric_cox::report::{chamber_json, fan_for_degree, fan_report, int_vec_json, reproduce_paper, subspace_json, ReproduceOptions};
use toric_cox::{gale_dual, DegreeMatrix, Error};

#[derive(Parser)]
#[command(name = "toric-cox", version, about = "Toric varieties from Cox-ring presentations")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Degree matrix file.
    file: Option<PathBuf>,
    /// Built-in dataset: delpezzo4, p1, p2, p3, p1xp1.
    #[arg(long)]
    dataset: Option<String>,
}

#[derive(Args, Clone)]
struct Degree {
    /// Multidegree, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    degree: String,
    /// Saturation depth for the irrelevant radical.
    #[arg(long, default_value_t = 1)]
    saturate: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Rays of the Gale dual.
    Gale {
        #[command(flatten)]
        input: Input,
        /// `paper-AT` or a JSON file holding a list of integer rows.
        #[arg(long)]
        reference: Option<String>,
    },
    /// Monomials of one degree.
    Basis {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Minimal supports of the irrelevant ideal.
    Irrelevant {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
    },
    /// Fan of a degree, with its certifications.
    Fan {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
    },
    /// Chamber of a class, or comparison with a second class.
    Chamber {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
        #[arg(long, allow_hyphen_values = true)]
        compare: Option<String>,
    },
    /// Mori-embedding criteria for the del Pezzo presentation.
    Embed {
        #[command(flatten)]
        input: Input,
    },
    /// Incidence checks on the printed plane data.
    Incidence {
        #[command(subcommand)]
        action: IncidenceAction,
    },
    /// Run every check of the worked example.
    ReproducePaper {
        /// Grading replacing the built-in one.
        grading: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        saturate: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum IncidenceAction {
    VerifyPaper,
    Search {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_tries: usize,
    },
}

/// Error carrying the process exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded(_) => 3,
            Error::MaxTriesExhausted { .. } | Error::NotStronglyConvex { .. } => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn load(input: &Input) -> Result<DegreeMatrix, Failure> {
    match (&input.file, &input.dataset) {
        (Some(_), Some(_)) => Err(usage("give either a file or --dataset, not both")),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(DegreeMatrix::from_json(&text)?)
        }
        (None, Some(name)) => Ok(dataset::builtin(name)?),
        (None, None) => Err(usage("no input: give a degree matrix file or --dataset")),
    }
}

fn parse_degree(s: &str, r: usize) -> Result<Vec<i64>, Failure> {
    let d: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("bad degree entry {t:?}"))))
        .collect::<Result<_, _>>()?;
    if d.len() != r {
        return Err(usage(format!("degree has length {}, expected {r}", d.len())));
    }
    Ok(d)
}

fn load_reference(spec: &str) -> Result<IntMat, Failure> {
    if spec == "paper-AT" {
        return Ok(dataset::paper_gale_transpose());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("{spec}: {e}")))?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text).map_err(|e| usage(format!("malformed reference: {e}")))?;
    let cols = rows.first().map_or(0, Vec::len);
    Ok(IntMat::from_rows(cols, &rows)?)
}

/// Printed output and whether all checks passed.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Gale { input, reference } => {
            let q = load(input)?;
            let g = gale_dual(&q)?;
            let rays: Vec<Value> = g.rays().iter().map(|r| int_vec_json(r)).collect();
            let mut text: String = rays.iter().enumerate().map(|(i, r)| format!("{} {r}\n", q.labels()[i])).collect();
            let matches = match reference {
                Some(r) => {
                    let m = g.hermite_matches(&load_reference(r)?);
                    text.push_str(if m { "reference: match\n" } else { "reference: mismatch\n" });
                    Some(m)
                }
                None => None,
            };
            Ok(Outcome {
                value: json!({ "numRays": rays.len(), "rays": rays, "referenceMatch": matches }),
                text,
                ok: matches != Some(false),
            })
        }
        Command::Basis { input, degree } => {
            let q = load(input)?;
            let d = parse_degree(degree, q.pic_rank())?;
            let ms = monomials_of_degree(&q, &d, None)?;
            let exps: Vec<&Vec<u64>> = ms.iter().map(|m| &m.0).collect();
            let text = format!("{} monomials\n", ms.len())
                + &exps.iter().map(|e| format!("{e:?}\n")).collect::<String>();
            Ok(Outcome { value: json!({ "count": ms.len(), "exponents": exps }), text, ok: true })
        }
        Command::Irrelevant { input, degree } => {
            let q = load(input)?;
            let d = parse_degree(&degree.degree, q.pic_rank())?;
            let r = irrelevant_radical(&q, &d, degree.saturate, true)?;
            let supports: Vec<Vec<usize>> = r.ideal.generators().iter().map(|s| s.one_based()).collect();
            let mut text = format!("{} minimal supports\n", supports.len());
            for s in r.ideal.generators() {
                text.push_str(&format!("{s}\n"));
            }
            if let Some(w) = &r.warning {
                text.push_str(&format!("warning: {w}\n"));
            }
            Ok(Outcome {
                value: json!({ "count": supports.len(), "supports": supports, "stable": r.stable, "warning": r.warning }),
                text,
                ok: true,
            })
        }
        Command::Fan { input, degree } => {
            let q = load(input)?;
            let d = parse_degree(&degree.degree, q.pic_rank())?;
            let (radical, fan) = fan_for_degree(&q, &d, degree.saturate)?;
            let mut report = fan_report(&fan);
            if let Some(w) = radical.warning {
                report.notes.push(w);
            }
            let text = format!(
                "maximal cones: {}\nvalid: {}\nsimplicial: {}\ncomplete: {}\nprojective: {}\n",
                report.num_maximal_cones, report.valid, report.simplicial, report.complete, report.projective
            ) + &report.notes.iter().map(|n| format!("note: {n}\n")).collect::<String>();
            Ok(Outcome { ok: report.valid, value: serde_json::to_value(&report).expect("serializes"), text })
        }
        Command::Chamber { input, degree, compare } => {
            let q = load(input)?;
            let w = parse_degree(&degree.degree, q.pic_rank())?;
            match compare {
                None => {
                    let c = chamber_of(&q, &w)?;
                    let value = chamber_json(&c);
                    let text = format!(
                        "{} facet inequalities, {} equalities, full-dimensional: {}\n",
                        c.hrep.inequalities.len(),
                        c.hrep.equalities.len(),
                        c.full_dimensional
                    );
                    Ok(Outcome { value, text, ok: true })
                }
                Some(other) => {
                    let w2 = parse_degree(other, q.pic_rank())?;
                    let c = same_chamber(&q, &w, &w2, degree.saturate, true)?;
                    let text = format!("same chamber: {}\n", c.same)
                        + &c.warnings.iter().map(|n| format!("warning: {n}\n")).collect::<String>();
                    Ok(Outcome { value: json!({ "sameChamber": c.same, "warnings": c.warnings }), text, ok: true })
                }
            }
        }
        Command::Embed { input } => {
            let q = match (&input.file, &input.dataset) {
                (None, None) => dataset::delpezzo4(),
                _ => load(input)?,
            };
            let mut pair = dataset::delpezzo4_presentation();
            pair.correspondence.truncate(q.num_gens());
            pair.ambient = q;
            let r = q_identity_report(&pair)?;
            let text = format!(
                "degree bijection: {}\npic restriction: {}\nrestriction table: {}\nextremality: {}\noverall: {}\n",
                r.degree_bijection.holds, r.pic_restriction.holds, r.restriction_table.holds, r.extremality.holds, r.overall
            ) + &r.first_failure.iter().map(|f| format!("first failure: {f}\n")).collect::<String>();
            Ok(Outcome { ok: r.overall, value: serde_json::to_value(&r).expect("serializes"), text })
        }
        Command::Incidence { action: IncidenceAction::VerifyPaper } => {
            let c = check_printed_data();
            let mut text = String::new();
            let mut ok = true;
            for t in &c.intersections {
                let computed = t.computed_intersection.as_ref().map_or("empty".to_string(), |p| p.to_string());
                text.push_str(&format!("{}: computed {computed}, printed {}\n", t.target, t.printed_point));
                if !t.matches && t.target != "Sigma3" {
                    ok = false;
                }
            }
            text.push_str(&format!("printed points rank: {}\n", c.printed_points_rank));
            Ok(Outcome { value: serde_json::to_value(&c).expect("serializes"), text, ok })
        }
        Command::Incidence { action: IncidenceAction::Search { seed, max_tries } } => {
            let t = find_transversal_plane(&target_planes(), *seed, *max_tries)?;
            let plane = subspace_json(&t.plane);
            let text = format!("plane {plane}\nattempts: {}\n", t.attempts)
                + &t.points.iter().map(|p| format!("point {p}\n")).collect::<String>();
            Ok(Outcome {
                value: json!({ "plane": plane, "points": t.points, "seed": t.seed, "attempts": t.attempts }),
                text,
                ok: true,
            })
        }
        Command::ReproducePaper { grading, saturate, seed } => {
            let grading = match grading {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Some(DegreeMatrix::from_json(&text)?)
                }
                None => None,
            };
            if *saturate == 0 {
                return Err(usage("saturation depth must be at least 1"));
            }
            let opts = ReproduceOptions { saturation_depth: *saturate, seed: *seed, grading, ..Default::default() };
            let report = reproduce_paper(&opts)?;
            let mut text = report.to_text();
            if let Some(f) = report.first_failure() {
                text.push_str(&format!("first failed check: {}\n", f.name));
            }
            Ok(Outcome { ok: report.exit_code() == 0, value: serde_json::to_value(&report).expect("serializes"), text })
        }
    }
}

fn q_identity_report(pair: &toric_cox::embedding::CoxPresentationPair) -> Result<toric_cox::embedding::EmbeddingReport, Failure> {
    let id = IntMat::identity(pair.ambient.pic_rank());
    Ok(mori_embedding_report(pair, &id, &dataset::delpezzo4_restriction_table())?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("serializes"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
