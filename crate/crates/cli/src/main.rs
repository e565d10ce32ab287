mod args;
mod output;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use cg3_core::cg_engine::target_diagram;
use cg3_core::gl3_model::weyl_dimension;
use cg3_core::suites::{self, SuiteReport};
use cg3_core::tensor_space::{enumerate_labels, label_weight};
use cg3_core::{
    cg_expansion, compare, oracle_expansion, valid_descents, Cg3Error, DescentTriple, DiffEntry, HighestVectorLabel, Readings, VectorType,
    WeightPair,
};
use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;

use args::{Cli, Command, Format, Mode, Suite, TableFormat};
use output::{to_csv, to_json, CgOut, DiffOut, MismatchOut, QueryOut, TermOut};

enum Failure {
    /// Malformed input: exit code 2.
    Usage(String),
    /// Verification or computation failure: exit code 1.
    Failed(String),
}

impl From<Cg3Error> for Failure {
    fn from(e: Cg3Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn weight_pair(w1: [i64; 2], w2: [i64; 2]) -> Result<WeightPair, Failure> {
    WeightPair::from_ints(w1[0], w1[1], w2[0], w2[1]).map_err(|e| Failure::Usage(e.to_string()))
}

fn configure_parallelism() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("CG3_MAX_PARALLELISM") else { return Ok(()) };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Usage(format!("CG3_MAX_PARALLELISM must be a positive integer, got {raw:?}"))
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Failed(e.to_string()))
}

#[derive(Serialize)]
struct LabelOut {
    selector: [i64; 5],
    weight: [i64; 3],
    dimension: i64,
}

#[derive(Serialize)]
struct MultiplicityOut {
    weight: [i64; 3],
    multiplicity: usize,
}

#[derive(Serialize)]
struct DecomposeOut {
    w1: [i64; 2],
    w2: [i64; 2],
    dimension: i64,
    labels: Vec<LabelOut>,
    multiplicities: Vec<MultiplicityOut>,
}

fn decompose(w1: [i64; 2], w2: [i64; 2], format: Format) -> Outcome {
    let wp = weight_pair(w1, w2)?;
    let labels = enumerate_labels(&wp);
    let mut mult: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    for l in &labels {
        *mult.entry(label_weight(l)).or_default() += 1;
    }
    let out = DecomposeOut {
        w1,
        w2,
        dimension: wp.product_dimension(),
        labels: labels
            .iter()
            .map(|l| LabelOut { selector: l.selector(), weight: label_weight(l), dimension: weyl_dimension(label_weight(l)) })
            .collect(),
        multiplicities: mult.iter().rev().map(|(w, m)| MultiplicityOut { weight: *w, multiplicity: *m }).collect(),
    };
    match format {
        Format::Json => print!("{}", to_json(&out)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["selector", "weight", "dimension"]).map_err(|e| Failure::Failed(e.to_string()))?;
            for l in &out.labels {
                w.write_record([output::join(&l.selector), output::join(&l.weight), l.dimension.to_string()])
                    .map_err(|e| Failure::Failed(e.to_string()))?;
            }
            w.flush().map_err(|e| Failure::Failed(e.to_string()))?;
        }
        Format::Pretty => {
            println!("{wp}: dimension {}, {} labels", out.dimension, out.labels.len());
            for (l, lo) in labels.iter().zip(&out.labels) {
                println!("  {:<12} {l}  weight {:?}  dimension {}", output::join(&lo.selector), lo.weight, lo.dimension);
            }
            for m in &out.multiplicities {
                println!("  multiplicity of {:?}: {}", m.weight, m.multiplicity);
            }
        }
    }
    Ok(())
}

/// One (label, descent) cell in the requested mode, with the diff when both
/// sides were computed.
fn run_cell(wp: &WeightPair, l: &HighestVectorLabel, d: &DescentTriple, mode: Mode) -> Result<(CgOut, Vec<DiffEntry>), Cg3Error> {
    let (terms, verified, diff) = match mode {
        Mode::Formula => (cg_expansion(l, d, Readings::ADOPTED)?, false, Vec::new()),
        Mode::Oracle => (oracle_expansion(l, d)?.terms, false, Vec::new()),
        Mode::Both => {
            let f = cg_expansion(l, d, Readings::ADOPTED)?;
            let o = oracle_expansion(l, d)?;
            let diff = compare(&f, &o.terms);
            (f, diff.is_empty(), diff)
        }
    };
    let query = QueryOut {
        w1: [wp.w1.m1, wp.w1.m2],
        w2: [wp.w2.m1, wp.w2.m2],
        label: l.selector(),
        descent: [d.t1, d.t2, d.s],
        mode: mode.name().into(),
    };
    Ok((CgOut { query, terms: terms.iter().map(TermOut::from).collect(), verified }, diff))
}

fn cells(wp: &WeightPair, label: Option<[i64; 5]>, descent: Option<[i64; 3]>) -> Result<Vec<(HighestVectorLabel, DescentTriple)>, Failure> {
    let mut labels = match label {
        Some([t, omega, phi, psi, theta]) => {
            let vt = VectorType::from_number(t).map_err(|e| Failure::Usage(e.to_string()))?;
            vec![HighestVectorLabel::from_selector(wp, vt, omega, phi, psi, theta).map_err(|e| Failure::Usage(e.to_string()))?]
        }
        None => enumerate_labels(wp),
    };
    labels.sort_by_key(|l| l.selector());
    let mut out = Vec::new();
    for l in labels {
        match descent {
            Some([t1, t2, s]) => {
                let d = DescentTriple::new(t1, t2, s);
                if target_diagram(&l, &d).is_none() {
                    return Err(Failure::Usage(format!("descent {d} does not reach a valid pattern for {l}")));
                }
                out.push((l, d));
            }
            None => out.extend(valid_descents(&l).into_iter().map(|d| (l, d))),
        }
    }
    Ok(out)
}

fn compute(wp: &WeightPair, cells: &[(HighestVectorLabel, DescentTriple)], mode: Mode) -> Result<(Vec<CgOut>, Vec<String>), Failure> {
    let results: Vec<Result<(CgOut, Vec<DiffEntry>), Cg3Error>> = cells.par_iter().map(|(l, d)| run_cell(wp, l, d, mode)).collect();
    let mut outs = Vec::with_capacity(results.len());
    let mut mismatches = Vec::new();
    for r in results {
        let (out, diff) = r?;
        if !diff.is_empty() {
            let m = MismatchOut { query: &out.query, diff: diff.iter().map(DiffOut::from).collect() };
            mismatches.push(serde_json::to_string(&m).expect("diff serialises"));
        }
        outs.push(out);
    }
    Ok((outs, mismatches))
}

fn pretty(results: &[CgOut]) -> String {
    let mut s = String::new();
    for r in results {
        let q = &r.query;
        let _ = writeln!(s, "label {} descent {} ({}{})", output::join(&q.label), output::join(&q.descent), q.mode, if r.verified { ", verified" } else { "" });
        for t in &r.terms {
            let c = if t.coefficient.den == "1" { t.coefficient.num.clone() } else { format!("{}/{}", t.coefficient.num, t.coefficient.den) };
            let _ = writeln!(s, "  {:>10}  {:?} x {:?}", c, t.diagram_u, t.diagram_v);
        }
    }
    s
}

fn cg(w1: [i64; 2], w2: [i64; 2], label: Option<[i64; 5]>, descent: Option<[i64; 3]>, mode: Mode, format: Format) -> Outcome {
    let wp = weight_pair(w1, w2)?;
    let cells = cells(&wp, label, descent)?;
    let (results, mismatches) = compute(&wp, &cells, mode)?;
    match format {
        Format::Json if results.len() == 1 => print!("{}", to_json(&results[0])),
        Format::Json => print!("{}", to_json(&results)),
        Format::Csv => print!("{}", to_csv(&results)),
        Format::Pretty => print!("{}", pretty(&results)),
    }
    report_mismatches(&mismatches)
}

fn report_mismatches(mismatches: &[String]) -> Outcome {
    if mismatches.is_empty() {
        return Ok(());
    }
    for m in mismatches {
        eprintln!("{m}");
    }
    Err(Failure::Failed(format!("{} cells differ between formula and oracle", mismatches.len())))
}

fn table(w1: [i64; 2], w2: [i64; 2], out: &std::path::Path, format: TableFormat) -> Outcome {
    let wp = weight_pair(w1, w2)?;
    let cells = cells(&wp, None, None)?;
    let (results, mismatches) = compute(&wp, &cells, Mode::Both)?;
    let text = match format {
        TableFormat::Json => to_json(&results),
        TableFormat::Csv => to_csv(&results),
    };
    std::fs::write(out, text).map_err(|e| Failure::Failed(format!("cannot write {}: {e}", out.display())))?;
    println!("wrote {} cells to {}", results.len(), out.display());
    report_mismatches(&mismatches)
}

#[derive(Serialize)]
struct SuiteFailureOut<'a> {
    suite: &'a str,
    failures: &'a [String],
}

fn verify(max_weight: i64, suite: Option<Suite>) -> Outcome {
    if !(0..=6).contains(&max_weight) {
        return Err(Failure::Usage(format!("--max-weight must lie in 0..=6, got {max_weight}")));
    }
    let k = max_weight;
    let selected: Vec<Suite> = match suite {
        Some(s) => vec![s],
        None => vec![Suite::Gamma, Suite::Model, Suite::Highest, Suite::Relations, Suite::Cg, Suite::Readings],
    };
    let mut failed = Vec::new();
    for s in selected {
        let report: Option<SuiteReport> = match s {
            Suite::Gamma => Some(suites::gamma_suite(k)),
            Suite::Model => Some(suites::model_suite(k)),
            Suite::Highest => Some(suites::highest_vector_suite(k)),
            Suite::Relations => Some(suites::relation_suite()),
            Suite::Cg => Some(suites::cg_suite(k)),
            Suite::Sign => Some(suites::sign_rule_suite(k)),
            Suite::Readings => {
                for r in suites::reading_reports(k) {
                    println!("{r}");
                }
                None
            }
        };
        if let Some(r) = report {
            println!("{r}");
            for n in &r.notes {
                println!("  {n}");
            }
            if !r.passed() {
                let shown = &r.failures[..r.failures.len().min(20)];
                println!("{}", serde_json::to_string(&SuiteFailureOut { suite: &r.name, failures: shown }).expect("serialises"));
                failed.push(r.name.clone());
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Failed(format!("failing suites: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_parallelism().and_then(|()| match cli.command {
        Command::Decompose { w1, w2, format } => decompose(w1, w2, format),
        Command::Cg { w1, w2, label, descent, mode, format } => cg(w1, w2, label, descent, mode, format),
        Command::Verify { max_weight, suite } => verify(max_weight, suite),
        Command::Table { w1, w2, out, format } => table(w1, w2, &out, format),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
