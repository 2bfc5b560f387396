use std::fmt::Write as _;
use std::io::Read;
use std::time::{Duration, Instant};

use prefixcode::codec::{check_glyphs, parse_letters, render_letters};
use prefixcode::{
    assign_codewords, brute_force_optimal, compute_optimal, naive_scan, parse_cost_list, scan,
    CodeDocument, CodecError, DocumentError, EngineError, Instance, ModelError, Options,
    OracleError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::{BenchArgs, CodecArgs, Format, SolveArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    /// `report` is the normal output, still printed so the mismatch can be
    /// inspected.
    #[error("{detail}")]
    OracleMismatch { report: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
            CliError::OracleMismatch { .. } => 3,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Usage(format!("bad code document: {e}"))
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Model(m) => m.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn split_glyphs(raw: Option<&str>, r: usize) -> Result<Option<Vec<String>>, CliError> {
    let Some(raw) = raw else { return Ok(None) };
    let glyphs: Vec<String> = raw.split(',').map(str::to_owned).collect();
    check_glyphs(&glyphs, r)?;
    Ok(Some(glyphs))
}

fn parse_instance(costs: &str, n: usize) -> Result<Instance, CliError> {
    Ok(Instance::new(&parse_cost_list(costs)?, n)?)
}

pub fn run_solve(args: &SolveArgs) -> Result<String, CliError> {
    let inst = parse_instance(&args.costs, args.n)?;
    let glyphs = split_glyphs(args.glyphs.as_deref(), inst.r())?;
    let sol = compute_optimal(
        &inst,
        Options {
            early_stop: args.early_stop,
        },
    )?;
    let code = assign_codewords(&sol.tree, &inst)
        .map_err(|e| CliError::Internal(format!("optimal tree rejected: {e}")))?;
    if code.total_length() != sol.optimal_cost {
        return Err(CliError::Internal(
            "codeword lengths disagree with the tree cost".into(),
        ));
    }

    let mut doc = CodeDocument::new(&inst, &sol, &code);
    if args.emit_tree {
        doc = doc.with_tree(&sol.tree);
    }

    let mut notes = Vec::new();
    let mut mismatch = None;
    if args.verify_oracle {
        match brute_force_optimal(&inst, args.oracle_budget) {
            Ok(res) if res.cost == sol.optimal_cost => notes.push(format!(
                "oracle: match ({} search nodes)",
                res.nodes_explored
            )),
            Ok(res) => {
                let msg = format!(
                    "oracle mismatch: engine {} vs exhaustive search {}",
                    sol.optimal_cost, res.cost
                );
                notes.push(msg.clone());
                mismatch = Some(msg);
            }
            Err(OracleError::BudgetExceeded(b)) => {
                eprintln!("warning: oracle skipped, search budget of {b} nodes exceeded");
                notes.push("oracle: skipped (budget exceeded)".into());
            }
        }
    }

    let report = match args.format {
        Format::Json => {
            let mut s = doc.to_json();
            s.push('\n');
            s
        }
        Format::Text => render_text(&doc, args.trace, glyphs.as_deref(), &notes),
    };

    let report = match &args.out {
        Some(path) => {
            std::fs::write(path, &report)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            String::new()
        }
        None => report,
    };
    match mismatch {
        Some(detail) => Err(CliError::OracleMismatch { report, detail }),
        None => Ok(report),
    }
}

fn render_text(
    doc: &CodeDocument,
    trace: bool,
    glyphs: Option<&[String]>,
    notes: &[String],
) -> String {
    let mut out = String::new();
    let costs: Vec<String> = doc.costs.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "letter costs: {}", costs.join(","));
    if doc.numerator != 1 || doc.denominator != 1 {
        let _ = writeln!(out, "cost unit: {}/{}", doc.numerator, doc.denominator);
    }
    let _ = writeln!(out, "words: {}", doc.n);
    let _ = writeln!(out, "optimal cost: {}", doc.optimal_cost);
    let _ = writeln!(out, "optimal m: {}", doc.optimal_m);
    if trace {
        let _ = writeln!(out, "trace:");
        for p in &doc.trace {
            let _ = writeln!(out, "  m={} cost={}", p.m, p.cost);
        }
    }
    let _ = writeln!(out, "codewords:");
    let width = doc.n.saturating_sub(1).to_string().len();
    for cw in &doc.codewords {
        let word = render_letters(&cw.letters, glyphs);
        let word = if word.is_empty() {
            "(empty)".into()
        } else {
            word
        };
        let _ = writeln!(
            out,
            "  {:>width$}  {:>6}  {}",
            cw.symbol,
            cw.length.to_string(),
            word
        );
    }
    if let Some(tree) = &doc.tree {
        let _ = writeln!(out, "tree:");
        for (rank, nt) in tree.non_terminals.iter().enumerate() {
            if rank == 0 {
                let _ = writeln!(out, "  node 1 = root");
                continue;
            }
            let _ = writeln!(
                out,
                "  node {} = child {} of {} at depth {}",
                rank + 1,
                nt.child,
                nt.parent,
                nt.depth
            );
        }
        for t in &tree.terminals {
            let _ = writeln!(
                out,
                "  leaf child {} of {} at depth {}",
                t.child, t.parent, t.depth
            );
        }
    }
    for note in notes {
        let _ = writeln!(out, "{note}");
    }
    out
}

pub enum Direction {
    Encode,
    Decode,
}

pub fn run_codec(args: &CodecArgs, dir: Direction) -> Result<String, CliError> {
    let bytes = std::fs::read(&args.code)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.code.display())))?;
    let doc = CodeDocument::from_json(&bytes)?;
    let code = doc.to_code()?;
    let glyphs = split_glyphs(args.glyphs.as_deref(), code.instance().r())?;

    let input = if args.input.is_empty() {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        args.input.join(" ")
    };

    match dir {
        Direction::Encode => {
            let symbols = input
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("not a symbol index: {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let letters = code.encode(&symbols)?;
            Ok(format!("{}\n", render_letters(&letters, glyphs.as_deref())))
        }
        Direction::Decode => {
            let letters = parse_letters(&input, glyphs.as_deref(), code.instance().r())?;
            let symbols = code.decode(&letters)?;
            let text: Vec<String> = symbols.iter().map(usize::to_string).collect();
            Ok(format!("{}\n", text.join(" ")))
        }
    }
}

fn parse_n_range(raw: &str, points: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad word count or range: {raw:?}"));
    let Some((a, b)) = raw.split_once("..") else {
        return Ok(vec![raw.trim().parse().map_err(|_| bad())?]);
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b < a || points == 0 {
        return Err(bad());
    }
    if points == 1 || a == b {
        return Ok(vec![b]);
    }
    let ratio = (b as f64 / a as f64).powf(1.0 / (points - 1) as f64);
    let mut ns: Vec<usize> = (0..points)
        .map(|k| (a as f64 * ratio.powi(k as i32)).round() as usize)
        .map(|x| x.clamp(a, b))
        .collect();
    *ns.last_mut().unwrap() = b;
    ns.dedup();
    Ok(ns)
}

struct BenchRow {
    n: usize,
    engine_cost: u128,
    naive_cost: u128,
    engine_time: Duration,
    naive_time: Duration,
    replacements: u64,
    degree_bound: u64,
}

pub fn run_bench(args: &BenchArgs) -> Result<String, CliError> {
    let ns = parse_n_range(&args.n, args.points)?;
    let first_n = ns[0].max(1);
    let base = match (&args.costs, args.random_letters) {
        (Some(costs), None) => parse_instance(costs, first_n)?,
        (None, Some(r)) => {
            if args.max_cost == 0 {
                return Err(CliError::Usage("--max-cost must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let costs: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=args.max_cost)).collect();
            Instance::from_integers(&costs, first_n)?
        }
        _ => {
            return Err(CliError::Usage(
                "give either --costs or --random-letters".into(),
            ))
        }
    };

    let mut rows = Vec::new();
    for &n in &ns {
        let inst = base.with_n(n)?;
        let t = Instant::now();
        let run = scan(&inst, Options::default())?;
        let engine_time = t.elapsed();
        let t = Instant::now();
        let naive = naive_scan(&inst)?;
        let naive_time = t.elapsed();
        let row = BenchRow {
            n,
            engine_cost: run.best().cost.get(),
            naive_cost: naive.optimal_cost().get(),
            engine_time,
            naive_time,
            replacements: run.replacements,
            degree_bound: run.trace.iter().map(|e| e.degree as u64).sum(),
        };
        if row.engine_cost != row.naive_cost {
            return Err(CliError::Internal(format!(
                "n={n}: engine cost {} but baseline cost {}",
                row.engine_cost, row.naive_cost
            )));
        }
        rows.push(row);
    }

    Ok(match args.format {
        Format::Json => {
            let runs: Vec<_> = rows
                .iter()
                .map(|row| {
                    json!({
                        "n": row.n,
                        "engine_cost": row.engine_cost,
                        "naive_cost": row.naive_cost,
                        "engine_seconds": row.engine_time.as_secs_f64(),
                        "naive_seconds": row.naive_time.as_secs_f64(),
                        "replacements": row.replacements,
                        "degree_bound": row.degree_bound,
                    })
                })
                .collect();
            let doc = json!({
                "costs": base.costs(),
                "denominator": base.scale_denom(),
                "runs": runs,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("json value")
            )
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "r = {}", base.r());
            let _ = writeln!(
                out,
                "{:>10} {:>14} {:>12} {:>12} {:>12} {:>12}",
                "n", "cost", "engine ms", "naive ms", "swaps", "sum d_m"
            );
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{:>10} {:>14} {:>12.3} {:>12.3} {:>12} {:>12}",
                    row.n,
                    row.engine_cost,
                    row.engine_time.as_secs_f64() * 1e3,
                    row.naive_time.as_secs_f64() * 1e3,
                    row.replacements,
                    row.degree_bound
                );
            }
            out
        }
    })
}
