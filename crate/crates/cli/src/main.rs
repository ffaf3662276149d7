//! `osp`: weights, blocks, composition-factor graphs, characters,
//! dimensions and low-degree cohomology of osp(k|2) from the command line.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use osp_core::oracle::verify_sweep;
use osp_core::{
    AtypType, Branch, ChainCase, ChainPosition, Coefficients, Error, Execution, FormalCharacter,
    Osp, PrimitiveGraph, Weight,
};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "osp", version, about = "Representation theory of osp(k|2)")]
struct Cli {
    /// Rank parameter k >= 3 of osp(k|2).
    #[arg(long, global = true)]
    k: Option<i64>,
    /// Output format for structured commands.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Verma,
    Kac,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharKind {
    #[value(name = "L")]
    L,
    #[value(name = "K")]
    K,
    #[value(name = "V")]
    V,
}

#[derive(Clone, Copy, ValueEnum)]
enum DimKind {
    #[value(name = "L")]
    L,
    #[value(name = "K")]
    K,
}

#[derive(Subcommand)]
enum Command {
    /// Flags, atypical data and chain position of a weight.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// The chain weights λ⁽ⁱ⁾ of a block for |i| <= n.
    Chain {
        /// Atypicality type, e.g. "9/2,3/2" (empty for k = 3, 4 ... m = 1).
        #[arg(long = "type", allow_hyphen_values = true, conflicts_with = "weight")]
        lambda_bar: Option<String>,
        /// Any weight of the block instead of its type.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
    /// Primitive weight graph of a generalised Verma or Kac module.
    Graph {
        #[arg(long, value_enum)]
        module: GraphKind,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Truncated formal character of L, K or V.
    Char {
        #[arg(long, value_enum)]
        module: CharKind,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Window depth below λ₀ (default 2λ₀+2 for g-dominant λ, else 10).
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Dimension of L or K (prints a bare integer).
    Dim {
        #[arg(long, value_enum)]
        module: DimKind,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// dim H^degree with coefficients in L or K (prints a bare integer).
    Cohomology {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum)]
        coeff: DimKind,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Block consistency harness; exits 4 unless every check passes.
    Verify {
        #[arg(long = "type", allow_hyphen_values = true)]
        lambda_bar: Option<String>,
        /// Sweep every type with entries up to this bound instead, e.g. "9/2".
        #[arg(long, conflicts_with = "lambda_bar")]
        max_entry: Option<String>,
        #[arg(long, default_value_t = 2)]
        i_max: u32,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[arg(long)]
        sequential: bool,
    },
}

enum Output {
    Json(Value),
    Text(String),
    /// Printed like `Json`, but exits with the internal-failure code.
    Failed(Value),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let (value, code) = match out {
                Output::Text(s) => {
                    println!("{s}");
                    return ExitCode::SUCCESS;
                }
                Output::Json(v) => (v, ExitCode::SUCCESS),
                Output::Failed(v) => (v, ExitCode::from(EXIT_INTERNAL)),
            };
            match cli.format {
                Format::Json => println!("{value}"),
                Format::Text => print!("{}", to_text(&value, 0)),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() {
                EXIT_USAGE
            } else if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_DOMAIN
            })
        }
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(1));
    }
    v
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let k = cli.k.ok_or_else(|| Error::Parse {
        input: "--k".into(),
        reason: "missing; every command needs --k <k> with k >= 3".into(),
    })?;
    let osp = Osp::new(k)?;
    let out = match &cli.command {
        Command::Analyze { weight } => Output::Json(analyze(&osp, &osp.parse_weight(weight)?)?),
        Command::Chain {
            lambda_bar,
            weight,
            n,
        } => {
            let bar = match (lambda_bar, weight) {
                (Some(t), _) => AtypType::parse(&osp, t)?,
                (None, Some(w)) => osp.chain_index(&osp.parse_weight(w)?)?.0,
                (None, None) => AtypType::parse(&osp, "")?,
            };
            Output::Json(chain(&osp, &bar, *n)?)
        }
        Command::Graph { module, weight } => {
            let w = osp.parse_weight(weight)?;
            let g = match module {
                GraphKind::Verma => osp.verma_graph(&w)?,
                GraphKind::Kac => osp.kac_graph(&w)?,
            };
            Output::Json(graph_json(&g))
        }
        Command::Char {
            module,
            weight,
            depth,
        } => {
            let w = osp.parse_weight(weight)?;
            let depth = depth.unwrap_or_else(|| default_depth(&osp, &w));
            let ch = match module {
                CharKind::L => osp.ch_l(&w, depth)?,
                CharKind::K => osp.ch_k(&w, depth)?,
                CharKind::V => osp.verma_char(&w, depth)?,
            };
            Output::Json(char_json(&w, depth, &ch))
        }
        Command::Dim { module, weight } => {
            let w = osp.parse_weight(weight)?;
            let d = match module {
                DimKind::L => osp.dim_l(&w)?,
                DimKind::K => osp.dim_k(&w)?,
            };
            Output::Text(d.to_string())
        }
        Command::Cohomology {
            degree,
            coeff,
            weight,
        } => {
            let w = osp.parse_weight(weight)?;
            let c = match coeff {
                DimKind::L => Coefficients::Irreducible,
                DimKind::K => Coefficients::Kac,
            };
            Output::Text(osp.cohomology_dim(*degree, c, &w)?.to_string())
        }
        Command::Verify {
            lambda_bar,
            max_entry,
            i_max,
            depth,
            sequential,
        } => {
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let reports = match max_entry {
                Some(e) => {
                    let e: osp_core::HalfInt = e.parse()?;
                    verify_sweep(&[k], e.twice(), *i_max, *depth, exec)?
                }
                None => {
                    let bar = AtypType::parse(&osp, lambda_bar.as_deref().unwrap_or(""))?;
                    vec![osp.verify_block(&bar, *i_max, *depth, exec)?]
                }
            };
            let ok = reports.iter().all(|r| r.all_pass());
            let v = with_schema(json!({
                "all_pass": ok,
                "blocks": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            }));
            if ok {
                Output::Json(v)
            } else {
                Output::Failed(v)
            }
        }
    };
    Ok(out)
}

fn default_depth(osp: &Osp, w: &Weight) -> u32 {
    if osp.is_g_dominant(w) {
        (w.twice()[0] + 2).max(0) as u32
    } else {
        10
    }
}

fn analyze(osp: &Osp, w: &Weight) -> Result<Value, Error> {
    let flags = osp.classify(w)?;
    let mut v = json!({
        "k": osp.k(),
        "weight": w.to_string(),
        "rho_shifted": osp.rho_shift(w).to_string(),
        "flags": flags,
        "sigma_dual": osp.sigma_dual(w).to_string(),
    });
    if flags.integral && flags.g0_dominant {
        if let Some(d) = osp.atypical_data(w)? {
            let (_, pos) = osp.chain_index(w)?;
            let map = v.as_object_mut().expect("object");
            map.insert("atypical_root".into(), json!(d.root.to_string()));
            map.insert("tail".into(), json!(d.tail));
            map.insert("lambda_bar".into(), json!(d.lambda_bar.to_string()));
            map.insert("raise".into(), json!(osp.raise(w)?.to_string()));
            map.insert("lower".into(), json!(osp.lower(w)?.to_string()));
            map.insert(
                "chain".into(),
                json!({"index": pos.index, "branch": pos.branch.to_string()}),
            );
        }
    }
    Ok(with_schema(v))
}

fn chain(osp: &Osp, bar: &AtypType, n: u32) -> Result<Value, Error> {
    let case = osp.chain_case(bar);
    let mut rows = Vec::new();
    let n = n as i64;
    for i in (-n..=n).rev() {
        let branches: &[Branch] = match case {
            ChainCase::Split if i != 0 => &[Branch::Plus, Branch::Minus],
            _ => &[Branch::None],
        };
        for &b in branches {
            let w = osp.chain_weight(bar, ChainPosition::new(i, b))?;
            rows.push(json!({
                "index": i,
                "branch": b.to_string(),
                "weight": w.to_string(),
                "rho_shifted": osp.rho_shift(&w).to_string(),
                "g_dominant": osp.is_g_dominant(&w),
            }));
        }
    }
    Ok(with_schema(json!({
        "k": osp.k(),
        "lambda_bar": bar.to_string(),
        "case": format!("{case:?}").to_lowercase(),
        "chain": rows,
    })))
}

fn graph_json(g: &PrimitiveGraph) -> Value {
    let mut v = g.to_json();
    v.as_object_mut()
        .expect("object")
        .insert("lambda_bar".into(), json!(g.lambda_bar.to_string()));
    with_schema(v)
}

fn char_json(w: &Weight, depth: u32, ch: &FormalCharacter) -> Value {
    with_schema(json!({
        "weight": w.to_string(),
        "depth": depth,
        "total_multiplicity": ch.total_multiplicity(),
        "terms": ch.to_json(),
    }))
}

/// Indented `key: value` lines for `--format text`.
fn to_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (key, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{key}:\n{}", to_text(x, indent + 1)));
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n{}", to_text(x, indent + 1)));
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
