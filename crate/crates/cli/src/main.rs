use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadmod::extcalc::{ext_all_sheaf_combined, solve_pair, HomFacts, PairExpr};
use quadmod::report::verify_with;
use quadmod::wallfind::{find_walls, ModuliKey, ModuliKind, PairPoly};
use quadmod::{poincare, Dim, LinPoly, PipelineConfig, SheafExpr, SpaceExpr};
use serde_json::json;

#[derive(Parser)]
#[command(name = "quadmod", version, about = "Exact calculators for sheaves and pairs on P1 x P1")]
struct Cli {
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// h0, h1, h2 of a sheaf, e.g. `O(2,-1)` or `(curve 2 3 0 0)`.
    Cohomology {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        sheaf: Vec<String>,
    },
    /// Hilbert polynomial of a sheaf expression.
    Hilbert {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        sheaf: Vec<String>,
    },
    /// dim Ext^i(F, G) for sheaves, or for pairs written `(pair GAMMA SHEAF)`.
    Ext {
        degree: usize,
        #[arg(allow_negative_numbers = true)]
        source: String,
        #[arg(allow_negative_numbers = true)]
        target: String,
    },
    /// Walls of the pair polynomial rm+sn+t with one section, bounded by (R, S).
    Walls {
        #[arg(allow_negative_numbers = true)]
        r: i64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        #[arg(allow_negative_numbers = true)]
        t: i64,
        #[arg(requires = "bound_s", allow_negative_numbers = true)]
        bound_r: Option<i64>,
        #[arg(allow_negative_numbers = true)]
        bound_s: Option<i64>,
    },
    /// Poincaré polynomial of a space expression, e.g. `hilb 3` or `(bundle (proj 11) (hilb 3))`.
    Poincare {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        space: Vec<String>,
    },
    /// Run the full verification suite.
    Verify {
        /// Betti numbers b0,...,b4 of the surface fed to the Hilbert scheme formula.
        #[arg(long, value_delimiter = ',')]
        surface_betti: Option<Vec<u32>>,
        /// Remove the entry for the sheaf moduli space with this polynomial from the table.
        #[arg(long)]
        drop_sheaf_moduli: Vec<String>,
    },
}

struct Usage(String);

struct Output {
    text: String,
    json: serde_json::Value,
    /// False when a verification check failed.
    ok: bool,
}

impl Output {
    fn new(text: String, json: serde_json::Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn parse_sheaf(words: &[String]) -> Result<SheafExpr, Usage> {
    let src = words.join(" ");
    src.parse().map_err(|e| Usage(format!("bad sheaf expression `{src}`: {e}")))
}

fn dim_text(d: Dim) -> String {
    match d {
        Dim::Known(x) => x.to_string(),
        Dim::Unknown => "UNKNOWN".into(),
    }
}

fn run(cmd: Command) -> Result<Output, Usage> {
    match cmd {
        Command::Cohomology { sheaf } => {
            let f = parse_sheaf(&sheaf)?;
            let h = f.h_dims();
            let text = format!("h0 = {}, h1 = {}, h2 = {}", dim_text(h.h0), dim_text(h.h1), dim_text(h.h2));
            Ok(Output::new(text, json!({ "sheaf": f.to_string(), "h0": h.h0, "h1": h.h1, "h2": h.h2 })))
        }
        Command::Hilbert { sheaf } => {
            let f = parse_sheaf(&sheaf)?;
            let p = f.hilbert().to_string();
            Ok(Output::new(p.clone(), json!({ "sheaf": f.to_string(), "hilbert": p })))
        }
        Command::Ext { degree, source, target } => {
            let facts = HomFacts::paper();
            let is_pair = source.trim_start().starts_with("(pair");
            let dim = if is_pair {
                if degree > 3 {
                    return Err(Usage(format!("pair Ext degree must be at most 3, got {degree}")));
                }
                let a: PairExpr = source.parse().map_err(|e| Usage(format!("bad pair `{source}`: {e}")))?;
                let b: PairExpr = target.parse().map_err(|e| Usage(format!("bad pair `{target}`: {e}")))?;
                let r = solve_pair(&a, &b, &facts).map_err(|e| Usage(e.to_string()))?;
                r.pair[degree]
            } else {
                if degree > 2 {
                    return Err(Usage(format!("sheaf Ext degree must be at most 2, got {degree}")));
                }
                let f = parse_sheaf(std::slice::from_ref(&source))?;
                let g = parse_sheaf(std::slice::from_ref(&target))?;
                ext_all_sheaf_combined(&f, &g, &[], &facts).map_err(|e| Usage(e.to_string()))?[degree]
            };
            let json = json!({ "degree": degree, "source": source, "target": target, "dim": dim });
            Ok(Output::new(dim_text(dim), json))
        }
        Command::Walls { r, s, t, bound_r, bound_s } => {
            let whole = LinPoly::new(r, s, t);
            let bounds = (bound_r.unwrap_or(r), bound_s.unwrap_or(s));
            let walls = find_walls(PairPoly::with_section(whole), bounds);
            let text: Vec<String> = walls.iter().map(|w| w.to_string()).collect();
            let text = if text.is_empty() { "no walls".into() } else { text.join(", ") };
            Ok(Output::new(text, json!({ "whole": whole.to_string(), "bounds": [bounds.0, bounds.1], "walls": walls })))
        }
        Command::Poincare { space } => {
            let src = space.join(" ");
            let x: SpaceExpr = src.parse().map_err(|e| Usage(format!("bad space expression `{src}`: {e}")))?;
            let p = poincare(&x).map_err(|e| Usage(e.to_string()))?;
            Ok(Output::new(p.to_string(), json!({ "space": x.to_string(), "poly": p })))
        }
        Command::Verify { surface_betti, drop_sheaf_moduli } => {
            let mut cfg = PipelineConfig::default();
            if let Some(b) = surface_betti {
                if b.len() != 5 {
                    return Err(Usage(format!("--surface-betti takes 5 values, got {}", b.len())));
                }
                cfg.surface_betti.copy_from_slice(&b);
            }
            for p in drop_sheaf_moduli {
                let poly: LinPoly = p.parse().map_err(|e| Usage(format!("bad polynomial `{p}`: {e}")))?;
                cfg.table = cfg.table.without(ModuliKey { poly, kind: ModuliKind::Sheaf });
            }
            let report = verify_with(&cfg);
            let json = serde_json::to_value(&report).expect("report serializes");
            Ok(Output { text: report.to_string(), json, ok: report.ok() })
        }
    }
}

fn emit(out: &Output, format: Format) {
    let body = match format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json"),
    };
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    match run(cli.command) {
        Ok(out) => {
            emit(&out, format);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
