//! Command-line front end: cohomology queries, spectrum tables,
//! classification enumeration, verification runs and quiver computations.
//!
//! Exit codes: 0 when everything matches, 1 when a verification run finds a
//! mismatch, 2 for usage errors or computations that could not be decided.
//! Data goes to stdout; diagnostics go to stderr.

pub mod format;

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use delpezzo_core::acm::{classify_laway_lines, FamilyReading};
use delpezzo_core::bundlecalc::{
    default_window, parse_bundle_expr, spectrum, Assumption, AssumptionSet, Window,
};
use delpezzo_core::quiver::{euler_form, moduli_dim, root_type, DimVector, Quiver};
use delpezzo_core::report::Verdict;
use delpezzo_core::{verify_all, verify_theorem, Error, Result, Surface, VerifyParams};

use format::{reports_text, report_text, spectrum_text, Format};

#[derive(Parser)]
#[command(
    name = "delpezzo",
    about = "Exact sheaf cohomology of line and rank-2 bundles on del Pezzo surfaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact (h0, h1, h2) and chi of a line bundle, e.g. `cohom P1xP1 "O(3,-2)"`.
    Cohom {
        /// P2, P1xP1, Bl1, Bl2 or Bl3.
        surface: String,
        /// Divisor in the per-surface syntax O(a), O(a,b) or O(a;b1,...,bn).
        divisor: String,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Cohomology of a bundle expression across a twist window.
    Spectrum {
        surface: String,
        /// Expression, e.g. `ker(omega(3)^2 -> O(2)^2)` or `ext(O(2,0), O(0,2))`.
        expr: String,
        /// Twist window `a..b`; defaults to a window centred on the bundle.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Repeatable vanishing assumption `h0:t<=-1:0:provenance`.
        #[arg(long = "assume", allow_hyphen_values = true)]
        assume: Vec<String>,
        #[arg(long = "l-max", default_value_t = 12)]
        l_max: i64,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Exhaustive classification runs.
    Classify {
        #[command(subcommand)]
        what: ClassifyCmd,
    },
    /// Recompute one published result (or `all`) and report matches and
    /// mismatches.
    Verify {
        /// Registry id such as Q-LINES, P2-KERNEL, or `all`.
        id: String,
        #[arg(long = "l-max", default_value_t = 12)]
        l_max: i64,
        /// Reading of the residue families on Bl1: `strict` or `proof`.
        #[arg(long, default_value = "proof")]
        families: String,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Euler forms and moduli dimensions of quiver dimension vectors.
    Quiver {
        #[command(subcommand)]
        what: QuiverCmd,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Enumerate all l-away line bundles within a coordinate box.
    Lines {
        surface: String,
        #[arg(long)]
        l: i64,
        /// Coordinate bound, a single integer or one per coordinate
        /// (`--bound 17` or `--bound 12,8`); defaults to 3l+9 and 2l+6.
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, default_value = "table")]
        format: String,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// The Euler form of a dimension vector with itself.
    Euler {
        /// Built-in shape: kronecker3 or beilinsonQ.
        #[arg(long)]
        shape: Option<String>,
        /// Inline arrows, e.g. `0>1,0>1,0>1`.
        #[arg(long)]
        arrows: Option<String>,
        /// Dimension vector, integers or expressions in l: `l,l+2`.
        #[arg(long)]
        dim: String,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// `1 - m^2 <d, d>`, the moduli dimension at m copies of d.
    Moduli {
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        arrows: Option<String>,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value = "table")]
        format: String,
    },
}

/// Run the CLI on the given arguments, writing data to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Cohom { surface, divisor, format } => {
            let format = Format::from_name(&format)?;
            let surface = Surface::from_name(&surface)?;
            let d = surface.parse_divisor(&divisor)?;
            let triple = delpezzo_core::linecoh::cohom_line(&surface, &d)?;
            let chi = triple.chi();
            let text = match format {
                Format::Table => format!("{} {} {}  chi={}\n", triple.h0, triple.h1, triple.h2, chi),
                Format::Csv => format!("h0,h1,h2,chi\n{},{},{},{}\n", triple.h0, triple.h1, triple.h2, chi),
                Format::Json => {
                    let v = serde_json::json!({
                        "surface": surface.kind.name(),
                        "divisor": surface.format_divisor(&d),
                        "h0": triple.h0 as i64,
                        "h1": triple.h1 as i64,
                        "h2": triple.h2 as i64,
                        "chi": chi as i64,
                    });
                    format!("{v}\n")
                }
            };
            write_out(out, &text)?;
            Ok(0)
        }
        Command::Spectrum { surface, expr, window, assume, l_max, format } => {
            let format = Format::from_name(&format)?;
            let surface = Surface::from_name(&surface)?;
            let expr = parse_bundle_expr(&expr, &surface)?;
            let window = match window {
                Some(text) => Window::parse(&text)?,
                None => default_window(&surface, &expr, l_max)?,
            };
            let mut assumptions = AssumptionSet::new();
            for flag in &assume {
                assumptions.push(Assumption::parse_flag(flag)?)?;
            }
            let sp = spectrum(&surface, &expr, window, &assumptions)?;
            write_out(out, &spectrum_text(&sp, format))?;
            Ok(0)
        }
        Command::Classify { what } => {
            let ClassifyCmd::Lines { surface, l, bound, format } = what;
            let format = Format::from_name(&format)?;
            let surface = Surface::from_name(&surface)?;
            let bounds: Vec<i64> = match bound {
                Some(text) => text
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::input(format!("bad bound {p:?}")))
                    })
                    .collect::<Result<Vec<i64>>>()?,
                None => {
                    let mut v = vec![3 * l + 9];
                    v.extend(std::iter::repeat_n(2 * l + 6, surface.rank - 1));
                    v
                }
            };
            let classes = classify_laway_lines(&surface, l, &bounds)?;
            let names: Vec<String> = classes.iter().map(|d| surface.format_divisor(d)).collect();
            let text = match format {
                Format::Table => {
                    if names.is_empty() {
                        "(none)\n".to_string()
                    } else {
                        let mut s = names.join("\n");
                        s.push('\n');
                        s
                    }
                }
                Format::Csv => {
                    let mut s = String::from("class\n");
                    for n in &names {
                        s.push_str(n);
                        s.push('\n');
                    }
                    s
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "surface": surface.kind.name(),
                        "l": l,
                        "bounds": bounds,
                        "classes": names,
                    });
                    format!("{v}\n")
                }
            };
            write_out(out, &text)?;
            Ok(0)
        }
        Command::Verify { id, l_max, families, format } => {
            let format = Format::from_name(&format)?;
            let params = VerifyParams {
                l_max,
                families: FamilyReading::from_name(&families)?,
            };
            let reports = if id == "all" {
                verify_all(&params)?
            } else {
                vec![verify_theorem(&id, &params)?]
            };
            let text = if reports.len() == 1 {
                report_text(&reports[0], format)
            } else {
                reports_text(&reports, format)
            };
            write_out(out, &text)?;
            if format == Format::Json && !text.ends_with('\n') {
                write_out(out, "\n")?;
            }
            let any_mismatch = reports.iter().any(|r| r.verdict == Verdict::Mismatch);
            let any_indeterminate = reports.iter().any(|r| r.verdict == Verdict::Indeterminate);
            Ok(if any_mismatch {
                1
            } else if any_indeterminate {
                2
            } else {
                0
            })
        }
        Command::Quiver { what } => {
            let (shape, arrows, dim, l, m, format, is_moduli) = match what {
                QuiverCmd::Euler { shape, arrows, dim, l, format } => {
                    (shape, arrows, dim, l, 1, format, false)
                }
                QuiverCmd::Moduli { shape, arrows, dim, l, m, format } => {
                    (shape, arrows, dim, l, m, format, true)
                }
            };
            let format = Format::from_name(&format)?;
            let quiver = match (shape, arrows) {
                (Some(name), None) => Quiver::by_shape(&name)?,
                (None, Some(text)) => Quiver::parse_arrows(&text)?,
                _ => {
                    return Err(Error::input(
                        "give exactly one of --shape or --arrows".to_string(),
                    ))
                }
            };
            let dims = parse_dim_vector(&dim, l)?;
            let d = DimVector::new(dims)?;
            let form = euler_form(&quiver, &d, &d)?;
            let value = if is_moduli { moduli_dim(&quiver, &d, m)? } else { form };
            let text = match format {
                Format::Table => format!("{value}\n"),
                Format::Csv => {
                    if is_moduli {
                        format!("dim,m,moduli\n\"{d}\",{m},{value}\n")
                    } else {
                        format!("dim,euler\n\"{d}\",{value}\n")
                    }
                }
                Format::Json => {
                    let v = if is_moduli {
                        serde_json::json!({
                            "dim": d.0,
                            "m": m,
                            "moduli_dim": value as i64,
                        })
                    } else {
                        serde_json::json!({
                            "dim": d.0,
                            "euler": value as i64,
                            "root_type": root_type(&quiver, &d)?.to_string(),
                        })
                    };
                    format!("{v}\n")
                }
            };
            write_out(out, &text)?;
            Ok(0)
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::input(format!("write failed: {e}")))
}

/// Parse `l,l+2`-style dimension vectors: each component is an integer or a
/// linear expression `[k][*]l[+/-c]` in the parameter l.
pub fn parse_dim_vector(text: &str, l: Option<i64>) -> Result<Vec<i64>> {
    text.split(',').map(|part| parse_dim_component(part.trim(), l)).collect()
}

fn parse_dim_component(part: &str, l: Option<i64>) -> Result<i64> {
    if part.is_empty() {
        return Err(Error::input("empty dimension component".to_string()));
    }
    if let Ok(n) = part.parse::<i64>() {
        return Ok(n);
    }
    let Some(l_pos) = part.find('l') else {
        return Err(Error::input(format!("bad dimension component {part:?}")));
    };
    let l_value = l.ok_or_else(|| {
        Error::input(format!("component {part:?} uses l, but no --l was given"))
    })?;
    let coeff_text = part[..l_pos].trim_end_matches('*').trim();
    let coeff: i64 = match coeff_text {
        "" => 1,
        "-" => -1,
        other => other
            .parse()
            .map_err(|_| Error::input(format!("bad coefficient in {part:?}")))?,
    };
    let rest = part[l_pos + 1..].trim();
    let offset: i64 = match rest {
        "" => 0,
        other => {
            let normalized = other.replace(' ', "");
            normalized
                .parse()
                .map_err(|_| Error::input(format!("bad offset in {part:?}")))?
        }
    };
    Ok(coeff * l_value + offset)
}
