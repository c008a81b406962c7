use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lensdyn::class_invariants::{invariants, k_a, ClassInvariants};
use lensdyn::esh_ranks::{filtered_ranks, graded_ranks, min_degree};
use lensdyn::frac;
use lensdyn::index_engine::{bott_function, twist_ga, twist_ga_eps, BottFunction, IndexError};
use lensdyn::lens_core::{chern_order, classes, homotopy_class};
use lensdyn::verify::Suite;
use lensdyn::{LensSpace, Rational};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lensdyn", version, about = "Reeb dynamics invariants of lens spaces")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Examples,
    Sharpness,
    Counterexamples,
    Properties,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Per-class table of k_a, h_a, h~_a and positivity.
    #[command(allow_negative_numbers = true)]
    Invariants {
        p: i64,
        #[arg(required = true, num_args = 1..)]
        weights: Vec<i64>,
        #[arg(long)]
        class: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bott function of the twist path over N, as a jump table or step plot.
    #[command(allow_negative_numbers = true)]
    Bott {
        p: i64,
        #[arg(required = true, num_args = 1..)]
        weights: Vec<i64>,
        #[arg(long)]
        class: i64,
        /// Perturbation, e.g. `1/100`.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Equivariant homology ranks for weights all 1.
    Esh {
        n: i64,
        p: i64,
        #[arg(long)]
        class: i64,
        #[arg(long, default_value_t = 1)]
        kmax: i64,
        /// Action bound as a coefficient of pi.
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        scale: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// One JSON line per check.
        #[arg(long)]
        json: bool,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn parse_frac(s: &str, what: &str) -> Result<Rational, Usage> {
    frac::parse(s).ok_or_else(|| Usage(format!("cannot parse {what} `{s}` as a fraction")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Invariants { p, weights, class, format } => cmd_invariants(p, &weights, class, format),
        Cmd::Bott { p, weights, class, eps, format } => cmd_bott(p, &weights, class, eps, format),
        Cmd::Esh { n, p, class, kmax, action, scale, format } => {
            cmd_esh(n, p, class, kmax, action, scale, format)
        }
        Cmd::Verify { suite, json } => return cmd_verify(suite, json),
    };
    match res {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn invariant_row(inv: &ClassInvariants) -> Vec<String> {
    let w: Vec<String> = inv.homotopy_weights.iter().map(|x| x.to_string()).collect();
    vec![
        inv.j.to_string(),
        w.join(" "),
        inv.w_plus.to_string(),
        inv.w_minus.to_string(),
        frac::to_string(&inv.k_a),
        frac::to_string(&inv.h_a),
        frac::to_string(&inv.h_tilde_a),
        inv.positive.to_string(),
        inv.strictly_positive.to_string(),
        inv.chern_order.to_string(),
    ]
}

const INVARIANT_HEADER: [&str; 10] = [
    "j", "weights", "w_plus", "w_minus", "k_a", "h_a", "h_tilde_a", "positive",
    "strictly_positive", "N",
];

fn cmd_invariants(p: i64, weights: &[i64], class: Option<i64>, format: Format) -> Result<String, Usage> {
    if format == Format::Svg {
        return Err(Usage("svg output is only available for `bott`".into()));
    }
    let lens = LensSpace::new(p, weights)?;
    let rows: Vec<ClassInvariants> = match class {
        Some(j) => {
            let a = homotopy_class(&lens, j)?;
            vec![invariants(&lens, &a)?]
        }
        None => classes(&lens)
            .iter()
            .filter(|a| !a.is_trivial())
            .map(|a| invariants(&lens, a))
            .collect::<Result<_, _>>()?,
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            let v = if class.is_some() {
                serde_json::to_value(&rows[0])?
            } else {
                json!({
                    "lens": lens.to_string(),
                    "weights": lens.weights(),
                    "chern_order": chern_order(&lens),
                    "classes": rows,
                })
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            writeln!(out, "{}", INVARIANT_HEADER.join(","))?;
            for r in &rows {
                writeln!(out, "{}", invariant_row(r).join(","))?;
            }
        }
        _ => {
            writeln!(out, "{}", lens)?;
            let table: Vec<Vec<String>> = std::iter::once(INVARIANT_HEADER.map(String::from).to_vec())
                .chain(rows.iter().map(invariant_row))
                .collect();
            let widths: Vec<usize> = (0..INVARIANT_HEADER.len())
                .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
                .collect();
            for r in &table {
                let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                writeln!(out, "{}", cells.join("  ").trim_end())?;
            }
            if !rows.iter().any(|r| r.positive) {
                writeln!(out, "no positive class")?;
            }
        }
    }
    Ok(out)
}

fn cmd_bott(
    p: i64,
    weights: &[i64],
    class: i64,
    eps: Option<String>,
    format: Format,
) -> Result<String, Usage> {
    let lens = LensSpace::new(p, weights)?;
    let a = homotopy_class(&lens, class)?;
    let path = match eps {
        Some(e) => twist_ga_eps(&lens, &a, parse_frac(&e, "eps")?).map_err(|e| match e {
            IndexError::EpsTooLarge { bound } => {
                Usage(format!("eps must lie in (0, {}) for class {class}", frac::to_string(&bound)))
            }
            other => Usage(other.to_string()),
        })?,
        None => twist_ga(&lens, &a)?,
    };
    let b = bott_function(&path);
    let n = chern_order(&lens);
    match format {
        Format::Csv => Ok(bott_csv(&b, n)),
        Format::Svg => Ok(bott_svg(&b, n)),
        _ => Err(Usage("bott supports --format csv or svg".into())),
    }
}

fn bott_csv(b: &BottFunction, n: i64) -> String {
    let sc = |v: u32| frac::to_string(&Rational::new(v as i64, n));
    let mut out = String::from("angle_turns,value,s_plus,s_minus\n");
    for (angle, value, sp, sm) in b.csv_rows(n) {
        let _ = writeln!(out, "{},{},{},{}", frac::to_string(&angle), frac::to_string(&value), sc(sp), sc(sm));
    }
    out
}

fn to_f(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

// Step plot over [0, 1/2] turns. Filled dots mark the value taken at a jump,
// hollow dots the limits it does not take.
fn bott_svg(b: &BottFunction, n: i64) -> String {
    let (w, h, m) = (640.0, 360.0, 40.0);
    let arcs = b.arcs();
    let mut vals: Vec<f64> = arcs.iter().map(|a| a.2 as f64 / n as f64).collect();
    vals.push(b.value_at_one as f64 / n as f64);
    vals.extend(b.jumps.iter().map(|j| b.eval(j.angle) as f64 / n as f64));
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min) - 0.5;
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 0.5;
    let x = |t: f64| m + t * 2.0 * (w - 2.0 * m);
    let y = |v: f64| h - m - (v - lo) / (hi - lo) * (h - 2.0 * m);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="grey"/>"#,
        x(0.0), y(0.0f64.clamp(lo, hi)), x(0.5), y(0.0f64.clamp(lo, hi))
    );
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="12">0</text>"#, x(0.0), h - m / 3.0);
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="12">pi</text>"#, x(0.5), h - m / 3.0);
    let dot = |s: &mut String, t: f64, v: f64, filled: bool| {
        let fill = if filled { "black" } else { "white" };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.1}" cy="{:.1}" r="3.5" fill="{fill}" stroke="black"/>"#,
            x(t),
            y(v)
        );
    };
    for &(a, z, v) in &arcs {
        let v = v as f64 / n as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="2"/>"#,
            x(to_f(a)), y(v), x(to_f(z)), y(v)
        );
        dot(&mut s, to_f(a), v, false);
        if z != Rational::new(1, 2) || b.jumps.last().map_or(false, |j| j.angle == z) {
            dot(&mut s, to_f(z), v, false);
        }
    }
    dot(&mut s, 0.0, b.value_at_one as f64 / n as f64, true);
    for j in &b.jumps {
        dot(&mut s, to_f(j.angle), b.eval(j.angle) as f64 / n as f64, true);
    }
    if b.jumps.last().map_or(true, |j| j.angle != Rational::new(1, 2)) {
        dot(&mut s, 0.5, b.eval(Rational::new(1, 2)) as f64 / n as f64, true);
    }
    s.push_str("</svg>\n");
    s
}

fn cmd_esh(
    n: i64,
    p: i64,
    class: i64,
    kmax: i64,
    action: Option<String>,
    scale: Option<String>,
    format: Format,
) -> Result<String, Usage> {
    if format != Format::Json {
        return Err(Usage("esh supports --format json only".into()));
    }
    let table = match action {
        Some(t) => {
            let bound = parse_frac(&t, "action")?;
            let s = match scale {
                Some(s) => parse_frac(&s, "scale")?,
                None => Rational::from_integer(1),
            };
            filtered_ranks(n, p, class, s, bound)?
        }
        None => {
            if scale.is_some() {
                return Err(Usage("--scale needs --action".into()));
            }
            graded_ranks(n, p, class, kmax)?
        }
    };
    let lens = LensSpace::standard(p, n as usize)?;
    let ka = k_a(&lens, &homotopy_class(&lens, class)?);
    let mut v = table.to_json();
    let min = min_degree(&table).ok();
    v["min_degree"] = min.as_ref().map_or(Value::Null, |d| Value::from(frac::to_string(d)));
    v["k_a"] = Value::from(frac::to_string(&ka));
    v["k_a_match"] = Value::from(min == Some(ka));
    v["total_rank"] = Value::from(table.total_rank());
    Ok(format!("{}\n", serde_json::to_string_pretty(&v)?))
}

fn cmd_verify(suite: SuiteArg, json: bool) -> ExitCode {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Examples => vec![Suite::Examples],
        SuiteArg::Sharpness => vec![Suite::Sharpness],
        SuiteArg::Counterexamples => vec![Suite::Counterexamples],
        SuiteArg::Properties => vec![Suite::Properties],
        SuiteArg::All => Suite::all().to_vec(),
    };
    let mut first_failure = None;
    for s in suites {
        let results = s.run();
        let passed = results.iter().filter(|r| r.passed).count();
        for r in &results {
            if json {
                println!("{}", serde_json::to_string(r).expect("plain struct"));
            }
            if !r.passed && first_failure.is_none() {
                first_failure = Some(r.clone());
            }
        }
        if !json {
            println!("{}: {passed}/{} checks passed", s.name(), results.len());
        }
    }
    match first_failure {
        None => ExitCode::SUCCESS,
        Some(r) => {
            eprintln!("FAILED {}::{}: {}", r.suite, r.name, r.detail);
            ExitCode::from(1)
        }
    }
}
