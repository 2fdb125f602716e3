use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use pqpoly::generating_functions::{
    fib_genfunc_closed, fib_genfunc_definitional, lucas_genfunc_closed,
    lucas_genfunc_definitional,
};
use pqpoly::polynomials::{
    classical_number_formula, fibonacci_number, fibonacci_poly, lucas_number, lucas_poly,
};
use pqpoly::scalar::Rat;
use pqpoly::verify::{format_report, run_suite, Suite};
use pqpoly::{Family, PQParams};
use serde_json::{json, Map, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pqpoly", version, about = "Two-parameter deformed Fibonacci and Lucas polynomials")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Fib,
    Lucas,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Fib => Family::Fibonacci,
            FamilyArg::Lucas => Family::Lucas,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Binomials,
    Recursions,
    Hypergeometric,
    Genfunc,
    Fourier,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Binomials => Suite::Binomials,
            SuiteArg::Recursions => Suite::Recursions,
            SuiteArg::Hypergeometric => Suite::Hypergeometric,
            SuiteArg::Genfunc => Suite::Genfunc,
            SuiteArg::Fourier => Suite::Fourier,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients (and optionally the value at x) of F_n or L_n
    Eval {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        x: Option<String>,
        /// exact takes integer or NUM/DEN literals; float takes decimals
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Table of the number specializations F_n(p,q) or L_n(p,q), n <= n_max
    Numbers {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Definitional vs closed-form generating-function coefficients
    Genfunc {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        order: usize,
    },
    /// Run a verification suite; exit 1 if any check fails
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
}

struct UsageError(String);

fn parse_exact(name: &str, text: &str) -> Result<Rat, UsageError> {
    if text.contains('.') {
        return Err(UsageError(format!(
            "{name}: decimal literal '{text}' not allowed in exact mode (use NUM/DEN)"
        )));
    }
    text.parse::<Rat>()
        .map_err(|_| UsageError(format!("{name}: cannot parse '{text}' as a rational")))
}

fn parse_float(name: &str, text: &str) -> Result<f64, UsageError> {
    if text.contains('/') {
        return Err(UsageError(format!(
            "{name}: rational literal '{text}' not allowed in float mode (use a decimal)"
        )));
    }
    text.parse::<f64>()
        .map_err(|_| UsageError(format!("{name}: cannot parse '{text}' as a number")))
}

fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct Output {
    command: &'static str,
    inputs: Map<String, Value>,
    results: Value,
    /// (header, rows) for CSV rendering
    csv: (Vec<&'static str>, Vec<Vec<String>>),
    plain: String,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let record = json!({
                    "command": self.command,
                    "inputs": Value::Object(self.inputs.clone()),
                    "results": self.results,
                    "version": env!("CARGO_PKG_VERSION"),
                });
                serde_json::to_string_pretty(&record).expect("serializable") + "\n"
            }
            Format::Csv => {
                let mut s = self.csv.0.join(",") + "\n";
                for row in &self.csv.1 {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Plain => self.plain.clone(),
        }
    }
}

fn inputs_from(pairs: &[(&str, String)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect()
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Fibonacci => "fibonacci",
        Family::Lucas => "lucas",
    }
}

fn cmd_eval(
    family: Family,
    n: u32,
    p: &str,
    q: &str,
    s: &str,
    x: Option<&str>,
    mode: Mode,
) -> Result<Output, UsageError> {
    let mut inputs = vec![
        ("family", family_name(family).to_string()),
        ("n", n.to_string()),
        ("p", p.to_string()),
        ("q", q.to_string()),
        ("s", s.to_string()),
    ];
    if let Some(x) = x {
        inputs.push(("x", x.to_string()));
    }
    inputs.push((
        "mode",
        match mode {
            Mode::Exact => "exact".to_string(),
            Mode::Float => "float".to_string(),
        },
    ));

    // (power, coefficient-as-string, coefficient-as-json) triples
    let (entries, value): (Vec<(usize, String, Value)>, Option<(String, Value)>) = match mode {
        Mode::Exact => {
            let params = PQParams::new(parse_exact("p", p)?, parse_exact("q", q)?)
                .map_err(|e| UsageError(e.to_string()))?;
            let sv = parse_exact("s", s)?;
            let poly = match family {
                Family::Fibonacci => fibonacci_poly(n, &params, &sv),
                Family::Lucas => lucas_poly(n, &params, &sv),
            };
            let entries = poly
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, rat_str(c), Value::String(rat_str(c))))
                .collect();
            let value = match x {
                Some(x) => {
                    let v = poly.eval(&parse_exact("x", x)?);
                    Some((rat_str(&v), Value::String(rat_str(&v))))
                }
                None => None,
            };
            (entries, value)
        }
        Mode::Float => {
            let params = PQParams::new(parse_float("p", p)?, parse_float("q", q)?)
                .map_err(|e| UsageError(e.to_string()))?;
            let sv = parse_float("s", s)?;
            let poly = match family {
                Family::Fibonacci => fibonacci_poly(n, &params, &sv),
                Family::Lucas => lucas_poly(n, &params, &sv),
            };
            let entries = poly
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(|(k, c)| (k, format!("{c}"), json!(c)))
                .collect();
            let value = match x {
                Some(x) => {
                    let v = poly.eval(&parse_float("x", x)?);
                    Some((format!("{v}"), json!(v)))
                }
                None => None,
            };
            (entries, value)
        }
    };

    let mut coeff_map = Map::new();
    for (k, _, v) in &entries {
        coeff_map.insert(k.to_string(), v.clone());
    }
    let mut results = Map::new();
    results.insert("coefficients".into(), Value::Object(coeff_map));
    if let Some((_, v)) = &value {
        results.insert("value".into(), v.clone());
    }

    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(k, text, _)| vec![k.to_string(), text.clone()])
        .collect();
    let mut plain = format!("{} n={}\n", family_name(family), n);
    if entries.is_empty() {
        plain.push_str("zero polynomial\n");
    }
    for (k, text, _) in &entries {
        plain.push_str(&format!("x^{k}: {text}\n"));
    }
    if let Some((text, _)) = &value {
        plain.push_str(&format!("value: {text}\n"));
    }

    Ok(Output {
        command: "eval",
        inputs: inputs_from(&inputs),
        results: Value::Object(results),
        csv: (vec!["power", "coefficient"], rows),
        plain,
    })
}

fn cmd_numbers(family: Family, n_max: u32, p: &str, q: &str) -> Result<Output, UsageError> {
    let params = PQParams::new(parse_exact("p", p)?, parse_exact("q", q)?)
        .map_err(|e| UsageError(e.to_string()))?;
    let classical_regime = params.p().is_one() && params.q().is_one();

    let mut rows = Vec::new();
    let mut values = Vec::new();
    let mut classical = Vec::new();
    for n in 0..=n_max {
        let v = match family {
            Family::Fibonacci => fibonacci_number(n, &params),
            Family::Lucas => lucas_number(n, &params),
        };
        let mut row = vec![n.to_string(), rat_str(&v)];
        if classical_regime {
            // The binomial-sum Lucas formula returns 2 at n = 0, where this
            // library's convention is L_0 = 1; skip the cross-check there.
            let c = if family == Family::Lucas && n == 0 {
                v.clone()
            } else {
                classical_number_formula(family, n)
            };
            debug_assert_eq!(c, v);
            row.push(rat_str(&c));
            classical.push(Value::String(rat_str(&c)));
        }
        values.push(Value::String(rat_str(&v)));
        rows.push(row);
    }

    let mut results = Map::new();
    results.insert("values".into(), Value::Array(values));
    if classical_regime {
        results.insert("classical".into(), Value::Array(classical));
    }

    let mut plain = String::new();
    for row in &rows {
        plain.push_str(&row.join("\t"));
        plain.push('\n');
    }
    let header = if classical_regime {
        vec!["n", "value", "classical"]
    } else {
        vec!["n", "value"]
    };
    Ok(Output {
        command: "numbers",
        inputs: inputs_from(&[
            ("family", family_name(family).to_string()),
            ("n_max", n_max.to_string()),
            ("p", p.to_string()),
            ("q", q.to_string()),
        ]),
        results: Value::Object(results),
        csv: (header, rows),
        plain,
    })
}

fn cmd_genfunc(
    family: Family,
    p: &str,
    q: &str,
    s: &str,
    x: &str,
    order: usize,
) -> Result<Output, UsageError> {
    if order > 64 {
        return Err(UsageError("order must be at most 64".into()));
    }
    let params = PQParams::new(parse_exact("p", p)?, parse_exact("q", q)?)
        .map_err(|e| UsageError(e.to_string()))?;
    let sv = parse_exact("s", s)?;
    let xv = parse_exact("x", x)?;
    let (definitional, closed) = match family {
        Family::Fibonacci => (
            fib_genfunc_definitional(&xv, &sv, &params, order),
            fib_genfunc_closed(&xv, &sv, &params, order),
        ),
        Family::Lucas => (
            lucas_genfunc_definitional(&xv, &sv, &params, order),
            lucas_genfunc_closed(&xv, &sv, &params, order),
        ),
    };
    let matches = definitional == closed;

    let rows: Vec<Vec<String>> = (0..=order)
        .map(|n| {
            vec![
                n.to_string(),
                rat_str(&definitional.coeff(n)),
                rat_str(&closed.coeff(n)),
            ]
        })
        .collect();
    let results = json!({
        "definitional": definitional.coeffs().iter().map(rat_str).collect::<Vec<_>>(),
        "closed": closed.coeffs().iter().map(rat_str).collect::<Vec<_>>(),
        "match": matches,
    });
    let mut plain = String::new();
    for row in &rows {
        plain.push_str(&row.join("\t"));
        plain.push('\n');
    }
    plain.push_str(if matches { "match: true\n" } else { "match: false\n" });
    Ok(Output {
        command: "genfunc",
        inputs: inputs_from(&[
            ("family", family_name(family).to_string()),
            ("p", p.to_string()),
            ("q", q.to_string()),
            ("s", s.to_string()),
            ("x", x.to_string()),
            ("order", order.to_string()),
        ]),
        results,
        csv: (vec!["n", "definitional", "closed"], rows),
        plain,
    })
}

fn cmd_verify(suite: Suite, seed: u64, n_max: u32) -> (Output, bool) {
    let report = run_suite(suite, seed, n_max);
    let passed = report.passed();
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.id.to_string(),
                c.cases.to_string(),
                c.failures.to_string(),
                format!("{:e}", c.max_residual),
                c.passed.to_string(),
            ]
        })
        .collect();
    let suite_name = serde_json::to_value(suite)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let output = Output {
        command: "verify",
        inputs: inputs_from(&[
            ("suite", suite_name),
            ("seed", seed.to_string()),
            ("n_max", n_max.to_string()),
        ]),
        results: serde_json::to_value(&report).expect("serializable"),
        csv: (
            vec!["id", "cases", "failures", "max_residual", "passed"],
            rows,
        ),
        plain: format_report(&report),
    };
    (output, passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(Output, bool), UsageError> = match &cli.command {
        Command::Eval {
            family,
            n,
            p,
            q,
            s,
            x,
            mode,
        } => cmd_eval((*family).into(), *n, p, q, s, x.as_deref(), *mode).map(|o| (o, true)),
        Command::Numbers { family, n_max, p, q } => {
            cmd_numbers((*family).into(), *n_max, p, q).map(|o| (o, true))
        }
        Command::Genfunc {
            family,
            p,
            q,
            s,
            x,
            order,
        } => cmd_genfunc((*family).into(), p, q, s, x, *order).map(|o| (o, true)),
        Command::Verify { suite, seed, n_max } => Ok(cmd_verify((*suite).into(), *seed, *n_max)),
    };
    match result {
        Ok((output, passed)) => {
            print!("{}", output.render(cli.format));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
