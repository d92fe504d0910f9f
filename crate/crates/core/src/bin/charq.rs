use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use charq::invariants::{hilbert_invariants, CharacterSource, GroupSpec};
use charq::reconstruct::{
    expand_hilbert_serre, find_recurrence, fit_numerator, search_denominators, FitReport,
    FittedForm, DEFAULT_GUARD, SEARCH_MAX_PART, SEARCH_MAX_SUM,
};
use charq::worked::{
    detect_eventual_period, fhl_series, nagata_series, semigroup_differences, QuadraticIrrational,
};
use charq::{schur_expand, CharacterSeries, Error, IntSeries, LaurentPoly, NiceRational};

const EXIT_INPUT: u8 = 1;
const EXIT_NO_FIT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "charq",
    version,
    about = "Exact Hilbert series of invariants via formal characters"
)]
struct Cli {
    /// Truncation order in q.
    #[arg(long, global = true, env = "CHARQ_ORDER", default_value_t = charq::DEFAULT_ORDER)]
    order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a nice rational function by q-degree.
    Series {
        /// Nice rational function JSON ("-" for stdin).
        input: Option<PathBuf>,
        /// Apply t_i -> t_i q before expanding.
        #[arg(long)]
        substitute: bool,
        /// Character of the tensor algebra on N generators instead of a file.
        #[arg(long, value_name = "N", conflicts_with_all = ["input", "substitute"])]
        free_algebra: Option<usize>,
    },
    /// Schur expansion of a symmetric Laurent polynomial.
    Schur { input: PathBuf },
    /// Symmetrized decomposition of a nice rational function.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        substitute: bool,
    },
    /// Hilbert series of the invariants of a group acting on a graded representation.
    Invariants {
        /// Nice rational function, character series, or generator JSON.
        input: PathBuf,
        /// Group spec JSON.
        group: PathBuf,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Fit P(q) / prod (1 - q^d) to an integer series.
    Fit {
        input: PathBuf,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Reproduce a built-in computation and compare with its known value.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Window for the semigroup periodicity search.
        #[arg(long, default_value_t = 500)]
        window: usize,
        /// Largest period tried by the semigroup demo.
        #[arg(long, default_value_t = 50)]
        max_period: usize,
        /// beta for the semigroup demo, as p/q or a,b,c,d meaning (a + b sqrt(d))/c.
        #[arg(long, default_value = "2,-1,1,2")]
        beta: String,
    },
}

#[derive(clap::Args, Debug)]
struct FitArgs {
    /// Denominator degrees, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..), conflicts_with = "search")]
    degs: Option<Vec<u32>>,
    /// Search denominator multisets by increasing total degree.
    #[arg(long)]
    search: bool,
    /// Trailing cleared coefficients that must vanish.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DemoName {
    Nagata,
    Catalan,
    Unipotent,
    Fhl,
    Semigroup,
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn read_input(path: &Path) -> Result<String, Error> {
    let mut buf = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut buf).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| buf = s)
    };
    res.map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    serde_json::from_str(&read_input(path)?)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn series_text(ch: &CharacterSeries) -> String {
    let mut out = String::new();
    for (d, c) in ch.coeffs().iter().enumerate() {
        let _ = writeln!(out, "q^{d}: {c}");
    }
    out
}

fn cmd_series(
    order: usize,
    input: Option<&Path>,
    substitute: bool,
    free: Option<usize>,
) -> Result<Output, Error> {
    let ch = match (free, input) {
        (Some(n), _) => CharacterSource::FreeAlgebra { vars: n.max(1) }.character(order)?,
        (None, Some(path)) => {
            let mut f: NiceRational = parse(path)?;
            if substitute {
                f = f.substitute_tq()?;
            }
            f.series(order)?
        }
        (None, None) => {
            return Err(Error::InvalidInput(
                "give an input file or --free-algebra".into(),
            ))
        }
    };
    Ok(Output {
        text: series_text(&ch),
        json: to_json(&ch),
        code: 0,
    })
}

fn cmd_schur(input: &Path) -> Result<Output, Error> {
    let p: LaurentPoly = parse(input)?;
    let e = schur_expand(&p)?;
    Ok(Output {
        text: format!("{e}\n"),
        json: to_json(&e),
        code: 0,
    })
}

fn cmd_decompose(input: &Path, substitute: bool) -> Result<Output, Error> {
    let mut f: NiceRational = parse(input)?;
    if substitute {
        f = f.substitute_tq()?;
    }
    let d = f.decompose()?;
    Ok(Output {
        text: format!("{d}\n"),
        json: to_json(&d),
        code: 0,
    })
}

/// Appends a fit verdict to a series report.
fn attach_fit(
    c: &IntSeries,
    args: &FitArgs,
    text: &mut String,
    json: &mut Value,
) -> Result<u8, Error> {
    let outcome: Option<FittedForm> = if args.search {
        let out = search_denominators(c, args.guard, SEARCH_MAX_SUM, SEARCH_MAX_PART)?;
        let _ = writeln!(
            text,
            "searched denominators with sum <= {}, parts <= {}",
            out.max_sum, out.max_part
        );
        json["search"] = json!({"max_sum": out.max_sum, "max_part": out.max_part});
        out.fit
    } else if let Some(degs) = &args.degs {
        match fit_numerator(c, degs, args.guard) {
            Ok(form) => Some(form),
            Err(Error::NoFit { degree }) => {
                let _ = writeln!(text, "cleared numerator is nonzero at q^{degree}");
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        return Ok(0);
    };
    match outcome {
        Some(form) => {
            let _ = writeln!(text, "fit: {form}");
            let _ = writeln!(text, "verified through q^{}", form.verified_to());
            json["fit"] = to_json(&form.report());
            Ok(0)
        }
        None => {
            let mut degs = args.degs.clone().unwrap_or_default();
            degs.sort_unstable();
            let _ = writeln!(text, "no fit");
            json["fit"] = to_json(&FitReport::no_fit(degs, c.order()));
            Ok(EXIT_NO_FIT)
        }
    }
}

fn cmd_invariants(
    order: usize,
    input: &Path,
    group: &Path,
    args: &FitArgs,
) -> Result<Output, Error> {
    let source = CharacterSource::from_json(&read_input(input)?)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", input.display())))?;
    let g: GroupSpec = parse(group)?;
    if source.num_vars() != g.n() {
        return Err(Error::VarCountMismatch {
            left: source.num_vars(),
            right: g.n(),
        });
    }
    let h = hilbert_invariants(&g, &source.character(order)?)?;
    let mut text = format!("series: {h}\n");
    let mut json = json!({ "series": to_json(&h) });
    let code = attach_fit(&h, args, &mut text, &mut json)?;
    Ok(Output { text, json, code })
}

fn cmd_fit(input: &Path, args: &FitArgs) -> Result<Output, Error> {
    let c: IntSeries = parse(input)?;
    if !args.search && args.degs.is_none() {
        return Err(Error::InvalidInput("fit needs --degs or --search".into()));
    }
    let mut text = String::new();
    let mut json = json!({});
    let code = attach_fit(&c, args, &mut text, &mut json)?;
    let mut report = json["fit"].take();
    if let Some(search) = json.get("search") {
        report["search"] = search.clone();
    }
    Ok(Output {
        text,
        json: report,
        code,
    })
}

struct Demo {
    text: String,
    checks: Vec<Value>,
    extra: serde_json::Map<String, Value>,
}

impl Demo {
    fn new() -> Self {
        Demo {
            text: String::new(),
            checks: Vec::new(),
            extra: serde_json::Map::new(),
        }
    }

    fn check(&mut self, name: &str, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let ok = expected == computed;
        let _ = writeln!(
            self.text,
            "{name}\n  expected: {expected}\n  computed: {computed}\n  {}",
            if ok { "MATCH" } else { "MISMATCH" }
        );
        self.checks.push(json!({
            "name": name, "expected": expected, "computed": computed, "match": ok
        }));
    }

    fn finish(mut self, name: &str) -> Output {
        let ok = self.checks.iter().all(|c| c["match"] == Value::Bool(true));
        self.extra.insert("demo".into(), json!(name));
        self.extra
            .insert("checks".into(), Value::Array(self.checks));
        self.extra.insert("match".into(), json!(ok));
        Output {
            text: self.text,
            json: Value::Object(self.extra),
            code: if ok { 0 } else { EXIT_MISMATCH },
        }
    }
}

fn prefix(c: &IntSeries, n: usize) -> String {
    c.truncate(n).to_string()
}

fn catalan(n: u64) -> BigInt {
    // C(2n, n) / (n + 1)
    let mut c = BigInt::from(1);
    for i in 0..n {
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

fn central_binomial(d: u64) -> BigInt {
    let k = d / 2;
    (0..k).fold(BigInt::from(1), |acc, i| acc * (d - i) / (i + 1))
}

fn cmd_demo(
    name: DemoName,
    order: usize,
    window: usize,
    max_period: usize,
    beta: &str,
) -> Result<Output, Error> {
    let mut demo = Demo::new();
    match name {
        DemoName::Nagata => {
            // needs sum(degs) + guard = 77 terms
            let order = order.max(120);
            let c = nagata_series(order);
            let form = fit_numerator(&c, &[18, 18, 18, 18], DEFAULT_GUARD)?;
            demo.check(
                "closed form",
                "(1 + 4*q^9 + 7*q^18 + 10*q^27 + 10*q^36 + 4*q^45) / (1 - q^18)^4",
                &form,
            );
            let cn: Vec<String> = (0..4).map(|n| c.coeff(9 * n).to_string()).collect();
            demo.check(
                "c_0..c_3 at q^0, q^9, q^18, q^27",
                "1, 4, 11, 26",
                cn.join(", "),
            );
            demo.extra.insert("series".into(), to_json(&c));
            demo.extra.insert("fit".into(), to_json(&form.report()));
        }
        DemoName::Catalan => {
            let order = order.max(SEARCH_MAX_SUM as usize + DEFAULT_GUARD);
            let g = GroupSpec::SpecialLinear { n: 2 };
            let h = hilbert_invariants(
                &g,
                &CharacterSource::FreeAlgebra { vars: 2 }.character(order)?,
            )?;
            let expected: Vec<BigInt> = (0..=order as u64)
                .map(|d| {
                    if d % 2 == 0 {
                        catalan(d / 2)
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect();
            demo.check(
                "prefix through q^12",
                "[1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132]",
                prefix(&h, 12),
            );
            demo.check(
                &format!("Catalan numbers at even degrees through q^{order}"),
                IntSeries::new(expected)?,
                &h,
            );
            let rec = find_recurrence(&h.truncate(39), 12)?;
            demo.check(
                "linear recurrence of order <= 12 on 40 terms",
                "none",
                if rec.found { "found" } else { "none" },
            );
            let out = search_denominators(&h, DEFAULT_GUARD, SEARCH_MAX_SUM, SEARCH_MAX_PART)?;
            demo.check(
                &format!(
                    "denominators with sum <= {}, parts <= {}",
                    out.max_sum, out.max_part
                ),
                "no fit",
                out.fit
                    .as_ref()
                    .map_or("no fit".to_string(), ToString::to_string),
            );
            demo.extra.insert("series".into(), to_json(&h));
            demo.extra.insert(
                "fit".into(),
                to_json(&FitReport::no_fit(Vec::new(), h.order())),
            );
        }
        DemoName::Unipotent => {
            let g = GroupSpec::MaximalUnipotent { n: 2 };
            let order = order.max(8);
            let h = hilbert_invariants(
                &g,
                &CharacterSource::FreeAlgebra { vars: 2 }.character(order)?,
            )?;
            demo.check(
                "prefix through q^8",
                "[1, 1, 2, 3, 6, 10, 20, 35, 70]",
                prefix(&h, 8),
            );
            let expected: Vec<BigInt> = (0..=order as u64).map(central_binomial).collect();
            demo.check(
                &format!("C(d, floor(d/2)) through q^{order}"),
                IntSeries::new(expected)?,
                &h,
            );
            demo.extra.insert("series".into(), to_json(&h));
        }
        DemoName::Fhl => {
            let order = order.max(13);
            let torus = GroupSpec::DiagonalTorus {
                n: 2,
                weights: vec![vec![1, -1]],
            };
            let ch = fhl_series().substitute_tq()?.series(order)?;
            let h = hilbert_invariants(&torus, &ch)?;
            demo.check(
                "prefix through q^6",
                "[1, 0, 2, 0, 6, 0, 15]",
                prefix(&h, 6),
            );
            let form = fit_numerator(&h, &[2, 2, 2, 2], DEFAULT_GUARD)?;
            demo.check(
                "closed form",
                "(1 - 2*q^2 + 4*q^4 - q^6) / (1 - q^2)^4",
                &form,
            );
            // 1/(1-q^2) + q^2(1+q^2)/(1-q^2)^4
            let int = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
            let a = expand_hilbert_serre(&int(&[1]), &[2], order);
            let b = expand_hilbert_serre(&int(&[0, 0, 1, 0, 1]), &[2, 2, 2, 2], order);
            let sum = IntSeries::new(
                a.coeffs()
                    .iter()
                    .zip(b.coeffs())
                    .map(|(x, y)| x + y)
                    .collect(),
            )?;
            demo.check(
                &format!("two-summand closed form through q^{order}"),
                &sum,
                &h,
            );
            demo.extra.insert("series".into(), to_json(&h));
            demo.extra.insert("fit".into(), to_json(&form.report()));
        }
        DemoName::Semigroup => {
            let beta: QuadraticIrrational = beta.parse()?;
            let diffs = semigroup_differences(&beta, window)?;
            let found = detect_eventual_period(&diffs, window / 2, max_period);
            let verdict = |f: Option<(usize, usize)>| match f {
                Some((n, p)) => format!("period {p} from offset {n}"),
                None => format!("none found (window {window}, periods <= {max_period})"),
            };
            let expected = if beta.is_rational() {
                "eventually periodic".to_string()
            } else {
                verdict(None)
            };
            let computed = match (found, beta.is_rational()) {
                (Some(_), true) => "eventually periodic".to_string(),
                (f, _) => verdict(f),
            };
            demo.check(
                &format!("first differences for beta = {beta}"),
                expected,
                computed,
            );
            let _ = writeln!(demo.text, "  verdict: {}", verdict(found));
            let rational = QuadraticIrrational::rational(3, 7)?;
            let r = detect_eventual_period(
                &semigroup_differences(&rational, window)?,
                window / 2,
                max_period,
            );
            demo.check(
                "first differences for beta = 3/7",
                "period dividing 7",
                match r {
                    Some((_, p)) if 7 % p == 0 => "period dividing 7".to_string(),
                    f => verdict(f),
                },
            );
            demo.extra.insert("series".into(), to_json(&diffs));
            demo.extra.insert(
                "period".into(),
                found.map_or(Value::Null, |(n, p)| json!({"offset": n, "period": p})),
            );
        }
    }
    let label = name
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    Ok(demo.finish(&label))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let order = cli.order;
    match &cli.command {
        Command::Series {
            input,
            substitute,
            free_algebra,
        } => cmd_series(order, input.as_deref(), *substitute, *free_algebra),
        Command::Schur { input } => cmd_schur(input),
        Command::Decompose { input, substitute } => cmd_decompose(input, *substitute),
        Command::Invariants { input, group, fit } => cmd_invariants(order, input, group, fit),
        Command::Fit { input, fit } => cmd_fit(input, fit),
        Command::Demo {
            name,
            window,
            max_period,
            beta,
        } => cmd_demo(*name, order, *window, *max_period, beta),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
