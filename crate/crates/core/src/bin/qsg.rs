//! Command-line front end. Exit codes: 0 success, 1 a checked property is
//! violated, 2 usage or input error, 3 budget exceeded.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use qsg::field::parse_rational;
use qsg::ideals::{product_radical_member, radical_member, witness_subset, MPoly};
use qsg::json::{qforms_from_json, Json};
use qsg::pencil::classify_pair;
use qsg::pit::{expand_oracle, hitting_set_generate, pit_run, simplicity_minimality, sz_test, Circuit, HsParams};
use qsg::qform::{factor, QForm};
use qsg::quadsg::{
    assert_main_theorem, default_delta, generate, pair_case_statistics, validate_with_delta, Family, GenParams,
    Mutation, QuadTriple,
};
use qsg::sg::{
    check_ek_bound, check_sg_bound, ek_condition, is_delta_sg, lines, ordinary_lines, partial_ek_condition,
    ColoredConfig, Mode, PointConfig,
};
use qsg::{report, selftest, QsgError};

#[derive(Parser)]
#[command(name = "qsg", version, about = "Exact quadratic-form and Sylvester-Gallai toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

/// Inputs are a file path, `-` for stdin, or inline JSON.
#[derive(Args)]
struct Input {
    input: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank and Gram rank of a quadratic form.
    Rank(Input),
    /// Minimal space of a quadratic form.
    Ms(Input),
    /// Factorization of a quadratic form.
    Factor(Input),
    /// Structure cases of a pair: input `{"A": q, "B": q, "third": [q…]}`.
    Classify(Input),
    /// Radical membership of `f` (a polynomial or a list of quadratic
    /// factors) in the ideal of `gens`.
    Radical {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        f: String,
    },
    /// Smallest product of factors in the radical of `<A, B>`: input
    /// `{"A": q, "B": q, "factors": [q…]}`.
    Witness {
        input: String,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Point configurations.
    Sg {
        #[command(subcommand)]
        cmd: SgCmd,
    },
    /// Colored configurations.
    Ek {
        #[command(subcommand)]
        cmd: EkCmd,
    },
    /// Triples of sets of quadratic forms.
    Triple {
        #[command(subcommand)]
        cmd: TripleCmd,
    },
    /// Identity testing for sums of three products of quadratics.
    Pit {
        #[command(subcommand)]
        cmd: PitCmd,
    },
    /// Runs the seeded acceptance criteria.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run a single criterion (1-8).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        only: Option<u8>,
        /// Print per-criterion wall times (milliseconds) to stderr.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum SgCmd {
    /// Lines, ordinary lines and, with `--delta`, the dimension bound.
    Check {
        input: String,
        #[arg(long)]
        delta: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vectors,
    AffinePoints,
}

#[derive(Subcommand)]
enum EkCmd {
    /// The three-color condition and dimension bound; with `--delta`, the
    /// partial condition.
    Check {
        input: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        delta: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    SquaresEk,
    Pencil,
    Corrupted,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    OutlierSquare,
    DuplicateMember,
}

#[derive(Subcommand)]
enum TripleCmd {
    /// Checks the hypotheses and classifies every cross pair.
    Validate {
        input: String,
        #[arg(long, default_value_t = 4)]
        witness_max: usize,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Generates a triple.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Set sizes, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = [2, 2, 2])]
        sizes: Vec<usize>,
        #[arg(long)]
        fermat_order: Option<usize>,
        #[arg(long, value_enum, default_value = "outlier-square")]
        mutation: MutationArg,
    },
    /// Partition statistics of the cross pairs.
    Stats {
        input: String,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Measures the span dimension against the generator's prediction.
    Assert {
        input: String,
        #[arg(long, default_value_t = 20)]
        lambda: usize,
    },
}

#[derive(Subcommand)]
enum PitCmd {
    /// Evaluates a circuit on the hitting set (or with `--sz` random trials).
    Run {
        input: String,
        /// Rank parameter of the hitting set; defaults to `min(n, 5)`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        identity: bool,
        #[arg(long)]
        sz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Expands a circuit exactly.
    Oracle(Input),
    /// Writes the hitting set, one JSON point per line.
    HittingSet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        identity: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// Command result: a report and whether the checked property holds.
struct Outcome {
    value: Value,
    text: Option<String>,
    ok: bool,
}

fn ok(value: Value) -> Outcome {
    Outcome { value, text: None, ok: true }
}

fn checked(value: Value, ok: bool) -> Outcome {
    Outcome { value, text: None, ok }
}

fn read_json(src: &str) -> qsg::Result<Value> {
    let t = src.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        src.to_string()
    } else if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(src).map_err(|e| QsgError::Io(format!("{src}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn get<'a>(v: &'a Value, key: &str) -> qsg::Result<&'a Value> {
    v.get(key).ok_or_else(|| QsgError::Parse(format!("missing field `{key}`")))
}

fn rational(s: &Option<String>) -> qsg::Result<Option<BigRational>> {
    s.as_deref().map(parse_rational).transpose()
}

/// A polynomial, a quadratic form, or a list of quadratic forms (their
/// product).
fn poly_of(v: &Value) -> qsg::Result<MPoly> {
    if let Ok(p) = MPoly::from_json(v) {
        return Ok(p);
    }
    let forms = qforms_from_json(v)?;
    let parts: Vec<MPoly> = forms.iter().map(MPoly::from_qform).collect();
    MPoly::product(&parts)
}

fn polys_of(v: &Value) -> qsg::Result<Vec<MPoly>> {
    match v {
        Value::Array(items) => items.iter().map(poly_of).collect(),
        _ => Ok(vec![poly_of(v)?]),
    }
}

fn pair_input(v: &Value) -> qsg::Result<(QForm, QForm)> {
    Ok((QForm::from_json(get(v, "A")?)?, QForm::from_json(get(v, "B")?)?))
}

fn run(cmd: Cmd) -> qsg::Result<Outcome> {
    Ok(match cmd {
        Cmd::Rank(i) => {
            let q = QForm::from_json(&read_json(&i.input)?)?;
            ok(json!({"rank": q.rank_s(), "gram_rank": q.gram_rank()}))
        }
        Cmd::Ms(i) => {
            let q = QForm::from_json(&read_json(&i.input)?)?;
            let ms = q.minimal_space();
            ok(json!({"dim": ms.dim(), "space": ms.to_json()}))
        }
        Cmd::Factor(i) => ok(report::factor_witness(&factor(&QForm::from_json(&read_json(&i.input)?)?)?)),
        Cmd::Classify(i) => {
            let v = read_json(&i.input)?;
            let (a, b) = pair_input(&v)?;
            let third = match v.get("third") {
                Some(t) => qforms_from_json(t)?,
                None => Vec::new(),
            };
            let cs = classify_pair(&a, &b, &third)?;
            let mut out = report::case_set(&cs);
            out["verified"] = json!(cs.verify(&a, &b, &third)?);
            ok(out)
        }
        Cmd::Radical { gens, f } => {
            let gens = polys_of(&read_json(&gens)?)?;
            let f = poly_of(&read_json(&f)?)?;
            ok(json!({"member": radical_member(&f, &gens)?}))
        }
        Cmd::Witness { input, max } => {
            let v = read_json(&input)?;
            let (a, b) = pair_input(&v)?;
            let factors = qforms_from_json(get(&v, "factors")?)?;
            if !product_radical_member(&factors, &a, &b)? {
                checked(json!({"member": false, "witness": null}), false)
            } else {
                ok(json!({"member": true, "witness": witness_subset(&factors, &a, &b, max)?}))
            }
        }
        Cmd::Sg { cmd: SgCmd::Check { input, delta } } => {
            let c = PointConfig::from_json(&read_json(&input)?)?;
            let ls = lines(&c)?;
            let ord = ordinary_lines(&c)?;
            let mut out = json!({
                "points": c.len(),
                "rich_lines": ls.iter().filter(|l| l.len() >= 3).collect::<Vec<_>>(),
                "ordinary_lines": ord,
            });
            let mut good = true;
            if let Some(d) = rational(&delta)? {
                let (is_sg, counts) = is_delta_sg(&c, &d)?;
                out["delta_sg"] = json!(is_sg);
                out["rich_counts"] = json!(counts);
                good = is_sg;
                if is_sg {
                    let b = check_sg_bound(&c, &d)?;
                    good = b.holds;
                    out["bound"] = report::sg_bound(&b);
                }
            }
            checked(out, good)
        }
        Cmd::Ek { cmd: EkCmd::Check { input, mode, delta } } => {
            let mut v = read_json(&input)?;
            if let Some(m) = mode {
                let m = match m {
                    ModeArg::Vectors => Mode::Vectors,
                    ModeArg::AffinePoints => Mode::AffinePoints,
                };
                v["mode"] = serde_json::to_value(m)?;
            }
            let c = ColoredConfig::from_json(&v)?;
            match rational(&delta)? {
                Some(d) => {
                    let r = partial_ek_condition(&c, &d)?;
                    checked(report::partial_ek(&r), r.holds)
                }
                None => {
                    let r = ek_condition(&c)?;
                    let b = if r.holds { Some(check_ek_bound(&c)?) } else { None };
                    let good = r.holds && b.as_ref().is_some_and(|b| b.holds);
                    checked(report::ek(&r, b.as_ref()), good)
                }
            }
        }
        Cmd::Triple { cmd } => triple(cmd)?,
        Cmd::Pit { cmd } => pit(cmd)?,
        Cmd::Selftest { seed, only, timings } => {
            let observe = |r: &selftest::CriterionResult, t: std::time::Duration| {
                if timings {
                    eprintln!("timing {} {}", r.id, t.as_millis());
                }
            };
            let r = match only {
                Some(id) => {
                    let start = std::time::Instant::now();
                    let c = selftest::run_criterion(id, seed);
                    observe(&c, start.elapsed());
                    selftest::SelftestReport { seed, results: vec![c] }
                }
                None => selftest::selftest_observed(seed, observe),
            };
            let value = serde_json::to_value(&r)?;
            Outcome { value, text: Some(r.to_text()), ok: r.passed() }
        }
    })
}

fn triple(cmd: TripleCmd) -> qsg::Result<Outcome> {
    let load = |s: &str| -> qsg::Result<QuadTriple> { QuadTriple::from_json(&read_json(s)?) };
    Ok(match cmd {
        TripleCmd::Validate { input, witness_max, delta } => {
            let t = load(&input)?;
            let d = rational(&delta)?.unwrap_or_else(default_delta);
            let r = validate_with_delta(&t, witness_max, &d)?;
            checked(report::validation(&r), r.all_ok())
        }
        TripleCmd::Gen { family, seed, n, sizes, fermat_order, mutation } => {
            let family = match family {
                FamilyArg::SquaresEk => Family::SquaresEk,
                FamilyArg::Pencil => Family::Pencil,
                FamilyArg::Corrupted => Family::Corrupted,
            };
            let mutation = match mutation {
                MutationArg::OutlierSquare => Mutation::OutlierSquare,
                MutationArg::DuplicateMember => Mutation::DuplicateMember,
            };
            let sizes: [usize; 3] = sizes
                .try_into()
                .map_err(|_| QsgError::Parse("expected three set sizes".into()))?;
            let params = GenParams { n, sizes, fermat_order, mutation };
            let t = generate(family, &params, seed)?;
            let text = serde_json::to_string_pretty(&t.to_json())?;
            Outcome { value: t.to_json(), text: Some(text + "\n"), ok: true }
        }
        TripleCmd::Stats { input, delta } => {
            let t = load(&input)?;
            let d = rational(&delta)?.unwrap_or_else(default_delta);
            ok(report::partition_stats(&pair_case_statistics(&t, &d)?))
        }
        TripleCmd::Assert { input, lambda } => {
            let r = assert_main_theorem(&load(&input)?, lambda)?;
            checked(report::theorem(&r), r.passed())
        }
    })
}

fn pit(cmd: PitCmd) -> qsg::Result<Outcome> {
    let load = |s: &str| -> qsg::Result<Circuit> { Circuit::from_json(&read_json(s)?) };
    Ok(match cmd {
        PitCmd::Run { input, k, identity, sz, seed } => {
            let c = load(&input)?;
            let mut out = json!({"shape": report::simplicity(&simplicity_minimality(&c)?)});
            match sz {
                Some(trials) => out["verdict"] = report::sz_verdict(&sz_test(&c, trials, seed)?),
                None => {
                    let k = if identity { c.n() } else { k.unwrap_or(c.n().min(5)) };
                    let hs = hitting_set_generate(c.n(), c.degree(), k, HsParams { identity })?;
                    out["hitting_set_size"] = json!(hs.len().to_string());
                    out["verdict"] = report::pit_verdict(&pit_run(&c, &hs)?);
                }
            }
            ok(out)
        }
        PitCmd::Oracle(i) => {
            let p = expand_oracle(&load(&i.input)?)?;
            ok(json!({"zero": p.is_zero(), "terms": p.len(), "polynomial": p.to_json()}))
        }
        PitCmd::HittingSet { n, d, k, identity, out } => {
            let hs = hitting_set_generate(n, d, k, HsParams { identity })?;
            let mut sink: Box<dyn Write> = match &out {
                Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
                None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
            };
            for p in hs.stream() {
                let line: Vec<Value> = p.iter().map(Json::to_json).collect();
                writeln!(sink, "{}", Value::Array(line))?;
            }
            sink.flush()?;
            let summary = json!({"points": hs.len().to_string(), "n": n, "d": d, "k": k});
            match out {
                Some(_) => ok(summary),
                None => Outcome { value: Value::Null, text: Some(String::new()), ok: true },
            }
        }
    })
}

fn text_of(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_of(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", compact(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", compact(v))),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.cmd) {
        Ok(o) => {
            let s = match (format, o.text) {
                (_, Some(t)) if o.value.is_null() => t,
                (Format::Json, _) => serde_json::to_string_pretty(&o.value).expect("serializable") + "\n",
                (Format::Text, Some(t)) => t,
                (Format::Text, None) => {
                    let mut s = String::new();
                    text_of(&o.value, 0, &mut s);
                    s
                }
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(s.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                QsgError::BudgetExceeded(_) => 3,
                _ => 2,
            })
        }
    }
}
