use clap::{Args, Parser, Subcommand, ValueEnum};
use dgauge::diffpoly::{self, DiffPoly};
use dgauge::gaugegen::{build_sw, verify_sw_theorem};
use dgauge::liealg::{weyl_action_from_matrix, LieRepresentation};
use dgauge::matrix::parse_q_matrix;
use dgauge::normalform::{normal_form_pipeline_with, PipelineOptions};
use dgauge::rootsys::{Family, RootSystem, WeylElement};
use dgauge::sl3case;
use dgauge::Error;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "dgauge", version, about = "Bruhat-cell differential systems and gauge normal forms for classical groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, heights and Cartan matrix.
    Roots {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The system S_w for a Weyl element, with the structure theorem report when w is resolving.
    Sw {
        #[command(flatten)]
        sys: SystemArgs,
        /// Comma-separated 1-based simple reflections, e.g. 1,2,1.
        #[arg(long, conflicts_with_all = ["longest", "matrix_file"])]
        word: Option<String>,
        #[arg(long, conflicts_with = "matrix_file")]
        longest: bool,
        /// Matrix normalizing the torus, as whitespace-separated rationals.
        #[arg(long)]
        matrix_file: Option<std::path::PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The three-step reduction of the generic element to normal form.
    NormalForm {
        #[command(flatten)]
        sys: SystemArgs,
        /// Skip the independent re-gauge of A by the accumulated element.
        #[arg(long)]
        no_regauge: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The SL3 specialization and the Σ_m systems.
    Sl3 {
        /// Compare σ(f⁺_{w̄,3}) with the recorded polynomial and unit.
        #[arg(long, value_enum)]
        check: Option<Sl3Check>,
        /// Print Σ_m for this m.
        #[arg(long, requires = "c")]
        sigma_m: Option<usize>,
        /// c₀,c₁,c₂,c₃ as expressions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<String>,
        /// Replay the reduction of g′ modulo f and g for m=M (or M).
        #[arg(long)]
        reduce: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sl3Check {
    Sigma,
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedRootSystem { .. }
            | Error::ReflectionIndex(_)
            | Error::Parse { .. }
            | Error::Invalid(_)
            | Error::Dimension { .. }
            | Error::NotNormalizing
            | Error::NotPolynomial => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

/// A rendered report and whether everything it checks passed.
struct Report {
    text: String,
    doc: Value,
    ok: bool,
}

fn root_system(a: &SystemArgs) -> Result<RootSystem, Failure> {
    let family: Family = a.family.parse()?;
    Ok(RootSystem::new(family, a.rank)?)
}

fn roots(a: &SystemArgs) -> Result<Report, Failure> {
    let rs = root_system(a)?;
    let m = rs.positive_count();
    let mut text = format!("{}: {} roots, {} positive\n", rs.name(), rs.num_roots(), m);
    let mut list = Vec::new();
    for i in 0..rs.num_roots() {
        let label = if i < m { format!("{}", i + 1) } else { format!("-{}", i - m + 1) };
        writeln!(text, "  {label:>4}  {:?}  height {}", rs.root(i), rs.height(i)).unwrap();
        list.push(json!({"index": label, "coefficients": rs.root(i), "height": rs.height(i), "positive": i < m}));
    }
    text.push_str("Cartan matrix (row i: α_j(H_i))\n");
    for row in rs.cartan() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        writeln!(text, "  {}", cells.join("")).unwrap();
    }
    writeln!(text, "exponents {:?}", rs.exponents()).unwrap();
    let doc = json!({
        "command": "roots",
        "root_system": rs.name(),
        "rank": rs.rank(),
        "positive_count": m,
        "roots": list,
        "cartan": rs.cartan(),
        "exponents": rs.exponents(),
    });
    Ok(Report { text, doc, ok: true })
}

fn parse_word(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad reflection index {t:?}")))).collect()
}

fn sw(a: &SystemArgs, word: Option<&str>, longest: bool, matrix: Option<&std::path::Path>) -> Result<Report, Failure> {
    let rs = root_system(a)?;
    let rep = Arc::new(LieRepresentation::new(&rs)?);
    let w: WeylElement = match (word, matrix) {
        (Some(s), _) => rs.weyl_from_word(&parse_word(s)?)?,
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            weyl_action_from_matrix(&rep, &parse_q_matrix(&text)?)?
        }
        (None, None) if longest => rs.longest_element(),
        (None, None) => return Err(Failure::Usage("one of --word, --longest or --matrix-file is required".into())),
    };
    let sys = build_sw(&rep, &w)?;
    let m = rs.positive_count();
    let root_label = |i: usize| if i < m { format!("{}", i + 1) } else { format!("-{}", i - m + 1) };
    let mut text = format!("{} w = {:?} (length {})\n", rs.name(), w.word, rs.length(&w));
    if sys.resolving {
        let psi: Vec<String> = sys.psi.iter().flatten().map(|&i| root_label(i)).collect();
        writeln!(text, "resolving, Ψ = {{{}}}", psi.join(", ")).unwrap();
    } else {
        text.push_str("not resolving\n");
    }
    let mut eqs = Vec::new();
    for (r, f) in &sys.equations {
        let leader = diffpoly::leader(f, &sys.ranking).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
        let init = diffpoly::initial(f, &sys.ranking).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string());
        writeln!(text, "f_{} = {f}\n    leader {leader}, initial {init}", r + 1).unwrap();
        eqs.push(json!({"root": r + 1, "poly": f.to_string(), "leader": leader, "initial": init}));
    }
    let (theorem, ok) = if sys.resolving {
        let report = verify_sw_theorem(&rep, &sys)?;
        for c in &report.checks {
            writeln!(text, "statement {}: {} {}", c.statement, if c.passed { "PASS" } else { "FAIL" }, c.detail).unwrap();
        }
        let ok = report.all_passed();
        (serde_json::to_value(&report).expect("serializable"), ok)
    } else {
        (Value::Null, true)
    };
    let doc = json!({
        "command": "sw",
        "root_system": rs.name(),
        "weyl_word": w.word,
        "length": rs.length(&w),
        "resolving": sys.resolving,
        "psi": sys.psi.as_ref().map(|p| p.iter().map(|&i| root_label(i)).collect::<Vec<_>>()),
        "b_roots": sys.b_roots.iter().map(|&i| root_label(i)).collect::<Vec<_>>(),
        "equations": eqs,
        "theorem": theorem,
    });
    Ok(Report { text, doc, ok })
}

fn normal_form(a: &SystemArgs, regauge: bool) -> Result<Report, Failure> {
    let rs = root_system(a)?;
    let rep = Arc::new(LieRepresentation::new(&rs)?);
    let res = normal_form_pipeline_with(&rep, PipelineOptions { regauge })?;
    let d = res.document();
    let mut text = format!("{} normal form, w = {:?}\n", d.root_system, d.weyl_word);
    writeln!(text, "complementary roots {:?}, heights {:?}", d.complementary_roots, d.complementary_heights).unwrap();
    writeln!(text, "step 2 exponents Q = {:?}", d.exponent_matrix).unwrap();
    for (i, t) in d.tbar.iter().enumerate() {
        writeln!(text, "t̄_{} = {t}", i + 1).unwrap();
    }
    for c in &d.checks {
        writeln!(text, "{}: {}", c.name, if c.passed { "PASS" } else { "FAIL" }).unwrap();
    }
    let ok = d.verified;
    let mut doc = serde_json::to_value(&d).expect("serializable");
    doc.as_object_mut().expect("object").insert("command".into(), json!("normal-form"));
    Ok(Report { text, doc, ok })
}

fn sl3(check: Option<Sl3Check>, sigma_m: Option<usize>, c: &[String], reduce: Option<&str>) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut doc = serde_json::Map::new();
    doc.insert("command".into(), json!("sl3"));
    let mut ok = true;
    let run_sigma = check.is_some() || (sigma_m.is_none() && reduce.is_none());
    if run_sigma {
        let s = sl3case::check_sigma()?;
        writeln!(text, "σ(f⁺_{{w̄,3}}) = {}", s.computed).unwrap();
        writeln!(text, "unit {} (recorded {}), r₁r₂′ coefficient {}", s.unit.as_deref().unwrap_or("none"), s.recorded_unit, s.r1_dr2.as_deref().unwrap_or("not constant")).unwrap();
        writeln!(text, "sigma: {}", if s.passed { "PASS" } else { "FAIL" }).unwrap();
        ok &= s.passed;
        doc.insert("sigma".into(), serde_json::to_value(&s).expect("serializable"));
    }
    if let Some(m) = sigma_m {
        let cs: Vec<DiffPoly> = c.iter().map(|s| s.parse::<DiffPoly>()).collect::<Result<_, _>>()?;
        let cs: [DiffPoly; 4] = cs.try_into().map_err(|_| Failure::Usage("--c needs four values".into()))?;
        let sys = sl3case::sigma_m_system(&cs, m)?;
        let mut eqs = Vec::new();
        for (k, r) in sys.rhs.iter().enumerate() {
            writeln!(text, "y_{k}' = {r}").unwrap();
            eqs.push(json!({"k": k, "rhs": r.to_string()}));
        }
        doc.insert("sigma_m".into(), json!({"m": m, "c": c, "equations": eqs}));
    }
    if let Some(spec) = reduce {
        let m: usize = spec
            .trim()
            .trim_start_matches("m=")
            .parse()
            .map_err(|_| Failure::Usage(format!("--reduce expects m=M, got {spec:?}")))?;
        let (f, g, y) = sl3case::generic_f_g(m);
        let red = sl3case::reduce_mod_f_g(&f, &g, y)?;
        let member = red.verify_membership(&f, &g);
        let sys = sl3case::sigma_m_system(&sl3case::generic_c(), m)?;
        let dual = red
            .coefficients(y)
            .iter()
            .zip(&sys.equations())
            .all(|(a, b)| a == b);
        writeln!(text, "f = {f}\ng = {g}").unwrap();
        for (name, p) in [("g̃₁", &red.g1), ("g̃₂", &red.g2), ("g̃₃", &red.g3), ("g̃₄", &red.g4)] {
            writeln!(text, "{name} = {p}").unwrap();
        }
        if m == 1 {
            writeln!(text, "g₀ = {}", red.g4).unwrap();
        }
        writeln!(text, "membership {}, Σ_m duality {}", pass(member), pass(dual)).unwrap();
        ok &= member && dual;
        doc.insert(
            "reduce".into(),
            json!({
                "m": m,
                "f": f.to_string(),
                "g": g.to_string(),
                "chain": [red.g1.to_string(), red.g2.to_string(), red.g3.to_string(), red.g4.to_string()],
                "witness": {"qf": red.qf.to_string(), "qg": red.qg.to_string()},
                "membership": member,
                "sigma_duality": dual,
            }),
        );
    }
    doc.insert("passed".into(), json!(ok));
    Ok(Report { text, doc: Value::Object(doc), ok })
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn emit(report: &Report, out: &OutputArgs) -> Result<(), Failure> {
    let body = match out.format {
        Format::Text => report.text.clone(),
        Format::Structured => serde_json::to_string_pretty(&report.doc).expect("serializable") + "\n",
    };
    match &out.out {
        Some(p) => std::fs::write(p, body).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.cmd {
        Command::Roots { sys, out } => (roots(sys), out),
        Command::Sw { sys, word, longest, matrix_file, out } => (sw(sys, word.as_deref(), *longest, matrix_file.as_deref()), out),
        Command::NormalForm { sys, no_regauge, out } => (normal_form(sys, !no_regauge), out),
        Command::Sl3 { check, sigma_m, c, reduce, out } => (sl3(*check, *sigma_m, c, reduce.as_deref()), out),
    };
    let outcome = result.and_then(|r| emit(&r, out).map(|_| r.ok));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}
