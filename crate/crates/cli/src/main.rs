//! `pvsieve`: evaluate sieving sequences, descend divisors to sequences,
//! verify the recursively-factorable criterion with certificates, and
//! enumerate conic lattice points.
//!
//! Every equation the reports state has been recomputed by the library
//! before it is formatted; printed numbers are never trusted copies of
//! inputs. Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage or
//! data errors, 3 internal identity defect (a library invariant tripped),
//! 4 descent stall (the criterion itself failed at some point).

mod svg;

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use pvsieve_core::conic::{
    enumerate_points, pell_reduce, point_to_factorization, point_to_matrix, ConicInstance,
};
use pvsieve_core::descent::{
    criterion_check, factor_to_sequence, plan_verification, CriterionOutcome, VerifyMode,
    VerifyOutcome, VerifyPlan,
};
use pvsieve_core::gamma::{evaluate_forms, seq_to_matrix, transvection_word};
use pvsieve_core::sieve::{self, SieveTrace};
use pvsieve_core::{Error, Int, Polynomial};

#[derive(Parser)]
#[command(name = "pvsieve", version, about = "Polynomial-value sieving toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sieving sequence and print the trace ladder.
    Sieve(SieveArgs),
    /// Descend a divisor of |F(n)| to a sieving sequence.
    Factor(FactorArgs),
    /// Verify the recursively-factorable criterion over an interval.
    VerifyRf(VerifyArgs),
    /// Enumerate lattice points of a*X^2 + b*XY + c*Y^2 + X - nY = 0.
    Conic(ConicArgs),
    /// Exercise the internal-defect exit path (for plumbing tests).
    #[command(hide = true)]
    SelftestDefect,
}

#[derive(Args)]
struct PolyArg {
    /// Coefficients: "a,b,c" (highest first) for the quadratic form, or
    /// the full lowest-first list "c0,c1,...,cd" together with --degree.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Degree of the general form; switches --poly to lowest-first order.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args)]
struct SieveArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// Comma-separated sequence entries; "" for the empty sequence.
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Append the expansion into entries from {-1, 0, 1}.
    #[arg(long)]
    binary_expand: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    /// Positive divisor of |F(n)| to present as the final factor.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Print the matrix chain walked by the sequence.
    #[arg(long)]
    matrix: bool,
    /// Print the transvection word (leading coefficient 1 only).
    #[arg(long)]
    word: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    poly: PolyArg,
    /// "lemma" derives the finite interval from growth; "range" checks
    /// [--lo, --hi] exhaustively.
    #[arg(long, default_value = "lemma")]
    mode: String,
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<String>,
    /// Write the canonical certificate here on PASS.
    #[arg(long, value_name = "PATH")]
    emit_cert: Option<String>,
    /// Worker threads for the per-n checks.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConicArgs {
    #[command(flatten)]
    poly: PolyArg,
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    /// Search radius |X|, |Y| <= B (required when the discriminant is
    /// nonnegative, where the point set may be infinite).
    #[arg(long, value_name = "B")]
    r#box: Option<String>,
    /// Write a static plot of the conic with its lattice points.
    #[arg(long, value_name = "PATH")]
    svg: Option<String>,
    /// Write the points as CSV rows "X,Y,p,q,n".
    #[arg(long, value_name = "PATH")]
    csv: Option<String>,
    /// Include the Pell-form reduction (U, V) for each point.
    #[arg(long)]
    pell: bool,
    #[arg(long)]
    json: bool,
}

/// Failures carrying their process exit code (success paths return the
/// code directly).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(Error),
    Stall(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 2,
            Failure::Stall(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Data(e) => e.to_string(),
            Failure::Stall(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CriterionViolated { .. } => Failure::Stall(e),
            _ => Failure::Data(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // The default hook would dump a backtrace before we classify the panic;
    // we report (or deliberately swallow, for broken pipes) below instead.
    std::panic::set_hook(Box::new(|_| {}));
    match std::panic::catch_unwind(|| dispatch(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("");
            if msg.contains("Broken pipe") {
                // Reader closed the pipe (e.g. `pvsieve ... | head`); not a
                // defect, just stop quietly.
                ExitCode::from(0)
            } else if msg.is_empty() {
                eprintln!("internal identity defect");
                ExitCode::from(3)
            } else {
                eprintln!("internal identity defect: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Sieve(args) => cmd_sieve(args),
        Command::Factor(args) => cmd_factor(args),
        Command::VerifyRf(args) => cmd_verify_rf(args),
        Command::Conic(args) => cmd_conic(args),
        Command::SelftestDefect => panic!("simulated identity defect"),
    }
}

// ---- parsing helpers -------------------------------------------------

fn parse_int(s: &str) -> Result<Int, Failure> {
    Int::from_str(s.trim())
        .map_err(|_| Failure::Usage(format!("not an integer: {:?}", s.trim())))
}

fn parse_int_list(s: &str) -> Result<Vec<Int>, Failure> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(parse_int).collect()
}

impl PolyArg {
    fn parse(&self) -> Result<Polynomial, Failure> {
        let vals = parse_int_list(&self.poly)?;
        let coeffs = match self.degree {
            None => {
                if vals.len() != 3 {
                    return Err(Failure::Usage(format!(
                        "--poly expects exactly 3 quadratic coefficients a,b,c (got {}); \
                         pass --degree for the general lowest-first form",
                        vals.len()
                    )));
                }
                let mut v = vals;
                v.reverse(); // a,b,c arrives highest-first
                v
            }
            Some(d) => {
                if vals.len() != d + 1 {
                    return Err(Failure::Usage(format!(
                        "--degree {d} expects {} lowest-first coefficients (got {})",
                        d + 1,
                        vals.len()
                    )));
                }
                vals
            }
        };
        if coeffs.last().map_or(true, Zero::is_zero) {
            return Err(Failure::Usage("leading coefficient must be nonzero".into()));
        }
        Ok(Polynomial::new(coeffs))
    }
}

// ---- shared formatting -----------------------------------------------

fn join_ints(vs: &[Int], sep: &str) -> String {
    vs.iter().map(Int::to_string).collect::<Vec<_>>().join(sep)
}

fn seq_tuple(vs: &[Int]) -> String {
    format!("({})", join_ints(vs, ", "))
}

fn int_strings(vs: &[Int]) -> Vec<Value> {
    vs.iter().map(|v| Value::String(v.to_string())).collect()
}

fn payload(command: &str, poly: &Polynomial, results: Vec<Value>) -> Value {
    json!({
        "command": command,
        "polynomial": int_strings(poly.coeffs()),
        "results": results,
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn write_file(path: &str, contents: &str) -> Result<(), Failure> {
    match fs::write(path, contents) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
            // Same policy as stdout: a closed reader is not an error.
            std::process::exit(0);
        }
        other => {
            other.map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))
        }
    }
}

// ---- sieve -----------------------------------------------------------

fn trace_table(trace: &SieveTrace) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:>4}  {:>10}  {:>14}  {:>14}\n", "k", "x_k", "f_k", "N_k"));
    out.push_str(&format!(
        "{:>4}  {:>10}  {:>14}  {:>14}\n",
        0,
        "-",
        trace.factors()[0],
        trace.partial_sums()[0]
    ));
    for k in 1..=trace.len() {
        out.push_str(&format!(
            "{:>4}  {:>10}  {:>14}  {:>14}\n",
            k,
            trace.seq()[k - 1],
            trace.factors()[k],
            trace.partial_sums()[k]
        ));
    }
    out
}

/// The "F(N) = v = f_{m-1} x f_m" closing line, recomputed before print.
fn product_line(poly: &Polynomial, trace: &SieveTrace) -> Option<String> {
    let (prev, last) = trace.final_pair()?;
    let n = trace.final_point();
    let value = poly.eval(n);
    assert_eq!(&value, &(prev * last), "internal identity violation: report check");
    Some(format!("F({n}) = {value} = {prev} \u{00d7} {last}"))
}

fn cmd_sieve(args: SieveArgs) -> Result<u8, Failure> {
    let poly = args.poly.parse()?;
    let seq = parse_int_list(&args.seq)?;
    let trace = sieve::eval(&poly, &seq)?;
    let expanded = if args.binary_expand {
        Some(sieve::expand_to_binary(&trace)?)
    } else {
        None
    };

    if args.json {
        let mut result = json!({
            "seq": int_strings(trace.seq()),
            "f": int_strings(trace.factors()),
            "partial_sums": int_strings(trace.partial_sums()),
        });
        if let Some((prev, last)) = trace.final_pair() {
            let value = poly.eval(trace.final_point());
            assert_eq!(&value, &(prev * last), "internal identity violation: report check");
            result["value"] = Value::String(value.to_string());
            result["pair"] = json!([prev.to_string(), last.to_string()]);
        }
        if let Some(exp) = &expanded {
            result["binary_seq"] = json!(int_strings(exp.seq()));
            result["binary_f"] = json!(int_strings(exp.factors()));
        }
        print_json(&payload("sieve", &poly, vec![result]));
        return Ok(0);
    }

    println!("F = {poly}");
    println!("seq = {}", seq_tuple(trace.seq()));
    print!("{}", trace_table(&trace));
    println!("f = [{}]", join_ints(trace.factors(), ", "));
    println!("N = [{}]", join_ints(trace.partial_sums(), ", "));
    if let Some(line) = product_line(&poly, &trace) {
        println!("{line}");
    }
    if let Some(exp) = expanded {
        let m = exp.len();
        let (_, last) = exp.final_pair().expect("nonempty after expansion");
        println!("binary seq = {}", seq_tuple(exp.seq()));
        println!("f_{m}{} = {last}", seq_tuple(exp.seq()));
    }
    Ok(0)
}

// ---- factor ----------------------------------------------------------

fn cmd_factor(args: FactorArgs) -> Result<u8, Failure> {
    let poly = args.poly.parse()?;
    let n = parse_int(&args.n)?;
    let p = parse_int(&args.p)?;
    if args.word && !(poly.degree() == Some(2) && poly.coeff(2).is_one()) {
        return Err(Failure::Usage(
            "--word needs leading coefficient 1 (transvections generate only SL2)".into(),
        ));
    }
    let descent = factor_to_sequence(&poly, &n, &p)?;
    let trace = &descent.trace;
    let chain = if args.matrix || args.word {
        Some(seq_to_matrix(&poly, trace.seq())?)
    } else {
        None
    };

    if args.json {
        let mut result = json!({
            "n": n.to_string(),
            "p": p.to_string(),
            "value": poly.eval(&n).to_string(),
            "seq": int_strings(&descent.seq),
            "remainders": int_strings(&descent.remainders),
            "quotients": int_strings(&descent.quotients),
            "chain": int_strings(&descent.factors),
            "f": int_strings(trace.factors()),
            "partial_sums": int_strings(trace.partial_sums()),
        });
        if let Some(chain) = &chain {
            if args.matrix {
                result["matrices"] = Value::Array(
                    chain
                        .iter()
                        .map(|m| {
                            json!([
                                m.alpha.to_string(),
                                m.beta.to_string(),
                                m.gamma.to_string(),
                                m.delta.to_string()
                            ])
                        })
                        .collect(),
                );
            }
            if args.word {
                let (word, end) = transvection_word(trace.seq());
                assert_eq!(&end, chain.last().expect("nonempty"));
                result["word"] = Value::String(word.to_string());
            }
        }
        print_json(&payload("factor", &poly, vec![result]));
        return Ok(0);
    }

    println!("F = {poly}");
    if let Some(line) = product_line(&poly, trace) {
        println!("{line}");
    }
    println!("seq = {}", seq_tuple(&descent.seq));
    if !descent.remainders.is_empty() {
        println!("remainders = {}", seq_tuple(&descent.remainders));
        println!("quotients = {}", seq_tuple(&descent.quotients));
        println!("chain = {}", seq_tuple(&descent.factors));
    }
    println!("f = [{}]", join_ints(trace.factors(), ", "));
    println!("N = [{}]", join_ints(trace.partial_sums(), ", "));
    let (_, last) = trace.final_pair().expect("descent sequences are nonempty");
    println!("check: N_{} = {}, |f_{}| = {}", trace.len(), trace.final_point(), trace.len(), last.abs());
    if let Some(chain) = chain {
        if args.matrix {
            for (k, m) in chain.iter().enumerate() {
                let ev = evaluate_forms(&poly, m)?;
                println!("A_{k} = {m}  eta = {}  phi = {}", ev.point, ev.factor_for_step(k));
            }
        }
        if args.word {
            let (word, end) = transvection_word(trace.seq());
            assert_eq!(&end, chain.last().expect("nonempty"));
            println!("word = {word}");
        }
    }
    Ok(0)
}

// ---- verify-rf -------------------------------------------------------

fn parse_mode(args: &VerifyArgs) -> Result<VerifyMode, Failure> {
    match args.mode.as_str() {
        "lemma" => {
            if args.lo.is_some() || args.hi.is_some() {
                return Err(Failure::Usage("--lo/--hi apply only to --mode range".into()));
            }
            Ok(VerifyMode::Lemma)
        }
        "range" => {
            let (Some(lo), Some(hi)) = (&args.lo, &args.hi) else {
                return Err(Failure::Usage("--mode range needs --lo and --hi".into()));
            };
            Ok(VerifyMode::Range { lo: parse_int(lo)?, hi: parse_int(hi)? })
        }
        other => Err(Failure::Usage(format!("unknown mode {other:?} (lemma or range)"))),
    }
}

/// Per-n criterion checks sharded across `jobs` threads; the assembly step
/// re-sorts, so shard boundaries are invisible in the result.
fn checked_outcomes(poly: &Polynomial, plan: &VerifyPlan, jobs: usize) -> Vec<CriterionOutcome> {
    let (lo, hi) = (&plan.checked.0, &plan.checked.1);
    let width = usize::try_from(hi - lo + 1).expect("interval fits in memory");
    let jobs = jobs.clamp(1, 256).min(width.max(1));
    if jobs <= 1 {
        let mut out = Vec::with_capacity(width);
        let mut n = lo.clone();
        while &n <= hi {
            out.push(criterion_check(poly, &n));
            n += 1;
        }
        return out;
    }
    let chunk = width.div_ceil(jobs);
    let mut out = Vec::with_capacity(width);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for j in 0..jobs {
            let start = lo + Int::from(j * chunk);
            let len = chunk.min(width - (j * chunk).min(width));
            handles.push(scope.spawn(move || {
                let mut part = Vec::with_capacity(len);
                let mut n = start;
                for _ in 0..len {
                    part.push(criterion_check(poly, &n));
                    n += 1;
                }
                part
            }));
        }
        for h in handles {
            out.extend(h.join().expect("worker panicked"));
        }
    });
    out
}

fn interval_str(iv: &(Int, Int)) -> String {
    format!("[{}, {}]", iv.0, iv.1)
}

fn cmd_verify_rf(args: VerifyArgs) -> Result<u8, Failure> {
    let poly = args.poly.parse()?;
    let mode = parse_mode(&args)?;
    let plan = plan_verification(&poly, &mode)?;
    let outcomes = checked_outcomes(&poly, &plan, args.jobs);
    let outcome = pvsieve_core::descent::assemble_certificate(&poly, &mode, plan, outcomes);

    match outcome {
        VerifyOutcome::Certified(cert) => {
            let mut cert_note = None;
            if let Some(path) = &args.emit_cert {
                write_file(path, &cert.canonical_text())?;
                cert_note = Some(path.clone());
            }
            if args.json {
                let mut result = json!({
                    "status": "pass",
                    "mode": cert.mode.label(),
                    "checked": [cert.plan.checked.0.to_string(), cert.plan.checked.1.to_string()],
                    "values": Value::String(cert.entries.len().to_string()),
                    "witnesses": Value::String(cert.witness_count().to_string()),
                });
                if let Some((lo, hi)) = &cert.plan.i_hat {
                    result["i_hat"] = json!([lo.to_string(), hi.to_string()]);
                }
                if let Some((lo, hi)) = &cert.plan.base {
                    result["base"] = json!([lo.to_string(), hi.to_string()]);
                }
                if let Some(n_hat) = &cert.plan.n_hat {
                    result["n_hat"] = Value::String(n_hat.to_string());
                }
                if let Some(path) = cert_note {
                    result["certificate"] = Value::String(path);
                }
                print_json(&payload("verify-rf", &poly, vec![result]));
            } else {
                match (&cert.plan.i_hat, &cert.plan.base) {
                    (Some(i_hat), Some(base)) => {
                        println!("PASS: {poly} is recursively factorable");
                        println!("I = {} \u{222a} {}", interval_str(i_hat), interval_str(base));
                        if let Some(n_hat) = &cert.plan.n_hat {
                            println!("n_hat = {n_hat}");
                        }
                    }
                    _ => {
                        println!(
                            "PASS: {poly} satisfies the criterion on {}",
                            interval_str(&cert.plan.checked)
                        );
                    }
                }
                println!("checked = {}", interval_str(&cert.plan.checked));
                println!(
                    "values = {}, witnesses = {}",
                    cert.entries.len(),
                    cert.witness_count()
                );
                if let Some(path) = cert_note {
                    println!("certificate -> {path}");
                }
            }
            Ok(0)
        }
        VerifyOutcome::Counterexample { failure, .. } => {
            if args.json {
                let result = match &failure {
                    CriterionOutcome::ZeroValue { n } => json!({
                        "status": "fail",
                        "kind": "zero-value",
                        "at": n.to_string(),
                    }),
                    CriterionOutcome::MissingWitness { n, value, missing, .. } => json!({
                        "status": "fail",
                        "kind": "missing-witness",
                        "at": n.to_string(),
                        "value": value.to_string(),
                        "missing": missing
                            .iter()
                            .map(|mp| json!([mp.p.to_string(), mp.q.to_string()]))
                            .collect::<Vec<_>>(),
                    }),
                    CriterionOutcome::Satisfied { .. } => unreachable!("counterexamples fail"),
                };
                print_json(&payload("verify-rf", &poly, vec![result]));
            } else {
                match &failure {
                    CriterionOutcome::ZeroValue { n } => {
                        println!("FAIL: criterion violated at n = {n}");
                        println!("F({n}) = 0 (zero values admit no witness)");
                    }
                    CriterionOutcome::MissingWitness { n, value, missing, .. } => {
                        println!("FAIL: criterion violated at n = {n}");
                        let pairs = missing
                            .iter()
                            .map(|mp| format!("({}, {})", mp.p, mp.q))
                            .collect::<Vec<_>>()
                            .join(", ");
                        println!("F({n}) = {value}: no witness for pairs {pairs}");
                    }
                    CriterionOutcome::Satisfied { .. } => unreachable!("counterexamples fail"),
                }
            }
            Ok(1)
        }
    }
}

// ---- conic -----------------------------------------------------------

fn conic_equation(poly: &Polynomial, n: &Int) -> Result<String, Failure> {
    let (a, b, c) = poly.quad_coeffs()?;
    let terms: [(Int, &str); 5] = [
        (a.clone(), "X^2"),
        (b.clone(), "XY"),
        (c.clone(), "Y^2"),
        (Int::one(), "X"),
        (-n, "Y"),
    ];
    let mut s = String::new();
    for (coef, var) in terms {
        if coef.is_zero() {
            continue;
        }
        let mag = coef.abs();
        if s.is_empty() {
            if coef.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if coef.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&mag.to_string());
        }
        s.push_str(var);
    }
    if s.is_empty() {
        s.push('0');
    }
    s.push_str(" = 0");
    Ok(s)
}

fn cmd_conic(args: ConicArgs) -> Result<u8, Failure> {
    let poly = args.poly.parse()?;
    let n = parse_int(&args.n)?;
    let bound = args.r#box.as_deref().map(parse_int).transpose()?;
    if let Some(b) = &bound {
        if !b.is_positive() {
            return Err(Failure::Usage("--box must be positive".into()));
        }
    }
    let inst = ConicInstance::new(poly.clone(), n.clone())?;
    let (a, _, _) = poly.quad_coeffs()?;
    let a = a.clone();
    let points = enumerate_points(&inst, bound.as_ref())?;
    let d = inst.discriminant();

    // One verified row per point; everything below prints from here.
    struct Row {
        x: Int,
        y: Int,
        matrix: Option<pvsieve_core::gamma::GammaMatrix>,
        p: Int,
        q: Int,
        pell: Option<(Int, Int)>,
    }
    let mut rows = Vec::new();
    for pt in &points {
        let matrix = if pt.y.is_zero() { None } else { Some(point_to_matrix(&a, pt)?) };
        let (p, q, point) = point_to_factorization(&inst, pt)?;
        assert_eq!(&point, &n, "internal identity violation: report check");
        assert_eq!(&p * &q, poly.eval(&n), "internal identity violation: report check");
        let pell = if args.pell {
            let pp = pell_reduce(&inst, pt)?;
            assert_eq!(
                &pp.u * &pp.u - &d * &pp.v * &pp.v,
                Int::from(4) * &a * poly.eval(&n),
                "internal identity violation: report check"
            );
            Some((pp.u, pp.v))
        } else {
            None
        };
        rows.push(Row { x: pt.x.clone(), y: pt.y.clone(), matrix, p, q, pell });
    }

    if let Some(path) = &args.csv {
        let mut csv = String::from("X,Y,p,q,n\n");
        for r in &rows {
            csv.push_str(&format!("{},{},{},{},{}\n", r.x, r.y, r.p, r.q, n));
        }
        write_file(path, &csv)?;
    }
    if let Some(path) = &args.svg {
        write_file(path, &svg::render(&poly, &n, &points, bound.as_ref()))?;
    }

    if args.json {
        let result = json!({
            "n": n.to_string(),
            "discriminant": d.to_string(),
            "value": poly.eval(&n).to_string(),
            "points": rows
                .iter()
                .map(|r| {
                    let mut obj = json!({
                        "x": r.x.to_string(),
                        "y": r.y.to_string(),
                        "p": r.p.to_string(),
                        "q": r.q.to_string(),
                    });
                    if let Some(m) = &r.matrix {
                        obj["matrix"] = json!([
                            m.alpha.to_string(),
                            m.beta.to_string(),
                            m.gamma.to_string(),
                            m.delta.to_string()
                        ]);
                    }
                    if let Some((u, v)) = &r.pell {
                        obj["pell"] = json!([u.to_string(), v.to_string()]);
                    }
                    obj
                })
                .collect::<Vec<_>>(),
        });
        print_json(&payload("conic", &poly, vec![result]));
        return Ok(0);
    }

    println!("conic: {}", conic_equation(&poly, &n)?);
    println!("D = {d}");
    println!(
        "{} lattice point{}:",
        rows.len(),
        if rows.len() == 1 { "" } else { "s" }
    );
    let value = poly.eval(&n);
    for r in &rows {
        let place = match &r.matrix {
            Some(m) => format!("M = {m}"),
            None => "exceptional".to_string(),
        };
        let mut line = format!(
            "({}, {})  {}  {} = {} \u{00d7} {}",
            r.x, r.y, place, value, r.p, r.q
        );
        if let Some((u, v)) = &r.pell {
            line.push_str(&format!("  pell (U, V) = ({u}, {v})"));
        }
        println!("{line}");
    }
    if let Some(path) = &args.csv {
        println!("csv -> {path}");
    }
    if let Some(path) = &args.svg {
        println!("svg -> {path}");
    }
    Ok(0)
}
