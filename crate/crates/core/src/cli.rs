//! The `vcone` command line.
//!
//! [`run`] takes the full argument vector and returns captured output and an
//! exit code, so the binary is a three-line wrapper and the tests drive the
//! same code path without spawning processes.
//!
//! Exit codes: `0` success, `2` parse or validation failure, `3` violated
//! precondition (including a class of VC dimension 2 or more where at most 1
//! is required), `4` internal invariant violation.

use std::path::{Path, PathBuf};

use clap::Parser;
use itertools::Itertools;
use num::ToPrimitive;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::compression::{compress, reconstruct, verify_scheme_with, CompressedSample, SchemeContext};
use crate::concept::{vc_dimension, vc_dimension_bounded, ConceptClass, Hypothesis, SearchLimits};
use crate::erm::{
    exact_expected_error_with, fubini_check, monte_carlo_error, OrdinalClassConfig, SegmentConvention,
};
use crate::error::{Error, ErrorKind};
use crate::io::{parse_permutation, parse_sample, ClassFile};
use crate::structure::{structure_certificate, StructureCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

const FINITE_SCALE_NOTE: &str = "note: at every finite N the adversarial rule's expected error decays to 0 as m grows, \
and the two iterated averages of 1[x<y] coincide; the probability-one failure needs an uncountable \
well-ordered domain with countable initial segments and is not reproduced here";

#[derive(Debug, Parser)]
#[command(name = "vcone", version, about = "Exact analyses of VC-dimension-1 concept classes")]
struct Cli {
    /// Emit one JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Subcommand)]
enum Command {
    /// Exact VC dimension and a shattered set of that size.
    Vcdim {
        file: PathBuf,
        #[arg(long, default_value_t = SearchLimits::default().max_domain)]
        max_domain: usize,
        #[arg(long, default_value_t = SearchLimits::default().max_hypotheses)]
        max_hypotheses: usize,
    },
    /// Tree-order certificate, or a shattered pair.
    Structure {
        file: PathBuf,
        /// Reference hypothesis: `lex-min` or an index into the file's list.
        #[arg(long = "f", default_value = "lex-min")]
        reference: String,
        /// Write the parent forest as a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compress a labeled sample to at most one unlabeled point.
    Compress {
        file: PathBuf,
        /// Comma-separated `name=bit` pairs.
        #[arg(long)]
        sample: String,
        #[arg(long = "f", default_value = "lex-min")]
        reference: String,
    },
    /// Rebuild a full labeling from a compressed point (or `EMPTY`).
    Reconstruct {
        file: PathBuf,
        /// Point name, or `EMPTY`.
        #[arg(long)]
        point: String,
        #[arg(long = "f", default_value = "lex-min")]
        reference: String,
    },
    /// Exhaustively audit the compression contract.
    Verify {
        file: Option<PathBuf>,
        /// Largest sample point-set size; defaults to the domain size.
        #[arg(long)]
        max_m: Option<usize>,
        /// Audit every class on a domain of this many points (1..=4).
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long = "f", default_value = "lex-min")]
        reference: String,
    },
    /// Adversarial ERM experiment on the ordinal class.
    Erm {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Sample size.
        #[arg(long)]
        m: usize,
        /// Monte Carlo trials.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Seed of the first trial; trial `t` uses `seed + t`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `identity` or a file of ranks 1..=N.
        #[arg(long, default_value = "identity")]
        pi: String,
        /// Use the literal open segment below the top point.
        #[arg(long)]
        open_segment: bool,
        /// Inclusive range `a..b` of sample sizes for an exact-error table.
        #[arg(long)]
        m_range: Option<String>,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    lines: Vec<String>,
    result: Value,
    code: i32,
}

impl Report {
    fn ok(lines: Vec<String>, result: Value) -> Self {
        Report {
            lines,
            result,
            code: EXIT_OK,
        }
    }
}

struct Input {
    digest: String,
    file: ClassFile,
    class: ConceptClass,
}

struct Failure {
    error: Error,
    message: String,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            message: error.to_string(),
            error,
        }
    }
}

fn exit_code(error: &Error) -> i32 {
    match error.kind() {
        ErrorKind::Input => EXIT_INPUT,
        ErrorKind::Precondition => EXIT_PRECONDITION,
        ErrorKind::Internal => EXIT_INTERNAL,
    }
}

fn shell_word(arg: &str) -> String {
    if !arg.is_empty() && arg.chars().all(|c| c.is_ascii_alphanumeric() || "-_./=,:@+".contains(c)) {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', "'\\''"))
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Input, Error> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Invalid(format!("{} is not UTF-8", path.display())))?;
    let file = ClassFile::parse(&text)?;
    let class = file.to_class()?;
    Ok(Input {
        digest: sha256_hex(&bytes),
        file,
        class,
    })
}

fn reference(input: &Input, spec: &str) -> Result<(Option<Hypothesis>, String), Error> {
    if spec == "lex-min" {
        return Ok((None, "lex-min".to_string()));
    }
    let index: usize = spec
        .parse()
        .map_err(|_| Error::Invalid(format!("--f expects `lex-min` or an index, found {spec:?}")))?;
    let listed = input.file.listed_hypotheses()?;
    let h = listed.get(index).cloned().ok_or_else(|| {
        Error::Invalid(format!("--f index {index} out of range for {} hypotheses", listed.len()))
    })?;
    Ok((Some(h), format!("index {index}")))
}

fn scheme(input: &Input, spec: &str) -> Result<SchemeContext, Failure> {
    let (f, _) = reference(input, spec)?;
    SchemeContext::new(&input.class, f.as_ref()).map_err(|e| shattered_failure(e, input))
}

fn shattered_failure(error: Error, input: &Input) -> Failure {
    let message = match &error {
        Error::Shattered(y, z) => {
            let d = input.class.domain();
            format!("precondition failed: NOT VCdim≤1: pair ({},{}) is shattered", d.name(*y), d.name(*z))
        }
        other => other.to_string(),
    };
    Failure { error, message }
}

fn cmd_vcdim(input: &Input, limits: SearchLimits) -> Result<Report, Failure> {
    let vc = vc_dimension_bounded(&input.class, limits)?;
    let domain = input.class.domain();
    let names: Vec<&str> = vc.witness.iter().map(|&i| domain.name(i)).collect();
    Ok(Report::ok(
        vec![format!("vcdim = {}, witness {}", vc.dimension, domain.format_set(&vc.witness))],
        json!({ "vcdim": vc.dimension, "witness": names }),
    ))
}

fn cmd_structure(input: &Input, spec: &str, dot: Option<&Path>) -> Result<Report, Failure> {
    let (f, source) = reference(input, spec)?;
    let domain = input.class.domain();
    match structure_certificate(&input.class, f.as_ref())? {
        StructureCertificate::Tree(cert) => {
            let q = cert.quotient();
            let labels: Vec<String> = (0..q.num_classes()).map(|i| q.class_label(i, domain)).collect();
            let edges = cert.order().edges();
            let mut lines = vec![
                "VCdim≤1: tree order certificate".to_string(),
                format!("f = {} ({source})", cert.f()),
                format!("classes: {}", labels.len()),
            ];
            lines.extend(labels.iter().map(|l| format!("  {l}")));
            lines.push(format!("edges: {}", edges.len()));
            lines.extend(edges.iter().map(|&(p, c)| format!("  {} -> {}", labels[p], labels[c])));
            if let Some(path) = dot {
                std::fs::write(path, cert.to_dot(domain))
                    .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
                lines.push(format!("dot: {}", path.display()));
            }
            Ok(Report::ok(
                lines,
                json!({
                    "vcdim_at_most_one": true,
                    "f": cert.f().to_string(),
                    "classes": labels,
                    "edges": edges.iter().map(|&(p, c)| [labels[p].clone(), labels[c].clone()]).collect::<Vec<_>>(),
                }),
            ))
        }
        StructureCertificate::Shattered(w) => {
            let mut lines = vec![format!(
                "NOT VCdim≤1: pair ({},{})",
                domain.name(w.y),
                domain.name(w.z)
            )];
            lines.extend(w.rows().iter().map(|(pat, h)| format!("  {pat} {h}")));
            Ok(Report {
                lines,
                result: json!({
                    "vcdim_at_most_one": false,
                    "pair": [domain.name(w.y), domain.name(w.z)],
                    "witnesses": w.rows().iter().map(|(pat, h)| json!({"pattern": pat, "hypothesis": h.to_string()})).collect::<Vec<_>>(),
                }),
                code: EXIT_PRECONDITION,
            })
        }
    }
}

fn cmd_compress(input: &Input, sample: &str, spec: &str) -> Result<Report, Failure> {
    let ctx = scheme(input, spec)?;
    let sample = parse_sample(sample, input.class.domain())?;
    let compressed = compress(&sample, &ctx)?;
    let text = match compressed {
        CompressedSample::Empty => "EMPTY".to_string(),
        CompressedSample::Single(p) => input.class.domain().name(p).to_string(),
    };
    Ok(Report::ok(vec![text.clone()], json!({ "compressed": text })))
}

fn cmd_reconstruct(input: &Input, point: &str, spec: &str) -> Result<Report, Failure> {
    let ctx = scheme(input, spec)?;
    let compressed = if point == "EMPTY" {
        CompressedSample::Empty
    } else {
        CompressedSample::Single(input.class.domain().index_of(point)?)
    };
    let h = reconstruct(&compressed, &ctx)?.to_string();
    Ok(Report::ok(vec![h.clone()], json!({ "hypothesis": h })))
}

fn cmd_verify(input: &Input, max_m: Option<usize>, spec: &str) -> Result<Report, Failure> {
    let ctx = scheme(input, spec)?;
    let m = max_m.unwrap_or(input.class.n());
    let report = verify_scheme_with(&ctx, m)?;
    let result = json!({
        "passed": report.passed(),
        "max_m": m,
        "sample_sets": report.sample_sets,
        "label_checks": report.label_checks,
        "permutation_checks": report.permutation_checks,
    });
    let mut lines = vec![];
    let code = match &report.failure {
        None => {
            lines.push(format!("PASS, {} sample-sets checked", report.sample_sets));
            EXIT_OK
        }
        Some(fail) => {
            lines.push(format!("FAIL, after {} sample-sets", report.sample_sets));
            lines.push(format!(
                "  hypothesis {} on {}: {}",
                fail.hypothesis,
                input.class.domain().format_set(&fail.points),
                fail.reason
            ));
            EXIT_INTERNAL
        }
    };
    lines.push(format!("label checks: {}", report.label_checks));
    lines.push(format!("permutation checks: {}", report.permutation_checks));
    Ok(Report { lines, result, code })
}

fn cmd_sweep(n: usize) -> Result<Report, Failure> {
    let mut classes = 0usize;
    let mut vc_one = 0usize;
    let mut sample_sets = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for class in ConceptClass::enumerate_all(n)? {
        classes += 1;
        let oracle = vc_dimension(&class) <= 1;
        let cert = structure_certificate(&class, None)?;
        if cert.is_tree() != oracle {
            failures.push(format!("certificate disagrees with brute force on {:?}", hypotheses_of(&class)));
            continue;
        }
        if let StructureCertificate::Tree(_) = cert {
            vc_one += 1;
            let ctx = SchemeContext::new(&class, None)?;
            let report = verify_scheme_with(&ctx, n)?;
            sample_sets += report.sample_sets;
            if let Some(f) = report.failure {
                failures.push(format!("{:?}: {}", hypotheses_of(&class), f.reason));
            }
        }
    }
    let passed = failures.is_empty();
    let mut lines = vec![format!(
        "sweep n={n}: {}, {classes} classes, {vc_one} with VCdim≤1, {sample_sets} sample-sets checked",
        if passed { "PASS" } else { "FAIL" }
    )];
    lines.extend(failures.iter().take(10).map(|f| format!("  {f}")));
    Ok(Report {
        lines,
        result: json!({
            "passed": passed,
            "n": n,
            "classes": classes,
            "vcdim_at_most_one": vc_one,
            "sample_sets": sample_sets,
            "failures": failures.len(),
        }),
        code: if passed { EXIT_OK } else { EXIT_INTERNAL },
    })
}

fn hypotheses_of(class: &ConceptClass) -> Vec<String> {
    class.hypotheses().iter().map(|h| h.to_string()).collect()
}

fn parse_range(spec: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::Invalid(format!("--m-range expects a..b with 1 <= a <= b, found {spec:?}"));
    let (a, b) = spec.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn decimal(r: &num::BigRational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

#[allow(clippy::too_many_arguments)]
fn cmd_erm(
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    pi: &str,
    open: bool,
    m_range: Option<&str>,
    digest: &mut Option<String>,
) -> Result<Report, Failure> {
    if n == 0 || m == 0 {
        return Err(Error::Invalid("--n and --m must be at least 1".into()).into());
    }
    let cfg = if pi == "identity" {
        OrdinalClassConfig::identity(n)?
    } else {
        let bytes = read_bytes(Path::new(pi))?;
        *digest = Some(sha256_hex(&bytes));
        let cfg = parse_permutation(&String::from_utf8_lossy(&bytes))?;
        if cfg.n() != n {
            return Err(Error::InvalidPermutation(format!("{pi} has {} ranks, --n is {n}", cfg.n())).into());
        }
        cfg
    };
    let convention = if open { SegmentConvention::Open } else { SegmentConvention::Closed };
    let m32 = u32::try_from(m).map_err(|_| Error::Invalid("--m too large".into()))?;
    let exact = exact_expected_error_with(n as u64, m32, convention);
    let exact_f = exact.to_f64().unwrap_or(f64::NAN);
    let mc = monte_carlo_error(&cfg, m, trials, seed, convention)?;
    let within = (mc.mean - exact_f).abs() <= mc.half_width;
    let fub = fubini_check(&cfg);

    let mut lines = vec![
        format!(
            "erm: n={n} m={m} trials={trials} seed={seed} convention={} pi={pi}",
            convention.name()
        ),
        format!("exact expected error = {exact} ({})", decimal(&exact)),
        format!(
            "monte carlo: mean = {:.6} ± {:.6} (3 s.e., generator {})",
            mc.mean, mc.half_width, mc.generator
        ),
        format!("within 3 s.e. of exact: {}", if within { "yes" } else { "no" }),
    ];
    let mut table = Vec::new();
    if let Some(spec) = m_range {
        let (a, b) = parse_range(spec)?;
        lines.push("m exact".to_string());
        for mm in a..=b {
            let e = exact_expected_error_with(n as u64, mm, convention);
            lines.push(format!("{mm} {e} {}", decimal(&e)));
            table.push(json!({ "m": mm, "exact": e.to_string(), "value": e.to_f64() }));
        }
    }
    lines.push(format!(
        "fubini: row={} col={} pairs={}",
        fub.row_mean, fub.col_mean, fub.pair_count
    ));
    lines.push(FINITE_SCALE_NOTE.to_string());
    Ok(Report::ok(
        lines,
        json!({
            "n": n,
            "m": m,
            "convention": convention.name(),
            "exact_expected_error": exact.to_string(),
            "exact_expected_error_value": exact_f,
            "monte_carlo": {
                "mean": mc.mean,
                "std_error": mc.std_error,
                "half_width": mc.half_width,
                "trials": mc.trials,
                "seed": seed,
                "generator": mc.generator,
                "within_half_width": within,
            },
            "m_table": table,
            "fubini": {
                "row_mean": fub.row_mean.to_string(),
                "col_mean": fub.col_mean.to_string(),
                "pair_count": fub.pair_count,
            },
            "note": FINITE_SCALE_NOTE,
        }),
    ))
}

/// Run one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };

    let mut input_path: Option<String> = None;
    let mut digest: Option<String> = None;
    let result = (|| -> Result<Report, Failure> {
        let with_input = |path: &Path,
                          input_path: &mut Option<String>,
                          digest: &mut Option<String>|
         -> Result<Input, Failure> {
            *input_path = Some(path.display().to_string());
            let input = load(path)?;
            *digest = Some(input.digest.clone());
            Ok(input)
        };
        match &cli.command {
            Command::Vcdim {
                file,
                max_domain,
                max_hypotheses,
            } => {
                let input = with_input(file, &mut input_path, &mut digest)?;
                cmd_vcdim(
                    &input,
                    SearchLimits {
                        max_domain: *max_domain,
                        max_hypotheses: *max_hypotheses,
                    },
                )
            }
            Command::Structure { file, reference, dot } => {
                let input = with_input(file, &mut input_path, &mut digest)?;
                cmd_structure(&input, reference, dot.as_deref())
            }
            Command::Compress { file, sample, reference } => {
                let input = with_input(file, &mut input_path, &mut digest)?;
                cmd_compress(&input, sample, reference)
            }
            Command::Reconstruct { file, point, reference } => {
                let input = with_input(file, &mut input_path, &mut digest)?;
                cmd_reconstruct(&input, point, reference)
            }
            Command::Verify {
                file,
                max_m,
                sweep,
                reference,
            } => match (file, sweep) {
                (_, Some(n)) => cmd_sweep(*n),
                (Some(file), None) => {
                    let input = with_input(file, &mut input_path, &mut digest)?;
                    cmd_verify(&input, *max_m, reference)
                }
                (None, None) => Err(Error::Invalid("verify needs a class file or --sweep <n>".into()).into()),
            },
            Command::Erm {
                n,
                m,
                trials,
                seed,
                pi,
                open_segment,
                m_range,
            } => {
                if pi != "identity" {
                    input_path = Some(pi.clone());
                }
                cmd_erm(*n, *m, *trials, *seed, pi, *open_segment, m_range.as_deref(), &mut digest)
            }
        }
    })();

    let command_line = argv.iter().map(|a| shell_word(a)).join(" ");
    let version = env!("CARGO_PKG_VERSION");
    let input_line = match (&input_path, &digest) {
        (Some(p), Some(d)) => format!("# input: {p} sha256={d}"),
        (Some(p), None) => format!("# input: {p}"),
        _ => "# input: none".to_string(),
    };
    let (report, failure) = match result {
        Ok(r) => (Some(r), None),
        Err(f) => (None, Some(f)),
    };
    let code = match (&report, &failure) {
        (Some(r), _) => r.code,
        (None, Some(f)) => exit_code(&f.error),
        (None, None) => unreachable!(),
    };

    if cli.json {
        let result = match (&report, &failure) {
            (Some(r), _) => r.result.clone(),
            (_, Some(f)) => json!({ "error": f.message }),
            _ => Value::Null,
        };
        let doc = json!({
            "tool": "vcone",
            "version": version,
            "command": argv,
            "input": input_path,
            "input_sha256": digest,
            "result": result,
            "exit_status": code,
        });
        let mut stdout = serde_json::to_string_pretty(&doc).expect("json values serialize");
        stdout.push('\n');
        let stderr = failure.map(|f| format!("error: {}\n", f.message)).unwrap_or_default();
        return Outcome { stdout, stderr, code };
    }

    let mut stdout = format!("# vcone {version}\n# command: {command_line}\n{input_line}\n");
    let mut stderr = String::new();
    if let Some(r) = report {
        for line in r.lines {
            stdout.push_str(&line);
            stdout.push('\n');
        }
    }
    if let Some(f) = failure {
        stderr = format!("error: {}\n", f.message);
    }
    Outcome { stdout, stderr, code }
}
