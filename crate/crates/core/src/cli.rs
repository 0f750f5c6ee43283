//! Command-line front end. Exit codes: 0 success, 1 domain failure,
//! 2 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::exact::{parse_rational, RatMatrix, Rational};
use crate::families::{corr_family, negc_interval, negc_realize, FamilyError, UniformPairList};
use crate::json::{self, Claims, JsonError};
use crate::merge::{merge, merge_spectra, MergeError, MergeInput};
use crate::realize::{realize, universal, RealizationCertificate, RealizeError};
use crate::report::{format_certificate, format_verdicts};
use crate::spectrum::{classify, jcf_enumerate, ls_realizable, JordanForm, LsVerdict, Spectrum};

#[derive(Parser, Debug)]
#[command(name = "nnreal", version, about = "Exact nonnegative realizations of left half-plane spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for certificate files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for `universal`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a spectrum and run the realizability test.
    Check(SpectrumArg),
    /// List the Jordan forms allowed by a spectrum.
    Jcfs(SpectrumArg),
    /// Realize a spectrum with one Jordan form.
    Realize {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        jcf: JcfArg,
    },
    /// Realize a spectrum with every allowed Jordan form.
    Universal(SpectrumArg),
    /// Interval for c, or a realization of {λ, -c, (-a±bi)^((n-2)/2)}.
    FamilyNegc {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambda: Option<String>,
        #[command(flatten)]
        jcf: JcfArg,
    },
    /// Realize the family member with λ = ((2n-7)a²+b²)/(2a).
    FamilyCorr {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        jcf: JcfArg,
    },
    /// Merge two realizations (given as spectra, or as matrices with spectra).
    Merge {
        #[arg(long)]
        spectrum_a: String,
        #[arg(long)]
        spectrum_b: String,
        #[arg(long)]
        matrix_a: Option<String>,
        #[arg(long)]
        matrix_b: Option<String>,
    },
    /// Check a certificate, or a matrix against a claims file.
    Verify {
        #[arg(long, conflicts_with_all = ["matrix", "claims"])]
        certificate: Option<String>,
        #[arg(long, requires = "claims")]
        matrix: Option<String>,
        #[arg(long, requires = "matrix")]
        claims: Option<String>,
    },
}

#[derive(Args, Debug)]
struct SpectrumArg {
    /// Spectrum JSON, inline or as a file path.
    #[arg(long)]
    spectrum: String,
}

#[derive(Args, Debug)]
struct JcfArg {
    /// Index into the `jcfs` listing, or Jordan form JSON (inline or file).
    /// Defaults to the diagonal form.
    #[arg(long)]
    jcf: Option<String>,
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Parameter JSON {"lambda","a","b","n","c"}, inline or file; flags override it.
    #[arg(long)]
    params: Option<String>,
    #[arg(long = "a", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "b", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long = "c", allow_hyphen_values = true)]
    c: Option<String>,
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    Domain(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Input(m) => m,
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::InvalidJordanForm(_) => Failure::Input(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::UnsupportedShape(_) | FamilyError::NonpositiveParameter(_) | FamilyError::Spectrum(_) => {
                Failure::Input(e.to_string())
            }
            FamilyError::Realize(r) => r.into(),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<MergeError> for Failure {
    fn from(e: MergeError) -> Self {
        match e {
            MergeError::Realize(r) => r.into(),
            MergeError::NotSquare(_) | MergeError::DimensionMismatch { .. } | MergeError::Spectrum(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Successful output: the document for stdout, its text rendering, and
/// files to write under `--out`.
struct Output {
    json: Value,
    text: String,
    files: Vec<(String, Value)>,
    /// Set when the command ran but the answer is negative.
    failure: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            files: Vec::new(),
            failure: None,
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let result = dispatch(&cli).and_then(|out| {
        if let Some(dir) = &cli.out {
            write_files(dir, &out.files)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => json::to_pretty(&out.json),
                Format::Text => out.text.clone(),
            };
            let _ = stdout.write_all(body.as_bytes());
            match out.failure {
                Some(reason) => {
                    let _ = writeln!(stderr, "{reason}");
                    1
                }
                None => 0,
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message());
            f.code()
        }
    }
}

fn write_files(dir: &Path, files: &[(String, Value)]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("IoError: {}: {e}", dir.display())))?;
    for (name, v) in files {
        let path = dir.join(name);
        fs::write(&path, json::to_pretty(v)).map_err(|e| Failure::Input(format!("IoError: {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Reads a file when `arg` names one, otherwise parses `arg` as JSON.
fn load_json(arg: &str) -> Result<Value, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("IoError: {arg}: {e}")))?;
        return Ok(json::parse(&text)?);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(json::parse(arg)?);
    }
    Err(Failure::Input(format!("IoError: {arg}: no such file and not inline JSON")))
}

fn load_spectrum(arg: &str) -> Result<Spectrum, Failure> {
    Ok(json::spectrum_from_json(&load_json(arg)?)?)
}

fn resolve_jcf(arg: &JcfArg, spec: &Spectrum) -> Result<JordanForm, Failure> {
    let Some(text) = &arg.jcf else {
        return Ok(JordanForm::diagonal(spec.list()));
    };
    let j = if let Ok(index) = text.trim().parse::<usize>() {
        let forms = jcf_enumerate(spec.list());
        forms.get(index).cloned().ok_or_else(|| {
            Failure::Input(format!(
                "InvalidJordanForm: index {index} out of range, the spectrum allows {} forms",
                forms.len()
            ))
        })?
    } else {
        json::jcf_from_json(&load_json(text)?)?
    };
    j.validate(spec.list()).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(j)
}

fn rational_arg(name: &str, v: &Option<String>) -> Result<Option<Rational>, Failure> {
    v.as_ref()
        .map(|s| parse_rational(s).map_err(|e| Failure::Input(format!("{e} (--{name})"))))
        .transpose()
}

fn required<T>(name: &str, v: Option<T>) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(format!("MissingParameter: {name} is required")))
}

fn merged_params(p: &ParamArgs, lambda: &Option<String>) -> Result<json::ParamsJson, Failure> {
    let mut base = match &p.params {
        Some(arg) => json::params_from_json(&load_json(arg)?)?,
        None => json::ParamsJson::default(),
    };
    if let Some(v) = rational_arg("lambda", lambda)? {
        base.lambda = Some(v);
    }
    if let Some(v) = rational_arg("a", &p.a)? {
        base.a = Some(v);
    }
    if let Some(v) = rational_arg("b", &p.b)? {
        base.b = Some(v);
    }
    if let Some(v) = p.n {
        base.n = Some(v);
    }
    if let Some(v) = rational_arg("c", &p.c)? {
        base.c = Some(v);
    }
    Ok(base)
}

fn certificate_output(cert: &RealizationCertificate, extra: Option<(&str, Value)>) -> Output {
    let cert_json = json::certificate_to_json(cert);
    let doc = match extra {
        Some((key, v)) => json!({ key: v, "certificate": cert_json.clone() }),
        None => cert_json.clone(),
    };
    let mut out = Output::new(doc, format_certificate(cert));
    out.files.push(("certificate.json".into(), cert_json));
    out
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check(arg) => check(&load_spectrum(&arg.spectrum)?),
        Command::Jcfs(arg) => {
            let spec = load_spectrum(&arg.spectrum)?;
            let forms = jcf_enumerate(spec.list());
            let text: String = forms.iter().enumerate().map(|(i, j)| format!("{i}: {j}\n")).collect();
            Ok(Output::new(
                json!({ "count": forms.len(), "forms": forms.iter().map(json::jcf_to_json).collect::<Vec<_>>() }),
                text,
            ))
        }
        Command::Realize { spectrum, jcf } => {
            let spec = load_spectrum(&spectrum.spectrum)?;
            let j = resolve_jcf(jcf, &spec)?;
            Ok(certificate_output(&realize(&spec, &j)?, None))
        }
        Command::Universal(arg) => Ok(run_universal(&load_spectrum(&arg.spectrum)?, cli.jobs)),
        Command::FamilyNegc { params, lambda, jcf } => family_negc(&merged_params(params, lambda)?, jcf),
        Command::FamilyCorr { params, jcf } => {
            let p = merged_params(params, &None)?;
            let fam = corr_family(
                &required("a", p.a)?,
                &required("b", p.b)?,
                required("n", p.n)?,
                &required("c", p.c)?,
            )?;
            let spec = fam.spectrum()?;
            let j = resolve_jcf(jcf, &spec)?;
            let cert = negc_realize(&fam, &j)?;
            Ok(certificate_output(&cert, Some(("params", json::params_to_json(&fam)))))
        }
        Command::Merge {
            spectrum_a,
            spectrum_b,
            matrix_a,
            matrix_b,
        } => {
            let sa = load_spectrum(spectrum_a)?;
            let sb = load_spectrum(spectrum_b)?;
            let cert = match (matrix_a, matrix_b) {
                (None, None) => merge_spectra(&sa, &sb)?,
                (Some(ma), Some(mb)) => {
                    let ma = json::matrix_from_json(&load_json(ma)?)?;
                    let mb = json::matrix_from_json(&load_json(mb)?)?;
                    merge(&MergeInput::new(ma, sa, mb, sb)?)?
                }
                _ => return Err(Failure::Input("MissingParameter: give both matrices or neither".into())),
            };
            Ok(certificate_output(&cert, None))
        }
        Command::Verify {
            certificate,
            matrix,
            claims,
        } => {
            let (m, c) = match (certificate, matrix, claims) {
                (Some(cert), _, _) => json::certificate_claims(&load_json(cert)?)?,
                (None, Some(m), Some(c)) => (
                    json::matrix_from_json(&load_json(m)?)?,
                    json::claims_from_json(&load_json(c)?)?,
                ),
                _ => return Err(Failure::Input("MissingParameter: give --certificate or --matrix with --claims".into())),
            };
            Ok(verify(&m, &c))
        }
    }
}

fn check(spec: &Spectrum) -> Result<Output, Failure> {
    let verdict = ls_realizable(spec);
    let class = classify(spec);
    let reason = verdict.to_string();
    let mut doc = json!({
        "spectrum": json::spectrum_to_json(spec),
        "verdict": verdict.name(),
        "reason": reason,
        "class": {
            "left_half_plane": class.left_half_plane,
            "suleimanova": class.suleimanova,
            "smigoc_type": class.smigoc_type,
            "trace_nonneg": class.trace_nonneg,
        },
    });
    if let LsVerdict::Realizable { s1, s2, n } | LsVerdict::NotRealizable { s1, s2, n, .. } = &verdict {
        doc["s1"] = json::rational_to_json(s1);
        doc["s2"] = json::rational_to_json(s2);
        doc["n"] = json!(n);
    }
    let text = format!(
        "spectrum  {spec}\n{reason}\nleft half-plane {}  suleimanova {}  smigoc type {}  trace ≥ 0 {}\n",
        class.left_half_plane, class.suleimanova, class.smigoc_type, class.trace_nonneg
    );
    let mut out = Output::new(doc, text);
    if !verdict.is_realizable() {
        out.failure = Some(reason);
    }
    Ok(out)
}

fn run_universal(spec: &Spectrum, jobs: usize) -> Output {
    let report = universal(spec, jobs);
    let mut entries = Vec::new();
    let mut text = format!("spectrum  {spec}\n");
    let mut files = Vec::new();
    let mut failures = Vec::new();
    for (i, (j, result)) in report.entries.iter().enumerate() {
        match result {
            Ok(cert) => {
                let c = json::certificate_to_json(cert);
                files.push((format!("jcf-{i}.json"), c.clone()));
                entries.push(json!({ "index": i, "jcf": json::jcf_to_json(j), "certificate": c }));
                text.push_str(&format!("{i}: {j}  realized ({}x{})\n", cert.matrix.rows(), cert.matrix.cols()));
            }
            Err(e) => {
                entries.push(json!({ "index": i, "jcf": json::jcf_to_json(j), "error": e.to_string() }));
                text.push_str(&format!("{i}: {j}  {e}\n"));
                failures.push(format!("jcf {i}: {e}"));
            }
        }
    }
    text.push_str(&format!("realized {}/{}\n", report.realized(), report.total()));
    let mut out = Output::new(
        json!({
            "spectrum": json::spectrum_to_json(spec),
            "realized": report.realized(),
            "total": report.total(),
            "entries": entries,
        }),
        text,
    );
    out.files = files;
    if !failures.is_empty() {
        out.failure = Some(failures.join("\n"));
    }
    out
}

fn family_negc(p: &json::ParamsJson, jcf: &JcfArg) -> Result<Output, Failure> {
    let lambda = required("lambda", p.lambda.clone())?;
    let a = required("a", p.a.clone())?;
    let b = required("b", p.b.clone())?;
    let n = required("n", p.n)?;
    let interval = negc_interval(&lambda, &a, &b, n)?;
    let interval_json = json!({
        "lo": json::rational_to_json(&interval.lo),
        "lo_open": interval.lo_open,
        "hi": json::rational_to_json(&interval.hi),
    });
    let Some(c) = p.c.clone() else {
        return Ok(Output::new(
            json!({ "interval": interval_json }),
            format!("c ∈ {interval}\n"),
        ));
    };
    let fam = UniformPairList::new(lambda, a, b, n, c)?;
    let spec = fam.spectrum()?;
    let j = resolve_jcf(jcf, &spec)?;
    let cert = negc_realize(&fam, &j)?;
    let mut out = certificate_output(&cert, Some(("params", json::params_to_json(&fam))));
    out.json["interval"] = interval_json;
    out.text = format!("c ∈ {interval}\n{}", out.text);
    Ok(out)
}

fn verify(m: &RatMatrix, claims: &Claims) -> Output {
    let check = json::check_claims(m, claims);
    let mut text = format!("ok {}\n", check.ok());
    text.push_str(&format_verdicts(&check.verdicts));
    if let Some(v) = check.verdicts_match {
        text.push_str(&format!("  claimed verdicts {}\n", if v { "match" } else { "differ" }));
    }
    let mut out = Output::new(check.to_json(), text);
    if !check.ok() {
        out.failure = Some(format!("VerificationFailed: {} not confirmed", check.failed().join(", ")));
    }
    out
}
