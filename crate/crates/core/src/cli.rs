//! Command-line front end. Parsing and rendering live here so the binary is a
//! thin wrapper and every subcommand can be exercised in-process.

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::finite_field::{FieldCtx, FqElem, DEFAULT_MAX_ORDER};
use crate::hypergeometric::{Evaluator, HypSpec, Variant};
use crate::modular::{eta_product_coeffs, verify_ao_with, DEFAULT_TERMS};
use crate::theorems::{self, evaluator_with_bound, SweepPlan, TheoremReport, VerifyOptions};

/// Exit status for verification failures and evaluation errors.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for invalid invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "ffhyp",
    version,
    about = "Exact hypergeometric functions over finite fields"
)]
pub struct Cli {
    /// Largest field order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_q: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evaluate one function exactly.
    Eval(EvalArgs),
    /// Verify one identity over one or more fields.
    Verify(VerifyArgs),
    /// Run every verifier over one or more fields.
    Suite(SuiteArgs),
    /// Compare the all-φ 4F3 at 1 with the eta-product coefficients.
    Modular(ModularArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Star,
    Greene,
    Katz,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Star => Variant::Star,
            VariantArg::Greene => Variant::Greene,
            VariantArg::Katz => Variant::Katz,
        }
    }
}

/// A field element on the command line: an integer literal (reduced into the
/// prime subfield) or a generator power `g^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemArg {
    Int(i64),
    Pow(i64),
}

impl ElemArg {
    pub fn resolve(self, field: &FieldCtx) -> FqElem {
        match self {
            ElemArg::Int(c) => field.from_int(c),
            ElemArg::Pow(a) => field.exp(a),
        }
    }
}

impl FromStr for ElemArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid field element `{s}`: expected an integer or g^EXP");
        match s.strip_prefix("g^") {
            Some(e) => e.parse().map(ElemArg::Pow).map_err(|_| bad()),
            None => s.parse().map(ElemArg::Int).map_err(|_| bad()),
        }
    }
}

impl fmt::Display for ElemArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemArg::Int(c) => write!(f, "{c}"),
            ElemArg::Pow(a) => write!(f, "g^{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Star)]
    pub variant: VariantArg,
    /// Top parameters as character indices mod q-1.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub top: Vec<i64>,
    /// Bottom parameters as character indices mod q-1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub bottom: Vec<i64>,
    /// Argument: 0, 1, -1, any integer, or g^EXP.
    #[arg(long, allow_hyphen_values = true)]
    pub x: ElemArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub theorem: String,
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    pub q: Vec<u64>,
    /// exhaustive, sample:COUNT:SEED or auto[:COUNT:SEED].
    #[arg(long, default_value_t = SweepPlan::default())]
    pub plan: SweepPlan,
    /// Largest order for the recursion checks.
    #[arg(long, default_value_t = VerifyOptions::default().recursion_n_max)]
    pub n_max: usize,
    /// Largest order for the vanishing check.
    #[arg(long, default_value_t = VerifyOptions::default().vanishing_n_max)]
    pub vanishing_n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct SuiteArgs {
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = SweepPlan::default())]
    pub plan: SweepPlan,
    #[arg(long, default_value_t = VerifyOptions::default().recursion_n_max)]
    pub n_max: usize,
    #[arg(long, default_value_t = VerifyOptions::default().vanishing_n_max)]
    pub vanishing_n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct ModularArgs {
    #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13")]
    pub primes: Vec<u64>,
    /// Truncation order of the eta-product expansion.
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
    }
}

impl Cli {
    /// The canonical argument list for this configuration; parsing it yields `self` again.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["ffhyp".to_string()];
        let mut push = |k: &str, v: String| {
            args.push(format!("--{k}"));
            args.push(v);
        };
        match &self.command {
            Command::Eval(a) => {
                push("q", a.q.to_string());
                let variant = Variant::from(a.variant).to_string();
                push("variant", variant);
                push("top", join(&a.top));
                if !a.bottom.is_empty() {
                    push("bottom", join(&a.bottom));
                }
                push("x", a.x.to_string());
                push("format", format_name(a.format).to_string());
            }
            Command::Verify(a) => {
                push("theorem", a.theorem.clone());
                push("q", join(&a.q));
                push("plan", a.plan.to_string());
                push("n-max", a.n_max.to_string());
                push("vanishing-n-max", a.vanishing_n_max.to_string());
                push("format", format_name(a.format).to_string());
            }
            Command::Suite(a) => {
                push("q", join(&a.q));
                push("plan", a.plan.to_string());
                push("n-max", a.n_max.to_string());
                push("vanishing-n-max", a.vanishing_n_max.to_string());
                push("format", format_name(a.format).to_string());
            }
            Command::Modular(a) => {
                push("primes", join(&a.primes));
                push("terms", a.terms.to_string());
                push("format", format_name(a.format).to_string());
            }
        }
        let name = match self.command {
            Command::Eval(_) => "eval",
            Command::Verify(_) => "verify",
            Command::Suite(_) => "suite",
            Command::Modular(_) => "modular",
        };
        args.insert(1, name.to_string());
        args.push("--max-q".to_string());
        args.push(self.max_q.to_string());
        args
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CliOutput {
    fn error(msg: impl fmt::Display, code: i32) -> Self {
        CliOutput {
            stderr: format!("error: {msg}\n"),
            code,
            ..Default::default()
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                CliOutput {
                    stdout: text,
                    ..Default::default()
                }
            } else {
                CliOutput {
                    stderr: text,
                    code: EXIT_USAGE,
                    ..Default::default()
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> CliOutput {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.max_q),
        Command::Verify(a) => cmd_verify(a, cli.max_q),
        Command::Suite(a) => cmd_suite(a, cli.max_q),
        Command::Modular(a) => cmd_modular(a, cli.max_q),
    }
}

/// One header line per field: order, modulus for extensions, and the
/// generator that fixes the character labelling.
fn field_header(field: &FieldCtx) -> String {
    let modulus = if field.degree() > 1 {
        format!(
            " = F_{}[x]/({})",
            field.characteristic(),
            field.modulus_string()
        )
    } else {
        String::new()
    };
    format!(
        "# F_{}{modulus}, g = {}; χ_j(g^a) = ζ_{}^(j·a), θ(x) = ζ_{}^Tr(x)",
        field.order(),
        field.polynomial_string(field.generator()),
        field.unit_order(),
        field.characteristic()
    )
}

fn field_record(field: &FieldCtx) -> serde_json::Value {
    json!({
        "q": field.order(),
        "modulus": field.modulus_string(),
        "generator": field.polynomial_string(field.generator()),
    })
}

const CONVENTION: &str = "character j sends g^a to exp(2πi·j·a/(q-1)); θ(x) = exp(2πi·Tr(x)/p); tuples list character indices";

pub fn cmd_eval(a: &EvalArgs, max_q: u64) -> CliOutput {
    let ev = match evaluator_with_bound(a.q, max_q) {
        Ok(ev) => ev,
        Err(e) => return CliOutput::error(e, EXIT_USAGE),
    };
    let chars = ev.chars();
    let top: Vec<_> = a.top.iter().map(|&j| chars.char(j)).collect();
    let bottom: Vec<_> = a.bottom.iter().map(|&j| chars.char(j)).collect();
    let x = a.x.resolve(ev.field());
    let variant = Variant::from(a.variant);
    let spec = HypSpec::new(variant, top.clone(), bottom.clone(), x);
    let value = match ev.evaluate(&spec) {
        Ok(v) => v,
        Err(e) => return CliOutput::error(e, EXIT_USAGE),
    };
    let rational = value.to_rational().map(|r| r.to_string());
    let field = ev.field();
    let indices =
        |cs: &[crate::characters::MultChar]| cs.iter().map(|c| c.index()).collect::<Vec<_>>();
    let stdout = match a.format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{}", field_header(field));
            let _ = writeln!(
                out,
                "{variant} {}F{}({:?}; {:?} | {})",
                top.len(),
                bottom.len(),
                indices(&top),
                indices(&bottom),
                field.describe(x)
            );
            let _ = writeln!(
                out,
                "coefficients over ζ_{}: {}",
                ev.ring().conductor(),
                value.coefficient_string()
            );
            let _ = writeln!(out, "rational: {}", rational.as_deref().unwrap_or("none"));
            out
        }
        Format::Json => {
            let doc = json!({
                "convention": CONVENTION,
                "field": field_record(field),
                "variant": variant.to_string(),
                "top": indices(&top),
                "bottom": indices(&bottom),
                "x": field.describe(x),
                "conductor": ev.ring().conductor(),
                "coefficients": value.coefficient_string(),
                "rational": rational,
            });
            to_json(&doc)
        }
    };
    CliOutput {
        stdout,
        ..Default::default()
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn options(n_max: usize, vanishing_n_max: usize) -> VerifyOptions {
    VerifyOptions {
        recursion_n_max: n_max,
        vanishing_n_max,
    }
}

/// Runs `ids` over every field in `q_list` and renders the reports.
fn run_reports(
    ids: &[&str],
    q_list: &[u64],
    plan: &SweepPlan,
    opts: &VerifyOptions,
    format: Format,
    max_q: u64,
) -> CliOutput {
    let mut reports: Vec<TheoremReport> = Vec::new();
    let mut fields = Vec::new();
    let mut text = String::new();
    let mut stderr = String::new();
    for &q in q_list {
        let ev: Evaluator = match evaluator_with_bound(q, max_q) {
            Ok(ev) => ev,
            Err(e) => return CliOutput::error(e, EXIT_USAGE),
        };
        fields.push(field_record(ev.field()));
        let _ = writeln!(text, "{}", field_header(ev.field()));
        for id in ids {
            let report = match theorems::verify(id, &ev, plan, opts) {
                Ok(r) => r,
                Err(e) => return CliOutput::error(e, EXIT_USAGE),
            };
            if report.skipped {
                let reason = report.skip_reason.as_deref().unwrap_or("");
                let _ = writeln!(stderr, "warning: {id} skipped at q = {q}: {reason}");
            }
            text.push_str(&report.to_text());
            reports.push(report);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let skipped = reports.iter().filter(|r| r.skipped).count();
    let stdout = match format {
        Format::Text => {
            let _ = writeln!(
                text,
                "# plan {plan}: {} reports, {} passed, {failed} failed, {skipped} skipped",
                reports.len(),
                reports.len() - failed - skipped
            );
            text
        }
        Format::Json => to_json(&json!({
            "convention": CONVENTION,
            "plan": plan.to_string(),
            "fields": fields,
            "reports": reports,
        })),
    };
    CliOutput {
        stdout,
        stderr,
        code: if failed == 0 { 0 } else { EXIT_FAILURE },
    }
}

pub fn cmd_verify(a: &VerifyArgs, max_q: u64) -> CliOutput {
    if !theorems::is_known(&a.theorem) {
        let known: Vec<&str> = theorems::all_ids().collect();
        return CliOutput::error(
            format!(
                "unknown theorem id `{}`; known ids: {}",
                a.theorem,
                known.join(", ")
            ),
            EXIT_USAGE,
        );
    }
    run_reports(
        &[a.theorem.as_str()],
        &a.q,
        &a.plan,
        &options(a.n_max, a.vanishing_n_max),
        a.format,
        max_q,
    )
}

pub fn cmd_suite(a: &SuiteArgs, max_q: u64) -> CliOutput {
    let ids: Vec<&str> = theorems::all_ids().collect();
    run_reports(
        &ids,
        &a.q,
        &a.plan,
        &options(a.n_max, a.vanishing_n_max),
        a.format,
        max_q,
    )
}

pub fn cmd_modular(a: &ModularArgs, max_q: u64) -> CliOutput {
    if let Some(&p) = a.primes.iter().find(|&&p| p > max_q) {
        return CliOutput::error(format!("p = {p} exceeds the bound {max_q}"), EXIT_USAGE);
    }
    let largest = a.primes.iter().copied().max().unwrap_or(0) as usize;
    let series = eta_product_coeffs(a.terms.max(largest));
    let mut checks = Vec::new();
    for &p in &a.primes {
        match verify_ao_with(p, &series) {
            Ok(c) => checks.push(c),
            Err(e) => return CliOutput::error(e, EXIT_USAGE),
        }
    }
    let matched = checks.iter().filter(|c| c.matches).count();
    let stdout = match a.format {
        Format::Text => {
            let mut out = String::from(
                "# 4F3(φ,φ,φ,φ; ε,ε,ε | 1) over F_p against γ(p) + p, η⁴(2z)η⁴(4z) = Σ γ(n) q^n\n",
            );
            for c in &checks {
                let _ = writeln!(out, "{c}");
            }
            let _ = writeln!(out, "# {matched}/{} primes match", checks.len());
            out
        }
        Format::Json => to_json(&json!({
            "terms": series.terms(),
            "results": checks,
            "matched": matched,
        })),
    };
    CliOutput {
        stdout,
        code: if matched == checks.len() {
            0
        } else {
            EXIT_FAILURE
        },
        ..Default::default()
    }
}
