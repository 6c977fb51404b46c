//! `lcc`: validation, slot enumeration and cohomology of finite Lie conformal
//! algebras from the command line.

use std::fmt::Write as _;
use std::io::{IsTerminal, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcc_core::cohomology::{
    basic_cohomology, bounded_cohomology, ideal_quotient_crosscheck, reduced_cohomology, relative_cohomology, table_rows,
    Cohomology, CohomologyReport, CrosscheckReport,
};
use lcc_core::complex::enumerate_zero_slots;
use lcc_core::textfmt::{parse_algebra_bytes, parse_rational};
use lcc_core::{builtin, Algebra, Scalar};

#[derive(Parser, Debug)]
#[command(name = "lcc", version, about = "Exact cohomology of finite Lie conformal algebras with trivial coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check skew-symmetry, the Jacobi identity and conformal weights.
    Check(Common),
    /// List the retained (eigenvalue-zero) slots.
    Table(Common),
    /// Basic cohomology.
    Basic {
        #[command(flatten)]
        common: Common,
        /// Truncate to polynomial degree <= B instead of using the weight grading (unverified).
        #[arg(long, value_name = "B")]
        bound: Option<u32>,
    },
    /// Reduced cohomology with coefficients in the module where ∂ acts by a.
    Reduced {
        #[command(flatten)]
        common: Common,
        /// Rational value of a, e.g. 0, -2 or 1/3.
        #[arg(long, value_name = "A", allow_hyphen_values = true)]
        a: String,
    },
    /// Cohomology relative to a subalgebra.
    Relative {
        #[command(flatten)]
        common: Common,
        /// Comma-separated generators of the subalgebra.
        #[arg(long, value_name = "GENS", value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// Compare relative cohomology modulo an ideal with the quotient's basic cohomology.
    Crosscheck {
        #[command(flatten)]
        common: Common,
        /// Comma-separated generators of the ideal.
        #[arg(long, value_name = "GENS", value_delimiter = ',', required = true)]
        sub: Vec<String>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in algebra.
    #[arg(long, value_parser = builtin::NAMES)]
    builtin: Option<String>,
    /// Algebra definition file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failure modes mapped to exit statuses.
enum Failure {
    Usage(String),
    Validation(String),
}

struct Style {
    color: bool,
}

impl Style {
    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn status(&self, passed: bool) -> String {
        if passed {
            self.paint("32", "ok  ")
        } else {
            self.paint("31;1", "FAIL")
        }
    }

    fn warn(&self) -> String {
        self.paint("33;1", "WARN")
    }

    fn header(&self, s: &str) -> String {
        self.paint("1", s)
    }
}

fn style_for(common: &Common) -> Result<Style, Failure> {
    let setting = std::env::var("LCC_COLOR").unwrap_or_else(|_| "auto".into());
    let color = match setting.as_str() {
        "always" => true,
        "never" => false,
        "auto" | "" => common.output.is_none() && std::io::stdout().is_terminal(),
        other => return Err(Failure::Usage(format!("LCC_COLOR must be auto, always or never, not {other:?}"))),
    };
    Ok(Style { color: color && common.format == Format::Text })
}

fn load(common: &Common) -> Result<Algebra, Failure> {
    if let Some(name) = &common.source.builtin {
        return builtin::by_name(name).ok_or_else(|| Failure::Usage(format!("unknown built-in {name}")));
    }
    let path = common.source.file.as_ref().expect("clap enforces one source");
    let bytes = std::fs::read(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    parse_algebra_bytes(&bytes).map_err(|diags| {
        Failure::Validation(diags.iter().map(|d| format!("{}:{d}", path.display())).collect::<Vec<_>>().join("\n"))
    })
}

fn require_axioms(alg: &Algebra) -> Result<(), Failure> {
    let skew = alg.check_skew();
    let jacobi = alg.check_jacobi();
    if skew.passed() && jacobi.passed() {
        return Ok(());
    }
    let mut msg = format!("{} is not a Lie conformal algebra; run `lcc check` for details", alg.name);
    for v in &skew.violations {
        let _ = write!(msg, "\n  skew-symmetry fails on [{}, {}]", v.first, v.second);
    }
    for v in &jacobi.violations {
        let _ = write!(msg, "\n  Jacobi identity fails on ({}, {}, {})", v.triple[0], v.triple[1], v.triple[2]);
    }
    Err(Failure::Validation(msg))
}

fn sub_indices(alg: &Algebra, names: &[String]) -> Result<Vec<usize>, Failure> {
    let names: Vec<&str> = names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    alg.indices_of(&names).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_a(text: &str) -> Result<Scalar, Failure> {
    parse_rational(text).map_err(|_| {
        Failure::Usage(format!(
            "--a must be a rational number such as 0, -2 or 1/3, got {text:?}. Symbolic values are not supported; \
             for a ≠ 0 every rational choice runs the same τ₂ divisibility verification, so pick any nonzero value"
        ))
    })
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Validation(e.to_string()))
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render_check(alg: &Algebra, style: &Style) -> (String, serde_json::Value, bool) {
    let skew = alg.check_skew();
    let jacobi = alg.check_jacobi();
    let weights = alg.weights();
    let names: Vec<&str> = alg.generators().iter().map(|g| g.name.as_str()).collect();
    let mut t = String::new();
    let _ = writeln!(t, "{} {} ({})", style.header("algebra"), alg.name, names.join(", "));
    let _ = writeln!(t, "[{}] skew-symmetry: {} pairs checked", style.status(skew.passed()), skew.pairs_checked);
    for v in &skew.violations {
        let _ = writeln!(t, "       [{}, {}] residual {}", v.first, v.second, v.residual);
    }
    let _ = writeln!(t, "[{}] Jacobi identity: {} triples checked", style.status(jacobi.passed()), jacobi.triples_checked);
    for v in &jacobi.violations {
        let _ = writeln!(t, "       ({}, {}, {}) residual {}", v.triple[0], v.triple[1], v.triple[2], v.residual);
    }
    let weight_json = match &weights {
        Ok(w) => {
            let list: Vec<String> = names.iter().zip(w).map(|(n, w)| format!("{n}={w}")).collect();
            let _ = writeln!(t, "[{}] conformal weights: {}", style.status(true), list.join(", "));
            serde_json::json!({ "ok": true, "weights": names.iter().zip(w).map(|(n, w)| (n.to_string(), w.to_string())).collect::<std::collections::BTreeMap<_, _>>() })
        }
        Err(e) => {
            let _ = writeln!(t, "[{}] conformal weights: {e}", style.status(false));
            serde_json::json!({ "ok": false, "error": e.to_string() })
        }
    };
    let passed = skew.passed() && jacobi.passed() && weights.is_ok();
    let value = serde_json::json!({
        "algebra": alg.name,
        "generators": names,
        "skew": skew,
        "jacobi": jacobi,
        "weights": weight_json,
        "passed": passed,
    });
    (t, value, passed)
}

fn render_table(alg: &Algebra, style: &Style) -> Result<(String, serde_json::Value), Failure> {
    let slots = enumerate_zero_slots(alg).map_err(|e| Failure::Validation(format!("{e}; basic --bound is available for such algebras")))?;
    let rows = table_rows(alg, &slots);
    let names: Vec<&str> = alg.generators().iter().map(|g| g.name.as_str()).collect();
    let mut t = String::new();
    let _ = writeln!(t, "{} {}: {} retained slots", style.header("algebra"), alg.name, rows.len());
    let _ = writeln!(t, "{:>3}  {:<16} {:<16} {:>5} {:>7} {:>6} {:>5}", "q", "key", format!("({})", names.join(",")), "vand", "budget", "degree", "basis");
    for r in &rows {
        let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
        let key = if r.key.is_empty() { "()".to_string() } else { r.key.join(",") };
        let _ = writeln!(t, "{:>3}  {:<16} {:<16} {:>5} {:>7} {:>6} {:>5}", r.q, key, format!("({})", counts.join(",")), r.vandermonde, r.budget, r.degree, r.basis_dim);
    }
    Ok((t, serde_json::json!({ "algebra": alg.name, "generators": names, "table": rows })))
}

fn render_report(report: &CohomologyReport, style: &Style) -> String {
    let mut t = String::new();
    let unverified = report.verification_flags.iter().any(|f| f.check == "unverified-truncation");
    if unverified {
        let _ = writeln!(t, "{}", style.paint("33;1", "!!! UNVERIFIED TRUNCATION: dimensions below come from a manual degree bound"));
    }
    let mode = match report.mode.kind.as_str() {
        "reduced" => format!("reduced, a = {}", report.mode.a.as_deref().unwrap_or("?")),
        "relative" => format!("relative to <{}>", report.mode.sub.as_ref().map(|s| s.join(",")).unwrap_or_default()),
        "bounded" => format!("basic, degree <= {}", report.mode.bound.unwrap_or(0)),
        k => k.to_string(),
    };
    let _ = writeln!(t, "{} {} ({})", style.header("algebra"), report.algebra, report.generators.join(", "));
    let _ = writeln!(t, "{} {mode}", style.header("mode"));
    let _ = writeln!(t, "retained slots: {}", report.table.len());
    if report.groups.is_empty() {
        let _ = writeln!(t, "no dimensions asserted (verification failed)");
    } else {
        let dims: Vec<String> = report.groups.iter().map(|g| g.dim.to_string()).collect();
        let _ = writeln!(t, "dims (q = 0..{}): {}", report.groups.len() - 1, dims.join(","));
        let _ = writeln!(t, "{}", style.header(" q  dim"));
        for g in &report.groups {
            let _ = writeln!(t, "{:>2}  {:>3}", g.q, g.dim);
        }
    }
    let reps: Vec<_> = report.groups.iter().filter(|g| !g.representatives.is_empty()).collect();
    if !reps.is_empty() {
        let _ = writeln!(t, "{}", style.header("representatives"));
        for g in reps {
            for (i, r) in g.representatives.iter().enumerate() {
                let parts: Vec<String> =
                    r.components.iter().map(|c| format!("({}) ↦ {}", c.tuple.join(","), c.poly)).collect();
                let body = if parts.is_empty() { "1".to_string() } else { parts.join("; ") };
                let _ = writeln!(t, "  q={} #{}: {}", g.q, i + 1, body);
            }
        }
    }
    if !report.certificates.is_empty() {
        let _ = writeln!(t, "{} {} slot certificates", style.header("certificates"), report.certificates.len());
        for c in &report.certificates {
            let _ = writeln!(t, "  q={} {} {}: {}", c.q, c.kind, c.subject, c.detail);
        }
    }
    let _ = writeln!(t, "{}", style.header("verification"));
    for f in &report.verification_flags {
        let status = if f.check == "unverified-truncation" { style.warn() } else { style.status(f.passed) };
        let _ = writeln!(t, "  [{status}] {}: {}", f.check, f.detail);
    }
    t
}

fn render_crosscheck(x: &CrosscheckReport, style: &Style) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "{} {} modulo <{}> vs {}", style.header("crosscheck"), x.algebra, x.ideal.join(","), x.quotient);
    let _ = writeln!(t, "{}", style.header(" q  relative  quotient"));
    for r in &x.rows {
        let _ = writeln!(t, "{:>2}  {:>8}  {:>8}  {}", r.q, r.relative, r.quotient, style.status(r.agree));
    }
    let _ = writeln!(t, "[{}] dimensions agree in every degree", style.status(x.all_agree));
    for f in &x.verification_flags {
        let _ = writeln!(t, "  [{}] {}: {}", style.status(f.passed), f.check, f.detail);
    }
    t
}

fn finish_cohomology(common: &Common, alg: &Algebra, h: Cohomology, style: &Style) -> Result<bool, Failure> {
    let report = h.report(alg);
    let text = match common.format {
        Format::Text => render_report(&report, style),
        Format::Json => json(&report),
    };
    emit(common, &text)?;
    // truncated runs are labelled as such; any other failed check is an error
    Ok(report.verification_flags.iter().all(|f| f.passed || f.check == "unverified-truncation"))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let err = |e: lcc_core::cohomology::CohomologyError| Failure::Validation(e.to_string());
    match cli.command {
        Command::Check(common) => {
            let style = style_for(&common)?;
            let alg = load(&common)?;
            let (text, value, passed) = render_check(&alg, &style);
            emit(&common, &if common.format == Format::Json { json(&value) } else { text })?;
            Ok(passed)
        }
        Command::Table(common) => {
            let style = style_for(&common)?;
            let alg = load(&common)?;
            let (text, value) = render_table(&alg, &style)?;
            emit(&common, &if common.format == Format::Json { json(&value) } else { text })?;
            Ok(true)
        }
        Command::Basic { common, bound } => {
            let style = style_for(&common)?;
            let alg = load(&common)?;
            require_axioms(&alg)?;
            let h = match bound {
                Some(b) => bounded_cohomology(&alg, b).map_err(err)?,
                None => basic_cohomology(&alg).map_err(|e| {
                    Failure::Validation(format!("{e}; pass --bound B for an unverified degree truncation"))
                })?,
            };
            finish_cohomology(&common, &alg, h, &style)
        }
        Command::Reduced { common, a } => {
            let a = parse_a(&a)?;
            let style = style_for(&common)?;
            let alg = load(&common)?;
            require_axioms(&alg)?;
            let h = reduced_cohomology(&alg, &a).map_err(err)?;
            finish_cohomology(&common, &alg, h, &style)
        }
        Command::Relative { common, sub } => {
            let style = style_for(&common)?;
            let alg = load(&common)?;
            require_axioms(&alg)?;
            let sub = sub_indices(&alg, &sub)?;
            let h = relative_cohomology(&alg, &sub).map_err(err)?;
            finish_cohomology(&common, &alg, h, &style)
        }
        Command::Crosscheck { common, sub } => {
            let style = style_for(&common)?;
            let alg = load(&common)?;
            require_axioms(&alg)?;
            let sub = sub_indices(&alg, &sub)?;
            let x = ideal_quotient_crosscheck(&alg, &sub).map_err(err)?;
            let text = match common.format {
                Format::Text => render_crosscheck(&x, &style),
                Format::Json => json(&x),
            };
            emit(&common, &text)?;
            Ok(x.all_agree && x.verification_flags.iter().all(|f| f.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("lcc: verification failed; see the report");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("lcc: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("lcc: {msg}");
            ExitCode::from(2)
        }
    }
}
