//! Batch front end behind the `kcm` binary.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 for parse, usage or out-of-range input, 3 when the input violates a
//! hypothesis (a non-injective AR matrix), 4 for an internal consistency
//! failure.

mod parse;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ar_quiver::{build_upsilon, cartan_matrix, dynkin_upsilon, ArPresentation, DynkinType};
use crate::error::{Error, Result};
use crate::intlinalg::{cokernel, is_injective, IntegerMatrix};
use crate::k1::{k1_compute, Family, K1Report};
use crate::rings::Field;
use crate::semilocal::{vaserstein_check, FiniteRing};
use crate::verify::{verify_all, VerifyConfig};

pub use parse::{parse_ar_presentation, parse_ring_spec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "kcm", version, about = "K0 and K1 of categories of MCM modules, computed exactly")]
pub struct Cli {
    /// Residue field: an odd prime (`5`, `F5`) or `Q`.
    #[arg(long, alias = "p", global = true, default_value = "5")]
    pub field: Field,
    /// Truncation order N of the power series.
    #[arg(long, global = true, default_value_t = 8)]
    pub precision: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample budget for randomized suites.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// AR matrix, injectivity and K0 of a presentation file.
    K0 { file: PathBuf },
    /// AR matrix of an ADE type, e.g. E6 or D5.
    Dynkin { r#type: DynkinType },
    /// K1 of the dual numbers or the cusp.
    K1 {
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Compares [A*, A*] with Ker theta for a small finite ring.
    Semilocal {
        /// Short ring name such as M2F2, F5 or F2xF2.
        #[arg(long, conflicts_with = "file")]
        ring: Option<String>,
        /// Ring specification file.
        file: Option<PathBuf>,
    },
    /// Runs the invariant suite of every module.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Dual,
    Cusp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Dual => Family::Dual,
            FamilyArg::Cusp => Family::Cusp,
        }
    }
}

/// A report rendered in both output formats.
#[derive(Default)]
struct Doc {
    text: String,
    pairs: Vec<(String, String)>,
    status: i32,
}

impl Doc {
    fn kv(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        let _ = writeln!(self.text, "{key}: {value}");
        self.pairs.push((key.to_string(), value));
    }

    /// Only in the structured form.
    fn data(&mut self, key: impl Into<String>, value: impl ToString) {
        self.pairs.push((key.into(), value.to_string()));
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn matrix(&mut self, key: &str, m: &IntegerMatrix) {
        let _ = writeln!(self.text, "{key} ({}x{}):\n{}", m.rows(), m.cols(), m.to_string().trim_end());
        for r in 0..m.rows() {
            self.data(format!("{key}.row.{r}"), join(m.row(r)));
        }
    }

    fn check(&mut self, name: &str, passed: bool) {
        self.line(format!("[{}] {name}", if passed { "pass" } else { "FAIL" }));
        self.data(format!("check.{}", slug(name)), passed);
        if !passed {
            self.status = self.status.max(EXIT_CHECK_FAILED);
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Structured => {
                self.pairs.iter().fold(String::new(), |mut s, (k, v)| {
                    let _ = writeln!(s, "{k} = {v}");
                    s
                })
            }
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn slug(name: &str) -> String {
    let mut out = String::new();
    for ch in name.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.ends_with('_') && !out.is_empty() {
            out.push('_');
        }
    }
    out.trim_end_matches('_').to_string()
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{}: {e}", path.display()) })
}

fn header(doc: &mut Doc, cli: &Cli, command: &str) {
    doc.kv("command", command);
    doc.kv("seed", cli.seed);
}

fn upsilon_section(doc: &mut Doc, upsilon: &IntegerMatrix) -> Result<()> {
    doc.matrix("upsilon", upsilon);
    let injective = is_injective(upsilon)?;
    doc.kv("injective", injective);
    let k0 = cokernel(upsilon)?;
    doc.kv("k0", &k0);
    doc.data("k0.free_rank", k0.free_rank());
    doc.data("k0.torsion", join(k0.torsion()));
    if !injective {
        doc.line("hypothesis failure: the AR matrix is not injective");
        doc.status = doc.status.max(EXIT_HYPOTHESIS);
    }
    Ok(())
}

fn k0_doc(cli: &Cli, pres: &ArPresentation, source: &str) -> Result<Doc> {
    let mut doc = Doc::default();
    header(&mut doc, cli, "k0");
    doc.kv("input", source);
    doc.kv("modules", pres.labels().join(","));
    upsilon_section(&mut doc, &build_upsilon(pres)?)?;
    Ok(doc)
}

fn dynkin_doc(cli: &Cli, ty: DynkinType) -> Result<Doc> {
    let mut doc = Doc::default();
    header(&mut doc, cli, "dynkin");
    doc.kv("type", ty);
    upsilon_section(&mut doc, &dynkin_upsilon(ty)?)?;
    doc.kv("cartan_det", cartan_matrix(ty)?.determinant()?);
    Ok(doc)
}

fn k1_doc(cli: &Cli, rep: &K1Report) -> Doc {
    let mut doc = Doc::default();
    header(&mut doc, cli, "k1");
    doc.kv("family", rep.family);
    doc.kv("field", rep.field);
    doc.kv("precision", rep.precision);
    doc.kv("generators", rep.generator_sampling);
    doc.kv("units", rep.unit_sampling);
    doc.matrix("upsilon", &rep.upsilon);
    doc.kv("injective", rep.injective);
    doc.kv("k0", &rep.k0);
    doc.kv("k1", &rep.group);
    let var = rep.var;
    doc.line("xi generators: h -> omega(xi_h)");
    for (i, row) in rep.xi_rows.iter().enumerate() {
        let (h, first, second) = (row.h.display_with(var), &row.omega.first, row.omega.second.display_with(var));
        doc.line(format!("  {h} ↦ ({first}, {second})"));
        doc.data(format!("xi.{i}"), format!("{h},{first},{second}"));
    }
    doc.line("lambda/mu table: r -> omega_bar(lambda(r))");
    for (i, row) in rep.lambda_rows.iter().enumerate() {
        let (r, img) = (row.unit.display_with(var), row.image.display_with(var));
        doc.line(format!("  {r} ↦ {img}"));
        doc.data(format!("mu.{i}"), format!("{r},{img}"));
    }
    for c in &rep.checks {
        doc.check(&c.name, c.passed);
    }
    if !rep.injective {
        doc.status = doc.status.max(EXIT_HYPOTHESIS);
    }
    doc
}

fn semilocal_doc(cli: &Cli, ring: &FiniteRing) -> Result<Doc> {
    let rep = vaserstein_check(ring)?;
    let mut doc = Doc::default();
    header(&mut doc, cli, "semilocal");
    doc.kv("ring", &rep.ring);
    doc.kv("size", ring.size());
    doc.kv("units", rep.units);
    doc.kv("commutators", rep.commutators);
    doc.kv("ker_theta", rep.ker_theta);
    doc.kv("verdict", rep.verdict);
    doc.line(format!("{}; |Ker θ| = {}; |[A*,A*]| = {}", rep.verdict, rep.ker_theta, rep.commutators));
    Ok(doc)
}

fn verify_doc(cli: &Cli) -> Result<Doc> {
    let cfg = VerifyConfig { field: cli.field, precision: cli.precision, samples: cli.samples, seed: cli.seed };
    let props = verify_all(&cfg)?;
    let mut doc = Doc::default();
    header(&mut doc, cli, "verify");
    doc.kv("field", cli.field);
    doc.kv("precision", cli.precision);
    doc.kv("samples", cli.samples);
    for p in &props {
        doc.check(&format!("{}: {}", p.module, p.name), p.passed);
    }
    let passed = props.iter().filter(|p| p.passed).count();
    doc.kv("passed", format!("{passed}/{}", props.len()));
    Ok(doc)
}

fn dispatch(cli: &Cli) -> Result<Doc> {
    match &cli.command {
        Command::K0 { file } => {
            let pres = parse_ar_presentation(&read(file)?).map_err(|e| in_file(file, e))?;
            k0_doc(cli, &pres, &file.display().to_string())
        }
        Command::Dynkin { r#type } => dynkin_doc(cli, *r#type),
        Command::K1 { family } => {
            let rep = k1_compute((*family).into(), cli.field, cli.precision, cli.samples, cli.seed)?;
            Ok(k1_doc(cli, &rep))
        }
        Command::Semilocal { ring, file } => {
            let ring = match (ring, file) {
                (Some(name), _) => name.parse::<FiniteRing>()?,
                (None, Some(file)) => parse_ring_spec(&read(file)?).map_err(|e| in_file(file, e))?,
                (None, None) => return Err(Error::Unsupported("semilocal needs --ring NAME or a ring file".into())),
            };
            semilocal_doc(cli, &ring)
        }
        Command::Verify => verify_doc(cli),
    }
}

fn in_file(path: &std::path::Path, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => {
            Error::Parse { line, column, message: format!("{}: {message}", path.display()) }
        }
        other => other,
    }
}

/// Parses `args` (including the program name), runs the job and writes the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    if cli.precision < 2 {
        let _ = writeln!(err, "error: {}", Error::InvalidPrecision(cli.precision));
        return EXIT_INPUT;
    }
    match dispatch(&cli) {
        Ok(doc) => {
            let _ = out.write_all(doc.render(cli.format).as_bytes());
            doc.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main_entry() -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("kcm").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn semilocal_m2f2() {
        let (code, out, _) = run_str(&["semilocal", "--ring", "M2F2"]);
        assert_eq!(code, 0);
        assert!(out.contains("strict; |Ker θ| = 6; |[A*,A*]| = 3"), "{out}");
        assert!(out.contains("seed: 0"));
    }

    #[test]
    fn dual_table_row() {
        let (code, out, _) = run_str(&["k1", "--family", "dual", "--p", "5"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("2+3X ↦ 4"), "{out}");
    }

    #[test]
    fn structured_is_flat() {
        let (code, out, _) = run_str(&["dynkin", "E6", "--format", "structured"]);
        assert_eq!(code, 0);
        assert!(out.lines().all(|l| l.contains(" = ")), "{out}");
        assert!(out.contains("upsilon.row.0 = 0,-1,0,0,0,0"), "{out}");
        assert!(out.contains("cartan_det = 3"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["k1"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["k1", "--family", "dual", "--field", "4"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["semilocal"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["dynkin", "D3"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["semilocal", "--ring", "M3F5"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["k1", "--family", "cusp", "--precision", "1"]).0, EXIT_INPUT);
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("omega(xi_a) = (a^-1, a)"), "omega_xi_a_a_1_a");
    }
}
