// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 internal
//! consistency failure.

use clap::{ArgAction, Parser, Subcommand};
use serde_json::{json, Value};

use crate::brauer::{same_cyclic_subgroup, sb_fields_isomorphic, sb_vs_quadric_decide, BrauerClass, SBVariety};
use crate::conic::{
    brauer_kernel_conic, conic_fields_compare, conic_form, is_split, normalized_form, ramification_set,
    GenusZeroCurve, QuaternionAlgebra,
};
use crate::error::{Error, Result};
use crate::genus_one::{isogeny_orbit, n_c, theorem10_gate, CyclicTorsorModel};
use crate::hilbert::{hilbert_symbol, reciprocity_check, relevant_places};
use crate::place::Place;
use crate::qform::QuadraticForm;
use crate::quadric::{
    brauer_kernel_quadric, index_of_quadric, kernel_label, kernel_over_quadratic, theorem8b_decide,
    KernelOverExtension, QuadricSurface,
};
use crate::rational::Rational;
use crate::report::ClassificationReport;
use crate::square_class::SquareClass;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "witt-kernel", version, about = "Classify function fields of conics, quadric surfaces and Severi-Brauer varieties over Q")]
struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert symbol (a,b)_v at one place, or at every relevant place
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// A prime, or `inf`
        #[arg(long)]
        place: Option<String>,
    },
    /// Conics and quaternion algebras (a,b)
    #[command(subcommand)]
    Conic(ConicCommand),
    /// Quadric surfaces given by diagonal quaternary forms
    #[command(subcommand)]
    Quadric(QuadricCommand),
    /// Severi-Brauer varieties given by Brauer classes
    #[command(subcommand)]
    Sb(SbCommand),
    /// Genus-one torsor arithmetic
    #[command(subcommand)]
    Genus1(Genus1Command),
}

#[derive(Subcommand, Debug)]
enum ConicCommand {
    Classify {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        a2: String,
        #[arg(allow_hyphen_values = true)]
        b2: String,
    },
}

#[derive(Subcommand, Debug)]
enum QuadricCommand {
    Classify {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    Compare {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        form2: String,
    },
    Kernel {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Squarefree e; the kernel is computed over Q(sqrt e)
        #[arg(long, allow_hyphen_values = true)]
        ext: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum SbCommand {
    Compare {
        class: String,
        class2: String,
        #[arg(long)]
        dim: u32,
    },
    VsQuadric {
        class: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
}

#[derive(Subcommand, Debug)]
enum Genus1Command {
    Orbit { modulus: u64, residue: u64 },
    Gate {
        period: u64,
        #[arg(long, action = ArgAction::Set)]
        non_cm: bool,
        #[arg(long, action = ArgAction::Set)]
        isolated_or_finite: bool,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Domain(_) | Error::Unsupported(_) => EXIT_DOMAIN,
        Error::Consistency(_) => EXIT_CONSISTENCY,
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: EXIT_PARSE, stdout: String::new(), stderr: rendered }
            } else {
                CliOutput { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => CliOutput {
            code: EXIT_OK,
            stdout: if cli.json { report.to_json() } else { report.to_text() },
            stderr: String::new(),
        },
        Err(err) => {
            let code = exit_code(&err);
            let mut stderr = format!("error: {err}\n");
            if code == EXIT_CONSISTENCY {
                stderr.push_str("violated assertion: ");
                stderr.push_str(&err.to_string());
                stderr.push('\n');
            }
            CliOutput { code, stdout: String::new(), stderr }
        }
    }
}

fn parse_rational(token: &str) -> Result<Rational> {
    token.parse()
}

fn parse_nonzero(token: &str) -> Result<Rational> {
    let r = parse_rational(token)?;
    if r.is_zero() {
        return Err(Error::domain(format!("`{token}` must be nonzero")));
    }
    Ok(r)
}

fn parse_form(token: &str) -> Result<QuadraticForm> {
    token.parse()
}

fn parse_quadric(token: &str) -> Result<QuadricSurface> {
    QuadricSurface::new(parse_form(token)?)
}

fn parse_class(token: &str) -> Result<BrauerClass> {
    token.parse()
}

fn places_json(places: impl IntoIterator<Item = Place>) -> Value {
    Value::Array(places.into_iter().map(|p| Value::String(p.to_string())).collect())
}

fn kernel_json(k: &KernelOverExtension) -> Value {
    json!({
        "extension": k.extension.to_string(),
        "kernel": k.kernel.name(),
        "witness": k.witness.as_ref().map(|w| places_json(w.ramification().iter().copied())),
    })
}

fn execute(command: &Command) -> Result<ClassificationReport> {
    match command {
        Command::Hilbert { a, b, place } => hilbert_cmd(a, b, place.as_deref()),
        Command::Conic(ConicCommand::Classify { a, b }) => conic_classify(a, b),
        Command::Conic(ConicCommand::Compare { a, b, a2, b2 }) => conic_compare(a, b, a2, b2),
        Command::Quadric(QuadricCommand::Classify { form }) => quadric_classify(form),
        Command::Quadric(QuadricCommand::Compare { form, form2 }) => quadric_compare(form, form2),
        Command::Quadric(QuadricCommand::Kernel { form, ext }) => quadric_kernel(form, ext.as_deref()),
        Command::Sb(SbCommand::Compare { class, class2, dim }) => sb_compare(class, class2, *dim),
        Command::Sb(SbCommand::VsQuadric { class, form }) => sb_vs_quadric(class, form),
        Command::Genus1(Genus1Command::Orbit { modulus, residue }) => genus1_orbit(*modulus, *residue),
        Command::Genus1(Genus1Command::Gate { period, non_cm, isolated_or_finite }) => {
            genus1_gate(*period, *non_cm, *isolated_or_finite)
        }
    }
}

fn hilbert_cmd(a: &str, b: &str, place: Option<&str>) -> Result<ClassificationReport> {
    let (ra, rb) = (parse_nonzero(a)?, parse_nonzero(b)?);
    let mut r = ClassificationReport::new("hilbert");
    r.input("a", ra).input("b", rb);
    match place {
        Some(p) => {
            let v: Place = p.parse()?;
            r.input("place", v);
            let s = hilbert_symbol(&ra, &rb, v)?;
            r.verdict("symbol", s.to_i8(), "Hilbert-local-formula");
        }
        None => {
            let (ca, cb) = (SquareClass::of(&ra)?, SquareClass::of(&rb)?);
            let mut ramified = Vec::new();
            for v in relevant_places([&ca, &cb]) {
                let s = hilbert_symbol(&ra, &rb, v)?;
                if !s.is_plus() {
                    ramified.push(v);
                }
                r.invariant("hilbert", &format!("({ra},{rb})"), Some(v.to_string()), s.to_i8());
            }
            if !reciprocity_check(&ra, &rb)? {
                return Err(Error::consistency(format!("product formula fails for ({ra},{rb})")));
            }
            r.verdict("reciprocity", true, "Hilbert-reciprocity");
            r.verdict("ramified_places", places_json(ramified), "Hilbert-reciprocity");
        }
    }
    Ok(r)
}

fn algebra(a: &str, b: &str) -> Result<QuaternionAlgebra> {
    QuaternionAlgebra::new(&parse_nonzero(a)?, &parse_nonzero(b)?)
}

fn conic_classify(a: &str, b: &str) -> Result<ClassificationReport> {
    let alg = algebra(a, b)?;
    let curve = GenusZeroCurve::new(alg.clone());
    let q_b = normalized_form(&alg)?;
    let mut r = ClassificationReport::new("conic classify");
    r.input("algebra", &alg)
        .input("conic_form", conic_form(&alg)?)
        .input("normalized_form", &q_b);
    let ramified = ramification_set(&alg)?;
    let split = is_split(&alg)?;
    let kernel = brauer_kernel_conic(&curve)?;
    r.verdict("split", split, "Witt-Thm12")
        .verdict("rational_point", split, "Hasse-Minkowski")
        .verdict("brauer_kernel", kernel.name(), "Witt-Thm12")
        .verdict("index", index_of_quadric(&conic_form(&alg)?)?, "Index-quadrics");
    r.invariant("ramification_set", &alg.to_string(), None, places_json(ramified.iter().copied()));
    for v in q_b.relevant_places() {
        r.invariant("witt", &q_b.to_string(), Some(v.to_string()), q_b.witt_invariant(v).to_i8());
    }
    if !split {
        r.witness("kernel_generator", places_json(ramified));
    }
    Ok(r)
}

fn conic_compare(a: &str, b: &str, a2: &str, b2: &str) -> Result<ClassificationReport> {
    let (alg, alg2) = (algebra(a, b)?, algebra(a2, b2)?);
    let (c, c2) = (GenusZeroCurve::new(alg.clone()), GenusZeroCurve::new(alg2.clone()));
    let mut r = ClassificationReport::new("conic compare");
    r.input("algebra", &alg).input("algebra_prime", &alg2);
    let verdict = conic_fields_compare(&c, &c2)?;
    let k = brauer_kernel_conic(&c)?;
    let k2 = brauer_kernel_conic(&c2)?;
    let label = match verdict {
        crate::conic::ConicComparison::Isomorphic => "Isomorphic",
        crate::conic::ConicComparison::NotIsogenous => "NotIsogenous",
    };
    r.verdict("fields", label, "Witt-Thm12")
        .verdict("brauer_kernels_equal", k == k2, "Witt-Thm12");
    r.invariant("ramification_set", &alg.to_string(), None, places_json(ramification_set(&alg)?));
    r.invariant("ramification_set", &alg2.to_string(), None, places_json(ramification_set(&alg2)?));
    Ok(r)
}

fn form_invariant_rows(r: &mut ClassificationReport, subject: &str, q: &QuadraticForm) {
    let inv = q.invariants();
    r.invariant("discriminant", subject, None, inv.discriminant.to_string());
    r.invariant("signature", subject, None, json!([inv.signature.positives, inv.signature.negatives]));
    for (v, s) in &inv.hasse_at {
        r.invariant("hasse", subject, Some(v.to_string()), s.to_i8());
    }
    for (v, s) in &inv.witt_at {
        r.invariant("witt", subject, Some(v.to_string()), s.to_i8());
    }
    for v in q.relevant_places() {
        r.invariant("isotropic_local", subject, Some(v.to_string()), q.is_isotropic_local(v));
    }
}

fn quadric_classify(form: &str) -> Result<ClassificationReport> {
    let q = parse_quadric(form)?;
    let mut r = ClassificationReport::new("quadric classify");
    r.input("form", q.form());
    let kernel = brauer_kernel_quadric(&q)?;
    let over_d = kernel_over_quadratic(&q, q.discriminant())?;
    r.verdict("isotropic", q.is_isotropic(), "Hasse-Minkowski")
        .verdict("rational_function_field", q.is_isotropic(), "Hasse-Minkowski")
        .verdict("brauer_kernel", kernel.name(), "Prop17")
        .verdict(&kernel_label(q.discriminant()), over_d.kernel.name(), "Thm15a")
        .verdict("index", index_of_quadric(q.form())?, "Index-quadrics");
    form_invariant_rows(&mut r, "form", q.form());
    r.witness("witt_class", places_json(q.witt_class()?.ramification().iter().copied()));
    if let Some(w) = &over_d.witness {
        r.witness("kernel_generator", places_json(w.ramification().iter().copied()));
    }
    Ok(r)
}

fn quadric_compare(form: &str, form2: &str) -> Result<ClassificationReport> {
    let (q, q2) = (parse_quadric(form)?, parse_quadric(form2)?);
    let report = theorem8b_decide(&q, &q2)?;
    let mut r = ClassificationReport::new("quadric compare");
    r.input("form", q.form()).input("form_prime", q2.form());
    r.verdict("isomorphic", report.isomorphic, "Prop13")
        .verdict("isogenous", report.isogeny.to_string(), "Ohm-Thm16")
        .verdict("kernels_equal", report.kernels_equal, "Thm8b");
    if let Some(sep) = report.separating_invariant() {
        r.verdict("separating_invariant", sep, "Thm8b");
    }
    for c in &report.comparisons {
        let subject = kernel_label(&c.extension);
        r.invariant("brauer_kernel", &format!("form; {subject}"), None, c.kernel.kernel.name());
        r.invariant("brauer_kernel", &format!("form_prime; {subject}"), None, c.kernel_prime.kernel.name());
        r.invariant("kernels_equal", &subject, None, c.equal);
    }
    form_invariant_rows(&mut r, "form", q.form());
    form_invariant_rows(&mut r, "form_prime", q2.form());
    r.witness(
        "kernels",
        Value::Array(
            report
                .comparisons
                .iter()
                .map(|c| json!({"form": kernel_json(&c.kernel), "form_prime": kernel_json(&c.kernel_prime)}))
                .collect(),
        ),
    );
    r.witness(
        "separating_extensions",
        Value::Array(report.separating_extensions.iter().map(|e| Value::String(e.to_string())).collect()),
    );
    Ok(r)
}

fn quadric_kernel(form: &str, ext: Option<&str>) -> Result<ClassificationReport> {
    let q = parse_quadric(form)?;
    let e = match ext {
        Some(t) => t.parse::<SquareClass>()?,
        None => SquareClass::one(),
    };
    let k = kernel_over_quadratic(&q, &e)?;
    let mut r = ClassificationReport::new("quadric kernel");
    r.input("form", q.form()).input("extension", &e);
    let tag = if e.is_one() { "Prop17" } else { "Thm15a" };
    r.verdict("brauer_kernel", k.kernel.name(), tag)
        .verdict("isotropic_over_q", q.is_isotropic(), "Hasse-Minkowski");
    r.invariant("discriminant", "form", None, q.discriminant().to_string());
    if let Some(w) = &k.witness {
        r.witness("kernel_generator", places_json(w.ramification().iter().copied()));
    }
    Ok(r)
}

fn sb_compare(class: &str, class2: &str, dim: u32) -> Result<ClassificationReport> {
    let (x, y) = (parse_class(class)?, parse_class(class2)?);
    let (v, v2) = (SBVariety::new(dim, x.clone())?, SBVariety::new(dim, y.clone())?);
    let mut r = ClassificationReport::new("sb compare");
    r.input("class", &x).input("class_prime", &y).input("dim", dim);
    let iso = sb_fields_isomorphic(&v, &v2)?;
    r.verdict("same_cyclic_subgroup", same_cyclic_subgroup(&x, &y), "Amitsur-Thm13")
        .verdict("isomorphic", iso, "Thm8a")
        .verdict("kernels_equal", iso, "Thm8a");
    r.invariant("order", "class", None, x.order());
    r.invariant("order", "class_prime", None, y.order());
    r.witness("kernel_generator", x.to_string());
    r.witness("kernel_generator_prime", y.to_string());
    Ok(r)
}

fn sb_vs_quadric(class: &str, form: &str) -> Result<ClassificationReport> {
    let x = parse_class(class)?;
    let v = SBVariety::new(2, x.clone())?;
    let q = parse_quadric(form)?;
    let d = sb_vs_quadric_decide(&v, &q)?;
    let mut r = ClassificationReport::new("sb vs-quadric");
    r.input("class", &x).input("form", q.form());
    r.verdict("isomorphic", d.isomorphic, "Thm8c");
    if let Some(sep) = d.separating_invariant {
        r.verdict("separating_invariant", sep, "Thm8c");
    }
    r.verdict("kernels_over_q_agree", d.kernels_over_q_agree, "Prop17");
    r.verdict("kernel_ambiguity", d.kernel_ambiguity, "Thm8c");
    r.invariant("order", "class", None, x.order());
    r.invariant("isotropic", "form", None, q.is_isotropic());
    r.invariant("discriminant", "form", None, q.discriminant().to_string());
    Ok(r)
}

fn genus1_orbit(modulus: u64, residue: u64) -> Result<ClassificationReport> {
    let t = CyclicTorsorModel::new(modulus, residue)?;
    let orbit: Vec<u64> = isogeny_orbit(&t).into_iter().collect();
    let mut r = ClassificationReport::new("genus1 orbit");
    r.input("modulus", modulus).input("residue", residue);
    let n = n_c(t.period())?;
    r.verdict("period", t.period(), "Period")
        .verdict("orbit", orbit, "Cor20")
        .verdict("n_c", n, "Cor20");
    Ok(r)
}

fn genus1_gate(period: u64, non_cm: bool, isolated: bool) -> Result<ClassificationReport> {
    let n = n_c(period)?;
    let mut r = ClassificationReport::new("genus1 gate");
    r.input("period", period).input("non_cm", non_cm).input("isolated_or_finite", isolated);
    r.verdict("applies", theorem10_gate(period, non_cm, isolated), "Thm10")
        .verdict("n_c", n, "Cor20");
    Ok(r)
}
