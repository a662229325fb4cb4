//! Command-line front end for the `mcgauge` engine.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

pub mod format;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mcgauge::gauge::{
    commutator_dgla, gauge_closed, gauge_dga, gauge_trees_a, gauge_trees_a_monotone, gauge_trees_l,
    gauge_trees_l_unsym, linear_nc, ls_interval, sullivan_witness, verify_ls, LieBasis, NcAlgebra,
};
use mcgauge::trees::{enumerate_planar, enumerate_trees, labellings};
use mcgauge::{cylinder_gauge, gauge_via_exp, AlgebraSpec, GradedElement, Kind, Rational, Scalar};

use format::{parse_spec, print_path, print_spec, FormatError, SpecDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mcgauge",
    version,
    about = "Exact Maurer–Cartan and gauge computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed formula in a dgla (dga: on the commutator dgla).
    Closed,
    /// Rooted trees (dgla, L∞) or planar trees (dga, A∞).
    Trees,
    /// Rooted trees with the coefficient lacking the sibling symmetry factor.
    TreesUnsym,
    /// Planar trees with one `x` per vertex weighted by monotone orderings.
    TreesMonotone,
    /// Exponential of the bracket derivation on the representing algebra.
    Exp,
    /// Flow along the cylinder.
    Cylinder,
    /// `aξa⁻¹ - (da)a⁻¹` with `a = e^x`, dga only.
    Dga,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Trees => "trees",
            Method::TreesUnsym => "trees-unsym",
            Method::TreesMonotone => "trees-monotone",
            Method::Exp => "exp",
            Method::Cylinder => "cylinder",
            Method::Dga => "dga",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the structure equations hold up to the weight cap.
    Validate { file: PathBuf },
    /// Print the file in canonical form.
    Print { file: PathBuf },
    /// Check the Maurer–Cartan equation for an element.
    McCheck {
        file: PathBuf,
        /// Element name, generator or inline expression.
        #[arg(long = "element", default_value = "xi")]
        xi: String,
    },
    /// Act on a Maurer–Cartan element by a degree-0 element.
    Gauge {
        file: PathBuf,
        /// The Maurer–Cartan element acted on.
        #[arg(long = "element", default_value = "xi")]
        xi: String,
        /// The degree-0 element acting.
        #[arg(long = "by", default_value = "x")]
        x: String,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
    },
    /// Compute the gauge action by every applicable route and compare.
    GaugeCompare {
        file: PathBuf,
        /// The Maurer–Cartan element acted on.
        #[arg(long = "element", default_value = "xi")]
        xi: String,
        /// The degree-0 element acting.
        #[arg(long = "by", default_value = "x")]
        x: String,
    },
    /// Baker–Campbell–Hausdorff product, symbolic or evaluated in a file.
    Bch {
        /// Evaluate in this dgla or dga instead of the free Lie algebra.
        file: Option<PathBuf>,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "y")]
        y: String,
        /// Weight cap for the symbolic product.
        #[arg(long, default_value_t = 3)]
        weight: u32,
    },
    /// Enumerate the trees of the gauge formula with their coefficients.
    Trees {
        #[arg(long = "max-vertices")]
        vertices: usize,
        #[arg(long = "arity-cap")]
        arity: usize,
        /// Planar trees with admissible labellings.
        #[arg(long)]
        planar: bool,
    },
    /// Print the truncated interval dgla, or verify it.
    LsInterval {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Build and check a polynomial path from ξ to e^x · ξ.
    Sullivan {
        file: PathBuf,
        /// The Maurer–Cartan element acted on.
        #[arg(long = "element", default_value = "xi")]
        xi: String,
        /// The degree-0 element acting.
        #[arg(long = "by", default_value = "x")]
        x: String,
    },
}

type Element = GradedElement<Rational>;
type Spec = AlgebraSpec<Rational>;

/// Replaces the result of a named gauge method; used to exercise the
/// disagreement path of `gauge-compare`.
pub type MethodHook<'a> =
    &'a dyn Fn(Method, &Spec, &Element, &Element) -> Option<mcgauge::Result<Element>>;

#[derive(Debug)]
enum CliError {
    Input(String),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<mcgauge::Error> for CliError {
    fn from(e: mcgauge::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_methods(args, out, err, &|_, _, _, _| None)
}

/// [`run`] with some gauge methods overridden by `hook`.
pub fn run_with_methods<I, T>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    hook: MethodHook<'_>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command, out, hook) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load(path: &PathBuf) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Loads a file whose structure equations must hold.
fn load_valid(path: &PathBuf) -> Result<SpecDocument, CliError> {
    let doc = load(path)?;
    let report = doc.spec.validate_structure();
    if let Some(f) = report.failures.first() {
        return Err(CliError::Input(format!(
            "{}: structure equations fail at generator {} weight {}: residue {}",
            path.display(),
            f.generator,
            f.weight,
            f.residue
        )));
    }
    Ok(doc)
}

fn element(doc: &SpecDocument, text: &str) -> Result<Element, CliError> {
    Ok(doc.resolve(text)?.to_graded()?)
}

fn execute(cmd: &Command, out: &mut dyn Write, hook: MethodHook<'_>) -> Result<i32, CliError> {
    match cmd {
        Command::Validate { file } => {
            let doc = load(file)?;
            let report = doc.spec.validate_structure();
            if report.is_ok() {
                writeln!(
                    out,
                    "OK: {} ({}) satisfies its structure equations through weight {}",
                    doc.spec.name(),
                    doc.spec.kind(),
                    doc.spec.weight_cap()
                )?;
                Ok(EXIT_OK)
            } else {
                for f in &report.failures {
                    writeln!(
                        out,
                        "FAIL: generator {} weight {}: residue {}",
                        f.generator, f.weight, f.residue
                    )?;
                }
                Ok(EXIT_FAILED)
            }
        }
        Command::Print { file } => {
            let doc = load(file)?;
            write!(out, "{}", print_spec(&doc))?;
            Ok(EXIT_OK)
        }
        Command::McCheck { file, xi } => {
            let doc = load_valid(file)?;
            let xi = element(&doc, xi)?;
            xi.require_degree(&doc.spec, 1)?;
            let defect = doc.spec.mc_defect(&xi)?;
            if defect.is_zero() {
                writeln!(out, "MC: yes")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "MC: no, defect {}", defect.display(&doc.spec))?;
                Ok(EXIT_FAILED)
            }
        }
        Command::Gauge {
            file,
            xi,
            x,
            method,
        } => {
            let doc = load_valid(file)?;
            let (xi, x) = (element(&doc, xi)?, element(&doc, x)?);
            let r = compute(*method, &doc.spec, &x, &xi, hook)?;
            writeln!(out, "{}", r.display(&doc.spec))?;
            Ok(EXIT_OK)
        }
        Command::GaugeCompare { file, xi, x } => {
            let doc = load_valid(file)?;
            let (xi, x) = (element(&doc, xi)?, element(&doc, x)?);
            let methods = compare_methods(doc.spec.kind());
            let mut results = Vec::new();
            for m in methods {
                results.push((m, compute(*m, &doc.spec, &x, &xi, hook)?));
            }
            let first = &results[0].1;
            let names: Vec<&str> = results.iter().map(|(m, _)| m.as_str()).collect();
            if results.iter().all(|(_, r)| r == first) {
                writeln!(
                    out,
                    "AGREE: {} = {}",
                    names.join(" = "),
                    first.display(&doc.spec)
                )?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "DISAGREE:")?;
                for (m, r) in &results {
                    writeln!(out, "  {}: {}", m.as_str(), r.display(&doc.spec))?;
                }
                Ok(EXIT_FAILED)
            }
        }
        Command::Bch { file, x, y, weight } => bch(file.as_ref(), x, y, *weight, out),
        Command::Trees {
            vertices,
            arity,
            planar,
        } => {
            if *planar {
                let mut total = 0;
                for (k, trees) in enumerate_planar(*vertices, *arity).iter().enumerate() {
                    let n = k + 1;
                    let coeff = Rational::sign(n % 2 == 1) * Rational::inv_factorial(n);
                    for t in trees {
                        for lab in labellings(t, n) {
                            writeln!(out, "n={n} coefficient={coeff} {}", t.encoding(Some(&lab)))?;
                            total += 1;
                        }
                    }
                }
                writeln!(out, "total: {total}")?;
            } else {
                let mut total = 0;
                for t in enumerate_trees(*vertices, *arity).iter().flatten() {
                    let j: Vec<String> = t.j_vector().iter().map(|v| v.to_string()).collect();
                    writeln!(
                        out,
                        "n={} r={} symmetry={} j=[{}] coefficient={} {}",
                        t.vertex_count(),
                        t.monotone_count(),
                        t.symmetry_factor(),
                        j.join(","),
                        t.coefficient::<Rational>(),
                        t.encoding()
                    )?;
                    total += 1;
                }
                writeln!(out, "total: {total}")?;
            }
            Ok(EXIT_OK)
        }
        Command::LsInterval { weight, verify } => {
            if *verify {
                let report = verify_ls::<Rational>(*weight)?;
                for (label, outcome) in report.checks() {
                    match outcome {
                        Ok(()) => writeln!(out, "PASS {label}")?,
                        Err(e) => writeln!(out, "FAIL {label}: {e}")?,
                    }
                }
                Ok(if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_FAILED
                })
            } else {
                let ls = ls_interval::<Rational>(*weight)?;
                write!(out, "{}", print_spec(&format::document(ls.spec)))?;
                Ok(EXIT_OK)
            }
        }
        Command::Sullivan { file, xi, x } => {
            let doc = load_valid(file)?;
            let (xi, x) = (element(&doc, xi)?, element(&doc, x)?);
            let w = sullivan_witness(&doc.spec, &x, &xi)?;
            write!(out, "{}", print_path("h", &w.path, &doc.spec))?;
            let status = |ok: bool| if ok { "ok" } else { "FAILED" };
            match w.dt_sign {
                Some(s) => writeln!(out, "dt sign: {s}")?,
                None => writeln!(out, "dt sign: none works")?,
            }
            writeln!(out, "h(0) = ξ: {}", status(w.start == xi))?;
            writeln!(out, "h(1) = e^x·ξ: {}", status(w.end == w.expected_end))?;
            writeln!(
                out,
                "Maurer–Cartan in V ⊗ k[t,dt]: {}",
                status(w.defect.is_zero())
            )?;
            Ok(if w.verified(&xi) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

/// The routes `gauge-compare` runs for each kind.
pub fn compare_methods(kind: Kind) -> &'static [Method] {
    match kind {
        Kind::Dgla => &[Method::Closed, Method::Trees, Method::Exp, Method::Cylinder],
        Kind::Dga => &[
            Method::Closed,
            Method::Dga,
            Method::Trees,
            Method::Exp,
            Method::Cylinder,
        ],
        Kind::Linf | Kind::Ainf => &[Method::Trees, Method::Exp, Method::Cylinder],
    }
}

fn compute(
    method: Method,
    spec: &Spec,
    x: &Element,
    xi: &Element,
    hook: MethodHook<'_>,
) -> mcgauge::Result<Element> {
    if let Some(r) = hook(method, spec, x, xi) {
        return r;
    }
    let lie = spec.kind().is_lie();
    match method {
        Method::Closed if spec.kind() == Kind::Dga => gauge_closed(&commutator_dgla(spec)?, x, xi),
        Method::Closed => gauge_closed(spec, x, xi),
        Method::Trees if lie => gauge_trees_l(spec, x, xi),
        Method::Trees => gauge_trees_a(spec, x, xi),
        Method::TreesUnsym => gauge_trees_l_unsym(spec, x, xi),
        Method::TreesMonotone => gauge_trees_a_monotone(spec, x, xi),
        Method::Exp => gauge_via_exp(spec, x, xi),
        Method::Cylinder => cylinder_gauge(spec, x, xi),
        Method::Dga => {
            x.require_degree(spec, 0)?;
            let alg = NcAlgebra::for_spec(spec);
            let a = alg.exp_assoc(&linear_nc(&alg, x)?)?;
            gauge_dga(spec, &a, xi)
        }
    }
}

fn bch(
    file: Option<&PathBuf>,
    x: &str,
    y: &str,
    weight: u32,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let Some(file) = file else {
        if weight == 0 {
            return Err(CliError::Input("weight cap must be at least 1".into()));
        }
        let alg = NcAlgebra::with_symbols(&[x, y], weight);
        let p = alg.bch(&alg.symbol::<Rational>(x)?, &alg.symbol(y)?)?;
        let dec = alg.lie_decomposition(&p);
        writeln!(out, "{}", dec.display())?;
        return Ok(if dec.is_lie() { EXIT_OK } else { EXIT_FAILED });
    };
    let doc = load_valid(file)?;
    let spec = match doc.spec.kind() {
        Kind::Dgla => doc.spec.clone(),
        Kind::Dga => commutator_dgla(&doc.spec)?,
        other => {
            return Err(CliError::Input(format!(
                "bch needs kind dgla or dga, got {other}"
            )))
        }
    };
    let (ex, ey) = (element(&doc, x)?, element(&doc, y)?);
    ex.require_degree(&spec, 0)?;
    ey.require_degree(&spec, 0)?;
    let alg = NcAlgebra::with_symbols(&["x", "y"], spec.weight_cap());
    let p = alg.bch(&alg.symbol::<Rational>("x")?, &alg.symbol("y")?)?;
    let basis = LieBasis::<Rational>::build(alg);
    let (combo, rest) = basis.express(&p);
    if !rest.is_zero() {
        return Err(CliError::Input("BCH product is not a Lie element".into()));
    }
    let images = basis.images(&[ex, ey], |p, q| spec.eval_bracket(&[p.clone(), q.clone()]))?;
    let mut value = GradedElement::zero();
    for (i, c) in combo {
        value.add_scaled(&images[i], &c);
    }
    writeln!(out, "{}", value.display(&doc.spec))?;
    Ok(EXIT_OK)
}
