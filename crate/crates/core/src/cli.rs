//! Command-line front end. [`run`] is the whole program; `main` only
//! forwards the process arguments and streams.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::catalog::{builtin_with_warnings, parse_model, serialize_model, ModelSpec};
use crate::chow::{class_of_divisor_coeffs, ClassExpr, ToricModel};
use crate::error::Error;
use crate::exactalg::{format_rational, parse_poly, parse_poly_auto, vars_from, BigRational, ScalarExpr};
use crate::formulas::{self, DegreeIndex, Kind, PoincareInput, SearchFamily};
use crate::polyfield::{self, OneFormExpr, QuasiDegree, VectorFieldExpr};
use crate::residue::{self, IndexQuery};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "toricsing",
    version,
    about = "Exact singularity counts for foliations and distributions on toric orbifolds"
)]
struct Cli {
    /// Print one JSON object instead of `key = value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Builtin model families.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Singular-point counts.
    Count {
        #[command(subcommand)]
        what: CountCmd,
    },
    /// Euler characteristics.
    Euler {
        #[command(subcommand)]
        what: EulerCmd,
    },
    /// Baum-Bott sum on a weighted complete-intersection surface.
    Baumbott(BaumBottArgs),
    /// Alpha invariant and Euler number of a weighted complete intersection.
    Alpha(AlphaArgs),
    /// k-degree of a complete intersection.
    Multidegree(MultidegreeArgs),
    /// Poincaré-type bound for an invariant complete intersection.
    Poincare(PoincareArgs),
    /// Bounded search for parameters with no singular points.
    Search(SearchArgs),
    /// Closed-form count on a rational normal scroll.
    Scrollform(ScrollArgs),
    /// Local multiplicity and orbifold index of a germ at the origin.
    Residue(ResidueArgs),
    /// Checks on polynomials, vector fields and 1-forms.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Divisibility obstruction for regular foliations on smooth models.
    GcdObstruction(GcdArgs),
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    /// Print a model in the model file format.
    Show(ModelArgs),
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    Foliation {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    Restricted {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        degree: DegreeArgs,
        #[command(flatten)]
        hyp: HypArg,
    },
    Complement {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        degree: DegreeArgs,
        #[command(flatten)]
        hyp: HypArg,
    },
    /// Weighted complete intersection in P(weights).
    Wci(WciArgs),
    /// Complete intersection in a toric model.
    Ci {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        degree: DegreeArgs,
        #[command(flatten)]
        ci: CiArg,
        #[arg(long, value_enum, default_value = "foliation")]
        kind: KindArg,
    },
}

#[derive(Subcommand, Debug)]
enum EulerCmd {
    Hyp {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        hyp: HypArg,
    },
    Ci {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        ci: CiArg,
    },
    Ambient(ModelArgs),
    /// Complement of a hypersurface.
    Complement {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        hyp: HypArg,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Homogeneous {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Whether a 1-form is annihilated by every radial field.
    Descends {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated coefficients of dz_i.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Also test the Frobenius condition.
        #[arg(long)]
        integrable: bool,
    },
    /// Whether `poly = 0` is invariant under a vector field.
    Invariant {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated coefficients of d/dz_i.
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Builtin model, e.g. `projective:3`, `weighted:1,1,2`, `blowup_line_p3`.
    #[arg(long, conflicts_with = "model_file")]
    model: Option<String>,
    /// Model file.
    #[arg(long, value_name = "PATH")]
    model_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DegreeArgs {
    /// Picard vector, e.g. `3` or `2,5`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["degree_div", "symbolic"])]
    degree: Option<String>,
    /// Coefficients of the toric divisors.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
    degree_div: Option<String>,
    /// Symbolic degree; names default to d1..dr.
    #[arg(long, num_args = 0..=1, value_name = "NAMES")]
    symbolic: Option<Option<String>>,
}

#[derive(Args, Debug)]
struct HypArg {
    /// Class of the hypersurface as a Picard vector.
    #[arg(long, allow_hyphen_values = true)]
    hyp: String,
}

#[derive(Args, Debug)]
struct CiArg {
    /// Classes separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    ci: String,
}

#[derive(Args, Debug)]
struct ScalarDegree {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
    degree: Option<String>,
    /// Symbolic degree; the name defaults to `d`.
    #[arg(long, num_args = 0..=1, value_name = "NAME")]
    symbolic: Option<Option<String>>,
}

#[derive(Args, Debug)]
struct WciArgs {
    #[arg(long)]
    weights: String,
    /// Degrees of the defining equations, comma-separated.
    #[arg(long, default_value = "")]
    ci: String,
    #[command(flatten)]
    degree: ScalarDegree,
    #[arg(long, value_enum, default_value = "foliation")]
    kind: KindArg,
}

#[derive(Args, Debug)]
struct BaumBottArgs {
    #[arg(long)]
    weights: String,
    #[arg(long)]
    ci: String,
    #[command(flatten)]
    degree: ScalarDegree,
}

#[derive(Args, Debug)]
struct AlphaArgs {
    #[arg(long)]
    weights: String,
    #[arg(long)]
    ci: String,
    /// Report whether this degree divides alpha.
    #[arg(long, allow_hyphen_values = true)]
    divides: Option<i64>,
}

#[derive(Args, Debug)]
struct MultidegreeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    ci: CiArg,
    /// Index of the class the degree is measured against.
    #[arg(long)]
    index: usize,
    /// Interpret `--index` as a toric divisor instead of a Picard generator.
    #[arg(long)]
    divisor: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    WciCurve,
    WciGeneral,
    ToricCurve,
}

#[derive(Args, Debug)]
struct PoincareArgs {
    #[arg(long, value_enum)]
    variant: Variant,
    #[arg(long)]
    weights: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    ci: String,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
    degree: Option<String>,
    #[arg(long, num_args = 0..=1, value_name = "NAMES")]
    symbolic: Option<Option<String>>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    P111k,
    P1111k,
    Scroll,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    bound: i64,
    /// Scroll parameters a_1..a_n.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Args, Debug)]
struct ScrollArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true, requires = "d2", conflicts_with = "symbolic")]
    d1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "d1")]
    d2: Option<String>,
    /// Keep d1 and d2 symbolic.
    #[arg(long)]
    symbolic: bool,
    /// Also compare with the count on the scroll model.
    #[arg(long)]
    compare: bool,
}

#[derive(Args, Debug)]
struct ResidueArgs {
    /// Chart variables, comma-separated.
    #[arg(long)]
    vars: String,
    /// Components, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    components: String,
    #[arg(long, default_value_t = 1)]
    group: u64,
    #[arg(long, default_value_t = residue::DEFAULT_DEGREE_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct GcdArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Divisor coefficients, one per toric divisor.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Foliation,
    Distribution,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Foliation => Kind::Foliation,
            KindArg::Distribution => Kind::Distribution,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(flag: &str, detail: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("--{flag}: {detail}"))
}

struct Report {
    operation: String,
    inputs: Map<String, Value>,
    result: String,
    details: Vec<(String, Value)>,
    warnings: Vec<String>,
    /// Replaces the `key = value` rendering in plain mode.
    plain: Option<String>,
}

impl Report {
    fn new(operation: &str) -> Self {
        Report {
            operation: operation.to_string(),
            inputs: Map::new(),
            result: String::new(),
            details: Vec::new(),
            warnings: Vec::new(),
            plain: None,
        }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    fn detail(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.details.push((key.to_string(), value.into()));
        self
    }

    fn result(&mut self, r: impl Into<String>) -> &mut Self {
        self.result = r.into();
        self
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut details: Map<String, Value> = self.details.iter().cloned().collect();
            if !self.warnings.is_empty() {
                details.insert("warnings".into(), json!(self.warnings));
            }
            let v = json!({
                "operation": self.operation,
                "inputs": self.inputs,
                "result": self.result,
                "details": details,
            });
            return format!("{v}\n");
        }
        if let Some(text) = &self.plain {
            return text.clone();
        }
        let mut out = format!("result = {}\n", self.result);
        for (k, v) in &self.details {
            match v {
                Value::Array(items) => {
                    for item in items {
                        out.push_str(&format!("{k} = {}\n", plain_value(item)));
                    }
                }
                other => out.push_str(&format!("{k} = {}\n", plain_value(other))),
            }
        }
        out
    }
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text(e: &ScalarExpr) -> String {
    e.canonical_string()
}

fn rational(r: &BigRational) -> String {
    format_rational(r)
}

// ---- input parsing -------------------------------------------------------

fn int_list(flag: &str, s: &str) -> Outcome<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(flag, format!("`{x}` is not an integer"))))
        .collect()
}

fn scalar(flag: &str, s: &str) -> Outcome<ScalarExpr> {
    parse_poly_auto(s.trim()).map_err(|e| usage(flag, e))
}

fn class(flag: &str, s: &str, rank: usize) -> Outcome<ClassExpr> {
    let coords = s.split(',').map(|x| scalar(flag, x)).collect::<Outcome<Vec<_>>>()?;
    if coords.len() != rank {
        return Err(usage(flag, format!("{} entries, the model has rank {rank}", coords.len())));
    }
    ClassExpr::new(coords).map_err(|e| usage(flag, e))
}

fn class_list(flag: &str, s: &str, rank: usize) -> Outcome<Vec<ClassExpr>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|c| class(flag, c, rank)).collect()
}

fn names(flag: &str, s: &str) -> Outcome<Vec<String>> {
    let v: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
    if v.iter().any(|x| x.is_empty()) {
        return Err(usage(flag, "empty name"));
    }
    Ok(v)
}

fn load_model(args: &ModelArgs, report: &mut Report) -> Outcome<ToricModel> {
    match (&args.model, &args.model_file) {
        (Some(spec), None) => {
            let spec: ModelSpec = spec.parse().map_err(|e| usage("model", e))?;
            let (model, warnings) = builtin_with_warnings(&spec)?;
            report.warnings.extend(warnings);
            report.input("model", spec.to_string());
            Ok(model)
        }
        (None, Some(path)) => {
            let body = std::fs::read_to_string(path).map_err(|e| {
                Failure::Domain(Error::InvalidInput(format!("{}: {e}", path.display())))
            })?;
            let model = parse_model(&body)?;
            report.input("model_file", path.display().to_string());
            report.input("model", model.name().to_string());
            Ok(model)
        }
        _ => Err(Failure::Usage("one of --model or --model-file is required".into())),
    }
}

fn toric_degree(args: &DegreeArgs, model: &ToricModel, report: &mut Report) -> Outcome<ClassExpr> {
    if let Some(d) = &args.degree {
        report.input("degree", d.as_str());
        return class("degree", d, model.rank());
    }
    if let Some(d) = &args.degree_div {
        report.input("degree_div", d.as_str());
        let coeffs = d.split(',').map(|x| scalar("degree-div", x)).collect::<Outcome<Vec<_>>>()?;
        return Ok(class_of_divisor_coeffs(model, &coeffs)?);
    }
    if let Some(given) = &args.symbolic {
        let syms = match given {
            Some(s) => names("symbolic", s)?,
            None => ClassExpr::default_symbols(model.rank()),
        };
        if syms.len() != model.rank() {
            return Err(usage(
                "symbolic",
                format!("{} names, the model has rank {}", syms.len(), model.rank()),
            ));
        }
        report.input("symbolic", syms.join(","));
        return Ok(ClassExpr::symbolic(&syms));
    }
    Err(Failure::Usage("one of --degree, --degree-div or --symbolic is required".into()))
}

fn scalar_degree(
    degree: &Option<String>,
    symbolic: &Option<Option<String>>,
    report: &mut Report,
) -> Outcome<ScalarExpr> {
    if let Some(d) = degree {
        report.input("degree", d.as_str());
        return scalar("degree", d);
    }
    if let Some(given) = symbolic {
        let name = given.clone().unwrap_or_else(|| "d".to_string());
        let syms = names("symbolic", &name)?;
        if syms.len() != 1 {
            return Err(usage("symbolic", "expected a single name"));
        }
        report.input("symbolic", name.as_str());
        return Ok(ScalarExpr::var(&vars_from(&syms), 0));
    }
    Err(Failure::Usage("one of --degree or --symbolic is required".into()))
}

fn weight_warnings(weights: &[i64], report: &mut Report) -> Outcome<()> {
    let (_, warnings) = builtin_with_warnings(&ModelSpec::Weighted(weights.to_vec()))?;
    report.warnings.extend(warnings);
    Ok(())
}

fn polys(flag: &str, s: &str, model: &ToricModel) -> Outcome<Vec<ScalarExpr>> {
    s.split(',')
        .map(|p| polyfield::parse_graded(model, p.trim()).map_err(|e| usage(flag, e)))
        .collect()
}

fn degree_value(d: &QuasiDegree) -> Value {
    match d {
        QuasiDegree::Any => json!("any"),
        QuasiDegree::Mixed => json!("none"),
        QuasiDegree::Degree(v) => json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
    }
}

// ---- dispatch ------------------------------------------------------------

fn execute(cmd: Command) -> Outcome<Report> {
    match cmd {
        Command::Catalog { action } => catalog(action),
        Command::Count { what } => count(what),
        Command::Euler { what } => euler(what),
        Command::Baumbott(a) => {
            let mut r = Report::new("baumbott");
            let w = int_list("weights", &a.weights)?;
            let c = int_list("ci", &a.ci)?;
            r.input("weights", a.weights.as_str()).input("ci", a.ci.as_str());
            let d = scalar_degree(&a.degree.degree, &a.degree.symbolic, &mut r)?;
            weight_warnings(&w, &mut r)?;
            let v = formulas::baum_bott_sum(&w, &c, &d)?;
            r.result(text(&v));
            r.detail("general_type_index", formulas::general_type_index(&w, &c));
            Ok(r)
        }
        Command::Alpha(a) => {
            let mut r = Report::new("alpha");
            let w = int_list("weights", &a.weights)?;
            let c = int_list("ci", &a.ci)?;
            r.input("weights", a.weights.as_str()).input("ci", a.ci.as_str());
            weight_warnings(&w, &mut r)?;
            let v = formulas::alpha_invariant(&w, &c)?;
            r.result(rational(&v.alpha));
            r.detail("chi", rational(&v.chi));
            if let Some(d) = a.divides {
                r.input("divides", d);
                r.detail("divides", v.divides(d));
                r.detail("forces_singular", !v.divides(d));
            }
            Ok(r)
        }
        Command::Multidegree(a) => {
            let mut r = Report::new("multidegree");
            let model = load_model(&a.model, &mut r)?;
            let classes = class_list("ci", &a.ci.ci, model.rank())?;
            r.input("ci", a.ci.ci.as_str()).input("index", a.index).input("divisor", a.divisor);
            let index = if a.divisor {
                DegreeIndex::Divisor(a.index)
            } else {
                DegreeIndex::Generator(a.index)
            };
            r.result(text(&formulas::multidegree(&model, &classes, index)?));
            Ok(r)
        }
        Command::Poincare(a) => poincare(a),
        Command::Search(a) => search(a),
        Command::Scrollform(a) => scrollform(a),
        Command::Residue(a) => residue_cmd(a),
        Command::Check { what } => check(what),
        Command::GcdObstruction(a) => {
            let mut r = Report::new("gcd-obstruction");
            let model = load_model(&a.model, &mut r)?;
            let coeffs = int_list("coeffs", &a.coeffs)?;
            r.input("coeffs", a.coeffs.as_str());
            let v = formulas::gcd_obstruction(&model, &coeffs)?;
            r.result(v.forces_singular.to_string());
            r.detail("chi", v.chi.to_string()).detail("gcd", v.gcd.to_string());
            Ok(r)
        }
    }
}

fn catalog(action: CatalogCmd) -> Outcome<Report> {
    match action {
        CatalogCmd::List => {
            let mut r = Report::new("catalog list");
            let fams = ModelSpec::families();
            r.result(fams.len().to_string());
            let lines: Vec<String> = fams.iter().map(|(s, d)| format!("{s}  {d}")).collect();
            r.plain = Some(lines.iter().map(|l| format!("{l}\n")).collect());
            r.detail("families", json!(lines));
            Ok(r)
        }
        CatalogCmd::Show(m) => {
            let mut r = Report::new("catalog show");
            let model = load_model(&m, &mut r)?;
            let body = serialize_model(&model);
            r.result(model.name());
            r.detail("euler_number", rational(&model.euler_number()?));
            r.plain = Some(body.clone());
            r.detail("text", body);
            Ok(r)
        }
    }
}

fn count(what: CountCmd) -> Outcome<Report> {
    match what {
        CountCmd::Foliation { model, degree } => {
            let mut r = Report::new("count foliation");
            let m = load_model(&model, &mut r)?;
            let d = toric_degree(&degree, &m, &mut r)?;
            r.result(text(&formulas::foliation_sing_count(&m, &d)?));
            Ok(r)
        }
        CountCmd::Restricted { model, degree, hyp } => {
            let mut r = Report::new("count restricted");
            let (m, d, a) = with_hyp(&model, &degree, &hyp, &mut r)?;
            r.result(text(&formulas::restricted_sing_count(&m, &d, &a)?));
            Ok(r)
        }
        CountCmd::Complement { model, degree, hyp } => {
            let mut r = Report::new("count complement");
            let (m, d, a) = with_hyp(&model, &degree, &hyp, &mut r)?;
            r.result(text(&formulas::complement_sing_count(&m, &d, &a)?));
            Ok(r)
        }
        CountCmd::Wci(a) => {
            let mut r = Report::new("count wci");
            let w = int_list("weights", &a.weights)?;
            let c = int_list("ci", &a.ci)?;
            r.input("weights", a.weights.as_str()).input("ci", a.ci.as_str());
            let kind = Kind::from(a.kind);
            r.input("kind", kind.to_string());
            let d = scalar_degree(&a.degree.degree, &a.degree.symbolic, &mut r)?;
            weight_warnings(&w, &mut r)?;
            let b = formulas::wci_breakdown(&w, &c, &d, kind)?;
            r.result(text(&b.total()?));
            let prefactor = match (b.numerator.constant_value(), b.denominator.constant_value()) {
                (Some(n), Some(d)) => rational(&(n / d)),
                _ => format!("({})/({})", text(&b.numerator), text(&b.denominator)),
            };
            r.detail("prefactor", prefactor);
            r.detail("terms", json!(b.terms.iter().map(text).collect::<Vec<_>>()));
            r.detail("bracket", text(&b.bracket()));
            Ok(r)
        }
        CountCmd::Ci { model, degree, ci, kind } => {
            let mut r = Report::new("count ci");
            let m = load_model(&model, &mut r)?;
            let classes = class_list("ci", &ci.ci, m.rank())?;
            r.input("ci", ci.ci.as_str());
            let kind = Kind::from(kind);
            r.input("kind", kind.to_string());
            let d = toric_degree(&degree, &m, &mut r)?;
            if !m.smooth() {
                r.warnings.push(format!(
                    "`{}` is not smooth; the complete-intersection count assumes a smooth ambient space",
                    m.name()
                ));
            }
            r.result(text(&formulas::ci_sing_count(&m, &classes, &d, kind)?));
            Ok(r)
        }
    }
}

fn with_hyp(
    model: &ModelArgs,
    degree: &DegreeArgs,
    hyp: &HypArg,
    r: &mut Report,
) -> Outcome<(ToricModel, ClassExpr, ClassExpr)> {
    let m = load_model(model, r)?;
    r.input("hyp", hyp.hyp.as_str());
    let a = class("hyp", &hyp.hyp, m.rank())?;
    let d = toric_degree(degree, &m, r)?;
    Ok((m, d, a))
}

fn euler(what: EulerCmd) -> Outcome<Report> {
    match what {
        EulerCmd::Hyp { model, hyp } => {
            let mut r = Report::new("euler hyp");
            let m = load_model(&model, &mut r)?;
            r.input("hyp", hyp.hyp.as_str());
            let a = class("hyp", &hyp.hyp, m.rank())?;
            r.result(text(&formulas::hypersurface_euler(&m, &a)?));
            Ok(r)
        }
        EulerCmd::Complement { model, hyp } => {
            let mut r = Report::new("euler complement");
            let m = load_model(&model, &mut r)?;
            r.input("hyp", hyp.hyp.as_str());
            let a = class("hyp", &hyp.hyp, m.rank())?;
            r.result(text(&formulas::complement_euler(&m, &a)?));
            Ok(r)
        }
        EulerCmd::Ci { model, ci } => {
            let mut r = Report::new("euler ci");
            let m = load_model(&model, &mut r)?;
            r.input("ci", ci.ci.as_str());
            let classes = class_list("ci", &ci.ci, m.rank())?;
            r.result(text(&formulas::ci_euler(&m, &classes)?));
            Ok(r)
        }
        EulerCmd::Ambient(model) => {
            let mut r = Report::new("euler ambient");
            let m = load_model(&model, &mut r)?;
            r.result(text(&formulas::ambient_euler(&m)?));
            Ok(r)
        }
    }
}

fn poincare(a: PoincareArgs) -> Outcome<Report> {
    let mut r = Report::new("poincare");
    let variant = a.variant.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    r.input("variant", variant).input("ci", a.ci.as_str()).input("strict", a.strict);
    let input = match a.variant {
        Variant::WciCurve | Variant::WciGeneral => {
            let weights = a
                .weights
                .as_deref()
                .ok_or_else(|| Failure::Usage("--weights is required for wci variants".into()))?;
            r.input("weights", weights);
            let weights = int_list("weights", weights)?;
            let classes = int_list("ci", &a.ci)?;
            let degree = scalar_degree(&a.degree, &a.symbolic, &mut r)?;
            weight_warnings(&weights, &mut r)?;
            if matches!(a.variant, Variant::WciCurve) {
                PoincareInput::WciCurve { weights, classes, degree }
            } else {
                PoincareInput::WciGeneral { weights, classes, degree }
            }
        }
        Variant::ToricCurve => {
            let model = load_model(&a.model, &mut r)?;
            let classes = class_list("ci", &a.ci, model.rank())?;
            let degree = toric_degree(
                &DegreeArgs { degree: a.degree.clone(), degree_div: None, symbolic: a.symbolic.clone() },
                &model,
                &mut r,
            )?;
            PoincareInput::ToricCurve { model, classes, degree }
        }
    };
    let v = formulas::poincare_check(&input, a.strict)?;
    r.result(match v.holds {
        Some(h) => h.to_string(),
        None => "undecided".to_string(),
    });
    r.detail("lhs", text(&v.lhs)).detail("rhs", text(&v.rhs)).detail("slack", text(&v.slack));
    Ok(r)
}

fn search(a: SearchArgs) -> Outcome<Report> {
    let mut r = Report::new("search");
    r.input("bound", a.bound);
    let family = match a.family {
        FamilyArg::P111k => SearchFamily::P111k,
        FamilyArg::P1111k => SearchFamily::P1111k,
        FamilyArg::Scroll => {
            let params = a
                .a
                .as_deref()
                .ok_or_else(|| Failure::Usage("--a is required for the scroll family".into()))?;
            SearchFamily::Scroll(int_list("a", params)?)
        }
    };
    r.input("family", family.to_string());
    let found = formulas::regular_search(&family, a.bound)?;
    r.result(found.len().to_string());
    r.detail("solutions", json!(found.iter().map(|s| s.to_string()).collect::<Vec<_>>()));
    Ok(r)
}

fn scrollform(a: ScrollArgs) -> Outcome<Report> {
    let mut r = Report::new("scrollform");
    let params = int_list("a", &a.a)?;
    r.input("a", a.a.as_str());
    let (d1, d2) = match (&a.d1, &a.d2, a.symbolic) {
        (Some(x), Some(y), false) => {
            r.input("d1", x.as_str()).input("d2", y.as_str());
            (scalar("d1", x)?, scalar("d2", y)?)
        }
        (None, None, true) => {
            r.input("symbolic", true);
            let v = vars_from(&["d1", "d2"]);
            (ScalarExpr::var(&v, 0), ScalarExpr::var(&v, 1))
        }
        _ => return Err(Failure::Usage("give --d1 and --d2, or --symbolic".into())),
    };
    r.result(text(&formulas::scroll_closed_form(&params, &d1, &d2)?));
    if a.compare {
        let rel = formulas::scroll_count_relation(&params)?;
        r.detail("sign", rel.sign).detail("count", text(&rel.count));
    }
    Ok(r)
}

fn residue_cmd(a: ResidueArgs) -> Outcome<Report> {
    let mut r = Report::new("residue");
    let vars = vars_from(&names("vars", &a.vars)?);
    let components = a
        .components
        .split(',')
        .map(|c| parse_poly(c.trim(), &vars).map_err(|e| usage("components", e)))
        .collect::<Outcome<Vec<_>>>()?;
    r.input("vars", a.vars.as_str())
        .input("components", a.components.as_str())
        .input("group", a.group)
        .input("cap", a.cap);
    let q = IndexQuery { components, group_order: a.group, degree_cap: a.cap };
    let rep = residue::local_multiplicity(&q)?;
    r.result(rational(&rep.orbifold_index));
    r.detail("multiplicity", rep.multiplicity)
        .detail("index", rational(&rep.orbifold_index))
        .detail("stabilized_at", rep.stabilized_at);
    Ok(r)
}

fn check(what: CheckCmd) -> Outcome<Report> {
    match what {
        CheckCmd::Homogeneous { model, poly } => {
            let mut r = Report::new("check homogeneous");
            let m = load_model(&model, &mut r)?;
            r.input("poly", poly.as_str());
            let p = polyfield::parse_graded(&m, &poly).map_err(|e| usage("poly", e))?;
            let d = polyfield::check_quasi_homogeneous(&m, &p)?;
            r.result((d != QuasiDegree::Mixed).to_string());
            r.detail("degree", degree_value(&d));
            Ok(r)
        }
        CheckCmd::Descends { model, form, integrable } => {
            let mut r = Report::new("check descends");
            let m = load_model(&model, &mut r)?;
            r.input("form", form.as_str());
            let f = OneFormExpr { components: polys("form", &form, &m)? };
            r.result(polyfield::check_descends(&m, &f)?.to_string());
            r.detail("degree", degree_value(&polyfield::one_form_degree(&m, &f)?));
            if integrable {
                r.detail("integrable", polyfield::is_integrable(&f)?);
            }
            Ok(r)
        }
        CheckCmd::Invariant { model, field, poly } => {
            let mut r = Report::new("check invariant");
            let m = load_model(&model, &mut r)?;
            r.input("field", field.as_str()).input("poly", poly.as_str());
            let x = VectorFieldExpr { components: polys("field", &field, &m)? };
            let f = polyfield::parse_graded(&m, &poly).map_err(|e| usage("poly", e))?;
            let v = polyfield::check_invariant_hypersurface(&x, &f)?;
            r.result(v.invariant.to_string());
            if let Some(g) = v.cofactor {
                r.detail("cofactor", text(&g));
            }
            Ok(r)
        }
    }
}

/// Parse `argv` (program name first) and execute. Exit codes: 0 success,
/// 1 domain error, 2 usage error.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                CliOutput { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let stderr = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            CliOutput { code: 0, stdout: report.render(cli.json), stderr }
        }
        Err(Failure::Usage(msg)) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(e)) => CliOutput {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
