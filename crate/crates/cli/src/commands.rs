//! Subcommands and their dispatch to the engine.

use clap::{Args, Parser, Subcommand, ValueEnum};
use remcalc::crt::{
    crt_lift, crt_project, divrem_generalized, newton_interpolation, newton_interpolation_germ, partial_fractions,
    serret_quotient, universal_remainder_xr,
};
use remcalc::dynamics::{
    euler_solve, recurrence_solve, ColletOptions, ColletSolver, ConvolutionMethod, EulerOptions, ExpPolyFunction,
    Forcing, OdeProblem, RecurrenceProblem,
};
use remcalc::matrixfun::{
    annihilator_certificate, matrix_exp_with, matrix_function_with, minimal_polynomial, Annihilator,
    AnnihilatorCertificate, Tolerances, DEFAULT_ANNIHILATION_TOL,
};
use remcalc::scalar::DEFAULT_CLUSTER_TOL;
use remcalc::{Complex64, ExpGerm, FactoredPoly, Jet, JetOracle, Poly, RationalGerm};

use crate::doc::Doc;
use crate::input::{self, CliError, CliResult, DivisorPath};

#[derive(Debug, Parser)]
#[command(
    name = "remcalc",
    version,
    about = "Euclidean division of germs by polynomials, and its applications"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative tolerance of annihilation checks.
    #[arg(long, global = true, env = "REMCALC_TOL", default_value_t = DEFAULT_ANNIHILATION_TOL)]
    pub tol: f64,
    /// Distance under which computed roots are merged into one.
    #[arg(long, global = true, default_value_t = DEFAULT_CLUSTER_TOL)]
    pub cluster_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Remainder (and quotient) of a germ by a polynomial.
    Divrem(DivremArgs),
    /// Partial fraction decomposition of num / den.
    Partfrac(FractionArgs),
    /// Quotient of num by den from a power series at 0.
    Quotient(FractionArgs),
    /// Certified minimal polynomial of a matrix.
    Minpoly(MatrixArgs),
    /// f(A) for a polynomial, rational or exponential germ f.
    Matfun(MatfunArgs),
    /// e^{tA}.
    Matexp(MatexpArgs),
    /// D(S) y = f for the shift S, values y_0..y_T.
    Recurrence(RecurrenceArgs),
    /// D(d/dt) y = f with initial derivatives y_0..y_{q-1}.
    Ode(OdeArgs),
    /// y' + h(t, A) y = f(t) with h polynomial in A.
    Euler(EulerArgs),
    /// Newton interpolation at distinct nodes.
    Interp(InterpArgs),
    /// X^r mod Π (X - b_i) from complete homogeneous sums.
    XrRemainder(XrArgs),
    /// Local residues of a polynomial and back.
    Crt {
        #[command(subcommand)]
        op: CrtOp,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GermKind {
    Poly,
    Rational,
    Exp,
}

#[derive(Debug, Args)]
pub struct GermArgs {
    #[arg(long, value_enum, default_value_t = GermKind::Poly)]
    pub germ: GermKind,
    /// Numerator of a rational germ.
    #[arg(long, allow_hyphen_values = true)]
    pub num: Option<String>,
    /// Denominator of a rational germ.
    #[arg(long, allow_hyphen_values = true)]
    pub den: Option<String>,
    /// Parameter of the exponential germ e^{tX}.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DivremArgs {
    /// Polynomial dividend, for --germ poly.
    #[arg(long, allow_hyphen_values = true)]
    pub dividend: Option<String>,
    /// Expression or coefficient list (roots are found numerically), or
    /// factored form (taken as exact).
    #[arg(long, allow_hyphen_values = true)]
    pub divisor: String,
    #[command(flatten)]
    pub germ: GermArgs,
}

#[derive(Debug, Args)]
pub struct FractionArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub num: String,
    #[arg(long, allow_hyphen_values = true)]
    pub den: String,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
}

#[derive(Debug, Args)]
pub struct MatfunArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    /// Polynomial germ, for --germ poly.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[command(flatten)]
    pub germ: GermArgs,
    /// `minimal`, `characteristic`, or an annihilating polynomial.
    #[arg(long, default_value = "minimal")]
    pub annihilator: String,
}

#[derive(Debug, Args)]
pub struct MatexpArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    /// Time parameter t of e^{tA}.
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct RecurrenceArgs {
    /// Monic characteristic polynomial.
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: String,
    /// y_0, ..., y_{q-1}.
    #[arg(long, allow_hyphen_values = true)]
    pub init: String,
    /// f_0, f_1, ...; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub forcing: Option<String>,
    /// Last index computed.
    #[arg(long = "T")]
    pub horizon: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Quadrature,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    /// Monic polynomial D of the operator D(d/dt).
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: String,
    /// y(0), y'(0), ..., y^{(q-1)}(0).
    #[arg(long, allow_hyphen_values = true)]
    pub init: String,
    /// Expression in t, exp-poly terms, or a sampled table; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub forcing: Option<String>,
    /// Time at which the solution is evaluated.
    #[arg(
        long,
        allow_negative_numbers = true,
        conflicts_with = "grid",
        required_unless_present = "grid"
    )]
    pub t: Option<f64>,
    /// Times, comma separated or a JSON list.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    /// h_0(t), h_1(t), ... with h(t, A) = Σ h_j(t) A^j.
    #[arg(long, allow_hyphen_values = true)]
    pub hcoeffs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: String,
    /// One function of t per component; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub forcing: Option<String>,
    /// Time at which the solution is evaluated.
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "poly",
        required_unless_present = "poly"
    )]
    pub values: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: String,
}

#[derive(Debug, Args)]
pub struct XrArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: String,
}

#[derive(Debug, Subcommand)]
pub enum CrtOp {
    /// Jets of a polynomial at the roots of the divisor.
    Project {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// The polynomial of degree < deg D with the given jets.
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        residues: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Divrem(_) => "divrem",
            Command::Partfrac(_) => "partfrac",
            Command::Quotient(_) => "quotient",
            Command::Minpoly(_) => "minpoly",
            Command::Matfun(_) => "matfun",
            Command::Matexp(_) => "matexp",
            Command::Recurrence(_) => "recurrence",
            Command::Ode(_) => "ode",
            Command::Euler(_) => "euler",
            Command::Interp(_) => "interp",
            Command::XrRemainder(_) => "xr-remainder",
            Command::Crt {
                op: CrtOp::Project { .. },
            } => "crt project",
            Command::Crt { op: CrtOp::Lift { .. } } => "crt lift",
        }
    }
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub tol: Tolerances,
}

impl Settings {
    pub fn from_cli(cli: &Cli) -> Self {
        Settings {
            tol: Tolerances {
                annihilation: cli.tol,
                cluster: cli.cluster_tol,
            },
        }
    }
}

fn missing(flag: &str, germ: &str) -> CliError {
    CliError::Input(format!("--{flag} is required for --germ {germ}"))
}

fn germ(args: &GermArgs, poly_flag: &str, poly_arg: Option<&str>) -> CliResult<Box<dyn JetOracle>> {
    match args.germ {
        GermKind::Poly => {
            let text = poly_arg.ok_or_else(|| missing(poly_flag, "poly"))?;
            Ok(Box::new(input::poly(poly_flag, text)?))
        }
        GermKind::Rational => {
            let num = input::poly("num", args.num.as_deref().ok_or_else(|| missing("num", "rational"))?)?;
            let den = input::poly("den", args.den.as_deref().ok_or_else(|| missing("den", "rational"))?)?;
            Ok(Box::new(RationalGerm::new(num, den)?))
        }
        GermKind::Exp => Ok(Box::new(ExpGerm::new(args.t.ok_or_else(|| missing("t", "exp"))?))),
    }
}

pub fn factored_doc(fp: &FactoredPoly) -> Doc {
    let factors = fp
        .factors()
        .iter()
        .map(|f| Doc::object().with("root", f.root).with("mult", f.mult))
        .collect::<Vec<_>>();
    Doc::object().with("leading", fp.leading()).with("factors", factors)
}

fn divisor_doc(fp: &FactoredPoly, path: DivisorPath) -> Doc {
    factored_doc(fp).with("path", path.as_str())
}

pub fn jet_doc(j: &Jet) -> Doc {
    Doc::object()
        .with("center", j.center())
        .with("coeffs", Doc::complex_list(j.coeffs()))
}

fn certificate_doc(c: &AnnihilatorCertificate) -> Doc {
    Doc::object()
        .with("kind", c.kind.as_str())
        .with("poly", &c.poly)
        .with("factored", factored_doc(&c.factored))
        .with("residual_norm", c.residual_norm)
        .with("tolerance", c.tolerance)
}

fn exp_poly_vector(name: &str, arg: Option<&str>, len: usize) -> CliResult<Vec<ExpPolyFunction>> {
    match arg {
        Some(a) => input::exp_poly_list(name, a),
        None => Ok(vec![ExpPolyFunction::zero(); len]),
    }
}

/// Runs one subcommand and returns its result document.
pub fn execute(command: &Command, settings: Settings) -> CliResult<Doc> {
    let tol = settings.tol;
    match command {
        Command::Divrem(a) => {
            let (d, path) = input::factored("divisor", &a.divisor, tol.cluster)?;
            let f = germ(&a.germ, "dividend", a.dividend.as_deref())?;
            let res = divrem_generalized(&f, &d)?;
            Ok(Doc::object()
                .with("remainder", &res.remainder)
                .with("quotient", res.quotient.as_ref().map_or(Doc::Null, Doc::poly))
                .with("divisor", divisor_doc(&d, path)))
        }
        Command::Partfrac(a) => {
            let p = input::poly("num", &a.num)?;
            let (d, path) = input::factored("den", &a.den, tol.cluster)?;
            let pf = partial_fractions(&p, &d)?;
            let parts = pf
                .parts
                .iter()
                .map(|pp| {
                    Doc::object()
                        .with("center", pp.center())
                        .with("coeffs", Doc::complex_list(pp.coeffs()))
                        .with("residue", pp.residue())
                })
                .collect::<Vec<_>>();
            Ok(Doc::object()
                .with("polynomial_part", &pf.polynomial_part)
                .with("parts", parts)
                .with("den", divisor_doc(&d, path)))
        }
        Command::Quotient(a) => {
            let p = input::poly("num", &a.num)?;
            let d = input::poly("den", &a.den)?;
            Ok(Doc::object().with("quotient", &serret_quotient(&p, &d)?))
        }
        Command::Minpoly(a) => {
            let m = input::matrix("matrix", &a.matrix)?;
            Ok(certificate_doc(&minimal_polynomial(&m, tol)?))
        }
        Command::Matfun(a) => {
            let m = input::matrix("matrix", &a.matrix)?;
            let f = germ(&a.germ, "f", a.f.as_deref())?;
            let which = match a.annihilator.as_str() {
                "minimal" => Annihilator::Minimal,
                "characteristic" => Annihilator::Characteristic,
                other => match input::resolve("annihilator", other)? {
                    input::Payload::Json(serde_json::Value::Object(_)) => {
                        Annihilator::Factored(input::factored("annihilator", other, tol.cluster)?.0)
                    }
                    _ => Annihilator::Expanded(input::poly("annihilator", other)?),
                },
            };
            let cert = annihilator_certificate(&m, &which, tol)?;
            let fa = matrix_function_with(&f, &m, &cert)?;
            Ok(Doc::object()
                .with("matrix", &fa)
                .with("annihilator", certificate_doc(&cert)))
        }
        Command::Matexp(a) => {
            let m = input::matrix("matrix", &a.matrix)?;
            Ok(Doc::object()
                .with("t", a.t)
                .with("matrix", &matrix_exp_with(a.t, &m, tol)?))
        }
        Command::Recurrence(a) => {
            let d = input::poly("D", &a.d)?;
            let init = input::complex_list("init", &a.init)?;
            let forcing = match &a.forcing {
                Some(f) => input::complex_list("forcing", f)?,
                None => vec![Complex64::new(0.0, 0.0); (a.horizon + 1).saturating_sub(init.len())],
            };
            let prob = RecurrenceProblem::new(d, init, forcing)?;
            Ok(Doc::object()
                .with("T", a.horizon)
                .with("y", Doc::complex_list(&recurrence_solve(&prob, a.horizon)?)))
        }
        Command::Ode(a) => {
            let d = input::poly("D", &a.d)?;
            let init = input::complex_list("init", &a.init)?;
            let forcing = match &a.forcing {
                Some(f) => input::forcing("forcing", f)?,
                None => Forcing::zero(),
            };
            let method = match a.method {
                Method::Auto => ConvolutionMethod::Auto,
                Method::Quadrature => ConvolutionMethod::Quadrature,
            };
            let opts = ColletOptions {
                method,
                cluster_tol: tol.cluster,
                ..ColletOptions::default()
            };
            let solver = ColletSolver::new(OdeProblem::new(d, init, forcing)?, opts)?;
            match (a.t, &a.grid) {
                (Some(t), _) => Ok(Doc::object().with("t", t).with("y", solver.solve(t)?)),
                (None, Some(g)) => {
                    let grid = input::real_list("grid", g)?;
                    let y = solver.solve_grid(&grid)?;
                    Ok(Doc::object()
                        .with("grid", Doc::List(grid.iter().map(|&t| Doc::Float(t)).collect()))
                        .with("y", Doc::complex_list(&y)))
                }
                (None, None) => Err(CliError::Input("one of --t or --grid is required".into())),
            }
        }
        Command::Euler(a) => {
            let m = input::matrix("matrix", &a.matrix)?;
            let h = input::exp_poly_list("hcoeffs", &a.hcoeffs)?;
            let y0 = input::complex_list("y0", &a.y0)?;
            let f = exp_poly_vector("forcing", a.forcing.as_deref(), m.order())?;
            let opts = EulerOptions {
                matrix: tol,
                ..EulerOptions::default()
            };
            Ok(Doc::object()
                .with("t", a.t)
                .with("y", Doc::complex_list(&euler_solve(&h, &m, &y0, &f, a.t, opts)?)))
        }
        Command::Interp(a) => {
            let nodes = input::complex_list("nodes", &a.nodes)?;
            let ni = match (&a.values, &a.poly) {
                (Some(v), _) => newton_interpolation(&input::complex_list("values", v)?, &nodes)?,
                (None, Some(p)) => newton_interpolation_germ(&input::poly("poly", p)?, &nodes)?,
                (None, None) => return Err(CliError::Input("one of --values or --poly is required".into())),
            };
            Ok(Doc::object()
                .with("divided_differences", Doc::complex_list(&ni.divided_differences))
                .with("poly", &ni.poly))
        }
        Command::XrRemainder(a) => {
            let nodes = input::complex_list("nodes", &a.nodes)?;
            if nodes.is_empty() {
                return Err(remcalc::Error::ConstantDivisor.into());
            }
            Ok(Doc::object()
                .with("r", a.r)
                .with("remainder", &universal_remainder_xr(a.r, &nodes)))
        }
        Command::Crt {
            op: CrtOp::Project { poly, divisor },
        } => {
            let p = input::poly("poly", poly)?;
            let (d, path) = input::factored("divisor", divisor, tol.cluster)?;
            let residues = crt_project(&p, &d).iter().map(jet_doc).collect::<Vec<_>>();
            Ok(Doc::object()
                .with("residues", residues)
                .with("divisor", divisor_doc(&d, path)))
        }
        Command::Crt {
            op: CrtOp::Lift { residues, divisor },
        } => {
            let js = input::jets("residues", residues)?;
            let (d, path) = input::factored("divisor", divisor, tol.cluster)?;
            let p: Poly = crt_lift(&js, &d)?;
            Ok(Doc::object().with("poly", &p).with("divisor", divisor_doc(&d, path)))
        }
    }
}
