//! `apoly`: exact Newton-polygon, edge-polynomial, resultant, and gluing
//! computations for Laurent polynomials, with JSON output.
//!
//! Exit codes: 0 success, 1 usage error, 2 polynomial parse error,
//! 3 mathematical precondition violation (including the `APOLY_MAX_TERMS`
//! size guard).

mod output;

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use apoly_core::amalgam::{
    fig8_a_polynomial, glue_substitution, resultant_chain, unity_report, AmalgamParams,
    GluingData,
};
use apoly_core::newton::{
    basis_change_for_slope, edge_polynomial_substitution, newton_polygon, Edge, EdgePolynomial,
    NewtonError, NewtonPolygon, Slope,
};
use apoly_core::numeric::convergence_trace;
use apoly_core::text::parse_poly;
use apoly_core::{LaurentPolynomial, TermLimitExceeded, VarName};

use output::{
    AmalgamJson, CheckRootsJson, EdgeJson, EdgeSelectionJson, PolyJson, PolygonJson, TraceJson,
    UnityJson,
};

#[derive(Parser)]
#[command(
    name = "apoly",
    version,
    about = "Exact Laurent-polynomial calculator: Newton polygons, edge polynomials, resultants, gluings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit compact JSON (the default)
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Emit pretty-printed JSON
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polynomial and echo it in canonical form
    Parse {
        /// Catalog name ("fig8"), file path, or inline expression
        #[arg(long)]
        poly: String,
    },
    /// Canonical representative up to units: content 1, minimum exponent 0
    /// per variable, positive greatest coefficient
    Normalize {
        #[arg(long)]
        poly: String,
    },
    /// Newton polygon with all edges and their edge polynomials
    Newton {
        #[arg(long)]
        poly: String,
        /// Horizontal,vertical axis variables, e.g. "L,M"
        #[arg(long, value_name = "H,V")]
        vars: String,
    },
    /// Flat list of polygon edges with bases and edge polynomials
    Edges {
        #[arg(long)]
        poly: String,
        #[arg(long, value_name = "H,V")]
        vars: String,
    },
    /// Edge polynomials of all edges with a given slope
    Edgepoly {
        #[arg(long)]
        poly: String,
        #[arg(long, value_name = "H,V")]
        vars: String,
        /// "p/q", an integer, or "vertical"
        #[arg(long)]
        slope: String,
    },
    /// Resultant of two polynomials with respect to one variable
    Resultant {
        #[arg(long)]
        var: String,
        /// The two operands (place after "--" if they begin with "-")
        #[arg(value_name = "F")]
        f: String,
        #[arg(value_name = "G")]
        g: String,
    },
    /// Glue the base polynomial and eliminate down to two variables
    Amalgam {
        /// Gluing degree parameter
        #[arg(long)]
        n: u32,
        /// "subst" stops at the glued family F(A, p); "resultant" runs the
        /// full elimination chain down to G(A, B)
        #[arg(long, value_enum, default_value_t = Method::Resultant)]
        method: Method,
        /// Gluing exponents r,s,u,v with r*v - s*u = +/-1
        #[arg(long, value_name = "r,s,u,v", default_value = "4,1,3,1")]
        gluing: String,
        /// Also report root-of-unity divisibility of the vertical edge
        #[arg(long)]
        check_roots: bool,
    },
    /// Largest k with (1 - t^n)^k dividing a polynomial in t
    CheckRoots {
        /// A polynomial in the single variable t
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: u32,
    },
    /// Follow the roots of the glued family as p shrinks geometrically
    Trace {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1e-2)]
        p0: f64,
        #[arg(long, default_value_t = 0.1)]
        ratio: f64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Subst,
    Resultant,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Subst => "subst",
            Method::Resultant => "resultant",
        }
    }
}

/// Failures sorted by exit code: usage 1, parse 2, math 3.
enum CliError {
    Usage(String),
    Parse(String),
    Math(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Math(m) => f.write_str(m),
        }
    }
}

fn math<E: fmt::Display>(err: E) -> CliError {
    CliError::Math(err.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive as errors but are successes.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    // The size guard unwinds from deep inside the arithmetic; report it as
    // an ordinary limit error instead of a panic splat.
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<TermLimitExceeded>().is_none() {
            default_hook(info);
        }
    }));

    let result = match catch_unwind(AssertUnwindSafe(|| run(&cli.command))) {
        Ok(result) => result,
        Err(payload) => match payload.downcast_ref::<TermLimitExceeded>() {
            Some(limit) => Err(CliError::Math(limit.to_string())),
            None => std::panic::resume_unwind(payload),
        },
    };

    match result {
        Ok(rendered) => {
            let pretty = cli.pretty;
            let mut text = if pretty {
                rendered.pretty
            } else {
                rendered.compact
            };
            text.push('\n');
            match &cli.out {
                Some(path) => {
                    if let Err(err) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}

/// Both serializations of one output value; `main` picks per the flags.
struct Rendered {
    compact: String,
    pretty: String,
}

fn render<T: serde::Serialize>(value: &T) -> Rendered {
    Rendered {
        compact: serde_json::to_string(value).expect("output serializes"),
        pretty: serde_json::to_string_pretty(value).expect("output serializes"),
    }
}

fn run(command: &Command) -> Result<Rendered, CliError> {
    match command {
        Command::Parse { poly } => {
            let f = resolve_poly(poly)?;
            Ok(render(&PolyJson::of(&f)))
        }
        Command::Normalize { poly } => {
            let f = resolve_poly(poly)?.normalize().map_err(math)?;
            Ok(render(&PolyJson::of(&f)))
        }
        Command::Newton { poly, vars } => {
            let f = resolve_poly(poly)?;
            let (h, v) = parse_axes(vars)?;
            let polygon = newton_polygon(&f, &h, &v).map_err(math)?;
            let edges = edges_with_polys(&f, &polygon)?;
            Ok(render(&PolygonJson {
                vertices: PolygonJson::vertices_of(&polygon),
                edges,
            }))
        }
        Command::Edges { poly, vars } => {
            let f = resolve_poly(poly)?;
            let (h, v) = parse_axes(vars)?;
            let polygon = newton_polygon(&f, &h, &v).map_err(math)?;
            let edges = edges_with_polys(&f, &polygon)?;
            Ok(render(&serde_json::json!({ "edges": edges })))
        }
        Command::Edgepoly { poly, vars, slope } => {
            let f = resolve_poly(poly)?;
            let (h, v) = parse_axes(vars)?;
            let slope: Slope = slope.parse().map_err(CliError::Usage)?;
            let polygon = newton_polygon(&f, &h, &v).map_err(math)?;
            let selected = match polygon.edges_with_slope(slope) {
                Ok(edges) => edges,
                Err(NewtonError::DegeneratePolygon) => Vec::new(),
                Err(err) => return Err(math(err)),
            };
            let edges = selected
                .iter()
                .map(|edge| annotate(&f, edge))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(render(&EdgeSelectionJson {
                slope: slope.to_string(),
                edges,
            }))
        }
        Command::Resultant { var, f, g } => {
            let v: VarName = var
                .parse()
                .map_err(|err: apoly_core::PolyError| CliError::Usage(err.to_string()))?;
            let f = resolve_poly(f)?;
            let g = resolve_poly(g)?;
            let res = apoly_core::elimination::resultant(&f, &g, &v).map_err(math)?;
            Ok(render(&PolyJson::of(&res)))
        }
        Command::Amalgam {
            n,
            method,
            gluing,
            check_roots,
        } => {
            let data = parse_gluing(gluing)?;
            let params =
                AmalgamParams::new(fig8_a_polynomial(), data, *n).map_err(math)?;
            let result = match method {
                Method::Subst => glue_substitution(&params).map_err(math)?,
                Method::Resultant => resultant_chain(&params).map_err(math)?,
            };
            let unity = if *check_roots {
                Some(UnityJson::of(&unity_report(&params).map_err(math)?))
            } else {
                None
            };
            let (r, s, u, v) = data.exponents();
            Ok(render(&AmalgamJson {
                n: *n,
                gluing: [r, s, u, v],
                method: method.name().to_string(),
                result: PolyJson::of(&result),
                unity,
            }))
        }
        Command::CheckRoots { poly, n } => {
            if *n == 0 {
                return Err(CliError::Usage(
                    "the root-of-unity order n must be at least 1".to_string(),
                ));
            }
            let f = resolve_poly(poly)?;
            let f_e = EdgePolynomial::new(f).map_err(math)?;
            let multiplicity = apoly_core::newton::unity_divisibility(&f_e, *n);
            Ok(render(&CheckRootsJson {
                n: *n,
                multiplicity,
                divisible: multiplicity >= 1,
            }))
        }
        Command::Trace {
            n,
            p0,
            ratio,
            steps,
            tol,
        } => {
            let trace = convergence_trace(*n, *p0, *ratio, *steps, *tol).map_err(math)?;
            Ok(render(&TraceJson::of(&trace)))
        }
    }
}

/// `--poly` accepts a catalog name, a file path, or an inline expression,
/// in that order of preference.
fn resolve_poly(spec: &str) -> Result<LaurentPolynomial, CliError> {
    if spec == "fig8" {
        return Ok(fig8_a_polynomial());
    }
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|err| CliError::Usage(format!("cannot read {spec}: {err}")))?;
        return parse_poly(text.trim())
            .map_err(|err| CliError::Parse(format!("in {spec}: {err}")));
    }
    parse_poly(spec).map_err(|err| CliError::Parse(err.to_string()))
}

fn parse_axes(vars: &str) -> Result<(VarName, VarName), CliError> {
    let parts: Vec<&str> = vars.split(',').collect();
    let [h, v] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--vars wants exactly two comma-separated names, got `{vars}`"
        )));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<VarName>()
            .map_err(|err| CliError::Usage(err.to_string()))
    };
    Ok((parse(h)?, parse(v)?))
}

fn parse_gluing(text: &str) -> Result<GluingData, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let [r, s, u, v] = parts.as_slice() else {
        return Err(CliError::Usage(format!(
            "--gluing wants four comma-separated integers r,s,u,v, got `{text}`"
        )));
    };
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|err| CliError::Usage(format!("bad gluing exponent `{x}`: {err}")))
    };
    GluingData::new(parse(r)?, parse(s)?, parse(u)?, parse(v)?).map_err(math)
}

/// Every edge of the polygon, each with its canonical basis change and the
/// edge polynomial computed through it. A single-point polygon has no edges.
fn edges_with_polys(
    f: &LaurentPolynomial,
    polygon: &NewtonPolygon,
) -> Result<Vec<EdgeJson>, CliError> {
    let edges = match polygon.edges() {
        Ok(edges) => edges,
        Err(NewtonError::DegeneratePolygon) => return Ok(Vec::new()),
        Err(err) => return Err(math(err)),
    };
    edges.iter().map(|edge| annotate(f, edge)).collect()
}

fn annotate(f: &LaurentPolynomial, edge: &Edge) -> Result<EdgeJson, CliError> {
    let (p, q) = edge.slope().direction_pair();
    let basis = basis_change_for_slope(p, q).map_err(math)?;
    let f_e = edge_polynomial_substitution(f, edge, &basis).map_err(math)?;
    Ok(EdgeJson::of(edge).with_poly(&basis, f_e.poly()))
}
