//! `affcrystal`: command-line access to the affine-crystal engines.
//!
//! Results are written to stdout as JSON (or DOT for `crystal-graph --format dot`),
//! diagnostics to stderr. Exit status: 0 on success, 1 on a domain error, 2 on a
//! usage error.

mod input;
mod selftest;

use std::collections::BTreeMap;
use std::process::ExitCode;

use affine_crystal::coefficients::{
    gw_invariant, kschur_h_expansion, positroid_schubert_decomposition, stanley_monomial_expansion,
    stanley_schur_expansion, Coefficient, LrEngine, Method, SchurExpansion,
};
use affine_crystal::crystal::{build_crystal, highest_weight_factorizations, verify_stembridge};
use affine_crystal::involution::verify_cancellation;
use affine_crystal::{AffinePermutation, Error, Factorizer};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::{
    check_degree, parse_composition, parse_partition, parse_rectangle, parse_window, CliError, CliResult, ElementArgs,
    MethodArg,
};

#[derive(Debug, Parser)]
#[command(name = "affcrystal", version, about = "Crystals on affine factorizations and affine LR coefficients")]
struct Cli {
    /// Run the subcommand's invariant suite on bounded parameters instead.
    #[arg(long, global = true)]
    selftest: bool,
    /// Largest element length the enumerating subcommands accept.
    #[arg(long, global = true, env = "CRYSTAL_MAX_DEGREE", default_value_t = 12)]
    max_degree: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// Schur expansion of the affine Stanley function.
    Schur,
    /// Monomial expansion (factorization counts).
    M,
    /// The k-Schur function of an affine Grassmannian element in the h basis.
    H,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand the affine Stanley symmetric function of an element.
    ExpandStanley {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, value_enum, default_value = "schur")]
        basis: BasisArg,
        /// Number of variables for the monomial basis (default: the length).
        #[arg(long)]
        factors: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// The crystal graph on factorizations into a fixed number of factors.
    CrystalGraph {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, default_value_t = 3)]
        factors: usize,
        /// Missing residue defining the letter order (default: the smallest).
        #[arg(long)]
        x: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Highest-weight factorizations, optionally of one weight only.
    HighestWeights {
        #[command(flatten)]
        element: ElementArgs,
        /// Restrict to this weight.
        #[arg(long)]
        mu: Option<String>,
        /// Number of factors (default: the length of the element).
        #[arg(long)]
        factors: Option<usize>,
        #[arg(long)]
        x: Option<usize>,
    },
    /// Affine Littlewood–Richardson coefficient: s_μ · s^(k)_w at s^(k)_v.
    LrCoeff {
        #[arg(long)]
        mu: Option<String>,
        /// Affine Grassmannian window for w.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Affine Grassmannian window for v.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Shape λ with w = w_λ (needs --n).
        #[arg(long)]
        w_shape: Option<String>,
        /// Shape ν with v = w_ν (needs --n).
        #[arg(long)]
        v_shape: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// A factor R_i^e of the rectangle multiplying w_μ, as `i:e`; repeatable.
        #[arg(long = "rect", allow_hyphen_values = true)]
        rectangles: Vec<String>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Genus-zero three-point Gromov–Witten invariant of the flag manifold.
    GwInvariant {
        /// Permutation with a single descent.
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        v: Option<String>,
        /// Degree vector d_1,…,d_{n−1} (default: zero).
        #[arg(long)]
        d: Option<String>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Fusion coefficient N_{λ,μ}^ν of su(ℓ) at level n − ℓ.
    Fusion {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Schubert decomposition of a positroid class.
    Positroid {
        #[command(flatten)]
        element: ElementArgs,
        /// Grassmannian dimension r (default: the shift of the window).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Check the Stembridge axioms on a crystal graph.
    VerifyStembridge {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, default_value_t = 3)]
        factors: usize,
        #[arg(long)]
        x: Option<usize>,
    },
    /// Check the sign-reversing involution and its cancellation identity.
    VerifyInvolution {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        x: Option<usize>,
        /// Size of the permutation group (default: the length of μ).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Count factorizations of one weight, or all of them by weight.
    CountFactorizations {
        #[command(flatten)]
        element: ElementArgs,
        /// Weight (|w¹|, |w²|, …), rightmost factor first.
        #[arg(long)]
        weight: Option<String>,
        /// Number of factors when no weight is given (default: the length).
        #[arg(long)]
        factors: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ExpandStanley { .. } => "expand-stanley",
            Command::CrystalGraph { .. } => "crystal-graph",
            Command::HighestWeights { .. } => "highest-weights",
            Command::LrCoeff { .. } => "lr-coeff",
            Command::GwInvariant { .. } => "gw-invariant",
            Command::Fusion { .. } => "fusion",
            Command::Positroid { .. } => "positroid",
            Command::VerifyStembridge { .. } => "verify-stembridge",
            Command::VerifyInvolution { .. } => "verify-involution",
            Command::CountFactorizations { .. } => "count-factorizations",
        }
    }
}

/// What a subcommand writes to stdout.
enum Output {
    Json(Value),
    Text(String),
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    value.as_deref().ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

fn required_num(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

/// Runs `compute` with the requested method; an explicit crystal request whose
/// hypotheses fail falls back to the oracle with `hypotheses_met = false`.
fn with_fallback<T>(
    method: Option<MethodArg>,
    compute: impl Fn(Option<Method>) -> affine_crystal::Result<T>,
) -> CliResult<T> {
    let requested = method.map(Method::from);
    match compute(requested) {
        Err(Error::HypothesisNotMet(why)) if requested == Some(Method::Crystal) => {
            eprintln!("crystal hypotheses not met ({why}); using the oracle");
            Ok(compute(None)?)
        }
        other => Ok(other?),
    }
}

fn coefficient_json(c: Coefficient) -> Output {
    Output::Json(c.to_json())
}

fn expand_stanley(
    element: &ElementArgs,
    basis: BasisArg,
    factors: Option<usize>,
    method: Option<MethodArg>,
    max_degree: usize,
) -> CliResult<Output> {
    let w = element.element()?;
    check_degree(&w, max_degree)?;
    let expansion: SchurExpansion = match basis {
        BasisArg::Schur => match method.map(Method::from) {
            Some(Method::Crystal) => match stanley_schur_expansion(&w, Some(Method::Crystal)) {
                Err(Error::NoMissingResidue) => {
                    eprintln!("element has full content and length above 2; using the oracle");
                    stanley_schur_expansion(&w, None)?
                }
                other => other?,
            },
            Some(Method::Pieri) => {
                return Err(CliError::Usage("the Schur expansion uses --method crystal or alternating".into()))
            }
            requested => stanley_schur_expansion(&w, requested)?,
        },
        BasisArg::M => stanley_monomial_expansion(&w, factors.unwrap_or(w.length())),
        BasisArg::H => kschur_h_expansion(&w, max_degree)?,
    };
    let mut out = expansion.to_json();
    // Zero coefficients are dropped from the printed expansion.
    if let Some(map) = out["coefficients"].as_object_mut() {
        map.retain(|_, c| c.as_i64() != Some(0));
    }
    Ok(Output::Json(out))
}

fn crystal_graph(
    element: &ElementArgs,
    factors: usize,
    x: Option<usize>,
    format: Format,
    max_degree: usize,
) -> CliResult<Output> {
    let w = element.element()?;
    check_degree(&w, max_degree)?;
    let g = build_crystal(&w, factors, x)?;
    Ok(match format {
        Format::Dot => Output::Text(g.to_dot()),
        Format::Json => Output::Json(g.to_json()),
    })
}

fn highest_weights(
    element: &ElementArgs,
    mu: &Option<String>,
    factors: Option<usize>,
    x: Option<usize>,
    max_degree: usize,
) -> CliResult<Output> {
    let w = element.element()?;
    check_degree(&w, max_degree)?;
    let mut by_weight: BTreeMap<String, Vec<String>> = BTreeMap::new();
    match mu {
        Some(mu) => {
            let mu = parse_partition(mu)?;
            let l = factors.unwrap_or(mu.len());
            let found = highest_weight_factorizations(&w, &mu, l, x)?;
            by_weight.insert(mu.key(), found.iter().map(ToString::to_string).collect());
        }
        None => {
            let l = factors.unwrap_or(w.length());
            let g = build_crystal(&w, l, x)?;
            for v in g.highest_weight_vertices() {
                let vertex = &g.vertices[v];
                by_weight.entry(vertex.weight().sorted().key()).or_default().push(vertex.to_string());
            }
        }
    }
    let x = x.or_else(|| w.missing_residues().min());
    Ok(Output::Json(json!({
        "element": w.to_string(),
        "x": x,
        "highest_weights": by_weight,
    })))
}

#[allow(clippy::too_many_arguments)]
fn lr_coeff(
    mu: &Option<String>,
    w: &Option<String>,
    v: &Option<String>,
    w_shape: &Option<String>,
    v_shape: &Option<String>,
    n: Option<usize>,
    rectangles: &[String],
    method: Option<MethodArg>,
) -> CliResult<Output> {
    let mu = parse_partition(required(mu, "--mu")?)?;
    let pick = |window: &Option<String>, shape: &Option<String>, name: &str| -> CliResult<AffinePermutation> {
        match (window, shape) {
            (Some(window), None) => parse_window(window),
            (None, Some(shape)) => {
                let n = n.ok_or_else(|| CliError::Usage(format!("--{name}-shape needs --n")))?;
                Ok(AffinePermutation::w_lambda(&parse_partition(shape)?, n)?)
            }
            _ => Err(CliError::Usage(format!("give exactly one of --{name} and --{name}-shape"))),
        }
    };
    let w = pick(w, w_shape, "w")?;
    let v = pick(v, v_shape, "v")?;
    let rectangles = rectangles.iter().map(|r| parse_rectangle(r)).collect::<CliResult<Vec<_>>>()?;
    let engine = LrEngine::new(w.n());
    let c = with_fallback(method, |m| engine.clone().affine_lr(&mu, &w, &v, &rectangles, m))?;
    Ok(coefficient_json(c))
}

fn gw(
    u: &Option<String>,
    w: &Option<String>,
    v: &Option<String>,
    d: &Option<String>,
    method: Option<MethodArg>,
) -> CliResult<Output> {
    let u = parse_window(required(u, "--u")?)?;
    let w = parse_window(required(w, "--w")?)?;
    let v = parse_window(required(v, "--v")?)?;
    let d = match d {
        Some(d) => parse_composition(d)?.0,
        None => vec![0; u.n().saturating_sub(1)],
    };
    let result = with_fallback(method, |m| gw_invariant(&u, &w, &v, &d, m))?;
    Ok(Output::Json(result.to_json()))
}

fn fusion(
    lambda: &Option<String>,
    mu: &Option<String>,
    nu: &Option<String>,
    ell: Option<usize>,
    n: Option<usize>,
    method: Option<MethodArg>,
) -> CliResult<Output> {
    let lambda = parse_partition(required(lambda, "--lambda")?)?;
    let mu = parse_partition(required(mu, "--mu")?)?;
    let nu = parse_partition(required(nu, "--nu")?)?;
    let ell = required_num(ell, "--ell")?;
    let n = required_num(n, "--n")?;
    let engine = LrEngine::new(n);
    let c = with_fallback(method, |m| engine.clone().fusion_coefficient(&lambda, &mu, &nu, ell, m))?;
    Ok(coefficient_json(c))
}

fn positroid(
    element: &ElementArgs,
    r: Option<usize>,
    method: Option<MethodArg>,
    max_degree: usize,
) -> CliResult<Output> {
    let w = element.element()?;
    let r = match r {
        Some(r) => r,
        None => usize::try_from(w.shift()).map_err(|_| Error::NotBounded { r: w.shift(), n: w.n() })?,
    };
    check_degree(&w.tau_decomposition().1, max_degree)?;
    let expansion = match method.map(Method::from) {
        Some(Method::Crystal) => match positroid_schubert_decomposition(&w, r, Some(Method::Crystal)) {
            Err(Error::NoMissingResidue) => {
                eprintln!("element has full content; using the oracle");
                positroid_schubert_decomposition(&w, r, None)?
            }
            other => other?,
        },
        requested => positroid_schubert_decomposition(&w, r, requested)?,
    };
    let mut out = expansion.to_json();
    if let Some(map) = out["coefficients"].as_object_mut() {
        map.retain(|_, c| c.as_i64() != Some(0));
    }
    Ok(Output::Json(out))
}

fn stembridge(element: &ElementArgs, factors: usize, x: Option<usize>, max_degree: usize) -> CliResult<Output> {
    let w = element.element()?;
    check_degree(&w, max_degree)?;
    let g = build_crystal(&w, factors, x)?;
    let report = verify_stembridge(&g)?;
    let axioms: BTreeMap<String, Value> = report
        .results
        .iter()
        .map(|r| {
            let witness = r.witness.map(|w| json!({ "vertex": g.vertices[w.vertex].to_string(), "i": w.i, "j": w.j }));
            (r.axiom.to_string(), json!({ "violations": r.violations, "witness": witness }))
        })
        .collect();
    if !report.passed() {
        eprint!("{report}");
    }
    Ok(Output::Json(json!({
        "element": w.to_string(),
        "factors": factors,
        "vertices": g.vertices.len(),
        "edges": g.edges.len(),
        "passed": report.passed(),
        "total_violations": report.total_violations(),
        "axioms": axioms,
    })))
}

fn involution(
    element: &ElementArgs,
    mu: &Option<String>,
    x: Option<usize>,
    m: Option<usize>,
    max_degree: usize,
) -> CliResult<Output> {
    let w = element.element()?;
    check_degree(&w, max_degree)?;
    let mu = parse_partition(required(mu, "--mu")?)?;
    let report = verify_cancellation(&w, &mu, x, m)?;
    Ok(Output::Json(report.to_json()))
}

fn count(
    element: &ElementArgs,
    weight: &Option<String>,
    factors: Option<usize>,
    max_degree: usize,
) -> CliResult<Output> {
    let w = element.element()?;
    check_degree(&w, max_degree)?;
    let mut factorizer = Factorizer::new(w.n());
    if let Some(weight) = weight {
        let alpha = parse_composition(weight)?;
        let count = factorizer.count(&w, &alpha);
        return Ok(Output::Json(json!({ "weight": weight_key(&alpha.0), "count": count })));
    }
    let l = factors.unwrap_or(w.length());
    let all = factorizer.all(&w, l);
    let mut by_weight: BTreeMap<String, usize> = BTreeMap::new();
    for f in &all {
        *by_weight.entry(weight_key(&f.weight().0)).or_insert(0) += 1;
    }
    Ok(Output::Json(json!({ "factors": l, "total": all.len(), "by_weight": by_weight })))
}

fn weight_key(parts: &[usize]) -> String {
    parts.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: &Cli) -> CliResult<Output> {
    let max = cli.max_degree;
    match &cli.command {
        Command::ExpandStanley { element, basis, factors, method } => {
            expand_stanley(element, *basis, *factors, *method, max)
        }
        Command::CrystalGraph { element, factors, x, format } => crystal_graph(element, *factors, *x, *format, max),
        Command::HighestWeights { element, mu, factors, x } => highest_weights(element, mu, *factors, *x, max),
        Command::LrCoeff { mu, w, v, w_shape, v_shape, n, rectangles, method } => {
            lr_coeff(mu, w, v, w_shape, v_shape, *n, rectangles, *method)
        }
        Command::GwInvariant { u, w, v, d, method } => gw(u, w, v, d, *method),
        Command::Fusion { lambda, mu, nu, ell, n, method } => fusion(lambda, mu, nu, *ell, *n, *method),
        Command::Positroid { element, r, method } => positroid(element, *r, *method, max),
        Command::VerifyStembridge { element, factors, x } => stembridge(element, *factors, *x, max),
        Command::VerifyInvolution { element, mu, x, m } => involution(element, mu, *x, *m, max),
        Command::CountFactorizations { element, weight, factors } => count(element, weight, *factors, max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.selftest {
        let report = selftest::run(cli.command.name());
        println!("{}", report.to_json());
        return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    match run(&cli) {
        Ok(Output::Json(value)) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Domain(_) => 1,
            })
        }
    }
}
