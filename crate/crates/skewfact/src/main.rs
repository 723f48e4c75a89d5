//! Command-line interface: exact multiplication, factorization, bounds,
//! growth, filtration checks, finite-field census and the identity gallery.
//! Exit codes: 0 success, 1 mathematical failure (a proven bound or identity
//! failed), 2 usage error.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skewfact::census;
use skewfact::expr::{self, print_pbw, ParseError};
use skewfact::factor::{self, FactorError, DEFAULT_BUDGET};
use skewfact::field::{
    Field, GaussianRationals, PrimeField, RatFuncField, Rationals,
};
use skewfact::gallery::{self, Family};
use skewfact::ore::{self, OreError};
use skewfact::pbw::{GAlgebra, PbwError};
use skewfact::presentation::{self, AlgebraSpec};
use skewfact::report::{self, ErrorBodyJson, ErrorJson};

#[derive(Parser)]
#[command(
    name = "skewfact",
    version,
    about = "Exact factorization in filtered PBW algebras and univariate Ore rings"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Builtin algebra: weyl:n | shift | qshift:q | qweyl:n:q | qaffine:n:q |
    /// integration | poly:n
    #[arg(long)]
    algebra: Option<String>,
    /// Presentation JSON file (see README for the schema)
    #[arg(long, conflicts_with = "algebra")]
    algebra_file: Option<PathBuf>,
    /// Coefficient field: Q | F:p | Qi | Qx[:var]
    #[arg(long, default_value = "Q")]
    field: String,
    /// Override filtration weights, e.g. --weights 2,1
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply expressions left to right and print the normal form
    Mul {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Use a univariate Ore ring instead: diff | shift | qshift:q | conj
        #[arg(long, conflicts_with_all = ["algebra", "algebra_file"])]
        ore: Option<String>,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Enumerate factorizations of an element
    Factor {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Two-factor decompositions only
        #[arg(long, conflicts_with = "all")]
        two: bool,
        /// All maximal chains of irreducible factors
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        expr: String,
    },
    /// Evaluate the factorization-count bounds for elements of V_n
    Bound {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(short)]
        n: u64,
    },
    /// Dimension of the filtration level V_n
    Growth {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(short)]
        n: u64,
    },
    /// Check that the weighted filtration is admissible
    Grcheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Search for weights making the filtration admissible
    FindWeights {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
    },
    /// Brute-force factorization census over a prime field
    Census {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        degree_bound: u64,
        /// Random elements sampled per degree level
        #[arg(long, default_value_t = 25)]
        sample: usize,
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Verify the infinite-factorization identity gallery
    Gallery {
        #[command(subcommand)]
        sub: GalleryCmd,
    },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// Verify identities and certify pairwise distinctness
    Verify {
        /// rat-weyl | rat-shift | rat-qshift | conjugation | all
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// q parameter for the q-shift family
        #[arg(long, default_value = "2")]
        q: String,
        /// Also run the symbolic shift-family verification over QQ(c)(n)
        #[arg(long)]
        symbolic: bool,
    },
}

struct CliError {
    exit: i32,
    kind: String,
    message: String,
    offset: Option<usize>,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        exit: 2,
        kind: "usage".into(),
        message: message.into(),
        offset: None,
    }
}

fn math(kind: &str, message: impl Into<String>) -> CliError {
    CliError {
        exit: 1,
        kind: kind.into(),
        message: message.into(),
        offset: None,
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        let offset = match &e {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownSymbol { offset, .. }
            | ParseError::ExponentOverflow { offset }
            | ParseError::NonUnitDivisor { offset } => Some(*offset),
        };
        CliError {
            exit: 2,
            kind: "parse".into(),
            message: e.to_string(),
            offset,
        }
    }
}

impl From<PbwError> for CliError {
    fn from(e: PbwError) -> Self {
        usage(e.to_string())
    }
}

impl From<OreError> for CliError {
    fn from(e: OreError) -> Self {
        usage(e.to_string())
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match &e {
            FactorError::BoundViolation(_) => math("bound-violation", e.to_string()),
            FactorError::SoundnessViolation(_) => math("soundness", e.to_string()),
            FactorError::PositiveDimensional(_) => math("positive-dimensional", e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<gallery::GalleryError> for CliError {
    fn from(e: gallery::GalleryError) -> Self {
        usage(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum FieldChoice {
    Q,
    Fp(u64),
    Qi,
    Qx(String),
}

impl FieldChoice {
    fn parse(s: &str) -> Result<FieldChoice, CliError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldChoice::Q);
        }
        if s == "Qi" {
            return Ok(FieldChoice::Qi);
        }
        if s == "Qx" {
            return Ok(FieldChoice::Qx("x".into()));
        }
        if let Some(var) = s.strip_prefix("Qx:") {
            if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(usage(format!("bad field variable {:?}", var)));
            }
            return Ok(FieldChoice::Qx(var.into()));
        }
        if let Some(p) = s.strip_prefix("F:").or_else(|| s.strip_prefix("F")) {
            let p: u64 = p
                .parse()
                .map_err(|_| usage(format!("bad prime field spec {:?}", s)))?;
            return Ok(FieldChoice::Fp(p));
        }
        Err(usage(format!(
            "unknown field {:?} (expected Q | F:p | Qi | Qx[:var])",
            s
        )))
    }
}

/// Instantiate over any of the four supported coefficient fields.
macro_rules! with_any_field {
    ($choice:expr, $field:ident, $body:expr) => {
        match &$choice {
            FieldChoice::Q => {
                let $field = Rationals;
                $body
            }
            FieldChoice::Fp(p) => {
                let $field = PrimeField::new(*p).map_err(|e| usage(e.to_string()))?;
                $body
            }
            FieldChoice::Qi => {
                let $field = GaussianRationals;
                $body
            }
            FieldChoice::Qx(var) => {
                let $field = RatFuncField::new(Rationals, var);
                $body
            }
        }
    };
}

/// Instantiate over the fields with a factorization backend (finite
/// enumeration or Groebner elimination).
macro_rules! with_factor_field {
    ($choice:expr, $field:ident, $body:expr) => {
        match &$choice {
            FieldChoice::Q => {
                let $field = Rationals;
                $body
            }
            FieldChoice::Fp(p) => {
                let $field = PrimeField::new(*p).map_err(|e| usage(e.to_string()))?;
                $body
            }
            FieldChoice::Qi => {
                let $field = GaussianRationals;
                $body
            }
            FieldChoice::Qx(_) => {
                return Err(usage(
                    "this command needs an enumerable or solvable field (Q, F:p, Qi); \
                     factorization over rational-function coefficients is not supported",
                ))
            }
        }
    };
}

fn parse_weights(s: &Option<String>) -> Result<Option<Vec<u64>>, CliError> {
    match s {
        None => Ok(None),
        Some(text) => {
            let ws: Result<Vec<u64>, _> = text.split(',').map(|t| t.trim().parse()).collect();
            let ws = ws.map_err(|_| usage(format!("bad weights {:?}", text)))?;
            if ws.iter().any(|&w| w == 0) {
                return Err(usage("weights must be strictly positive"));
            }
            Ok(Some(ws))
        }
    }
}

fn build_ring<K: Field>(args: &AlgebraArgs, field: K) -> Result<Arc<GAlgebra<K>>, CliError> {
    let weights = parse_weights(&args.weights)?;
    let ring = match (&args.algebra, &args.algebra_file) {
        (Some(spec), None) => {
            let spec = AlgebraSpec::parse(spec).map_err(usage)?;
            spec.build_weighted(field.clone(), weights.clone())?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?;
            let mut file = presentation::parse_file(&text)?;
            if let Some(w) = weights.clone() {
                file.weights = Some(w);
            }
            presentation::build(&file, field.clone())?
        }
        _ => return Err(usage("exactly one of --algebra or --algebra-file is required")),
    };
    // a rational-function coefficient variable must not shadow a generator
    if ring
        .names()
        .iter()
        .any(|n| expr::named_scalar(&field, n).is_some())
    {
        return Err(usage(
            "a generator name collides with a coefficient-field symbol; \
             rename the field variable (e.g. --field Qx:a)",
        ));
    }
    Ok(ring)
}

fn emit_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn main() {
    if let Ok(threads) = std::env::var("SKEWFACT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            if format == Format::Json {
                emit_json(&ErrorJson {
                    error: ErrorBodyJson {
                        kind: e.kind.clone(),
                        message: e.message.clone(),
                        offset: e.offset,
                    },
                });
            } else {
                eprintln!("error ({}): {}", e.kind, e.message);
            }
            std::process::exit(e.exit);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Mul {
            algebra,
            ore,
            exprs,
        } => cmd_mul(&algebra, &ore, &exprs, cli.format),
        Cmd::Factor {
            algebra,
            two,
            all,
            budget,
            expr,
        } => cmd_factor(&algebra, two, all, budget, &expr, cli.format),
        Cmd::Bound { algebra, n } => cmd_bound(&algebra, n, cli.format),
        Cmd::Growth { algebra, n } => cmd_growth(&algebra, n, cli.format),
        Cmd::Grcheck { algebra } => cmd_grcheck(&algebra, cli.format),
        Cmd::FindWeights {
            algebra,
            max_weight,
        } => cmd_find_weights(&algebra, max_weight, cli.format),
        Cmd::Census {
            algebra,
            degree_bound,
            sample,
            seed,
            budget,
        } => cmd_census(&algebra, degree_bound, sample, seed, budget, cli.format),
        Cmd::Gallery { sub } => cmd_gallery(sub, cli.format),
    }
}

fn cmd_mul(
    args: &AlgebraArgs,
    ore_spec: &Option<String>,
    exprs: &[String],
    format: Format,
) -> Result<(), CliError> {
    let result = match ore_spec {
        Some(spec) => mul_ore(args, spec, exprs)?,
        None => {
            let choice = FieldChoice::parse(&args.field)?;
            with_any_field!(choice, field, {
                let ring = build_ring(args, field)?;
                let mut acc = expr::parse_in(&ring, &exprs[0])?;
                for e in &exprs[1..] {
                    let rhs = expr::parse_in(&ring, e)?;
                    acc = acc.mul(&rhs)?;
                }
                print_pbw(&acc)
            })
        }
    };
    match format {
        Format::Json => emit_json(&report::MulJson { result }),
        _ => println!("{}", result),
    }
    Ok(())
}

fn mul_ore(args: &AlgebraArgs, spec: &str, exprs: &[String]) -> Result<String, CliError> {
    let choice = FieldChoice::parse(&args.field)?;
    macro_rules! run_ore {
        ($ring:expr) => {{
            let ring = $ring;
            let mut acc = expr::parse_in(&ring, &exprs[0])?;
            for e in &exprs[1..] {
                let rhs = expr::parse_in(&ring, e)?;
                acc = acc.mul(&rhs)?;
            }
            Ok(expr::print_ore(&acc))
        }};
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts[0] {
        "conj" => {
            if choice != FieldChoice::Q && choice != FieldChoice::Qi {
                return Err(usage("the conjugation ring is defined over Qi"));
            }
            run_ore!(ore::conjugation_ring()?)
        }
        kind @ ("diff" | "shift" | "qshift") => match &choice {
            FieldChoice::Q | FieldChoice::Qx(_) => {
                let var = match &choice {
                    FieldChoice::Qx(v) => v.clone(),
                    _ => "x".to_string(),
                };
                let coeffs = RatFuncField::new(Rationals, &var);
                match kind {
                    "diff" => run_ore!(ore::differential_ring(coeffs)?),
                    "shift" => run_ore!(ore::shift_ring(coeffs)?),
                    _ => {
                        let q = parts.get(1).ok_or_else(|| usage("qshift needs :q"))?;
                        let q = coeffs
                            .parse(q)
                            .map_err(|e| usage(format!("bad q literal: {}", e)))?;
                        run_ore!(ore::qshift_ring(coeffs, q)?)
                    }
                }
            }
            FieldChoice::Fp(p) => {
                let pf = PrimeField::new(*p).map_err(|e| usage(e.to_string()))?;
                let coeffs = RatFuncField::new(pf, "x");
                match kind {
                    "diff" => run_ore!(ore::differential_ring(coeffs)?),
                    "shift" => run_ore!(ore::shift_ring(coeffs)?),
                    _ => {
                        let q = parts.get(1).ok_or_else(|| usage("qshift needs :q"))?;
                        let q = coeffs
                            .parse(q)
                            .map_err(|e| usage(format!("bad q literal: {}", e)))?;
                        run_ore!(ore::qshift_ring(coeffs, q)?)
                    }
                }
            }
            FieldChoice::Qi => Err(usage("diff/shift/qshift rings live over Q(x) or F_p(x)")),
        },
        other => Err(usage(format!(
            "unknown Ore ring {:?} (expected diff | shift | qshift:q | conj)",
            other
        ))),
    }
}

fn cmd_factor(
    args: &AlgebraArgs,
    two: bool,
    all: bool,
    budget: u64,
    expr_src: &str,
    format: Format,
) -> Result<(), CliError> {
    if !(two || all) {
        return Err(usage("choose --two or --all"));
    }
    let choice = FieldChoice::parse(&args.field)?;
    let json = with_factor_field!(choice, field, {
        let ring = build_ring(args, field)?;
        let target = expr::parse_in(&ring, expr_src)?;
        let fs = if all {
            factor::factor_all(&target, budget)?
        } else {
            factor::factor_two(&target, budget)?
        };
        report::factor_json(&fs, all)
    });
    match format {
        Format::Json => emit_json(&json),
        _ => {
            println!("target: {}", json.target);
            println!("pairs ({}):", json.pairs.len());
            for [b, c] in &json.pairs {
                println!("  ({}) * ({})", b, c);
            }
            if let Some(chains) = &json.chains {
                println!("chains ({}):", chains.len());
                for ch in chains {
                    let parts: Vec<String> = ch.iter().map(|f| format!("({})", f)).collect();
                    println!("  {}", parts.join(" * "));
                }
            }
            println!("exhaustive: {}", json.exhaustive);
            for d in &json.diagnostics {
                println!("note: {}", d);
            }
            println!(
                "bounds: twoFactor={} total={}",
                json.bounds.two_factor, json.bounds.total
            );
        }
    }
    Ok(())
}

fn cmd_bound(args: &AlgebraArgs, n: u64, format: Format) -> Result<(), CliError> {
    if n == 0 {
        return Err(usage("-n must be >= 1"));
    }
    let choice = FieldChoice::parse(&args.field)?;
    let json = with_any_field!(choice, field, {
        let ring = build_ring(args, field)?;
        report::BoundsJson::from_report(&factor::bounds(&ring, n))
    });
    match format {
        Format::Json => emit_json(&json),
        _ => {
            println!("g = {}", json.g);
            for s in &json.per_split {
                println!("split ({}, {}): {}", s.n1, s.n2, s.bound);
            }
            println!("twoFactor = {}", json.two_factor);
            println!("twoFactorProof = {}", json.two_factor_proof);
            println!("total = {}", json.total);
        }
    }
    Ok(())
}

fn cmd_growth(args: &AlgebraArgs, n: u64, format: Format) -> Result<(), CliError> {
    let choice = FieldChoice::parse(&args.field)?;
    let g = with_any_field!(choice, field, {
        let ring = build_ring(args, field)?;
        ring.growth(n)
    });
    match format {
        Format::Json => emit_json(&report::GrowthJson { n, g }),
        _ => println!("{}", g),
    }
    Ok(())
}

fn cmd_grcheck(args: &AlgebraArgs, format: Format) -> Result<(), CliError> {
    let choice = FieldChoice::parse(&args.field)?;
    let json = with_any_field!(choice, field, {
        let ring = build_ring(args, field)?;
        let rep = ring.gr_check();
        report::grcheck_json(&ring, &rep)
    });
    match format {
        Format::Json => emit_json(&json),
        _ => {
            println!("admissible: {}", json.admissible);
            for v in &json.violations {
                println!(
                    "violation: tail monomial {} of d[{},{}] has degree {} >= {}",
                    v.monomial, v.i, v.j, v.degree, v.bound
                );
            }
        }
    }
    Ok(())
}

fn cmd_find_weights(args: &AlgebraArgs, max_weight: u64, format: Format) -> Result<(), CliError> {
    if max_weight == 0 {
        return Err(usage("--max-weight must be >= 1"));
    }
    let choice = FieldChoice::parse(&args.field)?;
    let found = with_any_field!(choice, field, {
        let ring = build_ring(args, field)?;
        ring.find_weights(max_weight)
    });
    match format {
        Format::Json => emit_json(&report::FindWeightsJson {
            found: found.is_some(),
            weights: found,
        }),
        _ => match found {
            Some(w) => println!(
                "{}",
                w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            None => println!("not found"),
        },
    }
    Ok(())
}

fn cmd_census(
    args: &AlgebraArgs,
    degree_bound: u64,
    sample: usize,
    seed: u64,
    budget: u64,
    format: Format,
) -> Result<(), CliError> {
    let choice = FieldChoice::parse(&args.field)?;
    let FieldChoice::Fp(p) = choice else {
        return Err(usage("census runs over a prime field; use --field F:p"));
    };
    let field = PrimeField::new(p).map_err(|e| usage(e.to_string()))?;
    let ring = build_ring(args, field)?;
    let reports = census::census_sweep(&ring, degree_bound, sample, seed, budget)?;
    match format {
        Format::Json => {
            let json: Vec<report::CensusJson> = reports.iter().map(report::census_json).collect();
            emit_json(&json);
        }
        Format::Csv => print!("{}", report::census_csv(&reports)),
        Format::Text => {
            for r in &reports {
                println!(
                    "{} | count {} | withinBound {}",
                    print_pbw(&r.element),
                    r.count,
                    r.within_bound
                );
            }
            println!("{} elements swept, all within bounds", reports.len());
        }
    }
    Ok(())
}

fn cmd_gallery(sub: GalleryCmd, format: Format) -> Result<(), CliError> {
    let GalleryCmd::Verify {
        family,
        samples,
        q,
        symbolic,
    } = sub;
    let q = Rationals
        .parse(&q)
        .map_err(|e| usage(format!("bad q literal: {}", e)))?;
    let families: Vec<Family> = if family == "all" {
        vec![
            Family::RatWeyl,
            Family::RatShift,
            Family::RatQShift,
            Family::Conjugation,
        ]
    } else {
        vec![Family::parse(&family)
            .ok_or_else(|| usage(format!("unknown family {:?}", family)))?]
    };
    let mut sweeps = Vec::new();
    for f in families {
        sweeps.push(gallery::distinctness_sweep(f, samples, &q)?);
    }
    let mut extra_case = None;
    if symbolic {
        extra_case = Some(gallery::verify_rat_shift_symbolic()?);
    }
    let all_ok = sweeps.iter().all(|s| s.all_verified && s.pairwise_distinct)
        && extra_case.as_ref().map_or(true, |c| c.verified);
    match format {
        Format::Json => {
            #[derive(serde::Serialize)]
            #[serde(rename_all = "camelCase")]
            struct GalleryOut {
                sweeps: Vec<report::GallerySweepJson>,
                #[serde(skip_serializing_if = "Option::is_none")]
                symbolic: Option<report::GalleryCaseJson>,
                all_ok: bool,
            }
            emit_json(&GalleryOut {
                sweeps: sweeps.iter().map(report::gallery_json).collect(),
                symbolic: extra_case
                    .as_ref()
                    .map(report::GalleryCaseJson::from_case),
                all_ok,
            });
        }
        _ => {
            for s in &sweeps {
                println!(
                    "{}: {} cases verified={} pairwiseDistinct={} ({} pairs checked)",
                    s.family,
                    s.cases.len(),
                    s.all_verified,
                    s.pairwise_distinct,
                    s.pairs_checked
                );
            }
            if let Some(c) = &extra_case {
                println!("{}: verified={} [{}]", c.name, c.verified, c.parameters);
            }
        }
    }
    if !all_ok {
        return Err(math(
            "identity-falsified",
            "a gallery identity failed exact verification or two factorizations collided",
        ));
    }
    Ok(())
}
