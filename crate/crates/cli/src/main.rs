//! Command-line front end: parse field/grid/polynomial specs, run the
//! analysis pipeline, generate the classical fixtures, search for bound
//! attainers, and run the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports violations,
//! 2 on usage or input errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use footprint::field::DEFAULT_ORDER_CAP;
use footprint::{
    classify, hermitian_polynomial, run_suite, search_attaining, trace_difference_polynomial,
    trivial_polynomial, Field, FieldElement, Grid, Monomial, MonomialOrder, Polynomial,
    SearchMode, SuiteParams,
};

#[derive(Parser)]
#[command(
    name = "footprint",
    version,
    about = "Root counting and footprint-bound classification for multivariate \
             polynomials over finite grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a polynomial modulo the grid, split off linear factors, count
    /// roots, and classify against the footprint bound.
    Analyze {
        /// Polynomial, e.g. "X1^3+X2^2+X2" or "(w+1)*X1*X2-2"
        poly: String,
        /// Field spec: `p`, `p^k`, or `p^k/m0,...,mk` (modulus constant first)
        #[arg(long)]
        field: String,
        /// Comma-separated per-variable factors: `full`, `trace_nonzero:d`,
        /// or `[a,b,...]`
        #[arg(long)]
        grid: String,
        /// Ordering spec: `lex:X2,X1`, `grlex:X1,X2`, `grevlex:X1,X2`, or
        /// `weighted:3,1;lex:X1,X2`
        #[arg(long)]
        order: String,
        /// Emit the report as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Generate one of the known families and verify its root count.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: footprint-bound, bi-implication, split-equivalence,
        /// procond, thetop-corolla, lemlimlom, schwartz-zippel, field-axioms
        #[arg(long)]
        suite: String,
        /// Rebase corpus suites onto this field
        #[arg(long)]
        field: Option<String>,
        /// Trial count for randomized suites (per-suite default otherwise)
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit the full suite report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Search for bound-attaining polynomials with a prescribed leading
    /// monomial; prints newline-delimited JSON hits plus a summary line.
    Search {
        /// Target leading monomial, e.g. "X2^2"
        target: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        order: String,
        /// Trials in sampling mode
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Force exhaustive enumeration (errors if the space exceeds 2^22)
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// A nonzero constant times linear factors over chosen subsets.
    Trivial {
        #[arg(long)]
        field: String,
        #[arg(long)]
        grid: String,
        /// Removed values for X1 (comma-separated elements)
        #[arg(long)]
        s1: Option<String>,
        #[arg(long)]
        s2: Option<String>,
        #[arg(long)]
        s3: Option<String>,
        #[arg(long)]
        s4: Option<String>,
        /// Leading constant
        #[arg(long, default_value = "1")]
        constant: String,
        #[arg(long)]
        json: bool,
    },
    /// The Hermitian polynomial X1^{q+1} - X2^q - X2 over F_{q^2}.
    Hermitian {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// The trace difference F = G*H over F_{q^2} (needs q >= 3).
    TraceDiff {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(2)
        }
    }
}

/// Field parsing honors the FOOTPRINT_FIELD_CAP override.
fn parse_field(spec: &str) -> footprint::Result<Field> {
    let cap = std::env::var("FOOTPRINT_FIELD_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP);
    Field::parse_with_cap(spec, cap)
}

fn run(command: Command) -> footprint::Result<ExitCode> {
    match command {
        Command::Analyze { poly, field, grid, order, json } => {
            let field = parse_field(&field)?;
            let grid = Grid::parse(&grid, &field)?;
            let order = MonomialOrder::parse(&order, grid.num_vars())?;
            let poly = Polynomial::parse(&poly, &field, grid.num_vars())?;
            let reduced = poly.reduce_mod_grid(&grid)?;
            let report = classify(&poly, &grid, &order)?;
            if json {
                let envelope = json!({
                    "field": field.spec_string(),
                    "grid": grid.to_string(),
                    "polynomial": poly.to_string(),
                    "reduced": reduced.to_string(),
                    "report": report.to_json(),
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("valid json"));
            } else {
                println!("field:              {}", field.spec_string());
                println!("grid:               {}", grid);
                println!("polynomial:         {}", poly);
                if reduced != poly {
                    println!("reduced:            {}", reduced);
                }
                println!("order:              {}", order);
                println!("leading monomial:   {}", report.lm);
                println!("bound D(lm):        {}", report.bound);
                println!("root count:         {}", report.root_count);
                println!("attains bound:      {}", report.attains_bound);
                println!("ordering invariant: {}", report.ordering_invariant);
                println!("omega (residual):   {}", report.omega);
                let maxd: Vec<String> =
                    report.max_d_monomials.iter().map(|m| m.to_string()).collect();
                println!("max-D monomials:    {}", maxd.join(", "));
                for (var, subset) in report.extracted_subsets.iter().enumerate() {
                    if !subset.is_empty() {
                        let items: Vec<String> = subset.iter().map(|a| a.to_string()).collect();
                        println!("extracted X{}:       {{{}}}", var + 1, items.join(","));
                    }
                }
                println!("residual:           {}", report.residual);
                println!("classification:     {}", report.classification);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { family } => construct(family),
        Command::Verify { suite, field, trials, seed, json } => {
            let params = SuiteParams { field, trials, seed };
            let report = run_suite(&suite, &params)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("valid json")
                );
            } else {
                println!(
                    "suite {}: {} ({} checks, seed {})",
                    report.suite,
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.checks,
                    report.seed
                );
                for note in &report.notes {
                    println!("  {}", note);
                }
                for v in &report.violations {
                    println!("  violation: {}", v);
                }
            }
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Search { target, field, grid, order, budget, seed, exhaustive } => {
            let field = parse_field(&field)?;
            let grid = Grid::parse(&grid, &field)?;
            let order = MonomialOrder::parse(&order, grid.num_vars())?;
            let target = Monomial::parse(&target, grid.num_vars())?;
            let mode = if exhaustive { SearchMode::Exhaustive } else { SearchMode::Auto };
            let outcome = search_attaining(&grid, &target, &order, mode, budget, seed)?;
            for (poly, report) in &outcome.hits {
                let line = json!({
                    "polynomial": poly.to_string(),
                    "report": report.to_json(),
                });
                println!("{}", line);
            }
            let summary = json!({
                "count": outcome.hits.len(),
                "exhaustive": outcome.exhaustive,
                "candidates_examined": outcome.candidates_examined,
                "candidate_space": outcome.candidate_space.to_string(),
                "seed": outcome.seed,
            });
            println!("{}", summary);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_subset(field: &Field, spec: &Option<String>) -> footprint::Result<Vec<FieldElement>> {
    match spec {
        None => Ok(Vec::new()),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => s.split(',').map(|e| field.parse_element(e)).collect(),
    }
}

fn construct(family: Family) -> footprint::Result<ExitCode> {
    match family {
        Family::Trivial { field, grid, s1, s2, s3, s4, constant, json } => {
            let field = parse_field(&field)?;
            let grid = Grid::parse(&grid, &field)?;
            let mut primes = vec![
                parse_subset(&field, &s1)?,
                parse_subset(&field, &s2)?,
                parse_subset(&field, &s3)?,
                parse_subset(&field, &s4)?,
            ];
            primes.truncate(grid.num_vars());
            let constant = field.parse_element(&constant)?;
            let poly = trivial_polynomial(&grid, &primes, &constant)?;
            let expected: u64 = grid.total_points()
                - grid
                    .sizes()
                    .zip(primes.iter())
                    .map(|(s, p)| s - p.len() as u64)
                    .product::<u64>();
            let counted = grid.count_roots(&poly)?;
            emit_construction(json, "trivial", &poly, expected, counted, json!({}))
        }
        Family::Hermitian { q, json } => {
            let fix = hermitian_polynomial(q)?;
            let counted = fix.grid.count_roots(&fix.poly)?;
            let bound = fix
                .grid
                .footprint_d(&fix.poly.leading_monomial(&fix.order)?)?;
            emit_construction(
                json,
                "hermitian",
                &fix.poly,
                fix.expected_roots,
                counted,
                json!({
                    "field": fix.field.spec_string(),
                    "order": fix.order.to_string(),
                    "bound": bound,
                }),
            )
        }
        Family::TraceDiff { q, json } => {
            let fix = trace_difference_polynomial(q)?;
            let counted = fix.grid.count_roots(&fix.f)?;
            let counted_h = fix.residual_grid.count_roots(&fix.h)?;
            if !json {
                println!("G = {}", fix.g);
                println!("H = {}", fix.h);
                println!(
                    "H roots over nonzero-trace grid: expected {}, counted {}",
                    fix.expected_roots_h, counted_h
                );
            }
            let extra = json!({
                "field": fix.field.spec_string(),
                "g": fix.g.to_string(),
                "h": fix.h.to_string(),
                "h_expected_roots": fix.expected_roots_h,
                "h_counted_roots": counted_h,
            });
            if counted_h != fix.expected_roots_h {
                eprintln!("error: residual count mismatch");
                return Ok(ExitCode::from(1));
            }
            emit_construction(json, "trace-diff", &fix.f, fix.expected_roots_f, counted, extra)
        }
    }
}

fn emit_construction(
    json: bool,
    family: &str,
    poly: &Polynomial,
    expected: u64,
    counted: u64,
    extra: serde_json::Value,
) -> footprint::Result<ExitCode> {
    let ok = expected == counted;
    if json {
        let mut envelope = json!({
            "family": family,
            "polynomial": poly.to_string(),
            "expected_roots": expected,
            "counted_roots": counted,
            "verified": ok,
        });
        if let (Some(obj), Some(extra)) = (envelope.as_object_mut(), extra.as_object()) {
            for (k, v) in extra {
                obj.insert(k.clone(), v.clone());
            }
        }
        println!("{}", serde_json::to_string_pretty(&envelope).expect("valid json"));
    } else {
        println!("{} = {}", family, poly);
        println!("roots: expected {}, counted {}", expected, counted);
        println!("verified: {}", ok);
    }
    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
