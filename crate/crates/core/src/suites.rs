//! Named verification suites.
//!
//! Each suite replays one of the library's structural guarantees against an
//! independent oracle (direct enumeration, division remainders, closed
//! formulas) over exhaustive desk-scale corpora plus seeded random inputs.
//! The CLI `verify` command and the acceptance tests both run these.
//!
//! Suites never panic on a mathematical violation; they collect violations
//! as serialized JSON artifacts so a failure is reproducible from the
//! report alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::analysis::{
    check_necessary_conditions, classify, extract_linear_factors, schwartz_zippel_bound,
    split_check,
};
use crate::construct::{reduced_monomials, trivial_polynomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::grid::Grid;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

pub const SUITE_NAMES: [&str; 8] = [
    "footprint-bound",
    "bi-implication",
    "split-equivalence",
    "procond",
    "thetop-corolla",
    "lemlimlom",
    "schwartz-zippel",
    "field-axioms",
];

/// Knobs shared by every suite. `trials` falls back to a per-suite default;
/// `field` rebases the corpus-driven suites onto one field.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub field: Option<String>,
    pub trials: Option<u64>,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> SuiteParams {
        SuiteParams { field: None, trials: None, seed: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: u64,
    pub violations: Vec<serde_json::Value>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            checks: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "checks": self.checks,
            "passed": self.passed(),
            "violations": self.violations,
            "notes": self.notes,
        })
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "footprint-bound" => footprint_bound_suite(params),
        "bi-implication" => bi_implication_suite(params),
        "split-equivalence" => split_equivalence_suite(params),
        "procond" => procond_suite(params),
        "thetop-corolla" => thetop_corolla_suite(params),
        "lemlimlom" => lemlimlom_suite(params),
        "schwartz-zippel" => schwartz_zippel_suite(params),
        "field-axioms" => field_axioms_suite(params),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

// --- corpora ---

/// Every nonzero polynomial over the grid's field with per-variable degrees
/// below the grid sizes and at most `max_terms` support monomials, all
/// nonzero coefficient combinations included.
pub fn exhaustive_reduced_corpus(grid: &Grid, max_terms: usize) -> Vec<Polynomial> {
    let field = grid.field();
    let monomials = reduced_monomials(grid);
    let nonzero: Vec<FieldElement> = field.elements().into_iter().skip(1).collect();
    let mut out = Vec::new();
    let mut support: Vec<usize> = Vec::new();
    fn choose(
        start: usize,
        monomials: &[Monomial],
        nonzero: &[FieldElement],
        field: &Field,
        support: &mut Vec<usize>,
        max_terms: usize,
        out: &mut Vec<Polynomial>,
    ) {
        if !support.is_empty() {
            // Every nonzero coefficient assignment on this support.
            let mut coeffs = vec![0usize; support.len()];
            loop {
                let terms: Vec<(Monomial, FieldElement)> = support
                    .iter()
                    .zip(&coeffs)
                    .map(|(&mi, &ci)| (monomials[mi].clone(), nonzero[ci].clone()))
                    .collect();
                out.push(
                    Polynomial::from_terms(field, monomials[0].num_vars(), terms)
                        .expect("canonical corpus term"),
                );
                let mut i = 0;
                loop {
                    if i == coeffs.len() {
                        break;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < nonzero.len() {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
                if i == coeffs.len() {
                    break;
                }
            }
        }
        if support.len() == max_terms {
            return;
        }
        for next in start..monomials.len() {
            support.push(next);
            choose(next + 1, monomials, nonzero, field, support, max_terms, out);
            support.pop();
        }
    }
    choose(0, &monomials, &nonzero, field, &mut support, max_terms, &mut out);
    out
}

/// A random nonzero reduced polynomial with at most `max_terms` terms.
pub fn random_reduced_poly(
    rng: &mut ChaCha8Rng,
    grid: &Grid,
    max_terms: usize,
) -> Polynomial {
    let field = grid.field();
    let q = field.order();
    let sizes: Vec<u64> = grid.sizes().collect();
    loop {
        let t = rng.random_range(1..=max_terms as u64);
        let mut terms = Vec::new();
        for _ in 0..t {
            let exps: Vec<u32> = sizes
                .iter()
                .map(|&s| rng.random_range(0..s) as u32)
                .collect();
            let coeff = field
                .element_from_index(rng.random_range(1..q))
                .expect("index in range");
            terms.push((Monomial::new(exps), coeff));
        }
        let f = Polynomial::from_terms(field, sizes.len(), terms).expect("same field");
        if !f.is_zero() {
            return f;
        }
    }
}

fn resolve_fields(params: &SuiteParams, default_specs: &[&str]) -> Result<Vec<Field>> {
    match &params.field {
        Some(spec) => Ok(vec![Field::parse(spec)?]),
        None => default_specs.iter().map(|s| Field::parse(s)).collect(),
    }
}

fn poly_artifact(f: &Polynomial, grid: &Grid, detail: serde_json::Value) -> serde_json::Value {
    json!({
        "field": f.field().spec_string(),
        "grid": grid.to_string(),
        "polynomial": f.to_string(),
        "detail": detail,
    })
}

/// Exhaustive corpus for small fields, random corpus otherwise.
fn corpus_for(
    field: &Field,
    grid: &Grid,
    rng: &mut ChaCha8Rng,
    random_trials: u64,
) -> (Vec<Polynomial>, bool) {
    if field.order() <= 3 {
        (exhaustive_reduced_corpus(grid, 4), true)
    } else {
        let polys = (0..random_trials)
            .map(|_| random_reduced_poly(rng, grid, 4))
            .collect();
        (polys, false)
    }
}

// --- suites ---

/// Root counts never exceed `D(lm)` under any built-in ordering.
fn footprint_bound_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("footprint-bound", params.seed);
    let trials = params.trials.unwrap_or(10_000);
    let fields = resolve_fields(params, &["2", "3", "2^2"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let orders = MonomialOrder::builtin_orderings(2);
    for field in &fields {
        let grid = Grid::full(field, 2)?;
        let (corpus, exhaustive) = corpus_for(field, &grid, &mut rng, trials / 2);
        report.notes.push(format!(
            "{}: {} polynomials ({})",
            field.spec_string(),
            corpus.len(),
            if exhaustive { "exhaustive" } else { "random" }
        ));
        for f in &corpus {
            let roots = grid.count_roots(f)?;
            for ord in &orders {
                let bound = grid.footprint_d(&f.leading_monomial(ord)?)?;
                report.checks += 1;
                if roots > bound {
                    report.violations.push(poly_artifact(
                        f,
                        &grid,
                        json!({ "order": ord.to_string(), "roots": roots, "bound": bound }),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// `X_l - a` divides `f` (division oracle) exactly when every grid point
/// with `X_l = a` is a root (evaluation oracle); the extraction subsets must
/// agree with both.
fn bi_implication_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("bi-implication", params.seed);
    let fields = resolve_fields(params, &["2", "3"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let ord = MonomialOrder::default_lex(2);
    for field in &fields {
        let grid = Grid::full(field, 2)?;
        let (corpus, exhaustive) = corpus_for(field, &grid, &mut rng, params.trials.unwrap_or(2_000));
        report.notes.push(format!(
            "{}: {} polynomials ({})",
            field.spec_string(),
            corpus.len(),
            if exhaustive { "exhaustive" } else { "random" }
        ));
        for f in &corpus {
            let (subsets, _) = extract_linear_factors(f, &grid)?;
            for var in 0..2 {
                for a in grid.subset(var) {
                    // Divisibility via the division algorithm.
                    let factor = Polynomial::linear_factor(field, 2, var, a)?;
                    let (_, remainder) = f.divide(&[factor], &ord)?;
                    let divides = remainder.is_zero();
                    // All-roots via direct evaluation.
                    let all_roots = grid
                        .points()
                        .filter(|pt| pt[var] == *a)
                        .all(|pt| f.evaluate(&pt).expect("point in field").is_zero());
                    let extracted = subsets[var].contains(a);
                    report.checks += 1;
                    if divides != all_roots || extracted != divides {
                        report.violations.push(poly_artifact(
                            f,
                            &grid,
                            json!({
                                "var": var + 1,
                                "value": a.to_string(),
                                "divides": divides,
                                "all_roots": all_roots,
                                "extracted": extracted,
                            }),
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Splitting off a trivial factor preserves bound attainment: `G*H` attains
/// over the full grid exactly when `H` attains over the non-removed grid.
fn split_equivalence_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("split-equivalence", params.seed);
    let trials = params.trials.unwrap_or(500);
    let fields = resolve_fields(params, &["2", "3", "2^2"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let orders = MonomialOrder::builtin_orderings(2);
    for trial in 0..trials {
        let field = &fields[(trial % fields.len() as u64) as usize];
        let elements = field.elements();
        let q = field.order();
        // Random grid factors of size >= 2 so a proper split exists.
        let mut subsets = Vec::new();
        for _ in 0..2 {
            let size = rng.random_range(2..=q);
            let mut chosen: Vec<FieldElement> = Vec::new();
            while (chosen.len() as u64) < size {
                let a = &elements[rng.random_range(0..q) as usize];
                if !chosen.contains(a) {
                    chosen.push(a.clone());
                }
            }
            subsets.push(chosen);
        }
        let grid = Grid::new(field, subsets)?;
        // Random proper subsets to remove.
        let primes: Vec<Vec<FieldElement>> = grid
            .subsets()
            .iter()
            .map(|subset| {
                let keep = rng.random_range(1..subset.len() as u64);
                subset[..(subset.len() - keep as usize)].to_vec()
            })
            .collect();
        let constant = field
            .element_from_index(rng.random_range(1..q))
            .expect("index in range");
        let g = trivial_polynomial(&grid, &primes, &constant)?;
        let t_grid = grid.subtract_subsets(&primes)?;
        // Residual factor with no linear factors over the leftover grid.
        let h = loop {
            let candidate = random_reduced_poly(&mut rng, &t_grid, 4);
            let (subs, _) = extract_linear_factors(&candidate, &t_grid)?;
            if subs.iter().all(|s| s.is_empty()) {
                break candidate;
            }
        };
        let f = g.mul(&h)?;
        for ord in &orders {
            let f_attains =
                grid.count_roots(&f)? == grid.footprint_d(&f.leading_monomial(ord)?)?;
            let h_attains =
                t_grid.count_roots(&h)? == t_grid.footprint_d(&h.leading_monomial(ord)?)?;
            report.checks += 1;
            if f_attains != h_attains {
                report.violations.push(poly_artifact(
                    &f,
                    &grid,
                    json!({
                        "order": ord.to_string(),
                        "residual": h.to_string(),
                        "residual_grid": t_grid.to_string(),
                        "f_attains": f_attains,
                        "h_attains": h_attains,
                    }),
                ));
            }
            // Cross-check the library's own splitting path.
            let check = split_check(&f, &grid, ord)?;
            if check.f_attains != f_attains || check.residual_attains != h_attains {
                report.violations.push(poly_artifact(
                    &f,
                    &grid,
                    json!({ "order": ord.to_string(), "split_check_disagrees": true }),
                ));
            }
        }
    }
    Ok(report)
}

/// Linear-factor-free non-constant polynomials reaching `Omega` roots must
/// satisfy both necessary conditions.
fn procond_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("procond", params.seed);
    let fields = resolve_fields(params, &["2", "3"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for field in &fields {
        let grid = Grid::full(field, 2)?;
        let (corpus, _) = corpus_for(field, &grid, &mut rng, params.trials.unwrap_or(2_000));
        for h in &corpus {
            if h.is_constant() {
                continue;
            }
            let (subsets, _) = extract_linear_factors(h, &grid)?;
            if subsets.iter().any(|s| !s.is_empty()) {
                continue;
            }
            let cond = check_necessary_conditions(h, &grid)?;
            report.checks += 1;
            if !cond.implication_holds {
                report.violations.push(poly_artifact(
                    h,
                    &grid,
                    json!({
                        "omega": cond.omega,
                        "roots": cond.root_count,
                        "cond1": cond.cond1,
                        "cond2": cond.cond2,
                    }),
                ));
            }
        }
    }
    Ok(report)
}

/// Ordering-invariant bound attainers factor completely into linear factors,
/// and their classification is identical under every built-in ordering.
fn thetop_corolla_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("thetop-corolla", params.seed);
    let fields = resolve_fields(params, &["2", "3"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let orders = MonomialOrder::builtin_orderings(2);
    for field in &fields {
        let grid = Grid::full(field, 2)?;
        let (corpus, _) = corpus_for(field, &grid, &mut rng, params.trials.unwrap_or(2_000));
        for f in &corpus {
            let dominating = match crate::analysis::is_monomial_ordering_invariant(f)? {
                Some(m) => m,
                None => continue,
            };
            report.checks += 1;
            let bound = grid.footprint_d(&dominating)?;
            let roots = grid.count_roots(f)?;
            if roots == bound {
                let (_, residual) = extract_linear_factors(f, &grid)?;
                if residual.constant_value().is_none() {
                    report.violations.push(poly_artifact(
                        f,
                        &grid,
                        json!({ "roots": roots, "bound": bound, "residual": residual.to_string() }),
                    ));
                }
            }
            // Same report fields under every ordering.
            let reference = classify(f, &grid, &orders[0])?;
            for ord in &orders[1..] {
                let other = classify(f, &grid, ord)?;
                if other.classification != reference.classification
                    || other.bound != reference.bound
                    || other.root_count != reference.root_count
                    || other.lm != reference.lm
                {
                    report.violations.push(poly_artifact(
                        f,
                        &grid,
                        json!({
                            "order": ord.to_string(),
                            "classification": other.classification.to_string(),
                            "reference": reference.classification.to_string(),
                        }),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// The two combinatorial inequalities of the footprint map: strict
/// monotonicity along divisibility, and the gap `D(M) > s_m * D'(M)` when
/// the last variable occurs.
fn lemlimlom_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemlimlom", params.seed);
    let field = Field::prime(5)?;
    let elements = field.elements();
    for m in 1..=3usize {
        let mut sizes = vec![1u64; m];
        loop {
            let subsets: Vec<Vec<FieldElement>> = sizes
                .iter()
                .map(|&s| elements[..s as usize].to_vec())
                .collect();
            let grid = Grid::new(&field, subsets)?;
            let monomials = reduced_monomials(&grid);
            for a in &monomials {
                if a.exponent(m - 1) >= 1 {
                    report.checks += 1;
                    let d = grid.footprint_d(a)?;
                    let dp = grid.footprint_d_prime(a)?;
                    if d <= sizes[m - 1] * dp {
                        report.violations.push(json!({
                            "sizes": sizes,
                            "monomial": a.to_string(),
                            "d": d,
                            "s_m_times_d_prime": sizes[m - 1] * dp,
                        }));
                    }
                }
                for b in &monomials {
                    if a != b && a.divides(b)? {
                        report.checks += 1;
                        if grid.footprint_d(a)? >= grid.footprint_d(b)? {
                            report.violations.push(json!({
                                "sizes": sizes,
                                "divisor": a.to_string(),
                                "multiple": b.to_string(),
                            }));
                        }
                    }
                }
            }
            // Next size combination.
            let mut var = 0;
            loop {
                if var == m {
                    break;
                }
                sizes[var] += 1;
                if sizes[var] <= 5 {
                    break;
                }
                sizes[var] = 1;
                var += 1;
            }
            if var == m {
                break;
            }
        }
    }
    Ok(report)
}

/// Total-degree bound `t * s^{m-1}` on square grids, checked on the same
/// corpora as the footprint bound.
fn schwartz_zippel_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("schwartz-zippel", params.seed);
    let trials = params.trials.unwrap_or(10_000);
    let fields = resolve_fields(params, &["2", "3", "2^2"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for field in &fields {
        let grid = Grid::full(field, 2)?;
        let s = field.order();
        let (corpus, _) = corpus_for(field, &grid, &mut rng, trials / 2);
        for f in &corpus {
            let t = f.total_degree().expect("corpus is nonzero");
            if t >= s {
                continue;
            }
            let bound = schwartz_zippel_bound(f, &grid)?;
            report.checks += 1;
            if grid.count_roots(f)? > bound {
                report.violations.push(poly_artifact(
                    f,
                    &grid,
                    json!({ "total_degree": t, "bound": bound }),
                ));
            }
        }
    }
    Ok(report)
}

/// Field arithmetic sanity: ring axioms, unit group order, trace fibers and
/// linearity, norm multiplicativity, and the `0^0 = 1` convention.
fn field_axioms_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("field-axioms", params.seed);
    let fields = resolve_fields(params, &["2", "3", "2^2", "5", "7", "2^3", "3^2", "2^4"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for field in &fields {
        let q = field.order();
        let elements = field.elements();
        let mut triple_check = |a: &FieldElement, b: &FieldElement, c: &FieldElement| {
            report.checks += 1;
            let assoc_add = a.add(b).unwrap().add(c).unwrap() == a.add(&b.add(c).unwrap()).unwrap();
            let assoc_mul = a.mul(b).unwrap().mul(c).unwrap() == a.mul(&b.mul(c).unwrap()).unwrap();
            let comm = a.add(b).unwrap() == b.add(a).unwrap() && a.mul(b).unwrap() == b.mul(a).unwrap();
            let dist = a.mul(&b.add(c).unwrap()).unwrap()
                == a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
            if !(assoc_add && assoc_mul && comm && dist) {
                report.violations.push(json!({
                    "field": field.spec_string(),
                    "triple": [a.to_string(), b.to_string(), c.to_string()],
                }));
            }
        };
        if q <= 9 {
            for a in &elements {
                for b in &elements {
                    for c in &elements {
                        triple_check(a, b, c);
                    }
                }
            }
        } else {
            for _ in 0..params.trials.unwrap_or(500) {
                let a = &elements[rng.random_range(0..q) as usize];
                let b = &elements[rng.random_range(0..q) as usize];
                let c = &elements[rng.random_range(0..q) as usize];
                triple_check(a, b, c);
            }
        }
        // Unit group order and the 0^0 convention.
        if q <= 1 << 12 {
            for a in &elements {
                report.checks += 1;
                if !a.is_zero() && a.pow(q - 1) != field.one() {
                    report.violations.push(json!({
                        "field": field.spec_string(),
                        "element": a.to_string(),
                        "check": "a^(q-1) = 1",
                    }));
                }
            }
        }
        report.checks += 1;
        if field.zero().pow(0) != field.one() {
            report
                .violations
                .push(json!({ "field": field.spec_string(), "check": "0^0 = 1" }));
        }
        // Trace fibers and norm multiplicativity for quadratic extensions.
        let k = field.extension_degree();
        if k % 2 == 0 {
            let d = k / 2;
            let q_sub = field.characteristic().pow(d);
            let mut fiber_counts = std::collections::HashMap::new();
            for a in &elements {
                let t = a.trace_to_subfield(d)?;
                *fiber_counts.entry(t.index()).or_insert(0u64) += 1;
            }
            report.checks += 1;
            if fiber_counts.len() as u64 != q_sub
                || fiber_counts.values().any(|&c| c != q_sub)
            {
                report.violations.push(json!({
                    "field": field.spec_string(),
                    "check": "trace fibers have subfield size",
                }));
            }
            if q <= 81 {
                for a in &elements {
                    for b in &elements {
                        report.checks += 1;
                        let lhs = a.mul(b)?.norm_to_subfield(d)?;
                        let rhs = a.norm_to_subfield(d)?.mul(&b.norm_to_subfield(d)?)?;
                        let tr_lhs = a.add(b)?.trace_to_subfield(d)?;
                        let tr_rhs = a.trace_to_subfield(d)?.add(&b.trace_to_subfield(d)?)?;
                        if lhs != rhs || tr_lhs != tr_rhs {
                            report.violations.push(json!({
                                "field": field.spec_string(),
                                "pair": [a.to_string(), b.to_string()],
                                "check": "norm multiplicative, trace additive",
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes_are_the_expected_ones() {
        let f2 = Field::prime(2).unwrap();
        let g2 = Grid::full(&f2, 2).unwrap();
        // 4 monomials, coefficients forced to 1: all 15 nonzero subsets.
        assert_eq!(exhaustive_reduced_corpus(&g2, 4).len(), 15);
        let f3 = Field::prime(3).unwrap();
        let g3 = Grid::full(&f3, 2).unwrap();
        // sum_{k=1..4} C(9,k) * 2^k = 18 + 144 + 672 + 2016.
        assert_eq!(exhaustive_reduced_corpus(&g3, 4).len(), 2850);
    }

    #[test]
    fn all_suites_pass_with_small_budgets() {
        for name in SUITE_NAMES {
            let params = SuiteParams {
                field: None,
                trials: Some(60),
                seed: 7,
            };
            let report = run_suite(name, &params).unwrap();
            assert!(
                report.passed(),
                "suite {} reported violations: {:?}",
                name,
                report.violations
            );
            assert!(report.checks > 0, "suite {} ran no checks", name);
        }
        assert!(matches!(
            run_suite("nope", &SuiteParams::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn suite_reports_are_seed_stable() {
        let params = SuiteParams { field: None, trials: Some(30), seed: 42 };
        let a = run_suite("split-equivalence", &params).unwrap();
        let b = run_suite("split-equivalence", &params).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn field_override_rebases_suite() {
        let params = SuiteParams {
            field: Some("3".into()),
            trials: Some(10),
            seed: 3,
        };
        let report = run_suite("bi-implication", &params).unwrap();
        assert!(report.passed());
        assert_eq!(report.notes.len(), 1);
        assert!(report.notes[0].starts_with("3:"));
    }
}
