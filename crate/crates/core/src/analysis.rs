//! Footprint-bound analysis and classification of bound-attaining
//! polynomials.
//!
//! The pipeline implemented here:
//!
//! 1. reduce the input modulo the grid's vanishing polynomials (same roots,
//!    per-variable degrees below the grid sizes);
//! 2. split off linear factors `X_l - a` that vanish on whole grid slices,
//!    leaving a residual with no such factors;
//! 3. compare the exact root count against the footprint bound `D(lm)` and
//!    against `Omega`, the maximal `D`-value over the support;
//! 4. classify: a constant residual means the polynomial is a constant times
//!    a product of linear factors (which always attains the bound); a
//!    non-constant residual that still attains the bound is the interesting
//!    nontrivial case.
//!
//! "For any monomial ordering" questions (which support monomials can lead)
//! are decided exactly by strictly positive rational weight vectors; see
//! [`possible_leading_monomials`]. Any concrete ordering's leading monomial
//! is always reproduced by some positive weight vector on a finite support,
//! so the weight test is the complete finite reduction of the quantifier.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::feasibility::positive_weight_separates;
use crate::field::FieldElement;
use crate::grid::Grid;
use crate::monomial::{monomial_gcd, Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Verdict of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// A nonzero constant times a product of linear factors `X_l - a`;
    /// attains the footprint bound by construction.
    TrivialForm,
    /// Attains the bound with a non-constant residual.
    NontrivialAttaining,
    /// Root count below the bound.
    NotAttaining,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Classification::TrivialForm => "TrivialForm",
            Classification::NontrivialAttaining => "NontrivialAttaining",
            Classification::NotAttaining => "NotAttaining",
        };
        write!(f, "{}", name)
    }
}

/// Full analysis record produced by [`classify`].
///
/// `omega` and `max_d_monomials` describe the linear-factor-free residual
/// over the shrunken grid (the setting in which the necessary conditions
/// apply); `lm`, `bound` and `root_count` describe the reduced input over the
/// original grid.
#[derive(Debug, Clone)]
pub struct FootprintReport {
    pub order_used: MonomialOrder,
    pub lm: Monomial,
    pub bound: u64,
    pub omega: u64,
    pub max_d_monomials: Vec<Monomial>,
    pub root_count: u64,
    pub attains_bound: bool,
    pub ordering_invariant: bool,
    pub extracted_subsets: Vec<Vec<FieldElement>>,
    pub residual: Polynomial,
    pub classification: Classification,
}

impl FootprintReport {
    /// Stable JSON form: monomials as exponent arrays, field elements and
    /// polynomials in their text syntax, the ordering as its spec string.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "order_used": self.order_used.to_string(),
            "lm": self.lm.exponents(),
            "bound": self.bound,
            "omega": self.omega,
            "max_d_monomials": self.max_d_monomials.iter()
                .map(|m| m.exponents().to_vec())
                .collect::<Vec<_>>(),
            "root_count": self.root_count,
            "attains_bound": self.attains_bound,
            "ordering_invariant": self.ordering_invariant,
            "extracted_subsets": self.extracted_subsets.iter()
                .map(|s| s.iter().map(|a| a.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "residual": self.residual.to_string(),
            "classification": self.classification.to_string(),
        })
    }
}

/// Outcome of [`split_check`]: both sides of the factor-splitting
/// equivalence, which are always equal.
#[derive(Debug, Clone)]
pub struct SplitCheck {
    pub f_attains: bool,
    pub residual_attains: bool,
    pub extracted_subsets: Vec<Vec<FieldElement>>,
    pub residual: Polynomial,
    pub residual_grid: Grid,
}

/// Report of [`check_necessary_conditions`].
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub omega: u64,
    pub max_d_monomials: Vec<Monomial>,
    pub possible_lms: Vec<Monomial>,
    /// Every possible leading monomial lies among the max-`D` monomials.
    pub cond1: bool,
    /// The max-`D` monomials have trivial gcd.
    pub cond2: bool,
    pub root_count: u64,
    pub attains_omega: bool,
    /// `attains_omega` implies both conditions; always true unless the
    /// implementation is broken.
    pub implication_holds: bool,
}

/// Report of [`check_irreducible_corollary`].
#[derive(Debug, Clone)]
pub struct IrreducibleReport {
    pub root_count: u64,
    /// At least two support monomials have `D`-value equal to the root count.
    pub cond1: bool,
    /// Some support monomial has `D`-value strictly above the root count.
    pub cond2: bool,
    pub holds: bool,
    /// Whether irreducibility was verified by exhaustive factor search
    /// rather than asserted by the caller.
    pub verified_by_search: bool,
}

fn require_nonzero(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}

fn require_reduced(f: &Polynomial, grid: &Grid) -> Result<()> {
    let degrees = f.degrees().ok_or(Error::ZeroPolynomial)?;
    for (var, (deg, size)) in degrees.iter().zip(grid.sizes()).enumerate() {
        if *deg as u64 >= size {
            return Err(Error::NotReduced { var, degree: *deg, size });
        }
    }
    Ok(())
}

fn check_context(f: &Polynomial, grid: &Grid) -> Result<()> {
    if f.field() != grid.field() || f.num_vars() != grid.num_vars() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// `D(lm(f))`, the footprint bound on the number of grid roots of `f`.
///
/// Requires the leading monomial's degrees to be below the grid sizes;
/// reduce modulo the grid first if they are not.
pub fn footprint_bound(f: &Polynomial, grid: &Grid, ord: &MonomialOrder) -> Result<u64> {
    check_context(f, grid)?;
    require_nonzero(f)?;
    let lm = f.leading_monomial(ord)?;
    for (var, (&e, s)) in lm.exponents().iter().zip(grid.sizes()).enumerate() {
        if e as u64 >= s {
            return Err(Error::LeadingDegreeTooLarge { var, degree: e, size: s });
        }
    }
    grid.footprint_d(&lm)
}

/// `Omega`, the maximal `D`-value over the support, together with every
/// support monomial achieving it (ascending storage order).
pub fn omega_and_max_monomials(
    h: &Polynomial,
    grid: &Grid,
) -> Result<(u64, Vec<Monomial>)> {
    check_context(h, grid)?;
    require_nonzero(h)?;
    let mut omega = 0;
    let mut witnesses: Vec<Monomial> = Vec::new();
    for m in h.support() {
        let d = grid.footprint_d(m)?;
        if witnesses.is_empty() || d > omega {
            omega = d;
            witnesses = vec![m.clone()];
        } else if d == omega {
            witnesses.push(m.clone());
        }
    }
    Ok((omega, witnesses))
}

/// Splits off all linear factors visible over the grid.
///
/// Returns the subsets `S'_l = { a in S_l : f vanishes on the whole slice
/// X_l = a }` and the exact quotient of `f` by the product of the matching
/// `X_l - a`. For a reduced `f` the slice condition is equivalent to the
/// substituted polynomial `f(X_l := a)` being identically zero: it has
/// degrees below the remaining grid sizes, and a nonzero polynomial of that
/// shape cannot vanish on the whole remaining grid, since its footprint
/// bound is strictly below the point count.
pub fn extract_linear_factors(
    f: &Polynomial,
    grid: &Grid,
) -> Result<(Vec<Vec<FieldElement>>, Polynomial)> {
    check_context(f, grid)?;
    require_nonzero(f)?;
    require_reduced(f, grid)?;
    let mut subsets: Vec<Vec<FieldElement>> = Vec::with_capacity(grid.num_vars());
    for var in 0..grid.num_vars() {
        let mut found = Vec::new();
        for a in grid.subset(var) {
            if f.substitute_variable(var, a)?.is_zero() {
                found.push(a.clone());
            }
        }
        subsets.push(found);
    }
    let mut residual = f.clone();
    let ord = MonomialOrder::default_lex(f.num_vars());
    for (var, subset) in subsets.iter().enumerate() {
        for a in subset {
            let factor = Polynomial::linear_factor(f.field(), f.num_vars(), var, a)?;
            let (mut quotients, remainder) = residual.divide(&[factor], &ord)?;
            assert!(
                remainder.is_zero(),
                "X{}-{} must divide exactly; nonzero remainder signals a bug",
                var + 1,
                a
            );
            residual = quotients.pop().expect("one divisor");
        }
    }
    Ok((subsets, residual))
}

/// Checks the factor-splitting equivalence: `f` attains its footprint bound
/// over the grid if and only if the linear-factor-free residual attains its
/// bound over the grid of non-removed values.
pub fn split_check(f: &Polynomial, grid: &Grid, ord: &MonomialOrder) -> Result<SplitCheck> {
    check_context(f, grid)?;
    require_nonzero(f)?;
    require_reduced(f, grid)?;
    let (subsets, residual) = extract_linear_factors(f, grid)?;
    let residual_grid = grid.subtract_subsets(&subsets)?;
    let f_attains = grid.count_roots(f)? == footprint_bound(f, grid, ord)?;
    let residual_attains =
        residual_grid.count_roots(&residual)? == footprint_bound(&residual, &residual_grid, ord)?;
    assert_eq!(
        f_attains, residual_attains,
        "splitting off linear factors must preserve bound attainment"
    );
    Ok(SplitCheck {
        f_attains,
        residual_attains,
        extracted_subsets: subsets,
        residual,
        residual_grid,
    })
}

/// The support monomials that are the leading monomial under at least one
/// monomial ordering, decided by exact rational weight separation.
pub fn possible_leading_monomials(f: &Polynomial) -> Result<Vec<Monomial>> {
    require_nonzero(f)?;
    let support: Vec<&Monomial> = f.support().collect();
    let mut result = Vec::new();
    for (i, m) in support.iter().enumerate() {
        let diffs: Vec<Vec<i64>> = support
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, n)| {
                m.exponents()
                    .iter()
                    .zip(n.exponents())
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect()
            })
            .collect();
        if positive_weight_separates(&diffs, f.num_vars()) {
            result.push((*m).clone());
        }
    }
    Ok(result)
}

/// Returns the dominating support monomial (divisible by every other one)
/// when it exists, which is exactly when the leading monomial does not
/// depend on the choice of ordering.
///
/// Decided by divisibility and cross-checked against the weight-vector
/// route: the two characterizations must agree.
pub fn is_monomial_ordering_invariant(f: &Polynomial) -> Result<Option<Monomial>> {
    require_nonzero(f)?;
    let mut max_exps = vec![0u32; f.num_vars()];
    for m in f.support() {
        for (e, &o) in max_exps.iter_mut().zip(m.exponents()) {
            *e = (*e).max(o);
        }
    }
    let candidate = Monomial::new(max_exps);
    let by_divisibility = if f.coefficient(&candidate).is_some() {
        Some(candidate)
    } else {
        None
    };
    let plm = possible_leading_monomials(f)?;
    let by_weights = if plm.len() == 1 { Some(plm[0].clone()) } else { None };
    assert_eq!(
        by_divisibility, by_weights,
        "divisibility and weight-vector invariance checks disagree"
    );
    Ok(by_divisibility)
}

/// Necessary conditions for a linear-factor-free non-constant polynomial to
/// reach `Omega` roots: every possible leading monomial must be a max-`D`
/// monomial, and the max-`D` monomials must have trivial gcd.
pub fn check_necessary_conditions(h: &Polynomial, grid: &Grid) -> Result<ConditionReport> {
    check_context(h, grid)?;
    require_nonzero(h)?;
    if h.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    require_reduced(h, grid)?;
    let (subsets, _) = extract_linear_factors(h, grid)?;
    if subsets.iter().any(|s| !s.is_empty()) {
        return Err(Error::HasLinearFactor);
    }
    let (omega, max_d_monomials) = omega_and_max_monomials(h, grid)?;
    let possible_lms = possible_leading_monomials(h)?;
    let max_set: BTreeSet<&Monomial> = max_d_monomials.iter().collect();
    let cond1 = possible_lms.iter().all(|m| max_set.contains(m));
    let cond2 = monomial_gcd(&max_d_monomials)?.is_unit();
    let root_count = grid.count_roots(h)?;
    let attains_omega = root_count == omega;
    let implication_holds = !attains_omega || (cond1 && cond2);
    Ok(ConditionReport {
        omega,
        max_d_monomials,
        possible_lms,
        cond1,
        cond2,
        root_count,
        attains_omega,
        implication_holds,
    })
}

/// Full classification of a nonzero polynomial over a grid.
///
/// Reduces modulo the grid first; the reduction has the same roots. Inputs
/// that vanish identically on the grid reduce to zero and are rejected,
/// since no leading monomial or bound is defined for them.
pub fn classify(f: &Polynomial, grid: &Grid, ord: &MonomialOrder) -> Result<FootprintReport> {
    check_context(f, grid)?;
    require_nonzero(f)?;
    if ord.num_vars() != f.num_vars() {
        return Err(Error::DimensionMismatch {
            left: ord.num_vars(),
            right: f.num_vars(),
        });
    }
    let reduced = f.reduce_mod_grid(grid)?;
    if reduced.is_zero() {
        return Err(Error::ReducesToZero);
    }
    let lm = reduced.leading_monomial(ord)?;
    let bound = grid.footprint_d(&lm)?;
    let root_count = grid.count_roots(&reduced)?;
    let attains_bound = root_count == bound;
    let (extracted_subsets, residual) = extract_linear_factors(&reduced, grid)?;
    let residual_grid = grid.subtract_subsets(&extracted_subsets)?;
    let (omega, max_d_monomials) = omega_and_max_monomials(&residual, &residual_grid)?;
    let ordering_invariant = is_monomial_ordering_invariant(&reduced)?.is_some();
    let classification = if residual.constant_value().is_some() {
        Classification::TrivialForm
    } else if attains_bound {
        Classification::NontrivialAttaining
    } else {
        Classification::NotAttaining
    };

    // A unique max-D monomial that leads under some ordering and is attained
    // forces the trivial form; anything else is a bug.
    let (_, own_max) = omega_and_max_monomials(&reduced, grid)?;
    if own_max.len() == 1 {
        let m = &own_max[0];
        let leads = possible_leading_monomials(&reduced)?.contains(m);
        if leads && root_count == grid.footprint_d(m)? {
            assert_eq!(
                classification,
                Classification::TrivialForm,
                "unique-max-D attainer must factor into linear factors"
            );
        }
    }

    Ok(FootprintReport {
        order_used: ord.clone(),
        lm,
        bound,
        omega,
        max_d_monomials,
        root_count,
        attains_bound,
        ordering_invariant,
        extracted_subsets,
        residual,
        classification,
    })
}

/// Checks the irreducible-polynomial corollary on the full grid `F_q^m`:
/// with `s` the exact root count, either at least two support monomials have
/// `D`-value `s`, or some support monomial has `D`-value above `s`.
///
/// Irreducibility is asserted by the caller unless the candidate space is
/// small enough for an exhaustive factor search (characteristic at most 3,
/// total degree at most 3).
pub fn check_irreducible_corollary(
    f: &Polynomial,
    grid: &Grid,
    irreducible_asserted: bool,
) -> Result<IrreducibleReport> {
    check_context(f, grid)?;
    require_nonzero(f)?;
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !grid.is_full() {
        return Err(Error::NotFullGrid);
    }
    require_reduced(f, grid)?;
    if is_scaled_linear_factor(f) {
        return Err(Error::HasLinearFactor);
    }
    let mut verified_by_search = false;
    if !irreducible_asserted {
        let q = f.field().order();
        let t = f.total_degree().expect("nonzero");
        if q > 3 || t > 3 {
            return Err(Error::IrreducibilityUnverified(format!(
                "exhaustive factor search only runs for field order <= 3 and \
                 total degree <= 3 (got order {}, degree {})",
                q, t
            )));
        }
        if let Some(factor) = find_nontrivial_factor(f)? {
            return Err(Error::NotIrreducible { factor: factor.to_string() });
        }
        verified_by_search = true;
    }
    let root_count = grid.count_roots(f)?;
    let mut at_count = 0usize;
    let mut above = false;
    for m in f.support() {
        let d = grid.footprint_d(m)?;
        if d == root_count {
            at_count += 1;
        } else if d > root_count {
            above = true;
        }
    }
    let cond1 = at_count >= 2;
    let cond2 = above;
    Ok(IrreducibleReport {
        root_count,
        cond1,
        cond2,
        holds: cond1 || cond2,
        verified_by_search,
    })
}

/// Whether `f` is `k * (X_l - a)` for a single variable and constant.
fn is_scaled_linear_factor(f: &Polynomial) -> bool {
    let non_unit: Vec<&Monomial> = f.support().filter(|m| !m.is_unit()).collect();
    if non_unit.len() != 1 || f.num_terms() > 2 {
        return false;
    }
    non_unit[0].total_degree() == 1
}

/// Exhaustive search for a factor of positive degree. Candidates are capped
/// by the factor degree bounds: total degree below `f`'s and per-variable
/// degrees at most `f`'s.
fn find_nontrivial_factor(f: &Polynomial) -> Result<Option<Polynomial>> {
    let field = f.field();
    let q = field.order();
    let degs = f.degrees().expect("nonzero");
    let t = f.total_degree().expect("nonzero");
    let monomials = monomials_within(&degs, t - 1);
    let candidates = (q as u128).checked_pow(monomials.len() as u32);
    match candidates {
        Some(c) if c <= 1 << 22 => {}
        _ => {
            return Err(Error::IrreducibilityUnverified(format!(
                "factor candidate space exceeds 2^22 ({} monomials over order {})",
                monomials.len(),
                q
            )))
        }
    }
    let elements = field.elements();
    let ord = MonomialOrder::default_lex(f.num_vars());
    let mut indices = vec![0u64; monomials.len()];
    loop {
        let terms: Vec<(Monomial, FieldElement)> = monomials
            .iter()
            .zip(&indices)
            .map(|(m, &i)| (m.clone(), elements[i as usize].clone()))
            .collect();
        let g = Polynomial::from_terms(field, f.num_vars(), terms)?;
        if !g.is_constant() && is_lex_monic(&g, &ord) {
            let (_, remainder) = f.divide(std::slice::from_ref(&g), &ord)?;
            if remainder.is_zero() {
                return Ok(Some(g));
            }
        }
        if !advance(&mut indices, q) {
            return Ok(None);
        }
    }
}

fn is_lex_monic(g: &Polynomial, ord: &MonomialOrder) -> bool {
    g.leading_term(ord)
        .map(|(_, c)| c.is_one())
        .unwrap_or(false)
}

/// All monomials with total degree at most `max_total` and per-variable
/// exponents bounded by `degs`.
fn monomials_within(degs: &[u32], max_total: u64) -> Vec<Monomial> {
    fn rec(
        degs: &[u32],
        max_total: u64,
        var: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if var == degs.len() {
            out.push(Monomial::new(current.clone()));
            return;
        }
        let used: u64 = current.iter().map(|&e| e as u64).sum();
        let cap = (max_total - used).min(degs[var] as u64) as u32;
        for e in 0..=cap {
            current.push(e);
            rec(degs, max_total, var + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(degs, max_total, 0, &mut Vec::new(), &mut out);
    out
}

fn advance(indices: &mut [u64], base: u64) -> bool {
    for i in indices.iter_mut() {
        *i += 1;
        if *i < base {
            return true;
        }
        *i = 0;
    }
    false
}

/// The bound `t * s^{m-1}` on the roots of a polynomial of total degree
/// `t < s` over a square grid with factors of size `s`.
pub fn schwartz_zippel_bound(f: &Polynomial, grid: &Grid) -> Result<u64> {
    check_context(f, grid)?;
    require_nonzero(f)?;
    let mut sizes = grid.sizes();
    let s = sizes.next().expect("grids have at least one variable");
    if sizes.any(|t| t != s) {
        return Err(Error::NotSquareGrid);
    }
    let t = f.total_degree().expect("nonzero");
    if t >= s {
        return Err(Error::DegreeTooLarge { total_degree: t, size: s });
    }
    Ok(t * s.pow(grid.num_vars() as u32 - 1))
}
