//! Generators for the extremal polynomial families and a desk-scale search
//! for bound-attaining polynomials.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{classify, FootprintReport};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::grid::Grid;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Exhaustive-search cap on the candidate space of [`search_attaining`].
pub const EXHAUSTIVE_CAP: u64 = 1 << 22;

/// Expands `k * prod_l prod_{a in S'_l} (X_l - a)`, the canonical family of
/// bound attainers. The result has exactly `prod (s_l - |S'_l|)` non-roots in
/// the grid.
pub fn trivial_polynomial(
    grid: &Grid,
    primes: &[Vec<FieldElement>],
    constant: &FieldElement,
) -> Result<Polynomial> {
    if constant.field() != grid.field() {
        return Err(Error::ContextMismatch);
    }
    if constant.is_zero() {
        return Err(Error::ZeroConstant);
    }
    if primes.len() != grid.num_vars() {
        return Err(Error::DimensionMismatch {
            left: primes.len(),
            right: grid.num_vars(),
        });
    }
    for (var, (prime, subset)) in primes.iter().zip(grid.subsets()).enumerate() {
        let available: BTreeSet<u64> = subset.iter().map(|a| a.index()).collect();
        let mut seen = BTreeSet::new();
        for a in prime {
            if a.field() != grid.field() || !available.contains(&a.index()) || !seen.insert(a.index())
            {
                return Err(Error::NotASubset { var });
            }
        }
    }
    let field = grid.field();
    let m = grid.num_vars();
    let mut acc = Polynomial::constant(field, m, constant)?;
    for (var, prime) in primes.iter().enumerate() {
        for a in prime {
            acc = acc.mul(&Polynomial::linear_factor(field, m, var, a)?)?;
        }
    }
    Ok(acc)
}

/// The Hermitian fixture: `X1^{q+1} - X2^q - X2` over `F_{q^2}`, which has
/// exactly `q^3` roots on the full grid and attains `D(X2^q)` once `X2^q`
/// leads (lex with X2 before X1).
#[derive(Debug, Clone)]
pub struct HermitianFixture {
    pub q: u64,
    pub field: Field,
    pub grid: Grid,
    pub poly: Polynomial,
    pub expected_roots: u64,
    /// An ordering under which the bound is attained.
    pub order: MonomialOrder,
}

pub fn hermitian_polynomial(q: u64) -> Result<HermitianFixture> {
    let (p, d) = prime_power(q)?;
    let field = Field::extension(p, 2 * d)?;
    let grid = Grid::full(&field, 2)?;
    let one = field.one();
    let x1_norm = Polynomial::term(&field, 2, Monomial::new(vec![(q + 1) as u32, 0]), one.clone())?;
    let x2_q = Polynomial::term(&field, 2, Monomial::new(vec![0, q as u32]), one.clone())?;
    let x2 = Polynomial::term(&field, 2, Monomial::new(vec![0, 1]), one)?;
    let poly = x1_norm.sub(&x2_q)?.sub(&x2)?;
    Ok(HermitianFixture {
        q,
        field,
        grid,
        poly,
        expected_roots: q * q * q,
        order: MonomialOrder::lex(vec![1, 0])?,
    })
}

/// The trace-difference fixture over `F_{q^2}`:
/// `G = prod_{Tr(a)=0}(X1-a) * prod_{Tr(a)=0}(X2-a)` and
/// `H = Tr(X1) - Tr(X2) = X1^q - X2^q + X1 - X2`, with `F = G*H` attaining
/// the footprint bound with `3q^3 - 2q^2` roots and `H` attaining it with
/// `q^3 - q^2` roots over the nonzero-trace grid.
#[derive(Debug, Clone)]
pub struct TraceDifferenceFixture {
    pub q: u64,
    pub field: Field,
    /// The full grid `F_{q^2} x F_{q^2}`.
    pub grid: Grid,
    /// The nonzero-trace grid `T x T`.
    pub residual_grid: Grid,
    pub g: Polynomial,
    pub h: Polynomial,
    pub f: Polynomial,
    pub expected_roots_f: u64,
    pub expected_roots_h: u64,
}

pub fn trace_difference_polynomial(q: u64) -> Result<TraceDifferenceFixture> {
    let (p, d) = prime_power(q)?;
    if q < 3 {
        // For q = 2 the product has degree 2q = q^2 in X1, so its leading
        // monomial is not below the grid size and the bound does not apply.
        return Err(Error::DegenerateCase(
            "trace-difference needs q >= 3: at q = 2 the leading degree 2q \
             equals the grid size q^2 = 4"
                .into(),
        ));
    }
    let field = Field::extension(p, 2 * d)?;
    let grid = Grid::full(&field, 2)?;
    let trace_zero: Vec<FieldElement> = field
        .elements()
        .into_iter()
        .filter(|a| {
            a.trace_to_subfield(d)
                .expect("d divides 2d")
                .is_zero()
        })
        .collect();
    let g = trivial_polynomial(
        &grid,
        &[trace_zero.clone(), trace_zero.clone()],
        &field.one(),
    )?;
    let one = field.one();
    let h = Polynomial::term(&field, 2, Monomial::new(vec![q as u32, 0]), one.clone())?
        .sub(&Polynomial::term(&field, 2, Monomial::new(vec![0, q as u32]), one.clone())?)?
        .add(&Polynomial::term(&field, 2, Monomial::new(vec![1, 0]), one.clone())?)?
        .sub(&Polynomial::term(&field, 2, Monomial::new(vec![0, 1]), one)?)?;
    let f = g.mul(&h)?;
    let residual_grid = grid.subtract_subsets(&[trace_zero.clone(), trace_zero])?;
    Ok(TraceDifferenceFixture {
        q,
        field,
        grid,
        residual_grid,
        g,
        h,
        f,
        expected_roots_f: 3 * q * q * q - 2 * q * q,
        expected_roots_h: q * q * q - q * q,
    })
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    // F_{q^2} must fit the order cap; rejecting early also keeps the trial
    // factorization below cheap.
    if q > 1 << 10 {
        return Err(Error::FieldTooLarge {
            order: (q as u128) * (q as u128),
            cap: crate::field::DEFAULT_ORDER_CAP,
        });
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::NotPrimePower(q));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1))
}

/// How [`search_attaining`] walks the candidate space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Exhaustive when the space fits under [`EXHAUSTIVE_CAP`], else sampled.
    Auto,
    /// Exhaustive or error.
    Exhaustive,
    /// Seeded random sampling of `budget` candidates.
    Sample,
}

/// Result of a search over monic reduced polynomials with a prescribed
/// leading monomial.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub hits: Vec<(Polynomial, FootprintReport)>,
    pub exhaustive: bool,
    pub candidates_examined: u64,
    pub candidate_space: u128,
    pub seed: u64,
}

/// Searches for polynomials with leading monomial `target_lm` (under `ord`,
/// with leading coefficient fixed to 1) whose root count attains the
/// footprint bound `D(target_lm)`. Candidates range over all coefficient
/// choices on the reduced monomials strictly below the target.
///
/// Deterministic: exhaustive enumeration is an odometer in a fixed order and
/// sampling is driven by the seed alone.
pub fn search_attaining(
    grid: &Grid,
    target_lm: &Monomial,
    ord: &MonomialOrder,
    mode: SearchMode,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome> {
    let field = grid.field().clone();
    let m = grid.num_vars();
    if target_lm.num_vars() != m || ord.num_vars() != m {
        return Err(Error::DimensionMismatch {
            left: target_lm.num_vars(),
            right: m,
        });
    }
    let bound = grid.footprint_d(target_lm)?; // validates exponents
    if budget == 0 {
        return Err(Error::BudgetExhausted);
    }
    // Monomials strictly below the target keep it leading whatever their
    // coefficients are.
    let below: Vec<Monomial> = reduced_monomials(grid)
        .into_iter()
        .filter(|mon| {
            ord.compare(mon, target_lm).expect("same arity") == std::cmp::Ordering::Less
        })
        .collect();
    let q = field.order();
    let candidate_space = (q as u128).saturating_pow(below.len() as u32);
    let exhaustive = match mode {
        SearchMode::Exhaustive => {
            if candidate_space > EXHAUSTIVE_CAP as u128 {
                return Err(Error::SearchSpaceTooLarge {
                    candidates: candidate_space,
                    cap: EXHAUSTIVE_CAP,
                });
            }
            true
        }
        SearchMode::Auto => candidate_space <= EXHAUSTIVE_CAP as u128,
        SearchMode::Sample => false,
    };
    let elements = field.elements();
    let top = Polynomial::term(&field, m, target_lm.clone(), field.one())?;
    let mut hits: Vec<(Polynomial, FootprintReport)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut examined = 0u64;

    let consider = |indices: &[u64], hits: &mut Vec<(Polynomial, FootprintReport)>,
                    seen: &mut BTreeSet<String>|
     -> Result<()> {
        let mut candidate = top.clone();
        for (mon, &i) in below.iter().zip(indices) {
            if i != 0 {
                let t = Polynomial::term(&field, m, mon.clone(), elements[i as usize].clone())?;
                candidate = candidate.add(&t)?;
            }
        }
        if grid.count_roots(&candidate)? == bound {
            let key = candidate.to_string();
            if seen.insert(key) {
                let report = classify(&candidate, grid, ord)?;
                hits.push((candidate, report));
            }
        }
        Ok(())
    };

    if exhaustive {
        let mut indices = vec![0u64; below.len()];
        loop {
            consider(&indices, &mut hits, &mut seen)?;
            examined += 1;
            if !advance(&mut indices, q) {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let indices: Vec<u64> = (0..below.len()).map(|_| rng.random_range(0..q)).collect();
            consider(&indices, &mut hits, &mut seen)?;
            examined += 1;
        }
    }
    hits.sort_by_key(|(poly, _)| poly.to_string());
    Ok(SearchOutcome {
        hits,
        exhaustive,
        candidates_examined: examined,
        candidate_space,
        seed,
    })
}

/// All monomials with exponents below the grid sizes, ascending storage
/// order.
pub fn reduced_monomials(grid: &Grid) -> Vec<Monomial> {
    let sizes: Vec<u64> = grid.sizes().collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; sizes.len()];
    loop {
        out.push(Monomial::new(exps.clone()));
        let mut var = sizes.len();
        loop {
            if var == 0 {
                out.sort();
                return out;
            }
            var -= 1;
            exps[var] += 1;
            if (exps[var] as u64) < sizes[var] {
                break;
            }
            exps[var] = 0;
        }
    }
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
