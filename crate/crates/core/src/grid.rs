//! Finite grids `S_1 x ... x S_m`, exhaustive root counting, and the
//! footprint maps `D` and `D'`.
//!
//! A grid stores one nonempty duplicate-free subset of the field per
//! variable. Point enumeration is an odometer over the subsets in stored
//! order with the last variable varying fastest, so `root_set` output and
//! reports are reproducible. The total point count is capped because every
//! consumer enumerates exhaustively.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Upper bound on the number of grid points.
pub const DEFAULT_POINT_CAP: u64 = 1 << 24;

#[derive(Clone, PartialEq, Eq)]
pub struct Grid {
    field: Field,
    subsets: Vec<Vec<FieldElement>>,
}

impl Grid {
    /// Builds a grid from per-variable subsets, validating that each subset
    /// is nonempty, duplicate-free, drawn from `field`, and that the total
    /// point count stays within the cap.
    pub fn new(field: &Field, subsets: Vec<Vec<FieldElement>>) -> Result<Grid> {
        if subsets.is_empty() {
            return Err(Error::InvalidGrid("a grid needs at least one variable".into()));
        }
        let mut points: u128 = 1;
        for (var, subset) in subsets.iter().enumerate() {
            if subset.is_empty() {
                return Err(Error::InvalidGrid(format!("subset for X{} is empty", var + 1)));
            }
            let mut seen = HashSet::new();
            for a in subset {
                if a.field() != field {
                    return Err(Error::InvalidGrid(format!(
                        "subset for X{} contains an element of a different field",
                        var + 1
                    )));
                }
                if !seen.insert(a.index()) {
                    return Err(Error::InvalidGrid(format!(
                        "subset for X{} contains `{}` twice",
                        var + 1,
                        a
                    )));
                }
            }
            points *= subset.len() as u128;
        }
        if points > DEFAULT_POINT_CAP as u128 {
            return Err(Error::GridTooLarge { points, cap: DEFAULT_POINT_CAP });
        }
        Ok(Grid { field: field.clone(), subsets })
    }

    /// The full grid `F^m`.
    pub fn full(field: &Field, num_vars: usize) -> Result<Grid> {
        let elements = field.elements();
        Grid::new(field, vec![elements; num_vars])
    }

    /// Parses a comma-separated list of per-variable specs: `full`,
    /// `trace_nonzero:d` (elements with nonzero trace to the degree-`d`
    /// subfield), or an explicit element list in brackets like `[0,1,w]`.
    pub fn parse(s: &str, field: &Field) -> Result<Grid> {
        let mut subsets = Vec::new();
        for part in split_top_level(s) {
            let part = part.trim();
            if part == "full" {
                subsets.push(field.elements());
            } else if let Some(d_str) = part.strip_prefix("trace_nonzero:") {
                let d: u32 = d_str.trim().parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("invalid subfield degree `{}`", d_str),
                })?;
                let mut subset = Vec::new();
                for a in field.elements() {
                    if !a.trace_to_subfield(d)?.is_zero() {
                        subset.push(a);
                    }
                }
                subsets.push(subset);
            } else if part.starts_with('[') && part.ends_with(']') {
                let inner = &part[1..part.len() - 1];
                let mut subset = Vec::new();
                for e in inner.split(',') {
                    subset.push(field.parse_element(e)?);
                }
                subsets.push(subset);
            } else {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!(
                        "invalid grid factor `{}` (expected `full`, `trace_nonzero:d`, or `[...]`)",
                        part
                    ),
                });
            }
        }
        Grid::new(field, subsets)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<FieldElement>] {
        &self.subsets
    }

    pub fn subset(&self, var: usize) -> &[FieldElement] {
        &self.subsets[var]
    }

    /// Per-variable sizes `s_1, ..., s_m`.
    pub fn sizes(&self) -> impl Iterator<Item = u64> + '_ {
        self.subsets.iter().map(|s| s.len() as u64)
    }

    pub fn size(&self, var: usize) -> u64 {
        self.subsets[var].len() as u64
    }

    pub fn total_points(&self) -> u64 {
        self.sizes().product()
    }

    /// Whether every factor is the whole field.
    pub fn is_full(&self) -> bool {
        self.subsets.iter().all(|s| s.len() as u64 == self.field.order())
    }

    /// All grid points in enumeration order (last variable fastest).
    pub fn points(&self) -> GridPoints<'_> {
        GridPoints { grid: self, indices: vec![0; self.subsets.len()], done: false }
    }

    /// The vanishing polynomial of each factor: the monic univariate
    /// `prod_{a in S_l}(X_l - a)` of degree `s_l`, expanded in the full ring.
    pub fn vanishing_polynomials(&self) -> Vec<Polynomial> {
        let m = self.num_vars();
        self.subsets
            .iter()
            .enumerate()
            .map(|(var, subset)| {
                if subset.len() as u64 == self.field.order() {
                    // The whole field vanishes on X^q - X.
                    let q = self.field.order() as u32;
                    let x_q = Polynomial::term(
                        &self.field,
                        m,
                        Monomial::new(exps_with(m, var, q)),
                        self.field.one(),
                    )
                    .expect("same field");
                    let x = Polynomial::term(
                        &self.field,
                        m,
                        Monomial::new(exps_with(m, var, 1)),
                        self.field.one(),
                    )
                    .expect("same field");
                    return x_q.sub(&x).expect("same ring");
                }
                let mut acc = Polynomial::one(&self.field, m);
                for a in subset {
                    let factor = Polynomial::linear_factor(&self.field, m, var, a)
                        .expect("same field");
                    acc = acc.mul(&factor).expect("same ring");
                }
                acc
            })
            .collect()
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if f.field() != &self.field || f.num_vars() != self.num_vars() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Exact number of grid points where `f` evaluates to zero.
    ///
    /// Counts by substituting one variable at a time, so shared prefixes are
    /// evaluated once; the result equals plain pointwise enumeration.
    pub fn count_roots(&self, f: &Polynomial) -> Result<u64> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.count_roots_from(f, 0))
    }

    fn count_roots_from(&self, f: &Polynomial, var: usize) -> u64 {
        if f.is_zero() {
            return self.subsets[var..].iter().map(|s| s.len() as u64).product();
        }
        if var == self.num_vars() {
            return 0;
        }
        if f.is_constant() {
            // Nonzero constant: no roots anywhere in the remaining block.
            return 0;
        }
        let deg = f.degree_in(var).expect("var in range").unwrap_or(0);
        if deg == 0 {
            // f does not involve X_{var+1}; every choice contributes equally.
            return self.size(var) * self.count_roots_from(f, var + 1);
        }
        let mut total = 0;
        for a in &self.subsets[var] {
            let g = f.substitute_variable(var, a).expect("valid substitution");
            total += self.count_roots_from(&g, var + 1);
        }
        total
    }

    /// The explicit set counted by [`Grid::count_roots`], in enumeration
    /// order. Implemented by direct pointwise evaluation, independently of
    /// the counting recursion.
    pub fn root_set(&self, f: &Polynomial) -> Result<Vec<Vec<FieldElement>>> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        for point in self.points() {
            if f.evaluate(&point).expect("point in field").is_zero() {
                roots.push(point);
            }
        }
        Ok(roots)
    }

    fn check_admissible(&self, monomial: &Monomial) -> Result<()> {
        if monomial.num_vars() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                left: monomial.num_vars(),
                right: self.num_vars(),
            });
        }
        for (var, (&e, s)) in monomial.exponents().iter().zip(self.sizes()).enumerate() {
            if e as u64 >= s {
                return Err(Error::ExponentTooLarge { var, exponent: e, size: s });
            }
        }
        Ok(())
    }

    /// The footprint value
    /// `D(X1^{i_1}...Xm^{i_m}) = s_1...s_m - (s_1-i_1)...(s_m-i_m)`,
    /// defined for exponents below the grid sizes.
    pub fn footprint_d(&self, monomial: &Monomial) -> Result<u64> {
        self.check_admissible(monomial)?;
        let total: u64 = self.sizes().product();
        let non_roots: u64 = monomial
            .exponents()
            .iter()
            .zip(self.sizes())
            .map(|(&e, s)| s - e as u64)
            .product();
        Ok(total - non_roots)
    }

    /// The footprint value computed while ignoring the last variable:
    /// `D'(X1^{i_1}...Xm^{i_m}) = s_1...s_{m-1} - (s_1-i_1)...(s_{m-1}-i_{m-1})`.
    pub fn footprint_d_prime(&self, monomial: &Monomial) -> Result<u64> {
        self.check_admissible(monomial)?;
        let m = self.num_vars();
        let total: u64 = self.sizes().take(m - 1).product();
        let non_roots: u64 = monomial
            .exponents()
            .iter()
            .zip(self.sizes())
            .take(m - 1)
            .map(|(&e, s)| s - e as u64)
            .product();
        Ok(total - non_roots)
    }

    /// The grid `T_1 x ... x T_m` with `T_l = S_l \ S'_l`, preserving the
    /// stored order of the surviving elements.
    pub fn subtract_subsets(&self, primes: &[Vec<FieldElement>]) -> Result<Grid> {
        if primes.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                left: primes.len(),
                right: self.num_vars(),
            });
        }
        let mut subsets = Vec::with_capacity(self.num_vars());
        for (var, (subset, prime)) in self.subsets.iter().zip(primes).enumerate() {
            let available: HashSet<u64> = subset.iter().map(|a| a.index()).collect();
            let mut removed = HashSet::new();
            for a in prime {
                if a.field() != &self.field || !available.contains(&a.index()) {
                    return Err(Error::NotASubset { var });
                }
                if !removed.insert(a.index()) {
                    return Err(Error::InvalidGrid(format!(
                        "subset for X{} lists `{}` twice",
                        var + 1,
                        a
                    )));
                }
            }
            let survivors: Vec<FieldElement> = subset
                .iter()
                .filter(|a| !removed.contains(&a.index()))
                .cloned()
                .collect();
            if survivors.is_empty() {
                return Err(Error::EmptyFactor { var });
            }
            subsets.push(survivors);
        }
        Grid::new(&self.field, subsets)
    }
}

fn exps_with(num_vars: usize, var: usize, e: u32) -> Vec<u32> {
    let mut exps = vec![0; num_vars];
    exps[var] = e;
    exps
}

/// Splits on commas that are not inside brackets.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '[' => {
                depth += 1;
                current.push(c);
            }
            ']' => {
                depth -= 1;
                current.push(c);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts
}

/// Odometer iterator over grid points, last variable fastest.
pub struct GridPoints<'a> {
    grid: &'a Grid,
    indices: Vec<usize>,
    done: bool,
}

impl<'a> Iterator for GridPoints<'a> {
    type Item = Vec<FieldElement>;

    fn next(&mut self) -> Option<Vec<FieldElement>> {
        if self.done {
            return None;
        }
        let point: Vec<FieldElement> = self
            .indices
            .iter()
            .enumerate()
            .map(|(var, &i)| self.grid.subsets[var][i].clone())
            .collect();
        // Advance the odometer.
        let mut var = self.indices.len();
        loop {
            if var == 0 {
                self.done = true;
                break;
            }
            var -= 1;
            self.indices[var] += 1;
            if self.indices[var] < self.grid.subsets[var].len() {
                break;
            }
            self.indices[var] = 0;
        }
        Some(point)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for subset in &self.subsets {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if subset.len() as u64 == self.field.order() {
                write!(f, "full")?;
            } else {
                let items: Vec<String> = subset.iter().map(|a| a.to_string()).collect();
                write!(f, "[{}]", items.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid({} over {})", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn f4() -> Field {
        Field::extension(2, 2).unwrap()
    }

    fn poly(s: &str, field: &Field, m: usize) -> Polynomial {
        Polynomial::parse(s, field, m).unwrap()
    }

    #[test]
    fn construction_validations() {
        let f3 = f3();
        assert!(Grid::full(&f3, 2).is_ok());
        let dup = vec![vec![f3.zero(), f3.zero()]];
        assert!(matches!(Grid::new(&f3, dup), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid::new(&f3, vec![vec![]]), Err(Error::InvalidGrid(_))));
        // 32^5 = 2^25 exceeds the point cap.
        let f32 = Field::extension(2, 5).unwrap();
        assert!(matches!(
            Grid::full(&f32, 5),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn vanishing_polynomials_examples() {
        let f2 = Field::prime(2).unwrap();
        let g = Grid::full(&f2, 1).unwrap();
        assert_eq!(g.vanishing_polynomials()[0], poly("X1^2+X1", &f2, 1));

        let f3 = f3();
        let g = Grid::full(&f3, 1).unwrap();
        let v = &g.vanishing_polynomials()[0];
        assert_eq!(v, &poly("X1^3+2*X1", &f3, 1));
        // Vanishes exactly on the subset.
        for a in f3.elements() {
            assert!(v.evaluate(&[a]).unwrap().is_zero());
        }

        let g = Grid::new(&f3, vec![vec![f3.zero()]]).unwrap();
        assert_eq!(g.vanishing_polynomials()[0], poly("X1", &f3, 1));

        // The expanded product matches the X^q - X shortcut on a full factor.
        let f4 = f4();
        let g = Grid::full(&f4, 1).unwrap();
        let mut product = Polynomial::one(&f4, 1);
        for a in f4.elements() {
            product = product
                .mul(&Polynomial::linear_factor(&f4, 1, 0, &a).unwrap())
                .unwrap();
        }
        assert_eq!(g.vanishing_polynomials()[0], product);
    }

    #[test]
    fn root_counting() {
        let f3 = f3();
        let g = Grid::full(&f3, 2).unwrap();
        for a in f3.elements() {
            let f = Polynomial::linear_factor(&f3, 2, 0, &a).unwrap();
            assert_eq!(g.count_roots(&f).unwrap(), 3);
        }
        let f4 = f4();
        let g4 = Grid::full(&f4, 2).unwrap();
        let hermitian = poly("X1^3+X2^2+X2", &f4, 2);
        assert_eq!(g4.count_roots(&hermitian).unwrap(), 8);
        assert_eq!(
            g4.count_roots(&Polynomial::zero(&f4, 2)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn root_set_matches_count() {
        let f2 = Field::prime(2).unwrap();
        let g = Grid::full(&f2, 2).unwrap();
        let f = poly("X1", &f2, 2);
        let roots = g.root_set(&f).unwrap();
        let rendered: Vec<String> = roots
            .iter()
            .map(|pt| format!("({},{})", pt[0], pt[1]))
            .collect();
        assert_eq!(rendered, ["(0,0)", "(0,1)"]);

        let f4 = f4();
        let g4 = Grid::full(&f4, 2).unwrap();
        for s in ["X1^3+X2^2+X2", "X1*X2+w", "X1^2+X2^3+X1*X2+1"] {
            let f = poly(s, &f4, 2);
            assert_eq!(
                g4.root_set(&f).unwrap().len() as u64,
                g4.count_roots(&f).unwrap()
            );
        }
    }

    #[test]
    fn count_skips_inactive_variables() {
        let f3 = f3();
        let g = Grid::full(&f3, 3).unwrap();
        // X2^2 + 1 has no roots in F_3 (-1 is not a square mod 3);
        // X2 - 1 has exactly one per slice.
        assert_eq!(g.count_roots(&poly("X2^2+1", &f3, 3)).unwrap(), 0);
        assert_eq!(g.count_roots(&poly("X2+2", &f3, 3)).unwrap(), 9);
    }

    #[test]
    fn footprint_map_examples() {
        let f4 = f4();
        let g4 = Grid::full(&f4, 2).unwrap();
        assert_eq!(g4.footprint_d(&Monomial::unit(2)).unwrap(), 0);
        // D(X2^2) on 4x4 = 16 - 4*2 = 8.
        assert_eq!(g4.footprint_d(&Monomial::new(vec![0, 2])).unwrap(), 8);
        let f9 = Field::extension(3, 2).unwrap();
        let g9 = Grid::full(&f9, 2).unwrap();
        // D(X1^6*X2^3) on 9x9 = 81 - 3*6 = 63.
        assert_eq!(g9.footprint_d(&Monomial::new(vec![6, 3])).unwrap(), 63);
        assert!(matches!(
            g4.footprint_d(&Monomial::new(vec![4, 0])),
            Err(Error::ExponentTooLarge { .. })
        ));
    }

    #[test]
    fn footprint_d_prime_examples() {
        let f3 = f3();
        let g = Grid::full(&f3, 2).unwrap();
        // In two variables D' is just the first exponent.
        assert_eq!(g.footprint_d_prime(&Monomial::new(vec![1, 1])).unwrap(), 1);
        assert_eq!(g.footprint_d_prime(&Monomial::unit(2)).unwrap(), 0);
        // D(X1*X2) = 5 > s_2 * D'(X1*X2) = 3 on the 3x3 grid.
        let m = Monomial::new(vec![1, 1]);
        assert!(g.footprint_d(&m).unwrap() > g.size(1) * g.footprint_d_prime(&m).unwrap());
    }

    #[test]
    fn subset_subtraction() {
        let f9 = Field::extension(3, 2).unwrap();
        let g = Grid::full(&f9, 2).unwrap();
        let unchanged = g.subtract_subsets(&[vec![], vec![]]).unwrap();
        assert_eq!(unchanged, g);

        // Removing the zero-trace elements leaves q^2 - q = 6 per factor.
        let trace_zero: Vec<FieldElement> = f9
            .elements()
            .into_iter()
            .filter(|a| a.trace_to_subfield(1).unwrap().is_zero())
            .collect();
        assert_eq!(trace_zero.len(), 3);
        let t = g
            .subtract_subsets(&[trace_zero.clone(), trace_zero.clone()])
            .unwrap();
        assert_eq!(t.size(0), 6);
        assert_eq!(t.size(1), 6);

        // Removing all but one element leaves a 1x1 grid.
        let all_but_one: Vec<FieldElement> = f9.elements().into_iter().skip(1).collect();
        let tiny = g
            .subtract_subsets(&[all_but_one.clone(), all_but_one.clone()])
            .unwrap();
        assert_eq!(tiny.total_points(), 1);

        // Errors: not a subset, and emptied factor.
        let g2 = Grid::new(&f9, vec![vec![f9.zero()], f9.elements()]).unwrap();
        assert_eq!(
            g2.subtract_subsets(&[vec![f9.one()], vec![]]).unwrap_err(),
            Error::NotASubset { var: 0 }
        );
        assert_eq!(
            g2.subtract_subsets(&[vec![f9.zero()], vec![]]).unwrap_err(),
            Error::EmptyFactor { var: 0 }
        );
    }

    #[test]
    fn grid_parsing() {
        let f9 = Field::extension(3, 2).unwrap();
        let g = Grid::parse("full,full", &f9).unwrap();
        assert_eq!(g, Grid::full(&f9, 2).unwrap());
        let t = Grid::parse("trace_nonzero:1,trace_nonzero:1", &f9).unwrap();
        assert_eq!(t.size(0), 6);
        let explicit = Grid::parse("[0,1,w],full", &f9).unwrap();
        assert_eq!(explicit.size(0), 3);
        assert_eq!(explicit.size(1), 9);
        assert!(Grid::parse("nope", &f9).is_err());
        // Display round-trips.
        assert_eq!(Grid::parse(&explicit.to_string(), &f9).unwrap(), explicit);
    }

    #[test]
    fn reduction_modulo_grid() {
        let f3 = f3();
        let g = Grid::full(&f3, 2).unwrap();
        // X1^3 reduces to X1 on F_3 (X^3 - X vanishes).
        let f = poly("X1^3", &f3, 2);
        let r = f.reduce_mod_grid(&g).unwrap();
        assert_eq!(r, poly("X1", &f3, 2));
        for pt in g.points() {
            assert_eq!(f.evaluate(&pt).unwrap(), r.evaluate(&pt).unwrap());
        }
        // Idempotence.
        assert_eq!(r.reduce_mod_grid(&g).unwrap(), r);
        // Already-reduced polynomials are unchanged.
        let f4 = f4();
        let g4 = Grid::full(&f4, 2).unwrap();
        let hermitian = poly("X1^3+X2^2+X2", &f4, 2);
        assert_eq!(hermitian.reduce_mod_grid(&g4).unwrap(), hermitian);
    }
}
