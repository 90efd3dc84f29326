//! Sparse multivariate polynomials over a finite field.
//!
//! Terms live in a `BTreeMap` keyed by monomial, with zero coefficients
//! pruned after every operation, so structural equality is semantic equality
//! and the representation stays small even for exponents like `q+1` or `2q`.
//!
//! The text grammar joins terms with `+`/`-`; a term is a `*`-joined product
//! of integer literals, generator powers `w^e`, parenthesized field elements,
//! and variable powers `Xi^e`. The printer emits terms in descending storage
//! order and its output re-parses to an equal polynomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::grid::Grid;
use crate::monomial::{Monomial, MonomialOrder, MAX_EXPONENT};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    num_vars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &Field, num_vars: usize) -> Polynomial {
        Polynomial {
            field: field.clone(),
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, num_vars: usize, value: &FieldElement) -> Result<Polynomial> {
        Polynomial::term(field, num_vars, Monomial::unit(num_vars), value.clone())
    }

    pub fn one(field: &Field, num_vars: usize) -> Polynomial {
        Polynomial::constant(field, num_vars, &field.one()).expect("same field")
    }

    /// The single-term polynomial `value * monomial`.
    pub fn term(
        field: &Field,
        num_vars: usize,
        monomial: Monomial,
        value: FieldElement,
    ) -> Result<Polynomial> {
        if value.field() != field {
            return Err(Error::ContextMismatch);
        }
        if monomial.num_vars() != num_vars {
            return Err(Error::DimensionMismatch {
                left: monomial.num_vars(),
                right: num_vars,
            });
        }
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(monomial, value);
        }
        Ok(Polynomial { field: field.clone(), num_vars, terms })
    }

    /// The variable `X_{var+1}` as a polynomial.
    pub fn variable(field: &Field, num_vars: usize, var: usize) -> Result<Polynomial> {
        Polynomial::term(field, num_vars, Monomial::variable(num_vars, var)?, field.one())
    }

    /// `X_{var+1} - a`.
    pub fn linear_factor(field: &Field, num_vars: usize, var: usize, a: &FieldElement) -> Result<Polynomial> {
        let x = Polynomial::variable(field, num_vars, var)?;
        let c = Polynomial::constant(field, num_vars, a)?;
        x.sub(&c)
    }

    /// Builds a polynomial from terms, merging duplicates and pruning zeros.
    pub fn from_terms(
        field: &Field,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Polynomial> {
        let mut out = Polynomial::zero(field, num_vars);
        for (m, c) in terms {
            if c.field() != field {
                return Err(Error::ContextMismatch);
            }
            if m.num_vars() != num_vars {
                return Err(Error::DimensionMismatch { left: m.num_vars(), right: num_vars });
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, monomial: Monomial, value: FieldElement) {
        if value.is_zero() {
            return;
        }
        match self.terms.remove(&monomial) {
            None => {
                self.terms.insert(monomial, value);
            }
            Some(existing) => {
                let sum = existing.add(&value).expect("same field");
                if !sum.is_zero() {
                    self.terms.insert(monomial, sum);
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    /// The constant value when `self` is a nonzero constant.
    pub fn constant_value(&self) -> Option<&FieldElement> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c);
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Term iteration in ascending storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    /// The support, ascending in storage order.
    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Option<&FieldElement> {
        self.terms.get(monomial)
    }

    /// Per-variable degrees; `None` for the zero polynomial.
    pub fn degrees(&self) -> Option<Vec<u32>> {
        if self.is_zero() {
            return None;
        }
        let mut degs = vec![0u32; self.num_vars];
        for m in self.terms.keys() {
            for (d, &e) in degs.iter_mut().zip(m.exponents()) {
                *d = (*d).max(e);
            }
        }
        Some(degs)
    }

    pub fn degree_in(&self, var: usize) -> Result<Option<u32>> {
        if var >= self.num_vars {
            return Err(Error::IndexOutOfRange { index: var, num_vars: self.num_vars });
        }
        Ok(self.degrees().map(|d| d[var]))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    fn check_context(&self, rhs: &Polynomial) -> Result<()> {
        if self.field == rhs.field && self.num_vars == rhs.num_vars {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_context(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Polynomial { field: self.field.clone(), num_vars: self.num_vars, terms }
    }

    pub fn sub(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_context(rhs)?;
        let mut out = Polynomial::zero(&self.field, self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb).expect("same arity");
                let c = ca.mul(cb).expect("same field");
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        if c.field() != &self.field {
            return Err(Error::ContextMismatch);
        }
        let mut out = Polynomial::zero(&self.field, self.num_vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c).expect("same field"));
        }
        Ok(out)
    }

    /// Substitution value at a point, with `0^0 = 1`.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch { left: point.len(), right: self.num_vars });
        }
        if point.iter().any(|a| a.field() != &self.field) {
            return Err(Error::ContextMismatch);
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (a, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term = term.mul(&a.pow(e as u64)).expect("same field");
                }
            }
            acc = acc.add(&term).expect("same field");
        }
        Ok(acc)
    }

    /// Eliminates `X_{var+1}` by substituting the value `a`.
    pub fn substitute_variable(&self, var: usize, a: &FieldElement) -> Result<Polynomial> {
        if var >= self.num_vars {
            return Err(Error::IndexOutOfRange { index: var, num_vars: self.num_vars });
        }
        if a.field() != &self.field {
            return Err(Error::ContextMismatch);
        }
        let mut out = Polynomial::zero(&self.field, self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let coeff = if e > 0 {
                c.mul(&a.pow(e as u64)).expect("same field")
            } else {
                c.clone()
            };
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }

    /// The maximal support monomial under `ord`.
    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        ord.max_of(self.terms.keys())
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, FieldElement)> {
        let m = self.leading_monomial(ord)?;
        let c = self.terms.get(&m).expect("leading monomial is in support").clone();
        Ok((m, c))
    }

    /// Multivariate division: returns `(quotients, remainder)` with
    /// `self = sum(q_i * d_i) + r`, no remainder monomial divisible by any
    /// divisor's leading monomial, and `lm(q_i * d_i) <= lm(self)`.
    ///
    /// Divisors are tried in list order, reducing the working leading term
    /// first.
    pub fn divide(
        &self,
        divisors: &[Polynomial],
        ord: &MonomialOrder,
    ) -> Result<(Vec<Polynomial>, Polynomial)> {
        if ord.num_vars() != self.num_vars {
            return Err(Error::DimensionMismatch { left: ord.num_vars(), right: self.num_vars });
        }
        let mut leading = Vec::with_capacity(divisors.len());
        for d in divisors {
            self.check_context(d)?;
            if d.is_zero() {
                return Err(Error::ZeroDivisor);
            }
            leading.push(d.leading_term(ord)?);
        }
        let mut quotients = vec![Polynomial::zero(&self.field, self.num_vars); divisors.len()];
        let mut remainder = Polynomial::zero(&self.field, self.num_vars);
        let mut work = self.clone();
        while !work.is_zero() {
            let (lm, lc) = work.leading_term(ord)?;
            let mut reduced = false;
            for (i, (dm, dc)) in leading.iter().enumerate() {
                if let Some(quot_mon) = lm.div(dm)? {
                    let quot_coeff = lc.div(dc)?;
                    let t = Polynomial::term(
                        &self.field,
                        self.num_vars,
                        quot_mon,
                        quot_coeff,
                    )?;
                    quotients[i] = quotients[i].add(&t)?;
                    work = work.sub(&t.mul(&divisors[i])?)?;
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                work.terms.remove(&lm);
                remainder.add_term(lm, lc);
            }
        }
        Ok((quotients, remainder))
    }

    /// The remainder of `self` modulo the grid's vanishing polynomials: the
    /// unique polynomial with per-variable degrees below the grid sizes that
    /// agrees with `self` on every grid point.
    pub fn reduce_mod_grid(&self, grid: &Grid) -> Result<Polynomial> {
        if grid.field() != &self.field || grid.num_vars() != self.num_vars {
            return Err(Error::ContextMismatch);
        }
        if self.is_reduced(grid) {
            return Ok(self.clone());
        }
        let divisors = grid.vanishing_polynomials();
        let ord = MonomialOrder::default_lex(self.num_vars);
        let (_, remainder) = self.divide(&divisors, &ord)?;
        Ok(remainder)
    }

    /// Whether every support degree is below the matching grid size.
    pub fn is_reduced(&self, grid: &Grid) -> bool {
        self.terms.keys().all(|m| {
            m.exponents()
                .iter()
                .zip(grid.sizes())
                .all(|(&e, s)| (e as u64) < s)
        })
    }

    /// Parses the term grammar described in the module docs, e.g.
    /// `X1^3+X2^2+X2` or `(w+1)*X1*X2 - 2`.
    pub fn parse(s: &str, field: &Field, num_vars: usize) -> Result<Polynomial> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut out = Polynomial::zero(field, num_vars);
        let mut first = true;
        loop {
            skip_ws(&chars, &mut pos);
            if pos >= chars.len() {
                if first {
                    return Err(Error::Parse { pos, msg: "empty polynomial".into() });
                }
                break;
            }
            let mut negate = false;
            if chars[pos] == '+' || chars[pos] == '-' {
                negate = chars[pos] == '-';
                pos += 1;
            } else if !first {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected `+` or `-`, found `{}`", chars[pos]),
                });
            }
            let (mon, coeff) = parse_poly_term(&chars, &mut pos, field, num_vars)?;
            out.add_term(mon, if negate { coeff.neg() } else { coeff });
            first = false;
        }
        Ok(out)
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_uint(chars: &[char], pos: &mut usize) -> Result<u64> {
    let start = *pos;
    let mut n: u64 = 0;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        n = n
            .checked_mul(10)
            .and_then(|n| n.checked_add(chars[*pos] as u64 - '0' as u64))
            .ok_or(Error::Parse { pos: start, msg: "integer literal too large".into() })?;
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::Parse { pos: start, msg: "expected an integer".into() });
    }
    Ok(n)
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<u32> {
    skip_ws(chars, pos);
    if *pos < chars.len() && chars[*pos] == '^' {
        *pos += 1;
        skip_ws(chars, pos);
        let start = *pos;
        let e = parse_uint(chars, pos)?;
        if e > MAX_EXPONENT as u64 {
            return Err(Error::Parse { pos: start, msg: "exponent too large".into() });
        }
        Ok(e as u32)
    } else {
        Ok(1)
    }
}

fn parse_poly_term(
    chars: &[char],
    pos: &mut usize,
    field: &Field,
    num_vars: usize,
) -> Result<(Monomial, FieldElement)> {
    let mut coeff = field.one();
    let mut exps = vec![0u32; num_vars];
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() {
            return Err(Error::Parse { pos: *pos, msg: "expected a factor".into() });
        }
        let c = chars[*pos];
        if c.is_ascii_digit() {
            let n = parse_uint(chars, pos)?;
            coeff = coeff
                .mul(&field.from_integer((n % field.characteristic()) as i64))
                .expect("same field");
        } else if c == 'w' {
            let at = *pos;
            *pos += 1;
            let e = parse_exponent(chars, pos)?;
            let gen = field.generator().map_err(|_| Error::Parse {
                pos: at,
                msg: "generator `w` only exists in extension fields".into(),
            })?;
            coeff = coeff.mul(&gen.pow(e as u64)).expect("same field");
        } else if c == 'X' {
            let at = *pos;
            *pos += 1;
            let idx = parse_uint(chars, pos).map_err(|_| Error::Parse {
                pos: at,
                msg: "expected a variable index after `X`".into(),
            })? as usize;
            if idx == 0 || idx > num_vars {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("variable X{} out of range for {} variables", idx, num_vars),
                });
            }
            let e = parse_exponent(chars, pos)?;
            let total = exps[idx - 1] as u64 + e as u64;
            if total > MAX_EXPONENT as u64 {
                return Err(Error::Parse { pos: at, msg: "exponent too large".into() });
            }
            exps[idx - 1] = total as u32;
        } else if c == '(' {
            let at = *pos;
            let close = chars[*pos..]
                .iter()
                .position(|&c| c == ')')
                .ok_or(Error::Parse { pos: at, msg: "unclosed parenthesis".into() })?;
            let inner: String = chars[*pos + 1..*pos + close].iter().collect();
            let value = field.parse_element(&inner).map_err(|e| match e {
                Error::Parse { pos: inner_pos, msg } => {
                    Error::Parse { pos: at + 1 + inner_pos, msg }
                }
                other => other,
            })?;
            coeff = coeff.mul(&value).expect("same field");
            *pos += close + 1;
        } else {
            return Err(Error::Parse {
                pos: *pos,
                msg: format!("unexpected character `{}`", c),
            });
        }
        skip_ws(chars, pos);
        if *pos < chars.len() && chars[*pos] == '*' {
            *pos += 1;
        } else {
            break;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff_text = c.to_string();
            if m.is_unit() {
                write!(f, "{}", coeff_text)?;
            } else if c.is_one() {
                write!(f, "{}", m)?;
            } else if coeff_text.contains('+') || coeff_text.contains('-') {
                write!(f, "({})*{}", coeff_text, m)?;
            } else {
                write!(f, "{}*{}", coeff_text, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} over {})", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f4() -> Field {
        Field::extension(2, 2).unwrap()
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn p(s: &str, field: &Field, m: usize) -> Polynomial {
        Polynomial::parse(s, field, m).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let f4 = f4();
        let hermitian = p("X1^3+X2^2+X2", &f4, 2);
        assert_eq!(hermitian.num_terms(), 3);
        assert_eq!(hermitian.to_string(), "X1^3+X2^2+X2");
        let with_ext_coeff = p("(w+1)*X1*X2+w*X2+1", &f4, 2);
        assert_eq!(with_ext_coeff.to_string(), "(w+1)*X1*X2+w*X2+1");
        let reparsed = p(&with_ext_coeff.to_string(), &f4, 2);
        assert_eq!(with_ext_coeff, reparsed);
        // Character 2: minus folds onto plus.
        assert_eq!(p("X1-X2", &f4, 2), p("X1+X2", &f4, 2));
        assert_eq!(p("0", &f4, 2), Polynomial::zero(&f4, 2));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let f3 = f3();
        match Polynomial::parse("X1 + X9", &f3, 2).unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 5),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(
            Polynomial::parse("X1 + + X2", &f3, 2),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("w*X1", &f3, 1),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn ring_identities() {
        let f3 = f3();
        let f = p("X1^2+2*X2+1", &f3, 2);
        assert!(f.add(&f.neg()).unwrap().is_zero());
        // (X1 - 1)(X1 - 2) has constant term 1*2 = 2.
        let a = f3.from_integer(1);
        let b = f3.from_integer(2);
        let fa = Polynomial::linear_factor(&f3, 2, 0, &a).unwrap();
        let fb = Polynomial::linear_factor(&f3, 2, 0, &b).unwrap();
        let prod = fa.mul(&fb).unwrap();
        assert_eq!(
            prod.coefficient(&Monomial::unit(2)).unwrap(),
            &a.mul(&b).unwrap()
        );
        assert_eq!(prod.to_string(), "X1^2+2");
    }

    #[test]
    fn leading_monomials() {
        let f4 = f4();
        let hermitian = p("X1^3+X2^2+X2", &f4, 2);
        let x2_major = MonomialOrder::lex(vec![1, 0]).unwrap();
        assert_eq!(
            hermitian.leading_monomial(&x2_major).unwrap(),
            Monomial::new(vec![0, 2])
        );
        let x1_major = MonomialOrder::lex(vec![0, 1]).unwrap();
        assert_eq!(
            hermitian.leading_monomial(&x1_major).unwrap(),
            Monomial::new(vec![3, 0])
        );
        let constant = p("w", &f4, 2);
        assert_eq!(
            constant.leading_monomial(&x2_major).unwrap(),
            Monomial::unit(2)
        );
        assert_eq!(
            Polynomial::zero(&f4, 2).leading_monomial(&x2_major).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn evaluation() {
        let f4 = f4();
        let w = f4.generator().unwrap();
        // X1 - a vanishes wherever X1 = a.
        let fa = Polynomial::linear_factor(&f4, 2, 0, &w).unwrap();
        assert!(fa.evaluate(&[w.clone(), f4.one()]).unwrap().is_zero());
        let hermitian = p("X1^3+X2^2+X2", &f4, 2);
        assert!(hermitian.evaluate(&[f4.zero(), f4.zero()]).unwrap().is_zero());
        // At (1, w): 1 + w^2 + w = 1 + (w+1) + w = 0.
        assert!(hermitian.evaluate(&[f4.one(), w]).unwrap().is_zero());
    }

    #[test]
    fn division_by_self() {
        let f3 = f3();
        let f = p("X1^2*X2+2*X1+1", &f3, 2);
        let ord = MonomialOrder::default_lex(2);
        let (q, r) = f.divide(std::slice::from_ref(&f), &ord).unwrap();
        assert_eq!(q[0], Polynomial::one(&f3, 2));
        assert!(r.is_zero());
    }

    #[test]
    fn univariate_long_division() {
        let f3 = f3();
        // X^2 + 1 = (X + 1)(X - 1) + 2 over F_3.
        let f = p("X1^2+1", &f3, 1);
        let d = p("X1-1", &f3, 1);
        let ord = MonomialOrder::default_lex(1);
        let (q, r) = f.divide(std::slice::from_ref(&d), &ord).unwrap();
        assert_eq!(q[0], p("X1+1", &f3, 1));
        assert_eq!(r, p("2", &f3, 1));
        assert_eq!(q[0].mul(&d).unwrap().add(&r).unwrap(), f);
    }

    #[test]
    fn division_postconditions() {
        let f3 = f3();
        let ord = MonomialOrder::default_lex(2);
        let f = p("X1^3*X2", &f3, 2);
        let divisors = [p("X1^2", &f3, 2), p("X2", &f3, 2)];
        let (q, r) = f.divide(&divisors, &ord).unwrap();
        let mut total = r.clone();
        for (qi, di) in q.iter().zip(&divisors) {
            total = total.add(&qi.mul(di).unwrap()).unwrap();
        }
        assert_eq!(total, f);
        for m in r.support() {
            for d in &divisors {
                let dm = d.leading_monomial(&ord).unwrap();
                assert!(!dm.divides(m).unwrap());
            }
        }
        assert_eq!(
            f.divide(&[Polynomial::zero(&f3, 2)], &ord).unwrap_err(),
            Error::ZeroDivisor
        );
    }

    #[test]
    fn substitution() {
        let f4 = f4();
        let hermitian = p("X1^3+X2^2+X2", &f4, 2);
        let at_zero = hermitian.substitute_variable(1, &f4.zero()).unwrap();
        assert_eq!(at_zero, p("X1^3", &f4, 2));
        let w = f4.generator().unwrap();
        let fa = Polynomial::linear_factor(&f4, 2, 0, &w).unwrap();
        assert!(fa.substitute_variable(0, &w).unwrap().is_zero());
        assert!(matches!(
            hermitian.substitute_variable(5, &w),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn substitute_agrees_with_evaluate() {
        let f9 = Field::extension(3, 2).unwrap();
        let f = p("(w+1)*X1^2*X2+2*X1*X3+w*X3^2+1", &f9, 3);
        let elements = f9.elements();
        // Deterministic scatter of sample points.
        for i in 0..20u64 {
            let pt = [
                elements[(i * 7 % 9) as usize].clone(),
                elements[(i * 5 % 9) as usize].clone(),
                elements[(i * 2 % 9) as usize].clone(),
            ];
            let direct = f.evaluate(&pt).unwrap();
            let sub = f
                .substitute_variable(0, &pt[0])
                .unwrap()
                .substitute_variable(1, &pt[1])
                .unwrap()
                .substitute_variable(2, &pt[2])
                .unwrap();
            assert_eq!(sub.constant_value().unwrap_or(&f9.zero()), &direct);
        }
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = p("X1", &f3(), 2);
        let b = p("X1", &f4(), 2);
        assert_eq!(a.add(&b).unwrap_err(), Error::ContextMismatch);
        let c = p("X1", &f3(), 1);
        assert_eq!(a.add(&c).unwrap_err(), Error::ContextMismatch);
    }
}
