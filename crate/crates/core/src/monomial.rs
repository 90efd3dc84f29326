//! Monomials and monomial orderings.
//!
//! A [`Monomial`] is an exponent vector of fixed length; the surface syntax
//! numbers variables `X1..Xm` while the API indexes them from 0. The derived
//! `Ord` on [`Monomial`] compares exponent vectors lexicographically and is
//! used only as a canonical storage order; the mathematical orderings live in
//! [`MonomialOrder`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Parser-level cap on exponents; matches the field-order cap so reduction
/// workloads stay desk-scale.
pub const MAX_EXPONENT: u32 = 1 << 20;

/// An exponent vector `X1^{e_1} ... Xm^{e_m}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    /// The monomial `1`.
    pub fn unit(num_vars: usize) -> Monomial {
        Monomial(vec![0; num_vars])
    }

    /// The single variable `X_{var+1}`.
    pub fn variable(num_vars: usize, var: usize) -> Result<Monomial> {
        if var >= num_vars {
            return Err(Error::IndexOutOfRange { index: var, num_vars });
        }
        let mut e = vec![0; num_vars];
        e[var] = 1;
        Ok(Monomial(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn check_same_len(&self, rhs: &Monomial) -> Result<()> {
        if self.0.len() == rhs.0.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.0.len(), right: rhs.0.len() })
        }
    }

    pub fn mul(&self, rhs: &Monomial) -> Result<Monomial> {
        self.check_same_len(rhs)?;
        Ok(Monomial(
            self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Whether `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_same_len(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn div(&self, rhs: &Monomial) -> Result<Option<Monomial>> {
        if !rhs.divides(self)? {
            return Ok(None);
        }
        Ok(Some(Monomial(
            self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect(),
        )))
    }

    /// Parses `X1^3*X2`, a bare `1`, or any `*`-joined variable powers.
    pub fn parse(s: &str, num_vars: usize) -> Result<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::unit(num_vars));
        }
        let mut exps = vec![0u32; num_vars];
        for part in s.split('*') {
            let part = part.trim();
            let rest = part.strip_prefix('X').ok_or(Error::Parse {
                pos: 0,
                msg: format!("expected a variable power, found `{}`", part),
            })?;
            let (idx_str, exp_str) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let idx: usize = idx_str.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("invalid variable index `{}`", idx_str),
            })?;
            if idx == 0 || idx > num_vars {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("variable X{} out of range for {} variables", idx, num_vars),
                });
            }
            let exp: u32 = match exp_str {
                Some(e) => e.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("invalid exponent `{}`", e),
                })?,
                None => 1,
            };
            if exp > MAX_EXPONENT {
                return Err(Error::Parse { pos: 0, msg: "exponent too large".into() });
            }
            exps[idx - 1] += exp;
        }
        Ok(Monomial(exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "X{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Componentwise minimum of a nonempty list of monomials.
pub fn monomial_gcd(monomials: &[Monomial]) -> Result<Monomial> {
    let first = monomials.first().ok_or(Error::EmptyList)?;
    let mut exps = first.0.clone();
    for m in &monomials[1..] {
        first.check_same_len(m)?;
        for (e, &o) in exps.iter_mut().zip(&m.0) {
            *e = (*e).min(o);
        }
    }
    Ok(Monomial(exps))
}

/// The comparison family of a [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    /// Lexicographic in priority order.
    Lex,
    /// Total degree first, lex tiebreak.
    Grlex,
    /// Total degree first, then reverse lex on the reversed priority with the
    /// comparison flipped.
    Grevlex,
    /// Exact rational weight vector (indexed by variable), lex tiebreak.
    Weighted(Vec<BigRational>),
}

/// A total, multiplicative monomial ordering with `1` minimal.
///
/// `priority[0]` is the most significant variable (0-based), so
/// `lex:X2,X1` has priority `[1, 0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

fn check_permutation(priority: &[usize]) -> Result<()> {
    let m = priority.len();
    if m == 0 {
        return Err(Error::InvalidOrder("empty variable priority".into()));
    }
    let mut seen = vec![false; m];
    for &v in priority {
        if v >= m || seen[v] {
            return Err(Error::InvalidOrder(format!(
                "priority is not a permutation of the {} variables",
                m
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

impl MonomialOrder {
    pub fn lex(priority: Vec<usize>) -> Result<MonomialOrder> {
        check_permutation(&priority)?;
        Ok(MonomialOrder { kind: OrderKind::Lex, priority })
    }

    pub fn grlex(priority: Vec<usize>) -> Result<MonomialOrder> {
        check_permutation(&priority)?;
        Ok(MonomialOrder { kind: OrderKind::Grlex, priority })
    }

    pub fn grevlex(priority: Vec<usize>) -> Result<MonomialOrder> {
        check_permutation(&priority)?;
        Ok(MonomialOrder { kind: OrderKind::Grevlex, priority })
    }

    /// Weighted order with strictly positive rational weights indexed by
    /// variable; ties are broken lexicographically on `priority`.
    pub fn weighted(weights: Vec<BigRational>, priority: Vec<usize>) -> Result<MonomialOrder> {
        check_permutation(&priority)?;
        if weights.len() != priority.len() {
            return Err(Error::InvalidOrder(format!(
                "expected {} weights, got {}",
                priority.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidOrder("weights must be strictly positive".into()));
        }
        Ok(MonomialOrder { kind: OrderKind::Weighted(weights), priority })
    }

    /// Identity-priority lex order, the default used for internal reductions.
    pub fn default_lex(num_vars: usize) -> MonomialOrder {
        MonomialOrder::lex((0..num_vars).collect()).expect("identity is a permutation")
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn num_vars(&self) -> usize {
        self.priority.len()
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.priority {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.num_vars() != b.num_vars() {
            return Err(Error::DimensionMismatch { left: a.num_vars(), right: b.num_vars() });
        }
        if a.num_vars() != self.priority.len() {
            return Err(Error::DimensionMismatch {
                left: a.num_vars(),
                right: self.priority.len(),
            });
        }
        Ok(match &self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::Grlex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.lex_cmp(a, b)),
            OrderKind::Grevlex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                for &v in self.priority.iter().rev() {
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        // Smaller exponent in the least significant position wins.
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
            OrderKind::Weighted(weights) => {
                let score = |m: &Monomial| -> BigRational {
                    let mut acc = BigRational::zero();
                    for (w, &e) in weights.iter().zip(m.exponents()) {
                        acc += w * BigRational::from_integer(BigInt::from(e));
                    }
                    acc
                };
                score(a).cmp(&score(b)).then_with(|| self.lex_cmp(a, b))
            }
        })
    }

    /// The maximum of a nonempty iterator under this ordering.
    pub fn max_of<'a>(
        &self,
        monomials: impl IntoIterator<Item = &'a Monomial>,
    ) -> Result<Monomial> {
        let mut best: Option<&Monomial> = None;
        for m in monomials {
            best = Some(match best {
                None => m,
                Some(b) => {
                    if self.compare(m, b)? == Ordering::Greater {
                        m
                    } else {
                        b
                    }
                }
            });
        }
        best.cloned().ok_or(Error::EmptyList)
    }

    /// The built-in ordering battery: lex and grlex over every variable
    /// priority, plus grevlex with the identity and reversed priorities.
    /// For `m` variables that is `2·m! + 2` orderings (duplicates removed,
    /// which only matters for `m = 1`).
    pub fn builtin_orderings(num_vars: usize) -> Vec<MonomialOrder> {
        let perms = permutations(num_vars);
        let mut out = Vec::new();
        for p in &perms {
            out.push(MonomialOrder::lex(p.clone()).expect("valid permutation"));
        }
        for p in &perms {
            out.push(MonomialOrder::grlex(p.clone()).expect("valid permutation"));
        }
        let identity: Vec<usize> = (0..num_vars).collect();
        let reversed: Vec<usize> = (0..num_vars).rev().collect();
        for p in [identity, reversed] {
            let g = MonomialOrder::grevlex(p).expect("valid permutation");
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    /// Parses `lex:X2,X1`, `grlex:X1,X2`, `grevlex:X1,X2`, or
    /// `weighted:3,1;lex:X1,X2`.
    pub fn parse(s: &str, num_vars: usize) -> Result<MonomialOrder> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("weighted:") {
            let (weight_str, tie_str) = rest.split_once(';').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "weighted order needs `;lex:...` tiebreak".into(),
            })?;
            let weights: Result<Vec<BigRational>> =
                weight_str.split(',').map(parse_rational).collect();
            let tie = tie_str.trim();
            let priority_str = tie.strip_prefix("lex:").ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "weighted tiebreak must be a lex order".into(),
            })?;
            return MonomialOrder::weighted(weights?, parse_priority(priority_str, num_vars)?);
        }
        let (kind, priority_str) = s.split_once(':').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected `kind:X...,X...`".into(),
        })?;
        let priority = parse_priority(priority_str, num_vars)?;
        match kind {
            "lex" => MonomialOrder::lex(priority),
            "grlex" => MonomialOrder::grlex(priority),
            "grevlex" => MonomialOrder::grevlex(priority),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown ordering kind `{}`", other),
            }),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            current.push(v);
            rec(remaining, current, out);
            current.pop();
            remaining.insert(i, v);
        }
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(&mut remaining, &mut Vec::new(), &mut out);
    out
}

fn parse_priority(s: &str, num_vars: usize) -> Result<Vec<usize>> {
    let mut priority = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let idx_str = part.strip_prefix('X').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected a variable name, found `{}`", part),
        })?;
        let idx: usize = idx_str.parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("invalid variable index `{}`", idx_str),
        })?;
        if idx == 0 || idx > num_vars {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("variable X{} out of range for {} variables", idx, num_vars),
            });
        }
        priority.push(idx - 1);
    }
    if priority.len() != num_vars || check_permutation(&priority).is_err() {
        return Err(Error::Parse {
            pos: 0,
            msg: "variable list must name every variable exactly once".into(),
        });
    }
    Ok(priority)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("invalid rational `{}`", s),
        })
    };
    let r = match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse { pos: 0, msg: "zero denominator".into() });
            }
            BigRational::new(parse_int(num)?, den)
        }
        None => BigRational::from_integer(parse_int(s)?),
    };
    Ok(r)
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.priority.iter().map(|v| format!("X{}", v + 1)).collect();
        match &self.kind {
            OrderKind::Lex => write!(f, "lex:{}", vars.join(",")),
            OrderKind::Grlex => write!(f, "grlex:{}", vars.join(",")),
            OrderKind::Grevlex => write!(f, "grevlex:{}", vars.join(",")),
            OrderKind::Weighted(weights) => {
                let ws: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                write!(f, "weighted:{};lex:{}", ws.join(","), vars.join(","))
            }
        }
    }
}
