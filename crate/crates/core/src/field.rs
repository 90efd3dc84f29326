//! Exact arithmetic in prime fields and their extensions.
//!
//! A [`Field`] is a cheap shared handle describing `F_{p^k}` as
//! `F_p[w]/(m(w))` for a monic irreducible modulus `m`. Elements carry their
//! coefficient vector in the power basis `1, w, ..., w^{k-1}` together with
//! the owning handle, so elements of different fields are never mixed
//! silently: arithmetic between mismatched fields returns
//! [`Error::MixedFields`].
//!
//! Field orders are capped (default `2^20`) because everything downstream of
//! this crate enumerates grids exhaustively; rejecting infeasible inputs at
//! construction beats timing out later.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on the field order `p^k`.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldData {
    p: u64,
    k: u32,
    /// `k+1` coefficients, constant term first, last entry 1 (monic).
    modulus: Vec<u64>,
    order: u64,
    /// Whether `modulus` is the default one for `(p, k)`.
    default_modulus: bool,
}

/// Handle to a finite field `F_{p^k}`.
///
/// Cloning is cheap (an `Arc` bump). Two handles compare equal when they
/// describe the same field with the same modulus, even if constructed
/// independently.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldData>);

/// An element of a [`Field`], stored as reduced coefficients in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(p: u64, k: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

// --- univariate polynomial helpers over F_p, little-endian coefficient vectors ---

fn upoly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo monic `m` over `F_p`.
fn upoly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate().take(dm) {
                let idx = shift + j;
                r[idx] = (r[idx] + c * (p - mj) % p) % p;
            }
        }
        r.pop();
        upoly_trim(&mut r);
    }
    r
}

/// Irreducibility over `F_p` by trial division with all monic polynomials of
/// degree up to `deg(m)/2`. Fine at desk scale: the field-order cap keeps the
/// divisor count below `p^{k/2} <= 2^10`.
fn upoly_is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = checked_pow(p, d as u32).expect("divisor space within cap");
        for n in 0..count {
            // Monic candidate of degree d with lower coefficients the base-p
            // digits of n.
            let mut g = vec![0u64; d + 1];
            let mut t = n;
            for gj in g.iter_mut().take(d) {
                *gj = t % p;
                t /= p;
            }
            g[d] = 1;
            if upoly_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The default modulus for `F_{p^k}`: the first monic irreducible polynomial
/// of degree `k` when the non-leading coefficients `(m_0, ..., m_{k-1})` are
/// read as a base-`p` integer with `m_i` the digit of `p^i` and candidates
/// are tried in increasing value.
fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let count = checked_pow(p, k as u32).expect("within cap");
    for n in 0..count {
        let mut m = vec![0u64; k + 1];
        let mut t = n;
        for mj in m.iter_mut().take(k) {
            *mj = t % p;
            t /= p;
        }
        m[k] = 1;
        if upoly_is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of degree {} over F_{} exists", k, p)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None, DEFAULT_ORDER_CAP)
    }

    /// The extension field `F_{p^k}` with the default modulus.
    pub fn extension(p: u64, k: u32) -> Result<Field> {
        Field::new(p, k, None, DEFAULT_ORDER_CAP)
    }

    /// The extension field `F_{p^k}` with an explicit modulus given as `k+1`
    /// coefficients, constant term first.
    pub fn with_modulus(p: u64, k: u32, modulus: Vec<u64>) -> Result<Field> {
        Field::new(p, k, Some(modulus), DEFAULT_ORDER_CAP)
    }

    fn new(p: u64, k: u32, modulus: Option<Vec<u64>>, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::InvalidModulus("extension degree must be >= 1".into()));
        }
        let order = match checked_pow(p, k) {
            Some(o) if o <= cap => o,
            Some(o) => return Err(Error::FieldTooLarge { order: o as u128, cap }),
            None => {
                let order = (0..k)
                    .try_fold(1u128, |acc, _| acc.checked_mul(p as u128))
                    .unwrap_or(u128::MAX);
                return Err(Error::FieldTooLarge { order, cap });
            }
        };
        let (modulus, default) = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        k + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficients must lie in [0, {})",
                        p
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !upoly_is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus(format!(
                        "polynomial is reducible over F_{}",
                        p
                    )));
                }
                let default = m == default_modulus(p, k);
                (m, default)
            }
            None => (default_modulus(p, k), true),
        };
        Ok(Field(Arc::new(FieldData {
            p,
            k,
            modulus,
            order,
            default_modulus: default,
        })))
    }

    /// Parses a field description: `p`, `p^k`, or `p^k/m0,m1,...,mk` with the
    /// modulus coefficients constant term first.
    pub fn parse(s: &str) -> Result<Field> {
        Field::parse_with_cap(s, DEFAULT_ORDER_CAP)
    }

    /// Like [`Field::parse`] with a custom order cap.
    pub fn parse_with_cap(s: &str, cap: u64) -> Result<Field> {
        let s = s.trim();
        let (base, modulus) = match s.split_once('/') {
            Some((b, m)) => (b, Some(m)),
            None => (s, None),
        };
        let (p_str, k_str) = match base.split_once('^') {
            Some((p, k)) => (p, Some(k)),
            None => (base, None),
        };
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse { pos: 0, msg: format!("invalid characteristic `{}`", p_str) })?;
        let k: u32 = match k_str {
            Some(k) => k.trim().parse().map_err(|_| Error::Parse {
                pos: base.find('^').unwrap_or(0) + 1,
                msg: format!("invalid extension degree `{}`", k),
            })?,
            None => 1,
        };
        let modulus = match modulus {
            Some(m) => {
                let coeffs: Result<Vec<u64>> = m
                    .split(',')
                    .map(|c| {
                        c.trim().parse().map_err(|_| Error::Parse {
                            pos: s.find('/').unwrap_or(0) + 1,
                            msg: format!("invalid modulus coefficient `{}`", c),
                        })
                    })
                    .collect();
                Some(coeffs?)
            }
            None => None,
        };
        Field::new(p, k, modulus, cap)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.k
    }

    /// The number of elements `p^k`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Modulus coefficients, constant term first; length `k+1`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Canonical text form accepted back by [`Field::parse`].
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            self.0.p.to_string()
        } else if self.0.default_modulus {
            format!("{}^{}", self.0.p, self.0.k)
        } else {
            let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", self.0.p, self.0.k, coeffs.join(","))
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    /// The image of an integer under the ring map `Z -> F_{p^k}`.
    pub fn from_integer(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        let c = n.rem_euclid(p) as u64;
        let mut coeffs = vec![0; self.0.k as usize];
        coeffs[0] = c;
        FieldElement { field: self.clone(), coeffs }
    }

    /// The modulus root `w`. Only defined for extension fields.
    pub fn generator(&self) -> Result<FieldElement> {
        if self.0.k < 2 {
            return Err(Error::InvalidElement(
                "generator `w` only exists in extension fields".into(),
            ));
        }
        let mut coeffs = vec![0; self.0.k as usize];
        coeffs[1] = 1;
        Ok(FieldElement { field: self.clone(), coeffs })
    }

    /// Builds an element from coefficients `c_0 + c_1 w + ...`; shorter
    /// vectors are zero-padded.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::InvalidElement(format!(
                "expected at most {} coefficients, got {}",
                self.0.k,
                coeffs.len()
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(self.0.k as usize, 0);
        for x in c.iter_mut() {
            *x %= self.0.p;
        }
        Ok(FieldElement { field: self.clone(), coeffs: c })
    }

    /// The `idx`-th element in enumeration order: the base-`p` digits of
    /// `idx`, least significant digit as the constant coefficient.
    pub fn element_from_index(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.0.order {
            return Err(Error::InvalidElement(format!(
                "index {} out of range for order {}",
                idx, self.0.order
            )));
        }
        let mut coeffs = vec![0; self.0.k as usize];
        let mut t = idx;
        for c in coeffs.iter_mut() {
            *c = t % self.0.p;
            t /= self.0.p;
        }
        Ok(FieldElement { field: self.clone(), coeffs })
    }

    /// All `p^k` elements exactly once, in index order. For `F_4` this is
    /// `0, 1, w, w+1`.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.0.order)
            .map(|i| self.element_from_index(i).expect("index in range"))
            .collect()
    }

    /// Parses an element: integers for prime fields, polynomial expressions
    /// in the generator `w` for extensions (`w+1`, `2*w^2+1`).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let bytes: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut acc = self.zero();
        let mut first = true;
        loop {
            skip_ws(&bytes, &mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(Error::Parse { pos, msg: "empty element".into() });
                }
                break;
            }
            let mut negate = false;
            if bytes[pos] == '+' || bytes[pos] == '-' {
                negate = bytes[pos] == '-';
                pos += 1;
            } else if !first {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected `+` or `-`, found `{}`", bytes[pos]),
                });
            }
            let term = self.parse_element_term(&bytes, &mut pos)?;
            acc = if negate {
                acc.sub(&term).expect("same field")
            } else {
                acc.add(&term).expect("same field")
            };
            first = false;
        }
        Ok(acc)
    }

    fn parse_element_term(&self, bytes: &[char], pos: &mut usize) -> Result<FieldElement> {
        let mut value = self.one();
        loop {
            skip_ws(bytes, pos);
            if *pos >= bytes.len() {
                return Err(Error::Parse { pos: *pos, msg: "expected a factor".into() });
            }
            let c = bytes[*pos];
            let factor = if c.is_ascii_digit() {
                let n = parse_uint(bytes, pos)?;
                self.from_integer((n % self.0.p) as i64)
            } else if c == 'w' {
                *pos += 1;
                let e = parse_opt_exponent(bytes, pos)?;
                let gen = self.generator().map_err(|_| Error::Parse {
                    pos: *pos - 1,
                    msg: "generator `w` only exists in extension fields".into(),
                })?;
                gen.pow(e)
            } else {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: format!("unexpected character `{}`", c),
                });
            };
            value = value.mul(&factor).expect("same field");
            skip_ws(bytes, pos);
            if *pos < bytes.len() && bytes[*pos] == '*' {
                *pos += 1;
            } else {
                break;
            }
        }
        Ok(value)
    }
}

fn skip_ws(bytes: &[char], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_uint(bytes: &[char], pos: &mut usize) -> Result<u64> {
    let start = *pos;
    let mut n: u64 = 0;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        n = n
            .checked_mul(10)
            .and_then(|n| n.checked_add(bytes[*pos] as u64 - '0' as u64))
            .ok_or(Error::Parse { pos: start, msg: "integer literal too large".into() })?;
        *pos += 1;
    }
    if *pos == start {
        return Err(Error::Parse { pos: start, msg: "expected an integer".into() });
    }
    Ok(n)
}

fn parse_opt_exponent(bytes: &[char], pos: &mut usize) -> Result<u64> {
    skip_ws(bytes, pos);
    if *pos < bytes.len() && bytes[*pos] == '^' {
        *pos += 1;
        skip_ws(bytes, pos);
        parse_uint(bytes, pos)
    } else {
        Ok(1)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients in the power basis, constant term first; length `k`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Position in the field's enumeration order.
    pub fn index(&self) -> u64 {
        let p = self.field.0.p;
        let mut idx = 0u64;
        for &c in self.coeffs.iter().rev() {
            idx = idx * p + c;
        }
        idx
    }

    fn check_same(&self, rhs: &FieldElement) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs)?;
        let p = self.field.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs)?;
        let p = self.field.0.p;
        let k = self.field.0.k as usize;
        // Schoolbook product, then reduction by the monic modulus. With the
        // order cap, k*p^2 stays far below u64 overflow.
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let modulus = &self.field.0.modulus;
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for (j, &mj) in modulus.iter().enumerate().take(k) {
                    let idx = i - k + j;
                    prod[idx] = (prod[idx] + c * (p - mj) % p) % p;
                }
            }
        }
        prod.truncate(k);
        Ok(FieldElement { field: self.field.clone(), coeffs: prod })
    }

    /// Repeated-squaring power; `0^0 = 1` by convention so that monomial
    /// evaluation at points with zero coordinates matches polynomial-function
    /// semantics.
    pub fn pow(&self, e: u64) -> FieldElement {
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        result
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.0.order - 2))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.mul(&rhs.inv()?)
    }

    /// Relative trace to the subfield `F_{p^d}`:
    /// the sum of the conjugates `a^{(p^d)^i}` for `i < k/d`.
    pub fn trace_to_subfield(&self, sub_degree: u32) -> Result<FieldElement> {
        let q_sub = self.subfield_order(sub_degree)?;
        let steps = self.field.0.k / sub_degree;
        let mut conj = self.clone();
        let mut acc = self.clone();
        for _ in 1..steps {
            conj = conj.pow(q_sub);
            acc = acc.add(&conj).expect("same field");
        }
        // The result must be fixed by the subfield Frobenius.
        assert_eq!(acc.pow(q_sub), acc, "trace landed outside the subfield");
        Ok(acc)
    }

    /// Relative norm to the subfield `F_{p^d}`: the product of the conjugates.
    pub fn norm_to_subfield(&self, sub_degree: u32) -> Result<FieldElement> {
        let q_sub = self.subfield_order(sub_degree)?;
        let steps = self.field.0.k / sub_degree;
        let mut conj = self.clone();
        let mut acc = self.clone();
        for _ in 1..steps {
            conj = conj.pow(q_sub);
            acc = acc.mul(&conj).expect("same field");
        }
        assert_eq!(acc.pow(q_sub), acc, "norm landed outside the subfield");
        Ok(acc)
    }

    fn subfield_order(&self, sub_degree: u32) -> Result<u64> {
        let k = self.field.0.k;
        if sub_degree == 0 || !k.is_multiple_of(sub_degree) {
            return Err(Error::InvalidSubfield {
                sub_degree,
                extension_degree: k,
            });
        }
        Ok(checked_pow(self.field.0.p, sub_degree).expect("within cap"))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.order)?;
        if self.0.k > 1 {
            write!(f, " ({})", self.spec_string())?;
        }
        Ok(())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.k == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "w")?,
                (1, _) => write!(f, "w^{}", i)?,
                (_, 1) => write!(f, "{}*w", c)?,
                (_, _) => write!(f, "{}*w^{}", c, i)?,
            }
        }
        Ok(())
    }
}
