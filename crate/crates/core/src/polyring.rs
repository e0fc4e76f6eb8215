//! Homogeneous polynomials in `x0, …, x_{k-1}` with the graded reverse
//! lexicographic order, variables ordered `x0 > x1 > …`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial::new(exps))
    }

    /// Product of the factorials of the exponents.
    pub fn factorial(&self) -> BigInt {
        self.exps.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded reverse lexicographic comparison.
pub fn grevlex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableCount(a.nvars(), b.nvars()));
    }
    Ok(grevlex(a, b))
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| {
        for (x, y) in a.exps.iter().zip(&b.exps).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                // smaller trailing exponent wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        grevlex(self, other)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `u` in `nvars` variables, grevlex-descending.
/// Empty for negative `u`.
pub fn monomial_basis(u: i64, nvars: usize) -> Vec<Monomial> {
    if u < 0 || nvars == 0 {
        return Vec::new();
    }
    let u = u as u32;
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, u, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A homogeneous polynomial; the zero polynomial still has a degree.
#[derive(Clone, Debug)]
pub struct GradedPoly<F: Field> {
    field: F,
    nvars: usize,
    degree: u32,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> GradedPoly<F> {
    pub fn zero(field: &F, nvars: usize, degree: u32) -> Self {
        GradedPoly {
            field: field.clone(),
            nvars,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, 0, vec![(Monomial::one(nvars), c)]).expect("constant")
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(field: &F, m: Monomial, c: F::Elem) -> Self {
        let (nvars, degree) = (m.nvars(), m.degree());
        Self::from_terms(field, nvars, degree, vec![(m, c)]).expect("single term")
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges, drops zeros,
    /// and checks that every monomial has the stated degree.
    pub fn from_terms(field: &F, nvars: usize, degree: u32, terms: Vec<(Monomial, F::Elem)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableCount(nvars, m.nvars()));
            }
            if m.degree() != degree {
                return Err(Error::Inhomogeneous);
            }
            match map.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        Ok(GradedPoly {
            field: field.clone(),
            nvars,
            degree,
            terms,
        })
    }

    /// Coordinates over a monomial basis of the same degree.
    pub fn from_dense(field: &F, basis: &[Monomial], coeffs: &[F::Elem]) -> Self {
        let nvars = basis.first().map_or(0, |m| m.nvars());
        let degree = basis.first().map_or(0, |m| m.degree());
        let terms = basis.iter().cloned().zip(coeffs.iter().cloned()).collect();
        Self::from_terms(field, nvars, degree, terms).expect("basis is homogeneous")
    }

    pub fn to_dense(&self, index: &std::collections::HashMap<Monomial, usize>, len: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); len];
        for (m, c) in &self.terms {
            v[index[m]] = c.clone();
        }
        v
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DomainMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableCount(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous);
        }
        let f = &self.field;
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a[i].1, &b[j].1);
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(GradedPoly {
            field: f.clone(),
            nvars: self.nvars,
            degree: self.degree,
            terms: out,
        })
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars, self.degree);
        }
        GradedPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), f.mul(x, c)))
                .filter(|(_, x)| !f.is_zero(x))
                .collect(),
            ..self.clone()
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // grevlex is a monomial order, so the sort is preserved
        GradedPoly {
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let degree = self.degree + other.degree;
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = f.mul(c1, c2);
                match map.get_mut(&m) {
                    Some(e) => *e = f.add(e, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Ok(GradedPoly {
            field: f.clone(),
            nvars: self.nvars,
            degree,
            terms: map.into_iter().rev().filter(|(_, c)| !f.is_zero(c)).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let f = &self.field;
        let degree = self.degree.saturating_sub(1);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps[i] > 0)
            .map(|(m, c)| {
                let mut e = m.exps.clone();
                let k = e[i];
                e[i] -= 1;
                (Monomial::new(e), f.mul(c, &f.from_int(k as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, degree, terms).expect("derivative stays homogeneous")
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::VariableCount(self.nvars, point.len()));
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                for _ in 0..e {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Replaces `x_var` by a linear form not involving it and drops the
    /// variable; the result lives in `nvars - 1` variables.
    pub fn substitute_linear(&self, var: usize, replacement: &Self) -> Result<Self> {
        self.check_compatible(replacement)?;
        if replacement.degree != 1 && !replacement.is_zero() {
            return Err(Error::Degree {
                expected: 1,
                found: replacement.degree as i64,
            });
        }
        if replacement.terms.iter().any(|(m, _)| m.exps[var] != 0) {
            return Err(Error::Invalid("replacement involves the eliminated variable".into()));
        }
        let f = &self.field;
        let maxe = self.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0);
        let mut powers = vec![Self::constant(f, self.nvars, f.one())];
        for k in 1..=maxe as usize {
            let next = powers[k - 1].mul(replacement)?;
            powers.push(next);
        }
        let mut acc = Self::zero(f, self.nvars, self.degree);
        for (m, c) in &self.terms {
            let k = m.exps[var] as usize;
            let mut rest = m.exps.clone();
            rest[var] = 0;
            let term = powers[k].mul_monomial(&Monomial::new(rest)).scale(c);
            let term = if term.is_zero() { Self::zero(f, self.nvars, self.degree) } else { term };
            acc = acc.add(&term)?;
        }
        let terms = acc
            .terms
            .into_iter()
            .map(|(m, c)| {
                let mut e = m.exps;
                e.remove(var);
                (Monomial::new(e), c)
            })
            .collect();
        Self::from_terms(f, self.nvars - 1, self.degree, terms)
    }

    /// Coefficient-wise change of domain.
    pub fn map_field<G: Field>(&self, to: &G, mut map: impl FnMut(&F::Elem) -> G::Elem) -> GradedPoly<G> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), map(c))).collect();
        GradedPoly::from_terms(to, self.nvars, self.degree, terms).expect("same monomials")
    }

    /// Variables are renumbered by `map[i]` into a ring with `nvars` variables.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exps.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Self::from_terms(&self.field, nvars, self.degree, terms).expect("renaming keeps degree")
    }
}

impl<F: Field> PartialEq for GradedPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.nvars == other.nvars
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((m1, c1), (m2, c2))| m1 == m2 && self.field.elem_eq(c1, c2))
    }
}

impl<F: Field> fmt::Display for GradedPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let fld = &self.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = fld.render(c);
            let compound = fld.is_compound(c);
            let negative = !compound && cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let cs = if compound { format!("({cs})") } else { cs };
            if m.degree() == 0 {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{cs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Options for [`parse_poly`].
#[derive(Clone, Debug)]
pub struct ParseOptions<E> {
    /// Number of variables; `None` infers it from the highest index used.
    pub nvars: Option<usize>,
    /// Value of the symbol `t`, if the domain has one.
    pub param: Option<E>,
}

impl<E> Default for ParseOptions<E> {
    fn default() -> Self {
        ParseOptions { nvars: None, param: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Param,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            out.push(Tok::Num(n.parse().expect("digits")));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = cs[st..i].iter().collect();
            let dst = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let idx: String = cs[dst..i].iter().collect();
            let tok = match (name.as_str(), idx.is_empty()) {
                ("x", false) => Tok::Var(idx.parse().map_err(|_| Error::Parse(format!("bad index {idx}")))?),
                ("x", true) => Tok::Var(0),
                ("y", true) => Tok::Var(1),
                ("z", true) => Tok::Var(2),
                ("w", true) => Tok::Var(3),
                ("t", true) => Tok::Param,
                _ => return Err(Error::Parse(format!("unknown symbol `{name}{idx}`"))),
            };
            out.push(tok);
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Sparse, possibly inhomogeneous intermediate used while parsing.
type Sparse<E> = BTreeMap<Vec<u32>, E>;

struct Parser<'a, F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a F,
    param: Option<F::Elem>,
    nvars: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn constant(&self, c: F::Elem) -> Sparse<F::Elem> {
        let mut m = Sparse::new();
        if !self.field.is_zero(&c) {
            m.insert(vec![0; self.nvars], c);
        }
        m
    }

    fn add(&self, mut a: Sparse<F::Elem>, b: Sparse<F::Elem>, sign: bool) -> Sparse<F::Elem> {
        let f = self.field;
        for (k, v) in b {
            let v = if sign { v } else { f.neg(&v) };
            let e = a.entry(k).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
        }
        a.retain(|_, v| !f.is_zero(v));
        a
    }

    fn mul(&self, a: &Sparse<F::Elem>, b: &Sparse<F::Elem>) -> Sparse<F::Elem> {
        let f = self.field;
        let mut out: Sparse<F::Elem> = Sparse::new();
        for (ka, va) in a {
            for (kb, vb) in b {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let e = out.entry(k).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(va, vb));
            }
        }
        out.retain(|_, v| !f.is_zero(v));
        out
    }

    fn expr(&mut self) -> Result<Sparse<F::Elem>> {
        let mut sign = true;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            sign = *c == '+';
            self.pos += 1;
        }
        let t = self.term()?;
        let mut acc = self.add(Sparse::new(), t, sign);
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let s = *c == '+';
            self.pos += 1;
            let t = self.term()?;
            acc = self.add(acc, t, s);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse<F::Elem>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let b = self.factor()?;
                    acc = self.mul(&acc, &b);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let b = self.factor()?;
                    let zero = vec![0u32; self.nvars];
                    let c = match (b.len(), b.get(&zero)) {
                        (1, Some(c)) => c.clone(),
                        _ => return Err(Error::Parse("can only divide by a nonzero constant".into())),
                    };
                    let inv = self.field.inv(&c).ok_or(Error::DivisionByZero)?;
                    acc = self.mul(&acc, &self.constant(inv));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse<F::Elem>> {
        let base = self.base()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let k = match self.peek() {
                Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?,
                _ => return Err(Error::Parse("expected exponent".into())),
            };
            self.pos += 1;
            let mut acc = self.constant(self.field.one());
            for _ in 0..k {
                acc = self.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Sparse<F::Elem>> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.constant(self.field.from_rational(&num_rational::BigRational::from_integer(n)))),
            Tok::Var(i) => {
                if i >= self.nvars {
                    return Err(Error::Parse(format!("variable x{i} out of range")));
                }
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                let mut m = Sparse::new();
                m.insert(e, self.field.one());
                Ok(m)
            }
            Tok::Param => match &self.param {
                Some(p) => Ok(self.constant(p.clone())),
                None => Err(Error::Parse("symbol `t` is not defined for this coefficient domain".into())),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Parse("expected `)`".into())),
                }
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

/// Parses a homogeneous polynomial such as `x0^4 + 3/2*x0*x1^3 - (1+t)*x2^4`.
/// `x, y, z, w` are accepted as aliases of `x0..x3`.
pub fn parse_poly<F: Field>(field: &F, s: &str, opts: &ParseOptions<F::Elem>) -> Result<GradedPoly<F>> {
    let (nvars, sparse) = parse_sparse(field, s, opts)?;
    let degree = sparse.first().map_or(0, |(k, _)| k.iter().sum());
    let terms = sparse.into_iter().map(|(k, v)| (Monomial::new(k), v)).collect();
    GradedPoly::from_terms(field, nvars, degree, terms)
}

/// Parses without the homogeneity requirement; returns the variable count and
/// the nonzero terms as exponent vectors.
pub fn parse_sparse<F: Field>(field: &F, s: &str, opts: &ParseOptions<F::Elem>) -> Result<(usize, Vec<(Vec<u32>, F::Elem)>)> {
    let toks = tokenize(s)?;
    let used = toks
        .iter()
        .filter_map(|t| match t {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let nvars = match opts.nvars {
        Some(n) if n < used => return Err(Error::Parse(format!("uses {used} variables but only {n} allowed"))),
        Some(n) => n,
        None => used,
    };
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        param: opts.param.clone(),
        nvars,
    };
    let sparse = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok((nvars, sparse.into_iter().collect()))
}

/// Rational polynomial from text.
pub fn parse_rational_poly(s: &str, nvars: Option<usize>) -> Result<GradedPoly<Rationals>> {
    parse_poly(&Rationals, s, &ParseOptions { nvars, param: None })
}
