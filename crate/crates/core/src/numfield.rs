//! Number fields `Q[t]/(m(t))` with a chosen complex embedding.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{BigComplex, ComplexField, Real};
use crate::error::{Error, Result};
use crate::field::{common_denominator, render_rational, ExactField, Field, Rationals};
use crate::lattice::AlgebraicNumber;
use crate::polyring::{parse_sparse, ParseOptions};

/// Dense univariate polynomial over the rationals, ascending coefficients,
/// no trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    c: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_ints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// Parses a polynomial in `t`, e.g. `t^4 + 1` or `2*t - 1/3`.
    pub fn parse(s: &str) -> Result<Self> {
        let text = s.replace('t', "x0");
        let (_, terms) = parse_sparse(&Rationals, &text, &ParseOptions { nvars: Some(1), param: None })?;
        let deg = terms.iter().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
        let mut c = vec![BigRational::zero(); deg + 1];
        for (e, v) in terms {
            c[e[0] as usize] = v;
        }
        Ok(Self::new(c))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn divrem(&self, o: &Self) -> Result<(Self, Self)> {
        let od = o.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= od {
            return Ok((Self::new(vec![]), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - od];
        let lead = o.lead();
        for i in (0..q.len()).rev() {
            let k = &r[i + od] / &lead;
            if !k.is_zero() {
                for (j, b) in o.c.iter().enumerate() {
                    r[i + j] -= &k * b;
                }
            }
            q[i] = k;
        }
        r.truncate(od);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().recip();
        a.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, cf: &ComplexField, z: &BigComplex) -> BigComplex {
        self.c
            .iter()
            .rev()
            .fold(cf.zero(), |acc, c| cf.add(&cf.mul(&acc, z), &cf.from_rational(c)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = common_denominator(self.c.iter());
        let mut v: Vec<BigInt> = self.c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() {
            v.iter_mut().for_each(|x| *x = &*x / &g);
        }
        if v.last().is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        v
    }

    pub fn render(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = render_rational(&c.abs());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a);
            } else if a == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn real_to_f64(x: &Real) -> f64 {
    crate::bigfloat::real_to_rational(x).to_f64().unwrap_or(f64::NAN)
}

/// All complex roots of a squarefree polynomial to `digits` digits, ordered
/// by real part and then imaginary part.
///
/// Simultaneous Aberth iteration at a moderate working precision, then
/// Newton polishing with precision doubling. Each final root is checked to be
/// the unique root in its isolation disk (half the distance to the nearest
/// other root) through the inclusion bound `deg * |p / p'|`.
pub fn complex_roots(p: &UniPoly, digits: usize) -> Result<Vec<BigComplex>> {
    let approx = aberth(p)?;
    let n = approx.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r = isolation_of(&approx, i);
        out.push(polish(p, &approx[i], r, digits)?);
    }
    let cf = ComplexField::with_digits(digits);
    out.sort_by(|a, b| cmp_complex(&cf, a, b));
    Ok(out)
}

fn cmp_complex(cf: &ComplexField, a: &BigComplex, b: &BigComplex) -> std::cmp::Ordering {
    // treat parts equal to within the working precision as ties
    let tol = cf.pow10(-(cf.digits() as i64) / 2);
    let close = |x: &Real, y: &Real| cf.rsub(x, y).abs() < tol;
    if !close(&a.re, &b.re) {
        return a.re.partial_cmp(&b.re).unwrap();
    }
    if !close(&a.im, &b.im) {
        return a.im.partial_cmp(&b.im).unwrap();
    }
    std::cmp::Ordering::Equal
}

use dashu_base::Abs;

struct Approx {
    z: BigComplex,
}

fn isolation_of(roots: &[Approx], i: usize) -> f64 {
    let (xi, yi) = roots[i].z.to_f64_pair();
    roots
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, r)| {
            let (x, y) = r.z.to_f64_pair();
            ((x - xi).powi(2) + (y - yi).powi(2)).sqrt() / 2.0
        })
        .fold(f64::INFINITY, f64::min)
}

fn aberth(p: &UniPoly) -> Result<Vec<Approx>> {
    let n = p.degree().ok_or(Error::Invalid("zero polynomial".into()))?;
    if n == 0 {
        return Ok(vec![]);
    }
    let work = 40 + 2 * n;
    let cf = ComplexField::with_digits(work);
    let dp = p.derivative();
    let lead = p.lead().abs().to_f64().unwrap_or(1.0);
    // Fujiwara-style radius for the initial circle
    let radius = (0..n)
        .map(|i| {
            let c = p.c[i].abs().to_f64().unwrap_or(0.0) / lead;
            2.0 * c.powf(1.0 / (n - i) as f64)
        })
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let r = radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64);
            cf.complex(&f64_to_rational(r * th.cos()), &f64_to_rational(r * th.sin()))
        })
        .collect();
    let tol = cf.pow10(-((work / 2) as i64));
    for _ in 0..2000 {
        let mut worst = cf.real_from_int(&BigInt::zero());
        for k in 0..n {
            let pv = p.eval_complex(&cf, &z[k]);
            if pv.is_zero() {
                continue;
            }
            let dv = dp.eval_complex(&cf, &z[k]);
            let Some(w) = cf.div(&pv, &dv) else { continue };
            let mut s = cf.zero();
            for j in 0..n {
                if j != k {
                    let diff = cf.sub(&z[k], &z[j]);
                    if let Some(inv) = cf.inv(&diff) {
                        s = cf.add(&s, &inv);
                    }
                }
            }
            let denom = cf.sub(&cf.one(), &cf.mul(&w, &s));
            let step = cf.div(&w, &denom).unwrap_or(w);
            let scale = cf.radd(&cf.abs(&z[k]), &cf.real_from_int(&BigInt::one()));
            let rel = cf.rdiv(&cf.abs(&step), &scale);
            if rel > worst {
                worst = rel;
            }
            z[k] = cf.sub(&z[k], &step);
        }
        if worst < tol {
            return Ok(z.into_iter().map(|z| Approx { z }).collect());
        }
    }
    Err(Error::Precision("root iteration did not converge".into()))
}

fn polish(p: &UniPoly, start: &Approx, radius: f64, digits: usize) -> Result<BigComplex> {
    let n = p.degree().unwrap_or(0) as f64;
    let dp = p.derivative();
    let mut cur_digits = 40usize;
    let mut z = start.z.clone();
    let origin = start.z.clone();
    loop {
        cur_digits = (cur_digits * 2).min(digits + 10);
        let cf = ComplexField::with_digits(cur_digits);
        z = cf.coerce(&z);
        for _ in 0..4 {
            let pv = p.eval_complex(&cf, &z);
            let dv = dp.eval_complex(&cf, &z);
            let Some(step) = cf.div(&pv, &dv) else { break };
            z = cf.sub(&z, &step);
        }
        if cur_digits == digits + 10 {
            let pv = p.eval_complex(&cf, &z);
            let dv = dp.eval_complex(&cf, &z);
            let step = cf.div(&pv, &dv).ok_or(Error::IsolationLost)?;
            let incl = n * real_to_f64(&cf.abs(&step));
            let moved = real_to_f64(&cf.abs(&cf.sub(&z, &cf.coerce(&origin))));
            if !(incl + moved < radius) {
                return Err(Error::IsolationLost);
            }
            return Ok(ComplexField::with_digits(digits).coerce(&z));
        }
    }
}

/// Half the distance from the root nearest `approx` to the other roots,
/// after checking that `approx` lies inside that disk.
pub fn isolation_radius(minpoly: &[BigInt], approx: &BigComplex, digits: usize) -> Result<f64> {
    let p = UniPoly::from_ints(minpoly);
    let roots = aberth(&p)?;
    let (ax, ay) = approx.to_f64_pair();
    let dist = |z: &BigComplex| {
        let (x, y) = z.to_f64_pair();
        ((x - ax).powi(2) + (y - ay).powi(2)).sqrt()
    };
    let (i, _) = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, dist(&r.z)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::Invalid("constant polynomial".into()))?;
    let r = isolation_of(&roots, i);
    let root = polish(&p, &roots[i], r, digits.max(20))?;
    if dist(&root) >= r {
        return Err(Error::IsolationLost);
    }
    Ok(r)
}

struct NfInner {
    m: UniPoly,
    deg: usize,
    // t^(deg + k) mod m for k = 0..deg-1
    reductions: Vec<Vec<BigRational>>,
    root: BigComplex,
    radius: f64,
    refined: Mutex<HashMap<usize, Arc<OnceLock<Result<BigComplex>>>>>,
}

/// `Q[t]/(m)` for squarefree `m`, embedded by a chosen root. Zero divisors
/// exist when `m` is reducible; `inv` then returns `None` for them.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<NfInner>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({} ~ {})", self.inner.m, self.inner.root)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &o.inner) {
            return true;
        }
        let (a, b) = (self.inner.root.to_f64_pair(), o.inner.root.to_f64_pair());
        let d = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
        self.modulus_monic() == o.modulus_monic() && d < self.inner.radius.min(o.inner.radius)
    }
}

impl NumberField {
    /// The root closest to `hint` is the embedding; without a hint, the
    /// last root in (real part, imaginary part) order.
    pub fn new(m: UniPoly, hint: Option<&BigComplex>) -> Result<Self> {
        let deg = m.degree().ok_or(Error::Invalid("zero modulus".into()))?;
        if deg == 0 {
            return Err(Error::Invalid("constant modulus".into()));
        }
        if !m.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let m = m.scale(&m.lead().recip());
        let approx = aberth(&m)?;
        let idx = match hint {
            Some(h) => {
                let (hx, hy) = h.to_f64_pair();
                (0..deg)
                    .min_by(|&a, &b| {
                        let da = approx[a].z.to_f64_pair();
                        let db = approx[b].z.to_f64_pair();
                        let fa = (da.0 - hx).powi(2) + (da.1 - hy).powi(2);
                        let fb = (db.0 - hx).powi(2) + (db.1 - hy).powi(2);
                        fa.total_cmp(&fb)
                    })
                    .unwrap()
            }
            None => {
                let cf = ComplexField::with_digits(40);
                (0..deg)
                    .max_by(|&a, &b| cmp_complex(&cf, &approx[a].z, &approx[b].z))
                    .unwrap()
            }
        };
        let radius = isolation_of(&approx, idx);
        let root = polish(&m, &approx[idx], radius, 40)?;
        let mut reductions = Vec::with_capacity(deg);
        // t^deg = -(m_0 + ... + m_{deg-1} t^{deg-1})
        let mut cur: Vec<BigRational> = m.c[..deg].iter().map(|x| -x).collect();
        for _ in 0..deg {
            reductions.push(cur.clone());
            // multiply by t
            let top = cur[deg - 1].clone();
            let mut next = vec![BigRational::zero(); deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..deg {
                next[i] += &top * &reductions[0][i];
            }
            cur = next;
        }
        Ok(NumberField {
            inner: Arc::new(NfInner {
                m,
                deg,
                reductions,
                root,
                radius: if radius.is_finite() { radius } else { f64::MAX },
                refined: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn parse(s: &str, hint: Option<&BigComplex>) -> Result<Self> {
        Self::new(UniPoly::parse(s)?, hint)
    }

    pub fn from_algebraic(a: &AlgebraicNumber) -> Result<Self> {
        Self::new(UniPoly::from_ints(&a.minpoly), Some(&a.approx))
    }

    /// The rationals as a degree-one field.
    pub fn rationals() -> Self {
        Self::new(UniPoly::from_i64(&[0, 1]), None).expect("t is squarefree")
    }

    pub fn degree(&self) -> usize {
        self.inner.deg
    }

    pub fn modulus_monic(&self) -> &UniPoly {
        &self.inner.m
    }

    pub fn isolation_radius(&self) -> f64 {
        self.inner.radius
    }

    pub fn gen(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.inner.deg];
        if self.inner.deg == 1 {
            v[0] = -&self.inner.m.c[0];
        } else {
            v[1] = BigRational::one();
        }
        v
    }

    pub fn from_poly(&self, p: &UniPoly) -> Vec<BigRational> {
        let r = p.divrem(&self.inner.m).expect("nonzero modulus").1;
        let mut v = r.c;
        v.resize(self.inner.deg, BigRational::zero());
        v
    }

    pub fn to_poly(&self, a: &[BigRational]) -> UniPoly {
        UniPoly::new(a.to_vec())
    }

    /// The embedding root refined to `digits`, cached per precision.
    pub fn root(&self, digits: usize) -> Result<BigComplex> {
        let cell = {
            let mut map = self.inner.refined.lock().expect("root cache poisoned");
            map.entry(digits).or_default().clone()
        };
        cell.get_or_init(|| {
            polish(
                &self.inner.m,
                &Approx {
                    z: self.inner.root.clone(),
                },
                self.inner.radius,
                digits,
            )
        })
        .clone()
    }

    pub fn embed(&self, a: &[BigRational], digits: usize) -> Result<BigComplex> {
        let cf = ComplexField::with_digits(digits);
        let r = self.root(digits)?;
        Ok(self.to_poly(a).eval_complex(&cf, &r))
    }

    pub fn conjugate_embeddings(&self, digits: usize) -> Result<Vec<BigComplex>> {
        complex_roots(&self.inner.m, digits)
    }
}

impl Field for NumberField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        vec![BigRational::zero(); self.inner.deg]
    }
    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = self.inner.deg;
        let mut full = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = full[..n].to_vec();
        for k in 0..n - 1 {
            let c = &full[n + k];
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.inner.reductions[k]) {
                *o += c * r;
            }
        }
        out
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        // extended Euclid on (m, a)
        let (mut r0, mut r1) = (self.inner.m.clone(), self.to_poly(a));
        let (mut s0, mut s1) = (UniPoly::new(vec![]), UniPoly::from_i64(&[1]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let k = r0.lead().recip();
        Some(self.from_poly(&s0.scale(&k)))
    }
    fn from_rational(&self, q: &BigRational) -> Self::Elem {
        let mut v = self.zero();
        v[0] = q.clone();
        v
    }
    fn render(&self, a: &Self::Elem) -> String {
        self.to_poly(a).render("t")
    }
    fn is_compound(&self, a: &Self::Elem) -> bool {
        a.iter().filter(|x| !x.is_zero()).count() > 1
    }
}

impl ExactField for NumberField {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn gaussian_and_sqrt2_arithmetic() {
        let k = NumberField::parse("t^2+1", None).unwrap();
        let t = k.gen();
        assert_eq!(k.mul(&t, &t), k.from_int(-1));
        let k2 = NumberField::parse("t^2-2", None).unwrap();
        let t = k2.gen();
        assert_eq!(k2.inv(&t).unwrap(), vec![int(0), rat(1, 2)]);
        assert!(NumberField::parse("t^2", None).is_err());
    }

    #[test]
    fn embeddings_of_small_fields() {
        let k = NumberField::parse("t^2-2", None).unwrap();
        let e = k.embed(&k.gen(), 30).unwrap();
        assert!(crate::bigfloat::format_real(&e.re, 10).starts_with("1.414213562"));
        let roots = k.conjugate_embeddings(30).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].re < roots[1].re);
        let k4 = NumberField::parse("t^4+1", None).unwrap();
        let r4 = k4.conjugate_embeddings(40).unwrap();
        assert_eq!(r4.len(), 4);
        for z in &r4 {
            let (x, y) = z.to_f64_pair();
            assert!((x.abs() - 0.5f64.sqrt()).abs() < 1e-12 && (y.abs() - 0.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn univariate_parse_and_gcd() {
        let p = UniPoly::parse("t^3 - 2*t + 1/2").unwrap();
        assert_eq!(p.render("t"), "t^3 - 2*t + 1/2");
        let a = UniPoly::parse("t^2-1").unwrap();
        let b = UniPoly::parse("t^2+2*t+1").unwrap();
        assert_eq!(a.gcd(&b), UniPoly::parse("t+1").unwrap());
        assert!(!UniPoly::parse("(t-1)^2*(t+2)").unwrap().is_squarefree());
    }

    fn elem(deg: usize) -> impl Strategy<Value = Vec<BigRational>> {
        proptest::collection::vec((-20i64..=20, 1i64..=5), deg).prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn field_axioms(a in elem(4), b in elem(4), c in elem(4)) {
            let k = NumberField::parse("t^4+1", None).unwrap();
            prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            if !k.is_zero(&a) {
                prop_assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
            // fourth power computed two ways
            let a2 = k.mul(&a, &a);
            let via_poly = k.from_poly(&k.to_poly(&a).mul(&k.to_poly(&a)).mul(&k.to_poly(&a2)));
            prop_assert_eq!(k.mul(&a2, &a2), via_poly);
        }

        #[test]
        fn embedding_is_a_homomorphism(a in elem(3), b in elem(3)) {
            let k = NumberField::parse("t^3-2", None).unwrap();
            let d = 40;
            let cf = ComplexField::with_digits(d);
            let tol = cf.pow10(-(d as i64) + 5);
            let ea = k.embed(&a, d).unwrap();
            let eb = k.embed(&b, d).unwrap();
            prop_assert!(cf.approx_eq(&k.embed(&k.mul(&a, &b), d).unwrap(), &cf.mul(&ea, &eb), &tol));
            prop_assert!(cf.approx_eq(&k.embed(&k.add(&a, &b), d).unwrap(), &cf.add(&ea, &eb), &tol));
        }
    }
}
