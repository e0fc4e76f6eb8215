//! Period data: the text file format, Hodge-cycle detection by integer
//! relations, and the linear functionals on `R_{D_mid}` that drive ideal
//! reconstruction, both from periods and from known complete intersections.
//!
//! File layout (line oriented, `#` starts a comment):
//!
//! ```text
//! format: pcr-periods v1
//! n: 2
//! d: 4
//! f: x0^4 + x1^4 + x2^4 + x3^4
//! digits: 200
//! row_degrees: 0 4 8
//! row_counts: 1 19 1
//! s: 21
//! <s lines of s entries "re,im">
//! intersection:        (optional)
//! <s lines of s integers>
//! h_square: 4          (optional)
//! ```
//!
//! Rows are grouped by level `l = 0..=n` in ascending order and, within a
//! group, follow the grevlex-descending standard monomials of `R_{N + l d}`.
//! Columns are an integral basis of primitive middle homology. Every entry
//! carries at least `digits` significant digits (exact zeros may be `0`).

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigfloat::{format_rational_sci, parse_decimal, real_to_rational, BigComplex, ComplexField, Real};
use crate::error::{Error, Result};
use crate::field::{ExactField, Field, Rationals};
use crate::jacring::Hypersurface;
use crate::lattice::{hnf, saturate, simultaneous_relations, IntMatrix, RelationConfig};
use crate::linalg::{rank, right_kernel, Matrix};
use crate::numfield::NumberField;
use crate::polyring::{monomial_basis, parse_rational_poly, GradedPoly};
use crate::verify::ci_membership_check;

pub const FORMAT_TAG: &str = "pcr-periods v1";

#[derive(Clone, Debug)]
pub struct PeriodData {
    pub n: usize,
    pub d: u32,
    pub f: GradedPoly<Rationals>,
    pub digits: usize,
    pub row_degrees: Vec<i64>,
    pub row_counts: Vec<usize>,
    pub s: usize,
    pub q: Matrix<BigComplex>,
    pub intersection: Option<IntMatrix>,
    pub h_square: Option<i64>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::PeriodFile { line, msg: msg.into() }
}

/// Significant digits in a decimal string's mantissa, trailing zeros included.
fn significant_digits(s: &str) -> usize {
    let mant = s.trim().trim_start_matches(['+', '-']);
    let mant = mant.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len()
}

/// Scientific notation with exactly `sig` significant digits.
pub fn format_fixed(q: &BigRational, sig: usize) -> String {
    let s = format_rational_sci(q, sig);
    if q.is_zero() {
        return s;
    }
    let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
    let have = significant_digits(mant);
    let mut mant = mant.to_string();
    if have < sig {
        if !mant.contains('.') {
            mant.push('.');
        }
        mant.extend(std::iter::repeat('0').take(sig - have));
    }
    format!("{mant}e{exp}")
}

impl PeriodData {
    pub fn hypersurface(&self) -> Result<Hypersurface> {
        Hypersurface::new(self.f.clone())
    }

    pub fn field(&self) -> ComplexField {
        ComplexField::with_digits(self.digits)
    }

    /// Row range of level `l`.
    pub fn level_rows(&self, l: usize) -> std::ops::Range<usize> {
        let start: usize = self.row_counts[..l].iter().sum();
        start..start + self.row_counts[l]
    }

    /// Rows of levels `l <= n/2 - 1`, whose vanishing defines Hodge cycles.
    pub fn f_rows(&self) -> std::ops::Range<usize> {
        let end: usize = self.row_counts[..self.n / 2].iter().sum();
        0..end
    }

    /// Checks the header against the Jacobian ring of `f` and the matrix shape.
    pub fn validate(&self, x: &Hypersurface) -> Result<()> {
        if x.n() != self.n || x.d() != self.d {
            return Err(perr(0, "n or d does not match f"));
        }
        let expect_deg: Vec<i64> = (0..=self.n).map(|l| x.row_degree(l)).collect();
        if self.row_degrees != expect_deg {
            return Err(perr(0, format!("row_degrees must be {expect_deg:?}")));
        }
        for (&u, &c) in self.row_degrees.iter().zip(&self.row_counts) {
            let dim = if u < 0 { 0 } else { x.graded_slice(u)?.dim() };
            if dim != c {
                return Err(perr(0, format!("row count at degree {u} is {c} but dim R_{u} = {dim}")));
            }
        }
        let s: usize = self.row_counts.iter().sum();
        if s != self.s || self.q.len() != s || self.q.iter().any(|r| r.len() != s) {
            return Err(perr(0, format!("matrix must be {s} x {s}")));
        }
        if let Some(g) = &self.intersection {
            if g.len() != s || g.iter().any(|r| r.len() != s) {
                return Err(perr(0, "intersection matrix has the wrong shape"));
            }
            if (0..s).any(|i| (0..i).any(|j| g[i][j] != g[j][i])) {
                return Err(perr(0, "intersection matrix is not symmetric"));
            }
            if crate::lattice::determinant(g).is_zero() {
                return Err(perr(0, "intersection matrix is singular"));
            }
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (ln, l) = lines.next().ok_or_else(|| perr(0, format!("missing `{key}:`")))?;
            match l.split_once(':') {
                Some((k, v)) if k.trim() == key => Ok((ln, v.trim().to_string())),
                _ => Err(perr(ln, format!("expected `{key}:`"))),
            }
        };
        let (ln, tag) = header("format")?;
        if tag != FORMAT_TAG {
            return Err(perr(ln, format!("unsupported format `{tag}`")));
        }
        let num = |(ln, v): (usize, String)| -> Result<i64> { v.parse().map_err(|_| perr(ln, format!("not an integer: `{v}`"))) };
        let list = |(ln, v): (usize, String)| -> Result<Vec<i64>> {
            v.split_whitespace()
                .map(|x| x.parse().map_err(|_| perr(ln, format!("not an integer: `{x}`"))))
                .collect()
        };
        let n = num(header("n")?)?;
        let d = num(header("d")?)?;
        let (fl, ftext) = header("f")?;
        let digits = num(header("digits")?)?;
        let row_degrees = list(header("row_degrees")?)?;
        let row_counts = list(header("row_counts")?)?;
        let (sl, sv) = header("s")?;
        let s = num((sl, sv))?;
        if n < 0 || d < 2 || digits < 1 || s < 0 || row_counts.iter().any(|&c| c < 0) {
            return Err(perr(sl, "header values out of range"));
        }
        let (n, d, digits, s) = (n as usize, d as u32, digits as usize, s as usize);
        let f = parse_rational_poly(&ftext, Some(n + 2)).map_err(|e| perr(fl, e.to_string()))?;
        if f.degree() != d {
            return Err(perr(fl, format!("f has degree {} but d = {d}", f.degree())));
        }
        let cf = ComplexField::with_digits(digits);
        let mut q = Vec::with_capacity(s);
        for _ in 0..s {
            let (ln, l) = lines.next().ok_or_else(|| perr(0, "matrix ends early"))?;
            let row = l
                .split_whitespace()
                .map(|e| {
                    let (re, im) = e.split_once(',').ok_or_else(|| perr(ln, format!("entry `{e}` is not `re,im`")))?;
                    for part in [re, im] {
                        let q = parse_decimal(part).map_err(|_| perr(ln, format!("malformed decimal `{part}`")))?;
                        if !q.is_zero() && significant_digits(part) < digits {
                            return Err(perr(ln, format!("`{part}` has fewer than {digits} significant digits")));
                        }
                    }
                    Ok(cf.complex(&parse_decimal(re)?, &parse_decimal(im)?))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != s {
                return Err(perr(ln, format!("expected {s} entries, found {}", row.len())));
            }
            q.push(row);
        }
        let mut intersection = None;
        let mut h_square = None;
        while let Some((ln, l)) = lines.next() {
            let (k, v) = l.split_once(':').ok_or_else(|| perr(ln, format!("unexpected line `{l}`")))?;
            match k.trim() {
                "intersection" => {
                    let mut g = Vec::with_capacity(s);
                    for _ in 0..s {
                        let (ln, l) = lines.next().ok_or_else(|| perr(ln, "intersection matrix ends early"))?;
                        let row = l
                            .split_whitespace()
                            .map(|x| x.parse::<BigInt>().map_err(|_| perr(ln, format!("not an integer: `{x}`"))))
                            .collect::<Result<Vec<_>>>()?;
                        if row.len() != s {
                            return Err(perr(ln, format!("expected {s} integers")));
                        }
                        g.push(row);
                    }
                    intersection = Some(g);
                }
                "h_square" => h_square = Some(num((ln, v.trim().to_string()))?),
                other => return Err(perr(ln, format!("unknown key `{other}`"))),
            }
        }
        let data = PeriodData {
            n,
            d,
            f,
            digits,
            row_degrees,
            row_counts: row_counts.into_iter().map(|c| c as usize).collect(),
            s,
            q,
            intersection,
            h_square,
        };
        let x = data.hypersurface()?;
        data.validate(&x)?;
        Ok(data)
    }

    pub fn parse_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        out.push_str(&format!("format: {FORMAT_TAG}\n"));
        out.push_str(&format!("n: {}\nd: {}\nf: {}\ndigits: {}\n", self.n, self.d, self.f, self.digits));
        out.push_str(&format!("row_degrees: {}\n", join(&self.row_degrees)));
        let counts: Vec<i64> = self.row_counts.iter().map(|&c| c as i64).collect();
        out.push_str(&format!("row_counts: {}\ns: {}\n", join(&counts), self.s));
        for row in &self.q {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    format!(
                        "{},{}",
                        format_fixed(&real_to_rational(&z.re), self.digits),
                        format_fixed(&real_to_rational(&z.im), self.digits)
                    )
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        if let Some(g) = &self.intersection {
            out.push_str("intersection:\n");
            for row in g {
                out.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
                out.push('\n');
            }
        }
        if let Some(h) = self.h_square {
            out.push_str(&format!("h_square: {h}\n"));
        }
        out
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Saturated lattice of integral classes annihilated by the upper Hodge
/// filtration, with per-generator residuals.
#[derive(Clone, Debug)]
pub struct HodgeCycles {
    pub basis: IntMatrix,
    /// `max_rows |Q_F v| / max|row|` for each basis vector.
    pub residuals: Vec<Real>,
}

impl HodgeCycles {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn hodge_cycles(data: &PeriodData) -> Result<HodgeCycles> {
    hodge_cycles_with(data, &RelationConfig::default())
}

pub fn hodge_cycles_with(data: &PeriodData, cfg: &RelationConfig) -> Result<HodgeCycles> {
    let rows: Vec<Vec<BigComplex>> = data.q[data.f_rows()].to_vec();
    let s = data.s;
    let found: IntMatrix = if rows.is_empty() {
        (0..s).map(|i| (0..s).map(|j| BigInt::from((i == j) as u8)).collect()).collect()
    } else {
        simultaneous_relations(&rows, data.digits, cfg)?.into_iter().map(|r| r.coeffs).collect()
    };
    let basis = if found.is_empty() { found } else { saturate(&found, s) };
    let cf = data.field();
    let residuals = basis.iter().map(|v| relative_residual(&cf, &rows, v)).collect();
    Ok(HodgeCycles { basis, residuals })
}

fn relative_residual(cf: &ComplexField, rows: &[Vec<BigComplex>], v: &[BigInt]) -> Real {
    let zero = cf.real_from_int(&BigInt::zero());
    let mut worst = zero.clone();
    for row in rows {
        let m = row.iter().map(|z| cf.abs(z)).fold(zero.clone(), |a, b| if b > a { b } else { a });
        let sum = row
            .iter()
            .zip(v)
            .fold(cf.zero(), |acc, (z, c)| cf.add(&acc, &cf.mul(z, &cf.from_real(cf.real_from_int(c)))));
        let r = cf.abs(&sum);
        let rel = if m == zero { r } else { cf.rdiv(&r, &m) };
        if rel > worst {
            worst = rel;
        }
    }
    worst
}

/// A linear functional on `R_{D_mid}` in the coordinates of its standard
/// monomials: `p -> integral over delta of omega_p`.
#[derive(Clone, Debug)]
pub struct PeriodFunctional<F: Field> {
    pub field: F,
    pub degree: i64,
    pub values: Vec<F::Elem>,
}

impl<F: Field> PeriodFunctional<F> {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.field.is_zero(v))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        PeriodFunctional {
            values: self.values.iter().map(|v| self.field.mul(v, c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        PeriodFunctional {
            values: self.values.iter().zip(&other.values).map(|(a, b)| self.field.add(a, b)).collect(),
            ..self.clone()
        }
    }
}

impl PeriodFunctional<Rationals> {
    pub fn embed(&self, digits: usize) -> PeriodFunctional<ComplexField> {
        let cf = ComplexField::with_digits(digits);
        PeriodFunctional {
            values: self.values.iter().map(|q| cf.from_rational(q)).collect(),
            field: cf,
            degree: self.degree,
        }
    }
}

impl PeriodFunctional<NumberField> {
    pub fn embed(&self, digits: usize) -> Result<PeriodFunctional<ComplexField>> {
        let cf = ComplexField::with_digits(digits);
        Ok(PeriodFunctional {
            values: self.values.iter().map(|a| self.field.embed(a, digits)).collect::<Result<_>>()?,
            field: cf,
            degree: self.degree,
        })
    }
}

/// `lambda = Q_mid v`, the middle row block applied to the cycle.
pub fn functional_from_periods(data: &PeriodData, v: &[BigInt]) -> Result<PeriodFunctional<ComplexField>> {
    if v.len() != data.s {
        return Err(Error::Invalid(format!("cycle has length {} but s = {}", v.len(), data.s)));
    }
    let cf = data.field();
    let values = data.q[data.level_rows(data.n / 2)]
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(cf.zero(), |acc, (z, c)| cf.add(&acc, &cf.mul(z, &cf.from_real(cf.real_from_int(c)))))
        })
        .collect();
    Ok(PeriodFunctional {
        field: cf,
        degree: data.row_degrees[data.n / 2],
        values,
    })
}

#[derive(Clone, Debug)]
pub struct SyntheticFunctional<F: ExactField> {
    pub functional: PeriodFunctional<F>,
    /// Cofactors `h_i` with `f = sum g_i h_i`.
    pub cofactors: Vec<GradedPoly<F>>,
}

/// The functional of a complete intersection `Y = Z(g_0, .., g_{n/2})` on
/// `X`: up to scale, the unique functional on `R_{D_mid}` killing the
/// middle-degree part of `(g, h, jac f)` where `f = sum g_i h_i`. Normalised
/// so its first nonzero coordinate is 1.
pub fn synthetic_functional<F: ExactField>(x: &Hypersurface, g: &[GradedPoly<F>]) -> Result<SyntheticFunctional<F>> {
    let n = x.n();
    if g.len() != n / 2 + 1 {
        return Err(Error::Invalid(format!("need {} generators, got {}", n / 2 + 1, g.len())));
    }
    let field = g[0].field().clone();
    for gi in g {
        if gi.is_zero() || gi.degree() >= x.d() {
            return Err(Error::Invalid("generators must have degree below d".into()));
        }
    }
    let f = x.f().map_field(&field, |c| field.from_rational(c));
    let h = ci_membership_check(&f, g)?.ok_or_else(|| Error::Invalid("f is not in the ideal of the generators".into()))?;
    let dm = x.middle_degree();
    let slice = x.graded_slice(dm)?;
    let mut rows = Vec::new();
    for p in g.iter().chain(h.iter()) {
        if p.is_zero() {
            continue;
        }
        for m in monomial_basis(dm - p.degree() as i64, x.nvars()) {
            rows.push(slice.normal_form(&p.mul_monomial(&m))?);
        }
    }
    let dim = slice.dim();
    let r = rank(&field, &rows);
    if r + 1 != dim {
        return Err(Error::Degenerate(format!("ideal slice has codimension {} in R_{dm}, expected 1", dim - r)));
    }
    let mut lam = right_kernel(&field, &rows, dim).remove(0);
    let first = lam.iter().find(|c| !field.is_zero(c)).cloned().expect("kernel vector is nonzero");
    let inv = field.inv(&first).expect("nonzero");
    for c in lam.iter_mut() {
        *c = field.mul(c, &inv);
    }
    Ok(SyntheticFunctional {
        functional: PeriodFunctional {
            field,
            degree: dm,
            values: lam,
        },
        cofactors: h,
    })
}

fn random_decimal(rng: &mut ChaCha8Rng, digits: usize) -> BigRational {
    let text: String = (0..digits).map(|_| char::from(b'0' + rng.gen_range(0..10u8))).collect();
    let mut m: BigInt = text.parse().expect("digits");
    if rng.gen_bool(0.5) {
        m = -m;
    }
    BigRational::new(m, BigInt::from(10u32).pow(digits as u32))
}

/// Synthetic period data with a known Hodge lattice: the F-rows vanish on
/// the first `rank` columns, then columns are mixed by a random unimodular
/// matrix `U`. Returns the data and the planted lattice `U^{-1} span(e_i)` in
/// Hermite normal form.
pub fn planted_period_data(x: &Hypersurface, rank: usize, seed: u64, digits: usize) -> Result<(PeriodData, IntMatrix)> {
    let n = x.n();
    let row_degrees: Vec<i64> = (0..=n).map(|l| x.row_degree(l)).collect();
    let row_counts: Vec<usize> = row_degrees
        .iter()
        .map(|&u| if u < 0 { Ok(0) } else { x.graded_slice(u).map(|s| s.dim()) })
        .collect::<Result<_>>()?;
    let s: usize = row_counts.iter().sum();
    if rank > s {
        return Err(Error::Invalid("planted rank exceeds s".into()));
    }
    let f_rows: usize = row_counts[..n / 2].iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = BigRational::zero();
    let base: Vec<Vec<(BigRational, BigRational)>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if i < f_rows && j < rank {
                        (zero.clone(), zero.clone())
                    } else {
                        (random_decimal(&mut rng, digits), random_decimal(&mut rng, digits))
                    }
                })
                .collect()
        })
        .collect();
    let id = |k: usize| -> IntMatrix { (0..k).map(|i| (0..k).map(|j| BigInt::from((i == j) as u8)).collect()).collect() };
    let mut u = id(s);
    let mut uinv = id(s);
    for _ in 0..2 * s {
        let i = rng.gen_range(0..s);
        let mut j = rng.gen_range(0..s - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        // column j += c column i; the inverse subtracts c row j from row i
        for row in u.iter_mut() {
            let t = &c * &row[i];
            row[j] += t;
        }
        let rj = uinv[j].clone();
        for (a, b) in uinv[i].iter_mut().zip(&rj) {
            *a -= &c * b;
        }
    }
    let cf = ComplexField::with_digits(digits);
    let q: Matrix<BigComplex> = base
        .iter()
        .map(|row| {
            (0..s)
                .map(|j| {
                    let (mut re, mut im) = (zero.clone(), zero.clone());
                    for (k, (a, b)) in row.iter().enumerate() {
                        if !u[k][j].is_zero() {
                            let c = BigRational::from_integer(u[k][j].clone());
                            re += a * &c;
                            im += b * &c;
                        }
                    }
                    // round to the stated precision as a file would
                    let re = parse_decimal(&format_fixed(&re, digits)).expect("own output");
                    let im = parse_decimal(&format_fixed(&im, digits)).expect("own output");
                    cf.complex(&re, &im)
                })
                .collect()
        })
        .collect();
    let planted: IntMatrix = (0..rank).map(|c| (0..s).map(|r| uinv[r][c].clone()).collect()).collect();
    let data = PeriodData {
        n,
        d: x.d(),
        f: x.f().clone(),
        digits,
        row_degrees,
        row_counts,
        s,
        q,
        intersection: None,
        h_square: None,
    };
    let planted = if planted.is_empty() { planted } else { hnf(&planted, s) };
    Ok((data, planted))
}

/// Coefficient range for [`random_conic_quartic`].
pub const CONIC_COEFF_RANGE: i64 = 9;

fn random_form(rng: &mut ChaCha8Rng, degree: u32, nvars: usize) -> GradedPoly<Rationals> {
    let mons = monomial_basis(degree as i64, nvars);
    let coeffs: Vec<BigRational> = mons
        .iter()
        .map(|_| BigRational::from_integer(rng.gen_range(-CONIC_COEFF_RANGE..=CONIC_COEFF_RANGE).into()))
        .collect();
    GradedPoly::from_dense(&Rationals, &mons, &coeffs)
}

/// A random smooth quartic `f = x0 c3 + q c2` containing the conic
/// `C = Z(x0, c2)`, with integer coefficients in `[-9, 9]`. Returns the
/// surface, the generators `(x0, c2)` of `I(C)` and the cofactors `(c3, q)`.
pub fn random_conic_quartic(seed: u64) -> Result<(Hypersurface, Vec<GradedPoly<Rationals>>, Vec<GradedPoly<Rationals>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..crate::apolarity::RESAMPLE_CAP {
        let x0 = GradedPoly::var(&Rationals, 4, 0);
        let c2 = random_form(&mut rng, 2, 4);
        let c3 = random_form(&mut rng, 3, 4);
        let q = random_form(&mut rng, 2, 4);
        let f = x0.mul(&c3)?.add(&q.mul(&c2)?)?;
        if f.is_zero() || c2.is_zero() {
            continue;
        }
        let Ok(x) = Hypersurface::new(f) else { continue };
        if x.is_smooth() {
            return Ok((x, vec![x0, c2], vec![c3, q]));
        }
    }
    Err(Error::Degenerate("no smooth conic quartic found".into()))
}

/// Largest absolute coordinate, for reports.
pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::same_lattice;
    use crate::polyring::{parse_poly, ParseOptions};

    fn fermat() -> Hypersurface {
        Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4+x3^4", None).unwrap()).unwrap()
    }

    #[test]
    fn planted_round_trip_and_detection() {
        let x = fermat();
        let (data, planted) = planted_period_data(&x, 2, 3, 60).unwrap();
        assert_eq!(data.row_counts, vec![1, 19, 1]);
        let text = data.to_text();
        let back = PeriodData::parse_str(&text).unwrap();
        assert_eq!(back.to_text(), text);
        let hc = hodge_cycles(&back).unwrap();
        assert_eq!(hc.rank(), 2);
        assert!(same_lattice(&hc.basis, &planted, 21));
        // linearity of the functional in the cycle
        let v1 = &hc.basis[0];
        let v2 = &hc.basis[1];
        let sum: Vec<BigInt> = v1.iter().zip(v2).map(|(a, b)| a + b).collect();
        let l1 = functional_from_periods(&back, v1).unwrap();
        let l2 = functional_from_periods(&back, v2).unwrap();
        let ls = functional_from_periods(&back, &sum).unwrap();
        let cf = back.field();
        for (a, b) in l1.add(&l2).values.iter().zip(&ls.values) {
            assert!(cf.approx_eq(a, b, &cf.pow10(-55)));
        }
    }

    #[test]
    fn header_mismatch_rejected() {
        let x = fermat();
        let (data, _) = planted_period_data(&x, 1, 1, 30).unwrap();
        let text = data.to_text().replace("row_counts: 1 19 1", "row_counts: 1 20 1");
        assert!(matches!(PeriodData::parse_str(&text), Err(Error::PeriodFile { .. })));
        let short = data.to_text();
        let first_entry = short.lines().nth(8).unwrap().split_whitespace().next().unwrap().to_string();
        let truncated = short.replacen(&first_entry, "1.5,2.5", 1);
        assert!(PeriodData::parse_str(&truncated).is_err());
        assert!(PeriodData::parse_str(&short.replacen("format: pcr-periods v1", "format: other", 1)).is_err());
    }

    #[test]
    fn zero_f_rows_give_everything() {
        let x = fermat();
        let (data, _) = planted_period_data(&x, 21, 5, 30).unwrap();
        let hc = hodge_cycles(&data).unwrap();
        assert_eq!(hc.rank(), 21);
    }

    #[test]
    fn fermat_line_functional() {
        let x = fermat();
        let k = NumberField::parse("t^4+1", None).unwrap();
        let opts = ParseOptions { nvars: Some(4), param: Some(k.gen()) };
        let g = vec![parse_poly(&k, "x0 - t*x1", &opts).unwrap(), parse_poly(&k, "x2 - t*x3", &opts).unwrap()];
        let sf = synthetic_functional(&x, &g).unwrap();
        assert_eq!(sf.functional.values.len(), 19);
        assert!(k.is_one(sf.functional.values.iter().find(|v| !k.is_zero(v)).unwrap()));
        let bad = vec![parse_poly(&k, "x0^4", &opts).unwrap(), g[1].clone()];
        assert!(synthetic_functional(&x, &bad).is_err());
    }
}
