//! Ideal pieces `I~_{delta,u}` from a functional on `R_{D_mid}`: the left
//! kernel of the pairing matrix `M[i][j] = lambda(nf(m_i m'_j))` over
//! monomial bases of `S_u` and `S_v`, `v = D_mid - u`. The same code runs
//! exactly (over Q or a number field) and in floating point; floating slices
//! can then be lifted to exact coefficients with LLL.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::bigfloat::{BigComplex, ComplexField, Real};
use crate::error::{Error, Result};
use crate::field::{ExactField, Field, Rationals};
use crate::jacring::Hypersurface;
use crate::lattice::{express_in_field, min_poly, AlgebraicNumber};
use crate::linalg::{float_left_kernel, float_rref, left_kernel, rref, Matrix, RowSpace};
use crate::numfield::{NumberField, UniPoly};
use crate::periods::PeriodFunctional;
use crate::polyring::{monomial_basis, GradedPoly, Monomial};

/// Floating functionals below this precision are rejected.
pub const MIN_DIGITS: usize = 20;

#[derive(Clone, Debug)]
pub struct FloatDiagnostics {
    pub threshold: Real,
    /// Largest discarded pivot over smallest kept pivot (zero when full rank).
    pub pivot_gap: Real,
    /// `max |b M| / max |M|` over the returned basis.
    pub residual: Real,
}

#[derive(Clone, Debug)]
pub struct IdealSlice<F: Field> {
    pub degree: i64,
    pub field: F,
    pub nvars: usize,
    /// Reduced row echelon over grevlex-descending monomials, leading
    /// coefficients 1.
    pub basis: Vec<GradedPoly<F>>,
    pub diagnostics: Option<FloatDiagnostics>,
}

impl<F: Field> IdealSlice<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        monomial_basis(self.degree, self.nvars)
    }

    pub fn coefficient_rows(&self) -> Matrix<F::Elem> {
        let mons = self.monomials();
        let index: HashMap<Monomial, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        self.basis.iter().map(|p| p.to_dense(&index, mons.len())).collect()
    }
}

/// Linear algebra an ideal slice needs from its coefficient domain.
pub trait KernelDomain: Field {
    /// Left kernel of `m` (rows indexed by `S_u`) in reduced row echelon form.
    fn slice_kernel(&self, m: &Matrix<Self::Elem>, nrows: usize, ncols: usize) -> (Matrix<Self::Elem>, Option<FloatDiagnostics>);
    /// Whether `v` lies in the span of `rows`.
    fn span_contains(&self, rows: &Matrix<Self::Elem>, v: &[Self::Elem], ncols: usize) -> bool;
    fn check_functional(&self, values: &[Self::Elem]) -> Result<()> {
        if values.iter().all(|v| self.is_zero(v)) {
            return Err(Error::Invalid("the functional is zero".into()));
        }
        Ok(())
    }
}

impl<F: ExactField> KernelDomain for F {
    fn slice_kernel(&self, m: &Matrix<F::Elem>, nrows: usize, ncols: usize) -> (Matrix<F::Elem>, Option<FloatDiagnostics>) {
        let mut k = if ncols == 0 {
            (0..nrows)
                .map(|i| (0..nrows).map(|j| if i == j { self.one() } else { self.zero() }).collect())
                .collect()
        } else {
            left_kernel(self, m, ncols)
        };
        rref(self, &mut k);
        k.retain(|r| r.iter().any(|x| !self.is_zero(x)));
        (k, None)
    }

    fn span_contains(&self, rows: &Matrix<F::Elem>, v: &[F::Elem], ncols: usize) -> bool {
        RowSpace::new(self, rows, ncols).contains(self, v)
    }
}

fn tolerance(cf: &ComplexField) -> Real {
    cf.pow10(-((cf.digits() / 2) as i64))
}

fn max_abs(cf: &ComplexField, m: &Matrix<BigComplex>) -> Real {
    let mut best = Real::ZERO;
    for row in m {
        for x in row {
            let a = cf.abs(x);
            if a > best {
                best = a;
            }
        }
    }
    best
}

impl KernelDomain for ComplexField {
    fn slice_kernel(&self, m: &Matrix<BigComplex>, nrows: usize, ncols: usize) -> (Matrix<BigComplex>, Option<FloatDiagnostics>) {
        let tol = tolerance(self);
        if ncols == 0 {
            let id = (0..nrows)
                .map(|i| (0..nrows).map(|j| if i == j { self.one() } else { self.zero() }).collect())
                .collect();
            let z = Real::ZERO;
            return (id, Some(FloatDiagnostics { threshold: z.clone(), pivot_gap: z.clone(), residual: z }));
        }
        let k = float_left_kernel(self, m, ncols, &tol);
        let pivot_gap = k.pivot_gap(self);
        let (basis, _) = float_rref(self, &k.basis, nrows, &tol);
        let scale = max_abs(self, m);
        let mut residual = Real::ZERO;
        for b in &basis {
            for j in 0..ncols {
                let s = (0..nrows).fold(self.zero(), |acc, i| self.add(&acc, &self.mul(&b[i], &m[i][j])));
                let r = self.abs(&s);
                if r > residual {
                    residual = r;
                }
            }
        }
        if scale > Real::ZERO {
            residual = self.rdiv(&residual, &scale);
        }
        (basis, Some(FloatDiagnostics { threshold: k.threshold, pivot_gap, residual }))
    }

    fn span_contains(&self, rows: &Matrix<BigComplex>, v: &[BigComplex], ncols: usize) -> bool {
        let tol = tolerance(self);
        let (r0, _) = float_rref(self, rows, ncols, &tol);
        let mut ext = rows.clone();
        ext.push(v.to_vec());
        let (r1, _) = float_rref(self, &ext, ncols, &tol);
        r0.len() == r1.len()
    }

    fn check_functional(&self, values: &[BigComplex]) -> Result<()> {
        if self.digits() < MIN_DIGITS {
            return Err(Error::Precision(format!("{} digits is below the minimum of {MIN_DIGITS}", self.digits())));
        }
        let zero = Real::ZERO;
        if values.iter().all(|v| self.abs(v) == zero) {
            return Err(Error::Invalid("the functional is zero".into()));
        }
        Ok(())
    }
}

/// The pairing matrix `M[i][j] = lambda(nf(m_i m'_j))`.
pub fn pairing_matrix<F: Field>(x: &Hypersurface, lambda: &PeriodFunctional<F>, u: i64) -> Result<Matrix<F::Elem>> {
    let dm = x.middle_degree();
    let slice = x.graded_slice(dm)?;
    if lambda.values.len() != slice.dim() {
        return Err(Error::Invalid(format!(
            "functional has {} coordinates but dim R_{dm} = {}",
            lambda.values.len(),
            slice.dim()
        )));
    }
    let f = &lambda.field;
    let mut mu: HashMap<Monomial, F::Elem> = HashMap::new();
    for m in monomial_basis(dm, x.nvars()) {
        let red = slice.reduce_monomial(&m)?;
        let val = red.iter().zip(&lambda.values).fold(f.zero(), |acc, (r, l)| {
            if num_traits::Zero::is_zero(r) {
                acc
            } else {
                f.add(&acc, &f.mul(&f.from_rational(r), l))
            }
        });
        mu.insert(m, val);
    }
    let rows = monomial_basis(u, x.nvars());
    let cols = monomial_basis(dm - u, x.nvars());
    Ok(rows.iter().map(|a| cols.iter().map(|b| mu[&a.mul(b)].clone()).collect()).collect())
}

/// `I~_{delta,u}`: degree-`u` polynomials whose pairing with all of
/// `S_{D_mid - u}` vanishes under `lambda`.
pub fn algorithm1<F: KernelDomain>(x: &Hypersurface, lambda: &PeriodFunctional<F>, u: i64) -> Result<IdealSlice<F>> {
    if u < 0 {
        return Err(Error::Invalid("degree must be nonnegative".into()));
    }
    let f = &lambda.field;
    f.check_functional(&lambda.values)?;
    let mons = monomial_basis(u, x.nvars());
    let v = x.middle_degree() - u;
    let (rows, diagnostics) = if v < 0 {
        let id: Matrix<F::Elem> = (0..mons.len())
            .map(|i| (0..mons.len()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        (id, None)
    } else {
        let m = pairing_matrix(x, lambda, u)?;
        let ncols = monomial_basis(v, x.nvars()).len();
        f.slice_kernel(&m, mons.len(), ncols)
    };
    let basis = rows.iter().map(|r| GradedPoly::from_dense(f, &mons, r)).collect();
    Ok(IdealSlice {
        degree: u,
        field: f.clone(),
        nvars: x.nvars(),
        basis,
        diagnostics,
    })
}

/// Whether `lower * x_i` lies in `upper` for every basis element and
/// variable, i.e. the two slices are compatible with an ideal.
pub fn ideal_closure_holds<F: KernelDomain>(lower: &IdealSlice<F>, upper: &IdealSlice<F>) -> bool {
    let mons = upper.monomials();
    let index: HashMap<Monomial, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let rows = upper.coefficient_rows();
    lower.basis.iter().all(|b| {
        (0..lower.nvars).all(|i| {
            let p = b.mul_monomial(&Monomial::var(lower.nvars, i));
            upper.field.span_contains(&rows, &p.to_dense(&index, mons.len()), mons.len())
        })
    })
}

/// The degree-`u` part of the ideal generated by `gens`, as coefficient rows.
pub fn ideal_degree_part<F: Field>(gens: &[GradedPoly<F>], u: i64, nvars: usize, field: &F) -> Matrix<F::Elem> {
    let mons = monomial_basis(u, nvars);
    let index: HashMap<Monomial, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() || g.degree() as i64 > u {
            continue;
        }
        for m in monomial_basis(u - g.degree() as i64, nvars) {
            rows.push(g.mul_monomial(&m).to_dense(&index, mons.len()));
        }
    }
    let _ = field;
    rows
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentEntry {
    pub degree: i64,
    pub slice_dim: usize,
    /// `dim I(Y)_u` as spanned by the given generators.
    pub ideal_dim: usize,
    pub ideal_contained: bool,
    pub jacobian_contained: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentReport {
    pub entries: Vec<ContainmentEntry>,
}

impl ContainmentReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.ideal_contained && e.jacobian_contained)
    }
}

/// Checks `I(Y)_u ⊆ I~_u` and `jac(f)_u ⊆ I~_u` for each requested degree.
pub fn exact_check_containment<F: ExactField>(
    x: &Hypersurface,
    lambda: &PeriodFunctional<F>,
    gens: &[GradedPoly<F>],
    degrees: &[i64],
) -> Result<ContainmentReport> {
    let f = &lambda.field;
    let jac: Vec<GradedPoly<F>> = x
        .jacobian_generators()
        .iter()
        .map(|p| p.map_field(f, |c| f.from_rational(c)))
        .collect();
    let mut entries = Vec::new();
    for &u in degrees {
        let slice = algorithm1(x, lambda, u)?;
        let ncols = monomial_basis(u, x.nvars()).len();
        let space = RowSpace::new(f, &slice.coefficient_rows(), ncols);
        let iy = ideal_degree_part(gens, u, x.nvars(), f);
        let ij = ideal_degree_part(&jac, u, x.nvars(), f);
        entries.push(ContainmentEntry {
            degree: u,
            slice_dim: slice.dim(),
            ideal_dim: RowSpace::new(f, &iy, ncols).dim(),
            ideal_contained: iy.iter().all(|r| space.contains(f, r)),
            jacobian_contained: ij.iter().all(|r| space.contains(f, r)),
        });
    }
    Ok(ContainmentReport { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `(dim I~_1, dim I~_2) = (0, 3)`: the quadrics of a twisted cubic.
    Reconstructible,
    /// No linear forms but the wrong number of quadrics.
    NotReconstructible,
    /// Linear forms present: not the class of a twisted cubic.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub dim_u1: usize,
    pub dim_u2: usize,
    pub verdict: Verdict,
}

pub fn perfectness_report<F: KernelDomain>(x: &Hypersurface, lambda: &PeriodFunctional<F>) -> Result<PerfectnessReport> {
    let dim_u1 = algorithm1(x, lambda, 1)?.dim();
    let dim_u2 = algorithm1(x, lambda, 2)?.dim();
    let verdict = match (dim_u1, dim_u2) {
        (0, 3) => Verdict::Reconstructible,
        (0, _) => Verdict::NotReconstructible,
        _ => Verdict::NotApplicable,
    };
    Ok(PerfectnessReport { dim_u1, dim_u2, verdict })
}

#[derive(Clone, Debug)]
pub struct CoefficientResidual {
    pub row: usize,
    pub monomial: Monomial,
    pub residual: Real,
}

#[derive(Clone, Debug)]
pub struct ExactReconstruction {
    pub field: NumberField,
    /// The primitive element, `None` when every coefficient is rational.
    pub generator: Option<AlgebraicNumber>,
    /// Basis row and column of the coefficient that generates the field.
    pub generator_position: Option<(usize, usize)>,
    pub basis: Vec<GradedPoly<NumberField>>,
    pub residuals: Vec<CoefficientResidual>,
}

fn rational_value(z: &BigComplex, digits: usize) -> Option<(BigRational, Real)> {
    let a = min_poly(z, 1, digits).ok()?;
    if a.degree() != 1 {
        return None;
    }
    let q = BigRational::new(-a.minpoly[0].clone(), a.minpoly[1].clone());
    Some((q, a.residual))
}

/// Lifts a floating slice to exact coefficients. The slice is put in reduced
/// row echelon form (leading coefficients 1, entries below threshold set to
/// zero); rational entries are recognised directly, the first irrational
/// entry fixes the field through its minimal polynomial of degree at most
/// `maxdeg`, and every other entry is expressed in that field. If some entry
/// is not expressible, later irrational entries are tried as the generator
/// before giving up.
pub fn reconstruct_exact(slice: &IdealSlice<ComplexField>, maxdeg: usize, digits: usize) -> Result<ExactReconstruction> {
    let cf = ComplexField::with_digits(digits);
    if let Some(diag) = &slice.diagnostics {
        let limit = cf.pow10(-((digits / 4) as i64));
        if diag.pivot_gap >= limit {
            return Err(Error::Precision(format!(
                "pivot gap {} is not below 1e-{}; the rank decision is unreliable",
                crate::bigfloat::format_real(&diag.pivot_gap, 6),
                digits / 4
            )));
        }
    }
    let mons = slice.monomials();
    let coerced: Matrix<BigComplex> = slice
        .coefficient_rows()
        .iter()
        .map(|r| r.iter().map(|z| cf.coerce(z)).collect())
        .collect();
    let tol = tolerance(&cf);
    let (rows, pivots) = float_rref(&cf, &coerced, mons.len(), &tol);
    let scale = max_abs(&cf, &rows);
    let thr = cf.rmul(&tol, &scale);

    // Classify entries: exact zero / pivot one / rational / irrational.
    enum Entry {
        Zero,
        Rational(BigRational, Real),
        Irrational,
    }
    let mut entries: Vec<Vec<Entry>> = Vec::new();
    let mut irrational = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::new();
        for (j, z) in row.iter().enumerate() {
            if j == pivots[i] {
                out.push(Entry::Rational(num_traits::One::one(), Real::ZERO));
            } else if cf.abs(z) <= thr {
                out.push(Entry::Zero);
            } else if let Some((q, r)) = rational_value(z, digits) {
                out.push(Entry::Rational(q, r));
            } else {
                irrational.push((i, j));
                out.push(Entry::Irrational);
            }
        }
        entries.push(out);
    }

    let mut residuals = Vec::new();
    let rational_basis = |field: &NumberField, values: &HashMap<(usize, usize), Vec<BigRational>>| {
        let mut basis = Vec::new();
        for (i, row) in entries.iter().enumerate() {
            let coeffs: Vec<Vec<BigRational>> = row
                .iter()
                .enumerate()
                .map(|(j, e)| match e {
                    Entry::Zero => field.zero(),
                    Entry::Rational(q, _) => field.from_rational(q),
                    Entry::Irrational => values[&(i, j)].clone(),
                })
                .collect();
            basis.push(GradedPoly::from_dense(field, &mons, &coeffs));
        }
        basis
    };
    for (i, row) in entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let Entry::Rational(_, r) = e {
                residuals.push(CoefficientResidual { row: i, monomial: mons[j].clone(), residual: r.clone() });
            }
        }
    }
    if irrational.is_empty() {
        let field = NumberField::rationals();
        let basis = rational_basis(&field, &HashMap::new());
        return Ok(ExactReconstruction { field, generator: None, generator_position: None, basis, residuals });
    }

    let mut last_err = None;
    for &(gi, gj) in &irrational {
        let alpha = min_poly(&rows[gi][gj], maxdeg, digits)?;
        let field = NumberField::from_algebraic(&alpha)?;
        let mut values = HashMap::new();
        let mut extra = Vec::new();
        let mut failed = None;
        for &(i, j) in &irrational {
            if (i, j) == (gi, gj) {
                values.insert((i, j), field.gen());
                extra.push(CoefficientResidual { row: i, monomial: mons[j].clone(), residual: alpha.residual.clone() });
                continue;
            }
            match express_in_field(&rows[i][j], &alpha, digits)? {
                Some((c, r)) => {
                    values.insert((i, j), c);
                    extra.push(CoefficientResidual { row: i, monomial: mons[j].clone(), residual: r });
                }
                None => {
                    failed = Some((i, j));
                    break;
                }
            }
        }
        match failed {
            None => {
                let basis = rational_basis(&field, &values);
                residuals.extend(extra);
                return Ok(ExactReconstruction {
                    field,
                    generator: Some(alpha),
                    generator_position: Some((gi, gj)),
                    basis,
                    residuals,
                });
            }
            Some((i, j)) => {
                last_err = Some(Error::NoRelation(format!(
                    "coefficient of {} in basis element {} is not in Q(t) with t^{} root of {}; a larger field is needed",
                    mons[j],
                    i,
                    alpha.degree(),
                    alpha.render()
                )))
            }
        }
    }
    Err(last_err.expect("at least one irrational entry"))
}

/// Evaluates `a`, an element of `from`, at `image` (the image of the
/// generator of `from` in `to`).
pub fn transport(from: &NumberField, a: &[BigRational], to: &NumberField, image: &[BigRational]) -> Vec<BigRational> {
    let p: UniPoly = from.to_poly(a);
    let mut acc = to.zero();
    for c in p.coeffs().iter().rev() {
        acc = to.add(&to.mul(&acc, &image.to_vec()), &to.from_rational(c));
    }
    acc
}

/// Compares a reconstruction with an exact slice over `target`: the
/// generator's minimal polynomial must vanish at the corresponding exact
/// coefficient, and transporting every coefficient along that embedding must
/// reproduce the exact basis.
pub fn matches_exact(rec: &ExactReconstruction, exact: &IdealSlice<NumberField>) -> bool {
    if rec.basis.len() != exact.basis.len() {
        return false;
    }
    let target = &exact.field;
    let mons = exact.monomials();
    let ex_rows = exact.coefficient_rows();
    let image = match rec.generator_position {
        None => target.zero(),
        Some((i, j)) => ex_rows[i][j].clone(),
    };
    if let Some(alpha) = &rec.generator {
        let m = UniPoly::from_ints(&alpha.minpoly);
        let mut acc = target.zero();
        for c in m.coeffs().iter().rev() {
            acc = target.add(&target.mul(&acc, &image), &target.from_rational(c));
        }
        if !target.is_zero(&acc) {
            return false;
        }
    }
    let index: HashMap<Monomial, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    rec.basis.iter().zip(&ex_rows).all(|(p, er)| {
        p.to_dense(&index, mons.len())
            .iter()
            .zip(er)
            .all(|(a, b)| target.elem_eq(&transport(&rec.field, a, target, &image), b))
    })
}

/// An exact functional over Q viewed in a number field, for pipelines that
/// always work over `NumberField`.
pub fn lift_to_field(lambda: &PeriodFunctional<Rationals>, k: &NumberField) -> PeriodFunctional<NumberField> {
    PeriodFunctional {
        field: k.clone(),
        degree: lambda.degree,
        values: lambda.values.iter().map(|q| k.from_rational(q)).collect(),
    }
}
