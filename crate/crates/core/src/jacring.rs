//! The Jacobian ring `R = S/jac(f)`, one graded piece at a time.
//!
//! Each slice `R_u` comes from the exact reduced row echelon form of the
//! Macaulay matrix whose rows are `x^a * f_i` expanded over the
//! grevlex-descending monomials of degree `u`. Pivot columns are the leading
//! monomials of `jac(f)_u`, the remaining columns are the standard monomials,
//! and the reduced rows give every monomial's normal form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{common_denominator, Field, Rationals};
use crate::linalg::rref_integer;
use crate::modp;
use crate::polyring::{monomial_basis, GradedPoly, Monomial};

pub struct Hypersurface {
    n: usize,
    d: u32,
    f: GradedPoly<Rationals>,
    partials: Vec<GradedPoly<Rationals>>,
    // partials of the primitive integral multiple of f; same ideal, integer rows
    int_partials: Vec<Vec<(Monomial, BigInt)>>,
    slices: Mutex<BTreeMap<u32, Arc<OnceLock<Arc<GradedSlice>>>>>,
    hilbert: OnceLock<HilbertReport>,
}

impl std::fmt::Debug for Hypersurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hypersurface")
            .field("n", &self.n)
            .field("d", &self.d)
            .field("f", &self.f.to_string())
            .finish()
    }
}

impl Hypersurface {
    /// `f` in `n + 2` variables with `n` even and degree at least 2.
    pub fn new(f: GradedPoly<Rationals>) -> Result<Self> {
        let nvars = f.nvars();
        if nvars < 2 || nvars % 2 != 0 {
            return Err(Error::Invalid(format!(
                "need an even-dimensional hypersurface, got {nvars} variables"
            )));
        }
        if f.is_zero() || f.degree() < 2 {
            return Err(Error::Invalid("degree must be at least 2".into()));
        }
        let partials: Vec<_> = (0..nvars).map(|i| f.partial_derivative(i)).collect();
        let den = common_denominator(f.terms().iter().map(|(_, c)| c));
        let content = f
            .terms()
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(&(c.numer() * &den / c.denom())));
        let scale = BigRational::new(den, content);
        let int_partials = partials
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let v = c * &scale;
                        debug_assert!(v.is_integer());
                        (m.clone(), v.to_integer())
                    })
                    .collect()
            })
            .collect();
        Ok(Hypersurface {
            n: nvars - 2,
            d: f.degree(),
            f,
            partials,
            int_partials,
            slices: Mutex::new(BTreeMap::new()),
            hilbert: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn nvars(&self) -> usize {
        self.n + 2
    }
    pub fn f(&self) -> &GradedPoly<Rationals> {
        &self.f
    }

    /// `N = d - n - 2`.
    pub fn big_n(&self) -> i64 {
        self.d as i64 - self.n as i64 - 2
    }

    /// Degree `N + l*d` of the residue representatives in level `l`.
    pub fn row_degree(&self, l: usize) -> i64 {
        self.big_n() + (l as i64) * self.d as i64
    }

    pub fn middle_degree(&self) -> i64 {
        self.row_degree(self.n / 2)
    }

    /// Socle degree `(n+2)(d-2)`.
    pub fn top_degree(&self) -> u32 {
        (self.n as u32 + 2) * (self.d - 2)
    }

    pub fn jacobian_generators(&self) -> &[GradedPoly<Rationals>] {
        &self.partials
    }

    /// Spanning set of `jac(f)_u`: all `x^a * f_i`.
    pub fn jacobian_products(&self, u: u32) -> Vec<GradedPoly<Rationals>> {
        let shifts = monomial_basis(u as i64 - self.d as i64 + 1, self.nvars());
        let mut out = Vec::new();
        for p in &self.partials {
            for a in &shifts {
                out.push(p.mul_monomial(a));
            }
        }
        out
    }

    fn macaulay_rows(&self, u: u32, index: &HashMap<Monomial, usize>, ncols: usize) -> Vec<Vec<BigInt>> {
        let shifts = monomial_basis(u as i64 - self.d as i64 + 1, self.nvars());
        let mut rows = Vec::with_capacity(shifts.len() * self.nvars());
        for p in &self.int_partials {
            if p.is_empty() {
                continue;
            }
            for a in &shifts {
                let mut row = vec![BigInt::zero(); ncols];
                for (m, c) in p {
                    row[index[&m.mul(a)]] = c.clone();
                }
                rows.push(row);
            }
        }
        rows
    }

    /// `dim R_u` computed over F_p; an upper bound for the rational value.
    pub fn slice_dim_mod_p(&self, u: u32, p: u64) -> usize {
        let basis = monomial_basis(u as i64, self.nvars());
        let index = index_of(&basis);
        let rows = self.macaulay_rows(u, &index, basis.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|x| modp::reduce(x, p)).collect())
            .collect();
        basis.len() - modp::rank(rows, basis.len(), p)
    }

    /// The cached slice `R_u`, built on first use.
    pub fn graded_slice(&self, u: i64) -> Result<Arc<GradedSlice>> {
        if u < 0 {
            return Err(Error::Invalid(format!("negative degree {u}")));
        }
        let u = u as u32;
        let cell = {
            let mut map = self.slices.lock().expect("slice cache poisoned");
            map.entry(u).or_default().clone()
        };
        Ok(cell.get_or_init(|| Arc::new(self.build_slice(u))).clone())
    }

    fn build_slice(&self, u: u32) -> GradedSlice {
        let basis = monomial_basis(u as i64, self.nvars());
        let index = index_of(&basis);
        let ncols = basis.len();
        let rows = self.macaulay_rows(u, &index, ncols);
        let (reduced, pivots) = rref_integer(rows);
        let mut is_pivot = vec![None; ncols];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let std_cols: Vec<usize> = (0..ncols).filter(|&j| is_pivot[j].is_none()).collect();
        let mut std_pos = vec![usize::MAX; ncols];
        for (k, &j) in std_cols.iter().enumerate() {
            std_pos[j] = k;
        }
        let dim = std_cols.len();
        let reduction = (0..ncols)
            .map(|j| match is_pivot[j] {
                // x_j = -(rest of its reduced row), which only involves standard columns
                Some(r) => std_cols.iter().map(|&k| -&reduced[r][k]).collect(),
                None => {
                    let mut v = vec![BigRational::zero(); dim];
                    v[std_pos[j]] = BigRational::one();
                    v
                }
            })
            .collect();
        GradedSlice {
            u,
            standard: std_cols.iter().map(|&j| basis[j].clone()).collect(),
            leading: pivots.iter().map(|&j| basis[j].clone()).collect(),
            basis,
            index,
            reduction,
        }
    }

    /// Smoothness certificate: `R_{top+1} = 0` forces `jac(f)` to be
    /// Artinian, hence a complete intersection with the expected Hilbert
    /// function. A vanishing computed mod p suffices because the rank over F_p
    /// never exceeds the rational rank.
    pub fn hilbert_check(&self) -> &HilbertReport {
        self.hilbert.get_or_init(|| {
            let top = self.top_degree();
            let expected: Vec<usize> = (0..=top + 1).map(|u| expected_dim(self.n, self.d, u)).collect();
            for &p in &modp::PRIMES[..2] {
                if self.slice_dim_mod_p(top + 1, p) == 0 {
                    return HilbertReport {
                        dims: expected.clone(),
                        expected,
                        smooth: true,
                        certificate: Certificate::ModP(p),
                    };
                }
            }
            let dims: Vec<usize> = (0..=top + 1)
                .map(|u| self.graded_slice(u as i64).expect("u >= 0").dim())
                .collect();
            HilbertReport {
                smooth: dims == expected,
                dims,
                expected,
                certificate: Certificate::Exact,
            }
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.hilbert_check().smooth
    }

    /// `dim R_u` for `u = 0..=upto`, computed exactly.
    pub fn dims(&self, upto: u32) -> Vec<usize> {
        (0..=upto).map(|u| self.graded_slice(u as i64).expect("u >= 0").dim()).collect()
    }

    /// Sum of `dim R_{N + l d}` over `l = 0..=n`.
    pub fn primitive_betti(&self) -> usize {
        (0..=self.n)
            .map(|l| self.row_degree(l))
            .filter(|&u| u >= 0)
            .map(|u| self.graded_slice(u).expect("u >= 0").dim())
            .sum()
    }
}

/// Coefficient of `t^u` in `(1 + t + ... + t^{d-2})^{n+2}`.
pub fn expected_dim(n: usize, d: u32, u: u32) -> usize {
    let mut poly = vec![1usize];
    for _ in 0..n + 2 {
        let mut next = vec![0; poly.len() + d as usize - 2];
        for (i, &c) in poly.iter().enumerate() {
            for k in 0..=(d as usize - 2) {
                next[i + k] += c;
            }
        }
        poly = next;
    }
    poly.get(u as usize).copied().unwrap_or(0)
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    ModP(u64),
    Exact,
}

#[derive(Clone, Debug)]
pub struct HilbertReport {
    /// `dim R_u` for `u = 0..=top+1`.
    pub dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub smooth: bool,
    pub certificate: Certificate,
}

/// One graded piece `R_u` with its reduction data.
#[derive(Debug)]
pub struct GradedSlice {
    u: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    standard: Vec<Monomial>,
    leading: Vec<Monomial>,
    reduction: Vec<Vec<BigRational>>,
}

impl GradedSlice {
    pub fn degree(&self) -> u32 {
        self.u
    }

    /// `dim R_u`.
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    /// Leading monomials of `jac(f)_u`.
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// All monomials of `S_u`, grevlex-descending.
    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Normal form of a single monomial of degree `u`.
    pub fn reduce_monomial(&self, m: &Monomial) -> Result<&[BigRational]> {
        self.index
            .get(m)
            .map(|&i| self.reduction[i].as_slice())
            .ok_or(Error::Degree {
                expected: self.u as i64,
                found: m.degree() as i64,
            })
    }

    pub fn normal_form<F: Field>(&self, p: &GradedPoly<F>) -> Result<Vec<F::Elem>> {
        let f = p.field();
        let mut out = vec![f.zero(); self.dim()];
        if p.is_zero() {
            return Ok(out);
        }
        if p.degree() != self.u {
            return Err(Error::Degree {
                expected: self.u as i64,
                found: p.degree() as i64,
            });
        }
        for (m, c) in p.terms() {
            for (k, r) in self.reduce_monomial(m)?.iter().enumerate() {
                if !r.is_zero() {
                    out[k] = f.add(&out[k], &f.mul(c, &f.from_rational(r)));
                }
            }
        }
        Ok(out)
    }

    /// The polynomial `sum c_k * standard_k`, the section `R_u -> S_u`.
    pub fn lift<F: Field>(&self, field: &F, coords: &[F::Elem]) -> GradedPoly<F> {
        if self.standard.is_empty() {
            return GradedPoly::zero(field, self.basis.first().map_or(0, |m| m.nvars()), self.u);
        }
        GradedPoly::from_dense(field, &self.standard, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RowSpace;
    use crate::polyring::parse_rational_poly;

    fn fermat() -> Hypersurface {
        Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4+x3^4", None).unwrap()).unwrap()
    }

    #[test]
    fn fermat_dimensions() {
        let x = fermat();
        assert_eq!(x.dims(9), vec![1, 4, 10, 16, 19, 16, 10, 4, 1, 0]);
        assert_eq!(x.middle_degree(), 4);
        assert_eq!(x.primitive_betti(), 21);
        let r = x.hilbert_check();
        assert!(r.smooth);
        assert_eq!(r.dims, vec![1, 4, 10, 16, 19, 16, 10, 4, 1, 0]);
    }

    #[test]
    fn expected_dims_match_expansion() {
        assert_eq!((0..10).map(|u| expected_dim(2, 4, u)).collect::<Vec<_>>(), vec![1, 4, 10, 16, 19, 16, 10, 4, 1, 0]);
        assert_eq!(expected_dim(2, 5, 6), 44);
    }

    #[test]
    fn singular_is_rejected() {
        let x = Hypersurface::new(parse_rational_poly("x0^4", Some(4)).unwrap()).unwrap();
        let r = x.hilbert_check();
        assert!(!r.smooth);
        assert_eq!(r.certificate, Certificate::Exact);
        // a cone over a smooth curve is singular too
        let y = Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4", Some(4)).unwrap()).unwrap();
        assert!(!y.is_smooth());
    }

    #[test]
    fn example_quartic_is_smooth() {
        let f = parse_rational_poly("x0^4+x0^3*x2-x0*x1^3+x1^4+x2^4+x3^4", None).unwrap();
        let x = Hypersurface::new(f).unwrap();
        assert_eq!(x.jacobian_generators()[3], parse_rational_poly("4*x3^3", None).unwrap());
        assert!(x.is_smooth());
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(Hypersurface::new(parse_rational_poly("x0^3+x1^3+x2^3", None).unwrap()).is_err());
    }

    #[test]
    fn normal_form_against_naive_membership() {
        let f = parse_rational_poly("x0^4+x0^3*x2-x0*x1^3+x1^4+x2^4+x3^4", None).unwrap();
        let x = Hypersurface::new(f).unwrap();
        for u in [4u32, 6, 8] {
            let s = x.graded_slice(u as i64).unwrap();
            let jac: Vec<Vec<_>> = x.jacobian_products(u).iter().map(|p| p.to_dense(&s.index, s.basis.len())).collect();
            let space = RowSpace::new(&Rationals, &jac, s.basis.len());
            assert_eq!(space.dim() + s.dim(), s.basis.len());
            let p = parse_rational_poly("x0^2*x1*x3 - 3*x1^2*x2^2 + 5/2*x3^4", None)
                .unwrap()
                .mul(&parse_rational_poly("x0+x1-x3", None).unwrap().pow(u - 4))
                .unwrap();
            let nf = s.normal_form(&p).unwrap();
            let diff = p.sub(&s.lift(&Rationals, &nf)).unwrap();
            assert!(space.contains(&Rationals, &diff.to_dense(&s.index, s.basis.len())));
            for j in &x.jacobian_products(u) {
                assert!(s.normal_form(j).unwrap().iter().all(|c| c.is_zero()));
            }
        }
        let s8 = x.graded_slice(8).unwrap();
        assert_eq!(s8.dim(), 1);
    }
}
