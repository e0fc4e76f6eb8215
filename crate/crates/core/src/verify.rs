//! Exact verification that reconstructed forms cut out subvarieties:
//! ideal membership, lines, and plane sections splitting into conic pairs.
//! Everything is linear algebra over the coefficient field.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::ExactField;
use crate::linalg::{rank, rref, solve, Matrix};
use crate::polyring::{monomial_basis, GradedPoly, Monomial};

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// Cofactors `h_i` with `f = sum g_i h_i`, or `None` when `f` is not in the
/// ideal. The free unknowns of the linear system are set to zero.
pub fn ci_membership_check<F: ExactField>(f: &GradedPoly<F>, g: &[GradedPoly<F>]) -> Result<Option<Vec<GradedPoly<F>>>> {
    let field = f.field();
    let nvars = f.nvars();
    let d = f.degree();
    for gi in g {
        if gi.nvars() != nvars {
            return Err(Error::VariableCount(nvars, gi.nvars()));
        }
        if gi.field() != field {
            return Err(Error::DomainMismatch);
        }
        if gi.is_zero() || gi.degree() > d {
            return Err(Error::Invalid("generators must be nonzero of degree at most deg f".into()));
        }
    }
    let target = monomial_basis(d as i64, nvars);
    let index = index_of(&target);
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (i, gi) in g.iter().enumerate() {
        for m in monomial_basis((d - gi.degree()) as i64, nvars) {
            unknowns.push((i, m));
        }
    }
    // rows are target monomials, columns the unknown coefficients
    let mut a: Matrix<F::Elem> = vec![vec![field.zero(); unknowns.len()]; target.len()];
    for (col, (i, m)) in unknowns.iter().enumerate() {
        for (t, c) in g[*i].terms() {
            a[index[&t.mul(m)]][col] = c.clone();
        }
    }
    let b = f.to_dense(&index, target.len());
    let Some(x) = solve(field, &a, &b, unknowns.len()) else {
        return Ok(None);
    };
    let mut terms: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); g.len()];
    for ((i, m), c) in unknowns.into_iter().zip(x) {
        terms[i].push((m, c));
    }
    let hs = terms
        .into_iter()
        .zip(g)
        .map(|(t, gi)| GradedPoly::from_terms(field, nvars, d - gi.degree(), t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(hs))
}

/// Quotient `r` with `g = q r`, found by a linear solve.
pub fn divides_witness<F: ExactField>(g: &GradedPoly<F>, q: &GradedPoly<F>) -> Result<Option<GradedPoly<F>>> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if q.degree() > g.degree() {
        return Ok(None);
    }
    Ok(ci_membership_check(g, std::slice::from_ref(q))?.map(|mut v| v.remove(0)))
}

/// Restriction of `f` to the linear subspace cut out by `forms`: each form is
/// solved for its pivot variable (in reduced echelon form) and substituted.
/// Returns the restricted polynomial, in the remaining variables in their
/// original order, and the eliminated variable indices.
pub fn restrict<F: ExactField>(f: &GradedPoly<F>, forms: &[GradedPoly<F>]) -> Result<(GradedPoly<F>, Vec<usize>)> {
    let field = f.field();
    let nvars = f.nvars();
    let mut rows: Matrix<F::Elem> = forms
        .iter()
        .map(|l| {
            if l.degree() != 1 || l.nvars() != nvars {
                return Err(Error::Invalid("expected linear forms in the same variables".into()));
            }
            Ok((0..nvars).map(|i| l.coeff(&Monomial::var(nvars, i))).collect())
        })
        .collect::<Result<_>>()?;
    let pivots = rref(field, &mut rows);
    if pivots.len() < forms.len() {
        return Err(Error::Degenerate("linear forms are dependent".into()));
    }
    let mut cur = f.clone();
    // eliminate from the highest index down so lower indices stay put
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by(|&a, &b| pivots[b].cmp(&pivots[a]));
    let mut width = nvars;
    for k in order {
        let p = pivots[k];
        // x_p = -(sum over non-pivot j of row_j x_j); drop already-removed vars
        let removed: Vec<usize> = pivots.iter().copied().filter(|&q| q > p).collect();
        let terms: Vec<(Monomial, F::Elem)> = (0..nvars)
            .filter(|j| !pivots.contains(j) && !field.is_zero(&rows[k][*j]))
            .map(|j| {
                let shift = removed.iter().filter(|&&q| q < j).count();
                (Monomial::var(width, j - shift), field.neg(&rows[k][j]))
            })
            .collect();
        let repl = if terms.is_empty() {
            GradedPoly::zero(field, width, 1)
        } else {
            GradedPoly::from_terms(field, width, 1, terms)?
        };
        cur = cur.substitute_linear(p, &repl)?;
        width -= 1;
    }
    let mut elim = pivots;
    elim.sort_unstable();
    Ok((cur, elim))
}

/// True when `f` vanishes identically on `Z(l1, l2)`.
pub fn line_check<F: ExactField>(f: &GradedPoly<F>, l1: &GradedPoly<F>, l2: &GradedPoly<F>) -> Result<bool> {
    let (r, _) = restrict(f, &[l1.clone(), l2.clone()])?;
    Ok(r.is_zero())
}

/// Symmetric matrix of a quadratic form in three variables, doubled so the
/// entries stay in the ring: `M_ii = 2 a_ii`, `M_ij = a_ij`.
fn quadric_matrix<F: ExactField>(q: &GradedPoly<F>) -> Matrix<F::Elem> {
    let f = q.field();
    let n = q.nvars();
    let mut m = vec![vec![f.zero(); n]; n];
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i).take(mono.exps()[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = f.add(c, c);
        } else {
            m[i][j] = c.clone();
            m[j][i] = c.clone();
        }
    }
    m
}

/// A plane conic is smooth iff its symmetric matrix is nonsingular.
pub fn conic_is_smooth<F: ExactField>(q: &GradedPoly<F>) -> bool {
    if q.degree() != 2 || q.is_zero() {
        return false;
    }
    let m = quadric_matrix(q);
    rank(q.field(), &m) == q.nvars()
}

/// Degree of the singular scheme of a plane curve `Z(G)`: the stable value
/// of `dim (S/J)_t` for `J` generated by the partials (Euler's relation puts
/// `G` in `J`). `None` if the values keep growing, i.e. the singular locus is
/// not finite, which happens exactly for non-reduced curves.
pub fn singular_scheme_degree<F: ExactField>(g: &GradedPoly<F>) -> Option<usize> {
    let field = g.field();
    let nvars = g.nvars();
    let partials: Vec<GradedPoly<F>> = (0..nvars).map(|i| g.partial_derivative(i)).filter(|p| !p.is_zero()).collect();
    let e = g.degree().saturating_sub(1);
    let dim_at = |t: u32| -> usize {
        let basis = monomial_basis(t as i64, nvars);
        let index = index_of(&basis);
        let shifts = monomial_basis(t as i64 - e as i64, nvars);
        let rows: Matrix<F::Elem> = partials
            .iter()
            .flat_map(|p| shifts.iter().map(move |a| p.mul_monomial(a)))
            .map(|p| p.to_dense(&index, basis.len()))
            .collect();
        basis.len() - rank(field, &rows)
    };
    // regularity of a zero-dimensional ideal of plane-curve partials is at
    // most 3(deg - 2), so two equal values from there on are stable
    let start = 3 * e.max(1);
    let a = dim_at(start);
    let b = dim_at(start + 1);
    let c = dim_at(start + 2);
    (a == b && b == c).then_some(a)
}

#[derive(Clone, Debug)]
pub struct ConicPairReport<F: ExactField> {
    /// Variables eliminated by the plane; the section lives in the rest.
    pub eliminated: Vec<usize>,
    pub section: GradedPoly<F>,
    pub conic: GradedPoly<F>,
    pub split: bool,
    /// Restricted partner `q'` with `section = conic * q'`.
    pub partner: Option<GradedPoly<F>>,
    pub conic_smooth: bool,
    pub partner_smooth: bool,
    pub singular_scheme_degree: Option<usize>,
    /// Number of singular points of `Z(q q')`, meaningful when both conics
    /// are smooth and distinct: each point where they meet with multiplicity
    /// `m` is an `A_{2m-1}` point of Tjurina number `2m - 1`, and the
    /// multiplicities add up to 4, so the count is `8 - degree`.
    pub singular_points: Option<usize>,
}

impl<F: ExactField> ConicPairReport<F> {
    /// Two smooth conics meeting in exactly two points, each tangency cut out
    /// with multiplicity three: a bitangent pair.
    pub fn is_bitangent_pair(&self) -> bool {
        self.split && self.conic_smooth && self.partner_smooth && self.singular_points == Some(2) && self.singular_scheme_degree == Some(6)
    }

    /// `q'` as a quadric in the ambient variables, independent of the
    /// eliminated one.
    pub fn partner_lifted(&self, nvars: usize) -> Option<GradedPoly<F>> {
        let kept: Vec<usize> = (0..nvars).filter(|i| !self.eliminated.contains(i)).collect();
        self.partner.as_ref().map(|p| p.rename_vars(nvars, &kept))
    }
}

/// Tests whether the plane `Z(h)` meets `Z(f)` in `Z(q) + Z(q')`.
pub fn conic_pair_check<F: ExactField>(f: &GradedPoly<F>, h: &GradedPoly<F>, q: &GradedPoly<F>) -> Result<ConicPairReport<F>> {
    let (section, eliminated) = restrict(f, std::slice::from_ref(h))?;
    let (conic, _) = restrict(q, std::slice::from_ref(h))?;
    if conic.is_zero() {
        return Err(Error::Degenerate("the plane contains the quadric".into()));
    }
    let partner = divides_witness(&section, &conic)?;
    let conic_smooth = conic_is_smooth(&conic);
    let (partner_smooth, sdeg, points) = match &partner {
        Some(p) => {
            let ps = conic_is_smooth(p);
            let prod = conic.mul(p)?;
            let sd = singular_scheme_degree(&prod);
            let pts = match sd {
                Some(k) if conic_smooth && ps && k <= 8 => Some(8 - k),
                _ => None,
            };
            (ps, sd, pts)
        }
        None => (false, None, None),
    };
    Ok(ConicPairReport {
        eliminated,
        section,
        conic,
        split: partner.is_some(),
        partner,
        conic_smooth,
        partner_smooth,
        singular_scheme_degree: sdeg,
        singular_points: points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rationals};
    use crate::numfield::NumberField;
    use crate::polyring::{parse_poly, parse_rational_poly, ParseOptions};

    fn k8() -> NumberField {
        NumberField::parse("t^4+1", None).unwrap()
    }

    fn kp(k: &NumberField, s: &str) -> GradedPoly<NumberField> {
        parse_poly(k, s, &ParseOptions { nvars: Some(4), param: Some(k.gen()) }).unwrap()
    }

    fn q(s: &str) -> GradedPoly<Rationals> {
        parse_rational_poly(s, Some(4)).unwrap()
    }

    #[test]
    fn fermat_line_cofactors() {
        let k = k8();
        let f = kp(&k, "x0^4+x1^4+x2^4+x3^4");
        let g = vec![kp(&k, "x0 - t*x1"), kp(&k, "x2 - t*x3")];
        let h = ci_membership_check(&f, &g).unwrap().unwrap();
        let back = g[0].mul(&h[0]).unwrap().add(&g[1].mul(&h[1]).unwrap()).unwrap();
        assert_eq!(back, f);
        assert!(line_check(&f, &g[0], &g[1]).unwrap());
        let mut bad = f.clone();
        bad = bad.add(&kp(&k, "x0*x1^3")).unwrap();
        assert!(ci_membership_check(&bad, &g).unwrap().is_none());
        assert!(!line_check(&bad, &g[0], &g[1]).unwrap());
    }

    #[test]
    fn trivial_membership_and_division() {
        let f = q("x0^2 - x1^2");
        let h = ci_membership_check(&f, &[f.clone()]).unwrap().unwrap();
        assert_eq!(h[0], GradedPoly::constant(&Rationals, 4, Rationals.one()));
        assert_eq!(divides_witness(&f, &q("x0 - x1")).unwrap().unwrap(), q("x0 + x1"));
        assert!(divides_witness(&q("x0^2 + x1^2"), &q("x0")).unwrap().is_none());
        assert!(line_check(&f, &q("x0"), &q("2*x0")).is_err());
    }

    #[test]
    fn planted_conic_pair_is_split() {
        let qq = q("x1^2 + x2*x3 - 2*x0*x1");
        let qp = q("x1*x2 + 3*x3^2 - x2^2 + x0*x3");
        let h = q("x0 - x1 + 2*x3");
        let c3 = q("x0^3 - 5*x1^2*x2 + x3^3");
        let f = qq.mul(&qp).unwrap().add(&h.mul(&c3).unwrap()).unwrap();
        let rep = conic_pair_check(&f, &h, &qq).unwrap();
        assert!(rep.split);
        let (qp_r, _) = restrict(&qp, std::slice::from_ref(&h)).unwrap();
        let p = rep.partner.clone().unwrap();
        // equal up to a scalar
        let (m, c) = p.leading().unwrap();
        let s = Rationals.div(&qp_r.coeff(m), c).unwrap();
        assert_eq!(p.scale(&s), qp_r);
        let lifted = rep.partner_lifted(4).unwrap();
        assert_eq!(restrict(&lifted, std::slice::from_ref(&h)).unwrap().0, p);
    }

    #[test]
    fn fermat_plane_gives_degenerate_conics() {
        let k = k8();
        let f = kp(&k, "x0^4+x1^4+x2^4+x3^4");
        let h = kp(&k, "x0 - t*x1");
        let qq = kp(&k, "x2^2 - t^2*x3^2");
        let rep = conic_pair_check(&f, &h, &qq).unwrap();
        assert!(rep.split);
        assert!(!rep.conic_smooth && !rep.partner_smooth);
    }

    #[test]
    fn singular_scheme_of_conic_pairs() {
        let p3 = |s: &str| parse_rational_poly(s, Some(3)).unwrap();
        // two conics through four points: four nodes
        let a = p3("x0^2 + x1^2 - x2^2");
        let b = p3("x0^2 + 4*x1^2 - 2*x2^2");
        let prod = a.mul(&b).unwrap();
        assert_eq!(singular_scheme_degree(&prod), Some(4));
        // bitangent: x^2 + y^2 = z^2 and x^2 + 2 y^2 = z^2 touch at (±1:0:1)
        let c = p3("x0^2 + 2*x1^2 - x2^2");
        assert_eq!(singular_scheme_degree(&a.mul(&c).unwrap()), Some(6));
        // a double conic has a one-dimensional singular locus
        assert_eq!(singular_scheme_degree(&a.mul(&a).unwrap()), None);
        assert!(conic_is_smooth(&a));
        assert!(!conic_is_smooth(&p3("x0^2 - x1^2")));
    }
}
