//! Macaulay inverse systems under the differentiation action
//! `x^a ∘ x^b = b!/(b-a)! x^(b-a)`, catalecticants, apolar ideals, and the
//! twisted-cubic experiment: on a random smooth surface of degree 4 or 5
//! through the twisted cubic `T`, the form `g` apolar to
//! `(jac f + I(T))_{D_mid}` is computed and `(g^⊥)_2` compared with `I(T)_2`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::jacring::Hypersurface;
use crate::linalg::{rank_rational, right_kernel_rational, rref_rational, transpose, Matrix, RowSpace};
use crate::periods::PeriodFunctional;
use crate::polyring::{monomial_basis, parse_rational_poly, GradedPoly, Monomial};

/// A form `g` in the dual polynomial ring, acted on by differentiation.
#[derive(Clone, Debug, PartialEq)]
pub struct ApolarForm {
    pub g: GradedPoly<Rationals>,
}

impl ApolarForm {
    pub fn new(g: GradedPoly<Rationals>) -> Self {
        ApolarForm { g }
    }

    pub fn degree(&self) -> u32 {
        self.g.degree()
    }

    pub fn nvars(&self) -> usize {
        self.g.nvars()
    }
}

fn falling(b: u32, a: u32) -> BigInt {
    (b - a + 1..=b).fold(BigInt::one(), |acc, k| acc * k)
}

/// `p(∂) g`.
pub fn diff_apply(p: &GradedPoly<Rationals>, g: &ApolarForm) -> Result<GradedPoly<Rationals>> {
    let e = g.degree();
    if p.degree() > e {
        return Err(Error::Degree { expected: e as i64, found: p.degree() as i64 });
    }
    let nvars = g.nvars();
    let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for (a, pa) in p.terms() {
        for (b, gb) in g.g.terms() {
            let Some(q) = b.div(a) else { continue };
            let k = a
                .exps()
                .iter()
                .zip(b.exps())
                .fold(BigInt::one(), |acc, (&ai, &bi)| acc * falling(bi, ai));
            *acc.entry(q).or_insert_with(BigRational::zero) += pa * gb * BigRational::from_integer(k);
        }
    }
    GradedPoly::from_terms(&Rationals, nvars, e - p.degree(), acc.into_iter().collect())
}

/// Matrix of `(p, q) -> p q (∂) g` over monomial bases of `S_u` and `S_{e-u}`.
pub fn catalecticant(g: &ApolarForm, u: u32) -> Result<Matrix<BigRational>> {
    let e = g.degree();
    if u > e {
        return Err(Error::Degree { expected: e as i64, found: u as i64 });
    }
    let rows = monomial_basis(u as i64, g.nvars());
    let cols = monomial_basis((e - u) as i64, g.nvars());
    Ok(rows
        .iter()
        .map(|a| {
            cols.iter()
                .map(|b| {
                    let m = a.mul(b);
                    let c = g.g.coeff(&m);
                    if c.is_zero() {
                        c
                    } else {
                        c * BigRational::from_integer(m.factorial())
                    }
                })
                .collect()
        })
        .collect())
}

/// `(g^⊥)_u` as coefficient rows over the grevlex-descending basis of `S_u`,
/// in reduced row echelon form. Above the degree of `g` this is all of `S_u`.
pub fn apolar_ideal_slice(g: &ApolarForm, u: u32) -> Result<Matrix<BigRational>> {
    let n = monomial_basis(u as i64, g.nvars()).len();
    if u > g.degree() {
        return Ok((0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect());
    }
    let cat = catalecticant(g, u)?;
    let ncols = monomial_basis((g.degree() - u) as i64, g.nvars()).len();
    let k = right_kernel_rational(&transpose(&cat, ncols), cat.len());
    Ok(rref_rational(&k).0)
}

/// `dim (S/g^⊥)_u` for `u = 0..=e+1`.
pub fn hilbert_profile(g: &ApolarForm) -> Result<Vec<usize>> {
    (0..=g.degree() + 1)
        .map(|u| {
            let total = monomial_basis(u as i64, g.nvars()).len();
            Ok(total - apolar_ideal_slice(g, u)?.len())
        })
        .collect()
}

/// `S/g^⊥` has a one-dimensional top in degree `e` and nothing above.
pub fn gorenstein_socle_check(g: &ApolarForm) -> Result<bool> {
    let p = hilbert_profile(g)?;
    let e = g.degree() as usize;
    Ok(g.g.terms().iter().any(|(_, c)| !c.is_zero()) && p[e] == 1 && p[e + 1] == 0)
}

/// `lambda(r) = <lift r, g>` on `R_{D_mid}`, defined when `g` has degree
/// `D_mid` and is annihilated by the Jacobian ideal.
pub fn apolar_functional(x: &Hypersurface, g: &ApolarForm) -> Result<PeriodFunctional<Rationals>> {
    let dm = x.middle_degree();
    if g.degree() as i64 != dm {
        return Err(Error::Degree { expected: dm, found: g.degree() as i64 });
    }
    let slice = x.graded_slice(dm)?;
    let values = slice
        .standard_monomials()
        .iter()
        .map(|m| {
            let c = g.g.coeff(m);
            if c.is_zero() {
                c
            } else {
                c * BigRational::from_integer(m.factorial())
            }
        })
        .collect();
    Ok(PeriodFunctional { field: Rationals, degree: dm, values })
}

/// Generators of `I(T)` for the standard twisted cubic.
pub fn twisted_cubic_ideal() -> Vec<GradedPoly<Rationals>> {
    ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]
        .iter()
        .map(|s| parse_rational_poly(s, Some(4)).expect("fixed input"))
        .collect()
}

fn degree_part(gens: &[GradedPoly<Rationals>], u: u32) -> Matrix<BigRational> {
    let mons = monomial_basis(u as i64, 4);
    let index: HashMap<Monomial, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        if g.degree() > u {
            continue;
        }
        for m in monomial_basis((u - g.degree()) as i64, 4) {
            rows.push(g.mul_monomial(&m).to_dense(&index, mons.len()));
        }
    }
    rows
}

/// A basis of `I(T)_u` in reduced row echelon form.
pub fn twisted_cubic_degree_part(u: u32) -> Matrix<BigRational> {
    rref_rational(&degree_part(&twisted_cubic_ideal(), u)).0
}

pub const COEFF_RANGE: i64 = 50;
pub const RESAMPLE_CAP: usize = 100;

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub trial: u64,
    /// Samples rejected as singular before a smooth one was found.
    pub resamples: usize,
    pub f: GradedPoly<Rationals>,
    /// `codim (jac f + I(T))_e` in `S_e`.
    pub codim: usize,
    pub g: Option<ApolarForm>,
    pub dim_perp1: usize,
    pub dim_perp2: usize,
    pub contains_it2: bool,
    pub equals_it2: bool,
    pub socle_ok: bool,
    pub profile: Vec<usize>,
}

/// One seeded trial of the experiment for surfaces of degree `d` in {4, 5}.
pub fn twisted_cubic_trial(d: u32, seed: u64, trial: u64) -> Result<TrialOutcome> {
    if d != 4 && d != 5 {
        return Err(Error::Invalid("the experiment runs in degree 4 or 5".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let it_d = twisted_cubic_degree_part(d);
    let mons_d = monomial_basis(d as i64, 4);
    let mut resamples = 0;
    let x = loop {
        if resamples >= RESAMPLE_CAP {
            return Err(Error::Degenerate(format!("no smooth sample in {RESAMPLE_CAP} draws")));
        }
        let mut coeffs = vec![BigRational::zero(); mons_d.len()];
        for row in &it_d {
            let c = BigRational::from_integer(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE).into());
            if c.is_zero() {
                continue;
            }
            for (a, b) in coeffs.iter_mut().zip(row) {
                *a += &c * b;
            }
        }
        let f = GradedPoly::from_dense(&Rationals, &mons_d, &coeffs);
        if !f.is_zero() {
            if let Ok(x) = Hypersurface::new(f) {
                if x.is_smooth() {
                    break x;
                }
            }
        }
        resamples += 1;
    };
    let e = x.middle_degree() as u32;
    let n_e = monomial_basis(e as i64, 4).len();
    let mut rows = degree_part(x.jacobian_generators(), e);
    rows.extend(degree_part(&twisted_cubic_ideal(), e));
    let r = rank_rational(&rows);
    let codim = n_e - r;
    let mut out = TrialOutcome {
        trial,
        resamples,
        f: x.f().clone(),
        codim,
        g: None,
        dim_perp1: 0,
        dim_perp2: 0,
        contains_it2: false,
        equals_it2: false,
        socle_ok: false,
        profile: Vec::new(),
    };
    if codim != 1 {
        return Ok(out);
    }
    let y = right_kernel_rational(&rows, n_e).remove(0);
    let mons_e = monomial_basis(e as i64, 4);
    let terms = mons_e
        .iter()
        .zip(&y)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c / BigRational::from_integer(m.factorial())))
        .collect();
    let g = ApolarForm::new(GradedPoly::from_terms(&Rationals, 4, e, terms)?);
    let perp1 = apolar_ideal_slice(&g, 1)?;
    let perp2 = apolar_ideal_slice(&g, 2)?;
    let it2 = twisted_cubic_degree_part(2);
    let p2 = RowSpace::new(&Rationals, &perp2, 10);
    let t2 = RowSpace::new(&Rationals, &it2, 10);
    out.dim_perp1 = perp1.len();
    out.dim_perp2 = perp2.len();
    out.contains_it2 = p2.contains_space(&Rationals, &t2);
    out.equals_it2 = p2.same_as(&Rationals, &t2);
    out.socle_ok = gorenstein_socle_check(&g)?;
    out.profile = hilbert_profile(&g)?;
    out.g = Some(g);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub degree: u32,
    pub trials: u64,
    pub seed: u64,
    pub codim_one: u64,
    /// `dim (g^⊥)_2 -> number of trials`.
    pub dim_perp2: BTreeMap<usize, u64>,
    pub perp1_zero: u64,
    pub contains_it2: u64,
    pub equals_it2: u64,
    pub socle_ok: u64,
    pub resamples: u64,
    /// Trials that failed or had codimension other than one.
    pub anomalies: Vec<(u64, String)>,
}

impl ExperimentReport {
    pub fn all_as_expected(&self) -> bool {
        self.anomalies.is_empty()
            && self.codim_one == self.trials
            && self.equals_it2 == self.trials
            && self.perp1_zero == self.trials
            && self.socle_ok == self.trials
    }
}

/// Runs `trials` independent trials; the report does not depend on thread
/// scheduling.
pub fn twisted_cubic_experiment(d: u32, trials: u64, seed: u64) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::Invalid("at least one trial is needed".into()));
    }
    if d != 4 && d != 5 {
        return Err(Error::Invalid("the experiment runs in degree 4 or 5".into()));
    }
    let ids: Vec<u64> = (0..trials).collect();
    let outcomes = crate::par::map(&ids, |&t| twisted_cubic_trial(d, seed, t));
    let mut rep = ExperimentReport {
        degree: d,
        trials,
        seed,
        codim_one: 0,
        dim_perp2: BTreeMap::new(),
        perp1_zero: 0,
        contains_it2: 0,
        equals_it2: 0,
        socle_ok: 0,
        resamples: 0,
        anomalies: Vec::new(),
    };
    for (t, o) in ids.iter().zip(outcomes) {
        match o {
            Err(e) => rep.anomalies.push((*t, e.to_string())),
            Ok(o) => {
                rep.resamples += o.resamples as u64;
                if o.codim != 1 {
                    rep.anomalies.push((*t, format!("codimension {}", o.codim)));
                    continue;
                }
                rep.codim_one += 1;
                *rep.dim_perp2.entry(o.dim_perp2).or_default() += 1;
                rep.perp1_zero += (o.dim_perp1 == 0) as u64;
                rep.contains_it2 += o.contains_it2 as u64;
                rep.equals_it2 += o.equals_it2 as u64;
                rep.socle_ok += o.socle_ok as u64;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::reconstruct::algorithm1;

    fn p(s: &str) -> GradedPoly<Rationals> {
        parse_rational_poly(s, Some(4)).unwrap()
    }

    #[test]
    fn differentiation_examples() {
        let g = ApolarForm::new(p("x0^4"));
        assert_eq!(diff_apply(&p("x0"), &g).unwrap(), p("4*x0^3"));
        assert!(diff_apply(&p("x1^2"), &g).unwrap().is_zero());
        let h = ApolarForm::new(p("x0^2*x1^2"));
        assert_eq!(diff_apply(&p("x0*x1"), &h).unwrap(), p("4*x0*x1"));
        assert!(diff_apply(&p("x0^5"), &g).is_err());
    }

    #[test]
    fn catalecticant_examples() {
        let g = ApolarForm::new(p("x0^4"));
        assert_eq!(rank(&Rationals, &catalecticant(&g, 1).unwrap()), 1);
        assert_eq!(apolar_ideal_slice(&g, 1).unwrap().len(), 3);
        assert_eq!(hilbert_profile(&g).unwrap(), vec![1, 1, 1, 1, 1, 0]);
        let h = ApolarForm::new(p("x0^2*x1^2"));
        assert_eq!(rank(&Rationals, &catalecticant(&h, 2).unwrap()), 3);
        assert!(gorenstein_socle_check(&h).unwrap());
    }

    #[test]
    fn generic_quartic_profile() {
        let g = ApolarForm::new(p(
            "x0^4 + 3*x0*x1^3 - 2*x1^2*x2*x3 + 5*x2^4 + x3^4 - 7*x0^2*x2*x3 + x0*x1*x2*x3 + 11*x1*x3^3 + 2*x0^3*x2 - x1^4 + 13*x0*x2^3 + 6*x1^3*x3",
        ));
        let prof = hilbert_profile(&g).unwrap();
        assert_eq!(prof, vec![1, 4, 10, 4, 1, 0]);
    }

    #[test]
    fn twisted_cubic_dimensions() {
        assert_eq!(twisted_cubic_degree_part(2).len(), 3);
        assert_eq!(twisted_cubic_degree_part(4).len(), 22);
        assert_eq!(twisted_cubic_degree_part(5).len(), 40);
        assert_eq!(twisted_cubic_degree_part(6).len(), 84 - 19);
    }

    #[test]
    fn single_trial_and_duality() {
        let o = twisted_cubic_trial(4, 11, 0).unwrap();
        assert_eq!(o.codim, 1);
        assert_eq!(o.dim_perp2, 3);
        assert!(o.equals_it2 && o.socle_ok);
        let x = Hypersurface::new(o.f.clone()).unwrap();
        let g = o.g.unwrap();
        let lam = apolar_functional(&x, &g).unwrap();
        for u in 1..=3u32 {
            let s = algorithm1(&x, &lam, u as i64).unwrap();
            let perp = apolar_ideal_slice(&g, u).unwrap();
            assert_eq!(s.coefficient_rows(), perp);
        }
    }
}
