//! End-to-end runs across modules.

use num_bigint::BigInt;

use pcr_core::apolarity::{apolar_functional, twisted_cubic_trial};
use pcr_core::bigfloat::ComplexField;
use pcr_core::hodgeclass::{enumerate_candidates, kind_counts, ClassKind, HodgeLattice, Polarization};
use pcr_core::lattice::int_matrix;
use pcr_core::linalg::transpose;
use pcr_core::numfield::NumberField;
use pcr_core::periods::{hodge_cycles, planted_period_data, random_conic_quartic, synthetic_functional, PeriodData};
use pcr_core::polyring::{monomial_basis, parse_poly, parse_rational_poly, GradedPoly, ParseOptions};
use pcr_core::reconstruct::{
    algorithm1, matches_exact, pairing_matrix, perfectness_report, reconstruct_exact, IdealSlice, Verdict,
};
use pcr_core::verify::conic_pair_check;
use pcr_core::Hypersurface;

fn embed_slice(s: &IdealSlice<NumberField>, digits: usize) -> IdealSlice<ComplexField> {
    let cf = ComplexField::with_digits(digits);
    IdealSlice {
        degree: s.degree,
        field: cf.clone(),
        nvars: s.nvars,
        basis: s
            .basis
            .iter()
            .map(|p| {
                let terms = p.terms().iter().map(|(m, c)| (m.clone(), s.field.embed(c, digits).unwrap())).collect();
                GradedPoly::from_terms(&cf, p.nvars(), p.degree(), terms).unwrap()
            })
            .collect(),
        diagnostics: None,
    }
}

#[test]
fn plant_and_recover_cube_root_field() {
    let k = NumberField::parse("t^3-2", None).unwrap();
    let opts = ParseOptions { nvars: Some(4), param: Some(k.gen()) };
    let basis = vec![
        parse_poly(&k, "x0 + t*x2 + (1 + t^2)*x3", &opts).unwrap(),
        parse_poly(&k, "x1 + (3/2 - t)*x3", &opts).unwrap(),
    ];
    let exact = IdealSlice { degree: 1, field: k.clone(), nvars: 4, basis, diagnostics: None };
    let rec = reconstruct_exact(&embed_slice(&exact, 200), 6, 200).unwrap();
    assert_eq!(rec.generator.as_ref().unwrap().minpoly, vec![BigInt::from(-2), 0.into(), 0.into(), 1.into()]);
    assert!(matches_exact(&rec, &exact));
}

#[test]
fn rational_slice_stays_rational() {
    let q = NumberField::rationals();
    let opts = ParseOptions { nvars: Some(4), param: None };
    let basis = vec![parse_poly(&q, "x0 - 2/7*x3", &opts).unwrap(), parse_poly(&q, "x1 + 5*x2", &opts).unwrap()];
    let exact = IdealSlice { degree: 1, field: q.clone(), nvars: 4, basis, diagnostics: None };
    let rec = reconstruct_exact(&embed_slice(&exact, 60), 4, 60).unwrap();
    assert_eq!(rec.field.degree(), 1);
    assert!(rec.generator.is_none());
    assert!(matches_exact(&rec, &exact));
}

#[test]
fn pairing_is_symmetric_across_complementary_degrees() {
    let (x, gens, _) = random_conic_quartic(3).unwrap();
    let lam = synthetic_functional(&x, &gens).unwrap().functional;
    for u in 0..=4 {
        let a = pairing_matrix(&x, &lam, u).unwrap();
        let b = pairing_matrix(&x, &lam, 4 - u).unwrap();
        assert_eq!(a, transpose(&b, monomial_basis(u, 4).len()));
    }
    let top = algorithm1(&x, &lam, 4).unwrap();
    assert_eq!(top.dim(), 35 - 1);
}

#[test]
fn conic_plane_splits_into_two_conics() {
    let (x, gens, cof) = random_conic_quartic(5).unwrap();
    let rep = conic_pair_check(x.f(), &gens[0], &gens[1]).unwrap();
    assert!(rep.split);
    let partner = rep.partner_lifted(4).unwrap();
    let (q, _) = pcr_core::verify::restrict(&cof[1], &gens[..1]).unwrap();
    let lifted_q = q.rename_vars(4, &[1, 2, 3]);
    // q' agrees with the cofactor of c2 up to a scalar
    let ratio = partner.leading().unwrap().1.clone() / lifted_q.leading().unwrap().1.clone();
    assert_eq!(partner, lifted_q.scale(&ratio));
}

#[test]
fn twisted_cubic_functionals_are_perfect() {
    for d in [4u32, 5] {
        let o = twisted_cubic_trial(d, 77, 1).unwrap();
        let x = Hypersurface::new(o.f.clone()).unwrap();
        let lam = apolar_functional(&x, o.g.as_ref().unwrap()).unwrap();
        let rep = perfectness_report(&x, &lam).unwrap();
        assert_eq!((rep.dim_u1, rep.dim_u2), (0, 3));
        assert_eq!(rep.verdict, Verdict::Reconstructible);
    }
}

#[test]
fn period_file_on_disk_and_classes() {
    let x = Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4+x3^4", None).unwrap()).unwrap();
    let (mut data, planted) = planted_period_data(&x, 2, 17, 50).unwrap();
    // toy intersection form: the negative A_21 Cartan matrix
    let s = data.s;
    let mut g = vec![vec![BigInt::from(0); s]; s];
    for i in 0..s {
        g[i][i] = BigInt::from(-2);
        if i + 1 < s {
            g[i][i + 1] = BigInt::from(1);
            g[i + 1][i] = BigInt::from(1);
        }
    }
    data.intersection = Some(g);
    data.h_square = Some(4);
    let path = std::env::temp_dir().join(format!("pcr-periods-{}.txt", std::process::id()));
    data.write_file(&path).unwrap();
    let back = PeriodData::parse_file(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(back.to_text(), data.to_text());
    let hc = hodge_cycles(&back).unwrap();
    assert!(pcr_core::lattice::same_lattice(&hc.basis, &planted, s));
    let lat = HodgeLattice::from_periods(&back, &hc.basis).unwrap();
    assert_eq!(lat.rank(), 2);
    // the restricted -A_21 form is negative definite, so enumeration succeeds
    let c = enumerate_candidates(&lat, 3, -2).unwrap();
    for cand in c {
        assert!(cand.degree >= 1 && cand.degree <= 3);
        assert_eq!(cand.partner.unwrap().len(), 2);
    }
}

#[test]
fn hodge_lattice_toy_rank_three() {
    let g = int_matrix(&[&[4, 2, 0], &[2, -2, 0], &[0, 0, -2]]);
    let l = HodgeLattice::from_gram(g, Polarization::InLattice(vec![1.into(), 0.into(), 0.into()])).unwrap();
    let c = enumerate_candidates(&l, 3, -2).unwrap();
    let counts = kind_counts(&c);
    assert!(counts.get(&ClassKind::Conic).copied().unwrap_or(0) >= 2);
    for cand in &c {
        assert_eq!(l.pair(&cand.coords, &cand.coords), BigInt::from(-2));
        if let Some(p) = &cand.partner {
            assert!(c.iter().any(|o| &o.coords == p));
        }
    }
}

#[test]
fn line_functional_over_rationals_is_rejected_when_not_contained() {
    let x = Hypersurface::new(parse_rational_poly("x0^4+x1^4+x2^4+x3^4", None).unwrap()).unwrap();
    let gens = vec![parse_rational_poly("x0 - x1", Some(4)).unwrap(), parse_rational_poly("x2 - x3", Some(4)).unwrap()];
    assert!(synthetic_functional(&x, &gens).is_err());
}
